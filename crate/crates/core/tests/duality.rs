use iqschur::iquantum::Letter;
use iqschur::tensor::{
    a_matrix, commutant_dimension, commutation_check, gl_act, hecke_act, hecke_module_check, index_tuples,
    intertwiner_check, iota_act, GlGen, TensorElt,
};
use iqschur::theta::enumerate_xi;
use iqschur::RatFunc;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn tensor_space_is_a_hecke_module() {
    for (n, r) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
        let failures = hecke_module_check(n, r).unwrap();
        assert!(failures.is_empty(), "(n, r) = ({n}, {r}): {failures:?}");
    }
}

#[test]
fn iquantum_action_commutes_with_hecke() {
    for (n, r) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let report = commutation_check(n, r).unwrap();
        assert!(report.passed(), "(n, r) = ({n}, {r}): {:?}", report.failures);
        assert!(report.pairs_checked > 0);
    }
}

/// A bare `gl` generator does not commute with the type-B generator.
#[test]
fn bare_gl_generator_breaks_commutation() {
    let (n, r) = (1, 2);
    let mut found = false;
    for idx in index_tuples(n, r) {
        let x = TensorElt::basis(n, idx).unwrap();
        let lhs = hecke_act(&gl_act(GlGen::E(1), &x), r).unwrap();
        let rhs = gl_act(GlGen::E(1), &hecke_act(&x, r).unwrap());
        found |= lhs != rhs;
    }
    assert!(found);
}

#[test]
fn torus_scalars() {
    let (n, r) = (2, 2);
    for idx in index_tuples(n, r) {
        let x = TensorElt::basis(n, idx.clone()).unwrap();
        let mid = idx.iter().filter(|&&i| i == n + 1).count() as i64;
        let y = iota_act(Letter::D(n + 1), &x);
        let mut expected = TensorElt::zero(n, r);
        expected.add_term(idx.clone(), &RatFunc::v_pow(-1 - 2 * mid));
        assert_eq!(y, expected);
        for h in 1..=n {
            let g = idx.iter().filter(|&&i| i == h || i == 2 * n + 2 - h).count() as i64;
            let mut expected = TensorElt::zero(n, r);
            expected.add_term(idx.clone(), &RatFunc::v_pow(-g));
            assert_eq!(iota_act(Letter::D(h), &x), expected);
        }
    }
}

#[test]
fn a_matrices_are_injective_with_fixed_columns() {
    for (n, r) in [(1, 1), (2, 1), (2, 2)] {
        let mut seen = std::collections::BTreeSet::new();
        for idx in index_tuples(n, r) {
            let a = a_matrix(n, &idx).unwrap();
            let mut co = vec![0; 2 * n + 1];
            for k in 0..r {
                co[k] = 1;
                co[2 * n - k] = 1;
            }
            co[n] = 1;
            assert_eq!(a.co(), co);
            assert!(seen.insert(a));
        }
    }
}

#[test]
fn intertwiner_on_all_generators() {
    for (n, r) in [(1, 1), (2, 1), (2, 2)] {
        let report = intertwiner_check(n, r).unwrap();
        assert!(report.passed(), "(n, r) = ({n}, {r}): {:?}", report.failures);
    }
}

#[test]
fn commutant_dimension_counts_xi() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (n, r, exact) in [(1, 1, true), (1, 2, true), (2, 2, false)] {
        let report = commutant_dimension(n, r, 3, exact, &mut rng).unwrap();
        assert!(report.agree, "{report:?}");
        assert_eq!(report.dimension, enumerate_xi(n, r as i64).len(), "(n, r) = ({n}, {r})");
    }
}

/// The corrected embedding respects every defining relation on the tensor space.
#[test]
fn iota_respects_relations() {
    use iqschur::iquantum::relation_instances;
    for (n, r) in [(1, 2), (2, 2), (3, 1)] {
        for (family, instance, p) in relation_instances(n) {
            for idx in index_tuples(n, r) {
                let x = TensorElt::basis(n, idx.clone()).unwrap();
                let mut total = TensorElt::zero(n, r);
                for (c, word) in &p.terms {
                    let y = word.iter().rev().fold(x.clone(), |acc, &l| iota_act(l, &acc));
                    total.add_scaled(&y, c);
                }
                assert!(total.is_zero(), "(n, r) = ({n}, {r}) {family} {instance} at {idx:?}");
            }
        }
    }
}
