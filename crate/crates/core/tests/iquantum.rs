use std::time::Instant;

use iqschur::iquantum::{
    binomial_idempotent_check, closing_table, evaluate_integral_combination, express_standard_basis, integral_monomial,
    kbinom, omega, phi, verify_relations, Letter, UjPoly,
};
use iqschur::schur::SchurElt;
use iqschur::stabilized::pi_r;
use iqschur::theta::{enumerate_xi, Composition, ThetaMatrix};
use iqschur::RatFunc;

#[test]
fn relations_hold_for_small_ranks() {
    let start = Instant::now();
    for n in 1..=3 {
        let checks = verify_relations(n).unwrap();
        let failed: Vec<_> =
            checks.iter().filter(|c| !c.holds).map(|c| format!("{} {}", c.family, c.instance)).collect();
        assert!(failed.is_empty(), "n = {n}: {failed:?}");
        for fam in ["torus", "weight-conjugation", "rank-n-serre"] {
            assert!(checks.iter().any(|c| c.family == fam), "n = {n} lacks {fam}");
        }
        if n >= 2 {
            assert!(checks.iter().any(|c| c.family == "serre"));
        }
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn closing_table_identities() {
    let table = closing_table();
    assert_eq!(table.len(), 5);
    assert!(table.iter().all(|id| id.holds()));
}

/// The relations are preserved by the involution.
#[test]
fn omega_preserves_relations() {
    for n in 1..=2 {
        for (_, instance, p) in iqschur::iquantum::relation_instances(n) {
            assert!(phi(&omega(&p)).unwrap().is_zero(), "n = {n}: {instance}");
        }
    }
}

/// The mixed commutators with one index at `n` vanish as well.
#[test]
fn mixed_commutators_at_the_last_node() {
    use Letter::*;
    for n in 2..=3 {
        for i in 1..n {
            for (x, y) in [(E(i), F(n)), (E(n), F(i))] {
                let p = UjPoly::word(n, &[x, y]).plus(RatFunc::from_int(-1), &[y, x]);
                assert!(phi(&p).unwrap().is_zero(), "n = {n}: [{x}, {y}]");
            }
        }
    }
}

#[test]
fn kbinom_is_diagonal() {
    for n in 1..=2 {
        for i in 1..=n + 1 {
            assert_eq!(kbinom(n, i, 0).unwrap(), iqschur::stabilized::StabElt::one(n));
            for t in 1..=3 {
                let k = kbinom(n, i, t).unwrap();
                assert!(k.terms().all(|(a, _, _)| a.is_diagonal()));
                for r in 1..=3 {
                    let p = pi_r(&k, r).unwrap();
                    assert!(p.terms().all(|(a, _)| a.is_diagonal()));
                    assert!(p.is_integral());
                }
            }
        }
    }
}

#[test]
fn binomial_products_are_idempotents() {
    for n in 1..=2 {
        for r in 0..=3 {
            for l in Composition::all(n, r) {
                assert!(binomial_idempotent_check(&l).unwrap(), "lambda = {:?}", l.parts());
            }
        }
    }
}

#[test]
fn integral_monomials_are_unitriangular() {
    for (n, r) in [(1, 1), (1, 2), (2, 2)] {
        for a in enumerate_xi(n, r) {
            let e = integral_monomial(&a).unwrap();
            assert!(e.leading_is_one && e.lower_terms_strictly_below && e.integral, "A = {a}: {:?}", e.value);
        }
    }
    let d = ThetaMatrix::from_composition(&Composition::new(vec![1, 1]).unwrap());
    let e = integral_monomial(&d).unwrap();
    assert_eq!(e.value, SchurElt::basis(1, 2, d).unwrap());
}

#[test]
fn standard_basis_inversion_round_trips() {
    for (n, r) in [(1, 1), (1, 2), (2, 2)] {
        for a in enumerate_xi(n, r) {
            let combo = express_standard_basis(&a, 1000).unwrap();
            let back = evaluate_integral_combination(n, r as usize, &combo).unwrap();
            assert_eq!(back, SchurElt::basis(n, r as usize, a.clone()).unwrap(), "A = {a}");
            if a.is_diagonal() {
                assert_eq!(combo.len(), 1);
            }
        }
    }
}
