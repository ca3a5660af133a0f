use iqschur::schur::{apply_generator, build_ajr, closed_formula_product, closed_formula_terms, Generator};
use iqschur::theta::{enumerate_zero_diag, SignedWeight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn generators(n: usize, rng: &mut ChaCha8Rng) -> Vec<Generator> {
    let mut gens = Vec::new();
    for h in 1..=n {
        gens.push(Generator::E(h));
        gens.push(Generator::F(h));
    }
    gens.push(Generator::O(random_weight(n, rng)));
    gens
}

fn random_weight(n: usize, rng: &mut ChaCha8Rng) -> SignedWeight {
    SignedWeight::from_reduced((0..=n).map(|_| rng.gen_range(-2..=2)).collect()).unwrap()
}

/// Closed formulas against the sum of row-by-row products over all diagonals.
#[test]
fn closed_formulas_match_termwise_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=2 {
        for a in enumerate_zero_diag(n, 4) {
            for _ in 0..2 {
                let j = random_weight(n, &mut rng);
                for g in generators(n, &mut rng) {
                    let base = (a.sum() / 2) as usize;
                    let top = if n == 2 { base + 1 } else { base + 2 };
                    for r in base.max(1)..=top {
                        let lhs = closed_formula_product(&g, &a, &j, r).unwrap();
                        let rhs = apply_generator(&g, &build_ajr(&a, &j, r).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "g = {g:?}, A = {a}, j = {j:?}, r = {r}");
                    }
                }
            }
        }
    }
}

#[test]
fn middle_difference_term_is_active() {
    // A = E^theta_{h+1,h}: the raising formula has the guarded difference.
    use iqschur::theta::ThetaMatrix;
    let n = 2;
    for h in 1..=n {
        let a = ThetaMatrix::e_theta(n, h + 1, h);
        let j = SignedWeight::zero(n);
        let terms = closed_formula_terms(&Generator::E(h), &a, &j).unwrap();
        assert!(terms.iter().any(|t| !t.coeff.is_laurent()), "h = {h}");
        for r in 1..=3 {
            let lhs = closed_formula_product(&Generator::E(h), &a, &j, r).unwrap();
            let rhs = apply_generator(&Generator::E(h), &build_ajr(&a, &j, r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert!(lhs.is_integral());
        }
    }
}
