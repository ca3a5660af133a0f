//! The Weyl group of type `B_r` as the permutations of `[1, 2r+1]` commuting
//! with `i -> 2r+2-i`, its Hecke algebra, and the double-coset model of the
//! q-Schur algebra. This is the brute-force reference for every multiplication
//! formula elsewhere in the crate.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::coeffs::LaurentPoly;
use crate::error::{Error, Result};
use crate::theta::{Composition, ThetaMatrix};

/// A permutation of `[1, 2r+1]` commuting with the flip `i -> 2r+2-i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    /// `image[x - 1] = w(x)`.
    image: Vec<usize>,
}

impl SignedPerm {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let m = image.len();
        if m.is_multiple_of(2) {
            return Err(Error::Malformed(format!("permutation of even degree {m}")));
        }
        let mut seen = vec![false; m];
        for &x in &image {
            if x == 0 || x > m || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::Malformed(format!("{image:?} is not a permutation")));
            }
        }
        let w = Self { image };
        if (1..=m).any(|x| w.apply(m + 1 - x) != m + 1 - w.apply(x)) {
            return Err(Error::NotSignedPermutation);
        }
        Ok(w)
    }

    pub fn identity(r: usize) -> Self {
        Self { image: (1..=2 * r + 1).collect() }
    }

    /// `s_i = (i, i+1)(2r+2-i, 2r+1-i)` for `i < r`, and `s_r = (r, r+2)`.
    pub fn generator(r: usize, i: usize) -> Self {
        assert!((1..=r).contains(&i), "generator index {i} out of range for r = {r}");
        let mut w = Self::identity(r);
        let m = 2 * r + 1;
        if i < r {
            w.image.swap(i - 1, i);
            w.image.swap(m - i, m - i - 1);
        } else {
            w.image.swap(r - 1, r + 1);
        }
        w
    }

    pub fn r(&self) -> usize {
        self.image.len() / 2
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `(self o other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { image: other.image.iter().map(|&x| self.image[x - 1]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y - 1] = x + 1;
        }
        Self { image: inv }
    }
}

/// The group `W(B_r)` with lengths, reduced words and multiplication tables.
pub struct WeylGroup {
    r: usize,
    elements: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    length: Vec<usize>,
    /// `right[w][i - 1]` = index of `w s_i`.
    right: Vec<Vec<usize>>,
    /// `left[w][i - 1]` = index of `s_i w`.
    left: Vec<Vec<usize>>,
    /// A reduced word of each element, generator indices from 1.
    words: Vec<Vec<usize>>,
}

impl WeylGroup {
    pub fn new(r: usize) -> Self {
        let gens: Vec<SignedPerm> = (1..=r).map(|i| SignedPerm::generator(r, i)).collect();
        let id = SignedPerm::identity(r);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut length = vec![0];
        let mut words = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (k, s) in gens.iter().enumerate() {
                let ws = elements[w].compose(s);
                if !index.contains_key(&ws) {
                    let id = elements.len();
                    index.insert(ws.clone(), id);
                    elements.push(ws);
                    length.push(length[w] + 1);
                    let mut word = words[w].clone();
                    word.push(k + 1);
                    words.push(word);
                    queue.push_back(id);
                }
            }
        }
        let right = elements.iter().map(|w| gens.iter().map(|s| index[&w.compose(s)]).collect()).collect();
        let left = elements.iter().map(|w| gens.iter().map(|s| index[&s.compose(w)]).collect()).collect();
        Self { r, elements, index, length, right, left, words }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, w: usize) -> &SignedPerm {
        &self.elements[w]
    }

    pub fn index_of(&self, w: &SignedPerm) -> Result<usize> {
        self.index.get(w).copied().ok_or(Error::NotSignedPermutation)
    }

    pub fn length(&self, w: usize) -> usize {
        self.length[w]
    }

    pub fn reduced_word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn right_mul(&self, w: usize, i: usize) -> usize {
        self.right[w][i - 1]
    }

    pub fn left_mul(&self, w: usize, i: usize) -> usize {
        self.left[w][i - 1]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.reduced_word(b).iter().fold(a, |x, &i| self.right_mul(x, i))
    }

    /// Closure of the identity under the given generators (the parabolic
    /// subgroup they generate), sorted by index.
    pub fn parabolic(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(w) = stack.pop() {
            for &i in gens {
                let ws = self.right_mul(w, i);
                if !seen[ws] {
                    seen[ws] = true;
                    stack.push(ws);
                }
            }
        }
        (0..self.order()).filter(|&w| seen[w]).collect()
    }

    /// Generators of `W_lambda`: all `s_i` except `s_{l_1 + ... + l_k}`, `1 <= k <= n`.
    pub fn parabolic_generators(&self, l: &Composition) -> Vec<usize> {
        let mut excluded = Vec::new();
        let mut acc = 0;
        for k in 0..l.n() {
            acc += l.parts()[k];
            excluded.push(acc);
        }
        (1..=self.r).filter(|i| !excluded.contains(&(*i as i64))).collect()
    }
}

/// An element of the Hecke algebra, keyed by element indices of a [`WeylGroup`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElt {
    terms: BTreeMap<usize, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: usize) -> Self {
        Self { terms: BTreeMap::from([(w, LaurentPoly::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn coeff(&self, w: usize) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: usize, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (w, x) in self.terms() {
            out.add_term(w, &(x * c));
        }
        out
    }

    /// Sum of `T_w` over a set of elements.
    pub fn sum_of(ws: &[usize]) -> Self {
        let mut out = Self::zero();
        for &w in ws {
            out.add_term(w, &LaurentPoly::one());
        }
        out
    }
}

/// The Hecke algebra `H(B_r)` over `Z[v, v^-1]`, `T_i^2 = (v^2 - 1) T_i + v^2`.
pub struct HeckeAlgebra {
    group: WeylGroup,
}

impl HeckeAlgebra {
    pub fn new(r: usize) -> Self {
        Self { group: WeylGroup::new(r) }
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    /// `x T_{s_i}`.
    pub fn mul_generator(&self, x: &HeckeElt, i: usize) -> HeckeElt {
        let q = LaurentPoly::v_pow(2);
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = HeckeElt::zero();
        for (w, c) in x.terms() {
            let ws = self.group.right_mul(w, i);
            if self.group.length(ws) > self.group.length(w) {
                out.add_term(ws, c);
            } else {
                out.add_term(w, &(c * &q_minus_one));
                out.add_term(ws, &(c * &q));
            }
        }
        out
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in b.terms() {
            let mut part = a.clone();
            for &i in self.group.reduced_word(w) {
                part = self.mul_generator(&part, i);
            }
            out = out.add(&part.scale(c));
        }
        out
    }

    /// `x_lambda`: the sum of `T_w` over `W_lambda`.
    pub fn x_lambda(&self, l: &Composition) -> HeckeElt {
        let gens = self.group.parabolic_generators(l);
        HeckeElt::sum_of(&self.group.parabolic(&gens))
    }
}

/// One double coset `W_lambda d W_mu` and its matrix label.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub lambda: Composition,
    pub mu: Composition,
    /// Minimal-length representative.
    pub d: usize,
    pub elements: Vec<usize>,
    pub matrix: ThetaMatrix,
}

/// The q-Schur algebra `S(n, r)` in its double-coset basis `e_A`.
pub struct SchurOracle {
    n: usize,
    r: usize,
    hecke: HeckeAlgebra,
    cosets: Vec<DoubleCoset>,
    by_matrix: HashMap<ThetaMatrix, usize>,
    /// For each `(lambda, mu)` pair, the coset index of every group element.
    coset_of: HashMap<(Composition, Composition), Vec<usize>>,
    parabolic_gens: HashMap<Composition, Vec<usize>>,
}

impl SchurOracle {
    pub fn new(n: usize, r: usize) -> Self {
        let hecke = HeckeAlgebra::new(r);
        let g = hecke.group();
        let comps = Composition::all(n, r as i64);
        let parabolic_gens: HashMap<Composition, Vec<usize>> =
            comps.iter().map(|l| (l.clone(), g.parabolic_generators(l))).collect();
        let mut cosets = Vec::new();
        let mut by_matrix = HashMap::new();
        let mut coset_of = HashMap::new();
        for l in &comps {
            for m in &comps {
                let gl = &parabolic_gens[l];
                let gm = &parabolic_gens[m];
                let mut label = vec![usize::MAX; g.order()];
                for start in 0..g.order() {
                    if label[start] != usize::MAX {
                        continue;
                    }
                    let id = cosets.len();
                    let mut elems = vec![start];
                    label[start] = id;
                    let mut k = 0;
                    while k < elems.len() {
                        let w = elems[k];
                        k += 1;
                        let nbrs = gl.iter().map(|&i| g.left_mul(w, i)).chain(gm.iter().map(|&i| g.right_mul(w, i)));
                        for x in nbrs.collect::<Vec<_>>() {
                            if label[x] == usize::MAX {
                                label[x] = id;
                                elems.push(x);
                            }
                        }
                    }
                    elems.sort_unstable();
                    let d = *elems.iter().min_by_key(|&&w| (g.length(w), w)).expect("nonempty coset");
                    let matrix = coset_matrix_raw(n, l, g.element(d), m);
                    by_matrix.insert(matrix.clone(), id);
                    cosets.push(DoubleCoset { lambda: l.clone(), mu: m.clone(), d, elements: elems, matrix });
                }
                coset_of.insert((l.clone(), m.clone()), label);
            }
        }
        Self { n, r, hecke, cosets, by_matrix, coset_of, parabolic_gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn hecke(&self) -> &HeckeAlgebra {
        &self.hecke
    }

    pub fn cosets(&self) -> &[DoubleCoset] {
        &self.cosets
    }

    /// All basis labels, sorted.
    pub fn basis(&self) -> Vec<ThetaMatrix> {
        let mut v: Vec<ThetaMatrix> = self.cosets.iter().map(|c| c.matrix.clone()).collect();
        v.sort();
        v
    }

    pub fn coset(&self, a: &ThetaMatrix) -> Result<&DoubleCoset> {
        self.by_matrix
            .get(a)
            .map(|&i| &self.cosets[i])
            .ok_or_else(|| Error::Malformed(format!("{a} is not a basis label for (n, r) = ({}, {})", self.n, self.r)))
    }

    /// Matrix of the double coset containing `d` (any element of it).
    pub fn coset_matrix(&self, l: &Composition, d: &SignedPerm, m: &Composition) -> Result<ThetaMatrix> {
        let g = self.hecke.group();
        let w = g.index_of(d)?;
        let labels = self
            .coset_of
            .get(&(l.clone(), m.clone()))
            .ok_or_else(|| Error::Malformed("composition outside Lambda(n+1, r)".into()))?;
        Ok(self.cosets[labels[w]].matrix.clone())
    }

    /// `(lambda, d, mu)` with `d` the minimal representative.
    pub fn matrix_to_coset(&self, a: &ThetaMatrix) -> Result<(Composition, SignedPerm, Composition)> {
        let c = self.coset(a)?;
        Ok((c.lambda.clone(), self.hecke.group().element(c.d).clone(), c.mu.clone()))
    }

    /// `e_A(x_mu)`: the sum of `T_w` over the double coset of `A`.
    pub fn value(&self, a: &ThetaMatrix) -> Result<HeckeElt> {
        Ok(HeckeElt::sum_of(&self.coset(a)?.elements))
    }

    /// `e_A e_B` (with `e_A` applied last) in the `e`-basis.
    pub fn mul_basis(&self, a: &ThetaMatrix, b: &ThetaMatrix) -> Result<BTreeMap<ThetaMatrix, LaurentPoly>> {
        let ca = self.coset(a)?;
        let cb = self.coset(b)?;
        if ca.mu != cb.lambda {
            return Ok(BTreeMap::new());
        }
        let g = self.hecke.group();
        let gens_mu = &self.parabolic_gens[&cb.lambda];
        // e_B(x_nu) = x_mu * sum of T_y, y minimal in W_mu y.
        let distinguished: Vec<usize> = cb
            .elements
            .iter()
            .copied()
            .filter(|&y| gens_mu.iter().all(|&i| g.length(g.left_mul(y, i)) > g.length(y)))
            .collect();
        let h = HeckeElt::sum_of(&distinguished);
        let z = self.hecke.mul(&HeckeElt::sum_of(&ca.elements), &h);

        let labels = &self.coset_of[&(ca.lambda.clone(), cb.mu.clone())];
        let mut out = BTreeMap::new();
        let mut rebuilt = HeckeElt::zero();
        let mut seen = vec![false; self.cosets.len()];
        for (w, _) in z.terms() {
            let id = labels[w];
            if std::mem::replace(&mut seen[id], true) {
                continue;
            }
            let c = &self.cosets[id];
            let coeff = z.coeff(c.d);
            if coeff.is_zero() {
                return Err(Error::Internal(format!(
                    "product has support in {} but not at its minimal element",
                    c.matrix
                )));
            }
            rebuilt = rebuilt.add(&HeckeElt::sum_of(&c.elements).scale(&coeff));
            out.insert(c.matrix.clone(), coeff);
        }
        if rebuilt != z {
            return Err(Error::Internal("product is not a combination of double-coset sums".into()));
        }
        Ok(out)
    }
}

/// `a_ij = |R_i(tilde l) cap d(R_j(tilde m))|`.
fn coset_matrix_raw(n: usize, l: &Composition, d: &SignedPerm, m: &Composition) -> ThetaMatrix {
    let lt = l.tilde();
    let mt = m.tilde();
    let size = 2 * n + 1;
    let block = |t: &[i64], x: usize| -> usize {
        let mut acc = 0;
        for (k, &len) in t.iter().enumerate() {
            acc += len as usize;
            if x <= acc {
                return k;
            }
        }
        unreachable!("point outside [1, 2r+1]")
    };
    let mut entries = vec![0i64; size * size];
    for x in 1..=d.image().len() {
        let j = block(&mt, x);
        let i = block(&lt, d.apply(x));
        entries[i * size + j] += 1;
    }
    ThetaMatrix::from_flat(n, entries).expect("double-coset matrices are centro-symmetric")
}
