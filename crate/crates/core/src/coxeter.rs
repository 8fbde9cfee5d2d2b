//! The Coxeter system `(W_aff, S_aff)`, the length-zero subgroup `Ω`, and the
//! Bruhat order extended to `W_ext`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::root_datum::RootDatum;
use crate::weyl_ext::{ExtAffineElement, FiniteWeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// `s_i` for the simple root `α_i` (0-based).
    Finite(usize),
    /// `t_{θ^∨} s_θ` for the highest root `θ` of a Dynkin component (0-based).
    Affine(usize),
}

/// Element of `S_aff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleReflection {
    pub kind: GeneratorKind,
    pub element: ExtAffineElement,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Finite(i) => write!(f, "s{}", i + 1),
            GeneratorKind::Affine(c) => write!(f, "a{}", c + 1),
        }
    }
}

pub(crate) fn build_generators(datum: &RootDatum) -> Vec<SimpleReflection> {
    let mut gens: Vec<SimpleReflection> = (0..datum.num_simple())
        .map(|i| SimpleReflection { kind: GeneratorKind::Finite(i), element: datum.from_simple(i) })
        .collect();
    for c in 0..datum.components().len() {
        let theta = &datum.positive_roots()[datum.highest_root(c)];
        // t_{θ^∨} s_θ = s_θ t_{−θ^∨}
        let s_theta = FiniteWeylElement::reflection(&theta.root, &theta.coroot);
        gens.push(SimpleReflection {
            kind: GeneratorKind::Affine(c),
            element: ExtAffineElement::new(s_theta, theta.coroot.neg()),
        });
    }
    gens
}

/// `a = omega · s_{letters[0]} ⋯ s_{letters[k-1]}` with `ℓ(omega) = 0` and
/// `k = ℓ(a)`. Letters index into [`RootDatum::generators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub omega: ExtAffineElement,
    pub letters: Vec<usize>,
}

const BRUHAT_CACHE_CAP: usize = 1 << 20;

/// Memo table for Bruhat comparisons, shared across threads. Cleared
/// wholesale once it reaches its capacity.
#[derive(Default)]
pub struct BruhatCache {
    map: Mutex<HashMap<(ExtAffineElement, ExtAffineElement), bool>>,
}

impl BruhatCache {
    fn get(&self, key: &(ExtAffineElement, ExtAffineElement)) -> Option<bool> {
        self.map.lock().unwrap().get(key).copied()
    }

    fn insert(&self, key: (ExtAffineElement, ExtAffineElement), value: bool) {
        let mut map = self.map.lock().unwrap();
        if map.len() >= BRUHAT_CACHE_CAP {
            map.clear();
        }
        map.insert(key, value);
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl RootDatum {
    /// `S_aff`: finite generators in datum order, then one affine generator
    /// per Dynkin component.
    pub fn generators(&self) -> &[SimpleReflection] {
        &self.generators
    }

    pub fn generator(&self, idx: usize) -> &ExtAffineElement {
        &self.generators[idx].element
    }

    /// Generators `s` with `ℓ(s·a) < ℓ(a)`, by index.
    pub fn left_descents(&self, a: &ExtAffineElement) -> Vec<usize> {
        let l = self.length(a);
        (0..self.generators.len())
            .filter(|&i| self.length(&self.generator(i).mul(a)) < l)
            .collect()
    }

    /// Generators `s` with `ℓ(a·s) < ℓ(a)`, by index.
    pub fn right_descents(&self, a: &ExtAffineElement) -> Vec<usize> {
        let l = self.length(a);
        (0..self.generators.len())
            .filter(|&i| self.length(&a.mul(self.generator(i))) < l)
            .collect()
    }

    fn first_left_descent(&self, a: &ExtAffineElement, l: u64) -> Option<usize> {
        (0..self.generators.len()).find(|&i| self.length(&self.generator(i).mul(a)) < l)
    }

    /// Strips right descents (lowest generator index first) until the
    /// remainder has length zero.
    pub fn omega_decompose(&self, a: &ExtAffineElement) -> ReducedWord {
        let mut cur = a.clone();
        let mut l = self.length(&cur);
        let mut rev = Vec::with_capacity(l as usize);
        while l > 0 {
            let (i, next) = (0..self.generators.len())
                .map(|i| (i, cur.mul(self.generator(i))))
                .find(|(_, x)| self.length(x) < l)
                .expect("positive length implies a descent");
            rev.push(i);
            cur = next;
            l -= 1;
        }
        rev.reverse();
        ReducedWord { omega: cur, letters: rev }
    }

    /// Reassembles `omega · ∏ letters`.
    pub fn word_product(&self, word: &ReducedWord) -> ExtAffineElement {
        word.letters.iter().fold(word.omega.clone(), |acc, &i| acc.mul(self.generator(i)))
    }

    pub fn is_length_zero(&self, a: &ExtAffineElement) -> bool {
        self.length(a) == 0
    }

    /// Whether `a` and `b` have the same `Ω`-component. Equivalent to
    /// `a·b⁻¹ ∈ W_aff`, i.e. translation parts congruent modulo coroots.
    pub fn same_omega_part(&self, a: &ExtAffineElement, b: &ExtAffineElement) -> bool {
        self.in_coroot_lattice(&a.trans.sub(&b.trans))
    }

    /// Bruhat order on `W_ext`: `ωy ≤ ω'w` iff `ω = ω'` and `y ≤ w` in
    /// `W_aff`, decided by the descent recursion.
    pub fn bruhat_leq(&self, y: &ExtAffineElement, w: &ExtAffineElement) -> bool {
        if !self.same_omega_part(y, w) {
            return false;
        }
        self.bruhat_rec(y.clone(), w.clone())
    }

    fn bruhat_rec(&self, y: ExtAffineElement, w: ExtAffineElement) -> bool {
        let (ly, lw) = (self.length(&y), self.length(&w));
        if ly > lw {
            return false;
        }
        if ly == lw {
            return y == w;
        }
        if ly == 0 {
            // y is the Ω-part of w.
            return true;
        }
        let key = (y, w);
        if let Some(hit) = self.bruhat_cache.get(&key) {
            return hit;
        }
        let (y, w) = &key;
        let i = self.first_left_descent(w, lw).expect("positive length implies a descent");
        let s = self.generator(i);
        let sw = s.mul(w);
        let sy = s.mul(y);
        let result = if self.length(&sy) < ly { self.bruhat_rec(sy, sw) } else { self.bruhat_rec(y.clone(), sw) };
        self.bruhat_cache.insert(key, result);
        result
    }

    /// All elements of `W_aff` of length at most `max_len`, by length.
    pub fn affine_elements_up_to(&self, max_len: u64) -> Vec<ExtAffineElement> {
        let mut layers = vec![vec![self.identity()]];
        let mut seen: std::collections::HashSet<ExtAffineElement> = [self.identity()].into();
        for len in 1..=max_len {
            let mut next = Vec::new();
            for x in &layers[(len - 1) as usize] {
                for i in 0..self.generators.len() {
                    let y = x.mul(self.generator(i));
                    if self.length(&y) == len && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            layers.push(next);
        }
        layers.into_iter().flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Coweight;

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    #[test]
    fn generator_sets() {
        let d = RootDatum::preset("GL2").unwrap();
        assert_eq!(d.generators().len(), 2);
        let a1 = d.generator(1);
        assert_eq!(a1, &d.translation(&cw(&[1, -1])).mul(&d.from_simple(0)));

        let d = RootDatum::preset("GL3").unwrap();
        let kinds: Vec<_> = d.generators().iter().map(|g| g.kind).collect();
        assert_eq!(kinds, vec![GeneratorKind::Finite(0), GeneratorKind::Finite(1), GeneratorKind::Affine(0)]);

        let d = RootDatum::preset("PGL2").unwrap();
        assert_eq!(d.generator(1), &d.translation(&cw(&[2])).mul(&d.from_simple(0)));
        for name in ["GL2", "PGL2", "GL3", "PGL3"] {
            let d = RootDatum::preset(name).unwrap();
            for g in d.generators() {
                assert_eq!(d.length(&g.element), 1);
                assert!(g.element.mul(&g.element).is_identity());
            }
        }
    }

    #[test]
    fn gl2_descents() {
        let d = RootDatum::preset("GL2").unwrap();
        assert!(d.left_descents(&d.identity()).is_empty());
        assert_eq!(d.left_descents(&d.translation(&cw(&[1, 0]))), vec![1]);
        assert_eq!(d.left_descents(&d.from_simple(0)), vec![0]);
    }

    #[test]
    fn gl2_omega_decompositions() {
        let d = RootDatum::preset("GL2").unwrap();
        let s = d.finite_reflection(0);
        let w = d.omega_decompose(&d.translation(&cw(&[1, 0])));
        assert_eq!(w.omega, ExtAffineElement::new(s.clone(), cw(&[0, 1])));
        assert_eq!(w.letters, vec![0]);

        let omega = ExtAffineElement::new(s, cw(&[0, 1]));
        assert_eq!(d.omega_decompose(&omega), ReducedWord { omega: omega.clone(), letters: vec![] });

        let w = d.omega_decompose(&d.translation(&cw(&[1, -1])));
        assert!(w.omega.is_identity());
        assert_eq!(w.letters, vec![1, 0]);
        assert_eq!(d.word_product(&w), d.translation(&cw(&[1, -1])));
    }

    #[test]
    fn gl2_length_zero() {
        let d = RootDatum::preset("GL2").unwrap();
        let y = ExtAffineElement::new(d.finite_reflection(0), cw(&[0, 1]));
        assert!(d.is_length_zero(&y));
        assert!(d.is_length_zero(&d.translation(&cw(&[1, 1]))));
        assert!(!d.is_length_zero(&d.from_simple(0)));
    }

    #[test]
    fn gl2_bruhat_examples() {
        let d = RootDatum::preset("GL2").unwrap();
        let s = d.from_simple(0);
        assert!(d.bruhat_leq(&d.identity(), &s));
        assert!(d.bruhat_leq(&s, &d.translation(&cw(&[1, -1]))));
        let y = ExtAffineElement::new(d.finite_reflection(0), cw(&[0, 1]));
        assert!(!d.bruhat_leq(&y, &d.translation(&cw(&[1, 1]))));
        assert!(!d.bruhat_leq(&d.translation(&cw(&[1, -1])), &s));
    }

    #[test]
    fn omega_part_matches_decomposition() {
        let d = RootDatum::preset("GL3").unwrap();
        let elems = d.box_elements(1);
        for a in elems.iter().step_by(7) {
            for b in elems.iter().step_by(11) {
                let same = d.omega_decompose(a).omega == d.omega_decompose(b).omega;
                assert_eq!(same, d.same_omega_part(a, b));
            }
        }
    }

    #[test]
    fn affine_ball_sizes() {
        // Infinite dihedral group: 1 + 2k elements of length ≤ k.
        let d = RootDatum::preset("GL2").unwrap();
        assert_eq!(d.affine_elements_up_to(8).len(), 17);
        // Affine A2: 3k elements of each positive length k.
        let d = RootDatum::preset("PGL3").unwrap();
        assert_eq!(d.affine_elements_up_to(4).len(), 1 + 3 + 6 + 9 + 12);
    }
}
