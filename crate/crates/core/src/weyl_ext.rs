//! Elements of `W`, `W_aff` and `W_ext = W ⋉ Y`.
//!
//! An extended element is stored as the pair `(w, λ)` standing for `w·t_λ`,
//! with the rewriting rule `t_μ·v = v·t_{v⁻¹(μ)}`. It acts on `V = Y ⊗ ℚ`
//! by `(w·t_λ)·p = w(p + λ)`.

use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use num::BigRational;

use crate::alcoves::RationalPoint;
use crate::linalg::{dot, IntMatrix};
use crate::root_datum::{Coweight, RootDatum, RootFunctional};

/// Element of the finite Weyl group, as its matrix on `Y` together with the
/// inverse matrix. Equality and hashing only look at the matrix.
#[derive(Clone)]
pub struct FiniteWeylElement {
    matrix: IntMatrix,
    inverse: IntMatrix,
}

impl PartialEq for FiniteWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for FiniteWeylElement {}

impl Hash for FiniteWeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl std::fmt::Debug for FiniteWeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "W{:?}", self.matrix)
    }
}

impl FiniteWeylElement {
    pub fn identity(rank: usize) -> Self {
        Self { matrix: IntMatrix::identity(rank), inverse: IntMatrix::identity(rank) }
    }

    /// Reflection `y ↦ y − <β, y> β^∨`; it is its own inverse.
    pub fn reflection(root: &RootFunctional, coroot: &Coweight) -> Self {
        let n = coroot.0.len();
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] -= coroot.0[i] * root.0[j];
            }
        }
        Self { inverse: m.clone(), matrix: m }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn mul(&self, other: &FiniteWeylElement) -> FiniteWeylElement {
        Self { matrix: self.matrix.mul(&other.matrix), inverse: other.inverse.mul(&self.inverse) }
    }

    pub fn inv(&self) -> FiniteWeylElement {
        Self { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.matrix.rows())
    }

    pub fn act(&self, lambda: &Coweight) -> Coweight {
        Coweight(self.matrix.mul_vec(&lambda.0))
    }

    pub fn act_inv(&self, lambda: &Coweight) -> Coweight {
        Coweight(self.inverse.mul_vec(&lambda.0))
    }

    /// Action on characters: `(wα)(y) = α(w⁻¹y)`.
    pub fn act_on_root(&self, alpha: &RootFunctional) -> RootFunctional {
        RootFunctional(self.inverse.vec_mul(&alpha.0))
    }

    pub fn act_on_point(&self, p: &RationalPoint) -> RationalPoint {
        let n = self.matrix.rows();
        let coords = (0..n)
            .map(|i| {
                self.matrix
                    .row(i)
                    .iter()
                    .zip(&p.coords)
                    .fold(BigRational::from_integer(0.into()), |acc, (&m, x)| acc + x * BigRational::from_integer(m.into()))
            })
            .collect();
        RationalPoint { coords }
    }
}

/// `w·t_λ` in the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtAffineElement {
    pub finite: FiniteWeylElement,
    pub trans: Coweight,
}

impl ExtAffineElement {
    pub fn identity(rank: usize) -> Self {
        Self { finite: FiniteWeylElement::identity(rank), trans: Coweight::zero(rank) }
    }

    pub fn translation(lambda: Coweight) -> Self {
        let rank = lambda.0.len();
        Self { finite: FiniteWeylElement::identity(rank), trans: lambda }
    }

    pub fn from_finite(w: FiniteWeylElement) -> Self {
        let rank = w.matrix.rows();
        Self { finite: w, trans: Coweight::zero(rank) }
    }

    pub fn new(finite: FiniteWeylElement, trans: Coweight) -> Self {
        Self { finite, trans }
    }

    /// `(w t_λ)(w' t_λ') = (ww') t_{w'⁻¹(λ) + λ'}`.
    pub fn mul(&self, other: &ExtAffineElement) -> ExtAffineElement {
        Self {
            finite: self.finite.mul(&other.finite),
            trans: other.finite.act_inv(&self.trans).add(&other.trans),
        }
    }

    /// `(w t_λ)⁻¹ = w⁻¹ t_{−w(λ)}`.
    pub fn inv(&self) -> ExtAffineElement {
        Self { finite: self.finite.inv(), trans: self.finite.act(&self.trans).neg() }
    }

    pub fn is_identity(&self) -> bool {
        self.trans.is_zero() && self.finite.is_identity()
    }

    pub fn is_translation(&self) -> bool {
        self.finite.is_identity()
    }

    /// Affine action on integral points of `V`.
    pub fn act_on_coweight(&self, lambda: &Coweight) -> Coweight {
        self.finite.act(&lambda.add(&self.trans))
    }

    pub fn act_on_point(&self, p: &RationalPoint) -> RationalPoint {
        self.finite.act_on_point(&p.add_coweight(&self.trans))
    }
}

impl RootDatum {
    pub fn identity(&self) -> ExtAffineElement {
        ExtAffineElement::identity(self.rank())
    }

    pub fn translation(&self, lambda: &Coweight) -> ExtAffineElement {
        ExtAffineElement::translation(lambda.clone())
    }

    /// Finite simple reflection `s_i` (0-based).
    pub fn finite_reflection(&self, i: usize) -> FiniteWeylElement {
        FiniteWeylElement::reflection(&self.simple_roots()[i], &self.simple_coroots()[i])
    }

    /// `s_i` as an element of `W_ext`.
    pub fn from_simple(&self, i: usize) -> ExtAffineElement {
        ExtAffineElement::from_finite(self.finite_reflection(i))
    }

    /// Longest element `w∘` of `W`.
    pub fn longest_finite(&self) -> &FiniteWeylElement {
        &self.longest
    }

    pub fn w0(&self) -> ExtAffineElement {
        ExtAffineElement::from_finite(self.longest.clone())
    }

    /// Row vector `2ρᵀ·M`: its pairing with a coroot `β^∨` has the sign of
    /// `w(β)`.
    fn two_rho_row(&self, w: &FiniteWeylElement) -> Vec<i64> {
        w.matrix.vec_mul(&self.two_rho().0)
    }

    /// Whether `w` sends the positive root with index `beta` to a positive root.
    pub fn maps_to_positive(&self, w: &FiniteWeylElement, beta: usize) -> bool {
        dot(&self.two_rho_row(w), &self.positive_roots()[beta].coroot.0) > 0
    }

    /// `w(α_i) ∈ R₊` for the simple root `α_i`.
    pub fn maps_simple_to_positive(&self, w: &FiniteWeylElement, i: usize) -> bool {
        dot(&self.two_rho_row(w), &self.simple_coroots()[i].0) > 0
    }

    pub fn finite_length(&self, w: &FiniteWeylElement) -> u64 {
        let row = self.two_rho_row(w);
        self.positive_roots().iter().filter(|b| dot(&row, &b.coroot.0) < 0).count() as u64
    }

    /// Reduced word of `w` in 0-based simple reflection indices, found by
    /// stripping the lowest-index right descent first.
    pub fn finite_word(&self, w: &FiniteWeylElement) -> Vec<usize> {
        let mut w = w.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..self.num_simple()).find(|&i| !self.maps_simple_to_positive(&w, i)) {
            w = w.mul(&self.finite_reflection(i));
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    pub(crate) fn compute_longest(&self) -> FiniteWeylElement {
        let mut w = FiniteWeylElement::identity(self.rank());
        while let Some(i) = (0..self.num_simple()).find(|&i| self.maps_simple_to_positive(&w, i)) {
            w = w.mul(&self.finite_reflection(i));
        }
        w
    }

    /// All elements of `W` in breadth-first order from the identity
    /// (so sorted by length); the position is the element's index.
    pub fn finite_elements(&self) -> &[FiniteWeylElement] {
        self.finite_elements.get_or_init(|| {
            let gens: Vec<_> = (0..self.num_simple()).map(|i| self.finite_reflection(i)).collect();
            let e = FiniteWeylElement::identity(self.rank());
            let mut seen = HashSet::from([e.clone()]);
            let mut out = vec![e.clone()];
            let mut queue = VecDeque::from([e]);
            while let Some(w) = queue.pop_front() {
                for s in &gens {
                    let ws = w.mul(s);
                    if seen.insert(ws.clone()) {
                        out.push(ws.clone());
                        queue.push_back(ws);
                    }
                }
            }
            out
        })
    }

    /// Iwahori–Matsumoto length of `w·t_λ`:
    /// `Σ_{α>0, wα>0} |<λ,α>| + Σ_{α>0, wα<0} |1 + <λ,α>|`.
    pub fn length(&self, a: &ExtAffineElement) -> u64 {
        let row = self.two_rho_row(&a.finite);
        self.positive_roots()
            .iter()
            .map(|b| {
                let k = dot(&b.root.0, &a.trans.0);
                if dot(&row, &b.coroot.0) > 0 {
                    k.unsigned_abs()
                } else {
                    (1 + k).unsigned_abs()
                }
            })
            .sum()
    }

    /// `a ∈ W_aff`, i.e. its translation part lies in the coroot lattice.
    pub fn is_in_affine_subgroup(&self, a: &ExtAffineElement) -> bool {
        self.in_coroot_lattice(&a.trans)
    }

    /// All `v·t_λ` with `v ∈ W` and `‖λ‖∞ ≤ bound`; `v` in breadth-first
    /// order, then `λ` lexicographically.
    pub fn box_elements(&self, bound: i64) -> Vec<ExtAffineElement> {
        let lambdas = self.box_coweights(bound);
        self.finite_elements()
            .iter()
            .flat_map(|v| lambdas.iter().map(move |l| ExtAffineElement::new(v.clone(), l.clone())))
            .collect()
    }

    /// All coweights with `‖λ‖∞ ≤ bound`, lexicographically ordered.
    pub fn box_coweights(&self, bound: i64) -> Vec<Coweight> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.rank() {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (-bound..=bound).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Coweight).collect()
    }
}
