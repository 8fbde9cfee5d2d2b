//! Finitary parabolic subsets of `S_aff` and (double) coset representatives.

use std::collections::{HashSet, VecDeque};

use crate::coxeter::GeneratorKind;
use crate::error::{Error, Result};
use crate::root_datum::{Coweight, RootDatum};
use crate::weyl_ext::ExtAffineElement;

/// Hard cap on `|W_A|` during closure enumeration.
pub const MAX_PARABOLIC_ORDER: usize = 1_000_000;

/// A subset `A ⊆ S_aff` generating a finite group `W_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitarySubset {
    /// Sorted generator indices into [`RootDatum::generators`].
    pub generators: Vec<usize>,
    /// The longest element `w_A`.
    pub longest: ExtAffineElement,
    /// `|W_A|`.
    pub order: usize,
    /// Elements of `W_A`, breadth-first from the identity.
    pub elements: Vec<ExtAffineElement>,
}

impl FinitarySubset {
    pub fn contains(&self, generator: usize) -> bool {
        self.generators.binary_search(&generator).is_ok()
    }

    pub fn label(&self, datum: &RootDatum) -> String {
        if self.generators.is_empty() {
            return "{}".into();
        }
        let names: Vec<String> = self.generators.iter().map(|&g| datum.generators()[g].kind.to_string()).collect();
        names.join(",")
    }
}

/// Whether the right coset is `w·W_A` or the left coset `W_A·w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl RootDatum {
    /// Component criterion: `A` is finitary iff it omits at least one
    /// generator of every Dynkin component's affine diagram.
    pub fn is_finitary(&self, indices: &[usize]) -> bool {
        let n = self.num_simple();
        self.components().iter().enumerate().all(|(c, comp)| {
            let full = comp.iter().all(|i| indices.contains(i)) && indices.contains(&(n + c));
            !full
        })
    }

    pub fn make_finitary(&self, indices: &[usize]) -> Result<FinitarySubset> {
        let mut generators: Vec<usize> = indices.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if let Some(&bad) = generators.iter().find(|&&g| g >= self.generators().len()) {
            return Err(Error::Parse(format!("generator index {bad} out of range")));
        }
        let label = || generators.iter().map(|&g| self.generators()[g].kind.to_string()).collect::<Vec<_>>().join(",");
        if !self.is_finitary(&generators) {
            return Err(Error::NotFinitary(label()));
        }
        let e = self.identity();
        let mut seen = HashSet::from([e.clone()]);
        let mut elements = vec![e.clone()];
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for &g in &generators {
                let y = x.mul(self.generator(g));
                if seen.insert(y.clone()) {
                    if elements.len() >= MAX_PARABOLIC_ORDER {
                        return Err(Error::ResourceLimit(format!(
                            "|W_A| for {} exceeds {MAX_PARABOLIC_ORDER}",
                            label()
                        )));
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let longest = elements
            .iter()
            .max_by_key(|x| self.length(x))
            .cloned()
            .expect("nonempty");
        let top = self.length(&longest);
        if elements.iter().filter(|x| self.length(x) == top).count() != 1 || !longest.mul(&longest).is_identity() {
            return Err(Error::Internal(format!("W_A for {} has no unique involutive longest element", label())));
        }
        Ok(FinitarySubset { order: elements.len(), generators, longest, elements })
    }

    /// `A = S`, so that `W_A = W`.
    pub fn finite_parabolic(&self) -> FinitarySubset {
        let idx: Vec<usize> = (0..self.num_simple()).collect();
        self.make_finitary(&idx).expect("the finite Weyl group is finitary")
    }

    /// Every finitary subset of `S_aff`, ordered by size then lexicographically.
    pub fn all_finitary(&self) -> Vec<FinitarySubset> {
        let n = self.generators().len();
        let mut subsets: Vec<Vec<usize>> = (0u32..(1 << n))
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
            .filter(|s: &Vec<usize>| self.is_finitary(s))
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subsets.into_iter().map(|s| self.make_finitary(&s).expect("finitary")).collect()
    }

    /// `ℓ(w_A·w) = ℓ(w_A) + ℓ(w)`.
    pub fn is_minimal_in_left_coset(&self, w: &ExtAffineElement, a: &FinitarySubset) -> bool {
        self.length(&a.longest.mul(w)) == self.length(&a.longest) + self.length(w)
    }

    /// `ℓ(w·w_A) = ℓ(w) + ℓ(w_A)`.
    pub fn is_minimal_in_right_coset(&self, w: &ExtAffineElement, a: &FinitarySubset) -> bool {
        self.length(&w.mul(&a.longest)) == self.length(&a.longest) + self.length(w)
    }

    fn strip(&self, w: &ExtAffineElement, a: &FinitarySubset, side: Side, down: bool) -> ExtAffineElement {
        let mut cur = w.clone();
        loop {
            let l = self.length(&cur);
            let step = a.generators.iter().find_map(|&g| {
                let s = self.generator(g);
                let next = match side {
                    Side::Left => s.mul(&cur),
                    Side::Right => cur.mul(s),
                };
                let nl = self.length(&next);
                let better = if down { nl < l } else { nl > l };
                better.then_some(next)
            });
            match step {
                Some(next) => cur = next,
                None => return cur,
            }
        }
    }

    /// Minimal element of `W_A·w`.
    pub fn min_left_rep(&self, w: &ExtAffineElement, a: &FinitarySubset) -> ExtAffineElement {
        self.strip(w, a, Side::Left, true)
    }

    /// Minimal element of `w·W_A`.
    pub fn min_right_rep(&self, w: &ExtAffineElement, a: &FinitarySubset) -> ExtAffineElement {
        self.strip(w, a, Side::Right, true)
    }

    pub fn max_left_rep(&self, w: &ExtAffineElement, a: &FinitarySubset) -> ExtAffineElement {
        self.strip(w, a, Side::Left, false)
    }

    pub fn max_right_rep(&self, w: &ExtAffineElement, a: &FinitarySubset) -> ExtAffineElement {
        self.strip(w, a, Side::Right, false)
    }

    pub fn min_rep(&self, w: &ExtAffineElement, a: &FinitarySubset, side: Side) -> ExtAffineElement {
        self.strip(w, a, side, true)
    }

    pub fn max_rep(&self, w: &ExtAffineElement, a: &FinitarySubset, side: Side) -> ExtAffineElement {
        self.strip(w, a, side, false)
    }

    /// `w^L_λ = v_λ·t_λ`, the minimal element of `W·t_λ`.
    pub fn w_l(&self, lambda: &Coweight) -> ExtAffineElement {
        let (_, v) = self.dominant_part(lambda);
        ExtAffineElement::new(v, lambda.clone())
    }

    /// `w^R_λ = (w^L_{−λ})⁻¹`, the minimal element of `t_λ·W`.
    pub fn w_r(&self, lambda: &Coweight) -> ExtAffineElement {
        self.w_l(&lambda.neg()).inv()
    }

    /// Membership in `W^S_ext`: `ℓ(ws) > ℓ(w)` for every finite simple `s`.
    pub fn is_in_ws(&self, w: &ExtAffineElement) -> bool {
        let l = self.length(w);
        (0..self.num_simple()).all(|i| self.length(&w.mul(&self.from_simple(i))) > l)
    }

    /// Membership in `ᴬW^S_ext`: `ℓ(w_A·w·w∘) = ℓ(w_A) + ℓ(w) + ℓ(w∘)`.
    pub fn is_in_aws(&self, w: &ExtAffineElement, a: &FinitarySubset) -> bool {
        let w0 = self.w0();
        self.length(&a.longest.mul(w).mul(&w0)) == self.length(&a.longest) + self.length(w) + self.length(&w0)
    }

    /// Evaluates the three equivalent comparisons of right-coset minimal
    /// representatives: `y ≤ w`; `y·w_A ≤ w·w_A`; some `y' ∈ yW_A`,
    /// `w' ∈ wW_A` with `y' ≤ w'`.
    pub fn douglass_equiv_check(
        &self,
        y: &ExtAffineElement,
        w: &ExtAffineElement,
        a: &FinitarySubset,
    ) -> Result<(bool, bool, bool)> {
        for x in [y, w] {
            if !self.is_minimal_in_right_coset(x, a) {
                return Err(Error::NotMinimalInCoset(self.literal(x)));
            }
        }
        let first = self.bruhat_leq(y, w);
        let second = self.bruhat_leq(&y.mul(&a.longest), &w.mul(&a.longest));
        let third = a.elements.iter().any(|u| {
            let yu = y.mul(u);
            a.elements.iter().any(|v| self.bruhat_leq(&yu, &w.mul(v)))
        });
        Ok((first, second, third))
    }

    /// Minimal and maximal elements of `W·t_λ·W` for dominant `λ`.
    pub fn spherical_double_min_max(&self, lambda: &Coweight) -> Result<(ExtAffineElement, ExtAffineElement)> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let max = self.w0().mul(&self.translation(lambda));
        Ok((self.double_coset_min(&self.translation(lambda), &self.finite_parabolic()), max))
    }

    /// Minimal element of `W_A·w·W` by alternating left/right stripping.
    pub fn double_coset_min(&self, w: &ExtAffineElement, a: &FinitarySubset) -> ExtAffineElement {
        let finite = self.finite_parabolic();
        let mut cur = w.clone();
        loop {
            let next = self.min_right_rep(&self.min_left_rep(&cur, a), &finite);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Parses `s1,a1`-style generator lists (1-based).
    pub fn parse_parabolic(&self, text: &str) -> Result<FinitarySubset> {
        let mut idx = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (kind, num) = tok.split_at(1);
            let k: usize = num
                .parse()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| Error::Parse(format!("bad generator {tok:?}")))?;
            let target = match kind {
                "s" => GeneratorKind::Finite(k - 1),
                "a" => GeneratorKind::Affine(k - 1),
                _ => return Err(Error::Parse(format!("bad generator {tok:?}"))),
            };
            let pos = self
                .generators()
                .iter()
                .position(|g| g.kind == target)
                .ok_or_else(|| Error::Parse(format!("no generator {tok}")))?;
            idx.push(pos);
        }
        self.make_finitary(&idx)
    }
}
