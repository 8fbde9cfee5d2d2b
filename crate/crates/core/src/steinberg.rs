//! Factorization of `W^S_ext` through restricted elements and the label
//! arithmetic `y ↦ y·t_{w∘(μ)}`.

use crate::cosets::FinitarySubset;
use crate::error::{Error, Result};
use crate::root_datum::{Coweight, RootDatum};
use crate::weyl_ext::ExtAffineElement;

/// `w = x·t_ν` with `x` restricted and `ν` antidominant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergFactorization {
    pub x: ExtAffineElement,
    pub nu: Coweight,
    /// `(ℓ(x), ℓ(t_ν), ℓ(w))`.
    pub lengths: (u64, u64, u64),
}

impl RootDatum {
    /// `x ≡ x'` modulo right multiplication by `t_{Y₀}`.
    pub fn congruent_mod_radical(&self, x: &ExtAffineElement, other: &ExtAffineElement) -> bool {
        x.finite == other.finite && self.is_radical(&x.trans.sub(&other.trans))
    }

    pub fn steinberg_factor(&self, w: &ExtAffineElement) -> Result<SteinbergFactorization> {
        if !self.is_in_ws(w) {
            return Err(Error::NotInWS(self.literal(w)));
        }
        let mu = self.pi_box_of(w).mu;
        let shift = mu.sub(self.sigma());
        let x = w.mul(&self.translation(&shift));
        let nu = shift.neg();
        let f = SteinbergFactorization {
            lengths: (self.length(&x), self.length(&self.translation(&nu)), self.length(w)),
            x,
            nu,
        };
        let ok = f.x.mul(&self.translation(&f.nu)) == *w
            && self.is_restricted(&f.x)
            && self.is_antidominant(&f.nu)
            && f.lengths.0 + f.lengths.1 == f.lengths.2;
        if !ok {
            return Err(Error::Internal(format!("bad factorization of {}", self.literal(w))));
        }
        Ok(f)
    }

    /// `y·t_{w∘(μ)}` for restricted `y ∈ ᴬW^S_ext` and dominant `μ`. The
    /// result is checked to lie in `ᴬW^S_ext` with `ℓ = ℓ(y) + ℓ(t_μ)`.
    pub fn steinberg_label(&self, y: &ExtAffineElement, mu: &Coweight, a: &FinitarySubset) -> Result<ExtAffineElement> {
        if !self.is_restricted(y) {
            return Err(Error::NotRestricted(self.literal(y)));
        }
        if !self.is_in_aws(y, a) {
            return Err(Error::NotInAWS(self.literal(y)));
        }
        if !self.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let out = y.mul(&self.translation(&self.longest_finite().act(mu)));
        if !self.is_in_aws(&out, a) {
            return Err(Error::Internal(format!("label {} left the double-minimal set", self.literal(&out))));
        }
        if self.length(&out) != self.length(y) + self.length(&self.translation(mu)) {
            return Err(Error::Internal(format!("lengths do not add for label {}", self.literal(&out))));
        }
        Ok(out)
    }

    /// Restricted elements of `ᴬW^S_ext` with `‖λ‖∞ ≤ bound`, ordered by the
    /// finite part (length, then index) and then `λ` lexicographically.
    pub fn enumerate_restricted(&self, a: &FinitarySubset, bound: i64) -> Vec<ExtAffineElement> {
        self.box_elements(bound)
            .into_iter()
            .filter(|w| self.is_restricted(w) && self.is_in_aws(w, a))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    fn gl2() -> RootDatum {
        RootDatum::preset("GL2").unwrap()
    }

    /// All restricted `x` with `x·t_ν = w`, `ν` antidominant, `‖trans(x)‖∞ ≤ bound`.
    fn brute_factors(d: &RootDatum, w: &ExtAffineElement, bound: i64) -> Vec<(ExtAffineElement, Coweight)> {
        d.box_coweights(bound)
            .into_iter()
            .filter_map(|lx| {
                let x = ExtAffineElement::new(w.finite.clone(), lx.clone());
                let nu = w.trans.sub(&lx);
                (d.is_restricted(&x) && d.is_antidominant(&nu)).then_some((x, nu))
            })
            .collect()
    }

    #[test]
    fn gl2_translation_factorization() {
        let d = gl2();
        let w = d.translation(&cw(&[-1, -1]));
        let f = d.steinberg_factor(&w).unwrap();
        assert_eq!(d.pairing(&d.simple_roots()[0], &f.x.trans), 0);
        assert!(d.is_antidominant(&f.nu));
        // (x = e, ν = (−1,−1)) is one of the valid answers.
        assert!(d.congruent_mod_radical(&f.x, &d.identity()));
        let brute = brute_factors(&d, &w, 3);
        assert!(brute.iter().any(|(x, _)| x.is_identity()));
        assert!(brute.iter().all(|(x, _)| d.congruent_mod_radical(x, &f.x)));
    }

    #[test]
    fn gl2_restricted_factors_trivially() {
        let d = gl2();
        let w = d.parse_element("s1*t[0,1]").unwrap();
        let f = d.steinberg_factor(&w).unwrap();
        assert_eq!(f.x, w);
        assert!(f.nu.is_zero());
    }

    #[test]
    fn gl2_nontrivial_factorization() {
        let d = gl2();
        let w = d.parse_element("s1*t[-1,2]").unwrap();
        let f = d.steinberg_factor(&w).unwrap();
        assert!(d.congruent_mod_radical(&f.x, &d.parse_element("s1*t[0,1]").unwrap()));
        assert_eq!(d.pairing(&d.simple_roots()[0], &f.nu), -2);
        assert_eq!(f.lengths, (0, 2, 2));
        let brute = brute_factors(&d, &w, 3);
        assert!(brute.iter().any(|(x, nu)| *x == d.parse_element("s1*t[0,1]").unwrap() && *nu == cw(&[-1, 1])));
    }

    #[test]
    fn factor_rejects_non_ws() {
        let d = gl2();
        assert!(matches!(d.steinberg_factor(&d.from_simple(0)), Err(Error::NotInWS(_))));
    }

    #[test]
    fn label_examples() {
        let d = gl2();
        let empty = d.make_finitary(&[]).unwrap();
        let a = d.make_finitary(&[0]).unwrap();
        assert!(d.steinberg_label(&d.identity(), &cw(&[0, 0]), &empty).unwrap().is_identity());
        let y = d.parse_element("s1*t[0,1]").unwrap();
        let out = d.steinberg_label(&y, &cw(&[1, 0]), &empty).unwrap();
        assert_eq!(out, d.parse_element("s1*t[0,2]").unwrap());
        assert_eq!(d.length(&out), 1);
        let out = d.steinberg_label(&y, &cw(&[1, 0]), &a).unwrap();
        assert_eq!(out, d.parse_element("s1*t[0,2]").unwrap());
        assert!(d.is_in_aws(&out, &a));

        assert!(matches!(d.steinberg_label(&d.translation(&cw(&[0, 1])), &cw(&[0, 0]), &empty), Err(Error::NotRestricted(_))));
        assert!(matches!(d.steinberg_label(&d.identity(), &cw(&[0, 0]), &a), Err(Error::NotInAWS(_))));
        assert!(matches!(d.steinberg_label(&y, &cw(&[0, 1]), &a), Err(Error::NotDominant(_))));
    }

    #[test]
    fn enumerate_restricted_examples() {
        let d = gl2();
        let empty = d.make_finitary(&[]).unwrap();
        let a = d.make_finitary(&[0]).unwrap();
        let y = d.parse_element("s1*t[0,1]").unwrap();
        let list = d.enumerate_restricted(&empty, 1);
        assert!(list.contains(&d.identity()) && list.contains(&y));
        assert!(list.contains(&d.translation(&cw(&[1, 1]))));
        assert!(list.contains(&d.translation(&cw(&[-1, -1]))));
        let list = d.enumerate_restricted(&a, 1);
        assert!(list.contains(&y));
        assert!(!list.contains(&d.identity()));

        let d = RootDatum::preset("PGL2").unwrap();
        let empty = d.make_finitary(&[]).unwrap();
        let list = d.enumerate_restricted(&empty, 1);
        assert_eq!(list, vec![d.identity(), d.parse_element("s1*t[-1]").unwrap()]);
    }
}
