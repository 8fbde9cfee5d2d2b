//! Numerical shadows of orbit geometry on `Fl` and `Gr`: orbit labels,
//! dimensions, closure orders, the Whittaker support condition, and the
//! dimension estimates for semi-infinite intersections and convolution
//! fibers. Varieties are never built; only their labels and dimensions are.

use std::fmt;

use num::{BigRational, Signed};
use serde::Serialize;

use crate::cosets::FinitarySubset;
use crate::error::{Error, Result};
use crate::root_datum::{Coweight, RootDatum};
use crate::weyl_ext::ExtAffineElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Space {
    Fl,
    Gr,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Fl => "Fl",
            Space::Gr => "Gr",
        })
    }
}

impl std::str::FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fl" => Ok(Space::Fl),
            "gr" => Ok(Space::Gr),
            _ => Err(Error::Parse(format!("unknown space {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    Iwahori(ExtAffineElement),
    Spherical(Coweight),
    Whittaker(FinitarySubset, ExtAffineElement),
}

/// Label of an orbit `Fl_w`, `Gr_w`, `Gr^λ`, `Fl^A_w` or `Gr^A_w`. Built only
/// through the checked constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLabel {
    space: Space,
    flavor: Flavor,
}

impl OrbitLabel {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometryReport {
    pub nonempty_possible: bool,
    #[serde(serialize_with = "ser_rational")]
    pub dimension_or_bound: BigRational,
    pub strict: bool,
    /// Nonemptiness is known outright, not just not excluded.
    pub nonempty_forced: bool,
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl fmt::Display for GeometryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nonempty_possible={} bound={} strict={} nonempty_forced={}",
            self.nonempty_possible, self.dimension_or_bound, self.strict, self.nonempty_forced
        )
    }
}

impl RootDatum {
    pub fn iwahori_label(&self, space: Space, w: &ExtAffineElement) -> Result<OrbitLabel> {
        if space == Space::Gr && !self.is_in_ws(w) {
            return Err(Error::NotInWS(self.literal(w)));
        }
        Ok(OrbitLabel { space, flavor: Flavor::Iwahori(w.clone()) })
    }

    /// `Gr^λ` for dominant `λ`.
    pub fn spherical_label(&self, lambda: &Coweight) -> Result<OrbitLabel> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        Ok(OrbitLabel { space: Space::Gr, flavor: Flavor::Spherical(lambda.clone()) })
    }

    /// `Fl^A_w` or `Gr^A_w`. Gr labels must lie in `W^S_ext` but not
    /// necessarily in `ᴬW^S_ext`.
    pub fn whittaker_label(&self, space: Space, a: &FinitarySubset, w: &ExtAffineElement) -> Result<OrbitLabel> {
        if space == Space::Gr && !self.is_in_ws(w) {
            return Err(Error::NotInWS(self.literal(w)));
        }
        Ok(OrbitLabel { space, flavor: Flavor::Whittaker(a.clone(), w.clone()) })
    }

    pub fn orbit_dim(&self, label: &OrbitLabel) -> u64 {
        match &label.flavor {
            Flavor::Iwahori(w) => self.length(w),
            Flavor::Spherical(mu) => self.pairing(self.two_rho(), mu) as u64,
            Flavor::Whittaker(a, w) => self.length(&a.longest.mul(w)),
        }
    }

    /// Closure inclusion `a ⊂ closure(b)`.
    pub fn closure_leq(&self, a: &OrbitLabel, b: &OrbitLabel) -> Result<bool> {
        if a.space != b.space {
            return Err(Error::FlavorMismatch);
        }
        match (&a.flavor, &b.flavor) {
            (Flavor::Iwahori(w), Flavor::Iwahori(y)) => Ok(self.bruhat_leq(w, y)),
            (Flavor::Spherical(lambda), Flavor::Spherical(mu)) => {
                let w0 = self.w0();
                let by_maxima = self.bruhat_leq(&w0.mul(&self.translation(lambda)), &w0.mul(&self.translation(mu)));
                let by_coroots = self.is_sum_of_positive_coroots(&mu.sub(lambda));
                if by_maxima != by_coroots {
                    return Err(Error::Internal(format!("spherical orders disagree on {lambda} ≤ {mu}")));
                }
                Ok(by_maxima)
            }
            (Flavor::Whittaker(a1, w), Flavor::Whittaker(a2, y)) if a1 == a2 => match a.space {
                Space::Fl => Ok(self.bruhat_leq(&a1.longest.mul(w), &a1.longest.mul(y))),
                Space::Gr => {
                    if self.is_in_aws(w, a1) && self.is_in_aws(y, a1) {
                        return Ok(self.bruhat_leq(w, y));
                    }
                    let s = self.finite_parabolic();
                    Ok(self.bruhat_leq(
                        &self.max_right_rep(&a1.longest.mul(w), &s),
                        &self.max_right_rep(&a1.longest.mul(y), &s),
                    ))
                }
            },
            _ => Err(Error::FlavorMismatch),
        }
    }

    /// `(Gr flag, Fl flag)`: whether `Gr^A_w` (for `w ∈ W^S_ext`) resp.
    /// `Fl^A_w` carries a nonzero equivariant local system.
    pub fn whittaker_supports_local_system(&self, w: &ExtAffineElement, a: &FinitarySubset) -> (bool, bool) {
        (self.is_in_aws(w, a), self.is_minimal_in_left_coset(w, a))
    }

    /// `Gr^λ ∩ S_μ`: empty unless `λ − dom(μ)` and `μ − w∘(λ)` are sums of
    /// positive coroots; dimension `⟨ρ, λ+μ⟩`.
    pub fn mv_intersection_s(&self, lambda: &Coweight, mu: &Coweight) -> Result<GeometryReport> {
        self.mv_report(lambda, mu, &lambda.add(mu))
    }

    /// `Gr^λ ∩ T_μ`: same emptiness conditions, dimension `⟨ρ, λ−μ⟩`.
    pub fn mv_intersection_t(&self, lambda: &Coweight, mu: &Coweight) -> Result<GeometryReport> {
        self.mv_report(lambda, mu, &lambda.sub(mu))
    }

    fn mv_report(&self, lambda: &Coweight, mu: &Coweight, dim_of: &Coweight) -> Result<GeometryReport> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let w0_lambda = self.longest_finite().act(lambda);
        let possible = self.is_sum_of_positive_coroots(&lambda.sub(&self.dom(mu)))
            && self.is_sum_of_positive_coroots(&mu.sub(&w0_lambda));
        Ok(GeometryReport {
            nonempty_possible: possible,
            dimension_or_bound: self.rho_pairing(dim_of),
            strict: false,
            nonempty_forced: false,
        })
    }

    /// Bound on `Gr_y ∩ S_ν`-type intersections for `y = w·t_λ ∈ W^S_ext`:
    /// empty unless `w∘(λ) − dom(ν)` is a sum of positive coroots; bound
    /// `⟨ρ, ν−λ⟩`, strict for restricted `y` and `ν ≠ λ`.
    pub fn iwahori_semiinf_bound(&self, y: &ExtAffineElement, nu: &Coweight) -> Result<GeometryReport> {
        if !self.is_in_ws(y) {
            return Err(Error::NotInWS(self.literal(y)));
        }
        let lambda = &y.trans;
        let w0_lambda = self.longest_finite().act(lambda);
        Ok(GeometryReport {
            nonempty_possible: self.is_sum_of_positive_coroots(&w0_lambda.sub(&self.dom(nu))),
            dimension_or_bound: self.rho_pairing(&nu.sub(lambda)),
            strict: self.is_restricted(y) && nu != lambda,
            nonempty_forced: false,
        })
    }

    /// Bound `⟨ρ, μ+η⟩` on `m_{y,μ}^{−1}(ẏ L_η) ⊂ Gr_y ×̃ Gr^μ`, strict when
    /// `y` is restricted and `η ≠ w∘(μ)`. Nonemptiness is excluded unless
    /// `η ≡ μ` modulo coroots and the bound is nonnegative.
    pub fn conv_fiber_bound(&self, y: &ExtAffineElement, mu: &Coweight, eta: &Coweight) -> Result<GeometryReport> {
        if !self.is_in_ws(y) {
            return Err(Error::NotInWS(self.literal(y)));
        }
        if !self.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let bound = self.rho_pairing(&mu.add(eta));
        let at_w0_mu = *eta == self.longest_finite().act(mu);
        Ok(GeometryReport {
            nonempty_possible: self.in_coroot_lattice(&eta.sub(mu)) && !bound.is_negative(),
            dimension_or_bound: bound,
            strict: self.is_restricted(y) && !at_w0_mu,
            nonempty_forced: at_w0_mu,
        })
    }

    /// Transports the Whittaker fiber to `m_{z,μ}` with `z = w_A·y` and
    /// evaluates [`RootDatum::conv_fiber_bound`] at `η = 0`. When `strict`,
    /// the relevant compactly supported cohomology vanishes for this `μ`.
    pub fn whittaker_serre_obstruction(
        &self,
        y: &ExtAffineElement,
        a: &FinitarySubset,
        mu: &Coweight,
    ) -> Result<GeometryReport> {
        if !self.is_restricted(y) {
            return Err(Error::NotRestricted(self.literal(y)));
        }
        if !self.is_in_aws(y, a) {
            return Err(Error::NotInAWS(self.literal(y)));
        }
        let z = a.longest.mul(y);
        let mut report = self.conv_fiber_bound(&z, mu, &self.zero())?;
        report.strict = self.is_restricted(&z) && !mu.is_zero();
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn gl2() -> RootDatum {
        RootDatum::preset("GL2").unwrap()
    }

    #[test]
    fn orbit_dimensions() {
        let d = gl2();
        let y = d.parse_element("s1*t[0,1]").unwrap();
        assert_eq!(d.orbit_dim(&d.iwahori_label(Space::Gr, &y).unwrap()), 0);
        assert_eq!(d.orbit_dim(&d.spherical_label(&cw(&[0, 0])).unwrap()), 0);
        assert_eq!(d.orbit_dim(&d.spherical_label(&cw(&[1, 0])).unwrap()), 1);
        let a = d.make_finitary(&[0]).unwrap();
        assert_eq!(d.orbit_dim(&d.whittaker_label(Space::Gr, &a, &y).unwrap()), 1);
    }

    #[test]
    fn label_validation() {
        let d = gl2();
        assert!(matches!(d.spherical_label(&cw(&[0, 1])), Err(Error::NotDominant(_))));
        assert!(matches!(d.iwahori_label(Space::Gr, &d.from_simple(0)), Err(Error::NotInWS(_))));
        assert!(d.iwahori_label(Space::Fl, &d.from_simple(0)).is_ok());
    }

    #[test]
    fn closure_examples() {
        let d = gl2();
        let a = d.spherical_label(&cw(&[0, 0])).unwrap();
        let b = d.spherical_label(&cw(&[1, -1])).unwrap();
        assert!(d.closure_leq(&a, &a).unwrap());
        assert!(d.closure_leq(&a, &b).unwrap());
        assert!(!d.closure_leq(&b, &a).unwrap());
        let c = d.iwahori_label(Space::Gr, &d.identity()).unwrap();
        assert!(matches!(d.closure_leq(&a, &c), Err(Error::FlavorMismatch)));
        let f = d.iwahori_label(Space::Fl, &d.identity()).unwrap();
        assert!(matches!(d.closure_leq(&f, &c), Err(Error::FlavorMismatch)));
    }

    #[test]
    fn whittaker_gr_closure_matches_maxima() {
        let d = gl2();
        let a = d.make_finitary(&[0]).unwrap();
        let s = d.finite_parabolic();
        let ws: Vec<_> = d.box_elements(2).into_iter().filter(|w| d.is_in_ws(w)).collect();
        for w in &ws {
            for y in &ws {
                let lw = d.whittaker_label(Space::Gr, &a, w).unwrap();
                let ly = d.whittaker_label(Space::Gr, &a, y).unwrap();
                let expected = d.bruhat_leq(
                    &d.max_right_rep(&a.longest.mul(w), &s),
                    &d.max_right_rep(&a.longest.mul(y), &s),
                );
                assert_eq!(d.closure_leq(&lw, &ly).unwrap(), expected);
            }
        }
    }

    #[test]
    fn whittaker_support() {
        let d = gl2();
        let empty = d.make_finitary(&[]).unwrap();
        let a = d.make_finitary(&[0]).unwrap();
        for w in d.box_elements(2).into_iter().filter(|w| d.is_in_ws(w)) {
            assert!(d.whittaker_supports_local_system(&w, &empty).0);
        }
        let y = d.parse_element("s1*t[0,1]").unwrap();
        assert!(d.whittaker_supports_local_system(&y, &a).0);
        assert!(!d.whittaker_supports_local_system(&d.identity(), &a).0);
    }

    #[test]
    fn mv_examples() {
        let d = gl2();
        let rep = d.mv_intersection_s(&cw(&[1, 0]), &cw(&[0, 1])).unwrap();
        assert!(rep.nonempty_possible);
        assert_eq!(rep.dimension_or_bound, r(0));
        let rep = d.mv_intersection_s(&cw(&[1, 0]), &cw(&[1, 0])).unwrap();
        assert!(rep.nonempty_possible);
        assert_eq!(rep.dimension_or_bound, r(1));
        assert!(!d.mv_intersection_s(&cw(&[1, 0]), &cw(&[2, -1])).unwrap().nonempty_possible);

        assert_eq!(d.mv_intersection_t(&cw(&[0, 0]), &cw(&[0, 0])).unwrap().dimension_or_bound, r(0));
        assert_eq!(d.mv_intersection_t(&cw(&[1, 0]), &cw(&[0, 1])).unwrap().dimension_or_bound, r(1));
        assert_eq!(d.mv_intersection_t(&cw(&[1, -1]), &cw(&[1, -1])).unwrap().dimension_or_bound, r(0));
        assert!(matches!(d.mv_intersection_s(&cw(&[0, 1]), &cw(&[0, 0])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn semiinf_examples() {
        let d = gl2();
        let rep = d.iwahori_semiinf_bound(&d.identity(), &cw(&[0, 0])).unwrap();
        assert!(rep.nonempty_possible && !rep.strict);
        assert_eq!(rep.dimension_or_bound, r(0));
        let y = d.parse_element("s1*t[0,1]").unwrap();
        let rep = d.iwahori_semiinf_bound(&y, &cw(&[0, 1])).unwrap();
        assert_eq!((rep.dimension_or_bound.clone(), rep.strict), (r(0), false));
        let rep = d.iwahori_semiinf_bound(&y, &cw(&[1, 0])).unwrap();
        assert_eq!((rep.dimension_or_bound.clone(), rep.strict), (r(1), true));
        assert!(matches!(d.iwahori_semiinf_bound(&d.from_simple(0), &cw(&[0, 0])), Err(Error::NotInWS(_))));
    }

    #[test]
    fn fiber_examples() {
        let d = gl2();
        let rep = d.conv_fiber_bound(&d.identity(), &cw(&[0, 0]), &cw(&[0, 0])).unwrap();
        assert_eq!(rep.dimension_or_bound, r(0));
        assert!(!rep.strict && rep.nonempty_forced);
        let y = d.parse_element("s1*t[0,1]").unwrap();
        let rep = d.conv_fiber_bound(&y, &cw(&[1, 0]), &cw(&[1, 0])).unwrap();
        assert_eq!(rep.dimension_or_bound, r(1));
        assert!(rep.strict && !rep.nonempty_forced);
        let rep = d.conv_fiber_bound(&y, &cw(&[1, 0]), &cw(&[0, 1])).unwrap();
        assert_eq!(rep.dimension_or_bound, r(0));
        assert!(!rep.strict && rep.nonempty_forced && rep.nonempty_possible);
        assert!(matches!(d.conv_fiber_bound(&y, &cw(&[0, 1]), &cw(&[0, 0])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn whittaker_obstruction_examples() {
        let d = gl2();
        let y = d.parse_element("t[1,0]*s1").unwrap();
        let a = d.make_finitary(&[0]).unwrap();
        let rep = d.whittaker_serre_obstruction(&y, &a, &cw(&[0, -2])).unwrap();
        assert_eq!(rep.dimension_or_bound, r(1));
        assert!(!rep.strict);

        let empty = d.make_finitary(&[]).unwrap();
        assert!(d.whittaker_serre_obstruction(&y, &empty, &cw(&[1, 0])).unwrap().strict);
        let rep = d.whittaker_serre_obstruction(&y, &empty, &cw(&[0, 0])).unwrap();
        assert_eq!((rep.dimension_or_bound, rep.strict), (r(0), false));
        assert!(matches!(
            d.whittaker_serre_obstruction(&d.identity(), &a, &cw(&[0, 0])),
            Err(Error::NotInAWS(_))
        ));
    }

    #[test]
    fn reports_integral_when_possible() {
        let d = RootDatum::preset("GL3").unwrap();
        let pts = d.box_coweights(2);
        for lambda in pts.iter().filter(|l| d.is_dominant(l)) {
            for mu in &pts {
                for rep in [d.mv_intersection_s(lambda, mu).unwrap(), d.mv_intersection_t(lambda, mu).unwrap()] {
                    if rep.nonempty_possible {
                        assert!(rep.dimension_or_bound.is_integer());
                    }
                }
            }
        }
    }
}
