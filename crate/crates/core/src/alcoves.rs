//! Exact alcove geometry in `V = Y ⊗ ℚ`.
//!
//! An alcove is never materialized: every containment the crate needs
//! (the dominant chamber `𝒞`, the boxes `Π_μ`) is a union of open alcoves, so
//! testing a single interior point of an alcove decides it.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::root_datum::{Coweight, RootDatum, RootFunctional};
use crate::weyl_ext::ExtAffineElement;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalPoint {
    pub coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn from_coweight(lambda: &Coweight) -> Self {
        Self { coords: lambda.0.iter().map(|&x| BigRational::from_integer(x.into())).collect() }
    }

    pub fn add_coweight(&self, lambda: &Coweight) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&lambda.0)
                .map(|(x, &l)| x + BigRational::from_integer(l.into()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { coords: self.coords.iter().map(|x| x * k).collect() }
    }

    pub fn pair(&self, alpha: &RootFunctional) -> BigRational {
        self.coords
            .iter()
            .zip(&alpha.0)
            .fold(BigRational::zero(), |acc, (x, &a)| acc + x * BigRational::from_integer(a.into()))
    }
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Target pairings `⟨α_i, μ⟩` of the box `Π_μ` containing `w⁻¹(𝔄_fund)`,
/// plus one coweight `μ` realizing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiBox {
    pub pairings: Vec<i64>,
    pub mu: Coweight,
}

impl RootDatum {
    /// Interior point `ς / (⟨θ, ς⟩ + 1)` of the fundamental alcove, where
    /// `θ` maximizes `⟨·, ς⟩` over positive roots.
    pub fn fundamental_point(&self) -> RationalPoint {
        let top = self
            .positive_roots()
            .iter()
            .map(|b| self.pairing(&b.root, self.sigma()))
            .max()
            .unwrap_or(0);
        RationalPoint::from_coweight(self.sigma()).scale(&BigRational::new(BigInt::one(), BigInt::from(top + 1)))
    }

    pub fn in_fundamental_alcove(&self, p: &RationalPoint) -> bool {
        let one = BigRational::one();
        self.positive_roots().iter().all(|b| {
            let x = p.pair(&b.root);
            x.is_positive() && x < one
        })
    }

    /// `⟨β, p⟩ > 0` for every positive root.
    pub fn in_dominant_chamber(&self, p: &RationalPoint) -> bool {
        self.positive_roots().iter().all(|b| p.pair(&b.root).is_positive())
    }

    /// `⟨α, μ⟩ − 1 < ⟨α, p⟩ < ⟨α, μ⟩` for every simple root.
    pub fn in_pi_box(&self, p: &RationalPoint, mu: &Coweight) -> bool {
        self.simple_roots().iter().all(|a| {
            let x = p.pair(a);
            let top = BigRational::from_integer(self.pairing(a, mu).into());
            x < top && x > top - BigRational::one()
        })
    }

    /// `w⁻¹(𝔄_fund) ⊂ 𝒞`, decided on the interior point.
    pub fn ws_alcove_test(&self, w: &ExtAffineElement) -> bool {
        self.in_dominant_chamber(&w.inv().act_on_point(&self.fundamental_point()))
    }

    /// Integer criterion for restricted elements: writing `w = v·t_λ`, every
    /// simple `α` has `⟨α, λ⟩ = 0` if `v(α) > 0` and `−1` otherwise.
    pub fn is_restricted(&self, w: &ExtAffineElement) -> bool {
        (0..self.num_simple()).all(|i| {
            let k = self.pairing(&self.simple_roots()[i], &w.trans);
            if self.maps_simple_to_positive(&w.finite, i) {
                k == 0
            } else {
                k == -1
            }
        })
    }

    /// Alcove criterion for restricted elements: `w⁻¹(𝔄_fund) ⊂ Π_ς`.
    pub fn is_restricted_by_alcove(&self, w: &ExtAffineElement) -> bool {
        self.in_pi_box(&w.inv().act_on_point(&self.fundamental_point()), self.sigma())
    }

    pub fn pi_box_of(&self, w: &ExtAffineElement) -> PiBox {
        let pairings: Vec<i64> = (0..self.num_simple())
            .map(|i| {
                let k = self.pairing(&self.simple_roots()[i], &w.trans);
                if self.maps_simple_to_positive(&w.finite, i) {
                    1 - k
                } else {
                    -k
                }
            })
            .collect();
        let mu = self
            .solve_pairings(&pairings)
            .expect("connected center: every pairing vector is realized in Y");
        PiBox { pairings, mu }
    }

    /// Number of hyperplanes `H_{β,n}` strictly separating `𝔄_fund` from
    /// `a(𝔄_fund)`, counted on interior points.
    pub fn separating_hyperplanes(&self, a: &ExtAffineElement) -> u64 {
        let p = self.fundamental_point();
        let q = a.act_on_point(&p);
        self.positive_roots()
            .iter()
            .map(|b| {
                let x = p.pair(&b.root).floor().to_integer();
                let y = q.pair(&b.root).floor().to_integer();
                let diff: BigInt = (x - y).abs();
                u64::try_from(diff).expect("small")
            })
            .sum()
    }
}

/// Whether a rational is an integer.
pub fn is_integral(x: &BigRational) -> bool {
    x.is_integer()
}
