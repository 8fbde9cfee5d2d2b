//! Root data with connected center.
//!
//! The cocharacter lattice `Y` is `Z^rank`; the character lattice `X` is its
//! dual under the standard dot product, so roots are integer covectors and
//! coroots integer vectors. `rho` is never stored: only `2 rho` is kept, and
//! pairings with `rho` are returned as exact rationals.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::coxeter::{BruhatCache, SimpleReflection};
use crate::error::{Error, Result};
use crate::linalg::{dot, IntMatrix, Smith};
use crate::weyl_ext::FiniteWeylElement;

/// An element of the cocharacter lattice `Y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

/// An element of the character lattice `X` (a root, or `2 rho`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootFunctional(pub Vec<i64>);

impl Coweight {
    pub fn zero(rank: usize) -> Self {
        Coweight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Coweight {
        Coweight(self.0.iter().map(|a| k * a).collect())
    }

    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl RootFunctional {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

fn fmt_int_list(v: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_int_list(&self.0, f)
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RootFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_int_list(&self.0, f)
    }
}

impl fmt::Debug for RootFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `<alpha, lambda>`.
pub fn pairing(alpha: &RootFunctional, lambda: &Coweight) -> i64 {
    dot(&alpha.0, &lambda.0)
}

/// Input description of a root datum, also the on-disk JSON format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSpec {
    pub name: String,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<i64>>,
}

impl DatumSpec {
    /// Built-in data: `GL2`, `PGL2`, `GL3`, `PGL3`, and the invalid `SL2`
    /// (kept as a fixture for the connected-center check).
    pub fn preset(name: &str) -> Option<DatumSpec> {
        let spec = |name: &str, rank, roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>| DatumSpec {
            name: name.to_string(),
            rank,
            simple_roots: roots,
            simple_coroots: coroots,
            sigma: None,
        };
        let spec = match name.to_ascii_uppercase().as_str() {
            "GL2" => spec("GL2", 2, vec![vec![1, -1]], vec![vec![1, -1]]),
            "PGL2" => spec("PGL2", 1, vec![vec![1]], vec![vec![2]]),
            "GL3" => spec(
                "GL3",
                3,
                vec![vec![1, -1, 0], vec![0, 1, -1]],
                vec![vec![1, -1, 0], vec![0, 1, -1]],
            ),
            // Y is the coweight lattice, written in the basis of fundamental coweights.
            "PGL3" => spec(
                "PGL3",
                2,
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![2, -1], vec![-1, 2]],
            ),
            "SL2" => spec("SL2", 1, vec![vec![2]], vec![vec![1]]),
            _ => return None,
        };
        Some(spec)
    }

    pub const PRESETS: [&'static str; 4] = ["GL2", "PGL2", "GL3", "PGL3"];
}

/// A positive root together with its coroot and simple-root expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: RootFunctional,
    pub coroot: Coweight,
    /// Coefficients of the root in the basis of simple roots.
    pub coefficients: Vec<i64>,
    /// Coefficients of the coroot in the basis of simple coroots.
    pub coroot_coefficients: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.coefficients.iter().sum()
    }
}

const MAX_ROOTS: usize = 10_000;

/// Immutable root datum of a reductive group with connected center, together
/// with the derived data every other module needs.
pub struct RootDatum {
    name: String,
    rank: usize,
    simple_roots: Vec<RootFunctional>,
    simple_coroots: Vec<Coweight>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<PositiveRoot>,
    two_rho: RootFunctional,
    sigma: Coweight,
    components: Vec<Vec<usize>>,
    radical_basis: Vec<Coweight>,
    root_smith: Smith,
    coroot_smith: Smith,
    pub(crate) generators: Vec<SimpleReflection>,
    pub(crate) longest: FiniteWeylElement,
    pub(crate) finite_elements: OnceLock<Vec<FiniteWeylElement>>,
    pub(crate) bruhat_cache: BruhatCache,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("name", &self.name)
            .field("rank", &self.rank)
            .field("simple_roots", &self.simple_roots)
            .field("simple_coroots", &self.simple_coroots)
            .field("sigma", &self.sigma)
            .finish_non_exhaustive()
    }
}

impl RootDatum {
    pub fn preset(name: &str) -> Result<RootDatum> {
        let spec = DatumSpec::preset(name)
            .ok_or_else(|| Error::MalformedSpec(format!("unknown preset {name:?}")))?;
        RootDatum::build(&spec)
    }

    /// Accepts a preset name or a path to a JSON datum file.
    pub fn load(preset_or_path: &str) -> Result<RootDatum> {
        if let Some(spec) = DatumSpec::preset(preset_or_path) {
            return RootDatum::build(&spec);
        }
        let text = std::fs::read_to_string(preset_or_path)
            .map_err(|e| Error::Io(format!("{preset_or_path}: {e}")))?;
        let spec: DatumSpec = serde_json::from_str(&text)
            .map_err(|e| Error::MalformedSpec(format!("{preset_or_path}: {e}")))?;
        RootDatum::build(&spec)
    }

    pub fn build(spec: &DatumSpec) -> Result<RootDatum> {
        let rank = spec.rank;
        if rank == 0 {
            return Err(Error::MalformedSpec("rank must be positive".into()));
        }
        let n = spec.simple_roots.len();
        if spec.simple_coroots.len() != n {
            return Err(Error::MalformedSpec(format!(
                "{} simple roots but {} simple coroots",
                n,
                spec.simple_coroots.len()
            )));
        }
        if spec.simple_roots.iter().chain(&spec.simple_coroots).any(|v| v.len() != rank) {
            return Err(Error::MalformedSpec(format!("every root and coroot must have {rank} entries")));
        }
        let simple_roots: Vec<RootFunctional> =
            spec.simple_roots.iter().cloned().map(RootFunctional).collect();
        let simple_coroots: Vec<Coweight> =
            spec.simple_coroots.iter().cloned().map(Coweight).collect();

        // a[i][j] = <alpha_i, alpha_j^vee>
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| pairing(&simple_roots[i], &simple_coroots[j])).collect())
            .collect();
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::MalformedSpec(format!("<alpha_{0}, alpha_{0}^vee> != 2", i + 1)));
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::MalformedSpec("not a generalized Cartan matrix".into()));
                }
            }
        }

        let positive_roots = generate_positive_roots(&simple_roots, &simple_coroots, &cartan)?;

        let mut two_rho = vec![0; rank];
        for beta in &positive_roots {
            for (t, x) in two_rho.iter_mut().zip(&beta.root.0) {
                *t += x;
            }
        }

        let root_matrix = IntMatrix::from_rows(&spec.simple_roots, rank);
        let root_smith = Smith::new(&root_matrix);
        if root_smith.elementary_divisors().iter().any(|&d| d != 1) {
            return Err(Error::CenterNotConnected(root_smith.elementary_divisors().to_vec()));
        }
        let coroot_smith = Smith::new(&IntMatrix::from_cols(&spec.simple_coroots, rank));

        let sigma = match &spec.sigma {
            Some(s) => {
                let s = Coweight(s.clone());
                if s.0.len() != rank || simple_roots.iter().any(|a| pairing(a, &s) != 1) {
                    return Err(Error::MalformedSpec(format!(
                        "sigma {s} does not pair to 1 with every simple root"
                    )));
                }
                s
            }
            None => Coweight(root_smith.solve(&vec![1; n]).ok_or(Error::SigmaUnsolvable)?),
        };

        let radical_basis = root_smith.kernel_basis().into_iter().map(Coweight).collect();
        let components = dynkin_components(&cartan);

        let mut datum = RootDatum {
            name: spec.name.clone(),
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            positive_roots,
            two_rho: RootFunctional(two_rho),
            sigma,
            components,
            radical_basis,
            root_smith,
            coroot_smith,
            generators: Vec::new(),
            longest: FiniteWeylElement::identity(rank),
            finite_elements: OnceLock::new(),
            bruhat_cache: BruhatCache::default(),
        };
        datum.longest = datum.compute_longest();
        datum.generators = crate::coxeter::build_generators(&datum);
        Ok(datum)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots (the semisimple rank).
    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[RootFunctional] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Coweight] {
        &self.simple_coroots
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots ordered by height, then by simple-root expansion.
    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn two_rho(&self) -> &RootFunctional {
        &self.two_rho
    }

    pub fn sigma(&self) -> &Coweight {
        &self.sigma
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Basis of `Y_0 = {y : <alpha, y> = 0 for all roots}`.
    pub fn radical_basis(&self) -> &[Coweight] {
        &self.radical_basis
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical_basis.is_empty()
    }

    pub fn zero(&self) -> Coweight {
        Coweight::zero(self.rank)
    }

    pub fn pairing(&self, alpha: &RootFunctional, lambda: &Coweight) -> i64 {
        pairing(alpha, lambda)
    }

    /// `<rho, lambda>` as an exact rational.
    pub fn rho_pairing(&self, lambda: &Coweight) -> BigRational {
        BigRational::new(BigInt::from(pairing(&self.two_rho, lambda)), BigInt::from(2))
    }

    /// Pairings `<alpha_i, lambda>` with the simple roots.
    pub fn simple_pairings(&self, lambda: &Coweight) -> Vec<i64> {
        self.simple_roots.iter().map(|a| pairing(a, lambda)).collect()
    }

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| pairing(a, lambda) >= 0)
    }

    pub fn is_strictly_dominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| pairing(a, lambda) > 0)
    }

    pub fn is_antidominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| pairing(a, lambda) <= 0)
    }

    /// `lambda` pairs to zero with every root.
    pub fn is_radical(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| pairing(a, lambda) == 0)
    }

    /// Simple reflection `s_i` acting on a coweight.
    pub fn reflect(&self, i: usize, lambda: &Coweight) -> Coweight {
        let k = pairing(&self.simple_roots[i], lambda);
        lambda.sub(&self.simple_coroots[i].scale(k))
    }

    /// The dominant `W`-translate of `lambda` and the shortest `v` with
    /// `v(lambda) = dom(lambda)`.
    pub fn dominant_part(&self, lambda: &Coweight) -> (Coweight, FiniteWeylElement) {
        let mut mu = lambda.clone();
        let mut v = FiniteWeylElement::identity(self.rank);
        while let Some(i) = (0..self.num_simple()).find(|&i| pairing(&self.simple_roots[i], &mu) < 0) {
            mu = self.reflect(i, &mu);
            v = self.finite_reflection(i).mul(&v);
        }
        (mu, v)
    }

    pub fn dom(&self, lambda: &Coweight) -> Coweight {
        self.dominant_part(lambda).0
    }

    /// Coefficients of `mu` in the basis of simple coroots, if `mu` lies in
    /// the coroot lattice. Unique because simple coroots are independent.
    pub fn coroot_coefficients(&self, mu: &Coweight) -> Option<Vec<i64>> {
        if self.num_simple() == 0 {
            return mu.is_zero().then(Vec::new);
        }
        self.coroot_smith.solve(&mu.0)
    }

    pub fn in_coroot_lattice(&self, mu: &Coweight) -> bool {
        self.coroot_coefficients(mu).is_some()
    }

    /// `mu` is a non-negative integer combination of simple coroots.
    pub fn is_sum_of_positive_coroots(&self, mu: &Coweight) -> bool {
        self.coroot_coefficients(mu).is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// Some `mu` in `Y` with `<alpha_i, mu> = targets[i]`; the particular
    /// Smith-normal-form solution, so the result is deterministic.
    pub fn solve_pairings(&self, targets: &[i64]) -> Option<Coweight> {
        assert_eq!(targets.len(), self.num_simple());
        if self.num_simple() == 0 {
            return Some(self.zero());
        }
        self.root_smith.solve(targets).map(Coweight)
    }

    /// Index (into `positive_roots`) of the highest root of a Dynkin component.
    pub fn highest_root(&self, component: usize) -> usize {
        let comp = &self.components[component];
        let (idx, _) = self
            .positive_roots
            .iter()
            .enumerate()
            .filter(|(_, b)| b.coefficients.iter().enumerate().all(|(i, &c)| c == 0 || comp.contains(&i)))
            .max_by_key(|(_, b)| b.height())
            .expect("component has roots");
        idx
    }

    /// Largest coroot height over all components (height of highest coroots).
    pub fn max_coroot_height(&self) -> i64 {
        (0..self.components.len())
            .map(|c| self.positive_roots[self.highest_root(c)].coroot_coefficients.iter().sum())
            .max()
            .unwrap_or(0)
    }
}

fn generate_positive_roots(
    simple_roots: &[RootFunctional],
    simple_coroots: &[Coweight],
    cartan: &[Vec<i64>],
) -> Result<Vec<PositiveRoot>> {
    let n = simple_roots.len();
    let rank = simple_coroots.first().map_or(0, |c| c.0.len());
    // Root coefficients -> coroot coefficients.
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone(), e.clone());
        queue.push_back(e);
    }
    while let Some(c) = queue.pop_front() {
        let d = seen[&c].clone();
        for i in 0..n {
            let k: i64 = (0..n).map(|j| c[j] * cartan[j][i]).sum();
            let kd: i64 = (0..n).map(|j| d[j] * cartan[i][j]).sum();
            let mut c2 = c.clone();
            c2[i] -= k;
            let mut d2 = d.clone();
            d2[i] -= kd;
            if !seen.contains_key(&c2) {
                if seen.len() >= MAX_ROOTS {
                    return Err(Error::MalformedSpec("Cartan matrix is not of finite type".into()));
                }
                seen.insert(c2.clone(), d2);
                queue.push_back(c2);
            }
        }
    }
    let mut positive = Vec::new();
    for (c, d) in seen {
        let pos = c.iter().all(|&x| x >= 0);
        let neg = c.iter().all(|&x| x <= 0);
        if !pos && !neg {
            return Err(Error::MalformedSpec("Cartan matrix is not of finite type".into()));
        }
        if !pos {
            continue;
        }
        let mut root = vec![0; rank];
        let mut coroot = vec![0; rank];
        for j in 0..n {
            for t in 0..rank {
                root[t] += c[j] * simple_roots[j].0[t];
                coroot[t] += d[j] * simple_coroots[j].0[t];
            }
        }
        positive.push(PositiveRoot {
            root: RootFunctional(root),
            coroot: Coweight(coroot),
            coefficients: c,
            coroot_coefficients: d,
        });
    }
    positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coefficients.cmp(&a.coefficients)));
    Ok(positive)
}

fn dynkin_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut label = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let c = components.len();
        let mut comp = vec![start];
        label[start] = c;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if cartan[i][j] != 0 && label[j] == usize::MAX {
                    label[j] = c;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    #[test]
    fn gl2_sigma_is_one_zero() {
        let d = RootDatum::preset("GL2").unwrap();
        assert_eq!(d.sigma(), &cw(&[1, 0]));
        assert_eq!(d.radical_basis().len(), 1);
        assert!(d.is_radical(&d.radical_basis()[0]));
    }

    #[test]
    fn sl2_has_disconnected_center() {
        let err = RootDatum::preset("SL2").unwrap_err();
        assert_eq!(err, Error::CenterNotConnected(vec![2]));
    }

    #[test]
    fn pgl2_sigma_and_empty_radical() {
        let d = RootDatum::preset("PGL2").unwrap();
        assert_eq!(d.sigma(), &cw(&[1]));
        assert!(d.radical_basis().is_empty());
        assert!(d.is_semisimple());
    }

    #[test]
    fn all_presets_build() {
        for name in DatumSpec::PRESETS {
            let d = RootDatum::preset(name).unwrap();
            for a in d.simple_roots() {
                assert_eq!(pairing(a, d.sigma()), 1);
            }
        }
    }

    #[test]
    fn gl3_positive_roots() {
        let d = RootDatum::preset("GL3").unwrap();
        assert_eq!(d.positive_roots().len(), 3);
        assert_eq!(d.two_rho(), &RootFunctional(vec![2, 0, -2]));
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.max_coroot_height(), 2);
    }

    #[test]
    fn gl2_pairings() {
        let d = RootDatum::preset("GL2").unwrap();
        let alpha = &d.simple_roots()[0];
        assert_eq!(pairing(alpha, &cw(&[0, 1])), -1);
        assert_eq!(pairing(alpha, &cw(&[0, 0])), 0);
        assert_eq!(pairing(d.two_rho(), &cw(&[0, -2])), 2);
        assert_eq!(d.rho_pairing(&cw(&[0, -2])), BigRational::from_integer(1.into()));
    }

    #[test]
    fn gl2_dominance() {
        let d = RootDatum::preset("GL2").unwrap();
        assert!(d.is_dominant(&cw(&[1, 0])) && d.is_strictly_dominant(&cw(&[1, 0])));
        assert!(d.is_dominant(&cw(&[0, 0])) && !d.is_strictly_dominant(&cw(&[0, 0])));
        assert!(d.is_dominant(&cw(&[0, -2])));
        assert!(d.is_antidominant(&cw(&[0, 1])));
    }

    #[test]
    fn gl2_dominant_part() {
        let d = RootDatum::preset("GL2").unwrap();
        let s = d.finite_reflection(0);
        let e = FiniteWeylElement::identity(2);
        assert_eq!(d.dominant_part(&cw(&[0, 1])), (cw(&[1, 0]), s.clone()));
        assert_eq!(d.dominant_part(&cw(&[1, 0])), (cw(&[1, 0]), e));
        assert_eq!(d.dominant_part(&cw(&[-1, 0])), (cw(&[0, -1]), s));
    }

    #[test]
    fn gl2_positive_coroot_sums() {
        let d = RootDatum::preset("GL2").unwrap();
        assert!(d.is_sum_of_positive_coroots(&cw(&[1, -1])));
        assert!(d.is_sum_of_positive_coroots(&cw(&[0, 0])));
        assert!(!d.is_sum_of_positive_coroots(&cw(&[-1, 1])));
        assert!(!d.is_sum_of_positive_coroots(&cw(&[1, 0])));
    }

    #[test]
    fn malformed_specs_are_rejected() {
        let mut spec = DatumSpec::preset("GL2").unwrap();
        spec.simple_coroots = vec![vec![1, 1]];
        assert!(matches!(RootDatum::build(&spec), Err(Error::MalformedSpec(_))));
        let mut spec = DatumSpec::preset("GL2").unwrap();
        spec.sigma = Some(vec![0, 0]);
        assert!(matches!(RootDatum::build(&spec), Err(Error::MalformedSpec(_))));
        let mut spec = DatumSpec::preset("GL2").unwrap();
        spec.sigma = Some(vec![2, 1]);
        assert_eq!(RootDatum::build(&spec).unwrap().sigma(), &cw(&[2, 1]));
    }

    #[test]
    fn datum_file_round_trips_through_json() {
        let spec = DatumSpec::preset("PGL3").unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: DatumSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }
}
