//! Exhaustive verification sweeps.
//!
//! Every lemma id names a family of identities checked over all elements
//! `v·t_λ` with `v ∈ W` and `‖λ‖∞ ≤ box` (and all finitary `A` when the
//! identity involves one). Checks use oracles that avoid the code path under
//! test where one exists: alcove geometry for lengths, Cayley-graph distances
//! for reduced words, subword enumeration for the Bruhat order, brute-force
//! coset scans for minimal representatives.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cosets::FinitarySubset;
use crate::error::{Error, Result};
use crate::orbit_geometry::Space;
use crate::root_datum::{Coweight, RootDatum};
use crate::weyl_ext::ExtAffineElement;

pub const MAX_BOX: i64 = 4;

pub const LEMMAS: [&str; 17] = [
    "length-oracle",
    "bruhat-oracle",
    "lengths-add",
    "min-length",
    "minimal-mult",
    "douglass",
    "formula-minLR",
    "double-min-5way",
    "min-LR",
    "ws-alcove",
    "res-elements",
    "length-res-dom",
    "double-min-antidom",
    "ws-wres-coverage",
    "spherical-order",
    "pi-fibration",
    "gl2-paper",
];

const LENGTHS_ADD_SAMPLES: usize = 10_000;
const LENGTHS_ADD_SEED: u64 = 0x5eed_2024;

/// Box used when none is given: 3 for rank-one semisimple part, else 2.
pub fn default_box(datum: &RootDatum) -> i64 {
    if datum.num_simple() <= 1 {
        3
    } else {
        2
    }
}

#[derive(Clone, Debug)]
pub enum Parabolics {
    All,
    List(Vec<FinitarySubset>),
}

#[derive(Clone, Debug)]
pub struct VerificationJob<'a> {
    pub lemma: String,
    pub datum: &'a RootDatum,
    pub box_size: i64,
    pub parabolics: Parabolics,
    pub jobs: usize,
}

impl<'a> VerificationJob<'a> {
    pub fn new(lemma: &str, datum: &'a RootDatum) -> Self {
        Self {
            lemma: lemma.to_string(),
            datum,
            box_size: default_box(datum),
            parabolics: Parabolics::All,
            jobs: 1,
        }
    }

    pub fn with_box(mut self, box_size: i64) -> Self {
        self.box_size = box_size;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_parabolics(mut self, parabolics: Parabolics) -> Self {
        self.parabolics = parabolics;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub lemma: String,
    pub datum: String,
    #[serde(rename = "box")]
    pub box_size: i64,
    pub elements_checked: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    /// Wall-clock time; excluded from both renderings.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "lemma: {}\ndatum: {}\nbox: {}\nelements_checked: {}\nfailures: {}\nstatus: {}\n",
            self.lemma,
            self.datum,
            self.box_size,
            self.elements_checked,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("failure: {f}\n"));
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Default)]
struct Outcome {
    checked: u64,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn merge(mut self, other: Outcome) -> Outcome {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
        self
    }
}

/// Runs `check` on every item in parallel. Results are collected in item
/// order, so the outcome does not depend on the worker count.
fn sweep<T: Sync>(items: &[T], check: impl Fn(&T) -> Vec<String> + Sync + Send) -> Outcome {
    let failures = items.par_iter().map(check).collect::<Vec<_>>().into_iter().flatten().collect();
    Outcome { checked: items.len() as u64, failures, notes: Vec::new() }
}

struct Ctx<'a> {
    d: &'a RootDatum,
    bx: i64,
    parabolics: Vec<FinitarySubset>,
    members: Vec<HashSet<ExtAffineElement>>,
}

impl Ctx<'_> {
    fn lit(&self, a: &ExtAffineElement) -> String {
        self.d.literal(a)
    }

    fn label(&self, k: usize) -> String {
        format!("A={{{}}}", self.parabolics[k].label(self.d).trim_matches(|c| c == '{' || c == '}'))
    }

    fn elems(&self) -> Vec<ExtAffineElement> {
        self.d.box_elements(self.bx)
    }

    fn with_parabolics<T: Clone>(&self, items: &[T]) -> Vec<(usize, T)> {
        (0..self.parabolics.len()).flat_map(|k| items.iter().map(move |x| (k, x.clone()))).collect()
    }

    /// Minimal in `W_A·w`, decided from left descents inside `A`.
    fn left_min_by_descents(&self, w: &ExtAffineElement, a: &FinitarySubset) -> bool {
        let l = self.d.length(w);
        a.generators.iter().all(|&g| self.d.length(&self.d.generator(g).mul(w)) > l)
    }

    fn right_min_by_descents(&self, w: &ExtAffineElement, a: &FinitarySubset) -> bool {
        let l = self.d.length(w);
        a.generators.iter().all(|&g| self.d.length(&w.mul(self.d.generator(g))) > l)
    }

    fn left_min_brute(&self, w: &ExtAffineElement, a: &FinitarySubset) -> bool {
        let l = self.d.length(w);
        a.elements.iter().all(|x| self.d.length(&x.mul(w)) >= l)
    }

    fn right_min_brute(&self, w: &ExtAffineElement, a: &FinitarySubset) -> bool {
        let l = self.d.length(w);
        a.elements.iter().all(|x| self.d.length(&w.mul(x)) >= l)
    }
}

pub fn run_verification(job: &VerificationJob) -> Result<VerificationReport> {
    if job.box_size > MAX_BOX {
        return Err(Error::BoxExceeded { requested: job.box_size, max: MAX_BOX });
    }
    if job.box_size < 1 {
        return Err(Error::Parse(format!("box must be positive, got {}", job.box_size)));
    }
    let lemma = LEMMAS
        .iter()
        .find(|l| l.eq_ignore_ascii_case(&job.lemma))
        .ok_or_else(|| Error::UnknownLemma(job.lemma.clone()))?;
    let parabolics = match &job.parabolics {
        Parabolics::All => job.datum.all_finitary(),
        Parabolics::List(list) => list.clone(),
    };
    let members = parabolics.iter().map(|a| a.elements.iter().cloned().collect()).collect();
    let ctx = Ctx { d: job.datum, bx: job.box_size, parabolics, members };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let start = Instant::now();
    let outcome = pool.install(|| match *lemma {
        "length-oracle" => length_oracle(&ctx),
        "bruhat-oracle" => bruhat_oracle(&ctx),
        "lengths-add" => lengths_add(&ctx),
        "min-length" => min_length(&ctx),
        "minimal-mult" => minimal_mult(&ctx),
        "douglass" => douglass(&ctx),
        "formula-minLR" => formula_min_lr(&ctx),
        "double-min-5way" => double_min_5way(&ctx),
        "min-LR" => min_lr(&ctx),
        "ws-alcove" => ws_alcove(&ctx),
        "res-elements" => res_elements(&ctx),
        "length-res-dom" => length_res_dom(&ctx),
        "double-min-antidom" => double_min_antidom(&ctx),
        "ws-wres-coverage" => ws_wres_coverage(&ctx),
        "spherical-order" => spherical_order(&ctx),
        "pi-fibration" => pi_fibration(&ctx),
        "gl2-paper" => gl2_golden(&ctx),
        _ => unreachable!("lemma ids are checked above"),
    });
    let mut failures = outcome.failures;
    failures.sort();
    failures.dedup();
    Ok(VerificationReport {
        lemma: lemma.to_string(),
        datum: job.datum.name().to_string(),
        box_size: job.box_size,
        elements_checked: outcome.checked,
        failures,
        notes: outcome.notes,
        elapsed: start.elapsed(),
    })
}

/// Distances from `e` in the Cayley graph of `(W_aff, S_aff)`, up to `radius`.
fn cayley_ball(d: &RootDatum, radius: u64) -> HashMap<ExtAffineElement, u64> {
    let mut dist = HashMap::from([(d.identity(), 0u64)]);
    let mut frontier = vec![d.identity()];
    for r in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for g in d.generators() {
                let y = x.mul(&g.element);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), r);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    dist
}

fn length_oracle(c: &Ctx) -> Outcome {
    let d = c.d;
    let elems = c.elems();
    let radius = elems.iter().map(|a| d.length(a)).max().unwrap_or(0);
    let dist = cayley_ball(d, radius);
    let omegas: Vec<ExtAffineElement> = elems
        .iter()
        .filter(|a| !a.is_identity() && d.separating_hyperplanes(a) == 0)
        .take(4)
        .cloned()
        .collect();
    sweep(&elems, |a| {
        let mut f = Vec::new();
        let l = d.length(a);
        let hyper = d.separating_hyperplanes(a);
        if hyper != l {
            f.push(format!("{}: formula length {l}, separating hyperplanes {hyper}", c.lit(a)));
        }
        let word = d.omega_decompose(a);
        if d.word_product(&word) != *a || d.separating_hyperplanes(&word.omega) != 0 {
            f.push(format!("{}: bad decomposition {}", c.lit(a), d.word_string(&word.letters)));
        }
        let rest = word.omega.inv().mul(a);
        match dist.get(&rest) {
            Some(&k) if k == l && word.letters.len() as u64 == k => {}
            other => f.push(format!("{}: formula length {l}, reduced word length {other:?}", c.lit(a))),
        }
        if d.length(&a.inv()) != l {
            f.push(format!("{}: length of inverse differs", c.lit(a)));
        }
        for w in &omegas {
            if d.length(&w.mul(a)) != l || d.length(&a.mul(w)) != l {
                f.push(format!("{}: length changes under {}", c.lit(a), c.lit(w)));
            }
        }
        f
    })
}

/// All products of subwords of `letters`.
fn subword_products(d: &RootDatum, letters: &[usize]) -> HashSet<ExtAffineElement> {
    let mut out = HashSet::from([d.identity()]);
    for &i in letters {
        let g = d.generator(i);
        let extended: Vec<_> = out.iter().map(|x| x.mul(g)).collect();
        out.extend(extended);
    }
    out
}

fn bruhat_oracle(c: &Ctx) -> Outcome {
    let d = c.d;
    let max_len = 2 * c.bx as u64;
    let elems = d.affine_elements_up_to(max_len);
    let n = elems.len();
    let below: Vec<HashSet<ExtAffineElement>> =
        elems.par_iter().map(|w| subword_products(d, &d.omega_decompose(w).letters)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let rows: Vec<bool> = pairs.par_iter().map(|&(i, j)| d.bruhat_leq(&elems[i], &elems[j])).collect();
    let leq = |i: usize, j: usize| rows[i * n + j];
    let mut out = sweep(&pairs, |&(i, j)| {
        if leq(i, j) != below[j].contains(&elems[i]) {
            vec![format!("{} <= {}: recursion {}, subwords {}", c.lit(&elems[i]), c.lit(&elems[j]), leq(i, j), !leq(i, j))]
        } else {
            Vec::new()
        }
    });

    // Partial-order axioms.
    let idx: Vec<usize> = (0..n).collect();
    let axioms = sweep(&idx, |&i| {
        let mut f = Vec::new();
        if !leq(i, i) {
            f.push(format!("{} not <= itself", c.lit(&elems[i])));
        }
        for j in 0..n {
            if i != j && leq(i, j) && leq(j, i) {
                f.push(format!("{} and {} mutually <=", c.lit(&elems[i]), c.lit(&elems[j])));
            }
            if !leq(i, j) {
                continue;
            }
            for k in 0..n {
                if leq(j, k) && !leq(i, k) {
                    f.push(format!(
                        "transitivity fails at {} <= {} <= {}",
                        c.lit(&elems[i]),
                        c.lit(&elems[j]),
                        c.lit(&elems[k])
                    ));
                }
            }
        }
        f
    });
    out.failures.extend(axioms.failures);

    // Extension over Ω.
    let omegas: Vec<ExtAffineElement> =
        d.box_elements(1).into_iter().filter(|a| !a.is_identity() && d.length(a) == 0).take(3).collect();
    let ext = sweep(&pairs, |&(i, j)| {
        let (y, w) = (&elems[i], &elems[j]);
        let mut f = Vec::new();
        for om in &omegas {
            if d.bruhat_leq(&om.mul(y), &om.mul(w)) != leq(i, j) || d.bruhat_leq(&y.mul(om), &w.mul(om)) != leq(i, j) {
                f.push(format!("{} <= {} changes under {}", c.lit(y), c.lit(w), c.lit(om)));
            }
            if !d.is_in_affine_subgroup(om) && d.bruhat_leq(&om.mul(y), w) {
                f.push(format!("{} <= {} across Ω-components", c.lit(&om.mul(y)), c.lit(w)));
            }
        }
        f
    });
    out.failures.extend(ext.failures);
    out.notes.push(format!("{n} elements of W_aff with length <= {max_len}"));
    out
}

fn lengths_add(c: &Ctx) -> Outcome {
    let d = c.d;
    let elems = c.elems();
    let n = elems.len();
    let mut rng = ChaCha8Rng::seed_from_u64(LENGTHS_ADD_SEED);
    let mut triples = Vec::with_capacity(LENGTHS_ADD_SAMPLES);
    let max_attempts = 500 * LENGTHS_ADD_SAMPLES;
    let mut attempts = 0;
    while triples.len() < LENGTHS_ADD_SAMPLES && attempts < max_attempts {
        attempts += 1;
        let x = &elems[rng.gen_range(0..n)];
        let w = &elems[rng.gen_range(0..n)];
        // Half the samples take y below w, so both outcomes of y ≤ w occur.
        let y = if rng.gen_bool(0.5) {
            let word = d.omega_decompose(w);
            word.letters
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .fold(word.omega.clone(), |acc, &i| acc.mul(d.generator(i)))
        } else {
            elems[rng.gen_range(0..n)].clone()
        };
        let lx = d.length(x);
        if d.length(&x.mul(&y)) == lx + d.length(&y) && d.length(&x.mul(w)) == lx + d.length(w) {
            triples.push((x.clone(), y, w.clone()));
        }
    }
    let mut out = sweep(&triples, |(x, y, w)| {
        let before = d.bruhat_leq(y, w);
        let after = d.bruhat_leq(&x.mul(y), &x.mul(w));
        if before != after {
            vec![format!("x={} y={} w={}: y<=w is {before}, xy<=xw is {after}", c.lit(x), c.lit(y), c.lit(w))]
        } else {
            Vec::new()
        }
    });
    let related = triples.iter().filter(|(_, y, w)| d.bruhat_leq(y, w)).count();
    out.notes.push(format!("{} length-additive triples sampled, {related} with y <= w", triples.len()));
    if triples.len() < LENGTHS_ADD_SAMPLES {
        out.notes.push(format!("sampling stopped after {attempts} attempts"));
    }
    out
}

fn min_length(c: &Ctx) -> Outcome {
    let d = c.d;
    let items = c.with_parabolics(&c.elems());
    sweep(&items, |(k, w)| {
        let a = &c.parabolics[*k];
        let mut f = Vec::new();
        let tag = format!("{} {}", c.lit(w), c.label(*k));
        let left = [d.is_minimal_in_left_coset(w, a), c.left_min_by_descents(w, a), c.left_min_brute(w, a)];
        if left.iter().any(|&b| b != left[0]) {
            f.push(format!("{tag}: left minimality (identity, descents, scan) = {left:?}"));
        }
        let right = [d.is_minimal_in_right_coset(w, a), c.right_min_by_descents(w, a), c.right_min_brute(w, a)];
        if right.iter().any(|&b| b != right[0]) {
            f.push(format!("{tag}: right minimality (identity, descents, scan) = {right:?}"));
        }
        let l = d.length(w);
        if left[2] && a.elements.iter().any(|x| d.length(&x.mul(w)) != d.length(x) + l) {
            f.push(format!("{tag}: lengths do not add on W_A·w"));
        }
        if right[2] && a.elements.iter().any(|x| d.length(&w.mul(x)) != d.length(x) + l) {
            f.push(format!("{tag}: lengths do not add on w·W_A"));
        }
        let la = d.length(&a.longest);
        for (rep, is_min, coset_elem) in [
            (d.min_left_rep(w, a), true, true),
            (d.max_left_rep(w, a), false, true),
            (d.min_right_rep(w, a), true, false),
            (d.max_right_rep(w, a), false, false),
        ] {
            let quotient = if coset_elem { rep.mul(&w.inv()) } else { w.inv().mul(&rep) };
            if !c.members[*k].contains(&quotient) {
                f.push(format!("{tag}: representative {} outside the coset", c.lit(&rep)));
                continue;
            }
            let lens: Vec<u64> = a
                .elements
                .iter()
                .map(|x| d.length(&if coset_elem { x.mul(w) } else { w.mul(x) }))
                .collect();
            let target = if is_min { *lens.iter().min().unwrap() } else { *lens.iter().max().unwrap() };
            let extreme_count = lens.iter().filter(|&&x| x == target).count();
            if d.length(&rep) != target || extreme_count != 1 {
                f.push(format!("{tag}: representative {} is not the unique extreme", c.lit(&rep)));
            }
            if !is_min && lens.iter().min().unwrap() + la != target {
                f.push(format!("{tag}: max and min differ by {} != ℓ(w_A)", target - lens.iter().min().unwrap()));
            }
        }
        f
    })
}

fn minimal_mult(c: &Ctx) -> Outcome {
    let d = c.d;
    let items: Vec<(usize, ExtAffineElement)> = c
        .with_parabolics(&c.elems())
        .into_iter()
        .filter(|(k, w)| c.right_min_brute(w, &c.parabolics[*k]))
        .collect();
    sweep(&items, |(k, w)| {
        let a = &c.parabolics[*k];
        let mut f = Vec::new();
        let lw = d.length(w);
        for (g, s) in d.generators().iter().enumerate() {
            let sw = s.element.mul(w);
            let minimal = c.right_min_brute(&sw, a);
            if !minimal && !a.generators.iter().any(|&r| sw == w.mul(d.generator(r))) {
                f.push(format!("{} {} s={}: sw not minimal and not w·r", c.lit(w), c.label(*k), d.generators()[g].kind));
            }
            if d.length(&sw) < lw && !minimal {
                f.push(format!("{} {} s={}: sw < w but sw not minimal", c.lit(w), c.label(*k), d.generators()[g].kind));
            }
        }
        f
    })
}

fn omega_keys(d: &RootDatum, elems: &[ExtAffineElement]) -> Vec<ExtAffineElement> {
    elems.par_iter().map(|a| d.omega_decompose(a).omega).collect()
}

fn douglass(c: &Ctx) -> Outcome {
    let d = c.d;
    let elems = c.elems();
    let keys = omega_keys(d, &elems);
    let mut items = Vec::new();
    for (k, a) in c.parabolics.iter().enumerate() {
        for left in [false, true] {
            let mins: Vec<usize> = (0..elems.len())
                .filter(|&i| {
                    if left {
                        c.left_min_by_descents(&elems[i], a)
                    } else {
                        c.right_min_by_descents(&elems[i], a)
                    }
                })
                .collect();
            for &i in &mins {
                for &j in &mins {
                    if keys[i] == keys[j] {
                        items.push((k, left, i, j));
                    }
                }
            }
        }
    }
    sweep(&items, |&(k, left, i, j)| {
        let a = &c.parabolics[k];
        let (y, w) = (&elems[i], &elems[j]);
        let triple = if left {
            let third = a
                .elements
                .iter()
                .any(|u| a.elements.iter().any(|v| d.bruhat_leq(&u.mul(y), &v.mul(w))));
            Ok((d.bruhat_leq(y, w), d.bruhat_leq(&a.longest.mul(y), &a.longest.mul(w)), third))
        } else {
            d.douglass_equiv_check(y, w, a)
        };
        match triple {
            Ok((p, q, r)) if p == q && q == r => Vec::new(),
            other => vec![format!(
                "{} y={} w={} {}: {other:?}",
                if left { "left" } else { "right" },
                c.lit(y),
                c.lit(w),
                c.label(k)
            )],
        }
    })
}

fn formula_min_lr(c: &Ctx) -> Outcome {
    let d = c.d;
    let s = d.finite_parabolic();
    let finite: Vec<ExtAffineElement> = d.finite_elements().iter().map(|v| ExtAffineElement::from_finite(v.clone())).collect();
    let w0 = d.w0();
    let lambdas = d.box_coweights(c.bx);
    let extreme = |coset: Vec<ExtAffineElement>, min: bool| -> Vec<ExtAffineElement> {
        let lens: Vec<u64> = coset.iter().map(|x| d.length(x)).collect();
        let t = if min { *lens.iter().min().unwrap() } else { *lens.iter().max().unwrap() };
        coset.into_iter().zip(lens).filter(|(_, l)| *l == t).map(|(x, _)| x).collect()
    };
    let mut out = sweep(&lambdas, |lambda| {
        let mut f = Vec::new();
        let t = d.translation(lambda);
        let (dom, v) = d.dominant_part(lambda);
        let v_len = d.finite_length(&v);
        let shortest = d
            .finite_elements()
            .iter()
            .filter(|u| u.act(lambda) == dom)
            .map(|u| d.finite_length(u))
            .min();
        if v.act(lambda) != dom || !d.is_dominant(&dom) || shortest != Some(v_len) {
            f.push(format!("{lambda}: v_λ is not the shortest element taking λ to dom(λ)"));
        }
        let wl = d.w_l(lambda);
        let left_coset: Vec<_> = finite.iter().map(|u| u.mul(&t)).collect();
        if extreme(left_coset.clone(), true) != vec![wl.clone()] || d.min_left_rep(&t, &s) != wl {
            f.push(format!("{lambda}: w_L = {} is not the minimum of W·t_λ", c.lit(&wl)));
        }
        if extreme(left_coset, false) != vec![w0.mul(&wl)] {
            f.push(format!("{lambda}: w∘·w_L is not the maximum of W·t_λ"));
        }
        if wl != d.translation(&dom).mul(&ExtAffineElement::from_finite(v.clone())) {
            f.push(format!("{lambda}: v_λ·t_λ != t_dom(λ)·v_λ"));
        }
        let lt = d.length(&t);
        if d.length(&wl) + v_len != lt || d.length(&d.translation(&dom)) != lt {
            f.push(format!("{lambda}: ℓ(w_L) != ℓ(t_λ) − ℓ(v_λ)"));
        }
        let wr = d.w_r(lambda);
        let right_coset: Vec<_> = finite.iter().map(|u| t.mul(u)).collect();
        if extreme(right_coset.clone(), true) != vec![wr.clone()] || d.min_right_rep(&t, &s) != wr {
            f.push(format!("{lambda}: w_R = {} is not the minimum of t_λ·W", c.lit(&wr)));
        }
        if extreme(right_coset, false) != vec![wr.mul(&w0)] {
            f.push(format!("{lambda}: w_R·w∘ is not the maximum of t_λ·W"));
        }
        f
    });
    // W^S_ext is exactly {w_R(λ)}.
    let elems = c.elems();
    let ws = sweep(&elems, |w| {
        let in_ws = d.is_in_ws(w);
        let lambda = w.finite.act(&w.trans);
        if in_ws != (d.w_r(&lambda) == *w) {
            vec![format!("{}: W^S membership {in_ws} disagrees with w_R of its coset", c.lit(w))]
        } else {
            Vec::new()
        }
    });
    out = out.merge(ws);
    out.notes.clear();
    out
}

fn double_min_5way(c: &Ctx) -> Outcome {
    let d = c.d;
    let elems = c.elems();
    let w0 = d.w0();
    let finite: Vec<ExtAffineElement> = d.finite_elements().iter().map(|v| ExtAffineElement::from_finite(v.clone())).collect();
    let items = c.with_parabolics(&elems);
    let mut out = sweep(&items, |(k, w)| {
        let a = &c.parabolics[*k];
        let ws = d.is_in_ws(w);
        let lmin = c.left_min_by_descents(w, a);
        let conds = [
            ws && finite.iter().all(|v| c.left_min_by_descents(&w.mul(v), a)),
            ws && c.left_min_by_descents(&w.mul(&w0), a),
            lmin && a.elements.iter().all(|v| d.is_in_ws(&v.mul(w))),
            lmin && d.is_in_ws(&a.longest.mul(w)),
            d.is_in_aws(w, a),
        ];
        if conds.iter().any(|&b| b != conds[0]) {
            vec![format!("{} {}: conditions (1)-(5) = {conds:?}", c.lit(w), c.label(*k))]
        } else {
            Vec::new()
        }
    });

    // Cardinality criterion on double-coset minima, under two readings of
    // the set: the literal product W_A·m·A and the double coset W_A·m·W.
    let s = d.finite_parabolic();
    for (k, a) in c.parabolics.iter().enumerate() {
        let mut seen = HashSet::new();
        let mut minima = Vec::new();
        for w in &elems {
            let m = d.double_coset_min(w, a);
            if seen.insert(m.clone()) {
                minima.push(m);
            }
        }
        let results: Vec<(bool, bool, Option<String>)> = minima
            .par_iter()
            .map(|m| {
                let lm = d.length(m);
                let scan_ok = a
                    .elements
                    .iter()
                    .all(|x| finite.iter().all(|v| *m == x.mul(m).mul(v) || d.length(&x.mul(m).mul(v)) > lm));
                let err = (!scan_ok).then(|| format!("{} {}: not the minimum of W_A·m·W", c.lit(m), c.label(k)));
                let in_aws = d.is_in_aws(m, a);
                let literal: HashSet<ExtAffineElement> = a
                    .elements
                    .iter()
                    .flat_map(|x| a.generators.iter().map(move |&r| (x, r)))
                    .map(|(x, r)| x.mul(m).mul(d.generator(r)))
                    .filter(|z| d.is_in_ws(z))
                    .collect();
                let double: HashSet<ExtAffineElement> =
                    a.elements.iter().map(|x| d.min_right_rep(&x.mul(m), &s)).collect();
                (in_aws != (literal.len() == a.order), in_aws != (double.len() == a.order), err)
            })
            .collect();
        let lit_bad = results.iter().filter(|r| r.0).count();
        let dbl_bad = results.iter().filter(|r| r.1).count();
        out.failures.extend(results.into_iter().filter_map(|r| r.2));
        out.notes.push(format!(
            "{}: {} double cosets; cardinality criterion disagrees with membership in {lit_bad} (reading W_A·m·A), {dbl_bad} (reading W_A·m·W)",
            c.label(k),
            minima.len()
        ));
    }
    out
}

fn min_lr(c: &Ctx) -> Outcome {
    let d = c.d;
    let s = d.finite_parabolic();
    let w0 = d.w0();
    sweep(&d.box_coweights(c.bx), |lambda| {
        let wr = d.w_r(lambda);
        let member = d.is_in_aws(&wr, &s);
        let mut f = Vec::new();
        if member != d.is_strictly_dominant(lambda) {
            f.push(format!("{lambda}: w_R in ˢW^S is {member}, strictly dominant is {}", !member));
        }
        if member && wr != d.translation(lambda).mul(&w0) {
            f.push(format!("{lambda}: w_R = {} differs from t_λ·w∘", c.lit(&wr)));
        }
        f
    })
}

fn ws_alcove(c: &Ctx) -> Outcome {
    let d = c.d;
    let p = d.fundamental_point();
    sweep(&c.elems(), |w| {
        let mut f = Vec::new();
        let ws = d.is_in_ws(w);
        if ws != d.ws_alcove_test(w) {
            f.push(format!("{}: descent test {ws}, alcove test {}", c.lit(w), !ws));
        }
        let pi = d.pi_box_of(w);
        if !d.in_pi_box(&w.inv().act_on_point(&p), &pi.mu) {
            f.push(format!("{}: alcove not inside Π_{}", c.lit(w), pi.mu));
        }
        if d.simple_pairings(&pi.mu) != pi.pairings {
            f.push(format!("{}: μ = {} does not realize {:?}", c.lit(w), pi.mu, pi.pairings));
        }
        if ws != pi.pairings.iter().all(|&k| k >= 1) {
            f.push(format!("{}: W^S membership {ws} but box pairings {:?}", c.lit(w), pi.pairings));
        }
        f
    })
}

fn res_elements(c: &Ctx) -> Outcome {
    let d = c.d;
    let elems = c.elems();
    let mut out = sweep(&elems, |w| {
        let mut f = Vec::new();
        let r = d.is_restricted(w);
        if r != d.is_restricted_by_alcove(w) {
            f.push(format!("{}: integer test {r}, alcove test {}", c.lit(w), !r));
        }
        if r && !d.is_antidominant(&w.trans) {
            f.push(format!("{}: restricted with non-antidominant translation", c.lit(w)));
        }
        let shift = d.pi_box_of(w).mu.sub(d.sigma());
        let x = w.mul(&d.translation(&shift));
        if !d.is_restricted(&x) {
            f.push(format!("{}: w·t_(μ−ς) = {} not restricted", c.lit(w), c.lit(&x)));
        }
        for z in d.radical_basis() {
            if !d.is_restricted(&x.mul(&d.translation(z))) || !d.is_restricted(&x.mul(&d.translation(&z.neg()))) {
                f.push(format!("{}: restricted set not stable under t_{z}", c.lit(&x)));
            }
        }
        for a in d.simple_coroots() {
            if d.is_restricted(&x.mul(&d.translation(a))) {
                f.push(format!("{}: still restricted after t_{a}", c.lit(&x)));
            }
        }
        f
    });
    // Restricted translations with a fixed finite part differ by radical
    // coweights.
    let mut by_finite: HashMap<_, Vec<&ExtAffineElement>> = HashMap::new();
    for w in elems.iter().filter(|w| d.is_restricted(w)) {
        by_finite.entry(w.finite.clone()).or_default().push(w);
    }
    let mut groups: Vec<_> = by_finite.into_values().collect();
    groups.sort_by_key(|g| c.lit(g[0]));
    for g in groups {
        for w in &g[1..] {
            if !d.is_radical(&w.trans.sub(&g[0].trans)) {
                out.failures.push(format!("{} and {}: restricted translations differ by a non-radical", c.lit(g[0]), c.lit(w)));
            }
        }
    }
    out
}

fn antidominant_in_box(d: &RootDatum, bx: i64) -> Vec<Coweight> {
    d.box_coweights(bx).into_iter().filter(|l| d.is_antidominant(l)).collect()
}

fn length_res_dom(c: &Ctx) -> Outcome {
    let d = c.d;
    let ws: Vec<_> = c.elems().into_iter().filter(|w| d.is_in_ws(w)).collect();
    let anti = antidominant_in_box(d, c.bx);
    let items: Vec<(ExtAffineElement, Coweight)> =
        ws.iter().flat_map(|w| anti.iter().map(move |m| (w.clone(), m.clone()))).collect();
    sweep(&items, |(w, mu)| {
        let mut f = Vec::new();
        let t = d.translation(mu);
        let lt = d.length(&t);
        let lwt = d.length(&w.mul(&t));
        if lwt != lt + d.length(w) {
            f.push(format!("{} with μ={mu}: ℓ(w·t_μ)={lwt} != ℓ(t_μ)+ℓ(w)", c.lit(w)));
        }
        if lt as i64 != -d.pairing(d.two_rho(), mu) {
            f.push(format!("μ={mu}: ℓ(t_μ) != −⟨2ρ,μ⟩"));
        }
        if d.is_restricted(w) {
            let closed = -d.pairing(d.two_rho(), &w.trans.add(mu)) - d.finite_length(&w.finite) as i64;
            if lwt as i64 != closed {
                f.push(format!("{} with μ={mu}: ℓ = {lwt}, closed form {closed}", c.lit(w)));
            }
        }
        f
    })
}

fn double_min_antidom(c: &Ctx) -> Outcome {
    let d = c.d;
    let res: Vec<_> = c.elems().into_iter().filter(|w| d.is_restricted(w)).collect();
    let anti = antidominant_in_box(d, c.bx);
    let items: Vec<(usize, ExtAffineElement, Coweight)> = (0..c.parabolics.len())
        .flat_map(|k| {
            let anti = &anti;
            res.iter().flat_map(move |y| anti.iter().map(move |l| (k, y.clone(), l.clone())))
        })
        .collect();
    sweep(&items, |(k, y, lambda)| {
        let a = &c.parabolics[*k];
        let before = d.is_in_aws(y, a);
        let after = d.is_in_aws(&y.mul(&d.translation(lambda)), a);
        if before != after {
            vec![format!("{} λ={lambda} {}: y in ᴬW^S {before}, y·t_λ {after}", c.lit(y), c.label(*k))]
        } else {
            Vec::new()
        }
    })
}

fn ws_wres_coverage(c: &Ctx) -> Outcome {
    let d = c.d;
    let elems = c.elems();
    let mut restricted_by_finite: HashMap<_, Vec<ExtAffineElement>> = HashMap::new();
    for w in elems.iter().filter(|w| d.is_restricted(w)) {
        restricted_by_finite.entry(w.finite.clone()).or_default().push(w.clone());
    }
    let ws: Vec<_> = elems.iter().filter(|w| d.is_in_ws(w)).cloned().collect();
    let mut out = sweep(&ws, |w| match d.steinberg_factor(w) {
        Err(e) => vec![format!("{}: {e}", c.lit(w))],
        Ok(fac) => {
            let mut f = Vec::new();
            if fac.x.mul(&d.translation(&fac.nu)) != *w || fac.lengths.0 + fac.lengths.1 != d.length(w) {
                f.push(format!("{}: factorization does not reassemble", c.lit(w)));
            }
            for x in restricted_by_finite.get(&w.finite).into_iter().flatten() {
                if !d.congruent_mod_radical(x, &fac.x) {
                    f.push(format!("{}: restricted {} not congruent to factor {}", c.lit(w), c.lit(x), c.lit(&fac.x)));
                }
            }
            f
        }
    });

    let h = d.max_coroot_height();
    let outer = c.bx + h;
    let dominant: Vec<Coweight> = d.box_coweights(outer).into_iter().filter(|m| d.is_dominant(m)).collect();
    for (k, a) in c.parabolics.iter().enumerate() {
        let ys = d.enumerate_restricted(a, outer);
        let pairs: Vec<(ExtAffineElement, Coweight)> =
            ys.iter().flat_map(|y| dominant.iter().map(move |m| (y.clone(), m.clone()))).collect();
        let labels: Vec<std::result::Result<ExtAffineElement, String>> = pairs
            .par_iter()
            .map(|(y, m)| d.steinberg_label(y, m, a).map_err(|e| format!("label({}, {m}) {}: {e}", c.lit(y), c.label(k))))
            .collect();
        let mut hits: HashMap<ExtAffineElement, Vec<usize>> = HashMap::new();
        for (i, l) in labels.into_iter().enumerate() {
            match l {
                Ok(z) => hits.entry(z).or_default().push(i),
                Err(e) => out.failures.push(e),
            }
        }
        out.checked += pairs.len() as u64;
        let targets: Vec<_> = d.box_elements(c.bx).into_iter().filter(|w| d.is_in_aws(w, a)).collect();
        for t in &targets {
            match hits.get(t) {
                None => out.failures.push(format!("{} {}: not a label", c.lit(t), c.label(k))),
                Some(list) => {
                    let (y0, m0) = &pairs[list[0]];
                    if d.is_semisimple() && list.len() != 1 {
                        out.failures.push(format!("{} {}: {} labels in the semisimple case", c.lit(t), c.label(k), list.len()));
                    }
                    for &i in &list[1..] {
                        let (y, m) = &pairs[i];
                        if !d.congruent_mod_radical(y, y0) || !d.is_radical(&m.sub(m0)) {
                            out.failures.push(format!("{} {}: labels ({}, {m}) and ({}, {m0}) differ beyond Y₀", c.lit(t), c.label(k), c.lit(y), c.lit(y0)));
                        }
                    }
                }
            }
        }
        out.checked += targets.len() as u64;
        out.notes.push(format!("{}: {} targets in box {} covered by {} labels from box {outer}", c.label(k), targets.len(), c.bx, pairs.len()));
    }
    out
}

/// `μ` as a nonnegative integer combination of simple coroots, by scanning
/// coefficient vectors in `[0, cap]^n`.
fn coroot_sum_scan(d: &RootDatum, mu: &Coweight, cap: i64) -> bool {
    let n = d.num_simple();
    let mut coeffs = vec![0i64; n];
    loop {
        let mut acc = d.zero();
        for (i, &k) in coeffs.iter().enumerate() {
            acc = acc.add(&d.simple_coroots()[i].scale(k));
        }
        if acc == *mu {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            coeffs[i] += 1;
            if coeffs[i] <= cap {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

fn spherical_order(c: &Ctx) -> Outcome {
    let d = c.d;
    let w0 = d.w0();
    let finite: Vec<ExtAffineElement> = d.finite_elements().iter().map(|v| ExtAffineElement::from_finite(v.clone())).collect();
    let dominant: Vec<Coweight> = d.box_coweights(c.bx).into_iter().filter(|l| d.is_dominant(l)).collect();
    let cap = 4 * c.bx * d.max_coroot_height();
    let extremes: Vec<std::result::Result<(ExtAffineElement, ExtAffineElement), String>> = dominant
        .par_iter()
        .map(|l| {
            let (min, max) = d.spherical_double_min_max(l).map_err(|e| e.to_string())?;
            let t = d.translation(l);
            let coset: Vec<ExtAffineElement> =
                finite.iter().flat_map(|u| finite.iter().map(|v| u.mul(&t).mul(v))).collect();
            let lens: Vec<u64> = coset.iter().map(|x| d.length(x)).collect();
            let (lo, hi) = (*lens.iter().min().unwrap(), *lens.iter().max().unwrap());
            let at = |target: u64| -> HashSet<&ExtAffineElement> {
                coset.iter().zip(&lens).filter(|(_, &l)| l == target).map(|(x, _)| x).collect()
            };
            if at(lo) != HashSet::from([&min]) || at(hi) != HashSet::from([&max]) || max != w0.mul(&t) {
                return Err(format!("{l}: double coset extremes disagree with a scan"));
            }
            Ok((min, max))
        })
        .collect();
    let mut out = Outcome::default();
    let ok: Vec<(usize, &(ExtAffineElement, ExtAffineElement))> = extremes
        .iter()
        .enumerate()
        .filter_map(|(i, r)| match r {
            Ok(x) => Some((i, x)),
            Err(e) => {
                out.failures.push(e.clone());
                None
            }
        })
        .collect();
    let pairs: Vec<(usize, usize)> = ok.iter().flat_map(|&(i, _)| ok.iter().map(move |&(j, _)| (i, j))).collect();
    let ext = |i: usize| extremes[i].as_ref().unwrap();
    out = out.merge(sweep(&pairs, |&(i, j)| {
        let (l, m) = (&dominant[i], &dominant[j]);
        let mut f = Vec::new();
        let by_max = d.bruhat_leq(&ext(i).1, &ext(j).1);
        let by_min = d.bruhat_leq(&ext(i).0, &ext(j).0);
        let by_sum = coroot_sum_scan(d, &m.sub(l), cap);
        if by_max != by_sum || by_min != by_max {
            f.push(format!("{l} <= {m}: maxima {by_max}, minima {by_min}, coroot sums {by_sum}"));
        }
        let closure = d
            .spherical_label(l)
            .and_then(|a| d.spherical_label(m).and_then(|b| d.closure_leq(&a, &b)));
        if closure.as_ref().ok() != Some(&by_sum) {
            f.push(format!("{l} <= {m}: closure order {closure:?}"));
        }
        f
    }));

    // Gr^λ as a union of Iwahori orbits: the top cell is unique and has
    // dimension ⟨2ρ,λ⟩.
    out = out.merge(sweep(&dominant, |l| {
        let orbit: HashSet<Coweight> = d.finite_elements().iter().map(|v| v.act(l)).collect();
        let lens: Vec<u64> = orbit.iter().map(|m| d.length(&d.w_r(m))).collect();
        let top = *lens.iter().max().unwrap();
        let dim = d.spherical_label(l).map(|lab| d.orbit_dim(&lab));
        if top as i64 != d.pairing(d.two_rho(), l) || lens.iter().filter(|&&x| x == top).count() != 1 || dim != Ok(top) {
            vec![format!("{l}: Iwahori decomposition of Gr^λ has top cells {lens:?}")]
        } else {
            Vec::new()
        }
    }));
    out
}

/// Dense integer polynomial in `q`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
struct QPoly(Vec<i64>);

impl QPoly {
    fn from_degrees(degrees: impl IntoIterator<Item = u64>) -> Self {
        let mut c = Vec::new();
        for k in degrees {
            let k = k as usize;
            if c.len() <= k {
                c.resize(k + 1, 0);
            }
            c[k] += 1;
        }
        QPoly(c)
    }

    fn shift(&self, k: u64) -> Self {
        let mut c = vec![0; k as usize];
        c.extend(&self.0);
        QPoly(c)
    }
}

fn pi_fibration(c: &Ctx) -> Outcome {
    let d = c.d;
    let finite: Vec<ExtAffineElement> = d.finite_elements().iter().map(|v| ExtAffineElement::from_finite(v.clone())).collect();
    let poincare = QPoly::from_degrees(finite.iter().map(|v| d.length(v)));
    let ws: Vec<_> = c.elems().into_iter().filter(|w| d.is_in_ws(w)).collect();
    sweep(&ws, |w| {
        let mut f = Vec::new();
        let fiber = QPoly::from_degrees(finite.iter().map(|v| d.length(&w.mul(v))));
        if fiber != poincare.shift(d.length(w)) {
            f.push(format!("{}: Σ q^ℓ(wv) = {:?}", c.lit(w), fiber.0));
        }
        match d.iwahori_label(Space::Gr, w) {
            Ok(lab) if d.orbit_dim(&lab) == d.length(w) => {}
            other => f.push(format!("{}: Gr orbit label {other:?}", c.lit(w))),
        }
        f
    })
}

fn gl2_golden(c: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    let d = RootDatum::preset("GL2").expect("GL2 preset builds");
    if c.d.name() != d.name() {
        out.notes.push(format!("golden values are stated for GL2; datum {} ignored", c.d.name()));
    }
    let y = d.parse_element("t[1,0]*s1").expect("literal parses");
    let a = d.make_finitary(&[0]).expect("{s1} is finitary");
    let mu = Coweight(vec![0, -2]);
    let obstruction = d.whittaker_serre_obstruction(&y, &a, &mu);
    let checks: [(&str, bool); 5] = [
        ("ς = (1,0)", d.sigma().0 == vec![1, 0]),
        ("ℓ(t_(1,0)·s) = 0", d.length(&y) == 0),
        (
            "t_(1,0)·s restricted, t_(0,1) not",
            d.is_restricted(&y) && !d.is_restricted(&d.translation(&Coweight(vec![0, 1]))),
        ),
        ("t_(1,0)·s ∈ ˢW^S", d.is_in_aws(&y, &a)),
        (
            "obstruction at μ = (0,-2): bound 1, not strict",
            matches!(&obstruction, Ok(r) if r.dimension_or_bound == num::BigRational::from_integer(1.into()) && !r.strict),
        ),
    ];
    for (name, ok) in checks {
        out.checked += 1;
        if !ok {
            out.failures.push(format!("golden value failed: {name}"));
        }
    }
    out
}
