//! Acceptance gate. Each criterion prints one `PASS`/`FAIL` line; the run
//! exits nonzero if any criterion fails.

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use num::{BigRational, Signed, ToPrimitive, Zero};
use weylext::verify::{default_box, run_verification, VerificationJob, VerificationReport};
use weylext::{Coweight, ExtAffineElement, RootDatum};

const PRESETS: [&str; 4] = ["GL2", "PGL2", "GL3", "PGL3"];

struct Verdict {
    ok: bool,
    detail: String,
}

fn datum(name: &str) -> RootDatum {
    RootDatum::preset(name).expect("preset builds")
}

fn run(lemma: &str, d: &RootDatum, bx: i64) -> VerificationReport {
    let report = run_verification(&VerificationJob::new(lemma, d).with_box(bx).with_jobs(4)).expect("job runs");
    if !report.passed() {
        eprintln!("{}", report.render_text());
    }
    report
}

fn within(limit: Duration, start: Instant, detail: &mut String) -> bool {
    let took = start.elapsed();
    detail.push_str(&format!(" in {:.2}s (limit {}s)", took.as_secs_f64(), limit.as_secs()));
    took <= limit
}

/// Hyperplanes `H_{β,n}` between a generic point of the fundamental alcove
/// and its image under `w`.
fn crossings(d: &RootDatum, w: &ExtAffineElement) -> u64 {
    let p = d.fundamental_point();
    let q = w.act_on_point(&p);
    d.positive_roots()
        .iter()
        .map(|b| {
            let (x, y) = (p.pair(&b.root).floor(), q.pair(&b.root).floor());
            (x - y).abs().to_integer().to_u64().expect("small count")
        })
        .sum()
}

fn golden() -> Verdict {
    let start = Instant::now();
    let d = datum("GL2");
    let y = d.parse_element("t[1,0]*s1").unwrap();
    let a = d.make_finitary(&[0]).unwrap();
    let obstruction = d.whittaker_serre_obstruction(&y, &a, &Coweight(vec![0, -2])).unwrap();
    let direct = [
        d.sigma().coords() == [1, 0],
        d.length(&y) == 0,
        d.is_restricted(&y),
        !d.is_restricted(&d.translation(&Coweight(vec![0, 1]))),
        d.is_in_aws(&y, &a),
        obstruction.dimension_or_bound == BigRational::from_integer(1.into()),
        !obstruction.strict,
    ];
    let report = run("gl2-paper", &d, default_box(&d));
    let passed = direct.iter().filter(|&&b| b).count();
    let mut detail = format!("{passed}/{} direct values, report {}/{}", direct.len(), report.elements_checked, 5);
    let ok = passed == direct.len() && report.passed() && report.elements_checked == 5;
    let ok = within(Duration::from_secs(1), start, &mut detail) && ok;
    Verdict { ok, detail }
}

fn length_oracle() -> Verdict {
    let start = Instant::now();
    let mut mismatches = 0usize;
    let mut checked = 0u64;
    for (name, bx) in [("GL2", 3), ("PGL2", 3), ("GL3", 2), ("PGL3", 2)] {
        let d = datum(name);
        let report = run("length-oracle", &d, bx);
        mismatches += report.failures.len();
        checked += report.elements_checked;
        for w in d.box_elements(bx) {
            if crossings(&d, &w) != d.length(&w) {
                mismatches += 1;
            }
        }
    }
    let mut detail = format!("{checked} elements, {mismatches} mismatches");
    let ok = within(Duration::from_secs(60), start, &mut detail) && mismatches == 0;
    Verdict { ok, detail }
}

/// Subword test over reduced words found by breadth-first search in the
/// Cayley graph of `W_aff`.
fn bruhat_oracle() -> Verdict {
    let start = Instant::now();
    let d = datum("GL2");
    let max_len = 8usize;
    let gens: Vec<ExtAffineElement> = d.generators().iter().map(|g| g.element.clone()).collect();
    let mut words: HashMap<ExtAffineElement, Vec<usize>> = HashMap::from([(d.identity(), vec![])]);
    let mut queue = VecDeque::from([d.identity()]);
    while let Some(w) = queue.pop_front() {
        let word = words[&w].clone();
        if word.len() == max_len {
            continue;
        }
        for (i, s) in gens.iter().enumerate() {
            let next = w.mul(s);
            if !words.contains_key(&next) {
                let mut longer = word.clone();
                longer.push(i);
                words.insert(next.clone(), longer);
                queue.push_back(next);
            }
        }
    }
    let mut mismatches = 0usize;
    let mut pairs = 0u64;
    for (w, word) in &words {
        let below: HashSet<ExtAffineElement> = (0u32..1 << word.len())
            .map(|mask| {
                word.iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .fold(d.identity(), |acc, (_, &i)| acc.mul(&gens[i]))
            })
            .collect();
        for y in words.keys() {
            pairs += 1;
            if d.bruhat_leq(y, w) != below.contains(y) {
                mismatches += 1;
            }
        }
    }
    let report = run("bruhat-oracle", &d, 4);
    mismatches += report.failures.len();
    let mut detail = format!("{} elements, {pairs} pairs, {mismatches} mismatches", words.len());
    let ok = within(Duration::from_secs(60), start, &mut detail) && mismatches == 0 && words.len() == 17;
    Verdict { ok, detail }
}

fn lemma_suites() -> Verdict {
    let lemmas = [
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
    ];
    let mut failed = Vec::new();
    let mut slowest = Duration::ZERO;
    for name in PRESETS {
        let d = datum(name);
        for lemma in lemmas {
            let start = Instant::now();
            let report = run(lemma, &d, default_box(&d));
            let took = start.elapsed();
            slowest = slowest.max(took);
            if !report.passed() || took > Duration::from_secs(300) {
                failed.push(format!("{lemma}@{name}"));
            }
        }
    }
    let detail = format!(
        "{} suites, slowest {:.2}s, failing: [{}]",
        lemmas.len() * PRESETS.len(),
        slowest.as_secs_f64(),
        failed.join(", ")
    );
    Verdict { ok: failed.is_empty(), detail }
}

fn steinberg() -> Verdict {
    let mut failures = 0usize;
    let mut notes = Vec::new();
    for name in PRESETS {
        let d = datum(name);
        let report = run("ws-wres-coverage", &d, default_box(&d));
        failures += report.failures.len();
        notes.push(format!("{name}: {} checks", report.elements_checked));
    }
    // Rank-two coverage again at box 3, where the targets go past length 4.
    let d = datum("GL3");
    let report = run("ws-wres-coverage", &d, 3);
    failures += report.failures.len();
    notes.push(format!("GL3@3: {} checks", report.elements_checked));
    Verdict { ok: failures == 0, detail: format!("{}; {failures} failures", notes.join(", ")) }
}

fn spherical_order() -> Verdict {
    let mut failures = 0usize;
    let mut pairs = 0u64;
    for name in PRESETS {
        let d = datum(name);
        let bx = default_box(&d);
        let report = run("spherical-order", &d, bx);
        failures += report.failures.len();
        // Dominance order against coroot coefficients, straight from the datum.
        let dominant: Vec<Coweight> = d.box_coweights(bx).into_iter().filter(|m| d.is_dominant(m)).collect();
        for l in &dominant {
            for m in &dominant {
                pairs += 1;
                let diff = l.sub(m);
                let by_coeffs = d.coroot_coefficients(&diff).is_some_and(|c| c.iter().all(|&k| k >= 0));
                let la = d.spherical_label(l).unwrap();
                let ma = d.spherical_label(m).unwrap();
                if d.closure_leq(&ma, &la).unwrap() != by_coeffs {
                    failures += 1;
                }
            }
        }
    }
    Verdict { ok: failures == 0, detail: format!("{pairs} dominant pairs, {failures} mismatches") }
}

/// Labels land in the double-minimal set with additive length, over every
/// restricted `y` and dominant `μ` in the box.
fn label_shadows() -> Verdict {
    let mut labels = 0u64;
    let mut bad = 0usize;
    for name in PRESETS {
        let d = datum(name);
        let bx = default_box(&d);
        let dominant: Vec<Coweight> = d.box_coweights(bx).into_iter().filter(|m| d.is_dominant(m)).collect();
        for a in d.all_finitary() {
            for y in d.enumerate_restricted(&a, bx) {
                for mu in &dominant {
                    labels += 1;
                    match d.steinberg_label(&y, mu, &a) {
                        Ok(z) if d.is_in_aws(&z, &a) && d.length(&z) == d.length(&y) + d.length(&d.translation(mu)) => {}
                        _ => bad += 1,
                    }
                }
            }
        }
    }
    Verdict { ok: bad == 0 && labels > 0, detail: format!("{labels} labels, {bad} bad") }
}

fn main() {
    crossing_oracle_sanity();
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("GL2 golden suite", golden),
        ("length oracle equivalence", length_oracle),
        ("Bruhat oracle equivalence", bruhat_oracle),
        ("lemma suites", lemma_suites),
        ("Steinberg round trip and coverage", steinberg),
        ("spherical order equivalence", spherical_order),
        ("label shadows", label_shadows),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!("{} [{}] {name}: {}", if v.ok { "PASS" } else { "FAIL" }, i + 1, v.detail);
        if !v.ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}

fn crossing_oracle_sanity() {
    let d = datum("GL2");
    assert_eq!(crossings(&d, &d.identity()), 0);
    assert_eq!(crossings(&d, &d.from_simple(0)), 1);
    assert!(BigRational::zero() < d.fundamental_point().pair(&d.simple_roots()[0]));
}
