//! SVG picture of the hyperplane arrangement of a rank-2 datum, drawn in the
//! coordinates of `Y ⊗ ℚ`. Clipping is exact; coordinates are rounded only
//! when written out.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, RootFunctional};

const CANVAS: i64 = 480;

type Point = (BigRational, BigRational);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pair(beta: &RootFunctional, p: &Point) -> BigRational {
    &p.0 * q(beta.0[0]) + &p.1 * q(beta.0[1])
}

/// Keeps the part of a convex polygon where `⟨β, v⟩ ≥ c` (or `≤ c` when
/// `upper`), by Sutherland–Hodgman clipping.
fn clip(poly: &[Point], beta: &RootFunctional, c: &BigRational, upper: bool) -> Vec<Point> {
    let inside = |p: &Point| {
        let v = pair(beta, p);
        if upper {
            v <= *c
        } else {
            v >= *c
        }
    };
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let (ia, ib) = (inside(a), inside(b));
        if ia {
            out.push(a.clone());
        }
        if ia != ib {
            let (va, vb) = (pair(beta, a), pair(beta, b));
            let t = (c - &va) / (vb - &va);
            out.push((&a.0 + (&b.0 - &a.0) * &t, &a.1 + (&b.1 - &a.1) * &t));
        }
    }
    out
}

fn square(r: i64) -> Vec<Point> {
    vec![(q(-r), q(-r)), (q(r), q(-r)), (q(r), q(r)), (q(-r), q(r))]
}

/// Fixed-point rendering with four decimals, rounded half away from zero.
fn fmt_coord(x: &BigRational) -> String {
    let scaled = (x * q(10_000)).round().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let ten_k = BigInt::from(10_000);
    let (int, frac) = (&abs / &ten_k, &abs % &ten_k);
    let mut s = format!("{}{int}", if neg && !abs.is_zero() { "-" } else { "" });
    if !frac.is_zero() {
        let digits = format!("{frac:0>4}");
        s.push('.');
        s.push_str(digits.trim_end_matches('0'));
    }
    s
}

struct Frame {
    r: i64,
    scale: BigRational,
}

impl Frame {
    fn map(&self, p: &Point) -> (String, String) {
        let x = (&p.0 + q(self.r)) * &self.scale;
        let y = (q(self.r) - &p.1) * &self.scale;
        (fmt_coord(&x), fmt_coord(&y))
    }

    fn polygon(&self, poly: &[Point], fill: &str, opacity: &str) -> String {
        if poly.len() < 3 {
            return String::new();
        }
        let pts: Vec<String> = poly
            .iter()
            .map(|p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect();
        format!("  <polygon points=\"{}\" fill=\"{fill}\" fill-opacity=\"{opacity}\" stroke=\"none\"/>\n", pts.join(" "))
    }
}

/// Draws `H_{β,n}` for positive `β` and `|n| ≤ bound`, shading the dominant
/// chamber, the box `Π_ς` and the fundamental alcove.
pub fn plot_alcoves(d: &RootDatum, bound: i64) -> Result<String> {
    if d.rank() != 2 {
        return Err(Error::Unsupported(format!("alcove plots need rank 2, {} has rank {}", d.name(), d.rank())));
    }
    if bound < 1 {
        return Err(Error::Parse(format!("plot bound must be positive, got {bound}")));
    }
    let r = bound + 1;
    let frame = Frame { r, scale: BigRational::new(BigInt::from(CANVAS), BigInt::from(2 * r)) };
    let window = square(r);
    let zero = BigRational::zero();
    let one = BigRational::one();

    let mut chamber = window.clone();
    let mut alcove = window.clone();
    for b in d.positive_roots() {
        chamber = clip(&chamber, &b.root, &zero, false);
        alcove = clip(&clip(&alcove, &b.root, &zero, false), &b.root, &one, true);
    }
    let mut pi_box = window.clone();
    for a in d.simple_roots() {
        let top = q(d.pairing(a, d.sigma()));
        pi_box = clip(&clip(&pi_box, a, &(&top - &one), false), a, &top, true);
    }

    let mut svg = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">\n"
    );
    svg.push_str(&format!("  <title>{} alcoves, |n| &lt;= {bound}</title>\n", d.name()));
    svg.push_str(&format!("  <rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"white\"/>\n"));
    svg.push_str(&frame.polygon(&chamber, "#9ecae1", "0.35"));
    svg.push_str(&frame.polygon(&pi_box, "#fdae6b", "0.45"));
    svg.push_str(&frame.polygon(&alcove, "#e6550d", "0.8"));
    for b in d.positive_roots() {
        for n in -bound..=bound {
            // Segment of H_{β,n} inside the window: clip a thin sliver.
            let sliver = clip(&clip(&window, &b.root, &q(n), false), &b.root, &q(n), true);
            let mut ends: Vec<&Point> = Vec::new();
            for p in &sliver {
                if !ends.contains(&p) {
                    ends.push(p);
                }
            }
            if ends.len() < 2 {
                continue;
            }
            ends.sort();
            let ((x1, y1), (x2, y2)) = (frame.map(ends[0]), frame.map(ends[ends.len() - 1]));
            let width = if n == 0 { "1.5" } else { "0.75" };
            svg.push_str(&format!(
                "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"{width}\"/>\n"
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
