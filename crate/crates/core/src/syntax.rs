//! Element literals.
//!
//! ```text
//! elem   ::= factor ('*' factor)*
//! factor ::= 's' INDEX | 'a' INDEX | 't[' INT (',' INT)* ']' | 'e' | 'w0'
//! ```
//!
//! Indices are 1-based. Canonical output is `(<reduced word of the finite
//! part>; [λ])`; [`RootDatum::literal`] prints a form the parser accepts.

use crate::coxeter::GeneratorKind;
use crate::error::{Error, Result};
use crate::root_datum::{Coweight, RootDatum};
use crate::weyl_ext::ExtAffineElement;

/// Parses `[1,-2,0]` (brackets optional).
pub fn parse_coweight(text: &str, rank: usize) -> Result<Coweight> {
    let t = text.trim();
    let inner = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(t);
    let coords = inner
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer in {text:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != rank {
        return Err(Error::Parse(format!("{text:?} has {} entries, expected {rank}", coords.len())));
    }
    Ok(Coweight(coords))
}

impl RootDatum {
    pub fn parse_element(&self, text: &str) -> Result<ExtAffineElement> {
        let mut acc = self.identity();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        for factor in split_factors(&compact)? {
            acc = acc.mul(&self.parse_factor(factor)?);
        }
        Ok(acc)
    }

    fn parse_factor(&self, f: &str) -> Result<ExtAffineElement> {
        let bad = || Error::Parse(format!("bad factor {f:?}"));
        if f == "e" {
            return Ok(self.identity());
        }
        if f == "w0" {
            return Ok(self.w0());
        }
        if let Some(rest) = f.strip_prefix('t') {
            if !rest.starts_with('[') || !rest.ends_with(']') {
                return Err(bad());
            }
            return Ok(self.translation(&parse_coweight(rest, self.rank())?));
        }
        let (kind, num) = f.split_at(1);
        let k: usize = num.parse().ok().filter(|&k| k >= 1).ok_or_else(bad)?;
        let target = match kind {
            "s" => GeneratorKind::Finite(k - 1),
            "a" => GeneratorKind::Affine(k - 1),
            _ => return Err(bad()),
        };
        self.generators()
            .iter()
            .find(|g| g.kind == target)
            .map(|g| g.element.clone())
            .ok_or_else(|| Error::Parse(format!("no generator {f} for datum {}", self.name())))
    }

    /// Reduced word of the finite part, `e` when trivial.
    pub fn finite_word_string(&self, w: &crate::weyl_ext::FiniteWeylElement) -> String {
        let word = self.finite_word(w);
        if word.is_empty() {
            "e".into()
        } else {
            word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("*")
        }
    }

    /// Canonical form `(<finite word>; [λ])`.
    pub fn canonical(&self, a: &ExtAffineElement) -> String {
        format!("({}; {})", self.finite_word_string(&a.finite), a.trans)
    }

    /// A literal the element grammar parses back to `a`.
    pub fn literal(&self, a: &ExtAffineElement) -> String {
        let word = self.finite_word(&a.finite);
        let mut parts: Vec<String> = word.iter().map(|i| format!("s{}", i + 1)).collect();
        if !a.trans.is_zero() || parts.is_empty() {
            if a.trans.is_zero() {
                parts.push("e".into());
            } else {
                parts.push(format!("t{}", a.trans));
            }
        }
        parts.join("*")
    }

    pub fn word_string(&self, letters: &[usize]) -> String {
        if letters.is_empty() {
            return "e".into();
        }
        letters.iter().map(|&i| self.generators()[i].kind.to_string()).collect::<Vec<_>>().join("*")
    }
}

fn split_factors(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
    }
    out.push(&s[start..]);
    if out.iter().any(|f| f.is_empty()) {
        return Err(Error::Parse(format!("empty factor in {s:?}")));
    }
    Ok(out)
}
