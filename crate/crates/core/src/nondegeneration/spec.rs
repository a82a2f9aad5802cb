//! Closed sets cut out by vanishing structure constants.
//!
//! Flags are `S_a = span(e_a, …, e_n)` (1-based). A condition `S_a S_b ⊆ S_c`
//! means `c_{ij}^k = 0` whenever `i ≥ a`, `j ≥ b` and `k < c`; `S_a S_b = 0`
//! is `S_a S_b ⊆ S_{n+1}`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Algebra, Table};
use crate::exact::Rational;

/// `S_a · S_b ⊆ S_c`, 1-based; `c = n + 1` encodes `= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FlagCondition {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// `(i, j, k)`, 0-based with `i ≤ j`: the coordinate `c_{ij}^k`.
pub type Triple = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSetSpec {
    dim: usize,
    explicit: BTreeSet<Triple>,
    flags: Vec<FlagCondition>,
    vanishing: BTreeSet<Triple>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("index {0} out of range for dimension {1}")]
    OutOfRange(usize, usize),
    #[error("cannot parse condition {input:?}: {message}")]
    Syntax { input: String, message: String },
}

fn normalize((i, j, k): Triple) -> Triple {
    (i.min(j), i.max(j), k)
}

impl ClosedSetSpec {
    pub fn new(
        dim: usize,
        explicit: impl IntoIterator<Item = Triple>,
        flags: impl IntoIterator<Item = FlagCondition>,
    ) -> Result<Self, SpecError> {
        let explicit: BTreeSet<Triple> = explicit.into_iter().map(normalize).collect();
        for &(i, j, k) in &explicit {
            for x in [i, j, k] {
                if x >= dim {
                    return Err(SpecError::OutOfRange(x + 1, dim));
                }
            }
        }
        let flags: Vec<FlagCondition> = flags.into_iter().collect();
        for f in &flags {
            for x in [f.a, f.b] {
                if x == 0 || x > dim {
                    return Err(SpecError::OutOfRange(x, dim));
                }
            }
            if f.c == 0 || f.c > dim + 1 {
                return Err(SpecError::OutOfRange(f.c, dim));
            }
        }
        let mut vanishing = explicit.clone();
        for f in &flags {
            vanishing.extend(expand_flag(dim, *f));
        }
        Ok(ClosedSetSpec {
            dim,
            explicit,
            flags,
            vanishing,
        })
    }

    /// Builds a spec from 1-based triples and condition strings such as
    /// `S1*S3 + S2^2 ⊆ S3` or `S2 S3 = 0`.
    pub fn parse(dim: usize, triples: &[[usize; 3]], conditions: &[&str]) -> Result<Self, SpecError> {
        let mut explicit = Vec::new();
        for t in triples {
            if t.iter().any(|&x| x == 0 || x > dim) {
                let bad = *t.iter().find(|&&x| x == 0 || x > dim).unwrap();
                return Err(SpecError::OutOfRange(bad, dim));
            }
            explicit.push((t[0] - 1, t[1] - 1, t[2] - 1));
        }
        let mut flags = Vec::new();
        for c in conditions {
            flags.extend(parse_condition(c, dim)?);
        }
        Self::new(dim, explicit, flags)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn explicit(&self) -> &BTreeSet<Triple> {
        &self.explicit
    }

    pub fn flags(&self) -> &[FlagCondition] {
        &self.flags
    }

    /// All constrained coordinates, explicit and expanded.
    pub fn vanishing(&self) -> &BTreeSet<Triple> {
        &self.vanishing
    }

    pub fn contains_table(&self, t: &Table<Rational>) -> bool {
        self.first_violation(t).is_none()
    }

    pub fn first_violation(&self, t: &Table<Rational>) -> Option<Triple> {
        self.vanishing
            .iter()
            .copied()
            .find(|&(i, j, k)| !t.get(i, j, k).is_zero())
    }

    /// Triples and conditions in 1-based text form.
    pub fn triples_1based(&self) -> Vec<[usize; 3]> {
        self.explicit.iter().map(|&(i, j, k)| [i + 1, j + 1, k + 1]).collect()
    }

    pub fn condition_strings(&self) -> Vec<String> {
        self.flags.iter().map(|f| f.display(self.dim)).collect()
    }
}

impl FlagCondition {
    pub fn display(&self, dim: usize) -> String {
        if self.c == dim + 1 {
            format!("S{}*S{} = 0", self.a, self.b)
        } else {
            format!("S{}*S{} ⊆ S{}", self.a, self.b, self.c)
        }
    }
}

impl fmt::Display for ClosedSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .explicit
            .iter()
            .map(|&(i, j, k)| format!("c_{}{}^{} = 0", i + 1, j + 1, k + 1))
            .collect();
        parts.extend(self.condition_strings());
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn expand_flag(dim: usize, f: FlagCondition) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for i in f.a - 1..dim {
        for j in f.b - 1..dim {
            for k in 0..f.c - 1 {
                out.insert(normalize((i, j, k)));
            }
        }
    }
    out
}

fn syntax(input: &str, message: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        input: input.to_string(),
        message: message.into(),
    }
}

fn parse_flag_index(s: &str, input: &str) -> Result<usize, SpecError> {
    let s = s.trim();
    let rest = s
        .strip_prefix('S')
        .ok_or_else(|| syntax(input, format!("expected S<index>, found {s:?}")))?;
    let rest = rest.trim_start_matches('_');
    rest.parse::<usize>()
        .map_err(|_| syntax(input, format!("bad flag index {s:?}")))
}

/// One product term: `S2^2`, `S2²`, `S1*S3`, `S1·S3` or `S1S3`.
fn parse_product(term: &str, input: &str) -> Result<(usize, usize), SpecError> {
    let term = term.trim();
    for sq in ["^2", "²"] {
        if let Some(base) = term.strip_suffix(sq) {
            let a = parse_flag_index(base, input)?;
            return Ok((a, a));
        }
    }
    let normalized: String = term
        .chars()
        .map(|c| if c == '*' || c == '·' { ' ' } else { c })
        .collect();
    let mut pieces: Vec<String> = normalized.split_whitespace().map(str::to_string).collect();
    if pieces.len() == 1 {
        // S1S3
        let p = &pieces[0];
        if let Some(pos) = p[1..].find('S') {
            let (x, y) = p.split_at(pos + 1);
            pieces = vec![x.to_string(), y.to_string()];
        }
    }
    if pieces.len() != 2 {
        return Err(syntax(input, format!("expected a product of two flags, found {term:?}")));
    }
    Ok((parse_flag_index(&pieces[0], input)?, parse_flag_index(&pieces[1], input)?))
}

pub fn parse_condition(input: &str, dim: usize) -> Result<Vec<FlagCondition>, SpecError> {
    let (lhs, c) = if let Some((l, r)) = input.split_once('⊆') {
        (l, parse_flag_index(r, input)?)
    } else if let Some((l, r)) = input.split_once("<=") {
        (l, parse_flag_index(r, input)?)
    } else if let Some((l, r)) = input.split_once('=') {
        if r.trim() != "0" {
            return Err(syntax(input, "only `= 0` is supported"));
        }
        (l, dim + 1)
    } else {
        return Err(syntax(input, "expected `⊆`, `<=` or `= 0`"));
    };
    lhs.split('+')
        .map(|t| parse_product(t, input).map(|(a, b)| FlagCondition { a, b, c }))
        .collect()
}

/// Membership of `a` in its given basis.
pub fn membership(spec: &ClosedSetSpec, a: &Algebra) -> bool {
    spec.dim() == a.dim() && spec.contains_table(&a.table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    pub(crate) fn r1() -> ClosedSetSpec {
        ClosedSetSpec::parse(3, &[[1, 1, 2]], &["S1*S3 + S2^2 ⊆ S3", "S2*S3 = 0"]).unwrap()
    }

    #[test]
    fn flag_expansion() {
        let f = FlagCondition { a: 2, b: 3, c: 4 };
        let v = expand_flag(3, f);
        assert_eq!(v.len(), 6);
        assert!(v.contains(&(1, 2, 0)) && v.contains(&(2, 2, 2)));
        let s = r1();
        // c_11^2, S1S3 ⊆ S3 (c_{i3}^{1,2}), S2² ⊆ S3, S2S3 = 0
        let expected: BTreeSet<Triple> = [
            (0, 0, 1),
            (0, 2, 0),
            (0, 2, 1),
            (1, 2, 0),
            (1, 2, 1),
            (2, 2, 0),
            (2, 2, 1),
            (1, 1, 0),
            (1, 1, 1),
            (1, 2, 2),
            (2, 2, 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(s.vanishing(), &expected);
    }

    #[test]
    fn parses_condition_spellings() {
        let a = parse_condition("S1S3+S2²⊆S3", 3).unwrap();
        let b = parse_condition("S_1*S_3 + S_2^2 <= S_3", 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_condition("S2·S3 = 0", 3).unwrap(), vec![FlagCondition { a: 2, b: 3, c: 4 }]);
        assert!(parse_condition("S2 S3 = 1", 3).is_err());
        assert!(ClosedSetSpec::parse(3, &[[1, 1, 4]], &[]).is_err());
    }

    #[test]
    fn membership_examples() {
        let s = r1();
        assert!(membership(&s, &catalog("T10").unwrap()));
        assert!(membership(&s, &catalog("T13").unwrap()));
        assert!(!membership(&s, &catalog("T17").unwrap()));
        assert!(membership(&s, &Algebra::zero(3)));
    }
}
