//! The Kripke frame of filters of the Ignatiev algebra, in coordinates.
//!
//! A filter `F` is represented by the sequence `a(i) = sup { p(i) + 1 : p in F }`.
//! These are exactly the *suitable* sequences: every coordinate is positive
//! and, at every index, either `a(i)` is a limit with `a(i+1) <= ell(a(i))`, or
//! `a(i) = b + 1` with `a(i+1) <= ell(b) + 1`. Conversely a suitable sequence
//! `a` names the filter `{ p : p(i) < a(i) for all i }`.
//!
//! Sequences are stored as a finite prefix followed by a constant tail, which
//! is either 1 (a proper filter) or epsilon_0. The improper filter is the
//! all-epsilon_0 sequence.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use thiserror::Error;

use crate::error::ParseError;
use crate::logic::Formula;
use crate::ordinal::{ExtOrdinal, Ordinal};
use crate::point::IgnatievPoint;

static EXT_ONE: LazyLock<ExtOrdinal> = LazyLock::new(ExtOrdinal::one);
static EXT_EPSILON_ZERO: ExtOrdinal = ExtOrdinal::EpsilonZero;

/// Value of every coordinate after the stored prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    One,
    EpsilonZero,
}

impl Tail {
    pub fn value(self) -> &'static ExtOrdinal {
        match self {
            Tail::One => &EXT_ONE,
            Tail::EpsilonZero => &EXT_EPSILON_ZERO,
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value().fmt(f)
    }
}

/// First index at which a sequence fails to be suitable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("coordinate {0} is zero")]
    Zero(usize),
    #[error("coordinate {} is too large for coordinate {0}", .0 + 1)]
    Bound(usize),
}

impl Violation {
    pub fn index(&self) -> usize {
        match *self {
            Violation::Zero(i) | Violation::Bound(i) => i,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("sequence is not suitable: {0}")]
    NotSuitable(#[from] Violation),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A sequence of extended ordinals that has not been checked for suitability.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawSequence {
    pub prefix: Vec<ExtOrdinal>,
    pub tail: Tail,
}

impl RawSequence {
    pub fn new(prefix: Vec<ExtOrdinal>, tail: Tail) -> Self {
        RawSequence { prefix, tail }
    }

    pub fn coordinate(&self, i: usize) -> &ExtOrdinal {
        self.prefix.get(i).unwrap_or(self.tail.value())
    }

    /// `{ p : p(i) < a(i) for all i }`; meaningful as a filter only when the
    /// sequence is suitable.
    pub fn contains(&self, p: &IgnatievPoint) -> bool {
        let len = p.support().max(self.prefix.len());
        (0..len).all(|i| self.coordinate(i).exceeds(p.coordinate(i)))
    }

    /// Drops prefix entries that repeat the tail value.
    fn canonicalize(&mut self) {
        while self.prefix.last() == Some(self.tail.value()) {
            self.prefix.pop();
        }
    }
}

/// Whether `next` may follow `current` in a suitable sequence.
pub fn admissible_successor(current: &ExtOrdinal, next: &ExtOrdinal) -> bool {
    match current {
        ExtOrdinal::EpsilonZero => true,
        ExtOrdinal::Finite(a) if a.is_zero() => false,
        ExtOrdinal::Finite(a) if a.is_limit() => *next <= *a.ell(),
        ExtOrdinal::Finite(a) => {
            let pred = a.pred().expect("successor");
            *next <= pred.ell().succ()
        }
    }
}

/// Checks every coordinate of the prefix, the seam into the tail, and the
/// tail itself.
pub fn is_suitable(seq: &RawSequence) -> Result<(), Violation> {
    for i in 0..=seq.prefix.len() {
        if seq.coordinate(i).is_zero() {
            return Err(Violation::Zero(i));
        }
        if !admissible_successor(seq.coordinate(i), seq.coordinate(i + 1)) {
            return Err(Violation::Bound(i));
        }
    }
    Ok(())
}

/// A filter of the Ignatiev algebra, as its canonical suitable sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuitableSequence(RawSequence);

impl SuitableSequence {
    pub fn new(prefix: Vec<ExtOrdinal>, tail: Tail) -> Result<Self, Violation> {
        SuitableSequence::try_from(RawSequence::new(prefix, tail))
    }

    /// `(1, 1, 1, ...)`: the filter containing only the top point.
    pub fn ones() -> Self {
        SuitableSequence(RawSequence::new(Vec::new(), Tail::One))
    }

    /// The all-epsilon_0 sequence: the filter of all points.
    pub fn improper() -> Self {
        SuitableSequence(RawSequence::new(Vec::new(), Tail::EpsilonZero))
    }

    /// Sequence of the principal filter `{ q : p <= q }`, namely `p(i) + 1`.
    pub fn principal(p: &IgnatievPoint) -> Self {
        let prefix = p
            .coords()
            .iter()
            .map(|c| ExtOrdinal::Finite(c.succ()))
            .collect();
        SuitableSequence(RawSequence::new(prefix, Tail::One))
    }

    pub fn prefix(&self) -> &[ExtOrdinal] {
        &self.0.prefix
    }

    pub fn tail(&self) -> Tail {
        self.0.tail
    }

    pub fn coordinate(&self, i: usize) -> &ExtOrdinal {
        self.0.coordinate(i)
    }

    pub fn as_raw(&self) -> &RawSequence {
        &self.0
    }

    /// Membership of a point in the filter: every coordinate strictly below.
    pub fn contains(&self, p: &IgnatievPoint) -> bool {
        self.0.contains(p)
    }

    /// The sequence of the filter generated by `<n>` applied to this filter.
    ///
    /// Coordinates above `n` are 1. From `n` down to 0, with `next` the
    /// coordinate just computed:
    /// - `a(i)` if `ell(a(i)) >= next`;
    /// - `a(i) + w^next` if `next` is a limit;
    /// - `a(i) + w^d + 1` if `next = d + 1` and `ell(a(i)) < d`;
    /// - `a(i) + 1` if `next = d + 1` and `ell(a(i)) = d`.
    pub fn sigma(&self, n: usize) -> SuitableSequence {
        let mut prefix = vec![ExtOrdinal::zero(); n + 1];
        let mut next = ExtOrdinal::one();
        for i in (0..=n).rev() {
            let alpha = self.coordinate(i);
            let value = match alpha {
                _ if alpha.ell() >= next => alpha.clone(),
                ExtOrdinal::EpsilonZero => unreachable!("ell(e0) = e0 dominates"),
                ExtOrdinal::Finite(a) => match &next {
                    limit if limit.is_limit() => a.add_ext(&limit.omega_pow()),
                    ExtOrdinal::Finite(succ) => {
                        let delta = succ.pred().expect("nonzero non-limit");
                        if *a.ell() < delta {
                            let raised = a + &Ordinal::omega_pow(delta);
                            ExtOrdinal::Finite(raised.succ())
                        } else {
                            ExtOrdinal::Finite(a.succ())
                        }
                    }
                    ExtOrdinal::EpsilonZero => unreachable!("e0 is a limit"),
                },
            };
            prefix[i] = value.clone();
            next = value;
        }
        let mut raw = RawSequence::new(prefix, Tail::One);
        raw.canonicalize();
        debug_assert_eq!(is_suitable(&raw), Ok(()));
        SuitableSequence(raw)
    }
}

impl TryFrom<RawSequence> for SuitableSequence {
    type Error = Violation;

    fn try_from(mut raw: RawSequence) -> Result<Self, Self::Error> {
        raw.canonicalize();
        is_suitable(&raw)?;
        Ok(SuitableSequence(raw))
    }
}

/// `F R_n G`: every coordinate of `sigma_n(G)` up to `n` is at most the
/// matching coordinate of `F`. Beyond `n` the coordinates of `sigma_n(G)` are
/// 1, which every sequence dominates.
pub fn rel_r(n: usize, f: &SuitableSequence, g: &SuitableSequence) -> bool {
    let s = g.sigma(n);
    (0..=n).all(|i| s.coordinate(i) <= f.coordinate(i))
}

/// `F S_n G`: the first `n + 1` coordinates of `G` are at most those of `F`.
pub fn rel_s(n: usize, f: &SuitableSequence, g: &SuitableSequence) -> bool {
    (0..=n).all(|i| g.coordinate(i) <= f.coordinate(i))
}

/// `F` forces `a` iff the value of `a` belongs to `F`.
pub fn forces(f: &SuitableSequence, a: &Formula) -> bool {
    f.contains(&a.eval())
}

/// A filter `G` with `F R_n G` that forces `a`, when `F` forces `<n> a`. The
/// witness is the principal filter of the value of `a`.
pub fn witness_r(n: usize, f: &SuitableSequence, a: &Formula) -> Option<SuitableSequence> {
    let value = a.eval();
    f.contains(&value.diamond(n))
        .then(|| SuitableSequence::principal(&value))
}

impl fmt::Display for RawSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.prefix.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ";{}", self.tail)
    }
}

impl fmt::Display for SuitableSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for RawSequence {
    type Err = ParseError;

    /// `prefix;tail` where the prefix is a comma-separated list of extended
    /// ordinals (possibly empty) and the tail is `1` or `e0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let Some(split) = s.find(';') else {
            return Err(ParseError::new(s.len(), "expected ';' followed by a tail"));
        };
        let (head, rest) = (&s[..split], &s[split + 1..]);
        let tail = match rest.trim() {
            "1" => Tail::One,
            "e0" => Tail::EpsilonZero,
            _ => return Err(ParseError::new(split + 1, "tail must be 1 or e0")),
        };
        let mut prefix = Vec::new();
        if !head.trim().is_empty() {
            let mut offset = 0;
            for part in head.split(',') {
                prefix.push(part.parse::<ExtOrdinal>().map_err(|e| e.offset(offset))?);
                offset += part.len() + 1;
            }
        }
        Ok(RawSequence { prefix, tail })
    }
}

impl FromStr for SuitableSequence {
    type Err = FrameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(SuitableSequence::try_from(s.parse::<RawSequence>()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(s: &str) -> RawSequence {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> SuitableSequence {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> IgnatievPoint {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn suitability_examples() {
        assert_eq!(is_suitable(&raw("w;1")), Ok(()));
        assert_eq!(is_suitable(&raw("w,2;1")), Err(Violation::Bound(0)));
        assert_eq!(is_suitable(&raw("w+1,2;1")), Ok(()));
        assert_eq!(is_suitable(&raw("w+1,3;1")), Err(Violation::Bound(0)));
        assert_eq!(is_suitable(&raw("2,0;1")), Err(Violation::Zero(1)));
        assert_eq!(is_suitable(&raw(";e0")), Ok(()));
        assert_eq!(is_suitable(&raw("e0,w^w,3;1")), Ok(()));
        assert_eq!(is_suitable(&raw("w^w,e0;1")), Err(Violation::Bound(0)));
        assert_eq!(is_suitable(&raw("w;e0")), Err(Violation::Bound(0)));
        assert_eq!(is_suitable(&raw("2,2;1")), Err(Violation::Bound(0)));
        assert_eq!(is_suitable(&raw("w,1,1;1")), Ok(()));
    }

    #[test]
    fn canonical_form_drops_trailing_tail_values() {
        assert_eq!(seq("w,1,1;1").to_string(), "w;1");
        assert_eq!(seq("e0,e0;e0").to_string(), ";e0");
        assert_eq!(seq(";1"), SuitableSequence::ones());
        assert_eq!(seq("e0;1").to_string(), "e0;1");
    }

    #[test]
    fn parse_errors() {
        assert!("w,1".parse::<RawSequence>().is_err());
        assert!("w;2".parse::<RawSequence>().is_err());
        let err = "w,w+;1".parse::<RawSequence>().unwrap_err();
        assert_eq!(err.position, 4);
        assert!(matches!(
            "w,2;1".parse::<SuitableSequence>(),
            Err(FrameError::NotSuitable(Violation::Bound(0)))
        ));
    }

    #[test]
    fn principal_sequences() {
        assert_eq!(
            SuitableSequence::principal(&IgnatievPoint::top()),
            seq(";1")
        );
        assert_eq!(SuitableSequence::principal(&pt("w,1")), seq("w+1,2;1"));
        assert_eq!(SuitableSequence::principal(&pt("1")), seq("2;1"));
    }

    #[test]
    fn membership() {
        assert!(seq("w+1,2;1").contains(&pt("w,1")));
        assert!(!seq("w+1,2;1").contains(&pt("w*2")));
        assert!(!seq("w+1,2;1").contains(&pt("w,1").diamond(2)));
        for p in ["0", "w^(w^w),w^w,w,1", "5"] {
            assert!(SuitableSequence::improper().contains(&pt(p)));
        }
        assert!(seq(";1").contains(&IgnatievPoint::top()));
        assert!(!seq(";1").contains(&pt("1")));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(seq(";1").sigma(0), seq("2;1"));
        assert_eq!(seq(";1").sigma(1), seq("w+1,2;1"));
        assert_eq!(seq("e0,1;1").sigma(1), seq("e0,2;1"));
        assert_eq!(SuitableSequence::improper().sigma(1), seq("e0,e0;1"));
    }

    #[test]
    fn sigma_covers_every_case() {
        // next = 3 and ell(w^3) = 3: unchanged.
        assert_eq!(seq("w^3,2;1").sigma(1), seq("w^3,3;1"));
        // next = w is a limit above ell(w^w+1) = 0.
        assert_eq!(seq("w^w+1,w;1").sigma(1), seq("w^w*2,w;1"));
        // next = 4 = 3 + 1 and ell(w^w+1) = 0 < 3.
        assert_eq!(seq("w^w+1,3;1").sigma(1), seq("w^w+w^3+1,4;1"));
        // next = 2 = 1 + 1 and ell(w) = 1.
        assert_eq!(seq("w,1;1").sigma(1), seq("w+1,2;1"));
    }

    #[test]
    fn relation_examples() {
        assert!(rel_s(1, &seq("w+1,2;1"), &seq("w;1")));
        assert!(!rel_s(0, &seq("1;1"), &seq("2;1")));
        for s in ["w+1,2;1", ";1", ";e0", "e0,w;1"] {
            for n in 0..3 {
                assert!(rel_s(n, &seq(s), &seq(s)));
            }
        }
        assert!(rel_r(1, &seq("w+1,2;1"), &seq(";1")));
        assert!(!rel_r(0, &seq(";1"), &seq(";1")));
        for g in ["w+1,2;1", ";1", ";e0"] {
            assert!(rel_r(0, &SuitableSequence::improper(), &seq(g)));
        }
    }

    #[test]
    fn forcing_examples() {
        assert!(forces(&seq("2;1"), &f("D0 T")));
        assert!(forces(&seq(";1"), &Formula::Top));
        assert!(!forces(&seq(";1"), &f("D0 T")));
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            witness_r(1, &seq("w+1,2;1"), &Formula::Top),
            Some(SuitableSequence::ones())
        );
        assert_eq!(witness_r(0, &seq(";1"), &Formula::Top), None);
        assert_eq!(
            witness_r(0, &SuitableSequence::improper(), &Formula::Top),
            Some(SuitableSequence::ones())
        );
    }
}
