//! Bounded enumeration of ordinals, points and suitable sequences, and
//! brute-force reference computations over the enumerated sets.
//!
//! Nothing here calls the operation it is a reference for: `brute_glb` scans
//! common lower bounds using only the order, and `brute_sup_sigma` evaluates
//! the defining suprema directly with ordinal addition.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::Rng;
use thiserror::Error;

use crate::frame::{admissible_successor, RawSequence, SuitableSequence, Tail};
use crate::logic::Formula;
use crate::ordinal::{ExtOrdinal, Ordinal};
use crate::point::IgnatievPoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("every bound parameter must be at least 1")]
    InvalidBound,
    #[error("common lower bounds have no greatest element within the bound")]
    NoMaximum,
}

/// A supremum in the sigma recursion whose value the enumeration cannot
/// certify. Carries the coordinates above `index` that were certified.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("supremum at coordinate {index} is not attained within the bound")]
pub struct SupNotAttained {
    pub index: usize,
    pub attained: Vec<Ordinal>,
}

/// Limits on the enumerated ordinals and points.
///
/// Height 0 holds `0` and `1`; an ordinal of height `h` has at most
/// `max_terms` terms, coefficients at most `max_coeff`, and exponents of
/// height below `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBound {
    pub max_height: usize,
    pub max_terms: usize,
    pub max_coeff: u64,
    pub max_support: usize,
}

impl EnumerationBound {
    pub fn new(
        max_height: usize,
        max_terms: usize,
        max_coeff: u64,
        max_support: usize,
    ) -> Result<Self, OracleError> {
        if max_height == 0 || max_terms == 0 || max_coeff == 0 || max_support == 0 {
            return Err(OracleError::InvalidBound);
        }
        Ok(EnumerationBound {
            max_height,
            max_terms,
            max_coeff,
            max_support,
        })
    }
}

impl Default for EnumerationBound {
    /// 163 ordinals and 661 points: the largest bound at which the cubic
    /// brute-force meet sweep finishes in a few seconds.
    fn default() -> Self {
        EnumerationBound {
            max_height: 2,
            max_terms: 2,
            max_coeff: 2,
            max_support: 3,
        }
    }
}

impl fmt::Display for EnumerationBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "height {} terms {} coeff {} support {}",
            self.max_height, self.max_terms, self.max_coeff, self.max_support
        )
    }
}

/// All ordinals within the bound, strictly increasing.
pub fn enumerate_ordinals(b: &EnumerationBound) -> Vec<Ordinal> {
    let mut level = vec![Ordinal::zero(), Ordinal::one()];
    for _ in 0..b.max_height {
        let mut exponents = level;
        exponents.reverse();
        let mut next = vec![Ordinal::zero()];
        let mut chosen = Vec::new();
        extend_sums(&exponents, b.max_terms, b.max_coeff, &mut chosen, &mut next);
        next.sort();
        level = next;
    }
    level
}

// Sums of distinct exponents taken in the given (decreasing) order, each
// with every coefficient up to `max_coeff`.
fn extend_sums(
    exponents: &[Ordinal],
    terms_left: usize,
    max_coeff: u64,
    chosen: &mut Vec<(Ordinal, u64)>,
    out: &mut Vec<Ordinal>,
) {
    if terms_left == 0 {
        return;
    }
    for (k, e) in exponents.iter().enumerate() {
        for c in 1..=max_coeff {
            chosen.push((e.clone(), c));
            out.push(Ordinal::from_cnf(chosen.clone()).expect("decreasing exponents"));
            extend_sums(&exponents[k + 1..], terms_left - 1, max_coeff, chosen, out);
            chosen.pop();
        }
    }
}

/// All points with support at most `max_support` whose coordinates are
/// enumerated ordinals, in lexicographic order. The top point comes first.
pub fn enumerate_points(b: &EnumerationBound) -> Vec<IgnatievPoint> {
    points_over(&enumerate_ordinals(b), b.max_support)
}

pub fn points_over(ordinals: &[Ordinal], max_support: usize) -> Vec<IgnatievPoint> {
    fn go(
        ordinals: &[Ordinal],
        max_support: usize,
        prefix: &mut Vec<Ordinal>,
        out: &mut Vec<IgnatievPoint>,
    ) {
        if prefix.len() == max_support {
            return;
        }
        for a in ordinals.iter().filter(|a| !a.is_zero()) {
            if prefix.last().is_some_and(|last| a > last.ell()) {
                continue;
            }
            prefix.push(a.clone());
            out.push(IgnatievPoint::new(prefix.clone()).expect("chain checked"));
            go(ordinals, max_support, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![IgnatievPoint::top()];
    go(ordinals, max_support, &mut Vec::new(), &mut out);
    out
}

/// Canonical suitable sequences with tail 1 whose prefix has length at most
/// `max_support` and consists of epsilon_0 entries followed by enumerated
/// ordinals, together with the improper filter.
pub fn enumerate_sequences(b: &EnumerationBound) -> Vec<SuitableSequence> {
    sequences_over(&enumerate_ordinals(b), b.max_support)
}

pub fn sequences_over(ordinals: &[Ordinal], max_support: usize) -> Vec<SuitableSequence> {
    let mut alphabet = vec![ExtOrdinal::EpsilonZero];
    // A prefix entry 1 forces ones afterwards, which the canonical form drops.
    alphabet.extend(
        ordinals
            .iter()
            .filter(|a| !a.is_zero() && **a != Ordinal::one())
            .cloned()
            .map(ExtOrdinal::Finite),
    );
    fn go(
        alphabet: &[ExtOrdinal],
        max_support: usize,
        prefix: &mut Vec<ExtOrdinal>,
        out: &mut Vec<SuitableSequence>,
    ) {
        if prefix.len() == max_support {
            return;
        }
        for a in alphabet {
            if prefix
                .last()
                .is_some_and(|last| !admissible_successor(last, a))
            {
                continue;
            }
            prefix.push(a.clone());
            out.push(
                SuitableSequence::new(prefix.clone(), Tail::One).expect("suitable by construction"),
            );
            go(alphabet, max_support, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![SuitableSequence::ones(), SuitableSequence::improper()];
    go(&alphabet, max_support, &mut Vec::new(), &mut out);
    out
}

/// A random formula of depth at most `depth` with modal indices up to `max_index`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, depth: usize, max_index: usize) -> Formula {
    if depth == 0 {
        return Formula::Top;
    }
    match rng.gen_range(0..7) {
        0 => Formula::Top,
        1 | 2 => Formula::and(
            random_formula(rng, depth - 1, max_index),
            random_formula(rng, depth - 1, max_index),
        ),
        3..=5 => Formula::dia(
            rng.gen_range(0..=max_index),
            random_formula(rng, depth - 1, max_index),
        ),
        _ => Formula::nabla(
            rng.gen_range(0..=max_index),
            random_formula(rng, depth - 1, max_index),
        ),
    }
}

/// Whether every finite coordinate `i` of `seq` has height at most
/// `max_height - i`. Members of such a sequence near its boundary, and the
/// points separating it from other such sequences, are then enumerated: a
/// point with coordinate `a` at index `i` needs a coordinate of height about
/// `height(a) + i` at index 0.
pub fn representable(seq: &SuitableSequence, b: &EnumerationBound) -> bool {
    seq.prefix().iter().enumerate().all(|(i, c)| match c {
        ExtOrdinal::Finite(a) => a.height() + i <= b.max_height,
        ExtOrdinal::EpsilonZero => true,
    })
}

/// A random ordinal of height at most `height`, with up to three terms and
/// occasionally large coefficients.
pub fn random_ordinal<R: Rng + ?Sized>(rng: &mut R, height: usize) -> Ordinal {
    if height == 0 {
        return Ordinal::from_nat(rng.gen_range(0..2));
    }
    let mut exponents: Vec<Ordinal> = (0..rng.gen_range(0..=3))
        .map(|_| random_ordinal(rng, height - 1))
        .collect();
    exponents.sort_by(|a, b| b.cmp(a));
    exponents.dedup();
    let terms = exponents
        .into_iter()
        .map(|e| {
            let c = if rng.gen_ratio(1, 10) {
                rng.gen_range(1..100_000)
            } else {
                rng.gen_range(1..=3)
            };
            (e, c)
        })
        .collect();
    Ordinal::from_cnf(terms).expect("sorted distinct exponents")
}

// A random nonzero ordinal satisfying `accept`, or `fallback` after a few tries.
fn pick<R: Rng + ?Sized>(
    rng: &mut R,
    height: usize,
    accept: impl Fn(&Ordinal) -> bool,
    fallback: Ordinal,
) -> Ordinal {
    (0..8)
        .map(|_| random_ordinal(rng, height))
        .find(|a| !a.is_zero() && accept(a))
        .unwrap_or(fallback)
}

/// A random point with coordinates of height at most `height`.
pub fn random_point<R: Rng + ?Sized>(
    rng: &mut R,
    height: usize,
    max_support: usize,
) -> IgnatievPoint {
    let mut coords: Vec<Ordinal> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_support) {
        let next = match coords.last() {
            None => pick(rng, height, |_| true, Ordinal::one()),
            Some(prev) => {
                let ell = prev.ell().clone();
                if ell.is_zero() {
                    break;
                }
                pick(rng, height, |a| *a <= ell, ell.clone())
            }
        };
        coords.push(next);
    }
    IgnatievPoint::new(coords).expect("chain respected")
}

/// A random suitable sequence: occasionally improper, otherwise a few
/// epsilon_0 entries followed by an admissible finite chain and tail 1.
pub fn random_sequence<R: Rng + ?Sized>(
    rng: &mut R,
    height: usize,
    max_len: usize,
) -> SuitableSequence {
    if rng.gen_ratio(1, 10) {
        return SuitableSequence::improper();
    }
    let mut prefix = vec![ExtOrdinal::EpsilonZero; rng.gen_range(0..=2)];
    for _ in 0..rng.gen_range(0..=max_len) {
        let prev = prefix.last().cloned();
        let ok = |a: &Ordinal| {
            prev.as_ref()
                .is_none_or(|p| admissible_successor(p, &ExtOrdinal::Finite(a.clone())))
        };
        let a = pick(rng, height, ok, Ordinal::zero());
        if a.is_zero() {
            break;
        }
        prefix.push(ExtOrdinal::Finite(a));
    }
    SuitableSequence::new(prefix, Tail::One).expect("chain respected")
}

/// Which filter condition a [`ClosureReport`] failed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureCondition {
    /// Every projection is nonempty.
    Positive,
    /// Projections are closed downward.
    Downward,
    /// `a` in projection `i`, `b` in projection `i+1`, `ell(a) < b` gives
    /// `a + w^b` in projection `i`.
    OmegaSum,
    /// The top point is a member.
    Top,
    /// Members are closed upward.
    Upward,
    /// Members are closed under meets.
    Meet,
}

impl fmt::Display for ClosureCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureCondition::Positive => "positive",
            ClosureCondition::Downward => "downward",
            ClosureCondition::OmegaSum => "omega-sum",
            ClosureCondition::Top => "top",
            ClosureCondition::Upward => "upward",
            ClosureCondition::Meet => "meet",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureReport {
    Pass,
    Fail {
        condition: ClosureCondition,
        counterexample: String,
    },
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        matches!(self, ClosureReport::Pass)
    }
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureReport::Pass => f.write_str("PASS"),
            ClosureReport::Fail {
                condition,
                counterexample,
            } => write!(f, "FAIL {condition} {counterexample}"),
        }
    }
}

/// The enumerated ordinals and points for one bound, shared by the
/// brute-force references. `below[i]` holds the indices of points `<= points[i]`
/// and `above[i]` those `>= points[i]`.
#[derive(Debug, Clone)]
pub struct Universe {
    pub bound: EnumerationBound,
    pub ordinals: Vec<Ordinal>,
    pub points: Vec<IgnatievPoint>,
    index: HashMap<IgnatievPoint, usize>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl Universe {
    pub fn new(bound: EnumerationBound) -> Self {
        let ordinals = enumerate_ordinals(&bound);
        let points = points_over(&ordinals, bound.max_support);
        let n = points.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (i, p) in points.iter().enumerate() {
            for (j, q) in points.iter().enumerate() {
                if q.leq(p) {
                    below[i].insert(j);
                    above[j].insert(i);
                }
            }
        }
        let index = points.iter().cloned().zip(0..).collect();
        Universe {
            bound,
            ordinals,
            points,
            index,
            below,
            above,
        }
    }

    /// Position of `p` in `points`, if it is enumerated.
    pub fn index_of(&self, p: &IgnatievPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The greatest enumerated point below both `p` and `q`.
    pub fn brute_glb(
        &self,
        p: &IgnatievPoint,
        q: &IgnatievPoint,
    ) -> Result<IgnatievPoint, OracleError> {
        let mut candidates = FixedBitSet::with_capacity(self.points.len());
        for (k, r) in self.points.iter().enumerate() {
            if r.leq(p) && r.leq(q) {
                candidates.insert(k);
            }
        }
        self.greatest(&candidates).map(|k| self.points[k].clone())
    }

    /// [`Universe::brute_glb`] for two enumerated points, by index.
    pub fn brute_glb_at(&self, i: usize, j: usize) -> Result<usize, OracleError> {
        let mut candidates = self.below[i].clone();
        candidates.intersect_with(&self.below[j]);
        self.greatest(&candidates)
    }

    fn greatest(&self, candidates: &FixedBitSet) -> Result<usize, OracleError> {
        let mut ones = candidates.ones();
        let mut best = ones.next().ok_or(OracleError::NoMaximum)?;
        for k in ones {
            if self.points[best].leq(&self.points[k]) {
                best = k;
            }
        }
        if candidates.is_subset(&self.below[best]) {
            Ok(best)
        } else {
            Err(OracleError::NoMaximum)
        }
    }

    /// Coordinates `0..=n` of the filter generated by `<n>` applied to `f`,
    /// each computed as `sup { g + w^d + 1 : g < f(i), d < next }` over the
    /// enumerated `g` and `d`. A supremum is certified only when both ranges
    /// contain their top element (so the set has a maximum, and it is
    /// enumerated).
    pub fn brute_sup_sigma(
        &self,
        n: usize,
        f: &SuitableSequence,
    ) -> Result<Vec<Ordinal>, SupNotAttained> {
        let mut nu = vec![Ordinal::zero(); n + 2];
        nu[n + 1] = Ordinal::one();
        for i in (0..=n).rev() {
            let alpha = f.coordinate(i);
            let next = &nu[i + 1];
            let gammas: Vec<&Ordinal> = self.ordinals.iter().filter(|g| alpha.exceeds(g)).collect();
            let deltas: Vec<&Ordinal> = self.ordinals.iter().filter(|d| *d < next).collect();
            let gamma_top = gammas.iter().any(|g| *alpha == g.succ());
            let delta_top = deltas.iter().any(|d| d.succ() == *next);
            if !(gamma_top && delta_top) {
                return Err(SupNotAttained {
                    index: i,
                    attained: nu[i + 1..=n].to_vec(),
                });
            }
            let powers: Vec<Ordinal> = deltas
                .iter()
                .map(|d| Ordinal::omega_pow((*d).clone()).succ())
                .collect();
            let best = gammas
                .iter()
                .flat_map(|g| powers.iter().map(move |w| *g + w))
                .max()
                .expect("ranges are nonempty");
            nu[i] = best;
        }
        nu.truncate(n + 1);
        Ok(nu)
    }

    /// Checks that `seq` describes a filter: the projection conditions on
    /// the coordinate sets `[0, a(i))` restricted to enumerated ordinals, and
    /// the filter axioms on the enumerated member points.
    pub fn check_filter_closure(&self, seq: &RawSequence) -> ClosureReport {
        let fail = |condition, counterexample: String| ClosureReport::Fail {
            condition,
            counterexample,
        };
        let indices = 0..=seq.prefix.len() + 1;
        for i in indices.clone() {
            if seq.coordinate(i).is_zero() {
                return fail(ClosureCondition::Positive, format!("i={i}"));
            }
        }
        for i in indices.clone() {
            let bound = seq.coordinate(i);
            let mut outside: Option<&Ordinal> = None;
            for a in &self.ordinals {
                match (bound.exceeds(a), outside) {
                    (true, Some(b)) => {
                        return fail(ClosureCondition::Downward, format!("i={i} a={a} b={b}"))
                    }
                    (false, None) => outside = Some(a),
                    _ => {}
                }
            }
        }
        for i in indices {
            let here = seq.coordinate(i);
            let above = seq.coordinate(i + 1);
            for a in self.ordinals.iter().filter(|a| here.exceeds(a)) {
                for b in self.ordinals.iter().filter(|b| above.exceeds(b)) {
                    if a.ell() < b && !here.exceeds(&(a + &Ordinal::omega_pow(b.clone()))) {
                        return fail(ClosureCondition::OmegaSum, format!("i={i} a={a} b={b}"));
                    }
                }
            }
        }
        if !seq.contains(&IgnatievPoint::top()) {
            return fail(ClosureCondition::Top, String::new());
        }
        let mut members = FixedBitSet::with_capacity(self.points.len());
        for (k, p) in self.points.iter().enumerate() {
            members.set(k, seq.contains(p));
        }
        for m in members.ones() {
            if let Some(q) = self.above[m].difference(&members).next() {
                let p = &self.points[m];
                let q = &self.points[q];
                return fail(ClosureCondition::Upward, format!("p={p} q={q}"));
            }
        }
        let list: Vec<usize> = members.ones().collect();
        for (k, &a) in list.iter().enumerate() {
            for &b in &list[k + 1..] {
                let (p, q) = (&self.points[a], &self.points[b]);
                if !seq.contains(&p.glb(q)) {
                    return fail(ClosureCondition::Meet, format!("p={p} q={q}"));
                }
            }
        }
        ClosureReport::Pass
    }
}
