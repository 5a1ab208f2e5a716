//! Property sweeps comparing the algebra, the frame and the logic against the
//! brute-force references in [`crate::oracle`].
//!
//! Each check yields one report line, `PASS <name> cases=<n>` or
//! `FAIL <name> <counterexample>`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frame::{forces, is_suitable, rel_r, rel_s, witness_r, SuitableSequence, Tail};
use crate::logic::{entails, Formula};
use crate::oracle::{
    enumerate_sequences, random_formula, representable, sequences_over, ClosureReport,
    EnumerationBound, SupNotAttained, Universe,
};
use crate::ordinal::{ExtOrdinal, Ordinal};
use crate::point::IgnatievPoint;

/// Modal indices covered by the sweeps.
pub const INDICES: [usize; 3] = [0, 1, 2];

/// Seed for the sampled sweeps; fixed so reports are reproducible.
pub const SEED: u64 = 0x1617;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} cases={}", self.name, self.cases),
            Some(c) => write!(f, "FAIL {} {}", self.name, c),
        }
    }
}

// Counts cases and keeps the first counterexample.
struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failure: None,
        }
    }

    /// Records one case; returns false once a failure has been seen.
    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(counterexample());
        }
        self.failure.is_none()
    }

    fn done(self) -> Check {
        Check {
            name: self.name,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Glb,
    Sigma,
    Filters,
    Semantics,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "glb" => Ok(Suite::Glb),
            "sigma" => Ok(Suite::Sigma),
            "filters" => Ok(Suite::Filters),
            "semantics" => Ok(Suite::Semantics),
            "all" => Ok(Suite::All),
            _ => Err(format!(
                "unknown suite '{s}' (expected glb, sigma, filters, semantics or all)"
            )),
        }
    }
}

pub fn run(suite: Suite, bound: EnumerationBound) -> Report {
    let u = Universe::new(bound);
    let mut checks = Vec::new();
    if matches!(suite, Suite::Glb | Suite::All) {
        checks.extend([glb_oracle(&u), order_coherence(&u), modal_laws(&u)]);
    }
    if matches!(suite, Suite::Filters | Suite::All) {
        checks.extend([filter_closure(&u), principal_roundtrip(&u)]);
    }
    if matches!(suite, Suite::Sigma | Suite::All) {
        checks.extend([sigma_correctness(&u), relations(&u, SEED)]);
    }
    if matches!(suite, Suite::Semantics | Suite::All) {
        checks.extend([semantic_agreement(&u, SEED), completeness(&u, SEED)]);
    }
    Report { checks }
}

/// `glb` equals the brute-force meet on every enumerated pair whose meet is
/// enumerated, never exceeds it otherwise, and always yields a valid point.
pub fn glb_oracle(u: &Universe) -> Check {
    let mut t = Tally::new("glb-oracle");
    let pts = &u.points;
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate() {
            let g = p.glb(q);
            let valid = IgnatievPoint::new(g.coords().to_vec()).as_ref() == Ok(&g);
            let brute = u.brute_glb_at(i, j).map(|k| &pts[k]);
            let ok = valid
                && match (u.index_of(&g), &brute) {
                    (Some(_), Ok(b)) => **b == g,
                    (Some(_), Err(_)) => false,
                    (None, Ok(b)) => b.leq(&g),
                    (None, Err(_)) => true,
                };
            if !t.case(ok, || {
                let brute = brute.map_or_else(|e| e.to_string(), |b| b.to_string());
                format!("p={p} q={q} glb={g} brute={brute}")
            }) {
                return t.done();
            }
        }
    }
    t.done()
}

/// `p <= q` iff `glb(p, q) = p`.
pub fn order_coherence(u: &Universe) -> Check {
    let mut t = Tally::new("order-coherence");
    for p in &u.points {
        for q in &u.points {
            if !t.case(p.leq(q) == (p.glb(q) == *p), || format!("p={p} q={q}")) {
                return t.done();
            }
        }
    }
    t.done()
}

/// Monotonicity of `<n>` and `<n>(p & q) <= <n>p & <n>q`.
pub fn modal_laws(u: &Universe) -> Check {
    let mut t = Tally::new("modal-laws");
    for n in INDICES {
        let dia: Vec<IgnatievPoint> = u.points.iter().map(|p| p.diamond(n)).collect();
        for (i, p) in u.points.iter().enumerate() {
            for (j, q) in u.points.iter().enumerate() {
                let mono = !p.leq(q) || dia[i].leq(&dia[j]);
                let sub = p.glb(q).diamond(n).leq(&dia[i].glb(&dia[j]));
                if !t.case(mono && sub, || format!("n={n} p={p} q={q}")) {
                    return t.done();
                }
            }
        }
    }
    t.done()
}

/// Every principal sequence of an enumerated point passes the filter checks.
pub fn filter_closure(u: &Universe) -> Check {
    let mut t = Tally::new("filter-closure");
    for p in &u.points {
        let s = SuitableSequence::principal(p);
        let report = u.check_filter_closure(s.as_raw());
        if !t.case(report.passed(), || match report {
            ClosureReport::Fail {
                condition,
                counterexample,
            } => format!("seq={s} {condition} {counterexample}"),
            ClosureReport::Pass => unreachable!(),
        }) {
            return t.done();
        }
    }
    t.done()
}

/// Membership in the principal sequence of `p` is exactly `p <= q`.
pub fn principal_roundtrip(u: &Universe) -> Check {
    let mut t = Tally::new("principal-roundtrip");
    for p in &u.points {
        let s = SuitableSequence::principal(p);
        for q in &u.points {
            if !t.case(s.contains(q) == p.leq(q), || format!("p={p} q={q}")) {
                return t.done();
            }
        }
    }
    t.done()
}

/// `sigma` agrees with the supremum recursion where the enumeration
/// certifies it, bounds every enumerated element of each supremum, and
/// produces a suitable sequence with ones above `n`.
pub fn sigma_correctness(u: &Universe) -> Check {
    let mut t = Tally::new("sigma");
    let one = ExtOrdinal::one();
    for f in enumerate_sequences(&u.bound) {
        for n in INDICES {
            let s = f.sigma(n);
            let shape = is_suitable(s.as_raw()).is_ok()
                && s.tail() == Tail::One
                && (n + 1..n + 4).all(|i| *s.coordinate(i) == one);
            let certified = match u.brute_sup_sigma(n, &f) {
                Ok(nu) => nu.into_iter().enumerate().collect::<Vec<_>>(),
                Err(SupNotAttained { index, attained }) => {
                    (index + 1..).zip(attained).collect::<Vec<_>>()
                }
            };
            let agree = certified
                .iter()
                .all(|(i, v)| *s.coordinate(*i) == ExtOrdinal::Finite(v.clone()));
            let bounded = sup_upper_bound(u, n, &f, &s);
            let ok = shape && agree && bounded.is_none();
            if !t.case(ok, || {
                let why = bounded.unwrap_or_else(|| {
                    if shape {
                        "disagrees with oracle"
                    } else {
                        "bad shape"
                    }
                    .to_string()
                });
                format!("n={n} F={f} sigma={s} {why}")
            }) {
                return t.done();
            }
        }
    }
    t.done()
}

// Each enumerated g + w^d + 1 with g < F(i), d < sigma(i+1) lies at or below
// sigma(i).
fn sup_upper_bound(
    u: &Universe,
    n: usize,
    f: &SuitableSequence,
    s: &SuitableSequence,
) -> Option<String> {
    for i in 0..=n {
        let gammas: Vec<&Ordinal> = u
            .ordinals
            .iter()
            .filter(|g| f.coordinate(i).exceeds(g))
            .collect();
        for d in u.ordinals.iter().filter(|d| s.coordinate(i + 1).exceeds(d)) {
            let tail = Ordinal::omega_pow(d.clone()).succ();
            for g in &gammas {
                let v = *g + &tail;
                if s.coordinate(i) < &ExtOrdinal::Finite(v.clone()) {
                    return Some(format!("i={i} element {v} above bound"));
                }
            }
        }
    }
    None
}

/// `R_n` and `S_n` agree with their definitions through members: `F R_n G`
/// iff `<n>p` is in `F` for every enumerated `p` in `G`, and likewise for
/// `S_n` with truncation. Pairs are drawn from the representable
/// sequences, whose separating points lie within the bound; indices at or
/// beyond the support bound have no enumerated witnesses and are skipped.
pub fn relations(u: &Universe, seed: u64) -> Check {
    const PAIRS: usize = 2000;
    let mut t = Tally::new("relations");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seqs: Vec<SuitableSequence> = enumerate_sequences(&u.bound)
        .into_iter()
        .filter(|s| representable(s, &u.bound))
        .collect();
    for _ in 0..PAIRS {
        let f = seqs.choose(&mut rng).expect("nonempty");
        let g = seqs.choose(&mut rng).expect("nonempty");
        let members: Vec<&IgnatievPoint> = u.points.iter().filter(|p| g.contains(p)).collect();
        for n in INDICES.into_iter().filter(|&n| n < u.bound.max_support) {
            let r_def = members.iter().all(|p| f.contains(&p.diamond(n)));
            let s_def = members.iter().all(|p| f.contains(&p.nabla(n)));
            let ok = rel_r(n, f, g) == r_def && rel_s(n, f, g) == s_def;
            if !t.case(ok, || {
                format!(
                    "n={n} F={f} G={g} R={} by-members={r_def} S={} by-members={s_def}",
                    rel_r(n, f, g),
                    rel_s(n, f, g)
                )
            }) {
                return t.done();
            }
        }
    }
    t.done()
}

const FORMULAS: usize = 240;
const SAMPLED_FILTERS: usize = 60;

fn sample(u: &Universe, seed: u64) -> (Vec<Formula>, Vec<SuitableSequence>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let formulas = (0..FORMULAS)
        .map(|_| random_formula(&mut rng, 4, 2))
        .collect();
    let all = sequences_over(&u.ordinals, u.bound.max_support);
    let mut filters: Vec<SuitableSequence> = all
        .choose_multiple(&mut rng, SAMPLED_FILTERS)
        .cloned()
        .collect();
    filters.push(SuitableSequence::ones());
    filters.push(SuitableSequence::improper());
    (formulas, filters)
}

/// `F` forces `<n>A` iff `witness_r` returns some `G` with `F R_n G` forcing
/// `A`; and any sampled `G` with `F R_n G` forcing `A` implies `F` forces
/// `<n>A`.
pub fn semantic_agreement(u: &Universe, seed: u64) -> Check {
    let mut t = Tally::new("semantic-agreement");
    let (formulas, sampled) = sample(u, seed);
    for a in &formulas {
        let value = a.eval();
        for n in INDICES {
            let da = Formula::dia(n, a.clone());
            let mut filters = sampled.clone();
            filters.push(SuitableSequence::principal(&value));
            filters.push(SuitableSequence::principal(&value.diamond(n)));
            let related: Vec<(&SuitableSequence, bool)> =
                filters.iter().map(|g| (g, forces(g, a))).collect();
            for f in &filters {
                let forced = forces(f, &da);
                let witness = witness_r(n, f, a);
                let valid = witness
                    .as_ref()
                    .is_some_and(|g| rel_r(n, f, g) && forces(g, a));
                let sound = related
                    .iter()
                    .all(|(g, ga)| !ga || !rel_r(n, f, g) || forced);
                let ok = forced == valid && sound;
                if !t.case(ok, || {
                    format!("n={n} A={a} F={f} forces={forced} witness={witness:?} sound={sound}")
                }) {
                    return t.done();
                }
            }
        }
    }
    t.done()
}

/// `A` entails `B` iff no sampled filter forces `A` without forcing `B`; the
/// principal filter of the value of `A` is always among the samples.
pub fn completeness(u: &Universe, seed: u64) -> Check {
    let mut t = Tally::new("completeness");
    let (formulas, filters) = sample(u, seed ^ 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
    let mut pairs: Vec<(Formula, Formula)> = formulas
        .chunks(2)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect();
    // Entailed pairs, so both answers are exercised.
    for a in formulas.iter().take(FORMULAS / 2) {
        let n = rng.gen_range(0..3);
        let m = rng.gen_range(0..=n);
        let c = &formulas[rng.gen_range(0..FORMULAS)];
        let rhs = match rng.gen_range(0..3) {
            0 => (Formula::and(a.clone(), c.clone()), a.clone()),
            1 => (
                Formula::dia(n, Formula::dia(n, a.clone())),
                Formula::dia(n, a.clone()),
            ),
            _ => (Formula::dia(n, a.clone()), Formula::dia(m, a.clone())),
        };
        pairs.push(rhs);
    }
    for (a, b) in &pairs {
        let mut candidates = filters.clone();
        candidates.push(SuitableSequence::principal(&a.eval()));
        let counter = candidates.iter().find(|f| forces(f, a) && !forces(f, b));
        let ok = entails(a, b) == counter.is_none();
        if !t.case(ok, || {
            format!("A={a} B={b} entails={} counter={counter:?}", entails(a, b))
        }) {
            return t.done();
        }
    }
    t.done()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Universe {
        Universe::new(EnumerationBound::new(1, 2, 2, 2).unwrap())
    }

    #[test]
    fn suites_pass_on_a_small_bound() {
        let report = run(Suite::All, EnumerationBound::new(1, 2, 2, 2).unwrap());
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 9);
    }

    #[test]
    fn report_format() {
        let c = Check {
            name: "x",
            cases: 3,
            failure: None,
        };
        assert_eq!(c.to_string(), "PASS x cases=3");
        let c = Check {
            name: "x",
            cases: 3,
            failure: Some("p=1".into()),
        };
        assert_eq!(c.to_string(), "FAIL x p=1");
    }

    #[test]
    fn suite_names() {
        assert_eq!("sigma".parse(), Ok(Suite::Sigma));
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn relation_sweep_meets_pair_count() {
        assert!(relations(&small(), SEED).cases >= 500 * 2);
    }
}
