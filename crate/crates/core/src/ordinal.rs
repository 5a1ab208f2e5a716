//! Ordinals below epsilon_0 in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing sum `w^e1*c1 + ... + w^ek*ck` whose
//! exponents are themselves ordinals in the same form, so every value is
//! below epsilon_0 by construction. [`ExtOrdinal`] adds epsilon_0 itself as a
//! single top element; it never arises from arithmetic on plain ordinals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use thiserror::Error;

use crate::error::ParseError;

static ZERO: Ordinal = Ordinal::ZERO;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("{0} has no predecessor")]
    NoPredecessor(Ordinal),
    #[error("terms are not in Cantor normal form: {0}")]
    NotCanonical(&'static str),
}

/// One summand `w^exponent * coeff` of a Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coeff: u64,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coeff(&self) -> u64 {
        self.coeff
    }
}

/// An ordinal below epsilon_0. The empty sum is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { terms: Vec::new() };

    pub fn zero() -> Ordinal {
        Ordinal::default()
    }

    pub fn one() -> Ordinal {
        Ordinal::from_nat(1)
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::one())
    }

    pub fn from_nat(n: u64) -> Ordinal {
        if n == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent: Ordinal::zero(),
                coeff: n,
            }],
        }
    }

    /// `w^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Ordinal {
        Ordinal {
            terms: vec![Term { exponent, coeff: 1 }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs that must already
    /// be in Cantor normal form.
    pub fn from_cnf(terms: Vec<(Ordinal, u64)>) -> Result<Ordinal, OrdinalError> {
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(OrdinalError::NotCanonical("zero coefficient"));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(OrdinalError::NotCanonical(
                "exponents must strictly decrease",
            ));
        }
        Ok(Ordinal {
            terms: terms
                .into_iter()
                .map(|(exponent, coeff)| Term { exponent, coeff })
                .collect(),
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` when the ordinal is the natural number `n`.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    /// The end-part exponent: the least exponent of the normal form, with
    /// `ell(0) = 0`.
    pub fn ell(&self) -> &Ordinal {
        self.terms.last().map_or(&ZERO, |t| &t.exponent)
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.ell().is_zero()
    }

    pub fn is_successor(&self) -> bool {
        !self.is_zero() && self.ell().is_zero()
    }

    pub fn succ(&self) -> Ordinal {
        self + &Ordinal::one()
    }

    pub fn pred(&self) -> Result<Ordinal, OrdinalError> {
        if !self.is_successor() {
            return Err(OrdinalError::NoPredecessor(self.clone()));
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor is nonzero");
        if last.coeff == 1 {
            terms.pop();
        } else {
            last.coeff -= 1;
        }
        Ok(Ordinal { terms })
    }

    /// Splits a nonzero ordinal as `rest + w^ell(self)`, with `rest < self`.
    pub fn decompose_last(&self) -> Option<(Ordinal, &Ordinal)> {
        let last = self.terms.last()?;
        let mut terms = self.terms.clone();
        let tail = terms.last_mut().expect("nonzero");
        if tail.coeff == 1 {
            terms.pop();
        } else {
            tail.coeff -= 1;
        }
        Some((Ordinal { terms }, &last.exponent))
    }

    /// Ordinal sum. Terms of `self` below the leading exponent of `rhs` are
    /// absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exponent > head.exponent)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        if let Some(t) = self.terms.get(terms.len()) {
            if t.exponent == head.exponent {
                let coeff = t
                    .coeff
                    .checked_add(head.coeff)
                    .expect("coefficient overflow");
                terms.push(Term {
                    exponent: head.exponent.clone(),
                    coeff,
                });
                rest.next();
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// `self + epsilon_0` is epsilon_0; otherwise ordinary addition.
    pub fn add_ext(&self, rhs: &ExtOrdinal) -> ExtOrdinal {
        match rhs {
            ExtOrdinal::Finite(b) => ExtOrdinal::Finite(self.add(b)),
            ExtOrdinal::EpsilonZero => ExtOrdinal::EpsilonZero,
        }
    }

    /// The tower `w_i(a)`: `w_0(a) = a`, `w_{k+1}(a) = w^{w_k(a)}`.
    pub fn omega_tower(i: usize, a: Ordinal) -> Ordinal {
        (0..i).fold(a, |acc, _| Ordinal::omega_pow(acc))
    }

    /// Nesting depth of exponents. `0` and `1` have height 0; any other
    /// ordinal has height one more than the highest height among its exponents.
    pub fn height(&self) -> usize {
        if self.terms.is_empty() || *self == Ordinal::one() {
            return 0;
        }
        1 + self
            .terms
            .iter()
            .map(|t| t.exponent.height())
            .max()
            .unwrap_or(0)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then_with(|| a.coeff.cmp(&b.coeff));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Ordinal> for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        Ordinal::add(&self, &rhs)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::from_nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            f.write_str("w")?;
            if t.exponent != Ordinal::one() {
                f.write_str("^")?;
                if let Some(n) = t.exponent.as_nat() {
                    write!(f, "{n}")?;
                } else if t.exponent == Ordinal::omega() {
                    f.write_str("w")?;
                } else {
                    write!(f, "({})", t.exponent)?;
                }
            }
            if t.coeff > 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_literal(s, false)? {
            ExtOrdinal::Finite(a) => Ok(a),
            ExtOrdinal::EpsilonZero => unreachable!("e0 rejected by the parser"),
        }
    }
}

/// An ordinal below epsilon_0, or epsilon_0 itself.
///
/// Conventions: `ell(e0) = e0`, `e0` is a limit, `w^e0 = e0` and
/// `a + e0 = e0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtOrdinal {
    Finite(Ordinal),
    EpsilonZero,
}

impl ExtOrdinal {
    pub fn zero() -> ExtOrdinal {
        ExtOrdinal::Finite(Ordinal::zero())
    }

    pub fn one() -> ExtOrdinal {
        ExtOrdinal::Finite(Ordinal::one())
    }

    pub fn as_finite(&self) -> Option<&Ordinal> {
        match self {
            ExtOrdinal::Finite(a) => Some(a),
            ExtOrdinal::EpsilonZero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtOrdinal::Finite(a) if a.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        match self {
            ExtOrdinal::Finite(a) => a.is_limit(),
            ExtOrdinal::EpsilonZero => true,
        }
    }

    pub fn ell(&self) -> ExtOrdinal {
        match self {
            ExtOrdinal::Finite(a) => ExtOrdinal::Finite(a.ell().clone()),
            ExtOrdinal::EpsilonZero => ExtOrdinal::EpsilonZero,
        }
    }

    pub fn omega_pow(&self) -> ExtOrdinal {
        match self {
            ExtOrdinal::Finite(a) => ExtOrdinal::Finite(Ordinal::omega_pow(a.clone())),
            ExtOrdinal::EpsilonZero => ExtOrdinal::EpsilonZero,
        }
    }

    /// `self > a`, without building an `ExtOrdinal` for `a`.
    pub fn exceeds(&self, a: &Ordinal) -> bool {
        match self {
            ExtOrdinal::Finite(b) => b > a,
            ExtOrdinal::EpsilonZero => true,
        }
    }
}

impl From<Ordinal> for ExtOrdinal {
    fn from(a: Ordinal) -> Self {
        ExtOrdinal::Finite(a)
    }
}

impl PartialEq<Ordinal> for ExtOrdinal {
    fn eq(&self, other: &Ordinal) -> bool {
        matches!(self, ExtOrdinal::Finite(a) if a == other)
    }
}

impl PartialOrd<Ordinal> for ExtOrdinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(match self {
            ExtOrdinal::Finite(a) => a.cmp(other),
            ExtOrdinal::EpsilonZero => Ordering::Greater,
        })
    }
}

impl fmt::Display for ExtOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtOrdinal::Finite(a) => a.fmt(f),
            ExtOrdinal::EpsilonZero => f.write_str("e0"),
        }
    }
}

impl FromStr for ExtOrdinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_literal(s, true)
    }
}

fn parse_literal(s: &str, allow_e0: bool) -> Result<ExtOrdinal, ParseError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let value = p.sum(allow_e0)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(ParseError::new(p.pos, "unexpected character"));
    }
    Ok(value)
}

// ordinal := term ('+' term)* ; term := 'w' ('^' atom)? ('*' nat)? | nat | 'e0'
// atom := 'w' | nat | '(' ordinal ')'
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self, allow_e0: bool) -> Result<ExtOrdinal, ParseError> {
        let mut acc = ExtOrdinal::zero();
        loop {
            let start = self.pos;
            let term = self.term(allow_e0)?;
            acc = match (acc, term) {
                (acc, ExtOrdinal::Finite(t)) if t.is_zero() => acc,
                (ExtOrdinal::EpsilonZero, _) => {
                    return Err(ParseError::new(start, "no ordinal exceeds e0"))
                }
                (ExtOrdinal::Finite(a), t) => a.add_ext(&t),
            };
            if !self.eat(b'+') {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, allow_e0: bool) -> Result<ExtOrdinal, ParseError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exponent = if self.eat(b'^') {
                    self.atom()?
                } else {
                    Ordinal::one()
                };
                let coeff = if self.eat(b'*') { self.nat()? } else { 1 };
                let value = if coeff == 0 {
                    Ordinal::zero()
                } else {
                    Ordinal {
                        terms: vec![Term { exponent, coeff }],
                    }
                };
                Ok(ExtOrdinal::Finite(value))
            }
            Some(c) if c.is_ascii_digit() => Ok(ExtOrdinal::Finite(Ordinal::from_nat(self.nat()?))),
            Some(b'e') => {
                let start = self.pos;
                if self.src.get(start + 1) != Some(&b'0') {
                    return Err(ParseError::new(start, "expected e0"));
                }
                if !allow_e0 {
                    return Err(ParseError::new(start, "e0 is not allowed here"));
                }
                self.pos += 2;
                Ok(ExtOrdinal::EpsilonZero)
            }
            Some(_) => Err(ParseError::new(self.pos, "expected a term")),
            None => Err(ParseError::new(self.pos, "unexpected end of input")),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_nat(self.nat()?)),
            Some(b'(') => {
                self.pos += 1;
                let inner = match self.sum(false)? {
                    ExtOrdinal::Finite(a) => a,
                    ExtOrdinal::EpsilonZero => unreachable!(),
                };
                if !self.eat(b')') {
                    return Err(ParseError::new(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(ParseError::new(self.pos, "expected an exponent")),
            None => Err(ParseError::new(self.pos, "unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError::new(start, "number too large"))
    }
}
