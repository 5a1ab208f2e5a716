//! Points of the Ignatiev algebra.
//!
//! A point is a sequence of ordinals `(a0, a1, ...)` with `a(i+1) <= ell(a(i))`.
//! Below epsilon_0 such a sequence is eventually zero, so only the nonzero
//! prefix is stored. The all-zero sequence is the top element.
//!
//! The order is coordinatewise reverse: `p <= q` iff `p(i) >= q(i)` for all `i`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::ParseError;
use crate::ordinal::Ordinal;

static ZERO: Ordinal = Ordinal::ZERO;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("chain condition fails at index {index}: coordinate {} exceeds ell of coordinate {index}", .index + 1)]
    ChainViolation { index: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IgnatievPoint {
    coords: Vec<Ordinal>,
}

impl IgnatievPoint {
    /// Validates the chain condition. Trailing zeros are dropped.
    pub fn new(mut coords: Vec<Ordinal>) -> Result<Self, PointError> {
        while coords.last().is_some_and(Ordinal::is_zero) {
            coords.pop();
        }
        if let Some(index) = coords.windows(2).position(|w| w[1] > *w[0].ell()) {
            return Err(PointError::ChainViolation { index });
        }
        Ok(IgnatievPoint { coords })
    }

    pub fn top() -> Self {
        IgnatievPoint::default()
    }

    pub fn is_top(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Ordinal] {
        &self.coords
    }

    /// Coordinate `i`, zero beyond the support.
    pub fn coordinate(&self, i: usize) -> &Ordinal {
        self.coords.get(i).unwrap_or(&ZERO)
    }

    /// Number of nonzero coordinates.
    pub fn support(&self) -> usize {
        self.coords.len()
    }

    pub fn leq(&self, other: &IgnatievPoint) -> bool {
        other
            .coords
            .iter()
            .enumerate()
            .all(|(i, b)| self.coordinate(i) >= b)
    }

    /// Greatest lower bound. Working down from the top of the joint support,
    /// each coordinate is the larger of the two inputs, raised by
    /// `w^next` when its end-part is too small to carry the next coordinate.
    pub fn glb(&self, other: &IgnatievPoint) -> IgnatievPoint {
        let len = self.support().max(other.support());
        let mut coords = vec![Ordinal::zero(); len];
        let mut next = Ordinal::zero();
        for i in (0..len).rev() {
            let gamma = self.coordinate(i).max(other.coordinate(i));
            let value = if gamma.ell() >= &next {
                gamma.clone()
            } else {
                gamma + &Ordinal::omega_pow(next)
            };
            coords[i] = value.clone();
            next = value;
        }
        IgnatievPoint { coords }
    }

    /// `<n>`: coordinates above `n` become zero, and from `n` down to 0 each
    /// coordinate is `p(i) + w^(next)`.
    pub fn diamond(&self, n: usize) -> IgnatievPoint {
        let mut coords = vec![Ordinal::zero(); n + 1];
        let mut next = Ordinal::zero();
        for i in (0..=n).rev() {
            let value = self.coordinate(i) + &Ordinal::omega_pow(next);
            coords[i] = value.clone();
            next = value;
        }
        IgnatievPoint { coords }
    }

    /// Truncation after coordinate `n`.
    pub fn nabla(&self, n: usize) -> IgnatievPoint {
        IgnatievPoint {
            coords: self.coords.iter().take(n + 1).cloned().collect(),
        }
    }
}

impl fmt::Display for IgnatievPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for IgnatievPoint {
    type Err = PointError;

    /// Comma-separated ordinals; the empty string and `0` both denote the top.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(IgnatievPoint::top());
        }
        let mut coords = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let c = part.parse::<Ordinal>().map_err(|e| e.offset(offset))?;
            coords.push(c);
            offset += part.len() + 1;
        }
        IgnatievPoint::new(coords)
    }
}
