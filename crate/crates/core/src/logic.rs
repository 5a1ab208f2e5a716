//! Variable-free strictly positive formulas over `T`, `&`, `Dn` and `Nn`.
//!
//! Formulas are evaluated in the Ignatiev algebra, and entailment is the
//! algebra's order on the values.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::point::IgnatievPoint;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    And(Box<Formula>, Box<Formula>),
    Dia(usize, Box<Formula>),
    Nabla(usize, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn dia(n: usize, a: Formula) -> Formula {
        Formula::Dia(n, Box::new(a))
    }

    pub fn nabla(n: usize, a: Formula) -> Formula {
        Formula::Nabla(n, Box::new(a))
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Top => 0,
            Formula::And(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Dia(_, a) | Formula::Nabla(_, a) => 1 + a.depth(),
        }
    }

    pub fn eval(&self) -> IgnatievPoint {
        match self {
            Formula::Top => IgnatievPoint::top(),
            Formula::And(a, b) => a.eval().glb(&b.eval()),
            Formula::Dia(n, a) => a.eval().diamond(*n),
            Formula::Nabla(n, a) => a.eval().nabla(*n),
        }
    }
}

/// `a` entails `b` iff the value of `a` lies below the value of `b`.
pub fn entails(a: &Formula, b: &Formula) -> bool {
    a.eval().leq(&b.eval())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("T"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Dia(n, a) => write!(f, "D{n} {a}"),
            Formula::Nabla(n, a) => write!(f, "N{n} {a}"),
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let formula = p.conj()?;
        if p.peek().is_some() {
            return Err(ParseError::new(p.pos, "unexpected trailing input"));
        }
        Ok(formula)
    }
}

// formula := conj ; conj := unary ('&' unary)*
// unary := 'T' | '(' formula ')' | 'D' nat unary | 'N' nat unary
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.conj()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::new(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(op @ (b'D' | b'N')) => {
                self.pos += 1;
                let n = self.nat()?;
                let sub = self.unary()?;
                Ok(if op == b'D' {
                    Formula::dia(n, sub)
                } else {
                    Formula::nabla(n, sub)
                })
            }
            Some(_) => Err(ParseError::new(self.pos, "expected T, (, D or N")),
            None => Err(ParseError::new(self.pos, "unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        self.peek();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a modal index"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError::new(start, "modal index too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> IgnatievPoint {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(f("D1 T"), Formula::dia(1, Formula::Top));
        assert_eq!(
            f("D0 (T & N2 D1 T)"),
            Formula::dia(
                0,
                Formula::and(
                    Formula::Top,
                    Formula::nabla(2, Formula::dia(1, Formula::Top))
                )
            )
        );
        let err = "D T".parse::<Formula>().unwrap_err();
        assert_eq!(err.position, 2);
    }

    #[test]
    fn conjunction_is_left_associative_and_binds_loosest() {
        assert_eq!(
            f("T & T & D0 T"),
            Formula::and(
                Formula::and(Formula::Top, Formula::Top),
                Formula::dia(0, Formula::Top)
            )
        );
        assert_eq!(
            f("D0 T & T"),
            Formula::and(Formula::dia(0, Formula::Top), Formula::Top)
        );
        assert_eq!(f(" D 3 T "), f("D3 T"));
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<Formula>().is_err());
        assert!("(T & T".parse::<Formula>().is_err());
        assert!("T T".parse::<Formula>().is_err());
        assert!("D1".parse::<Formula>().is_err());
        assert!("X".parse::<Formula>().is_err());
        assert!("D99999999999999999999999 T".parse::<Formula>().is_err());
    }

    #[test]
    fn print_examples() {
        assert_eq!(Formula::dia(1, Formula::Top).to_string(), "D1 T");
        assert_eq!(
            Formula::and(Formula::Top, Formula::Top).to_string(),
            "(T & T)"
        );
        assert_eq!(
            Formula::nabla(0, Formula::dia(1, Formula::Top)).to_string(),
            "N0 D1 T"
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Formula::Top.eval(), IgnatievPoint::top());
        assert_eq!(f("D1 T").eval(), pt("w,1"));
        assert_eq!(f("N0 D1 T").eval(), pt("w"));
        assert_eq!(f("D0 D0 T").eval(), pt("2"));
        assert_eq!(f("D1 T & D0 D1 T").eval(), pt("w*2,1"));
    }

    #[test]
    fn entailment_examples() {
        assert!(entails(&f("D0 D0 T"), &f("D0 T")));
        assert!(!entails(&f("D0 T"), &f("D1 T")));
        assert!(entails(&f("D1 T"), &f("N0 D1 T")));
        assert!(!entails(&f("N0 D1 T"), &f("D1 T")));
        assert!(entails(&f("D1 T"), &f("D0 T")));
    }
}
