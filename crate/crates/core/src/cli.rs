//! Command-line front end.
//!
//! Decision commands print `yes` or `no` and exit 0 or 1. Parse and
//! validation errors go to the error stream with exit code 2.

use std::fmt::Display;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::frame::{forces, is_suitable, rel_r, rel_s, RawSequence, SuitableSequence};
use crate::logic::{entails, Formula};
use crate::oracle::EnumerationBound;
use crate::point::IgnatievPoint;
use crate::verify::{self, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "ignatiev",
    version,
    about = "Ignatiev algebra, its frame of filters, and closed formulas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of a formula, as a point
    Eval { formula: String },
    /// Whether A entails B
    Entails { a: String, b: String },
    /// Meet of two points
    Glb { p: String, q: String },
    /// The sequence sigma_n of a suitable sequence
    Sigma { n: usize, seq: String },
    /// Whether a sequence is suitable; prints the first violating index if not
    Suitable { seq: String },
    /// Frame relation R<n> or S<n> between two suitable sequences
    Rel {
        relation: String,
        f: String,
        g: String,
    },
    /// Whether a suitable sequence forces a formula
    Forces { seq: String, formula: String },
    /// Brute-force property sweeps
    Verify {
        #[arg(long, default_value_t = 2)]
        height: usize,
        #[arg(long, default_value_t = 2)]
        terms: usize,
        #[arg(long, default_value_t = 2)]
        coeff: u64,
        #[arg(long, default_value_t = 3)]
        support: usize,
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

enum Relation {
    R(usize),
    S(usize),
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected R<n> or S<n>, got '{s}'");
        let (kind, n) = s.split_at_checked(1).ok_or_else(bad)?;
        let n = n.parse().map_err(|_| bad())?;
        match kind {
            "R" => Ok(Relation::R(n)),
            "S" => Ok(Relation::S(n)),
            _ => Err(bad()),
        }
    }
}

fn parse<T>(what: &str, s: &str) -> Result<T, String>
where
    T: FromStr,
    T::Err: Display,
{
    s.parse().map_err(|e| format!("invalid {what} '{s}': {e}"))
}

enum Outcome {
    Text(String),
    Decision(bool),
    Report(verify::Report),
}

fn execute(command: Command) -> Result<Outcome, String> {
    Ok(match command {
        Command::Eval { formula } => {
            Outcome::Text(parse::<Formula>("formula", &formula)?.eval().to_string())
        }
        Command::Entails { a, b } => {
            let a: Formula = parse("formula", &a)?;
            let b: Formula = parse("formula", &b)?;
            Outcome::Decision(entails(&a, &b))
        }
        Command::Glb { p, q } => {
            let p: IgnatievPoint = parse("point", &p)?;
            let q: IgnatievPoint = parse("point", &q)?;
            Outcome::Text(p.glb(&q).to_string())
        }
        Command::Sigma { n, seq } => {
            let f: SuitableSequence = parse("sequence", &seq)?;
            Outcome::Text(f.sigma(n).to_string())
        }
        Command::Suitable { seq } => {
            let raw: RawSequence = parse("sequence", &seq)?;
            Outcome::Text(match is_suitable(&raw) {
                Ok(()) => "yes".into(),
                Err(v) => format!("no {}", v.index()),
            })
        }
        Command::Rel { relation, f, g } => {
            let relation: Relation = relation.parse()?;
            let f: SuitableSequence = parse("sequence", &f)?;
            let g: SuitableSequence = parse("sequence", &g)?;
            Outcome::Decision(match relation {
                Relation::R(n) => rel_r(n, &f, &g),
                Relation::S(n) => rel_s(n, &f, &g),
            })
        }
        Command::Forces { seq, formula } => {
            let f: SuitableSequence = parse("sequence", &seq)?;
            let a: Formula = parse("formula", &formula)?;
            Outcome::Decision(forces(&f, &a))
        }
        Command::Verify {
            height,
            terms,
            coeff,
            support,
            suite,
        } => {
            let bound =
                EnumerationBound::new(height, terms, coeff, support).map_err(|e| e.to_string())?;
            Outcome::Report(verify::run(suite, bound))
        }
    })
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let written = match execute(cli.command) {
        Ok(Outcome::Text(s)) => writeln!(out, "{s}").map(|_| 0),
        Ok(Outcome::Decision(yes)) => {
            writeln!(out, "{}", if yes { "yes" } else { "no" }).map(|_| if yes { 0 } else { 1 })
        }
        Ok(Outcome::Report(r)) => write!(out, "{r}").map(|_| if r.passed() { 0 } else { 1 }),
        Err(msg) => writeln!(err, "error: {msg}").map(|_| 2),
    };
    written.unwrap_or(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ignatiev").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eval_and_entails() {
        assert_eq!(call(&["eval", "D1 T"]), (0, "w,1\n".into(), String::new()));
        assert_eq!(call(&["entails", "D0 D0 T", "D0 T"]).0, 0);
        assert_eq!(
            call(&["entails", "D0 T", "D0 D0 T"]),
            (1, "no\n".into(), String::new())
        );
    }

    #[test]
    fn sequences_and_relations() {
        assert_eq!(call(&["sigma", "1", ";1"]).1, "w+1,2;1\n");
        assert_eq!(call(&["suitable", "w,2;1"]).1, "no 0\n");
        assert_eq!(call(&["suitable", "w+1,2;1"]).1, "yes\n");
        assert_eq!(call(&["rel", "R1", "w+1,2;1", ";1"]).0, 0);
        assert_eq!(call(&["rel", "S0", ";1", "2;1"]).0, 1);
        assert_eq!(call(&["forces", "w+1,2;1", "D1 T"]).1, "yes\n");
        assert_eq!(call(&["glb", "w,1", "w+1"]).1, "w*2,1\n");
    }

    #[test]
    fn errors_exit_two() {
        let (code, out, err) = call(&["eval", "D T"]);
        assert_eq!((code, out.as_str()), (2, ""));
        assert!(err.contains("position 2"), "{err}");
        assert_eq!(call(&["rel", "Q1", ";1", ";1"]).0, 2);
        assert_eq!(call(&["sigma", "0", "w,2;1"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["verify", "--height", "0"]).0, 2);
        assert_eq!(call(&["verify", "--suite", "nope"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
