use std::collections::HashMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sca_core::a_type::{ARMatrix, ARect, Rect};
use sca_core::crystal::FiniteCrystal;
use sca_core::kr_b2::KrB2;
use sca_core::letter::{Letter, LetterCrystal};
use sca_core::one_row::OneRow;
use sca_core::rmatrix::{energy_from_zero_arrows, r_b11_b21, r_one_row, RB2};
use sca_core::sca::{Automaton, ScaState, Trace};
use sca_core::suites::{self, SuiteReport};
use sca_core::tableau::TwoRowTableau;
use sca_core::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "dnsca", version, about = "Crystal combinatorics and the B^{2,1} soliton cellular automaton of type D_n^(1)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evolve a state under T_l and print the trace.
    Evolve(EvolveArgs),
    /// Apply a combinatorial R-matrix and print the image and the energy.
    Rmatrix(RmatrixArgs),
    /// Run an exhaustive or sampled verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct EvolveArgs {
    #[arg(long)]
    n: usize,
    /// Carrier capacity l.
    #[arg(long)]
    carrier: usize,
    #[arg(long)]
    steps: usize,
    /// A file or an inline state. Inline two-line states separate the rows with ';'.
    /// A JSON trace contributes its last state.
    #[arg(long, allow_hyphen_values = true)]
    state: String,
    /// Vacuum cells appended on the right before evolving.
    #[arg(long, default_value_t = 0)]
    pad: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "b2s_b21")]
    B2sB21,
    #[value(name = "b11_b21")]
    B11B21,
    #[value(name = "one_row")]
    OneRow,
    #[value(name = "a_type")]
    AType,
}

#[derive(clap::Args)]
struct RmatrixArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Rank of D_n; for a_type the rank m of A_m.
    #[arg(long)]
    n: usize,
    /// Width of the B^{2,s} factor (b2s_b21 only).
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, required_unless_present = "input", allow_hyphen_values = true)]
    lhs: Option<String>,
    #[arg(long, required_unless_present = "input", allow_hyphen_values = true)]
    rhs: Option<String>,
    /// Both factors at once, separated by '⊗' or '|'.
    #[arg(long, conflicts_with_all = ["lhs", "rhs"], allow_hyphen_values = true)]
    input: Option<String>,
    /// Apply R^{-1}: the input lies in the swapped product.
    #[arg(long)]
    inverse: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Axioms,
    Sigma,
    Insertion,
    Rmatrix,
    YangBaxter,
    Solitons,
    Scattering,
    Properties,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Width cap for the exhaustive suites; word length for insertion.
    #[arg(long, default_value_t = 2)]
    s: usize,
    /// Sample count for the property suite.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Exit code for a library error: bad input is a usage error, everything else a domain error.
fn code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Precondition(_) => 2,
        _ => 3,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("dnsca: {e}");
    ExitCode::from(code(&e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Evolve(a) => evolve(&a),
        Cmd::Rmatrix(a) => rmatrix(&a),
        Cmd::Verify(a) => return verify(&a).unwrap_or_else(fail),
    };
    match out {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn read_state(n: usize, arg: &str) -> Result<ScaState, Error> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    } else {
        arg.replace(';', "\n")
    };
    let state = if text.trim_start().starts_with('{') {
        let tr = Trace::from_json(&text)?;
        if tr.n != n {
            return Err(Error::Parse(format!("trace has n={}, expected {n}", tr.n)));
        }
        tr.steps.last().map(|s| s.state.clone()).ok_or_else(|| Error::Parse("trace has no steps".into()))?
    } else {
        ScaState::parse(n, &text, false)?
    };
    if state.has_empty_cells() {
        return Err(Error::Parse("a state has no empty cells".into()));
    }
    Ok(state)
}

fn evolve(a: &EvolveArgs) -> Result<String, Error> {
    let p = read_state(a.n, &a.state)?.padded(a.pad);
    let trace = Automaton::new(a.n)?.trace(&p, a.carrier, a.steps)?;
    Ok(match a.format {
        Format::Text => trace.to_text(),
        Format::Json => trace.to_json() + "\n",
    })
}

fn operands(a: &RmatrixArgs) -> Result<(String, String), Error> {
    if let Some(s) = &a.input {
        let parts: Vec<&str> = s.split(['⊗', '|']).map(str::trim).collect();
        return match parts[..] {
            [x, y] => Ok((x.to_string(), y.to_string())),
            _ => Err(Error::Parse(format!("expected two factors in {s:?}"))),
        };
    }
    // clap guarantees both are present here
    Ok((a.lhs.clone().unwrap_or_default(), a.rhs.clone().unwrap_or_default()))
}

fn tableau(n: usize, s: usize, text: &str) -> Result<TwoRowTableau, Error> {
    let t = TwoRowTableau::parse(n, text)?;
    if !KrB2::new(n, s)?.contains(&t) {
        return Err(Error::InvalidElement(format!("{t} is not in B^{{2,{s}}}")));
    }
    Ok(t)
}

fn one_row(n: usize, text: &str) -> Result<OneRow, Error> {
    let coords: Vec<u32> = text
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad coordinates {text:?}"))))
        .collect::<Result<_, _>>()?;
    let s = coords.iter().sum::<u32>() as usize;
    OneRow::from_coords(n, s, coords)
}

/// Rows separated by '/', one digit per entry.
fn rect(m: usize, text: &str) -> Result<(Rect, ARect), Error> {
    let rows = text
        .trim()
        .split('/')
        .map(|r| {
            r.chars()
                .map(|c| c.to_digit(10).filter(|&d| d > 0).map(|d| d as u8).ok_or_else(|| Error::Parse(format!("bad entry {c:?} in {text:?}"))))
                .collect::<Result<Vec<u8>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let t = Rect { rows };
    let b = ARect::new(m, t.r(), t.s())?;
    if !b.contains(&t) {
        return Err(Error::InvalidElement(format!("{t} is not in B^{{{},{}}} of A_{m}", t.r(), t.s())));
    }
    Ok((t, b))
}

/// R and H on `B^{1,1} ⊗ B^{2,1}`, tabulated with `H(1 ⊗ u_1) = 0`.
fn b11_b21_table(n: usize) -> Result<HashMap<(Letter, TwoRowTableau), (TwoRowTableau, Letter, i64)>, Error> {
    let kr = KrB2::new(n, 1)?;
    let l = LetterCrystal { n };
    let mut img = HashMap::new();
    for x in Letter::all(n) {
        for t in kr.elements() {
            let v = r_b11_b21(x, &t)?;
            img.insert((x, t), v);
        }
    }
    let h = energy_from_zero_arrows(&l, &kr, |x, t| img[&(*x, t.clone())].clone(), (Letter::of(n, 1), kr.highest()), 0)?;
    Ok(img.into_iter().map(|(k, (a, b))| (k.clone(), (a, b, h[&k]))).collect())
}

fn rmatrix(a: &RmatrixArgs) -> Result<String, Error> {
    let n = a.n;
    let (x, y) = operands(a)?;
    let (l, r, h) = match a.family {
        Family::B2sB21 => {
            let s = a.s.ok_or_else(|| Error::Parse("--s is required for b2s_b21".into()))?;
            let rm = RB2::new(n, s)?;
            if a.inverse {
                let (p, q) = rm.inverse(&tableau(n, 1, &x)?, &tableau(n, s, &y)?)?;
                let h = rm.energy(&p, &q)?;
                (p.to_string(), q.to_string(), h)
            } else {
                let (p, q, h) = rm.apply_with_energy(&tableau(n, s, &x)?, &tableau(n, 1, &y)?)?;
                (p.to_string(), q.to_string(), h)
            }
        }
        Family::B11B21 => {
            let table = b11_b21_table(n)?;
            if a.inverse {
                let (t, c) = (tableau(n, 1, &x)?, Letter::parse(n, &y)?);
                let (k, v) = table
                    .iter()
                    .find(|(_, v)| v.0 == t && v.1 == c)
                    .ok_or_else(|| Error::Undefined(format!("{t} ⊗ {c} has no preimage")))?;
                (k.0.to_string(), k.1.to_string(), v.2)
            } else {
                let key = (Letter::parse(n, &x)?, tableau(n, 1, &y)?);
                let (p, q, h) = table[&key].clone();
                (p.to_string(), q.to_string(), h)
            }
        }
        Family::OneRow => {
            // R_{s',s} inverts R_{s,s'}
            let (p, q, h) = r_one_row(&one_row(n, &x)?, &one_row(n, &y)?)?;
            let h = if a.inverse { r_one_row(&p, &q)?.2 } else { h };
            (p.to_string(), q.to_string(), h)
        }
        Family::AType => {
            let ((t, bt), (tp, btp)) = (rect(n, &x)?, rect(n, &y)?);
            let (p, q) = ARMatrix::new(bt, btp)?.apply(&t, &tp)?;
            let h = if a.inverse { sca_core::a_type::energy(&p, &q) } else { sca_core::a_type::energy(&t, &tp) };
            (p.to_string(), q.to_string(), h)
        }
    };
    Ok(format!("{l} ⊗ {r}, H={h}\n"))
}

fn verify(a: &VerifyArgs) -> Result<ExitCode, Error> {
    let (n, s) = (a.n, a.s);
    let mut extra = String::new();
    let rep: SuiteReport = match a.suite {
        Suite::Axioms => suites::axioms(n, s)?,
        Suite::Sigma => suites::sigma(n, s)?,
        Suite::Insertion => suites::insertion(n, s)?,
        Suite::Rmatrix => suites::rmatrix(n, s)?,
        Suite::YangBaxter => suites::yang_baxter(n)?,
        Suite::Solitons => suites::solitons(n, s)?,
        Suite::Scattering => {
            let (rep, sc) = suites::scattering(n)?;
            extra = sc.to_string();
            rep
        }
        Suite::Properties => suites::properties(n, a.samples, a.seed)?,
    };
    match a.format {
        Format::Text => {
            println!("{rep}");
            if !extra.is_empty() {
                println!("{extra}");
            }
            println!("{}", if rep.ok() { "ok" } else { "FAILED" });
        }
        Format::Json => {
            let j = json!({
                "suite": rep.name,
                "checked": rep.checked,
                "failed": rep.failed,
                "examples": rep.examples,
                "ok": rep.ok(),
            });
            println!("{}", serde_json::to_string_pretty(&j).expect("summary serialises"));
        }
    }
    Ok(if rep.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
