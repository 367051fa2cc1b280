//! Command-line front end for the `hankel` binary.
//!
//! Output goes to caller-supplied writers so the whole surface is testable
//! in-process. Data lines are deterministic; elapsed times appear only
//! under `verify --timing`.

use std::ffi::OsString;
use std::io::{self, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::hankel::{hankel_dets, t_hankel_det, t_hankel_dets_mod2};
use crate::involutions::{mu_distribution, DEFAULT_ENUMERATION_CAP, MAX_ENUMERATION_CAP};
use crate::number_sets::{prefix, SetId};
use crate::polynomial::{Gf2Polynomial, IntPolynomial};
use crate::sequences::SequenceId;
use crate::verify::{verify, verify_all, Bounds, ClaimId, Profile, VerifyReport};

/// Exit status when every check passed.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verifier found a counterexample.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for usage errors and refused bounds.
pub const EXIT_USAGE: i32 = 2;

/// Largest order accepted for the integer and t-polynomial columns.
pub const TABLE_EXACT_CAP: usize = Bounds::CAPS.det_k as usize;
/// Largest order accepted for the mod-2 column.
pub const TABLE_MOD2_CAP: usize = Bounds::CAPS.mod2_k as usize;

#[derive(Debug, Parser)]
#[command(
    name = "hankel",
    version,
    about = "Exact Hankel determinants of automatic sequences and bounded checks of their parity laws"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of a sequence.
    Seq(SeqArgs),
    /// Print Hankel determinants for orders 0..=kmax.
    Table(TableArgs),
    /// Count involutions of a set prefix with k transpositions in a set.
    Mu(MuArgs),
    /// Run one verifier or all of them.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// thue-morse, period-doubling, paperfolding or coons.
    pub name: SequenceId,
    pub count: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    pub name: SequenceId,
    pub kmax: usize,
    /// t-Hankel determinant column (the default when no column is chosen).
    #[arg(long = "t")]
    pub t: bool,
    /// Integer Hankel determinant column.
    #[arg(long)]
    pub plain: bool,
    /// t-Hankel determinant over GF(2)[t].
    #[arg(long)]
    pub mod2: bool,
    /// Window offset p: entries are c_(p+i+j).
    #[arg(long, default_value_t = 0)]
    pub offset: u64,
    /// Human-readable polynomials instead of coefficient arrays.
    #[arg(long)]
    pub pretty: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    pub m: usize,
    pub k: usize,
    /// Set that every transposition sum must lie in.
    pub set: SetId,
    /// Set whose first m elements form the domain.
    #[arg(long, default_value = "N")]
    pub domain: SetId,
    /// Largest domain size accepted.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A claim name such as GWW or MAIN_TK, or `all`.
    pub claim: String,
    #[arg(long, env = "HANKEL_PROFILE", default_value = "quick", value_parser = Profile::from_str)]
    pub profile: Profile,
    /// Override det_k.
    #[arg(long)]
    pub kmax: Option<u64>,
    /// Override mod2_k.
    #[arg(long = "mod2-kmax")]
    pub mod2_kmax: Option<u64>,
    /// Override set_m.
    #[arg(long)]
    pub mmax: Option<u64>,
    /// Override oracle_k.
    #[arg(long = "oracle-kmax")]
    pub oracle_kmax: Option<u64>,
    /// Override any bound by name, e.g. `--bound prefix=1024`.
    #[arg(long = "bound", value_name = "NAME=VALUE", value_parser = parse_bound)]
    pub bounds: Vec<(String, u64)>,
    /// Append elapsed milliseconds to each report.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

fn parse_bound(s: &str) -> Result<(String, u64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let value = value
        .parse()
        .map_err(|e| format!("bad value in `{s}`: {e}"))?;
    if Bounds::quick().get(name).is_none() {
        return Err(format!("unknown bound `{name}`"));
    }
    Ok((name.to_string(), value))
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Seq(a) => cmd_seq(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Mu(a) => cmd_mu(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    let result = result.and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

fn big_number(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn json_line(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn cmd_seq(a: &SeqArgs, out: &mut dyn Write) -> Outcome {
    let terms = a.name.prefix_terms(a.count);
    match a.format {
        OutputFormat::Plain => {
            let line: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
            if !line.is_empty() {
                writeln!(out, "{}", line.join(" "))?;
            }
        }
        OutputFormat::Json => {
            for (n, t) in terms.iter().enumerate() {
                json_line(
                    out,
                    &json!({ "sequence": a.name.name(), "n": n, "value": big_number(t) }),
                )?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "value"])?;
            for (n, t) in terms.iter().enumerate() {
                w.write_record([n.to_string(), t.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Column {
    T,
    Plain,
    Mod2,
}

impl Column {
    fn name(self) -> &'static str {
        match self {
            Column::T => "t",
            Column::Plain => "plain",
            Column::Mod2 => "mod2",
        }
    }
}

enum Cell {
    Int(BigInt),
    Poly(IntPolynomial),
    Gf2(Gf2Polynomial),
}

impl Cell {
    fn text(&self, pretty: bool) -> String {
        match (self, pretty) {
            (Cell::Int(n), _) => n.to_string(),
            (Cell::Poly(p), true) => p.pretty(),
            (Cell::Poly(p), false) => p.to_string(),
            (Cell::Gf2(p), true) => p.pretty(),
            (Cell::Gf2(p), false) => p.to_string(),
        }
    }

    fn json(&self, pretty: bool) -> Value {
        match (self, pretty) {
            (Cell::Int(n), _) => big_number(n),
            (Cell::Poly(p), false) => Value::Array(p.coeffs().iter().map(big_number).collect()),
            (Cell::Gf2(p), false) => Value::Array(
                (0..p.degree().map_or(0, |d| d + 1))
                    .map(|i| Value::from(u8::from(p.coeff(i))))
                    .collect(),
            ),
            _ => Value::String(self.text(true)),
        }
    }
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Outcome {
    let mut columns = Vec::new();
    if a.t || !(a.plain || a.mod2) {
        columns.push(Column::T);
    }
    if a.plain {
        columns.push(Column::Plain);
    }
    if a.mod2 {
        columns.push(Column::Mod2);
    }
    let exact = columns.iter().any(|&c| c != Column::Mod2);
    let cap = if exact {
        TABLE_EXACT_CAP
    } else {
        TABLE_MOD2_CAP
    };
    if a.kmax > cap {
        return Err(Failure::Usage(format!(
            "kmax {} exceeds the table cap {cap} for the requested columns",
            a.kmax
        )));
    }

    let (seq, p, kmax) = (a.name, a.offset, a.kmax);
    let mut cells: Vec<Vec<Cell>> = (0..=kmax).map(|_| Vec::new()).collect();
    for &column in &columns {
        match column {
            Column::T => {
                for (k, row) in cells.iter_mut().enumerate() {
                    row.push(Cell::Poly(t_hankel_det(seq, p, k)));
                }
            }
            Column::Plain => {
                for (row, d) in cells.iter_mut().zip(hankel_dets(seq, p, kmax)) {
                    row.push(Cell::Int(d));
                }
            }
            Column::Mod2 => {
                for (row, d) in cells.iter_mut().zip(t_hankel_dets_mod2(seq, p, kmax)) {
                    row.push(Cell::Gf2(d));
                }
            }
        }
    }

    match a.format {
        OutputFormat::Plain => {
            for row in &cells {
                let texts: Vec<String> = row.iter().map(|c| c.text(a.pretty)).collect();
                writeln!(out, "{}", texts.join("\t"))?;
            }
        }
        OutputFormat::Json => {
            for (k, row) in cells.iter().enumerate() {
                let mut obj = Map::new();
                obj.insert("sequence".into(), Value::from(seq.name()));
                obj.insert("offset".into(), Value::from(p));
                obj.insert("k".into(), Value::from(k));
                for (column, cell) in columns.iter().zip(row) {
                    obj.insert(column.name().into(), cell.json(a.pretty));
                }
                json_line(out, &Value::Object(obj))?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = vec!["k"];
            header.extend(columns.iter().map(|c| c.name()));
            w.write_record(&header)?;
            for (k, row) in cells.iter().enumerate() {
                let mut record = vec![k.to_string()];
                record.extend(row.iter().map(|c| c.text(a.pretty)));
                w.write_record(&record)?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_mu(a: &MuArgs, out: &mut dyn Write) -> Outcome {
    if a.cap > MAX_ENUMERATION_CAP {
        return Err(Failure::Usage(format!(
            "--cap {} exceeds the hard enumeration cap {MAX_ENUMERATION_CAP}",
            a.cap
        )));
    }
    if a.m > a.cap {
        return Err(Failure::Usage(format!(
            "m = {} exceeds the enumeration cap {} (raise it with --cap, at most {MAX_ENUMERATION_CAP})",
            a.m, a.cap
        )));
    }
    let domain = prefix(a.domain, a.m).elements;
    let dist = mu_distribution(&domain, a.set, a.cap)?;
    let count = dist.get(a.k).cloned().unwrap_or_default();
    match a.format {
        OutputFormat::Plain => writeln!(out, "{count}")?,
        OutputFormat::Json => json_line(
            out,
            &json!({
                "domain": a.domain.name(),
                "m": a.m,
                "k": a.k,
                "set": a.set.name(),
                "count": big_number(&count.into()),
            }),
        )?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["domain", "m", "k", "set", "count"])?;
            w.write_record([
                a.domain.name().to_string(),
                a.m.to_string(),
                a.k.to_string(),
                a.set.name().to_string(),
                count.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn verify_bounds(a: &VerifyArgs) -> Bounds {
    let mut b = Bounds::for_profile(a.profile);
    let overrides = [
        ("det_k", a.kmax),
        ("mod2_k", a.mod2_kmax),
        ("set_m", a.mmax),
        ("oracle_k", a.oracle_kmax),
    ];
    for (name, value) in overrides {
        if let Some(v) = value {
            b.set(name, v);
        }
    }
    for (name, value) in &a.bounds {
        b.set(name, *value);
    }
    b
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let bounds = verify_bounds(a);
    let reports = if a.claim.eq_ignore_ascii_case("all") {
        verify_all(&bounds)?
    } else {
        vec![verify(a.claim.parse::<ClaimId>()?, &bounds)?]
    };
    write_reports(&reports, a.format, a.timing, out)?;
    Ok(if reports.iter().all(VerifyReport::passed) {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

fn write_reports(
    reports: &[VerifyReport],
    format: OutputFormat,
    timing: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let millis = |r: &VerifyReport| r.elapsed.as_millis();
    match format {
        OutputFormat::Plain => {
            for r in reports {
                if timing {
                    writeln!(out, "{r} elapsed_ms={}", millis(r))?;
                } else {
                    writeln!(out, "{r}")?;
                }
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} passed, {failed} failed", reports.len() - failed)?;
        }
        OutputFormat::Json => {
            for r in reports {
                let bounds: Map<String, Value> = r
                    .bounds
                    .iter()
                    .map(|&(n, v)| (n.to_string(), Value::from(v)))
                    .collect();
                let mut obj = Map::new();
                obj.insert("claim".into(), json!(r.claim));
                obj.insert("outcome".into(), json!(r.outcome));
                obj.insert("checked".into(), Value::from(r.checked));
                obj.insert("bounds".into(), Value::Object(bounds));
                obj.insert("counterexample".into(), json!(r.counterexample));
                if timing {
                    obj.insert("elapsed_ms".into(), Value::from(millis(r) as u64));
                }
                json_line(out, &Value::Object(obj))?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = vec!["claim", "outcome", "checked", "bounds", "counterexample"];
            if timing {
                header.push("elapsed_ms");
            }
            w.write_record(&header)?;
            for r in reports {
                let outcome = if r.passed() { "pass" } else { "fail" };
                let mut record = vec![
                    r.claim.to_string(),
                    outcome.to_string(),
                    r.checked.to_string(),
                    r.bounds_text(),
                    r.counterexample
                        .as_ref()
                        .map(|c| c.to_string())
                        .unwrap_or_default(),
                ];
                if timing {
                    record.push(millis(r).to_string());
                }
                w.write_record(&record)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("hankel").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn seq_listing() {
        assert_eq!(capture(&["seq", "period-doubling", "6"]).1, "1 0 1 1 1 0\n");
        assert_eq!(
            capture(&["seq", "thue-morse", "0"]),
            (0, String::new(), String::new())
        );
        let (code, csv, _) = capture(&["seq", "paperfolding", "7", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(csv, "n,value\n0,1\n1,1\n2,0\n3,1\n4,1\n5,0\n6,0\n");
        assert_eq!(capture(&["seq", "nope", "3"]).0, EXIT_USAGE);
    }

    #[test]
    fn table_rows() {
        let (code, out, _) = capture(&["table", "period-doubling", "8", "--t"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[4], "[0,0,-4,0,1]");
        let out = capture(&["table", "paperfolding", "9"]).1;
        assert_eq!(out.lines().nth(6), Some("[-4,-2,2]"));
        assert_eq!(
            capture(&["table", "period-doubling", "0", "--plain"]).1,
            "1\n"
        );
        let out = capture(&["table", "period-doubling", "3", "--plain", "--mod2", "--t"]).1;
        assert_eq!(out.lines().last(), Some("[0,-2,0,1]\t-1\t[0,0,0,1]"));
        let out = capture(&["table", "period-doubling", "3", "--pretty"]).1;
        assert_eq!(out.lines().last(), Some("t^3 - 2t"));
    }

    #[test]
    fn table_formats() {
        let out = capture(&["table", "paperfolding", "4", "--plain", "--format", "json"]).1;
        assert_eq!(
            out.lines().nth(4),
            Some(r#"{"k":4,"offset":0,"plain":2,"sequence":"paperfolding"}"#)
        );
        let out = capture(&["table", "paperfolding", "4", "--format", "csv"]).1;
        assert_eq!(out.lines().next(), Some("k,t"));
        assert_eq!(out.lines().nth(5), Some("4,\"[1,2,-1]\""));
    }

    #[test]
    fn table_cap() {
        let (code, _, err) = capture(&["table", "period-doubling", "401"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("400"), "{err}");
        assert_eq!(
            capture(&["table", "period-doubling", "3", "--bogus"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn mu_counts() {
        assert_eq!(capture(&["mu", "3", "1", "J"]).1, "2\n");
        assert_eq!(capture(&["mu", "5", "0", "J"]).1, "1\n");
        assert_eq!(capture(&["mu", "4", "3", "J"]).1, "0\n");
        assert_eq!(capture(&["mu", "4", "1", "J*", "--domain", "P"]).1, "2\n");
        let (code, _, err) = capture(&["mu", "21", "1", "J"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("cap 20"), "{err}");
        assert_eq!(capture(&["mu", "3", "1", "J", "--cap", "49"]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = capture(&["verify", "GWW", "--kmax", "50"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("PASS GWW det_k=50 "), "{out}");
        assert_eq!(capture(&["verify", "bogus"]).0, EXIT_USAGE);
        assert_eq!(capture(&["verify", "KEY", "--mmax", "21"]).0, EXIT_USAGE);
        assert_eq!(
            capture(&["verify", "KEY", "--bound", "nope=3"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn verify_output_is_deterministic() {
        let args = ["verify", "all", "--profile", "quick", "--format", "json"];
        let first = capture(&args);
        assert_eq!(first.0, 0);
        assert_eq!(first.1.lines().count(), 21);
        assert!(!first.1.contains("elapsed"));
        assert_eq!(first, capture(&args));
        let timed = capture(&["verify", "TABLE_D", "--timing"]).1;
        assert!(timed.contains("elapsed_ms="), "{timed}");
    }
}
