//! Command-line surface and serialization: dimension tables, lemma audits,
//! matrix export and geometry dumps.
//!
//! Every command renders to a `Report` (text plus a success flag) so that the
//! binary only has to print it and pick an exit code.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::gf::{factor_prime_power, Field, FieldError};
use crate::gf2mat::{BitVec, Gf2Matrix};
use crate::group::{GroupError, GroupTable, DEFAULT_GROUP_BOUND};
use crate::incidence::{build_matrix, dimension_report, DimensionReport, LabeledMatrix, MatrixName};
use crate::plane::{build_geometry, ConicGeometry, LineClass, PointClass};
use crate::verify::{run_group_checks, run_suite, Depth, LemmaVerdict, VerifyError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("weight check failed for {matrix}: {detail}")]
    WeightCheck { matrix: MatrixName, detail: String },
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input (unsupported `q`, group bound), 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Field(_)
            | CliError::Verify(VerifyError::Field(_))
            | CliError::Verify(VerifyError::Group(GroupError::BoundExceeded { .. }))
            | CliError::Group(GroupError::BoundExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("alist line {line}: {msg}")]
pub struct AlistError {
    pub line: usize,
    pub msg: String,
}

/// Worker-pool size: a fixed count or one per core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Threads {
    #[default]
    Auto,
    Fixed(usize),
}

impl FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("expected a positive integer or \"auto\", got {s:?}")),
            Ok(n) => Ok(Threads::Fixed(n)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Alist,
    Bits,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "conic-codes", version, about = "Binary codes from conics in PG(2,q): dimensions, audits, export")]
pub struct RunConfig {
    /// Irreducible modulus for extension fields, coefficients constant term first (e.g. "2,2,1").
    #[arg(long, global = true, value_parser = parse_irr)]
    pub irr: Option<Modulus>,

    /// Largest q for which the group is enumerated.
    #[arg(long, global = true, env = "CONIC_GROUP_BOUND", default_value_t = DEFAULT_GROUP_BOUND)]
    pub group_bound: u32,

    /// Worker threads: a positive integer or "auto".
    #[arg(long, global = true, default_value = "auto")]
    pub threads: Threads,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Code dimensions for a list of q: items like "5", "3,7,9" or ranges "3..27".
    Dims {
        #[arg(required = true, value_parser = parse_q_list)]
        qs: Vec<QList>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run the lemma audit for one q and print the verdicts as JSON.
    Verify {
        #[arg(value_parser = parse_q)]
        q: u64,
        /// "geometry", or "group" to add the group-theoretic checks.
        #[arg(long, default_value = "geometry")]
        depth: Depth,
    },
    /// Write one incidence matrix.
    Export {
        #[arg(value_parser = parse_q)]
        q: u64,
        /// A, A11..A33, B, B0, D or Dprime.
        #[arg(long)]
        matrix: MatrixName,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Alist)]
        format: MatrixFormat,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class sizes, stabilizer intersections and parity verdicts as JSON.
    GroupAudit {
        #[arg(value_parser = parse_q)]
        q: u64,
    },
    /// Points, lines, classes and polarity as JSON.
    DumpGeometry {
        #[arg(value_parser = parse_q)]
        q: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus(pub Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QList(pub Vec<u64>);

fn parse_irr(s: &str) -> Result<Modulus, String> {
    s.split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|_| format!("bad coefficient {c:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Modulus)
}

/// A single `q`, rejected unless it is an odd prime power.
pub fn parse_q(s: &str) -> Result<u64, String> {
    let q: u64 = s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))?;
    check_q(q)?;
    Ok(q)
}

fn check_q(q: u64) -> Result<(), String> {
    match factor_prime_power(q) {
        Ok((p, _)) if p != 2 => Ok(()),
        _ => Err(format!("{q} is not an odd prime power")),
    }
}

/// Comma-separated items, each a number or an inclusive range `a..b`
/// (`a..=b` is accepted too). Ranges keep only the odd prime powers; single
/// numbers are kept as given so that unsupported ones surface as error rows.
pub fn parse_q_list(s: &str) -> Result<QList, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let num = |t: &str| t.trim_start_matches('=').trim().parse::<u64>().map_err(|_| format!("bad range {item:?}"));
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {item:?}"));
            }
            out.extend((a..=b).filter(|&q| check_q(q).is_ok()));
        } else {
            out.push(item.parse::<u64>().map_err(|_| format!("{item:?} is not an integer"))?);
        }
    }
    if out.is_empty() {
        return Err(format!("no q values in {s:?}"));
    }
    Ok(QList(out))
}

/// Rendered command output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub success: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, success: true }
    }
}

/// Run the configured command inside a pool of the requested size.
pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Threads::Fixed(n) = cfg.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::ThreadPool(e.to_string()))?;
    pool.install(|| run(cfg))
}

fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let modulus = cfg.irr.as_ref().map(|m| m.0.as_slice());
    match &cfg.command {
        Command::Dims { qs, format } => {
            let qs: Vec<u64> = qs.iter().flat_map(|l| l.0.iter().copied()).collect();
            Ok(cmd_dims(&qs, modulus, *format))
        }
        Command::Verify { q, depth } => cmd_verify(*q, modulus, *depth, cfg.group_bound),
        Command::Export { q, matrix, format, out } => {
            let geom = geometry(*q, modulus)?;
            let text = export_matrix(&geom, *matrix, *format)?;
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    Ok(Report::ok(String::new()))
                }
                None => Ok(Report::ok(text)),
            }
        }
        Command::GroupAudit { q } => cmd_group_audit(*q, modulus, cfg.group_bound),
        Command::DumpGeometry { q } => Ok(Report::ok(dump_geometry(&geometry(*q, modulus)?))),
    }
}

fn geometry(q: u64, modulus: Option<&[u32]>) -> Result<ConicGeometry, CliError> {
    Ok(build_geometry(&Field::with_order(q, modulus)?))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// One dimension row per `q`, in input order; failures become error rows.
pub fn dims_rows(qs: &[u64], modulus: Option<&[u32]>) -> Vec<Result<DimensionReport, String>> {
    qs.par_iter()
        .map(|&q| {
            check_q(q)?;
            let field = Field::with_order(q, modulus).map_err(|e| e.to_string())?;
            Ok(dimension_report(&build_geometry(&field)))
        })
        .collect()
}

pub const DIMS_CSV_HEADER: &str =
    "q,q_mod_4,rank_B,dim_L,dim_L0,rank_D,rank_Dprime,conjecture_dim_L,conjecture_dim_L0,match,error";

pub fn cmd_dims(qs: &[u64], modulus: Option<&[u32]>, format: TableFormat) -> Report {
    let rows = dims_rows(qs, modulus);
    let success = rows.iter().all(|r| matches!(r, Ok(d) if d.matches));
    let text = match format {
        TableFormat::Csv => {
            let mut s = String::from(DIMS_CSV_HEADER);
            s.push('\n');
            for (q, row) in qs.iter().zip(&rows) {
                match row {
                    Ok(d) => writeln!(
                        s,
                        "{},{},{},{},{},{},{},{},{},{},",
                        d.q,
                        d.congruence_class,
                        d.rank_b,
                        d.dim_l,
                        d.dim_l0,
                        d.rank_d,
                        d.rank_dprime,
                        d.conjecture_dim_l,
                        d.conjecture_dim_l0,
                        d.matches
                    ),
                    Err(e) => writeln!(s, "{q},,,,,,,,,,{e}"),
                }
                .expect("writing to a String");
            }
            s
        }
        TableFormat::Json => {
            let values: Vec<serde_json::Value> = qs
                .iter()
                .zip(&rows)
                .map(|(q, row)| match row {
                    Ok(d) => serde_json::to_value(d).expect("plain struct"),
                    Err(e) => json!({ "q": q, "error": e }),
                })
                .collect();
            to_json(&values).expect("plain values")
        }
    };
    Report { text, success }
}

pub fn cmd_verify(q: u64, modulus: Option<&[u32]>, depth: Depth, group_bound: u32) -> Result<Report, CliError> {
    let verdicts = run_suite(q, modulus, depth, group_bound)?;
    Ok(Report { success: verdicts.iter().all(|v| v.passed), text: to_json(&verdicts)? })
}

#[derive(Serialize)]
struct ClassEntry {
    label: String,
    t_value: u32,
    size: usize,
}

#[derive(Serialize)]
struct StabilizerEntry {
    point_class: PointClass,
    point: usize,
    stabilizer_order: usize,
    counts: BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct GroupAudit {
    q: usize,
    h_order: usize,
    g_order: usize,
    class_sizes: BTreeMap<String, usize>,
    classes: Vec<ClassEntry>,
    stabilizer_intersections: Vec<StabilizerEntry>,
    verdicts: Vec<LemmaVerdict>,
}

pub fn cmd_group_audit(q: u64, modulus: Option<&[u32]>, group_bound: u32) -> Result<Report, CliError> {
    let geom = geometry(q, modulus)?;
    let table = GroupTable::build(&geom, group_bound)?;
    let classes: Vec<ClassEntry> = table
        .classes()
        .iter()
        .map(|c| ClassEntry { label: c.label.to_string(), t_value: c.label.t_value.0, size: c.members.len() })
        .collect();
    let stabilizer_intersections = [PointClass::Internal, PointClass::External, PointClass::Absolute]
        .into_iter()
        .map(|pc| {
            let p = geom.points_of_class(pc)[0];
            let k = table.stabilizer(p);
            let mut counts: BTreeMap<String, usize> = classes.iter().map(|c| (c.label.clone(), 0)).collect();
            for &x in &k {
                if let Some(c) = table.class_index(x) {
                    *counts.get_mut(&classes[c].label).expect("every class listed") += 1;
                }
            }
            StabilizerEntry { point_class: pc, point: p, stabilizer_order: k.len(), counts }
        })
        .collect();
    let verdicts = run_group_checks(&geom, &table);
    let audit = GroupAudit {
        q: geom.q(),
        h_order: table.h_order(),
        g_order: table.g_order(),
        class_sizes: classes.iter().map(|c| (c.label.clone(), c.size)).collect(),
        classes,
        stabilizer_intersections,
        verdicts,
    };
    Ok(Report { success: audit.verdicts.iter().all(|v| v.passed), text: to_json(&audit)? })
}

pub fn dump_geometry(geom: &ConicGeometry) -> String {
    let f = geom.field();
    let coords = |c: &[crate::gf::Elem; 3]| c.iter().map(|e| e.0).collect::<Vec<_>>();
    let points: Vec<serde_json::Value> = (0..geom.size())
        .map(|i| json!({ "index": i, "coords": coords(geom.point_coords(i)), "class": geom.point_class(i) }))
        .collect();
    let lines: Vec<serde_json::Value> = (0..geom.size())
        .map(|i| {
            json!({
                "index": i,
                "coords": coords(geom.line_coords(i)),
                "class": geom.line_class(i),
                "points": geom.points_on(i),
            })
        })
        .collect();
    let point_classes: BTreeMap<&str, &[usize]> = [
        ("absolute", geom.conic()),
        ("external", geom.external()),
        ("internal", geom.internal()),
    ]
    .into_iter()
    .collect();
    let line_classes: BTreeMap<&str, &[usize]> = [
        ("passant", geom.lines_of_class(LineClass::Passant)),
        ("secant", geom.lines_of_class(LineClass::Secant)),
        ("tangent", geom.lines_of_class(LineClass::Tangent)),
    ]
    .into_iter()
    .collect();
    let doc = json!({
        "q": geom.q(),
        "p": f.p(),
        "e": f.e(),
        "modulus": f.modulus(),
        "points": points,
        "lines": lines,
        "conic": geom.conic(),
        "polarity": geom.polarity(),
        "classes": { "points": point_classes, "lines": line_classes },
    });
    to_json(&doc).expect("plain values")
}

/// Serialize one named matrix. `B` has its row and column weights checked first.
pub fn export_matrix(geom: &ConicGeometry, name: MatrixName, format: MatrixFormat) -> Result<String, CliError> {
    let lm = build_matrix(geom, name);
    if name == MatrixName::B {
        check_b_weights(geom.q(), &lm.matrix)?;
    }
    Ok(match format {
        MatrixFormat::Alist => write_alist(&lm.matrix),
        MatrixFormat::Bits => write_bits(&lm.matrix),
        MatrixFormat::Json => write_matrix_json(geom.q(), &lm)?,
        MatrixFormat::Csv => write_matrix_csv(&lm),
    })
}

/// Every row of `B` (an external point) has weight `(q-1)/2` and every
/// column (a passant) weight `(q+1)/2`.
pub fn check_b_weights(q: usize, m: &Gf2Matrix) -> Result<(), CliError> {
    let fail = |detail: String| Err(CliError::WeightCheck { matrix: MatrixName::B, detail });
    if let Some((i, w)) = m.row_weights().into_iter().enumerate().find(|&(_, w)| w != (q - 1) / 2) {
        return fail(format!("row {i} has weight {w}, expected {}", (q - 1) / 2));
    }
    if let Some((j, w)) = m.col_weights().into_iter().enumerate().find(|&(_, w)| w != (q + 1) / 2) {
        return fail(format!("column {j} has weight {w}, expected {}", (q + 1) / 2));
    }
    Ok(())
}

fn join_numbers(xs: impl IntoIterator<Item = usize>) -> String {
    let mut s = String::new();
    for (k, x) in xs.into_iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        write!(s, "{x}").expect("writing to a String");
    }
    s
}

/// Variable-length alist: sizes, maximum weights, row and column weights,
/// then 1-based supports of every row and every column.
pub fn write_alist(m: &Gf2Matrix) -> String {
    let t = m.transpose();
    let rw = m.row_weights();
    let cw = m.col_weights();
    let mut s = String::new();
    writeln!(s, "{} {}", m.rows(), m.cols()).unwrap();
    writeln!(s, "{} {}", rw.iter().max().copied().unwrap_or(0), cw.iter().max().copied().unwrap_or(0)).unwrap();
    writeln!(s, "{}", join_numbers(rw)).unwrap();
    writeln!(s, "{}", join_numbers(cw)).unwrap();
    for i in 0..m.rows() {
        writeln!(s, "{}", join_numbers(m.row_support(i).into_iter().map(|j| j + 1))).unwrap();
    }
    for j in 0..m.cols() {
        writeln!(s, "{}", join_numbers(t.row_support(j).into_iter().map(|i| i + 1))).unwrap();
    }
    s
}

/// Inverse of [`write_alist`]. Row and column sections must describe the
/// same matrix and agree with the declared weights.
pub fn parse_alist(text: &str) -> Result<Gf2Matrix, AlistError> {
    let lines: Vec<&str> = text.split('\n').collect();
    let err = |line: usize, msg: String| AlistError { line: line + 1, msg };
    let numbers = |k: usize| -> Result<Vec<usize>, AlistError> {
        let line = lines.get(k).ok_or_else(|| err(k, "unexpected end of input".into()))?;
        line.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(k, format!("bad number {t:?}"))))
            .collect()
    };
    let pair = |k: usize| -> Result<(usize, usize), AlistError> {
        match numbers(k)?.as_slice() {
            &[a, b] => Ok((a, b)),
            other => Err(err(k, format!("expected two numbers, got {}", other.len()))),
        }
    };
    let (rows, cols) = pair(0)?;
    let (max_rw, max_cw) = pair(1)?;
    let rw = numbers(2)?;
    let cw = numbers(3)?;
    if rw.len() != rows || cw.len() != cols {
        return Err(err(2, format!("expected {rows} row and {cols} column weights")));
    }
    if rw.iter().max().copied().unwrap_or(0) != max_rw || cw.iter().max().copied().unwrap_or(0) != max_cw {
        return Err(err(1, "maximum weights disagree with the weight lists".into()));
    }
    let mut m = Gf2Matrix::zeros(rows, cols);
    for i in 0..rows {
        let k = 4 + i;
        let idx = numbers(k)?;
        if idx.len() != rw[i] {
            return Err(err(k, format!("row {} lists {} entries, weight says {}", i + 1, idx.len(), rw[i])));
        }
        for j in idx {
            if j == 0 || j > cols || m.get(i, j - 1) {
                return Err(err(k, format!("bad or repeated column index {j}")));
            }
            m.set(i, j - 1, true);
        }
    }
    let t = m.transpose();
    for j in 0..cols {
        let k = 4 + rows + j;
        let mut idx = numbers(k)?;
        if idx.len() != cw[j] {
            return Err(err(k, format!("column {} lists {} entries, weight says {}", j + 1, idx.len(), cw[j])));
        }
        idx.sort_unstable();
        let want: Vec<usize> = t.row_support(j).into_iter().map(|i| i + 1).collect();
        if idx != want {
            return Err(err(k, format!("column {} disagrees with the row lists", j + 1)));
        }
    }
    let rest = &lines[(4 + rows + cols).min(lines.len())..];
    if rest.iter().any(|l| !l.trim().is_empty()) {
        return Err(err(4 + rows + cols, "trailing content".into()));
    }
    Ok(m)
}

/// One line of `0`/`1` characters per row.
pub fn write_bits(m: &Gf2Matrix) -> String {
    let mut s = String::with_capacity(m.rows() * (m.cols() + 1));
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            s.push(if m.get(i, j) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

/// Inverse of [`write_bits`].
pub fn parse_bits(text: &str) -> Result<Gf2Matrix, AlistError> {
    let rows: Vec<BitVec> = text
        .lines()
        .enumerate()
        .map(|(k, line)| {
            line.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(AlistError { line: k + 1, msg: format!("unexpected character {other:?}") }),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(|b| BitVec::from_bools(&b))
        })
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, BitVec::len);
    Gf2Matrix::from_rows(cols, &rows).map_err(|e| AlistError { line: 0, msg: e.to_string() })
}

fn write_matrix_json(q: usize, lm: &LabeledMatrix) -> Result<String, CliError> {
    let m = &lm.matrix;
    let doc = json!({
        "matrix": lm.name.as_str(),
        "q": q,
        "rows": m.rows(),
        "cols": m.cols(),
        "row_kind": lm.row_kind,
        "col_kind": lm.col_kind,
        "row_labels": lm.row_labels,
        "col_labels": lm.col_labels,
        "row_support": (0..m.rows()).map(|i| m.row_support(i)).collect::<Vec<_>>(),
    });
    to_json(&doc)
}

/// Dense CSV with the geometry indices as header row and first column.
fn write_matrix_csv(lm: &LabeledMatrix) -> String {
    let m = &lm.matrix;
    let mut s = String::from("label");
    for c in &lm.col_labels {
        write!(s, ",{c}").unwrap();
    }
    s.push('\n');
    for (i, r) in lm.row_labels.iter().enumerate() {
        write!(s, "{r}").unwrap();
        for j in 0..m.cols() {
            s.push_str(if m.get(i, j) { ",1" } else { ",0" });
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(q: u64) -> ConicGeometry {
        build_geometry(&Field::with_order(q, None).unwrap())
    }

    #[test]
    fn q_list_parsing() {
        assert_eq!(parse_q_list("3..13").unwrap().0, vec![3, 5, 7, 9, 11, 13]);
        assert_eq!(parse_q_list("5,4, 9").unwrap().0, vec![5, 4, 9]);
        assert_eq!(parse_q_list("25..=27").unwrap().0, vec![25, 27]);
        assert!(parse_q_list("9..3").is_err());
        assert!(parse_q("4").is_err());
        assert!(parse_q("8").is_err());
        assert_eq!(parse_q("81"), Ok(81));
    }

    #[test]
    fn b_alist_header_q5() {
        let s = export_matrix(&geom(5), MatrixName::B, MatrixFormat::Alist).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("15 10"));
        assert_eq!(lines.next(), Some("2 3"));
        assert!(s.ends_with('\n') && !s.contains('\r'));
    }

    #[test]
    fn b_bits_q5() {
        let s = export_matrix(&geom(5), MatrixName::B, MatrixFormat::Bits).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 15);
        assert!(lines.iter().all(|l| l.len() == 10 && l.chars().all(|c| c == '0' || c == '1')));
        assert_eq!(parse_bits(&s).unwrap(), build_matrix(&geom(5), MatrixName::B).matrix);
    }

    #[test]
    fn alist_rejects_inconsistent_input() {
        let m = build_matrix(&geom(3), MatrixName::B).matrix;
        let good = write_alist(&m);
        assert_eq!(parse_alist(&good).unwrap(), m);
        let mut lines: Vec<String> = good.lines().map(String::from).collect();
        lines[4] = String::new();
        assert!(parse_alist(&(lines.join("\n") + "\n")).is_err());
        assert!(parse_alist("2 2\n1 1\n1 1\n1 1\n1\n3\n1\n2\n").is_err());
    }

    #[test]
    fn empty_rows_round_trip() {
        // O x Pa is all zero: every support line is empty.
        let m = build_matrix(&geom(5), MatrixName::block(PointClass::Absolute, LineClass::Passant)).matrix;
        assert_eq!(m.count_ones(), 0);
        assert_eq!(parse_alist(&write_alist(&m)).unwrap(), m);
    }

    #[test]
    fn dims_rows_keep_order_and_errors() {
        let r = cmd_dims(&[5, 4, 3], None, TableFormat::Csv);
        let lines: Vec<&str> = r.text.lines().collect();
        assert_eq!(lines[0], DIMS_CSV_HEADER);
        assert!(lines[1].starts_with("5,1,9,1,6,"));
        assert_eq!(lines[2], "4,,,,,,,,,,4 is not an odd prime power");
        assert!(lines[3].starts_with("3,3,"));
        assert!(!r.success);
    }

    #[test]
    fn weight_check_rejects_a_flipped_bit() {
        let mut m = build_matrix(&geom(7), MatrixName::B).matrix;
        assert!(check_b_weights(7, &m).is_ok());
        m.toggle(0, 0);
        assert!(matches!(check_b_weights(7, &m), Err(CliError::WeightCheck { .. })));
    }

    #[test]
    fn geometry_dump_keys() {
        let v: serde_json::Value = serde_json::from_str(&dump_geometry(&geom(3))).unwrap();
        for k in ["q", "points", "lines", "conic", "polarity", "classes"] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        assert_eq!(v["points"].as_array().unwrap().len(), 13);
        assert_eq!(v["conic"].as_array().unwrap().len(), 4);
    }
}
