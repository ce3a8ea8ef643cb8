//! Command-line front end.
//!
//! Algebra files are JSON:
//!
//! ```text
//! {"field": {"kind": "Q"}, "dim": 2, "matrix": [["0", "1"], ["1", "0"]]}
//! {"field": {"kind": "Fp", "p": 3}, ...}
//! {"field": {"kind": "R", "tol": 1e-9}, ...}
//! ```
//!
//! Row `i` of `matrix` holds the coordinates of `e_i²`. Matrix entries are
//! scalar strings (`"-1"`, `"2/3"`, `"1.5"`); bare JSON integers are accepted
//! on input and written back as strings.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, EvolutionAlgebra};
use crate::error::Error;
use crate::field::{parse_vector, FieldKind, FieldSpec, Scalar};
use crate::finder::{self, CodimOneCase, PairDiagnostic, PairOutcome, SubalgebraReport};
use crate::linalg::Matrix;
use crate::oracle::{self, DEFAULT_MAX_SUBSPACES};
use crate::subspace::{self, Subspace};

#[derive(Debug, Parser)]
#[command(name = "evalg", version, about = "Subalgebras of evolution algebras")]
pub struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    pub json: bool,
    /// Per-pair diagnostics for codim1
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// Cap on the number of subspaces a brute-force search may visit
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_MAX_SUBSPACES)]
    pub max_size: u128,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, field and structure matrix
    Info { file: PathBuf },
    /// Regularity verdict and determinant
    Regular { file: PathBuf },
    /// All codimension-one subalgebras (regular algebras)
    Codim1 { file: PathBuf },
    /// One-dimensional subalgebras, or the residual of a candidate vector
    Onedim {
        file: PathBuf,
        /// Candidate vector, e.g. "1,0,-1/2"
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Is a span closed under the product
    Verify {
        file: PathBuf,
        /// Spanning vectors, e.g. "1,0,0;0,1,1"
        #[arg(long, allow_hyphen_values = true)]
        span: String,
    },
    /// Natural basis of a subalgebra of a regular algebra
    NaturalBasis {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        span: String,
    },
    /// Brute-force list of all subalgebras (prime fields only)
    Enumerate { file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Integer(i64),
}

impl ScalarText {
    fn as_text(&self) -> String {
        match self {
            ScalarText::Text(s) => s.clone(),
            ScalarText::Integer(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldDescriptor,
    pub dim: usize,
    pub matrix: Vec<Vec<ScalarText>>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("algebra file: {e}")))
    }

    pub fn spec(&self) -> Result<FieldSpec, CliError> {
        let f = &self.field;
        let spec = match f.kind.as_str() {
            "Q" => FieldSpec::rationals(),
            "Fp" => {
                let p =
                    f.p.ok_or_else(|| CliError::Usage("field kind Fp needs \"p\"".into()))?;
                FieldSpec::prime(p).map_err(usage)?
            }
            "R" => {
                let tol = f
                    .tol
                    .ok_or_else(|| CliError::Usage("field kind R needs \"tol\"".into()))?;
                FieldSpec::reals(tol).map_err(usage)?
            }
            other => {
                return Err(CliError::Usage(format!(
                    "unknown field kind {other:?} (expected Q, Fp or R)"
                )))
            }
        };
        Ok(spec)
    }

    pub fn to_algebra(&self) -> Result<EvolutionAlgebra, CliError> {
        let spec = self.spec()?;
        if self.matrix.len() != self.dim || self.matrix.iter().any(|r| r.len() != self.dim) {
            return Err(CliError::Usage(format!("matrix must be {0}x{0}", self.dim)));
        }
        let rows: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(ScalarText::as_text).collect())
            .collect();
        let m = Matrix::parse_rows(spec, &rows).map_err(usage)?;
        EvolutionAlgebra::new(spec, m).map_err(usage)
    }

    /// Canonical file for an algebra: scalars rendered as strings.
    pub fn from_algebra(a: &EvolutionAlgebra) -> Self {
        let spec = a.spec();
        let field = match spec.kind() {
            FieldKind::Rationals => FieldDescriptor {
                kind: "Q".into(),
                p: None,
                tol: None,
            },
            FieldKind::PrimeField { p } => FieldDescriptor {
                kind: "Fp".into(),
                p: Some(p),
                tol: None,
            },
            FieldKind::ApproxReals { tol } => FieldDescriptor {
                kind: "R".into(),
                p: None,
                tol: Some(tol),
            },
        };
        let matrix = a
            .structure()
            .row_iter()
            .map(|r| r.iter().map(|x| ScalarText::Text(x.to_string())).collect())
            .collect();
        AlgebraFile {
            field,
            dim: a.dim(),
            matrix,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or an unreadable/malformed input file (exit 2).
    Usage(String),
    /// A well-formed request the mathematics refuses (exit 1).
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn load(path: &Path) -> Result<EvolutionAlgebra, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    AlgebraFile::parse(&text)?.to_algebra()
}

fn parse_element(a: &EvolutionAlgebra, text: &str) -> Result<Element, CliError> {
    let coords = parse_vector(text, a.spec()).map_err(usage)?;
    if coords.len() != a.dim() {
        return Err(CliError::Usage(format!(
            "vector {text:?} has {} coordinates, algebra has dimension {}",
            coords.len(),
            a.dim()
        )));
    }
    a.element(coords).map_err(usage)
}

fn parse_span(a: &EvolutionAlgebra, text: &str) -> Result<Subspace, CliError> {
    let vectors = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|v| parse_element(a, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(subspace::canonicalize(a, &vectors)?)
}

fn scalar_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn element_json(e: &Element) -> Value {
    Value::Array(e.coords().iter().map(scalar_json).collect())
}

fn subspace_json(s: &Subspace) -> Value {
    Value::Array(s.basis_elements().iter().map(element_json).collect())
}

fn case_json(case: &CodimOneCase) -> Value {
    match case {
        CodimOneCase::RankOneRow { alpha, beta } => {
            json!({"kind": "rank-one-row", "alpha": scalar_json(alpha), "beta": scalar_json(beta)})
        }
        CodimOneCase::RankZeroRoot { lambda } => {
            json!({"kind": "cubic-root", "lambda": scalar_json(lambda)})
        }
        CodimOneCase::DropQ => json!({"kind": "drop-q"}),
        CodimOneCase::DropP => json!({"kind": "drop-p"}),
    }
}

fn case_text(case: &CodimOneCase) -> String {
    match case {
        CodimOneCase::RankOneRow { alpha, beta } => format!("row ({alpha}, {beta})"),
        CodimOneCase::RankZeroRoot { lambda } => format!("root λ = {lambda}"),
        CodimOneCase::DropQ => "drop e_q".into(),
        CodimOneCase::DropP => "drop e_p".into(),
    }
}

fn pair_json(d: &PairDiagnostic) -> Value {
    let outcome = match &d.outcome {
        PairOutcome::RankTwo => json!({"kind": "rank-two"}),
        PairOutcome::RankOne {
            alpha,
            beta,
            lhs,
            rhs,
            holds,
        } => json!({
            "kind": "rank-one",
            "alpha": scalar_json(alpha),
            "beta": scalar_json(beta),
            "lhs": scalar_json(lhs),
            "rhs": scalar_json(rhs),
            "holds": holds,
        }),
        PairOutcome::RankZero {
            cubic,
            roots,
            near_misses,
            drop_q,
            drop_p,
        } => {
            let coefficients: Vec<Value> =
                cubic.coefficients().into_iter().map(scalar_json).collect();
            json!({
            "kind": "rank-zero",
            "cubic": cubic.to_string(),
            "coefficients": coefficients,
            "roots": roots.iter().map(scalar_json).collect::<Vec<_>>(),
            "near_misses": near_misses
                .iter()
                .map(|(x, r)| json!({"lambda": format!("{x:.16e}"), "residual": format!("{r:.3e}")}))
                .collect::<Vec<_>>(),
            "drop_q": drop_q,
            "drop_p": drop_p,
            })
        }
    };
    let rejected: Vec<Value> = d
        .rejected
        .iter()
        .map(|(s, r)| json!({"basis": subspace_json(s), "residual": format!("{r:.3e}")}))
        .collect();
    json!({"p": d.p, "q": d.q, "rank": d.rank, "outcome": outcome, "rejected": rejected})
}

fn pair_text(d: &PairDiagnostic, out: &mut String) {
    let (p, q) = (d.p, d.q);
    let _ = write!(out, "pair ({p},{q}): rank {}", d.rank);
    match &d.outcome {
        PairOutcome::RankTwo => out.push_str("; no subalgebra\n"),
        PairOutcome::RankOne {
            alpha,
            beta,
            lhs,
            rhs,
            holds,
        } => {
            let verdict = if *holds { "=" } else { "!=" };
            let _ = writeln!(out, "; row ({alpha}, {beta}); {lhs} {verdict} {rhs}");
        }
        PairOutcome::RankZero {
            cubic,
            roots,
            near_misses,
            drop_q,
            drop_p,
        } => {
            let _ = write!(out, "; cubic {cubic}; nonzero roots: ");
            if roots.is_empty() {
                out.push_str("none");
            } else {
                let shown: Vec<String> = roots.iter().map(Scalar::to_string).collect();
                out.push_str(&shown.join(", "));
            }
            let rel = |zero: bool| if zero { "=" } else { "!=" };
            let _ = writeln!(
                out,
                "; a_{p}{q} {} 0; a_{q}{p} {} 0",
                rel(*drop_q),
                rel(*drop_p)
            );
            for (x, r) in near_misses {
                let _ = writeln!(out, "  near miss: λ = {x:.16e} (residual {r:.3e})");
            }
        }
    }
    for (s, r) in &d.rejected {
        let _ = writeln!(out, "  rejected: {s} (closure residual {r:.3e})");
    }
}

fn count_line(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn report_text(r: &SubalgebraReport, verbose: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        count_line(r.subalgebras.len(), "codimension-one subalgebra")
    );
    for f in &r.subalgebras {
        let (p, q) = f.pair;
        let _ = writeln!(
            out,
            "{}  [pair ({p},{q}), {}]",
            f.subspace,
            case_text(&f.case)
        );
    }
    if verbose {
        for d in &r.diagnostics {
            pair_text(d, &mut out);
        }
    }
    out
}

fn report_json(r: &SubalgebraReport) -> Value {
    let subs: Vec<Value> = r
        .subalgebras
        .iter()
        .map(|f| json!({"basis": subspace_json(&f.subspace), "pair": [f.pair.0, f.pair.1], "case": case_json(&f.case)}))
        .collect();
    json!({
        "field": r.spec.to_string(),
        "dim": r.dim,
        "count": r.subalgebras.len(),
        "subalgebras": subs,
        "pairs": r.diagnostics.iter().map(pair_json).collect::<Vec<_>>(),
    })
}

fn basis_with_supports_text(basis: &[Element], out: &mut String) {
    for e in basis {
        let _ = writeln!(out, "  {e}  support {}", e.support());
    }
}

fn basis_with_supports_json(basis: &[Element]) -> Value {
    Value::Array(
        basis
            .iter()
            .map(|e| json!({"vector": element_json(e), "support": e.support().indices()}))
            .collect(),
    )
}

fn render(cli: &Cli, value: Value, text: String) -> String {
    if cli.json {
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

/// Runs one parsed command and returns what goes to standard output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Info { file } => {
            let a = load(file)?;
            let canonical = AlgebraFile::from_algebra(&a);
            let value = serde_json::to_value(&canonical).expect("AlgebraFile serializes");
            let mut text = format!(
                "dimension: {}\nfield: {}\nstructure matrix:\n",
                a.dim(),
                a.spec()
            );
            for line in a.structure().to_string().lines() {
                let _ = writeln!(text, "  {line}");
            }
            Ok(render(cli, value, text))
        }
        Command::Regular { file } => {
            let a = load(file)?;
            let det = a.structure().determinant()?;
            let regular = !det.is_zero();
            let text = if regular {
                format!("regular (det = {det})\n")
            } else {
                format!("not regular (det = {det})\n")
            };
            Ok(render(
                cli,
                json!({"regular": regular, "determinant": scalar_json(&det)}),
                text,
            ))
        }
        Command::Codim1 { file } => {
            let a = load(file)?;
            let report = finder::enumerate_codim1(&a)?;
            Ok(render(
                cli,
                report_json(&report),
                report_text(&report, cli.verbose),
            ))
        }
        Command::Onedim {
            file,
            vector: Some(v),
        } => {
            let a = load(file)?;
            let x = parse_element(&a, v)?;
            let r = finder::onedim_residual(&a, &x)?;
            let solution = r.is_zero();
            let mut text = format!(
                "residual: {r}\nsolution: {}\n",
                if solution { "yes" } else { "no" }
            );
            if solution && !x.is_zero() {
                let _ = writeln!(
                    text,
                    "subalgebra: {}",
                    subspace::canonicalize(&a, std::slice::from_ref(&x))?
                );
            }
            let value = json!({"vector": element_json(&x), "residual": element_json(&r), "solution": solution});
            Ok(render(cli, value, text))
        }
        Command::Onedim { file, vector: None } => {
            let a = load(file)?;
            let lines = finder::solve_onedim_with_limit(&a, cli.max_size)?;
            let mut text = format!(
                "{}\n",
                count_line(lines.len(), "one-dimensional subalgebra")
            );
            for l in &lines {
                let _ = writeln!(text, "{l}");
            }
            let value = json!({"count": lines.len(), "subalgebras": lines.iter().map(subspace_json).collect::<Vec<_>>()});
            Ok(render(cli, value, text))
        }
        Command::Verify { file, span } => {
            let a = load(file)?;
            let s = parse_span(&a, span)?;
            let closed = s.is_subalgebra();
            let mut text = String::new();
            let mut value = json!({"span": subspace_json(&s), "subalgebra": closed});
            if !closed {
                text.push_str("subalgebra: no\n");
            } else if !a.is_regular() {
                text.push_str(
                    "subalgebra: yes; natural basis: unavailable (ambient algebra not regular)\n",
                );
                value["natural_basis"] = Value::Null;
            } else {
                let basis = s.natural_basis()?;
                text.push_str("subalgebra: yes; natural basis:\n");
                basis_with_supports_text(&basis, &mut text);
                value["natural_basis"] = basis_with_supports_json(&basis);
            }
            Ok(render(cli, value, text))
        }
        Command::NaturalBasis { file, span } => {
            let a = load(file)?;
            let basis = parse_span(&a, span)?.natural_basis()?;
            let mut text = String::new();
            basis_with_supports_text(&basis, &mut text);
            Ok(render(
                cli,
                json!({"natural_basis": basis_with_supports_json(&basis)}),
                text,
            ))
        }
        Command::Enumerate { file } => {
            let a = load(file)?;
            let subs = oracle::enumerate_subalgebras(&a, cli.max_size)?;
            let proper = subs.iter().filter(|s| s.is_proper_nonzero()).count();
            let mut text = format!(
                "{} ({proper} proper nonzero)\n",
                count_line(subs.len(), "subalgebra")
            );
            for s in &subs {
                let _ = writeln!(text, "{s}");
            }
            let value = json!({
                "count": subs.len(),
                "proper_nonzero": proper,
                "subalgebras": subs.iter().map(subspace_json).collect::<Vec<_>>(),
            });
            Ok(render(cli, value, text))
        }
    }
}

/// Parses `args` (program name first), runs the command and writes to
/// `out`/`err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
