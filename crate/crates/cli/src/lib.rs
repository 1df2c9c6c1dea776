//! Command-line front end: verification suite, certificate, Levi-Civita
//! solve and operator export.

mod suite;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use suq2_core::calculus::{build_psym, select_variant, CalculusError, Selection, Sign, Variant};
use suq2_core::certify::CertifyError;
use suq2_core::connection::{build_nabla0, levi_civita, metric_basis, ConnectionError, Metric};
use suq2_core::{FieldElem, SymMat};

pub use suite::{certify_report, verify_report, DataGateFailure};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CONFIG: i32 = 1;
    pub const PROPERTY: i32 = 2;
    pub const DATA: i32 = 3;
    pub const SINGULAR_METRIC: i32 = 4;
    pub const PHI_SINGULAR: i32 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "suq2", about = "Exact Levi-Civita certification for the 4D± calculi on SU_q(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Sign of the calculus.
    #[arg(long, global = true, default_value = "plus")]
    pub sign: SignArg,
    /// Value of t for specialisations, as p/q.
    #[arg(long, global = true, default_value = "2")]
    pub t: String,
    /// Value of k for specialisations, as p/q.
    #[arg(long, global = true, default_value = "3")]
    pub k: String,
    /// Eigen-table reading of the third eigenspace.
    #[arg(long, global = true, default_value = "auto")]
    pub variant: VariantArg,
    /// Output path; "-" writes to standard output.
    #[arg(long, global = true, default_value = "./report.json")]
    pub out: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every property check and write report.json.
    Verify,
    /// Emit the determinant certificate and exceptional-q intervals.
    Certify {
        /// Also write the regenerated coefficient equations and their diff here.
        #[arg(long)]
        lemmas: Option<PathBuf>,
    },
    /// Solve for the Levi-Civita connection of a metric given as a 4×4 JSON grid.
    Lc { metric: PathBuf },
    /// Write an operator as JSON.
    Export { what: ExportArg },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Auto,
    Paper,
    Corrected,
    Symmetric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExportArg {
    Sigma,
    Psym,
    Nabla0,
    MetricBasis,
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub sign: Sign,
    pub variant: Option<Variant>,
    pub t0: BigRational,
    pub k0: BigRational,
    pub out: String,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, String> {
        let rational = |name: &str, v: &str| -> Result<BigRational, String> {
            let x: BigRational = v.trim().parse().map_err(|_| format!("--{} must be a rational p/q, got '{}'", name, v))?;
            if x.is_zero() {
                return Err(format!("--{} must be nonzero", name));
            }
            Ok(x)
        };
        Ok(RunConfig {
            sign: match cli.sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            },
            variant: match cli.variant {
                VariantArg::Auto => None,
                VariantArg::Paper => Some(Variant::Paper),
                VariantArg::Corrected => Some(Variant::Corrected),
                VariantArg::Symmetric => Some(Variant::Symmetric),
            },
            t0: rational("t", &cli.t)?,
            k0: rational("k", &cli.k)?,
            out: cli.out.clone(),
        })
    }

    /// The specialisations used for exceptional q: the configured one and a
    /// second one for the (t, k)-dependence check.
    pub fn specialisations(&self) -> Vec<(BigRational, BigRational)> {
        let r = |n: i64| BigRational::from_integer(n.into());
        let second = if (self.t0.clone(), self.k0.clone()) == (r(5), r(7)) { (r(2), r(3)) } else { (r(5), r(7)) };
        vec![(self.t0.clone(), self.k0.clone()), second]
    }
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<CalculusError> for Failure {
    fn from(e: CalculusError) -> Self {
        let code = match e {
            CalculusError::Data(_) | CalculusError::DependentEigenvectors { .. } => exit::DATA,
            _ => exit::PROPERTY,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ConnectionError> for Failure {
    fn from(e: ConnectionError) -> Self {
        let code = match e {
            ConnectionError::SingularMetric => exit::SINGULAR_METRIC,
            ConnectionError::PhiSingular { .. } => exit::PHI_SINGULAR,
            ConnectionError::NotInvariant(_) | ConnectionError::MetricShape(_) => exit::DATA,
            ConnectionError::Calculus(c) => return c.into(),
            _ => exit::PROPERTY,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        let code = match e {
            CertifyError::InterpolationInconsistent(_) => exit::PROPERTY,
            CertifyError::BasisChangeFailure(_) | CertifyError::Data(_) => exit::DATA,
            CertifyError::Calculus(c) => return c.into(),
            _ => exit::PROPERTY,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<DataGateFailure> for Failure {
    fn from(e: DataGateFailure) -> Self {
        Failure::new(exit::DATA, e.0)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn write_output(path: &str, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    if path == "-" {
        stdout.write_all(text.as_bytes()).map_err(|e| Failure::new(exit::CONFIG, e.to_string()))
    } else {
        std::fs::write(path, text).map_err(|e| Failure::new(exit::CONFIG, format!("cannot write {}: {}", path, e)))
    }
}

/// An operator with its basis labels.
#[derive(Serialize)]
pub struct OperatorJson {
    pub name: String,
    pub variant: String,
    pub sign: Option<String>,
    pub dimensions: [usize; 2],
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl OperatorJson {
    pub fn new(name: &str, variant: Variant, sign: Option<Sign>, m: &SymMat) -> Self {
        OperatorJson {
            name: name.into(),
            variant: variant.to_string(),
            sign: sign.map(|s| s.to_string()),
            dimensions: [m.rows(), m.cols()],
            row_labels: m.row_labels.clone(),
            col_labels: m.col_labels.clone(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect(),
        }
    }
}

#[derive(Serialize)]
struct MetricBasisJson {
    name: String,
    variant: String,
    count: usize,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    elements: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct Verification {
    metric_invariant: bool,
    metric_nondegenerate: bool,
    torsion_zero: bool,
    pi0_zero: bool,
}

#[derive(Serialize)]
struct LcJson {
    variant: String,
    sign: String,
    metric: Vec<Vec<String>>,
    connection: OperatorJson,
    correction_is_zero: bool,
    verification: Verification,
}

fn selection(cfg: &RunConfig) -> Result<Selection, Failure> {
    Ok(select_variant(cfg.variant)?)
}

/// Parse a metric file: a 4×4 grid of field-element strings or numbers,
/// optionally wrapped as {"metric": grid}.
pub fn parse_metric(text: &str, sel: &Selection) -> Result<Metric, Failure> {
    let bad = |m: String| Failure::new(exit::DATA, m);
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(format!("metric file is not JSON: {}", e)))?;
    let grid = match &v {
        serde_json::Value::Object(o) => o.get("metric").ok_or_else(|| bad("metric object needs a \"metric\" key".into()))?,
        other => other,
    };
    let rows = grid.as_array().ok_or_else(|| bad("metric must be a 4x4 array".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row.as_array().ok_or_else(|| bad("metric rows must be arrays".into()))?;
        let mut r = Vec::with_capacity(cells.len());
        for c in cells {
            let text = match c {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                other => return Err(bad(format!("metric entry {} is not an integer or expression string", other))),
            };
            let x: FieldElem = text.parse().map_err(|e| bad(format!("metric entry '{}': {}", text, e)))?;
            r.push(sel.data.bind(&x).map_err(Failure::from)?);
        }
        out.push(r);
    }
    Ok(Metric::from_grid(out)?)
}

fn cmd_lc(cfg: &RunConfig, path: &PathBuf, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(exit::DATA, format!("cannot read {}: {}", path.display(), e)))?;
    let sel = selection(cfg)?;
    let g = parse_metric(&text, &sel)?;
    g.check_nondegenerate()?;
    g.check_invariant(&sel.braiding)?;
    let psym = build_psym(&sel.braiding);
    let lc = levi_civita(&g, cfg.sign, &sel.braiding, &psym, &sel.data)?;
    let out = LcJson {
        variant: sel.data.variant.to_string(),
        sign: cfg.sign.to_string(),
        metric: g.to_strings(),
        connection: OperatorJson::new("nabla", sel.data.variant, Some(cfg.sign), &lc.connection.nabla),
        correction_is_zero: lc.correction.iter().all(|x| x.is_zero()),
        verification: Verification {
            metric_invariant: true,
            metric_nondegenerate: true,
            torsion_zero: lc.torsion_zero,
            pi0_zero: lc.pi0_zero,
        },
    };
    write_output(&cfg.out, &to_json(&out), stdout)?;
    Ok(if lc.torsion_zero && lc.pi0_zero { exit::OK } else { exit::PROPERTY })
}

fn cmd_export(cfg: &RunConfig, what: ExportArg, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let sel = selection(cfg)?;
    let v = sel.data.variant;
    let text = match what {
        ExportArg::Sigma => to_json(&OperatorJson::new("sigma", v, None, &sel.braiding.sigma)),
        ExportArg::Psym => to_json(&OperatorJson::new("psym", v, None, &build_psym(&sel.braiding))),
        ExportArg::Nabla0 => {
            to_json(&OperatorJson::new("nabla0", v, Some(cfg.sign), &build_nabla0(cfg.sign, &sel.braiding).nabla))
        }
        ExportArg::MetricBasis => {
            let basis = metric_basis(&sel.braiding);
            let labels: Vec<String> = (1..=4).map(|i| format!("w{}", i)).collect();
            to_json(&MetricBasisJson {
                name: "metric-basis".into(),
                variant: v.to_string(),
                count: basis.len(),
                row_labels: labels.clone(),
                col_labels: labels,
                elements: basis.iter().map(|m| m.to_strings()).collect(),
            })
        }
    };
    write_output(&cfg.out, &text, stdout)?;
    Ok(exit::OK)
}

fn cmd_verify(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let report = verify_report(cfg)?;
    write_output(&cfg.out, &to_json(&report), stdout)?;
    for name in report.failures() {
        let _ = writeln!(stderr, "FAIL {}", name);
    }
    Ok(if report.all_pass() { exit::OK } else { exit::PROPERTY })
}

fn cmd_certify(
    cfg: &RunConfig,
    lemmas: &Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let (report, diff) = certify_report(cfg)?;
    if let Some(path) = lemmas {
        std::fs::write(path, to_json(&diff))
            .map_err(|e| Failure::new(exit::CONFIG, format!("cannot write {}: {}", path.display(), e)))?;
    }
    write_output(&cfg.out, &to_json(&report), stdout)?;
    for name in report.failures() {
        let _ = writeln!(stderr, "FAIL {}", name);
    }
    Ok(if report.all_pass() { exit::OK } else { exit::PROPERTY })
}

/// Run the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return exit::CONFIG;
            }
            let _ = write!(stdout, "{}", e.render());
            return exit::OK;
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(m) => {
            let _ = writeln!(stderr, "error: {}", m);
            return exit::CONFIG;
        }
    };
    let result = match &cli.command {
        Command::Verify => cmd_verify(&cfg, stdout, stderr),
        Command::Certify { lemmas } => cmd_certify(&cfg, lemmas, stdout, stderr),
        Command::Lc { metric } => cmd_lc(&cfg, metric, stdout),
        Command::Export { what } => cmd_export(&cfg, *what, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
