//! Command dispatch for the `polarinv` binary, kept in a library so the
//! commands can be driven from tests.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use polarinv::classical::{apolar_quartic, hankel_quartic, sylvester_resultant, wronskian3};
use polarinv::json::{tensor_from_json, tensor_to_json};
use polarinv::{
    binary_form_disc, gramm_form, hyperdet, hyperhessian, hyperresultant, jacobi_form, jacobi_sequence, parse_poly,
    polarize, project_k, skew_gramm, Error, ErrorKind, MultiPoly, PolarKey, Scalar, SystemOfForms, Tensor,
    VerifyConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "polarinv", version, about = "Exact hyperdeterminants, polarisations and invariants of forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Form variables, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "x,y")]
    vars: Vec<String>,
    /// Extra symbols allowed in coefficients, comma separated.
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FormArgs {
    /// Polynomial expression.
    #[arg(long = "f")]
    f: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct KeyedFormArgs {
    #[arg(long = "f")]
    f: String,
    /// Polarisation key, e.g. 1,1,1.
    #[arg(long = "K", value_delimiter = ',', required = true)]
    key: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// A form of the system; repeat for each form.
    #[arg(long = "f", required = true)]
    forms: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct JacobiArgs {
    /// A form of the system; repeat for each form.
    #[arg(long = "f", required = true)]
    forms: Vec<String>,
    /// Polarisation key of the Jacobi form.
    #[arg(long = "K", value_delimiter = ',', conflicts_with = "steps")]
    key: Vec<u32>,
    /// Order of the Jacobi sequence of a single form.
    #[arg(long)]
    steps: Option<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TensorArgs {
    /// Tensor JSON file, or `-` for standard input.
    #[arg(long)]
    tensor: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GrammArgs {
    /// The d-linear form as tensor JSON (file or `-`).
    #[arg(long)]
    tensor: String,
    /// Vectors as rows, `;` between vectors and `,` between entries.
    #[arg(long)]
    vectors: String,
    /// Use the k-th skew component of the Gramm tensor.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    #[arg(long)]
    tensor: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Coefficients are drawn from [-range, range].
    #[arg(long, default_value_t = 9)]
    range: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// K-polarisation tensor of a form.
    Polarize(KeyedFormArgs),
    /// Hyperdeterminant of a tensor.
    Hyperdet(TensorArgs),
    /// Discriminant of a binary form.
    Disc(FormArgs),
    /// Sylvester resultant of two binary forms.
    Resultant(SystemArgs),
    /// Hyperdeterminant of the K-polarisation.
    Hyperhessian(KeyedFormArgs),
    /// Hyperdeterminant of the full Jacobi form of a system.
    Hyperresultant(SystemArgs),
    /// K-Jacobi form of a system, or the Jacobi sequence of one form.
    Jacobi(JacobiArgs),
    /// Wronskian of three binary forms.
    Wronskian(SystemArgs),
    /// Hankel determinant of a binary quartic.
    Hankel(FormArgs),
    /// Apolar invariant of a binary quartic.
    Apolar(FormArgs),
    /// Gramm form of a tuple of vectors.
    Gramm(GrammArgs),
    /// Skew component of a hypercubic tensor.
    Project(ProjectArgs),
    /// Randomized verification suites.
    Verify(VerifyArgs),
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

impl Common {
    fn names(&self) -> Vec<String> {
        let mut all = self.params.clone();
        all.extend(self.vars.iter().cloned());
        all
    }

    fn parse(&self, text: &str) -> CliResult<MultiPoly> {
        parse_poly(text, &self.names())
            .map_err(|e| CliError::Usage(format!("in expression `{text}`: {e}")))
    }

    fn binary(&self) -> CliResult<(&str, &str)> {
        match self.vars.as_slice() {
            [x, y] => Ok((x, y)),
            v => Err(CliError::Usage(format!("this command needs exactly two --vars, got {}", v.len()))),
        }
    }
}

fn key(parts: &[u32]) -> CliResult<PolarKey> {
    Ok(PolarKey::new(parts.to_vec())?)
}

fn read_source(path: &str, stdin: &mut dyn Read) -> CliResult<String> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn read_tensor(path: &str, stdin: &mut dyn Read) -> CliResult<Tensor> {
    let text = read_source(path, stdin)?;
    tensor_from_json(&text).map_err(|e| match e.kind() {
        ErrorKind::Usage => CliError::Usage(format!("{path}: {e}")),
        _ => CliError::Lib(e),
    })
}

fn parse_vectors(text: &str) -> CliResult<Vec<Vec<Scalar>>> {
    let none: [&str; 0] = [];
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|entry| {
                    let p = parse_poly(entry.trim(), &none)
                        .map_err(|e| CliError::Usage(format!("in vector entry `{entry}`: {e}")))?;
                    Ok(p.constant_value().unwrap_or_else(Scalar::zero))
                })
                .collect()
        })
        .collect()
}

fn poly_output(command: &str, p: &MultiPoly, as_json: bool) -> String {
    if as_json {
        format!("{}\n", json!({"schema": 1, "command": command, "result": p.to_string()}))
    } else {
        format!("{p}\n")
    }
}

fn tensor_output(t: &Tensor, as_json: bool) -> String {
    if as_json {
        return format!("{}\n", tensor_to_json(t));
    }
    let mut out = format!("shape {}\n", t.shape());
    for (idx, e) in t.shape().indices().zip(t.entries()) {
        let idx: Vec<String> = idx.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "[{}] {e}", idx.join(","));
    }
    out
}

fn system(forms: &[String], common: &Common) -> CliResult<Vec<MultiPoly>> {
    forms.iter().map(|f| common.parse(f)).collect()
}

fn exactly<const N: usize>(forms: Vec<MultiPoly>, command: &str) -> CliResult<[MultiPoly; N]> {
    let n = forms.len();
    forms
        .try_into()
        .map_err(|_| CliError::Usage(format!("{command} needs exactly {N} --f forms, got {n}")))
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> CliResult<(i32, String)> {
    let ok = |s: String| Ok((EXIT_OK, s));
    match cmd {
        Command::Polarize(a) => {
            let f = a.common.parse(&a.f)?;
            let t = polarize(&f, &a.common.vars, &key(&a.key)?)?;
            ok(tensor_output(&t, a.common.json))
        }
        Command::Hyperdet(a) => {
            let t = read_tensor(&a.tensor, stdin)?;
            ok(poly_output("hyperdet", &hyperdet(&t)?, a.json))
        }
        Command::Disc(a) => {
            let (x, y) = a.common.binary()?;
            let f = a.common.parse(&a.f)?;
            ok(poly_output("disc", &binary_form_disc(&f, x, y)?, a.common.json))
        }
        Command::Resultant(a) => {
            let (x, y) = a.common.binary()?;
            let [f, g] = exactly::<2>(system(&a.forms, &a.common)?, "resultant")?;
            ok(poly_output("resultant", &sylvester_resultant(&f, &g, x, y)?, a.common.json))
        }
        Command::Hyperhessian(a) => {
            let f = a.common.parse(&a.f)?;
            let h = hyperhessian(&f, &a.common.vars, &key(&a.key)?)?;
            ok(poly_output("hyperhessian", &h, a.common.json))
        }
        Command::Hyperresultant(a) => {
            let sys = SystemOfForms::new(system(&a.forms, &a.common)?, &a.common.vars)?;
            ok(poly_output("hyperresultant", &hyperresultant(&sys)?, a.common.json))
        }
        Command::Jacobi(a) => {
            let forms = system(&a.forms, &a.common)?;
            let t = match a.steps {
                Some(steps) => {
                    let [f] = exactly::<1>(forms, "jacobi --steps")?;
                    jacobi_sequence(&f, &a.common.vars, steps)?
                }
                None if a.key.is_empty() => {
                    return Err(CliError::Usage("jacobi needs --K or --steps".into()));
                }
                None => jacobi_form(&SystemOfForms::new(forms, &a.common.vars)?, &key(&a.key)?)?,
            };
            ok(tensor_output(&t, a.common.json))
        }
        Command::Wronskian(a) => {
            let (x, y) = a.common.binary()?;
            let [f1, f2, f3] = exactly::<3>(system(&a.forms, &a.common)?, "wronskian")?;
            ok(poly_output("wronskian", &wronskian3([&f1, &f2, &f3], x, y)?, a.common.json))
        }
        Command::Hankel(a) => {
            let (x, y) = a.common.binary()?;
            let f = a.common.parse(&a.f)?;
            ok(poly_output("hankel", &hankel_quartic(&f, x, y)?, a.common.json))
        }
        Command::Apolar(a) => {
            let (x, y) = a.common.binary()?;
            let f = a.common.parse(&a.f)?;
            ok(poly_output("apolar", &apolar_quartic(&f, x, y)?, a.common.json))
        }
        Command::Gramm(a) => {
            let f = read_tensor(&a.tensor, stdin)?;
            let u = parse_vectors(&a.vectors)?;
            let g = match a.k {
                Some(k) => skew_gramm(&f, &u, k)?,
                None => gramm_form(&f, &u)?,
            };
            if a.json {
                let doc = json!({
                    "schema": 1,
                    "command": "gramm",
                    "base": g.base.to_string(),
                    "exponent": g.exponent.to_string(),
                });
                ok(format!("{doc}\n"))
            } else {
                ok(format!("{g}\n"))
            }
        }
        Command::Project(a) => {
            let t = read_tensor(&a.tensor, stdin)?;
            ok(tensor_output(&project_k(&t, a.k)?, a.json))
        }
        Command::Verify(a) => {
            let cfg = VerifyConfig {
                seed: a.seed,
                trials: a.trials,
                range: a.range,
            };
            let report = polarinv::verify::verify(&a.suite, &cfg)?;
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            let text = if a.json {
                format!("{}\n", report.to_json())
            } else {
                report.to_string()
            };
            Ok((code, text))
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(err) => {
            let (code, msg) = match err {
                CliError::Usage(m) => (EXIT_USAGE, m),
                CliError::Lib(e) => (
                    match e.kind() {
                        ErrorKind::Usage => EXIT_USAGE,
                        ErrorKind::Domain => EXIT_DOMAIN,
                        ErrorKind::Unsupported => EXIT_UNSUPPORTED,
                    },
                    e.to_string(),
                ),
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}
