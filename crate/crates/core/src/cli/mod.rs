//! The `qjfrac` command line. [`run`] parses arguments, dispatches, writes
//! to stdout/stderr and returns the process exit code:
//!
//! - `0` success
//! - `1` a verification reported a failure (the JSON report is still printed)
//! - `2` usage error
//!
//! Expression flags (`--a`, `--b`, `--x`, `--z`) take rational functions of
//! `q` built from integers, `q`, `+ - * / ^` and parentheses, for example
//! `(1-q)^2/(1+q^3)`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use crate::arith::{parse_qratfn, QPoly, QRatFn};
use crate::convergence::{
    numeric_convergence_probe, precision_bits, pringsheim_margins, threshold_radius, BReading, HpComplex,
};
use crate::divisor::{
    approximant_mod_p, divisor_table, rational_approximant, sigma_special_case_check, tilde_d0j, DivisorGFRequest, Window,
};
use crate::error::Error;
use crate::jfraction::{
    convergent_coefficients, convergents, named_target, pochhammer_spec, random_terms, series_to_jfraction,
    table1_preset, JFractionSpec, PochhammerParams, PresetParams, SpecWire, Table1Row, Terms,
};
use crate::oracles;
use crate::report::{ReportSet, SCHEMA_VERSION};
use crate::stirling::{first_column_formula_check, verify_lemmas, verify_pq_coefficient_relation};

const EXPR_HELP: &str = "rational function of q: integers, q, + - * / ^, parentheses";

#[derive(Parser, Debug)]
#[command(name = "qjfrac", version, about = "Exact J-fraction expansions over Q(q) and divisor-function generators")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and invert J-fractions
    #[command(subcommand)]
    Jfrac(JfracCmd),
    /// Exact identity checks
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Divisor-function generators
    #[command(subcommand)]
    Divisor(DivisorCmd),
    /// Extended-precision convergence diagnostics
    #[command(subcommand)]
    Converge(ConvergeCmd),
    /// Brute-force ground truth
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Preset name: pochhammer_a, reciprocal_qq, pochhammer_zqn,
    /// reciprocal_pochhammer_zqn, pochhammer_ratio
    #[arg(long, conflicts_with = "spec_file")]
    preset: Option<String>,
    #[arg(long, help = EXPR_HELP)]
    a: Option<String>,
    #[arg(long, help = EXPR_HELP)]
    b: Option<String>,
    /// Second formal parameter for the presets that use one
    #[arg(long, help = EXPR_HELP)]
    x: Option<String>,
    /// JSON spec {"name", "c": [...], "ab": [...]} with ab[0] = ab_2
    #[arg(long)]
    spec_file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum JfracCmd {
    /// Convergent P_h/Q_h and its z-coefficients
    Expand {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
        h: u32,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=128))]
        zorder: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Recover c_i, ab_i from a named series
    Invert {
        /// one_over_1mqn, n_over_1mqn, or n<k>_over_1mqn
        #[arg(long)]
        target: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SpecKind {
    /// (a, b) = (q, q^2)
    Divisor,
    /// random rational c_i, ab_i from --seed
    Random,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Expansion lemmas for P_h and Q_h, plus the measured claim readings
    Lemmas {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        h: u32,
        #[arg(long, value_enum, default_value_t = SpecKind::Divisor)]
        spec: SpecKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, help = EXPR_HELP)]
        a: Option<String>,
        #[arg(long, help = EXPR_HELP)]
        b: Option<String>,
        #[arg(long)]
        spec_file: Option<String>,
    },
    /// Special-case σ_α formulas against the main pipeline
    SpecialCases {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        alpha: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=5))]
        h: u32,
    },
    /// Expansions of the Q_j Q_{j+1} block
    Tilde {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        j: u32,
    },
    /// Closed form for the first column of the (q, q^2) triangle
    FirstColumn {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        h: u32,
    },
}

#[derive(Subcommand, Debug)]
enum DivisorCmd {
    /// Coefficients of the σ_α generator (α = 0 gives d(n))
    Table {
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=6))]
        alpha: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=40))]
        h: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=200))]
        order: u32,
        #[arg(long = "mod", value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The rational approximant in q, exactly or reduced mod p
    Approximant {
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=3))]
        alpha: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=5))]
        h: u32,
        #[arg(long = "mod", value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReadingArg {
    Displayed,
    Sequence,
}

#[derive(Subcommand, Debug)]
enum ConvergeCmd {
    /// |Conv_h(q, z) - (1-q) sum z^n/(1-q^{n+1})| per depth
    Probe {
        /// RE or RE,IM
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// RE or RE,IM
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=500))]
        hmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Root of the radius inequality in (0, 1)
    Radius {
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Pringsheim margins with z = q
    Margins {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=1000))]
        hmax: u32,
        #[arg(long, value_enum, default_value_t = ReadingArg::Displayed)]
        reading: ReadingArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// σ_α(n) for n = 1..=n_max
    Sigma {
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        n: u64,
    },
    /// (x; q)_n
    Pochhammer {
        #[arg(long, help = EXPR_HELP)]
        x: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
        n: u32,
    },
    /// Coefficients of sum n^α q^n/(1 - q^n)
    Lambert {
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=500))]
        order: u32,
    },
    /// Gaussian binomial [n, k]_q
    Qbinomial {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Both sides of the q-binomial theorem through q^{order-1}
    QbinomialTheorem {
        #[arg(long, help = EXPR_HELP)]
        a: String,
        #[arg(long, help = EXPR_HELP)]
        z: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        order: u32,
    },
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Run with process arguments (including the program name) and the real
/// stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.cmd {
        Command::Jfrac(c) => jfrac(c, out),
        Command::Verify(c) => verify(c, out),
        Command::Divisor(c) => divisor(c, out),
        Command::Converge(c) => converge(c, out),
        Command::Oracle(c) => oracle(c, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Mismatch) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn emit(out: &mut dyn Write, text: impl AsRef<str>) -> Outcome {
    writeln!(out, "{}", text.as_ref()).map_err(|e| Failure::Usage(format!("write failed: {e}")))
}

fn emit_json(out: &mut dyn Write, v: &impl Serialize) -> Outcome {
    emit(out, serde_json::to_string_pretty(v).expect("values serialize"))
}

fn expr(s: &str) -> std::result::Result<QRatFn, Failure> {
    parse_qratfn(s).map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
}

/// Factored text for small functions, expanded otherwise.
fn show(x: &QRatFn) -> String {
    let deg = x.num().degree().unwrap_or(0) + x.den().degree().unwrap_or(0);
    if deg <= 24 {
        x.factored()
    } else {
        x.to_string()
    }
}

fn unsupported(format: Format, cmd: &str) -> Failure {
    Failure::Usage(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

fn load_spec_file(path: &str) -> std::result::Result<JFractionSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let wire: SpecWire = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    Ok(wire.into())
}

fn pochhammer_from(a: &str, b: &str) -> std::result::Result<JFractionSpec, Failure> {
    let p = PochhammerParams::new(expr(a)?, expr(b)?)?;
    Ok(pochhammer_spec(&p)?)
}

fn build_spec(s: &SpecArgs) -> std::result::Result<JFractionSpec, Failure> {
    if let Some(path) = &s.spec_file {
        return load_spec_file(path);
    }
    if let Some(name) = &s.preset {
        let row: Table1Row = name.parse()?;
        let mut params = PresetParams::default();
        if let Some(a) = &s.a {
            params.a = expr(a)?;
        }
        if let Some(b) = &s.b {
            params.b = expr(b)?;
        }
        if let Some(x) = &s.x {
            params.x = expr(x)?;
        }
        return Ok(table1_preset(row, &params)?);
    }
    match (&s.a, &s.b) {
        (Some(a), Some(b)) => pochhammer_from(a, b),
        _ => Err(Failure::Usage("give --preset, --spec-file, or both --a and --b".into())),
    }
}

fn window_label(n: usize, h: usize) -> &'static str {
    if n < h {
        "certified"
    } else if n < 2 * h {
        "empirical"
    } else {
        "untrusted"
    }
}

fn jfrac(cmd: JfracCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        JfracCmd::Expand { spec, h, zorder, format } => {
            let s = build_spec(&spec)?;
            let (h, zorder) = (h as usize, zorder as usize);
            let pair = convergents(&s, h)?;
            let j = convergent_coefficients(&pair, zorder);
            let coeffs: Vec<_> = j
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| json!({"n": n, "value": show(c), "window": window_label(n, h)}))
                .collect();
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA_VERSION,
                        "spec": s.name(),
                        "h": h,
                        "p": pair.p.coeffs().iter().map(show).collect::<Vec<_>>(),
                        "q": pair.q.coeffs().iter().map(show).collect::<Vec<_>>(),
                        "coefficients": coeffs,
                    }),
                ),
                Format::Csv => {
                    emit(out, "n,value,window")?;
                    for (n, c) in j.coeffs().iter().enumerate() {
                        emit(out, format!("{n},\"{}\",{}", show(c), window_label(n, h)))?;
                    }
                    Ok(())
                }
                Format::Pretty => {
                    emit(out, format!("spec {}  h = {h}", s.name()))?;
                    for (n, c) in j.coeffs().iter().enumerate() {
                        emit(out, format!("[z^{n}] = {}   ({})", show(c), window_label(n, h)))?;
                    }
                    Ok(())
                }
            }
        }
        JfracCmd::Invert { target, depth, format } => {
            let depth = depth as usize;
            let series = named_target(&target, 2 * depth)?;
            let inv = series_to_jfraction(&series, depth)?;
            let c: Vec<String> = inv.terms.c_all().iter().map(show).collect();
            let ab: Vec<String> = inv.terms.ab_all().iter().map(show).collect();
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({"schema": SCHEMA_VERSION, "target": target, "depth": depth,
                            "terminated": inv.terminated, "c": c, "ab": ab}),
                ),
                Format::Pretty => {
                    for (i, x) in c.iter().enumerate() {
                        emit(out, format!("c_{} = {x}", i + 1))?;
                    }
                    for (i, x) in ab.iter().enumerate() {
                        emit(out, format!("ab_{} = {x}", i + 2))?;
                    }
                    if inv.terminated {
                        emit(out, "(fraction terminates)")?;
                    }
                    Ok(())
                }
                f => Err(unsupported(f, "jfrac invert")),
            }
        }
    }
}

fn finish(out: &mut dyn Write, set: &ReportSet) -> Outcome {
    emit(out, set.to_json())?;
    if set.any_failure() {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn verify(cmd: VerifyCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        VerifyCmd::Lemmas { h, spec, seed, a, b, spec_file } => {
            let h = h as usize;
            let mut divisor_case = false;
            let terms: Terms = if let Some(path) = spec_file {
                load_spec_file(&path)?.terms(h + 1)?
            } else if let (Some(a), Some(b)) = (&a, &b) {
                pochhammer_from(a, b)?.terms(h + 1)?
            } else if a.is_some() || b.is_some() {
                return Err(Failure::Usage("--a and --b go together".into()));
            } else {
                match spec {
                    SpecKind::Divisor => {
                        divisor_case = true;
                        pochhammer_spec(&PochhammerParams::divisor())?.terms(h + 1)?
                    }
                    SpecKind::Random => random_terms(&mut rand::rngs::StdRng::seed_from_u64(seed), h + 1),
                }
            };
            let mut set = verify_lemmas(&terms, h)?;
            if divisor_case {
                set.reports.extend(verify_pq_coefficient_relation(h)?);
            }
            finish(out, &set)
        }
        VerifyCmd::SpecialCases { alpha, h } => {
            let set = ReportSet::new(sigma_special_case_check(alpha, h as usize)?);
            finish(out, &set)
        }
        VerifyCmd::Tilde { j } => {
            let set = ReportSet::new(tilde_d0j(j as usize)?.reports);
            finish(out, &set)
        }
        VerifyCmd::FirstColumn { h } => {
            let set = ReportSet::new(first_column_formula_check(h as usize)?);
            finish(out, &set)
        }
    }
}

fn divisor(cmd: DivisorCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        DivisorCmd::Table { alpha, h, order, modulus, format } => {
            let mut req = DivisorGFRequest::new(alpha, h as usize, order as usize);
            if let Some(p) = modulus {
                req = req.with_modulus(p);
            }
            let rows = divisor_table(&req)?;
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({"schema": SCHEMA_VERSION, "alpha": alpha, "h": h, "order": order,
                            "modulus": modulus, "rows": rows}),
                ),
                Format::Csv => {
                    emit(out, "n,value,certified,window")?;
                    for r in &rows {
                        let w = serde_json::to_value(r.window).expect("serializes");
                        emit(out, format!("{},{},{},{}", r.n, r.value, r.certified, w.as_str().unwrap_or("")))?;
                    }
                    Ok(())
                }
                Format::Pretty => {
                    for r in &rows {
                        let mark = if r.window == Window::Certified { "" } else { "  *" };
                        emit(out, format!("{:>4}  {}{mark}", r.n, r.value))?;
                    }
                    emit(out, "* outside the certified window 1 <= n < h")
                }
            }
        }
        DivisorCmd::Approximant { alpha, h, modulus } => {
            let req = DivisorGFRequest::new(alpha, h as usize, 1);
            match modulus {
                None => {
                    let f = rational_approximant(&req)?;
                    emit_json(
                        out,
                        &json!({"schema": SCHEMA_VERSION, "alpha": alpha, "h": h,
                                "num": f.num().to_string(), "den": f.den().to_string(), "factored": show(&f)}),
                    )
                }
                Some(p) => {
                    let r = approximant_mod_p(&req.with_modulus(p))?;
                    let (num, den) = r.ok_or_else(|| Failure::Usage(format!("approximant is not {p}-integral")))?;
                    emit_json(
                        out,
                        &json!({"schema": SCHEMA_VERSION, "alpha": alpha, "h": h, "modulus": p,
                                "num": num, "den": den}),
                    )
                }
            }
        }
    }
}

fn reading(r: ReadingArg) -> BReading {
    match r {
        ReadingArg::Displayed => BReading::Displayed,
        ReadingArg::Sequence => BReading::FromSequence,
    }
}

fn converge(cmd: ConvergeCmd, out: &mut dyn Write) -> Outcome {
    let p = precision_bits();
    match cmd {
        ConvergeCmd::Probe { q, z, hmax, format } => {
            let rep = numeric_convergence_probe(&HpComplex::parse(&q, p)?, &HpComplex::parse(&z, p)?, hmax as usize)?;
            match format {
                Format::Csv => {
                    emit(out, "h,gap,note")?;
                    for r in &rep.rows {
                        let gap = r.gap.map(|g| format!("{g:e}")).unwrap_or_default();
                        emit(out, format!("{},{gap},{}", r.h, r.note.clone().unwrap_or_default()))?;
                    }
                    Ok(())
                }
                Format::Json => emit_json(out, &json!({"schema": SCHEMA_VERSION, "probe": rep})),
                f => Err(unsupported(f, "converge probe")),
            }
        }
        ConvergeCmd::Radius { tol } => {
            let r = threshold_radius(tol)?;
            emit(out, format!("{r:.6}"))
        }
        ConvergeCmd::Margins { q, hmax, reading: rd, format } => {
            let rep = pringsheim_margins(&HpComplex::parse(&q, p)?, hmax as usize, reading(rd))?;
            match format {
                Format::Csv => {
                    emit(out, "h,abs_a,abs_b,margin,scaled_margin,reduced_margin,resolved")?;
                    for r in &rep.rows {
                        emit(
                            out,
                            format!(
                                "{},{:e},{:e},{:e},{:e},{:e},{}",
                                r.h, r.abs_a, r.abs_b, r.margin, r.scaled_margin, r.reduced_margin, r.resolved
                            ),
                        )?;
                    }
                    Ok(())
                }
                Format::Json => emit_json(out, &json!({"schema": SCHEMA_VERSION, "margins": rep})),
                f => Err(unsupported(f, "converge margins")),
            }
        }
    }
}

fn oracle(cmd: OracleCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        OracleCmd::Sigma { alpha, n } => {
            let v: Vec<String> = (1..=n).map(|k| oracles::sigma_alpha(alpha, k).to_string()).collect();
            emit_json(out, &json!({"schema": SCHEMA_VERSION, "alpha": alpha, "values": v}))
        }
        OracleCmd::Pochhammer { x, n } => {
            let v = oracles::q_pochhammer(&expr(&x)?, n as usize);
            emit(out, show(&v))
        }
        OracleCmd::Lambert { alpha, order } => {
            let s = oracles::lambert_truncated(alpha, order as usize);
            let v: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            emit_json(out, &json!({"schema": SCHEMA_VERSION, "alpha": alpha, "coefficients": v}))
        }
        OracleCmd::Qbinomial { n, k } => {
            let v = oracles::q_binomial(n as usize, k as usize, &QPoly::q());
            emit(out, v.to_string())
        }
        OracleCmd::QbinomialTheorem { a, z, order } => {
            let (lhs, rhs) = oracles::q_binomial_theorem_sides(&expr(&a)?, &expr(&z)?, order as usize)?;
            let ok = lhs == rhs;
            let side = |s: &crate::arith::QSeries| s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
            emit_json(out, &json!({"schema": SCHEMA_VERSION, "lhs": side(&lhs), "rhs": side(&rhs), "equal": ok}))?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}
