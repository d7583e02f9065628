//! The `equicode` command line: construct, verify, certify, project, reduce and
//! export codes. Exit codes: 0 pass, 1 certified failure, 2 usage or parse
//! error, 3 runtime error.

mod files;

pub use files::{
    gram_csv, inner_product_values, parse_gram_csv, read_code_file, to_canonical_json, CodeFile, Metadata,
    ReportFile, Skipped, FORMAT_VERSION, GRAM_CSV_HEADER,
};

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bounds::{
    dgs_bound_check, gerzon_certificate, matching_full_rank_certificate, multipartite_certificate,
    negative_clique_certificate, schnirelman_applied_certificate,
};
use crate::certificate::Certificate;
use crate::codes::{
    clique_gamma, detect_equiangular, gram_of, project_onto_complement, validate_code, AngleParams, AngleSet, Code,
};
use crate::constructions::{
    binary_kcode, concatenated_code, exact_gram_rank, kcode_angles, lemmens_seidel_code, lemmens_seidel_gram,
    odd_reciprocal_code, odd_reciprocal_gram, regular_simplex, seven_dim_28_lines, ConcatParams,
};
use crate::error::{Error, Result};
use crate::graph::{lambda_inequality_check, reduction_pipeline};
use crate::matcore::{rank_of, Tolerance};

#[derive(Debug, Parser)]
#[command(name = "equicode", version, about = "Constructions and certificates for equiangular lines and spherical codes")]
struct Cli {
    /// Tolerance overrides: a bare angle tolerance or `key=value` pairs.
    /// Takes precedence over EQUICODE_TOL.
    #[arg(long, global = true)]
    tol: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build one of the explicit constructions.
    Construct(ConstructArgs),
    /// Check every pair of a code against an angle set.
    Verify {
        file: PathBuf,
        /// Angle set, e.g. "interval:-1,-0.25+point:0.5"; defaults to the detected equiangular pair.
        #[arg(long = "L")]
        angles: Option<String>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run bound certificates on a code.
    Certify(CertifyArgs),
    /// Project vectors onto the orthogonal complement of a clique.
    Project {
        file: PathBuf,
        /// Comma-separated clique indices.
        #[arg(long)]
        clique: String,
        /// Indices to project; defaults to every vector outside the clique.
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the positive-clique reduction and write the projected code plus a sidecar.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: PathBuf,
        /// Sidecar path; defaults to `<out>.reduction.json`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Export the Gram matrix as CSV.
    Gram {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    LemmensSeidel,
    OddReciprocal,
    Lines28,
    Simplex,
    BinaryKcode,
    Concat,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    name: Construction,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    alpha1: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; the code is printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Gerzon,
    Negclique,
    Schnirelman,
    Matching,
    Multipartite,
    Dgs,
    Lambda,
    All,
}

const ALL_SUITES: [Suite; 7] =
    [Suite::Gerzon, Suite::Negclique, Suite::Schnirelman, Suite::Matching, Suite::Multipartite, Suite::Dgs, Suite::Lambda];

#[derive(Debug, Args)]
struct CertifyArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Positive angle α; read from the file's metadata when absent.
    #[arg(long)]
    alpha: Option<f64>,
    /// Negative threshold β.
    #[arg(long)]
    beta: Option<f64>,
    /// Clique size t of the projected angle set L(α, t).
    #[arg(long)]
    t: Option<usize>,
    /// Parts for the multipartite check, e.g. "0,1,2;3,4,5".
    #[arg(long)]
    parts: Option<String>,
    /// Finite angle set for the DGS bound; detected from the code when absent.
    #[arg(long = "L")]
    angles: Option<String>,
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) | Error::Parse(_) | Error::Io(_) => 2,
        _ => 3,
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let tol = match &cli.tol {
        Some(spec) => Tolerance::parse(spec)?,
        None => Tolerance::from_env()?,
    };
    match cli.command {
        Command::Construct(args) => construct(&args, &tol),
        Command::Verify { file, angles, report } => verify(&file, angles.as_deref(), report.as_deref(), &tol),
        Command::Certify(args) => certify(&args, &tol),
        Command::Project { file, clique, x, out } => project(&file, &clique, x.as_deref(), &out, &tol),
        Command::Reduce { file, t, out, sidecar } => reduce(&file, t, &out, sidecar, &tol),
        Command::Gram { file, out } => {
            let code = load(&file, &tol)?;
            emit(out.as_deref(), &gram_csv(&code))?;
            Ok(0)
        }
    }
}

fn load(path: &Path, tol: &Tolerance) -> Result<Code> {
    read_code_file(path)?.to_code(tol)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => files::write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn required<T>(value: Option<T>, flag: &str, name: Construction) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParams(format!("{name:?} needs --{flag}")))
}

fn construct(args: &ConstructArgs, tol: &Tolerance) -> Result<i32> {
    use Construction::*;
    let name = args.name;
    let label = name.to_possible_value().expect("no skipped variants").get_name().to_string();
    let (code, metadata) = match name {
        LemmensSeidel => {
            let n = required(args.n, "n", name)?;
            let rank = exact_gram_rank(&lemmens_seidel_gram(n)?)?;
            (lemmens_seidel_code(n)?, Metadata::named(&label).with("n", n).with("angle", 1.0 / 3.0).with("gram_rank", rank))
        }
        OddReciprocal => {
            let (n, r) = (required(args.n, "n", name)?, required(args.r, "r", name)?);
            let rank = exact_gram_rank(&odd_reciprocal_gram(n, r)?)?;
            let angle = 1.0 / (2 * r - 1) as f64;
            let meta = Metadata::named(&label).with("n", n).with("r", r).with("angle", angle).with("gram_rank", rank);
            (odd_reciprocal_code(n, r)?, meta)
        }
        Lines28 => {
            let code = seven_dim_28_lines();
            let rank = rank_of(&gram_of(&code), tol)?;
            (code, Metadata::named(&label).with("angle", 1.0 / 3.0).with("gram_rank", rank))
        }
        Simplex => {
            let r = args.r.or(args.n).ok_or_else(|| Error::InvalidParams("simplex needs --r".into()))?;
            (regular_simplex(r)?, Metadata::named(&label).with("r", r))
        }
        BinaryKcode => {
            let (n, k) = (required(args.n, "n", name)?, required(args.k, "k", name)?);
            let meta = Metadata::named(&label).with("n", n).with("k", k).with("angles", kcode_angles(k));
            (binary_kcode(n, k)?, meta)
        }
        Concat => {
            let p = ConcatParams::new(
                required(args.n, "n", name)?,
                required(args.k, "k", name)?,
                required(args.r, "r", name)?,
                required(args.alpha1, "alpha1", name)?,
                args.seed,
            )?;
            let out = concatenated_code(&p)?;
            let mut meta = Metadata::named(&label)
                .with("n", p.n)
                .with("k", p.k)
                .with("r", p.r)
                .with("alpha1", p.alpha1)
                .with("alphas", p.alphas.clone())
                .with("beta_target", p.beta_target)
                .with("achieved_beta", out.achieved_beta)
                .with("attempts", out.report.attempts)
                .with("seed_used", out.report.seed_used);
            meta.seed = Some(args.seed);
            (out.code, meta)
        }
    };
    let file = CodeFile::from_code(&code, metadata);
    let json = file.to_json()?;
    let summary = format!("size {} dim {} angles {}", code.len(), code.dim(), describe_angles(&code, tol));
    match &args.out {
        Some(path) => {
            files::write_text(path, &json)?;
            println!("{summary}");
        }
        None => {
            print!("{json}");
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

fn describe_angles(code: &Code, tol: &Tolerance) -> String {
    let values = inner_product_values(code, tol);
    if values.len() > 8 {
        return format!("({} distinct values in [{:.6}, {:.6}])", values.len(), values[0], values[values.len() - 1]);
    }
    let shown: Vec<String> = values.iter().map(|v| format!("{v:.12}")).collect();
    format!("{{{}}}", shown.join(", "))
}

fn verify(path: &Path, spec: Option<&str>, report: Option<&Path>, tol: &Tolerance) -> Result<i32> {
    let code = load(path, tol)?;
    let angles = match spec {
        Some(s) => AngleSet::parse(s, tol.angle_tol)?,
        None => {
            let a = detect_equiangular(&code, tol).ok_or(Error::NotEquiangular)?;
            AngleSet::points(&[-a, a], tol.angle_tol)?
        }
    };
    let result = validate_code(&code, &angles);
    for v in &result.violations {
        eprintln!("violation ({}, {}) inner {:.17e} distance {:.3e}", v.i, v.j, v.inner, v.distance);
    }
    let pairs = code.len() * (code.len() - 1) / 2;
    let cert = Certificate::inequality("validate", "spherical L-code", result.violations.len() as f64, 0.0, 0.0)
        .measure("pairs", pairs as f64)
        .measure("violations", result.violations.len() as f64);
    let mut out = ReportFile::new(*tol);
    out.certificates.push(cert);
    emit(report, &to_canonical_json(&out)?)?;
    Ok(if result.pass { 0 } else { 1 })
}

struct CertifyContext<'a> {
    code: &'a Code,
    meta: &'a Metadata,
    args: &'a CertifyArgs,
    tol: &'a Tolerance,
}

impl CertifyContext<'_> {
    fn alpha(&self) -> Option<f64> {
        self.args.alpha.or_else(|| self.meta.param_f64("alpha"))
    }

    fn params(&self) -> Result<AngleParams> {
        match (self.alpha(), self.args.t.or_else(|| self.meta.param_usize("t"))) {
            (Some(a), Some(t)) => AngleParams::new(a, t),
            _ => Err(Error::InvalidParams("needs --alpha and --t (or projection metadata)".into())),
        }
    }

    fn run(&self, suite: Suite) -> Result<Certificate> {
        let (code, tol) = (self.code, self.tol);
        match suite {
            Suite::Gerzon => gerzon_certificate(code, tol),
            Suite::Negclique => {
                let beta = match self.args.beta {
                    Some(b) => b,
                    None => -inner_product_values(code, tol).last().copied().unwrap_or(-1.0),
                };
                negative_clique_certificate(code, beta, tol)
            }
            Suite::Schnirelman => schnirelman_applied_certificate(code, &self.params()?, tol),
            Suite::Matching => matching_full_rank_certificate(code, &self.params()?, tol),
            Suite::Lambda => lambda_inequality_check(code, &self.params()?, tol),
            Suite::Multipartite => {
                let parts = self
                    .args
                    .parts
                    .as_deref()
                    .ok_or_else(|| Error::InvalidParams("needs --parts".into()))?
                    .split(';')
                    .map(parse_indices)
                    .collect::<Result<Vec<_>>>()?;
                let alpha = self.alpha().ok_or_else(|| Error::InvalidParams("needs --alpha".into()))?;
                let beta = self.args.beta.ok_or_else(|| Error::InvalidParams("needs --beta".into()))?;
                multipartite_certificate(code, &parts, alpha, beta, tol)
            }
            Suite::Dgs => {
                let angles = match &self.args.angles {
                    Some(s) => AngleSet::parse(s, tol.angle_tol)?,
                    None => AngleSet::points(&inner_product_values(code, tol), tol.angle_tol)?,
                };
                dgs_bound_check(code, &angles, tol)
            }
            Suite::All => unreachable!("expanded by the caller"),
        }
    }
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn certify(args: &CertifyArgs, tol: &Tolerance) -> Result<i32> {
    let file = read_code_file(&args.file)?;
    let code = file.to_code(tol)?;
    let ctx = CertifyContext { code: &code, meta: &file.metadata, args, tol };
    let suites: Vec<Suite> = if args.suite == Suite::All { ALL_SUITES.to_vec() } else { vec![args.suite] };
    let results: Vec<(Suite, Result<Certificate>)> = suites.par_iter().map(|&s| (s, ctx.run(s))).collect();
    let mut report = ReportFile::new(*tol);
    for (suite, result) in results {
        match result {
            Ok(cert) => {
                eprintln!("{:<14} {} {} <= {}", cert.name, if cert.pass { "pass" } else { "FAIL" }, cert.lhs, cert.rhs);
                report.certificates.push(cert);
            }
            Err(e) => {
                let name = suite_name(suite);
                eprintln!("{name:<14} skipped ({}: {e})", e.name());
                report.skipped.push(Skipped { name, reason: format!("{}: {e}", e.name()) });
            }
        }
    }
    emit(args.report.as_deref(), &to_canonical_json(&report)?)?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn parse_indices(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad index {s:?}"))))
        .collect()
}

fn project(path: &Path, clique: &str, x: Option<&str>, out: &Path, tol: &Tolerance) -> Result<i32> {
    let code = load(path, tol)?;
    let y = parse_indices(clique)?;
    let x = match x {
        Some(s) => parse_indices(s)?,
        None => (0..code.len()).filter(|i| !y.contains(i)).collect(),
    };
    let projected = project_onto_complement(&code, &x, &y, tol)?;
    let mut meta = Metadata::named("projection").with("clique", y.clone()).with("source", x.clone());
    if let Some(gamma) = clique_gamma(&code, &y, tol)? {
        meta = meta.with("alpha", gamma).with("t", y.len());
    }
    files::write_text(out, &CodeFile::from_code(&projected, meta).to_json()?)?;
    println!("projected {} vectors onto the complement of {} in R^{}", projected.len(), y.len(), projected.dim());
    Ok(0)
}

fn reduce(path: &Path, t: usize, out: &Path, sidecar: Option<PathBuf>, tol: &Tolerance) -> Result<i32> {
    let code = load(path, tol)?;
    let outcome = reduction_pipeline(&code, t, tol)?;
    let sidecar = sidecar.unwrap_or_else(|| {
        let mut s = out.as_os_str().to_owned();
        s.push(".reduction.json");
        PathBuf::from(s)
    });
    files::write_text(&sidecar, &to_canonical_json(&outcome)?)?;
    let a = &outcome.accounting;
    println!(
        "|C| = {} = |S_Y| {} + others {} + |Y| {} ({})",
        a.total,
        a.s_y,
        a.others,
        a.clique,
        if a.holds { "holds" } else { "BROKEN" }
    );
    match &outcome.projected {
        Some(p) => {
            let meta = Metadata::named("reduction")
                .with("alpha", outcome.alpha)
                .with("t", outcome.t)
                .with("clique", outcome.clique.clone())
                .with("source", outcome.s_y.clone());
            files::write_text(out, &CodeFile::from_code(p, meta).to_json()?)?;
        }
        None => eprintln!("S_Y is empty; no projected code written"),
    }
    let ok = a.holds && outcome.projected_valid != Some(false);
    Ok(if ok { 0 } else { 1 })
}
