//! Command-line front-end: computes determinants, quasi-determinants,
//! characteristic polynomials and roots, Hermitian eigendecompositions,
//! singular value decompositions, and runs seeded theorem-check suites.
//! Reports are deterministic: identical configuration and inputs produce
//! identical bytes.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use dualqm::dcmat::{DCMatrix, InfStatus};
use dualqm::dqmat::{self, DQMatrix, PivotRule};
use dualqm::dual::{DualComplex, DualQuaternion, DualReal, Tol};
use dualqm::error::{Error, Result};
use dualqm::gen;
use dualqm::spectra::{
    bloomfield_watson_check, cauchy_schwarz_check, det_sum_check, digest_of, dq_svd,
    hadamard_check, herm_eig_dc, herm_eig_dq, psd_block_det_check, rank_arank, sturm_check,
    Verdict,
};

#[derive(Parser)]
#[command(name = "dualqm", version, about = "Dual complex and dual quaternion matrix algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input file (JSON matrix or problem object, depending on the command)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Seed for generated instances
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of generated instances for check suites
    #[arg(long, global = true, default_value_t = 100)]
    n: usize,
    /// Appreciability threshold
    #[arg(long = "tol-zero", global = true)]
    tol_zero: Option<f64>,
    /// Simple-root derivative threshold
    #[arg(long = "tol-deriv", global = true)]
    tol_deriv: Option<f64>,
    /// Relative clustering threshold for repeated eigenvalues
    #[arg(long = "cluster-rel", global = true)]
    cluster_rel: Option<f64>,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Parallelism hint for check suites; reports are assembled in
    /// instance order and are byte-identical for any value
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant of a dual complex matrix
    Det,
    /// Quasi-determinant of a dual quaternion matrix
    Qdet,
    /// Inverse of a dual complex or dual quaternion matrix
    Inverse,
    /// Characteristic polynomial pair (g, tau) of a dual complex matrix
    Charpoly,
    /// Characteristic root candidates of a dual complex matrix
    Charroots,
    /// Eigendecomposition of a Hermitian dual complex or quaternion matrix
    Eig,
    /// Singular value decomposition of a dual quaternion matrix
    Svd,
    /// Rank and appreciable rank of a dual quaternion matrix
    Rank,
    /// Verify a dual complex eigenpair {matrix, lambda, x}
    VerifyEig,
    /// Verify a dual quaternion right eigenpair {matrix, lambda, x}
    VerifyRightEig,
    /// Solve A X = B for dual quaternion matrices {a, b}
    Solve,
    /// Run a theorem-check suite over seeded random instances
    Check {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Suite {
    Sturm,
    Bw,
    Cs,
    PsdDet,
    QdetMult,
    OmegaHom,
    CharrootsVsEigs,
}

#[derive(Serialize)]
struct Report {
    command: String,
    version: String,
    config_digest: String,
    results: Value,
    verdicts: Vec<Verdict>,
    diagnostics: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let all_pass = report.verdicts.iter().all(|v| v.pass);
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Shape(_)
        | Error::SizeLimit(_)
        | Error::IndexOutOfRange(_) => 2,
        _ => 3,
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            msg: e.to_string(),
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));
    out.push_str(&format!("version: {}\n", report.version));
    out.push_str(&format!("config: {}\n", report.config_digest));
    out.push_str("results:\n");
    let pretty = serde_json::to_string_pretty(&report.results).expect("results serialize");
    for line in pretty.lines() {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    let passes = report.verdicts.iter().filter(|v| v.pass).count();
    out.push_str(&format!(
        "verdicts: {passes}/{} pass\n",
        report.verdicts.len()
    ));
    for v in &report.verdicts {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("  {tag} {} [{}]\n", v.theorem, v.instance_digest));
    }
    for d in &report.diagnostics {
        out.push_str(&format!("note: {d}\n"));
    }
    out
}

fn tol_of(cli: &Cli) -> Result<Tol> {
    let mut tol = Tol::default();
    if let Some(z) = cli.tol_zero {
        tol.tau_zero = z;
    }
    if let Some(d) = cli.tol_deriv {
        tol.tau_deriv = d;
    }
    if let Some(c) = cli.cluster_rel {
        tol.cluster_rel = c;
    }
    if tol.tau_zero <= 0.0 || tol.tau_deriv <= 0.0 || tol.cluster_rel <= 0.0 {
        return Err(Error::Parse {
            path: "--tol-zero/--tol-deriv/--cluster-rel".into(),
            msg: "tolerances must be strictly positive".into(),
        });
    }
    Ok(tol)
}

fn command_name(cli: &Cli) -> String {
    match &cli.command {
        Command::Det => "det".into(),
        Command::Qdet => "qdet".into(),
        Command::Inverse => "inverse".into(),
        Command::Charpoly => "charpoly".into(),
        Command::Charroots => "charroots".into(),
        Command::Eig => "eig".into(),
        Command::Svd => "svd".into(),
        Command::Rank => "rank".into(),
        Command::VerifyEig => "verify-eig".into(),
        Command::VerifyRightEig => "verify-right-eig".into(),
        Command::Solve => "solve".into(),
        Command::Check { suite } => format!("check {}", suite_name(*suite)),
    }
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Sturm => "sturm",
        Suite::Bw => "bw",
        Suite::Cs => "cs",
        Suite::PsdDet => "psd-det",
        Suite::QdetMult => "qdet-mult",
        Suite::OmegaHom => "omega-hom",
        Suite::CharrootsVsEigs => "charroots-vs-eigs",
    }
}

fn read_input(cli: &Cli) -> Result<(String, String)> {
    let path = cli.input.as_ref().ok_or_else(|| Error::Parse {
        path: "--input".into(),
        msg: "this command requires an input file".into(),
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    Ok((path.display().to_string(), text))
}

enum AnyMatrix {
    Dc(DCMatrix),
    Dq(DQMatrix),
}

fn scalar_kind(path: &str, v: &Value) -> Result<String> {
    v.get("scalar")
        .and_then(Value::as_str)
        .map(str::to_owned)
        .ok_or_else(|| Error::Parse {
            path: path.into(),
            msg: "missing \"scalar\" field".into(),
        })
}

fn parse_value<T: for<'de> Deserialize<'de>>(path: &str, v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse {
        path: path.into(),
        msg: e.to_string(),
    })
}

fn parse_json(path: &str, text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.into(),
        msg: format!("line {} column {}: {e}", e.line(), e.column()),
    })
}

fn parse_matrix(path: &str, text: &str) -> Result<AnyMatrix> {
    let v = parse_json(path, text)?;
    match scalar_kind(path, &v)?.as_str() {
        "dc" => Ok(AnyMatrix::Dc(parse_value(path, &v)?)),
        "dq" => Ok(AnyMatrix::Dq(parse_value(path, &v)?)),
        other => Err(Error::Parse {
            path: path.into(),
            msg: format!("unknown scalar kind {other:?}"),
        }),
    }
}

fn expect_dc(path: &str, m: AnyMatrix) -> Result<DCMatrix> {
    match m {
        AnyMatrix::Dc(a) => Ok(a),
        AnyMatrix::Dq(_) => Err(Error::Parse {
            path: path.into(),
            msg: "this command requires a dual complex (\"scalar\": \"dc\") matrix".into(),
        }),
    }
}

fn expect_dq(path: &str, m: AnyMatrix) -> Result<DQMatrix> {
    match m {
        AnyMatrix::Dq(a) => Ok(a),
        AnyMatrix::Dc(_) => Err(Error::Parse {
            path: path.into(),
            msg: "this command requires a dual quaternion (\"scalar\": \"dq\") matrix".into(),
        }),
    }
}

fn field<'a>(path: &str, v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse {
        path: path.into(),
        msg: format!("missing \"{name}\" field"),
    })
}

fn run(cli: &Cli) -> Result<Report> {
    let tol = tol_of(cli)?;
    let command = command_name(cli);
    let input_text = cli
        .input
        .as_ref()
        .map(|_| read_input(cli).map(|(_, t)| t))
        .transpose()?;
    let config_digest = digest_of(&(
        &command,
        &input_text,
        cli.seed,
        cli.n,
        tol.tau_zero.to_bits(),
        tol.tau_deriv.to_bits(),
        tol.cluster_rel.to_bits(),
    ));
    let mut diagnostics = Vec::new();
    let mut verdicts = Vec::new();

    let results = match &cli.command {
        Command::Det => {
            let (path, text) = read_input(cli)?;
            let a = expect_dc(&path, parse_matrix(&path, &text)?)?;
            if !a.is_square() {
                return Err(Error::Shape("determinant requires a square matrix".into()));
            }
            let d = a.det();
            let mut r = json!({ "det": d });
            if d.st.im.abs() < 1e-12 && d.inf.im.abs() < 1e-12 {
                r["det_real"] = json!([d.st.re, d.inf.re]);
            }
            r
        }
        Command::Qdet => {
            let (path, text) = read_input(cli)?;
            let a = expect_dq(&path, parse_matrix(&path, &text)?)?;
            let d = a.qdet()?;
            let leak = dqmat::qdet_imag_leak(d);
            if leak > 1e-9 {
                diagnostics.push(format!(
                    "quasi-determinant has imaginary leakage {leak:.3e}"
                ));
            }
            json!({ "qdet": d, "qdet_real": [d.st.re, d.inf.re], "imag_leak": leak })
        }
        Command::Inverse => {
            let (path, text) = read_input(cli)?;
            match parse_matrix(&path, &text)? {
                AnyMatrix::Dc(a) => json!({ "inverse": a.inverse()? }),
                AnyMatrix::Dq(a) => json!({ "inverse": a.inverse()? }),
            }
        }
        Command::Charpoly => {
            let (path, text) = read_input(cli)?;
            let a = expect_dc(&path, parse_matrix(&path, &text)?)?;
            if !a.is_square() {
                return Err(Error::Shape(
                    "characteristic polynomial requires a square matrix".into(),
                ));
            }
            let cp = a.charpoly();
            json!({ "g": poly_json(&cp.g.coeffs), "tau": poly_json(&cp.tau.coeffs) })
        }
        Command::Charroots => {
            let (path, text) = read_input(cli)?;
            let a = expect_dc(&path, parse_matrix(&path, &text)?)?;
            if !a.is_square() {
                return Err(Error::Shape(
                    "characteristic roots require a square matrix".into(),
                ));
            }
            let candidates = a.char_roots(&tol);
            let mut items = Vec::new();
            let mut roots = 0usize;
            for c in &candidates {
                let (status, lambda_in) = match c.lambda_in {
                    InfStatus::Unique(v) => {
                        roots += 1;
                        ("unique", Some(v))
                    }
                    InfStatus::Free => {
                        roots += 1;
                        ("free", None)
                    }
                    InfStatus::Nonexistent => ("nonexistent", None),
                };
                items.push(json!({
                    "lambda_st": [c.lambda_st.re, c.lambda_st.im],
                    "status": status,
                    "lambda_in": lambda_in.map(|v| json!([v.re, v.im])),
                }));
            }
            if roots == 0 {
                diagnostics.push("no characteristic root".into());
            }
            json!({ "candidates": items, "root_count": roots })
        }
        Command::Eig => {
            let (path, text) = read_input(cli)?;
            match parse_matrix(&path, &text)? {
                AnyMatrix::Dc(a) => {
                    let eig = herm_eig_dc(&a, &tol)?;
                    diagnostics.extend(eig.warnings.iter().cloned());
                    json!({ "lambdas": eig.lambdas, "u": eig.u })
                }
                AnyMatrix::Dq(a) => {
                    let eig = herm_eig_dq(&a, &tol)?;
                    diagnostics.extend(eig.warnings.iter().cloned());
                    json!({ "lambdas": eig.lambdas, "u": eig.u })
                }
            }
        }
        Command::Svd => {
            let (path, text) = read_input(cli)?;
            let a = expect_dq(&path, parse_matrix(&path, &text)?)?;
            let svd = dq_svd(&a, &tol)?;
            diagnostics.extend(svd.warnings.iter().cloned());
            json!({
                "sigmas": svd.sigmas,
                "u": svd.u,
                "v": svd.v,
                "rank": svd.s,
                "arank": svd.r,
            })
        }
        Command::Rank => {
            let (path, text) = read_input(cli)?;
            let a = expect_dq(&path, parse_matrix(&path, &text)?)?;
            let (s, r) = rank_arank(&a, &tol)?;
            json!({ "rank": s, "arank": r })
        }
        Command::VerifyEig => {
            let (path, text) = read_input(cli)?;
            let v = parse_json(&path, &text)?;
            let a: DCMatrix = parse_value(&path, field(&path, &v, "matrix")?)?;
            let lambda: DualComplex = parse_value(&path, field(&path, &v, "lambda")?)?;
            let x: Vec<DualComplex> = parse_value(&path, field(&path, &v, "x")?)?;
            if x.len() != a.rows() {
                return Err(Error::Shape(format!(
                    "eigenvector length {} does not match order {}",
                    x.len(),
                    a.rows()
                )));
            }
            let residual = a.verify_eigenpair(lambda, &x)?;
            let scale = a.frobenius().st.max(1.0);
            let pass = residual.st <= 1e-8 * scale && residual.inf.abs() <= 1e-8 * scale;
            verdicts.push(Verdict {
                theorem: "eigenpair-residual".into(),
                pass,
                margins: vec![DualReal::new(
                    1e-8 * scale - residual.st,
                    1e-8 * scale - residual.inf.abs(),
                )],
                instance_digest: digest_of(&(&a, lambda, &x)),
            });
            json!({ "residual": residual })
        }
        Command::VerifyRightEig => {
            let (path, text) = read_input(cli)?;
            let v = parse_json(&path, &text)?;
            let a: DQMatrix = parse_value(&path, field(&path, &v, "matrix")?)?;
            let lambda: DualQuaternion = parse_value(&path, field(&path, &v, "lambda")?)?;
            let x: Vec<DualQuaternion> = parse_value(&path, field(&path, &v, "x")?)?;
            if x.len() != a.rows() {
                return Err(Error::Shape(format!(
                    "eigenvector length {} does not match order {}",
                    x.len(),
                    a.rows()
                )));
            }
            let (residual, f_value) = a.verify_right_eigenpair(lambda, &x)?;
            let scale = a.frobenius().st.max(1.0);
            let pass = residual.st <= 1e-8 * scale && residual.inf.abs() <= 1e-8 * scale;
            verdicts.push(Verdict {
                theorem: "right-eigenpair-residual".into(),
                pass,
                margins: vec![DualReal::new(
                    1e-8 * scale - residual.st,
                    1e-8 * scale - residual.inf.abs(),
                )],
                instance_digest: digest_of(&(&a, lambda, &x)),
            });
            json!({ "residual": residual, "quasi_charpoly_value": f_value })
        }
        Command::Solve => {
            let (path, text) = read_input(cli)?;
            let v = parse_json(&path, &text)?;
            let a: DQMatrix = parse_value(&path, field(&path, &v, "a")?)?;
            let b: DQMatrix = parse_value(&path, field(&path, &v, "b")?)?;
            let x = a.solve(&b, PivotRule::MaxDet)?;
            let residual = a.mul(&x).sub(&b).frobenius();
            json!({ "x": x, "residual": residual })
        }
        Command::Check { suite } => run_suite(*suite, cli.seed, cli.n, &tol, &mut verdicts)?,
    };

    Ok(Report {
        command,
        version: env!("CARGO_PKG_VERSION").into(),
        config_digest,
        results,
        verdicts,
        diagnostics,
    })
}

fn poly_json(coeffs: &[Complex64]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .map(|z| json!([z.re, z.im]))
            .collect::<Vec<_>>(),
    )
}

fn run_suite(
    suite: Suite,
    seed: u64,
    n: usize,
    tol: &Tol,
    verdicts: &mut Vec<Verdict>,
) -> Result<Value> {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        match suite {
            Suite::Sturm => {
                let a = gen::herm_dc(&mut rng, m);
                let sub = 1 + k % (m - 1).max(1);
                let idx: Vec<usize> = (0..sub).collect();
                verdicts.push(sturm_check(&a, &idx, tol)?);
            }
            Suite::Bw => {
                let a = gen::psd_dc(&mut rng, m);
                let cols = 1 + k % m;
                let x = gen::partial_unitary_dc(&mut rng, m, cols);
                verdicts.push(bloomfield_watson_check(&a, &x, tol)?);
            }
            Suite::Cs => {
                let a = gen::dc_matrix(&mut rng, m, m);
                let b = gen::dc_matrix(&mut rng, m, m);
                verdicts.push(cauchy_schwarz_check(&a, &b)?);
            }
            Suite::PsdDet => {
                let a = gen::psd_dc(&mut rng, m);
                let b = gen::psd_dc(&mut rng, m);
                verdicts.push(det_sum_check(&a, &b, tol)?);
                verdicts.push(psd_block_det_check(&a, 1 + k % (m - 1), tol)?);
                verdicts.push(hadamard_check(&a, tol)?);
            }
            Suite::QdetMult => {
                let dim = 2 + k % 3;
                let a = gen::dq_matrix(&mut rng, dim, dim);
                let b = gen::dq_matrix(&mut rng, dim, dim);
                verdicts.push(qdet_mult_verdict(&a, &b)?);
            }
            Suite::OmegaHom => {
                let a = gen::dq_matrix(&mut rng, m, m);
                let b = gen::dq_matrix(&mut rng, m, m);
                verdicts.push(omega_hom_verdict(&a, &b));
            }
            Suite::CharrootsVsEigs => {
                let a = gen::herm_dc(&mut rng, m);
                verdicts.push(charroots_vs_eigs_verdict(&a, tol)?);
            }
        }
    }
    let passes = verdicts.iter().filter(|v| v.pass).count();
    let worst = verdicts
        .iter()
        .flat_map(|v| v.margins.iter())
        .copied()
        .reduce(|a, b| {
            if b.total_cmp(&a) == std::cmp::Ordering::Less {
                b
            } else {
                a
            }
        });
    Ok(json!({
        "suite": suite_name(suite),
        "instances": n,
        "passes": passes,
        "failures": verdicts.len() - passes,
        "worst_margin": worst,
    }))
}

/// Multiplicativity of the quasi-determinant: det_q(AB) = det_q(A) det_q(B).
fn qdet_mult_verdict(a: &DQMatrix, b: &DQMatrix) -> Result<Verdict> {
    let lhs = a.mul(b).qdet()?;
    let rhs = a.qdet()? * b.qdet()?;
    let diff = lhs - rhs;
    let scale = rhs.st.norm().max(rhs.inf.norm()).max(1.0);
    let slack = 1e-8 * scale;
    let pass = diff.st.norm() <= slack && diff.inf.norm() <= slack;
    Ok(Verdict {
        theorem: "qdet-multiplicative".into(),
        pass,
        margins: vec![DualReal::new(
            slack - diff.st.norm(),
            slack - diff.inf.norm(),
        )],
        instance_digest: digest_of(&(a, b)),
    })
}

/// The adjoint map is a homomorphism: entrywise on scalars and globally
/// on matrix products.
fn omega_hom_verdict(a: &DQMatrix, b: &DQMatrix) -> Verdict {
    let mut worst = 0.0f64;
    let sa = a.get(0, 0);
    let sb = b.get(0, 0);
    for (lhs, rhs) in [
        (scalar_omega(sa * sb), scalar_omega(sa).mul(&scalar_omega(sb))),
        (scalar_omega(sa + sb), scalar_omega(sa).add(&scalar_omega(sb))),
        (scalar_omega(sa.conj()), scalar_omega(sa).adjoint()),
    ] {
        let d = lhs.sub(&rhs);
        worst = worst.max(d.st().max_abs()).max(d.inf().max_abs());
    }
    let prod = a.mul(b).omega().to_dcmatrix();
    let sides = a.omega().mul(&b.omega()).to_dcmatrix();
    let d = prod.sub(&sides);
    worst = worst.max(d.st().max_abs()).max(d.inf().max_abs());
    let scale = sides.frobenius().st.max(1.0);
    let slack = 1e-9 * scale;
    Verdict {
        theorem: "omega-homomorphism".into(),
        pass: worst <= slack,
        margins: vec![DualReal::new(slack - worst, slack - worst)],
        instance_digest: digest_of(&(a, b)),
    }
}

fn scalar_omega(q: DualQuaternion) -> DCMatrix {
    DQMatrix::new(1, 1, vec![q])
        .expect("1x1")
        .omega()
        .to_dcmatrix()
}

/// Every eigenvalue of a Hermitian matrix is a characteristic root: the
/// characteristic polynomial vanishes at each of them.
fn charroots_vs_eigs_verdict(a: &DCMatrix, tol: &Tol) -> Result<Verdict> {
    let eig = herm_eig_dc(a, tol)?;
    let cp = a.charpoly();
    let scale = cp.g.max_coeff_norm().max(cp.tau.max_coeff_norm()).max(1.0);
    let slack = 1e-6 * scale;
    let mut pass = true;
    let mut margins = Vec::with_capacity(eig.lambdas.len());
    for l in &eig.lambdas {
        let v = cp.eval(DualComplex::new(
            Complex64::new(l.st, 0.0),
            Complex64::new(l.inf, 0.0),
        ));
        pass &= v.st.norm() <= slack && v.inf.norm() <= slack;
        margins.push(DualReal::new(slack - v.st.norm(), slack - v.inf.norm()));
    }
    Ok(Verdict {
        theorem: "charroots-vs-eigs".into(),
        pass,
        margins,
        instance_digest: digest_of(a),
    })
}
