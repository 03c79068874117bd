//! `lie-contract`: structure-constant Lie algebra contractions, coadjoint
//! orbit deformations, and the SU(2) -> Heisenberg quantization example on
//! the command line.

mod formats;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lie_contract_core::algebra::{catalog, jacobi_residual_of, LieAlgebra, CATALOG_NAMES};
use lie_contract_core::contraction::{
    classify_table, contracted_bracket_anti, contracted_bracket_iw, iw_tensor, numeric_limit,
    Classification, ContractionSpec, ContractionVariant, IwTensorTable, Verdict,
};
use lie_contract_core::orbits::{orbit_deform, sphere_integrality, QuantConfig};
use lie_contract_core::su2h::{
    dim_vs_volume, mn_error, prequantum_spin_ops, transition_convergence,
};
use lie_contract_core::{DualVector, Vector};

use formats::{sci, AlgebraFile, FlowEntry};

const DEFAULT_CLASSIFY_TOL: f64 = 1e-10;
const DEFAULT_JACOBI_TOL: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "lie-contract",
    version,
    about = "Lie algebra contractions, coadjoint orbits, and the SU(2) -> Heisenberg example",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Built-in algebra catalog
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Check the Jacobi identity of an algebra file
    CheckJacobi {
        /// Algebra JSON file
        file: PathBuf,
    },
    /// Print the IW-tensor T[u] on all basis pairs
    IwTensor {
        file: PathBuf,
        #[command(flatten)]
        u: UArg,
    },
    /// Classify a diagonal contraction candidate
    Classify {
        file: PathBuf,
        #[command(flatten)]
        u: UArg,
    },
    /// Closed-form contracted algebra
    Contract {
        file: PathBuf,
        #[command(flatten)]
        u: UArg,
        /// Contraction family: iw or anti
        #[arg(long)]
        variant: VariantArg,
        /// Write the contracted algebra JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force eps-limit of the conjugated bracket over a schedule
    LimitSweep {
        file: PathBuf,
        /// Diagonal of u, comma separated (iw/anti variants)
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        variant: VariantArg,
        /// Exponents for the powers variant, comma separated
        #[arg(long)]
        powers: Option<String>,
        #[arg(long, default_value_t = 1e-1)]
        eps_from: f64,
        #[arg(long, default_value_t = 1e-6)]
        eps_to: f64,
        /// Number of geometrically spaced eps values
        #[arg(long, default_value_t = 6)]
        steps: usize,
        /// Write `eps,max_error,err_i_j...` rows here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Deform a coadjoint orbit of the contracted algebra through the
    /// original one
    OrbitDeform {
        /// Contracted algebra file
        alg0: PathBuf,
        /// Original algebra file
        alg1: PathBuf,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        variant: VariantArg,
        #[arg(long)]
        powers: Option<String>,
        /// Base point in the dual, comma separated
        #[arg(long)]
        mu: String,
        #[arg(long)]
        eps: f64,
        /// JSON list of {"X": [..], "t": ..} generator/time pairs
        #[arg(long)]
        flows: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Integrality number (1/2 pi hbar) * integral of the orbit symplectic
    /// form over the radius-s sphere
    Integrality {
        #[arg(long)]
        spin: f64,
        /// Quadrature resolution THETAxPHI
        #[arg(long, default_value = "128x256")]
        grid: String,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
    /// Dimension vs symplectic volume and prequantum operator residuals
    QuantizeSphere {
        /// Half-integer spin
        #[arg(long)]
        spin: f64,
        #[arg(long, default_value = "128x256")]
        grid: String,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// Print the human-readable report (default output mode)
        #[arg(long)]
        report: bool,
    },
    /// SU(2) -> Heisenberg worked example
    #[command(subcommand)]
    Su2h(Su2hCmd),
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Print the catalog names
    List,
    /// Write a catalog algebra as JSON
    Export {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Su2hCmd {
    /// MN-contraction error along a spin sweep
    MnSweep {
        #[arg(long)]
        lambda: f64,
        /// Heisenberg element x,y,t in exponential coordinates
        #[arg(long)]
        g: String,
        /// Spins, comma separated (half-integers allowed)
        #[arg(long, default_value = "10,20,40,80,160")]
        spins: String,
        /// Compared block size K (truncation cutoff is 2K)
        #[arg(long, default_value_t = 5)]
        block: usize,
        /// Write `s,eps,error` rows here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Deformed transition-function convergence on a disk
    Transition {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-1)]
        eps_from: f64,
        #[arg(long, default_value_t = 1e-4)]
        eps_to: f64,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        /// Disk sampling NRADIIxNANGLES
        #[arg(long, default_value = "16x32")]
        grid: String,
        /// Write `eps,sup_err_c1,sup_err_c2` rows here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct UArg {
    /// Diagonal of u, comma separated (e.g. 0,0,1)
    #[arg(long)]
    u: String,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum VariantArg {
    Iw,
    Anti,
    Powers,
}

/// Failure channels with their exit codes: usage 64, validation 2, file 66.
enum Failure {
    Usage(String),
    Validation(String),
    File(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Validation(_) => 2,
            Failure::File(_) => 66,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::File(m) => m,
        }
    }
}

fn validation<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Validation(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn env_tol(default: f64) -> Result<f64, Failure> {
    match std::env::var("LIE_CONTRACT_TOL") {
        Ok(raw) => {
            let t: f64 = raw
                .parse()
                .map_err(|_| Failure::Usage(format!("LIE_CONTRACT_TOL is not a number: {raw:?}")))?;
            if !(t > 0.0) {
                return Err(Failure::Usage(format!("LIE_CONTRACT_TOL must be positive, got {t}")));
            }
            Ok(t)
        }
        Err(_) => Ok(default),
    }
}

fn parse_floats(raw: &str, what: &str) -> Result<Vec<f64>, Failure> {
    raw.split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse {what} list {raw:?}")))
}

fn parse_grid(raw: &str) -> Result<(usize, usize), Failure> {
    let parts: Vec<&str> = raw.split('x').collect();
    let err = || Failure::Usage(format!("grid must look like 128x256, got {raw:?}"));
    if parts.len() != 2 {
        return Err(err());
    }
    let a = parts[0].trim().parse().map_err(|_| err())?;
    let b = parts[1].trim().parse().map_err(|_| err())?;
    Ok((a, b))
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::File(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::File(format!("cannot write {}: {e}", path.display())))
}

fn load_algebra_file(path: &Path) -> Result<AlgebraFile, Failure> {
    let raw = read_to_string(path)?;
    serde_json::from_str(&raw)
        .map_err(|e| Failure::File(format!("malformed algebra file {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<LieAlgebra, Failure> {
    let tol = env_tol(DEFAULT_JACOBI_TOL)?;
    load_algebra_file(path)?.into_algebra(tol).map_err(Failure::Validation)
}

fn build_spec(
    u: Option<&str>,
    variant: VariantArg,
    powers: Option<&str>,
) -> Result<ContractionSpec, Failure> {
    match variant {
        VariantArg::Powers => {
            let raw = powers.ok_or_else(|| {
                Failure::Usage("--variant powers requires --powers a0,a1,...".into())
            })?;
            ContractionSpec::powers(parse_floats(raw, "powers")?).map_err(validation)
        }
        _ => {
            let raw =
                u.ok_or_else(|| Failure::Usage("--u is required for iw/anti variants".into()))?;
            let variant = match variant {
                VariantArg::Iw => ContractionVariant::Iw,
                VariantArg::Anti => ContractionVariant::AntiIw,
                VariantArg::Powers => unreachable!(),
            };
            ContractionSpec::diagonal(parse_floats(raw, "u")?, variant).map_err(validation)
        }
    }
}

fn classify_with_tol(table: &IwTensorTable, tol: f64) -> Classification {
    if tol == DEFAULT_CLASSIFY_TOL {
        return classify_table(table);
    }
    if table.max_norm() <= tol {
        Classification::Isomorphic
    } else {
        match (table.max_vn() <= tol, table.max_vr() <= tol) {
            (true, true) => Classification::Both,
            (true, false) => Classification::IwValid,
            (false, true) => Classification::AntiIwValid,
            (false, false) => Classification::Neither,
        }
    }
}

fn geometric_schedule(from: f64, to: f64, steps: usize) -> Result<Vec<f64>, Failure> {
    if !(from > to && to > 0.0) {
        return Err(Failure::Usage(format!(
            "need eps-from > eps-to > 0, got {from} and {to}"
        )));
    }
    if steps < 2 {
        return Err(Failure::Usage("need at least 2 steps".into()));
    }
    let ratio = (to / from).powf(1.0 / (steps - 1) as f64);
    Ok((0..steps).map(|k| from * ratio.powi(k as i32)).collect())
}

fn algebra_json(alg: &LieAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(alg))
        .expect("algebra serialization is infallible");
    s.push('\n');
    s
}

fn emit(path: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write_output(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Catalog(CatalogCmd::List) => {
            for name in CATALOG_NAMES {
                println!("{name}");
            }
            Ok(())
        }
        Cmd::Catalog(CatalogCmd::Export { name, out }) => {
            let alg = catalog(&name).map_err(validation)?;
            emit(out.as_deref(), &algebra_json(&alg))
        }
        Cmd::CheckJacobi { file } => {
            let tol = env_tol(DEFAULT_JACOBI_TOL)?;
            let parsed = load_algebra_file(&file)?;
            let c = parsed.dense_tensor().map_err(Failure::Validation)?;
            let residual = jacobi_residual_of(parsed.dim, &c);
            println!("jacobi residual = {} (tolerance {})", sci(residual), sci(tol));
            if residual <= tol {
                Ok(())
            } else {
                Err(Failure::Validation(format!(
                    "Jacobi identity fails: residual {} > {}",
                    sci(residual),
                    sci(tol)
                )))
            }
        }
        Cmd::IwTensor { file, u } => {
            let alg = load_algebra(&file)?;
            let spec = build_spec(Some(&u.u), VariantArg::Iw, None)?;
            let table = iw_tensor(&alg, &spec).map_err(validation)?;
            for entry in &table.entries {
                let comps: Vec<String> = entry.value.coeffs.iter().map(|&v| sci(v)).collect();
                println!(
                    "T(e{}, e{}) = [{}]  |V_N-part| = {}  |V_R-part| = {}",
                    entry.i + 1,
                    entry.j + 1,
                    comps.join(", "),
                    sci(entry.norm_vn),
                    sci(entry.norm_vr)
                );
            }
            println!("max |T| = {}", sci(table.max_norm()));
            Ok(())
        }
        Cmd::Classify { file, u } => {
            let alg = load_algebra(&file)?;
            let tol = env_tol(DEFAULT_CLASSIFY_TOL)?;
            let spec = build_spec(Some(&u.u), VariantArg::Iw, None)?;
            let table = iw_tensor(&alg, &spec).map_err(validation)?;
            println!("{}", classify_with_tol(&table, tol).as_str());
            Ok(())
        }
        Cmd::Contract { file, u, variant, out } => {
            let alg = load_algebra(&file)?;
            let spec = build_spec(Some(&u.u), variant, None)?;
            let contracted = match variant {
                VariantArg::Iw => contracted_bracket_iw(&alg, &spec).map_err(validation)?,
                VariantArg::Anti => contracted_bracket_anti(&alg, &spec).map_err(validation)?,
                VariantArg::Powers => {
                    return Err(Failure::Usage(
                        "closed-form contraction exists for iw/anti only; use limit-sweep for powers"
                            .into(),
                    ))
                }
            };
            emit(out.as_deref(), &algebra_json(&contracted))
        }
        Cmd::LimitSweep { file, u, variant, powers, eps_from, eps_to, steps, csv } => {
            let alg = load_algebra(&file)?;
            let spec = build_spec(u.as_deref(), variant, powers.as_deref())?;
            let schedule = geometric_schedule(eps_from, eps_to, steps)?;
            let report = numeric_limit(&alg, &spec, &schedule).map_err(validation)?;
            let n = alg.dim();
            let mut header = String::from("eps,max_error");
            for i in 0..n {
                for j in (i + 1)..n {
                    header.push_str(&format!(",err_{i}_{j}"));
                }
            }
            let mut body = header;
            body.push('\n');
            for (row, &eps) in report.eps_values.iter().enumerate() {
                body.push_str(&sci(eps));
                body.push(',');
                body.push_str(&sci(report.errors[row]));
                for v in &report.pairwise_errors[row] {
                    body.push(',');
                    body.push_str(&sci(*v));
                }
                body.push('\n');
            }
            if let Some(path) = &csv {
                write_output(path, &body)?;
            } else {
                print!("{body}");
            }
            let verdict = match &report.verdict {
                Verdict::Converged => "converged".to_string(),
                Verdict::Diverged(why) => format!("diverged ({why})"),
                Verdict::Inconclusive => "inconclusive".to_string(),
            };
            println!("verdict: {verdict}");
            println!("fitted rate: {}", sci(report.fitted_rate));
            Ok(())
        }
        Cmd::OrbitDeform { alg0, alg1, u, variant, powers, mu, eps, flows, csv } => {
            let a0 = load_algebra(&alg0)?;
            let a1 = load_algebra(&alg1)?;
            let spec = build_spec(u.as_deref(), variant, powers.as_deref())?;
            let mu = DualVector::new(parse_floats(&mu, "mu")?);
            let raw = read_to_string(&flows)?;
            let entries: Vec<FlowEntry> = serde_json::from_str(&raw)
                .map_err(|e| Failure::File(format!("malformed flows file {}: {e}", flows.display())))?;
            let sampling: Vec<(Vector, f64)> = entries
                .into_iter()
                .map(|f| (Vector::new(f.x), f.t))
                .collect();
            let sample = orbit_deform(&a0, &a1, &spec, &mu, eps, &sampling).map_err(validation)?;
            let n = a0.dim();
            let mut body = String::from("step,t");
            for k in 0..n {
                body.push_str(&format!(",mu_{k}"));
            }
            body.push('\n');
            for (step, point) in sample.points.iter().enumerate() {
                body.push_str(&step.to_string());
                body.push(',');
                body.push_str(&sci(sample.generators[step].1));
                for v in &point.coeffs {
                    body.push(',');
                    body.push_str(&sci(*v));
                }
                body.push('\n');
            }
            if let Some(path) = &csv {
                write_output(path, &body)?;
            } else {
                print!("{body}");
            }
            println!("casimir spread = {}", sci(sample.casimir_spread));
            Ok(())
        }
        Cmd::Integrality { spin, grid, hbar } => {
            let cfg = QuantConfig::new(hbar).map_err(validation)?;
            let grid = parse_grid(&grid)?;
            let value = sphere_integrality(spin, grid, &cfg).map_err(validation)?;
            let nearest = value.round();
            println!("(1/2 pi hbar) integral omega = {}", sci(value));
            println!("nearest integer = {nearest}, deviation = {}", sci((value - nearest).abs()));
            Ok(())
        }
        Cmd::QuantizeSphere { spin, grid, hbar, report: _ } => {
            let two_s = (2.0 * spin).round();
            if (2.0 * spin - two_s).abs() > 1e-9 || two_s < 1.0 {
                return Err(Failure::Validation(format!(
                    "spin must be a positive half-integer, got {spin}"
                )));
            }
            let two_s = two_s as usize;
            let cfg = QuantConfig::new(hbar).map_err(validation)?;
            let grid = parse_grid(&grid)?;
            let (dim, vol) = dim_vs_volume(two_s, grid, &cfg).map_err(validation)?;
            let (j1, j2, j3) = prequantum_spin_ops(two_s, &cfg);
            let i = num_complex::Complex64::new(0.0, 1.0);
            let comm = |a: &lie_contract_core::linalg::CMat,
                        b: &lie_contract_core::linalg::CMat|
             -> lie_contract_core::linalg::CMat { a.mul(b).sub(&b.mul(a)) };
            let r12 = comm(&j1, &j2).sub(&j3.scale(i)).max_abs();
            let r23 = comm(&j2, &j3).sub(&j1.scale(i)).max_abs();
            let r31 = comm(&j3, &j1).sub(&j2.scale(i)).max_abs();
            let s = two_s as f64 / 2.0;
            let casimir = j1
                .mul(&j1)
                .add(&j2.mul(&j2))
                .add(&j3.mul(&j3))
                .sub(&lie_contract_core::linalg::CMat::identity(dim).scale(
                    num_complex::Complex64::new(s * (s + 1.0), 0.0),
                ))
                .max_abs();
            println!("spin s = {spin}");
            println!("dim H_s = 2s+1 = {dim}");
            println!("(1/2 pi hbar) integral omega = {}", sci(vol));
            println!("commutator residuals = {}, {}, {}", sci(r12), sci(r23), sci(r31));
            println!("casimir residual = {}", sci(casimir));
            Ok(())
        }
        Cmd::Su2h(Su2hCmd::MnSweep { lambda, g, spins, block, csv }) => {
            let g = parse_floats(&g, "g")?;
            if g.len() != 3 {
                return Err(Failure::Usage(format!("--g needs x,y,t, got {} entries", g.len())));
            }
            let spins = parse_floats(&spins, "spins")?;
            let mut rows = BTreeMap::new();
            for &s in &spins {
                let two_s = (2.0 * s).round();
                if (2.0 * s - two_s).abs() > 1e-9 || two_s < 1.0 {
                    return Err(Failure::Validation(format!(
                        "spins must be positive half-integers, got {s}"
                    )));
                }
                let two_s = two_s as usize;
                let err = mn_error(lambda, g[0], g[1], g[2], two_s, block).map_err(validation)?;
                let eps = lambda / two_s as f64;
                rows.insert(two_s, (s, eps, err));
            }
            let mut body = String::from("s,eps,error\n");
            for (_, (s, eps, err)) in rows {
                body.push_str(&format!("{},{},{}\n", sci(s), sci(eps), sci(err)));
            }
            if let Some(path) = &csv {
                write_output(path, &body)?;
            } else {
                print!("{body}");
            }
            Ok(())
        }
        Cmd::Su2h(Su2hCmd::Transition { lambda, radius, eps_from, eps_to, steps, grid, csv }) => {
            let schedule = geometric_schedule(eps_from, eps_to, steps)?;
            let grid = parse_grid(&grid)?;
            let report =
                transition_convergence(lambda, &schedule, radius, grid).map_err(validation)?;
            let mut body = String::from("eps,sup_err_c1,sup_err_c2\n");
            for (k, &eps) in report.eps_values.iter().enumerate() {
                body.push_str(&format!(
                    "{},{},{}\n",
                    sci(eps),
                    sci(report.sup_err_c1[k]),
                    sci(report.sup_err_c2[k])
                ));
            }
            if let Some(path) = &csv {
                write_output(path, &body)?;
            } else {
                print!("{body}");
            }
            match report.winner {
                Some(c) => println!("converges to exp(i * {c} * lambda * z)"),
                None => println!("no single candidate constant converges"),
            }
            Ok(())
        }
    }
}
