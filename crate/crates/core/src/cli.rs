//! Command-line front end. Exit status: 0 when every check passes, 1 when a
//! check fails, 2 on usage, input or capacity errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bosonic::{build_dual, StringForm};
use crate::circuits::clifford::{
    is_clifford, qutrit_t_nogo, s_conjugation_residual, shift_down, t_conjugation_residual,
};
use crate::circuits::gates::{cz, qft, s_gate, t_gate, z_gate};
use crate::circuits::injection::{inject_diagonal, inject_qft, injection_fidelity, uniformity_deviation};
use crate::circuits::phase_flip::{
    encode, parity_check_circuit, phase_flip_code, phase_flip_codewords, phase_flip_decode,
};
use crate::circuits::state::{seeded_rng, DenseState};
use crate::dense::{max_abs_diff, C64};
use crate::encoding::{build_hamiltonian, Encoding, HamiltonianParams};
use crate::error::{Error, Result};
use crate::gauss_code::{build_code, Boundary, GaussCode, LatticeSpec};
use crate::io::{read_json, write_json, write_matrix_file, CodeFile};
use crate::logical::rewrite_hamiltonian;
use crate::stabilizer::{PauliKind, DEFAULT_DISTANCE_BUDGET};
use crate::terms::TermList;
use crate::verify::{duality_check, DualityOptions};
use crate::zn_algebra::{omega, GenPauli};

#[derive(Parser, Debug)]
#[command(
    name = "qudit-lgt",
    version,
    about = "Gauss-law qudit codes for Z_N lattice gauge theories"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build Gauss-law codes and search their distances
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Build physical Hamiltonians and rewrite them on the logical qudits
    Ham {
        #[command(subcommand)]
        cmd: HamCmd,
    },
    /// Build dual Hamiltonians and compare the three pictures
    Duality {
        #[command(subcommand)]
        cmd: DualityCmd,
    },
    /// Simulate QFT or T state injection
    Inject(InjectArgs),
    /// Check the Clifford property of the standard gates
    Clifford {
        #[command(subcommand)]
        cmd: CliffordCmd,
    },
    /// Exhaustive qutrit T-gate enumeration
    Nogo {
        #[command(subcommand)]
        cmd: NogoCmd,
    },
    /// Phase-flip code syndrome extraction and correction
    Phaseflip {
        #[command(subcommand)]
        cmd: PhaseflipCmd,
    },
}

#[derive(Args, Debug, Clone)]
struct JsonArg {
    /// Write the JSON report to PATH, or to standard output when PATH is omitted
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-", alias = "out")]
    json: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct LatticeArgs {
    /// Lattice dimension (1 or 2)
    #[arg(long, default_value_t = 1)]
    dims: usize,
    /// Sites per direction; a single value is reused for both directions in 2D
    #[arg(long, num_args = 1..=2, value_name = "L")]
    extent: Vec<usize>,
    /// Qudit dimension N (odd prime)
    #[arg(long = "levels", short = 'N')]
    levels: Option<u32>,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    boundary: BoundaryArg,
}

#[derive(Args, Debug, Clone)]
struct SourceArgs {
    /// Code file written by `code build`
    #[arg(long, value_name = "PATH", conflicts_with_all = ["extent", "levels"])]
    code: Option<PathBuf>,
    #[command(flatten)]
    lattice: LatticeArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundaryArg {
    Periodic,
    Open,
}

#[derive(Args, Debug, Clone)]
struct Couplings {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    m: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    eps: f64,
    #[arg(long = "lambda-e", default_value_t = 1.0, allow_hyphen_values = true)]
    lambda_e: f64,
    #[arg(long = "lambda-p", default_value_t = 0.0, allow_hyphen_values = true)]
    lambda_p: f64,
    #[arg(long, value_enum, default_value_t = EncodingArg::Projector)]
    encoding: EncodingArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EncodingArg {
    Projector,
    Compact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StringArg {
    Exact,
    Sign,
}

#[derive(Subcommand, Debug)]
enum CodeCmd {
    Build {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        json: JsonArg,
    },
    Distance {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long = "max-weight", default_value_t = 3)]
        max_weight: usize,
        /// Largest number of candidate operators examined
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET)]
        budget: u128,
        #[command(flatten)]
        json: JsonArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    X,
    Z,
    Full,
}

#[derive(Subcommand, Debug)]
enum HamCmd {
    Build {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        couplings: Couplings,
        /// Destination of the term list; standard output when omitted
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    Rewrite {
        #[arg(long, value_name = "PATH")]
        code: PathBuf,
        #[arg(long, value_name = "PATH")]
        ham: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DualityCmd {
    Build {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        couplings: Couplings,
        #[arg(long, value_enum, default_value_t = FormArg::Bosonic)]
        form: FormArg,
        #[arg(long = "string", value_enum, default_value_t = StringArg::Exact)]
        string: StringArg,
        /// Destination of the binary matrix
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    Check {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        couplings: Couplings,
        #[arg(long = "string", value_enum, default_value_t = StringArg::Exact)]
        string: StringArg,
        #[arg(long = "matrix-tol", default_value_t = 1e-10)]
        matrix_tol: f64,
        #[arg(long = "spectrum-tol", default_value_t = 1e-9)]
        spectrum_tol: f64,
        /// Also compare spectra on the physical space for 2D lattices
        #[arg(long = "full-2d")]
        full_2d: bool,
        #[command(flatten)]
        json: JsonArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Bosonic,
    Logical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GateArg {
    Qft,
    T,
}

#[derive(Args, Debug)]
struct InjectArgs {
    #[arg(long, value_enum)]
    gate: GateArg,
    #[arg(long = "levels", short = 'N')]
    levels: u32,
    /// Force this measurement outcome in every trial
    #[arg(long, conflicts_with = "seed")]
    outcome: Option<u32>,
    /// Seed for input states and sampled outcomes
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    json: JsonArg,
}

#[derive(Subcommand, Debug)]
enum CliffordCmd {
    Verify {
        #[arg(long = "levels", short = 'N')]
        levels: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        json: JsonArg,
    },
}

#[derive(Subcommand, Debug)]
enum NogoCmd {
    Qutrit {
        #[command(flatten)]
        json: JsonArg,
    },
}

#[derive(Subcommand, Debug)]
enum PhaseflipCmd {
    Demo {
        #[arg(long = "levels", short = 'N')]
        levels: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        json: JsonArg,
    },
}

/// Parses `args` and runs the command, returning the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Error::GaugeVariant { index, syndrome }) => {
            eprintln!("error: term {index} is not gauge invariant (syndrome {syndrome:?})");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = hint(&e) {
                eprintln!("hint: {hint}");
            }
            2
        }
    }
}

fn hint(e: &Error) -> Option<&'static str> {
    match e {
        Error::EnumerationLimit { .. } => Some("lower --max-weight or raise --budget"),
        Error::CompositeModulus(_) | Error::UnsupportedLevels(_) => Some("--levels must be an odd prime"),
        _ => None,
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Code { cmd } => match cmd {
            CodeCmd::Build { lattice, json } => code_build(&lattice, &json),
            CodeCmd::Distance {
                source,
                kind,
                max_weight,
                budget,
                json,
            } => code_distance(&source, kind, max_weight, budget, &json),
        },
        Command::Ham { cmd } => match cmd {
            HamCmd::Build { source, couplings, out } => ham_build(&source, &couplings, out.as_deref()),
            HamCmd::Rewrite { code, ham, out } => ham_rewrite(&code, &ham, out.as_deref()),
        },
        Command::Duality { cmd } => match cmd {
            DualityCmd::Build {
                source,
                couplings,
                form,
                string,
                out,
            } => duality_build(&source, &couplings, form, string, &out),
            DualityCmd::Check {
                lattice,
                couplings,
                string,
                matrix_tol,
                spectrum_tol,
                full_2d,
                json,
            } => {
                let opts = DualityOptions {
                    matrix_tol,
                    spectrum_tol,
                    string_form: string_form(string),
                    full_2d,
                };
                duality_check_cmd(&lattice, &couplings, &opts, &json)
            }
        },
        Command::Inject(args) => inject(&args),
        Command::Clifford {
            cmd: CliffordCmd::Verify { levels, tol, json },
        } => clifford_verify(levels, tol, &json),
        Command::Nogo {
            cmd: NogoCmd::Qutrit { json },
        } => nogo(&json),
        Command::Phaseflip {
            cmd:
                PhaseflipCmd::Demo {
                    levels,
                    seed,
                    tol,
                    json,
                },
        } => phaseflip_demo(levels, seed, tol, &json),
    }
}

/// Prints `summary` unless the JSON goes to standard output, then emits the JSON.
fn emit<T: Serialize>(json: &JsonArg, summary: &str, value: &T) -> Result<()> {
    match json.json.as_deref() {
        Some(p) if p == Path::new("-") => {
            let mut out = std::io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, value)?;
            writeln!(out)?;
        }
        Some(p) => {
            print!("{summary}");
            write_json(p, value)?;
        }
        None => print!("{summary}"),
    }
    Ok(())
}

fn lattice_spec(a: &LatticeArgs) -> Result<LatticeSpec> {
    let levels = a
        .levels
        .ok_or_else(|| Error::InvalidArgument("--levels is required".into()))?;
    let extent = match (a.dims, a.extent.as_slice()) {
        (_, []) => return Err(Error::InvalidArgument("--extent is required".into())),
        (1, [l]) => vec![*l],
        (2, [l]) => vec![*l, *l],
        (2, [lx, ly]) => vec![*lx, *ly],
        (d, e) => {
            return Err(Error::InvalidArgument(format!(
                "{} extents for a {d}D lattice",
                e.len()
            )))
        }
    };
    let boundary = match a.boundary {
        BoundaryArg::Periodic => Boundary::Periodic,
        BoundaryArg::Open => Boundary::Open,
    };
    LatticeSpec::new(a.dims, extent, boundary, levels)
}

fn gauss_from(source: &SourceArgs) -> Result<GaussCode> {
    match &source.code {
        Some(p) => read_json::<CodeFile>(p)?.gauss(),
        None => build_code(&lattice_spec(&source.lattice)?),
    }
}

fn params(c: &Couplings) -> HamiltonianParams {
    HamiltonianParams::new(c.m, c.eps, c.lambda_e)
        .with_plaquette(c.lambda_p)
        .with_encoding(match c.encoding {
            EncodingArg::Projector => Encoding::Projector,
            EncodingArg::Compact => Encoding::Compact,
        })
}

fn string_form(s: StringArg) -> StringForm {
    match s {
        StringArg::Exact => StringForm::Exact,
        StringArg::Sign => StringForm::Sign,
    }
}

fn describe(l: &LatticeSpec) -> String {
    let b = match l.boundary {
        Boundary::Periodic => "periodic",
        Boundary::Open => "open",
    };
    let e: Vec<String> = l.extent.iter().map(usize::to_string).collect();
    format!("{}D {} lattice, {b}, N = {}", l.dims, e.join("x"), l.levels)
}

fn code_build(a: &LatticeArgs, json: &JsonArg) -> Result<bool> {
    let g = build_code(&lattice_spec(a)?)?;
    let c = g.code();
    let summary = format!(
        "Gauss code on a {}\nn = {}, k = {}, stabilizers = {}\n",
        describe(g.lattice()),
        c.n(),
        c.k(),
        c.generators().len()
    );
    emit(json, &summary, &CodeFile::from_gauss(&g))?;
    Ok(true)
}

fn code_distance(source: &SourceArgs, kind: KindArg, w: usize, budget: u128, json: &JsonArg) -> Result<bool> {
    let code = match &source.code {
        Some(p) => read_json::<CodeFile>(p)?.code,
        None => build_code(&lattice_spec(&source.lattice)?)?.code().clone(),
    };
    let (pk, label) = match kind {
        KindArg::X => (PauliKind::X, "d_x"),
        KindArg::Z => (PauliKind::Z, "d_z"),
        KindArg::Full => (PauliKind::Full, "d"),
    };
    let witness = code.find_logical(pk, w, budget)?;
    let summary = match &witness {
        Some(p) => format!("{label} = {} (witness {p})\n", p.weight()),
        None => format!("{label}: none <= {w}\n"),
    };
    let report = json!({
        "kind": label,
        "max_weight": w,
        "distance": witness.as_ref().map(GenPauli::weight),
        "witness": witness,
    });
    emit(json, &summary, &report)?;
    Ok(true)
}

fn ham_build(source: &SourceArgs, c: &Couplings, out: Option<&Path>) -> Result<bool> {
    let g = gauss_from(source)?;
    let h = build_hamiltonian(g.lattice(), &params(c))?;
    match out {
        Some(p) => {
            write_json(p, &h)?;
            println!(
                "{} terms on {} qudits written to {}",
                h.len(),
                h.n_qudits(),
                p.display()
            );
        }
        None => println!("{}", serde_json::to_string_pretty(&h)?),
    }
    Ok(true)
}

fn ham_rewrite(code: &Path, ham: &Path, out: Option<&Path>) -> Result<bool> {
    let cf: CodeFile = read_json(code)?;
    let h: TermList = read_json(ham)?;
    let l = rewrite_hamiltonian(&cf.code, &h)?;
    match out {
        Some(p) => {
            write_json(p, &l)?;
            println!(
                "{} physical terms -> {} logical terms written to {}",
                h.len(),
                l.len(),
                p.display()
            );
        }
        None => println!("{}", serde_json::to_string_pretty(&l)?),
    }
    Ok(true)
}

fn duality_build(source: &SourceArgs, c: &Couplings, form: FormArg, s: StringArg, out: &Path) -> Result<bool> {
    let g = gauss_from(source)?;
    let p = params(c);
    let dim = match form {
        FormArg::Bosonic => {
            let d = build_dual(&g, &p, string_form(s))?;
            write_matrix_file(out, &d)?;
            crate::dense::Operator::dim(&d)
        }
        FormArg::Logical => {
            let l = rewrite_hamiltonian(g.code(), &build_hamiltonian(g.lattice(), &p)?)?;
            write_matrix_file(out, &l)?;
            crate::dense::Operator::dim(&l)
        }
    };
    println!("{dim}x{dim} matrix written to {}", out.display());
    Ok(true)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "skipped".into(), |d| format!("{d:.3e}"))
}

fn duality_check_cmd(a: &LatticeArgs, c: &Couplings, opts: &DualityOptions, json: &JsonArg) -> Result<bool> {
    let lattice = lattice_spec(a)?;
    let r = duality_check(&lattice, &params(c), opts)?;
    let summary = format!(
        "duality check on a {}\nsector dims: physical {}, logical {}\nmax matrix diff: {:.3e}\nmax spectrum diff: {}\ngauge-variant terms: {}\n{}\n",
        describe(&lattice),
        r.sector_dims.physical.map_or_else(|| "skipped".into(), |d| d.to_string()),
        r.sector_dims.logical,
        r.max_matrix_diff,
        fmt_opt(r.max_spectrum_diff),
        r.gauge_violations,
        if r.pass { "PASS" } else { "FAIL" }
    );
    emit(json, &summary, &r)?;
    Ok(r.pass)
}

#[derive(Serialize)]
struct TrialReport {
    outcome: u32,
    probability: f64,
    fidelity: f64,
    correction_clifford: bool,
}

fn inject(a: &InjectArgs) -> Result<bool> {
    let n = a.levels;
    let gate = match a.gate {
        GateArg::Qft => qft(n)?,
        GateArg::T => t_gate(n)?,
    };
    crate::zn_algebra::ensure_levels(n)?;
    let mut rng = seeded_rng(a.seed.unwrap_or(0));
    let mut trials = Vec::with_capacity(a.trials);
    let mut worst_uniform = 0.0f64;
    for _ in 0..a.trials {
        let psi = DenseState::random(n, 1, &mut rng)?;
        let rec = match a.gate {
            GateArg::Qft => inject_qft(&psi, a.outcome, &mut rng)?,
            GateArg::T => inject_diagonal(&gate, &psi, a.outcome, &mut rng)?,
        };
        worst_uniform = worst_uniform.max(uniformity_deviation(&rec.probabilities));
        trials.push(TrialReport {
            outcome: rec.measurement.outcome,
            probability: rec.measurement.probability,
            fidelity: injection_fidelity(&rec, &gate, &psi)?,
            correction_clifford: is_clifford(&rec.correction, n)?,
        });
    }
    let min_fidelity = trials.iter().map(|t| t.fidelity).fold(1.0, f64::min);
    let all_clifford = trials.iter().all(|t| t.correction_clifford);
    let pass = min_fidelity > 1.0 - a.tol && worst_uniform < a.tol && all_clifford;
    let name = match a.gate {
        GateArg::Qft => "qft",
        GateArg::T => "t",
    };
    let summary = format!(
        "{name} injection, N = {n}, {} trial(s)\nmin fidelity: {:.15}\nmax |p_L - 1/N|: {:.3e}\ncorrections Clifford: {all_clifford}\n{}\n",
        a.trials,
        min_fidelity,
        worst_uniform,
        if pass { "PASS" } else { "FAIL" }
    );
    let report = json!({
        "gate": name,
        "N": n,
        "seed": a.seed,
        "forced_outcome": a.outcome,
        "trials": trials,
        "min_fidelity": min_fidelity,
        "max_uniformity_deviation": worst_uniform,
        "pass": pass,
    });
    emit(&a.json, &summary, &report)?;
    Ok(pass)
}

#[derive(Serialize)]
struct Check {
    name: String,
    value: serde_json::Value,
    pass: bool,
}

fn check(name: &str, value: serde_json::Value, pass: bool) -> Check {
    Check {
        name: name.into(),
        value,
        pass,
    }
}

fn clifford_verify(n: u32, tol: f64, json: &JsonArg) -> Result<bool> {
    crate::zn_algebra::ensure_levels(n)?;
    let mut checks = vec![
        check("QFT is Clifford", json!(true), is_clifford(&qft(n)?, n)?),
        check("S is Clifford", json!(true), is_clifford(&s_gate(n)?, n)?),
        check("CZ is Clifford", json!(true), is_clifford(&cz(n)?, n)?),
    ];
    let f = qft(n)?;
    let x = crate::circuits::gates::x_gate(n)?;
    let z = z_gate(n)?;
    let d = max_abs_diff(&(f.adjoint() * &z * &f), &x);
    checks.push(check("QFT† Z QFT = X", json!(d), d < tol));
    let d = s_conjugation_residual(n)?;
    checks.push(check("S X S† = ω Z† X", json!(d), d < tol));
    let s = s_gate(n)?;
    let xa = shift_down(n)?;
    let d = max_abs_diff(&(&s * &xa * s.adjoint()), &(z.adjoint() * &xa * omega(n, -1)));
    checks.push(check("S X S† = ω⁻¹ Z† X", json!(d), d < tol));
    if n >= 5 {
        checks.push(check("T is not Clifford", json!(true), !is_clifford(&t_gate(n)?, n)?));
        let d = t_conjugation_residual(n)?;
        checks.push(check("T X T† = ω^{-[6⁻¹]} S† X", json!(d), d < tol));
    }
    let pass = checks.iter().all(|c| c.pass);
    let mut summary = format!("Clifford checks, N = {n} (X = Σ|j⟩⟨j+1| in the conjugation identities)\n");
    for c in &checks {
        let v = match &c.value {
            serde_json::Value::Bool(_) => String::new(),
            v => format!(" (residual {:.3e})", v.as_f64().unwrap_or(f64::NAN)),
        };
        summary.push_str(&format!("  [{}] {}{v}\n", if c.pass { "PASS" } else { "FAIL" }, c.name));
    }
    summary.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    emit(json, &summary, &json!({ "N": n, "checks": checks, "pass": pass }))?;
    Ok(pass)
}

fn nogo(json: &JsonArg) -> Result<bool> {
    let r = qutrit_t_nogo()?;
    let summary = format!(
        "{}/{} triples consistent with: T X T† Clifford <=> a ≡ b ≡ c (mod 3)\n\
         {}/{} triples consistent with: T X T† Clifford <=> a + b + c ≡ 0 (mod 3)\n\
         a ≡ b ≡ c (mod 3) implies T Clifford: {}\n\
         T X T† Clifford: {}, T Clifford: {}\n\
         counterexamples (T X T† Clifford, T not): {:?}\n{}\n",
        r.consistent,
        r.total,
        r.sum_rule_consistent,
        r.total,
        r.congruent_implies_clifford,
        r.txt_clifford,
        r.t_clifford,
        r.counterexamples,
        if r.pass() { "PASS" } else { "FAIL" }
    );
    let mut value = serde_json::to_value(&r)?;
    value["pass"] = json!(r.pass());
    emit(json, &summary, &value)?;
    Ok(r.pass())
}

#[derive(Serialize)]
struct ErrorRow {
    qudit: usize,
    power: i64,
    algebraic: Vec<u32>,
    circuit: Vec<u32>,
    fidelity_after_correction: f64,
}

fn phaseflip_demo(n: u32, seed: u64, tol: f64, json: &JsonArg) -> Result<bool> {
    let code = phase_flip_code(n)?;
    let words = phase_flip_codewords(n)?;
    let mut rng = seeded_rng(seed);
    let coeffs: Vec<C64> = DenseState::random(n, 1, &mut rng)?
        .amplitudes()
        .iter()
        .copied()
        .collect();
    let psi = encode(n, &coeffs)?;
    let (clean, _) = parity_check_circuit(&psi, &mut rng)?;
    let mut rows = Vec::new();
    for q in 0..3 {
        for j in 1..n as i64 {
            let e = GenPauli::single(n, 3, q, 0, j)?;
            let hit = psi.clone().applied(&e.to_dense()?, &[0, 1, 2])?;
            let (circuit, _) = parity_check_circuit(&hit, &mut rng)?;
            let fix = phase_flip_decode(n, &circuit)?;
            let back = hit.applied(&fix.to_dense()?, &[0, 1, 2])?;
            rows.push(ErrorRow {
                qudit: q + 1,
                power: j,
                algebraic: code.syndrome(&e)?,
                circuit,
                fidelity_after_correction: back.fidelity(&psi),
            });
        }
    }
    let pass = clean == [0, 0]
        && rows
            .iter()
            .all(|r| r.algebraic == r.circuit && r.fidelity_after_correction > 1.0 - tol);
    let mut summary = format!(
        "phase-flip code, N = {n}: S1 = X1 X2^-1, S2 = X2 X3^-1\n{} codewords, no-error syndrome {:?}\n  error   algebraic  circuit  fidelity\n",
        words.len(),
        clean
    );
    for r in &rows {
        summary.push_str(&format!(
            "  Z{}^{}    {:?}     {:?}   {:.15}\n",
            r.qudit, r.power, r.algebraic, r.circuit, r.fidelity_after_correction
        ));
    }
    summary.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    let report = json!({ "N": n, "seed": seed, "clean_syndrome": clean, "errors": rows, "pass": pass });
    emit(json, &summary, &report)?;
    Ok(pass)
}
