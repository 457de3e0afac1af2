mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use lattice_markov::braid::tl_from_an;
use lattice_markov::chain::{bond_sum, chain_spectrum, hamiltonian, ChainSpec};
use lattice_markov::ladder::{
    h0, h_doubleprime, h_ladder, h_prime, H0Params, LadderParams, RUNG_DIM,
};
use lattice_markov::linalg::{io as matrix_io, symmetric_eigenvalues, Matrix, Tolerance};
use lattice_markov::markov::{
    build_an_markov, build_ladder_markov, export, ChainKind, MarkovChain,
};
use lattice_markov::simulate::{simulate_ctmc, simulate_dtmc, summarize, write_trajectory_csv};
use lattice_markov_suite::{an_suite, ladder_suite, tolerances, SuiteReport};

use args::{BuildKind, ChainArg, Cli, Command, Format, Model, ModelArgs, VerifyTarget};

const ALGEBRA_DEFAULT_TOL: f64 = 1e-10;

enum Outcome {
    Pass,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Verify {
            target,
            model,
            tol,
            out,
        } => verify(target, &model, tol, out.as_deref()),
        Command::Build {
            target,
            kind,
            model,
            format,
            out,
        } => {
            let m = build(target, kind, &model)?;
            let text = match format {
                Format::Json => matrix_io::to_json_string(&m),
                Format::Csv => matrix_io::to_csv_string(&m),
            };
            emit(out.as_deref(), &text)?;
            Ok(Outcome::Pass)
        }
        Command::Spectrum {
            target,
            model,
            tol,
            out,
        } => {
            let text = spectrum(target, &model, tolerance(tol)?)?;
            emit(out.as_deref(), &text)?;
            Ok(Outcome::Pass)
        }
        Command::Markov {
            target,
            kind,
            model,
            out,
        } => {
            let chain = chain(target, kind, &model)?;
            emit(
                out.as_deref(),
                &serde_json::to_string_pretty(&export(&chain))?,
            )?;
            Ok(Outcome::Pass)
        }
        Command::Simulate {
            target,
            kind,
            model,
            init,
            steps,
            tmax,
            seed,
            burn_in,
            out,
        } => {
            let chain = chain(target, kind, &model)?;
            let traj = match kind {
                ChainArg::P => simulate_dtmc(&chain, init, steps, seed)?,
                ChainArg::Q => simulate_ctmc(&chain, init, tmax, seed)?,
            };
            if let Some(path) = out.as_deref() {
                let file =
                    File::create(path).with_context(|| format!("creating {}", path.display()))?;
                write_trajectory_csv(&traj, &chain.encoder, BufWriter::new(file))?;
            }
            let summary = summarize(&chain, &traj, burn_in)?;
            emit(None, &serde_json::to_string_pretty(&summary)?)?;
            Ok(Outcome::Pass)
        }
    }
}

fn tolerance(tol: f64) -> Result<Tolerance> {
    if !tol.is_finite() {
        bail!("tolerance must be finite, got {tol}");
    }
    Ok(Tolerance::new(tol, Tolerance::default().rel_tol)?)
}

fn an_spec(model: &ModelArgs) -> Result<ChainSpec> {
    let spec = ChainSpec::new(model.n, model.sites)?;
    spec.dimension()?;
    Ok(spec)
}

fn ladder_params(model: &ModelArgs) -> Result<LadderParams> {
    let p = LadderParams::new(model.a, model.b, model.c);
    if ![p.a, p.b, p.c].iter().all(|x| x.is_finite()) {
        bail!("ladder parameters must be finite");
    }
    Ok(p)
}

fn chain_kind(kind: ChainArg) -> ChainKind {
    match kind {
        ChainArg::P => ChainKind::Transition,
        ChainArg::Q => ChainKind::Intensity,
    }
}

fn chain(target: Model, kind: ChainArg, model: &ModelArgs) -> Result<MarkovChain> {
    Ok(match target {
        Model::An => build_an_markov(an_spec(model)?, chain_kind(kind))?,
        Model::Ladder => build_ladder_markov(ladder_params(model)?, model.sites, chain_kind(kind))?,
    })
}

fn build(target: Model, kind: BuildKind, model: &ModelArgs) -> Result<Matrix> {
    Ok(match (target, kind) {
        (_, BuildKind::P) => chain(target, ChainArg::P, model)?.matrix,
        (_, BuildKind::Q) => chain(target, ChainArg::Q, model)?.matrix,
        (Model::An, BuildKind::H) => hamiltonian(an_spec(model)?)?.matrix,
        (Model::An, BuildKind::E) => tl_from_an(an_spec(model)?.rank).matrix,
        (Model::Ladder, BuildKind::H) => h_prime(ladder_params(model)?).into_matrix(),
        (Model::Ladder, BuildKind::Hpp) => h_doubleprime(ladder_params(model)?).into_matrix(),
        (Model::Ladder, BuildKind::H0) => h0(H0Params {
            d: model.d,
            f: model.f,
        })
        .into_matrix(),
        (Model::Ladder, BuildKind::Hladder) => h_ladder().into_matrix(),
        (Model::An, BuildKind::Hpp | BuildKind::H0 | BuildKind::Hladder) => {
            bail!("--kind {kind:?} applies to the ladder only")
        }
        (Model::Ladder, BuildKind::E) => bail!("--kind E applies to A_n only"),
    })
}

#[derive(Serialize)]
struct AnSpectrum {
    n: usize,
    #[serde(rename = "L")]
    sites: usize,
    eigenvalues: Vec<f64>,
}

#[derive(Serialize)]
struct LadderSpectrum {
    a: f64,
    b: f64,
    c: f64,
    #[serde(rename = "L")]
    sites: usize,
    eigenvalues: Vec<f64>,
}

fn spectrum(target: Model, model: &ModelArgs, tol: Tolerance) -> Result<String> {
    Ok(match target {
        Model::An => {
            let spec = an_spec(model)?;
            let eigenvalues = chain_spectrum(&hamiltonian(spec)?, tol)?;
            serde_json::to_string_pretty(&AnSpectrum {
                n: spec.n(),
                sites: spec.sites,
                eigenvalues,
            })?
        }
        Model::Ladder => {
            let p = ladder_params(model)?;
            if model.sites < 2 {
                bail!("a ladder needs at least 2 rungs, got {}", model.sites);
            }
            let total = bond_sum(h_doubleprime(p).matrix(), RUNG_DIM, model.sites)?;
            let eigenvalues = symmetric_eigenvalues(&total, tol)?;
            serde_json::to_string_pretty(&LadderSpectrum {
                a: p.a,
                b: p.b,
                c: p.c,
                sites: model.sites,
                eigenvalues,
            })?
        }
    })
}

#[derive(Serialize)]
struct Tolerances {
    algebra: f64,
    ladder_identity: f64,
    column_sum: f64,
    ladder_column_sum: f64,
    entry_floor: f64,
    spectrum: f64,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    tool: &'static str,
    version: &'static str,
    target: &'a str,
    n: usize,
    #[serde(rename = "L")]
    sites: usize,
    a: f64,
    b: f64,
    c: f64,
    tolerances: Tolerances,
    wall_time_seconds: f64,
    pass: bool,
    suites: Vec<SuiteReport>,
}

fn verify(
    target: VerifyTarget,
    model: &ModelArgs,
    tol: Option<f64>,
    out: Option<&Path>,
) -> Result<Outcome> {
    let start = Instant::now();
    let algebra = tolerance(tol.unwrap_or(ALGEBRA_DEFAULT_TOL))?;
    let ladder = tolerance(tol.unwrap_or(tolerances::LADDER_IDENTITY))?;
    let mut suites = Vec::new();
    if matches!(target, VerifyTarget::An | VerifyTarget::All) {
        suites.push(an_suite(an_spec(model)?, algebra)?);
    }
    if matches!(target, VerifyTarget::Ladder | VerifyTarget::All) {
        suites.push(ladder_suite(ladder_params(model)?, model.sites, ladder)?);
    }
    let pass = suites.iter().all(|s| s.pass);
    let report = VerifyReport {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        target: match target {
            VerifyTarget::An => "an",
            VerifyTarget::Ladder => "ladder",
            VerifyTarget::All => "all",
        },
        n: model.n,
        sites: model.sites,
        a: model.a,
        b: model.b,
        c: model.c,
        tolerances: Tolerances {
            algebra: algebra.abs_tol,
            ladder_identity: ladder.abs_tol,
            column_sum: tolerances::COLUMN_SUM,
            ladder_column_sum: tolerances::LADDER_COLUMN_SUM,
            entry_floor: tolerances::ENTRY_FLOOR,
            spectrum: tolerances::SPECTRUM,
        },
        wall_time_seconds: start.elapsed().as_secs_f64(),
        pass,
        suites,
    };
    emit(out, &serde_json::to_string_pretty(&report)?)?;
    for suite in &report.suites {
        for name in suite.failed() {
            eprintln!("FAIL {}.{name}", suite.target);
        }
    }
    Ok(if pass {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut f =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            writeln!(f, "{text}")?;
        }
        None => match writeln!(io::stdout().lock(), "{text}") {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
            other => other?,
        },
    }
    Ok(())
}
