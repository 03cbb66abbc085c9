use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use bracket_flow::flow::{
    integrate, omega_limit, Convergence, FlowOptions, FlowTrajectory, LimitOptions, NormalizationPolicy, OdeOptions,
    OmegaLimit, Termination,
};
use bracket_flow::lie::io::BracketFile;
use bracket_flow::lie::{check_membership, MembershipTolerances};
use bracket_flow::scenarios::BUILT_IN;
use bracket_flow::soliton::{classify as classify_bracket, ricci_flow_diagonal_check, DiagonalMode};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::target::{file_stem, read_params_file, resolve, CliResult, Failure, Target};
use crate::{FlowArgs, LimitArgs, OdeArgs};

/// Writes a line to stdout; a closed pipe (`| head`) is not an error.
fn emit(line: &str) -> CliResult<()> {
    match writeln!(std::io::stdout().lock(), "{line}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print_json<S: Serialize>(value: &S) -> CliResult<()> {
    emit(&serde_json::to_string_pretty(value)?)
}

fn options(ode: &OdeArgs) -> CliResult<(NormalizationPolicy<f64>, FlowOptions<f64>)> {
    let policy = NormalizationPolicy::from_str(&ode.normalization)?;
    if !(ode.t_end.is_finite() && ode.rtol > 0.0 && ode.atol > 0.0) {
        return Err(Failure::validation("t-end must be finite and rtol, atol positive"));
    }
    let opts = FlowOptions {
        ode: OdeOptions { rtol: ode.rtol, atol: ode.atol, ..OdeOptions::default() },
        blow_up: ode.blow_up,
        convergence: None,
        ..FlowOptions::default()
    };
    Ok((policy, opts))
}

pub fn check(spec: &str) -> CliResult<ExitCode> {
    let target = resolve(spec)?;
    let report = check_membership(&target.bracket, &MembershipTolerances::default());
    print_json(&json!({
        "target": target.label,
        "report": report,
        "failures": report.failures(),
    }))?;
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Debug, Serialize)]
struct FlowSummary {
    target: String,
    out: Option<PathBuf>,
    termination: Termination,
    t_final: f64,
    states: usize,
    bracket_norm: f64,
}

fn run_flow(
    target: &Target,
    policy: NormalizationPolicy<f64>,
    opts: &FlowOptions<f64>,
    t_end: f64,
    out: Option<PathBuf>,
) -> CliResult<FlowSummary> {
    let traj: FlowTrajectory<f64> = integrate(&target.bracket, policy, t_end, opts)?;
    if let Some(path) = &out {
        let mut w = BufWriter::new(File::create(path)?);
        traj.write_csv(&mut w)?;
        w.flush()?;
    }
    let last = traj.last();
    Ok(FlowSummary {
        target: target.label.clone(),
        out,
        termination: traj.termination,
        t_final: last.t,
        states: traj.states.len(),
        bracket_norm: last.mu.norm(),
    })
}

pub fn flow(args: FlowArgs) -> CliResult<ExitCode> {
    let mut targets = args.targets.iter().map(|s| resolve(s)).collect::<CliResult<Vec<_>>>()?;
    if let Some(path) = &args.params_file {
        targets.extend(read_params_file(path)?);
    }
    if targets.is_empty() {
        return Err(Failure::validation("no targets given"));
    }
    if targets.len() > 1 && args.out.is_some() {
        return Err(Failure::validation("--out takes a single target; use --out-dir for several"));
    }
    if args.jobs == 0 {
        return Err(Failure::validation("--jobs must be at least 1"));
    }
    let (policy, mut opts) = options(&args.ode)?;
    if args.stop_on_convergence {
        opts.convergence = Some(Convergence::default());
    }
    if let Some(k) = args.samples {
        if k == 0 {
            return Err(Failure::validation("--samples must be positive"));
        }
        let t_end = args.ode.t_end;
        opts.sample_times = Some((1..=k).map(|i| if i == k { t_end } else { t_end * i as f64 / k as f64 }).collect());
    }
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let outputs: Vec<Option<PathBuf>> = targets
        .iter()
        .enumerate()
        .map(|(i, t)| match (&args.out, &args.out_dir) {
            (Some(p), _) => Some(p.clone()),
            (None, Some(d)) => Some(d.join(format!("{}.csv", file_stem(i, &t.label)))),
            (None, None) => None,
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::validation(e.to_string()))?;
    let t_end = args.ode.t_end;
    let results: Vec<CliResult<FlowSummary>> = pool.install(|| {
        targets.par_iter().zip(outputs.into_par_iter()).map(|(t, out)| run_flow(t, policy, &opts, t_end, out)).collect()
    });

    let mut worst = 0u8;
    let mut summaries = Vec::new();
    for r in results {
        match r {
            Ok(s) => {
                if s.termination == Termination::StepFloor {
                    worst = worst.max(2);
                }
                summaries.push(serde_json::to_value(&s)?);
            }
            Err(f) => {
                eprintln!("error: {}", f.message);
                worst = worst.max(f.code);
                summaries.push(json!({ "error": f.message }));
            }
        }
    }
    print_json(&summaries)?;
    Ok(ExitCode::from(worst))
}

pub fn classify(spec: &str, out: Option<PathBuf>, trajectory_t_end: Option<f64>) -> CliResult<ExitCode> {
    let target = resolve(spec)?;
    let report = classify_bracket(&target.bracket)?;
    let mut value = serde_json::to_value(&report)?;
    if let Some(t_end) = trajectory_t_end {
        let evidence = ricci_flow_diagonal_check(&target.bracket, DiagonalMode::Trajectory { t_end })?;
        value["trajectory_diagonal"] = serde_json::to_value(evidence)?;
    }
    value["target"] = json!(target.label);
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(&path)?);
            serde_json::to_writer_pretty(&mut w, &value)?;
            w.flush()?;
        }
        None => print_json(&value)?,
    }
    Ok(ExitCode::SUCCESS)
}

pub fn limit(args: LimitArgs) -> CliResult<ExitCode> {
    let target = resolve(&args.target)?;
    let (policy, mut opts) = options(&args.ode)?;
    opts.convergence =
        Some(Convergence { field_tol: args.field_tol, cauchy_tol: args.cauchy_tol, tail: args.tail });
    let traj = integrate(&target.bracket, policy, args.ode.t_end, &opts)?;
    let lopts = LimitOptions { tail: args.tail, cauchy_tol: args.cauchy_tol, field_tol: args.field_tol, blow_up: args.ode.blow_up };
    let last = traj.last();
    let outcome = match omega_limit(&traj, &lopts) {
        OmegaLimit::Limit(mu) => json!({ "kind": "limit", "bracket": BracketFile::from_bracket(&mu) }),
        OmegaLimit::Divergent => json!({ "kind": "divergent" }),
        OmegaLimit::Undecided { tail_diameter, field_norm } => {
            json!({ "kind": "undecided", "tail_diameter": tail_diameter, "field_norm": field_norm })
        }
    };
    print_json(&json!({
        "target": target.label,
        "normalization": policy.to_string(),
        "termination": traj.termination,
        "t_final": last.t,
        "outcome": outcome,
    }))?;
    Ok(if traj.termination == Termination::StepFloor { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

pub fn scenarios() -> CliResult<ExitCode> {
    for (name, hint) in BUILT_IN {
        emit(&format!("{name:<12} {hint}"))?;
    }
    Ok(ExitCode::SUCCESS)
}
