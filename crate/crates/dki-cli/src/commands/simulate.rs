//! `simulate`: Monte Carlo error-probability experiments.
//!
//! Four experiments share a config vocabulary:
//! - `type1` — reject a true target message, worst case over the fading grid;
//! - `type2` — accept a false message, worst case over the fading grid;
//! - `degenerate` — zero fading, where the two error kinds are complementary;
//! - `converse` — two codewords at shrinking distance, error sum vs distance.

use std::path::Path;

use dki_core::io::{format_f64 as f, read_codebook};
use dki_core::montecarlo::{
    converse_distance_experiment, degenerate_fading_experiment, target_set_nearest,
    target_set_random, type1_error_curve, type2_error_curve, Coupling, GGrid,
};
use dki_core::packing::validate_codebook;
use dki_core::{bounds, ChannelParams, CodeParams, Codebook, Error, TargetSet};

use crate::commands::{read_channel, read_code};
use crate::config::ConfigReader;
use crate::errors::CliError;
use crate::output::{csv, write_atomic};

pub fn run(
    reader: &mut ConfigReader,
    out: &Path,
    seed_flag: Option<u64>,
    trials_flag: Option<u64>,
) -> Result<(), CliError> {
    let experiment = reader.require_choice(
        "sim.experiment",
        &["type1", "type2", "degenerate", "converse"],
    )?;
    let code = read_code(reader)?;
    let ch = read_channel(reader)?;
    let seed = reader.u64_flag_or("seed", seed_flag, 0)?;
    let trials = reader.u64_flag_or("sim.trials", trials_flag, 10_000)?;

    match experiment.as_str() {
        "type1" | "type2" => membership(reader, out, &experiment, &code, &ch, seed, trials),
        "degenerate" => degenerate(reader, out, &code, &ch, seed, trials),
        "converse" => converse(reader, out, &code, &ch, seed, trials),
        _ => unreachable!("choice validated above"),
    }
}

/// The codebook for an experiment: loaded from `sim.codebook` when given
/// (and cross-checked against the config parameters), otherwise constructed
/// from them.
fn acquire_codebook(
    reader: &mut ConfigReader,
    code: &CodeParams,
    ch: &ChannelParams,
    seed: u64,
) -> Result<Codebook, CliError> {
    let Some(path) = reader.opt_str("sim.codebook") else {
        return crate::commands::build::build_from_config(reader, code, ch, seed);
    };
    let file = read_codebook(Path::new(&path))?;
    if file.codebook.n != code.n() {
        return Err(Error::InvalidParameter(format!(
            "codebook file has n = {}, config has code.n = {}",
            file.codebook.n,
            code.n()
        ))
        .into());
    }
    if file.kappa != code.kappa() || file.b != code.b() {
        return Err(Error::InvalidParameter(format!(
            "codebook file has (kappa, b) = ({}, {}), config has ({}, {})",
            file.kappa,
            file.b,
            code.kappa(),
            code.b()
        ))
        .into());
    }
    let a_file = file.codebook.sqrt_a() * file.codebook.sqrt_a();
    if (a_file - ch.a()).abs() > 1e-9 * ch.a() {
        return Err(Error::InvalidParameter(format!(
            "codebook file implies power budget {a_file}, config has channel.a = {}",
            ch.a()
        ))
        .into());
    }
    let report = validate_codebook(&file.codebook, ch);
    if !report.pass {
        return Err(CliError::Validation(format!(
            "codebook loaded from {path} failed its checks"
        )));
    }
    Ok(file.codebook)
}

/// Target set around message `i`. Both policies draw from the other
/// messages; a type-I target must additionally contain `i` itself.
fn make_target(
    cb: &Codebook,
    i: usize,
    k: usize,
    policy: &str,
    seed: u64,
    include_i: bool,
) -> Result<TargetSet, CliError> {
    let from_policy = |size: usize| -> Result<TargetSet, dki_core::Error> {
        match policy {
            "nearest" => target_set_nearest(cb, i, size),
            "random" => target_set_random(cb.m(), i, size, seed),
            _ => unreachable!("choice validated by the reader"),
        }
    };
    if !include_i {
        return Ok(from_policy(k)?);
    }
    if k == 1 {
        return Ok(TargetSet::new(vec![i], cb.m())?);
    }
    let mut indices = from_policy(k - 1)?.indices().to_vec();
    indices.push(i);
    Ok(TargetSet::new(indices, cb.m())?)
}

fn membership(
    reader: &mut ConfigReader,
    out: &Path,
    experiment: &str,
    code: &CodeParams,
    ch: &ChannelParams,
    seed: u64,
    trials: u64,
) -> Result<(), CliError> {
    let cb = acquire_codebook(reader, code, ch, seed)?;
    let i = reader.usize_or("sim.message_index", 0)?;
    let policy = reader.choice_or("sim.target_policy", &["nearest", "random"], "nearest")?;
    let default_k = bounds::target_set_size(code.n(), code.kappa())?;
    let k = reader.usize_or("sim.target_size", default_k)?;
    let grid_points = reader.usize_or("sim.grid_points", 5)?;
    let grid = GGrid::linspace(ch.gamma(), ch.g_max(), grid_points)?;

    let (curve, bound) = if experiment == "type1" {
        let target = make_target(&cb, i, k, &policy, seed, true)?;
        let curve = type1_error_curve(&cb, i, &target, ch, &grid, trials, seed)?;
        (curve, bounds::type1_error_bound(code, ch))
    } else {
        let target = make_target(&cb, i, k, &policy, seed, false)?;
        let curve = type2_error_curve(&cb, i, &target, ch, &grid, trials, seed)?;
        (curve, bounds::type2_error_bound(code, ch).composite)
    };

    let rows: Vec<String> = curve
        .iter()
        .map(|e| {
            format!(
                "{},{},{},{},{}",
                f(e.g_worst),
                f(e.p_hat),
                f(e.half_width),
                e.trials,
                f(bound)
            )
        })
        .collect();
    let name = format!("simulate_{experiment}.csv");
    write_atomic(
        &out.join(name),
        &csv(
            &reader.echo_lines(),
            "g,p_hat,half_width,trials,bound",
            &rows,
        ),
    )
}

fn degenerate(
    reader: &mut ConfigReader,
    out: &Path,
    code: &CodeParams,
    ch: &ChannelParams,
    seed: u64,
    trials: u64,
) -> Result<(), CliError> {
    let cb = acquire_codebook(reader, code, ch, seed)?;
    let i1 = reader.usize_or("sim.message_index", 0)?;
    let i2 = reader.usize_or("sim.message_index2", 1)?;
    let coupling = reader.choice_or("sim.coupling", &["shared", "independent", "both"], "both")?;
    // With zero fading every territory collapses onto the same ball, so the
    // singleton target keeps membership constraints trivially satisfiable.
    let target = TargetSet::new(vec![i1], cb.m())?;

    let modes: &[(&str, Coupling)] = match coupling.as_str() {
        "shared" => &[("shared", Coupling::Shared)],
        "independent" => &[("independent", Coupling::Independent)],
        "both" => &[
            ("shared", Coupling::Shared),
            ("independent", Coupling::Independent),
        ],
        _ => unreachable!("choice validated by the reader"),
    };

    let mut rows = Vec::with_capacity(modes.len());
    for (label, mode) in modes {
        let (p1, p2) = degenerate_fading_experiment(&cb, i1, i2, &target, ch, trials, seed, *mode)?;
        rows.push(format!(
            "{label},{trials},{},{},{}",
            f(p1),
            f(p2),
            f(p1 + p2)
        ));
    }
    write_atomic(
        &out.join("simulate_degenerate.csv"),
        &csv(&reader.echo_lines(), "coupling,trials,p1,p2,sum", &rows),
    )
}

fn converse(
    reader: &mut ConfigReader,
    out: &Path,
    code: &CodeParams,
    ch: &ChannelParams,
    seed: u64,
    trials: u64,
) -> Result<(), CliError> {
    let distances = match reader.opt_f64_list("sim.distances")? {
        Some(d) => d,
        None => {
            // Default: six points from coinciding codewords out to where the
            // territories separate — capped by the inner-ball diameter.
            let tau = bounds::tau(code, ch);
            let r_inner = ch.a().sqrt() - bounds::theta(code, ch).sqrt();
            let d_max = (2.0 * (ch.sigma2() + tau).sqrt() / ch.gamma()).min(2.0 * r_inner);
            let step = d_max / 5.0;
            let mut d: Vec<f64> = (0..6).map(|i| step * i as f64).collect();
            d[5] = d_max;
            reader.record_f64_list("sim.distances", &d);
            d
        }
    };
    let points = converse_distance_experiment(code.n(), ch, code, &distances, trials, seed)?;
    let min_dist = bounds::converse_min_distance(code, ch);

    let rows: Vec<String> = points
        .iter()
        .map(|p| {
            format!(
                "{},{},{},{},{},{}",
                f(p.distance),
                f(p.p1),
                f(p.p2),
                f(p.error_sum),
                f(p.half_width_sum),
                f(min_dist)
            )
        })
        .collect();
    write_atomic(
        &out.join("simulate_converse.csv"),
        &csv(
            &reader.echo_lines(),
            "distance,p1,p2,error_sum,half_width_sum,min_dist_converse",
            &rows,
        ),
    )
}
