//! `build`: construct a sphere-packing codebook, write it with its
//! validation report.

use std::path::Path;

use dki_core::io::{codebook_to_string, format_f64 as f};
use dki_core::packing::{
    build_with_geometry, validate_codebook, DEFAULT_MAX_CODEWORDS, DEFAULT_SATURATION_T,
};
use dki_core::{bounds, ChannelParams, CodeParams, Codebook};

use crate::commands::{read_channel, read_code};
use crate::config::ConfigReader;
use crate::errors::CliError;
use crate::output::write_atomic;

/// Shared with `simulate`: construct the codebook a config describes.
/// build.theta forces the packing radius schedule; otherwise it follows from
/// (n, kappa, b) and the power budget. The effective value is always echoed.
pub fn build_from_config(
    reader: &mut ConfigReader,
    code: &CodeParams,
    ch: &ChannelParams,
    seed: u64,
) -> Result<Codebook, CliError> {
    let saturation_t = reader.u64_or("build.saturation_t", DEFAULT_SATURATION_T)?;
    let max_codewords = reader.usize_or("build.max_codewords", DEFAULT_MAX_CODEWORDS)?;
    let theta = match reader.opt_f64("build.theta")? {
        Some(t) => t,
        None => {
            let t = bounds::theta(code, ch);
            reader.record_f64("build.theta", t);
            t
        }
    };
    Ok(build_with_geometry(
        code.n(),
        ch.a(),
        theta,
        seed,
        saturation_t,
        max_codewords,
    )?)
}

pub fn run(reader: &mut ConfigReader, out: &Path, seed_flag: Option<u64>) -> Result<(), CliError> {
    let code = read_code(reader)?;
    let ch = read_channel(reader)?;
    let seed = reader.u64_flag_or("seed", seed_flag, 0)?;
    let cb = build_from_config(reader, &code, &ch, seed)?;
    let report = validate_codebook(&cb, &ch);

    let echo = reader.echo_lines();
    write_atomic(
        &out.join("codebook.txt"),
        &codebook_to_string(&cb, code.kappa(), code.b()),
    )?;

    let mut text = echo;
    text.push_str(&format!("m = {}\n", report.m));
    text.push_str(&format!("max_norm = {}\n", f(report.max_norm)));
    text.push_str(&format!("min_distance = {}\n", f(report.min_distance)));
    text.push_str(&format!("power_ok = {}\n", report.power_ok));
    text.push_str(&format!("distance_ok = {}\n", report.distance_ok));
    text.push_str(&format!("cap_ok = {}\n", report.cap_ok));
    text.push_str(&format!("geometry_ok = {}\n", report.geometry_ok));
    text.push_str(&format!("log2_cap = {}\n", f(report.log2_cap)));
    text.push_str(&format!(
        "density_margin_log2 = {}\n",
        f(report.density_margin_log2)
    ));
    text.push_str(&format!("pass = {}\n", report.pass));
    let validation_path = out.join("validation.txt");
    write_atomic(&validation_path, &text)?;

    if !report.pass {
        return Err(CliError::Validation(format!(
            "constructed codebook failed its checks; see {}",
            validation_path.display()
        )));
    }
    Ok(())
}
