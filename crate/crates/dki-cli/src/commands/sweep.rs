//! `sweep`: codebook-size scaling across block lengths, against the
//! converse ceiling.

use std::path::Path;

use dki_core::io::format_f64 as f;
use dki_core::montecarlo::scaling_sweep;
use dki_core::packing::DEFAULT_SATURATION_T;

use crate::commands::read_channel;
use crate::config::ConfigReader;
use crate::errors::CliError;
use crate::output::{csv, write_atomic};

const HEADER: &str = "n,kappa,b,m,log2_m,ratio,converse_ratio,within_converse";

pub fn run(reader: &mut ConfigReader, out: &Path, seed_flag: Option<u64>) -> Result<(), CliError> {
    let n_list = reader.require_usize_list("sweep.n_list")?;
    let kappa_list = reader.require_f64_list("sweep.kappa_list")?;
    let b = reader.require_f64("code.b")?;
    let ch = read_channel(reader)?;
    let seed = reader.u64_flag_or("seed", seed_flag, 0)?;
    let saturation_t = reader.u64_or("build.saturation_t", DEFAULT_SATURATION_T)?;

    let mut rows = Vec::with_capacity(n_list.len() * kappa_list.len());
    for &kappa in &kappa_list {
        for row in scaling_sweep(&n_list, kappa, b, &ch, seed, saturation_t)? {
            rows.push(format!(
                "{},{},{},{},{},{},{},{}",
                row.n,
                f(row.kappa),
                f(row.b),
                row.m,
                f(row.log2_m),
                f(row.ratio),
                f(row.converse_ratio),
                row.within_converse
            ));
        }
    }
    write_atomic(
        &out.join("sweep.csv"),
        &csv(&reader.echo_lines(), HEADER, &rows),
    )
}
