//! `bounds`: closed-form reports over a grid of block lengths and exponents.

use std::path::Path;

use dki_core::io::format_f64 as f;
use dki_core::{BoundReport, CodeParams};

use crate::commands::read_channel;
use crate::config::ConfigReader;
use crate::errors::CliError;
use crate::output::{csv, write_atomic};

const HEADER: &str = "n,kappa,b,k,theta,tau,rate_lower,rate_upper,log2_m_lower,\
log2_m_upper,min_dist_converse,type1_bound,type2_zeta0,type2_zeta1,type2_bound";

pub fn run(reader: &mut ConfigReader, out: &Path) -> Result<(), CliError> {
    let n_list = reader.require_usize_list("bounds.n_list")?;
    let kappa_list = reader.require_f64_list("bounds.kappa_list")?;
    let b = reader.require_f64("code.b")?;
    let ch = read_channel(reader)?;

    let mut rows = Vec::with_capacity(n_list.len() * kappa_list.len());
    for &n in &n_list {
        for &kappa in &kappa_list {
            let code = CodeParams::new(n, kappa, b)?;
            let r = BoundReport::compute(&code, &ch)?;
            rows.push(format!(
                "{n},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                f(kappa),
                f(b),
                r.k,
                f(r.theta_n),
                f(r.tau_n),
                f(r.rate_lower),
                f(r.rate_upper),
                f(r.log2_m_lower),
                f(r.log2_m_upper),
                f(r.min_dist_converse),
                f(r.type1_bound),
                f(r.type2_bound.zeta0),
                f(r.type2_bound.zeta1),
                f(r.type2_bound.composite),
            ));
        }
    }

    write_atomic(
        &out.join("bounds.csv"),
        &csv(&reader.echo_lines(), HEADER, &rows),
    )
}
