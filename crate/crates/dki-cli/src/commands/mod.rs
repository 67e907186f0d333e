//! Subcommand implementations and the config fragments they share.

pub mod bounds;
pub mod build;
pub mod simulate;
pub mod sweep;

use dki_core::{ChannelParams, CodeParams};

use crate::config::ConfigReader;
use crate::errors::CliError;

/// channel.a, channel.sigma2, channel.gamma required; channel.g_max defaults
/// to channel.gamma (a constant-fading support).
pub fn read_channel(reader: &mut ConfigReader) -> Result<ChannelParams, CliError> {
    let a = reader.require_f64("channel.a")?;
    let sigma2 = reader.require_f64("channel.sigma2")?;
    let gamma = reader.require_f64("channel.gamma")?;
    let g_max = reader.f64_or("channel.g_max", gamma)?;
    Ok(ChannelParams::new(a, sigma2, gamma, g_max)?)
}

/// code.n and code.b required; code.kappa defaults to 0.
pub fn read_code(reader: &mut ConfigReader) -> Result<CodeParams, CliError> {
    let n = reader.require_usize("code.n")?;
    let kappa = reader.f64_or("code.kappa", 0.0)?;
    let b = reader.require_f64("code.b")?;
    Ok(CodeParams::new(n, kappa, b)?)
}
