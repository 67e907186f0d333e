//! Line-oriented text format for codebook files.
//!
//! Header lines `n=`, `A=`, `kappa=`, `b=`, `theta=`, `seed=`, `M=` in that
//! order, then one codeword per line as space-separated decimals with 17
//! significant digits (round-trip exact for 64-bit floats). `kappa` and `b`
//! are construction metadata carried alongside the geometry; `A` and `theta`
//! are derived from it (A = (R_inner + r0)², θ = r0²).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::packing::Codebook;

/// A codebook plus the construction exponents stored in its file header.
#[derive(Debug, Clone, PartialEq)]
pub struct CodebookFile {
    pub codebook: Codebook,
    pub kappa: f64,
    pub b: f64,
}

/// 17-significant-digit scientific form; parses back to the identical f64.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render a codebook in the text format.
pub fn codebook_to_string(cb: &Codebook, kappa: f64, b: f64) -> String {
    let mut out = String::new();
    let a = cb.sqrt_a() * cb.sqrt_a();
    let theta = cb.r0 * cb.r0;
    writeln!(out, "n={}", cb.n).unwrap();
    writeln!(out, "A={}", format_f64(a)).unwrap();
    writeln!(out, "kappa={}", format_f64(kappa)).unwrap();
    writeln!(out, "b={}", format_f64(b)).unwrap();
    writeln!(out, "theta={}", format_f64(theta)).unwrap();
    writeln!(out, "seed={}", cb.seed).unwrap();
    writeln!(out, "M={}", cb.m()).unwrap();
    for c in &cb.codewords {
        let line: Vec<String> = c.iter().map(|&x| format_f64(x)).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn write_codebook(path: &Path, cb: &Codebook, kappa: f64, b: f64) -> Result<()> {
    fs::write(path, codebook_to_string(cb, kappa, b))?;
    Ok(())
}

fn header_value<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::MalformedFile(format!("missing header line `{key}=`")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::MalformedFile(format!("expected `{key}=...`, found `{line}`")))
}

fn parse_num<T: std::str::FromStr>(raw: &str, key: &str) -> Result<T> {
    raw.trim()
        .parse()
        .map_err(|_| Error::MalformedFile(format!("cannot parse {key} from `{raw}`")))
}

/// Parse the text format back into a codebook plus its header exponents.
///
/// `saturation_rejections` is not part of the format and reads back as 0.
pub fn codebook_from_str(text: &str) -> Result<CodebookFile> {
    let mut lines = text.lines();
    let n: usize = parse_num(header_value(lines.next(), "n")?, "n")?;
    let a: f64 = parse_num(header_value(lines.next(), "A")?, "A")?;
    let kappa: f64 = parse_num(header_value(lines.next(), "kappa")?, "kappa")?;
    let b: f64 = parse_num(header_value(lines.next(), "b")?, "b")?;
    let theta: f64 = parse_num(header_value(lines.next(), "theta")?, "theta")?;
    let seed: u64 = parse_num(header_value(lines.next(), "seed")?, "seed")?;
    let m: usize = parse_num(header_value(lines.next(), "M")?, "M")?;

    if n == 0 {
        return Err(Error::MalformedFile("n must be positive".into()));
    }
    if !(theta > 0.0 && a >= theta) {
        return Err(Error::MalformedFile(format!(
            "need 0 < theta <= A, got theta={theta}, A={a}"
        )));
    }

    let mut codewords = Vec::with_capacity(m);
    for (row, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entries: Result<Vec<f64>> = line
            .split_whitespace()
            .map(|tok| parse_num(tok, "codeword entry"))
            .collect();
        let entries = entries?;
        if entries.len() != n {
            return Err(Error::MalformedFile(format!(
                "codeword {row} has {} entries, expected {n}",
                entries.len()
            )));
        }
        codewords.push(entries);
    }
    if codewords.len() != m {
        return Err(Error::MalformedFile(format!(
            "header says M={m} but file has {} codewords",
            codewords.len()
        )));
    }

    Ok(CodebookFile {
        codebook: Codebook {
            n,
            codewords,
            r0: theta.sqrt(),
            r_inner: a.sqrt() - theta.sqrt(),
            seed,
            saturation_rejections: 0,
        },
        kappa,
        b,
    })
}

pub fn read_codebook(path: &Path) -> Result<CodebookFile> {
    codebook_from_str(&fs::read_to_string(path)?)
}
