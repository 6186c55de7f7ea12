//! JSON file formats with every real written in plain decimal notation.
//!
//! | format              | fields                                                  |
//! |---------------------|---------------------------------------------------------|
//! | `pauli-channel/v1`  | `num_qubits`, `probs`                                   |
//! | `swap-noise/v1`     | `order`, `per_copy_qubits`, `kind` + kind-specific data |
//! | `observable/v1`     | `num_qubits`, `eigenvalues`                             |
//! | `dist/v1`           | `outcomes` as `[value, prob]` pairs                     |
//!
//! Writers are deterministic and print 17 significant digits, so
//! write → read → write reproduces the original bytes.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::cvar::DiscreteDistribution;
use crate::densesim::DiagonalObservable;
use crate::pauli::PauliChannel;
use crate::vcp::{SwapNoise, SwapNoiseSpec};
use crate::{Error, Result};

pub const CHANNEL_FORMAT: &str = "pauli-channel/v1";
pub const SWAP_FORMAT: &str = "swap-noise/v1";
pub const OBSERVABLE_FORMAT: &str = "observable/v1";
pub const DIST_FORMAT: &str = "dist/v1";

/// Digits needed for an exact `f64` round trip.
pub const ROUNDTRIP_DIGITS: usize = 17;

/// `x` in positional notation with `sig` significant digits.
pub fn format_plain(x: f64, sig: usize) -> String {
    assert!(x.is_finite(), "cannot format {x} as a plain decimal");
    let sig = sig.max(1) as i32;
    let exp = if x == 0.0 { 0 } else { x.abs().log10().floor() as i32 };
    let decimals = (sig - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

fn real(x: f64) -> String {
    format_plain(x, ROUNDTRIP_DIGITS)
}

fn real_array(out: &mut String, indent: &str, xs: &[f64]) {
    out.push('[');
    for (i, x) in xs.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(out, "{indent}  {}", real(*x));
    }
    if !xs.is_empty() {
        let _ = write!(out, "\n{indent}");
    }
    out.push(']');
}

fn header(format: &str) -> String {
    format!("{{\n  \"format\": \"{format}\"")
}

fn check_format(found: &str, expected: &'static str) -> Result<()> {
    if found != expected {
        return Err(Error::format(expected, format!("format tag is {found:?}")));
    }
    Ok(())
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str, format: &'static str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::format(format, e.to_string()))
}

fn reject<T>(format: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ Error::Format { .. } => e,
        other => Error::format(format, other.to_string()),
    })
}

pub fn write_channel(c: &PauliChannel) -> String {
    let mut s = header(CHANNEL_FORMAT);
    let _ = write!(s, ",\n  \"num_qubits\": {},\n  \"probs\": ", c.num_qubits());
    real_array(&mut s, "  ", c.probs());
    s.push_str("\n}\n");
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFile {
    format: String,
    num_qubits: usize,
    probs: Vec<f64>,
}

pub fn read_channel(text: &str) -> Result<PauliChannel> {
    let f: ChannelFile = parse(text, CHANNEL_FORMAT)?;
    check_format(&f.format, CHANNEL_FORMAT)?;
    reject(CHANNEL_FORMAT, PauliChannel::new(f.num_qubits, f.probs))
}

pub fn write_swap_noise(spec: &SwapNoiseSpec) -> String {
    let mut s = header(SWAP_FORMAT);
    let _ = write!(
        s,
        ",\n  \"order\": {},\n  \"per_copy_qubits\": {}",
        spec.order(),
        spec.per_copy_qubits()
    );
    match spec.noise() {
        SwapNoise::Dense { channel } => {
            s.push_str(",\n  \"kind\": \"dense\",\n  \"probs\": ");
            real_array(&mut s, "  ", channel.probs());
        }
        SwapNoise::Depolarizing { param } => {
            let _ = write!(s, ",\n  \"kind\": \"depolarizing\",\n  \"param\": {}", real(*param));
        }
        SwapNoise::Product { factors } => {
            s.push_str(",\n  \"kind\": \"product\",\n  \"factors\": [");
            for (i, f) in factors.iter().enumerate() {
                s.push_str(if i == 0 { "\n" } else { ",\n" });
                let _ = write!(s, "    {{\n      \"num_qubits\": {},\n      \"probs\": ", f.num_qubits());
                real_array(&mut s, "      ", f.probs());
                s.push_str("\n    }");
            }
            s.push_str("\n  ]");
        }
    }
    s.push_str("\n}\n");
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorFile {
    num_qubits: usize,
    probs: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SwapKindFile {
    Dense { probs: Vec<f64> },
    Depolarizing { param: f64 },
    Product { factors: Vec<FactorFile> },
}

#[derive(Deserialize)]
struct SwapFile {
    format: String,
    order: usize,
    per_copy_qubits: usize,
    #[serde(flatten)]
    kind: SwapKindFile,
}

pub fn read_swap_noise(text: &str) -> Result<SwapNoiseSpec> {
    let f: SwapFile = parse(text, SWAP_FORMAT)?;
    check_format(&f.format, SWAP_FORMAT)?;
    let build = || -> Result<SwapNoiseSpec> {
        let total = f.order * f.per_copy_qubits;
        match f.kind {
            SwapKindFile::Dense { probs } => {
                SwapNoiseSpec::dense(f.order, f.per_copy_qubits, PauliChannel::new(total, probs)?)
            }
            SwapKindFile::Depolarizing { param } => {
                SwapNoiseSpec::depolarizing(f.order, f.per_copy_qubits, param)
            }
            SwapKindFile::Product { factors } => {
                let factors = factors
                    .into_iter()
                    .map(|x| PauliChannel::new(x.num_qubits, x.probs))
                    .collect::<Result<Vec<_>>>()?;
                SwapNoiseSpec::product(f.order, f.per_copy_qubits, factors)
            }
        }
    };
    reject(SWAP_FORMAT, build())
}

pub fn write_observable(o: &DiagonalObservable) -> String {
    let mut s = header(OBSERVABLE_FORMAT);
    let _ = write!(s, ",\n  \"num_qubits\": {},\n  \"eigenvalues\": ", o.num_qubits());
    real_array(&mut s, "  ", o.eigenvalues());
    s.push_str("\n}\n");
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ObservableFile {
    format: String,
    num_qubits: usize,
    eigenvalues: Vec<f64>,
}

pub fn read_observable(text: &str) -> Result<DiagonalObservable> {
    let f: ObservableFile = parse(text, OBSERVABLE_FORMAT)?;
    check_format(&f.format, OBSERVABLE_FORMAT)?;
    reject(OBSERVABLE_FORMAT, DiagonalObservable::new(f.num_qubits, f.eigenvalues))
}

pub fn write_distribution(d: &DiscreteDistribution) -> String {
    let mut s = header(DIST_FORMAT);
    s.push_str(",\n  \"outcomes\": [");
    for (i, (v, p)) in d.outcomes().iter().enumerate() {
        s.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(s, "    [{}, {}]", real(*v), real(*p));
    }
    s.push_str("\n  ]\n}\n");
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistFile {
    format: String,
    outcomes: Vec<(f64, f64)>,
}

pub fn read_distribution(text: &str) -> Result<DiscreteDistribution> {
    let f: DistFile = parse(text, DIST_FORMAT)?;
    check_format(&f.format, DIST_FORMAT)?;
    reject(DIST_FORMAT, DiscreteDistribution::new(f.outcomes))
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
