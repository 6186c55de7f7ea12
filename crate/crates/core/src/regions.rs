//! Advantage regions for depolarizing swap noise `p` and depolarizing
//! circuit noise `q` on two-qubit copies, and gate-count bounds for
//! circuits built from `n` IID depolarizing gates.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::io::format_plain;
use crate::vcp::mu0_depolarizing_closed_form;
use crate::{Error, Result};

/// Tolerance on region membership near the boundary curves.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Radicand below which the boundary switches to bisection.
const RADICAND_FLOOR: f64 = 1e-10;

/// Significant digits in emitted CSV tables.
const CSV_DIGITS: usize = 15;

/// `1 − √1185/79`, the largest `p` for which any `q` is advantageous.
pub fn p_critical() -> f64 {
    1.0 - 1185f64.sqrt() / 79.0
}

/// `64 + 79(p − 2)p`, which vanishes at [`p_critical`].
pub fn boundary_radicand(p: f64) -> f64 {
    64.0 + 79.0 * (p - 2.0) * p
}

/// Identity weight of the two-qubit depolarizing channel.
pub fn q0(q: f64) -> f64 {
    1.0 - 15.0 * q / 16.0
}

fn advantage_gap(p: f64, q: f64) -> Result<f64> {
    Ok(mu0_depolarizing_closed_form(p, q)? - q0(q))
}

fn bisect(p: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let lo_sign = advantage_gap(p, lo)? >= 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (advantage_gap(p, mid)? >= 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The curves `q_l(p) ≤ q_u(p)` between which `μ_0 ≥ q_0`. `q_u` may
/// exceed 1.
pub fn q_boundary(p: f64) -> Result<(f64, f64)> {
    let pc = p_critical();
    if !(0.0..=pc + BOUNDARY_TOL).contains(&p) {
        return Err(Error::domain(format!(
            "p = {p} outside the advantage range [0, {pc}]"
        )));
    }
    let apex = 8.0 / 15.0;
    let r = boundary_radicand(p);
    if r >= RADICAND_FLOOR {
        let s = r.sqrt() / (1.0 - p);
        return Ok(((8.0 - s) / 15.0, (8.0 + s) / 15.0));
    }
    let p = p.min(pc);
    if r <= 0.0 || advantage_gap(p, apex)? <= 0.0 {
        return Ok((apex, apex));
    }
    Ok((bisect(p, 0.0, apex)?, bisect(p, apex, 1.0)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint {
    pub p: f64,
    pub q: f64,
    pub mu0: f64,
    pub q0: f64,
    pub ratio: f64,
    pub advantageous: bool,
}

/// Evaluates `μ_0/q_0` at `(p, q)` and tests
/// `0 ≤ p ≤ p_c, q_l(p) ≤ q ≤ min(q_u(p), 1)`.
pub fn in_advantage_region(p: f64, q: f64) -> Result<RegionPoint> {
    let mu0 = mu0_depolarizing_closed_form(p, q)?;
    let q0 = q0(q);
    let advantageous = match q_boundary(p) {
        Ok((lo, hi)) => q >= lo - BOUNDARY_TOL && q <= hi.min(1.0) + BOUNDARY_TOL,
        Err(_) => false,
    };
    Ok(RegionPoint {
        p,
        q,
        mu0,
        q0,
        ratio: mu0 / q0,
        advantageous,
    })
}

/// `1 − (1 − q)^n`, the depolarizing parameter of `n` composed gates.
pub fn q_effective(q: f64, n: u64) -> f64 {
    if q >= 1.0 {
        return if n == 0 { 0.0 } else { 1.0 };
    }
    -(n as f64 * (-q).ln_1p()).exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IidBounds {
    pub p: f64,
    pub q: f64,
    pub n_min: u64,
    /// `None` when every `n ≥ n_min` stays inside the region.
    pub n_max: Option<u64>,
}

impl IidBounds {
    /// False when no gate count lands inside the region.
    pub fn is_feasible(&self) -> bool {
        self.n_max.is_none_or(|m| self.n_min <= m)
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.n_min && self.n_max.is_none_or(|m| n <= m)
    }
}

/// Range of gate counts `n` whose effective noise `q_effective(q, n)` lies
/// inside the advantage region at swap noise `p`.
pub fn iid_gate_bounds(p: f64, q: f64) -> Result<IidBounds> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("gate noise q = {q} must lie in (0, 1)")));
    }
    let (lo, hi) = q_boundary(p)?;
    let rate = (-q).ln_1p();

    let mut n_min = ((-lo).ln_1p() / rate).ceil().max(1.0) as u64;
    while n_min > 1 && q_effective(q, n_min - 1) >= lo {
        n_min -= 1;
    }
    while q_effective(q, n_min) < lo {
        n_min += 1;
    }

    let n_max = if hi >= 1.0 {
        None
    } else {
        let mut n = ((-hi).ln_1p() / rate).floor().max(0.0) as u64;
        while q_effective(q, n + 1) <= hi {
            n += 1;
        }
        while n > 0 && q_effective(q, n) > hi {
            n -= 1;
        }
        Some(n)
    };
    Ok(IidBounds { p, q, n_min, n_max })
}

/// Uniform `p_steps × q_steps` grid over `[0, 1]²`, `p`-major.
pub fn emit_region_grid(p_steps: usize, q_steps: usize) -> Result<Vec<RegionPoint>> {
    if p_steps < 2 || q_steps < 2 {
        return Err(Error::domain("grid needs at least two steps per axis"));
    }
    let rows: Result<Vec<Vec<RegionPoint>>> = (0..p_steps)
        .into_par_iter()
        .map(|i| {
            let p = i as f64 / (p_steps - 1) as f64;
            (0..q_steps)
                .map(|j| in_advantage_region(p, j as f64 / (q_steps - 1) as f64))
                .collect()
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// `q` values spaced evenly in `log10` between `lo` and `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) || count < 2 {
        return Err(Error::domain("log grid needs 0 < lo < hi and two points"));
    }
    let (a, b) = (lo.log10(), hi.log10());
    Ok((0..count)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64))
        .collect())
}

pub fn write_region_csv<W: Write>(points: &[RegionPoint], mut out: W) -> std::io::Result<()> {
    writeln!(out, "p,q,mu0,q0,ratio,advantageous")?;
    for r in points {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_plain(r.p, CSV_DIGITS),
            format_plain(r.q, CSV_DIGITS),
            format_plain(r.mu0, CSV_DIGITS),
            format_plain(r.q0, CSV_DIGITS),
            format_plain(r.ratio, CSV_DIGITS),
            r.advantageous
        )?;
    }
    Ok(())
}

pub fn write_iid_csv<W: Write>(rows: &[IidBounds], mut out: W) -> std::io::Result<()> {
    writeln!(out, "p,q,n_min,n_max")?;
    for b in rows {
        let n_max = b.n_max.map(|n| n.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{}",
            format_plain(b.p, CSV_DIGITS),
            format_plain(b.q, CSV_DIGITS),
            b.n_min,
            n_max
        )?;
    }
    Ok(())
}
