//! The asymptotic `(delta, R)` landscape: q-ary entropy, the
//! Gilbert–Varshamov curve, the Singleton, Plotkin and TVZ lines, and the
//! crossover search between TVZ and GV.
//!
//! Everything is evaluated in `f64`; the logarithms leave no exact
//! alternative. Line intercepts are also available as exact rationals.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, isqrt};

/// Points strictly inside `(0, 1 - 1/q)` scanned by [`tvz_beats_gv`].
pub const CROSSOVER_GRID: usize = 20_000;

/// Width to which crossing points are refined, and the gap that counts as "beats".
pub const CROSSOVER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{what} = {value} outside its domain [{lo}, {hi}]")]
    DomainError {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("alphabet size q = {0} must be at least 2")]
    BadAlphabet(u64),
    #[error("TVZ line undefined for q = {0}: needs sqrt(q) - 1 > 1")]
    TVZUndefined(u64),
    #[error("q = {0} is not the square of a prime")]
    NotPrimeSquare(u64),
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
}

fn check_q(q: u64) -> Result<(), BoundsError> {
    if q < 2 {
        Err(BoundsError::BadAlphabet(q))
    } else {
        Ok(())
    }
}

fn log_q(q: u64, x: f64) -> f64 {
    x.ln() / (q as f64).ln()
}

/// `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)`, extended by
/// continuity: `H_q(0) = 0`, `H_q(1) = log_q(q-1)`.
pub fn entropy_q(q: u64, x: f64) -> Result<f64, BoundsError> {
    check_q(q)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(BoundsError::DomainError {
            what: "x",
            value: x,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let base = x * log_q(q, (q - 1) as f64);
    if x == 1.0 {
        return Ok(base);
    }
    Ok(base - x * log_q(q, x) - (1.0 - x) * log_q(q, 1.0 - x))
}

/// Largest relative distance at which the GV curve is defined.
pub fn gv_domain_end(q: u64) -> f64 {
    1.0 - 1.0 / q as f64
}

/// `1 - H_q(delta)` on `[0, 1 - 1/q]`, clamped to `[0, 1]`.
pub fn gv_rate(q: u64, delta: f64) -> Result<f64, BoundsError> {
    check_q(q)?;
    let hi = gv_domain_end(q);
    if !(0.0..=hi + 1e-12).contains(&delta) {
        return Err(BoundsError::DomainError {
            what: "delta",
            value: delta,
            lo: 0.0,
            hi,
        });
    }
    Ok((1.0 - entropy_q(q, delta.min(hi))?).clamp(0.0, 1.0))
}

/// Table-mode GV: 0 beyond `1 - 1/q`, flagged by the boolean.
pub fn gv_rate_or_zero(q: u64, delta: f64) -> (f64, bool) {
    match gv_rate(q, delta) {
        Ok(r) => (r, true),
        Err(_) => (0.0, false),
    }
}

pub fn singleton_line(delta: f64) -> f64 {
    (1.0 - delta).max(0.0)
}

pub fn plotkin_line(q: u64, delta: f64) -> f64 {
    (1.0 - 1.0 / q as f64 - delta).max(0.0)
}

/// `max(0, 1 - 1/(sqrt(q) - 1) - delta)`.
///
/// Only a theorem when `q` is the square of a prime (see [`tvz_is_proven`]);
/// other `q > 4` are evaluated with the real square root.
pub fn tvz_line(q: u64, delta: f64) -> Result<f64, BoundsError> {
    if q <= 4 {
        return Err(BoundsError::TVZUndefined(q));
    }
    let ihara = (q as f64).sqrt() - 1.0;
    Ok((1.0 - 1.0 / ihara - delta).max(0.0))
}

/// True when `q = p^2` for a prime `p`.
pub fn tvz_is_proven(q: u64) -> bool {
    let s = isqrt(q);
    s * s == q && is_prime(s)
}

/// Exact intercept `1 - 1/(sqrt(q) - 1)` of the TVZ line, for square `q > 4`.
pub fn tvz_intercept(q: u64) -> Result<Ratio<i64>, BoundsError> {
    let s = isqrt(q);
    if q <= 4 {
        return Err(BoundsError::TVZUndefined(q));
    }
    if s * s != q {
        return Err(BoundsError::NotPrimeSquare(q));
    }
    Ok(Ratio::new(s as i64 - 2, s as i64 - 1))
}

/// Exact intercept `1 - 1/q` of the Plotkin line.
pub fn plotkin_intercept(q: u64) -> Ratio<i64> {
    Ratio::new(q as i64 - 1, q as i64)
}

/// Outcome of comparing the TVZ line against the GV curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossover {
    pub q: u64,
    pub beats: bool,
    /// Outermost crossings `[delta_lo, delta_hi]`; `None` when TVZ never exceeds GV.
    pub interval: Option<[f64; 2]>,
    pub max_gap: f64,
    pub argmax_delta: f64,
}

fn tvz_minus_gv(q: u64, ihara_inv: f64, delta: f64) -> f64 {
    let gv = 1.0 - entropy_q(q, delta).expect("delta inside [0, 1]");
    (1.0 - ihara_inv - delta) - gv
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    while hi - lo > CROSSOVER_TOL {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Scans `(0, 1 - 1/q)` for values of `delta` where the TVZ line lies above GV.
pub fn tvz_beats_gv(q: u64) -> Result<Crossover, BoundsError> {
    if !tvz_is_proven(q) {
        return Err(BoundsError::NotPrimeSquare(q));
    }
    if q <= 4 {
        return Err(BoundsError::TVZUndefined(q));
    }
    let ihara_inv = 1.0 / ((isqrt(q) - 1) as f64);
    let end = gv_domain_end(q);
    let f = |d: f64| tvz_minus_gv(q, ihara_inv, d);

    let grid: Vec<f64> = (1..=CROSSOVER_GRID)
        .map(|i| end * i as f64 / (CROSSOVER_GRID + 1) as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&d| f(d)).collect();

    let (argmax, max_gap) =
        values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            });

    let crossings: Vec<f64> = (1..grid.len())
        .filter(|&i| (values[i - 1] > 0.0) != (values[i] > 0.0))
        .map(|i| bisect(f, grid[i - 1], grid[i]))
        .collect();

    let beats = max_gap > CROSSOVER_TOL;
    let interval = match (beats, crossings.first(), crossings.last()) {
        (true, Some(&lo), Some(&hi)) if crossings.len() >= 2 => Some([lo, hi]),
        _ => None,
    };
    Ok(Crossover {
        q,
        beats,
        interval,
        max_gap,
        argmax_delta: grid[argmax],
    })
}

/// One row of the bound table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPoint {
    pub delta: f64,
    #[serde(rename = "singleton")]
    pub r_singleton: f64,
    #[serde(rename = "plotkin")]
    pub r_plotkin: f64,
    #[serde(rename = "gv")]
    pub r_gv: f64,
    #[serde(rename = "tvz")]
    pub r_tvz: f64,
}

/// All four bounds at `samples` equally spaced points of `[0, 1]`.
///
/// GV is 0 beyond `1 - 1/q`; TVZ is 0 where it is undefined (`q <= 4`).
pub fn bound_table(q: u64, samples: usize) -> Result<Vec<BoundPoint>, BoundsError> {
    check_q(q)?;
    if samples < 2 {
        return Err(BoundsError::TooFewSamples(samples));
    }
    Ok((0..samples)
        .map(|i| {
            let delta = i as f64 / (samples - 1) as f64;
            BoundPoint {
                delta,
                r_singleton: singleton_line(delta),
                r_plotkin: plotkin_line(q, delta),
                r_gv: gv_rate_or_zero(q, delta).0,
                r_tvz: tvz_line(q, delta).unwrap_or(0.0),
            }
        })
        .collect())
}

/// Formats a float with 12 significant digits, dot decimal, no exponent.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{v:.11e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific notation has an exponent");
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

pub const BOUND_TABLE_HEADER: &str = "delta,singleton,plotkin,gv,tvz";

/// CSV with header `delta,singleton,plotkin,gv,tvz`.
pub fn bound_table_csv(rows: &[BoundPoint]) -> String {
    let mut out = String::from(BOUND_TABLE_HEADER);
    out.push('\n');
    for r in rows {
        let cells = [r.delta, r.r_singleton, r.r_plotkin, r.r_gv, r.r_tvz].map(format_sig12);
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
