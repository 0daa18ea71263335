//! Tables of nontrivial zeta zeros and the zero statistics built on them.
//!
//! A table holds the ascending positive imaginary parts γ of zeros
//! ρ = 1/2 + iγ. The real part is not stored: every consumer in this
//! crate works on the premise that loaded zeros lie on the critical
//! line, which is numerically verified far beyond any height a table
//! here can reach. The table's `max_height` is the horizon of validity
//! and is carried into every report that uses the table.

use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::sieve::pairwise_sum;

pub const FIRST_ZERO: f64 = 14.134725141734693;

#[derive(Debug, Clone)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    max_height: f64,
}

/// Parse a plain-text table, one ascending positive γ per line.
pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let f = BufReader::new(std::fs::File::open(path)?);
    let mut gammas = Vec::new();
    for (i, line) in f.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let g: f64 = t.parse().map_err(|e| Error::Parse {
            line: i + 1,
            msg: format!("bad zero ordinate '{t}': {e}"),
        })?;
        if g <= 0.0 || !g.is_finite() {
            return Err(Error::Validation {
                line: Some(i + 1),
                msg: format!("ordinate must be positive and finite, got {g}"),
            });
        }
        if let Some(&prev) = gammas.last() {
            if g <= prev {
                return Err(Error::Validation {
                    line: Some(i + 1),
                    msg: format!("ordinates must be strictly ascending: {prev} then {g}"),
                });
            }
        }
        gammas.push(g);
    }
    ZeroTable::new(gammas)
}

impl ZeroTable {
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::Validation { line: None, msg: "empty zero table".into() });
        }
        if (gammas[0] - FIRST_ZERO).abs() > 1e-4 {
            return Err(Error::Validation {
                line: Some(1),
                msg: format!("table must start at the first zero 14.1347…, got {}", gammas[0]),
            });
        }
        let max_height = *gammas.last().unwrap();
        Ok(ZeroTable { gammas, max_height })
    }

    /// Degenerate table with no zeros (horizon 0); for limit cases only.
    pub fn empty() -> Self {
        ZeroTable { gammas: Vec::new(), max_height: 0.0 }
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn max_height(&self) -> f64 {
        self.max_height
    }

    /// N(T): number of zeros with 0 < γ ≤ T.
    pub fn count_below(&self, t: f64) -> Result<u64> {
        if t > self.max_height {
            return Err(Error::Horizon { t, horizon: self.max_height });
        }
        Ok(self.gammas.partition_point(|&g| g <= t) as u64)
    }

    /// N(t+1) − N(t−1): zeros with γ in (t−1, t+1].
    pub fn window_count(&self, t: f64) -> Result<u64> {
        if !(t > 50.0) {
            return Err(Error::domain(format!("window count requires t > 50, got {t}")));
        }
        if t + 1.0 > self.max_height {
            return Err(Error::Horizon { t: t + 1.0, horizon: self.max_height });
        }
        Ok(self.count_in(t - 1.0, t + 1.0))
    }

    /// Zeros with γ in the half-open window (a, b].
    pub fn count_in(&self, a: f64, b: f64) -> u64 {
        let hi = self.gammas.partition_point(|&g| g <= b);
        let lo = self.gammas.partition_point(|&g| g <= a);
        (hi - lo) as u64
    }

    /// Partial Σ_ρ 1/|ρ|² over loaded zeros, counting conjugates:
    /// 2·Σ_{γ>0} 1/(1/4 + γ²); plus a tail bound for the zeros above
    /// the horizon: the closed-form density integral
    /// 2·∫_H^∞ (log(t/2π)/2π)/t² dt widened by 6/H² to absorb the
    /// oscillating part of the zero count.
    pub fn inverse_square_sum(&self) -> InverseSquareSum {
        let terms: Vec<f64> = self.gammas.iter().map(|&g| 2.0 / (0.25 + g * g)).collect();
        let partial = pairwise_sum(&terms);
        let tail = if self.gammas.is_empty() {
            f64::INFINITY
        } else {
            let h = self.max_height;
            density_tail(h) + 6.0 / (h * h)
        };
        InverseSquareSum { partial, tail_bound: tail, horizon: self.max_height }
    }
}

/// 2·∫_H^∞ (log(t/2π)/2π)/t² dt = (log(H/2π) + 1)/(π·H): density
/// majorant for Σ_{|γ|>H} 1/γ² (both half-planes).
pub fn density_tail(h: f64) -> f64 {
    ((h / (2.0 * std::f64::consts::PI)).ln() + 1.0) / (std::f64::consts::PI * h)
}

/// Worst case of a grid scan: the tightest margin and where it occurred.
#[derive(Debug, Clone, Copy)]
pub struct ScanOutcome {
    pub holds: bool,
    pub worst_margin: f64,
    pub worst_t: f64,
    pub points: u64,
}

impl ZeroTable {
    /// N(T) < T·log T/(2π) on the integer grid T ∈ [20, horizon].
    pub fn scan_count_bound(&self) -> ScanOutcome {
        let mut out =
            ScanOutcome { holds: true, worst_margin: f64::INFINITY, worst_t: 0.0, points: 0 };
        let mut t = 20.0;
        while t <= self.max_height {
            let n = self.gammas.partition_point(|&g| g <= t) as f64;
            let bound = t * t.ln() / (2.0 * std::f64::consts::PI);
            let margin = bound - n;
            if margin < out.worst_margin {
                out.worst_margin = margin;
                out.worst_t = t;
            }
            if margin <= 0.0 {
                out.holds = false;
            }
            out.points += 1;
            t += 1.0;
        }
        out
    }

    /// N(t+1.01) − N(t−1) < log t on the grid t ∈ [50, t_hi] step 0.01
    /// (the discretization that makes the continuous window bound
    /// follow from finitely many checks).
    pub fn scan_window_bound(&self, t_hi: f64) -> ScanOutcome {
        let hi = t_hi.min(self.max_height - 1.01);
        let mut out =
            ScanOutcome { holds: true, worst_margin: f64::INFINITY, worst_t: 0.0, points: 0 };
        let mut i = 0u64;
        loop {
            let t = 50.0 + i as f64 * 0.01;
            if t > hi {
                break;
            }
            let n_hi = self.gammas.partition_point(|&g| g <= t + 1.01) as f64;
            let n_lo = self.gammas.partition_point(|&g| g <= t - 1.0) as f64;
            let margin = t.ln() - (n_hi - n_lo);
            if margin < out.worst_margin {
                out.worst_margin = margin;
                out.worst_t = t;
            }
            if margin <= 0.0 {
                out.holds = false;
            }
            out.points += 1;
            i += 1;
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct InverseSquareSum {
    pub partial: f64,
    pub tail_bound: f64,
    pub horizon: f64,
}

impl InverseSquareSum {
    /// Euler's γ + 2 − log 4π ≈ 0.0461914, the exact value of
    /// Σ_ρ 1/|ρ|² over all nontrivial zeros, conjugates included.
    pub const TARGET: f64 = 0.046191417932242164;

    pub fn bracket(&self) -> (f64, f64) {
        (self.partial, self.partial + self.tail_bound)
    }

    pub fn contains_target(&self) -> bool {
        let (lo, hi) = self.bracket();
        lo <= Self::TARGET && Self::TARGET <= hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(name: &str, contents: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("explicit_pnt_zeros_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn load_first_three() {
        let p = write_tmp("three.txt", "14.134725142\n21.022039639\n25.010857580\n");
        let t = load_zeros(p).unwrap();
        assert_eq!(t.len(), 3);
        assert!((t.gammas()[0] - 14.134725).abs() < 1e-6);
        assert!((t.max_height() - 25.010857580).abs() < 1e-9);
    }

    #[test]
    fn single_line() {
        let p = write_tmp("one.txt", "14.134725142");
        let t = load_zeros(p).unwrap();
        assert!((t.max_height() - 14.13).abs() < 0.01);
    }

    #[test]
    fn rejects_descending() {
        let p = write_tmp("desc.txt", "14.134725142\n14.0\n");
        assert!(matches!(load_zeros(p), Err(Error::Validation { line: Some(2), .. })));
    }

    #[test]
    fn rejects_empty_and_garbage() {
        let p = write_tmp("empty.txt", "");
        assert!(matches!(load_zeros(p), Err(Error::Validation { .. })));
        let p = write_tmp("garbage.txt", "14.134725142\nnot-a-number\n");
        assert!(matches!(load_zeros(p), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn count_below_small_table() {
        let t = ZeroTable::new(vec![14.134725142, 21.022039639, 25.010857580]).unwrap();
        assert_eq!(t.count_below(14.0).unwrap(), 0);
        assert_eq!(t.count_below(21.5).unwrap(), 2);
        assert!(matches!(t.count_below(26.0), Err(Error::Horizon { .. })));
    }

    #[test]
    fn window_count_preconditions() {
        let t =
            ZeroTable::new(vec![14.134725142, 52.970321478, 56.446247697]).unwrap();
        assert!(matches!(t.window_count(20.0), Err(Error::Domain(_))));
        assert_eq!(t.window_count(52.5).unwrap(), 1); // only 52.97 in (51.5, 53.5]
        assert_eq!(t.window_count(54.8).unwrap(), 0); // none in (53.8, 55.8]
        assert!(matches!(t.window_count(55.5), Err(Error::Horizon { .. })));
    }

    #[test]
    fn inverse_square_three_zeros() {
        let t = ZeroTable::new(vec![14.1347, 21.0220, 25.0109]).unwrap();
        let s = t.inverse_square_sum();
        let expect = 2.0
            * (1.0 / (0.25 + 14.1347f64.powi(2))
                + 1.0 / (0.25 + 21.0220f64.powi(2))
                + 1.0 / (0.25 + 25.0109f64.powi(2)));
        assert!((s.partial - expect).abs() < 1e-12);
        assert!((expect - 0.0177).abs() < 1e-4);
    }

    #[test]
    fn inverse_square_empty() {
        let t = ZeroTable::empty();
        assert_eq!(t.inverse_square_sum().partial, 0.0);
    }
}
