//! Exact and table-driven verification of the prime-counting
//! inequality π²(x) < (ex/log x)·π(x/e).
//!
//! f(x) = π²(x) − (ex/log x)·π(x/e) is strictly decreasing between
//! consecutive jump points (primes of x, and x = ⌈e·p⌉ where π(x/e)
//! steps), which the exhaustive scan exploits. The stepping verifier
//! brackets π through a checkpoint table and advances by the quadratic
//! step bound; indeterminate brackets trigger local exact sieving.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sieve::checkpoints::CheckpointTable;
use crate::sieve::{PrimeTable, WindowRank};

/// e split in double-double precision; m·e comparisons stay exact to
/// ~1e-20, far below the closest approach of integer multiples of e to
/// integers in the supported range.
const E_HI: f64 = std::f64::consts::E;
const E_LO: f64 = 1.4456468917292502e-16;

/// floor(x/e) with a near-tie flag (|x/e − round(x/e)| < 1e-6).
pub fn floor_div_e(x: f64) -> (u64, bool) {
    debug_assert!(x >= 0.0 && x < 9e15);
    let mut m = (x / E_HI).floor();
    // refine with a compensated residual r = x − m·e
    let resid = |m: f64| {
        let p = m * E_HI;
        let err = m.mul_add(E_HI, -p);
        ((x - p) - err) - m * E_LO
    };
    let mut r = resid(m);
    while r < 0.0 {
        m -= 1.0;
        r = resid(m);
    }
    while r >= E_HI + m.max(1.0) * E_LO {
        // r >= e means the candidate floor is one too low; nudge up
        m += 1.0;
        r = resid(m);
    }
    let frac = r / std::f64::consts::E;
    let tie = frac < 1e-6 || frac > 1.0 - 1e-6;
    (m as u64, tie)
}

/// Source of exact π values over some covered range.
pub trait PiSource {
    fn pi(&self, n: u64) -> Result<u64>;
}

impl PiSource for PrimeTable {
    fn pi(&self, n: u64) -> Result<u64> {
        if self.range_lo > 2 || n > self.range_hi {
            return Err(Error::Coverage { needed: n, lo: self.range_lo, hi: self.range_hi });
        }
        Ok(self.count_below(n))
    }
}

impl PiSource for WindowRank {
    fn pi(&self, n: u64) -> Result<u64> {
        if n < self.lo() || n > self.hi() {
            return Err(Error::Coverage { needed: n, lo: self.lo(), hi: self.hi() });
        }
        Ok(WindowRank::pi(self, n))
    }
}

/// π source over a scan window: one rank for x, one for x/e.
pub struct DualWindow {
    pub x_rank: WindowRank,
    pub e_rank: WindowRank,
}

impl PiSource for DualWindow {
    fn pi(&self, n: u64) -> Result<u64> {
        if n >= self.x_rank.lo() && n <= self.x_rank.hi() {
            return Ok(self.x_rank.pi(n));
        }
        if n >= self.e_rank.lo() && n <= self.e_rank.hi() {
            return Ok(self.e_rank.pi(n));
        }
        Err(Error::Coverage { needed: n, lo: self.e_rank.lo(), hi: self.x_rank.hi() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Exactness {
    Exact,
    TableBracketed,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RamanujanEval {
    pub x: f64,
    pub pi_x: (u64, u64),
    pub pi_x_over_e: (u64, u64),
    pub f_value: (f64, f64),
    pub exactness: Exactness,
}

impl RamanujanEval {
    pub fn is_counterexample(&self) -> Option<bool> {
        if self.f_value.0 >= 0.0 {
            Some(true)
        } else if self.f_value.1 < 0.0 {
            Some(false)
        } else {
            None // straddles zero: indeterminate
        }
    }

    pub fn csv_header() -> &'static str {
        "x,f_lo,f_hi,mode"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            crate::report::fmt_sig(self.x),
            crate::report::fmt_sig(self.f_value.0),
            crate::report::fmt_sig(self.f_value.1),
            match self.exactness {
                Exactness::Exact => "exact",
                Exactness::TableBracketed => "bracketed",
            }
        )
    }
}

/// π² in integer arithmetic, difference in double precision
/// (documented ≤ 1e-6 relative at the 4e10 scale).
fn f_from_counts(x: f64, pi_x: u64, pi_xe: u64) -> f64 {
    let sq = pi_x as u128 * pi_x as u128;
    let coef = std::f64::consts::E * x / x.ln();
    sq as f64 - coef * pi_xe as f64
}

/// Exact f(x) from a π source covering x and x/e. Near-integer x/e is
/// re-checked at both neighbouring integers; the interval reflects it.
pub fn f_exact(x: f64, pi: &impl PiSource) -> Result<RamanujanEval> {
    if !(x >= std::f64::consts::E) {
        return Err(Error::domain(format!("need x >= e, got {x}")));
    }
    let xf = x.floor() as u64;
    let px = pi.pi(xf)?;
    let (m, tie) = floor_div_e(x);
    let (pe_lo, pe_hi) = if tie {
        let a = pi.pi(m)?;
        let b = pi.pi(m + 1)?;
        (a.min(b), a.max(b))
    } else {
        let v = pi.pi(m)?;
        (v, v)
    };
    let f_lo = f_from_counts(x, px, pe_hi);
    let f_hi = f_from_counts(x, px, pe_lo);
    Ok(RamanujanEval {
        x,
        pi_x: (px, px),
        pi_x_over_e: (pe_lo, pe_hi),
        f_value: (f_lo, f_hi),
        exactness: Exactness::Exact,
    })
}

/// Table-bracketed f(x) from checkpoint intervals.
pub fn f_bracketed(x: f64, table: &CheckpointTable) -> Result<RamanujanEval> {
    if !(x >= std::f64::consts::E) {
        return Err(Error::domain(format!("need x >= e, got {x}")));
    }
    let (px_lo, px_hi) = table.pi_interval(x.floor() as u64)?;
    let (m, tie) = floor_div_e(x);
    let (a_lo, a_hi) = table.pi_interval(m)?;
    let (pe_lo, pe_hi) = if tie {
        let (b_lo, b_hi) = table.pi_interval(m + 1)?;
        (a_lo.min(b_lo), a_hi.max(b_hi))
    } else {
        (a_lo, a_hi)
    };
    let f_lo = f_from_counts(x, px_lo, pe_hi);
    let f_hi = f_from_counts(x, px_hi, pe_lo);
    Ok(RamanujanEval {
        x,
        pi_x: (px_lo, px_hi),
        pi_x_over_e: (pe_lo, pe_hi),
        f_value: (f_lo, f_hi),
        exactness: Exactness::TableBracketed,
    })
}

/// Step width ε = √(π²(x₀) − f(x₀)) − π(x₀) from the conservative
/// (upper) interval ends; f(x) < 0 is then certified on [x₀, x₀+ε].
/// Evaluated in the cancellation-free form −f/(√(π² − f) + π).
pub fn step_epsilon(eval: &RamanujanEval) -> Result<f64> {
    let f_hi = eval.f_value.1;
    if f_hi >= 0.0 {
        return Err(Error::CannotStep { f_hi });
    }
    let p = eval.pi_x.1 as f64;
    Ok(-f_hi / ((p * p - f_hi).sqrt() + p))
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub lo: f64,
    pub hi: f64,
    pub certified: bool,
    pub steps: u64,
    pub refinements: u64,
    pub first_indeterminate: Option<(f64, f64, f64)>,
    /// every 100000th step: (x, ε) for midpoint re-checks
    pub sampled: Vec<(f64, f64)>,
}

/// Certify f(x) < 0 on [lo, hi] by checkpoint bracketing plus the
/// quadratic step. When a bracket straddles zero (or the step stalls)
/// and `refine` is true, π is re-computed exactly by sieving from the
/// nearest checkpoint; otherwise the report carries the first
/// indeterminate x.
pub fn verify_range_stepping(
    lo: f64,
    hi: f64,
    table: &CheckpointTable,
    refine: bool,
) -> Result<StepReport> {
    if lo > hi {
        return Err(Error::domain(format!("need lo <= hi, got [{lo}, {hi}]")));
    }
    let (m0, _) = floor_div_e(lo);
    if !table.covers(m0) || !table.covers(hi.floor() as u64) {
        return Err(Error::Coverage {
            needed: if table.covers(m0) { hi.floor() as u64 } else { m0 },
            lo: table.x_min(),
            hi: table.x_max(),
        });
    }
    let mut report = StepReport {
        lo,
        hi,
        certified: false,
        steps: 0,
        refinements: 0,
        first_indeterminate: None,
        sampled: Vec::new(),
    };
    if lo == hi {
        report.certified = true;
        return Ok(report);
    }
    let mut x = lo;
    while x < hi {
        let mut ev = f_bracketed(x, table)?;
        let mut eps = match step_epsilon(&ev) {
            Ok(e) if e >= 1e-3 => e,
            _ => {
                if refine {
                    report.refinements += 1;
                    ev = refine_exact(x, table)?;
                    match step_epsilon(&ev) {
                        Ok(e) => e,
                        Err(_) => {
                            report.first_indeterminate = Some((x, ev.f_value.0, ev.f_value.1));
                            return Ok(report);
                        }
                    }
                } else {
                    report.first_indeterminate = Some((x, ev.f_value.0, ev.f_value.1));
                    return Ok(report);
                }
            }
        };
        if eps < 1e-3 {
            report.first_indeterminate = Some((x, ev.f_value.0, ev.f_value.1));
            return Ok(report);
        }
        // stay inside table coverage when stepping past hi
        eps = eps.min(hi - x + 1.0);
        report.steps += 1;
        if report.steps % 100_000 == 0 {
            report.sampled.push((x, eps));
        }
        x += eps;
    }
    report.certified = true;
    Ok(report)
}

/// Exact π at x and x/e by sieving the short gap from the nearest
/// checkpoint at or below each point.
pub fn refine_exact(x: f64, table: &CheckpointTable) -> Result<RamanujanEval> {
    let exact_pi = |n: u64| -> Result<u64> {
        let (cx, cpi) = table.floor_entry(n)?;
        if cx == n {
            return Ok(cpi);
        }
        let rank = WindowRank::build(cx + 1, n, cpi)?;
        Ok(rank.pi(n))
    };
    let xf = x.floor() as u64;
    let px = exact_pi(xf)?;
    let (m, tie) = floor_div_e(x);
    let (pe_lo, pe_hi) = if tie {
        let a = exact_pi(m)?;
        let b = exact_pi(m + 1)?;
        (a.min(b), a.max(b))
    } else {
        let v = exact_pi(m)?;
        (v, v)
    };
    Ok(RamanujanEval {
        x,
        pi_x: (px, px),
        pi_x_over_e: (pe_lo, pe_hi),
        f_value: (f_from_counts(x, px, pe_hi), f_from_counts(x, px, pe_lo)),
        exactness: Exactness::Exact,
    })
}

/// All integer counterexamples (f(x) ≥ 0) in [lo, hi], by evaluating f
/// only at jump points and binary-searching the zero crossing inside
/// each decreasing stretch. Stretches are processed in parallel and
/// merged in order.
pub fn counterexample_scan(lo: u64, hi: u64, win: &DualWindow) -> Result<Vec<u64>> {
    use rayon::prelude::*;
    if lo < 3 || lo > hi {
        return Err(Error::domain(format!("need 3 <= lo <= hi, got [{lo}, {hi}]")));
    }
    // jump points: primes in [lo, hi], and ⌈e·p⌉ for primes p near
    // [lo/e, hi/e]; both streams ascend, merge directly
    let mut xs = win.x_rank.primes_in(lo, hi).peekable();
    let (e_lo, _) = floor_div_e(lo as f64);
    let (e_hi, _) = floor_div_e(hi as f64);
    let mut es = win
        .e_rank
        .primes_in(e_lo.saturating_sub(1), e_hi + 1)
        .map(|p| {
            // smallest integer x with x/e >= p, i.e. ceil(e·p)
            let candidate = (E_HI * p as f64).ceil() as u64;
            (candidate - 2..=candidate + 2)
                .find(|&x| floor_div_e(x as f64).0 >= p)
                .expect("ceil(e*p) within +-2 of float estimate")
        })
        .filter(|&x| x >= lo && x <= hi)
        .peekable();
    let mut jumps: Vec<u64> = Vec::new();
    jumps.push(lo);
    loop {
        let take_x = match (xs.peek(), es.peek()) {
            (Some(&a), Some(&b)) => a <= b,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        let v = if take_x { xs.next().unwrap() } else { es.next().unwrap() };
        if *jumps.last().unwrap() != v {
            jumps.push(v);
        }
    }

    let f_at = |x: u64| -> f64 {
        // the tie-widened interval is a single value except at ties,
        // which cannot straddle zero in practice; use the upper end
        f_exact(x as f64, win).expect("window covers scan range").f_value.1
    };
    let chunk = 1usize << 14;
    let nchunks = jumps.len().div_ceil(chunk);
    let per_chunk: Vec<Vec<u64>> = (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let s = ci * chunk;
            let e = (s + chunk).min(jumps.len());
            let mut hits = Vec::new();
            for i in s..e {
                let j = jumps[i];
                let next = jumps.get(i + 1).copied().unwrap_or(hi + 1).min(hi + 1);
                if f_at(j) < 0.0 {
                    continue;
                }
                // f ≥ 0 at the stretch head; find the last x in
                // [j, next) keeping f ≥ 0 (f decreases in between)
                let mut a = j;
                let mut b = next;
                while b - a > 1 {
                    let mid = a + (b - a) / 2;
                    if f_at(mid) >= 0.0 {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                hits.extend(j..=a);
            }
            hits
        })
        .collect();
    Ok(per_chunk.concat())
}

/// Convenience scan that builds its own sieves (desk ranges).
pub fn counterexample_scan_fresh(lo: u64, hi: u64) -> Result<Vec<u64>> {
    let win = build_dual_window(lo, hi)?;
    counterexample_scan(lo, hi, &win)
}

/// Build the x-window and x/e-window ranks with exact π anchors.
pub fn build_dual_window(lo: u64, hi: u64) -> Result<DualWindow> {
    let (e_lo, _) = floor_div_e(lo as f64);
    let e_lo = e_lo.saturating_sub(2).max(2);
    let (e_hi, _) = floor_div_e(hi as f64);
    let e_hi = e_hi + 2;
    let anchors = [e_lo - 1, lo - 1];
    let pass = crate::sieve::prime_count_pass(lo - 1, &anchors, false, crate::sieve::DEFAULT_SEGMENT)?;
    let e_rank = WindowRank::build(e_lo, e_hi, pass.pi[0])?;
    let x_rank = WindowRank::build(lo, hi, pass.pi[1])?;
    Ok(DualWindow { x_rank, e_rank })
}

// ---------------------------------------------------------------------
// series coefficients
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SeriesCheck {
    pub squared_coeffs: Vec<u64>,
    pub shifted_coeffs: Vec<u64>,
    pub ratio_at_l100: f64,
    pub ratio_at_l1000: f64,
}

/// The two degree-6 truncations behind the asymptotic sign of f:
/// squaring the 5-term π expansion gives (1,2,5,16,64)/log^{2..6},
/// the (ex/log x)·π(x/e) side gives (1,2,5,16,65); their difference is
/// −x²/log⁶x at leading order.
pub fn series_coefficients_check() -> SeriesCheck {
    // squared side: coefficient of L^{-j} in (Σ_{k=0..4} k!/L^{k+1})²
    let fact = [1u64, 1, 2, 6, 24];
    let mut squared = Vec::new();
    for j in 2..=6u32 {
        let mut c = 0u64;
        for k1 in 0..=4u32 {
            for k2 in 0..=4u32 {
                if k1 + k2 + 2 == j {
                    c += fact[k1 as usize] * fact[k2 as usize];
                }
            }
        }
        squared.push(c);
    }
    // shifted side: coefficient of L^{-j} in (1/L)·Σ_k k!/(L−1)^{k+1}
    let binom = |n: u64, k: u64| -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    };
    let mut shifted = Vec::new();
    for j in 2..=6u64 {
        let mut c = 0u64;
        for k in 0..=(j - 2).min(4) {
            c += fact[k as usize] * binom(j - 2, k);
        }
        shifted.push(c);
    }
    // ratio of the truncation difference to −x²/log⁶x (x² cancels)
    let ratio = |l: f64| {
        let mut diff = 0.0;
        for (j, (&a, &b)) in squared.iter().zip(&shifted).enumerate() {
            diff += (a as f64 - b as f64) / l.powi(j as i32 + 2);
        }
        diff / (-1.0 / l.powi(6))
    };
    let ratio_at_l100 = ratio(100.0);
    let ratio_at_l1000 = ratio(1000.0);
    SeriesCheck {
        squared_coeffs: squared,
        shifted_coeffs: shifted,
        ratio_at_l100,
        ratio_at_l1000,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::checkpoints::{build_checkpoints, SpacingBand};
    use crate::sieve::sieve_primes;

    #[test]
    fn floor_div_e_basics() {
        assert_eq!(floor_div_e(E_HI).0, 1);
        assert_eq!(floor_div_e(2.7).0, 0);
        assert_eq!(floor_div_e(100.0).0, 36);
        // e·36 = 97.88, e·37 = 100.59
        assert_eq!(floor_div_e(97.0).0, 35);
        assert_eq!(floor_div_e(98.0).0, 36);
        for x in [1000.0f64, 12345.0, 9.9e10, 3.83e10] {
            let (m, _) = floor_div_e(x);
            assert!(m as f64 * E_HI <= x + 1e-4);
            assert!((m + 1) as f64 * E_HI > x - 1e-4);
        }
    }

    #[test]
    fn f_exact_small_values() {
        let table = sieve_primes(2, 1_000).unwrap();
        // x = 100: π(100) = 25, π(36) = 11
        let ev = f_exact(100.0, &table).unwrap();
        assert_eq!(ev.pi_x, (25, 25));
        assert_eq!(ev.pi_x_over_e, (11, 11));
        let expect = 625.0 - std::f64::consts::E * 100.0 / 100f64.ln() * 11.0;
        assert!((ev.f_value.0 - expect).abs() < 1e-9);
        assert_eq!(ev.f_value.0, ev.f_value.1);
    }

    #[test]
    fn step_epsilon_formula() {
        // π = 1000, f = −10⁶ → ε = √(10⁶+10⁶) − 1000 ≈ 414.2
        let ev = RamanujanEval {
            x: 0.0,
            pi_x: (1000, 1000),
            pi_x_over_e: (0, 0),
            f_value: (-1e6, -1e6),
            exactness: Exactness::Exact,
        };
        let eps = step_epsilon(&ev).unwrap();
        assert!((eps - (2e6f64.sqrt() - 1000.0)).abs() < 1e-9);
        assert!((eps - 414.2).abs() < 0.02);
        // quadratic identity f + 2πε + ε² = 0
        let resid: f64 = -1e6 + 2.0 * 1000.0 * eps + eps * eps;
        assert!(resid.abs() < 1e-6 * 1e6);
        // f ≥ 0 cannot step
        let bad = RamanujanEval { f_value: (0.0, 0.0), ..ev };
        assert!(matches!(step_epsilon(&bad), Err(Error::CannotStep { .. })));
        // f → 0⁻ gives ε → 0⁺
        let tiny = RamanujanEval { f_value: (-1e-9, -1e-9), ..ev };
        assert!(step_epsilon(&tiny).unwrap() > 0.0);
        assert!(step_epsilon(&tiny).unwrap() < 1e-11);
    }

    #[test]
    fn small_scale_scan_matches_naive() {
        let lo = 100_000u64;
        let hi = 140_000u64;
        let win = build_dual_window(lo, hi).unwrap();
        let fast = counterexample_scan(lo, hi, &win).unwrap();
        let mut naive = Vec::new();
        for x in lo..=hi {
            let ev = f_exact(x as f64, &win).unwrap();
            if ev.f_value.1 >= 0.0 {
                naive.push(x);
            }
        }
        assert_eq!(fast, naive);
        // every hit re-validates through an independent exact source
        let table = sieve_primes(2, hi + 10).unwrap();
        for &x in fast.iter().take(50) {
            let ev = f_exact(x as f64, &table).unwrap();
            assert!(ev.f_value.1 >= 0.0);
        }
    }

    #[test]
    fn stepping_small_range() {
        // [5.5e6, 5.95e6] is counterexample-free with f ≤ −1.4e7; the
        // spacing-25 table brackets f within ~3e6 of exact
        let t = build_checkpoints(&[SpacingBand {
            from: 2_000_000,
            to: 6_000_000,
            spacing: 25,
        }])
        .unwrap();
        let rep = verify_range_stepping(5_500_000.0, 5_950_000.0, &t, false).unwrap();
        assert!(rep.certified, "indeterminate at {:?}", rep.first_indeterminate);
        assert!(rep.steps > 10);
        // degenerate: lo == hi
        let rep = verify_range_stepping(5_500_000.0, 5_500_000.0, &t, false).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.steps, 0);
        // coverage gap
        assert!(matches!(
            verify_range_stepping(17_000_000.0, 18_000_000.0, &t, false),
            Err(Error::Coverage { .. })
        ));
    }

    #[test]
    fn coarse_table_goes_indeterminate() {
        // spacing 1e5 swamps |f| ~ 1.5e7 with bracket width ~1e10
        let t = build_checkpoints(&[SpacingBand {
            from: 2_000_000,
            to: 6_000_000,
            spacing: 100_000,
        }])
        .unwrap();
        let rep = verify_range_stepping(5_500_000.0, 5_950_000.0, &t, false).unwrap();
        assert!(!rep.certified);
        assert!(rep.first_indeterminate.is_some());
        // with local exact refinement the same range certifies
        let rep = verify_range_stepping(5_500_000.0, 5_950_000.0, &t, true).unwrap();
        assert!(rep.certified, "indeterminate at {:?}", rep.first_indeterminate);
        assert!(rep.refinements > 0);
    }

    #[test]
    fn series_coefficients() {
        let c = series_coefficients_check();
        assert_eq!(c.squared_coeffs, vec![1, 2, 5, 16, 64]);
        assert_eq!(c.shifted_coeffs, vec![1, 2, 5, 16, 65]);
        assert!((0.9..=1.1).contains(&c.ratio_at_l100));
        assert!((0.99..=1.01).contains(&c.ratio_at_l1000));
    }
}
