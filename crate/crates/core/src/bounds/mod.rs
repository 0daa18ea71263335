//! Closed-form evaluators for the explicit zero-free-region,
//! zero-density and prime-counting bounds, and the transcendental
//! threshold solvers built on them.
//!
//! Every evaluator is a pure function of its inputs; the solvers work
//! in y = log x space throughout (thresholds reach e^9394, so only
//! log space is representable) on geometric grids refined by bisection.

pub mod quad;
pub mod solvers;

use crate::error::{Error, Result};
use crate::sieve::factor::euler_phi;
use quad::adaptive_simpson;

pub use solvers::{
    ramanujan_unconditional, solve_all_n, solve_all_n_with_exponent, solve_cubes, solve_mpowers,
    CubeSolveResult, RamanujanUnconditional,
};

/// Ford zero-free-region width ν(T): zeros satisfy
/// σ < 1 − ν(T) with ν(T) = 1/(c·log^{2/3}T·(log log T)^{1/3}).
pub fn ford_nu_with(t: f64, c: f64) -> Result<f64> {
    if !(t >= 3.0) {
        return Err(Error::domain(format!("ford_nu requires T >= 3, got {t}")));
    }
    let lt = t.ln();
    Ok(1.0 / (c * lt.powf(2.0 / 3.0) * lt.ln().powf(1.0 / 3.0)))
}

pub const FORD_C: f64 = 57.54;

pub fn ford_nu(t: f64) -> Result<f64> {
    ford_nu_with(t, FORD_C)
}

pub const RAMARE_A: f64 = 9.7;

/// Zero-density majorant N(σ,T) ≤ A·(3T)^{8(1−σ)/3}·log^{5−2σ}T +
/// 103·log²T, valid for T ≥ 2000, σ ≥ 0.52.
pub fn ramare_density_with(sigma: f64, t: f64, a: f64) -> Result<f64> {
    if !(t >= 2000.0) || !(sigma >= 0.52) {
        return Err(Error::domain(format!(
            "density bound requires T >= 2000 and sigma >= 0.52, got T={t}, sigma={sigma}"
        )));
    }
    let lt = t.ln();
    Ok(a * (3.0 * t).powf(8.0 * (1.0 - sigma) / 3.0) * lt.powf(5.0 - 2.0 * sigma)
        + 103.0 * lt * lt)
}

pub fn ramare_density(sigma: f64, t: f64) -> Result<f64> {
    ramare_density_with(sigma, t, RAMARE_A)
}

pub const MT_R: f64 = 6.315;

/// Prime-number-theorem error factor ε₀(x) = sqrt(8/(17π))·X^{1/2}e^{−X},
/// X = sqrt(log x / R), R = 6.315; |θ(x) − x| ≤ x·ε₀(x) for x ≥ 149.
pub fn mt_epsilon0(x: f64) -> Result<f64> {
    if !(x >= 149.0) {
        return Err(Error::domain(format!("epsilon0 requires x >= 149, got {x}")));
    }
    let big_x = (x.ln() / MT_R).sqrt();
    Ok((8.0 / (17.0 * std::f64::consts::PI)).sqrt() * big_x.sqrt() * (-big_x).exp())
}

/// Conditional prime-counting gap (1/8π)·√x·log x, valid for x ≥ 2657.
pub fn schoenfeld_gap(x: f64) -> Result<f64> {
    if !(x >= 2657.0) {
        return Err(Error::domain(format!("schoenfeld gap requires x >= 2657, got {x}")));
    }
    Ok(x.sqrt() * x.ln() / (8.0 * std::f64::consts::PI))
}

/// Offset logarithmic integral Li(x) = ∫₂ˣ dt/log t by adaptive
/// quadrature (substituted to ∫ e^u/u du). The tolerance is driven far
/// below the 1e-6 relative contract because `conditional_g` consumes
/// Li through a catastrophic cancellation.
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::domain(format!("li requires x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let magnitude = x / x.ln();
    let tol = (1e-13 * magnitude).max(1e-15);
    let q = adaptive_simpson(|u| u.exp() / u, 2f64.ln(), x.ln(), tol, 0.25);
    Ok(q.value)
}

/// g(x) = li²(x) − (ex/log x)·(li(x/e) − (1/8π)·sqrt(x/e)·(log x − 1)):
/// the conditional majorant of π²(x) − (ex/log x)π(x/e).
pub fn conditional_g(x: f64) -> Result<f64> {
    let e = std::f64::consts::E;
    if !(x >= 2657.0 * e) {
        return Err(Error::domain(format!("g requires x >= 2657e, got {x}")));
    }
    let lx = x.ln();
    let li_x = li(x)?;
    let li_xe = li(x / e)?;
    let schoen = (x / e).sqrt() * (lx - 1.0) / (8.0 * std::f64::consts::PI);
    Ok(li_x * li_x - (e * x / lx) * (li_xe - schoen))
}

/// Brun–Titchmarsh majorant 2y/(φ(k)·log(y/k)) for
/// π(x+y;k,l) − π(x;k,l), requiring k < y.
pub fn brun_titchmarsh(y: f64, k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let ratio = y / k as f64;
    if ratio <= 1.0 + 1e-9 {
        return Err(Error::domain(format!(
            "bound requires y/k substantially above 1, got {ratio}"
        )));
    }
    Ok(2.0 * y / (euler_phi(k) as f64 * ratio.ln()))
}

/// Leading short-interval coefficient α/π + 4/(πα).
pub fn cramer_term(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain("alpha must be positive"));
    }
    Ok(alpha / std::f64::consts::PI + 4.0 / (std::f64::consts::PI * alpha))
}

/// argmin of [`cramer_term`] on (0, hi] by ternary search.
pub fn cramer_term_argmin(hi: f64) -> (f64, f64) {
    let mut a = 1e-9;
    let mut b = hi;
    while b - a > 1e-12 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if cramer_term(m1).unwrap() < cramer_term(m2).unwrap() {
            b = m2;
        } else {
            a = m1;
        }
    }
    let arg = 0.5 * (a + b);
    (arg, cramer_term(arg).unwrap())
}

/// ∫₀^X sin²t/t² dt, absolute tolerance 1e-10.
pub fn sin2_integral(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain("upper limit must be >= 0"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let f = |t: f64| {
        if t.abs() < 1e-8 {
            1.0 - t * t / 3.0
        } else {
            let s = t.sin();
            s * s / (t * t)
        }
    };
    Ok(adaptive_simpson(f, 0.0, x, 1e-10, 0.8).value)
}

/// Refined short-interval constant 2/(πα) + (1/π)∫₀^{α/2} sin²t/t² dt;
/// tends to 1/2 as α → ∞.
pub fn cramer_refined_c(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain("alpha must be positive"));
    }
    let integral = sin2_integral(alpha / 2.0)?;
    Ok(2.0 / (std::f64::consts::PI * alpha) + integral / std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ford_nu_arithmetic() {
        // T = e³: ν = 1/(57.54·3^{2/3}·(log 3)^{1/3})
        let t = 3f64.exp();
        let expect = 1.0 / (57.54 * 3f64.powf(2.0 / 3.0) * 3f64.ln().powf(1.0 / 3.0));
        let got = ford_nu(t).unwrap();
        assert!((got - expect).abs() < 1e-15);
        assert!((expect - 0.00809).abs() < 5e-5);
        // monotone decreasing
        assert!(ford_nu(1e6).unwrap() < ford_nu(1e3).unwrap());
        assert!(ford_nu(1e10).unwrap() < ford_nu(1e6).unwrap());
        assert!(matches!(ford_nu(2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn ford_nu_at_1e10() {
        let lt = 1e10f64.ln();
        let expect = 1.0 / (57.54 * lt.powf(2.0 / 3.0) * lt.ln().powf(1.0 / 3.0));
        assert!((ford_nu(1e10).unwrap() - expect).abs() < 1e-18);
        assert!((lt - 23.026).abs() < 1e-3);
        assert!((lt.ln() - 3.137).abs() < 1e-3);
    }

    #[test]
    fn density_bound_values() {
        // σ = 1: exponent vanishes → A·log³T + 103·log²T
        let t = 5000.0f64;
        let lt = t.ln();
        let expect = 9.7 * lt.powi(3) + 103.0 * lt * lt;
        assert!((ramare_density(1.0, t).unwrap() - expect).abs() < 1e-9 * expect);
        // σ = 5/8, T = 2000: A·6000·log^{3.75}(2000) + 103·log²(2000)
        let t = 2000.0f64;
        let lt = t.ln();
        let expect = 9.7 * 6000.0 * lt.powf(3.75) + 103.0 * lt * lt;
        assert!((ramare_density(0.625, t).unwrap() - expect).abs() < 1e-9 * expect);
        // domain guards
        assert!(ramare_density(0.5, 5000.0).is_err());
        assert!(ramare_density(0.7, 1000.0).is_err());
        // monotone decreasing in sigma
        let a = ramare_density(0.60, 1e6).unwrap();
        let b = ramare_density(0.75, 1e6).unwrap();
        let c = ramare_density(0.90, 1e6).unwrap();
        assert!(a > b && b > c);
    }

    #[test]
    fn epsilon0_values() {
        // x = e^{6.315} gives X = 1: sqrt(8/(17π))·e⁻¹
        let x = MT_R.exp();
        let expect = (8.0 / (17.0 * std::f64::consts::PI)).sqrt() / std::f64::consts::E;
        assert!((mt_epsilon0(x).unwrap() - expect).abs() < 1e-12);
        assert!((expect - 0.1424).abs() < 1e-4);
        assert!(mt_epsilon0(1e10).unwrap() < mt_epsilon0(1e5).unwrap());
        assert!(mt_epsilon0(1e5).unwrap() < mt_epsilon0(149.0).unwrap());
        assert!(matches!(mt_epsilon0(100.0), Err(Error::Domain(_))));
    }

    #[test]
    fn schoenfeld_arithmetic() {
        // (1/8π)·100·log(10⁴)
        let got = schoenfeld_gap(1e4).unwrap();
        let expect = 100.0 * 1e4f64.ln() / (8.0 * std::f64::consts::PI);
        assert!((got - expect).abs() < 1e-12);
        assert!((expect - 36.65).abs() < 0.01);
        assert!(schoenfeld_gap(2000.0).is_err());
    }

    #[test]
    fn li_reference_values() {
        // frozen 40-digit reference values for ∫₂ˣ dt/log t
        let cases = [
            (10.0, 5.1204357246698051527, 1e-12),
            (100.0, 29.080977803962137141, 1e-11),
            (1e4, 1245.0920521192709669, 1e-9),
            (1e6, 78626.503995682064427, 1e-7),
            (1e10, 455055613.54145929549, 1e-3),
            (1.15e16, 319874626444913.867, 60.0),
        ];
        for (x, expect, tol) in cases {
            let got = li(x).unwrap();
            assert!(
                (got - expect).abs() < tol,
                "li({x}) = {got}, expect {expect} (Δ={})",
                got - expect
            );
        }
        assert_eq!(li(2.0).unwrap(), 0.0);
        assert!(li(1.5).is_err());
    }

    #[test]
    fn conditional_g_values() {
        // frozen 40-digit reference: g(1.15e16) = -3.2110277420924706e19
        let g = conditional_g(1.15e16).unwrap();
        assert!((g - -3.2110277420924706e19).abs() < 2e16, "g = {g:e}");
        assert!(g < -3.2e19);
        // strictly decreasing: finite-difference slope negative at 5 points
        let samples = [1e16, 2e16, 4e16, 8e16, 1.4e17];
        for &x in &samples {
            let a = conditional_g(x).unwrap();
            let b = conditional_g(x * 1.01).unwrap();
            assert!(b < a, "g not decreasing at {x:e}: {a:e} -> {b:e}");
        }
        assert!(conditional_g(1000.0).is_err());
    }

    #[test]
    fn brun_titchmarsh_values() {
        // y = 10⁶, k = 3: 2·10⁶/(2·log(10⁶/3))
        let got = brun_titchmarsh(1e6, 3).unwrap();
        let expect = 2e6 / (2.0 * (1e6f64 / 3.0).ln());
        assert!((got - expect).abs() < 1e-9);
        // φ(1) = 1: bound 2y/log y
        let got = brun_titchmarsh(1e6, 1).unwrap();
        assert!((got - 2e6 / 1e6f64.ln()).abs() < 1e-9);
        assert!(got >= 78_498.0);
        // k ≈ y guard: ratio within 1+1e-9 of 1 is rejected
        assert!(matches!(brun_titchmarsh(1e6 + 1e-4, 1_000_000), Err(Error::Domain(_))));
        assert!(matches!(brun_titchmarsh(10.0, 20), Err(Error::Domain(_))));
    }

    #[test]
    fn cramer_minimum() {
        let (arg, val) = cramer_term_argmin(10.0);
        assert!((arg - 2.0).abs() < 1e-6);
        assert!((val - 4.0 / std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn sin2_integral_tends_to_pi_half() {
        let v = sin2_integral(1e4).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
        // halving-step verification at a modest limit
        let direct = quad::simpson_fixed(
            |t| if t == 0.0 { 1.0 } else { (t.sin() / t).powi(2) },
            0.0,
            50.0,
            400_000,
        );
        assert!((sin2_integral(50.0).unwrap() - direct).abs() < 1e-9);
    }

    #[test]
    fn refined_c_limits() {
        let v = cramer_refined_c(1e4).unwrap();
        assert!((v - 0.5).abs() < 1e-3);
        // small alpha blows up through the 2/(πα) term
        assert!(cramer_refined_c(0.01).unwrap() > 10.0);
    }
}
