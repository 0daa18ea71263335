//! Exact prime counting functions: π(x), θ(x) = Σ_{p≤x} log p,
//! ψ(x) = Σ_{n≤x} Λ(n), and their arithmetic-progression variants.
//!
//! ψ is computed as θ(x) + θ(x^{1/2}) + θ(x^{1/3}) + … down to
//! x^{1/k} < 2, which avoids a separate prime-power sieve.

use super::factor::nth_root_floor;
use super::{prime_count_pass, WindowRank, DEFAULT_SEGMENT};
use crate::error::{Error, Result};

fn floor_arg(x: f64) -> Result<u64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!("argument must be finite and >= 0, got {x}")));
    }
    Ok(x.floor() as u64)
}

/// π(x): number of primes ≤ x. Returns 0 for x < 2.
pub fn pi(x: f64) -> Result<u64> {
    let n = floor_arg(x)?;
    Ok(pi_many(&[n])?[0])
}

/// Exact π at many points in one sieve pass.
pub fn pi_many(xs: &[u64]) -> Result<Vec<u64>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let hi = *xs.iter().max().unwrap();
    let mut sorted: Vec<u64> = xs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let pass = prime_count_pass(hi.max(2), &sorted, false, DEFAULT_SEGMENT)?;
    let lookup = |q: u64| pass.pi[sorted.binary_search(&q).unwrap()];
    Ok(xs.iter().map(|&q| lookup(q)).collect())
}

/// θ(x) = Σ_{p ≤ x} log p, in double precision.
pub fn theta(x: f64) -> Result<f64> {
    let n = floor_arg(x)?;
    Ok(theta_many(&[n])?[0])
}

/// Exact θ at many points in one sieve pass.
pub fn theta_many(xs: &[u64]) -> Result<Vec<f64>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let hi = *xs.iter().max().unwrap();
    let mut sorted: Vec<u64> = xs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let pass = prime_count_pass(hi.max(2), &sorted, true, DEFAULT_SEGMENT)?;
    let lookup = |q: u64| pass.theta[sorted.binary_search(&q).unwrap()];
    Ok(xs.iter().map(|&q| lookup(q)).collect())
}

/// ψ(x) = Σ_{n ≤ x} Λ(n).
pub fn psi(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!("argument must be finite and >= 0, got {x}")));
    }
    Ok(psi_many(&[x])?[0])
}

/// ψ at many (real) points; all θ evaluations share one sieve pass.
pub fn psi_many(xs: &[f64]) -> Result<Vec<f64>> {
    let mut root_points: Vec<u64> = Vec::new();
    let mut per_x: Vec<Vec<u64>> = Vec::with_capacity(xs.len());
    for &x in xs {
        let n = floor_arg(x)?;
        let mut roots = Vec::new();
        let mut k = 1u32;
        loop {
            let r = nth_root_floor(n, k);
            if r < 2 {
                break;
            }
            roots.push(r);
            root_points.push(r);
            k += 1;
        }
        per_x.push(roots);
    }
    let theta_vals = theta_many(&root_points)?;
    let mut idx = 0usize;
    let mut out = Vec::with_capacity(xs.len());
    for roots in &per_x {
        // sum smallest root first: ascending magnitude addition
        let slice = &theta_vals[idx..idx + roots.len()];
        let total: f64 = slice.iter().rev().sum();
        idx += roots.len();
        out.push(total);
    }
    Ok(out)
}

/// θ(x; k, l) = Σ log p over primes p ≤ x with p ≡ l (mod k).
pub fn theta_progression(x: f64, k: u64, l: u64) -> Result<f64> {
    let (n, k, l) = progression_args(x, k, l)?;
    if n < 2 {
        return Ok(0.0);
    }
    let rank = WindowRank::build(2, n, 0)?;
    let mut partials = Vec::new();
    let mut acc = 0.0f64;
    let mut cnt = 0usize;
    for p in rank.primes_in(2, n) {
        if p % k == l {
            acc += (p as f64).ln();
            cnt += 1;
            if cnt % 4096 == 0 {
                partials.push(acc);
                acc = 0.0;
            }
        }
    }
    partials.push(acc);
    Ok(super::pairwise_sum(&partials))
}

/// π(x; k, l): primes p ≤ x with p ≡ l (mod k).
pub fn pi_progression(x: f64, k: u64, l: u64) -> Result<u64> {
    let (n, k, l) = progression_args(x, k, l)?;
    if n < 2 {
        return Ok(0);
    }
    let rank = WindowRank::build(2, n, 0)?;
    Ok(rank.primes_in(2, n).filter(|&p| p % k == l).count() as u64)
}

fn progression_args(x: f64, k: u64, l: u64) -> Result<(u64, u64, u64)> {
    if k < 1 {
        return Err(Error::domain("modulus k must be >= 1"));
    }
    if l >= k {
        return Err(Error::domain(format!("need 0 <= l < k, got l={l}, k={k}")));
    }
    let n = floor_arg(x)?;
    Ok((n, k, l))
}
