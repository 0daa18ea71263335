//! Additive decompositions: every n ≥ 3 as prime + squarefree, and
//! every n ≥ 10 with n ≢ 1 (mod 4) as prime² + squarefree, together
//! with the explicit lower bounds that settle both for large n.

use rayon::prelude::*;
use serde::Serialize;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sieve::factor::{euler_phi, is_prime, is_squarefree};
use crate::sieve::squarefree::{sieve_squarefree, SquarefreeSieve};
use crate::sieve::{sieve_primes, small_primes};

/// One decomposition n = p^k + m with m squarefree, k ∈ {1, 2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: u64,
    pub p: u64,
    pub square_power: u32,
    pub m: u64,
    /// candidate primes tried before this one succeeded
    pub attempts: u32,
}

impl Decomposition {
    /// Re-validate against independent primality and squarefree tests.
    pub fn validate(&self) -> bool {
        let pk = match self.square_power {
            1 => self.p,
            2 => self.p * self.p,
            _ => return false,
        };
        is_prime(self.p) && self.m >= 1 && is_squarefree(self.m) && self.n == pk + self.m
    }
}

// ---------------------------------------------------------------------
// prime + squarefree
// ---------------------------------------------------------------------

fn prev_prime(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    if n == 2 {
        return Some(2);
    }
    let mut c = if n % 2 == 0 { n - 1 } else { n };
    while c >= 3 {
        if is_prime(c) {
            return Some(c);
        }
        c -= 2;
    }
    Some(2)
}

/// Largest-prime-first decomposition n = p + m with m ≥ 1 squarefree,
/// trying the `lookback` greatest primes below n.
pub fn estermann_search(n: u64, lookback: u32) -> Result<Decomposition> {
    if n < 3 {
        return Err(Error::domain(format!("need n >= 3, got {n}")));
    }
    let mut p = prev_prime(n - 1).expect("n >= 3 has a prime below");
    for tried in 1..=lookback {
        let m = n - p;
        if is_squarefree(m) {
            return Ok(Decomposition { n, p, square_power: 1, m, attempts: tried });
        }
        if p == 2 {
            break;
        }
        p = prev_prime(p - 1).expect("descending prime exists");
    }
    Err(Error::Exhausted { n, tried: lookback as usize })
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub checked: u64,
    pub max_attempts: u32,
    pub worst_n: u64,
    pub failures: Vec<u64>,
}

/// Decompose every n in [lo, hi) as prime + squarefree; failures are
/// collected, not fatal. Windows are scanned in parallel and merged in
/// order.
pub fn estermann_scan(lo: u64, hi: u64, lookback: u32) -> Result<ScanSummary> {
    if lo < 3 || lo >= hi {
        return Err(Error::domain(format!("need 3 <= lo < hi, got [{lo}, {hi})")));
    }
    let primes = sieve_primes(2, hi)?.primes;
    const CHUNK: u64 = 1 << 19;
    let nchunks = (hi - lo).div_ceil(CHUNK);
    let partials: Vec<(u64, u32, u64, Vec<u64>)> = (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let a = lo + ci * CHUNK;
            let b = (a + CHUNK).min(hi);
            let mut checked = 0u64;
            let mut max_attempts = 0u32;
            let mut worst_n = 0u64;
            let mut failures = Vec::new();
            // index of the largest prime < a (primes[idx] is a candidate start)
            let mut idx = primes.partition_point(|&p| p < a);
            for n in a..b {
                while idx < primes.len() && primes[idx] < n {
                    idx += 1;
                }
                // primes[idx-1] is the largest prime < n ... walk down
                let mut j = idx;
                let mut attempts = 0u32;
                let mut found = false;
                while j > 0 && attempts < lookback {
                    j -= 1;
                    attempts += 1;
                    let m = n - primes[j];
                    if is_squarefree(m) {
                        found = true;
                        break;
                    }
                }
                checked += 1;
                if found {
                    if attempts > max_attempts {
                        max_attempts = attempts;
                        worst_n = n;
                    }
                } else {
                    failures.push(n);
                }
            }
            (checked, max_attempts, worst_n, failures)
        })
        .collect();
    let mut out = ScanSummary { checked: 0, max_attempts: 0, worst_n: 0, failures: Vec::new() };
    for (c, ma, wn, fs) in partials {
        out.checked += c;
        if ma > out.max_attempts {
            out.max_attempts = ma;
            out.worst_n = wn;
        }
        out.failures.extend(fs);
    }
    Ok(out)
}

/// Artin-constant floor used by the analytic lower bound.
pub const ARTIN_FLOOR: f64 = 0.373;

/// Lower bound for R(n)/n: c − 0.005 − ((1+2A)/(1−2A))·0.086
/// − n^{−1/2}·log n − n^{−2A}·log n − n^{−A}·log n, with c = 0.373.
pub fn estermann_lower_bound(n: f64, a: f64) -> Result<f64> {
    if !(n >= 3.0) || !(a > 0.0 && a < 0.5) {
        return Err(Error::domain(format!("need n >= 3 and 0 < A < 1/2, got n={n}, A={a}")));
    }
    let ln = n.ln();
    Ok(ARTIN_FLOOR
        - 0.005
        - (1.0 + 2.0 * a) / (1.0 - 2.0 * a) * 0.086
        - n.powf(-0.5) * ln
        - n.powf(-2.0 * a) * ln
        - n.powf(-a) * ln)
}

/// Truncated Artin product Π_{p≤limit} (1 − 1/(p(p−1))).
pub fn artin_constant(limit: u64) -> f64 {
    let mut acc = 1.0f64;
    for p in small_primes(limit) {
        let p = p as f64;
        acc *= 1.0 - 1.0 / (p * (p - 1.0));
    }
    acc
}

/// Truncated Π_{p≤limit} (1 + 1/(p(p−1))) = Σ_a μ²(a)/φ(a²); the full
/// series is below 1.95.
pub fn squarefree_phi_series(limit: u64) -> f64 {
    let mut acc = 1.0f64;
    for p in small_primes(limit) {
        let p = p as f64;
        acc *= 1.0 + 1.0 / (p * (p - 1.0));
    }
    acc
}

/// Σ_{a ≤ 13, a squarefree} μ²(a)/φ(a²) — the head subtracted from the
/// series bound to give Σ_{a>13} μ²(a)/φ(a²) < 0.086.
pub fn squarefree_phi_head() -> f64 {
    let mut acc = 0.0;
    for a in 1u64..=13 {
        if is_squarefree(a) {
            acc += 1.0 / euler_phi(a * a) as f64;
        }
    }
    acc
}

// ---------------------------------------------------------------------
// epsilon tables
// ---------------------------------------------------------------------

/// θ(x;q²,l) error constants ε(q²,·) for the 24 odd primes q ≤ 97.
#[derive(Debug, Clone)]
pub struct EpsilonTable {
    rows: Vec<(u64, f64)>,
    raw: Vec<(u64, String)>,
}

const EPS_1E10_CSV: &str = include_str!("../../../data/epsilon-q2-1e10.csv");
const EPS_SQRT_CSV: &str = include_str!("../../../data/epsilon-q2-sqrt-2.5e14.csv");

impl EpsilonTable {
    fn parse(csv: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut raw = Vec::new();
        for (i, line) in csv.lines().enumerate() {
            if i == 0 {
                if line.trim() != "q,eps" {
                    return Err(Error::Parse { line: 1, msg: "expected header 'q,eps'".into() });
                }
                continue;
            }
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let (qs, es) = t
                .split_once(',')
                .ok_or_else(|| Error::Parse { line: i + 1, msg: format!("bad row '{t}'") })?;
            let q: u64 = qs.parse().map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("bad q '{qs}': {e}"),
            })?;
            let eps: f64 = es.parse().map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("bad eps '{es}': {e}"),
            })?;
            rows.push((q, eps));
            raw.push((q, es.to_string()));
        }
        if rows.len() != 24 {
            return Err(Error::Validation {
                line: None,
                msg: format!("expected 24 rows, got {}", rows.len()),
            });
        }
        Ok(EpsilonTable { rows, raw })
    }

    /// ε(q², 10¹⁰) table.
    pub fn at_1e10() -> &'static EpsilonTable {
        static T: OnceLock<EpsilonTable> = OnceLock::new();
        T.get_or_init(|| EpsilonTable::parse(EPS_1E10_CSV).expect("bundled table parses"))
    }

    /// ε(q², √(2.5·10¹⁴)) table.
    pub fn at_sqrt_25e14() -> &'static EpsilonTable {
        static T: OnceLock<EpsilonTable> = OnceLock::new();
        T.get_or_init(|| EpsilonTable::parse(EPS_SQRT_CSV).expect("bundled table parses"))
    }

    pub fn rows(&self) -> &[(u64, f64)] {
        &self.rows
    }

    pub fn eps(&self, q: u64) -> Option<f64> {
        self.rows.iter().find(|&&(qq, _)| qq == q).map(|&(_, e)| e)
    }

    pub fn raw_decimal(&self, q: u64) -> Option<&str> {
        self.raw.iter().find(|&&(qq, _)| qq == q).map(|(_, s)| s.as_str())
    }

    /// Σ_{q ≤ 13} ε_q·μ²(q)/φ(q²) over the table's prime moduli.
    pub fn head_error_sum(&self) -> f64 {
        self.rows
            .iter()
            .filter(|&&(q, _)| q <= 13)
            .map(|&(q, e)| e / euler_phi(q * q) as f64)
            .sum()
    }

    /// Σ over all 24 rows of 2(1+ε(q²,·))/(q(q−1)).
    pub fn mischief_sum(&self) -> f64 {
        self.rows
            .iter()
            .map(|&(q, e)| {
                let qf = q as f64;
                2.0 * (1.0 + e) / (qf * (qf - 1.0))
            })
            .sum()
    }
}

// ---------------------------------------------------------------------
// prime² + squarefree
// ---------------------------------------------------------------------

/// Smallest-prime decomposition n = p² + m, m squarefree, p ≤ p_limit.
/// p = 2 is skipped when n ≡ 0 (mod 4) since then 4 | n − 4.
pub fn erdos_search(n: u64, p_limit: u64) -> Result<Decomposition> {
    if n < 10 {
        return Err(Error::domain(format!("need n >= 10, got {n}")));
    }
    if n % 4 == 1 {
        return Err(Error::domain(format!("n = {n} is 1 mod 4: excluded")));
    }
    let mut attempts = 0u32;
    for p in small_primes(p_limit) {
        if p * p >= n {
            break;
        }
        if p == 2 && n % 4 == 0 {
            continue;
        }
        attempts += 1;
        let m = n - p * p;
        if is_squarefree(m) {
            return Ok(Decomposition { n, p, square_power: 2, m, attempts });
        }
    }
    Err(Error::Exhausted { n, tried: attempts as usize })
}

#[derive(Debug, Clone, Serialize)]
pub struct ErdosScan {
    pub checked: u64,
    /// n values for which every p ≤ p_limit failed, ascending.
    pub failures: Vec<u64>,
    /// largest smallest-working-prime seen, with a witness n
    pub max_p: u64,
    pub max_p_witness: u64,
}

/// Scan [lo, hi): every n ≥ 10 with n ≢ 1 (mod 4) gets the smallest
/// prime p ≤ p_limit with n − p² squarefree. One squarefree window
/// covering [lo − p_limit², hi − 4) (clamped at 0) serves all lookups.
pub fn erdos_scan(lo: u64, hi: u64, p_limit: u64) -> Result<ErdosScan> {
    if hi <= lo {
        return Err(Error::domain("empty range"));
    }
    let probes: Vec<u64> = small_primes(p_limit);
    let w_lo = lo.saturating_sub(p_limit * p_limit);
    let flags = sieve_squarefree(w_lo, hi.saturating_sub(4).max(w_lo + 1))?;
    const CHUNK: u64 = 1 << 19;
    let nchunks = (hi - lo).div_ceil(CHUNK);
    let partials: Vec<(u64, Vec<u64>, u64, u64)> = (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let a = (lo + ci * CHUNK).max(10);
            let b = (lo + (ci + 1) * CHUNK).min(hi);
            let mut checked = 0u64;
            let mut failures = Vec::new();
            let mut max_p = 0u64;
            let mut max_p_witness = 0u64;
            for n in a..b {
                if n % 4 == 1 {
                    continue;
                }
                checked += 1;
                let mut found = false;
                for &p in &probes {
                    let p2 = p * p;
                    if p2 >= n {
                        break;
                    }
                    if p == 2 && n % 4 == 0 {
                        continue;
                    }
                    if flags.flag(n - p2) {
                        if p > max_p {
                            max_p = p;
                            max_p_witness = n;
                        }
                        found = true;
                        break;
                    }
                }
                if !found {
                    failures.push(n);
                }
            }
            (checked, failures, max_p, max_p_witness)
        })
        .collect();
    let mut out = ErdosScan { checked: 0, failures: Vec::new(), max_p: 0, max_p_witness: 0 };
    for (c, fs, mp, wit) in partials {
        out.checked += c;
        out.failures.extend(fs);
        if mp > out.max_p {
            out.max_p = mp;
            out.max_p_witness = wit;
        }
    }
    Ok(out)
}

/// Paper-shaped window scan: width W starting at N, probe primes ≤ P.
pub fn erdos_search_range(n0: u64, w: u64, p: u64) -> Result<ErdosScan> {
    if n0 < p * p + 10 {
        return Err(Error::domain(format!("need N >= P² + 10, got N={n0}, P={p}")));
    }
    erdos_scan(n0, n0 + w, p)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Escalation {
    pub n: u64,
    /// smallest prime beyond the first-pass limit that works
    pub p: Option<u64>,
}

/// Second pass over first-pass failures with primes up to `p_limit`.
pub fn erdos_escalate(failures: &[u64], first_limit: u64, p_limit: u64) -> Vec<Escalation> {
    failures
        .par_iter()
        .map(|&n| {
            for p in small_primes(p_limit) {
                if p <= first_limit {
                    continue;
                }
                if p * p >= n {
                    break;
                }
                if is_squarefree(n - p * p) {
                    return Escalation { n, p: Some(p) };
                }
            }
            Escalation { n, p: None }
        })
        .collect()
}

/// Explicit lower bound for the weighted count of primes p with
/// n − p² squarefree; positive for n ≥ 2.5e14 at the default
/// parameters c = 0.209, A = 0.0685.
pub fn erdos_lower_bound(n: f64, c_exp: f64, a: f64) -> Result<f64> {
    if !(n > 3.0) || !(c_exp > 0.0 && c_exp < 0.25) || !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!(
            "need n > 3, 0 < c < 1/4, 0 < A < 1, got n={n}, c={c_exp}, A={a}"
        )));
    }
    let ln = n.ln();
    let lln = ln.ln();
    let sqrt_n = n.sqrt();
    let main = (1.0
        - 0.568
        - 0.00183 / (0.25 - c_exp)
        - 0.8 / (ln * ln)
        - (n.powf(-2.0 * c_exp) + n.powf(-c_exp)) * ln)
        * sqrt_n;
    let la = (a * sqrt_n).ln();
    let pi_term = a * sqrt_n * ln / la * (1.0 + 1.2762 / la);
    let form_term = 2f64.powf(1.3841 * ln / lln)
        * (1.5 + 1.0 / (48.0 * a * a) + 9.0 / (2.0 * a * a * n))
        * ln;
    Ok(main - pi_term - form_term)
}

/// Σ 1/(q(q−1)) over primes q with lo < q ≤ hi.
pub fn reciprocal_prime_sum(lo: u64, hi: u64) -> Result<f64> {
    if lo < 2 || lo >= hi {
        return Err(Error::domain(format!("need 2 <= lo < hi, got ({lo}, {hi}]")));
    }
    let primes = sieve_primes(2, hi)?.primes;
    let mut acc = 0.0f64;
    for &q in primes.iter().rev() {
        // descending: accumulate small terms first
        if q <= lo {
            break;
        }
        let qf = q as f64;
        acc += 1.0 / (qf * (qf - 1.0));
    }
    Ok(acc)
}

/// Counts of admissible B values in n = p² + B·q² for q ≥ A√n:
/// integers in [(n−9)/(A²n), 1/A²) (the p ≤ 3 range) and residues
/// B ≡ n−1 (mod 24) in [1, 1/A²), against the bound
/// 2 + 1/(24A²) + 9/(A²n).
pub fn b_admissible_counts(n: u64, a: f64) -> (u64, u64, f64) {
    let nf = n as f64;
    let hi = 1.0 / (a * a); // exclusive
    let lo_small = (nf - 9.0) / (a * a * nf);
    let mut small = 0u64;
    let mut b = lo_small.ceil() as u64;
    while (b as f64) < hi {
        small += 1;
        b += 1;
    }
    let residue = (n - 1) % 24;
    let mut cong = 0u64;
    let mut b = if residue == 0 { 24 } else { residue };
    while (b as f64) < hi {
        cong += 1;
        b += 24;
    }
    let bound = 2.0 + 1.0 / (24.0 * a * a) + 9.0 / (a * a * nf);
    (small, cong, bound)
}

/// Failures emitted as CSV (n, tried_up_to).
pub fn failures_csv(failures: &[u64], tried_up_to: u64) -> String {
    let mut s = String::from("n,tried_up_to\n");
    for &n in failures {
        s.push_str(&format!("{},{}\n", n, tried_up_to));
    }
    s
}

/// Shared squarefree window probe (kept for callers that already hold
/// a window).
pub fn probe_window(flags: &SquarefreeSieve, n: u64) -> bool {
    flags.flag(n)
}
