//! Squarefree indicator over a window, built by crossing out multiples
//! of prime squares. μ₂(n) = Σ_{a²|n} μ(a) is 1 exactly on the flagged
//! integers; 0 is defined not squarefree, 1 is squarefree.

use super::{check_cap, isqrt, small_primes};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct SquarefreeSieve {
    window_lo: u64,
    window_hi: u64, // inclusive
    words: Vec<u64>, // bit = 1 -> squarefree
}

/// Flags for `[lo, hi]`. Sieving primes are enumerated up to √hi.
pub fn sieve_squarefree(lo: u64, hi: u64) -> Result<SquarefreeSieve> {
    assert!(lo <= hi, "window reversed: [{lo}, {hi}]");
    check_cap(lo, hi)?;
    let n = (hi - lo + 1) as usize;
    let mut words = vec![u64::MAX; n.div_ceil(64)];
    if n % 64 != 0 {
        let last = words.len() - 1;
        words[last] = (1u64 << (n % 64)) - 1;
    }
    for p in small_primes(isqrt(hi)) {
        let p2 = p * p;
        let mut m = lo.div_ceil(p2) * p2;
        while m <= hi {
            let j = (m - lo) as usize;
            words[j >> 6] &= !(1u64 << (j & 63));
            m += p2;
        }
    }
    if lo == 0 {
        words[0] &= !1; // 0 is not squarefree
    }
    Ok(SquarefreeSieve { window_lo: lo, window_hi: hi, words })
}

impl SquarefreeSieve {
    pub fn window_lo(&self) -> u64 {
        self.window_lo
    }

    pub fn window_hi(&self) -> u64 {
        self.window_hi
    }

    pub fn flag(&self, n: u64) -> bool {
        assert!(
            n >= self.window_lo && n <= self.window_hi,
            "n={} outside window [{}, {}]",
            n,
            self.window_lo,
            self.window_hi
        );
        let j = (n - self.window_lo) as usize;
        self.words[j >> 6] >> (j & 63) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force μ₂(n) = Σ_{a²|n} μ(a).
    fn mu2(n: u64) -> i64 {
        if n == 0 {
            return 0;
        }
        let mobius = |m: u64| -> i64 {
            if m == 1 {
                return 1;
            }
            let mut m = m;
            let mut k = 0;
            let mut d = 2;
            while d * d <= m {
                if m % d == 0 {
                    m /= d;
                    if m % d == 0 {
                        return 0;
                    }
                    k += 1;
                }
                d += 1;
            }
            if m > 1 {
                k += 1;
            }
            if k % 2 == 0 {
                1
            } else {
                -1
            }
        };
        let mut s = 0i64;
        let mut a = 1u64;
        while a * a <= n {
            if n % (a * a) == 0 {
                s += mobius(a);
            }
            a += 1;
        }
        s
    }

    #[test]
    fn definition_window() {
        let s = sieve_squarefree(1, 12).unwrap();
        let expect = [
            (1, true),
            (2, true),
            (3, true),
            (4, false),
            (5, true),
            (6, true),
            (7, true),
            (8, false),
            (9, false),
            (10, true),
            (11, true),
            (12, false),
        ];
        for (n, e) in expect {
            assert_eq!(s.flag(n), e, "n={}", n);
        }
    }

    #[test]
    fn zero_clamped() {
        let s = sieve_squarefree(0, 10).unwrap();
        assert!(!s.flag(0));
        assert!(s.flag(1));
    }

    #[test]
    fn mu2_oracle() {
        let s = sieve_squarefree(0, 3_000).unwrap();
        for n in 0..=3_000u64 {
            assert_eq!(s.flag(n), mu2(n) == 1, "n={}", n);
        }
    }

    #[test]
    fn offset_window_oracle() {
        let s = sieve_squarefree(999_950, 1_000_050).unwrap();
        for n in 999_950..=1_000_050u64 {
            assert_eq!(s.flag(n), mu2(n) == 1, "n={}", n);
        }
    }

    #[test]
    fn density_envelope() {
        // count of squarefree n ≤ 10^6 is (6/π²)·10^6 ± 2·10^3
        let s = sieve_squarefree(1, 1_000_000).unwrap();
        let count = s.count() as f64;
        let density = 6.0 / (std::f64::consts::PI * std::f64::consts::PI) * 1e6;
        assert!((count - density).abs() < 2e3, "count {} vs {}", count, density);
    }

    #[test]
    fn last_one_standing() {
        // 1,623,364,493,706,484 − 73² is squarefree
        let n: u64 = 1_623_364_493_706_484 - 73 * 73;
        let s = sieve_squarefree(n - 5, n + 5).unwrap();
        assert!(s.flag(n));
        assert!(super::super::factor::is_squarefree(n));
    }
}
