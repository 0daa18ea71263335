//! Small arithmetic helpers: deterministic primality, distinct-prime
//! counting, totients and integer roots.

use super::isqrt;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the 12-base set is exact below
/// 3.3e24, far past the 64-bit range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// ω(n): number of distinct prime divisors (ω(1) = 0).
pub fn omega(n: u64) -> u32 {
    assert!(n >= 1);
    let mut n = n;
    let mut count = 0u32;
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
    }
    // wheel over 6k±1
    let mut d = 7u64;
    while d * d <= n {
        for q in [d, d + 4] {
            if n % q == 0 {
                count += 1;
                while n % q == 0 {
                    n /= q;
                }
            }
        }
        d += 6;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// Euler's totient by trial factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut n = n;
    let mut phi = 1u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut pk = 1u64;
            n /= d;
            while n % d == 0 {
                pk *= d;
                n /= d;
            }
            phi *= pk * (d - 1);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Largest r with r^k <= n.
pub fn nth_root_floor(n: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if k == 1 || n <= 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    let pow = |r: u64| -> Option<u64> {
        let mut acc = 1u64;
        for _ in 0..k {
            acc = acc.checked_mul(r)?;
        }
        Some(acc)
    };
    while r > 0 && pow(r).map_or(true, |v| v > n) {
        r -= 1;
    }
    while pow(r + 1).map_or(false, |v| v <= n) {
        r += 1;
    }
    r
}

/// Squarefree test for a single integer: trial division by q² for
/// q ≤ n^(1/3), then a perfect-square check on the cofactor (any
/// remaining square factor must be the square of a single large prime).
pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    if n <= 3 {
        return true;
    }
    let mut m = n;
    if m % 4 == 0 {
        return false;
    }
    if m % 2 == 0 {
        m /= 2;
    }
    let mut q = 3u64;
    while q * q * q <= n {
        if m % q == 0 {
            m /= q;
            if m % q == 0 {
                return false;
            }
        }
        q += 2;
    }
    !(m > 1 && is_perfect_square(m))
}
