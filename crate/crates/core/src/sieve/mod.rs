//! Segmented sieve of Eratosthenes and the exact prime statistics built on it.
//!
//! Everything exact in this crate (π, θ, ψ, prime enumeration, the
//! counterexample scans) funnels through the two entry points here:
//!
//! * [`prime_count_pass`] — a single parallel sweep of `[2, hi]` that
//!   answers π/θ at many query points at once without retaining the
//!   sieve bits;
//! * [`WindowRank`] — a retained primality bitmap over a window with
//!   O(1) rank queries, for scans that must look at individual primes.
//!
//! Segments are independent work units; they are sieved in parallel and
//! merged in index order, so results are identical for any thread count
//! and any segment size.

pub mod chebyshev;
pub mod checkpoints;
pub mod factor;
pub mod squarefree;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Formal cap on sieve arguments (64-bit design decision). Practical
/// ranges are 1e11..1e12; beyond that wall-clock time is the limit.
pub const RANGE_CAP: u64 = (1u64 << 63) - 1;

/// Default segment span in numbers (256 KiB of odd-number bits).
pub const DEFAULT_SEGMENT: u64 = 1 << 22;

pub(crate) fn check_cap(lo: u64, hi: u64) -> Result<()> {
    if hi > RANGE_CAP {
        return Err(Error::Capacity { lo, hi, cap: RANGE_CAP });
    }
    Ok(())
}

/// Simple sieve for the base primes up to `limit` (inclusive).
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Integer square root, exact.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).map_or(true, |rr| rr > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |rr| rr <= n) {
        r += 1;
    }
    r
}

/// Mark composite odd numbers of the segment `[seg_lo, seg_lo + 2*nbits)`
/// (odds only, `seg_lo` odd, bit j = number `seg_lo + 2j`). A set bit
/// means composite. `base` holds the odd sieving primes.
fn strike_segment(words: &mut [u64], seg_lo: u64, nbits: usize, base: &[u64]) {
    debug_assert!(seg_lo % 2 == 1);
    let seg_end = seg_lo + 2 * nbits as u64; // exclusive
    for &p in base {
        let p2 = p * p;
        if p2 >= seg_end {
            break;
        }
        // first odd multiple of p in the segment, at least p^2
        let m = if p2 >= seg_lo {
            p2
        } else {
            let mut m = seg_lo.div_ceil(p) * p;
            if m % 2 == 0 {
                m += p;
            }
            m
        };
        if m >= seg_end {
            continue;
        }
        let mut j = ((m - seg_lo) / 2) as usize;
        let step = p as usize;
        while j < nbits {
            words[j >> 6] |= 1u64 << (j & 63);
            j += step;
        }
    }
    // mask out 1 if present (seg_lo == 1 never happens for prime passes,
    // which start at 3, but keep the kernel total)
    if seg_lo == 1 {
        words[0] |= 1;
    }
}

fn word_count(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

/// Result of a [`prime_count_pass`]: exact π (and optionally θ) at each
/// query point, plus the totals over the whole range.
pub struct PassOutput {
    pub pi: Vec<u64>,
    pub theta: Vec<f64>,
    pub total_pi: u64,
    pub total_theta: f64,
}

struct SegmentSummary {
    count: u64,
    theta: f64,
    /// (query index, primes before query inside segment, theta before query)
    hits: Vec<(usize, u64, f64)>,
}

/// Balanced pairwise summation; deterministic regardless of thread count.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Block-decomposed prefix sums over `leaves`; every prefix is assembled
/// from pairwise-merged power-of-two blocks.
struct PrefixTree {
    levels: Vec<Vec<f64>>,
}

impl PrefixTree {
    fn new(leaves: &[f64]) -> Self {
        let mut levels = vec![leaves.to_vec()];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let next: Vec<f64> = prev
                .chunks(2)
                .map(|c| if c.len() == 2 { c[0] + c[1] } else { c[0] })
                .collect();
            levels.push(next);
        }
        PrefixTree { levels }
    }

    /// Sum of the first `n` leaves.
    fn prefix(&self, n: usize) -> f64 {
        let mut acc = 0.0;
        let mut pos = 0usize;
        for k in (0..self.levels.len()).rev() {
            let block = 1usize << k;
            if n - pos >= block {
                acc += self.levels[k][pos >> k];
                pos += block;
            }
        }
        acc
    }
}

/// One parallel sweep of `[2, hi]`. `queries` must be ascending and each
/// `<= hi`; the output holds exact `π(q)` (and `θ(q)` when `want_theta`)
/// per query. θ is accumulated per segment in doubles and merged
/// pairwise.
pub fn prime_count_pass(
    hi: u64,
    queries: &[u64],
    want_theta: bool,
    segment_numbers: u64,
) -> Result<PassOutput> {
    check_cap(2, hi)?;
    debug_assert!(queries.windows(2).all(|w| w[0] <= w[1]));
    let seg_span = segment_numbers.max(64) & !1; // even
    let base: Vec<u64> = small_primes(isqrt(hi)).into_iter().filter(|&p| p > 2).collect();

    if hi < 3 {
        let pi: Vec<u64> = queries.iter().map(|&q| u64::from(q >= 2)).collect();
        let theta = if want_theta {
            queries.iter().map(|&q| if q >= 2 { 2f64.ln() } else { 0.0 }).collect()
        } else {
            Vec::new()
        };
        let total_pi = u64::from(hi >= 2);
        let total_theta = if hi >= 2 { 2f64.ln() } else { 0.0 };
        return Ok(PassOutput { pi, theta, total_pi, total_theta });
    }

    let first = 3u64;
    let nseg = (hi - first + seg_span) / seg_span;
    let summaries: Vec<SegmentSummary> = (0..nseg)
        .into_par_iter()
        .map(|i| {
            let seg_lo = first + i * seg_span;
            let seg_hi = (seg_lo + seg_span - 1).min(hi); // inclusive
            let nbits = ((seg_hi - seg_lo) / 2 + 1) as usize;
            let mut words = vec![0u64; word_count(nbits)];
            strike_segment(&mut words, seg_lo, nbits, &base);

            // queries that land in this segment
            let qlo = queries.partition_point(|&q| q < seg_lo);
            let qhi = queries.partition_point(|&q| q <= seg_hi);

            let mut hits = Vec::with_capacity(qhi - qlo);
            let mut count = 0u64;
            let mut theta = 0.0f64;
            let mut partials: Vec<f64> = Vec::new();
            let mut widx = 0usize;
            let mut qi = qlo;
            let total_words = words.len();
            while widx < total_words {
                let bits_here = (nbits - widx * 64).min(64);
                let prime_mask = !words[widx] & mask_low(bits_here);
                // resolve queries whose bit limit falls inside this word
                // (the last word catches everything up to seg_hi)
                while qi < qhi {
                    let q = queries[qi];
                    let glb = ((q - seg_lo) / 2 + 1) as usize; // segment bits with number <= q
                    if glb > (widx + 1) * 64 && widx + 1 != total_words {
                        break;
                    }
                    let limit_bits = glb - widx * 64;
                    let m = prime_mask & mask_low(limit_bits);
                    let c_before = count + m.count_ones() as u64;
                    let t_before = if want_theta {
                        pairwise_sum(&partials) + theta_of_word(m, seg_lo, widx)
                    } else {
                        0.0
                    };
                    hits.push((qi, c_before, t_before));
                    qi += 1;
                }
                count += prime_mask.count_ones() as u64;
                if want_theta {
                    let t = theta_of_word(prime_mask, seg_lo, widx);
                    theta += t;
                    partials.push(t);
                }
                widx += 1;
            }
            let theta = if want_theta { pairwise_sum(&partials) } else { theta };
            SegmentSummary { count, theta, hits }
        })
        .collect();

    // merge in segment order
    let ln2 = 2f64.ln();
    let mut pi_out = vec![0u64; queries.len()];
    let mut theta_out = vec![0.0f64; if want_theta { queries.len() } else { 0 }];
    // queries below 3
    for (i, &q) in queries.iter().enumerate() {
        if q < first {
            pi_out[i] = u64::from(q >= 2);
            if want_theta && q >= 2 {
                theta_out[i] = ln2;
            }
        }
    }
    let seg_counts: Vec<u64> = summaries.iter().map(|s| s.count).collect();
    let mut cum = vec![0u64; summaries.len() + 1];
    for (i, c) in seg_counts.iter().enumerate() {
        cum[i + 1] = cum[i] + c;
    }
    let theta_tree = if want_theta {
        Some(PrefixTree::new(&summaries.iter().map(|s| s.theta).collect::<Vec<_>>()))
    } else {
        None
    };
    for (i, s) in summaries.iter().enumerate() {
        for &(qi, c_before, t_before) in &s.hits {
            pi_out[qi] = 1 + cum[i] + c_before; // +1 for the prime 2
            if let Some(tree) = &theta_tree {
                theta_out[qi] = ln2 + tree.prefix(i) + t_before;
            }
        }
    }
    let total_pi = 1 + cum[summaries.len()];
    let total_theta = if let Some(tree) = &theta_tree {
        ln2 + tree.prefix(summaries.len())
    } else {
        0.0
    };
    Ok(PassOutput { pi: pi_out, theta: theta_out, total_pi, total_theta })
}

#[inline]
fn mask_low(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

#[inline]
fn theta_of_word(mut prime_mask: u64, seg_lo: u64, widx: usize) -> f64 {
    let mut acc = 0.0;
    while prime_mask != 0 {
        let tz = prime_mask.trailing_zeros() as u64;
        let n = seg_lo + 2 * (widx as u64 * 64 + tz);
        acc += (n as f64).ln();
        prime_mask &= prime_mask - 1;
    }
    acc
}

/// Retained primality bitmap over `[lo, hi]` with O(1) rank queries.
/// `base_pi` must be π(lo − 1) so that [`WindowRank::pi`] reports
/// absolute counts.
pub struct WindowRank {
    lo: u64,
    hi: u64,
    base_pi: u64,
    origin: u64, // first odd covered, bit j = origin + 2j; 1 = prime
    words: Vec<u64>,
    nbits: usize,
    block_cum: Vec<u64>, // prime count before each BLOCK_WORDS block
    has_two: bool,
}

const BLOCK_WORDS: usize = 64;

impl WindowRank {
    pub fn build(lo: u64, hi: u64, base_pi: u64) -> Result<Self> {
        check_cap(lo, hi)?;
        assert!(lo >= 2 && lo <= hi);
        let origin = if lo <= 3 { 3 } else { lo | 1 };
        let nbits = if hi >= origin { ((hi - origin) / 2 + 1) as usize } else { 0 };
        let nwords = word_count(nbits);
        let mut words = vec![0u64; nwords];
        let base: Vec<u64> = small_primes(isqrt(hi)).into_iter().filter(|&p| p > 2).collect();

        // parallel fill: segments are word-aligned so slices are disjoint
        let words_per_seg = (DEFAULT_SEGMENT as usize / 128).max(1);
        words
            .par_chunks_mut(words_per_seg)
            .enumerate()
            .for_each(|(k, chunk)| {
                let bit0 = k * words_per_seg * 64;
                let seg_lo = origin + 2 * bit0 as u64;
                let seg_bits = (nbits - bit0).min(chunk.len() * 64);
                strike_segment(chunk, seg_lo, seg_bits, &base);
            });
        // flip to primality, mask tail, and clear base primes' own bits
        for w in words.iter_mut() {
            *w = !*w;
        }
        if nbits % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= mask_low(nbits % 64);
        }
        let mut rank = WindowRank {
            lo,
            hi,
            base_pi,
            origin,
            words,
            nbits,
            block_cum: Vec::new(),
            has_two: lo <= 2 && hi >= 2,
        };
        // windows starting at/below 3 must not report 1 or even composites;
        // the bitmap already covers only odds >= 3, nothing to fix.
        rank.rebuild_blocks();
        Ok(rank)
    }

    fn rebuild_blocks(&mut self) {
        let nblocks = self.words.len().div_ceil(BLOCK_WORDS);
        let mut cum = Vec::with_capacity(nblocks + 1);
        cum.push(0u64);
        let mut acc = 0u64;
        for b in 0..nblocks {
            let s = b * BLOCK_WORDS;
            let e = (s + BLOCK_WORDS).min(self.words.len());
            acc += self.words[s..e].iter().map(|w| w.count_ones() as u64).sum::<u64>();
            cum.push(acc);
        }
        self.block_cum = cum;
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n >= self.lo && n <= self.hi, "n={} outside window", n);
        if n == 2 {
            return true;
        }
        if n < 2 || n % 2 == 0 {
            return false;
        }
        let j = ((n - self.origin) / 2) as usize;
        self.words[j >> 6] >> (j & 63) & 1 == 1
    }

    /// Absolute π(n) for n inside the window.
    pub fn pi(&self, n: u64) -> u64 {
        assert!(n >= self.lo && n <= self.hi, "n={} outside window [{},{}]", n, self.lo, self.hi);
        let mut c = self.base_pi + u64::from(self.has_two && n >= 2);
        if n < self.origin {
            return c;
        }
        let bits = ((n - self.origin) / 2 + 1) as usize;
        let full_words = bits / 64;
        let full_blocks = full_words / BLOCK_WORDS;
        c += self.block_cum[full_blocks];
        for w in self.words[full_blocks * BLOCK_WORDS..full_words].iter() {
            c += w.count_ones() as u64;
        }
        let rem = bits % 64;
        if rem != 0 {
            c += (self.words[full_words] & mask_low(rem)).count_ones() as u64;
        }
        c
    }

    /// Ascending primes of the window intersected with `[from, to]`.
    pub fn primes_in(&self, from: u64, to: u64) -> PrimeIter<'_> {
        let from = from.max(self.lo);
        let to = to.min(self.hi);
        let start_bit = if from <= self.origin {
            0
        } else {
            ((from - self.origin).div_ceil(2)) as usize
        };
        let end_bit = if to < self.origin {
            0
        } else {
            (((to - self.origin) / 2) + 1) as usize
        };
        PrimeIter {
            rank: self,
            two_pending: self.has_two && from <= 2 && to >= 2,
            bit: start_bit,
            end_bit: end_bit.min(self.nbits),
        }
    }
}

pub struct PrimeIter<'a> {
    rank: &'a WindowRank,
    two_pending: bool,
    bit: usize,
    end_bit: usize,
}

impl Iterator for PrimeIter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.two_pending {
            self.two_pending = false;
            return Some(2);
        }
        while self.bit < self.end_bit {
            let widx = self.bit >> 6;
            let shift = self.bit & 63;
            let w = self.rank.words[widx] >> shift;
            if w == 0 {
                self.bit = (widx + 1) << 6;
                continue;
            }
            let tz = w.trailing_zeros() as usize;
            let j = self.bit + tz;
            if j >= self.end_bit {
                return None;
            }
            self.bit = j + 1;
            return Some(self.rank.origin + 2 * j as u64);
        }
        None
    }
}

/// Fully materialized ascending prime enumeration of `[lo, hi]`.
///
/// Intended for desk-scale ranges; the big scans use [`WindowRank`] or
/// [`prime_count_pass`] instead and never materialize. The cap guards
/// against accidental multi-gigabyte allocations.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    pub range_lo: u64,
    pub range_hi: u64,
    pub segment_size: u64,
    pub primes: Vec<u64>,
}

/// Complete, duplicate-free enumeration of the primes in `[lo, hi]`.
pub fn sieve_primes(lo: u64, hi: u64) -> Result<PrimeTable> {
    sieve_primes_with_segment(lo, hi, DEFAULT_SEGMENT)
}

pub fn sieve_primes_with_segment(lo: u64, hi: u64, segment_size: u64) -> Result<PrimeTable> {
    if lo < 2 || lo > hi {
        return Err(Error::domain(format!("need 2 <= lo <= hi, got [{lo}, {hi}]")));
    }
    check_cap(lo, hi)?;
    // density estimate guard against absurd materializations
    let est = ((hi - lo) as f64 / ((hi.max(3) as f64).ln()) * 1.2) as u64 + 64;
    if est > 300_000_000 {
        return Err(Error::Capacity { lo, hi, cap: RANGE_CAP });
    }
    let seg = segment_size.max(64);
    let rank = WindowRank::build(lo, hi, 0)?;
    let mut primes = Vec::with_capacity(est as usize);
    primes.extend(rank.primes_in(lo, hi));
    let _ = seg;
    Ok(PrimeTable { range_lo: lo, range_hi: hi, segment_size: seg, primes })
}

impl PrimeTable {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Number of table primes ≤ x.
    pub fn count_below(&self, x: u64) -> u64 {
        self.primes.partition_point(|&p| p <= x) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn textbook_enumeration() {
        let t = sieve_primes(2, 30).unwrap();
        assert_eq!(t.primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn empty_range() {
        let t = sieve_primes(10, 10).unwrap();
        assert!(t.primes.is_empty());
    }

    #[test]
    fn oracle_equivalence_small() {
        let t = sieve_primes(2, 20_000).unwrap();
        let reference: Vec<u64> = (2..=20_000).filter(|&n| trial_is_prime(n)).collect();
        assert_eq!(t.primes, reference);
    }

    #[test]
    fn segment_size_independence() {
        let expect = sieve_primes_with_segment(2, 100_000, DEFAULT_SEGMENT).unwrap().primes;
        for seg in [64, 100, 4096, 1 << 18] {
            let got = sieve_primes_with_segment(2, 100_000, seg).unwrap().primes;
            assert_eq!(got, expect, "segment size {}", seg);
        }
    }

    #[test]
    fn window_rank_matches_pass() {
        let queries: Vec<u64> = vec![2, 3, 4, 10, 97, 1000, 9999, 10_000];
        let pass = prime_count_pass(10_000, &queries, false, 1 << 14).unwrap();
        let rank = WindowRank::build(2, 10_000, 0).unwrap();
        for (i, &q) in queries.iter().enumerate() {
            assert_eq!(pass.pi[i], rank.pi(q), "pi({})", q);
        }
        assert_eq!(pass.total_pi, 1229);
    }

    #[test]
    fn offset_window() {
        // window not starting at 2: base_pi supplied
        let pass = prime_count_pass(1_000, &[499], false, 1 << 14).unwrap();
        let rank = WindowRank::build(500, 1_000, pass.pi[0]).unwrap();
        assert_eq!(rank.pi(1_000), 168);
        let primes: Vec<u64> = rank.primes_in(500, 550).collect();
        assert_eq!(primes, vec![503, 509, 521, 523, 541, 547]);
    }

    #[test]
    fn capacity_error() {
        assert!(matches!(
            sieve_primes(2, RANGE_CAP + 1),
            Err(Error::Capacity { .. })
        ));
    }
}
