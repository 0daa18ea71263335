fn main() {
    let t0 = std::time::Instant::now();
    let out = explicit_pnt::sieve::prime_count_pass(1_000_000_000, &[1_000_000_000], false, 1 << 22).unwrap();
    println!("pi(1e9) = {} in {:?}", out.total_pi, t0.elapsed());
    let t0 = std::time::Instant::now();
    let out = explicit_pnt::sieve::prime_count_pass(10_000_000_000, &[10_000_000_000], false, 1 << 22).unwrap();
    println!("pi(1e10) = {} in {:?}", out.total_pi, t0.elapsed());
}
