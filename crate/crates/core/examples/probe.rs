use explicit_pnt::ramanujan::*;
fn main() {
    // max f over jump points in candidate stretches
    for (lo, hi) in [(5_500_000u64, 5_950_000u64), (9_850_000, 9_990_000)] {
        let win = build_dual_window(lo, hi).unwrap();
        let mut max_f = f64::NEG_INFINITY;
        let mut steps = 0u64;
        let mut x = lo;
        while x <= hi {
            let ev = f_exact(x as f64, &win).unwrap();
            if ev.f_value.1 > max_f { max_f = ev.f_value.1; }
            x += 997;
            steps += 1;
        }
        println!("[{lo},{hi}]: max f on {} samples = {max_f:.3e}", steps);
    }
}
