//! Adaptive Simpson quadrature with an absolute error budget.
//!
//! A minimum subdivision width is enforced before the error estimate is
//! trusted, so oscillatory integrands cannot alias a panel into false
//! convergence.

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

struct State<'a, F> {
    f: &'a F,
    max_width: f64,
    evals: u64,
    err: f64,
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn recurse<F: Fn(f64) -> f64>(
    st: &mut State<'_, F>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = (st.f)(lm);
    let frm = (st.f)(rm);
    st.evals += 2;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    let width_ok = (b - a) <= st.max_width;
    if depth == 0 || (width_ok && delta.abs() <= 15.0 * tol) {
        st.err += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    recurse(st, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + recurse(st, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// ∫_a^b f, absolute tolerance `tol`. `max_width` caps the panel width
/// below which the Richardson estimate is trusted.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_width: f64) -> Quadrature {
    if a == b {
        return Quadrature { value: 0.0, error_estimate: 0.0, evaluations: 0 };
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let mut st = State { f: &f, max_width, evals: 3, err: 0.0 };
    let whole = simpson(fa, fm, fb, b - a);
    let value = recurse(&mut st, a, b, fa, fm, fb, whole, tol, 52);
    Quadrature { value, error_estimate: st.err, evaluations: st.evals }
}

/// Composite Simpson with 2n panels; the independent cross-check used
/// by the halving-step verifications.
pub fn simpson_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n2 = 2 * n.max(1);
    let h = (b - a) / n2 as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n2 {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}
