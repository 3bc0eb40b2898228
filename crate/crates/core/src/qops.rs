//! Functional q-operators acting on caller-supplied functions: the
//! q-difference operator, the Jackson integral on `[0, a]` and the
//! q-Laplace transform.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::series::sum_grid_series;
use crate::qcore::{pochhammer_inf, EvalResult, QBase, Truncation};

/// A function `ℂ → ℂ` sampled by the operators in this module.
///
/// Implementations must be deterministic. Plain closures returning
/// [`Complex64`] implement this directly; wrap fallible closures in
/// [`TryFn`].
pub trait ScalarFunction {
    fn eval(&self, z: Complex64) -> Result<Complex64>;
}

impl<F> ScalarFunction for F
where
    F: Fn(Complex64) -> Complex64,
{
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self(z))
    }
}

/// Adapter for closures that can fail.
pub struct TryFn<F>(pub F);

impl<F> ScalarFunction for TryFn<F>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        (self.0)(z)
    }
}

/// Step used to approach `u = 0`, where `D_q` is only defined as a limit.
const ORIGIN_STEP: f64 = 1e-6;

fn difference_table<F: ScalarFunction + ?Sized>(f: &F, u: Complex64, q: QBase, m: u32) -> Result<Complex64> {
    let qv = q.value();
    // samples f(u q^k) for k = 0..=m, then m rounds of q-differencing
    let mut points = Vec::with_capacity(m as usize + 1);
    let mut x = u;
    for _ in 0..=m {
        points.push(x);
        x *= qv;
    }
    let mut vals = points.iter().map(|&p| f.eval(p)).collect::<Result<Vec<_>>>()?;
    for round in 0..m as usize {
        for k in 0..vals.len() - 1 - round {
            vals[k] = (vals[k] - vals[k + 1]) / (points[k] * (1.0 - qv));
        }
    }
    Ok(vals[0])
}

/// The m-fold q-derivative `D_q^m f(u)`, `D_q f(u) = (f(u) - f(qu)) / (u(1-q))`.
///
/// At `u = 0` the limit is taken by linear extrapolation from the points
/// `h` and `hq` with `h = 1e-6`.
pub fn q_derivative<F: ScalarFunction + ?Sized>(f: &F, u: Complex64, q: QBase, m: u32) -> Result<Complex64> {
    if m < 1 {
        return Err(QError::InvalidArgument("q-derivative order must be at least 1".into()));
    }
    if u.norm() != 0.0 {
        return difference_table(f, u, q, m);
    }
    let qv = q.value();
    let h = Complex64::new(ORIGIN_STEP, 0.0);
    let far = difference_table(f, h, q, m)?;
    let near = difference_table(f, h * qv, q, m)?;
    Ok((near - far * qv) / (1.0 - qv))
}

/// The Jackson q-integral `∫_0^a f(t) d_q t = a(1-q) Σ_{m≥0} q^m f(a q^m)`.
pub fn jackson_integral<F: ScalarFunction + ?Sized>(f: &F, a: f64, q: QBase, trunc: &Truncation) -> Result<EvalResult> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(QError::InvalidArgument(format!("upper limit must be positive, got {a}")));
    }
    let qv = q.value();
    let weight = a * (1.0 - qv);
    let mut qm = 1.0;
    sum_grid_series(trunc, qv, |_| {
        let t = f.eval(Complex64::new(a * qm, 0.0))? * (weight * qm);
        qm *= qv;
        Ok(t)
    })
}

/// The q-Laplace transform in series form,
/// `qL_s{f} = ((q;q)_∞ / s) Σ_j q^j f(q^j / s) / (q;q)_j`, for `Re s > 0`.
pub fn q_laplace<F: ScalarFunction + ?Sized>(f: &F, s: Complex64, q: QBase, trunc: &Truncation) -> Result<EvalResult> {
    if !(s.re > 0.0) {
        return Err(QError::InvalidArgument(format!("q-Laplace transform needs Re(s) > 0, got {s}")));
    }
    let qv = q.value();
    let inv_s = 1.0 / s;
    // (q;q)_∞ / (q;q)_j = (q^{j+1};q)_∞
    let mut tail_product = pochhammer_inf(Complex64::new(qv, 0.0), q)?;
    let mut qj = 1.0;
    sum_grid_series(trunc, qv, |_| {
        let t = f.eval(inv_s * qj)? * tail_product * qj * inv_s;
        qj *= qv;
        tail_product /= 1.0 - qj;
        Ok(t)
    })
}
