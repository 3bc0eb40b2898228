use num_complex::Complex64;

use super::params::{EvalResult, QBase, Truncation};
use super::series::sum_ratio_series;
use crate::error::{QError, Result};

/// The two q-exponentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpKind {
    /// `E_q^u = Σ q^{m(m-1)/2} u^m / (q;q)_m = (-u;q)_∞`, entire in `u`.
    Big,
    /// `e_q^u = Σ u^m / (q;q)_m = 1 / (u;q)_∞`, for `|u| < 1`.
    Small,
}

/// Series evaluation of a q-exponential.
pub fn q_exponential(u: Complex64, q: QBase, kind: ExpKind, trunc: &Truncation) -> Result<EvalResult> {
    if kind == ExpKind::Small && u.norm() >= 1.0 {
        return Err(QError::DomainError(format!("small q-exponential needs |u| < 1, got |u| = {}", u.norm())));
    }
    if u.norm() == 0.0 {
        return Ok(EvalResult { value: Complex64::new(1.0, 0.0), terms_used: 1, tail_estimate: 0.0, converged: true });
    }
    let qv = q.value();
    let limit = match kind {
        ExpKind::Big => 0.0,
        ExpKind::Small => u.norm(),
    };
    let mut term = Complex64::new(1.0, 0.0);
    let mut qm = 1.0;
    sum_ratio_series(trunc, limit, |m| {
        if m > 0 {
            // t_m = t_{m-1} · w u / (1 - q^m), w = q^{m-1} for the big kind
            let w = if kind == ExpKind::Big { qm } else { 1.0 };
            qm *= qv;
            term *= u * w / (1.0 - qm);
        }
        Ok(term)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{q_pochhammer, Order};

    fn q(v: f64) -> QBase {
        QBase::new(v).unwrap()
    }

    #[test]
    fn value_at_zero() {
        let t = Truncation::default();
        for kind in [ExpKind::Big, ExpKind::Small] {
            let r = q_exponential(Complex64::new(0.0, 0.0), q(0.4), kind, &t).unwrap();
            assert_eq!(r.value, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn small_kind_domain() {
        let t = Truncation::default();
        let r = q_exponential(Complex64::new(1.0, 0.0), q(0.4), ExpKind::Small, &t);
        assert!(matches!(r, Err(QError::DomainError(_))));
        assert!(q_exponential(Complex64::new(3.0, 0.0), q(0.4), ExpKind::Big, &t).is_ok());
    }

    #[test]
    fn big_kind_matches_product() {
        let t = Truncation::default();
        let u = Complex64::new(0.5, 0.0);
        let series = q_exponential(u, q(0.5), ExpKind::Big, &t).unwrap().value;
        let product = q_pochhammer(-u, q(0.5), Order::Infinite, &t).unwrap().value;
        assert!((series - product).norm() < 1e-14);
    }
}
