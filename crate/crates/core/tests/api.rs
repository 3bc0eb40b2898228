use num_complex::Complex64;
use qmittag::kober::{kober_i_extended, kober_integral_direct, kober_image_power, ImageKind, KoberParams};
use qmittag::qcore::{q_exponential, q_gamma, ExpKind};
use qmittag::qml::{
    convergence_radius, ml_classical, q_ml_extended, q_ml_prabhakar, q_mittag_leffler, ClassicalMLParams,
    ExtendedMLParams,
};
use qmittag::{QBase, QError, Truncation};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn gamma_at_integers() {
    let q = QBase::new(0.5).unwrap();
    assert!((q_gamma(c(3.0), q).unwrap().re - 1.5).abs() < 1e-14);
    assert!(matches!(q_gamma(c(0.0), q), Err(QError::PoleError(_))));
    assert!(matches!(q_gamma(c(-2.0), q), Err(QError::PoleError(_))));
}

#[test]
fn mittag_leffler_one_one_is_small_exponential() {
    let q = QBase::new(0.4).unwrap();
    let t = Truncation::default();
    for u in [-1.2, -0.3, 0.5, 1.5] {
        let ml = q_mittag_leffler(c(u), 1.0, c(1.0), q, &t).unwrap();
        let e = q_exponential(c((1.0 - 0.4) * u), q, ExpKind::Small, &t).unwrap();
        assert!(ml.converged);
        assert!((ml.value - e.value).norm() < 1e-13 * e.value.norm());
    }
}

#[test]
fn classical_exponential() {
    let p = ClassicalMLParams::two_parameter(c(1.0), c(1.0)).unwrap();
    let v = ml_classical(Complex64::new(1.0, 2.0), &p, &Truncation::default()).unwrap();
    assert!((v.value - Complex64::new(1.0, 2.0).exp()).norm() < 1e-13);
}

#[test]
fn extended_refuses_outside_disk() {
    let q = QBase::new(0.5).unwrap();
    let r = convergence_radius(1.0, q);
    assert!((r - 2.0).abs() < 1e-12);
    let p = ExtendedMLParams::new(1.0, c(1.0), c(0.5), c(1.5)).unwrap();
    let t = Truncation::default();
    assert!(q_ml_extended(c(0.99 * r), &p, q, &t).is_ok());
    assert!(matches!(q_ml_extended(c(1.01 * r), &p, q, &t), Err(QError::DomainError(_))));
    assert!(matches!(q_ml_extended(Complex64::new(0.0, 1.01 * r), &p, q, &t), Err(QError::DomainError(_))));
}

#[test]
fn extended_parameter_checks() {
    assert!(ExtendedMLParams::new(0.0, c(1.0), c(0.5), c(1.5)).is_err());
    assert!(ExtendedMLParams::new(1.0, c(1.0), c(1.5), c(1.5)).is_err());
    assert!(ExtendedMLParams::new(1.0, c(-1.0), c(0.5), c(1.5)).is_err());
    assert!(ExtendedMLParams::new(1.0, c(1.0), c(-0.5), c(1.5)).is_err());
}

#[test]
fn extended_with_unit_c_is_prabhakar() {
    let q = QBase::new(0.3).unwrap();
    let t = Truncation::default();
    let p = ExtendedMLParams::new(1.5, c(0.7), c(0.4), c(1.0)).unwrap();
    let u = Complex64::new(0.4, -0.3);
    let e = q_ml_extended(u, &p, q, &t).unwrap().value;
    let pr = q_ml_prabhakar(u, 1.5, c(0.7), c(0.4), q, &t).unwrap().value;
    assert!((e - pr).norm() < 1e-13);
}

#[test]
fn kober_quadrature_matches_termwise_image() {
    let q = QBase::new(0.6).unwrap();
    let t = Truncation::default();
    let k = KoberParams::new(c(0.3), c(1.2)).unwrap();
    let u = 0.8;
    let direct = kober_integral_direct(&|z: Complex64| z.powu(2), u, &k, q, &t).unwrap();
    let image = kober_image_power(2, &k, q, ImageKind::Integral).unwrap() * u * u;
    assert!((direct.value - image).norm() < 1e-12);
}

#[test]
fn kober_of_extended_at_origin() {
    let q = QBase::new(0.5).unwrap();
    let p = ExtendedMLParams::new(1.0, c(1.0), c(0.5), c(1.5)).unwrap();
    let k = KoberParams::new(c(0.2), c(0.7)).unwrap();
    let v = kober_i_extended(c(0.0), &p, &k, q, &Truncation::default()).unwrap();
    let expect = kober_image_power(0, &k, q, ImageKind::Integral).unwrap() / q_gamma(c(1.0), q).unwrap();
    assert!((v.value - expect).norm() < 1e-14);
}

#[test]
fn starved_budget_is_reported() {
    let q = QBase::new(0.5).unwrap();
    let t = Truncation::new(1e-14, 1e-14, 4).unwrap();
    let r = q_mittag_leffler(c(1.9), 1.0, c(1.0), q, &t);
    assert!(matches!(r, Err(QError::NonConvergence { .. })));
}
