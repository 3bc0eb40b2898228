//! Seeded randomized checks of the identities satisfied by the library.
//!
//! Every identity draws its parameters from its own ChaCha8 stream, so a
//! record depends only on the seed, the identity and the trial count. Errors
//! are measured as `|a - b| / max(1, |b|)` unless an identity says otherwise.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::kober::{kober_d_extended, kober_i_extended, kober_image_series, kober_integral_direct, ImageKind, KoberParams};
use crate::qcore::{q_beta, q_gamma, q_number, q_pochhammer, q_rgamma, Order, QBase, Truncation};
use crate::qml::{
    beta_ratio, beta_weighted_integral, convergence_radius, derivative_closed_form, integral_representation,
    laplace_closed_form, ml_classical, q_mittag_leffler, q_ml_extended, q_ml_prabhakar, recurrence_rhs,
    series_term_ratio, ClassicalMLParams, ExtendedMLParams, SeriesEvaluator,
};
use crate::qops::{jackson_integral, q_derivative, q_laplace, TryFn};

/// Outcome of one identity over a batch of trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: String,
    pub trials: usize,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// First evaluation error hit, if any trial could not be evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub records: Vec<IdentityRecord>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{:<4} {:<40} trials={:<5} max_abs_error={:.3e} tolerance={:.1e}",
                if r.pass { "PASS" } else { "FAIL" },
                r.id,
                r.trials,
                r.max_abs_error,
                r.tolerance
            ));
            if let Some(f) = &r.failure {
                out.push_str(&format!(" error=\"{f}\""));
            }
            out.push('\n');
        }
        let passed = self.records.iter().filter(|r| r.pass).count();
        out.push_str(&format!("{passed}/{} identities passed (seed {})\n", self.records.len(), self.seed));
        out
    }
}

/// Parameter sampler handed to each check.
pub struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    fn uni(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    fn cx(&mut self, lo: f64, hi: f64, im: f64) -> Complex64 {
        let re = self.uni(lo, hi);
        Complex64::new(re, if im > 0.0 { self.uni(-im, im) } else { 0.0 })
    }

    /// Uniform point in the disk of radius `r`.
    fn disk(&mut self, r: f64) -> Complex64 {
        let rad = r * self.uni(0.0, 1.0).sqrt();
        Complex64::from_polar(rad, self.uni(-std::f64::consts::PI, std::f64::consts::PI))
    }

    fn q(&mut self, lo: f64, hi: f64) -> QBase {
        QBase::new(self.uni(lo, hi)).expect("sampled q inside (0,1)")
    }

    fn pick<T: Copy>(&mut self, xs: &[T]) -> T {
        xs[self.rng.gen_range(0..xs.len())]
    }

    fn extended(&mut self, im: f64) -> ExtendedMLParams {
        let eta = self.uni(0.5, 2.0);
        let kappa = self.cx(0.5, 2.5, im);
        let sigma = self.cx(0.2, 1.5, im);
        let c = sigma + self.cx(0.3, 1.5, im);
        ExtendedMLParams::new(eta, kappa, sigma, c).expect("sampled parameters are valid")
    }
}

/// A named randomized check. `check` returns the error of one trial.
pub struct Identity {
    pub id: &'static str,
    pub tolerance: f64,
    pub default_trials: usize,
    check: fn(&mut Draw, &Truncation) -> Result<f64>,
}

fn dev(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn functional_equation(d: &mut Draw, _: &Truncation) -> Result<f64> {
    let u = c(d.uni(0.0, 5.0));
    let q = QBase::new(d.pick(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]))?;
    let lhs = q_gamma(u + 1.0, q)?;
    Ok((lhs - q_number(u, q) * q_gamma(u, q)?).norm() / lhs.norm())
}

fn beta_duality(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let (eta, kappa) = (d.cx(0.3, 3.0, 0.5), d.cx(0.3, 3.0, 0.5));
    let q = d.q(0.1, 0.9);
    let qv = q.value();
    let f = TryFn(|x: Complex64| Ok(x.powc(eta - 1.0) * q_pochhammer(x * qv, q, Order::Complex(kappa - 1.0), t)?.value));
    Ok(dev(jackson_integral(&f, 1.0, q, t)?.value, q_beta(eta, kappa, q)?))
}

fn beta_ratio_paths(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let sigma = d.cx(0.1, 2.0, 0.5);
    let cc = sigma + d.cx(0.1, 2.0, 0.5);
    let q = d.q(0.1, 0.9);
    let mut worst = 0.0f64;
    for m in 0..=30 {
        let num = q_pochhammer(q.pow(sigma), q, Order::Finite(m), t)?.value;
        let den = q_pochhammer(q.pow(cc), q, Order::Finite(m), t)?.value;
        worst = worst.max(dev(beta_ratio(sigma, cc, m, q)?, num / den));
    }
    Ok(worst)
}

fn inside(d: &mut Draw, eta: f64, q: QBase, frac: f64) -> Complex64 {
    d.disk(frac * convergence_radius(eta, q))
}

fn reduction_prabhakar(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let p = p.with_sigma_c(c(d.uni(0.1, 0.9)) + Complex64::new(0.0, d.uni(-0.3, 0.3)), c(1.0))?;
    let q = d.q(0.1, 0.9);
    let u = inside(d, p.eta(), q, 0.9);
    let a = q_ml_extended(u, &p, q, t)?.value;
    Ok(dev(a, q_ml_prabhakar(u, p.eta(), p.kappa(), p.sigma(), q, t)?.value))
}

fn reduction_mittag_leffler(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let p = p.with_sigma_c(c(1.0), c(1.0) + d.cx(0.2, 2.0, 0.3))?;
    let q = d.q(0.1, 0.9);
    let u = inside(d, p.eta(), q, 0.9);
    let a = q_ml_extended(u, &p, q, t)?.value;
    let b = q_mittag_leffler(u, p.eta(), p.kappa(), q, t)?.value;
    Ok(dev(a, b))
}

fn case_iii_draw(d: &mut Draw) -> Result<(ExtendedMLParams, QBase, Complex64)> {
    let p = ExtendedMLParams::new(1.0, c(1.0), c(1.0), d.cx(1.2, 3.0, 0.3))?;
    let q = d.q(0.1, 0.9);
    Ok((p, q, d.disk(0.9)))
}

fn case_iii_binomial(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let (p, q, u) = case_iii_draw(d)?;
    let closed = q_pochhammer(q.pow(p.c()) * u, q, Order::Infinite, t)?.value
        / q_pochhammer(u, q, Order::Infinite, t)?.value;
    Ok(dev(q_ml_extended(u, &p, q, t)?.value, closed))
}

fn case_iii_exponential(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let (p, q, u) = case_iii_draw(d)?;
    let closed = 1.0 / q_pochhammer((1.0 - q.value()) * u, q, Order::Infinite, t)?.value;
    Ok(dev(q_ml_extended(u, &p, q, t)?.value, closed))
}

fn case_iii_phi_series(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let (p, q, u) = case_iii_draw(d)?;
    let closed = q_pochhammer(q.pow(p.c()) * u, q, Order::Infinite, t)?.value
        / q_pochhammer(u, q, Order::Infinite, t)?.value;
    // Σ (q^c;q)_m u^m / (q;q)_m by its term recurrence
    let (mut term, mut sum) = (c(1.0), c(1.0));
    for m in 0..t.max_terms() {
        term *= q.one_minus_pow(p.c() + m as f64) / q.one_minus_powf(m as f64 + 1.0) * u;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    Ok(dev(sum, closed))
}

fn recurrence_draw(d: &mut Draw) -> (ExtendedMLParams, QBase, Complex64) {
    let p = d.extended(0.3);
    let q = d.q(0.1, 0.9);
    let u = inside(d, p.eta(), q, 0.8);
    (p, q, u)
}

fn recurrence(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let (p, q, u) = recurrence_draw(d);
    Ok(dev(recurrence_rhs(u, &p, q, t)?.value, q_ml_extended(u, &p, q, t)?.value))
}

fn recurrence_sigma_power(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let (p, q, u) = recurrence_draw(d);
    let shifted = p.with_sigma_c(p.sigma() + 1.0, p.c() + 1.0)?;
    let a = q_ml_extended(u, &shifted, q, t)?.value;
    let b = q_ml_extended(u, &shifted.with_kappa(p.kappa() + p.eta())?, q, t)?.value;
    Ok(dev(a - u * q.pow(p.sigma()) * b, q_ml_extended(u, &p, q, t)?.value))
}

fn integral_rep(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let q = d.q(0.2, 0.8);
    let u = inside(d, p.eta(), q, 0.8);
    Ok(dev(integral_representation(u, &p, q, t)?.value, q_ml_extended(u, &p, q, t)?.value))
}

fn derivative(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let q = d.q(0.2, 0.8);
    let u = d.uni(0.1, 1.0);
    let lambda = inside(d, p.eta(), q, 0.8);
    let m = d.pick(&[1u32, 2, 3]);
    let bound = lambda.norm() * u.powf(p.eta());
    let series = SeriesEvaluator::extended(&p, q, bound, t)?;
    let (eta, kappa) = (p.eta(), p.kappa());
    let f = TryFn(|x: Complex64| Ok(x.powc(kappa - 1.0) * series.eval(lambda * x.powf(eta))?));
    let numeric = q_derivative(&f, c(u), q, m)?;
    Ok(dev(numeric, derivative_closed_form(c(u), lambda, &p, m, q, t)?.value))
}

fn beta_weighted(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let q = d.q(0.2, 0.8);
    let x = inside(d, p.eta(), q, 0.8);
    let (xi, zeta, rho) = (d.cx(0.3, 2.5, 0.3), d.cx(0.3, 2.5, 0.3), d.uni(0.5, 2.0));
    let series = SeriesEvaluator::extended(&p, q, x.norm(), t)?;
    let qv = q.value();
    let f = TryFn(|v: Complex64| {
        let kernel = q_pochhammer(v * qv, q, Order::Complex(zeta - 1.0), t)?.value;
        Ok(v.powc(xi - 1.0) * kernel * series.eval(x * v.powf(rho))?)
    });
    let quad = jackson_integral(&f, 1.0, q, t)?.value;
    Ok(dev(quad, beta_weighted_integral(x, xi, zeta, rho, &p, q, t)?.value))
}

fn beta_weighted_special(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let q = d.q(0.1, 0.9);
    let x = inside(d, p.eta(), q, 0.8);
    let zeta = d.cx(0.3, 2.5, 0.3);
    let series = beta_weighted_integral(x, p.kappa(), zeta, p.eta(), &p, q, t)?.value;
    let closed = q_gamma(zeta, q)? * q_ml_extended(x, &p.with_kappa(p.kappa() + zeta)?, q, t)?.value;
    Ok(dev(series, closed))
}

fn laplace(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let q = d.q(0.2, 0.8);
    let s = d.cx(1.0, 5.0, 2.0);
    let rho = d.uni(0.5, 2.0);
    let reach = 0.8 * convergence_radius(p.eta(), q) * s.norm().powf(rho);
    let x = d.disk(reach);
    let series = SeriesEvaluator::extended(&p, q, x.norm() / s.norm().powf(rho), t)?;
    let f = TryFn(|v: Complex64| series.eval(x * v.powf(rho)));
    let direct = q_laplace(&f, s, q, t)?.value;
    Ok(dev(direct, laplace_closed_form(x, rho, s, &p, q, t)?.value))
}

fn laplace_unit(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let s = d.cx(0.5, 5.0, 2.0);
    let q = d.q(0.1, 0.9);
    let one = |_: Complex64| c(1.0);
    Ok(dev(q_laplace(&one, s, q, t)?.value, 1.0 / s))
}

fn kober_monomials(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let k = KoberParams::new(d.cx(-0.5, 1.5, 0.3), d.cx(0.3, 2.0, 0.3))?;
    let q = d.q(0.2, 0.8);
    let u = d.uni(0.2, 2.0);
    let mut worst = 0.0f64;
    for m in 0..=5 {
        let f = move |x: Complex64| x.powi(m);
        let quad = kober_integral_direct(&f, u, &k, q, t)?.value;
        let image = crate::kober::kober_image_power(m as u32, &k, q, ImageKind::Integral)? * u.powi(m);
        worst = worst.max(dev(quad, image));
    }
    Ok(worst)
}

fn gamma_ratio(a: Complex64, b: Complex64, q: QBase) -> Result<Complex64> {
    Ok(q_gamma(a, q)? * q_rgamma(b, q)?)
}

fn kober_special_integral(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let nu = d.uni(-0.9, -0.1);
    let mu = d.uni(0.1 - nu, 0.9 - nu);
    let p = d.extended(0.0).with_sigma_c(c(nu + mu), c(1.0))?;
    let k = KoberParams::new(c(nu), c(mu))?;
    let q = d.q(0.2, 0.8);
    let u = inside(d, p.eta(), q, 0.8);
    let rhs = gamma_ratio(c(nu + 1.0), c(nu + mu + 1.0), q)?
        * q_ml_extended(u, &p.with_sigma_c(c(nu + 1.0), c(1.0))?, q, t)?.value;
    Ok(dev(kober_i_extended(u, &p, &k, q, t)?.value, rhs))
}

fn kober_special_integral_shifted(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let nu = d.uni(-0.9, -0.2);
    let mu = d.uni((-0.85 - nu).max(0.05), -nu - 0.05);
    let p = d.extended(0.0).with_sigma_c(c(nu + mu + 1.0), c(1.0))?;
    let k = KoberParams::new(c(nu), c(mu))?;
    let q = d.q(0.2, 0.8);
    let u = inside(d, p.eta(), q, 0.8);
    let rhs = gamma_ratio(c(nu + 1.0), c(nu + mu + 1.0), q)?
        * q_ml_extended(u, &p.with_sigma_c(c(nu + 1.0), c(1.0))?, q, t)?.value;
    Ok(dev(kober_i_extended(u, &p, &k, q, t)?.value, rhs))
}

fn kober_special_derivative_draw(d: &mut Draw, mu_lo: f64) -> Result<(ExtendedMLParams, KoberParams, QBase, Complex64)> {
    let nu = d.uni(-0.9, -0.1);
    let mu = d.uni(mu_lo.max(-nu) + 0.1, mu_lo.max(-nu) + 1.5);
    let p = d.extended(0.0).with_sigma_c(c(nu + 1.0), c(1.0))?;
    let q = d.q(0.2, 0.8);
    let u = inside(d, p.eta(), q, 0.8);
    Ok((p, KoberParams::new(c(nu), c(mu))?, q, u))
}

fn kober_special_derivative(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let (p, k, q, u) = kober_special_derivative_draw(d, 0.0)?;
    let (nu, mu) = (k.nu(), k.mu());
    let rhs = gamma_ratio(nu + mu + 1.0, nu + 1.0, q)? * q_ml_prabhakar(u, p.eta(), p.kappa(), nu + mu, q, t)?.value;
    Ok(dev(kober_d_extended(u, &p, &k, q, t)?.value, rhs))
}

fn kober_special_derivative_shifted(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let (p, k, q, u) = kober_special_derivative_draw(d, 0.0)?;
    let (nu, mu) = (k.nu(), k.mu());
    let rhs = gamma_ratio(nu + mu + 1.0, nu + 1.0, q)?
        * q_ml_prabhakar(u, p.eta(), p.kappa(), nu + mu + 1.0, q, t)?.value;
    Ok(dev(kober_d_extended(u, &p, &k, q, t)?.value, rhs))
}

fn kober_inversion(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let k = KoberParams::new(d.cx(-0.5, 1.5, 0.3), d.cx(0.0, 2.0, 0.3))?;
    let q = d.q(0.1, 0.9);
    let u = inside(d, p.eta(), q, 0.8);
    let series = SeriesEvaluator::extended(&p, q, u.norm(), t)?;
    let img = kober_image_series(series.coefficients(), &k, q, ImageKind::Integral)?;
    let back = kober_image_series(&img, &k, q, ImageKind::Derivative)?;
    let value = back.iter().rev().fold(c(0.0), |acc, a| acc * u + a);
    Ok(dev(value, q_ml_extended(u, &p, q, t)?.value))
}

fn convergence_ratio(d: &mut Draw, _: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let q = d.q(0.1, 0.8);
    let r = convergence_radius(p.eta(), q);
    let u = Complex64::from_polar(0.5 * r, d.uni(-3.0, 3.0));
    Ok((series_term_ratio(u, &p, q, 40)? / 0.5 - 1.0).abs())
}

fn domain_refusal(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let p = d.extended(0.3);
    let q = d.q(0.1, 0.9);
    let r = convergence_radius(p.eta(), q);
    let u = Complex64::from_polar(r * d.pick(&[1.0, 1.0 + 1e-9, 1.02, 1.5, 3.0]), d.uni(-3.0, 3.0));
    Ok(match q_ml_extended(u, &p, q, t) {
        Err(QError::DomainError(_)) => 0.0,
        _ => 1.0,
    })
}

fn classical_limit(d: &mut Draw, t: &Truncation) -> Result<f64> {
    let eta = d.pick(&[0.5, 1.0, 2.0]);
    let u = d.disk(0.5);
    let q = QBase::new(0.999)?;
    let a = q_mittag_leffler(u, eta, c(1.0), q, t)?.value;
    let b = ml_classical(u, &ClassicalMLParams::two_parameter(c(eta), c(1.0))?, t)?.value;
    Ok(dev(a, b))
}

macro_rules! identity {
    ($id:literal, $tol:expr, $n:expr, $f:ident) => {
        Identity { id: $id, tolerance: $tol, default_trials: $n, check: $f }
    };
}

static IDENTITIES: &[Identity] = &[
    identity!("gamma_functional_equation", 1e-12, 1000, functional_equation),
    identity!("beta_jackson_integral", 1e-8, 200, beta_duality),
    identity!("beta_ratio_pochhammer", 1e-11, 200, beta_ratio_paths),
    identity!("reduction_c1_prabhakar", 1e-12, 200, reduction_prabhakar),
    identity!("reduction_sigma1_mittag_leffler", 1e-12, 200, reduction_mittag_leffler),
    identity!("case_iii_q_binomial_closed_form", 1e-10, 200, case_iii_binomial),
    identity!("case_iii_exponential_closed_form", 1e-10, 200, case_iii_exponential),
    identity!("case_iii_phi_series_closed_form", 1e-10, 200, case_iii_phi_series),
    identity!("recurrence", 1e-10, 500, recurrence),
    identity!("recurrence_sigma_power", 1e-10, 500, recurrence_sigma_power),
    identity!("integral_representation", 1e-6, 100, integral_rep),
    identity!("derivative_closed_form", 1e-6, 100, derivative),
    identity!("beta_weighted_quadrature", 1e-6, 100, beta_weighted),
    identity!("beta_weighted_special_case", 1e-10, 100, beta_weighted_special),
    identity!("laplace_closed_form", 1e-6, 100, laplace),
    identity!("laplace_unit", 1e-10, 100, laplace_unit),
    identity!("kober_monomial_quadrature", 1e-8, 100, kober_monomials),
    identity!("kober_integral_special_case", 1e-10, 100, kober_special_integral),
    identity!("kober_integral_special_case_shifted", 1e-10, 100, kober_special_integral_shifted),
    identity!("kober_derivative_special_case", 1e-10, 100, kober_special_derivative),
    identity!("kober_derivative_special_case_shifted", 1e-10, 100, kober_special_derivative_shifted),
    identity!("kober_inversion", 1e-9, 100, kober_inversion),
    identity!("convergence_ratio_at_half_radius", 0.05, 100, convergence_ratio),
    identity!("domain_refusal_outside_radius", 0.0, 100, domain_refusal),
    identity!("classical_limit", 1e-2, 100, classical_limit),
];

/// Every identity in the suite, in report order.
pub fn identities() -> &'static [Identity] {
    IDENTITIES
}

pub fn find_identity(id: &str) -> Option<&'static Identity> {
    IDENTITIES.iter().find(|i| i.id == id)
}

/// Runs one identity over `trials` draws.
pub fn run_identity(ident: &Identity, seed: u64, trials: usize) -> IdentityRecord {
    let index = IDENTITIES.iter().position(|i| i.id == ident.id).unwrap_or(IDENTITIES.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut draw = Draw { rng };
    let trunc = Truncation::default();
    let mut worst = 0.0f64;
    let mut failure = None;
    for _ in 0..trials {
        match (ident.check)(&mut draw, &trunc) {
            Ok(e) if e.is_finite() => worst = worst.max(e),
            Ok(e) => {
                failure.get_or_insert_with(|| format!("non-finite error {e}"));
            }
            Err(e) => {
                failure.get_or_insert_with(|| e.to_string());
            }
        }
    }
    IdentityRecord {
        id: ident.id.to_string(),
        trials,
        max_abs_error: worst,
        tolerance: ident.tolerance,
        pass: failure.is_none() && worst <= ident.tolerance,
        failure,
    }
}

/// Runs the whole suite. `trials = None` uses each identity's default count.
pub fn run_suite(seed: u64, trials: Option<usize>) -> Result<VerifyReport> {
    if trials == Some(0) {
        return Err(QError::InvalidArgument("trials must be at least 1".into()));
    }
    let records = IDENTITIES
        .iter()
        .map(|i| run_identity(i, seed, trials.unwrap_or(i.default_trials)))
        .collect();
    Ok(VerifyReport { seed, records })
}
