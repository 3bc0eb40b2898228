//! Registry of the library functions reachable from `eval` and `table`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use qmittag::kober::{self, ImageKind, KoberParams};
use qmittag::qcore::{self, ExpKind, Exponent, Order};
use qmittag::qml::{self, ClassicalMLParams, ExtendedMLParams};
use qmittag::{EvalResult, QBase, Truncation};

use crate::error::CliError;
use crate::value::{parse_complex, parse_real};

/// Named parameter values as given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    values: BTreeMap<String, String>,
}

impl Bindings {
    pub fn set(&mut self, name: &str, value: String) {
        self.values.insert(name.to_string(), value);
    }

    pub fn has(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn raw(&self, name: &str) -> Result<&str, CliError> {
        self.values
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| CliError::Usage(format!("missing required parameter --{}", flag(name))))
    }

    pub fn complex(&self, name: &str) -> Result<Complex64, CliError> {
        parse_complex(self.raw(name)?).map_err(|e| CliError::Usage(format!("--{}: {e}", flag(name))))
    }

    pub fn complex_or(&self, name: &str, default: f64) -> Result<Complex64, CliError> {
        if self.has(name) {
            self.complex(name)
        } else {
            Ok(Complex64::new(default, 0.0))
        }
    }

    pub fn real(&self, name: &str) -> Result<f64, CliError> {
        parse_real(self.raw(name)?).map_err(|e| CliError::Usage(format!("--{}: {e}", flag(name))))
    }

    pub fn uint(&self, name: &str) -> Result<u32, CliError> {
        let raw = self.raw(name)?;
        raw.parse::<u32>()
            .map_err(|_| CliError::Usage(format!("--{}: '{raw}' is not a nonnegative integer", flag(name))))
    }

    pub fn q(&self) -> Result<QBase, CliError> {
        Ok(QBase::new(self.real("q")?)?)
    }

    fn extended(&self) -> Result<ExtendedMLParams, CliError> {
        Ok(ExtendedMLParams::new(self.real("eta")?, self.complex("kappa")?, self.complex("sigma")?, self.complex("c")?)?)
    }

    fn kober(&self) -> Result<KoberParams, CliError> {
        Ok(KoberParams::new(self.complex("nu")?, self.complex("mu")?)?)
    }
}

fn flag(name: &str) -> String {
    name.replace('_', "-")
}

type EvalFn = fn(&Bindings, &Truncation) -> Result<EvalResult, CliError>;

pub struct Target {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    /// Parameters that must be bound.
    pub required: &'static [&'static str],
    /// Parameters with a default.
    pub optional: &'static [&'static str],
    eval: EvalFn,
}

impl Target {
    pub fn declares(&self, name: &str) -> bool {
        self.required.contains(&name) || self.optional.contains(&name)
    }

    pub fn eval(&self, b: &Bindings, t: &Truncation) -> Result<EvalResult, CliError> {
        if let Some(missing) = self.required.iter().find(|p| !b.has(p)) {
            return Err(CliError::Usage(format!("{} needs --{}", self.name, flag(missing))));
        }
        (self.eval)(b, t)
    }
}

fn exact(v: Complex64) -> Result<EvalResult, CliError> {
    Ok(EvalResult::exact(v))
}

const EXT: [&str; 5] = ["eta", "kappa", "sigma", "c", "q"];

macro_rules! params {
    ($($p:literal),* ; ext) => { &[$($p,)* EXT[0], EXT[1], EXT[2], EXT[3], EXT[4]] };
    ($($p:literal),*) => { &[$($p),*] };
}

static TARGETS: &[Target] = &[
    Target {
        name: "q_number",
        aliases: &[],
        required: params!["u", "q"],
        optional: &[],
        eval: |b, _| exact(qcore::q_number(b.complex("u")?, b.q()?)),
    },
    Target {
        name: "q_pochhammer",
        aliases: &[],
        required: params!["lambda", "q", "order"],
        optional: &[],
        eval: |b, t| {
            let raw = b.raw("order")?;
            let order = match raw {
                "inf" | "infinity" => Order::Infinite,
                _ => match raw.parse::<u32>() {
                    Ok(m) => Order::Finite(m),
                    Err(_) => Order::Complex(b.complex("order")?),
                },
            };
            Ok(qcore::q_pochhammer(b.complex("lambda")?, b.q()?, order, t)?)
        },
    },
    Target {
        name: "q_power_difference",
        aliases: &[],
        required: params!["s", "t", "q", "order"],
        optional: &[],
        eval: |b, _| {
            let order = match b.raw("order")?.parse::<u32>() {
                Ok(m) => Exponent::Integer(m),
                Err(_) => Exponent::Real(b.real("order")?),
            };
            exact(qcore::q_power_difference(b.real("s")?, b.real("t")?, b.q()?, order)?)
        },
    },
    Target {
        name: "q_binomial",
        aliases: &[],
        required: params!["tau", "m", "q"],
        optional: &[],
        eval: |b, _| exact(qcore::q_binomial(b.complex("tau")?, b.uint("m")?, b.q()?)),
    },
    Target {
        name: "q_gamma",
        aliases: &[],
        required: params!["u", "q"],
        optional: &[],
        eval: |b, _| exact(qcore::q_gamma(b.complex("u")?, b.q()?)?),
    },
    Target {
        name: "q_rgamma",
        aliases: &[],
        required: params!["u", "q"],
        optional: &[],
        eval: |b, _| exact(qcore::q_rgamma(b.complex("u")?, b.q()?)?),
    },
    Target {
        name: "q_beta",
        aliases: &[],
        required: params!["eta", "kappa", "q"],
        optional: &[],
        eval: |b, _| exact(qcore::q_beta(b.complex("eta")?, b.complex("kappa")?, b.q()?)?),
    },
    Target {
        name: "q_exponential",
        aliases: &[],
        required: params!["u", "q"],
        optional: &["kind"],
        eval: |b, t| {
            let kind = match b.raw("kind").unwrap_or("big") {
                "big" => ExpKind::Big,
                "small" => ExpKind::Small,
                k => return Err(CliError::Usage(format!("--kind for q_exponential is big or small, got '{k}'"))),
            };
            Ok(qcore::q_exponential(b.complex("u")?, b.q()?, kind, t)?)
        },
    },
    Target {
        name: "ml_classical",
        aliases: &[],
        required: params!["u", "eta"],
        optional: &["kappa", "sigma"],
        eval: |b, t| {
            let p = ClassicalMLParams::new(b.complex("eta")?, b.complex_or("kappa", 1.0)?, b.complex_or("sigma", 1.0)?)?;
            Ok(qml::ml_classical(b.complex("u")?, &p, t)?)
        },
    },
    Target {
        name: "q_mittag_leffler",
        aliases: &[],
        required: params!["u", "eta", "q"],
        optional: &["kappa"],
        eval: |b, t| Ok(qml::q_mittag_leffler(b.complex("u")?, b.real("eta")?, b.complex_or("kappa", 1.0)?, b.q()?, t)?),
    },
    Target {
        name: "q_ml_prabhakar",
        aliases: &[],
        required: params!["u", "eta", "kappa", "sigma", "q"],
        optional: &[],
        eval: |b, t| {
            let (u, eta, kappa, sigma) = (b.complex("u")?, b.real("eta")?, b.complex("kappa")?, b.complex("sigma")?);
            Ok(qml::q_ml_prabhakar(u, eta, kappa, sigma, b.q()?, t)?)
        },
    },
    Target {
        name: "beta_ratio",
        aliases: &[],
        required: params!["sigma", "c", "m", "q"],
        optional: &[],
        eval: |b, _| exact(qml::beta_ratio(b.complex("sigma")?, b.complex("c")?, b.uint("m")?, b.q()?)?),
    },
    Target {
        name: "q_ml_extended",
        aliases: &["qml_extended"],
        required: params!["u"; ext],
        optional: &[],
        eval: |b, t| Ok(qml::q_ml_extended(b.complex("u")?, &b.extended()?, b.q()?, t)?),
    },
    Target {
        name: "convergence_radius",
        aliases: &[],
        required: params!["eta", "q"],
        optional: &[],
        eval: |b, _| {
            let eta = b.real("eta")?;
            if !(eta > 0.0) {
                return Err(CliError::Usage(format!("--eta must be positive, got {eta}")));
            }
            exact(Complex64::new(qml::convergence_radius(eta, b.q()?), 0.0))
        },
    },
    Target {
        name: "series_term_ratio",
        aliases: &[],
        required: params!["u", "m"; ext],
        optional: &[],
        eval: |b, _| {
            let r = qml::series_term_ratio(b.complex("u")?, &b.extended()?, b.q()?, b.uint("m")? as usize)?;
            exact(Complex64::new(r, 0.0))
        },
    },
    Target {
        name: "recurrence_rhs",
        aliases: &[],
        required: params!["u"; ext],
        optional: &[],
        eval: |b, t| Ok(qml::recurrence_rhs(b.complex("u")?, &b.extended()?, b.q()?, t)?),
    },
    Target {
        name: "integral_representation",
        aliases: &[],
        required: params!["u"; ext],
        optional: &[],
        eval: |b, t| Ok(qml::integral_representation(b.complex("u")?, &b.extended()?, b.q()?, t)?),
    },
    Target {
        name: "derivative_closed_form",
        aliases: &[],
        required: params!["u", "lambda", "m"; ext],
        optional: &[],
        eval: |b, t| {
            let (u, lambda, m) = (b.complex("u")?, b.complex("lambda")?, b.uint("m")?);
            Ok(qml::derivative_closed_form(u, lambda, &b.extended()?, m, b.q()?, t)?)
        },
    },
    Target {
        name: "beta_weighted_integral",
        aliases: &[],
        required: params!["x", "xi", "zeta", "rho"; ext],
        optional: &[],
        eval: |b, t| {
            let (x, xi, zeta, rho) = (b.complex("x")?, b.complex("xi")?, b.complex("zeta")?, b.real("rho")?);
            Ok(qml::beta_weighted_integral(x, xi, zeta, rho, &b.extended()?, b.q()?, t)?)
        },
    },
    Target {
        name: "laplace_closed_form",
        aliases: &[],
        required: params!["x", "rho", "s"; ext],
        optional: &[],
        eval: |b, t| {
            let (x, rho, s) = (b.complex("x")?, b.real("rho")?, b.complex("s")?);
            Ok(qml::laplace_closed_form(x, rho, s, &b.extended()?, b.q()?, t)?)
        },
    },
    Target {
        name: "kober_image_power",
        aliases: &[],
        required: params!["m", "nu", "mu", "q"],
        optional: &["kind"],
        eval: |b, _| {
            let kind = match b.raw("kind").unwrap_or("integral") {
                "integral" => ImageKind::Integral,
                "derivative" => ImageKind::Derivative,
                k => {
                    return Err(CliError::Usage(format!(
                        "--kind for kober_image_power is integral or derivative, got '{k}'"
                    )))
                }
            };
            exact(kober::kober_image_power(b.uint("m")?, &b.kober()?, b.q()?, kind)?)
        },
    },
    Target {
        name: "kober_i_extended",
        aliases: &[],
        required: params!["u", "nu", "mu"; ext],
        optional: &[],
        eval: |b, t| Ok(kober::kober_i_extended(b.complex("u")?, &b.extended()?, &b.kober()?, b.q()?, t)?),
    },
    Target {
        name: "kober_d_extended",
        aliases: &[],
        required: params!["u", "nu", "mu"; ext],
        optional: &[],
        eval: |b, t| Ok(kober::kober_d_extended(b.complex("u")?, &b.extended()?, &b.kober()?, b.q()?, t)?),
    },
];

pub fn find(name: &str) -> Result<&'static Target, CliError> {
    all().iter().find(|t| t.name == name || t.aliases.contains(&name)).ok_or_else(|| {
        let names: Vec<_> = all().iter().map(|t| t.name).collect();
        CliError::Usage(format!("unknown target '{name}'; available: {}", names.join(", ")))
    })
}

pub fn all() -> &'static [Target] {
    TARGETS
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bind(pairs: &[(&str, &str)]) -> Bindings {
        let mut b = Bindings::default();
        for (k, v) in pairs {
            b.set(k, v.to_string());
        }
        b
    }

    #[test]
    fn every_target_reports_missing_parameters() {
        let t = Truncation::default();
        for target in all() {
            if let Some(p) = target.required.first() {
                let err = target.eval(&Bindings::default(), &t).unwrap_err();
                assert_eq!(err.exit_code(), 2, "{}", target.name);
                assert!(err.to_string().contains(&flag(p)));
            }
        }
    }

    #[test]
    fn gamma_and_alias() {
        let t = Truncation::default();
        let v = find("q_gamma").unwrap().eval(&bind(&[("u", "3"), ("q", "0.5")]), &t).unwrap();
        assert!((v.value.re - 1.5).abs() < 1e-14);
        assert_eq!(find("qml_extended").unwrap().name, "q_ml_extended");
        assert!(find("nope").is_err());
    }

    #[test]
    fn pochhammer_orders() {
        let t = Truncation::default();
        let p = find("q_pochhammer").unwrap();
        let v = p.eval(&bind(&[("lambda", "0.5"), ("q", "0.5"), ("order", "3")]), &t).unwrap();
        assert!((v.value.re - 0.328125).abs() < 1e-15);
        let v = p.eval(&bind(&[("lambda", "0.5"), ("q", "0.5"), ("order", "inf")]), &t).unwrap();
        assert!((v.value.re - 0.2887880950866024).abs() < 1e-14);
        assert!(p.eval(&bind(&[("lambda", "0.5"), ("q", "0.5"), ("order", "0.5+i")]), &t).is_ok());
    }

    #[test]
    fn error_classes() {
        let t = Truncation::default();
        let ext = find("q_ml_extended").unwrap();
        let base = [("eta", "1"), ("kappa", "1"), ("sigma", "0.5"), ("c", "1.5"), ("q", "0.5")];
        let mut far = base.to_vec();
        far.push(("u", "5"));
        assert_eq!(ext.eval(&bind(&far), &t).unwrap_err().exit_code(), 3);
        let mut bad = base.to_vec();
        bad.push(("u", "zz"));
        assert_eq!(ext.eval(&bind(&bad), &t).unwrap_err().exit_code(), 2);
        let e = find("q_gamma").unwrap().eval(&bind(&[("u", "0"), ("q", "0.5")]), &t).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = find("q_gamma").unwrap().eval(&bind(&[("u", "1"), ("q", "1.5")]), &t).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
