//! Kernel families, fractional orders, and operator specifications.
//!
//! Every operator in this crate has the shape
//! P(α) · ∫₀ᵗ k(t − τ) f'(τ) dτ. This module owns the ingredients that vary:
//! the order α (and its rate λ = α/(1−α)), the kernel kind, and the
//! normalization constant folded into P. It also provides exact integrals of
//! kernel × linear factor over sub-intervals — the primitive the
//! product-integration evaluator in [`crate::quadrature`] is built from.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::specfun::mittag_leffler;

/// A fractional order α ∈ (0, 1].
///
/// α = 1 is admitted because the power-law operator degenerates there to the
/// classical first derivative; the rate λ = α/(1−α) only exists for α < 1 and
/// [`FractionalOrder::lambda`] says so.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::Domain(format!(
                "order: alpha must lie in (0, 1], got {alpha}"
            )))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// The kernel rate λ = α / (1 − α). Undefined at α = 1.
    pub fn lambda(self) -> Result<f64> {
        if self.0 == 1.0 {
            Err(Error::Domain(
                "order: lambda = alpha/(1-alpha) is undefined at alpha = 1".into(),
            ))
        } else {
            Ok(self.0 / (1.0 - self.0))
        }
    }

    /// True exactly at α = 1, where the power-law operator reduces to the
    /// classical derivative.
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

/// The five kernel families, named for the shape of k(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// k(t) = t^(−α) — the classical (Caputo-style) singular kernel.
    PowerLaw,
    /// k(t) = exp(−λt) — the nonsingular exponential kernel.
    Exponential,
    /// k(t) = E_α(−λ t^α) — the nonsingular Mittag-Leffler kernel.
    MittagLeffler,
    /// k(t) = sin(λt) — oscillatory kernel, vanishes at lag zero.
    Sine,
    /// k(t) = cos(λt) — oscillatory kernel, unit weight at lag zero.
    Cosine,
}

impl KernelKind {
    /// Short code used by the command-line tools: c, cf, ab, ds, dc.
    pub fn code(self) -> &'static str {
        match self {
            KernelKind::PowerLaw => "c",
            KernelKind::Exponential => "cf",
            KernelKind::MittagLeffler => "ab",
            KernelKind::Sine => "ds",
            KernelKind::Cosine => "dc",
        }
    }

    pub fn from_code(code: &str) -> Result<Self> {
        match code {
            "c" => Ok(KernelKind::PowerLaw),
            "cf" => Ok(KernelKind::Exponential),
            "ab" => Ok(KernelKind::MittagLeffler),
            "ds" => Ok(KernelKind::Sine),
            "dc" => Ok(KernelKind::Cosine),
            other => Err(Error::Domain(format!(
                "kernel: unknown code {other:?} (expected c, cf, ab, ds, dc)"
            ))),
        }
    }

    pub fn all() -> [KernelKind; 5] {
        [
            KernelKind::PowerLaw,
            KernelKind::Exponential,
            KernelKind::MittagLeffler,
            KernelKind::Sine,
            KernelKind::Cosine,
        ]
    }
}

/// A fully specified operator: kernel kind, order, and normalization.
///
/// The prefactor is P = N / (1 − α) for the nonsingular kinds (N is the
/// normalization constant) and P = 1 / Γ(1 − α) for the power-law kind, where
/// the normalization is ignored. The conventional choice N = 1 − α makes
/// P = 1; [`OperatorSpec::standard`] builds that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSpec {
    kind: KernelKind,
    order: FractionalOrder,
    normalization: f64,
}

impl OperatorSpec {
    pub fn new(kind: KernelKind, order: FractionalOrder, normalization: f64) -> Result<Self> {
        if !(normalization.is_finite() && normalization > 0.0) {
            return Err(Error::Domain(format!(
                "operator: normalization must be positive and finite, got {normalization}"
            )));
        }
        if order.is_classical() && kind != KernelKind::PowerLaw {
            return Err(Error::Domain(format!(
                "operator: alpha = 1 is only meaningful for the power-law kernel, not {:?}",
                kind
            )));
        }
        Ok(Self {
            kind,
            order,
            normalization,
        })
    }

    /// The spec with the conventional normalization N = 1 − α (so the
    /// prefactor is 1). For the power-law kind at α = 1 the normalization is
    /// irrelevant and set to 1.
    pub fn standard(kind: KernelKind, order: FractionalOrder) -> Result<Self> {
        let norm = if order.is_classical() {
            1.0
        } else {
            1.0 - order.alpha()
        };
        Self::new(kind, order, norm)
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// P(α) for the nonsingular kinds. The power-law prefactor 1/Γ(1−α) is
    /// folded into the quadrature weights instead, so it is not exposed here.
    pub(crate) fn prefactor(&self) -> Result<f64> {
        match self.kind {
            KernelKind::PowerLaw => Ok(1.0),
            _ => Ok(self.normalization / (1.0 - self.order.alpha())),
        }
    }
}

/// Evaluate the raw kernel k(t) at lag t ≥ 0 (no prefactor applied).
///
/// The power-law kernel is singular at t = 0 and reports a domain error
/// there; every other kernel is finite on [0, ∞).
pub fn kernel_eval(spec: &OperatorSpec, t: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::Domain(format!(
            "kernel: lag must be finite and non-negative, got {t}"
        )));
    }
    let alpha = spec.order().alpha();
    match spec.kind() {
        KernelKind::PowerLaw => {
            if t == 0.0 {
                Err(Error::Domain(
                    "kernel: power-law kernel is singular at lag 0".into(),
                ))
            } else {
                Ok(t.powf(-alpha))
            }
        }
        KernelKind::Exponential => Ok((-spec.order().lambda()? * t).exp()),
        KernelKind::MittagLeffler => {
            let lambda = spec.order().lambda()?;
            mittag_leffler(alpha, -lambda * t.powf(alpha))
        }
        KernelKind::Sine => Ok((spec.order().lambda()? * t).sin()),
        KernelKind::Cosine => Ok((spec.order().lambda()? * t).cos()),
    }
}

/// ∫ₐᵇ k(t − τ) · (c0 + c1·τ) dτ for 0 ≤ a < b ≤ t (no prefactor applied).
///
/// This is the exact building block behind the evaluator: a linear model of
/// f' on a sub-interval integrated against the kernel. The closed-form kinds
/// use antiderivatives in the lag variable u = t − τ, exact to rounding on
/// any interval. The Mittag-Leffler kernel has no elementary antiderivative
/// and uses a fixed 8-node Gauss-Legendre rule per call, sized for grid
/// segments: machine precision on short interior sub-intervals, ~1e-9
/// absolute on short sub-intervals touching the kernel's t − τ → 0 branch
/// point, and degrading with width on long ones.
pub fn kernel_segment_integral(
    spec: &OperatorSpec,
    t: f64,
    a: f64,
    b: f64,
    c0: f64,
    c1: f64,
) -> Result<f64> {
    for (name, v) in [("t", t), ("a", a), ("b", b), ("c0", c0), ("c1", c1)] {
        if !v.is_finite() {
            return Err(Error::Interval(format!(
                "segment: argument {name} must be finite, got {v}"
            )));
        }
    }
    if !(0.0 <= a && a < b && b <= t) {
        return Err(Error::Interval(format!(
            "segment: need 0 <= a < b <= t, got a = {a}, b = {b}, t = {t}"
        )));
    }
    let alpha = spec.order().alpha();
    // In the lag variable u = t − τ the integrand is k(u)·(c0 + c1·t − c1·u)
    // over [u1, u2]:
    let u1 = t - b;
    let u2 = t - a;
    let lin = c0 + c1 * t;

    match spec.kind() {
        KernelKind::PowerLaw => {
            if alpha == 1.0 {
                // k(u) = 1/u: divergent when the interval touches the lag
                // origin, elementary otherwise.
                if u1 == 0.0 {
                    return Err(Error::Interval(
                        "segment: 1/u kernel diverges on an interval touching tau = t".into(),
                    ));
                }
                return Ok(lin * (u2.ln() - u1.ln()) - c1 * (u2 - u1));
            }
            // ∫ u^(−α) du = u^(1−α)/(1−α); ∫ u^(1−α) du = u^(2−α)/(2−α).
            let p1 = u1.powf(1.0 - alpha);
            let p2 = u2.powf(1.0 - alpha);
            let i0 = (p2 - p1) / (1.0 - alpha);
            let i1 = (p2 * u2 - p1 * u1) / (2.0 - alpha);
            Ok(lin * i0 - c1 * i1)
        }
        KernelKind::Exponential => {
            let l = spec.order().lambda()?;
            let e1 = (-l * u1).exp();
            let e2 = (-l * u2).exp();
            // I0 = −e^(−λu)/λ, I1 = −(u/λ + 1/λ²) e^(−λu).
            let i0 = (e1 - e2) / l;
            let i1 = (u1 / l + 1.0 / (l * l)) * e1 - (u2 / l + 1.0 / (l * l)) * e2;
            Ok(lin * i0 - c1 * i1)
        }
        KernelKind::Sine => {
            let l = spec.order().lambda()?;
            let (s1, c1_) = (l * u1).sin_cos();
            let (s2, c2_) = (l * u2).sin_cos();
            // I0 = −cos(λu)/λ, I1 = sin(λu)/λ² − u·cos(λu)/λ.
            let i0 = (c1_ - c2_) / l;
            let i1 = (s2 / (l * l) - u2 * c2_ / l) - (s1 / (l * l) - u1 * c1_ / l);
            Ok(lin * i0 - c1 * i1)
        }
        KernelKind::Cosine => {
            let l = spec.order().lambda()?;
            let (s1, c1_) = (l * u1).sin_cos();
            let (s2, c2_) = (l * u2).sin_cos();
            // I0 = sin(λu)/λ, I1 = cos(λu)/λ² + u·sin(λu)/λ.
            let i0 = (s2 - s1) / l;
            let i1 = (c2_ / (l * l) + u2 * s2 / l) - (c1_ / (l * l) + u1 * s1 / l);
            Ok(lin * i0 - c1 * i1)
        }
        KernelKind::MittagLeffler => {
            let lambda = spec.order().lambda()?;
            let (nodes, weights) = gauss_legendre_8();
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            let mut acc = 0.0;
            for (&x, &w) in nodes.iter().zip(weights) {
                let tau = mid + half * x;
                let u = t - tau;
                let k = mittag_leffler(alpha, -lambda * u.powf(alpha))?;
                acc += w * (c0 + c1 * tau) * k;
            }
            Ok(acc * half)
        }
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [−1, 1].
///
/// Computed by Newton iteration on the Legendre recurrence; accurate to
/// machine precision for any practical n. Exposed because tests use higher
/// orders as an independent cross-check of the fixed 8-node rule.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based starting guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// The fixed 8-node rule used for Mittag-Leffler kernel segments.
pub(crate) fn gauss_legendre_8() -> (&'static [f64], &'static [f64]) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (x, w) = RULE.get_or_init(|| gauss_legendre(8));
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn order(alpha: f64) -> FractionalOrder {
        FractionalOrder::new(alpha).unwrap()
    }

    #[test]
    fn order_accepts_unit_interval_only() {
        assert!(FractionalOrder::new(0.1).is_ok());
        assert!(FractionalOrder::new(1.0).is_ok());
        assert!(matches!(FractionalOrder::new(0.0), Err(Error::Domain(_))));
        assert!(matches!(
            FractionalOrder::new(1.0 + 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(FractionalOrder::new(-0.5), Err(Error::Domain(_))));
        assert!(matches!(
            FractionalOrder::new(f64::NAN),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lambda_matches_definition_and_fails_at_one() {
        assert_relative_eq!(order(2.0 / 3.0).lambda().unwrap(), 2.0, epsilon = 1e-15);
        assert_relative_eq!(order(0.5).lambda().unwrap(), 1.0, epsilon = 1e-15);
        assert!(matches!(order(1.0).lambda(), Err(Error::Domain(_))));
    }

    #[test]
    fn kernel_codes_round_trip() {
        for kind in KernelKind::all() {
            assert_eq!(KernelKind::from_code(kind.code()).unwrap(), kind);
        }
        assert!(matches!(
            KernelKind::from_code("xyz"),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn spec_validation() {
        let o = order(0.5);
        assert!(OperatorSpec::new(KernelKind::Sine, o, 0.5).is_ok());
        assert!(matches!(
            OperatorSpec::new(KernelKind::Sine, o, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            OperatorSpec::new(KernelKind::Sine, o, -1.0),
            Err(Error::Domain(_))
        ));
        // α = 1 is reserved for the power-law (classical-derivative) limit.
        assert!(OperatorSpec::new(KernelKind::PowerLaw, order(1.0), 1.0).is_ok());
        for kind in [
            KernelKind::Exponential,
            KernelKind::MittagLeffler,
            KernelKind::Sine,
            KernelKind::Cosine,
        ] {
            assert!(matches!(
                OperatorSpec::new(kind, order(1.0), 1.0),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn standard_spec_has_unit_prefactor() {
        for kind in [
            KernelKind::Exponential,
            KernelKind::MittagLeffler,
            KernelKind::Sine,
            KernelKind::Cosine,
        ] {
            let spec = OperatorSpec::standard(kind, order(0.4)).unwrap();
            assert_relative_eq!(spec.prefactor().unwrap(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn kernel_values_match_definitions() {
        let o = order(2.0 / 3.0); // λ = 2
        let ds = OperatorSpec::standard(KernelKind::Sine, o).unwrap();
        let dc = OperatorSpec::standard(KernelKind::Cosine, o).unwrap();
        let cf = OperatorSpec::standard(KernelKind::Exponential, o).unwrap();
        let c = OperatorSpec::standard(KernelKind::PowerLaw, o).unwrap();
        let t = 0.7;
        assert_relative_eq!(
            kernel_eval(&ds, t).unwrap(),
            (2.0 * t).sin(),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            kernel_eval(&dc, t).unwrap(),
            (2.0 * t).cos(),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            kernel_eval(&cf, t).unwrap(),
            (-2.0 * t).exp(),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            kernel_eval(&c, t).unwrap(),
            t.powf(-2.0 / 3.0),
            epsilon = 1e-15
        );
        // Lag-zero behavior: sine vanishes, cosine and exponential are 1,
        // Mittag-Leffler is 1, power-law is singular.
        assert_eq!(kernel_eval(&ds, 0.0).unwrap(), 0.0);
        assert_eq!(kernel_eval(&dc, 0.0).unwrap(), 1.0);
        assert_eq!(kernel_eval(&cf, 0.0).unwrap(), 1.0);
        let ab = OperatorSpec::standard(KernelKind::MittagLeffler, o).unwrap();
        assert_eq!(kernel_eval(&ab, 0.0).unwrap(), 1.0);
        assert!(matches!(kernel_eval(&c, 0.0), Err(Error::Domain(_))));
        assert!(matches!(kernel_eval(&ds, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn nonsingular_kernels_stay_bounded() {
        for kind in [
            KernelKind::Exponential,
            KernelKind::MittagLeffler,
            KernelKind::Sine,
            KernelKind::Cosine,
        ] {
            for &alpha in &[0.1, 0.5, 0.9] {
                let spec = OperatorSpec::standard(kind, order(alpha)).unwrap();
                for i in 0..=100 {
                    let t = 0.1 * i as f64;
                    let k = kernel_eval(&spec, t).unwrap();
                    assert!(
                        (-1.0 - 1e-9..=1.0 + 1e-9).contains(&k),
                        "{kind:?} kernel left [-1, 1] at t = {t}: {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn gauss_legendre_8_matches_published_table() {
        let (x, w) = gauss_legendre(8);
        let x_ref = [
            0.183_434_642_495_649_8,
            0.525_532_409_916_329,
            0.796_666_477_413_626_7,
            0.960_289_856_497_536_3,
        ];
        let w_ref = [
            0.362_683_783_378_362,
            0.313_706_645_877_887_3,
            0.222_381_034_453_374_5,
            0.101_228_536_290_376_3,
        ];
        for i in 0..4 {
            assert_relative_eq!(x[4 + i], x_ref[i], epsilon = 1e-14);
            assert_relative_eq!(x[3 - i], -x_ref[i], epsilon = 1e-14);
            assert_relative_eq!(w[4 + i], w_ref[i], epsilon = 1e-14);
            assert_relative_eq!(w[3 - i], w_ref[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // An n-point rule is exact through degree 2n−1.
        for n in [1, 2, 5, 8, 20, 64] {
            let (x, w) = gauss_legendre(n);
            assert_relative_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
            let deg = 2 * n - 1;
            let moment: f64 = x
                .iter()
                .zip(&w)
                .map(|(&xi, &wi)| wi * xi.powi(deg as i32))
                .sum();
            // Odd moments vanish on a symmetric interval.
            assert!(moment.abs() < 1e-12, "n = {n}: odd moment {moment:.3e}");
            let even: f64 = x
                .iter()
                .zip(&w)
                .map(|(&xi, &wi)| wi * xi.powi((deg - 1) as i32))
                .sum();
            let exact = 2.0 / (deg as f64); // ∫ x^(2m) = 2/(2m+1), 2m = deg−1
            assert_relative_eq!(even, exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn segment_integral_validates_interval() {
        let spec = OperatorSpec::standard(KernelKind::Sine, order(0.5)).unwrap();
        assert!(matches!(
            kernel_segment_integral(&spec, 1.0, 0.5, 0.5, 1.0, 0.0),
            Err(Error::Interval(_))
        ));
        assert!(matches!(
            kernel_segment_integral(&spec, 1.0, 0.7, 0.4, 1.0, 0.0),
            Err(Error::Interval(_))
        ));
        assert!(matches!(
            kernel_segment_integral(&spec, 1.0, 0.2, 1.1, 1.0, 0.0),
            Err(Error::Interval(_))
        ));
        assert!(matches!(
            kernel_segment_integral(&spec, 1.0, -0.1, 0.5, 1.0, 0.0),
            Err(Error::Interval(_))
        ));
        // 1/u kernel: divergent only when the interval touches τ = t.
        let classical = OperatorSpec::standard(KernelKind::PowerLaw, order(1.0)).unwrap();
        assert!(matches!(
            kernel_segment_integral(&classical, 1.0, 0.5, 1.0, 1.0, 0.0),
            Err(Error::Interval(_))
        ));
        assert!(kernel_segment_integral(&classical, 1.0, 0.2, 0.5, 1.0, 0.0).is_ok());
    }

    #[test]
    fn segment_integral_simple_closed_forms() {
        // Sine kernel, constant factor: ∫ₐᵇ sin(λ(t−τ)) dτ =
        // (cos(λ(t−b)) − cos(λ(t−a)))/λ.
        let spec = OperatorSpec::standard(KernelKind::Sine, order(2.0 / 3.0)).unwrap();
        let (t, a, b) = (2.0, 0.3, 1.1);
        let got = kernel_segment_integral(&spec, t, a, b, 1.0, 0.0).unwrap();
        let want = ((2.0 * (t - b)).cos() - (2.0 * (t - a)).cos()) / 2.0;
        assert_relative_eq!(got, want, max_relative = 1e-14);

        // Power-law kernel over a full prefix [0, t] with constant factor:
        // ∫₀ᵗ (t−τ)^(−α) dτ = t^(1−α)/(1−α).
        let c = OperatorSpec::standard(KernelKind::PowerLaw, order(0.5)).unwrap();
        let got = kernel_segment_integral(&c, 4.0, 0.0, 4.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(got, 4.0_f64.powf(0.5) / 0.5, max_relative = 1e-14);
    }

    #[test]
    fn segment_integral_is_additive() {
        // Closed-form kinds are antiderivative differences, additive at
        // machine precision on any split.
        for kind in [
            KernelKind::PowerLaw,
            KernelKind::Exponential,
            KernelKind::Sine,
            KernelKind::Cosine,
        ] {
            let spec = OperatorSpec::standard(kind, order(0.7)).unwrap();
            let (t, a, m, b) = (3.0, 0.4, 1.3, 2.2);
            let whole = kernel_segment_integral(&spec, t, a, b, 0.8, -0.3).unwrap();
            let left = kernel_segment_integral(&spec, t, a, m, 0.8, -0.3).unwrap();
            let right = kernel_segment_integral(&spec, t, m, b, 0.8, -0.3).unwrap();
            assert_relative_eq!(whole, left + right, max_relative = 1e-12);
        }
        // The Mittag-Leffler kind is quadrature-based, so additivity holds to
        // the rule's accuracy: machine precision on grid-sized interior
        // segments, ~1e-8 when the segment touches the kernel's branch point
        // at τ = t.
        let spec = OperatorSpec::standard(KernelKind::MittagLeffler, order(0.7)).unwrap();
        let (t, a, m, b) = (3.0, 1.0, 1.1, 1.2);
        let whole = kernel_segment_integral(&spec, t, a, b, 0.8, -0.3).unwrap();
        let left = kernel_segment_integral(&spec, t, a, m, 0.8, -0.3).unwrap();
        let right = kernel_segment_integral(&spec, t, m, b, 0.8, -0.3).unwrap();
        assert_relative_eq!(whole, left + right, max_relative = 1e-12);
        let (a, m, b) = (2.998, 2.999, 3.0); // grid-sized cells, right end at τ = t
        let whole = kernel_segment_integral(&spec, t, a, b, 0.8, -0.3).unwrap();
        let left = kernel_segment_integral(&spec, t, a, m, 0.8, -0.3).unwrap();
        let right = kernel_segment_integral(&spec, t, m, b, 0.8, -0.3).unwrap();
        assert!((whole - (left + right)).abs() <= 1e-8);
    }
}
