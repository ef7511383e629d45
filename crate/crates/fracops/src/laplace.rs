//! Laplace-domain identities for the sine- and cosine-kernel operators.
//!
//! Both operators act by convolution against f', so their transforms factor
//! as (kernel transform) × (s·F(s) − f(0)). With λ = α/(1−α) and
//! normalization N:
//!
//! ```text
//! ℒ{Dₛ f}(s) = α·N / ((1−α)²·s² + α²) · (s·F(s) − f(0))        (sine)
//! ℒ{D_c f}(s) = s·(1−α)·N / ((1−α)²·s² + α²) · (s·F(s) − f(0))  (cosine)
//! ```
//!
//! and consequently the ratio of the two transforms is α / (s·(1−α)),
//! independent of f. [`numerical_laplace`] provides the quadrature side of
//! the consistency check: a trapezoid transform of a gridded signal, honest
//! about truncation (it refuses horizons with e^(−s·T) tails that are not
//! negligible).

use crate::error::{Error, Result};
use crate::kernels::FractionalOrder;
use crate::quadrature::Signal;

/// One closed-form transform evaluation point: the frequency s, the source
/// transform F(s), and the initial value f(0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceQuery {
    s: f64,
    f_of_s: f64,
    f0: f64,
}

impl LaplaceQuery {
    pub fn new(s: f64, f_of_s: f64, f0: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Domain(format!(
                "laplace: frequency must be positive and finite, got {s}"
            )));
        }
        if !f_of_s.is_finite() || !f0.is_finite() {
            return Err(Error::Domain(
                "laplace: F(s) and f(0) must be finite".into(),
            ));
        }
        Ok(Self { s, f_of_s, f0 })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn f_of_s(&self) -> f64 {
        self.f_of_s
    }

    pub fn f0(&self) -> f64 {
        self.f0
    }
}

fn transform_parts(
    order: FractionalOrder,
    normalization: f64,
    query: &LaplaceQuery,
) -> Result<(f64, f64, f64)> {
    // lambda() existing is exactly the α < 1 requirement.
    order.lambda()?;
    if !(normalization.is_finite() && normalization > 0.0) {
        return Err(Error::Domain(format!(
            "laplace: normalization must be positive and finite, got {normalization}"
        )));
    }
    let alpha = order.alpha();
    let one_minus = 1.0 - alpha;
    let denom = one_minus * one_minus * query.s * query.s + alpha * alpha;
    let driver = query.s * query.f_of_s - query.f0;
    Ok((alpha, denom, driver))
}

/// ℒ{Dₛ f}(s) for the sine-kernel operator.
pub fn ds_transform(
    order: FractionalOrder,
    normalization: f64,
    query: &LaplaceQuery,
) -> Result<f64> {
    let (alpha, denom, driver) = transform_parts(order, normalization, query)?;
    // N multiplies last so the transform is exactly homogeneous in the
    // normalization: ds(N) == N · ds(1) bit for bit.
    Ok(normalization * (alpha / denom * driver))
}

/// ℒ{D_c f}(s) for the cosine-kernel operator.
pub fn dc_transform(
    order: FractionalOrder,
    normalization: f64,
    query: &LaplaceQuery,
) -> Result<f64> {
    let (alpha, denom, driver) = transform_parts(order, normalization, query)?;
    Ok(normalization * (query.s * (1.0 - alpha) / denom * driver))
}

/// Trapezoid-rule Laplace transform ∫₀^T e^(−s·t) y(t) dt of a gridded
/// signal.
///
/// Requires s·T ≥ 20 so the truncated tail of a bounded signal is below
/// ~2e−9 of its scale; shorter horizons report [`Error::Truncation`] rather
/// than a silently wrong number.
pub fn numerical_laplace(signal: &Signal, s: f64) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Domain(format!(
            "laplace: frequency must be positive and finite, got {s}"
        )));
    }
    let n = signal.grid.len();
    if n < 2 {
        return Err(Error::Span(
            "laplace: need at least two samples to integrate".into(),
        ));
    }
    if signal.values.len() != n {
        return Err(Error::GridMismatch {
            expected: n,
            found: signal.values.len(),
        });
    }
    let duration = signal.grid.duration();
    if s * duration < 20.0 {
        return Err(Error::Truncation(format!(
            "laplace: s·T = {:.3} < 20; extend the horizon or raise s",
            s * duration
        )));
    }
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for i in 0..n {
        let weight = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        let term = weight * (-s * signal.grid.node(i)).exp() * signal.values[i];
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    Ok((sum + comp) * signal.grid.dt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{KernelKind, OperatorSpec};
    use crate::quadrature::{apply_operator, Preset, TimeGrid};
    use approx::assert_relative_eq;

    fn order(alpha: f64) -> FractionalOrder {
        FractionalOrder::new(alpha).unwrap()
    }

    #[test]
    fn query_validation() {
        assert!(LaplaceQuery::new(1.0, 0.5, 0.0).is_ok());
        assert!(matches!(
            LaplaceQuery::new(0.0, 0.5, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            LaplaceQuery::new(-1.0, 0.5, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            LaplaceQuery::new(1.0, f64::NAN, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn transforms_reject_classical_order_and_bad_norm() {
        let q = LaplaceQuery::new(1.0, 0.5, 0.0).unwrap();
        assert!(matches!(
            ds_transform(order(1.0), 0.5, &q),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            dc_transform(order(1.0), 0.5, &q),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ds_transform(order(0.5), 0.0, &q),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn hand_checked_transform_values() {
        // f(t) = t: F(s) = 1/s², so s·F − f0 = 1/s. At α = 2/3, N = 1/3,
        // s = 1: denom = 1/9 + 4/9 = 5/9, ds = (2/9)/(5/9) = 0.4 and
        // dc = (1/9)/(5/9) = 0.2; at s = 2 the dc value is 1/8.
        let a = order(2.0 / 3.0);
        let n = 1.0 / 3.0;
        let q1 = LaplaceQuery::new(1.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(ds_transform(a, n, &q1).unwrap(), 0.4, epsilon = 1e-15);
        assert_relative_eq!(dc_transform(a, n, &q1).unwrap(), 0.2, epsilon = 1e-15);
        let q2 = LaplaceQuery::new(2.0, 0.25, 0.0).unwrap();
        assert_relative_eq!(dc_transform(a, n, &q2).unwrap(), 0.125, epsilon = 1e-15);
    }

    #[test]
    fn transform_ratio_is_independent_of_source() {
        // ℒ{Dₛ}/ℒ{D_c} = α / (s(1−α)) whatever F and f0 are.
        let a = order(0.37);
        for (s, f, f0) in [(0.8, 2.2, 1.0), (2.5, -0.4, 0.3), (7.0, 0.9, -2.0)] {
            let q = LaplaceQuery::new(s, f, f0).unwrap();
            let ds = ds_transform(a, 0.7, &q).unwrap();
            let dc = dc_transform(a, 0.7, &q).unwrap();
            assert_relative_eq!(ds / dc, 0.37 / (s * (1.0 - 0.37)), max_relative = 1e-13);
        }
    }

    #[test]
    fn numerical_transform_of_known_signal() {
        // y(t) = e^(−t): ∫₀^∞ e^(−st) e^(−t) dt = 1/(s+1).
        let grid = TimeGrid::from_duration(1e-3, 25.0).unwrap();
        let values = grid.nodes().map(|t| (-t).exp()).collect();
        let sig = Signal { grid, values };
        let got = numerical_laplace(&sig, 1.0).unwrap();
        assert_relative_eq!(got, 0.5, max_relative = 1e-6);
    }

    #[test]
    fn numerical_transform_enforces_truncation_contract() {
        let grid = TimeGrid::from_duration(0.01, 10.0).unwrap();
        let values = grid.nodes().map(|t| (-t).exp()).collect();
        let sig = Signal { grid, values };
        assert!(numerical_laplace(&sig, 2.0).is_ok()); // s·T = 20
        assert!(matches!(
            numerical_laplace(&sig, 1.0),
            Err(Error::Truncation(_))
        ));
        assert!(matches!(
            numerical_laplace(&sig, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn operator_output_matches_closed_form_transform() {
        // One end-to-end spot check (the acceptance suite sweeps all presets
        // and frequencies): sine-kernel operator on f = sin t.
        let grid = TimeGrid::from_duration(2e-3, 40.0).unwrap();
        let a = order(2.0 / 3.0);
        let op = OperatorSpec::new(KernelKind::Sine, a, 1.0 / 3.0).unwrap();
        let out = apply_operator(&op, &Preset::Sin.source(), &grid).unwrap();
        let s = 1.0;
        let q = LaplaceQuery::new(s, Preset::Sin.laplace(s).unwrap(), 0.0).unwrap();
        let closed = ds_transform(a, 1.0 / 3.0, &q).unwrap();
        let numeric = numerical_laplace(&out, s).unwrap();
        assert_relative_eq!(numeric, closed, max_relative = 1e-4);
    }
}
