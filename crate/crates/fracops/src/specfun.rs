//! Scalar special functions: the gamma function and the one-parameter
//! Mittag-Leffler function on the real line.
//!
//! These are the only transcendental building blocks the kernel code needs,
//! and both are implemented here so their accuracy stays pinned by this
//! crate's own tests instead of floating with an external dependency.
//!
//! * [`gamma`] uses the Lanczos approximation (g = 7, nine coefficients) with
//!   reflection below 0.5. Relative error is below 1e-12 on (0, 50] and the
//!   recurrence defect |Γ(x+1) − x·Γ(x)| / Γ(x+1) stays below 1e-12 on
//!   (0, 20].
//! * [`mittag_leffler`] evaluates E_α(z) = Σ_{k≥0} z^k / Γ(1 + αk) for
//!   α ∈ (0, 1] through three routes, each carrying its own error estimate,
//!   with the best estimate winning. The Taylor series with compensated
//!   summation is primary; for strongly negative arguments the algebraic
//!   tail −Σ_{k≥1} z^{−k} / Γ(1 − αk) (truncated at its smallest envelope
//!   term) takes over; and where both cancel badly — the crossover band,
//!   roughly −30 < z < −3 — a spectral integral representation evaluated by
//!   an exp-sinh trapezoid rule carries the result. Measured against
//!   high-precision references: relative error ≤ 1e-10 for α = 1 on
//!   [−5, 5], and ≤ 4e-13 over a dense grid with α ∈ [0.30, 0.95],
//!   z ∈ [−30, 0] (near machine precision in the central band). Larger
//!   negative arguments are accepted best-effort; positive arguments whose
//!   result exceeds f64 range report [`Error::Overflow`].

use crate::error::{Error, Result};

const PI: f64 = std::f64::consts::PI;

/// Lanczos parameter g = 7 with the matching nine-term coefficient set.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;

/// Largest argument for which Γ(x) is representable as an f64.
pub const GAMMA_OVERFLOW: f64 = 171.624_376_956_302_7;

const ML_TERM_CAP: usize = 10_000;
const ML_REL_TOL: f64 = 1e-15;

/// Exp-sinh trapezoid step and half-range for the spectral route. 0.05 over
/// |t| ≤ 4.3 keeps the transformed integrand's truncated tails below 1e-17
/// while the step-halving estimate stays honest. The integrand sharpens at
/// both ends of the order range — the Lorentzian peak at s ≈ 1 narrows like
/// sin(απ) as α → 1, and the exp decay's transition window narrows like α
/// as α → 0 — so the step shrinks with whichever feature is narrower
/// (floored to keep the node count bounded).
const ML_SPECTRAL_STEP: f64 = 0.05;
const ML_SPECTRAL_MIN_STEP: f64 = 0.01;
const ML_SPECTRAL_T_RANGE: f64 = 4.3;

/// The gamma function Γ(x) for real x.
///
/// Non-positive integers are poles and report [`Error::Domain`]; arguments
/// past [`GAMMA_OVERFLOW`] report [`Error::Overflow`]. Negative non-integer
/// arguments go through the reflection formula.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "gamma: argument must be finite, got {x}"
        )));
    }
    if x <= 0.0 && x == x.trunc() {
        return Err(Error::Domain(format!(
            "gamma: pole at non-positive integer {x}"
        )));
    }
    if x > GAMMA_OVERFLOW {
        return Err(Error::Overflow(format!("gamma({x}) exceeds f64 range")));
    }
    let value = if x < 0.5 {
        // Reflection: Γ(x) Γ(1−x) = π / sin(πx). For deeply negative x the
        // right-hand Γ overflows and the quotient correctly underflows to 0.
        PI / (sinpi(x) * lanczos(1.0 - x))
    } else {
        lanczos(x)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("gamma({x}) exceeds f64 range")))
    }
}

/// Lanczos core, valid for x ≥ 0.5.
///
/// The power t^(x−0.5) is split as t^((x−0.5)/2) · t^((x−0.5)/2) so that
/// intermediates stay inside f64 range right up to the overflow boundary of
/// the result itself.
fn lanczos(x: f64) -> f64 {
    let xp = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (xp + i as f64);
    }
    let t = xp + LANCZOS_G + 0.5;
    let r = t.powf((xp + 0.5) / 2.0);
    SQRT_TWO_PI * a * r * (-t).exp() * r
}

/// ln Γ(x) for x > 0. Used where Γ itself would overflow.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma requires x > 0");
    if x < 0.5 {
        return PI.ln() - sinpi(x).ln() - ln_gamma(1.0 - x);
    }
    let xp = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (xp + i as f64);
    }
    let t = xp + LANCZOS_G + 0.5;
    SQRT_TWO_PI.ln() + a.ln() + (xp + 0.5) * t.ln() - t
}

/// sin(πx) with the argument reduced before scaling by π, so values at
/// half-integers and integers come out exact.
pub(crate) fn sinpi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// The one-parameter Mittag-Leffler function E_α(z) for α ∈ (0, 1].
///
/// E_α interpolates between 1/(1−z) (α → 0) and exp(z) (α = 1); on the
/// negative axis it decays monotonically from E_α(0) = 1, which is what makes
/// it usable as a memory kernel. See the module docs for the evaluation
/// strategy and the accuracy envelope.
pub fn mittag_leffler(alpha: f64, z: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "mittag_leffler: alpha must lie in (0, 1], got {alpha}"
        )));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!(
            "mittag_leffler: argument must be finite, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(1.0);
    }

    if z > 0.0 {
        // E_α(z) grows like exp(z^(1/α)) / α; refuse arguments whose result
        // cannot be represented.
        if z.powf(1.0 / alpha) > 708.0 {
            return Err(Error::Overflow(format!(
                "mittag_leffler({alpha}, {z}) exceeds f64 range"
            )));
        }
        let (value, _, converged) = ml_series(alpha, z);
        if !converged {
            return Err(Error::NonConvergence { terms: ML_TERM_CAP });
        }
        if !value.is_finite() {
            return Err(Error::Overflow(format!(
                "mittag_leffler({alpha}, {z}) exceeds f64 range"
            )));
        }
        return Ok(value);
    }

    // z < 0. At α = 1 the series is exp(z) and no algebraic tail exists.
    if alpha == 1.0 {
        let (value, _, converged) = ml_series(alpha, z);
        if !converged {
            return Err(Error::NonConvergence { terms: ML_TERM_CAP });
        }
        return Ok(value);
    }

    // Try the series unless its own peak term is predicted to overflow; the
    // peak sits near k* = |z|^(1/α) / α.
    let mut series: Option<(f64, f64)> = None;
    let k_peak = (-z).powf(1.0 / alpha) / alpha;
    let ln_peak = if k_peak >= 1.0 {
        k_peak * (-z).ln() - ln_gamma(1.0 + alpha * k_peak)
    } else {
        0.0
    };
    if ln_peak < 690.0 {
        let (value, est, converged) = ml_series(alpha, z);
        if converged && value.is_finite() {
            if est <= 4.0 * f64::EPSILON * value.abs() {
                // Cancellation was negligible; nothing can beat this.
                return Ok(value);
            }
            series = Some((value, est));
        }
    }
    let tail = ml_asymptotic_neg(alpha, z);

    // In the band where the series has already cancelled badly but the tail
    // is not yet sharp, both estimates are poor; the spectral integral
    // representation closes that gap. It costs a few hundred exp/pow calls,
    // so it is only evaluated when neither cheap route is near machine
    // precision.
    let cheap_best = [series, tail]
        .iter()
        .flatten()
        .map(|&(v, e)| rel_est(e, v))
        .fold(f64::INFINITY, f64::min);
    let spectral = if cheap_best > 1e-13 {
        ml_spectral_neg(alpha, z)
    } else {
        None
    };

    let mut best: Option<(f64, f64)> = None;
    for cand in [series, tail, spectral].iter().flatten() {
        let r = rel_est(cand.1, cand.0);
        if best.is_none_or(|(_, br)| r < br) {
            best = Some((cand.0, r));
        }
    }
    match best {
        Some((v, _)) => Ok(v),
        None => Err(Error::NonConvergence { terms: ML_TERM_CAP }),
    }
}

fn rel_est(est: f64, value: f64) -> f64 {
    if value == 0.0 || !value.is_finite() || !est.is_finite() {
        f64::INFINITY
    } else {
        est / value.abs()
    }
}

/// Taylor series Σ z^k / Γ(1 + αk) with Neumaier-compensated summation.
///
/// Returns (value, absolute error estimate, stopped-before-cap). The error
/// estimate grows with the largest term encountered, which is exactly the
/// precision lost to cancellation when z < 0.
fn ml_series(alpha: f64, z: f64) -> (f64, f64, bool) {
    let mut sum = 1.0_f64; // k = 0 term
    let mut comp = 0.0_f64;
    let mut max_mag = 1.0_f64;
    let mut prev_mag = 1.0_f64;
    for k in 1..=ML_TERM_CAP {
        let a1 = 1.0 + alpha * k as f64;
        let term = if a1 <= 170.0 {
            z.powi(k as i32) / lanczos(a1)
        } else {
            // Γ(a1) would overflow; in this regime the term only matters for
            // route selection, so the log form's precision is enough.
            let mag = (k as f64 * z.abs().ln() - ln_gamma(a1)).exp();
            if z < 0.0 && k % 2 == 1 {
                -mag
            } else {
                mag
            }
        };
        if !term.is_finite() {
            // The sum is hopeless in f64; report infinite uncertainty and let
            // the caller pick the other route.
            return (f64::NAN, f64::INFINITY, true);
        }
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        let mag = term.abs();
        if mag > max_mag {
            max_mag = mag;
        }
        if mag <= ML_REL_TOL * (sum + comp).abs() && mag <= prev_mag {
            let est = f64::EPSILON * max_mag * 1.0_f64.max(0.1 * k as f64);
            return (sum + comp, est, true);
        }
        prev_mag = mag;
    }
    (f64::NAN, f64::INFINITY, false)
}

/// Algebraic tail E_α(z) ≈ −Σ_{k≥1} z^{−k} / Γ(1 − αk) for z < 0, α < 1,
/// truncated at its smallest term (the classic divergent-series rule).
///
/// 1/Γ(1 − αk) is rewritten as sin(παk) Γ(αk) / π and evaluated in log space
/// so large-k terms neither overflow nor lose their scale. All convergence
/// bookkeeping — the divergence break, the smallest-term stop and the error
/// estimate — runs on the sin-free envelope Γ(αk) / (π |z|^k): whenever αk
/// sits at or near a pole of Γ(1 − αk) the sin factor silences that one term
/// without making the remainder any smaller, so a sin-scaled magnitude would
/// fake convergence and corrupt the route selection.
fn ml_asymptotic_neg(alpha: f64, z: f64) -> Option<(f64, f64)> {
    let ln_abs_z = (-z).ln();
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut prev_env = f64::INFINITY;
    let mut min_env = f64::INFINITY;
    let mut used = 0usize;
    for k in 1..=400usize {
        let ak = alpha * k as f64;
        let env = (ln_gamma(ak) - k as f64 * ln_abs_z).exp() / PI;
        if !env.is_finite() || env > prev_env {
            break; // the divergent part of the tail has been reached
        }
        let mut term = env * sinpi(ak);
        if k % 2 == 0 {
            term = -term;
        }
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        used += 1;
        prev_env = env;
        if env < min_env {
            min_env = env;
        }
        if env <= ML_REL_TOL * (sum + comp).abs() {
            break;
        }
    }
    if used == 0 {
        return None;
    }
    let total = sum + comp;
    let est = min_env + f64::EPSILON * total.abs();
    Some((total, est))
}

/// Spectral representation of E_α(z) for z < 0, 0 < α < 1:
///
///   E_α(−x) = sin(απ)/(απ) · ∫₀^∞ exp(−(s·x)^(1/α)) / ((s + cos απ)² + sin²απ) ds
///
/// The density is positive and the integrand decays double-exponentially in
/// both directions under the exp-sinh substitution s = exp((π/2)·sinh t), so
/// a plain trapezoid rule converges fast; the coarse sum over every second
/// node comes for free and its distance to the fine sum serves as the error
/// estimate. Unlike the series and the algebraic tail, accuracy here does not
/// depend on how negative z is, which is what rescues the crossover band.
fn ml_spectral_neg(alpha: f64, z: f64) -> Option<(f64, f64)> {
    let x = -z;
    let cos_ap = sinpi(0.5 - alpha);
    let sin_ap = sinpi(alpha);
    if sin_ap <= 0.0 {
        return None;
    }
    let inv_alpha = 1.0 / alpha;
    let shape = (4.0 * (1.0 - alpha)).min(alpha / 0.75);
    let step = (ML_SPECTRAL_STEP * shape).clamp(ML_SPECTRAL_MIN_STEP, ML_SPECTRAL_STEP);
    let half_range = (ML_SPECTRAL_T_RANGE / step).ceil() as i64;
    let mut fine = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut coarse = 0.0_f64;
    for k in -half_range..=half_range {
        let t = k as f64 * step;
        let s = ((PI / 2.0) * t.sinh()).exp();
        // (s·x)^(1/α) through logs; overflow of the inner exp drives the
        // outer one to a clean zero, so no explicit guard is needed.
        let decay = (-(inv_alpha * (s * x).ln()).exp()).exp();
        let density = decay / ((s + cos_ap) * (s + cos_ap) + sin_ap * sin_ap);
        let f = density * s * (PI / 2.0) * t.cosh();
        let sum_next = fine + f;
        comp += if fine.abs() >= f.abs() {
            (fine - sum_next) + f
        } else {
            (f - sum_next) + fine
        };
        fine = sum_next;
        if k % 2 == 0 {
            coarse += f;
        }
    }
    let scale = sin_ap / (alpha * PI);
    let i_fine = step * (fine + comp);
    let i_coarse = 2.0 * step * coarse;
    let value = scale * i_fine;
    if !value.is_finite() {
        return None;
    }
    let est = scale * (i_fine - i_coarse).abs() + 4.0 * f64::EPSILON * value.abs();
    Some((value, est))
}
