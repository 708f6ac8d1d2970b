//! Deterministic scalar root finding and 1-D curve analysis.
//!
//! Everything here is plain bracketing + bisection: the dispersion curves the
//! solvers walk are smooth but no analytic derivative is exposed, so
//! robustness wins over iteration count at these problem sizes. All routines
//! are pure and bit-reproducible for identical inputs.

use crate::error::{Error, Result, Side};

/// Iteration cap for [`bisect`]. 200 halvings of any finite interval reach
/// f64 resolution long before this trips; hitting it means a broken bracket.
pub const BISECT_MAX_ITER: usize = 200;

/// A sign-change interval. `f_lo == 0.0` marks a degenerate bracket whose
/// left endpoint is an exact grid-point zero.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidBracket(format!("lo {lo} must be < hi {hi}")));
        }
        if f_lo.is_nan() || f_hi.is_nan() {
            return Err(Error::InvalidBracket("endpoint value is NaN".into()));
        }
        if f_lo != 0.0 && f_hi != 0.0 && f_lo.signum() == f_hi.signum() {
            return Err(Error::InvalidBracket(format!(
                "no sign change: f({lo}) = {f_lo}, f({hi}) = {f_hi}"
            )));
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }
}

/// Result of a grid scan: the brackets found plus a count of grid points
/// where the callback returned a non-finite value (skipped, not fatal).
#[derive(Debug, Clone, Default)]
pub struct BracketScan {
    pub brackets: Vec<Bracket>,
    pub non_finite_samples: usize,
}

/// Samples `f` on a uniform grid over `[lo, hi]` and returns every
/// sign-change bracket between adjacent finite samples, in ascending order.
/// Exact zeros at grid points come back as degenerate one-step brackets.
pub fn scan_brackets<F: Fn(f64) -> f64>(
    f: F,
    interval: (f64, f64),
    samples: usize,
) -> Result<BracketScan> {
    let (lo, hi) = interval;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInput(format!(
            "scan interval [{lo}, {hi}] must be finite with lo < hi"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidInput(format!(
            "scan needs at least 2 samples, got {samples}"
        )));
    }

    let step = (hi - lo) / (samples - 1) as f64;
    let mut scan = BracketScan::default();
    let mut prev: Option<(f64, f64)> = None;
    // set when the previous pair already consumed a grid-point zero
    let mut skip_zero_at_prev = false;

    for i in 0..samples {
        let x = if i + 1 == samples {
            hi
        } else {
            lo + step * i as f64
        };
        let fx = f(x);
        if !fx.is_finite() {
            scan.non_finite_samples += 1;
            prev = None;
            skip_zero_at_prev = false;
            continue;
        }
        if let Some((xp, fp)) = prev {
            if fp == 0.0 && !skip_zero_at_prev {
                // zero sat on the left grid point and was not already emitted
                scan.brackets.push(Bracket {
                    lo: xp,
                    hi: x,
                    f_lo: 0.0,
                    f_hi: fx,
                });
            } else if fx == 0.0 {
                scan.brackets.push(Bracket {
                    lo: xp,
                    hi: x,
                    f_lo: fp,
                    f_hi: 0.0,
                });
            } else if fp != 0.0 && fp.signum() != fx.signum() {
                scan.brackets.push(Bracket {
                    lo: xp,
                    hi: x,
                    f_lo: fp,
                    f_hi: fx,
                });
            }
            skip_zero_at_prev = fx == 0.0;
        } else {
            skip_zero_at_prev = false;
        }
        prev = Some((x, fx));
    }
    Ok(scan)
}

/// Bisection to `|x − root| ≤ x_tol`. Deterministic: identical inputs give a
/// bit-identical result.
pub fn bisect<F: Fn(f64) -> f64>(f: F, bracket: &Bracket, x_tol: f64) -> Result<f64> {
    if !(x_tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "x_tol {x_tol} must be positive"
        )));
    }
    // revalidate: Bracket fields are public
    let b = Bracket::new(bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi)?;
    if b.f_lo == 0.0 {
        return Ok(b.lo);
    }
    if b.f_hi == 0.0 {
        return Ok(b.hi);
    }

    let (mut lo, mut hi, mut f_lo) = (b.lo, b.hi, b.f_lo);
    for _ in 0..BISECT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) * 0.5 <= x_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        iterations: BISECT_MAX_ITER,
        lo,
        hi,
    })
}

/// Scan-then-bisect for solvers that require exactly one root in the
/// interval. Zero roots or several roots fail loudly, listing what was found,
/// rather than silently picking a candidate.
pub fn refine_unique_root<F: Fn(f64) -> f64>(
    f: F,
    interval: (f64, f64),
    samples: usize,
    x_tol: f64,
    what: &str,
) -> Result<f64> {
    let scan = scan_brackets(&f, interval, samples)?;
    match scan.brackets.len() {
        0 => Err(Error::NoRoot {
            what: what.to_string(),
            lo: interval.0,
            hi: interval.1,
        }),
        1 => bisect(&f, &scan.brackets[0], x_tol),
        _ => {
            let candidates = scan
                .brackets
                .iter()
                .map(|b| bisect(&f, b, x_tol))
                .collect::<Result<Vec<_>>>()?;
            Err(Error::MultipleRoots {
                what: what.to_string(),
                candidates,
            })
        }
    }
}

/// Full width at half maximum of a sampled curve.
///
/// Half maximum is max(y)/2; the outermost crossings on each side are located
/// by linear interpolation between adjacent samples. The curve must fall
/// below half maximum on both sides of the peak region.
pub fn fwhm(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "fwhm needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    for w in samples.windows(2) {
        if !(w[0].0 < w[1].0) {
            return Err(Error::InvalidInput(format!(
                "fwhm sample abscissae must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
    }
    let y_max = samples
        .iter()
        .map(|&(_, y)| y)
        .fold(f64::NEG_INFINITY, f64::max);
    if !(y_max > 0.0) {
        return Err(Error::InvalidInput(format!(
            "fwhm needs max(y) > 0, got {y_max}"
        )));
    }
    let half = 0.5 * y_max;

    let cross = |a: (f64, f64), b: (f64, f64)| a.0 + (half - a.1) * (b.0 - a.0) / (b.1 - a.1);

    // leftmost upward crossing
    if samples[0].1 >= half {
        return Err(Error::OpenSupport { side: Side::Left });
    }
    let mut left = None;
    for w in samples.windows(2) {
        if w[0].1 < half && w[1].1 >= half {
            left = Some(cross(w[0], w[1]));
            break;
        }
    }
    // rightmost downward crossing
    if samples[samples.len() - 1].1 >= half {
        return Err(Error::OpenSupport { side: Side::Right });
    }
    let mut right = None;
    for w in samples.windows(2).rev() {
        if w[0].1 >= half && w[1].1 < half {
            right = Some(cross(w[0], w[1]));
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Ok(r - l),
        // max(y) > 0 guarantees a peak at/above half, so both must exist
        _ => Err(Error::InvalidInput(
            "no half-maximum crossings found".into(),
        )),
    }
}
