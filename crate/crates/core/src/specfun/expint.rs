//! Exponential integral E1(z) = Gamma(0, z) for complex z, |arg z| < pi.

use crate::{LwError, Result};
use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// E1(z) via the ascending series for |z| <= 4 and the (modified Lentz)
/// continued fraction beyond; ~1e-12 relative on the tested domain.
pub fn exp_integral_e1_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(LwError::Argument(format!("E1: non-finite argument {z}")));
    }
    if z.norm() == 0.0 {
        return Err(LwError::Singularity(
            "E1 diverges logarithmically at z = 0".into(),
        ));
    }
    if z.re < 0.0 && z.im == 0.0 {
        return Err(LwError::Domain(
            "E1 branch cut: requires |arg z| < pi (negative real axis excluded)".into(),
        ));
    }
    if z.norm() <= 4.0 {
        Ok(e1_series(z))
    } else {
        Ok(e1_continued_fraction(z))
    }
}

/// Entire exponential integral Ein(z) = gamma + ln z + E1(z)
/// = sum_{k>=1} (-1)^{k+1} z^k / (k k!). No branch cut, no singularity;
/// the series is used directly for |z| <= 4, E1 beyond (where the log
/// reconstruction is well conditioned).
pub fn ein_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(LwError::Argument(format!("Ein: non-finite argument {z}")));
    }
    // Left half plane: the series stays relatively accurate because the
    // result itself grows like e^{|z|}, while the E1 continued fraction
    // breaks down near the cut.
    if z.norm() <= 4.0 || z.re < 0.0 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..400 {
            let kf = k as f64;
            term *= -z / kf;
            let contrib = -term / kf;
            sum += contrib;
            if contrib.norm() < (sum.norm() + 1.0) * 1e-18 {
                break;
            }
        }
        Ok(sum)
    } else {
        Ok(EULER_GAMMA + z.ln() + e1_continued_fraction(z))
    }
}

/// E1(z) = -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
fn e1_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        let kf = k as f64;
        term *= -z / kf;
        let contrib = -term / kf;
        sum += contrib;
        if contrib.norm() < (sum.norm() + 1.0) * 1e-18 {
            break;
        }
    }
    -Complex64::new(EULER_GAMMA, 0.0) - z.ln() + sum
}

/// E1(z) = e^{-z} / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...)))
/// evaluated with the modified Lentz algorithm.
fn e1_continued_fraction(z: Complex64) -> Complex64 {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut f = z + 1.0;
    if f.norm() == 0.0 {
        f = tiny;
    }
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..500 {
        let kf = k as f64;
        let a = -kf * kf;
        let b = z + (2.0 * kf + 1.0);
        d = b + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z).exp() / f
}
