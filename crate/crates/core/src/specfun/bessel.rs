//! Bessel functions of integer order: real argument via series / Miller's
//! downward recurrence, complex argument (orders 0) via series and Hankel
//! asymptotics.

use crate::{LwError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Overflow guard for the exponentially growing complex-argument functions.
const COMPLEX_ARG_LIMIT: f64 = 700.0;

/// J_n(x) for integer n >= 0, real x, relative accuracy ~1e-13 on |x| <= 50.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    if n < 0 {
        return Err(LwError::Argument(format!("bessel_j: order n = {n} must be >= 0")));
    }
    if !x.is_finite() {
        return Err(LwError::Argument(format!("bessel_j: non-finite argument {x}")));
    }
    let n = n as usize;
    // J_n(-x) = (-1)^n J_n(x)
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    if ax == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let val = if ax <= 8.0 { jn_series(n, ax) } else { jn_miller(n, ax) };
    Ok(sign * val)
}

/// Ascending power series; accurate for moderate arguments where the
/// alternating terms do not dominate the result.
fn jn_series(n: usize, x: f64) -> f64 {
    let half = x / 2.0;
    // leading term (x/2)^n / n!
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / (k as f64);
    }
    let mut sum = term;
    let x2 = half * half;
    for k in 1..200 {
        let kf = k as f64;
        term *= -x2 / (kf * (kf + n as f64));
        sum += term;
        if term.abs() < sum.abs() * 1e-17 + 1e-300 {
            break;
        }
    }
    sum
}

/// Miller's downward recurrence with sum normalization
/// J_0 + 2 (J_2 + J_4 + ...) = 1; near machine precision for all x,
/// and yields every order below the start index at once.
fn jn_miller(n: usize, x: f64) -> f64 {
    let start = miller_start(n, x);
    let mut jp = 0.0_f64; // J_{k+1}
    let mut j = 1e-300_f64; // J_k (arbitrary seed)
    let mut norm = 0.0_f64;
    let mut result = if n == start { j } else { 0.0 };
    let mut k = start;
    while k > 0 {
        let jm = (2.0 * k as f64 / x) * j - jp;
        jp = j;
        j = jm;
        k -= 1;
        if k == n {
            result = j;
        }
        if k % 2 == 0 && k > 0 {
            norm += 2.0 * j;
        }
        if j.abs() > 1e250 {
            let scale = 1e-250;
            j *= scale;
            jp *= scale;
            norm *= scale;
            result *= scale;
        }
    }
    norm += j; // J_0 contribution
    result / norm
}

fn miller_start(n: usize, x: f64) -> usize {
    let xb = x.max(n as f64);
    let extra = 18.0 + 10.0 * (xb + 1.0).powf(1.0 / 3.0);
    let mut s = (xb + extra) as usize + 1;
    if s % 2 == 1 {
        s += 1;
    }
    s
}

/// J_0 of a complex argument: power series for |z| <= 13, Hankel
/// asymptotics beyond. Even in z; principal branch on the asymptotic side.
pub fn bessel_j0_complex(z: Complex64) -> Result<Complex64> {
    guard_finite(z)?;
    if z.norm() > COMPLEX_ARG_LIMIT {
        return Err(LwError::Overflow { magnitude: z.norm(), limit: COMPLEX_ARG_LIMIT });
    }
    // J_0 is even: fold to Re z >= 0 so the asymptotic expansion is valid.
    let z = if z.re < 0.0 { -z } else { z };
    if z.norm() <= 13.0 {
        Ok(j0_series_complex(z))
    } else {
        Ok(j0_asymptotic_complex(z))
    }
}

/// I_0 of a complex argument, through I_0(z) = J_0(iz).
pub fn mod_bessel_i0_complex(z: Complex64) -> Result<Complex64> {
    guard_finite(z)?;
    if z.norm() > COMPLEX_ARG_LIMIT {
        return Err(LwError::Overflow { magnitude: z.norm(), limit: COMPLEX_ARG_LIMIT });
    }
    bessel_j0_complex(Complex64::new(0.0, 1.0) * z)
}

fn guard_finite(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(LwError::Argument(format!("non-finite complex argument {z}")));
    }
    Ok(())
}

fn j0_series_complex(z: Complex64) -> Complex64 {
    let q = z * z / 4.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        sum += term;
        if term.norm() < sum.norm() * 1e-17 + 1e-300 {
            break;
        }
    }
    sum
}

/// Hankel-function asymptotic expansion, c_k = ((2k)!)^2 / (k!^3 32^k):
/// H0^(1,2)(z) = sqrt(2/(pi z)) e^{+-i(z - pi/4)} sum_k (-+i)^k c_k z^-k.
fn j0_asymptotic_complex(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let pref = (2.0 / (PI * z)).sqrt() / 2.0;
    let phase = z - PI / 4.0;
    let mut s1 = Complex64::new(0.0, 0.0);
    let mut s2 = Complex64::new(0.0, 0.0);
    let mut ck = 1.0_f64;
    let mut zk = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 0..24 {
        let t1 = (-i).powu(k) * ck * zk;
        let mag = t1.norm();
        if mag > prev {
            break; // divergent tail of the asymptotic series
        }
        prev = mag;
        s1 += t1;
        s2 += i.powu(k) * ck * zk;
        let kf = (k + 1) as f64;
        ck *= (2.0 * kf - 1.0) * (2.0 * kf - 1.0) / (8.0 * kf);
        zk /= z;
    }
    pref * ((i * phase).exp() * s1 + (-i * phase).exp() * s2)
}
