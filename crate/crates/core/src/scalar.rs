//! Binary64 primitives shared by the solver and the stability bench.

use num_complex::Complex64;

use crate::{Error, Result};

/// Unit round-off of binary64 under round-to-nearest-even, `2^-53`.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

pub fn unit_roundoff() -> f64 {
    UNIT_ROUNDOFF
}

/// `n u / (1 - n u)`, the usual bound on the relative error accumulated by a
/// chain of `n` rounded operations.
pub fn gamma_n(n: u64) -> Result<f64> {
    let nu = n as f64 * UNIT_ROUNDOFF;
    if n == 0 || nu >= 1.0 {
        return Err(Error::GammaOutOfRange(n));
    }
    Ok(nu / (1.0 - nu))
}

/// `+1` or `-1`. Zero of either sign has no sign.
pub fn real_sign(x: f64) -> Result<f64> {
    if x > 0.0 {
        Ok(1.0)
    } else if x < 0.0 {
        Ok(-1.0)
    } else {
        Err(Error::ZeroSign)
    }
}

/// `z / |z|`, with the modulus taken by `hypot` so that neither tiny nor
/// huge components over- or underflow on the way.
pub fn complex_phase(z: Complex64) -> Result<Complex64> {
    let modulus = modulus(z);
    if modulus == 0.0 {
        return Err(Error::ZeroPhase);
    }
    Ok(Complex64::new(z.re / modulus, z.im / modulus))
}

/// The representable number `k` steps away from `x` in `nextafter` order.
/// `+0` and `-0` occupy the same slot of that order.
pub fn ulp_neighbors(x: f64, k: i64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    if k == 0 {
        return Ok(x);
    }
    let overflow = Error::UlpOverflow { from: x, steps: k };
    let key = ordered_key(x)
        .checked_add(k)
        .ok_or_else(|| overflow.clone())?;
    let y = from_ordered_key(key);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(overflow)
    }
}

// Monotone map from finite doubles onto a contiguous integer range.
fn ordered_key(x: f64) -> i64 {
    let bits = x.to_bits() as i64;
    if bits < 0 {
        -(bits & i64::MAX)
    } else {
        bits
    }
}

fn from_ordered_key(key: i64) -> f64 {
    if key < 0 {
        f64::from_bits((-key) as u64 | (1 << 63))
    } else {
        f64::from_bits(key as u64)
    }
}

/// `|z|` without intermediate overflow.
pub fn modulus(z: Complex64) -> f64 {
    z.re.hypot(z.im)
}

/// Principal square root (non-negative real part). Exact on inputs such as
/// `-1` or `2i` whose roots are representable.
pub fn complex_sqrt(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if x == 0.0 && y == 0.0 {
        return Complex64::new(0.0, y);
    }
    let t = ((x.abs() + x.hypot(y)) / 2.0).sqrt();
    if x >= 0.0 {
        Complex64::new(t, y / (2.0 * t))
    } else {
        Complex64::new(y.abs() / (2.0 * t), t.copysign(y))
    }
}

/// Smith's complex division. Invariant under scaling numerator and
/// denominator by the same power of two.
pub fn complex_div(n: Complex64, d: Complex64) -> Complex64 {
    if d.im == 0.0 {
        return Complex64::new(n.re / d.re, n.im / d.re);
    }
    if d.re.abs() >= d.im.abs() {
        let r = d.im / d.re;
        let den = d.re + d.im * r;
        Complex64::new((n.re + n.im * r) / den, (n.im - n.re * r) / den)
    } else {
        let r = d.re / d.im;
        let den = d.re * r + d.im;
        Complex64::new((n.re * r + n.im) / den, (n.im * r - n.re) / den)
    }
}
