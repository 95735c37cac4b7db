//! Text forms of scalars used by the command-line front end.
//!
//! Complex literals are `RE`, `IMi`, `RE+IMi` or `RE-IMi`, e.g. `1.5-2i`.

use num_complex::Complex64;

use crate::{Error, Result};

pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s = text.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse {text:?} as a number"));
    let z = match s.strip_suffix(['i', 'I']) {
        None => Complex64::new(s.parse().map_err(|_| bad())?, 0.0),
        Some(body) => {
            // Split at the last sign that is neither leading nor an exponent sign.
            let split = body
                .char_indices()
                .rev()
                .find(|&(k, ch)| {
                    (ch == '+' || ch == '-') && k > 0 && !body[..k].ends_with(['e', 'E'])
                })
                .map(|(k, _)| k);
            let (re, im) = match split {
                Some(k) => (body[..k].parse().map_err(|_| bad())?, &body[k..]),
                None => (0.0, body),
            };
            let im = match im {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => im.parse().map_err(|_| bad())?,
            };
            Complex64::new(re, im)
        }
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::InvalidArgument(format!("{text:?} is not finite")))
    }
}

/// `%.<digits>g`-style rendering; `None` gives the shortest string that
/// parses back to the same double.
pub fn format_real(x: f64, digits: Option<usize>) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let Some(digits) = digits.map(|d| d.max(1)) else {
        let plain = x.abs() >= 1e-5 && x.abs() < 1e16;
        return if plain {
            format!("{x}")
        } else {
            format!("{x:e}")
        };
    };
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn format_complex(z: Complex64, digits: Option<usize>) -> String {
    let re = format_real(z.re, digits);
    if z.im == 0.0 {
        return re;
    }
    let im = format_real(z.im.abs(), digits);
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}
