//! Text forms shared by the CLI and the CSV files: 17-significant-digit
//! floats and `re+imj` complex numbers.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scientific notation with 17 significant digits; round-trips every `f64`.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        // fold -0.0 so reruns that differ only in the sign of zero still match
        return format!("{:.16e}", 0.0);
    }
    format!("{x:.16e}")
}

pub fn format_complex(z: Complex64) -> String {
    let im = format_f64(z.im);
    if im.starts_with('-') {
        format!("{}{}j", format_f64(z.re), im)
    } else {
        format!("{}+{}j", format_f64(z.re), im)
    }
}

pub fn parse_f64(s: &str) -> Result<f64> {
    let s = s.trim();
    s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{s}`")))
}

/// Accepts `re`, `re+imj`, `re-imj` and `imj`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('j') else {
        return Ok(Complex64::new(parse_f64(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let im = if k + 1 == bytes.len() { "1" } else { &body[k + 1..] };
            let im = parse_f64(im)?;
            let im = if bytes[k] == b'-' { -im } else { im };
            Ok(Complex64::new(parse_f64(&body[..k])?, im))
        }
        None => Ok(Complex64::new(0.0, parse_f64(body)?)),
    }
}

/// Parses an inclusive grid `start:stop:steps` into `steps` evenly spaced
/// values (a single value when `steps == 1`).
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(Error::Parse(format!("grid must be start:stop:steps, got `{s}`")));
    };
    let (a, b) = (parse_f64(a)?, parse_f64(b)?);
    let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad step count `{n}`")))?;
    if n == 0 {
        return Err(Error::Parse("grid needs at least one step".into()));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let h = (b - a) / (n - 1) as f64;
    Ok((0..n).map(|k| if k == n - 1 { b } else { a + k as f64 * h }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1+0j").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("0.5-2j").unwrap(), Complex64::new(0.5, -2.0));
        assert_eq!(parse_complex("1e-3+2e-2j").unwrap(), Complex64::new(1e-3, 2e-2));
        assert_eq!(parse_complex("-1e+2-1e-1j").unwrap(), Complex64::new(-100.0, -0.1));
        assert_eq!(parse_complex("2j").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("-3").unwrap(), Complex64::new(-3.0, 0.0));
        assert!(parse_complex("1+xj").is_err());
        let z = Complex64::new(0.1, -1.0 / 3.0);
        assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }

    #[test]
    fn float_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02e23, std::f64::consts::PI] {
            assert_eq!(parse_f64(&format_f64(x)).unwrap(), x);
        }
        assert_eq!(format_f64(-0.0), format_f64(0.0));
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(parse_grid("2:5:1").unwrap(), vec![2.0]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
    }
}
