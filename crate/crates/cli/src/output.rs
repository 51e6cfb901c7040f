//! Number formatting for human and machine output.
//!
//! Machine mode prints one `kind key=value ...` record per line. Floats use
//! 17 significant digits (`{:.16e}`), enough to round-trip an `f64`, and
//! complex numbers are written `re+imi` / `re-imi` with both parts in that
//! float format.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Human,
    Machine,
}

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", float(z.re), sign, float(z.im.abs()))
}

pub fn human_float(x: f64) -> String {
    // avoid printing "-0.000000000000"
    let x = if x.abs() < 5e-13 { 0.0 } else { x };
    format!("{x:.12}")
}

pub fn human_complex(z: Complex64) -> String {
    let im = if z.im.abs() < 5e-13 { 0.0 } else { z.im };
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{} {} {}i", human_float(z.re), sign, human_float(im.abs()))
}

/// Accumulates `key=value` fields for one machine record.
pub struct Record {
    line: String,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Self {
            line: kind.to_string(),
        }
    }

    pub fn field(mut self, key: &str, value: impl AsRef<str>) -> Self {
        self.line.push(' ');
        self.line.push_str(key);
        self.line.push('=');
        self.line.push_str(value.as_ref());
        self
    }

    pub fn float(self, key: &str, x: f64) -> Self {
        self.field(key, float(x))
    }

    pub fn complex(self, key: &str, z: Complex64) -> Self {
        self.field(key, complex(z))
    }

    pub fn print(self) {
        out!("{}", self.line);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_complex(s: &str) -> Complex64 {
        let body = s.strip_suffix('i').unwrap();
        // split at the sign that follows the real part's exponent
        let split = body[1..]
            .char_indices()
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i + 1)
            .find(|&i| !body[..i].ends_with('e'))
            .unwrap();
        let re: f64 = body[..split].parse().unwrap();
        let im: f64 = body[split..].parse().unwrap();
        Complex64::new(re, im)
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, -1.0 / 3.0, 8.660254037844386e-1, 1e-300, -2.5e17, 0.0] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(float(0.8660254037844386), "8.6602540378443860e-1");
    }

    #[test]
    fn complex_layout_round_trips() {
        for z in [
            Complex64::new(0.5, -0.25),
            Complex64::new(-1e-5, 3.0),
            Complex64::new(0.0, -0.0),
            Complex64::new(-7.0e-20, 1.0e20),
        ] {
            let s = complex(z);
            assert_eq!(parse_complex(&s), z, "{s}");
        }
        assert_eq!(complex(Complex64::new(1.0, -2.0)), "1.0000000000000000e0-2.0000000000000000e0i");
    }

    #[test]
    fn records() {
        let r = Record::new("amplitude").float("re", 1.0).field("label", "x");
        assert_eq!(r.line, "amplitude re=1.0000000000000000e0 label=x");
    }
}
