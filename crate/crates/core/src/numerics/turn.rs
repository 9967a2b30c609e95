use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{input, Error};

/// Exact rationals used for turns, translations and path coefficients.
pub type Q = Ratio<i128>;

/// Tolerance for comparing inexact turns on the circle.
pub const TURN_TOL: f64 = 1e-12;

/// A point exp(2πi·value) of the unit circle, value ∈ [0,1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Turn {
    Exact(Q),
    Approx(f64),
}

/// Reduce a rational to [0,1).
pub fn frac(q: Q) -> Q {
    let f = q - q.floor();
    if f >= Q::one() {
        Q::zero()
    } else {
        f
    }
}

impl Turn {
    pub fn zero() -> Turn {
        Turn::Exact(Q::zero())
    }

    pub fn exact(q: Q) -> Turn {
        Turn::Exact(frac(q))
    }

    pub fn ratio(p: i128, q: i128) -> Turn {
        Turn::exact(Q::new(p, q))
    }

    pub fn approx(v: f64) -> Turn {
        let r = v.rem_euclid(1.0);
        Turn::Approx(if r >= 1.0 { 0.0 } else { r })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Turn::Exact(_))
    }

    pub fn value(&self) -> f64 {
        match self {
            Turn::Exact(q) => q.to_f64().unwrap_or(0.0),
            Turn::Approx(v) => *v,
        }
    }

    /// Lift of the value into (−1/2, 1/2].
    pub fn signed_value(&self) -> f64 {
        let v = self.value();
        if v > 0.5 {
            v - 1.0
        } else {
            v
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Turn::Exact(q) => exact_complex(*q),
            Turn::Approx(v) => Complex64::from_polar(1.0, std::f64::consts::TAU * v),
        }
    }

    pub fn conj(&self) -> Turn {
        match self {
            Turn::Exact(q) => Turn::exact(-*q),
            Turn::Approx(v) => Turn::approx(-v),
        }
    }

    pub fn pow(&self, k: i64) -> Turn {
        match self {
            Turn::Exact(q) => Turn::exact(*q * Q::from_integer(k as i128)),
            Turn::Approx(v) => Turn::approx(v * k as f64),
        }
    }

    /// Square root with value in [0, 1/2).
    pub fn principal_sqrt(&self) -> Turn {
        match self {
            Turn::Exact(q) => Turn::Exact(*q / Q::from_integer(2)),
            Turn::Approx(v) => Turn::approx(v / 2.0),
        }
    }

    /// n-th root whose offset lies in (−1/(2n), 1/(2n)].
    pub fn principal_nth_root(&self, n: u32) -> Turn {
        assert!(n >= 1, "root order must be positive");
        match self {
            Turn::Exact(q) => {
                let half = Q::new(1, 2);
                let lifted = if *q > half { *q - Q::one() } else { *q };
                Turn::exact(lifted / Q::from_integer(n as i128))
            }
            Turn::Approx(v) => {
                let lifted = if *v > 0.5 { v - 1.0 } else { *v };
                Turn::approx(lifted / n as f64)
            }
        }
    }

    /// Exact membership in the n-th roots of unity; inexact turns are tested within tolerance.
    pub fn is_root_of_unity(&self, n: u64) -> bool {
        match self {
            Turn::Exact(q) => (n as i128).is_multiple_of(q.denom()),
            Turn::Approx(v) => {
                let x = v * n as f64;
                (x - x.round()).abs() <= TURN_TOL * n as f64
            }
        }
    }

    pub fn is_one(&self) -> bool {
        self.coincides(&Turn::zero())
    }

    /// Equality on the circle: exact for two exact turns, tolerant otherwise.
    pub fn coincides(&self, other: &Turn) -> bool {
        match (self, other) {
            (Turn::Exact(a), Turn::Exact(b)) => a == b,
            _ => self.distance(other) <= TURN_TOL,
        }
    }

    /// Distance along the circle measured in turns, in [0, 1/2].
    pub fn distance(&self, other: &Turn) -> f64 {
        let d = (self.value() - other.value()).rem_euclid(1.0);
        d.min(1.0 - d)
    }

    pub fn as_exact(&self) -> Option<Q> {
        match self {
            Turn::Exact(q) => Some(*q),
            Turn::Approx(_) => None,
        }
    }
}

fn exact_complex(q: Q) -> Complex64 {
    // Snap the eight axis and diagonal points so that ±1, ±i are exact.
    let d = *q.denom();
    let n = *q.numer();
    match d {
        1 => Complex64::new(1.0, 0.0),
        2 => Complex64::new(-1.0, 0.0),
        4 if n == 1 => Complex64::new(0.0, 1.0),
        4 => Complex64::new(0.0, -1.0),
        _ => Complex64::from_polar(1.0, std::f64::consts::TAU * q.to_f64().unwrap_or(0.0)),
    }
}

impl Mul for Turn {
    type Output = Turn;
    fn mul(self, rhs: Turn) -> Turn {
        match (self, rhs) {
            (Turn::Exact(a), Turn::Exact(b)) => Turn::exact(a + b),
            _ => Turn::approx(self.value() + rhs.value()),
        }
    }
}

impl Div for Turn {
    type Output = Turn;
    fn div(self, rhs: Turn) -> Turn {
        self * rhs.conj()
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Turn::Exact(q) if q.is_zero() => write!(f, "0"),
            Turn::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Turn::Approx(v) => write!(f, "{v}"),
        }
    }
}

/// Parse a rational written as `p`, `p/q` or a decimal like `0.125`.
pub fn parse_rational(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(input("empty number"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| input(format!("bad numerator in '{s}'")))?;
        let q: i128 = q.trim().parse().map_err(|_| input(format!("bad denominator in '{s}'")))?;
        if q == 0 {
            return Err(input(format!("zero denominator in '{s}'")));
        }
        return Ok(Q::new(p, q));
    }
    if let Some((int, dec)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part: i128 = if int.is_empty() || int == "-" || int == "+" {
            0
        } else {
            int.parse().map_err(|_| input(format!("bad number '{s}'")))?
        };
        if dec.is_empty() || !dec.chars().all(|c| c.is_ascii_digit()) || dec.len() > 30 {
            return Err(input(format!("bad number '{s}'")));
        }
        let den = 10i128.pow(dec.len() as u32);
        let frac_part = Q::new(dec.parse::<i128>().unwrap_or(0), den);
        let base = Q::from_integer(int_part.abs()) + frac_part;
        return Ok(if neg { -base } else { base });
    }
    s.parse::<i128>()
        .map(Q::from_integer)
        .map_err(|_| input(format!("bad number '{s}'")))
}

impl FromStr for Turn {
    type Err = Error;

    /// Accepts `1`, `-1`, `i`, `-i`, or a turn value such as `1/5`, `0.13`, `t:1/5`.
    fn from_str(s: &str) -> Result<Turn, Error> {
        let s = s.trim();
        match s {
            "1" | "+1" => return Ok(Turn::zero()),
            "-1" => return Ok(Turn::ratio(1, 2)),
            "i" | "+i" => return Ok(Turn::ratio(1, 4)),
            "-i" => return Ok(Turn::ratio(3, 4)),
            _ => {}
        }
        let body = s.strip_prefix("t:").unwrap_or(s);
        if let Some(f) = body.strip_prefix('~') {
            let v: f64 = f.parse().map_err(|_| input(format!("bad inexact turn '{s}'")))?;
            if !v.is_finite() {
                return Err(input(format!("non-finite turn '{s}'")));
            }
            return Ok(Turn::approx(v));
        }
        Ok(Turn::exact(parse_rational(body)?))
    }
}
