use std::fmt;
use std::str::FromStr;

use super::point::PointSubgroup;
use crate::error::{input, Error};
use crate::numerics::Turn;

/// Lattice character χ(n) = ∏ exp(2πi·u_j·n_j).
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub u: Vec<Turn>,
}

impl Character {
    pub fn new(u: Vec<Turn>) -> Character {
        Character { u }
    }

    pub fn trivial(r: usize) -> Character {
        Character { u: vec![Turn::zero(); r] }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn eval(&self, n: &[i64]) -> Turn {
        self.u.iter().zip(n).fold(Turn::zero(), |acc, (u, &k)| acc * u.pow(k))
    }

    pub fn coincides(&self, other: &Character) -> bool {
        self.u.len() == other.u.len() && self.u.iter().zip(&other.u).all(|(a, b)| a.coincides(b))
    }

    pub fn is_exact(&self) -> bool {
        self.u.iter().all(Turn::is_exact)
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character { u: self.u.iter().zip(&other.u).map(|(a, b)| *a * *b).collect() }
    }

    pub fn conj(&self) -> Character {
        Character { u: self.u.iter().map(Turn::conj).collect() }
    }

    /// Largest circle distance between coordinates, in turns.
    pub fn distance(&self, other: &Character) -> f64 {
        self.u.iter().zip(&other.u).map(|(a, b)| a.distance(b)).fold(0.0, f64::max)
    }
}

/// Render a coordinate: ±1 and ±i literally, other turns as `t:p/q`.
pub fn format_coordinate(t: &Turn) -> String {
    match t {
        Turn::Exact(q) => match (*q.numer(), *q.denom()) {
            (0, _) => "1".into(),
            (1, 2) => "-1".into(),
            (1, 4) => "i".into(),
            (3, 4) => "-i".into(),
            (p, d) => format!("t:{p}/{d}"),
        },
        Turn::Approx(v) => format!("t:~{v}"),
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.u.iter().map(format_coordinate).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Character {
    type Err = Error;

    /// `(1,-1,t:1/5)`; each coordinate is 1, -1, i, -i, or a turn value such as `1/5`, `t:0.13`, `~0.13`.
    fn from_str(s: &str) -> Result<Character, Error> {
        let body = s.trim();
        let body = body.strip_prefix('(').unwrap_or(body);
        let body = body.strip_suffix(')').unwrap_or(body);
        if body.trim().is_empty() {
            return Err(input(format!("empty character '{s}'")));
        }
        let u = body.split(',').map(Turn::from_str).collect::<Result<Vec<_>, _>>()?;
        Ok(Character::new(u))
    }
}

/// Orbit of a character: coset representatives (ascending), their images, and the stabilizer.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub characters: Vec<Character>,
    pub reps: Vec<usize>,
    pub stabilizer: PointSubgroup,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.characters.len()
    }

    pub fn position(&self, chi: &Character) -> Option<usize> {
        self.characters.iter().position(|c| c.coincides(chi))
    }
}
