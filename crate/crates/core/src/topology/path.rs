use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::crystal::Character;
use crate::error::{input, Error, Result};
use crate::numerics::{parse_rational, Turn, Q};

/// Default number of samples t_k = 1 − 2⁻ᵏ.
pub const DEFAULT_SAMPLES: usize = 12;

/// One path coordinate θ(t) = c0 + c1·t in turns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coordinate {
    pub c0: Q,
    pub c1: Q,
}

impl Coordinate {
    pub fn constant(c0: Q) -> Coordinate {
        Coordinate { c0, c1: Q::zero() }
    }

    pub fn affine(c0: Q, c1: Q) -> Coordinate {
        Coordinate { c0, c1 }
    }

    pub fn at(&self, t: Q) -> Q {
        self.c0 + self.c1 * t
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            return write!(f, "{}", self.c0);
        }
        write!(f, "{}+{}*t", self.c0, self.c1)
    }
}

impl FromStr for Coordinate {
    type Err = Error;

    /// `c0+c1*t`, `c1*t`, `t`, `c0-t`, or a constant turn (including 1, -1, i, -i).
    fn from_str(s: &str) -> Result<Coordinate> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !s.contains('t') || s.starts_with("t:") {
            let turn: Turn = s.parse()?;
            let q = turn.as_exact().ok_or_else(|| input(format!("path coordinate '{s}' must be exact")))?;
            return Ok(Coordinate::constant(q));
        }
        // Split at the last top-level sign that starts the t term.
        let t_pos = s.rfind('t').expect("checked above");
        if t_pos + 1 != s.len() {
            return Err(input(format!("path coordinate '{s}' must end with the t term")));
        }
        let head = &s[..t_pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).last();
        let (c0, coeff) = match split {
            Some(i) if !head[..i].ends_with('/') => (&head[..i], &head[i..]),
            _ => ("", head),
        };
        let c0 = if c0.is_empty() { Q::zero() } else { parse_rational(c0)? };
        let c1 = match coeff {
            "" | "+" => Q::one(),
            "-" => -Q::one(),
            c => parse_rational(c)?,
        };
        Ok(Coordinate::affine(c0, c1))
    }
}

/// t ↦ χ(t) with affine turn coordinates; the target is χ(1).
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterPath {
    pub coords: Vec<Coordinate>,
    pub samples: usize,
}

impl CharacterPath {
    pub fn new(coords: Vec<Coordinate>) -> CharacterPath {
        CharacterPath { coords, samples: DEFAULT_SAMPLES }
    }

    pub fn with_samples(mut self, samples: usize) -> CharacterPath {
        self.samples = samples;
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn turns(&self, t: Q) -> Vec<Q> {
        self.coords.iter().map(|c| c.at(t)).collect()
    }

    pub fn at(&self, t: Q) -> Character {
        Character::new(self.turns(t).into_iter().map(Turn::exact).collect())
    }

    pub fn target(&self) -> Character {
        self.at(Q::one())
    }

    /// t_k = 1 − 2⁻ᵏ for k = 1..samples.
    pub fn schedule(&self) -> Vec<Q> {
        (1..=self.samples).map(|k| Q::one() - Q::new(1, 1i128 << k)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.coords.iter().all(|c| c.c1.is_zero())
    }
}

impl fmt::Display for CharacterPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for CharacterPath {
    type Err = Error;

    /// `(1/4-1/4*t, 1/8-1/8*t, 1/5)`.
    fn from_str(s: &str) -> Result<CharacterPath> {
        let body = s.trim();
        let body = body.strip_prefix('(').unwrap_or(body);
        let body = body.strip_suffix(')').unwrap_or(body);
        if body.trim().is_empty() {
            return Err(input("empty path"));
        }
        let coords = body.split(',').map(Coordinate::from_str).collect::<Result<Vec<_>>>()?;
        Ok(CharacterPath::new(coords))
    }
}
