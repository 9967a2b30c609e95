use crate::error::{input, Result};

const MAX_LETTERS: usize = 100_000;

/// A flattened word: a sequence of (generator, ±1) letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    letters: Vec<(String, i64)>,
}

impl Word {
    /// Parse words such as `(b^-1 a)^2` or `a b^2 a^-1`. A generator is one letter followed by digits.
    pub fn parse(text: &str) -> Result<Word> {
        let chars: Vec<char> = text.chars().collect();
        let mut p = Parser { chars: &chars, at: 0, text };
        let letters = p.sequence()?;
        p.skip_ws();
        if p.at != chars.len() {
            return Err(input(format!("unexpected '{}' in word '{text}'", chars[p.at])));
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(|(g, _)| g.as_str())
    }

    /// Fold the word left to right; `gen` gives the image of a generator, `inv` inverts, `mul` multiplies.
    pub fn eval<T: Clone>(
        &self,
        one: T,
        mut gen: impl FnMut(&str) -> Option<T>,
        mut inv: impl FnMut(&T) -> T,
        mut mul: impl FnMut(&T, &T) -> T,
    ) -> Result<T> {
        let mut acc = one;
        for (g, e) in &self.letters {
            let x = gen(g).ok_or_else(|| input(format!("unknown generator '{g}'")))?;
            let x = if *e < 0 { inv(&x) } else { x };
            acc = mul(&acc, &x);
        }
        Ok(acc)
    }
}

struct Parser<'a> {
    chars: &'a [char],
    at: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && (self.chars[self.at].is_whitespace() || self.chars[self.at] == '*') {
            self.at += 1;
        }
    }

    fn sequence(&mut self) -> Result<Vec<(String, i64)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.chars.get(self.at) {
                None | Some(')') => return Ok(out),
                _ => {
                    let atom = self.atom()?;
                    let e = self.exponent()?;
                    let grown = (atom.len() as u128) * u128::from(e.unsigned_abs()) + out.len() as u128;
                    if grown > MAX_LETTERS as u128 {
                        return Err(input(format!("word '{}' is too long", self.text)));
                    }
                    out.extend(power(&atom, e));
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Vec<(String, i64)>> {
        let c = self.chars[self.at];
        if c == '(' {
            self.at += 1;
            let inner = self.sequence()?;
            if self.chars.get(self.at) != Some(&')') {
                return Err(input(format!("unbalanced parenthesis in '{}'", self.text)));
            }
            self.at += 1;
            Ok(inner)
        } else if c.is_ascii_alphabetic() {
            let start = self.at;
            self.at += 1;
            while self.at < self.chars.len() && (self.chars[self.at].is_ascii_digit() || self.chars[self.at] == '_') {
                self.at += 1;
            }
            Ok(vec![(self.chars[start..self.at].iter().collect(), 1)])
        } else {
            Err(input(format!("unexpected '{c}' in word '{}'", self.text)))
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.chars.get(self.at) != Some(&'^') {
            return Ok(1);
        }
        self.at += 1;
        let start = self.at;
        if matches!(self.chars.get(self.at), Some('-') | Some('+')) {
            self.at += 1;
        }
        while self.at < self.chars.len() && self.chars[self.at].is_ascii_digit() {
            self.at += 1;
        }
        let s: String = self.chars[start..self.at].iter().collect();
        s.parse().map_err(|_| input(format!("bad exponent '{s}' in '{}'", self.text)))
    }
}

fn power(atom: &[(String, i64)], e: i64) -> Vec<(String, i64)> {
    let base: Vec<(String, i64)> = if e < 0 {
        atom.iter().rev().map(|(g, s)| (g.clone(), -s)).collect()
    } else {
        atom.to_vec()
    };
    let reps = e.unsigned_abs() as usize;
    base.iter().cycle().take(base.len() * reps).cloned().collect()
}
