use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word in the generators of a presentation.
///
/// Letters are `(generator index, exponent)` with exponent `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn generator(g: usize) -> Word {
        Word { letters: vec![(g, 1)] }
    }

    /// Builds a word from letters and freely reduces it.
    pub fn from_letters<I: IntoIterator<Item = (usize, i8)>>(letters: I) -> Word {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "word letters have exponent +1 or -1");
            if let Some(&(h, f)) = out.last() {
                if h == g && f == -e {
                    out.pop();
                    continue;
                }
            }
            out.push((g, e));
        }
        Word { letters: out }
    }

    /// `x_g^k` for any integer `k`.
    pub fn power_of(g: usize, k: i64) -> Word {
        let e = if k >= 0 { 1 } else { -1 };
        Word::from_letters(std::iter::repeat_n((g, e), k.unsigned_abs() as usize))
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.0).max()
    }

    /// Parses whitespace separated tokens `x` or `x^k` against generator names.
    pub fn parse(s: &str, generators: &[String]) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let g = generators.iter().position(|x| x == name).ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            let e = if exp >= 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((g, e));
            }
        }
        Ok(Word::from_letters(letters))
    }

    pub fn display_with(&self, generators: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        // collapse runs into powers
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let (g, e) = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == (g, e) {
                j += 1;
            }
            let k = (j - i) as i64 * e as i64;
            let name = generators.get(g).cloned().unwrap_or_else(|| format!("x{g}"));
            if k == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{k}"));
            }
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0)).map(|g| format!("x{g}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        let w = Word::from_letters([(0, 1), (1, 1), (1, -1), (0, -1)]);
        assert!(w.is_empty());
        let g = vec!["a".to_string(), "b".to_string()];
        let c = Word::parse("a b a^-1 b^-1", &g).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.mul(&c.inverse()), Word::empty());
        assert_eq!(c.display_with(&g), "a b a^-1 b^-1");
        assert_eq!(Word::parse("a^3", &g).unwrap().display_with(&g), "a^3");
    }
}
