use std::fmt;

use super::RError;

/// A word `s_{k_1} s_{k_2} ⋯` in the adjacent transpositions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PermWord {
    letters: Vec<u32>,
}

impl PermWord {
    pub fn new(letters: Vec<u32>) -> Result<Self, RError> {
        if letters.contains(&0) {
            return Err(RError::Parse("letters are numbered from 1".into()));
        }
        Ok(PermWord { letters })
    }

    /// Accepts `"s1 s2 s1"`, `"s1,s2"`, `"1 2 1"` or `"121"`; the empty
    /// string is the identity.
    pub fn parse(s: &str) -> Result<Self, RError> {
        let s = s.trim();
        let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
        let mut letters = Vec::new();
        if tokens.len() == 1 && tokens[0].bytes().all(|b| b.is_ascii_digit()) && tokens[0].len() > 1 {
            letters.extend(tokens[0].bytes().map(|b| (b - b'0') as u32));
        } else {
            for t in tokens {
                let d = t.strip_prefix('s').unwrap_or(t);
                letters.push(d.parse().map_err(|_| RError::Parse(format!("bad letter {t:?}")))?);
            }
        }
        Self::new(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> Self {
        PermWord { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        PermWord { letters: self.letters.iter().chain(&other.letters).copied().collect() }
    }

    pub(crate) fn check(&self, m: u32) -> Result<(), RError> {
        match self.letters.iter().find(|&&k| k + 1 > m) {
            Some(&k) => Err(RError::WordOutOfRange { k, m }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for PermWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let s: Vec<String> = self.letters.iter().map(|k| format!("s{k}")).collect();
        write!(f, "{}", s.join(" "))
    }
}
