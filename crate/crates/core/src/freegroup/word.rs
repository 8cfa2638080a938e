//! Reduced words in a finitely generated free group.
//!
//! Generators are written x1, x2, ... and words parse from strings like
//! "x1 x2^-1" or "[x1, x2] x3^2". Brackets are commutators in the
//! convention [a, b] = a^-1 b^-1 a b.

use crate::error::{Error, Result};
use std::fmt;

/// A freely reduced word; each letter is a generator index (1-based) with a
/// sign.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord {
    letters: Vec<(u32, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: u32) -> Self {
        assert!(i >= 1, "generators are numbered from 1");
        FreeWord {
            letters: vec![(i, 1)],
        }
    }

    /// Builds from raw letters, freely reducing adjacent inverse pairs.
    pub fn from_letters(raw: impl IntoIterator<Item = (u32, i8)>) -> Self {
        let mut letters: Vec<(u32, i8)> = Vec::new();
        for (i, s) in raw {
            assert!(i >= 1 && (s == 1 || s == -1), "bad letter ({i}, {s})");
            if let Some(&(j, t)) = letters.last() {
                if j == i && t == -s {
                    letters.pop();
                    continue;
                }
            }
            letters.push((i, s));
        }
        FreeWord { letters }
    }

    pub fn letters(&self) -> &[(u32, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index appearing, or 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn exponent_sum(&self, i: u32) -> i64 {
        self.letters
            .iter()
            .filter(|&&(j, _)| j == i)
            .map(|&(_, s)| s as i64)
            .sum()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// g w g^-1
    pub fn conjugate_by(&self, g: &FreeWord) -> FreeWord {
        g.mul(self).mul(&g.inverse())
    }
}

/// a^-1 b^-1 a b
pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
    a.inverse().mul(&b.inverse()).mul(a).mul(b)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        let mut run: Option<(u32, i8, i64)> = None;
        let flush = |f: &mut fmt::Formatter<'_>,
                     run: &mut Option<(u32, i8, i64)>,
                     first: &mut bool|
         -> fmt::Result {
            if let Some((i, s, n)) = run.take() {
                if !*first {
                    write!(f, " ")?;
                }
                *first = false;
                let e = s as i64 * n;
                if e == 1 {
                    write!(f, "x{i}")?;
                } else {
                    write!(f, "x{i}^{e}")?;
                }
            }
            Ok(())
        };
        for &(i, s) in &self.letters {
            match run {
                Some((j, t, ref mut n)) if j == i && t == s => *n += 1,
                _ => {
                    flush(f, &mut run, &mut first)?;
                    run = Some((i, s, 1));
                }
            }
        }
        flush(f, &mut run, &mut first)
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Comma,
    Gen(u32),
    Caret(i64),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '*' | '\u{b7}' => {
                chars.next();
            }
            '[' => {
                chars.next();
                out.push(Token::Open);
            }
            ']' => {
                chars.next();
                out.push(Token::Close);
            }
            ',' => {
                chars.next();
                out.push(Token::Comma);
            }
            'x' => {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let idx: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad generator near 'x{digits}'")))?;
                if idx == 0 {
                    return Err(Error::Parse("generator indices start at 1".into()));
                }
                out.push(Token::Gen(idx));
            }
            '^' => {
                chars.next();
                let mut digits = String::new();
                if chars.peek() == Some(&'-') || chars.peek() == Some(&'+') {
                    digits.push(chars.next().unwrap());
                }
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let e: i64 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent near '^{digits}'")))?;
                out.push(Token::Caret(e));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn parse_expr(&mut self) -> Result<FreeWord> {
        let mut acc = FreeWord::identity();
        loop {
            match self.peek() {
                None | Some(Token::Close) | Some(Token::Comma) => return Ok(acc),
                _ => {
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
            }
        }
    }

    fn parse_factor(&mut self) -> Result<FreeWord> {
        let base = match self.peek() {
            Some(Token::Gen(i)) => {
                let w = FreeWord::generator(*i);
                self.pos += 1;
                w
            }
            Some(Token::Open) => {
                self.pos += 1;
                let a = self.parse_expr()?;
                if self.peek() != Some(&Token::Comma) {
                    return Err(Error::Parse("expected ',' inside brackets".into()));
                }
                self.pos += 1;
                let b = self.parse_expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(Error::Parse("expected ']'".into()));
                }
                self.pos += 1;
                commutator(&a, &b)
            }
            other => {
                return Err(Error::Parse(format!("unexpected token {other:?}")));
            }
        };
        if let Some(Token::Caret(e)) = self.peek() {
            let e = *e;
            self.pos += 1;
            if e == 0 {
                return Err(Error::Parse("zero exponent is not allowed".into()));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

/// Parses a word like "x1 x2^-1 [x1, x2]^2".
pub fn parse_word(s: &str) -> Result<FreeWord> {
    let tokens = tokenize(s)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
    };
    let w = p.parse_expr()?;
    if p.pos != tokens.len() {
        return Err(Error::Parse("trailing tokens after word".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_inverse_pairs() {
        let w = FreeWord::from_letters([(1, 1), (2, 1), (2, -1), (1, 1)]);
        assert_eq!(w, FreeWord::from_letters([(1, 1), (1, 1)]));
        let v = w.mul(&w.inverse());
        assert!(v.is_identity());
    }

    #[test]
    fn parse_basic_words() {
        assert_eq!(parse_word("x1 x2").unwrap().letters(), &[(1, 1), (2, 1)]);
        assert_eq!(parse_word("x1^-2").unwrap().letters(), &[(1, -1), (1, -1)]);
        assert_eq!(parse_word("x2 x2^-1").unwrap(), FreeWord::identity());
        assert_eq!(parse_word("").unwrap(), FreeWord::identity());
    }

    #[test]
    fn parse_commutators() {
        let w = parse_word("[x1, x2]").unwrap();
        assert_eq!(
            w,
            commutator(&FreeWord::generator(1), &FreeWord::generator(2))
        );
        assert_eq!(w.letters(), &[(1, -1), (2, -1), (1, 1), (2, 1)]);
        let nested = parse_word("[[x1,x2],[x1,x3]]").unwrap();
        assert_eq!(nested.max_generator(), 3);
        assert_eq!(
            nested,
            commutator(
                &parse_word("[x1,x2]").unwrap(),
                &parse_word("[x1,x3]").unwrap()
            )
        );
    }

    #[test]
    fn parse_rejects_junk() {
        assert!(parse_word("x0").is_err());
        assert!(parse_word("y1").is_err());
        assert!(parse_word("[x1 x2]").is_err());
        assert!(parse_word("x1^0").is_err());
        assert!(parse_word("x1 ]").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["x1 x2^-1", "[x1, x2]", "x1^3 x2^-2 x1", "e"] {
            let w = if s == "e" {
                FreeWord::identity()
            } else {
                parse_word(s).unwrap()
            };
            let shown = w.to_string();
            let back = if shown == "e" {
                FreeWord::identity()
            } else {
                parse_word(&shown).unwrap()
            };
            assert_eq!(w, back);
        }
    }

    #[test]
    fn exponent_sums() {
        let w = parse_word("x1 x2 x1 x2^-1 x1^-1").unwrap();
        assert_eq!(w.exponent_sum(1), 1);
        assert_eq!(w.exponent_sum(2), 0);
        assert_eq!(w.exponent_sum(3), 0);
    }

    #[test]
    fn conjugation_and_powers() {
        let g = parse_word("x2").unwrap();
        let w = parse_word("x1").unwrap();
        assert_eq!(w.conjugate_by(&g), parse_word("x2 x1 x2^-1").unwrap());
        assert_eq!(w.pow(-2), parse_word("x1^-2").unwrap());
        assert_eq!(w.pow(0), FreeWord::identity());
    }
}
