//! Letters, words and alphabets.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A free variable: `x_k` (0-based index, printed 1-based) or the slack `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X(u32),
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub var: Var,
    pub star: bool,
}

impl Letter {
    pub fn x(k: u32) -> Self {
        Letter { var: Var::X(k), star: false }
    }

    pub fn x_star(k: u32) -> Self {
        Letter { var: Var::X(k), star: true }
    }

    pub fn y() -> Self {
        Letter { var: Var::Y, star: false }
    }

    pub fn y_star() -> Self {
        Letter { var: Var::Y, star: true }
    }

    pub fn adjoint(self) -> Self {
        Letter { star: !self.star, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.var {
            Var::X(k) => write!(f, "x{}", k + 1)?,
            Var::Y => write!(f, "y")?,
        }
        if self.star {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// A monomial; the empty word is the identity. Ordered by length, then
/// lexicographically by letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + o.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// `(uv)* = v*u*`.
    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.adjoint()).collect())
    }

    pub fn has_star(&self) -> bool {
        self.0.iter().any(|l| l.star && matches!(l.var, Var::X(_)))
    }

    pub fn has_slack(&self) -> bool {
        self.0.iter().any(|l| l.var == Var::Y)
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Which letters a polynomial may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    /// `x` only.
    Analytic,
    /// `x` and `x*`.
    Involutive,
    /// `x`, `x*`, `y` and `y*`.
    Slack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pub nvars: u32,
    pub context: Context,
}

impl Alphabet {
    pub fn analytic(nvars: u32) -> Self {
        Alphabet { nvars, context: Context::Analytic }
    }

    pub fn involutive(nvars: u32) -> Self {
        Alphabet { nvars, context: Context::Involutive }
    }

    pub fn slack(nvars: u32) -> Self {
        Alphabet { nvars, context: Context::Slack }
    }

    /// Smallest alphabet containing both.
    pub fn join(self, o: Alphabet) -> Alphabet {
        Alphabet {
            nvars: self.nvars.max(o.nvars),
            context: self.context.max(o.context),
        }
    }

    pub fn contains(&self, l: Letter) -> bool {
        match l.var {
            Var::X(k) => k < self.nvars && (!l.star || self.context >= Context::Involutive),
            Var::Y => self.context == Context::Slack,
        }
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|&l| self.contains(l))
    }

    /// Letters in canonical order.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for k in 0..self.nvars {
            out.push(Letter::x(k));
            if self.context >= Context::Involutive {
                out.push(Letter::x_star(k));
            }
        }
        if self.context == Context::Slack {
            out.push(Letter::y());
            out.push(Letter::y_star());
        }
        out
    }

    /// Smallest alphabet whose letters include every letter of `w`.
    pub fn of_word(w: &Word) -> Alphabet {
        let mut a = Alphabet::analytic(0);
        for l in w.letters() {
            match l.var {
                Var::X(k) => {
                    a.nvars = a.nvars.max(k + 1);
                    if l.star {
                        a.context = a.context.max(Context::Involutive);
                    }
                }
                Var::Y => a.context = Context::Slack,
            }
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_order_is_graded_lex() {
        let a = Word::new(vec![Letter::x(1)]);
        let b = Word::new(vec![Letter::x(0), Letter::x(0)]);
        let c = Word::new(vec![Letter::x(0), Letter::x_star(0)]);
        let d = Word::new(vec![Letter::y()]);
        assert!(Word::empty() < a);
        assert!(a < b && b < c);
        assert!(a < d);
    }

    #[test]
    fn adjoint_reverses() {
        let w = Word::new(vec![Letter::x(0), Letter::x(1)]);
        assert_eq!(w.adjoint(), Word::new(vec![Letter::x_star(1), Letter::x_star(0)]));
        assert_eq!(w.adjoint().adjoint(), w);
        assert_eq!(w.adjoint().to_string(), "x2'*x1'");
    }
}
