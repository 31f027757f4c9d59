//! Words over group generators and finite presentations.
//!
//! Letters are signed 1-based generator indices: `k` is generator `k`, `-k`
//! its inverse. Relations `lhs = rhs` are stored as the relator `lhs·rhs⁻¹`,
//! freely reduced.

mod parser;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use parser::{expand_word, parse_expr, parse_presentation, Expr, Scope};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0));
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0);
        self.0.push(letter);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `n` copies of the word, or of its inverse when `n < 0`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    /// `x^y = y⁻¹ x y`
    pub fn conjugate(x: &Word, y: &Word) -> Word {
        y.inverse().concat(x).concat(y)
    }

    pub fn free_reduce(&self) -> Word {
        free_reduce(self)
    }

    /// Largest generator index referenced (1-based), 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Renders the word with power runs, e.g. `a^-1 b^2 a`; the identity is `1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l < 0 { -run } else { run };
            let name = self
                .names
                .get(l.unsigned_abs() as usize - 1)
                .map(String::as_str)
                .unwrap_or("?");
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation directly from relator words. Relators are
    /// freely reduced; names must be unique and every letter in range.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> crate::Result<Self> {
        for (i, name) in generator_names.iter().enumerate() {
            if name.is_empty() || generator_names[..i].contains(name) {
                return Err(crate::Error::Syntax {
                    line: 0,
                    column: 0,
                    message: format!("invalid or duplicate generator name `{name}`"),
                });
            }
        }
        for r in &relators {
            if let Some(&l) = r
                .letters()
                .iter()
                .find(|l| l.unsigned_abs() as usize > generator_names.len())
            {
                return Err(crate::Error::GeneratorOutOfRange {
                    index: l,
                    count: generator_names.len(),
                });
            }
        }
        Ok(Presentation {
            generator_names,
            relators: relators.iter().map(free_reduce).collect(),
        })
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse(text: &str) -> crate::Result<Self> {
        parse_presentation(text)
    }
}

/// Prints in the DSL accepted by [`parse_presentation`], one relator per
/// relation `w = 1`.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {};", self.generator_names.join(", "))?;
        write!(f, "rels")?;
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { ",\n     " };
            write!(f, "{sep}{} = 1", r.display(&self.generator_names))?;
        }
        if self.relators.is_empty() {
            write!(f, " 1 = 1")?;
        }
        writeln!(f, ";")
    }
}
