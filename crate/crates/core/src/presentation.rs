//! Group presentations given by generators and relator words.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lot::Log;
use crate::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub const fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in the generators and their inverses. Words need not be freely
/// reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn exponent_sum(&self) -> i32 {
        self.0.iter().map(|l| l.exponent()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// The cyclic permutation starting at letter `k`.
    pub fn rotated(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&names[l.generator]);
            if l.inverse {
                out.push_str("^-1");
            }
        }
        out
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub id: usize,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Relator>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Relator>) -> Result<Self> {
        for r in &relators {
            if let Some(l) = r.word.0.iter().find(|l| l.generator >= generators.len()) {
                return Err(Error::VertexOutOfRange(l.generator));
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Relator `x z y^-1 z^-1` for every edge `[x,z,y]`; relator id = edge id.
    pub fn of_log(g: &Log) -> Self {
        let relators = g
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| Relator {
                id,
                word: Word(alloc::vec![
                    Letter::pos(e.from),
                    Letter::pos(e.label),
                    Letter::neg(e.to),
                    Letter::neg(e.label),
                ]),
            })
            .collect();
        Presentation { generators: g.names().to_vec(), relators }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn relator(&self, id: usize) -> Option<&Relator> {
        self.relators.iter().find(|r| r.id == id)
    }

    pub fn exponent_sums(&self) -> ExponentSums {
        let per_relator: Vec<RelatorSums> = self
            .relators
            .iter()
            .map(|r| {
                let mut per_generator = BTreeMap::new();
                for l in r.word.letters() {
                    *per_generator.entry(self.generators[l.generator].clone()).or_insert(0) += l.exponent();
                }
                RelatorSums { id: r.id, total: r.word.exponent_sum(), per_generator }
            })
            .collect();
        let all_totals_zero = per_relator.iter().all(|s| s.total == 0);
        let all_generator_sums_zero =
            per_relator.iter().all(|s| s.per_generator.values().all(|&c| c == 0));
        ExponentSums { per_relator, all_totals_zero, all_generator_sums_zero }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("<");
        out.push_str(&self.generators.join(", "));
        out.push_str(" | ");
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{}", r.word.render(&self.generators));
        }
        out.push('>');
        out
    }
}

/// Exponent sums per relator. The Stallings test uses `total`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorSums {
    pub id: usize,
    pub total: i32,
    pub per_generator: BTreeMap<String, i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentSums {
    pub per_relator: Vec<RelatorSums>,
    pub all_totals_zero: bool,
    pub all_generator_sums_zero: bool,
}

/// A sub-presentation given by a set of generators and a set of relator ids
/// of an ambient presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubPresentation {
    pub generators: Vec<usize>,
    pub relators: Vec<usize>,
}

impl SubPresentation {
    /// Checks that every listed relator only uses listed generators and that
    /// the sub-presentation is full: any ambient relator over its generators
    /// is listed.
    pub fn validate(&self, p: &Presentation, index: usize) -> Result<()> {
        for &g in &self.generators {
            if g >= p.generators().len() {
                return Err(Error::VertexOutOfRange(g));
            }
        }
        for &rid in &self.relators {
            let r = p
                .relator(rid)
                .ok_or(Error::UnknownRelator(rid))?;
            if r.word.letters().iter().any(|l| !self.generators.contains(&l.generator)) {
                return Err(Error::NotFull(index));
            }
        }
        for r in p.relators() {
            let inside = r.word.letters().iter().all(|l| self.generators.contains(&l.generator));
            if inside && !self.relators.contains(&r.id) {
                return Err(Error::NotFull(index));
            }
        }
        Ok(())
    }

    pub fn validate_family(family: &[SubPresentation], p: &Presentation) -> Result<()> {
        for (i, t) in family.iter().enumerate() {
            t.validate(p, i)?;
            for (j, u) in family.iter().enumerate().take(i) {
                if t.generators.iter().any(|g| u.generators.contains(g)) {
                    return Err(Error::OverlappingSubPresentations(j, i));
                }
            }
        }
        Ok(())
    }
}

/// Parses `a b^-1 c` style words against a generator list.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word> {
    text.split_whitespace()
        .map(|tok| {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            generators
                .iter()
                .position(|g| g == name)
                .map(|generator| Letter { generator, inverse })
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lot::{Log, Lot};

    #[test]
    fn lot_relator_shape() {
        let t = Log::from_names(&["a", "b", "c"], &[["a", "c", "b"]]).unwrap();
        let p = Presentation::of_log(&t);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].word.render(p.generators()), "a c b^-1 c^-1");
    }

    #[test]
    fn exponent_sums_of_lot_relator() {
        let t = Log::from_names(&["a", "b", "c"], &[["a", "c", "b"]]).unwrap();
        let s = Presentation::of_log(&t).exponent_sums();
        let r = &s.per_relator[0];
        assert_eq!(r.total, 0);
        assert_eq!(r.per_generator["a"], 1);
        assert_eq!(r.per_generator["b"], -1);
        assert_eq!(r.per_generator["c"], 0);
        assert!(s.all_totals_zero);
        assert!(!s.all_generator_sums_zero);
    }

    #[test]
    fn exponent_sum_of_ab() {
        let gens: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let w = parse_word("a b", &gens).unwrap();
        let p = Presentation::new(gens, alloc::vec![Relator { id: 0, word: w }]).unwrap();
        let s = p.exponent_sums();
        assert_eq!(s.per_relator[0].total, 2);
        assert!(!s.all_totals_zero);
    }

    #[test]
    fn vertex_only_presentation() {
        let t = Lot::single_vertex("x").unwrap();
        let p = Presentation::of_log(&t);
        assert_eq!(p.generators().len(), 1);
        assert!(p.relators().is_empty());
        assert!(p.exponent_sums().all_totals_zero);
    }

    #[test]
    fn fullness() {
        let t = Lot::from_names(
            &["a", "b", "c", "d"],
            &[["a", "c", "b"], ["b", "a", "c"], ["c", "a", "d"]],
        )
        .unwrap();
        let p = Presentation::of_log(&t);
        let full = SubPresentation { generators: alloc::vec![0, 1, 2], relators: alloc::vec![0, 1] };
        assert!(full.validate(&p, 0).is_ok());
        let missing = SubPresentation { generators: alloc::vec![0, 1, 2], relators: alloc::vec![0] };
        assert_eq!(missing.validate(&p, 0), Err(Error::NotFull(0)));
    }
}
