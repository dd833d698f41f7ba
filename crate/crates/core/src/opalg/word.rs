//! Words and formal GF(2)-sums of words in the operation letters.
//!
//! A word is a composite read right to left: `[Sq2, Pr]` is Sq²∘pr, applied
//! to an integral class by first reducing mod 2. Letters carry a (degree,
//! weight) bidegree and coefficient typing; all words in a sum must agree on
//! both.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Coefficient spectra for sources and targets of operations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Coefficient {
    /// Integral motivic cohomology MZ.
    MZ,
    /// Mod-2 motivic cohomology MZ/2.
    MZ2,
}

impl std::fmt::Display for Coefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficient::MZ => write!(f, "MZ"),
            Coefficient::MZ2 => write!(f, "MZ/2"),
        }
    }
}

/// One letter of an operation word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Letter {
    /// Left multiplication by τ ∈ h^{0,1}.
    Tau,
    /// Left multiplication by ρ = [-1] ∈ h^{1,1}.
    Rho,
    /// The motivic Steenrod square Sqⁱ, 1 ≤ i ≤ 5.
    Sq(u8),
    /// The integral Bockstein δ: MZ/2 → Σ^{1,0}MZ.
    Delta,
    /// The reduction pr: MZ → MZ/2.
    Pr,
}

/// (degree, weight).
pub type Bidegree = (i64, i64);

impl Letter {
    pub fn bidegree(&self) -> Bidegree {
        match self {
            Letter::Tau => (0, 1),
            Letter::Rho => (1, 1),
            Letter::Sq(i) => (*i as i64, (*i as i64) / 2),
            Letter::Delta => (1, 0),
            Letter::Pr => (0, 0),
        }
    }

    /// (source, target) coefficients.
    pub fn typing(&self) -> (Coefficient, Coefficient) {
        match self {
            Letter::Tau | Letter::Rho | Letter::Sq(_) => (Coefficient::MZ2, Coefficient::MZ2),
            Letter::Delta => (Coefficient::MZ2, Coefficient::MZ),
            Letter::Pr => (Coefficient::MZ, Coefficient::MZ2),
        }
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Letter::Tau => write!(f, "t"),
            Letter::Rho => write!(f, "r"),
            Letter::Sq(i) => write!(f, "Sq{i}"),
            Letter::Delta => write!(f, "d"),
            Letter::Pr => write!(f, "pr"),
        }
    }
}

/// A single composite word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn bidegree(&self) -> Bidegree {
        self.0
            .iter()
            .fold((0, 0), |(d, w), l| {
                let (ld, lw) = l.bidegree();
                (d + ld, w + lw)
            })
    }

    /// Source and target coefficients; `None` for the identity (polymorphic).
    /// Adjacent letters must chain.
    pub fn typing(&self) -> Result<Option<(Coefficient, Coefficient)>> {
        let Some(first) = self.0.first() else {
            return Ok(None);
        };
        let tgt = first.typing().1;
        let mut src = first.typing().0;
        for pair in self.0.windows(2) {
            let (inner_src, _) = pair[0].typing();
            let (_, inner_tgt) = pair[1].typing();
            if inner_src != inner_tgt {
                return Err(Error::CoefficientMismatch(format!(
                    "{} cannot follow {} (needs {} coefficients, gets {})",
                    pair[0], pair[1], inner_src, inner_tgt
                )));
            }
            src = pair[1].typing().0;
        }
        Ok(Some((src, tgt)))
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A formal GF(2)-sum of words. Addition is symmetric difference, so equal
/// words cancel in pairs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OpWord {
    pub terms: BTreeSet<Word>,
}

impl OpWord {
    pub fn zero() -> Self {
        OpWord::default()
    }

    pub fn one() -> Self {
        OpWord::from_word(Word::one())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(w);
        OpWord { terms }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        OpWord::from_word(Word(letters.to_vec()))
    }

    pub fn sum(words: &[&[Letter]]) -> Self {
        let mut out = OpWord::zero();
        for w in words {
            out.toggle(Word(w.to_vec()));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// GF(2) addition of a single word.
    pub fn toggle(&mut self, w: Word) {
        if !self.terms.remove(&w) {
            self.terms.insert(w);
        }
    }

    pub fn add(&self, other: &OpWord) -> OpWord {
        let mut out = self.clone();
        for w in &other.terms {
            out.toggle(w.clone());
        }
        out
    }

    /// Shared bidegree of the summed words, if nonzero and consistent.
    pub fn bidegree(&self) -> Result<Option<Bidegree>> {
        let mut deg = None;
        for w in &self.terms {
            let b = w.bidegree();
            match deg {
                None => deg = Some(b),
                Some(d) if d != b => {
                    return Err(Error::UnsupportedOp(format!(
                        "sum mixes bidegrees {d:?} and {b:?}"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Shared coefficient typing, if any word fixes one.
    pub fn typing(&self) -> Result<Option<(Coefficient, Coefficient)>> {
        let mut typing = None;
        for w in &self.terms {
            if let Some(t) = w.typing()? {
                match typing {
                    None => typing = Some(t),
                    Some(prev) if prev != t => {
                        return Err(Error::CoefficientMismatch(
                            "sum mixes coefficient typings".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(typing)
    }
}

impl std::fmt::Display for OpWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Composition a∘b, distributed over the sums. Rejects pairs whose
/// coefficients do not chain (a wiring bug in differential assembly).
pub fn op_compose(a: &OpWord, b: &OpWord) -> Result<OpWord> {
    let mut out = OpWord::zero();
    for wa in &a.terms {
        for wb in &b.terms {
            if let (Some((src_a, _)), Some((_, tgt_b))) = (wa.typing()?, wb.typing()?) {
                if src_a != tgt_b {
                    return Err(Error::CoefficientMismatch(format!(
                        "cannot compose {wa} with {wb}: source wants {src_a}, target provides {tgt_b}"
                    )));
                }
            }
            let mut letters = wa.0.clone();
            letters.extend_from_slice(&wb.0);
            out.toggle(Word(letters));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_concatenation() {
        let sq1 = OpWord::from_letters(&[Letter::Sq(1)]);
        let sq2 = OpWord::from_letters(&[Letter::Sq(2)]);
        let c = op_compose(&sq1, &sq2).unwrap();
        assert_eq!(c, OpWord::from_letters(&[Letter::Sq(1), Letter::Sq(2)]));
        assert_eq!(c.bidegree().unwrap(), Some((3, 1)));
    }

    #[test]
    fn pr_after_delta_is_allowed() {
        let pr = OpWord::from_letters(&[Letter::Pr]);
        let delta = OpWord::from_letters(&[Letter::Delta]);
        let sq1 = op_compose(&pr, &delta).unwrap();
        assert_eq!(sq1.bidegree().unwrap(), Some((1, 0)));
        assert_eq!(
            sq1.typing().unwrap(),
            Some((Coefficient::MZ2, Coefficient::MZ2))
        );
    }

    #[test]
    fn delta_after_delta_is_rejected() {
        let delta = OpWord::from_letters(&[Letter::Delta]);
        assert!(op_compose(&delta, &delta).is_err());
    }

    #[test]
    fn addition_cancels_in_pairs() {
        let sq2 = OpWord::from_letters(&[Letter::Sq(2)]);
        assert!(sq2.add(&sq2).is_zero());
    }
}
