//! Fox derivatives in the group ring of the free abelian group, and the
//! word problem in free metabelian groups.
//!
//! For a word `w` over rank `r`, the `r` partial Fox derivatives taken in
//! `Z A_r` are encoded together in one sparse map from `(exponent vector,
//! generator)` keys to integer coefficients. The map is built in a single
//! left-to-right pass over the word: a positive letter `x_i` contributes
//! `+1` at the running exponent vector (then advances it), a negative
//! letter first retreats the vector and contributes `-1` there. All key
//! coordinates and coefficients are bounded by `|w|`, so the ordered-map
//! operations cost `O(r log |w|)` each and the whole pass is
//! `O(r |w| log |w|)`.
//!
//! A word is trivial in the free metabelian group `M_r` exactly when all
//! of these derivatives vanish, so the word problem is the emptiness of
//! the support.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::words::{AbelianVector, Word};

/// Key of one stored coefficient: generator-major, then exponent vector
/// in lexicographic order, so one generator's derivative is a contiguous
/// range of the map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DerivKey {
    pub gen: usize,
    pub delta: AbelianVector,
}

/// All `r` abelianized Fox derivatives of one word, restricted to their
/// support. No stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianDerivativeMap {
    rank: usize,
    entries: BTreeMap<DerivKey, i64>,
}

impl AbelianDerivativeMap {
    /// Rebuilds a map from explicit entries (the JSON wire shape).
    /// Repeated keys accumulate; zero totals are dropped.
    pub fn from_entries(
        rank: usize,
        entries: impl IntoIterator<Item = (usize, AbelianVector, i64)>,
    ) -> Result<AbelianDerivativeMap> {
        let mut map = AbelianDerivativeMap {
            rank,
            entries: BTreeMap::new(),
        };
        for (gen, delta, coeff) in entries {
            if gen == 0 || gen > rank {
                return Err(Error::GeneratorOutOfRange { gen, rank });
            }
            if delta.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: delta.rank(),
                });
            }
            bump(&mut map.entries, gen, &delta, coeff);
        }
        Ok(map)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of support entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficient of `delta` in the derivative with respect to `x_gen`;
    /// zero when absent.
    pub fn coefficient(&self, gen: usize, delta: &AbelianVector) -> i64 {
        self.entries
            .get(&DerivKey {
                gen,
                delta: delta.clone(),
            })
            .copied()
            .unwrap_or(0)
    }

    /// Entries in key order (generator-major, then lexicographic).
    pub fn iter(&self) -> impl Iterator<Item = (&DerivKey, i64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    /// Projects the derivative with respect to `x_gen` out of the map.
    pub fn derivative(&self, gen: usize) -> Result<AbelianRingElement> {
        if gen == 0 || gen > self.rank {
            return Err(Error::GeneratorOutOfRange {
                gen,
                rank: self.rank,
            });
        }
        // The empty vector sorts before every real exponent vector, so it
        // brackets the per-generator range.
        let lo = DerivKey {
            gen,
            delta: AbelianVector::new(Vec::new()),
        };
        let hi = DerivKey {
            gen: gen + 1,
            delta: AbelianVector::new(Vec::new()),
        };
        let mut terms = BTreeMap::new();
        for (key, &coeff) in self.entries.range(lo..hi) {
            terms.insert(key.delta.clone(), coeff);
        }
        Ok(AbelianRingElement {
            rank: self.rank,
            terms,
        })
    }
}

impl fmt::Display for AbelianDerivativeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for gen in 1..=self.rank {
            if gen > 1 {
                writeln!(f)?;
            }
            let d = self.derivative(gen).expect("gen within rank");
            write!(f, "d/dx{gen} = {d}")?;
        }
        Ok(())
    }
}

/// Computes all abelianized Fox derivatives of `w` in one pass.
pub fn fox_abelian(w: &Word) -> AbelianDerivativeMap {
    let mut entries: BTreeMap<DerivKey, i64> = BTreeMap::new();
    let mut delta = AbelianVector::zero(w.rank());
    for &letter in w.letters() {
        let gen = letter.gen();
        if letter.is_positive() {
            bump(&mut entries, gen, &delta, 1);
            delta = delta.stepped(gen, 1);
        } else {
            delta = delta.stepped(gen, -1);
            bump(&mut entries, gen, &delta, -1);
        }
    }
    AbelianDerivativeMap {
        rank: w.rank(),
        entries,
    }
}

fn bump(entries: &mut BTreeMap<DerivKey, i64>, gen: usize, delta: &AbelianVector, inc: i64) {
    if inc == 0 {
        return;
    }
    let key = DerivKey {
        gen,
        delta: delta.clone(),
    };
    match entries.entry(key) {
        Entry::Vacant(e) => {
            e.insert(inc);
        }
        Entry::Occupied(mut e) => {
            let v = e.get_mut();
            *v = v.checked_add(inc).expect("coefficient overflow");
            if *v == 0 {
                e.remove();
            }
        }
    }
}

/// Word problem in the free metabelian group `M_r`: true iff `w = 1`.
pub fn wp_metabelian(w: &Word) -> bool {
    fox_abelian(w).is_empty()
}

/// A sparse element of the integer group ring `Z A_r`, keyed by exponent
/// vector. No stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianRingElement {
    rank: usize,
    terms: BTreeMap<AbelianVector, i64>,
}

impl AbelianRingElement {
    pub fn zero(rank: usize) -> AbelianRingElement {
        AbelianRingElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * x^delta`.
    pub fn monomial(delta: AbelianVector, coeff: i64) -> AbelianRingElement {
        let rank = delta.rank();
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(delta, coeff);
        }
        AbelianRingElement { rank, terms }
    }

    /// The group-ring image of a word: the single monomial at its
    /// abelianization.
    pub fn from_word(w: &Word) -> AbelianRingElement {
        AbelianRingElement::monomial(w.abelianize(), 1)
    }

    /// Rebuilds an element from explicit terms, accumulating repeats and
    /// dropping zero totals.
    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (AbelianVector, i64)>,
    ) -> crate::error::Result<AbelianRingElement> {
        let mut out = AbelianRingElement::zero(rank);
        for (delta, coeff) in terms {
            if delta.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: delta.rank(),
                });
            }
            out.accumulate(delta, coeff);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, delta: &AbelianVector) -> i64 {
        self.terms.get(delta).copied().unwrap_or(0)
    }

    /// Terms in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&AbelianVector, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn add(&self, other: &AbelianRingElement) -> AbelianRingElement {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (delta, coeff) in other.iter() {
            out.accumulate(delta.clone(), coeff);
        }
        out
    }

    pub fn neg(&self) -> AbelianRingElement {
        AbelianRingElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn sub(&self, other: &AbelianRingElement) -> AbelianRingElement {
        self.add(&other.neg())
    }

    /// Left multiplication by the group element `x^shift`: a key-wise
    /// shift of every exponent vector.
    pub fn translated(&self, shift: &AbelianVector) -> AbelianRingElement {
        assert_eq!(self.rank, shift.rank(), "rank mismatch");
        AbelianRingElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, &v)| (k.add(shift), v))
                .collect(),
        }
    }

    /// Right multiplication by `(x_axis - 1)`.
    pub fn times_generator_minus_one(&self, axis: usize) -> AbelianRingElement {
        let unit = AbelianVector::unit(self.rank, axis);
        self.translated(&unit).sub(self)
    }

    fn accumulate(&mut self, delta: AbelianVector, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(delta) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v = v.checked_add(coeff).expect("coefficient overflow");
                if *v == 0 {
                    e.remove();
                }
            }
        }
    }
}

impl fmt::Display for AbelianRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (delta, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.unsigned_abs();
            if i == 0 {
                if *coeff < 0 {
                    f.write_str("-")?;
                }
            } else if *coeff < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let trivial = delta.is_zero();
            if mag != 1 || trivial {
                write!(f, "{mag}")?;
                if !trivial {
                    f.write_str("*")?;
                }
            }
            if !trivial {
                write_monomial(f, delta)?;
            }
        }
        Ok(())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, delta: &AbelianVector) -> fmt::Result {
    let mut first = true;
    for (i, &e) in delta.coords().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    fn av(coords: &[i64]) -> AbelianVector {
        AbelianVector::new(coords.to_vec())
    }

    // The length-10 closed path on the rank-2 grid used as the running
    // example: x2 x1 x2 x1 x2 x1^-1 x2^-3 x1^-1.
    fn grid_word() -> Word {
        w("bababABBBA", 2)
    }

    #[test]
    fn grid_word_derivatives() {
        let m = fox_abelian(&grid_word());
        // d/dx1 = -1 + x2 - x1*x2^3 + x1*x2^2
        let d1 = m.derivative(1).unwrap();
        assert_eq!(d1.coefficient(&av(&[0, 0])), -1);
        assert_eq!(d1.coefficient(&av(&[0, 1])), 1);
        assert_eq!(d1.coefficient(&av(&[1, 3])), -1);
        assert_eq!(d1.coefficient(&av(&[1, 2])), 1);
        assert_eq!(d1.len(), 4);
        // d/dx2 = 1 - x1 + x1^2*x2^2 - x1*x2^2 (two x1*x2 passes cancel)
        let d2 = m.derivative(2).unwrap();
        assert_eq!(d2.coefficient(&av(&[0, 0])), 1);
        assert_eq!(d2.coefficient(&av(&[1, 0])), -1);
        assert_eq!(d2.coefficient(&av(&[2, 2])), 1);
        assert_eq!(d2.coefficient(&av(&[1, 2])), -1);
        assert_eq!(d2.len(), 4);
    }

    #[test]
    fn empty_word_has_empty_map() {
        assert!(fox_abelian(&Word::empty(3)).is_empty());
    }

    #[test]
    fn commutator_map() {
        let m = fox_abelian(&w("abAB", 2));
        let mut entries: Vec<(usize, Vec<i64>, i64)> = m
            .iter()
            .map(|(k, v)| (k.gen, k.delta.coords().to_vec(), v))
            .collect();
        entries.sort();
        assert_eq!(
            entries,
            alloc::vec![
                (1, alloc::vec![0, 0], 1),
                (1, alloc::vec![0, 1], -1),
                (2, alloc::vec![0, 0], -1),
                (2, alloc::vec![1, 0], 1),
            ]
        );
    }

    #[test]
    fn derivative_projection() {
        let m = fox_abelian(&grid_word());
        assert_eq!(
            alloc::format!("{}", m.derivative(1).unwrap()),
            "-1 + x2 + x1*x2^2 - x1*x2^3"
        );
        assert!(
            AbelianDerivativeMap {
                rank: 2,
                entries: BTreeMap::new()
            }
            .derivative(1)
            .unwrap()
            .is_zero()
        );
        let d2 = fox_abelian(&w("abAB", 2)).derivative(2).unwrap();
        assert_eq!(alloc::format!("{d2}"), "-1 + x1");
        assert!(m.derivative(3).is_err());
    }

    #[test]
    fn metabelian_word_problem() {
        assert!(!wp_metabelian(&w("a", 2)));
        assert!(!wp_metabelian(&w("abAB", 2)));
        let c = Word::commutator(&w("a", 2), &w("b", 2)).unwrap();
        let c_conj = c.conjugated_by(&w("A", 2)).unwrap();
        let second_derived = Word::commutator(&c, &c_conj).unwrap();
        assert!(wp_metabelian(&second_derived));
    }

    #[test]
    fn fundamental_identity_on_grid_word() {
        // w - 1 = sum_i d(w)/dx_i * (x_i - 1) in Z A_r.
        let word = grid_word();
        let m = fox_abelian(&word);
        let lhs = AbelianRingElement::from_word(&word)
            .sub(&AbelianRingElement::monomial(AbelianVector::zero(2), 1));
        let mut rhs = AbelianRingElement::zero(2);
        for gen in 1..=2 {
            rhs = rhs.add(&m.derivative(gen).unwrap().times_generator_minus_one(gen));
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_display() {
        assert_eq!(alloc::format!("{}", AbelianRingElement::zero(2)), "0");
        let e = AbelianRingElement::monomial(av(&[0, 0]), 2)
            .add(&AbelianRingElement::monomial(av(&[1, -2]), -1));
        assert_eq!(alloc::format!("{e}"), "2 - x1*x2^-2");
    }
}
