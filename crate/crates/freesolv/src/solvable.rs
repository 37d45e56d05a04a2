//! Prefix partitions and Fox derivatives over free solvable groups.
//!
//! Let `D_w` be the ordered set of the `n + 1` prefixes of a word `w`.
//! The class-`c` partition function sends each prefix index to the
//! smallest index of a prefix equal to it in `S_{r,c}`. The chain starts
//! from the free-abelian partition (equal running exponent sums) and is
//! refined one class at a time: two prefixes that are equal at class
//! `c - 1` are equal at class `c` iff all `r` of their Fox-derivative
//! differences, telescoped to the range between them and pushed through
//! the class-`(c-1)` partition, collect to zero. One refinement sweep
//! costs `O(r n^3)` in the worst case, so the class-`d` partition costs
//! `O(d r n^3)`.
//!
//! The class-`d` word problem then reads off whether the empty prefix
//! and the whole word share a representative, and the standard group
//! ring form of a Fox derivative in `Z S_{r,d}` is obtained by mapping
//! its prefix expansion through the partition and collecting terms.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::words::Word;

/// The ordered prefix family `w_0 = empty, w_1, ..., w_n = w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSet {
    word: Word,
}

impl PrefixSet {
    pub fn new(word: Word) -> PrefixSet {
        PrefixSet { word }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Number of prefixes, `n + 1`.
    pub fn prefix_count(&self) -> usize {
        self.word.len() + 1
    }

    /// Materializes the length-`j` prefix.
    pub fn prefix_word(&self, j: usize) -> Result<Word> {
        if j >= self.prefix_count() {
            return Err(Error::PrefixIndexOutOfRange {
                index: j,
                len: self.prefix_count(),
            });
        }
        Ok(self.word.prefix(j))
    }
}

/// Partition of prefix indices by equality in `S_{r,klass}`; each index
/// maps to the smallest index in its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFunction {
    klass: usize,
    reps: Vec<usize>,
}

impl PartitionFunction {
    /// Solvability class this partition was computed at.
    pub fn klass(&self) -> usize {
        self.klass
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep(&self, index: usize) -> usize {
        self.reps[index]
    }

    pub fn prefix_count(&self) -> usize {
        self.reps.len()
    }

    pub fn same_class(&self, i: usize, j: usize) -> bool {
        self.reps[i] == self.reps[j]
    }

    /// Whether the empty prefix and the full word fall together, i.e.
    /// the word is trivial at this class.
    pub fn endpoints_equal(&self) -> bool {
        self.reps[0] == self.reps[self.reps.len() - 1]
    }

    /// True when every class of `self` is contained in a class of
    /// `coarser`.
    pub fn refines(&self, coarser: &PartitionFunction) -> bool {
        self.reps.len() == coarser.reps.len()
            && (0..self.reps.len()).all(|i| coarser.reps[self.reps[i]] == coarser.reps[i])
    }
}

/// Partition of the prefixes by equal running exponent sums (class 1).
pub fn abelian_partition(prefixes: &PrefixSet) -> PartitionFunction {
    use alloc::collections::BTreeMap;
    use crate::words::AbelianVector;

    let word = prefixes.word();
    let mut reps = Vec::with_capacity(prefixes.prefix_count());
    let mut first_seen: BTreeMap<AbelianVector, usize> = BTreeMap::new();
    let mut delta = AbelianVector::zero(word.rank());
    reps.push(*first_seen.entry(delta.clone()).or_insert(0));
    for (j, &letter) in word.letters().iter().enumerate() {
        delta = delta.stepped(letter.gen(), letter.exponent());
        reps.push(*first_seen.entry(delta.clone()).or_insert(j + 1));
    }
    PartitionFunction { klass: 1, reps }
}

/// Reusable scratch for collecting similar terms in time linear in the
/// term list. The scratch array is indexed by representative and reset
/// through a touched-list after each call.
#[derive(Debug)]
pub struct TermCollector {
    scratch: Vec<i64>,
    touched: Vec<usize>,
}

impl TermCollector {
    pub fn new(prefix_count: usize) -> TermCollector {
        TermCollector {
            scratch: alloc::vec![0; prefix_count],
            touched: Vec::new(),
        }
    }

    /// Maps each index through the partition and sums coefficients per
    /// representative; zero totals are dropped. Entries come back in
    /// first-touch order.
    pub fn collect(
        &mut self,
        items: impl IntoIterator<Item = (i64, usize)>,
        p: &PartitionFunction,
    ) -> Vec<(usize, i64)> {
        debug_assert!(self.scratch.len() >= p.prefix_count());
        for (coeff, index) in items {
            let rep = p.rep(index);
            if self.scratch[rep] == 0 {
                self.touched.push(rep);
            }
            self.scratch[rep] = self.scratch[rep]
                .checked_add(coeff)
                .expect("coefficient overflow");
        }
        let mut out = Vec::new();
        for &rep in &self.touched {
            if self.scratch[rep] != 0 {
                out.push((rep, self.scratch[rep]));
                self.scratch[rep] = 0;
            }
        }
        self.touched.clear();
        out
    }

    /// Like [`TermCollector::collect`] but only reports whether every
    /// total cancels.
    fn collects_to_zero(
        &mut self,
        items: impl IntoIterator<Item = (i64, usize)>,
        p: &PartitionFunction,
    ) -> bool {
        let mut nonzero = 0usize;
        for (coeff, index) in items {
            let rep = p.rep(index);
            let old = self.scratch[rep];
            if old == 0 {
                self.touched.push(rep);
            }
            let new = old.checked_add(coeff).expect("coefficient overflow");
            self.scratch[rep] = new;
            match (old == 0, new == 0) {
                (true, false) => nonzero += 1,
                (false, true) => nonzero -= 1,
                _ => {}
            }
        }
        for &rep in &self.touched {
            self.scratch[rep] = 0;
        }
        self.touched.clear();
        nonzero == 0
    }
}

/// One-shot convenience over [`TermCollector`].
pub fn collect_similar_terms(
    items: &[(i64, usize)],
    p: &PartitionFunction,
) -> Vec<(usize, i64)> {
    TermCollector::new(p.prefix_count()).collect(items.iter().copied(), p)
}

/// Signed prefix-index expansion of the derivative difference between
/// prefixes `s` and `t` with respect to `x_k`, telescoped to the letters
/// strictly between them: `-1` at index `j - 1` for a positive letter,
/// `+1` at index `j` for a negative one.
fn difference_items(
    word: &Word,
    s: usize,
    t: usize,
    k: usize,
) -> impl Iterator<Item = (i64, usize)> + '_ {
    word.letters()[s..t]
        .iter()
        .enumerate()
        .filter(move |(_, letter)| letter.gen() == k)
        .map(move |(offset, letter)| {
            let j = s + offset + 1;
            if letter.is_positive() {
                (-1, j - 1)
            } else {
                (1, j)
            }
        })
}

fn difference_is_zero(
    prefixes: &PrefixSet,
    p_prev: &PartitionFunction,
    s: usize,
    t: usize,
    k: usize,
    collector: &mut TermCollector,
) -> bool {
    collector.collects_to_zero(difference_items(prefixes.word(), s, t, k), p_prev)
}

/// Decides whether the Fox derivatives of prefixes `s` and `t` with
/// respect to `x_k` agree in `Z S_{r,c-1}`, given the class-`(c-1)`
/// partition. Requires `s <= t` with both prefixes already equal one
/// class below; runs in `O(t - s)`.
pub fn derivative_difference_is_zero(
    prefixes: &PrefixSet,
    p_prev: &PartitionFunction,
    s: usize,
    t: usize,
    k: usize,
) -> Result<bool> {
    let n = prefixes.prefix_count();
    if s >= n || t >= n {
        return Err(Error::PrefixIndexOutOfRange {
            index: s.max(t),
            len: n,
        });
    }
    let rank = prefixes.word().rank();
    if k == 0 || k > rank {
        return Err(Error::GeneratorOutOfRange { gen: k, rank });
    }
    if s > t || !p_prev.same_class(s, t) {
        return Err(Error::PartitionPrecondition { s, t });
    }
    let mut collector = TermCollector::new(p_prev.prefix_count());
    Ok(difference_is_zero(prefixes, p_prev, s, t, k, &mut collector))
}

fn refine_once(
    prefixes: &PrefixSet,
    p_prev: &PartitionFunction,
    collector: &mut TermCollector,
) -> PartitionFunction {
    let n1 = p_prev.prefix_count();
    let rank = prefixes.word().rank();
    let mut reps = alloc::vec![0usize; n1];
    // Sub-representatives chosen so far within each previous class,
    // indexed by the previous representative.
    let mut chosen: Vec<Vec<usize>> = alloc::vec![Vec::new(); n1];
    for t in 0..n1 {
        let prev_rep = p_prev.rep(t);
        let mut assigned = None;
        for &s in &chosen[prev_rep] {
            let equal =
                (1..=rank).all(|k| difference_is_zero(prefixes, p_prev, s, t, k, collector));
            if equal {
                assigned = Some(s);
                break;
            }
        }
        match assigned {
            Some(s) => reps[t] = s,
            None => {
                reps[t] = t;
                chosen[prev_rep].push(t);
            }
        }
    }
    PartitionFunction {
        klass: p_prev.klass + 1,
        reps,
    }
}

/// The class-`d` partition of the prefixes of `w`, `d >= 1`.
pub fn partition(w: &Word, d: usize) -> PartitionFunction {
    assert!(d >= 1, "solvability class must be at least 1");
    let prefixes = PrefixSet::new(w.clone());
    let mut p = abelian_partition(&prefixes);
    let mut collector = TermCollector::new(p.prefix_count());
    for _ in 2..=d {
        p = refine_once(&prefixes, &p, &mut collector);
    }
    p
}

/// Word problem in the free solvable group `S_{r,d}`: true iff `w = 1`.
pub fn wp_solvable(w: &Word, d: usize) -> bool {
    partition(w, d).endpoints_equal()
}

/// Standard group ring form of a Fox derivative in `Z S_{r,d}`: nonzero
/// coefficients attached to partition-representative prefix indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvableRingElement {
    klass: usize,
    terms: Vec<(i64, usize)>,
}

impl SolvableRingElement {
    /// Rebuilds an element from explicit terms (the JSON wire shape);
    /// zero coefficients are dropped and terms are sorted by index.
    pub fn from_terms(klass: usize, terms: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut terms: Vec<(i64, usize)> = terms.into_iter().filter(|&(c, _)| c != 0).collect();
        terms.sort_unstable_by_key(|&(_, idx)| idx);
        SolvableRingElement { klass, terms }
    }

    pub fn klass(&self) -> usize {
        self.klass
    }

    /// `(coefficient, prefix index)` pairs in increasing index order.
    pub fn terms(&self) -> &[(i64, usize)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The Fox derivative of `w` with respect to `x_k`, presented in
/// standard form over `Z S_{r,d}`.
pub fn fox_solvable(w: &Word, d: usize, k: usize) -> Result<SolvableRingElement> {
    if k == 0 || k > w.rank() {
        return Err(Error::GeneratorOutOfRange {
            gen: k,
            rank: w.rank(),
        });
    }
    let p = partition(w, d);
    Ok(fox_from_partition(w, &p, k))
}

/// All `r` derivatives of `w` over `Z S_{r,d}`, sharing one partition
/// computation.
pub fn fox_solvable_all(w: &Word, d: usize) -> (PartitionFunction, Vec<SolvableRingElement>) {
    let p = partition(w, d);
    let rows = (1..=w.rank())
        .map(|k| fox_from_partition(w, &p, k))
        .collect();
    (p, rows)
}

fn fox_from_partition(w: &Word, p: &PartitionFunction, k: usize) -> SolvableRingElement {
    // Expansion of d(w)/dx_k as signed prefixes: +1 at j-1 for positive
    // letters, -1 at j for negative ones.
    let items = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, letter)| letter.gen() == k)
        .map(|(idx, letter)| {
            let j = idx + 1;
            if letter.is_positive() {
                (1, j - 1)
            } else {
                (-1, j)
            }
        });
    let mut collector = TermCollector::new(p.prefix_count());
    let mut collected = collector.collect(items, p);
    collected.sort_unstable_by_key(|&(rep, _)| rep);
    SolvableRingElement {
        klass: p.klass(),
        terms: collected.into_iter().map(|(rep, c)| (c, rep)).collect(),
    }
}
