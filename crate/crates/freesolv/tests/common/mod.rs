//! Shared helpers for the integration suites: seeded word generators and
//! brute-force oracles kept independent of the library's solver paths.

// Each integration binary compiles this module and uses its own subset.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use freesolv::{path_flow, wp_metabelian, GridFlow, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random letters, cancellations allowed.
pub fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    let letters = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5)))
        .collect();
    Word::from_letters(rank, letters).expect("letters within rank")
}

/// A word trivial in M_r but generally not in the free group: a
/// commutator of two derived-subgroup elements built from `u` and `v`.
pub fn second_derived_word(u: &Word, v: &Word) -> Word {
    let a = Word::commutator(u, v).expect("equal ranks");
    let b = Word::commutator(&v.inverse(), u).expect("equal ranks");
    Word::commutator(&a, &b).expect("equal ranks")
}

/// Direct expansion of the derivative formula: for each positive letter
/// the abelianized prefix before it, for each negative letter the prefix
/// including it, materialized quadratically. Independent oracle for the
/// single-pass computation.
pub fn naive_fox_entries(w: &Word) -> BTreeMap<(usize, Vec<i64>), i64> {
    let mut out: BTreeMap<(usize, Vec<i64>), i64> = BTreeMap::new();
    for (idx, letter) in w.letters().iter().enumerate() {
        let j = idx + 1;
        let (prefix_len, coeff) = if letter.is_positive() {
            (j - 1, 1)
        } else {
            (j, -1)
        };
        let delta = w.prefix(prefix_len).abelianize().into_coords().to_vec();
        *out.entry((letter.gen(), delta)).or_insert(0) += coeff;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// The library map flattened to the oracle's shape.
pub fn fox_entries(w: &Word) -> BTreeMap<(usize, Vec<i64>), i64> {
    freesolv::fox_abelian(w)
        .iter()
        .map(|(key, coeff)| ((key.gen, key.delta.coords().to_vec()), coeff))
        .collect()
}

/// Prefix partition at class 2 computed the slow way: first index whose
/// quotient with the prefix is trivial in M_r, by the metabelian word
/// problem on each pair.
pub fn metabelian_prefix_partition_oracle(w: &Word) -> Vec<usize> {
    let n = w.len();
    let mut reps = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut rep = i;
        for j in 0..i {
            let quotient = w.prefix(j).inverse().concat(&w.prefix(i)).unwrap();
            if wp_metabelian(&quotient) {
                rep = j;
                break;
            }
        }
        reps.push(rep);
    }
    reps
}

/// Searches for a freely reduced word of length at most `max_len` whose
/// path flow equals `target`, by depth-first walk with an incremental
/// edge-difference count. Targets must be anchored at the origin, as
/// path flows are.
pub fn exists_equal_word_within(target: &GridFlow, max_len: usize) -> bool {
    let rank = target.rank();
    assert!(target.source().is_zero(), "targets are origin-anchored");
    let goal: HashMap<(Vec<i64>, usize), i64> = target
        .iter()
        .map(|(e, v)| ((e.vertex.coords().to_vec(), e.axis), v))
        .collect();
    let mut state = Search {
        rank,
        goal,
        sink: target.sink().coords().to_vec(),
        current: HashMap::new(),
        mismatches: 0,
        position: vec![0; rank],
    };
    state.mismatches = state.goal.len();
    if state.matched() {
        return true;
    }
    state.dfs(max_len, None)
}

struct Search {
    rank: usize,
    goal: HashMap<(Vec<i64>, usize), i64>,
    sink: Vec<i64>,
    current: HashMap<(Vec<i64>, usize), i64>,
    mismatches: usize,
    position: Vec<i64>,
}

impl Search {
    fn matched(&self) -> bool {
        self.mismatches == 0 && self.position == self.sink
    }

    fn dfs(&mut self, budget: usize, last: Option<Letter>) -> bool {
        if budget == 0 {
            return false;
        }
        for gen in 1..=self.rank {
            for positive in [true, false] {
                let letter = Letter::new(gen, positive);
                if last == Some(letter.inverse()) {
                    continue;
                }
                self.apply(letter);
                let hit = self.matched() || self.dfs(budget - 1, Some(letter));
                self.unapply(letter);
                if hit {
                    return true;
                }
            }
        }
        false
    }

    fn apply(&mut self, letter: Letter) {
        let axis = letter.gen() - 1;
        if letter.is_positive() {
            self.step_edge(letter.gen(), 1);
            self.position[axis] += 1;
        } else {
            self.position[axis] -= 1;
            self.step_edge(letter.gen(), -1);
        }
    }

    fn unapply(&mut self, letter: Letter) {
        let axis = letter.gen() - 1;
        if letter.is_positive() {
            self.position[axis] -= 1;
            self.step_edge(letter.gen(), -1);
        } else {
            self.step_edge(letter.gen(), 1);
            self.position[axis] += 1;
        }
    }

    fn step_edge(&mut self, axis: usize, inc: i64) {
        let key = (self.position.clone(), axis);
        let target = self.goal.get(&key).copied().unwrap_or(0);
        let slot = self.current.entry(key).or_insert(0);
        let was_matched = *slot == target;
        *slot += inc;
        let now_matched = *slot == target;
        match (was_matched, now_matched) {
            (true, false) => self.mismatches += 1,
            (false, true) => self.mismatches -= 1,
            _ => {}
        }
    }
}

/// Shortest equal word length found by iterative deepening up to
/// `max_len`; `None` when nothing matches within the budget.
pub fn min_equal_length_within(target: &GridFlow, max_len: usize) -> Option<usize> {
    (0..=max_len).find(|&len| exists_equal_word_within(target, len))
}

/// Canonical hash key of a flow, for ball enumeration tables.
pub fn flow_key(f: &GridFlow) -> Vec<i64> {
    let mut key: Vec<i64> = f.sink().coords().to_vec();
    for (e, v) in f.iter() {
        key.extend_from_slice(e.vertex.coords());
        key.push(e.axis as i64);
        key.push(v);
    }
    key
}

/// All freely reduced words over `rank` of length at most `max_len`,
/// mapped through `visit`.
pub fn for_each_reduced_word(rank: usize, max_len: usize, visit: &mut impl FnMut(&Word)) {
    let mut letters: Vec<Letter> = Vec::with_capacity(max_len);
    fn rec(
        rank: usize,
        max_len: usize,
        letters: &mut Vec<Letter>,
        visit: &mut impl FnMut(&Word),
    ) {
        let word = Word::from_letters(rank, letters.clone()).unwrap();
        visit(&word);
        if letters.len() == max_len {
            return;
        }
        for gen in 1..=rank {
            for positive in [true, false] {
                let letter = Letter::new(gen, positive);
                if letters.last() == Some(&letter.inverse()) {
                    continue;
                }
                letters.push(letter);
                rec(rank, max_len, letters, visit);
                letters.pop();
            }
        }
    }
    rec(rank, max_len, &mut letters, visit);
}

/// The mismatch counter starts from the goal's support size; keep the
/// helper honest about that by checking a couple of fixed points.
#[allow(dead_code)]
pub fn searcher_self_test() {
    let empty = path_flow(&Word::empty(2));
    assert!(exists_equal_word_within(&empty, 0));
    let square = path_flow(&Word::parse("abAB", 2).unwrap());
    assert!(!exists_equal_word_within(&square, 3));
    assert!(exists_equal_word_within(&square, 4));
}
