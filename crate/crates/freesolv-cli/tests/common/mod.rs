//! Oracles and enumerators for the acceptance suite, independent of the
//! library's solver paths.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use freesolv::{GridFlow, Letter, Word};

/// Direct quadratic expansion of the derivative formula, materializing
/// each prefix.
pub fn naive_fox_entries(w: &Word) -> BTreeMap<(usize, Vec<i64>), i64> {
    let mut out: BTreeMap<(usize, Vec<i64>), i64> = BTreeMap::new();
    for (idx, letter) in w.letters().iter().enumerate() {
        let j = idx + 1;
        let (prefix_len, coeff) = if letter.is_positive() {
            (j - 1, 1)
        } else {
            (j, -1)
        };
        let delta = w.prefix(prefix_len).abelianize().into_coords();
        *out.entry((letter.gen(), delta)).or_insert(0) += coeff;
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn fox_entries(w: &Word) -> BTreeMap<(usize, Vec<i64>), i64> {
    freesolv::fox_abelian(w)
        .iter()
        .map(|(key, coeff)| ((key.gen, key.delta.coords().to_vec()), coeff))
        .collect()
}

/// All freely reduced words over `rank` of length at most `max_len`.
pub fn for_each_reduced_word(rank: usize, max_len: usize, visit: &mut impl FnMut(&Word)) {
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
    rec(rank, max_len, &mut Vec::with_capacity(max_len), visit);
}

/// Canonical hash key of a flow for ball tables.
pub fn flow_key(f: &GridFlow) -> Vec<i64> {
    let mut key: Vec<i64> = f.sink().coords().to_vec();
    for (e, v) in f.iter() {
        key.extend_from_slice(e.vertex.coords());
        key.push(e.axis as i64);
        key.push(v);
    }
    key
}

/// Depth-first search for a freely reduced word of length at most
/// `max_len` whose path flow equals the (origin-anchored) target.
pub fn exists_equal_word_within(target: &GridFlow, max_len: usize) -> bool {
    assert!(target.source().is_zero());
    let goal: HashMap<(Vec<i64>, usize), i64> = target
        .iter()
        .map(|(e, v)| ((e.vertex.coords().to_vec(), e.axis), v))
        .collect();
    let mut search = Search {
        rank: target.rank(),
        mismatches: goal.len(),
        goal,
        sink: target.sink().coords().to_vec(),
        current: HashMap::new(),
        position: vec![0; target.rank()],
    };
    if search.matched() {
        return true;
    }
    search.dfs(max_len, None)
}

/// Shortest equal word length up to `max_len`, by iterative deepening.
pub fn min_equal_length_within(target: &GridFlow, max_len: usize) -> Option<usize> {
    (0..=max_len).find(|&len| exists_equal_word_within(target, len))
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

/// Exact rectilinear Steiner size by a route independent of the subset
/// DP: a minimal tree decomposes into monotone paths meeting at branch
/// points on the Hanan grid, at most `n - 2` of them, so the optimum is
/// the best L1 spanning tree over the terminals plus such a subset.
pub fn steiner_oracle(points: &[(i64, i64)]) -> u64 {
    let terminals: BTreeSet<(i64, i64)> = points.iter().copied().collect();
    let n = terminals.len();
    if n <= 1 {
        return 0;
    }
    let xs: BTreeSet<i64> = terminals.iter().map(|p| p.0).collect();
    let ys: BTreeSet<i64> = terminals.iter().map(|p| p.1).collect();
    let candidates: Vec<(i64, i64)> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
        .filter(|p| !terminals.contains(p))
        .collect();
    let base: Vec<(i64, i64)> = terminals.into_iter().collect();
    let max_extra = n - 2;
    let mut best = u64::MAX;
    let mut chosen: Vec<(i64, i64)> = Vec::new();
    fn explore(
        candidates: &[(i64, i64)],
        from: usize,
        left: usize,
        base: &[(i64, i64)],
        chosen: &mut Vec<(i64, i64)>,
        best: &mut u64,
    ) {
        let mut pts = base.to_vec();
        pts.extend_from_slice(chosen);
        *best = (*best).min(mst_l1(&pts));
        if left == 0 {
            return;
        }
        for i in from..candidates.len() {
            chosen.push(candidates[i]);
            explore(candidates, i + 1, left - 1, base, chosen, best);
            chosen.pop();
        }
    }
    explore(&candidates, 0, max_extra, &base, &mut chosen, &mut best);
    best
}

fn mst_l1(pts: &[(i64, i64)]) -> u64 {
    let k = pts.len();
    let mut in_tree = vec![false; k];
    let mut dist = vec![u64::MAX; k];
    dist[0] = 0;
    let mut total = 0;
    for _ in 0..k {
        let v = (0..k)
            .filter(|&i| !in_tree[i])
            .min_by_key(|&i| dist[i])
            .unwrap();
        in_tree[v] = true;
        total += dist[v];
        for u in 0..k {
            if !in_tree[u] {
                let d = pts[v].0.abs_diff(pts[u].0) + pts[v].1.abs_diff(pts[u].1);
                dist[u] = dist[u].min(d);
            }
        }
    }
    total
}
