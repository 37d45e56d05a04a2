//! Encoding of rectilinear Steiner tree instances as words of the rank-2
//! free metabelian group.
//!
//! A point `(s, t)` becomes the word `x1^s x2^t (x2 x1 x2^-1 x1^-1)
//! x2^-t x1^-s`: a commutator conjugated out to the point, whose path
//! flow is a unit square based there. A point set `A` of size `n` is
//! first normalized to `A* = 10n (A - base)` (base = lexicographically
//! smallest point), so the squares are far apart and the support
//! components of the encoded word are exactly those `n` squares. The
//! geodesic length of the encoding then sandwiches the Steiner size:
//! `l(w_{A*})` is in `[20n s(A), 20n s(A) + 4n]`, and comparing it with
//! `20n (k - 1) + 4n` decides `s(A) < k`. The squares have unit extent,
//! so a minimal forest may undercut `10n s(A)` by up to two edges per
//! link; the threshold sits in the gap that this slack cannot bridge.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geodesic::bglp_with_limits;
use crate::steiner::ExactLimits;
use crate::words::{Letter, Word};

/// A rectilinear Steiner decision instance: distinct points and an edge
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RstpInstance {
    pub points: Vec<(i64, i64)>,
    pub bound: usize,
}

impl RstpInstance {
    pub fn new(points: Vec<(i64, i64)>, bound: usize) -> Result<RstpInstance> {
        check_points(&points)?;
        Ok(RstpInstance { points, bound })
    }
}

/// Parses the `x,y;x,y;...` instance text format.
pub fn parse_points(text: &str) -> Result<Vec<(i64, i64)>> {
    let mut points = Vec::new();
    for (pos, chunk) in text.split(';').enumerate() {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let mut coords = chunk.split(',');
        let x = coords
            .next()
            .and_then(|c| c.trim().parse::<i64>().ok())
            .ok_or(Error::MalformedPointList { pos })?;
        let y = coords
            .next()
            .and_then(|c| c.trim().parse::<i64>().ok())
            .ok_or(Error::MalformedPointList { pos })?;
        if coords.next().is_some() {
            return Err(Error::MalformedPointList { pos });
        }
        points.push((x, y));
    }
    Ok(points)
}

fn check_points(points: &[(i64, i64)]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut seen = alloc::collections::BTreeSet::new();
    for &p in points {
        if !seen.insert(p) {
            return Err(Error::DuplicatePoint { point: p });
        }
    }
    Ok(())
}

/// The scaled, base-translated point set `A* = 10n (A - base)` in
/// lexicographic order.
pub fn normalized_points(points: &[(i64, i64)]) -> Result<Vec<(i64, i64)>> {
    check_points(points)?;
    let n = points.len() as i64;
    let base = *points.iter().min().expect("nonempty");
    let mut scaled: Vec<(i64, i64)> = points
        .iter()
        .map(|&(x, y)| {
            (
                10 * n * (x - base.0),
                10 * n * (y - base.1),
            )
        })
        .collect();
    scaled.sort_unstable();
    Ok(scaled)
}

/// Word of `x1^s x2^t (x2 x1 x2^-1 x1^-1) x2^-t x1^-s` over rank 2.
pub fn point_word(s: i64, t: i64) -> Word {
    let mut letters = Vec::with_capacity(2 * (s.unsigned_abs() + t.unsigned_abs()) as usize + 4);
    push_power(&mut letters, 1, s);
    push_power(&mut letters, 2, t);
    letters.extend([
        Letter::positive(2),
        Letter::positive(1),
        Letter::negative(2),
        Letter::negative(1),
    ]);
    push_power(&mut letters, 2, -t);
    push_power(&mut letters, 1, -s);
    Word::from_letters(2, letters).expect("rank-2 letters")
}

fn push_power(letters: &mut Vec<Letter>, gen: usize, exponent: i64) {
    for _ in 0..exponent.unsigned_abs() {
        letters.push(Letter::new(gen, exponent > 0));
    }
}

/// Encodes a point set as the word `w_{A*}`, the product of the factors
/// at the normalized points. The path flow of the result consists of
/// exactly one unit square per point; the normalization scale keeps the
/// squares disjoint, which is asserted.
pub fn rstp_encode(points: &[(i64, i64)]) -> Result<Word> {
    let scaled = normalized_points(points)?;
    for (i, a) in scaled.iter().enumerate() {
        for b in scaled.iter().skip(i + 1) {
            let sep = (a.0 - b.0).abs().max((a.1 - b.1).abs());
            assert!(sep >= 2, "scaled squares must be disjoint");
        }
    }
    let mut word = Word::empty(2);
    for &(s, t) in &scaled {
        word = word.concat(&point_word(s, t))?;
    }
    Ok(word)
}

/// Decides `s(A) < k` through the geodesic length of the encoding.
pub fn rstp_decide_with_limits(
    points: &[(i64, i64)],
    k: usize,
    limits: &ExactLimits,
) -> Result<bool> {
    let word = rstp_encode(points)?;
    if k == 0 {
        return Ok(false);
    }
    let n = points.len();
    let threshold = 20 * n * (k - 1) + 4 * n;
    bglp_with_limits(&word, threshold, limits)
}

/// Decides `s(A) < k` under the default budget.
pub fn rstp_decide(points: &[(i64, i64)], k: usize) -> Result<bool> {
    rstp_decide_with_limits(points, k, &ExactLimits::default())
}
