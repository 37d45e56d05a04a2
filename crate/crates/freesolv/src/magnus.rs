//! Images of words under the Magnus embedding of `S_{r,d}` into the
//! wreath-product matrix group over `Z S_{r,d-1}`.
//!
//! The image of a word is the 2x2 upper-triangular matrix whose diagonal
//! entry is the image of the word in the base group `S_{r,d-1}` and whose
//! module row holds the `r` Fox derivatives taken over that base. A word
//! is trivial in `S_{r,d}` exactly when its image is the identity matrix.
//!
//! Full matrix arithmetic is provided over the abelian base (`d = 2`),
//! where group ring elements have canonical exponent-vector forms. For
//! `d >= 3` images are computed and compared, but products are not
//! formed: multiplying would need canonical forms for products of
//! representative prefixes from two different prefix contexts, and
//! equality is decided through the word problem on `u v^-1` instead,
//! which the kernel property makes equivalent.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fox::{fox_abelian, AbelianRingElement};
use crate::solvable::{fox_solvable_all, wp_solvable, PartitionFunction, SolvableRingElement};
use crate::words::{AbelianVector, Word};

/// Diagonal entry of a Magnus image: the word's image in the base group.
#[derive(Debug, Clone)]
pub enum MagnusDiagonal {
    /// Base class 1: the exponent vector in the free abelian group.
    Abelian(AbelianVector),
    /// Base class >= 2: the prefix partition of the carrier word; the
    /// image is the class of the full-word prefix.
    Solvable(PartitionFunction),
}

impl MagnusDiagonal {
    pub fn is_trivial(&self) -> bool {
        match self {
            MagnusDiagonal::Abelian(v) => v.is_zero(),
            MagnusDiagonal::Solvable(p) => p.endpoints_equal(),
        }
    }
}

/// Row entry of a Magnus image: one Fox derivative over the base ring.
#[derive(Debug, Clone)]
pub enum MagnusRow {
    Abelian(AbelianRingElement),
    Solvable(SolvableRingElement),
}

impl MagnusRow {
    pub fn is_zero(&self) -> bool {
        match self {
            MagnusRow::Abelian(e) => e.is_zero(),
            MagnusRow::Solvable(e) => e.is_zero(),
        }
    }
}

/// The Magnus-embedding image of a word in `S_{r,d}`.
#[derive(Debug, Clone)]
pub struct MagnusImage {
    rank: usize,
    class: usize,
    word: Word,
    diagonal: MagnusDiagonal,
    rows: Vec<MagnusRow>,
}

impl MagnusImage {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The solvability class `d` the image lives at; the base group is
    /// `S_{r,d-1}`.
    pub fn class(&self) -> usize {
        self.class
    }

    /// The source word (carries the prefix context at `d >= 3`).
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn diagonal(&self) -> &MagnusDiagonal {
        &self.diagonal
    }

    pub fn rows(&self) -> &[MagnusRow] {
        &self.rows
    }

    /// Componentwise equality at `d = 2`; at `d >= 3` decided through
    /// the word problem on `u v^-1`.
    pub fn equals(&self, other: &MagnusImage) -> bool {
        if self.rank != other.rank || self.class != other.class {
            return false;
        }
        if self.class == 2 {
            let diag = match (&self.diagonal, &other.diagonal) {
                (MagnusDiagonal::Abelian(a), MagnusDiagonal::Abelian(b)) => a == b,
                _ => unreachable!("class-2 images carry abelian diagonals"),
            };
            diag && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| match (a, b) {
                    (MagnusRow::Abelian(x), MagnusRow::Abelian(y)) => x == y,
                    _ => unreachable!("class-2 images carry abelian rows"),
                })
        } else {
            let quotient = self
                .word
                .concat(&other.word.inverse())
                .expect("equal ranks");
            wp_solvable(&quotient, self.class)
        }
    }
}

/// Image of `w` under the Magnus embedding of `S_{r,d}`, `d >= 2`.
pub fn magnus_image(w: &Word, d: usize) -> MagnusImage {
    assert!(d >= 2, "the Magnus embedding needs class d >= 2");
    if d == 2 {
        let map = fox_abelian(w);
        let rows = (1..=w.rank())
            .map(|gen| MagnusRow::Abelian(map.derivative(gen).expect("gen within rank")))
            .collect();
        MagnusImage {
            rank: w.rank(),
            class: d,
            word: w.clone(),
            diagonal: MagnusDiagonal::Abelian(w.abelianize()),
            rows,
        }
    } else {
        let (p, derivatives) = fox_solvable_all(w, d - 1);
        MagnusImage {
            rank: w.rank(),
            class: d,
            word: w.clone(),
            diagonal: MagnusDiagonal::Solvable(p),
            rows: derivatives.into_iter().map(MagnusRow::Solvable).collect(),
        }
    }
}

/// Wreath-product multiplication `(g, t)(g', t') = (g g', t + g t')`,
/// available over the abelian base only.
pub fn magnus_multiply(a: &MagnusImage, b: &MagnusImage) -> Result<MagnusImage> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch {
            left: a.rank,
            right: b.rank,
        });
    }
    if a.class != 2 || b.class != 2 {
        return Err(Error::UnsupportedClass {
            class: a.class.max(b.class),
        });
    }
    let a_diag = match &a.diagonal {
        MagnusDiagonal::Abelian(v) => v,
        MagnusDiagonal::Solvable(_) => unreachable!("class-2 images carry abelian diagonals"),
    };
    let b_diag = match &b.diagonal {
        MagnusDiagonal::Abelian(v) => v,
        MagnusDiagonal::Solvable(_) => unreachable!("class-2 images carry abelian diagonals"),
    };
    let rows = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(ra, rb)| match (ra, rb) {
            (MagnusRow::Abelian(x), MagnusRow::Abelian(y)) => {
                MagnusRow::Abelian(x.add(&y.translated(a_diag)))
            }
            _ => unreachable!("class-2 images carry abelian rows"),
        })
        .collect();
    Ok(MagnusImage {
        rank: a.rank,
        class: 2,
        word: a.word.concat(&b.word)?,
        diagonal: MagnusDiagonal::Abelian(a_diag.add(b_diag)),
        rows,
    })
}

/// Identity test: trivial diagonal and all-zero row. For the image of a
/// word this decides the word problem in `S_{r,d}`.
pub fn magnus_is_identity(a: &MagnusImage) -> bool {
    a.diagonal.is_trivial() && a.rows.iter().all(|row| row.is_zero())
}
