//! Identity verification in UT_n, plus an independent randomized oracle
//! that evaluates both words on concrete upper-triangular tropical matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::signature::degree_supports_equal;
use crate::word::Word;

/// Additive identity of (max,+): the −∞ sentinel.
pub const NEG_INF: i64 = i64::MIN;

fn trop_add(a: i64, b: i64) -> i64 {
    if a == NEG_INF || b == NEG_INF {
        NEG_INF
    } else {
        a + b
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("entry ({0},{1}) below the diagonal must be -inf")]
    NotUpperTriangular(usize, usize),
    #[error("matrix dimensions differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("morphism needs one matrix per letter")]
    WrongLetterCount,
}

/// An n×n matrix over ℤ ∪ {−∞} with −∞ strictly below the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalMatrix {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl TropicalMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::SizeMismatch(n, row.len()));
            }
            for (j, &e) in row.iter().enumerate() {
                if i > j && e != NEG_INF {
                    return Err(MatrixError::NotUpperTriangular(i, j));
                }
            }
        }
        Ok(TropicalMatrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn multiply(&self, other: &TropicalMatrix) -> Result<TropicalMatrix, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::SizeMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut entries = vec![vec![NEG_INF; n]; n];
        for i in 0..n {
            // upper-triangular: only k in i..=j contributes
            for j in i..n {
                let mut best = NEG_INF;
                for k in i..=j {
                    let term = trop_add(self.entries[i][k], other.entries[k][j]);
                    best = best.max(term);
                }
                entries[i][j] = best;
            }
        }
        Ok(TropicalMatrix { n, entries })
    }

    fn random(n: usize, range: (i64, i64), rng: &mut impl Rng) -> TropicalMatrix {
        let mut entries = vec![vec![NEG_INF; n]; n];
        for i in 0..n {
            for j in i..n {
                entries[i][j] = rng.random_range(range.0..=range.1);
            }
        }
        TropicalMatrix { n, entries }
    }
}

/// A semigroup morphism: one matrix per alphabet letter, common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    matrices: Vec<TropicalMatrix>,
}

impl Morphism {
    pub fn new(matrices: Vec<TropicalMatrix>) -> Result<Self, MatrixError> {
        if matrices.is_empty() {
            return Err(MatrixError::WrongLetterCount);
        }
        let n = matrices[0].dim();
        if matrices.iter().any(|m| m.dim() != n) {
            return Err(MatrixError::SizeMismatch(n, 0));
        }
        Ok(Morphism { matrices })
    }

    pub fn matrices(&self) -> &[TropicalMatrix] {
        &self.matrices
    }
}

/// φ(w) = φ(w₁) ⊙ … ⊙ φ(w_ℓ).
pub fn tropical_product(phi: &Morphism, w: &Word) -> TropicalMatrix {
    let mut letters = w.letters().iter();
    let first = *letters.next().expect("words are nonempty");
    let mut acc = phi.matrices[first as usize].clone();
    for &l in letters {
        acc = acc
            .multiply(&phi.matrices[l as usize])
            .expect("common dimension");
    }
    acc
}

/// True iff w ∼ₙ v: equal content, then equal degree signatures for
/// d = 1..n−1, cheapest degree first with early exit.
pub fn check_identity(w: &Word, v: &Word, n: usize) -> bool {
    assert!(n >= 2, "UT_n needs n >= 2");
    if w.alphabet_size() != v.alphabet_size() || w.content() != v.content() {
        return false;
    }
    (1..n).all(|d| degree_supports_equal(w, v, d))
}

/// Verdict of the randomized evaluation oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismVerdict {
    NoDifferenceFound,
    Distinguished(Morphism),
}

pub const DEFAULT_ENTRY_RANGE: (i64, i64) = (-10, 10);

/// Evaluate both words on `trials` random upper-triangular integer
/// morphisms. A differing product disproves w ∼ₙ v; agreement on all
/// trials is only evidence. Deterministic in (seed, trial index).
pub fn random_morphism_test_in_range(
    w: &Word,
    v: &Word,
    n: usize,
    trials: u64,
    seed: u64,
    range: (i64, i64),
) -> MorphismVerdict {
    let m = w.alphabet_size().max(v.alphabet_size());
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let phi = Morphism {
            matrices: (0..m).map(|_| TropicalMatrix::random(n, range, &mut rng)).collect(),
        };
        if tropical_product(&phi, w) != tropical_product(&phi, v) {
            return MorphismVerdict::Distinguished(phi);
        }
    }
    MorphismVerdict::NoDifferenceFound
}

pub fn random_morphism_test(w: &Word, v: &Word, n: usize, trials: u64, seed: u64) -> MorphismVerdict {
    random_morphism_test_in_range(w, v, n, trials, seed, DEFAULT_ENTRY_RANGE)
}

/// No single adjacent swap of w stays in its ∼ₙ-class.
pub fn is_locally_isolated(w: &Word, n: usize) -> bool {
    if w.alphabet_size() == 2 && w.count_of(0) > 0 && w.count_of(1) > 0 {
        // ∼₂ is the interval test, so the d = 1 round is O(ℓ) per neighbour;
        // the higher rounds reuse one spanning subset of w's supports across
        // all surviving neighbours.
        let ci = crate::minmax::ClassInterval::of(w).expect("two-letter word");
        let mut nbrs: Vec<Word> = w.neighbors().into_iter().filter(|v| ci.contains(v)).collect();
        for d in 2..n {
            if nbrs.is_empty() {
                break;
            }
            let base = crate::signature::SupportBase::new(w, d);
            nbrs.retain(|v| base.degree_supports_equal(v));
        }
        return nbrs.is_empty();
    }
    w.neighbors().iter().all(|u| !check_identity(w, u, n))
}

/// The ∼ₙ-class of w is {w} alone. For two-letter words in UT₂ this is the
/// O(ℓ) MinMax test; otherwise the class is enumerated.
pub fn is_isoterm(w: &Word, n: usize) -> bool {
    if w.alphabet_size() == 2 && n == 2 {
        let min = crate::minmax::min_word(w).expect("two-letter word");
        let max = crate::minmax::max_word(w).expect("two-letter word");
        return min == max;
    }
    crate::enumerate::equivalence_class(w, n).len() == 1
}
