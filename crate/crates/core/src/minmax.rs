//! The MinMax construction for two-letter words: from the degree-1
//! signature (the polygons A and B of a- and b-heights) build the paths of
//! the maximal and minimal words of the ∼₂-class, which by the structural
//! theorem is exactly the lattice interval between them.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::geom::{hull_2d, LatticePolytope, PointSet};
use crate::word::{Content, Word, WordError, WordOrder};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinmaxError {
    #[error("minmax needs a two-letter alphabet, got m={0}")]
    NotTwoLetter(usize),
    #[error("vertex chain is not totally ordered; not a valid degree-1 signature")]
    InvalidChain,
    #[error("segment construction failed; inputs do not come from a word signature")]
    InvalidSegment,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Label of a chain/path point: vertex of A, vertex of B, or the endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainLabel {
    A,
    B,
    End,
}

/// The merged chain 𝒱 of vertices of A and B plus the endpoint (ℓ_a,ℓ_b),
/// strictly increasing in both coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledVertexChain {
    pub entries: Vec<((i64, i64), ChainLabel)>,
}

/// Merge the vertex sets into the chain, checking total orderedness.
pub fn vertex_chain(
    a: &LatticePolytope,
    b: &LatticePolytope,
    content: &Content,
) -> Result<LabeledVertexChain, MinmaxError> {
    let mut entries: Vec<((i64, i64), ChainLabel)> = Vec::new();
    for v in a.vertices() {
        entries.push(((v[0], v[1]), ChainLabel::A));
    }
    for v in b.vertices() {
        entries.push(((v[0], v[1]), ChainLabel::B));
    }
    entries.push(((content.0[0], content.0[1]), ChainLabel::End));
    entries.sort_by_key(|(p, _)| *p);
    for win in entries.windows(2) {
        let (p, q) = (win[0].0, win[1].0);
        if p == q || p.0 > q.0 || p.1 > q.1 {
            return Err(MinmaxError::InvalidChain);
        }
    }
    if entries[0].0 != (0, 0) {
        return Err(MinmaxError::InvalidChain);
    }
    Ok(LabeledVertexChain { entries })
}

/// Per-column (or per-row, after swapping) integer slice bounds of a convex
/// polygon: the lattice points of the slice at coordinate t form the
/// interval [lo[t], hi[t]]. Built once in O(ℓ) so that the membership
/// queries inside MaxSegment are O(1).
#[derive(Debug, Clone)]
struct Slices {
    tmin: i64,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl Slices {
    fn build(verts: &[(i64, i64)]) -> Option<Slices> {
        if verts.is_empty() {
            return None;
        }
        let tmin = verts.iter().map(|p| p.0).min().unwrap();
        let tmax = verts.iter().map(|p| p.0).max().unwrap();
        let width = (tmax - tmin + 1) as usize;
        let mut s = Slices {
            tmin,
            lo: vec![i64::MAX; width],
            hi: vec![i64::MIN; width],
        };
        let (lower, upper) = chains(verts);
        for chain in [&lower, &upper] {
            for e in chain.windows(2) {
                s.add_edge(e[0], e[1]);
            }
        }
        for &p in verts {
            s.update(p.0, p.1, p.1);
        }
        Some(s)
    }

    fn add_edge(&mut self, p: (i64, i64), q: (i64, i64)) {
        let ((x1, y1), (x2, y2)) = if p.0 <= q.0 { (p, q) } else { (q, p) };
        if x1 == x2 {
            self.update(x1, y1.min(y2), y1.max(y2));
            return;
        }
        let den = x2 - x1;
        for x in x1..=x2 {
            let num = y1 * den + (x - x1) * (y2 - y1);
            let floor = num.div_euclid(den);
            let ceil = -(-num).div_euclid(den);
            self.update(x, ceil, floor);
        }
    }

    fn update(&mut self, t: i64, lo: i64, hi: i64) {
        let i = (t - self.tmin) as usize;
        self.lo[i] = self.lo[i].min(lo);
        self.hi[i] = self.hi[i].max(hi);
    }

    fn range(&self, t: i64) -> Option<(i64, i64)> {
        let i = usize::try_from(t - self.tmin).ok()?;
        let (&lo, &hi) = (self.lo.get(i)?, self.hi.get(i)?);
        (lo <= hi).then_some((lo, hi))
    }

}

/// Column and row tables for both polygons.
struct Tables {
    col_a: Option<Slices>,
    col_b: Option<Slices>,
    row_a: Option<Slices>,
    row_b: Option<Slices>,
}

impl Tables {
    fn build(a: &LatticePolytope, b: &LatticePolytope) -> Tables {
        let pts = |p: &LatticePolytope, swap: bool| -> Vec<(i64, i64)> {
            p.vertices()
                .iter()
                .map(|v| if swap { (v[1], v[0]) } else { (v[0], v[1]) })
                .collect()
        };
        Tables {
            col_a: Slices::build(&pts(a, false)),
            col_b: Slices::build(&pts(b, false)),
            row_a: Slices::build(&pts(a, true)),
            row_b: Slices::build(&pts(b, true)),
        }
    }
}

/// Lower and upper hull chains of a lex-sorted convex vertex set.
fn chains(verts: &[(i64, i64)]) -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
    fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    }
    let mut sorted = verts.to_vec();
    sorted.sort();
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &sorted {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in sorted.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    (lower, upper)
}

fn max_segment_impl(
    p: (i64, i64),
    p_next: (i64, i64),
    lab_p: ChainLabel,
    lab_next: ChainLabel,
    t: &Tables,
) -> Option<((i64, i64), ChainLabel)> {
    // case I: shared coordinate — go straight to the next chain point
    if p.0 == p_next.0 || p.1 == p_next.1 {
        return Some((p_next, lab_next));
    }
    match lab_p {
        // case II: move North as far as A allows while B covers the step below
        ChainLabel::B => {
            let (lo_a, hi_a) = t.col_a.as_ref()?.range(p.0)?;
            let (lo_b, hi_b) = t.col_b.as_ref()?.range(p.0)?;
            let k = p_next.1.min(hi_a).min(hi_b + 1);
            (k > p.1 && k >= lo_a && k - 1 >= lo_b).then_some(((p.0, k), ChainLabel::A))
        }
        // case III: move East as little as possible, to a column where A
        // still rises above the current row
        ChainLabel::A => {
            let (lo_br, hi_br) = t.row_b.as_ref()?.range(p.1)?;
            let (lo_ar, hi_ar) = t.row_a.as_ref()?.range(p.1)?;
            let k0 = lo_br.max(lo_ar + 1).max(p.0 + 1);
            let k1 = hi_br.min(hi_ar + 1).min(p_next.0);
            let col_a = t.col_a.as_ref()?;
            (k0..=k1)
                .find(|&k| col_a.range(k).is_some_and(|(_, hi)| hi > p.1))
                .map(|k| ((k, p.1), ChainLabel::B))
        }
        ChainLabel::End => None,
    }
}

/// One MaxSegment step, as in the paper's procedure. `a` and `b` are the
/// polygons of the degree-1 signature.
pub fn max_segment(
    p: (i64, i64),
    p_next: (i64, i64),
    lab_p: ChainLabel,
    lab_next: ChainLabel,
    a: &LatticePolytope,
    b: &LatticePolytope,
) -> Result<((i64, i64), ChainLabel), MinmaxError> {
    let tables = Tables::build(a, b);
    max_segment_impl(p, p_next, lab_p, lab_next, &tables).ok_or(MinmaxError::InvalidSegment)
}

fn degree1_polygons(w: &Word) -> Result<(LatticePolytope, LatticePolytope), MinmaxError> {
    if w.alphabet_size() != 2 {
        return Err(MinmaxError::NotTwoLetter(w.alphabet_size()));
    }
    let ha = PointSet::new(2, w.letter_height(0).points).expect("heights are planar");
    let hb = PointSet::new(2, w.letter_height(1).points).expect("heights are planar");
    Ok((hull_2d(&ha).expect("dim 2"), hull_2d(&hb).expect("dim 2")))
}

/// The ⪯-maximal word of the ∼₂-class of `w`, built by walking MaxSegment
/// along the vertex chain. O(ℓ).
pub fn max_word(w: &Word) -> Result<Word, MinmaxError> {
    let (a, b) = degree1_polygons(w)?;
    let chain = vertex_chain(&a, &b, &w.content())?;
    let tables = Tables::build(&a, &b);

    let mut path: Vec<(i64, i64)> = vec![chain.entries[0].0];
    for i in 0..chain.entries.len() - 1 {
        let (mut p, mut lab) = chain.entries[i];
        let (p_next, lab_next) = chain.entries[i + 1];
        while p != p_next {
            let (q, qlab) = max_segment_impl(p, p_next, lab, lab_next, &tables)
                .ok_or(MinmaxError::InvalidSegment)?;
            if q.0 == p.0 {
                for y in p.1 + 1..=q.1 {
                    path.push((p.0, y));
                }
            } else if q.1 == p.1 {
                for x in p.0 + 1..=q.0 {
                    path.push((x, p.1));
                }
            } else {
                return Err(MinmaxError::InvalidSegment);
            }
            (p, lab) = (q, qlab);
        }
    }

    let mut letters = Vec::with_capacity(path.len() - 1);
    for step in path.windows(2) {
        match (step[1].0 - step[0].0, step[1].1 - step[0].1) {
            (1, 0) => letters.push(0u8),
            (0, 1) => letters.push(1u8),
            _ => return Err(MinmaxError::InvalidSegment),
        }
    }
    Ok(Word::new(letters, 2)?)
}

/// The ⪯-minimal word: dual of the maximal word of the dual class.
pub fn min_word(w: &Word) -> Result<Word, MinmaxError> {
    if w.alphabet_size() != 2 {
        return Err(MinmaxError::NotTwoLetter(w.alphabet_size()));
    }
    Ok(max_word(&w.dual()?)?.dual()?)
}

/// A ∼₂-class as the lattice interval between its extremal words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInterval {
    pub min_word: Word,
    pub max_word: Word,
}

impl ClassInterval {
    /// The interval of the ∼₂-class of `w`.
    pub fn of(w: &Word) -> Result<Self, MinmaxError> {
        let ci = ClassInterval {
            min_word: min_word(w)?,
            max_word: max_word(w)?,
        };
        debug_assert!(matches!(
            ci.min_word.compare(&ci.max_word),
            Ok(WordOrder::Less) | Ok(WordOrder::Equal)
        ));
        Ok(ci)
    }

    pub fn is_singleton(&self) -> bool {
        self.min_word == self.max_word
    }

    /// Membership: same content and height profile pointwise between the
    /// extremes.
    pub fn contains(&self, v: &Word) -> bool {
        if v.alphabet_size() != 2 || v.content() != self.min_word.content() {
            return false;
        }
        matches!(
            self.min_word.compare(v),
            Ok(WordOrder::Less) | Ok(WordOrder::Equal)
        ) && matches!(
            v.compare(&self.max_word),
            Ok(WordOrder::Less) | Ok(WordOrder::Equal)
        )
    }

    fn profiles(&self) -> (Vec<i64>, Vec<i64>, i64) {
        let lo = self.min_word.a_height_profile().expect("two letters");
        let hi = self.max_word.a_height_profile().expect("two letters");
        let ell_b = self.min_word.count_of(1);
        (lo, hi, ell_b)
    }
}

/// Number of words in the interval: non-decreasing height profiles pinched
/// between the two extremes, counted by a corridor DP with prefix sums.
pub fn class_size(ci: &ClassInterval) -> BigUint {
    let (lo, hi, ell_b) = ci.profiles();
    if lo.is_empty() {
        return BigUint::one();
    }
    let width = ell_b as usize + 1;
    let mut cur = vec![BigUint::zero(); width];
    for y in lo[0]..=hi[0] {
        cur[y as usize] = BigUint::one();
    }
    for k in 1..lo.len() {
        let mut prefix = vec![BigUint::zero(); width + 1];
        for y in 0..width {
            prefix[y + 1] = &prefix[y] + &cur[y];
        }
        let mut next = vec![BigUint::zero(); width];
        for y in lo[k]..=hi[k] {
            // non-decreasing: sum over previous values ≤ y
            next[y as usize] = prefix[y as usize + 1].clone();
        }
        cur = next;
    }
    cur.into_iter().sum()
}

/// Deterministic stream of every word in the interval, in lexicographic
/// order of height profiles.
pub struct IntervalWords {
    lo: Vec<i64>,
    hi: Vec<i64>,
    ell_b: i64,
    state: Option<Vec<i64>>,
}

pub fn interval_words(ci: &ClassInterval) -> IntervalWords {
    let (lo, hi, ell_b) = ci.profiles();
    let mut first = vec![0i64; lo.len()];
    let mut prev = 0;
    for (k, &l) in lo.iter().enumerate() {
        first[k] = l.max(prev);
        prev = first[k];
    }
    IntervalWords {
        lo,
        hi,
        ell_b,
        state: Some(first),
    }
}

impl Iterator for IntervalWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let alpha = self.state.take()?;
        let word = Word::from_a_height(&alpha, self.ell_b).expect("valid profile");
        // odometer: bump the rightmost position with headroom, reset suffix
        let mut next = alpha;
        for k in (0..next.len()).rev() {
            if next[k] < self.hi[k] {
                next[k] += 1;
                let mut prev = next[k];
                for j in k + 1..next.len() {
                    next[j] = self.lo[j].max(prev);
                    prev = next[j];
                }
                self.state = Some(next);
                return Some(word);
            }
        }
        Some(word)
    }
}
