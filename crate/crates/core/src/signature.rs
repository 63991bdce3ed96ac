//! Word signatures: for each subword u of length d, the Newton polytope of
//! the support polynomial g_u^w. The exponent vector of a scattered
//! occurrence π of u records, block by block, the content of the gap
//! strictly before each matched letter (block k, letter s sits at
//! coordinate (k−1)m+s). Two words agree in UT_n exactly when their
//! signatures agree for every degree d = 1..n−1.

use serde::Serialize;

use crate::geom::{
    self, hull_2d, hull_nd, intersect_constraint, pi_image, product, LatticePolytope, PointSet,
};
use crate::word::Word;

/// One signature entry: the subword in text form and its polytope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignatureEntry {
    pub u: String,
    pub polytope: LatticePolytope,
}

/// The degree-d signature: all m^d subwords in lexicographic order, each
/// with the hull of its support (empty polytope when u never occurs
/// scattered in w).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeSignature {
    #[serde(skip)]
    pub m: usize,
    pub d: usize,
    pub entries: Vec<SignatureEntry>,
}

/// Signature in UT_n: the degree signatures for d = 1..n−1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UtnSignature {
    pub m: usize,
    pub n: usize,
    pub degrees: Vec<DegreeSignature>,
}

impl UtnSignature {
    /// Canonical JSON bytes; byte equality coincides with signature
    /// equality, so this doubles as a hash key in enumeration.
    pub fn canonical_json(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("signature serialises")
    }
}

/// The subword with lexicographic index `code` among Σ^d.
pub fn u_from_code(code: usize, m: usize, d: usize) -> Word {
    let mut letters = vec![0u8; d];
    let mut c = code;
    for k in (0..d).rev() {
        letters[k] = (c % m) as u8;
        c /= m;
    }
    Word::new(letters, m).expect("valid subword")
}

fn prefix_counts(w: &Word) -> Vec<Vec<i64>> {
    let m = w.alphabet_size();
    let mut table = Vec::with_capacity(w.len() + 1);
    let mut cur = vec![0i64; m];
    table.push(cur.clone());
    for &l in w.letters() {
        cur[l as usize] += 1;
        table.push(cur.clone());
    }
    table
}

/// Brute-force support oracle: enumerate the scattered occurrences of `u`
/// in `w` directly, one DFS over per-letter occurrence lists. Independent
/// of the bucketed scan in [`degree_supports`], which it cross-checks.
pub fn support_points(w: &Word, u: &Word) -> PointSet {
    let m = w.alphabet_size();
    let d = u.len();
    assert!(d >= 1, "support_points needs |u| >= 1");
    let counts = prefix_counts(w);
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &l) in w.letters().iter().enumerate() {
        occurrences[l as usize].push(i + 1);
    }
    let mut points = Vec::new();
    let mut stack: Vec<(usize, Vec<i64>)> = vec![(0, Vec::new())];
    while let Some((prev, coords)) = stack.pop() {
        let k = coords.len() / m;
        if k == d {
            points.push(coords);
            continue;
        }
        let letter = u.letters()[k] as usize;
        if letter >= m {
            continue;
        }
        for &pos in &occurrences[letter] {
            if pos > prev {
                let mut next = coords.clone();
                for s in 0..m {
                    next.push(counts[pos - 1][s] - counts[prev][s]);
                }
                stack.push((pos, next));
            }
        }
    }
    PointSet::new(m * d, points).expect("uniform dimension")
}

/// Support point sets of every u ∈ Σ^d at once: a single pass over the
/// increasing d-tuples of positions, bucketing each exponent vector by the
/// subword it spells.
pub fn degree_supports(w: &Word, d: usize) -> Vec<PointSet> {
    let m = w.alphabet_size();
    assert!(d >= 1, "degree must be positive");
    let ell = w.len();
    let counts = prefix_counts(w);
    let buckets_len = m.pow(d as u32);
    let mut buckets: Vec<Vec<Vec<i64>>> = vec![Vec::new(); buckets_len];
    if d <= ell {
        fn rec(
            w: &Word,
            counts: &[Vec<i64>],
            m: usize,
            d: usize,
            start: usize,
            prev: usize,
            code: usize,
            coords: &mut Vec<i64>,
            buckets: &mut [Vec<Vec<i64>>],
        ) {
            let k = coords.len() / m;
            if k == d {
                buckets[code].push(coords.clone());
                return;
            }
            // keep enough room for the remaining letters
            for pos in start..=(w.len() - (d - k - 1)) {
                let letter = w.letters()[pos - 1] as usize;
                for s in 0..m {
                    coords.push(counts[pos - 1][s] - counts[prev][s]);
                }
                rec(w, counts, m, d, pos + 1, pos, code * m + letter, coords, buckets);
                coords.truncate(m * k);
            }
        }
        let mut coords = Vec::with_capacity(m * d);
        rec(w, &counts, m, d, 1, 0, 0, &mut coords, &mut buckets);
    }
    buckets
        .into_iter()
        .map(|pts| PointSet::new(m * d, pts).expect("uniform dimension"))
        .collect()
}

/// Degree-d signature: hulls of all supports, canonical entry order.
pub fn degree_signature(w: &Word, d: usize) -> DegreeSignature {
    let m = w.alphabet_size();
    let entries = degree_supports(w, d)
        .into_iter()
        .enumerate()
        .map(|(code, pts)| SignatureEntry {
            u: u_from_code(code, m, d).to_string(),
            polytope: hull_of(&pts),
        })
        .collect();
    DegreeSignature { m, d, entries }
}

/// Hull with the planar fast path: two-dimensional sets (the m=2 degree-1
/// case, where supports are the letter heights) go through the linear
/// monotone chain.
pub fn hull_of(pts: &PointSet) -> LatticePolytope {
    if pts.dim() == 2 {
        hull_2d(pts).expect("dim checked")
    } else {
        hull_nd(pts)
    }
}

/// The full signature in UT_n: degrees 1..n−1.
pub fn utn_signature(w: &Word, n: usize) -> UtnSignature {
    assert!(n >= 2, "UT_n needs n >= 2");
    let degrees = (1..n).map(|d| degree_signature(w, d)).collect();
    UtnSignature {
        m: w.alphabet_size(),
        n,
        degrees,
    }
}

/// Validation entry point for the support recursion
///   γ^{u a_j} ≃ (γ^u × γ^{a_j}) ∩ C_u  (via the affine map Π).
pub fn check_recursion(w: &Word, u: &Word, j: usize) -> bool {
    let m = w.alphabet_size();
    if j >= m {
        return false;
    }
    let d = u.len();
    let uj = u.concat(&Word::new(vec![j as u8], m).expect("letter"));
    let lhs = match pi_image(&support_points(w, &uj), &u.content(), m, d) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let a_j = Word::new(vec![j as u8], m).expect("letter");
    let rhs = match intersect_constraint(
        &product(&support_points(w, u), &support_points(w, &a_j)),
        &u.content(),
    ) {
        Ok(s) => s,
        Err(_) => return false,
    };
    lhs == rhs
}

/// Hull-free equality of the degree-d signatures of two words, by mutual
/// inclusion on raw supports. Cheaper than canonicalising when the answer
/// is usually "no".
pub fn degree_supports_equal(w: &Word, v: &Word, d: usize) -> bool {
    if w.alphabet_size() != v.alphabet_size() {
        return false;
    }
    let (sw, sv) = (degree_supports(w, d), degree_supports(v, d));
    sw.iter()
        .zip(&sv)
        .all(|(p, q)| geom::hulls_equal(p, q).expect("same dim"))
}

/// Precomputed degree-d supports of a fixed word together with a
/// hull-spanning subset of each, sized for many comparisons against small
/// perturbations of the word (adjacent-swap neighbours). The spanning
/// subsets contain every hull vertex, so membership against them is exact.
pub(crate) struct SupportBase {
    d: usize,
    supports: Vec<PointSet>,
    spans: Vec<Vec<Vec<i64>>>,
}

impl SupportBase {
    pub(crate) fn new(w: &Word, d: usize) -> Self {
        let supports = degree_supports(w, d);
        let spans = supports.iter().map(geom::spanning_subset).collect();
        SupportBase { d, supports, spans }
    }

    /// Does `v` have the same degree-d signature as the base word? Exact:
    /// only symmetric-difference points are tested, added points against the
    /// spanning subset (whose hull is the full hull) and removed points
    /// against the neighbour's support, small subset first.
    pub(crate) fn degree_supports_equal(&self, v: &Word) -> bool {
        let sv = degree_supports(v, self.d);
        for ((pw, pv), span) in self.supports.iter().zip(&sv).zip(&self.spans) {
            if pw.points() == pv.points() {
                continue;
            }
            if pw.is_empty() != pv.is_empty() {
                return false;
            }
            let added: Vec<&Vec<i64>> = pv
                .points()
                .iter()
                .filter(|p| pw.points().binary_search(p).is_err())
                .collect();
            let removed: Vec<&Vec<i64>> = pw
                .points()
                .iter()
                .filter(|p| pv.points().binary_search(p).is_err())
                .collect();
            let span_refs: Vec<&[i64]> = span.iter().map(|p| p.as_slice()).collect();
            for q in &added {
                if !geom::in_convex_hull(q, &span_refs) {
                    return false;
                }
            }
            if removed.is_empty() {
                continue;
            }
            let kept: Vec<&[i64]> = span_refs
                .iter()
                .copied()
                .filter(|p| removed.iter().all(|r| r.as_slice() != *p))
                .collect();
            if kept.len() == span_refs.len() {
                // no spanning point vanished, so conv(supp v) contains the
                // whole base hull and the removed points with it
                continue;
            }
            let mut small = kept;
            small.extend(added.iter().map(|p| p.as_slice()));
            let full: Vec<&[i64]> = pv.points().iter().map(|p| p.as_slice()).collect();
            for p in &removed {
                if !geom::in_convex_hull(p, &small) && !geom::in_convex_hull(p, &full) {
                    return false;
                }
            }
        }
        true
    }
}

/// Hull-invariant hash of the degree-d signature: the support-function
/// values of every entry's raw support along a fixed battery of integer
/// objectives. Equal signatures always yield equal fingerprints, so this
/// buckets candidate classes without any exact geometry.
pub(crate) fn support_fingerprint(w: &Word, d: usize) -> Vec<i64> {
    let dim = w.alphabet_size() * d;
    let battery = fingerprint_battery(dim);
    let mut fp = Vec::new();
    for set in degree_supports(w, d) {
        for obj in &battery {
            // empty support (u not scattered in w) hashes to the sentinel
            let best = set
                .points()
                .iter()
                .map(|p| p.iter().zip(obj).map(|(x, c)| x * c).sum::<i64>())
                .max()
                .unwrap_or(i64::MIN);
            fp.push(best);
        }
    }
    fp
}

/// Axis directions plus a fixed spread of pseudo-random integer objectives.
/// Wide enough that distinct Newton polytopes almost always part ways.
fn fingerprint_battery(dim: usize) -> Vec<Vec<i64>> {
    let mut dirs = Vec::with_capacity(2 * dim + 66);
    for i in 0..dim {
        let mut e = vec![0i64; dim];
        e[i] = 1;
        dirs.push(e.clone());
        e[i] = -1;
        dirs.push(e);
    }
    dirs.push(vec![1; dim]);
    dirs.push(vec![-1; dim]);
    let mut state = 0x9e3779b97f4a7c15u64 ^ (dim as u64);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 41) as i64 - 20
    };
    for _ in 0..160 {
        let dir: Vec<i64> = (0..dim).map(|_| next()).collect();
        if dir.iter().any(|&c| c != 0) {
            dirs.push(dir);
        }
    }
    dirs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, m: usize) -> Word {
        Word::parse(text, m).unwrap()
    }

    #[test]
    fn degree_one_supports_are_heights() {
        for (text, m) in [("acbaacbcb", 3), ("abab", 2), ("aa", 2), ("cba", 3)] {
            let word = w(text, m);
            for i in 0..m {
                let u = Word::new(vec![i as u8], m).unwrap();
                let sup = support_points(&word, &u);
                let height = PointSet::new(m, word.letter_height(i).points).unwrap();
                assert_eq!(sup, height, "letter {i} of {text}");
            }
        }
    }

    #[test]
    fn support_examples() {
        let word = w("acbaacbcb", 3);
        let a = support_points(&word, &w("a", 3));
        assert_eq!(
            a.points(),
            &[vec![0, 0, 0], vec![1, 1, 1], vec![2, 1, 1]]
        );
        assert!(support_points(&w("ab", 2), &w("ba", 2)).is_empty());
        let aa = support_points(&w("aba", 2), &w("aa", 2));
        assert_eq!(aa.points(), &[vec![0, 0, 0, 1]]);
    }

    #[test]
    fn degree_signature_running_example() {
        let sig = degree_signature(&w("acbaacbcb", 3), 1);
        assert_eq!(sig.entries.len(), 3);
        assert_eq!(sig.entries[0].u, "a");
        assert_eq!(
            sig.entries[0].polytope.vertices(),
            &[vec![0, 0, 0], vec![1, 1, 1], vec![2, 1, 1]]
        );
        assert_eq!(
            sig.entries[1].polytope.vertices(),
            &[vec![1, 0, 1], vec![3, 1, 2], vec![3, 2, 3]]
        );
        assert_eq!(
            sig.entries[2].polytope.vertices(),
            &[vec![1, 0, 0], vec![3, 1, 1], vec![3, 2, 2]]
        );
    }

    #[test]
    fn degree_signature_small_cases() {
        let sig = degree_signature(&w("aa", 2), 1);
        assert_eq!(sig.entries[0].polytope.vertices(), &[vec![0, 0], vec![1, 0]]);
        assert!(sig.entries[1].polytope.is_empty());

        let sig = degree_signature(&w("ab", 2), 2);
        assert_eq!(sig.entries.len(), 4);
        let nonempty: Vec<&str> = sig
            .entries
            .iter()
            .filter(|e| !e.polytope.is_empty())
            .map(|e| e.u.as_str())
            .collect();
        assert_eq!(nonempty, vec!["ab"]);
    }

    #[test]
    fn scan_matches_oracle() {
        for (text, m) in [("abba", 2), ("acbaacbcb", 3), ("aabbab", 2), ("cabcab", 3)] {
            let word = w(text, m);
            for d in 1..=3usize.min(word.len()) {
                let sig = degree_signature(&word, d);
                for (code, entry) in sig.entries.iter().enumerate() {
                    let u = u_from_code(code, m, d);
                    assert_eq!(entry.u, u.to_string());
                    let oracle = hull_nd(&support_points(&word, &u));
                    assert_eq!(entry.polytope, oracle, "w={text} u={u}");
                }
            }
        }
    }

    #[test]
    fn utn_layers() {
        let word = w("abba", 2);
        let sig = utn_signature(&word, 3);
        assert_eq!(sig.degrees.len(), 2);
        assert_eq!(sig.degrees[0], degree_signature(&word, 1));
        assert_eq!(sig.degrees[1], degree_signature(&word, 2));
        assert_eq!(utn_signature(&word, 2).degrees.len(), 1);
        assert_eq!(sig, utn_signature(&w("abba", 2), 3));
    }

    #[test]
    fn recursion_check() {
        assert!(check_recursion(&w("aba", 2), &w("a", 2), 1));
        // exhaustive over short binary words
        for bits in 0..32u32 {
            let letters: Vec<u8> = (0..5).map(|i| ((bits >> i) & 1) as u8).collect();
            let word = Word::new(letters, 2).unwrap();
            for ucode in 0..6usize {
                let (ulen, uc) = if ucode < 2 { (1, ucode) } else { (2, ucode - 2) };
                let u = u_from_code(uc, 2, ulen);
                for j in 0..2 {
                    assert!(check_recursion(&word, &u, j), "w={word} u={u} j={j}");
                }
            }
        }
    }

    #[test]
    fn supports_equal_routes_agree() {
        let pairs = [
            ("abbaababba", "abbabaabba", 2, true),
            ("abab", "baba", 2, false),
            ("abba", "abba", 2, true),
        ];
        for (a, b, m, _) in pairs {
            let (wa, wb) = (w(a, m), w(b, m));
            for d in 1..=2 {
                let canonical = degree_signature(&wa, d) == degree_signature(&wb, d);
                assert_eq!(degree_supports_equal(&wa, &wb, d), canonical);
            }
        }
    }

    #[test]
    fn json_shape() {
        let sig = utn_signature(&w("ab", 2), 2);
        let json = String::from_utf8(sig.canonical_json()).unwrap();
        assert!(json.starts_with(r#"{"m":2,"n":2,"degrees":[{"d":1,"entries":[{"u":"a","#));
        assert!(json.contains(r#""polytope":{"dim":2,"vertices":"#));
    }
}

