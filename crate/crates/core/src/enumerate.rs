//! Class listing and identity search: the general signature-bucketing
//! algorithm, the fast two-letter BFS over class minima, class computation
//! in UT_n for n ≥ 3 by filtering the ∼₂ interval, the shortest-identity
//! search, and the generalised Catalan family.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::minmax::{class_size, interval_words, ClassInterval};
use crate::signature::{degree_supports_equal, support_fingerprint, utn_signature};
use crate::word::{Content, Word};

/// ∼ₙ classes of one content, keyed by canonical signature bytes.
#[derive(Debug, Clone)]
pub struct ClassTable {
    pub n: usize,
    pub buckets: BTreeMap<Vec<u8>, Vec<Word>>,
}

impl ClassTable {
    pub fn class_of(&self, w: &Word) -> Option<&[Word]> {
        let key = utn_signature(w, self.n).canonical_json();
        self.buckets.get(&key).map(|c| c.as_slice())
    }

    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }
}

/// All words with the given content, lexicographic order.
pub fn words_with_content(c: &Content) -> Vec<Word> {
    let m = c.alphabet_size();
    let total = c.total() as usize;
    let mut out = Vec::new();
    let mut remaining = c.0.clone();
    let mut cur: Vec<u8> = Vec::with_capacity(total);
    fn rec(m: usize, total: usize, remaining: &mut [i64], cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if cur.len() == total {
            out.push(Word::new(cur.clone(), m).expect("valid"));
            return;
        }
        for l in 0..m {
            if remaining[l] > 0 {
                remaining[l] -= 1;
                cur.push(l as u8);
                rec(m, total, remaining, cur, out);
                cur.pop();
                remaining[l] += 1;
            }
        }
    }
    rec(m, total, &mut remaining, &mut cur, &mut out);
    out
}

/// Bucket every word of W(content) by its canonical UT_n signature.
pub fn list_classes_general(content: &Content, n: usize) -> ClassTable {
    let mut buckets: BTreeMap<Vec<u8>, Vec<Word>> = BTreeMap::new();
    for w in words_with_content(content) {
        let key = utn_signature(&w, n).canonical_json();
        buckets.entry(key).or_default().push(w);
    }
    ClassTable { n, buckets }
}

/// The bucket of `w` in its content's table.
pub fn equivalence_class_general(w: &Word, n: usize) -> Vec<Word> {
    list_classes_general(&w.content(), n)
        .class_of(w)
        .expect("w is in its own table")
        .to_vec()
}

/// All ∼₂-class intervals of W(ℓ_a, ℓ_b): breadth-first from the global
/// minimum a^ℓa b^ℓb, expanding each newly seen class through the upward
/// swap neighbors of its minimum. Output sorted by minimal word.
pub fn list_classes_2(ell_a: usize, ell_b: usize) -> Vec<ClassInterval> {
    assert!(ell_a + ell_b > 0, "empty content");
    let mut letters = vec![0u8; ell_a];
    letters.extend(std::iter::repeat(1u8).take(ell_b));
    let seed = Word::new(letters, 2).expect("nonempty");

    let mut table: BTreeMap<Word, ClassInterval> = BTreeMap::new();
    let mut wlist = vec![seed];
    while !wlist.is_empty() {
        let mut next = Vec::new();
        for w in wlist {
            let ci = ClassInterval::of(&w).expect("two-letter word");
            if table.contains_key(&ci.min_word) {
                continue;
            }
            // upward neighbors: each "ab" factor of the minimum swapped to "ba"
            let min = &ci.min_word;
            for i in 0..min.len().saturating_sub(1) {
                if min.letters()[i] == 0 && min.letters()[i + 1] == 1 {
                    let mut swapped = min.letters().to_vec();
                    swapped.swap(i, i + 1);
                    next.push(Word::new(swapped, 2).expect("same content"));
                }
            }
            table.insert(ci.min_word.clone(), ci);
        }
        wlist = next;
    }
    table.into_values().collect()
}

/// The ∼ₙ-class of a two-letter word for n ≥ 3: the ∼₂ interval filtered by
/// the higher-degree signatures. Non-two-letter input falls back to the
/// general algorithm.
pub fn equivalence_class_n(w: &Word, n: usize) -> Vec<Word> {
    assert!(n >= 3);
    if w.alphabet_size() != 2 {
        return equivalence_class_general(w, n);
    }
    let ci = ClassInterval::of(w).expect("two-letter word");
    let wkey = higher_fingerprint(w, n);
    let mut class: Vec<Word> = interval_words(&ci)
        .filter(|v| higher_fingerprint(v, n) == wkey)
        .filter(|v| (2..n).all(|d| degree_supports_equal(w, v, d)))
        .collect();
    class.sort();
    class
}

/// Dispatch: the ∼ₙ-class of w by the cheapest applicable route.
pub fn equivalence_class(w: &Word, n: usize) -> Vec<Word> {
    if w.alphabet_size() == 2 {
        if n == 2 {
            let ci = ClassInterval::of(w).expect("two-letter word");
            return interval_words(&ci).collect();
        }
        return equivalence_class_n(w, n);
    }
    equivalence_class_general(w, n)
}

/// One identity w ∼ₙ v, with a flag marking the canonical representative of
/// its orbit under a/b exchange and reversal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub w: Word,
    pub v: Word,
    pub n: usize,
    pub canonical: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Periodically persist finished contents here and resume from it.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct SearchCheckpoint {
    ell: usize,
    n: usize,
    done: Vec<usize>,
    pairs: Vec<(String, String)>,
}

/// Stacked fingerprints of the degree-2..n−1 signatures — a sound
/// pre-filter: equal signatures always collide, so hashing by it never
/// splits a true class.
fn higher_fingerprint(w: &Word, n: usize) -> Vec<i64> {
    let mut key = Vec::new();
    for d in 2..n {
        key.extend(support_fingerprint(w, d));
    }
    key
}

/// Split one ∼₂ interval into its ∼ₙ classes (n ≥ 3): bucket members by
/// signature fingerprints, then confirm with exact support comparisons
/// inside each bucket.
fn split_interval(ci: &ClassInterval, n: usize) -> Vec<Vec<Word>> {
    let members: Vec<Word> = interval_words(ci).collect();
    let mut buckets: HashMap<Vec<i64>, Vec<Word>> = HashMap::new();
    for v in members {
        buckets.entry(higher_fingerprint(&v, n)).or_default().push(v);
    }
    let mut groups = Vec::new();
    for (_, bucket) in buckets {
        if bucket.len() == 1 {
            groups.push(bucket);
            continue;
        }
        let mut exact: Vec<Vec<Word>> = Vec::new();
        for v in bucket {
            match exact
                .iter_mut()
                .find(|g| (2..n).all(|d| degree_supports_equal(&g[0], &v, d)))
            {
                Some(g) => g.push(v),
                None => exact.push(vec![v]),
            }
        }
        groups.extend(exact);
    }
    groups
}

/// All ∼ₙ identities among words of one content, as ordered pairs (w < v).
fn identities_for_content(ell_a: usize, ell_b: usize, n: usize) -> Vec<(Word, Word)> {
    let intervals = list_classes_2(ell_a, ell_b);
    let mut pairs: Vec<(Word, Word)> = intervals
        .par_iter()
        .filter(|ci| !ci.is_singleton())
        .flat_map_iter(|ci| {
            let groups = if n == 2 {
                vec![interval_words(ci).collect::<Vec<Word>>()]
            } else {
                split_interval(ci, n)
            };
            let mut local = Vec::new();
            for mut group in groups {
                group.sort();
                for i in 0..group.len() {
                    for j in i + 1..group.len() {
                        local.push((group[i].clone(), group[j].clone()));
                    }
                }
            }
            local
        })
        .collect();
    pairs.sort();
    pairs
}

fn pair_orbit_min(w: &Word, v: &Word) -> (Word, Word) {
    let mut best: Option<(Word, Word)> = None;
    let variants = [
        (w.clone(), v.clone()),
        (w.reverse(), v.reverse()),
        (w.dual().expect("two letters"), v.dual().expect("two letters")),
        (
            w.reverse().dual().expect("two letters"),
            v.reverse().dual().expect("two letters"),
        ),
    ];
    for (a, b) in variants {
        let pair = if a <= b { (a, b) } else { (b, a) };
        if best.as_ref().is_none_or(|cur| pair < *cur) {
            best = Some(pair);
        }
    }
    best.expect("nonempty orbit")
}

pub fn shortest_identity_search(ell: usize, n: usize) -> Vec<IdentityRecord> {
    shortest_identity_search_with(ell, n, &SearchOptions::default())
}

/// All ∼ₙ identities among two-letter words of total length ℓ. Contents
/// with ℓ_a ≤ ℓ/2 are searched; the rest follow by the a/b exchange
/// symmetry. The record whose pair is minimal in its symmetry orbit carries
/// `canonical: true`.
pub fn shortest_identity_search_with(
    ell: usize,
    n: usize,
    opts: &SearchOptions,
) -> Vec<IdentityRecord> {
    assert!(ell >= 1 && n >= 2);
    let mut done: Vec<usize> = Vec::new();
    let mut pairs: Vec<(Word, Word)> = Vec::new();

    if let Some(path) = &opts.checkpoint {
        if let Ok(text) = std::fs::read_to_string(path) {
            if let Ok(cp) = serde_json::from_str::<SearchCheckpoint>(&text) {
                if cp.ell == ell && cp.n == n {
                    done = cp.done;
                    pairs = cp
                        .pairs
                        .iter()
                        .map(|(a, b)| {
                            (
                                Word::parse(a, 2).expect("checkpoint word"),
                                Word::parse(b, 2).expect("checkpoint word"),
                            )
                        })
                        .collect();
                }
            }
        }
    }

    for ell_a in 0..=ell / 2 {
        if done.contains(&ell_a) {
            continue;
        }
        pairs.extend(identities_for_content(ell_a, ell - ell_a, n));
        done.push(ell_a);
        if let Some(path) = &opts.checkpoint {
            let cp = SearchCheckpoint {
                ell,
                n,
                done: done.clone(),
                pairs: pairs
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            };
            let _ = std::fs::write(path, serde_json::to_string(&cp).expect("serialises"));
        }
    }

    // close under a/b exchange to cover contents with ℓ_a > ℓ/2
    let mut all = pairs.clone();
    for (w, v) in &pairs {
        let (dw, dv) = (w.dual().expect("two letters"), v.dual().expect("two letters"));
        let dual_pair = if dw <= dv { (dw, dv) } else { (dv, dw) };
        all.push(dual_pair);
    }
    all.sort();
    all.dedup();

    all.into_iter()
        .map(|(w, v)| {
            let canonical = pair_orbit_min(&w, &v) == (w.clone(), v.clone());
            IdentityRecord { w, v, n, canonical }
        })
        .collect()
}

/// The word w(r,k) = (ab^k)(ab)^r(a^k b) of the generalised Catalan family.
pub fn catalan_word(r: usize, k: usize) -> Word {
    let mut letters = vec![0u8];
    letters.extend(std::iter::repeat(1u8).take(k));
    for _ in 0..r {
        letters.push(0);
        letters.push(1);
    }
    letters.extend(std::iter::repeat(0u8).take(k));
    letters.push(1);
    Word::new(letters, 2).expect("nonempty")
}

/// The C(r,k) class: its interval, exact size, and the closed-form count of
/// Dyck paths of semilength r and height ≤ k for cross-checking.
pub fn catalan_family(r: usize, k: usize) -> (ClassInterval, BigUint, BigUint) {
    assert!(r >= 2 && k >= 2);
    let ci = ClassInterval::of(&catalan_word(r, k)).expect("two-letter word");
    let size = class_size(&ci);
    let formula = catalan_formula(r, k);
    (ci, size, formula)
}

/// |C(r,k)| = 2^{2r+2}/(k+2) · Σ_j cos^{2r}(jπ/(k+2)) sin²(jπ/(k+2)),
/// rounded from floating-point evaluation (exact at desk scales).
fn catalan_formula(r: usize, k: usize) -> BigUint {
    let kk = (k + 2) as f64;
    let mut total = 0.0f64;
    for j in 1..=(k + 1) / 2 {
        let theta = std::f64::consts::PI * j as f64 / kk;
        total += theta.cos().powi(2 * r as i32) * theta.sin().powi(2);
    }
    let value = total * 2f64.powi(2 * r as i32 + 2) / kk;
    BigUint::from(value.round() as u128)
}
