//! Sampling experiments over word classes: locally-isolated fractions,
//! UT₃/UT₂ neighbour ratios, class-composition tables, and the
//! largest-class probe. All estimators are deterministic in (seed, stream)
//! regardless of thread count.

use num_bigint::BigUint;
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::list_classes_2;
use crate::identity::{check_identity, is_locally_isolated};
use crate::minmax::{class_size, ClassInterval};
use crate::word::{Content, Word};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub content: Vec<i64>,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
}

/// One point estimate with its 95% normal-approximation binomial CI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatRow {
    pub param: i64,
    pub estimate: f64,
    pub half_width: f64,
    pub samples: u64,
}

impl StatRow {
    pub fn ci_low(&self) -> f64 {
        (self.estimate - self.half_width).max(0.0)
    }

    pub fn ci_high(&self) -> f64 {
        (self.estimate + self.half_width).min(1.0)
    }
}

fn binomial_row(param: i64, hits: u64, samples: u64) -> StatRow {
    let p = hits as f64 / samples as f64;
    StatRow {
        param,
        estimate: p,
        half_width: 1.96 * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
    }
}

/// A uniform sample from W(content) by shuffling the letter multiset.
/// The stream index keeps parallel draws independent and reproducible.
pub fn sample_word(c: &Content, seed: u64, stream: u64) -> Word {
    let mut letters: Vec<u8> = Vec::with_capacity(c.total() as usize);
    for (l, &k) in c.0.iter().enumerate() {
        letters.extend(std::iter::repeat(l as u8).take(k as usize));
    }
    assert!(!letters.is_empty(), "empty content");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    letters.shuffle(&mut rng);
    Word::new(letters, c.alphabet_size()).expect("nonempty")
}

/// Sampled fraction of locally isolated words of one content.
pub fn isolated_fraction(c: &Content, n: usize, samples: u64, seed: u64) -> StatRow {
    assert!(samples >= 1);
    let hits = (0..samples)
        .into_par_iter()
        .filter(|&i| is_locally_isolated(&sample_word(c, seed, i), n))
        .count() as u64;
    binomial_row(c.total(), hits, samples)
}

/// Exact fraction of locally isolated words, by full enumeration.
pub fn exhaustive_isolated_fraction(c: &Content, n: usize) -> Rational64 {
    let words = crate::enumerate::words_with_content(c);
    let hits = words
        .par_iter()
        .filter(|w| is_locally_isolated(w, n))
        .count() as i64;
    Rational64::new(hits, words.len() as i64)
}

/// Per-sample ratios of ∼₃ swap neighbours to ∼₂ swap neighbours; samples
/// without any ∼₂ neighbour carry no ratio and are counted separately.
#[derive(Debug, Clone)]
pub struct NeighborRatios {
    pub ratios: Vec<Rational64>,
    pub isolated: u64,
}

pub fn neighbor_ratio_ut3(ell: usize, samples: u64, seed: u64) -> NeighborRatios {
    assert!(ell >= 2 && ell % 2 == 0, "ell must be even");
    let c = Content(vec![(ell / 2) as i64, (ell / 2) as i64]);
    let per: Vec<Option<Rational64>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let w = sample_word(&c, seed, i);
            let mut n2 = 0i64;
            let mut n3 = 0i64;
            for v in w.neighbors() {
                if check_identity(&w, &v, 2) {
                    n2 += 1;
                    if check_identity(&w, &v, 3) {
                        n3 += 1;
                    }
                }
            }
            (n2 > 0).then(|| Rational64::new(n3, n2))
        })
        .collect();
    let isolated = per.iter().filter(|r| r.is_none()).count() as u64;
    NeighborRatios {
        ratios: per.into_iter().flatten().collect(),
        isolated,
    }
}

/// ∼₂-class composition of one content slice: how many classes are
/// isoterms, twins, or larger.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionRow {
    pub ell_a: usize,
    pub isoterms: u64,
    pub twins: u64,
    pub larger: u64,
    pub classes: u64,
    pub words: BigUint,
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn class_composition(ell: usize) -> Vec<CompositionRow> {
    assert!(ell >= 2);
    (0..=ell)
        .map(|ell_a| {
            let ell_b = ell - ell_a;
            let mut row = CompositionRow {
                ell_a,
                isoterms: 0,
                twins: 0,
                larger: 0,
                classes: 0,
                words: binomial(ell, ell_a),
            };
            if ell_a == 0 || ell_b == 0 {
                // single-letter slice: one word, one class
                row.isoterms = 1;
                row.classes = 1;
                return row;
            }
            for ci in list_classes_2(ell_a, ell_b) {
                row.classes += 1;
                match u64::try_from(class_size(&ci)) {
                    Ok(1) => row.isoterms += 1,
                    Ok(2) => row.twins += 1,
                    _ => row.larger += 1,
                }
            }
            row
        })
        .collect()
}

/// The largest ∼₂-class of one content, ties broken by least minimum word.
pub fn largest_class(ell_a: usize, ell_b: usize) -> (ClassInterval, BigUint) {
    let mut best: Option<(ClassInterval, BigUint)> = None;
    for ci in list_classes_2(ell_a, ell_b) {
        let size = class_size(&ci);
        let better = match &best {
            None => true,
            Some((bci, bsize)) => {
                size > *bsize || (size == *bsize && ci.min_word < bci.min_word)
            }
        };
        if better {
            best = Some((ci, size));
        }
    }
    best.expect("nonempty content")
}

/// CSV with the fixed experiment schema.
pub fn rows_to_csv(experiment: &str, rows: &[StatRow], seed: u64) -> String {
    let mut out = String::from("experiment,param,estimate,ci_low,ci_high,samples,seed\n");
    for r in rows {
        out.push_str(&format!(
            "{experiment},{},{},{},{},{},{seed}\n",
            r.param,
            r.estimate,
            r.ci_low(),
            r.ci_high(),
            r.samples
        ));
    }
    out
}

/// Sidecar describing how a CSV was produced.
pub fn metadata_json(config: &ExperimentConfig) -> String {
    serde_json::to_string_pretty(&serde_json::json!({
        "schema": "tropid.stats.metadata/1",
        "version": env!("CARGO_PKG_VERSION"),
        "ci": "normal approximation, 95%",
        "config": config,
    }))
    .expect("serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::catalan_family;
    use crate::identity::is_isoterm;
    use crate::enumerate::words_with_content;

    fn c2(a: i64, b: i64) -> Content {
        Content(vec![a, b])
    }

    #[test]
    fn sampling_uniformity() {
        assert_eq!(sample_word(&c2(1, 0), 5, 0).to_string(), "a");
        // fixed (seed, stream) reproduces the draw
        assert_eq!(sample_word(&c2(3, 3), 9, 4), sample_word(&c2(3, 3), 9, 4));
        assert_ne!(sample_word(&c2(6, 6), 9, 0), sample_word(&c2(6, 6), 9, 1));

        // per-position letter frequencies stay near 1/2 for W(3,3)
        let draws = 4000;
        let mut a_at = vec![0u32; 6];
        for i in 0..draws {
            let w = sample_word(&c2(3, 3), 11, i);
            for (pos, &l) in w.letters().iter().enumerate() {
                if l == 0 {
                    a_at[pos] += 1;
                }
            }
        }
        for &count in &a_at {
            let f = count as f64 / draws as f64;
            assert!((f - 0.5).abs() < 0.05, "position frequency {f}");
        }
    }

    #[test]
    fn isolated_fractions() {
        // n = 2: locally isolated iff isoterm; exact fraction at (4,4)
        let exact = exhaustive_isolated_fraction(&c2(4, 4), 2);
        let isoterms = words_with_content(&c2(4, 4))
            .iter()
            .filter(|w| is_isoterm(w, 2))
            .count() as i64;
        assert_eq!(exact, Rational64::new(isoterms, 70));
        assert_eq!(exact, Rational64::new(1, 1)); // length 8 < 10: all isoterms

        for w in words_with_content(&c2(3, 4)) {
            assert_eq!(is_locally_isolated(&w, 2), is_isoterm(&w, 2));
        }

        // sampled estimate within 3 half-widths of the exact value
        let exact = exhaustive_isolated_fraction(&c2(6, 6), 2);
        let row = isolated_fraction(&c2(6, 6), 2, 800, 13);
        let exact_f = *exact.numer() as f64 / *exact.denom() as f64;
        assert!((row.estimate - exact_f).abs() <= 3.0 * row.half_width);
        assert!(row.ci_low() <= row.estimate && row.estimate <= row.ci_high());

        let one = isolated_fraction(&c2(5, 5), 2, 1, 3);
        assert!(one.estimate == 0.0 || one.estimate == 1.0);
    }

    #[test]
    fn neighbor_ratios() {
        let out = neighbor_ratio_ut3(12, 30, 17);
        assert_eq!(out.ratios.len() + out.isolated as usize, 30);
        for r in &out.ratios {
            assert!(*r >= Rational64::new(0, 1) && *r <= Rational64::new(1, 1));
        }
        // short words are all ~2-isolated: every sample is skipped
        let out = neighbor_ratio_ut3(8, 10, 17);
        assert!(out.ratios.is_empty());
        assert_eq!(out.isolated, 10);
    }

    #[test]
    fn composition_table() {
        let table = class_composition(9);
        for row in &table {
            assert_eq!(row.twins + row.larger, 0, "ell_a={}", row.ell_a);
            assert_eq!(BigUint::from(row.classes), row.words, "ell_a={}", row.ell_a);
        }

        let table = class_composition(10);
        assert_eq!(table.len(), 11);
        assert_eq!(table[5].twins, 4);
        assert_eq!(table[5].larger, 0);
        assert_eq!(table[5].words, BigUint::from(252u32));
        for ell_a in 0..=10 {
            let (l, r) = (&table[ell_a], &table[10 - ell_a]);
            assert_eq!((l.isoterms, l.twins, l.larger), (r.isoterms, r.twins, r.larger));
        }
    }

    #[test]
    fn largest_classes() {
        let (ci, size) = largest_class(5, 5);
        assert_eq!(size, BigUint::from(2u32));
        assert_eq!(ci.min_word.to_string(), "abbaababba");

        // the generalised Catalan family attains the maximum
        for ell_a in [6usize, 7] {
            let (_, size) = largest_class(ell_a, ell_a);
            let best_catalan = (2..=ell_a - 3)
                .map(|r| catalan_family(r, ell_a - 1 - r).1)
                .max()
                .unwrap();
            assert_eq!(size, best_catalan);
        }
    }

    #[test]
    fn csv_shape() {
        let rows = vec![isolated_fraction(&c2(4, 4), 2, 50, 21)];
        let csv = rows_to_csv("isolated", &rows, 21);
        assert!(csv.starts_with("experiment,param,estimate,ci_low,ci_high,samples,seed\n"));
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().starts_with("isolated,8,"));
        // byte-identical on rerun
        assert_eq!(csv, rows_to_csv("isolated", &[isolated_fraction(&c2(4, 4), 2, 50, 21)], 21));

        let meta = metadata_json(&ExperimentConfig {
            experiment: "isolated".into(),
            content: vec![4, 4],
            n: 2,
            samples: 50,
            seed: 21,
            threads: 1,
        });
        let parsed: serde_json::Value = serde_json::from_str(&meta).unwrap();
        assert_eq!(parsed["schema"], "tropid.stats.metadata/1");
    }
}
