//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Criterion 3 is the long exhaustive search and stays
//! behind #[ignore]; criterion 13 is advisory timing and never fails.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use tropid_core::enumerate::{
    catalan_family, list_classes_2, list_classes_general, shortest_identity_search,
    words_with_content,
};
use tropid_core::geom::PointSet;
use tropid_core::identity::{
    check_identity, random_morphism_test, MorphismVerdict,
};
use tropid_core::minmax::{class_size, interval_words, max_word, min_word, ClassInterval};
use tropid_core::signature::{check_recursion, degree_signature, hull_of, support_points, u_from_code};
use tropid_core::stats::{isolated_fraction, sample_word};
use tropid_core::word::{Content, Word};

fn report(criterion: u32, name: &str, pass: bool) {
    println!(
        "criterion {criterion} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed");
}

fn w2(text: &str) -> Word {
    Word::parse(text, 2).unwrap()
}

/// The ten shortest UT3 identities: X ab Y ~ X ba Y.
const SHORTEST_UT3: [(&str, &str); 10] = [
    ("abbaabba", "baababbbbaba"),
    ("abbabaabab", "babaababba"),
    ("ababbabaab", "baababbaba"),
    ("abbabaabab", "ababbabaab"),
    ("ababbabaab", "ababbabaab"),
    ("abbaabbaba", "baababbaba"),
    ("abbaabbaba", "babaabbaab"),
    ("ababbabaab", "abbabaabab"),
    ("ababbabaab", "babaababba"),
    ("abbaabbaba", "babaababba"),
];

const ADJAN_PAIRS: [(&str, &str); 4] = [
    ("abbaababba", "abbabaabba"),
    ("abbaabbaab", "abbababaab"),
    ("baabababba", "baabbaabba"),
    ("baababbaab", "baabbabaab"),
];

#[test]
fn criterion_01_adjan_reproduction() {
    let mut pass = true;
    let mut found: BTreeSet<(String, String)> = BTreeSet::new();
    for ell in 2..=10usize {
        for ell_a in 1..ell {
            let intervals = list_classes_2(ell_a, ell - ell_a);
            for ci in intervals {
                if ci.is_singleton() {
                    continue;
                }
                if ell < 10 {
                    pass = false;
                } else {
                    pass &= class_size(&ci) == 2u32.into();
                    found.insert((ci.min_word.to_string(), ci.max_word.to_string()));
                }
            }
        }
    }
    let expected: BTreeSet<(String, String)> = ADJAN_PAIRS
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    pass &= found == expected;
    report(1, "Adjan reproduction", pass);
}

#[test]
fn criterion_02_shortest_ut3_verification() {
    let mut pass = true;
    for (x, y) in SHORTEST_UT3 {
        let w = w2(&format!("{x}ab{y}"));
        let v = w2(&format!("{x}ba{y}"));
        pass &= w.len() == 22 && check_identity(&w, &v, 3);
    }
    report(2, "shortest UT3 verification", pass);
}

fn orbit_min(w: &Word, v: &Word) -> (String, String) {
    let mut best: Option<(Word, Word)> = None;
    for (a, b) in [
        (w.clone(), v.clone()),
        (w.reverse(), v.reverse()),
        (w.dual().unwrap(), v.dual().unwrap()),
        (w.reverse().dual().unwrap(), v.reverse().dual().unwrap()),
    ] {
        let pair = if a <= b { (a, b) } else { (b, a) };
        if best.as_ref().is_none_or(|cur| pair < *cur) {
            best = Some(pair);
        }
    }
    let (a, b) = best.unwrap();
    (a.to_string(), b.to_string())
}

#[test]
#[ignore = "exhaustive length-21/22 search; run explicitly"]
fn criterion_03_full_searches() {
    let mut pass = shortest_identity_search(21, 3).is_empty();
    let records = shortest_identity_search(22, 3);
    let canonical: BTreeSet<(String, String)> = records
        .iter()
        .filter(|r| r.canonical)
        .map(|r| (r.w.to_string(), r.v.to_string()))
        .collect();
    let expected: BTreeSet<(String, String)> = SHORTEST_UT3
        .iter()
        .map(|(x, y)| orbit_min(&w2(&format!("{x}ab{y}")), &w2(&format!("{x}ba{y}"))))
        .collect();
    pass &= canonical == expected;
    report(3, "full shortest-identity searches", pass);
}

#[test]
fn criterion_04_minmax_golden() {
    let w = w2("baabbaabbabaabaaababaaba");
    let ci = ClassInterval::of(&w).unwrap();
    let pass = ci.min_word.to_string() == "baababababbaaabaababaaba"
        && ci.max_word.to_string() == "baabbabababaabaabaabaaba"
        && class_size(&ci) == 32u32.into();
    report(4, "MinMax golden example", pass);
}

#[test]
fn criterion_05_oracle_equivalence() {
    let mut cases: Vec<(usize, usize)> = Vec::new(); // (m, max_len)
    cases.push((2, 8));
    cases.push((3, 6));
    let pass = cases.into_iter().all(|(m, max_len)| {
        (1..=max_len).all(|len| {
            (0..m.pow(len as u32)).into_par_iter().all(|code| {
                let mut letters = Vec::with_capacity(len);
                let mut c = code;
                for _ in 0..len {
                    letters.push((c % m) as u8);
                    c /= m;
                }
                let w = Word::new(letters, m).unwrap();
                (1..=3usize).all(|d| {
                    let sig = degree_signature(&w, d);
                    sig.entries.iter().enumerate().all(|(ucode, entry)| {
                        let u = u_from_code(ucode, m, d);
                        entry.polytope == hull_of(&support_points(&w, &u))
                    })
                })
            })
        })
    });
    report(5, "signature vs brute-force supports", pass);
}

#[test]
fn criterion_06_structural_theorem() {
    let mut pass = true;
    for i in 0..200u64 {
        // deterministic word shapes from the sample index
        let ell = 2 + (i % 15) as i64;
        let ell_a = 1 + (i as i64 * 7 % (ell - 1));
        let c = Content(vec![ell_a, ell - ell_a]);
        let w = sample_word(&c, 41, i);
        let ci = ClassInterval::of(&w).unwrap();
        let members: Vec<Word> = interval_words(&ci).collect();
        for v in &members {
            pass &= check_identity(&w, v, 2);
            for nb in v.neighbors() {
                if !ci.contains(&nb) {
                    pass &= !check_identity(&w, &nb, 2);
                }
            }
        }
        // meet and join of random member pairs stay in the class
        let k = members.len();
        let (x, y) = (&members[i as usize % k], &members[(i as usize * 13 + 5) % k]);
        pass &= ci.contains(&x.meet(y).unwrap()) && ci.contains(&x.join(y).unwrap());
    }
    report(6, "structural theorem suite", pass);
}

#[test]
fn criterion_07_recursion() {
    let us: Vec<Word> = (1..=2usize)
        .flat_map(|d| (0..2usize.pow(d as u32)).map(move |c| u_from_code(c, 2, d)))
        .collect();
    let pass = (1..=8usize).all(|len| {
        (0..2usize.pow(len as u32)).into_par_iter().all(|code| {
            let letters: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
            let w = Word::new(letters, 2).unwrap();
            us.iter().all(|u| (0..2).all(|j| check_recursion(&w, u, j)))
        })
    });
    report(7, "Proposition 3.4 recursion", pass);
}

#[test]
fn criterion_08_lemma_6_1() {
    let mut pass = true;

    let u = "baaaabaaaaaababbbbbabbba";
    let v = "babbabbaabbabaa";
    let wd = w2(&format!("{u}babab{v}"));
    let wp = w2(&format!("{u}abbba{v}"));
    let join = w2(&format!("{u}babba{v}"));
    let meet = w2(&format!("{u}abbab{v}"));
    for x in [&wp, &join, &meet] {
        pass &= check_identity(&wd, x, 2);
    }
    pass &= check_identity(&wd, &join, 3) && check_identity(&wd, &meet, 3);
    pass &= !check_identity(&wd, &wp, 3);
    // w' is a UT3 isoterm: nothing in its ~2 interval matches at degree 2
    pass &= tropid_core::enumerate::equivalence_class(&wp, 3) == vec![wp.clone()];

    let u = "abaaaabbbbaaaabbaabba";
    let v = "abbaaababbabababbbb";
    let wd = w2(&format!("{u}abba{v}"));
    let wp = w2(&format!("{u}baab{v}"));
    let join = w2(&format!("{u}abab{v}"));
    let meet = w2(&format!("{u}baba{v}"));
    for x in [&wp, &join, &meet] {
        pass &= check_identity(&wd, x, 2);
    }
    pass &= check_identity(&wd, &wp, 3) && check_identity(&wd, &meet, 3);
    pass &= !check_identity(&wd, &join, 3);

    report(8, "Lemma 6.1 counterexamples", pass);
}

#[test]
fn criterion_09_catalan_family() {
    let mut pass = true;
    for r in 2..=6usize {
        for k in 2..=6usize {
            let (ci, size, formula) = catalan_family(r, k);
            pass &= size == formula;
            pass &= size == interval_words(&ci).count().into();
        }
    }
    report(9, "generalised Catalan family", pass);
}

#[test]
fn criterion_10_soundness_vs_evaluation() {
    let mut pairs: Vec<(Word, Word, usize)> = Vec::new();
    for ell in 2..=12usize {
        for ell_a in 1..ell {
            for ci in list_classes_2(ell_a, ell - ell_a) {
                if ci.is_singleton() {
                    continue;
                }
                let members: Vec<Word> = interval_words(&ci).collect();
                for i in 0..members.len() {
                    for j in i + 1..members.len() {
                        pairs.push((members[i].clone(), members[j].clone(), 2));
                    }
                }
            }
        }
    }
    for (x, y) in SHORTEST_UT3 {
        pairs.push((w2(&format!("{x}ab{y}")), w2(&format!("{x}ba{y}")), 3));
    }
    let pass = pairs.par_iter().all(|(w, v, n)| {
        random_morphism_test(w, v, *n, 1000, 97) == MorphismVerdict::NoDifferenceFound
    });
    report(10, "soundness vs random evaluation", pass);
}

fn blocks(w: &Word) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = Vec::new();
    for &l in w.letters() {
        match out.last_mut() {
            Some((cur, k)) if *cur == l => *k += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

#[test]
fn criterion_11_hereditary_and_blocks() {
    let mut pass = true;
    for ell in 2..=12usize {
        for ell_a in 1..ell {
            for ci in list_classes_2(ell_a, ell - ell_a) {
                if ci.is_singleton() {
                    continue;
                }
                let members: Vec<Word> = interval_words(&ci).collect();
                let w = &members[0];
                let wb = blocks(w);
                for v in &members[1..] {
                    let vb = blocks(v);
                    // Lemma 3.9(ii)/(iii): shared first and last blocks
                    pass &= wb.first() == vb.first() && wb.last() == vb.last();
                    // block-count corollaries: non-isoterms need a letter in
                    // >= 3 blocks and >= 6 blocks in total
                    for x in [&wb, &vb] {
                        pass &= x.len() >= 6 && letter_blocks_ok(x);
                    }
                    // Proposition 3.12: prefixes before the first z (and
                    // suffixes after the last z) stay equivalent
                    for z in 0..2u8 {
                        for (x, y) in [(w.clone(), v.clone()), (w.reverse(), v.reverse())] {
                            let xi = x.letters().iter().position(|&l| l == z);
                            let yi = y.letters().iter().position(|&l| l == z);
                            pass &= xi == yi;
                            if let (Some(xi), Some(yi)) = (xi, yi) {
                                if xi > 0 {
                                    let xp = Word::new(x.letters()[..xi].to_vec(), 2).unwrap();
                                    let yp = Word::new(y.letters()[..yi].to_vec(), 2).unwrap();
                                    pass &= check_identity(&xp, &yp, 2);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report(11, "hereditary and block properties", pass);
}

fn letter_blocks_ok(blocks: &[(u8, usize)]) -> bool {
    (0..2u8).any(|letter| blocks.iter().filter(|(l, _)| *l == letter).count() >= 3)
}

#[test]
fn criterion_12_desk_scale_statistics() {
    // exhaustive isoterm fraction of W(12,12): stream every word once
    let full = ClassInterval {
        min_word: Word::new([vec![0u8; 12], vec![1u8; 12]].concat(), 2).unwrap(),
        max_word: Word::new([vec![1u8; 12], vec![0u8; 12]].concat(), 2).unwrap(),
    };
    let all: Vec<Word> = interval_words(&full).collect();
    let total = all.len();
    let isoterms = all
        .par_iter()
        .filter(|w| min_word(w).unwrap() == max_word(w).unwrap())
        .count();
    let exact = isoterms as f64 / total as f64;

    let row = isolated_fraction(&Content(vec![12, 12]), 2, 20_000, 113);
    let mut pass = (row.estimate - exact).abs() <= 3.0 * row.half_width;

    // long-word UT3 sampling: identities are found most of the time
    let row = isolated_fraction(&Content(vec![40, 40]), 3, 5_000, 131);
    pass &= row.estimate < 0.20;
    report(12, "desk-scale statistics", pass);
}

#[test]
fn criterion_13_performance_smoke() {
    let mut sig_times = Vec::new();
    let mut minmax_times = Vec::new();
    for (i, ell) in [10_000usize, 20_000, 40_000].into_iter().enumerate() {
        let c = Content(vec![(ell / 2) as i64, (ell / 2) as i64]);
        let w = sample_word(&c, 151, i as u64);
        let best = (0..3)
            .map(|_| {
                let t = Instant::now();
                std::hint::black_box(degree_signature(&w, 1));
                t.elapsed()
            })
            .min()
            .unwrap();
        sig_times.push(best.as_secs_f64());
        let best = (0..3)
            .map(|_| {
                let t = Instant::now();
                std::hint::black_box((min_word(&w).unwrap(), max_word(&w).unwrap()));
                t.elapsed()
            })
            .min()
            .unwrap();
        minmax_times.push(best.as_secs_f64());
    }
    let ok = |t: &[f64]| t[1] / t[0] <= 2.5 && t[2] / t[1] <= 2.5;
    let pass = ok(&sig_times) && ok(&minmax_times);
    // advisory only: report, never fail
    println!(
        "criterion 13 (performance smoke): {} — signature {:?}s, minmax {:?}s",
        if pass { "PASS" } else { "ADVISORY FAIL" },
        sig_times,
        minmax_times
    );
}

#[test]
fn criterion_extras_point_set_sanity() {
    // tiny guard: the geometry layer accepts the empty support convention
    assert!(PointSet::new(4, Vec::new()).unwrap().is_empty());
    assert_eq!(words_with_content(&Content(vec![1, 1])).len(), 2);
    assert_eq!(list_classes_general(&Content(vec![1, 1]), 2).len(), 2);
}
