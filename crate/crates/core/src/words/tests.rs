use std::cmp::Ordering;

use proptest::prelude::*;

use super::*;
use crate::algebra::{kxy_mod_squares, kxy_mod_xy, three_vertex_gentle};

fn w(alg: &StringAlgebra, s: &str) -> Word {
    Word::parse(alg, s).unwrap()
}

fn fmt_all(alg: &StringAlgebra, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|x| x.format(alg)).collect()
}

fn single_loop() -> StringAlgebra {
    StringAlgebra::new(&["v"], &[("x", "v", "v")], &[&["x", "x"]]).unwrap()
}

#[test]
fn word_conditions() {
    let a = kxy_mod_xy();
    let l = |s: &str| s.split_whitespace().map(|t| a.parse_letter(t).unwrap()).collect::<Vec<_>>();
    assert!(is_word_seq(&a, &l("y^-1 x x")));
    assert!(!is_word_seq(&a, &l("x y")));
    assert!(!is_word_seq(&a, &l("x x^-1")));
    assert!(!is_word_seq(&a, &l("y^-1 x^-1")));
    assert!(Word::parse(&a, "x y").is_err());
    assert!(matches!(Word::parse(&a, "x z"), Err(Error::Malformed(_))));
}

#[test]
fn literal_round_trip() {
    let a = kxy_mod_xy();
    for s in [
        "1_v_+",
        "1_v_-",
        "y^-1 x x",
        "periodic: x y^-1",
        "eventually: y^-1 x x | y^-1",
        "two-sided: ...(y y x^-1) | (x^-1)...",
    ] {
        assert_eq!(w(&a, s).format(&a), s);
    }
}

#[test]
fn inverse_examples() {
    let a = kxy_mod_xy();
    assert_eq!(w(&a, "1_v_+").inverse(), w(&a, "1_v_-"));
    assert_eq!(w(&a, "y^-1 x").inverse(), w(&a, "x^-1 y"));
    let e = w(&a, "eventually: y^-1 x | y^-1");
    assert_eq!(e.inverse().inverse(), e);
}

#[test]
fn compose_examples() {
    let a = kxy_mod_xy();
    let one = w(&a, "1_v_+");
    assert_eq!(one.compose(&a, &one), Ok(one.clone()));
    assert_eq!(w(&a, "y^-1").compose(&a, &w(&a, "x x")), Ok(w(&a, "y^-1 x x")));
    // x⁻¹ and y have the same sign.
    assert_eq!(w(&a, "x").compose(&a, &w(&a, "y")), Err(ComposeError::SignsNotOpposite));
    assert_eq!(w(&a, "x").compose(&a, &w(&a, "x^-1")), Err(ComposeError::SignsNotOpposite));
    let g = three_vertex_gentle();
    assert_eq!(w(&g, "a").compose(&g, &w(&g, "a")), Err(ComposeError::TailHeadMismatch));
    // With x³ = 0 the signs allow x·x·x but the concatenation is not a word.
    let s = StringAlgebra::new(&["v"], &[("x", "v", "v")], &[&["x", "x", "x"]]).unwrap();
    assert_eq!(w(&s, "x x").compose(&s, &w(&s, "x")), Err(ComposeError::NotAWord));
    let e = w(&a, "eventually: | y^-1");
    assert_eq!(w(&a, "y^-1 x x").compose(&a, &e), Ok(w(&a, "eventually: y^-1 x x | y^-1")));
}

#[test]
fn eventually_normalises() {
    let a = kxy_mod_xy();
    assert_eq!(w(&a, "eventually: y^-1 x x y^-1 | y^-1 y^-1"), w(&a, "eventually: y^-1 x x | y^-1"));
}

#[test]
fn order_examples() {
    let a = kxy_mod_xy();
    assert_eq!(compare(&a, &w(&a, "y"), &w(&a, "1_v_+")), Ok(Ordering::Less));
    let s = single_loop();
    assert_eq!(compare(&s, &w(&s, "1_v_-"), &w(&s, "x^-1")), Ok(Ordering::Less));
    assert!(compare(&a, &w(&a, "1_v_-"), &w(&a, "x^-1")).is_err());
    let inv_x = w(&a, "eventually: | x^-1");
    for c in ["y", "x^-1 y", "y y x^-1", "x^-1 x^-1 y", "1_v_+"] {
        let c = w(&a, c);
        if c.letters().iter().any(|l| l.is_direct()) {
            assert_eq!(compare(&a, &c, &inv_x), Ok(Ordering::Less), "{}", c.format(&a));
        }
    }
    assert_eq!(compare(&a, &inv_x, &inv_x), Ok(Ordering::Equal));
}

#[test]
fn equivalence_examples() {
    let a = kxy_mod_xy();
    assert!(w(&a, "periodic: x y^-1").equivalent(&w(&a, "periodic: y^-1 x")));
    assert!(w(&a, "y^-1 x").equivalent(&w(&a, "x^-1 y")));
    assert!(!w(&a, "x").equivalent(&w(&a, "y")));
    assert_eq!(w(&a, "1_v_-").canonical(), w(&a, "1_v_+"));
}

#[test]
fn enumerate_examples() {
    let a = kxy_mod_xy();
    let e = enumerate_words(&a, &[2]);
    assert_eq!(fmt_all(&a, &e.finite), vec!["1_v_+", "x", "y"]);
    assert_eq!(fmt_all(&a, &e.periodic), vec!["periodic: x", "periodic: x y^-1", "periodic: y"]);
    let e = enumerate_words(&a, &[1]);
    assert_eq!(fmt_all(&a, &e.finite), vec!["1_v_+"]);
    let a2 = StringAlgebra::new(&["1", "2"], &[("a", "1", "2")], &[]).unwrap();
    let e = enumerate_words(&a2, &[1, 1]);
    assert_eq!(fmt_all(&a2, &e.finite), vec!["1_1_+", "1_2_+", "a"]);
    assert!(e.periodic.is_empty());
}

/// Brute-force count of finite words of each length, by filtering all letter
/// sequences through the word conditions.
fn brute_force_words(alg: &StringAlgebra, max_len: usize) -> Vec<Vec<Letter>> {
    let letters = alg.letters();
    let mut out = vec![];
    let mut layer: Vec<Vec<Letter>> = letters.iter().map(|&l| vec![l]).collect();
    for _ in 0..max_len {
        layer.retain(|c| is_word_seq(alg, c));
        out.extend(layer.iter().cloned());
        layer = layer
            .iter()
            .flat_map(|c| letters.iter().map(move |&l| [c.as_slice(), &[l]].concat()))
            .collect();
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for alg in [kxy_mod_xy(), kxy_mod_squares(), three_vertex_gentle()] {
        let n = alg.num_vertices();
        let budget = vec![6 / n + 1; n];
        let e = enumerate_words(&alg, &budget);
        let mut expected: std::collections::BTreeSet<Word> = (0..n).map(|v| Word::trivial(v, 1)).collect();
        for c in brute_force_words(&alg, budget.iter().sum::<usize>() - 1) {
            let word = Word::Finite(c);
            let seq = word.vertex_sequence(&alg);
            if (0..n).all(|v| seq.iter().filter(|&&u| u == v).count() <= budget[v]) {
                expected.insert(word.canonical());
            }
        }
        assert_eq!(e.finite, expected.into_iter().collect::<Vec<_>>());
        for (i, x) in e.finite.iter().enumerate() {
            for y in &e.finite[i + 1..] {
                assert!(!x.equivalent(y));
            }
        }
    }
}

#[test]
fn sign_alternation_and_no_word_is_its_own_inverse_shift() {
    for alg in [kxy_mod_xy(), kxy_mod_squares(), three_vertex_gentle()] {
        let e = enumerate_words(&alg, &vec![4; alg.num_vertices()]);
        for c in &e.finite {
            for pair in c.letters().windows(2) {
                assert_ne!(alg.sign(pair[0].invert()), alg.sign(pair[1]));
            }
            assert_ne!(*c, c.inverse());
            assert_eq!(c.inverse().inverse(), *c);
        }
        for p in &e.periodic {
            for n in 0..p.letters().len() as i64 {
                assert_ne!(*p, p.inverse().shift(n));
            }
        }
    }
}

#[test]
fn compose_inverse_identity() {
    let a = kxy_mod_xy();
    let words = enumerate_words(&a, &[4]).finite;
    let all: Vec<Word> = words.iter().flat_map(|c| [c.clone(), c.inverse()]).collect();
    for c in &all {
        for d in &all {
            if let Ok(cd) = c.compose(&a, d) {
                assert_eq!(cd.inverse(), d.inverse().compose(&a, &c.inverse()).unwrap());
            }
        }
    }
}

/// All words of `W_{v,ε}` of length ≤ 5, plus a few eventually periodic ones.
fn w_set(alg: &StringAlgebra, v: usize, eps: i8) -> Vec<Word> {
    let mut out = vec![Word::trivial(v, eps)];
    for c in brute_force_words(alg, 5) {
        let word = Word::Finite(c);
        if word.head(alg) == v && word.sign(alg) == eps {
            out.push(word);
        }
    }
    let periodic = enumerate_words(alg, &vec![3; alg.num_vertices()]).periodic;
    for p in periodic {
        for rot in [p.clone(), p.inverse()] {
            for k in 0..rot.letters().len() {
                let e = rot.shift(k as i64).letters().to_vec();
                for prefix_len in 0..3 {
                    for c in out.clone().iter().filter(|c| c.len() == Some(prefix_len)) {
                        let cand = if c.is_trivial() {
                            Word::eventually(alg, vec![], e.clone())
                        } else {
                            Word::eventually(alg, c.letters().to_vec(), e.clone())
                        };
                        if let Ok(x) = cand {
                            if x.head(alg) == v && x.sign(alg) == eps && !out.contains(&x) {
                                out.push(x);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn order_is_strict_total() {
    for alg in [kxy_mod_xy(), kxy_mod_squares(), three_vertex_gentle()] {
        for v in 0..alg.num_vertices() {
            for eps in [1, -1] {
                let mut ws = w_set(&alg, v, eps);
                ws.truncate(500);
                ws.sort_by(|x, y| compare(&alg, x, y).unwrap());
                for i in 0..ws.len() {
                    for j in 0..ws.len() {
                        let o = compare(&alg, &ws[i], &ws[j]).unwrap();
                        assert_eq!(o, i.cmp(&j), "{} vs {}", ws[i].format(&alg), ws[j].format(&alg));
                    }
                }
            }
        }
    }
}

fn brute_prefix_cmp(c: &Word, d: &Word, depth: usize) -> Ordering {
    for i in 1..=depth {
        let (x, y) = (c.letter_at(i), d.letter_at(i));
        if x != y {
            let key = |l: Option<Letter>| match l {
                Some(l) if l.is_direct() => 0,
                None => 1,
                Some(_) => 2,
            };
            return key(x).cmp(&key(y));
        }
    }
    Ordering::Equal
}

proptest! {
    #[test]
    fn eq_bound_agrees_with_deep_prefix(i in 0usize..10_000, j in 0usize..10_000) {
        let alg = kxy_mod_squares();
        let ws: Vec<Word> = w_set(&alg, 0, 1).into_iter().filter(|x| matches!(x, Word::Eventually { .. })).collect();
        let (c, d) = (&ws[i % ws.len()], &ws[j % ws.len()]);
        let shape = |x: &Word| match x { Word::Eventually { prefix, period } => (prefix.len(), period.len()), _ => unreachable!() };
        let ((a1, b1), (a2, b2)) = (shape(c), shape(d));
        let bound = a1 + a2 + b1 * b2 + 1;
        prop_assert_eq!(compare(&alg, c, d).unwrap(), brute_prefix_cmp(c, d, 4 * bound));
    }
}

#[test]
fn props_of_generated_and_controlled_examples() {
    let a = kxy_mod_xy();
    let c = w(&a, "eventually: y^-1 x x | y^-1");
    let p = props(&c, None);
    assert!(p.finitely_generated && p.finitely_controlled);
    let d = w(&a, "two-sided: ...(y y x^-1) | (x^-1)...");
    let p = props(&d, Some(&[1, 1]));
    assert!(p.eventually_inverse);
    assert!(!p.inverse_eventually_inverse && p.inverse_vertex_finite);
    assert!(p.finitely_controlled && !p.finitely_generated);
    let f = props(&w(&a, "y^-1 x"), None);
    assert!(f.finitely_generated && f.finitely_controlled);
}
