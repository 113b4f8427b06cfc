//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the summary always prints; exits nonzero if any criterion fails.

use std::cmp::Ordering;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stringmod::algebra::{kxy_mod_squares, kxy_mod_xy, three_vertex_gentle, Letter, StringAlgebra};
use stringmod::decompose::{certify, decompose, krs_check, laurent_decompose, DecompositionReport, LaurentModule};
use stringmod::exactla::matrix::{unit_vector, Vector};
use stringmod::exactla::{FieldSpec, Matrix, Subspace};
use stringmod::functors::{covering_search, plus_minus, refined};
use stringmod::linrel::{coords_mod, split, LinearRelation};
use stringmod::poly::Poly;
use stringmod::repmod::{band_module, direct_sum, scramble, string_module, BandCoefficient, Representation};
use stringmod::words::{compare, enumerate_words, invert_letters, is_word_seq, props, Word};

type Outcome = Result<String, String>;

fn algebras() -> Vec<(&'static str, StringAlgebra)> {
    vec![
        ("k[x,y]/(xy)", kxy_mod_xy()),
        ("k<x,y>/(x²,y²)", kxy_mod_squares()),
        ("gentle A~2", three_vertex_gentle()),
    ]
}

fn random_word(alg: &StringAlgebra, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    if len == 0 {
        let v = rng.gen_range(0..alg.num_vertices());
        return Word::trivial(v, if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    let letters = alg.letters();
    let mut w = vec![*letters.choose(rng).unwrap()];
    while w.len() < len {
        let next: Vec<Letter> = letters
            .iter()
            .copied()
            .filter(|&l| {
                let mut t = w.clone();
                t.push(l);
                is_word_seq(alg, &t)
            })
            .collect();
        match next.choose(rng) {
            Some(&l) => w.push(l),
            None => break,
        }
    }
    Word::Finite(w)
}

fn random_coefficient(field: FieldSpec, rng: &mut ChaCha8Rng) -> BandCoefficient {
    let r = rng.gen_range(1..=2);
    loop {
        let g = if rng.gen_bool(0.6) {
            let a = field.random_nonzero(rng);
            Poly::linear(&a)
        } else {
            let c0 = field.random_nonzero(rng);
            let c1 = field.random(rng);
            Poly::new(field, vec![c0, c1, field.one()])
        };
        if let Ok(c) = BandCoefficient::new(g, r) {
            return c;
        }
    }
}

struct Case {
    alg: StringAlgebra,
    field: FieldSpec,
    strings: Vec<Word>,
    bands: Vec<(Word, BandCoefficient)>,
    seed: u64,
}

impl Case {
    fn build(&self) -> Representation {
        let mut parts: Vec<Representation> = self
            .strings
            .iter()
            .map(|c| string_module(&self.alg, self.field, c).unwrap().rep)
            .collect();
        parts.extend(self.bands.iter().map(|(e, c)| band_module(&self.alg, e, c).unwrap().rep));
        direct_sum(&self.alg, self.field, &parts).unwrap()
    }

    fn recipe(&self) -> DecompositionReport {
        DecompositionReport::from_recipe(&self.alg, &self.strings, &self.bands)
    }
}

fn random_case(alg: &StringAlgebra, field: FieldSpec, rng: &mut ChaCha8Rng, seed: u64) -> Case {
    let periodic: Vec<Word> = enumerate_words(alg, &vec![4; alg.num_vertices()])
        .periodic
        .into_iter()
        .filter(|e| e.letters().len() <= 4)
        .collect();
    let count = rng.gen_range(1..=3);
    let mut strings = Vec::new();
    let mut bands = Vec::new();
    for _ in 0..count {
        if !periodic.is_empty() && rng.gen_bool(0.35) {
            let mut e = periodic.choose(rng).unwrap().clone();
            if rng.gen_bool(0.5) {
                e = e.inverse();
            }
            let e = e.shift(rng.gen_range(0..4));
            bands.push((e, random_coefficient(field, rng)));
        } else {
            strings.push(random_word(alg, rng, 8));
        }
    }
    Case {
        alg: alg.clone(),
        field,
        strings,
        bands,
        seed,
    }
}

/// The same recipe with one summand replaced by a different one.
fn perturbed(case: &Case, rng: &mut ChaCha8Rng) -> Case {
    let original = case.recipe();
    loop {
        let mut strings = case.strings.clone();
        let mut bands = case.bands.clone();
        if !bands.is_empty() && (strings.is_empty() || rng.gen_bool(0.5)) {
            let i = rng.gen_range(0..bands.len());
            bands[i].1 = random_coefficient(case.field, rng);
        } else {
            let i = rng.gen_range(0..strings.len());
            strings[i] = random_word(&case.alg, rng, 8);
        }
        let p = Case {
            alg: case.alg.clone(),
            field: case.field,
            strings,
            bands,
            seed: case.seed,
        };
        if p.recipe() != original {
            return p;
        }
    }
}

/// Criteria 1, 2 and 7 share the random cases.
fn round_trip_cases() -> (Outcome, Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cases = Vec::new();
    let mut seed = 1;
    for (field, per_algebra) in [(FieldSpec::Prime(5), 70), (FieldSpec::Rationals, 20)] {
        for (_, alg) in algebras() {
            for _ in 0..per_algebra {
                cases.push(random_case(&alg, field, &mut rng, seed));
                seed += 1;
            }
        }
    }
    let (mut rt_fail, mut krs_fail, mut cert_fail) = (Vec::new(), Vec::new(), Vec::new());
    let (mut f5, mut q) = (0, 0);
    for (k, case) in cases.iter().enumerate() {
        if k % 25 == 0 {
            eprintln!("  round trip: {k}/{} cases", cases.len());
        }
        match case.field {
            FieldSpec::Prime(_) => f5 += 1,
            FieldSpec::Rationals => q += 1,
        }
        let n = case.build();
        let m = scramble(&n, case.seed).rep;
        let label = || {
            let s: Vec<String> = case.strings.iter().map(|w| w.format(&case.alg)).collect();
            let b: Vec<String> = case
                .bands
                .iter()
                .map(|(e, c)| format!("{} ({})^{}", e.format(&case.alg), c.g, c.r))
                .collect();
            format!("seed {} [{}] [{}]", case.seed, s.join("; "), b.join("; "))
        };
        let report = match decompose(&m) {
            Ok(r) => r,
            Err(e) => {
                rt_fail.push(format!("{}: {e}", label()));
                continue;
            }
        };
        if report != case.recipe() {
            rt_fail.push(label());
        }
        let p = perturbed(case, &mut rng).build();
        match (krs_check(&n, &m), krs_check(&p, &m)) {
            (Ok(true), Ok(false)) => {}
            other => krs_fail.push(format!("{}: {other:?}", label())),
        }
        match certify(&m, &report) {
            Ok(c) if m.is_homomorphism_from(&c.n, &c.theta) && c.theta.iter().all(Matrix::is_invertible) => {}
            Ok(_) => cert_fail.push(format!("{}: certificate does not check", label())),
            Err(e) => cert_fail.push(format!("{}: {e}", label())),
        }
    }
    let verdict = |fails: Vec<String>, what: &str| {
        if fails.is_empty() {
            Ok(format!("{} cases ({f5} over F5, {q} over Q) {what}", cases.len()))
        } else {
            Err(format!("{} of {} failed; first: {}", fails.len(), cases.len(), fails[0]))
        }
    };
    (
        verdict(rt_fail, "reproduce their recipe"),
        verdict(krs_fail, "agree with their scramble and differ from a perturbed sum"),
        verdict(cert_fail, "certified by an invertible homomorphism"),
    )
}

/// Finite words of `W_{v,ε}` up to length `n`, both orientations.
fn finite_words_in(alg: &StringAlgebra, v: usize, eps: i8, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for c in enumerate_words(alg, &vec![n + 1; alg.num_vertices()]).finite {
        for d in [c.clone(), c.inverse()] {
            if d.head(alg) == v && d.sign(alg) == eps && d.len().unwrap() <= n && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

fn evaluation_oracle() -> Outcome {
    let alg = kxy_mod_xy();
    let f = FieldSpec::Prime(5);
    let c0s = enumerate_words(&alg, &[7]).finite;
    let ds: Vec<Word> = [1, -1].iter().flat_map(|&e| finite_words_in(&alg, 0, e, 6)).collect();
    let mut checks = 0;
    for c0 in &c0s {
        let sm = string_module(&alg, f, c0).unwrap();
        let dim = sm.rep.dim(0);
        for d in &ds {
            let eps = d.sign(&alg);
            let (mut le, mut lt) = (Vec::new(), Vec::new());
            for (i, &(_, idx)) in sm.basis.iter().enumerate() {
                let (ci, _) = c0.split_at(&alg, i, eps);
                match compare(&alg, &ci, d).map_err(|e| e.to_string())? {
                    Ordering::Less => {
                        le.push(unit_vector(f, dim, idx));
                        lt.push(unit_vector(f, dim, idx));
                    }
                    Ordering::Equal => le.push(unit_vector(f, dim, idx)),
                    Ordering::Greater => {}
                }
            }
            let p = plus_minus(&sm.rep, d).map_err(|e| e.to_string())?;
            if p.plus != Subspace::span(f, dim, le) || p.minus != Subspace::span(f, dim, lt) {
                return Err(format!("M({}) at {}", c0.format(&alg), d.format(&alg)));
            }
            checks += 1;
        }
    }
    Ok(format!("{} words C₀ × {} words D, {checks} evaluations agree", c0s.len(), ds.len()))
}

fn random_relation(f: FieldSpec, rng: &mut ChaCha8Rng) -> LinearRelation {
    let n = rng.gen_range(1..=6);
    let k = rng.gen_range(0..=2 * n);
    let vecs: Vec<Vector> = (0..k).map(|_| (0..2 * n).map(|_| f.random(rng)).collect()).collect();
    LinearRelation::new(n, n, Subspace::span(f, 2 * n, vecs))
}

/// `{(v, w) : w ∈ flat + C v}` as a subspace of `V ⊕ V`.
fn relation_mod(c: &LinearRelation, flat: &Subspace) -> Subspace {
    let n = c.source();
    c.graph().sum(&flat.embed(n, 2 * n))
}

fn linear_relation_suite() -> Outcome {
    let f = FieldSpec::Prime(5);
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let total = 1200;
    let mut nontrivial = 0;
    for t in 0..total {
        let c = random_relation(f, &mut rng);
        let n = c.source();
        let ci = c.invert();
        let core = c.core();
        let (sharp, flat) = (&core.sharp, &core.flat);
        let fail = |what: &str| Err(format!("relation {t}: {what}"));
        // Four identities.
        if !sharp.is_subspace_of(&c.apply(sharp)) {
            return fail("C♯ ⊄ C C♯");
        }
        if *flat != sharp.intersect(&c.apply(flat)) {
            return fail("C♭ ≠ C♯ ∩ C C♭");
        }
        if !sharp.is_subspace_of(&ci.apply(sharp)) {
            return fail("C♯ ⊄ C⁻¹ C♯");
        }
        if *flat != sharp.intersect(&ci.apply(flat)) {
            return fail("C♭ ≠ C♯ ∩ C⁻¹ C♭");
        }
        // Two inclusions.
        if !core.double_prime.intersect(&core.inv_prime).is_subspace_of(&core.prime) {
            return fail("C″ ∩ (C⁻¹)′ ⊄ C′");
        }
        let mut cn = Subspace::full(f, n);
        for _ in 0..=n + 1 {
            if !core.double_prime.is_subspace_of(&core.prime.sum(&cn)) {
                return fail("C″ ⊄ C′ + C⁻ⁿV");
            }
            cn = ci.apply(&cn);
        }
        // Splitting.
        let sp = split(&c, &core).map_err(|e| format!("relation {t}: {e}"))?;
        let u = Subspace::span(f, n, sp.u.clone());
        if u.dim() != sp.u.len() || !u.intersect(flat).is_zero() || u.sum(flat) != *sharp {
            return fail("C♯ ≠ C♭ ⊕ U");
        }
        if !sp.a.is_invertible() {
            return fail("A is singular");
        }
        for j in 0..sp.u.len() {
            let mut img = vec![f.zero(); n];
            for i in 0..sp.u.len() {
                for (x, y) in img.iter_mut().zip(&sp.u[i]) {
                    *x = &*x + &(sp.a.get(i, j) * y);
                }
            }
            if !c.relates(&sp.u[j], &img) {
                return fail("C on U is not the graph of A");
            }
        }
        // θ from its defining property, then A ~ θ through the change of basis.
        let k = core.reps.len();
        let graph_mod = relation_mod(&c, flat);
        let mut p = Matrix::zeros(f, k, k);
        for j in 0..k {
            let mut w = vec![f.zero(); n];
            for i in 0..k {
                for (x, y) in w.iter_mut().zip(&core.reps[i]) {
                    *x = &*x + &(core.theta.get(i, j) * y);
                }
            }
            let mut pair = core.reps[j].clone();
            pair.extend(w.iter().cloned());
            if !sharp.contains(&w) || !graph_mod.contains(&pair) {
                return fail("θ violates w ∈ C♯ ∩ (C♭ + Cv)");
            }
            let coords = coords_mod(&core.reps, flat, &sp.u[j]).ok_or("U outside C♯")?;
            for (i, x) in coords.into_iter().enumerate() {
                p.set(i, j, x);
            }
        }
        if core.theta.mul(&p) != p.mul(&sp.a) || !p.is_invertible() {
            return fail("A is not similar to θ");
        }
        if k > 0 {
            nontrivial += 1;
        }
    }
    Ok(format!("{total} random relations over F5 ({nontrivial} with C♯ ≠ C♭)"))
}

fn band_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fixtures = 0;
    for field in [FieldSpec::Prime(5), FieldSpec::Rationals] {
        for (_, alg) in algebras() {
            let periodic = enumerate_words(&alg, &vec![4; alg.num_vertices()]).periodic;
            for e in periodic.iter().filter(|e| e.letters().len() <= 4) {
                for rep in [e.clone(), e.inverse().shift(1)] {
                    for _ in 0..3 {
                        let coeff = random_coefficient(field, &mut rng);
                        let m = band_module(&alg, &rep, &coeff).map_err(|x| x.to_string())?.rep;
                        let letters = rep.letters().to_vec();
                        let d = Word::eventually(&alg, vec![], letters.clone()).unwrap();
                        let b = Word::eventually(&alg, vec![], invert_letters(&letters)).unwrap();
                        let v = refined(&m, &b, &d).map_err(|x| x.to_string())?;
                        let core = m.word_relation(&rep).core();
                        let label = || format!("{} with ({})^{}", rep.format(&alg), coeff.g, coeff.r);
                        if v.plus != core.sharp || v.minus != core.flat {
                            return Err(format!("{}: F± differ from C♯/C♭", label()));
                        }
                        let t = v.t.ok_or("no T-action")?;
                        let parts = laurent_decompose(&LaurentModule::new(t).map_err(|x| x.to_string())?)
                            .map_err(|x| x.to_string())?;
                        if parts != vec![(coeff.clone(), 1)] {
                            return Err(format!("{}: recovered {:?}", label(), parts));
                        }
                        let back = refined(&m, &d, &b).map_err(|x| x.to_string())?.t.ok_or("no T-action")?;
                        let parts = laurent_decompose(&LaurentModule::new(back).map_err(|x| x.to_string())?)
                            .map_err(|x| x.to_string())?;
                        if parts != vec![(coeff.inverse(), 1)] {
                            return Err(format!("{}: reversed pair gave {:?}", label(), parts));
                        }
                        fixtures += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{fixtures} band fixtures over F5 and Q"))
}

fn order_and_covering() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut sets, mut pairs, mut covers) = (0, 0, 0);
    for (_, alg) in algebras() {
        let periodic = enumerate_words(&alg, &vec![3; alg.num_vertices()]).periodic;
        for v in 0..alg.num_vertices() {
            for eps in [1, -1] {
                let mut ws = finite_words_in(&alg, v, eps, 5);
                for e in &periodic {
                    for rep in [e.clone(), e.inverse()] {
                        for k in 0..rep.letters().len() as i64 {
                            let r = rep.shift(k);
                            if let Ok(c) = Word::eventually(&alg, vec![], r.letters().to_vec()) {
                                if c.head(&alg) == v && c.sign(&alg) == eps && !ws.contains(&c) {
                                    ws.push(c);
                                }
                            }
                        }
                    }
                }
                ws.truncate(500);
                let mut sorted = ws.clone();
                let mut err = None;
                sorted.sort_by(|a, b| {
                    compare(&alg, a, b).unwrap_or_else(|e| {
                        err = Some(e.to_string());
                        Ordering::Equal
                    })
                });
                if let Some(e) = err {
                    return Err(e);
                }
                for i in 0..sorted.len() {
                    for j in 0..sorted.len() {
                        let o = compare(&alg, &sorted[i], &sorted[j]).map_err(|e| e.to_string())?;
                        if o != i.cmp(&j) {
                            return Err(format!(
                                "{} vs {} compare {:?}",
                                sorted[i].format(&alg),
                                sorted[j].format(&alg),
                                o
                            ));
                        }
                    }
                }
                sets += 1;

                // Order compatibility on a random module.
                let case = random_case(&alg, FieldSpec::Prime(5), &mut rng, 100 + sets as u64);
                let m = scramble(&case.build(), case.seed).rep;
                let short: Vec<&Word> = sorted.iter().filter(|w| w.len().is_none_or(|l| l <= 3)).collect();
                let pm: Vec<_> = short.iter().map(|w| plus_minus(&m, w).unwrap()).collect();
                for i in 0..pm.len() {
                    for j in i + 1..pm.len() {
                        if !pm[i].plus.is_subspace_of(&pm[j].minus) {
                            return Err(format!("C⁺ ⊄ D⁻ for {} < {}", short[i].format(&alg), short[j].format(&alg)));
                        }
                        pairs += 1;
                    }
                }
                if m.dim(v) > 0 {
                    for _ in 0..4 {
                        let x: Vector = loop {
                            let x: Vector = (0..m.dim(v)).map(|_| m.field().random(&mut rng)).collect();
                            if x.iter().any(|s| !s.is_zero()) {
                                break x;
                            }
                        };
                        let c = covering_search(&m, v, &x, eps).map_err(|e| e.to_string())?;
                        let p = plus_minus(&m, &c).map_err(|e| e.to_string())?;
                        if !p.plus.contains(&x) || p.minus.contains(&x) {
                            return Err(format!("covering returned {} without separating", c.format(&alg)));
                        }
                        covers += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{sets} word sets totally ordered, {pairs} pairs with C⁺ ⊆ D⁻, {covers} coverings verified"))
}

fn word_predicates() -> Outcome {
    let alg = kxy_mod_xy();
    let c = Word::parse(&alg, "eventually: y^-1 x x | y^-1").map_err(|e| e.to_string())?;
    let pc = props(&c, None);
    if !pc.finitely_generated {
        return Err("y⁻¹xx(y⁻¹)^∞ should be finitely generated".into());
    }
    let d = Word::parse(&alg, "two-sided: ...(y y x^-1) | (x^-1)...").map_err(|e| e.to_string())?;
    let pd = props(&d, Some(&[1, 1]));
    if !pd.finitely_controlled || pd.finitely_generated {
        return Err(format!("the graded word gave {pd:?}"));
    }
    Ok("y⁻¹xx(y⁻¹)^∞ finitely generated; graded two-sided word finitely controlled, not finitely generated".into())
}

fn main() {
    let start = Instant::now();
    let mut lines: Vec<(usize, &str, Outcome, f64)> = Vec::new();
    let t = Instant::now();
    let (rt, krs, cert) = round_trip_cases();
    let shared = t.elapsed().as_secs_f64();
    lines.push((1, "round-trip decomposition", rt, shared));
    lines.push((2, "Krull-Remak-Schmidt check", krs, 0.0));
    lines.push((7, "certification", cert, 0.0));
    let rest: [(usize, &str, fn() -> Outcome); 5] = [
        (3, "evaluation on string modules", evaluation_oracle),
        (4, "linear relations", linear_relation_suite),
        (5, "refined functors on bands", band_consistency),
        (6, "order and covering", order_and_covering),
        (8, "word predicates", word_predicates),
    ];
    for (n, name, f) in rest {
        let t = Instant::now();
        eprintln!("  running criterion {n}");
        let r = f();
        lines.push((n, name, r, t.elapsed().as_secs_f64()));
    }
    lines.sort_by_key(|l| l.0);
    let mut failed = 0;
    for (n, name, r, secs) in &lines {
        match r {
            Ok(msg) => println!("criterion {n} PASS  {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} FAIL  {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    println!("{} of {} criteria pass in {:.1}s", lines.len() - failed, lines.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
