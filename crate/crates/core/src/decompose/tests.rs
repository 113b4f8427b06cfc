use super::*;
use crate::algebra::{kxy_mod_squares, kxy_mod_xy, three_vertex_gentle};
use crate::exactla::{FieldSpec, Matrix};
use crate::poly::Poly;
use crate::repmod::{band_module, direct_sum, scramble, string_module};

fn f5() -> FieldSpec {
    FieldSpec::Prime(5)
}

fn w(alg: &StringAlgebra, s: &str) -> Word {
    Word::parse(alg, s).unwrap()
}

fn coeff(f: FieldSpec, g: &[i64], r: usize) -> BandCoefficient {
    BandCoefficient::new(Poly::from_i64(f, g), r).unwrap()
}

#[test]
fn laurent_examples() {
    let l = LaurentModule::new(Matrix::from_i64(f5(), &[&[2]])).unwrap();
    assert_eq!(laurent_decompose(&l).unwrap(), vec![(coeff(f5(), &[-2, 1], 1), 1)]);
    let q = FieldSpec::Rationals;
    let l = LaurentModule::new(Matrix::from_i64(q, &[&[1, 1], &[0, 1]])).unwrap();
    assert_eq!(laurent_decompose(&l).unwrap(), vec![(coeff(q, &[-1, 1], 2), 1)]);
    let l = LaurentModule::new(Poly::from_i64(f5(), &[1, 0, 1]).companion()).unwrap();
    assert_eq!(
        laurent_decompose(&l).unwrap(),
        vec![(coeff(f5(), &[-3, 1], 1), 1), (coeff(f5(), &[-2, 1], 1), 1)]
    );
    // diag(J_2(1), 1, 3) over F5.
    let t = Matrix::from_i64(f5(), &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 3]]);
    let got = laurent_decompose(&LaurentModule::new(t).unwrap()).unwrap();
    assert_eq!(
        got,
        vec![(coeff(f5(), &[-3, 1], 1), 1), (coeff(f5(), &[-1, 1], 1), 1), (coeff(f5(), &[-1, 1], 2), 1)]
    );
    assert!(LaurentModule::new(Matrix::from_i64(f5(), &[&[0]])).is_err());
}

#[test]
fn scrambled_string_module() {
    let a = kxy_mod_xy();
    let c = w(&a, "y^-1 x");
    let m = scramble(&string_module(&a, f5(), &c).unwrap().rep, 7).rep;
    let r = decompose(&m).unwrap();
    assert_eq!(r, DecompositionReport::from_recipe(&a, &[c], &[]));
    assert_eq!(r.strings[0].mult, 1);
    assert!(r.bands.is_empty());
    certify(&m, &r).unwrap();
}

#[test]
fn band_fixture() {
    let a = kxy_mod_xy();
    let m = Representation::new(
        a.clone(),
        f5(),
        vec![2],
        vec![Matrix::from_i64(f5(), &[&[0, 1], &[0, 0]]), Matrix::from_i64(f5(), &[&[0, 3], &[0, 0]])],
    )
    .unwrap();
    let r = decompose(&m).unwrap();
    let e = w(&a, "periodic: x y^-1");
    assert_eq!(r, DecompositionReport::from_recipe(&a, &[], &[(e, coeff(f5(), &[-3, 1], 1))]));
    certify(&m, &r).unwrap();
}

#[test]
fn zero_module() {
    let a = three_vertex_gentle();
    let m = Representation::zero(&a, f5());
    let r = decompose(&m).unwrap();
    assert!(r.is_empty());
    let c = certify(&m, &r).unwrap();
    assert!(c.theta.iter().all(|t| t.rows() == 0));
}

#[test]
fn band_report_does_not_depend_on_the_representative() {
    let a = kxy_mod_squares();
    let e = w(&a, "periodic: x y x y^-1");
    let c = coeff(f5(), &[2, 1, 1], 1);
    let base = decompose(&band_module(&a, &e, &c).unwrap().rep).unwrap();
    let letters = e.letters().to_vec();
    for k in 0..letters.len() as i64 {
        for (word, cf) in [(e.shift(k), c.clone()), (e.inverse().shift(k), c.inverse())] {
            let r = decompose(&band_module(&a, &word, &cf).unwrap().rep).unwrap();
            assert_eq!(r, base);
            assert_eq!(r, DecompositionReport::from_recipe(&a, &[], &[(word, cf)]));
        }
    }
}

#[test]
fn mixed_sums_round_trip_and_certify() {
    let q = FieldSpec::Rationals;
    let a = three_vertex_gentle();
    let strings = vec![w(&a, "b a"), w(&a, "c^-1"), w(&a, "b a"), w(&a, "1_2_+")];
    let bands = vec![(w(&a, "periodic: c b a"), coeff(q, &[-2, 1], 2)), (w(&a, "periodic: c b a"), coeff(q, &[3, 0, 1], 1))];
    let mut parts: Vec<Representation> = strings.iter().map(|c| string_module(&a, q, c).unwrap().rep).collect();
    parts.extend(bands.iter().map(|(e, c)| band_module(&a, e, c).unwrap().rep));
    let n = direct_sum(&a, q, &parts).unwrap();
    let m = scramble(&n, 11).rep;
    let r = decompose(&m).unwrap();
    assert_eq!(r, DecompositionReport::from_recipe(&a, &strings, &bands));
    let cert = certify(&m, &r).unwrap();
    assert!(m.is_homomorphism_from(&cert.n, &cert.theta));
    assert!(krs_check(&n, &m).unwrap());
}

#[test]
fn additivity_and_merge() {
    let a = kxy_mod_xy();
    let m1 = string_module(&a, f5(), &w(&a, "x x y^-1")).unwrap().rep;
    let m2 = band_module(&a, &w(&a, "periodic: x y^-1"), &coeff(f5(), &[-1, 1], 2)).unwrap().rep;
    let r1 = decompose(&m1).unwrap();
    let r2 = decompose(&m2).unwrap();
    let sum = direct_sum(&a, f5(), &[m1, m2]).unwrap();
    assert_eq!(decompose(&sum).unwrap(), r1.merge(&a, &r2));
}

#[test]
fn krs_examples() {
    let a = kxy_mod_xy();
    let mx = string_module(&a, f5(), &w(&a, "x")).unwrap().rep;
    let my = string_module(&a, f5(), &w(&a, "y")).unwrap().rep;
    assert!(!krs_check(&mx, &my).unwrap());
    assert!(krs_check(&mx, &scramble(&mx, 4).rep).unwrap());
    let double = direct_sum(&a, f5(), &[mx.clone(), mx.clone()]).unwrap();
    assert!(!krs_check(&double, &mx).unwrap());
}

#[test]
fn tampered_report_is_rejected() {
    let a = kxy_mod_xy();
    let m = string_module(&a, f5(), &w(&a, "x y^-1")).unwrap().rep;
    let mut r = decompose(&m).unwrap();
    r.strings[0].mult += 1;
    let r = DecompositionReport::new(&a, r.strings, r.bands);
    assert!(matches!(certify(&m, &r), Err(crate::error::Error::Domain(_))));
}

#[test]
fn report_json_round_trip() {
    let a = kxy_mod_xy();
    let r = DecompositionReport::from_recipe(
        &a,
        &[w(&a, "x y^-1"), w(&a, "1_v_-")],
        &[(w(&a, "periodic: x y^-1"), coeff(f5(), &[2, 0, 1], 2))],
    );
    let text = r.to_json(&a);
    assert_eq!(DecompositionReport::from_json(&a, f5(), &text).unwrap(), r);
    assert!(text.contains("\"audit\""));
}
