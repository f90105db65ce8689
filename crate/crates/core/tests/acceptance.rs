//! End-to-end acceptance gate: each test checks one headline criterion and
//! prints a single PASS/FAIL line for it.

use atkin_core::atkin::{
    adjoint_poly_closed, adjoint_poly_recursive, atkin_poly_closed, atkin_poly_recursive,
};
use atkin_core::congruence::{is_prime, congruence_classes_check};
use atkin_core::extremal::{extremal_form, g_form, Route};
use atkin_core::faber::{
    expansion_coeffs, faber_poly, fourier_coeff_theorem_check, h_poly, inverse_series,
    pairing_series, weight_decompose, CoeffKind, FaberRoute, PairingSeries,
};
use atkin_core::functional::{
    hankel_positive_definite, hecke_self_adjoint_check, inner_product, orthogonality_suite,
};
use atkin_core::modforms::{e2, e4, e6, serre_derivative};
use atkin_core::rat::{rat, rint};
use atkin_core::rogers::addition_formula_check;

fn report(idx: usize, label: &str, pass: bool) {
    println!(
        "acceptance {idx}: {} - {label}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion {idx} failed: {label}");
}

#[test]
fn criterion_1_initial_polynomial_table() {
    let cases: [(&str, i64, i64, &str); 10] = [
        ("A", 0, 2, "X - 824"),
        ("A", 2, 1, "X - 720"),
        ("A", 2, 2, "X^2 - 1640*X + 269280"),
        ("A", 6, 1, "X - 1266"),
        ("A", 8, 1, "X - 330"),
        ("B", 0, 1, "X - 1008"),
        ("B", 0, 2, "X^2 - 1832*X + 497952"),
        ("B", 2, 2, "X - 920"),
        ("B", 6, 1, "X - 546"),
        ("B", 8, 1, "X - 1338"),
    ];
    let mut ok = true;
    for (fam, r, n, text) in cases {
        let (rec, closed) = if fam == "A" {
            (atkin_poly_recursive(r, n), atkin_poly_closed(r, n))
        } else {
            (adjoint_poly_recursive(r, n), adjoint_poly_closed(r, n))
        };
        ok &= rec.map(|p| p.to_text() == text).unwrap_or(false);
        ok &= closed.map(|p| p.to_text() == text).unwrap_or(false);
    }
    report(1, "initial polynomial table, both routes", ok);
}

#[test]
fn criterion_2_extremal_series() {
    let g12 = g_form(12, 8).unwrap();
    let g14 = g_form(14, 8).unwrap();
    let mut ok = (3..8).map(|n| g12.coeff(n)).collect::<Vec<_>>()
        == [56, 1002, 9296, 57708, 269040].map(rint)
        && g12.coeff(2) == rint(1)
        && (3..8).map(|n| g14.coeff(n)).collect::<Vec<_>>()
            == [128, 4050, 58880, 525300, 3338496].map(rint)
        && g14.coeff(2) == rint(1);
    let mut w = 2;
    while w <= 50 {
        let base = extremal_form(w, 24, Route::DiffRecursion).unwrap();
        for route in [Route::LinearRecursion, Route::AbPolys, Route::Hypergeometric] {
            ok &= extremal_form(w, 24, route)
                .map(|f| f.eq_to_prec(&base))
                .unwrap_or(false);
        }
        w += 2;
    }
    report(2, "extremal-series values and four-route agreement", ok);
}

#[test]
fn criterion_3_orthogonality() {
    let suite = orthogonality_suite(6);
    let a12 = atkin_poly_recursive(2, 1).unwrap();
    let ok = suite.all_pass() && inner_product(&a12, &a12) == rint(393120);
    report(3, "orthogonality and normalizing constants", ok);
}

#[test]
fn criterion_4_expansion_tables() {
    let om = |n: i64, l: i64| expansion_coeffs(CoeffKind::Omega, 14, n).unwrap().value(l);
    let bo = |l: i64, r: i64| {
        expansion_coeffs(CoeffKind::BigOmega, 2, l)
            .unwrap()
            .value(r)
    };
    let mut ok = om(2, -1) == rint(196560)
        && om(2, 0) == rint(176)
        && om(3, -1) == rint(42981120)
        && om(3, 0) == rint(208302)
        && om(3, 1) == rat(1536, 5)
        && om(4, -1) == rint(41292342000)
        && om(4, 1) == rat(1176672, 5)
        && om(4, 2) == rint(432)
        && bo(2, 0) == rint(152)
        && bo(3, 0) == rint(7446)
        && bo(3, 1) == rat(1416, 5)
        && bo(4, 2) == rint(408)
        && bo(5, 3) == rat(1592, 3)
        && bo(5, 1) == rat(9867424, 5);
    for (ell, k) in [(0i64, 14i64), (-1, 14), (1, 0), (1, 6)] {
        ok &= fourier_coeff_theorem_check(ell, k, 5).all_pass();
    }
    report(4, "expansion-coefficient tables and column series", ok);
}

#[test]
fn criterion_5_congruence_sweep() {
    let mut ok = true;
    for p in (5..=97u64).filter(|&p| is_prime(p)) {
        ok &= congruence_classes_check(p).map(|r| r.all_pass()).unwrap_or(false);
    }
    report(5, "supersingular congruences for primes 5..=97", ok);
}

#[test]
fn criterion_6_pairing_series() {
    let h1 = h_poly(1);
    let h2 = h_poly(2);
    let mut ok = inner_product(&h_poly(1), &h1) == rint(393120)
        && inner_product(&h_poly(2), &h1) == rint(59754240)
        && inner_product(&h_poly(3), &h1) == rint(2927171520)
        && inner_product(&h_poly(4), &h1) == rint(78919626240)
        && inner_product(&h_poly(1), &h2) == rint(59754240)
        && inner_product(&h_poly(2), &h2) == rint(78920412480)
        && inner_product(&h_poly(3), &h2) == rint(20222985968640);
    ok &= pairing_series(PairingSeries::AtkinPairing, 5).all_pass();
    ok &= pairing_series(PairingSeries::PoincarePairingSingle, 4).all_pass();
    ok &= pairing_series(PairingSeries::PairingClosedForm, 5).all_pass();
    ok &= addition_formula_check(9).all_pass();
    report(6, "pairing generating series and addition formula", ok);
}

#[test]
fn criterion_7_faber_polynomials() {
    let (t, q) = inverse_series(6);
    let mut ok = (2..6).map(|n| t.coeff(n)).collect::<Vec<_>>()
        == [-744, 356652, -140361152, 49336682190i64].map(rint)
        && (2..6).map(|n| q.coeff(n)).collect::<Vec<_>>()
            == [744, 750420, 872769632, 1102652742882i64].map(rint);
    let mut k = -12;
    while k <= 26 {
        for n in 0..=6i64 {
            let a = faber_poly(k, n, FaberRoute::GenFunc).unwrap().poly;
            let c = faber_poly(k, n, FaberRoute::Hypergeometric).unwrap().poly;
            ok &= a == c;
        }
        k += 2;
    }
    for &(k, ell) in &[
        (14i64, 2i64),
        (14, 3),
        (0, 2),
        (0, 5),
        (2, 4),
        (-12, 3),
        (26, 2),
        (12, 2),
        (8, 3),
        (6, 2),
    ] {
        let d = weight_decompose(k).unwrap();
        let n = ell + d.m;
        let f = faber_poly(k, n, FaberRoute::GenFunc).unwrap().poly;
        let e = d.epsilon;
        ok &= f.coeff(n as usize - 1) == rint(-744 * ell - 12 * (5 * k - 72 * e));
        let c2 = rint(276768) * rint(ell) * rint(ell)
            + rint(36) * rint(1240 * k - 17856 * e - 13157) * rint(ell)
            + rint(36) * (rint(50 * k * k) - rint(5 * (288 * e + 211) * k) + rint(31104 * e));
        ok &= f.coeff(n as usize - 2) == c2;
    }
    report(7, "inverse series, route agreement, coefficient closed forms", ok);
}

#[test]
fn criterion_8_structural_properties() {
    let mut ok = hecke_self_adjoint_check(4).all_pass() && hankel_positive_definite(6);
    // Leibniz rule for the weight-graded derivative.
    let n = 16;
    let f = e4(n);
    let g = e6(n);
    let lhs = serre_derivative(&f.mul(&g), 10, 1);
    let rhs = serre_derivative(&f, 4, 1)
        .mul(&g)
        .add(&f.mul(&serre_derivative(&g, 6, 1)));
    ok &= lhs.eq_to_prec(&rhs);
    // The classical derivative relations among the three basic series.
    let (s2, s4, s6) = (e2(n), e4(n), e6(n));
    ok &= s2
        .theta()
        .eq_to_prec(&s2.mul(&s2).sub(&s4).scale(&rat(1, 12)));
    ok &= s4
        .theta()
        .eq_to_prec(&s2.mul(&s4).sub(&s6).scale(&rat(1, 3)));
    ok &= s6
        .theta()
        .eq_to_prec(&s2.mul(&s6).sub(&s4.mul(&s4)).scale(&rat(1, 2)));
    report(8, "self-adjointness, positivity, derivative rules", ok);
}
