//! Normalized extremal quasimodular forms of depth 1: four construction
//! routes (differential recursion, linear recursion, polynomial expressions
//! in j, hypergeometric), normalizing factors, dimension formulas, the
//! differential-operator identities behind the recursions, and depth-1
//! decomposition f = E2*f1 + f0.

use crate::atkin::{adjoint_poly_recursive, atkin_poly_recursive, resolve_alias};
use crate::error::{Error, Result};
use crate::hypergeom::{pfq_series, HypParams};
use crate::linalg;
use crate::modforms::{delta, e2, e4, e6, j_series, serre_derivative};
use crate::poly::Poly;
use crate::rat::{gen_binomial, rat, rint, Rat};
use crate::report::CheckReport;
use crate::series::{QSeries, Var};
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// dim M_k for level one.
pub fn dim_modular(k: i64) -> i64 {
    if k < 0 || k % 2 != 0 {
        return 0;
    }
    if k % 12 == 2 {
        k / 12
    } else {
        k / 12 + 1
    }
}

/// dim QM_w^(1) = dim M_w + dim M_{w-2}.
pub fn dim_quasimodular_depth1(w: i64) -> i64 {
    dim_modular(w) + dim_modular(w - 2)
}

/// Normalizing factors N_{m,r} with the index aliases of the extended
/// classes; N_{0,0} = N_{0,2} = 1 by convention.
pub fn normalizing_factor(m: i64, r: i64) -> Result<Rat> {
    let (r, m) = resolve_alias(r, m)?;
    let n0 = |m: i64| {
        rint(24 * m)
            * gen_binomial(&rint(6 * m), 2 * m as u32)
            * gen_binomial(&rint(12 * m), 6 * m as u32)
    };
    let n6 = |m: i64| {
        rint(12 * (2 * m + 1))
            * gen_binomial(&rint(6 * m + 3), (2 * m + 1) as u32)
            * gen_binomial(&rint(12 * m + 6), (6 * m + 3) as u32)
    };
    Ok(match r {
        0 | 2 if m == 0 => Rat::one(),
        0 => n0(m),
        2 => rat(12 * m + 1, 12 * m - 1) * n0(m),
        6 => n6(m),
        8 => rat(12 * m + 7, 12 * m + 5) * n6(m),
        _ => unreachable!(),
    })
}

/// K_w^up = E4 * del_{w-1} - ((w+1)/12) E6.
pub fn kup(f: &QSeries, w: i64) -> QSeries {
    let prec = f.prec();
    e4(prec)
        .mul(&serre_derivative(f, w - 1, 1))
        .sub(&e6(prec).mul(f).scale(&rat(w + 1, 12)))
}

/// K_{w,2}^up = E4 * del_{w+1} - ((w-1)/12) E6.
pub fn kup2(f: &QSeries, w: i64) -> QSeries {
    let prec = f.prec();
    e4(prec)
        .mul(&serre_derivative(f, w + 1, 1))
        .sub(&e6(prec).mul(f).scale(&rat(w - 1, 12)))
}

/// L_w = del_{w-1}^2 - ((w^2-1)/144) E4.
pub fn l_operator(f: &QSeries, w: i64) -> QSeries {
    let prec = f.prec();
    serre_derivative(f, w - 1, 2).sub(&e4(prec).mul(f).scale(&rat(w * w - 1, 144)))
}

/// L_{w,2} = E4 del_{w+1}^2 + (1/3) E6 del_{w+1} - ((w^2-1)/144) E4^2.
pub fn l_operator2(f: &QSeries, w: i64) -> QSeries {
    let prec = f.prec();
    let e4s = e4(prec);
    e4s.mul(&serre_derivative(f, w + 1, 2))
        .add(&e6(prec).mul(&serre_derivative(f, w + 1, 1)).scale(&rat(1, 3)))
        .sub(&e4s.mul(&e4s).mul(f).scale(&rat(w * w - 1, 144)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    DiffRecursion,
    LinearRecursion,
    AbPolys,
    Hypergeometric,
}

fn check_weight(w: i64) -> Result<()> {
    if w < 0 || w % 2 != 0 {
        return Err(Error::UnsupportedWeight(w));
    }
    Ok(())
}

fn g_cache() -> &'static Mutex<HashMap<(i64, i64), QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), QSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn by_diff_recursion(w: i64, prec: i64) -> QSeries {
    if w == 0 {
        return QSeries::one(Var::Q, prec);
    }
    if let Some(g) = g_cache().lock().unwrap().get(&(w, prec)) {
        return g.clone();
    }
    let g = match w % 6 {
        2 => serre_derivative(&by_diff_recursion(w - 2, prec), w - 3, 1)
            .scale(&rat(12, w - 1)),
        4 => e4(prec).mul(&by_diff_recursion(w - 4, prec)),
        _ => kup(&by_diff_recursion(w - 6, prec), w - 6)
            .scale(&(rint(w) / rint(72 * (w - 5) * (w - 1)))),
    };
    g_cache()
        .lock()
        .unwrap()
        .entry((w, prec))
        .or_insert_with(|| g.clone());
    g
}

fn by_linear_recursion(w: i64, prec: i64) -> QSeries {
    match w % 6 {
        4 => return e4(prec).mul(&by_linear_recursion(w - 4, prec)),
        2 => {
            // seeds G2 = E2, G8 = (E4^2 - E2 E6)/1008; step G_{v+14} from
            // (G_{v+8}, G_{v+2}) with v running over multiples of 6
            if w == 2 {
                return e2(prec);
            }
            let (e2s, e4s, e6s) = (e2(prec), e4(prec), e6(prec));
            let mut prev = e2s.clone();
            let mut cur = e4s.mul(&e4s).sub(&e2s.mul(&e6s)).scale(&rat(1, 1008));
            if w == 8 {
                return cur;
            }
            let d = delta(prec);
            let mut v = 0;
            loop {
                let c = -rat((v + 6) * (v + 12), 432 * (v + 5) * (v + 13));
                let next = e6s.mul(&cur).sub(&d.mul(&prev)).scale(&c);
                prev = cur;
                cur = next;
                v += 6;
                if v + 8 == w {
                    return cur;
                }
            }
        }
        _ => {
            if w == 0 {
                return QSeries::one(Var::Q, prec);
            }
            let (e2s, e4s, e6s) = (e2(prec), e4(prec), e6(prec));
            let mut prev = QSeries::one(Var::Q, prec);
            let mut cur = e2s.mul(&e4s).sub(&e6s).scale(&rat(1, 720));
            if w == 6 {
                return cur;
            }
            let d = delta(prec);
            let mut v = 0;
            loop {
                let c = -rat((v + 6) * (v + 12), 432 * (v + 7) * (v + 11));
                let next = e6s.mul(&cur).sub(&d.mul(&prev)).scale(&c);
                prev = cur;
                cur = next;
                v += 6;
                if v + 6 == w {
                    return cur;
                }
            }
        }
    }
}

/// Evaluate a polynomial at the j-expansion with enough guard terms that the
/// result is still good to `prec` after multiplication by Delta powers.
fn poly_at_j(p: &Poly, prec: i64) -> QSeries {
    let deg = p.degree().map_or(0, |d| d as i64);
    let j = j_series((prec + deg + 2).max(2));
    p.eval_series(&j)
}

fn by_ab_polys(w: i64, prec: i64) -> Result<QSeries> {
    let (e2s, e4s, e6s) = (e2(prec), e4(prec), e6(prec));
    let d = delta(prec);
    let g = match w % 12 {
        4 | 10 => e4s.mul(&by_ab_polys(w - 4, prec)?),
        0 => {
            let m = w / 12;
            if m == 0 {
                return Ok(QSeries::one(Var::Q, prec));
            }
            let a = poly_at_j(&atkin_poly_recursive(0, m)?, prec);
            let b = poly_at_j(&adjoint_poly_recursive(0, m)?, prec);
            let t1 = e2s.mul(&e4s).mul(&e6s).mul(&d.pow(m - 1)?).mul(&a).neg();
            let t2 = d.pow(m)?.mul(&b);
            t1.add(&t2)
                .scale(&normalizing_factor(m, 0)?.recip())
        }
        2 => {
            let m = (w - 2) / 12;
            if m == 0 {
                return Ok(e2s);
            }
            let a = poly_at_j(&atkin_poly_recursive(2, m)?, prec);
            let b = poly_at_j(&adjoint_poly_recursive(2, m)?, prec);
            let t1 = e2s.mul(&d.pow(m)?).mul(&a);
            let t2 = e4s.mul(&e4s).mul(&e6s).mul(&d.pow(m - 1)?).mul(&b);
            t1.sub(&t2)
                .scale(&normalizing_factor(m, 2)?.recip())
        }
        6 => {
            let m = (w - 6) / 12;
            let a = poly_at_j(&atkin_poly_recursive(6, m)?, prec);
            let b = poly_at_j(&adjoint_poly_recursive(6, m)?, prec);
            let dm = d.pow(m)?;
            let t1 = e2s.mul(&e4s).mul(&dm).mul(&a);
            let t2 = e6s.mul(&dm).mul(&b);
            t1.sub(&t2)
                .scale(&normalizing_factor(m, 6)?.recip())
        }
        8 => {
            let m = (w - 8) / 12;
            let a = poly_at_j(&atkin_poly_recursive(8, m)?, prec);
            let b = poly_at_j(&adjoint_poly_recursive(8, m)?, prec);
            let dm = d.pow(m)?;
            let t1 = e2s.mul(&e6s).mul(&dm).mul(&a).neg();
            let t2 = e4s.mul(&e4s).mul(&dm).mul(&b);
            t1.add(&t2)
                .scale(&normalizing_factor(m, 8)?.recip())
        }
        _ => unreachable!(),
    };
    Ok(if g.prec() > prec { g.truncate(prec) } else { g })
}

/// 1/j as a power series in q (valuation 1).
pub fn t_series(prec: i64) -> QSeries {
    j_series(prec).inverse().unwrap().truncate(prec)
}

fn by_hypergeometric(w: i64, prec: i64) -> Result<QSeries> {
    if w % 6 == 4 {
        return Ok(e4(prec).mul(&by_hypergeometric(w - 4, prec)?));
    }
    let n = if w % 6 == 0 { w / 6 } else { (w - 2) / 6 };
    let (a, b, f1_exp) = if w % 6 == 0 {
        (rat(6 * n + 1, 12), rat(6 * n + 5, 12), 6 * n - 1)
    } else {
        (rat(6 * n - 1, 12), rat(6 * n + 7, 12), 6 * n + 1)
    };
    let t = t_series(prec + 2);
    let z = t.scale(&rint(1728));
    let f1 = pfq_series(
        &HypParams::f21(rat(1, 12), rat(5, 12), Rat::one())?,
        prec,
    );
    let f2 = pfq_series(&HypParams::f21(a, b, rint(n + 1))?, prec);
    let f1q = f1.compose(&z)?;
    let f2q = f2.compose(&z)?;
    let g = t.pow(n)?.mul(&f1q.pow(f1_exp)?).mul(&f2q);
    Ok(if g.prec() > prec { g.truncate(prec) } else { g })
}

/// The normalized extremal quasimodular form of weight w and depth 1,
/// expanded to the requested precision, by the chosen route.
pub fn extremal_form(w: i64, prec: i64, route: Route) -> Result<QSeries> {
    check_weight(w)?;
    assert!(prec >= 1);
    match route {
        Route::DiffRecursion => Ok(by_diff_recursion(w, prec)),
        Route::LinearRecursion => Ok(by_linear_recursion(w, prec)),
        Route::AbPolys => by_ab_polys(w, prec),
        Route::Hypergeometric => {
            if w == 0 {
                return Ok(QSeries::one(Var::Q, prec));
            }
            by_hypergeometric(w, prec)
        }
    }
}

/// Default route.
pub fn g_form(w: i64, prec: i64) -> Result<QSeries> {
    extremal_form(w, prec, Route::DiffRecursion)
}

/// Monomial basis E4^a E6^b Delta^c of M_k, ordered by increasing Delta power.
pub fn modular_basis(k: i64, prec: i64) -> Vec<QSeries> {
    let mut basis = Vec::new();
    if k < 0 || k % 2 != 0 {
        return basis;
    }
    for c in 0..=(k / 12) {
        let rem = k - 12 * c;
        let b = if rem % 4 == 0 { 0 } else { 1 };
        let rem4 = rem - 6 * b;
        if rem4 < 0 || rem4 % 4 != 0 {
            continue;
        }
        let a = rem4 / 4;
        let s = e4(prec)
            .pow(a)
            .unwrap()
            .mul(&e6(prec).pow(b).unwrap())
            .mul(&delta(prec).pow(c).unwrap());
        basis.push(s.truncate(prec));
    }
    debug_assert_eq!(basis.len() as i64, dim_modular(k));
    basis
}

/// Depth-1 decomposition f = E2*f1 + f0 with f1 in M_{w-2}, f0 in M_w,
/// solved exactly on q-coefficients.
pub fn decompose_depth1(f: &QSeries, w: i64) -> Result<(QSeries, QSeries)> {
    let prec = f.prec();
    let b1: Vec<QSeries> = modular_basis(w - 2, prec)
        .into_iter()
        .map(|s| e2(prec).mul(&s))
        .collect();
    let b0 = modular_basis(w, prec);
    let dim = b1.len() + b0.len();
    if dim == 0 || (prec as usize) < dim {
        return Err(Error::InsufficientPrecision(format!(
            "depth-1 decomposition in weight {w} needs at least {dim} coefficients"
        )));
    }
    let cols: Vec<&QSeries> = b1.iter().chain(b0.iter()).collect();
    let a: Vec<Vec<Rat>> = (0..dim as i64)
        .map(|n| cols.iter().map(|s| s.coeff(n)).collect())
        .collect();
    let rhs: Vec<Rat> = (0..dim as i64).map(|n| f.coeff(n)).collect();
    let x = linalg::solve(&a, &rhs).ok_or_else(|| {
        Error::DomainError(format!("singular depth-1 system in weight {w}"))
    })?;
    let mut f1 = QSeries::zero(Var::Q, prec);
    let mut f0 = QSeries::zero(Var::Q, prec);
    for (i, s) in modular_basis(w - 2, prec).iter().enumerate() {
        f1 = f1.add(&s.scale(&x[i]));
    }
    for (i, s) in b0.iter().enumerate() {
        f0 = f0.add(&s.scale(&x[b1.len() + i]));
    }
    // Residual must vanish on the whole stored window, not just the rows used.
    let recon = e2(prec).mul(&f1).add(&f0);
    if !recon.eq_to_prec(f) {
        return Err(Error::DomainError(format!(
            "series is not in QM_{w} of depth 1"
        )));
    }
    Ok((f1, f0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorIdentity {
    LwAnnihilates,
    Kupup,
    PartialKup,
    Lw2,
}

/// Verifies the differential-operator identities behind the recursions,
/// applied to G_w and (for the pure operator identities) to fixed
/// quasimodular test forms.
pub fn operator_identity_check(
    which: OperatorIdentity,
    w_list: &[i64],
    prec: i64,
) -> CheckReport {
    let mut report = CheckReport::new();
    let test_forms = |prec: i64| -> Vec<(String, QSeries)> {
        vec![
            ("E2*E4".into(), e2(prec).mul(&e4(prec))),
            ("Delta".into(), delta(prec)),
            (
                "E2^2*E6+Delta".into(),
                e2(prec).mul(&e2(prec)).mul(&e6(prec)).add(&delta(prec)),
            ),
        ]
    };
    for &w in w_list {
        match which {
            OperatorIdentity::LwAnnihilates => {
                let g = by_diff_recursion(w, prec);
                report.add(
                    format!("operator/L_w-annihilates/w={w}"),
                    w % 6 == 0 && l_operator(&g, w).is_zero_to_prec(),
                );
            }
            OperatorIdentity::Kupup => {
                let mut forms = test_forms(prec);
                forms.push(("G_w".into(), by_diff_recursion(w, prec)));
                for (name, f) in forms {
                    let lhs = kup(&kup(&f, w), w + 6);
                    let rhs = e4(prec)
                        .mul(&e4(prec))
                        .mul(&l_operator(&f, w))
                        .sub(&e6(prec).mul(&kup(&f, w)).scale(&rat(w + 6, 6)))
                        .add(&delta(prec).mul(&f).scale(&rint(12 * (w + 1) * (w + 5))));
                    report.add(
                        format!("operator/Kup-composition/w={w}/f={name}"),
                        lhs.eq_to_prec(&rhs),
                    );
                }
            }
            OperatorIdentity::PartialKup => {
                let mut forms = test_forms(prec);
                forms.push(("G_w".into(), by_diff_recursion(w, prec)));
                for (name, f) in forms {
                    let lhs = serre_derivative(&kup(&f, w), w + 5, 1);
                    let rhs = e4(prec)
                        .mul(&l_operator(&f, w))
                        .scale(&rat(-6, w - 1))
                        .add(
                            &kup2(&serre_derivative(&f, w - 1, 1), w)
                                .scale(&rat(w + 5, w - 1)),
                        );
                    report.add(
                        format!("operator/del-after-Kup/w={w}/f={name}"),
                        lhs.eq_to_prec(&rhs),
                    );
                }
            }
            OperatorIdentity::Lw2 => {
                let g2 = by_diff_recursion(w + 2, prec);
                report.add(
                    format!("operator/L_w2-annihilates/w={w}"),
                    w % 6 == 0 && l_operator2(&g2, w).is_zero_to_prec(),
                );
            }
        }
    }
    report
}

/// The two eliminated linear recursions stepping by 12 in weight:
/// G_{w+24} and G_{w+26} from (G_{w+12}, G_w) and (G_{w+14}, G_{w+2}).
pub fn long_recursion_check(w_list: &[i64], prec: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let e4c = e4(prec).pow(3).unwrap();
    let d = delta(prec);
    let d2 = d.mul(&d);
    for &w in w_list {
        if w % 6 != 0 {
            continue;
        }
        let front = rat(
            (w + 12) * (w + 18) * (w + 18) * (w + 24),
            256 * 729 * (w + 13) * (w + 17) * (w + 19) * (w + 23),
        );
        let mid = e4c.sub(&d.scale(&rat(864 * (w * w + 24 * w + 103), (w + 6) * (w + 18))));
        let rhs = mid
            .mul(&by_diff_recursion(w + 12, prec))
            .sub(&d2.mul(&by_diff_recursion(w, prec)))
            .scale(&front);
        report.add(
            format!("long-recursion/weight-step-24/w={w}"),
            by_diff_recursion(w + 24, prec).eq_to_prec(&rhs),
        );

        let front = rat(
            (w + 12) * (w + 18) * (w + 18) * (w + 24),
            256 * 729 * (w + 11) * (w + 17) * (w + 19) * (w + 25),
        );
        let mid = e4c.sub(&d.scale(&rat(864 * (w * w + 24 * w + 115), (w + 6) * (w + 18))));
        let rhs = mid
            .mul(&by_diff_recursion(w + 14, prec))
            .sub(&d2.mul(&by_diff_recursion(w + 2, prec)))
            .scale(&front);
        report.add(
            format!("long-recursion/weight-step-26/w={w}"),
            by_diff_recursion(w + 26, prec).eq_to_prec(&rhs),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: i64 = 24;

    #[test]
    fn normalizing_factor_values() {
        assert_eq!(normalizing_factor(0, 0).unwrap(), rint(1));
        assert_eq!(normalizing_factor(0, 2).unwrap(), rint(1));
        assert_eq!(normalizing_factor(1, 0).unwrap(), rint(332640));
        assert_eq!(normalizing_factor(1, 2).unwrap(), rint(393120));
        assert_eq!(normalizing_factor(0, 6).unwrap(), rint(720));
        assert_eq!(normalizing_factor(0, 8).unwrap(), rint(1008));
        // The half-integer shift alias: N_{m,14} = N_{m+1,2}.
        assert_eq!(
            normalizing_factor(0, 14).unwrap(),
            normalizing_factor(1, 2).unwrap()
        );
        // Integrality of N_{m,2} and N_{m,8}.
        for m in 0..6 {
            assert!(normalizing_factor(m, 2).unwrap().denom().is_one());
            assert!(normalizing_factor(m, 8).unwrap().denom().is_one());
        }
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(dim_modular(0), 1);
        assert_eq!(dim_modular(2), 0);
        assert_eq!(dim_modular(4), 1);
        assert_eq!(dim_modular(12), 2);
        assert_eq!(dim_modular(14), 1);
        assert_eq!(dim_modular(26), 2);
        assert_eq!(dim_quasimodular_depth1(12), 3);
        assert_eq!(dim_quasimodular_depth1(14), 3);
    }

    #[test]
    fn known_expansions() {
        let g12 = g_form(12, 8).unwrap();
        let expect = [0, 0, 1, 56, 1002, 9296, 57708, 269040];
        for (n, c) in expect.iter().enumerate() {
            assert_eq!(g12.coeff(n as i64), rint(*c), "G12 q^{n}");
        }
        let g14 = g_form(14, 8).unwrap();
        let expect = [0, 0, 1, 128, 4050, 58880, 525300, 3338496];
        for (n, c) in expect.iter().enumerate() {
            assert_eq!(g14.coeff(n as i64), rint(*c), "G14 q^{n}");
        }
        // G6 = sum n sigma_3(n) q^n
        let g6 = g_form(6, 8).unwrap();
        assert_eq!(g6.coeff(1), rint(1));
        assert_eq!(g6.coeff(2), rint(18));
        assert_eq!(g6.coeff(3), rint(84));
        // G2 = E2
        assert!(g_form(2, N).unwrap().eq_to_prec(&e2(N)));
        assert!(matches!(g_form(7, 8), Err(Error::UnsupportedWeight(7))));
    }

    #[test]
    fn route_agreement() {
        let mut w = 2;
        while w <= 50 {
            let base = extremal_form(w, N, Route::DiffRecursion).unwrap();
            for route in [Route::LinearRecursion, Route::AbPolys, Route::Hypergeometric] {
                let other = extremal_form(w, N, route).unwrap();
                assert!(
                    base.eq_to_prec(&other),
                    "route {route:?} disagrees at weight {w}"
                );
            }
            w += 2;
        }
    }

    #[test]
    fn extremality_and_integrality() {
        let mut w = 2;
        while w <= 50 {
            let g = g_form(w, N).unwrap();
            let m = dim_quasimodular_depth1(w);
            assert_eq!(g.true_valuation(), Some(m - 1), "valuation at weight {w}");
            assert_eq!(g.coeff(m - 1), rint(1), "leading coefficient at weight {w}");
            w += 2;
        }
        for w in [2, 6, 8, 10, 12, 14] {
            assert!(g_form(w, N).unwrap().is_integral(), "weight {w}");
        }
    }

    #[test]
    fn operator_identities() {
        let weights = [6, 12, 18, 24];
        for which in [
            OperatorIdentity::LwAnnihilates,
            OperatorIdentity::Kupup,
            OperatorIdentity::PartialKup,
            OperatorIdentity::Lw2,
        ] {
            let report = operator_identity_check(which, &weights, 20);
            assert!(report.all_pass(), "{report}");
        }
    }

    #[test]
    fn long_recursions() {
        let report = long_recursion_check(&[6, 12, 18, 24], 20);
        assert!(!report.is_empty());
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn depth1_decomposition() {
        // G14 = (E2(E4^3 - 720 Delta) - E4^2 E6)/393120
        let g14 = g_form(14, N).unwrap();
        let (f1, f0) = decompose_depth1(&g14, 14).unwrap();
        let expect_f1 = e4(N)
            .pow(3)
            .unwrap()
            .sub(&delta(N).scale(&rint(720)))
            .scale(&rint(393120).recip())
            .truncate(N);
        assert!(f1.eq_to_prec(&expect_f1));
        let expect_f0 = e4(N)
            .mul(&e4(N))
            .mul(&e6(N))
            .scale(&rat(-1, 393120));
        assert!(f0.eq_to_prec(&expect_f0));
        // Non-quasimodular input is rejected.
        let junk = QSeries::from_coeffs(Var::Q, 0, (0..N).map(|n| rint(n * n + 1)).collect());
        assert!(decompose_depth1(&junk, 14).is_err());
    }
}
