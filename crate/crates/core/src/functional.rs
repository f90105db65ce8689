//! The linear functional behind the Atkin inner product: integer moments of
//! powers of j, the inner product itself (computed by two independent
//! routes), the Stieltjes moment-generating function, the adjoint functional,
//! image formulas for the adjoint polynomials, and orthogonality relations.

use crate::atkin::{atkin_poly_recursive, adjoint_poly_recursive, resolve_alias};
use crate::error::{Error, Result};
use crate::extremal::{g_form, normalizing_factor};
use crate::hypergeom::{pfq_series, HypParams};
use crate::linalg;
use crate::modforms::{delta, e2, e4, e6, hecke_weight_k, j_series, recognize_poly_in_j};
use crate::poly::Poly;
use crate::rat::{rat, rint, Rat};
use crate::report::CheckReport;
use crate::series::{QSeries, Var};
use num_traits::{One, Signed, Zero};
use std::sync::{Mutex, OnceLock};

fn moment_cache() -> &'static Mutex<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// The first `count` moments: the constant terms of j^n E2 as Laurent series.
pub fn moments(count: usize) -> Vec<Rat> {
    {
        let cache = moment_cache().lock().unwrap();
        if cache.len() >= count {
            return cache[..count].to_vec();
        }
    }
    let prec = count as i64 + 2;
    let j = j_series(prec);
    let mut cur = e2(prec);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(cur.coeff(0));
        cur = cur.mul(&j);
    }
    let mut cache = moment_cache().lock().unwrap();
    if cache.len() < count {
        // Write-once: an existing prefix is never rewritten.
        debug_assert!(cache.iter().zip(&out).all(|(a, b)| a == b));
        *cache = out.clone();
    }
    out
}

/// The n-th moment, with an explicit precision budget for the q-expansions.
pub fn moment(n: usize, prec_budget: i64) -> Result<Rat> {
    if prec_budget < n as i64 + 2 {
        return Err(Error::InsufficientPrecision(format!(
            "moment {n} needs at least {} q-terms",
            n + 2
        )));
    }
    Ok(moments(n + 1)[n].clone())
}

/// Apply the functional to a polynomial in j.
pub fn apply_functional(p: &Poly) -> Rat {
    let ms = moments(p.coeffs().len());
    p.coeffs()
        .iter()
        .zip(&ms)
        .map(|(c, m)| c * m)
        .fold(Rat::zero(), |acc, x| acc + x)
}

/// The inner product of two polynomials in j. Computed both through the
/// moment cache and as a direct residue; disagreement is a bug, not a data
/// condition, so it panics.
pub fn inner_product(f: &Poly, g: &Poly) -> Rat {
    let via_moments = apply_functional(&f.mul(g));
    // Direct residue: constant term of f(j) g(j) E2.
    let d = f.degree().unwrap_or(0) as i64 + g.degree().unwrap_or(0) as i64;
    let prec = d + 3;
    let j = j_series(prec);
    let direct = f
        .eval_series(&j)
        .normalized()
        .mul(&g.eval_series(&j).normalized())
        .mul(&e2(prec))
        .coeff(0);
    assert_eq!(via_moments, direct, "moment route disagrees with residue route");
    via_moments
}

/// 1/j(p) as a power series in the second nome p.
fn t_of_p(prec: i64) -> QSeries {
    j_series(prec)
        .inverse()
        .unwrap()
        .truncate(prec)
        .with_var(Var::P)
}

/// The moment-generating series sum_n L(j^n) t(p)^{n+1} summed through the
/// exact rational function E2 E4 / (j E6) of the Eisenstein expansions at p.
pub fn stieltjes_series(prec: i64) -> QSeries {
    let num = e2(prec).mul(&e4(prec));
    let den = j_series(prec).mul(&e6(prec));
    num.div(&den).unwrap().with_var(Var::P).truncate(prec)
}

/// Expand sum_n L(j^n R(j)) p-series with coefficient at p^{n+1}; this is the
/// image of R(j)/(j(p)-j) under the functional, as a power series in p
/// composed with t(p) = 1/j(p).
fn functional_over_pole(r: &Poly, prec_p: i64) -> QSeries {
    let mut coeffs = vec![Rat::zero(); prec_p as usize];
    let mut shifted = r.clone();
    for n in 1..prec_p {
        coeffs[n as usize] = apply_functional(&shifted);
        shifted = shifted.mul(&Poly::x());
    }
    let series_in_t = QSeries::from_coeffs(Var::P, 0, coeffs);
    // Substitute the formal variable by t(p).
    series_in_t.compose(&t_of_p(prec_p + 1)).unwrap().truncate(prec_p)
}

/// Reads off the coefficients c_n from a series known to equal
/// sum c_n j(p)^{-n-1}, by repeatedly multiplying by j(p) and peeling the
/// constant term.
pub fn coefficients_in_inverse_j(s: &QSeries, count: usize) -> Result<Vec<Rat>> {
    let prec = s.prec();
    if (prec as usize) < count + 2 {
        return Err(Error::InsufficientPrecision(format!(
            "need {} p-terms to extract {count} coefficients",
            count + 2
        )));
    }
    let j = j_series(prec).with_var(s.var());
    let mut cur = s.normalized();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        cur = cur.mul(&j);
        let c = cur.coeff(0);
        cur = cur
            .sub(&QSeries::constant(s.var(), c.clone(), cur.prec()))
            .normalized();
        out.push(c);
    }
    Ok(out)
}

/// The adjoint functional's moments, from G14(p) / (E2(p) Delta(p)).
pub fn lstar_moments(count: usize) -> Result<Vec<Rat>> {
    let prec = count as i64 + 4;
    let g14 = g_form(14, prec)?.normalized();
    let s = g14
        .div(&e2(prec).mul(&delta(prec)).normalized())?
        .with_var(Var::P);
    coefficients_in_inverse_j(&s, count)
}

/// A single adjoint-functional moment with an explicit precision budget.
pub fn lstar_moment(n: usize, prec_budget: i64) -> Result<Rat> {
    if prec_budget < n as i64 + 4 {
        return Err(Error::InsufficientPrecision(format!(
            "adjoint moment {n} needs at least {} p-terms",
            n + 4
        )));
    }
    Ok(lstar_moments(n + 1)?[n].clone())
}

pub fn apply_lstar(p: &Poly) -> Result<Rat> {
    let ms = lstar_moments(p.coeffs().len())?;
    Ok(p
        .coeffs()
        .iter()
        .zip(&ms)
        .map(|(c, m)| c * m)
        .fold(Rat::zero(), |acc, x| acc + x))
}

/// Ratio of hypergeometric truncations composed with 1728/j(p), optionally
/// shifted by a power of 1/j(p): num/(j(p)^shift * den) as a p-series.
fn f21_ratio_series(
    num: &HypParams,
    den: &HypParams,
    shift: i64,
    prec: i64,
) -> QSeries {
    let t = t_of_p(prec + shift + 2);
    let z = t.scale(&rint(1728));
    let num_q = pfq_series(num, prec + 2).with_var(Var::P).compose(&z).unwrap();
    let den_q = pfq_series(den, prec + 2).with_var(Var::P).compose(&z).unwrap();
    num_q
        .mul(&t.pow(shift).unwrap())
        .div(&den_q)
        .unwrap()
        .truncate(prec)
}

/// Verifies the moment-generating function against its two closed forms.
pub fn stieltjes_check(prec: i64) -> CheckReport {
    assert!(prec >= 4);
    let mut report = CheckReport::new();
    let s = stieltjes_series(prec);

    let direct = functional_over_pole(&Poly::one(), prec);
    report.add("stieltjes/moment-sum-matches-rational-form", s.eq_to_prec(&direct));

    let base = HypParams::f21(rat(1, 12), rat(5, 12), Rat::one()).unwrap();
    let num = HypParams::f21(rat(5, 12), rat(13, 12), Rat::one()).unwrap();
    let ratio = f21_ratio_series(&num, &base, 1, prec);
    report.add("stieltjes/hypergeometric-ratio-matches", s.eq_to_prec(&ratio));

    let expect = [rint(0), rint(1), rint(-24), rint(196812), rint(38262208)];
    let ok = (0..5.min(prec)).all(|n| s.coeff(n) == expect[n as usize]);
    report.add("stieltjes/leading-p-coefficients", ok);
    report
}

/// Difference quotient (P(X) - P(j))/(X - j) with the functional applied to
/// the j-variable, leaving a polynomial in X.
pub fn functional_difference_quotient(p: &Poly) -> Poly {
    let d = match p.degree() {
        Some(d) => d,
        None => return Poly::zero(),
    };
    let ms = moments(d);
    let mut coeffs = vec![Rat::zero(); d];
    for k in 0..d {
        // coefficient of X^k is sum_{i > k} p_i L(j^{i-1-k})
        let mut acc = Rat::zero();
        for i in k + 1..=d {
            acc += p.coeff(i) * &ms[i - 1 - k];
        }
        coeffs[k] = acc;
    }
    Poly::new(coeffs)
}

/// The polynomial factor entering the image and orthogonality formulas for
/// the class r = 4*delta + 6*epsilon: j^{1-floor(delta/2)} (j-1728)^{1-eps}.
pub fn class_weight_poly(delta: i64, eps: i64) -> Poly {
    let mut p = Poly::one();
    if 1 - delta / 2 == 1 {
        p = p.mul(&Poly::x());
    }
    if eps == 0 {
        p = p.mul(&Poly::new(vec![rint(-1728), rint(1)]));
    }
    p
}

/// Checks the image formulas: the difference-quotient images reproducing the
/// adjoint polynomials, the four hypergeometric ratio identities, and the
/// expression of the extremal forms as images of the functional.
pub fn image_formulas_check(m_max: i64, prec: i64) -> CheckReport {
    assert!(m_max >= 1);
    let mut report = CheckReport::new();

    // (i) difference quotients.
    for m in 0..=m_max {
        let x = Poly::x();
        let x1728 = Poly::new(vec![rint(-1728), rint(1)]);
        let p0 = x
            .mul(&x1728)
            .mul(&atkin_poly_recursive(0, m + 1).unwrap());
        report.add(
            format!("image/difference-quotient/class0/m={m}"),
            functional_difference_quotient(&p0) == adjoint_poly_recursive(0, m + 1).unwrap(),
        );
        let p2 = atkin_poly_recursive(2, m).unwrap();
        report.add(
            format!("image/difference-quotient/class2/m={m}"),
            functional_difference_quotient(&p2) == adjoint_poly_recursive(2, m).unwrap(),
        );
        let p6 = x.mul(&atkin_poly_recursive(6, m).unwrap());
        report.add(
            format!("image/difference-quotient/class6/m={m}"),
            functional_difference_quotient(&p6) == adjoint_poly_recursive(6, m).unwrap(),
        );
        let p8 = x1728.mul(&atkin_poly_recursive(8, m).unwrap());
        report.add(
            format!("image/difference-quotient/class8/m={m}"),
            functional_difference_quotient(&p8) == adjoint_poly_recursive(8, m).unwrap(),
        );
    }

    // (ii) hypergeometric ratio identities.
    let base = HypParams::f21(rat(1, 12), rat(5, 12), Rat::one()).unwrap();
    for m in 0..=m_max {
        let cases = [
            (
                "class0",
                class_weight_poly(0, 0).mul(&atkin_poly_recursive(0, m + 1).unwrap()),
                -normalizing_factor(m + 1, 0).unwrap(),
                HypParams::f21(rint(m) + rat(13, 12), rint(m) + rat(17, 12), rint(2 * m + 3))
                    .unwrap(),
            ),
            (
                "class2",
                atkin_poly_recursive(2, m).unwrap(),
                normalizing_factor(m, 2).unwrap(),
                HypParams::f21(rint(m) + rat(5, 12), rint(m) + rat(13, 12), rint(2 * m + 1))
                    .unwrap(),
            ),
            (
                "class6",
                Poly::x().mul(&atkin_poly_recursive(6, m).unwrap()),
                normalizing_factor(m, 6).unwrap(),
                HypParams::f21(rint(m) + rat(13, 12), rint(m) + rat(17, 12), rint(2 * m + 2))
                    .unwrap(),
            ),
            (
                "class8",
                Poly::new(vec![rint(-1728), rint(1)])
                    .mul(&atkin_poly_recursive(8, m).unwrap()),
                -normalizing_factor(m, 8).unwrap(),
                HypParams::f21(rint(m) + rat(5, 12), rint(m) + rat(13, 12), rint(2 * m + 2))
                    .unwrap(),
            ),
        ];
        for (name, rpoly, factor, params) in cases {
            let lhs = functional_over_pole(&rpoly, prec);
            let rhs = f21_ratio_series(&params, &base, m + 1, prec).scale(&factor);
            report.add(
                format!("image/hypergeometric-ratio/{name}/m={m}"),
                lhs.eq_to_prec(&rhs),
            );
        }
    }

    // Extremal forms as images: (-1)^{1-eps} N G_w(p) equals the functional
    // applied against E4(p)^delta E6(p)^eps Delta(p)^m / (j(p)-j).
    for m in -1..=m_max {
        for delta_exp in 0..=2i64 {
            for eps in 0..=1i64 {
                let w = 12 * m + 4 * delta_exp + 6 * eps;
                if w < 2 || w == 4 {
                    continue;
                }
                let r = 4 * delta_exp + 6 * eps;
                if resolve_alias(r, m).is_err() {
                    continue;
                }
                let a = match atkin_poly_recursive(r, m) {
                    Ok(a) => a,
                    Err(_) => continue,
                };
                let rpoly = class_weight_poly(delta_exp, eps).mul(&a);
                let sign = if eps == 1 { Rat::one() } else { -Rat::one() };
                let nfac = normalizing_factor(m, r).unwrap();
                let lhs = g_form(w, prec)
                    .unwrap()
                    .with_var(Var::P)
                    .scale(&(sign * &nfac));
                // Inverse powers of Delta cost precision, so budget extra.
                let pf = prec + 2 * m.abs() + 2;
                let factor = e4(pf)
                    .pow(delta_exp)
                    .unwrap()
                    .mul(&e6(pf).pow(eps).unwrap())
                    .mul(&delta(pf).normalized().pow(m).unwrap())
                    .with_var(Var::P);
                let rhs = functional_over_pole(&rpoly, prec + m.abs() + 1)
                    .mul(&factor)
                    .truncate(prec);
                report.add(
                    format!("image/extremal-form/w={w}"),
                    lhs.eq_to_prec(&rhs),
                );
            }
        }
    }
    report
}

/// Orthogonality of the four polynomial families under the weighted
/// functional, for all index pairs up to n_max.
pub fn orthogonality_suite(n_max: i64) -> CheckReport {
    assert!(n_max >= 2);
    let mut report = CheckReport::new();
    for delta_exp in 0..=2i64 {
        for eps in 0..=1i64 {
            let r = 4 * delta_exp + 6 * eps;
            let weight = class_weight_poly(delta_exp, eps);
            let sign = if eps == 1 { Rat::one() } else { -Rat::one() };
            for m in 0..=n_max {
                for n in m..=n_max {
                    let (am, an) = match (atkin_poly_recursive(r, m), atkin_poly_recursive(r, n))
                    {
                        (Ok(a), Ok(b)) => (a, b),
                        _ => continue,
                    };
                    if am.is_zero() || an.is_zero() {
                        continue;
                    }
                    let val = apply_functional(&weight.mul(&am).mul(&an));
                    let expect = if m == n {
                        &sign * normalizing_factor(m, r).unwrap()
                    } else {
                        Rat::zero()
                    };
                    report.add(
                        format!("orthogonality/class{r}/m={m}/n={n}"),
                        val == expect,
                    );
                }
            }
        }
    }
    report
}

/// Hankel determinants of the moment sequence up to the given order; all
/// must be positive.
pub fn hankel_positive_definite(order: usize) -> bool {
    let ms = moments(2 * order + 1);
    for h in 0..=order {
        let mat: Vec<Vec<Rat>> = (0..=h)
            .map(|i| (0..=h).map(|k| ms[i + k].clone()).collect())
            .collect();
        if !linalg::determinant(&mat).is_positive() {
            return false;
        }
    }
    true
}

/// Self-adjointness of the weight-zero Hecke operators for the inner
/// product, on polynomial inputs.
pub fn hecke_self_adjoint_check(n_max: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let polys: Vec<(String, Poly)> = vec![
        ("1".into(), Poly::one()),
        ("j".into(), Poly::x()),
        ("j^2".into(), Poly::monomial(Rat::one(), 2)),
        ("A_{1,2}".into(), atkin_poly_recursive(2, 1).unwrap()),
    ];
    let prec = 40;
    let j = j_series(prec);
    for n in 1..=n_max {
        for (fname, f) in &polys {
            for (gname, g) in &polys {
                let tf = recognize_poly_in_j(
                    &hecke_weight_k(&f.eval_series(&j), n, 0).unwrap(),
                )
                .unwrap();
                let tg = recognize_poly_in_j(
                    &hecke_weight_k(&g.eval_series(&j), n, 0).unwrap(),
                )
                .unwrap();
                report.add(
                    format!("hecke-self-adjoint/n={n}/f={fname}/g={gname}"),
                    inner_product(&tf, g) == inner_product(f, &tg),
                );
            }
        }
    }
    report
}
