//! Level-one quasimodular form expansions: E2, E4, E6, Delta, j, the
//! differential operators D and the Serre derivative, Hecke operators, and
//! recognition of weight-zero series as polynomials in j.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{rint, sigma, Rat};
use crate::series::{QSeries, Var};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// A q-expansion tagged with its weight and depth (0 for modular forms,
/// 1 for E2-linear combinations over modular forms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormExpansion {
    pub series: QSeries,
    pub weight: i64,
    pub depth: u32,
}

impl FormExpansion {
    pub fn new(series: QSeries, weight: i64, depth: u32) -> FormExpansion {
        assert!(series.prec() >= 1);
        assert!(weight % 2 == 0, "odd weight");
        FormExpansion {
            series,
            weight,
            depth,
        }
    }

    pub fn mul(&self, other: &FormExpansion) -> FormExpansion {
        FormExpansion::new(
            self.series.mul(&other.series),
            self.weight + other.weight,
            self.depth + other.depth,
        )
    }

    pub fn add(&self, other: &FormExpansion) -> FormExpansion {
        assert_eq!(self.weight, other.weight, "adding different weights");
        FormExpansion::new(
            self.series.add(&other.series),
            self.weight,
            self.depth.max(other.depth),
        )
    }

    pub fn scale(&self, c: &Rat) -> FormExpansion {
        FormExpansion::new(self.series.scale(c), self.weight, self.depth)
    }
}

fn eis_cache() -> &'static Mutex<HashMap<(i64, i64), QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), QSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn dj_cache() -> &'static Mutex<HashMap<i64, (QSeries, QSeries)>> {
    static CACHE: OnceLock<Mutex<HashMap<i64, (QSeries, QSeries)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for k in {2,4,6}.
pub fn eisenstein(k: i64, prec: i64) -> Result<FormExpansion> {
    let factor = match k {
        2 => rint(-24),
        4 => rint(240),
        6 => rint(-504),
        _ => return Err(Error::InvalidWeight(k)),
    };
    assert!(prec >= 1);
    let series = {
        let mut cache = eis_cache().lock().unwrap();
        cache
            .entry((k, prec))
            .or_insert_with(|| {
                let mut coeffs = vec![Rat::zero(); prec as usize];
                coeffs[0] = rint(1);
                for n in 1..prec {
                    coeffs[n as usize] =
                        &factor * Rat::from_integer(sigma(n as u64, (k - 1) as u32));
                }
                QSeries::from_coeffs(Var::Q, 0, coeffs)
            })
            .clone()
    };
    Ok(FormExpansion::new(series, k, u32::from(k == 2)))
}

/// Eta-product expansion q prod (1-q^n)^24, used as a cross-check on Delta.
fn delta_eta_product(prec: i64) -> QSeries {
    let mut acc = QSeries::one(Var::Q, prec);
    for n in 1..prec {
        let mut term = QSeries::one(Var::Q, prec);
        term = term.sub(&QSeries::monomial(Var::Q, n, prec));
        let mut p24 = QSeries::one(Var::Q, prec);
        for _ in 0..24 {
            p24 = p24.mul(&term);
        }
        acc = acc.mul(&p24);
    }
    acc.shift(1)
}

/// Delta = (E4^3 - E6^2)/1728, cross-checked against q prod (1-q^n)^24,
/// and j = E4^3 / Delta (valuation -1).
pub fn delta_and_j(prec: i64) -> Result<(FormExpansion, FormExpansion)> {
    assert!(prec >= 2);
    let (delta, j) = {
        let mut cache = dj_cache().lock().unwrap();
        if let Some(pair) = cache.get(&prec) {
            pair.clone()
        } else {
            let e4 = eisenstein(4, prec)?.series;
            let e6 = eisenstein(6, prec)?.series;
            let e4cubed = e4.mul(&e4).mul(&e4);
            let delta = e4cubed
                .sub(&e6.mul(&e6))
                .scale(&rint(1728).recip());
            debug_assert!(delta.eq_to_prec(&delta_eta_product(prec)));
            let j = e4cubed.div(&delta)?;
            cache.insert(prec, (delta.clone(), j.clone()));
            (delta, j)
        }
    };
    Ok((
        FormExpansion::new(delta, 12, 0),
        FormExpansion::new(j, 0, 0),
    ))
}

/// Convenience accessors for the raw series.
pub fn e2(prec: i64) -> QSeries {
    eisenstein(2, prec).unwrap().series
}

pub fn e4(prec: i64) -> QSeries {
    eisenstein(4, prec).unwrap().series
}

pub fn e6(prec: i64) -> QSeries {
    eisenstein(6, prec).unwrap().series
}

pub fn delta(prec: i64) -> QSeries {
    delta_and_j(prec).unwrap().0.series
}

pub fn j_series(prec: i64) -> QSeries {
    delta_and_j(prec).unwrap().1.series
}

/// D = q d/dq; raises depth by at most one but we keep the tag unchanged for
/// raw series use. Weight bookkeeping: D maps weight k to k+2.
pub fn d_operator(f: &FormExpansion) -> FormExpansion {
    FormExpansion::new(f.series.theta(), f.weight + 2, f.depth + 1)
}

/// Serre derivative of a weight-k expansion, iterated with the convention
/// that each step raises the acting weight by 2.
pub fn serre_derivative(f: &QSeries, k: i64, iterate: u32) -> QSeries {
    let mut out = f.clone();
    let e2 = e2(f.prec());
    let mut weight = k;
    for _ in 0..iterate {
        out = out.theta().sub(&e2.mul(&out).scale(&(rint(weight) / rint(12))));
        weight += 2;
    }
    out
}

/// n-th Hecke operator in weight k on a (possibly weakly holomorphic)
/// q-series: the coefficient of q^m is sum over 0 < d | (m,n) of
/// d^{k-1} c(mn/d^2). Output precision shrinks to floor((prec-1)/n)+1.
pub fn hecke_weight_k(f: &QSeries, n: i64, k: i64) -> Result<QSeries> {
    assert!(n >= 1);
    let v = f.valuation();
    let out_prec = (f.prec() - 1).div_euclid(n) + 1;
    let out_val = if v <= 0 { v * n } else { (v + n - 1) / n };
    if out_prec <= out_val {
        return Err(Error::InsufficientPrecision(format!(
            "Hecke T_{n} needs more than {} stored coefficients",
            f.prec()
        )));
    }
    let mut coeffs = Vec::with_capacity((out_prec - out_val) as usize);
    for m in out_val..out_prec {
        let mut acc = Rat::zero();
        for d in 1..=n {
            if n % d != 0 || (m % d != 0) {
                continue;
            }
            let arg = m * n / (d * d);
            let c = f.coeff_checked(arg)?;
            if !c.is_zero() {
                acc += c * crate::rat::rat_pow(&rint(d), k - 1);
            }
        }
        coeffs.push(acc);
    }
    Ok(QSeries::from_coeffs(f.var(), out_val, coeffs))
}

/// Writes a weight-zero Laurent series as a polynomial in j, peeling the
/// principal part against powers of the j-expansion. Errors when a nonzero
/// residual remains within the precision window.
pub fn recognize_poly_in_j(f: &QSeries) -> Result<Poly> {
    if f.is_zero_to_prec() {
        return Ok(Poly::zero());
    }
    let v = f.true_valuation().unwrap();
    let deg = (-v).max(0);
    let jprec = (f.prec() + deg).max(2);
    let j = j_series(jprec);
    let mut residual = f.clone();
    let mut coeffs = vec![Rat::zero(); deg as usize + 1];
    for d in (0..=deg).rev() {
        let c = residual.coeff(-d);
        if c.is_zero() {
            continue;
        }
        coeffs[d as usize] = c.clone();
        let jd = j.pow(d)?;
        residual = residual.sub(&jd.scale(&c));
    }
    if let Some(t) = residual.true_valuation() {
        return Err(Error::NotPolynomialInJ(t));
    }
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    const N: i64 = 24;

    #[test]
    fn eisenstein_low_terms() {
        let e2 = e2(3);
        assert_eq!(e2.coeff(0), rint(1));
        assert_eq!(e2.coeff(1), rint(-24));
        assert_eq!(e2.coeff(2), rint(-72));
        assert_eq!(e4(2).coeff(1), rint(240));
        assert_eq!(e6(2).coeff(1), rint(-504));
        assert!(matches!(eisenstein(8, 2), Err(Error::InvalidWeight(8))));
    }

    #[test]
    fn delta_and_j_expansions() {
        let (d, j) = delta_and_j(N).unwrap();
        assert_eq!(d.series.coeff(1), rint(1));
        assert_eq!(d.series.coeff(2), rint(-24));
        assert_eq!(j.series.valuation(), -1);
        assert_eq!(j.series.coeff(-1), rint(1));
        assert_eq!(j.series.coeff(0), rint(744));
        assert_eq!(j.series.coeff(1), rint(196884));
        // (E4^3 - E6^2)/1728 matches the eta product (also debug-asserted).
        assert!(d.series.eq_to_prec(&delta_eta_product(N)));
    }

    #[test]
    fn integrality() {
        for s in [e2(N), e4(N), e6(N), delta(N), j_series(N)] {
            assert!(s.is_integral());
        }
    }

    #[test]
    fn ramanujan_relations() {
        let (e2, e4, e6) = (e2(N), e4(N), e6(N));
        let d_e2 = e2.theta();
        let rhs2 = e2.mul(&e2).sub(&e4).scale(&rat(1, 12));
        assert!(d_e2.eq_to_prec(&rhs2));
        let d_e4 = e4.theta();
        let rhs4 = e2.mul(&e4).sub(&e6).scale(&rat(1, 3));
        assert!(d_e4.eq_to_prec(&rhs4));
        let d_e6 = e6.theta();
        let rhs6 = e2.mul(&e6).sub(&e4.mul(&e4)).scale(&rat(1, 2));
        assert!(d_e6.eq_to_prec(&rhs6));
    }

    #[test]
    fn dlog_delta_is_e2() {
        let d = delta(N);
        assert!(d.theta().div(&d).unwrap().eq_to_prec(&e2(N)));
    }

    #[test]
    fn serre_derivative_examples() {
        // del_1(E2) = -E4/12 (weight tag 1 enters only through k/12)
        let lhs = serre_derivative(&e2(N), 1, 1);
        assert!(lhs.eq_to_prec(&e4(N).scale(&rat(-1, 12))));
        let lhs = serre_derivative(&e4(N), 4, 1);
        assert!(lhs.eq_to_prec(&e6(N).scale(&rat(-1, 3))));
        let one = QSeries::one(Var::Q, N);
        assert!(serre_derivative(&one, 0, 1).is_zero_to_prec());
    }

    #[test]
    fn serre_derivative_leibniz() {
        // del_{k+l}(fg) = del_k(f) g + f del_l(g)
        let f = e4(N);
        let g = e6(N).add(&delta(N).scale(&rat(7, 3)));
        let lhs = serre_derivative(&f.mul(&g), 10, 1);
        let rhs = serre_derivative(&f, 4, 1)
            .mul(&g)
            .add(&f.mul(&serre_derivative(&g, 6, 1)));
        assert!(lhs.eq_to_prec(&rhs));
    }

    #[test]
    fn iterated_serre_derivative_composes() {
        let f = e4(N);
        let once = serre_derivative(&f, 4, 1);
        let twice_by_steps = serre_derivative(&once, 6, 1);
        let twice = serre_derivative(&f, 4, 2);
        assert!(twice.eq_to_prec(&twice_by_steps));
    }

    #[test]
    fn hecke_basics() {
        let j = j_series(N);
        let f = j.sub(&QSeries::constant(Var::Q, rint(744), N));
        let t1 = hecke_weight_k(&f, 1, 0).unwrap();
        assert!(t1.eq_to_prec(&f));
        // Delta is a T_2 eigenform with eigenvalue tau(2) = -24.
        let d = delta(N);
        let t2 = hecke_weight_k(&d, 2, 12).unwrap();
        assert_eq!(t2.coeff(1), rint(-24));
        assert!(t2.eq_to_prec(&d.scale(&rint(-24))));
    }

    #[test]
    fn hecke_composition_weight_zero() {
        let j = j_series(97);
        let f = j.sub(&QSeries::constant(Var::Q, rint(744), 97));
        for (m, n) in [(2i64, 3i64), (3, 4)] {
            let lhs = hecke_weight_k(&hecke_weight_k(&f, n, 0).unwrap(), m, 0).unwrap();
            let rhs = hecke_weight_k(&f, m * n, 0).unwrap();
            assert!(lhs.eq_to_prec(&rhs));
        }
    }

    #[test]
    fn hecke_insufficient_precision() {
        // A valuation-1 series hit with a large n leaves no window.
        let g = QSeries::from_coeffs(Var::Q, 1, vec![rint(1), rint(2)]);
        assert!(matches!(
            hecke_weight_k(&g, 7, 0),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn recognize_polynomials() {
        let j = j_series(N);
        assert_eq!(recognize_poly_in_j(&j).unwrap(), Poly::x());
        let e4c = e4(N).pow(3).unwrap();
        let e6s = e6(N).pow(2).unwrap();
        let d = delta(N);
        let f = e4c.sub(&e6s).div(&d).unwrap();
        assert_eq!(
            recognize_poly_in_j(&f).unwrap(),
            Poly::constant(rint(1728))
        );
        // j^2 - 3j + 5 round-trips.
        let p = Poly::new(vec![rint(5), rint(-3), rint(1)]);
        let s = p.eval_series(&j);
        assert_eq!(recognize_poly_in_j(&s).unwrap(), p);
        // Delta itself is weight 12, not a polynomial in j.
        assert!(matches!(
            recognize_poly_in_j(&delta(N)),
            Err(Error::NotPolynomialInJ(_))
        ));
    }
}
