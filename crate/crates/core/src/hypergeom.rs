//! Truncated generalized hypergeometric series, the logarithmic companion
//! series G1, Euler-transformation checks, and the polynomial parts of
//! X-shifted 2F1 expansions in 1/X.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{is_nonpositive_integer, rat, rat_pow, rint, Rat};
use crate::series::{binomial_series, QSeries, Var};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypParams {
    upper: Vec<Rat>,
    lower: Vec<Rat>,
}

impl HypParams {
    pub fn new(upper: Vec<Rat>, lower: Vec<Rat>) -> Result<HypParams> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::InvalidParams(format!(
                "expected one more upper than lower parameter, got {} and {}",
                upper.len(),
                lower.len()
            )));
        }
        if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(Error::InvalidParams(format!(
                "lower parameter {} is a nonpositive integer",
                b
            )));
        }
        Ok(HypParams { upper, lower })
    }

    pub fn f21(a: Rat, b: Rat, c: Rat) -> Result<HypParams> {
        HypParams::new(vec![a, b], vec![c])
    }

    pub fn upper(&self) -> &[Rat] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rat] {
        &self.lower
    }
}

/// Coefficients of sum_n (prod (a_i)_n / prod (b_j)_n) z^n / n!.
pub fn pfq_coeffs(params: &HypParams, prec: i64) -> Vec<Rat> {
    assert!(prec >= 1);
    let mut coeffs = Vec::with_capacity(prec as usize);
    let mut c = Rat::one();
    for n in 0..prec {
        coeffs.push(c.clone());
        let nr = rint(n);
        for a in &params.upper {
            c *= a + &nr;
        }
        for b in &params.lower {
            c /= b + &nr;
        }
        c /= &nr + Rat::one();
    }
    coeffs
}

pub fn pfq_series(params: &HypParams, prec: i64) -> QSeries {
    QSeries::from_coeffs(Var::Z, 0, pfq_coeffs(params, prec))
}

/// The logarithmic companion of 2F1(a,b;1;z):
/// sum_{n>=1} ((a)_n (b)_n / n!^2) [sum_{k<n} (1/(a+k) + 1/(b+k) - 2/(1+k))] z^n.
pub fn g21_series(a: &Rat, b: &Rat, prec: i64) -> Result<QSeries> {
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Err(Error::InvalidParams(
            "parameters of the companion series must not be nonpositive integers".into(),
        ));
    }
    assert!(prec >= 1);
    let params = HypParams::f21(a.clone(), b.clone(), Rat::one())?;
    let base = pfq_coeffs(&params, prec);
    let mut harmonic = Rat::zero();
    let mut coeffs = Vec::with_capacity(prec as usize);
    for n in 0..prec {
        coeffs.push(&base[n as usize] * &harmonic);
        let k = rint(n);
        harmonic += (a + &k).recip() + (b + &k).recip() - rat(2, 1) / (&k + Rat::one());
    }
    Ok(QSeries::from_coeffs(Var::Z, 0, coeffs))
}

/// Substitute z -> c*z coefficientwise.
pub fn scale_argument(s: &QSeries, c: &Rat) -> QSeries {
    let coeffs = (s.valuation()..s.prec())
        .map(|n| s.coeff(n) * rat_pow(c, n))
        .collect();
    QSeries::from_coeffs(s.var(), s.valuation(), coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyPartKind {
    Alpha0,
    Alpha1,
    Beta,
}

/// Polynomial part (in descending powers of X) of
///   X^n 2F1(1/12,5/12;1;1728/X)            (Alpha0),
///   X^{n-1}(X-1728) 2F1(7/12,11/12;1;1728/X)  (Alpha1),
///   X^n 2F1(-1/12,7/12;1;1728/X)           (Beta).
/// Each is monic of degree n. Working in u = 1/X, the shift by X^n keeps the
/// series coefficients with u-exponent <= 0.
pub fn alpha_beta_polys(n: i64, which: PolyPartKind) -> Poly {
    assert!(n >= 0);
    let (a, b) = match which {
        PolyPartKind::Alpha0 => (rat(1, 12), rat(5, 12)),
        PolyPartKind::Alpha1 => (rat(7, 12), rat(11, 12)),
        PolyPartKind::Beta => (rat(-1, 12), rat(7, 12)),
    };
    let params = HypParams::f21(a, b, Rat::one()).unwrap();
    let c = pfq_coeffs(&params, n + 2);
    let scale = |k: i64| rat_pow(&rint(1728), k);
    let mut coeffs = vec![Rat::zero(); n as usize + 1];
    for k in 0..=n {
        let ck = match which {
            PolyPartKind::Alpha1 => {
                let prev = if k == 0 {
                    Rat::zero()
                } else {
                    c[(k - 1) as usize].clone()
                };
                (&c[k as usize] - prev) * scale(k)
            }
            _ => &c[k as usize] * scale(k),
        };
        coeffs[(n - k) as usize] = ck;
    }
    Poly::new(coeffs)
}

/// Checks the Euler transformation
/// 2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a,c-b;c;z) to the given precision.
pub fn euler_transform_holds(a: &Rat, b: &Rat, c: &Rat, prec: i64) -> Result<bool> {
    let lhs = pfq_series(&HypParams::f21(a.clone(), b.clone(), c.clone())?, prec);
    let rhs_f = pfq_series(
        &HypParams::f21(c - a, c - b, c.clone())?,
        prec,
    );
    let minus_z = QSeries::monomial(Var::Z, 1, prec).neg();
    let pow = binomial_series(&minus_z, &(c - a - b))?;
    Ok(lhs.eq_to_prec(&rhs_f.mul(&pow)))
}

fn apply_l(f: &QSeries, a: &Rat, b: &Rat) -> QSeries {
    // L = Theta^2 - z (Theta + a)(Theta + b)
    let t2 = f.theta().theta();
    let inner = f.theta().add(&f.scale(b));
    let inner = inner.theta().add(&inner.scale(a));
    t2.sub(&inner.shift(1).truncate(f.prec()))
}

/// The inhomogeneous hypergeometric equation satisfied by the companion
/// series: L(G1) = z(2*Theta + a + b) F1 - 2*Theta(F1) with F1 = 2F1(a,b;1;z).
pub fn g21_ode_holds(a: &Rat, b: &Rat, prec: i64) -> Result<bool> {
    let f1 = pfq_series(&HypParams::f21(a.clone(), b.clone(), Rat::one())?, prec);
    let g1 = g21_series(a, b, prec)?;
    let lhs = apply_l(&g1, a, b);
    let rhs = f1
        .theta()
        .scale(&rint(2))
        .add(&f1.scale(&(a + b)))
        .shift(1)
        .truncate(prec)
        .sub(&f1.theta().scale(&rint(2)));
    Ok(lhs.eq_to_prec(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_validation() {
        assert!(HypParams::f21(rat(1, 2), rat(1, 3), rint(-2)).is_err());
        assert!(HypParams::new(vec![rint(1)], vec![rint(1)]).is_err());
        assert!(HypParams::f21(rat(1, 12), rat(5, 12), rint(1)).is_ok());
    }

    #[test]
    fn pfq_low_terms() {
        let p = HypParams::f21(rat(1, 12), rat(5, 12), Rat::one()).unwrap();
        let s = pfq_series(&p, 4);
        assert_eq!(s.coeff(0), rint(1));
        assert_eq!(s.coeff(1), rat(5, 144));
        // (1/12)(13/12)(5/12)(17/12)/(2! 1!... ) with c=1: ((1/12)_2 (5/12)_2)/(2!)^2
        let expected = (rat(1, 12) * rat(13, 12) * rat(5, 12) * rat(17, 12)) / rint(4);
        assert_eq!(s.coeff(2), expected);
        let trivial = pfq_series(&p, 1);
        assert_eq!(trivial.coeff(0), rint(1));
    }

    #[test]
    fn euler_transform_tabulated_triples() {
        let triples = [
            (rat(1, 12), rat(5, 12), rint(1)),
            (rat(7, 12), rat(11, 12), rint(1)),
            (rat(-1, 12), rat(7, 12), rint(1)),
            (rat(13, 12), rat(17, 12), rint(3)),
            (rat(5, 12), rat(13, 12), rint(1)),
            (rat(13, 12), rat(17, 12), rint(2)),
        ];
        for (a, b, c) in triples {
            assert!(euler_transform_holds(&a, &b, &c, 16).unwrap());
        }
    }

    #[test]
    fn g21_basics() {
        let g = g21_series(&rat(1, 12), &rat(5, 12), 6).unwrap();
        assert_eq!(g.coeff(0), rint(0));
        // n=1 term: (1/12)(5/12)*(12 + 12/5 - 2) = (5/144)*(62/5) = 31/72...
        // computed independently: 1/a + 1/b - 2 with a=1/12, b=5/12.
        let expected = rat(1, 12) * rat(5, 12) * (rint(12) + rat(12, 5) - rint(2));
        assert_eq!(g.coeff(1), expected);
        assert!(g21_series(&rint(0), &rat(1, 2), 4).is_err());
    }

    #[test]
    fn g21_ode() {
        for (a, b) in [
            (rat(1, 12), rat(5, 12)),
            (rat(7, 12), rat(11, 12)),
            (rat(-1, 12), rat(7, 12)),
        ] {
            assert!(g21_ode_holds(&a, &b, 14).unwrap());
        }
    }

    #[test]
    fn poly_parts() {
        assert_eq!(alpha_beta_polys(0, PolyPartKind::Alpha0), Poly::one());
        assert_eq!(alpha_beta_polys(0, PolyPartKind::Beta), Poly::one());
        assert_eq!(alpha_beta_polys(0, PolyPartKind::Alpha1), Poly::one());
        // X + 1728*(1/12)(5/12) = X + 60
        assert_eq!(
            alpha_beta_polys(1, PolyPartKind::Alpha0),
            Poly::new(vec![rint(60), rint(1)])
        );
        for n in 0..6 {
            for kind in [PolyPartKind::Alpha0, PolyPartKind::Alpha1, PolyPartKind::Beta] {
                let p = alpha_beta_polys(n, kind);
                assert_eq!(p.degree(), Some(n as usize));
                assert!(p.is_monic());
            }
        }
    }
}
