//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored ascending; the zero polynomial is the empty list.
//! The variable is conventionally `X`, standing for the modular invariant j.

use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::series::QSeries;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial `c X^n`.
    pub fn monomial(c: Rat, n: usize) -> Poly {
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    /// `X`.
    pub fn x() -> Poly {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let d = divisor.degree().unwrap();
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![Rat::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = &rem[i] / &lead;
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let delta = &c * b;
                rem[i - d + j] -= delta;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonzeroRemainder)
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at a Laurent series (Horner). Used to turn polynomials in j
    /// into q-expansions.
    pub fn eval_series(&self, s: &QSeries) -> QSeries {
        let prec_guess = s.prec() - s.valuation().min(0) * self.coeffs.len() as i64;
        let mut acc = QSeries::zero(s.var(), prec_guess.max(1));
        for c in self.coeffs.iter().rev() {
            // Normalizing keeps the stored valuation tight, which stops the
            // Horner loop from bleeding precision on Laurent arguments.
            acc = acc
                .mul(s)
                .add(&QSeries::constant(s.var(), c.clone(), prec_guess.max(1)))
                .normalized();
        }
        if self.is_zero() {
            acc = QSeries::zero(s.var(), s.prec());
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coefficients": self.coeffs.iter().map(format_rat).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Poly> {
        let coeffs: Option<Vec<Rat>> = v
            .get("coefficients")?
            .as_array()?
            .iter()
            .map(|c| parse_rat(c.as_str()?))
            .collect();
        Some(Poly::new(coeffs?))
    }

    /// Descending-power rendering, matching the usual table layout.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                out.push_str(&format_rat(&abs));
            }
            match i {
                0 => {}
                1 => out.push_str(if show_coeff { "*X" } else { "X" }),
                _ => out.push_str(&format!("{}X^{}", if show_coeff { "*" } else { "" }, i)),
            }
        }
        out
    }

    /// LaTeX rendering in descending powers.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_str = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("\\tfrac{{{}}}{{{}}}", abs.numer(), abs.denom())
            };
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                out.push_str(&coeff_str);
            }
            match i {
                0 => {}
                1 => out.push('X'),
                _ => out.push_str(&format!("X^{{{}}}", i)),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;
    use crate::series::Var;

    #[test]
    fn div_rem_exact() {
        // (X - 720)(X - 5) = X^2 - 725X + 3600
        let a = Poly::new(vec![rint(-720), rint(1)]);
        let b = Poly::new(vec![rint(-5), rint(1)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        let bad = prod.add(&Poly::one());
        assert!(matches!(bad.div_exact(&a), Err(Error::NonzeroRemainder)));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Poly::new(vec![rint(1), rint(0), rint(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Poly::new(vec![]).degree(), None);
    }

    #[test]
    fn eval_series_on_laurent() {
        // P(X) = X - 1 at s = q^-1 + 1: q^-1 + O(...)
        let p = Poly::new(vec![rint(-1), rint(1)]);
        let s = QSeries::from_coeffs(Var::Q, -1, vec![rint(1), rint(1), rint(0), rint(0)]);
        let r = p.eval_series(&s);
        assert_eq!(r.coeff(-1), rint(1));
        assert_eq!(r.coeff(0), rint(0));
    }

    #[test]
    fn text_rendering() {
        let p = Poly::new(vec![rint(269280), rint(-1640), rint(1)]);
        assert_eq!(p.to_text(), "X^2 - 1640*X + 269280");
        let q = Poly::new(vec![rint(-720), rint(1)]);
        assert_eq!(q.to_text(), "X - 720");
    }
}
