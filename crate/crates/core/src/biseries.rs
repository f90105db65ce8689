//! Truncated series in an outer variable whose coefficients are themselves
//! truncated Laurent series in an inner variable. Used for identities that
//! mix two nomes, such as generating functions in `p` with coefficients that
//! are q-expansions.

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::series::{QSeries, Var};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    pvar: Var,
    ivar: Var,
    val: i64,
    prec: i64,
    /// Inner precision: every stored coefficient series is truncated to this.
    iprec: i64,
    coeffs: Vec<QSeries>,
}

impl BiSeries {
    pub fn new(pvar: Var, val: i64, coeffs: Vec<QSeries>) -> BiSeries {
        assert!(!coeffs.is_empty(), "empty coefficient window");
        let ivar = coeffs[0].var();
        assert!(coeffs.iter().all(|c| c.var() == ivar), "mixed inner variables");
        assert_ne!(pvar, ivar, "outer and inner variables must differ");
        let iprec = coeffs.iter().map(|c| c.prec()).min().unwrap();
        let coeffs: Vec<QSeries> = coeffs
            .into_iter()
            .map(|c| if c.prec() > iprec { c.truncate(iprec) } else { c })
            .collect();
        let prec = val + coeffs.len() as i64;
        BiSeries {
            pvar,
            ivar,
            val,
            prec,
            iprec,
            coeffs,
        }
    }

    pub fn zero(pvar: Var, prec: i64, ivar: Var, iprec: i64) -> BiSeries {
        assert!(prec > 0);
        let coeffs = vec![QSeries::zero(ivar, iprec); prec as usize];
        BiSeries::new(pvar, 0, coeffs)
    }

    /// Lift a series in the outer variable: rational coefficients become
    /// constant inner series.
    pub fn from_outer(s: &QSeries, ivar: Var, iprec: i64) -> BiSeries {
        let coeffs = (s.valuation()..s.prec())
            .map(|n| QSeries::constant(ivar, s.coeff(n), iprec))
            .collect();
        BiSeries::new(s.var(), s.valuation(), coeffs)
    }

    /// Lift an inner series: the whole series sits at outer exponent 0.
    pub fn from_inner(s: &QSeries, pvar: Var, prec: i64) -> BiSeries {
        assert!(prec > 0);
        let mut coeffs = vec![QSeries::zero(s.var(), s.prec()); prec as usize];
        coeffs[0] = s.clone();
        BiSeries::new(pvar, 0, coeffs)
    }

    pub fn outer_var(&self) -> Var {
        self.pvar
    }

    pub fn inner_var(&self) -> Var {
        self.ivar
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn inner_prec(&self) -> i64 {
        self.iprec
    }

    /// Coefficient series at outer exponent `n`.
    pub fn coeff(&self, n: i64) -> QSeries {
        assert!(n < self.prec, "outer coefficient beyond precision");
        if n < self.val {
            QSeries::zero(self.ivar, self.iprec)
        } else {
            self.coeffs[(n - self.val) as usize].clone()
        }
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_to_prec())
    }

    fn check_compat(&self, other: &BiSeries) {
        assert_eq!(self.pvar, other.pvar, "mixed outer variables");
        assert_eq!(self.ivar, other.ivar, "mixed inner variables");
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        self.check_compat(other);
        let val = self.val.min(other.val);
        let prec = self.prec.min(other.prec);
        assert!(prec > val, "precision window vanished in add");
        let iprec = self.iprec.min(other.iprec);
        let coeffs = (val..prec)
            .map(|n| {
                let mut acc = QSeries::zero(self.ivar, iprec);
                if n >= self.val && n < self.prec {
                    acc = acc.add(&self.coeff(n));
                }
                if n >= other.val && n < other.prec {
                    acc = acc.add(&other.coeff(n));
                }
                acc
            })
            .collect();
        BiSeries::new(self.pvar, val, coeffs)
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiSeries {
        self.scale(&-Rat::from_integer(1.into()))
    }

    pub fn scale(&self, c: &Rat) -> BiSeries {
        BiSeries::new(
            self.pvar,
            self.val,
            self.coeffs.iter().map(|s| s.scale(c)).collect(),
        )
    }

    /// Multiply every outer coefficient by a fixed inner series.
    pub fn scale_inner(&self, s: &QSeries) -> BiSeries {
        assert_eq!(s.var(), self.ivar);
        BiSeries::new(
            self.pvar,
            self.val,
            self.coeffs.iter().map(|c| c.mul(s)).collect(),
        )
    }

    /// Multiply by `pvar^k`.
    pub fn shift(mut self, k: i64) -> BiSeries {
        self.val += k;
        self.prec += k;
        self
    }

    pub fn truncate(&self, new_prec: i64) -> BiSeries {
        assert!(new_prec <= self.prec && new_prec > self.val);
        BiSeries::new(
            self.pvar,
            self.val,
            self.coeffs[..(new_prec - self.val) as usize].to_vec(),
        )
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        self.check_compat(other);
        let val = self.val + other.val;
        let prec = (self.prec + other.val).min(other.prec + self.val);
        assert!(prec > val, "precision window vanished in mul");
        let iprec = self.iprec.min(other.iprec);
        let mut out = vec![QSeries::zero(self.ivar, iprec); (prec - val) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_to_prec() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let n = self.val + i as i64 + other.val + j as i64;
                if n >= prec {
                    continue;
                }
                if !b.is_zero_to_prec() {
                    let idx = (n - val) as usize;
                    out[idx] = out[idx].add(&a.mul(b));
                }
            }
        }
        // Products of Laurent inner coefficients may narrow precision; the
        // constructor renormalizes to the common minimum.
        BiSeries::new(self.pvar, val, out)
    }

    /// Multiplicative inverse; the leading outer coefficient must itself be
    /// invertible as an inner series.
    pub fn inverse(&self) -> Result<BiSeries> {
        let lead_idx = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero_to_prec())
            .ok_or(Error::DivisionByZeroSeries)?;
        let vstar = self.val + lead_idx as i64;
        let lead_inv = self.coeffs[lead_idx].inverse()?;
        let n = self.coeffs.len() - lead_idx;
        let mut inv: Vec<QSeries> = Vec::with_capacity(n);
        inv.push(lead_inv.clone());
        for k in 1..n {
            let mut acc: Option<QSeries> = None;
            for j in 1..=k {
                let a = &self.coeffs[lead_idx + j];
                if a.is_zero_to_prec() {
                    continue;
                }
                let term = a.mul(&inv[k - j]);
                acc = Some(match acc {
                    Some(s) => s.add(&term),
                    None => term,
                });
            }
            let next = match acc {
                Some(s) => s.neg().mul(&lead_inv),
                None => QSeries::zero(self.ivar, lead_inv.prec()),
            };
            inv.push(next);
        }
        Ok(BiSeries::new(self.pvar, -vstar, inv))
    }

    pub fn div(&self, other: &BiSeries) -> Result<BiSeries> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn eq_to_prec(&self, other: &BiSeries) -> bool {
        if self.pvar != other.pvar || self.ivar != other.ivar {
            return false;
        }
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        (lo..prec).all(|n| self.coeff(n).eq_to_prec(&other.coeff(n)))
    }

    /// Rational coefficient at (outer exponent n, inner exponent m).
    pub fn coeff_at(&self, n: i64, m: i64) -> Rat {
        if n < self.val {
            return Rat::zero();
        }
        self.coeff(n).coeff(m)
    }
}
