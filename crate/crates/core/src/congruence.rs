//! Mod-p reduction of the Atkin-like polynomials and an independent
//! supersingular-polynomial oracle over F_{p^2} via the Hasse invariant.

use crate::atkin::atkin_poly_recursive;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::rint;
use crate::report::CheckReport;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

/// Dense polynomial over F_p, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> FpPoly {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "X".into(),
                (1, c) => format!("{c}*X"),
                (i, 1) => format!("X^{i}"),
                (i, c) => format!("{c}*X^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Coefficientwise reduction with modular inverses of the denominators.
pub fn reduce_poly_mod_p(f: &Poly, p: u64) -> Result<FpPoly> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let mut coeffs = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let den = bigint_mod(c.denom(), p);
        if den == 0 {
            return Err(Error::NotPIntegral(p));
        }
        let num = bigint_mod(c.numer(), p);
        coeffs.push(((num as u128 * invmod(den, p) as u128) % p as u128) as u64);
    }
    Ok(FpPoly::new(p, coeffs))
}

/// Element a + b*w of F_{p^2} with w^2 = c, c the smallest nonresidue.
type Fp2 = (u64, u64);

struct Fp2Ctx {
    p: u64,
    c: u64,
}

impl Fp2Ctx {
    fn new(p: u64) -> Fp2Ctx {
        let c = (2..p)
            .find(|&c| powmod(c, (p - 1) / 2, p) == p - 1)
            .expect("nonresidue exists for odd p");
        Fp2Ctx { p, c }
    }

    fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        ((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }

    fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        (
            (x.0 + self.p - y.0) % self.p,
            (x.1 + self.p - y.1) % self.p,
        )
    }

    fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p as u128;
        let a = (x.0 as u128 * y.0 as u128 + (x.1 as u128 * y.1 as u128) % p * self.c as u128) % p;
        let b = (x.0 as u128 * y.1 as u128 + x.1 as u128 * y.0 as u128) % p;
        (a as u64, b as u64)
    }

    fn scale(&self, k: u64, x: Fp2) -> Fp2 {
        let p = self.p as u128;
        (
            ((k as u128 * x.0 as u128) % p) as u64,
            ((k as u128 * x.1 as u128) % p) as u64,
        )
    }

    fn is_zero(&self, x: Fp2) -> bool {
        x.0 == 0 && x.1 == 0
    }

    /// Product of two dense F_{p^2}[x] polynomials.
    fn poly_mul(&self, a: &[Fp2], b: &[Fp2]) -> Vec<Fp2> {
        let mut out = vec![(0u64, 0u64); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let t = self.mul(x, y);
                out[i + j] = self.add(out[i + j], t);
            }
        }
        out
    }

    /// Whether the curve y^2 = x^3 + ax + b is supersingular: the Hasse
    /// invariant is the coefficient of x^{p-1} in (x^3+ax+b)^{(p-1)/2}.
    fn curve_is_supersingular(&self, a: Fp2, b: Fp2) -> bool {
        let base = vec![b, a, (0, 0), (1, 0)];
        let mut exp = (self.p - 1) / 2;
        let mut acc = vec![(1u64, 0u64)];
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_mul(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.poly_mul(&sq, &sq);
            }
        }
        acc.get((self.p - 1) as usize)
            .map_or(true, |&c| self.is_zero(c))
    }

    /// Supersingularity of the j-invariant j0, through a fixed short
    /// Weierstrass model with that invariant.
    fn j_is_supersingular(&self, j0: Fp2) -> bool {
        let j1728 = (1728 % self.p, 0);
        let (a, b) = if self.is_zero(j0) {
            ((0, 0), (1, 0))
        } else if j0 == j1728 {
            ((1, 0), (0, 0))
        } else {
            let d = self.sub(j1728, j0);
            let a = self.scale(3, self.mul(j0, d));
            let b = self.scale(2, self.mul(j0, self.mul(d, d)));
            (a, b)
        };
        self.curve_is_supersingular(a, b)
    }
}

/// ss_p(X): the monic polynomial whose roots are exactly the supersingular
/// j-invariants in characteristic p, found by scanning F_{p^2} with the
/// Hasse-invariant criterion. All coefficients land in F_p.
pub fn supersingular_poly(p: u64) -> Result<FpPoly> {
    if p < 5 || !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let ctx = Fp2Ctx::new(p);
    let mut prod = vec![(1u64, 0u64)];
    for a in 0..p {
        for b in 0..p {
            let j0 = (a, b);
            if ctx.j_is_supersingular(j0) {
                // Multiply by (X - j0).
                let factor = vec![ctx.sub((0, 0), j0), (1, 0)];
                prod = ctx.poly_mul(&prod, &factor);
            }
        }
    }
    let mut coeffs = Vec::with_capacity(prod.len());
    for &(re, im) in &prod {
        assert_eq!(im, 0, "supersingular polynomial must have F_p coefficients");
        coeffs.push(re);
    }
    Ok(FpPoly::new(p, coeffs))
}

/// The decomposition p - 1 = 12m + 4*delta + 6*epsilon with
/// delta, epsilon in {0,1}, unique for primes p >= 5.
pub fn prime_decompose(p: u64) -> (i64, i64, i64) {
    let k = (p - 1) as i64;
    let (delta, eps) = match k.rem_euclid(12) {
        0 => (0, 0),
        4 => (1, 0),
        6 => (0, 1),
        10 => (1, 1),
        _ => unreachable!("p - 1 mod 12 for prime p >= 5"),
    };
    ((k - 4 * delta - 6 * eps) / 12, delta, eps)
}

/// The four Atkin-like classes reduced mod p, all congruent to each other
/// and to the supersingular polynomial from the independent oracle.
pub fn congruence_classes_check(p: u64) -> Result<CheckReport> {
    if p < 5 || !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let mut report = CheckReport::new();
    let (m, delta, eps) = prime_decompose(p);
    let x = Poly::x();
    let x1728 = Poly::new(vec![rint(-1728), rint(1)]);
    let xd = if delta == 1 { x.clone() } else { Poly::one() };
    let xe = if eps == 1 { x1728.clone() } else { Poly::one() };

    let candidates = [
        ("class2", atkin_poly_recursive(2, m + delta + eps)?),
        ("class6", xd.mul(&atkin_poly_recursive(6, m + eps)?)),
        ("class8", xe.mul(&atkin_poly_recursive(8, m + delta)?)),
        ("class0", xd.mul(&xe).mul(&atkin_poly_recursive(0, m + 1)?)),
    ];
    let reduced: Vec<(&str, FpPoly)> = candidates
        .iter()
        .map(|(name, poly)| Ok((*name, reduce_poly_mod_p(poly, p)?)))
        .collect::<Result<_>>()?;

    for pair in reduced.windows(2) {
        report.add(
            format!("congruence/p={p}/{}-vs-{}", pair[0].0, pair[1].0),
            pair[0].1 == pair[1].1,
        );
    }
    let ss = supersingular_poly(p)?;
    report.add(
        format!("congruence/p={p}/class2-vs-supersingular-oracle"),
        reduced[0].1 == ss,
    );
    report.add(
        format!("congruence/p={p}/oracle-degree"),
        ss.degree().map_or(0, |d| d as i64) == m + delta + eps,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        let a12 = atkin_poly_recursive(2, 1).unwrap();
        assert_eq!(reduce_poly_mod_p(&a12, 5).unwrap(), FpPoly::new(5, vec![0, 1]));
        assert_eq!(reduce_poly_mod_p(&a12, 7).unwrap(), FpPoly::new(7, vec![1, 1]));
        assert_eq!(
            reduce_poly_mod_p(&Poly::one(), 11).unwrap(),
            FpPoly::new(11, vec![1])
        );
        // Denominator divisible by p is rejected.
        let bad = Poly::new(vec![crate::rat::rat(1, 5)]);
        assert!(matches!(
            reduce_poly_mod_p(&bad, 5),
            Err(Error::NotPIntegral(5))
        ));
        assert!(matches!(
            reduce_poly_mod_p(&a12, 6),
            Err(Error::CompositeModulus(6))
        ));
    }

    #[test]
    fn small_supersingular_polys() {
        assert_eq!(supersingular_poly(5).unwrap(), FpPoly::new(5, vec![0, 1]));
        assert_eq!(supersingular_poly(7).unwrap(), FpPoly::new(7, vec![1, 1]));
        // Degree matches the weight decomposition of p - 1.
        for &p in &[5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let (m, d, e) = prime_decompose(p);
            let ss = supersingular_poly(p).unwrap();
            assert_eq!(ss.degree().unwrap() as i64, m + d + e, "p = {p}");
        }
    }

    #[test]
    fn congruence_theorem_small_primes() {
        for &p in &[5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
            let report = congruence_classes_check(p).unwrap();
            assert!(report.all_pass(), "p = {p}: {report}");
        }
    }
}
