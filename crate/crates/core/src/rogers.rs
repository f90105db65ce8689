//! Continued fractions attached to the moment sequence of the linear
//! functional: S-fraction via the quotient-difference algorithm, J-fraction
//! via the Stieltjes orthogonal-polynomial procedure, the phi-series
//! recurrence, and Rogers' addition formula for the Borel transform.

use crate::biseries::BiSeries;
use crate::error::{Error, Result};
use crate::extremal::normalizing_factor;
use crate::functional;
use crate::hypergeom::{pfq_series, scale_argument, HypParams};
use crate::poly::Poly;
use crate::rat::{factorial, rat, rint, Rat};
use crate::report::CheckReport;
use crate::series::{QSeries, Var};
use num_traits::{One, Zero};

/// h(x) = sum_n L(j^n) x^n, the moment generating series of the functional.
pub fn moment_series(prec: i64) -> QSeries {
    assert!(prec >= 1);
    let m = functional::moments(prec as usize);
    QSeries::from_coeffs(Var::X, 0, m)
}

/// Evaluate the moment functional on a polynomial: L(sum c_i x^i) = sum c_i m_i.
fn apply_moments(moments: &[Rat], p: &Poly) -> Rat {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * &moments[i])
        .sum()
}

/// J-fraction coefficients (alpha_1..alpha_depth, beta_1..beta_depth) from a
/// moment list, by the three-term recursion of the monic orthogonal
/// polynomials of the moment functional.
pub fn jfraction_from_moments(moments: &[Rat], depth: usize) -> Result<(Vec<Rat>, Vec<Rat>)> {
    assert!(
        moments.len() >= 2 * depth + 1,
        "need 2*depth + 1 moments, got {}",
        moments.len()
    );
    let mut alpha = Vec::with_capacity(depth);
    let mut beta = Vec::with_capacity(depth);
    let mut p_prev = Poly::zero();
    let mut p_cur = Poly::one();
    let mut norm_prev = Rat::one();
    for n in 0..=depth {
        let norm = apply_moments(moments, &p_cur.mul(&p_cur));
        if norm.is_zero() {
            return Err(Error::SingularHankel(n));
        }
        if n >= 1 {
            beta.push(&norm / &norm_prev);
        }
        if n < depth {
            let a = apply_moments(moments, &Poly::x().mul(&p_cur).mul(&p_cur)) / &norm;
            alpha.push(a.clone());
            let mut next = Poly::x().sub(&Poly::constant(a)).mul(&p_cur);
            if n >= 1 {
                next = next.sub(&p_prev.scale(&(&norm / &norm_prev)));
            }
            p_prev = p_cur;
            p_cur = next;
        }
        norm_prev = norm;
    }
    Ok((alpha, beta))
}

/// S-fraction coefficients e_1..e_{2*depth} of
/// h(x) = h(0)/(1 - e_1 x/(1 - e_2 x/(1 - ...)))
/// by the quotient-difference algorithm on the Taylor coefficients.
pub fn sfraction_from_series(h: &QSeries, depth: usize) -> Result<Vec<Rat>> {
    let c: Vec<Rat> = (0..h.prec()).map(|n| h.coeff(n)).collect();
    if c.is_empty() || c[0].is_zero() {
        return Err(Error::DomainError(
            "quotient-difference needs a unit constant term".into(),
        ));
    }
    if c.len() < 2 * depth + 1 {
        return Err(Error::InsufficientPrecision(format!(
            "quotient-difference at depth {depth} needs {} coefficients, got {}",
            2 * depth + 1,
            c.len()
        )));
    }
    // Superdiagonals: q[k][n] and e[k][n], each column one entry shorter.
    let mut q: Vec<Rat> = Vec::with_capacity(c.len() - 1);
    for n in 0..c.len() - 1 {
        if c[n].is_zero() {
            return Err(Error::QdBreakdown(1));
        }
        q.push(&c[n + 1] / &c[n]);
    }
    let mut e_prev: Vec<Rat> = vec![Rat::zero(); q.len()];
    let mut out = Vec::with_capacity(2 * depth);
    for k in 1..=depth {
        out.push(q[0].clone());
        let mut e: Vec<Rat> = Vec::with_capacity(q.len() - 1);
        for n in 0..q.len() - 1 {
            e.push(&q[n + 1] - &q[n] + &e_prev[n + 1]);
        }
        out.push(e[0].clone());
        if k < depth {
            let mut q_next = Vec::with_capacity(e.len() - 1);
            for n in 0..e.len() - 1 {
                if e[n].is_zero() {
                    return Err(Error::QdBreakdown(k));
                }
                q_next.push(&q[n + 1] * &e[n + 1] / &e[n]);
            }
            q = q_next;
            e_prev = e;
        }
    }
    Ok(out)
}

/// Both continued-fraction expansions of the moment series at once, with the
/// derived A-list A_0 = 1/m_0, A_{r+1} = beta_{r+1} A_r.
#[derive(Clone, Debug)]
pub struct CFCoeffs {
    pub e: Vec<Rat>,
    pub alpha: Vec<Rat>,
    pub beta: Vec<Rat>,
    pub a: Vec<Rat>,
}

impl CFCoeffs {
    pub fn compute(depth: usize) -> Result<CFCoeffs> {
        let moments = functional::moments(2 * depth + 1);
        CFCoeffs::from_moments(&moments, depth)
    }

    pub fn from_moments(moments: &[Rat], depth: usize) -> Result<CFCoeffs> {
        let h = QSeries::from_coeffs(Var::X, 0, moments.to_vec());
        let e = sfraction_from_series(&h, depth)?;
        let (alpha, beta) = jfraction_from_moments(moments, depth)?;
        let mut a = vec![moments[0].recip()];
        for b in &beta {
            let last = a.last().unwrap().clone();
            a.push(b * last);
        }
        Ok(CFCoeffs { e, alpha, beta, a })
    }

    /// The S/J compatibility relations:
    /// alpha_1 = e_1, alpha_n = e_{2n-2} + e_{2n-1} (n >= 2),
    /// beta_n = e_{2n-1} e_{2n}.
    pub fn consistency_check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let depth = self.alpha.len();
        for n in 1..=depth {
            let want = if n == 1 {
                self.e[0].clone()
            } else {
                &self.e[2 * n - 3] + &self.e[2 * n - 2]
            };
            report.add(format!("cfrac/alpha_{n}-from-e"), self.alpha[n - 1] == want);
            report.add(
                format!("cfrac/beta_{n}-from-e"),
                self.beta[n - 1] == &self.e[2 * n - 2] * &self.e[2 * n - 1],
            );
        }
        report
    }
}

/// Divide by b*x^2, checking that the two lowest coefficients vanish.
fn peel_x2(s: &QSeries, b: &Rat) -> QSeries {
    let s = s.normalized();
    assert!(s.coeff(0).is_zero() && s.coeff(1).is_zero());
    let coeffs = (2..s.prec()).map(|n| s.coeff(n) / b).collect();
    QSeries::from_coeffs(s.var(), 0, coeffs)
}

/// phi_r for an arbitrary moment list, from the descending recurrence
/// (1 - alpha_1 x) phi_0 = m_0 + beta_1 x^2 phi_1,
/// phi_{n-2} = (1 - alpha_n x) phi_{n-1} - beta_n x^2 phi_n  (n >= 2),
/// solved top-down for phi_n; phi_0 is the moment series itself.
pub fn phi_from_moments(moments: &[Rat], r: usize, prec: i64) -> Result<QSeries> {
    assert!(prec >= 1);
    let need = (prec + 2 * r as i64) as usize;
    assert!(
        moments.len() >= need.max(2 * r + 1),
        "phi_{r} at precision {prec} needs {} moments",
        need.max(2 * r + 1)
    );
    let h = QSeries::from_coeffs(Var::X, 0, moments[..need].to_vec());
    if r == 0 {
        return Ok(h);
    }
    let (alpha, beta) = jfraction_from_moments(moments, r)?;
    // Padded to full precision: a short coefficient window would cap the
    // precision of every product it enters.
    let one_minus = |a: &Rat| {
        let mut coeffs = vec![Rat::zero(); need];
        coeffs[0] = Rat::one();
        coeffs[1] = -a.clone();
        QSeries::from_coeffs(Var::X, 0, coeffs)
    };
    let m0 = QSeries::constant(Var::X, moments[0].clone(), h.prec());
    let mut prev = h.clone();
    let mut cur = peel_x2(&one_minus(&alpha[0]).mul(&h).sub(&m0), &beta[0]);
    for n in 2..=r {
        let next = peel_x2(
            &one_minus(&alpha[n - 1]).mul(&cur).sub(&prev),
            &beta[n - 1],
        );
        prev = cur;
        cur = next;
    }
    Ok(cur.truncate(prec))
}

/// phi_r of the Atkin moment functional, by the recurrence.
pub fn phi_series(r: usize, prec: i64) -> Result<QSeries> {
    let moments = functional::moments((prec + 2 * r as i64).max(2 * r as i64 + 1) as usize);
    phi_from_moments(&moments, r, prec)
}

/// phi_r as a ratio of Gauss hypergeometric series:
/// 2F1(r + 5/12, r + 13/12; 2r + 1; 1728x) / 2F1(1/12, 5/12; 1; 1728x).
pub fn phi_series_hypergeom(r: usize, prec: i64) -> Result<QSeries> {
    let ri = rint(r as i64);
    let num = pfq_series(
        &HypParams::f21(&ri + rat(5, 12), &ri + rat(13, 12), rint(2 * r as i64 + 1))?,
        prec,
    );
    let den = pfq_series(&HypParams::f21(rat(1, 12), rat(5, 12), Rat::one())?, prec);
    let scale = |s: &QSeries| scale_argument(s, &rint(1728)).with_var(Var::X);
    Ok(scale(&num).mul(&scale(&den).inverse()?))
}

/// h_r(x) = Borel(x^r phi_r(x)) for the given moment list.
fn h_r_from_moments(moments: &[Rat], r: usize, prec: i64) -> Result<QSeries> {
    let phi = phi_from_moments(moments, r, (prec - r as i64).max(1))?;
    let coeffs = (0..phi.prec()).map(|n| phi.coeff(n)).collect();
    Ok(QSeries::from_coeffs(Var::X, r as i64, coeffs).borel())
}

/// B(h)(x + y) as a two-variable truncation: the (i, j) coefficient is
/// m_{i+j} / (i! j!).
fn borel_sum_biseries(moments: &[Rat], bx: i64, by: i64) -> BiSeries {
    assert!(moments.len() as i64 >= bx + by - 1);
    let coeffs = (0..bx)
        .map(|i| {
            let fi = factorial(i as u32);
            let row = (0..by)
                .map(|j| {
                    let idx = (i + j) as usize;
                    if idx < moments.len() {
                        &moments[idx] / (&fi * factorial(j as u32))
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            QSeries::from_coeffs(Var::Z, 0, row)
        })
        .collect();
    BiSeries::new(Var::X, 0, coeffs)
}

/// One side-by-side instance of the addition formula
/// B(h)(x+y) = A_0 B(h)(x) B(h)(y) + sum_{r>=1} A_r h_r(x) h_r(y)
/// truncated at bi-order (bx, by), with r_max terms on the right.
fn addition_identity(moments: &[Rat], r_max: usize, bx: i64, by: i64) -> Result<bool> {
    let lhs = borel_sum_biseries(moments, bx, by);
    // Only the J-fraction betas feed the A-list; the S-fraction may not even
    // exist (e.g. an even series breaks the quotient-difference scheme).
    let (_, beta) = if r_max == 0 {
        (vec![], vec![])
    } else {
        jfraction_from_moments(moments, r_max)?
    };
    let mut a_list = vec![moments[0].recip()];
    for b in &beta {
        let last = a_list.last().unwrap().clone();
        a_list.push(b * last);
    }
    let mut rhs = BiSeries::zero(Var::X, bx, Var::Z, by);
    for r in 0..=r_max {
        let hx = h_r_from_moments(moments, r, bx)?;
        let hy = hx.truncate(by.min(hx.prec())).with_var(Var::Z);
        let term = BiSeries::from_outer(&hx, Var::Z, by)
            .scale_inner(&hy)
            .scale(&a_list[r]);
        rhs = rhs.add(&term);
    }
    Ok(lhs.eq_to_prec(&rhs))
}

/// Rogers' addition formula, exercised three ways: the terminating cosine
/// instance cos(x+y) = cos x cos y - sin x sin y, the identification of the
/// A-list with the extremal-form normalizing constants, and the Atkin moment
/// functional itself at bi-order (5, 5).
pub fn addition_formula_check(prec: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let order = prec.max(9);

    // h = 1/(1 + x^2) has moments 1, 0, -1, 0, 1, ...; its J-fraction
    // terminates after one step, so two terms on the right are exact.
    let cos_moments: Vec<Rat> = (0..2 * order)
        .map(|n| {
            if n % 2 == 1 {
                Rat::zero()
            } else if n % 4 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            }
        })
        .collect();
    report.add(
        "cfrac/addition/cosine",
        addition_identity(&cos_moments, 1, order, order).unwrap_or(false),
    );

    let cf = CFCoeffs::compute(4).expect("positive-definite moments");
    let mut a_match = true;
    for r in 0..=4usize {
        a_match &= cf.a[r] == normalizing_factor(r as i64, 2).expect("valid index");
    }
    report.add("cfrac/addition/a-list-vs-normalizing-constants", a_match);

    let moments = functional::moments(18);
    report.add(
        "cfrac/addition/atkin-bi-order-5",
        addition_identity(&moments, 4, 5, 5).unwrap_or(false),
    );
    report
}

/// s * Laplace(Borel(h))(s) = h(1/s): the two transforms are mutually
/// inverse on the coefficient level.
pub fn borel_laplace_round_trip(h: &QSeries) -> bool {
    let lap = h.borel().laplace();
    (0..h.prec()).all(|n| lap.coeff(n + 1) == h.coeff(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atkin::{recursion_a, recursion_coeffs};

    #[test]
    fn jfraction_leading_values() {
        let moments = functional::moments(11);
        let (alpha, beta) = jfraction_from_moments(&moments, 5).unwrap();
        assert_eq!(alpha[0], rint(720));
        assert_eq!(beta[0], rint(393120));
        assert_eq!(alpha[1], rint(920));
        // alpha_{n+1}, beta_{n+1} match the three-term recursion data of the
        // orthogonal family itself, shifted by one index.
        assert_eq!(alpha[1], recursion_a(2, 1).unwrap());
        for n in 2..=4usize {
            let (a, b) = recursion_coeffs(2, n as i64).unwrap();
            assert_eq!(alpha[n], a, "alpha index {n}");
            assert_eq!(beta[n - 1], b, "beta index {n}");
        }
    }

    #[test]
    fn sfraction_leading_values_and_consistency() {
        let cf = CFCoeffs::compute(6).unwrap();
        assert_eq!(cf.e[0], rint(720));
        assert_eq!(cf.e[1], rint(546));
        assert_eq!(cf.e[2], rint(374));
        let report = cf.consistency_check();
        assert!(report.all_pass(), "{report}");
        assert_eq!(cf.a[0], rint(1));
        assert_eq!(cf.a[1], rint(393120));
    }

    #[test]
    fn qd_error_paths() {
        // Zero constant term is rejected outright.
        let bad = QSeries::from_coeffs(Var::X, 0, vec![rint(0), rint(1), rint(1)]);
        assert!(matches!(
            sfraction_from_series(&bad, 1),
            Err(Error::DomainError(_))
        ));
        // An even series has zero quotient pivots.
        let even = QSeries::from_coeffs(Var::X, 0, vec![rint(1), rint(0), rint(1), rint(0), rint(1)]);
        assert!(matches!(
            sfraction_from_series(&even, 2),
            Err(Error::QdBreakdown(_))
        ));
        // The cosine moments have a vanishing Hankel minor at depth 2.
        let cos_moments: Vec<Rat> = vec![rint(1), rint(0), rint(-1), rint(0), rint(1)];
        assert!(matches!(
            jfraction_from_moments(&cos_moments, 2),
            Err(Error::SingularHankel(2))
        ));
    }

    #[test]
    fn phi_routes_agree() {
        let h = moment_series(12);
        assert!(phi_series(0, 12).unwrap().eq_to_prec(&h));
        let phi1 = phi_series(1, 12).unwrap();
        assert_eq!(phi1.coeff(0), rint(1));
        // phi_1 solved directly from the first recurrence step.
        let mut lin_coeffs = vec![rint(0); 14];
        lin_coeffs[0] = rint(1);
        lin_coeffs[1] = rint(-720);
        let lin = QSeries::from_coeffs(Var::X, 0, lin_coeffs);
        let h14 = moment_series(14);
        let direct = peel_x2(
            &lin.mul(&h14).sub(&QSeries::constant(Var::X, rint(1), 14)),
            &rint(393120),
        );
        assert!(phi1.eq_to_prec(&direct.truncate(12)));
        for r in 0..=4usize {
            let rec = phi_series(r, 12).unwrap();
            let hyp = phi_series_hypergeom(r, 12).unwrap();
            assert!(rec.eq_to_prec(&hyp), "phi_{r} route mismatch");
        }
    }

    #[test]
    fn addition_formula() {
        let report = addition_formula_check(9);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn borel_laplace() {
        assert!(borel_laplace_round_trip(&moment_series(10)));
    }
}
