//! Weakly holomorphic basis forms f_{k,l}, generalized Faber polynomials
//! F_{k,n}, their expansions in the Atkin-like polynomial families, the
//! Poincare-style polynomials H_n, generating-series identities for their
//! inner products, and the inverse series between q and t = 1/j.

use crate::atkin::{atkin_poly_recursive, degree_of, resolve_alias, Family};
use crate::biseries::BiSeries;
use crate::error::{Error, Result};
use crate::extremal::{g_form, normalizing_factor};
use crate::functional::{apply_functional, class_weight_poly, inner_product};
use crate::hypergeom::{g21_series, pfq_series, scale_argument, HypParams};
use crate::linalg;
use crate::modforms::{delta, e2, e4, e6, hecke_weight_k, j_series, recognize_poly_in_j};
use crate::poly::Poly;
use crate::rat::{factorial, rat, rint, sigma, Rat};
use crate::report::CheckReport;
use crate::series::{binomial_series, QSeries, Var};
use num_traits::{One, Zero};

/// The unique decomposition of an even weight as 12m + 4*delta + 6*epsilon
/// with delta in {0,1,2} and epsilon in {0,1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightDecomp {
    pub k: i64,
    pub m: i64,
    pub delta: i64,
    pub epsilon: i64,
}

pub fn weight_decompose(k: i64) -> Result<WeightDecomp> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    let (delta, epsilon) = match k.rem_euclid(12) {
        0 => (0, 0),
        2 => (2, 1),
        4 => (1, 0),
        6 => (0, 1),
        8 => (2, 0),
        10 => (1, 1),
        _ => unreachable!(),
    };
    let m = (k - 4 * delta - 6 * epsilon) / 12;
    Ok(WeightDecomp { k, m, delta, epsilon })
}

impl WeightDecomp {
    /// The polynomial class 4*delta + 6*epsilon shared with the Atkin-like
    /// families.
    pub fn class(&self) -> i64 {
        4 * self.delta + 6 * self.epsilon
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaberPoly {
    pub k: i64,
    pub n: i64,
    pub poly: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaberRoute {
    /// Coefficient extraction from the two-variable generating function.
    GenFunc,
    /// Linear solve for the gap conditions on the q-expansion.
    Recognition,
    /// Truncated t-series product of hypergeometric factors.
    Hypergeometric,
}

fn faber_poly_genfunc(k: i64, n: i64) -> Poly {
    let d = weight_decompose(k).expect("even weight");
    let target = n - d.m;
    let w = target.max(0) + 2 * d.m.abs() + n + 6;
    let jinv = j_series(w).inverse().unwrap().with_var(Var::P);
    let pref = e4(w)
        .pow(2 - d.delta)
        .unwrap()
        .mul(&e6(w).pow(1 - d.epsilon).unwrap())
        .mul(&delta(w).normalized().pow(-(d.m + 1)).unwrap())
        .with_var(Var::P);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut cur = pref.mul(&jinv);
    for _ in 0..=n {
        coeffs.push(cur.coeff(target));
        cur = cur.mul(&jinv);
    }
    Poly::new(coeffs)
}

fn faber_poly_recognition(k: i64, n: i64) -> Poly {
    let d = weight_decompose(k).expect("even weight");
    if n == 0 {
        return Poly::one();
    }
    let ell = n - d.m;
    let w = d.m.abs() + n + 6;
    let base = e4(w)
        .pow(d.delta)
        .unwrap()
        .mul(&e6(w).pow(d.epsilon).unwrap())
        .mul(&delta(w).normalized().pow(d.m).unwrap());
    let j = j_series(w);
    // The gap conditions kill coefficients of q^{-ell+1}..q^{m}; the monic
    // leading term provides the right-hand side.
    let mut powers = Vec::with_capacity(n as usize + 1);
    let mut cur = base.clone();
    for _ in 0..=n {
        powers.push(cur.clone());
        cur = cur.mul(&j);
    }
    let rows: Vec<i64> = (-ell + 1..=d.m).collect();
    let a: Vec<Vec<Rat>> = rows
        .iter()
        .map(|&e| (0..n as usize).map(|i| powers[i].coeff(e)).collect())
        .collect();
    let b: Vec<Rat> = rows
        .iter()
        .map(|&e| -powers[n as usize].coeff(e))
        .collect();
    let mut coeffs = linalg::solve(&a, &b).expect("gap conditions are nonsingular");
    coeffs.push(Rat::one());
    Poly::new(coeffs)
}

fn faber_poly_hypergeom(k: i64, n: i64) -> Poly {
    let d = weight_decompose(k).expect("even weight");
    let ell = n - d.m;
    let prec = n + 2;
    let f1 = scale_argument(
        &pfq_series(&HypParams::f21(rat(1, 12), rat(5, 12), Rat::one()).unwrap(), prec),
        &rint(1728),
    )
    .with_var(Var::T);
    let g1 = scale_argument(&g21_series(&rat(1, 12), &rat(5, 12), prec).unwrap(), &rint(1728))
        .with_var(Var::T);
    let root = binomial_series(
        &QSeries::monomial(Var::T, 1, prec).scale(&rint(-1728)),
        &rat(-d.epsilon, 2),
    )
    .unwrap();
    let series = root
        .mul(&f1.pow(-k).unwrap())
        .mul(&g1.div(&f1).unwrap().scale(&rint(-ell)).exp().unwrap());
    // Coefficient of t^i lands at X^{n-i}.
    let coeffs: Vec<Rat> = (0..=n).rev().map(|i| series.coeff(i)).collect();
    Poly::new(coeffs)
}

pub fn faber_poly(k: i64, n: i64, route: FaberRoute) -> Result<FaberPoly> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    let poly = match route {
        FaberRoute::GenFunc => faber_poly_genfunc(k, n),
        FaberRoute::Recognition => faber_poly_recognition(k, n),
        FaberRoute::Hypergeometric => faber_poly_hypergeom(k, n),
    };
    Ok(FaberPoly { k, n, poly })
}

/// The unique weakly holomorphic form of weight k with expansion
/// q^{-ell} + O(q^{m+1}).
pub fn faber_form(k: i64, ell: i64, prec: i64) -> Result<QSeries> {
    let d = weight_decompose(k)?;
    if ell < -d.m {
        return Err(Error::IndexBelowRange(ell, -d.m));
    }
    let n = ell + d.m;
    let f = faber_poly(k, n, FaberRoute::GenFunc)?;
    let w = prec + n + 2 * d.m.abs() + 4;
    let base = e4(w)
        .pow(d.delta)
        .unwrap()
        .mul(&e6(w).pow(d.epsilon).unwrap())
        .mul(&delta(w).normalized().pow(d.m).unwrap());
    let series = base.mul(&f.poly.eval_series(&j_series(w)).normalized()).truncate(prec);
    debug_assert!(series.coeff(-ell).is_one());
    debug_assert!((-ell + 1..=d.m.min(prec - 1)).all(|e| series.coeff(e).is_zero()));
    Ok(series)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    /// Coefficients of F_k in the Atkin-like family of its class.
    Omega,
    /// Coefficients of F_{2-k} in the same family.
    BigOmega,
}

#[derive(Clone, Debug)]
pub struct ExpansionCoeffs {
    pub kind: CoeffKind,
    pub k: i64,
    pub n: i64,
    /// (index r, coefficient), ordered by increasing degree of A_{r,class}.
    pub values: Vec<(i64, Rat)>,
}

impl ExpansionCoeffs {
    pub fn value(&self, r: i64) -> Rat {
        self.values
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero)
    }
}

/// Indices r with 0 <= deg A_{r,class} <= n, in increasing degree order.
fn class_index_range(class: i64, n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for r in -2..=n + 2 {
        if let Ok((rc, nc)) = resolve_alias(class, r) {
            let d = degree_of(Family::A, rc, nc);
            let zero_member = rc == 0 && nc == 0;
            if !zero_member && (0..=n).contains(&d) {
                out.push(r);
            }
        }
    }
    out
}

/// Expansion coefficients of the generalized Faber polynomial in the
/// Atkin-like family of its class, computed by inner products against the
/// orthogonality relation and cross-checked by triangular elimination.
pub fn expansion_coeffs(kind: CoeffKind, k: i64, n: i64) -> Result<ExpansionCoeffs> {
    let d = weight_decompose(k)?;
    let class = d.class();
    let target_weight = match kind {
        CoeffKind::Omega => k,
        CoeffKind::BigOmega => 2 - k,
    };
    let f = faber_poly(target_weight, n, FaberRoute::GenFunc)?.poly;
    let weight = class_weight_poly(d.delta, d.epsilon);
    let sign = if d.epsilon == 1 { Rat::one() } else { -Rat::one() };
    let indices = class_index_range(class, n);

    let mut values = Vec::with_capacity(indices.len());
    for &r in &indices {
        let a = atkin_poly_recursive(class, r)?;
        let num = apply_functional(&weight.mul(&a).mul(&f));
        values.push((r, &sign * num / normalizing_factor(r, class)?));
    }

    // Oracle: peel leading coefficients degree by degree.
    let mut rem = f.clone();
    for &(r, ref v) in values.iter().rev() {
        let a = atkin_poly_recursive(class, r)?;
        let d_a = a.degree().unwrap();
        let lead = rem.coeff(d_a);
        assert_eq!(&lead, v, "expansion routes disagree at index {r}");
        rem = rem.sub(&a.scale(&lead));
    }
    assert!(rem.is_zero(), "expansion does not close");

    Ok(ExpansionCoeffs { kind, k, n, values })
}

/// The column generating functions of the expansion coefficients: for a
/// fixed index ell they are Fourier coefficients of twisted extremal forms.
pub fn fourier_coeff_theorem_check(ell: i64, k: i64, prec: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let d = weight_decompose(k).expect("even weight");
    let class = d.class();
    let w = 12 * ell + class;
    assert!(w >= 2 && w != 4 && w % 2 == 0, "target weight out of domain");

    let wp = prec + 2 * (ell.abs() + d.m.abs()) + 6;
    let g = g_form(w, wp).unwrap().with_var(Var::P).normalized();
    let dl = delta(wp).normalized().with_var(Var::P);

    // Small-index side: sum_n omega_{k,n}(ell) p^{n-m}.
    let count = prec + d.m;
    let mut coeffs = Vec::new();
    for n in 0..count.max(0) {
        coeffs.push(expansion_coeffs(CoeffKind::Omega, k, n).unwrap().value(ell));
    }
    let lhs = QSeries::from_coeffs(Var::P, -d.m, coeffs);
    let rhs = e4(wp)
        .pow(2 - 2 * d.delta)
        .unwrap()
        .mul(&e6(wp).pow(1 - 2 * d.epsilon).unwrap())
        .with_var(Var::P)
        .mul(&dl.pow(-(ell + d.m + 1)).unwrap())
        .mul(&g)
        .truncate(prec);
    report.add(
        format!("fourier-coeff/omega/k={k}/l={ell}"),
        lhs.eq_to_prec(&rhs),
    );

    // Dual-weight side: sum_n Omega_{2-k,n}(ell) p^{n+m+1}.
    let count2 = prec - d.m - 1;
    let mut coeffs2 = Vec::new();
    for n in 0..count2.max(0) {
        coeffs2.push(expansion_coeffs(CoeffKind::BigOmega, k, n).unwrap().value(ell));
    }
    let lhs2 = QSeries::from_coeffs(Var::P, d.m + 1, coeffs2);
    let rhs2 = dl.pow(d.m - ell).unwrap().mul(&g).truncate(prec);
    report.add(
        format!("fourier-coeff/big-omega/k={k}/l={ell}"),
        lhs2.eq_to_prec(&rhs2),
    );

    if k == 14 {
        // Closed form for the subdiagonal entries.
        let ok = (2..=6).all(|n| {
            expansion_coeffs(CoeffKind::Omega, 14, n).unwrap().value(n - 2)
                == rat(48 * (n - 1) * (5 * n + 1), 2 * n - 1)
        });
        report.add("fourier-coeff/subdiagonal-closed-form", ok);
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corollary {
    /// (n+1) F_{2,n} as a convolution of dual-weight families.
    WeightTwoConvolution,
    /// Convolution identity mixing omega coefficients and Faber polynomials.
    OmegaFaberProduct,
    /// Convolution identity between the two coefficient families.
    OmegaOmegaProduct,
    /// 1/(j(p)-j(q)) as p times an exponential of weight-zero polynomials.
    DenominatorFormula,
}

/// exp of a bivariate series with positive outer valuation.
fn biseries_exp(b: &BiSeries) -> BiSeries {
    assert!(b.valuation() >= 1 || b.coeff(0).is_zero_to_prec());
    let one = BiSeries::from_outer(
        &QSeries::one(b.outer_var(), b.prec()),
        b.inner_var(),
        b.inner_prec(),
    );
    let mut acc = one.clone();
    let mut term = one;
    for k in 1..b.prec() {
        term = term.mul(b);
        acc = acc.add(&term.scale(&factorial(k as u32).recip()));
    }
    acc
}

pub fn corollary_checks(which: Corollary, prec: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let fp = |k: i64, n: i64| faber_poly(k, n, FaberRoute::GenFunc).unwrap().poly;
    match which {
        Corollary::WeightTwoConvolution => {
            for &k in &[-12, 0, 2, 14, 26] {
                for n in 0..=4i64 {
                    let lhs = fp(2, n).scale(&rint(n + 1));
                    let mut rhs = Poly::zero();
                    for r in 0..=n {
                        rhs = rhs.add(&fp(2 - k, n - r).mul(&fp(k, r)));
                    }
                    report.add(format!("cor-convolution/k={k}/n={n}"), lhs == rhs);
                }
            }
        }
        Corollary::OmegaFaberProduct => {
            for &ell in &[-1i64, 0, 1] {
                for n in 0..=3i64 {
                    let k = 14;
                    let mut lhs = Poly::zero();
                    let mut rhs = Poly::zero();
                    for dd in 0..=n {
                        let om = expansion_coeffs(CoeffKind::Omega, k, dd).unwrap().value(ell);
                        lhs = lhs.add(&fp(2 - k, n - dd).scale(&om));
                        let big = expansion_coeffs(CoeffKind::BigOmega, k, n - dd)
                            .unwrap()
                            .value(ell);
                        rhs = rhs.add(&fp(k, dd).scale(&big));
                    }
                    report.add(format!("cor-mixed-convolution/l={ell}/n={n}"), lhs == rhs);
                }
            }
        }
        Corollary::OmegaOmegaProduct => {
            let k = 14;
            for &(ell, ellp) in &[(0i64, 1i64), (-1, 1), (0, 2)] {
                for n in 0..=2i64 {
                    let mut lhs = Rat::zero();
                    let mut rhs = Rat::zero();
                    for dd in 0..=n {
                        lhs += expansion_coeffs(CoeffKind::Omega, k, dd).unwrap().value(ell)
                            * expansion_coeffs(CoeffKind::Omega, 2 - k, n - dd)
                                .unwrap()
                                .value(ellp);
                        rhs += expansion_coeffs(CoeffKind::BigOmega, k, n - dd)
                            .unwrap()
                            .value(ell)
                            * expansion_coeffs(CoeffKind::BigOmega, 2 - k, dd)
                                .unwrap()
                                .value(ellp);
                    }
                    report.add(
                        format!("cor-coeff-convolution/l={ell}/l'={ellp}/n={n}"),
                        lhs == rhs,
                    );
                }
            }
        }
        Corollary::DenominatorFormula => {
            let (bp, bq) = (prec, prec);
            let jp = j_series(bp + 2).with_var(Var::P);
            let jq = j_series(bq + 2);
            let diff = BiSeries::from_outer(&jp, Var::Q, bq + 2)
                .sub(&BiSeries::from_inner(&jq, Var::P, bp + 2));
            let lhs = diff.inverse().unwrap();
            let mut expo = BiSeries::zero(Var::P, bp + 1, Var::Q, bq + 2 + 8 * bp);
            for n in 1..bp + 1 {
                // F_{0,n}(j) has valuation -n; the repeated products in the
                // exponential then consume inner precision proportional to
                // the accumulated valuations, so leave generous headroom.
                let inner = fp(0, n)
                    .eval_series(&j_series(bq + n + 8 * bp))
                    .scale(&rint(n).recip());
                expo = expo.add(
                    &BiSeries::from_inner(&inner, Var::P, bp + 1).shift(n),
                );
            }
            let rhs = biseries_exp(&expo).shift(1);
            report.add(
                format!("denominator-formula/bi-order-({prec},{prec})"),
                lhs.truncate(prec).eq_to_prec(&rhs.truncate(prec)),
            );
        }
    }
    report
}

/// H_n: the weight-zero Poincare-style polynomials, H_0 = 1 and
/// H_n = F_{0,n} + 24 sigma_1(n). Cross-checked against the Hecke route
/// n (j - 720)|T_n.
pub fn h_poly(n: i64) -> Poly {
    assert!(n >= 0);
    if n == 0 {
        return Poly::one();
    }
    let p = faber_poly(0, n, FaberRoute::GenFunc)
        .unwrap()
        .poly
        .add(&Poly::constant(rint(24) * Rat::from(sigma(n as u64, 1))));
    debug_assert_eq!(p, h_poly_hecke(n).unwrap());
    p
}

/// n (j - 720)|_0 T_n recognized as a polynomial in j.
pub fn h_poly_hecke(n: i64) -> Result<Poly> {
    let prec = n * (n + 2) + 2;
    let base = j_series(prec).sub(&QSeries::constant(Var::Q, rint(720), prec));
    let image = hecke_weight_k(&base, n, 0)?;
    Ok(recognize_poly_in_j(&image.scale(&rint(n)))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingSeries {
    /// Generating series of (H_n, A_l).
    AtkinPairing,
    /// Generating series of (H_n, H_l) for fixed l.
    PoincarePairingSingle,
    /// Double generating series of (H_n, H_l).
    PoincarePairingDouble,
    /// Double generating series of (F_{0,n}, F_{0,l}) as a sum over classes.
    FaberPairingDouble,
    /// The same double series as a closed two-nome rational expression.
    PairingClosedForm,
}

/// G_{12r+14}(p) Delta(p)^{-r-1} scaled by N_{r+1,2}, as used in the
/// inner-product generating series.
fn scaled_g_over_delta(weight: i64, dpow: i64, prec: i64) -> QSeries {
    let w = prec + 2 * dpow.abs() + 4;
    g_form(weight, w)
        .unwrap()
        .with_var(Var::P)
        .normalized()
        .mul(&delta(w).normalized().with_var(Var::P).pow(-dpow).unwrap())
        .truncate(prec)
}

pub fn pairing_series(which: PairingSeries, prec: i64) -> CheckReport {
    let mut report = CheckReport::new();
    match which {
        PairingSeries::AtkinPairing => {
            for ell in 0..=3i64 {
                let a = atkin_poly_recursive(2, ell).unwrap();
                let coeffs: Vec<Rat> =
                    (0..prec).map(|n| inner_product(&h_poly(n), &a)).collect();
                let lhs = QSeries::from_coeffs(Var::P, 0, coeffs);
                let rhs = if ell == 0 {
                    QSeries::one(Var::P, prec)
                } else {
                    scaled_g_over_delta(12 * ell + 2, ell, prec)
                        .scale(&normalizing_factor(ell, 2).unwrap())
                };
                report.add(format!("series/poincare-vs-atkin/l={ell}"), lhs.eq_to_prec(&rhs));
            }
        }
        PairingSeries::PoincarePairingSingle => {
            for ell in 1..=3i64 {
                let hl = h_poly(ell);
                let coeffs: Vec<Rat> =
                    (1..prec).map(|n| inner_product(&h_poly(n), &hl)).collect();
                let lhs = QSeries::from_coeffs(Var::P, 1, coeffs);
                let om = expansion_coeffs(CoeffKind::BigOmega, 2, ell).unwrap();
                let mut rhs = QSeries::zero(Var::P, prec);
                for r in 0..ell {
                    rhs = rhs.add(
                        &scaled_g_over_delta(12 * r + 14, r + 1, prec)
                            .scale(&(om.value(r) * normalizing_factor(r + 1, 2).unwrap())),
                    );
                }
                report.add(format!("series/poincare-pair/l={ell}"), lhs.eq_to_prec(&rhs));
            }
        }
        PairingSeries::PoincarePairingDouble | PairingSeries::FaberPairingDouble => {
            // Both sides as coefficient matrices over the bi-window.
            let b = prec;
            let (lo, wshift, dshift, nshift) = match which {
                PairingSeries::PoincarePairingDouble => (1i64, 14i64, 1i64, 1i64),
                _ => (0, 2, 0, 0),
            };
            let polys: Vec<Poly> = (lo..=b)
                .map(|n| match which {
                    PairingSeries::PoincarePairingDouble => h_poly(n),
                    _ => faber_poly(0, n, FaberRoute::GenFunc).unwrap().poly,
                })
                .collect();
            let series: Vec<QSeries> = (0..=b)
                .map(|r| scaled_g_over_delta(12 * r + wshift, r + dshift, b + 1))
                .collect();
            let mut ok = true;
            for (i, f) in polys.iter().enumerate() {
                for (l, g2) in polys.iter().enumerate() {
                    let n = lo + i as i64;
                    let ell = lo + l as i64;
                    let lhs = inner_product(f, g2);
                    let mut rhs = Rat::zero();
                    for (r, s) in series.iter().enumerate() {
                        rhs += normalizing_factor(r as i64 + nshift, 2).unwrap()
                            * s.coeff(n)
                            * s.coeff(ell);
                    }
                    ok &= lhs == rhs;
                }
            }
            let name = match which {
                PairingSeries::PoincarePairingDouble => "series/poincare-double",
                _ => "series/faber-double-vs-class-sum",
            };
            report.add(format!("{name}/bi-order-({b},{b})"), ok);
        }
        PairingSeries::PairingClosedForm => {
            let b = prec;
            let (bp, bq) = (b + 2, b + 2);
            let lhs_coeffs: Vec<QSeries> = (0..bp)
                .map(|n| {
                    let f = faber_poly(0, n, FaberRoute::GenFunc).unwrap().poly;
                    let row: Vec<Rat> = (0..bq)
                        .map(|l| {
                            let g2 = faber_poly(0, l, FaberRoute::GenFunc).unwrap().poly;
                            inner_product(&f, &g2)
                        })
                        .collect();
                    QSeries::from_coeffs(Var::Q, 0, row)
                })
                .collect();
            let lhs = BiSeries::new(Var::P, 0, lhs_coeffs);
            let jp_inv = j_series(bp + 1).inverse().unwrap().with_var(Var::P);
            let jq_inv = j_series(bq + 1).inverse().unwrap();
            let den = BiSeries::from_outer(&jp_inv, Var::Q, bq + 1)
                .sub(&BiSeries::from_inner(&jq_inv, Var::P, bp + 1));
            let psi_pq = BiSeries::from_outer(
                &e2(bp + 1).div(&j_series(bp + 1)).unwrap().with_var(Var::P),
                Var::Q,
                bq + 1,
            )
            .scale_inner(&e6(bq + 1).div(&e4(bq + 1)).unwrap());
            let psi_qp = BiSeries::from_inner(
                &e2(bq + 1).div(&j_series(bq + 1)).unwrap(),
                Var::P,
                bp + 1,
            )
            .mul(&BiSeries::from_outer(
                &e6(bp + 1).div(&e4(bp + 1)).unwrap().with_var(Var::P),
                Var::Q,
                bq + 1,
            ));
            let num = psi_pq.sub(&psi_qp);
            let prod = lhs.mul(&den).truncate(b);
            report.add(
                format!("series/faber-double-closed-form/bi-order-({b},{b})"),
                prod.eq_to_prec(&num.truncate(b)),
            );
        }
    }
    report
}

/// t(q) = 1/j and its compositional inverse q(t), expressed through the
/// logarithmic hypergeometric companion.
pub fn inverse_series(prec: i64) -> (QSeries, QSeries) {
    assert!(prec >= 2);
    let t_of_q = j_series(prec + 1).inverse().unwrap().truncate(prec);
    let f1 = scale_argument(
        &pfq_series(&HypParams::f21(rat(1, 12), rat(5, 12), Rat::one()).unwrap(), prec),
        &rint(1728),
    )
    .with_var(Var::T);
    let g1 = scale_argument(&g21_series(&rat(1, 12), &rat(5, 12), prec).unwrap(), &rint(1728))
        .with_var(Var::T);
    let q_of_t = QSeries::monomial(Var::T, 1, prec + 1)
        .mul(&g1.div(&f1).unwrap().exp().unwrap())
        .truncate(prec);
    debug_assert!(q_of_t
        .compose(&t_of_q.clone().with_var(Var::Q))
        .unwrap()
        .eq_to_prec(&QSeries::monomial(Var::Q, 1, prec)));
    (t_of_q, q_of_t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_decomposition() {
        assert_eq!(
            weight_decompose(14).unwrap(),
            WeightDecomp { k: 14, m: 0, delta: 2, epsilon: 1 }
        );
        assert_eq!(
            weight_decompose(0).unwrap(),
            WeightDecomp { k: 0, m: 0, delta: 0, epsilon: 0 }
        );
        assert_eq!(
            weight_decompose(2).unwrap(),
            WeightDecomp { k: 2, m: -1, delta: 2, epsilon: 1 }
        );
        assert!(weight_decompose(3).is_err());
    }

    #[test]
    fn faber_poly_values_and_routes() {
        let f142 = faber_poly(14, 2, FaberRoute::GenFunc).unwrap().poly;
        assert_eq!(f142, Poly::new(vec![rint(339120), rint(-1464), rint(1)]));
        let f141 = faber_poly(14, 1, FaberRoute::GenFunc).unwrap().poly;
        assert_eq!(f141, Poly::new(vec![rint(-720), rint(1)]));
        for &k in &[-12i64, 0, 2, 14, 26] {
            for n in 0..=6i64 {
                let a = faber_poly(k, n, FaberRoute::GenFunc).unwrap().poly;
                let b = faber_poly(k, n, FaberRoute::Recognition).unwrap().poly;
                let c = faber_poly(k, n, FaberRoute::Hypergeometric).unwrap().poly;
                assert_eq!(a, b, "recognition route k={k} n={n}");
                assert_eq!(a, c, "hypergeometric route k={k} n={n}");
                assert!(a.is_monic() && a.is_integral(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn faber_coefficient_closed_forms() {
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
            let c1 = f.coeff(n as usize - 1);
            assert_eq!(
                c1,
                rint(-744 * ell - 12 * (5 * k - 72 * d.epsilon)),
                "linear coefficient k={k} l={ell}"
            );
            let e = d.epsilon;
            let c2_expect = rint(276768) * rint(ell) * rint(ell)
                + rint(36) * rint(1240 * k - 17856 * e - 13157) * rint(ell)
                + rint(36)
                    * (rint(50 * k * k) - rint(5 * (288 * e + 211) * k) + rint(31104 * e));
            assert_eq!(f.coeff(n as usize - 2), c2_expect, "quadratic coefficient k={k} l={ell}");
        }
    }

    #[test]
    fn faber_form_expansions() {
        let f01 = faber_form(0, 1, 6).unwrap();
        // j - 744
        assert_eq!(f01.coeff(-1), rint(1));
        assert_eq!(f01.coeff(0), rint(0));
        assert_eq!(f01.coeff(1), rint(196884));
        let f140 = faber_form(14, 0, 8).unwrap();
        let w = e4(8).pow(2).unwrap().mul(&e6(8));
        assert!(f140.eq_to_prec(&w.truncate(8)));
        assert!(faber_form(14, -1, 6).is_err());
        // Gap property across a weight sweep.
        for &k in &[-12i64, 0, 6, 8, 12, 14, 26] {
            let m = weight_decompose(k).unwrap().m;
            for ell in -m..=-m + 3 {
                let f = faber_form(k, ell, m + 5).unwrap();
                assert!(f.coeff(-ell).is_one());
                for e in -ell + 1..=m {
                    assert!(f.coeff(e).is_zero(), "gap fails k={k} l={ell} e={e}");
                }
            }
        }
    }

    #[test]
    fn expansion_tables() {
        // omega_{14,n}(l) table.
        let t = |n: i64, l: i64| expansion_coeffs(CoeffKind::Omega, 14, n).unwrap().value(l);
        assert_eq!(t(2, -1), rint(196560));
        assert_eq!(t(2, 0), rint(176));
        assert_eq!(t(3, -1), rint(42981120));
        assert_eq!(t(3, 0), rint(208302));
        assert_eq!(t(3, 1), rat(1536, 5));
        assert_eq!(t(4, -1), rint(41292342000));
        assert_eq!(t(4, 1), rat(1176672, 5));
        assert_eq!(t(4, 2), rint(432));
        // Omega_{0,l}(r) table (k = 2).
        let s = |l: i64, r: i64| expansion_coeffs(CoeffKind::BigOmega, 2, l).unwrap().value(r);
        assert_eq!(s(2, 0), rint(152));
        assert_eq!(s(3, 0), rint(7446));
        assert_eq!(s(3, 1), rat(1416, 5));
        assert_eq!(s(4, 2), rint(408));
        assert_eq!(s(5, 3), rat(1592, 3));
        assert_eq!(s(5, 1), rat(9867424, 5));
    }

    #[test]
    fn fourier_coeff_theorem() {
        let mut report = fourier_coeff_theorem_check(0, 14, 5);
        report.merge(fourier_coeff_theorem_check(-1, 14, 5));
        report.merge(fourier_coeff_theorem_check(1, 0, 5));
        report.merge(fourier_coeff_theorem_check(1, 6, 5));
        assert!(report.all_pass(), "{report}");
        // Example columns for k = 14.
        let g2 = g_form(2, 6).unwrap().with_var(Var::P);
        let col = g2
            .div(&e4(6).pow(2).unwrap().mul(&e6(6)).with_var(Var::P))
            .unwrap();
        assert_eq!(col.coeff(0), rint(1));
        assert_eq!(col.coeff(2), rint(196560));
        assert_eq!(col.coeff(3), rint(42981120));
        assert_eq!(col.coeff(4), rint(41292342000));
    }

    #[test]
    fn corollaries() {
        let mut report = corollary_checks(Corollary::WeightTwoConvolution, 0);
        report.merge(corollary_checks(Corollary::OmegaFaberProduct, 0));
        report.merge(corollary_checks(Corollary::OmegaOmegaProduct, 0));
        report.merge(corollary_checks(Corollary::DenominatorFormula, 6));
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn poincare_polynomials() {
        assert_eq!(h_poly(0), Poly::one());
        assert_eq!(h_poly(1), Poly::new(vec![rint(-720), rint(1)]));
        assert_eq!(
            h_poly(2),
            faber_poly(0, 2, FaberRoute::GenFunc)
                .unwrap()
                .poly
                .add(&Poly::constant(rint(72)))
        );
        for n in 1..=5 {
            assert_eq!(h_poly(n), h_poly_hecke(n).unwrap());
        }
    }

    #[test]
    fn pairing_identities() {
        let mut report = pairing_series(PairingSeries::AtkinPairing, 5);
        report.merge(pairing_series(PairingSeries::PoincarePairingSingle, 4));
        report.merge(pairing_series(PairingSeries::PoincarePairingDouble, 4));
        report.merge(pairing_series(PairingSeries::FaberPairingDouble, 4));
        report.merge(pairing_series(PairingSeries::PairingClosedForm, 5));
        assert!(report.all_pass(), "{report}");
        // Explicit expansion of the pairing with H_1.
        let h1 = h_poly(1);
        let vals: Vec<Rat> = (1..5).map(|n| inner_product(&h_poly(n), &h1)).collect();
        assert_eq!(
            vals,
            vec![
                rint(393120),
                rint(59754240),
                rint(2927171520),
                rint(78919626240)
            ]
        );
    }

    #[test]
    fn inverse_series_values() {
        let (t, q) = inverse_series(6);
        assert_eq!(t.coeff(1), rint(1));
        assert_eq!(t.coeff(2), rint(-744));
        assert_eq!(t.coeff(3), rint(356652));
        assert_eq!(t.coeff(4), rint(-140361152));
        assert_eq!(t.coeff(5), rint(49336682190));
        assert_eq!(q.coeff(2), rint(744));
        assert_eq!(q.coeff(3), rint(750420));
        assert_eq!(q.coeff(4), rint(872769632));
        assert_eq!(q.coeff(5), rint(1102652742882));
        assert!(t.is_integral() && q.is_integral());
        let round = q.compose(&t.clone().with_var(Var::Q)).unwrap();
        assert!(round.eq_to_prec(&QSeries::monomial(Var::Q, 1, round.prec())));
    }
}
