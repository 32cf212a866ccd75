//! Projective points over k((z)), the wedge proximity order, zero-cycles with
//! declared degree/height data, the Liouville inequality checker, and the
//! transference-lemma certificate checker.

use crate::bipoly::{f_tilde, BiPoly};
use crate::constants::{c_iso_value, c_n};
use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Field, OrdResult, PowerSeries};
use num::rational::BigRational;
use num::{BigInt, One, Zero};

/// A point given by a system of projective coordinates (series representatives)
/// in P^m, or a bi-projective point in P^1 x P^n given by its two factors.
#[derive(Debug, Clone)]
pub enum ProjPoint {
    Projective(Vec<PowerSeries>),
    BiProjective(Vec<PowerSeries>, Vec<PowerSeries>),
}

impl ProjPoint {
    /// The distinguished point (1 : z) x (1 : f1 : ... : fn).
    pub fn from_functions(f: &[PowerSeries]) -> ProjPoint {
        let pt = f_tilde(f);
        ProjPoint::BiProjective(pt[..2].to_vec(), pt[2..].to_vec())
    }

    /// The point (1 : f1 : ... : fn) of P^n.
    pub fn graph_point(f: &[PowerSeries]) -> ProjPoint {
        let field = f.first().map(PowerSeries::field).unwrap_or(Field::Q);
        let prec = f.iter().map(PowerSeries::prec).min().unwrap_or(0);
        let mut coords = vec![PowerSeries::constant(Coeff::one(field), prec)];
        coords.extend(f.iter().map(|s| s.truncate(prec)));
        ProjPoint::Projective(coords)
    }

    pub fn prec(&self) -> usize {
        match self {
            ProjPoint::Projective(c) => c.iter().map(PowerSeries::prec).min().unwrap_or(0),
            ProjPoint::BiProjective(a, b) => a
                .iter()
                .chain(b)
                .map(PowerSeries::prec)
                .min()
                .unwrap_or(0),
        }
    }
}

/// min of certified orders: Exact only when an exact value is at most every
/// other lower bound.
pub fn ord_min(results: &[OrdResult]) -> OrdResult {
    let lb = results.iter().map(OrdResult::lower_bound).min().unwrap_or(0);
    if results.iter().any(|r| matches!(r, OrdResult::Exact(k) if *k == lb)) {
        OrdResult::Exact(lb)
    } else {
        OrdResult::AtLeast(lb)
    }
}

/// ord of a coordinate system: min over the coordinates.
fn system_ord(coords: &[PowerSeries]) -> OrdResult {
    let ords: Vec<OrdResult> = coords.iter().map(PowerSeries::ord).collect();
    ord_min(&ords)
}

fn wedge_one_factor(x: &[PowerSeries], y: &[PowerSeries]) -> Result<OrdResult> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::ArityMismatch {
            expected: x.len().max(2),
            got: y.len(),
        });
    }
    let ox = match system_ord(x) {
        OrdResult::Exact(k) => k,
        OrdResult::AtLeast(_) => {
            return Err(Error::InsufficientPrecision(
                "ord not certified Exact at this precision".into(),
            ))
        }
    };
    let oy = match system_ord(y) {
        OrdResult::Exact(k) => k,
        OrdResult::AtLeast(_) => {
            return Err(Error::InsufficientPrecision(
                "ord not certified Exact at this precision".into(),
            ))
        }
    };
    // Minors in lexicographic (i, j) order, i < j.
    let mut ords = Vec::new();
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            let minor = x[i].mul(&y[j])?.sub(&x[j].mul(&y[i])?)?;
            ords.push(minor.ord());
        }
    }
    // Every minor has ord >= ox + oy, so the normalized value is >= 0.
    Ok(match ord_min(&ords) {
        OrdResult::Exact(k) => OrdResult::Exact(k - ox - oy),
        OrdResult::AtLeast(p) => OrdResult::AtLeast(p.saturating_sub(ox + oy)),
    })
}

/// The projective proximity order Ord_z(x, y) = ord_z(x wedge y) - ord_z(x)
/// - ord_z(y); bi-projective points take the min over the two factors.
pub fn wedge_ord(x: &ProjPoint, y: &ProjPoint) -> Result<OrdResult> {
    match (x, y) {
        (ProjPoint::Projective(a), ProjPoint::Projective(b)) => wedge_one_factor(a, b),
        (ProjPoint::BiProjective(a0, a1), ProjPoint::BiProjective(b0, b1)) => {
            let w0 = wedge_one_factor(a0, b0)?;
            let w1 = wedge_one_factor(a1, b1)?;
            Ok(ord_min(&[w0, w1]))
        }
        _ => Err(Error::ArityMismatch { expected: 1, got: 2 }),
    }
}

/// A 0-dimensional cycle: points with multiplicities plus the declared degree
/// and height data of its defining form.
#[derive(Debug, Clone)]
pub struct ZeroCycle {
    pub points: Vec<(ProjPoint, u32)>,
    pub degree: usize,
    pub height: usize,
}

/// (ord, Ord): the max and the multiplicity-weighted sum of wedge_ord over the
/// points of Z.
pub fn ord_to_cycle(x: &ProjPoint, z: &ZeroCycle) -> Result<(OrdResult, OrdResult)> {
    if z.points.is_empty() {
        return Err(Error::EmptyCycle);
    }
    let mut all_exact = true;
    let mut max_lb = 0usize;
    let mut max_is_exact = false;
    let mut sum_lb = 0usize;
    for (pt, mult) in &z.points {
        let w = wedge_ord(x, pt)?;
        let lb = w.lower_bound();
        if lb >= max_lb {
            max_lb = lb;
            max_is_exact = w.is_exact();
        }
        sum_lb += lb * (*mult as usize);
        all_exact &= w.is_exact();
    }
    let ord = if max_is_exact && all_exact {
        OrdResult::Exact(max_lb)
    } else {
        OrdResult::AtLeast(max_lb)
    };
    let sum = if all_exact {
        OrdResult::Exact(sum_lb)
    } else {
        OrdResult::AtLeast(sum_lb)
    };
    Ok((ord, sum))
}

#[derive(Debug, Clone)]
pub struct LiouvilleReport {
    /// deg(Q) h(Z) + h(Q) deg(Z).
    pub lhs: i64,
    /// |sum of multiplicity-weighted ord Q(beta)|.
    pub rhs: i64,
    pub per_point: Vec<usize>,
    pub ok: bool,
}

/// Evaluate a z-form Q (z encoded in the X'-block) at a point of P^n.
fn eval_zform_at_point(q: &BiPoly, coords: &[PowerSeries]) -> Result<PowerSeries> {
    let field = q.field();
    let prec = coords.iter().map(PowerSeries::prec).min().unwrap_or(0);
    let mut point = Vec::with_capacity(coords.len() + 2);
    point.push(PowerSeries::constant(Coeff::one(field), prec));
    point.push(PowerSeries::z(field, prec));
    point.extend(coords.iter().map(|s| s.truncate(prec)));
    q.evaluate(&point)
}

/// Liouville inequality: deg(Q) h(Z) + h(Q) deg(Z) >= |sum ord Q(beta)|.
/// Fails loudly if the declared (deg, h) data are inconsistent with the
/// evaluations.
pub fn liouville_check(q: &BiPoly, z: &ZeroCycle) -> Result<LiouvilleReport> {
    if z.points.is_empty() {
        return Err(Error::EmptyCycle);
    }
    let deg_q = q.bidegree().1 as i64;
    let h_q = q.dehomogenize().deg_z() as i64;
    let mut total = 0i64;
    let mut per_point = Vec::new();
    for (pt, mult) in &z.points {
        let coords = match pt {
            ProjPoint::Projective(c) => c,
            ProjPoint::BiProjective(..) => {
                return Err(Error::ArityMismatch { expected: 1, got: 2 })
            }
        };
        let v = eval_zform_at_point(q, coords)?;
        match v.ord() {
            OrdResult::Exact(k) => {
                per_point.push(k);
                total += (k as i64) * (*mult as i64);
            }
            OrdResult::AtLeast(_) => {
            return Err(Error::InsufficientPrecision(
                "ord not certified Exact at this precision".into(),
            ))
        }
        }
    }
    let lhs = deg_q * (z.height as i64) + h_q * (z.degree as i64);
    let rhs = total.abs();
    Ok(LiouvilleReport {
        lhs,
        rhs,
        per_point,
        ok: lhs >= rhs,
    })
}

/// C_iso = ((c_n Ord_z(f~ wedge f~(0)) + 1)/min(nu0, mu))^n.
pub fn c_iso(
    f: &[PowerSeries],
    mu: &BigRational,
    nu0: &BigRational,
    n: usize,
) -> Result<BigRational> {
    let prec = f.iter().map(PowerSeries::prec).min().unwrap_or(0);
    let x = ProjPoint::graph_point(f);
    let f0: Vec<PowerSeries> = f
        .iter()
        .map(|s| PowerSeries::constant(s.coeff(0).clone(), prec))
        .collect();
    let y = ProjPoint::graph_point(&f0);
    match wedge_ord(&x, &y)? {
        OrdResult::Exact(w) => Ok(c_iso_value(n, mu, nu0, w)),
        OrdResult::AtLeast(_) => Err(Error::InsufficientPrecision(
            "wedge order not certified Exact at this precision".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct TransferenceCertificate {
    pub n: usize,
    /// The form P as a z-form BiPoly (z-degree encoded in the X'-block).
    pub p: BiPoly,
    pub c: BigRational,
    pub mu: BigRational,
    pub nu0: BigRational,
    pub nu1: BigRational,
    pub z: ZeroCycle,
}

#[derive(Debug, Clone)]
pub struct TransferenceReport {
    pub c_admissible: bool,
    pub hypothesis: CheckStatus,
    pub degree_bound: CheckStatus,
    pub ord_bound: CheckStatus,
    pub lines: Vec<String>,
}

impl TransferenceReport {
    pub fn passed(&self) -> bool {
        self.c_admissible
            && self.hypothesis == CheckStatus::Pass
            && self.degree_bound == CheckStatus::Pass
            && self.ord_bound == CheckStatus::Pass
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn rat_pow(r: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// Verify a transference certificate: the admissibility of C, the order
/// hypothesis on P, and both conclusions (degree bound and Ord lower bound)
/// against the supplied cycle. The n-th-root comparison in the Ord bound is
/// performed exactly by raising both sides to the n-th power.
pub fn transference_check(
    cert: &TransferenceCertificate,
    f: &[PowerSeries],
) -> Result<TransferenceReport> {
    let n = cert.n;
    let cn = BigRational::from_integer(c_n(n));
    let mut lines = Vec::new();

    // C >= min(nu0, mu)^{-n}.
    let c_floor = BigRational::one() / rat_pow(&cert.mu.clone().min(cert.nu0.clone()), n);
    let c_admissible = cert.c >= c_floor;
    lines.push(format!(
        "C admissibility: C = {} {} {} = min(nu0,mu)^-n",
        cert.c,
        if c_admissible { ">=" } else { "<" },
        c_floor
    ));

    let deg_p = rat(cert.p.bidegree().1 as i64);
    let h_p = rat(cert.p.dehomogenize().deg_z() as i64);

    // ord of P at the point and ord of the coordinate system.
    let point = f_tilde(f);
    let v = match cert.p.ord_at(&point)? {
        OrdResult::Exact(k) => k,
        OrdResult::AtLeast(_) => {
            return Err(Error::InsufficientPrecision(
                "ord not certified Exact at this precision".into(),
            ))
        }
    };
    let graph = match &ProjPoint::graph_point(f) {
        ProjPoint::Projective(c) => c.clone(),
        _ => unreachable!(),
    };
    let ord_f = match system_ord(&graph) {
        OrdResult::Exact(k) => k,
        OrdResult::AtLeast(_) => {
            return Err(Error::InsufficientPrecision(
                "ord not certified Exact at this precision".into(),
            ))
        }
    };

    // Hypothesis: ord P(f~) - deg P ord f - h(P)
    //   > C n ((mu+nu0)(h(P)+1) + nu1 deg P) mu^{n-1} (deg P+1)^n.
    let lhs_h = rat(v as i64) - deg_p.clone() * rat(ord_f as i64) - h_p.clone();
    let rhs_h = cert.c.clone()
        * rat(n as i64)
        * ((cert.mu.clone() + cert.nu0.clone()) * (h_p.clone() + BigRational::one())
            + cert.nu1.clone() * deg_p.clone())
        * rat_pow(&cert.mu, n - 1)
        * rat_pow(&(deg_p.clone() + BigRational::one()), n);
    let hyp_ok = lhs_h > rhs_h;
    lines.push(format!(
        "hypothesis: ord P(f~) - deg P ord(f) - h(P) = {lhs_h} {} {rhs_h}",
        if hyp_ok { ">" } else { "<=" }
    ));
    if !hyp_ok {
        lines.push("hypothesis not satisfied; conclusions not required".into());
        return Ok(TransferenceReport {
            c_admissible,
            hypothesis: CheckStatus::Fail,
            degree_bound: CheckStatus::Skipped,
            ord_bound: CheckStatus::Skipped,
            lines,
        });
    }

    let deg_z = rat(cert.z.degree as i64);
    let h_z = rat(cert.z.height as i64);

    // Degree bound: nu0 degZ h(P) + nu1 degZ degP + mu h(Z) degP
    //   <= c_n C (n+1) mu^n (nu0(h(P)+1) + nu1 degP)(degP+1)^n.
    let lhs_d = cert.nu0.clone() * deg_z.clone() * h_p.clone()
        + cert.nu1.clone() * deg_z.clone() * deg_p.clone()
        + cert.mu.clone() * h_z.clone() * deg_p.clone();
    let rhs_d = cn.clone()
        * cert.c.clone()
        * rat(n as i64 + 1)
        * rat_pow(&cert.mu, n)
        * (cert.nu0.clone() * (h_p.clone() + BigRational::one())
            + cert.nu1.clone() * deg_p.clone())
        * rat_pow(&(deg_p.clone() + BigRational::one()), n);
    let deg_ok = lhs_d <= rhs_d;
    lines.push(format!(
        "degree bound: {lhs_d} {} {rhs_d}",
        if deg_ok { "<=" } else { ">" }
    ));

    // Ord bound: sum Ord_f(alpha)
    //   > c_n^{-1} (c_n C)^{1/n} [ (nu0(h(P)+1)+nu1 degP) degZ + mu(degP+1) h(Z) ].
    let x = ProjPoint::graph_point(f);
    let (_, ord_sum) = ord_to_cycle(&x, &cert.z)?;
    let sum_lb = rat(ord_sum.lower_bound() as i64);
    let s = (cert.nu0.clone() * (h_p.clone() + BigRational::one())
        + cert.nu1.clone() * deg_p.clone())
        * deg_z.clone()
        + cert.mu.clone() * (deg_p.clone() + BigRational::one()) * h_z.clone();
    // LHS > c_n^{-1}(c_n C)^{1/n} S  <=>  (c_n LHS / S)^n > c_n C  (S > 0).
    let ord_ok = if s.is_zero() {
        sum_lb > BigRational::zero()
    } else {
        rat_pow(&(cn.clone() * sum_lb.clone() / s.clone()), n) > cn.clone() * cert.c.clone()
    };
    lines.push(format!(
        "Ord bound: sum Ord_f(alpha) {} {} vs threshold c_n^-1 (c_n C)^(1/n) * {} (exact n-th power comparison)",
        if ord_sum.is_exact() { "=" } else { ">=" },
        sum_lb,
        s
    ));
    lines.push(format!(
        "Ord bound {}",
        if ord_ok { "holds" } else { "failed" }
    ));

    // Non-isotriviality threshold.
    match c_iso(f, &cert.mu, &cert.nu0, n) {
        Ok(threshold) => {
            if cert.c > threshold {
                lines.push(format!(
                    "C = {} > C_iso = {threshold}: cycle certified non-isotrivial",
                    cert.c
                ));
            } else {
                lines.push(format!(
                    "C = {} <= C_iso = {threshold}: non-isotriviality not asserted",
                    cert.c
                ));
            }
        }
        Err(_) => lines.push("C_iso unavailable at this precision".into()),
    }

    Ok(TransferenceReport {
        c_admissible,
        hypothesis: CheckStatus::Pass,
        degree_bound: if deg_ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        ord_bound: if ord_ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parser::parse_zform;
    use rand::{Rng, SeedableRng};

    fn q() -> Field {
        Field::Q
    }

    fn series(coeffs: &[i64], prec: usize) -> PowerSeries {
        let mut v = vec![Coeff::zero(q()); prec];
        for (i, &c) in coeffs.iter().enumerate() {
            v[i] = Coeff::from_integer(q(), c);
        }
        PowerSeries::new(q(), v)
    }

    /// f = z + z^10: the hand-checked transference fixture.
    fn sparse_f(prec: usize) -> PowerSeries {
        let mut v = vec![Coeff::zero(q()); prec];
        v[1] = Coeff::one(q());
        v[10] = Coeff::one(q());
        PowerSeries::new(q(), v)
    }

    #[test]
    fn wedge_example() {
        // x = (1, z+z^3), y = (1, z) -> minor = -z^3, ord Exact(3).
        let x = ProjPoint::Projective(vec![series(&[1], 16), series(&[0, 1, 0, 1], 16)]);
        let y = ProjPoint::Projective(vec![series(&[1], 16), series(&[0, 1], 16)]);
        assert_eq!(wedge_ord(&x, &y).unwrap(), OrdResult::Exact(3));
        // Symmetry.
        assert_eq!(wedge_ord(&y, &x).unwrap(), OrdResult::Exact(3));
    }

    #[test]
    fn wedge_identical_points() {
        let x = ProjPoint::Projective(vec![series(&[1], 12), series(&[0, 1], 12)]);
        assert_eq!(wedge_ord(&x, &x).unwrap(), OrdResult::AtLeast(12));
    }

    #[test]
    fn wedge_unit_scaling_invariance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let prec = 24;
        for _ in 0..20 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut v = vec![Coeff::zero(q()); prec];
                v[0] = Coeff::from_integer(q(), rng.gen_range(1..5));
                for c in v.iter_mut().skip(1).take(6) {
                    *c = Coeff::from_integer(q(), rng.gen_range(-3..=3));
                }
                PowerSeries::new(q(), v)
            };
            let x = vec![mk(&mut rng), mk(&mut rng)];
            let y = vec![mk(&mut rng), mk(&mut rng)];
            // u = 1 + z (a unit).
            let u = series(&[1, 1], prec);
            let xs: Vec<PowerSeries> = x.iter().map(|s| s.mul(&u).unwrap()).collect();
            let a = wedge_ord(
                &ProjPoint::Projective(x.clone()),
                &ProjPoint::Projective(y.clone()),
            )
            .unwrap();
            let b = wedge_ord(&ProjPoint::Projective(xs), &ProjPoint::Projective(y)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ord_to_cycle_cases() {
        let prec = 20;
        let x = ProjPoint::Projective(vec![series(&[1], prec), series(&[0, 1], prec)]);
        // Z = {x}: both AtLeast(prec).
        let z_self = ZeroCycle {
            points: vec![(x.clone(), 1)],
            degree: 1,
            height: 1,
        };
        let (o, s) = ord_to_cycle(&x, &z_self).unwrap();
        assert_eq!(o, OrdResult::AtLeast(prec));
        assert_eq!(s, OrdResult::AtLeast(prec));

        // Two distinct rational points.
        let p1 = ProjPoint::Projective(vec![series(&[1], prec), series(&[0, 1, 1], prec)]);
        let p2 = ProjPoint::Projective(vec![series(&[1], prec), series(&[5], prec)]);
        let z2 = ZeroCycle {
            points: vec![(p1.clone(), 1), (p2, 1)],
            degree: 2,
            height: 1,
        };
        let (o2, s2) = ord_to_cycle(&x, &z2).unwrap();
        // wedge(x, p1) = ord(z^2) = 2; wedge(x, p2) = ord(z - 5) = 0.
        assert_eq!(o2, OrdResult::Exact(2));
        assert_eq!(s2, OrdResult::Exact(2));

        // Multiplicity 2 doubles the Ord contribution.
        let z_m = ZeroCycle {
            points: vec![(p1, 2)],
            degree: 2,
            height: 1,
        };
        let (_, s_m) = ord_to_cycle(&x, &z_m).unwrap();
        assert_eq!(s_m, OrdResult::Exact(4));

        let z_empty = ZeroCycle {
            points: vec![],
            degree: 0,
            height: 0,
        };
        assert!(matches!(ord_to_cycle(&x, &z_empty), Err(Error::EmptyCycle)));
    }

    #[test]
    fn liouville_examples() {
        let prec = 16;
        // Q = X1 - X0 (deg 1, h 0); Z = {(1 : z+1)} declared (deg, h) = (1, 1).
        let q1 = parse_zform("X1 - X0", 1, q()).unwrap();
        let z = ZeroCycle {
            points: vec![(
                ProjPoint::Projective(vec![series(&[1], prec), series(&[1, 1], prec)]),
                1,
            )],
            degree: 1,
            height: 1,
        };
        let rep = liouville_check(&q1, &z).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (1, 1));
        assert!(rep.ok);

        // Q = X0, Z = {(1 : z)}: evaluation 1, ord 0.
        let q2 = parse_zform("X0", 1, q()).unwrap();
        let z2 = ZeroCycle {
            points: vec![(
                ProjPoint::Projective(vec![series(&[1], prec), series(&[0, 1], prec)]),
                1,
            )],
            degree: 1,
            height: 1,
        };
        let rep2 = liouville_check(&q2, &z2).unwrap();
        assert_eq!((rep2.lhs, rep2.rhs), (1, 0));
        assert!(rep2.ok);

        // Q vanishing identically on Z -> insufficient precision error.
        let q3 = parse_zform("X1 - z*X0", 1, q()).unwrap();
        assert!(matches!(
            liouville_check(&q3, &z2),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn c_iso_exp_example() {
        // f = exp: wedge((1, exp), (1, 1)) = exp - 1, ord 1 -> C_iso = 26245.
        let f = vec![fixtures::exp_series(32)];
        let v = c_iso(&f, &rat(1), &rat(1), 1).unwrap();
        assert_eq!(v, rat(26245));
    }

    #[test]
    fn c_iso_constant_function_errors() {
        let f = vec![series(&[7], 8)];
        assert!(matches!(
            c_iso(&f, &rat(1), &rat(1), 1),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    fn worked_certificate(prec: usize) -> (TransferenceCertificate, Vec<PowerSeries>) {
        // f = z + z^10, P = X1 - z*X0 (deg 1, h 1), C = 1,
        // (mu, nu0, nu1) = (1, 1, 0), Z = {(1 : z)} declared deg 1, h 1.
        let p = parse_zform("X1 - z*X0", 1, q()).unwrap();
        let z = ZeroCycle {
            points: vec![(
                ProjPoint::Projective(vec![series(&[1], prec), series(&[0, 1], prec)]),
                1,
            )],
            degree: 1,
            height: 1,
        };
        (
            TransferenceCertificate {
                n: 1,
                p,
                c: rat(1),
                mu: rat(1),
                nu0: rat(1),
                nu1: rat(0),
                z,
            },
            vec![sparse_f(prec)],
        )
    }

    #[test]
    fn transference_worked_fixture_passes() {
        let (cert, f) = worked_certificate(64);
        let rep = transference_check(&cert, &f).unwrap();
        assert!(rep.c_admissible);
        assert_eq!(rep.hypothesis, CheckStatus::Pass);
        assert_eq!(rep.degree_bound, CheckStatus::Pass);
        assert_eq!(rep.ord_bound, CheckStatus::Pass);
        assert!(rep.passed(), "{:?}", rep.lines);
    }

    #[test]
    fn transference_hypothesis_failure_skips_conclusions() {
        // P = X1 has ord 1 at f~: hypothesis 1 > 4 fails.
        let (mut cert, f) = worked_certificate(64);
        cert.p = parse_zform("X1", 1, q()).unwrap();
        let rep = transference_check(&cert, &f).unwrap();
        assert_eq!(rep.hypothesis, CheckStatus::Fail);
        assert_eq!(rep.degree_bound, CheckStatus::Skipped);
        assert_eq!(rep.ord_bound, CheckStatus::Skipped);
        assert!(!rep.passed());
    }

    #[test]
    fn transference_flags_bad_degree_declaration() {
        // Inflate the form degree data by using a high-degree P whose cycle
        // data violates the degree bound: shrink C below admissibility too.
        let (mut cert, f) = worked_certificate(64);
        cert.z.degree = usize::MAX / 1_000_000_000;
        let rep = transference_check(&cert, &f).unwrap();
        assert_eq!(rep.degree_bound, CheckStatus::Fail);
        assert!(!rep.passed());
    }
}
