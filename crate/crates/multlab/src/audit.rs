//! Quantitative audit of the multiplicity bounds: exact extremal vanishing
//! orders E(M, N) over a degree grid, auxiliary-polynomial construction by
//! kernel solving, right-hand-side formulas for the classical bound shapes,
//! and the sheet of theoretical constants.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::fmt;

use crate::bipoly::BiPoly;
use crate::constants::{c_iso_value, c_n, nu_constant, rho_sequence, Magnitude};
use crate::error::{Error, Result};
use crate::exactnum::{Coeff, OrdResult, PowerSeries};
use crate::idealkit::bidegree_monomials;
use crate::linalg::{normalize_first_one, Eliminator};
use crate::projgeo::{wedge_ord, ProjPoint};

pub use crate::constants::m_cap_check;

pub fn binom(top: usize, k: usize) -> usize {
    if k > top {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

/// Dimension of the space of bi-homogeneous polynomials of bidegree (m, nn)
/// in n + 3 variables: (m + 1) binom(nn + n, n).
pub fn coeff_space_dim(n: usize, m: usize, nn: usize) -> usize {
    (m + 1) * binom(nn + n, n)
}

/// floor((m + 1)(nn + 1)^n / n!).
pub fn floor_lower_bound(n: usize, m: usize, nn: usize) -> usize {
    let mut num = BigInt::from(m as u64 + 1);
    for _ in 0..n {
        num *= BigInt::from(nn as u64 + 1);
    }
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one());
    (num / fact).to_usize().expect("desk-scale bound")
}

/// (m + 1) binom(nn + n, n) - 1, the pigeonhole lower bound for E(m, nn).
pub fn pigeonhole_lower_bound(n: usize, m: usize, nn: usize) -> usize {
    coeff_space_dim(n, m, nn) - 1
}

fn eval_monomials(point: &[PowerSeries], m: usize, nn: usize) -> Result<Vec<PowerSeries>> {
    let n = point
        .len()
        .checked_sub(3)
        .ok_or(Error::ArityMismatch { expected: 3, got: point.len() })?;
    let field = point[0].field();
    let prec = point.iter().map(PowerSeries::prec).min().unwrap_or(0);
    // Power tables per coordinate up to the needed exponent.
    let max_exp = m.max(nn);
    let mut powers: Vec<Vec<PowerSeries>> = Vec::with_capacity(point.len());
    for s in point {
        let mut table = vec![PowerSeries::constant(Coeff::one(field), prec)];
        for e in 1..=max_exp {
            let next = table[e - 1].mul(&s.truncate(prec))?;
            table.push(next);
        }
        powers.push(table);
    }
    let monos = bidegree_monomials(n, m, nn);
    let mut out = Vec::with_capacity(monos.len());
    for mono in &monos {
        let mut acc = PowerSeries::constant(Coeff::one(field), prec);
        for (i, &e) in mono.iter().enumerate() {
            if e > 0 {
                acc = acc.mul(&powers[i][e as usize])?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// E(m, nn): the exact maximum of ord_z P(point) over nonzero bi-homogeneous
/// P of bidegree (m, nn), by a single incremental elimination pass over the
/// coefficient-extraction rows; AtLeast(prec) when a kernel survives every
/// row (possible algebraic relation or insufficient precision).
pub fn extremal_order(
    point: &[PowerSeries],
    m: usize,
    nn: usize,
    prec: usize,
) -> Result<OrdResult> {
    let evals = eval_monomials(point, m, nn)?;
    let dim = evals.len();
    let field = point[0].field();
    let eff = prec.min(evals.iter().map(PowerSeries::prec).min().unwrap_or(0));
    let mut elim = Eliminator::new(dim, field);
    for t in 0..eff {
        let row: Vec<Coeff> = evals.iter().map(|s| s.coeff(t).clone()).collect();
        if elim.feed(row) && elim.rank() == dim {
            return Ok(OrdResult::Exact(t));
        }
    }
    Ok(OrdResult::AtLeast(eff))
}

/// Nonzero bi-homogeneous Q of bidegree (a, b) with certified
/// ord_z Q(point) >= (a + 1) binom(b + n, n) - 1, from the kernel of the
/// first dim - 1 coefficient rows; deterministic normalization (least free
/// column, first nonzero coordinate 1).
pub fn construct_aux(point: &[PowerSeries], a: usize, b: usize, prec: usize) -> Result<BiPoly> {
    let n = point
        .len()
        .checked_sub(3)
        .ok_or(Error::ArityMismatch { expected: 3, got: point.len() })?;
    let field = point[0].field();
    let dim = coeff_space_dim(n, a, b);
    if prec <= dim {
        return Err(Error::PrecisionTooSmall(format!(
            "construct_aux({a}, {b}) needs prec > {dim}, got {prec}"
        )));
    }
    let avail = point.iter().map(PowerSeries::prec).min().unwrap_or(0);
    if avail <= dim {
        return Err(Error::PrecisionTooSmall(format!(
            "point carries only {avail} coefficients, need > {dim}"
        )));
    }
    let evals = eval_monomials(point, a, b)?;
    let mut elim = Eliminator::new(dim, field);
    for t in 0..dim - 1 {
        let row: Vec<Coeff> = evals.iter().map(|s| s.coeff(t).clone()).collect();
        elim.feed(row);
    }
    let kernel = elim.kernel_basis();
    let mut v = kernel
        .into_iter()
        .next()
        .expect("dim - 1 rows leave a nontrivial kernel");
    normalize_first_one(&mut v);
    let monos = bidegree_monomials(n, a, b);
    let mut q = BiPoly::zero(n, field);
    for (mono, c) in monos.into_iter().zip(v) {
        if !c.is_zero() {
            q.poly.add_term(mono, &c);
        }
    }
    // Self-check the certificate on every call.
    let ord = q.ord_at(point)?;
    assert!(
        ord.lower_bound() >= dim - 1,
        "auxiliary polynomial misses its certified order: {ord} < {}",
        dim - 1
    );
    Ok(q)
}

// ---------------------------------------------------------------------------
// Bound right-hand sides
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// K1 (M + N + 1)(N + 1)^n.
    Zorin,
    /// K1 (M + 1)(N + 1)^n.
    NesterenkoShape,
    /// c0 M N^(n log d / (log d - n log t)), requires t^n < d.
    Nishioka,
    /// c0 M N^(n log d / (log delta - n log t)), requires t^n < delta.
    Topfer,
    /// C (M + 1)(N + 1)^n, the optimal shape.
    SiegelOptimal,
}

impl std::str::FromStr for BoundKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<BoundKind> {
        match s {
            "zorin" => Ok(BoundKind::Zorin),
            "nesterenko-shape" => Ok(BoundKind::NesterenkoShape),
            "nishioka" => Ok(BoundKind::Nishioka),
            "topfer" => Ok(BoundKind::Topfer),
            "siegel-optimal" => Ok(BoundKind::SiegelOptimal),
            other => Err(Error::Config(format!("unknown bound kind '{other}'"))),
        }
    }
}

/// Parameter bag for the bound formulas.
#[derive(Debug, Clone)]
pub struct BoundParams {
    pub n: usize,
    /// The multiplicative constant (K1, c0 or C depending on the kind).
    pub k1: BigRational,
    /// deg p, for the Mahler-shape bounds.
    pub d: Option<u64>,
    /// ord_z p.
    pub delta: Option<u64>,
    /// deg_X of the system polynomials.
    pub t: Option<u64>,
}

impl BoundParams {
    pub fn new(n: usize) -> BoundParams {
        BoundParams {
            n,
            k1: BigRational::one(),
            d: None,
            delta: None,
            t: None,
        }
    }
}

/// A bound value: exact rational, or a real carrying a 1e-9 evaluation
/// tolerance when the exponent is irrational.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    Approx(f64),
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
            BoundValue::Approx(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            BoundValue::Exact(r) => Some(r),
            BoundValue::Approx(_) => None,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(r) => write!(f, "{r}"),
            BoundValue::Approx(v) => write!(f, "{v:.9}"),
        }
    }
}

fn int_pow_of(base: u64, x: u64) -> Option<u32> {
    if x == 1 {
        return Some(0);
    }
    let mut acc = 1u64;
    let mut e = 0u32;
    while acc < x {
        acc = acc.checked_mul(base)?;
        e += 1;
    }
    (acc == x).then_some(e)
}

/// Smallest g >= 2 with every value an integer power of g; values equal to 1
/// contribute exponent 0.
fn common_base(vals: &[u64]) -> Option<(u64, Vec<u32>)> {
    let top = vals.iter().copied().filter(|&v| v > 1).min()?;
    'outer: for g in 2..=top {
        let mut exps = Vec::with_capacity(vals.len());
        for &v in vals {
            match int_pow_of(g, v) {
                Some(e) => exps.push(e),
                None => continue 'outer,
            }
        }
        return Some((g, exps));
    }
    None
}

fn rational_pow(base: u64, exp: &BigRational) -> Option<BigRational> {
    if base == 0 {
        return Some(BigRational::zero());
    }
    let p = exp.numer().to_u32()?;
    let q = exp.denom().to_u32()?;
    let raised = BigInt::from(base).pow(p);
    let root = raised.nth_root(q);
    (root.clone().pow(q) == raised).then(|| BigRational::from_integer(root))
}

fn shape_poly(k1: &BigRational, lead: u64, nn: usize, n: usize) -> BoundValue {
    let mut acc = BigRational::from_integer(BigInt::from(lead));
    for _ in 0..n {
        acc *= BigRational::from_integer(BigInt::from(nn as u64 + 1));
    }
    BoundValue::Exact(k1 * acc)
}

/// The right-hand side of the selected bound at (M, N) = (m, nn).
pub fn bound_rhs(kind: BoundKind, m: usize, nn: usize, params: &BoundParams) -> Result<BoundValue> {
    if params.k1.is_negative() {
        return Err(Error::ParamDomain("negative multiplicative constant".into()));
    }
    let n = params.n;
    match kind {
        BoundKind::Zorin => Ok(shape_poly(&params.k1, (m + nn + 1) as u64, nn, n)),
        BoundKind::NesterenkoShape | BoundKind::SiegelOptimal => {
            Ok(shape_poly(&params.k1, m as u64 + 1, nn, n))
        }
        BoundKind::Nishioka | BoundKind::Topfer => {
            let d = params
                .d
                .ok_or_else(|| Error::ParamDomain("missing d = deg p".into()))?;
            let t = params
                .t
                .ok_or_else(|| Error::ParamDomain("missing t = deg_X".into()))?;
            let delta = match kind {
                BoundKind::Nishioka => d,
                _ => params
                    .delta
                    .ok_or_else(|| Error::ParamDomain("missing delta = ord p".into()))?,
            };
            if d < 2 || delta < 2 || t == 0 {
                return Err(Error::ParamDomain(
                    "need d >= 2, delta >= 2 and t >= 1".into(),
                ));
            }
            let tn = t.checked_pow(n as u32).ok_or_else(|| {
                Error::ParamDomain("t^n overflows the parameter domain".into())
            })?;
            if tn >= delta {
                return Err(Error::ParamDomain(format!(
                    "t^n = {tn} must be < {} = ord p",
                    delta
                )));
            }
            // Exponent n log d / (log delta - n log t), exact when d, delta
            // and t are powers of a common base.
            let mfac = BigRational::from_integer(BigInt::from(m as u64));
            if let Some((_, exps)) = common_base(&[d, delta, t]) {
                let (alpha, beta, gamma) = (exps[0], exps[1], exps[2]);
                let exponent = BigRational::new(
                    BigInt::from(n as u64) * BigInt::from(alpha),
                    BigInt::from(beta as i64 - (n as u64 * gamma as u64) as i64),
                );
                if exponent.is_negative() {
                    return Err(Error::ParamDomain(
                        "exponent denominator not positive".into(),
                    ));
                }
                if let Some(powed) = rational_pow(nn as u64, &exponent) {
                    return Ok(BoundValue::Exact(&params.k1 * mfac * powed));
                }
                let val = (nn as f64).powf(exponent.to_f64().unwrap());
                return Ok(BoundValue::Approx(
                    params.k1.to_f64().unwrap() * m as f64 * val,
                ));
            }
            let exponent =
                n as f64 * (d as f64).ln() / ((delta as f64).ln() - n as f64 * (t as f64).ln());
            Ok(BoundValue::Approx(
                params.k1.to_f64().unwrap() * m as f64 * (nn as f64).powf(exponent),
            ))
        }
    }
}

// ---------------------------------------------------------------------------
// Audit grid
// ---------------------------------------------------------------------------

/// One grid cell of the audit.
#[derive(Debug, Clone)]
pub struct AuditCell {
    pub m: usize,
    pub nn: usize,
    pub dim: usize,
    pub e: OrdResult,
    pub lb_pigeonhole: usize,
    pub lb_floor: usize,
    pub rhs_zorin: BigRational,
    pub rhs_nesterenko: BigRational,
    /// E / rhs with K = 1; None when the cell is inconclusive.
    pub ratio_zorin: Option<BigRational>,
    pub ratio_nesterenko: Option<BigRational>,
}

/// Audit result: cells in (M, N) order plus the fitted quantities.
#[derive(Debug, Clone)]
pub struct AuditGrid {
    pub n: usize,
    pub prec: usize,
    pub cells: Vec<AuditCell>,
    /// max over Exact cells of E / zorin-rhs with K = 1.
    pub k_hat_zorin: Option<BigRational>,
    pub k_hat_nesterenko: Option<BigRational>,
    /// Least-squares slope of log E against log(N + 1) per fixed M, over
    /// cells with N >= 1 and Exact E > 0.
    pub slopes: Vec<(usize, f64)>,
    pub inconclusive: usize,
    /// Pigeonhole and monotonicity violations (0 expected).
    pub violations: usize,
}

impl AuditGrid {
    pub fn slope_at(&self, m: usize) -> Option<f64> {
        self.slopes.iter().find(|(mm, _)| *mm == m).map(|(_, s)| *s)
    }

    /// Fixed-column CSV, LF line endings.
    pub fn csv(&self) -> String {
        let mut out = String::from(
            "M,N,dim,E,E_status,lb_pigeonhole,lb_floor,rhs_zorin,rhs_nesterenko,ratio_zorin,ratio_nesterenko\n",
        );
        for c in &self.cells {
            let (e, status) = match c.e {
                OrdResult::Exact(v) => (v, "exact"),
                OrdResult::AtLeast(v) => (v, "atleast"),
            };
            let ratio = |r: &Option<BigRational>| r.as_ref().map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                c.m,
                c.nn,
                c.dim,
                e,
                status,
                c.lb_pigeonhole,
                c.lb_floor,
                c.rhs_zorin,
                c.rhs_nesterenko,
                ratio(&c.ratio_zorin),
                ratio(&c.ratio_nesterenko),
            ));
        }
        out
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let len = points.len() as f64;
    let xm = points.iter().map(|p| p.0).sum::<f64>() / len;
    let ym = points.iter().map(|p| p.1).sum::<f64>() / len;
    let num: f64 = points.iter().map(|(x, y)| (x - xm) * (y - ym)).sum();
    let den: f64 = points.iter().map(|(x, _)| (x - xm) * (x - xm)).sum();
    (den > 0.0).then(|| num / den)
}

/// Fills the (M, N) grid with exact extremal orders and the bound audits.
/// Cells are computed independently (in parallel) and merged in (M, N)
/// order, so the result is identical across thread counts.
pub fn run_audit(
    point: &[PowerSeries],
    m_range: (usize, usize),
    n_range: (usize, usize),
    prec: usize,
) -> Result<AuditGrid> {
    if m_range.0 > m_range.1 || n_range.0 > n_range.1 {
        return Err(Error::EmptyGrid);
    }
    let n = point
        .len()
        .checked_sub(3)
        .ok_or(Error::ArityMismatch { expected: 3, got: point.len() })?;
    if prec == 0 {
        return Err(Error::PrecisionTooSmall("prec must be positive".into()));
    }
    let params = BoundParams::new(n);
    let coords: Vec<(usize, usize)> = (m_range.0..=m_range.1)
        .flat_map(|m| (n_range.0..=n_range.1).map(move |nn| (m, nn)))
        .collect();
    let mut cells: Vec<AuditCell> = coords
        .par_iter()
        .map(|&(m, nn)| -> Result<AuditCell> {
            let e = extremal_order(point, m, nn, prec)?;
            let dim = coeff_space_dim(n, m, nn);
            let rhs_zorin = bound_rhs(BoundKind::Zorin, m, nn, &params)?
                .exact()
                .expect("polynomial shape is exact")
                .clone();
            let rhs_nesterenko = bound_rhs(BoundKind::NesterenkoShape, m, nn, &params)?
                .exact()
                .expect("polynomial shape is exact")
                .clone();
            let exact_e = e.exact();
            let ratio = |rhs: &BigRational| {
                exact_e.map(|v| BigRational::from_integer(BigInt::from(v as u64)) / rhs)
            };
            Ok(AuditCell {
                m,
                nn,
                dim,
                e,
                lb_pigeonhole: pigeonhole_lower_bound(n, m, nn),
                lb_floor: floor_lower_bound(n, m, nn),
                ratio_zorin: ratio(&rhs_zorin),
                ratio_nesterenko: ratio(&rhs_nesterenko),
                rhs_zorin,
                rhs_nesterenko,
            })
        })
        .collect::<Result<_>>()?;
    cells.sort_by_key(|c| (c.m, c.nn));

    let mut violations = 0usize;
    let mut inconclusive = 0usize;
    for c in &cells {
        match c.e {
            OrdResult::Exact(v) => {
                if v < c.lb_pigeonhole {
                    violations += 1;
                }
            }
            OrdResult::AtLeast(_) => inconclusive += 1,
        }
    }
    // Monotonicity in M and in N over Exact cells.
    let lookup = |m: usize, nn: usize| {
        cells
            .iter()
            .find(|c| c.m == m && c.nn == nn)
            .and_then(|c| c.e.exact())
    };
    for c in &cells {
        let Some(e) = c.e.exact() else { continue };
        if c.m > m_range.0 {
            if let Some(prev) = lookup(c.m - 1, c.nn) {
                if e < prev {
                    violations += 1;
                }
            }
        }
        if c.nn > n_range.0 {
            if let Some(prev) = lookup(c.m, c.nn - 1) {
                if e < prev {
                    violations += 1;
                }
            }
        }
    }

    let k_hat = |pick: fn(&AuditCell) -> &Option<BigRational>| {
        cells
            .iter()
            .filter_map(|c| pick(c).clone())
            .max()
    };
    let k_hat_zorin = k_hat(|c| &c.ratio_zorin);
    let k_hat_nesterenko = k_hat(|c| &c.ratio_nesterenko);

    let mut slopes = Vec::new();
    for m in m_range.0..=m_range.1 {
        let pts: Vec<(f64, f64)> = cells
            .iter()
            .filter(|c| c.m == m && c.nn >= 1)
            .filter_map(|c| {
                c.e.exact()
                    .filter(|&v| v > 0)
                    .map(|v| ((c.nn as f64 + 1.0).ln(), (v as f64).ln()))
            })
            .collect();
        if let Some(s) = least_squares_slope(&pts) {
            slopes.push((m, s));
        }
    }

    Ok(AuditGrid {
        n,
        prec,
        cells,
        k_hat_zorin,
        k_hat_nesterenko,
        slopes,
        inconclusive,
        violations,
    })
}

// ---------------------------------------------------------------------------
// Constants sheet
// ---------------------------------------------------------------------------

/// All theoretical constants for given framework parameters, exact where the
/// representation permits.
#[derive(Debug, Clone)]
pub struct ConstantsSheet {
    pub n: usize,
    pub c_n: BigInt,
    pub nu: BigRational,
    /// rho_0 .. rho_{n+2}.
    pub rho: Vec<Magnitude>,
    pub c_iso: Option<BigRational>,
    pub c: Option<Magnitude>,
    pub k: Option<Magnitude>,
}

impl fmt::Display for ConstantsSheet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "c_n = {}", self.c_n)?;
        writeln!(f, "nu = {}", self.nu)?;
        for (i, r) in self.rho.iter().enumerate() {
            writeln!(f, "rho_{i} = {r}")?;
        }
        if let Some(ci) = &self.c_iso {
            writeln!(f, "C_iso = {ci}")?;
        }
        if let Some(c) = &self.c {
            writeln!(f, "C = {c}")?;
        }
        if let Some(k) = &self.k {
            writeln!(f, "K = {k}")?;
        }
        Ok(())
    }
}

/// Computes the constants sheet; C and K are present only when C_iso (via
/// the functions f) and K0, C0, C1 are all supplied.
#[allow(clippy::too_many_arguments)]
pub fn constants_sheet(
    n: usize,
    mu: &BigRational,
    nu0: &BigRational,
    nu1: &BigRational,
    lambda: &BigRational,
    f: Option<&[PowerSeries]>,
    k0: Option<&BigRational>,
    c0: Option<&BigRational>,
    c1: Option<&BigRational>,
) -> Result<ConstantsSheet> {
    if n == 0 {
        return Err(Error::ParamDomain("n must be >= 1".into()));
    }
    let nu = nu_constant(n, nu0, nu1);
    let rho = rho_sequence(n, mu, nu0, &nu, n + 2);
    let c_iso = match f {
        Some(f) => {
            let prec = f.iter().map(PowerSeries::prec).min().unwrap_or(0);
            let x = ProjPoint::graph_point(f);
            let f0: Vec<PowerSeries> = f
                .iter()
                .map(|s| PowerSeries::constant(s.coeff(0).clone(), prec))
                .collect();
            let y = ProjPoint::graph_point(&f0);
            match wedge_ord(&x, &y)? {
                OrdResult::Exact(w) => Some(c_iso_value(n, mu, nu0, w)),
                OrdResult::AtLeast(_) => None,
            }
        }
        None => None,
    };
    let c = match (&c_iso, k0, c0, c1) {
        (Some(ci), Some(k0), Some(c0), Some(c1)) => Some(crate::constants::c_constant(
            n, mu, nu0, nu1, &rho[n], ci, k0, c0, c1,
        )),
        _ => None,
    };
    let k = c
        .as_ref()
        .map(|c| crate::constants::k_constant(n, mu, lambda, &rho[n + 1], c));
    Ok(ConstantsSheet {
        n,
        c_n: c_n(n),
        nu,
        rho,
        c_iso,
        c,
        k,
    })
}
