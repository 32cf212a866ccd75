//! Stability laboratory for linear Mahler systems: the specialized matrix
//! T_z, the valuation constant C3 of its inverse determinant, the
//! unconditional order bound max(2, C3/(lambda-1)), and T-stability checks
//! for subvarieties given by bigraded ideals.

use num::{BigInt, BigRational};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Field, OrdResult, PowerSeries};
use crate::idealkit::IdealHandle;
use crate::systems::{MahlerSystem, Transformation};

/// A polynomial in z with exact coefficients, dense from degree 0.
pub type ZPoly = Vec<Coeff>;

fn zp_trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Coeff::is_zero) {
        p.pop();
    }
    p
}

fn zp_is_zero(p: &ZPoly) -> bool {
    p.iter().all(Coeff::is_zero)
}

fn zp_zero() -> ZPoly {
    Vec::new()
}

fn zp_add(a: &ZPoly, b: &ZPoly, field: Field) -> ZPoly {
    let mut out = vec![Coeff::zero(field); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    zp_trim(out)
}

fn zp_neg(a: &ZPoly) -> ZPoly {
    a.iter().map(Coeff::neg).collect()
}

fn zp_sub(a: &ZPoly, b: &ZPoly, field: Field) -> ZPoly {
    zp_add(a, &zp_neg(b), field)
}

fn zp_mul(a: &ZPoly, b: &ZPoly, field: Field) -> ZPoly {
    if zp_is_zero(a) || zp_is_zero(b) {
        return zp_zero();
    }
    let mut out = vec![Coeff::zero(field); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ca.mul(cb));
        }
    }
    zp_trim(out)
}

fn zp_ord(p: &ZPoly) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

fn zp_eq(a: &ZPoly, b: &ZPoly, field: Field) -> bool {
    zp_is_zero(&zp_sub(a, b, field))
}

fn zp_display(p: &ZPoly) -> String {
    if zp_is_zero(p) {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{i}"),
        };
        if mono.is_empty() {
            parts.push(c.to_string());
        } else if c.is_one() {
            parts.push(mono);
        } else {
            parts.push(format!("{c} {mono}"));
        }
    }
    parts.join(" + ")
}

// ---------------------------------------------------------------------------
// LinearMahlerSystem
// ---------------------------------------------------------------------------

/// A Mahler system whose A_0, ..., A_n are linear in the X-block:
/// A_i = sum_j a_ij(X0', X1') X_j with every a_ij homogeneous of degree s.
#[derive(Debug, Clone)]
pub struct LinearMahlerSystem {
    sys: MahlerSystem,
    /// forms[i][j] = a_ij, a form in (X0', X1') alone (bidegree (s, 0)).
    forms: Vec<Vec<BiPoly>>,
}

impl LinearMahlerSystem {
    /// Reads the matrix (a_ij) off an existing Mahler system; each A_i must
    /// be linear in the X-block.
    pub fn from_mahler(sys: &MahlerSystem) -> Result<LinearMahlerSystem> {
        let n = sys.n;
        let field = sys.field();
        let mut forms = vec![vec![BiPoly::zero(n, field); n + 1]; n + 1];
        for (i, ai) in sys.a.iter().enumerate() {
            for (m, c) in &ai.poly.terms {
                let xs: Vec<usize> = (0..=n).filter(|&j| m[2 + j] > 0).collect();
                if xs.len() != 1 || m[2 + xs[0]] != 1 {
                    return Err(Error::WrongRing(format!(
                        "A{i} is not linear in the X-block"
                    )));
                }
                let j = xs[0];
                let mut xp_mono = vec![0u32; n + 3];
                xp_mono[0] = m[0];
                xp_mono[1] = m[1];
                let mut form = BiPoly::zero(n, field);
                form.poly.add_term(xp_mono, c);
                forms[i][j] = forms[i][j].add(&form);
            }
        }
        if forms[0].iter().all(BiPoly::is_zero) {
            return Err(Error::DegenerateSystem);
        }
        Ok(LinearMahlerSystem {
            sys: sys.clone(),
            forms,
        })
    }

    /// Builds the system A_i = sum_j forms[i][j] X_j from the matrix.
    pub fn from_forms(
        n: usize,
        a0p: BiPoly,
        a1p: BiPoly,
        forms: Vec<Vec<BiPoly>>,
    ) -> Result<LinearMahlerSystem> {
        if forms.len() != n + 1 || forms.iter().any(|row| row.len() != n + 1) {
            return Err(Error::Config(format!(
                "expected an {0} x {0} matrix of forms",
                n + 1
            )));
        }
        let field = a0p.field();
        let a: Vec<BiPoly> = forms
            .iter()
            .map(|row| {
                let mut acc = BiPoly::zero(n, field);
                for (j, form) in row.iter().enumerate() {
                    acc = acc.add(&form.mul(&BiPoly::x(n, field, j)));
                }
                acc
            })
            .collect();
        let sys = MahlerSystem::new(n, a0p, a1p, a)?;
        Ok(LinearMahlerSystem { sys, forms })
    }

    pub fn system(&self) -> &MahlerSystem {
        &self.sys
    }

    pub fn n(&self) -> usize {
        self.sys.n
    }

    pub fn field(&self) -> Field {
        self.sys.field()
    }

    pub fn forms(&self) -> &[Vec<BiPoly>] {
        &self.forms
    }

    /// lambda = ord_z p; errors when p is not defined or lambda < 2.
    pub fn lambda(&self) -> Result<usize> {
        match self.sys.lambda() {
            Some(l) if l >= 2 => Ok(l as usize),
            Some(l) => Err(Error::LambdaTooSmall(l.max(0) as usize)),
            None => Err(Error::DegenerateSystem),
        }
    }
}

// ---------------------------------------------------------------------------
// T_z matrix, C3, bound
// ---------------------------------------------------------------------------

/// The matrix (a_ij(1, z)) together with its exact inverse presented as
/// adjugate over determinant: adjugate * entries = det * identity.
#[derive(Debug, Clone)]
pub struct TzMatrix {
    pub size: usize,
    pub field: Field,
    pub entries: Vec<Vec<ZPoly>>,
    pub adjugate: Vec<Vec<ZPoly>>,
    pub det: ZPoly,
}

fn zp_of_form(form: &BiPoly) -> ZPoly {
    let mut out = Vec::new();
    for (m, c) in &form.poly.terms {
        let e = m[1] as usize;
        if out.len() <= e {
            out.resize(e + 1, Coeff::zero(form.field()));
        }
        out[e] = out[e].add(c);
    }
    zp_trim(out)
}

fn minor(m: &[Vec<ZPoly>], skip_row: usize, skip_col: usize) -> Vec<Vec<ZPoly>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

fn zp_det(m: &[Vec<ZPoly>], field: Field) -> ZPoly {
    let k = m.len();
    if k == 0 {
        return vec![Coeff::one(field)];
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = zp_zero();
    for j in 0..k {
        if zp_is_zero(&m[0][j]) {
            continue;
        }
        let term = zp_mul(&m[0][j], &zp_det(&minor(m, 0, j), field), field);
        if j % 2 == 0 {
            acc = zp_add(&acc, &term, field);
        } else {
            acc = zp_sub(&acc, &term, field);
        }
    }
    acc
}

impl TzMatrix {
    /// Exact check adjugate * entries = det * identity.
    pub fn check_inverse(&self) -> bool {
        let k = self.size;
        for i in 0..k {
            for j in 0..k {
                let mut acc = zp_zero();
                for l in 0..k {
                    acc = zp_add(
                        &acc,
                        &zp_mul(&self.adjugate[i][l], &self.entries[l][j], self.field),
                        self.field,
                    );
                }
                let expect = if i == j { self.det.clone() } else { zp_zero() };
                if !zp_eq(&acc, &expect, self.field) {
                    return false;
                }
            }
        }
        true
    }

    pub fn det_display(&self) -> String {
        zp_display(&self.det)
    }
}

/// The specialized matrix T_z = (a_ij(1, z)) and its exact inverse.
pub fn tz_matrix(lin: &LinearMahlerSystem) -> Result<TzMatrix> {
    let field = lin.field();
    let k = lin.n() + 1;
    let entries: Vec<Vec<ZPoly>> = lin
        .forms
        .iter()
        .map(|row| row.iter().map(zp_of_form).collect())
        .collect();
    let det = zp_det(&entries, field);
    if zp_is_zero(&det) {
        return Err(Error::DegenerateSystem);
    }
    let mut adjugate = vec![vec![zp_zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let cof = zp_det(&minor(&entries, j, i), field);
            adjugate[i][j] = if (i + j) % 2 == 0 { cof } else { zp_neg(&cof) };
        }
    }
    Ok(TzMatrix {
        size: k,
        field,
        entries,
        adjugate,
        det,
    })
}

/// C3 = ord_z det T_z^{-1} = -ord_z det T_z; negative values are reported
/// verbatim.
pub fn c3(lin: &LinearMahlerSystem) -> Result<isize> {
    let tz = tz_matrix(lin)?;
    let ord = zp_ord(&tz.det).expect("nonzero determinant");
    Ok(-(ord as isize))
}

/// max(2, C3/(lambda - 1)) as an exact rational; lambda must be >= 2.
pub fn stability_bound_value(c3: isize, lambda: usize) -> Result<BigRational> {
    if lambda < 2 {
        return Err(Error::LambdaTooSmall(lambda));
    }
    let ratio = BigRational::new(BigInt::from(c3), BigInt::from(lambda as i64 - 1));
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(if ratio > two { ratio } else { two })
}

/// The unconditional order bound max(2, C3/(lambda - 1)) for the system.
pub fn stability_bound(lin: &LinearMahlerSystem) -> Result<BigRational> {
    let lambda = lin.lambda()?;
    stability_bound_value(c3(lin)?, lambda)
}

// ---------------------------------------------------------------------------
// T-stability
// ---------------------------------------------------------------------------

/// Outcome of the two-part stability check with per-check diagnostics.
#[derive(Debug, Clone)]
pub struct StableCheck {
    pub stable: bool,
    /// Every pulled-back basis element lies in W saturated at the irregular
    /// locus forms.
    pub pullback_ok: bool,
    /// Rank of the pullback-generated ideal equals rank of W (dimension
    /// preservation proxy).
    pub rank_ok: bool,
    /// A basis element whose pullback escapes, when pullback_ok is false.
    pub witness: Option<BiPoly>,
    pub lines: Vec<String>,
}

fn ideal_rank(h: &IdealHandle) -> Result<usize> {
    if h.generators.iter().all(BiPoly::is_zero) {
        return Ok(0);
    }
    h.rank()
}

/// Checks T-stability of V(W): (i) T*(g) lies in W saturated at the
/// irregular-locus forms for every reduced-basis g, and (ii) the pullback
/// ideal has the same rank as W.
pub fn check_t_stable(w: &IdealHandle, lin: &LinearMahlerSystem) -> Result<StableCheck> {
    let sys = lin.system();
    let field = lin.field();
    let mut lines = Vec::new();

    if w.generators.iter().all(BiPoly::is_zero) {
        lines.push("zero ideal: trivially T-stable".into());
        return Ok(StableCheck {
            stable: true,
            pullback_ok: true,
            rank_ok: true,
            witness: None,
            lines,
        });
    }

    let phi = Transformation::mahler(sys.clone());
    let gb = w.groebner()?.to_vec();

    // The irregular locus is cut by the product ideal (A0', A1')(A0, ..., An);
    // saturating W at each product of generators realizes W : J^infinity.
    let mut sat_handles = Vec::new();
    for u in [&sys.a0p, &sys.a1p] {
        if u.is_zero() {
            continue;
        }
        for v in &sys.a {
            if v.is_zero() {
                continue;
            }
            sat_handles.push(w.saturate(&u.mul(v))?);
        }
    }

    let mut pullback_ok = true;
    let mut witness = None;
    let mut imgs = Vec::new();
    for g in &gb {
        let img = phi.apply(g)?;
        if !img.is_zero() {
            imgs.push(img.clone());
        }
        let mut member = img.is_zero();
        if !member {
            member = true;
            for sat in &sat_handles {
                if !sat.member(&img)? {
                    member = false;
                    break;
                }
            }
        }
        if member {
            lines.push(format!("pullback of {g} stays in the saturated ideal"));
        } else {
            lines.push(format!("pullback of {g} escapes: {img}"));
            if pullback_ok {
                witness = Some(g.clone());
            }
            pullback_ok = false;
        }
    }

    let rank_w = ideal_rank(w)?;
    let pull = IdealHandle::new(w.n, field, imgs);
    let rank_pull = ideal_rank(&pull)?;
    let rank_ok = rank_pull == rank_w;
    lines.push(format!(
        "rank(W) = {rank_w}, rank(T* W) = {rank_pull}: {}",
        if rank_ok { "preserved" } else { "changed" }
    ));

    Ok(StableCheck {
        stable: pullback_ok && rank_ok,
        pullback_ok,
        rank_ok,
        witness,
        lines,
    })
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    /// Exact order upper bound within the theoretical bound.
    Satisfied,
    /// Exact order upper bound above the theoretical bound (the generator
    /// proxy exceeds it; not by itself a disproof).
    Exceeded,
    /// Order only known as AtLeast at this precision.
    Inconclusive,
    /// The variety failed the T-stability check; the bound does not apply.
    NotStable,
}

/// Combined verdict for one T-stable candidate variety.
#[derive(Debug, Clone)]
pub struct StabilityVerdict {
    pub generators: Vec<BiPoly>,
    pub is_t_stable: bool,
    pub ord_upper: OrdResult,
    pub bound: BigRational,
    pub status: VerdictStatus,
    pub satisfied: bool,
    pub check: StableCheck,
}

/// Evaluates the order bound max(2, C3/(lambda-1)) against the certified
/// vanishing order of W along the point (min over reduced-basis elements).
pub fn verify_stable_ord_bound(
    w: &IdealHandle,
    lin: &LinearMahlerSystem,
    point: &[PowerSeries],
) -> Result<StabilityVerdict> {
    let check = check_t_stable(w, lin)?;
    let bound = stability_bound(lin)?;
    let ord_upper = w.ord_upper_bound(point)?;
    let status = if !check.stable {
        VerdictStatus::NotStable
    } else {
        match ord_upper {
            OrdResult::Exact(e) => {
                if BigRational::from_integer(BigInt::from(e)) <= bound {
                    VerdictStatus::Satisfied
                } else {
                    VerdictStatus::Exceeded
                }
            }
            OrdResult::AtLeast(_) => VerdictStatus::Inconclusive,
        }
    };
    Ok(StabilityVerdict {
        generators: w.generators.clone(),
        is_t_stable: check.stable,
        ord_upper,
        bound,
        status,
        satisfied: status == VerdictStatus::Satisfied,
        check,
    })
}

/// Structured text report: system data, C3, lambda, bound, then one block
/// per candidate variety.
pub fn stability_report(
    lin: &LinearMahlerSystem,
    verdicts: &[(String, StabilityVerdict)],
) -> Result<String> {
    let tz = tz_matrix(lin)?;
    let c3v = c3(lin)?;
    let lambda = lin.lambda()?;
    let bound = stability_bound_value(c3v, lambda)?;
    let mut out = String::new();
    out.push_str(&format!(
        "linear Mahler system: n = {}, det T_z = {}\n",
        lin.n(),
        tz.det_display()
    ));
    out.push_str(&format!("C3 = {c3v}, lambda = {lambda}, bound = {bound}\n"));
    for (name, v) in verdicts {
        out.push_str(&format!(
            "variety {name}: T-stable = {}, ord upper = {}, status = {:?}\n",
            v.is_t_stable, v.ord_upper, v.status
        ));
        for line in &v.check.lines {
            out.push_str(&format!("  {line}\n"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::f_tilde;
    use crate::fixtures::{fredholm_series, fredholm_system};

    fn q() -> Field {
        Field::Q
    }

    fn cq(v: i64) -> Coeff {
        Coeff::from_integer(q(), v)
    }

    fn fredholm_lin() -> LinearMahlerSystem {
        LinearMahlerSystem::from_mahler(&fredholm_system()).unwrap()
    }

    /// System with solution f = z: f(z^2) = z f(z), matrix diag(1, z).
    fn zdiag_lin() -> LinearMahlerSystem {
        let n = 1;
        let x0p = BiPoly::x_prime(n, q(), 0);
        let x1p = BiPoly::x_prime(n, q(), 1);
        LinearMahlerSystem::from_forms(
            n,
            x0p.pow(2),
            x1p.pow(2),
            vec![
                vec![x0p.clone(), BiPoly::zero(n, q())],
                vec![BiPoly::zero(n, q()), x1p.clone()],
            ],
        )
        .unwrap()
    }

    fn identity_lin() -> LinearMahlerSystem {
        let n = 1;
        let x0p = BiPoly::x_prime(n, q(), 0);
        let x1p = BiPoly::x_prime(n, q(), 1);
        LinearMahlerSystem::from_forms(
            n,
            x0p.pow(2),
            x1p.pow(2),
            vec![
                vec![x0p.clone(), BiPoly::zero(n, q())],
                vec![BiPoly::zero(n, q()), x0p.clone()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn fredholm_tz_matrix_and_inverse() {
        let tz = tz_matrix(&fredholm_lin()).unwrap();
        // [[1, 0], [-z, 1]] with inverse [[1, 0], [z, 1]].
        assert_eq!(tz.entries[0][0], vec![cq(1)]);
        assert!(zp_is_zero(&tz.entries[0][1]));
        assert_eq!(tz.entries[1][0], vec![cq(0), cq(-1)]);
        assert_eq!(tz.entries[1][1], vec![cq(1)]);
        assert_eq!(tz.det, vec![cq(1)]);
        assert_eq!(tz.adjugate[1][0], vec![cq(0), cq(1)]);
        assert!(tz.check_inverse());
    }

    #[test]
    fn identity_system_inverse_is_identity() {
        let tz = tz_matrix(&identity_lin()).unwrap();
        assert_eq!(tz.det, vec![cq(1)]);
        assert_eq!(tz.adjugate[0][0], vec![cq(1)]);
        assert_eq!(tz.adjugate[1][1], vec![cq(1)]);
        assert!(zp_is_zero(&tz.adjugate[0][1]));
        assert!(zp_is_zero(&tz.adjugate[1][0]));
        assert!(tz.check_inverse());
    }

    #[test]
    fn duplicate_rows_are_degenerate() {
        let n = 1;
        let x0p = BiPoly::x_prime(n, q(), 0);
        let x1p = BiPoly::x_prime(n, q(), 1);
        let lin = LinearMahlerSystem::from_forms(
            n,
            x0p.pow(2),
            x1p.pow(2),
            vec![
                vec![x0p.clone(), x1p.clone()],
                vec![x0p.clone(), x1p.clone()],
            ],
        )
        .unwrap();
        assert!(matches!(tz_matrix(&lin), Err(Error::DegenerateSystem)));
        assert!(matches!(c3(&lin), Err(Error::DegenerateSystem)));
    }

    #[test]
    fn c3_values() {
        assert_eq!(c3(&fredholm_lin()).unwrap(), 0);
        assert_eq!(c3(&identity_lin()).unwrap(), 0);
        // det T_z = z, inverse determinant z^{-1}: negative value verbatim.
        assert_eq!(c3(&zdiag_lin()).unwrap(), -1);
    }

    #[test]
    fn c3_is_permutation_invariant() {
        let lin = zdiag_lin();
        let swapped = LinearMahlerSystem::from_forms(
            1,
            lin.system().a0p.clone(),
            lin.system().a1p.clone(),
            vec![lin.forms()[1].clone(), lin.forms()[0].clone()],
        )
        .unwrap();
        assert_eq!(c3(&lin).unwrap(), c3(&swapped).unwrap());
        let col_swapped = LinearMahlerSystem::from_forms(
            1,
            lin.system().a0p.clone(),
            lin.system().a1p.clone(),
            vec![
                vec![lin.forms()[0][1].clone(), lin.forms()[0][0].clone()],
                vec![lin.forms()[1][1].clone(), lin.forms()[1][0].clone()],
            ],
        )
        .unwrap();
        assert_eq!(c3(&lin).unwrap(), c3(&col_swapped).unwrap());
    }

    #[test]
    fn bound_values() {
        let two = BigRational::from_integer(BigInt::from(2));
        let three = BigRational::from_integer(BigInt::from(3));
        assert_eq!(stability_bound(&fredholm_lin()).unwrap(), two);
        assert_eq!(stability_bound_value(6, 3).unwrap(), three);
        assert_eq!(stability_bound_value(-1, 2).unwrap(), two);
        assert!(matches!(
            stability_bound_value(6, 1),
            Err(Error::LambdaTooSmall(1))
        ));
    }

    #[test]
    fn v_x0_is_stable_under_fredholm() {
        let lin = fredholm_lin();
        let w = IdealHandle::new(1, q(), vec![BiPoly::x(1, q(), 0)]);
        let check = check_t_stable(&w, &lin).unwrap();
        assert!(check.stable);
        assert!(check.pullback_ok && check.rank_ok);
    }

    #[test]
    fn graph_of_z_is_rejected_under_fredholm() {
        let lin = fredholm_lin();
        let g = BiPoly::x_prime(1, q(), 1)
            .mul(&BiPoly::x(1, q(), 0))
            .sub(&BiPoly::x_prime(1, q(), 0).mul(&BiPoly::x(1, q(), 1)));
        let w = IdealHandle::new(1, q(), vec![g]);
        let check = check_t_stable(&w, &lin).unwrap();
        assert!(!check.stable);
        assert!(!check.pullback_ok);
        assert!(check.witness.is_some());
    }

    #[test]
    fn zero_ideal_is_stable() {
        let lin = fredholm_lin();
        let w = IdealHandle::new(1, q(), vec![]);
        assert!(check_t_stable(&w, &lin).unwrap().stable);
    }

    #[test]
    fn fredholm_v_x0_verdict_satisfied() {
        let lin = fredholm_lin();
        let w = IdealHandle::new(1, q(), vec![BiPoly::x(1, q(), 0)]);
        let point = f_tilde(&[fredholm_series(32)]);
        let v = verify_stable_ord_bound(&w, &lin, &point).unwrap();
        assert!(v.is_t_stable);
        assert_eq!(v.ord_upper, OrdResult::Exact(0));
        assert_eq!(v.bound, BigRational::from_integer(BigInt::from(2)));
        assert!(v.satisfied);
    }

    #[test]
    fn zdiag_v_x1_order_one_satisfied() {
        // f = z solves the zdiag system; X1 vanishes on f~ to order exactly 1.
        let lin = zdiag_lin();
        let w = IdealHandle::new(1, q(), vec![BiPoly::x(1, q(), 1)]);
        let z = PowerSeries::z(q(), 32);
        let point = f_tilde(&[z]);
        let v = verify_stable_ord_bound(&w, &lin, &point).unwrap();
        assert!(v.is_t_stable);
        assert_eq!(v.ord_upper, OrdResult::Exact(1));
        assert!(v.satisfied);
    }

    #[test]
    fn identically_vanishing_generator_is_inconclusive() {
        // The graph X1'X0 - X0'X1 is stable for zdiag and vanishes
        // identically on f = z, so only AtLeast is certifiable.
        let lin = zdiag_lin();
        let g = BiPoly::x_prime(1, q(), 1)
            .mul(&BiPoly::x(1, q(), 0))
            .sub(&BiPoly::x_prime(1, q(), 0).mul(&BiPoly::x(1, q(), 1)));
        let w = IdealHandle::new(1, q(), vec![g]);
        let z = PowerSeries::z(q(), 16);
        let point = f_tilde(&[z]);
        let v = verify_stable_ord_bound(&w, &lin, &point).unwrap();
        assert!(v.is_t_stable);
        assert_eq!(v.status, VerdictStatus::Inconclusive);
        assert!(!v.satisfied);
    }

    #[test]
    fn report_mentions_constants() {
        let lin = fredholm_lin();
        let w = IdealHandle::new(1, q(), vec![BiPoly::x(1, q(), 0)]);
        let point = f_tilde(&[fredholm_series(32)]);
        let v = verify_stable_ord_bound(&w, &lin, &point).unwrap();
        let report = stability_report(&lin, &[("V_X0".into(), v)]).unwrap();
        assert!(report.contains("C3 = 0"));
        assert!(report.contains("lambda = 2"));
        assert!(report.contains("bound = 2"));
        assert!(report.contains("V_X0"));
    }
}
