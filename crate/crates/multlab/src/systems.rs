//! Differential and Mahler systems, their associated transformations phi
//! (the derivation D and the morphism pullback T*), series solvers, iterate
//! degree-growth tracking, empirical lambda estimation, and correctness-axiom
//! property checks.
//!
//! Differential kind: for a system f_i' = A_i(z,f)/A0(z,f) the homogeneous
//! operator is realized as the unique bigraded derivation restricting to the
//! affine D = A0 d/dz + sum A_i d/dX_i, namely
//!     D = X0' * hA0 d/dX1' + sum_i X0 * hA_i d/dX_i
//! with every A_j homogenized to the common bidegree (s, t) =
//! (max deg_z A_j, max deg_X A_j). This makes D a genuine derivation
//! (Leibniz holds identically) and bigraded of shift (+s, +t), so the
//! commutation D(hP) = h(D(P)) holds exactly against the bound-parameterized
//! homogenization h_{(deg_z P + s, deg_X P + t)}. Growth bounds for the
//! differential kind are asserted on the dehomogenized shadow (the output's
//! unit-variable compensation factors X0'^a X0^b are projectively irrelevant
//! and would otherwise falsify any mu on X-free inputs).

use crate::bipoly::{bihomogenize_bounds, AffinePoly, BiPoly, f_tilde};
use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Field, OrdResult, PowerSeries};
use crate::mpoly::MPoly;
use num::rational::BigRational;
use num::{BigInt, One, Zero};
use rand::Rng;

/// f_i'(z) = A_i(z, f)/A0(z, f), with initial values f(0).
#[derive(Debug, Clone)]
pub struct DifferentialSystem {
    pub n: usize,
    /// A0, ..., An in k[z, X1..Xn].
    pub a: Vec<AffinePoly>,
    /// f(0), length n.
    pub initial: Vec<Coeff>,
}

impl DifferentialSystem {
    pub fn new(n: usize, a: Vec<AffinePoly>, initial: Vec<Coeff>) -> Result<DifferentialSystem> {
        if a.len() != n + 1 {
            return Err(Error::Config(format!(
                "differential system needs n+1 = {} polynomials A0..An, got {}",
                n + 1,
                a.len()
            )));
        }
        if initial.len() != n {
            return Err(Error::Config(format!(
                "differential system needs {n} initial values, got {}",
                initial.len()
            )));
        }
        if a[0].is_zero() {
            return Err(Error::Config("A0 must be nonzero".into()));
        }
        Ok(DifferentialSystem { n, a, initial })
    }

    pub fn field(&self) -> Field {
        self.a[0].field()
    }

    /// (s, t) = (max deg_z A_i, max deg_X A_i).
    pub fn st(&self) -> (usize, usize) {
        let s = self.a.iter().map(AffinePoly::deg_z).max().unwrap_or(0);
        let t = self.a.iter().map(AffinePoly::deg_x).max().unwrap_or(0);
        (s, t)
    }
}

/// A0(f~(z)) f_i(p(z)) = A_i(f~(z)) with p = A1'/A0' of homogeneous degree r.
#[derive(Debug, Clone)]
pub struct MahlerSystem {
    pub n: usize,
    /// A0', A1': homogeneous of degree r in (X0', X1') (X-degree 0).
    pub a0p: BiPoly,
    pub a1p: BiPoly,
    /// A0, ..., An: bi-homogeneous of common bidegree (s, t).
    pub a: Vec<BiPoly>,
}

impl MahlerSystem {
    pub fn new(n: usize, a0p: BiPoly, a1p: BiPoly, a: Vec<BiPoly>) -> Result<MahlerSystem> {
        if a.len() != n + 1 {
            return Err(Error::Config(format!(
                "Mahler system needs n+1 = {} polynomials A0..An, got {}",
                n + 1,
                a.len()
            )));
        }
        if a0p.is_zero() || a[0].is_zero() {
            return Err(Error::Config("A0' and A0 must be nonzero".into()));
        }
        for (name, f) in [("A0'", &a0p), ("A1'", &a1p)] {
            if f.bidegree().1 != 0 && !f.is_zero() {
                return Err(Error::Config(format!("{name} must involve only X0', X1'")));
            }
            if !f.is_bihomogeneous() {
                return Err(Error::NotBiHomogeneous(name.to_string()));
            }
        }
        let r = a0p.bidegree().0;
        if !a1p.is_zero() && a1p.bidegree().0 != r {
            return Err(Error::Config(
                "A0' and A1' must be homogeneous of the same degree r".into(),
            ));
        }
        let st = a[0].bidegree();
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_bihomogeneous() {
                return Err(Error::NotBiHomogeneous(format!("A{i}")));
            }
            if !ai.is_zero() && ai.bidegree() != st {
                return Err(Error::Config(format!(
                    "A{i} must have the common bidegree ({}, {})",
                    st.0, st.1
                )));
            }
        }
        Ok(MahlerSystem { n, a0p, a1p, a })
    }

    pub fn field(&self) -> Field {
        self.a[0].field()
    }

    pub fn r(&self) -> usize {
        self.a0p.bidegree().0
    }

    pub fn st(&self) -> (usize, usize) {
        self.a[0].bidegree()
    }

    /// Degree of p (the declared homogeneous degree r).
    pub fn d(&self) -> usize {
        self.r()
    }

    /// A form in (X0', X1') evaluated at (1, z) as a series.
    pub fn xprime_at_1_z(form: &BiPoly, field: Field, prec: usize) -> PowerSeries {
        let mut coeffs = vec![Coeff::zero(field); prec];
        for (m, c) in &form.poly.terms {
            let e = m[1] as usize; // X1' exponent; X0' evaluates to 1
            if e < prec {
                coeffs[e] = coeffs[e].add(c);
            }
        }
        PowerSeries::new(field, coeffs)
    }

    /// lambda = ord_z p(z) = ord A1'(1,z) - ord A0'(1,z); None when either is
    /// identically zero.
    pub fn lambda(&self) -> Option<isize> {
        let field = self.field();
        let prec = self.r() + 1;
        let num = Self::xprime_at_1_z(&self.a1p, field, prec);
        let den = Self::xprime_at_1_z(&self.a0p, field, prec);
        match (num.ord(), den.ord()) {
            (OrdResult::Exact(a), OrdResult::Exact(b)) => Some(a as isize - b as isize),
            _ => None,
        }
    }

    /// p(z) as a series; requires A0'(1, 0) != 0.
    pub fn p_series(&self, prec: usize) -> Result<PowerSeries> {
        let field = self.field();
        let num = Self::xprime_at_1_z(&self.a1p, field, prec);
        let den = Self::xprime_at_1_z(&self.a0p, field, prec);
        num.div_unit(&den)
            .map_err(|_| Error::NonInvertibleLinearPart)
    }
}

#[derive(Debug, Clone)]
pub enum PhiKind {
    DifferentialOperator(DifferentialSystem),
    MorphismPullback(MahlerSystem),
}

/// The transformation phi with growth parameters (mu, nu0, nu1) and order
/// parameters (lambda, K_lambda).
#[derive(Debug, Clone)]
pub struct Transformation {
    pub kind: PhiKind,
    pub mu: BigRational,
    pub nu0: BigRational,
    pub nu1: BigRational,
    pub lambda: BigRational,
    pub k_lambda: usize,
    /// Fault injection for the corrupted-phi fixture: adds Q to phi(Q),
    /// breaking both the Leibniz and homomorphism identities.
    pub fault: bool,
    /// Differential kind: A_j homogenized to the common bidegree (s, t).
    hom_a: Vec<BiPoly>,
}

fn rat(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn rat_pow(r: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

impl Transformation {
    /// Differential kind with conservative default growth parameters
    /// mu = max(1,t), nu0 = max(1,s), nu1 = s (asserted on the dehomogenized
    /// shadow; see module docs), lambda = 1, K_lambda = 1.
    pub fn differential(sys: DifferentialSystem) -> Transformation {
        let (s, t) = sys.st();
        let hom_a = sys
            .a
            .iter()
            .map(|ai| bihomogenize_bounds(ai, s, t))
            .collect();
        Transformation {
            mu: rat(t.max(1)),
            nu0: rat(s.max(1)),
            nu1: rat(s),
            lambda: rat(1),
            k_lambda: 1,
            fault: false,
            hom_a,
            kind: PhiKind::DifferentialOperator(sys),
        }
    }

    /// Morphism kind with the paper's defaults mu = t, nu0 = r, nu1 = s;
    /// lambda = ord_z p (when defined, else 1), K_lambda = 1.
    pub fn mahler(sys: MahlerSystem) -> Transformation {
        let (s, t) = sys.st();
        let r = sys.r();
        let lambda = sys
            .lambda()
            .filter(|&l| l >= 0)
            .map(|l| rat(l as usize))
            .unwrap_or_else(|| rat(1));
        Transformation {
            mu: rat(t),
            nu0: rat(r),
            nu1: rat(s),
            lambda,
            k_lambda: 1,
            fault: false,
            hom_a: Vec::new(),
            kind: PhiKind::MorphismPullback(sys),
        }
    }

    pub fn with_growth(mut self, mu: BigRational, nu0: BigRational, nu1: BigRational) -> Self {
        self.mu = mu;
        self.nu0 = nu0;
        self.nu1 = nu1;
        self
    }

    pub fn with_lambda(mut self, lambda: BigRational, k_lambda: usize) -> Self {
        self.lambda = lambda;
        self.k_lambda = k_lambda;
        self
    }

    pub fn with_fault(mut self) -> Self {
        self.fault = true;
        self
    }

    pub fn n(&self) -> usize {
        match &self.kind {
            PhiKind::DifferentialOperator(s) => s.n,
            PhiKind::MorphismPullback(s) => s.n,
        }
    }

    pub fn field(&self) -> Field {
        match &self.kind {
            PhiKind::DifferentialOperator(s) => s.field(),
            PhiKind::MorphismPullback(s) => s.field(),
        }
    }

    fn apply_raw(&self, q: &BiPoly) -> BiPoly {
        let n = self.n();
        let field = self.field();
        match &self.kind {
            PhiKind::DifferentialOperator(_) => {
                // X0'*hA0 dQ/dX1' + sum X0*hA_i dQ/dX_i.
                let x0p = BiPoly::x_prime(n, field, 0);
                let x0 = BiPoly::x(n, field, 0);
                let mut acc = x0p.mul(&self.hom_a[0]).mul(&q.derivative(1));
                for i in 1..=n {
                    acc = acc.add(&x0.mul(&self.hom_a[i]).mul(&q.derivative(2 + i)));
                }
                acc
            }
            PhiKind::MorphismPullback(sys) => {
                // Substitute X0' -> A0', X1' -> A1', Xi -> A_i.
                let mut images: Vec<MPoly> = Vec::with_capacity(n + 3);
                images.push(sys.a0p.poly.clone());
                images.push(sys.a1p.poly.clone());
                for ai in &sys.a {
                    images.push(ai.poly.clone());
                }
                BiPoly::from_mpoly(n, q.poly.substitute(&images, n + 3))
            }
        }
    }

    fn growth_violation(&self, q: &BiPoly, out: &BiPoly) -> Option<(usize, usize, usize, usize)> {
        if out.is_zero() {
            return None;
        }
        let ((a, b), (a2, b2)) = match &self.kind {
            PhiKind::MorphismPullback(_) => (q.bidegree(), out.bidegree()),
            PhiKind::DifferentialOperator(_) => {
                // Dehomogenized shadow: (deg_z, deg_X).
                let qd = q.dehomogenize();
                let od = out.dehomogenize();
                ((qd.deg_z(), qd.deg_x()), (od.deg_z(), od.deg_x()))
            }
        };
        let ok_x = rat(b2) <= self.mu.clone() * rat(b);
        let ok_xp = rat(a2) <= self.nu0.clone() * rat(a) + self.nu1.clone() * rat(b);
        if ok_x && ok_xp {
            None
        } else {
            Some((a, b, a2, b2))
        }
    }

    /// phi(Q), with the growth assertions of the framework enforced.
    pub fn apply(&self, q: &BiPoly) -> Result<BiPoly> {
        let mut out = self.apply_raw(q);
        if self.fault {
            out = out.add(q);
        }
        if let Some((a, b, a2, b2)) = self.growth_violation(q, &out) {
            return Err(Error::GrowthViolation {
                m0: a,
                n0: b,
                m1: a2,
                n1: b2,
                mu: self.mu.to_string(),
                nu0: self.nu0.to_string(),
                nu1: self.nu1.to_string(),
            });
        }
        Ok(out)
    }

    /// phi^N(Q); also asserts the iterated growth bounds
    /// deg_X phi^N(Q) <= mu^N deg_X Q and
    /// deg_X' phi^N(Q) <= nu0^N deg_X' Q + nu1 (sum nu0^{N-1-i} mu^i) deg_X Q.
    pub fn iterate(&self, q: &BiPoly, iters: usize) -> Result<BiPoly> {
        let measure = |p: &BiPoly| -> (usize, usize) {
            match &self.kind {
                PhiKind::MorphismPullback(_) => p.bidegree(),
                PhiKind::DifferentialOperator(_) => {
                    let d = p.dehomogenize();
                    (d.deg_z(), d.deg_x())
                }
            }
        };
        let (a0, b0) = measure(q);
        let mut cur = q.clone();
        for _ in 0..iters {
            cur = self.apply(&cur)?;
        }
        if !cur.is_zero() {
            let (a, b) = measure(&cur);
            let bound_x = rat_pow(&self.mu, iters) * rat(b0);
            let mut geom = BigRational::zero();
            for i in 0..iters {
                geom += rat_pow(&self.nu0, iters - 1 - i) * rat_pow(&self.mu, i);
            }
            let bound_xp = rat_pow(&self.nu0, iters) * rat(a0) + self.nu1.clone() * geom * rat(b0);
            if rat(b) > bound_x || rat(a) > bound_xp {
                return Err(Error::GrowthViolation {
                    m0: a0,
                    n0: b0,
                    m1: a,
                    n1: b,
                    mu: self.mu.to_string(),
                    nu0: self.nu0.to_string(),
                    nu1: self.nu1.to_string(),
                });
            }
        }
        Ok(cur)
    }
}

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

fn eval_at_consts(p: &AffinePoly, z0: &Coeff, xs: &[Coeff]) -> Coeff {
    let field = p.field();
    let mut acc = Coeff::zero(field);
    for (m, c) in &p.poly.terms {
        let mut t = c.clone();
        t = t.mul(&z0.pow(m[0] as u64));
        for (i, &e) in m.iter().enumerate().skip(1) {
            t = t.mul(&xs[i - 1].pow(e as u64));
        }
        acc = acc.add(&t);
    }
    acc
}

/// Solve f_i' = A_i(z,f)/A0(z,f) with the given initial values, by direct
/// coefficient recursion: knowing f mod z^m determines A_i/A0 mod z^m and
/// hence the next coefficient f_i[m] = (A_i/A0)[m-1]/m.
pub fn solve_ode(sys: &DifferentialSystem, prec: usize) -> Result<Vec<PowerSeries>> {
    let field = sys.field();
    let zero = Coeff::zero(field);
    let a0_at_origin = eval_at_consts(&sys.a[0], &zero, &sys.initial);
    if a0_at_origin.is_zero() {
        return Err(Error::SingularInitialPoint);
    }
    let mut coeffs: Vec<Vec<Coeff>> = sys
        .initial
        .iter()
        .map(|c| {
            let mut v = vec![Coeff::zero(field); prec.max(1)];
            v[0] = c.clone();
            v
        })
        .collect();
    for m in 1..prec {
        let z = PowerSeries::z(field, m);
        let f_trunc: Vec<PowerSeries> = coeffs
            .iter()
            .map(|v| PowerSeries::new(field, v[..m].to_vec()))
            .collect();
        let a0_eval = sys.a[0].evaluate(&z, &f_trunc)?;
        for i in 1..=sys.n {
            let ai_eval = sys.a[i].evaluate(&z, &f_trunc)?;
            let ratio = ai_eval.div_unit(&a0_eval)?;
            let next = ratio
                .coeff(m - 1)
                .div_by_integer(m as u64)
                .map_err(|_| Error::CharacteristicObstruction(m))?;
            coeffs[i - 1][m] = next;
        }
    }
    Ok(coeffs
        .into_iter()
        .map(|v| PowerSeries::new(field, v[..prec.max(1)].to_vec()))
        .collect())
}

/// Residuals A0 f_i' - A_i of a claimed ODE solution (one per equation).
pub fn ode_residuals(sys: &DifferentialSystem, f: &[PowerSeries]) -> Result<Vec<OrdResult>> {
    let field = sys.field();
    let prec = f.iter().map(PowerSeries::prec).min().unwrap_or(0);
    let z = PowerSeries::z(field, prec);
    let a0_eval = sys.a[0].evaluate(&z, f)?;
    let mut out = Vec::new();
    for i in 1..=sys.n {
        let ai_eval = sys.a[i].evaluate(&z, f)?;
        let lhs = a0_eval.mul(&f[i - 1].derivative())?;
        out.push(lhs.sub(&ai_eval.truncate(lhs.prec()))?.ord());
    }
    Ok(out)
}

fn invert_const_matrix(m: &[Vec<Coeff>], field: Field) -> Option<Vec<Vec<Coeff>>> {
    let n = m.len();
    // Gauss-Jordan on [M | I].
    let mut aug: Vec<Vec<Coeff>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    Coeff::one(field)
                } else {
                    Coeff::zero(field)
                });
            }
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let inv = aug[col][col].inv().ok()?;
        for j in 0..2 * n {
            aug[col][j] = aug[col][j].mul(&inv);
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for j in 0..2 * n {
                    aug[r][j] = aug[r][j].sub(&factor.mul(&aug[col][j]));
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve J x = b over truncated series, coefficient by coefficient; requires
/// J(0) invertible.
fn solve_linear_series(
    j: &[Vec<PowerSeries>],
    b: &[PowerSeries],
    prec: usize,
    field: Field,
) -> Result<Vec<PowerSeries>> {
    let n = b.len();
    let j0: Vec<Vec<Coeff>> = j
        .iter()
        .map(|row| row.iter().map(|s| s.coeff(0).clone()).collect())
        .collect();
    let j0_inv = invert_const_matrix(&j0, field).ok_or(Error::NonInvertibleLinearPart)?;
    let mut x: Vec<Vec<Coeff>> = vec![vec![Coeff::zero(field); prec]; n];
    for k in 0..prec {
        // rhs_k = b_k - sum_{l=1..k} J_l x_{k-l}
        let mut rhs: Vec<Coeff> = (0..n).map(|i| b[i].coeff(k).clone()).collect();
        for l in 1..=k {
            for i in 0..n {
                for jj in 0..n {
                    let jc = j[i][jj].coeff(l);
                    if !jc.is_zero() {
                        rhs[i] = rhs[i].sub(&jc.mul(&x[jj][k - l]));
                    }
                }
            }
        }
        for i in 0..n {
            let mut acc = Coeff::zero(field);
            for (jj, r) in rhs.iter().enumerate() {
                acc = acc.add(&j0_inv[i][jj].mul(r));
            }
            x[i][k] = acc;
        }
    }
    Ok(x.into_iter().map(|v| PowerSeries::new(field, v)).collect())
}

/// Solve the Mahler system by doubling: knowing f mod z^m determines
/// g = f o p mod z^{lambda m}, and one Newton step against the X-Jacobian of
/// F_i = A_i(z, f) - A0(z, f) g_i (dehomogenized) is exact mod z^{2m}.
/// `seed` supplies the initial coefficient segment of every f_i.
pub fn solve_mahler(
    sys: &MahlerSystem,
    seed: &[Vec<Coeff>],
    prec: usize,
) -> Result<Vec<PowerSeries>> {
    let field = sys.field();
    let lambda = match sys.lambda() {
        Some(l) if l >= 2 => l as usize,
        Some(l) => return Err(Error::LambdaTooSmall(l.max(0) as usize)),
        None => return Err(Error::LambdaTooSmall(0)),
    };
    if seed.len() != sys.n || seed.iter().any(|s| s.is_empty()) {
        return Err(Error::InsufficientSeed(format!(
            "need a nonempty coefficient segment for each of the {} functions",
            sys.n
        )));
    }
    let seg = seed.iter().map(Vec::len).min().unwrap();
    let a_deh: Vec<AffinePoly> = sys.a.iter().map(BiPoly::dehomogenize).collect();
    // d/dX_j of A_i and A0, dehomogenized.
    let mut m = seg;
    let mut f: Vec<Vec<Coeff>> = seed.iter().map(|s| s[..seg].to_vec()).collect();
    while m < prec {
        let target = prec.min((2 * m).min(lambda * m));
        let p = sys.p_series(target)?;
        let f_cur: Vec<PowerSeries> = f
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.resize(target, Coeff::zero(field));
                PowerSeries::new(field, w)
            })
            .collect();
        // g_i = f_i(p) mod z^{target}: only the certified prefix of f enters.
        let g: Vec<PowerSeries> = f
            .iter()
            .map(|v| PowerSeries::new(field, v[..m].to_vec()).compose(&p.truncate(target)))
            .collect::<std::result::Result<_, _>>()?;
        let g: Vec<PowerSeries> = g
            .into_iter()
            .map(|s| {
                let mut w = s.coeffs().to_vec();
                w.resize(target, Coeff::zero(field));
                PowerSeries::new(field, w)
            })
            .collect();
        let z = PowerSeries::z(field, target);
        let a0_eval = a_deh[0].evaluate(&z, &f_cur)?;
        // F_i = A_i(z, f) - A0(z, f) g_i.
        let mut residual: Vec<PowerSeries> = Vec::with_capacity(sys.n);
        for i in 1..=sys.n {
            let ai_eval = a_deh[i].evaluate(&z, &f_cur)?;
            residual.push(ai_eval.sub(&a0_eval.mul(&g[i - 1])?)?);
        }
        // J_ij = dA_i/dX_j (z, f) - g_i dA0/dX_j (z, f).
        let mut jac: Vec<Vec<PowerSeries>> = Vec::with_capacity(sys.n);
        for i in 1..=sys.n {
            let mut row = Vec::with_capacity(sys.n);
            for jj in 1..=sys.n {
                let d_ai = a_deh[i].derivative_x(jj).evaluate(&z, &f_cur)?;
                let d_a0 = a_deh[0].derivative_x(jj).evaluate(&z, &f_cur)?;
                row.push(d_ai.sub(&g[i - 1].mul(&d_a0)?)?);
            }
            jac.push(row);
        }
        let neg_res: Vec<PowerSeries> = residual.iter().map(PowerSeries::neg).collect();
        let eps = solve_linear_series(&jac, &neg_res, target, field)?;
        // The correction must vanish on the already-certified prefix; a
        // nonzero entry there means the seed is inconsistent with the system.
        for e in &eps {
            if let OrdResult::Exact(k) = e.ord() {
                if k < m {
                    return Err(Error::InsufficientSeed(format!(
                        "seed inconsistent with the functional equation at z^{k}"
                    )));
                }
            }
        }
        for (fi, e) in f.iter_mut().zip(&eps) {
            fi.resize(target, Coeff::zero(field));
            for k in 0..target {
                fi[k] = fi[k].add(e.coeff(k));
            }
        }
        m = target;
    }
    Ok(f
        .into_iter()
        .map(|mut v| {
            v.truncate(prec);
            PowerSeries::new(field, v)
        })
        .collect())
}

/// Residuals A0(f~) f_i(p) - A_i(f~) of a claimed Mahler solution.
pub fn mahler_residuals(sys: &MahlerSystem, f: &[PowerSeries]) -> Result<Vec<OrdResult>> {
    let prec = f.iter().map(PowerSeries::prec).min().unwrap_or(0);
    let p = sys.p_series(prec)?;
    let point = f_tilde(f);
    let a0_eval = sys.a[0].evaluate(&point)?;
    let mut out = Vec::new();
    for i in 1..=sys.n {
        let ai_eval = sys.a[i].evaluate(&point)?;
        let fi_p = f[i - 1].compose(&p)?;
        let lhs = a0_eval.mul(&fi_p)?;
        out.push(lhs.sub(&ai_eval.truncate(lhs.prec()))?.ord());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Empirical lambda and correctness axioms
// ---------------------------------------------------------------------------

/// min over admissible samples of ord phi(Q)(f~) / ord Q(f~); samples with
/// non-Exact ord or ord < K_lambda are excluded by the precondition.
pub fn estimate_lambda(
    phi: &Transformation,
    f: &[PowerSeries],
    samples: &[BiPoly],
    _prec: usize,
) -> Result<BigRational> {
    let point = f_tilde(f);
    let mut best: Option<BigRational> = None;
    for q in samples {
        if q.is_zero() {
            continue;
        }
        let ord_q = match q.ord_at(&point)? {
            OrdResult::Exact(k) if k >= phi.k_lambda && k > 0 => k,
            _ => continue,
        };
        let phi_q = phi.apply(q)?;
        if phi_q.is_zero() {
            continue;
        }
        // Lower bound of the image order still certifies a ratio lower bound.
        let ord_phi = phi_q.ord_at(&point)?.lower_bound();
        let ratio = BigRational::new(BigInt::from(ord_phi), BigInt::from(ord_q));
        best = Some(match best {
            None => ratio,
            Some(b) if ratio < b => ratio,
            Some(b) => b,
        });
    }
    best.ok_or(Error::NoAdmissibleSamples)
}

/// Random polynomial in the bigraded ambient ring: up to `nterms` terms,
/// exponents < `max_exp` per variable, nonzero coefficients in [-9, 9].
pub fn random_bipoly<R: Rng>(
    rng: &mut R,
    n: usize,
    field: Field,
    max_exp: u32,
    nterms: usize,
) -> BiPoly {
    let nvars = n + 3;
    let mut p = MPoly::zero(nvars, field);
    for _ in 0..nterms {
        let mono: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-9..=9);
        }
        p.add_term(mono, &Coeff::from_integer(field, c));
    }
    BiPoly::from_mpoly(n, p)
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub kind: String,
    pub trials: usize,
    pub seed: u64,
    /// Human-readable descriptions of failing pairs (empty = all passed).
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify the correctness axioms on seeded random pairs: Leibniz
/// phi(xa) = x phi(a) + phi(x) a for the differential kind, homomorphism
/// phi(xa) = phi(x) phi(a) for the morphism kind.
pub fn check_correctness_axioms(
    phi: &Transformation,
    trials: usize,
    seed: u64,
) -> Result<AxiomReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = phi.n();
    let field = phi.field();
    let kind = match &phi.kind {
        PhiKind::DifferentialOperator(_) => "differential (Leibniz)",
        PhiKind::MorphismPullback(_) => "morphism (homomorphism)",
    };
    let mut failures = Vec::new();
    for _ in 0..trials {
        let x = random_bipoly(&mut rng, n, field, 2, 3);
        let a = random_bipoly(&mut rng, n, field, 2, 3);
        let lhs = phi.apply_raw(&x.mul(&a));
        let lhs = if phi.fault { lhs.add(&x.mul(&a)) } else { lhs };
        let phi_x = phi.apply_raw(&x);
        let phi_x = if phi.fault { phi_x.add(&x) } else { phi_x };
        let phi_a = phi.apply_raw(&a);
        let phi_a = if phi.fault { phi_a.add(&a) } else { phi_a };
        let rhs = match &phi.kind {
            PhiKind::DifferentialOperator(_) => x.mul(&phi_a).add(&phi_x.mul(&a)),
            PhiKind::MorphismPullback(_) => phi_x.mul(&phi_a),
        };
        if lhs != rhs {
            failures.push(format!("x = {x}; a = {a}"));
        }
    }
    Ok(AxiomReport {
        kind: kind.to_string(),
        trials,
        seed,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::bihomogenize;
    use crate::fixtures;
    use num::BigRational;
    use rand::SeedableRng;

    fn q() -> Field {
        Field::Q
    }

    #[test]
    fn solve_exp() {
        let sys = fixtures::exp_system();
        let f = solve_ode(&sys, 32).unwrap();
        assert_eq!(f[0], fixtures::exp_series(32));
    }

    #[test]
    fn solve_f_equals_z() {
        // A0 = 1, A1 = 1, f(0) = 0 -> f = z.
        let sys = DifferentialSystem::new(
            1,
            vec![
                AffinePoly::constant(1, Coeff::one(q())),
                AffinePoly::constant(1, Coeff::one(q())),
            ],
            vec![Coeff::zero(q())],
        )
        .unwrap();
        let f = solve_ode(&sys, 16).unwrap();
        assert_eq!(f[0], PowerSeries::z(q(), 16));
    }

    #[test]
    fn solve_singular_initial_point() {
        // A0 = X1, f(0) = 0.
        let sys = DifferentialSystem::new(
            1,
            vec![AffinePoly::x(1, q(), 1), AffinePoly::constant(1, Coeff::one(q()))],
            vec![Coeff::zero(q())],
        )
        .unwrap();
        assert!(matches!(solve_ode(&sys, 8), Err(Error::SingularInitialPoint)));
    }

    #[test]
    fn solve_char_p_obstruction() {
        // exp over F_5 hits 1/5 at index 5.
        let f5 = Field::fp(5).unwrap();
        let sys = DifferentialSystem::new(
            1,
            vec![
                AffinePoly::constant(1, Coeff::one(f5)),
                AffinePoly::x(1, f5, 1),
            ],
            vec![Coeff::one(f5)],
        )
        .unwrap();
        match solve_ode(&sys, 8) {
            Err(Error::CharacteristicObstruction(5)) => {}
            other => panic!("expected obstruction at 5, got {other:?}"),
        }
    }

    #[test]
    fn ramanujan_style_residuals() {
        let sys = fixtures::ramanujan_system();
        let f = solve_ode(&sys, 64).unwrap();
        for r in ode_residuals(&sys, &f).unwrap() {
            assert!(r.lower_bound() >= 63, "residual {r}");
        }
    }

    #[test]
    fn solve_fredholm() {
        let sys = fixtures::fredholm_system();
        let f = solve_mahler(&sys, &[vec![Coeff::zero(q())]], 128).unwrap();
        assert_eq!(f[0], fixtures::fredholm_series(128));
        for r in mahler_residuals(&sys, &f).unwrap() {
            assert!(r.lower_bound() >= 127, "residual {r}");
        }
    }

    #[test]
    fn solve_mahler_constant_fixed_point() {
        // f(z^2) = f(z), f(0) = c -> constant series.
        let n = 1;
        let x0p2 = BiPoly::x_prime(n, q(), 0).pow(2);
        let x1p2 = BiPoly::x_prime(n, q(), 1).pow(2);
        let sys = MahlerSystem::new(
            n,
            x0p2.clone(),
            x1p2,
            vec![BiPoly::x(n, q(), 0), BiPoly::x(n, q(), 1)],
        )
        .unwrap();
        let c = Coeff::from_integer(q(), 7);
        let f = solve_mahler(&sys, &[vec![c.clone()]], 32).unwrap();
        assert_eq!(f[0], PowerSeries::constant(c, 32));
    }

    #[test]
    fn solve_mahler_rejects_small_lambda() {
        // p = z (lambda = 1).
        let n = 1;
        let sys = MahlerSystem::new(
            n,
            BiPoly::x_prime(n, q(), 0),
            BiPoly::x_prime(n, q(), 1),
            vec![BiPoly::x(n, q(), 0), BiPoly::x(n, q(), 1)],
        )
        .unwrap();
        assert!(matches!(
            solve_mahler(&sys, &[vec![Coeff::zero(q())]], 8),
            Err(Error::LambdaTooSmall(1))
        ));
    }

    #[test]
    fn mahler_2x2_residuals() {
        let sys = fixtures::mahler2x2_system();
        let f = fixtures::solve_mahler2x2(256);
        for r in mahler_residuals(&sys, &f).unwrap() {
            assert!(r.lower_bound() >= 255, "residual {r}");
        }
    }

    #[test]
    fn apply_morphism_on_x0() {
        let phi = fixtures::fredholm_phi();
        let x0 = BiPoly::x(1, q(), 0);
        let img = phi.apply(&x0).unwrap();
        // T*(X0) = A0 = X0'X0.
        let expect = BiPoly::x_prime(1, q(), 0).mul(&BiPoly::x(1, q(), 0));
        assert_eq!(img, expect);
    }

    #[test]
    fn commutation_on_generator() {
        // D(h z) = h(D z) for the exp system.
        let phi = fixtures::exp_phi();
        let (s, t) = match &phi.kind {
            PhiKind::DifferentialOperator(sys) => sys.st(),
            _ => unreachable!(),
        };
        let p = AffinePoly::z_var(1, q());
        let hp = bihomogenize(&p);
        let lhs = phi.apply(&hp).unwrap();
        let dp = fixtures::apply_affine_d(&phi, &p);
        let rhs = crate::bipoly::bihomogenize_bounds(&dp, p.deg_z() + s, p.deg_x() + t);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutation_seeded() {
        // D(hP) = h_{(a+s, b+t)}(D(P)) for seeded random P, both sides
        // computed independently.
        let phi = fixtures::exp_phi();
        let (s, t) = match &phi.kind {
            PhiKind::DifferentialOperator(sys) => sys.st(),
            _ => unreachable!(),
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut p = AffinePoly::zero(1, q());
            for _ in 0..rng.gen_range(1..5) {
                let mono = vec![rng.gen_range(0..4u32), rng.gen_range(0..4u32)];
                p.poly
                    .add_term(mono, &Coeff::from_integer(q(), rng.gen_range(-9..=9)));
            }
            if p.is_zero() {
                continue;
            }
            let hp = bihomogenize(&p);
            let lhs = phi.apply(&hp).unwrap();
            let dp = fixtures::apply_affine_d(&phi, &p);
            let rhs = if dp.is_zero() {
                BiPoly::zero(1, q())
            } else {
                crate::bipoly::bihomogenize_bounds(&dp, p.deg_z() + s, p.deg_x() + t)
            };
            assert_eq!(lhs, rhs, "P = {p}");
        }
    }

    #[test]
    fn iterate_identity_and_composition() {
        let phi = fixtures::fredholm_phi();
        let x1 = BiPoly::x(1, q(), 1);
        assert_eq!(phi.iterate(&x1, 0).unwrap(), x1);
        let a = phi.iterate(&x1, 3).unwrap();
        let b = phi
            .iterate(&phi.iterate(&x1, 2).unwrap(), 1)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn iterate_fredholm_bidegree_bound() {
        // Q = X0, N = 2, (mu, nu0, nu1) = (1, 2, 1): bidegree <= (3, 1).
        let phi = fixtures::fredholm_phi();
        assert_eq!(phi.mu, BigRational::from_integer(1.into()));
        assert_eq!(phi.nu0, BigRational::from_integer(2.into()));
        assert_eq!(phi.nu1, BigRational::from_integer(1.into()));
        let q2 = phi.iterate(&BiPoly::x(1, q(), 0), 2).unwrap();
        let (a, b) = q2.bidegree();
        assert!(a <= 3 && b <= 1, "bidegree ({a},{b})");
    }

    #[test]
    fn estimate_lambda_fredholm() {
        let phi = fixtures::fredholm_phi();
        let f = vec![fixtures::fredholm_series(256)];
        // Samples with positive order at f~: multiples of h(X1 - z).
        let base = bihomogenize(&AffinePoly::x(1, q(), 1).sub(&AffinePoly::z_var(1, q())));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut samples = Vec::new();
        for _ in 0..50 {
            let m = random_bipoly(&mut rng, 1, q(), 1, 2);
            if !m.is_zero() {
                samples.push(base.mul(&m));
            }
        }
        let l = estimate_lambda(&phi, &f, &samples, 256).unwrap();
        assert!(l >= BigRational::from_integer(2.into()), "lambda-hat = {l}");
    }

    #[test]
    fn estimate_lambda_needs_admissible_samples() {
        let phi = fixtures::fredholm_phi();
        let f = vec![fixtures::fredholm_series(64)];
        // X0 has ord 0: excluded; no admissible samples left.
        let samples = vec![BiPoly::x(1, q(), 0)];
        assert!(matches!(
            estimate_lambda(&phi, &f, &samples, 64),
            Err(Error::NoAdmissibleSamples)
        ));
    }

    #[test]
    fn axioms_pass_and_fault_detected() {
        let d = fixtures::exp_phi();
        let r = check_correctness_axioms(&d, 100, 123).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);

        let t = fixtures::fredholm_phi();
        let r = check_correctness_axioms(&t, 100, 123).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);

        let corrupted = fixtures::fredholm_phi().with_fault();
        let r = check_correctness_axioms(&corrupted, 20, 123).unwrap();
        assert!(!r.passed());
        assert!(!r.failures.is_empty());
    }
}
