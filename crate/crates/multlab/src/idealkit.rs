//! Groebner-based ideal computations in the bigraded ring: membership, colon
//! and saturation via the elimination trick, rank (height) from the monomial
//! leading-term ideal, bigraded Hilbert counts, delta-pair search, vanishing
//! spaces of point-list cycles, phi-stability, and the e_phi / i0 indices.
//!
//! Localized ranks in e_phi / i0 are replaced by ranks of the generated ideal
//! (primary decomposition is out of scope); every report carries the
//! "generated-ideal proxy" label for this documented divergence.

use crate::bipoly::{BiPoly, BIGRADED_ORDER};
use crate::constants::{nu_constant, rho_sequence, Magnitude};
use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Field, OrdResult, PowerSeries};
use crate::linalg::{normalize_first_one, Eliminator};
use crate::mpoly::{mono_div, mono_divides, mono_lcm, mono_mul, MPoly, Mono, MonoOrder};
use crate::projgeo::{ProjPoint, ZeroCycle};
use crate::systems::Transformation;
use num::rational::BigRational;
use num::{BigInt, One, ToPrimitive};
use std::sync::OnceLock;

/// Default cap on elementary reduction steps for a single Groebner run.
pub const DEFAULT_REDUCTION_CAP: usize = 1_000_000;

pub const GENERATED_IDEAL_PROXY: &str =
    "generated-ideal proxy: localized ranks replaced by ranks of the generated ideal";

// ---------------------------------------------------------------------------
// Core Buchberger machinery (ring- and order-generic over MPoly)
// ---------------------------------------------------------------------------

fn leading<'a>(p: &'a MPoly, order: &MonoOrder) -> (&'a Mono, &'a Coeff) {
    p.leading(order).expect("nonzero polynomial")
}

/// Multivariate normal form; every single reduction step counts against `cap`.
fn normal_form(
    mut p: MPoly,
    basis: &[MPoly],
    order: &MonoOrder,
    steps: &mut usize,
    cap: usize,
) -> Result<MPoly> {
    let mut rem = MPoly::zero(p.nvars, p.field);
    while !p.is_zero() {
        let (lm, lc) = {
            let (m, c) = leading(&p, order);
            (m.clone(), c.clone())
        };
        let reducer = basis
            .iter()
            .find(|g| !g.is_zero() && mono_divides(leading(g, order).0, &lm));
        match reducer {
            Some(g) => {
                *steps += 1;
                if *steps > cap {
                    return Err(Error::ResourceCap(format!(
                        "exceeded {cap} reduction steps"
                    )));
                }
                let (gm, gc) = leading(g, order);
                let factor = lc.div(gc)?;
                p = p.sub(&g.mul_term(&mono_div(&lm, gm), &factor));
            }
            None => {
                p.terms.remove(&lm);
                rem.add_term(lm, &lc);
            }
        }
    }
    Ok(rem)
}

fn s_poly(f: &MPoly, g: &MPoly, order: &MonoOrder) -> MPoly {
    let (fm, fc) = leading(f, order);
    let (gm, gc) = leading(g, order);
    let lcm = mono_lcm(fm, gm);
    let a = f.mul_term(
        &mono_div(&lcm, fm),
        &fc.inv().expect("nonzero leading coefficient"),
    );
    let b = g.mul_term(
        &mono_div(&lcm, gm),
        &gc.inv().expect("nonzero leading coefficient"),
    );
    a.sub(&b)
}

/// Reduced Groebner basis: Buchberger with the coprimality and chain criteria
/// and degree-of-lcm ("sugar-style") selection; fully deterministic.
pub fn buchberger(
    gens: &[MPoly],
    order: &MonoOrder,
    steps: &mut usize,
    cap: usize,
) -> Result<Vec<MPoly>> {
    let mut basis: Vec<MPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.clone());
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let nvars = basis[0].nvars;
    let field = basis[0].field;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while !pairs.is_empty() {
        // Deterministic selection: smallest (total degree of lcm, lcm under
        // the order, i, j).
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(i1, j1)), (_, &(i2, j2))| {
                let l1 = mono_lcm(leading(&basis[i1], order).0, leading(&basis[j1], order).0);
                let l2 = mono_lcm(leading(&basis[i2], order).0, leading(&basis[j2], order).0);
                let d1: u64 = l1.iter().map(|&e| e as u64).sum();
                let d2: u64 = l2.iter().map(|&e| e as u64).sum();
                d1.cmp(&d2)
                    .then_with(|| order.cmp(&l1, &l2))
                    .then((i1, j1).cmp(&(i2, j2)))
            })
            .map(|(idx, _)| idx)
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        done.insert((i, j));
        let (mi, _) = leading(&basis[i], order);
        let (mj, _) = leading(&basis[j], order);
        let lcm = mono_lcm(mi, mj);
        // Coprimality criterion.
        if lcm == mono_mul(mi, mj) {
            continue;
        }
        // Chain criterion.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && mono_divides(leading(&basis[k], order).0, &lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = normal_form(s, &basis, order, steps, cap)?;
        if !r.is_zero() {
            let new_idx = basis.len();
            basis.push(r);
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
    }
    // Minimalize: drop elements whose leading monomial is divisible by
    // another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && keep[i]
                && mono_divides(leading(&basis[j], order).0, leading(&basis[i], order).0)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // Tail-reduce each element against the others and normalize the leading
    // coefficient to 1.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = normal_form(minimal[i].clone(), &others, order, steps, cap)?;
        if r.is_zero() {
            continue;
        }
        let lc = leading(&r, order).1.clone();
        r = r.scale(&lc.inv()?);
        reduced.push(r);
    }
    let _ = (nvars, field);
    // Sort ascending by leading monomial for a canonical presentation.
    reduced.sort_by(|a, b| order.cmp(leading(a, order).0, leading(b, order).0));
    Ok(reduced)
}

/// Independent straightforward division oracle (used by tests and the audit
/// cross-checks): repeatedly cancels the first divisible term scanning the
/// basis in the given order; returns the remainder.
pub fn naive_division_remainder(p: &MPoly, basis: &[MPoly], order: &MonoOrder) -> MPoly {
    let mut p = p.clone();
    'outer: loop {
        for (m, c) in p.terms.clone() {
            for g in basis {
                if g.is_zero() {
                    continue;
                }
                let (gm, gc) = leading(g, order);
                if mono_divides(gm, &m) {
                    let factor = c.div(gc).expect("nonzero leading coefficient");
                    p = p.sub(&g.mul_term(&mono_div(&m, gm), &factor));
                    continue 'outer;
                }
            }
        }
        return p;
    }
}

fn prepend_var(p: &MPoly) -> MPoly {
    let mut out = MPoly::zero(p.nvars + 1, p.field);
    for (m, c) in &p.terms {
        let mut m2 = Vec::with_capacity(m.len() + 1);
        m2.push(0);
        m2.extend_from_slice(m);
        out.add_term(m2, c);
    }
    out
}

fn strip_var(p: &MPoly) -> MPoly {
    let mut out = MPoly::zero(p.nvars - 1, p.field);
    for (m, c) in &p.terms {
        debug_assert_eq!(m[0], 0);
        out.add_term(m[1..].to_vec(), c);
    }
    out
}

/// Exact division p / h (p must be a multiple of h).
fn exact_divide(p: &MPoly, h: &MPoly, order: &MonoOrder) -> MPoly {
    let mut p = p.clone();
    let mut q = MPoly::zero(p.nvars, p.field);
    let (hm, hc) = (
        leading(h, order).0.clone(),
        leading(h, order).1.clone(),
    );
    while !p.is_zero() {
        let (lm, lc) = {
            let (m, c) = leading(&p, order);
            (m.clone(), c.clone())
        };
        debug_assert!(mono_divides(&hm, &lm), "not an exact multiple");
        let factor = lc.div(&hc).expect("nonzero leading coefficient");
        let mono = mono_div(&lm, &hm);
        q.add_term(mono.clone(), &factor);
        p = p.sub(&h.mul_term(&mono, &factor));
    }
    q
}

// ---------------------------------------------------------------------------
// IdealHandle
// ---------------------------------------------------------------------------

/// Immutable handle on an ideal of the bigraded ring, with a lazily computed
/// cached reduced Groebner basis.
#[derive(Debug)]
pub struct IdealHandle {
    pub n: usize,
    field: Field,
    pub generators: Vec<BiPoly>,
    cap: usize,
    gb: OnceLock<std::result::Result<Vec<BiPoly>, String>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        IdealHandle {
            n: self.n,
            field: self.field,
            generators: self.generators.clone(),
            cap: self.cap,
            gb: self.gb.clone(),
        }
    }
}

impl IdealHandle {
    pub fn new(n: usize, field: Field, generators: Vec<BiPoly>) -> IdealHandle {
        IdealHandle {
            n,
            field,
            generators,
            cap: DEFAULT_REDUCTION_CAP,
            gb: OnceLock::new(),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> IdealHandle {
        self.cap = cap;
        self.gb = OnceLock::new();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn nvars(&self) -> usize {
        self.n + 3
    }

    pub fn is_bigraded(&self) -> bool {
        self.generators.iter().all(BiPoly::is_bihomogeneous)
    }

    /// The cached reduced Groebner basis under the fixed bigraded order.
    pub fn groebner(&self) -> Result<&[BiPoly]> {
        let res = self.gb.get_or_init(|| {
            let gens: Vec<MPoly> = self.generators.iter().map(|g| g.poly.clone()).collect();
            let mut steps = 0usize;
            buchberger(&gens, &BIGRADED_ORDER, &mut steps, self.cap)
                .map(|basis| {
                    basis
                        .into_iter()
                        .map(|p| BiPoly::from_mpoly(self.n, p))
                        .collect()
                })
                .map_err(|e| e.to_string())
        });
        match res {
            Ok(b) => Ok(b),
            Err(msg) => Err(Error::ResourceCap(msg.clone())),
        }
    }

    pub fn is_zero_ideal(&self) -> Result<bool> {
        Ok(self.groebner()?.is_empty())
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        let gb = self.groebner()?;
        Ok(gb.len() == 1 && gb[0].bidegree() == (0, 0) && !gb[0].is_zero())
    }

    /// Membership: normal form of P modulo the reduced basis is zero.
    pub fn member(&self, p: &BiPoly) -> Result<bool> {
        let gb = self.groebner()?;
        let basis: Vec<MPoly> = gb.iter().map(|g| g.poly.clone()).collect();
        let mut steps = 0usize;
        let r = normal_form(p.poly.clone(), &basis, &BIGRADED_ORDER, &mut steps, self.cap)?;
        Ok(r.is_zero())
    }

    /// Ideal intersection via the elimination trick:
    /// I cap J = elim_t(t I + (1 - t) J).
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle> {
        let order = MonoOrder::ElimFirst { xp: 2 };
        let field = self.field;
        let t = MPoly::var(self.nvars() + 1, field, 0);
        let one = MPoly::constant(self.nvars() + 1, Coeff::one(field));
        let one_minus_t = one.sub(&t);
        let mut gens: Vec<MPoly> = Vec::new();
        for g in &self.generators {
            gens.push(t.mul(&prepend_var(&g.poly)));
        }
        for h in &other.generators {
            gens.push(one_minus_t.mul(&prepend_var(&h.poly)));
        }
        let mut steps = 0usize;
        let gb = buchberger(&gens, &order, &mut steps, self.cap)?;
        let kept: Vec<BiPoly> = gb
            .iter()
            .filter(|p| p.terms.keys().all(|m| m[0] == 0))
            .map(|p| BiPoly::from_mpoly(self.n, strip_var(p)))
            .collect();
        Ok(IdealHandle::new(self.n, field, kept).with_cap(self.cap))
    }

    /// Colon by a single polynomial: I : (h) = (I cap (h)) / h.
    fn colon_single(&self, h: &BiPoly) -> Result<IdealHandle> {
        if h.is_zero() {
            // I : (0) is the whole ring.
            return Ok(IdealHandle::new(
                self.n,
                self.field,
                vec![BiPoly::constant(self.n, Coeff::one(self.field))],
            )
            .with_cap(self.cap));
        }
        let principal =
            IdealHandle::new(self.n, self.field, vec![h.clone()]).with_cap(self.cap);
        let inter = self.intersect(&principal)?;
        let quots: Vec<BiPoly> = inter
            .generators
            .iter()
            .map(|g| BiPoly::from_mpoly(self.n, exact_divide(&g.poly, &h.poly, &BIGRADED_ORDER)))
            .collect();
        Ok(IdealHandle::new(self.n, self.field, quots).with_cap(self.cap))
    }

    /// Colon ideal I : J = intersection over generators h of J of I : (h).
    pub fn colon(&self, j: &IdealHandle) -> Result<IdealHandle> {
        let hs: Vec<&BiPoly> = j.generators.iter().filter(|h| !h.is_zero()).collect();
        if hs.is_empty() {
            return self.colon_single(&BiPoly::zero(self.n, self.field));
        }
        let mut acc = self.colon_single(hs[0])?;
        for h in &hs[1..] {
            acc = acc.intersect(&self.colon_single(h)?)?;
        }
        Ok(acc)
    }

    /// Saturation I : P^infinity, by iterating the colon to stabilization.
    pub fn saturate(&self, p: &BiPoly) -> Result<IdealHandle> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon_single(p)?;
            if equal_ideals(&cur, &next)? {
                return Ok(next);
            }
            cur = next;
        }
    }

    /// Rank (height): number of variables minus the Krull dimension of the
    /// quotient, computed combinatorially from the leading-term ideal as the
    /// complement of the largest independent variable subset.
    pub fn rank(&self) -> Result<usize> {
        if self.is_unit_ideal()? {
            return Err(Error::UnitIdeal);
        }
        let gb = self.groebner()?;
        let nvars = self.nvars();
        let leads: Vec<Mono> = gb
            .iter()
            .map(|g| leading(&g.poly, &BIGRADED_ORDER).0.clone())
            .collect();
        let mut best_dim = 0usize;
        for mask in 0u32..(1u32 << nvars) {
            let size = mask.count_ones() as usize;
            if size <= best_dim {
                continue;
            }
            // S independent iff no leading monomial is supported inside S.
            let independent = leads.iter().all(|m| {
                m.iter()
                    .enumerate()
                    .any(|(v, &e)| e > 0 && mask & (1 << v) == 0)
            });
            if independent {
                best_dim = size;
            }
        }
        Ok(nvars - best_dim)
    }

    /// Count of monomials of bidegree exactly (a, b) outside the leading-term
    /// ideal.
    pub fn hilbert_bigraded(&self, a: usize, b: usize) -> Result<usize> {
        if !self.is_bigraded() {
            return Err(Error::NotBiHomogeneous("ideal generators".into()));
        }
        let gb = self.groebner()?;
        let leads: Vec<Mono> = gb
            .iter()
            .map(|g| leading(&g.poly, &BIGRADED_ORDER).0.clone())
            .collect();
        let mut count = 0usize;
        for mono in bidegree_monomials(self.n, a, b) {
            if !leads.iter().any(|l| mono_divides(l, &mono)) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// phi-stability: phi(g) in I for every reduced-basis element g; on
    /// failure returns the violating element.
    pub fn phi_stable(&self, phi: &Transformation) -> Result<(bool, Option<BiPoly>)> {
        let gb: Vec<BiPoly> = self.groebner()?.to_vec();
        for g in &gb {
            let img = phi.apply(g)?;
            if !img.is_zero() && !self.member(&img)? {
                return Ok((false, Some(g.clone())));
            }
        }
        Ok((true, None))
    }

    /// min over basis elements of the certified vanishing order at the point:
    /// an upper bound for ord of the ideal.
    pub fn ord_upper_bound(&self, point: &[PowerSeries]) -> Result<OrdResult> {
        let gb = self.groebner()?;
        if gb.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let ords: Vec<OrdResult> = gb
            .iter()
            .map(|g| g.ord_at(point))
            .collect::<Result<_>>()?;
        Ok(crate::projgeo::ord_min(&ords))
    }

    /// The weighted-minimal bidegree of a nonzero bi-homogeneous member, with
    /// witness. `degrees` supplies the multiprojective degree data
    /// (deg_(0), deg_(1)) of the ideal; for principal ideals it defaults to
    /// the generator's bidegree.
    pub fn delta_pair(
        &self,
        mu: &BigRational,
        nu0: &BigRational,
        nu1: &BigRational,
        degrees: Option<(usize, usize)>,
    ) -> Result<DeltaPair> {
        if !self.is_bigraded() {
            return Err(Error::NotBiHomogeneous("ideal generators".into()));
        }
        if self.is_zero_ideal()? {
            return Err(Error::ZeroIdeal);
        }
        let (d0, d1) = match degrees {
            Some(d) => d,
            None => {
                let nonzero: Vec<&BiPoly> =
                    self.generators.iter().filter(|g| !g.is_zero()).collect();
                if nonzero.len() == 1 {
                    nonzero[0].bidegree()
                } else {
                    return Err(Error::Config(
                        "delta_pair needs the ideal degree data (deg0, deg1) for non-principal ideals"
                            .into(),
                    ));
                }
            }
        };
        // Any nonzero bi-homogeneous member has bidegree dominating some
        // reduced-basis element's bidegree, and the objective is monotone in
        // both coordinates, so the minimum is attained at a basis element.
        let rat = |v: usize| BigRational::from_integer(BigInt::from(v));
        let gb = self.groebner()?;
        let mut best: Option<(BigRational, usize, BiPoly)> = None;
        for g in gb {
            let (a, b) = g.bidegree();
            let w = mu.clone() * rat(d0) * rat(b)
                + nu0.clone() * rat(d1) * rat(a)
                + nu1.clone() * rat(d1) * rat(b);
            let better = match &best {
                None => true,
                Some((bw, ba, _)) => w < *bw || (w == *bw && a < *ba),
            };
            if better {
                best = Some((w, a, g.clone()));
            }
        }
        let (_, _, witness) = best.unwrap();
        let (delta0, delta1) = witness.bidegree();
        Ok(DeltaPair {
            delta0,
            delta1,
            witness,
        })
    }
}

fn equal_ideals(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    let ga = a.groebner()?;
    let gb = b.groebner()?;
    Ok(ga == gb)
}

/// All monomials of the bigraded ring with bidegree exactly (a, b), in
/// deterministic order.
pub fn bidegree_monomials(n: usize, a: usize, b: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut xparts = Vec::new();
    compositions(b as u32, n + 1, &mut Vec::new(), &mut xparts);
    for j in 0..=a as u32 {
        for xs in &xparts {
            let mut m = Vec::with_capacity(n + 3);
            m.push(a as u32 - j);
            m.push(j);
            m.extend_from_slice(xs);
            out.push(m);
        }
    }
    out
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        let mut v = prefix.clone();
        v.push(total);
        out.push(v);
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

#[derive(Debug, Clone)]
pub struct DeltaPair {
    pub delta0: usize,
    pub delta1: usize,
    pub witness: BiPoly,
}

// ---------------------------------------------------------------------------
// Vanishing spaces and stability indices
// ---------------------------------------------------------------------------

/// Kernel basis of the evaluation map on the direct sum of the exact-bidegree
/// pieces (a', b') <= (a, b): all bi-homogeneous forms of bidegree within the
/// box vanishing (to the available precision) at every point of the cycle.
pub fn vanishing_space(
    z: &ZeroCycle,
    n: usize,
    field: Field,
    a: usize,
    b: usize,
) -> Result<Vec<BiPoly>> {
    if z.points.is_empty() {
        return Err(Error::EmptyCycle);
    }
    let mut basis = Vec::new();
    for ap in 0..=a {
        for bp in 0..=b {
            basis.extend(vanishing_piece(z, n, field, ap, bp)?);
        }
    }
    Ok(basis)
}

fn point_coords(pt: &ProjPoint, n: usize, field: Field) -> Result<Vec<PowerSeries>> {
    match pt {
        ProjPoint::BiProjective(xp, x) => {
            if xp.len() != 2 || x.len() != n + 1 {
                return Err(Error::ArityMismatch {
                    expected: n + 3,
                    got: xp.len() + x.len(),
                });
            }
            let mut v = xp.clone();
            v.extend(x.iter().cloned());
            Ok(v)
        }
        ProjPoint::Projective(x) => {
            if x.len() != n + 1 {
                return Err(Error::ArityMismatch {
                    expected: n + 1,
                    got: x.len(),
                });
            }
            let prec = x.iter().map(PowerSeries::prec).min().unwrap_or(0);
            let mut v = vec![
                PowerSeries::constant(Coeff::one(field), prec),
                PowerSeries::z(field, prec),
            ];
            v.extend(x.iter().cloned());
            Ok(v)
        }
    }
}

fn vanishing_piece(
    z: &ZeroCycle,
    n: usize,
    field: Field,
    a: usize,
    b: usize,
) -> Result<Vec<BiPoly>> {
    let monos = bidegree_monomials(n, a, b);
    let ncols = monos.len();
    let mut elim = Eliminator::new(ncols, field);
    for (pt, _) in &z.points {
        let coords = point_coords(pt, n, field)?;
        let prec = coords.iter().map(PowerSeries::prec).min().unwrap_or(0);
        if prec <= ncols {
            return Err(Error::InsufficientPrecision(format!(
                "certifying vanishing of a {ncols}-dimensional piece needs prec > {ncols}, have {prec}"
            )));
        }
        // Evaluate each monomial at the point.
        let evals: Vec<PowerSeries> = monos
            .iter()
            .map(|m| {
                let p = BiPoly::from_mpoly(
                    n,
                    MPoly::monomial(n + 3, m.clone(), Coeff::one(field)),
                );
                p.evaluate(&coords)
            })
            .collect::<Result<_>>()?;
        for k in 0..prec {
            let row: Vec<Coeff> = evals.iter().map(|s| s.coeff(k).clone()).collect();
            elim.feed(row);
        }
    }
    let mut out = Vec::new();
    for mut v in elim.kernel_basis() {
        normalize_first_one(&mut v);
        let mut p = MPoly::zero(n + 3, field);
        for (m, c) in monos.iter().zip(&v) {
            p.add_term(m.clone(), c);
        }
        out.push(BiPoly::from_mpoly(n, p));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EPhi {
    Exact(usize),
    ExceedsCap(usize),
}

#[derive(Debug, Clone)]
pub struct StabilityIndices {
    pub e: Option<EPhi>,
    pub i0: Option<usize>,
    pub rho: Vec<Magnitude>,
    pub nu: Option<BigRational>,
    /// Documented divergence label.
    pub note: &'static str,
}

/// Largest e <= cap such that the rank of the ideal generated by
/// V + phi(V) + ... + phi^e(V) equals the rank of (V) (generated-ideal proxy).
pub fn e_phi(v: &[BiPoly], phi: &Transformation, cap: usize) -> Result<StabilityIndices> {
    let n = phi.n();
    let field = phi.field();
    let base = IdealHandle::new(n, field, v.to_vec());
    let r0 = base.rank()?;
    let mut gens = v.to_vec();
    let mut layer = v.to_vec();
    for e in 1..=cap {
        layer = layer
            .iter()
            .map(|g| phi.apply(g))
            .collect::<Result<Vec<_>>>()?;
        gens.extend(layer.iter().cloned());
        let r = IdealHandle::new(n, field, gens.clone()).rank()?;
        if r > r0 {
            return Ok(StabilityIndices {
                e: Some(EPhi::Exact(e - 1)),
                i0: None,
                rho: Vec::new(),
                nu: None,
                note: GENERATED_IDEAL_PROXY,
            });
        }
    }
    Ok(StabilityIndices {
        e: Some(EPhi::ExceedsCap(cap)),
        i0: None,
        rho: Vec::new(),
        nu: None,
        note: GENERATED_IDEAL_PROXY,
    })
}

/// Parameters for the i0 computation.
pub struct I0Params {
    pub n: usize,
    pub field: Field,
    pub mu: BigRational,
    pub nu0: BigRational,
    pub nu1: BigRational,
    pub delta0: usize,
    pub delta1: usize,
}

fn floor_to_usize(r: &BigRational) -> Option<usize> {
    r.floor().to_integer().to_usize()
}

/// Largest i in [1, n+1] with rank(ideal generated by the vanishing space at
/// level i) >= i for all levels up to i (generated-ideal proxy). The level-i
/// box is (rho_i (delta0 + nu1 delta1 / max(mu, nu0)), rho_i delta1), floored.
pub fn i0_index(z: &ZeroCycle, params: &I0Params) -> Result<StabilityIndices> {
    let n = params.n;
    let nu = nu_constant(n, &params.nu0, &params.nu1);
    let rho = rho_sequence(n, &params.mu, &params.nu0, &nu, n + 1);
    let rat = |v: usize| BigRational::from_integer(BigInt::from(v));
    let weight = rat(params.delta0)
        + params.nu1.clone() * rat(params.delta1)
            / params.mu.clone().max(params.nu0.clone()).max(BigRational::one());
    let mut i0 = 0usize;
    for i in 1..=(n + 1) {
        let rho_i = rho[i].exact().ok_or_else(|| {
            Error::ResourceCap(format!("rho_{i} too large for an explicit vanishing-space box"))
        })?;
        let a = floor_to_usize(&(rho_i * weight.clone()))
            .ok_or_else(|| Error::ResourceCap("box bound overflow".into()))?;
        let b = floor_to_usize(&(rho_i * rat(params.delta1)))
            .ok_or_else(|| Error::ResourceCap("box bound overflow".into()))?;
        if a > 12 || b > 12 {
            return Err(Error::ResourceCap(format!(
                "vanishing-space box ({a}, {b}) at level {i} exceeds the desk-scale cap"
            )));
        }
        let v = vanishing_space(z, n, params.field, a, b)?;
        if v.is_empty() {
            break;
        }
        let handle = IdealHandle::new(n, params.field, v);
        if handle.is_unit_ideal()? {
            break;
        }
        if handle.rank()? >= i {
            i0 = i;
        } else {
            break;
        }
    }
    // The index is always at least 1 for well-formed data.
    Ok(StabilityIndices {
        e: None,
        i0: Some(i0.max(1)),
        rho,
        nu: Some(nu),
        note: GENERATED_IDEAL_PROXY,
    })
}
