//! Generic sparse multivariate polynomials over an exact field, with the
//! fixed deterministic monomial orders used throughout the crate.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors (lexicographic
//! key order), which gives canonical storage and reproducible iteration;
//! order-dependent queries (leading terms, division) take the order as an
//! explicit argument.

use crate::exactnum::{Coeff, Field};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type Mono = Vec<u32>;

/// Monomial orders.
///
/// `Bigraded { xp }`: the first `xp` variables form the X'-block, the rest the
/// X-block; compare total X'-degree, then total X-degree, then grevlex within
/// the X'-block, then grevlex within the X-block. Block-degree priority makes
/// the order bidegree-compatible, which the delta-pair search relies on.
///
/// `ElimFirst { xp }`: variable 0 is an elimination variable dominating
/// everything; ties broken by `Bigraded { xp }` on the remaining variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoOrder {
    Bigraded { xp: usize },
    ElimFirst { xp: usize },
}

fn grevlex_block(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // Equal degree: a > b iff the last nonzero entry of a-b is negative.
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonoOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonoOrder::Bigraded { xp } => {
                let dpa: u64 = a[..xp].iter().map(|&e| e as u64).sum();
                let dpb: u64 = b[..xp].iter().map(|&e| e as u64).sum();
                let dxa: u64 = a[xp..].iter().map(|&e| e as u64).sum();
                let dxb: u64 = b[xp..].iter().map(|&e| e as u64).sum();
                dpa.cmp(&dpb)
                    .then(dxa.cmp(&dxb))
                    .then_with(|| grevlex_block(&a[..xp], &b[..xp]))
                    .then_with(|| grevlex_block(&a[xp..], &b[xp..]))
            }
            MonoOrder::ElimFirst { xp } => a[0]
                .cmp(&b[0])
                .then_with(|| MonoOrder::Bigraded { xp }.cmp(&a[1..], &b[1..])),
        }
    }
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_div(b: &[u32], a: &[u32]) -> Mono {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| (*x).max(*y)).collect()
}

pub fn mono_deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Sparse multivariate polynomial; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub field: Field,
    pub terms: BTreeMap<Mono, Coeff>,
}

impl MPoly {
    pub fn zero(nvars: usize, field: Field) -> MPoly {
        MPoly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coeff) -> MPoly {
        let field = c.field();
        let mut p = MPoly::zero(nvars, field);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, field: Field, i: usize) -> MPoly {
        let mut m = vec![0u32; nvars];
        m[i] = 1;
        let mut p = MPoly::zero(nvars, field);
        p.terms.insert(m, Coeff::one(field));
        p
    }

    pub fn monomial(nvars: usize, mono: Mono, c: Coeff) -> MPoly {
        let field = c.field();
        let mut p = MPoly::zero(nvars, field);
        if !c.is_zero() {
            debug_assert_eq!(mono.len(), nvars);
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Mono, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let s = existing.add(c);
                if s.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars, self.field);
        }
        MPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, mono: &[u32], c: &Coeff) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars, self.field);
        }
        MPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (mono_mul(m, mono), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m, m2), &c.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(self.nvars, Coeff::one(self.field));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under the given order.
    pub fn leading<'a>(&'a self, order: &MonoOrder) -> Option<(&'a Mono, &'a Coeff)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Degree in the given variable.
    pub fn deg_var(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Maximal total degree over a variable range.
    pub fn deg_range(&self, range: std::ops::Range<usize>) -> u32 {
        self.terms
            .keys()
            .map(|m| m[range.clone()].iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Substitute each variable by the given polynomial (in a possibly
    /// different ring with `out_nvars` variables).
    pub fn substitute(&self, images: &[MPoly], out_nvars: usize) -> MPoly {
        debug_assert_eq!(images.len(), self.nvars);
        let mut out = MPoly::zero(out_nvars, self.field);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(out_nvars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            let k = Coeff::from_integer(self.field, 1);
            let mut factor = Coeff::zero(self.field);
            // m[i] as a field element (may vanish in char p — correct: the
            // derivative term genuinely drops).
            for _ in 0..m[i] {
                factor = factor.add(&k);
            }
            out.add_term(m2, &c.mul(&factor));
        }
        out
    }

    /// Map coefficients into another field (Q -> F_p reduction); errors if a
    /// denominator vanishes mod p.
    pub fn map_to_field(&self, field: Field) -> crate::error::Result<MPoly> {
        let mut out = MPoly::zero(self.nvars, field);
        for (m, c) in &self.terms {
            let mapped = match c {
                Coeff::Rat(r) => Coeff::from_ratio(field, r.numer(), r.denom())?,
                Coeff::Mod { .. } => c.clone(),
            };
            out.add_term(m.clone(), &mapped);
        }
        Ok(out)
    }
}
