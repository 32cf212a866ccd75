//! Bigraded multivariate polynomials in k[X0',X1'][X0,...,Xn], affine
//! polynomials in k[z][X1,...,Xn], bi-homogenization, evaluation at series
//! points, and vanishing order at the distinguished point
//! f~ = (1, z, 1, f1, ..., fn).
//!
//! Variable layout for `BiPoly`: [X0', X1', X0, X1, ..., Xn] (n+3 variables).
//! Variable layout for `AffinePoly`: [z, X1, ..., Xn] (n+1 variables).
//! Dehomogenization convention: (X0', X0) = (1, 1), X1' = z.

use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Field, OrdResult, PowerSeries};
use crate::mpoly::{MPoly, Mono, MonoOrder};
use std::fmt;

/// The fixed monomial order for the bigraded ring (X'-block of width 2).
pub const BIGRADED_ORDER: MonoOrder = MonoOrder::Bigraded { xp: 2 };

/// Bi-homogeneous (or merely bigraded-ambient) polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    pub n: usize,
    pub poly: MPoly,
}

impl BiPoly {
    pub fn nvars(n: usize) -> usize {
        n + 3
    }

    pub fn zero(n: usize, field: Field) -> BiPoly {
        BiPoly {
            n,
            poly: MPoly::zero(Self::nvars(n), field),
        }
    }

    pub fn from_mpoly(n: usize, poly: MPoly) -> BiPoly {
        debug_assert_eq!(poly.nvars, Self::nvars(n));
        BiPoly { n, poly }
    }

    pub fn constant(n: usize, c: Coeff) -> BiPoly {
        BiPoly {
            n,
            poly: MPoly::constant(Self::nvars(n), c),
        }
    }

    /// Variable by ring index: 0 = X0', 1 = X1', 2+i = Xi.
    pub fn var(n: usize, field: Field, idx: usize) -> BiPoly {
        BiPoly {
            n,
            poly: MPoly::var(Self::nvars(n), field, idx),
        }
    }

    pub fn x_prime(n: usize, field: Field, i: usize) -> BiPoly {
        debug_assert!(i < 2);
        Self::var(n, field, i)
    }

    pub fn x(n: usize, field: Field, i: usize) -> BiPoly {
        debug_assert!(i <= n);
        Self::var(n, field, 2 + i)
    }

    pub fn field(&self) -> Field {
        self.poly.field
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        BiPoly {
            n: self.n,
            poly: self.poly.add(&o.poly),
        }
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        BiPoly {
            n: self.n,
            poly: self.poly.sub(&o.poly),
        }
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            n: self.n,
            poly: self.poly.neg(),
        }
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        BiPoly {
            n: self.n,
            poly: self.poly.mul(&o.poly),
        }
    }

    pub fn scale(&self, c: &Coeff) -> BiPoly {
        BiPoly {
            n: self.n,
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        BiPoly {
            n: self.n,
            poly: self.poly.pow(e),
        }
    }

    pub fn derivative(&self, idx: usize) -> BiPoly {
        BiPoly {
            n: self.n,
            poly: self.poly.derivative(idx),
        }
    }

    /// (deg_{X'}, deg_X) as maxima over monomials.
    pub fn bidegree(&self) -> (usize, usize) {
        (
            self.poly.deg_range(0..2) as usize,
            self.poly.deg_range(2..self.poly.nvars) as usize,
        )
    }

    /// Bidegree of a single monomial.
    fn mono_bidegree(m: &Mono) -> (u32, u32) {
        (m[0] + m[1], m[2..].iter().sum())
    }

    pub fn is_bihomogeneous(&self) -> bool {
        let mut it = self.poly.terms.keys();
        match it.next() {
            None => true,
            Some(first) => {
                let bd = Self::mono_bidegree(first);
                it.all(|m| Self::mono_bidegree(m) == bd)
            }
        }
    }

    /// Evaluate at a point given by n+3 series (X0', X1', X0, ..., Xn).
    pub fn evaluate(&self, point: &[PowerSeries]) -> Result<PowerSeries> {
        if point.len() != Self::nvars(self.n) {
            return Err(Error::ArityMismatch {
                expected: Self::nvars(self.n),
                got: point.len(),
            });
        }
        let field = self.field();
        for p in point {
            if p.field() != field {
                return Err(Error::FieldMismatch(
                    field.to_string(),
                    p.field().to_string(),
                ));
            }
        }
        let prec = point.iter().map(PowerSeries::prec).min().unwrap_or(0);
        // Cache powers of each coordinate up to the max exponent used.
        let mut max_exp = vec![0u32; point.len()];
        for m in self.poly.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let mut powers: Vec<Vec<PowerSeries>> = Vec::with_capacity(point.len());
        for (i, coord) in point.iter().enumerate() {
            let mut ps = vec![PowerSeries::constant(Coeff::one(field), prec)];
            let base = coord.truncate(prec);
            for e in 1..=max_exp[i] {
                let next = ps[(e - 1) as usize].mul(&base)?;
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut acc = PowerSeries::zero(field, prec);
        for (m, c) in &self.poly.terms {
            let mut t = PowerSeries::constant(c.clone(), prec);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Certified vanishing order of the evaluation at the point.
    pub fn ord_at(&self, point: &[PowerSeries]) -> Result<OrdResult> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomialOrd);
        }
        Ok(self.evaluate(point)?.ord())
    }

    /// Dehomogenize: (X0', X0) = (1, 1), X1' = z.
    pub fn dehomogenize(&self) -> AffinePoly {
        let n = self.n;
        let mut out = MPoly::zero(n + 1, self.field());
        for (m, c) in &self.poly.terms {
            let mut mono = vec![0u32; n + 1];
            mono[0] = m[1]; // X1' -> z
            mono[1..(n + 1)].copy_from_slice(&m[3..(n + 3)]); // Xi -> Xi, i >= 1
            out.add_term(mono, c);
        }
        AffinePoly { n, poly: out }
    }

    /// True when `other` equals a nonzero scalar multiple of `self`.
    pub fn is_proportional_to(&self, other: &BiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.poly.terms.len() != other.poly.terms.len() {
            return false;
        }
        let (m0, c0) = self.poly.terms.iter().next().unwrap();
        let Some(d0) = other.poly.terms.get(m0) else {
            return false;
        };
        let Ok(ratio) = d0.div(c0) else { return false };
        for (m, c) in &self.poly.terms {
            match other.poly.terms.get(m) {
                Some(d) if *d == c.mul(&ratio) => {}
                _ => return false,
            }
        }
        true
    }
}

/// Polynomial in k[z][X1, ..., Xn] (the dehomogenized ambient ring).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePoly {
    pub n: usize,
    pub poly: MPoly,
}

impl AffinePoly {
    pub fn zero(n: usize, field: Field) -> AffinePoly {
        AffinePoly {
            n,
            poly: MPoly::zero(n + 1, field),
        }
    }

    pub fn from_mpoly(n: usize, poly: MPoly) -> AffinePoly {
        debug_assert_eq!(poly.nvars, n + 1);
        AffinePoly { n, poly }
    }

    pub fn constant(n: usize, c: Coeff) -> AffinePoly {
        AffinePoly {
            n,
            poly: MPoly::constant(n + 1, c),
        }
    }

    pub fn z_var(n: usize, field: Field) -> AffinePoly {
        AffinePoly {
            n,
            poly: MPoly::var(n + 1, field, 0),
        }
    }

    /// X_i for 1 <= i <= n.
    pub fn x(n: usize, field: Field, i: usize) -> AffinePoly {
        debug_assert!((1..=n).contains(&i));
        AffinePoly {
            n,
            poly: MPoly::var(n + 1, field, i),
        }
    }

    pub fn field(&self) -> Field {
        self.poly.field
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn deg_z(&self) -> usize {
        self.poly.deg_var(0) as usize
    }

    pub fn deg_x(&self) -> usize {
        self.poly.deg_range(1..self.poly.nvars) as usize
    }

    pub fn add(&self, o: &AffinePoly) -> AffinePoly {
        AffinePoly {
            n: self.n,
            poly: self.poly.add(&o.poly),
        }
    }

    pub fn sub(&self, o: &AffinePoly) -> AffinePoly {
        AffinePoly {
            n: self.n,
            poly: self.poly.sub(&o.poly),
        }
    }

    pub fn mul(&self, o: &AffinePoly) -> AffinePoly {
        AffinePoly {
            n: self.n,
            poly: self.poly.mul(&o.poly),
        }
    }

    pub fn scale(&self, c: &Coeff) -> AffinePoly {
        AffinePoly {
            n: self.n,
            poly: self.poly.scale(c),
        }
    }

    /// d/dz.
    pub fn derivative_z(&self) -> AffinePoly {
        AffinePoly {
            n: self.n,
            poly: self.poly.derivative(0),
        }
    }

    /// d/dX_i for 1 <= i <= n.
    pub fn derivative_x(&self, i: usize) -> AffinePoly {
        debug_assert!((1..=self.n).contains(&i));
        AffinePoly {
            n: self.n,
            poly: self.poly.derivative(i),
        }
    }

    /// Evaluate at (z-series, f1, ..., fn).
    pub fn evaluate(&self, z: &PowerSeries, f: &[PowerSeries]) -> Result<PowerSeries> {
        if f.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: f.len(),
            });
        }
        let field = self.field();
        let prec = f
            .iter()
            .map(PowerSeries::prec)
            .chain(std::iter::once(z.prec()))
            .min()
            .unwrap_or(0);
        let mut coords = Vec::with_capacity(self.n + 1);
        coords.push(z.truncate(prec));
        for s in f {
            coords.push(s.truncate(prec));
        }
        let mut acc = PowerSeries::zero(field, prec);
        for (m, c) in &self.poly.terms {
            let mut t = PowerSeries::constant(c.clone(), prec);
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&coords[i])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

/// Bi-homogenization with respect to the actual degrees:
/// hP = X0'^{deg_z} X0^{deg_X} P(X1'/X0', Xi/X0).
pub fn bihomogenize(p: &AffinePoly) -> BiPoly {
    bihomogenize_bounds(p, p.deg_z(), p.deg_x())
}

/// Bound-parameterized bi-homogenization: homogenize as if the degrees were
/// (a, b); requires a >= deg_z p and b >= deg_X p. The result is
/// bi-homogeneous of bidegree exactly (a, b) (for nonzero p).
pub fn bihomogenize_bounds(p: &AffinePoly, a: usize, b: usize) -> BiPoly {
    debug_assert!(a >= p.deg_z() && b >= p.deg_x());
    let n = p.n;
    let mut out = MPoly::zero(BiPoly::nvars(n), p.field());
    for (m, c) in &p.poly.terms {
        let j = m[0]; // z-exponent
        let d: u32 = m[1..].iter().sum(); // X-degree of the term
        let mut mono = vec![0u32; n + 3];
        mono[0] = a as u32 - j; // X0'
        mono[1] = j; // X1'
        mono[2] = b as u32 - d; // X0
        mono[3..(n + 3)].copy_from_slice(&m[1..(n + 1)]);
        out.add_term(mono, c);
    }
    BiPoly::from_mpoly(n, out)
}

fn fmt_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &std::collections::BTreeMap<Mono, Coeff>,
    var_name: &dyn Fn(usize) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (m, c) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        let mut parts: Vec<String> = Vec::new();
        let trivial_mono = m.iter().all(|&e| e == 0);
        if !c.is_one() || trivial_mono {
            parts.push(format!("({c})"));
        }
        for (i, &e) in m.iter().enumerate() {
            if e == 1 {
                parts.push(var_name(i));
            } else if e > 1 {
                parts.push(format!("{}^{}", var_name(i), e));
            }
        }
        write!(f, "{}", parts.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.poly.terms, &|i| match i {
            0 => "X0'".to_string(),
            1 => "X1'".to_string(),
            k => format!("X{}", k - 2),
        })
    }
}

impl fmt::Display for AffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.poly.terms, &|i| match i {
            0 => "z".to_string(),
            k => format!("X{k}"),
        })
    }
}

/// The distinguished evaluation point f~ = (1, z, 1, f1, ..., fn).
pub fn f_tilde(f: &[PowerSeries]) -> Vec<PowerSeries> {
    let field = f.first().map(PowerSeries::field).unwrap_or(Field::Q);
    let prec = f.iter().map(PowerSeries::prec).min().unwrap_or(0);
    let mut point = Vec::with_capacity(f.len() + 3);
    point.push(PowerSeries::constant(Coeff::one(field), prec));
    point.push(PowerSeries::z(field, prec));
    point.push(PowerSeries::constant(Coeff::one(field), prec));
    for s in f {
        point.push(s.truncate(prec));
    }
    point
}
