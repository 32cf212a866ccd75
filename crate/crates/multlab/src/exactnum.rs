//! Exact coefficient fields (arbitrary-precision rationals, prime fields F_p
//! with p < 2^31) and truncated formal power series with certified order
//! reporting.
//!
//! A `PowerSeries` knows exactly `prec` coefficients; everything at index
//! `prec` and beyond is *unknown*, never assumed zero. All arithmetic
//! propagates precision conservatively so that every reported coefficient is
//! provably unaffected by unknown tail terms.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;

/// The coefficient field: the rationals or a prime field F_p, p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u32),
}

impl Field {
    /// Construct F_p, checking primality.
    pub fn fp(p: u64) -> Result<Field> {
        if p >= (1u64 << 31) || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Fp(p as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p as u64,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // Deterministic Miller-Rabin for n < 3.3e24 with the bases above.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An exact field element. Rational values are kept in lowest terms with a
/// positive denominator (the `num` crate maintains this); F_p residues lie in
/// [0, p-1].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Mod { val: u64, p: u32 },
}

impl Coeff {
    pub fn field(&self) -> Field {
        match self {
            Coeff::Rat(_) => Field::Q,
            Coeff::Mod { p, .. } => Field::Fp(*p),
        }
    }

    pub fn zero(field: Field) -> Coeff {
        Coeff::from_integer(field, 0)
    }

    pub fn one(field: Field) -> Coeff {
        Coeff::from_integer(field, 1)
    }

    pub fn from_integer(field: Field, v: i64) -> Coeff {
        match field {
            Field::Q => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Fp(p) => {
                let m = v.rem_euclid(p as i64) as u64;
                Coeff::Mod { val: m, p }
            }
        }
    }

    pub fn from_bigint(field: Field, v: &BigInt) -> Coeff {
        match field {
            Field::Q => Coeff::Rat(BigRational::from_integer(v.clone())),
            Field::Fp(p) => {
                let m = v.mod_floor_u64(p as u64);
                Coeff::Mod { val: m, p }
            }
        }
    }

    pub fn from_rational(rat: BigRational) -> Coeff {
        Coeff::Rat(rat)
    }

    /// Map a rational num/den into the field; errors if den vanishes mod p.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field {
            Field::Q => Ok(Coeff::Rat(BigRational::new(num.clone(), den.clone()))),
            Field::Fp(_) => {
                let n = Coeff::from_bigint(field, num);
                let d = Coeff::from_bigint(field, den);
                n.div(&d)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Mod { val, .. } => *val == 1,
        }
    }

    fn check(&self, other: &Coeff) {
        debug_assert_eq!(
            self.field(),
            other.field(),
            "internal invariant: coefficient fields must match"
        );
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        self.check(other);
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Mod { val: a, p }, Coeff::Mod { val: b, .. }) => Coeff::Mod {
                val: (a + b) % (*p as u64),
                p: *p,
            },
            _ => unreachable!("field mismatch"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Mod { val, p } => Coeff::Mod {
                val: if *val == 0 { 0 } else { *p as u64 - val },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        self.check(other);
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Mod { val: a, p }, Coeff::Mod { val: b, .. }) => Coeff::Mod {
                val: mul_mod(*a, *b, *p as u64),
                p: *p,
            },
            _ => unreachable!("field mismatch"),
        }
    }

    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Coeff::Rat(a) => Coeff::Rat(a.recip()),
            Coeff::Mod { val, p } => Coeff::Mod {
                // Fermat: val^(p-2) mod p.
                val: pow_mod(*val, *p as u64 - 2, *p as u64),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Coeff {
        let mut acc = Coeff::one(self.field());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Divide by an integer; in characteristic p this fails when p | k.
    pub fn div_by_integer(&self, k: u64) -> Result<Coeff> {
        let d = Coeff::from_bigint(self.field(), &BigInt::from(k));
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.div(&d)
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        use num::Integer;
        let r = self.mod_floor(&BigInt::from(m));
        let (_, digits) = r.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

/// Certified valuation under truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdResult {
    /// The coefficient at `k` is nonzero and all below are zero.
    Exact(usize),
    /// All coefficients below `prec` are zero; nothing is known beyond.
    AtLeast(usize),
}

impl OrdResult {
    pub fn lower_bound(&self) -> usize {
        match self {
            OrdResult::Exact(k) | OrdResult::AtLeast(k) => *k,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            OrdResult::Exact(k) => Some(*k),
            OrdResult::AtLeast(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, OrdResult::Exact(_))
    }
}

impl fmt::Display for OrdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdResult::Exact(k) => write!(f, "Exact({k})"),
            OrdResult::AtLeast(p) => write!(f, "AtLeast({p})"),
        }
    }
}

/// Truncated formal power series; `prec` = number of known coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    field: Field,
    coeffs: Vec<Coeff>,
}

impl PowerSeries {
    pub fn new(field: Field, coeffs: Vec<Coeff>) -> PowerSeries {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        PowerSeries { field, coeffs }
    }

    pub fn zero(field: Field, prec: usize) -> PowerSeries {
        PowerSeries {
            field,
            coeffs: vec![Coeff::zero(field); prec],
        }
    }

    pub fn constant(c: Coeff, prec: usize) -> PowerSeries {
        let field = c.field();
        let mut s = PowerSeries::zero(field, prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// The monomial z^k at the given precision (coefficient silently lost if
    /// k >= prec, consistent with truncation semantics).
    pub fn monomial(field: Field, k: usize, prec: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(field, prec);
        if k < prec {
            s.coeffs[k] = Coeff::one(field);
        }
        s
    }

    /// The identity series z.
    pub fn z(field: Field, prec: usize) -> PowerSeries {
        PowerSeries::monomial(field, 1, prec)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient at index i (must be < prec).
    pub fn coeff(&self, i: usize) -> &Coeff {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn truncate(&self, prec: usize) -> PowerSeries {
        let p = prec.min(self.coeffs.len());
        PowerSeries {
            field: self.field,
            coeffs: self.coeffs[..p].to_vec(),
        }
    }

    fn check_field(&self, other: &PowerSeries) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check_field(other)?;
        let prec = self.prec().min(other.prec());
        let coeffs = (0..prec)
            .map(|i| self.coeffs[i].add(&other.coeffs[i]))
            .collect();
        Ok(PowerSeries::new(self.field, coeffs))
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries::new(self.field, self.coeffs.iter().map(Coeff::neg).collect())
    }

    pub fn scale(&self, c: &Coeff) -> PowerSeries {
        PowerSeries::new(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Truncated Cauchy product; prec = min of operand precisions.
    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check_field(other)?;
        let prec = self.prec().min(other.prec());
        let mut coeffs = vec![Coeff::zero(self.field); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(PowerSeries::new(self.field, coeffs))
    }

    /// Certified valuation.
    pub fn ord(&self) -> OrdResult {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return OrdResult::Exact(i);
            }
        }
        OrdResult::AtLeast(self.prec())
    }

    /// Substitution self(other); requires ord(other) >= 1.
    /// Output prec = min(other.prec, self.prec * ord_lower_bound(other)).
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        self.check_field(inner)?;
        if inner.prec() > 0 && !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionConstantTerm);
        }
        // Conservative lower bound for ord(inner); at least 1 by the check
        // above (an all-zero inner of prec 0 is degenerate; treat ord >= 1).
        let ord_lb = inner.ord().lower_bound().max(1);
        let prec = inner.prec().min(self.prec().saturating_mul(ord_lb));
        let inner_t = inner.truncate(prec);
        // Horner evaluation from the top coefficient down.
        let mut acc = PowerSeries::zero(self.field, prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner_t)?;
            if prec > 0 {
                acc.coeffs[0] = acc.coeffs[0].add(c);
            }
        }
        Ok(acc)
    }

    /// Division by a unit series (nonzero constant term).
    pub fn div_unit(&self, den: &PowerSeries) -> Result<PowerSeries> {
        self.check_field(den)?;
        let prec = self.prec().min(den.prec());
        if prec == 0 {
            return Ok(PowerSeries::zero(self.field, 0));
        }
        if den.coeffs[0].is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let d0_inv = den.coeffs[0].inv()?;
        let mut out = vec![Coeff::zero(self.field); prec];
        for k in 0..prec {
            let mut acc = self.coeffs[k].clone();
            for j in 0..k {
                acc = acc.sub(&out[j].mul(&den.coeffs[k - j]));
            }
            out[k] = acc.mul(&d0_inv);
        }
        Ok(PowerSeries::new(self.field, out))
    }

    /// Formal derivative d/dz (prec drops by one).
    pub fn derivative(&self) -> PowerSeries {
        let prec = self.prec().saturating_sub(1);
        let mut coeffs = Vec::with_capacity(prec);
        for k in 1..=prec {
            let kc = Coeff::from_bigint(self.field, &BigInt::from(k as u64));
            coeffs.push(self.coeffs[k].mul(&kc));
        }
        PowerSeries::new(self.field, coeffs)
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z^{i}")?;
            } else {
                write!(f, "({c})*z^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Q
    }

    fn series_i64(v: &[i64]) -> PowerSeries {
        PowerSeries::new(
            q(),
            v.iter().map(|&c| Coeff::from_integer(q(), c)).collect(),
        )
    }

    #[test]
    fn mul_difference_of_squares() {
        // (1+z)(1-z) = 1-z^2 at prec 8.
        let a = {
            let mut s = series_i64(&[1, 1]);
            s.coeffs.resize(8, Coeff::zero(q()));
            s
        };
        let b = {
            let mut s = series_i64(&[1, -1]);
            s.coeffs.resize(8, Coeff::zero(q()));
            s
        };
        let prod = a.mul(&b).unwrap();
        let mut expect = series_i64(&[1, 0, -1]);
        expect.coeffs.resize(8, Coeff::zero(q()));
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_z_times_z() {
        let z = PowerSeries::z(q(), 4);
        let z2 = z.mul(&z).unwrap();
        assert_eq!(z2, PowerSeries::monomial(q(), 2, 4));
    }

    #[test]
    fn frobenius_char_2() {
        let f2 = Field::fp(2).unwrap();
        let one_plus_z = PowerSeries::new(
            f2,
            vec![
                Coeff::one(f2),
                Coeff::one(f2),
                Coeff::zero(f2),
                Coeff::zero(f2),
            ],
        );
        let sq = one_plus_z.mul(&one_plus_z).unwrap();
        let expect = PowerSeries::new(
            f2,
            vec![
                Coeff::one(f2),
                Coeff::zero(f2),
                Coeff::one(f2),
                Coeff::zero(f2),
            ],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn ord_examples() {
        // z^3 + z^5 at prec 10.
        let mut s = PowerSeries::zero(q(), 10);
        s.coeffs[3] = Coeff::one(q());
        s.coeffs[5] = Coeff::one(q());
        assert_eq!(s.ord(), OrdResult::Exact(3));
        assert_eq!(PowerSeries::zero(q(), 10).ord(), OrdResult::AtLeast(10));
        // 2z truncated to prec 1: only index 0 is known.
        let t = series_i64(&[0]);
        assert_eq!(t.ord(), OrdResult::AtLeast(1));
    }

    #[test]
    fn compose_simple() {
        // outer = z + z^2, inner = z^2 -> z^2 + z^4.
        let outer = series_i64(&[0, 1, 1]);
        let inner = PowerSeries::monomial(q(), 2, 8);
        let c = outer.compose(&inner).unwrap();
        // prec = min(8, 3*2) = 6.
        assert_eq!(c.prec(), 6);
        assert_eq!(c.ord(), OrdResult::Exact(2));
        assert!(c.coeff(4).is_one());
        assert!(c.coeff(3).is_zero());
    }

    #[test]
    fn compose_rejects_constant_term() {
        let outer = series_i64(&[1, 1]);
        let inner = series_i64(&[1, 0]);
        assert!(matches!(
            outer.compose(&inner),
            Err(Error::CompositionConstantTerm)
        ));
    }

    #[test]
    fn compose_ord_multiplicativity() {
        // ord(f o g) = ord(f) * ord(g) for Exact cases within prec.
        let f = {
            let mut s = PowerSeries::zero(q(), 12);
            s.coeffs[3] = Coeff::from_integer(q(), 2);
            s.coeffs[4] = Coeff::one(q());
            s
        };
        let g = {
            let mut s = PowerSeries::zero(q(), 40);
            s.coeffs[2] = Coeff::one(q());
            s.coeffs[3] = Coeff::one(q());
            s
        };
        let c = f.compose(&g).unwrap();
        assert_eq!(c.ord(), OrdResult::Exact(6));
    }

    #[test]
    fn div_unit_roundtrip() {
        let a = series_i64(&[1, 2, 3, 4, 5]);
        let b = series_i64(&[2, -1, 0, 7, 1]);
        let q_ = a.div_unit(&b).unwrap();
        let back = q_.mul(&b).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn div_unit_rejects_nonunit() {
        let a = series_i64(&[1, 2]);
        let b = series_i64(&[0, 1]);
        assert!(matches!(a.div_unit(&b), Err(Error::NonUnitDivisor)));
    }

    #[test]
    fn fp_requires_prime() {
        assert!(Field::fp(4).is_err());
        assert!(Field::fp(2147483647).is_ok()); // 2^31 - 1 is prime
        assert!(Field::fp(1u64 << 31).is_err()); // out of range even if prime-sized
    }

    #[test]
    fn field_mismatch_reported() {
        let a = PowerSeries::zero(Field::Q, 4);
        let b = PowerSeries::zero(Field::fp(5).unwrap(), 4);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn mul_ord_additivity() {
        let a = PowerSeries::monomial(q(), 2, 10);
        let b = {
            let mut s = PowerSeries::zero(q(), 10);
            s.coeffs[3] = Coeff::from_integer(q(), 5);
            s
        };
        let p = a.mul(&b).unwrap();
        assert_eq!(p.ord(), OrdResult::Exact(5));
    }

    #[test]
    fn coeff_fp_inverse() {
        let f = Field::fp(101).unwrap();
        for v in 1..101i64 {
            let c = Coeff::from_integer(f, v);
            assert!(c.mul(&c.inv().unwrap()).is_one());
        }
    }
}
