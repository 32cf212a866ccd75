//! The explicit constants of the quantitative statements: c_n, nu, the
//! rho-sequence, the aggregate constants C and K, C_iso, and the m-cap check.
//!
//! The rho-sequence grows as an exponential tower, so values are carried in a
//! `Magnitude` that degrades gracefully from exact rationals to log2 (and,
//! beyond f64 range, log2-of-log2) representations instead of overflowing.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Bit-size threshold beyond which exact rationals degrade to log form.
const EXACT_BIT_CAP: u64 = 1 << 20;

/// A non-negative number that may be far too large for any dense
/// representation. `Log2(x)` stands for 2^x; `LogLog2(x)` stands for 2^(2^x).
#[derive(Debug, Clone, PartialEq)]
pub enum Magnitude {
    Exact(BigRational),
    Log2(f64),
    LogLog2(f64),
}

fn rational_log2(r: &BigRational) -> f64 {
    // Accurate enough for reporting/ordering at these scales.
    let nb = r.numer().abs().bits() as f64;
    let db = r.denom().bits() as f64;
    let head = r.to_f64().filter(|v| v.is_finite() && *v > 0.0);
    match head {
        Some(v) => v.log2(),
        None => nb - db,
    }
}

impl Magnitude {
    pub fn from_rational(r: BigRational) -> Magnitude {
        debug_assert!(!r.is_negative());
        Magnitude::Exact(r).normalize()
    }

    pub fn from_integer(v: u64) -> Magnitude {
        Magnitude::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    fn normalize(self) -> Magnitude {
        match self {
            Magnitude::Exact(r) => {
                if r.numer().bits() > EXACT_BIT_CAP || r.denom().bits() > EXACT_BIT_CAP {
                    Magnitude::Log2(rational_log2(&r))
                } else {
                    Magnitude::Exact(r)
                }
            }
            Magnitude::Log2(x) if !x.is_finite() => Magnitude::LogLog2(x),
            other => other,
        }
    }

    /// log2 of the value, when it fits an f64.
    pub fn log2(&self) -> Option<f64> {
        match self {
            Magnitude::Exact(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(rational_log2(r))
                }
            }
            Magnitude::Log2(x) => Some(*x),
            Magnitude::LogLog2(x) => {
                let v = x.exp2();
                v.is_finite().then_some(v)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Magnitude::Exact(r) if r.is_zero())
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        use Magnitude::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a * b).normalize(),
            _ => {
                if self.is_zero() || other.is_zero() {
                    return Magnitude::from_integer(0);
                }
                match (self.log2(), other.log2()) {
                    (Some(a), Some(b)) => Log2(a + b).normalize(),
                    // At least one factor is beyond f64 log2 range: the
                    // product is dominated by the larger factor at this scale.
                    _ => self.max(other),
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Magnitude {
        match self {
            Magnitude::Exact(r) => {
                // Only exponentiate exactly when the result stays under cap.
                let bits = r.numer().bits().max(r.denom().bits());
                if bits.saturating_mul(e as u64) <= EXACT_BIT_CAP {
                    let mut acc = BigRational::one();
                    for _ in 0..e {
                        acc *= r;
                    }
                    Magnitude::Exact(acc).normalize()
                } else {
                    Magnitude::Log2(rational_log2(r) * e as f64).normalize()
                }
            }
            Magnitude::Log2(x) => Magnitude::Log2(x * e as f64).normalize(),
            Magnitude::LogLog2(x) => Magnitude::LogLog2(x + (e as f64).log2()).normalize(),
        }
    }

    /// base^self for a rational base > 1 with a possibly enormous exponent.
    pub fn exp_base(&self, base: &BigRational) -> Magnitude {
        let lb = rational_log2(base);
        match self {
            Magnitude::Exact(r) => {
                if let (Some(e), true) = (r.to_integer().to_u32(), r.is_integer()) {
                    return Magnitude::from_rational(base.clone()).pow(e);
                }
                match r.to_f64() {
                    Some(v) if (v * lb).is_finite() => Magnitude::Log2(v * lb).normalize(),
                    _ => Magnitude::LogLog2(rational_log2(r) + lb.log2()).normalize(),
                }
            }
            Magnitude::Log2(x) => {
                // log2(base^(2^x)) = 2^x * log2(base).
                let l = x.exp2() * lb;
                if l.is_finite() {
                    Magnitude::Log2(l)
                } else {
                    Magnitude::LogLog2(x + lb.log2()).normalize()
                }
            }
            Magnitude::LogLog2(x) => {
                // log2(log2(result)) = 2^x + log2(log2(base)) ~ 2^x.
                Magnitude::LogLog2(x.exp2() + lb.log2().max(0.0)).normalize()
            }
        }
    }

    pub fn max(&self, other: &Magnitude) -> Magnitude {
        match self.partial_cmp_mag(other) {
            Ordering::Less => other.clone(),
            _ => self.clone(),
        }
    }

    fn tower_level(&self) -> u8 {
        match self {
            Magnitude::Exact(_) => 0,
            Magnitude::Log2(_) => 1,
            Magnitude::LogLog2(_) => 2,
        }
    }

    pub fn partial_cmp_mag(&self, other: &Magnitude) -> Ordering {
        use Magnitude::*;
        match (self, other) {
            (Exact(a), Exact(b)) => a.cmp(b),
            (LogLog2(a), LogLog2(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
            _ => match (self.log2(), other.log2()) {
                (Some(a), Some(b)) => a.partial_cmp(&b).unwrap_or(Ordering::Equal),
                _ => self.tower_level().cmp(&other.tower_level()),
            },
        }
    }

    /// self >= r for an exact rational r.
    pub fn ge_rational(&self, r: &BigRational) -> bool {
        match self {
            Magnitude::Exact(v) => v >= r,
            _ => {
                if r.is_negative() || r.is_zero() {
                    return true;
                }
                match self.log2() {
                    Some(l) => l >= rational_log2(r),
                    None => true, // LogLog2 beyond f64: astronomically large
                }
            }
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Magnitude::Exact(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(r) => write!(f, "{r}"),
            Magnitude::Log2(x) => write!(f, "~2^{x:.3}"),
            Magnitude::LogLog2(x) => write!(f, "~2^2^{x:.3}"),
        }
    }
}

/// c_n = 2^(n+1) (n+2)^((n+1)(n+3)).
pub fn c_n(n: usize) -> BigInt {
    BigInt::from(2).pow((n + 1) as u32) * BigInt::from(n as u64 + 2).pow(((n + 1) * (n + 3)) as u32)
}

/// nu = 1 when nu1 = 0, else 2^(n+2) max(1, 4 nu0/nu1)^(n+1).
pub fn nu_constant(n: usize, nu0: &BigRational, nu1: &BigRational) -> BigRational {
    if nu1.is_zero() {
        return BigRational::one();
    }
    let ratio = BigRational::from_integer(BigInt::from(4)) * nu0 / nu1;
    let base = ratio.max(BigRational::one());
    let mut pow = BigRational::one();
    for _ in 0..=n {
        pow *= &base;
    }
    BigRational::from_integer(BigInt::from(2).pow((n + 2) as u32)) * pow
}

fn factorial(k: usize) -> BigInt {
    (1..=k as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

/// rho_0 = 0, rho_1 = 1,
/// rho_{i+1} = nu (n+1)! rho_i^(n+2) max(mu, nu0)^(nu (n+1)! rho_i^(n+1)),
/// returned as rho_0 ... rho_count.
pub fn rho_sequence(
    n: usize,
    mu: &BigRational,
    nu0: &BigRational,
    nu: &BigRational,
    count: usize,
) -> Vec<Magnitude> {
    let mut rho = vec![Magnitude::from_integer(0), Magnitude::from_integer(1)];
    let fact = Magnitude::from_rational(BigRational::from_integer(factorial(n + 1)));
    let numag = Magnitude::from_rational(nu.clone());
    let base = mu.clone().max(nu0.clone()).max(BigRational::one());
    while rho.len() <= count {
        let r = rho.last().unwrap().clone();
        let exponent = numag.mul(&fact).mul(&r.pow((n + 1) as u32));
        let next = numag
            .mul(&fact)
            .mul(&r.pow((n + 2) as u32))
            .mul(&exponent.exp_base(&base));
        rho.push(next);
    }
    rho.truncate(count + 1);
    rho
}

/// C = 1 + max(c_n^(n-1) C0^n, min(nu0, mu)^(-n), C_iso,
///             (n! c_n (1 + nu1/max(mu, nu0)) rho_n^n K0)^n, C1).
#[allow(clippy::too_many_arguments)]
pub fn c_constant(
    n: usize,
    mu: &BigRational,
    nu0: &BigRational,
    nu1: &BigRational,
    rho_n: &Magnitude,
    c_iso: &BigRational,
    k0: &BigRational,
    c0: &BigRational,
    c1: &BigRational,
) -> Magnitude {
    let cn = BigRational::from_integer(c_n(n));
    let t1 = Magnitude::from_rational(cn.clone())
        .pow((n - 1) as u32)
        .mul(&Magnitude::from_rational(c0.clone()).pow(n as u32));
    let minmunu = mu.clone().min(nu0.clone());
    let t2 = Magnitude::from_rational((BigRational::one() / minmunu).max(BigRational::zero()))
        .pow(n as u32);
    let t3 = Magnitude::from_rational(c_iso.clone());
    let weight = BigRational::one() + nu1.clone() / mu.clone().max(nu0.clone());
    let t4 = Magnitude::from_rational(
        BigRational::from_integer(factorial(n)) * &cn * weight * k0,
    )
    .mul(&rho_n.pow(n as u32))
    .pow(n as u32);
    let t5 = Magnitude::from_rational(c1.clone());
    t1.max(&t2).max(&t3).max(&t4).max(&t5).add_one()
}

impl Magnitude {
    fn add_one(&self) -> Magnitude {
        match self {
            Magnitude::Exact(r) => Magnitude::Exact(r + BigRational::one()).normalize(),
            other => other.clone(), // +1 is negligible at log scales
        }
    }
}

/// K = max(2nC, (2 rho_{n+1} c_n / (max(1, lambda) max(1, mu)))^n).
pub fn k_constant(
    n: usize,
    mu: &BigRational,
    lambda: &BigRational,
    rho_n1: &Magnitude,
    c: &Magnitude,
) -> Magnitude {
    let cn = BigRational::from_integer(c_n(n));
    let denom = lambda.clone().max(BigRational::one()) * mu.clone().max(BigRational::one());
    let t2 = rho_n1
        .mul(&Magnitude::from_rational(
            BigRational::from_integer(BigInt::from(2)) * cn / denom,
        ))
        .pow(n as u32);
    let t1 = c.mul(&Magnitude::from_integer(2 * n as u64));
    t1.max(&t2)
}

/// C_iso = ((c_n w + 1)/min(nu0, mu))^n, where w = Ord_z(f~ wedge f~(0)).
pub fn c_iso_value(n: usize, mu: &BigRational, nu0: &BigRational, wedge_ord: usize) -> BigRational {
    let cn = BigRational::from_integer(c_n(n));
    let num = cn * BigRational::from_integer(BigInt::from(wedge_ord)) + BigRational::one();
    let base = num / mu.clone().min(nu0.clone());
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= &base;
    }
    acc
}

/// m-cap: declared_m <= nu (n+1)! rho_i^(n+1).
pub fn m_cap_check(n: usize, nu: &BigRational, rho_i: &Magnitude, declared_m: u64) -> bool {
    let cap = Magnitude::from_rational(nu.clone() * BigRational::from_integer(factorial(n + 1)))
        .mul(&rho_i.pow((n + 1) as u32));
    // declared_m <= cap  <=>  not (cap < declared_m)  <=>  cap >= declared_m.
    cap.ge_rational(&BigRational::from_integer(BigInt::from(declared_m)))
}
