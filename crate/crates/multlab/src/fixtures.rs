//! Canonical example systems and series used across the crate and the CLI:
//! the exponential ODE, a three-function Ramanujan-style quadratic ODE system,
//! the Fredholm-type Mahler equation f(z) = f(z^2) + z, and a coupled 2x2
//! Mahler system.

use crate::bipoly::{AffinePoly, BiPoly};
use crate::error::Result;
use crate::exactnum::{Coeff, Field, PowerSeries};
use crate::systems::{
    solve_mahler, solve_ode, DifferentialSystem, MahlerSystem, PhiKind, Transformation,
};
use num::rational::BigRational;
use num::BigInt;

fn q() -> Field {
    Field::Q
}

/// exp(z) = sum z^k / k! as an exact rational series.
pub fn exp_series(prec: usize) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(prec);
    let mut c = BigRational::from_integer(BigInt::from(1));
    for k in 0..prec {
        if k > 0 {
            c /= BigRational::from_integer(BigInt::from(k as u64));
        }
        coeffs.push(Coeff::Rat(c.clone()));
    }
    PowerSeries::new(q(), coeffs)
}

/// The Fredholm-type series F(z) = sum_{k >= 0} z^{2^k}, the solution of
/// f(z) = f(z^2) + z with f(0) = 0.
pub fn fredholm_series(prec: usize) -> PowerSeries {
    let mut coeffs: Vec<Coeff> = vec![Coeff::zero(q()); prec];
    let mut e = 1usize;
    while e < prec {
        coeffs[e] = Coeff::one(q());
        e *= 2;
    }
    PowerSeries::new(q(), coeffs)
}

/// f' = f, f(0) = 1 (n = 1, A0 = 1, A1 = X1).
pub fn exp_system() -> DifferentialSystem {
    DifferentialSystem::new(
        1,
        vec![
            AffinePoly::constant(1, Coeff::one(q())),
            AffinePoly::x(1, q(), 1),
        ],
        vec![Coeff::one(q())],
    )
    .unwrap()
}

/// f1' = f1, f2' = 2z f2 (n = 2): solutions exp(z) and exp(z^2).
pub fn exp2_system() -> DifferentialSystem {
    let two_z = AffinePoly::z_var(2, q()).scale(&Coeff::from_integer(q(), 2));
    DifferentialSystem::new(
        2,
        vec![
            AffinePoly::constant(2, Coeff::one(q())),
            AffinePoly::x(2, q(), 1),
            two_z.mul(&AffinePoly::x(2, q(), 2)),
        ],
        vec![Coeff::one(q()), Coeff::one(q())],
    )
    .unwrap()
}

/// A Ramanujan-style quadratic system (n = 3):
/// 12 f1' = f1^2 - f2, 12 f2' = 4(f1 f2 - f3), 12 f3' = 6(f1 f3 - f2^2),
/// with f(0) = (1, 1, 1).
pub fn ramanujan_system() -> DifferentialSystem {
    let n = 3;
    let x1 = AffinePoly::x(n, q(), 1);
    let x2 = AffinePoly::x(n, q(), 2);
    let x3 = AffinePoly::x(n, q(), 3);
    DifferentialSystem::new(
        n,
        vec![
            AffinePoly::constant(n, Coeff::from_integer(q(), 12)),
            x1.mul(&x1).sub(&x2),
            x1.mul(&x2).sub(&x3).scale(&Coeff::from_integer(q(), 4)),
            x1.mul(&x3)
                .sub(&x2.mul(&x2))
                .scale(&Coeff::from_integer(q(), 6)),
        ],
        vec![Coeff::one(q()), Coeff::one(q()), Coeff::one(q())],
    )
    .unwrap()
}

/// The Fredholm-type Mahler system (n = 1): p = z^2,
/// A0 = X0'X0, A1 = X0'X1 - X1'X0, encoding f(z^2) = f(z) - z.
pub fn fredholm_system() -> MahlerSystem {
    let n = 1;
    let x0p = BiPoly::x_prime(n, q(), 0);
    let x1p = BiPoly::x_prime(n, q(), 1);
    let x0 = BiPoly::x(n, q(), 0);
    let x1 = BiPoly::x(n, q(), 1);
    MahlerSystem::new(
        n,
        x0p.pow(2),
        x1p.pow(2),
        vec![x0p.mul(&x0), x0p.mul(&x1).sub(&x1p.mul(&x0))],
    )
    .unwrap()
}

/// Coupled 2x2 Mahler system (n = 2): p = z^2,
/// f1(z^2) = f1 - z (the Fredholm equation) and f2(z^2) = f2 - z f1.
pub fn mahler2x2_system() -> MahlerSystem {
    let n = 2;
    let x0p = BiPoly::x_prime(n, q(), 0);
    let x1p = BiPoly::x_prime(n, q(), 1);
    let x0 = BiPoly::x(n, q(), 0);
    let x1 = BiPoly::x(n, q(), 1);
    let x2 = BiPoly::x(n, q(), 2);
    MahlerSystem::new(
        n,
        x0p.pow(2),
        x1p.pow(2),
        vec![
            x0p.mul(&x0),
            x0p.mul(&x1).sub(&x1p.mul(&x0)),
            x0p.mul(&x2).sub(&x1p.mul(&x1)),
        ],
    )
    .unwrap()
}

/// Solution of the 2x2 Mahler system with zero initial coefficients.
pub fn solve_mahler2x2(prec: usize) -> Vec<PowerSeries> {
    solve_mahler(
        &mahler2x2_system(),
        &[vec![Coeff::zero(q())], vec![Coeff::zero(q())]],
        prec,
    )
    .unwrap()
}

/// The derivation for the exponential system, with default growth parameters.
pub fn exp_phi() -> Transformation {
    Transformation::differential(exp_system())
}

/// The derivation for the two-function exponential system.
pub fn exp2_phi() -> Transformation {
    Transformation::differential(exp2_system())
}

/// The derivation for the Ramanujan-style system.
pub fn ramanujan_phi() -> Transformation {
    Transformation::differential(ramanujan_system())
}

/// The morphism pullback for the Fredholm-type system; defaults give
/// (mu, nu0, nu1) = (1, 2, 1) and lambda = 2.
pub fn fredholm_phi() -> Transformation {
    Transformation::mahler(fredholm_system())
}

/// The affine differential operator D(P) = A0 dP/dz + sum A_i dP/dX_i of a
/// differential-kind transformation, computed directly from the affine data
/// (independent of the homogeneous realization).
pub fn apply_affine_d(phi: &Transformation, p: &AffinePoly) -> AffinePoly {
    let sys = match &phi.kind {
        PhiKind::DifferentialOperator(s) => s,
        PhiKind::MorphismPullback(_) => panic!("differential kind required"),
    };
    let mut acc = sys.a[0].mul(&p.derivative_z());
    for i in 1..=sys.n {
        acc = acc.add(&sys.a[i].mul(&p.derivative_x(i)));
    }
    acc
}

/// Solve the exponential ODE (sanity path used by the CLI examples).
pub fn solve_exp(prec: usize) -> Result<Vec<PowerSeries>> {
    solve_ode(&exp_system(), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_series_matches_ode_solution() {
        assert_eq!(solve_exp(20).unwrap()[0], exp_series(20));
    }

    #[test]
    fn fredholm_series_is_lacunary() {
        let f = fredholm_series(40);
        for k in 0..40 {
            let expect = k > 0 && (k as u64).is_power_of_two();
            assert_eq!(!f.coeff(k).is_zero(), expect, "index {k}");
        }
    }
}
