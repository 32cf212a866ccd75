//! End-to-end acceptance checks, one line per criterion.
//!
//! Run `cargo test --test acceptance -- --nocapture` to see the table. Every
//! criterion is expected green except criterion 1, whose floor-bound subcheck
//! is unattainable for n = 1: there floor((a+1)(b+1)^n / n!) equals the full
//! coefficient-space dimension while the best possible vanishing order for a
//! function with no algebraic relations is dimension - 1. The criterion is
//! reported FAIL honestly; the harness asserts that the failure is confined
//! to exactly that subcheck.

use std::time::Instant;

use num::{BigInt, BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multlab::audit::{
    constants_sheet, construct_aux, floor_lower_bound, pigeonhole_lower_bound, run_audit,
};
use multlab::bipoly::{bihomogenize, bihomogenize_bounds, f_tilde, AffinePoly, BiPoly};
use multlab::constants::c_n;
use multlab::constants::rho_sequence;
use multlab::exactnum::{Coeff, Field, OrdResult, PowerSeries};
use multlab::fixtures;
use multlab::idealkit::{naive_division_remainder, IdealHandle};
use multlab::mpoly::MPoly;
use multlab::parser::parse_zform;
use multlab::projgeo::{liouville_check, wedge_ord, ProjPoint, ZeroCycle};
use multlab::stabledyn::{
    c3, check_t_stable, stability_bound, verify_stable_ord_bound, LinearMahlerSystem,
    VerdictStatus,
};
use multlab::systems::{
    check_correctness_axioms, mahler_residuals, ode_residuals, solve_mahler,
};

fn q() -> Field {
    Field::Q
}

fn r(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn series(coeffs: &[i64], prec: usize) -> PowerSeries {
    let mut v = vec![Coeff::zero(q()); prec];
    for (i, &c) in coeffs.iter().enumerate() {
        v[i] = Coeff::from_integer(q(), c);
    }
    PowerSeries::new(q(), v)
}

struct Line {
    id: usize,
    pass: bool,
    note: String,
}

/// Criterion 1: auxiliary construction on exp/Fredholm (n = 1) and the
/// bundled 2x2 Mahler system (n = 2), a, b <= 4, under 60 s. The pigeonhole bound
/// (a+1) binom(b+n, n) - 1 must hold everywhere; the floor bound
/// floor((a+1)(b+1)^n / n!) is additionally demanded and fails for n = 1.
fn criterion_1() -> Line {
    let start = Instant::now();
    let prec = 80;
    let fixtures: Vec<(&str, usize, Vec<PowerSeries>)> = vec![
        ("exp", 1, fixtures::solve_exp(prec).unwrap()),
        ("fredholm", 1, vec![fixtures::fredholm_series(prec)]),
        ("mahler2x2", 2, fixtures::solve_mahler2x2(prec)),
    ];
    let mut cells = 0usize;
    let mut n1_cells = 0usize;
    let mut pigeonhole_failures = 0usize;
    let mut floor_failures: Vec<(String, usize, usize, usize)> = Vec::new();
    for (name, n, f) in &fixtures {
        let point = f_tilde(f);
        for a in 0..=4usize {
            for b in 0..=4usize {
                let qpoly = construct_aux(&point, a, b, prec).unwrap();
                let ord = qpoly.ord_at(&point).unwrap().lower_bound();
                cells += 1;
                n1_cells += usize::from(*n == 1);
                if ord < pigeonhole_lower_bound(*n, a, b) {
                    pigeonhole_failures += 1;
                }
                if ord < floor_lower_bound(*n, a, b) {
                    floor_failures.push((name.to_string(), *n, a, b));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    // The failure set must be exactly the known defect: floor bound, n = 1.
    assert_eq!(pigeonhole_failures, 0, "pigeonhole bound violated");
    assert!(
        !floor_failures.is_empty() && floor_failures.iter().all(|(_, n, _, _)| *n == 1),
        "floor-bound failures not confined to n = 1: {floor_failures:?}"
    );
    assert!(elapsed.as_secs() < 60, "runtime budget exceeded: {elapsed:?}");
    Line {
        id: 1,
        pass: false,
        note: format!(
            "aux construction: pigeonhole bound holds in {cells}/{cells} cells, but the floor \
             bound fails in {}/{} n = 1 cells (floor = dim exceeds the best possible ord \
             dim - 1); {:.1} s",
            floor_failures.len(),
            n1_cells,
            elapsed.as_secs_f64()
        ),
    }
}

/// Criterion 2: Fredholm extremal orders, M, N <= 6 at prec 600.
fn criterion_2() -> Line {
    let prec = 600;
    let point = f_tilde(&[fixtures::fredholm_series(prec)]);
    let grid = run_audit(&point, (0, 6), (0, 6), prec).unwrap();
    let mut pass = grid.violations == 0 && grid.inconclusive == 0;
    let mut exact = 0usize;
    let e = |m: usize, nn: usize| {
        grid.cells
            .iter()
            .find(|c| c.m == m && c.nn == nn)
            .map(|c| c.e)
            .unwrap()
    };
    for c in &grid.cells {
        match c.e {
            OrdResult::Exact(v) => {
                exact += 1;
                if c.m > 0 && e(c.m - 1, c.nn).lower_bound() > v {
                    pass = false;
                }
                if c.nn > 0 && e(c.m, c.nn - 1).lower_bound() > v {
                    pass = false;
                }
            }
            OrdResult::AtLeast(_) => pass = false,
        }
    }
    pass &= e(0, 1) == OrdResult::Exact(1) && e(1, 1) == OrdResult::Exact(3);
    Line {
        id: 2,
        pass,
        note: format!(
            "extremal orders: {exact}/{} cells exact, E(0,1) = {}, E(1,1) = {}, \
             monotone, {} violations",
            grid.cells.len(),
            e(0, 1),
            e(1, 1),
            grid.violations
        ),
    }
}

/// Criterion 3: fitted K identical across runs and thread counts; slope of
/// log E against log(N+1) at M = 6 within [0.8, 1.2].
fn criterion_3() -> Line {
    let prec = 600;
    let point = f_tilde(&[fixtures::fredholm_series(prec)]);
    let run = || run_audit(&point, (0, 6), (0, 6), prec).unwrap();
    let a = run();
    let b = run();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(run);
    let threaded = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap()
        .install(run);
    let k = a.k_hat_zorin.clone();
    let stable = k.is_some()
        && [&b, &serial, &threaded].iter().all(|g| {
            g.k_hat_zorin == a.k_hat_zorin
                && g.k_hat_nesterenko == a.k_hat_nesterenko
                && g.csv() == a.csv()
        });
    let slope = a.slope_at(6).unwrap();
    let pass = stable && (0.8..=1.2).contains(&slope);
    Line {
        id: 3,
        pass,
        note: format!(
            "bound-shape audit: fitted K = {} reproducible across 4 runs (1 and 3 threads), \
             slope at M = 6 is {slope:.4}",
            k.map(|v| v.to_string()).unwrap_or_else(|| "n/a".into())
        ),
    }
}

/// Criterion 4: solver oracles and residuals.
fn criterion_4() -> Line {
    let mut pass = true;

    let prec = 128;
    let f = fixtures::solve_exp(prec).unwrap();
    let mut fact = BigRational::one();
    for k in 0..prec {
        if k > 0 {
            fact *= r(k as i64);
        }
        pass &= *f[0].coeff(k) == Coeff::from_rational(fact.recip());
    }
    for res in ode_residuals(&fixtures::exp_system(), &f).unwrap() {
        pass &= matches!(res, OrdResult::AtLeast(v) if v >= prec - 1);
    }

    let prec = 256;
    let sys = fixtures::fredholm_system();
    let f = solve_mahler(&sys, &[vec![Coeff::zero(q())]], prec).unwrap();
    for k in 0..prec {
        let expect = i64::from(k > 0 && k & (k - 1) == 0);
        pass &= *f[0].coeff(k) == Coeff::from_integer(q(), expect);
    }
    for res in mahler_residuals(&sys, &f).unwrap() {
        pass &= matches!(res, OrdResult::AtLeast(v) if v >= prec - 1);
    }

    let f2 = fixtures::solve_mahler2x2(prec);
    for res in mahler_residuals(&fixtures::mahler2x2_system(), &f2).unwrap() {
        pass &= matches!(res, OrdResult::AtLeast(v) if v >= prec - 1);
    }

    Line {
        id: 4,
        pass,
        note: "solvers: exp coefficients are 1/k! to prec 128, Fredholm coefficients are the \
               power-of-two indicator to prec 256, all residuals AtLeast(prec - 1)"
            .into(),
    }
}

/// Criterion 5: D(hP) = h(D(P)) for 200 seeded random P, deg_z, deg_X <= 3.
fn criterion_5() -> Line {
    let phi = fixtures::exp_phi();
    let (s, t) = fixtures::exp_system().st();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut trials = 0usize;
    let mut failures = 0usize;
    while trials < 200 {
        let mut p = AffinePoly::zero(1, q());
        for _ in 0..rng.gen_range(1..6) {
            let mono = vec![rng.gen_range(0..4u32), rng.gen_range(0..4u32)];
            p.poly
                .add_term(mono, &Coeff::from_integer(q(), rng.gen_range(-9..=9)));
        }
        if p.is_zero() {
            continue;
        }
        trials += 1;
        let lhs = phi.apply(&bihomogenize(&p)).unwrap();
        let dp = fixtures::apply_affine_d(&phi, &p);
        let rhs = if dp.is_zero() {
            BiPoly::zero(1, q())
        } else {
            bihomogenize_bounds(&dp, p.deg_z() + s, p.deg_x() + t)
        };
        if lhs != rhs {
            failures += 1;
        }
    }
    Line {
        id: 5,
        pass: failures == 0,
        note: format!("homogenization commutation: {failures} failures in {trials} trials"),
    }
}

/// Criterion 6: Leibniz / homomorphism axioms plus corrupted-phi detection.
fn criterion_6() -> Line {
    let leibniz = check_correctness_axioms(&fixtures::exp_phi(), 100, 61).unwrap();
    let hom = check_correctness_axioms(&fixtures::fredholm_phi(), 100, 62).unwrap();
    let bad_d = check_correctness_axioms(&fixtures::exp_phi().with_fault(), 100, 63).unwrap();
    let bad_m = check_correctness_axioms(&fixtures::fredholm_phi().with_fault(), 100, 64).unwrap();
    let pass = leibniz.passed() && hom.passed() && !bad_d.passed() && !bad_m.passed();
    Line {
        id: 6,
        pass,
        note: format!(
            "correctness axioms: Leibniz {}/100, homomorphism {}/100, corrupted phi detected in \
             both kinds",
            100 - leibniz.failures.len(),
            100 - hom.failures.len()
        ),
    }
}

/// Criterion 7: Groebner membership vs the naive division oracle; reduced
/// bases permutation-invariant.
fn criterion_7() -> Line {
    use multlab::bipoly::BIGRADED_ORDER;
    let n = 1;
    let x0p = BiPoly::x_prime(n, q(), 0);
    let x1p = BiPoly::x_prime(n, q(), 1);
    let x0 = BiPoly::x(n, q(), 0);
    let x1 = BiPoly::x(n, q(), 1);
    let gens = vec![
        x0.mul(&x1).sub(&x0p.pow(2)),
        x1p.pow(2).sub(&x0p.mul(&x1p)),
        x1p.mul(&x0),
    ];
    let ideal = IdealHandle::new(n, q(), gens.clone());
    let gb: Vec<MPoly> = ideal
        .groebner()
        .unwrap()
        .iter()
        .map(|g| g.poly.clone())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut pass = true;
    let mut members = 0usize;
    for _ in 0..100 {
        let p = multlab::systems::random_bipoly(&mut rng, n, q(), 3, 4);
        let via_member = ideal.member(&p).unwrap();
        let via_oracle = naive_division_remainder(&p.poly, &gb, &BIGRADED_ORDER).is_zero();
        pass &= via_member == via_oracle;
        members += usize::from(via_member);
        let forced = p.mul(&gens[0]);
        pass &= ideal.member(&forced).unwrap()
            && naive_division_remainder(&forced.poly, &gb, &BIGRADED_ORDER).is_zero();
    }
    // Both classes must occur for the comparison to mean anything.
    pass &= members < 100;
    let reference = ideal.groebner().unwrap().to_vec();
    for rot in 1..gens.len() {
        let mut permuted = gens.clone();
        permuted.rotate_left(rot);
        pass &= IdealHandle::new(n, q(), permuted).groebner().unwrap() == &reference[..];
    }
    Line {
        id: 7,
        pass,
        note: format!(
            "Groebner oracle: membership agrees with naive division on 100 instances \
             ({members} members), reduced basis invariant under generator permutation"
        ),
    }
}

/// Criterion 8: Fredholm stability lab.
fn criterion_8() -> Line {
    let sys = fixtures::fredholm_system();
    let lin = LinearMahlerSystem::from_mahler(&sys).unwrap();
    let mut pass = c3(&lin).unwrap() == 0;
    pass &= stability_bound(&lin).unwrap() == r(2);

    let point = f_tilde(&[fixtures::fredholm_series(64)]);
    let n = 1;
    let v_x0 = IdealHandle::new(n, q(), vec![BiPoly::x(n, q(), 0)]);
    let verdict = verify_stable_ord_bound(&v_x0, &lin, &point).unwrap();
    pass &= verdict.status == VerdictStatus::Satisfied
        && verdict.is_t_stable
        && verdict.ord_upper == OrdResult::Exact(0);

    let graph = IdealHandle::new(
        n,
        q(),
        vec![BiPoly::x_prime(n, q(), 1)
            .mul(&BiPoly::x(n, q(), 0))
            .sub(&BiPoly::x_prime(n, q(), 0).mul(&BiPoly::x(n, q(), 1)))],
    );
    let check = check_t_stable(&graph, &lin).unwrap();
    pass &= !check.stable && check.witness.is_some();
    Line {
        id: 8,
        pass,
        note: "stability lab: Fredholm C3 = 0, bound = 2, V(X0) T-stable with ord 0 <= 2, \
               graph-of-z ideal rejected with a witness"
            .into(),
    }
}

/// Criterion 9: explicit constants and theoretical K vs fitted K.
fn criterion_9() -> Line {
    let mut pass = c_n(1) == BigInt::from(26244) && c_n(2) == BigInt::from(8589934592u64);

    for (mu, nu0) in [(2, 2), (3, 2), (2, 7)] {
        let rho = rho_sequence(1, &r(mu), &r(nu0), &BigRational::one(), 4);
        for i in 1..4 {
            pass &= rho[i].partial_cmp_mag(&rho[i + 1]) == std::cmp::Ordering::Less;
        }
    }

    let mut k_checks = Vec::new();
    let fred = vec![fixtures::fredholm_series(400)];
    let exp = fixtures::solve_exp(128).unwrap();
    for (name, f, m_max, n_max, prec) in
        [("fredholm", &fred, 4, 4, 400), ("exp", &exp, 3, 3, 128)]
    {
        let grid = run_audit(&f_tilde(f), (0, m_max), (0, n_max), prec).unwrap();
        let sheet = constants_sheet(
            1,
            &BigRational::one(),
            &BigRational::one(),
            &r(0),
            &r(2),
            Some(f),
            Some(&BigRational::one()),
            Some(&BigRational::one()),
            Some(&BigRational::one()),
        )
        .unwrap();
        let k = sheet.k.unwrap();
        for hat in [grid.k_hat_zorin, grid.k_hat_nesterenko] {
            let hat = hat.unwrap();
            pass &= k.ge_rational(&hat);
            k_checks.push(format!("{name}: K >= {hat}"));
        }
    }
    Line {
        id: 9,
        pass,
        note: format!(
            "constants: c_1 = 26244, c_2 = 8589934592, rho strictly increasing from rho_1, \
             theoretical K dominates fitted K ({})",
            k_checks.join(", ")
        ),
    }
}

/// Criterion 10: wedge-order metric properties and the Liouville checker.
fn criterion_10() -> Line {
    let prec = 24;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut pass = true;
    for _ in 0..50 {
        let mk = |rng: &mut ChaCha8Rng| {
            let mut v = vec![Coeff::zero(q()); prec];
            v[0] = Coeff::from_integer(q(), rng.gen_range(1..5));
            for c in v.iter_mut().skip(1).take(8) {
                *c = Coeff::from_integer(q(), rng.gen_range(-3..=3));
            }
            PowerSeries::new(q(), v)
        };
        let x = vec![mk(&mut rng), mk(&mut rng)];
        let y = vec![mk(&mut rng), mk(&mut rng)];
        let px = ProjPoint::Projective(x.clone());
        let py = ProjPoint::Projective(y.clone());
        pass &= wedge_ord(&px, &py).unwrap() == wedge_ord(&py, &px).unwrap();
        // Unit scaling: multiply one system by the unit 1 + z.
        let u = series(&[1, 1], prec);
        let scaled = ProjPoint::Projective(x.iter().map(|s| s.mul(&u).unwrap()).collect());
        pass &= wedge_ord(&scaled, &py).unwrap() == wedge_ord(&px, &py).unwrap();
        pass &= wedge_ord(&px, &px).unwrap() == OrdResult::AtLeast(prec);
    }

    // Bundled Liouville fixtures with correctly declared (degree, height).
    let q1 = parse_zform("X1 - X0", 1, q()).unwrap();
    let z1 = ZeroCycle {
        points: vec![(
            ProjPoint::Projective(vec![series(&[1], prec), series(&[1, 1], prec)]),
            1,
        )],
        degree: 1,
        height: 1,
    };
    let q2 = parse_zform("X0", 1, q()).unwrap();
    let z2 = ZeroCycle {
        points: vec![(
            ProjPoint::Projective(vec![series(&[1], prec), series(&[0, 1], prec)]),
            1,
        )],
        degree: 1,
        height: 1,
    };
    for (qq, zz) in [(&q1, &z1), (&q2, &z2)] {
        pass &= liouville_check(qq, zz).unwrap().ok;
    }
    Line {
        id: 10,
        pass,
        note: "metric properties: wedge ord symmetric, unit-scaling invariant, self-ord \
               AtLeast(prec) over 50 pairs; Liouville checker passes on bundled fixtures"
            .into(),
    }
}

#[test]
fn acceptance() {
    let lines = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    for l in &lines {
        println!(
            "criterion {:2}: {}  {}",
            l.id,
            if l.pass { "PASS" } else { "FAIL" },
            l.note
        );
    }
    // Criterion 1 carries a known, structural floor-bound failure for n = 1;
    // everything else must be green.
    let failing: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert_eq!(
        failing,
        vec![1],
        "unexpected acceptance outcome; see the printed table"
    );
}
