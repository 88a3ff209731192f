use std::f64::consts::PI;

use analytic_lab::*;
use graph_core::corpus::random_connected;
use poly_core::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symanzik::sample::{random_momenta, random_space};
use symanzik::{symanzik_ratio_bilinear, MinkowskiSpace};

fn quadruple(rng: &mut ChaCha8Rng) -> [Complex64; 4] {
    loop {
        let z: Vec<Complex64> =
            (0..4).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let sep = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).map(|(i, j)| (z[i] - z[j]).norm());
        if sep.fold(f64::INFINITY, f64::min) > 0.05 {
            return [z[0], z[1], z[2], z[3]];
        }
    }
}

fn dipole(a: Complex64, b: Complex64) -> Vec<Charge<SpherePoint>> {
    vec![Charge::new(SpherePoint::Finite(a), vec![1.0]), Charge::new(SpherePoint::Finite(b), vec![-1.0])]
}

/// g + f(a) + f(b) for a periodic f on the torus.
struct Shifted<'a> {
    base: &'a TorusGreen,
    amp: [f64; 3],
}

impl Shifted<'_> {
    fn f(&self, z: &Complex64) -> f64 {
        let p = TorusPoint::from_complex(*z, self.base.modulus());
        self.amp[0] * (2.0 * PI * p.x).sin() + self.amp[1] * (2.0 * PI * p.y).cos() + self.amp[2]
    }
}

impl GreenFunction for Shifted<'_> {
    type Point = Complex64;
    fn green(&self, a: &Complex64, b: &Complex64) -> Result<f64, LabError> {
        Ok(self.base.green(*a, *b)? + self.f(a) + self.f(b))
    }
    fn diagonal(&self, x: &Complex64, scale: f64) -> f64 {
        self.base.diagonal(scale) + 2.0 * self.f(x)
    }
}

fn random_torus(rng: &mut ChaCha8Rng) -> TorusGreen {
    let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.6..2.5));
    TorusGreen::new(TorusModulus::new(tau).unwrap()).unwrap()
}

fn torus_divisor(rng: &mut ChaCha8Rng, g: &TorusGreen, n: usize, d: usize) -> Vec<Charge<Complex64>> {
    let tau = g.modulus().tau();
    let mut out: Vec<Charge<Complex64>> = (0..n)
        .map(|_| {
            let z = tau * rng.gen_range(0.0..1.0) + rng.gen_range(0.0..1.0);
            Charge::new(z, (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect())
        })
        .collect();
    let total: Vec<f64> = (0..d).map(|a| out.iter().map(|c| c.momentum[a]).sum()).collect();
    for (m, t) in out[0].momentum.iter_mut().zip(total) {
        *m -= t;
    }
    out
}

/// Massless 2 → 2 momenta k₁ = E(1, n), k₂ = E(1, −n), k₃ = −E(1, m), k₄ = −E(1, −m).
fn massless_scattering(rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let unit = |rng: &mut ChaCha8Rng| {
        let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
        v.into_iter().map(|x| x / n).collect::<Vec<f64>>()
    };
    let e = rng.gen_range(0.5..3.0);
    let (n, m) = (unit(rng), unit(rng));
    let four = |s: f64, v: &[f64], t: f64| {
        let mut p = vec![s * e];
        p.extend(v.iter().map(|x| t * e * x));
        p
    };
    vec![four(1.0, &n, 1.0), four(1.0, &n, -1.0), four(-1.0, &m, -1.0), four(-1.0, &m, 1.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sphere_routes_and_cross_ratio(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = quadruple(&mut rng);
        let log_cr = cross_ratio(z).unwrap().norm().ln();
        let integral = residue_integral(z).unwrap();
        prop_assert!((integral - log_cr).abs() <= 1e-10, "{} vs {}", integral, log_cr);
        // Green functions with a −log pole pair to the reciprocal cross-ratio
        let green = height_pairing_surface(&dipole(z[0], z[1]), &dipole(z[2], z[3]), &[vec![1.0]], &SphereGreen).unwrap();
        prop_assert!((green + log_cr).abs() <= 1e-10, "{} vs {}", green, -log_cr);
    }

    #[test]
    fn sphere_pairing_is_mobius_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = quadruple(&mut rng);
        let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let m = [c(), c(), c(), c()];
        prop_assume!((m[0] * m[3] - m[1] * m[2]).norm() > 0.1);
        let moved: Vec<SpherePoint> = z.iter().map(|&w| SpherePoint::Finite(w).mobius(m)).collect();
        prop_assume!(moved.iter().all(|p| matches!(p, SpherePoint::Finite(w) if w.norm() < 1e3)));
        let pts = |p: &[SpherePoint], k: usize| vec![Charge::new(p[k], vec![1.0]), Charge::new(p[k + 1], vec![-1.0])];
        let before: Vec<SpherePoint> = z.iter().map(|&w| SpherePoint::Finite(w)).collect();
        let h0 = height_pairing_surface(&pts(&before, 0), &pts(&before, 2), &[vec![1.0]], &SphereGreen).unwrap();
        let h1 = height_pairing_surface(&pts(&moved, 0), &pts(&moved, 2), &[vec![1.0]], &SphereGreen).unwrap();
        prop_assert!((h0 - h1).abs() <= 1e-10 * (1.0 + h0.abs()), "{} vs {}", h0, h1);
    }

    #[test]
    fn torus_green_symmetry_and_periods(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_torus(&mut rng);
        let tau = g.modulus().tau();
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..2.0));
        let w = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..2.0));
        prop_assume!(lattice_distance(z - w, g.modulus()) > 1e-3);
        let v = g.green(z, w).unwrap();
        prop_assert!((v - g.green(w, z).unwrap()).abs() <= 1e-12 * (1.0 + v.abs()));
        prop_assert!((v - g.green(z + 1.0, w).unwrap()).abs() <= 1e-10);
        prop_assert!((v - g.green(z + tau, w).unwrap()).abs() <= 1e-10);
        let th = g.modulus().theta1(z).unwrap();
        let f = (Complex64::new(0.0, -PI) * tau - Complex64::new(0.0, 2.0 * PI) * z).exp();
        prop_assert!((g.modulus().theta1(z + 1.0).unwrap() + th).norm() <= 1e-10 * th.norm());
        prop_assert!((g.modulus().theta1(z + tau).unwrap() + f * th).norm() <= 1e-10 * (f * th).norm());
    }

    #[test]
    fn torus_pairing_symmetric_and_metric_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_torus(&mut rng);
        let d = rng.gen_range(1..=3);
        let form: Vec<Vec<f64>> = (0..d).map(|a| (0..d).map(|b| if a == b { if a == 0 { 1.0 } else { -1.0 } } else { 0.0 }).collect()).collect();
        let a = torus_divisor(&mut rng, &g, 3, d);
        let b = torus_divisor(&mut rng, &g, 3, d);
        let ab = height_pairing_surface(&a, &b, &form, &g).unwrap();
        let ba = height_pairing_surface(&b, &a, &form, &g).unwrap();
        prop_assert!((ab - ba).abs() <= 1e-12 * (1.0 + ab.abs()));
        let shifted = Shifted { base: &g, amp: [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)] };
        let moved = height_pairing_surface(&a, &b, &form, &shifted).unwrap();
        prop_assert!((moved - ab).abs() <= 1e-12 * (1.0 + ab.abs()), "{} vs {}", moved, ab);
    }

    #[test]
    fn on_shell_self_height_ignores_the_metric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_torus(&mut rng);
        let tau = g.modulus().tau();
        let form = MinkowskiSpace::mostly_minus(4).form_f64();
        let charges: Vec<Charge<Complex64>> = massless_scattering(&mut rng)
            .into_iter()
            .map(|p| Charge::new(tau * rng.gen_range(0.0..1.0) + rng.gen_range(0.0..1.0), p))
            .collect();
        prop_assert!(on_shell(&charges, &form, 1e-12));
        let lam = 10f64.powf(rng.gen_range(-3.0..3.0));
        let h1 = regularized_self_height(&charges, &form, &g, 1.0).unwrap();
        let h2 = regularized_self_height(&charges, &form, &g, lam).unwrap();
        prop_assert!((h1 - h2).abs() <= 1e-10, "{} vs {}", h1, h2);
        let shifted = Shifted { base: &g, amp: [1.3, -0.4, 2.0] };
        let h3 = regularized_self_height(&charges, &form, &shifted, 1.0).unwrap();
        prop_assert!((h1 - h3).abs() <= 1e-10 * (1.0 + h1.abs()), "{} vs {}", h1, h3);
    }

    #[test]
    fn metric_graph_green_is_the_symanzik_ratio(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(n - 1..=7);
        let g = random_connected(&mut rng, n, m);
        let d = rng.gen_range(1..=3);
        let space = random_space(&mut rng, d);
        let p1 = random_momenta(&mut rng, &space, n);
        let p2 = random_momenta(&mut rng, &space, n);
        let y: Vec<f64> = (0..g.edge_count()).map(|_| 10f64.powf(rng.gen_range(-1.0..1.0))).collect();
        let v = metric_graph_green(&g, &y, &p1, &p2).unwrap();
        let s = symanzik_ratio_bilinear(&g, &p1, &p2, &y).unwrap();
        prop_assert!((v - s).abs() <= 1e-10 * (1.0 + s.abs()), "{} vs {}", v, s);
    }
}

#[test]
fn off_shell_self_height_moves_with_the_metric() {
    let g = TorusGreen::new(TorusModulus::new(Complex64::new(0.1, 1.3)).unwrap()).unwrap();
    let a = vec![Charge::new(Complex64::new(0.2, 0.1), vec![1.0]), Charge::new(Complex64::new(0.7, 0.8), vec![-1.0])];
    let h1 = regularized_self_height(&a, &[vec![1.0]], &g, 1.0).unwrap();
    let h2 = regularized_self_height(&a, &[vec![1.0]], &g, 2.0).unwrap();
    // Σ ⟨p_i, p_i⟩ log λ = 2 log 2
    assert!((h2 - h1 - 2.0 * 2f64.ln()).abs() < 1e-12);
}

#[test]
fn sphere_reference_quadruple() {
    let c = |x: f64| Complex64::new(x, 0.0);
    let z = [c(0.0), c(1.0), c(2.0), c(4.0)];
    assert!((residue_integral(z).unwrap() - 1.5f64.ln()).abs() < 1e-12);
    let green = height_pairing_surface(&dipole(z[0], z[1]), &dipole(z[2], z[3]), &[vec![1.0]], &SphereGreen).unwrap();
    assert!((green - (2.0f64 / 3.0).ln()).abs() < 1e-12);
}

#[test]
fn separable_terms_cancel_on_the_sphere() {
    // the chordal Green function differs from −log|z − w| by f(z) + f(w)
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let z = quadruple(&mut rng);
        let flat = -((z[0] - z[2]).norm() * (z[1] - z[3]).norm() / ((z[0] - z[3]).norm() * (z[1] - z[2]).norm())).ln();
        let chordal = height_pairing_surface(&dipole(z[0], z[1]), &dipole(z[2], z[3]), &[vec![1.0]], &SphereGreen).unwrap();
        assert!((flat - chordal).abs() < 1e-12);
    }
}

#[test]
fn discrete_laplacian_off_the_pole() {
    let g = TorusGreen::new(TorusModulus::new(Complex64::new(0.2, 1.6)).unwrap()).unwrap();
    let (coarse, used) = g.laplacian_residual(128, 0.6).unwrap();
    assert!(coarse <= 1e-3 && used > 1000, "{coarse} on {used} points");
    // second-order stencil: the residual quarters when h halves
    let (fine, _) = g.laplacian_residual(256, 0.6).unwrap();
    assert!((coarse / fine - 4.0).abs() < 0.2, "{coarse} {fine}");
}

#[test]
fn normalization_by_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let g = random_torus(&mut rng);
        let z0 = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let r = g.normalization_residual(z0, (rng.gen_range(0.2..0.8), rng.gen_range(0.2..0.8))).unwrap();
        assert!(r.abs() <= 1e-6, "{r}");
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn scalar(x: f64, c: f64, p: i64) -> MarkedCharge {
    MarkedCharge { x, c, momentum: vec![q(p, 1)] }
}

#[test]
fn disjoint_four_point_limit() {
    let fam = DegenerationFamily {
        y_total: 1.0,
        space: MinkowskiSpace::scalar(),
        a: vec![scalar(0.0, 0.0, 1), scalar(0.0, 0.5, -1)],
        b: Some(vec![scalar(0.0, 0.125, 1), scalar(0.0, 0.375, -1)]),
        schedule: DEFAULT_SCHEDULE.to_vec(),
    };
    let rep = fam.run().unwrap();
    // unit current from 0 to ½ on a unit cycle: potential drop 1/8 between ⅛ and ⅜
    assert!((rep.prediction - 0.125).abs() < 1e-12);
    assert!(rep.rel_error <= 1e-3, "{rep:?}");
}

#[test]
fn massless_self_pairing_limit() {
    let (s, c) = (q(3, 5), q(4, 5));
    let one = || q(1, 1);
    let zero = || q(0, 1);
    let mk = |x, cc, p: Vec<Rational>| MarkedCharge { x, c: cc, momentum: p };
    let fam = DegenerationFamily {
        y_total: 1.0,
        space: MinkowskiSpace::mostly_minus(4),
        a: vec![
            mk(0.1, 0.0, vec![one(), zero(), zero(), one()]),
            mk(0.3, 0.25, vec![one(), zero(), zero(), -one()]),
            mk(0.6, 0.5, vec![-one(), -s.clone(), zero(), -c.clone()]),
            mk(0.2, 0.75, vec![-one(), s, zero(), c]),
        ],
        b: None,
        schedule: DEFAULT_SCHEDULE.to_vec(),
    };
    assert!(fam.on_shell());
    let rep = fam.run().unwrap();
    assert!(rep.rel_error <= 1e-3, "{rep:?}");
    assert!(!rep.normalization_dependent());
}

#[test]
fn single_component_limit_vanishes() {
    let fam = DegenerationFamily {
        y_total: 1.0,
        space: MinkowskiSpace::mostly_minus(2),
        a: vec![
            MarkedCharge { x: 0.1, c: 0.0, momentum: vec![q(1, 1), q(1, 1)] },
            MarkedCharge { x: 0.45, c: 0.0, momentum: vec![q(-1, 1), q(-1, 1)] },
        ],
        b: None,
        schedule: DEFAULT_SCHEDULE.to_vec(),
    };
    let rep = fam.run().unwrap();
    assert_eq!(rep.prediction, 0.0);
    assert!(rep.rel_error < 1e-12, "{rep:?}");
}
