//! Seeded generators for momentum data, shared by property suites.

use num_traits::Zero;
use poly_core::Rational;
use rand::Rng;

use crate::momenta::{MinkowskiSpace, MomentumAssignment};

/// Random symmetric nondegenerate form with small integer entries.
pub fn random_space<R: Rng>(rng: &mut R, d: usize) -> MinkowskiSpace {
    loop {
        let mut form = vec![vec![Rational::zero(); d]; d];
        for i in 0..d {
            for j in i..d {
                let x = Rational::from_integer(rng.gen_range(-2i64..=2).into());
                form[i][j] = x.clone();
                form[j][i] = x;
            }
        }
        if let Ok(s) = MinkowskiSpace::new(form) {
            return s;
        }
    }
}

/// Conserved momenta with entries k/m, |k| ≤ 5, 1 ≤ m ≤ 3.
pub fn random_momenta<R: Rng>(rng: &mut R, space: &MinkowskiSpace, vertices: usize) -> MomentumAssignment {
    let d = space.dim();
    let mut vs: Vec<Vec<Rational>> = (0..vertices.saturating_sub(1))
        .map(|_| {
            (0..d)
                .map(|_| Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into()))
                .collect()
        })
        .collect();
    let mut last = vec![Rational::zero(); d];
    for v in &vs {
        for (t, x) in last.iter_mut().zip(v) {
            *t -= x;
        }
    }
    if vertices > 0 {
        vs.push(last);
    }
    MomentumAssignment::new(space.clone(), vs).expect("conserved by construction")
}

/// Random unimodular h×h matrix: a product of elementary moves and sign flips.
pub fn random_unimodular<R: Rng>(rng: &mut R, h: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..h).map(|i| (0..h).map(|j| i64::from(i == j)).collect()).collect();
    if h == 0 {
        return u;
    }
    for _ in 0..h + 1 {
        let (i, j) = (rng.gen_range(0..h), rng.gen_range(0..h));
        if i == j {
            if rng.gen_bool(0.3) {
                u[i].iter_mut().for_each(|x| *x = -*x);
            }
            continue;
        }
        let k = if rng.gen_bool(0.5) { 1 } else { -1 };
        let row = u[j].clone();
        for (x, y) in u[i].iter_mut().zip(row) {
            *x += k * y;
        }
    }
    if rng.gen_bool(0.5) && h > 1 {
        u.swap(0, h - 1);
    }
    u
}
