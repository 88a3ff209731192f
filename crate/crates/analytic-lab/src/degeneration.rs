use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use poly_core::{rational_to_f64, Rational};
use rayon::prelude::*;
use symanzik::{MinkowskiSpace, MomentumAssignment};

use crate::graph::{metric_graph_green, subdivided_cycle};
use crate::pairing::{height_pairing_surface, regularized_self_height, Charge};
use crate::theta::TorusModulus;
use crate::torus::TorusGreen;
use crate::LabError;

pub const DEFAULT_SCHEDULE: [f64; 6] = [0.1, 0.05, 0.02, 0.01, 1e-3, 1e-4];

/// A marked point z = x + c·τ carrying a momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedCharge {
    pub x: f64,
    pub c: f64,
    pub momentum: Vec<Rational>,
}

/// Tori τ(α′) = i·Y/(2πα′) with marked points at fixed fractional heights.
/// With `b` present the experiment pairs two divisors with disjoint
/// supports; without it, it takes the regularized self-pairing of `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationFamily {
    pub y_total: f64,
    pub space: MinkowskiSpace,
    pub a: Vec<MarkedCharge>,
    pub b: Option<Vec<MarkedCharge>>,
    pub schedule: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationReport {
    /// (α′, α′·H(α′)) along the schedule.
    pub samples: Vec<(f64, f64)>,
    /// Richardson extrapolation from the two smallest α′.
    pub estimate: f64,
    /// Metric-graph pairing on the subdivided cycle.
    pub prediction: f64,
    /// |α′H − prediction| at the smallest α′, relative unless the prediction vanishes.
    pub rel_error: f64,
    /// Least-squares log–log slope of |α′H − prediction| against α′ over the
    /// samples whose error is above rounding; `None` with fewer than two.
    pub slope: Option<f64>,
    /// Self-pairing mode only: all ⟨p_i, p_i⟩ = 0.
    pub on_shell: Option<bool>,
}

impl DegenerationReport {
    /// Off-shell self-heights depend on the normalization of d_μ.
    pub fn normalization_dependent(&self) -> bool {
        self.on_shell == Some(false)
    }
}

impl DegenerationFamily {
    fn validate(&self) -> Result<(), LabError> {
        if !(self.y_total > 0.0 && self.y_total.is_finite()) {
            return Err(LabError::NotPositive(self.y_total));
        }
        if self.schedule.is_empty()
            || self.schedule.iter().any(|a| !(*a > 0.0 && a.is_finite()))
            || self.schedule.windows(2).any(|w| !(w[0] > w[1]))
        {
            return Err(LabError::Schedule);
        }
        let all = self.charges();
        if all.iter().any(|m| !(m.c >= 0.0 && m.c < 1.0 && m.x.is_finite())) {
            return Err(LabError::Positions);
        }
        for m in &all {
            if m.momentum.len() != self.space.dim() {
                return Err(LabError::Dimension { expected: self.space.dim(), got: m.momentum.len() });
            }
        }
        for side in std::iter::once(&self.a).chain(self.b.as_ref()) {
            MomentumAssignment::new(self.space.clone(), side.iter().map(|m| m.momentum.clone()).collect())?;
        }
        if self.b.is_some() {
            for (i, p) in all.iter().enumerate() {
                for q in &all[i + 1..] {
                    if p.c == q.c && (p.x - q.x).rem_euclid(1.0) == 0.0 {
                        return Err(LabError::NotDistinct);
                    }
                }
            }
        }
        Ok(())
    }

    fn charges(&self) -> Vec<&MarkedCharge> {
        self.a.iter().chain(self.b.iter().flatten()).collect()
    }

    pub fn on_shell(&self) -> bool {
        self.a.iter().all(|m| self.space.pair(&m.momentum, &m.momentum).is_zero())
    }

    /// The metric-graph prediction on the cycle subdivided at the distinct c.
    pub fn prediction(&self) -> Result<f64, LabError> {
        self.validate()?;
        let mut c: Vec<f64> = self.charges().iter().map(|m| m.c).collect();
        c.sort_by(f64::total_cmp);
        c.dedup();
        let (g, y) = subdivided_cycle(&c, self.y_total)?;
        let at_vertices = |side: &[MarkedCharge]| {
            let mut v = vec![vec![Rational::zero(); self.space.dim()]; c.len()];
            for m in side {
                let k = c.iter().position(|x| *x == m.c).expect("collected above");
                for (s, p) in v[k].iter_mut().zip(&m.momentum) {
                    *s += p;
                }
            }
            MomentumAssignment::new(self.space.clone(), v)
        };
        let pa = at_vertices(&self.a)?;
        let pb = match &self.b {
            Some(b) => at_vertices(b)?,
            None => pa.clone(),
        };
        metric_graph_green(&g, &y, &pa, &pb)
    }

    /// α′ times the height (or regularized self-height) on τ(α′).
    pub fn sample(&self, alpha: f64) -> Result<f64, LabError> {
        let tau = Complex64::new(0.0, self.y_total / (2.0 * PI * alpha));
        let green = TorusGreen::new(TorusModulus::new(tau)?)?;
        let lift = |side: &[MarkedCharge]| -> Vec<Charge<Complex64>> {
            side.iter()
                .map(|m| Charge::new(tau * m.c + m.x, m.momentum.iter().map(rational_to_f64).collect()))
                .collect()
        };
        let form = self.space.form_f64();
        let a = lift(&self.a);
        let h = match &self.b {
            Some(b) => height_pairing_surface(&a, &lift(b), &form, &green)?,
            None => regularized_self_height(&a, &form, &green, 1.0)?,
        };
        Ok(alpha * h)
    }

    pub fn run(&self) -> Result<DegenerationReport, LabError> {
        let prediction = self.prediction()?;
        let values: Vec<f64> = self.schedule.par_iter().map(|&a| self.sample(a)).collect::<Result<_, _>>()?;
        let samples: Vec<(f64, f64)> = self.schedule.iter().copied().zip(values).collect();
        let (a1, v1) = *samples.last().expect("non-empty schedule");
        let estimate = match samples.len() {
            1 => v1,
            n => {
                let (a2, v2) = samples[n - 2];
                (a2 * v1 - a1 * v2) / (a2 - a1)
            }
        };
        let err = (v1 - prediction).abs();
        let rel_error = if prediction.abs() > 1e-12 { err / prediction.abs() } else { err };
        let floor = 1e-12 * prediction.abs().max(1.0);
        let pts: Vec<(f64, f64)> = samples
            .iter()
            .filter(|(_, v)| (v - prediction).abs() > floor)
            .map(|(a, v)| (a.ln(), (v - prediction).abs().ln()))
            .collect();
        let slope = (pts.len() >= 2).then(|| {
            let n = pts.len() as f64;
            let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
            let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
            sxy / sxx
        });
        let on_shell = self.b.is_none().then(|| self.on_shell());
        Ok(DegenerationReport { samples, estimate, prediction, rel_error, slope, on_shell })
    }
}
