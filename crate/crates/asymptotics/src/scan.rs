use std::f64::consts::PI;

use graph_core::Multigraph;
use num_complex::Complex64;
use rayon::prelude::*;
use symanzik::MomentumAssignment;

use crate::fixture::EdgeParameters;
use crate::height::{tropical_height, HeightData};
use crate::AsymptoticsError;

/// t₀, t₀r, t₀r², … up to and including the first point ≥ t_max.
pub fn geometric_grid(t0: f64, t_max: f64, ratio: f64) -> Vec<f64> {
    assert!(t0 > 0.0 && ratio > 1.0);
    let mut out = vec![t0];
    while *out.last().unwrap() < t_max {
        out.push(out.last().unwrap() * ratio);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayProfile {
    pub direction: Vec<f64>,
    pub t: Vec<f64>,
    /// h(t·direction) = height − tropical term.
    pub remainder: Vec<f64>,
    /// |h(t_k) − h(t_{k−1})|.
    pub increments: Vec<f64>,
}

impl RayProfile {
    pub fn final_increment(&self) -> f64 {
        self.increments.last().copied().unwrap_or(0.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub sup: f64,
    pub rays: Vec<RayProfile>,
    /// Every ray's last Cauchy increment is below the tolerance.
    pub bounded: bool,
}

/// Remainder of the height against the tropical term along rays y = t·d.
/// Edge parameters of the polynomial fixtures are s_e = exp(−2π y_e).
pub fn bounded_remainder_scan(
    data: &HeightData,
    g: &Multigraph,
    p1: &MomentumAssignment,
    p2: &MomentumAssignment,
    directions: &[Vec<f64>],
    t: &[f64],
    h0: f64,
    tol: f64,
) -> Result<ScanReport, AsymptoticsError> {
    let points: Vec<(usize, f64)> = (0..directions.len()).flat_map(|r| t.iter().map(move |&x| (r, x))).collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(r, x)| {
            let y: Vec<f64> = directions[r].iter().map(|d| d * x).collect();
            let s: Vec<Complex64> = y.iter().map(|v| Complex64::new((-2.0 * PI * v).exp(), 0.0)).collect();
            let ep = EdgeParameters::with_offset(y.clone(), h0);
            let shifted: Vec<f64> = y.iter().map(|v| v - h0).collect();
            Ok(data.eval(&ep, &s)? - tropical_height(g, p1, p2, &shifted)?)
        })
        .collect::<Result<_, AsymptoticsError>>()?;
    let rays: Vec<RayProfile> = directions
        .iter()
        .enumerate()
        .map(|(r, d)| {
            let remainder = values[r * t.len()..(r + 1) * t.len()].to_vec();
            let increments = remainder.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
            RayProfile { direction: d.clone(), t: t.to_vec(), remainder, increments }
        })
        .collect();
    let sup = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let bounded = sup.is_finite() && rays.iter().all(|r| r.final_increment() < tol);
    Ok(ScanReport { sup, rays, bounded })
}
