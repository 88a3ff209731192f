use analytic_lab::{
    cross_ratio, height_pairing_surface, residue_integral, Charge, Complex64, SphereGreen, SpherePoint, TorusGreen,
    TorusModulus,
};
use graph_core::json::{array, index, parse_text};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::args::{SphereArgs, TorusGreenArgs, TorusLimitArgs};
use crate::input::{complex, complex_to_value, family, read_json};
use crate::{InputError, Output, Report};

pub fn torus_limit(a: &TorusLimitArgs) -> Result<Report, InputError> {
    let file = a.family.display().to_string();
    let mut fam = family(&read_json(&a.family)?, "").map_err(|e| e.in_file(&file))?;
    if let Some(s) = &a.schedule {
        fam.schedule = s.0.clone();
    }
    let r = fam.run().map_err(|e| InputError::new("", e).in_file(&file))?;
    let mut failures = Vec::new();
    if a.check && !(r.rel_error <= a.tol) {
        failures.push(format!("relative error {:e} exceeds {:e}", r.rel_error, a.tol));
    }
    let mut notes = Vec::new();
    if r.normalization_dependent() {
        notes.push("off-shell self-pairing: the value depends on the normalization of the distance".into());
    }
    Ok(Report {
        output: Output::Json(json!({
            "estimate": r.estimate,
            "prediction": r.prediction,
            "rel_error": r.rel_error,
            "slope": r.slope,
            "samples": r.samples,
            "on_shell": r.on_shell,
            "normalization_dependent": r.normalization_dependent(),
        })),
        failures,
        notes,
    })
}

pub fn sphere_crossratio(a: &SphereArgs) -> Result<Report, InputError> {
    let v = parse_text(&a.points).map_err(|e| InputError::new("--points", e.message))?;
    let xs = array(&v, "--points")?;
    if xs.len() != 4 {
        return Err(InputError::new("--points", format!("expected 4 points, got {}", xs.len())));
    }
    let mut z = [Complex64::new(0.0, 0.0); 4];
    for (k, x) in xs.iter().enumerate() {
        z[k] = complex(x, &index("--points", k))?;
    }
    let err = |e| InputError::new("--points", e);
    let cr = cross_ratio(z).map_err(err)?;
    let integral = residue_integral(z).map_err(err)?;
    let charge = |p: Complex64, q: f64| Charge::new(SpherePoint::Finite(p), vec![q]);
    let green = height_pairing_surface(
        &[charge(z[0], 1.0), charge(z[1], -1.0)],
        &[charge(z[2], 1.0), charge(z[3], -1.0)],
        &[vec![1.0]],
        &SphereGreen,
    )
    .map_err(err)?;
    let log_cr = cr.norm().ln();
    let mut failures = Vec::new();
    if a.check {
        if !((integral - log_cr).abs() <= a.tol) {
            failures.push(format!("residue integral {integral} differs from log|cross-ratio| {log_cr}"));
        }
        if !((green + log_cr).abs() <= a.tol) {
            failures.push(format!("Green pairing {green} differs from -log|cross-ratio| {}", -log_cr));
        }
    }
    Ok(Report {
        output: Output::Json(json!({
            "cross_ratio": complex_to_value(cr),
            "log_abs_cross_ratio": log_cr,
            "residue_integral": integral,
            "green_pairing": green,
        })),
        failures,
        notes: Vec::new(),
    })
}

fn parse_tau(s: &str) -> Result<Complex64, InputError> {
    let bad = || InputError::new("--tau", format!("expected `re,im`, got `{s}`"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

/// Periodicity on seeded pairs, normalization at the origin and two other
/// points, and the stencil Laplacian.
pub fn torus_green(a: &TorusGreenArgs) -> Result<Report, InputError> {
    let tau = parse_tau(&a.tau)?;
    let lab = |e| InputError::new("--tau", e);
    let g = TorusGreen::new(TorusModulus::new(tau).map_err(lab)?).map_err(lab)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut periodicity = 0.0f64;
    for _ in 0..16 {
        let mut pt = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0) * tau.im);
        let (z, w) = (pt(), pt());
        let v = match g.green(z, w) {
            Ok(v) => v,
            Err(_) => continue,
        };
        for shift in [Complex64::new(1.0, 0.0), tau, tau * -2.0 + 3.0] {
            periodicity = periodicity.max((g.green(z + shift, w).map_err(lab)? - v).abs());
        }
    }
    let (quadrature, closed) = g.constant_routes();
    let mut normalization = (quadrature - g.constant()).abs();
    for (z0, at) in [(Complex64::new(0.3, 0.2 * tau.im), (0.37, 0.61)), (Complex64::new(-0.1, 0.7 * tau.im), (0.8, 0.15))] {
        normalization = normalization.max(g.normalization_residual(z0, at).map_err(lab)?.abs());
    }
    let (pde, used) = g.laplacian_residual(a.grid as usize, a.exclusion).map_err(lab)?;
    let mut failures = Vec::new();
    if a.check {
        for (name, v, tol) in [("periodicity", periodicity, 1e-10), ("normalization", normalization, 1e-6), ("laplacian", pde, 1e-3)] {
            if !(v <= tol) {
                failures.push(format!("{name} residual {v:e} exceeds {tol:e}"));
            }
        }
    }
    Ok(Report {
        output: Output::Json(json!({
            "tau": complex_to_value(tau),
            "constant": g.constant(),
            "constant_routes": {"quadrature": quadrature, "closed_form": closed},
            "periodicity_residual": periodicity,
            "normalization_residual": normalization,
            "laplacian": {"grid": a.grid, "exclusion": a.exclusion, "points": used, "max_residual": pde},
        })),
        failures,
        notes: Vec::new(),
    })
}
