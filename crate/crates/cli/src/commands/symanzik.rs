use poly_core::MultiPoly;
use serde_json::json;
use symanzik::{
    first_symanzik, first_symanzik_trees, resistance_oracle, second_symanzik, second_symanzik_forests,
    symanzik_ratio_eval, MomentumAssignment, SymanzikError,
};

use super::close;
use crate::args::{Method, Polynomial, SymanzikArgs};
use crate::input::{edge_lengths, GraphInput};
use crate::{InputError, Output, Report};

fn methods(which: Polynomial) -> &'static [Method] {
    match which {
        Polynomial::First => &[Method::Det, Method::Trees],
        Polynomial::Second => &[Method::Bordered, Method::Forests],
        Polynomial::Ratio => &[Method::Schur, Method::Oracle, Method::Polys],
    }
}

fn name(m: Method) -> &'static str {
    match m {
        Method::Trees => "trees",
        Method::Det => "det",
        Method::Bordered => "bordered",
        Method::Forests => "forests",
        Method::Schur => "schur",
        Method::Oracle => "oracle",
        Method::Polys => "polys",
    }
}

fn poly(input: &GraphInput, m: Method, p: &MomentumAssignment) -> Result<MultiPoly, SymanzikError> {
    let g = &input.graph;
    match m {
        Method::Det => first_symanzik(g),
        Method::Trees => first_symanzik_trees(g),
        Method::Bordered => second_symanzik(g, p),
        Method::Forests => second_symanzik_forests(g, p),
        _ => unreachable!("not a polynomial method"),
    }
}

fn ratio(input: &GraphInput, m: Method, p: &MomentumAssignment, y: &[f64]) -> Result<f64, SymanzikError> {
    let g = &input.graph;
    match m {
        Method::Schur => symanzik_ratio_eval(g, p, y),
        Method::Oracle => resistance_oracle(g, p, y),
        Method::Polys => Ok(second_symanzik(g, p)?.eval(y)? / first_symanzik(g)?.eval(y)?),
        _ => unreachable!("not a ratio method"),
    }
}

pub fn run(a: &SymanzikArgs) -> Result<Report, InputError> {
    let file = a.graph.display().to_string();
    let input = GraphInput::load(&a.graph)?;
    let fail = |e: SymanzikError| InputError::new("", e).in_file(&file);
    let allowed = methods(a.which);
    let method = a.method.unwrap_or(allowed[0]);
    if !allowed.contains(&method) {
        let names: Vec<&str> = allowed.iter().map(|m| name(*m)).collect();
        return Err(InputError::new("--method", format!("`{}` does not apply here; use one of {}", name(method), names.join(", "))));
    }
    let p = match a.which {
        Polynomial::First => MomentumAssignment::zero(input.space.clone(), input.graph.vertex_count()),
        _ => input.vertex_momenta().map_err(|e| e.in_file(&file))?,
    };
    let others: Vec<Method> = if a.check { allowed.iter().copied().filter(|m| *m != method).collect() } else { Vec::new() };
    let mut failures = Vec::new();
    let output = if a.which == Polynomial::Ratio {
        let y = edge_lengths(a.y.as_deref(), &input.graph)?;
        let v = ratio(&input, method, &p, &y).map_err(fail)?;
        for m in others {
            let w = ratio(&input, m, &p, &y).map_err(fail)?;
            if !close(v, w, a.tol) {
                failures.push(format!("ratio: {} = {v:e}, {} = {w:e}, difference {:e}", name(method), name(m), (v - w).abs()));
            }
        }
        Output::Json(json!(v))
    } else {
        let v = poly(&input, method, &p).map_err(fail)?;
        for m in others {
            let w = poly(&input, m, &p).map_err(fail)?;
            if v != w {
                failures.push(format!("{}: {v}\n{}: {w}\ndifference: {}", name(method), name(m), v.sub(&w).map_err(|e| fail(e.into()))?));
            }
        }
        Output::Text(v.to_string())
    };
    Ok(Report { output, failures, notes: Vec::new() })
}
