use serde_json::json;

use crate::args::CurveArgs;
use crate::input::GraphInput;
use crate::{InputError, Output, Report};

pub fn stability(a: &CurveArgs) -> Result<Report, InputError> {
    let file = a.graph.display().to_string();
    let input = GraphInput::load(&a.graph)?;
    let curve = input.curve(!a.unmarked).map_err(|e| e.in_file(&file))?;
    let report = curve.is_stable(!a.unmarked);
    let violations: Vec<_> = report.violations.iter().map(|v| json!({"vertex": v.vertex, "value": v.value})).collect();
    let mut notes = Vec::new();
    if curve.outside_unmarked_scope() {
        notes.push("unmarked curve of arithmetic genus below 2: outside the unmarked degeneration setting".into());
    }
    Ok(Report {
        output: Output::Json(json!({
            "stable": report.stable,
            "violations": violations,
            "arithmetic_genus": curve.arithmetic_genus(),
            "markings": curve.markings().len(),
            "outside_unmarked_scope": curve.outside_unmarked_scope(),
        })),
        failures: Vec::new(),
        notes,
    })
}

pub fn dimensions(a: &CurveArgs) -> Result<Report, InputError> {
    let file = a.graph.display().to_string();
    let input = GraphInput::load(&a.graph)?;
    let curve = input.curve(!a.unmarked).map_err(|e| e.in_file(&file))?;
    let d = curve.deformation_dimensions(!a.unmarked).map_err(|e| InputError::new("vertices", e).in_file(&file))?;
    Ok(Report::new(Output::Json(json!({
        "total": d.total,
        "equisingular": d.equisingular,
        "boundary_divisors": d.boundary_divisors,
    }))))
}
