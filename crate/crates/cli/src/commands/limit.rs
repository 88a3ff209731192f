use asymptotics::{limit_along_segment, HeightData, DEFAULT_SCHEDULE};
use graph_core::json::{object, only_keys, required};
use serde_json::json;

use crate::args::LimitArgs;
use crate::input::{holomorphic_fixture, monodromy_fixture, read_json, sections, segment, GraphInput};
use crate::{InputError, Output, Report};

pub fn eval(a: &LimitArgs) -> Result<Report, InputError> {
    let ffile = a.fixture.display().to_string();
    let sfile = a.segment.display().to_string();
    let input = GraphInput::load(&a.graph)?;
    let fv = read_json(&a.fixture)?;
    let (fix, psi0) = (|| {
        let o = object(&fv, "")?;
        only_keys(o, "", &["psi0", "crossings", "sections", "genus"])?;
        let genus = match o.get("genus") {
            Some(g) => Some(graph_core::json::uint(g, "genus")? as usize),
            None => None,
        };
        let secs = sections(required(o, "", "sections")?, "sections", &input)?;
        let fix = monodromy_fixture(&input, required(o, "", "crossings")?, "crossings", secs, genus)?;
        let psi0 = holomorphic_fixture(required(o, "", "psi0")?, "psi0")?;
        Ok::<_, InputError>((fix, psi0))
    })()
    .map_err(|e| e.in_file(&ffile))?;
    let seg = segment(&read_json(&a.segment)?, "").map_err(|e| e.in_file(&sfile))?;
    let data = HeightData::from_monodromy(&fix, &psi0).map_err(|e| InputError::new("psi0", e).in_file(&ffile))?;
    let p1 = fix.restricted(1).map_err(|e| InputError::new("sections", e).in_file(&ffile))?;
    let p2 = fix.restricted(2).map_err(|e| InputError::new("sections", e).in_file(&ffile))?;
    let schedule = a.schedule.as_ref().map_or(DEFAULT_SCHEDULE.to_vec(), |s| s.0.clone());
    let r = limit_along_segment(&seg, &fix.graph, &p1, &p2, &data, &schedule)
        .map_err(|e| InputError::new("", e).in_file(&sfile))?;
    let mut failures = Vec::new();
    if a.check && !(r.rel_error <= a.tol) {
        failures.push(format!(
            "relative error {:e} exceeds {:e} (estimate {}, prediction {})",
            r.rel_error, a.tol, r.estimate, r.prediction
        ));
    }
    Ok(Report {
        output: Output::Json(json!({
            "estimate": r.estimate,
            "prediction": r.prediction,
            "rel_error": r.rel_error,
            "slope": r.slope,
            "samples": r.samples,
        })),
        failures,
        notes: Vec::new(),
    })
}
