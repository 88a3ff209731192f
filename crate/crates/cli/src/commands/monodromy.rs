use graph_core::json::rational_to_value;
use monodromy::{build_ne, lift_identities_check, MonodromyError, NilpotentBlock};
use num_traits::Zero;
use poly_core::Rational;
use serde_json::{json, Value};

use crate::args::MonodromyArgs;
use crate::input::{monodromy_fixture, read_json, sections, GraphInput};
use crate::{InputError, Output, Report};

fn matrix_value(m: &[Vec<Rational>]) -> Value {
    m.iter().map(|r| r.iter().map(rational_to_value).collect::<Vec<_>>()).collect()
}

pub fn blocks(a: &MonodromyArgs) -> Result<Report, InputError> {
    let cfile = a.crossings.display().to_string();
    let sfile = a.sections.display().to_string();
    let input = GraphInput::load(&a.graph)?;
    let secs = sections(&read_json(&a.sections)?, "", &input).map_err(|e| e.in_file(&sfile))?;
    let fix = monodromy_fixture(&input, &read_json(&a.crossings)?, "", secs, a.genus).map_err(|e| e.in_file(&cfile))?;
    let g = &fix.graph;
    let d = fix.space.dim();
    let comp = |p: &[Vec<Rational>], k: usize| -> Vec<Rational> { p.iter().map(|v| v[k].clone()).collect() };
    let mut failures = Vec::new();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut ns: Vec<NilpotentBlock> = Vec::new();
            for e in 0..g.edge_count() {
                match build_ne(&fix.cycles, &fix.crossings, &comp(&fix.p1, i), &comp(&fix.p2, j), e) {
                    Ok(n) => ns.push(n),
                    Err(MonodromyError::NotNilpotent(edge)) => {
                        failures.push(format!("components ({i},{j}): N_e^2 != 0 for edge `{edge}`"));
                    }
                    Err(err) => return Err(InputError::new("", err).in_file(&cfile)),
                }
            }
            for x in &ns {
                for y in &ns {
                    if !x.times(y).iter().flatten().all(Zero::is_zero) {
                        failures.push(format!("components ({i},{j}): N_e N_f != 0 for edges `{}`, `{}`", x.edge, y.edge));
                    }
                }
                out.push(json!({"edge": x.edge, "components": [i, j], "matrix": matrix_value(&x.matrix())}));
            }
        }
    }
    let l1 = fix.crossings.lift(1, &fix.p1, d);
    let l2 = fix.crossings.lift(2, &fix.p2, d);
    for (side, l) in [(1u8, &l1), (2u8, &l2)] {
        let want = fix.restricted(side).map_err(|e| InputError::new("", e).in_file(&sfile))?;
        if l.boundary(g) != want.vectors() {
            failures.push(format!("side {side}: boundary of the crossing lift differs from the section momenta"));
        }
    }
    let r = lift_identities_check(&fix.cycles, &fix.crossings, &fix.p1, &fix.p2, &l1, &l2)
        .map_err(|e| InputError::new("", e).in_file(&cfile))?;
    failures.extend(r.failures.iter().cloned());
    Ok(Report {
        output: Output::Json(json!({
            "genus": fix.cycles.genus(),
            "blocks": out,
            "lift_identities": {"checked": r.checked, "failures": r.failures},
        })),
        failures,
        notes: Vec::new(),
    })
}
