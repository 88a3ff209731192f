use poincare::log_norm;
use poincare::sample::random_element;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::args::PoincareArgs;
use crate::input::{biextension_point, read_json};
use crate::{InputError, Output, Report};

pub fn norm(a: &PoincareArgs) -> Result<Report, InputError> {
    let file = a.point.display().to_string();
    let x = biextension_point(&read_json(&a.point)?, "").map_err(|e| e.in_file(&file))?;
    let v = log_norm(&x);
    let mut out = json!({"genus": x.genus(), "log_norm": v});
    let mut failures = Vec::new();
    if a.trials > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let mut worst = 0.0f64;
        for t in 0..a.trials {
            let e = random_element(&mut rng, x.genus());
            match e.act(&x) {
                Ok(y) => worst = worst.max((log_norm(&y) - v).abs()),
                Err(err) => failures.push(format!("trial {t}: {err}")),
            }
        }
        if worst > a.tol {
            failures.push(format!("log-norm drift {worst:e} exceeds {:e}", a.tol));
        }
        out["invariance"] = json!({"trials": a.trials, "seed": a.seed, "max_drift": worst});
    }
    Ok(Report { output: Output::Json(out), failures, notes: Vec::new() })
}
