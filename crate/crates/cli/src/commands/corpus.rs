//! Every `*.json` graph in a directory through all Symanzik routes, plus an
//! optional golden sidecar `<stem>.expected.json` holding `{"psi", "phi"}`.
//! Rows are computed in parallel and sorted by file name; failures are
//! collected, never fatal.

use std::path::{Path, PathBuf};
use std::time::Instant;

use graph_core::json::{object, only_keys, string};
use rayon::prelude::*;
use serde_json::{json, Value};
use symanzik::{
    first_symanzik, first_symanzik_trees, resistance_oracle, second_symanzik, second_symanzik_forests,
    symanzik_ratio_eval,
};

use super::close;
use crate::args::CorpusArgs;
use crate::input::{read_json, GraphInput};
use crate::{InputError, Output, Report};

const GOLDEN_SUFFIX: &str = ".expected.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Absent,
    Skipped,
}

impl Verdict {
    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Absent => "absent",
            Verdict::Skipped => "skipped",
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusRow {
    pub file: String,
    pub edges: usize,
    pub betti: usize,
    /// ψ by determinant vs. spanning trees.
    pub psi: Verdict,
    /// φ by bordered determinant vs. spanning 2-forests.
    pub phi: Verdict,
    /// φ/ψ by Schur complement vs. Laplacian pseudo-inverse.
    pub ratio: Verdict,
    pub golden: Verdict,
    /// Input problems; a row with an error counts as failed.
    pub error: Option<String>,
    pub detail: Vec<String>,
    pub millis: u128,
}

impl CorpusRow {
    pub fn passed(&self) -> bool {
        self.error.is_none() && [self.psi, self.phi, self.ratio, self.golden].iter().all(|v| *v != Verdict::Fail)
    }

    fn to_value(&self, timing: bool) -> Value {
        let mut v = json!({
            "file": self.file,
            "edges": self.edges,
            "betti": self.betti,
            "psi": self.psi.as_str(),
            "phi": self.phi.as_str(),
            "ratio": self.ratio.as_str(),
            "golden": self.golden.as_str(),
            "status": if self.error.is_some() { "error" } else if self.passed() { "pass" } else { "fail" },
            "detail": self.detail,
        });
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        if timing {
            v["millis"] = json!(self.millis);
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Deterministic positive lengths 0.5, 0.75, .., 1.5 cycling over edges.
fn lengths(m: usize) -> Vec<f64> {
    (0..m).map(|k| 0.5 + ((7 * k) % 5) as f64 / 4.0).collect()
}

fn golden(path: &Path) -> Result<Option<(String, String)>, InputError> {
    if !path.exists() {
        return Ok(None);
    }
    let name = path.display().to_string();
    let v = read_json(path)?;
    let parse = || -> Result<(String, String), InputError> {
        let o = object(&v, "")?;
        only_keys(o, "", &["psi", "phi"])?;
        let get = |k: &str| o.get(k).map_or(Ok(String::new()), |x| string(x, k));
        Ok((get("psi")?, get("phi")?))
    };
    parse().map(Some).map_err(|e| e.in_file(&name))
}

fn check(path: &Path, tol: f64) -> CorpusRow {
    let start = Instant::now();
    let file = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let mut row = CorpusRow {
        file,
        edges: 0,
        betti: 0,
        psi: Verdict::Skipped,
        phi: Verdict::Skipped,
        ratio: Verdict::Skipped,
        golden: Verdict::Skipped,
        error: None,
        detail: Vec::new(),
        millis: 0,
    };
    if let Err(e) = fill(&mut row, path, tol) {
        row.error = Some(e.to_string());
    }
    row.millis = start.elapsed().as_millis();
    row
}

fn fill(row: &mut CorpusRow, path: &Path, tol: f64) -> Result<(), InputError> {
    let input = GraphInput::load(path)?;
    let g = &input.graph;
    let file = row.file.clone();
    let err = |e: symanzik::SymanzikError| InputError::new("", e).in_file(&file);
    row.edges = g.edge_count();
    row.betti = g.first_betti().map_err(|e| err(e.into()))?;
    let p = input.vertex_momenta()?;
    let psi = first_symanzik(g).map_err(err)?;
    let psi_trees = first_symanzik_trees(g).map_err(err)?;
    row.psi = Verdict::of(psi == psi_trees);
    if row.psi == Verdict::Fail {
        row.detail.push(format!("psi: det {psi} vs trees {psi_trees}"));
    }
    let phi = second_symanzik(g, &p).map_err(err)?;
    let phi_forests = second_symanzik_forests(g, &p).map_err(err)?;
    row.phi = Verdict::of(phi == phi_forests);
    if row.phi == Verdict::Fail {
        row.detail.push(format!("phi: bordered {phi} vs forests {phi_forests}"));
    }
    let y = lengths(g.edge_count());
    let schur = symanzik_ratio_eval(g, &p, &y).map_err(err)?;
    let oracle = resistance_oracle(g, &p, &y).map_err(err)?;
    row.ratio = Verdict::of(close(schur, oracle, tol));
    if row.ratio == Verdict::Fail {
        row.detail.push(format!("ratio: schur {schur:e} vs oracle {oracle:e}"));
    }
    let sidecar = path.with_file_name(format!("{}{GOLDEN_SUFFIX}", path.file_stem().unwrap_or_default().to_string_lossy()));
    row.golden = match golden(&sidecar)? {
        None => Verdict::Absent,
        Some((want_psi, want_phi)) => {
            let (got_psi, got_phi) = (psi.to_string(), phi.to_string());
            if !want_psi.is_empty() && want_psi != got_psi {
                row.detail.push(format!("golden psi: expected {want_psi}, computed {got_psi}"));
            }
            if !want_phi.is_empty() && want_phi != got_phi {
                row.detail.push(format!("golden phi: expected {want_phi}, computed {got_phi}"));
            }
            Verdict::of((want_psi.is_empty() || want_psi == got_psi) && (want_phi.is_empty() || want_phi == got_phi))
        }
    };
    Ok(())
}

/// Rows sorted by file name, and the tally.
pub fn corpus_run(dir: &Path, tol: f64) -> Result<(Vec<CorpusRow>, CorpusSummary), InputError> {
    let name = dir.display().to_string();
    let entries = std::fs::read_dir(dir).map_err(|e| InputError::new("", format!("cannot read directory: {e}")).in_file(&name))?;
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let p = entry.map_err(|e| InputError::new("", e).in_file(&name))?.path();
        let s = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        if p.is_file() && s.ends_with(".json") && !s.ends_with(GOLDEN_SUFFIX) {
            files.push(p);
        }
    }
    files.sort();
    let mut rows: Vec<CorpusRow> = files.par_iter().map(|p| check(p, tol)).collect();
    rows.sort_by(|a, b| a.file.cmp(&b.file));
    let passed = rows.iter().filter(|r| r.passed()).count();
    let summary = CorpusSummary { total: rows.len(), passed, failed: rows.len() - passed };
    Ok((rows, summary))
}

pub fn run(a: &CorpusArgs) -> Result<Report, InputError> {
    let (rows, s) = corpus_run(&a.dir, a.tol)?;
    let failures: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed())
        .map(|r| match &r.error {
            Some(e) => format!("{}: {e}", r.file),
            None => format!("{}: {}", r.file, r.detail.join("; ")),
        })
        .collect();
    let mut notes = vec![format!("{:<28} {:>5} {:>5} {:>7} {:>7} {:>7} {:>7} {:>8}", "file", "edges", "betti", "psi", "phi", "ratio", "golden", "ms")];
    for r in &rows {
        notes.push(format!(
            "{:<28} {:>5} {:>5} {:>7} {:>7} {:>7} {:>7} {:>8}",
            r.file,
            r.edges,
            r.betti,
            r.psi.as_str(),
            r.phi.as_str(),
            r.ratio.as_str(),
            r.golden.as_str(),
            r.millis
        ));
    }
    let output = json!({
        "rows": rows.iter().map(|r| r.to_value(a.timing)).collect::<Vec<_>>(),
        "summary": {"total": s.total, "passed": s.passed, "failed": s.failed},
    });
    Ok(Report { output: Output::Json(output), failures, notes })
}
