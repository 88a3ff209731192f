pub mod corpus;
mod curve;
mod lab;
mod limit;
mod monodromy;
mod poincare;
mod symanzik;

use crate::args::{Command, CurveCommand, LabCommand, LimitCommand, MonodromyCommand, PoincareCommand};
use crate::{InputError, Report};

pub fn dispatch(cmd: &Command) -> Result<Report, InputError> {
    match cmd {
        Command::Symanzik(a) => symanzik::run(a),
        Command::Curve(CurveCommand::Stability(a)) => curve::stability(a),
        Command::Curve(CurveCommand::Dimensions(a)) => curve::dimensions(a),
        Command::Monodromy(MonodromyCommand::Blocks(a)) => monodromy::blocks(a),
        Command::Poincare(PoincareCommand::Norm(a)) => poincare::norm(a),
        Command::Limit(LimitCommand::Eval(a)) => limit::eval(a),
        Command::Lab(LabCommand::TorusLimit(a)) => lab::torus_limit(a),
        Command::Lab(LabCommand::SphereCrossratio(a)) => lab::sphere_crossratio(a),
        Command::Lab(LabCommand::TorusGreen(a)) => lab::torus_green(a),
        Command::Corpus(a) => corpus::run(a),
    }
}

/// |a − b| ≤ tol·max(|a|, |b|, 1): relative, absolute below unit scale.
pub(crate) fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
