use crate::LabError;

/// A Green function on a curve together with its regularized diagonal.
pub trait GreenFunction {
    type Point;

    /// g(a, b); `Coincident` when a = b.
    fn green(&self, a: &Self::Point, b: &Self::Point) -> Result<f64, LabError>;

    /// g′(x, x) for the distance d_μ multiplied by `scale`.
    fn diagonal(&self, x: &Self::Point, scale: f64) -> f64;
}

/// A point carrying a momentum vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Charge<P> {
    pub point: P,
    pub momentum: Vec<f64>,
}

impl<P> Charge<P> {
    pub fn new(point: P, momentum: Vec<f64>) -> Self {
        Charge { point, momentum }
    }
}

fn pair(form: &[Vec<f64>], a: &[f64], b: &[f64]) -> f64 {
    form.iter().zip(a).map(|(row, x)| x * row.iter().zip(b).map(|(q, y)| q * y).sum::<f64>()).sum()
}

fn check<P>(form: &[Vec<f64>], charges: &[Charge<P>]) -> Result<(), LabError> {
    let d = form.len();
    let mut total = vec![0.0; d];
    let mut scale = 0.0f64;
    for c in charges {
        if c.momentum.len() != d {
            return Err(LabError::Dimension { expected: d, got: c.momentum.len() });
        }
        for (t, x) in total.iter_mut().zip(&c.momentum) {
            *t += x;
            scale = scale.max(x.abs());
        }
    }
    let defect = total.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if defect > 1e-12 * scale.max(1.0) {
        return Err(LabError::NotConserved(defect));
    }
    Ok(())
}

/// ⟨A, B⟩ = Σ_ij ⟨p_i, q_j⟩ g(σ_i, τ_j) for conserved A, B with disjoint
/// supports. Points carrying a zero momentum are not in the support.
pub fn height_pairing_surface<G: GreenFunction>(
    a: &[Charge<G::Point>],
    b: &[Charge<G::Point>],
    form: &[Vec<f64>],
    green: &G,
) -> Result<f64, LabError> {
    check(form, a)?;
    check(form, b)?;
    let live = |c: &&Charge<G::Point>| c.momentum.iter().any(|x| *x != 0.0);
    let mut total = 0.0;
    for ca in a.iter().filter(live) {
        for cb in b.iter().filter(live) {
            let g = match green.green(&ca.point, &cb.point) {
                Err(LabError::Coincident) => return Err(LabError::Overlap),
                r => r?,
            };
            total += pair(form, &ca.momentum, &cb.momentum) * g;
        }
    }
    Ok(total)
}

/// ⟨A, A⟩′ = Σ_ij ⟨p_i, p_j⟩ g′(σ_i, σ_j), with g′ = g off the diagonal and
/// the regularized value (d_μ scaled by `scale`) on it.
pub fn regularized_self_height<G: GreenFunction>(
    a: &[Charge<G::Point>],
    form: &[Vec<f64>],
    green: &G,
    scale: f64,
) -> Result<f64, LabError> {
    check(form, a)?;
    let mut total = 0.0;
    for (i, ci) in a.iter().enumerate() {
        total += pair(form, &ci.momentum, &ci.momentum) * green.diagonal(&ci.point, scale);
        for cj in &a[i + 1..] {
            let g = match green.green(&ci.point, &cj.point) {
                Err(LabError::Coincident) => green.diagonal(&ci.point, scale),
                r => r?,
            };
            total += 2.0 * pair(form, &ci.momentum, &cj.momentum) * g;
        }
    }
    Ok(total)
}

/// True when every ⟨p_i, p_i⟩ vanishes to `tol`.
pub fn on_shell<P>(a: &[Charge<P>], form: &[Vec<f64>], tol: f64) -> bool {
    a.iter().all(|c| pair(form, &c.momentum, &c.momentum).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{SphereGreen, SpherePoint};

    fn unit(p: SpherePoint, k: f64) -> Charge<SpherePoint> {
        Charge::new(p, vec![k])
    }

    #[test]
    fn overlapping_support_is_refused() {
        let x = SpherePoint::new(0.5, 0.0);
        let a = [unit(x, 1.0), unit(SpherePoint::new(1.0, 1.0), -1.0)];
        let b = [unit(x, 1.0), unit(SpherePoint::Infinity, -1.0)];
        assert_eq!(height_pairing_surface(&a, &b, &[vec![1.0]], &SphereGreen), Err(LabError::Overlap));
    }

    #[test]
    fn zero_momenta_give_zero() {
        let a = [unit(SpherePoint::new(0.0, 0.0), 1.0), unit(SpherePoint::new(1.0, 0.0), -1.0)];
        let b = [unit(SpherePoint::new(0.0, 0.0), 0.0), unit(SpherePoint::new(1.0, 0.0), 0.0)];
        assert_eq!(height_pairing_surface(&a, &b, &[vec![1.0]], &SphereGreen).unwrap(), 0.0);
    }

    #[test]
    fn conservation_is_checked() {
        let a = [unit(SpherePoint::new(0.0, 0.0), 1.0), unit(SpherePoint::new(1.0, 0.0), -0.5)];
        assert!(matches!(regularized_self_height(&a, &[vec![1.0]], &SphereGreen, 1.0), Err(LabError::NotConserved(_))));
    }

    #[test]
    fn single_null_point_has_zero_self_height() {
        let form = vec![vec![1.0, 0.0], vec![0.0, -1.0]];
        let a = [Charge::new(SpherePoint::new(0.2, 0.1), vec![1.0, 1.0]), Charge::new(SpherePoint::new(0.2, 0.1), vec![-1.0, -1.0])];
        assert_eq!(regularized_self_height(&a, &form, &SphereGreen, 3.0).unwrap(), 0.0);
        assert!(on_shell(&a, &form, 0.0));
    }
}
