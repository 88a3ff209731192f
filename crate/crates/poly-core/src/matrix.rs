use std::collections::HashMap;

use crate::poly::{MultiPoly, Vars};
use crate::PolyError;

/// Dense matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    vars: Vars,
    entries: Vec<MultiPoly>,
}

/// Dimension from which [`RingMatrix::det_fraction_free`] switches from
/// cofactor expansion to Bareiss elimination.
const BAREISS_FROM: usize = 6;

impl RingMatrix {
    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, vars: vars.clone(), entries: vec![MultiPoly::zero(vars); rows * cols] }
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<MultiPoly>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(PolyError::ArityMismatch { expected: c, got: row.len() });
            }
            for p in row {
                if p.vars() != vars {
                    return Err(PolyError::RegistryMismatch);
                }
                entries.push(p);
            }
        }
        Ok(RingMatrix { rows: r, cols: c, vars: vars.clone(), entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) -> Result<(), PolyError> {
        if p.vars() != &self.vars {
            return Err(PolyError::RegistryMismatch);
        }
        self.entries[i * self.cols + j] = p;
        Ok(())
    }

    fn square(&self) -> Result<usize, PolyError> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(PolyError::NotSquare(self.rows, self.cols))
        }
    }

    /// Determinant by cofactor expansion below dimension 6 and Bareiss
    /// elimination from there on. Never forms a rational function.
    pub fn det_fraction_free(&self) -> Result<MultiPoly, PolyError> {
        if self.square()? < BAREISS_FROM {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along rows, memoised on the set of remaining
    /// columns (2^n minors instead of n!).
    pub fn det_cofactor(&self) -> Result<MultiPoly, PolyError> {
        let n = self.square()?;
        if n == 0 {
            return Ok(MultiPoly::one(&self.vars));
        }
        assert!(n < 32, "cofactor expansion limited to n < 32");
        // level[mask] = det of the last |mask| rows restricted to columns in mask
        let mut level: HashMap<u32, MultiPoly> = HashMap::new();
        level.insert(0, MultiPoly::one(&self.vars));
        for r in (0..n).rev() {
            let size = n - r;
            let mut next: HashMap<u32, MultiPoly> = HashMap::new();
            for mask in masks_of_size(n, size) {
                let mut acc = MultiPoly::zero(&self.vars);
                let mut sign_neg = false;
                for j in 0..n {
                    if mask & (1 << j) == 0 {
                        continue;
                    }
                    let a = self.get(r, j);
                    if !a.is_zero() {
                        let minor = &level[&(mask & !(1 << j))];
                        if !minor.is_zero() {
                            let t = a.mul(minor)?;
                            acc = if sign_neg { acc.sub(&t)? } else { acc.add(&t)? };
                        }
                    }
                    sign_neg = !sign_neg;
                }
                next.insert(mask, acc);
            }
            level = next;
        }
        Ok(level.remove(&((1u32 << n) - 1)).expect("full mask present"))
    }

    /// One-step fraction-free (Bareiss) elimination; every division is exact.
    pub fn det_bareiss(&self) -> Result<MultiPoly, PolyError> {
        let n = self.square()?;
        if n == 0 {
            return Ok(MultiPoly::one(&self.vars));
        }
        let mut a: Vec<Vec<MultiPoly>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut negate = false;
        let mut prev = MultiPoly::one(&self.vars);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(MultiPoly::zero(&self.vars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].mul(&a[i][j])?.sub(&a[i][k].mul(&a[k][j])?)?;
                    a[i][j] = num.div_exact(&prev)?.expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }
}

fn masks_of_size(n: usize, size: usize) -> Vec<u32> {
    (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == size).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn vars(n: usize) -> Vars {
        Arc::new((1..=n).map(|i| format!("e{i}")).collect())
    }

    fn p(v: &Vars, s: &str) -> MultiPoly {
        MultiPoly::parse(v, s).unwrap()
    }

    #[test]
    fn small_determinants() {
        let v = vars(3);
        let m1 = RingMatrix::from_rows(&v, vec![vec![p(&v, "Y_e1")]]).unwrap();
        assert_eq!(m1.det_fraction_free().unwrap().to_string(), "Y_e1");
        let m2 = RingMatrix::from_rows(
            &v,
            vec![vec![p(&v, "Y_e1"), p(&v, "0")], vec![p(&v, "0"), p(&v, "Y_e2")]],
        )
        .unwrap();
        assert_eq!(m2.det_fraction_free().unwrap().to_string(), "Y_e1*Y_e2");
        assert_eq!(RingMatrix::zeros(&v, 0, 0).det_bareiss().unwrap(), MultiPoly::one(&v));
    }

    #[test]
    fn non_square_is_rejected() {
        let v = vars(1);
        assert_eq!(RingMatrix::zeros(&v, 2, 3).det_fraction_free(), Err(PolyError::NotSquare(2, 3)));
    }

    #[test]
    fn bareiss_pivots_through_zero() {
        let v = vars(2);
        // [[0, Y1, 0], [Y2, 0, 0], [0, 0, 1]] has det -Y1*Y2
        let m = RingMatrix::from_rows(
            &v,
            vec![
                vec![p(&v, "0"), p(&v, "Y_e1"), p(&v, "0")],
                vec![p(&v, "Y_e2"), p(&v, "0"), p(&v, "0")],
                vec![p(&v, "0"), p(&v, "0"), p(&v, "1")],
            ],
        )
        .unwrap();
        assert_eq!(m.det_bareiss().unwrap().to_string(), "-Y_e1*Y_e2");
        assert_eq!(m.det_cofactor().unwrap().to_string(), "-Y_e1*Y_e2");
    }

    #[test]
    fn singular_matrix_has_zero_det() {
        let v = vars(2);
        let row = vec![p(&v, "Y_e1"), p(&v, "Y_e2")];
        let m = RingMatrix::from_rows(&v, vec![row.clone(), row]).unwrap();
        assert!(m.det_bareiss().unwrap().is_zero());
        assert!(m.det_cofactor().unwrap().is_zero());
    }
}
