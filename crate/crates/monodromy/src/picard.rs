use crate::MonodromyError;

/// J = [[0, I_g], [−I_g, 0]].
pub fn standard_symplectic(g: usize) -> Vec<Vec<i64>> {
    let mut j = vec![vec![0i64; 2 * g]; 2 * g];
    for i in 0..g {
        j[i][g + i] = 1;
        j[g + i][i] = -1;
    }
    j
}

/// xᵀ J y.
pub fn pairing(x: &[i64], y: &[i64], j: &[Vec<i64>]) -> Result<i64, MonodromyError> {
    let n = j.len();
    for len in [x.len(), y.len()].into_iter().chain(j.iter().map(Vec::len)) {
        if len != n {
            return Err(MonodromyError::Dimension { expected: n, got: len });
        }
    }
    Ok(x.iter().enumerate().map(|(i, xi)| xi * j[i].iter().zip(y).map(|(a, b)| a * b).sum::<i64>()).sum())
}

/// β ↦ β − ⟨β, a_e⟩ a_e.
pub fn picard_lefschetz(beta: &[i64], a_e: &[i64], j: &[Vec<i64>]) -> Result<Vec<i64>, MonodromyError> {
    let k = pairing(beta, a_e, j)?;
    Ok(beta.iter().zip(a_e).map(|(b, a)| b - k * a).collect())
}
