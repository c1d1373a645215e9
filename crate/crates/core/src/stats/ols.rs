use crate::{Error, Result};

/// Ordinary least squares fit with an intercept.
#[derive(Clone, Debug, PartialEq)]
pub struct RegressionResult {
    pub intercept: f64,
    /// One per feature column.
    pub coefficients: Vec<f64>,
    pub intercept_standard_error: f64,
    pub standard_errors: Vec<f64>,
    /// Zero when the target is constant.
    pub r_squared: f64,
    /// `RSS / (rows - features - 1)`; NaN with no residual degrees of freedom.
    pub residual_variance: f64,
    pub residuals: Vec<f64>,
}

/// Solves `m z = rhs` in place by Gaussian elimination with partial
/// pivoting, also returning `m^{-1}`.
fn solve_with_inverse(mut m: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let k = m.len();
    let scale = (0..k).map(|i| m[i][i].abs()).fold(0.0, f64::max);
    // augment with rhs and identity
    for (i, row) in m.iter_mut().enumerate() {
        row.push(rhs[i]);
        row.extend((0..k).map(|j| if i == j { 1.0 } else { 0.0 }));
    }
    for col in 0..k {
        let pivot = (col..k).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        if !(m[pivot][col].abs() > 1e-12 * scale) {
            return Err(Error::RankDeficient);
        }
        m.swap(col, pivot);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for row in 0..k {
            if row != col {
                let factor = m[row][col];
                if factor != 0.0 {
                    for j in 0..m[row].len() {
                        m[row][j] -= factor * m[col][j];
                    }
                }
            }
        }
    }
    let solution = m.iter().map(|row| row[k]).collect();
    let inverse = m.iter().map(|row| row[k + 1..].to_vec()).collect();
    Ok((solution, inverse))
}

/// Regresses `target` on the feature rows plus an intercept via the normal
/// equations.
pub fn ols_fit(features: &[Vec<f64>], target: &[f64]) -> Result<RegressionResult> {
    let n = target.len();
    if n == 0 || features.len() != n {
        return Err(Error::InvalidConfig(format!(
            "need one feature row per target value, got {} rows for {n} targets",
            features.len()
        )));
    }
    let k = features[0].len();
    if features.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidConfig("feature rows differ in length".into()));
    }
    if n < k + 1 {
        return Err(Error::RankDeficient);
    }
    if features.iter().flatten().chain(target).any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("regression input contains non-finite values".into()));
    }

    let design: Vec<Vec<f64>> =
        features.iter().map(|row| std::iter::once(1.0).chain(row.iter().copied()).collect()).collect();
    let p = k + 1;
    let mut gram = vec![vec![0.0; p]; p];
    let mut moment = vec![0.0; p];
    for (row, y) in design.iter().zip(target) {
        for i in 0..p {
            moment[i] += row[i] * y;
            for j in 0..p {
                gram[i][j] += row[i] * row[j];
            }
        }
    }
    let (beta, inverse) = solve_with_inverse(gram, moment)?;

    let residuals: Vec<f64> = design
        .iter()
        .zip(target)
        .map(|(row, y)| y - row.iter().zip(&beta).map(|(a, b)| a * b).sum::<f64>())
        .collect();
    let rss: f64 = residuals.iter().map(|r| r * r).sum();
    let mean = target.iter().sum::<f64>() / n as f64;
    let tss: f64 = target.iter().map(|y| (y - mean) * (y - mean)).sum();
    let r_squared = if tss > 0.0 { (1.0 - rss / tss).clamp(0.0, 1.0) } else { 0.0 };
    let dof = n - p;
    let residual_variance = if dof > 0 { rss / dof as f64 } else { f64::NAN };
    let errors: Vec<f64> = (0..p).map(|i| (residual_variance * inverse[i][i]).sqrt()).collect();

    Ok(RegressionResult {
        intercept: beta[0],
        coefficients: beta[1..].to_vec(),
        intercept_standard_error: errors[0],
        standard_errors: errors[1..].to_vec(),
        r_squared,
        residual_variance,
        residuals,
    })
}
