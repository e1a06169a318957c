//! Dense symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Cross-validation oracle for the secular solver: O(n^3), algorithmically
//! independent of the bisection path, intended for n <= 500.

use crate::model::ModelParams;

/// Eigendecomposition of a symmetric matrix.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvalues ascending and
/// `eigenvectors[k]` the unit eigenvector belonging to `eigenvalues[k]`.
/// Sweeps run until the off-diagonal Frobenius norm drops below
/// `1e-14 * ||A||_F`.
pub fn jacobi_eigh(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let frob: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|x| x * x))
        .sum::<f64>()
        .sqrt();
    let target = 1e-14 * frob;

    for _sweep in 0..100 {
        let mut off_sq = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off_sq += 2.0 * a[p][q] * a[p][q];
            }
        }
        if off_sq.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[i][p];
                        let aiq = a[i][q];
                        a[i][p] = c * aip - s * aiq;
                        a[p][i] = a[i][p];
                        a[i][q] = s * aip + c * aiq;
                        a[q][i] = a[i][q];
                    }
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let evals = order.iter().map(|&i| a[i][i]).collect();
    let evecs = order
        .iter()
        .map(|&col| (0..n).map(|i| v[i][col]).collect())
        .collect();
    (evals, evecs)
}

/// Full eigendecomposition of the arrowhead Hamiltonian for `p`.
pub fn diagonalize(p: &ModelParams) -> (Vec<f64>, Vec<Vec<f64>>) {
    jacobi_eigh(p.dense_hamiltonian())
}
