use nalgebra::{DMatrix, DVector};

use crate::tensor::SymTensor2;

/// Minimum-norm least-squares solution of `A x ≈ b` with diagnostics.
#[derive(Debug, Clone)]
pub struct LstsqSolution {
    pub x: DVector<f64>,
    pub rank: usize,
    /// Ratio of largest to smallest retained singular value; infinite if `A` is zero.
    pub condition: f64,
    /// True when `A` has fewer retained singular values than columns.
    pub rank_deficient: bool,
    pub residual_norm: f64,
}

fn rank_tol(a: &DMatrix<f64>, smax: f64) -> f64 {
    a.nrows().max(a.ncols()) as f64 * f64::EPSILON * smax
}

/// Solves by SVD, truncating singular values below `max(m, n)·ε·σ_max`.
/// A positive `ridge` adds Tikhonov damping `λ` (solving with `σ/(σ² + λ)`).
pub fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>, ridge: f64) -> LstsqSolution {
    let n = a.ncols();
    if a.nrows() == 0 || n == 0 {
        return LstsqSolution {
            x: DVector::zeros(n),
            rank: 0,
            condition: f64::INFINITY,
            rank_deficient: n > 0,
            residual_norm: b.norm(),
        };
    }
    // Tall systems are reduced to their triangular factor first; the SVD of the
    // small square factor converges more reliably than that of the full design.
    let qr = (a.nrows() > n).then(|| a.clone().qr());
    let reduce = |v: &DVector<f64>| match &qr {
        Some(qr) => qr.q().tr_mul(v),
        None => v.clone(),
    };
    let core = match &qr {
        Some(qr) => qr.r(),
        None => a.clone(),
    };
    let svd = core.svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let s = &svd.singular_values;
    let smax = s.iter().cloned().fold(0.0, f64::max);
    let tol = rank_tol(a, smax);
    let kept: Vec<usize> = (0..s.len()).filter(|&k| smax > 0.0 && s[k] > tol).collect();
    let apply = |rhs: &DVector<f64>| {
        let mut x = DVector::zeros(n);
        for &k in &kept {
            let sk = s[k];
            let coef = u.column(k).dot(rhs)
                * if ridge > 0.0 {
                    sk / (sk * sk + ridge)
                } else {
                    1.0 / sk
                };
            x += vt.row(k).transpose() * coef;
        }
        x
    };
    let mut x = apply(&reduce(b));
    if ridge == 0.0 {
        // One step of iterative refinement.
        let r = b - a * &x;
        x += apply(&reduce(&r));
    }
    let rank = kept.len();
    let smin = kept.iter().map(|&k| s[k]).fold(f64::INFINITY, f64::min);
    let residual_norm = (a * &x - b).norm();
    LstsqSolution {
        x,
        rank,
        condition: if rank == 0 {
            f64::INFINITY
        } else {
            smax / smin
        },
        rank_deficient: rank < n,
        residual_norm,
    }
}

/// Norm of the component of `candidate` orthogonal to the span of `basis`,
/// measured in Mandel coordinates (so it equals the Frobenius norm).
pub fn span_residual(basis: &[SymTensor2], candidate: &SymTensor2) -> f64 {
    let b = DVector::from_row_slice(&candidate.to_mandel());
    if basis.is_empty() {
        return b.norm();
    }
    let cols: Vec<f64> = basis.iter().flat_map(|g| g.to_mandel()).collect();
    let a = DMatrix::from_column_slice(6, basis.len(), &cols);
    lstsq(&a, &b, 0.0).residual_norm
}
