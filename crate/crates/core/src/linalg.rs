//! Thin wrappers over nalgebra for the dense kernels used here.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::Polynomial;

/// Determinant of a square row-major matrix by LU with partial pivoting.
pub fn determinant(rows: &[Vec<Complex64>]) -> Complex64 {
    let n = rows.len();
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    m.lu().determinant()
}

/// Least-squares solve `min ||A x - b||` for a tall matrix, with column
/// scaling to unit norm before the QR factorization.
pub fn least_squares(a: &DMatrix<Complex64>, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let (rows, cols) = a.shape();
    if rows < cols {
        return Err(Error::Precondition(format!(
            "least squares needs at least as many rows ({rows}) as unknowns ({cols})"
        )));
    }
    let scales: Vec<f64> = (0..cols)
        .map(|j| {
            let n = a.column(j).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if n > 0.0 {
                n
            } else {
                1.0
            }
        })
        .collect();
    let mut scaled = a.clone();
    for (j, s) in scales.iter().enumerate() {
        scaled.column_mut(j).unscale_mut(*s);
    }
    let qr = scaled.qr();
    let q = qr.q();
    let r = qr.r();
    let rhs = q.adjoint() * nalgebra::DVector::from_column_slice(b);
    let y = r
        .solve_upper_triangular(&rhs)
        .ok_or_else(|| Error::NonFinite("rank-deficient least-squares system".into()))?;
    let x: Vec<Complex64> = y.iter().zip(&scales).map(|(v, s)| v / s).collect();
    if x.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::NonFinite("least-squares solution".into()));
    }
    Ok(x)
}

/// Roots of a polynomial as eigenvalues of its companion matrix, each
/// polished by a few Newton steps.
pub fn polynomial_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let n = match p.degree() {
        None => return Err(Error::RootFinding("zero polynomial has no isolated roots".into())),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let monic = p.monic();
    let mut comp = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        comp[(i, n - 1)] = -monic.coeff(i);
    }
    let schur = comp
        .try_schur(f64::EPSILON, 10_000)
        .ok_or_else(|| Error::RootFinding("Schur iteration did not converge".into()))?;
    let t = schur.unpack().1;
    let d = monic.derivative();
    let roots = (0..n)
        .map(|i| {
            let mut z = t[(i, i)];
            for _ in 0..3 {
                let dv = d.eval(z);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = monic.eval(z) / dv;
                if !(step.re.is_finite() && step.im.is_finite()) || step.norm() > 1e-3 * (1.0 + z.norm()) {
                    break;
                }
                z -= step;
            }
            z
        })
        .collect::<Vec<_>>();
    if roots.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::RootFinding("non-finite eigenvalue".into()));
    }
    Ok(roots)
}
