use num_complex::Complex64;

use super::cmatrix::{CMatrix, C, TAU_MAT};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition M = U diag(values) U*, values ascending.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Cyclic Jacobi for complex Hermitian matrices with a fixed (p, q) sweep order.
pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::Input(format!("not Hermitian: {}x{} is not square", m.rows(), m.cols())));
    }
    let scale = m.max_abs().max(1.0);
    if m.hermitian_defect() > TAU_MAT * scale {
        return Err(Error::Input(format!("not Hermitian: defect {:.3e}", m.hermitian_defect())));
    }
    let n = m.rows();
    let mut a = CMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let mut v = CMatrix::identity(n);
    let frob: f64 = a.data().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = f64::EPSILON * frob.max(f64::MIN_POSITIVE);

    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::Numerical("Jacobi iteration did not converge".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.select_columns(&order);
    Ok(HermitianEig { values, vectors })
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let nb = b.norm();
    if nb == 0.0 {
        return;
    }
    let n = a.rows();
    let phase = b / nb; // e^{iφ}
    let theta = 0.5 * (2.0 * nb).atan2(a[(p, p)].re - a[(q, q)].re);
    let (s, c) = theta.sin_cos();
    let pc = phase.conj();
    // G = diag(1, e^{-iφ}) · [[c, -s], [s, c]]
    let g00 = Complex64::new(c, 0.0);
    let g01 = Complex64::new(-s, 0.0);
    let g10 = pc * s;
    let g11 = pc * c;

    for i in 0..n {
        let (x, y) = (a[(i, p)], a[(i, q)]);
        a[(i, p)] = x * g00 + y * g10;
        a[(i, q)] = x * g01 + y * g11;
    }
    for j in 0..n {
        let (x, y) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = g00.conj() * x + g10.conj() * y;
        a[(q, j)] = g01.conj() * x + g11.conj() * y;
    }
    a[(p, q)] = C::new(0.0, 0.0);
    a[(q, p)] = C::new(0.0, 0.0);
    a[(p, p)] = C::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C::new(a[(q, q)].re, 0.0);

    for i in 0..n {
        let (x, y) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = x * g00 + y * g10;
        v[(i, q)] = x * g01 + y * g11;
    }
}

/// Group ascending eigenvalues into clusters whose consecutive gaps are below `gap`.
pub fn cluster_indices(values: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in values.iter().enumerate() {
        match out.last_mut() {
            Some(last) if x - values[*last.last().unwrap()] < gap => last.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}
