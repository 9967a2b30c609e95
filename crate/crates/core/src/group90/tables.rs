use std::sync::Arc;

use super::{classify_orbit_type_90, real_sign, OrbitType};
use crate::crystal::{Character, CrystalGroup};
use crate::error::Result;
use crate::mackey::{equivalent, ConcreteRep, Rep};
use crate::numerics::{CMatrix, C};

/// One reference row: π_j over a character, given by the images of a, b and c.
#[derive(Clone)]
pub struct TableRow {
    pub label: String,
    pub rep: ConcreteRep,
}

const Z: C = C::new(0.0, 0.0);
const O: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

fn m(rows: &[&[C]]) -> CMatrix {
    CMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
}

fn s1(z: C) -> CMatrix {
    CMatrix::scalar(1, z)
}

/// Cyclic shift shared by most 4-dimensional rows.
fn p4() -> CMatrix {
    m(&[&[Z, O, Z, Z], &[Z, Z, Z, O], &[O, Z, Z, Z], &[Z, Z, O, Z]])
}

fn row(g: &Arc<CrystalGroup>, chi: &Character, j: usize, a: CMatrix, b: CMatrix, c: CMatrix) -> Result<TableRow> {
    let gens = vec![("a".to_string(), a), ("b".to_string(), b), ("c".to_string(), c)];
    Ok(TableRow { label: format!("π{j}"), rep: ConcreteRep::new(g, gens, Some(chi.clone()))? })
}

/// The reference rows for the block containing χ, parameterized by χ's own coordinates.
pub fn reference_rows(g: &Arc<CrystalGroup>, chi: &Character) -> Result<Vec<TableRow>> {
    let ty = classify_orbit_type_90(g, chi)?;
    let u: Vec<C> = chi.u.iter().map(|t| t.to_complex()).collect();
    let sq: Vec<C> = chi.u.iter().map(|t| t.principal_sqrt().to_complex()).collect();
    let sign = |k: usize| f64::from(real_sign(&chi.u[k]).unwrap_or(1));
    let (u1, u2, u3) = (u[0], u[1], u[2]);
    let c_scalar = |n: usize| CMatrix::scalar(n, u3);
    let c_split4 = CMatrix::diag(&[u3, u3, u3.conj(), u3.conj()]);
    let mut rows = Vec::new();
    match ty {
        OrbitType::One(1) => {
            let c = s1(u3);
            for (j, (a, b)) in [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)].into_iter().enumerate() {
                rows.push(row(g, chi, j + 1, s1(O * a), s1(O * b), c.clone())?);
            }
            let a = m(&[&[Z, -O], &[O, Z]]);
            rows.push(row(g, chi, 5, a, CMatrix::diag(&[O, -O]), c_scalar(2))?);
        }
        OrbitType::One(_) => {
            let c = s1(u3);
            // The (−1,−1,−1) block prints π₄ as a copy of π₃; reproduced verbatim.
            let pairs = if sign(2) > 0.0 {
                [(I, I), (-I, I), (-I, -I), (I, -I)]
            } else {
                [(I, I), (-I, I), (-I, -I), (-I, -I)]
            };
            for (j, (a, b)) in pairs.into_iter().enumerate() {
                rows.push(row(g, chi, j + 1, s1(a), s1(b), c.clone())?);
            }
            let a = m(&[&[Z, O], &[O, Z]]);
            rows.push(row(g, chi, 5, a, CMatrix::diag(&[-I, I]), c_scalar(2))?);
        }
        OrbitType::Two(t @ (1 | 2)) => {
            let a = m(&[&[Z, Z, -O, Z], &[Z, Z, Z, O], &[O, Z, Z, Z], &[Z, O, Z, Z]]);
            let b = if t == 1 {
                m(&[&[Z, -I, Z, Z], &[-I, Z, Z, Z], &[Z, Z, Z, I], &[Z, Z, -I, Z]])
            } else {
                m(&[&[Z, O, Z, Z], &[O, Z, Z, Z], &[Z, Z, Z, O], &[Z, Z, -O, Z]])
            };
            rows.push(row(g, chi, 1, a, b, c_scalar(4))?);
        }
        OrbitType::Two(_) => {
            let c = CMatrix::diag(&[u3, u3.conj()]);
            let (b, a_diag) = if sign(0) > 0.0 {
                (m(&[&[Z, O], &[O, Z]]), [[-I, I], [I, -I], [-O, -O], [O, O]])
            } else {
                (m(&[&[Z, -O], &[O, Z]]), [[-I, -I], [I, I], [-O, O], [O, -O]])
            };
            for (j, d) in a_diag.into_iter().enumerate() {
                rows.push(row(g, chi, j + 1, CMatrix::diag(&d), b.clone(), c.clone())?);
            }
        }
        OrbitType::Four(1) => {
            for (j, e) in [-O, O].into_iter().enumerate() {
                let b = m(&[&[Z, Z, e * u1.conj(), Z], &[Z, Z, Z, e], &[e, Z, Z, Z], &[Z, e * u1, Z, Z]]);
                rows.push(row(g, chi, j + 1, p4(), b, c_scalar(4))?);
            }
        }
        OrbitType::Four(2) => {
            for (j, e) in [O, -O].into_iter().enumerate() {
                let b = m(&[&[Z, e, Z, Z], &[e * u1, Z, Z, Z], &[Z, Z, Z, e * u1.conj()], &[Z, Z, e, Z]]);
                rows.push(row(g, chi, j + 1, p4(), b, c_scalar(4))?);
            }
        }
        OrbitType::Four(3) => {
            let s = sq[0];
            // (u₁, 1, ±1): π₁ uses +√u₁, π₂ uses −√u₁ throughout.
            // (u₁,−1, ±1): a carries ∓√u₁, b carries ∓√u₁ and ±√ū₁ with a sign flip in the corner.
            let plus = sign(1) > 0.0;
            for (j, e) in [O, -O].into_iter().enumerate() {
                let (ea, eb, ec) = if plus { (e, e, e) } else { (-e, -e, e) };
                let a = m(&[&[Z, O, Z, Z], &[Z, Z, Z, ea * s], &[O, Z, Z, Z], &[Z, Z, ea * s.conj(), Z]]);
                let corner = if plus { O } else { -O };
                let b = m(&[&[Z, Z, Z, O], &[Z, eb * s, Z, Z], &[Z, Z, ec * s.conj(), Z], &[corner, Z, Z, Z]]);
                rows.push(row(g, chi, j + 1, a, b, c_scalar(4))?);
            }
        }
        OrbitType::Four(4) => {
            let t = sq[1];
            let plus = sign(0) > 0.0;
            for (j, e) in [-O, O].into_iter().enumerate() {
                let f = if plus { e } else { -e };
                let b = m(&[&[e * t.conj(), Z, Z, Z], &[Z, Z, f * t.conj(), Z], &[Z, e * t, Z, Z], &[Z, Z, Z, f * t]]);
                rows.push(row(g, chi, j + 1, p4(), b, c_scalar(4))?);
            }
        }
        OrbitType::Four(_) => {
            let a1 = m(&[&[Z, -O, Z, Z], &[O, Z, Z, Z], &[Z, Z, Z, O], &[Z, Z, O, Z]]);
            let a2 = m(&[&[Z, O, Z, Z], &[O, Z, Z, Z], &[Z, Z, Z, -O], &[Z, Z, O, Z]]);
            let (b1, b2) = if sign(0) > 0.0 {
                (
                    m(&[&[Z, Z, -O, Z], &[Z, Z, Z, O], &[O, Z, Z, Z], &[Z, O, Z, Z]]),
                    m(&[&[Z, Z, -O, Z], &[Z, Z, Z, -O], &[O, Z, Z, Z], &[Z, -O, Z, Z]]),
                )
            } else {
                (
                    m(&[&[Z, Z, O, Z], &[Z, Z, Z, O], &[O, Z, Z, Z], &[Z, -O, Z, Z]]),
                    m(&[&[Z, Z, O, Z], &[Z, Z, Z, -O], &[O, Z, Z, Z], &[Z, O, Z, Z]]),
                )
            };
            rows.push(row(g, chi, 1, a1, b1, c_split4.clone())?);
            rows.push(row(g, chi, 2, a2, b2, c_split4)?);
        }
        OrbitType::Eight => {
            let mut a = CMatrix::zeros(8, 8);
            for (r, c) in [(0, 2), (1, 0), (2, 4), (3, 6), (4, 1), (5, 3), (6, 7), (7, 5)] {
                a[(r, c)] = O;
            }
            let mut b = CMatrix::zeros(8, 8);
            let entries = [
                (0, 3, u2.conj()),
                (1, 6, O),
                (2, 5, u1 * u2.conj()),
                (3, 0, O),
                (4, 7, u1),
                (5, 2, u2),
                (6, 1, u1.conj()),
                (7, 4, u1.conj() * u2),
            ];
            for (r, c, z) in entries {
                b[(r, c)] = z;
            }
            let v = u3.conj();
            let c = CMatrix::diag(&[u3, u3, u3, v, u3, v, v, v]);
            rows.push(row(g, chi, 1, a, b, c)?);
        }
    }
    Ok(rows)
}

/// For each computed representation, the table rows it is equivalent to.
#[derive(Clone, Debug)]
pub struct RowMatch {
    pub matches: Vec<Vec<usize>>,
}

impl RowMatch {
    /// Every computed representation matches exactly one row.
    pub fn is_bijective(&self, rows: usize) -> bool {
        self.matches.iter().all(|m| m.len() == 1) && {
            let mut hit: Vec<usize> = self.matches.iter().map(|m| m[0]).collect();
            hit.sort_unstable();
            hit.dedup();
            hit.len() == self.matches.len() && hit.len() == rows
        }
    }

    /// Rows matched by no computed representation.
    pub fn unmatched_rows(&self, rows: usize) -> Vec<usize> {
        (0..rows).filter(|r| !self.matches.iter().any(|m| m.contains(r))).collect()
    }

    /// Computed representations matching no row.
    pub fn unmatched_reps(&self) -> Vec<usize> {
        (0..self.matches.len()).filter(|&i| self.matches[i].is_empty()).collect()
    }
}

pub fn match_rows(computed: &[&dyn Rep], rows: &[TableRow]) -> Result<RowMatch> {
    let mut matches = Vec::with_capacity(computed.len());
    for pi in computed {
        let mut hit = Vec::new();
        for (j, r) in rows.iter().enumerate() {
            if equivalent(*pi, &r.rep)? {
                hit.push(j);
            }
        }
        matches.push(hit);
    }
    Ok(RowMatch { matches })
}
