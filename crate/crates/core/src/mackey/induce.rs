use std::sync::Arc;

use super::rep::Rep;
use crate::crystal::{Character, CrystalGroup, GElement, PointSubgroup};
use crate::error::{invariant, Result};
use crate::numerics::CMatrix;

/// ind from G_H to G_K: block (j, ℓ) of the image of g is σ(t_j⁻¹ g t_ℓ), or 0 off G_H.
#[derive(Clone)]
pub struct InducedRep {
    source: Arc<dyn Rep>,
    domain: PointSubgroup,
    transversal: Vec<usize>,
    inv_transversal: Vec<GElement>,
    dim: usize,
}

/// Induce `source` up to q⁻¹(target); transversal is the ascending canonical one.
pub fn induce(source: Arc<dyn Rep>, target: &PointSubgroup) -> Result<InducedRep> {
    let g = source.group().clone();
    if !source.domain().is_subset_of(target) {
        return Err(invariant("induction target does not contain the source domain"));
    }
    let transversal = source.domain().transversal_in(g.point(), target);
    induce_with(source, target, transversal)
}

/// Induce with an explicit transversal t_j = γ(d_j) (one point element per coset).
pub fn induce_with(source: Arc<dyn Rep>, target: &PointSubgroup, transversal: Vec<usize>) -> Result<InducedRep> {
    let g = source.group().clone();
    let h = source.domain();
    if transversal.len() * h.order() != target.order() {
        return Err(invariant("transversal has the wrong size"));
    }
    for (i, &a) in transversal.iter().enumerate() {
        if !target.contains(a) {
            return Err(invariant("transversal element outside the target"));
        }
        for &b in &transversal[..i] {
            if h.contains(g.point().mul(g.point().inv(b), a)) {
                return Err(invariant("two transversal elements share a coset"));
            }
        }
    }
    let inv_transversal = transversal.iter().map(|&d| g.inv(&g.gamma(d))).collect();
    let dim = transversal.len() * source.dim();
    Ok(InducedRep { source, domain: target.clone(), transversal, inv_transversal, dim })
}

impl InducedRep {
    pub fn source(&self) -> &Arc<dyn Rep> {
        &self.source
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// Orbit characters t_j·χ in transversal order.
    pub fn block_characters(&self) -> Option<Vec<Character>> {
        let g = self.source.group();
        let chi = self.source.base_character()?;
        Some(self.transversal.iter().map(|&d| g.dual_action(d, chi)).collect())
    }
}

impl Rep for InducedRep {
    fn group(&self) -> &Arc<CrystalGroup> {
        self.source.group()
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn domain(&self) -> &PointSubgroup {
        &self.domain
    }
    fn eval(&self, x: &GElement) -> CMatrix {
        let g = self.source.group();
        let p = g.point();
        let h = self.source.domain();
        let m = self.source.dim();
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (l, &tl) in self.transversal.iter().enumerate() {
            let xt = g.mul(x, &g.gamma(tl));
            // Exactly one j puts t_j⁻¹·x·t_ℓ back in G_H.
            let j = (0..self.transversal.len())
                .find(|&j| h.contains(p.mul(p.inv(self.transversal[j]), xt.d)))
                .expect("a transversal covers every coset");
            let y = g.mul(&self.inv_transversal[j], &xt);
            out.set_block(j * m, l * m, &self.source.eval(&y));
        }
        out
    }
    fn base_character(&self) -> Option<&Character> {
        self.source.base_character()
    }
}
