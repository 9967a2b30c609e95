use std::sync::Arc;

use super::rep::{homomorphism_defect, Rep};
use crate::cocycle::{omega_chi, CocyclePipeline, NormalizedFunction};
use crate::crystal::{Character, CrystalGroup, GElement, PointSubgroup};
use crate::error::{invariant, Result};
use crate::finiterep::{extract_projective, Extension, FiniteRep, ProjectiveRep};
use crate::numerics::{CMatrix, Turn, TAU_EQ};

/// Homomorphism samples used when auditing a freshly built representation.
pub const AUDIT_SAMPLES: usize = 1000;

/// χ*(x) = χ(γ(q(x))⁻¹x) = χ(M_d⁻¹n) for x = (n, d) ∈ G_χ.
pub fn chi_star(g: &CrystalGroup, chi: &Character, stab: &PointSubgroup, x: &GElement) -> Result<Turn> {
    if !stab.contains(x.d) {
        return Err(invariant(format!("chi_star: point part '{}' is outside the stabilizer", g.point().name(x.d))));
    }
    Ok(chi.eval(&g.inv_action(x.d).apply(&x.n)))
}

/// σ(x) = χ*(x)·Φ(q(x)) on G_χ for an ω_χ-representation Φ of D_χ (or of a subgroup of it).
#[derive(Clone)]
pub struct StabRep {
    group: Arc<CrystalGroup>,
    chi: Character,
    phi: ProjectiveRep,
}

impl StabRep {
    /// Φ must be an ω_χ-representation of its subgroup, which must fix χ.
    pub fn new(group: &Arc<CrystalGroup>, chi: Character, phi: ProjectiveRep) -> Result<StabRep> {
        let omega = omega_chi(group, &chi, &phi.group)?;
        let d = phi.defect(&omega);
        if d > TAU_EQ {
            return Err(invariant(format!("projective factor is not an ω_χ-representation (defect {d:.3e})")));
        }
        Ok(StabRep { group: group.clone(), chi, phi })
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    pub fn projective(&self) -> &ProjectiveRep {
        &self.phi
    }

    /// The same projective factor rescaled pointwise by λ, over a new character.
    pub fn twisted(&self, chi: Character, lambda: &NormalizedFunction) -> Result<StabRep> {
        StabRep::new(&self.group, chi, self.phi.scaled(lambda))
    }

    /// Images σ(γ(h)) for h in the domain, and σ(n_j) for the lattice basis.
    pub fn generator_images(&self) -> (Vec<CMatrix>, Vec<CMatrix>) {
        let g = &self.group;
        let pts = self.phi.group.elements().iter().map(|&h| self.eval(&g.gamma(h))).collect();
        let lat = (0..g.dim()).map(|j| self.eval(&g.lattice_basis(j))).collect();
        (pts, lat)
    }
}

impl Rep for StabRep {
    fn group(&self) -> &Arc<CrystalGroup> {
        &self.group
    }
    fn dim(&self) -> usize {
        self.phi.dim()
    }
    fn domain(&self) -> &PointSubgroup {
        &self.phi.group
    }
    fn eval(&self, x: &GElement) -> CMatrix {
        let local = self.phi.group.local(x.d).expect("element outside the stabilizer domain");
        let phase = self.chi.eval(&self.group.inv_action(x.d).apply(&x.n));
        self.phi.mats[local].scale(phase.to_complex())
    }
    fn base_character(&self) -> Option<&Character> {
        Some(&self.chi)
    }
}

/// Θ ↦ χ*·((Φ_fin·eq⁻¹·fin⁻¹)∘q), audited to be a homomorphism restricting to χ on N.
pub fn lift_to_stab(
    group: &Arc<CrystalGroup>,
    chi: &Character,
    theta: &FiniteRep,
    ext: &Extension,
    pipeline: &CocyclePipeline,
) -> Result<StabRep> {
    let phi_fin = extract_projective(theta, ext)?;
    let phi = phi_fin.scaled(&pipeline.lift_factor());
    let sigma = StabRep::new(group, chi.clone(), phi)?;
    let defect = homomorphism_defect(&sigma, AUDIT_SAMPLES, 0x5eed);
    if defect > TAU_EQ {
        return Err(invariant(format!("lifted representation fails the product audit (defect {defect:.3e})")));
    }
    for j in 0..group.dim() {
        let img = sigma.eval(&group.lattice_basis(j));
        let want = CMatrix::scalar(sigma.dim(), chi.u[j].to_complex());
        if img.dist(&want) > TAU_EQ {
            return Err(invariant("lifted representation does not restrict to χ on the lattice"));
        }
    }
    Ok(sigma)
}
