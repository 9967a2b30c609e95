use std::sync::Arc;

use super::equiv::{equivalent, irreducibility_norm};
use super::induce::{induce, InducedRep};
use super::rep::{homomorphism_defect, relator_defect, Rep};
use super::stab::{lift_to_stab, StabRep};
use crate::cocycle::CocyclePipeline;
use crate::crystal::{Character, CrystalGroup, Orbit};
use crate::error::{input, invariant, Error, Result};
use crate::finiterep::{build_extension, filter_gstar, irreps, Extension};
use crate::numerics::TAU_EQ;

const INDUCED_AUDIT_SAMPLES: usize = 200;

/// The part of Ĝ sitting over one orbit, with every intermediate stage kept for inspection.
#[derive(Clone)]
pub struct OrbitDual {
    pub chi: Character,
    pub orbit: Orbit,
    pub pipeline: CocyclePipeline,
    pub extension: Extension,
    pub stab_reps: Vec<Arc<StabRep>>,
    pub reps: Vec<InducedRep>,
}

impl OrbitDual {
    pub fn dimension_sum(&self) -> usize {
        self.reps.iter().map(|r| r.dim() * r.dim()).sum()
    }
}

/// Steps 1–7 of the construction: stabilizer, ω_χ, finitization, extension, irreps, lift, induce.
pub fn dual_over_orbit(group: &Arc<CrystalGroup>, chi: &Character, seed: u64) -> Result<OrbitDual> {
    if !chi.is_exact() {
        return Err(Error::Input("finitization requires exact character".into()));
    }
    let orbit = group.orbit_stabilizer(chi)?;
    let stab = orbit.stabilizer.clone();
    let pipeline = CocyclePipeline::run(group, chi, &stab)?;
    let extension = build_extension(&stab, &pipeline.finitized.omega_fin, pipeline.finitized.n)?;
    let all = irreps(&extension.group, seed)?;
    let kept = filter_gstar(&all, &extension);

    let whole = group.point().whole();
    let mut stab_reps = Vec::new();
    let mut reps = Vec::new();
    for theta in &kept {
        let sigma = Arc::new(lift_to_stab(group, chi, theta, &extension, &pipeline)?);
        let pi = induce(sigma.clone(), &whole)?;
        stab_reps.push(sigma);
        reps.push(pi);
    }
    let dual = OrbitDual { chi: chi.clone(), orbit, pipeline, extension, stab_reps, reps };
    audit(&dual, group)?;
    Ok(dual)
}

fn audit(dual: &OrbitDual, group: &CrystalGroup) -> Result<()> {
    let want = dual.orbit.size() * group.point().order();
    if dual.dimension_sum() != want {
        return Err(invariant(format!("Σdim² = {} but |orbit|·|D| = {want}", dual.dimension_sum())));
    }
    for (i, pi) in dual.reps.iter().enumerate() {
        let hom = homomorphism_defect(pi, INDUCED_AUDIT_SAMPLES, 0xa0d1 + i as u64);
        let rel = relator_defect(pi)?;
        if hom.max(rel) > TAU_EQ {
            return Err(invariant(format!("induced representation {} fails audit ({hom:.3e}, {rel:.3e})", i + 1)));
        }
        let norm = irreducibility_norm(pi)?;
        if (norm - 1.0).abs() > 1e-8 {
            return Err(invariant(format!("induced representation {} is reducible (norm {norm})", i + 1)));
        }
        for (j, other) in dual.reps[..i].iter().enumerate() {
            if equivalent(pi, other)? {
                return Err(invariant(format!("representations {} and {} are equivalent", j + 1, i + 1)));
            }
        }
    }
    Ok(())
}

/// Shared handle for building duals from a character string.
pub fn dual_from_str(group: &Arc<CrystalGroup>, chi: &str, seed: u64) -> Result<OrbitDual> {
    let chi: Character = chi.parse().map_err(|e: Error| input(e.to_string()))?;
    dual_over_orbit(group, &chi, seed)
}
