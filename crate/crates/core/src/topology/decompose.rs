use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::path::CharacterPath;
use super::sequence::{entrywise_limit, generic_sequence, witness_spread, EntrywiseLimit};
use crate::crystal::{Character, CrystalGroup};
use crate::error::{input, invariant, Error, Result};
use crate::group90::{reference_rows, is_group90, match_rows};
use crate::mackey::{
    dual_over_orbit, equivalent, induce, irreducibility_norm, isotypic_projector, lattice_images, sub_orbit,
    BlockRep, InducedRep, OrbitDual, Rep,
};
use crate::numerics::{cluster_indices, hermitian_eig, CMatrix, C, TAU_EQ};

/// Multiplicities further than this from an integer are rejected.
pub const ROUNDING_LIMIT: f64 = 1e-4;

/// Largest allowed off-block mass after block diagonalization.
pub const LEAKAGE_LIMIT: f64 = 1e-7;

const BLOCK_RETRIES: u64 = 16;

fn isotypic_check(rep: &dyn Rep, chi: &Character) -> Result<()> {
    for (j, m) in lattice_images(rep).iter().enumerate() {
        if m.dist(&CMatrix::scalar(rep.dim(), chi.u[j].to_complex())) > TAU_EQ {
            return Err(invariant("not χ-isotypic"));
        }
    }
    Ok(())
}

fn inner_with(a: &dyn Rep, b: &dyn Rep, shift: impl Fn(usize) -> Vec<i64>) -> Result<f64> {
    let g = a.group();
    let k = a.domain();
    let mut sum = C::new(0.0, 0.0);
    for (i, &h) in k.elements().iter().enumerate() {
        let x = g.mul(&g.lattice(shift(i)), &g.gamma(h));
        sum += a.eval(&x).trace() * b.eval(&x).trace().conj();
    }
    let z = sum / k.order() as f64;
    if z.im.abs() > 1e-8 {
        return Err(Error::Numerical(format!("character inner product is not real ({:.3e})", z.im)));
    }
    Ok(z.re)
}

/// ⟨σ,ρ⟩ = (1/|K|)·Σ_{h∈K} Tr σ(γ(h))·conj Tr ρ(γ(h)) for two χ-isotypic representations of G_K.
pub fn inner_product(sigma: &dyn Rep, rho: &dyn Rep, chi: &Character) -> Result<f64> {
    let g = sigma.group();
    if sigma.domain() != rho.domain() {
        return Err(input("inner product needs representations of the same subgroup"));
    }
    if sigma.domain().elements().iter().any(|&h| !g.dual_action(h, chi).coincides(chi)) {
        return Err(input("subgroup does not fix the character"));
    }
    isotypic_check(sigma, chi)?;
    isotypic_check(rho, chi)?;
    inner_with(sigma, rho, |_| vec![0; g.dim()])
}

/// The same inner product over the shifted transversal {n_h·γ(h)} with seeded random n_h.
pub fn inner_product_shifted(sigma: &dyn Rep, rho: &dyn Rep, chi: &Character, seed: u64) -> Result<f64> {
    inner_product(sigma, rho, chi)?;
    let r = sigma.group().dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifts: Vec<Vec<i64>> =
        (0..sigma.domain().order()).map(|_| (0..r).map(|_| rng.gen_range(-5..=5)).collect()).collect();
    inner_with(sigma, rho, |i| shifts[i].clone())
}

/// Labels for the representations of a dual, with the order in which they should be listed.
/// For group 90 these are the reference row names; otherwise ρ1, ρ2, ... in computed order.
pub fn dual_labels(g: &Arc<CrystalGroup>, dual: &OrbitDual) -> Result<Vec<(usize, String)>> {
    let fallback = || (0..dual.reps.len()).map(|i| (i, format!("ρ{}", i + 1))).collect();
    if !is_group90(g) {
        return Ok(fallback());
    }
    let rows = reference_rows(g, &dual.chi)?;
    let computed: Vec<&dyn Rep> = dual.reps.iter().map(|r| r as &dyn Rep).collect();
    let m = match_rows(&computed, &rows)?;
    let mut keyed: Vec<(usize, usize, String)> = m
        .matches
        .iter()
        .enumerate()
        .map(|(i, hit)| match hit.as_slice() {
            [] => (rows.len() + i, i, format!("ρ{}", i + 1)),
            [first, ..] => {
                let names: Vec<&str> = hit.iter().map(|&j| rows[j].label.as_str()).collect();
                (*first, i, names.join("/"))
            }
        })
        .collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, i, l)| (i, l)).collect())
}

/// A constituent ind ρ_j of the limit with its multiplicity.
#[derive(Clone, Debug)]
pub struct Constituent {
    pub label: String,
    pub stab_dim: usize,
    pub dim: usize,
    pub inner: f64,
    pub multiplicity: usize,
}

/// U with U·L(g)·U* block diagonal; blocks listed in order with their labels.
#[derive(Clone, Debug)]
pub struct BlockDiagonalization {
    pub unitary: CMatrix,
    pub blocks: Vec<(String, usize)>,
    pub leakage: f64,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub path: CharacterPath,
    pub source: Character,
    pub target: Character,
    pub branch: String,
    pub source_stabilizer: String,
    pub target_stabilizer: String,
    pub limit_dim: usize,
    pub constituents: Vec<Constituent>,
    /// Largest distance of an inner product from its rounded multiplicity.
    pub residual: f64,
    /// ⟨σ,σ⟩ for the stabilizer-level limit; 1 exactly when the limit is irreducible.
    pub self_inner: f64,
    pub transversal_shift: f64,
    pub cauchy_rate: f64,
    pub witness_spread: f64,
    pub closed_form_witnesses: bool,
    pub limit_relator_defect: f64,
    pub block_diagonalization: Option<BlockDiagonalization>,
}

impl DecompositionReport {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.constituents.iter().map(|c| c.multiplicity).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LimitOptions {
    pub seed: u64,
    pub with_unitary: bool,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions { seed: 0, with_unitary: true }
    }
}

/// Everything computed for one branch of a path.
#[derive(Clone)]
pub struct LimitRun {
    pub source_dual: OrbitDual,
    pub target_dual: OrbitDual,
    pub limit: EntrywiseLimit,
    pub report: DecompositionReport,
}

/// Branches over the first sample: (index into the dual, label), in listing order.
pub fn branches(g: &Arc<CrystalGroup>, path: &CharacterPath, seed: u64) -> Result<(OrbitDual, Vec<(usize, String)>)> {
    let first = path.at(path.schedule()[0]);
    let dual = dual_over_orbit(g, &first, seed)?;
    let labels = dual_labels(g, &dual)?;
    Ok((dual, labels))
}

/// Generic sequence along `path` for branch `branch` (1-based), its entrywise limit and its decomposition.
pub fn decompose_limit(g: &Arc<CrystalGroup>, path: &CharacterPath, branch: usize, opts: LimitOptions) -> Result<LimitRun> {
    let (source_dual, labels) = branches(g, path, opts.seed)?;
    if branch == 0 || branch > labels.len() {
        return Err(input(format!("branch {branch} out of range 1..={}", labels.len())));
    }
    let (index, branch_label) = labels[branch - 1].clone();
    let base = source_dual.stab_reps[index].clone();
    let sequence = generic_sequence(g, path, base)?;
    let limit = entrywise_limit(g, sequence)?;

    let target = path.target();
    let target_dual = dual_over_orbit(g, &target, opts.seed)?;
    let target_stab = target_dual.orbit.stabilizer.clone();
    let sigma = induce(limit.sequence.limit.clone(), &target_stab)?;
    let target_labels = dual_labels(g, &target_dual)?;

    let mut constituents = Vec::new();
    let mut residual = 0.0f64;
    let mut shift = 0.0f64;
    for (k, (i, label)) in target_labels.iter().enumerate() {
        let rho = target_dual.stab_reps[*i].as_ref();
        let inner = inner_product(&sigma, rho, &target)?;
        let shifted = inner_product_shifted(&sigma, rho, &target, opts.seed + k as u64)?;
        shift = shift.max((inner - shifted).abs());
        let m = inner.round().max(0.0);
        residual = residual.max((inner - m).abs());
        constituents.push(Constituent {
            label: label.clone(),
            stab_dim: rho.dim(),
            dim: target_dual.reps[*i].dim(),
            inner,
            multiplicity: m as usize,
        });
    }
    if residual > ROUNDING_LIMIT {
        return Err(Error::Numerical(format!("non-integral multiplicity (residual {residual:.3e})")));
    }
    let limit_dim = limit.limit.dim();
    let accounted: usize = constituents.iter().map(|c| c.multiplicity * c.dim).sum();
    if accounted != limit_dim {
        return Err(invariant(format!("constituents account for dimension {accounted}, the limit has {limit_dim}")));
    }
    let self_inner = inner_product(&sigma, &sigma, &target)?;

    let block_diagonalization = if opts.with_unitary {
        let named: Vec<(String, &InducedRep)> =
            target_labels.iter().map(|(i, l)| (l.clone(), &target_dual.reps[*i])).collect();
        Some(block_diagonalize(limit.limit.clone(), &target, &named, opts.seed)?)
    } else {
        None
    };

    let report = DecompositionReport {
        path: path.clone(),
        source: source_dual.chi.clone(),
        target,
        branch: branch_label,
        source_stabilizer: stabilizer_name(g, &limit.sequence.stab),
        target_stabilizer: stabilizer_name(g, &target_stab),
        limit_dim,
        constituents,
        residual,
        self_inner,
        transversal_shift: shift,
        cauchy_rate: limit.rate,
        witness_spread: witness_spread(&limit.sequence.samples, 4),
        closed_form_witnesses: limit.sequence.samples.iter().all(|s| s.closed_form),
        limit_relator_defect: limit.relator_defect,
        block_diagonalization,
    };
    Ok(LimitRun { source_dual, target_dual, limit, report })
}

fn stabilizer_name(g: &CrystalGroup, k: &crate::crystal::PointSubgroup) -> String {
    if is_group90(g) {
        crate::group90::subgroup_label(g, k)
    } else {
        k.to_string()
    }
}

/// Split L into irreducible blocks with a seeded Hermitian element of its commutant.
/// The commutant projection keeps the lattice-isotypic blocks of a probe and averages it over γ(D).
pub fn block_diagonalize(
    limit: Arc<dyn Rep>,
    target: &Character,
    constituents: &[(String, &InducedRep)],
    seed: u64,
) -> Result<BlockDiagonalization> {
    let g = limit.group().clone();
    let n = limit.dim();
    let lattice = lattice_images(limit.as_ref());
    let orbit = sub_orbit(limit.as_ref(), target);
    let projectors: Vec<CMatrix> = orbit.iter().map(|psi| isotypic_projector(&lattice, &orbit, psi)).collect();
    let point: Vec<CMatrix> = (0..g.point().order()).map(|d| limit.eval(&g.gamma(d))).collect();
    for attempt in 0..BLOCK_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb10c_0000 ^ attempt);
        let x = CMatrix::from_fn(n, n, |_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let x = (&x + &x.adjoint()).scale(C::new(0.5, 0.0));
        let mut y = CMatrix::zeros(n, n);
        for p in &projectors {
            y = &y + &(&(p * &x) * &p.adjoint());
        }
        let mut z = CMatrix::zeros(n, n);
        for m in &point {
            z = &z + &(&(m * &y) * &m.adjoint());
        }
        let z = z.scale(C::new(1.0 / point.len() as f64, 0.0));
        let z = (&z + &z.adjoint()).scale(C::new(0.5, 0.0));
        let eig = hermitian_eig(&z)?;
        let clusters = cluster_indices(&eig.values, 1e-6);
        let mut blocks: Vec<(usize, String, CMatrix)> = Vec::new();
        let mut ok = true;
        for cluster in clusters {
            let basis = eig.vectors.select_columns(&cluster);
            let block = BlockRep::new(limit.clone(), basis.clone(), Some(target.clone()))?;
            let norm = irreducibility_norm(&block)?;
            if (norm - 1.0).abs() > 1e-8 {
                ok = false;
                break;
            }
            let found = constituents.iter().enumerate().find_map(|(k, (label, rep))| {
                equivalent(&block, *rep).ok().filter(|&e| e).map(|_| (k, label.clone()))
            });
            match found {
                Some((k, label)) => blocks.push((k, label, basis)),
                None => return Err(invariant("a block of the limit matches no constituent")),
            }
        }
        if !ok {
            continue;
        }
        blocks.sort_by_key(|(k, _, _)| *k);
        let bases: Vec<CMatrix> = blocks.iter().map(|(_, _, b)| b.clone()).collect();
        let sizes: Vec<usize> = bases.iter().map(CMatrix::cols).collect();
        let b = CMatrix::hstack(&bases);
        let u = b.adjoint();
        let mut leakage = 0.0f64;
        for x in super::sequence::comparison_elements(&g).iter().chain(&(0..g.point().order()).map(|d| g.gamma(d)).collect::<Vec<_>>()) {
            let m = &(&u * &limit.eval(x)) * &b;
            leakage = leakage.max(m.off_block_max(&sizes));
        }
        if leakage > LEAKAGE_LIMIT {
            return Err(Error::Numerical(format!("block diagonalization leaks {leakage:.3e}")));
        }
        let blocks = blocks.into_iter().zip(sizes).map(|((_, l, _), s)| (l, s)).collect();
        return Ok(BlockDiagonalization { unitary: u, blocks, leakage });
    }
    Err(Error::Numerical("commutant probes failed to split the limit into irreducible blocks".into()))
}
