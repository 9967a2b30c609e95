use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use super::path::CharacterPath;
use crate::cocycle::{coboundary, omega_chi, witness_set, NormalizedFunction};
use crate::crystal::{Character, CrystalGroup, GElement, PointSubgroup};
use crate::error::{input, invariant, Error, Result};
use crate::mackey::{induce, relator_defect, InducedRep, Rep, StabRep};
use crate::numerics::{Turn, Q, TAU_EQ};

/// Longest usable schedule; t_k = 1 − 2⁻ᵏ must stay exact in i128.
pub const MAX_SAMPLES: usize = 60;

/// Bound on ‖π_k(g) − L(g)‖ / (1 − t_k) over generators.
pub const CAUCHY_RATE_BOUND: f64 = 100.0;

/// One sampled character with the witness that carries the base projective factor to it.
#[derive(Clone, Debug)]
pub struct PathSample {
    pub t: Q,
    pub chi: Character,
    pub lambda: NormalizedFunction,
    /// False when the closed form failed and the nearest finite witness was used.
    pub closed_form: bool,
}

/// The stabilizer shared by all samples, checked to sit inside the target's stabilizer.
pub fn stabilizer_along(g: &CrystalGroup, path: &CharacterPath) -> Result<PointSubgroup> {
    if path.dim() != g.dim() {
        return Err(input(format!("path has {} coordinates, the lattice has rank {}", path.dim(), g.dim())));
    }
    if path.samples == 0 || path.samples > MAX_SAMPLES {
        return Err(input(format!("sample count must lie in 1..={MAX_SAMPLES}")));
    }
    let ts = path.schedule();
    let stab = g.stabilizer(&path.at(ts[0]));
    for &t in &ts[1..] {
        if g.stabilizer(&path.at(t)) != stab {
            return Err(Error::Degenerate(format!("stabilizer changes along the path at t = {t}")));
        }
    }
    if !stab.is_subset_of(&g.stabilizer(&path.target())) {
        return Err(invariant("path stabilizer is not contained in the target stabilizer"));
    }
    Ok(stab)
}

/// λ(x) = (1/|H|)·Σ_y Δ·ν(x,y): the coboundary of λ is the real cocycle −Δ·ν, i.e. ω_{χ+Δ}·ω̄_χ.
pub fn closed_form_witness(g: &CrystalGroup, h: &PointSubgroup, delta: &[Q]) -> NormalizedFunction {
    let n = Q::from_integer(h.order() as i128);
    let values = h
        .elements()
        .iter()
        .map(|&x| {
            let sum = h.elements().iter().fold(Q::zero(), |acc, &y| {
                g.nu(x, y).iter().zip(delta).fold(acc, |acc, (&v, d)| acc + Q::from_integer(v as i128) * d)
            });
            Turn::exact(sum / n)
        })
        .collect();
    NormalizedFunction::new(h.clone(), values).expect("ν(e, ·) = 0 makes λ normalized")
}

/// Witnesses λ(t) with ω_{χ(t)} = ω_{χ(t₀)}·τ_λ on `h`, for each t in `ts`.
pub fn path_witnesses(g: &CrystalGroup, path: &CharacterPath, t0: Q, h: &PointSubgroup, ts: &[Q]) -> Result<Vec<PathSample>> {
    let base = path.turns(t0);
    let omega0 = omega_chi(g, &path.at(t0), h)?;
    let mut prev = NormalizedFunction::trivial(h);
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let chi = path.at(t);
        let omega = omega_chi(g, &chi, h)?;
        let delta: Vec<Q> = path.turns(t).iter().zip(&base).map(|(a, b)| a - b).collect();
        let want = omega.mul(&omega0.conj());
        let mut lambda = closed_form_witness(g, h, &delta);
        let closed_form = coboundary(&lambda).coincides(&want);
        if !closed_form {
            let set = witness_set(&omega, &omega0)?
                .ok_or_else(|| Error::Numerical(format!("no cohomologous witness at t = {t}")))?;
            lambda = set.nearest(&prev);
        }
        prev = lambda.clone();
        out.push(PathSample { t, chi, lambda, closed_form });
    }
    Ok(out)
}

/// Largest complex distance between consecutive witnesses among the last `tail` samples.
pub fn witness_spread(samples: &[PathSample], tail: usize) -> f64 {
    let start = samples.len().saturating_sub(tail);
    samples[start..]
        .windows(2)
        .map(|w| w[0].lambda.complex_distance(&w[1].lambda))
        .fold(0.0, f64::max)
}

/// σ_k = χ_k*·(Φ·λ_k) along the schedule, and the limit σ = χ*·(Φ·λ) at the target.
#[derive(Clone)]
pub struct GenericSequence {
    pub path: CharacterPath,
    pub stab: PointSubgroup,
    pub base: Arc<StabRep>,
    pub samples: Vec<PathSample>,
    pub terms: Vec<Arc<StabRep>>,
    pub limit_lambda: NormalizedFunction,
    pub limit: Arc<StabRep>,
}

/// `base` must be a stabilizer representation over the first sample.
pub fn generic_sequence(g: &Arc<CrystalGroup>, path: &CharacterPath, base: Arc<StabRep>) -> Result<GenericSequence> {
    let stab = stabilizer_along(g, path)?;
    let ts = path.schedule();
    if base.domain() != &stab || !base.chi().coincides(&path.at(ts[0])) {
        return Err(input("base representation does not live over the first sample"));
    }
    let samples = path_witnesses(g, path, ts[0], &stab, &ts)?;
    let mut terms = Vec::with_capacity(samples.len());
    for s in &samples {
        let term = base.twisted(s.chi.clone(), &s.lambda).map_err(|e| at_sample(e, s.t))?;
        terms.push(Arc::new(term));
    }
    let last = samples.last().expect("at least one sample");
    let limit_sample = path_witnesses(g, path, ts[0], &stab, &[Q::one()])?.pop().expect("one sample");
    let limit_lambda = if limit_sample.closed_form {
        limit_sample.lambda
    } else {
        let omega = omega_chi(g, &path.target(), &stab)?;
        let omega0 = omega_chi(g, &path.at(ts[0]), &stab)?;
        witness_set(&omega, &omega0)?
            .ok_or_else(|| Error::Numerical("no cohomologous witness at the target".into()))?
            .nearest(&last.lambda)
    };
    let limit = Arc::new(base.twisted(path.target(), &limit_lambda)?);
    Ok(GenericSequence { path: path.clone(), stab, base, samples, terms, limit_lambda, limit })
}

fn at_sample(e: Error, t: Q) -> Error {
    match e {
        Error::Invariant(m) => Error::Invariant(format!("{m} (at t = {t})")),
        other => other,
    }
}

/// Elements on which limits and terms are compared: the named generators and the lattice basis.
pub fn comparison_elements(g: &CrystalGroup) -> Vec<GElement> {
    let mut out: Vec<GElement> = g.generators().iter().map(|(_, x)| x.clone()).collect();
    out.extend((0..g.dim()).map(|j| g.lattice_basis(j)));
    out
}

/// L = ind σ, with the audit that the induced terms converge to it entrywise.
#[derive(Clone)]
pub struct EntrywiseLimit {
    pub sequence: GenericSequence,
    pub limit: Arc<InducedRep>,
    /// max_g ‖π_k(g) − L(g)‖ for each sample.
    pub distances: Vec<f64>,
    /// max_k distance_k / (1 − t_k).
    pub rate: f64,
    pub relator_defect: f64,
}

pub fn entrywise_limit(g: &Arc<CrystalGroup>, sequence: GenericSequence) -> Result<EntrywiseLimit> {
    let whole = g.point().whole();
    let limit = Arc::new(induce(sequence.limit.clone(), &whole)?);
    let elements = comparison_elements(g);
    let images: Vec<_> = elements.iter().map(|x| limit.eval(x)).collect();
    let mut distances = Vec::with_capacity(sequence.terms.len());
    let mut rate = 0.0f64;
    for (s, term) in sequence.samples.iter().zip(&sequence.terms) {
        let pi = induce(term.clone(), &whole)?;
        let d = elements.iter().zip(&images).map(|(x, l)| pi.eval(x).dist(l)).fold(0.0, f64::max);
        let gap = (Q::one() - s.t).to_f64().unwrap_or(1.0);
        rate = rate.max(d / gap);
        distances.push(d);
    }
    if rate > CAUCHY_RATE_BOUND {
        return Err(Error::Numerical(format!("terms do not approach the limit linearly (rate {rate:.3e})")));
    }
    let relator_defect = relator_defect(limit.as_ref())?;
    if relator_defect > TAU_EQ {
        return Err(invariant(format!("entrywise limit is not a representation (defect {relator_defect:.3e})")));
    }
    Ok(EntrywiseLimit { sequence, limit, distances, rate, relator_defect })
}
