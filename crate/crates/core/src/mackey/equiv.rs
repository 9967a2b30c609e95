use super::rep::{lattice_images, Rep};
use crate::crystal::{Character, GElement, PointSubgroup};
use crate::error::{input, invariant, Result};
use crate::numerics::{CMatrix, C, ONE, TAU_EQ};

const PROJECTOR_TOL: f64 = 1e-6;

/// Characters d·χ for d in K, without repeats, in ascending order of d.
pub fn sub_orbit(rep: &dyn Rep, chi: &Character) -> Vec<Character> {
    let g = rep.group();
    let mut out: Vec<Character> = Vec::new();
    for &d in rep.domain().elements() {
        let c = g.dual_action(d, chi);
        if !out.iter().any(|o| o.coincides(&c)) {
            out.push(c);
        }
    }
    out
}

/// {h ∈ K : h·χ = χ}.
pub fn sub_stabilizer(rep: &dyn Rep, chi: &Character) -> PointSubgroup {
    let g = rep.group();
    let els = rep.domain().elements().iter().copied().filter(|&d| g.dual_action(d, chi).coincides(chi)).collect();
    PointSubgroup::new(g.point(), els).expect("a stabilizer is a subgroup")
}

/// Projector onto the ψ-isotypic subspace of the lattice action, by Lagrange interpolation
/// in each coordinate over the values the orbit takes.
pub fn isotypic_projector(lattice: &[CMatrix], orbit: &[Character], psi: &Character) -> CMatrix {
    let dim = lattice[0].rows();
    let mut p = CMatrix::identity(dim);
    for (j, nj) in lattice.iter().enumerate() {
        let u = psi.u[j];
        let mut seen: Vec<crate::numerics::Turn> = Vec::new();
        for c in orbit {
            let mu = c.u[j];
            if mu.coincides(&u) || seen.iter().any(|s| s.coincides(&mu)) {
                continue;
            }
            seen.push(mu);
            let (uc, mc) = (u.to_complex(), mu.to_complex());
            let factor = (nj - &CMatrix::scalar(dim, mc)).scale(ONE / (uc - mc));
            p = &p * &factor;
        }
    }
    p
}

/// The χ-isotypic projector of a representation, checked to be a projector with the whole
/// lattice spectrum inside the orbit.
pub fn checked_projector(rep: &dyn Rep, chi: &Character) -> Result<CMatrix> {
    let orbit = sub_orbit(rep, chi);
    let lattice = lattice_images(rep);
    let mut total = CMatrix::zeros(rep.dim(), rep.dim());
    let mut mine = None;
    for psi in &orbit {
        let p = isotypic_projector(&lattice, &orbit, psi);
        if (&p * &p).dist(&p) > PROJECTOR_TOL {
            return Err(invariant("isotypic projector is not idempotent"));
        }
        total = &total + &p;
        if psi.coincides(chi) {
            mine = Some(p);
        }
    }
    if total.dist(&CMatrix::identity(rep.dim())) > PROJECTOR_TOL {
        return Err(invariant("lattice spectrum leaves the orbit"));
    }
    mine.ok_or_else(|| invariant("character missing from its own orbit"))
}

/// h ↦ Tr(P_χ·π(γ(h))) on the stabilizer of χ inside the domain.
pub fn stabilizer_character(rep: &dyn Rep, chi: &Character) -> Result<(PointSubgroup, Vec<C>)> {
    let p = checked_projector(rep, chi)?;
    let stab = sub_stabilizer(rep, chi);
    let g = rep.group();
    let tr = stab.elements().iter().map(|&h| (&p * &rep.eval(&g.gamma(h))).trace()).collect();
    Ok((stab, tr))
}

/// (1/|D_χ|)Σ|Tr P_χπ(γ(h))|²; equals 1 exactly when π is irreducible.
pub fn irreducibility_norm(rep: &dyn Rep) -> Result<f64> {
    let chi = rep.base_character().ok_or_else(|| input("representation has no base character"))?.clone();
    let (stab, tr) = stabilizer_character(rep, &chi)?;
    Ok(tr.iter().map(|z| z.norm_sqr()).sum::<f64>() / stab.order() as f64)
}

/// Finite Mackey criterion: base characters in one orbit and equal χ-isotypic stabilizer characters.
pub fn equivalent(a: &dyn Rep, b: &dyn Rep) -> Result<bool> {
    if a.group().name() != b.group().name() || a.domain() != b.domain() {
        return Err(input("equivalence needs representations of the same group"));
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let (a, b) = if a.base_character().is_some() { (a, b) } else { (b, a) };
    let chi = a.base_character().ok_or_else(|| input("neither representation has a base character"))?.clone();
    if let Some(other) = b.base_character() {
        if !sub_orbit(a, &chi).iter().any(|c| c.coincides(other)) {
            return Ok(false);
        }
    }
    let (_, ta) = stabilizer_character(a, &chi)?;
    let tb = match stabilizer_character(b, &chi) {
        Ok((_, t)) => t,
        Err(_) => return Ok(false),
    };
    Ok(ta.iter().zip(&tb).all(|(x, y)| (x - y).norm() <= TAU_EQ))
}

/// Largest trace difference over the word ball {(n, d) : |n_i| ≤ radius}; a secondary diagnostic.
pub fn word_ball_character_distance(a: &dyn Rep, b: &dyn Rep, radius: i64) -> f64 {
    let g = a.group();
    let r = g.dim();
    let mut worst = 0.0f64;
    let side = (2 * radius + 1) as usize;
    for code in 0..side.pow(r as u32) {
        let mut c = code;
        let n: Vec<i64> = (0..r)
            .map(|_| {
                let v = (c % side) as i64 - radius;
                c /= side;
                v
            })
            .collect();
        for &d in a.domain().elements() {
            let x = GElement::new(n.clone(), d);
            worst = worst.max((a.eval(&x).trace() - b.eval(&x).trace()).norm());
        }
    }
    worst
}
