//! Finite groups, the central extension G(ℤ_n, H, ω_fin), and numerical irreducible
//! representations by commutant splitting of the regular representation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle::{finite_exponents, NormalizedFunction, TwoCocycle};
use crate::crystal::PointSubgroup;
use crate::error::{input, invariant, Error, Result};
use crate::numerics::{cluster_indices, hermitian_eig, CMatrix, Turn, C, TAU_EQ, TAU_MAT};

const MAX_ORDER: usize = 10_000;
const MAX_RETRIES: usize = 16;
const CLUSTER_GAP: f64 = 1e-6;
const SCALAR_TOL: f64 = 1e-7;

/// A finite group given by its multiplication table; index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    mult: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Verify the axioms exhaustively.
    pub fn new(labels: Vec<String>, mult: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 || n > MAX_ORDER {
            return Err(input(format!("group order {n} outside 1..={MAX_ORDER}")));
        }
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(input("multiplication table has the wrong shape"));
        }
        let flat: Vec<usize> = mult.concat();
        let m = |x: usize, y: usize| flat[x * n + y];
        for x in 0..n {
            if m(0, x) != x || m(x, 0) != x {
                return Err(invariant("index 0 is not the identity"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = m(x, y);
                for z in 0..n {
                    if m(xy, z) != m(x, m(y, z)) {
                        return Err(invariant(format!("not associative at ({}, {}, {})", labels[x], labels[y], labels[z])));
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| m(x, y) == 0 && m(y, x) == 0) {
                Some(y) => inv.push(y),
                None => return Err(invariant(format!("'{}' has no inverse", labels[x]))),
            }
        }
        Ok(FiniteGroup { labels, mult: flat, inv })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.order() + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// Conjugacy classes, each listed in ascending index order.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.mul(self.mul(g, x), self.inv(g))).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }
}

/// A unitary representation given by one matrix per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteRep {
    pub dim: usize,
    pub mats: Vec<CMatrix>,
}

impl FiniteRep {
    pub fn character(&self) -> Vec<C> {
        self.mats.iter().map(CMatrix::trace).collect()
    }

    /// Largest of the homomorphism and unitarity defects.
    pub fn defect(&self, g: &FiniteGroup) -> f64 {
        let mut worst = self.mats[0].dist(&CMatrix::identity(self.dim));
        for x in 0..g.order() {
            worst = worst.max(self.mats[x].unitarity_defect());
            for y in 0..g.order() {
                worst = worst.max(self.mats[g.mul(x, y)].dist(&(&self.mats[x] * &self.mats[y])));
            }
        }
        worst
    }
}

/// Normalized inner product of character vectors, (1/|G|)Σ χ₁(g)·conj χ₂(g).
pub fn character_inner(a: &[C], b: &[C]) -> C {
    let n = a.len() as f64;
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<C>() / n
}

/// The central extension G(ℤ_n, H, ω_fin); element (a, h) has index a + n·local(h).
#[derive(Clone, Debug)]
pub struct Extension {
    pub group: FiniteGroup,
    pub subgroup: PointSubgroup,
    pub omega_fin: TwoCocycle,
    pub n: usize,
}

impl Extension {
    pub fn index(&self, a: usize, h: usize) -> usize {
        a % self.n + self.n * h
    }
}

/// (a₁,h₁)(a₂,h₂) = (a₁ + a₂ − w(h₁,h₂) mod n, h₁h₂) where ω_fin = exp(2πi·w/n).
pub fn build_extension(h: &PointSubgroup, omega_fin: &TwoCocycle, n: usize) -> Result<Extension> {
    if omega_fin.group() != h {
        return Err(input("cocycle lives on a different subgroup"));
    }
    if n == 0 || !omega_fin.is_finitized(n as u64) {
        return Err(Error::Input("cocycle not finitized".into()));
    }
    let w = finite_exponents(omega_fin, n)?;
    let k = h.order();
    let size = n * k;
    let mut labels = Vec::with_capacity(size);
    for x in 0..k {
        for a in 0..n {
            labels.push(format!("({a},{})", h.name(x)));
        }
    }
    let mut mult = vec![vec![0; size]; size];
    for x1 in 0..k {
        for a1 in 0..n {
            for x2 in 0..k {
                for a2 in 0..n {
                    let a = (a1 + a2 + n - w[x1 * k + x2]) % n;
                    mult[a1 + n * x1][a2 + n * x2] = a + n * h.mul(x1, x2);
                }
            }
        }
    }
    let group = FiniteGroup::new(labels, mult)?;
    Ok(Extension { group, subgroup: h.clone(), omega_fin: omega_fin.clone(), n })
}

/// All irreducible unitary representations, deterministic for a given seed.
pub fn irreps(g: &FiniteGroup, seed: u64) -> Result<Vec<FiniteRep>> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::new();
    split(g, CMatrix::identity(n), &mut rng, &mut blocks, 0)?;

    let mut reps: Vec<FiniteRep> = Vec::new();
    let mut chars: Vec<Vec<C>> = Vec::new();
    for mut basis in blocks {
        basis.orthonormalize_columns();
        let rep = restrict_regular(g, &basis);
        let ch = rep.character();
        if chars.iter().any(|c| c.iter().zip(&ch).all(|(a, b)| (a - b).norm() <= TAU_EQ)) {
            continue;
        }
        chars.push(ch);
        reps.push(rep);
    }
    reps.sort_by_key(|r| r.dim);

    let classes = g.conjugacy_classes().len();
    let total: usize = reps.iter().map(|r| r.dim * r.dim).sum();
    if reps.len() != classes || total != n {
        return Err(Error::Numerical(format!(
            "irreducible splitting incomplete: {} reps for {classes} classes, Σdim² = {total} vs |G| = {n}",
            reps.len()
        )));
    }
    for r in &reps {
        let d = r.defect(g);
        if d > TAU_MAT {
            return Err(Error::Numerical(format!("representation defect {d:.3e} exceeds tolerance")));
        }
    }
    Ok(reps)
}

// ρ_B(g) = B*·R(g)·B with (R(g)B)_{i,·} = B_{g⁻¹i,·}.
fn restrict_regular(g: &FiniteGroup, basis: &CMatrix) -> FiniteRep {
    let n = g.order();
    let m = basis.cols();
    let adj = basis.adjoint();
    let mats = (0..n)
        .map(|x| {
            let gi = g.inv(x);
            let moved = CMatrix::from_fn(n, m, |i, j| basis[(g.mul(gi, i), j)]);
            &adj * &moved
        })
        .collect();
    FiniteRep { dim: m, mats }
}

fn random_hermitian(m: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut x = CMatrix::zeros(m, m);
    for i in 0..m {
        x[(i, i)] = C::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..m {
            let z = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            x[(i, j)] = z;
            x[(j, i)] = z.conj();
        }
    }
    x
}

// Reynolds average (1/|G|)Σ ρ(g) X ρ(g)*.
fn average(rep: &FiniteRep, x: &CMatrix) -> CMatrix {
    let mut acc = CMatrix::zeros(rep.dim, rep.dim);
    for m in &rep.mats {
        acc = &acc + &(&(m * x) * &m.adjoint());
    }
    acc.scale(C::new(1.0 / rep.mats.len() as f64, 0.0))
}

fn is_scalar(a: &CMatrix) -> bool {
    let m = a.rows();
    let mean = a.trace() / m as f64;
    a.dist(&CMatrix::scalar(m, mean)) <= SCALAR_TOL
}

fn split(g: &FiniteGroup, basis: CMatrix, rng: &mut ChaCha8Rng, out: &mut Vec<CMatrix>, depth: usize) -> Result<()> {
    let rep = restrict_regular(g, &basis);
    for _ in 0..MAX_RETRIES {
        let probe = average(&rep, &random_hermitian(rep.dim, rng));
        if is_scalar(&probe) {
            out.push(basis);
            return Ok(());
        }
        let eig = hermitian_eig(&probe)?;
        let clusters = cluster_indices(&eig.values, CLUSTER_GAP);
        if clusters.len() < 2 {
            continue;
        }
        if depth > 64 {
            break;
        }
        for c in clusters {
            let sub = &basis * &eig.vectors.select_columns(&c);
            split(g, sub, rng, out, depth + 1)?;
        }
        return Ok(());
    }
    Err(Error::Numerical(format!(
        "commutant splitting did not converge on a block of dimension {} after {MAX_RETRIES} probes",
        rep.dim
    )))
}

/// Keep the Θ with Θ(λ, e) = λ·I for every λ ∈ ℤ_n.
pub fn filter_gstar(reps: &[FiniteRep], ext: &Extension) -> Vec<FiniteRep> {
    reps.iter()
        .filter(|r| {
            (0..ext.n).all(|a| {
                let lambda = Turn::ratio(a as i128, ext.n as i128).to_complex();
                r.mats[ext.index(a, 0)].dist(&CMatrix::scalar(r.dim, lambda)) <= TAU_EQ
            })
        })
        .cloned()
        .collect()
}

/// A projective representation Φ of a point subgroup, Φ(xy) = ω(x,y)Φ(x)Φ(y).
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveRep {
    pub group: PointSubgroup,
    pub mats: Vec<CMatrix>,
}

impl ProjectiveRep {
    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }

    /// max ‖Φ(xy) − ω(x,y)Φ(x)Φ(y)‖ over all pairs.
    pub fn defect(&self, omega: &TwoCocycle) -> f64 {
        let h = &self.group;
        let mut worst = 0.0f64;
        for x in 0..h.order() {
            worst = worst.max(self.mats[x].unitarity_defect());
            for y in 0..h.order() {
                let rhs = (&self.mats[x] * &self.mats[y]).scale(omega.get(x, y).to_complex());
                worst = worst.max(self.mats[h.mul(x, y)].dist(&rhs));
            }
        }
        worst
    }

    /// Pointwise rescaling Φ·λ, an (ω·τ_λ)-representation.
    pub fn scaled(&self, lambda: &NormalizedFunction) -> ProjectiveRep {
        let mats = self.mats.iter().zip(lambda.values()).map(|(m, t)| m.scale(t.to_complex())).collect();
        ProjectiveRep { group: self.group.clone(), mats }
    }

    pub fn character(&self) -> Vec<C> {
        self.mats.iter().map(CMatrix::trace).collect()
    }
}

/// Φ(h) = Θ(0, h), audited against ω_fin.
pub fn extract_projective(theta: &FiniteRep, ext: &Extension) -> Result<ProjectiveRep> {
    let mats = (0..ext.subgroup.order()).map(|h| theta.mats[ext.index(0, h)].clone()).collect();
    let phi = ProjectiveRep { group: ext.subgroup.clone(), mats };
    let d = phi.defect(&ext.omega_fin);
    if d > TAU_EQ {
        return Err(invariant(format!("projective multiplicativity defect {d:.3e}")));
    }
    Ok(phi)
}

/// All irreducible ω_fin-representations of H via the extension.
pub fn projective_irreps(h: &PointSubgroup, omega_fin: &TwoCocycle, n: usize, seed: u64) -> Result<Vec<ProjectiveRep>> {
    let ext = build_extension(h, omega_fin, n)?;
    let all = irreps(&ext.group, seed)?;
    let kept = filter_gstar(&all, &ext);
    let total: usize = kept.iter().map(|r| r.dim * r.dim).sum();
    if total != h.order() {
        return Err(Error::Numerical(format!("Σdim² over the filtered set is {total}, expected {}", h.order())));
    }
    kept.iter().map(|t| extract_projective(t, &ext)).collect()
}

