use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crystal::{Character, CrystalGroup, GElement, PointSubgroup};
use crate::error::{input, invariant, Result};
use crate::numerics::{CMatrix, TAU_MAT};

/// A unitary representation of G_K = q⁻¹(K) for a point subgroup K (K = D for representations of G).
pub trait Rep: Send + Sync {
    fn group(&self) -> &Arc<CrystalGroup>;
    fn dim(&self) -> usize;
    fn domain(&self) -> &PointSubgroup;
    /// Image of x; x must lie in G_K.
    fn eval(&self, x: &GElement) -> CMatrix;
    /// The lattice character the representation was built over, when known.
    fn base_character(&self) -> Option<&Character> {
        None
    }
}

/// Images of the lattice basis vectors.
pub fn lattice_images(rep: &dyn Rep) -> Vec<CMatrix> {
    let g = rep.group();
    (0..g.dim()).map(|j| rep.eval(&g.lattice_basis(j))).collect()
}

pub fn random_element(g: &CrystalGroup, k: &PointSubgroup, rng: &mut impl Rng) -> GElement {
    let n = (0..g.dim()).map(|_| rng.gen_range(-3..=3)).collect();
    GElement::new(n, k.global(rng.gen_range(0..k.order())))
}

/// max ‖π(xy) − π(x)π(y)‖ and unitarity defect over `samples` seeded random pairs.
pub fn homomorphism_defect(rep: &dyn Rep, samples: usize, seed: u64) -> f64 {
    let g = rep.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = rep.eval(&g.identity()).dist(&CMatrix::identity(rep.dim()));
    for _ in 0..samples {
        let x = random_element(g, rep.domain(), &mut rng);
        let y = random_element(g, rep.domain(), &mut rng);
        let px = rep.eval(&x);
        worst = worst.max(px.unitarity_defect());
        worst = worst.max(rep.eval(&g.mul(&x, &y)).dist(&(&px * &rep.eval(&y))));
    }
    worst
}

/// For a representation of G: each relator and lattice word, multiplied out letter by letter,
/// must agree with the image of its value; lattice images must commute.
pub fn relator_defect(rep: &dyn Rep) -> Result<f64> {
    let g = rep.group().clone();
    if rep.domain().order() != g.point().order() {
        return Err(input("relator audit needs a representation of the whole group"));
    }
    let gens: Vec<(String, CMatrix)> = g.generators().iter().map(|(n, x)| (n.clone(), rep.eval(x))).collect();
    let image = |name: &str| gens.iter().find(|(n, _)| n == name).map(|(_, m)| m.clone());
    let mut worst = 0.0f64;
    for (_, w) in g.relators().iter().chain(g.n_generators()) {
        let prod = w.eval(CMatrix::identity(rep.dim()), image, CMatrix::adjoint, |a, b| a * b)?;
        worst = worst.max(prod.dist(&rep.eval(&g.eval_word(w)?)));
    }
    let lat = lattice_images(rep);
    for a in &lat {
        for b in &lat {
            worst = worst.max((a * b).dist(&(b * a)));
        }
    }
    Ok(worst)
}

/// A representation of G given by generator images and evaluated through words.
#[derive(Clone)]
pub struct ConcreteRep {
    group: Arc<CrystalGroup>,
    domain: PointSubgroup,
    dim: usize,
    gens: Vec<(String, CMatrix)>,
    lattice: Vec<CMatrix>,
    point: Vec<CMatrix>,
    base: Option<Character>,
}

impl ConcreteRep {
    /// `gens` must give a unitary image for every generator of the datum.
    pub fn new(group: &Arc<CrystalGroup>, gens: Vec<(String, CMatrix)>, base: Option<Character>) -> Result<ConcreteRep> {
        let dim = gens.first().map_or(0, |(_, m)| m.rows());
        if dim == 0 {
            return Err(input("no generator images"));
        }
        for (name, m) in &gens {
            if m.rows() != dim || !m.is_square() {
                return Err(input(format!("image of '{name}' is not {dim}x{dim}")));
            }
            if !m.is_unitary(TAU_MAT * 10.0) {
                return Err(input(format!("image of '{name}' is not unitary")));
            }
        }
        for (name, _) in group.generators() {
            if !gens.iter().any(|(n, _)| n == name) {
                return Err(input(format!("missing image for generator '{name}'")));
            }
        }
        let image = |name: &str| gens.iter().find(|(n, _)| n == name).map(|(_, m)| m.clone());
        let word = |w: &crate::crystal::Word| w.eval(CMatrix::identity(dim), image, CMatrix::adjoint, |a, b| a * b);
        let lattice = group.n_generators().iter().map(|(_, w)| word(w)).collect::<Result<Vec<_>>>()?;
        let mut point = Vec::with_capacity(group.point().order());
        for d in 0..group.point().order() {
            let (w, value) = group.point_word(d);
            // γ(d) = i(−m_d)·w_d
            let shift = lattice_power(&lattice, &value.n.iter().map(|v| -v).collect::<Vec<_>>());
            point.push(&shift * &word(w)?);
        }
        Ok(ConcreteRep { domain: group.point().whole(), group: group.clone(), dim, gens, lattice, point, base })
    }

    /// Sample the generator images of another representation of G.
    pub fn from_rep(rep: &dyn Rep) -> Result<ConcreteRep> {
        let g = rep.group();
        let gens = g.generators().iter().map(|(n, x)| (n.clone(), rep.eval(x))).collect();
        ConcreteRep::new(g, gens, rep.base_character().cloned())
    }

    /// U·π·U* for a unitary U.
    pub fn conjugated(&self, u: &CMatrix) -> Result<ConcreteRep> {
        let gens = self.gens.iter().map(|(n, m)| (n.clone(), &(u * m) * &u.adjoint())).collect();
        ConcreteRep::new(&self.group, gens, self.base.clone())
    }

    pub fn generator_images(&self) -> &[(String, CMatrix)] {
        &self.gens
    }
}

fn lattice_power(lattice: &[CMatrix], n: &[i64]) -> CMatrix {
    let dim = lattice[0].rows();
    lattice.iter().zip(n).fold(CMatrix::identity(dim), |acc, (m, &k)| &acc * &m.pow_unitary(k))
}

impl Rep for ConcreteRep {
    fn group(&self) -> &Arc<CrystalGroup> {
        &self.group
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn domain(&self) -> &PointSubgroup {
        &self.domain
    }
    fn eval(&self, x: &GElement) -> CMatrix {
        &lattice_power(&self.lattice, &x.n) * &self.point[x.d]
    }
    fn base_character(&self) -> Option<&Character> {
        self.base.as_ref()
    }
}

/// The compression B*·π(·)·B of a representation to an invariant subspace with orthonormal basis B.
#[derive(Clone)]
pub struct BlockRep {
    parent: Arc<dyn Rep>,
    basis: CMatrix,
    adjoint: CMatrix,
    base: Option<Character>,
}

impl BlockRep {
    pub fn new(parent: Arc<dyn Rep>, basis: CMatrix, base: Option<Character>) -> Result<BlockRep> {
        if basis.rows() != parent.dim() || basis.cols() == 0 {
            return Err(invariant("block basis has the wrong shape"));
        }
        let adjoint = basis.adjoint();
        Ok(BlockRep { parent, basis, adjoint, base })
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }
}

impl Rep for BlockRep {
    fn group(&self) -> &Arc<CrystalGroup> {
        self.parent.group()
    }
    fn dim(&self) -> usize {
        self.basis.cols()
    }
    fn domain(&self) -> &PointSubgroup {
        self.parent.domain()
    }
    fn eval(&self, x: &GElement) -> CMatrix {
        &(&self.adjoint * &self.parent.eval(x)) * &self.basis
    }
    fn base_character(&self) -> Option<&Character> {
        self.base.as_ref().or_else(|| self.parent.base_character())
    }
}
