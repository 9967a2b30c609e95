use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crystal::{Character, CrystalGroup};
use crate::error::{input, Result};
use crate::mackey::{lattice_images, Rep};
use crate::numerics::{CMatrix, Turn, Q};

/// Denominator of the rational grid perturbations are drawn from.
const PERTURBATION_GRID: i128 = 1 << 20;

/// Largest denominator `recover_character` reconstructs.
pub const RECOVERY_MAX_DENOMINATOR: i128 = 1 << 20;

const RECOVERY_TOL: f64 = 5e-13;
const UNIMODULAR_TOL: f64 = 1e-9;

/// True iff |𝒪_χ| < k and some seeded perturbation within ε (in turns) has an orbit of size exactly k.
pub fn detect_orbit_drop(g: &CrystalGroup, chi: &Character, k: usize, eps: f64, samples: usize, seed: u64) -> Result<bool> {
    detect_orbit_drop_masked(g, chi, k, eps, samples, seed, &vec![true; chi.dim()])
}

/// As `detect_orbit_drop`, perturbing only the coordinates flagged in `free`.
pub fn detect_orbit_drop_masked(
    g: &CrystalGroup,
    chi: &Character,
    k: usize,
    eps: f64,
    samples: usize,
    seed: u64,
    free: &[bool],
) -> Result<bool> {
    if !(eps > 0.0) {
        return Err(input("perturbation radius must be positive"));
    }
    if free.len() != chi.dim() {
        return Err(input("mask length differs from the character's rank"));
    }
    if g.orbit_stabilizer(chi)?.size() >= k {
        return Ok(false);
    }
    let radius = ((eps * PERTURBATION_GRID as f64).floor() as i128).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let u = chi
            .u
            .iter()
            .zip(free)
            .map(|(t, &f)| {
                if !f {
                    return *t;
                }
                let step = Turn::exact(Q::new(rng.gen_range(-radius..=radius), PERTURBATION_GRID));
                *t * step
            })
            .collect();
        if g.orbit_stabilizer(&Character::new(u))?.size() == k {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Best rational approximation of x in [0,1) with denominator ≤ `max_den`, if within tolerance.
fn rational_turn(x: f64, max_den: i128) -> Option<Q> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= RECOVERY_TOL {
            return Some(Q::new(h1, k1));
        }
        let f = r - a;
        if f.abs() < 1e-300 {
            break;
        }
        r = 1.0 / f;
    }
    None
}

/// χ(e_j) read from entry (0,0) of the images of the lattice basis; exact when the phase is a
/// rational turn with denominator ≤ `max_den`, approximate otherwise.
pub fn recover_character(images: &[CMatrix], max_den: i128) -> Result<Character> {
    let mut u = Vec::with_capacity(images.len());
    for (j, m) in images.iter().enumerate() {
        if m.rows() == 0 {
            return Err(input("empty matrix"));
        }
        let z = m[(0, 0)];
        if (z.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(input(format!("entry (1,1) of the image of e{} is not unimodular (|z| = {:.3e})", j + 1, z.norm())));
        }
        let x = (z.arg() / std::f64::consts::TAU).rem_euclid(1.0);
        u.push(match rational_turn(x, max_den) {
            Some(q) => Turn::exact(q),
            None => Turn::approx(x),
        });
    }
    Ok(Character::new(u))
}

/// Recovered characters of a sequence of representations in the canonical induced layout.
pub fn recover_sequence(terms: &[&dyn Rep]) -> Result<Vec<Character>> {
    terms.iter().map(|r| recover_character(&lattice_images(*r), RECOVERY_MAX_DENOMINATOR)).collect()
}
