//! Turn-valued 2-cocycles on point subgroups, coboundaries, the obstruction cocycle ω_χ,
//! equalization, finitization and cohomologous witnesses.

use num_traits::{Signed, Zero};

use crate::crystal::{Character, CrystalGroup, PointSubgroup};
use crate::error::{input, invariant, Error, Result};
use crate::numerics::{frac, Turn, Q};

/// ω: H × H → 𝕋, dense table indexed by local element positions.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCocycle {
    group: PointSubgroup,
    table: Vec<Turn>,
}

/// A function H → 𝕋 with value 1 at the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedFunction {
    group: PointSubgroup,
    values: Vec<Turn>,
}

impl NormalizedFunction {
    pub fn new(group: PointSubgroup, values: Vec<Turn>) -> Result<NormalizedFunction> {
        if values.len() != group.order() {
            return Err(input("one value per subgroup element required"));
        }
        if !values[0].is_one() {
            return Err(invariant("normalized function must be 1 at the identity"));
        }
        Ok(NormalizedFunction { group, values })
    }

    pub fn trivial(group: &PointSubgroup) -> NormalizedFunction {
        NormalizedFunction { group: group.clone(), values: vec![Turn::zero(); group.order()] }
    }

    pub fn group(&self) -> &PointSubgroup {
        &self.group
    }

    pub fn values(&self) -> &[Turn] {
        &self.values
    }

    pub fn at(&self, local: usize) -> Turn {
        self.values[local]
    }

    pub fn mul(&self, other: &NormalizedFunction) -> NormalizedFunction {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a * *b).collect();
        NormalizedFunction { group: self.group.clone(), values }
    }

    pub fn conj(&self) -> NormalizedFunction {
        NormalizedFunction { group: self.group.clone(), values: self.values.iter().map(Turn::conj).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Turn::is_one)
    }

    /// Largest circle distance between values, in turns.
    pub fn distance(&self, other: &NormalizedFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a.distance(b)).fold(0.0, f64::max)
    }

    /// Largest modulus difference of the represented complex numbers.
    pub fn complex_distance(&self, other: &NormalizedFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.to_complex() - b.to_complex()).norm())
            .fold(0.0, f64::max)
    }
}

impl TwoCocycle {
    /// Validate the cocycle law and normalization (exactly for exact tables).
    pub fn new(group: PointSubgroup, table: Vec<Turn>) -> Result<TwoCocycle> {
        let n = group.order();
        if table.len() != n * n {
            return Err(input("cocycle table must be |H|×|H|"));
        }
        let w = TwoCocycle { group, table };
        for x in 0..n {
            if !w.get(0, x).is_one() || !w.get(x, 0).is_one() {
                return Err(invariant(format!("cocycle is not normalized at '{}'", w.group.name(x))));
            }
        }
        if let Some((x, y, z)) = w.law_violation() {
            return Err(invariant(format!(
                "cocycle law fails at ({}, {}, {})",
                w.group.name(x),
                w.group.name(y),
                w.group.name(z)
            )));
        }
        Ok(w)
    }

    pub fn trivial(group: &PointSubgroup) -> TwoCocycle {
        TwoCocycle { group: group.clone(), table: vec![Turn::zero(); group.order() * group.order()] }
    }

    fn law_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.group.order();
        let h = &self.group;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.get(h.mul(x, y), z) * self.get(x, y);
                    let rhs = self.get(x, h.mul(y, z)) * self.get(y, z);
                    if !lhs.coincides(&rhs) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn group(&self) -> &PointSubgroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// ω(x, y) for local indices.
    pub fn get(&self, x: usize, y: usize) -> Turn {
        self.table[x * self.group.order() + y]
    }

    pub fn table(&self) -> &[Turn] {
        &self.table
    }

    pub fn mul(&self, other: &TwoCocycle) -> TwoCocycle {
        assert_eq!(self.group, other.group, "cocycles on different groups");
        let table = self.table.iter().zip(&other.table).map(|(a, b)| *a * *b).collect();
        TwoCocycle { group: self.group.clone(), table }
    }

    pub fn conj(&self) -> TwoCocycle {
        TwoCocycle { group: self.group.clone(), table: self.table.iter().map(Turn::conj).collect() }
    }

    pub fn is_exact(&self) -> bool {
        self.table.iter().all(Turn::is_exact)
    }

    pub fn is_equalized(&self) -> bool {
        (0..self.order()).all(|x| self.get(x, self.group.inv(x)).is_one())
    }

    /// Every value is an n-th root of unity.
    pub fn is_finitized(&self, n: u64) -> bool {
        self.table.iter().all(|t| t.is_root_of_unity(n))
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, sub: &PointSubgroup) -> Result<TwoCocycle> {
        let locals = sub
            .elements()
            .iter()
            .map(|&g| self.group.local(g).ok_or_else(|| invariant("restriction to a non-subgroup")))
            .collect::<Result<Vec<_>>>()?;
        let table = locals.iter().flat_map(|&x| locals.iter().map(move |&y| (x, y))).map(|(x, y)| self.get(x, y)).collect();
        Ok(TwoCocycle { group: sub.clone(), table })
    }

    /// Largest circle distance between corresponding values.
    pub fn distance(&self, other: &TwoCocycle) -> f64 {
        self.table.iter().zip(&other.table).map(|(a, b)| a.distance(b)).fold(0.0, f64::max)
    }

    pub fn coincides(&self, other: &TwoCocycle) -> bool {
        self.group == other.group && self.table.iter().zip(&other.table).all(|(a, b)| a.coincides(b))
    }
}

/// ω_χ(h,k) = χ̄(ν(h,k)) on H ⊆ D_χ.
pub fn omega_chi(g: &CrystalGroup, chi: &Character, h: &PointSubgroup) -> Result<TwoCocycle> {
    let stab = g.stabilizer(chi);
    if !h.is_subset_of(&stab) {
        return Err(invariant(format!("cocycle undefined off stabilizer: {h} is not inside {stab}")));
    }
    let mut table = Vec::with_capacity(h.order() * h.order());
    for &x in h.elements() {
        for &y in h.elements() {
            table.push(chi.eval(g.nu(x, y)).conj());
        }
    }
    TwoCocycle::new(h.clone(), table)
}

/// τ_ρ(x,y) = ρ(xy)·[ρ(x)ρ(y)]⁻¹.
pub fn coboundary(rho: &NormalizedFunction) -> TwoCocycle {
    let h = &rho.group;
    let n = h.order();
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            table.push(rho.values[h.mul(x, y)] / (rho.values[x] * rho.values[y]));
        }
    }
    TwoCocycle { group: h.clone(), table }
}

/// Result of equalization: eq(h) = √ω(h,h⁻¹) and ω_eq = ω·τ_eq.
#[derive(Clone, Debug)]
pub struct Equalized {
    pub eq: NormalizedFunction,
    pub omega_eq: TwoCocycle,
}

pub fn equalize(w: &TwoCocycle) -> Result<Equalized> {
    let h = &w.group;
    let values = (0..h.order()).map(|x| w.get(x, h.inv(x)).principal_sqrt()).collect();
    let eq = NormalizedFunction::new(h.clone(), values)?;
    let omega_eq = w.mul(&coboundary(&eq));
    if !omega_eq.is_equalized() {
        return Err(invariant("equalization did not produce an equalized cocycle"));
    }
    Ok(Equalized { eq, omega_eq })
}

/// Result of finitization; ω_fin = ω_eq·τ_fin takes values in the n-th roots of unity, n = |H|.
#[derive(Clone, Debug)]
pub struct Finitized {
    pub rho: Vec<Turn>,
    pub fin: NormalizedFunction,
    pub omega_fin: TwoCocycle,
    pub n: usize,
}

pub fn finitize(w_eq: &TwoCocycle) -> Result<Finitized> {
    if !w_eq.is_exact() {
        return Err(Error::Input("finitization requires exact character".into()));
    }
    if !w_eq.is_equalized() {
        return Err(invariant("finitization needs an equalized cocycle"));
    }
    let h = &w_eq.group;
    let n = h.order();
    let rho: Vec<Turn> = (0..n).map(|k| (0..n).fold(Turn::zero(), |acc, x| acc * w_eq.get(x, k))).collect();
    for k in 0..n {
        if !(rho[k] * rho[h.inv(k)]).is_one() {
            return Err(invariant(format!("ρ(k)ρ(k⁻¹) ≠ 1 at '{}'", h.name(k))));
        }
    }
    let minus_one = Turn::ratio(1, 2);
    let mut values = vec![Turn::zero(); n];
    for x in 0..n {
        let xi = h.inv(x);
        values[x] = if x == xi {
            Turn::zero()
        } else if rho[x] == minus_one && rho[xi] == minus_one {
            // The element of the pair with the smaller index gets e^{iπ/n}.
            let sign = if x < xi { 1 } else { -1 };
            Turn::ratio(sign, 2 * n as i128)
        } else {
            rho[x].principal_nth_root(n as u32)
        };
    }
    let fin = NormalizedFunction::new(h.clone(), values)?;
    let omega_fin = w_eq.mul(&coboundary(&fin));
    if !omega_fin.is_finitized(n as u64) {
        return Err(invariant("finitized cocycle has a value outside the n-th roots of unity"));
    }
    if !omega_fin.is_equalized() {
        return Err(invariant("finitized cocycle is not equalized"));
    }
    Ok(Finitized { rho, fin, omega_fin, n })
}

/// All λ with τ_λ = ω₁·ω̄₂, described by a diagonalized integer system.
#[derive(Clone, Debug)]
pub struct WitnessSet {
    group: PointSubgroup,
    // x = V·y (mod 1) with y_i ∈ (b_i + ℤ)/s_i.
    v: Vec<Vec<i128>>,
    s: Vec<i128>,
    b: Vec<Q>,
}

impl WitnessSet {
    /// Number of distinct witnesses (the order of Hom(H, 𝕋)).
    pub fn count(&self) -> u128 {
        self.s.iter().map(|s| s.unsigned_abs()).product()
    }

    fn build(&self, shifts: &[i128]) -> NormalizedFunction {
        let k = self.s.len();
        let y: Vec<Q> = (0..k).map(|i| (self.b[i] + Q::from_integer(shifts[i])) / Q::from_integer(self.s[i])).collect();
        let mut values = vec![Turn::zero(); k + 1];
        for (row, value) in values.iter_mut().skip(1).enumerate() {
            let x = (0..k).fold(Q::zero(), |acc, j| acc + Q::from_integer(self.v[row][j]) * y[j]);
            *value = Turn::exact(x);
        }
        NormalizedFunction { group: self.group.clone(), values }
    }

    pub fn canonical(&self) -> NormalizedFunction {
        self.build(&vec![0; self.s.len()])
    }

    /// Every witness, in lexicographic order of the shift vector.
    pub fn all(&self) -> Vec<NormalizedFunction> {
        let k = self.s.len();
        let mut out = Vec::new();
        let mut shifts = vec![0i128; k];
        loop {
            out.push(self.build(&shifts));
            let mut i = 0;
            while i < k {
                shifts[i] += 1;
                if shifts[i] < self.s[i].abs() {
                    break;
                }
                shifts[i] = 0;
                i += 1;
            }
            if i == k {
                return out;
            }
        }
    }

    /// The witness closest to `target` in circle distance; ties go to the first in enumeration order.
    pub fn nearest(&self, target: &NormalizedFunction) -> NormalizedFunction {
        let mut best: Option<(f64, NormalizedFunction)> = None;
        for cand in self.all() {
            let d = cand.distance(target);
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, cand));
            }
        }
        best.expect("a witness set is never empty").1
    }
}

/// Solve τ_λ = ω₁·ω̄₂ over ℚ/ℤ; None when ω₁ and ω₂ are not cohomologous.
pub fn witness_set(w1: &TwoCocycle, w2: &TwoCocycle) -> Result<Option<WitnessSet>> {
    if w1.group != w2.group {
        return Err(input("witness search needs cocycles on the same subgroup"));
    }
    if !w1.is_exact() || !w2.is_exact() {
        return Err(input("witness search requires exact cocycles"));
    }
    let h = &w1.group;
    let n = h.order();
    let k = n - 1;
    let delta = w1.mul(&w2.conj());
    // Unknowns x_j = log λ(j+1); equation λ(xy) − λ(x) − λ(y) ≡ δ(x,y) (mod 1).
    let mut a: Vec<Vec<i128>> = Vec::with_capacity(n * n);
    let mut rhs: Vec<Q> = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut row = vec![0i128; k];
            let xy = h.mul(x, y);
            if xy > 0 {
                row[xy - 1] += 1;
            }
            if x > 0 {
                row[x - 1] -= 1;
            }
            if y > 0 {
                row[y - 1] -= 1;
            }
            if row.iter().any(|&c| c != 0) || !delta.get(x, y).is_one() {
                a.push(row);
                rhs.push(delta.get(x, y).as_exact().expect("exact"));
            }
        }
    }
    let (s, v, rank) = diagonalize(&mut a, &mut rhs, k);
    for b in rhs.iter().skip(rank) {
        if !frac(*b).is_zero() {
            return Ok(None);
        }
    }
    if rank < k {
        return Err(invariant("coboundary system is rank deficient"));
    }
    Ok(Some(WitnessSet { group: h.clone(), v, s, b: rhs[..k].to_vec() }))
}

/// Some λ with τ_λ = ω₁·ω̄₂, verified by substitution; None when not cohomologous.
pub fn cohomologous_witness(w1: &TwoCocycle, w2: &TwoCocycle) -> Result<Option<NormalizedFunction>> {
    let Some(set) = witness_set(w1, w2)? else {
        return Ok(None);
    };
    let lambda = set.canonical();
    if !coboundary(&lambda).coincides(&w1.mul(&w2.conj())) {
        return Err(invariant("witness failed substitution check"));
    }
    Ok(Some(lambda))
}

// Diagonalize A by unimodular row and column operations. Row operations also act on `rhs`;
// returns the pivots s, the column transform V (k×k) and the rank.
fn diagonalize(a: &mut [Vec<i128>], rhs: &mut [Q], k: usize) -> (Vec<i128>, Vec<Vec<i128>>, usize) {
    let m = a.len();
    let mut v: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    for t in 0..k.min(m) {
        let Some((pi, pj)) = smallest_nonzero(a, t, k) else {
            break;
        };
        swap_rows(a, rhs, t, pi);
        swap_cols(a, &mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    if q != 0 {
                        for j in t..k {
                            a[i][j] -= q * a[t][j];
                        }
                        let bt = rhs[t];
                        rhs[i] -= bt * Q::from_integer(q);
                    }
                    dirty |= a[i][t] != 0;
                }
            }
            for j in t + 1..k {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    if q != 0 {
                        for row in a.iter_mut() {
                            row[j] -= q * row[t];
                        }
                        for row in v.iter_mut() {
                            row[j] -= q * row[t];
                        }
                    }
                    dirty |= a[t][j] != 0;
                }
            }
            if !dirty {
                break;
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let mut best = (a[t][t].abs(), t, t);
            for (i, row) in a.iter().enumerate().skip(t + 1) {
                if row[t] != 0 && row[t].abs() < best.0 {
                    best = (row[t].abs(), i, t);
                }
            }
            for j in t + 1..k {
                if a[t][j] != 0 && a[t][j].abs() < best.0 {
                    best = (a[t][j].abs(), t, j);
                }
            }
            swap_rows(a, rhs, t, best.1);
            swap_cols(a, &mut v, t, best.2);
        }
        pivots.push(a[t][t]);
    }
    let rank = pivots.len();
    (pivots, v, rank)
}

fn smallest_nonzero(a: &[Vec<i128>], t: usize, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().take(k).skip(t) {
            if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                best = Some((x.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn swap_rows(a: &mut [Vec<i128>], rhs: &mut [Q], i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        rhs.swap(i, j);
    }
}

fn swap_cols(a: &mut [Vec<i128>], v: &mut [Vec<i128>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// The chain ω_χ → ω_eq → ω_fin for one character and subgroup of its stabilizer.
#[derive(Clone, Debug)]
pub struct CocyclePipeline {
    pub omega: TwoCocycle,
    pub equalized: Equalized,
    pub finitized: Finitized,
}

impl CocyclePipeline {
    pub fn run(g: &CrystalGroup, chi: &Character, h: &PointSubgroup) -> Result<CocyclePipeline> {
        let omega = omega_chi(g, chi, h)?;
        let equalized = equalize(&omega)?;
        let finitized = finitize(&equalized.omega_eq)?;
        Ok(CocyclePipeline { omega, equalized, finitized })
    }

    /// λ = eq⁻¹·fin⁻¹, the rescaling that turns an ω_fin-representation into an ω-representation.
    pub fn lift_factor(&self) -> NormalizedFunction {
        self.equalized.eq.mul(&self.finitized.fin).conj()
    }
}

/// Integer ω_fin exponents w(h,k) with ω_fin = exp(2πi·w/n).
pub fn finite_exponents(omega_fin: &TwoCocycle, n: usize) -> Result<Vec<usize>> {
    omega_fin
        .table()
        .iter()
        .map(|t| {
            let q = t.as_exact().ok_or_else(|| input("finitized cocycle must be exact"))?;
            let scaled = q * Q::from_integer(n as i128);
            if !scaled.is_integer() || scaled.is_negative() {
                return Err(invariant("value is not an n-th root of unity"));
            }
            Ok(scaled.to_integer() as usize % n.max(1))
        })
        .collect()
}

