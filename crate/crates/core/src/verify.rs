//! Regression suite for the bundled group-90 datum: one report per acceptance criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cocycle::{cohomologous_witness, witness_set};
use crate::crystal::{Character, CrystalGroup, IntMatrix, Word};
use crate::datum::GroupDatum;
use crate::error::Result;
use crate::finiterep::{character_inner, irreps};
use crate::group90::{reference_rows, chart_mismatches, match_rows, PRESETS, REPRESENTATIVES};
use crate::mackey::{dual_over_orbit, equivalent, induce, lattice_images, InducedRep, OrbitDual, Rep};
use crate::numerics::{CMatrix, Turn, C, Q};
use crate::report::irreps_document;
use crate::topology::{
    decompose_limit, inner_product, inner_product_shifted, path_witnesses, recover_character, stabilizer_along,
    witness_spread, CharacterPath, Coordinate, LimitOptions, RECOVERY_MAX_DENOMINATOR,
};

/// Samples used for the witness convergence check.
pub const WITNESS_SAMPLES: usize = 40;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {}: residual {:.3e}, {:.2} s; {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.residual,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "detail": self.detail,
            "elapsed_seconds": self.elapsed.as_secs_f64(),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub criteria: Vec<CriterionReport>,
    /// Reference-table inconsistencies that are reported rather than failed.
    pub discrepancies: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "criteria": self.criteria.iter().map(CriterionReport::to_json).collect::<Vec<_>>(),
            "discrepancies": self.discrepancies,
        })
    }
}

struct Outcome {
    passed: bool,
    residual: f64,
    detail: String,
}

fn timed(id: u8, name: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome>) -> CriterionReport {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let (mut passed, residual, mut detail) = match out {
        Ok(o) => (o.passed, o.residual, o.detail),
        Err(e) => (false, f64::INFINITY, e.to_string()),
    };
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            detail = format!("{detail}; exceeded {} s", l.as_secs());
        }
    }
    CriterionReport { id, name, passed, residual, detail, elapsed }
}

type Affine = (IntMatrix, Vec<Q>);

fn apply(m: &IntMatrix, v: &[Q]) -> Vec<Q> {
    (0..m.dim())
        .map(|i| (0..m.dim()).fold(Q::zero(), |acc, j| acc + Q::from_integer(m.get(i, j) as i128) * v[j]))
        .collect()
}

fn compose(x: &Affine, y: &Affine) -> Affine {
    let t = apply(&x.0, &y.1).iter().zip(&x.1).map(|(a, b)| a + b).collect();
    (x.0.mul(&y.0), t)
}

/// Relator values computed straight from the datum's affine maps, without building the group.
pub fn raw_relator_values(datum: &GroupDatum) -> Result<Vec<(String, Affine)>> {
    let gens: Vec<(String, Affine)> = datum
        .generators
        .iter()
        .map(|(name, n, d)| {
            let t = datum.section[*d].iter().zip(n).map(|(s, &k)| s + Q::from_integer(k as i128)).collect();
            (name.clone(), (datum.action[*d].clone(), t))
        })
        .collect();
    let one: Affine = (IntMatrix::identity(datum.dim), vec![Q::zero(); datum.dim]);
    let mut out = Vec::new();
    for text in &datum.relators {
        let word = Word::parse(text)?;
        let value = word.eval(
            one.clone(),
            |g| gens.iter().find(|(n, _)| n == g).map(|(_, a)| a.clone()),
            |(m, t)| {
                let mi = m.inverse().unwrap_or_else(|| IntMatrix::identity(m.dim()));
                let ti = apply(&mi, t).into_iter().map(|v| -v).collect();
                (mi, ti)
            },
            compose,
        )?;
        out.push((text.clone(), value));
    }
    Ok(out)
}

/// Relator agreement and the dual-action chart, both read from the raw datum.
pub fn check_datum(datum: &GroupDatum) -> CriterionReport {
    timed(1, "group-90 datum validity", Some(Duration::from_secs(1)), || {
        let mut problems = Vec::new();
        let values = raw_relator_values(datum)?;
        if values.len() != 5 {
            problems.push(format!("expected 5 relators, found {}", values.len()));
        }
        if let Some((first, v0)) = values.first() {
            for (text, v) in &values[1..] {
                if v != v0 {
                    problems.push(format!("relator '{text}' differs from '{first}'"));
                }
            }
        }
        let inverses: Vec<IntMatrix> = datum
            .action
            .iter()
            .map(|m| m.inverse().unwrap_or_else(|| IntMatrix::from_fn(m.dim(), |_, _| 0)))
            .collect();
        for (row, msg) in chart_mismatches(&datum.elements, &inverses) {
            problems.push(format!("chart row '{row}': {msg}"));
        }
        Ok(Outcome {
            passed: problems.is_empty(),
            residual: problems.len() as f64,
            detail: if problems.is_empty() {
                "5 relators agree; 8 chart rows reproduced".into()
            } else {
                problems.join("; ")
            },
        })
    })
}

fn characters() -> Vec<Character> {
    REPRESENTATIVES.iter().map(|s| s.parse().expect("representatives parse")).collect()
}

fn duals(g: &Arc<CrystalGroup>, seed: u64) -> Result<Vec<OrbitDual>> {
    characters().iter().map(|c| dual_over_orbit(g, c, seed)).collect()
}

fn check_tables(g: &Arc<CrystalGroup>, seed: u64, discrepancies: &mut Vec<String>) -> CriterionReport {
    timed(2, "dual enumeration against the reference tables", Some(Duration::from_secs(30)), || {
        let mut problems = Vec::new();
        for chi in characters() {
            let dual = dual_over_orbit(g, &chi, seed)?;
            let rows = reference_rows(g, &chi)?;
            let mut dims: Vec<usize> = dual.reps.iter().map(InducedRep::dim).collect();
            let mut want: Vec<usize> = rows.iter().map(|r| r.rep.dim()).collect();
            dims.sort_unstable();
            want.sort_unstable();
            if dims != want {
                problems.push(format!("{chi}: dimensions {dims:?}, table {want:?}"));
                continue;
            }
            let computed: Vec<&dyn Rep> = dual.reps.iter().map(|r| r as &dyn Rep).collect();
            let m = match_rows(&computed, &rows)?;
            if m.is_bijective(rows.len()) {
                continue;
            }
            let duplicated: Vec<Vec<usize>> = m.matches.iter().filter(|h| h.len() > 1).cloned().collect();
            let tolerated = m.unmatched_reps().len() == 1
                && duplicated.len() == 1
                && m.matches.iter().all(|h| h.len() <= 2)
                && duplicated[0].iter().all(|&j| {
                    let other = duplicated[0].iter().find(|&&k| k != j).copied().unwrap_or(j);
                    equivalent(&rows[j].rep, &rows[other].rep).unwrap_or(false)
                });
            if tolerated {
                let names: Vec<&str> = duplicated[0].iter().map(|&j| rows[j].label.as_str()).collect();
                discrepancies.push(format!(
                    "{chi}: reference rows {} coincide; one computed representation has no reference row",
                    names.join(" and ")
                ));
            } else {
                problems.push(format!("{chi}: row matching {:?}", m.matches));
            }
        }
        Ok(Outcome {
            passed: problems.is_empty(),
            residual: problems.len() as f64,
            detail: if problems.is_empty() {
                format!("{} characters matched", REPRESENTATIVES.len())
            } else {
                problems.join("; ")
            },
        })
    })
}

fn check_dimensions(g: &Arc<CrystalGroup>, seed: u64) -> CriterionReport {
    timed(3, "dimension law", None, || {
        let mut problems = Vec::new();
        for dual in duals(g, seed)? {
            let want = dual.orbit.size() * g.point().order();
            if dual.dimension_sum() != want || ![8, 16, 32, 64].contains(&want) {
                problems.push(format!("{}: Σdim² = {}, want {want}", dual.chi, dual.dimension_sum()));
            }
        }
        Ok(Outcome { passed: problems.is_empty(), residual: problems.len() as f64, detail: joined(problems, "all sums exact") })
    })
}

fn joined(problems: Vec<String>, ok: &str) -> String {
    if problems.is_empty() {
        ok.into()
    } else {
        problems.join("; ")
    }
}

fn check_limits(g: &Arc<CrystalGroup>, seed: u64) -> CriterionReport {
    timed(4, "limit decompositions of the six presets", Some(Duration::from_secs(60)), || {
        let mut problems = Vec::new();
        let (mut residual, mut leakage) = (0.0f64, 0.0f64);
        let mut runs = 0;
        for p in &PRESETS {
            for (j, want) in p.expected.iter().enumerate() {
                let run = decompose_limit(g, &p.path(), j + 1, LimitOptions { seed, with_unitary: true })?;
                let r = run.report;
                runs += 1;
                residual = residual.max(r.residual);
                if let Some(bd) = &r.block_diagonalization {
                    leakage = leakage.max(bd.leakage);
                }
                if r.multiplicities() != *want {
                    problems.push(format!("{} branch {}: {:?}, want {want:?}", p.name, j + 1, r.multiplicities()));
                }
            }
        }
        if residual > 1e-6 {
            problems.push(format!("rounding residual {residual:.3e}"));
        }
        if leakage > 1e-7 {
            problems.push(format!("leakage {leakage:.3e}"));
        }
        Ok(Outcome {
            passed: problems.is_empty(),
            residual: residual.max(leakage),
            detail: joined(problems, &format!("{runs} branches; leakage {leakage:.2e}")),
        })
    })
}

fn check_finite_reps(g: &Arc<CrystalGroup>, seed: u64) -> CriterionReport {
    timed(5, "finite representation solver", None, || {
        let mut problems = Vec::new();
        let mut worst = 0.0f64;
        for dual in duals(g, seed)? {
            let ext = &dual.extension.group;
            let reps = irreps(ext, seed)?;
            let sum: usize = reps.iter().map(|r| r.dim * r.dim).sum();
            if sum != ext.order() || !(1..=64).contains(&ext.order()) {
                problems.push(format!("{}: Σdim² = {sum}, |G| = {}", dual.chi, ext.order()));
            }
            for (i, a) in reps.iter().enumerate() {
                for (j, b) in reps.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((character_inner(&a.character(), &b.character()) - C::new(want, 0.0)).norm());
                }
            }
            let first = irreps_document(g, &dual, seed)?.to_string();
            let second = irreps_document(g, &dual_over_orbit(g, &dual.chi, seed)?, seed)?.to_string();
            if first != second {
                problems.push(format!("{}: two runs differ", dual.chi));
            }
        }
        if worst > 1e-8 {
            problems.push(format!("orthogonality defect {worst:.3e}"));
        }
        Ok(Outcome { passed: problems.is_empty(), residual: worst, detail: joined(problems, "all extensions solved") })
    })
}

fn check_cocycles(g: &Arc<CrystalGroup>, seed: u64) -> CriterionReport {
    timed(6, "cocycle pipeline and path witnesses", None, || {
        let mut problems = Vec::new();
        for dual in duals(g, seed)? {
            let p = &dual.pipeline;
            let fin = &p.finitized;
            if !fin.omega_fin.is_equalized() || !fin.omega_fin.is_finitized(fin.n as u64) {
                problems.push(format!("{}: ω_fin not equalized and finite", dual.chi));
            }
            let linked = cohomologous_witness(&p.omega, &p.equalized.omega_eq)?.is_some()
                && cohomologous_witness(&p.equalized.omega_eq, &fin.omega_fin)?.is_some()
                && witness_set(&p.omega, &fin.omega_fin)?.is_some();
            if !linked {
                problems.push(format!("{}: cocycles not linked by witnesses", dual.chi));
            }
        }
        let mut spread = 0.0f64;
        for preset in &PRESETS {
            let path = preset.path().with_samples(WITNESS_SAMPLES);
            let stab = stabilizer_along(g, &path)?;
            let ts = path.schedule();
            let samples = path_witnesses(g, &path, ts[0], &stab, &ts)?;
            spread = spread.max(witness_spread(&samples, 4));
        }
        if spread > 1e-9 {
            problems.push(format!("witness spread {spread:.3e} over the last 4 samples"));
        }
        Ok(Outcome { passed: problems.is_empty(), residual: spread, detail: joined(problems, "all chains linked") })
    })
}

fn check_restriction(g: &Arc<CrystalGroup>, seed: u64) -> CriterionReport {
    timed(7, "restriction to the lattice and character recovery", None, || {
        let mut problems = Vec::new();
        let mut worst = 0.0f64;
        for dual in duals(g, seed)? {
            for rep in &dual.reps {
                let blocks = rep.block_characters().unwrap_or_default();
                let size = rep.dim() / blocks.len().max(1);
                for (j, m) in lattice_images(rep).iter().enumerate() {
                    let diag: Vec<C> = blocks.iter().flat_map(|c| vec![c.u[j].to_complex(); size]).collect();
                    worst = worst.max(m.dist(&CMatrix::diag(&diag)));
                }
                let covers = blocks.len() == dual.orbit.size()
                    && dual.orbit.characters.iter().all(|c| blocks.iter().any(|b| b.coincides(c)));
                if !covers {
                    problems.push(format!("{}: blocks do not run over the orbit", dual.chi));
                }
                if recover_character(&lattice_images(rep), RECOVERY_MAX_DENOMINATOR)? != dual.chi {
                    problems.push(format!("{}: recovered character differs", dual.chi));
                }
            }
        }
        if worst > 1e-10 {
            problems.push(format!("restriction defect {worst:.3e}"));
        }
        Ok(Outcome { passed: problems.is_empty(), residual: worst, detail: joined(problems, "all restrictions diagonal") })
    })
}

fn random_turn(rng: &mut ChaCha8Rng) -> Q {
    const DENOMINATORS: [i128; 8] = [1, 2, 4, 3, 5, 8, 12, 97];
    let d = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
    Q::new(rng.gen_range(0..d), d)
}

fn check_properties(g: &Arc<CrystalGroup>, seed: u64) -> CriterionReport {
    timed(8, "property-based invariants", None, || {
        let mut problems = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9090);
        for _ in 0..500 {
            let chi = Character::new((0..3).map(|_| Turn::exact(random_turn(&mut rng))).collect());
            let size = g.orbit_stabilizer(&chi)?.size();
            if ![1, 2, 4, 8].contains(&size) {
                problems.push(format!("{chi}: orbit size {size}"));
            }
        }
        for _ in 0..20 {
            let target: Vec<Q> = (0..3).map(|_| random_turn(&mut rng)).collect();
            let coords = target
                .iter()
                .map(|&c| {
                    if rng.gen_bool(0.5) {
                        Coordinate::constant(c)
                    } else {
                        let step = Q::new(rng.gen_range(1..64), 1024);
                        Coordinate::affine(c + step, -step)
                    }
                })
                .collect();
            let path = CharacterPath::new(coords);
            let target_stab = g.stabilizer(&path.target());
            for t in path.schedule() {
                if !g.stabilizer(&path.at(t)).is_subset_of(&target_stab) {
                    problems.push(format!("{path}: stabilizer at t = {t} leaves the target's"));
                }
            }
        }
        let mut shift = 0.0f64;
        for chi in characters() {
            let dual = dual_over_orbit(g, &chi, seed)?;
            for (k, a) in dual.stab_reps.iter().enumerate() {
                let b = &dual.stab_reps[(k + 1) % dual.stab_reps.len()];
                let ip = inner_product(a.as_ref(), b.as_ref(), &chi)?;
                let other = inner_product_shifted(a.as_ref(), b.as_ref(), &chi, seed + k as u64)?;
                shift = shift.max((ip - other).abs());
            }
        }
        if shift > 1e-10 {
            problems.push(format!("transversal shift {shift:.3e}"));
        }
        for c in ["(1,-1,1/5)", "(-1,1,2/7)", "(1,-1,3/8)"] {
            let chi: Character = c.parse()?;
            let dual = dual_over_orbit(g, &chi, seed)?;
            let stab = &dual.orbit.stabilizer;
            for mid in ["D1", "D2", "D3"].iter().filter_map(|l| {
                crate::group90::SUBGROUPS.iter().find(|(n, _)| n == l).and_then(|(_, els)| g.subgroup(els).ok())
            }) {
                if !stab.is_subset_of(&mid) {
                    continue;
                }
                for (sigma, direct) in dual.stab_reps.iter().zip(&dual.reps) {
                    let inner = Arc::new(induce(sigma.clone(), &mid)?);
                    let staged = induce(inner, &g.point().whole())?;
                    if !equivalent(direct, &staged)? {
                        problems.push(format!("{chi}: induction through {mid} differs"));
                    }
                }
            }
        }
        Ok(Outcome { passed: problems.is_empty(), residual: shift, detail: joined(problems, "all properties hold") })
    })
}

/// Run every criterion. A datum that fails to build fails every criterion that needs the group.
pub fn verify_group90(datum: &GroupDatum, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::default();
    report.criteria.push(check_datum(datum));
    let built = datum.build().and_then(|g| {
        if crate::group90::is_group90(&g) {
            Ok(Arc::new(g))
        } else {
            Err(crate::error::input("datum is not group 90"))
        }
    });
    let g = match built {
        Ok(g) => g,
        Err(why) => {
            const NAMES: [&str; 7] = [
                "dual enumeration against the reference tables",
                "dimension law",
                "limit decompositions of the six presets",
                "finite representation solver",
                "cocycle pipeline and path witnesses",
                "restriction to the lattice and character recovery",
                "property-based invariants",
            ];
            for (k, name) in NAMES.iter().enumerate() {
                report.criteria.push(CriterionReport {
                    id: k as u8 + 2,
                    name,
                    passed: false,
                    residual: f64::INFINITY,
                    detail: format!("not run: {why}"),
                    elapsed: Duration::ZERO,
                });
            }
            return report;
        }
    };
    let mut discrepancies = Vec::new();
    report.criteria.push(check_tables(&g, seed, &mut discrepancies));
    report.criteria.push(check_dimensions(&g, seed));
    report.criteria.push(check_limits(&g, seed));
    report.criteria.push(check_finite_reps(&g, seed));
    report.criteria.push(check_cocycles(&g, seed));
    report.criteria.push(check_restriction(&g, seed));
    report.criteria.push(check_properties(&g, seed));
    report.discrepancies = discrepancies;
    report
}
