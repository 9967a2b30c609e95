use std::sync::Arc;
use std::time::Instant;

use crystal_dual::crystal::Character;
use crystal_dual::datum::group90;
use crystal_dual::group90::{reference_rows, PRESETS};
use crystal_dual::mackey::{dual_over_orbit, equivalent, lattice_images, Rep};
use crystal_dual::numerics::{CMatrix, C};
use crystal_dual::topology::{
    decompose_limit, detect_orbit_drop, detect_orbit_drop_masked, generic_sequence, inner_product,
    inner_product_shifted, recover_character, recover_sequence, stabilizer_along, witness_spread, CharacterPath,
    LimitOptions, RECOVERY_MAX_DENOMINATOR,
};

fn chi(s: &str) -> Character {
    s.parse().unwrap()
}

/// Expected decompositions for the six presets, by branch, in table row order.
const EXPECTED: [(&str, &[&[usize]]); 6] = [
    ("8to4T4", &[&[1, 1]]),
    ("8to2T3", &[&[1, 1, 1, 1]]),
    ("8to1T1", &[&[1, 1, 1, 1, 2]]),
    ("4T3to2T1", &[&[1], &[1]]),
    ("4T3to1T2", &[&[0, 0, 1, 1, 1], &[1, 1, 0, 0, 1]]),
    ("2T3to1T2", &[&[0, 1, 1, 0, 0], &[1, 0, 0, 1, 0], &[0, 0, 0, 0, 1], &[0, 0, 0, 0, 1]]),
];

#[test]
fn presets_reproduce_expected_decompositions() {
    let g = Arc::new(group90());
    let start = Instant::now();
    for (name, want) in EXPECTED {
        let p = PRESETS.iter().find(|p| p.name == name).unwrap();
        assert_eq!(p.expected, want, "{name}");
        for (j, w) in want.iter().enumerate() {
            let run = decompose_limit(&g, &p.path(), j + 1, LimitOptions::default()).unwrap();
            let r = &run.report;
            assert_eq!(r.multiplicities(), w.to_vec(), "{name} branch {}", j + 1);
            assert!(r.residual <= 1e-6, "{name}: residual {:.2e}", r.residual);
            assert!(r.transversal_shift <= 1e-10, "{name}: shift {:.2e}", r.transversal_shift);
            let bd = r.block_diagonalization.as_ref().unwrap();
            assert!(bd.leakage <= 1e-7, "{name}: leakage {:.2e}", bd.leakage);
            assert!(bd.unitary.is_unitary(1e-8));
            let sizes: usize = bd.blocks.iter().map(|b| b.1).sum();
            assert_eq!(sizes, r.limit_dim);
        }
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn branch_labels_follow_the_source_table() {
    let g = Arc::new(group90());
    let p = PRESETS.iter().find(|p| p.name == "2T3to1T2").unwrap();
    let run = decompose_limit(&g, &p.path(), 3, LimitOptions { seed: 0, with_unitary: false }).unwrap();
    assert_eq!(run.report.branch, "π3");
    let labels: Vec<&str> = run.report.constituents.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(labels, ["π1", "π2", "π3", "π4", "π5"]);
}

#[test]
fn limits_are_representations_and_terms_converge() {
    let g = Arc::new(group90());
    for p in &PRESETS {
        let run = decompose_limit(&g, &p.path(), 1, LimitOptions { seed: 0, with_unitary: false }).unwrap();
        assert!(run.limit.relator_defect < 1e-9, "{}", p.name);
        let d = &run.limit.distances;
        assert!(d.last().unwrap() < &1e-2, "{}: {d:?}", p.name);
        assert!(d.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{}: {d:?}", p.name);
    }
}

#[test]
fn witnesses_settle_on_long_schedules() {
    let g = Arc::new(group90());
    for p in &PRESETS {
        let path = p.path().with_samples(40);
        let dual = dual_over_orbit(&g, &path.at(path.schedule()[0]), 0).unwrap();
        for base in &dual.stab_reps {
            let seq = generic_sequence(&g, &path, base.clone()).unwrap();
            assert!(witness_spread(&seq.samples, 4) <= 1e-9, "{}", p.name);
        }
    }
}

#[test]
fn limit_over_a_reference_family_matches_the_reference_limit() {
    // π1 over (−1,−1,u3) with u3 → 1: the induced limit sends a to −i·I.
    let g = Arc::new(group90());
    let p = PRESETS.iter().find(|p| p.name == "2T3to1T2").unwrap();
    let run = decompose_limit(&g, &p.path(), 1, LimitOptions { seed: 0, with_unitary: false }).unwrap();
    let a = g.generator("a").unwrap().clone();
    let l = run.limit.limit.eval(&a);
    assert!(l.dist(&CMatrix::scalar(2, C::new(0.0, -1.0))) < 1e-9, "{l}");
    assert_eq!(run.report.branch, "π1");
    let first = p.path().at(p.path().schedule()[0]);
    let rows = reference_rows(&g, &first).unwrap();
    let hits = run.source_dual.reps.iter().filter(|r| equivalent(*r, &rows[0].rep).unwrap()).count();
    assert_eq!(hits, 1);
}

#[test]
fn eight_orbit_limit_at_the_identity_character_is_the_regular_block() {
    let g = Arc::new(group90());
    let p = PRESETS.iter().find(|p| p.name == "8to1T1").unwrap();
    let run = decompose_limit(&g, &p.path(), 1, LimitOptions { seed: 0, with_unitary: false }).unwrap();
    let c = g.generator("c").unwrap().clone();
    assert!(run.limit.limit.eval(&c).dist(&CMatrix::identity(8)) < 1e-12);
}

#[test]
fn constant_path_gives_an_irreducible_limit() {
    let g = Arc::new(group90());
    let path: CharacterPath = "(1/8, 1/16, 1/5)".parse().unwrap();
    assert!(path.is_constant());
    let run = decompose_limit(&g, &path, 1, LimitOptions::default()).unwrap();
    assert!((run.report.self_inner - 1.0).abs() < 1e-9);
    assert_eq!(run.report.multiplicities().iter().sum::<usize>(), 1);
}

#[test]
fn non_drop_paths_stay_irreducible() {
    // (−1, 1, u3) with u3 moving inside the 4-orbit type 5 locus.
    let g = Arc::new(group90());
    let path: CharacterPath = "(1/2, 0, 1/5+1/10*t)".parse().unwrap();
    for j in 1..=2 {
        let run = decompose_limit(&g, &path, j, LimitOptions { seed: 0, with_unitary: false }).unwrap();
        assert!((run.report.self_inner - 1.0).abs() < 1e-9);
    }
}

#[test]
fn inner_products_of_irreducibles_are_orthonormal() {
    let g = Arc::new(group90());
    for c in ["(-1,-1,1)", "(1,1,1)", "(1,-1,1/5)", "(i,i,-1)"] {
        let x = chi(c);
        let dual = dual_over_orbit(&g, &x, 0).unwrap();
        for (i, a) in dual.stab_reps.iter().enumerate() {
            for (j, b) in dual.stab_reps.iter().enumerate() {
                let ip = inner_product(a.as_ref(), b.as_ref(), &x).unwrap();
                assert!((ip - if i == j { 1.0 } else { 0.0 }).abs() < 1e-9, "{c} {i} {j}: {ip}");
                let shifted = inner_product_shifted(a.as_ref(), b.as_ref(), &x, 11).unwrap();
                assert!((ip - shifted).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn inner_product_rejects_non_isotypic_input() {
    let g = Arc::new(group90());
    let x = chi("(-1,-1,1)");
    let dual = dual_over_orbit(&g, &x, 0).unwrap();
    let other = dual_over_orbit(&g, &chi("(1,1,1)"), 0).unwrap();
    let err = inner_product(dual.stab_reps[0].as_ref(), other.stab_reps[0].as_ref(), &x).unwrap_err();
    assert!(err.to_string().contains("not χ-isotypic"), "{err}");
}

#[test]
fn stabilizer_is_constant_and_contained_in_the_target() {
    let g = group90();
    for p in &PRESETS {
        let path = p.path();
        let stab = stabilizer_along(&g, &path).unwrap();
        assert!(stab.is_subset_of(&g.stabilizer(&path.target())));
        assert!(stab.order() < g.stabilizer(&path.target()).order(), "{}", p.name);
    }
    let crossing: CharacterPath = "(1/2-1/2*t, 1/2-1/2*t, 0)".parse().unwrap();
    assert!(stabilizer_along(&g, &crossing.with_samples(3)).is_ok());
    let changing: CharacterPath = "(2*t, 1/8, 0)".parse().unwrap();
    assert!(stabilizer_along(&g, &changing).is_err());
}

#[test]
fn orbit_drop_detection() {
    let g = group90();
    assert!(detect_orbit_drop(&g, &chi("(1,1,1)"), 8, 0.01, 16, 0).unwrap());
    assert!(!detect_orbit_drop(&g, &chi("(0.13,0.29,0.41)"), 8, 0.01, 16, 0).unwrap());
    assert!(detect_orbit_drop_masked(&g, &chi("(-1,-1,1)"), 2, 0.01, 16, 0, &[false, false, true]).unwrap());
    assert!(!detect_orbit_drop_masked(&g, &chi("(-1,-1,1)"), 8, 0.01, 16, 0, &[false, false, true]).unwrap());
    assert!(detect_orbit_drop(&g, &chi("(1,1,1)"), 8, 0.0, 16, 0).is_err());
}

#[test]
fn characters_are_recovered_exactly() {
    let g = Arc::new(group90());
    for c in ["(0.13,0.29,0.41)", "(1/3,1/7,1/11)", "(1,-1,1/5)", "(i,i,-1)"] {
        let x = chi(c);
        for rep in dual_over_orbit(&g, &x, 0).unwrap().reps {
            let got = recover_character(&lattice_images(&rep), RECOVERY_MAX_DENOMINATOR).unwrap();
            assert_eq!(got, x, "{c}");
        }
    }
    let p = PRESETS.iter().find(|p| p.name == "8to1T1").unwrap();
    let run = decompose_limit(&g, &p.path(), 1, LimitOptions { seed: 0, with_unitary: false }).unwrap();
    let terms: Vec<Arc<dyn Rep>> = run
        .limit
        .sequence
        .terms
        .iter()
        .map(|t| Arc::new(crystal_dual::mackey::induce(t.clone(), &g.point().whole()).unwrap()) as Arc<dyn Rep>)
        .collect();
    let refs: Vec<&dyn Rep> = terms.iter().map(|t| t.as_ref()).collect();
    let got = recover_sequence(&refs).unwrap();
    for (s, c) in run.limit.sequence.samples.iter().zip(&got) {
        assert_eq!(&s.chi, c);
    }
    let last = got.last().unwrap();
    assert!(last.distance(&run.report.target) < 1e-3);
}

#[test]
fn recovery_rejects_non_unimodular_entries() {
    let m = CMatrix::scalar(1, C::new(0.5, 0.0));
    assert!(recover_character(&[m], RECOVERY_MAX_DENOMINATOR).is_err());
}
