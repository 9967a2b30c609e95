use std::sync::Arc;

use crystal_dual::crystal::Character;
use crystal_dual::datum::group90;
use crystal_dual::group90::{reference_rows, REPRESENTATIVES};
use crystal_dual::mackey::{
    dual_over_orbit, equivalent, induce, irreducibility_norm, lattice_images, relator_defect, ConcreteRep, Rep,
};
use crystal_dual::numerics::{CMatrix, C};

fn chi(s: &str) -> Character {
    s.parse().unwrap()
}

#[test]
fn restriction_to_the_lattice_is_the_orbit_diagonal() {
    let g = Arc::new(group90());
    for c in REPRESENTATIVES {
        let x = chi(c);
        let dual = dual_over_orbit(&g, &x, 0).unwrap();
        for rep in &dual.reps {
            let blocks = rep.block_characters().unwrap();
            assert_eq!(blocks.len(), dual.orbit.size());
            for o in &dual.orbit.characters {
                assert!(blocks.iter().any(|b| b.coincides(o)), "{c}");
            }
            let size = rep.dim() / blocks.len();
            for (j, m) in lattice_images(rep).iter().enumerate() {
                let diag: Vec<C> = blocks.iter().flat_map(|b| vec![b.u[j].to_complex(); size]).collect();
                assert!(m.dist(&CMatrix::diag(&diag)) <= 1e-10, "{c}");
            }
        }
    }
}

#[test]
fn duals_are_irreducible_and_satisfy_the_dimension_law() {
    let g = Arc::new(group90());
    for c in REPRESENTATIVES {
        let dual = dual_over_orbit(&g, &chi(c), 0).unwrap();
        assert_eq!(dual.dimension_sum(), dual.orbit.size() * 8, "{c}");
        for rep in &dual.reps {
            assert!((irreducibility_norm(rep).unwrap() - 1.0).abs() < 1e-8, "{c}");
            assert!(relator_defect(rep).unwrap() < 1e-9, "{c}");
        }
    }
}

#[test]
fn induction_in_stages_on_four_orbit_type_five() {
    let g = Arc::new(group90());
    let whole = g.point().whole();
    for c in ["(1,-1,1/5)", "(-1,1,2/7)", "(1,-1,i)"] {
        let x = chi(c);
        let dual = dual_over_orbit(&g, &x, 0).unwrap();
        assert_eq!(dual.orbit.stabilizer.order(), 2);
        let mut hops = 0;
        for mid in [["e", "a2", "b", "a2b"], ["e", "a", "a2", "a3"], ["e", "a2", "ab", "a3b"]] {
            let mid = g.subgroup(&mid).unwrap();
            assert!(dual.orbit.stabilizer.is_subset_of(&mid));
            for (sigma, direct) in dual.stab_reps.iter().zip(&dual.reps) {
                let staged = induce(Arc::new(induce(sigma.clone(), &mid).unwrap()), &whole).unwrap();
                assert!(equivalent(direct, &staged).unwrap(), "{c} through {mid}");
                hops += 1;
            }
        }
        assert_eq!(hops, 6);
    }
}

#[test]
fn equivalence_survives_conjugation() {
    let g = Arc::new(group90());
    let dual = dual_over_orbit(&g, &chi("(1/5,1,-1)"), 0).unwrap();
    let rep = &dual.reps[0];
    let n = rep.dim();
    let u = {
        let x = CMatrix::from_fn(n, n, |i, j| C::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64));
        let h = (&x + &x.adjoint()).scale(C::new(0.5, 0.0));
        crystal_dual::numerics::hermitian_eig(&h).unwrap().vectors
    };
    let concrete = ConcreteRep::from_rep(rep).unwrap().conjugated(&u).unwrap();
    assert!(equivalent(rep, &concrete).unwrap());
    assert!(!equivalent(rep, &dual.reps[1]).unwrap());
}

#[test]
fn distinct_rows_of_the_identity_character_are_inequivalent() {
    let g = Arc::new(group90());
    let rows = reference_rows(&g, &chi("(1,1,1)")).unwrap();
    assert!(!equivalent(&rows[0].rep, &rows[1].rep).unwrap());
    assert!(equivalent(&rows[0].rep, &rows[0].rep).unwrap());
}

#[test]
fn orbit_mates_give_equivalent_duals() {
    let g = Arc::new(group90());
    let a = dual_over_orbit(&g, &chi("(i,i,-1)"), 0).unwrap();
    let b = dual_over_orbit(&g, &chi("(-i,-i,-1)"), 0).unwrap();
    for r in &a.reps {
        assert_eq!(b.reps.iter().filter(|s| equivalent(r, *s).unwrap()).count(), 1);
    }
}

#[test]
fn inexact_characters_are_rejected() {
    let g = Arc::new(group90());
    assert!(dual_over_orbit(&g, &chi("(~0.13,1,1)"), 0).is_err());
}
