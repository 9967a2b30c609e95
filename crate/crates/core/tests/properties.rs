use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use proptest::prelude::*;

use crystal_dual::cocycle::{cohomologous_witness, CocyclePipeline};
use crystal_dual::crystal::{Character, CrystalGroup};
use crystal_dual::datum::group90;
use crystal_dual::mackey::dual_over_orbit;
use crystal_dual::numerics::{hermitian_eig, CMatrix, Turn, C, Q, TAU_MAT};
use crystal_dual::topology::{inner_product, inner_product_shifted, CharacterPath, Coordinate};

fn g90() -> &'static Arc<CrystalGroup> {
    static G: OnceLock<Arc<CrystalGroup>> = OnceLock::new();
    G.get_or_init(|| Arc::new(group90()))
}

fn exact_turn() -> impl Strategy<Value = Q> {
    (1i128..=24).prop_flat_map(|d| (0..d).prop_map(move |p| Q::new(p, d)))
}

fn exact_character() -> impl Strategy<Value = Character> {
    prop::collection::vec(exact_turn(), 3).prop_map(|u| Character::new(u.into_iter().map(Turn::exact).collect()))
}

fn unit(t: &Turn) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * t.value())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn turn_arithmetic_agrees_with_complex_arithmetic(a in exact_turn(), b in exact_turn(), k in -7i64..7) {
        let (x, y) = (Turn::exact(a), Turn::exact(b));
        prop_assert!(((x * y).to_complex() - unit(&x) * unit(&y)).norm() < 1e-12);
        prop_assert!(((x / y).to_complex() - unit(&x) / unit(&y)).norm() < 1e-12);
        prop_assert!((x.conj().to_complex() - unit(&x).conj()).norm() < 1e-12);
        prop_assert!((x.pow(k).to_complex() - unit(&x).powi(k as i32)).norm() < 1e-12);
    }

    #[test]
    fn roots_are_exact(a in exact_turn(), n in 1u32..9) {
        let x = Turn::exact(a);
        prop_assert_eq!(x.principal_sqrt().pow(2), x);
        prop_assert_eq!(x.principal_nth_root(n).pow(n as i64), x);
    }

    #[test]
    fn hermitian_eig_is_orthonormal_sorted_and_deterministic(
        n in 1usize..9,
        seed in prop::collection::vec(-1.0f64..1.0, 2 * 81),
    ) {
        let x = CMatrix::from_fn(n, n, |i, j| C::new(seed[2 * (i * 9 + j)], seed[2 * (i * 9 + j) + 1]));
        let h = (&x + &x.adjoint()).scale(C::new(0.5, 0.0));
        let e = hermitian_eig(&h).unwrap();
        prop_assert!(e.vectors.unitarity_defect() <= TAU_MAT);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let d = CMatrix::diag(&e.values.iter().map(|&v| C::new(v, 0.0)).collect::<Vec<_>>());
        prop_assert!((&(&e.vectors * &d) * &e.vectors.adjoint()).dist(&h) <= 1e-8);
        let again = hermitian_eig(&h).unwrap();
        prop_assert_eq!(again.values, e.values);
        prop_assert_eq!(again.vectors.data(), e.vectors.data());
    }

    #[test]
    fn dual_action_inverts_exactly(chi in exact_character(), d in 0usize..8) {
        let g = g90();
        let di = g.point().inv(d);
        prop_assert_eq!(g.dual_action(d, &g.dual_action(di, &chi)), chi);
    }

    #[test]
    fn orbit_sizes_divide_the_point_group(chi in exact_character()) {
        let size = g90().orbit_stabilizer(&chi).unwrap().size();
        prop_assert!([1, 2, 4, 8].contains(&size));
    }

    #[test]
    fn stabilizers_grow_along_degenerations(
        target in prop::collection::vec(prop_oneof![Just(Q::new(0, 1)), Just(Q::new(1, 2)), Just(Q::new(1, 4)), exact_turn()], 3),
        moving in prop::collection::vec(any::<bool>(), 3),
        steps in prop::collection::vec(1i128..64, 3),
    ) {
        let g = g90();
        let coords = target
            .iter()
            .zip(&moving)
            .zip(&steps)
            .map(|((&c, &m), &s)| if m { Coordinate::affine(c + Q::new(s, 1024), -Q::new(s, 1024)) } else { Coordinate::constant(c) })
            .collect();
        let path = CharacterPath::new(coords);
        let lim = g.stabilizer(&path.target());
        for t in path.schedule() {
            prop_assert!(g.stabilizer(&path.at(t)).is_subset_of(&lim));
        }
    }

    #[test]
    fn cocycle_chain_is_linked(chi in exact_character()) {
        let g = g90();
        let stab = g.stabilizer(&chi);
        let p = CocyclePipeline::run(g, &chi, &stab).unwrap();
        prop_assert!(p.finitized.omega_fin.is_equalized());
        prop_assert!(p.finitized.omega_fin.is_finitized(p.finitized.n as u64));
        prop_assert!(cohomologous_witness(&p.omega, &p.equalized.omega_eq).unwrap().is_some());
        prop_assert!(cohomologous_witness(&p.equalized.omega_eq, &p.finitized.omega_fin).unwrap().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn inner_product_ignores_the_transversal(chi in exact_character(), shift_seed in any::<u64>()) {
        let g = g90();
        let dual = dual_over_orbit(g, &chi, 0).unwrap();
        for a in &dual.stab_reps {
            for b in &dual.stab_reps {
                let ip = inner_product(a.as_ref(), b.as_ref(), &chi).unwrap();
                let other = inner_product_shifted(a.as_ref(), b.as_ref(), &chi, shift_seed).unwrap();
                prop_assert!((ip - other).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn dimension_law_holds(chi in exact_character()) {
        let g = g90();
        let dual = dual_over_orbit(g, &chi, 0).unwrap();
        prop_assert_eq!(dual.dimension_sum(), dual.orbit.size() * 8);
    }
}
