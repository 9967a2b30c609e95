use crystal_dual::cocycle::{CocyclePipeline, TwoCocycle};
use crystal_dual::crystal::{Character, IntMatrix, PointGroup};
use crystal_dual::datum::group90;
use crystal_dual::finiterep::{
    build_extension, character_inner, extract_projective, filter_gstar, irreps, FiniteGroup,
};
use crystal_dual::numerics::C;

fn table_group(n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::new(labels, (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect()).unwrap()
}

fn dihedral4() -> FiniteGroup {
    table_group(8, |x, y| {
        let (k1, s1) = (x / 2, x % 2);
        let (k2, s2) = (y / 2, y % 2);
        let k = if s1 == 0 { (k1 + k2) % 4 } else { (k1 + 4 - k2) % 4 };
        2 * k + (s1 ^ s2)
    })
}

// S3 as permutations of {0,1,2}; index order is the lexicographic list of permutations.
fn s3() -> FiniteGroup {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    table_group(6, |x, y| {
        let (a, b) = (perms[x], perms[y]);
        idx([a[b[0]], a[b[1]], a[b[2]]])
    })
}

fn dims(g: &FiniteGroup) -> Vec<usize> {
    irreps(g, 0).unwrap().iter().map(|r| r.dim).collect()
}

#[test]
fn cyclic_two() {
    let g = table_group(2, |x, y| (x + y) % 2);
    let reps = irreps(&g, 0).unwrap();
    assert_eq!(reps.len(), 2);
    let mut chars: Vec<Vec<i64>> = reps.iter().map(|r| r.character().iter().map(|z| z.re.round() as i64).collect()).collect();
    chars.sort();
    assert_eq!(chars, vec![vec![1, -1], vec![1, 1]]);
}

#[test]
fn dihedral_and_symmetric_dims() {
    assert_eq!(dims(&dihedral4()), vec![1, 1, 1, 1, 2]);
    assert_eq!(dims(&s3()), vec![1, 1, 2]);
    assert_eq!(dihedral4().conjugacy_classes().len(), 5);
}

#[test]
fn cyclic_groups_up_to_twelve() {
    for n in 1..=12 {
        let g = table_group(n, |x, y| (x + y) % n);
        assert_eq!(dims(&g), vec![1; n]);
    }
}

#[test]
fn schur_orthogonality_and_determinism() {
    let g = dihedral4();
    let reps = irreps(&g, 11).unwrap();
    let again = irreps(&g, 11).unwrap();
    assert_eq!(reps, again);
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            let ip = character_inner(&a.character(), &b.character());
            let want = if i == j { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
            assert!((ip - want).norm() < 1e-8);
        }
        assert!(a.defect(&g) < 1e-9);
    }
}

#[test]
fn trivial_cocycle_extension_is_direct_product() {
    let d = PointGroup::new(vec!["e".into(), "s".into()], vec![vec![0, 1], vec![1, 0]], vec![IntMatrix::identity(1); 2]).unwrap();
    let h = d.whole();
    let ext = build_extension(&h, &TwoCocycle::trivial(&h), 2).unwrap();
    for x in 0..4 {
        for y in 0..4 {
            let (a1, h1, a2, h2) = (x % 2, x / 2, y % 2, y / 2);
            assert_eq!(ext.group.mul(x, y), (a1 + a2) % 2 + 2 * (h1 ^ h2));
        }
    }
    let all = irreps(&ext.group, 0).unwrap();
    assert_eq!(all.len(), 4);
    assert_eq!(filter_gstar(&all, &ext).len(), 2);
}

#[test]
fn unfinitized_cocycle_is_rejected() {
    let g = group90();
    let chi: Character = "(-1,-1,1)".parse().unwrap();
    let p = CocyclePipeline::run(&g, &chi, &g.point().whole()).unwrap();
    let err = build_extension(&p.omega.group().clone(), &p.omega, 3).unwrap_err().to_string();
    assert!(err.contains("cocycle not finitized"), "{err}");
}

#[test]
fn group90_extensions() {
    let g = group90();
    for (chi, order, gstar) in [
        ("(-1,-1,1)", 64, vec![1, 1, 1, 1, 2]),
        ("(1,1,1/5)", 16, vec![1, 1, 1, 1]),
        ("(1,-1,1)", 16, vec![2]),
    ] {
        let chi: Character = chi.parse().unwrap();
        let stab = g.stabilizer(&chi);
        let p = CocyclePipeline::run(&g, &chi, &stab).unwrap();
        let ext = build_extension(&stab, &p.finitized.omega_fin, p.finitized.n).unwrap();
        assert_eq!(ext.group.order(), order);
        let all = irreps(&ext.group, 0).unwrap();
        assert_eq!(all.len(), ext.group.conjugacy_classes().len());
        let kept = filter_gstar(&all, &ext);
        assert_eq!(kept.iter().map(|r| r.dim).collect::<Vec<_>>(), gstar, "{chi}");
        for t in &kept {
            let phi = extract_projective(t, &ext).unwrap();
            assert_eq!(phi.dim(), t.dim);
            assert!(phi.defect(&p.finitized.omega_fin) < 1e-9);
        }
    }
}
