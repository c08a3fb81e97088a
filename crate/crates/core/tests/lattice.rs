use std::time::Instant;

use dualcount_core::lattice::{
    dual_pair_catalog, named_group, refined_swap_check, verify_zn_duality, DEFAULT_POINT_CAP,
};

#[test]
fn catalogue_sweep_up_to_rank_eight() {
    let pairs = dual_pair_catalog(8);
    let labels: Vec<String> = pairs.iter().map(|p| p.label()).collect();
    for (x, y) in [
        ("SU(3)", "PU(3)"),
        ("Sp(2)", "SO(5)"),
        ("Spin(7)", "PSp(3)"),
        ("SO(8)", "SO(8)"),
        ("E7", "E7adj"),
        ("E8", "E8"),
        ("G2", "G2"),
        ("F4", "F4"),
    ] {
        let found = labels
            .iter()
            .any(|l| *l == format!("{}/{}", x, y) || *l == format!("{}/{}", y, x));
        assert!(found, "missing {}/{} in {:?}", x, y, labels);
    }
    for p in &pairs {
        let t = Instant::now();
        for n in 1..=6 {
            let (a, b) = verify_zn_duality(&p.left, &p.right, n, DEFAULT_POINT_CAP).unwrap();
            assert_eq!(a, b, "{} n={}", p.label(), n);
        }
        assert!(t.elapsed().as_secs() < 30, "{} too slow", p.label());
    }
}

#[test]
fn refined_swap_for_classical_pairs() {
    for (g, q, nmax) in [
        ("Sp(1)", "PSp(1)", 6),
        ("Sp(2)", "PSp(2)", 4),
        ("Sp(3)", "PSp(3)", 3),
        ("SU(2)", "PU(2)", 6),
        ("SU(3)", "PU(3)", 4),
        ("SU(4)", "PU(4)", 3),
        ("Spin(8)", "SO(8)", 2),
        ("E6", "E6adj", 2),
    ] {
        let a = named_group(g).unwrap();
        let b = named_group(q).unwrap();
        for n in 1..=nmax {
            let ids =
                refined_swap_check(a.lie, &a.cochar, &b.cochar, n, DEFAULT_POINT_CAP).unwrap();
            assert!(!ids.is_empty(), "{} ⊂ {} n={}", g, q, n);
        }
    }
}
