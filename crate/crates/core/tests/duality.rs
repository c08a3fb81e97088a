use dualcount_core::counting::{
    all_sectors, count_homs, f_rep_character, verify_swap_equivalence, FSide, Side, SwapPair,
    TargetFamily,
};
use dualcount_core::cyclo::Cyclo;
use dualcount_core::grouprep::standard_groups;
use dualcount_core::intmat::IntMat;
use dualcount_core::lattice::{self, named_group, weyl_orbit_count, DEFAULT_POINT_CAP};
use dualcount_core::{GroupData, GroupSpec};
use num_bigint::BigUint;

fn n_of(g: &GroupData, t: TargetFamily) -> BigUint {
    count_homs(g, t).unwrap()
}

#[test]
fn sp_equals_odd_so_for_every_family() {
    for g in standard_groups() {
        let d = GroupData::new(g);
        for n in 0..=12 {
            assert_eq!(
                n_of(&d, TargetFamily::Sp(n)),
                n_of(&d, TargetFamily::SOOdd(n)),
                "{} n={}",
                g,
                n
            );
        }
    }
}

#[test]
fn su_equals_pu() {
    for g in standard_groups() {
        let d = GroupData::new(g);
        for n in 1..=10 {
            assert_eq!(
                n_of(&d, TargetFamily::SU(n)),
                n_of(&d, TargetFamily::PU(n)),
                "{} n={}",
                g,
                n
            );
        }
    }
}

#[test]
fn psp_equals_spin_for_exceptional() {
    for g in [
        GroupSpec::BinaryTetrahedral,
        GroupSpec::BinaryOctahedral,
        GroupSpec::BinaryIcosahedral,
    ] {
        let d = GroupData::new(g);
        for n in 0..=10 {
            assert_eq!(
                n_of(&d, TargetFamily::PSp(n)),
                n_of(&d, TargetFamily::SpinOdd(n)),
                "{} n={}",
                g,
                n
            );
        }
    }
}

#[test]
fn no_z2_cohomology_means_no_refinement() {
    for g in [GroupSpec::BinaryTetrahedral, GroupSpec::BinaryIcosahedral] {
        let d = GroupData::new(g);
        for n in 0..=8 {
            assert_eq!(
                n_of(&d, TargetFamily::Sp(n)),
                n_of(&d, TargetFamily::PSp(n))
            );
            assert_eq!(
                n_of(&d, TargetFamily::SOOdd(n)),
                n_of(&d, TargetFamily::SpinOdd(n))
            );
        }
    }
}

#[test]
fn octahedral_sector_bookkeeping() {
    let d = GroupData::new(GroupSpec::BinaryOctahedral);
    for n in 0..=10 {
        let sp = all_sectors(&d, Side::Sp, n).unwrap();
        let spin = all_sectors(&d, Side::Spin, n).unwrap();
        assert_eq!(
            BigUint::from(sp[0].fixed + sp[0].moved),
            n_of(&d, TargetFamily::Sp(n))
        );
        let so: u64 = spin.iter().map(|s| s.dim_v0()).sum();
        assert_eq!(BigUint::from(so), n_of(&d, TargetFamily::SOOdd(n)));
        // V^e_m on one side matches V^m_e on the other.
        for e in 0..2 {
            for m in 0..2 {
                let dim = |s: &[dualcount_core::counting::SectorCount], x: usize, w: usize| {
                    if x == 0 {
                        s[w].dim_v0()
                    } else {
                        s[w].dim_v1()
                    }
                };
                assert_eq!(dim(&sp, e, m), dim(&spin, m, e), "n={} e={} m={}", n, e, m);
            }
        }
    }
}

#[test]
fn lattice_counts_match_enumeration_for_cyclic_groups() {
    for m in 1..=6u32 {
        let d = GroupData::new(GroupSpec::Cyclic(m));
        for k in 2..=4u32 {
            for (lat, fam) in [
                (format!("SU({})", k), TargetFamily::SU(k)),
                (format!("PU({})", k), TargetFamily::PU(k)),
            ] {
                let a =
                    weyl_orbit_count(&named_group(&lat).unwrap(), m, DEFAULT_POINT_CAP).unwrap();
                assert_eq!(BigUint::from(a), n_of(&d, fam), "Z{} {}", m, lat);
            }
            // U(k): S_k permuting Z^k.
            let gens: Vec<IntMat> = (0..k as usize - 1)
                .map(|i| {
                    let mut p = dualcount_core::intmat::identity(k as usize);
                    p.swap(i, i + 1);
                    p
                })
                .collect();
            let u = lattice::orbit_count_generic(&gens, m, DEFAULT_POINT_CAP).unwrap();
            assert_eq!(BigUint::from(u), n_of(&d, TargetFamily::U(k)));
        }
        for n in 1..=3u32 {
            let sp = weyl_orbit_count(
                &named_group(&format!("Sp({})", n)).unwrap(),
                m,
                DEFAULT_POINT_CAP,
            )
            .unwrap();
            assert_eq!(
                BigUint::from(sp),
                n_of(&d, TargetFamily::Sp(n)),
                "Z{} Sp({})",
                m,
                n
            );
            let so = weyl_orbit_count(
                &named_group(&format!("SO({})", 2 * n + 1)).unwrap(),
                m,
                DEFAULT_POINT_CAP,
            )
            .unwrap();
            assert_eq!(
                BigUint::from(so),
                n_of(&d, TargetFamily::SOOdd(n)),
                "Z{} SO({})",
                m,
                2 * n + 1
            );
        }
    }
}

#[test]
fn swap_holds_for_covered_cases() {
    for g in standard_groups() {
        let d = GroupData::new(g);
        for n in 1..=4 {
            let r = verify_swap_equivalence(&d, SwapPair::SuPu(n)).unwrap();
            assert!(r.equivalent, "{} SU({})", g, n);
        }
    }
    for g in [
        GroupSpec::BinaryTetrahedral,
        GroupSpec::BinaryOctahedral,
        GroupSpec::BinaryIcosahedral,
    ] {
        let d = GroupData::new(g);
        for n in 0..=6 {
            assert!(
                verify_swap_equivalence(&d, SwapPair::SpSpin(n))
                    .unwrap()
                    .equivalent,
                "{} n={}",
                g,
                n
            );
        }
    }
    for m in 2..=4 {
        let d = GroupData::new(GroupSpec::Cyclic(m));
        for n in 1..=2 {
            assert!(
                verify_swap_equivalence(&d, SwapPair::SpSpin(n))
                    .unwrap()
                    .equivalent,
                "Z{} n={}",
                m,
                n
            );
        }
    }
}

#[test]
fn gauging_for_sp_side() {
    let d = GroupData::new(GroupSpec::BinaryOctahedral);
    for n in 0..=8 {
        for (side, g, q) in [
            (FSide::Sp(n), TargetFamily::Sp(n), TargetFamily::PSp(n)),
            (
                FSide::Spin(n),
                TargetFamily::SpinOdd(n),
                TargetFamily::SOOdd(n),
            ),
        ] {
            let t = f_rep_character(&d, side).unwrap();
            let as_int = |c: Cyclo| BigUint::from(c.as_integer().unwrap() as u64);
            assert_eq!(as_int(t.dim_h2_invariants()), n_of(&d, g));
            assert_eq!(as_int(t.dim_h1_invariants()), n_of(&d, q));
        }
    }
}
