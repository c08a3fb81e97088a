use dualcount_core::counting::{all_sectors, count_homs, Side, TargetFamily};
use dualcount_core::grouprep::standard_groups;
use dualcount_core::GroupData;
use dualcount_series::{builtin_cases, builtin_genfun, GenTarget};
use num_bigint::BigInt;

fn enumerated(d: &GroupData, t: GenTarget, n: u32) -> BigInt {
    let sector = |side, w: usize| all_sectors(d, side, n).unwrap()[w];
    let v: u64 = match t {
        GenTarget::Sp => return count_homs(d, TargetFamily::Sp(n)).unwrap().into(),
        GenTarget::SO => return count_homs(d, TargetFamily::SOOdd(n)).unwrap().into(),
        GenTarget::Y00Sp => sector(Side::Sp, 0).dim_v0(),
        GenTarget::Y00Spin => sector(Side::Spin, 0).dim_v0(),
        GenTarget::Y01Sp => sector(Side::Sp, 1).fixed,
        GenTarget::Y01Spin => sector(Side::Spin, 0).moved / 2,
        GenTarget::Y11Spin => sector(Side::Spin, 1).moved / 2,
    };
    BigInt::from(v)
}

#[test]
fn coefficients_match_enumeration() {
    for (g, t) in builtin_cases(&standard_groups()) {
        let d = GroupData::new(g);
        let s = builtin_genfun(g, t).unwrap().expand(t.power(12)).unwrap();
        for n in 0..=12 {
            let c = s
                .coeff(t.power(n))
                .as_integer()
                .unwrap_or_else(|| panic!("{} {} n={} not integral", g, t, n));
            assert_eq!(c, enumerated(&d, t, n), "{} {} n={}", g, t, n);
        }
        // Coefficients of the other parity vanish.
        for k in 0..=t.power(12) {
            if k % 2 != t.power(0) % 2 {
                assert!(s.coeff(k).is_zero(), "{} {} q^{}", g, t, k);
            }
        }
    }
}
