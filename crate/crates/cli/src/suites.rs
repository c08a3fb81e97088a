//! Verification suites shared by `dualcount verify` and the acceptance run.

use std::fmt;

use dualcount_core::affine::{level_weights, s_matrix, verify_s_conjugation, TOLERANCE};
use dualcount_core::counting::{
    all_sectors, count_homs, f_rep_character, for_each_orthogonal, verify_swap_equivalence,
    CountError, FSide, SectorCount, Side, SwapPair, TargetFamily,
};
use dualcount_core::grouprep::standard_groups;
use dualcount_core::grouprep::sw::{w2_by_congruence, w2_by_product};
use dualcount_core::intmat::{self, IntMat};
use dualcount_core::lattice::{
    self, dual_pair_catalog, named_group, weyl_orbit_count, DualPair, LieType,
};
use dualcount_core::{mckay, GroupData, GroupSpec};
use dualcount_series::{
    builtin_cases, builtin_genfun, proof_instances, prove_identity, prove_identity_with,
    random_params, GenTarget, Identity, Method, Params, Verdict, FALLBACK_ORDER,
};
use num_bigint::BigUint;
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub item: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, item: impl fmt::Display, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                item: item.to_string(),
                detail: detail(),
            });
        }
    }

    fn fail(&mut self, item: impl fmt::Display, detail: impl fmt::Display) {
        self.checks += 1;
        self.failures.push(Failure {
            item: item.to_string(),
            detail: detail.to_string(),
        });
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// Unsupported inputs abort the suite; anything else is a failed check.
fn count(g: &GroupData, t: TargetFamily) -> Result<Result<BigUint, CountError>, CliError> {
    match count_homs(g, t) {
        Err(CountError::Unsupported(m)) => Err(CliError::Unsupported(m)),
        r => Ok(r),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DualityPair {
    SpSo,
    SuPu,
    PspSpin,
}

impl DualityPair {
    pub fn name(&self) -> &'static str {
        match self {
            DualityPair::SpSo => "sp-so",
            DualityPair::SuPu => "su-pu",
            DualityPair::PspSpin => "psp-spin",
        }
    }

    pub fn default_groups(&self) -> Vec<GroupSpec> {
        match self {
            DualityPair::PspSpin => {
                vec![
                    GroupSpec::BinaryTetrahedral,
                    GroupSpec::BinaryOctahedral,
                    GroupSpec::BinaryIcosahedral,
                ]
            }
            _ => standard_groups(),
        }
    }

    fn targets(&self, n: u32) -> Option<(TargetFamily, TargetFamily)> {
        match self {
            DualityPair::SpSo => Some((TargetFamily::Sp(n), TargetFamily::SOOdd(n))),
            DualityPair::SuPu if n >= 1 => Some((TargetFamily::SU(n), TargetFamily::PU(n))),
            DualityPair::SuPu => None,
            DualityPair::PspSpin => Some((TargetFamily::PSp(n), TargetFamily::SpinOdd(n))),
        }
    }
}

pub fn duality(
    pair: DualityPair,
    groups: &[GroupSpec],
    max_n: u32,
) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("duality");
    for &g in groups {
        let d = GroupData::new(g);
        for n in 0..=max_n {
            let Some((a, b)) = pair.targets(n) else {
                continue;
            };
            let item = format!("{} {} vs {}", g, a, b);
            match (count(&d, a)?, count(&d, b)?) {
                (Ok(x), Ok(y)) => r.check(x == y, item, || format!("{} != {}", x, y)),
                (Err(e), _) | (_, Err(e)) => r.fail(item, e),
            }
        }
    }
    Ok(r)
}

fn sector_dim(s: &[SectorCount], x: usize, w: usize) -> Option<u64> {
    let sec = s.get(w)?;
    Some(if x == 0 { sec.dim_v0() } else { sec.dim_v1() })
}

/// Sector-level comparison for Γ with Z2 data (T̂, Ô, Î), the swap of F-characters,
/// and the gauging relations; cyclic and dihedral groups get the SU/PU swap.
pub fn refined(g: GroupSpec, max_n: u32) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("refined");
    let d = GroupData::new(g);
    let exceptional = matches!(
        g,
        GroupSpec::BinaryTetrahedral | GroupSpec::BinaryOctahedral | GroupSpec::BinaryIcosahedral
    );
    if !exceptional {
        for n in 1..=max_n {
            match verify_swap_equivalence(&d, SwapPair::SuPu(n)) {
                Ok(s) => r.check(s.equivalent, format!("{} swap {}", g, s.pair), || {
                    format!("none of {} identifications", s.tried)
                }),
                Err(CountError::Unsupported(m)) => return Err(CliError::Unsupported(m)),
                Err(e) => r.fail(format!("{} swap SU({})", g, n), e),
            }
        }
        return Ok(r);
    }
    for n in 0..=max_n {
        let (sp, spin) = match (all_sectors(&d, Side::Sp, n), all_sectors(&d, Side::Spin, n)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                r.fail(format!("{} n={} sectors", g, n), e);
                continue;
            }
        };
        r.check(
            sp.len() == spin.len(),
            format!("{} n={} sector count", g, n),
            || {
                format!(
                    "{} sectors on the Sp side, {} on the Spin side",
                    sp.len(),
                    spin.len()
                )
            },
        );
        // x acts only when H¹(Γ; Z2) ≠ 0, i.e. for Ô.
        let xs = if g == GroupSpec::BinaryOctahedral {
            2
        } else {
            1
        };
        for e in 0..xs {
            for m in 0..sp.len() {
                let a = sector_dim(&sp, e, m);
                let b = sector_dim(&spin, m, e);
                r.check(
                    a.is_some() && a == b,
                    format!("{} n={} V^{}_{}", g, n, e, m),
                    || format!("Sp side {:?}, Spin side {:?}", a, b),
                );
            }
        }
        for s in sp.iter().chain(&spin) {
            r.check(
                s.moved % 2 == 0,
                format!("{} n={} w={} moved", g, n, s.w),
                || format!("odd moved count {}", s.moved),
            );
        }
        match verify_swap_equivalence(&d, SwapPair::SpSpin(n)) {
            Ok(s) => r.check(s.equivalent, format!("{} swap {}", g, s.pair), || {
                format!("none of {} identifications", s.tried)
            }),
            Err(e) => r.fail(format!("{} swap n={}", g, n), e),
        }
        for (side, full, quotient) in [
            (FSide::Sp(n), TargetFamily::Sp(n), TargetFamily::PSp(n)),
            (
                FSide::Spin(n),
                TargetFamily::SpinOdd(n),
                TargetFamily::SOOdd(n),
            ),
        ] {
            let item = format!("{} {} gauging", g, side);
            let t = match f_rep_character(&d, side) {
                Ok(t) => t,
                Err(e) => {
                    r.fail(item, e);
                    continue;
                }
            };
            let as_big = |c: Option<i64>| c.and_then(|x| u64::try_from(x).ok()).map(BigUint::from);
            let h2 = as_big(t.dim_h2_invariants().as_integer());
            let h1 = as_big(t.dim_h1_invariants().as_integer());
            let (nf, nq) = (count_homs(&d, full).ok(), count_homs(&d, quotient).ok());
            r.check(h2.is_some() && h2 == nf, &item, || {
                format!("H2-invariants {:?}, N({}) {:?}", h2, full, nf)
            });
            r.check(h1.is_some() && h1 == nq, &item, || {
                format!("H1-invariants {:?}, N({}) {:?}", h1, quotient, nq)
            });
        }
    }
    Ok(r)
}

/// What `verify identities` should run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentitySelection {
    /// One identity at given parameters.
    Single(Identity, Params),
    /// Proof instances and random tuples, for one family or all of them.
    Sweep {
        only: Option<Identity>,
        random: usize,
        seed: u64,
    },
}

pub fn identities(sel: &IdentitySelection) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("identities");
    let run = |r: &mut SuiteReport, id: Identity, p: &Params, require_cleared: bool| {
        match prove_identity(id, p) {
            Ok(rep) => {
                let ok = if require_cleared {
                    rep.verdict == Verdict::Proven
                } else {
                    rep.passed()
                };
                r.check(ok, format!("{} ({})", id, p), || {
                    format!(
                        "verdict {:?} by {:?} at {}",
                        rep.verdict, rep.method, rep.degree_or_order
                    )
                })
            }
            Err(e) => r.fail(format!("{} ({})", id, p), e),
        }
    };
    match sel {
        IdentitySelection::Single(id, p) => {
            p.check(*id)?;
            run(&mut r, *id, p, false);
        }
        IdentitySelection::Sweep { only, random, seed } => {
            let wanted = |id: &Identity| only.map_or(true, |o| o == *id);
            for (id, p) in proof_instances().iter().filter(|(id, _)| wanted(id)) {
                run(&mut r, *id, p, true);
            }
            for (fi, id) in [Identity::KF1, Identity::KF2, Identity::KF3, Identity::KF4]
                .iter()
                .enumerate()
            {
                if !wanted(id) {
                    continue;
                }
                for p in random_params(*id, *random, seed.wrapping_add(fi as u64)) {
                    run(&mut r, *id, &p, true);
                }
            }
            if wanted(&Identity::PropY) {
                match prove_identity_with(Identity::PropY, &Params::None, Some(Method::Series)) {
                    Ok(rep) => r.check(
                        rep.verdict == Verdict::AgreesToOrder
                            && rep.degree_or_order >= FALLBACK_ORDER,
                        "PropY series",
                        || format!("verdict {:?} at order {}", rep.verdict, rep.degree_or_order),
                    ),
                    Err(e) => r.fail("PropY series", e),
                }
            }
        }
    }
    Ok(r)
}

pub fn zn_pair(p: &DualPair, max_n: u32, cap: u64) -> SuiteReport {
    let mut r = SuiteReport::new("zn-lattice");
    for n in 1..=max_n {
        let item = format!("{} n={}", p.label(), n);
        match lattice::verify_zn_duality(&p.left, &p.right, n, cap) {
            Ok((a, b)) => r.check(a == b, item, || format!("{} orbits against {}", a, b)),
            Err(e) => r.fail(item, e),
        }
    }
    r
}

pub fn zn_lattice(max_rank: usize, max_n: u32, cap: u64) -> SuiteReport {
    let mut r = SuiteReport::new("zn-lattice");
    for p in dual_pair_catalog(max_rank) {
        r.absorb(zn_pair(&p, max_n, cap));
    }
    r
}

/// The A_k (k ≤ 4, level ≤ 4), D4, D5, E6 (level ≤ 2) sweep.
pub fn default_smatrix_cases() -> Vec<(LieType, u32)> {
    let mut v = Vec::new();
    for k in 1..=4 {
        for n in 1..=4 {
            v.push((LieType::A(k), n));
        }
    }
    for t in [LieType::D(4), LieType::D(5), LieType::E6] {
        for n in 1..=2 {
            v.push((t, n));
        }
    }
    v
}

pub fn smatrix(cases: &[(LieType, u32)], allow_large: bool) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("smatrix");
    for &(t, n) in cases {
        let item = format!("{} level {}", t, n);
        let lw = level_weights(t, n)?;
        match count_homs(&lw.group, TargetFamily::U(n)) {
            Ok(c) => r.check(
                BigUint::from(lw.len()) == c,
                format!("{} weights", item),
                || format!("{} weights, {} representations", lw.len(), c),
            ),
            Err(e) => r.fail(format!("{} weights", item), e),
        }
        let s = s_matrix(&lw, allow_large)?;
        let (u, sym) = (s.unitarity_error(), s.symmetry_error());
        r.check(u < TOLERANCE, format!("{} unitarity", item), || {
            format!("error {:e}", u)
        });
        r.check(sym < TOLERANCE, format!("{} symmetry", item), || {
            format!("error {:e}", sym)
        });
        let c = verify_s_conjugation(&lw, &s);
        r.check(
            c.holds && c.max_abs_error < TOLERANCE,
            format!("{} conjugation", item),
            || format!("holds {}, max error {:e}", c.holds, c.max_abs_error),
        );
    }
    Ok(r)
}

/// Count that a builtin generating function should reproduce at rank n.
pub fn enumerated(d: &GroupData, t: GenTarget, n: u32) -> Result<BigUint, CountError> {
    let sector = |side, w: usize| -> Result<SectorCount, CountError> {
        all_sectors(d, side, n)?
            .get(w)
            .copied()
            .ok_or_else(|| CountError::Unsupported(format!("no sector {} for {}", w, d.spec)))
    };
    let v = match t {
        GenTarget::Sp => return count_homs(d, TargetFamily::Sp(n)),
        GenTarget::SO => return count_homs(d, TargetFamily::SOOdd(n)),
        GenTarget::Y00Sp => sector(Side::Sp, 0)?.dim_v0(),
        GenTarget::Y00Spin => sector(Side::Spin, 0)?.dim_v0(),
        GenTarget::Y01Sp => sector(Side::Sp, 1)?.fixed,
        GenTarget::Y01Spin => sector(Side::Spin, 0)?.moved / 2,
        GenTarget::Y11Spin => sector(Side::Spin, 1)?.moved / 2,
    };
    Ok(BigUint::from(v))
}

pub fn oracle(groups: &[GroupSpec], max_n: u32) -> SuiteReport {
    let mut r = SuiteReport::new("oracle");
    for (g, t) in builtin_cases(groups) {
        let d = GroupData::new(g);
        let top = t.power(max_n);
        let s = match builtin_genfun(g, t).and_then(|e| e.expand(top)) {
            Ok(s) => s,
            Err(e) => {
                r.fail(format!("{} {}", g, t), e);
                continue;
            }
        };
        for n in 0..=max_n {
            let item = format!("{} {} n={}", g, t, n);
            let c = s.coeff(t.power(n));
            let c = c.as_integer().and_then(|x| BigUint::try_from(x).ok());
            match enumerated(&d, t, n) {
                Ok(e) => r.check(c.as_ref() == Some(&e), item, || {
                    format!("coefficient {:?}, enumeration {}", c, e)
                }),
                Err(e) => r.fail(item, e),
            }
        }
        for k in 0..=top {
            if k % 2 != t.power(0) % 2 {
                r.check(s.coeff(k).is_zero(), format!("{} {} q^{}", g, t, k), || {
                    s.coeff(k).to_string()
                });
            }
        }
    }
    r
}

fn permutation_generators(k: usize) -> Vec<IntMat> {
    (0..k.saturating_sub(1))
        .map(|i| {
            let mut p = intmat::identity(k);
            p.swap(i, i + 1);
            p
        })
        .collect()
}

/// Orbit counts on lattices against enumeration for cyclic Γ = Z_n:
/// SU(k), PU(k) through their Weyl groups and U(k) through S_k on Z^k.
pub fn cross_oracle(max_k: u32, max_n: u32, cap: u64) -> SuiteReport {
    let mut r = SuiteReport::new("cross-oracle");
    for n in 1..=max_n {
        let d = GroupData::new(GroupSpec::Cyclic(n));
        for k in 2..=max_k {
            let mut pairs: Vec<(String, Result<u64, lattice::LatticeError>, TargetFamily)> =
                Vec::new();
            for (name, fam) in [
                (format!("SU({})", k), TargetFamily::SU(k)),
                (format!("PU({})", k), TargetFamily::PU(k)),
            ] {
                let c = named_group(&name).and_then(|g| weyl_orbit_count(&g, n, cap));
                pairs.push((name, c, fam));
            }
            let u = lattice::orbit_count_generic(&permutation_generators(k as usize), n, cap);
            pairs.push((format!("U({})", k), u, TargetFamily::U(k)));
            for (name, lat, fam) in pairs {
                let item = format!("Z:{} {}", n, name);
                match (lat, count_homs(&d, fam)) {
                    (Ok(a), Ok(b)) => r.check(BigUint::from(a) == b, item, || {
                        format!("{} orbits, {} classes", a, b)
                    }),
                    (Err(e), _) => r.fail(item, e),
                    (_, Err(e)) => r.fail(item, e),
                }
            }
        }
    }
    r
}

/// Structural checks: Σ dim² = |Γ|, McKay graphs, even moved counts, and the
/// two Stiefel–Whitney computations on every orthogonal Ô-representation of
/// dimension ≤ max_sw_dim.
pub fn properties(max_sw_dim: u32) -> SuiteReport {
    let mut r = SuiteReport::new("properties");
    for g in standard_groups() {
        let d = GroupData::new(g);
        let s: u32 = d.dims().iter().map(|x| x * x).sum();
        r.check(s == g.order(), format!("{} sum of squares", g), || {
            format!("{} against order {}", s, g.order())
        });
        match mckay::build(&d) {
            Ok(m) => r.check(
                m.ade.label() == g.ade_label(),
                format!("{} McKay graph", g),
                || format!("{} against {}", m.ade.label(), g.ade_label()),
            ),
            Err(e) => r.fail(format!("{} McKay graph", g), e),
        }
    }
    for g in [
        GroupSpec::BinaryTetrahedral,
        GroupSpec::BinaryOctahedral,
        GroupSpec::BinaryIcosahedral,
    ] {
        let d = GroupData::new(g);
        for n in 0..=10 {
            for side in [Side::Sp, Side::Spin] {
                match all_sectors(&d, side, n) {
                    Ok(secs) => {
                        for s in secs {
                            r.check(
                                s.moved % 2 == 0,
                                format!("{} {:?} n={} w={}", g, side, n, s.w),
                                || format!("moved {}", s.moved),
                            );
                        }
                    }
                    Err(e) => r.fail(format!("{} {:?} n={}", g, side, n), e),
                }
            }
        }
    }
    let d = GroupData::new(GroupSpec::BinaryOctahedral);
    for dim in 0..=max_sw_dim {
        let mut seen = 0usize;
        let mut bad: Vec<String> = Vec::new();
        for_each_orthogonal(&d, dim, true, &mut |v| {
            seen += 1;
            let (a, b) = (w2_by_product(&d, v), w2_by_congruence(&d, v));
            if a.is_err() || a != b {
                bad.push(format!("{:?}", v));
            }
        });
        r.checks += seen;
        for v in bad {
            r.failures.push(Failure {
                item: format!("Ohat w2 dim {}", dim),
                detail: v,
            });
        }
    }
    r
}
