//! Counting homomorphisms Γ → G up to conjugation through multiplicity
//! vectors of Γ-representations, plus the twisted-sector refinements and the
//! characters of F(Γ; Z) = H¹(Γ; Z) × H²(Γ; Z)^ acting on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::abelian::{Elem, FiniteAbelian};
use crate::cyclo::Cyclo;
use crate::grouprep::sw::sector_of_so_rep;
use crate::grouprep::twisted::twisted_irreps;
use crate::grouprep::{GroupData, GroupSpec, Reality};
use crate::lattice::{self, LatticeError, DEFAULT_POINT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetFamily {
    U(u32),
    SU(u32),
    PU(u32),
    Sp(u32),
    /// O(2n+1)
    OOdd(u32),
    /// SO(2n+1)
    SOOdd(u32),
    /// Spin(2n+1)
    SpinOdd(u32),
    PSp(u32),
}

impl TargetFamily {
    pub fn rank_param(&self) -> u32 {
        match *self {
            TargetFamily::U(n)
            | TargetFamily::SU(n)
            | TargetFamily::PU(n)
            | TargetFamily::Sp(n)
            | TargetFamily::OOdd(n)
            | TargetFamily::SOOdd(n)
            | TargetFamily::SpinOdd(n)
            | TargetFamily::PSp(n) => n,
        }
    }

    /// Complex dimension of the representation being enumerated.
    pub fn complex_dim(&self) -> u32 {
        match *self {
            TargetFamily::U(n) | TargetFamily::SU(n) | TargetFamily::PU(n) => n,
            TargetFamily::Sp(n) | TargetFamily::PSp(n) => 2 * n,
            TargetFamily::OOdd(n) | TargetFamily::SOOdd(n) | TargetFamily::SpinOdd(n) => 2 * n + 1,
        }
    }
}

impl fmt::Display for TargetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TargetFamily::U(n) => write!(f, "U({})", n),
            TargetFamily::SU(n) => write!(f, "SU({})", n),
            TargetFamily::PU(n) => write!(f, "PU({})", n),
            TargetFamily::Sp(n) => write!(f, "Sp({})", n),
            TargetFamily::OOdd(n) => write!(f, "O({})", 2 * n + 1),
            TargetFamily::SOOdd(n) => write!(f, "SO({})", 2 * n + 1),
            TargetFamily::SpinOdd(n) => write!(f, "Spin({})", 2 * n + 1),
            TargetFamily::PSp(n) => write!(f, "PSp({})", n),
        }
    }
}

impl FromStr for TargetFamily {
    type Err = CountError;
    fn from_str(s: &str) -> Result<Self, CountError> {
        let bad = || CountError::Parse(s.to_string());
        let s = s.trim();
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let k: u32 = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let odd = |k: u32| -> Result<u32, CountError> {
            if k % 2 == 1 {
                Ok((k - 1) / 2)
            } else {
                Err(CountError::Unsupported(format!(
                    "even orthogonal target {} is not covered",
                    s
                )))
            }
        };
        Ok(match head {
            "U" => TargetFamily::U(k),
            "SU" => TargetFamily::SU(k),
            "PU" => TargetFamily::PU(k),
            "Sp" => TargetFamily::Sp(k),
            "PSp" => TargetFamily::PSp(k),
            "O" => TargetFamily::OOdd(odd(k)?),
            "SO" => TargetFamily::SOOdd(odd(k)?),
            "Spin" => TargetFamily::SpinOdd(odd(k)?),
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CountError {
    #[error("cannot parse target `{0}`")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

impl From<LatticeError> for CountError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::TooLarge { .. } => CountError::TooLarge(e.to_string()),
            other => CountError::Unsupported(other.to_string()),
        }
    }
}

/// The data of an irrep relevant to the enumeration.
#[derive(Clone, Copy, Debug)]
struct Shape {
    dim: u32,
    reality: Reality,
    partner: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Structure {
    /// No reality condition.
    Complex,
    /// Quaternionic form: strictly real irreps occur evenly.
    Quaternionic,
    /// Real form: pseudoreal irreps occur evenly.
    Real,
}

/// A minimal admissible summand: `weight` complex dimensions adding `parts`.
#[derive(Clone, Debug)]
struct Block {
    weight: u32,
    parts: Vec<(usize, u32)>,
}

fn blocks(shapes: &[Shape], st: Structure) -> Vec<Block> {
    let mut out = Vec::new();
    for (i, s) in shapes.iter().enumerate() {
        match (st, s.reality) {
            (Structure::Complex, _) => out.push(Block {
                weight: s.dim,
                parts: vec![(i, 1)],
            }),
            (_, Reality::Complex) => {
                if i < s.partner {
                    out.push(Block {
                        weight: 2 * s.dim,
                        parts: vec![(i, 1), (s.partner, 1)],
                    });
                }
            }
            (Structure::Quaternionic, Reality::StrictlyReal)
            | (Structure::Real, Reality::Pseudoreal) => out.push(Block {
                weight: 2 * s.dim,
                parts: vec![(i, 2)],
            }),
            _ => out.push(Block {
                weight: s.dim,
                parts: vec![(i, 1)],
            }),
        }
    }
    out
}

/// Calls `f` on every multiplicity vector of total dimension `dim` built from
/// the blocks, in lexicographic order of block counts.
fn for_each_vector(nirreps: usize, bl: &[Block], dim: u32, f: &mut dyn FnMut(&[u32])) {
    fn rec(bl: &[Block], k: usize, rem: u32, v: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if k == bl.len() {
            if rem == 0 {
                f(v);
            }
            return;
        }
        let b = &bl[k];
        let max = rem / b.weight;
        for c in 0..=max {
            if c > 0 {
                for &(i, m) in &b.parts {
                    v[i] += m;
                }
            }
            rec(bl, k + 1, rem - c * b.weight, v, f);
        }
        for &(i, m) in &b.parts {
            v[i] -= m * max;
        }
    }
    let mut v = vec![0u32; nirreps];
    rec(bl, 0, dim, &mut v, f);
}

fn shapes_of(g: &GroupData) -> Vec<Shape> {
    g.irreps
        .iter()
        .map(|r| Shape {
            dim: r.dim,
            reality: r.reality,
            partner: r.partner,
        })
        .collect()
}

fn det_of(g: &GroupData, v: &[u32]) -> Elem {
    let a = &g.ab.group;
    let mut s = a.zero();
    for (i, &k) in v.iter().enumerate() {
        if k > 0 {
            s = a.add(&s, &a.scale(&g.irreps[i].det, k as i64));
        }
    }
    s
}

/// Every multiplicity vector satisfying the constraints of `t`, for the
/// families with a direct description (U, SU, Sp, O, SO). PU, Spin and PSp
/// are counted from these.
pub fn solutions(g: &GroupData, t: TargetFamily) -> Result<Vec<Vec<u32>>, CountError> {
    let mut out = Vec::new();
    for_each_solution(g, t, &mut |v| out.push(v.to_vec()))?;
    Ok(out)
}

pub fn for_each_solution(
    g: &GroupData,
    t: TargetFamily,
    f: &mut dyn FnMut(&[u32]),
) -> Result<(), CountError> {
    let shapes = shapes_of(g);
    let (st, det_trivial) = match t {
        TargetFamily::U(_) => (Structure::Complex, false),
        TargetFamily::SU(_) => (Structure::Complex, true),
        TargetFamily::Sp(_) => (Structure::Quaternionic, false),
        TargetFamily::OOdd(_) => (Structure::Real, false),
        TargetFamily::SOOdd(_) => (Structure::Real, true),
        other => {
            return Err(CountError::Unsupported(format!(
                "{} has no direct multiplicity description",
                other
            )))
        }
    };
    let bl = blocks(&shapes, st);
    if det_trivial {
        let a = g.ab.group.clone();
        for_each_vector(g.len(), &bl, t.complex_dim(), &mut |v| {
            if a.is_zero(&det_of(g, v)) {
                f(v)
            }
        });
    } else {
        for_each_vector(g.len(), &bl, t.complex_dim(), f);
    }
    Ok(())
}

/// Real-form multiplicity vectors of complex dimension `dim` (any parity),
/// restricted to trivial determinant when `oriented`.
pub fn for_each_orthogonal(g: &GroupData, dim: u32, oriented: bool, f: &mut dyn FnMut(&[u32])) {
    let bl = blocks(&shapes_of(g), Structure::Real);
    let a = g.ab.group.clone();
    for_each_vector(g.len(), &bl, dim, &mut |v| {
        if !oriented || a.is_zero(&det_of(g, v)) {
            f(v)
        }
    });
}

fn count_direct(g: &GroupData, t: TargetFamily) -> Result<u64, CountError> {
    let mut c = 0u64;
    for_each_solution(g, t, &mut |_| c += 1)?;
    Ok(c)
}

/// N(Γ, G): the number of homomorphisms Γ → G up to conjugation.
pub fn count_homs(g: &GroupData, t: TargetFamily) -> Result<BigUint, CountError> {
    let n = t.rank_param();
    let c = match t {
        TargetFamily::U(_)
        | TargetFamily::SU(_)
        | TargetFamily::Sp(_)
        | TargetFamily::OOdd(_)
        | TargetFamily::SOOdd(_) => count_direct(g, t)?,
        TargetFamily::PU(_) => count_pu(g, n),
        TargetFamily::SpinOdd(_) | TargetFamily::PSp(_) => {
            if matches!(g.spec, GroupSpec::BinaryDihedral(_)) {
                return Err(CountError::Unsupported(format!(
                    "{} for binary dihedral groups",
                    t
                )));
            }
            if n == 0 {
                // Spin(1) ≅ Z2; PSp(0) has one empty twisted homomorphism per
                // class in H²(Γ; Z2).
                match t {
                    TargetFamily::SpinOdd(_) => g.h1(2).len() as u64,
                    _ => g.h2_reps(2).len() as u64,
                }
            } else {
                match g.spec {
                    GroupSpec::Cyclic(m) => {
                        let name = match t {
                            TargetFamily::SpinOdd(_) => format!("Spin({})", 2 * n + 1),
                            _ => format!("PSp({})", n),
                        };
                        lattice::weyl_orbit_count(
                            &lattice::named_group(&name)?,
                            m,
                            DEFAULT_POINT_CAP,
                        )?
                    }
                    _ => {
                        let side = match t {
                            TargetFamily::SpinOdd(_) => Side::Spin,
                            _ => Side::Sp,
                        };
                        let sectors = all_sectors(g, side, n)?;
                        match side {
                            Side::Spin => sectors[0].fixed + sectors[0].moved,
                            Side::Sp => sectors.iter().map(|s| s.fixed + s.moved / 2).sum(),
                        }
                    }
                }
            }
        }
    };
    Ok(BigUint::from(c))
}

/// Orbits of A (tensoring by 1-dim irreps) on U(n)-solutions, by Burnside.
/// Every PU(n)-valued homomorphism lifts to U(n) since H³(Γ; Z) = 0.
fn count_pu(g: &GroupData, n: u32) -> u64 {
    let perms: Vec<Vec<usize>> =
        g.ab.group
            .elements()
            .iter()
            .map(|a| g.twist_permutation(a))
            .collect();
    let bl = blocks(&shapes_of(g), Structure::Complex);
    let mut fixed_total = 0u64;
    for_each_vector(g.len(), &bl, n, &mut |v| {
        for p in &perms {
            if (0..v.len()).all(|i| v[p[i]] == v[i]) {
                fixed_total += 1;
            }
        }
    });
    debug_assert_eq!(fixed_total % perms.len() as u64, 0);
    fixed_total / perms.len() as u64
}

/// Which member of a Langlands pair the sector data describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Sp(n) ⊃ Z2, with quotient PSp(n).
    Sp,
    /// Spin(2n+1) ⊃ Z2, with quotient SO(2n+1).
    Spin,
}

/// Twisted homomorphisms of class w, split by the action of x ∈ H¹(Γ; Z2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectorCount {
    pub w: u32,
    pub fixed: u64,
    pub moved: u64,
}

impl SectorCount {
    /// Dimension of the x-invariant part of V_w.
    pub fn dim_v0(&self) -> u64 {
        self.fixed + self.moved / 2
    }

    /// Dimension of the x-anti-invariant part of V_w.
    pub fn dim_v1(&self) -> u64 {
        self.moved / 2
    }
}

/// Sector data for Γ ∈ {T̂, Ô, Î}. For T̂ and Î both H¹ and H² with Z2
/// coefficients vanish and there is a single sector.
pub fn count_twisted(g: &GroupData, side: Side, n: u32, w: u32) -> Result<SectorCount, CountError> {
    match g.spec {
        GroupSpec::BinaryOctahedral => {}
        GroupSpec::BinaryTetrahedral | GroupSpec::BinaryIcosahedral => {
            if w != 0 {
                return Err(CountError::Unsupported(format!("H^2({}; Z2) = 0", g.spec)));
            }
            let t = match side {
                Side::Sp => TargetFamily::Sp(n),
                Side::Spin => TargetFamily::SOOdd(n),
            };
            return Ok(SectorCount {
                w: 0,
                fixed: count_direct(g, t)?,
                moved: 0,
            });
        }
        _ => {
            return Err(CountError::Unsupported(format!(
                "refined Z2 counting for {}",
                g.spec
            )))
        }
    }
    if w > 1 {
        return Err(CountError::Unsupported(format!(
            "w = {} is not a class in H^2(Ohat; Z2)",
            w
        )));
    }
    match side {
        Side::Sp => sp_sector(g, n, w),
        Side::Spin => Ok(spin_sectors(g, n)?[w as usize]),
    }
}

pub fn all_sectors(g: &GroupData, side: Side, n: u32) -> Result<Vec<SectorCount>, CountError> {
    let ws: Vec<u32> = if g.spec == GroupSpec::BinaryOctahedral {
        vec![0, 1]
    } else {
        vec![0]
    };
    if side == Side::Spin && g.spec == GroupSpec::BinaryOctahedral {
        return spin_sectors(g, n);
    }
    ws.into_iter()
        .map(|w| count_twisted(g, side, n, w))
        .collect()
}

fn sp_sector(g: &GroupData, n: u32, w: u32) -> Result<SectorCount, CountError> {
    let mut fixed = 0u64;
    let mut moved = 0u64;
    if w == 0 {
        let x = g.twist_permutation(&[1]);
        for_each_solution(g, TargetFamily::Sp(n), &mut |v| {
            if (0..v.len()).all(|i| v[x[i]] == v[i]) {
                fixed += 1;
            } else {
                moved += 1;
            }
        })?;
    } else {
        let tw = twisted_irreps(g).map_err(|e| CountError::Unsupported(e.to_string()))?;
        let shapes: Vec<Shape> = tw
            .iter()
            .map(|t| Shape {
                dim: t.dim,
                reality: t.reality,
                partner: t.partner,
            })
            .collect();
        let bl = blocks(&shapes, Structure::Quaternionic);
        for_each_vector(tw.len(), &bl, 2 * n, &mut |v| {
            if (0..v.len()).all(|i| v[tw[i].x_image] == v[i]) {
                fixed += 1;
            } else {
                moved += 1;
            }
        });
    }
    Ok(SectorCount { w, fixed, moved })
}

/// Spin(2n+1) side for Ô: each SO solution with w2 = m has either one
/// x-fixed twisted lift or two lifts exchanged by x.
fn spin_sectors(g: &GroupData, n: u32) -> Result<Vec<SectorCount>, CountError> {
    let idx = |nm: &str| g.index_of(nm).expect("Ohat irrep");
    let (i1, i3, i1p, i3p, i2pp) = (idx("1"), idx("3"), idx("1'"), idx("3'"), idx("2''"));
    let mut out = vec![
        SectorCount {
            w: 0,
            fixed: 0,
            moved: 0,
        },
        SectorCount {
            w: 1,
            fixed: 0,
            moved: 0,
        },
    ];
    let mut err = None;
    for_each_solution(
        g,
        TargetFamily::SOOdd(n),
        &mut |v| match sector_of_so_rep(g, v) {
            Ok(m) => {
                let s = &mut out[m as usize];
                if v[i2pp] > 0 || (v[i1] + v[i3] > 0 && v[i1p] + v[i3p] > 0) {
                    s.fixed += 1;
                } else {
                    s.moved += 2;
                }
            }
            Err(e) => err = Some(e),
        },
    )?;
    if let Some(e) = err {
        return Err(CountError::Inconsistent(e.to_string()));
    }
    Ok(out)
}

/// Character of F(Γ; Z) on V_Z(Γ, G), keyed by (z ∈ H¹(Γ; Z), ŵ ∈ H²(Γ; Z)^).
/// Both key sets are subsets of A = Γ^ab in its coordinates; ŵ pairs with
/// w ∈ A/|Z|A through `FiniteAbelian::pairing`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FRepCharacter {
    pub gamma: String,
    pub target: String,
    pub z_order: u32,
    pub h1: Vec<Elem>,
    pub h2_dual: Vec<Elem>,
    pub table: BTreeMap<(Elem, Elem), Cyclo>,
}

impl FRepCharacter {
    pub fn get(&self, z: &[u32], wh: &[u32]) -> &Cyclo {
        &self.table[&(z.to_vec(), wh.to_vec())]
    }

    /// dim V_Z: the value at the identity.
    pub fn dim(&self) -> Cyclo {
        let zero: Elem = vec![0; self.h1.first().map(|e| e.len()).unwrap_or(0)];
        self.get(&zero, &zero).clone()
    }

    /// Dimension of the H²^-invariant subspace.
    pub fn dim_h2_invariants(&self) -> Cyclo {
        let z0 = &self.h1[0];
        let mut s = Cyclo::zero();
        for b in &self.h2_dual {
            s = &s + self.get(z0, b);
        }
        s.scale(&num_rational::BigRational::new(
            1.into(),
            (self.h2_dual.len() as u64).into(),
        ))
    }

    /// Dimension of the H¹-invariant subspace.
    pub fn dim_h1_invariants(&self) -> Cyclo {
        let b0 = &self.h2_dual[0];
        let mut s = Cyclo::zero();
        for z in &self.h1 {
            s = &s + self.get(z, b0);
        }
        s.scale(&num_rational::BigRational::new(
            1.into(),
            (self.h1.len() as u64).into(),
        ))
    }
}

/// Which (G, Z) the character is computed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FSide {
    /// SU(n) ⊃ Z_n.
    SU(u32),
    /// Sp(n) ⊃ Z2.
    Sp(u32),
    /// Spin(2n+1) ⊃ Z2.
    Spin(u32),
}

impl fmt::Display for FSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FSide::SU(n) => write!(f, "SU({})", n),
            FSide::Sp(n) => write!(f, "Sp({})", n),
            FSide::Spin(n) => write!(f, "Spin({})", 2 * n + 1),
        }
    }
}

pub fn f_rep_character(g: &GroupData, side: FSide) -> Result<FRepCharacter, CountError> {
    let a = &g.ab.group;
    let (z_order, table) = match side {
        FSide::SU(n) => {
            if n == 0 {
                return Err(CountError::Unsupported("SU(0) has no center".into()));
            }
            (n, su_table(g, n))
        }
        FSide::Sp(n) | FSide::Spin(n) => {
            let s = if matches!(side, FSide::Sp(_)) {
                Side::Sp
            } else {
                Side::Spin
            };
            let sectors = match g.spec {
                GroupSpec::BinaryTetrahedral
                | GroupSpec::BinaryOctahedral
                | GroupSpec::BinaryIcosahedral => all_sectors(g, s, n)?,
                _ => {
                    return Err(CountError::Unsupported(format!(
                        "refined Z2 characters for {}",
                        g.spec
                    )))
                }
            };
            let reps = g.h2_reps(2);
            let mut t = BTreeMap::new();
            for z in g.h1(2) {
                for b in a.kernel_of_mul(2) {
                    let mut v = Cyclo::zero();
                    for (sec, w) in sectors.iter().zip(&reps) {
                        let c = if a.is_zero(&z) {
                            sec.fixed + sec.moved
                        } else {
                            sec.fixed
                        };
                        v = &v + &(&a.pairing(&b, w) * &Cyclo::from_int(c as i64));
                    }
                    t.insert((z.clone(), b), v);
                }
            }
            (2, t)
        }
    };
    Ok(FRepCharacter {
        gamma: g.spec.to_string(),
        target: side.to_string(),
        z_order,
        h1: g.h1(z_order),
        h2_dual: a.kernel_of_mul(z_order as i64),
        table,
    })
}

/// Twisted homomorphisms into SU(n) of class w are U(n)-representations with
/// determinant exactly the representative w̃; z ∈ Ker(n×) acts by tensoring.
fn su_table(g: &GroupData, n: u32) -> BTreeMap<(Elem, Elem), Cyclo> {
    let a = &g.ab.group;
    let reps = g.h2_reps(n);
    let h1 = g.h1(n);
    let perms: Vec<Vec<usize>> = h1.iter().map(|z| g.twist_permutation(z)).collect();
    // fixed[w][z] = number of solutions with det = w̃ fixed by z.
    let mut fixed = vec![vec![0i64; h1.len()]; reps.len()];
    let bl = blocks(&shapes_of(g), Structure::Complex);
    for_each_vector(g.len(), &bl, n, &mut |v| {
        let d = det_of(g, v);
        if let Some(wi) = reps.iter().position(|r| *r == d) {
            for (zi, p) in perms.iter().enumerate() {
                if (0..v.len()).all(|i| v[p[i]] == v[i]) {
                    fixed[wi][zi] += 1;
                }
            }
        }
    });
    let mut t = BTreeMap::new();
    for (zi, z) in h1.iter().enumerate() {
        for b in a.kernel_of_mul(n as i64) {
            let mut v = Cyclo::zero();
            for (wi, w) in reps.iter().enumerate() {
                v = &v + &(&a.pairing(&b, w) * &Cyclo::from_int(fixed[wi][zi]));
            }
            t.insert((z.clone(), b), v);
        }
    }
    t
}

/// A Langlands pair with its Z and Z^.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapPair {
    /// (SU(n) ⊃ Z_n) against its partner, which is again SU(n) ⊃ Z_n.
    SuPu(u32),
    /// (Sp(n) ⊃ Z2) against (Spin(2n+1) ⊃ Z2).
    SpSpin(u32),
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapReport {
    pub gamma: String,
    pub pair: String,
    pub equivalent: bool,
    /// Identifications H¹(Γ;Z) ≅ H²(Γ;Z^)^ under which the tables agree.
    pub identifications: Vec<String>,
    pub tried: usize,
}

/// Compares the characters of both sides under z ↔ ŵ. An identification ι
/// maps H¹ of one side to H²^ of the other; the check is
/// T(z, ι(z')) = T'(z', ι(z)) for all z, z'. The coordinate identification
/// ("standard") and its composite with inversion ("inverse") are tried first,
/// then every other isomorphism.
pub fn verify_swap_equivalence(g: &GroupData, pair: SwapPair) -> Result<SwapReport, CountError> {
    let (t1, t2, label) = match pair {
        SwapPair::SuPu(n) => {
            let t = f_rep_character(g, FSide::SU(n))?;
            (t.clone(), t, format!("SU({})/PU({})", n, n))
        }
        SwapPair::SpSpin(n) => {
            if let GroupSpec::Cyclic(m) = g.spec {
                return lattice_swap(m, n);
            }
            (
                f_rep_character(g, FSide::Sp(n))?,
                f_rep_character(g, FSide::Spin(n))?,
                format!("Sp({})/Spin({})", n, 2 * n + 1),
            )
        }
    };
    let a = &g.ab.group;
    let maps = ordered_isomorphisms(a, &t1.h1, &t1.h2_dual);
    let mut ids = Vec::new();
    for (name, iota) in &maps {
        let im = |e: &Elem| -> Elem {
            iota.iter()
                .find(|(s, _)| s == e)
                .expect("domain element")
                .1
                .clone()
        };
        let ok = t1.h1.iter().all(|z| {
            t2.h1
                .iter()
                .all(|zp| t1.get(z, &im(zp)) == t2.get(zp, &im(z)))
        });
        if ok {
            ids.push(name.clone());
        }
    }
    Ok(SwapReport {
        gamma: g.spec.to_string(),
        pair: label,
        equivalent: !ids.is_empty(),
        identifications: ids,
        tried: maps.len(),
    })
}

fn lattice_swap(m: u32, n: u32) -> Result<SwapReport, CountError> {
    let label = format!("Sp({})/Spin({})", n, 2 * n + 1);
    if n == 0 {
        return Ok(SwapReport {
            gamma: format!("Z:{}", m),
            pair: label,
            equivalent: true,
            identifications: vec!["standard".into()],
            tried: 1,
        });
    }
    let sp = lattice::named_group(&format!("Sp({})", n))?;
    let psp = lattice::named_group(&format!("PSp({})", n))?;
    let ids = lattice::refined_swap_check(sp.lie, &sp.cochar, &psp.cochar, m, DEFAULT_POINT_CAP)?;
    Ok(SwapReport {
        gamma: format!("Z:{}", m),
        pair: label,
        equivalent: !ids.is_empty(),
        identifications: ids,
        tried: 2,
    })
}

/// Isomorphisms from the subgroup `src` onto `dst`, both inside `a`, with the
/// coordinate identity and negation first when they apply.
fn ordered_isomorphisms(
    a: &FiniteAbelian,
    src: &[Elem],
    dst: &[Elem],
) -> Vec<(String, Vec<(Elem, Elem)>)> {
    let mut out: Vec<(String, Vec<(Elem, Elem)>)> = Vec::new();
    let mut all = a.isomorphisms(src, a, dst);
    let identity: Vec<(Elem, Elem)> = src.iter().map(|e| (e.clone(), e.clone())).collect();
    let negation: Vec<(Elem, Elem)> = src.iter().map(|e| (e.clone(), a.neg(e))).collect();
    let same = |x: &Vec<(Elem, Elem)>, y: &Vec<(Elem, Elem)>| {
        let mut x = x.clone();
        let mut y = y.clone();
        x.sort();
        y.sort();
        x == y
    };
    for (name, cand) in [("standard", identity), ("inverse", negation)] {
        if let Some(pos) = all.iter().position(|m| same(m, &cand)) {
            all.remove(pos);
            if !out.iter().any(|(_, m)| same(m, &cand)) {
                out.push((name.to_string(), cand));
            }
        }
    }
    for (k, m) in all.into_iter().enumerate() {
        out.push((format!("automorphism-{}", k + 1), m));
    }
    out
}

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

/// Exported counting result.
#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub gamma: String,
    pub target: String,
    pub n: u32,
    #[serde(serialize_with = "ser_big")]
    pub count: BigUint,
}

/// Exported sector result.
#[derive(Clone, Debug, Serialize)]
pub struct SectorRow {
    pub gamma: String,
    pub side: Side,
    pub n: u32,
    pub w: u32,
    pub fixed: u64,
    pub moved: u64,
    #[serde(rename = "dimV0")]
    pub dim_v0: u64,
    #[serde(rename = "dimV1")]
    pub dim_v1: u64,
}

impl SectorRow {
    pub fn new(g: &GroupData, side: Side, n: u32, s: &SectorCount) -> Self {
        SectorRow {
            gamma: g.spec.to_string(),
            side,
            n,
            w: s.w,
            fixed: s.fixed,
            moved: s.moved,
            dim_v0: s.dim_v0(),
            dim_v1: s.dim_v1(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::standard_groups;

    fn gd(s: &str) -> GroupData {
        GroupData::new(s.parse().unwrap())
    }

    fn count(g: &GroupData, t: &str) -> u64 {
        u64::try_from(count_homs(g, t.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn parse_targets() {
        assert_eq!(
            "SO(5)".parse::<TargetFamily>().unwrap(),
            TargetFamily::SOOdd(2)
        );
        assert_eq!(
            "Spin(3)".parse::<TargetFamily>().unwrap(),
            TargetFamily::SpinOdd(1)
        );
        assert!(matches!(
            "SO(4)".parse::<TargetFamily>(),
            Err(CountError::Unsupported(_))
        ));
        for t in [
            "U(3)", "SU(2)", "PU(4)", "Sp(2)", "O(7)", "SO(1)", "Spin(9)", "PSp(3)",
        ] {
            assert_eq!(t.parse::<TargetFamily>().unwrap().to_string(), t);
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&gd("That"), "Sp(1)"), 3);
        assert_eq!(count(&gd("Ohat"), "SO(3)"), 4);
        assert_eq!(count(&gd("Z:4"), "Sp(1)"), 3);
        for g in standard_groups() {
            let d = GroupData::new(g);
            assert_eq!(count(&d, "Sp(0)"), 1);
            assert_eq!(count(&d, "SO(1)"), 1);
        }
    }

    #[test]
    fn explicit_solution_lists() {
        let g = gd("Ohat");
        let names = |v: &[u32]| -> Vec<String> {
            let mut out = Vec::new();
            for (i, &k) in v.iter().enumerate() {
                for _ in 0..k {
                    out.push(g.irreps[i].name.clone());
                }
            }
            out
        };
        let mut s: Vec<Vec<String>> = solutions(&g, TargetFamily::SOOdd(1))
            .unwrap()
            .iter()
            .map(|v| names(v))
            .collect();
        s.sort();
        let mut want = vec![
            vec!["3".to_string()],
            vec!["1".into(), "1".into(), "1".into()],
            vec!["1".into(), "1'".into(), "1'".into()],
            vec!["2''".into(), "1'".into()],
        ];
        for w in want.iter_mut() {
            w.sort_by_key(|x| g.index_of(x).unwrap());
        }
        want.sort();
        assert_eq!(s, want);
    }

    #[test]
    fn octahedral_sectors() {
        let g = gd("Ohat");
        assert_eq!(
            count_twisted(&g, Side::Sp, 1, 1).unwrap(),
            SectorCount {
                w: 1,
                fixed: 2,
                moved: 0
            }
        );
        assert_eq!(
            count_twisted(&g, Side::Sp, 1, 0).unwrap(),
            SectorCount {
                w: 0,
                fixed: 0,
                moved: 4
            }
        );
        assert_eq!(
            count_twisted(&g, Side::Sp, 0, 0).unwrap(),
            SectorCount {
                w: 0,
                fixed: 1,
                moved: 0
            }
        );
        for n in 0..8 {
            for side in [Side::Sp, Side::Spin] {
                for s in all_sectors(&g, side, n).unwrap() {
                    assert_eq!(s.moved % 2, 0);
                }
            }
        }
    }

    #[test]
    fn cyclic_spin_and_psp_via_lattice() {
        // Z2 into Spin(3) = SU(2): ±1 give 2 classes, and Z2 into PSp(1) = SO(3).
        assert_eq!(count(&gd("Z:2"), "Spin(3)"), 2);
        assert_eq!(count(&gd("Z:2"), "PSp(1)"), 2);
        assert_eq!(count(&gd("Z:3"), "Spin(1)"), 1);
        assert_eq!(count(&gd("Z:4"), "Spin(1)"), 2);
        assert_eq!(count(&gd("Z:4"), "PSp(0)"), 2);
        assert_eq!(count(&gd("Ohat"), "PSp(0)"), 2);
        assert!(matches!(
            count_homs(&gd("Dhat:3"), TargetFamily::SpinOdd(1)),
            Err(CountError::Unsupported(_))
        ));
    }

    #[test]
    fn frep_octahedral_values() {
        let g = gd("Ohat");
        let t = f_rep_character(&g, FSide::Sp(1)).unwrap();
        assert_eq!(t.get(&[0], &[0]), &Cyclo::from_int(6));
        assert_eq!(t.get(&[1], &[0]), &Cyclo::from_int(2));
        assert_eq!(t.get(&[0], &[1]), &Cyclo::from_int(2));
    }

    #[test]
    fn frep_z3_su3() {
        let g = gd("Z:3");
        let t = f_rep_character(&g, FSide::SU(3)).unwrap();
        assert_eq!(t.table.len(), 9);
        for ((z, b), v) in &t.table {
            let want = if z[0] == 0 && b[0] == 0 { 10 } else { 1 };
            assert_eq!(v, &Cyclo::from_int(want), "{:?} {:?}", z, b);
        }
    }

    #[test]
    fn swap_examples() {
        let r = verify_swap_equivalence(&gd("Ohat"), SwapPair::SpSpin(1)).unwrap();
        assert!(r.equivalent);
        let r = verify_swap_equivalence(&gd("Z:3"), SwapPair::SuPu(3)).unwrap();
        assert!(r.equivalent);
        assert_eq!(r.identifications[0], "standard");
        for n in 0..5 {
            assert!(
                verify_swap_equivalence(&gd("Ihat"), SwapPair::SpSpin(n))
                    .unwrap()
                    .equivalent
            );
        }
    }

    #[test]
    fn gauging_dimensions() {
        for g in standard_groups() {
            let d = GroupData::new(g);
            for n in 1..=4 {
                let t = f_rep_character(&d, FSide::SU(n)).unwrap();
                assert_eq!(
                    t.dim_h2_invariants(),
                    Cyclo::from_int(count(&d, &format!("SU({})", n)) as i64)
                );
                assert_eq!(
                    t.dim_h1_invariants(),
                    Cyclo::from_int(count(&d, &format!("PU({})", n)) as i64)
                );
            }
        }
    }
}
