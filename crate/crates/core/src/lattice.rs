//! Root data, intermediate lattices P* ⊆ M* ⊆ Q* and Weyl-orbit counts on
//! the finite quotients (1/n)M*/M*.
//!
//! Coordinates: vectors in t are written in the fundamental coweight basis
//! ω_i∨, so Q* = Z^r and the coroot lattice P* is spanned by the columns of
//! the Cartan matrix `c[i][j] = ⟨α_i, α_j∨⟩`. Vectors in t* use the
//! fundamental weights ω_i, and ⟨λ, μ⟩ = λᵀ c⁻¹ μ.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::abelian::FiniteAbelian;
use crate::cyclo::Cyclo;
use crate::intmat::{adjugate, det, mat_mul, transpose, unit, IntLattice, IntMat};

/// Default bound on the number of points of a quotient.
pub const DEFAULT_POINT_CAP: u64 = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown Lie type `{0}`")]
    UnknownType(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("lattices are not dual: {0}")]
    NotDual(String),
    #[error("quotient has {points} points, above the cap of {cap}")]
    TooLarge { points: u64, cap: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl LieType {
    pub fn rank(&self) -> usize {
        match *self {
            LieType::A(r) | LieType::B(r) | LieType::C(r) | LieType::D(r) => r as usize,
            LieType::E6 => 6,
            LieType::E7 => 7,
            LieType::E8 => 8,
            LieType::F4 => 4,
            LieType::G2 => 2,
        }
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        let ok = match *self {
            LieType::A(r) | LieType::B(r) | LieType::C(r) => r >= 1,
            LieType::D(r) => r >= 3,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(LatticeError::UnknownType(self.to_string()))
        }
    }

    /// c[i][j] = ⟨α_i, α_j∨⟩; row i expresses α_i in fundamental weights.
    pub fn cartan(&self) -> IntMat {
        let r = self.rank();
        let mut c = vec![vec![0i64; r]; r];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match *self {
            LieType::A(_) | LieType::B(_) | LieType::C(_) => {
                for i in 1..r {
                    link(i - 1, i);
                }
            }
            LieType::D(_) => {
                for i in 1..r - 1 {
                    link(i - 1, i);
                }
                link(r - 3, r - 1);
            }
            LieType::E6 | LieType::E7 | LieType::E8 => {
                // Bourbaki labels: chain 1-3-4-5-..., with 2 attached to 4.
                link(0, 2);
                link(1, 3);
                for i in 3..r {
                    link(i - 1, i);
                }
            }
            LieType::F4 => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            LieType::G2 => link(0, 1),
        }
        match *self {
            LieType::B(n) if n >= 2 => {
                let n = n as usize;
                c[n - 2][n - 1] = -2;
            }
            LieType::C(n) if n >= 2 => {
                let n = n as usize;
                c[n - 1][n - 2] = -2;
            }
            LieType::F4 => c[1][2] = -2,
            LieType::G2 => c[1][0] = -3,
            _ => {}
        }
        c
    }

    /// Type of the dual root system (Cartan matrix transposed).
    pub fn dual(&self) -> LieType {
        match *self {
            LieType::B(n) => LieType::C(n),
            LieType::C(n) => LieType::B(n),
            t => t,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let fact = |k: u64| (1..=k).product::<u64>();
        match *self {
            LieType::A(r) => fact(r as u64 + 1),
            LieType::B(r) | LieType::C(r) => (1u64 << r) * fact(r as u64),
            LieType::D(r) => (1u64 << (r - 1)) * fact(r as u64),
            LieType::E6 => 51_840,
            LieType::E7 => 2_903_040,
            LieType::E8 => 696_729_600,
            LieType::F4 => 1152,
            LieType::G2 => 12,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LieType::A(r) => write!(f, "A{}", r),
            LieType::B(r) => write!(f, "B{}", r),
            LieType::C(r) => write!(f, "C{}", r),
            LieType::D(r) => write!(f, "D{}", r),
            LieType::E6 => write!(f, "E6"),
            LieType::E7 => write!(f, "E7"),
            LieType::E8 => write!(f, "E8"),
            LieType::F4 => write!(f, "F4"),
            LieType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for LieType {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let bad = || LatticeError::UnknownType(s.to_string());
        let t = s.trim();
        let fixed = match t {
            "E6" => Some(LieType::E6),
            "E7" => Some(LieType::E7),
            "E8" => Some(LieType::E8),
            "F4" => Some(LieType::F4),
            "G2" => Some(LieType::G2),
            _ => None,
        };
        if let Some(x) = fixed {
            return Ok(x);
        }
        let (head, rest) = t.split_at(t.char_indices().nth(1).map(|(i, _)| i).unwrap_or(t.len()));
        let r: u32 = rest.parse().map_err(|_| bad())?;
        let lt = match head {
            "A" => LieType::A(r),
            "B" => LieType::B(r),
            "C" => LieType::C(r),
            "D" => LieType::D(r),
            _ => return Err(bad()),
        };
        lt.validate().map_err(|_| bad())?;
        Ok(lt)
    }
}

/// Cartan data together with the center Q*/P*.
#[derive(Clone, Debug)]
pub struct CartanData {
    pub lie: LieType,
    pub cartan: IntMat,
    pub coroot: IntLattice,
    pub center: FiniteAbelian,
}

impl CartanData {
    pub fn new(lie: LieType) -> Result<Self, LatticeError> {
        lie.validate()?;
        let cartan = lie.cartan();
        let coroot = IntLattice::column_span(&cartan)
            .map_err(|e| LatticeError::InvalidLattice(e.to_string()))?;
        let center = quotient_structure(&IntLattice::standard(lie.rank()), &coroot);
        Ok(CartanData {
            lie,
            cartan,
            coroot,
            center,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Simple reflection s_i on coweight coordinates.
    pub fn reflection(&self, i: usize) -> IntMat {
        let r = self.rank();
        (0..r)
            .map(|k| {
                (0..r)
                    .map(|j| (k == j) as i64 - if j == i { self.cartan[k][i] } else { 0 })
                    .collect()
            })
            .collect()
    }

    /// M ↦ {λ : ⟨λ, M⟩ ⊆ Z}, written in fundamental weights (the coweight
    /// coordinates of the dual root system).
    pub fn dual_lattice(&self, m_star: &IntLattice) -> IntLattice {
        let k = m_star.basis_matrix();
        let d = det(&k);
        let adj_k = adjugate(&k);
        // cᵀ K^{-T} = cᵀ adj(K)ᵀ / det K
        let num = mat_mul(&transpose(&self.cartan), &transpose(&adj_k));
        let cols: Vec<Vec<i64>> = (0..num.len())
            .map(|j| {
                num.iter()
                    .map(|row| {
                        debug_assert_eq!(row[j] % d, 0);
                        row[j] / d
                    })
                    .collect()
            })
            .collect();
        IntLattice::from_generators(&cols, self.rank()).expect("dual of a full-rank lattice")
    }
}

/// Invariant-factor structure of big / small for lattices small ⊆ big.
fn quotient_structure(big: &IntLattice, small: &IntLattice) -> FiniteAbelian {
    let (_, orders) = quotient_elements(big, small);
    let n = orders.len() as u32;
    let exp = orders.iter().copied().fold(1, num_integer::lcm);
    if exp == n {
        return FiniteAbelian::new(vec![n]);
    }
    // Rank-two case; enough for the quotients that occur here.
    assert_eq!(
        n % (exp * exp),
        0,
        "quotient with more than two invariant factors"
    );
    FiniteAbelian::new(vec![n / exp, exp])
}

/// Canonical representatives (mod `small`) of big/small, with element orders.
fn quotient_elements(big: &IntLattice, small: &IntLattice) -> (Vec<Vec<i64>>, Vec<u32>) {
    let r = big.rank();
    let bm = big.basis_matrix();
    let inv = crate::intmat::inverse_rational(&bm).expect("full rank");
    let sm = small.basis_matrix();
    let coords: IntMat = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let s: crate::intmat::Rat = (0..r)
                        .map(|k| inv[i][k] * crate::intmat::Rat::from_integer(sm[k][j] as i128))
                        .sum();
                    s.to_integer() as i64
                })
                .collect()
        })
        .collect();
    let inner = IntLattice::column_span(&coords).expect("full rank");
    let mut reps = Vec::new();
    let mut orders = Vec::new();
    for u in inner.coset_reps() {
        let v = crate::intmat::mat_vec(&bm, &u);
        let v = small.reduce(&v);
        let mut k = 1u32;
        while !small.contains(&v.iter().map(|x| x * k as i64).collect::<Vec<_>>()) {
            k += 1;
        }
        reps.push(v);
        orders.push(k);
    }
    (reps, orders)
}

/// A compact group of given type, identified by its cocharacter lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLattice {
    pub name: String,
    pub lie: LieType,
    pub cochar: IntLattice,
}

fn paren_arg(s: &str, head: &str) -> Option<u32> {
    s.strip_prefix(head)?.strip_suffix(')')?.parse().ok()
}

/// Looks up a group by name: SU(k), PU(k), SU(k)/Z_d, Sp(n), PSp(n),
/// SO(2n+1), Spin(2n+1), Spin(2n), SO(2n), PSO(2n), Ss(2n), Sc(2n),
/// E6, E6adj, E7, E7adj, E8, F4, G2.
pub fn named_group(name: &str) -> Result<GroupLattice, LatticeError> {
    let bad = || LatticeError::UnknownGroup(name.to_string());
    let s = name.trim();
    let (lie, extra): (LieType, Vec<Vec<i64>>) = if let Some((head, d)) = s.split_once("/Z_") {
        let k = paren_arg(head, "SU(").ok_or_else(bad)?;
        let d: u32 = d.parse().map_err(|_| bad())?;
        if k < 2 || d == 0 || k % d != 0 {
            return Err(bad());
        }
        let r = (k - 1) as usize;
        (
            LieType::A(k - 1),
            vec![unit(r, 0).iter().map(|x| x * (k / d) as i64).collect()],
        )
    } else if let Some(k) = paren_arg(s, "SU(") {
        if k < 2 {
            return Err(bad());
        }
        (LieType::A(k - 1), vec![])
    } else if let Some(k) = paren_arg(s, "PU(") {
        if k < 2 {
            return Err(bad());
        }
        (
            LieType::A(k - 1),
            (0..k as usize - 1)
                .map(|i| unit(k as usize - 1, i))
                .collect(),
        )
    } else if let Some(n) = paren_arg(s, "Sp(") {
        (LieType::C(n), vec![])
    } else if let Some(n) = paren_arg(s, "PSp(") {
        (LieType::C(n), all_units(n))
    } else if let Some(m) = paren_arg(s, "SO(") {
        if m % 2 == 1 {
            (LieType::B((m - 1) / 2), all_units((m - 1) / 2))
        } else {
            let r = m / 2;
            (LieType::D(r), vec![unit(r as usize, 0)])
        }
    } else if let Some(m) = paren_arg(s, "Spin(") {
        if m % 2 == 1 {
            (LieType::B((m - 1) / 2), vec![])
        } else {
            (LieType::D(m / 2), vec![])
        }
    } else if let Some(m) = paren_arg(s, "PSO(") {
        if m % 2 == 1 {
            return Err(bad());
        }
        (LieType::D(m / 2), all_units(m / 2))
    } else if let Some(m) = paren_arg(s, "Ss(").or_else(|| paren_arg(s, "Sc(")) {
        let r = m / 2;
        if m % 4 != 0 || r < 4 {
            return Err(bad());
        }
        let node = if s.starts_with("Ss") { r - 1 } else { r - 2 };
        (LieType::D(r), vec![unit(r as usize, node as usize)])
    } else {
        match s {
            "E6" => (LieType::E6, vec![]),
            "E6adj" => (LieType::E6, all_units(6)),
            "E7" => (LieType::E7, vec![]),
            "E7adj" => (LieType::E7, all_units(7)),
            "E8" => (LieType::E8, vec![]),
            "F4" => (LieType::F4, vec![]),
            "G2" => (LieType::G2, vec![]),
            _ => return Err(bad()),
        }
    };
    lie.validate().map_err(|_| bad())?;
    let cd = CartanData::new(lie)?;
    let mut gens: Vec<Vec<i64>> = cd.coroot.basis().to_vec();
    gens.extend(extra);
    let cochar = IntLattice::from_generators(&gens, lie.rank())
        .map_err(|e| LatticeError::InvalidLattice(e.to_string()))?;
    Ok(GroupLattice {
        name: s.to_string(),
        lie,
        cochar,
    })
}

fn all_units(r: u32) -> Vec<Vec<i64>> {
    (0..r as usize).map(|i| unit(r as usize, i)).collect()
}

/// Names of every catalogued group of the given type.
pub fn groups_of_type(lie: LieType) -> Vec<String> {
    match lie {
        LieType::A(r) => {
            let k = r + 1;
            let mut v = vec![format!("SU({})", k)];
            for d in 2..k {
                if k % d == 0 {
                    v.push(format!("SU({})/Z_{}", k, d));
                }
            }
            v.push(format!("PU({})", k));
            v
        }
        LieType::B(n) => vec![format!("Spin({})", 2 * n + 1), format!("SO({})", 2 * n + 1)],
        LieType::C(n) => vec![format!("Sp({})", n), format!("PSp({})", n)],
        LieType::D(r) => {
            let m = 2 * r;
            let mut v = vec![
                format!("Spin({})", m),
                format!("SO({})", m),
                format!("PSO({})", m),
            ];
            if r % 2 == 0 && r >= 4 {
                v.push(format!("Ss({})", m));
                v.push(format!("Sc({})", m));
            }
            v
        }
        LieType::E6 => vec!["E6".into(), "E6adj".into()],
        LieType::E7 => vec!["E7".into(), "E7adj".into()],
        LieType::E8 => vec!["E8".into()],
        LieType::F4 => vec!["F4".into()],
        LieType::G2 => vec!["G2".into()],
    }
}

/// The Langlands dual of a catalogued group.
pub fn dual_group(g: &GroupLattice) -> Result<GroupLattice, LatticeError> {
    let cd = CartanData::new(g.lie)?;
    let dual = cd.dual_lattice(&g.cochar);
    let dl = g.lie.dual();
    for nm in groups_of_type(dl) {
        let h = named_group(&nm)?;
        if h.cochar == dual {
            return Ok(h);
        }
    }
    Err(LatticeError::NotDual(format!(
        "no catalogued group is dual to {}",
        g.name
    )))
}

/// A dual pair of catalogued groups.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub left: GroupLattice,
    pub right: GroupLattice,
}

impl DualPair {
    pub fn label(&self) -> String {
        format!("{}/{}", self.left.name, self.right.name)
    }
}

/// All dual pairs of simple types with rank in [1, max_rank]; each unordered
/// pair appears once.
pub fn dual_pair_catalog(max_rank: usize) -> Vec<DualPair> {
    let mut types: Vec<LieType> = Vec::new();
    for r in 1..=max_rank as u32 {
        types.push(LieType::A(r));
        if r >= 2 {
            types.push(LieType::B(r));
        }
        if r >= 4 {
            types.push(LieType::D(r));
        }
    }
    for t in [
        LieType::G2,
        LieType::F4,
        LieType::E6,
        LieType::E7,
        LieType::E8,
    ] {
        if t.rank() <= max_rank {
            types.push(t);
        }
    }
    let mut seen: Vec<(String, String)> = Vec::new();
    let mut out = Vec::new();
    for t in types {
        for nm in groups_of_type(t) {
            let left = named_group(&nm).expect("catalogued");
            let right = dual_group(&left).expect("catalogue closed under duality");
            let key = if left.name <= right.name {
                (left.name.clone(), right.name.clone())
            } else {
                (right.name.clone(), left.name.clone())
            };
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            out.push(DualPair { left, right });
        }
    }
    out
}

/// Number of W-orbits on (1/n)M*/M* ≅ (Z/n)^r.
pub fn weyl_orbit_count(g: &GroupLattice, n: u32, cap: u64) -> Result<u64, LatticeError> {
    let cd = CartanData::new(g.lie)?;
    if !g.cochar.contains_lattice(&cd.coroot) {
        return Err(LatticeError::InvalidLattice(format!(
            "{} does not contain the coroot lattice",
            g.name
        )));
    }
    let gens = reflections_in_basis(&cd, &g.cochar)?;
    orbit_count_generic(&gens, n, cap)
}

/// Simple reflections written in the basis of a W-stable lattice.
fn reflections_in_basis(cd: &CartanData, lat: &IntLattice) -> Result<Vec<IntMat>, LatticeError> {
    let b = lat.basis_matrix();
    let binv_r = crate::intmat::inverse_rational(&b).expect("full rank");
    (0..cd.rank())
        .map(|i| {
            let sb = mat_mul(&cd.reflection(i), &b);
            let r = sb.len();
            (0..r)
                .map(|p| {
                    (0..r)
                        .map(|q| {
                            let v: crate::intmat::Rat = (0..r)
                                .map(|k| {
                                    binv_r[p][k]
                                        * crate::intmat::Rat::from_integer(sb[k][q] as i128)
                                })
                                .sum();
                            if v.is_integer() {
                                Ok(v.to_integer() as i64)
                            } else {
                                Err(LatticeError::InvalidLattice(
                                    "lattice is not W-stable".into(),
                                ))
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Orbits of the group generated by integer matrices acting on (Z/n)^r.
pub fn orbit_count_generic(gens: &[IntMat], n: u32, cap: u64) -> Result<u64, LatticeError> {
    let r = gens.first().map(|g| g.len()).unwrap_or(0);
    let points = (n as u64).checked_pow(r as u32).unwrap_or(u64::MAX);
    if points > cap {
        return Err(LatticeError::TooLarge { points, cap });
    }
    if n == 0 {
        return Err(LatticeError::InvalidLattice(
            "modulus must be positive".into(),
        ));
    }
    let reduced: Vec<Vec<Vec<u32>>> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|row| row.iter().map(|&x| x.rem_euclid(n as i64) as u32).collect())
                .collect()
        })
        .collect();
    let orbits = bfs_orbits(
        &reduced,
        r,
        n,
        points as usize,
        (0..points as usize).collect::<Vec<_>>().into_iter(),
    );
    Ok(orbits.1 as u64)
}

/// Labels each point of (Z/n)^r with an orbit id; returns (labels, count).
/// Seeds are taken in the order given. Generators are applied through the
/// nonzero entries of G − I, which for reflections is a rank-one matrix.
fn bfs_orbits(
    gens: &[Vec<Vec<u32>>],
    r: usize,
    n: u32,
    points: usize,
    seeds: impl Iterator<Item = usize>,
) -> (Vec<u32>, u32) {
    const UNSEEN: u32 = u32::MAX;
    let n64 = n as u64;
    // Rows of G − I (mod n) that are nonzero, with their nonzero entries.
    let sparse: Vec<Vec<(usize, Vec<(usize, u64)>)>> = gens
        .iter()
        .map(|g| {
            (0..r)
                .filter_map(|i| {
                    let row: Vec<(usize, u64)> = (0..r)
                        .filter_map(|j| {
                            let v = (g[i][j] as u64 + n64 - (i == j) as u64) % n64;
                            (v != 0).then_some((j, v))
                        })
                        .collect();
                    (!row.is_empty()).then_some((i, row))
                })
                .collect()
        })
        .collect();
    let place: Vec<usize> = (0..r).map(|i| (n as usize).pow(i as u32)).collect();
    let mut label = vec![UNSEEN; points];
    let mut count = 0u32;
    let mut stack: Vec<usize> = Vec::new();
    let mut x = vec![0u32; r];
    for seed in seeds {
        if label[seed] != UNSEEN {
            continue;
        }
        label[seed] = count;
        stack.push(seed);
        while let Some(p) = stack.pop() {
            let mut q = p;
            for xi in x.iter_mut() {
                *xi = (q % n as usize) as u32;
                q /= n as usize;
            }
            for g in &sparse {
                let mut idx = p;
                for (i, row) in g {
                    let mut t: u64 = x[*i] as u64;
                    for &(j, v) in row {
                        t += v * x[j] as u64;
                    }
                    let yi = (t % n64) as usize;
                    idx = idx + yi * place[*i] - x[*i] as usize * place[*i];
                }
                if label[idx] == UNSEEN {
                    label[idx] = count;
                    stack.push(idx);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Orbit count with seeds visited in a caller-chosen order (for determinism
/// tests).
pub fn orbit_count_with_seed_order(
    g: &GroupLattice,
    n: u32,
    order: &[usize],
) -> Result<u64, LatticeError> {
    let cd = CartanData::new(g.lie)?;
    let gens = reflections_in_basis(&cd, &g.cochar)?;
    let r = cd.rank();
    let reduced: Vec<Vec<Vec<u32>>> = gens
        .iter()
        .map(|m| {
            m.iter()
                .map(|row| row.iter().map(|&x| x.rem_euclid(n as i64) as u32).collect())
                .collect()
        })
        .collect();
    let points = (n as usize).pow(r as u32);
    Ok(bfs_orbits(&reduced, r, n, points, order.iter().copied()).1 as u64)
}

/// Checks that the two groups are Langlands dual and compares orbit counts.
pub fn verify_zn_duality(
    a: &GroupLattice,
    b: &GroupLattice,
    n: u32,
    cap: u64,
) -> Result<(u64, u64), LatticeError> {
    if a.lie.dual() != b.lie || dual_group(a)?.cochar != b.cochar {
        return Err(LatticeError::NotDual(format!("{} and {}", a.name, b.name)));
    }
    Ok((weyl_orbit_count(a, n, cap)?, weyl_orbit_count(b, n, cap)?))
}

/// Character table of F(Z_n; Z) = Ker(n× on Z) × Ker(n× on Z^) on
/// V((1/n)N*/M*)^W, with Z = N*/M*, Z^ = M/N.
#[derive(Clone, Debug, Serialize)]
pub struct RefinedTable {
    /// Elements of Ker(n×) ⊂ N*/M*, canonical mod M* in coweight coordinates.
    pub z: Vec<Vec<i64>>,
    /// Elements of Ker(n×) ⊂ M/N, canonical mod N in weight coordinates.
    pub zhat: Vec<Vec<i64>>,
    /// Sector representatives w̃ ∈ Z (one per class of Z/nZ) and dim V_w.
    pub sectors: Vec<(Vec<i64>, u64)>,
    #[serde(skip)]
    pub table: BTreeMap<(Vec<i64>, Vec<i64>), Cyclo>,
}

impl RefinedTable {
    pub fn get(&self, z: &[i64], b: &[i64]) -> Option<&Cyclo> {
        self.table.get(&(z.to_vec(), b.to_vec()))
    }
}

/// Refined characters for the pair M* ⊆ N* of cocharacter lattices.
pub fn refined_zn_characters(
    lie: LieType,
    cartan: &IntMat,
    m_star: &IntLattice,
    n_star: &IntLattice,
    n: u32,
    cap: u64,
) -> Result<RefinedTable, LatticeError> {
    let r = cartan.len();
    if !n_star.contains_lattice(m_star) {
        return Err(LatticeError::InvalidLattice(
            "M* is not contained in N*".into(),
        ));
    }
    let cd = CartanData {
        lie,
        cartan: cartan.clone(),
        coroot: IntLattice::column_span(cartan).unwrap(),
        center: FiniteAbelian::trivial(),
    };
    let zsize = (m_star.index() / n_star.index()) as u64;
    let points = (n as u64)
        .checked_pow(r as u32)
        .and_then(|p| p.checked_mul(zsize))
        .unwrap_or(u64::MAX);
    if points > cap {
        return Err(LatticeError::TooLarge { points, cap });
    }
    let bn = n_star.basis_matrix();
    let bn_inv = crate::intmat::inverse_rational(&bn).expect("full rank");
    let to_n_coords = |v: &[i64]| -> Vec<i64> {
        (0..r)
            .map(|i| {
                let s: crate::intmat::Rat = (0..r)
                    .map(|k| bn_inv[i][k] * crate::intmat::Rat::from_integer(v[k] as i128))
                    .sum();
                assert!(s.is_integer());
                s.to_integer() as i64
            })
            .collect()
    };
    // nM* in N*-coordinates.
    let nm_cols: Vec<Vec<i64>> = m_star
        .basis()
        .iter()
        .map(|b| to_n_coords(&b.iter().map(|x| x * n as i64).collect::<Vec<_>>()))
        .collect();
    let nm = IntLattice::from_generators(&nm_cols, r).expect("full rank");
    let gens = reflections_in_basis(&cd, n_star)?;
    let pivots = nm.pivots();
    let reps = nm.coset_reps();
    let index_of = |v: &[i64]| -> usize {
        let w = nm.reduce(v);
        let mut idx = 0usize;
        for i in (0..r).rev() {
            idx = idx * pivots[i] as usize + w[i] as usize;
        }
        idx
    };
    let total = reps.len();
    let mut label = vec![u32::MAX; total];
    let mut norbits = 0u32;
    let mut orbit_rep: Vec<Vec<i64>> = Vec::new();
    let mut stack = Vec::new();
    for v0 in &reps {
        let i0 = index_of(v0);
        if label[i0] != u32::MAX {
            continue;
        }
        label[i0] = norbits;
        orbit_rep.push(v0.clone());
        stack.push(v0.clone());
        while let Some(v) = stack.pop() {
            for g in &gens {
                let w = nm.reduce(&crate::intmat::mat_vec(g, &v));
                let j = index_of(&w);
                if label[j] == u32::MAX {
                    label[j] = norbits;
                    stack.push(w);
                }
            }
        }
        norbits += 1;
    }

    // Z = N*/M* and Z^ = M/N.
    let (z_all, _) = quotient_elements(n_star, m_star);
    let mult = |v: &[i64], k: i64| -> Vec<i64> { v.iter().map(|x| x * k).collect() };
    let z_ker: Vec<Vec<i64>> = z_all
        .iter()
        .filter(|z| m_star.contains(&mult(z, n as i64)))
        .cloned()
        .collect();
    let mut nz: Vec<Vec<i64>> = z_all
        .iter()
        .map(|z| m_star.reduce(&mult(z, n as i64)))
        .collect();
    nz.sort();
    nz.dedup();
    let m_lat = cd.dual_lattice(m_star);
    let n_lat = cd.dual_lattice(n_star);
    let (zhat_all, _) = quotient_elements(&m_lat, &n_lat);
    let zhat_ker: Vec<Vec<i64>> = zhat_all
        .iter()
        .filter(|b| n_lat.contains(&mult(b, n as i64)))
        .cloned()
        .collect();

    // Sector of each orbit: the class of na = v in Z, then its class mod nZ.
    let class_of = |v: &[i64]| -> Vec<i64> { m_star.reduce(&crate::intmat::mat_vec(&bn, v)) };
    let sector_rep = |z: &[i64]| -> Vec<i64> {
        nz.iter()
            .map(|t| m_star.reduce(&z.iter().zip(t).map(|(a, b)| a + b).collect::<Vec<_>>()))
            .min()
            .unwrap()
    };
    let mut sectors: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for s in &z_all {
        sectors.entry(sector_rep(s)).or_insert(0);
    }
    let orbit_class: Vec<Vec<i64>> = orbit_rep.iter().map(|v| class_of(v)).collect();
    for c in &orbit_class {
        if sector_rep(c) == *c {
            *sectors.get_mut(c).unwrap() += 1;
        }
    }

    let adj = adjugate(cartan);
    let d = det(cartan);
    let pairing_exp = |b: &[i64], z: &[i64]| -> (u32, i64) {
        // ⟨b, z⟩ = bᵀ adj(c) z / det c  (mod 1)
        let mut s: i128 = 0;
        for i in 0..r {
            for j in 0..r {
                s += b[i] as i128 * adj[i][j] as i128 * z[j] as i128;
            }
        }
        let dd = d.abs() as i128;
        let s = if d < 0 { -s } else { s };
        (dd as u32, s.rem_euclid(dd) as i64)
    };

    let mut table = BTreeMap::new();
    let scale = BigRational::new(BigInt::from(1), BigInt::from(nz.len() as u64));
    for z in &z_ker {
        let shift = to_n_coords(&mult(z, n as i64));
        let fixed: Vec<usize> = (0..orbit_rep.len())
            .filter(|&o| {
                let v = &orbit_rep[o];
                let w: Vec<i64> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
                label[index_of(&w)] == o as u32
            })
            .collect();
        for b in &zhat_ker {
            let mut s = Cyclo::zero();
            let mut counts: BTreeMap<(u32, i64), i64> = BTreeMap::new();
            for &o in &fixed {
                *counts.entry(pairing_exp(b, &orbit_class[o])).or_insert(0) += 1;
            }
            for ((den, k), c) in counts {
                s = &s + &(&Cyclo::root(den, k) * &Cyclo::from_int(c));
            }
            table.insert((z.clone(), b.clone()), s.scale(&scale));
        }
    }
    Ok(RefinedTable {
        z: z_ker,
        zhat: zhat_ker,
        sectors: sectors.into_iter().collect(),
        table,
    })
}

/// Compares the refined tables of G ⊂ G/Z (cochar M* ⊆ N*) and of the dual
/// side H̃ ⊂ H̃/Z^ (cochar N ⊆ M) under z ↔ b. Returns the matching
/// identifications among "standard" and "inverse".
pub fn refined_swap_check(
    lie: LieType,
    m_star: &IntLattice,
    n_star: &IntLattice,
    n: u32,
    cap: u64,
) -> Result<Vec<String>, LatticeError> {
    let cd = CartanData::new(lie)?;
    let t1 = refined_zn_characters(lie, &cd.cartan, m_star, n_star, n, cap)?;
    let m_lat = cd.dual_lattice(m_star);
    let n_lat = cd.dual_lattice(n_star);
    let dual_cartan = transpose(&cd.cartan);
    let t2 = refined_zn_characters(lie.dual(), &dual_cartan, &n_lat, &m_lat, n, cap)?;
    let mut matches = Vec::new();
    let std_ok = t1.table.iter().all(|((z, b), v)| t2.get(b, z) == Some(v));
    if std_ok && t1.table.len() == t2.table.len() {
        matches.push("standard".to_string());
    }
    let inv_ok = t1.table.iter().all(|((z, b), v)| {
        let mz: Vec<i64> = m_star.reduce(&z.iter().map(|x| -x).collect::<Vec<_>>());
        t2.get(b, &mz) == Some(v)
    });
    if inv_ok && t1.table.len() == t2.table.len() {
        matches.push("inverse".to_string());
    }
    Ok(matches)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> GroupLattice {
        named_group(name).unwrap()
    }

    #[test]
    fn centers() {
        let expect = [
            (LieType::A(3), vec![4]),
            (LieType::B(3), vec![2]),
            (LieType::C(4), vec![2]),
            (LieType::D(4), vec![2, 2]),
            (LieType::D(5), vec![4]),
            (LieType::E6, vec![3]),
            (LieType::E7, vec![2]),
            (LieType::E8, vec![]),
            (LieType::F4, vec![]),
            (LieType::G2, vec![]),
        ];
        for (t, f) in expect {
            assert_eq!(CartanData::new(t).unwrap().center.factors, f, "{}", t);
        }
    }

    #[test]
    fn reflections_are_involutions_with_braid_relations() {
        for t in [
            LieType::A(3),
            LieType::B(3),
            LieType::C(3),
            LieType::D(4),
            LieType::G2,
            LieType::F4,
            LieType::E6,
        ] {
            let cd = CartanData::new(t).unwrap();
            let r = cd.rank();
            let id = crate::intmat::identity(r);
            for i in 0..r {
                let s = cd.reflection(i);
                assert_eq!(mat_mul(&s, &s), id);
                for j in 0..r {
                    let m = match cd.cartan[i][j] * cd.cartan[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => continue,
                    };
                    let st = mat_mul(&s, &cd.reflection(j));
                    let mut p = id.clone();
                    for _ in 0..m {
                        p = mat_mul(&p, &st);
                    }
                    assert_eq!(p, id, "{} {} {}", t, i, j);
                }
            }
        }
    }

    #[test]
    fn parse_types() {
        assert_eq!("B3".parse::<LieType>().unwrap(), LieType::B(3));
        assert_eq!("E7".parse::<LieType>().unwrap(), LieType::E7);
        assert!("D2".parse::<LieType>().is_err());
        assert!("X1".parse::<LieType>().is_err());
    }

    #[test]
    fn duals() {
        let pairs = [
            ("Sp(3)", "SO(7)"),
            ("PSp(3)", "Spin(7)"),
            ("SU(4)", "PU(4)"),
            ("SU(6)/Z_2", "SU(6)/Z_3"),
            ("SO(8)", "SO(8)"),
            ("E6", "E6adj"),
            ("E7", "E7adj"),
            ("G2", "G2"),
        ];
        for (a, b) in pairs {
            assert_eq!(dual_group(&g(a)).unwrap().name, b, "{}", a);
            assert_eq!(dual_group(&g(b)).unwrap().name, a, "{}", b);
        }
        // Half-spin groups: self-dual in rank 4k, exchanged in rank 4k+2.
        assert_eq!(dual_group(&g("Ss(8)")).unwrap().name, "Ss(8)");
        assert_eq!(dual_group(&g("Ss(12)")).unwrap().name, "Sc(12)");
    }

    #[test]
    fn small_orbit_counts() {
        assert_eq!(
            weyl_orbit_count(&g("SU(2)"), 2, DEFAULT_POINT_CAP).unwrap(),
            2
        );
        assert_eq!(
            weyl_orbit_count(&g("Sp(2)"), 2, DEFAULT_POINT_CAP).unwrap(),
            3
        );
        assert_eq!(
            weyl_orbit_count(&g("SO(5)"), 2, DEFAULT_POINT_CAP).unwrap(),
            3
        );
        assert_eq!(weyl_orbit_count(&g("G2"), 1, DEFAULT_POINT_CAP).unwrap(), 1);
        for (a, b, n) in [
            ("SU(3)", "PU(3)", 2),
            ("Sp(2)", "SO(5)", 3),
            ("G2", "G2", 4),
        ] {
            let (x, y) = verify_zn_duality(&g(a), &g(b), n, DEFAULT_POINT_CAP).unwrap();
            assert_eq!(x, y, "{} {}", a, b);
        }
        assert!(verify_zn_duality(&g("SU(3)"), &g("SU(3)"), 2, DEFAULT_POINT_CAP).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            weyl_orbit_count(&g("E8"), 7, 1000),
            Err(LatticeError::TooLarge { .. })
        ));
    }

    #[test]
    fn seed_order_does_not_matter() {
        let grp = g("SO(7)");
        let pts = 4usize.pow(3);
        let fwd: Vec<usize> = (0..pts).collect();
        let rev: Vec<usize> = (0..pts).rev().collect();
        let mut shuffled: Vec<usize> = (0..pts).map(|i| (i * 37 + 11) % pts).collect();
        shuffled.sort_by_key(|&i| (i * 13) % 7);
        let a = orbit_count_with_seed_order(&grp, 4, &fwd).unwrap();
        assert_eq!(a, orbit_count_with_seed_order(&grp, 4, &rev).unwrap());
        assert_eq!(a, orbit_count_with_seed_order(&grp, 4, &shuffled).unwrap());
    }

    fn weyl_group_elements(cd: &CartanData) -> Vec<IntMat> {
        let mut elems = vec![crate::intmat::identity(cd.rank())];
        let mut i = 0;
        while i < elems.len() {
            for k in 0..cd.rank() {
                let e = mat_mul(&cd.reflection(k), &elems[i]);
                if !elems.contains(&e) {
                    elems.push(e);
                }
            }
            i += 1;
        }
        elems
    }

    #[test]
    fn burnside_agrees_for_small_rank() {
        for name in [
            "SU(2)",
            "PU(3)",
            "SU(4)",
            "SU(4)/Z_2",
            "Sp(2)",
            "SO(5)",
            "SO(7)",
            "Spin(7)",
            "PSp(3)",
            "G2",
        ] {
            let grp = g(name);
            let cd = CartanData::new(grp.lie).unwrap();
            let w = weyl_group_elements(&cd);
            assert_eq!(w.len() as u64, grp.lie.weyl_order(), "{}", name);
            let b = grp.cochar.basis_matrix();
            let binv = crate::intmat::inverse_rational(&b).unwrap();
            let r = cd.rank();
            let conj: Vec<IntMat> = w
                .iter()
                .map(|m| {
                    let mb = mat_mul(m, &b);
                    (0..r)
                        .map(|p| {
                            (0..r)
                                .map(|q| {
                                    let v: crate::intmat::Rat = (0..r)
                                        .map(|k| {
                                            binv[p][k]
                                                * crate::intmat::Rat::from_integer(mb[k][q] as i128)
                                        })
                                        .sum();
                                    v.to_integer() as i64
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            for n in 1..=4u32 {
                let pts = (n as usize).pow(r as u32);
                let mut fix_total = 0u64;
                for m in &conj {
                    for p in 0..pts {
                        let mut x = vec![0i64; r];
                        let mut q = p;
                        for xi in x.iter_mut() {
                            *xi = (q % n as usize) as i64;
                            q /= n as usize;
                        }
                        let y = crate::intmat::mat_vec(m, &x);
                        if y.iter()
                            .zip(&x)
                            .all(|(a, b)| (a - b).rem_euclid(n as i64) == 0)
                        {
                            fix_total += 1;
                        }
                    }
                }
                assert_eq!(fix_total % w.len() as u64, 0);
                assert_eq!(
                    fix_total / w.len() as u64,
                    weyl_orbit_count(&grp, n, DEFAULT_POINT_CAP).unwrap(),
                    "{} n={}",
                    name,
                    n
                );
            }
        }
    }

    #[test]
    fn refined_su2_sectors() {
        let cd = CartanData::new(LieType::A(1)).unwrap();
        let t = refined_zn_characters(
            LieType::A(1),
            &cd.cartan,
            &g("SU(2)").cochar,
            &g("PU(2)").cochar,
            2,
            DEFAULT_POINT_CAP,
        )
        .unwrap();
        let dims: Vec<u64> = t.sectors.iter().map(|s| s.1).collect();
        assert_eq!(dims, vec![2, 1]);
        // Trivial Z degenerates to N(Z_n, G).
        let t = refined_zn_characters(
            LieType::A(1),
            &cd.cartan,
            &g("SU(2)").cochar,
            &g("SU(2)").cochar,
            3,
            DEFAULT_POINT_CAP,
        )
        .unwrap();
        assert_eq!(t.table.len(), 1);
        assert_eq!(t.table.values().next().unwrap(), &Cyclo::from_int(2));
    }

    #[test]
    fn refined_swap_small_cases() {
        for (lie, a, b, n) in [
            (LieType::C(1), "Sp(1)", "PSp(1)", 3),
            (LieType::C(1), "Sp(1)", "PSp(1)", 2),
            (LieType::C(2), "Sp(2)", "PSp(2)", 2),
            (LieType::C(2), "Sp(2)", "PSp(2)", 4),
            (LieType::A(2), "SU(3)", "PU(3)", 3),
            (LieType::A(3), "SU(4)", "PU(4)", 2),
            (LieType::A(3), "SU(4)", "SU(4)/Z_2", 2),
        ] {
            let m =
                refined_swap_check(lie, &g(a).cochar, &g(b).cochar, n, DEFAULT_POINT_CAP).unwrap();
            assert!(!m.is_empty(), "{} {} n={}", a, b, n);
        }
    }
}
