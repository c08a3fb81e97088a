//! Finite subgroups Γ ⊂ SU(2): character tables, reality types,
//! determinants, abelianization and low-degree cohomology.

pub mod sw;
mod tables;
pub mod twisted;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::abelian::{Elem, FiniteAbelian};
use crate::cyclo::Cyclo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Cyclic(u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown group `{0}`; expected Z:<n>, Dhat:<m>, That, Ohat or Ihat")]
    Unknown(String),
    #[error("invalid group parameter in `{0}`")]
    BadParameter(String),
    #[error("unknown irrep `{0}`")]
    UnknownIrrep(String),
    #[error("{0}")]
    Unsupported(String),
}

impl GroupSpec {
    pub fn order(&self) -> u32 {
        match *self {
            GroupSpec::Cyclic(n) => n,
            GroupSpec::BinaryDihedral(m) => 4 * m,
            GroupSpec::BinaryTetrahedral => 24,
            GroupSpec::BinaryOctahedral => 48,
            GroupSpec::BinaryIcosahedral => 120,
        }
    }

    /// Simply-laced type of the McKay partner: A_{n-1}, D_{m+2}, E6, E7, E8.
    pub fn ade_label(&self) -> String {
        match *self {
            GroupSpec::Cyclic(n) => format!("A{}", n - 1),
            GroupSpec::BinaryDihedral(m) => format!("D{}", m + 2),
            GroupSpec::BinaryTetrahedral => "E6".into(),
            GroupSpec::BinaryOctahedral => "E7".into(),
            GroupSpec::BinaryIcosahedral => "E8".into(),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(
            self,
            GroupSpec::BinaryTetrahedral
                | GroupSpec::BinaryOctahedral
                | GroupSpec::BinaryIcosahedral
        )
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Cyclic(n) => write!(f, "Z:{}", n),
            GroupSpec::BinaryDihedral(m) => write!(f, "Dhat:{}", m),
            GroupSpec::BinaryTetrahedral => write!(f, "That"),
            GroupSpec::BinaryOctahedral => write!(f, "Ohat"),
            GroupSpec::BinaryIcosahedral => write!(f, "Ihat"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let t = s.trim();
        let param = |rest: &str| {
            rest.parse::<u32>()
                .map_err(|_| GroupError::BadParameter(s.to_string()))
        };
        if let Some(rest) = t.strip_prefix("Z:") {
            let n = param(rest)?;
            if n == 0 {
                return Err(GroupError::BadParameter(s.to_string()));
            }
            return Ok(GroupSpec::Cyclic(n));
        }
        if let Some(rest) = t.strip_prefix("Dhat:") {
            let m = param(rest)?;
            if m < 2 {
                return Err(GroupError::BadParameter(s.to_string()));
            }
            return Ok(GroupSpec::BinaryDihedral(m));
        }
        match t {
            "That" => Ok(GroupSpec::BinaryTetrahedral),
            "Ohat" => Ok(GroupSpec::BinaryOctahedral),
            "Ihat" => Ok(GroupSpec::BinaryIcosahedral),
            _ => Err(GroupError::Unknown(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reality {
    StrictlyReal,
    Pseudoreal,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub label: String,
    pub size: u32,
    pub elem_order: u32,
    /// Index of the class containing g² for g in this class.
    pub square: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrepInfo {
    pub name: String,
    pub dim: u32,
    pub reality: Reality,
    /// Index of the complex-conjugate irrep (itself unless complex).
    pub partner: usize,
    /// det ρ as an element of A.
    pub det: Elem,
    /// McKay node index; equal to the position in the canonical order.
    pub node: usize,
}

/// Γ_ab and its character group A, identified with the 1-dimensional irreps.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: FiniteAbelian,
    /// Irrep index of each element of A, in `group.elements()` order.
    pub irrep_of: Vec<(Elem, usize)>,
}

impl Abelianization {
    pub fn irrep(&self, a: &[u32]) -> usize {
        self.irrep_of
            .iter()
            .find(|(e, _)| e.as_slice() == a)
            .expect("element of A")
            .1
    }

    pub fn elem_of_irrep(&self, i: usize) -> Option<&Elem> {
        self.irrep_of.iter().find(|(_, j)| *j == i).map(|(e, _)| e)
    }
}

/// All representation-theoretic data for one group.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub spec: GroupSpec,
    pub classes: Vec<ClassInfo>,
    /// chars[i][c] = χ_i on class c.
    pub chars: Vec<Vec<Cyclo>>,
    /// Character of the defining 2-dimensional representation.
    pub defining: Vec<Cyclo>,
    pub irreps: Vec<IrrepInfo>,
    pub ab: Abelianization,
}

impl GroupData {
    pub fn new(spec: GroupSpec) -> Self {
        let raw = tables::raw_table(&spec);
        let order = BigRational::from_integer(BigInt::from(spec.order()));
        let idx = |nm: &str| {
            raw.names
                .iter()
                .position(|x| x == nm)
                .expect("irrep name in table")
        };

        let mut irreps = Vec::with_capacity(raw.names.len());
        for (i, nm) in raw.names.iter().enumerate() {
            let chi = &raw.chars[i];
            let dim = chi[0].as_integer().expect("integral dimension") as u32;
            let fs = fs_indicator_raw(&raw.classes, chi, &order);
            let conj: Vec<Cyclo> = chi.iter().map(|x| x.conj()).collect();
            let partner = raw
                .chars
                .iter()
                .position(|c| *c == conj)
                .expect("conjugate is an irrep");
            let reality = match fs {
                1 => Reality::StrictlyReal,
                -1 => Reality::Pseudoreal,
                _ => Reality::Complex,
            };
            let det_name = &raw.det[i];
            let det = raw
                .one_dim
                .iter()
                .find(|(n, _)| n == det_name)
                .expect("det is 1-dimensional")
                .1
                .clone();
            irreps.push(IrrepInfo {
                name: nm.clone(),
                dim,
                reality,
                partner,
                det,
                node: i,
            });
        }
        let irrep_of = raw.ab.elements().into_iter().map(|e| {
            let name = &raw
                .one_dim
                .iter()
                .find(|(_, x)| *x == e)
                .expect("A element named")
                .0;
            (e, idx(name))
        });
        GroupData {
            spec,
            classes: raw.classes,
            chars: raw.chars,
            defining: raw.defining,
            irreps,
            ab: Abelianization {
                group: raw.ab,
                irrep_of: irrep_of.collect(),
            },
        }
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, GroupError> {
        self.irreps
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| GroupError::UnknownIrrep(name.into()))
    }

    pub fn dims(&self) -> Vec<u32> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    /// (1/|Γ|) Σ_c |c| χ(c) conj(ψ(c)).
    pub fn inner(&self, chi: &[Cyclo], psi: &[Cyclo]) -> Cyclo {
        let mut s = Cyclo::zero();
        for (k, cl) in self.classes.iter().enumerate() {
            let t = &(&chi[k] * &psi[k].conj()) * &Cyclo::from_int(cl.size as i64);
            s = &s + &t;
        }
        s.scale(&BigRational::new(
            BigInt::from(1),
            BigInt::from(self.spec.order()),
        ))
    }

    /// Frobenius–Schur indicator (1/|Γ|) Σ χ(g²).
    pub fn fs_indicator(&self, i: usize) -> i64 {
        let order = BigRational::from_integer(BigInt::from(self.spec.order()));
        fs_indicator_raw(&self.classes, &self.chars[i], &order)
    }

    /// Decomposes a class function into irreducible multiplicities.
    pub fn decompose(&self, chi: &[Cyclo]) -> Option<Vec<i64>> {
        self.chars
            .iter()
            .map(|c| self.inner(chi, c).as_integer())
            .collect()
    }

    pub fn tensor(&self, a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    /// det of a 2-dimensional character from χ(g)² − χ(g²) = 2 det.
    pub fn det_of_2dim(&self, chi: &[Cyclo]) -> Vec<Cyclo> {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        (0..self.classes.len())
            .map(|k| (&(&chi[k] * &chi[k]) - &chi[self.classes[k].square]).scale(&half))
            .collect()
    }

    /// Permutation of irreps induced by tensoring with the 1-dim irrep `a`.
    pub fn twist_permutation(&self, a: &[u32]) -> Vec<usize> {
        let lam = &self.chars[self.ab.irrep(a)];
        (0..self.len())
            .map(|i| {
                let t = self.tensor(&self.chars[i], lam);
                self.chars
                    .iter()
                    .position(|c| *c == t)
                    .expect("twist of an irrep is an irrep")
            })
            .collect()
    }

    /// H¹(Γ; Z_r) = Ker(r×) ⊂ A.
    pub fn h1(&self, r: u32) -> Vec<Elem> {
        self.ab.group.kernel_of_mul(r as i64)
    }

    /// H²(Γ; Z_r) ≅ A/rA, one representative per class.
    pub fn h2_reps(&self, r: u32) -> Vec<Elem> {
        self.ab.group.quotient_reps(r as i64)
    }

    pub fn cohomology(&self, degree: u32, r: u32) -> Result<CohomologyGroup, GroupError> {
        let elements = match degree {
            1 => self.h1(r),
            2 => self.h2_reps(r),
            _ => {
                return Err(GroupError::Unsupported(format!(
                    "H^{} is not provided",
                    degree
                )))
            }
        };
        let structure = match degree {
            1 => self.ab.group.structure_of(&elements),
            _ => self
                .ab
                .group
                .structure_of(&self.ab.group.kernel_of_mul(r as i64)),
        };
        Ok(CohomologyGroup {
            degree,
            coefficients: r,
            structure,
            elements,
        })
    }

    pub fn irreps_report(&self) -> IrrepsReport {
        let det_name = |e: &Elem| self.irreps[self.ab.irrep(e)].name.clone();
        IrrepsReport {
            group: self.spec.to_string(),
            order: self.spec.order(),
            irreps: self
                .irreps
                .iter()
                .map(|r| IrrepRow {
                    name: r.name.clone(),
                    dim: r.dim,
                    reality: r.reality,
                    partner: self.irreps[r.partner].name.clone(),
                    det: det_name(&r.det),
                    node: r.node,
                })
                .collect(),
        }
    }
}

fn fs_indicator_raw(classes: &[ClassInfo], chi: &[Cyclo], order: &BigRational) -> i64 {
    let mut s = Cyclo::zero();
    for cl in classes {
        s = &s + &(&chi[cl.square] * &Cyclo::from_int(cl.size as i64));
    }
    let v = s.scale(&(BigRational::from_integer(1.into()) / order));
    v.as_integer().expect("indicator is an integer")
}

/// H^k(Γ; Z_r) with an explicit description inside A.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyGroup {
    pub degree: u32,
    pub coefficients: u32,
    pub structure: FiniteAbelian,
    /// Elements of Ker(r×) for k = 1, class representatives of A/rA for k = 2.
    pub elements: Vec<Elem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepRow {
    pub name: String,
    pub dim: u32,
    pub reality: Reality,
    pub partner: String,
    pub det: String,
    pub node: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepsReport {
    pub group: String,
    pub order: u32,
    pub irreps: Vec<IrrepRow>,
}

/// Every group in the standard sweep: Z_m (m ≤ 12), D̂_m (2 ≤ m ≤ 6), T̂, Ô, Î.
pub fn standard_groups() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = (1..=12).map(GroupSpec::Cyclic).collect();
    v.extend((2..=6).map(GroupSpec::BinaryDihedral));
    v.extend([
        GroupSpec::BinaryTetrahedral,
        GroupSpec::BinaryOctahedral,
        GroupSpec::BinaryIcosahedral,
    ]);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_groups() -> Vec<GroupSpec> {
        let mut v = standard_groups();
        v.extend([
            GroupSpec::Cyclic(13),
            GroupSpec::BinaryDihedral(7),
            GroupSpec::BinaryDihedral(8),
        ]);
        v
    }

    #[test]
    fn parse_round_trip() {
        for g in all_groups() {
            assert_eq!(g.to_string().parse::<GroupSpec>().unwrap(), g);
        }
        assert!("Z:0".parse::<GroupSpec>().is_err());
        assert!("Dhat:1".parse::<GroupSpec>().is_err());
        assert!("Q8".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn class_equation_and_dimensions() {
        for g in all_groups() {
            let d = GroupData::new(g);
            let classes: u32 = d.classes.iter().map(|c| c.size).sum();
            assert_eq!(classes, g.order(), "{}", g);
            let sq: u32 = d.dims().iter().map(|x| x * x).sum();
            assert_eq!(sq, g.order(), "{}", g);
            assert_eq!(d.len(), d.classes.len());
        }
    }

    #[test]
    fn orthonormality() {
        for g in all_groups() {
            let d = GroupData::new(g);
            for i in 0..d.len() {
                for j in 0..d.len() {
                    let ip = d.inner(&d.chars[i], &d.chars[j]);
                    assert_eq!(ip, Cyclo::from_int((i == j) as i64), "{} {} {}", g, i, j);
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for g in all_groups() {
            let d = GroupData::new(g);
            for a in 0..d.classes.len() {
                for b in 0..d.classes.len() {
                    let mut s = Cyclo::zero();
                    for chi in &d.chars {
                        s = &s + &(&chi[a] * &chi[b].conj());
                    }
                    let expect = if a == b {
                        (g.order() / d.classes[a].size) as i64
                    } else {
                        0
                    };
                    assert_eq!(s, Cyclo::from_int(expect), "{} {} {}", g, a, b);
                }
            }
        }
    }

    #[test]
    fn square_map_consistent_with_orders() {
        for g in all_groups() {
            let d = GroupData::new(g);
            for c in &d.classes {
                let o = c.elem_order;
                let expect = if o % 2 == 0 { o / 2 } else { o };
                assert_eq!(d.classes[c.square].elem_order, expect, "{} {}", g, c.label);
            }
        }
    }

    #[test]
    fn defining_rep_is_faithful_pseudoreal_2dim() {
        for g in all_groups() {
            let d = GroupData::new(g);
            assert_eq!(d.defining[0], Cyclo::from_int(2));
            let dec = d.decompose(&d.defining).unwrap();
            assert!(dec.iter().all(|&x| x >= 0));
            if !matches!(g, GroupSpec::Cyclic(_)) {
                assert_eq!(d.fs_indicator(1), -1, "{}", g);
                assert_eq!(d.chars[1], d.defining);
            }
        }
    }

    #[test]
    fn one_dimensional_irreps_form_the_group_a() {
        for g in all_groups() {
            let d = GroupData::new(g);
            let a = &d.ab.group;
            let ones = d.irreps.iter().filter(|r| r.dim == 1).count();
            assert_eq!(ones, a.order(), "{}", g);
            for x in a.elements() {
                for y in a.elements() {
                    let prod = d.tensor(&d.chars[d.ab.irrep(&x)], &d.chars[d.ab.irrep(&y)]);
                    assert_eq!(prod, d.chars[d.ab.irrep(&a.add(&x, &y))], "{}", g);
                }
            }
        }
    }

    #[test]
    fn determinants_of_2dim_irreps() {
        for g in all_groups() {
            let d = GroupData::new(g);
            for r in d.irreps.iter().filter(|r| r.dim == 2) {
                let det = d.det_of_2dim(&d.chars[r.node]);
                assert_eq!(det, d.chars[d.ab.irrep(&r.det)], "{} {}", g, r.name);
            }
        }
    }

    #[test]
    fn determinant_of_twist() {
        // det(ρ⊗λ) = det ρ · λ^{dim ρ}
        for g in all_groups() {
            let d = GroupData::new(g);
            let a = &d.ab.group;
            for x in a.elements() {
                let perm = d.twist_permutation(&x);
                for r in &d.irreps {
                    let expect = a.add(&r.det, &a.scale(&x, r.dim as i64));
                    assert_eq!(d.irreps[perm[r.node]].det, expect, "{} {}", g, r.name);
                }
            }
        }
    }

    #[test]
    fn octahedral_reality_types() {
        let d = GroupData::new(GroupSpec::BinaryOctahedral);
        let real = ["1", "1'", "3", "3'", "2''"];
        for r in &d.irreps {
            let expect = if real.contains(&r.name.as_str()) {
                Reality::StrictlyReal
            } else {
                Reality::Pseudoreal
            };
            assert_eq!(r.reality, expect, "{}", r.name);
        }
    }

    #[test]
    fn dihedral_reality_pattern() {
        for m in 2..=8 {
            let d = GroupData::new(GroupSpec::BinaryDihedral(m));
            for k in 1..m {
                let r = &d.irreps[d.index_of(&format!("2_{}", k)).unwrap()];
                let expect = if k % 2 == 1 {
                    Reality::Pseudoreal
                } else {
                    Reality::StrictlyReal
                };
                assert_eq!(r.reality, expect, "m={} k={}", m, k);
            }
            let i1 = d.index_of("1''").unwrap();
            let i3 = d.index_of("1'''").unwrap();
            if m % 2 == 0 {
                assert_eq!(d.irreps[i1].reality, Reality::StrictlyReal);
            } else {
                assert_eq!(d.irreps[i1].partner, i3);
            }
        }
    }

    #[test]
    fn small_dihedral_against_hand_table() {
        // D̂_2 is the quaternion group Q8: four real characters ±1 and one 2-dim.
        let d = GroupData::new(GroupSpec::BinaryDihedral(2));
        let pm: Vec<Vec<i64>> = d
            .chars
            .iter()
            .map(|c| c.iter().map(|x| x.as_integer().unwrap()).collect())
            .collect();
        assert_eq!(pm[0], vec![1, 1, 1, 1, 1]);
        assert_eq!(pm[1], vec![2, -2, 0, 0, 0]);
        let mut ones: Vec<Vec<i64>> = pm[2..].to_vec();
        ones.sort();
        assert_eq!(
            ones,
            vec![
                vec![1, 1, -1, -1, 1],
                vec![1, 1, -1, 1, -1],
                vec![1, 1, 1, -1, -1]
            ]
        );
        // D̂_3 (dicyclic of order 12): 1'' takes i^3 = -i on a.
        let d = GroupData::new(GroupSpec::BinaryDihedral(3));
        let i1 = d.index_of("1''").unwrap();
        assert_eq!(d.chars[i1][4], -&Cyclo::root(4, 1));
        assert_eq!(d.chars[i1][2], Cyclo::from_int(-1));
        assert_eq!(d.chars[i1][3], Cyclo::from_int(1));
    }

    #[test]
    fn cohomology_groups() {
        let d = GroupData::new(GroupSpec::BinaryDihedral(4));
        assert_eq!(d.cohomology(1, 2).unwrap().structure.factors, vec![2, 2]);
        assert_eq!(d.cohomology(2, 3).unwrap().elements.len(), 1);
        let d = GroupData::new(GroupSpec::Cyclic(6));
        assert_eq!(d.cohomology(2, 4).unwrap().elements, vec![vec![0], vec![1]]);
        assert_eq!(d.cohomology(1, 4).unwrap().elements, vec![vec![0], vec![3]]);
        assert!(d.cohomology(3, 2).is_err());
        let d = GroupData::new(GroupSpec::BinaryIcosahedral);
        assert_eq!(d.cohomology(1, 5).unwrap().structure.order(), 1);
    }

    #[test]
    fn irreps_report_json_shape() {
        let d = GroupData::new(GroupSpec::BinaryOctahedral);
        let j = serde_json::to_value(d.irreps_report()).unwrap();
        assert_eq!(j["order"], 48);
        assert_eq!(j["irreps"][4]["name"], "3'");
        assert_eq!(j["irreps"][4]["det"], "1'");
        assert_eq!(j["irreps"][4]["reality"], "strictly_real");
    }
}
