//! McKay graphs of Γ ⊂ SU(2): nodes are irreps, ρ_i and ρ_j are joined
//! with multiplicity ⟨ρ_i ⊗ V, ρ_j⟩.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abelian::Elem;
use crate::grouprep::GroupData;
use crate::intmat::{det, IntLattice, IntMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AdeType {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl AdeType {
    pub fn rank(&self) -> u32 {
        match *self {
            AdeType::A(k) | AdeType::D(k) => k,
            AdeType::E6 => 6,
            AdeType::E7 => 7,
            AdeType::E8 => 8,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            AdeType::A(k) => format!("A{}", k),
            AdeType::D(k) => format!("D{}", k),
            AdeType::E6 => "E6".into(),
            AdeType::E7 => "E7".into(),
            AdeType::E8 => "E8".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct McKayGraph {
    /// adj[i][j] = ⟨ρ_i ⊗ V, ρ_j⟩.
    pub adj: Vec<Vec<u32>>,
    pub comarks: Vec<u32>,
    pub ade: AdeType,
    /// For each a ∈ A (in `GroupData::ab` element order), the node permutation
    /// induced by tensoring with a.
    pub a_action: Vec<(Elem, Vec<usize>)>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum McKayError {
    #[error("tensor product with V does not decompose integrally")]
    NonIntegral,
    #[error("graph is not an extended Dynkin diagram: {0}")]
    NotAffine(String),
}

pub fn build(g: &GroupData) -> Result<McKayGraph, McKayError> {
    let n = g.len();
    let mut adj = vec![vec![0u32; n]; n];
    for i in 0..n {
        let t = g.tensor(&g.chars[i], &g.defining);
        let dec = g.decompose(&t).ok_or(McKayError::NonIntegral)?;
        for (j, &m) in dec.iter().enumerate() {
            if m < 0 {
                return Err(McKayError::NonIntegral);
            }
            adj[i][j] = m as u32;
        }
    }
    let comarks = g.dims();
    let ade = classify(&adj, &comarks)?;
    let a_action = g.ab.group.elements().into_iter().map(|a| {
        let p = g.twist_permutation(&a);
        (a, p)
    });
    Ok(McKayGraph {
        adj,
        comarks,
        ade,
        a_action: a_action.collect(),
    })
}

/// Identifies the extended Dynkin diagram. Node 0 is the trivial irrep.
fn classify(adj: &[Vec<u32>], comarks: &[u32]) -> Result<AdeType, McKayError> {
    let n = adj.len();
    for i in 0..n {
        for j in 0..n {
            if adj[i][j] != adj[j][i] {
                return Err(McKayError::NotAffine("asymmetric".into()));
            }
        }
    }
    // Affine Cartan matrix annihilates the comark vector.
    for i in 0..n {
        let s: i64 = (0..n).map(|j| adj[i][j] as i64 * comarks[j] as i64).sum();
        if s != 2 * comarks[i] as i64 {
            return Err(McKayError::NotAffine(format!(
                "comark relation fails at node {}",
                i
            )));
        }
    }
    if n == 1 {
        return Ok(AdeType::A(0));
    }
    let degree = |i: usize| -> u32 { adj[i].iter().sum() };
    let branch: Vec<usize> = (0..n).filter(|&i| degree(i) >= 3).collect();
    let ade = if branch.is_empty() {
        AdeType::A(n as u32 - 1)
    } else {
        let max_comark = *comarks.iter().max().unwrap();
        match (n, max_comark) {
            (7, 3) => AdeType::E6,
            (8, 4) => AdeType::E7,
            (9, 6) => AdeType::E8,
            _ if max_comark == 2 => AdeType::D(n as u32 - 1),
            _ => {
                return Err(McKayError::NotAffine(format!(
                    "{} nodes, max comark {}",
                    n, max_comark
                )))
            }
        }
    };
    // The finite part must be positive definite of the right determinant.
    let cartan = finite_cartan(adj);
    let expected = match ade {
        AdeType::A(k) => k as i64 + 1,
        AdeType::D(_) => 4,
        AdeType::E6 => 3,
        AdeType::E7 => 2,
        AdeType::E8 => 1,
    };
    if det(&cartan) != expected || !leading_minors_positive(&cartan) {
        return Err(McKayError::NotAffine(format!(
            "finite part is not {}",
            ade.label()
        )));
    }
    Ok(ade)
}

fn leading_minors_positive(m: &IntMat) -> bool {
    (1..=m.len()).all(|k| {
        let sub: IntMat = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&sub) > 0
    })
}

/// 2I − adj restricted to the non-affine nodes.
pub fn finite_cartan(adj: &[Vec<u32>]) -> IntMat {
    let n = adj.len();
    (1..n)
        .map(|i| {
            (1..n)
                .map(|j| {
                    if i == j {
                        2 - adj[i][j] as i64
                    } else {
                        -(adj[i][j] as i64)
                    }
                })
                .collect()
        })
        .collect()
}

impl McKayGraph {
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut e = Vec::new();
        for i in 0..self.adj.len() {
            for j in i..self.adj.len() {
                for _ in 0..self.adj[i][j] {
                    e.push([i, j]);
                }
            }
        }
        e
    }

    pub fn is_automorphism(&self, p: &[usize]) -> bool {
        let n = self.adj.len();
        (0..n).all(|i| (0..n).all(|j| self.adj[p[i]][p[j]] == self.adj[i][j]))
            && (0..n).all(|i| self.comarks[p[i]] == self.comarks[i])
    }

    /// det' : finite weight → P/Q is compatible with det : irrep → A, i.e.
    /// [ω_i] ↦ det ρ_i extends to an isomorphism P/Q ≅ A.
    pub fn det_prime_compatible(&self, g: &GroupData) -> bool {
        let a = &g.ab.group;
        let cartan = finite_cartan(&self.adj);
        let r = cartan.len();
        // Relations: each root (row of the Cartan matrix) maps to 0 in A.
        for row in &cartan {
            let mut s = a.zero();
            for (j, &c) in row.iter().enumerate() {
                s = a.add(&s, &a.scale(&g.irreps[j + 1].det, c));
            }
            if !a.is_zero(&s) {
                return false;
            }
        }
        if r == 0 {
            return a.order() == 1;
        }
        // Well-defined hom from P/Q; bijective iff orders match and it is onto.
        let q = match IntLattice::column_span(&crate::intmat::transpose(&cartan)) {
            Ok(l) => l,
            Err(_) => return false,
        };
        if q.index() as usize != a.order() {
            return false;
        }
        let mut image: Vec<Elem> = Vec::new();
        for v in q.coset_reps() {
            let mut s = a.zero();
            for (j, &c) in v.iter().enumerate() {
                s = a.add(&s, &a.scale(&g.irreps[j + 1].det, c));
            }
            image.push(s);
        }
        image.sort();
        image.dedup();
        image.len() == a.order()
    }

    pub fn report(&self, g: &GroupData) -> GraphReport {
        let mut a_action = BTreeMap::new();
        for (a, p) in &self.a_action {
            a_action.insert(g.irreps[g.ab.irrep(a)].name.clone(), p.clone());
        }
        GraphReport {
            ade_type: self.ade.label(),
            nodes: g
                .irreps
                .iter()
                .map(|r| NodeRow {
                    irrep: r.name.clone(),
                    comark: self.comarks[r.node],
                })
                .collect(),
            edges: self.edges(),
            a_action,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeRow {
    pub irrep: String,
    pub comark: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub ade_type: String,
    pub nodes: Vec<NodeRow>,
    pub edges: Vec<[usize; 2]>,
    pub a_action: BTreeMap<String, Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::{standard_groups, GroupSpec};

    #[test]
    fn ade_types_match_partner() {
        for g in standard_groups() {
            let d = GroupData::new(g);
            let m = build(&d).unwrap();
            assert_eq!(m.ade.label(), g.ade_label(), "{}", g);
        }
    }

    #[test]
    fn octahedral_graph() {
        let d = GroupData::new(GroupSpec::BinaryOctahedral);
        let m = build(&d).unwrap();
        // Chain 1-2-3-4-3'-2'-1' with 2'' on 4.
        assert_eq!(
            m.edges(),
            vec![[0, 1], [1, 2], [2, 3], [3, 4], [3, 7], [4, 5], [5, 6]]
        );
        assert_eq!(m.comarks, vec![1, 2, 3, 4, 3, 2, 1, 2]);
    }

    #[test]
    fn icosahedral_graph_shape() {
        let d = GroupData::new(GroupSpec::BinaryIcosahedral);
        let m = build(&d).unwrap();
        // 1-2-3-4-5-6-4'-2', 3' on 6.
        assert_eq!(
            m.edges(),
            vec![
                [0, 1],
                [1, 2],
                [2, 3],
                [3, 4],
                [4, 5],
                [5, 6],
                [5, 8],
                [6, 7]
            ]
        );
    }

    #[test]
    fn a_action_is_simply_transitive_on_comark_one_nodes() {
        for g in standard_groups() {
            let d = GroupData::new(g);
            let m = build(&d).unwrap();
            let mut seen = Vec::new();
            for (a, p) in &m.a_action {
                assert!(m.is_automorphism(p), "{}", g);
                assert_eq!(p[0], d.ab.irrep(a), "{}", g);
                seen.push(p[0]);
            }
            seen.sort();
            let mut ones: Vec<usize> = (0..d.len()).filter(|&i| m.comarks[i] == 1).collect();
            ones.sort();
            assert_eq!(seen, ones, "{}", g);
        }
    }

    #[test]
    fn det_prime_matches_det() {
        for g in standard_groups() {
            let d = GroupData::new(g);
            let m = build(&d).unwrap();
            assert!(m.det_prime_compatible(&d), "{}", g);
        }
    }

    #[test]
    fn degenerate_cyclic_graphs() {
        let d = GroupData::new(GroupSpec::Cyclic(1));
        let m = build(&d).unwrap();
        assert_eq!(m.adj, vec![vec![2]]);
        let d = GroupData::new(GroupSpec::Cyclic(2));
        let m = build(&d).unwrap();
        assert_eq!(m.edges(), vec![[0, 1], [0, 1]]);
        assert_eq!(m.ade, AdeType::A(1));
    }

    #[test]
    fn graph_report_json() {
        let d = GroupData::new(GroupSpec::BinaryTetrahedral);
        let m = build(&d).unwrap();
        let j = serde_json::to_value(m.report(&d)).unwrap();
        assert_eq!(j["ade_type"], "E6");
        assert_eq!(j["a_action"]["1'"][0], 4);
    }
}
