//! Level-n integrable weights of simply-laced affine algebras, their modular
//! S-matrices (Kac–Peterson), and the comparison of the A-action by diagram
//! automorphisms with the diagonal action of characters of P/Q.
//!
//! Nodes are labelled by the irreps of the McKay-partner Γ, so a level-n
//! weight is literally a multiplicity vector with Σ n_i dim ρ_i = n.

use std::collections::{HashSet, VecDeque};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::abelian::Elem;
use crate::cyclo::Cyclo;
use crate::grouprep::{GroupData, GroupSpec};
use crate::intmat::{adjugate, det, IntLattice, IntMat};
use crate::lattice::LieType;
use crate::mckay::{self, finite_cartan, McKayGraph};

pub const TOLERANCE: f64 = 1e-9;
/// Weyl groups larger than this need an explicit opt-in.
const WEYL_BUDGET: u64 = 60_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AffineError {
    #[error("unsupported type: {0}")]
    Unsupported(String),
    #[error("level must be positive")]
    BadLevel,
}

/// McKay partner of a simply-laced type.
pub fn partner_group(lie: LieType) -> Result<GroupSpec, AffineError> {
    Ok(match lie {
        LieType::A(k) => GroupSpec::Cyclic(k + 1),
        LieType::D(k) if k >= 4 => GroupSpec::BinaryDihedral(k - 2),
        LieType::E6 => GroupSpec::BinaryTetrahedral,
        LieType::E7 => GroupSpec::BinaryOctahedral,
        LieType::E8 => GroupSpec::BinaryIcosahedral,
        other => {
            return Err(AffineError::Unsupported(format!(
                "{} is not simply laced with an affine McKay partner",
                other
            )))
        }
    })
}

#[derive(Clone, Debug)]
pub struct LevelWeights {
    pub lie: LieType,
    pub level: u32,
    pub group: GroupData,
    pub graph: McKayGraph,
    /// Affine weights as (n_0, …, n_r) in irrep order of the partner group,
    /// in reverse lexicographic order, so the vacuum (n, 0, …, 0) is first.
    pub weights: Vec<Vec<u32>>,
}

pub fn level_weights(lie: LieType, level: u32) -> Result<LevelWeights, AffineError> {
    if level == 0 {
        return Err(AffineError::BadLevel);
    }
    let group = GroupData::new(partner_group(lie)?);
    let graph = mckay::build(&group).map_err(|e| AffineError::Unsupported(e.to_string()))?;
    let comarks = graph.comarks.clone();
    let mut weights = Vec::new();
    let mut v = vec![0u32; comarks.len()];
    fn rec(c: &[u32], k: usize, rem: u32, v: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == c.len() {
            if rem == 0 {
                out.push(v.clone());
            }
            return;
        }
        for x in (0..=rem / c[k]).rev() {
            v[k] = x;
            rec(c, k + 1, rem - x * c[k], v, out);
        }
        v[k] = 0;
    }
    rec(&comarks, 0, level, &mut v, &mut weights);
    Ok(LevelWeights {
        lie,
        level,
        group,
        graph,
        weights,
    })
}

impl LevelWeights {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn cartan(&self) -> IntMat {
        finite_cartan(&self.graph.adj)
    }

    /// Dual Coxeter number h∨ = Σ comarks.
    pub fn dual_coxeter(&self) -> u32 {
        self.graph.comarks.iter().sum()
    }

    /// Index of the weight obtained by permuting nodes with `p`.
    pub fn permuted(&self, i: usize, p: &[usize]) -> usize {
        let w = &self.weights[i];
        let mut out = vec![0u32; w.len()];
        for (k, &x) in w.iter().enumerate() {
            out[p[k]] = x;
        }
        self.weights
            .iter()
            .position(|x| *x == out)
            .expect("permutation preserves the level")
    }

    /// det′: the class in A of the multiplicity vector.
    pub fn det_class(&self, i: usize) -> Elem {
        let a = &self.group.ab.group;
        let mut s = a.zero();
        for (k, &x) in self.weights[i].iter().enumerate() {
            s = a.add(&s, &a.scale(&self.group.irreps[k].det, x as i64));
        }
        s
    }
}

/// A dense complex matrix.
#[derive(Clone, Debug)]
pub struct SMatrix {
    pub lie: LieType,
    pub level: u32,
    pub data: Vec<Vec<Complex64>>,
}

fn ser_pairs<S: Serializer>(m: &[Vec<Complex64>], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<(f64, f64)>> = m
        .iter()
        .map(|r| r.iter().map(|z| (z.re, z.im)).collect())
        .collect();
    rows.serialize(s)
}

/// JSON form: entries as (re, im) pairs.
#[derive(Clone, Debug, Serialize)]
pub struct SMatrixDump {
    #[serde(rename = "type")]
    pub lie: String,
    pub level: u32,
    pub weights: Vec<Vec<u32>>,
    #[serde(serialize_with = "ser_pairs")]
    pub s: Vec<Vec<Complex64>>,
}

/// Kac–Peterson S-matrix. E8 is rejected; Weyl groups above the default
/// budget (E7, D_k for k ≥ 7, A_k for k ≥ 8) require `allow_large`.
pub fn s_matrix(lw: &LevelWeights, allow_large: bool) -> Result<SMatrix, AffineError> {
    if lw.lie == LieType::E8 {
        return Err(AffineError::Unsupported(
            "E8 S-matrix is not computed".into(),
        ));
    }
    if lw.lie.weyl_order() > WEYL_BUDGET && !allow_large {
        return Err(AffineError::Unsupported(format!(
            "{} exceeds the default Weyl-group budget",
            lw.lie
        )));
    }
    let c = lw.cartan();
    let r = c.len();
    let d = det(&c);
    let adj = adjugate(&c);
    let kappa = (lw.level + lw.dual_coxeter()) as i64;
    let modulus = d * kappa;
    let table: Vec<Complex64> = (0..modulus)
        .map(|k| {
            Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / modulus as f64)
        })
        .collect();
    let shifted: Vec<Vec<i64>> = lw
        .weights
        .iter()
        .map(|w| w[1..].iter().map(|&x| x as i64 + 1).collect())
        .collect();
    // adj(c)(μ+ρ), so that (v, μ+ρ) = vᵀ adj(c) (μ+ρ) / det.
    let duals: Vec<Vec<i64>> = shifted
        .iter()
        .map(|u| crate::intmat::mat_vec(&adj, u))
        .collect();
    let n = lw.len();
    let mut raw = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, lam) in shifted.iter().enumerate() {
        let mut acc = vec![Complex64::new(0.0, 0.0); n];
        for_each_orbit_point(&c, lam, &mut |v, sign| {
            for (j, du) in duals.iter().enumerate() {
                let mut s: i64 = 0;
                for k in 0..r {
                    s += v[k] * du[k];
                }
                let z = table[s.rem_euclid(modulus) as usize];
                if sign {
                    acc[j] -= z;
                } else {
                    acc[j] += z;
                }
            }
        });
        raw[i] = acc;
    }
    // Row 0 is the vacuum; S_00 is real and positive.
    let norm: f64 = raw[0].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let phase = raw[0][0] / raw[0][0].norm();
    let scale = phase.conj() / norm;
    let data = raw
        .into_iter()
        .map(|row| row.into_iter().map(|z| z * scale).collect())
        .collect();
    Ok(SMatrix {
        lie: lw.lie,
        level: lw.level,
        data,
    })
}

/// Visits the W-orbit of a regular weight with the sign of the Weyl element
/// (`true` for odd length).
fn for_each_orbit_point(c: &IntMat, start: &[i64], f: &mut dyn FnMut(&[i64], bool)) {
    let r = c.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<(Vec<i64>, bool)> = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back((start.to_vec(), false));
    while let Some((v, sign)) = queue.pop_front() {
        f(&v, sign);
        for i in 0..r {
            let k = v[i];
            let w: Vec<i64> = (0..r).map(|j| v[j] - k * c[i][j]).collect();
            if !seen.contains(&w) {
                seen.insert(w.clone());
                queue.push_back((w, !sign));
            }
        }
    }
}

impl SMatrix {
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn adjoint(&self) -> Vec<Vec<Complex64>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.data[j][i].conj()).collect())
            .collect()
    }

    pub fn unitarity_error(&self) -> f64 {
        max_diff(&mul(&self.data, &self.adjoint()), &eye(self.dim()))
    }

    pub fn symmetry_error(&self) -> f64 {
        let n = self.dim();
        let mut e: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                e = e.max((self.data[i][j] - self.data[j][i]).norm());
            }
        }
        e
    }

    /// S² rounded to a signed permutation matrix, if every entry is within
    /// tolerance of 0 or ±1.
    pub fn square_as_permutation(&self) -> Option<Vec<Vec<i64>>> {
        let sq = mul(&self.data, &self.data);
        let mut out = Vec::with_capacity(sq.len());
        for row in &sq {
            let mut r = Vec::with_capacity(row.len());
            for z in row {
                let k = z.re.round();
                if (z - Complex64::new(k, 0.0)).norm() > 1e-6 || k.abs() > 1.0 {
                    return None;
                }
                r.push(k as i64);
            }
            if r.iter().filter(|&&x| x != 0).count() != 1 {
                return None;
            }
            out.push(r);
        }
        Some(out)
    }

    pub fn dump(&self, lw: &LevelWeights) -> SMatrixDump {
        SMatrixDump {
            lie: self.lie.to_string(),
            level: self.level,
            weights: lw.weights.clone(),
            s: self.data.clone(),
        }
    }
}

fn eye(n: usize) -> Vec<Vec<Complex64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new((i == j) as u8 as f64, 0.0))
                .collect()
        })
        .collect()
}

fn mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

/// How one element a ∈ A was matched.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugationMatch {
    /// The 1-dimensional irrep corresponding to a.
    pub element: String,
    /// μ ∈ Z^r / cZ^r with D_λλ = exp(2πi λᵀ c⁻¹ μ), or None.
    pub character: Option<Vec<i64>>,
    /// b ∈ A with D_λλ = ⟨b, det′ λ⟩, i.e. the character through det′.
    pub det_character: Option<String>,
    pub error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugationReport {
    #[serde(rename = "type")]
    pub lie: String,
    pub level: u32,
    pub holds: bool,
    /// "S P S^-1" or "S^-1 P S".
    pub convention: String,
    /// a ↦ b in A, read off through det′; an isomorphism A ≅ A^ when `holds`.
    pub identification: Vec<(String, String)>,
    pub matches: Vec<ConjugationMatch>,
    pub max_abs_error: f64,
}

/// Checks that each diagram automorphism P_a is carried by S to a diagonal
/// matrix of P/Q-character values, and that the resulting a ↦ character is a
/// bijection A → A^.
pub fn verify_s_conjugation(lw: &LevelWeights, s: &SMatrix) -> ConjugationReport {
    let c = lw.cartan();
    let d = det(&c);
    let adj = adjugate(&c);
    let coweights = IntLattice::column_span(&c)
        .expect("nonsingular")
        .coset_reps();
    let sd = s.adjoint();
    let n = lw.len();
    let a_grp = &lw.group.ab.group;
    let mut best: Option<(String, Vec<ConjugationMatch>, f64)> = None;
    for (conv, left, right) in [("S P S^-1", &s.data, &sd), ("S^-1 P S", &sd, &s.data)] {
        let mut matches = Vec::new();
        let mut worst: f64 = 0.0;
        for (a, p) in &lw.graph.a_action {
            let mut pm = vec![vec![Complex64::new(0.0, 0.0); n]; n];
            for i in 0..n {
                pm[lw.permuted(i, p)][i] = Complex64::new(1.0, 0.0);
            }
            let conj = mul(&mul(left, &pm), right);
            let mut found: Option<(Vec<i64>, f64)> = None;
            for mu in &coweights {
                let diag: Vec<Vec<Complex64>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if i != j {
                                    return Complex64::new(0.0, 0.0);
                                }
                                let lam: Vec<i64> =
                                    lw.weights[i][1..].iter().map(|&x| x as i64).collect();
                                let mut t: i64 = 0;
                                for (p_, lp) in lam.iter().enumerate() {
                                    for (q_, mq) in mu.iter().enumerate() {
                                        t += lp * adj[p_][q_] * mq;
                                    }
                                }
                                Complex64::from_polar(
                                    1.0,
                                    2.0 * std::f64::consts::PI * t.rem_euclid(d) as f64 / d as f64,
                                )
                            })
                            .collect()
                    })
                    .collect();
                let e = max_diff(&conj, &diag);
                if e < TOLERANCE * (n as f64).max(1.0)
                    && found.as_ref().map_or(true, |(_, fe)| e < *fe)
                {
                    found = Some((mu.clone(), e));
                }
            }
            // Read the diagonal through det′ as a character of A.
            let det_character = a_grp.elements().into_iter().find(|b| {
                (0..n).all(|i| {
                    let z = a_grp.pairing(b, &lw.det_class(i)).to_complex();
                    (conj[i][i] - z).norm() < 1e-6
                })
            });
            let name = lw.group.irreps[lw.group.ab.irrep(a)].name.clone();
            let err = found.as_ref().map(|f| f.1).unwrap_or(f64::INFINITY);
            worst = worst.max(err);
            matches.push(ConjugationMatch {
                element: name,
                character: found.map(|f| f.0),
                det_character: det_character
                    .map(|b| lw.group.irreps[lw.group.ab.irrep(&b)].name.clone()),
                error: err,
            });
        }
        let bijective = {
            let mut dc: Vec<Option<String>> =
                matches.iter().map(|m| m.det_character.clone()).collect();
            dc.sort();
            dc.dedup();
            dc.len() == matches.len() && dc.iter().all(|x| x.is_some())
        };
        let ok = worst.is_finite() && bijective;
        let better = match &best {
            None => true,
            Some((_, prev, pe)) => {
                let prev_ok = pe.is_finite() && prev.iter().all(|m| m.det_character.is_some());
                ok && !prev_ok
            }
        };
        if better {
            best = Some((
                conv.to_string(),
                matches,
                if ok { worst } else { f64::INFINITY },
            ));
        }
        if ok {
            break;
        }
    }
    let (convention, matches, err) = best.expect("at least one convention tried");
    let holds = err.is_finite();
    let identification = matches
        .iter()
        .map(|m| {
            (
                m.element.clone(),
                m.det_character.clone().unwrap_or_default(),
            )
        })
        .collect();
    ConjugationReport {
        lie: lw.lie.to_string(),
        level: lw.level,
        holds,
        convention,
        identification,
        matches,
        max_abs_error: err,
    }
}

/// Exact check for A1 at level k: with ζ = exp(πi/(k+2)) the entries are
/// √(2/(k+2))·X_ab, X_ab = (ζ^m − ζ^−m)/(2i), m = (a+1)(b+1). Returns the
/// largest deviation of the numeric matrix from the exact values, after
/// verifying Σ_b X_ab X_cb = δ_ac (k+2)/2 in exact arithmetic.
pub fn a1_exact_check(k: u32) -> Result<f64, AffineError> {
    let lw = level_weights(LieType::A(1), k)?;
    let s = s_matrix(&lw, false)?;
    let nn = k + 2;
    let half_i_inv =
        Cyclo::from_powers(4, &[(3, 1)]).scale(&num_rational::BigRational::new(1.into(), 2.into()));
    // Weight (n0, n1) has finite label a = n1.
    let label: Vec<u32> = lw.weights.iter().map(|w| w[1]).collect();
    let x = |a: u32, b: u32| -> Cyclo {
        let m = ((a + 1) * (b + 1)) as i64;
        let diff = Cyclo::from_powers(2 * nn, &[(m, 1), (-m, -1)]);
        &diff * &half_i_inv
    };
    let dim = lw.len();
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Cyclo::zero();
            for l in 0..dim {
                acc = &acc + &(&x(label[i], label[l]) * &x(label[j], label[l]));
            }
            let want = if i == j {
                Cyclo::from_rational(num_rational::BigRational::new((nn as i64).into(), 2.into()))
            } else {
                Cyclo::zero()
            };
            if acc != want {
                return Ok(f64::INFINITY);
            }
        }
    }
    let f = (2.0 / nn as f64).sqrt();
    let mut err: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let exact = x(label[i], label[j]).to_complex() * f;
            err = err.max((exact - s.data[i][j]).norm());
        }
    }
    Ok(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_counts() {
        assert_eq!(level_weights(LieType::A(1), 1).unwrap().len(), 2);
        assert_eq!(level_weights(LieType::A(2), 1).unwrap().len(), 3);
        // 2Λ0, Λ0+Λ0', 2Λ0', and the three comark-2 nodes.
        assert_eq!(level_weights(LieType::E7, 2).unwrap().len(), 6);
        assert!(level_weights(LieType::B(2), 1).is_err());
        assert_eq!(
            level_weights(LieType::A(1), 0).unwrap_err(),
            AffineError::BadLevel
        );
    }

    #[test]
    fn a1_level_one() {
        let lw = level_weights(LieType::A(1), 1).unwrap();
        let s = s_matrix(&lw, false).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [[h, h], [h, -h]];
        assert_eq!(lw.weights, vec![vec![1, 0], vec![0, 1]]);
        let idx: Vec<usize> = lw.weights.iter().map(|w| w[1] as usize).collect();
        for i in 0..2 {
            for j in 0..2 {
                assert!((s.data[i][j] - Complex64::new(want[idx[i]][idx[j]], 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn a1_exact() {
        for k in 1..=6 {
            assert!(a1_exact_check(k).unwrap() < 1e-12, "k={}", k);
        }
    }

    #[test]
    fn basic_properties() {
        for (t, n) in [
            (LieType::A(1), 2),
            (LieType::A(2), 3),
            (LieType::A(3), 2),
            (LieType::D(4), 1),
            (LieType::D(5), 2),
            (LieType::E6, 1),
        ] {
            let lw = level_weights(t, n).unwrap();
            let s = s_matrix(&lw, false).unwrap();
            assert!(s.unitarity_error() < TOLERANCE, "{} {}", t, n);
            assert!(s.symmetry_error() < TOLERANCE, "{} {}", t, n);
            let p = s.square_as_permutation().expect("S^2 is a permutation");
            let p2: Vec<Vec<i64>> = (0..p.len())
                .map(|i| {
                    (0..p.len())
                        .map(|j| (0..p.len()).map(|k| p[i][k] * p[k][j]).sum())
                        .collect()
                })
                .collect();
            assert_eq!(p2, crate::intmat::identity(p.len()));
        }
    }

    #[test]
    fn e8_rejected_and_e7_opt_in() {
        let lw = level_weights(LieType::E8, 1).unwrap();
        assert!(s_matrix(&lw, true).is_err());
        let lw = level_weights(LieType::E7, 1).unwrap();
        assert!(s_matrix(&lw, false).is_err());
    }

    #[test]
    fn conjugation_examples() {
        for (t, n) in [
            (LieType::A(1), 2),
            (LieType::D(4), 1),
            (LieType::E6, 1),
            (LieType::A(3), 2),
            (LieType::D(5), 1),
        ] {
            let lw = level_weights(t, n).unwrap();
            let s = s_matrix(&lw, false).unwrap();
            let r = verify_s_conjugation(&lw, &s);
            assert!(r.holds, "{} {}: {:?}", t, n, r);
        }
    }
}
