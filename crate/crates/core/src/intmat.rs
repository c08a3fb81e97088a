//! Integer matrices and full-rank sublattices of Z^r in Hermite form.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type IntMat = Vec<Vec<i64>>;
pub type Rat = Ratio<i128>;

/// A full-rank lattice L ⊂ Z^r, stored as an echelon basis: basis vector i
/// vanishes in coordinates < i and has a positive pivot at coordinate i.
/// Entries above each pivot are reduced into [0, pivot), which makes the
/// basis unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    basis: Vec<Vec<i64>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("generators do not span a full-rank lattice")]
    Degenerate,
}

impl IntLattice {
    pub fn standard(r: usize) -> Self {
        IntLattice {
            basis: (0..r).map(|i| unit(r, i)).collect(),
        }
    }

    /// Lattice generated by the given vectors of Z^r.
    pub fn from_generators(gens: &[Vec<i64>], r: usize) -> Result<Self, LatticeError> {
        let mut rows: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).collect())
            .collect();
        let mut basis: Vec<Vec<i128>> = Vec::with_capacity(r);
        for col in 0..r {
            // Euclid on column `col` across the remaining rows.
            loop {
                let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&i| rows[i][col].abs());
                let p = nz[0];
                for &i in &nz[1..] {
                    let q = Integer::div_floor(&rows[i][col], &rows[p][col]);
                    let pr = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= q * y;
                    }
                }
            }
            let idx = (0..rows.len())
                .find(|&i| rows[i][col] != 0)
                .ok_or(LatticeError::Degenerate)?;
            let mut v = rows.swap_remove(idx);
            if v[col] < 0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(v);
        }
        // Reduce entries above pivots.
        for i in 0..r {
            for k in 0..i {
                let q = Integer::div_floor(&basis[k][i], &basis[i][i]);
                if q != 0 {
                    let bi = basis[i].clone();
                    for (x, y) in basis[k].iter_mut().zip(&bi) {
                        *x -= q * y;
                    }
                }
            }
        }
        Ok(IntLattice {
            basis: basis
                .into_iter()
                .map(|v| v.into_iter().map(|x| x as i64).collect())
                .collect(),
        })
    }

    /// Lattice spanned by the columns of `m`.
    pub fn column_span(m: &IntMat) -> Result<Self, LatticeError> {
        let r = m.len();
        let cols: Vec<Vec<i64>> = (0..m[0].len())
            .map(|j| (0..r).map(|i| m[i][j]).collect())
            .collect();
        Self::from_generators(&cols, r)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Basis vectors as the columns of a matrix.
    pub fn basis_matrix(&self) -> IntMat {
        transpose(&self.basis)
    }

    pub fn pivots(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.basis[i][i]).collect()
    }

    /// Index [Z^r : L].
    pub fn index(&self) -> i64 {
        self.pivots().iter().product()
    }

    /// Canonical representative of v + L with 0 ≤ v_i < pivot_i.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut w = v.to_vec();
        for (i, b) in self.basis.iter().enumerate() {
            let q = Integer::div_floor(&w[i], &b[i]);
            if q != 0 {
                for (x, y) in w.iter_mut().zip(b).skip(i) {
                    *x -= q * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Canonical representatives of Z^r / L.
    pub fn coset_reps(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &p in &self.pivots() {
            let mut next = Vec::new();
            for v in &out {
                for x in 0..p {
                    let mut w: Vec<i64> = v.clone();
                    w.push(x);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// The lattice nL.
    pub fn scaled(&self, n: i64) -> IntLattice {
        let gens: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|b| b.iter().map(|x| x * n).collect())
            .collect();
        IntLattice::from_generators(&gens, self.rank()).expect("nonzero scale")
    }
}

pub fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

pub fn identity(r: usize) -> IntMat {
    (0..r).map(|i| unit(r, i)).collect()
}

pub fn transpose(m: &IntMat) -> IntMat {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Exact determinant (Bareiss).
pub fn det(m: &IntMat) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        return 1;
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Exact inverse over Q; None if singular.
pub fn inverse_rational(m: &IntMat) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|&x| Rat::from_integer(x as i128)).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c];
                let rc = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&rc) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular-on-the-relevant-lattice matrix, requiring integrality.
pub fn inverse_integer(m: &IntMat) -> Option<IntMat> {
    let inv = inverse_rational(m)?;
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() {
                        Some(x.to_integer() as i64)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// det(m)·m^{-1}, an integer matrix.
pub fn adjugate(m: &IntMat) -> IntMat {
    let d = det(m) as i128;
    let inv = inverse_rational(m).expect("nonsingular");
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let y = *x * Rat::from_integer(d);
                    debug_assert!(y.is_integer());
                    y.to_integer() as i64
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_form_is_canonical() {
        let a = IntLattice::from_generators(&[vec![2, 1], vec![0, 3]], 2).unwrap();
        let b = IntLattice::from_generators(&[vec![2, 4], vec![2, 1], vec![4, 5]], 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.index(), 6);
        assert_eq!(a.coset_reps().len(), 6);
        assert!(a.contains(&[2, 4]));
        assert!(!a.contains(&[1, 0]));
        assert_eq!(a.reduce(&[5, 7]), a.reduce(&[1, 5]));
    }

    #[test]
    fn degenerate_generators_rejected() {
        assert_eq!(
            IntLattice::from_generators(&[vec![1, 2], vec![2, 4]], 2),
            Err(LatticeError::Degenerate)
        );
    }

    #[test]
    fn determinants_and_inverses() {
        let e8_like = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(det(&e8_like), 4);
        let adj = adjugate(&e8_like);
        let prod = mat_mul(&e8_like, &adj);
        assert_eq!(prod, vec![vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4]]);
        assert!(inverse_integer(&e8_like).is_none());
        assert_eq!(
            inverse_integer(&vec![vec![1, 1], vec![0, 1]]),
            Some(vec![vec![1, -1], vec![0, 1]])
        );
    }
}
