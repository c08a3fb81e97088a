//! Power series in q truncated after a fixed order.

use crate::gauss::GaussRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSeries {
    coeffs: Vec<GaussRational>,
}

impl GaussSeries {
    /// The zero series, exact through q^order.
    pub fn zero(order: usize) -> Self {
        GaussSeries {
            coeffs: vec![GaussRational::zero(); order + 1],
        }
    }

    pub fn constant(c: GaussRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussRational::one(), order)
    }

    /// c·q^k, which is zero when k exceeds the order.
    pub fn monomial(c: GaussRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<GaussRational>, order: usize) -> Self {
        coeffs.resize(order + 1, GaussRational::zero());
        GaussSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &GaussRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        GaussSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        GaussSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GaussSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        GaussSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![GaussRational::zero(); n + 1];
        let (a, b) = if self.support().len() <= o.support().len() {
            (self, o)
        } else {
            (o, self)
        };
        for i in a.support() {
            if i > n {
                break;
            }
            let ai = &a.coeffs[i];
            for j in 0..=n - i {
                if !b.coeffs[j].is_zero() {
                    out[i + j] += &(ai * &b.coeffs[j]);
                }
            }
        }
        GaussSeries { coeffs: out }
    }

    /// self / d; None when d has zero constant term.
    pub fn div(&self, d: &Self) -> Option<Self> {
        let n = self.order().min(d.order());
        let inv0 = d.coeffs[0].inv()?;
        let sup: Vec<usize> = d
            .support()
            .into_iter()
            .filter(|&j| j > 0 && j <= n)
            .collect();
        let mut out: Vec<GaussRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for &j in &sup {
                if j > k {
                    break;
                }
                if !out[k - j].is_zero() {
                    acc -= &(&d.coeffs[j] * &out[k - j]);
                }
            }
            out.push(&acc * &inv0);
        }
        Some(GaussSeries { coeffs: out })
    }

    pub fn inverse(&self) -> Option<Self> {
        Self::one(self.order()).div(self)
    }

    /// self^k; negative k needs an invertible constant term.
    pub fn pow(&self, k: i64) -> Option<Self> {
        let mut acc = Self::one(self.order());
        for _ in 0..k.unsigned_abs() {
            acc = if k >= 0 {
                acc.mul(self)
            } else {
                acc.div(self)?
            };
        }
        Some(acc)
    }

    /// The substitution q → ζq, i.e. c_k ↦ ζ^k c_k.
    pub fn twist(&self, zeta: &GaussRational) -> Self {
        let mut p = GaussRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &p);
            p = &p * zeta;
        }
        GaussSeries { coeffs: out }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        GaussSeries { coeffs: c }
    }
}
