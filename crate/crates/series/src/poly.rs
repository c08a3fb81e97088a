//! Polynomials in q with Gaussian-rational coefficients.

use crate::gauss::GaussRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyGauss {
    coeffs: Vec<GaussRational>,
}

impl PolyGauss {
    pub fn zero() -> Self {
        PolyGauss { coeffs: vec![] }
    }

    pub fn monomial(c: GaussRational, k: usize) -> Self {
        let mut coeffs = vec![GaussRational::zero(); k + 1];
        coeffs[k] = c;
        PolyGauss { coeffs }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<GaussRational>) -> Self {
        PolyGauss { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = GaussRational::zero();
        let c = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
            .collect();
        PolyGauss::from_coeffs(c)
    }

    pub fn add_assign(&mut self, o: &Self) {
        if self.coeffs.len() < o.coeffs.len() {
            self.coeffs.resize(o.coeffs.len(), GaussRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
        let t = std::mem::replace(self, PolyGauss::zero()).trimmed();
        *self = t;
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyGauss::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        PolyGauss::from_coeffs(out)
    }

    /// self · (1 − u q^k), in place.
    pub fn mul_binomial(&mut self, u: &GaussRational, k: usize) {
        if self.is_zero() {
            return;
        }
        let n = self.coeffs.len();
        self.coeffs.resize(n + k, GaussRational::zero());
        for d in (k..n + k).rev() {
            if !self.coeffs[d - k].is_zero() {
                let t = u * &self.coeffs[d - k];
                self.coeffs[d] -= &t;
            }
        }
        let t = std::mem::replace(self, PolyGauss::zero()).trimmed();
        *self = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> PolyGauss {
        PolyGauss::from_coeffs(v.iter().map(|&x| GaussRational::from_int(x)).collect())
    }

    #[test]
    fn binomial_products() {
        let mut a = p(&[1]);
        a.mul_binomial(&GaussRational::from_int(1), 1);
        a.mul_binomial(&GaussRational::from_int(-1), 1);
        assert_eq!(a, p(&[1, 0, -1]));
        assert_eq!(a.mul(&p(&[1, 0, 1])), p(&[1, 0, 0, 0, -1]));
        assert_eq!(a.degree(), Some(2));
        assert!(a.add(&p(&[-1, 0, 1])).is_zero());
    }
}
