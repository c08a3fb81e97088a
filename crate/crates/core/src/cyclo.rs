//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)-1}, always
//! reduced modulo the cyclotomic polynomial Φ_N, so structural equality is
//! field equality. Values of different conductors are lifted to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = exact_div(&p, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    assert!(lead == 1 || lead == -1);
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn] * lead;
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u32
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo {
            order: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(v: BigRational) -> Self {
        Cyclo {
            order: 1,
            coeffs: vec![v],
        }
    }

    /// ζ_n^k with ζ_n = exp(2πi/n).
    pub fn root(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); n as usize];
        v[e] = BigRational::one();
        Self::reduce(n, v)
    }

    /// Builds Σ c_k ζ_n^k from integer coefficients.
    pub fn from_powers(n: u32, terms: &[(i64, i64)]) -> Self {
        let mut v = vec![BigRational::zero(); n as usize];
        for &(k, c) in terms {
            let e = k.rem_euclid(n as i64) as usize;
            v[e] += BigRational::from_integer(BigInt::from(c));
        }
        Self::reduce(n, v)
    }

    /// Reduces an exponent-indexed vector (length ≤ 2n is fine) modulo Φ_n.
    fn reduce(n: u32, mut v: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for i in (deg..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = v[i].clone();
            for (j, &p) in phi.iter().enumerate() {
                if p != 0 {
                    v[i - deg + j] -= &c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        v.truncate(deg.max(1));
        let mut out = Cyclo {
            order: n,
            coeffs: v,
        };
        out.shrink();
        out
    }

    /// Re-expresses a rational element with conductor 1.
    fn shrink(&mut self) {
        if self.order > 1 && self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            let c = self.coeffs[0].clone();
            self.order = 1;
            self.coeffs = vec![c];
        }
    }

    fn lift(&self, m: u32) -> Self {
        if self.order == m {
            return self.clone();
        }
        debug_assert_eq!(m % self.order, 0);
        let step = (m / self.order) as usize;
        let mut v = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(k * step) % m as usize] += c;
        }
        Self::reduce(m, v)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self, u32) {
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m), m)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn conductor_bound(&self) -> u32 {
        self.order
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut v = vec![BigRational::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(n as usize - k) % n as usize] += c;
        }
        Self::reduce(n, v)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        };
        out.shrink();
        out
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            z += Complex64::new(x * t.cos(), x * t.sin());
        }
        z
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclo::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Cyclo::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let (a, b, m) = Cyclo::common(self, rhs);
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut v = vec![BigRational::zero(); len];
        for (i, c) in a.coeffs.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            v[i] += c;
        }
        Cyclo::reduce(m, v)
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b, m) = Cyclo::common(self, rhs);
        let mut v = vec![BigRational::zero(); m as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[(i + j) % m as usize] += x * y;
                }
            }
        }
        Cyclo::reduce(m, v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let root = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, k),
            };
            write!(f, "{}{}{}", sign, coeff, root)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5).len(), 5);
    }

    #[test]
    fn roots_sum_to_mobius() {
        for n in 1..=12u32 {
            let mut s = Cyclo::zero();
            for k in 0..n {
                if (k as u32).gcd(&n) == 1 {
                    s = &s + &Cyclo::root(n, k as i64);
                }
            }
            let mu = match n {
                1 => 1,
                2 | 3 | 5 | 7 | 11 => -1,
                6 | 10 => 1,
                _ => 0,
            };
            assert_eq!(s, Cyclo::from_int(mu), "n={}", n);
        }
    }

    #[test]
    fn sqrt2_and_golden_ratio() {
        let s2 = Cyclo::from_powers(8, &[(1, 1), (7, 1)]);
        assert_eq!(&s2 * &s2, Cyclo::from_int(2));
        let phi = Cyclo::from_powers(5, &[(0, 1), (1, 1), (4, 1)]);
        assert_eq!(&phi * &phi, &phi + &Cyclo::one());
    }

    #[test]
    fn mixed_conductors() {
        let i = Cyclo::root(4, 1);
        let w = Cyclo::root(3, 1);
        let p = &i * &w;
        assert_eq!(p.pow(12), Cyclo::one());
        assert_eq!(p.conj(), &i.conj() * &w.conj());
        assert!(
            (p.to_complex() - Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 7.0 / 12.0))
                .norm()
                < 1e-12
        );
    }
}
