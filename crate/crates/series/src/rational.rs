//! Expressions as finite sums of c·q^s·Π(1 − u q^k)^e, and the exact
//! identity test obtained by clearing denominators.

use std::collections::BTreeMap;

use crate::expr::{Env, GenExpr};
use crate::gauss::GaussRational;
use crate::poly::PolyGauss;
use crate::SeriesError;

/// A binomial 1 − u·q^k with k ≥ 1.
pub type Binomial = (GaussRational, i64);

type Shape = (i64, BTreeMap<Binomial, i64>);

/// Σ coeff · q^s · Π B^e, keyed by (s, exponents of each binomial).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatSum {
    terms: BTreeMap<Shape, GaussRational>,
}

impl RatSum {
    pub fn constant(c: GaussRational) -> Self {
        let mut r = RatSum::default();
        r.insert((0, BTreeMap::new()), c);
        r
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, key: Shape, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(key.clone())
            .or_insert_with(GaussRational::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &RatSum) -> RatSum {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.insert(k.clone(), c.clone());
        }
        r.compress()
    }

    pub fn scale(&self, c: &GaussRational) -> RatSum {
        let mut r = RatSum::default();
        for (k, x) in &self.terms {
            r.insert(k.clone(), x * c);
        }
        r
    }

    pub fn neg(&self) -> RatSum {
        self.scale(&GaussRational::from_int(-1))
    }

    pub fn mul(&self, o: &RatSum) -> RatSum {
        let mut r = RatSum::default();
        for ((s1, f1), c1) in &self.terms {
            for ((s2, f2), c2) in &o.terms {
                let mut f = f1.clone();
                for (b, e) in f2 {
                    add_exp(&mut f, b.clone(), *e);
                }
                r.insert((s1 + s2, f), c1 * c2);
            }
        }
        r.compress()
    }

    /// A two-term sum with a common binomial part is rewritten as one term
    /// carrying the extra binomial.
    fn compress(self) -> RatSum {
        if self.terms.len() != 2 {
            return self;
        }
        let mut it = self.terms.iter();
        let ((s1, f1), c1) = it.next().unwrap();
        let ((s2, f2), c2) = it.next().unwrap();
        if f1 != f2 {
            return self;
        }
        // c1 q^s1 (1 + (c2/c1) q^(s2-s1)); key order gives s2 > s1, so every
        // stored binomial has k ≥ 1.
        let u = -(c2 * &c1.inv().expect("nonzero"));
        let mut out = RatSum::default();
        let mut f = f1.clone();
        add_exp(&mut f, (u, s2 - s1), 1);
        out.insert((*s1, f), c1.clone());
        out
    }

    fn invert(&self) -> Result<RatSum, SeriesError> {
        if self.terms.len() != 1 {
            return Err(SeriesError::NotProductForm(format!(
                "cannot invert a sum of {} terms",
                self.terms.len()
            )));
        }
        let ((s, f), c) = self.terms.iter().next().unwrap();
        let inv = c
            .inv()
            .ok_or_else(|| SeriesError::NotInvertible("0".into()))?;
        let f: BTreeMap<Binomial, i64> = f.iter().map(|(b, e)| (b.clone(), -e)).collect();
        let mut r = RatSum::default();
        r.insert((-s, f), inv);
        Ok(r)
    }

    fn pow(&self, k: i64) -> Result<RatSum, SeriesError> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc = RatSum::constant(GaussRational::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn from_expr(e: &GenExpr) -> Result<RatSum, SeriesError> {
        convert(e, &mut Env::default())
    }
}

fn add_exp(f: &mut BTreeMap<Binomial, i64>, b: Binomial, e: i64) {
    let x = f.entry(b.clone()).or_insert(0);
    *x += e;
    if *x == 0 {
        f.remove(&b);
    }
}

fn convert(e: &GenExpr, env: &mut Env) -> Result<RatSum, SeriesError> {
    use GenExpr::*;
    let one_term = |s: i64, c: GaussRational| {
        let mut r = RatSum::default();
        r.insert((s, BTreeMap::new()), c);
        r
    };
    Ok(match e {
        Int(k) => one_term(0, GaussRational::from_int(*k as i64)),
        Q => one_term(1, GaussRational::one()),
        I => one_term(0, GaussRational::i()),
        Neg(a) => convert(a, env)?.neg(),
        Add(a, b) => convert(a, env)?.add(&convert(b, env)?),
        Sub(a, b) => convert(a, env)?.add(&convert(b, env)?.neg()),
        Mul(a, b) => convert(a, env)?.mul(&convert(b, env)?),
        Div(a, b) => convert(a, env)?.mul(&convert(b, env)?.invert()?),
        Pow(b, x) => {
            let k = x.eval(env)?;
            convert(b, env)?.pow(k)?
        }
        Avg { var, lo, hi, body } => {
            let mut acc = RatSum::default();
            for v in *lo..=*hi {
                env.push(var, v);
                let r = convert(body, env);
                env.pop();
                acc = acc.add(&r?);
            }
            acc.scale(&GaussRational::from_ratio(1, hi - lo + 1))
        }
    })
}

impl RatSum {
    /// Multiplies every term by q^−min(s) · Π B^{d_B}, with d_B the largest
    /// negative exponent of B, and sums the resulting polynomials.
    /// Returns the sum and the largest degree among the cleared terms.
    pub fn clear_denominators(&self) -> (PolyGauss, usize) {
        let mut den: BTreeMap<&Binomial, i64> = BTreeMap::new();
        let mut smin = 0i64;
        for (i, ((s, f), _)) in self.terms.iter().enumerate() {
            smin = if i == 0 { *s } else { smin.min(*s) };
            for (b, e) in f {
                let d = den.entry(b).or_insert(0);
                *d = (*d).max(-e);
            }
        }
        let mut total = PolyGauss::zero();
        let mut degree = 0;
        for ((s, f), c) in &self.terms {
            let mut p = PolyGauss::monomial(c.clone(), (s - smin) as usize);
            for (b, d) in &den {
                let e = d + f.get(*b).copied().unwrap_or(0);
                for _ in 0..e {
                    p.mul_binomial(&b.0, b.1 as usize);
                }
            }
            degree = degree.max(p.degree().unwrap_or(0));
            total.add_assign(&p);
        }
        (total, degree)
    }

    /// Degree the cleared polynomials would reach, without computing them.
    pub fn cleared_degree_bound(&self) -> usize {
        let mut den: BTreeMap<&Binomial, i64> = BTreeMap::new();
        let mut smin = i64::MAX;
        for ((s, f), _) in &self.terms {
            smin = smin.min(*s);
            for (b, e) in f {
                let d = den.entry(b).or_insert(0);
                *d = (*d).max(-e);
            }
        }
        if self.terms.is_empty() {
            return 0;
        }
        let mut best = 0i64;
        for ((s, f), _) in &self.terms {
            let deg: i64 = den
                .iter()
                .map(|(b, d)| b.1 * (d + f.get(*b).copied().unwrap_or(0)))
                .sum();
            best = best.max(deg + s - smin);
        }
        best as usize
    }
}
