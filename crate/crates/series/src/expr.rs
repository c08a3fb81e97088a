//! Generating-function expressions and their expansion.

use std::collections::BTreeMap;
use std::fmt;

use crate::gauss::GaussRational;
use crate::series::GaussSeries;
use crate::SeriesError;

/// An integer affine form c + Σ a_v·v in averaging variables, used as an
/// exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Lin {
    pub constant: i64,
    pub terms: BTreeMap<String, i64>,
}

impl Lin {
    pub fn constant(c: i64) -> Self {
        Lin {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(v: &str) -> Self {
        Lin::constant(0).plus_var(v, 1)
    }

    pub fn plus_var(mut self, v: &str, a: i64) -> Self {
        let e = self.terms.entry(v.to_string()).or_insert(0);
        *e += a;
        if *e == 0 {
            self.terms.remove(v);
        }
        self
    }

    pub fn plus(mut self, o: &Lin) -> Self {
        self.constant += o.constant;
        for (v, a) in &o.terms {
            self = self.plus_var(v, *a);
        }
        self
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Lin::constant(self.constant * k);
        for (v, a) in &self.terms {
            out = out.plus_var(v, a * k);
        }
        out
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.constant)
    }

    pub fn eval(&self, env: &Env) -> Result<i64, SeriesError> {
        let mut s = self.constant;
        for (v, a) in &self.terms {
            s += a * env.get(v).ok_or_else(|| SeriesError::Unbound(v.clone()))?;
        }
        Ok(s)
    }

    /// Text inside braces, e.g. `3a+b-2`.
    fn body(&self) -> String {
        let mut s = String::new();
        for (v, &a) in &self.terms {
            let sign = if a < 0 {
                "-"
            } else if s.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = if a.abs() == 1 {
                String::new()
            } else {
                a.abs().to_string()
            };
            s.push_str(&format!("{}{}{}", sign, mag, v));
        }
        if self.constant != 0 || s.is_empty() {
            let sign = if self.constant < 0 {
                "-"
            } else if s.is_empty() {
                ""
            } else {
                "+"
            };
            s.push_str(&format!("{}{}", sign, self.constant.abs()));
        }
        s
    }
}

impl fmt::Display for Lin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return write!(f, "{}", c);
        }
        if self.constant == 0 && self.terms.len() == 1 {
            let (v, a) = self.terms.iter().next().unwrap();
            if *a == 1 {
                return write!(f, "{}", v);
            }
            if *a == -1 {
                return write!(f, "-{}", v);
            }
        }
        write!(f, "{{{}}}", self.body())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenExpr {
    Int(u64),
    /// The formal variable q.
    Q,
    /// The imaginary unit.
    I,
    Neg(Box<GenExpr>),
    Add(Box<GenExpr>, Box<GenExpr>),
    Sub(Box<GenExpr>, Box<GenExpr>),
    Mul(Box<GenExpr>, Box<GenExpr>),
    Div(Box<GenExpr>, Box<GenExpr>),
    Pow(Box<GenExpr>, Lin),
    /// (1/(hi−lo+1)) Σ_{var=lo..hi} body.
    Avg {
        var: String,
        lo: i64,
        hi: i64,
        body: Box<GenExpr>,
    },
}

/// Bindings of averaging variables.
#[derive(Clone, Debug, Default)]
pub struct Env {
    stack: Vec<(String, i64)>,
}

impl Env {
    pub fn get(&self, v: &str) -> Option<i64> {
        self.stack
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .map(|(_, x)| *x)
    }

    pub fn push(&mut self, v: &str, x: i64) {
        self.stack.push((v.to_string(), x));
    }

    pub fn pop(&mut self) {
        self.stack.pop();
    }
}

impl GenExpr {
    pub fn int(n: u64) -> Self {
        GenExpr::Int(n)
    }

    pub fn q_pow(k: i64) -> Self {
        GenExpr::Pow(Box::new(GenExpr::Q), Lin::constant(k))
    }

    pub fn mul(a: GenExpr, b: GenExpr) -> Self {
        GenExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: GenExpr, b: GenExpr) -> Self {
        GenExpr::Div(Box::new(a), Box::new(b))
    }

    pub fn add(a: GenExpr, b: GenExpr) -> Self {
        GenExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: GenExpr, b: GenExpr) -> Self {
        GenExpr::Sub(Box::new(a), Box::new(b))
    }

    pub fn pow(a: GenExpr, e: Lin) -> Self {
        GenExpr::Pow(Box::new(a), e)
    }

    /// Expansion through q^order.
    pub fn expand(&self, order: usize) -> Result<GaussSeries, SeriesError> {
        self.eval(&mut Env::default(), order)
    }

    /// Coefficient of q^k.
    pub fn coeff(&self, k: usize) -> Result<GaussRational, SeriesError> {
        let max = crate::max_order();
        if k > max {
            return Err(SeriesError::OrderTooLarge { k, max });
        }
        Ok(self.expand(k)?.coeff(k).clone())
    }

    pub fn eval(&self, env: &mut Env, n: usize) -> Result<GaussSeries, SeriesError> {
        use GenExpr::*;
        Ok(match self {
            Int(k) => GaussSeries::constant(GaussRational::from_int(*k as i64), n),
            Q => GaussSeries::monomial(GaussRational::one(), 1, n),
            I => GaussSeries::constant(GaussRational::i(), n),
            Neg(a) => a.eval(env, n)?.neg(),
            Add(a, b) => a.eval(env, n)?.add(&b.eval(env, n)?),
            Sub(a, b) => a.eval(env, n)?.sub(&b.eval(env, n)?),
            Mul(a, b) => {
                let x = a.eval(env, n)?;
                if x.is_zero() {
                    return Ok(x);
                }
                x.mul(&b.eval(env, n)?)
            }
            Div(a, b) => {
                let x = a.eval(env, n)?;
                b.divide(x, env, n)?
            }
            Pow(b, e) => {
                let k = e.eval(env)?;
                if **b == Q {
                    if k < 0 {
                        return Err(SeriesError::NotInvertible(self.to_string()));
                    }
                    return Ok(GaussSeries::monomial(GaussRational::one(), k as usize, n));
                }
                if k >= 0 {
                    b.eval(env, n)?.pow(k).expect("nonnegative power")
                } else {
                    let mut acc = GaussSeries::one(n);
                    for _ in 0..-k {
                        acc = b.divide(acc, env, n)?;
                    }
                    acc
                }
            }
            Avg { var, lo, hi, body } => {
                let mut acc = GaussSeries::zero(n);
                for x in *lo..=*hi {
                    env.push(var, x);
                    let r = body.eval(env, n);
                    env.pop();
                    acc = acc.add(&r?);
                }
                acc.scale(&GaussRational::from_ratio(1, hi - lo + 1))
            }
        })
    }

    /// num / self, dividing factor by factor when self is a product.
    fn divide(
        &self,
        num: GaussSeries,
        env: &mut Env,
        n: usize,
    ) -> Result<GaussSeries, SeriesError> {
        use GenExpr::*;
        match self {
            Mul(a, b) => {
                let x = a.divide(num, env, n)?;
                b.divide(x, env, n)
            }
            Neg(a) => Ok(a.divide(num, env, n)?.neg()),
            Pow(b, e) if **b != Q => {
                let k = e.eval(env)?;
                if k >= 0 {
                    let d = b.eval(env, n)?;
                    let mut acc = num;
                    for _ in 0..k {
                        acc = acc
                            .div(&d)
                            .ok_or_else(|| SeriesError::NotInvertible(b.to_string()))?;
                    }
                    Ok(acc)
                } else {
                    Ok(num.mul(&b.eval(env, n)?.pow(-k).expect("nonnegative power")))
                }
            }
            _ => {
                let d = self.eval(env, n)?;
                num.div(&d)
                    .ok_or_else(|| SeriesError::NotInvertible(self.to_string()))
            }
        }
    }

    /// The substitution q → ζ·q for ζ = (−1)^sign · i^ipow.
    pub fn substitute_q(&self, sign: i64, ipow: i64) -> GenExpr {
        use GenExpr::*;
        let unit = || {
            let s = GenExpr::pow(Neg(Box::new(Int(1))), Lin::constant(sign));
            let t = GenExpr::pow(I, Lin::constant(ipow));
            GenExpr::mul(GenExpr::mul(s, t), Q)
        };
        let rec = |e: &GenExpr| Box::new(e.substitute_q(sign, ipow));
        match self {
            Q => unit(),
            Int(_) | I => self.clone(),
            Neg(a) => Neg(rec(a)),
            Add(a, b) => Add(rec(a), rec(b)),
            Sub(a, b) => Sub(rec(a), rec(b)),
            Mul(a, b) => Mul(rec(a), rec(b)),
            Div(a, b) => Div(rec(a), rec(b)),
            Pow(b, e) => Pow(if **b == Q { Box::new(unit()) } else { rec(b) }, e.clone()),
            Avg { var, lo, hi, body } => Avg {
                var: var.clone(),
                lo: *lo,
                hi: *hi,
                body: rec(body),
            },
        }
    }

    fn prec(&self) -> u8 {
        use GenExpr::*;
        match self {
            Avg { .. } => 0,
            Add(..) | Sub(..) => 1,
            Mul(..) | Div(..) => 2,
            Neg(_) => 3,
            Pow(..) => 4,
            Int(_) | Q | I => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min || matches!(self, GenExpr::Avg { .. }) {
            write!(f, "({})", self)
        } else {
            write!(f, "{}", self)
        }
    }
}

/// Canonical text: explicit `*`, minimal parentheses, and re-parses to the
/// same tree.
impl fmt::Display for GenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GenExpr::*;
        match self {
            Int(k) => write!(f, "{}", k),
            Q => write!(f, "q"),
            I => write!(f, "i"),
            Neg(a) => {
                write!(f, "-")?;
                a.fmt_child(f, 4)
            }
            Add(a, b) | Sub(a, b) => {
                a.fmt_child(f, 1)?;
                write!(f, " {} ", if matches!(self, Add(..)) { "+" } else { "-" })?;
                b.fmt_child(f, 2)
            }
            Mul(a, b) | Div(a, b) => {
                a.fmt_child(f, 2)?;
                write!(f, " {} ", if matches!(self, Mul(..)) { "*" } else { "/" })?;
                b.fmt_child(f, 3)
            }
            Pow(b, e) => {
                b.fmt_child(f, 5)?;
                write!(f, "^{}", e)
            }
            Avg { var, lo, hi, body } => {
                write!(f, "avg({} in {}..{}) ", var, lo, hi)?;
                if body.prec() < 2 {
                    write!(f, "({})", body)
                } else {
                    write!(f, "{}", body)
                }
            }
        }
    }
}
