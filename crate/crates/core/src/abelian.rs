//! Small finite abelian groups given as products of cyclic factors.

use num_integer::Integer;
use serde::Serialize;

use crate::cyclo::Cyclo;

/// Element coordinates, one residue per cyclic factor.
pub type Elem = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAbelian {
    /// Orders of the cyclic factors (all > 1). Empty means trivial.
    pub factors: Vec<u32>,
}

impl FiniteAbelian {
    pub fn new(factors: Vec<u32>) -> Self {
        FiniteAbelian {
            factors: factors.into_iter().filter(|&f| f > 1).collect(),
        }
    }

    pub fn trivial() -> Self {
        FiniteAbelian { factors: vec![] }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&f| f as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1, |a, &f| a.lcm(&f))
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.factors.len()]
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Elem {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), f)| (x + y) % f)
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> Elem {
        a.iter()
            .zip(&self.factors)
            .map(|(x, f)| (f - x) % f)
            .collect()
    }

    pub fn scale(&self, a: &[u32], k: i64) -> Elem {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &f)| ((x as i64 * k).rem_euclid(f as i64)) as u32)
            .collect()
    }

    /// All elements in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<Elem> {
        let mut out = vec![vec![]];
        for &f in &self.factors {
            let mut next = Vec::with_capacity(out.len() * f as usize);
            for e in &out {
                for x in 0..f {
                    let mut v = e.clone();
                    v.push(x);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    pub fn elem_order(&self, a: &[u32]) -> u32 {
        a.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&x, &f)| acc.lcm(&(f / x.gcd(&f))))
    }

    /// Ker(k×), sorted.
    pub fn kernel_of_mul(&self, k: i64) -> Vec<Elem> {
        self.elements()
            .into_iter()
            .filter(|a| self.is_zero(&self.scale(a, k)))
            .collect()
    }

    /// Image kA.
    pub fn image_of_mul(&self, k: i64) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.elements().iter().map(|a| self.scale(a, k)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// One representative per class of A/kA: the lexicographically smallest
    /// element of the class. For a cyclic group this is the smallest power of
    /// the generator.
    pub fn quotient_reps(&self, k: i64) -> Vec<Elem> {
        let img = self.image_of_mul(k);
        let mut reps: Vec<Elem> = Vec::new();
        for a in self.elements() {
            let rep = self.class_rep(&a, &img);
            if rep == a {
                reps.push(a);
            }
        }
        reps
    }

    pub fn class_rep(&self, a: &[u32], sub: &[Elem]) -> Elem {
        sub.iter()
            .map(|s| self.add(a, s))
            .min()
            .expect("subgroup contains zero")
    }

    /// The pairing ⟨b, a⟩ = Π ζ_{f_j}^{b_j a_j}, identifying A with its dual
    /// through the coordinates.
    pub fn pairing(&self, b: &[u32], a: &[u32]) -> Cyclo {
        let e = self.exponent();
        let mut k: u64 = 0;
        for ((x, y), f) in b.iter().zip(a).zip(&self.factors) {
            k += (*x as u64 * *y as u64 % *f as u64) * (e / f) as u64;
        }
        Cyclo::root(e, (k % e as u64) as i64)
    }

    /// Invariant factors of a subgroup or quotient presented as a list of
    /// elements forming a subgroup of `self`.
    pub fn structure_of(&self, elems: &[Elem]) -> FiniteAbelian {
        // Count elements of each order to identify the isomorphism type.
        let n = elems.len() as u32;
        let orders: Vec<u32> = elems.iter().map(|a| self.elem_order(a)).collect();
        structure_from_orders(n, &orders)
    }

    /// All group isomorphisms from the subgroup generated by `src` (given as
    /// element list) to `dst`, as maps element ↦ element, in deterministic
    /// order.
    pub fn isomorphisms(
        &self,
        src: &[Elem],
        other: &FiniteAbelian,
        dst: &[Elem],
    ) -> Vec<Vec<(Elem, Elem)>> {
        if src.len() != dst.len() {
            return vec![];
        }
        let gens = generators(self, src);
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        'outer: loop {
            let imgs: Vec<&Elem> = choice.iter().map(|&i| &dst[i]).collect();
            if let Some(map) = extend_hom(self, src, &gens, other, &imgs) {
                let mut targets: Vec<&Elem> = map.iter().map(|(_, b)| b).collect();
                targets.sort();
                targets.dedup();
                if targets.len() == src.len() {
                    out.push(map);
                }
            }
            for slot in (0..choice.len()).rev() {
                choice[slot] += 1;
                if choice[slot] < dst.len() {
                    continue 'outer;
                }
                choice[slot] = 0;
            }
            break;
        }
        if gens.is_empty() && out.is_empty() {
            out.push(src.iter().map(|a| (a.clone(), other.zero())).collect());
        }
        out
    }
}

fn structure_from_orders(n: u32, orders: &[u32]) -> FiniteAbelian {
    // For each prime p, the p-part is determined by the counts of elements
    // with order dividing p^k.
    let mut factors: Vec<u32> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    let mut prime_parts: Vec<Vec<u32>> = Vec::new();
    while rest > 1 {
        if rest % p == 0 {
            let mut pk = 1;
            while rest % p == 0 {
                rest /= p;
                pk *= p;
            }
            // c_k = #{x in the p-part : x^{p^k} = 1}
            let mut levels = Vec::new();
            let mut q = 1;
            loop {
                let c = orders
                    .iter()
                    .filter(|&&o| q % p_part(o, p) == 0 && o == p_part(o, p))
                    .count() as u32;
                levels.push(c);
                if c == pk {
                    break;
                }
                q *= p;
            }
            // Number of cyclic factors of order ≥ p^k is log_p(c_k / c_{k-1}).
            let mut ge = Vec::new();
            for k in 1..levels.len() {
                let mut r = levels[k] / levels[k - 1];
                let mut e = 0;
                while r > 1 {
                    r /= p;
                    e += 1;
                }
                ge.push(e);
            }
            let mut parts = Vec::new();
            for k in 0..ge.len() {
                let next = if k + 1 < ge.len() { ge[k + 1] } else { 0 };
                for _ in 0..(ge[k] - next) {
                    parts.push(p.pow(k as u32 + 1));
                }
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            prime_parts.push(parts);
        }
        p += 1;
    }
    // Combine prime parts into invariant factors d_1 | d_2 | ...
    let width = prime_parts.iter().map(|v| v.len()).max().unwrap_or(0);
    for i in 0..width {
        let mut d = 1;
        for parts in &prime_parts {
            if i < parts.len() {
                d *= parts[i];
            }
        }
        factors.push(d);
    }
    factors.reverse();
    FiniteAbelian::new(factors)
}

fn p_part(mut o: u32, p: u32) -> u32 {
    let mut r = 1;
    while o % p == 0 {
        o /= p;
        r *= p;
    }
    r
}

/// A small generating set of the subgroup given by its element list.
fn generators(g: &FiniteAbelian, elems: &[Elem]) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut span: Vec<Elem> = vec![g.zero()];
    let mut sorted: Vec<&Elem> = elems.iter().collect();
    sorted.sort_by_key(|a| std::cmp::Reverse(g.elem_order(a)));
    for a in sorted {
        if span.contains(a) {
            continue;
        }
        gens.push(a.clone());
        let mut next = span.clone();
        let ord = g.elem_order(a);
        for s in &span {
            for k in 1..ord {
                let v = g.add(s, &g.scale(a, k as i64));
                if !next.contains(&v) {
                    next.push(v);
                }
            }
        }
        span = next;
        if span.len() == elems.len() {
            break;
        }
    }
    gens
}

/// Extends generator images to a homomorphism on the subgroup, if consistent.
fn extend_hom(
    g: &FiniteAbelian,
    elems: &[Elem],
    gens: &[Elem],
    h: &FiniteAbelian,
    imgs: &[&Elem],
) -> Option<Vec<(Elem, Elem)>> {
    let mut map: Vec<(Elem, Elem)> = vec![(g.zero(), h.zero())];
    for (a, b) in gens.iter().zip(imgs) {
        let ord = g.elem_order(a);
        if !h.is_zero(&h.scale(b, ord as i64)) {
            return None;
        }
        let mut next = map.clone();
        for (x, y) in &map {
            for k in 1..ord {
                let xv = g.add(x, &g.scale(a, k as i64));
                let yv = h.add(y, &h.scale(b, k as i64));
                match next.iter().find(|(p, _)| *p == xv) {
                    Some((_, q)) if *q != yv => return None,
                    Some(_) => {}
                    None => next.push((xv, yv)),
                }
            }
        }
        map = next;
    }
    if map.len() != elems.len() {
        return None;
    }
    map.sort();
    Some(map)
}
