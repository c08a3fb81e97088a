//! Total Stiefel–Whitney classes of real Ô-representations, valued in
//! H*(Ô; Z2) up to degree 2, i.e. Z2[y]/(y³).

use serde::Serialize;

use super::{GroupData, GroupError, GroupSpec, Reality};

/// 1 + w1·y + w2·y².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SwClass {
    pub w1: bool,
    pub w2: bool,
}

impl SwClass {
    pub const ONE: SwClass = SwClass {
        w1: false,
        w2: false,
    };

    pub fn new(w1: bool, w2: bool) -> Self {
        SwClass { w1, w2 }
    }

    /// Product in Z2[y]/(y³).
    pub fn mul(self, o: SwClass) -> SwClass {
        SwClass {
            w1: self.w1 ^ o.w1,
            w2: self.w2 ^ o.w2 ^ (self.w1 & o.w1),
        }
    }

    pub fn pow(self, k: u32) -> SwClass {
        (0..k).fold(SwClass::ONE, |acc, _| acc.mul(self))
    }

    pub fn inverse(self) -> SwClass {
        // (1 + a y + b y²)^{-1} = 1 + a y + (a + b) y² over Z2.
        SwClass {
            w1: self.w1,
            w2: self.w1 ^ self.w2,
        }
    }
}

/// Total class of an irreducible strictly-real Ô-representation, or of the
/// underlying real representation of a pseudoreal one.
pub fn sw_class(g: &GroupData, irrep: &str) -> Result<SwClass, GroupError> {
    if g.spec != GroupSpec::BinaryOctahedral {
        return Err(GroupError::Unsupported(
            "Stiefel-Whitney classes are provided for Ohat only".into(),
        ));
    }
    let i = g.index_of(irrep)?;
    if g.irreps[i].reality == Reality::Pseudoreal {
        // Underlying real of a quaternionic rep is a complex rep's realification
        // with c1 = 0, so w = 1 in degrees ≤ 2.
        return Ok(SwClass::ONE);
    }
    Ok(match irrep {
        "1" | "3" => SwClass::ONE,
        "1'" | "2''" => SwClass::new(true, false),
        "3'" => SwClass::new(true, true),
        _ => unreachable!("real Ohat irreps are 1, 1', 3, 3', 2''"),
    })
}

/// w2 of Σ n_i ρ_i, computed as a genuine product of total classes.
/// `mult` is indexed by irrep and counts strictly-real summands; pseudoreal
/// entries count quaternionic copies (each contributes 1).
pub fn w2_by_product(g: &GroupData, mult: &[u32]) -> Result<bool, GroupError> {
    let mut total = SwClass::ONE;
    for (i, &n) in mult.iter().enumerate() {
        if n > 0 {
            total = total.mul(sw_class(g, &g.irreps[i].name)?.pow(n));
        }
    }
    Ok(total.w2)
}

/// w2 by the closed-form congruence: with u = n_{1'} − n_{3'} + n_{2''},
/// w1 = 0 forces u even and then w2 = (u/2) mod 2.
pub fn w2_by_congruence(g: &GroupData, mult: &[u32]) -> Result<bool, GroupError> {
    let at = |nm: &str| -> Result<i64, GroupError> { Ok(mult[g.index_of(nm)?] as i64) };
    let u = at("1'")? - at("3'")? + at("2''")?;
    if u.rem_euclid(2) != 0 {
        return Err(GroupError::Unsupported(
            "representation is not orientable".into(),
        ));
    }
    Ok(u.rem_euclid(4) == 2)
}

/// Sector of an SO representation in H²(Ô; Z2), by both methods; errors if
/// they disagree.
pub fn sector_of_so_rep(g: &GroupData, mult: &[u32]) -> Result<u32, GroupError> {
    let a = w2_by_product(g, mult)?;
    let b = w2_by_congruence(g, mult)?;
    if a != b {
        return Err(GroupError::Unsupported(format!(
            "w2 methods disagree on {:?}",
            mult
        )));
    }
    Ok(a as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(g: &GroupData, parts: &[(&str, u32)]) -> Vec<u32> {
        let mut v = vec![0; g.len()];
        for (nm, k) in parts {
            v[g.index_of(nm).unwrap()] = *k;
        }
        v
    }

    #[test]
    fn relation_fixes_w_of_2pp() {
        // 3 ⊕ 3' ⊕ 2'' has the same class as a rep pulled back from O → S3 pieces
        // whose total class is trivial; equivalently w(2'') = (w(3)w(3'))^{-1}.
        let g = GroupData::new(GroupSpec::BinaryOctahedral);
        let w3 = sw_class(&g, "3").unwrap();
        let w3p = sw_class(&g, "3'").unwrap();
        assert_eq!(sw_class(&g, "2''").unwrap(), w3.mul(w3p).inverse());
        assert_eq!(
            sw_class(&g, "1'").unwrap().mul(sw_class(&g, "1'").unwrap()),
            SwClass::new(false, true)
        );
    }

    #[test]
    fn worked_examples() {
        let g = GroupData::new(GroupSpec::BinaryOctahedral);
        let a = mv(&g, &[("1'", 2), ("1", 1)]);
        assert!(w2_by_product(&g, &a).unwrap());
        assert!(w2_by_congruence(&g, &a).unwrap());
        let b = mv(&g, &[("3'", 1), ("1'", 1), ("1", 1)]);
        assert!(!w2_by_product(&g, &b).unwrap());
        assert_eq!(sector_of_so_rep(&g, &b).unwrap(), 0);
    }

    #[test]
    fn methods_agree_on_small_orientable_reps() {
        let g = GroupData::new(GroupSpec::BinaryOctahedral);
        let i1p = g.index_of("1'").unwrap();
        let i3p = g.index_of("3'").unwrap();
        let i2pp = g.index_of("2''").unwrap();
        let i3 = g.index_of("3").unwrap();
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    for d in 0..3 {
                        if (a + b + c) % 2 == 1 {
                            continue;
                        }
                        let mut v = vec![0; g.len()];
                        v[i1p] = a;
                        v[i3p] = b;
                        v[i2pp] = c;
                        v[i3] = d;
                        assert_eq!(
                            w2_by_product(&g, &v).unwrap(),
                            w2_by_congruence(&g, &v).unwrap(),
                            "{:?}",
                            v
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn other_groups_rejected() {
        let g = GroupData::new(GroupSpec::BinaryTetrahedral);
        assert!(sw_class(&g, "1").is_err());
    }
}
