//! Closed-form generating functions for hom counts into Sp(n) and
//! SO(2n+1), and for the Z2-refined sector counts of the binary octahedral
//! group.

use std::fmt;
use std::str::FromStr;

use dualcount_core::GroupSpec;
use serde::Serialize;

use crate::expr::GenExpr;
use crate::parser::parse_genexpr;
use crate::SeriesError;

/// What a builtin generating function counts.
///
/// `Sp` and the `*Sp` refinements are Σ_n q^{2n}·(count for n); the others
/// are Σ_n q^{2n+1}·(count for n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GenTarget {
    /// N(Γ, Sp(n)).
    Sp,
    /// N(Γ, SO(2n+1)).
    SO,
    /// fixed + moved/2 in sector 0 on the Sp(n) side.
    Y00Sp,
    /// fixed + moved/2 in sector 0 on the Spin(2n+1) side.
    Y00Spin,
    /// fixed in sector 1 on the Sp(n) side.
    Y01Sp,
    /// moved/2 in sector 0 on the Spin(2n+1) side.
    Y01Spin,
    /// moved/2 in sector 1 on the Spin(2n+1) side.
    Y11Spin,
}

impl GenTarget {
    pub const ALL: [GenTarget; 7] = [
        GenTarget::Sp,
        GenTarget::SO,
        GenTarget::Y00Sp,
        GenTarget::Y00Spin,
        GenTarget::Y01Sp,
        GenTarget::Y01Spin,
        GenTarget::Y11Spin,
    ];

    pub fn is_sp_type(&self) -> bool {
        matches!(self, GenTarget::Sp | GenTarget::Y00Sp | GenTarget::Y01Sp)
    }

    /// The power of q carrying the count for rank parameter n.
    pub fn power(&self, n: u32) -> usize {
        if self.is_sp_type() {
            2 * n as usize
        } else {
            2 * n as usize + 1
        }
    }

    pub fn is_refined(&self) -> bool {
        !matches!(self, GenTarget::Sp | GenTarget::SO)
    }
}

impl fmt::Display for GenTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GenTarget::Sp => "sp",
            GenTarget::SO => "so",
            GenTarget::Y00Sp => "y00-sp",
            GenTarget::Y00Spin => "y00-spin",
            GenTarget::Y01Sp => "y01-sp",
            GenTarget::Y01Spin => "y01-spin",
            GenTarget::Y11Spin => "y11-spin",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for GenTarget {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, SeriesError> {
        GenTarget::ALL
            .iter()
            .copied()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                SeriesError::Unlisted(format!("unknown generating-function target `{}`", s))
            })
    }
}

/// The cases with a closed form.
pub fn builtin_cases(groups: &[GroupSpec]) -> Vec<(GroupSpec, GenTarget)> {
    let mut out = Vec::new();
    for &g in groups {
        out.push((g, GenTarget::Sp));
        out.push((g, GenTarget::SO));
        if g == GroupSpec::BinaryOctahedral {
            out.extend(
                GenTarget::ALL
                    .iter()
                    .filter(|t| t.is_refined())
                    .map(|&t| (g, t)),
            );
        }
    }
    out
}

pub fn builtin_genfun(g: GroupSpec, t: GenTarget) -> Result<GenExpr, SeriesError> {
    parse_genexpr(&genfun_text(g, t)?)
}

const Y_TAIL: &str = "((1-(-1)^{4a} q^4)^2 (1-(-1)^{8a} q^8))";
const Y_BRACKET: &str =
    "(1/((1-i^b (-1)^a q)(1-i^{-b} (-1)^{3a} q^3)) + 1/((1-(-1)^a q)(1-(-1)^{3a} q^3)) - 1)";

/// Source text of the generating function.
pub fn genfun_text(g: GroupSpec, t: GenTarget) -> Result<String, SeriesError> {
    use GenTarget::*;
    use GroupSpec::*;
    let unlisted = || SeriesError::Unlisted(format!("no closed form for ({}, {})", g, t));
    Ok(match (g, t) {
        (Cyclic(m), Sp) => format!("1/(1-q^2)^{}", m / 2 + 1),
        (Cyclic(m), SO) => format!("avg(a in 0..1) (-1)^a/((1-(-1)^a q)(1-(-1)^{{2a}} q^2)^{})", m / 2),
        (BinaryDihedral(m), Sp) if m % 2 == 0 => {
            let k = m / 2;
            format!("1/((1-q^2)^{} (1-q^4)^{})", k + 4, k - 1)
        }
        (BinaryDihedral(m), SO) if m % 2 == 0 => {
            let k = m / 2;
            format!(
                "avg(a in 0..1) avg(b0 in 0..1) avg(b1 in 0..1) (-1)^a/((1-(-1)^a q)(1-(-1)^{{a+b0}} q)(1-(-1)^{{a+b1}} q)\
                 (1-(-1)^{{a+b0+b1}} q)(1-(-1)^{{2a+b0}} q^2)^{} (1-(-1)^{{4a}} q^4)^{})",
                k - 1,
                k
            )
        }
        (BinaryDihedral(m), Sp) => {
            let k = m / 2;
            format!("1/((1-q^2)^{} (1-q^4)^{})", k + 3, k)
        }
        (BinaryDihedral(m), SO) => {
            let k = m / 2;
            format!(
                "avg(a in 0..1) avg(b in 0..1) (-1)^a/((1-(-1)^a q)(1-(-1)^{{a+b}} q)(1-(-1)^{{2a}} q^2)\
                 (1-(-1)^{{2a+b}} q^2)^{} (1-(-1)^{{4a}} q^4)^{})",
                k, k
            )
        }
        (BinaryTetrahedral, Sp) => "1/((1-q^2)^3 (1-q^4)(1-q^6))".into(),
        (BinaryTetrahedral, SO) => {
            "avg(a in 0..1) (-1)^a/((1-(-1)^a q)(1-(-1)^{2a} q^2)(1-(-1)^{3a} q^3)(1-(-1)^{4a} q^4)^2)".into()
        }
        (BinaryOctahedral, Sp) => "1/((1-q^2)^4 (1-q^4)^2 (1-q^6)^2)".into(),
        (BinaryOctahedral, SO) => "avg(a in 0..1) avg(b in 0..1) (-1)^a/((1-(-1)^a q)(1-(-1)^{a+b} q)(1-(-1)^{2a+b} q^2)\
             (1-(-1)^{3a} q^3)(1-(-1)^{3a+b} q^3)(1-(-1)^{4a} q^4)^2 (1-(-1)^{8a} q^8))"
            .into(),
        (BinaryIcosahedral, Sp) => "1/((1-q^2)^3 (1-q^4)(1-q^6)^3 (1-q^8)(1-q^10))".into(),
        (BinaryIcosahedral, SO) => "avg(a in 0..1) (-1)^a/((1-(-1)^a q)(1-(-1)^{3a} q^3)^2 (1-(-1)^{4a} q^4)^3\
             (1-(-1)^{5a} q^5)(1-(-1)^{8a} q^8)(1-(-1)^{12a} q^12))"
            .into(),
        (BinaryOctahedral, Y00Sp) => "1/2 (1/((1-q^2)^4 (1-q^4)^2 (1-q^6)^2) + 1/((1-q^4)^4 (1-q^12)))".into(),
        (BinaryOctahedral, Y00Spin) => "avg(a in 0..1) avg(b in 0..3) (-1)^a/((1-(-1)^a q)(1-(-1)^a i^b q)\
             (1-(-1)^{2a} i^b q^2)(1-(-1)^{3a} q^3)(1-(-1)^{3a} i^{-b} q^3)(1-(-1)^{4a} q^4)^2 (1-(-1)^{8a} q^8))"
            .into(),
        (BinaryOctahedral, Y01Sp) => "1/((1-q^2)^2 (1-q^4)(1-q^6)(1-q^8))".into(),
        (BinaryOctahedral, Y01Spin) => format!("avg(a in 0..1) avg(b in 0..3) (-1)^a {}/{}", Y_BRACKET, Y_TAIL),
        (BinaryOctahedral, Y11Spin) => format!("avg(a in 0..1) avg(b in 0..3) (-1)^a i^{{-2b}} {}/{}", Y_BRACKET, Y_TAIL),
        _ => return Err(unlisted()),
    })
}
