//! Twisted irreps of Ô: projective representations ρ̃ with ρ̃(a) = iρ(a),
//! ρ̃(b) = ρ(b), for a of order 8 and b of order 6 generating Ô.

use serde::Serialize;

use super::{GroupData, GroupError, GroupSpec, Reality};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedIrrep {
    pub name: String,
    pub dim: u32,
    pub reality: Reality,
    /// Index of the conjugate twisted irrep.
    pub partner: usize,
    /// Index of the image under the generator x of H¹(Ô; Z2).
    pub x_image: usize,
    /// Untwisted irrep this one is built from.
    pub base: usize,
}

pub fn twisted_irreps(g: &GroupData) -> Result<Vec<TwistedIrrep>, GroupError> {
    if g.spec != GroupSpec::BinaryOctahedral {
        return Err(GroupError::Unsupported(
            "twisted irreps are provided for Ohat only".into(),
        ));
    }
    let sign = g.twist_permutation(&[1]);
    let mut out = Vec::with_capacity(g.len());
    for r in &g.irreps {
        // conj(ρ̃) ≅ (ρ̄ ⊗ 1')~ because conj(i) = -i and 1'(a) = -1, 1'(b) = 1.
        let partner = sign[r.partner];
        let reality = if partner != r.node {
            Reality::Complex
        } else if r.name == "2''" {
            Reality::Pseudoreal
        } else {
            // 4~ is the only other self-conjugate twisted irrep.
            Reality::StrictlyReal
        };
        out.push(TwistedIrrep {
            name: format!("{}~", r.name),
            dim: r.dim,
            reality,
            partner,
            // Tensoring with the nontrivial character multiplies ρ̃(a) by -1,
            // which is absorbed into the choice i ↦ -i: the action is trivial.
            x_image: r.node,
            base: r.node,
        });
    }
    Ok(out)
}
