// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::error::Result;

use super::sequence::AxisSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupOrder {
    Finite(u64),
    /// No power of θτ₀ up to the limit is the identity.
    Unbounded(u64),
}

/// Order of ⟨τ₀, θ⟩ = ⟨θτ₀, τ₀⟩, a dihedral group.
pub fn miyamoto_group_order(seq: &AxisSequence, limit: u64) -> Result<GroupOrder> {
    let rho = seq.theta.mul(&seq.tau0)?;
    let mut power = rho.clone();
    let mut powers = vec![power.clone()];
    let mut m = 1;
    while !power.is_identity() {
        if m >= limit {
            return Ok(GroupOrder::Unbounded(limit));
        }
        power = power.mul(&rho)?;
        powers.push(power.clone());
        m += 1;
    }
    // The group is ⟨ρ⟩ when τ₀ is a power of ρ, and ⟨ρ⟩ ⋊ ⟨τ₀⟩ otherwise.
    let inside = powers.contains(&seq.tau0);
    Ok(GroupOrder::Finite(if inside { m } else { 2 * m }))
}
