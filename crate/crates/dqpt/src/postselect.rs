//! Symmetry-based rejection of shots that violate particle-number structure.

use serde::{Deserialize, Serialize};

use schwinger_model::{is_occupied, ModelParams};
use schwinger_sim::parse_bitstring;

use crate::Result;

/// Which conservation law a system-register outcome must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PostselectMode {
    Off,
    /// Momentum register (`e = 0`): each mode pair holds 0 or 2 fermions.
    MomentumPairs,
    /// Position register (`e ≠ 0`): exactly `N/2` occupied sites.
    HalfFilling,
}

impl PostselectMode {
    /// The applicable symmetry for a Loschmidt circuit of `params`.
    pub fn for_params(params: &ModelParams) -> Self {
        if params.e == 0.0 {
            PostselectMode::MomentumPairs
        } else {
            PostselectMode::HalfFilling
        }
    }
}

/// Whether the system bits `0..n` of `index` pass `mode`.
pub fn postselect_symmetry(index: usize, n: usize, mode: PostselectMode) -> bool {
    match mode {
        PostselectMode::Off => true,
        PostselectMode::MomentumPairs => (0..n / 2).all(|k| (index >> (2 * k) & 1) == (index >> (2 * k + 1) & 1)),
        PostselectMode::HalfFilling => (0..n).filter(|&s| is_occupied(index, s)).count() == n / 2,
    }
}

/// [`postselect_symmetry`] on a bitstring (qubit 0 leftmost).
pub fn postselect_bitstring(bits: &str, mode: PostselectMode) -> Result<bool> {
    Ok(postselect_symmetry(parse_bitstring(bits)?, bits.len(), mode))
}
