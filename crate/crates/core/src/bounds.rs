use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Limits for every brute-force search in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EnumerationBounds {
    /// Largest coefficient ring accepted by the irreducibility search.
    pub max_ring: u128,
    /// Largest degree accepted by the irreducibility search.
    pub max_degree: usize,
    /// Largest set (ring, algebra or code) that may be listed element by element.
    pub max_elements: u128,
    /// Largest number of candidate factors or lattice points tried.
    pub max_candidates: u128,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            max_ring: 256,
            max_degree: 6,
            max_elements: 10_000,
            max_candidates: 10_000_000,
        }
    }
}

impl EnumerationBounds {
    pub fn check(what: &str, needed: u128, bound: u128) -> Result<()> {
        if needed > bound {
            Err(Error::TooLarge { what: what.to_string(), needed, bound })
        } else {
            Ok(())
        }
    }

    pub fn elements(&self, what: &str, needed: u128) -> Result<()> {
        Self::check(what, needed, self.max_elements)
    }
}
