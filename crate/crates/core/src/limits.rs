use serde::{Deserialize, Serialize};

/// Caps on the size of exhaustive searches. Exceeding one is reported as
/// [`crate::GkzError::CapExceeded`], never silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest allowed `q^b = p^{ab}` in digit enumerations.
    pub max_qb: u64,
    /// Largest number of search-tree nodes in one lattice enumeration.
    pub max_nodes: u64,
    /// Largest number of lattice cells scanned by a bounded search.
    pub max_cells: u64,
    /// Ceiling for the dilation factor used in coset minimisation.
    pub max_dilation: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_qb: 1_000_000,
            max_nodes: 50_000_000,
            max_cells: 10_000_000,
            max_dilation: 64,
        }
    }
}

impl Limits {
    /// `p^{ab}`, or a cap error if it exceeds `max_qb`.
    pub fn q_power(&self, p: crate::Prime, a: u32, b: u32) -> crate::Result<u64> {
        let e = a.checked_mul(b).filter(|&e| e > 0).ok_or_else(|| {
            crate::GkzError::invalid(format!("exponent a*b must be positive (a={a}, b={b})"))
        })?;
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(p.get())
                .filter(|&q| q <= self.max_qb)
                .ok_or_else(|| crate::GkzError::cap(format!("q^b = {p}^{e}"), self.max_qb))?;
        }
        Ok(q)
    }
}
