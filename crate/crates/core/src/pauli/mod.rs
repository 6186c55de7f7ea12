//! N-qubit Pauli noise channels.
//!
//! A Pauli index `i ∈ [0, 4^N)` is a `2N`-bit string, two bits per qubit:
//! qubit `j` owns bit `2j` (the Z bit) and bit `2j+1` (the X bit), so
//! `00 = I`, `01 = Z`, `10 = X`, `11 = Y`. Phases are dropped everywhere;
//! multiplying Paulis is XOR on indices.

mod channel;
mod clifford;
pub mod transform;

pub use channel::{DepolarizingSpec, PauliChannel};
pub use clifford::CliffordPermutation;
pub use transform::{
    fast_xor_transform, xor_autocorrelation, xor_convolve, xor_convolve_bruteforce,
    xor_convolve_fast,
};

use std::fmt;

/// Largest qubit count a dense Pauli vector is allowed to describe (`4^8 = 65536`).
pub const MAX_DENSE_QUBITS: usize = 8;

/// `4^n` as usize.
pub fn pauli_dim(num_qubits: usize) -> usize {
    1usize << (2 * num_qubits)
}

/// An index into the `4^N` Pauli strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliIndex(pub usize);

impl PauliIndex {
    pub const IDENTITY: PauliIndex = PauliIndex(0);

    /// Builds an index from per-qubit X and Z masks (bit `j` = qubit `j`).
    pub fn from_xz(x_mask: usize, z_mask: usize, num_qubits: usize) -> Self {
        let mut idx = 0;
        for q in 0..num_qubits {
            idx |= ((z_mask >> q) & 1) << (2 * q);
            idx |= ((x_mask >> q) & 1) << (2 * q + 1);
        }
        PauliIndex(idx)
    }

    /// Qubit mask of positions carrying an X or Y.
    pub fn x_mask(self, num_qubits: usize) -> usize {
        (0..num_qubits).fold(0, |m, q| m | (((self.0 >> (2 * q + 1)) & 1) << q))
    }

    /// Qubit mask of positions carrying a Z or Y.
    pub fn z_mask(self, num_qubits: usize) -> usize {
        (0..num_qubits).fold(0, |m, q| m | (((self.0 >> (2 * q)) & 1) << q))
    }

    /// Number of non-identity tensor factors.
    pub fn weight(self, num_qubits: usize) -> u32 {
        (self.x_mask(num_qubits) | self.z_mask(num_qubits)).count_ones()
    }

    /// Product modulo phase.
    pub fn mul(self, other: PauliIndex) -> PauliIndex {
        PauliIndex(self.0 ^ other.0)
    }

    /// Label such as `"XIZ"`, qubit 0 first.
    pub fn label(self, num_qubits: usize) -> String {
        (0..num_qubits)
            .map(|q| match (self.0 >> (2 * q)) & 3 {
                0 => 'I',
                1 => 'Z',
                2 => 'X',
                _ => 'Y',
            })
            .collect()
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}
