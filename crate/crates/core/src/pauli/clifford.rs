use super::{pauli_dim, MAX_DENSE_QUBITS};
use crate::{Error, Result};

/// Index permutation induced on Pauli strings by a Clifford, `C E_i C† ∝ E_{perm(i)}`.
///
/// Signs are discarded; only probability transport matters for Pauli channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordPermutation {
    num_qubits: usize,
    perm: Vec<usize>,
}

impl CliffordPermutation {
    /// Validates that `perm` is a bijection on `[0, 4^N)` fixing 0.
    pub fn new(num_qubits: usize, perm: Vec<usize>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_DENSE_QUBITS {
            return Err(Error::domain(format!(
                "unsupported qubit count {num_qubits}"
            )));
        }
        let dim = pauli_dim(num_qubits);
        if perm.len() != dim {
            return Err(Error::dim(format!(
                "permutation has {} entries, expected {dim}",
                perm.len()
            )));
        }
        if perm[0] != 0 {
            return Err(Error::domain("identity must map to identity"));
        }
        let mut seen = vec![false; dim];
        for &j in &perm {
            if j >= dim || std::mem::replace(&mut seen[j], true) {
                return Err(Error::domain("not a bijection"));
            }
        }
        Ok(Self { num_qubits, perm })
    }

    pub fn identity(num_qubits: usize) -> Result<Self> {
        Self::new(num_qubits, (0..pauli_dim(num_qubits)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn apply(&self, index: usize) -> usize {
        self.perm[index]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        Self {
            num_qubits: self.num_qubits,
            perm: inv,
        }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Self) -> Result<Self> {
        if self.num_qubits != first.num_qubits {
            return Err(Error::dim("Clifford sizes differ"));
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            perm: first.perm.iter().map(|&j| self.perm[j]).collect(),
        })
    }

    /// The same Clifford applied to each of `copies` registers in parallel.
    pub fn parallel(&self, copies: usize) -> Result<Self> {
        let n = self.num_qubits * copies;
        if copies == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::DenseLimit(format!(
                "{copies} parallel copies of a {}-qubit Clifford",
                self.num_qubits
            )));
        }
        let bits = 2 * self.num_qubits;
        let mask = (1usize << bits) - 1;
        let perm = (0..pauli_dim(n))
            .map(|idx| {
                (0..copies).fold(0, |acc, c| {
                    let part = (idx >> (c * bits)) & mask;
                    acc | (self.perm[part] << (c * bits))
                })
            })
            .collect();
        Ok(Self {
            num_qubits: n,
            perm,
        })
    }
}
