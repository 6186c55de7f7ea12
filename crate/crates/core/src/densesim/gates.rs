//! Dense unitaries and the Pauli permutation a Clifford induces.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::{CMatrix, MAX_SIM_QUBITS};
use crate::pauli::{pauli_dim, CliffordPermutation};
use crate::{Error, Result};

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

fn two_by_two(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[a, b, c, d])
}

pub fn identity(num_qubits: usize) -> CMatrix {
    CMatrix::identity(1 << num_qubits, 1 << num_qubits)
}

pub fn hadamard() -> CMatrix {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    two_by_two(h, h, h, -h)
}

/// `diag(1, i)`.
pub fn phase() -> CMatrix {
    two_by_two(C1, C0, C0, CI)
}

/// Single-qubit Pauli for the two-bit code `00 = I, 01 = Z, 10 = X, 11 = Y`.
pub fn single_pauli(code: usize) -> CMatrix {
    match code & 3 {
        0 => two_by_two(C1, C0, C0, C1),
        1 => two_by_two(C1, C0, C0, -C1),
        2 => two_by_two(C0, C1, C1, C0),
        _ => two_by_two(C0, -CI, CI, C0),
    }
}

/// The Pauli string for `index` on `num_qubits` qubits.
pub fn pauli_matrix(index: usize, num_qubits: usize) -> CMatrix {
    let mut out = CMatrix::identity(1, 1);
    for q in 0..num_qubits {
        out = single_pauli(index >> (2 * q)).kronecker(&out);
    }
    out
}

/// Embeds a `k`-qubit operator on qubits `[offset, offset + k)`.
pub fn embed(u: &CMatrix, offset: usize, total_qubits: usize) -> Result<CMatrix> {
    let k = u.nrows().trailing_zeros() as usize;
    if u.nrows() != u.ncols() || u.nrows() != 1 << k || offset + k > total_qubits {
        return Err(Error::dim(format!(
            "cannot place a {}×{} operator at qubit {offset} of {total_qubits}",
            u.nrows(),
            u.ncols()
        )));
    }
    let high = identity(total_qubits - offset - k);
    let low = identity(offset);
    Ok(high.kronecker(&u.kronecker(&low)))
}

/// CNOT on a `num_qubits` register as a basis permutation matrix.
pub fn cnot(control: usize, target: usize, num_qubits: usize) -> Result<CMatrix> {
    if control == target || control >= num_qubits || target >= num_qubits {
        return Err(Error::domain(format!(
            "invalid CNOT({control}, {target}) on {num_qubits} qubits"
        )));
    }
    let dim = 1 << num_qubits;
    let mut m = CMatrix::zeros(dim, dim);
    for z in 0..dim {
        let out = if (z >> control) & 1 == 1 { z ^ (1 << target) } else { z };
        m[(out, z)] = C1;
    }
    Ok(m)
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    u.is_square() && (u.adjoint() * u - CMatrix::identity(u.nrows(), u.ncols())).camax() <= tol
}

/// The permutation `g` with `U P_i U† ∝ P_{g(i)}`; errors if `U` is not a
/// Clifford.
pub fn clifford_permutation_of(u: &CMatrix, num_qubits: usize) -> Result<CliffordPermutation> {
    if num_qubits > MAX_SIM_QUBITS / 2 || u.nrows() != 1 << num_qubits || !is_unitary(u, 1e-10) {
        return Err(Error::domain("expected a small unitary"));
    }
    let d = pauli_dim(num_qubits);
    let scale = (1usize << num_qubits) as f64;
    let paulis: Vec<CMatrix> = (0..d).map(|i| pauli_matrix(i, num_qubits)).collect();
    let mut perm = Vec::with_capacity(d);
    for p in &paulis {
        let image = u * p * u.adjoint();
        // Pauli strings are orthogonal under the Hilbert-Schmidt product.
        let hit = paulis
            .iter()
            .position(|q| ((q.adjoint() * &image).trace().norm() / scale - 1.0).abs() < 1e-9);
        match hit {
            Some(j) => perm.push(j),
            None => return Err(Error::domain("unitary does not map Paulis to Paulis")),
        }
    }
    CliffordPermutation::new(num_qubits, perm)
}

/// A random word of H, S and CNOT gates. Not uniform over the Clifford
/// group, but long enough to scramble the Pauli labels.
pub fn random_clifford_unitary<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<CMatrix> {
    if num_qubits == 0 || num_qubits > MAX_SIM_QUBITS {
        return Err(Error::DenseLimit(format!("{num_qubits} qubits")));
    }
    let mut u = identity(num_qubits);
    let steps = 12 * num_qubits * num_qubits;
    for _ in 0..steps {
        let gate = match rng.random_range(0..if num_qubits > 1 { 3 } else { 2 }) {
            0 => embed(&hadamard(), rng.random_range(0..num_qubits), num_qubits)?,
            1 => embed(&phase(), rng.random_range(0..num_qubits), num_qubits)?,
            _ => {
                let c = rng.random_range(0..num_qubits);
                let t = (c + rng.random_range(1..num_qubits)) % num_qubits;
                cnot(c, t, num_qubits)?
            }
        };
        u = gate * u;
    }
    Ok(u)
}
