//! Composing, tensoring and Clifford-conjugating Pauli channels.

use vcplab::densesim::gates::{clifford_permutation_of, hadamard};
use vcplab::pauli::{DepolarizingSpec, PauliChannel, PauliIndex};

fn show(name: &str, c: &PauliChannel) {
    let n = c.num_qubits();
    let terms: Vec<String> = c
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .map(|(i, p)| format!("{}:{p:.4}", PauliIndex(i).label(n)))
        .collect();
    println!("{name:<22} {}", terms.join(" "));
}

fn main() -> vcplab::Result<()> {
    let dep = PauliChannel::depolarizing(DepolarizingSpec::new(1, 0.1)?)?;
    show("depolarizing(0.1)", &dep);
    // Two rounds of 10% depolarizing noise compose to 19%.
    show("composed twice", &dep.compose(&dep)?);

    let dephase = PauliChannel::new(1, vec![0.9, 0.1, 0.0, 0.0])?;
    show("dephasing", &dephase);

    let h = clifford_permutation_of(&hadamard(), 1)?;
    show("H-conjugated", &dephase.conjugate(&h)?);

    show("dephasing ⊗ dep", &dephase.tensor(&dep)?);
    Ok(())
}
