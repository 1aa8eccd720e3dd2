// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::qcore::{kron, pauli, CMatrix, PauliAxis};

/// Two-qubit coupling term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingModel {
    /// Single qubit, no coupling term.
    #[default]
    None,
    /// `J σz⊗σz`
    Ising,
    /// `J (σx⊗σx + σy⊗σy)`
    XY,
    /// `J σ_first ⊗ σ_second`
    Generic { first: PauliAxis, second: PauliAxis },
}

impl CouplingModel {
    /// Hilbert-space dimension implied by the model.
    pub fn dim(&self) -> usize {
        match self {
            CouplingModel::None => 2,
            _ => 4,
        }
    }
}

/// Transition frequency, coupling constant and coupling model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    /// Qubit transition frequency, rad/s.
    pub delta_omega: f64,
    /// Coupling constant, rad/s. Ignored when `coupling_model` is `None`.
    pub coupling_j: f64,
    pub coupling_model: CouplingModel,
}

impl HamiltonianSpec {
    pub fn single_qubit(delta_omega: f64) -> Self {
        Self {
            delta_omega,
            coupling_j: 0.0,
            coupling_model: CouplingModel::None,
        }
    }

    pub fn dim(&self) -> usize {
        self.coupling_model.dim()
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if !self.delta_omega.is_finite() || !self.coupling_j.is_finite() {
            return Err(DynamicsError::InvalidParameter(
                "delta_omega and coupling_j must be finite".into(),
            ));
        }
        Ok(())
    }

    /// The full generator `L`: `L₀` for one qubit, otherwise
    /// `L₀⊗I + I⊗L₀ + L_int`.
    pub fn operator(&self) -> Result<CMatrix, DynamicsError> {
        self.validate()?;
        let free = free_hamiltonian(self.delta_omega);
        if self.coupling_model == CouplingModel::None {
            return Ok(free);
        }
        let id = CMatrix::identity(2);
        let interaction = interaction_hamiltonian(self.coupling_j, self.coupling_model)?;
        Ok(kron(&free, &id) + kron(&id, &free) + interaction)
    }
}

/// `Γ = 1/(2·T1) + 1/(T2·π)`, as printed in the model this crate follows.
///
/// Note the second term is not the textbook `1/T2`; use
/// [`NoiseSpec::gamma_override`](super::NoiseSpec) for that reading.
pub fn decoherence_rate(t1: f64, t2: f64) -> Result<f64, DynamicsError> {
    if !(t1 > 0.0 && t1.is_finite() && t2 > 0.0 && t2.is_finite()) {
        return Err(DynamicsError::InvalidParameter(format!(
            "T1 and T2 must be positive and finite (got {t1}, {t2})"
        )));
    }
    Ok(1.0 / (2.0 * t1) + 1.0 / (t2 * PI))
}

/// `L₀ = ½ Δω σz`
pub fn free_hamiltonian(delta_omega: f64) -> CMatrix {
    pauli(PauliAxis::Z).scale(0.5 * delta_omega)
}

/// Coupling Hamiltonian on two qubits.
pub fn interaction_hamiltonian(j: f64, model: CouplingModel) -> Result<CMatrix, DynamicsError> {
    let pair = |a, b| kron(&pauli(a), &pauli(b));
    let base = match model {
        CouplingModel::None => {
            return Err(DynamicsError::InvalidParameter(
                "interaction Hamiltonian needs a coupling model".into(),
            ))
        }
        CouplingModel::Ising => pair(PauliAxis::Z, PauliAxis::Z),
        CouplingModel::XY => pair(PauliAxis::X, PauliAxis::X) + pair(PauliAxis::Y, PauliAxis::Y),
        CouplingModel::Generic { first, second } => pair(first, second),
    };
    Ok(base.scale(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::hermitian_eigen;

    #[test]
    fn decoherence_rate_examples() {
        assert_eq!(decoherence_rate(1.0, 1.0).unwrap(), 0.5 + 1.0 / PI);
        assert!((decoherence_rate(1.0, 1.0).unwrap() - 0.8183).abs() < 1e-4);
        assert!(decoherence_rate(1e12, 1e12).unwrap() < 1e-11);
        let g = decoherence_rate(0.5, 2.0).unwrap();
        assert!((g - (1.0 + 1.0 / (2.0 * PI))).abs() < 1e-15);
        assert!((g - 1.1592).abs() < 1e-4);
    }

    #[test]
    fn decoherence_rate_rejects_nonpositive() {
        assert!(decoherence_rate(0.0, 1.0).is_err());
        assert!(decoherence_rate(1.0, -1.0).is_err());
        assert!(decoherence_rate(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn free_hamiltonian_examples() {
        assert_eq!(free_hamiltonian(0.0), CMatrix::zeros(2).scale(1.0));
        let h = free_hamiltonian(2.0);
        assert_eq!(h, CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]).unwrap());
        let h = free_hamiltonian(-4.0);
        assert_eq!(h, CMatrix::from_real_rows(&[[-2.0, 0.0], [0.0, 2.0]]).unwrap());
        assert!(h.is_hermitian(0.0));
        assert_eq!(h.trace().norm(), 0.0);
    }

    #[test]
    fn interaction_examples() {
        let zero = interaction_hamiltonian(0.0, CouplingModel::Ising).unwrap();
        assert_eq!(zero.max_abs(), 0.0);

        let ising = interaction_hamiltonian(1.0, CouplingModel::Ising).unwrap();
        let diag: Vec<f64> = (0..4).map(|k| ising[(k, k)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);

        let xy = interaction_hamiltonian(1.0, CouplingModel::XY).unwrap();
        assert_eq!(xy[(1, 2)].re, 2.0);
        assert_eq!(xy[(2, 1)].re, 2.0);
        assert_eq!(xy[(1, 1)].norm() + xy[(2, 2)].norm(), 0.0);
        assert_eq!(xy[(0, 3)].norm() + xy[(3, 0)].norm(), 0.0);
        assert!(xy.is_hermitian(0.0));
        let values = hermitian_eigen(&xy).unwrap().values;
        for (got, want) in values.iter().zip([2.0, 0.0, 0.0, -2.0]) {
            assert!((got - want).abs() < 1e-14);
        }

        let generic = interaction_hamiltonian(
            0.5,
            CouplingModel::Generic { first: PauliAxis::X, second: PauliAxis::Y },
        )
        .unwrap();
        assert!(generic.is_hermitian(0.0));
        assert!(interaction_hamiltonian(1.0, CouplingModel::None).is_err());
    }

    #[test]
    fn ising_generator_commutes_with_zz() {
        let spec = HamiltonianSpec {
            delta_omega: 1.7,
            coupling_j: -0.6,
            coupling_model: CouplingModel::Ising,
        };
        let l = spec.operator().unwrap();
        let zz = kron(&pauli(PauliAxis::Z), &pauli(PauliAxis::Z));
        assert!(l.commutator(&zz).max_abs() <= 1e-12);
    }
}
