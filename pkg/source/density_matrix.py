import numpy as np
from dataclasses import dataclass
from .operators import tensor


# State on the system x pseudomode space, system index major
@dataclass
class DensityMatrix:
    matrix: np.ndarray
    fock_dim: int

    @staticmethod
    def from_product(system_state: np.ndarray, mode_state: np.ndarray):
        return DensityMatrix(tensor(system_state, mode_state), mode_state.shape[0])

    # (|L> + |R>)(<L| + <R|) / 2 with the pseudomode in its vacuum
    @staticmethod
    def superposition_vacuum(fock_dim: int):
        system_state = 0.5 * np.ones((2, 2), dtype=complex)
        vacuum = np.zeros((fock_dim, fock_dim), dtype=complex)
        vacuum[0, 0] = 1
        return DensityMatrix.from_product(system_state, vacuum)

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ValueError(f'Density matrix must be square (shape: {self.matrix.shape}).')
        if self.matrix.shape[0] != 2 * self.fock_dim:
            raise ValueError(f'Density matrix dimension {self.matrix.shape[0]} does not match 2 x fock_dim ({self.fock_dim}).')

    @property
    def dim(self):
        return self.matrix.shape[0]

    def _blocks(self):
        return self.matrix.reshape(2, self.fock_dim, 2, self.fock_dim)

    def trace(self):
        return complex(np.trace(self.matrix))

    def hermiticity_deviation(self):
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def min_eigenvalue(self):
        hermitian_part = 0.5 * (self.matrix + self.matrix.conj().T)
        return float(np.linalg.eigvalsh(hermitian_part)[0])

    # Tr_pm rho, the 2 x 2 pointer-basis state
    def reduced_system(self):
        return np.einsum('injn->ij', self._blocks())

    def reduced_mode(self):
        return np.einsum('inim->nm', self._blocks())

    # <L| Tr_pm rho |R>
    def coherence(self):
        return complex(np.trace(self._blocks()[0, :, 1, :]))

    def top_fock_population(self):
        return float(self.reduced_mode()[-1, -1].real)
