import numpy as np
from functools import reduce


# Dense complex operators on the system (pointer basis |L>, |R>) and the truncated pseudomode ladder.
# Composite operators are ordered system first: index = system_index * fock_dim + fock_index.

def identity(dim: int):
    return np.eye(dim, dtype=complex)


# Truncated annihilation operator b with b|n> = sqrt(n)|n - 1>
def destroy(fock_dim: int):
    if fock_dim < 1:
        raise ValueError(f'Fock dimension must be positive (fock_dim: {fock_dim}).')
    return np.diag(np.sqrt(np.arange(1, fock_dim)), k=1).astype(complex)


def create(fock_dim: int):
    return destroy(fock_dim).conj().T


def number(fock_dim: int):
    return np.diag(np.arange(fock_dim)).astype(complex)


# |L><L| - |R><R|
def pointer_difference():
    return np.diag([1.0, -1.0]).astype(complex)


def tensor(*operators: np.ndarray):
    return reduce(np.kron, operators)


def commutator(first: np.ndarray, second: np.ndarray):
    return first @ second - second @ first


def anticommutator(first: np.ndarray, second: np.ndarray):
    return first @ second + second @ first


def dagger(operator: np.ndarray):
    return operator.conj().T
