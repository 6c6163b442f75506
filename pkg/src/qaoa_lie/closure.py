"""Dimension of the dynamical Lie algebra generated by Hermitian Pauli sums.

Elements are kept as real Pauli-coefficient vectors of length ``4^n`` (Hermitian
operators have real coefficients, and ``i[A, B]`` is Hermitian again).  The
coefficient inner product equals ``hs_inner``.  Commutators are taken with
dense matrices and mapped back through the Pauli basis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimensionError, SizeCapError
from .hamiltonians import GeneratorSpec, Kind, build
from .numeric import string_matrix
from .pauli import PauliString, PauliSum

__all__ = ["ClosureResult", "MAX_CLOSURE_QUBITS", "REJECT_TOL", "closure", "is_universal"]

MAX_CLOSURE_QUBITS = 5
REJECT_TOL = 1e-9


@lru_cache(maxsize=None)
def _pauli_stack(n: int) -> tuple[list[tuple[int, int]], np.ndarray]:
    keys = [(x, z) for x in range(2**n) for z in range(2**n)]
    stack = np.array([string_matrix(PauliString(n, x, z)) for x, z in keys])
    return keys, stack


@dataclass
class ClosureResult:
    n: int
    generators: list[PauliSum]
    basis: list[PauliSum]
    dimension: int
    saturated: bool
    target_dimension: int
    rounds: int
    basis_size_by_round: list[int] = field(default_factory=list)

    @property
    def universal(self) -> bool:
        return self.saturated and self.dimension == self.target_dimension

    def to_json(self, supports: bool = False) -> dict:
        out = {
            "n": self.n,
            "dimension": self.dimension,
            "target": self.target_dimension,
            "saturated": self.saturated,
            "rounds": self.rounds,
            "basis_size_by_round": self.basis_size_by_round,
        }
        if supports:
            out["basis_supports"] = [
                sorted(p.label(compact=True) for p, _ in b.items()) for b in self.basis
            ]
        return out


class _Basis:
    """Orthonormal rows, grown by two-pass Gram-Schmidt with a rejection threshold."""

    def __init__(self, dim: int, tol: float):
        self.rows = np.zeros((0, dim))
        self.tol = tol

    def __len__(self):
        return self.rows.shape[0]

    def add(self, vectors: np.ndarray) -> int:
        added = 0
        for v in vectors:
            for _ in range(2):
                v = v - self.rows.T @ (self.rows @ v)
            norm = np.linalg.norm(v)
            if norm > self.tol:
                self.rows = np.vstack([self.rows, v / norm])
                added += 1
        return added


def closure(generators: list[PauliSum], n: int, max_rounds: int = 50,
            tol: float = REJECT_TOL) -> ClosureResult:
    """Grow an orthonormal basis of the Lie algebra generated by ``generators``.

    Round 0 seeds the basis with the generators (identity part removed).
    Each later round brackets the elements added in the previous round with
    the whole basis.  Stops when a round adds nothing (saturated), when the
    dimension reaches ``4^n - 1``, or after ``max_rounds``.
    """
    if n > MAX_CLOSURE_QUBITS:
        raise SizeCapError(f"closure is capped at {MAX_CLOSURE_QUBITS} qubits, got {n}")
    for g in generators:
        if g.num_qubits != n:
            raise DimensionError(f"generator on {g.num_qubits} qubits, expected {n}")
        if not g.is_hermitian():
            raise ValueError(f"generators must be Hermitian: {g}")

    keys, stack = _pauli_stack(n)
    dim, size = 4**n, 2**n
    flat = stack.reshape(dim, size * size)
    index = {k: i for i, k in enumerate(keys)}
    target = dim - 1

    basis = _Basis(dim, tol)
    seeds = np.zeros((len(generators), dim))
    for row, g in zip(seeds, generators):
        for key, c in g.terms.items():
            row[index[key]] = c.real
    seeds[:, index[(0, 0)]] = 0.0
    basis.add(seeds)
    mats = np.tensordot(basis.rows, stack, axes=1)
    sizes = [len(basis)]

    frontier = (0, len(basis))
    rounds = 0
    saturated = len(basis) == 0
    while not saturated and len(basis) < target and rounds < max_rounds:
        rounds += 1
        start = len(basis)
        for i in range(*frontier):
            if len(basis) >= target:
                break
            elem = mats[i]
            comm = 1j * (elem @ mats - mats @ elem)
            # coefficient of P in M is Tr(P M) / 2^n; Pauli matrices are Hermitian
            coefs = (comm.reshape(len(mats), -1) @ flat.conj().T).real / size
            before = len(basis)
            basis.add(coefs)
            if len(basis) > before:
                mats = np.concatenate([mats, np.tensordot(basis.rows[before:], stack, axes=1)])
        frontier = (start, len(basis))
        sizes.append(len(basis))
        saturated = len(basis) == start
    if len(basis) >= target:
        saturated = True

    out_basis = [PauliSum(n, {keys[j]: v for j, v in enumerate(row) if abs(v) > 1e-12})
                 for row in basis.rows]
    return ClosureResult(n, list(generators), out_basis, len(basis), saturated, target, rounds, sizes)


def is_universal(n: int, hz_weights=None, gamma_ab: float = 1.0, gamma_ba: float = 1.0,
                 max_rounds: int = 50) -> tuple[bool, ClosureResult]:
    """Closure of ``{H_z, H_x}``; universal when it is all of ``su(2^n)``.

    Uses ``w_j = j`` when no weights are given.  Equal weights only trigger a
    warning: the site-reflection symmetry can trap the algebra in a subalgebra.
    """
    weights = tuple(hz_weights) if hz_weights is not None else tuple(range(1, n + 1))
    if n > 1 and len(set(weights)) == 1:
        warnings.warn("equal on-site weights: symmetry may keep the algebra below su(2^n)",
                      stacklevel=2)
    hz = build(GeneratorSpec(Kind.H_z_full, n, gamma_ab, gamma_ba, weights=weights))
    hx = build(GeneratorSpec(Kind.H_x_full, n))
    result = closure([hz, hx], n, max_rounds=max_rounds)
    return result.universal, result
