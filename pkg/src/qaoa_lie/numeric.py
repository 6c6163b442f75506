"""Dense-matrix oracle for small registers (n <= 6).

Site 1 is the leftmost tensor factor, so basis index bit ``n - s`` holds
qubit ``s``.  A pulse ``(h, theta)`` stands for ``exp(-i theta h)`` and a
sequence multiplies in time order: the first pulse acts first.

Group-commutator convention: the time-ordered sequence
``(a, t), (b, t), (a, -t), (b, -t)`` has product ``exp(t^2 [a, b]) + O(t^3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np

from .errors import (
    DepthBudgetError,
    DimensionError,
    NonHermitianError,
    SiteIndexError,
    SizeCapError,
)
from .pauli import PauliString, PauliSum
from .synthesis import Commutator, Derivation, Leaf, Selection, echo_partner, zx_target

__all__ = [
    "MAX_QUBITS",
    "CnotCheck",
    "PulseSequence",
    "cnot_matrix",
    "compile",
    "distance_up_to_phase",
    "evaluate_dense",
    "expm_pulse",
    "group_commutator",
    "is_unitary",
    "matrix_to_json",
    "pauli_coefficients",
    "to_matrix",
    "verify_cnot_exact",
]

MAX_QUBITS = 6

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _cap(n: int) -> None:
    if n > MAX_QUBITS:
        raise SizeCapError(f"dense evaluation is capped at {MAX_QUBITS} qubits, got {n}")


def string_matrix(p: PauliString) -> np.ndarray:
    _cap(p.num_qubits)
    m = reduce(np.kron, (_SINGLE[p.letter(s)] for s in range(1, p.num_qubits + 1)))
    return (1, 1j, -1, -1j)[p.phase] * m


@lru_cache(maxsize=4096)
def _sum_matrix(a: PauliSum) -> np.ndarray:
    n = a.num_qubits
    out = np.zeros((2**n, 2**n), dtype=complex)
    for p, c in a.items():
        out += c * string_matrix(p)
    out.setflags(write=False)
    return out


def to_matrix(a: PauliSum) -> np.ndarray:
    _cap(a.num_qubits)
    return _sum_matrix(a).copy()


def pauli_coefficients(m: np.ndarray, n: int, keys) -> PauliSum:
    """Pauli expansion of ``m`` restricted to ``keys`` (``Tr(P m) / 2^n``)."""
    dim = 2**n
    terms = {}
    for x, z in keys:
        p = string_matrix(PauliString(n, x, z))
        terms[(x, z)] = np.trace(p @ m) / dim
    return PauliSum(n, terms)


def is_unitary(u: np.ndarray, tol: float = 1e-9) -> bool:
    return np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=tol)


def expm_pulse(h: PauliSum, theta: float) -> np.ndarray:
    """``exp(-i theta h)`` for Hermitian ``h``."""
    _cap(h.num_qubits)
    if not h.is_hermitian():
        raise NonHermitianError(f"pulse Hamiltonian must have real coefficients: {h}")
    n = h.num_qubits
    term = h.single_term()
    if not h:
        return np.eye(2**n, dtype=complex)
    if term is not None:
        p, c = term
        angle = theta * c.real
        return math.cos(angle) * np.eye(2**n) - 1j * math.sin(angle) * string_matrix(p)
    evals, evecs = np.linalg.eigh(_sum_matrix(h))
    return (evecs * np.exp(-1j * theta * evals)) @ evecs.conj().T


@dataclass
class PulseSequence:
    n: int
    pulses: list[tuple[PauliSum, float]] = field(default_factory=list)
    gaps: list[str] = field(default_factory=list)

    def __post_init__(self):
        for h, angle in self.pulses:
            if h.num_qubits != self.n:
                raise DimensionError(f"pulse on {h.num_qubits} qubits in a {self.n}-qubit sequence")
            if not math.isfinite(angle):
                raise ValueError("pulse angles must be finite")

    def __len__(self) -> int:
        return len(self.pulses)

    def __add__(self, other: PulseSequence) -> PulseSequence:
        if self.n != other.n:
            raise DimensionError(f"cannot join {self.n}- and {other.n}-qubit sequences")
        return PulseSequence(self.n, self.pulses + other.pulses, self.gaps + other.gaps)

    def inverse(self) -> PulseSequence:
        return PulseSequence(self.n, [(h, -a) for h, a in reversed(self.pulses)], list(self.gaps))

    def unitary(self) -> np.ndarray:
        u = np.eye(2**self.n, dtype=complex)
        for h, angle in self.pulses:
            u = expm_pulse(h, angle) @ u
        return u

    def to_json(self) -> dict:
        return {"n": self.n, "pulses": [{"h": h.to_json(), "angle": a} for h, a in self.pulses]}


def group_commutator(a: PauliSum, b: PauliSum, t: float) -> PulseSequence:
    """Four pulses whose product approximates ``exp(t^2 [a, b])``."""
    if a.num_qubits != b.num_qubits:
        raise DimensionError(f"operands act on {a.num_qubits} and {b.num_qubits} qubits")
    return PulseSequence(a.num_qubits, [(a, t), (b, t), (a, -t), (b, -t)])


def compile(dv: Derivation, t: float, depth_budget: int = 64) -> PulseSequence:
    """Pulse sequence approximating ``exp(-i t * dv.value)``.

    A commutator node ``nu [L, R]`` becomes the group commutator of its
    children compiled at angles ``a`` and ``b`` with ``a * b = -i t nu``.  A
    selection whose dropped terms flip sign under ``g_AB -> -g_AB`` becomes two
    half-angle evolutions; any other selection is compiled as its parent and
    recorded in ``gaps``.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if dv.depth() > depth_budget:
        raise DepthBudgetError(f"tree depth {dv.depth()} exceeds budget {depth_budget}")
    gaps: list[str] = []
    seq = _compile(dv, t, gaps)
    seq.gaps = gaps
    return seq


def _compile(node: Derivation, theta: float, gaps: list[str]) -> PulseSequence:
    n = node.num_qubits
    if isinstance(node, Leaf):
        return PulseSequence(n, [(node.value, theta)])
    if isinstance(node, Commutator):
        c = -1j * theta * node.normalizer
        if abs(c.imag) > 1e-12 * max(1.0, abs(c)):
            raise NonHermitianError(f"normalizer {node.normalizer} of {node.label} is not imaginary")
        a = math.sqrt(abs(c.real))
        left = _compile(node.left, a, gaps)
        right = _compile(node.right, math.copysign(a, c.real), gaps)
        return left + right + left.inverse() + right.inverse()
    if isinstance(node, Selection):
        partner = echo_partner(node)
        if partner is None:
            gaps.append(f"{node.label}: selection of {node.pattern} has no coupling echo; "
                        "compiled as its parent")
            return _compile(node.parent, theta, gaps)
        return _compile(node.parent, theta / 2, gaps) + _compile(partner, theta / 2, gaps).inverse()
    raise TypeError(type(node))


def evaluate_dense(dv: Derivation) -> np.ndarray:
    """The derivation tree evaluated with matrices only."""
    if isinstance(dv, Leaf):
        return to_matrix(dv.value)
    if isinstance(dv, Commutator):
        left, right = evaluate_dense(dv.left), evaluate_dense(dv.right)
        return dv.normalizer * (left @ right - right @ left)
    if isinstance(dv, Selection):
        return to_matrix(pauli_coefficients(evaluate_dense(dv.parent), dv.num_qubits, dv.kept))
    raise TypeError(type(dv))


def distance_up_to_phase(u: np.ndarray, v: np.ndarray) -> float:
    """``sqrt(1 - |Tr(u^dagger v)| / 2^n)``; zero exactly on global-phase orbits."""
    if u.shape != v.shape:
        raise DimensionError(f"shapes {u.shape} and {v.shape} differ")
    overlap = abs(np.trace(u.conj().T @ v)) / u.shape[0]
    return math.sqrt(max(0.0, 1.0 - overlap))


def cnot_matrix(n: int, control: int, target: int) -> np.ndarray:
    """Permutation matrix from the CNOT truth table."""
    _cap(n)
    dim = 2**n
    out = np.zeros((dim, dim))
    cbit, tbit = 1 << (n - control), 1 << (n - target)
    for i in range(dim):
        out[i ^ tbit if i & cbit else i, i] = 1
    return out


@dataclass
class CnotCheck:
    n: int
    k: int
    d: int
    distance: float
    pulses: PulseSequence
    ok: bool

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "distance": self.distance,
                "ok": self.ok, "pulses": self.pulses.to_json()}


def verify_cnot_exact(n: int, k: int, d: int, signs: tuple[int, int, int, int] = (1, 1, 1, 1),
                      tol: float = 1e-10) -> CnotCheck:
    """Assemble ``CNOT_{k,k+d}`` from four commuting pulses at angle pi/4.

    ``CNOT = exp(i pi/4 (-I + Z_k + X_{k+d} - Z_k X_{k+d}))`` up to phase; the
    pulse for a term ``s P`` of the exponent is ``(-s P, pi/4)``.  ``signs``
    flips individual terms (negative controls).
    """
    _cap(n)
    if d < 1 or k < 1 or k + d > n:
        raise SiteIndexError(f"control {k} and target {k + d} must lie in [1, {n}]")
    strings = [PauliString.identity(n), PauliString.single(n, k, "Z"),
               PauliString.single(n, k + d, "X"), zx_target(n, k, d)]
    exponent_signs = (-1, 1, 1, -1)
    seq = PulseSequence(n, [
        (PauliSum.from_string(p, -s * e), math.pi / 4)
        for p, s, e in zip(strings, signs, exponent_signs)
    ])
    dist = distance_up_to_phase(seq.unitary(), cnot_matrix(n, k, k + d))
    return CnotCheck(n, k, d, dist, seq, dist < tol)


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(c.real), float(c.imag)] for c in row] for row in np.asarray(m, dtype=complex)]
