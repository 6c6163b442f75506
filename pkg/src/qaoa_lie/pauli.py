"""Exact algebra of n-qubit Pauli strings and weighted Pauli sums.

A string is stored as a pair of bit masks plus a power of ``i``.  Bit ``j`` of
``x`` (resp. ``z``) is set when qubit ``j`` (site ``j + 1``) carries an X or Y
(resp. Z or Y) factor.  The single-qubit factor for ``(x, z) = (1, 1)`` is the
Hermitian ``Y = iXZ``, so a string with ``phase == 0`` is always Hermitian.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DegenerateInputError, DimensionError, SiteIndexError

__all__ = [
    "SIMPLIFY_TOL",
    "PauliString",
    "PauliSum",
    "commutator_strings",
    "commutator_sums",
    "hs_inner",
    "multiply",
    "proportional_to",
]

SIMPLIFY_TOL = 1e-12

_PHASES = (1, 1j, -1, -1j)
_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_TOKEN = re.compile(r"([IXYZ])(\d+)")


def _check_size(n: int, m: int) -> None:
    if n != m:
        raise DimensionError(f"operands act on {n} and {m} qubits")


@dataclass(frozen=True, slots=True)
class PauliString:
    num_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        full = (1 << self.num_qubits) - 1
        if self.x & ~full or self.z & ~full:
            raise DimensionError(f"masks exceed {self.num_qubits} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def single(cls, n: int, site: int, letter: str) -> PauliString:
        """One non-identity factor at 1-indexed ``site``."""
        return cls.from_sites(n, {site: letter})

    @classmethod
    def from_sites(cls, n: int, factors: Mapping[int, str]) -> PauliString:
        x = z = 0
        for site, letter in factors.items():
            if not 1 <= site <= n:
                raise SiteIndexError(f"site {site} outside [1, {n}]")
            bx, bz = _BITS[letter.upper()]
            x |= bx << (site - 1)
            z |= bz << (site - 1)
        return cls(n, x, z)

    @classmethod
    def from_label(cls, label: str, n: int) -> PauliString:
        """Parse ``"Z1 I2 X3"`` (1-indexed, any order, ``I`` alone allowed)."""
        factors = {}
        for letter, site in _TOKEN.findall(label):
            if letter != "I":
                factors[int(site)] = letter
        if not factors and label.strip() not in ("", "I") and not _TOKEN.search(label):
            raise ValueError(f"cannot parse Pauli label {label!r}")
        return cls.from_sites(n, factors)

    @property
    def key(self) -> tuple[int, int]:
        return (self.x, self.z)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def letter(self, site: int) -> str:
        j = site - 1
        return _LETTER[((self.x >> j) & 1, (self.z >> j) & 1)]

    def support(self) -> list[int]:
        mask = self.x | self.z
        return [j + 1 for j in range(self.num_qubits) if mask >> j & 1]

    def canonical(self) -> PauliString:
        return PauliString(self.num_qubits, self.x, self.z, 0)

    def commutes_with(self, other: PauliString) -> bool:
        _check_size(self.num_qubits, other.num_qubits)
        return ((self.x & other.z) ^ (self.z & other.x)).bit_count() % 2 == 0

    def label(self, compact: bool = False) -> str:
        """Text form.  ``compact`` drops identity factors inside the support."""
        sites = self.support()
        if not sites:
            body = "I"
        elif compact:
            body = " ".join(f"{self.letter(s)}{s}" for s in sites)
        else:
            body = " ".join(f"{self.letter(s)}{s}" for s in range(sites[0], sites[-1] + 1))
        prefix = ("", "i ", "-", "-i ")[self.phase]
        return prefix + body

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __str__(self) -> str:
        return self.label()


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact product ``p @ q`` of two Pauli strings."""
    _check_size(p.num_qubits, q.num_qubits)
    full = (1 << p.num_qubits) - 1
    px, py, pz = p.x & ~p.z & full, p.x & p.z, ~p.x & p.z & full
    qx, qy, qz = q.x & ~q.z & full, q.x & q.z, ~q.x & q.z & full
    # XY = iZ, YZ = iX, ZX = iY and the reverses carry -i
    plus = (px & qy) | (py & qz) | (pz & qx)
    minus = (py & qx) | (pz & qy) | (px & qz)
    phase = p.phase + q.phase + plus.bit_count() - minus.bit_count()
    return PauliString(p.num_qubits, p.x ^ q.x, p.z ^ q.z, phase)


def commutator_strings(p: PauliString, q: PauliString) -> tuple[PauliString, complex] | None:
    """``[p, q]`` as ``(string, scalar)`` with the string in phase-0 form.

    Returns ``None`` when the strings commute.
    """
    _check_size(p.num_qubits, q.num_qubits)
    if p.commutes_with(q):
        return None
    prod = multiply(p, q)
    return prod.canonical(), 2 * _PHASES[prod.phase]


class PauliSum:
    """Sparse complex combination of phase-0 Pauli strings.

    Terms are keyed by ``(x, z)``; string phases are folded into the
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("num_qubits", "_terms")

    def __init__(self, num_qubits: int, terms: Mapping[tuple[int, int], complex] | None = None,
                 tol: float = SIMPLIFY_TOL):
        if num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        self.num_qubits = num_qubits
        full = (1 << num_qubits) - 1
        clean = {}
        for (x, z), c in (terms or {}).items():
            if x & ~full or z & ~full:
                raise DimensionError(f"term ({x}, {z}) exceeds {num_qubits} qubits")
            c = complex(c)
            if abs(c) >= tol:
                clean[(x, z)] = c
        self._terms = clean

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> PauliSum:
        return cls(n)

    @classmethod
    def from_string(cls, p: PauliString, coef: complex = 1.0) -> PauliSum:
        return cls(p.num_qubits, {p.key: coef * _PHASES[p.phase]})

    @classmethod
    def from_strings(cls, n: int, items: Iterable[tuple[complex, PauliString]]) -> PauliSum:
        terms: dict[tuple[int, int], complex] = {}
        for coef, p in items:
            _check_size(n, p.num_qubits)
            terms[p.key] = terms.get(p.key, 0) + coef * _PHASES[p.phase]
        return cls(n, terms)

    @classmethod
    def from_label(cls, label: str, n: int, coef: complex = 1.0) -> PauliSum:
        return cls.from_string(PauliString.from_label(label, n), coef)

    @classmethod
    def from_json(cls, payload: Mapping) -> PauliSum:
        n = int(payload["n"])
        items = []
        for term in payload["terms"]:
            re_, im = term["coef"]
            items.append((complex(re_, im), PauliString.from_label(term["pauli"], n)))
        return cls.from_strings(n, items)

    # -- views ------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], complex]:
        return dict(self._terms)

    def keys(self) -> list[tuple[int, int]]:
        return sorted(self._terms, key=lambda k: (k[1], k[0]))

    def items(self) -> list[tuple[PauliString, complex]]:
        """Terms in report order: lexicographic on ``(z_mask, x_mask)``."""
        return [(PauliString(self.num_qubits, x, z), self._terms[(x, z)]) for x, z in self.keys()]

    def coef(self, p: PauliString | tuple[int, int]) -> complex:
        key = p.key if isinstance(p, PauliString) else p
        return self._terms.get(key, 0j)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self.items())

    def is_hermitian(self, tol: float = SIMPLIFY_TOL) -> bool:
        return all(abs(c.imag) < tol for c in self._terms.values())

    def is_antihermitian(self, tol: float = SIMPLIFY_TOL) -> bool:
        return all(abs(c.real) < tol for c in self._terms.values())

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self._terms.values()))

    def restrict(self, keys: Iterable[tuple[int, int]]) -> PauliSum:
        keep = set(keys)
        return PauliSum(self.num_qubits, {k: c for k, c in self._terms.items() if k in keep})

    def single_term(self) -> tuple[PauliString, complex] | None:
        if len(self._terms) != 1:
            return None
        return self.items()[0]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: PauliSum) -> PauliSum:
        if not isinstance(other, PauliSum):
            return NotImplemented
        _check_size(self.num_qubits, other.num_qubits)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return PauliSum(self.num_qubits, terms)

    def __neg__(self) -> PauliSum:
        return self.scale(-1)

    def __sub__(self, other: PauliSum) -> PauliSum:
        return self + (-other)

    def scale(self, factor: complex) -> PauliSum:
        return PauliSum(self.num_qubits, {k: factor * c for k, c in self._terms.items()})

    def __mul__(self, factor):
        if isinstance(factor, PauliSum):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def simplify(self, tol: float = SIMPLIFY_TOL) -> PauliSum:
        return PauliSum(self.num_qubits, self._terms, tol=tol)

    def commutator(self, other: PauliSum) -> PauliSum:
        return commutator_sums(self, other)

    def almost_equal(self, other: PauliSum, tol: float = 1e-12) -> bool:
        _check_size(self.num_qubits, other.num_qubits)
        return all(abs(c) <= tol for c in (self - other)._terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.num_qubits == other.num_qubits and self._terms == other._terms

    def __hash__(self):
        return hash((self.num_qubits, frozenset(self._terms.items())))

    # -- text and JSON ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.num_qubits,
            "terms": [
                {"pauli": p.label(compact=True), "coef": [c.real, c.imag]}
                for p, c in self.items()
            ],
        }

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for p, c in self.items():
            parts.append(f"({_fmt(c)})*[{p.label()}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PauliSum(n={self.num_qubits}, {self})"


def _fmt(c: complex) -> str:
    if abs(c.imag) < SIMPLIFY_TOL:
        return f"{c.real:g}"
    if abs(c.real) < SIMPLIFY_TOL:
        return f"{c.imag:g}i"
    return f"{c.real:g}{c.imag:+g}i"


def commutator_sums(a: PauliSum, b: PauliSum) -> PauliSum:
    """Bilinear commutator ``[a, b]`` expanded over all term pairs."""
    _check_size(a.num_qubits, b.num_qubits)
    n = a.num_qubits
    out: dict[tuple[int, int], complex] = {}
    for (ax, az), ca in a._terms.items():
        pa = PauliString(n, ax, az)
        for (bx, bz), cb in b._terms.items():
            res = commutator_strings(pa, PauliString(n, bx, bz))
            if res is None:
                continue
            s, scalar = res
            out[s.key] = out.get(s.key, 0) + scalar * ca * cb
    return PauliSum(n, out)


def hs_inner(a: PauliSum, b: PauliSum) -> complex:
    """Normalized Hilbert-Schmidt inner product ``Tr(a^dagger b) / 2^n``."""
    _check_size(a.num_qubits, b.num_qubits)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    total = 0j
    for k in small._terms:
        if k in large._terms:
            total += a._terms[k].conjugate() * b._terms[k]
    return total


def proportional_to(a: PauliSum, b: PauliSum, tol: float = 1e-9) -> complex | None:
    """Return ``lam`` with ``a == lam * b`` coefficient-wise, else ``None``."""
    _check_size(a.num_qubits, b.num_qubits)
    if not b:
        raise DegenerateInputError("reference sum is empty")
    lam = hs_inner(b, a) / hs_inner(b, b)
    residual = a - b.scale(lam)
    if any(abs(c) > tol for c in residual._terms.values()):
        return None
    return lam
