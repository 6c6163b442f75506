"""Builders for the named operators of the 1D QAOA construction.

Sites are 1-indexed.  The sublattice couplings follow a term-pattern rule:
``H_AB`` collects the bonds ``Z_i Z_{i+1}`` with ``i`` even and ``H_BA`` the
bonds with ``i`` odd, for either parity of ``n``.  ``X_even`` / ``X_odd`` are
the X sums over even / odd sites.

``build_h_yz``, ``build_h_zxz`` and ``build_second_commutator_display`` give
the printed sums literally (odd and even branches), without the ``2i``
factors that the commutators actually produce.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import SiteIndexError, UnsupportedSizeError
from .pauli import PauliString, PauliSum

__all__ = [
    "GeneratorSpec",
    "Kind",
    "build",
    "build_h_yz",
    "build_h_zxz",
    "build_second_commutator_display",
    "parse_spec",
    "x_sublattice",
    "zxz_pattern",
]


class Kind(enum.Enum):
    H_z_full = "H_z_full"
    H_x_full = "H_x_full"
    H_AB = "H_AB"
    H_BA = "H_BA"
    H_z2 = "H_z2"
    X_even = "X_even"
    X_odd = "X_odd"
    X_site = "X_site"
    Y_site = "Y_site"
    Z_site = "Z_site"
    YZ_pair = "YZ_pair"
    ZY_pair = "ZY_pair"
    XY_pair = "XY_pair"


SITE_KINDS = {Kind.X_site: "X", Kind.Y_site: "Y", Kind.Z_site: "Z"}
PAIR_KINDS = {Kind.YZ_pair: "YZ", Kind.ZY_pair: "ZY", Kind.XY_pair: "XY"}
GAMMA_KINDS = {Kind.H_z_full, Kind.H_z2}

_SHORT = {
    "Hz": Kind.H_z_full, "Hx": Kind.H_x_full, "HAB": Kind.H_AB, "HBA": Kind.H_BA,
    "Hz2": Kind.H_z2, "Xeven": Kind.X_even, "Xodd": Kind.X_odd,
    "X": Kind.X_site, "Y": Kind.Y_site, "Z": Kind.Z_site,
    "YZ": Kind.YZ_pair, "ZY": Kind.ZY_pair, "XY": Kind.XY_pair,
}
_SHORT_NAME = {v: k for k, v in _SHORT.items()}


@dataclass(frozen=True)
class GeneratorSpec:
    """A primitive generator: its kind, size, couplings and (for local kinds) site.

    ``site`` is the 1-indexed site of a single-site kind, or the left site of a
    pair kind.  ``weights`` are the on-site Z weights of ``H_z_full``
    (default ``w_j = j``).
    """

    kind: Kind
    num_qubits: int
    gamma_ab: float = 1.0
    gamma_ba: float = 1.0
    site: int | None = None
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        n = self.num_qubits
        if n < 1:
            raise UnsupportedSizeError("num_qubits must be positive")
        if self.kind in SITE_KINDS or self.kind in PAIR_KINDS:
            if self.site is None:
                raise SiteIndexError(f"{self.kind.value} needs a site")
            last = self.site + (1 if self.kind in PAIR_KINDS else 0)
            if self.site < 1 or last > n:
                raise SiteIndexError(f"{self.kind.value} at site {self.site} outside [1, {n}]")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
            if len(self.weights) != n:
                raise ValueError(f"expected {n} weights, got {len(self.weights)}")

    def with_gammas(self, gamma_ab: float, gamma_ba: float) -> GeneratorSpec:
        return GeneratorSpec(self.kind, self.num_qubits, gamma_ab, gamma_ba, self.site, self.weights)

    def to_text(self) -> str:
        name = _SHORT_NAME[self.kind]
        if self.kind in SITE_KINDS:
            return f"{name}({self.site})"
        if self.kind in PAIR_KINDS:
            return f"{name}({self.site},{self.site + 1})"
        args = [f"n={self.num_qubits}"]
        if self.kind in GAMMA_KINDS:
            args += [f"gab={self.gamma_ab:g}", f"gba={self.gamma_ba:g}"]
        if self.kind is Kind.H_z_full and self.weights is not None:
            args.append("w=" + ":".join(f"{w:g}" for w in self.weights))
        return f"{name}({','.join(args)})"


_SPEC_RE = re.compile(r"^\s*([A-Za-z0-9]+)\s*\((.*)\)\s*$")


def parse_spec(text: str, n: int | None = None, gamma_ab: float = 1.0,
               gamma_ba: float = 1.0) -> GeneratorSpec:
    """Parse the compact form, e.g. ``"Hz2(n=5,gab=1,gba=1)"``, ``"Y(3)"``, ``"ZY(3,4)"``.

    Keyword arguments in the text override the defaults passed in.
    """
    m = _SPEC_RE.match(text)
    if not m or m.group(1) not in _SHORT:
        raise ValueError(f"cannot parse generator spec {text!r}")
    kind = _SHORT[m.group(1)]
    positional, weights = [], None
    for arg in filter(None, (a.strip() for a in m.group(2).split(","))):
        if "=" in arg:
            key, val = (s.strip() for s in arg.split("=", 1))
            if key == "n":
                n = int(val)
            elif key == "gab":
                gamma_ab = float(val)
            elif key == "gba":
                gamma_ba = float(val)
            elif key == "w":
                weights = tuple(float(w) for w in val.split(":"))
            else:
                raise ValueError(f"unknown key {key!r} in {text!r}")
        else:
            positional.append(int(arg))
    site = None
    if kind in SITE_KINDS:
        if len(positional) != 1:
            raise ValueError(f"{text!r}: single-site kinds take one site")
        site = positional[0]
    elif kind in PAIR_KINDS:
        if len(positional) != 2 or positional[1] != positional[0] + 1:
            raise ValueError(f"{text!r}: pair kinds take two adjacent sites")
        site = positional[0]
    elif positional:
        raise ValueError(f"{text!r}: unexpected positional arguments")
    if n is None:
        raise ValueError(f"{text!r}: number of qubits not given")
    return GeneratorSpec(kind, n, gamma_ab, gamma_ba, site, weights)


def _zz(n: int, i: int) -> PauliString:
    return PauliString.from_sites(n, {i: "Z", i + 1: "Z"})


def _bonds(n: int, parity: int) -> PauliSum:
    return PauliSum.from_strings(n, [(1.0, _zz(n, i)) for i in range(1, n) if i % 2 == parity])


def x_sublattice(n: int, parity: int) -> PauliSum:
    """Sum of ``X_j`` over sites ``j`` with ``j % 2 == parity``."""
    return PauliSum.from_strings(
        n, [(1.0, PauliString.single(n, j, "X")) for j in range(1, n + 1) if j % 2 == parity]
    )


def build(spec: GeneratorSpec) -> PauliSum:
    n, kind = spec.num_qubits, spec.kind
    if kind in SITE_KINDS:
        return PauliSum.from_string(PauliString.single(n, spec.site, SITE_KINDS[kind]))
    if kind in PAIR_KINDS:
        a, b = PAIR_KINDS[kind]
        return PauliSum.from_string(PauliString.from_sites(n, {spec.site: a, spec.site + 1: b}))
    if kind is Kind.H_AB:
        return _bonds(n, 0)
    if kind is Kind.H_BA:
        return _bonds(n, 1)
    if kind is Kind.H_z2:
        return _bonds(n, 0).scale(spec.gamma_ab) + _bonds(n, 1).scale(spec.gamma_ba)
    if kind is Kind.X_even:
        return x_sublattice(n, 0)
    if kind is Kind.X_odd:
        return x_sublattice(n, 1)
    if kind is Kind.H_x_full:
        return x_sublattice(n, 0) + x_sublattice(n, 1)
    if kind is Kind.H_z_full:
        weights = spec.weights or tuple(float(j) for j in range(1, n + 1))
        onsite = PauliSum.from_strings(
            n, [(w, PauliString.single(n, j, "Z")) for j, w in enumerate(weights, start=1)]
        )
        return onsite + build(GeneratorSpec(Kind.H_z2, n, spec.gamma_ab, spec.gamma_ba))
    raise AssertionError(kind)


def _require(n: int, minimum: int = 3) -> None:
    if n < minimum:
        raise UnsupportedSizeError(f"construction needs n >= {minimum}, got {n}")


def _sum(n: int, coef: float, factors: list[dict[int, str]]) -> PauliSum:
    return PauliSum.from_strings(n, [(coef, PauliString.from_sites(n, f)) for f in factors])


def build_h_yz(n: int, gamma_ab: float, gamma_ba: float) -> PauliSum:
    """Printed ``H_yz`` sum: ``H^e_yz`` for odd ``n``, ``H^o_yz`` for even ``n``."""
    _require(n)
    if n % 2:
        ab = [{2 * j: "Y", 2 * j + 1: "Z"} for j in range(1, (n - 1) // 2 + 1)]
        ba = [{2 * j + 1: "Z", 2 * j + 2: "Y"} for j in range(0, (n - 3) // 2 + 1)]
    else:
        ab = [{2 * j: "Z", 2 * j + 1: "Y"} for j in range(1, n // 2)]
        ba = [{2 * j + 1: "Y", 2 * j + 2: "Z"} for j in range(0, n // 2)]
    return _sum(n, gamma_ab, ab) + _sum(n, gamma_ba, ba)


def build_h_zxz(n: int, gamma_ab: float, gamma_ba: float) -> PauliSum:
    """Printed ``H_zxz = 2 g_AB g_BA sum_j Z_{2j-1} X_{2j} Z_{2j+1}``."""
    _require(n)
    last = (n - 1) // 2 if n % 2 else n // 2 - 1
    return _sum(n, 2 * gamma_ab * gamma_ba,
                [{2 * j - 1: "Z", 2 * j: "X", 2 * j + 1: "Z"} for j in range(1, last + 1)])


def build_second_commutator_display(n: int, gamma_ab: float, gamma_ba: float,
                                    shift_zxz: bool = False) -> PauliSum:
    """Printed three-group sum ``g_AB^2 (X..) + H_zxz + g_BA^2 (X..)``.

    ``shift_zxz`` moves every ZXZ term one site to the right, which is where
    the even-``n`` chain with odd-site X actually puts them.
    """
    _require(n)
    if n % 2:
        xa = [{2 * j: "X"} for j in range(1, (n - 1) // 2 + 1)]
        xb = [{2 * j + 2: "X"} for j in range(0, (n - 3) // 2 + 1)]
    else:
        xa = [{2 * j + 1: "X"} for j in range(1, n // 2)]
        xb = [{2 * j + 1: "X"} for j in range(0, n // 2)]
    zxz = build_h_zxz(n, gamma_ab, gamma_ba)
    if shift_zxz:
        if n % 2:
            raise UnsupportedSizeError("the shifted ZXZ group only exists for even n")
        zxz = PauliSum(n, {(x << 1, z << 1): c for (x, z), c in zxz.terms.items()})
    return _sum(n, gamma_ab**2, xa) + zxz + _sum(n, gamma_ba**2, xb)


def zxz_pattern(n: int, center_parity: int, coef: float = 1.0) -> PauliSum:
    """``coef * sum Z_{c-1} X_c Z_{c+1}`` over interior centers ``c`` of one parity."""
    _require(n)
    return _sum(n, coef, [{c - 1: "Z", c: "X", c + 1: "Z"}
                          for c in range(2, n) if c % 2 == center_parity])
