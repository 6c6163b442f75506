"""Pauli-string Lie algebra engine for long-range CNOT synthesis under QAOA dynamics."""

__version__ = "0.1.0"

from .closure import ClosureResult, closure, is_universal
from .cost import CostModel
from .hamiltonians import GeneratorSpec, Kind, build, parse_spec
from .pauli import (
    PauliString,
    PauliSum,
    commutator_strings,
    commutator_sums,
    hs_inner,
    multiply,
    proportional_to,
)
from .synthesis import (
    bound_table,
    decompose_cnot,
    derive_zix,
    extend_step,
    synthesize_long_range,
)

__all__ = [
    "ClosureResult",
    "CostModel",
    "GeneratorSpec",
    "Kind",
    "PauliString",
    "PauliSum",
    "bound_table",
    "build",
    "closure",
    "commutator_strings",
    "commutator_sums",
    "decompose_cnot",
    "derive_zix",
    "extend_step",
    "hs_inner",
    "is_universal",
    "multiply",
    "parse_spec",
    "proportional_to",
    "synthesize_long_range",
]
