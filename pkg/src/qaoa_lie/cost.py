"""Alternation accounting for derivation trees.

Two counts are kept apart:

* ``alternations`` is the stage count used for the O(n) bound.  A leaf costs
  its table entry, a selection costs its parent, and a commutator costs
  ``scale * (left + right) + overhead``.  A finished target (a node flagged
  ``checkpoint``) enters later stages as an established generator costing
  ``established``; its own total is added once, sequentially.
* ``pulse_count`` is the length of the group-commutator compilation of the
  same tree (leaf 1, commutator ``2 * (left + right)``, echoed selection
  ``2 * parent``).  It matches ``numeric.compile`` exactly.

The default table charges nothing for the native drives (and for the closer
string ``X Y``), 5 for each single-site and pair primitive, and one stage per
commutator.  That yields 3 stages for ``Z_k I X_{k+2}`` and 12 per extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .hamiltonians import Kind

__all__ = ["CostModel", "DEFAULT_PRIMITIVE_COSTS", "DEFAULT_COST_TABLE"]

DEFAULT_PRIMITIVE_COSTS: dict[Kind, int] = {
    Kind.H_z_full: 0,
    Kind.H_x_full: 0,
    Kind.H_AB: 0,
    Kind.H_BA: 0,
    Kind.H_z2: 0,
    Kind.X_even: 0,
    Kind.X_odd: 0,
    Kind.XY_pair: 0,
    Kind.X_site: 5,
    Kind.Y_site: 5,
    Kind.Z_site: 5,
    Kind.YZ_pair: 5,
    Kind.ZY_pair: 5,
}

_RULE_KEYS = ("commutator_scale", "commutator_overhead", "established")

DEFAULT_COST_TABLE = """\
# Alternation cost table: one "key = integer" per line.
#
# Which count "p = 3" refers to (commutator nestings, primitive pulses or
# Hamiltonian alternations) is not pinned down.  This table counts commutator
# stages: native drives are free, every commutator adds one stage.
#
# The single-site and pair primitives together stay within the p <= 10
# envelope for the two strings one extension uses (5 + 5); two commutator
# stages on top give t = 12.
#
# commutator cost = commutator_scale * (left + right) + commutator_overhead
commutator_scale = 1
commutator_overhead = 1
# cost of an already generated target when it feeds the next stage
established = 0

H_z_full = 0
H_x_full = 0
H_AB = 0
H_BA = 0
H_z2 = 0
X_even = 0
X_odd = 0
# closer string of the Z_k I X_{k+2} chain; charged inside p = 3
XY_pair = 0
X_site = 5
Y_site = 5
Z_site = 5
YZ_pair = 5
ZY_pair = 5
"""


@dataclass(frozen=True)
class CostModel:
    primitive_costs: Mapping[Kind, int] = field(default_factory=lambda: dict(DEFAULT_PRIMITIVE_COSTS))
    commutator_scale: int = 1
    commutator_overhead: int = 1
    established: int = 0

    def __post_init__(self):
        costs = {Kind(k): int(v) for k, v in self.primitive_costs.items()}
        missing = set(Kind) - set(costs)
        if missing:
            raise ValueError(f"cost table lacks {sorted(k.value for k in missing)}")
        if any(v < 0 for v in costs.values()):
            raise ValueError("primitive costs must be nonnegative")
        if min(self.commutator_scale, self.commutator_overhead, self.established) < 0:
            raise ValueError("commutator rule entries must be nonnegative")
        object.__setattr__(self, "primitive_costs", costs)

    # -- table I/O --------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> CostModel:
        """Parse ``key = integer`` lines; unknown keys are errors, missing ones default."""
        costs = dict(DEFAULT_PRIMITIVE_COSTS)
        rule = {"commutator_scale": 1, "commutator_overhead": 1, "established": 0}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected 'key = integer'")
            key, val = (s.strip() for s in line.split("=", 1))
            try:
                num = int(val)
            except ValueError:
                raise ValueError(f"line {lineno}: {val!r} is not an integer") from None
            if key in rule:
                rule[key] = num
            elif key in Kind.__members__:
                costs[Kind[key]] = num
            else:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
        return cls(costs, rule["commutator_scale"], rule["commutator_overhead"], rule["established"])

    @classmethod
    def from_file(cls, path: str | Path) -> CostModel:
        return cls.from_text(Path(path).read_text())

    def to_text(self) -> str:
        lines = [f"{k} = {getattr(self, a)}" for k, a in zip(
            _RULE_KEYS, ("commutator_scale", "commutator_overhead", "established"))]
        lines += [f"{k.value} = {self.primitive_costs[k]}" for k in Kind]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "commutator_scale": self.commutator_scale,
            "commutator_overhead": self.commutator_overhead,
            "established": self.established,
            "primitive_costs": {k.value: self.primitive_costs[k] for k in Kind},
        }

    # -- recursion --------------------------------------------------------

    def primitive(self, kind: Kind) -> int:
        return self.primitive_costs[Kind(kind)]

    def combine(self, left: int, right: int) -> int:
        return self.commutator_scale * (left + right) + self.commutator_overhead

    def stage_cost(self, dv) -> int:
        """Cost of the stage ending at ``dv``; finished targets below count as established."""
        from .synthesis import Commutator, Leaf, Selection

        def inner(node) -> int:
            if node is not dv and node.checkpoint:
                return self.established
            if isinstance(node, Leaf):
                return self.primitive(node.spec.kind)
            if isinstance(node, Selection):
                return inner(node.parent)
            if isinstance(node, Commutator):
                return self.combine(inner(node.left), inner(node.right))
            raise TypeError(type(node))

        return inner(dv)

    def alternations(self, dv) -> int:
        """Total alternations: this stage plus every earlier finished target it builds on."""
        total = self.stage_cost(dv)
        for cp in _frontier_checkpoints(dv):
            total += self.alternations(cp)
        return total

    def iteration_constant(self) -> int:
        """Cost ``t`` of one extension step ``[[T, YZ], ZY]`` on an established target."""
        inner = self.combine(self.established, self.primitive(Kind.YZ_pair))
        return self.combine(inner, self.primitive(Kind.ZY_pair))

    @staticmethod
    def pulse_count(dv) -> int:
        """Pulses in the group-commutator compilation of ``dv``."""
        from .synthesis import Commutator, Leaf, Selection, echo_partner

        if isinstance(dv, Leaf):
            return 1
        if isinstance(dv, Commutator):
            return 2 * (CostModel.pulse_count(dv.left) + CostModel.pulse_count(dv.right))
        if isinstance(dv, Selection):
            factor = 2 if echo_partner(dv) is not None else 1
            return factor * CostModel.pulse_count(dv.parent)
        raise TypeError(type(dv))


def _frontier_checkpoints(dv) -> list:
    found = []

    def walk(node):
        for child in node.children():
            if child.checkpoint:
                found.append(child)
            else:
                walk(child)

    walk(dv)
    return found
