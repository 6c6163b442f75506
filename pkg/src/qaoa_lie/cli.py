"""Command-line front end.

Subcommands: verify-identities, synthesize-cnot, closure-dim, cost-report.
Exit codes: 0 pass, 1 check failed (bound, tolerance, universality), 2 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from . import __version__
from .closure import MAX_CLOSURE_QUBITS, is_universal
from .cost import CostModel
from .errors import QaoaLieError
from .identities import randomized_coupling_check, verify_identities
from .numeric import MAX_QUBITS, compile, distance_up_to_phase, expm_pulse
from .synthesis import bound_table, synthesize_long_range

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    n: int | None = None
    k: int = 1
    d: int | None = None
    gamma_ab: float = 1.0
    gamma_ba: float = 1.0
    hz_weights: list[float] | None = None
    t_step: float = 0.05
    tol: float = 0.1
    compile: bool = False
    cost_table_path: str | None = None
    output_format: str = "json"
    seed: int = 0
    n_min: int | None = None
    n_max: int | None = None
    dump_basis: bool = False
    extra: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        if self.n is not None and self.n < 1:
            raise UsageError("--n must be at least 1")
        if self.t_step <= 0:
            raise UsageError("--t must be positive")
        if self.hz_weights is not None and self.n is not None and len(self.hz_weights) != self.n:
            raise UsageError(f"--weights needs {self.n} values")

    def cost_model(self) -> CostModel:
        if self.cost_table_path is None:
            return CostModel()
        try:
            return CostModel.from_file(self.cost_table_path)
        except OSError as exc:
            raise UsageError(f"cannot read cost table: {exc}") from None

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("extra")
        return out


def _weights(text: str) -> list[float]:
    try:
        return [float(w) for w in text.replace(":", ",").split(",") if w.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma-ab", type=float, default=1.0)
    common.add_argument("--gamma-ba", type=float, default=1.0)
    common.add_argument("--cost-table", dest="cost_table_path", default=None,
                        help="plain-text 'kind = integer' cost table")
    common.add_argument("--format", dest="output_format", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="qaoa-lie", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-identities", parents=[common],
                       help="check every printed commutator identity symbolically")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("synthesize-cnot", parents=[common],
                       help="derive Z_k I..I X_{k+d} and count alternations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=int, default=None, help="distance (default n - k)")
    p.add_argument("--compile", action="store_true",
                   help="also compile to group-commutator pulses and measure the distance")
    p.add_argument("--t", dest="t_step", type=float, default=0.05,
                   help="evolution angle of the compiled target")
    p.add_argument("--tol", type=float, default=0.1)

    p = sub.add_parser("closure-dim", parents=[common],
                       help="dimension of the Lie algebra generated by H_z and H_x")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights", dest="hz_weights", type=_weights, default=None,
                   help="on-site Z weights, comma separated (default 1,2,..,n)")
    p.add_argument("--dump-basis", action="store_true")

    p = sub.add_parser("cost-report", parents=[common],
                       help="alternations of CNOT_{1,n} over a range of n")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=10)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    known = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in known})
    cfg.validate()
    return cfg


def _envelope(command: str, cfg: RunConfig, body: dict) -> dict:
    return {"tool": "qaoa-lie", "version": __version__, "command": command,
            "config": cfg.to_json(), **body}


def cmd_verify_identities(cfg: RunConfig) -> tuple[int, dict, str]:
    checks = verify_identities(cfg.n, cfg.gamma_ab, cfg.gamma_ba, cfg.cost_model())
    checks.append(randomized_coupling_check(cfg.n, cfg.seed))
    failed = any(c.status == "FAIL" for c in checks)
    body = {"checks": [c.to_json() for c in checks], "ok": not failed}
    lines = [f"{c.status:10s} {c.name}" + (f"  [{c.detail}]" if c.detail else "") for c in checks]
    return (EXIT_FAIL if failed else EXIT_OK), body, "\n".join(lines)


def cmd_synthesize_cnot(cfg: RunConfig) -> tuple[int, dict, str]:
    model = cfg.cost_model()
    d = cfg.d if cfg.d is not None else cfg.n - cfg.k
    report = synthesize_long_range(cfg.n, cfg.k, d, model, cfg.gamma_ab, cfg.gamma_ba)
    body = {"report": report.to_json(model)}
    text = report.to_text(model)
    ok = report.bound_ok
    if cfg.compile:
        if cfg.n > MAX_QUBITS:
            raise UsageError(f"--compile supports n <= {MAX_QUBITS}")
        seq = compile(report.derivation, cfg.t_step)
        dist = distance_up_to_phase(seq.unitary(), expm_pulse(report.value, cfg.t_step))
        ok = ok and dist < cfg.tol
        body["compiled"] = {
            "t": cfg.t_step,
            "pulses": len(seq),
            "predicted_pulses": CostModel.pulse_count(report.derivation),
            "distance": dist,
            "tol": cfg.tol,
            "gaps": seq.gaps,
        }
        text += (f"\n\nCompiled at t={cfg.t_step:g}: {len(seq)} pulses, "
                 f"distance {dist:.3e} (tol {cfg.tol:g})")
        for gap in seq.gaps:
            text += f"\n  gap: {gap}"
    body["ok"] = ok
    return (EXIT_OK if ok else EXIT_FAIL), body, text


def cmd_closure(cfg: RunConfig) -> tuple[int, dict, str]:
    if cfg.n > MAX_CLOSURE_QUBITS:
        raise UsageError(f"closure-dim supports n <= {MAX_CLOSURE_QUBITS}")
    universal, result = is_universal(cfg.n, cfg.hz_weights, cfg.gamma_ab, cfg.gamma_ba)
    body = {"closure": result.to_json(supports=cfg.dump_basis), "universal": universal}
    text = (f"n={result.n} dimension {result.dimension} / {result.target_dimension}, "
            f"saturated {result.saturated}, rounds {result.rounds}, "
            f"sizes {result.basis_size_by_round}")
    return (EXIT_OK if universal else EXIT_FAIL), body, text


def cmd_cost_report(cfg: RunConfig) -> tuple[int, dict, str]:
    if cfg.n_min is None or cfg.n_max is None or not 3 <= cfg.n_min <= cfg.n_max <= 16:
        raise UsageError("need 3 <= --n-min <= --n-max <= 16")
    table = bound_table(cfg.n_min, cfg.n_max, cfg.cost_model())
    body = {"table": table.to_json()}
    lines = [f"{'n':>3} {'p_total':>8} {'t*n':>6}"]
    lines += [f"{n:>3} {p:>8} {table.t * n:>6}" for n, p in table.rows]
    lines.append(f"slope {table.slope}  t {table.t}  affine {table.affine}")
    return (EXIT_OK if table.ok else EXIT_FAIL), body, "\n".join(lines)


COMMANDS = {
    "verify-identities": cmd_verify_identities,
    "synthesize-cnot": cmd_synthesize_cnot,
    "closure-dim": cmd_closure,
    "cost-report": cmd_cost_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        status, body, text = COMMANDS[args.command](cfg)
    except (UsageError, QaoaLieError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output_format == "json":
        print(json.dumps(_envelope(args.command, cfg, body), indent=2, sort_keys=True))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
