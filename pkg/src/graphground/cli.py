"""Command-line front end: ``graphground <command> --graph SOURCE [options]``.

Graph sources are family strings (``cycle:6``, ``grid:3x3:open``,
``honeycomb:2x2:periodic``) or paths to edge-list files.  Reports are
JSON (keys sorted, no timestamps) so identical inputs give identical bytes.

Exit codes: 0 success, 2 invalid input, 3 size limit, 4 solver did not
converge, 1 anything else.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bounds, gadget, graph, hamiltonian, stabilizer
from .errors import ConvergenceError, GraphGroundError, InvalidInputError, SizeLimitError

COMMANDS = ("delta", "eta", "spectrum", "bound-check", "gadget", "orbit", "state")
THREADS_ENV = "GRAPHGROUND_THREADS"
STATE_PRINT_LIMIT = 12

EXIT_OK, EXIT_ERROR, EXIT_INPUT, EXIT_SIZE, EXIT_CONVERGENCE = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    graph_source: str
    output: str | None = None
    format: str = "json"
    tol: float = bounds.DEFAULT_TOL
    tol_cluster: float | None = None
    dense_limit: int = hamiltonian.DENSE_MATRIX_LIMIT
    orbit_budget: int = graph.DEFAULT_ORBIT_BUDGET
    threads: int = 1
    seed: int = 0
    dry_run: bool = False
    verify: bool = False
    options: dict = field(default_factory=dict)


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphground", description="Graph-state locality analyses.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--graph", "--target", dest="graph", required=True,
                        help="family string (e.g. cycle:6, grid:3x3:open) or edge-list path")
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--tol", type=float, default=bounds.DEFAULT_TOL)
        sp.add_argument("--tol-cluster", type=float, default=None)
        sp.add_argument("--dense-limit", type=int, default=hamiltonian.DENSE_MATRIX_LIMIT)
        sp.add_argument("--orbit-budget", type=int, default=graph.DEFAULT_ORBIT_BUDGET)
        sp.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default ${THREADS_ENV} or 1)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--dry-run", action="store_true", help="validate inputs only")
        sp.add_argument("--verify", action="store_true", help="also run invariant checks")
        return sp

    common(sub.add_parser("delta", help="minimal stabilizer weight"))
    common(sub.add_parser("eta", help="locality needed for a non-degenerate ground state"))
    sp = common(sub.add_parser("spectrum", help="spectrum of a graph-state Hamiltonian"))
    sp.add_argument("--hamiltonian", choices=("canonical", "minimal", "truncated"), default="canonical")
    sp.add_argument("--d", type=int, default=None, help="locality for --hamiltonian truncated")
    sp.add_argument("--mode", choices=("full", "lowest"), default="full")
    sp.add_argument("--k", type=int, default=None)
    sp = common(sub.add_parser("bound-check", help="fidelity/spectrum trade-off"))
    sp.add_argument("--hamiltonian", choices=("canonical", "truncated", "random"), default="random")
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--samples", type=int, default=10)
    sp = common(sub.add_parser("gadget", help="2-body gadget construction"))
    sp.add_argument("--deltas", type=_float_list, default=[0.2, 0.1, 0.05])
    sp.add_argument("--mode", choices=("spectral", "structural"), default="spectral")
    sp.add_argument("--construction", choices=("auto", "linear-cluster", "generic", "honeycomb"),
                    default="auto")
    sp.add_argument("--normalized", action="store_true")
    common(sub.add_parser("orbit", help="minimum degree over the local-complementation orbit"))
    common(sub.add_parser("state", help="graph-state amplitudes and generators"))
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    base = {"command", "graph", "out", "format", "tol", "tol_cluster", "dense_limit",
            "orbit_budget", "threads", "seed", "dry_run", "verify"}
    opts = {k: v for k, v in vars(args).items() if k not in base}
    return RunConfig(
        command=args.command,
        graph_source=args.graph,
        output=args.out,
        format=args.format,
        tol=args.tol,
        tol_cluster=args.tol_cluster,
        dense_limit=args.dense_limit,
        orbit_budget=args.orbit_budget,
        threads=args.threads if args.threads is not None else _default_threads(),
        seed=args.seed,
        dry_run=args.dry_run,
        verify=args.verify,
        options=opts,
    )


# --------------------------------------------------------------------------
# commands


def _cmd_delta(G, cfg):
    value, witness = stabilizer.delta_with_witness(G)
    out = {"delta": value, "witness": witness.label(), "method": "cut-rank"}
    if cfg.verify:
        checks = {}
        if G.n <= stabilizer.BRUTEFORCE_MAX_N:
            checks["bruteforce"] = stabilizer.delta_via_bruteforce(G)
        orb = graph.lc_orbit_min_degree(G, cfg.orbit_budget)
        checks["lc_orbit"] = orb.delta if orb.exact else None
        checks["lc_orbit_exact"] = orb.exact
        checks["passed"] = all(v in (None, value) for k, v in checks.items() if k in ("bruteforce", "lc_orbit"))
        out["verify"] = checks
    return out


def _cmd_eta(G, cfg):
    rep = stabilizer.stabilizer_report(G)
    out = {k: rep[k] for k in ("delta", "eta", "s_by_d", "degeneracy_bound_by_d")}
    if cfg.verify:
        S = stabilizer.graph_stabilizer(G)
        full = stabilizer.low_weight_subgroup(S, rep["eta"])
        out["verify"] = {
            "eta_at_least_3": rep["eta"] >= 3,
            "basis_max_weight": max(g.weight for g in full.basis),
            "passed": rep["eta"] >= 3 and full.complete and max(g.weight for g in full.basis) <= rep["eta"],
        }
    return out


def _hamiltonian_for(G, kind, d):
    if kind == "canonical":
        return hamiltonian.canonical_hamiltonian(G)
    if kind == "minimal":
        return hamiltonian.canonical_hamiltonian(G, minimal_weight=True)
    if d is None:
        raise InvalidInputError("--hamiltonian truncated needs --d")
    return hamiltonian.truncated_stabilizer_hamiltonian(G, d)


def _cmd_spectrum(G, cfg):
    o = cfg.options
    H = _hamiltonian_for(G, o["hamiltonian"], o["d"])
    rep = hamiltonian.spectrum(H, o["mode"], k=o["k"], tol=cfg.tol, tol_cluster=cfg.tol_cluster,
                               seed=cfg.seed, dense_limit=cfg.dense_limit)
    out = rep.to_json()
    out["hamiltonian"] = {"kind": o["hamiltonian"], "terms": len(H), "locality": H.locality}
    out["fidelity"] = hamiltonian.max_fidelity(hamiltonian.graph_state_vector(G), rep.ground_space)
    if cfg.verify:
        psi = hamiltonian.graph_state_vector(G)
        e_g = H.expectation(psi)
        out["verify"] = {
            "graph_state_energy": e_g,
            "passed": e_g >= rep.ground_energy - 1e-9 * max(1.0, rep.frobenius_norm),
        }
    return out


def _cmd_bound_check(G, cfg):
    o = cfg.options
    results = []
    if o["hamiltonian"] == "random":
        rng = np.random.default_rng(cfg.seed)
        for i in range(o["samples"]):
            H = hamiltonian.random_local_hamiltonian(G.n, o["d"], rng)
            r = bounds.theorem4_check(G, H, cfg.tol).to_json()
            r["sample"] = i
            results.append(r)
    else:
        H = _hamiltonian_for(G, o["hamiltonian"], o["d"])
        results.append(bounds.theorem4_check(G, H, cfg.tol).to_json())
    out = {"results": results, "all_satisfied": all(r["satisfied"] for r in results)}
    if cfg.verify and results:
        # shift and scale invariances on the first instance
        H0 = (hamiltonian.random_local_hamiltonian(G.n, o["d"], np.random.default_rng(cfg.seed))
              if o["hamiltonian"] == "random" else _hamiltonian_for(G, o["hamiltonian"], o["d"]))
        a = bounds.theorem4_check(G, H0, cfg.tol)
        b = bounds.theorem4_check(G, 3.0 * H0, cfg.tol)
        c = bounds.theorem4_check(G, H0.shifted(1.5), cfg.tol)
        out["verify"] = {
            "scale_invariant": math.isclose(a.lhs, b.lhs, rel_tol=1e-9, abs_tol=1e-12),
            "shift_satisfied": c.satisfied,
            "passed": math.isclose(a.lhs, b.lhs, rel_tol=1e-9, abs_tol=1e-12) and c.satisfied,
        }
    return out


def _gadget_builder(G, cfg):
    o = cfg.options
    kind = o["construction"]
    spectral = o["mode"] == "spectral"
    name = G.name.split(":")[0] if G.name else ""
    if kind == "auto":
        kind = {"cycle": "linear-cluster", "honeycomb": "honeycomb"}.get(name, "generic")
    if kind == "linear-cluster":
        if name != "cycle":
            raise InvalidInputError("linear-cluster construction needs a cycle:N target")
        return kind, lambda d: gadget.linear_cluster_gadget(G.n, d, normalized=o["normalized"], spectral=spectral)
    if kind == "honeycomb":
        parts = G.name.split(":")
        if name != "honeycomb" or len(parts) < 3 or parts[2] != "periodic":
            raise InvalidInputError("honeycomb construction needs a honeycomb:RxC:periodic target")
        rows, cols = (int(t) for t in parts[1].split("x"))
        return kind, lambda d: gadget.honeycomb_gadget(
            rows, cols, d, gadget.default_honeycomb_coefficients(d, G.n), spectral=spectral)
    return kind, lambda d: gadget.generic_gadget(G, d, normalized=o["normalized"], spectral=spectral,
                                                 seed=cfg.seed)


def _cmd_gadget(G, cfg):
    kind, build = _gadget_builder(G, cfg)
    deltas = cfg.options["deltas"]
    out = {"construction": kind}
    if deltas:
        structural = cfg.options["mode"] == "structural"
        layout_only = build(deltas[0]) if structural else _structural(kind, G, cfg, deltas[0])
        out.update(layout_only.to_json())
    sweep = gadget.gadget_fidelity_sweep(build, deltas)
    out["sweep"] = [p.to_json() for p in sweep]
    spectral = any(p.fidelity is not None for p in sweep)
    out["fidelity_increasing"] = gadget.strictly_increasing(sweep, "fidelity") if spectral else None
    out["dynamic_range_increasing"] = gadget.strictly_increasing(sweep, "dynamic_range")
    if cfg.verify:
        ok = all(p["total_n"] == out["layout"]["total_n"] for p in out["sweep"]) if deltas else True
        out["verify"] = {"locality_at_most_2": out.get("locality", 0) <= 2, "passed": ok and out.get("locality", 0) <= 2}
    return out


def _structural(kind, G, cfg, delta):
    opts = dict(cfg.options, mode="structural", construction=kind)
    return _gadget_builder(G, RunConfig(**{**asdict(cfg), "options": opts}))[1](delta)


def _cmd_orbit(G, cfg):
    r = graph.lc_orbit_min_degree(G, cfg.orbit_budget)
    out = {"min_degree": r.min_degree, "delta": r.delta, "witness": list(r.witness),
           "exact": r.exact, "visited": r.visited}
    if cfg.verify:
        d = stabilizer.delta_via_rank(G)
        out["verify"] = {"delta_cut_rank": d, "passed": (d == r.delta) if r.exact else d <= r.delta}
    return out


def _cmd_state(G, cfg):
    S = stabilizer.graph_stabilizer(G)
    out = {"generators": [g.label() for g in S.generators], "edges": [list(e) for e in G.edges()]}
    if G.n <= STATE_PRINT_LIMIT:
        psi = hamiltonian.graph_state_vector(G)
        out["amplitudes"] = [[float(a.real), float(a.imag)] for a in psi]
    else:
        out["amplitudes"] = None
        out["note"] = f"amplitudes printed only for n <= {STATE_PRINT_LIMIT}"
    if cfg.verify:
        psi = hamiltonian.graph_state_vector(G)
        from .pauli import apply_to_state
        err = max(float(np.linalg.norm(apply_to_state(g, psi) - psi)) for g in S.generators)
        out["verify"] = {"max_generator_residual": err, "passed": err < 1e-10}
    return out


_HANDLERS = {
    "delta": _cmd_delta,
    "eta": _cmd_eta,
    "spectrum": _cmd_spectrum,
    "bound-check": _cmd_bound_check,
    "gadget": _cmd_gadget,
    "orbit": _cmd_orbit,
    "state": _cmd_state,
}

# commands whose analysis assumes a connected graph on at least 3 vertices
_NEEDS_CONNECTED = {"delta", "eta", "bound-check", "gadget", "orbit"}


def _config_json(cfg: RunConfig) -> dict:
    out = asdict(cfg)
    out.pop("output")
    out.pop("dry_run")
    out["options"] = {k: v for k, v in sorted(cfg.options.items())}
    return out


def _to_csv(report: dict) -> str:
    """Flatten the tabular part of a report (sweep or results rows) to CSV."""
    rows = report.get("sweep") or report.get("results")
    if rows is None:
        rows = [{k: v for k, v in report.items() if not isinstance(v, (dict, list))}]
    buf = io.StringIO()
    keys = sorted({k for r in rows for k in r if not isinstance(r[k], (dict, list))})
    w = csv.DictWriter(buf, fieldnames=keys, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _clean(obj):
    if isinstance(obj, float):
        return None if not math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns ``(exit status, report text)``."""
    if cfg.command not in _HANDLERS:
        return EXIT_INPUT, json.dumps({"error": f"unknown command {cfg.command!r}"})
    try:
        G = graph.load_graph(cfg.graph_source)
        if cfg.command in _NEEDS_CONNECTED:
            graph.require_connected(G)
        report = {"command": cfg.command, "graph": str(G), "n": G.n, "config": _config_json(cfg)}
        if cfg.dry_run:
            report["dry_run"] = True
        else:
            report.update(_HANDLERS[cfg.command](G, cfg))
        status = EXIT_OK
        if cfg.verify and not cfg.dry_run and not report.get("verify", {}).get("passed", True):
            status = EXIT_ERROR
    except (InvalidInputError, OSError, ValueError) as exc:
        return EXIT_INPUT, json.dumps({"error": str(exc), "kind": "invalid input"})
    except SizeLimitError as exc:
        return EXIT_SIZE, json.dumps({"error": str(exc), "kind": "size limit"})
    except ConvergenceError as exc:
        return EXIT_CONVERGENCE, json.dumps({"error": str(exc), "kind": "convergence"})
    except GraphGroundError as exc:
        return EXIT_ERROR, json.dumps({"error": str(exc), "kind": type(exc).__name__})
    report = _clean(report)
    if cfg.format == "csv":
        return status, _to_csv(report)
    return status, json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    status, text = run(cfg)
    if status in (EXIT_INPUT, EXIT_SIZE, EXIT_CONVERGENCE) or (status and text.startswith('{"error')):
        print(text, file=sys.stderr)
        return status
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
