"""Command-line interface: parameters, identity suites, certificate checks.

Subcommands:

* ``param``   one graph, one parameter (theta-bar, chi-vec, chromatic,
              spectral, onehom)
* ``verify``  identity suite over a pair of graphs, or over seeded
              random pairs
* ``qverify`` a quantum coloring certificate file
* ``report``  every parameter of one graph in a single record

Graphs are named generator specs like ``cycle:5``, ``petersen`` or
``omega:4``, or paths to edge-list files.  Records are JSON, printed to
stdout or written with ``--out``.  Exit codes: 0 success, 1 usage or
parse error, 2 solver non-convergence, 3 validation failure (including
failed identity or certificate checks).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .errors import (
    CapacityError,
    ConvergenceError,
    DimensionError,
    DomainError,
    FeasibilityError,
    LimitExceededError,
    NotPsdError,
    ParseError,
    ValidationError,
    VecchromError,
)
from .graphs import (
    GENERATOR_FAMILIES,
    Graph,
    edge_hash,
    erdos_renyi,
    generate,
    is_bipartite,
    load_graph,
    parse_edge_list,
)
from .identities import (
    IDENTITY_TOL_DEFAULT,
    SDP_CAP_DEFAULT,
    SUITES,
    chain_checks,
    run_suite,
)
from .params import (
    CHROMATIC_CAP_DEFAULT,
    chi_vec,
    chromatic_number,
    one_homogeneous_check,
    spectral_lower_bound,
    spectral_vector_chromatic,
    theta_bar,
)
from .quantum import load_certificate, verify_quantum_hom
from .sdp import SolverConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2
EXIT_VALIDATION = 3


class UsageError(VecchromError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from sys.exit(2)
        raise UsageError(message)


def parse_graph_file(path_or_text: str, label: str = "") -> Graph:
    """Accept either a path to an edge-list file or the text itself."""
    if os.path.exists(path_or_text):
        return load_graph(path_or_text, label=label)
    return parse_edge_list(path_or_text, label=label)


def resolve_graph(spec: str, *, omega_cap: int = 10) -> Graph:
    """Interpret a CLI graph argument as a generator spec or a file."""
    if os.path.exists(spec):
        return load_graph(spec, label=os.path.basename(spec))
    family, _, size = spec.partition(":")
    if family in GENERATOR_FAMILIES:
        try:
            n = int(size) if size else 0
        except ValueError:
            raise UsageError(f"bad size in graph spec {spec!r}")
        return generate(family, n, omega_cap=omega_cap)
    raise UsageError(
        f"{spec!r} is neither a file nor a generator spec "
        f"(families: {', '.join(GENERATOR_FAMILIES)})"
    )


def _graph_descriptor(G: Graph) -> dict:
    return {"label": G.label, "n": G.n, "m": G.edge_count, "edge_hash": edge_hash(G)}


def _config_snapshot(args) -> dict:
    return {
        "tol": args.tol,
        "gap_tol": args.gap_tol,
        "max_iter": args.max_iter,
        "cap": args.cap,
        "chromatic_cap": args.chromatic_cap,
        "seed": getattr(args, "seed", None),
        "identity_tol": getattr(args, "identity_tol", None),
    }


def _base_record(command: str, args, graphs: list[Graph]) -> dict:
    return {
        "tool": {"name": "vecchrom", "version": __version__},
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "config": _config_snapshot(args),
        "graphs": [_graph_descriptor(G) for G in graphs],
    }


def _solver_config(args) -> SolverConfig:
    return SolverConfig(tol=args.tol, gap_tol=args.gap_tol, max_iter=args.max_iter)


def _param_payload(res) -> dict:
    out = {"value": res.value, "gap": res.gap, "method": res.method}
    if res.residuals is not None:
        out["residuals"] = list(res.residuals)
    return out


def _cap_check(G: Graph, cap: int):
    if G.n > cap:
        raise CapacityError(f"graph order {G.n} exceeds the SDP cap {cap}")


def cmd_param(args) -> tuple[dict, int]:
    G = resolve_graph(args.graph)
    cfg = _solver_config(args)
    record = _base_record("param", args, [G])
    record["which"] = args.which
    code = EXIT_OK
    if args.which == "theta-bar":
        _cap_check(G, args.cap)
        try:
            record["result"] = _param_payload(theta_bar(G, cfg))
        except ConvergenceError as exc:
            record["result"] = _param_payload(exc.partial) if exc.partial else None
            record["status"] = "solver_failure"
            return record, EXIT_SOLVER
    elif args.which == "chi-vec":
        _cap_check(G, args.cap)
        try:
            record["result"] = _param_payload(chi_vec(G, cfg))
        except ConvergenceError as exc:
            record["result"] = _param_payload(exc.partial) if exc.partial else None
            record["status"] = "solver_failure"
            return record, EXIT_SOLVER
    elif args.which == "chromatic":
        try:
            record["result"] = {"value": chromatic_number(G, args.limit, cap=args.chromatic_cap)}
        except LimitExceededError as exc:
            record["result"] = {"value": f"> {exc.limit}"}
    elif args.which == "spectral":
        result = {}
        if G.edge_count == 0:
            result["vector_chromatic"] = 1.0
            result["method"] = "convention"
        else:
            try:
                res = spectral_vector_chromatic(G)
                result["vector_chromatic"] = res.value
                result["method"] = res.method
            except DomainError:
                flag, _ = is_bipartite(G)
                if flag:
                    result["vector_chromatic"] = 2.0
                    result["method"] = "convention"
                else:
                    raise
            result["lower_bound"] = spectral_lower_bound(G)
        record["result"] = result
    else:  # onehom
        rep = one_homogeneous_check(G)
        record["result"] = {
            "is_one_homogeneous": rep.is_one_homogeneous,
            "constants": [list(c) for c in rep.constants],
            "failing_witness": list(rep.failing_witness) if rep.failing_witness else None,
        }
    record["status"] = "ok"
    return record, code


def cmd_verify(args) -> tuple[dict, int]:
    cfg = _solver_config(args)
    if args.random_pairs:
        rng = np.random.default_rng(args.seed)
        pairs = [
            (erdos_renyi(args.size, 0.5, rng=rng, label=f"gnp_{args.size}_a{i}"),
             erdos_renyi(args.size, 0.5, rng=rng, label=f"gnp_{args.size}_b{i}"))
            for i in range(args.random_pairs)
        ]
    else:
        if len(args.graphs) != 2:
            raise UsageError("verify needs two graphs, or --random-pairs N")
        pairs = [(resolve_graph(args.graphs[0]), resolve_graph(args.graphs[1]))]
    record = _base_record("verify", args, [g for p in pairs for g in p])
    record["suite"] = args.suite
    cache: dict = {}
    runs = []
    all_passed = True
    for G, H in pairs:
        checks = run_suite(args.suite, G, H, cfg, args.identity_tol, cache,
                           sdp_cap=args.cap, chromatic_cap=args.chromatic_cap)
        all_passed &= all(c.passed for c in checks)
        runs.append({
            "graphs": [_graph_descriptor(G), _graph_descriptor(H)],
            "identities": [c.as_dict() for c in checks],
        })
    record["pairs"] = runs
    record["all_passed"] = bool(all_passed)
    record["status"] = "ok" if all_passed else "failed"
    return record, EXIT_OK if all_passed else EXIT_VALIDATION


def cmd_qverify(args) -> tuple[dict, int]:
    q = load_certificate(args.certificate)
    rep = verify_quantum_hom(q, tol=args.qtol)
    record = _base_record("qverify", args, [q.source])
    record["certificate"] = {
        "path": args.certificate,
        "d": q.d,
        "n_colors": q.target.n,
    }
    record["report"] = {
        "ok": rep.ok,
        "hermitian": rep.hermitian,
        "idempotent": rep.idempotent,
        "sum_to_identity": rep.sum_to_identity,
        "orthogonality": rep.orthogonality,
        "adjacency": rep.adjacency,
        "witness": rep.witness,
    }
    record["status"] = "ok" if rep.ok else "failed"
    return record, EXIT_OK if rep.ok else EXIT_VALIDATION


def cmd_report(args) -> tuple[dict, int]:
    G = resolve_graph(args.graph)
    _cap_check(G, args.cap)
    cfg = _solver_config(args)
    record = _base_record("report", args, [G])
    params: dict = {}
    code = EXIT_OK
    try:
        params["theta_bar"] = _param_payload(theta_bar(G, cfg))
        params["chi_vec"] = _param_payload(chi_vec(G, cfg))
    except ConvergenceError as exc:
        if exc.partial:
            params["partial"] = _param_payload(exc.partial)
        record["params"] = params
        record["status"] = "solver_failure"
        return record, EXIT_SOLVER
    if G.edge_count:
        params["spectral_lower_bound"] = spectral_lower_bound(G)
    rep = one_homogeneous_check(G)
    params["one_homogeneous"] = rep.is_one_homogeneous
    flag, _ = is_bipartite(G)
    params["bipartite"] = flag
    if G.n <= args.chromatic_cap:
        params["chromatic"] = chromatic_number(G, cap=args.chromatic_cap)
    record["params"] = params
    checks = chain_checks(G, cfg, cache={}, chromatic_cap=args.chromatic_cap)
    record["identities"] = [c.as_dict() for c in checks]
    record["status"] = "ok"
    if not all(c.passed for c in checks):
        record["status"] = "failed"
        code = EXIT_VALIDATION
    return record, code


def build_parser() -> _Parser:
    parser = _Parser(prog="vecchrom", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"vecchrom {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-7, help="solver residual tolerance")
    common.add_argument("--gap-tol", dest="gap_tol", type=float, default=1e-5,
                        help="solver duality-gap tolerance")
    common.add_argument("--max-iter", dest="max_iter", type=int, default=50000)
    common.add_argument("--cap", type=int, default=SDP_CAP_DEFAULT,
                        help="vertex cap for SDP solves")
    common.add_argument("--chromatic-cap", dest="chromatic_cap", type=int,
                        default=CHROMATIC_CAP_DEFAULT,
                        help="vertex cap for exact chromatic numbers")
    common.add_argument("--out", default=None, help="write the JSON record to this file")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized pair generation in suites")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("param", parents=[common], help="one parameter of one graph")
    p.add_argument("graph")
    p.add_argument("--which", required=True,
                   choices=["theta-bar", "chi-vec", "chromatic", "spectral", "onehom"])
    p.add_argument("--limit", type=int, default=None, help="color limit for chromatic")
    p.set_defaults(func=cmd_param)

    p = sub.add_parser("verify", parents=[common], help="identity suite on a pair")
    p.add_argument("graphs", nargs="*", help="two graph specs")
    p.add_argument("--suite", required=True, choices=list(SUITES))
    p.add_argument("--identity-tol", dest="identity_tol", type=float,
                   default=IDENTITY_TOL_DEFAULT)
    p.add_argument("--random-pairs", dest="random_pairs", type=int, default=0,
                   help="run the suite on this many seeded G(n, 1/2) pairs")
    p.add_argument("--size", type=int, default=6, help="vertex count for random pairs")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qverify", parents=[common], help="check a certificate file")
    p.add_argument("certificate")
    p.add_argument("--qtol", type=float, default=1e-7,
                   help="adjacency tolerance (structural checks run at a tenth)")
    p.set_defaults(func=cmd_qverify)

    p = sub.add_parser("report", parents=[common], help="full record for one graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_report)
    return parser


def _emit(record: dict, out: str | None):
    text = json.dumps(record, indent=2, sort_keys=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        record, code = args.func(args)
        _emit(record, args.out)
        return code
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (ValidationError, DomainError, DimensionError, CapacityError,
            NotPsdError, FeasibilityError, LimitExceededError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except VecchromError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
