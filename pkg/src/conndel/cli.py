"""Command-line front end.

Subcommands: solve, kernelize, gen {pcpsc,vdpsc}, oracle {wbd,pcpsc,
vdpsc,is}, verify {wbd,pcpsc,vdpsc}.  Reports are emitted as sorted
``key: value`` lines; witness edges print in ascending id.

Exit codes: 0 yes/valid, 1 no/invalid, 2 usage or parse error, 3 budget
refusal, 4 internal inconsistency (a guaranteed invariant failed).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Dict, List, Optional, Sequence

from .criticality import explain_partner_analysis
from .errors import (
    BudgetExceededError,
    ConndelError,
    InternalInconsistencyError,
    InvalidInputError,
    ParseError,
)
from .formats import (
    parse_digraph,
    parse_undirected,
    serialize_digraph,
    serialize_undirected,
)
from .graphs import UndirectedGraph, contract_sequence, is_strongly_connected
from .hardness import gen_pc_psc, gen_vd_psc
from .kernel import DEFAULT_MAX_TERMINALS, kernelize
from .oracles import (
    OracleBudget,
    oracle_is,
    oracle_pcpsc,
    oracle_vdpsc,
    oracle_wbd,
)
from .solver import SolveStats, WbdInstance, normalize, solve, verify_solution

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


def _digest(data: str) -> str:
    return "sha256:" + hashlib.sha256(data.encode()).hexdigest()[:16]


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None


def _edge_names(g: UndirectedGraph, edges: Sequence[int]) -> str:
    parts = []
    for eid in sorted(edges):
        u, v = g.endpoints(eid)
        parts.append(f"{u}-{v}")
    return " ".join(parts)


def _emit_report(fields: Dict[str, object]) -> None:
    for key in sorted(fields):
        print(f"{key}: {fields[key]}")


def _budget_from_args(args) -> OracleBudget:
    return OracleBudget(
        max_vertices=args.max_vertices,
        max_edges=args.max_edges,
        max_k=args.max_k,
        max_candidates=args.max_candidates,
    )


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-vertices", type=int, default=10)
    p.add_argument("--max-edges", type=int, default=20)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-candidates", type=int, default=10_000_000)


def _load_instance(path: str, k: int, w_star: float) -> WbdInstance:
    text = _read(path)
    parsed = parse_undirected(text)
    return WbdInstance(parsed.graph, k, w_star, dict(parsed.weights), parsed.frozen)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    text = _read(args.path)
    parsed = parse_undirected(text)
    inst = WbdInstance(parsed.graph, args.k, args.wstar, dict(parsed.weights), parsed.frozen)
    stats = SolveStats()
    t0 = time.perf_counter()
    sol = solve(inst, stats=stats, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    if args.explain:
        for pa in stats.analyses:
            print(explain_partner_analysis(pa))
    report: Dict[str, object] = {
        "subcommand": "solve",
        "input-digest": _digest(text),
        "answer": "yes" if sol else "no",
        "witness": _edge_names(parsed.graph, sol.edges) if sol else "",
        "weight": sol.weight if sol else 0.0,
        "branch-nodes": stats.nodes,
        "irrelevant-edges": len(stats.irrelevant_edges),
        "flow-calls": stats.flow_calls,
    }
    if args.oracle_check:
        try:
            oracle = oracle_wbd(normalize(inst), _budget_from_args(args))
            report["oracle-agrees"] = (oracle is None) == (sol is None)
        except BudgetExceededError:
            report["oracle-agrees"] = "skipped"
    _emit_report(report)
    print(f"elapsed-ms: {elapsed * 1000:.1f}")
    return EXIT_YES if sol else EXIT_NO


def cmd_kernelize(args) -> int:
    text = _read(args.path)
    parsed = parse_undirected(text)
    for eid, w in parsed.weights.items():
        if eid not in parsed.frozen and w != 1.0:
            raise InvalidInputError(
                "kernelization handles unit weights only; edge "
                f"{_edge_names(parsed.graph, [eid])} has weight {w}"
            )
    result = kernelize(
        parsed.graph,
        args.k,
        parsed.frozen,
        provider=args.provider,
        max_terminals=args.max_terminals,
    )
    out_text = serialize_undirected(
        result.instance.graph, result.instance.weights, result.instance.frozen
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out_text)
    else:
        sys.stdout.write(out_text)
    stats = dict(result.stats)
    stats["answer"] = result.answer
    stats["input-digest"] = _digest(text)
    stats["k_after"] = result.instance.k
    print(json.dumps(stats, sort_keys=True))
    return EXIT_YES if result.answer == "yes" else EXIT_NO if result.answer == "no" else EXIT_YES


def cmd_gen(args) -> int:
    text = _read(args.path)
    parsed = parse_undirected(text)
    if args.kind == "pcpsc":
        d, gm = gen_pc_psc(parsed.graph, args.k)
        comments = gm.origin_labels()
    else:
        d, comments = gen_vd_psc(parsed.graph, args.k)
    out_text = serialize_digraph(d, comments)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out_text)
    else:
        sys.stdout.write(out_text)
    return EXIT_YES


def cmd_oracle(args) -> int:
    budget = _budget_from_args(args)
    text = _read(args.path)
    if args.kind == "wbd":
        parsed = parse_undirected(text)
        inst = normalize(
            WbdInstance(parsed.graph, args.k, args.wstar, dict(parsed.weights), parsed.frozen)
        )
        sol = oracle_wbd(inst, budget)
        witness = _edge_names(parsed.graph, sol.edges) if sol else ""
        answer = sol is not None
    elif args.kind == "is":
        parsed = parse_undirected(text)
        res = oracle_is(parsed.graph, args.k, budget)
        witness = " ".join(str(v) for v in sorted(res)) if res else ""
        answer = res is not None
    elif args.kind == "pcpsc":
        d = parse_digraph(text)
        seq = oracle_pcpsc(d, args.k, budget)
        witness = " ".join(f"{t}->{h}" for t, h in seq) if seq else ""
        answer = seq is not None
    else:
        d = parse_digraph(text)
        res = oracle_vdpsc(d, args.k, budget)
        witness = " ".join(str(v) for v in sorted(res)) if res else ""
        answer = res is not None
    _emit_report(
        {
            "subcommand": f"oracle-{args.kind}",
            "input-digest": _digest(text),
            "answer": "yes" if answer else "no",
            "witness": witness,
        }
    )
    return EXIT_YES if answer else EXIT_NO


def _parse_witness(text: str, kind: str) -> List:
    out: List = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if kind == "wbd":
            if tok[0] != "e" or len(tok) != 3:
                raise ParseError(i, "witness line must be 'e <u> <v>'")
            out.append((int(tok[1]), int(tok[2])))
        elif kind == "pcpsc":
            if tok[0] != "a" or len(tok) != 3:
                raise ParseError(i, "witness line must be 'a <u> <v>'")
            out.append((int(tok[1]), int(tok[2])))
        else:
            if tok[0] != "v" or len(tok) != 2:
                raise ParseError(i, "witness line must be 'v <id>'")
            out.append(int(tok[1]))
    return out


def cmd_verify(args) -> int:
    text = _read(args.path)
    wtext = _read(args.witness)
    witness = _parse_witness(wtext, args.kind)
    if args.kind == "wbd":
        parsed = parse_undirected(text)
        ids = []
        for u, v in witness:
            eid = parsed.graph.edge_between(u, v)
            if eid is None:
                ids = None
                break
            ids.append(eid)
        inst = normalize(
            WbdInstance(parsed.graph, args.k, args.wstar, dict(parsed.weights), parsed.frozen)
        )
        valid = ids is not None and verify_solution(inst, ids)
    elif args.kind == "pcpsc":
        d = parse_digraph(text)
        valid = len(witness) == args.k
        if valid:
            try:
                valid = is_strongly_connected(contract_sequence(d, witness))
            except ConndelError:
                valid = False
    else:
        d = parse_digraph(text)
        vs = set(witness)
        valid = (
            len(vs) == len(witness) == args.k
            and vs <= d.vertices
            and is_strongly_connected(d.without_vertices(vs))
        )
    _emit_report(
        {
            "subcommand": f"verify-{args.kind}",
            "input-digest": _digest(text),
            "answer": "valid" if valid else "invalid",
        }
    )
    return EXIT_YES if valid else EXIT_NO


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="conndel",
        description="connectivity-preserving edge deletion toolkit",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a weighted biconnectivity-deletion instance")
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--wstar", type=float, required=True)
    p.add_argument("--explain", action="store_true")
    p.add_argument("--oracle-check", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="reserved; all components are deterministic")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="shrink an unweighted instance")
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--provider", choices=("trivial", "exhaustive"), default="trivial")
    p.add_argument("--max-terminals", type=int, default=DEFAULT_MAX_TERMINALS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("gen", help="generate a hardness instance from an independent-set input")
    p.add_argument("kind", choices=("pcpsc", "vdpsc"))
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force ground truth (desk scale)")
    p.add_argument("kind", choices=("wbd", "pcpsc", "vdpsc", "is"))
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--wstar", type=float, default=0.0)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a witness file against an instance")
    p.add_argument("kind", choices=("wbd", "pcpsc", "vdpsc"))
    p.add_argument("path")
    p.add_argument("--witness", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--wstar", type=float, default=0.0)
    p.set_defaults(func=cmd_verify)

    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
