"""Command-line front door.

Subcommands: ``order``, ``fibrate``, ``invariants``, ``moves
apply|replay|search|repl``, ``family``, ``render``, ``selftest``.  All
output is deterministic for a fixed configuration; JSON documents and SVG
files are written atomically and byte-stable.  The environment variable
``PLUMBWEAVE_SEED`` overrides the default seed of randomized batches.

Exit codes: 0 success/verified, 1 verified-false, 2 input error, 3 search
or iteration limit exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import fibration, invariants, moves, treecore
from .errors import BadDimension, PlumbweaveError
from .lattice import Convention, DEFAULT_CONVENTION

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by the subcommands."""

    n: int | None = None
    seed: int = 0
    convention: Convention = DEFAULT_CONVENTION
    depth: int | None = None
    count: int | None = None
    max_vertices: int = 14

    def __post_init__(self):
        if self.n is not None and self.n < 2:
            raise BadDimension(f"total-space parameter n={self.n} below 2")
        for name in ("depth", "count"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise PlumbweaveError(f"{name} must be positive")
        if self.max_vertices < 2:
            raise PlumbweaveError("max-vertices must be at least 2")


def _default_seed() -> int:
    return int(os.environ.get("PLUMBWEAVE_SEED", "0"))


def _write_atomic(path: str, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_ordered(path: str) -> treecore.OrderedTree:
    return treecore.order_tree(treecore.parse_tree(_read_text(path)))


def _dump_json(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _convention_from_args(args) -> Convention:
    return Convention(
        self_intersection=args.self_intersection,
        edge_sign=args.edge_sign,
        twist_sign=args.twist_sign,
    )


def _add_convention_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--self-intersection", type=int, default=-2)
    parser.add_argument("--edge-sign", type=int, choices=(1, -1), default=1)
    parser.add_argument("--twist-sign", type=int, choices=(1, -1), default=1)


def _format_class(coords, symbols) -> str:
    terms = []
    for c, s in zip(coords, symbols):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        if not terms:
            terms.append(("-" if c < 0 else "") + mag + s)
        else:
            terms.append(("- " if c < 0 else "+ ") + mag + s)
    return " ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# order


def _order_doc(ot: treecore.OrderedTree) -> dict:
    root_v, root_e = ot.base.root
    return {
        "root": {"vertex": root_v, "edge": root_e},
        "vertices": [
            {
                "label": f"v{i}",
                "id": v,
                "dist": ot.dist[v],
                "height": ot.height[v],
                "coords": list(treecore.canonical_coords(ot, v)),
            }
            for i, v in enumerate(ot.vertex_order)
        ],
        "edges": [
            {
                "label": f"e{i}",
                "id": e,
                "tail": ot.tail[e],
                "head": ot.head[e],
                "tail_label": ot.vertex_label(ot.tail[e]),
                "head_label": ot.vertex_label(ot.head[e]),
            }
            for i, e in enumerate(ot.edge_order)
        ],
        "boundary": [
            {"label": ot.vertex_label(v), "id": v} for v in ot.boundary_order
        ],
    }


def _order_text(ot: treecore.OrderedTree) -> str:
    doc = _order_doc(ot)
    lines = [f"root: vertex={doc['root']['vertex']} edge={doc['root']['edge']}"]
    for v in doc["vertices"]:
        lines.append(
            f"vertex {v['label']}: id={v['id']} dist={v['dist']} "
            f"height={v['height']} coords=({v['coords'][0]}, {v['coords'][1]})"
        )
    for e in doc["edges"]:
        lines.append(
            f"edge {e['label']}: id={e['id']} tail={e['tail_label']}({e['tail']}) "
            f"head={e['head_label']}({e['head']})"
        )
    lines.append(
        "boundary: " + " ".join(f"{b['label']}({b['id']})" for b in doc["boundary"])
    )
    return "\n".join(lines) + "\n"


def _cmd_order(args) -> int:
    ot = _load_ordered(args.tree)
    text = _dump_json(_order_doc(ot)) if args.json else _order_text(ot)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# fibrate / render


def _cmd_fibrate(args) -> int:
    RunConfig(n=args.n)
    ot = _load_ordered(args.tree)
    alf = fibration.fibrate(ot, args.n)
    _emit(fibration.to_json(alf), args.out)
    if args.render:
        matching = fibration.matching_cycles(alf, ot)
        fibration.render_base(alf, matching, args.render)
    return EXIT_OK


def _cmd_render(args) -> int:
    RunConfig(n=args.n)
    ot = _load_ordered(args.tree)
    alf = fibration.fibrate(ot, args.n)
    matching = fibration.matching_cycles(alf, ot)
    fibration.render_base(alf, matching, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# invariants


def _invariants_report(tree_id, t, n, convention) -> dict:
    ot = treecore.order_tree(t)
    alf = fibration.fibrate(ot, n)
    computed = invariants.total_homology(alf, n)
    expected = invariants.wedge_oracle(t, n)
    return {
        "tree_id": tree_id,
        "n": n,
        "chi": computed.euler,
        "homology": computed.as_dict(),
        "oracle": expected.as_dict(),
        "oracle_match": computed == expected,
        "convention": convention.as_dict(),
    }


def _cmd_invariants(args) -> int:
    convention = _convention_from_args(args)
    cfg = RunConfig(
        n=args.n, seed=args.seed, convention=convention,
        count=args.count, max_vertices=args.max_vertices,
    )
    if args.count is None:
        if args.tree is None:
            raise PlumbweaveError("either a tree file or --count is required")
        t = treecore.parse_tree(_read_text(args.tree))
        report = _invariants_report(os.path.basename(args.tree), t, args.n, convention)
        _emit(_dump_json(report), args.out)
        return EXIT_OK if report["oracle_match"] else EXIT_FALSE
    reports = []
    all_match = True
    for i in range(cfg.count):
        t = treecore.random_tree(cfg.seed + i, cfg.max_vertices)
        rep = _invariants_report(f"random:{cfg.seed + i}", t, args.n, convention)
        all_match = all_match and rep["oracle_match"]
        reports.append(rep)
    doc = {
        "seed": cfg.seed,
        "count": cfg.count,
        "n": args.n,
        "max_vertices": cfg.max_vertices,
        "all_match": all_match,
        "mismatches": [r["tree_id"] for r in reports if not r["oracle_match"]],
        "reports": reports if args.full else [],
    }
    _emit(_dump_json(doc), args.out)
    return EXIT_OK if all_match else EXIT_FALSE


# ---------------------------------------------------------------------------
# moves


def _collect_moves(args):
    seq = []
    if args.script:
        for raw in _read_text(args.script).splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                seq.append(moves.parse_move_line(line))
    for spec in args.move or []:
        seq.append(moves.parse_move_line(spec))
    return tuple(seq)


def _cmd_moves_apply(args) -> int:
    convention = _convention_from_args(args)
    alf = fibration.from_json(_read_text(args.fibration))
    seq = _collect_moves(args)
    result = moves.replay(alf, seq, convention)
    _emit(fibration.to_json(result), args.out)
    if args.seq_out:
        _write_atomic(args.seq_out, moves.moves_to_json(seq))
    return EXIT_OK


def _cmd_moves_replay(args) -> int:
    convention = _convention_from_args(args)
    alf = fibration.from_json(_read_text(args.fibration))
    seq = moves.moves_from_json(_read_text(args.sequence))
    result = moves.replay(alf, seq, convention)
    _emit(fibration.to_json(result), args.out)
    return EXIT_OK


def _cmd_moves_search(args) -> int:
    convention = _convention_from_args(args)
    RunConfig(depth=args.depth, convention=convention)
    a = fibration.from_json(_read_text(args.source))
    b = fibration.from_json(_read_text(args.target))
    witness = moves.search_equivalence(a, b, args.depth, convention)
    if witness is None:
        sys.stderr.write(f"no witness within depth {args.depth}\n")
        return EXIT_LIMIT
    text = moves.moves_to_json(witness)
    _emit(text, args.out)
    return EXIT_OK


def _word_line(alf) -> str:
    return f"word[{len(alf.cycles)}]: " + ", ".join(alf.word_displays())


def _invariant_line(alf) -> str:
    rep = invariants.total_homology(alf)
    parts = [f"chi={rep.euler}"]
    for deg, free, tors in rep.h:
        label = f"H{deg}=Z^{free}" if free else f"H{deg}=0"
        if tors:
            label += "+torsion" + str(list(tors))
        parts.append(label)
    return " ".join(parts)


def _cmd_moves_repl(args) -> int:
    convention = _convention_from_args(args)
    alf = fibration.from_json(_read_text(args.fibration))
    out = sys.stdout
    out.write(_word_line(alf) + "\n")
    out.write(_invariant_line(alf) + "\n")
    for raw in sys.stdin:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("quit", "exit"):
            break
        if line == "show":
            out.write(_word_line(alf) + "\n")
            out.write(_invariant_line(alf) + "\n")
            continue
        try:
            alf = moves.apply_move(alf, moves.parse_move_line(line), convention)
        except PlumbweaveError as exc:
            out.write(f"error: {type(exc).__name__}: {exc}\n")
            continue
        out.write(_word_line(alf) + "\n")
        out.write(_invariant_line(alf) + "\n")
    if args.out:
        _write_atomic(args.out, fibration.to_json(alf))
    return EXIT_OK


# ---------------------------------------------------------------------------
# family


def _cmd_family(args) -> int:
    convention = _convention_from_args(args)
    RunConfig(n=args.n, convention=convention)
    if args.shift not in (2, 4):
        raise PlumbweaveError("shift must be 2 or 4")
    if not 1 <= args.j or args.j + args.shift > args.m:
        raise PlumbweaveError(
            f"need 1 <= j and j + shift <= m, got j={args.j} shift={args.shift} m={args.m}"
        )
    source = fibration.family_word(args.m, args.j, args.n)
    target = fibration.family_word(args.m, args.j + args.shift, args.n)
    pos = fibration.family_interior_index(args.m, args.j)
    witness = tuple(
        moves.MoveRecord(moves.HURWITZ_A, pos + k) for k in range(args.shift)
    )
    pushed = moves.replay(source, witness, convention)
    final = pushed.cycles[pos + args.shift]
    target_final = target.cycles[pos + args.shift]
    equal = moves.equal_homology(pushed, target)
    symbols = ("α", "β")
    doc = {
        "m": args.m,
        "j": args.j,
        "shift": args.shift,
        "n": args.n,
        "parity": "symmetric" if args.n % 2 == 1 else "antisymmetric",
        "convention": convention.as_dict(),
        "interior_position": {"zero_based": pos, "one_based": pos + 1},
        "word_length": len(source.cycles),
        "witness": [
            {"kind": mv.kind, "index": mv.index} for mv in witness
        ],
        "final_interior_class": {
            "coords": list(final.cls),
            "pretty": _format_class(final.cls, symbols),
        },
        "target_interior_class": {
            "coords": list(target_final.cls),
            "pretty": _format_class(target_final.cls, symbols),
        },
        "equal": equal,
    }
    if args.json:
        _emit(_dump_json(doc), args.out)
    else:
        lines = [
            f"family m={args.m} j={args.j} shift={args.shift} n={args.n} "
            f"({doc['parity']} pairing)",
            f"interior class position: index {pos} (0-based), {pos + 1} (1-based)",
            "witness: " + "; ".join(f"hurwitzA {mv.index}" for mv in witness),
            f"final interior class: {doc['final_interior_class']['pretty']}",
            f"target interior class: {doc['target_interior_class']['pretty']}",
            f"words equal: {'yes' if equal else 'no'}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if equal else EXIT_FALSE


# ---------------------------------------------------------------------------
# selftest


def _cmd_selftest(args) -> int:
    seed = args.seed
    audit = invariants.base_case_audit()

    identity_failures = []
    for i in range(args.trees):
        t = treecore.random_tree(seed + i, args.max_vertices)
        ot = treecore.order_tree(t)
        alf = fibration.fibrate(ot, 3)
        qd = treecore.quotient(ot)
        expected = len(t.vertices) + len(qd.quotient_tree.vertices)
        if len(alf.cycles) != expected:
            identity_failures.append(seed + i)

    oracle_failures = []
    for i in range(args.oracle_trees):
        t = treecore.random_tree(seed + i, args.max_vertices)
        ot = treecore.order_tree(t)
        for n in (3, 4, 5):
            alf = fibration.fibrate(ot, n)
            if invariants.total_homology(alf, n) != invariants.wedge_oracle(t, n):
                oracle_failures.append([seed + i, n])

    ok = not identity_failures and not oracle_failures
    doc = {
        "base_case": audit,
        "random_suite": {
            "seed": seed,
            "cycle_identity": {"trees": args.trees, "failures": identity_failures},
            "homology_oracle": {
                "trees": args.oracle_trees,
                "n": [3, 4, 5],
                "failures": oracle_failures,
            },
        },
        "ok": ok,
    }
    if args.json:
        _emit(_dump_json(doc), args.out)
    else:
        lines = ["base case (two-vertex chain):"]
        for name, rows in audit["variants"].items():
            for n, row in rows.items():
                lines.append(
                    f"  {name} n={n}: word_length={row['word_length']} "
                    f"chi={row['chi']} (oracle {row['oracle_chi']}) "
                    f"homology_match={'yes' if row['homology_match'] else 'no'}"
                )
        s = audit["summary"]
        lines.append(
            "  verdict: literal_steps "
            + ("matches" if s["literal_steps_matches_oracle"] else "DISAGREES with")
            + " the oracle; two_cycle_variant "
            + ("matches" if s["two_cycle_variant_matches_oracle"] else "disagrees with")
            + " the oracle"
        )
        lines.append(
            f"cycle identity on {args.trees} random trees: "
            f"{len(identity_failures)} failures"
        )
        lines.append(
            f"homology oracle on {args.oracle_trees} random trees x n in (3,4,5): "
            f"{len(oracle_failures)} failures"
        )
        lines.append("selftest: " + ("ok" if ok else "FAILED"))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FALSE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plumbweave",
        description="Lefschetz fibration words for plumbings along plane trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="canonical orders of a rooted plane tree")
    p.add_argument("tree")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("fibrate", help="run the word algorithm on a tree file")
    p.add_argument("tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--render", metavar="SVG")
    p.set_defaults(func=_cmd_fibrate)

    p = sub.add_parser("invariants", help="homology of the total space vs oracle")
    p.add_argument("tree", nargs="?")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--max-vertices", type=int, default=14)
    p.add_argument("--full", action="store_true", help="include per-tree reports")
    p.add_argument("--out")
    _add_convention_args(p)
    p.set_defaults(func=_cmd_invariants)

    pm = sub.add_parser("moves", help="apply, replay, search, or drive moves")
    msub = pm.add_subparsers(dest="moves_command", required=True)

    p = msub.add_parser("apply", help="apply scripted moves to a fibration")
    p.add_argument("fibration")
    p.add_argument("--script")
    p.add_argument("--move", action="append", metavar="SPEC")
    p.add_argument("--out")
    p.add_argument("--seq-out")
    _add_convention_args(p)
    p.set_defaults(func=_cmd_moves_apply)

    p = msub.add_parser("replay", help="replay a saved move sequence")
    p.add_argument("fibration")
    p.add_argument("sequence")
    p.add_argument("--out")
    _add_convention_args(p)
    p.set_defaults(func=_cmd_moves_replay)

    p = msub.add_parser("search", help="breadth-first witness search")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out")
    _add_convention_args(p)
    p.set_defaults(func=_cmd_moves_search)

    p = msub.add_parser("repl", help="one move per stdin line")
    p.add_argument("fibration")
    p.add_argument("--out")
    _add_convention_args(p)
    p.set_defaults(func=_cmd_moves_repl)

    p = sub.add_parser("family", help="verify the chain-with-leaf family relation")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--shift", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    _add_convention_args(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("render", help="base diagram SVG for a tree file")
    p.add_argument("tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("selftest", help="base-case audit plus random suites")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--trees", type=int, default=1000)
    p.add_argument("--oracle-trees", type=int, default=200)
    p.add_argument("--max-vertices", type=int, default=14)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PlumbweaveError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(f"error: IoError: {exc}\n")
        return EXIT_INPUT


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
