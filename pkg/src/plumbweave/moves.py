"""Moves on abstract Lefschetz fibrations and bounded equivalence search.

Cyclic permutation rotates the word; the two Hurwitz moves exchange an
adjacent pair through the twist around one of its members; stabilization
plumbs one more sphere onto the fiber and inserts the new class into the
word.  All four preserve the total space; here they are tracked at the
homology level, where cycle classes evolve by the exact twist action.

Cycle identity after moves lives at two tiers: the lattice class (decidable,
used for every equality check) and the display string, which accumulates a
formal twist word purely for provenance.

Deformation is not a move here: at the homology level it is the identity,
so it is represented by equality itself.  Whether the four moves connect all
fibrations of a fixed total space is unknown; a failed bounded search is
therefore never evidence of inequivalence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
import json

from .errors import (
    DimensionMismatch,
    FormatError,
    IndexOutOfRange,
    UnknownVertex,
)
from .fibration import (
    AbstractLF,
    PlumbingDescriptor,
    VanishingCycle,
    fiber_form,
)
from .lattice import Convention, DEFAULT_CONVENTION, IntersectionForm, dehn_twist
from .treecore import UnrootedTree

__all__ = [
    "MoveRecord",
    "MoveSequence",
    "cyclic_permute",
    "hurwitz_a",
    "hurwitz_b",
    "stabilize",
    "apply_move",
    "replay",
    "equal_homology",
    "search_equivalence",
    "moves_to_json",
    "moves_from_json",
    "parse_move_line",
]

CYCLIC = "cyclic_permute"
HURWITZ_A = "hurwitz_a"
HURWITZ_B = "hurwitz_b"
STABILIZE = "stabilize"


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    index: int | None = None
    vertex: str | None = None


MoveSequence = tuple  # of MoveRecord; replayable against a source fibration


def cyclic_permute(alf: AbstractLF) -> AbstractLF:
    """Rotate the word left by one; the fiber is unchanged."""
    if not alf.cycles:
        raise IndexOutOfRange("empty cycle word")
    return replace(alf, cycles=alf.cycles[1:] + alf.cycles[:1])


def _check_pair_index(alf: AbstractLF, i: int) -> None:
    m = len(alf.cycles)
    if not 0 <= i < m - 1:
        raise IndexOutOfRange(f"pair index {i} not in 0..{m - 2}")


def hurwitz_a(
    alf: AbstractLF, i: int, convention: Convention = DEFAULT_CONVENTION
) -> AbstractLF:
    """Replace the pair (x, y) at (i, i+1) with (y, twist_y(x))."""
    _check_pair_index(alf, i)
    form = fiber_form(alf.fiber, convention)
    x, y = alf.cycles[i], alf.cycles[i + 1]
    moved = VanishingCycle(
        x.label, dehn_twist(form, y.cls, x.cls, 1), f"τ[{y.display}]({x.display})"
    )
    return replace(alf, cycles=alf.cycles[:i] + (y, moved) + alf.cycles[i + 2 :])


def hurwitz_b(
    alf: AbstractLF, i: int, convention: Convention = DEFAULT_CONVENTION
) -> AbstractLF:
    """Replace the pair (x, y) at (i, i+1) with (twist_x^{-1}(y), x)."""
    _check_pair_index(alf, i)
    form = fiber_form(alf.fiber, convention)
    x, y = alf.cycles[i], alf.cycles[i + 1]
    moved = VanishingCycle(
        y.label, dehn_twist(form, x.cls, y.cls, -1), f"τ^{{-1}}[{x.display}]({y.display})"
    )
    return replace(alf, cycles=alf.cycles[:i] + (moved, x) + alf.cycles[i + 2 :])


def stabilize(alf: AbstractLF, attach_vertex: str, position: int) -> AbstractLF:
    """Grow the fiber by one leaf sphere at ``attach_vertex`` and insert the
    new basis class into the word at ``position``.

    Existing classes re-embed with a zero coordinate in the new direction,
    so all old pairings are unchanged.
    """
    pattern = alf.fiber.pattern
    if attach_vertex not in pattern.vertices:
        raise UnknownVertex(f"unknown fiber vertex {attach_vertex!r}")
    m = len(alf.cycles)
    if not 0 <= position <= m:
        raise IndexOutOfRange(f"insert position {position} not in 0..{m}")
    k = 1
    while f"s{k}" in pattern.vertices:
        k += 1
    new_v = f"s{k}"
    new_pattern = UnrootedTree(
        pattern.vertices + (new_v,), pattern.edges + ((attach_vertex, new_v),)
    )
    old = tuple(
        VanishingCycle(c.label, c.cls + (0,), c.display) for c in alf.cycles
    )
    fresh = VanishingCycle(
        f"stab:{k}", (0,) * len(pattern.vertices) + (1,), f"L_{{{new_v}}}"
    )
    return AbstractLF(
        PlumbingDescriptor(new_pattern, alf.fiber.sphere_dim),
        old[:position] + (fresh,) + old[position:],
        alf.n,
    )


def apply_move(
    alf: AbstractLF, move: MoveRecord, convention: Convention = DEFAULT_CONVENTION
) -> AbstractLF:
    if move.kind == CYCLIC:
        return cyclic_permute(alf)
    if move.kind == HURWITZ_A:
        return hurwitz_a(alf, move.index, convention)
    if move.kind == HURWITZ_B:
        return hurwitz_b(alf, move.index, convention)
    if move.kind == STABILIZE:
        return stabilize(alf, move.vertex, move.index)
    raise FormatError(f"unknown move kind {move.kind!r}")


def replay(
    alf: AbstractLF, seq, convention: Convention = DEFAULT_CONVENTION
) -> AbstractLF:
    for move in seq:
        alf = apply_move(alf, move, convention)
    return alf


def equal_homology(a: AbstractLF, b: AbstractLF) -> bool:
    """Pointwise class equality over structurally identical fibers.

    Fiber patterns are compared by position (the relabeling is fixed by
    construction), then n, word length, and every cycle class.  Labels and
    displays never matter here.
    """
    fa, fb = a.fiber, b.fiber
    if fa.sphere_dim != fb.sphere_dim or a.n != b.n:
        return False
    if len(fa.pattern.vertices) != len(fb.pattern.vertices):
        return False
    if fa.pattern.edge_index_pairs() != fb.pattern.edge_index_pairs():
        return False
    if len(a.cycles) != len(b.cycles):
        return False
    return all(ca.cls == cb.cls for ca, cb in zip(a.cycles, b.cycles))


def _state_moves(m: int) -> list[MoveRecord]:
    out = [MoveRecord(CYCLIC)]
    out.extend(MoveRecord(HURWITZ_A, i) for i in range(m - 1))
    out.extend(MoveRecord(HURWITZ_B, i) for i in range(m - 1))
    return out


def _apply_state(state, move: MoveRecord, form: IntersectionForm):
    if move.kind == CYCLIC:
        return state[1:] + state[:1]
    i = move.index
    x, y = state[i], state[i + 1]
    if move.kind == HURWITZ_A:
        return state[:i] + (y, dehn_twist(form, y, x, 1)) + state[i + 2 :]
    return state[:i] + (dehn_twist(form, x, y, -1), x) + state[i + 2 :]


def search_equivalence(
    a: AbstractLF,
    b: AbstractLF,
    max_depth: int,
    convention: Convention = DEFAULT_CONVENTION,
):
    """Breadth-first search for a move sequence turning a's word into b's.

    The alphabet is cyclic permutation plus both Hurwitz moves at every
    index (no stabilization), explored in that fixed order, so the result
    is the shortest witness and lexicographically least among those.
    States are class words; returns a tuple of MoveRecord, or None when the
    depth is exhausted.  A None is never evidence of inequivalence.
    """
    fa, fb = a.fiber, b.fiber
    if (
        fa.sphere_dim != fb.sphere_dim
        or a.n != b.n
        or len(fa.pattern.vertices) != len(fb.pattern.vertices)
        or fa.pattern.edge_index_pairs() != fb.pattern.edge_index_pairs()
    ):
        raise DimensionMismatch("search requires identical fibers")
    if len(a.cycles) != len(b.cycles):
        raise DimensionMismatch("search requires words of equal length")

    start = a.word_classes()
    goal = b.word_classes()
    if start == goal:
        return ()
    form = fiber_form(fa, convention)
    alphabet = _state_moves(len(start))
    parents: dict = {start: None}
    frontier = deque([start])
    for _ in range(max_depth):
        if not frontier:
            break
        next_frontier: deque = deque()
        for state in frontier:
            for move in alphabet:
                child = _apply_state(state, move, form)
                if child == goal:
                    seq = [move]
                    back = state
                    while parents[back] is not None:
                        prev, mv = parents[back]
                        seq.append(mv)
                        back = prev
                    return tuple(reversed(seq))
                if child not in parents:
                    parents[child] = (state, move)
                    next_frontier.append(child)
        frontier = next_frontier
    return None


# ---------------------------------------------------------------------------
# serialization and the one-move-per-line grammar

def moves_to_json(seq) -> str:
    out = []
    for mv in seq:
        doc: dict = {"kind": mv.kind}
        if mv.index is not None:
            doc["index"] = mv.index
        if mv.vertex is not None:
            doc["vertex"] = mv.vertex
        out.append(doc)
    return json.dumps(out, ensure_ascii=False, indent=2) + "\n"


def moves_from_json(text: str):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise FormatError("move sequence document must be a JSON list")
    seq = []
    for item in raw:
        kind = item.get("kind")
        if kind not in (CYCLIC, HURWITZ_A, HURWITZ_B, STABILIZE):
            raise FormatError(f"unknown move kind {kind!r}")
        index = item.get("index")
        vertex = item.get("vertex")
        if kind in (HURWITZ_A, HURWITZ_B, STABILIZE) and not isinstance(index, int):
            raise FormatError(f"move {kind} needs an integer index")
        if kind == STABILIZE and not isinstance(vertex, str):
            raise FormatError("stabilize needs a fiber vertex name")
        seq.append(MoveRecord(kind, index, vertex))
    return tuple(seq)


def parse_move_line(line: str) -> MoveRecord:
    """Parse one move in the textual grammar:

    ``cyclic`` | ``hurwitzA I`` | ``hurwitzB I`` | ``stabilize VERTEX I``
    """
    tokens = line.split()
    if not tokens:
        raise FormatError("empty move line")
    head = tokens[0]
    if head == "cyclic" and len(tokens) == 1:
        return MoveRecord(CYCLIC)
    if head in ("hurwitzA", "hurwitzB") and len(tokens) == 2:
        try:
            i = int(tokens[1])
        except ValueError:
            raise FormatError(f"bad index in move line {line!r}") from None
        return MoveRecord(HURWITZ_A if head == "hurwitzA" else HURWITZ_B, i)
    if head == "stabilize" and len(tokens) == 3:
        try:
            i = int(tokens[2])
        except ValueError:
            raise FormatError(f"bad position in move line {line!r}") from None
        return MoveRecord(STABILIZE, i, tokens[1])
    raise FormatError(f"unrecognized move line {line!r}")
