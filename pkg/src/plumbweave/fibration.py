"""From a rooted plane tree to an abstract Lefschetz fibration.

The total space to present is the plumbing of copies of ``T*S^n`` along the
tree.  The word algorithm has three steps:

1. the fiber is the plumbing of ``(n-1)``-sphere cotangent bundles along
   the quotient tree (first outgoing edges contracted);
2. each vertex ``v_i`` contributes the vanishing cycle ``L_{q(v_i)}``, in
   vertex order;
3. each edge that is either the root edge or not the first outgoing edge of
   its tail contributes the cycle ``L_{q(head)}``: the cycles of the non-first
   edges with tail ``v_i`` are inserted immediately before ``L_{q(v_i)}`` in
   reverse edge order, and the root edge's cycle is prepended to the word.

Equivalently, the word is the root-edge cycle followed by one block per
vertex in order, where the block of ``v`` is (non-first outgoing edge cycles
of ``v``, reversed) + (vertex cycle of ``v``).  Insertions for distinct
tails target disjoint gaps, so the block form is exact.

Every vertex then spans a matching cycle between two equal-class singular
values; singular values sit at angles ``2*pi*k/m`` on the unit circle and
the base diagram is rendered as a deterministic SVG.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

from .errors import (
    BadDimension,
    FormatError,
    IndexOutOfRange,
    NotAlgorithmOutput,
)
from .lattice import (
    Convention,
    DEFAULT_CONVENTION,
    IntersectionForm,
    pattern_form,
)
from .treecore import (
    Edge,
    OrderedTree,
    RootedEmbeddedTree,
    UnrootedTree,
    quotient,
)

__all__ = [
    "PlumbingDescriptor",
    "VanishingCycle",
    "AbstractLF",
    "MatchingCycle",
    "fibrate",
    "matching_cycles",
    "layout",
    "render_svg",
    "render_base",
    "family_word",
    "family_tree",
    "family_interior_index",
    "fiber_form",
    "to_json",
    "from_json",
    "class_word_json",
]


@dataclass(frozen=True)
class PlumbingDescriptor:
    """A plumbing of sphere cotangent bundles: tree pattern + sphere dimension."""

    pattern: UnrootedTree
    sphere_dim: int


@dataclass(frozen=True)
class VanishingCycle:
    """One vanishing cycle: origin label, lattice class, symbolic display.

    ``label`` records where the cycle came from (``vertex:v3``, ``edge:e0``,
    ``stab:1``) and never changes; ``display`` is the symbolic name, which
    accumulates a formal twist word under Hurwitz moves.  Only ``cls``
    participates in equality decisions.
    """

    label: str
    cls: tuple[int, ...]
    display: str


@dataclass(frozen=True)
class AbstractLF:
    """Fiber descriptor plus the cyclically ordered vanishing-cycle word."""

    fiber: PlumbingDescriptor
    cycles: tuple[VanishingCycle, ...]
    n: int

    def word_classes(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.cls for c in self.cycles)

    def word_displays(self) -> tuple[str, ...]:
        return tuple(c.display for c in self.cycles)


@dataclass(frozen=True)
class MatchingCycle:
    """The two singular values (by word index) sharing a vertex's cycle."""

    vertex: str  # canonical label v{i}
    endpoints: tuple[int, int]


def fiber_form(
    fiber: PlumbingDescriptor, convention: Convention = DEFAULT_CONVENTION
) -> IntersectionForm:
    """Intersection form on the fiber lattice of an abstract fibration."""
    return pattern_form(fiber.pattern, fiber.sphere_dim, convention)


def fibrate(ot: OrderedTree, n: int) -> AbstractLF:
    """Run the three-step algorithm on an ordered tree."""
    if n < 2:
        raise BadDimension(f"total-space parameter n={n} below 2")
    qd = quotient(ot)
    fiber = PlumbingDescriptor(qd.quotient_tree, n - 1)
    basis_index = {w: i for i, w in enumerate(qd.quotient_tree.vertices)}
    rank = len(qd.quotient_tree.vertices)

    def basis_vec(w: str) -> tuple[int, ...]:
        i = basis_index[w]
        return tuple(1 if j == i else 0 for j in range(rank))

    def vertex_cycle(v: str) -> VanishingCycle:
        lab = ot.vertex_label(v)
        return VanishingCycle(f"vertex:{lab}", basis_vec(qd.q[v]), f"L_{{q({lab})}}")

    def edge_cycle(e: str) -> VanishingCycle:
        h = ot.head[e]
        return VanishingCycle(
            f"edge:{ot.edge_label(e)}", basis_vec(qd.q[h]), f"L_{{q({ot.vertex_label(h)})}}"
        )

    word: list[VanishingCycle] = [edge_cycle(ot.base.root[1])]
    for v in ot.vertex_order:
        if v in ot.first_outgoing:
            extras = [e for e in ot.outgoing(v) if e != ot.first_outgoing[v]]
            extras.sort(key=lambda e: ot.edge_index[e])
            for e in reversed(extras):
                word.append(edge_cycle(e))
        word.append(vertex_cycle(v))
    return AbstractLF(fiber, tuple(word), n)


def matching_cycles(alf: AbstractLF, ot: OrderedTree) -> list[MatchingCycle]:
    """One matching cycle per vertex of the input tree.

    Requires the unmoved output of :func:`fibrate` for the same tree: the
    root vertex pairs with the root-edge cycle; a vertex adjacent to its
    predecessor pairs with the predecessor's cycle; otherwise it pairs with
    the cycle of its incoming edge.  Both endpoints always carry the same
    class and denote the same fiber sphere.
    """
    expected = fibrate(ot, alf.n)
    if alf != expected:
        raise NotAlgorithmOutput(
            "matching cycles are defined on the pristine algorithm output"
        )
    index_of = {c.label: i for i, c in enumerate(alf.cycles)}

    out: list[MatchingCycle] = []
    for i, v in enumerate(ot.vertex_order):
        vlab = f"v{i}"
        if i == 0:
            j = index_of["edge:e0"]
            pair = (index_of[f"vertex:{vlab}"], j)
        else:
            e_in = ot.edge_order[i - 1]
            if ot.tail[e_in] == ot.vertex_order[i - 1]:
                pair = (index_of[f"vertex:{vlab}"], index_of[f"vertex:v{i - 1}"])
            else:
                pair = (index_of[f"vertex:{vlab}"], index_of[f"edge:e{i - 1}"])
        a, b = pair
        if alf.cycles[a].cls != alf.cycles[b].cls:
            raise AssertionError(f"matching endpoints of {vlab} carry different classes")
        out.append(MatchingCycle(vertex=vlab, endpoints=pair))
    return out


def layout(alf: AbstractLF) -> tuple[float, ...]:
    """Angles of the singular values on the unit circle, in word order."""
    m = len(alf.cycles)
    if m < 1:
        raise IndexOutOfRange("empty cycle word")
    return tuple(2.0 * math.pi * k / m for k in range(m))


# ---------------------------------------------------------------------------
# family of fibrations over a chain with one off-chain leaf


def family_tree(m: int, j: int) -> RootedEmbeddedTree:
    """Chain u_0 -> ... -> u_m with one extra leaf at u_j (1 <= j <= m-1).

    The leaf edge sits after the chain edge in u_j's rotation, so it is not
    a first outgoing edge and the quotient pattern is the two-vertex chain.
    For j = m the leaf edge would be first outgoing and the construction
    degenerates, so that index is rejected.
    """
    if not 1 <= j <= m - 1:
        raise IndexOutOfRange(f"leaf position {j} not in 1..{m - 1}")
    chain = [f"u{i}" for i in range(m + 1)]
    vertices = tuple(chain) + ("x",)
    edges = [Edge(f"c{i}", chain[i], chain[i + 1]) for i in range(m)]
    edges.append(Edge("d", chain[j], "x"))
    rotation: dict[str, tuple[str, ...]] = {}
    for i, v in enumerate(chain):
        rot: list[str] = []
        if i < m:
            rot.append(f"c{i}")
        if i == j:
            rot.append("d")
        if i > 0:
            rot.append(f"c{i - 1}")
        rotation[v] = tuple(rot)
    rotation["x"] = ("d",)
    return RootedEmbeddedTree(vertices, tuple(edges), rotation, (chain[0], "c0"))


def family_interior_index(m: int, j: int) -> int:
    """0-based word index of the interior second-class cycle in family_word."""
    return j + 1


def family_word(m: int, j: int, n: int) -> AbstractLF:
    """The two-sphere-fiber word alpha^(j+1) beta alpha^(m-j+1) beta.

    This is the fibration of the chain-with-leaf family written directly in
    the two-class basis (alpha, beta); its labels match the tree route
    cycle-for-cycle.  Total length m + 4.  The interior beta sits at 0-based
    index j + 1; reports print the realized position alongside.
    """
    if not 1 <= j <= m:
        raise IndexOutOfRange(f"leaf position {j} not in 1..{m}")
    if n < 2:
        raise BadDimension(f"total-space parameter n={n} below 2")
    pattern = UnrootedTree(("alpha", "beta"), (("alpha", "beta"),))
    fiber = PlumbingDescriptor(pattern, n - 1)
    alpha, beta = (1, 0), (0, 1)
    cycles = [VanishingCycle("edge:e0", alpha, "α")]
    for i in range(j):
        cycles.append(VanishingCycle(f"vertex:v{i}", alpha, "α"))
    cycles.append(VanishingCycle(f"edge:e{m}", beta, "β"))
    for i in range(j, m + 1):
        cycles.append(VanishingCycle(f"vertex:v{i}", alpha, "α"))
    cycles.append(VanishingCycle(f"vertex:v{m + 1}", beta, "β"))
    return AbstractLF(fiber, tuple(cycles), n)


# ---------------------------------------------------------------------------
# serialization

_LABEL_KINDS = ("vertex", "edge", "stab")


def _alf_to_doc(alf: AbstractLF) -> dict:
    return {
        "fiber": {
            "pattern": {
                "vertices": list(alf.fiber.pattern.vertices),
                "edges": [list(e) for e in alf.fiber.pattern.edges],
            },
            "sphere_dim": alf.fiber.sphere_dim,
        },
        "cycles": [
            {"label": c.label, "coords": list(c.cls), "display": c.display}
            for c in alf.cycles
        ],
        "n": alf.n,
    }


def to_json(alf: AbstractLF) -> str:
    """Stable JSON form of a fibration; byte-identical for equal inputs."""
    return json.dumps(_alf_to_doc(alf), ensure_ascii=False, indent=2) + "\n"


def from_json(text: str) -> AbstractLF:
    """Inverse of :func:`to_json`; validates structure and tree shape."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    try:
        pat = doc["fiber"]["pattern"]
        pattern = UnrootedTree(
            tuple(str(v) for v in pat["vertices"]),
            tuple((str(a), str(b)) for a, b in pat["edges"]),
        )
        fiber = PlumbingDescriptor(pattern, int(doc["fiber"]["sphere_dim"]))
        rank = len(pattern.vertices)
        cycles = []
        for c in doc["cycles"]:
            coords = tuple(int(x) for x in c["coords"])
            if len(coords) != rank:
                raise FormatError(
                    f"cycle coords of length {len(coords)} against fiber rank {rank}"
                )
            label = str(c["label"])
            if label.split(":", 1)[0] not in _LABEL_KINDS:
                raise FormatError(f"unknown cycle label kind in {label!r}")
            cycles.append(VanishingCycle(label, coords, str(c["display"])))
        n = int(doc["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed fibration document: {exc}") from exc
    if fiber.sphere_dim != n - 1:
        raise FormatError(
            f"fiber sphere_dim {fiber.sphere_dim} inconsistent with n={n}"
        )
    return AbstractLF(fiber, tuple(cycles), n)


def class_word_json(alf: AbstractLF) -> str:
    """Canonical serialization of the class word alone.

    Labels and displays are provenance, not identity; this is the byte form
    used to compare words and to hash search states.
    """
    doc = {
        "sphere_dim": alf.fiber.sphere_dim,
        "rank": len(alf.fiber.pattern.vertices),
        "n": alf.n,
        "classes": [list(c.cls) for c in alf.cycles],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# rendering

_SIZE = 420.0
_CENTER = _SIZE / 2.0
_RADIUS = 160.0


def _pt(theta: float) -> tuple[float, float]:
    # SVG y grows downward; flip so angles run counterclockwise
    return (_CENTER + _RADIUS * math.cos(theta), _CENTER - _RADIUS * math.sin(theta))


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _star(cx: float, cy: float, outer: float = 8.0, inner: float = 3.2) -> str:
    pts = []
    for k in range(10):
        r = outer if k % 2 == 0 else inner
        a = math.pi / 2 + k * math.pi / 5
        pts.append(f"{_fmt(cx + r * math.cos(a))},{_fmt(cy - r * math.sin(a))}")
    return " ".join(pts)


def render_svg(alf: AbstractLF, matching: list[MatchingCycle] | None = None) -> str:
    """Base diagram as SVG text: unit circle, base point, radial skeleton
    segments, matching chords, star-marked singular values with labels."""
    matching = matching or []
    angles = layout(alf)
    pts = [_pt(a) for a in angles]
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(_SIZE)}" '
        f'height="{_fmt(_SIZE)}" viewBox="0 0 {_fmt(_SIZE)} {_fmt(_SIZE)}">',
        f'<circle cx="{_fmt(_CENTER)}" cy="{_fmt(_CENTER)}" r="{_fmt(_RADIUS)}" '
        'fill="none" stroke="#000000" stroke-width="1"/>',
    ]
    for x, y in pts:
        lines.append(
            f'<line class="skeleton" x1="{_fmt(_CENTER)}" y1="{_fmt(_CENTER)}" '
            f'x2="{_fmt(x)}" y2="{_fmt(y)}" stroke="#bbbbbb" stroke-width="1"/>'
        )
    for mc in matching:
        (i, j) = mc.endpoints
        (x1, y1), (x2, y2) = pts[i], pts[j]
        lines.append(
            f'<line class="matching" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#2060c0" stroke-width="1.5"/>'
        )
    lines.append(
        f'<circle class="basepoint" cx="{_fmt(_CENTER)}" cy="{_fmt(_CENTER)}" '
        'r="3.00" fill="#000000"/>'
    )
    for k, ((x, y), theta) in enumerate(zip(pts, angles)):
        lines.append(f'<polygon class="singular" points="{_star(x, y)}" fill="#c03020"/>')
        lx = _CENTER + (_RADIUS + 24.0) * math.cos(theta)
        ly = _CENTER - (_RADIUS + 24.0) * math.sin(theta)
        lines.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="11" '
            f'text-anchor="middle" dominant-baseline="middle">'
            f"{_esc(alf.cycles[k].display)}</text>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_base(
    alf: AbstractLF, matching: list[MatchingCycle] | None, path: str
) -> None:
    """Write the base diagram SVG atomically."""
    svg = render_svg(alf, matching)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(svg)
    os.replace(tmp, path)
