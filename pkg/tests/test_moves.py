import random

import pytest
from hypothesis import given, settings, strategies as st

from plumbweave import (
    cyclic_permute,
    equal_homology,
    family_word,
    fibrate,
    hurwitz_a,
    hurwitz_b,
    order_tree,
    random_tree,
    replay,
    search_equivalence,
    stabilize,
    total_homology,
)
from plumbweave.errors import (
    DimensionMismatch,
    FormatError,
    IndexOutOfRange,
    UnknownVertex,
)
from plumbweave.fibration import class_word_json, family_interior_index
from plumbweave.lattice import pattern_form
from plumbweave.moves import (
    HURWITZ_A,
    MoveRecord,
    moves_from_json,
    moves_to_json,
    parse_move_line,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def word_of(alf):
    return [c.cls for c in alf.cycles]


# ---------------------------------------------------------------------------
# cyclic permutation


def test_cyclic_rotates_left():
    alf = family_word(1, 1, 5)  # (α, α, β, α, β)
    rolled = cyclic_permute(alf)
    assert word_of(rolled) == word_of(alf)[1:] + word_of(alf)[:1]
    assert rolled.fiber == alf.fiber


def test_cyclic_order_is_word_length(ex_ordered):
    alf = fibrate(ex_ordered, 3)
    cur = alf
    for _ in range(len(alf.cycles)):
        cur = cyclic_permute(cur)
    assert word_of(cur) == word_of(alf)
    assert [c.label for c in cur.cycles] == [c.label for c in alf.cycles]


def test_cyclic_ex_starts_with_v5_cycle(ex_ordered):
    alf = cyclic_permute(fibrate(ex_ordered, 3))
    assert alf.cycles[0].display == "L_{q(v5)}"


# ---------------------------------------------------------------------------
# Hurwitz moves


def test_hurwitz_a_example():
    # (β, α) -> (α, τ_α(β)) = (α, β + α) in the symmetric two-sphere lattice
    alf = family_word(1, 1, 5)  # (α, α, β, α, β); act at index 2
    moved = hurwitz_a(alf, 2)
    assert moved.cycles[2].cls == (1, 0)
    assert moved.cycles[3].cls == (1, 1)
    assert moved.cycles[3].label == alf.cycles[2].label
    assert "τ[" in moved.cycles[3].display


def test_hurwitz_inverse_pair(ex_ordered):
    alf = fibrate(ex_ordered, 3)
    for i in (0, 3, 8):
        assert word_of(hurwitz_b(hurwitz_a(alf, i), i)) == word_of(alf)
        assert word_of(hurwitz_a(hurwitz_b(alf, i), i)) == word_of(alf)


def test_hurwitz_pushes_beta_through_four_alphas():
    alf = family_word(6, 1, 5)
    pos = family_interior_index(6, 1)
    cur = alf
    for k in range(4):
        cur = hurwitz_a(cur, pos + k)
    assert cur.cycles[pos + 4].cls == (0, 1)  # reflection has order two
    cur4 = family_word(6, 1, 4)
    for k in range(4):
        cur4 = hurwitz_a(cur4, pos + k)
    assert cur4.cycles[pos + 4].cls == (-4, 1)  # transvection keeps adding


def test_hurwitz_index_range(ex_ordered):
    alf = fibrate(ex_ordered, 3)
    with pytest.raises(IndexOutOfRange):
        hurwitz_a(alf, 9)
    with pytest.raises(IndexOutOfRange):
        hurwitz_b(alf, -1)


@given(seeds, st.sampled_from([3, 4]))
@settings(max_examples=80, deadline=None)
def test_hurwitz_pair_identity_random(seed, n):
    t = random_tree(seed, 12)
    alf = fibrate(order_tree(t), n)
    rng = random.Random(seed)
    i = rng.randrange(len(alf.cycles) - 1)
    assert word_of(hurwitz_b(hurwitz_a(alf, i), i)) == word_of(alf)
    assert word_of(hurwitz_a(hurwitz_b(alf, i), i)) == word_of(alf)


# ---------------------------------------------------------------------------
# stabilization


def test_stabilize_prepends_new_class(a2_ordered):
    alf = fibrate(a2_ordered, 3)
    grown = stabilize(alf, "w0", 0)
    assert len(grown.fiber.pattern.vertices) == 2
    assert grown.fiber.pattern.edges == (("w0", "s1"),)
    assert grown.cycles[0].cls == (0, 1)
    assert grown.cycles[0].label == "stab:1"
    assert [c.cls for c in grown.cycles[1:]] == [(1, 0), (1, 0), (1, 0)]


def test_stabilize_preserves_old_pairings(ex_ordered):
    alf = fibrate(ex_ordered, 3)
    form = pattern_form(alf.fiber.pattern, alf.fiber.sphere_dim)
    grown = stabilize(alf, "w2", 4)
    gform = pattern_form(grown.fiber.pattern, grown.fiber.sphere_dim)
    r = len(alf.fiber.pattern.vertices)
    for i in range(r):
        for j in range(r):
            assert gform.pairing[i][j] == form.pairing[i][j]
    assert gform.pairing[r][form.basis.index("w2")] != 0


def test_stabilize_argument_checks(a2_ordered):
    alf = fibrate(a2_ordered, 3)
    with pytest.raises(UnknownVertex):
        stabilize(alf, "nope", 0)
    with pytest.raises(IndexOutOfRange):
        stabilize(alf, "w0", 4)


def test_stabilize_fresh_names_do_not_collide(a2_ordered):
    alf = fibrate(a2_ordered, 3)
    grown = stabilize(stabilize(alf, "w0", 0), "s1", 1)
    assert grown.fiber.pattern.vertices == ("w0", "s1", "s2")


# ---------------------------------------------------------------------------
# homological equality


def test_equal_homology_reflexive(ex_ordered):
    alf = fibrate(ex_ordered, 3)
    assert equal_homology(alf, alf)


def test_equal_homology_is_pointwise():
    a = family_word(2, 1, 5)
    b = cyclic_permute(a)
    assert not equal_homology(a, b)


def test_equal_homology_depends_on_classes_only(ex_ordered):
    from dataclasses import replace

    alf = fibrate(ex_ordered, 3)
    renamed = replace(
        alf,
        cycles=tuple(replace(c, display="???") for c in alf.cycles),
    )
    assert equal_homology(alf, renamed)


def test_family_shift_equivalence_by_parity():
    wit = tuple(MoveRecord(HURWITZ_A, family_interior_index(6, 1) + k) for k in range(4))
    assert equal_homology(replay(family_word(6, 1, 5), wit), family_word(6, 5, 5))
    assert not equal_homology(replay(family_word(6, 1, 4), wit), family_word(6, 5, 4))


# ---------------------------------------------------------------------------
# search


def test_search_trivial(ex_ordered):
    alf = fibrate(ex_ordered, 3)
    assert search_equivalence(alf, alf, 3) == ()


def test_search_single_move():
    a = family_word(3, 1, 5)
    b = hurwitz_a(a, 0)
    wit = search_equivalence(a, b, 3)
    assert len(wit) == 1
    assert equal_homology(replay(a, wit), b)


def test_search_family_witness():
    a, b = family_word(6, 1, 5), family_word(6, 5, 5)
    wit = search_equivalence(a, b, 6)
    assert wit is not None and len(wit) <= 4
    replayed = replay(a, wit)
    assert equal_homology(replayed, b)
    assert class_word_json(replayed) == class_word_json(b)


def test_search_not_found_is_none():
    a, b = family_word(6, 1, 5), family_word(6, 5, 5)
    assert search_equivalence(a, b, 1) is None


def test_search_requires_compatible_inputs():
    with pytest.raises(DimensionMismatch):
        search_equivalence(family_word(6, 1, 5), family_word(6, 1, 4), 2)
    with pytest.raises(DimensionMismatch):
        search_equivalence(family_word(6, 1, 5), family_word(5, 1, 5), 2)


@given(seeds, st.integers(1, 2))
@settings(max_examples=25, deadline=None)
def test_search_replays_to_target(seed, depth):
    t = random_tree(seed, 8)
    a = fibrate(order_tree(t), 3)
    rng = random.Random(seed)
    b = a
    for _ in range(depth):
        i = rng.randrange(len(a.cycles) - 1)
        b = hurwitz_a(b, i) if rng.random() < 0.5 else hurwitz_b(b, i)
    wit = search_equivalence(a, b, depth)
    assert wit is not None and len(wit) <= depth
    assert class_word_json(replay(a, wit)) == class_word_json(b)


# ---------------------------------------------------------------------------
# move invariance of total-space invariants


@given(seeds, st.sampled_from([3, 4, 5]))
@settings(max_examples=30, deadline=None)
def test_moves_preserve_homology(seed, n):
    t = random_tree(seed, 10)
    alf = fibrate(order_tree(t), n)
    base = total_homology(alf)
    rng = random.Random(seed)
    cur = alf
    for k in range(25):
        mlen = len(cur.cycles)
        kind = rng.choice("cabs")
        if kind == "c":
            cur = cyclic_permute(cur)
        elif kind == "a":
            cur = hurwitz_a(cur, rng.randrange(mlen - 1))
        elif kind == "b":
            cur = hurwitz_b(cur, rng.randrange(mlen - 1))
        else:
            attach = cur.fiber.pattern.vertices[
                rng.randrange(len(cur.fiber.pattern.vertices))
            ]
            cur = stabilize(cur, attach, rng.randrange(mlen + 1))
        assert total_homology(cur) == base


# ---------------------------------------------------------------------------
# serialization and grammar


def test_move_sequence_round_trip():
    seq = (
        MoveRecord("cyclic_permute"),
        MoveRecord("hurwitz_a", 3),
        MoveRecord("hurwitz_b", 0),
        MoveRecord("stabilize", 2, "w0"),
    )
    assert moves_from_json(moves_to_json(seq)) == seq


def test_moves_from_json_rejects_garbage():
    with pytest.raises(FormatError):
        moves_from_json('[{"kind": "teleport"}]')
    with pytest.raises(FormatError):
        moves_from_json('[{"kind": "hurwitz_a"}]')
    with pytest.raises(FormatError):
        moves_from_json("{}")


def test_parse_move_lines():
    assert parse_move_line("cyclic") == MoveRecord("cyclic_permute")
    assert parse_move_line("hurwitzA 4") == MoveRecord("hurwitz_a", 4)
    assert parse_move_line("hurwitzB 0") == MoveRecord("hurwitz_b", 0)
    assert parse_move_line("stabilize w1 3") == MoveRecord("stabilize", 3, "w1")
    with pytest.raises(FormatError):
        parse_move_line("hurwitzA x")
    with pytest.raises(FormatError):
        parse_move_line("flip 1")
