import itertools

import pytest
from hypothesis import given, strategies as st

from brickwall.lattice import (
    BrickPath,
    EnumerationLimitExceeded,
    Kind,
    LatticeSpec,
    Parity,
    Step,
    count_paths_bruteforce,
    enumerate_paths,
    iter_paths,
    joint_exists,
    parity_of,
    step_allowed,
    validate_path,
)


def row_sequences(spec):
    """Independent count: row sequences where each move stays put or crosses a joint."""
    l, w = spec.length, spec.width

    def partner(c, r):
        # Joint pairing straight from the pointwise step rules.
        if r + 1 < w and step_allowed((c, r), Step.U, spec.kind) and step_allowed((c, r + 1), Step.D, spec.kind):
            return r + 1
        if r > 0 and step_allowed((c, r), Step.D, spec.kind) and step_allowed((c, r - 1), Step.U, spec.kind):
            return r - 1
        return None

    def extend(c, r):
        if c == l:
            return 1
        nxt = {r, partner(c, r)} - {None}
        return sum(extend(c + 1, q) for q in nxt)

    return sum(extend(1, r) for r in range(w))


@pytest.mark.parametrize("point, parity", [((0, 0), Parity.EVEN), ((2, 3), Parity.ODD), ((1, 1), Parity.EVEN)])
def test_parity_of(point, parity):
    assert parity_of(point) is parity


def test_step_allowed_examples():
    assert step_allowed((0, 0), Step.U, Kind.FIRST)
    assert not step_allowed((1, 0), Step.U, Kind.FIRST)
    assert step_allowed((1, 0), Step.U, Kind.SECOND)
    assert all(step_allowed((x, y), Step.H, k) for x in range(3) for y in range(3) for k in Kind)


def test_joint_examples():
    assert joint_exists(1, 1, LatticeSpec(2, 3, Kind.FIRST))
    assert not joint_exists(1, 0, LatticeSpec(2, 3, Kind.FIRST))
    assert joint_exists(1, 0, LatticeSpec(2, 2, Kind.SECOND))


@pytest.mark.parametrize("c, j", [(0, 0), (3, 0), (1, -1), (1, 2)])
def test_joint_range_errors(c, j):
    with pytest.raises(ValueError):
        joint_exists(c, j, LatticeSpec(3, 3, Kind.FIRST))


@given(st.integers(2, 12), st.integers(2, 9), st.sampled_from(list(Kind)), st.data())
def test_parity_joint_equivalence(l, w, kind, data):
    spec = LatticeSpec(l, w, kind)
    c = data.draw(st.integers(1, l - 1))
    j = data.draw(st.integers(0, w - 2))
    assert joint_exists(c, j, spec) == (step_allowed((c, j), Step.U, kind) and step_allowed((c, j + 1), Step.D, kind))


@pytest.mark.parametrize("bad", [dict(length=0, width=3), dict(length=2, width=1), dict(length=2, width=3, kind=3)])
def test_spec_validation(bad):
    with pytest.raises(ValueError):
        LatticeSpec(**bad)


def test_enumerate_degenerate_length():
    paths = enumerate_paths(LatticeSpec(1, 3, Kind.FIRST))
    assert [(p.start_row, p.steps) for p in paths] == [(0, ()), (1, ()), (2, ())]


def test_enumerate_small_first_type():
    paths = enumerate_paths(LatticeSpec(2, 3, Kind.FIRST))
    assert [(p.start_row, p.end_row) for p in paths] == [(0, 0), (1, 1), (1, 2), (2, 2), (2, 1)]
    assert [str(p) for p in paths] == ["0:H->0", "1:H->1", "1:HU->2", "2:H->2", "2:HD->1"]


def test_enumerate_width_two_first_type():
    paths = enumerate_paths(LatticeSpec(2, 2, Kind.FIRST))
    assert [(p.start_row, p.end_row) for p in paths] == [(0, 0), (1, 1)]


def test_enumeration_limit_reports_partial_count():
    with pytest.raises(EnumerationLimitExceeded) as err:
        enumerate_paths(LatticeSpec(6, 4, Kind.SECOND), limit=10)
    assert err.value.partial_count == 10


@pytest.mark.parametrize("spec, n", [
    (LatticeSpec(5, 4, Kind.SECOND), 36),
    (LatticeSpec(1, 7, Kind.FIRST), 7),
    (LatticeSpec(3, 5, Kind.FIRST), 16),
])
def test_bruteforce_counts(spec, n):
    assert count_paths_bruteforce(spec) == n


def test_bruteforce_guard():
    with pytest.raises(EnumerationLimitExceeded):
        count_paths_bruteforce(LatticeSpec(8, 6, Kind.FIRST), max_paths=100)


def test_validate_examples():
    spec = LatticeSpec(2, 3, Kind.FIRST)
    check = validate_path(BrickPath(spec, 1, (Step.U, Step.H)))
    assert not check and check.rule == "vertical step on left side" and check.index == 0
    assert validate_path(BrickPath(spec, 1, (Step.H, Step.U)))
    check = validate_path(BrickPath(LatticeSpec(3, 5, Kind.FIRST), 1, (Step.H, Step.U, Step.D, Step.H)))
    assert check.rule == "consecutive vertical steps" and check.index == 2


def test_validate_other_rules():
    spec = LatticeSpec(3, 3, Kind.FIRST)
    assert validate_path(BrickPath(spec, 0, (Step.H, Step.U, Step.H))).rule == "vertical step forbidden by parity"
    assert validate_path(BrickPath(spec, 0, (Step.H,))).rule == "does not reach the right side"
    assert validate_path(BrickPath(spec, 0, (Step.H, Step.H, Step.H))).rule == "leaves the rectangle"
    assert validate_path(BrickPath(spec, 2, (Step.H, Step.U, Step.H))).rule == "vertical step forbidden by parity"
    assert validate_path(BrickPath(spec, 3, (Step.H, Step.H))).rule == "start row out of range"


SMALL = [LatticeSpec(l, w, k) for w in range(2, 7) for l in range(1, 8) for k in Kind]


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_enumeration_closure(spec):
    paths = enumerate_paths(spec)
    assert len(set(paths)) == len(paths)
    assert [p.sort_key() for p in paths] == sorted(p.sort_key() for p in paths)
    for p in paths:
        assert validate_path(p)
        assert p.steps.count(Step.H) == spec.length - 1
        assert not p.steps or p.steps[0] is Step.H
        # at most one vertical step per column, always right after the entering H
        for i, s in enumerate(p.steps):
            if s.is_vertical:
                assert p.steps[i - 1] is Step.H
        assert BrickPath.from_string(spec, str(p)) == p


@pytest.mark.parametrize("spec", [LatticeSpec(l, w, k) for w in range(2, 7) for l in range(1, 9) for k in Kind], ids=str)
def test_row_sequence_bijection(spec):
    paths = enumerate_paths(spec)
    assert len({p.row_sequence() for p in paths}) == len(paths)
    assert len(paths) == row_sequences(spec)


def reflect(path):
    spec = path.spec
    flip = {Step.H: Step.H, Step.U: Step.D, Step.D: Step.U}
    return BrickPath(spec.reflected(), spec.width - 1 - path.start_row, tuple(flip[s] for s in path.steps))


@pytest.mark.parametrize("w", [3, 5, 7])
@pytest.mark.parametrize("l", range(1, 9))
def test_reflection_duality(w, l):
    first = enumerate_paths(LatticeSpec(l, w, Kind.FIRST))
    second = enumerate_paths(LatticeSpec(l, w, Kind.SECOND))
    assert {reflect(p) for p in first} == set(second)


def test_canonical_form_is_unique_placement():
    # Every legal step string over a small rectangle is one of the enumerated paths.
    spec = LatticeSpec(4, 3, Kind.SECOND)
    legal = set()
    for start in range(spec.width):
        for n in range(spec.length - 1, 2 * spec.length):
            for steps in itertools.product(list(Step), repeat=n):
                p = BrickPath(spec, start, steps)
                if validate_path(p):
                    legal.add(p)
    assert legal == set(iter_paths(spec))
