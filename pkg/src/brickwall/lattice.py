"""Brick-wall lattice geometry and the exhaustive path-enumeration oracle.

Rows are indexed bottom-up (``y = 0`` is the bottom row) and columns
left-to-right (``x = 0`` is the left side of the rectangle).  A vertical
joint at column ``c`` pairs rows ``j`` and ``j + 1``; whether it exists is
decided by the parity of ``c + j`` and the lattice kind.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterator, NamedTuple, Optional, Sequence


class Kind(IntEnum):
    """Lattice type: origin at a brick corner (FIRST) or mid-brick (SECOND)."""

    FIRST = 1
    SECOND = 2

    @property
    def other(self) -> "Kind":
        return Kind.SECOND if self is Kind.FIRST else Kind.FIRST


class Parity(Enum):
    EVEN = 0
    ODD = 1


class Step(str, Enum):
    H = "H"
    U = "U"
    D = "D"

    @property
    def delta(self) -> tuple[int, int]:
        return _DELTAS[self]

    @property
    def is_vertical(self) -> bool:
        return self is not Step.H


_DELTAS = {Step.H: (1, 0), Step.U: (0, 1), Step.D: (0, -1)}
_STEP_ORDER = {Step.H: 0, Step.U: 1, Step.D: 2}


@dataclass(frozen=True)
class LatticeSpec:
    """A problem instance: ``length`` columns by ``width`` rows of one kind."""

    length: int
    width: int
    kind: Kind = Kind.FIRST

    def __post_init__(self):
        if int(self.length) != self.length or self.length < 1:
            raise ValueError(f"length must be an integer >= 1, got {self.length!r}")
        if int(self.width) != self.width or self.width < 2:
            raise ValueError(f"width must be an integer >= 2, got {self.width!r}")
        object.__setattr__(self, "kind", Kind(self.kind))

    def reflected(self) -> "LatticeSpec":
        """Same rectangle with the other lattice kind."""
        return LatticeSpec(self.length, self.width, self.kind.other)


class LatticePoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class BrickPath:
    spec: LatticeSpec
    start_row: int
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Step(s) for s in self.steps))

    @property
    def end_row(self) -> int:
        return self.start_row + sum(s.delta[1] for s in self.steps)

    def points(self) -> list[LatticePoint]:
        x, y = 0, self.start_row
        pts = [LatticePoint(x, y)]
        for s in self.steps:
            dx, dy = s.delta
            x, y = x + dx, y + dy
            pts.append(LatticePoint(x, y))
        return pts

    def row_sequence(self) -> tuple[int, ...]:
        """Row occupied when leaving each column (the row-sequence encoding)."""
        rows = [self.start_row]
        y = self.start_row
        for s in self.steps:
            if s is Step.H:
                rows.append(y)
            else:
                y += s.delta[1]
                rows[-1] = y
        return tuple(rows)

    def sort_key(self) -> tuple:
        return (self.start_row, tuple(_STEP_ORDER[s] for s in self.steps))

    @property
    def step_string(self) -> str:
        return "".join(s.value for s in self.steps)

    def __str__(self) -> str:
        return f"{self.start_row}:{self.step_string}->{self.end_row}"

    def to_record(self) -> dict:
        return {"start_row": self.start_row, "steps": self.step_string, "end_row": self.end_row}

    @classmethod
    def from_string(cls, spec: LatticeSpec, text: str) -> "BrickPath":
        """Parse the ``start:STEPS->end`` text form."""
        head, _, tail = text.partition("->")
        start, _, steps = head.partition(":")
        path = cls(spec, int(start), tuple(Step(c) for c in steps.strip()))
        if tail and int(tail) != path.end_row:
            raise ValueError(f"end row {tail} does not match steps in {text!r}")
        return path


class PathCheck(NamedTuple):
    valid: bool
    rule: Optional[str] = None
    index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.valid


class EnumerationLimitExceeded(RuntimeError):
    """Raised when enumeration would produce more paths than allowed."""

    def __init__(self, limit: int, partial_count: int):
        super().__init__(f"path enumeration exceeded limit of {limit} (stopped after {partial_count})")
        self.limit = limit
        self.partial_count = partial_count


def parity_of(p: Sequence[int]) -> Parity:
    return Parity.EVEN if (abs(p[0]) + abs(p[1])) % 2 == 0 else Parity.ODD


def step_allowed(p: Sequence[int], s: Step, kind: Kind) -> bool:
    s = Step(s)
    if s is Step.H:
        return True
    even = parity_of(p) is Parity.EVEN
    up_on_even = Kind(kind) is Kind.FIRST
    if s is Step.U:
        return even == up_on_even
    return even != up_on_even


def _has_joint(c: int, j: int, kind: Kind) -> bool:
    # FIRST: joint iff c + j even; SECOND: iff odd.
    return (c + j) % 2 == (0 if kind is Kind.FIRST else 1)


def joint_exists(c: int, j: int, spec: LatticeSpec) -> bool:
    """Whether a vertical joint connects ``(c, j)`` and ``(c, j + 1)``."""
    if not 1 <= c <= spec.length - 1:
        raise ValueError(f"column {c} outside 1..{spec.length - 1}")
    if not 0 <= j <= spec.width - 2:
        raise ValueError(f"lower row {j} outside 0..{spec.width - 2}")
    return _has_joint(c, j, spec.kind)


def joint_pairs(width: int, kind: Kind, c: int) -> tuple[tuple[int, int], ...]:
    """Row pairs joined at a column of parity ``c % 2``; no range check on ``c``."""
    return tuple((j, j + 1) for j in range(width - 1) if _has_joint(c, j, Kind(kind)))


def column_pairs(spec: LatticeSpec, c: int) -> tuple[tuple[int, int], ...]:
    """Row pairs joined at column ``c`` (bottom-up)."""
    if not 1 <= c <= spec.length - 1:
        raise ValueError(f"column {c} outside 1..{spec.length - 1}")
    return joint_pairs(spec.width, spec.kind, c)


def validate_path(path: BrickPath) -> PathCheck:
    """Check every structural rule; report the first violation."""
    spec = path.spec
    l, w = spec.length, spec.width
    if not 0 <= path.start_row < w:
        return PathCheck(False, "start row out of range", None)
    x, y = 0, path.start_row
    prev_vertical = False
    for i, s in enumerate(path.steps):
        if s.is_vertical:
            if x == 0:
                return PathCheck(False, "vertical step on left side", i)
            if prev_vertical:
                return PathCheck(False, "consecutive vertical steps", i)
            if not step_allowed((x, y), s, spec.kind):
                return PathCheck(False, "vertical step forbidden by parity", i)
        dx, dy = s.delta
        x, y = x + dx, y + dy
        if not (0 <= x <= l - 1 and 0 <= y <= w - 1):
            return PathCheck(False, "leaves the rectangle", i)
        prev_vertical = s.is_vertical
    if x != l - 1:
        return PathCheck(False, "does not reach the right side", None)
    return PathCheck(True)


def iter_paths(spec: LatticeSpec) -> Iterator[BrickPath]:
    """Yield all paths of ``spec`` in canonical lexicographic order.

    Depth-first over (start row, H < U < D); a vertical step is only tried
    directly after the H that enters a column, which is the only place the
    parity rules permit one.
    """
    l, w, kind = spec.length, spec.width, spec.kind
    steps: list[Step] = []

    def extend(x: int, y: int) -> Iterator[tuple[Step, ...]]:
        # Called right after an H step has landed on (x, y), x >= 1.
        if x == l - 1:
            yield tuple(steps)
        else:
            steps.append(Step.H)
            yield from extend(x + 1, y)
            steps.pop()
        for s, ny in ((Step.U, y + 1), (Step.D, y - 1)):
            if 0 <= ny < w and step_allowed((x, y), s, kind):
                steps.append(s)
                if x == l - 1:
                    yield tuple(steps)
                else:
                    steps.append(Step.H)
                    yield from extend(x + 1, ny)
                    steps.pop()
                steps.pop()

    for alpha in range(w):
        if l == 1:
            yield BrickPath(spec, alpha, ())
            continue
        steps.append(Step.H)
        for seq in extend(1, alpha):
            yield BrickPath(spec, alpha, seq)
        steps.pop()


def enumerate_paths(spec: LatticeSpec, limit: Optional[int] = None) -> list[BrickPath]:
    out = []
    for path in iter_paths(spec):
        if limit is not None and len(out) >= limit:
            raise EnumerationLimitExceeded(limit, len(out))
        out.append(path)
    return out


def count_paths_bruteforce(spec: LatticeSpec, max_paths: int = 10_000_000) -> int:
    """Count paths by exhaustive enumeration; refuses to run past ``max_paths``."""
    n = 0
    for _ in iter_paths(spec):
        n += 1
        if n > max_paths:
            raise EnumerationLimitExceeded(max_paths, n - 1)
    return n
