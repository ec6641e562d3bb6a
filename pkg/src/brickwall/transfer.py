"""Exact path counts by column-to-column propagation.

Each interior column ``c`` carries a transfer matrix that is a direct sum
of 2x2 all-ones blocks (joined row pairs) and 1x1 identity blocks.  It is
stored sparsely as its list of joined pairs, so one propagation step is a
handful of big-integer additions instead of a dense product.

Vectors and matrices here are bottom-up (index 0 is the bottom row).  The
printed convention lists the top row first; use :func:`to_top_down` to
convert.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import Kind, LatticeSpec, column_pairs, joint_pairs

CountColumn = tuple[int, ...]
Matrix = list[list[int]]


@dataclass(frozen=True)
class TransferMatrix:
    width: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(p) for p in self.pairs))
        seen: set[int] = set()
        for a, b in pairs:
            if b != a + 1 or not (0 <= a and b < self.width):
                raise ValueError(f"pair {(a, b)} is not two adjacent rows of a width-{self.width} matrix")
            if a in seen or b in seen:
                raise ValueError(f"pairs overlap at {(a, b)}")
            seen.update((a, b))
        object.__setattr__(self, "pairs", pairs)

    def dense(self) -> Matrix:
        m = [[int(i == j) for j in range(self.width)] for i in range(self.width)]
        for a, b in self.pairs:
            m[a][b] = m[b][a] = 1
        return m

    def dense_top_down(self) -> Matrix:
        return to_top_down(self.dense())


def to_top_down(obj):
    """Reverse row order of a vector, or rows and columns of a matrix."""
    if obj and isinstance(obj[0], (list, tuple)):
        return [list(reversed(row)) for row in reversed(obj)]
    return list(reversed(obj))


def column_matrix(spec: LatticeSpec, c: int) -> TransferMatrix:
    return TransferMatrix(spec.width, column_pairs(spec, c))


_PAPER_MATRICES = {
    # name: (required width parity, first paired row)
    "MU": (1, 1),
    "ML": (1, 0),
    "Mminus": (0, 1),
    "Mplus": (0, 0),
}


def paper_matrix(name: str, w: int) -> TransferMatrix:
    """The named alternating matrices: MU, ML (odd width), Mminus, Mplus (even width)."""
    try:
        parity, first = _PAPER_MATRICES[name]
    except KeyError:
        raise ValueError(f"unknown matrix {name!r}; expected one of {sorted(_PAPER_MATRICES)}") from None
    if w < 2 or w % 2 != parity:
        raise ValueError(f"{name} requires {'odd' if parity else 'even'} width >= 2, got {w}")
    return TransferMatrix(w, tuple((j, j + 1) for j in range(first, w - 1, 2)))


def advance(col: Sequence[int], m: TransferMatrix) -> CountColumn:
    if len(col) != m.width:
        raise ValueError(f"column has {len(col)} entries, matrix width is {m.width}")
    out = list(col)
    for a, b in m.pairs:
        out[a] = out[b] = col[a] + col[b]
    return tuple(out)


def _column_matrices(spec: LatticeSpec) -> tuple[TransferMatrix, TransferMatrix]:
    """Matrices for odd and even columns; joints only depend on column parity."""
    w, kind = spec.width, spec.kind
    return TransferMatrix(w, joint_pairs(w, kind, 1)), TransferMatrix(w, joint_pairs(w, kind, 2))


def propagate(spec: LatticeSpec, initial: Sequence[int], upto: int | None = None) -> CountColumn:
    """Apply ``A_upto ... A_1`` to ``initial`` (default ``upto = length - 1``)."""
    if upto is None:
        upto = spec.length - 1
    if not 0 <= upto <= spec.length - 1:
        raise ValueError(f"column {upto} outside 0..{spec.length - 1}")
    if len(initial) != spec.width:
        raise ValueError(f"initial vector has {len(initial)} entries, width is {spec.width}")
    odd, even = _column_matrices(spec)
    col = list(initial)
    for c in range(1, upto + 1):
        for a, b in (odd if c % 2 else even).pairs:
            col[a] = col[b] = col[a] + col[b]
    return tuple(col)


def column_vector(spec: LatticeSpec, i: int) -> CountColumn:
    """Number of paths from the left side to each ``(i, j)``."""
    return propagate(spec, (1,) * spec.width, i)


def count_paths(spec: LatticeSpec) -> int:
    return sum(column_vector(spec, spec.length - 1))


def identity(w: int) -> Matrix:
    return [[int(i == j) for j in range(w)] for i in range(w)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def matpow(a: Matrix, n: int) -> Matrix:
    if n < 0:
        raise ValueError("negative matrix power")
    result = identity(len(a))
    base = a
    while n:
        if n & 1:
            result = matmul(base, result)
        n >>= 1
        if n:
            base = matmul(base, base)
    return result


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def transition_matrix(spec: LatticeSpec) -> Matrix:
    """Dense ``A_{l-1} ... A_1``; entry ``[end][start]`` counts paths between those rows."""
    if spec.length < 2:
        raise ValueError("transition matrix needs length >= 2")
    w = spec.width
    # Propagate each unit vector through the sparse columns; column k of M.
    cols = []
    for k in range(w):
        e = [0] * w
        e[k] = 1
        cols.append(propagate(spec, e))
    return transpose(cols)


def theorem_count(spec: LatticeSpec) -> int:
    """Count via the closed parity-cased matrix-power formulas.

    Odd width: ``(ML MU)^rho b0`` for an even number of factors and
    ``MU (ML MU)^rho b0`` for an odd number, with the first-kind ordering
    (the second kind is its mirror image and has the same count).
    Even width: ``(M+ M-)^rho`` / ``M- (M+ M-)^rho`` for the first kind and
    the same with M+ and M- exchanged for the second.
    """
    l, w = spec.length, spec.width
    if l < 2:
        raise ValueError("closed forms need length >= 2")
    b0 = [1] * w
    if w % 2:
        inner = paper_matrix("MU", w).dense()
        outer = paper_matrix("ML", w).dense()
        r = l - 1
        rho = r // 2
        block = matpow(matmul(outer, inner), rho)
        b = matvec(block, b0) if r % 2 == 0 else matvec(inner, matvec(block, b0))
        return sum(b)
    mm = paper_matrix("Mminus", w).dense()
    mp = paper_matrix("Mplus", w).dense()
    first, second = (mm, mp) if spec.kind is Kind.FIRST else (mp, mm)
    rho = (l - 1) // 2
    block = matpow(matmul(second, first), rho)
    b = matvec(block, b0) if l % 2 else matvec(first, matvec(block, b0))
    return sum(b)
