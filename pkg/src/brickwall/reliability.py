"""Two-terminal reliability of hammock (brick-wall) relay networks.

A hammock of width ``w`` and length ``l`` has ``m = w*l`` relays.  Relay
``(i, j)`` joins boundary ``i`` to boundary ``i + 1`` along row ``j``.
Boundary 0 is the source S, boundary ``l`` the terminus T, and interior
boundaries short together the row pairs that share a vertical joint.

The first two nonzero coefficients of the P-form come from path counts;
everything else here is an exhaustive or sampling oracle.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .lattice import Kind, LatticeSpec, joint_exists
from .transfer import Matrix, matmul, matpow, paper_matrix, propagate, transpose

DEFAULT_MAX_STATES = 1 << 24
HARD_MAX_STATES = 1 << 30
_CHUNK = 1 << 18


class StateGuardExceeded(RuntimeError):
    def __init__(self, m: int, limit: int):
        super().__init__(
            f"exhaustive reliability needs 2**{m} relay states, above the limit of {limit} "
            f"(raise it with --max-states, hard cap 2**30)"
        )
        self.m = m
        self.limit = limit


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class HammockNetwork:
    spec: LatticeSpec
    relays: tuple[tuple[int, int], ...]  # (column, row); relay index = column*w + row
    edges: tuple[tuple[int, int], ...]  # node-class endpoints per relay
    n_nodes: int
    source: int
    terminal: int
    merges: tuple[tuple[int, int], ...]  # interior (boundary, lower row) joints

    @property
    def m(self) -> int:
        return len(self.relays)

    def relay_index(self, column: int, row: int) -> int:
        return column * self.spec.width + row


def build_network(spec: LatticeSpec) -> HammockNetwork:
    l, w = spec.length, spec.width
    if l < 2:
        raise ValueError("hammock networks need length >= 2 (length 1 collapses S onto T)")
    node = lambda b, j: b * w + j  # noqa: E731
    uf = _UnionFind((l + 1) * w)
    for j in range(1, w):
        uf.union(node(0, 0), node(0, j))
        uf.union(node(l, 0), node(l, j))
    merges = []
    for c in range(1, l):
        for j in range(w - 1):
            if joint_exists(c, j, spec):
                uf.union(node(c, j), node(c, j + 1))
                merges.append((c, j))
    roots: dict[int, int] = {}
    for v in range((l + 1) * w):
        roots.setdefault(uf.find(v), len(roots))
    cls = lambda b, j: roots[uf.find(node(b, j))]  # noqa: E731
    relays = tuple((i, j) for i in range(l) for j in range(w))
    edges = tuple((cls(i, j), cls(i + 1, j)) for i, j in relays)
    return HammockNetwork(spec, relays, edges, len(roots), cls(0, 0), cls(l, 0), tuple(merges))


def _as_mask(net: HammockNetwork, closed) -> int:
    if isinstance(closed, (int, np.integer)):
        return int(closed)
    mask = 0
    for item in closed:
        idx = net.relay_index(*item) if isinstance(item, tuple) else int(item)
        if not 0 <= idx < net.m:
            raise ValueError(f"relay {item} not in network")
        mask |= 1 << idx
    return mask


def is_operational(net: HammockNetwork, closed: Union[int, Iterable]) -> bool:
    """Whether S reaches T through closed relays; ``closed`` is a bitmask or relay list."""
    mask = _as_mask(net, closed)
    uf = _UnionFind(net.n_nodes)
    for e, (a, b) in enumerate(net.edges):
        if mask >> e & 1:
            uf.union(a, b)
    return uf.find(net.source) == uf.find(net.terminal)


def operational_batch(net: HammockNetwork, closed: np.ndarray) -> np.ndarray:
    """Vectorised :func:`is_operational` over ``closed`` of shape ``(m, n)``."""
    n = closed.shape[1]
    reach = np.zeros((net.n_nodes, n), dtype=bool)
    reach[net.source] = True
    order = list(enumerate(net.edges))
    sweeps = (order, order[::-1])
    total = int(reach.sum())
    while True:
        for sweep in sweeps:
            for e, (a, b) in sweep:
                c = closed[e]
                reach[b] |= reach[a] & c
                reach[a] |= reach[b] & c
        new_total = int(reach.sum())
        if new_total == total:
            return reach[net.terminal].copy()
        total = new_total


def _check_guard(m: int, max_states: int) -> None:
    limit = min(max_states, HARD_MAX_STATES)
    if (1 << m) > limit:
        raise StateGuardExceeded(m, limit)


def operational_states(net: HammockNetwork, max_states: int = DEFAULT_MAX_STATES) -> np.ndarray:
    """Boolean table indexed by relay bitmask, for all ``2**m`` states."""
    m = net.m
    _check_guard(m, max_states)
    shifts = np.arange(m, dtype=np.uint64)[:, None]
    out = np.empty(1 << m, dtype=bool)
    for start in range(0, 1 << m, _CHUNK):
        states = np.arange(start, min(start + _CHUNK, 1 << m), dtype=np.uint64)
        bits = ((states[None, :] >> shifts) & np.uint64(1)).astype(bool)
        out[start:start + len(states)] = operational_batch(net, bits)
    return out


def brute_force_Ntable(net: HammockNetwork, max_states: int = DEFAULT_MAX_STATES) -> list[int]:
    """``N_k`` for all ``k``: operational ``k``-subsets, by exhausting every relay state."""
    m = net.m
    _check_guard(m, max_states)
    counts = np.zeros(m + 1, dtype=np.int64)
    shifts = np.arange(m, dtype=np.uint64)[:, None]
    for start in range(0, 1 << m, _CHUNK):
        states = np.arange(start, min(start + _CHUNK, 1 << m), dtype=np.uint64)
        bits = ((states[None, :] >> shifts) & np.uint64(1)).astype(bool)
        ok = operational_batch(net, bits)
        counts += np.bincount(bits[:, ok].sum(axis=0), minlength=m + 1)
    return [int(c) for c in counts]


def n_to_p(n: Sequence[int]) -> list[int]:
    """P-form coefficients from N-form: ``P_k = sum_j N_j (-1)^(k-j) C(m-j, k-j)``."""
    m = len(n) - 1
    return [
        sum(n[j] * (-1) ** (k - j) * math.comb(m - j, k - j) for j in range(k + 1))
        for k in range(m + 1)
    ]


class EdgeMasks(NamedTuple):
    left: tuple[int, ...]  # start rows in a joint at column 1
    right: tuple[int, ...]  # end rows in a joint at column l-1


def edge_masks(spec: LatticeSpec) -> EdgeMasks:
    l, w = spec.length, spec.width
    if l < 2:
        raise ValueError("edge masks need length >= 2")

    def mask(c):
        return tuple(
            int((j < w - 1 and joint_exists(c, j, spec)) or (j > 0 and joint_exists(c, j - 1, spec)))
            for j in range(w)
        )

    return EdgeMasks(mask(1), mask(l - 1))


def first_coefficient(spec: LatticeSpec) -> int:
    """``P_l = N_l``: the number of minimal pathsets, one per lattice path."""
    if spec.length < 2:
        raise ValueError("reliability needs length >= 2")
    return sum(propagate(spec, (1,) * spec.width))


def _half_brick_paths(spec: LatticeSpec) -> int:
    # u M u1^T + u2 M u^T, evaluated by sparse propagation.
    masks = edge_masks(spec)
    from_left = sum(propagate(spec, masks.left))
    into_right = sum(x * y for x, y in zip(masks.right, propagate(spec, (1,) * spec.width)))
    return from_left + into_right


def second_coefficient(spec: LatticeSpec) -> int:
    """``P_{l+1} = -(u M u1^T + u2 M u^T) / 2``."""
    if spec.length < 2:
        raise ValueError("reliability needs length >= 2")
    total = _half_brick_paths(spec)
    if total % 2:
        raise ArithmeticError(f"half-brick path total {total} is odd for {spec}; edge masks are inconsistent")
    return -(total // 2)


def second_pathset_count(spec: LatticeSpec) -> int:
    """``N_{l+1} = (wl - l) N_l + P_{l+1}``."""
    l, w = spec.length, spec.width
    return (w * l - l) * first_coefficient(spec) + second_coefficient(spec)


def _quad(a: Sequence[int], m: Matrix, b: Sequence[int]) -> int:
    return sum(a[i] * m[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))


def second_coefficient_specialized(spec: LatticeSpec) -> int:
    """Second coefficient from the four closed end-case formulas.

    Odd width uses ``-u M v^T`` with the first-kind ordering (the second
    kind mirrors it).  Even width picks by the matrices at the two ends:
    M- both ends ``-u M t^T``; M+ both ends ``-u M u^T``; mixed
    ``-(u M t^T + u M^T u^T) / 2`` with M oriented so M- acts first.
    """
    l, w = spec.length, spec.width
    if l < 2:
        raise ValueError("reliability needs length >= 2")
    u = [1] * w
    v = [0] + [1] * (w - 1)
    t = [0] + [1] * (w - 2) + [0] if w > 2 else [0, 0]
    factors = l - 1
    if w % 2:
        mu, ml = paper_matrix("MU", w).dense(), paper_matrix("ML", w).dense()
        block = matpow(matmul(ml, mu), factors // 2)
        m = block if factors % 2 == 0 else matmul(mu, block)
        return -_quad(u, m, v)
    mm, mp = paper_matrix("Mminus", w).dense(), paper_matrix("Mplus", w).dense()
    first = mm if spec.kind is Kind.FIRST else mp
    second = mp if first is mm else mm
    block = matpow(matmul(second, first), factors // 2)
    m = block if factors % 2 == 0 else matmul(first, block)
    last = first if factors % 2 else second
    if first is mm and last is mm:
        return -_quad(u, m, t)
    if first is mp and last is mp:
        return -_quad(u, m, u)
    if first is mp:
        # Mirror left-right so that M- is the first factor applied.
        m = transpose(m)
    total = _quad(u, m, t) + _quad(u, transpose(m), u)
    if total % 2:
        raise ArithmeticError("mixed-end half sum is odd")
    return -(total // 2)


@dataclass(frozen=True)
class ReliabilityReport:
    w: int
    l: int
    kind: int
    m: int
    N_l: int
    N_l1: int
    P_l: int
    P_l1: int
    method: str

    def to_json(self) -> dict:
        d = {"w": self.w, "l": self.l, "kind": self.kind, "m": self.m}
        for key in ("N_l", "N_l1", "P_l", "P_l1"):
            d[key] = str(getattr(self, key))
        d["method"] = self.method
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ReliabilityReport":
        return cls(
            int(d["w"]), int(d["l"]), int(d["kind"]), int(d["m"]),
            int(d["N_l"]), int(d["N_l1"]), int(d["P_l"]), int(d["P_l1"]), d["method"],
        )


def _spec_of(obj) -> LatticeSpec:
    return obj.spec if isinstance(obj, HammockNetwork) else obj


def reliability_polynomial(net, mode: str = "exact_bruteforce", max_states: int = DEFAULT_MAX_STATES):
    """Full P-form by brute force, or the analytic ``(P_l, P_{l+1})`` pair."""
    if mode == "exact_bruteforce":
        if not isinstance(net, HammockNetwork):
            net = build_network(net)
        return n_to_p(brute_force_Ntable(net, max_states))
    if mode == "coefficients_only":
        spec = _spec_of(net)
        return first_coefficient(spec), second_coefficient(spec)
    raise ValueError(f"unknown mode {mode!r}")


def analytic_report(spec: LatticeSpec) -> ReliabilityReport:
    p_l, p_l1 = first_coefficient(spec), second_coefficient(spec)
    m = spec.width * spec.length
    return ReliabilityReport(
        spec.width, spec.length, int(spec.kind), m, p_l, (m - spec.length) * p_l + p_l1, p_l, p_l1, "analytic"
    )


def bruteforce_report(spec: LatticeSpec, max_states: int = DEFAULT_MAX_STATES) -> ReliabilityReport:
    n = brute_force_Ntable(build_network(spec), max_states)
    p = n_to_p(n)
    l = spec.length
    return ReliabilityReport(spec.width, l, int(spec.kind), len(n) - 1, n[l], n[l + 1], p[l], p[l + 1], "bruteforce")


def _to_probability(p) -> Fraction:
    if isinstance(p, str):
        p = Fraction(p)
    if isinstance(p, (Rational, float)):
        q = Fraction(p)
    else:
        raise TypeError(f"probability must be rational or float, got {type(p).__name__}")
    if not 0 <= q <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return q


def eval_polynomial(p_table: Sequence[int], p) -> Fraction:
    """``sum P_k p^k`` in exact rational arithmetic (floats are taken at their exact value)."""
    q = _to_probability(p)
    acc = Fraction(0)
    for c in reversed(p_table):
        acc = acc * q + c
    return acc


class MonteCarloResult(NamedTuple):
    estimate: float
    standard_error: float
    trials: int


def _mc_worker(net: HammockNetwork, p: float, trials: int, seed_seq, batch: int) -> int:
    rng = np.random.default_rng(seed_seq)
    hits = 0
    done = 0
    while done < trials:
        n = min(batch, trials - done)
        closed = rng.random((net.m, n)) < p
        hits += int(operational_batch(net, closed).sum())
        done += n
    return hits


def monte_carlo_estimate(
    net: HammockNetwork, p: float, trials: int, seed: int = 0, workers: int = 1, batch: int = 1 << 16
) -> MonteCarloResult:
    """Fraction of sampled relay states that connect S to T.

    The seed is split into ``workers`` independent PCG64 streams, so a run
    is reproducible for a fixed (seed, trials, workers); changing the
    worker count changes the sample.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    streams = np.random.SeedSequence(seed).spawn(workers)
    shares = [trials // workers + (i < trials % workers) for i in range(workers)]
    if workers == 1:
        hits = _mc_worker(net, p, trials, streams[0], batch)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda a: _mc_worker(net, p, a[0], a[1], batch), zip(shares, streams)))
    est = hits / trials
    return MonteCarloResult(est, math.sqrt(est * (1 - est) / trials), trials)
