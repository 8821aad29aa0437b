"""Brute-force ground truth: cluster enumeration and exhaustive code checks."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator

import numpy as np

from . import gf2
from .codec import CodeAssembly, _split, decode, encode, locate_cluster
from .components import ComponentCode, decode_positions, iter_bursts, burst_positions
from .errors import BudgetExceeded, ShapeUnsupported, Undecodable
from .report import CheckReport
from .shapes import Cluster, ShapeSpec

DEFAULT_BUDGET = 10**8


def _patterns(cells: int, t: int | None) -> list[int]:
    """Nonzero subsets of range(cells) as bitmasks, weight <= t."""
    if t is None or t >= cells:
        return list(range(1, 1 << cells))
    out = []
    for k in range(1, t + 1):
        for combo in itertools.combinations(range(cells), k):
            out.append(sum(1 << c for c in combo))
    return out


def _estimate(shape: ShapeSpec, dims) -> int:
    anchors = sum(1 for _ in shape.anchors(dims, whole=shape.is_box))
    per = sum(math.comb(shape.volume, k) for k in range(1, (shape.weight_limit or shape.volume) + 1))
    return anchors * per


def enumerate_clusters(shape: ShapeSpec, dims, budget: int = DEFAULT_BUDGET) -> Iterator[Cluster]:
    """Every admissible cluster on the array exactly once, in a fixed order.

    Boxes use the placement clamped to the array at the cluster's minimal
    corner; Lee shapes include partial spheres that straddle the border.
    """
    dims = tuple(dims)
    if shape.D != len(dims):
        raise ShapeUnsupported("shape and array dimension differ")
    if _estimate(shape, dims) > budget:
        raise BudgetExceeded(f"cluster enumeration would exceed {budget} cases")
    offsets = shape.offsets()
    pats = _patterns(len(offsets), shape.weight_limit)
    if shape.is_box:
        yield from _enumerate_box(shape, dims, offsets, pats)
    else:
        yield from _enumerate_lee(shape, dims, offsets)


def _enumerate_box(shape, dims, offsets, pats):
    D = len(dims)
    lows = []
    for pat in pats:
        cells = [offsets[u] for u in gf2.bits_of(pat)]
        lows.append(tuple(min(c[j] for c in cells) for j in range(D)))
    last = tuple(n - b for n, b in zip(dims, shape.sides))
    for corner in shape.anchors(dims, whole=True):
        free = [corner[j] == last[j] for j in range(D)]
        for pat, low in zip(pats, lows):
            if any(low[j] and not free[j] for j in range(D)):
                continue
            yield Cluster(
                frozenset(tuple(c + o for c, o in zip(corner, offsets[u])) for u in gf2.bits_of(pat)),
                shape,
            )


def _enumerate_lee(shape, dims, offsets):
    seen = set()
    t = shape.weight_limit
    for center in shape.anchors(dims, whole=False):
        cells = [tuple(c + o for c, o in zip(center, off)) for off in offsets]
        cells = [p for p in cells if all(0 <= x < n for x, n in zip(p, dims))]
        for pat in _patterns(len(cells), t):
            key = frozenset(cells[u] for u in gf2.bits_of(pat))
            if key not in seen:
                seen.add(key)
                yield Cluster(key, shape)


def count_clusters(shape: ShapeSpec, dims, budget: int = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in enumerate_clusters(shape, dims, budget))


def count_clusters_bruteforce(shape: ShapeSpec, dims) -> int:
    """Distinct subsets over every placement, deduplicated with a set."""
    dims = tuple(dims)
    seen = set()
    offsets = shape.offsets()
    for anchor in shape.anchors(dims, whole=False):
        cells = [tuple(a + o for a, o in zip(anchor, off)) for off in offsets]
        cells = [p for p in cells if all(0 <= x < n for x, n in zip(p, dims))]
        for pat in _patterns(len(cells), shape.weight_limit):
            seen.add(frozenset(cells[u] for u in gf2.bits_of(pat)))
    return len(seen)


def count_box_clusters(sides, dims, t: int | None = None) -> int:
    """Closed-form count: sum over bounding boxes h <= sides of placements x face-touching subsets."""

    def nonempty_upto(m):
        top = m if t is None else min(t, m)
        return sum(math.comb(m, k) for k in range(1, top + 1))

    total = 0
    for h in itertools.product(*(range(1, b + 1) for b in sides)):
        places = math.prod(n - x + 1 for n, x in zip(dims, h))
        if places <= 0:
            continue
        touching = 0
        for removed in itertools.product(range(4), repeat=len(h)):
            # per axis, a subset of {first slice, last slice} to exclude
            sign = 1
            m = 1
            for hj, mask in zip(h, removed):
                k = bin(mask).count("1")
                sign *= (-1) ** k
                m *= (hj - k) if hj >= 2 else (0 if k else 1)
            touching += sign * nonempty_upto(m)
        total += places * touching
    return total


# ---------------------------------------------------------------------------
# code checks


def _columns_for(target):
    if isinstance(target, CodeAssembly):
        return lambda cl: gf2.xor_all(target.column(p) for p in cl.positions)
    cols = target.columns if hasattr(target, "columns") else target
    return lambda cl: gf2.xor_all(cols[p[0]] for p in cl.positions)


def verify_distinct_syndromes(target, clusters: Iterable[Cluster]) -> CheckReport:
    """All clusters get nonzero, pairwise distinct syndromes."""
    syn_of = _columns_for(target)
    seen: dict[int, Cluster] = {}
    cases = 0
    for cl in clusters:
        cases += 1
        s = syn_of(cl)
        if s == 0:
            return CheckReport("distinct-syndromes", False, cases, ("zero", cl.sorted()))
        other = seen.get(s)
        if other is not None:
            return CheckReport("distinct-syndromes", False, cases, (other.sorted(), cl.sorted()))
        seen[s] = cl
    return CheckReport("distinct-syndromes", True, cases)


def sample_codewords(a: CodeAssembly, seed: int = 0) -> list[np.ndarray]:
    """The all-zero word and one codeword with random information bits."""
    rng = np.random.default_rng(seed)
    zero = np.zeros(a.dims, dtype=np.uint8)
    return [zero, encode(a, rng.integers(0, 2, a.k, dtype=np.uint8))]


def verify_roundtrip(a: CodeAssembly, clusters: Iterable[Cluster], seed: int = 0) -> CheckReport:
    """decode(c + e) == (c, e) for every cluster e and each test codeword c."""
    words = sample_codewords(a, seed)
    cases = failures = 0
    witness = None
    for cl in clusters:
        flats = [a.flat(p) for p in cl.positions]
        for c in words:
            cases += 1
            bad = c.copy().ravel()
            bad[flats] ^= 1
            try:
                fixed, found = decode(a, bad)
                ok = np.array_equal(fixed, c) and found is not None and found.positions == cl.positions
            except Undecodable:
                ok = False
            if not ok:
                failures += 1
                witness = witness or cl.sorted()
    return CheckReport("roundtrip", failures == 0, cases, witness, {"failures": failures})


def syndrome_table(a: CodeAssembly, clusters: Iterable[Cluster]) -> dict[int, Cluster]:
    table = {}
    for cl in clusters:
        table.setdefault(gf2.xor_all(a.column(p) for p in cl.positions), cl)
    return table


def table_decode(table: dict[int, Cluster], stacked: int) -> Cluster | None:
    if stacked == 0:
        return None
    hit = table.get(stacked)
    if hit is None:
        raise Undecodable("syndrome not in the table")
    return hit


def verify_decoder_equivalence(a: CodeAssembly, clusters: Iterable[Cluster]) -> CheckReport:
    """Structured decoding agrees with table lookup on every enumerated syndrome."""
    table = syndrome_table(a, clusters)
    cases = mismatches = 0
    witness = None
    for s, cl in table.items():
        cases += 1
        try:
            got = frozenset(a.position(j) for j in locate_cluster(a, _split(a, s)))
        except Undecodable:
            got = None
        if got != table_decode(table, s).positions:
            mismatches += 1
            witness = witness or cl.sorted()
    return CheckReport("structured-vs-table", mismatches == 0, cases, witness, {"mismatches": mismatches})


def verify_component_roundtrip(code: ComponentCode) -> CheckReport:
    """Every in-contract burst of a corrector decodes to itself."""
    tmax = code.t if code.role == "corrector_weight_limited" else None
    cases = failures = 0
    witness = None
    for start, pat, syn in iter_bursts(code.columns, code.b, code.cyclic, tmax):
        cases += 1
        want = burst_positions(code, start, [(pat >> u) & 1 for u in range(code.b)])
        try:
            got = decode_positions(code, syn)
        except Undecodable:
            got = None
        if got != want:
            failures += 1
            witness = witness or sorted(want)
    return CheckReport(f"component-roundtrip-{code.role}", failures == 0, cases, witness)


# ---------------------------------------------------------------------------
# sampling for error injection


def random_cluster(shape: ShapeSpec, dims, rng: np.random.Generator) -> Cluster:
    dims = tuple(dims)
    anchors = list(shape.anchors(dims, whole=shape.is_box))
    if not anchors:
        raise ShapeUnsupported("the shape has no placement in this array")
    t = shape.weight_limit
    while True:
        anchor = anchors[int(rng.integers(len(anchors)))]
        cells = [tuple(a + o for a, o in zip(anchor, off)) for off in shape.offsets()]
        cells = [p for p in cells if all(0 <= x < n for x, n in zip(p, dims))]
        k = int(rng.integers(1, (t or len(cells)) + 1)) if cells else 0
        k = min(k, len(cells))
        if k:
            chosen = rng.choice(len(cells), size=k, replace=False)
            return Cluster.of((cells[i] for i in sorted(chosen.tolist())), shape)


def violating_cluster(shape: ShapeSpec, dims, rng: np.random.Generator) -> Cluster:
    """A cluster that does not fit the shape (one cell too far apart, or one too heavy)."""
    dims = tuple(dims)
    t = shape.weight_limit
    if t is not None:
        anchors = list(shape.anchors(dims, whole=True))
        if anchors:
            anchor = anchors[int(rng.integers(len(anchors)))]
            cells = [tuple(a + o for a, o in zip(anchor, off)) for off in shape.offsets()]
            chosen = rng.choice(len(cells), size=t + 1, replace=False)
            return Cluster.of((cells[i] for i in sorted(chosen.tolist())), None)
    reach = shape.extent[0]
    if dims[0] <= reach:
        raise ShapeUnsupported("array too small to place an oversized cluster")
    start = [int(rng.integers(0, n)) for n in dims]
    start[0] = int(rng.integers(0, dims[0] - reach))
    other = list(start)
    other[0] += reach
    return Cluster.of([tuple(start), tuple(other)], None)


# ---------------------------------------------------------------------------
# polyominoes


def count_fixed_polyominoes(b: int, budget: int = 10**8) -> int:
    """Translation-distinct edge-connected b-cell sets (Redelmeier's growth method)."""
    if b < 1:
        raise ValueError("b must be >= 1")
    if b > 12:
        raise BudgetExceeded("polyomino counting is limited to b <= 12")

    def neighbours(c):
        x, y = c
        return ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))

    def allowed(c):  # only cells after the origin in (y, x) order
        x, y = c
        return y > 0 or (y == 0 and x >= 0)

    total = 0
    steps = 0

    def grow(untried: list, seen: set, size: int):
        nonlocal total, steps
        untried = list(untried)
        while untried:
            steps += 1
            if steps > budget:
                raise BudgetExceeded("polyomino enumeration budget exhausted")
            c = untried.pop()
            if size + 1 == b:
                total += 1
                continue
            new = [n for n in neighbours(c) if allowed(n) and n not in seen]
            grow(untried + new, seen | set(new), size + 1)

    grow([(0, 0)], {(0, 0)}, 0)
    return total


def count_fixed_polyominoes_naive(b: int) -> int:
    """Independent check: grow canonical (translated-to-origin) sets one cell at a time."""
    level = {frozenset({(0, 0)})}
    for _ in range(b - 1):
        nxt = set()
        for poly in level:
            for x, y in poly:
                for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if n not in poly:
                        grown = poly | {n}
                        mx = min(p[0] for p in grown)
                        my = min(p[1] for p in grown)
                        nxt.add(frozenset((p[0] - mx, p[1] - my) for p in grown))
        level = nxt
    return len(level)
