"""Multidimensional cluster codes assembled from colorings and component codes.

The parity-check column of array position P is the stack, over colorings s,
of column color_s(P) of component s.  Everything else (systematic
encoding, syndromes, structured decoding, file formats, redundancy
bounds) is built on that one matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import gf2
from .coloring import (
    ColoringSet,
    box_coloring_even,
    box_coloring_odd,
    check_p1,
    check_p2,
    lee_colorings,
    lee_radius1_colorings,
    residue_maps,
    solve_position,
    transformed_box_colorings,
)
from .components import (
    ComponentCode,
    decode_positions,
    locate_set,
    search_corrector,
    search_limited_weight,
    search_locator,
)
from .errors import (
    CertificationError,
    ClusterCodeError,
    FormatError,
    NoMatch,
    NonIntegral,
    OutOfArray,
    RankDeficient,
    ShapeUnsupported,
    Undecodable,
)
from .shapes import Cluster, ShapeSpec

MAX_D = 4
MAX_N = 1 << 20
POLYOMINO_GROWTH_LOWER = 3.981037


@dataclass(frozen=True)
class Syndrome:
    parts: tuple[int, ...]
    stacked: int

    def is_zero(self) -> bool:
        return self.stacked == 0


@dataclass(eq=False)
class CodeAssembly:
    dims: tuple[int, ...]
    shape: ShapeSpec
    colorings: ColoringSet
    components: list[ComponentCode]
    route: str
    color_arrays: list[np.ndarray] = field(init=False, repr=False)
    shifts: list[int] = field(init=False, repr=False)
    columns: list[int] = field(init=False, repr=False)
    r_stack: int = field(init=False)
    r: int = field(init=False)
    H_rows: list[int] = field(init=False, repr=False)
    redundancy_positions: list[int] = field(init=False, repr=False)
    info_positions: list[int] = field(init=False, repr=False)

    def __post_init__(self):
        self.dims = tuple(int(n) for n in self.dims)
        arrays = [a.ravel() for a in self.colorings.arrays(self.dims)]
        self.color_arrays = arrays
        self.shifts = []
        shift = 0
        for comp in self.components:
            self.shifts.append(shift)
            shift += comp.r
        self.r_stack = shift
        cols = [0] * self.N
        for comp, arr, sh in zip(self.components, arrays, self.shifts):
            ccols = comp.columns
            for j, c in enumerate(arr.tolist()):
                cols[j] |= ccols[c] << sh
        self.columns = cols
        self.r = gf2.rank(cols)
        self.H_rows = gf2.independent_rows(gf2.columns_to_rows(cols, self.r_stack))
        self._seat()
        self.residues = residue_maps(self.colorings, arrays)
        stacked = np.stack(arrays, axis=1)
        self.lookup = {tuple(row): j for j, row in enumerate(stacked.tolist())}
        order = np.argsort(arrays[0], kind="stable")
        groups: dict[int, list[int]] = {}
        for j in order.tolist():
            groups.setdefault(int(arrays[0][j]), []).append(j)
        self.by_color1 = groups

    @property
    def N(self) -> int:
        return math.prod(self.dims)

    @property
    def D(self) -> int:
        return len(self.dims)

    def _seat(self):
        """Greedy redundancy positions in color-lexicographic order."""
        keys = [a for a in reversed(self.color_arrays)]
        order = np.lexsort(keys).tolist()
        basis = gf2.XorBasis()
        seated = []
        for j in order:
            if basis.size == self.r:
                break
            if basis.insert(self.columns[j]):
                seated.append(j)
        if basis.size != self.r:  # pragma: no cover - rank is computed from these columns
            raise RankDeficient("could not seat all redundancy positions")
        self._basis = basis
        self.redundancy_positions = seated
        red = set(seated)
        self.info_positions = [j for j in range(self.N) if j not in red]

    @property
    def k(self) -> int:
        return self.N - self.r

    def position(self, flat: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unravel_index(flat, self.dims))

    def flat(self, pos) -> int:
        return int(np.ravel_multi_index(tuple(pos), self.dims))

    def column(self, pos) -> int:
        return self.columns[self.flat(pos)]


# ---------------------------------------------------------------------------
# construction


def choose_colorings(dims: Sequence[int], shape: ShapeSpec, route: str = "auto") -> tuple[ColoringSet, str]:
    D = len(dims)
    if shape.D != D:
        raise ShapeUnsupported(f"shape dimension {shape.D} differs from array dimension {D}")
    if route not in ("auto", "transform", "even"):
        raise ValueError(f"unknown route {route!r}")
    if shape.is_box:
        if any(b > n for b, n in zip(shape.sides, dims)):
            raise ShapeUnsupported(f"box {shape.sides} does not fit array {tuple(dims)}")
        if shape.volume % 2 and route != "even":
            cs = box_coloring_odd(shape.sides)
            return _with_shape(cs, shape), "box_odd"
        return _with_shape(box_coloring_even(shape.sides), shape), "box_even"
    R = shape.R
    if R == 0 or D == 1:
        side = 2 * R + 1
        box = box_coloring_odd((side,) * D if R == 0 else (side,))
        return _with_shape(box, shape), "box_odd"
    if D == 2 and route != "transform":
        return lee_colorings(R), "lee_tiling"
    if R == 1 and route != "transform":
        return lee_radius1_colorings(D), "lee_radius1"
    return transformed_box_colorings(D, R), "transform"


def _with_shape(cs: ColoringSet, shape: ShapeSpec) -> ColoringSet:
    return replace(cs, shape=shape)


_component_cache: dict = {}


def _cached(key, build):
    hit = _component_cache.get(key)
    if hit is None:
        hit = build()
        _component_cache[key] = hit
    return hit


def _corrector_for(window: int, n: int, t: int | None, jobs: int) -> ComponentCode:
    if t is not None and t < window:
        return _cached(("lw", window, t, n), lambda: search_limited_weight(window, t, n, jobs=jobs))
    return _cached(("corr", window, n), lambda: search_corrector(window, n, jobs=jobs))


def _locator_for(window: int, n: int, t: int | None, jobs: int) -> ComponentCode:
    t = t if t is not None and t < window else None
    return _cached(("loc", window, n, t), lambda: search_locator(window, n, t, jobs=jobs))


def assemble(dims: Sequence[int], shape: ShapeSpec, route: str = "auto", jobs: int = 1) -> CodeAssembly:
    """Build a certified code for one cluster of the given shape on an array of size dims."""
    dims = tuple(int(n) for n in dims)
    if not 1 <= len(dims) <= MAX_D:
        raise ShapeUnsupported(f"dimension must be 1..{MAX_D}")
    if min(dims) < 1 or math.prod(dims) > MAX_N:
        raise ShapeUnsupported(f"array size must be 1..{MAX_N} positions")
    cs, route_name = choose_colorings(dims, shape, route)
    cs = cs.normalized(dims)
    arrays = cs.arrays(dims)
    p1 = check_p1(cs, dims)
    p2 = check_p2(cs, dims)
    if not (p1.passed and p2.passed):
        raise CertificationError(f"colorings fail on the array: {p1.line()} / {p2.line()}")
    maps = residue_maps(cs, arrays)
    flags = (False,) + tuple(m is None for m in maps[1:])
    cs = cs.with_needs_corrector(flags)
    cert = {
        "window": "x".join(map(str, dims)),
        "p1": "pass",
        "p2": "pass",
        "p3_per_s": ",".join("fail" if f else "pass" for f in flags[1:]) or "-",
    }
    cs = replace(cs, certificate=cert)
    t = shape.weight_limit
    comps = []
    for s, arr in enumerate(arrays):
        n = int(arr.max()) + 1
        M = cs.moduli[s]
        if s == 0 or cs.needs_corrector[s]:
            comps.append(_corrector_for(M, n, t, jobs))
        else:
            comps.append(_locator_for(M, n, t, jobs))
    return CodeAssembly(dims, shape, cs, comps, route_name)


# ---------------------------------------------------------------------------
# encoding and syndromes


def encode(a: CodeAssembly, info) -> np.ndarray:
    """Systematic codeword: info bits at the info positions, parity solved on the rest."""
    info = np.asarray(info, dtype=np.uint8).ravel()
    if info.size != a.k:
        raise ValueError(f"need {a.k} information bits, got {info.size}")
    word = np.zeros(a.N, dtype=np.uint8)
    word[a.info_positions] = info & 1
    s = gf2.xor_all(a.columns[j] for j in np.flatnonzero(word).tolist())
    combo = a._basis.express(s)
    for idx in gf2.bits_of(combo):
        word[a.redundancy_positions[idx]] = 1
    return word.reshape(a.dims)


def extract_info(a: CodeAssembly, word) -> np.ndarray:
    return np.asarray(word, dtype=np.uint8).ravel()[a.info_positions].copy()


def syndrome(a: CodeAssembly, word) -> Syndrome:
    w = np.asarray(word, dtype=np.uint8).ravel()
    if w.size != a.N:
        raise ValueError(f"word has {w.size} bits, array has {a.N}")
    stacked = gf2.xor_all(a.columns[j] for j in np.flatnonzero(w).tolist())
    return _split(a, stacked)


def _split(a: CodeAssembly, stacked: int) -> Syndrome:
    parts = tuple((stacked >> sh) & ((1 << c.r) - 1) for c, sh in zip(a.components, a.shifts))
    return Syndrome(parts, stacked)


def cluster_syndrome(a: CodeAssembly, positions) -> int:
    return gf2.xor_all(a.column(p) for p in positions)


# ---------------------------------------------------------------------------
# decoding


def decode(a: CodeAssembly, word) -> tuple[np.ndarray, Cluster | None]:
    """Correct one in-contract cluster; raise Undecodable otherwise."""
    w = np.asarray(word, dtype=np.uint8).reshape(a.dims)
    syn = syndrome(a, w)
    if syn.is_zero():
        return w.copy(), None
    flats = locate_cluster(a, syn)
    out = w.copy().ravel()
    out[flats] ^= 1
    if syndrome(a, out).stacked != 0:
        raise Undecodable("correction does not yield a codeword")
    return out.reshape(a.dims), Cluster.of((a.position(j) for j in flats), a.shape)


def locate_cluster(a: CodeAssembly, syn: Syndrome) -> list[int]:
    """Flat positions of the cluster with this (nonzero) syndrome."""
    try:
        return _locate(a, syn)
    except Undecodable:
        raise
    except (NoMatch, NonIntegral, OutOfArray, KeyError, ValueError, CertificationError) as exc:
        raise Undecodable(f"{type(exc).__name__}: {exc}") from None


def _locate(a: CodeAssembly, syn: Syndrome) -> list[int]:
    cs = a.colorings
    K = decode_positions(a.components[0], syn.parts[0])
    if not K:
        raise Undecodable("first component sees no error")
    K = sorted(K)
    paired: list[dict[int, int] | None] = [None] * cs.D
    loose: dict[int, frozenset] = {}
    for s in range(1, cs.D):
        comp = a.components[s]
        if comp.role == "locator":
            phi = a.residues[s]
            M = cs.moduli[s]
            sig = [phi[k] for k in K]
            S = locate_set(comp, syn.parts[s], sig)
            by_res = {c % M: c for c in S}
            paired[s] = {k: by_res[phi[k]] for k in K}
        else:
            S = decode_positions(comp, syn.parts[s])
            if not S or len(S) != len(K):
                raise Undecodable(f"component {s + 1} disagrees on the cluster size")
            loose[s] = S
    if not loose:
        return [_position_of(a, (k,) + tuple(paired[s][k] for s in range(1, cs.D))) for k in K]
    return _match_loose(a, K, paired, loose)


def _position_of(a: CodeAssembly, colors: tuple[int, ...]) -> int:
    cs = a.colorings
    if cs.linear:
        offsets = [c.offset for c in cs.colorings]
        return a.flat(solve_position(cs.A, colors, offsets, a.dims))
    hit = a.lookup.get(tuple(colors))
    if hit is None:
        raise OutOfArray(f"no array position has colors {colors}")
    return hit


def _match_loose(a: CodeAssembly, K, paired, loose) -> list[int]:
    """Assign one position per color k so the free colorings' colors are used exactly once."""
    arrays = a.color_arrays
    options = []
    for k in K:
        cands = []
        for j in a.by_color1.get(k, []):
            if any(p is not None and arrays[s][j] != p[k] for s, p in enumerate(paired)):
                continue
            if all(int(arrays[s][j]) in S for s, S in loose.items()):
                cands.append(j)
        if not cands:
            raise Undecodable(f"no position fits color {k}")
        options.append(cands)
    solutions = []

    def rec(i, chosen, used):
        if len(solutions) > 1:
            return
        if i == len(options):
            pos = [a.position(j) for j in chosen]
            if a.shape.contains(pos):
                solutions.append(list(chosen))
            return
        for j in options[i]:
            key = tuple(int(arrays[s][j]) for s in loose)
            if any(c in u for c, u in zip(key, used)):
                continue
            rec(i + 1, chosen + [j], [u | {c} for u, c in zip(used, key)])

    rec(0, [], [set() for _ in loose])
    if len(solutions) != 1:
        raise Undecodable(f"{len(solutions)} admissible clusters fit the component decodings")
    return solutions[0]


# ---------------------------------------------------------------------------
# redundancy bounds


def _clog2(x: float) -> int:
    return math.ceil(math.log2(x)) if x > 1 else 0


@dataclass
class BoundsReport:
    r: int
    r_components: int
    N: int
    B: int
    log2N: int
    excess: int
    reiger_floor: int
    excess_floor: int
    ceiling: int | None
    ceiling_label: str
    slack: int
    extra_ceilings: dict = field(default_factory=dict)
    lower_excess: float | None = None

    @property
    def reiger_ok(self) -> bool:
        return self.r >= self.reiger_floor

    @property
    def excess_ok(self) -> bool:
        return self.excess >= self.excess_floor

    @property
    def ceiling_ok(self) -> bool | None:
        if self.ceiling is None:
            return None
        return self.r <= self.ceiling + self.slack

    def lines(self) -> list[str]:
        out = [
            f"r = {self.r} (stacked component rows {self.r_components})",
            f"N = {self.N}, ceil(log2 N) = {self.log2N}, excess = {self.excess}",
            f"cluster size B = {self.B}",
            f"Reiger floor 2B = {self.reiger_floor}: {'pass' if self.reiger_ok else 'fail'}",
            f"excess floor B-1 = {self.excess_floor}: {'pass' if self.excess_ok else 'fail'}",
        ]
        if self.ceiling is None:
            out.append(f"ceiling: none ({self.ceiling_label})")
        else:
            verdict = "pass" if self.ceiling_ok else "fail"
            out.append(f"ceiling ({self.ceiling_label}) = {self.ceiling} + slack {self.slack}: {verdict}")
        for label, value in self.extra_ceilings.items():
            out.append(f"also: {label} = {value}")
        if self.lower_excess is not None:
            out.append(f"lower excess for arbitrary clusters = {self.lower_excess:.6f}")
        return out


def lower_excess_arbitrary(b: int) -> float:
    """Excess redundancy floor b*log2(3.981037) for arbitrary 2D clusters of size b."""
    return b * math.log2(POLYOMINO_GROWTH_LOWER)


def bounds_report(a: CodeAssembly) -> BoundsReport:
    shape, N = a.shape, a.N
    # a weight-limited cluster has at most t bad cells, and that is what the floors count
    B = shape.weight_limit or shape.volume
    L = _clog2(N)
    ceiling, label, slack = None, "no closed form for this route", 0
    extra = {}
    lower = None
    if shape.arbitrary is not None:
        b = shape.arbitrary
        lower = lower_excess_arbitrary(b)
        if a.D == 2:
            ceiling, label = L + (b + 1) * _clog2(b * b) + 3, "arbitrary cluster, 2D"
    elif shape.kind == "box" and a.route == "box_odd" and a.D >= 2:
        b1 = shape.sides[0]
        if a.D == 2:
            ceiling, label, slack = L + B + _clog2(b1), "odd box, 2D", 2
            extra["odd box with parity bit"] = L + B + _clog2(b1) + 2
        else:
            ceiling, label, slack = L + B + _clog2(b1 * B ** (a.D - 2)) + 1, "odd box, D dims", 2
    elif shape.kind == "box_wl" and a.D == 2 and shape.volume % 2:
        ceiling, label = L + (shape.t + 1) * _clog2(shape.volume) + 3, "weight-limited odd box, 2D"
    elif shape.kind == "lee" and a.route == "lee_tiling":
        R = shape.R
        ceiling = L + B + _clog2((2 * R + 1) ** 2) + 2
        label = "Lee sphere tiling, 2D"
    return BoundsReport(
        r=a.r,
        r_components=a.r_stack,
        N=N,
        B=B,
        log2N=L,
        excess=a.r - L,
        reiger_floor=2 * B,
        excess_floor=B - 1,
        ceiling=ceiling,
        ceiling_label=label,
        slack=slack,
        extra_ceilings=extra,
        lower_excess=lower,
    )


# ---------------------------------------------------------------------------
# files


def _hex_width(N: int) -> int:
    return (N + 3) // 4


def assembly_to_text(a: CodeAssembly) -> str:
    lines = [
        "clustercodes assembly 1",
        "dims: " + " ".join(map(str, a.dims)),
        f"shape: {a.shape.to_string()}",
        f"route: {a.route}",
        f"N: {a.N}",
        f"r: {a.r}",
        f"r_components: {a.r_stack}",
        "[colorings]",
        *a.colorings.to_lines(),
        "[components]",
        *(f"component {s + 1}: {c.to_spec()}" for s, c in enumerate(a.components)),
        "[redundancy]",
        " ".join(map(str, a.redundancy_positions)),
        "[H]",
        *(format(row, "x").zfill(_hex_width(a.N)) for row in a.H_rows),
    ]
    return "\n".join(lines) + "\n"


def assembly_from_text(text: str) -> CodeAssembly:
    sections: dict[str, list[str]] = {"": []}
    cur = ""
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            cur = line[1:-1]
            sections[cur] = []
        elif line:
            sections[cur].append(line)
    try:
        head = sections[""]
        if not head or head[0] != "clustercodes assembly 1":
            raise FormatError("missing assembly header")
        kv = dict(line.split(":", 1) for line in head[1:])
        dims = tuple(int(x) for x in kv["dims"].split())
        shape = ShapeSpec.parse(kv["shape"].strip(), len(dims))
        route = kv["route"].strip()
        cs = ColoringSet.from_lines(sections["colorings"])
        comps = [ComponentCode.from_spec(line.split(":", 1)[1]) for line in sections["components"]]
        red = [int(x) for x in " ".join(sections["redundancy"]).split()]
        rows = [int(h, 16) for h in sections["H"]]
    except (KeyError, ValueError, IndexError) as exc:
        raise FormatError(f"malformed assembly file: {exc}") from None
    a = CodeAssembly(dims, shape, cs, comps, route)
    if a.r != int(kv["r"]) or a.redundancy_positions != red or a.H_rows != rows:
        raise FormatError("assembly file is inconsistent with the rebuilt parity-check matrix")
    return a


def save_assembly(a: CodeAssembly, path) -> None:
    Path(path).write_text(assembly_to_text(a))


def load_assembly(path) -> CodeAssembly:
    return assembly_from_text(Path(path).read_text())


def array_to_text(word) -> str:
    w = np.asarray(word, dtype=np.uint8)
    dims = w.shape if w.ndim else (1,)
    flat = "".join("1" if x else "0" for x in w.ravel().tolist())
    width = dims[-1]
    body = "\n".join(flat[i:i + width] for i in range(0, len(flat), width))
    return "dims: " + " ".join(map(str, dims)) + "\n" + body + "\n"


def array_from_text(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("dims:"):
        raise FormatError("array file must start with 'dims:'")
    try:
        dims = tuple(int(x) for x in lines[0][5:].split())
    except ValueError:
        raise FormatError("bad dims line") from None
    body = "".join("".join(line.split()) for line in lines[1:])
    if set(body) - {"0", "1"}:
        raise FormatError("array body may only contain 0 and 1")
    if not dims or len(body) != math.prod(dims):
        raise FormatError(f"array body has {len(body)} bits, dims need {math.prod(dims) if dims else 0}")
    return (np.frombuffer(body.encode(), dtype=np.uint8) - ord("0")).astype(np.uint8).reshape(dims)


def write_array(word, path) -> None:
    Path(path).write_text(array_to_text(word))


def read_array(path) -> np.ndarray:
    return array_from_text(Path(path).read_text())
