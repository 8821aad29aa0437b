"""Colorings of D-dimensional arrays and their three correctness properties.

A coloring assigns an integer to every array position; each color indexes one
coordinate of a component codeword.  A coloring set must satisfy, for a
cluster shape of volume B and per-coloring slack delta_s:

* p.1  every placement of the shape gets distinct colors spanning at most
       B + delta_s - 1 in each coloring;
* p.2  the tuple of D colors identifies the position;
* p.3  positions sharing a color in coloring 1 have colors congruent modulo
       B + delta_s in every other coloring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NonIntegral, OutOfArray
from .lee import expected_box, lee_sphere_size, transform_nd
from .report import CheckReport
from .shapes import ShapeSpec


@dataclass(frozen=True)
class Coloring:
    """Linear (sum of coeffs * index) or folded coloring, optionally applied after T.

    Folded form: ``outer * i[axis] + mixed-radix value of (i[j] mod sides[j])``
    over j != axis, first such j most significant.
    """

    form: str
    coeffs: tuple[int, ...] = ()
    axis: int = 0
    sides: tuple[int, ...] = ()
    transform: bool = False
    offset: int = 0

    @property
    def D(self) -> int:
        return len(self.coeffs) if self.form == "linear" else len(self.sides)

    def raw(self, idx) -> np.ndarray | int:
        """Color before the offset; idx is a sequence of D ints or D arrays."""
        idx = list(idx)
        if self.transform:
            idx = list(transform_nd(idx))
        if self.form == "linear":
            return sum(a * i for a, i in zip(self.coeffs, idx))
        others = [j for j in range(len(self.sides)) if j != self.axis]
        outer = math.prod(self.sides[j] for j in others)
        fold = 0
        for j in others:
            fold = fold * self.sides[j] + idx[j] % self.sides[j]
        return outer * idx[self.axis] + fold

    def color(self, pos) -> int:
        return int(self.raw(pos)) + self.offset

    def array(self, dims: Sequence[int]) -> np.ndarray:
        grid = np.indices(tuple(dims), dtype=np.int64)
        return np.asarray(self.raw(list(grid)), dtype=np.int64) + self.offset

    def to_string(self) -> str:
        head = f"{self.form} transform={int(self.transform)} offset={self.offset}"
        if self.form == "linear":
            return head + " coeffs=" + ",".join(map(str, self.coeffs))
        return head + f" axis={self.axis} sides=" + ",".join(map(str, self.sides))

    @classmethod
    def parse(cls, text: str) -> Coloring:
        form, *items = text.split()
        kv = dict(item.split("=", 1) for item in items)
        ints = lambda s: tuple(int(x) for x in s.split(",")) if s else ()
        return cls(
            form,
            coeffs=ints(kv.get("coeffs", "")),
            axis=int(kv.get("axis", 0)),
            sides=ints(kv.get("sides", "")),
            transform=kv.get("transform", "0") == "1",
            offset=int(kv.get("offset", 0)),
        )


@dataclass(frozen=True)
class ColoringSet:
    """D colorings for one cluster shape.

    ``volume`` is the B of the properties; it differs from the shape volume
    only for the transformed family, where the shape is a Lee sphere and
    the colored object is the box that contains its image.
    """

    family: str
    shape: ShapeSpec
    volume: int
    colorings: tuple[Coloring, ...]
    deltas: tuple[int, ...]
    needs_corrector: tuple[bool, ...] = ()
    certificate: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.deltas) != len(self.colorings):
            raise ValueError("one delta per coloring")
        if not self.needs_corrector:
            object.__setattr__(self, "needs_corrector", (False,) * len(self.colorings))

    @property
    def D(self) -> int:
        return len(self.colorings)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Burst window B + delta_s of each component."""
        return tuple(self.volume + d for d in self.deltas)

    @property
    def linear(self) -> bool:
        return all(c.form == "linear" and not c.transform for c in self.colorings)

    @property
    def A(self) -> list[list[int]] | None:
        if not all(c.form == "linear" for c in self.colorings):
            return None
        return [list(c.coeffs) for c in self.colorings]

    def arrays(self, dims) -> list[np.ndarray]:
        return [c.array(dims) for c in self.colorings]

    def normalized(self, dims) -> ColoringSet:
        """Offsets chosen so each coloring's minimum over the array is 0."""
        cols = []
        for c in self.colorings:
            base = replace(c, offset=0)
            cols.append(replace(base, offset=-int(base.array(dims).min())))
        return replace(self, colorings=tuple(cols))

    def with_needs_corrector(self, flags) -> ColoringSet:
        return replace(self, needs_corrector=tuple(bool(f) for f in flags))

    def to_lines(self) -> list[str]:
        lines = [
            f"family: {self.family}",
            f"shape: {self.shape.to_string()}",
            f"D: {self.D}",
            f"volume: {self.volume}",
            "deltas: " + " ".join(map(str, self.deltas)),
            "needs_corrector: " + " ".join(str(int(f)) for f in self.needs_corrector),
        ]
        lines += [f"coloring {s + 1}: {c.to_string()}" for s, c in enumerate(self.colorings)]
        for key, value in sorted(self.certificate.items()):
            lines.append(f"certificate {key}: {value}")
        return lines

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> ColoringSet:
        kv = {}
        cols = []
        cert = {}
        for line in lines:
            line = line.strip()
            if not line:
                continue
            if line.startswith("coloring "):
                cols.append(Coloring.parse(line.split(":", 1)[1].strip()))
            elif line.startswith("certificate "):
                key, value = line[len("certificate "):].split(":", 1)
                cert[key.strip()] = value.strip()
            else:
                key, value = line.split(":", 1)
                kv[key.strip()] = value.strip()
        D = int(kv["D"])
        return cls(
            family=kv["family"],
            shape=ShapeSpec.parse(kv["shape"], D),
            volume=int(kv["volume"]),
            colorings=tuple(cols),
            deltas=tuple(int(x) for x in kv["deltas"].split()),
            needs_corrector=tuple(x == "1" for x in kv["needs_corrector"].split()),
            certificate=cert,
        )


# ---------------------------------------------------------------------------
# coloring families


def box_coloring_odd(b: Sequence[int]) -> ColoringSet:
    """Folded colorings for a box of odd volume; all deltas 0."""
    b = tuple(int(x) for x in b)
    B = math.prod(b)
    if B % 2 == 0:
        raise ValueError(f"box {b} has even volume {B}")
    cols = tuple(Coloring("folded", axis=s, sides=b) for s in range(len(b)))
    return ColoringSet("box_odd", ShapeSpec.box(*b), B, cols, (0,) * len(b))


def even_box_matrix(b: Sequence[int]) -> list[list[int]]:
    """Row s, column j: -P[j-1]*P[D]/P[s-1] for j < s, P[j-1]/P[s-1] for j >= s (P = prefix products)."""
    D = len(b)
    P = [1]
    for x in b:
        P.append(P[-1] * x)
    A = []
    for s in range(1, D + 1):
        row = []
        for j in range(1, D + 1):
            if j < s:
                row.append(-P[j - 1] * P[D] // P[s - 1])
            else:
                row.append(P[j - 1] // P[s - 1])
        A.append(row)
    return A


def box_coloring_even(b: Sequence[int]) -> ColoringSet:
    """Linear colorings for any box (used for even volume); deltas (0, 1, ..., 1)."""
    b = tuple(int(x) for x in b)
    A = even_box_matrix(b)
    cols = tuple(Coloring("linear", coeffs=tuple(row)) for row in A)
    deltas = (0,) + (1,) * (len(b) - 1)
    return ColoringSet("box_even", ShapeSpec.box(*b), math.prod(b), cols, deltas)


def lee_colorings(R: int) -> ColoringSet:
    """The two tiling colorings for 2D Lee spheres of radius R."""
    if R < 1:
        raise ValueError("radius must be >= 1")
    A = ((R + 1, R), (-R, R + 1))
    cols = tuple(Coloring("linear", coeffs=row) for row in A)
    shape = ShapeSpec.lee_sphere(2, R)
    return ColoringSet("lee_tiling", shape, shape.volume, cols, (0, 0))


def radius1_matrix(D: int) -> list[list[int]]:
    """Row s holds coefficient l of index s+l-1 (cyclically), l = 1..D."""
    return [[(j - s) % D + 1 for j in range(D)] for s in range(D)]


def lee_radius1_colorings(D: int, window: int | None = None) -> ColoringSet:
    """Colorings for radius-1 Lee spheres in D dimensions.

    p.3 is checked on a window (default side 8) and colorings that fail
    are flagged ``needs_corrector``.
    """
    if D < 2:
        raise ValueError("need D >= 2")
    cols = tuple(Coloring("linear", coeffs=tuple(row)) for row in radius1_matrix(D))
    shape = ShapeSpec.lee_sphere(D, 1)
    cs = ColoringSet("lee_radius1", shape, 2 * D + 1, cols, (0,) * D)
    side = window or 8
    rep = check_p3(cs, (side,) * D)
    flags = (False,) + tuple(not ok for ok in rep.detail["per_s"])
    return cs.with_needs_corrector(flags)


def transformed_box_colorings(D: int, R: int) -> ColoringSet:
    """Box colorings composed with T: Lee spheres map into a (R+1)^(D-1) x (2R+1) box."""
    box = expected_box(D, R)
    base = box_coloring_odd(box) if math.prod(box) % 2 else box_coloring_even(box)
    cols = tuple(replace(c, transform=True) for c in base.colorings)
    return ColoringSet("transform", ShapeSpec.lee_sphere(D, R), base.volume, cols, base.deltas)


# ---------------------------------------------------------------------------
# property checks


def _placements(shape: ShapeSpec, window) -> np.ndarray:
    """Index array (placements x cells x D) of all placements inside the window."""
    offs = np.array(shape.offsets(), dtype=np.int64)
    anchors = np.array(list(shape.anchors(tuple(window), whole=True)), dtype=np.int64)
    if anchors.size == 0:
        return np.zeros((0, len(offs), shape.D), dtype=np.int64)
    return anchors[:, None, :] + offs[None, :, :]


def _det(A: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free elimination)."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return int(det)


def determinant(A) -> int:
    return _det(A)


def check_p1(cs: ColoringSet, window) -> CheckReport:
    """Distinct colors with span <= B + delta_s - 1 at every placement in the window."""
    pl = _placements(cs.shape, window)
    arrays = cs.arrays(window)
    per_s, spans = [], []
    witness = None
    for s, arr in enumerate(arrays):
        vals = np.sort(arr[tuple(pl.transpose(2, 0, 1))], axis=1) if len(pl) else np.zeros((0, 1))
        distinct = bool((np.diff(vals, axis=1) > 0).all())
        span = int((vals[:, -1] - vals[:, 0]).max()) if len(vals) else 0
        ok = distinct and span <= cs.moduli[s] - 1
        per_s.append(ok)
        spans.append(span)
        if not ok and witness is None:
            bad = np.flatnonzero(
                ~((np.diff(vals, axis=1) > 0).all(axis=1)) | ((vals[:, -1] - vals[:, 0]) > cs.moduli[s] - 1)
            )[0]
            witness = (s + 1, tuple(int(x) for x in pl[bad, 0]))
    return CheckReport("p1", all(per_s), len(pl), witness, {"per_s": per_s, "span": spans, "window": tuple(window)})


def check_p2(cs: ColoringSet, window) -> CheckReport:
    """Color tuples are injective on the window; linear sets also need det A != 0."""
    arrays = cs.arrays(window)
    stacked = np.stack([a.ravel() for a in arrays], axis=1)
    _, first, counts = np.unique(stacked, axis=0, return_index=True, return_counts=True)
    ok = bool((counts == 1).all())
    witness = None
    if not ok:
        dup = stacked[first[np.flatnonzero(counts > 1)[0]]]
        hits = np.flatnonzero((stacked == dup).all(axis=1))[:2]
        witness = tuple(tuple(int(x) for x in np.unravel_index(h, tuple(window))) for h in hits)
    detail = {"window": tuple(window)}
    if cs.A is not None and not any(c.transform for c in cs.colorings):
        det = _det(cs.A)
        detail["det"] = det
        ok = ok and det != 0
    return CheckReport("p2", ok, int(stacked.shape[0]), witness, detail)


def check_p3(cs: ColoringSet, window) -> CheckReport:
    """Equal color in coloring 1 implies congruence mod B + delta_s in coloring s."""
    arrays = [a.ravel() for a in cs.arrays(window)]
    _, first, inverse = np.unique(arrays[0], return_index=True, return_inverse=True)
    per_s, observed = [], []
    witness = None
    for s in range(1, cs.D):
        ref = arrays[s][first[inverse]]
        diff = arrays[s] - ref
        g = int(np.gcd.reduce(np.abs(diff))) if diff.size else 0
        ok = bool((diff % cs.moduli[s] == 0).all())
        per_s.append(ok)
        observed.append(g)
        if not ok and witness is None:
            k = int(np.flatnonzero(diff % cs.moduli[s])[0])
            witness = (s + 1, tuple(int(x) for x in np.unravel_index(k, tuple(window))))
    return CheckReport(
        "p3",
        all(per_s),
        int(arrays[0].size),
        witness,
        {"per_s": per_s, "modulus": list(cs.moduli[1:]), "observed_gcd": observed, "window": tuple(window)},
    )


def default_window(cs: ColoringSet) -> tuple[int, ...]:
    """Side >= 2 * shape extent + 2 in every direction."""
    ext = max(cs.shape.extent)
    return (2 * ext + 2,) * cs.D


def certify(cs: ColoringSet, window=None) -> ColoringSet:
    """Run p.1-p.3 and store pass/fail per property in the certificate."""
    window = tuple(window or default_window(cs))
    reps = [check_p1(cs, window), check_p2(cs, window), check_p3(cs, window)]
    cert = {"window": "x".join(map(str, window))}
    for rep in reps:
        cert[rep.name] = "pass" if rep.passed else "fail"
        if rep.name == "p3":
            cert["p3_per_s"] = ",".join("pass" if x else "fail" for x in rep.detail["per_s"]) or "-"
    return replace(cs, certificate=cert)


def residue_maps(cs: ColoringSet, arrays: Sequence[np.ndarray]) -> list[dict | None]:
    """For each coloring s >= 2, map color_1 -> (color_s mod M_s) when it is well defined."""
    c1 = arrays[0].ravel()
    maps: list[dict | None] = [None]
    for s in range(1, cs.D):
        M = cs.moduli[s]
        res = arrays[s].ravel() % M
        table: dict[int, int] = {}
        ok = True
        for k, v in zip(c1.tolist(), res.tolist()):
            if table.setdefault(k, v) != v:
                ok = False
                break
        maps.append(table if ok else None)
    return maps


# ---------------------------------------------------------------------------


def solve_position(A, colors, offsets=None, dims=None) -> tuple[int, ...]:
    """Integer solution i of A i = colors - offsets (exact rational elimination)."""
    n = len(A)
    b = [Fraction(c - (offsets[k] if offsets else 0)) for k, c in enumerate(colors)]
    M = [[Fraction(x) for x in row] + [b[r]] for r, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular coloring matrix")
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    sol = [M[r][n] for r in range(n)]
    if any(x.denominator != 1 for x in sol):
        raise NonIntegral(f"colors {tuple(colors)} have rational preimage {tuple(str(x) for x in sol)}")
    pos = tuple(int(x) for x in sol)
    if dims is not None and any(not 0 <= p < d for p, d in zip(pos, dims)):
        raise OutOfArray(f"solved position {pos} outside array {tuple(dims)}")
    return pos
