"""Lee spheres and the shear transformation that packs them into small boxes."""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .report import CheckReport


def lee_sphere_size(D: int, R: int) -> int:
    if D < 1 or R < 0:
        raise ValueError("need D >= 1 and R >= 0")
    return sum(2**j * comb(D, j) * comb(R, j) for j in range(min(D, R) + 1))


@lru_cache(maxsize=None)
def lee_sphere_offsets(D: int, R: int) -> frozenset:
    """All integer vectors with L1 norm <= R."""
    if D < 1 or R < 0:
        raise ValueError("need D >= 1 and R >= 0")
    out = set()

    def rec(prefix, budget):
        if len(prefix) == D:
            out.add(tuple(prefix))
            return
        for x in range(-budget, budget + 1):
            rec(prefix + [x], budget - abs(x))

    rec([], R)
    return frozenset(out)


def lee_sphere_positions(D: int, R: int, center) -> frozenset:
    center = tuple(center)
    if len(center) != D:
        raise ValueError("center has the wrong dimension")
    return frozenset(tuple(c + o for c, o in zip(center, off)) for off in lee_sphere_offsets(D, R))


def ceil_half(x):
    """Mathematical ceiling of x/2; works elementwise on numpy integer arrays."""
    return -((-x) // 2)


def transform_2d(i1, i2):
    return ceil_half(i1 + i2), i2 - i1


def transform_nd(i) -> tuple:
    """Closed-form D-dimensional transform; entries may be ints or numpy arrays."""
    i = list(i)
    D = len(i)
    if D < 2:
        raise ValueError("transform needs D >= 2")
    out = []
    for j in range(D - 1):
        alt = sum((-1) ** (j - k) * i[k] for k in range(j + 1))
        out.append(ceil_half(alt + i[j + 1]))
    out.append(sum((-1) ** (D - 1 - k) * i[k] for k in range(D)))
    return tuple(out)


def transform_nd_iterative(i) -> tuple:
    """The same map built by applying the 2D transform to coordinate pairs in turn."""
    v = list(i)
    if len(v) < 2:
        raise ValueError("transform needs D >= 2")
    for j in range(len(v) - 1):
        v[j], v[j + 1] = transform_2d(v[j], v[j + 1])
    return tuple(v)


def expected_box(D: int, R: int) -> tuple[int, ...]:
    return (R + 1,) * (D - 1) + (2 * R + 1,)


def bounding_box_check(D: int, R: int, window) -> CheckReport:
    """Transform every sphere centred in the window and compare its extents to the box.

    ``window`` is an int side length or a tuple of sides.  The report's
    detail holds the largest extent seen per coordinate.
    """
    sides = (window,) * D if isinstance(window, int) else tuple(window)
    want = expected_box(D, R) if D >= 2 else (2 * R + 1,)
    offsets = list(lee_sphere_offsets(D, R))
    worst = [0] * D
    cases = 0
    witness = None
    exact = True
    for center in itertools.product(*(range(s) for s in sides)):
        pts = [tuple(c + o for c, o in zip(center, off)) for off in offsets]
        img = [transform_nd(p) for p in pts] if D >= 2 else pts
        ext = [max(q[j] for q in img) - min(q[j] for q in img) + 1 for j in range(D)]
        worst = [max(a, b) for a, b in zip(worst, ext)]
        cases += 1
        if any(e > w for e, w in zip(ext, want)) and witness is None:
            witness = center
        if tuple(ext) != want:
            exact = False
    return CheckReport(
        f"lee-transform-box-D{D}-R{R}",
        witness is None,
        cases,
        witness,
        {"box": want, "max_extent": tuple(worst), "exact": exact},
    )


def transform_injective(D: int, side: int) -> CheckReport:
    seen = {}
    cases = 0
    for p in itertools.product(range(side), repeat=D):
        q = transform_nd(p)
        cases += 1
        if q in seen:
            return CheckReport(f"lee-transform-injective-D{D}", False, cases, (seen[q], p))
        seen[q] = p
    return CheckReport(f"lee-transform-injective-D{D}", True, cases)
