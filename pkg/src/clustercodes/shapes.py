"""Error-shape descriptions and clusters."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .lee import lee_sphere_offsets, lee_sphere_size

Position = tuple[int, ...]

_KINDS = ("box", "box_wl", "lee", "lee_wl")


@dataclass(frozen=True)
class ShapeSpec:
    """A cluster shape: box of given sides or Lee sphere, optionally weight-limited.

    ``arbitrary`` records the cluster size b when the shape was derived from
    an arbitrary-cluster request (Lee sphere of radius b//2, weight <= b).
    """

    kind: str
    D: int
    sides: tuple[int, ...] = ()
    R: int = 0
    t: int | None = None
    arbitrary: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.D < 1:
            raise ValueError("dimension must be >= 1")
        if self.kind.startswith("box"):
            if len(self.sides) != self.D or min(self.sides) < 1:
                raise ValueError(f"box sides {self.sides} do not match D={self.D}")
        elif self.R < 0:
            raise ValueError("radius must be >= 0")
        if self.kind.endswith("_wl") and (self.t is None or self.t < 1):
            raise ValueError("weight-limited shapes need t >= 1")

    @classmethod
    def box(cls, *sides: int) -> ShapeSpec:
        return cls("box", len(sides), tuple(sides))

    @classmethod
    def box_weight_limited(cls, sides, t: int) -> ShapeSpec:
        return cls("box_wl", len(sides), tuple(sides), t=t)

    @classmethod
    def lee_sphere(cls, D: int, R: int) -> ShapeSpec:
        return cls("lee", D, R=R)

    @classmethod
    def lee_sphere_weight_limited(cls, D: int, R: int, t: int) -> ShapeSpec:
        return cls("lee_wl", D, R=R, t=t)

    @classmethod
    def arbitrary_cluster(cls, D: int, b: int) -> ShapeSpec:
        """At most b erroneous cells, all inside one Lee sphere of radius b//2."""
        if b < 1:
            raise ValueError("cluster size must be >= 1")
        return cls("lee_wl", D, R=b // 2, t=b, arbitrary=b)

    @classmethod
    def parse(cls, text: str, D: int) -> ShapeSpec:
        """Parse ``box:3x3``, ``lee:R`` or ``arb:b`` (D taken from the array)."""
        kind, _, arg = text.strip().partition(":")
        try:
            if kind == "box":
                sides = tuple(int(x) for x in arg.lower().split("x"))
                if len(sides) != D:
                    raise ValueError(f"box {arg} has {len(sides)} sides, array has {D} dimensions")
                return cls.box(*sides)
            if kind == "lee":
                return cls.lee_sphere(D, int(arg))
            if kind == "arb":
                return cls.arbitrary_cluster(D, int(arg))
            m = re.fullmatch(r"box_wl:([\dx]+)/(\d+)", text.strip())
            if m:
                sides = tuple(int(x) for x in m.group(1).split("x"))
                return cls.box_weight_limited(sides, int(m.group(2)))
            m = re.fullmatch(r"lee_wl:(\d+)/(\d+)", text.strip())
            if m:
                return cls.lee_sphere_weight_limited(D, int(m.group(1)), int(m.group(2)))
        except ValueError as exc:
            raise ValueError(f"bad shape {text!r}: {exc}") from None
        raise ValueError(f"bad shape {text!r}; expected box:AxB, lee:R or arb:b")

    def to_string(self) -> str:
        if self.arbitrary is not None:
            return f"arb:{self.arbitrary}"
        if self.kind == "box":
            return "box:" + "x".join(map(str, self.sides))
        if self.kind == "box_wl":
            return "box_wl:" + "x".join(map(str, self.sides)) + f"/{self.t}"
        if self.kind == "lee":
            return f"lee:{self.R}"
        return f"lee_wl:{self.R}/{self.t}"

    @property
    def is_box(self) -> bool:
        return self.kind.startswith("box")

    @property
    def volume(self) -> int:
        if self.is_box:
            return math.prod(self.sides)
        return lee_sphere_size(self.D, self.R)

    @property
    def weight_limit(self) -> int | None:
        """Effective weight cap, or None when every pattern is admissible."""
        if self.t is None or self.t >= self.volume:
            return None
        return self.t

    @property
    def extent(self) -> tuple[int, ...]:
        """Side lengths of the bounding box of one placement."""
        if self.is_box:
            return self.sides
        return (2 * self.R + 1,) * self.D

    def offsets(self) -> tuple[Position, ...]:
        """Cells of one placement relative to its anchor (corner or center)."""
        return _offsets(self.kind[:3], self.D, self.sides, self.R)

    def anchors(self, dims: tuple[int, ...], whole: bool = True):
        """Anchors of placements; ``whole`` keeps only placements inside dims."""
        if self.is_box:
            if whole:
                return itertools.product(*(range(n - b + 1) for n, b in zip(dims, self.sides)))
            return itertools.product(*(range(-b + 1, n) for n, b in zip(dims, self.sides)))
        R = self.R
        if whole:
            return itertools.product(*(range(R, n - R) for n in dims))
        return (c for c in itertools.product(*(range(-R, n + R) for n in dims))
                if sum(max(0, -x, x - n + 1) for x, n in zip(c, dims)) <= R)

    def contains(self, positions) -> bool:
        """True if the positions fit one placement of this shape (weight included)."""
        positions = list(positions)
        if not positions:
            return True
        if self.t is not None and len(positions) > self.t:
            return False
        if self.is_box:
            return all(max(p[j] for p in positions) - min(p[j] for p in positions) < b
                       for j, b in enumerate(self.sides))
        # some center within distance R of all positions
        lo = [max(p[j] for p in positions) - self.R for j in range(self.D)]
        hi = [min(p[j] for p in positions) + self.R for j in range(self.D)]
        if any(a > b for a, b in zip(lo, hi)):
            return False
        for c in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if all(sum(abs(x - y) for x, y in zip(c, p)) <= self.R for p in positions):
                return True
        return False


@lru_cache(maxsize=None)
def _offsets(kind: str, D: int, sides: tuple[int, ...], R: int) -> tuple[Position, ...]:
    if kind == "box":
        return tuple(itertools.product(*(range(b) for b in sides)))
    return tuple(sorted(lee_sphere_offsets(D, R)))


@dataclass(frozen=True)
class Cluster:
    """A set of erroneous array positions (all error values are 1)."""

    positions: frozenset
    shape: ShapeSpec | None = None

    @classmethod
    def of(cls, positions, shape: ShapeSpec | None = None) -> Cluster:
        return cls(frozenset(tuple(int(x) for x in p) for p in positions), shape)

    def __len__(self) -> int:
        return len(self.positions)

    def sorted(self) -> list[Position]:
        return sorted(self.positions)

    def fits(self) -> bool:
        return self.shape is None or self.shape.contains(self.positions)

    def to_string(self) -> str:
        return " ".join("(" + ",".join(map(str, p)) + ")" for p in self.sorted())

    def __eq__(self, other):
        return isinstance(other, Cluster) and self.positions == other.positions

    def __hash__(self):
        return hash(self.positions)
