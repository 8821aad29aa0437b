"""One-dimensional binary component codes.

Three capabilities are provided, each certified by exhaustive enumeration
when the code is built:

* corrector: every burst of length <= b has its own nonzero syndrome;
* locator: bursts whose positions agree modulo the window M (the same
  residue signature) have pairwise distinct syndromes, so the start of a
  burst known up to cyclic shift can be recovered;
* weight-limited corrector: like a corrector, restricted to bursts of
  weight <= t; built by stacking a folded t-error-correcting code on a
  weight-limited locator.

Codes are shortened to the exact length the caller needs.  Burst positions
never wrap unless the code is flagged ``cyclic``.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import gf2
from .errors import (
    BudgetExceeded,
    CertificationError,
    FormatError,
    NoComponentCode,
    NoMatch,
    NotFoundInRange,
    Undecodable,
)
from .field import BinPoly, ExtField, is_b_polynomial, is_square_free, period, primitive_polys

CERT_BUDGET = 1 << 24


# ---------------------------------------------------------------------------
# parity-check matrices


@dataclass(frozen=True)
class ParityCheck:
    """An r x n binary matrix stored column-wise; column j is an r-bit int."""

    r: int
    n: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(self.columns) != self.n:
            raise ValueError("column count does not match n")
        if any(c >> self.r for c in self.columns):
            raise ValueError("column wider than r rows")

    @classmethod
    def from_rows(cls, rows: Sequence[int], n: int) -> ParityCheck:
        return cls(len(rows), n, tuple(gf2.rows_to_columns(rows, n)))

    @classmethod
    def from_matrix(cls, matrix) -> ParityCheck:
        matrix = np.asarray(matrix)
        return cls.from_rows(gf2.from_matrix(matrix), matrix.shape[1])

    @classmethod
    def identity(cls, n: int) -> ParityCheck:
        return cls(n, n, tuple(1 << j for j in range(n)))

    @property
    def rows(self) -> list[int]:
        return gf2.columns_to_rows(self.columns, self.r)

    @property
    def bits(self) -> np.ndarray:
        return gf2.to_matrix(self.rows, self.n)

    def rank(self) -> int:
        return gf2.rank(self.columns)

    def reduced(self) -> ParityCheck:
        """Drop dependent rows; the null space is unchanged."""
        rows = gf2.independent_rows(self.rows)
        return ParityCheck.from_rows(rows, self.n)

    def syndrome(self, positions: Iterable[int]) -> int:
        return gf2.xor_all(self.columns[j] for j in positions)

    def syndrome_of_word(self, word) -> int:
        return self.syndrome(np.flatnonzero(np.asarray(word)))


def cyclic_columns(g: BinPoly, n: int) -> tuple[int, ...]:
    """Columns x^j mod g, j = 0..n-1."""
    g = g.bits
    r = g.bit_length() - 1
    top = 1 << r
    out = []
    cur = 1 if r > 0 else 0
    for _ in range(n):
        out.append(cur)
        cur <<= 1
        if cur & top:
            cur ^= g
    return tuple(out)


@dataclass(frozen=True)
class CyclicCodeSpec:
    n: int
    g: BinPoly
    e: BinPoly
    p: BinPoly
    b: int

    @property
    def r(self) -> int:
        return int(self.g.degree)


@dataclass(frozen=True)
class Certificate:
    check: str
    cases: int
    digest: str

    def to_string(self) -> str:
        return f"{self.check}:{self.cases}:{self.digest}"


def _digest(syndromes: Iterable[int]) -> str:
    h = hashlib.sha256()
    for s in sorted(syndromes):
        h.update(s.to_bytes((s.bit_length() + 7) // 8 or 1, "big"))
        h.update(b",")
    return h.hexdigest()[:16]


# ---------------------------------------------------------------------------
# burst enumeration


def _local_syndromes(cols: Sequence[int]) -> list[int]:
    """Syndrome of every subset pattern of the given columns (bit u = column u)."""
    w = len(cols)
    syn = [0] * (1 << w)
    for pat in range(1, 1 << w):
        low = pat & -pat
        syn[pat] = syn[pat ^ low] ^ cols[low.bit_length() - 1]
    return syn


@lru_cache(maxsize=64)
def _weights(w: int) -> tuple[int, ...]:
    return tuple(bin(p).count("1") for p in range(1 << w))


def iter_bursts(columns: Sequence[int], b: int, cyclic: bool = False, tmax: int | None = None):
    """Yield (start, pattern, syndrome) for each burst of length <= b.

    ``pattern`` is an int whose bit u marks position start+u; bit 0 is always
    set.  Non-cyclic bursts are clipped at the end of the code.
    """
    n = len(columns)
    if cyclic and b > n:
        raise ValueError("cyclic bursts longer than the code")
    for start in range(n):
        if cyclic:
            cols = [columns[(start + u) % n] for u in range(b)]
        else:
            cols = list(columns[start:start + b])
        syn = _local_syndromes(cols)
        wts = _weights(len(cols))
        for pat in range(1, 1 << len(cols), 2):
            if tmax is not None and wts[pat] > tmax:
                continue
            yield start, pat, syn[pat]


def burst_count(n: int, b: int, cyclic: bool = False, tmax: int | None = None) -> int:
    """Number of (start, pattern) pairs enumerated by iter_bursts."""
    total = 0
    for start in range(n):
        w = b if cyclic else min(b, n - start)
        if tmax is None:
            total += 1 << (w - 1)
        else:
            total += sum(math.comb(w - 1, k) for k in range(min(tmax, w)))
    return total


def _support_mask(start: int, pat: int, n: int) -> int:
    mask = 0
    u = 0
    while pat:
        if pat & 1:
            mask |= 1 << ((start + u) % n)
        pat >>= 1
        u += 1
    return mask


def _corrector_table(columns, b, cyclic, tmax):
    """syndrome -> (start, pattern), or None on the first collision."""
    n = len(columns)
    table: dict[int, tuple[int, int]] = {}
    masks: dict[int, int] = {}
    for start, pat, syn in iter_bursts(columns, b, cyclic, tmax):
        if syn == 0:
            return None
        hit = table.get(syn)
        if hit is not None:
            if cyclic and masks[syn] == _support_mask(start, pat, n):
                continue  # same error vector reached from another start
            return None
        table[syn] = (start, pat)
        if cyclic:
            masks[syn] = _support_mask(start, pat, n)
    return table


def _rotate(pat: int, k: int, M: int) -> int:
    k %= M
    full = (1 << M) - 1
    return ((pat << k) | (pat >> (M - k))) & full if k else pat


def _locator_ok(columns, M: int, tmax: int | None) -> tuple[bool, int, list[int]]:
    """Bursts with equal residue signature mod M must have distinct nonzero syndromes."""
    r = max(c.bit_length() for c in columns) if columns else 0
    seen = set()
    keys = []
    cases = 0
    for start, pat, syn in iter_bursts(columns, M, False, tmax):
        if syn == 0:
            return False, cases, keys
        key = (_rotate(pat, start % M, M) << r) | syn
        if key in seen:
            return False, cases, keys
        seen.add(key)
        keys.append(key)
        cases += 1
    return True, cases, keys


# ---------------------------------------------------------------------------
# component codes


ROLES = ("corrector", "corrector_weight_limited", "locator")


@dataclass(eq=False)
class ComponentCode:
    """A certified 1D code.

    ``b`` is the burst length covered; ``window`` is the residue modulus for
    locators and the fold length of a weight-limited corrector.
    """

    role: str
    b: int
    n: int
    p: BinPoly
    e: BinPoly | None = None
    t: int | None = None
    window: int | None = None
    cyclic: bool = False
    h1: ParityCheck | None = None
    certificate: Certificate | None = None
    H: ParityCheck = field(init=False)
    _table: dict | None = field(default=None, init=False, repr=False)
    _h1_table: dict | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if self.window is None:
            self.window = self.b
        if self.role == "locator":
            cols = cyclic_columns(self.p, self.n)
            self.H = ParityCheck(int(self.p.degree), self.n, cols)
        elif self.role == "corrector":
            g = self.e * self.p
            self.H = ParityCheck(int(g.degree), self.n, cyclic_columns(g, self.n))
        else:
            if self.h1 is None:
                self.h1 = weight_code(self.window, self.t)
            h2 = cyclic_columns(self.p, self.n)
            W, r1 = self.window, self.h1.r
            cols = tuple(self.h1.columns[j % W] | (h2[j] << r1) for j in range(self.n))
            self.H = ParityCheck(r1 + int(self.p.degree), self.n, cols)

    @property
    def r(self) -> int:
        return self.H.r

    @property
    def columns(self) -> tuple[int, ...]:
        return self.H.columns

    def locator_part(self) -> tuple[int, ...]:
        """Columns of the p(x)-generated part (the whole code for a locator)."""
        if self.role == "corrector_weight_limited":
            return tuple(c >> self.h1.r for c in self.H.columns)
        return self.H.columns

    def syndrome(self, positions: Iterable[int]) -> int:
        return self.H.syndrome(positions)

    def describe(self) -> str:
        if self.role == "locator":
            cap = f"locator({self.window})"
        elif self.role == "corrector":
            cap = f"corrector({self.b})"
        else:
            cap = f"corrector_weight_limited({self.b},{self.t})"
        return f"{cap} n={self.n} r={self.r}"

    # -- certification --------------------------------------------------

    def certify(self) -> Certificate:
        """Run the exhaustive check for this code's role; raise on failure."""
        if self.role == "locator":
            if self.cyclic:
                ok, cases, keys = _spec_locator_ok(self.H.columns, self.window)
                check = "locator-residue-class"
            else:
                _budget(burst_count(self.n, self.window, False, self.t))
                ok, cases, keys = _locator_ok(self.H.columns, self.window, self.t)
                check = "locator-signature"
            if not ok:
                raise CertificationError(f"{self.describe()} failed {check}")
            cert = Certificate(check, cases, _digest(keys))
        else:
            tmax = self.t if self.role == "corrector_weight_limited" else None
            _budget(burst_count(self.n, self.b, self.cyclic, tmax))
            table = _corrector_table(self.H.columns, self.b, self.cyclic, tmax)
            if table is None:
                raise CertificationError(f"{self.describe()} has colliding burst syndromes")
            self._table = table
            cert = Certificate("burst-distinct", len(table), _digest(table))
        self.certificate = cert
        return cert

    def verify_certificate(self) -> bool:
        stored = self.certificate
        return stored is not None and self.certify() == stored

    def table(self) -> dict:
        if self._table is None:
            if self.role == "locator":
                raise ValueError("locators have no burst table")
            tmax = self.t if self.role == "corrector_weight_limited" else None
            table = _corrector_table(self.H.columns, self.b, self.cyclic, tmax)
            if table is None:
                raise CertificationError(f"{self.describe()} has colliding burst syndromes")
            self._table = table
        return self._table

    # -- serialization ---------------------------------------------------

    def to_spec(self) -> str:
        parts = [
            f"kind={self.role}",
            f"b={self.b}",
            f"t={self.t if self.t is not None else '-'}",
            f"window={self.window}",
            f"n={self.n}",
            f"r={self.r}",
            f"e={self.e.to_string() if self.e is not None else '-'}",
            f"p={self.p.to_string()}",
            f"cyclic={int(self.cyclic)}",
        ]
        if self.certificate is not None:
            c = self.certificate
            parts += [f"check={c.check}", f"cases={c.cases}", f"digest={c.digest}"]
        return " ".join(parts)

    @classmethod
    def from_spec(cls, text: str) -> ComponentCode:
        try:
            kv = dict(item.split("=", 1) for item in text.split())
            t = None if kv["t"] == "-" else int(kv["t"])
            e = None if kv["e"] == "-" else BinPoly.from_string(kv["e"])
            code = cls(
                role=kv["kind"],
                b=int(kv["b"]),
                n=int(kv["n"]),
                p=BinPoly.from_string(kv["p"]),
                e=e,
                t=t,
                window=int(kv["window"]),
                cyclic=kv.get("cyclic", "0") == "1",
            )
            if "cases" in kv:
                code.certificate = Certificate(kv["check"], int(kv["cases"]), kv["digest"])
        except (KeyError, ValueError) as exc:
            raise FormatError(f"bad component spec {text!r}: {exc}") from None
        if code.r != int(kv["r"]):
            raise FormatError(f"component spec declares r={kv['r']}, rebuilt r={code.r}")
        return code


def _budget(cases: int):
    if cases > CERT_BUDGET:
        raise BudgetExceeded(f"certification would enumerate {cases} cases (budget {CERT_BUDGET})")


def _spec_locator_ok(columns, b):
    """Same pattern, starts in one residue class mod b: distinct syndromes (cyclic starts)."""
    n = len(columns)
    seen = set()
    keys = []
    cases = 0
    r = max(c.bit_length() for c in columns)
    for start in range(n):
        cols = [columns[(start + u) % n] for u in range(b)]
        syn = _local_syndromes(cols)
        for pat in range(1, 1 << b):
            key = (((pat << 32) | (start % b)) << r) | syn[pat]
            if key in seen:
                return False, cases, keys
            seen.add(key)
            keys.append(key)
            cases += 1
    return True, cases, keys


# ---------------------------------------------------------------------------
# searches


def _first_passing(fn: Callable, candidates: list, jobs: int = 1):
    """First candidate (in list order) for which fn is true."""
    if jobs <= 1 or len(candidates) < 2:
        for c in candidates:
            if fn(c):
                return c
        return None
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for c, ok in zip(candidates, ex.map(fn, candidates, chunksize=max(1, len(candidates) // (4 * jobs)))):
            if ok:
                ex.shutdown(wait=False, cancel_futures=True)
                return c
    return None


def _burst_arrays(columns, b: int, cyclic: bool, tmax: int | None):
    """(starts, patterns, syndromes) of every burst, as numpy arrays.

    Same enumeration as iter_bursts; only usable when syndromes fit in 62 bits.
    """
    n = len(columns)
    col = np.asarray(columns, dtype=np.int64)
    if cyclic:
        idx = (np.arange(n)[:, None] + np.arange(b)[None, :]) % n
        win = col[idx]
    else:
        pad = np.concatenate([col, np.zeros(b, dtype=np.int64)])
        win = pad[np.arange(n)[:, None] + np.arange(b)[None, :]]
    syn = np.zeros((n, 1 << b), dtype=np.int64)
    for u in range(b):
        half = 1 << u
        syn[:, half:2 * half] = syn[:, :half] ^ win[:, u:u + 1]
    pats = np.arange(1, 1 << b, 2, dtype=np.int64)
    keep = np.ones((n, pats.size), dtype=bool)
    if not cyclic:
        room = np.minimum(b, n - np.arange(n))
        keep &= pats[None, :] < (np.int64(1) << room)[:, None]
    if tmax is not None:
        wts = np.asarray(_weights(b), dtype=np.int64)[pats]
        keep &= (wts <= tmax)[None, :]
    starts = np.broadcast_to(np.arange(n, dtype=np.int64)[:, None], keep.shape)[keep]
    return starts, np.broadcast_to(pats, keep.shape)[keep], syn[:, pats][keep]


def _all_distinct_nonzero(keys: np.ndarray) -> bool:
    if keys.size and not keys.all():
        return False
    keys = np.sort(keys)
    return not (keys[1:] == keys[:-1]).any()


def _vector_ok(columns, r: int, b: int) -> bool:
    return r <= 62 and len(columns) * (1 << b) <= 1 << 24


def _burst_distinct(columns, b: int, cyclic: bool, tmax: int | None) -> bool:
    n = len(columns)
    r = max((c.bit_length() for c in columns), default=0)
    if not _vector_ok(columns, r, b) or (cyclic and n < 2 * b):
        # short cyclic codes can reach one error vector from several starts
        return _corrector_table(columns, b, cyclic, tmax) is not None
    _, _, syn = _burst_arrays(columns, b, cyclic, tmax)
    return _all_distinct_nonzero(syn)


def _locator_distinct(columns, M: int, tmax: int | None) -> bool:
    r = max((c.bit_length() for c in columns), default=0)
    if not _vector_ok(columns, r + M, M):
        return _locator_ok(columns, M, tmax)[0]
    starts, pats, syn = _burst_arrays(columns, M, False, tmax)
    if syn.size and not syn.all():
        return False
    k = starts % M
    full = (1 << M) - 1
    sig = ((pats << k) | (pats >> ((M - k) % M))) & full
    sig = np.where(k == 0, pats, sig)
    return _all_distinct_nonzero((sig << r) | syn)


def _cyclic_burst_ok(args) -> bool:
    g, n, b = args
    return _burst_distinct(cyclic_columns(BinPoly(g), n), b, True, None)


def _short_burst_ok(args) -> bool:
    g, n, b, tmax = args
    return _burst_distinct(cyclic_columns(BinPoly(g), n), b, False, tmax)


def _locator_candidate_ok(args) -> bool:
    p, n, M, tmax = args
    return _locator_distinct(cyclic_columns(BinPoly(p), n), M, tmax)


def _m_range(m_range, default_lo: int, default_span: int = 8) -> range:
    if m_range is None:
        return range(default_lo, default_lo + default_span + 1)
    lo, hi = m_range
    return range(lo, hi + 1)


def search_optimum_burst_code(b: int, m_range=None, e: BinPoly | None = None, jobs: int = 1) -> CyclicCodeSpec:
    """Smallest m, then smallest primitive p, with e*p a certified cyclic b-burst corrector.

    The length is n = 2^m - 1.  Degrees m for which e does not divide x^n - 1
    are skipped, since then e*p cannot generate a cyclic code of that length.
    """
    if b < 1:
        raise ValueError("burst length must be >= 1")
    if e is None:
        e = BinPoly.all_ones(b)
        if not is_b_polynomial(e, b):
            raise ValueError(f"1+x+...+x^{b - 1} is not square-free; supply another e or use odd b")
    elif not is_b_polynomial(e, b):
        raise ValueError(f"{e} is not a b-polynomial for b={b}")
    h_e = period(e)
    for m in _m_range(m_range, max(2, b + 1)):
        n = (1 << m) - 1
        if n < b or n % h_e:
            continue
        xn1 = BinPoly.x_power(n) + BinPoly(1)
        cands = [(e * p).bits for p in primitive_polys(m) if (e * p).divides(xn1)]
        found = _first_passing(_cyclic_burst_ok, [(g, n, b) for g in cands], jobs)
        if found is not None:
            g = BinPoly(found[0])
            return CyclicCodeSpec(n, g, e, g // e, b)
    raise NotFoundInRange(f"no optimum {b}-burst code for m in {m_range}")


def burst_corrector(spec: CyclicCodeSpec) -> ComponentCode:
    code = ComponentCode("corrector", spec.b, spec.n, spec.p, e=spec.e, cyclic=True)
    code.certify()
    return code


def make_locator(b_eff: int, spec: CyclicCodeSpec) -> ComponentCode:
    """The p(x)-generated code of a certified optimum b_eff-burst code, as a locator."""
    if spec.b != b_eff:
        raise ValueError("spec burst length differs from b_eff")
    code = ComponentCode("locator", b_eff, spec.n, spec.p, window=b_eff, cyclic=True)
    try:
        code.certify()
    except CertificationError as exc:  # pragma: no cover - would contradict the theory
        raise CertificationError(f"internal: locator derived from {spec} failed: {exc}") from None
    return code


def candidate_e(b: int) -> list[BinPoly]:
    """Degree b-1 square-free polynomials with e(0)=1; the all-ones one first when eligible."""
    canon = BinPoly.all_ones(b)
    out = [canon] if is_b_polynomial(canon, b) else []
    for bits in range(1 << (b - 1), 1 << b):
        if bits & 1 and bits != canon.bits and is_square_free(BinPoly(bits)):
            out.append(BinPoly(bits))
    return out


def _min_degree(n: int) -> int:
    return max(1, (n).bit_length())


def search_corrector(b: int, n: int, m_range=None, jobs: int = 1, max_e: int = 16) -> ComponentCode:
    """Shortened (non-cyclic) b-burst corrector of length n with generator e*p.

    Tries m upward; for each m the candidate e in candidate_e order, then
    primitive p in increasing order.
    """
    if n < 1 or b < 1:
        raise ValueError("need n >= 1 and b >= 1")
    b_eff = min(b, n)
    _budget(burst_count(n, b_eff))
    es = candidate_e(b_eff)[:max_e]
    # below m = b+1 the redundancy b-1+m would beat the Reiger bound 2b
    lo = b_eff + 1 if n >= 2 * b_eff else 1
    for m in _m_range(m_range, lo, 10):
        ps = [p.bits for p in primitive_polys(m)]
        for e in es:
            found = _first_passing(_short_burst_ok, [((e * BinPoly(p)).bits, n, b_eff, None) for p in ps], jobs)
            if found is not None:
                code = ComponentCode("corrector", b_eff, n, BinPoly(found[0]) // e, e=e)
                code.certify()
                return code
    raise NoComponentCode(f"no {b}-burst corrector of length {n} for m in {m_range or 'default range'}")


def search_locator(M: int, n: int, t: int | None = None, m_range=None, jobs: int = 1) -> ComponentCode:
    """Shortened locator of window M and length n generated by a primitive p.

    Certification: every two bursts of length <= M (weight <= t if given)
    sharing a residue signature mod M have distinct nonzero syndromes.
    """
    if M < 1 or n < 1:
        raise ValueError("need M >= 1 and n >= 1")
    tmax = t if t is not None and t < M else None
    _budget(burst_count(n, M, False, tmax))
    for m in _m_range(m_range, _min_degree(n), 12):
        if (1 << m) - 1 < n:
            continue
        cands = [(p.bits, n, M, tmax) for p in primitive_polys(m)]
        found = _first_passing(_locator_candidate_ok, cands, jobs)
        if found is not None:
            code = ComponentCode("locator", M, n, BinPoly(found[0]), t=tmax, window=M)
            code.certify()
            return code
    raise NoComponentCode(f"no locator(window {M}) of length {n} for m in {m_range or 'default range'}")


# ---------------------------------------------------------------------------
# t-error-correcting codes and the weight-limited corrector


def _weight_le(length: int, t: int):
    for k in range(t + 1):
        for combo in itertools.combinations(range(length), k):
            yield combo


def _certify_weight(H: ParityCheck, t: int) -> dict:
    table = {}
    for combo in _weight_le(H.n, t):
        syn = H.syndrome(combo)
        if syn in table:
            raise CertificationError(f"weight-{t} words {table[syn]} and {combo} share a syndrome")
        table[syn] = combo
    return table


def build_bch(length: int, t: int) -> ParityCheck:
    """Shortened narrow-sense binary BCH parity check with dependent rows removed."""
    if length < 1 or t < 0 or 2 * t >= length:
        raise ValueError(f"infeasible BCH parameters length={length}, t={t} (need 2t < length)")
    if t == 0:
        return ParityCheck(0, length, (0,) * length)
    ell = 1
    while (1 << ell) - 1 < length:
        ell += 1
    F = ExtField(ell)
    a = F.generator
    rows = []
    for i in range(1, 2 * t, 2):
        vals = [F.pow(a, i * j) for j in range(length)]
        for bit in range(ell):
            rows.append(sum(((v >> bit) & 1) << j for j, v in enumerate(vals)))
    H = ParityCheck.from_rows(gf2.independent_rows(rows), length)
    _certify_weight(H, t)
    return H


def weight_code(length: int, t: int | None) -> ParityCheck:
    """A t-error-correcting parity check of the given length.

    BCH when it applies; the identity (every word has its own syndrome)
    once 2t >= length.
    """
    if t is None or 2 * t >= length:
        return ParityCheck.identity(length)
    return build_bch(length, t)


def limited_weight_window(b: int) -> int:
    """Fold length for a weight-limited corrector: b when odd, b+1 when even."""
    return b if b % 2 else b + 1


def build_limited_weight(b: int, t: int, locator: ComponentCode, H1: ParityCheck) -> ComponentCode:
    """Stack H1 (repeated every W columns) on a weight-limited locator's matrix."""
    W = H1.n
    if locator.role != "locator" or locator.window != W:
        raise ValueError(f"locator window {locator.window} does not match H1 length {W}")
    if W < b:
        raise ValueError("H1 shorter than the burst length")
    code = ComponentCode("corrector_weight_limited", b, locator.n, locator.p, t=t, window=W, h1=H1)
    code.certify()
    return code


def search_limited_weight(b: int, t: int, n: int, m_range=None, jobs: int = 1) -> ComponentCode:
    W = limited_weight_window(b)
    H1 = weight_code(W, t)
    loc = search_locator(W, n, t, m_range, jobs)
    return build_limited_weight(b, t, loc, H1)


# ---------------------------------------------------------------------------
# decoding


def _pattern_tuple(pat: int, b: int) -> tuple[int, ...]:
    return tuple((pat >> u) & 1 for u in range(b))


def burst_decode(code: ComponentCode, s: int) -> tuple[int, tuple[int, ...]] | None:
    """(start, pattern) of the burst with syndrome s; None for s == 0."""
    if code.role != "corrector":
        raise ValueError("burst_decode needs a corrector")
    if s == 0:
        return None
    hit = code.table().get(s)
    if hit is None:
        raise Undecodable("syndrome matches no burst of the contract class")
    start, pat = hit
    return start, _pattern_tuple(pat, code.b)


def burst_positions(code: ComponentCode, start: int, pattern) -> frozenset:
    n = code.n
    pos = [start + u for u, bit in enumerate(pattern) if bit]
    if code.cyclic:
        return frozenset(x % n for x in pos)
    return frozenset(pos)


def locate_burst(code: ComponentCode, s: int, pattern, residue: int) -> int:
    """Unique start a = residue (mod window) whose placement of pattern has syndrome s."""
    offs = [u for u, bit in enumerate(pattern) if bit]
    if not offs:
        raise ValueError("pattern must be nonzero")
    cols = code.locator_part()
    n, M = code.n, code.window
    hits = []
    for a in range(residue % M, n, M):
        if code.cyclic:
            idx = [(a + u) % n for u in offs]
        else:
            if a + offs[-1] >= n:
                break
            idx = [a + u for u in offs]
        if gf2.xor_all(cols[i] for i in idx) == s:
            hits.append(a)
    if len(hits) != 1:
        raise NoMatch(f"{len(hits)} admissible starts match the syndrome")
    return hits[0]


def locate_set(code: ComponentCode, s: int, residues: Iterable[int]) -> frozenset:
    """The burst whose positions have the given residues mod window and syndrome s."""
    M = code.window
    residues = sorted({r % M for r in residues})
    if not residues:
        raise ValueError("empty residue signature")
    found = set()
    for rho in residues:
        offs = sorted((x - rho) % M for x in residues)
        pattern = [0] * (offs[-1] + 1)
        for u in offs:
            pattern[u] = 1
        try:
            a = locate_burst(code, s, pattern, rho)
        except NoMatch:
            continue
        found.add(frozenset(a + u for u in offs))
    if len(found) != 1:
        raise NoMatch(f"{len(found)} bursts with this signature match the syndrome")
    return found.pop()


def _h1_table(code: ComponentCode) -> dict:
    if code._h1_table is None:
        code._h1_table = {code.h1.syndrome(c): c for c in _weight_le(code.window, code.t)}
    return code._h1_table


def limited_weight_decode(code: ComponentCode, s: int) -> frozenset | None:
    """Positions of the in-contract burst with syndrome s, or None for s == 0."""
    if code.role != "corrector_weight_limited":
        raise ValueError("limited_weight_decode needs a weight-limited corrector")
    if s == 0:
        return None
    r1 = code.h1.r
    s1, s2 = s & ((1 << r1) - 1), s >> r1
    residues = _h1_table(code).get(s1)
    if residues:
        try:
            found = locate_set(code, s2, residues)
            if max(found) - min(found) < code.b and code.syndrome(found) == s:
                return found
        except NoMatch:
            pass
    hit = code.table().get(s)
    if hit is None:
        raise Undecodable("syndrome matches no weight-limited burst")
    start, pat = hit
    return burst_positions(code, start, _pattern_tuple(pat, code.b))


def decode_positions(code: ComponentCode, s: int) -> frozenset | None:
    """Erroneous positions for either kind of corrector."""
    if code.role == "corrector":
        hit = burst_decode(code, s)
        return None if hit is None else burst_positions(code, *hit)
    if code.role == "corrector_weight_limited":
        return limited_weight_decode(code, s)
    raise ValueError("locators cannot decode on their own")
