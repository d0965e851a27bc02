"""Exact counting kernels for pairwise sums and differences.

Everything in this library reduces to one primitive: given two strictly
increasing integer sequences a and b, count how often each value occurs
among the ordered pairs a[i] - b[j] (or a[i] + b[j]).  Three interchangeable
strategies compute that multiset exactly:

* ``dict``    -- plain hash-map loop; works for arbitrary-precision values.
* ``numpy``   -- broadcast the full pair table and sort; used when every
                 value fits comfortably in int64.
* ``kron``    -- Kronecker substitution: pack each sequence as a polynomial
                 with 32-bit coefficient slots inside one big integer and
                 multiply (GMP via gmpy2 when available).  The product's
                 coefficient stream is the wanted convolution, read back
                 exactly with numpy.  Wins whenever the number of pairs
                 vastly exceeds the value range, e.g. representation
                 functions of difference sets with ~1e10 pairs.

All strategies return bit-identical results; the test suite cross-checks
them.  No floating point is involved anywhere.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

try:
    from gmpy2 import mpz

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    mpz = int
    HAVE_GMPY2 = False

MODES = ("difference", "sum")

_DICT_PAIR_LIMIT = 1 << 16
_NUMPY_PAIR_LIMIT = 1 << 25
_NUMPY_CHUNK = 1 << 24
# Kronecker coefficient budget: generous with GMP, conservative with the
# pure-Python big-int fallback (Karatsuba).
_KRON_LEN_LIMIT = (1 << 24) if HAVE_GMPY2 else (1 << 18)
_INT64_SAFE = 1 << 62
_COUNT_WIDTH = 4  # bytes per Kronecker coefficient slot (counts < 2**32)


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


class CountTable:
    """Sorted value -> count table for a pairwise sum/difference multiset.

    Backed either by int64 numpy arrays or by plain Python lists (when the
    values do not fit in int64).  Counts and moments are exact integers.
    """

    __slots__ = ("_vals", "_cnts", "_is_np", "total")

    def __init__(self, values, counts, total: int):
        self._vals = values
        self._cnts = counts
        self._is_np = isinstance(values, np.ndarray)
        self.total = total

    # -- construction ------------------------------------------------

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> "CountTable":
        vals = sorted(mapping)
        cnts = [mapping[v] for v in vals]
        return cls(vals, cnts, sum(cnts))

    @classmethod
    def from_arrays(cls, values: np.ndarray, counts: np.ndarray) -> "CountTable":
        return cls(values, counts, int(counts.sum()))

    # -- basic access ------------------------------------------------

    @property
    def support_size(self) -> int:
        return len(self._vals)

    def values(self) -> list[int]:
        return self._vals.tolist() if self._is_np else list(self._vals)

    def counts(self) -> list[int]:
        return self._cnts.tolist() if self._is_np else list(self._cnts)

    def counts_array(self) -> np.ndarray:
        if self._is_np:
            return self._cnts
        return np.array(self._cnts, dtype=np.int64)

    def items(self) -> Iterator[tuple[int, int]]:
        if self._is_np:
            return zip(self._vals.tolist(), self._cnts.tolist())
        return zip(self._vals, self._cnts)

    def to_dict(self) -> dict[int, int]:
        return dict(self.items())

    def get(self, s: int) -> int:
        if self._is_np:
            i = int(np.searchsorted(self._vals, s))
            if i < len(self._vals) and int(self._vals[i]) == s:
                return int(self._cnts[i])
            return 0
        import bisect

        i = bisect.bisect_left(self._vals, s)
        if i < len(self._vals) and self._vals[i] == s:
            return self._cnts[i]
        return 0

    def get_many(self, values) -> list[int]:
        """Counts for a list of query values (0 where absent)."""
        if self._is_np:
            q = np.asarray(values, dtype=np.int64)
            idx = np.searchsorted(self._vals, q)
            idx_c = np.minimum(idx, len(self._vals) - 1) if len(self._vals) else idx
            if len(self._vals) == 0:
                return [0] * len(q)
            hit = self._vals[idx_c] == q
            out = np.where(hit, self._cnts[idx_c], 0)
            return out.tolist()
        return [self.get(int(v)) for v in values]

    def max_count(self) -> int:
        if self.support_size == 0:
            return 0
        if self._is_np:
            return int(self._cnts.max())
        return max(self._cnts)

    # -- exact moments -----------------------------------------------

    def moment(self, k: int) -> int:
        """Exact sum of count**k over the support."""
        return self._masked_moment(k, None)

    def truncated_moment(self, k: int, min_count) -> int:
        """Exact sum of count**k over entries with count >= min_count."""
        return self._masked_moment(k, min_count)

    def count_where_ge(self, threshold) -> int:
        """Number of support values whose count is >= threshold."""
        if self.support_size == 0:
            return 0
        if self._is_np:
            return int((self._cnts >= threshold).sum())
        return sum(1 for c in self._cnts if c >= threshold)

    def _masked_moment(self, k: int, min_count) -> int:
        if self.support_size == 0:
            return 0
        if self._is_np:
            cnts = self._cnts if min_count is None else self._cnts[self._cnts >= min_count]
            if cnts.size == 0:
                return 0
            m = int(cnts.max())
            if m**k * cnts.size < _INT64_SAFE:  # overflow-safe in int64
                return int((cnts**k).sum())
            return sum(int(c) ** k for c in cnts.tolist())
        it = self._cnts if min_count is None else (c for c in self._cnts if c >= min_count)
        return sum(c**k for c in it)


# ---------------------------------------------------------------------------
# strategy selection
# ---------------------------------------------------------------------------


def _int64_safe(a: Sequence[int], b: Sequence[int]) -> bool:
    return max(abs(a[0]), abs(a[-1]), abs(b[0]), abs(b[-1])) < _INT64_SAFE


def _kron_length(a: Sequence[int], b: Sequence[int]) -> int:
    return (a[-1] - a[0]) + (b[-1] - b[0]) + 1


def _plan(a: Sequence[int], b: Sequence[int]) -> str:
    pairs = len(a) * len(b)
    if pairs == 0:
        return "empty"
    if pairs <= _DICT_PAIR_LIMIT:
        return "dict"
    if not _int64_safe(a, b):
        return "dict"
    klen = _kron_length(a, b)
    if klen <= min(pairs // 2, _KRON_LEN_LIMIT):
        return "kron"
    if pairs <= _NUMPY_PAIR_LIMIT:
        return "numpy"
    if klen <= _KRON_LEN_LIMIT:
        return "kron"
    return "numpy_chunked"


# ---------------------------------------------------------------------------
# strategy implementations
# ---------------------------------------------------------------------------


def _dict_counts(a: Sequence[int], b: Sequence[int], mode: str) -> dict[int, int]:
    out: dict[int, int] = {}
    get = out.get
    if mode == "difference":
        for x in a:
            for y in b:
                s = x - y
                out[s] = get(s, 0) + 1
    else:
        for x in a:
            for y in b:
                s = x + y
                out[s] = get(s, 0) + 1
    return out


def _numpy_pair_values(a: Sequence[int], b: Sequence[int], mode: str) -> np.ndarray:
    arr_a = np.asarray(a, dtype=np.int64)
    arr_b = np.asarray(b, dtype=np.int64)
    if mode == "difference":
        return (arr_a[:, None] - arr_b[None, :]).ravel()
    return (arr_a[:, None] + arr_b[None, :]).ravel()


def _numpy_counts(a, b, mode: str) -> tuple[np.ndarray, np.ndarray]:
    vals, cnts = np.unique(_numpy_pair_values(a, b, mode), return_counts=True)
    return vals, cnts


def _numpy_chunked_counts(a, b, mode: str) -> tuple[np.ndarray, np.ndarray]:
    arr_a = np.asarray(a, dtype=np.int64)
    arr_b = np.asarray(b, dtype=np.int64)
    rows = max(1, _NUMPY_CHUNK // max(1, len(b)))
    parts_v, parts_c = [], []
    for start in range(0, len(a), rows):
        block = arr_a[start : start + rows]
        tab = block[:, None] - arr_b[None, :] if mode == "difference" else block[:, None] + arr_b[None, :]
        v, c = np.unique(tab.ravel(), return_counts=True)
        parts_v.append(v)
        parts_c.append(c)
    vals = np.concatenate(parts_v)
    cnts = np.concatenate(parts_c)
    u, inv = np.unique(vals, return_inverse=True)
    out = np.zeros(u.size, dtype=np.int64)
    np.add.at(out, inv, cnts)
    return u, out


def _pack_indicator(offsets: np.ndarray, length: int) -> int:
    buf = np.zeros(length, dtype="<u4")
    buf[offsets] = 1
    return int.from_bytes(buf.tobytes(), "little")


def _kron_counts(a, b, mode: str) -> tuple[np.ndarray, np.ndarray]:
    arr_a = np.asarray(a, dtype=np.int64)
    arr_b = np.asarray(b, dtype=np.int64)
    a0, a1 = int(arr_a[0]), int(arr_a[-1])
    b0, b1 = int(arr_b[0]), int(arr_b[-1])
    la = a1 - a0 + 1
    lb = b1 - b0 + 1
    if mode == "difference":
        # reversed indicator of b turns correlation into convolution
        off_b = (b1 - arr_b).astype(np.int64)
        base = a0 - b1
    else:
        off_b = (arr_b - b0).astype(np.int64)
        base = a0 + b0
    # coefficients are pair counts <= min(|a|,|b|) < 2**32, so 4-byte slots
    # never overflow into a neighbour
    ia = _pack_indicator(arr_a - a0, la)
    ib = _pack_indicator(off_b, lb)
    prod = mpz(ia) * mpz(ib)
    length = la + lb - 1
    raw = int(prod).to_bytes(_COUNT_WIDTH * length, "little")
    full = np.frombuffer(raw, dtype="<u4")
    nz = np.flatnonzero(full)
    vals = nz.astype(np.int64) + base
    cnts = full[nz].astype(np.int64)
    return vals, cnts


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def pair_correlation(a: Sequence[int], b: Sequence[int], mode: str) -> CountTable:
    """Exact value -> count table of {a[i] (+|-) b[j]} over ordered pairs.

    Inputs must be strictly increasing sequences of integers.
    """
    _check_mode(mode)
    plan = _plan(a, b)
    if plan == "empty":
        return CountTable([], [], 0)
    if plan == "dict":
        return CountTable.from_dict(_dict_counts(a, b, mode))
    if plan == "kron":
        vals, cnts = _kron_counts(a, b, mode)
    elif plan == "numpy":
        vals, cnts = _numpy_counts(a, b, mode)
    else:
        vals, cnts = _numpy_chunked_counts(a, b, mode)
    return CountTable.from_arrays(vals, cnts)


def pairwise_values(a: Sequence[int], b: Sequence[int], mode: str) -> list[int]:
    """Sorted distinct values of a[i] (+|-) b[j]."""
    _check_mode(mode)
    plan = _plan(a, b)
    if plan == "empty":
        return []
    if plan == "dict":
        if mode == "difference":
            return sorted({x - y for x in a for y in b})
        return sorted({x + y for x in a for y in b})
    if plan == "kron":
        vals, _ = _kron_counts(a, b, mode)
        return vals.tolist()
    if plan == "numpy":
        return np.unique(_numpy_pair_values(a, b, mode)).tolist()
    vals, _ = _numpy_chunked_counts(a, b, mode)
    return vals.tolist()
