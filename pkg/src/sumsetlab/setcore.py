"""Exact finite-set arithmetic: sumsets, difference sets, representation
functions and slices.

The central object is :class:`IntegerSet`, a strictly increasing tuple of
arbitrary-precision integers.  All operations are pure functions of
immutable inputs and are exact; instances can be shared freely across
threads.

Set file format: newline-delimited decimal integers, optional whole-line
``#`` comments, strictly increasing.  The parser reports duplicates,
disorder and junk with 1-based line numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from . import counting
from .counting import MODES


class FileFormatError(ValueError):
    """Malformed input file; carries the source name and 1-based line number."""

    def __init__(self, source: str, line: int, message: str):
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")


class IntegerSet:
    """Strictly increasing finite sequence of exact signed integers.

    Equality is element-wise; the empty set is allowed.  Membership tests
    use a lazily built frozenset.
    """

    __slots__ = ("elements", "_members")

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(int(x) for x in elements)
        for i in range(1, len(elems)):
            if elems[i - 1] >= elems[i]:
                kind = "duplicate" if elems[i - 1] == elems[i] else "out-of-order"
                raise ValueError(
                    f"elements must be strictly increasing: {kind} value "
                    f"{elems[i]} at position {i}"
                )
        self.elements = elems
        self._members = None

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "IntegerSet":
        """Build from arbitrary values: deduplicates and sorts."""
        return cls._from_sorted(tuple(sorted({int(v) for v in values})))

    @classmethod
    def _from_sorted(cls, elems: tuple[int, ...]) -> "IntegerSet":
        # trusted constructor: caller guarantees strictly increasing ints
        obj = cls.__new__(cls)
        obj.elements = elems
        obj._members = None
        return obj

    # -- container protocol -------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, x) -> bool:
        return x in self.members()

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegerSet):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        if len(self.elements) <= 8:
            body = ", ".join(map(str, self.elements))
        else:
            head = ", ".join(map(str, self.elements[:3]))
            tail = ", ".join(map(str, self.elements[-2:]))
            body = f"{head}, ..., {tail}"
        return f"IntegerSet({{{body}}}, n={len(self.elements)})"

    # -- helpers -------------------------------------------------------

    def members(self) -> frozenset:
        if self._members is None:
            self._members = frozenset(self.elements)
        return self._members

    @property
    def min(self) -> int:
        return self.elements[0]

    @property
    def max(self) -> int:
        return self.elements[-1]

    @property
    def diameter(self) -> int:
        return self.elements[-1] - self.elements[0] if self.elements else 0

    def translate(self, t: int) -> "IntegerSet":
        return IntegerSet._from_sorted(tuple(x + t for x in self.elements))

    def issubset(self, other: "IntegerSet") -> bool:
        return self.members() <= other.members()


EMPTY = IntegerSet()


@dataclass(frozen=True)
class RepFunction:
    """Representation counts: value -> number of ordered pairs (a, b) with
    a - b = value (difference mode) or a + b = value (sum mode).

    Zero-count values are absent; ``total`` equals |A| * |B|.
    """

    mode: str
    counts: Mapping[int, int]
    total: int

    def get(self, s: int) -> int:
        return self.counts.get(s, 0)

    def support(self) -> list[int]:
        return sorted(self.counts)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def sumset(a: IntegerSet, b: IntegerSet) -> IntegerSet:
    """A + B = {x + y : x in A, y in B}, deduplicated and sorted."""
    if not a.elements or not b.elements:
        return EMPTY
    vals = counting.pairwise_values(a.elements, b.elements, "sum")
    return IntegerSet._from_sorted(tuple(vals))


def diffset(a: IntegerSet, b: IntegerSet) -> IntegerSet:
    """A - B = {x - y : x in A, y in B}, deduplicated and sorted."""
    if not a.elements or not b.elements:
        return EMPTY
    vals = counting.pairwise_values(a.elements, b.elements, "difference")
    return IntegerSet._from_sorted(tuple(vals))


def rep_function(a: IntegerSet, b: IntegerSet, mode: str) -> RepFunction:
    """Representation function of A - B or A + B over ordered pairs."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    table = counting.pair_correlation(a.elements, b.elements, mode)
    counts = table.to_dict()
    total = len(a) * len(b)
    assert table.total == total
    return RepFunction(mode=mode, counts=counts, total=total)


def slice_set(a: IntegerSet, s: int) -> IntegerSet:
    """The slice A_s = A intersect (A + s); its size equals delta_A(s)."""
    if not a.elements:
        return EMPTY
    members = a.members()
    return IntegerSet._from_sorted(tuple(x for x in a.elements if x - s in members))


# ---------------------------------------------------------------------------
# set files
# ---------------------------------------------------------------------------


def parse_set_text(text: str, source: str = "<string>") -> IntegerSet:
    """Parse the newline-delimited set format; rejects disorder with
    line-numbered errors."""
    elems: list[int] = []
    prev: int | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            value = int(line)
        except ValueError:
            raise FileFormatError(source, lineno, f"not an integer: {line!r}") from None
        if prev is not None:
            if value == prev:
                raise FileFormatError(source, lineno, f"duplicate value {value}")
            if value < prev:
                raise FileFormatError(
                    source, lineno, f"out of order: {value} after {prev}"
                )
        elems.append(value)
        prev = value
    return IntegerSet._from_sorted(tuple(elems))


def load_set(path) -> IntegerSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_set_text(fh.read(), source=str(path))


def format_set(a: IntegerSet) -> str:
    return "".join(f"{x}\n" for x in a.elements)


def save_set(a: IntegerSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_set(a))
