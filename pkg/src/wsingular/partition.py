"""Integer partitions and the Young-diagram statistics used by the Jack formulas."""

from __future__ import annotations

from collections import Counter
from math import factorial
from typing import Iterator, Sequence

__all__ = [
    "Partition",
    "parse_partition",
    "partitions",
    "rectangle",
    "subpartitions_of_rectangle",
]


class Partition(tuple):
    """
    A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition([0])`` is the
    empty partition.  Cells are addressed 1-based as (row, column).
    """

    __slots__ = ()

    def __new__(cls, parts: Sequence[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for i, p in enumerate(parts):
            if p <= 0 or (i and p > parts[i - 1]):
                raise ValueError(f"not a partition: {list(parts)}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The i-th part (1-based), zero past the end."""
        return self[i - 1] if i <= len(self) else 0

    def conjugate(self) -> Partition:
        if not self:
            return self
        return Partition([sum(1 for p in self if p >= j) for j in range(1, self[0] + 1)])

    def multiplicities(self) -> Counter:
        return Counter(self)

    def zee(self) -> int:
        """Centralizer size z = prod_i i^{m_i} m_i!."""
        out = 1
        for i, m in Counter(self).items():
            out *= i**m * factorial(m)
        return out

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self, start=1):
            for j in range(1, p + 1):
                yield i, j

    def _check_cell(self, i: int, j: int):
        if not (1 <= i <= len(self) and 1 <= j <= self[i - 1]):
            raise ValueError("cell not in diagram")

    def arm(self, i: int, j: int) -> int:
        self._check_cell(i, j)
        return self[i - 1] - j

    def leg(self, i: int, j: int) -> int:
        self._check_cell(i, j)
        return sum(1 for p in self[i:] if p >= j)

    def coarm(self, i: int, j: int) -> int:
        self._check_cell(i, j)
        return j - 1

    def coleg(self, i: int, j: int) -> int:
        self._check_cell(i, j)
        return i - 1

    def dominates(self, other: Sequence[int]) -> bool:
        other = Partition(other)
        if self.size != other.size:
            raise ValueError("dominance undefined across weights")
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self[i] if i < len(self) else 0
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def contains(self, other: Sequence[int]) -> bool:
        """True iff the diagram of ``other`` fits inside this one."""
        if len(other) > len(self):
            return False
        return all(q <= p for p, q in zip(self, other))

    def add_rectangle(self, m: int, n: int) -> Partition:
        """The partition with parts lambda_i + m, i = 1..n."""
        if len(self) > n:
            raise ValueError("length exceeds rectangle height")
        if m == 0:
            return self
        return Partition([self.part(i) + m for i in range(1, n + 1)])

    def __str__(self):
        return "[" + ",".join(str(p) for p in self) + "]"

    def __repr__(self):
        return f"Partition({self})"


def parse_partition(text: str) -> Partition:
    """Parse '[3,2,1]', '3,2,1' or '[]'."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return Partition()
    try:
        parts = [int(x) for x in body.split(",")]
    except ValueError:
        raise ValueError(f"malformed partition: {text!r}") from None
    return Partition(parts)


def rectangle(m: int, n: int) -> Partition:
    """[m^n]; empty when m or n is zero."""
    if m < 0 or n < 0:
        raise ValueError("rectangle sides must be non-negative")
    return Partition([m] * n) if m else Partition()


def _partitions_bounded(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    # lexicographically increasing
    if n == 0:
        yield ()
        return
    for first in range(1, min(n, max_part) + 1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


def partitions(n: int) -> list[Partition]:
    """All partitions of n in increasing lexicographic order (a linear extension of dominance)."""
    if n < 0:
        return []
    return [Partition(p) for p in _partitions_bounded(n, n)]


def subpartitions_of_rectangle(m: int, n: int, max_len: int) -> Iterator[Partition]:
    """Every partition with parts <= m and length <= min(n, max_len), in lexicographic order."""
    rows = min(n, max_len)

    def rec(prefix: tuple[int, ...], bound: int):
        yield Partition(prefix)
        if len(prefix) == rows:
            return
        for p in range(1, bound + 1):
            yield from rec(prefix + (p,), p)

    if m <= 0 or rows <= 0:
        yield Partition()
        return
    yield from rec((), m)
