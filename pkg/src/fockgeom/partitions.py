"""Young-diagram combinatorics.

Cells follow the ``(i, j)`` convention where ``i`` indexes parts and
``1 <= j <= lambda_i``. Arm and leg lengths are defined for every cell,
including cells outside the diagram, where they become negative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator

Cell = tuple[int, int]


@dataclass(frozen=True, order=False)
class Partition:
    """Weakly decreasing tuple of positive parts (trailing zeros stripped)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def part(self, i: int) -> int:
        """The 1-based part ``lambda_i`` (zero past the length)."""
        if 1 <= i <= len(self.parts):
            return self.parts[i - 1]
        return 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> Partition:
        return conjugate(self)

    def cells(self) -> Iterator[Cell]:
        for i, row in enumerate(self.parts, start=1):
            for j in range(1, row + 1):
                yield (i, j)

    def contains(self, other: Partition) -> bool:
        """True when ``other`` is a subdiagram of ``self``."""
        return len(other) <= len(self) and all(
            o <= s for o, s in zip(other.parts, self.parts)
        )

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def __repr__(self):
        return f"Partition{self.parts!r}"

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse the ``"(3,1,1)"`` text format; ``"()"`` is the empty partition."""
        m = re.fullmatch(r"\s*\(\s*([0-9,\s]*)\)\s*", text)
        if m is None:
            raise ValueError(f"not a partition: {text!r}")
        body = m.group(1).strip()
        if not body:
            return cls(())
        try:
            parts = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise ValueError(f"not a partition: {text!r}") from None
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {text!r}")
        return cls(parts)


EMPTY = Partition(())


@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    if not lam.parts:
        return lam
    return Partition(
        tuple(sum(1 for p in lam.parts if p >= j) for j in range(1, lam.parts[0] + 1))
    )


def arm(lam: Partition, s: Cell) -> int:
    i, j = s
    return lam.part(i) - j


def leg(lam: Partition, s: Cell) -> int:
    i, j = s
    return conjugate(lam).part(j) - i


def relative_hook(lam: Partition, mu: Partition, s: Cell) -> int:
    """``a_lam(s) + l_mu(s) + 1``."""
    return arm(lam, s) + leg(mu, s) + 1


def hook_number(lam: Partition, mu: Partition) -> int:
    """Product of relative hooks over the cells of ``lam``."""
    out = 1
    for s in lam.cells():
        out *= relative_hook(lam, mu, s)
    return out


def hook_length_product(lam: Partition) -> int:
    return hook_number(lam, lam)


class StripStatus(Enum):
    NOT_CONTAINED = "not_contained"
    NOT_STRIP = "not_strip"
    STRIP = "strip"


def border_strip(lam: Partition, mu: Partition) -> tuple[StripStatus, int | None]:
    """Classify the skew shape ``mu - lam`` by direct inspection of its cells.

    Returns ``(STRIP, width)`` when the shape is a nonempty, edge-connected
    set with no 2x2 square; the width is the number of rows it touches minus one.
    """
    if not mu.contains(lam):
        return StripStatus.NOT_CONTAINED, None
    skew = {(i, j) for (i, j) in mu.cells() if j > lam.part(i)}
    if not skew:
        return StripStatus.NOT_STRIP, None
    for i, j in skew:
        if {(i + 1, j), (i, j + 1), (i + 1, j + 1)} <= skew:
            return StripStatus.NOT_STRIP, None
    start = next(iter(skew))
    seen = {start}
    stack = [start]
    while stack:
        i, j = stack.pop()
        for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if nb in skew and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(skew):
        return StripStatus.NOT_STRIP, None
    rows = {i for i, _ in skew}
    return StripStatus.STRIP, len(rows) - 1


def _beta_set(lam: Partition, beads: int) -> list[int]:
    return [lam.part(i) + beads - i for i in range(1, beads + 1)]


def _from_beta(betas: list[int]) -> Partition:
    betas = sorted(betas, reverse=True)
    n = len(betas)
    return Partition(tuple(b - (n - i) for i, b in enumerate(betas, start=1)))


def add_border_strips(lam: Partition, n: int) -> list[tuple[Partition, int]]:
    """All ``(mu, width)`` with ``mu - lam`` a border strip of size ``n``.

    Works on beta-numbers: a strip of size ``n`` slides one bead up by ``n``
    and its width is the number of beads jumped over.
    """
    if n < 1:
        raise ValueError("strip size must be positive")
    betas = _beta_set(lam, len(lam) + n)
    occupied = set(betas)
    out = []
    for b in betas:
        if b + n in occupied:
            continue
        width = sum(1 for x in betas if b < x < b + n)
        moved = [x for x in betas if x != b] + [b + n]
        out.append((_from_beta(moved), width))
    out.sort(key=lambda t: t[0].parts, reverse=True)
    return out


def remove_border_strips(mu: Partition, n: int) -> list[tuple[Partition, int]]:
    """All ``(lam, width)`` with ``mu - lam`` a border strip of size ``n``."""
    if n < 1:
        raise ValueError("strip size must be positive")
    betas = _beta_set(mu, len(mu))
    occupied = set(betas)
    out = []
    for b in betas:
        if b - n < 0 or b - n in occupied:
            continue
        width = sum(1 for x in betas if b - n < x < b)
        moved = [x for x in betas if x != b] + [b - n]
        out.append((_from_beta(moved), width))
    out.sort(key=lambda t: t[0].parts, reverse=True)
    return out


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append(Partition((first,) + rest.parts))
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """Partitions of ``n`` in lexicographically descending order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions(n, n))
