"""r-colored fermionic and bosonic Fock spaces.

A basis vector of either space is a :class:`FixedPoint`: one
``(charge, partition)`` pair per color. In the fermionic picture it is an
r-tuple of semi-infinite monomials, in the bosonic picture the tuple
``(q^{c^1} s_{lambda^1}, ..., q^{c^r} s_{lambda^r})``. Colors are 1-based
throughout and generators of different colors commute.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator

from .partitions import EMPTY, Partition, add_border_strips, partitions_of, remove_border_strips
from .polynomial import format_rational


@dataclass(frozen=True)
class FixedPoint:
    colors: tuple[tuple[int, Partition], ...]

    def __post_init__(self):
        colors = tuple((int(c), lam) for c, lam in self.colors)
        if not colors:
            raise ValueError("a fixed point needs at least one color")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def of(cls, *pairs) -> FixedPoint:
        """``FixedPoint.of((0, (2, 1)), (1, ()))``."""
        return cls(tuple((c, lam if isinstance(lam, Partition) else Partition(tuple(lam)))
                         for c, lam in pairs))

    @classmethod
    def vacuum(cls, charges: Iterable[int]) -> FixedPoint:
        return cls(tuple((c, EMPTY) for c in charges))

    @property
    def rank(self) -> int:
        return len(self.colors)

    @property
    def charges(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.colors)

    @property
    def shapes(self) -> tuple[Partition, ...]:
        return tuple(lam for _, lam in self.colors)

    @property
    def energy(self) -> int:
        return sum(lam.size for _, lam in self.colors)

    def charge(self, l: int) -> int:
        return self.colors[l - 1][0]

    def shape(self, l: int) -> Partition:
        return self.colors[l - 1][1]

    def replace(self, l: int, charge: int, shape: Partition) -> FixedPoint:
        colors = list(self.colors)
        colors[l - 1] = (charge, shape)
        return FixedPoint(tuple(colors))

    def sort_key(self):
        # charges ascending, then each shape in lexicographically descending order
        return tuple((c, tuple(-p for p in lam.parts) + (1,)) for c, lam in self.colors)

    def __str__(self):
        return "|".join(f"{c}:{lam}" for c, lam in self.colors)

    def __repr__(self):
        return f"FixedPoint({self})"

    @classmethod
    def parse(cls, text: str) -> FixedPoint:
        pieces = text.split("|")
        colors = []
        pos = 0
        for piece in pieces:
            m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(\(.*\))\s*", piece)
            if m is None:
                raise ValueError(f"bad fixed point at position {pos}: {piece!r}")
            try:
                colors.append((int(m.group(1)), Partition.parse(m.group(2))))
            except ValueError as exc:
                raise ValueError(f"bad partition at position {pos + m.start(2)}: {exc}") from None
            pos += len(piece) + 1
        return cls(tuple(colors))


def monomial_entries(p: FixedPoint, color: int, count: int) -> list[int]:
    """First ``count`` entries ``i_1 > i_2 > ...`` of the color's semi-infinite monomial."""
    if count < 1:
        raise ValueError("count must be positive")
    c, lam = p.colors[color - 1]
    return [c - k + 1 + lam.part(k) for k in range(1, count + 1)]


def _shape_from_entries(entries: list[int], charge: int) -> Partition:
    return Partition(tuple(i - (charge - k + 1) for k, i in enumerate(entries, start=1)))


def _window_length(c: int, lam: Partition, j: int) -> int:
    # entries past this index are c-k+1 < j, a plain descending tail
    return len(lam) + max(0, c - j + 1) + 1


def psi(l: int, j: int, p: FixedPoint) -> tuple[int, FixedPoint] | None:
    """Wedge ``j`` into color ``l``; ``None`` when ``j`` is already present."""
    c, lam = p.colors[l - 1]
    entries = monomial_entries(p, l, _window_length(c, lam, j))
    if j in entries:
        return None
    s = sum(1 for i in entries if i > j)
    new = entries[:s] + [j] + entries[s:]
    return (-1) ** s, p.replace(l, c + 1, _shape_from_entries(new, c + 1))


def psi_star(l: int, j: int, p: FixedPoint) -> tuple[int, FixedPoint] | None:
    """Contract ``j`` out of color ``l``; ``None`` when ``j`` is absent."""
    c, lam = p.colors[l - 1]
    entries = monomial_entries(p, l, _window_length(c, lam, j))
    if j not in entries:
        return None
    s = entries.index(j) + 1
    new = entries[: s - 1] + entries[s:]
    return (-1) ** (s - 1), p.replace(l, c - 1, _shape_from_entries(new, c - 1))


class FockVector:
    """Finite rational combination of basis :class:`FixedPoint` labels."""

    picture = "fock"

    def __init__(self, terms=None):
        self.terms: dict[FixedPoint, Fraction] = {}
        if terms:
            for k, v in dict(terms).items():
                v = Fraction(v)
                if v:
                    self.terms[k] = self.terms.get(k, 0) + v
            self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def basis(cls, p: FixedPoint):
        return cls({p: 1})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, p: FixedPoint) -> Fraction:
        return self.terms.get(p, Fraction(0))

    def _same(self, other):
        if type(self) is not type(other):
            raise TypeError(f"cannot combine {self.picture} and {other.picture} vectors")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return type(self)(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        c = Fraction(c)
        return type(self)({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return type(self) is type(other) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"{format_rational(v)}*[{k}]" for k, v in self.sorted_terms())
        return f"{type(self).__name__}({body or '0'})"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def map_basis(self, fn: Callable[[FixedPoint], Iterable[tuple[Fraction, FixedPoint]]]):
        out: dict[FixedPoint, Fraction] = {}
        for p, v in self.terms.items():
            for coef, q in fn(p):
                out[q] = out.get(q, 0) + v * coef
        return type(self)(out)

    def to_list(self) -> list[dict]:
        return [{"basis": str(k), "coef": format_rational(v)} for k, v in self.sorted_terms()]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_list(cls, data: list[dict]):
        return cls({FixedPoint.parse(d["basis"]): Fraction(d["coef"]) for d in data})


class FermionVector(FockVector):
    picture = "fermionic"


class BosonVector(FockVector):
    picture = "bosonic"


def inner_product(u: FockVector, v: FockVector) -> Fraction:
    """Bilinear pairing for which the basis is orthonormal."""
    u._same(v)
    if len({k.rank for k in u.terms} | {k.rank for k in v.terms}) > 1:
        raise ValueError("vectors of different rank")
    if len(u) > len(v):
        u, v = v, u
    return sum((a * v.terms[k] for k, a in u.terms.items() if k in v.terms), Fraction(0))


def apply_psi(l: int, j: int, v: FermionVector) -> FermionVector:
    def act(p):
        res = psi(l, j, p)
        return [] if res is None else [(res[0], res[1])]

    return v.map_basis(act)


def apply_psi_star(l: int, j: int, v: FermionVector) -> FermionVector:
    def act(p):
        res = psi_star(l, j, p)
        return [] if res is None else [(res[0], res[1])]

    return v.map_basis(act)


@lru_cache(maxsize=None)
def p_basis_action(l: int, n: int, p: FixedPoint) -> tuple[tuple[Fraction, FixedPoint], ...]:
    """Image of one basis vector under ``p^l(n)`` as ``(coef, basis)`` pairs."""
    c, lam = p.colors[l - 1]
    if n == 0:
        return ((Fraction(c), p),) if c else ()
    if n < 0:
        strips = add_border_strips(lam, -n)
    else:
        # p(n) = d/dp_n is the adjoint of p(-n) = p_n / n
        strips = remove_border_strips(lam, n)
    scale = Fraction(1, abs(n))
    return tuple(
        (scale * (-1) ** w, p.replace(l, c, mu)) for mu, w in strips
    )


def p_apply(l: int, n: int, v: BosonVector) -> BosonVector:
    return v.map_basis(lambda p: p_basis_action(l, n, p))


def fixed_points(charges: tuple[int, ...], energy: int) -> list[FixedPoint]:
    """All fixed points with the given charge vector and total energy, canonically sorted."""
    return list(_fixed_points(tuple(charges), energy))


@lru_cache(maxsize=None)
def _fixed_points(charges: tuple[int, ...], energy: int) -> tuple[FixedPoint, ...]:
    if energy < 0:
        return ()
    r = len(charges)
    out = []
    for sizes in _compositions(energy, r):
        for shapes in product(*(partitions_of(s) for s in sizes)):
            out.append(FixedPoint(tuple(zip(charges, shapes))))
    out.sort(key=FixedPoint.sort_key)
    return tuple(out)


def _compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest
