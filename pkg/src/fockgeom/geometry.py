"""Fixed-point equivariant classes and the geometric operator matrices.

All classes live in Q[b_1, ..., b_r, eps] and are built as products of
linear forms ``b_beta - b_alpha + m * eps`` whose integer weights ``m`` come
from relative hook lengths. Operator matrix entries are the localization
structure constants ``class(I, J) / (e(T_I^-) e(T_J^+))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .blocks import Block, BlockMatrix, Op, block_basis
from .fock import FixedPoint
from .partitions import relative_hook
from .polynomial import FactoredClass, LinearForm, eps_form, exact_ratio, weight_form


class WindowError(ValueError):
    """A block needed by a computation lies outside the truncation window."""


@dataclass(frozen=True)
class TruncationWindow:
    max_energy: int
    charge_lo: tuple[int, ...]
    charge_hi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "charge_lo", tuple(self.charge_lo))
        object.__setattr__(self, "charge_hi", tuple(self.charge_hi))
        if self.max_energy < 0:
            raise ValueError("max_energy must be nonnegative")
        if len(self.charge_lo) != len(self.charge_hi):
            raise ValueError("charge bounds have different lengths")
        if any(lo > hi for lo, hi in zip(self.charge_lo, self.charge_hi)):
            raise ValueError("charge_lo must not exceed charge_hi")

    @classmethod
    def box(cls, r: int, max_energy: int, lo: int, hi: int) -> TruncationWindow:
        return cls(max_energy, (lo,) * r, (hi,) * r)

    @property
    def rank(self) -> int:
        return len(self.charge_lo)

    def contains_charges(self, charges) -> bool:
        return len(charges) == self.rank and all(
            lo <= c <= hi for c, lo, hi in zip(charges, self.charge_lo, self.charge_hi)
        )

    def contains(self, block: Block) -> bool:
        charges, k = block
        return self.contains_charges(charges) and k <= self.max_energy

    def charge_vectors(self) -> Iterator[tuple[int, ...]]:
        def rec(i):
            if i == self.rank:
                yield ()
                return
            for c in range(self.charge_lo[i], self.charge_hi[i] + 1):
                for rest in rec(i + 1):
                    yield (c,) + rest

        return rec(0)

    def blocks(self) -> Iterator[Block]:
        for charges in self.charge_vectors():
            for k in range(self.max_energy + 1):
                yield charges, k

    def widened(self, energy: int = 0, charge: int = 0) -> TruncationWindow:
        return TruncationWindow(
            self.max_energy + energy,
            tuple(c - charge for c in self.charge_lo),
            tuple(c + charge for c in self.charge_hi),
        )

    def to_dict(self) -> dict:
        return {"max_energy": self.max_energy, "charge_lo": list(self.charge_lo),
                "charge_hi": list(self.charge_hi)}


@dataclass(frozen=True)
class GeometryContext:
    r: int
    window: TruncationWindow
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rank must be positive")
        if self.window.rank != self.r:
            raise ValueError(f"window has rank {self.window.rank}, context has rank {self.r}")

    @classmethod
    def standard(cls, r: int, max_energy: int = 4, lo: int = -2, hi: int = 2) -> GeometryContext:
        return cls(r, TruncationWindow.box(r, max_energy, lo, hi))

    def with_window(self, window: TruncationWindow) -> GeometryContext:
        # blocks do not depend on the window, so the cache can be shared
        return GeometryContext(self.r, window, self._cache)

    def check(self, *points: FixedPoint):
        for p in points:
            if p.rank != self.r:
                raise ValueError(f"fixed point {p} has {p.rank} colors, expected {self.r}")


# -- tangent spaces and the K-bundle -------------------------------------------------


def tangent_factors(I: FixedPoint, half: str) -> list[LinearForm]:
    r = I.rank
    out = []
    for a in range(1, r + 1):
        ca, la = I.colors[a - 1]
        for b in range(1, r + 1):
            cb, lb = I.colors[b - 1]
            for s in la.cells():
                h = relative_hook(la, lb, s)
                if half == "minus":
                    out.append(weight_form(r, b, a, cb - ca - h))
                elif half == "plus":
                    out.append(weight_form(r, a, b, ca - cb + h))
                else:
                    raise ValueError(f"unknown half {half!r}")
    return out


def euler_tangent(ctx: GeometryContext, I: FixedPoint, half: str = "full") -> FactoredClass:
    """Equivariant Euler class of ``T_I^-``, ``T_I^+`` or the full tangent space."""
    ctx.check(I)
    key = ("tangent", I, half)
    hit = ctx._cache.get(key)
    if hit is not None:
        return hit
    if half == "full":
        out = euler_tangent(ctx, I, "minus") * euler_tangent(ctx, I, "plus")
    else:
        out = FactoredClass.product(ctx.r, tangent_factors(I, half))
    ctx._cache[key] = out
    return out


def k_euler_factors(I: FixedPoint, J: FixedPoint, skip=None) -> list[LinearForm]:
    """Raw weights of the K-bundle fiber at ``(I, J)``, ``r(|I| + |J|)`` of them.

    ``skip`` is an optional ``(side, color, cell)`` naming one diagonal-color
    factor to leave out, ``side`` being ``"I"`` or ``"J"``.
    """
    r = I.rank
    out = []
    for a in range(1, r + 1):
        ca, la = I.colors[a - 1]
        da, ja = J.colors[a - 1]
        for b in range(1, r + 1):
            cb, lb = I.colors[b - 1]
            db, jb = J.colors[b - 1]
            for s in la.cells():
                if skip is not None and skip == ("I", a, s) and a == b:
                    continue
                out.append(weight_form(r, b, a, db - ca - relative_hook(la, jb, s)))
            for s in ja.cells():
                if skip is not None and skip == ("J", a, s) and a == b:
                    continue
                out.append(weight_form(r, a, b, da - cb + relative_hook(ja, lb, s)))
    return out


def k_euler(ctx: GeometryContext, I: FixedPoint, J: FixedPoint) -> FactoredClass:
    """Euler class of the K-bundle fiber at the fixed point ``(I, J)``."""
    ctx.check(I, J)
    return FactoredClass.product(ctx.r, k_euler_factors(I, J))


def _charge_step(I: FixedPoint, J: FixedPoint) -> tuple[int, int] | None:
    """``(l, +1/-1)`` when ``c(J) = c(I) +/- 1_l``; ``None`` otherwise."""
    diff = [d - c for c, d in zip(I.charges, J.charges)]
    nz = [(i, x) for i, x in enumerate(diff, start=1) if x]
    if len(nz) == 1 and nz[0][1] in (1, -1):
        return nz[0]
    return None


def c_tnv_clifford(ctx: GeometryContext, I: FixedPoint, J: FixedPoint, l: int,
                   direction: str) -> FactoredClass:
    """Top non-vanishing class of ``K_{c, c +/- 1_l}``: the full Euler class."""
    ctx.check(I, J)
    sign = {"raise": 1, "lower": -1}.get(direction)
    if sign is None:
        raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")
    if _charge_step(I, J) != (l, sign):
        raise ValueError(f"charges {I.charges} -> {J.charges} are not a {direction} step in color {l}")
    return k_euler(ctx, I, J)


def heisenberg_removed_cell(I: FixedPoint, J: FixedPoint) -> tuple[str, int, tuple[int, int]] | None:
    """The structurally zero factor for an equal-charge pair with different shapes.

    Uses the first color whose shapes differ and the first differing row ``k``;
    the cell is ``(k, lambda_k)`` of whichever shape is longer in that row.
    """
    for l in range(1, I.rank + 1):
        lam, mu = I.shape(l), J.shape(l)
        if lam != mu:
            k = 1
            while lam.part(k) == mu.part(k):
                k += 1
            if lam.part(k) > mu.part(k):
                return "I", l, (k, lam.part(k))
            return "J", l, (k, mu.part(k))
    return None


def c_tnv_heisenberg(ctx: GeometryContext, I: FixedPoint, J: FixedPoint) -> FactoredClass:
    """Top non-vanishing class of ``K_{c,c}`` at ``(I, J)``.

    Equal energies use the full Euler class (the tangent class on the diagonal,
    zero elsewhere). Different energies drop the one structurally zero factor
    when a single color changes shape, and give zero when several do.
    """
    ctx.check(I, J)
    if I.charges != J.charges:
        raise ValueError(f"charges differ: {I.charges} vs {J.charges}")
    if I.energy == J.energy:
        return k_euler(ctx, I, J)
    if sum(1 for a, b in zip(I.shapes, J.shapes) if a != b) > 1:
        return FactoredClass.zero(ctx.r)
    skip = heisenberg_removed_cell(I, J)
    side, l, cell = skip
    # equal charges, so the diagonal-color weight is just -/+ the relative hook
    if side == "I":
        dropped = relative_hook(I.shape(l), J.shape(l), cell)
    else:
        dropped = relative_hook(J.shape(l), I.shape(l), cell)
    if dropped != 0:
        raise ArithmeticError(f"expected a zero factor at {skip} for {I} -> {J}")
    return FactoredClass.product(ctx.r, k_euler_factors(I, J, skip))


def gamma(ctx: GeometryContext, l: int, I: FixedPoint, J: FixedPoint) -> FactoredClass:
    """``eps`` when color ``l`` is the first color whose energy changes, else 0."""
    ctx.check(I, J)
    for a in range(1, l):
        if I.shape(a).size != J.shape(a).size:
            return FactoredClass.zero(ctx.r)
    if I.shape(l).size == J.shape(l).size:
        return FactoredClass.zero(ctx.r)
    return FactoredClass.product(ctx.r, [eps_form(ctx.r)])


def d_class(ctx: GeometryContext, I: FixedPoint, J: FixedPoint) -> FactoredClass:
    """Localization denominator ``e(T_I^-) e(T_J^+)``."""
    return euler_tangent(ctx, I, "minus") * euler_tangent(ctx, J, "plus")


def _ratio(num: FactoredClass, den: FactoredClass, what: str) -> Fraction:
    q = exact_ratio(num, den)
    if q is None:
        raise ArithmeticError(f"{what}: structure constant is not a scalar")
    return q


def clifford_structure_constant(ctx: GeometryContext, I: FixedPoint, J: FixedPoint,
                                l: int, direction: str) -> Fraction:
    f = c_tnv_clifford(ctx, I, J, l, direction)
    if f.is_zero():
        return Fraction(0)
    return _ratio(f, d_class(ctx, I, J), f"Clifford {I} -> {J}")


def heisenberg_structure_constant(ctx: GeometryContext, I: FixedPoint, J: FixedPoint,
                                  l: int, n: int) -> Fraction:
    """Matrix entry ``<P^l(n)[I], [J]>``; requires ``|J| = |I| - n``."""
    ctx.check(I, J)
    if I.charges != J.charges:
        raise ValueError(f"charges differ: {I.charges} vs {J.charges}")
    if J.energy != I.energy - n:
        raise ValueError(f"P(n) with n={n} maps energy {I.energy} to {I.energy - n}, not {J.energy}")
    if n == 0:
        return Fraction(I.charge(l)) if I == J else Fraction(0)
    g = gamma(ctx, l, I, J)
    if g.is_zero():
        return Fraction(0)
    g = g * c_tnv_heisenberg(ctx, I, J)
    if g.is_zero():
        return Fraction(0)
    value = _ratio(g, d_class(ctx, I, J), f"Heisenberg {I} -> {J}")
    return value if n < 0 else -value


def structure_constant(ctx: GeometryContext, op: Op, I: FixedPoint, J: FixedPoint) -> Fraction:
    if op.kind == "Psi":
        return clifford_structure_constant(ctx, I, J, op.color, "raise")
    if op.kind == "PsiStar":
        return clifford_structure_constant(ctx, I, J, op.color, "lower")
    if op.kind == "P":
        return heisenberg_structure_constant(ctx, I, J, op.color, op.n)
    raise ValueError(f"{op} has no structure-constant description")


def build_block(ctx: GeometryContext, op: Op, source: Block) -> BlockMatrix:
    """Geometric matrix of ``op`` from ``source`` to its inferred target block."""
    charges, k = tuple(source[0]), source[1]
    if len(charges) != ctx.r:
        raise ValueError(f"source has {len(charges)} charges, context has rank {ctx.r}")
    if not ctx.window.contains((charges, k)):
        raise WindowError(f"source block {charges};{k} lies outside the window")
    key = ("block", op, charges, k)
    hit = ctx._cache.get(key)
    if hit is not None:
        return hit
    target = op.target((charges, k))
    src = block_basis((charges, k))
    tgt = block_basis(target)
    if op.kind in ("Q", "Qinv"):
        index = {p: i for i, p in enumerate(tgt)}
        step = 1 if op.kind == "Q" else -1
        entries = {}
        for col, p in enumerate(src):
            q = p.replace(op.color, p.charge(op.color) + step, p.shape(op.color))
            entries[(index[q], col)] = Fraction(1)
        out = BlockMatrix(src, tgt, entries)
    else:
        entries = {}
        for col, I in enumerate(src):
            for row, J in enumerate(tgt):
                v = structure_constant(ctx, op, I, J)
                if v:
                    entries[(row, col)] = v
        out = BlockMatrix(src, tgt, entries)
    ctx._cache[key] = out
    return out


def n_scaled_block(ctx: GeometryContext, l: int, source: Block, target: Block) -> BlockMatrix:
    """Block of ``N^l c_tnv(B)`` between two equal-charge blocks.

    Off the diagonal the entries are ``(n2 - n1) * gamma^l c_tnv / d``; on the
    diagonal they are ``c^l c_tnv / d``.
    """
    (c1, n1), (c2, n2) = source, target
    if tuple(c1) != tuple(c2):
        raise ValueError("N^l c_tnv(B) is only defined between equal charge vectors")
    for b in (source, target):
        if not ctx.window.contains((tuple(b[0]), b[1])):
            raise WindowError(f"block {b} lies outside the window")
    src, tgt = block_basis(source), block_basis(target)
    entries = {}
    for col, I in enumerate(src):
        for row, J in enumerate(tgt):
            if n1 == n2:
                cls = c_tnv_heisenberg(ctx, I, J) * I.charge(l)
            else:
                cls = gamma(ctx, l, I, J) * c_tnv_heisenberg(ctx, I, J) * (n2 - n1)
            if not cls.is_zero():
                entries[(row, col)] = _ratio(cls, d_class(ctx, I, J), f"N c_tnv(B) {I} -> {J}")
    return BlockMatrix(src, tgt, entries)
