"""Geometric versus algebraic operators, and the boson-fermion correspondence.

Every check here works one finite block at a time. A block is a pair
``(charge vector, energy)`` and both presentations of an operator are exact
rational matrices between complete fixed-point bases, so two operators agree
on a block exactly when the matrices are equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Iterable, Iterator

from .blocks import Block, BlockMatrix, Op, block_basis
from .fock import FermionVector, FixedPoint, p_basis_action, psi, psi_star
from .geometry import (
    GeometryContext,
    TruncationWindow,
    WindowError,
    build_block,
    c_tnv_clifford,
    c_tnv_heisenberg,
    euler_tangent,
    gamma,
    k_euler_factors,
    n_scaled_block,
)
from .polynomial import ExpandedPoly, format_rational


@dataclass
class VerificationReport:
    suite: str
    window: TruncationWindow
    cases: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, case: str, ok: bool, expected="", got=""):
        self.cases += 1
        if not ok:
            self.failures.append({"case": case, "expected": expected, "got": got})

    def merge(self, other: VerificationReport) -> VerificationReport:
        self.cases += other.cases
        self.failures.extend(other.failures)
        return self

    def to_dict(self) -> dict:
        return {"suite": self.suite, "window": self.window.to_dict(), "cases": self.cases,
                "failures": self.failures}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.suite}: {self.cases} cases, {len(self.failures)} failures"]
        for f in self.failures[:20]:
            lines.append(f"  {f['case']}: expected {f['expected']}, got {f['got']}")
        if len(self.failures) > 20:
            lines.append(f"  ... {len(self.failures) - 20} more")
        return "\n".join(lines)


def _block_str(block: Block) -> str:
    charges, k = block
    return ",".join(str(c) for c in charges) + f";{k}"


# -- algebraic side -----------------------------------------------------------------


def q_shift(l: int, v: FermionVector, inverse: bool = False) -> FermionVector:
    """``Q_l`` (or its inverse): move color ``l`` up one charge, keeping every shape."""
    step = -1 if inverse else 1
    return v.map_basis(lambda p: [(1, p.replace(l, p.charge(l) + step, p.shape(l)))])


def algebraic_image(op: Op, p: FixedPoint) -> dict[FixedPoint, Fraction]:
    if op.kind in ("Psi", "PsiStar"):
        res = (psi if op.kind == "Psi" else psi_star)(op.color, op.n, p)
        return {} if res is None else {res[1]: Fraction(res[0])}
    if op.kind == "P":
        out: dict[FixedPoint, Fraction] = {}
        for coef, q in p_basis_action(op.color, op.n, p):
            out[q] = out.get(q, 0) + coef
        return out
    (image,) = q_shift(op.color, FermionVector.basis(p), op.kind == "Qinv").terms
    return {image: Fraction(1)}


def algebraic_block(op: Op, source: Block, window: TruncationWindow | None = None) -> BlockMatrix:
    """Matrix of the fermionic or bosonic operator in the fixed-point basis."""
    source = (tuple(source[0]), source[1])
    if window is not None and not window.contains(source):
        raise WindowError(f"source block {_block_str(source)} lies outside the window")
    src = block_basis(source)
    tgt = block_basis(op.target(source))
    return BlockMatrix.from_images(src, tgt, [algebraic_image(op, p) for p in src])


# -- operator words -----------------------------------------------------------------


@dataclass(frozen=True)
class OpWord:
    """A product of atoms read right to left, times a rational prefactor."""

    atoms: tuple[Op, ...]
    prefactor: Fraction = Fraction(1)

    def visited(self, source: Block) -> list[Block]:
        """Blocks the atoms act on, in application order, then the final target."""
        out = [source]
        for op in reversed(self.atoms):
            out.append(op.target(out[-1]))
        return out

    def target(self, source: Block) -> Block:
        return self.visited(source)[-1]

    def evaluate(self, ctx: GeometryContext, source: Block) -> BlockMatrix:
        """Compose the geometric blocks; an empty intermediate block gives zero."""
        source = (tuple(source[0]), source[1])
        blocks = self.visited(source)
        final = block_basis(blocks[-1])
        if any(b[1] < 0 for b in blocks):
            return BlockMatrix.zero(block_basis(source), final)
        for b in blocks[:-1]:
            if not ctx.window.contains(b):
                raise WindowError(f"window insufficient: {self} needs block {_block_str(b)}")
        out = BlockMatrix.identity(block_basis(source))
        for op, b in zip(reversed(self.atoms), blocks):
            out = build_block(ctx, op, b) @ out
        return out * self.prefactor

    def __str__(self):
        body = " ".join(str(a) for a in self.atoms) or "id"
        return body if self.prefactor == 1 else f"{format_rational(self.prefactor)} * {body}"


def sum_words(ctx: GeometryContext, words: Iterable[OpWord], source: Block,
              target: Block) -> BlockMatrix:
    out = BlockMatrix.zero(block_basis(source), block_basis(target))
    for w in words:
        if w.target(source) != (tuple(target[0]), target[1]):
            raise ValueError(f"{w} does not map {_block_str(source)} to {_block_str(target)}")
        out = out + w.evaluate(ctx, source)
    return out


# -- main isomorphism ---------------------------------------------------------------


def _atom_range(kind: str, charges, k: int, l: int, max_energy: int) -> range:
    """Mode numbers whose target block is nonempty and inside the energy bound."""
    c = charges[l - 1]
    if kind == "Psi":
        return range(c + 1 - k, c + 2 - k + max_energy)
    if kind == "PsiStar":
        return range(k + c - max_energy, k + c + 1)
    return range(k - max_energy, k + 1)


def window_atoms(window: TruncationWindow, kinds: Iterable[str]) -> Iterator[tuple[Op, Block]]:
    for block in window.blocks():
        charges, k = block
        for kind in kinds:
            for l in range(1, window.rank + 1):
                for n in _atom_range(kind, charges, k, l, window.max_energy):
                    yield Op(kind, l, n), block


def check_geometric_equals_algebraic(ctx: GeometryContext,
                                     kinds=("Psi", "PsiStar", "P")) -> VerificationReport:
    report = VerificationReport("geometric-equals-algebraic", ctx.window)
    for op, block in window_atoms(ctx.window, kinds):
        geo = build_block(ctx, op, block)
        alg = algebraic_block(op, block)
        bad = geo.diff(alg)
        report.record(f"{op} on {_block_str(block)}", not bad,
                      expected="algebraic block", got=json.dumps(bad[:5]))
    return report


# -- relations and adjointness ------------------------------------------------------


def _bracket(ctx, a: Op, b: Op, source: Block, sign: int) -> BlockMatrix | None:
    """``ab + sign * ba`` on ``source``, or ``None`` if a needed block leaves the window."""
    w1, w2 = OpWord((a, b)), OpWord((b, a), Fraction(sign))
    target = w1.target(source)
    if w2.target(source) != target:
        raise ValueError(f"{a} and {b} do not commute in grading")
    for w in (w1, w2):
        if not all(ctx.window.contains(blk) for blk in w.visited(source) if blk[1] >= 0):
            return None
    return sum_words(ctx, (w1, w2), source, target)


def _expect_scalar(report, case, got: BlockMatrix, scalar: Fraction):
    if got.source == got.target:
        want = BlockMatrix.identity(got.source) * scalar
    elif scalar == 0:
        want = BlockMatrix.zero(got.source, got.target)
    else:
        report.record(case, False, format_rational(scalar), "block shift")
        return
    bad = got.diff(want)
    report.record(case, not bad, f"{format_rational(scalar)} * id", json.dumps(bad[:5]))


def check_relations(ctx: GeometryContext, bound: int = 3,
                    families=("clifford", "heisenberg")) -> VerificationReport:
    """Clifford and oscillator relations on every block whose orbit stays in the window."""
    report = VerificationReport("relations", ctx.window)
    r = ctx.r
    modes = range(-bound, bound + 1)
    colors = range(1, r + 1)
    for source in ctx.window.blocks():
        if "clifford" in families:
            for l, k, n, m in product(colors, colors, modes, modes):
                cases = [
                    (Op("Psi", l, n), Op("PsiStar", k, m), Fraction(int(n == m and l == k))),
                    (Op("Psi", l, n), Op("Psi", k, m), Fraction(0)),
                    (Op("PsiStar", l, n), Op("PsiStar", k, m), Fraction(0)),
                ]
                # same color: anticommutator; different colors commute
                sign = 1 if l == k else -1
                for a, b, want in cases:
                    got = _bracket(ctx, a, b, source, sign)
                    if got is not None:
                        name = f"{{{a}, {b}}}" if sign == 1 else f"[{a}, {b}]"
                        _expect_scalar(report, f"{name} on {_block_str(source)}", got, want)
        if "heisenberg" in families:
            for k, l, m, n in product(colors, colors, modes, modes):
                want = Fraction(1, m) if (m == -n and k == l and m != 0) else Fraction(0)
                a, b = Op("P", k, m), Op("P", l, n)
                got = _bracket(ctx, a, b, source, -1)
                if got is not None:
                    _expect_scalar(report, f"[{a}, {b}] on {_block_str(source)}", got, want)
    return report


def check_adjointness(ctx: GeometryContext, kinds=("Psi", "P")) -> VerificationReport:
    """``Psi(n)*`` against the transpose of ``Psi(n)``, and ``P(-n)`` against ``P(n)``."""
    report = VerificationReport("adjointness", ctx.window)
    for op, block in window_atoms(ctx.window, kinds):
        target = op.target(block)
        if not ctx.window.contains(target):
            continue
        dual = Op("PsiStar", op.color, op.n) if op.kind == "Psi" else Op("P", op.color, -op.n)
        fwd = build_block(ctx, op, block)
        back = build_block(ctx, dual, target)
        bad = back.diff(fwd.transpose())
        report.record(f"{dual} vs {op}^T on {_block_str(block)}", not bad,
                      "transpose", json.dumps(bad[:5]))
    return report


# -- localization facts -------------------------------------------------------------


def _raw_expand(r: int, forms) -> ExpandedPoly:
    out = ExpandedPoly.constant(r, 1)
    for f in forms:
        out = out * ExpandedPoly.from_linear(f)
        if out.is_zero():
            break
    return out


def _points_by_charge(window: TruncationWindow, charges) -> list[FixedPoint]:
    return [p for k in range(window.max_energy + 1) for p in block_basis((charges, k))]


def check_localization(ctx: GeometryContext) -> VerificationReport:
    """Equal-charge K-classes vanish off the energy diagonal and restrict to ``e(T)`` on it.

    Expands the raw product of weights, so this does not lean on the zero
    normalization inside :class:`FactoredClass`.
    """
    report = VerificationReport("localization", ctx.window)
    r = ctx.r
    for charges in ctx.window.charge_vectors():
        pts = _points_by_charge(ctx.window, charges)
        for I in pts:
            for J in pts:
                if I.energy != J.energy:
                    val = _raw_expand(r, k_euler_factors(I, J))
                    report.record(f"k_euler({I}, {J})", val.is_zero(), "0", val.to_text())
            diag = _raw_expand(r, k_euler_factors(I, I))
            tan = euler_tangent(ctx, I, "full").expand()
            report.record(f"k_euler({I}, {I})", diag == tan, tan.to_text(), diag.to_text())
    return report


def check_nonvanishing(ctx: GeometryContext, bound: int = 3) -> VerificationReport:
    """Each top class has a nonzero fixed-point value somewhere in every block pair."""
    report = VerificationReport("nonvanishing", ctx.window)
    r = ctx.r
    energies = range(min(bound, ctx.window.max_energy) + 1)
    for charges in ctx.window.charge_vectors():
        for l in range(1, r + 1):
            for n1, n2 in product(energies, energies):
                src = block_basis((charges, n1))
                for step, direction in ((1, "raise"), (-1, "lower")):
                    shifted = list(charges)
                    shifted[l - 1] += step
                    tgt = block_basis((tuple(shifted), n2))
                    found = any(not c_tnv_clifford(ctx, I, J, l, direction).is_zero()
                                for I in src for J in tgt)
                    report.record(f"clifford {direction} l={l} c={charges} n=({n1},{n2})",
                                  found, "witness", "none")
                tgt = block_basis((charges, n2))
                if n1 == n2:
                    found = any(not c_tnv_heisenberg(ctx, I, I).is_zero() for I in src)
                else:
                    found = any(not (gamma(ctx, l, I, J) * c_tnv_heisenberg(ctx, I, J)).is_zero()
                                for I in src for J in tgt)
                report.record(f"heisenberg l={l} c={charges} n=({n1},{n2})",
                              found, "witness", "none")
    return report


# -- boson-fermion correspondence ---------------------------------------------------


def normal_ordered_words(l: int, source: Block, target: Block) -> list[OpWord]:
    """Summands of ``sum_j :Psi^l(j + m) Psi^l(j)^*:`` from ``source`` to ``target``.

    ``m`` is the energy shift. For ``j > 0`` the term is ``Psi(k) Psi(j)^*``; for
    ``j <= 0`` it is ``-Psi(j)^* Psi(k)``. Only the finitely many ``j`` whose
    intermediate block has nonnegative energy are kept.
    """
    (charges, n1), (charges2, n2) = source, target
    if tuple(charges) != tuple(charges2):
        raise ValueError("normal-ordered bilinears preserve the charge vector")
    c = charges[l - 1]
    m = n2 - n1
    words = []
    for j in range(1, n1 + c + 1):
        words.append(OpWord((Op("Psi", l, j + m), Op("PsiStar", l, j))))
    for j in range(c + 1 - n2, 1):
        words.append(OpWord((Op("PsiStar", l, j), Op("Psi", l, j + m)), Fraction(-1)))
    return words


def normal_ordered_ff_block(ctx: GeometryContext, l: int, source: Block,
                            target: Block) -> BlockMatrix:
    source = (tuple(source[0]), source[1])
    target = (tuple(target[0]), target[1])
    for b in (source, target):
        if b[1] >= 0 and not ctx.window.contains(b):
            raise WindowError(f"window insufficient: block {_block_str(b)} lies outside")
    return sum_words(ctx, normal_ordered_words(l, source, target), source, target)


def ff_margin(window: TruncationWindow) -> TruncationWindow:
    """A window holding every intermediate block the normal-ordered sums visit."""
    reach = max(abs(c) for c in window.charge_lo + window.charge_hi)
    return window.widened(energy=reach + 1, charge=1)


def check_bosonization(ctx: GeometryContext, max_energy: int | None = None) -> VerificationReport:
    """``N^l c_tnv(B)`` against the normal-ordered fermion bilinear, block by block."""
    base = ctx.window
    top = base.max_energy if max_energy is None else min(max_energy, base.max_energy)
    wide = ctx.with_window(ff_margin(base))
    report = VerificationReport("bosonization", base)
    for charges in base.charge_vectors():
        for l in range(1, ctx.r + 1):
            for n1, n2 in product(range(top + 1), repeat=2):
                src, tgt = (charges, n1), (charges, n2)
                lhs = n_scaled_block(ctx, l, src, tgt)
                rhs = normal_ordered_ff_block(wide, l, src, tgt)
                bad = lhs.diff(rhs)
                report.record(f"N^{l} c_tnv(B) {_block_str(src)} -> {n2}", not bad,
                              "normal-ordered sum", json.dumps(bad[:5]))
    return report


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def exp_words(l: int, total: int, raising: bool, sign: int) -> list[OpWord]:
    """Degree-``total`` part of ``exp(sign * sum_{n>0} P^l(-/+n))`` as words.

    The summands commute, so ``X^k / k!`` expands over ordered compositions.
    """
    words = []
    for comp in _compositions(total):
        k = len(comp)
        atoms = tuple(Op("P", l, -n if raising else n) for n in comp)
        words.append(OpWord(atoms, Fraction(sign ** k, factorial(k))))
    return words


def fermionization_rhs(ctx: GeometryContext, l: int, source: Block, target: Block,
                       dual: bool = False) -> BlockMatrix:
    """``Q_l exp(B_-) exp(B_+)`` (or the dual with ``Q_l^{-1}`` and flipped signs).

    Only the homogeneous pieces lowering by ``a`` and then raising by
    ``b = n2 - n1 + a`` reach the target block, and ``a`` is at most ``n1``.
    """
    (charges, n1), (_, n2) = source, target
    source = (tuple(charges), n1)
    q = Op("Qinv" if dual else "Q", l)
    up_sign, down_sign = (-1, 1) if dual else (1, -1)
    words = []
    for a in range(n1 + 1):
        b = n2 - n1 + a
        if b < 0:
            continue
        for up in exp_words(l, b, True, up_sign):
            for down in exp_words(l, a, False, down_sign):
                words.append(OpWord((q,) + up.atoms + down.atoms, up.prefactor * down.prefactor))
    return sum_words(ctx, words, source, (tuple(target[0]), n2))


def fermion_mode(l: int, source: Block, target: Block, dual: bool = False) -> Op:
    """The single mode of ``sum_n Psi^l(n)`` (or ``Psi^l(n)^*``) joining two blocks."""
    (charges, n1), (_, n2) = source, target
    c = charges[l - 1]
    if dual:
        return Op("PsiStar", l, n1 - n2 + c)
    return Op("Psi", l, n2 - n1 + c + 1)


def check_fermionization(ctx: GeometryContext, max_energy: int | None = None) -> VerificationReport:
    base = ctx.window
    top = base.max_energy if max_energy is None else min(max_energy, base.max_energy)
    report = VerificationReport("fermionization", base)
    for charges in base.charge_vectors():
        for l in range(1, ctx.r + 1):
            for dual in (False, True):
                shifted = list(charges)
                shifted[l - 1] += -1 if dual else 1
                for n1, n2 in product(range(top + 1), repeat=2):
                    src, tgt = (charges, n1), (tuple(shifted), n2)
                    lhs = build_block(ctx, fermion_mode(l, src, tgt, dual), src)
                    rhs = fermionization_rhs(ctx, l, src, tgt, dual)
                    bad = lhs.diff(rhs)
                    name = "dual" if dual else "direct"
                    report.record(f"{name} l={l} {_block_str(src)} -> {_block_str(tgt)}",
                                  not bad, "exponential series", json.dumps(bad[:5]))
    return report


# -- integral form ------------------------------------------------------------------


def check_integrality(ctx: GeometryContext, max_energy: int | None = None) -> VerificationReport:
    """Clifford blocks, normal-ordered blocks and fermionization right sides are integral."""
    base = ctx.window
    top = base.max_energy if max_energy is None else min(max_energy, base.max_energy)
    report = VerificationReport("integrality", base)
    for op, block in window_atoms(base, ("Psi", "PsiStar")):
        m = build_block(ctx, op, block)
        ok = all(v in (1, -1) for v in m.entries.values())
        report.record(f"{op} on {_block_str(block)}", ok, "entries in {0,+1,-1}",
                      sorted({format_rational(v) for v in m.entries.values()}))
    wide = ctx.with_window(ff_margin(base))
    for charges in base.charge_vectors():
        for l in range(1, ctx.r + 1):
            for n1, n2 in product(range(top + 1), repeat=2):
                src, tgt = (charges, n1), (charges, n2)
                m = normal_ordered_ff_block(wide, l, src, tgt)
                report.record(f":FF*: l={l} {_block_str(src)} -> {n2}", m.is_integral(),
                              "integer entries", m.to_json())
                for dual in (False, True):
                    shifted = list(charges)
                    shifted[l - 1] += -1 if dual else 1
                    m = fermionization_rhs(ctx, l, src, (tuple(shifted), n2), dual)
                    report.record(f"exp series l={l} dual={dual} {_block_str(src)} -> {n2}",
                                  m.is_integral(), "integer entries", m.to_json())
    return report
