"""Sparse exact matrices between graded basis blocks, and operator atoms."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .fock import FixedPoint, fixed_points
from .polynomial import format_rational

Block = tuple[tuple[int, ...], int]  # (charge vector, energy)


@dataclass(frozen=True)
class Op:
    """One operator atom: ``Psi[l](n)``, ``PsiStar[l](n)``, ``P[l](n)``, ``Q[l]`` or ``Qinv[l]``."""

    kind: str
    color: int
    n: int = 0

    KINDS = ("Psi", "PsiStar", "P", "Q", "Qinv")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.color < 1:
            raise ValueError("colors are 1-based")

    def target(self, source: Block) -> Block:
        """Block reached from ``source``; the energy may come out negative (empty block)."""
        charges, k = source
        l = self.color
        if l > len(charges):
            raise ValueError(f"color {l} out of range for rank {len(charges)}")
        c = charges[l - 1]
        shift = list(charges)
        if self.kind == "Psi":
            shift[l - 1] += 1
            return tuple(shift), k + self.n - c - 1
        if self.kind == "PsiStar":
            shift[l - 1] -= 1
            return tuple(shift), k - self.n + c
        if self.kind == "P":
            return tuple(charges), k - self.n
        if self.kind == "Q":
            shift[l - 1] += 1
        else:
            shift[l - 1] -= 1
        return tuple(shift), k

    def __str__(self):
        if self.kind in ("Q", "Qinv"):
            return f"{self.kind}[{self.color}]"
        return f"{self.kind}[{self.color}]({self.n})"

    @classmethod
    def parse(cls, text: str) -> Op:
        """Parse ``"Psi[1](-2)"``, ``"PsiStar[2](0)"``, ``"P[1](3)"``, ``"Q[1]"`` or ``"Qinv[1]"``."""
        pos = 0

        def fail(what):
            raise ValueError(f"cannot parse operator {text!r}: expected {what} at position {pos}")

        def take(pattern, what):
            nonlocal pos
            m = re.compile(pattern).match(text, pos)
            if m is None:
                fail(what)
            pos = m.end()
            return m.group(0)

        take(r"\s*", "")
        kind = take(r"PsiStar|Psi|Qinv|Q|P", "one of Psi, PsiStar, P, Q, Qinv")
        take(r"\[", "'['")
        color = int(take(r"\d+", "a color index"))
        take(r"\]", "']'")
        n = 0
        if kind not in ("Q", "Qinv"):
            take(r"\(", "'('")
            n = int(take(r"-?\d+", "an integer mode"))
            take(r"\)", "')'")
        take(r"\s*", "")
        if pos != len(text):
            fail("end of input")
        return cls(kind, color, n)


def parse_source(text: str) -> Block:
    """Parse ``"charges;energy"``, e.g. ``"0,1;3"``."""
    if text.count(";") != 1:
        raise ValueError(f"source must look like 'c1,...,cr;energy', got {text!r} "
                         f"(missing ';' at position {len(text)})")
    left, right = text.split(";")
    try:
        charges = tuple(int(x) for x in left.split(","))
    except ValueError:
        raise ValueError(f"bad charge list at position 0: {left!r}") from None
    try:
        energy = int(right)
    except ValueError:
        raise ValueError(f"bad energy at position {len(left) + 1}: {right!r}") from None
    return charges, energy


def block_basis(block: Block) -> tuple[FixedPoint, ...]:
    charges, k = block
    return tuple(fixed_points(tuple(charges), k)) if k >= 0 else ()


@dataclass
class BlockMatrix:
    """Entry ``(row, col)`` is the coefficient of ``target[row]`` in ``Op(source[col])``."""

    source: tuple[FixedPoint, ...]
    target: tuple[FixedPoint, ...]
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.source = tuple(self.source)
        self.target = tuple(self.target)
        self.entries = {k: Fraction(v) for k, v in self.entries.items() if v != 0}

    @classmethod
    def zero(cls, source, target) -> BlockMatrix:
        return cls(source, target, {})

    @classmethod
    def identity(cls, basis) -> BlockMatrix:
        basis = tuple(basis)
        return cls(basis, basis, {(i, i): Fraction(1) for i in range(len(basis))})

    @classmethod
    def from_images(cls, source, target, images) -> BlockMatrix:
        """Build from ``images[col] = {FixedPoint: coef}``; images must land in ``target``."""
        index = {p: i for i, p in enumerate(target)}
        entries = {}
        for col, image in enumerate(images):
            for p, v in image.items():
                if v == 0:
                    continue
                if p not in index:
                    raise ValueError(f"image {p} lies outside the target block")
                entries[(index[p], col)] = Fraction(v)
        return cls(source, target, entries)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target), len(self.source)

    def is_empty(self) -> bool:
        return not self.source or not self.target

    def __getitem__(self, key) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def entry(self, target: FixedPoint, source: FixedPoint) -> Fraction:
        return self[(self.target.index(target), self.source.index(source))]

    def column(self, source: FixedPoint) -> dict[FixedPoint, Fraction]:
        col = self.source.index(source)
        return {self.target[i]: v for (i, j), v in self.entries.items() if j == col}

    def _same_shape(self, other: BlockMatrix):
        if self.source != other.source or self.target != other.target:
            raise ValueError("block bases differ")

    def __add__(self, other: BlockMatrix) -> BlockMatrix:
        self._same_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return BlockMatrix(self.source, self.target, out)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> BlockMatrix:
        c = Fraction(c)
        return BlockMatrix(self.source, self.target, {k: v * c for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: BlockMatrix) -> BlockMatrix:
        """Composition ``self o other`` (apply ``other`` first)."""
        if other.target != self.source:
            raise ValueError("inner bases do not match")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in self.entries.items():
            by_row.setdefault(j, []).append((i, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (k, col), w in other.entries.items():
            for row, v in by_row.get(k, ()):
                out[(row, col)] = out.get((row, col), 0) + v * w
        return BlockMatrix(other.source, self.target, out)

    def transpose(self) -> BlockMatrix:
        return BlockMatrix(self.target, self.source, {(j, i): v for (i, j), v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.entries == other.entries)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.entries.values())

    def diff(self, other: BlockMatrix) -> list[tuple[str, str, str, str]]:
        """Mismatched entries as ``(target, source, mine, theirs)`` strings."""
        self._same_shape(other)
        out = []
        for key in sorted(set(self.entries) | set(other.entries)):
            a, b = self[key], other[key]
            if a != b:
                out.append((str(self.target[key[0]]), str(self.source[key[1]]),
                            format_rational(a), format_rational(b)))
        return out

    def to_dict(self) -> dict:
        return {
            "source": [str(p) for p in self.source],
            "target": [str(p) for p in self.target],
            "entries": [
                {"row": i, "col": j, "coef": format_rational(v)}
                for (i, j), v in sorted(self.entries.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> BlockMatrix:
        return cls(
            tuple(FixedPoint.parse(s) for s in data["source"]),
            tuple(FixedPoint.parse(s) for s in data["target"]),
            {(e["row"], e["col"]): Fraction(e["coef"]) for e in data["entries"]},
        )

    def to_text(self) -> str:
        if self.is_empty():
            return f"empty block ({len(self.target)}x{len(self.source)})"
        cells = [[format_rational(self[(i, j)]) for j in range(len(self.source))]
                 for i in range(len(self.target))]
        width = max(len(c) for row in cells for c in row)
        label_w = max(len(str(p)) for p in self.target)
        lines = ["source: " + "  ".join(str(p) for p in self.source)]
        for p, row in zip(self.target, cells):
            lines.append(f"{str(p):>{label_w}} [ " + " ".join(c.rjust(width) for c in row) + " ]")
        return "\n".join(lines)
