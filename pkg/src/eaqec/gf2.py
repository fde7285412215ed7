"""Vertex sets as integer bitmasks and dense GF(2) linear algebra over them.

A vertex set (or any GF(2) vector) is a Python ``int`` whose bit ``v`` is set
when vertex ``v`` belongs to the set.  Symmetric difference is ``^``.  Numeric
order of the integers is the canonical subset order used throughout the package.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

MAX_VERTICES = 64

VertexSet = int


def vset(members: Iterable[int]) -> VertexSet:
    """Build a bitmask from vertex indices."""
    mask = 0
    for v in members:
        if v < 0 or v >= MAX_VERTICES:
            raise ValueError(f"vertex {v} outside 0..{MAX_VERTICES - 1}")
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> list[int]:
    """Vertex indices of a bitmask in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def check_within(mask: VertexSet, size: int) -> None:
    if mask < 0 or mask >> size:
        raise ValueError(f"set {members(mask)} not within universe of size {size}")


def subsets_of(mask: VertexSet) -> Iterator[VertexSet]:
    """All subsets of ``mask`` in ascending numeric order, starting with 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def subsets_by_weight(mask: VertexSet, weight: int) -> list[VertexSet]:
    """Subsets of ``mask`` with exactly ``weight`` elements, in numeric order."""
    return sorted(vset(c) for c in combinations(members(mask), weight))


def to_string(mask: VertexSet) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


@dataclass(frozen=True)
class BinaryMatrix:
    """Rows of a GF(2) matrix, each row an int over ``ncols`` bits."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError(f"row {r:#x} exceeds {self.ncols} columns")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> BinaryMatrix:
        if not rows:
            raise ValueError("cannot infer column count from an empty row list")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("rows have different lengths")
        return cls(tuple(vset(j for j, b in enumerate(r) if b % 2) for r in rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def apply(self, v: int) -> int:
        """Matrix-vector product; bit i of the result is row i dotted with v."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def rank(self) -> int:
        return len(row_reduce(self.rows)[0])


def row_reduce(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.

    Returns ``(basis, pivots)`` where ``pivots[i]`` is the lowest set bit of
    ``basis[i]`` and no other basis row has that bit set.  Rows are ordered by
    pivot, so the result is a canonical form of the row space.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if r >> p & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for i, b in enumerate(basis):
            if b >> p & 1:
                basis[i] = b ^ r
        basis.append(r)
        pivots.append(p)
    order = sorted(range(len(basis)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank(rows: Iterable[int]) -> int:
    return len(row_reduce(rows)[0])


def nullspace_basis(m: BinaryMatrix) -> list[int]:
    """Basis of {v : m v = 0}; one vector per non-pivot column."""
    basis, pivots = row_reduce(m.rows)
    pivot_set = set(pivots)
    out = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for b, p in zip(basis, pivots):
            if b >> free & 1:
                v |= 1 << p
        out.append(v)
    return out


def reduce_against(v: int, basis: Sequence[int], pivots: Sequence[int]) -> int:
    """Remainder of ``v`` after eliminating with an echelon basis."""
    for b, p in zip(basis, pivots):
        if v >> p & 1:
            v ^= b
    return v


def in_span(v: int, basis: Sequence[int], width: int | None = None) -> bool:
    """True iff ``v`` is a GF(2) combination of ``basis``."""
    if width is not None:
        if v >> width or any(b >> width for b in basis):
            raise ValueError(f"vector wider than {width} bits")
    rref, pivots = row_reduce(basis)
    return reduce_against(v, rref, pivots) == 0


def span(generators: Sequence[int]) -> list[int]:
    """All elements of the GF(2) span, sorted numerically."""
    elems = [0]
    for g in row_reduce(generators)[0]:
        elems += [e ^ g for e in elems]
    return sorted(elems)


def combine(generators: Sequence[int], coeffs: Sequence[int]) -> int:
    """XOR of the generators selected by a 0/1 coefficient vector."""
    if len(coeffs) != len(generators):
        raise ValueError(f"{len(coeffs)} coefficients for {len(generators)} generators")
    out = 0
    for g, c in zip(generators, coeffs):
        if c % 2:
            out ^= g
    return out
