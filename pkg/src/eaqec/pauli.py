"""Exact Pauli group arithmetic on bitmask supports.

An operator is ``i**phase * X[x] * Z[z]`` where ``X[x]`` is the product of
Pauli X over the vertices in ``x`` (and likewise for Z).  A qubit in both
supports carries ``XZ = -iY``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .gf2 import MAX_VERTICES, subsets_by_weight

LETTERS = "XYZ"
_SIGNS = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True, order=True)
class Pauli:
    nqubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.nqubits <= MAX_VERTICES:
            raise ValueError(f"qubit count {self.nqubits} outside 0..{MAX_VERTICES}")
        if self.x < 0 or self.z < 0 or (self.x | self.z) >> self.nqubits:
            raise ValueError("support exceeds the qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, nqubits: int) -> Pauli:
        return cls(nqubits)

    @classmethod
    def single(cls, nqubits: int, qubit: int, letter: str) -> Pauli:
        bit = 1 << qubit
        if letter == "X":
            return cls(nqubits, bit, 0)
        if letter == "Z":
            return cls(nqubits, 0, bit)
        if letter == "Y":
            return cls(nqubits, bit, bit, 1)
        raise ValueError(f"unknown Pauli letter {letter!r}")

    @classmethod
    def from_string(cls, text: str) -> Pauli:
        """Parse ``[+|-|+i|-i]`` followed by letters over ``IXYZ``, qubit 0 first."""
        sign = 0
        body = text.strip()
        for prefix, value in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if body.startswith(prefix):
                sign, body = value, body[len(prefix):]
                break
        x = z = 0
        ny = 0
        for q, ch in enumerate(body):
            if ch in "XY":
                x |= 1 << q
            if ch in "ZY":
                z |= 1 << q
            if ch == "Y":
                ny += 1
            elif ch not in "IXZ":
                raise ValueError(f"bad character {ch!r} in Pauli string {text!r}")
        return cls(len(body), x, z, sign + ny)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def support(self) -> int:
        return self.x | self.z

    def letters(self) -> str:
        out = []
        for q in range(self.nqubits):
            xb, zb = self.x >> q & 1, self.z >> q & 1
            out.append("IZXY"[2 * xb + zb])
        return "".join(out)

    def sign(self) -> int:
        """Phase of the operator relative to the unsigned tensor product of letters, as i**sign."""
        return (self.phase - (self.x & self.z).bit_count()) % 4

    def to_string(self) -> str:
        return _SIGNS[self.sign()] + self.letters()

    def __str__(self) -> str:
        return self.to_string()

    def _check(self, other: Pauli) -> None:
        if self.nqubits != other.nqubits:
            raise ValueError(f"Pauli sizes differ: {self.nqubits} vs {other.nqubits}")

    def __mul__(self, other: Pauli) -> Pauli:
        self._check(other)
        swap = 2 * (self.z & other.x).bit_count()
        return Pauli(self.nqubits, self.x ^ other.x, self.z ^ other.z, self.phase + other.phase + swap)

    def inverse(self) -> Pauli:
        # (i^a X^x Z^z)^-1 = i^-a Z^z X^x = i^-a (-1)^{|x&z|} X^x Z^z
        return Pauli(self.nqubits, self.x, self.z, -self.phase + 2 * (self.x & self.z).bit_count())

    def commutes(self, other: Pauli) -> bool:
        self._check(other)
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2 == 0

    def symplectic(self) -> int:
        """The (x|z) vector packed as ``x | z << nqubits``."""
        return self.x | self.z << self.nqubits

    def equal_up_to_phase(self, other: Pauli) -> bool:
        return self.nqubits == other.nqubits and self.x == other.x and self.z == other.z


def pauli_multiply(a: Pauli, b: Pauli) -> Pauli:
    return a * b


def commutes(a: Pauli, b: Pauli) -> bool:
    return a.commutes(b)


def errors_on(nqubits: int, qubits: int, weight: int) -> list[Pauli]:
    """Every Pauli of exactly ``weight`` supported on ``qubits``, in canonical order.

    Canonical order: supports in numeric order, then letters X<Y<Z with the
    lowest qubit varying slowest.
    """
    out = []
    for supp in subsets_by_weight(qubits, weight):
        qs = [q for q in range(nqubits) if supp >> q & 1]
        for word in product(LETTERS, repeat=weight):
            p = Pauli.identity(nqubits)
            for q, letter in zip(qs, word):
                p = p * Pauli.single(nqubits, q, letter)
            out.append(p)
    return out


def errors_below(nqubits: int, qubits: int, max_weight: int, start: int = 1) -> list[Pauli]:
    """Errors on ``qubits`` with ``start <= weight <= max_weight``, weight ascending."""
    out = []
    for w in range(start, max_weight + 1):
        out += errors_on(nqubits, qubits, w)
    return out


def iter_error_masks(qubits: int, max_weight: int, start: int = 1):
    """Yield ``(weight, x, z, word)`` for errors on ``qubits`` in canonical order.

    ``word`` is the tuple of letter indices (0=X, 1=Y, 2=Z) over the support in
    ascending qubit order; it breaks ties between errors on the same support.
    """
    for w in range(start, max_weight + 1):
        for supp in subsets_by_weight(qubits, w):
            qs = [1 << q for q in range(supp.bit_length()) if supp >> q & 1]
            for word in product(range(3), repeat=w):
                x = z = 0
                for bit, letter in zip(qs, word):
                    if letter < 2:
                        x |= bit
                    if letter > 0:
                        z |= bit
                yield w, x, z, word


def error_mask_arrays(qubits: int, max_weight: int, start: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """The ``(x, z)`` masks of :func:`iter_error_masks` as int64 arrays, same order."""
    xs, zs = [np.zeros(0, dtype=np.int64)], [np.zeros(0, dtype=np.int64)]
    for w in range(start, max_weight + 1):
        supports = subsets_by_weight(qubits, w)
        if not supports:
            continue
        bits = np.array([[1 << q for q in range(s.bit_length()) if s >> q & 1] for s in supports], dtype=np.int64)
        words = np.array(list(product(range(3), repeat=w)), dtype=np.int64).reshape(-1, w)
        # (support, word, position); bits are distinct so the sum is an OR
        xs.append(((words < 2)[None] * bits[:, None, :]).sum(-1).ravel())
        zs.append(((words > 0)[None] * bits[:, None, :]).sum(-1).ravel())
    return np.concatenate(xs), np.concatenate(zs)


def error_from_masks(nqubits: int, x: int, z: int) -> Pauli:
    """The Hermitian Pauli with the given supports (Y rather than XZ on overlaps)."""
    return Pauli(nqubits, x, z, (x & z).bit_count())


def canonical_key(x: int, z: int) -> tuple:
    """Sort key reproducing the canonical error enumeration order."""
    supp = x | z
    word = []
    for q in range(supp.bit_length()):
        if supp >> q & 1:
            word.append(0 if not z >> q & 1 else (1 if x >> q & 1 else 2))
    return supp.bit_count(), supp, tuple(word)
