"""Distance verification (symplectic and state-vector), syndromes, degeneracy and Hamming bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .codesearch import CodingClique
from .gf2 import VertexSet, members, rank, reduce_against, row_reduce, subsets_of, to_string
from .graphstate import (
    ZERO_TOL,
    Graph,
    _basis,
    _check_feasible,
    apply_pauli,
    build_graph_state,
    index_mask,
)
from .pauli import LETTERS, Pauli, canonical_key, error_from_masks, error_mask_arrays, iter_error_masks


@dataclass
class VerificationReport:
    passed: bool
    distance_claimed: int
    oracle: str
    errors_checked: int = 0
    first_failure: dict | None = None
    degenerate_errors: list[Pauli] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "distance_claimed": self.distance_claimed,
            "oracle": self.oracle,
            "errors_checked": self.errors_checked,
            "first_failure": self.first_failure,
            "degenerate_errors": [p.letters() for p in self.degenerate_errors],
        }

    @classmethod
    def from_json(cls, data: dict) -> VerificationReport:
        return cls(
            passed=data["passed"],
            distance_claimed=data["distance_claimed"],
            oracle=data["oracle"],
            errors_checked=data.get("errors_checked", 0),
            first_failure=data.get("first_failure"),
            degenerate_errors=[Pauli.from_string(s) for s in data.get("degenerate_errors", [])],
        )

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{self.oracle}: {verdict} d={self.distance_claimed} errors={self.errors_checked}"
        line += f" degenerate={len(self.degenerate_errors)}"
        if self.first_failure:
            line += f" first_failure={self.first_failure['error']}"
            if self.first_failure.get("codewords"):
                line += " between " + " and ".join(self.first_failure["codewords"])
        return line


@dataclass(frozen=True)
class BoundCheck:
    n: int
    k: int
    d: int
    e: int
    t: int
    lhs: int
    rhs: int

    @property
    def violated(self) -> bool:
        return self.lhs > self.rhs


def hamming_bound(n: int, k: int, d: int, e: int) -> BoundCheck:
    """sum_{s<=t} 3^s C(n,s) <= 2^(n+e-k) with t = floor((d-1)/2), in exact integers."""
    if min(n, k, e) < 0 or d < 1:
        raise ValueError("need n, k, e >= 0 and d >= 1")
    t = (d - 1) // 2
    lhs = sum(3**s * comb(n, s) for s in range(t + 1))
    exp = n + e - k
    # a negative exponent means rhs < 1, which every lhs >= 1 exceeds
    rhs = 2**exp if exp >= 0 else 0
    return BoundCheck(n, k, d, e, t, lhs, rhs)


def hamming_bound_single_error(n: int, k: int, e: int) -> tuple[int, int]:
    """The one-error-correcting form 2^k (3n+1) <= 2^(n+e) as (lhs, rhs)."""
    return 2**k * (3 * n + 1), 2 ** (n + e)


# -------------------------------------------------------------------- syndromes


def _check_stabilizer(stabilizer: list[Pauli]) -> None:
    for i, a in enumerate(stabilizer):
        for b in stabilizer[i + 1:]:
            if not a.commutes(b):
                raise ValueError(f"generators {a} and {b} do not commute")
    if rank([p.symplectic() for p in stabilizer]) != len(stabilizer):
        raise ValueError("stabilizer generators are not independent")


def syndrome_bits(stabilizer: list[Pauli], x: int, z: int) -> int:
    out = 0
    for i, g in enumerate(stabilizer):
        if ((g.x & z).bit_count() + (g.z & x).bit_count()) & 1:
            out |= 1 << i
    return out


def syndrome(stabilizer: list[Pauli], e: Pauli) -> tuple[int, ...]:
    """Bit i is 1 when ``e`` anticommutes with generator i."""
    bits = syndrome_bits(stabilizer, e.x, e.z)
    return tuple(bits >> i & 1 for i in range(len(stabilizer)))


def format_syndrome(bits) -> str:
    return "".join("-" if b else "+" for b in bits)


class StabilizerSpan:
    """Membership test for the stabilizer group, ignoring phases."""

    def __init__(self, stabilizer: list[Pauli]):
        self.nqubits = stabilizer[0].nqubits if stabilizer else 0
        self.basis, self.pivots = row_reduce([p.symplectic() for p in stabilizer])

    def contains(self, x: int, z: int) -> bool:
        return reduce_against(x | z << self.nqubits, self.basis, self.pivots) == 0


def symplectic_verify(stabilizer: list[Pauli], noisy: VertexSet, d: int) -> VerificationReport:
    """Every error on ``noisy`` with weight below ``d`` must be detectable or a stabilizer element."""
    _check_stabilizer(stabilizer)
    nq = stabilizer[0].nqubits if stabilizer else noisy.bit_length()
    if 2 * nq > 62:
        return _symplectic_scan(stabilizer, nq, noisy, d)
    x, z = error_mask_arrays(noisy, d - 1)
    detected = np.zeros(len(x), dtype=bool)
    for g in stabilizer:
        detected |= ((np.bitwise_count(x & g.z) + np.bitwise_count(z & g.x)) & 1).astype(bool)
    rest = np.flatnonzero(~detected)
    v = x[rest] | z[rest] << nq
    basis, pivots = row_reduce([p.symplectic() for p in stabilizer])
    for b, p in zip(basis, pivots):
        v = np.where(v >> p & 1, v ^ b, v)
    report = VerificationReport(True, d, "symplectic", errors_checked=len(x))
    report.degenerate_errors = [error_from_masks(nq, int(x[i]), int(z[i])) for i in rest[v == 0]]
    bad = rest[v != 0]
    if len(bad):
        i = bad[0]
        report.passed = False
        report.first_failure = {"error": error_from_masks(nq, int(x[i]), int(z[i])).letters(), "codewords": None}
    return report


def _symplectic_scan(stabilizer: list[Pauli], nq: int, noisy: VertexSet, d: int) -> VerificationReport:
    group = StabilizerSpan(stabilizer)
    report = VerificationReport(True, d, "symplectic")
    for _, x, z, _ in iter_error_masks(noisy, d - 1):
        report.errors_checked += 1
        if syndrome_bits(stabilizer, x, z):
            continue
        if group.contains(x, z):
            report.degenerate_errors.append(error_from_masks(nq, x, z))
        elif report.passed:
            report.passed = False
            report.first_failure = {"error": error_from_masks(nq, x, z).letters(), "codewords": None}
    return report


def _codeword_matrix(g: Graph, labels) -> np.ndarray:
    gamma = build_graph_state(g).real
    basis = _basis(g.n_vertices)
    rows = []
    for c in labels:
        rows.append(gamma * (1 - 2 * basis.parity(index_mask(c, g.n_vertices))))
    return np.array(rows)


_BATCH = 1 << 22


_HADAMARD: dict[int, np.ndarray] = {}
_WALSH_BLOCK = 7


def _hadamard(bits: int) -> np.ndarray:
    """Unnormalised Sylvester matrix H[s, t] = (-1)^(s.t) on ``bits`` bits."""
    if bits not in _HADAMARD:
        idx = np.arange(1 << bits)
        _HADAMARD[bits] = 1.0 - 2.0 * (np.bitwise_count(idx[:, None] & idx[None, :]) & 1)
    return _HADAMARD[bits]


def _walsh(f: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform along the last axis: out[t] = sum_i f[i] (-1)^(i.t).

    The transform factorises over bits, so the index is split into blocks of at
    most ``_WALSH_BLOCK`` bits and each block is one dense matrix product.
    """
    m, size = f.shape
    n = size.bit_length() - 1
    blocks = [min(_WALSH_BLOCK, n - lo) for lo in range(0, n, _WALSH_BLOCK)]
    h = f.reshape(m, *(1 << b for b in blocks))
    for axis, b in enumerate(blocks, start=1):
        h = np.moveaxis(np.moveaxis(h, axis, -1) @ _hadamard(b), -1, axis)
    return h.reshape(m, size)


def _overlaps_walsh(shifted: np.ndarray, w: np.ndarray, zidx: np.ndarray) -> np.ndarray:
    """mats[z, a, b] for every requested z at once, one transform per codeword pair."""
    k, size = w.shape
    out = np.empty((len(zidx), k, k))
    rows = max(1, _BATCH // (k * size))
    for lo in range(0, k, rows):
        prod = shifted[lo:lo + rows, None, :] * w[None, :, :]
        h = _walsh(prod.reshape(-1, size)).reshape(-1, k, size)
        out[:, lo:lo + rows, :] = h[:, :, zidx].transpose(2, 0, 1)
    return out


def _overlaps_direct(shifted: np.ndarray, w: np.ndarray, zidx: np.ndarray, idx: np.ndarray) -> np.ndarray:
    k, size = w.shape
    chunk = max(1, _BATCH // (k * size))
    mats = []
    for lo in range(0, len(zidx), chunk):
        signs = 1 - 2 * (np.bitwise_count(idx[None, :] & zidx[lo:lo + chunk, None]) & 1).astype(np.int8)
        # mats[z, a, b] = sum_i w_a[i ^ x] (-1)^(i.z) w_b[i]
        mats.append((shifted[None, :, :] * signs[:, None, :]) @ w.T)
    return np.concatenate(mats)


def kl_verify_statevector(g: Graph, clique: CodingClique, d: int) -> VerificationReport:
    """Knill-Laflamme check on explicit state vectors.

    For every error E on the noisy qubits with weight below ``d``, the overlap
    matrix <Gamma_C|E|Gamma_C'> over the clique must be a multiple of the
    identity.  Errors sharing an X part reuse one permuted copy of the
    codewords; their Z parts come either from a direct signed product or, for
    large batches, from a Walsh-Hadamard transform over the basis index.
    """
    n = g.n_vertices
    _check_feasible(n)
    labels = list(clique.members)
    w = _codeword_matrix(g, labels)
    k = len(labels)
    basis = _basis(n)
    off = ~np.eye(k, dtype=bool)
    # vertex mask -> basis-index mask
    to_index = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        to_index[basis.idx >> v & 1 == 1] |= 1 << (n - 1 - v)

    noisy_subsets = np.array(list(subsets_of(g.noisy)), dtype=np.int64)
    report = VerificationReport(True, d, "statevector")
    fail_rows = []
    degenerate_rows = []
    for x in noisy_subsets[np.bitwise_count(noisy_subsets) < d]:
        x = int(x)
        zs = noisy_subsets[np.bitwise_count(noisy_subsets | x) < d]
        if x == 0:
            zs = zs[zs != 0]
        if not len(zs):
            continue
        report.errors_checked += len(zs)
        shifted = w[:, basis.idx ^ index_mask(x, n)]
        zidx = to_index[zs]
        if len(zs) > n:
            mats = _overlaps_walsh(shifted, w, zidx)
        else:
            mats = _overlaps_direct(shifted, w, zidx, basis.idx)
        diag = np.einsum("zaa->az", mats)
        off_ok = np.all(np.abs(mats[:, off]) < ZERO_TOL, axis=1) if k > 1 else np.ones(len(zs), bool)
        diag_ok = np.all(np.abs(diag - diag[0]) < ZERO_TOL, axis=0)
        ok = off_ok & diag_ok
        for z in zs[~ok]:
            fail_rows.append((x, int(z)))
        for z in zs[ok & (np.abs(diag[0]) > ZERO_TOL)]:
            degenerate_rows.append((x, int(z)))
    degenerate_rows.sort(key=lambda r: canonical_key(*r))
    report.degenerate_errors = [error_from_masks(n, x, z) for x, z in degenerate_rows]
    if fail_rows:
        x, z = min(fail_rows, key=lambda r: canonical_key(*r))
        e = error_from_masks(n, x, z)
        ket = apply_pauli(e, w.astype(complex))
        m = w @ ket.T
        bad = np.argwhere(~np.isclose(m, m[0, 0] * np.eye(k), atol=ZERO_TOL, rtol=0))
        i, j = (int(v) for v in bad[0])
        report.passed = False
        report.first_failure = {"error": e.letters(), "codewords": [to_string(labels[i]), to_string(labels[j])]}
    return report


# ----------------------------------------------------------------- degeneracy


def single_qubit_errors(nqubits: int, qubits: VertexSet) -> list[Pauli]:
    return [Pauli.single(nqubits, q, letter) for q in members(qubits) for letter in LETTERS]


def degenerate_pairs(stabilizer: list[Pauli], qubits: VertexSet) -> list[list[Pauli]]:
    """Groups (of two or more) of single-qubit errors on ``qubits`` that share a syndrome."""
    nq = stabilizer[0].nqubits
    groups: dict[int, list[Pauli]] = {}
    for err in single_qubit_errors(nq, qubits):
        groups.setdefault(syndrome_bits(stabilizer, err.x, err.z), []).append(err)
    return [grp for grp in groups.values() if len(grp) > 1]


def syndrome_table(stabilizer: list[Pauli], qubits: VertexSet) -> list[tuple[str, str]]:
    """(error label, +/- syndrome) for every single-qubit error on ``qubits``."""
    out = []
    for err in single_qubit_errors(stabilizer[0].nqubits, qubits):
        q = err.support.bit_length() - 1
        letter = err.letters()[q]
        out.append((f"{letter}{q}", format_syndrome(syndrome(stabilizer, err))))
    return out


def low_weight_errors(nqubits: int, qubits: VertexSet, max_weight: int) -> list[Pauli]:
    return [error_from_masks(nqubits, x, z) for _, x, z, _ in iter_error_masks(qubits, max_weight)]

