"""Independent per-qubit Pauli noise: effective coding probability, infidelity and Monte Carlo.

Each qubit errs independently, with probability ``p`` on noisy qubits and
``p_e`` on protected ones; given an error, its letter is X, Y or Z with the
model's split (uniform by default).

Random numbers come from numpy's PCG64 bit generator seeded with the shard
seed (``seed + shard_index``).  Each shard draws, in order, a ``(trials, n)``
block of uniforms for "does this qubit err" followed by a second block for
the letter, both with ``Generator.random``.
"""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
import sympy

from .gf2 import VertexSet, members, span
from .pauli import Pauli, error_from_masks, iter_error_masks
from .verify import StabilizerSpan, _check_stabilizer, syndrome_bits

P, PE = sympy.symbols("p p_e", nonnegative=True)
MAX_ENUMERATION_QUBITS = 20
UNIFORM_SPLIT = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))


@dataclass(frozen=True)
class NoiseModel:
    p: float
    p_e: float
    split: tuple = UNIFORM_SPLIT

    def __post_init__(self) -> None:
        for name, v in (("p", self.p), ("p_e", self.p_e)):
            if not 0 <= v <= 1:
                raise ValueError(f"{name}={v} outside [0, 1]")
        if len(self.split) != 3 or any(s < 0 for s in self.split):
            raise ValueError("split needs three non-negative X/Y/Z probabilities")
        if abs(float(sum(self.split)) - 1) > 1e-12:
            raise ValueError(f"split {self.split} does not sum to 1")

    def qubit_probabilities(self, n_qubits: int, protected: VertexSet) -> np.ndarray:
        return np.array([self.p_e if protected >> q & 1 else self.p for q in range(n_qubits)])


# --------------------------------------------------------------------- profiles


def decoder_table(stabilizer: list[Pauli], noisy: VertexSet, max_weight: int) -> dict[int, Pauli]:
    """Syndrome -> lowest-weight, canonically-first error on ``noisy`` producing it."""
    _check_stabilizer(stabilizer)
    nq = stabilizer[0].nqubits
    table = {0: Pauli.identity(nq)}
    for _, x, z, _ in iter_error_masks(noisy, max_weight):
        table.setdefault(syndrome_bits(stabilizer, x, z), error_from_masks(nq, x, z))
    return table


@dataclass
class DecoderProfile:
    """Correctability decided by a lookup decoder for a stabilizer code.

    In strict mode only errors of weight <= t can count as corrected; otherwise
    any error whose decoder correction leaves a stabilizer element counts.
    """

    name: str
    stabilizer: list[Pauli]
    noisy: VertexSet
    protected: VertexSet
    k: int
    t: int
    strict: bool = True
    table: dict[int, Pauli] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.table = decoder_table(self.stabilizer, self.noisy, self.t)
        self._span = StabilizerSpan(self.stabilizer)
        n = self.n_qubits
        self._span_keys = np.array(sorted(span([p.symplectic() for p in self.stabilizer])), dtype=np.int64)
        nsyn = 1 << len(self.stabilizer)
        self._corr_x = np.full(nsyn, -1, dtype=np.int64)
        self._corr_z = np.full(nsyn, -1, dtype=np.int64)
        for syn, c in self.table.items():
            self._corr_x[syn], self._corr_z[syn] = c.x, c.z
        if 2 * n > 62:
            raise ValueError("too many qubits for the vectorised decoder")

    @classmethod
    def from_record(cls, rec, strict: bool = True) -> DecoderProfile:
        g = rec.graph
        return cls(rec.name, rec.stabilizer, g.noisy, g.pure, rec.k, (rec.d - 1) // 2, strict)

    @property
    def n_qubits(self) -> int:
        return self.stabilizer[0].nqubits

    @property
    def max_weight(self) -> int | None:
        return self.t if self.strict else None

    def correctable(self, x: int, z: int) -> bool:
        if self.strict and (x | z).bit_count() > self.t:
            return False
        c = self.table.get(syndrome_bits(self.stabilizer, x, z))
        return c is not None and self._span.contains(x ^ c.x, z ^ c.z)

    def correctable_array(self, x: np.ndarray, z: np.ndarray) -> np.ndarray:
        syn = np.zeros_like(x)
        for i, g in enumerate(self.stabilizer):
            odd = (np.bitwise_count(x & g.z) + np.bitwise_count(z & g.x)) & 1
            syn |= odd << i
        cx, cz = self._corr_x[syn], self._corr_z[syn]
        known = cx >= 0
        key = (x ^ cx) | (z ^ cz) << self.n_qubits
        ok = known & np.isin(key, self._span_keys)
        if self.strict:
            ok &= np.bitwise_count(x | z) <= self.t
        return ok


@dataclass
class AbstractProfile:
    """A code known only through its parameters: every error on at most ``max_weight`` qubits is corrected."""

    name: str
    n_qubits: int
    protected: VertexSet
    k: int
    max_weight: int = 1
    note: str = ""

    def correctable(self, x: int, z: int) -> bool:
        return (x | z).bit_count() <= self.max_weight

    def correctable_array(self, x: np.ndarray, z: np.ndarray) -> np.ndarray:
        return np.bitwise_count(x | z) <= self.max_weight


def abstract_10_4_3() -> AbstractProfile:
    # nine channel qubits plus the sender's half of the shared pair, which has p_e
    return AbstractProfile(
        "abstract-10-4-3", 10, 1, 4, 1, "generators not given; every single-qubit error assumed correctable"
    )


def abstract_9_3_3() -> AbstractProfile:
    return AbstractProfile(
        "abstract-9-3-3", 9, 0, 3, 1, "generators not given; every single-qubit error assumed correctable"
    )


ABSTRACT_PROFILES = {"abstract-10-4-3": abstract_10_4_3, "abstract-9-3-3": abstract_9_3_3}


# ------------------------------------------------------------- exact P_C


def _letter_weight(split, counts: tuple[int, int, int]):
    out = 1
    for s, c in zip(split, counts):
        out *= s**c
    return out


@dataclass
class EffectiveCoding:
    """P_C for one profile and one noise model.

    ``weights[(a, b)]`` holds the summed correctable letter-weight of supports
    with ``a`` noisy and ``b`` protected qubits, so that
    P_C = sum W[a,b] p^a (1-p)^(n-a) p_e^b (1-p_e)^(e-b).
    """

    value: float
    polynomial: sympy.Expr
    weights: dict[tuple[int, int], object]
    n_noisy: int
    n_protected: int

    def evaluate(self, p: float, p_e: float) -> float:
        n, e = self.n_noisy, self.n_protected
        total = 0.0
        for (a, b), w in self.weights.items():
            total += float(w) * p**a * (1 - p) ** (n - a) * p_e**b * (1 - p_e) ** (e - b)
        return total


def _split_exact(split):
    return tuple(s if isinstance(s, Fraction) else Fraction(s).limit_denominator(10**12) for s in split)


def correctable_weights(profile) -> dict[int, dict[tuple[int, int, int], int]]:
    """For each error support, counts of correctable letter assignments by (#X, #Y, #Z)."""
    n = profile.n_qubits
    if n > MAX_ENUMERATION_QUBITS:
        raise ValueError(f"{n} qubits exceeds the enumeration limit of {MAX_ENUMERATION_QUBITS}")
    limit = n if profile.max_weight is None else min(profile.max_weight, n)
    out: dict[int, dict[tuple[int, int, int], int]] = defaultdict(lambda: defaultdict(int))
    out[0][(0, 0, 0)] = int(profile.correctable(0, 0))
    for w, x, z, word in iter_error_masks((1 << n) - 1, limit):
        if profile.correctable(x, z):
            out[x | z][(word.count(0), word.count(1), word.count(2))] += 1
    return out


def effective_coding_probability(profile, model: NoiseModel) -> EffectiveCoding:
    """Probability that the error which occurs is corrected, with its polynomial in (p, p_e)."""
    n = profile.n_qubits
    protected = profile.protected
    n_prot = protected.bit_count()
    probs = model.qubit_probabilities(n, protected)
    exact_split = _split_exact(model.split)
    per_support = correctable_weights(profile)

    value = 0.0
    weights: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for supp, counts in per_support.items():
        letter_w = sum(_letter_weight(exact_split, c) * m for c, m in counts.items())
        if not letter_w:
            continue
        pr = 1.0
        for q in range(n):
            pr *= probs[q] if supp >> q & 1 else 1 - probs[q]
        value += float(letter_w) * pr
        a = (supp & ~protected).bit_count()
        b = (supp & protected).bit_count()
        weights[(a, b)] += letter_w

    poly = sympy.Integer(0)
    n_noisy = n - n_prot
    for (a, b), w in weights.items():
        poly += sympy.Rational(w.numerator, w.denominator) * P**a * (1 - P) ** (n_noisy - a) * PE**b * (1 - PE) ** (n_prot - b)
    return EffectiveCoding(value, sympy.expand(poly), dict(weights), n_noisy, n_prot)


def infidelity_from_pc(pc: float, k: int) -> float:
    if k < 1:
        raise ValueError("infidelity needs k >= 1")
    if pc <= 0:
        return 1.0
    return 1.0 - pc ** (1.0 / k)


def infidelity(profile, model: NoiseModel) -> float:
    """1 - P_C^(1/k)."""
    return infidelity_from_pc(effective_coding_probability(profile, model).value, profile.k)


def no_code_infidelity(model: NoiseModel) -> float:
    return model.p


def infidelity_curve(
    profiles, p_min: float, p_max: float, steps: int, ratio: float = 1.0, split=UNIFORM_SPLIT
) -> list[list[float]]:
    """Rows ``[p, inF(profile_1), ..., inF(profile_m), p]`` on a uniform grid with p_e = ratio * p."""
    if not 0 <= p_min < p_max <= 1:
        raise ValueError(f"need 0 <= p_min < p_max <= 1, got {p_min}, {p_max}")
    if steps < 2:
        raise ValueError("need at least two grid points")
    if ratio < 0 or ratio * p_max > 1:
        raise ValueError(f"p_e ratio {ratio} leaves [0, 1]")
    # the letter split does not depend on p, so one enumeration per profile suffices
    tables = [effective_coding_probability(prof, NoiseModel(0.0, 0.0, split)) for prof in profiles]
    rows = []
    for p in np.linspace(p_min, p_max, steps):
        p = float(p)
        row = [p]
        for prof, tab in zip(profiles, tables):
            row.append(infidelity_from_pc(tab.evaluate(p, ratio * p), prof.k))
        row.append(p)
        rows.append(row)
    return rows


def write_curve(fh, names: list[str], rows: list[list[float]]) -> None:
    """Curve CSV: header ``p,<names>,no_code`` and values with 12 significant digits."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["p", *names, "no_code"])
    for row in rows:
        w.writerow([f"{v:.12g}" for v in row])


def write_curve_csv(path: str | Path, names: list[str], rows: list[list[float]]) -> None:
    with open(path, "w", newline="") as fh:
        write_curve(fh, names, rows)


# ------------------------------------------------------------------ Monte Carlo


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    stderr: float
    trials: int
    successes: int


def sample_errors(profile, model: NoiseModel, trials: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    n = profile.n_qubits
    probs = model.qubit_probabilities(n, profile.protected)
    hit = rng.random((trials, n)) < probs
    u = rng.random((trials, n))
    sx, sy, _ = (float(s) for s in model.split)
    is_x = u < sx
    is_y = (u >= sx) & (u < sx + sy)
    has_x = hit & (is_x | is_y)
    has_z = hit & ~is_x
    weights = 1 << np.arange(n, dtype=np.int64)
    return has_x.astype(np.int64) @ weights, has_z.astype(np.int64) @ weights


def monte_carlo_pc(profile, model: NoiseModel, trials: int, seed: int, shards: int = 1) -> MonteCarloEstimate:
    """Fraction of sampled errors the profile corrects, with its binomial standard error."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if shards < 1:
        raise ValueError("need at least one shard")
    base, extra = divmod(trials, shards)
    successes = 0
    for i in range(shards):
        count = base + (1 if i < extra else 0)
        if not count:
            continue
        rng = np.random.Generator(np.random.PCG64(seed + i))
        x, z = sample_errors(profile, model, count, rng)
        successes += int(np.count_nonzero(profile.correctable_array(x, z)))
    mean = successes / trials
    stderr = (mean * (1 - mean) / trials) ** 0.5
    return MonteCarloEstimate(mean, stderr, trials, successes)


def profile_summary(profile) -> str:
    if isinstance(profile, DecoderProfile):
        rule = f"decoder, {'strict' if profile.strict else 'degenerate'} t={profile.t}"
    else:
        rule = f"abstract, supports of size <= {profile.max_weight} correctable ({profile.note})"
    return f"{profile.name}: {profile.n_qubits} qubits, protected {members(profile.protected)}, k={profile.k}, {rule}"

