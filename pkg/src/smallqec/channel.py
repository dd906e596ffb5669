"""Pauli channels as dense probability vectors over the enumerated Paulis.

A channel stores one float per phaseless n-qubit Pauli, indexed in the fixed
enumeration order of the pauli module.  Multiplication of phaseless Paulis is
XOR on enumeration indices, so composing two channels is XOR (dyadic)
convolution of their vectors; all other combinators are entrywise.

The biased single-qubit model treats X and Z flips as independent Bernoulli
events with bare rates r_x and r_z; coincident flips combine to Y, giving

    p_x = r_x (1 - r_z),  p_z = r_z (1 - r_x),  p_y = r_x r_z,

total error probability p = p_x + p_y + p_z and bias eta = p_z / p_x.
"""

from __future__ import annotations

import json
import math
import warnings
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .pauli import PauliOperator, from_index, from_string

_SUM_TOL = 1e-9
# Cancellation in the fast transform can leave entries a hair below zero;
# anything beyond this is a real bug, not roundoff.
_NEG_TOL = 1e-12


class ChannelError(ValueError):
    """Raised for invalid channel parameters, combinator misuse, or bad files."""


@dataclass(frozen=True, slots=True)
class BiasedParams:
    """Bare flip rates of the biased model; everything else is derived."""

    r_x: float
    r_z: float

    def __post_init__(self):
        for name, r in (("r_x", self.r_x), ("r_z", self.r_z)):
            if not 0.0 <= r < 1.0:
                raise ChannelError(f"{name} must lie in [0, 1), got {r}")

    @property
    def p_x(self) -> float:
        return self.r_x * (1.0 - self.r_z)

    @property
    def p_z(self) -> float:
        return self.r_z * (1.0 - self.r_x)

    @property
    def p_y(self) -> float:
        return self.r_x * self.r_z

    @property
    def p(self) -> float:
        return self.p_x + self.p_y + self.p_z

    @property
    def eta(self) -> float:
        if self.p_x == 0.0:
            return math.inf if self.p_z > 0.0 else math.nan
        return self.p_z / self.p_x


def from_total_and_bias(p: float, eta: float) -> BiasedParams:
    """Invert (p, eta) back to bare rates (r_x, r_z).

    Eliminating r_z through the bias constraint leaves the total error
    probability as a strictly increasing function of r_x on [0, p], so
    bisection converges to the float adjacent to the root.  The round trip
    reproduces (p, eta) to well within 1e-10.

    eta < 1 (X-dominated noise) is accepted as given, with a warning; the
    rates are never silently swapped.
    """
    if not 0.0 <= p < 1.0:
        raise ChannelError(f"total error probability must lie in [0, 1), got {p}")
    if not eta > 0.0:
        raise ChannelError(f"bias must be positive, got {eta}")
    if eta < 1.0:
        warnings.warn(
            f"bias eta={eta} < 1 means X-dominated noise; using it as given",
            stacklevel=2,
        )
    if p == 0.0:
        return BiasedParams(0.0, 0.0)

    def r_z_of(a: float) -> float:
        return eta * a / ((1.0 - a) + eta * a)

    def total(a: float) -> float:
        b = r_z_of(a)
        return a + b - a * b

    # total(a) >= a, so the root lies in (0, p]; bisect to float resolution.
    lo, hi = 0.0, p
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if total(mid) < p:
            lo = mid
        else:
            hi = mid
    a = hi if abs(total(hi) - p) <= abs(total(lo) - p) else lo
    return BiasedParams(a, r_z_of(a))


@dataclass(frozen=True, eq=False)
class PauliChannel:
    """A probability distribution over all 4**n phaseless Paulis.

    The vector is validated on construction (length, non-negativity, sum 1
    within 1e-9) and frozen read-only; entries within roundoff below zero
    are clamped to exactly zero.
    """

    n: int
    probs: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= 8:
            raise ChannelError(f"dense channels support 1 <= n <= 8, got n={self.n}")
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (4**self.n,):
            raise ChannelError(
                f"need {4**self.n} probabilities for n={self.n}, got shape {probs.shape}"
            )
        low = float(probs.min())
        if low < -_NEG_TOL:
            raise ChannelError(f"negative probability {low}")
        total = float(probs.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise ChannelError(f"probabilities sum to {total!r}, expected 1")
        probs = np.maximum(probs, 0.0)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def probability(self, pauli: PauliOperator) -> float:
        if pauli.n != self.n:
            raise ChannelError(f"qubit count mismatch: {pauli.n} vs {self.n}")
        return float(self.probs[pauli.index])

    def __repr__(self) -> str:
        support = int(np.count_nonzero(self.probs))
        return f"PauliChannel(n={self.n}, support={support})"


def identity_channel(n: int) -> PauliChannel:
    probs = np.zeros(4**n)
    probs[0] = 1.0
    return PauliChannel(n, probs)


def point_mass(pauli: PauliOperator) -> PauliChannel:
    probs = np.zeros(4**pauli.n)
    probs[pauli.index] = 1.0
    return PauliChannel(pauli.n, probs)


def biased_single_qubit(params: BiasedParams) -> PauliChannel:
    # single-qubit enumeration order is I, X, Z, Y
    return PauliChannel(
        1, np.array([1.0 - params.p, params.p_x, params.p_z, params.p_y])
    )


def iid(single: PauliChannel, n: int) -> PauliChannel:
    """The n-qubit channel applying `single` independently to every qubit."""
    if single.n != 1:
        raise ChannelError(f"iid needs a single-qubit channel, got n={single.n}")
    if not 1 <= n <= 8:
        raise ChannelError(f"dense channels support 1 <= n <= 8, got n={n}")
    probs = single.probs
    for _ in range(n - 1):
        probs = np.kron(single.probs, probs)
    return PauliChannel(n, probs)


def iid_biased(n: int, p: float, eta: float) -> PauliChannel:
    """Shorthand for the i.i.d. biased channel at total rate p and bias eta."""
    return iid(biased_single_qubit(from_total_and_bias(p, eta)), n)


def compose(a: PauliChannel, b: PauliChannel) -> PauliChannel:
    """Sequential application of two Pauli channels (order irrelevant).

    Pr_out(Q) = sum_P Pr_a(Q*P) Pr_b(P), an XOR convolution: direct at
    n <= 4, Walsh-Hadamard transform above (both agree within 1e-12).
    """
    if a.n != b.n:
        raise ChannelError(f"qubit count mismatch: {a.n} vs {b.n}")
    if a.n <= 4:
        out = _convolve_direct(a.probs, b.probs)
    else:
        out = _convolve_wht(a.probs, b.probs)
    return PauliChannel(a.n, out)


def _convolve_direct(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    idx = np.arange(a.size)
    return (a[np.bitwise_xor.outer(idx, idx)] * b).sum(axis=1)


def _fwht(vec: np.ndarray) -> np.ndarray:
    """In-order fast Walsh-Hadamard transform (unnormalized)."""
    out = vec.astype(np.float64).copy()
    h = 1
    while h < out.size:
        out = out.reshape(-1, 2, h)
        top = out[:, 0, :] + out[:, 1, :]
        bot = out[:, 0, :] - out[:, 1, :]
        out = np.stack([top, bot], axis=1).reshape(-1)
        h *= 2
    return out


def _convolve_wht(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return _fwht(_fwht(a) * _fwht(b)) / a.size


def convex(channels: Sequence[PauliChannel], weights: Sequence[float]) -> PauliChannel:
    """Entrywise mixture: apply channels[i] with probability weights[i]."""
    if not channels:
        raise ChannelError("need at least one channel")
    if len(channels) != len(weights):
        raise ChannelError(
            f"{len(channels)} channels but {len(weights)} weights"
        )
    n = channels[0].n
    for ch in channels[1:]:
        if ch.n != n:
            raise ChannelError(f"qubit count mismatch: {ch.n} vs {n}")
    w = np.asarray(weights, dtype=np.float64)
    if float(w.min()) < 0.0:
        raise ChannelError(f"negative weight {float(w.min())}")
    if abs(float(w.sum()) - 1.0) > _SUM_TOL:
        raise ChannelError(f"weights sum to {float(w.sum())!r}, expected 1")
    out = np.zeros(4**n)
    for wi, ch in zip(w, channels):
        out += wi * ch.probs
    # The mixture has unit mass exactly; divide out accumulated float dust
    # (e.g. six 1/6 weights summing to 1 - ulp) so exact inputs stay exact.
    out /= out.sum()
    return PauliChannel(n, out)


def embed(two_qubit: PauliChannel, n: int, i: int, j: int) -> PauliChannel:
    """Lift a 2-qubit channel to n qubits, acting on positions i and j (1-based).

    The pair channel's first letter lands on position i, its second on
    position j; every other qubit is untouched.
    """
    if two_qubit.n != 2:
        raise ChannelError(f"embed needs a 2-qubit channel, got n={two_qubit.n}")
    if not 1 <= n <= 8:
        raise ChannelError(f"dense channels support 1 <= n <= 8, got n={n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ChannelError(f"positions ({i}, {j}) out of range for n={n}")
    if i == j:
        raise ChannelError(f"positions must be distinct, got ({i}, {j})")
    idx2 = np.arange(16)
    first, second = idx2 & 3, idx2 >> 2
    big = first * 4 ** (i - 1) + second * 4 ** (j - 1)
    out = np.zeros(4**n)
    out[big] = two_qubit.probs
    return PauliChannel(n, out)


def extrapolate_convex(eps2: PauliChannel) -> PauliChannel:
    """Uniform mixture of the pair channel over the six neighboring line pairs.

    Support never exceeds weight 2: exactly one pair is hit per application.
    """
    parts = [embed(eps2, 7, j, j + 1) for j in range(1, 7)]
    return convex(parts, [1.0 / 6.0] * 6)


def extrapolate_convex_product(eps2: PauliChannel) -> PauliChannel:
    """Half-and-half mixture of the two non-overlapping pair tilings.

    One branch applies the pair channel independently on (1,2), (3,4), (5,6);
    the other on (2,3), (4,5), (6,7).
    """
    first = _compose_all(embed(eps2, 7, j, j + 1) for j in (1, 3, 5))
    second = _compose_all(embed(eps2, 7, j, j + 1) for j in (2, 4, 6))
    return convex([first, second], [0.5, 0.5])


def extrapolate_product(eps2: PauliChannel) -> PauliChannel:
    """Product of the pair channel over all six neighboring line pairs."""
    return _compose_all(embed(eps2, 7, j, j + 1) for j in range(1, 7))


def _compose_all(channels: Iterable[PauliChannel]) -> PauliChannel:
    it = iter(channels)
    out = next(it)
    for ch in it:
        out = compose(out, ch)
    return out


EXTRAPOLATIONS = {
    "convex": extrapolate_convex,
    "convex-product": extrapolate_convex_product,
    "product": extrapolate_product,
}


def channel_to_dict(ch: PauliChannel) -> dict:
    probs = {
        str(from_index(ch.n, int(idx))): float(ch.probs[idx])
        for idx in np.flatnonzero(ch.probs)
    }
    return {"n": ch.n, "probs": probs}


def save_channel(ch: PauliChannel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(channel_to_dict(ch), f, indent=2)
        f.write("\n")


def channel_from_dict(data: dict, where: str = "channel data") -> PauliChannel:
    """Build a channel from {"n": 2, "probs": {"II": 0.92, ...}}.

    Omitted Pauli strings mean probability zero.  The total must be within
    1e-6 of one; any nonzero deviation is renormalized away, with a warning
    when it exceeds parsing-level float dust (1e-12).
    """
    try:
        n = data["n"]
        raw = data["probs"]
    except (TypeError, KeyError) as exc:
        raise ChannelError(f"{where}: missing required field {exc}") from None
    if not isinstance(n, int) or not 1 <= n <= 8:
        raise ChannelError(f"{where}: n must be an integer in 1..8, got {n!r}")
    probs = np.zeros(4**n)
    for key, value in raw.items():
        pauli = from_string(key)
        if pauli.n != n:
            raise ChannelError(
                f"{where}: key {key!r} has {pauli.n} letters, expected {n}"
            )
        if not isinstance(value, (int, float)) or value < 0:
            raise ChannelError(f"{where}: probability of {key!r} is {value!r}")
        probs[pauli.index] += float(value)
    total = float(probs.sum())
    deviation = abs(total - 1.0)
    if deviation > 1e-6:
        raise ChannelError(f"{where}: probabilities sum to {total!r}, expected 1")
    if deviation > 0.0:
        if deviation > 1e-12:
            warnings.warn(
                f"{where}: probabilities sum to {total!r}; renormalizing",
                stacklevel=2,
            )
        probs /= total
    return PauliChannel(n, probs)


def load_channel(path: str) -> PauliChannel:
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    return channel_from_dict(data, where=path)
