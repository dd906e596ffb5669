"""Loading measured 2-qubit process matrices and twirling them into Pauli channels.

The interchange format is the Pauli transfer matrix (PTM): the real matrix
R[P][Q] = (1/4) Tr(P * L(Q)) in the fixed two-qubit Pauli order
II, IX, IY, IZ, XI, ..., ZZ (first letter major, I < X < Y < Z).  Note this
file order differs from the channel module's internal enumeration; the twirl
transform bridges the two.

Twirling keeps only the PTM diagonal d and produces the Pauli channel

    Pr(Q) = (1/16) * sum_P d[P] * (-1)^<P,Q>,

with <.,.> the symplectic product; the 1/16 makes it the uniform average
over conjugation by all two-qubit Paulis, which preserves the trace.
Estimates reconstructed from data can dip slightly below zero, so the result
is passed through a clipping sanitizer with a hard bound on discarded mass.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .channel import PauliChannel
from .pauli import from_string, symplectic_product_all

PTM_ORDER = (
    "II,IX,IY,IZ,XI,XX,XY,XZ,YI,YX,YY,YZ,ZI,ZX,ZY,ZZ"
)
_PTM_LABELS = PTM_ORDER.split(",")
_ENTRY_TOL = 1e-6


class IngestError(ValueError):
    """Raised for malformed PTM files or estimates too broken to sanitize."""


def _sign_matrix() -> np.ndarray:
    """(-1)^<P,Q> with rows in PTM order and columns in enumeration order."""
    rows = [
        1.0 - 2.0 * symplectic_product_all(2, from_string(label)).astype(np.float64)
        for label in _PTM_LABELS
    ]
    return np.array(rows)


_SIGNS = _sign_matrix()


@dataclass(frozen=True, eq=False)
class ChannelEstimate:
    """A reconstructed 2-qubit process: its PTM plus experiment metadata."""

    ptm: np.ndarray
    tau_ms: float = 0.0
    label: str = ""

    def __post_init__(self):
        ptm = np.asarray(self.ptm, dtype=np.float64)
        if ptm.shape != (16, 16):
            raise IngestError(f"PTM must be 16x16, got shape {ptm.shape}")
        worst = float(np.abs(ptm).max())
        if worst > 1.0 + _ENTRY_TOL:
            raise IngestError(f"PTM entry magnitude {worst} is far outside [-1, 1]")
        if abs(float(ptm[0, 0]) - 1.0) > _ENTRY_TOL:
            warnings.warn(
                f"estimate {self.label or '(unlabeled)'}: R[II][II] = {float(ptm[0, 0])!r}"
                " deviates from 1; the map is not trace preserving",
                stacklevel=2,
            )
        ptm = ptm.copy()
        ptm.setflags(write=False)
        object.__setattr__(self, "ptm", ptm)

    @property
    def n(self) -> int:
        return 2

    @property
    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.ptm).copy()


def load_estimate(path: str) -> ChannelEstimate:
    """Read a PTM file; shape, basis, and Pauli order are enforced."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    try:
        n = data["n"]
        ptm = data["ptm"]
    except (TypeError, KeyError) as exc:
        raise IngestError(f"{path}: missing required field {exc}") from None
    if n != 2:
        raise IngestError(f"{path}: only n=2 estimates are supported, got n={n!r}")
    if data.get("basis", "pauli") != "pauli":
        raise IngestError(f"{path}: unsupported basis {data['basis']!r}")
    order = data.get("order", PTM_ORDER)
    if order != PTM_ORDER:
        raise IngestError(
            f"{path}: PTM rows must follow the order {PTM_ORDER}, got {order!r}"
        )
    try:
        matrix = np.array(ptm, dtype=np.float64)
    except ValueError:
        raise IngestError(f"{path}: ptm is not a rectangular numeric matrix") from None
    if matrix.shape != (16, 16):
        raise IngestError(f"{path}: PTM must be 16x16, got shape {matrix.shape}")
    tau = data.get("tau_ms", 0.0)
    if not isinstance(tau, (int, float)) or tau < 0 or math.isnan(tau):
        raise IngestError(f"{path}: tau_ms must be a non-negative number, got {tau!r}")
    return ChannelEstimate(matrix, tau_ms=float(tau), label=str(data.get("label", "")))


@dataclass(frozen=True, slots=True)
class SanitizeReport:
    """What the sanitizer had to do to make a vector a distribution."""

    clipped_mass: float
    original_sum: float
    clip_bound: float
    clipped_entries: tuple[int, ...] = field(default=())


def sanitize(
    probs: np.ndarray, clip_bound: float = 0.05
) -> tuple[PauliChannel, SanitizeReport]:
    """Clip negatives to zero and renormalize, within a mass budget.

    Raises IngestError when the clipped mass exceeds clip_bound: an estimate
    that far from a distribution should be inspected, not silently patched.
    """
    vec = np.asarray(probs, dtype=np.float64)
    if vec.ndim != 1 or vec.size not in (4, 16, 64, 256):
        raise IngestError(f"expected a 4**n probability vector, got shape {vec.shape}")
    n = round(math.log(vec.size, 4))
    negative = vec < 0.0
    clipped_mass = float(-vec[negative].sum())
    if clipped_mass > clip_bound:
        worst = float(vec.min())
        raise IngestError(
            f"clipped mass {clipped_mass:.6g} exceeds the bound {clip_bound:.6g}"
            f" (most negative entry {worst:.6g}); refusing to sanitize"
        )
    original_sum = float(vec.sum())
    clipped = np.where(negative, 0.0, vec)
    total = float(clipped.sum())
    if total <= 0.0:
        raise IngestError("no probability mass left after clipping")
    report = SanitizeReport(
        clipped_mass=clipped_mass,
        original_sum=original_sum,
        clip_bound=clip_bound,
        clipped_entries=tuple(int(i) for i in np.flatnonzero(negative)),
    )
    return PauliChannel(n, clipped / total), report


def twirl_diagonal(diagonal: np.ndarray) -> np.ndarray:
    """The raw (pre-sanitize) Pauli probabilities of a PTM diagonal.

    Output is indexed in the channel enumeration order, not the PTM order.
    """
    d = np.asarray(diagonal, dtype=np.float64)
    if d.shape != (16,):
        raise IngestError(f"need 16 diagonal entries, got shape {d.shape}")
    return (d @ _SIGNS) / 16.0


def pauli_twirl(est: ChannelEstimate, clip_bound: float = 0.05) -> PauliChannel:
    """Average the estimate over Pauli conjugation: a 2-qubit Pauli channel.

    Off-diagonal PTM entries (coherences) are exactly what the twirl
    removes; only the diagonal survives.  The resulting quasi-probabilities
    are sanitized before the channel is returned.
    """
    ch, _ = sanitize(twirl_diagonal(est.diagonal), clip_bound=clip_bound)
    return ch


def pauli_twirl_with_report(
    est: ChannelEstimate, clip_bound: float = 0.05
) -> tuple[PauliChannel, SanitizeReport]:
    return sanitize(twirl_diagonal(est.diagonal), clip_bound=clip_bound)


def ptm_of_pauli_channel(
    ch: PauliChannel, tau_ms: float = 0.0, label: str = ""
) -> ChannelEstimate:
    """The exact PTM of a 2-qubit Pauli channel (diagonal, entries in [-1, 1]).

    d[P] = sum_Q Pr(Q) (-1)^<P,Q>; twirling this estimate returns the
    channel's probability vector exactly, which the tests rely on.
    """
    if ch.n != 2:
        raise IngestError(f"PTMs are only built for n=2 channels, got n={ch.n}")
    diag = _SIGNS @ ch.probs
    return ChannelEstimate(np.diag(diag), tau_ms=tau_ms, label=label)


def estimate_to_dict(est: ChannelEstimate) -> dict:
    return {
        "n": 2,
        "basis": "pauli",
        "order": PTM_ORDER,
        "ptm": [[float(v) for v in row] for row in est.ptm],
        "tau_ms": est.tau_ms,
        "label": est.label,
    }


def save_estimate(est: ChannelEstimate, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(estimate_to_dict(est), f, indent=2)
        f.write("\n")
