"""Exact maximum-likelihood decoding by exhaustive coset enumeration.

Every Pauli error's channel probability lands in one of 2**(n-k) x 4 cells
keyed by (syndrome, logical class).  The optimal decoder picks, per syndrome,
the class carrying the most probability; the logical error rate is one minus
the captured mass.  Cell sums use exact accumulation (math.fsum) so the
1e-12 cross-checks in the test suite stay meaningful.

density_matrix_oracle recomputes the rate by dense linear algebra in the
2**n-dimensional Hilbert space, sharing only the recovery table with the
coset path; agreement between the two is the workbench's core self-check.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .channel import PauliChannel
from .code import StabilizerCode
from .pauli import (
    PauliOperator,
    from_index,
    identity,
    multiply,
    symplectic_product,
    symplectic_product_all,
)

_CLASS_NAMES = ("I", "X", "Y", "Z")
# column for (a, b) = (anticommutes with logical Z, with logical X), index a + 2b
_CLASS_COLUMN = np.array([0, 1, 3, 2], dtype=np.int64)


class DecoderError(ValueError):
    """Raised for decoder misuse: wrong k, mismatched sizes, oversized oracle."""


def _check_inputs(code: StabilizerCode, ch: PauliChannel) -> None:
    if code.k != 1:
        raise DecoderError(f"decoding requires k=1, got k={code.k}")
    if ch.n != code.n:
        raise DecoderError(f"qubit count mismatch: channel n={ch.n}, code n={code.n}")


def class_columns(code: StabilizerCode) -> np.ndarray:
    """Logical-class column (order I, X, Y, Z) of every enumerated Pauli."""
    synd = code.syndromes_all()
    # commutation of each canonical pure error with the logical representatives
    a_pure = np.zeros(code.num_syndromes, dtype=np.uint8)
    b_pure = np.zeros(code.num_syndromes, dtype=np.uint8)
    for s in range(code.num_syndromes):
        t = code.pure_error(s)
        a_pure[s] = symplectic_product(t, code.logical_z)
        b_pure[s] = symplectic_product(t, code.logical_x)
    a = symplectic_product_all(code.n, code.logical_z) ^ a_pure[synd]
    b = symplectic_product_all(code.n, code.logical_x) ^ b_pure[synd]
    return _CLASS_COLUMN[a + 2 * b.astype(np.int64)]


def coset_probabilities(code: StabilizerCode, ch: PauliChannel) -> np.ndarray:
    """The (2**(n-k), 4) matrix of coset masses p(syndrome, class).

    One exhaustive pass over all 4**n Paulis; each cell is an exact fsum of
    its members, so entries are correctly rounded doubles.
    """
    _check_inputs(code, ch)
    cells = code.syndromes_all().astype(np.int64) * 4 + class_columns(code)
    num_cells = code.num_syndromes * 4
    order = np.argsort(cells, kind="stable")
    sorted_probs = ch.probs[order].tolist()
    bounds = np.searchsorted(cells[order], np.arange(num_cells + 1))
    out = np.zeros(num_cells)
    for cell in range(num_cells):
        lo, hi = int(bounds[cell]), int(bounds[cell + 1])
        if lo < hi:
            out[cell] = math.fsum(sorted_probs[lo:hi])
    return out.reshape(code.num_syndromes, 4)


@dataclass(frozen=True, eq=False)
class DecoderTable:
    """Per-syndrome coset masses plus the argmax recovery choice.

    coset_probs columns follow the fixed class order I, X, Y, Z; ties in the
    argmax resolve in that same order.  recovery[s] is the canonical pure
    error for s times the chosen class representative, so it has syndrome s
    and undoes the most likely coset.
    """

    code: StabilizerCode
    coset_probs: np.ndarray
    chosen_class: tuple[str, ...]
    recovery: tuple[PauliOperator, ...]

    @property
    def success_probability(self) -> float:
        return math.fsum(self.coset_probs.max(axis=1).tolist())


def optimal_decoder(code: StabilizerCode, ch: PauliChannel) -> DecoderTable:
    """Maximum a posteriori class choice for every syndrome."""
    probs = coset_probabilities(code, ch)
    probs.setflags(write=False)
    reps = {
        "I": identity(code.n),
        "X": code.logical_x,
        "Y": multiply(code.logical_x, code.logical_z),
        "Z": code.logical_z,
    }
    chosen = []
    recovery = []
    for s in range(code.num_syndromes):
        cls = _CLASS_NAMES[int(np.argmax(probs[s]))]
        chosen.append(cls)
        recovery.append(multiply(code.pure_error(s), reps[cls]))
    return DecoderTable(code, probs, tuple(chosen), tuple(recovery))


def logical_error_rate(code: StabilizerCode, ch: PauliChannel) -> float:
    """1 - sum over syndromes of the best class mass; lies in [0, 3/4]."""
    probs = coset_probabilities(code, ch)
    return max(0.0, 1.0 - math.fsum(probs.max(axis=1).tolist()))


def _syndrome_string(s: int, num_generators: int) -> str:
    return "".join("1" if (s >> i) & 1 else "0" for i in range(num_generators))


def table_records(table: DecoderTable) -> list[dict]:
    m = len(table.code.generators)
    return [
        {
            "syndrome": _syndrome_string(s, m),
            "recovery": str(table.recovery[s]),
            "class_probs": [float(v) for v in table.coset_probs[s]],
        }
        for s in range(table.code.num_syndromes)
    ]


def save_table(table: DecoderTable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(table_records(table), f, indent=2)
        f.write("\n")


_SINGLE_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(p: PauliOperator) -> np.ndarray:
    """Dense 2**n x 2**n matrix of a Pauli, leftmost letter as first factor."""
    return reduce(np.kron, (_SINGLE_MATS[c] for c in str(p)))


def density_matrix_oracle(code: StabilizerCode, ch: PauliChannel) -> float:
    """Logical error rate recomputed by explicit Hilbert-space simulation.

    Builds the codespace projector from stabilizer projectors, then for each
    error in the channel mixture: reads the syndrome off the sign picked up
    when each generator is pushed past the error matrix, applies the
    decoder's recovery as a matrix, and judges the net logical action by its
    trace against the codespace projector (|trace| = 2**k iff the action is
    the logical identity).  Shares only the recovery table with the coset
    path, which is exactly the object under test.
    """
    _check_inputs(code, ch)
    if code.n > 7:
        raise DecoderError(f"oracle limited to n <= 7, got n={code.n}")
    table = optimal_decoder(code, ch)
    dim = 1 << code.n
    eye = np.eye(dim, dtype=complex)
    gens = [pauli_matrix(g) for g in code.generators]
    proj = eye
    for g in gens:
        proj = proj @ (eye + g) / 2
    rec_mats = [pauli_matrix(r) for r in table.recovery]
    trace_goal = float(1 << code.k)

    success_terms = []
    for idx in range(4**code.n):
        p_err = float(ch.probs[idx])
        if p_err == 0.0:
            continue
        err = pauli_matrix(from_index(code.n, idx))
        supported = err @ proj
        s = 0
        for i, g in enumerate(gens):
            flipped = g @ supported
            if np.abs(flipped - supported).max() < 1e-9:
                continue
            if np.abs(flipped + supported).max() < 1e-9:
                s |= 1 << i
            else:
                raise DecoderError("generator neither commutes nor anticommutes")
        net = rec_mats[s] @ supported
        # Tr(proj @ net) without the matrix product
        trace = (proj * net.T).sum()
        if abs(abs(trace) - trace_goal) < 1e-6:
            success_terms.append(p_err)
    return 1.0 - math.fsum(success_terms)
