"""Phaseless n-qubit Pauli operators as packed binary symplectic vectors.

An n-qubit Pauli is stored as two n-bit integers: ``x_bits`` has bit i set
iff string position i+1 carries X or Y, ``z_bits`` has bit i set iff it
carries Z or Y.  String position 1 is the leftmost letter and maps to bit 0.
Global phases are deliberately not tracked: error probabilities, syndromes
and coset membership depend only on commutation relations, which the
symplectic bits capture.

Enumeration order
-----------------
All 4**n Paulis are enumerated by an integer index whose bits interleave the
two vectors: bit 2i is x_bits[i], bit 2i+1 is z_bits[i].  Equivalently each
qubit contributes a base-4 digit ``x + 2z`` (0 = I, 1 = X, 2 = Z, 3 = Y)
with qubit 0 least significant.  Every dense probability vector in this
package is indexed in this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_TO_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}

# Popcount and its parity for a byte; n <= 8 keeps every packed vector below 256.
_POPCOUNT8 = np.array([bin(v).count("1") for v in range(256)], dtype=np.uint8)
_PARITY8 = _POPCOUNT8 & 1


@dataclass(frozen=True, slots=True)
class PauliOperator:
    """A phaseless Pauli on ``n`` qubits, packed as two n-bit integers."""

    n: int
    x_bits: int
    z_bits: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("bit-vectors exceed the qubit count")

    @property
    def index(self) -> int:
        """Position of this operator in the fixed enumeration of 4**n Paulis."""
        return interleave(self.x_bits, self.z_bits)

    def to_string(self) -> str:
        letters = []
        for i in range(self.n):
            xb = (self.x_bits >> i) & 1
            zb = (self.z_bits >> i) & 1
            letters.append(_BITS_TO_LETTER[(xb, zb)])
        return "".join(letters)

    def __str__(self) -> str:
        return self.to_string()


def from_string(s: str) -> PauliOperator:
    """Parse a Pauli letter string such as ``"XZIZXII"`` (position 1 leftmost).

    Raises:
        ValueError: on an empty string or any character outside I/X/Y/Z.
    """
    if not s:
        raise ValueError("empty Pauli string")
    x = z = 0
    for i, ch in enumerate(s):
        try:
            xb, zb = _LETTER_TO_BITS[ch]
        except KeyError:
            raise ValueError(f"invalid Pauli letter {ch!r} at position {i + 1}") from None
        x |= xb << i
        z |= zb << i
    return PauliOperator(len(s), x, z)


def identity(n: int) -> PauliOperator:
    return PauliOperator(n, 0, 0)


def from_index(n: int, index: int) -> PauliOperator:
    """Inverse of :attr:`PauliOperator.index` for the fixed enumeration."""
    if not 0 <= index < 4**n:
        raise ValueError(f"index {index} out of range for n={n}")
    x, z = deinterleave(index)
    return PauliOperator(n, x, z)


def interleave(x_bits: int, z_bits: int) -> int:
    """Pack (x, z) into the enumeration index: bit 2i = x_i, bit 2i+1 = z_i."""
    idx = 0
    i = 0
    while x_bits or z_bits:
        idx |= ((x_bits >> i) & 1) << (2 * i)
        idx |= ((z_bits >> i) & 1) << (2 * i + 1)
        x_bits &= ~(1 << i)
        z_bits &= ~(1 << i)
        i += 1
    return idx


def deinterleave(index: int) -> tuple[int, int]:
    x = z = 0
    i = 0
    while index >> (2 * i):
        x |= ((index >> (2 * i)) & 1) << i
        z |= ((index >> (2 * i + 1)) & 1) << i
        i += 1
    return x, z


def _check_same_n(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise ValueError(f"qubit count mismatch: {p.n} vs {q.n}")


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    """0 iff p and q commute, 1 iff they anticommute.

    Equals the parity of positions where the single-qubit letters differ and
    neither is I; bilinear over GF(2).
    """
    _check_same_n(p, q)
    return ((p.x_bits & q.z_bits).bit_count() + (p.z_bits & q.x_bits).bit_count()) & 1


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Phaseless product: bitwise XOR of the symplectic vectors."""
    _check_same_n(p, q)
    return PauliOperator(p.n, p.x_bits ^ q.x_bits, p.z_bits ^ q.z_bits)


def weight(p: PauliOperator) -> int:
    """Number of non-identity tensor factors."""
    return (p.x_bits | p.z_bits).bit_count()


def cyclic_shift(p: PauliOperator, k: int) -> PauliOperator:
    """Move the letter at position i to position (i + k) mod n."""
    n = p.n
    k %= n
    if k == 0:
        return p
    mask = (1 << n) - 1

    def rot(bits: int) -> int:
        return ((bits << k) | (bits >> (n - k))) & mask

    return PauliOperator(n, rot(p.x_bits), rot(p.z_bits))


def permute(p: PauliOperator, perm: "list[int] | tuple[int, ...]") -> PauliOperator:
    """Relabel qubits: the letter at position i+1 moves to position perm[i]+1.

    ``perm`` must be a permutation of 0..n-1.
    """
    if sorted(perm) != list(range(p.n)):
        raise ValueError(f"not a permutation of 0..{p.n - 1}: {perm}")
    x = z = 0
    for i, j in enumerate(perm):
        x |= ((p.x_bits >> i) & 1) << j
        z |= ((p.z_bits >> i) & 1) << j
    return PauliOperator(p.n, x, z)


@lru_cache(maxsize=None)
def enumeration_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Packed (x, z) vectors and weights for all 4**n Paulis, by index.

    Returns read-only arrays (x_bits, z_bits, weight), each of length 4**n.
    The hot loops in the decoder and search modules run on these instead of
    boxed PauliOperator values.
    """
    if n > 8:
        raise ValueError(f"dense enumeration supported for n <= 8, got {n}")
    idx = np.arange(4**n, dtype=np.uint32)
    x = np.zeros(4**n, dtype=np.uint16)
    z = np.zeros(4**n, dtype=np.uint16)
    for i in range(n):
        x |= (((idx >> (2 * i)) & 1) << i).astype(np.uint16)
        z |= (((idx >> (2 * i + 1)) & 1) << i).astype(np.uint16)
    wt = _POPCOUNT8[x | z]
    for arr in (x, z, wt):
        arr.setflags(write=False)
    return x, z, wt


def symplectic_product_all(n: int, q: PauliOperator) -> np.ndarray:
    """Symplectic product of every enumerated n-qubit Pauli with ``q``.

    Returns a uint8 array of length 4**n in enumeration order.
    """
    if q.n != n:
        raise ValueError(f"qubit count mismatch: {n} vs {q.n}")
    x, z, _ = enumeration_tables(n)
    return _PARITY8[x & q.z_bits] ^ _PARITY8[z & q.x_bits]
