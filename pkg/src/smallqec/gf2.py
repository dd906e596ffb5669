"""Row operations on GF(2) matrices packed as integers.

Rows are plain Python ints; bit j of a row is column j.  Column 0 is the
least significant bit.  These helpers back stabilizer-group rank checks,
dependency reporting and the canonical fingerprint used for deduplication.
"""

from __future__ import annotations


def rank(rows: list[int]) -> int:
    """Rank over GF(2) of the matrix with the given packed rows."""
    return len(rref(rows))


def rref(rows: list[int]) -> list[int]:
    """Reduced row-echelon form, zero rows dropped.

    Pivots are chosen from the highest set bit downwards, so the output is a
    canonical basis of the row space: two row sets span the same space iff
    their rrefs are equal as sorted lists.
    """
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis = [min(b, b ^ row) for b in basis]
            basis.append(row)
    return sorted(basis, reverse=True)


def first_dependency(rows: list[int]) -> tuple[int, list[int]] | None:
    """Index of the first row dependent on earlier ones, with the combination.

    Returns (i, combo) where rows[i] equals the XOR of rows[j] for j in combo,
    or None when all rows are independent.
    """
    # Augment each reduced row with the combination of inputs that produced it.
    basis: list[tuple[int, int]] = []
    for i, row in enumerate(rows):
        combo = 1 << i
        for b, bc in basis:
            if min(row, row ^ b) != row:
                row ^= b
                combo ^= bc
        if row == 0:
            members = [j for j in range(i) if (combo >> j) & 1]
            return i, members
        basis.append((row, combo))
        basis.sort(reverse=True)
    return None


def solve(rows: list[int], rhs: list[int]) -> int | None:
    """One solution x of the GF(2) system rows[i] . x = rhs[i], or None.

    The dot product is bitwise-AND followed by parity.  Free variables are
    fixed to zero, so the returned solution is deterministic.
    """
    if len(rows) != len(rhs):
        raise ValueError("rows and rhs lengths differ")
    # Gauss-Jordan on the augmented system; pivot rows are kept mutually
    # reduced so elimination order never reintroduces a pivot bit.
    pivots: dict[int, tuple[int, int]] = {}  # pivot bit -> (row, rhs bit)
    for row, b in zip(rows, rhs):
        b &= 1
        for pbit in sorted(pivots, reverse=True):
            if (row >> pbit) & 1:
                prow, pb = pivots[pbit]
                row ^= prow
                b ^= pb
        if row == 0:
            if b:
                return None
            continue
        new_bit = row.bit_length() - 1
        for pbit, (prow, pb) in list(pivots.items()):
            if (prow >> new_bit) & 1:
                pivots[pbit] = (prow ^ row, pb ^ b)
        pivots[new_bit] = (row, b)
    # In full reduced form each equation reads x_pbit (+ free bits) = rhs;
    # free variables are set to zero.
    x = 0
    for pbit, (_, pb) in pivots.items():
        x |= pb << pbit
    return x
