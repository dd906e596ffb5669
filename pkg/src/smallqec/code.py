"""Stabilizer codes: construction, validation, syndromes and brute-force distance.

A code is held as its generator list plus derived data: one logical X/Z pair
(k = 1 throughout the workbench) and one destabilizer per generator.  All
derivations are exact and exhaustive, which is cheap for n <= 8.

Conventions fixed here and relied on elsewhere:

* syndrome bit i of an error E is the symplectic product of E with
  generator i; bit 0 (leftmost in string form) is the first generator.
* destabilizer i is the minimum-weight Pauli whose syndrome is the i-th
  standard basis vector, ties broken by enumeration index.  Products of
  destabilizers give the canonical pure error for each syndrome.
* logical representatives are minimum-weight normalizer elements outside
  the stabilizer group, ties broken by enumeration index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import gf2
from .pauli import (
    PauliOperator,
    enumeration_tables,
    from_index,
    from_string,
    identity,
    multiply,
    symplectic_product,
    symplectic_product_all,
    weight,
)


class CodeError(ValueError):
    """Raised when a generator set does not define a usable stabilizer code."""


@dataclass(frozen=True, slots=True)
class StabilizerCode:
    """An [[n, k]] stabilizer code with chosen logical and destabilizer data.

    Instances are immutable; build them with :func:`from_generators` or the
    named constructors rather than directly.
    """

    n: int
    generators: tuple[PauliOperator, ...]
    logical_x: PauliOperator
    logical_z: PauliOperator
    destabilizers: tuple[PauliOperator, ...]
    label: str = ""

    @property
    def k(self) -> int:
        return self.n - len(self.generators)

    @property
    def num_syndromes(self) -> int:
        return 1 << len(self.generators)

    def syndrome(self, error: PauliOperator) -> np.ndarray:
        """Bit-vector of commutation outcomes against each generator."""
        if error.n != self.n:
            raise ValueError(f"qubit count mismatch: {error.n} vs {self.n}")
        return np.array(
            [symplectic_product(error, g) for g in self.generators], dtype=np.uint8
        )

    def syndrome_int(self, error: PauliOperator) -> int:
        """Syndrome packed as an integer, bit i = generator i."""
        s = 0
        for i, g in enumerate(self.generators):
            s |= symplectic_product(error, g) << i
        return s

    def pure_error(self, syndrome: int) -> PauliOperator:
        """Canonical error for a packed syndrome: the destabilizer product."""
        t = identity(self.n)
        for i, d in enumerate(self.destabilizers):
            if (syndrome >> i) & 1:
                t = multiply(t, d)
        return t

    def logical_class(self, error: PauliOperator) -> str:
        """Which logical coset the error belongs to: "I", "X", "Y" or "Z".

        The error times the canonical pure error for its syndrome commutes
        with every generator; its commutation with the chosen logical Z and X
        representatives picks the coset.
        """
        if error.n != self.n:
            raise ValueError(f"qubit count mismatch: {error.n} vs {self.n}")
        normalized = multiply(error, self.pure_error(self.syndrome_int(error)))
        a = symplectic_product(normalized, self.logical_z)
        b = symplectic_product(normalized, self.logical_x)
        return {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(a, b)]

    def stabilizer_group_indices(self) -> np.ndarray:
        """Enumeration indices of all 2**(n-k) stabilizer group elements."""
        span = np.zeros(1, dtype=np.int64)
        for g in self.generators:
            span = np.concatenate([span, span ^ g.index])
        return span

    def syndromes_all(self) -> np.ndarray:
        """Packed syndromes of every enumerated Pauli, in enumeration order."""
        out = np.zeros(4**self.n, dtype=np.uint16)
        for i, g in enumerate(self.generators):
            out |= symplectic_product_all(self.n, g).astype(np.uint16) << i
        return out

    def validate(self) -> None:
        """Re-check every structural invariant; raises CodeError on failure.

        Independent of how the instance was built, so the random-code search
        can use it as an external check.  Verifies pairwise commutation,
        generator independence, logical commutation relations, stabilizer
        non-membership of the logicals, and destabilizer syndromes.
        """
        _check_generators(self.n, self.generators)
        for name, L in (("logical_x", self.logical_x), ("logical_z", self.logical_z)):
            for i, g in enumerate(self.generators):
                if symplectic_product(L, g):
                    raise CodeError(f"{name} anticommutes with generator {i + 1}")
        if symplectic_product(self.logical_x, self.logical_z) != 1:
            raise CodeError("logical_x and logical_z must anticommute")
        group = set(self.stabilizer_group_indices().tolist())
        if self.logical_x.index in group or self.logical_z.index in group:
            raise CodeError("a logical representative lies in the stabilizer group")
        if len(self.destabilizers) != len(self.generators):
            raise CodeError("destabilizer count must match generator count")
        for i, d in enumerate(self.destabilizers):
            if self.syndrome_int(d) != (1 << i):
                raise CodeError(f"destabilizer {i + 1} has the wrong syndrome")

    def to_dict(self) -> dict:
        d = {"n": self.n, "generators": [str(g) for g in self.generators]}
        if self.label:
            d["label"] = self.label
        return d

    def __str__(self) -> str:
        name = self.label or "code"
        return f"{name}[[{self.n},{self.k}]]"


def _check_generators(n: int, generators: tuple[PauliOperator, ...]) -> None:
    for i, g in enumerate(generators):
        if g.n != n:
            raise CodeError(f"generator {i + 1} acts on {g.n} qubits, expected {n}")
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            if symplectic_product(generators[i], generators[j]):
                raise CodeError(f"generators {i + 1} and {j + 1} anticommute")
    rows = [_symplectic_row(g) for g in generators]
    dep = gf2.first_dependency(rows)
    if dep is not None:
        i, members = dep
        combo = " * ".join(f"g{j + 1}" for j in members) or "identity"
        raise CodeError(f"generator {i + 1} is dependent: equals {combo}")


def _symplectic_row(p: PauliOperator) -> int:
    return (p.x_bits << p.n) | p.z_bits


def from_generators(
    generators: "list[PauliOperator | str]", label: str = ""
) -> StabilizerCode:
    """Build and fully derive a single-logical-qubit code from its generators.

    Validates commutation and GF(2) independence, then derives minimum-weight
    destabilizers and logical representatives by exhaustive scan.

    Raises:
        CodeError: on an empty list, mismatched qubit counts, an
            anticommuting pair (named by indices), a dependent generator
            (with the dependency), or k != 1.
    """
    if not generators:
        raise CodeError("generator list must be non-empty")
    gens = tuple(from_string(g) if isinstance(g, str) else g for g in generators)
    n = gens[0].n
    _check_generators(n, gens)
    k = n - len(gens)
    if k != 1:
        raise CodeError(f"expected one logical qubit, got k={k} (n={n}, {len(gens)} generators)")
    return _derive(n, gens, label)


def trivial(n: int = 1) -> StabilizerCode:
    """The zero-generator code: every Pauli is a logical operator."""
    lx = PauliOperator(n, 1, 0)
    lz = PauliOperator(n, 0, 1)
    return StabilizerCode(n, (), lx, lz, (), label="trivial")


def _derive(n: int, gens: tuple[PauliOperator, ...], label: str) -> StabilizerCode:
    _, _, wt = enumeration_tables(n)
    synd = _syndromes_all(n, gens)

    destabs = []
    for i in range(len(gens)):
        cands = np.flatnonzero(synd == (1 << i))
        order = np.argsort(wt[cands], kind="stable")
        destabs.append(from_index(n, int(cands[order[0]])))

    lx, lz = _derive_logicals(n, gens, synd, wt)
    return StabilizerCode(n, gens, lx, lz, tuple(destabs), label=label)


def _syndromes_all(n: int, gens: tuple[PauliOperator, ...]) -> np.ndarray:
    out = np.zeros(4**n, dtype=np.uint16)
    for i, g in enumerate(gens):
        out |= symplectic_product_all(n, g).astype(np.uint16) << i
    return out


def _derive_logicals(
    n: int,
    gens: tuple[PauliOperator, ...],
    synd: np.ndarray,
    wt: np.ndarray,
) -> tuple[PauliOperator, PauliOperator]:
    """Minimum-weight logical pair, ties broken by enumeration index.

    The first representative found is paired with the first minimum-weight
    normalizer element that anticommutes with it.  Which of the two is called
    X and which Z is decided by their letter content: the one with more
    Z-type than X-type letters becomes the logical Z.  For CSS codes this
    reproduces the usual convention; for self-dual-looking pairs the tie
    falls to the first-found element being X.
    """
    in_group = np.zeros(4**n, dtype=bool)
    in_group[_group_indices(gens)] = True
    cands = np.flatnonzero((synd == 0) & ~in_group)
    order = np.argsort(wt[cands], kind="stable")
    cands = cands[order]
    first = from_index(n, int(cands[0]))

    anti = symplectic_product_all(n, first)
    for idx in cands[1:]:
        if anti[idx]:
            partner = from_index(n, int(idx))
            break
    else:
        raise CodeError("no anticommuting logical partner found")

    def z_excess(p: PauliOperator) -> int:
        return p.z_bits.bit_count() - p.x_bits.bit_count()

    if z_excess(partner) >= z_excess(first):
        return first, partner
    return partner, first


def _group_indices(gens: tuple[PauliOperator, ...]) -> np.ndarray:
    span = np.zeros(1, dtype=np.int64)
    for g in gens:
        span = np.concatenate([span, span ^ g.index])
    return span


def generators_distance(n: int, gens: "tuple[PauliOperator, ...]") -> int:
    """Distance straight from a generating set, skipping full code derivation.

    Lets the random search reject low-distance candidates before paying for
    destabilizers and logicals.  Exhaustive over all 4**n Paulis; n <= 8.
    """
    if n > 8:
        raise ValueError(f"exhaustive distance scan limited to n <= 8, got {n}")
    _, _, wt = enumeration_tables(n)
    synd = _syndromes_all(n, gens)
    in_group = np.zeros(4**n, dtype=bool)
    in_group[_group_indices(gens)] = True
    logicals = (synd == 0) & ~in_group
    if not logicals.any():
        raise CodeError("no logical operators: the group is all of the normalizer")
    return int(wt[logicals].min())


def distance(code: StabilizerCode) -> int:
    """Minimum weight of a normalizer element outside the stabilizer group.

    Exhaustive over all 4**n Paulis; requires k = 1 and n <= 8.
    """
    if code.k != 1:
        raise ValueError(f"distance requires k=1, got k={code.k}")
    return generators_distance(code.n, code.generators)


# Generators as published: three X-type parity rows, then the same with Z.
_STEANE_GENERATORS = (
    "XIXIXIX",
    "IXXIIXX",
    "IIIXXXX",
    "ZIZIZIZ",
    "IZZIIZZ",
    "IIIZZZZ",
)


def steane() -> StabilizerCode:
    """The [[7,1,3]] self-dual CSS code with weight-4 generators."""
    return from_generators(list(_STEANE_GENERATORS), label="steane")


def cyclic7() -> StabilizerCode:
    """The [[7,1,3]] cyclic code generated by shifts of XZIZXII.

    The seven cyclic shifts have rank six; shifts 0..5 are taken as the
    generating set.  Any six of the seven generate the same group.
    """
    from .pauli import cyclic_shift

    base = from_string("XZIZXII")
    return from_generators([cyclic_shift(base, i) for i in range(6)], label="cyclic7")


def five_qubit() -> StabilizerCode:
    """The perfect [[5,1,3]] code: cyclic shifts of XZIZX."""
    from .pauli import cyclic_shift

    base = from_string("XZIZX")
    return from_generators([cyclic_shift(base, i) for i in range(4)], label="five_qubit")


def phase_flip3() -> StabilizerCode:
    """Three-qubit repetition code protecting against Z errors; distance 1."""
    return from_generators(["XXI", "IXX"], label="phase_flip3")


BUILTIN_CODES = {
    "steane": steane,
    "cyclic7": cyclic7,
    "five_qubit": five_qubit,
    "phase_flip3": phase_flip3,
    "trivial": trivial,
}


def load_code(path: str) -> StabilizerCode:
    """Read the textual code format: {"n": 7, "generators": [...], "label": ...}."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    try:
        n = data["n"]
        gens = data["generators"]
    except (TypeError, KeyError) as exc:
        raise CodeError(f"{path}: missing required field {exc}") from None
    code = from_generators(list(gens), label=data.get("label", ""))
    if code.n != n:
        raise CodeError(f"{path}: declared n={n} but generators act on {code.n} qubits")
    return code


def resolve_code(name_or_path: str) -> StabilizerCode:
    """Map a CLI argument to a code: a built-in name or a path to a code file."""
    if name_or_path in BUILTIN_CODES:
        return BUILTIN_CODES[name_or_path]()
    import os

    if os.path.exists(name_or_path):
        return load_code(name_or_path)
    raise CodeError(
        f"unknown code {name_or_path!r}: not a built-in ({', '.join(sorted(BUILTIN_CODES))}) "
        "and no such file"
    )
