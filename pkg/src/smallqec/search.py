"""Random generation of 7-qubit codes under weight and distance constraints.

Candidates are grown one generator at a time by rejection: draw a Pauli with
a random small support and random non-identity letters, keep it if it
commutes with and is independent of the accepted ones, restart the build
after too many dead ends.  A finished candidate must clear the distance
floor; retained codes are additionally re-verified by the code module's
exhaustive validator, so nothing rests on the sampler being correct.

Acceptance is rare (well under 1% of completed builds clear distance 3), so
the hot path works on packed integers with chunked random draws.  The
distance floor is applied by scanning just the Paulis lighter than the
floor for normalizer elements outside the group, which decides
distance >= min_distance exactly without deriving the code.

Determinism contract: candidate i is drawn from a fresh generator seeded by
(master_seed, i), so the ranked output is identical however the evaluation
work is scheduled, and the best rate over a sample prefix can only improve
as more samples are added.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import gf2
from .channel import PauliChannel
from .code import StabilizerCode, from_generators, generators_distance
from .decoder import logical_error_rate
from .pauli import _PARITY8, PauliOperator, enumeration_tables, interleave, weight

# give up on a partial generating set after this many rejected draws
_FAILURES_PER_BUILD = 200


class SearchError(ValueError):
    """Raised for invalid configs or exhausted sampling budgets."""


@dataclass(frozen=True, slots=True)
class SearchConfig:
    n: int = 7
    k: int = 1
    num_samples: int = 10_000
    max_generator_weight: int = 4
    min_distance: int = 3
    seed: int = 0
    dedup: bool = False
    # Draws with support 1 or 2 are allowed by the weight cap but almost
    # never survive the distance floor; they are skipped by default.
    include_low_weight: bool = False
    max_restarts: int = 100_000

    def __post_init__(self):
        if self.k != 1:
            raise SearchError(f"search requires k=1, got k={self.k}")
        if not 2 <= self.n <= 8:
            raise SearchError(f"search supports 2 <= n <= 8, got n={self.n}")
        if self.num_samples < 1:
            raise SearchError(f"num_samples must be >= 1, got {self.num_samples}")
        if self.min_distance < 1:
            raise SearchError(f"min_distance must be >= 1, got {self.min_distance}")
        if not 1 <= self.max_generator_weight <= self.n:
            raise SearchError(
                f"max_generator_weight must lie in 1..{self.n},"
                f" got {self.max_generator_weight}"
            )
        if not self.support_sizes:
            raise SearchError(
                f"no permitted support sizes: weight cap {self.max_generator_weight}"
                " needs include_low_weight=True"
            )
        if self.max_restarts < 1:
            raise SearchError(f"max_restarts must be >= 1, got {self.max_restarts}")

    @property
    def support_sizes(self) -> tuple[int, ...]:
        low = 1 if self.include_low_weight else 3
        return tuple(range(low, self.max_generator_weight + 1))


@dataclass
class RejectionStats:
    """Tallies of why candidate draws or codes were thrown away."""

    anticommuting: int = 0
    dependent: int = 0
    distance: int = 0
    duplicate: int = 0
    restarts: int = 0

    def as_dict(self) -> dict:
        return {
            "anticommuting": self.anticommuting,
            "dependent": self.dependent,
            "distance": self.distance,
            "duplicate": self.duplicate,
            "restarts": self.restarts,
        }


@lru_cache(maxsize=None)
def _supports_by_size(n: int, sizes: tuple[int, ...]) -> dict:
    return {s: tuple(combinations(range(n), s)) for s in sizes}


@lru_cache(maxsize=None)
def _light_pauli_tables(n: int, min_distance: int):
    """Bit-vectors and indices of every Pauli with 0 < weight < min_distance."""
    x_table, z_table, wt = enumeration_tables(n)
    idx = np.flatnonzero((wt >= 1) & (wt < min_distance))
    return (
        x_table[idx].astype(np.int64),
        z_table[idx].astype(np.int64),
        idx.astype(np.int64),
    )


class _CandidateStream:
    """Random Paulis drawn in bulk, with a running commutation mask.

    Candidates are consumed left to right.  `ok` marks, over the unconsumed
    portion, commutation with every generator accepted so far in the current
    build, so finding the next usable candidate is a boolean argmax instead
    of a per-draw Python loop.  Accepting a generator narrows the mask;
    starting a new build resets it.

    Distribution per candidate: support size uniform over the permitted
    sizes, support uniform among subsets of that size, letters uniform over
    X, Z, Y on the support.  Chunking only amortizes generator calls.
    """

    _CHUNK = 1024

    def __init__(self, rng: np.random.Generator, n: int, sizes: tuple[int, ...]):
        self.rng = rng
        self.n = n
        self.sizes = sizes
        supports = _supports_by_size(n, sizes)
        self._mask_tables = {
            s: np.array(
                [sum(1 << q for q in t) for t in supports[s]], dtype=np.int64
            )
            for s in sizes
        }
        self._shifts = (1 << np.arange(n)).astype(np.int64)
        self._cx = np.empty(0, dtype=np.int64)
        self._cz = np.empty(0, dtype=np.int64)
        self._ok = np.empty(0, dtype=bool)
        self._pos = 0
        self._gens: list[tuple[int, int]] = []

    def _refill(self) -> None:
        budget = self._CHUNK
        rng = self.rng
        size_choice = rng.integers(len(self.sizes), size=budget)
        masks = np.zeros(budget, dtype=np.int64)
        for si, s in enumerate(self.sizes):
            table = self._mask_tables[s]
            draws = rng.integers(len(table), size=budget)
            chosen = size_choice == si
            masks[chosen] = table[draws[chosen]]
        letters = rng.integers(1, 4, size=(budget, self.n))
        self._cx = ((letters & 1) * self._shifts).sum(axis=1) & masks
        self._cz = ((letters >> 1) * self._shifts).sum(axis=1) & masks
        self._pos = 0
        self._ok = np.ones(budget, dtype=bool)
        for gx, gz in self._gens:
            self._apply(gx, gz)

    def _apply(self, gx: int, gz: int) -> None:
        tail = slice(self._pos, None)
        anti = _PARITY8[self._cx[tail] & gz] ^ _PARITY8[self._cz[tail] & gx]
        self._ok[tail] &= anti == 0

    def new_build(self) -> None:
        self._gens = []
        self._ok[self._pos :] = True

    def accept(self, gx: int, gz: int) -> None:
        self._gens.append((gx, gz))
        self._apply(gx, gz)

    def next_commuting(self) -> tuple[int, int, int]:
        """Next candidate commuting with the accepted set.

        Returns (x, z, skipped), where skipped counts the anticommuting
        candidates passed over (and consumed) on the way.
        """
        skipped = 0
        while True:
            if self._pos >= self._cx.size:
                self._refill()
            tail = self._ok[self._pos :]
            rel = int(np.argmax(tail))
            if not tail[rel]:
                skipped += tail.size
                self._pos = self._cx.size
                continue
            pos = self._pos + rel
            skipped += rel
            self._pos = pos + 1
            return int(self._cx[pos]), int(self._cz[pos]), skipped


def _breaks_distance_floor(
    n: int, gens_x: list[int], gens_z: list[int], light
) -> bool:
    """True iff some Pauli lighter than the floor is a nontrivial logical."""
    light_x, light_z, light_idx = light
    if light_idx.size == 0:
        return False
    anticommutes = np.zeros(light_idx.size, dtype=np.uint8)
    for gx, gz in zip(gens_x, gens_z):
        anticommutes |= _PARITY8[light_x & gz] ^ _PARITY8[light_z & gx]
    commuting = np.flatnonzero(anticommutes == 0)
    if commuting.size == 0:
        return False
    group = {0}
    for gx, gz in zip(gens_x, gens_z):
        gidx = interleave(gx, gz)
        group |= {member ^ gidx for member in group}
    return any(int(light_idx[c]) not in group for c in commuting)


def random_code(
    rng: np.random.Generator,
    config: SearchConfig,
    stats: RejectionStats | None = None,
) -> StabilizerCode:
    """One constrained random code; deterministic given the generator state."""
    if stats is None:
        stats = RejectionStats()
    n = config.n
    needed = n - config.k
    light = _light_pauli_tables(n, config.min_distance)
    stream = _CandidateStream(rng, n, config.support_sizes)
    for _ in range(config.max_restarts):
        stream.new_build()
        gens_x: list[int] = []
        gens_z: list[int] = []
        basis: list[int] = []  # reduced symplectic rows, descending
        failures = 0
        while len(gens_x) < needed and failures < _FAILURES_PER_BUILD:
            x, z, skipped = stream.next_commuting()
            stats.anticommuting += skipped
            failures += skipped
            row = (x << n) | z
            for member in basis:
                reduced = row ^ member
                if reduced < row:
                    row = reduced
            if row == 0:
                stats.dependent += 1
                failures += 1
                continue
            basis.append(row)
            basis.sort(reverse=True)
            gens_x.append(x)
            gens_z.append(z)
            stream.accept(x, z)
        if len(gens_x) < needed:
            stats.restarts += 1
            continue
        if _breaks_distance_floor(n, gens_x, gens_z, light):
            stats.distance += 1
            stats.restarts += 1
            continue
        return from_generators(
            [PauliOperator(n, x, z) for x, z in zip(gens_x, gens_z)]
        )
    raise SearchError(
        f"no code satisfying the constraints in {config.max_restarts} restarts"
    )


def canonical_form(code: StabilizerCode) -> str:
    """Group fingerprint: hex rows of the reduced symplectic generator matrix.

    Any generating set of the same stabilizer group reduces to the same
    row-echelon basis, so equality of fingerprints is group equality.
    """
    rows = gf2.rref([(g.x_bits << code.n) | g.z_bits for g in code.generators])
    return "-".join(format(r, "x") for r in rows)


def verify_constraints(code: StabilizerCode, config: SearchConfig) -> None:
    """Independent re-check of everything the sampler promises.

    Runs the code module's structural validator, the weight cap, and the
    exhaustive distance scan; raises on any violation.
    """
    code.validate()
    if code.n != config.n or code.k != config.k:
        raise SearchError(f"code shape [[{code.n},{code.k}]] does not match the config")
    for i, g in enumerate(code.generators):
        if weight(g) > config.max_generator_weight:
            raise SearchError(
                f"generator {i + 1} has weight {weight(g)}"
                f" > cap {config.max_generator_weight}"
            )
    d = generators_distance(code.n, code.generators)
    if d < config.min_distance:
        raise SearchError(f"distance {d} below the floor {config.min_distance}")


def channel_fingerprint(ch: PauliChannel) -> int:
    """Stable 64-bit digest of a channel's exact probability vector."""
    digest = hashlib.sha256(ch.probs.tobytes()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True, eq=False)
class SearchResult:
    config: SearchConfig
    ranked: tuple[tuple[StabilizerCode, float], ...]
    rejections: RejectionStats

    @property
    def best_code(self) -> StabilizerCode:
        return self.ranked[0][0]

    @property
    def best_rate(self) -> float:
        return self.ranked[0][1]


def run_search(
    config: SearchConfig,
    ch: PauliChannel,
    redraw_per_channel: bool = False,
) -> SearchResult:
    """Sample, constrain, evaluate, and rank num_samples codes.

    By default the candidate pool depends only on (seed, index), so running
    the same seed against several channels re-ranks one fixed pool.  With
    redraw_per_channel the channel's fingerprint is mixed into every
    candidate seed, giving an independent pool per channel.
    """
    if ch.n != config.n:
        raise SearchError(f"channel n={ch.n} does not match config n={config.n}")
    stats = RejectionStats()
    salt = (channel_fingerprint(ch),) if redraw_per_channel else ()
    seen: set[str] = set()
    evaluated: list[tuple[StabilizerCode, float]] = []
    for index in range(config.num_samples):
        rng = np.random.default_rng((config.seed, *salt, index))
        code = random_code(rng, config, stats)
        if config.dedup:
            fingerprint = canonical_form(code)
            if fingerprint in seen:
                stats.duplicate += 1
                continue
            seen.add(fingerprint)
        verify_constraints(code, config)
        evaluated.append((code, logical_error_rate(code, ch)))
    ranked = tuple(sorted(evaluated, key=lambda pair: pair[1]))
    return SearchResult(config, ranked, stats)


def result_records(result: SearchResult) -> list[dict]:
    return [
        {
            "rank": i + 1,
            "generators": [str(g) for g in code.generators],
            "logical_error_rate": rate,
            "fingerprint": canonical_form(code),
        }
        for i, (code, rate) in enumerate(result.ranked)
    ]


def save_result(result: SearchResult, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(result_records(result), f, indent=2)
        f.write("\n")
