"""Exhaustive search for uniform rank-3 intermediates on six elements.

A factorizable corank-2 strong map from the rank-4 alternating instance to
the rank-2 pair-swap instance would pass through a uniform rank-3 oriented
matroid whose tope set is wedged strictly between the two: 16 canonical
topes containing all 6 of the target's and drawn from the source's 26. The
search enumerates all C(20, 10) = 184,756 ways to pick the 10 free topes,
keeps the candidates that satisfy the uniform tope-set axioms, and records
for each survivor the avoided-pattern witnesses, the two named excluded
topes, and the two circuits every survivor is forced to share.

The hot loop runs on precomputed bitmasks: one byte per 4-subset holding
which of its 8 canonical restriction patterns a tope produces. A candidate
fails exactly when some 4-subset's byte saturates (all 8 patterns hit), so
the check is a handful of shifts per combination. Survivors are re-verified
through the ordinary axiom checker, which also yields the witnesses.

Enumeration order is the lexicographic order of index combinations; worker
chunks are contiguous rank ranges merged in order, so the certificate is
identical for every thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .matroid import (
    TopeSet,
    alternating_chirotope,
    check_uniform_tope_axioms,
    circuit_on_support,
    pair_swap_chirotope,
    topes_of,
)
from .signed_vector import SignedVector


class VerificationError(Exception):
    """A mathematical check that the certificates rely on did not hold."""


SEARCH_N = 6
SEARCH_RANK = 3
CIRCUIT_SUPPORTS = ((1, 2, 3, 4), (1, 2, 5, 6))
FORCED_CIRCUITS = ("+-+-00", "+-00-+")
EXCLUDED_TOPES = ("+-+---", "+----+")


@dataclass(frozen=True)
class SearchInstance:
    """Frozen input of the search: base topes that every candidate must keep
    and the ordered pool the free picks come from."""

    n: int
    rank: int
    choose: int
    base: tuple[SignedVector, ...]
    pool: tuple[SignedVector, ...]

    @property
    def combination_count(self) -> int:
        return math.comb(len(self.pool), self.choose)


@dataclass(frozen=True)
class SurvivorRecord:
    """One candidate that passed the uniform tope-set axioms."""

    topes: tuple[SignedVector, ...]
    vc_witnesses: tuple[tuple[tuple[int, ...], SignedVector], ...]
    excluded_absent: tuple[tuple[str, bool], ...]
    circuits: tuple[tuple[tuple[int, ...], SignedVector], ...]

    def circuit_map(self) -> dict[tuple[int, ...], SignedVector]:
        return dict(self.circuits)

    def tope_strings(self) -> tuple[str, ...]:
        return tuple(str(t) for t in self.topes)

    def tope_set(self) -> TopeSet:
        return TopeSet(self.topes[0].n, SEARCH_RANK, frozenset(self.topes))


@dataclass(frozen=True)
class SearchCertificate:
    """Full record of one exhaustive run: every combination counted, every
    survivor listed in enumeration order, and the circuit pair they share."""

    instance: SearchInstance
    combinations_checked: int
    survivors: tuple[SurvivorRecord, ...]
    conclusion_circuits: tuple[SignedVector, SignedVector]


def build_search_instance() -> SearchInstance:
    """Base = target topes, pool = the 20 remaining source topes, fixed order."""
    source = topes_of(alternating_chirotope(SEARCH_N, 4))
    target = topes_of(pair_swap_chirotope(SEARCH_N))
    if not target.topes <= source.topes:
        raise RuntimeError("target topes escaped the source tope set; generation bug")
    base = tuple(sorted(target.topes, key=SignedVector.order_key))
    pool = tuple(sorted(source.topes - target.topes, key=SignedVector.order_key))
    if len(base) != 6 or len(pool) != 20:
        raise RuntimeError(
            f"unexpected instance sizes: base={len(base)}, pool={len(pool)}; generation bug"
        )
    return SearchInstance(n=SEARCH_N, rank=SEARCH_RANK, choose=10, base=base, pool=pool)


# ----------------------------------------------------------------------
# combination rank plumbing (lexicographic, 0-based elements)
# ----------------------------------------------------------------------


def unrank_combination(rank: int, n: int, k: int) -> list[int]:
    """The k-combination of {0..n-1} at the given lexicographic rank."""
    if not 0 <= rank < math.comb(n, k):
        raise ValueError(f"rank {rank} outside 0..C({n},{k})-1")
    combo = []
    x = 0
    for i in range(k):
        while True:
            c = math.comb(n - x - 1, k - i - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        combo.append(x)
        x += 1
    return combo


def advance_combination(combo: list[int], n: int) -> bool:
    """Step to the lexicographic successor in place; False at the last one."""
    k = len(combo)
    i = k - 1
    while i >= 0 and combo[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    combo[i] += 1
    for j in range(i + 1, k):
        combo[j] = combo[j - 1] + 1
    return True


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------

_QUADS = tuple(combinations(range(1, SEARCH_N + 1), SEARCH_RANK + 1))


def _pattern_byte_mask(vec: SignedVector) -> int:
    """One byte per 4-subset: the bit of the canonical pattern this tope's
    restriction produces there. ORing tope masks accumulates hit patterns."""
    s = str(vec)
    mask = 0
    for qi, q in enumerate(_QUADS):
        flip = s[q[0] - 1] == "-"
        pid = 0
        for j in range(1, 4):
            if (s[q[j] - 1] == "-") != flip:
                pid |= 1 << (j - 1)
        mask |= 1 << (qi * 8 + pid)
    return mask


def _scan_rank_range(
    pool_masks: list[int], base_mask: int, lo: int, hi: int, npool: int, choose: int
) -> list[tuple[int, ...]]:
    """Check combination ranks [lo, hi); return passing index tuples in order.

    A candidate passes the avoided-pattern condition at every 4-subset iff no
    byte of the ORed mask saturates at 0xFF.
    """
    hits: list[tuple[int, ...]] = []
    if lo >= hi:
        return hits
    combo = unrank_combination(lo, npool, choose)
    span = range(0, len(_QUADS) * 8, 8)
    for _ in range(hi - lo):
        m = base_mask
        for i in combo:
            m |= pool_masks[i]
        for off in span:
            if (m >> off) & 0xFF == 0xFF:
                break
        else:
            hits.append(tuple(combo))
        advance_combination(combo, npool)
    return hits


def passes_pattern_check(instance: SearchInstance, picks: tuple[int, ...]) -> bool:
    """Bitmask verdict for a single pool-index selection (test hook for
    cross-checking against the ordinary axiom checker)."""
    base_mask = 0
    for t in instance.base:
        base_mask |= _pattern_byte_mask(t)
    m = base_mask
    for i in picks:
        m |= _pattern_byte_mask(instance.pool[i])
    return all((m >> off) & 0xFF != 0xFF for off in range(0, len(_QUADS) * 8, 8))


def _survivor_record(instance: SearchInstance, picks: tuple[int, ...]) -> SurvivorRecord:
    members = frozenset(instance.base) | {instance.pool[i] for i in picks}
    tope_set = TopeSet(instance.n, instance.rank, members)
    report = check_uniform_tope_axioms(tope_set)
    if not report.passed:
        raise RuntimeError(f"mask scan and axiom checker disagree on picks {picks}")
    strings = {str(t) for t in members}
    return SurvivorRecord(
        topes=tope_set.ordered(),
        vc_witnesses=report.witnesses,
        excluded_absent=tuple((t, t not in strings) for t in EXCLUDED_TOPES),
        circuits=tuple((q, circuit_on_support(tope_set, q)) for q in CIRCUIT_SUPPORTS),
    )


def enumerate_survivors(instance: SearchInstance, threads: int = 1) -> SearchCertificate:
    """Run the full enumeration and assemble the certificate.

    Threads only split the combination-rank range into contiguous chunks;
    chunk results are merged in rank order, so the output is independent of
    the thread count.
    """
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    npool = len(instance.pool)
    total = instance.combination_count
    base_mask = 0
    for t in instance.base:
        base_mask |= _pattern_byte_mask(t)
    pool_masks = [_pattern_byte_mask(t) for t in instance.pool]

    if threads == 1:
        hit_lists = [_scan_rank_range(pool_masks, base_mask, 0, total, npool, instance.choose)]
    else:
        bounds = [total * i // threads for i in range(threads + 1)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(
                    _scan_rank_range, pool_masks, base_mask, lo, hi, npool, instance.choose
                )
                for lo, hi in zip(bounds, bounds[1:])
            ]
            hit_lists = [f.result() for f in futures]

    survivors = tuple(
        _survivor_record(instance, picks) for chunk in hit_lists for picks in chunk
    )
    if not survivors:
        raise VerificationError("no survivors found; the search instance is corrupt")
    return SearchCertificate(
        instance=instance,
        combinations_checked=total,
        survivors=survivors,
        conclusion_circuits=(survivors[0].circuits[0][1], survivors[0].circuits[1][1]),
    )


def verify_search_conclusions(cert: SearchCertificate) -> bool:
    """Check on every survivor: the two named topes are absent and the two
    circuits equal the forced pair. Raises naming the offending survivor."""
    expected = {
        q: SignedVector.parse(c) for q, c in zip(CIRCUIT_SUPPORTS, FORCED_CIRCUITS)
    }
    for idx, survivor in enumerate(cert.survivors):
        strings = set(survivor.tope_strings())
        for tope, absent in survivor.excluded_absent:
            if not absent or tope in strings:
                raise VerificationError(f"survivor {idx}: excluded tope {tope} present")
        circuit_map = survivor.circuit_map()
        for q, want in expected.items():
            got = circuit_map.get(q)
            if got != want:
                raise VerificationError(
                    f"survivor {idx}: circuit on {q} is {got}, expected {want}"
                )
    if tuple(str(c) for c in cert.conclusion_circuits) != FORCED_CIRCUITS:
        raise VerificationError("conclusion circuits disagree with the forced pair")
    return True
