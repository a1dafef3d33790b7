"""Chirotopes of small oriented matroids and the sign-vector data derived from them.

The chirotope is the authoritative definition of every instance here; topes,
cocircuits and covectors are derived from it:

  chirotope --(per (r-1)-subset sign reads)--> cocircuits
  cocircuits --(composition closure)--> topes
  topes --(composition membership test)--> covectors

Two instance families are built directly: the alternating chirotope (all
ascending r-tuples positive, realized by points on the moment curve) and the
rank-2 chirotope induced by the permutation swapping adjacent pairs
(1 2)(3 4)..., realized by points on a line listed in swapped order.

Only uniform chirotopes are supported by the cocircuit reader; everything
downstream enumerates explicitly, so ground sets are expected to stay small
(n <= 8 for the shipped instances, hard guards well above that).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .signed_vector import SignedVector

# largest ground set for which covectors are enumerated (3**n candidates)
_COVECTOR_ENUM_LIMIT = 10

# cap on stored axiom violations; counts past the cap are not recorded
_VIOLATION_CAP = 32


def phi(r: int, n: int) -> int:
    """Partial binomial sum: number of subsets of an n-set of size at most r."""
    if r < 0 or n < 0 or r > n:
        raise ValueError(f"phi requires 0 <= r <= n, got r={r}, n={n}")
    return sum(math.comb(n, i) for i in range(r + 1))


def canonical_tope_count(n: int, r: int) -> int:
    """Expected number of canonical topes of a rank-r oriented matroid on n elements."""
    return phi(r - 1, n - 1)


def _subset_rank(tup: tuple[int, ...], n: int) -> int:
    """Lexicographic rank of a sorted k-subset of 1..n among all sorted k-subsets."""
    rank = 0
    prev = 0
    k = len(tup)
    for i, t in enumerate(tup):
        for x in range(prev + 1, t):
            rank += math.comb(n - x, k - i - 1)
        prev = t
    return rank


def _sort_with_parity(seq: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sort a short tuple, returning (permutation sign, sorted tuple)."""
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


@dataclass(frozen=True, eq=False)
class Chirotope:
    """Rank-r alternating sign map, stored on sorted r-subsets in lex order.

    ``values[i]`` is the sign of the i-th sorted r-subset of 1..n. Values on
    arbitrary tuples are derived by alternation. A chirotope and its global
    negation denote the same oriented matroid, so equality and hashing
    identify the two.
    """

    n: int
    r: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.r <= self.n:
            raise ValueError(f"rank must be within 1..{self.n}, got {self.r}")
        expected = math.comb(self.n, self.r)
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} stored values, got {len(self.values)}")
        if any(v not in (-1, 0, 1) for v in self.values):
            raise ValueError("chirotope values must lie in {-1, 0, 1}")
        if not any(self.values):
            raise ValueError("chirotope must not be identically zero")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chirotope):
            return NotImplemented
        if (self.n, self.r) != (other.n, other.r):
            return False
        if self.values == other.values:
            return True
        return self.values == tuple(-v for v in other.values)

    def __hash__(self) -> int:
        vals = self.values
        for v in vals:
            if v:
                if v < 0:
                    vals = tuple(-x for x in vals)
                break
        return hash((self.n, self.r, vals))

    def value_sorted(self, tup: tuple[int, ...]) -> int:
        """Stored sign of a strictly increasing r-tuple."""
        return self.values[_subset_rank(tup, self.n)]

    def value(self, tup: Iterable[int]) -> int:
        """Sign of an arbitrary r-tuple, via alternation; 0 on repeated entries."""
        tup = tuple(tup)
        if len(tup) != self.r:
            raise ValueError(f"expected an {self.r}-tuple, got {tup}")
        for t in tup:
            if not 1 <= t <= self.n:
                raise ValueError(f"element {t} outside 1..{self.n}")
        if len(set(tup)) != self.r:
            return 0
        sign, stup = _sort_with_parity(tup)
        return sign * self.value_sorted(stup)

    def is_uniform(self) -> bool:
        return all(v != 0 for v in self.values)

    # ------------------------------------------------------------------
    # minors
    # ------------------------------------------------------------------

    def restrict(self, keep: tuple[int, ...] | list[int]) -> Chirotope:
        """Deletion of everything outside ``keep``, relabeled to 1..len(keep).

        The rank must survive: some r-subset of ``keep`` must carry a nonzero
        sign, otherwise the restriction is rejected.
        """
        keep = tuple(keep)
        prev = 0
        for e in keep:
            if not prev < e <= self.n:
                raise ValueError(f"keep must be strictly increasing within 1..{self.n}, got {keep}")
            prev = e
        if len(keep) < self.r:
            raise ValueError(f"cannot keep {len(keep)} elements at rank {self.r}")
        vals = tuple(
            self.value_sorted(tuple(keep[i - 1] for i in combo))
            for combo in combinations(range(1, len(keep) + 1), self.r)
        )
        if not any(vals):
            raise ValueError(f"restriction to {keep} drops the rank below {self.r}")
        return Chirotope(len(keep), self.r, vals)

    def contract(self, u: int) -> Chirotope:
        """Contraction of a single non-loop element, relabeled to 1..n-1."""
        if not 1 <= u <= self.n:
            raise ValueError(f"element {u} outside 1..{self.n}")
        if self.r < 2:
            raise ValueError("cannot contract at rank 1")
        remaining = [e for e in range(1, self.n + 1) if e != u]
        vals = tuple(
            self.value((u,) + tuple(remaining[i - 1] for i in combo))
            for combo in combinations(range(1, self.n), self.r - 1)
        )
        if not any(vals):
            raise ValueError(f"element {u} is a loop; contraction would be identically zero")
        return Chirotope(self.n - 1, self.r - 1, vals)

    # ------------------------------------------------------------------
    # cocircuits
    # ------------------------------------------------------------------

    def cocircuits(self) -> frozenset[SignedVector]:
        """Canonical cocircuits, one per (r-1)-subset: sign at e is the chirotope
        value on the subset with e appended. Uniform chirotopes only."""
        if not self.is_uniform():
            raise ValueError("cocircuit extraction supports uniform chirotopes only")
        out = set()
        elements = range(1, self.n + 1)
        for z in combinations(elements, self.r - 1):
            zset = set(z)
            pos = neg = 0
            for e in elements:
                if e in zset:
                    continue
                s = self.value(z + (e,))
                if s > 0:
                    pos |= 1 << (e - 1)
                elif s < 0:
                    neg |= 1 << (e - 1)
            out.add(SignedVector(self.n, pos, neg).canonical())
        return frozenset(out)


def alternating_chirotope(n: int, r: int) -> Chirotope:
    """All ascending r-tuples positive; realized by n points on the moment curve."""
    if not 1 <= r <= n:
        raise ValueError(f"rank must be within 1..{n}, got {r}")
    return Chirotope(n, r, (1,) * math.comb(n, r))


def pair_swap_chirotope(n: int) -> Chirotope:
    """Rank-2 chirotope of points on a line listed in pair-swapped order.

    With s the permutation (1 2)(3 4)...(n-1 n), the sign of (i, j) for
    i < j is +1 iff s(i) > s(j). Requires even n.
    """
    if n < 2 or n % 2:
        raise ValueError(f"pair-swap instance needs even n >= 2, got {n}")
    swap = {e: e + 1 if e % 2 else e - 1 for e in range(1, n + 1)}
    vals = tuple(
        1 if swap[i] > swap[j] else -1
        for i, j in combinations(range(1, n + 1), 2)
    )
    return Chirotope(n, 2, vals)


# ----------------------------------------------------------------------
# tope and covector sets
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TopeSet:
    """Canonical full-support covectors of an oriented matroid, with (n, r) metadata."""

    n: int
    r: int
    topes: frozenset[SignedVector]

    def __post_init__(self) -> None:
        if not 1 <= self.r <= self.n:
            raise ValueError(f"rank must be within 1..{self.n}, got {self.r}")
        for t in self.topes:
            if t.n != self.n:
                raise ValueError(f"tope {t} lives on {t.n} elements, expected {self.n}")
            if not t.has_full_support():
                raise ValueError(f"tope {t} lacks full support")
            if not t.is_canonical():
                raise ValueError(f"tope {t} is not canonical")

    def __len__(self) -> int:
        return len(self.topes)

    def __contains__(self, v: SignedVector) -> bool:
        return v in self.topes

    def ordered(self) -> tuple[SignedVector, ...]:
        return tuple(sorted(self.topes, key=SignedVector.order_key))

    def strings(self) -> tuple[str, ...]:
        return tuple(str(t) for t in self.ordered())


@dataclass(frozen=True)
class CovectorSet:
    """All covectors of an oriented matroid: both signs stored, zero included."""

    n: int
    r: int
    covectors: frozenset[SignedVector]

    def __post_init__(self) -> None:
        for v in self.covectors:
            if v.n != self.n:
                raise ValueError(f"covector {v} lives on {v.n} elements, expected {self.n}")

    def __len__(self) -> int:
        return len(self.covectors)

    def __contains__(self, v: SignedVector) -> bool:
        return v in self.covectors


def topes_from_cocircuits(
    cocircuits: Iterable[SignedVector],
    n: int,
    safety_bound: int = 200_000,
) -> TopeSet:
    """Close the signed cocircuits under composition; topes are the full-support results.

    Composition only ever grows support, so a breadth-first closure seeded
    with both signs of every cocircuit reaches every covector, and the rank
    can be read off the (uniform) cocircuit support size. The safety bound
    guards against malformed input blowing up the closure.
    """
    seeds: list[tuple[int, int]] = []
    sizes = set()
    for c in cocircuits:
        if c.n != n:
            raise ValueError(f"cocircuit {c} lives on {c.n} elements, expected {n}")
        sizes.add(c.support_size())
        seeds.append((c.pos, c.neg))
        seeds.append((c.neg, c.pos))
    if not seeds:
        raise ValueError("empty cocircuit set")
    if len(sizes) != 1:
        raise ValueError("mixed cocircuit support sizes; only uniform instances are supported")
    r = n - sizes.pop() + 1
    if not 1 <= r <= n:
        raise ValueError("cocircuit support size inconsistent with any rank")

    full = (1 << n) - 1
    seen = set(seeds)
    frontier = list(seen)
    while frontier:
        fresh = []
        for xp, xn in frontier:
            free = full & ~(xp | xn)
            if not free:
                continue
            for yp, yn in seeds:
                z = (xp | (yp & free), xn | (yn & free))
                if z not in seen:
                    seen.add(z)
                    fresh.append(z)
                    if len(seen) > safety_bound:
                        raise ValueError(f"composition closure exceeded {safety_bound} vectors; malformed input?")
        frontier = fresh

    topes = frozenset(
        SignedVector(n, p, m).canonical() for p, m in seen if (p | m) == full
    )
    return TopeSet(n, r, topes)


def topes_of(chi: Chirotope) -> TopeSet:
    """Tope set of a uniform chirotope via its cocircuit composition closure."""
    return topes_from_cocircuits(chi.cocircuits(), chi.n)


def alternating_topes_direct(n: int, r: int) -> TopeSet:
    """Topes of the alternating instance straight from the sign-change rule:
    canonical full-support vectors with at most r-1 sign changes."""
    if not 1 <= r <= n:
        raise ValueError(f"rank must be within 1..{n}, got {r}")
    topes = set()
    for bits in range(1 << (n - 1)):
        signs = ["+"]
        for i in range(n - 1):
            signs.append("-" if bits >> i & 1 else "+")
        changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
        if changes <= r - 1:
            topes.add(SignedVector.parse("".join(signs)))
    return TopeSet(n, r, frozenset(topes))


def covectors_from_topes(topes: TopeSet) -> CovectorSet:
    """All sign vectors X with X o T a tope for every tope T (both signs of T).

    This is the standard tope-based membership test; the caller is
    responsible for passing a genuine oriented-matroid tope set.
    """
    n = topes.n
    if n > _COVECTOR_ENUM_LIMIT:
        raise ValueError(f"covector enumeration limited to n <= {_COVECTOR_ENUM_LIMIT}")
    signed = set()
    for t in topes.topes:
        signed.add((t.pos, t.neg))
        signed.add((t.neg, t.pos))
    tope_list = list(signed)

    full = (1 << n) - 1
    covs = set()
    for pos in range(full + 1):
        rest = full & ~pos
        neg = rest
        while True:
            supp = pos | neg
            ok = True
            for tp, tn in tope_list:
                free = ~supp
                if (pos | (tp & free), neg | (tn & free)) not in signed:
                    ok = False
                    break
            if ok:
                covs.add(SignedVector(n, pos, neg))
            if neg == 0:
                break
            neg = (neg - 1) & rest
    return CovectorSet(n, topes.r, frozenset(covs))


# ----------------------------------------------------------------------
# axiom checkers
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CovectorAxiomReport:
    """Outcome of checking the four covector axioms on a set of sign vectors."""

    vector_count: int
    has_zero: bool
    opposite_violations: tuple[SignedVector, ...]
    composition_violations: tuple[tuple[SignedVector, SignedVector], ...]
    elimination_violations: tuple[tuple[SignedVector, SignedVector, int], ...]

    @property
    def passed(self) -> bool:
        return (
            self.has_zero
            and not self.opposite_violations
            and not self.composition_violations
            and not self.elimination_violations
        )


def check_covector_axioms(covectors: CovectorSet | Iterable[SignedVector]) -> CovectorAxiomReport:
    """Check: zero present; closed under opposite; closed under composition;
    covector elimination. Violations are report content, not exceptions."""
    vecs = list(covectors.covectors if isinstance(covectors, CovectorSet) else covectors)
    if not vecs:
        raise ValueError("empty input")
    n = vecs[0].n
    for v in vecs:
        if v.n != n:
            raise ValueError("mixed ground sets")
    pairs = {(v.pos, v.neg) for v in vecs}
    pair_list = sorted(pairs)

    has_zero = (0, 0) in pairs
    opp_viol = [
        SignedVector(n, p, m) for p, m in pair_list if (m, p) not in pairs
    ][:_VIOLATION_CAP]

    comp_viol: list[tuple[SignedVector, SignedVector]] = []
    elim_viol: list[tuple[SignedVector, SignedVector, int]] = []
    elim_cache: dict[tuple[int, int, int, int], bool] = {}

    for xp, xn in pair_list:
        xsupp = xp | xn
        for yp, yn in pair_list:
            free = ~xsupp
            wp = xp | (yp & free)
            wn = xn | (yn & free)
            if (wp, wn) not in pairs and len(comp_viol) < _VIOLATION_CAP:
                comp_viol.append((SignedVector(n, xp, xn), SignedVector(n, yp, yn)))
            smask = (xp & yn) | (xn & yp)
            if not smask:
                continue
            base_p = wp & ~smask
            base_n = wn & ~smask
            rest = smask
            while rest:
                ebit = rest & -rest
                rest ^= ebit
                key = (smask, ebit, base_p, base_n)
                found = elim_cache.get(key)
                if found is None:
                    found = _elimination_exists(pairs, base_p, base_n, smask & ~ebit)
                    elim_cache[key] = found
                if not found and len(elim_viol) < _VIOLATION_CAP:
                    elim_viol.append(
                        (SignedVector(n, xp, xn), SignedVector(n, yp, yn), ebit.bit_length())
                    )
    return CovectorAxiomReport(
        vector_count=len(pairs),
        has_zero=has_zero,
        opposite_violations=tuple(opp_viol),
        composition_violations=tuple(comp_viol),
        elimination_violations=tuple(elim_viol),
    )


def _elimination_exists(pairs: set[tuple[int, int]], base_p: int, base_n: int, free_mask: int) -> bool:
    """Is there a member agreeing with (base_p, base_n) outside free_mask and zero elsewhere on it?

    Free positions may carry any sign, so candidates are enumerated as a
    ternary counter over the free bits.
    """
    bits = []
    m = free_mask
    while m:
        b = m & -m
        bits.append(b)
        m ^= b
    stack = [(base_p, base_n, 0)]
    while stack:
        p, q, i = stack.pop()
        if i == len(bits):
            if (p, q) in pairs:
                return True
            continue
        b = bits[i]
        stack.append((p, q, i + 1))
        stack.append((p | b, q, i + 1))
        stack.append((p, q | b, i + 1))
    return False


@dataclass(frozen=True)
class UniformTopeReport:
    """Outcome of checking the uniform tope-set axioms (count plus, for every
    (r+1)-subset Q, a full pattern on Q avoided by every tope restriction)."""

    n: int
    r: int
    expected_count: int
    actual_count: int
    witnesses: tuple[tuple[tuple[int, ...], SignedVector], ...]
    missing: tuple[tuple[int, ...], ...]

    @property
    def count_ok(self) -> bool:
        return self.expected_count == self.actual_count

    @property
    def vc_ok(self) -> bool:
        return not self.missing

    @property
    def passed(self) -> bool:
        return self.count_ok and self.vc_ok

    def witness_map(self) -> dict[tuple[int, ...], SignedVector]:
        return dict(self.witnesses)


def _restriction_pattern_id(text: str, subset: tuple[int, ...]) -> int:
    """Canonical pattern index of a full-support vector's restriction to ``subset``.

    Patterns are indexed in the fixed string order: sign at the least element
    normalized to '+', remaining positions read as binary with '-' = 1.
    """
    flip = text[subset[0] - 1] == "-"
    pid = 0
    for j in range(1, len(subset)):
        ch = text[subset[j] - 1]
        if (ch == "-") != flip:
            pid |= 1 << (j - 1)
    return pid


def _pattern_vector(n: int, subset: tuple[int, ...], pid: int) -> SignedVector:
    """The pid-th canonical full pattern supported exactly on ``subset``."""
    pos = 1 << (subset[0] - 1)
    neg = 0
    for j in range(1, len(subset)):
        bit = 1 << (subset[j] - 1)
        if pid >> (j - 1) & 1:
            neg |= bit
        else:
            pos |= bit
    return SignedVector(n, pos, neg)


def check_uniform_tope_axioms(topes: TopeSet) -> UniformTopeReport:
    """Check the canonical tope count and the per-(r+1)-subset avoided pattern.

    For full-support topes, a pattern supported on Q is perpendicular to a
    tope exactly when the tope's restriction to Q differs from both the
    pattern and its opposite, so each Q is checked against the set of
    canonical restriction patterns its topes produce. The first avoided
    pattern in the fixed string order is recorded as the witness.
    """
    expected = canonical_tope_count(topes.n, topes.r)
    strings = topes.strings()
    witnesses = []
    missing = []
    half = 1 << topes.r  # 2**(|Q|-1) canonical patterns per (r+1)-subset
    for q in combinations(range(1, topes.n + 1), topes.r + 1):
        hit = {_restriction_pattern_id(s, q) for s in strings}
        wid = next((i for i in range(half) if i not in hit), None)
        if wid is None:
            missing.append(q)
        else:
            witnesses.append((q, _pattern_vector(topes.n, q, wid)))
    return UniformTopeReport(
        n=topes.n,
        r=topes.r,
        expected_count=expected,
        actual_count=len(topes),
        witnesses=tuple(witnesses),
        missing=tuple(missing),
    )


def circuit_on_support(topes: TopeSet, subset: tuple[int, ...] | list[int]) -> SignedVector:
    """The unique canonical pattern supported exactly on an (r+1)-subset that
    every tope is perpendicular to; this is the circuit carried by that support.

    Raises if no pattern or more than one pattern qualifies (either means the
    input is not the tope set of a uniform oriented matroid at this rank).
    """
    q = tuple(subset)
    prev = 0
    for e in q:
        if not prev < e <= topes.n:
            raise ValueError(f"support must be strictly increasing within 1..{topes.n}, got {q}")
        prev = e
    if len(q) != topes.r + 1:
        raise ValueError(f"support size must be rank+1 = {topes.r + 1}, got {len(q)}")
    hit = {_restriction_pattern_id(s, q) for s in topes.strings()}
    avoided = [i for i in range(1 << topes.r) if i not in hit]
    if not avoided:
        raise ValueError(f"no pattern on {q} avoids every tope; not a uniform tope set")
    if len(avoided) > 1:
        raise ValueError(f"{len(avoided)} patterns on {q} avoid every tope; rank or count metadata is wrong")
    return _pattern_vector(topes.n, q, avoided[0])


def restriction_tope_set(topes: TopeSet, keep: tuple[int, ...] | list[int]) -> TopeSet:
    """Canonical dedup of tope restrictions: the tope set of the deletion."""
    keep = tuple(keep)
    restricted = frozenset(t.restrict(keep).canonical() for t in topes.topes)
    r = min(topes.r, len(keep))
    return TopeSet(len(keep), r, restricted)
