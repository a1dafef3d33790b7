"""Sign vectors on a small ground set, encoded as bitmask pairs.

Elements are labeled 1..n with n <= 32. A vector keeps one bit per element
in each of two masks (positive / negative), so all set algebra is constant
time. Values are immutable and hashable; every operation returns a fresh
value.

The string form over ``{+,-,0}`` (character i is the sign of element i) is
the only interchange format. Whenever a deterministic listing of vectors is
needed, strings are ordered under the fixed alphabet ``'+' < '-' < '0'``.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_ELEMENTS = 32

# refuse enumerating more than 2**20 full-support completions
_EXTENSION_GUARD = 20

_SIGN_ORDER = str.maketrans("+-0", "ABC")


def sign_string_key(text: str) -> str:
    """Sort key realizing the fixed '+' < '-' < '0' order on sign strings."""
    return text.translate(_SIGN_ORDER)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_ELEMENTS:
        raise ValueError(f"ground set size must be an integer in 1..{MAX_ELEMENTS}, got {n!r}")


@dataclass(frozen=True)
class SignedVector:
    """A mapping from elements 1..n to {+1, 0, -1}.

    ``pos`` and ``neg`` are disjoint bitmasks; bit e-1 is set in ``pos``
    (resp. ``neg``) iff element e carries +1 (resp. -1).
    """

    n: int
    pos: int
    neg: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        full = (1 << self.n) - 1
        if self.pos & self.neg:
            raise ValueError("positive and negative supports overlap")
        if (self.pos | self.neg) & ~full:
            raise ValueError("support exceeds the ground set")

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @staticmethod
    def parse(text: str, n: int | None = None) -> SignedVector:
        """Parse a string over {+,-,0}; character i is the sign of element i."""
        if n is None:
            n = len(text)
        if len(text) != n:
            raise ValueError(f"expected {n} characters, got {len(text)}")
        _check_n(n)
        pos = neg = 0
        for i, ch in enumerate(text):
            if ch == "+":
                pos |= 1 << i
            elif ch == "-":
                neg |= 1 << i
            elif ch != "0":
                raise ValueError(f"illegal character {ch!r} at position {i + 1}")
        return SignedVector(n, pos, neg)

    @staticmethod
    def zero(n: int) -> SignedVector:
        return SignedVector(n, 0, 0)

    @staticmethod
    def all_plus(n: int) -> SignedVector:
        _check_n(n)
        return SignedVector(n, (1 << n) - 1, 0)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    def sign(self, e: int) -> int:
        """Sign of element e (1-based)."""
        if not 1 <= e <= self.n:
            raise ValueError(f"element {e} outside 1..{self.n}")
        bit = 1 << (e - 1)
        if self.pos & bit:
            return 1
        if self.neg & bit:
            return -1
        return 0

    @property
    def support_mask(self) -> int:
        return self.pos | self.neg

    def support(self) -> frozenset[int]:
        m = self.support_mask
        return frozenset(e for e in range(1, self.n + 1) if m >> (e - 1) & 1)

    def support_size(self) -> int:
        return self.support_mask.bit_count()

    def is_zero(self) -> bool:
        return self.support_mask == 0

    def has_full_support(self) -> bool:
        return self.support_mask == (1 << self.n) - 1

    def to_string(self) -> str:
        out = []
        for i in range(self.n):
            bit = 1 << i
            out.append("+" if self.pos & bit else "-" if self.neg & bit else "0")
        return "".join(out)

    def order_key(self) -> str:
        return sign_string_key(self.to_string())

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"SignedVector({self.to_string()!r})"

    # ------------------------------------------------------------------
    # sign algebra
    # ------------------------------------------------------------------

    def opposite(self) -> SignedVector:
        return SignedVector(self.n, self.neg, self.pos)

    def __neg__(self) -> SignedVector:
        return self.opposite()

    def is_canonical(self) -> bool:
        """True iff the lowest-index nonzero sign is positive (or all zero)."""
        supp = self.support_mask
        return supp == 0 or bool(supp & -supp & self.pos)

    def canonical(self) -> SignedVector:
        """The member of {X, -X} whose first nonzero sign is positive."""
        return self if self.is_canonical() else self.opposite()

    def _require_same_ground(self, other: SignedVector) -> None:
        if self.n != other.n:
            raise ValueError(f"ground-set mismatch: {self.n} vs {other.n}")

    def compose(self, other: SignedVector) -> SignedVector:
        """Componentwise: this vector's sign where nonzero, the other's elsewhere."""
        self._require_same_ground(other)
        free = ~self.support_mask
        return SignedVector(self.n, self.pos | (other.pos & free), self.neg | (other.neg & free))

    def separation_set(self, other: SignedVector) -> frozenset[int]:
        """Elements where the two vectors carry opposite nonzero signs."""
        self._require_same_ground(other)
        m = (self.pos & other.neg) | (self.neg & other.pos)
        return frozenset(e for e in range(1, self.n + 1) if m >> (e - 1) & 1)

    def conforms(self, other: SignedVector) -> bool:
        """Conformal order: both supports of this vector sit inside the other's."""
        self._require_same_ground(other)
        return not (self.pos & ~other.pos) and not (self.neg & ~other.neg)

    def perpendicular(self, other: SignedVector) -> bool:
        """True iff the componentwise product has its +1 and -1 sets both empty or both nonempty."""
        self._require_same_ground(other)
        agree = (self.pos & other.pos) | (self.neg & other.neg)
        clash = (self.pos & other.neg) | (self.neg & other.pos)
        return (agree == 0) == (clash == 0)

    # ------------------------------------------------------------------
    # restriction and extension
    # ------------------------------------------------------------------

    def restrict(self, keep: tuple[int, ...] | list[int]) -> SignedVector:
        """Positional selection: element j of the result is the sign at the j-th kept element.

        ``keep`` must be nonempty and strictly increasing within 1..n.
        """
        keep = tuple(keep)
        if not keep:
            raise ValueError("keep must be nonempty")
        prev = 0
        for e in keep:
            if not prev < e <= self.n:
                raise ValueError(f"keep must be strictly increasing within 1..{self.n}, got {keep}")
            prev = e
        pos = neg = 0
        for j, e in enumerate(keep):
            bit = 1 << (e - 1)
            if self.pos & bit:
                pos |= 1 << j
            elif self.neg & bit:
                neg |= 1 << j
        return SignedVector(len(keep), pos, neg)

    def full_support_extensions(self) -> frozenset[SignedVector]:
        """All sign vectors agreeing with this one on its support, with full support."""
        free = [i for i in range(self.n) if not self.support_mask >> i & 1]
        z = len(free)
        if z > _EXTENSION_GUARD:
            raise ValueError(f"{z} free positions exceed the 2**{_EXTENSION_GUARD} enumeration guard")
        out = []
        for assign in range(1 << z):
            pos, neg = self.pos, self.neg
            for j, i in enumerate(free):
                if assign >> j & 1:
                    neg |= 1 << i
                else:
                    pos |= 1 << i
            out.append(SignedVector(self.n, pos, neg))
        return frozenset(out)
