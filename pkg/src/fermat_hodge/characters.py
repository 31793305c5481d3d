"""Character-side combinatorics of Fermat Hodge classes.

A character is a tuple of nonzero residues mod m with zero sum.  The
Hodge labels in even dimension n are the characters whose weight under
every unit t equals n/2 + 1; they correspond bijectively to level
n/2 + 1 elements of the residue-count monoid via the count map, and
the two join operations mirror sum decompositions on the monoid side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

from .errors import HodgeLabelError, JoinError, MembershipError
from .hilbert import HilbertBasis, is_decomposable
from .monoid import MonoidVector, check_modulus, enumerate_level, is_member, units


@dataclass(frozen=True)
class Character:
    """A tuple (a_0, ..., a_{n+1}) of residues in 1..m-1 summing to 0 mod m."""

    m: int
    entries: tuple[int, ...]

    def __post_init__(self):
        check_modulus(self.m)
        if len(self.entries) < 2:
            raise ValueError("a character needs at least two entries")
        if any(not 1 <= a <= self.m - 1 for a in self.entries):
            raise ValueError(f"entries must be nonzero residues mod {self.m}")
        if sum(self.entries) % self.m:
            raise ValueError(f"entries must sum to 0 mod {self.m}: {self.entries}")

    @property
    def n(self) -> int:
        """Dimension: two less than the number of entries."""
        return len(self.entries) - 2

    def sorted_entries(self) -> tuple[int, ...]:
        """Canonical representative under permutation equivalence."""
        return tuple(sorted(self.entries))


class HodgeLabel(Character):
    """A character verified to have weight n/2 + 1 under every unit."""

    def __post_init__(self):
        super().__post_init__()
        if not is_hodge_label(Character(self.m, self.entries)):
            raise HodgeLabelError(
                f"not a Hodge label for m={self.m}: {self.entries}"
            )


def weight(alpha: Character, t: int = 1) -> Fraction:
    """|t*alpha| = sum <t*a_i> / m as an exact rational."""
    if gcd(t, alpha.m) != 1:
        raise ValueError(f"t={t} is not a unit mod {alpha.m}")
    m = alpha.m
    return Fraction(sum((t * a) % m for a in alpha.entries), m)


def is_hodge_label(alpha: Character) -> bool:
    """True iff n is even and |t*alpha| = n/2 + 1 for every unit t."""
    if alpha.n % 2:
        return False
    target = alpha.n // 2 + 1
    return all(weight(alpha, t) == target for t in units(alpha.m))


def enumerate_hodge_labels(
    m: int, n: int, expand_permutations: bool = False
) -> list[HodgeLabel]:
    """Canonical (sorted-entry) Hodge labels of dimension n, sorted.

    Generated through the monoid level slice rather than a raw scan of
    all tuples; the weight conditions are exactly the level equations.
    With ``expand_permutations`` every distinct entry order is listed.
    """
    check_modulus(m)
    if n < 0 or n % 2:
        raise ValueError(f"dimension must be even and >= 0, got {n}")
    reps = sorted(
        (from_monoid(v, m) for v in enumerate_level(m, n // 2 + 1)),
        key=lambda lab: lab.entries,
    )
    if not expand_permutations:
        return reps
    seen = {p for rep in reps for p in permutations(rep.entries)}
    return [HodgeLabel(m, p) for p in sorted(seen)]


def to_monoid(alpha: Character) -> MonoidVector:
    """Count map: x_k = #{i : <a_i> = k}, level n/2 + 1."""
    if not is_hodge_label(alpha):
        raise HodgeLabelError(f"not a Hodge label: {alpha.entries}")
    m = alpha.m
    x = [0] * (m - 1)
    for a in alpha.entries:
        x[a - 1] += 1
    return MonoidVector(x=tuple(x), y=alpha.n // 2 + 1)


def from_monoid(v: MonoidVector, m: int) -> HodgeLabel:
    """Inverse count map: residue k with multiplicity x_k, sorted."""
    if not is_member(v, m):
        raise MembershipError(f"not a member of the degree-{m} monoid: {v}")
    entries: list[int] = []
    for k, c in enumerate(v.x, start=1):
        entries.extend([k] * c)
    return HodgeLabel(m, tuple(entries))


def star_join(beta: Character, gamma: Character) -> Character:
    """Concatenation join; zero sums concatenate to a zero sum."""
    if beta.m != gamma.m:
        raise ValueError(f"mismatched degrees {beta.m} and {gamma.m}")
    return Character(beta.m, beta.entries + gamma.entries)


def hash_join(beta: Character, gamma: Character) -> Character:
    """Drop both last entries (which must cancel mod m) and concatenate."""
    if beta.m != gamma.m:
        raise ValueError(f"mismatched degrees {beta.m} and {gamma.m}")
    if (beta.entries[-1] + gamma.entries[-1]) % beta.m:
        raise JoinError(
            f"last entries {beta.entries[-1]} and {gamma.entries[-1]} "
            f"do not cancel mod {beta.m}"
        )
    return Character(beta.m, beta.entries[:-1] + gamma.entries[:-1])


def satisfies_p1(
    alpha: Character, basis: HilbertBasis | None = None
) -> tuple[HodgeLabel, HodgeLabel] | None:
    """A star-join split of alpha into two Hodge labels, if one exists.

    Equivalent to decomposability of the count vector: a monoid witness
    c + d maps back to labels whose concatenation permutes to alpha.
    """
    witness = is_decomposable(to_monoid(alpha), alpha.m, basis=basis)
    if witness is None:
        return None
    return (from_monoid(witness.c, alpha.m), from_monoid(witness.d, alpha.m))


def satisfies_p2(
    alpha: Character,
) -> tuple[HodgeLabel, HodgeLabel] | None:
    """A hash-join split of alpha into two Hodge labels, if one exists.

    Searches over the cancelled residue pair (j, m-j) and over balanced
    sub-multisets of alpha's entries: the left factor takes r+1 entries
    plus the appended j, the right factor the rest plus m-j, with r and
    s even and positive.  First hit in (r, j, submultiset) order wins.
    """
    if not is_hodge_label(alpha):
        raise HodgeLabelError(f"not a Hodge label: {alpha.entries}")
    n = alpha.n
    m = alpha.m
    entries = alpha.sorted_entries()
    for r in range(2, n - 1, 2):
        s = n - r
        seen: set[tuple[int, ...]] = set()
        for positions in combinations(range(n + 2), r + 1):
            left = tuple(entries[i] for i in positions)
            if left in seen:
                continue
            seen.add(left)
            j = (-sum(left)) % m
            if j == 0:
                continue
            taken = set(positions)
            right = tuple(e for i, e in enumerate(entries) if i not in taken)
            try:
                beta = HodgeLabel(m, left + (j,))
                gamma = HodgeLabel(m, right + (m - j,))
            except (ValueError, HodgeLabelError):
                continue
            assert s == gamma.n
            return (beta, gamma)
    return None
