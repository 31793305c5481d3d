"""Residue-count monoid attached to a Fermat degree m.

An element is a vector (x_1, ..., x_{m-1}; y) of non-negative integers
with y >= 1 such that for every t coprime to m

    sum_i <t*i> * x_i == m * y,

where <k> denotes the representative of k mod m lying in 1..m-1.
Adding the constraints for t and m-t shows sum_i x_i == 2*y, so each
level-y slice is a finite set of multisets of size 2y and can be
enumerated exhaustively.

All arithmetic here uses Python integers, so weighted sums like
sum i*x_i never overflow regardless of m or y.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidModulusError, ShapeError

__all__ = [
    "MonoidVector",
    "units",
    "is_member",
    "enumerate_level",
    "format_vector",
    "parse_vector",
]


def check_modulus(m: int) -> None:
    """Reject degrees below 2; the defining system is degenerate for m = 1."""
    if not isinstance(m, int) or m < 2:
        raise InvalidModulusError(f"degree must be an integer >= 2, got {m!r}")


def units(m: int) -> tuple[int, ...]:
    """Residues in 1..m-1 coprime to m, ascending."""
    check_modulus(m)
    return tuple(t for t in range(1, m) if gcd(t, m) == 1)


def half_units(m: int) -> tuple[int, ...]:
    """1 followed by the units t with 2 <= t <= m/2.

    Together with the derived count constraint sum x_i == 2y these
    representatives imply the constraints for all units: <(m-t)*i> is
    m - <t*i>, so the t and m-t constraints are equivalent once the
    count constraint holds.
    """
    check_modulus(m)
    return (1,) + tuple(t for t in range(2, m // 2 + 1) if gcd(t, m) == 1)


@dataclass(frozen=True)
class MonoidVector:
    """A candidate element (x_1, ..., x_{m-1}; y); y is the level."""

    x: tuple[int, ...]
    y: int

    def row(self) -> tuple[int, ...]:
        """Flat (x..., y) tuple; the representation used by searches."""
        return self.x + (self.y,)

    @staticmethod
    def from_row(row) -> "MonoidVector":
        return MonoidVector(x=tuple(int(v) for v in row[:-1]), y=int(row[-1]))

    def __add__(self, other: "MonoidVector") -> "MonoidVector":
        return MonoidVector(
            x=tuple(a + b for a, b in zip(self.x, other.x, strict=True)),
            y=self.y + other.y,
        )

    def __sub__(self, other: "MonoidVector") -> "MonoidVector":
        return MonoidVector(
            x=tuple(a - b for a, b in zip(self.x, other.x, strict=True)),
            y=self.y - other.y,
        )


def sort_key(v: MonoidVector) -> tuple[int, tuple[int, ...]]:
    """Canonical order: ascending level, then lexicographic on x."""
    return (v.y, v.x)


def format_vector(v: MonoidVector) -> str:
    """Canonical text form ``x1,...,x_{m-1};y``."""
    return ",".join(str(c) for c in v.x) + ";" + str(v.y)


def parse_vector(text: str) -> MonoidVector:
    xs, _, ys = text.partition(";")
    return MonoidVector(x=tuple(int(c) for c in xs.split(",")), y=int(ys))


def is_member(v: MonoidVector, m: int) -> bool:
    """Full membership test against every unit constraint.

    Never raises on a well-shaped candidate; a wrong entry count is a
    ShapeError.
    """
    check_modulus(m)
    if len(v.x) != m - 1:
        raise ShapeError(f"expected {m - 1} entries for degree {m}, got {len(v.x)}")
    if v.y < 1:
        return False
    if any(c < 0 for c in v.x):
        return False
    target = m * v.y
    for t in units(m):
        total = 0
        for i, c in enumerate(v.x, start=1):
            if c:
                total += ((t * i) % m) * c
                if total > target:
                    break
        if total != target:
            return False
    return True


def _enumerate_rows(
    m: int, y: int, caps: tuple[int, ...] | None = None, budget=None
) -> list[tuple[int, ...]]:
    """All x-tuples of the level-y slice, sorted lexicographically.

    Depth-first search over indices i = m-1 down to 1.  The remaining
    weight for every representative unit and the remaining count are
    kept as running budgets; a branch dies as soon as any weight falls
    outside the window achievable with the indices that are left.
    Optional per-index caps restrict x_i <= caps[i-1].
    """
    half = half_units(m)
    k = len(half)
    res = [[(t * i) % m for i in range(m)] for t in half]
    # prefix extrema of <t*i> over 1..i, used for window pruning
    pmin = [[0] * m for _ in range(k)]
    pmax = [[0] * m for _ in range(k)]
    for u in range(k):
        lo, hi = m, 0
        row = res[u]
        for i in range(1, m):
            w = row[i]
            if w < lo:
                lo = w
            if w > hi:
                hi = w
            pmin[u][i] = lo
            pmax[u][i] = hi

    out: list[tuple[int, ...]] = []
    x = [0] * (m - 1)
    rem = [m * y] * k
    nodes = [0]

    def dfs(i: int, count: int) -> None:
        if budget is not None:
            nodes[0] += 1
            if not nodes[0] % 4096:
                budget.check(nodes[0])
        cap = count
        for u in range(k):
            q = rem[u] // res[u][i]
            if q < cap:
                cap = q
        if caps is not None and caps[i - 1] < cap:
            cap = caps[i - 1]
        for c in range(cap + 1):
            x[i - 1] = c
            if c:
                for u in range(k):
                    rem[u] -= res[u][i]
            cc = count - c
            if i > 1:
                ok = True
                for u in range(k):
                    w = rem[u]
                    if not (cc * pmin[u][i - 1] <= w <= cc * pmax[u][i - 1]):
                        ok = False
                        break
                if ok:
                    dfs(i - 1, cc)
            elif cc == 0 and not any(rem):
                out.append(tuple(x))
        for u in range(k):
            rem[u] += res[u][i] * cap
        x[i - 1] = 0

    if m == 2:
        # single index: x_1 = 2y always solves the lone constraint
        return [(2 * y,)] if caps is None or caps[0] >= 2 * y else []
    dfs(m - 1, 2 * y)
    out.sort()
    return out


def enumerate_level(m: int, y: int, budget=None) -> list[MonoidVector]:
    """All elements of the level-y slice in canonical lexicographic order.

    The optional budget only matters for internal callers that sweep
    many slices; without one the enumeration always runs to the end.
    """
    check_modulus(m)
    if y < 1:
        raise ValueError(f"level must be >= 1, got {y}")
    return [MonoidVector(x=row, y=y) for row in _enumerate_rows(m, y, budget=budget)]
