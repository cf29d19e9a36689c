"""Exact Fourier-Motzkin elimination over the rationals.

A system is a collection of rows ``(a, b)`` encoding the inequality
``a . x >= b`` with integer entries.  Elimination combines rows with
positive rational multipliers only, so feasibility and projections are
exact; rows are rescaled by gcd to keep the integers small.
"""

from math import gcd

from .errors import UnboundedPolyhedronError

Row = tuple[tuple[int, ...], int]


def _reduce(a: tuple[int, ...], b: int) -> Row:
    g = 0
    for x in a:
        g = gcd(g, x)
    g = gcd(g, b)
    if g > 1:
        return tuple(x // g for x in a), b // g
    return a, b


def eliminate(rows, k: int) -> list[Row]:
    """Project the system onto the coordinates other than k.

    The returned rows have a zero coefficient in column k and describe
    exactly the shadow of the solution set.
    """
    zero, pos, neg = [], [], []
    for a, b in rows:
        (zero if a[k] == 0 else pos if a[k] > 0 else neg).append((a, b))
    out = {(tuple(a), b) for a, b in zero}
    for ap, bp in pos:
        for an, bn in neg:
            s, t = -an[k], ap[k]
            a = tuple(s * x + t * y for x, y in zip(ap, an))
            b = s * bp + t * bn
            out.add(_reduce(a, b))
    return sorted(out)


def feasible(rows, nvars: int) -> bool:
    """Whether the system admits a rational solution."""
    cur = [(tuple(a), int(b)) for a, b in rows]
    for k in range(nvars):
        cur = eliminate(cur, k)
    return all(b <= 0 for _, b in cur)


def integer_points(rows, nvars: int) -> list[tuple[int, ...]]:
    """All integer solutions of a bounded system.

    Raises UnboundedPolyhedronError when some coordinate direction of the
    (nonempty) rational solution set is unbounded.
    """
    chain = [sorted((tuple(a), int(b)) for a, b in rows)]
    for k in range(nvars - 1, 0, -1):
        chain.append(eliminate(chain[-1], k))
    chain.reverse()  # chain[k] involves coordinates 0..k only
    if any(b > 0 for _, b in eliminate(chain[0], 0)):
        return []

    out: list[tuple[int, ...]] = []

    def scan(level: int, prefix: tuple[int, ...]) -> None:
        lo = hi = None
        for a, b in chain[level]:
            c = a[level]
            rhs = b - sum(a[l] * prefix[l] for l in range(level))
            if c > 0:
                v = -(-rhs // c)
                lo = v if lo is None else max(lo, v)
            elif c < 0:
                v = rhs // c
                hi = v if hi is None else min(hi, v)
            elif rhs > 0:
                return  # a carried constraint rules this prefix out
        if lo is None or hi is None:
            raise UnboundedPolyhedronError(
                f"coordinate {level} has an unbounded interval"
            )
        for v in range(lo, hi + 1):
            if level + 1 == nvars:
                out.append(prefix + (v,))
            else:
                scan(level + 1, prefix + (v,))

    scan(0, ())
    return out
