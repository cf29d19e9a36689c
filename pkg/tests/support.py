"""Shared helpers: seeded random lattice data for property sweeps."""

import random
from math import gcd

from toricroots.rays import RaySystem


def random_unimodular(rng: random.Random, n: int, ops: int = 6):
    """Random elementary row operations applied to the identity."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.choice([-2, -1, 1, 2])
            for k in range(n):
                m[i][k] += c * m[j][k]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 2:
            m[i] = [-x for x in m[i]]
    return [tuple(row) for row in m]


def random_alpha(rng: random.Random, n: int, extras: int, max_entry: int = 4):
    """Nonnegative coefficient rows: nonzero, primitive, distinct, and with
    a positive entry in every column."""
    while True:
        rows = [
            tuple(rng.randint(0, max_entry) for _ in range(n))
            for _ in range(extras)
        ]
        if any(not any(r) for r in rows):
            continue
        if any(_row_gcd(r) != 1 for r in rows):
            continue
        if len(set(rows)) != extras:
            continue
        if not all(any(row[i] > 0 for row in rows) for i in range(n)):
            continue
        return rows


def _row_gcd(row) -> int:
    g = 0
    for x in row:
        g = gcd(g, x)
    return g


def rays_from_alpha(alpha, n: int, transform=None, order=None) -> RaySystem:
    """Identity basis rays plus the negated alpha rows, optionally pushed
    through a unimodular transform and reordered."""
    rays = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    rays += [tuple(-a for a in row) for row in alpha]
    if transform is not None:
        rays = [
            tuple(
                sum(transform[r][c] * v[c] for c in range(n))
                for r in range(n)
            )
            for v in rays
        ]
    if order is not None:
        rays = [rays[i] for i in order]
    return RaySystem(n, tuple(rays))


def random_structured_system(
    rng: random.Random,
    n: int | None = None,
    max_entry: int = 4,
    max_extras: int = 4,
    transform: bool = False,
    shuffle: bool = False,
) -> RaySystem:
    if n is None:
        n = rng.choice([2, 2, 3, 3, 4])
    extras = rng.randint(1, max_extras)
    alpha = random_alpha(rng, n, extras, max_entry)
    u = random_unimodular(rng, n) if transform else None
    order = None
    if shuffle:
        order = list(range(n + extras))
        rng.shuffle(order)
    return rays_from_alpha(alpha, n, transform=u, order=order)
