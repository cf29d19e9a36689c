"""Sparse exact polynomial engine for the Cox ring and its derivations.

Variables follow the canonical ray order of an additive structure, so
variable i is the Cox coordinate of the ray at canonical position i.  A
polynomial may carry one extra formal parameter (written ``s``), used for
exponentials of locally nilpotent derivations; its coefficients stay exact
rationals, factorials included.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalInvariantError
from .lattice import Vec, pairing
from .rays import AdditiveStructure, DegreeMap
from .roots import DemazureRoot

Mono = tuple[int, ...]
TermKey = tuple[Mono, int]  # (variable exponents, power of s)

VERIFIED = "verified"
REFUTED = "refuted"
CAP_EXCEEDED = "cap_exceeded"
UNCHECKED = "unchecked"


class Poly:
    """Sparse polynomial with Fraction coefficients.

    Terms live in a dict keyed by (exponent tuple, s power); zero
    coefficients are never stored, so equality is plain dict equality.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[TermKey, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[TermKey, Fraction] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = Fraction(c)

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {((0,) * nvars, 0): Fraction(c)})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Poly":
        mono = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, {(mono, 0): Fraction(1)})

    @classmethod
    def from_monomial(cls, mono: Mono, c=1, s: int = 0) -> "Poly":
        return cls(len(mono), {(tuple(mono), s): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, Fraction(0)) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[TermKey, Fraction] = {}
        for (m1, s1), c1 in self.terms.items():
            for (m2, s2), c2 in other.terms.items():
                key = (tuple(a + b for a, b in zip(m1, m2)), s1 + s2)
                v = out.get(key, Fraction(0)) + c1 * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return Poly(self.nvars, out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {k: v * c for k, v in self.terms.items()})

    def shift_s(self, k: int) -> "Poly":
        """Multiply by s**k."""
        return Poly(self.nvars, {(m, s + k): c for (m, s), c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items())

    def is_scalar_multiple_of(self, other: "Poly") -> bool:
        if self.is_zero() or other.is_zero():
            return False
        if set(self.terms) != set(other.terms):
            return False
        ratio = None
        for key, c in self.terms.items():
            r = c / other.terms[key]
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
        return True

    def monomials(self) -> list[Mono]:
        return sorted({m for (m, _) in self.terms})

    def coefficient(self, mono: Mono, s: int = 0) -> Fraction:
        return self.terms.get((tuple(mono), s), Fraction(0))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for (mono, s), c in self.sorted_terms():
            factors = []
            if c != 1 or (not any(mono) and s == 0):
                factors.append(str(c))
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            if s == 1:
                factors.append("s")
            elif s > 1:
                factors.append(f"s^{s}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


@dataclass(frozen=True)
class Derivation:
    """A derivation of the Cox polynomial ring, as a sum of terms
    ``coeff * x^mono * d/dx_target``."""

    nvars: int
    terms: tuple[tuple[Fraction, Mono, int], ...]

    @classmethod
    def from_terms(cls, nvars: int, terms) -> "Derivation":
        merged: dict[tuple[Mono, int], Fraction] = {}
        for c, mono, target in terms:
            key = (tuple(mono), target)
            v = merged.get(key, Fraction(0)) + Fraction(c)
            if v:
                merged[key] = v
            else:
                merged.pop(key, None)
        out = tuple(
            (c, mono, target) for (mono, target), c in sorted(
                merged.items(), key=lambda kv: (kv[0][1], kv[0][0])
            )
        )
        return cls(nvars, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.nvars != other.nvars:
            raise InputError("derivations live on different rings")
        return Derivation.from_terms(self.nvars, self.terms + other.terms)

    def __call__(self, f: Poly) -> Poly:
        return apply(self, f)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, mono, target in self.terms:
            factors = []
            if c != 1 or not any(mono):
                factors.append(str(c))
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            head = "*".join(factors)
            tail = f"d/dx{target + 1}"
            parts.append(f"{head}*{tail}" if head else tail)
        return " + ".join(parts)

    __repr__ = __str__

    def zm_degree(self) -> Vec | None:
        """Common shift on the fine grading, or None for a mixed sum."""
        deg = None
        for _, mono, target in self.terms:
            d = tuple(
                e - (1 if i == target else 0) for i, e in enumerate(mono)
            )
            if deg is None:
                deg = d
            elif d != deg:
                return None
        return deg

    def cl_degree(self, dm: DegreeMap) -> Vec | None:
        """Common class-group degree of all terms, or None when mixed."""
        deg = None
        for _, mono, target in self.terms:
            d = tuple(
                a - b
                for a, b in zip(
                    dm.monomial_degree(mono), dm.degrees[target]
                )
            )
            if deg is None:
                deg = d
            elif d != deg:
                return None
        return deg


def apply(d: Derivation, f: Poly) -> Poly:
    """Exact Leibniz-rule application; the formal parameter is a constant."""
    out: dict[TermKey, Fraction] = {}
    for (mono, s), c in f.terms.items():
        for dc, dmono, target in d.terms:
            e = mono[target]
            if e == 0:
                continue
            new = list(mono)
            new[target] = e - 1
            for i, x in enumerate(dmono):
                if x:
                    new[i] += x
            key = (tuple(new), s)
            v = out.get(key, Fraction(0)) + c * dc * e
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return Poly(f.nvars, out)


def commutator(d1: Derivation, d2: Derivation) -> Derivation:
    """Bracket d1 d2 - d2 d1, reassembled from its action on the variables."""
    nvars = d1.nvars
    terms = []
    for k in range(nvars):
        xk = Poly.variable(k, nvars)
        g = apply(d1, apply(d2, xk)) - apply(d2, apply(d1, xk))
        for (mono, s), c in g.terms.items():
            if s != 0:
                raise InternalInvariantError("bracket produced the parameter")
            terms.append((c, mono, k))
    return Derivation.from_terms(nvars, terms)


def root_derivation(
    structure: AdditiveStructure,
    root: DemazureRoot,
    dm: DegreeMap | None = None,
) -> Derivation:
    """The single-term derivation attached to a root: the product of the
    other variables raised to their pairings, against the home variable.

    When a degree map is supplied the class-group degree is verified to be
    zero, which is forced by the defining pairings.
    """
    pos = structure.canonical_position(root.ray_index)
    m = structure.m
    expo = []
    for k in range(m):
        if k == pos:
            expo.append(0)
            continue
        c = pairing(structure.rays.rays[structure.order[k]], root.vector)
        if c < 0:
            raise InputError(
                f"{root.vector} is not a root distinguished by ray "
                f"{root.ray_index}"
            )
        expo.append(c)
    if pairing(structure.rays.rays[root.ray_index], root.vector) != -1:
        raise InputError(
            f"{root.vector} does not pair to -1 with ray {root.ray_index}"
        )
    d = Derivation.from_terms(m, [(Fraction(1), tuple(expo), pos)])
    if dm is not None and d.cl_degree(dm) != (0,) * dm.rank:
        raise InternalInvariantError(
            "root derivation has a nonzero class-group degree"
        )
    return d


def is_locally_nilpotent(d: Derivation, cap: int) -> str:
    """Certify local nilpotency on the ring generators.

    Nilpotency on every variable generates nilpotency everywhere, so
    chains that all die within ``cap`` steps give ``verified``.  A chain
    iterate that is a scalar multiple of an earlier one can never die and
    gives ``refuted``; anything else is ``cap_exceeded``.
    """
    if cap < 1:
        raise InputError("nilpotency cap must be at least 1")
    exceeded = False
    for i in range(d.nvars):
        f = Poly.variable(i, d.nvars)
        seen = [f]
        died = False
        for _ in range(cap):
            f = apply(d, f)
            if f.is_zero():
                died = True
                break
            for g in seen:
                if f.is_scalar_multiple_of(g):
                    return REFUTED
            seen.append(f)
        if not died:
            exceeded = True
    return CAP_EXCEEDED if exceeded else VERIFIED


def exponentiate(d: Derivation, f: Poly, cap: int) -> Poly:
    """The exponential series applied to f, a polynomial in the formal
    parameter with exact rational coefficients.  Refuses derivations whose
    local nilpotency is not certified within the cap."""
    status = is_locally_nilpotent(d, cap)
    if status != VERIFIED:
        raise InputError(
            f"refusing to exponentiate: nilpotency check returned {status}"
        )
    out = Poly.zero(f.nvars)
    g = f
    k = 0
    fact = 1
    limit = cap * (_total_degree(f) + 1) + 1
    while not g.is_zero():
        out = out + g.scale(Fraction(1, fact)).shift_s(k)
        g = apply(d, g)
        k += 1
        fact *= k
        if k > limit:
            raise InternalInvariantError("exponential failed to terminate")
    return out


def _total_degree(f: Poly) -> int:
    return max((sum(m) for (m, _) in f.terms), default=0)


def homogeneous_component(dm: DegreeMap, w: Vec) -> list[Mono]:
    """Monomial basis of the homogeneous component of class w.

    Bounded depth-first search over exponent vectors; finiteness needs
    every variable class to be nonzero, which positive alpha columns
    guarantee.
    """
    m = len(dm.degrees)
    w = tuple(int(x) for x in w)
    if len(w) != dm.rank:
        raise InputError("class vector has the wrong rank")
    for d in dm.degrees:
        if not any(d):
            raise InternalInvariantError(
                "a variable of class zero makes components infinite"
            )
    out: list[Mono] = []
    expo = [0] * m

    def rec(i: int, remaining: tuple[int, ...]) -> None:
        if i == m:
            if not any(remaining):
                out.append(tuple(expo))
            return
        deg = dm.degrees[i]
        cap = None
        for k in range(dm.rank):
            if deg[k] > 0:
                c = remaining[k] // deg[k]
                cap = c if cap is None else min(cap, c)
        assert cap is not None
        for e in range(cap + 1):
            rem = tuple(r - e * dk for r, dk in zip(remaining, deg))
            if all(r >= 0 for r in rem):
                expo[i] = e
                rec(i + 1, rem)
        expo[i] = 0

    rec(0, w)
    return sorted(out)
