"""Exact scalar rings: GF(p), the rationals, and homogeneous polynomials over them.

All three share the small interface the exterior algebra relies on: a ring
object with ``zero``, ``one``, ``characteristic()`` and coercion via
``ring(x)``; elements support ``+ - *``, unary minus, ``== 0`` and ``bool``.
Rationals are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import NonExactDivision


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class ModP:
    """An element of GF(p), stored as its representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise TypeError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p) (kind ``"gf"``) or the rationals (kind ``"q"``)."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "gf":
            if self.p is None or not (2 <= self.p < 2**31) or not is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime 2 <= p < 2^31, got {self.p!r}")
        elif self.kind == "q":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "gf"

    def characteristic(self) -> int:
        return self.p if self.kind == "gf" else 0

    @property
    def order(self) -> Optional[int]:
        return self.p

    @property
    def zero(self):
        return ModP(0, self.p) if self.kind == "gf" else Fraction(0)

    @property
    def one(self):
        return ModP(1, self.p) if self.kind == "gf" else Fraction(1)

    def __call__(self, x):
        if self.kind == "q":
            if isinstance(x, ModP):
                raise TypeError("cannot coerce a GF(p) element to QQ")
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise TypeError(f"cannot coerce GF({x.p}) element to GF({self.p})")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModP(int(x), self.p)

    def elements(self) -> Iterator:
        """Field elements in the canonical scan order 0, 1, ..., p-1."""
        if self.kind != "gf":
            raise ValueError("QQ is infinite")
        return (ModP(v, self.p) for v in range(self.p))

    def random_element(self, rng, bound: int = 5):
        """Uniform over GF(p); over QQ uniform over the integers in [-bound, bound]."""
        if self.kind == "gf":
            return ModP(rng.randrange(self.p), self.p)
        return Fraction(rng.randint(-bound, bound))

    # Native representations used by the elimination kernels: ints in [0, p)
    # for GF(p), Fractions for QQ.
    def to_native(self, x):
        return x.v if self.kind == "gf" else x

    def from_native(self, v):
        return ModP(v, self.p) if self.kind == "gf" else v

    def __str__(self):
        return f"GF({self.p})" if self.kind == "gf" else "QQ"

    def __repr__(self):
        return f"GF({self.p})" if self.kind == "gf" else "QQ"


def GF(p: int) -> FieldSpec:
    return FieldSpec("gf", p)


QQ = FieldSpec("q")


def field_of(x) -> FieldSpec:
    if isinstance(x, ModP):
        return GF(x.p)
    return QQ


# ---------------------------------------------------------------------------
# homogeneous polynomials


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring base[t_1, ..., t_nvars]; elements are :class:`HomogPoly`."""

    base: FieldSpec
    nvars: int

    @property
    def zero(self) -> "HomogPoly":
        return HomogPoly(self, {})

    @property
    def one(self) -> "HomogPoly":
        return HomogPoly(self, {(0,) * self.nvars: self.base.one})

    def characteristic(self) -> int:
        return self.base.characteristic()

    def gen(self, i: int) -> "HomogPoly":
        """The variable t_{i+1} (0-based index)."""
        exp = [0] * self.nvars
        exp[i] = 1
        return HomogPoly(self, {tuple(exp): self.base.one})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def __call__(self, x) -> "HomogPoly":
        if isinstance(x, HomogPoly):
            if x.ring != self:
                raise TypeError("polynomial from a different ring")
            return x
        c = self.base(x)
        if not c:
            return self.zero
        return HomogPoly(self, {(0,) * self.nvars: c})

    def __str__(self):
        return f"{self.base}[t1..t{self.nvars}]"


class HomogPoly:
    """Sparse homogeneous polynomial: ``{exponent tuple: nonzero coefficient}``.

    Adding polynomials of different degrees raises; the zero polynomial has
    degree ``None`` and is compatible with everything.
    """

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        degrees = {sum(e) for e in self.terms}
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous polynomial (degrees {sorted(degrees)})")
        for e in self.terms:
            if len(e) != ring.nvars:
                raise ValueError("exponent vector of wrong length")
        self.degree = degrees.pop() if degrees else None

    @classmethod
    def from_terms(cls, ring: PolyRing, items: Iterable) -> "HomogPoly":
        """Build from ``(coeff, exponents)`` pairs, summing repeated monomials."""
        acc: dict = {}
        for c, e in items:
            e = tuple(e)
            acc[e] = acc.get(e, ring.base.zero) + ring.base(c)
        return cls(ring, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def _lift(self, other):
        if isinstance(other, HomogPoly):
            if other.ring != self.ring:
                raise TypeError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction, ModP)):
            return self.ring(other)
        return NotImplemented

    def _check_degrees(self, other):
        if self.degree is not None and other.degree is not None and self.degree != other.degree:
            raise ValueError(f"cannot add degree {self.degree} and degree {other.degree}")

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        self._check_degrees(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return HomogPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return HomogPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ModP)):
            c = self.ring.base(other)
            return HomogPoly(self.ring, {e: a * c for e, a in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return HomogPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, HomogPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, ModP)):
            try:
                return self == self.ring(other)
            except (TypeError, ZeroDivisionError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __call__(self, u):
        return poly_eval(self, u)

    def leading(self):
        """Lexicographically largest ``(exponent, coefficient)``."""
        e = max(self.terms)
        return e, self.terms[e]

    def render(self) -> str:
        return render_poly(self)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"t{i + 1}" if a == 1 else f"t{i + 1}^{a}" for i, a in enumerate(e) if a
            )
            c = self.terms[e]
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


def poly_eval(f: HomogPoly, u):
    """Evaluate ``f`` at the point ``u`` (a sequence of base-field scalars)."""
    if len(u) != f.ring.nvars:
        raise ValueError(f"point has {len(u)} coordinates, polynomial has {f.ring.nvars} variables")
    base = f.ring.base
    u = [base(x) for x in u]
    total = base.zero
    for e, c in f.terms.items():
        term = c
        for x, a in zip(u, e):
            if a:
                term = term * x**a
        total = total + term
    return total


def poly_divide_exact(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Return ``q`` with ``q * g == f``; raise :class:`NonExactDivision` otherwise.

    Plain multivariate division by the lex-leading term of ``g``; for an exact
    quotient every step must divide the current leading monomial.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.ring != g.ring:
        raise TypeError("polynomials from different rings")
    ring = f.ring
    ge, gc = g.leading()
    ginv = ring.base.one / gc
    quotient: dict = {}
    rem = f
    while rem:
        re, rc = rem.leading()
        if any(a < b for a, b in zip(re, ge)):
            raise NonExactDivision(f"{g!r} does not divide {f!r}")
        qe = tuple(a - b for a, b in zip(re, ge))
        qc = rc * ginv
        quotient[qe] = qc
        rem = rem - HomogPoly(ring, {qe: qc}) * g
    return HomogPoly(ring, quotient)


def render_scalar(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def render_poly(f: HomogPoly) -> str:
    """One term per line, ``<coeff> <e1> ... <en>``, descending lex order."""
    if not f.terms:
        return "0"
    lines = []
    for e in sorted(f.terms, reverse=True):
        lines.append(" ".join([render_scalar(f.terms[e])] + [str(a) for a in e]))
    return "\n".join(lines)
