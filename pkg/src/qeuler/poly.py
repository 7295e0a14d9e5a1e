"""Exact arithmetic on bivariate Laurent polynomials in y and q.

Coefficients are arbitrary-precision Python integers and exponents may be
negative.  Values are immutable after construction and all operations are
pure, so they are safe to share between concurrent enumeration workers.
The canonical form (terms sorted by (y exponent, q exponent), no zero
coefficients, no duplicate keys) is unique: two polynomials are equal iff
their term tuples are identical.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Mapping

from .errors import HalfPowerResidueError, NotDivisibleError

_TermKey = tuple[int, int]  # (y exponent, q exponent)


class Poly:
    """Immutable Laurent polynomial in the variables y and q."""

    __slots__ = ("_terms", "_key")

    def __init__(self, terms: Mapping[_TermKey, int] | Iterable[tuple[_TermKey, int]] = ()):
        data: dict[_TermKey, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (ye, qe), c in items:
            if c:
                k = (ye, qe)
                nc = data.get(k, 0) + c
                if nc:
                    data[k] = nc
                elif k in data:
                    del data[k]
        self._terms = data
        self._key: tuple[tuple[int, int, int], ...] | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> Poly:
        return _ZERO

    @classmethod
    def one(cls) -> Poly:
        return _ONE

    @classmethod
    def const(cls, c: int) -> Poly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: int, yexp: int = 0, qexp: int = 0) -> Poly:
        return cls({(yexp, qexp): c})

    @classmethod
    def var_y(cls, exp: int = 1) -> Poly:
        return cls({(exp, 0): 1})

    @classmethod
    def var_q(cls, exp: int = 1) -> Poly:
        return cls({(0, exp): 1})

    # -- canonical form ----------------------------------------------------

    def terms(self) -> tuple[tuple[int, int, int], ...]:
        """Canonical term list: (yExp, qExp, coef) sorted by (yExp, qExp)."""
        if self._key is None:
            self._key = tuple(
                (ye, qe, self._terms[(ye, qe)]) for ye, qe in sorted(self._terms)
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms() == other.terms()

    def __hash__(self) -> int:
        return hash(self.terms())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        data = dict(self._terms)
        for k, c in other._terms.items():
            nc = data.get(k, 0) + c
            if nc:
                data[k] = nc
            elif k in data:
                del data[k]
        out = Poly.__new__(Poly)
        out._terms = data
        out._key = None
        return out

    __radd__ = __add__

    def __neg__(self) -> Poly:
        out = Poly.__new__(Poly)
        out._terms = {k: -c for k, c in self._terms.items()}
        out._key = None
        return out

    def __sub__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> Poly:
        return Poly.const(other) + (-self)

    def __mul__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            if other == 0:
                return _ZERO
            out = Poly.__new__(Poly)
            out._terms = {k: c * other for k, c in self._terms.items()}
            out._key = None
            return out
        if not isinstance(other, Poly):
            return NotImplemented
        data: dict[_TermKey, int] = {}
        for (y1, q1), c1 in self._terms.items():
            for (y2, q2), c2 in other._terms.items():
                k = (y1 + y2, q1 + q2)
                nc = data.get(k, 0) + c1 * c2
                if nc:
                    data[k] = nc
                elif k in data:
                    del data[k]
        out = Poly.__new__(Poly)
        out._terms = data
        out._key = None
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure queries and specializations ------------------------------

    def coefficient_of_y(self, k: int) -> Poly:
        """The q-polynomial multiplying y**k."""
        return Poly({(0, qe): c for (ye, qe), c in self._terms.items() if ye == k})

    def y_exponents(self) -> list[int]:
        return sorted({ye for ye, _ in self._terms})

    def q_exponents(self) -> list[int]:
        return sorted({qe for _, qe in self._terms})

    def substitute_y(self, sign: int, qexp: int = 0) -> Poly:
        """Replace y by the signed monomial sign*q**qexp (sign is +1 or -1)."""
        if sign not in (1, -1):
            raise ValueError("substitution monomial must carry sign +1 or -1")
        data: dict[_TermKey, int] = {}
        for (ye, qe), c in self._terms.items():
            s = -1 if (sign == -1 and ye % 2) else 1
            k = (0, qe + ye * qexp)
            nc = data.get(k, 0) + s * c
            if nc:
                data[k] = nc
            elif k in data:
                del data[k]
        return Poly(data)

    def shift_q(self, qexp: int) -> Poly:
        """Multiply by q**qexp (qexp may be negative)."""
        return Poly({(ye, qe + qexp): c for (ye, qe), c in self._terms.items()})

    def evaluate(self, yval: int, qval: int) -> int:
        """Evaluate at integer points; negative exponents require |base| = 1."""
        total = 0
        for (ye, qe), c in self._terms.items():
            v = c
            for base, e in ((yval, ye), (qval, qe)):
                if e < 0:
                    if base not in (1, -1):
                        raise ValueError("negative exponent at non-unit base")
                    e %= 2
                v *= base**e
            total += v
        return total

    def is_polynomial(self) -> bool:
        """True when no negative exponent occurs in any variable."""
        return all(ye >= 0 and qe >= 0 for ye, qe in self._terms)

    # -- serialization and rendering ----------------------------------------

    def to_json_obj(self) -> dict:
        """The wire form {"vars": ["y", "q"], "terms": [[coef, yExp, qExp], ...]}."""
        return {
            "vars": ["y", "q"],
            "terms": [[c, ye, qe] for ye, qe, c in self.terms()],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> Poly:
        if obj.get("vars") != ["y", "q"]:
            raise ValueError("unexpected variable list in polynomial object")
        return cls({(ye, qe): c for c, ye, qe in obj["terms"]})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for ye, qe, c in self.terms():
            mono = ""
            if ye:
                mono += "y" + (f"^{ye}" if ye != 1 else "")
            if qe:
                mono += "q" + (f"^{qe}" if qe != 1 else "")
            mag = abs(c)
            body = (str(mag) if (mag != 1 or not mono) else "") + mono
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)})"


_ZERO = Poly()
_ONE = Poly({(0, 0): 1})


def q_integer(n: int) -> Poly:
    """[n]_q = 1 + q + ... + q**(n-1), the empty sum for n = 0."""
    if n < 0:
        raise ValueError("q_integer requires n >= 0")
    return Poly({(0, i): 1 for i in range(n)})


def binom_safe(n: int, k: int) -> int:
    """Binomial coefficient, 0 whenever k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def one_minus_q() -> Poly:
    return Poly({(0, 0): 1, (0, 1): -1})


def exact_div_one_minus_q_pow(p: Poly, m: int) -> Poly:
    """Divide by (1 - q)**m, verifying a zero remainder at every stage.

    A nonzero remainder signals a formula-implementation bug upstream, so it
    raises NotDivisibleError instead of returning a truncated quotient.
    """
    if m < 0:
        raise ValueError("divisor power must be nonnegative")
    for _ in range(m):
        p = _div_one_minus_q(p)
    return p


def _div_one_minus_q(p: Poly) -> Poly:
    if p.is_zero:
        return p
    slices: dict[int, dict[int, int]] = {}
    for (ye, qe), c in p._terms.items():
        slices.setdefault(ye, {})[qe] = c
    out: dict[_TermKey, int] = {}
    for ye, sl in slices.items():
        lo, hi = min(sl), max(sl)
        run = 0
        for e in range(lo, hi + 1):
            run += sl.get(e, 0)
            if e == hi:
                if run:
                    raise NotDivisibleError(
                        f"remainder {run} in y^{ye} slice when dividing by (1 - q)"
                    )
            elif run:
                out[(ye, e)] = run
    return Poly(out)


class HalfExponentPoly:
    """A polynomial whose q-exponents live in (1/2)*Z, stored via q = s**2.

    The underlying Poly uses its q slot for the substituted variable s, so
    every half-integer q-exponent becomes an integer s-exponent.  Converting
    back to a q-polynomial asserts that only even s-exponents survive.
    """

    __slots__ = ("spoly",)

    def __init__(self, spoly: Poly):
        self.spoly = spoly

    @classmethod
    def from_q_poly(cls, p: Poly) -> HalfExponentPoly:
        return cls(Poly({(ye, 2 * qe): c for (ye, qe), c in p._terms.items()}))

    @classmethod
    def monomial(cls, c: int, yexp: int = 0, s_exp: int = 0) -> HalfExponentPoly:
        return cls(Poly.monomial(c, yexp, s_exp))

    @property
    def is_zero(self) -> bool:
        return self.spoly.is_zero

    def __add__(self, other: HalfExponentPoly) -> HalfExponentPoly:
        return HalfExponentPoly(self.spoly + other.spoly)

    def __sub__(self, other: HalfExponentPoly) -> HalfExponentPoly:
        return HalfExponentPoly(self.spoly - other.spoly)

    def __neg__(self) -> HalfExponentPoly:
        return HalfExponentPoly(-self.spoly)

    def __mul__(self, other: HalfExponentPoly | int) -> HalfExponentPoly:
        if isinstance(other, int):
            return HalfExponentPoly(self.spoly * other)
        return HalfExponentPoly(self.spoly * other.spoly)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HalfExponentPoly) and self.spoly == other.spoly

    def __hash__(self) -> int:
        return hash(("half", self.spoly))

    def odd_residue(self) -> Poly:
        """The part of the s-polynomial carried by odd s-exponents."""
        return Poly({(ye, se): c for (ye, se), c in self.spoly._terms.items() if se % 2})

    def to_q_poly(self) -> Poly:
        res = self.odd_residue()
        if not res.is_zero:
            raise HalfPowerResidueError(f"odd half-exponent terms survive: {res}")
        return Poly({(ye, se // 2): c for (ye, se), c in self.spoly._terms.items()})

    def __str__(self) -> str:
        return str(self.spoly).replace("q", "s")

    def __repr__(self) -> str:
        return f"HalfExponentPoly({str(self)})"


def poly_sum(items: Iterator[Poly] | Iterable[Poly]) -> Poly:
    """Sum many polynomials with one shared accumulator dict."""
    data: dict[_TermKey, int] = {}
    for p in items:
        for k, c in p._terms.items():
            nc = data.get(k, 0) + c
            if nc:
                data[k] = nc
            elif k in data:
                del data[k]
    out = Poly.__new__(Poly)
    out._terms = data
    out._key = None
    return out


# Shared monomials, handy as building blocks everywhere.
ZERO = _ZERO
ONE = _ONE
Y = Poly.var_y()
Q = Poly.var_q()
