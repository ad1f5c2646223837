"""Exact coefficient arithmetic in Q[q, q^-1].

`LaurentPoly` is the ring every algebra in this package is defined over.
Pairing values of the quantized enveloping algebra also need the inverse of
qhat = q - q^-1; those live in `QhatFraction`, a numerator Laurent polynomial
over a power of qhat.  Both types are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class RootOfUnityError(ValueError):
    """Raised when q is specialized to 1 or -1."""


class NonMonomialDivision(ArithmeticError):
    """Raised when dividing by a Laurent polynomial with more than one term."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def check_specialization(qval) -> Fraction:
    """Return `qval` as a Fraction, refusing 0 and the roots of unity +-1."""
    qval = _frac(qval)
    if qval == 0:
        raise ZeroDivisionError("q = 0 is not allowed")
    if qval in (1, -1):
        raise RootOfUnityError(f"q = {qval} is a root of unity")
    return qval


class LaurentPoly:
    """A Laurent polynomial in q with rational coefficients.

    Stored as a map exponent -> Fraction with no zero entries, so equality is
    structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        clean = {}
        for e, c in terms.items():
            c = _frac(c)
            if c:
                clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def q(cls, k: int = 1) -> LaurentPoly:
        return cls({k: 1})

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({0: c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs by descending exponent."""
        return sorted(self._terms.items(), reverse=True)

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(0, Fraction(0))

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    # arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> LaurentPoly:
        """Inverse of a nonzero monomial c*q^k."""
        if not self.is_monomial():
            raise NonMonomialDivision(f"cannot invert {self}: not a single term")
        (e, c), = self._terms.items()
        return LaurentPoly({-e: 1 / c})

    def divide(self, other) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot divide by {other!r}")
        return self * o.inverse()

    __truediv__ = divide

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation

    def eval(self, qval) -> Fraction:
        """Exact value at the rational point q = qval (qval != 0)."""
        qval = _frac(qval)
        if qval == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at q = 0")
        return sum((c * qval ** e for e, c in self._terms.items()), Fraction(0))

    def specialize(self, qval) -> Fraction:
        """Like `eval`, but also rejects q = +-1 (algebra specializations)."""
        return self.eval(check_specialization(qval))

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mag = abs(c)
            if e == 0:
                body = _fmt_rational(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{_fmt_rational(mag)}*{qpart}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def to_json(self):
        return [[e, _fmt_rational(c)] for e, c in self.items()]

    @classmethod
    def from_json(cls, data) -> LaurentPoly:
        return cls({int(e): Fraction(c) for e, c in data})


Q = LaurentPoly.q()
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
QHAT = LaurentPoly({1: 1, -1: -1})


def _is_divisible_by_qhat(p: LaurentPoly) -> bool:
    # qhat = q^-1 (q - 1)(q + 1)
    return bool(p) and p.eval(1) == 0 and p.eval(-1) == 0


def _divide_exact_by_qhat(p: LaurentPoly) -> LaurentPoly:
    lo = p.min_exp()
    hi = p.max_exp()
    # dense coefficients of q^-lo * p, highest degree first
    dense = [p._terms.get(e, Fraction(0)) for e in range(hi, lo - 1, -1)]
    # synthetic division by q^2 - 1
    quot = []
    rem = list(dense)
    for idx in range(len(rem) - 2):
        c = rem[idx]
        quot.append(c)
        rem[idx + 2] += c
    if any(rem[-2:]):
        raise ArithmeticError(f"{p} is not divisible by qhat")
    deg = hi - lo - 2
    out = {deg - i + lo: c for i, c in enumerate(quot)}
    # divided by (q^2 - 1); multiply by q to divide by qhat
    return LaurentPoly(out).shift(1)


class QhatFraction:
    """An element num * qhat^-k of Q[q, q^-1][qhat^-1], k > 0, k minimal.

    Build these with `qhat_fraction`, which hands back a plain LaurentPoly
    whenever the qhat power cancels completely.
    """

    __slots__ = ("num", "k")

    def __init__(self, num: LaurentPoly, k: int):
        self.num = num
        self.k = k

    @staticmethod
    def _parts(x):
        if isinstance(x, QhatFraction):
            return x.num, x.k
        if isinstance(x, LaurentPoly):
            return x, 0
        if isinstance(x, (int, Rational)):
            return LaurentPoly.const(x), 0
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        n2, k2 = p
        m = max(self.k, k2)
        return qhat_fraction(self.num * QHAT ** (m - self.k) + n2 * QHAT ** (m - k2), m)

    __radd__ = __add__

    def __neg__(self):
        return QhatFraction(-self.num, self.k)

    def __sub__(self, other):
        if self._parts(other) is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return qhat_fraction(self.num * p[0], self.k + p[1])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise NonMonomialDivision("QhatFraction powers must be nonnegative")
        out = ONE
        for _ in range(e):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.k == p[1] and self.num == p[0]

    def __hash__(self):
        return hash((self.num, self.k))

    def eval(self, qval) -> Fraction:
        qval = check_specialization(qval)
        return self.num.eval(qval) / QHAT.eval(qval) ** self.k

    specialize = eval

    def __str__(self):
        num = self.num
        den = f"qhat^-{self.k}"
        if num == 1:
            return den
        if num == -1:
            return f"-{den}"
        if num.is_monomial():
            return f"{num}*{den}"
        return f"({num})*{den}"

    def __repr__(self):
        return f"QhatFraction({self})"

    def to_json(self):
        return {"num": self.num.to_json(), "qhat_power": -self.k}


def qhat_fraction(num, k: int):
    """Canonical form of num * qhat^-k: cancel qhat factors, demote if k hits 0."""
    num = LaurentPoly._coerce(num) if not isinstance(num, LaurentPoly) else num
    if k < 0:
        return num * QHAT ** (-k)
    if not num:
        return ZERO
    while k > 0 and _is_divisible_by_qhat(num):
        num = _divide_exact_by_qhat(num)
        k -= 1
    if k == 0:
        return num
    return QhatFraction(num, k)


QHAT_INV = qhat_fraction(ONE, 1)


def laurent_add(a, b):
    return a + b


def laurent_mul(a, b):
    return a * b


def laurent_eval(a, qval, specialization: bool = False) -> Fraction:
    """Value of `a` at q = qval; `specialization` adds the +-1 guard."""
    if specialization:
        return a.specialize(qval)
    return a.eval(qval)


def coeff_to_json(c):
    if isinstance(c, (LaurentPoly, QhatFraction)):
        return c.to_json()
    return [[0, _fmt_rational(_frac(c))]]


def coeff_str(c) -> str:
    if isinstance(c, (LaurentPoly, QhatFraction)):
        return str(c)
    return _fmt_rational(_frac(c))


def specialize_coeff(c, qval) -> Fraction:
    if isinstance(c, (LaurentPoly, QhatFraction)):
        return c.specialize(qval)
    return _frac(c)
