"""Noncommutative polynomials over the quantum-matrix presentations.

Four presentations are supported, all on generators X[i,j] (or Y[i] for the
torus) with 1 <= i, j <= N:

* ``qm``      O_q(M_N): the four quadratic q-commutation relations.
* ``borel+``  upper triangular quotient; X[i,i] invertible, X[N,N] eliminated
              by X[1,1]...X[N,N] = 1.
* ``borel-``  lower triangular analogue.
* ``torus``   commutative Laurent ring in Y[1..N] with Y[1]...Y[N] = 1.

Every NCPoly is kept in normal form.  A normal-form monomial is a pair
``(diag, word)``: ``diag`` is the exponent vector of X[1,1]..X[N-1,N-1]
(empty for ``qm``) collected on the left, and ``word`` is a tuple of (row, col)
pairs sorted ascending in row-major order.  The normal form is the PBW-type
basis of lexicographically ordered monomials.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass

from .coeff import (
    LaurentPoly,
    QhatFraction,
    ONE,
    QHAT,
    check_specialization,
    coeff_str,
    coeff_to_json,
)

QM = "qm"
BOREL_PLUS = "borel+"
BOREL_MINUS = "borel-"
TORUS = "torus"
KINDS = (QM, BOREL_PLUS, BOREL_MINUS, TORUS)


class AlgebraError(ValueError):
    """Malformed element for its algebra: bad index, bad exponent, mismatch."""


class SpecMismatch(AlgebraError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    """One of the four built-in presentations at size N = n+1.

    ``qval`` fixes q to a rational number; coefficients are then plain
    Fractions instead of Laurent polynomials.
    """

    kind: str
    N: int
    qval: Fraction | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise AlgebraError(f"unknown algebra kind {self.kind!r}")
        if self.N < 2:
            raise AlgebraError("size N must be at least 2")
        if self.qval is not None:
            object.__setattr__(self, "qval", check_specialization(self.qval))

    def __str__(self):
        base = f"{self.kind}({self.N})"
        return base if self.qval is None else f"{base}@q={self.qval}"

    @property
    def has_diag_block(self) -> bool:
        return self.kind != QM

    def survives(self, i: int, j: int) -> bool:
        if self.kind == QM:
            return True
        if self.kind == BOREL_PLUS:
            return i <= j
        if self.kind == BOREL_MINUS:
            return i >= j
        return i == j

    def check_index(self, i: int, j: int):
        if not (1 <= i <= self.N and 1 <= j <= self.N):
            raise AlgebraError(f"index ({i},{j}) out of range for size {self.N}")

    def generators(self):
        """Surviving generators in row-major order, as (row, col) pairs."""
        return [(i, j) for i in range(1, self.N + 1) for j in range(1, self.N + 1)
                if self.survives(i, j)]

    def offdiag_generators(self):
        return [g for g in self.generators() if g[0] != g[1] or self.kind == QM]

    # scalars

    def scalar(self, c):
        if self.qval is None:
            if isinstance(c, (LaurentPoly, QhatFraction)):
                return c
            return LaurentPoly.const(c)
        if isinstance(c, (LaurentPoly, QhatFraction)):
            return c.specialize(self.qval)
        return Fraction(c)

    def qpow(self, k: int):
        return self.scalar(LaurentPoly.q(k))

    @property
    def one(self):
        return self.scalar(1)

    @property
    def qhat(self):
        return self.scalar(QHAT)

    def specialized(self, qval) -> AlgebraSpec:
        return AlgebraSpec(self.kind, self.N, qval)


def qmatrix(N, qval=None):
    return AlgebraSpec(QM, N, qval)


def borel(sign: str, N, qval=None):
    return AlgebraSpec(BOREL_PLUS if sign == "+" else BOREL_MINUS, N, qval)


def torus(N, qval=None):
    return AlgebraSpec(TORUS, N, qval)


# ---------------------------------------------------------------------------
# rewriting engine
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def straighten(spec: AlgebraSpec, y, x):
    """Rewrite X_y X_x with y > x as a sum of (coeff, letters).

    These are the oriented quadratic relations of O_q(M_N); the leading term
    is always coeff * X_x X_y.  Letters may include generators that vanish in
    the Borel quotients; callers drop those.
    """
    (l, m), (i, j) = y, x
    if not (x < y):
        raise AlgebraError(f"straighten expects y > x, got {y}, {x}")
    if i == l or j == m:
        # same row or same column
        return ((spec.qpow(-1), (x, y)),)
    if j > m:
        return ((spec.one, (x, y)),)
    # i < l and j < m
    return ((spec.one, (x, y)), (-spec.qhat, ((i, m), (l, j))))


@lru_cache(maxsize=None)
def diag_shift(spec: AlgebraSpec, k: int, x) -> int:
    """Exponent t with X_x X_kk = q^t X_kk X_x in the Borel/torus quotient."""
    d = (k, k)
    if x == d:
        return 0
    if x > d:
        terms = straighten(spec.specialized(None) if spec.qval is not None else spec, x, d)
        sign = 1
    else:
        terms = straighten(spec.specialized(None) if spec.qval is not None else spec, d, x)
        sign = -1
    lead, *rest = terms
    for _, letters in rest:
        if all(spec.survives(*g) for g in letters):
            raise AlgebraError(f"X[{k},{k}] does not q-commute with X{list(x)}")
    c = lead[0]
    e, = c.terms.keys()
    return sign * e


def _check_letter(spec: AlgebraSpec, g, e: int):
    spec.check_index(*g)
    if e < 0 and not (spec.has_diag_block and g[0] == g[1]):
        raise AlgebraError(f"negative exponent on non-invertible generator X[{g[0]},{g[1]}]")


def _diag_len(spec):
    return spec.N - 1 if spec.has_diag_block else 0


def unit_mono(spec):
    return ((0,) * _diag_len(spec), ())


@lru_cache(maxsize=None)
def append_diag(spec: AlgebraSpec, mono, k: int, e: int):
    """mono * X_kk^e in normal form: a single (mono, coeff) pair."""
    d, w = mono
    N = spec.N
    if k == N:
        vec = (-e,) * (N - 1)
    else:
        vec = tuple(e if r == k - 1 else 0 for r in range(N - 1))
    shift = 0
    for x in w:
        for r, er in enumerate(vec):
            if er:
                shift += er * diag_shift(spec, r + 1, x)
    nd = tuple(a + b for a, b in zip(d, vec))
    return ((nd, w), spec.qpow(shift))


def _add_into(acc: dict, mono, c):
    v = acc.get(mono)
    v = c if v is None else v + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def _times_letter(spec, poly: dict, g) -> dict:
    out = {}
    if not spec.survives(*g):
        return out
    for mono, c in poly.items():
        for m2, c2 in append_letter(spec, mono, g):
            _add_into(out, m2, c * c2)
    return out


@lru_cache(maxsize=None)
def append_letter(spec: AlgebraSpec, mono, g):
    """mono * X_g in normal form, as a tuple of (mono, coeff) pairs."""
    d, w = mono
    if not spec.survives(*g):
        return ()
    if spec.has_diag_block and g[0] == g[1]:
        return (append_diag(spec, mono, g[0], 1),)
    if not w or w[-1] <= g:
        return (((d, w + (g,)), spec.one),)
    y = w[-1]
    prefix = (d, w[:-1])
    acc = {}
    for c, letters in straighten(spec, y, g):
        partial = {prefix: c}
        for h in letters:
            partial = _times_letter(spec, partial, h)
            if not partial:
                break
        for m2, c2 in partial.items():
            _add_into(acc, m2, c2)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def mul_mono(spec: AlgebraSpec, m1, m2):
    """Product of two normal-form monomials, as (mono, coeff) pairs."""
    d1, w1 = m1
    d2, w2 = m2
    if spec.kind == TORUS:
        return (((tuple(a + b for a, b in zip(d1, d2)), ()), spec.one),)
    coeff = spec.one
    mono = m1
    if spec.has_diag_block and any(d2):
        shift = 0
        for x in w1:
            for r, er in enumerate(d2):
                if er:
                    shift += er * diag_shift(spec, r + 1, x)
        mono = (tuple(a + b for a, b in zip(d1, d2)), w1)
        coeff = spec.qpow(shift)
    poly = {mono: coeff}
    for g in w2:
        poly = _times_letter(spec, poly, g)
    return tuple(poly.items())


# ---------------------------------------------------------------------------
# NCPoly
# ---------------------------------------------------------------------------

def _gen_key(spec, g):
    return ("Y", g[0]) if spec.kind == TORUS else ("X", g[0], g[1])


def mono_letters(spec: AlgebraSpec, mono):
    """Display letters of a normal-form monomial: [(gen_key, exponent), ...]."""
    d, w = mono
    out = []
    for r, e in enumerate(d):
        if e:
            out.append((_gen_key(spec, (r + 1, r + 1)), e))
    for g, run in itertools.groupby(w):
        out.append((_gen_key(spec, g), len(list(run))))
    return out


def _letter_str(key, e):
    name = f"Y[{key[1]}]" if key[0] == "Y" else f"X[{key[1]},{key[2]}]"
    return name if e == 1 else f"{name}^{e}"


def mono_str(spec, mono) -> str:
    letters = mono_letters(spec, mono)
    if not letters:
        return "1"
    return "*".join(_letter_str(k, e) for k, e in letters)


def mono_sort_key(spec, mono):
    return tuple((k[1:], e) for k, e in mono_letters(spec, mono))


def _leading_negative(c) -> bool:
    if isinstance(c, QhatFraction):
        c = c.num
    if isinstance(c, LaurentPoly):
        return c.items()[0][1] < 0
    return c < 0


def _is_single(c) -> bool:
    if isinstance(c, LaurentPoly):
        return c.is_monomial()
    if isinstance(c, QhatFraction):
        return True
    return True


def format_terms(items) -> str:
    """Render [(body, coeff), ...] as 'c1*body1 + c2*body2'; body '1' is the unit."""
    parts = []
    for body, c in items:
        neg = _leading_negative(c)
        mag = -c if neg else c
        cs = coeff_str(mag)
        if cs == "1":
            text = body
        elif body == "1":
            text = cs if _is_single(mag) else f"({cs})"
        elif _is_single(mag):
            text = f"{cs}*{body}"
        else:
            text = f"({cs})*{body}"
        if not parts:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(parts) if parts else "0"


class NCPoly:
    """An element of one of the built-in algebras, always in normal form."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms=None):
        self.spec = spec
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # constructors

    @classmethod
    def zero(cls, spec):
        return cls(spec)

    @classmethod
    def one(cls, spec):
        return cls(spec, {unit_mono(spec): spec.one})

    @classmethod
    def scalar(cls, spec, c):
        c = spec.scalar(c)
        return cls(spec, {unit_mono(spec): c})

    @classmethod
    def gen(cls, spec, i, j=None, exp: int = 1):
        """X[i,j]^exp (or Y[i]^exp in the torus)."""
        if spec.kind == TORUS:
            if j is not None and j != i:
                raise AlgebraError("torus generators are Y[i]")
            g = (i, i)
        else:
            if j is None:
                raise AlgebraError("X generators need two indices")
            g = (i, j)
        _check_letter(spec, g, exp)
        if not spec.survives(*g):
            return cls.zero(spec)
        if spec.has_diag_block and g[0] == g[1]:
            mono, c = append_diag(spec, unit_mono(spec), g[0], exp)
            return cls(spec, {mono: c})
        poly = {unit_mono(spec): spec.one}
        for _ in range(exp):
            poly = _times_letter(spec, poly, g)
        return cls(spec, poly)

    @classmethod
    def from_word(cls, spec, letters, coeff=1):
        """Normal form of coeff * (product of letters); letters are ((i, j), e)."""
        out = cls.scalar(spec, coeff)
        for g, e in letters:
            i, j = g
            out = out * cls.gen(spec, i, j, e)
        return out

    # arithmetic

    def _check(self, other):
        if not isinstance(other, NCPoly):
            return False
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        return True

    def __add__(self, other):
        if not self._check(other):
            other = NCPoly.scalar(self.spec, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return NCPoly(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.spec, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            c = self.spec.scalar(other) if not isinstance(other, QhatFraction) else other
            return NCPoly(self.spec, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m, c in mul_mono(self.spec, m1, m2):
                    _add_into(out, m, c1 * c2 * c)
        return NCPoly(self.spec, out)

    def __rmul__(self, other):
        c = self.spec.scalar(other) if not isinstance(other, QhatFraction) else other
        return NCPoly(self.spec, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        out = NCPoly.one(self.spec)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.spec == other.spec and self.terms == other.terms
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self == NCPoly.scalar(self.spec, other)
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono):
        return self.terms.get(mono, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mono_sort_key(self.spec, t[0]))

    def is_single_term(self):
        return len(self.terms) == 1

    def map_coeffs(self, fn, spec=None):
        spec = spec or self.spec
        return NCPoly(spec, {m: fn(c) for m, c in self.terms.items()})

    def specialize(self, qval):
        """Evaluate every coefficient at q = qval, landing in the specialized spec."""
        spec = self.spec.specialized(qval)
        return NCPoly(spec, {m: spec.scalar(c) for m, c in self.terms.items()})

    def __str__(self):
        return format_terms((mono_str(self.spec, m), c) for m, c in self.sorted_terms())

    def __repr__(self):
        return f"NCPoly[{self.spec}]({self})"

    def to_json(self):
        terms = []
        for m, c in self.sorted_terms():
            word = [[k[0], *k[1:], e] for k, e in mono_letters(self.spec, m)]
            terms.append({"word": word, "coeff": coeff_to_json(c)})
        return {"spec": str(self.spec), "terms": terms}


def normal_form(spec: AlgebraSpec, terms) -> NCPoly:
    """Normal form of a raw linear combination [(coeff, letters), ...].

    ``letters`` is a sequence of ((row, col), exponent); for the torus use
    ((i, i), e).
    """
    out = NCPoly.zero(spec)
    for c, letters in terms:
        out = out + NCPoly.from_word(spec, letters, c)
    return out


def mul(p1: NCPoly, p2: NCPoly) -> NCPoly:
    if p1.spec != p2.spec:
        raise SpecMismatch(f"{p1.spec} vs {p2.spec}")
    return p1 * p2


def inverse(p):
    """Inverse of a single-term element whose monomial is purely diagonal."""
    if isinstance(p, NCPoly):
        if len(p.terms) != 1:
            raise AlgebraError(f"{p} has no inverse in this kernel")
        (mono, c), = p.terms.items()
        d, w = mono
        if w:
            raise AlgebraError(f"{p} has no inverse in this kernel")
        ci = c.inverse() if isinstance(c, LaurentPoly) else 1 / c
        return NCPoly(p.spec, {(tuple(-e for e in d), ()): ci})
    if isinstance(p, TensorPoly):
        if len(p.terms) != 1:
            raise AlgebraError(f"{p} has no inverse in this kernel")
        (monos, c), = p.terms.items()
        legs = [inverse(NCPoly(s, {m: s.one})) for s, m in zip(p.specs, monos)]
        ci = c.inverse() if isinstance(c, LaurentPoly) else 1 / c
        return TensorPoly.pure(*legs) * ci
    if isinstance(p, LaurentPoly):
        return p.inverse()
    return 1 / Fraction(p)


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------

class TensorPoly:
    """Element of a tensor product of algebras; multiplication is leg-wise."""

    __slots__ = ("specs", "terms")

    def __init__(self, specs, terms=None):
        self.specs = tuple(specs)
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def pure(cls, *legs):
        specs = tuple(p.spec for p in legs)
        out = {}
        for combo in itertools.product(*(p.terms.items() for p in legs)):
            key = tuple(m for m, _ in combo)
            c = specs[0].one
            for _, ci in combo:
                c = c * ci
            _add_into(out, key, c)
        return cls(specs, out)

    @classmethod
    def one(cls, specs):
        return cls(specs, {tuple(unit_mono(s) for s in specs): specs[0].one})

    def _check(self, other):
        if not isinstance(other, TensorPoly):
            return False
        if other.specs != self.specs:
            raise SpecMismatch(f"{self.specs} vs {other.specs}")
        return True

    def __add__(self, other):
        if not self._check(other):
            other = TensorPoly.one(self.specs) * other
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return TensorPoly(self.specs, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorPoly(self.specs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorPoly):
            c = other if isinstance(other, QhatFraction) else self.specs[0].scalar(other)
            return TensorPoly(self.specs, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                legs = [mul_mono(s, a, b) for s, a, b in zip(self.specs, k1, k2)]
                for combo in itertools.product(*legs):
                    c = c1 * c2
                    for _, ci in combo:
                        c = c * ci
                    _add_into(out, tuple(m for m, _ in combo), c)
        return TensorPoly(self.specs, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        out = TensorPoly.one(self.specs)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TensorPoly):
            return self.specs == other.specs and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda t: tuple(mono_sort_key(s, m) for s, m in zip(self.specs, t[0])))

    def leg(self, key, r) -> NCPoly:
        return NCPoly(self.specs[r], {key[r]: self.specs[r].one})

    def map_leg(self, r: int, fn):
        """Apply a linear map to leg r.

        ``fn`` takes a single normal-form monomial (as an NCPoly) and returns
        an NCPoly, a TensorPoly (legs are spliced in) or a scalar (the leg is
        dropped).  A result with one leg left is returned as an NCPoly.
        """
        acc = None
        for key, c in self.terms.items():
            img = fn(self.leg(key, r))
            before = [self.leg(key, s) for s in range(r)]
            after = [self.leg(key, s) for s in range(r + 1, len(self.specs))]
            if isinstance(img, TensorPoly):
                pieces = [_as_tensor(p) for p in before] + [img] + [_as_tensor(p) for p in after]
                term = _concat(pieces) * c
            elif isinstance(img, NCPoly):
                term = _concat([_as_tensor(p) for p in before + [img] + after]) * c
            else:
                rest = before + after
                if not rest:
                    term = c * img
                else:
                    term = _concat([_as_tensor(p) for p in rest]) * (c * img)
            acc = term if acc is None else acc + term
        if acc is None:
            return 0
        if isinstance(acc, TensorPoly) and len(acc.specs) == 1:
            s = acc.specs[0]
            return NCPoly(s, {k[0]: v for k, v in acc.terms.items()})
        return acc

    def __str__(self):
        items = []
        for key, c in self.sorted_terms():
            body = " (x) ".join(mono_str(s, m) for s, m in zip(self.specs, key))
            items.append((body, c))
        return format_terms(items)

    def __repr__(self):
        return f"TensorPoly({self})"

    def to_json(self):
        terms = []
        for key, c in self.sorted_terms():
            legs = [[[k[0], *k[1:], e] for k, e in mono_letters(s, m)]
                    for s, m in zip(self.specs, key)]
            terms.append({"legs": legs, "coeff": coeff_to_json(c)})
        return {"specs": [str(s) for s in self.specs], "terms": terms}


def _as_tensor(p):
    if isinstance(p, TensorPoly):
        return p
    return TensorPoly(
        (p.spec,), {(m,): c for m, c in p.terms.items()})


def _concat(pieces):
    specs = tuple(s for p in pieces for s in p.specs)
    out = {}
    for combo in itertools.product(*(p.terms.items() for p in pieces)):
        key = tuple(m for k, _ in combo for m in k)
        c = None
        for _, ci in combo:
            c = ci if c is None else c * ci
        _add_into(out, key, c)
    return TensorPoly(specs, out)


def tensor(*legs):
    """Pure tensor of NCPolys (or TensorPolys, flattened)."""
    return _concat([_as_tensor(p) for p in legs])


def tensor_mul(t1: TensorPoly, t2: TensorPoly) -> TensorPoly:
    return t1 * t2


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

def source_keys(spec, mono):
    """The generator factors of a normal-form monomial, in product order."""
    d, w = mono
    out = []
    for r, e in enumerate(d):
        if e:
            out.append((_gen_key(spec, (r + 1, r + 1)), e))
    for g in w:
        out.append((_gen_key(spec, g), 1))
    return out


def apply_hom(images, p: NCPoly, one=None):
    """The algebra homomorphism determined by generator images, applied to p.

    ``images`` maps generator keys (('X', i, j) or ('Y', i)) to NCPoly,
    TensorPoly or scalar images.  Negative exponents are pushed through the
    inverse of the image, which must exist (single-term, diagonal).
    """
    if one is None:
        sample = next(iter(images.values()), None)
        if isinstance(sample, NCPoly):
            one = NCPoly.one(sample.spec)
        elif isinstance(sample, TensorPoly):
            one = TensorPoly.one(sample.specs)
        else:
            one = p.spec.one
    inverses = {}
    acc = None
    for mono, c in p.terms.items():
        img = one
        for key, e in source_keys(p.spec, mono):
            if key not in images:
                raise AlgebraError(f"no image for generator {key}")
            if e > 0:
                factor = images[key] ** e
            else:
                if key not in inverses:
                    inverses[key] = inverse(images[key])
                factor = inverses[key] ** (-e)
            img = img * factor
        term = img * c
        acc = term if acc is None else acc + term
    return one * 0 if acc is None else acc


def identity_images(spec):
    if spec.kind == TORUS:
        return {("Y", i): NCPoly.gen(spec, i) for i, _ in spec.generators()}
    return {("X", i, j): NCPoly.gen(spec, i, j) for i, j in spec.generators()}


def canonical_words(spec: AlgebraSpec, degree: int):
    """All ordered words of exactly `degree` letters in a QMatrix spec."""
    gens = spec.generators()
    return [((), w) for w in itertools.combinations_with_replacement(gens, degree)]


def rewrite_by_redexes(spec: AlgebraSpec, letters, rng, max_steps: int = 100000):
    """Normal form of a word by rewriting randomly chosen out-of-order pairs.

    Independent of the insertion strategy `NCPoly` uses: the whole word is
    kept flat and any adjacent inversion may fire.  QMatrix specs only.
    Returns (NCPoly, number of rewrite steps).
    """
    if spec.kind != QM:
        raise AlgebraError("redex rewriting is implemented for qm only")
    word = []
    for g, e in letters:
        _check_letter(spec, g, e)
        word.extend([g] * e)
    pending = {tuple(word): spec.one}
    done = {}
    steps = 0
    while pending:
        w, c = pending.popitem()
        redexes = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
        if not redexes:
            _add_into(done, ((), w), c)
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate within the step budget")
        p = rng.choice(redexes)
        for c2, rep in straighten(spec, w[p], w[p + 1]):
            _add_into(pending, w[:p] + rep + w[p + 2:], c * c2)
    return NCPoly(spec, done), steps
