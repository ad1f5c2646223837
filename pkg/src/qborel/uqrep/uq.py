"""Word calculus for U_q(sl_{n+1}) and its Borel parts.

A basis word is ``(kpart, letters)``: a single K_lambda collected on the left
followed by a free word in E_i / F_i.  There is no Serre reduction; words are
kept as they are and relations are checked by the pairing and by psi.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..coeff import LaurentPoly, QhatFraction, ONE, coeff_str, coeff_to_json
from ..ncalg import format_terms
from .weights import Weight, WeightError, alpha, int_form


class UqError(ValueError):
    pass


GEQ0 = "geq0"
LEQ0 = "leq0"
FULL = "full"


@dataclass(frozen=True)
class Variant:
    """Which subalgebra: ``side`` in geq0/leq0/full; ``check`` allows K_lambda, lambda in Lambda."""

    n: int
    side: str = FULL
    check: bool = False

    def allowed(self, kind: str) -> bool:
        return self.side == FULL or (kind == "E") == (self.side == GEQ0)

    def validate(self, kpart: Weight, letters):
        if kpart.n != self.n:
            raise UqError(f"K-part rank {kpart.n} does not match rank {self.n}")
        if self.check:
            if not kpart.in_weight_lattice():
                raise UqError(f"K{kpart.coords} is not in the weight lattice")
        elif not kpart.in_root_lattice():
            raise UqError(f"K{kpart.coords} needs the check variant (not in the root lattice)")
        for kind, i in letters:
            if not self.allowed(kind):
                raise UqError(f"{kind}[{i}] not allowed in the {self.side} part")
            if not 1 <= i <= self.n:
                raise UqError(f"{kind}[{i}] out of range for rank {self.n}")

    def __str__(self):
        return f"{self.side}{'-check' if self.check else ''}(n={self.n})"


def _add_into(acc, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def letters_weight(n, letters) -> Weight:
    out = Weight.zero(n)
    for kind, i in letters:
        out = out + alpha(n, i) if kind == "E" else out - alpha(n, i)
    return out


def word_str(word) -> str:
    kpart, letters = word
    parts = []
    if kpart:
        parts.append("K{" + ",".join(str(c) for c in kpart.coords) + "}")
    for (kind, i), run in itertools.groupby(letters):
        e = len(list(run))
        parts.append(f"{kind}[{i}]" if e == 1 else f"{kind}[{i}]^{e}")
    return "*".join(parts) if parts else "1"


def _word_sort_key(word):
    kpart, letters = word
    return (len(letters), letters, kpart.coords)


class UqElement:
    """Linear combination of (kpart, letters) words with Laurent coefficients."""

    __slots__ = ("variant", "terms")

    def __init__(self, variant: Variant, terms=None):
        self.variant = variant
        self.terms = {}
        for w, c in (terms or {}).items():
            variant.validate(*w)
            _add_into(self.terms, w, c)

    @property
    def n(self):
        return self.variant.n

    @classmethod
    def zero(cls, variant):
        return cls(variant)

    @classmethod
    def one(cls, variant):
        return cls(variant, {(Weight.zero(variant.n), ()): ONE})

    @classmethod
    def word(cls, variant, kpart=None, letters=(), coeff=ONE):
        kpart = Weight.zero(variant.n) if kpart is None else kpart
        return cls(variant, {(kpart, tuple(letters)): coeff})

    @classmethod
    def K(cls, variant, lam: Weight):
        return cls.word(variant, lam)

    @classmethod
    def E(cls, variant, i):
        return cls.word(variant, None, (("E", i),))

    @classmethod
    def F(cls, variant, i):
        return cls.word(variant, None, (("F", i),))

    def _same(self, other):
        if not isinstance(other, UqElement):
            return False
        if other.variant != self.variant:
            raise UqError(f"variant mismatch: {self.variant} vs {other.variant}")
        return True

    def __add__(self, other):
        if not self._same(other):
            other = UqElement.one(self.variant) * other
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return UqElement(self.variant, out)

    __radd__ = __add__

    def __neg__(self):
        return UqElement(self.variant, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UqElement):
            return UqElement(self.variant, {w: c * other for w, c in self.terms.items()})
        self._same(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w, c = mul_words(self.n, w1, w2)
                _add_into(out, w, c1 * c2 * c)
        return UqElement(self.variant, out)

    def __rmul__(self, other):
        return UqElement(self.variant, {w: other * c for w, c in self.terms.items()})

    def __pow__(self, k):
        out = UqElement.one(self.variant)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UqElement):
            return self.variant == other.variant and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _word_sort_key(t[0]))

    def __str__(self):
        return format_terms((word_str(w), c) for w, c in self.sorted_terms())

    def __repr__(self):
        return f"UqElement[{self.variant}]({self})"

    def to_json(self):
        return {"variant": str(self.variant),
                "terms": [{"k": [str(c) for c in w[0].coords],
                           "letters": [[k, i] for k, i in w[1]],
                           "coeff": coeff_to_json(c)} for w, c in self.sorted_terms()]}


def mul_words(n, w1, w2):
    """(K_a u)(K_b v) = q^{-(b, wt u)} K_{a+b} u v."""
    (a, u), (b, v) = w1, w2
    shift = -int_form(b, letters_weight(n, u)) if u and b else 0
    return (a + b, u + v), LaurentPoly.q(shift)


def uq_normal_form(variant: Variant, raw):
    """Collect K's to the left in a raw product.

    ``raw`` is a list of (coeff, atoms); an atom is ('K', Weight), ('E', i) or
    ('F', i).
    """
    out = UqElement.zero(variant)
    zero = Weight.zero(variant.n)
    for c, atoms in raw:
        w, coeff = (zero, ()), ONE
        for atom in atoms:
            piece = (atom[1], ()) if atom[0] == "K" else (zero, (atom,))
            w, c2 = mul_words(variant.n, w, piece)
            coeff = coeff * c2
        out = out + UqElement(variant, {w: c * coeff})
    return out


def atoms(word):
    """A word as a list of atoms; K_0 is dropped."""
    kpart, letters = word
    out = [("K", kpart)] if kpart else []
    return out + list(letters)


# ---------------------------------------------------------------------------
# tensors and Hopf maps
# ---------------------------------------------------------------------------

class UqTensor:
    """Element of a tensor power of one variant; keys are tuples of words."""

    __slots__ = ("variant", "legs", "terms")

    def __init__(self, variant, legs, terms=None):
        self.variant = variant
        self.legs = legs
        self.terms = {}
        for k, c in (terms or {}).items():
            _add_into(self.terms, k, c)

    @classmethod
    def one(cls, variant, legs):
        z = (Weight.zero(variant.n), ())
        return cls(variant, legs, {(z,) * legs: ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return UqTensor(self.variant, self.legs, out)

    def __mul__(self, other):
        if not isinstance(other, UqTensor):
            return UqTensor(self.variant, self.legs, {k: c * other for k, c in self.terms.items()})
        out = {}
        n = self.variant.n
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                key = []
                for a, b in zip(k1, k2):
                    w, s = mul_words(n, a, b)
                    key.append(w)
                    c = c * s
                _add_into(out, tuple(key), c)
        return UqTensor(self.variant, self.legs, out)

    def __eq__(self, other):
        return isinstance(other, UqTensor) and self.legs == other.legs and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda t: tuple(_word_sort_key(w) for w in t[0]))
        return format_terms((" (x) ".join(word_str(w) for w in k), c) for k, c in items)

    def to_json(self):
        return {"legs": self.legs,
                "terms": [{"words": [word_str(w) for w in k], "coeff": coeff_to_json(c)}
                          for k, c in sorted(self.terms.items(), key=lambda t: str(t[0]))]}


def atom_comult(n, atom):
    """Delta on one atom as a list of ((word, word), coeff)."""
    z = Weight.zero(n)
    if atom[0] == "K":
        w = (atom[1], ())
        return [((w, w), ONE)]
    kind, i = atom
    a = alpha(n, i)
    letter = (z, (atom,))
    unit = (z, ())
    if kind == "E":
        return [(((a, ()), letter), ONE), ((letter, unit), ONE)]
    return [((letter, (-a, ())), ONE), ((unit, letter), ONE)]


def word_comult(variant, word) -> UqTensor:
    out = UqTensor.one(variant, 2)
    for atom in atoms(word):
        out = out * UqTensor(variant, 2, {k: c for k, c in atom_comult(variant.n, atom)})
    return out


def uq_comult(u: UqElement) -> UqTensor:
    out = UqTensor(u.variant, 2)
    for w, c in u.terms.items():
        out = out + word_comult(u.variant, w) * c
    return out


def iterated_comult(u: UqElement, legs: int) -> UqTensor:
    """Delta applied legs-1 times, always on the last leg (coassociativity makes the choice moot)."""
    t = UqTensor(u.variant, 1, {(w,): c for w, c in u.terms.items()})
    for _ in range(legs - 1):
        out = UqTensor(u.variant, t.legs + 1)
        for key, c in t.terms.items():
            for (w1, w2), c2 in word_comult(u.variant, key[-1]).terms.items():
                out = out + UqTensor(u.variant, t.legs + 1, {key[:-1] + (w1, w2): c * c2})
        t = out
    return t


def uq_counit(u: UqElement):
    total = LaurentPoly()
    for (k, letters), c in u.terms.items():
        if not letters:
            total = c + total
    return total


def uq_antipode(u: UqElement) -> UqElement:
    """S(E_i) = -K_{-alpha_i} E_i, S(F_i) = -F_i K_{alpha_i}, S(K) = K^-1; anti-multiplicative."""
    v = u.variant
    out = UqElement.zero(v)
    for w, c in u.terms.items():
        img = UqElement.one(v)
        for atom in reversed(atoms(w)):
            img = img * atom_antipode(v, atom)
        out = out + img * c
    return out


def atom_antipode(v, atom):
    if atom[0] == "K":
        return UqElement.K(v, -atom[1])
    kind, i = atom
    a = alpha(v.n, i)
    if kind == "E":
        return -(UqElement.K(v, -a) * UqElement.E(v, i))
    return -(UqElement.F(v, i) * UqElement.K(v, a))


def apply_tensor_map(fns, t: UqTensor):
    """Sum over terms of c * prod_r fns[r](leg_r) for scalar-valued fns."""
    total = None
    for key, c in t.terms.items():
        val = c
        for f, w in zip(fns, key):
            val = val * f(w)
            if not val:
                break
        total = val if total is None else total + val
    return LaurentPoly() if total is None else total


def cartan_omega(u: UqElement) -> UqElement:
    """E_i -> F_i, K_lambda fixed; geq0 lands in leq0 (and back)."""
    v = u.variant
    flip = {GEQ0: LEQ0, LEQ0: GEQ0, FULL: FULL}[v.side]
    target = Variant(v.n, flip, v.check)
    swap = {"E": "F", "F": "E"}
    return UqElement(target, {(k, tuple((swap[a], i) for a, i in letters)): c
                              for (k, letters), c in u.terms.items()})


def all_words(n, kind, max_len, min_len=0):
    """All letter sequences over kind in 1..n with min_len <= length <= max_len."""
    out = []
    for L in range(min_len, max_len + 1):
        out.extend(tuple((kind, i) for i in seq)
                   for seq in itertools.product(range(1, n + 1), repeat=L))
    return out


__all__ = [
    "UqError", "Variant", "UqElement", "UqTensor", "GEQ0", "LEQ0", "FULL",
    "mul_words", "uq_normal_form", "uq_comult", "iterated_comult", "uq_counit",
    "uq_antipode", "cartan_omega", "atoms", "word_comult", "letters_weight",
    "word_str", "all_words", "apply_tensor_map", "WeightError",
]
