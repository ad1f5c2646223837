"""Matrix-coefficient functionals X-bar_ij on U_q^{>=0}.

X-bar_ij(u) = f^i(u.e_j).  Products of functionals are evaluated by
convolution over the comultiplication, (fg)(u) = sum f(u_1) g(u_2).
"""

from __future__ import annotations

from functools import lru_cache

from ..coeff import LaurentPoly, ONE
from ..ncalg import BOREL_PLUS, NCPoly, source_keys
from .uq import GEQ0, UqElement, Variant, all_words, word_comult
from .vmodule import matrix_coefficient
from .weights import Weight, beta, int_form


class FunctionalError(ValueError):
    pass


def xbar_eval(n: int, i: int, j: int, lam: Weight, I) -> LaurentPoly:
    """Closed form: q^{(beta_i, lambda)} if I = (i, i+1, ..., j-1), else 0."""
    if i > j:
        return LaurentPoly()
    if tuple(I) == tuple(range(i, j)):
        return LaurentPoly.q(int_form(beta(n, i), lam))
    return LaurentPoly()


def xbar_diag_eval(n: int, i: int, e: int, lam: Weight, I) -> LaurentPoly:
    """X-bar_ii^e is group-like: q^{e (beta_i, lambda)} on K_lambda, 0 once E's appear."""
    if I:
        return LaurentPoly()
    return LaurentPoly.q(e * int_form(beta(n, i), lam))


def _indices(letters):
    out = []
    for kind, i in letters:
        if kind != "E":
            raise FunctionalError("functionals are evaluated on U_q^{>=0} words only")
        out.append(i)
    return tuple(out)


def _base(n, factor, word):
    (i, j), e = factor
    lam, letters = word
    I = _indices(letters)
    if i == j:
        return xbar_diag_eval(n, i, e, lam, I)
    return xbar_eval(n, i, j, lam, I)


_VARIANTS = {}


def _variant(n):
    if n not in _VARIANTS:
        _VARIANTS[n] = Variant(n, GEQ0, check=True)
    return _VARIANTS[n]


@lru_cache(maxsize=None)
def eval_factors(n: int, factors, word):
    """Value of the product of functionals ``factors`` on a single basis word.

    ``factors`` is a tuple of ((i, j), e); e may be negative only when i == j.
    """
    if not factors:
        return ONE if not word[1] else LaurentPoly()
    if len(factors) == 1:
        return _base(n, factors[0], word)
    head, rest = factors[0], factors[1:]
    total = LaurentPoly()
    for (w1, w2), c in word_comult(_variant(n), word).terms.items():
        a = _base(n, head, w1)
        if a:
            b = eval_factors(n, rest, w2)
            if b:
                total = total + c * a * b
    return total


def raw_eval(n: int, terms, u: UqElement):
    """Evaluate an unreduced combination [(coeff, letters)] of X-bar words on u.

    Letters are ((i, j), e) with 1 <= i, j <= n+1; lower-triangular letters
    are allowed (they evaluate to zero) and nothing is normal-formed first.
    """
    total = LaurentPoly()
    for c, letters in terms:
        factors = []
        for (i, j), e in letters:
            if not (1 <= i <= n + 1 and 1 <= j <= n + 1):
                raise FunctionalError(f"X[{i},{j}] out of range for n={n}")
            if i == j:
                factors.append(((i, j), e))
            elif e < 0:
                raise FunctionalError(f"X[{i},{j}] is not invertible")
            else:
                factors.extend([((i, j), 1)] * e)
        factors = tuple(factors)
        for w, cu in u.terms.items():
            v = eval_factors(n, factors, w)
            if v:
                total = total + c * cu * v
    return total


def nc_terms(x: NCPoly):
    """An NCPoly as [(coeff, letters)] in its normal-form product order."""
    out = []
    for mono, c in x.terms.items():
        letters = []
        for key, e in source_keys(x.spec, mono):
            letters.append(((key[1], key[2]), e))
        out.append((c, letters))
    return out


def functional_eval(x: NCPoly, u: UqElement):
    """x in O_q(B+) read as a functional on U_q^{>=0}, evaluated at u."""
    if x.spec.kind != BOREL_PLUS:
        raise FunctionalError(f"functional_eval needs a borel+ element, got {x.spec}")
    if u.variant.side != GEQ0:
        raise FunctionalError("functional_eval needs a U_q^{>=0} element")
    n = x.spec.N - 1
    if u.n != n:
        raise FunctionalError("rank mismatch")
    return raw_eval(n, nc_terms(x), u)


def module_eval(n: int, letters, u: UqElement):
    """Product of X-bar_ij (nonnegative exponents) via a matrix coefficient of V^(x)m.

    c_{f,v} c_{g,w} = c_{f(x)g, v(x)w}, so X-bar_{i1 j1}...X-bar_{im jm} is
    the coefficient of e_{i1}(x)...(x)e_{im} in u.(e_{j1}(x)...(x)e_{jm}).
    """
    rows, cols = [], []
    for (i, j), e in letters:
        if e < 0:
            raise FunctionalError("module route covers nonnegative exponents only")
        rows += [i] * e
        cols += [j] * e
    if not rows:
        total = LaurentPoly()
        for (k, lt), c in u.terms.items():
            if not lt:
                total = total + c
        return total
    return matrix_coefficient(tuple(rows), tuple(cols), u)


def spanning_words(n: int, max_len: int, grid):
    """All K_lambda E_I with |I| <= max_len and lambda in grid, as UqElements."""
    v = _variant(n)
    return [UqElement.word(v, lam, I) for I in all_words(n, "E", max_len) for lam in grid]
