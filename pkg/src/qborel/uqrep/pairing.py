"""The dual pairing U_q^{<=0} x U_q^{>=0} -> k, phi, psi and the Gram checks.

Conventions: the first argument comes from the <= 0 side.
    (y y', x) = (y (x) y', Delta(x))
    (y, x x') = (Delta(y), x' (x) x)
with (K_mu, K_nu) = q^{-(mu, nu)}, (F_i, E_j) = -delta_ij qhat^-1 and all
mixed atom pairs zero.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import sympy

from ..coeff import LaurentPoly, ONE, QHAT_INV, ZERO
from ..ncalg import NCPoly, borel
from ..qcoord import unipotent_gen
from ..report import Report
from .functionals import functional_eval, spanning_words
from .uq import GEQ0, LEQ0, UqElement, Variant, atoms, word_comult
from .weights import Weight, int_form, kostant_partition_count

LEFT = "left"
RIGHT = "right"


class PairingError(ValueError):
    pass


def _word_of(n, atom_list):
    """Rebuild a (kpart, letters) word from atoms that are already K-first."""
    k = Weight.zero(n)
    letters = []
    for a in atom_list:
        if a[0] == "K":
            if letters:
                raise PairingError("K atom after a letter")
            k = k + a[1]
        else:
            letters.append(a)
    return k, tuple(letters)


def _base_pair(y_atom, x_atom):
    if y_atom is None and x_atom is None:
        return ONE
    if y_atom is None:
        return ONE if x_atom[0] == "K" else ZERO
    if x_atom is None:
        return ONE if y_atom[0] == "K" else ZERO
    if y_atom[0] == "K" and x_atom[0] == "K":
        return LaurentPoly.q(-int_form(y_atom[1], x_atom[1]))
    if y_atom[0] == "F" and x_atom[0] == "E":
        return -QHAT_INV if y_atom[1] == x_atom[1] else ZERO
    return ZERO


_VARIANTS = {}


def _v(n, side):
    key = (n, side)
    if key not in _VARIANTS:
        _VARIANTS[key] = Variant(n, side, check=True)
    return _VARIANTS[key]


@lru_cache(maxsize=None)
def pair_words(n: int, yw, xw, strategy: str = LEFT):
    """Pairing of two basis words; ``strategy`` picks which end of a product is split off."""
    ya = atoms(yw)
    xa = atoms(xw)
    if len(ya) >= 2:
        if strategy == LEFT:
            first, rest = [ya[0]], ya[1:]
        else:
            first, rest = ya[:-1], [ya[-1]]
        y1 = _word_of(n, first)
        y2 = _word_of(n, rest)
        total = ZERO
        for (x1, x2), c in word_comult(_v(n, GEQ0), xw).terms.items():
            a = pair_words(n, y1, x1, strategy)
            if a:
                b = pair_words(n, y2, x2, strategy)
                if b:
                    total = total + c * a * b
        return total
    if len(xa) >= 2:
        if strategy == LEFT:
            first, rest = [xa[0]], xa[1:]
        else:
            first, rest = xa[:-1], [xa[-1]]
        x1 = _word_of(n, first)
        x2 = _word_of(n, rest)
        total = ZERO
        # (y, x1 x2) = (Delta(y), x2 (x) x1)
        for (y1, y2), c in word_comult(_v(n, LEQ0), yw).terms.items():
            a = pair_words(n, y1, x2, strategy)
            if a:
                b = pair_words(n, y2, x1, strategy)
                if b:
                    total = total + c * a * b
        return total
    return _base_pair(ya[0] if ya else None, xa[0] if xa else None)


def pair(y: UqElement, x: UqElement, strategy: str = LEFT):
    if y.variant.side != LEQ0 or x.variant.side != GEQ0:
        raise PairingError("pair expects (U^{<=0} element, U^{>=0} element)")
    if y.n != x.n:
        raise PairingError("rank mismatch")
    total = ZERO
    for yw, cy in y.terms.items():
        for xw, cx in x.terms.items():
            v = pair_words(y.n, yw, xw, strategy)
            if v:
                total = total + cy * cx * v
    return total


def leq0(n, check=True):
    return Variant(n, LEQ0, check)


def geq0(n, check=False):
    return Variant(n, GEQ0, check)


def F_word(n, seq, kpart=None):
    return UqElement.word(leq0(n), kpart, tuple(("F", i) for i in seq))


def E_word(n, seq, kpart=None):
    return UqElement.word(geq0(n, True), kpart, tuple(("E", i) for i in seq))


def phi_check(y: UqElement, x: NCPoly, max_len: int, grid, collect=None) -> bool:
    """pair(y, K_lambda E_I) == x(K_lambda E_I) for |I| <= max_len, lambda in grid."""
    ok = True
    for u in spanning_words(y.n, max_len, grid):
        lhs = pair(y, u)
        rhs = functional_eval(x, u)
        if lhs != rhs:
            ok = False
            if collect is None:
                return False
            collect.append((u, lhs, rhs))
    return ok


# ---------------------------------------------------------------------------
# U_q^+ relations, psi
# ---------------------------------------------------------------------------

def serre_relations(n: int, distant_min: int = 2):
    """U_q^+ relation residuals as [(coeff, index sequence)].

    Serre for |i-j| = 1, commutation for |i-j| >= distant_min.
    """
    rels = []
    qq = LaurentPoly({1: 1, -1: 1})
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) == 1:
                rels.append((f"serre:{i},{j}",
                             [(ONE, (i, i, j)), (-qq, (i, j, i)), (ONE, (j, i, i))]))
            elif i < j and abs(i - j) >= distant_min:
                rels.append((f"comm:{i},{j}", [(ONE, (i, j)), (-ONE, (j, i))]))
    return rels


def psi_gen(i: int, N: int, spec=None) -> NCPoly:
    """psi(E_i) = -qhat^-1 X_{i,i+1} X_{i+1,i+1}^-1."""
    spec = spec or borel("+", N)
    return unipotent_gen("z", "+", i, i + 1, N, spec) * (-QHAT_INV)


def psi_image(seq, N: int) -> NCPoly:
    spec = borel("+", N)
    out = NCPoly.one(spec)
    for i in seq:
        if not 1 <= i < N:
            raise PairingError(f"E[{i}] out of range for N={N}")
        out = out * psi_gen(i, N, spec)
    return out


def verify_uqplus_presentation(n: int) -> Report:
    N = n + 1
    rep = Report("psi", N)
    for rid, terms in serre_relations(n):
        res = NCPoly.zero(borel("+", N))
        for c, seq in terms:
            res = res + psi_image(seq, N) * c
        rep.add(rid, res)
    rep.note("distant commutation E_iE_j = E_jE_i imposed for |i-j| >= 2")
    _psi_injectivity(n, 3, rep)
    return rep


def _rank_at_two(rows, qval=2):
    """Exact rank at q = qval (default 2) of rows of coefficient maps."""
    cols = sorted({k for r in rows for k in r}, key=repr)
    if not rows or not cols:
        return 0
    M = sympy.Matrix([[sympy.Rational(_val_at_two(r.get(c, 0), qval)) for c in cols] for r in rows])
    return M.rank()


def _val_at_two(c, qval=2):
    if isinstance(c, int):
        return Fraction(c)
    v = c.eval(qval)
    return Fraction(v.numerator, v.denominator)


def _psi_injectivity(n, max_len, rep):
    """Sorted words, and oracle bases per weight, have independent psi images."""
    N = n + 1
    sorted_words = [w for L in range(max_len + 1)
                    for w in itertools.combinations_with_replacement(range(1, n + 1), L)]
    rows = [psi_image(w, N).terms for w in sorted_words]
    r = _rank_at_two(rows)
    rep.add(f"inj:sorted-words<= {max_len}", r == len(rows))
    for mu in roots_up_to_height(n, max_len):
        basis = dimension_oracle(n, mu, basis=True)
        rows = [psi_image(w, N).terms for w in basis]
        rep.add(f"inj:basis{mu}", _rank_at_two(rows) == len(basis))


# ---------------------------------------------------------------------------
# Gram matrices and the dimension oracle
# ---------------------------------------------------------------------------

def words_of_weight(mu_roots):
    """All index sequences with multiplicity mu_roots[i-1] of each i."""
    pool = [i + 1 for i, a in enumerate(mu_roots) for _ in range(a)]
    return sorted(set(itertools.permutations(pool)))


def roots_up_to_height(n, cap, min_height=1):
    out = []
    for coeffs in itertools.product(range(cap + 1), repeat=n):
        h = sum(coeffs)
        if min_height <= h <= cap:
            out.append(coeffs)
    return out


def gram_matrix(n: int, mu_roots):
    if any(a < 0 for a in mu_roots) or len(mu_roots) != n:
        raise PairingError(f"{mu_roots} is not in the positive root cone for n={n}")
    words = words_of_weight(mu_roots)
    M = [[pair_words(n, (Weight.zero(n), tuple(("F", j) for j in fw)),
                     (Weight.zero(n), tuple(("E", i) for i in ew)))
          for ew in words] for fw in words]
    return words, M


def gram_rank(n: int, mu_roots, height_cap: int = 4, qval=2):
    """Pairing matrix on the E- and F-words of weight +-mu, and its exact rank at q = qval."""
    if sum(mu_roots) > height_cap:
        raise PairingError(f"height {sum(mu_roots)} exceeds cap {height_cap}")
    words, M = gram_matrix(n, mu_roots)
    S = sympy.Matrix([[sympy.Rational(_val_at_two(c, qval)) if c else 0 for c in row] for row in M])
    return M, S.rank()


def _relation_span(n, mu_roots, distant_min=2):
    """Vectors a r b (a, b words, r a relation) of weight mu, over the word basis."""
    words = words_of_weight(mu_roots)
    index = {w: k for k, w in enumerate(words)}
    deg = sum(mu_roots)
    vecs = []
    for _, terms in serre_relations(n, distant_min):
        rdeg = len(terms[0][1])
        rw = [0] * n
        for i in terms[0][1]:
            rw[i - 1] += 1
        rest = [a - b for a, b in zip(mu_roots, rw)]
        if min(rest) < 0:
            continue
        for left_len in range(deg - rdeg + 1):
            for outer in words_of_weight(rest):
                a, b = outer[:left_len], outer[left_len:]
                vec = {}
                for c, seq in terms:
                    k = index[a + seq + b]
                    vec[k] = vec.get(k, 0) + sympy.Rational(_val_at_two(c))
                vecs.append(vec)
    return words, vecs


def dimension_oracle(n: int, mu_roots, basis=False, distant_min=2):
    """dim U^+_mu as (#words) - rank(relation span), exact at q = 2.

    With ``basis=True`` returns a list of words that is a basis modulo the
    relation span (greedy over the sorted word list).
    """
    words, vecs = _relation_span(n, mu_roots, distant_min)
    rows = [[v.get(k, 0) for k in range(len(words))] for v in vecs]
    R = sympy.Matrix(rows) if rows else sympy.zeros(0, len(words))
    rank = R.rank() if rows else 0
    if not basis:
        return len(words) - rank
    chosen = []
    current = R
    cur_rank = rank
    for k, w in enumerate(words):
        e = sympy.zeros(1, len(words))
        e[k] = 1
        trial = current.col_join(e) if current.rows else e
        r = trial.rank()
        if r > cur_rank:
            chosen.append(w)
            current, cur_rank = trial, r
    return chosen


def kostant_dimension(n, mu_roots):
    return kostant_partition_count(n, mu_roots)


def verify_gram(n: int, height_cap: int = 4, qval=2) -> Report:
    rep = Report("gram", n + 1)
    for mu in roots_up_to_height(n, height_cap):
        _, rank = gram_rank(n, mu, height_cap, qval)
        dim = dimension_oracle(n, mu)
        kost = kostant_dimension(n, mu)
        rep.add(f"mu={''.join(map(str, mu))}:rank={rank},oracle={dim},kostant={kost}",
                rank == dim == kost)
    if n >= 3:
        mu = (1, 0, 1) + (0,) * (n - 3)
        strict = dimension_oracle(n, mu, distant_min=3)
        _, rank = gram_rank(n, mu, height_cap, qval)
        rep.note(f"commutation imposed for |i-j| >= 2; imposing it only for |i-j| > 2 "
                 f"would give the weight alpha_1+alpha_3 dimension {strict}, "
                 f"against Gram rank {rank}")
    return rep
