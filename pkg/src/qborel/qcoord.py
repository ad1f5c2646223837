"""Quantum coordinate algebras: determinant, minors, Hopf maps, Borel pieces.

Everything here is a thin layer over `ncalg`: maps are given by generator
images and pushed through `apply_hom`, and identities are checked by
normal-forming residuals to zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .coeff import LaurentPoly, Q
from .ncalg import (
    AlgebraError,
    AlgebraSpec,
    BOREL_MINUS,
    BOREL_PLUS,
    NCPoly,
    QM,
    TORUS,
    TensorPoly,
    apply_hom,
    borel,
    inverse,
    qmatrix,
    tensor,
    torus,
    unit_mono,
)
from .report import Report

PLAIN_Q = "plain-q"
MINUS_Q = "minus-q"


def inversions(perm) -> int:
    """Inversion count by merge sort."""
    def sort(seq):
        if len(seq) <= 1:
            return list(seq), 0
        mid = len(seq) // 2
        left, a = sort(seq[:mid])
        right, b = sort(seq[mid:])
        merged, inv = [], a + b
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                inv += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, inv
    return sort(list(perm))[1]


def X(spec: AlgebraSpec, i: int, j: int, e: int = 1) -> NCPoly:
    return NCPoly.gen(spec, i, j, e)


def Y(spec: AlgebraSpec, i: int, e: int = 1) -> NCPoly:
    return NCPoly.gen(spec, i, None, e)


def qminor(rows, cols, N: int | None = None, spec: AlgebraSpec | None = None) -> NCPoly:
    """Quantum minor [rows | cols] = sum over sigma of (-q)^l(sigma) X_{r1,c_s(1)}..."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols) or not rows:
        raise AlgebraError("minor needs equally many (and at least one) rows and columns")
    if rows != sorted(set(rows)) or cols != sorted(set(cols)):
        raise AlgebraError("minor index lists must be strictly increasing")
    if spec is None:
        if N is None:
            N = max(rows + cols)
        spec = qmatrix(N)
    out = NCPoly.zero(spec)
    minus_q = spec.scalar(-Q)
    for perm in itertools.permutations(range(len(cols))):
        letters = [((r, cols[p]), 1) for r, p in zip(rows, perm)]
        out = out + NCPoly.from_word(spec, letters, minus_q ** inversions(perm))
    return out


def qdet(N: int, spec: AlgebraSpec | None = None) -> NCPoly:
    idx = list(range(1, N + 1))
    return qminor(idx, idx, spec=spec or qmatrix(N))


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------

def comult_images(spec: AlgebraSpec):
    """Generator images of the comultiplication, landing in spec (x) spec."""
    imgs = {}
    if spec.kind == TORUS:
        for i in range(1, spec.N + 1):
            imgs[("Y", i)] = tensor(Y(spec, i), Y(spec, i))
        return imgs
    N = spec.N
    for i, j in spec.generators():
        total = TensorPoly((spec, spec))
        for k in range(1, N + 1):
            if spec.survives(i, k) and spec.survives(k, j):
                total = total + tensor(X(spec, i, k), X(spec, k, j))
        imgs[("X", i, j)] = total
    return imgs


def comult(p: NCPoly) -> TensorPoly:
    return apply_hom(comult_images(p.spec), p)


def counit_images(spec: AlgebraSpec):
    if spec.kind == TORUS:
        return {("Y", i): spec.one for i in range(1, spec.N + 1)}
    return {("X", i, j): spec.scalar(1 if i == j else 0) for i, j in spec.generators()}


def counit(p: NCPoly):
    return apply_hom(counit_images(p.spec), p, one=p.spec.one)


def antipode_gen(i: int, j: int, N: int, convention: str = MINUS_Q,
                 spec: AlgebraSpec | None = None) -> NCPoly:
    """c^(i-j) times the minor with row j and column i removed; c = q or -q."""
    spec = spec or qmatrix(N)
    rows = [r for r in range(1, N + 1) if r != j]
    cols = [c for c in range(1, N + 1) if c != i]
    base = Q if convention == PLAIN_Q else -Q
    return qminor(rows, cols, spec=spec) * spec.scalar(base ** (i - j))


def antipode_residuals(N: int, convention: str, side: str = "left"):
    """Residuals sum_k S(X_ik) X_kj - delta_ij qdet (or X_ik S(X_kj) for side='right')."""
    spec = qmatrix(N)
    det = qdet(N, spec)
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            total = NCPoly.zero(spec)
            for k in range(1, N + 1):
                if side == "left":
                    total = total + antipode_gen(i, k, N, convention) * X(spec, k, j)
                else:
                    total = total + X(spec, i, k) * antipode_gen(k, j, N, convention)
            if i == j:
                total = total - det
            out[(i, j)] = total
    return out


def resolve_antipode_convention():
    """Pick the base c in S(X_ij) = c^(i-j) M_ji that satisfies the antipode axiom at N=2.

    Returns (convention, notes).  Both candidates are tried, and a
    failing base q is reported.
    """
    notes = []
    chosen = None
    for conv in (PLAIN_Q, MINUS_Q):
        ok = all(not r for side in ("left", "right")
                 for r in antipode_residuals(2, conv, side).values())
        notes.append(f"antipode base {conv}: axiom {'holds' if ok else 'fails'} at N=2")
        if ok and chosen is None:
            chosen = conv
    if chosen is None:
        raise AlgebraError("neither antipode convention satisfies the axiom")
    if chosen != PLAIN_Q:
        notes.append("the base-q formula S(X_ij) = q^(i-j) M_ji fails the antipode axiom; "
                     "using (-q)^(i-j) M_ji")
    return chosen, notes


def hopf_ideal_violations(N: int):
    """Terms of Delta(X_ij), i > j, with no strictly-lower factor in either leg."""
    spec = qmatrix(N)
    bad = []
    for i in range(1, N + 1):
        for j in range(1, i):
            for key, c in comult(X(spec, i, j)).terms.items():
                lower = any(r > s for mono in key for (r, s) in mono[1])
                if not lower:
                    bad.append(((i, j), key))
    return bad


def transpose_images(spec: AlgebraSpec, target: AlgebraSpec):
    return {("X", i, j): X(target, j, i) for i, j in spec.generators()}


def transpose(p: NCPoly) -> NCPoly:
    if p.spec.kind != QM:
        raise AlgebraError("transpose acts on qm; use borel_transpose for Borel quotients")
    return apply_hom(transpose_images(p.spec, p.spec), p)


def borel_transpose(p: NCPoly) -> NCPoly:
    """The induced isomorphism O_q(B+) -> O_q(B-) (and back), X_ij -> X_ji."""
    if p.spec.kind not in (BOREL_PLUS, BOREL_MINUS):
        raise AlgebraError("borel_transpose needs a Borel algebra")
    target = borel("-" if p.spec.kind == BOREL_PLUS else "+", p.spec.N, p.spec.qval)
    return apply_hom(transpose_images(p.spec, target), p)


def defining_relation_residuals(spec: AlgebraSpec):
    """Raw residuals of the four quadratic relations, as (id, [(coeff, letters)])."""
    N = spec.N
    qh = spec.qhat
    q = spec.qpow(1)
    gens = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    out = []
    for (i, j), (l, m) in itertools.product(gens, gens):
        a = ((i, j), 1)
        b = ((l, m), 1)
        if i == l and j < m:
            out.append((f"row:{i}{j},{l}{m}", [(1, [a, b]), (-q, [b, a])]))
        elif j == m and i < l:
            out.append((f"col:{i}{j},{l}{m}", [(1, [a, b]), (-q, [b, a])]))
        elif i < l and j > m:
            out.append((f"commute:{i}{j},{l}{m}", [(1, [a, b]), (-1, [b, a])]))
        elif i < l and j < m:
            out.append((f"cross:{i}{j},{l}{m}",
                        [(1, [a, b]), (-1, [b, a]), (-qh, [((i, m), 1), ((l, j), 1)])]))
    return out


# ---------------------------------------------------------------------------
# unipotent generators
# ---------------------------------------------------------------------------

def unipotent_gen(kind: str, sign: str, i: int, j: int, N: int,
                  spec: AlgebraSpec | None = None) -> NCPoly:
    """y/z generators of the quantized unipotent subalgebras, 1 <= i < j <= N.

    plus side:  y = X_ii^-1 X_ij,  z = X_ij X_jj^-1
    minus side: y = X_jj^-1 X_ji,  z = X_ji X_ii^-1
    """
    if not (1 <= i < j <= N):
        raise AlgebraError(f"unipotent generators need 1 <= i < j <= N, got ({i},{j})")
    spec = spec or borel(sign, N)
    if sign == "+":
        return X(spec, i, i, -1) * X(spec, i, j) if kind == "y" else X(spec, i, j) * X(spec, j, j, -1)
    return X(spec, j, j, -1) * X(spec, j, i) if kind == "y" else X(spec, j, i) * X(spec, i, i, -1)


def unipotent_relations(N: int, kind: str, sign: str = "+"):
    """Residuals of the y (resp. z) presentation, one per index instance.

    The plus-side relations are used verbatim.  On the minus side the
    generators are q times the transpose images (y- = q tau(z+), z- = q tau(y+)),
    which rescales the linear term of the j = l branch: its coefficient
    becomes qhat instead of q^-1 qhat.
    """
    spec = borel(sign, N)
    g = {(i, j): unipotent_gen(kind, sign, i, j, N, spec)
         for i in range(1, N + 1) for j in range(i + 1, N + 1)}
    q = spec.qpow(1)
    qi = spec.qpow(-1)
    qh = spec.qhat
    mid = qi * qh if sign == "+" else qh
    out = []
    pairs = list(g)
    for (i, j), (l, m) in itertools.product(pairs, pairs):
        a, b = g[(i, j)], g[(l, m)]
        if i == l and j < m:
            out.append((f"row:{i}{j},{l}{m}", a * b - q * b * a))
        elif j == m and i < l:
            out.append((f"col:{i}{j},{l}{m}", a * b - q * b * a))
        elif i < l and j > m:
            out.append((f"commute:{i}{j},{l}{m}", a * b - b * a))
        elif i < l and j < m:
            if j < l:
                out.append((f"cross-apart:{i}{j},{l}{m}", a * b - b * a))
            elif j == l:
                out.append((f"cross-adjacent:{i}{j},{l}{m}", a * b - qi * b * a - mid * g[(i, m)]))
            else:
                out.append((f"cross-overlap:{i}{j},{l}{m}",
                            a * b - b * a - qh * g[(i, m)] * g[(l, j)]))
    return out


def verify_unipotent_presentation(N: int, signs=("+", "-")) -> Report:
    rep = Report("unipotent", N)
    for sign in signs:
        for kind in ("y", "z"):
            for cid, res in unipotent_relations(N, kind, sign):
                rep.add(f"{sign}{kind}:{cid}", res)
    if "-" in signs:
        rep.note("minus-side j=l branch uses coefficient qhat (transport of the plus-side "
                 "relation through the transpose, generators rescaled by q)")
    return rep


# ---------------------------------------------------------------------------
# torus, coactions, coinvariants
# ---------------------------------------------------------------------------

def torus_of(spec: AlgebraSpec) -> AlgebraSpec:
    return torus(spec.N, spec.qval)


def projection_images(spec: AlgebraSpec):
    """p: Borel -> torus, X_ii -> Y_ii, off-diagonal -> 0."""
    T = torus_of(spec)
    return {("X", i, j): (Y(T, i) if i == j else NCPoly.zero(T)) for i, j in spec.generators()}


def projection(p: NCPoly) -> NCPoly:
    return apply_hom(projection_images(p.spec), p)


def coaction_images(spec: AlgebraSpec, which: str):
    if spec.kind not in (BOREL_PLUS, BOREL_MINUS):
        raise AlgebraError("coactions are defined on the Borel quotients")
    T = torus_of(spec)
    if which == "eta":
        return {("X", i, j): tensor(X(spec, i, j), Y(T, j)) for i, j in spec.generators()}
    if which == "theta":
        return {("X", i, j): tensor(Y(T, i), X(spec, i, j)) for i, j in spec.generators()}
    raise AlgebraError(f"unknown coaction {which!r}")


def coaction(p: NCPoly, which: str = "eta") -> TensorPoly:
    """eta(X_ij) = X_ij (x) Y_jj or theta(X_ij) = Y_ii (x) X_ij, extended multiplicatively."""
    return apply_hom(coaction_images(p.spec, which), p)


def coaction_via_comult(p: NCPoly, which: str = "eta") -> TensorPoly:
    """(id (x) p) Delta or (p (x) id) Delta, built from the comultiplication."""
    delta = comult(p)
    leg = 1 if which == "eta" else 0
    return delta.map_leg(leg, projection)


def is_coinvariant(p: NCPoly, which: str = "eta") -> bool:
    img = coaction(p, which)
    T = torus_of(p.spec)
    unit = NCPoly.one(T)
    expect = tensor(p, unit) if which == "eta" else tensor(unit, p)
    return img == expect


def r_images(spec: AlgebraSpec):
    """r: torus -> Borel, Y_ii -> X_ii."""
    T = torus_of(spec)
    return {("Y", i): X(spec, i, i) for i in range(1, T.N + 1)}


def torus_embed(t: NCPoly, spec: AlgebraSpec) -> NCPoly:
    return apply_hom(r_images(spec), t)


def torus_antipode(t: NCPoly) -> NCPoly:
    T = t.spec
    return apply_hom({("Y", i): Y(T, i, -1) for i in range(1, T.N + 1)}, t)


def torus_monomial(T: AlgebraSpec, exps) -> NCPoly:
    """Y^exps with exps indexed 1..N-1 (Y_N eliminated)."""
    return NCPoly(T, {(tuple(exps), ()): T.one})


def convolution(f, g, t: NCPoly):
    """(f * g)(t) = sum f(t_1) g(t_2) over the torus comultiplication."""
    delta = comult(t)
    acc = None
    for (m1, m2), c in delta.terms.items():
        a = f(NCPoly(t.spec, {m1: t.spec.one}))
        b = g(NCPoly(t.spec, {m2: t.spec.one}))
        term = (a * b) * c
        acc = term if acc is None else acc + term
    return acc


def torus_act(t: NCPoly, p: NCPoly) -> NCPoly:
    """Left action h.a = sum r(h_1) a r(S h_2) of the torus on a Borel element."""
    spec = p.spec
    return convolution_action(t, p, spec, left=True)


def torus_right_act(p: NCPoly, t: NCPoly) -> NCPoly:
    """Right action a<h = sum r(S h_1) a r(h_2)."""
    return convolution_action(t, p, p.spec, left=False)


def convolution_action(t, p, spec, left=True):
    delta = comult(t)
    acc = NCPoly.zero(spec)
    for (m1, m2), c in delta.terms.items():
        h1 = NCPoly(t.spec, {m1: t.spec.one})
        h2 = NCPoly(t.spec, {m2: t.spec.one})
        if left:
            term = torus_embed(h1, spec) * p * torus_embed(torus_antipode(h2), spec)
        else:
            term = torus_embed(torus_antipode(h1), spec) * p * torus_embed(h2, spec)
        acc = acc + term * c
    return acc


# ---------------------------------------------------------------------------
# smash products
# ---------------------------------------------------------------------------

A_H = "A#H"
H_A = "H#A"


@dataclass
class SmashElement:
    """Element of A#O_q(T) (eta side, A generated by z) or O_q(T)#C (theta side, C by y).

    ``terms`` maps (z- or y-word, torus exponent vector) to coefficients; the
    word is a tuple of (i, j) index pairs of unipotent generators.
    """

    side: str
    sign: str
    N: int
    terms: dict = field(default_factory=dict)

    @property
    def kind(self):
        return "z" if self.side == A_H else "y"

    @property
    def borel_spec(self):
        return borel(self.sign, self.N)

    @property
    def torus_spec(self):
        return torus(self.N)

    @classmethod
    def basis(cls, side, sign, N, word=(), texps=None, coeff=None):
        texps = tuple(texps) if texps is not None else (0,) * (N - 1)
        c = LaurentPoly.const(1) if coeff is None else coeff
        return cls(side, sign, N, {(tuple(word), texps): c})

    def _compat(self, other):
        if (self.side, self.sign, self.N) != (other.side, other.sign, other.N):
            raise AlgebraError("smash elements from different products")

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return SmashElement(self.side, self.sign, self.N, out)

    def __mul__(self, other):
        if isinstance(other, SmashElement):
            return smash_mul(self, other)
        return SmashElement(self.side, self.sign, self.N,
                            {k: c * other for k, c in self.terms.items() if c * other})


def _unipotent_word(s: SmashElement, word) -> NCPoly:
    spec = s.borel_spec
    out = NCPoly.one(spec)
    for i, j in word:
        out = out * unipotent_gen(s.kind, s.sign, i, j, s.N, spec)
    return out


def _scalar_of(img: NCPoly, base: NCPoly):
    """c with img == c * base, base a normal-form element."""
    (m, c0), *_ = base.terms.items()
    c = img.terms.get(m)
    if c is None or img != base * (c * c0.inverse()):
        raise AlgebraError("torus action did not act by a scalar")
    return c * c0.inverse()


def smash_mul(s1: SmashElement, s2: SmashElement) -> SmashElement:
    """(a#h)(b#k) = a(h.b) # hk   or   (h#a)(k#b) = hk # (a<k) b, h, k group-like."""
    s1._compat(s2)
    T = s1.torus_spec
    out = SmashElement(s1.side, s1.sign, s1.N)
    for (w1, t1), c1 in s1.terms.items():
        for (w2, t2), c2 in s2.terms.items():
            if s1.side == A_H:
                moved = w2
                act = lambda b: torus_act(torus_monomial(T, t1), b)
            else:
                moved = w1
                act = lambda a: torus_right_act(a, torus_monomial(T, t2))
            scal = LaurentPoly.const(1)
            for ij in moved:
                base = unipotent_gen(s1.kind, s1.sign, *ij, s1.N, s1.borel_spec)
                scal = scal * _scalar_of(act(base), base)
            key = (w1 + w2, tuple(a + b for a, b in zip(t1, t2)))
            out = out + SmashElement(s1.side, s1.sign, s1.N, {key: c1 * c2 * scal})
    return out


def smash_phi(s: SmashElement) -> NCPoly:
    """Phi(a#h) = a r(h) on the A#H side, Psi(h#a) = r(h) a on the H#A side."""
    spec = s.borel_spec
    T = s.torus_spec
    out = NCPoly.zero(spec)
    for (w, t), c in s.terms.items():
        a = _unipotent_word(s, w)
        h = torus_embed(torus_monomial(T, t), spec)
        out = out + (a * h if s.side == A_H else h * a) * c
    return out
