"""Named verification suites.  Each returns a Report."""

from __future__ import annotations

import itertools
import random

from .coeff import LaurentPoly, Q, QHAT_INV
from .ncalg import (
    NCPoly,
    TensorPoly,
    apply_hom,
    borel,
    canonical_words,
    qmatrix,
    rewrite_by_redexes,
    torus,
)
from . import qcoord as qc
from .report import Report
from .uqrep import functionals as fn
from .uqrep import pairing as pr
from .uqrep.uq import UqElement, all_words, cartan_omega, letters_weight
from .uqrep.vmodule import matrix_coefficient
from .uqrep.weights import alpha, beta, int_form, lambda_grid

SUITES = ("oqm", "unipotent", "hopf", "coinv", "smash", "xijmap",
          "pairing", "phi", "psi", "gram")


def _gens(spec):
    if spec.kind == "torus":
        return [(i, i) for i in range(1, spec.N + 1)]
    return spec.generators()


def _gen(spec, g):
    return NCPoly.gen(spec, g[0]) if spec.kind == "torus" else NCPoly.gen(spec, *g)


# ---------------------------------------------------------------------------
# oqm: rewriting, transpose
# ---------------------------------------------------------------------------

def suite_oqm(N: int, seed: int = 0, trials: int = 500, qval=2) -> Report:
    rep = Report("oqm", N)
    rng = random.Random(seed)
    spec = qmatrix(N)
    gens = spec.generators()
    for t in range(trials):
        a, b, c = (NCPoly.gen(spec, *rng.choice(gens)) for _ in range(3))
        rep.add(f"assoc:{t:03d}", (a * b) * c - a * (b * c))
    for t in range(50):
        letters = [(rng.choice(gens), 1) for _ in range(rng.randint(2, 5))]
        insertion = NCPoly.from_word(spec, letters)
        redex, _ = rewrite_by_redexes(spec, letters, rng)
        rep.add(f"strategy:{t:02d}", insertion - redex)
    for d in range(1, 4):
        for mono in canonical_words(spec, d):
            p = NCPoly(spec, {mono: spec.one})
            again = NCPoly.from_word(spec, [(g, 1) for g in mono[1]])
            rep.add(f"basis:{d}:{mono[1]}", p - again)
    for t in range(40):
        letters = [(rng.choice(gens), 1) for _ in range(rng.randint(1, 4))]
        coeff = LaurentPoly({rng.randint(-2, 2): rng.randint(1, 3)})
        sym = NCPoly.from_word(spec, letters, coeff).specialize(qval)
        pre = NCPoly.from_word(spec.specialized(qval), letters, coeff.eval(qval))
        rep.add(f"specialize:{t:02d}", sym - pre)
    for sign in "+-":
        b = borel(sign, N)
        diag = NCPoly.one(b)
        for k in range(1, N + 1):
            diag = diag * NCPoly.gen(b, k, k)
        rep.add(f"elim:borel{sign}", diag - NCPoly.one(b))
    rep.extend(suite_transpose(N))
    return rep


def suite_transpose(N: int) -> Report:
    rep = Report("transpose", N)
    spec = qmatrix(N)
    for rid, raw in qc.defining_relation_residuals(spec):
        res = NCPoly.zero(spec)
        for c, letters in raw:
            res = res + NCPoly.from_word(spec, [(g, 1) for g, _ in letters], c)
        rep.add(f"rel:{rid}", res)
        timg = NCPoly.zero(spec)
        for c, letters in raw:
            timg = timg + NCPoly.from_word(spec, [((g[1], g[0]), 1) for g, _ in letters], c)
        rep.add(f"tau:{rid}", timg)
    rep.add("tau:qdet", qc.transpose(qc.qdet(N)) - qc.qdet(N))
    bplus = borel("+", N)
    bminus = borel("-", N)
    qinv = LaurentPoly.q(-1)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            y = qc.unipotent_gen("y", "+", i, j, N, bplus)
            z = qc.unipotent_gen("z", "-", i, j, N, bminus)
            rep.add(f"tau-bar:y+{i}{j}", qc.borel_transpose(y) - z * qinv)
            zp = qc.unipotent_gen("z", "+", i, j, N, bplus)
            ym = qc.unipotent_gen("y", "-", i, j, N, bminus)
            rep.add(f"tau-bar:z+{i}{j}", qc.borel_transpose(zp) - ym * qinv)
    return rep


# ---------------------------------------------------------------------------
# unipotent, Hopf, coinvariants, smash
# ---------------------------------------------------------------------------

def suite_unipotent(N: int) -> Report:
    return qc.verify_unipotent_presentation(N)


def suite_hopf(N: int) -> Report:
    rep = Report("hopf", N)
    specs = [qmatrix(N), borel("+", N), borel("-", N), torus(N)]
    for spec in specs:
        for g in _gens(spec):
            x = _gen(spec, g)
            d = qc.comult(x)
            left = d.map_leg(0, qc.comult)
            right = d.map_leg(1, qc.comult)
            rep.add(f"coassoc:{spec.kind}:{g}", left - right)
            rep.add(f"counit-l:{spec.kind}:{g}", d.map_leg(0, qc.counit) - x)
            rep.add(f"counit-r:{spec.kind}:{g}", d.map_leg(1, qc.counit) - x)
        if spec.kind != "qm":
            for k in range(1, N):
                inv = _gen(spec, (k, k)) ** -1
                rep.add(f"grouplike-inv:{spec.kind}:{k}",
                        qc.comult(inv) - TensorPoly.pure(inv, inv))
    conv, notes = qc.resolve_antipode_convention()
    for n in notes:
        rep.note(n)
    for side in ("left", "right"):
        for (i, j), r in sorted(qc.antipode_residuals(N, conv, side).items()):
            rep.add(f"antipode-{side}:{conv}:{i}{j}", r)
    for (ij, key) in qc.hopf_ideal_violations(N):
        rep.add(f"hopf-ideal:{ij}:{key}", False)
    rep.add("hopf-ideal:checked", True)
    T = torus(N)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            yi, yj = NCPoly.gen(T, i), NCPoly.gen(T, j)
            rep.add(f"torus-comm:{i}{j}", yi * yj - yj * yi)
    prod = NCPoly.one(T)
    for i in range(1, N + 1):
        prod = prod * NCPoly.gen(T, i)
    rep.add("torus-det", prod - NCPoly.one(T))
    return rep


def _random_unipotent_product(rng, kind, sign, N, spec, max_len=4):
    pairs = [(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    word = [rng.choice(pairs) for _ in range(rng.randint(1, max_len))]
    out = NCPoly.one(spec)
    for ij in word:
        out = out * qc.unipotent_gen(kind, sign, *ij, N, spec)
    return word, out


def suite_coinv(N: int, seed: int = 0, trials: int = 200) -> Report:
    rep = Report("coinv", N)
    rng = random.Random(seed)
    for sign in "+-":
        spec = borel(sign, N)
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                z = qc.unipotent_gen("z", sign, i, j, N, spec)
                y = qc.unipotent_gen("y", sign, i, j, N, spec)
                rep.add(f"eta{sign}:z{i}{j}", qc.is_coinvariant(z, "eta"))
                rep.add(f"theta{sign}:y{i}{j}", qc.is_coinvariant(y, "theta"))
                x = NCPoly.gen(spec, *((i, j) if sign == "+" else (j, i)))
                rep.add(f"control:eta{sign}:X{i}{j}",
                        not qc.is_coinvariant(x, "eta"))
        for t in range(trials):
            kind, which = ("z", "eta") if t % 2 == 0 else ("y", "theta")
            word, p = _random_unipotent_product(rng, kind, sign, N, spec)
            rep.add(f"closure{sign}:{which}:{t:03d}", qc.is_coinvariant(p, which))
        for g in spec.generators():
            x = NCPoly.gen(spec, *g)
            for which in ("eta", "theta"):
                rep.add(f"dual-route{sign}:{which}:{g}",
                        qc.coaction(x, which) - qc.coaction_via_comult(x, which))
        for t in range(20):
            letters = [(rng.choice(spec.generators()), 1) for _ in range(rng.randint(1, 3))]
            x = NCPoly.from_word(spec, letters)
            for which in ("eta", "theta"):
                rep.add(f"dual-route{sign}:{which}:rand{t:02d}",
                        qc.coaction(x, which) - qc.coaction_via_comult(x, which))
    return rep


def _random_smash(rng, side, sign, N, terms=2):
    pairs = [(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    out = qc.SmashElement(side, sign, N)
    for _ in range(rng.randint(1, terms)):
        word = tuple(rng.choice(pairs) for _ in range(rng.randint(0, 2)))
        texps = tuple(rng.randint(-1, 1) for _ in range(N - 1))
        c = LaurentPoly({rng.randint(-1, 1): rng.randint(1, 2)})
        out = out + qc.SmashElement.basis(side, sign, N, word, texps, c)
    return out


def _torus_monomials(N, max_len):
    T = torus(N)
    out = [NCPoly.one(T)]
    letters = [(i, e) for i in range(1, N + 1) for e in (1, -1)]
    for L in range(1, max_len + 1):
        for combo in itertools.product(letters, repeat=L):
            p = NCPoly.one(T)
            for i, e in combo:
                p = p * NCPoly.gen(T, i, None, e)
            out.append(p)
    return out


def suite_smash(N: int, seed: int = 0, trials: int = 200) -> Report:
    rep = Report("smash", N)
    rng = random.Random(seed)
    for sign in "+-":
        for side in (qc.A_H, qc.H_A):
            for t in range(trials // 2):
                s1 = _random_smash(rng, side, sign, N)
                s2 = _random_smash(rng, side, sign, N)
                lhs = qc.smash_phi(qc.smash_mul(s1, s2))
                rhs = qc.smash_phi(s1) * qc.smash_phi(s2)
                rep.add(f"mult{sign}:{side}:{t:03d}", lhs - rhs)
        spec = borel(sign, N)
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                # the diagonal factor that y/z strip off, on each side
                a_idx, h_idx = (j, i) if sign == "+" else (i, j)
                target = NCPoly.gen(spec, *((i, j) if sign == "+" else (j, i)))
                s = qc.SmashElement.basis(qc.A_H, sign, N, ((i, j),), _torus_exp(N, a_idx))
                rep.add(f"witness{sign}:z{i}{j}#Y{a_idx}", qc.smash_phi(s) - target)
                s = qc.SmashElement.basis(qc.H_A, sign, N, ((i, j),), _torus_exp(N, h_idx))
                rep.add(f"witness{sign}:Y{h_idx}#y{i}{j}", qc.smash_phi(s) - target)
        for k, h in enumerate(_torus_monomials(N, 3)):
            val = qc.convolution(lambda a: qc.torus_embed(a, spec),
                                 lambda a: qc.torus_embed(qc.torus_antipode(a), spec), h)
            rep.add(f"cleft{sign}:{k:03d}", val - NCPoly.one(spec) * qc.counit(h))
        _smash_injectivity(rep, sign, N)
    rep.add("example:Y1.z12",
            qc.smash_mul(qc.SmashElement.basis(qc.A_H, "+", N, (), _unit_exp(N, 1)),
                         qc.SmashElement.basis(qc.A_H, "+", N, ((1, 2),)))
            == qc.SmashElement.basis(qc.A_H, "+", N, ((1, 2),), _unit_exp(N, 1), Q))
    return rep


def _unit_exp(N, k):
    return tuple(1 if r == k else 0 for r in range(1, N))


def _torus_exp(N, k):
    """Exponent vector of Y_k (Y_N = (Y_1...Y_{N-1})^-1)."""
    return (-1,) * (N - 1) if k == N else _unit_exp(N, k)


def _smash_injectivity(rep, sign, N):
    """Phi on ordered z-words of degree <= 2 times small torus monomials is injective."""
    pairs = [(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    words = [w for L in range(3) for w in itertools.combinations_with_replacement(pairs, L)]
    exps = list(itertools.product((-1, 0, 1), repeat=N - 1))
    rows = []
    for w in words:
        for t in exps:
            rows.append(qc.smash_phi(qc.SmashElement.basis(qc.A_H, sign, N, w, t)).terms)
    rep.add(f"phi-injective{sign}", pr._rank_at_two(rows) == len(rows))


# ---------------------------------------------------------------------------
# functionals, pairing, phi, psi, gram
# ---------------------------------------------------------------------------

def _span_indices(n, max_len):
    return [()] + [w for L in range(1, max_len + 1)
                   for w in itertools.product(range(1, n + 1), repeat=L)]


def suite_xijmap(N: int, max_len: int = 4, with_relations: bool = True) -> Report:
    n = N - 1
    rep = Report("xijmap", N)
    grid = lambda_grid(n)
    words = fn.spanning_words(n, max_len, grid)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            bad_module = 0
            bad_zero = 0
            for u in words:
                (lam, letters), = u.terms
                I = tuple(k for _, k in letters)
                closed = fn.xbar_eval(n, i, j, lam, I)
                if closed != matrix_coefficient(i, j, u):
                    bad_module += 1
                if i > j and closed:
                    bad_zero += 1
            rep.add(f"closed=module:X{i}{j}", bad_module == 0)
            if i > j:
                rep.add(f"J+:X{i}{j}", bad_zero == 0)
    leq = pr.leq0(n)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            ok = all(not matrix_coefficient(i, j, UqElement.word(leq, lam, tuple(("F", k) for k in I)))
                     for I in _span_indices(n, max_len) for lam in grid)
            rep.add(f"J-:X{i}{j}", ok)
    if with_relations and n <= 2:
        rep.extend(suite_relations_as_functionals(N, max_len))
    return rep


def suite_relations_as_functionals(N: int, max_len: int = 4) -> Report:
    """The quadratic relation residuals and the determinant in the X-bar functionals vanish."""
    n = N - 1
    rep = Report("functionals", N)
    grid = lambda_grid(n)
    words = fn.spanning_words(n, max_len, grid)
    spec = qmatrix(N)
    for rid, raw in qc.defining_relation_residuals(spec):
        bad = sum(1 for u in words if fn.raw_eval(n, raw, u))
        rep.add(f"functional:{rid}", bad == 0)
    det_raw = []
    for perm in itertools.permutations(range(1, N + 1)):
        det_raw.append(((-Q) ** qc.inversions(perm),
                        [((r, c), 1) for r, c in zip(range(1, N + 1), perm)]))
    det_raw.append((LaurentPoly.const(-1), []))
    rep.add("functional:qdet=1", all(not fn.raw_eval(n, det_raw, u) for u in words))
    return rep


def suite_pairing(N: int, seed: int = 0, trials: int = 300, max_letters: int = 4,
                  serre_len: int = 5) -> Report:
    n = N - 1
    rep = Report("pairing", N)
    rng = random.Random(seed)
    mq = -QHAT_INV
    grid = lambda_grid(n)
    wl = [beta(n, b) for b in range(1, n + 2)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rep.add(f"base:F{i}E{j}", pr.pair(pr.F_word(n, [i]), pr.E_word(n, [j]))
                    - (mq if i == j else 0))
    for mu in grid + wl:
        for nu in grid:
            rep.add(f"base:K{mu.coords}K{nu.coords}",
                    pr.pair(pr.F_word(n, [], mu), pr.E_word(n, [], nu))
                    - LaurentPoly.q(-int_form(mu, nu)))
            if mu:
                rep.add(f"base:K{mu.coords}E1", pr.pair(pr.F_word(n, [], mu), pr.E_word(n, [1])))
                rep.add(f"base:F1K{mu.coords}", pr.pair(pr.F_word(n, [1]), pr.E_word(n, [], mu)))
    a1, b1 = alpha(n, 1), beta(n, 1)
    for lam in grid:
        rep.add(f"value:K(-b1+a1)F1|K{lam.coords}E1",
                pr.pair(pr.F_word(n, [1], -b1 + a1), pr.E_word(n, [1], lam))
                - LaurentPoly.q(-1 + int_form(b1, lam)) * mq)
        rep.add(f"value:F1|K{lam.coords}E1",
                pr.pair(pr.F_word(n, [1]), pr.E_word(n, [1], lam))
                - LaurentPoly.q(int_form(a1, lam)) * mq)
    kgrid = grid + wl
    for t in range(trials):
        ly = rng.randint(0, 6)
        lx = rng.randint(0, 6 - ly)
        fy = [rng.randint(1, n) for _ in range(ly)]
        ex = [rng.randint(1, n) for _ in range(lx)]
        y = pr.F_word(n, fy, rng.choice(kgrid))
        x = pr.E_word(n, ex, rng.choice(grid))
        rep.add(f"split:{t:03d}", pr.pair(y, x, pr.LEFT) - pr.pair(y, x, pr.RIGHT))
    fwords = all_words(n, "F", max_letters)
    ewords = all_words(n, "E", max_letters)
    bad = 0
    count = 0
    for fw in fwords:
        wf = letters_weight(n, fw)
        for ew in ewords:
            if wf + letters_weight(n, ew):
                count += 1
                if pr.pair(UqElement.word(pr.leq0(n), None, fw),
                           UqElement.word(pr.geq0(n, True), None, ew)):
                    bad += 1
    rep.add(f"orthogonality:{count}-pairs", bad == 0)
    _serre_kernel(rep, n, serre_len, grid)
    return rep


def _serre_kernel(rep, n, max_len, grid):
    rels = pr.serre_relations(n)
    for rid, terms in rels:
        rdeg = len(terms[0][1])
        for extra in range(max_len - rdeg + 1):
            for outer in itertools.product(range(1, n + 1), repeat=extra):
                for cut in range(extra + 1):
                    a, b = outer[:cut], outer[cut:]
                    seqs = [(c, a + s + b) for c, s in terms]
                    pool = sorted(seqs[0][1])
                    partners = sorted(set(itertools.permutations(pool)))
                    bad_e = bad_f = 0
                    for fw in partners:
                        y = pr.F_word(n, fw)
                        for lam in ([grid[0]] if extra else grid):
                            val = sum((pr.pair(y, pr.E_word(n, s, lam)) * c for c, s in seqs),
                                      LaurentPoly())
                            if val:
                                bad_e += 1
                        x = pr.E_word(n, fw)
                        val = sum((pr.pair(pr.F_word(n, s), x) * c for c, s in seqs),
                                  LaurentPoly())
                        if val:
                            bad_f += 1
                    tag = f"{rid}:{''.join(map(str, a))}|{''.join(map(str, b))}"
                    rep.add(f"serre-kernel-E:{tag}", bad_e == 0)
                    rep.add(f"serre-kernel-F:{tag}", bad_f == 0)


def suite_phi(N: int, max_len: int = 4) -> Report:
    n = N - 1
    rep = Report("phi", N)
    grid = lambda_grid(n)
    B = borel("+", N)
    qinv = LaurentPoly.q(-1)
    for i in range(1, n + 2):
        b = beta(n, i)
        rep.add(f"K(-b{i})=X{i}{i}",
                pr.phi_check(pr.F_word(n, [], -b), NCPoly.gen(B, i, i), max_len, grid))
        rep.add(f"K(b{i})=X{i}{i}^-1",
                pr.phi_check(pr.F_word(n, [], b), NCPoly.gen(B, i, i, -1), max_len, grid))
    for i in range(1, n + 1):
        a, b = alpha(n, i), beta(n, i)
        x = NCPoly.gen(B, i, i + 1) * (-(qinv * QHAT_INV))
        rep.add(f"K(-b{i}+a{i})F{i}=X{i}{i + 1}",
                pr.phi_check(pr.F_word(n, [i], -b + a), x, max_len, grid))
        om = cartan_omega(UqElement.E(pr.geq0(n, True), i))
        target = NCPoly.gen(B, i, i + 1) * NCPoly.gen(B, i + 1, i + 1, -1) * (-QHAT_INV)
        rep.add(f"phi-omega:E{i}", pr.phi_check(om, target, max_len, grid))
        rep.add(f"control:F{i}!=X{i}{i + 1}",
                not pr.phi_check(pr.F_word(n, [i]), NCPoly.gen(B, i, i + 1), min(2, max_len), grid))
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            for si, sj in itertools.product((1, -1), repeat=2):
                y = pr.F_word(n, [], beta(n, i) * -si + beta(n, j) * -sj)
                x = NCPoly.gen(B, i, i, si) * NCPoly.gen(B, j, j, sj)
                rep.add(f"product:K{i}{j}:{si:+d}{sj:+d}", pr.phi_check(y, x, min(2, max_len), grid))
    return rep


def suite_psi(N: int) -> Report:
    return pr.verify_uqplus_presentation(N - 1)


def suite_gram(N: int, height_cap: int = 4, qval=2) -> Report:
    return pr.verify_gram(N - 1, height_cap, qval)


def run_suite(name: str, N: int, seed: int = 0, max_len: int = 4, qval=2) -> Report:
    if name == "oqm":
        return suite_oqm(N, seed, qval=qval)
    if name == "unipotent":
        return suite_unipotent(N)
    if name == "hopf":
        return suite_hopf(N)
    if name == "coinv":
        return suite_coinv(N, seed)
    if name == "smash":
        return suite_smash(N, seed)
    if name == "xijmap":
        return suite_xijmap(N, max_len)
    if name == "pairing":
        return suite_pairing(N, seed)
    if name == "phi":
        return suite_phi(N, max_len)
    if name == "psi":
        return suite_psi(N)
    if name == "gram":
        return suite_gram(N, qval=qval)
    if name == "all":
        rep = Report("all", N)
        for s in SUITES:
            rep.extend(run_suite(s, N, seed, max_len, qval), prefix=f"{s}/")
        return rep
    raise ValueError(f"unknown suite {name!r}")
