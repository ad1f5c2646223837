"""The vector representation V(omega_1) and its tensor powers."""

from __future__ import annotations

from ..coeff import LaurentPoly, ONE
from ..ncalg import format_terms
from .uq import UqElement, atoms, iterated_comult
from .weights import beta, int_form


class ModuleVector:
    """Vector in V(omega_1)^{(x) m}: map from index tuples (j_1..j_m) to coefficients."""

    __slots__ = ("n", "m", "coeffs")

    def __init__(self, n, m, coeffs=None):
        self.n = n
        self.m = m
        self.coeffs = {}
        for k, c in (coeffs or {}).items():
            k = tuple(k)
            if len(k) != m or not all(1 <= j <= n + 1 for j in k):
                raise ValueError(f"bad basis index {k} for V^(x){m}, n={n}")
            v = self.coeffs.get(k, 0) + c
            if v:
                self.coeffs[k] = v
            else:
                self.coeffs.pop(k, None)

    @classmethod
    def basis(cls, n, *idx):
        return cls(n, len(idx), {tuple(idx): ONE})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return ModuleVector(self.n, self.m, {k: c for k, c in out.items() if c})

    def __mul__(self, c):
        return ModuleVector(self.n, self.m, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and (self.n, self.m, self.coeffs) == (
            other.n, other.m, other.coeffs)

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, *idx):
        return self.coeffs.get(tuple(idx), LaurentPoly())

    def __str__(self):
        items = sorted(self.coeffs.items())
        return format_terms((" (x) ".join(f"e{j}" for j in k), c) for k, c in items)


def act_atom_basis(n, atom, j):
    """An atom on e_j: returns (index, coeff) or None."""
    kind = atom[0]
    if kind == "K":
        return j, LaurentPoly.q(int_form(beta(n, j), atom[1]))
    i = atom[1]
    if kind == "E":
        return (j - 1, ONE) if i == j - 1 else None
    return (j + 1, ONE) if i == j else None


def act_word_basis(n, word, j):
    """A (kpart, letters) word on e_j, rightmost atom first."""
    c = ONE
    for atom in reversed(atoms(word)):
        r = act_atom_basis(n, atom, j)
        if r is None:
            return None
        j, c2 = r
        c = c * c2
    return j, c


def module_act(u: UqElement, v: ModuleVector) -> ModuleVector:
    """u.v; on V^(x)m through the (m-1)-fold comultiplication of u."""
    n = u.n
    if n != v.n:
        raise ValueError("rank mismatch between element and module")
    delta = iterated_comult(u, v.m)
    out = ModuleVector(n, v.m)
    for idx, cv in v.coeffs.items():
        for key, c in delta.terms.items():
            new = []
            coeff = c * cv
            for w, j in zip(key, idx):
                r = act_word_basis(n, w, j)
                if r is None:
                    break
                new.append(r[0])
                coeff = coeff * r[1]
            else:
                out = out + ModuleVector(n, v.m, {tuple(new): coeff})
    return out


def matrix_coefficient(f_idx, v_idx, u: UqElement):
    """c_{f, v}(u) = f(u.v) with f = e^*_{f_idx}, v = e_{v_idx} (tuples for tensor powers)."""
    f_idx = tuple(f_idx) if isinstance(f_idx, (tuple, list)) else (f_idx,)
    v_idx = tuple(v_idx) if isinstance(v_idx, (tuple, list)) else (v_idx,)
    return module_act(u, ModuleVector.basis(u.n, *v_idx)).coefficient(*f_idx)
