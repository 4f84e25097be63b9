"""Grothendieck-group bookkeeping: classes of the P/Q families, the
multiplication-by-the-truncated-ring operator, exact basis changes between
the two families, the rank-(s+1) expansion, and the tensor decomposition of
induced representations.

Class data lives at three levels:

- ``KClassRep``: an integer (or rational) combination of irreducibles at one
  symmetric-group level;
- ``KGenClass``: a rational combination of family classes keyed by
  (kind, exponent bound, partition);
- ``KModClass``: a combination  sum_r f_r * [ring at bound r]  with symmetric
  function coefficients f_r.

The Q-classes form an integral basis; the P-classes only a rational one, so
every transform from the Q side to the P side exposes denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinat import (
    ClassFunction,
    SymFunc,
    decompose,
    induce_from_young,
    irreducible_character,
    irreducible_class_function,
    partitions,
    schur,
    specht_dimension,
    z_order,
)
from .linalg import SparseRationalMatrix, matrix_rank, solve_columns
from .truncated_ring import RingConfig, fixed_monomial_count

__all__ = [
    "KClassRep",
    "KGenClass",
    "KModClass",
    "char_of_S",
    "mu_n",
    "mu_matrix",
    "p_class_in_q_basis",
    "q_class_in_p_basis",
    "rank_expand",
    "tensor_induced_decompose",
    "truncation_dim_check",
]


@dataclass(frozen=True)
class KClassRep:
    """A finitely supported combination of irreducibles at one level."""

    level: int
    mult: tuple  # sorted ((partition, Fraction), ...)

    @classmethod
    def make(cls, level: int, mult: dict) -> "KClassRep":
        clean = []
        for lam, c in sorted(mult.items(), reverse=True):
            if sum(lam) != level:
                raise ValueError(f"partition {lam} is not of size {level}")
            c = Fraction(c)
            if c:
                clean.append((lam, c))
        return cls(level, tuple(clean))

    def as_dict(self) -> dict:
        return dict(self.mult)

    def character(self) -> ClassFunction:
        out = None
        for lam, c in self.mult:
            term = irreducible_class_function(lam).scale(c)
            out = term if out is None else out + term
        if out is None:
            return ClassFunction(self.level, {mu: 0 for mu in partitions(self.level)})
        return out

    def dim(self) -> Fraction:
        return sum((c * specht_dimension(lam) for lam, c in self.mult), Fraction(0))


class KGenClass:
    """Rational combination of family classes keyed (kind, bound, partition)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        clean = {}
        for key, c in (coeffs or {}).items():
            kind, r, lam = key
            if kind not in ("P", "Q"):
                raise ValueError(f"unknown kind {kind!r}")
            c = Fraction(c)
            if c:
                clean[(kind, r, tuple(lam))] = c
        self.coeffs = dict(sorted(clean.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            w = out.get(k, Fraction(0)) + c
            if w:
                out[k] = w
            else:
                del out[k]
        return KGenClass(out)

    def scale(self, c):
        c = Fraction(c)
        return KGenClass({k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, KGenClass) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = ", ".join(f"{k[0]}(r={k[1]},{list(k[2])}): {v}" for k, v in self.coeffs.items())
        return f"KGenClass({{{terms}}})"


class KModClass:
    """Combination sum_r f_r * [ring at bound r], f_r symmetric functions."""

    __slots__ = ("parts",)

    def __init__(self, parts: dict | None = None):
        clean = {}
        for r, f in (parts or {}).items():
            if not isinstance(f, SymFunc):
                f = SymFunc(f)
            if not f.is_zero():
                clean[int(r)] = f
        self.parts = dict(sorted(clean.items()))

    def __add__(self, other):
        out = dict(self.parts)
        for r, f in other.parts.items():
            g = out.get(r, SymFunc()) + f
            if g.is_zero():
                out.pop(r, None)
            else:
                out[r] = g
        return KModClass(out)

    def scale_sym(self, f: SymFunc) -> "KModClass":
        return KModClass({r: f * g for r, g in self.parts.items()})

    def is_zero(self) -> bool:
        return not self.parts

    def __eq__(self, other):
        return isinstance(other, KModClass) and self.parts == other.parts

    def to_json_dict(self) -> dict:
        return {
            str(r): {
                ",".join(map(str, lam)) or "()": [c.numerator, c.denominator]
                for lam, c in f.coeffs.items()
            }
            for r, f in self.parts.items()
        }

    def __repr__(self):
        return f"KModClass({self.parts!r})"


def char_of_S(n: int, s: int) -> ClassFunction:
    """Character of the truncated ring in n variables as a permutation module:
    the trace of a permutation is its count of fixed monomials, which is
    (s+1)^(number of cycles) and in particular strictly positive."""
    cfg = RingConfig(n, s)
    return ClassFunction(n, {mu: fixed_monomial_count(mu, cfg) for mu in partitions(n)})


@lru_cache(maxsize=None)
def mu_matrix(n: int, s: int):
    """Multiplication-by-the-ring-class matrix on the irreducible basis at
    level n: column lam lists the multiplicities of the tensor of the ring
    with the lam-irreducible."""
    ps = partitions(n)
    chi_s = char_of_S(n, s)
    cols = {}
    for lam in ps:
        prod = chi_s * irreducible_class_function(lam)
        cols[lam] = decompose(prod)
    mat = SparseRationalMatrix(len(ps), len(ps))
    index = {lam: i for i, lam in enumerate(ps)}
    for lam, col in cols.items():
        for mu, c in col.items():
            mat.set(index[mu], index[lam], c)
    return mat, ps, index


def mu_n(V: KClassRep, s: int) -> KClassRep:
    """Tensor V with the truncated ring at its level and redecompose."""
    chi_s = char_of_S(V.level, s)
    prod = chi_s * V.character()
    return KClassRep.make(V.level, decompose(prod))


def p_class_in_q_basis(lam, s: int) -> KGenClass:
    """Expand a P-family class integrally in the Q-family classes at the same
    bound: the multiplicities of the ring tensored with the irreducible."""
    lam = tuple(lam)
    expanded = mu_n(KClassRep.make(sum(lam), {lam: 1}), s)
    return KGenClass({("Q", s, mu): c for mu, c in expanded.mult})


def q_class_in_p_basis(lam, s: int) -> KGenClass:
    """Expand a Q-family class rationally in the P-family classes: invert the
    multiplication-by-the-ring matrix (invertible because the ring character
    never vanishes; a singular matrix here is an internal error)."""
    lam = tuple(lam)
    n = sum(lam)
    mat, ps, index = mu_matrix(n, s)
    if matrix_rank(mat) != len(ps):
        raise AssertionError("multiplication-by-ring matrix is singular")
    target = {index[lam]: Fraction(1)}
    (sol,) = solve_columns(mat, [target])
    return KGenClass({("P", s, ps[i]): c for i, c in sol.items()})


def rank_expand(cls: KGenClass) -> KModClass:
    """Express a combination of family classes over the ring-class basis:
    a P-class contributes its Schur function at its own bound, a Q-class is
    first converted (rationally) to the P side."""
    out = KModClass()
    for (kind, r, lam), c in cls.coeffs.items():
        if kind == "P":
            out = out + KModClass({r: schur(lam).scale(c)})
        else:
            for (kind2, r2, mu), c2 in q_class_in_p_basis(lam, r).coeffs.items():
                assert kind2 == "P" and r2 == r
                out = out + KModClass({r: schur(mu).scale(c * c2)})
    return out


def tensor_induced_decompose(n: int, m: int, V: KClassRep, W: KClassRep) -> list:
    """Decompose the tensor of two induced modules: one induced piece for
    each overlap size r, induced from the triple product subgroup where the
    overlap block acts diagonally on both factors.

    Returns [(r, KClassRep at level n+m-r)] for r = 0..min(n, m).
    """
    if V.level != n or W.level != m:
        raise ValueError("class levels disagree with the stated sizes")
    chi_v = V.character()
    chi_w = W.character()
    out = []
    for r in range(min(n, m) + 1):
        sizes = (r, n - r, m - r)

        def value(split, _r=r):
            rho, alpha, beta = split
            left = tuple(sorted(rho + alpha, reverse=True))
            right = tuple(sorted(rho + beta, reverse=True))
            return chi_v.values[left] * chi_w.values[right]

        ind = induce_from_young(sizes, value)
        out.append((r, KClassRep.make(n + m - r, decompose(ind))))
    return out


def truncation_dim_check(n: int, m: int, N: int) -> bool:
    """Exact integer identity between the dimension of a tensor of two
    tuple modules at truncation N and the sum over overlap sizes."""
    from math import comb, factorial

    if n + m > N:
        raise ValueError("need n + m <= N so that every summand is nonzero")
    lhs = (factorial(N) // factorial(N - n)) * (factorial(N) // factorial(N - m))
    rhs = 0
    for r in range(min(n, m) + 1):
        rhs += comb(n, r) * comb(m, r) * factorial(r) * (factorial(N) // factorial(N - (n + m - r)))
    return lhs == rhs
