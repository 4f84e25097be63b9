"""Equivariant modules over the truncated ring at a finite truncation.

An ``EquivModule`` carries, over a fixed ``RingConfig(N, s)``:

- a list of hashable basis labels (for the standard families these are pairs
  ``(tuple_of_positions, exponent_vector)``);
- one multiplication matrix per variable;
- one permutation matrix per adjacent transposition (arbitrary permutations
  act through a reduced word, so storage is linear in N);
- an optional grading assigning each basis label an exponent vector.

Modules are immutable after construction; submodules and quotients are new
objects.  The two standard families:

- ``build_P(s, n, N)``: free module on ordered n-tuples of distinct
  positions, one copy of the truncated ring per tuple;
- ``build_Q(s, n, N)``: its quotient where each variable listed in the tuple
  annihilates that tuple's generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .combinat import (
    ClassFunction,
    injections,
    partitions,
)
from .linalg import ONE, SparseRationalMatrix
from .truncated_ring import (
    RingConfig,
    all_monomials,
    coxeter_word,
    representative_permutation,
)

__all__ = [
    "EquivModule",
    "EquivMap",
    "SnRep",
    "trivial_rep",
    "sign_rep",
    "regular_rep",
    "build_P",
    "build_Q",
    "build_induced",
    "direct_sum",
    "q_into_p_embedding",
    "character_of",
    "iso_by_character",
    "filtration_P",
    "filtration_layers",
    "check_axioms",
    "embed_label",
    "embedding_matrix",
    "pq_dimension",
]


class EquivModule:
    """A finite-dimensional module with commuting variable actions and a
    compatible symmetric-group action stored on adjacent transpositions."""

    __slots__ = ("cfg", "labels", "label_index", "xmul", "coxeter", "grading",
                 "permutation_like", "name")

    def __init__(self, cfg, labels, xmul, coxeter, grading=None,
                 permutation_like=False, name=""):
        self.cfg = cfg
        self.labels = list(labels)
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.label_index) != len(self.labels):
            raise ValueError("duplicate basis labels")
        self.xmul = list(xmul)
        self.coxeter = list(coxeter)
        if len(self.xmul) != cfg.N or len(self.coxeter) != max(cfg.N - 1, 0):
            raise ValueError("expected one matrix per variable and per adjacent swap")
        self.grading = list(grading) if grading is not None else None
        self.permutation_like = permutation_like
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.labels)

    def perm_matrix(self, g) -> SparseRationalMatrix:
        """Action of an arbitrary permutation, via a reduced word."""
        m = SparseRationalMatrix.identity(self.dim)
        for j in coxeter_word(g):
            m = self.coxeter[j] @ m
        return m

    def to_json_dict(self) -> dict:
        out = {
            "cfg": {"N": self.cfg.N, "s": self.cfg.s},
            "dim": self.dim,
            "labels": [_label_to_json(lab) for lab in self.labels],
            "xmul": [m.to_triplets() for m in self.xmul],
            "coxeter": [m.to_triplets() for m in self.coxeter],
        }
        if self.grading is not None:
            out["grading"] = [list(d) for d in self.grading]
        return out

    def __repr__(self):
        tag = self.name or "EquivModule"
        return f"{tag}(N={self.cfg.N}, s={self.cfg.s}, dim={self.dim})"


def _label_to_json(lab):
    if isinstance(lab, tuple) and len(lab) == 2 and isinstance(lab[0], tuple):
        return {"tuple": list(lab[0]), "mono": list(lab[1])}
    return {"raw": repr(lab)}


@dataclass
class EquivMap:
    """A module map: matrix is dim(target) x dim(source)."""

    source: EquivModule
    target: EquivModule
    matrix: SparseRationalMatrix

    def __post_init__(self):
        if self.matrix.nrows != self.target.dim or self.matrix.ncols != self.source.dim:
            raise ValueError("map shape does not match the modules")

    def check(self) -> None:
        """Assert equivariance: the matrix commutes with every variable and
        every adjacent transposition."""
        if self.source.cfg.N != self.target.cfg.N:
            raise ValueError("truncation levels differ")
        for i in range(self.source.cfg.N):
            if (self.matrix @ self.source.xmul[i]) != (self.target.xmul[i] @ self.matrix):
                raise AssertionError(f"map does not commute with x_{i}")
        for j in range(self.source.cfg.N - 1):
            if (self.matrix @ self.source.coxeter[j]) != (self.target.coxeter[j] @ self.matrix):
                raise AssertionError(f"map does not commute with swap {j}")

    def compose(self, other: "EquivMap") -> "EquivMap":
        """self after other."""
        if other.target is not self.source and other.target.labels != self.source.labels:
            raise ValueError("composition shape mismatch")
        return EquivMap(other.source, self.target, self.matrix @ other.matrix)

    def rank(self) -> int:
        from .linalg import matrix_rank

        return matrix_rank(self.matrix)


@dataclass(frozen=True)
class SnRep:
    """A representation of the symmetric group on n letters: dimension plus
    one matrix per adjacent transposition."""

    n: int
    dim: int
    coxeter: tuple

    def __post_init__(self):
        if len(self.coxeter) != max(self.n - 1, 0):
            raise ValueError("expected n-1 generator matrices")
        for m in self.coxeter:
            if m.nrows != self.dim or m.ncols != self.dim:
                raise ValueError("generator matrix has wrong shape")

    def matrix(self, g) -> SparseRationalMatrix:
        m = SparseRationalMatrix.identity(self.dim)
        for j in coxeter_word(g):
            m = self.coxeter[j] @ m
        return m


def trivial_rep(n: int) -> SnRep:
    one = SparseRationalMatrix.identity(1)
    return SnRep(n, 1, tuple(one for _ in range(max(n - 1, 0))))


def sign_rep(n: int) -> SnRep:
    neg = SparseRationalMatrix.from_entries(1, 1, [(0, 0, -1)])
    return SnRep(n, 1, tuple(neg for _ in range(max(n - 1, 0))))


def regular_rep(n: int) -> SnRep:
    """Left regular representation on all permutations of [n]."""
    elems = sorted(itertools.permutations(range(n)))
    index = {g: i for i, g in enumerate(elems)}
    mats = []
    for j in range(max(n - 1, 0)):
        m = SparseRationalMatrix(len(elems), len(elems))
        for g, i in index.items():
            h = _compose_swap(j, g)
            m.set(index[h], i, 1)
        mats.append(m)
    return SnRep(n, len(elems), tuple(mats))


def _compose_swap(j, g):
    """The permutation (swap j,j+1) composed after g."""
    out = []
    for v in g:
        if v == j:
            out.append(j + 1)
        elif v == j + 1:
            out.append(j)
        else:
            out.append(v)
    return tuple(out)


def pq_dimension(kind: str, s: int, n: int, N: int) -> int:
    """Closed-form dimension of the P or Q module at truncation N."""
    if n > N:
        raise ValueError(f"tuple size n={n} exceeds truncation N={N}")
    tuples = factorial(N) // factorial(N - n)
    if kind == "P":
        return (s + 1) ** N * tuples
    if kind == "Q":
        return (s + 1) ** (N - n) * tuples
    raise ValueError(f"unknown kind {kind!r}")


def _apply_perm_to_label(j, lab):
    """Swap positions j, j+1 in a (tuple, mono) label."""
    T, mono = lab
    newT = tuple(j + 1 if t == j else j if t == j + 1 else t for t in T)
    m = list(mono)
    m[j], m[j + 1] = m[j + 1], m[j]
    return (newT, tuple(m))


def _build_pq(kind: str, s: int, n: int, N: int) -> EquivModule:
    cfg = RingConfig(N, s)
    if n > N:
        raise ValueError(f"tuple size n={n} exceeds truncation N={N}")
    monos = all_monomials(cfg)
    labels = []
    for T in injections(n, N):
        tset = set(T)
        for mono in monos:
            if kind == "Q" and any(mono[t] for t in T):
                continue
            labels.append((T, mono))
    index = {lab: i for i, lab in enumerate(labels)}

    xmul = []
    for i in range(N):
        m = SparseRationalMatrix(len(labels), len(labels))
        for lab, col in index.items():
            T, mono = lab
            if kind == "Q" and i in T:
                continue
            if mono[i] == s:
                continue
            target = (T, mono[:i] + (mono[i] + 1,) + mono[i + 1:])
            m.set(index[target], col, ONE)
        xmul.append(m)

    coxeter = []
    for j in range(N - 1):
        m = SparseRationalMatrix(len(labels), len(labels))
        for lab, col in index.items():
            m.set(index[_apply_perm_to_label(j, lab)], col, ONE)
        coxeter.append(m)

    if kind == "P":
        grading = [mono for _, mono in labels]
    else:
        grading = []
        for T, mono in labels:
            d = list(mono)
            for t in T:
                d[t] += s
            grading.append(tuple(d))

    return EquivModule(cfg, labels, xmul, coxeter, grading=grading,
                       permutation_like=True, name=f"{kind}(s={s},n={n})")


def build_P(s: int, n: int, N: int) -> EquivModule:
    """Free module on ordered n-tuples: labels (T, mono) with mono unconstrained."""
    return _build_pq("P", s, n, N)


def build_Q(s: int, n: int, N: int) -> EquivModule:
    """Quotient family: labels (T, mono) with mono zero on T, and the listed
    variables annihilate their tuple's generator."""
    return _build_pq("Q", s, n, N)


def direct_sum(mods) -> EquivModule:
    mods = list(mods)
    if not mods:
        raise ValueError("empty direct sum")
    cfg = mods[0].cfg
    if any(m.cfg != cfg for m in mods):
        raise ValueError("all summands must share the ring configuration")
    labels = []
    for t, m in enumerate(mods):
        labels.extend((t, lab) for lab in m.labels)
    offsets = []
    off = 0
    for m in mods:
        offsets.append(off)
        off += m.dim
    total = off

    def blockdiag(pick):
        out = SparseRationalMatrix(total, total)
        for t, m in enumerate(mods):
            for i, row in enumerate(pick(m).rows):
                for j, v in row.items():
                    out.set(offsets[t] + i, offsets[t] + j, v)
        return out

    xmul = [blockdiag(lambda m, i=i: m.xmul[i]) for i in range(cfg.N)]
    coxeter = [blockdiag(lambda m, j=j: m.coxeter[j]) for j in range(cfg.N - 1)]
    grading = None
    if all(m.grading is not None for m in mods):
        grading = []
        for m in mods:
            grading.extend(m.grading)
    return EquivModule(cfg, labels, xmul, coxeter, grading=grading,
                       permutation_like=all(m.permutation_like for m in mods),
                       name="(+)".join(m.name or "M" for m in mods))


def _slot_swap_matrix(mod: EquivModule, c: int) -> SparseRationalMatrix:
    """Permutation of tuple slots c, c+1 on a P/Q module basis."""
    m = SparseRationalMatrix(mod.dim, mod.dim)
    for col, (T, mono) in enumerate(mod.labels):
        newT = list(T)
        newT[c], newT[c + 1] = newT[c + 1], newT[c]
        m.set(mod.label_index[(tuple(newT), mono)], col, ONE)
    return m


def build_induced(kind: str, s: int, rep: SnRep, N: int) -> EquivModule:
    """Isotypic induction: the slot-diagonal invariants of (P or Q) tensor rep.

    The subspace is cut out as the joint kernel of (generator - identity) for
    the slot action tensored with the representation matrices; its dimension
    is whatever that kernel computation returns.
    """
    from .linalg import nullspace

    n = rep.n
    base = _build_pq(kind, s, n, N)
    d, e = base.dim, rep.dim
    total = d * e

    def kron(a: SparseRationalMatrix, b: SparseRationalMatrix) -> SparseRationalMatrix:
        out = SparseRationalMatrix(total, total)
        for i, arow in enumerate(a.rows):
            for j, av in arow.items():
                for p, brow in enumerate(b.rows):
                    for q, bv in brow.items():
                        out.set(i * e + p, j * e + q, av * bv)
        return out

    ident = SparseRationalMatrix.identity(total)
    constraints = []
    for c in range(n - 1):
        constraints.append(kron(_slot_swap_matrix(base, c), rep.coxeter[c]) - ident)

    if constraints:
        basis = nullspace(SparseRationalMatrix.vstack(constraints))
    else:
        basis = [{t: ONE} for t in range(total)]
    free = _kernel_free_rows(basis)

    B = SparseRationalMatrix(total, len(basis))
    for col, v in enumerate(basis):
        for r, val in v.items():
            B.set(r, col, val)

    def restrict(big: SparseRationalMatrix) -> SparseRationalMatrix:
        """Coordinates of big @ B in the kernel basis: read off the free rows."""
        prod = big @ B
        out = SparseRationalMatrix(len(basis), len(basis))
        for t, r in enumerate(free):
            for j, v in prod.rows[r].items():
                out.set(t, j, v)
        # consistency: B @ out must reproduce prod
        if (B @ out) != prod:
            raise AssertionError("action does not preserve the invariant subspace")
        return out

    xmul = [restrict(kron(base.xmul[i], SparseRationalMatrix.identity(e))) for i in range(N)]
    coxeter = [restrict(kron(base.coxeter[j], SparseRationalMatrix.identity(e))) for j in range(N - 1)]
    labels = [("inv", kind, s, n, t) for t in range(len(basis))]
    return EquivModule(RingConfig(N, s), labels, xmul, coxeter, grading=None,
                       permutation_like=False, name=f"{kind}_ind(s={s},n={n},dimV={e})")


def _kernel_free_rows(basis) -> list:
    """For a kernel basis in free-column form, the row where each vector has
    its defining 1 (and every other vector vanishes)."""
    counts: dict = {}
    for v in basis:
        for k in v:
            counts[k] = counts.get(k, 0) + 1
    free = []
    for v in basis:
        cands = [k for k, val in v.items() if val == ONE and counts[k] == 1]
        if not cands:
            raise AssertionError("kernel basis is not in free-column form")
        free.append(min(cands))
    return free


def q_into_p_embedding(s: int, n: int, N: int) -> EquivMap:
    """The injective map from the Q family into the P family sending a tuple
    generator to the product of its own variables to the s-th power times it."""
    Q = build_Q(s, n, N)
    P = build_P(s, n, N)
    m = SparseRationalMatrix(P.dim, Q.dim)
    for col, (T, mono) in enumerate(Q.labels):
        target = list(mono)
        for t in T:
            target[t] += s
        m.set(P.label_index[(T, tuple(target))], col, ONE)
    return EquivMap(Q, P, m)


def character_of(M: EquivModule) -> ClassFunction:
    """Trace of a representative permutation of each cycle type."""
    N = M.cfg.N
    vals = {}
    for mu in partitions(N):
        g = representative_permutation(mu)
        mat = M.perm_matrix(g)
        vals[mu] = sum((mat.rows[i].get(i, Fraction(0)) for i in range(M.dim)), Fraction(0))
    return ClassFunction(N, vals)


def iso_by_character(A: EquivModule, B: EquivModule) -> bool:
    """Equality of characters; in characteristic zero this decides whether the
    underlying group representations agree (nothing is claimed about the
    module structure)."""
    if A.cfg != B.cfg:
        raise ValueError(f"config mismatch: {A.cfg} != {B.cfg}")
    return character_of(A) == character_of(B)


def _layer_order(s: int, n: int) -> list:
    """Exponent patterns on the tuple slots, deepest (all s) first: total
    degree descending, lexicographic within a degree."""
    pats = itertools.product(range(s + 1), repeat=n)
    return sorted(pats, key=lambda p: (-sum(p), p))


def filtration_layers(s: int, n: int, N: int):
    """The chain refining the power filtration of the P family.

    Returns (P, layers) where each layer is an EquivModule presenting one
    successive quotient; the k-th partial union of layer label sets spans a
    genuine submodule of P.
    """
    P = build_P(s, n, N)
    layers = []
    for pat in _layer_order(s, n):
        labels = [lab for lab in P.labels
                  if tuple(lab[1][t] for t in lab[0]) == pat]
        index = {lab: i for i, lab in enumerate(labels)}
        keep = set(labels)

        def project(mat: SparseRationalMatrix) -> SparseRationalMatrix:
            out = SparseRationalMatrix(len(labels), len(labels))
            for col, lab in enumerate(labels):
                src = P.label_index[lab]
                for r, v in mat.column(src).items():
                    rl = P.labels[r]
                    if rl in keep:
                        out.set(index[rl], col, v)
            return out

        xmul = [project(P.xmul[i]) for i in range(N)]
        coxeter = [project(P.coxeter[j]) for j in range(N - 1)]
        layers.append(EquivModule(P.cfg, labels, xmul, coxeter,
                                  permutation_like=True,
                                  name=f"P(s={s},n={n})/layer{pat}"))
    return P, layers


def filtration_P(s: int, n: int, N: int) -> list:
    """Characters of the successive quotients of the refined power filtration
    of the P family; the list has length (s+1)^n."""
    _, layers = filtration_layers(s, n, N)
    return [character_of(layer) for layer in layers]


def check_axioms(M: EquivModule) -> None:
    """Assert every structural identity of an equivariant module, exactly."""
    N, s = M.cfg.N, M.cfg.s
    eye = SparseRationalMatrix.identity(M.dim)
    for i in range(N):
        for j in range(i + 1, N):
            if (M.xmul[i] @ M.xmul[j]) != (M.xmul[j] @ M.xmul[i]):
                raise AssertionError(f"x_{i} and x_{j} do not commute")
    for i in range(N):
        if not M.xmul[i].power(s + 1).is_zero():
            raise AssertionError(f"x_{i}^(s+1) is nonzero")
    for j in range(N - 1):
        if (M.coxeter[j] @ M.coxeter[j]) != eye:
            raise AssertionError(f"swap {j} is not an involution")
    for j in range(N - 2):
        a, b = M.coxeter[j], M.coxeter[j + 1]
        if (a @ b @ a) != (b @ a @ b):
            raise AssertionError(f"braid relation fails at {j}")
    for j in range(N - 1):
        for k in range(j + 2, N - 1):
            a, b = M.coxeter[j], M.coxeter[k]
            if (a @ b) != (b @ a):
                raise AssertionError(f"distant swaps {j},{k} do not commute")
    for j in range(N - 1):
        for i in range(N):
            swapped = j + 1 if i == j else j if i == j + 1 else i
            lhs = M.coxeter[j] @ M.xmul[i] @ M.coxeter[j]
            if lhs != M.xmul[swapped]:
                raise AssertionError(f"swap {j} conjugates x_{i} incorrectly")
    if M.grading is not None:
        for i in range(N):
            for col, row_entries in enumerate(M.xmul[i].columns()):
                for r in row_entries:
                    expect = list(M.grading[col])
                    expect[i] += 1
                    if tuple(expect) != M.grading[r]:
                        raise AssertionError("grading is not raised by one step")
        for j in range(N - 1):
            for col, row_entries in enumerate(M.coxeter[j].columns()):
                for r in row_entries:
                    d = list(M.grading[col])
                    d[j], d[j + 1] = d[j + 1], d[j]
                    if tuple(d) != M.grading[r]:
                        raise AssertionError("grading is not permuted by swaps")


def embed_label(lab, N_new: int):
    """Pad the exponent part of a (tuple, mono) label to a larger truncation.

    Direct-sum labels (component index, inner label) are padded recursively.
    """
    if isinstance(lab, tuple) and len(lab) == 2:
        head, tail = lab
        if isinstance(head, int) and isinstance(tail, tuple):
            return (head, embed_label(tail, N_new))
        if isinstance(head, tuple) and isinstance(tail, tuple):
            if N_new < len(tail):
                raise ValueError("cannot shrink a label")
            return (head, tail + (0,) * (N_new - len(tail)))
    raise ValueError(f"no canonical inclusion for label {lab!r}")


def embedding_matrix(small: EquivModule, big: EquivModule) -> SparseRationalMatrix:
    """Canonical basis-label inclusion of a module at truncation N into the
    matching module at truncation N+1 (labels padded by zero exponents)."""
    m = SparseRationalMatrix(big.dim, small.dim)
    for col, lab in enumerate(small.labels):
        try:
            target = embed_label(lab, big.cfg.N)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"no canonical inclusion for label {lab!r}") from exc
        row = big.label_index.get(target)
        if row is None:
            raise ValueError(f"label {target!r} is absent at the larger truncation")
        m.set(row, col, 1)
    return m
