"""Equivariant Hom solvers, stabilization across truncations, Ext and Tor.

Hom convention: ``hom`` and ``stable_hom`` take the *source* first, so
``stable_hom(PQFamily("Q", s, a), PQFamily("Q", s, b), N)`` computes module
maps from the tuple-size-a family to the tuple-size-b family.  By the mapping
property of the Q generators, such a map is determined by the image of the
canonical generator, so the solution space is the set of vectors in the
target that are fixed by every swap not touching the first a positions and
annihilated by the first a variables (plus (r+1)st-power conditions when the
source has a smaller exponent bound r than the ambient ring).

Stabilization: truncation-level solution spaces contain boundary junk
supported on all N variables.  ``stable_hom`` therefore solves at N, pushes
each solution along the canonical basis-label inclusion into level N+1, and
keeps only those that still satisfy the level-(N+1) constraints.  The three
dimensions (at N, at N+1, stable) are always reported separately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinat import ClassFunction, partitions
from .equivariant import (
    EquivMap,
    EquivModule,
    SnRep,
    build_P,
    build_Q,
    character_of,
    direct_sum,
    embed_label,
    q_into_p_embedding,
)
from .linalg import (
    ONE,
    SpanBasis,
    SparseRationalMatrix,
    kernel_of_vectors,
    matrix_rank,
    nullspace,
    rank_of_vectors,
    vec_axpy,
)
from .truncated_ring import RingConfig, all_monomials, representative_permutation

__all__ = [
    "AssemblyError",
    "PQFamily",
    "StableHomResult",
    "Complex",
    "hom_generic",
    "hom_mapping_property",
    "map_from_generator_value",
    "stable_hom",
    "coresolution_Q",
    "ext_stable",
    "ext_truncated",
    "tor_periodic",
    "tor_complex",
]


class AssemblyError(AssertionError):
    """An internally assembled object failed one of its exact checks."""


@dataclass(frozen=True)
class PQFamily:
    """A P- or Q-type module family: kind, intrinsic exponent bound, tuple size."""

    kind: str
    s: int
    n: int

    def __post_init__(self):
        if self.kind not in ("P", "Q"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.s < 0 or self.n < 0:
            raise ValueError("family parameters must be nonnegative")

    def build(self, N: int) -> EquivModule:
        return _build_family(self.kind, self.s, self.n, N)


@lru_cache(maxsize=64)
def _build_family(kind: str, s: int, n: int, N: int) -> EquivModule:
    # modules are immutable after construction, so sharing them is safe
    if kind == "P":
        return build_P(s, n, N)
    return build_Q(s, n, N)


@dataclass
class StableHomResult:
    dim_at_N: int
    dim_at_N_plus_1: int
    dim_stable: int
    basis: list  # stable solution vectors at level N

    def __post_init__(self):
        if self.dim_stable > min(self.dim_at_N, self.dim_at_N_plus_1):
            raise AssemblyError("stable dimension exceeds a truncation dimension")


@dataclass
class Complex:
    """A sequence of modules with maps[k]: modules[k] -> modules[k+1];
    consecutive composites must vanish exactly."""

    modules: list
    maps: list

    def check_composites(self) -> None:
        for k in range(len(self.maps) - 1):
            prod = self.maps[k + 1].matrix @ self.maps[k].matrix
            if not prod.is_zero():
                raise AssemblyError(f"composite at position {k} is nonzero")

    def ranks(self) -> list:
        return [matrix_rank(m.matrix) for m in self.maps]

    def check_exactness(self) -> None:
        """Rank bookkeeping: exact at every interior module."""
        ranks = self.ranks()
        for k in range(1, len(self.maps)):
            dim = self.modules[k].dim
            if ranks[k - 1] + ranks[k] != dim:
                raise AssemblyError(
                    f"complex is not exact at position {k}: "
                    f"{ranks[k - 1]} + {ranks[k]} != {dim}"
                )


# ---------------------------------------------------------------------------
# mapping-property constraints


def _source_constraint_blocks(profile: PQFamily, T: EquivModule) -> list:
    """Matrices whose joint kernel is the space of generator images of maps
    out of the profile's module into T."""
    N = T.cfg.N
    n, r = profile.n, profile.s
    if n > N:
        raise ValueError(f"profile tuple size {n} exceeds truncation {N}")
    blocks = []
    if profile.kind == "Q":
        for i in range(n):
            blocks.append(T.xmul[i])
        power_vars = range(n, N)
    else:
        power_vars = range(N)
    for i in power_vars:
        p = T.xmul[i].power(r + 1)
        if not p.is_zero():
            blocks.append(p)
    eye = SparseRationalMatrix.identity(T.dim)
    for j in range(n, N - 1):
        blocks.append(T.coxeter[j] - eye)
    return blocks


def _column_map(mat: SparseRationalMatrix):
    """For a permutation-like matrix, the partial map column -> row.

    Requires every column and every row to carry at most one entry, equal
    to 1 (so the matrix is a partial injection on basis labels).
    """
    out = [None] * mat.ncols
    seen_rows = set()
    for i, row in enumerate(mat.rows):
        if len(row) > 1:
            return None
        for j, v in row.items():
            if (v is not ONE and v != ONE) or out[j] is not None or i in seen_rows:
                return None
            out[j] = i
            seen_rows.add(i)
    return out


def _pq_constraint_maps(profile: PQFamily, T: EquivModule):
    """Label-chasing form of the source constraints on a permutation-like
    target: (ops, swaps), where each op is a partial injection label -> label
    (a killing operator: a solution must vanish wherever it is defined) and
    each swap is a total label permutation the solution must commute with.

    Returns None when the target is not genuinely permutation-like.
    """
    N, n = T.cfg.N, profile.n
    if n > N:
        raise ValueError(f"profile tuple size {n} exceeds truncation {N}")
    xmaps = []
    for i in range(N):
        cm = _column_map(T.xmul[i])
        if cm is None:
            return None
        xmaps.append(cm)
    swaps = []
    for j in range(n, N - 1):
        cm = _column_map(T.coxeter[j])
        if cm is None or any(v is None for v in cm):
            return None
        swaps.append(cm)

    def chase(cm, times):
        out = list(range(T.dim))
        for _ in range(times):
            out = [None if t is None else cm[t] for t in out]
        return out

    ops = []
    if profile.kind == "Q":
        for i in range(n):
            ops.append(xmaps[i])
        power_vars = range(n, N)
    else:
        power_vars = range(N)
    r = profile.s
    for i in power_vars:
        p = chase(xmaps[i], r + 1)
        if any(t is not None for t in p):
            ops.append(p)
    return ops, swaps


def _mapping_solutions(profile: PQFamily, T: EquivModule) -> list:
    """Basis of the joint kernel of the source constraints inside T."""
    if T.permutation_like:
        fast = _mapping_solutions_fast(profile, T)
        if fast is not None:
            return fast
    blocks = _source_constraint_blocks(profile, T)
    if not blocks:
        return [{t: ONE} for t in range(T.dim)]
    return nullspace(SparseRationalMatrix.vstack(blocks))


def _mapping_solutions_fast(profile: PQFamily, T: EquivModule) -> list | None:
    """Orbit-sum solution basis for permutation-like targets.

    The x-type constraints are partial injections on labels, so a solution
    must vanish on every label they move; the swap constraints make it
    constant on orbits of the residual symmetric group.  This computes the
    identical kernel as the generic elimination, exactly.
    """
    data = _pq_constraint_maps(profile, T)
    if data is None:
        return None
    ops, swap_maps = data
    moved = set()
    for cm in ops:
        moved.update(j for j, v in enumerate(cm) if v is not None)
    allowed = [t for t in range(T.dim) if t not in moved]
    allowed_set = set(allowed)
    # orbits of the residual group on labels, restricted to allowed ones
    seen = set()
    basis = []
    for t in allowed:
        if t in seen:
            continue
        orbit = {t}
        frontier = [t]
        while frontier:
            u = frontier.pop()
            for cm in swap_maps:
                w = cm[u]
                if w not in orbit:
                    orbit.add(w)
                    frontier.append(w)
        seen |= orbit
        if all(u in allowed_set for u in orbit):
            basis.append({u: ONE for u in sorted(orbit)})
    return basis


def hom_mapping_property(profile: PQFamily, T: EquivModule) -> list:
    """Solution vectors v in T for maps out of the profile module: v is fixed
    by every swap beyond the first n positions and annihilated by the first n
    variables (and by (r+1)st powers elsewhere when r is below the ring bound)."""
    if profile.kind != "Q":
        raise ValueError("the mapping-property solver expects a Q-type source")
    return _mapping_solutions(profile, T)


def map_from_generator_value(profile: PQFamily, source: EquivModule,
                             target: EquivModule, v: dict) -> EquivMap:
    """Equivariant extension of generator-image v to a full module map.

    The source must be the profile's module at the target's truncation; the
    column at a basis label (T, mono) is mono applied to the relabeling of v
    along any permutation sending (0..n-1) to T.
    """
    N = target.cfg.N
    n = profile.n
    mat = SparseRationalMatrix(target.dim, source.dim)
    perm_cache: dict = {}
    for col, (tup, mono) in enumerate(source.labels):
        if tup not in perm_cache:
            rest = [p for p in range(N) if p not in tup]
            perm = tuple(list(tup) + rest)  # position k maps to perm[k]
            perm_cache[tup] = target.perm_matrix(perm).apply(v)
        w = perm_cache[tup]
        for i, e in enumerate(mono):
            for _ in range(e):
                w = target.xmul[i].apply(w)
        for r, val in w.items():
            mat.set(r, col, val)
    return EquivMap(source, target, mat)


def hom_generic(M: EquivModule, T: EquivModule) -> list:
    """Exact basis of the space of equivariant maps M -> T, by solving the
    commutation constraints on the full matrix of the map."""
    if M.cfg != T.cfg:
        raise ValueError(f"config mismatch: {M.cfg} != {T.cfg}")
    dm, dt = M.dim, T.dim

    def vec_index(t_row, m_col):
        return m_col * dt + t_row

    rows = []
    pairs = [(xm, xt) for xm, xt in zip(M.xmul, T.xmul)]
    pairs += [(cm, ct) for cm, ct in zip(M.coxeter, T.coxeter)]
    for xm, xt in pairs:
        xm_cols = xm.columns()
        for j in range(dm):
            colj = xm_cols[j]
            for t in range(dt):
                row = {}
                for c, vv in colj.items():
                    row[vec_index(t, c)] = row.get(vec_index(t, c), Fraction(0)) + vv
                for r, vv in xt.rows[t].items():
                    key = vec_index(r, j)
                    w = row.get(key, Fraction(0)) - vv
                    if w:
                        row[key] = w
                    else:
                        row.pop(key, None)
                if row:
                    rows.append(row)
    from .linalg import Echelon

    ech = Echelon(dm * dt)
    for row in rows:
        ech.add(row)
    maps = []
    for vec in ech.kernel_basis():
        mat = SparseRationalMatrix(dt, dm)
        for key, val in vec.items():
            m_col, t_row = divmod(key, dt)
            mat.set(t_row, m_col, val)
        maps.append(EquivMap(M, T, mat))
    return maps


def _embed_vector(v: dict, small: EquivModule, big: EquivModule) -> dict:
    out = {}
    for idx, val in v.items():
        target = embed_label(small.labels[idx], big.cfg.N)
        row = big.label_index.get(target)
        if row is None:
            raise ValueError("no canonical inclusion between the built modules")
        out[row] = val
    return out


def _stable_subspace(profile: PQFamily, solutions, small: EquivModule,
                     big: EquivModule) -> list:
    """Members of span(solutions) whose level-(N+1) push still satisfies the
    source constraints evaluated in the larger module."""
    if not solutions:
        return []
    data = _pq_constraint_maps(profile, big)
    columns = []
    if data is not None:
        ops, swaps = data
        dim = big.dim
        for v in solutions:
            w = _embed_vector(v, small, big)
            stacked: dict = {}
            offset = 0
            for cm in ops:
                for j, val in w.items():
                    t = cm[j]
                    if t is not None:
                        stacked[offset + t] = stacked.get(offset + t, Fraction(0)) + val
                offset += dim
            for cm in swaps:
                for j, val in w.items():
                    for key, sgn in ((offset + cm[j], val), (offset + j, -val)):
                        acc = stacked.get(key, Fraction(0)) + sgn
                        if acc:
                            stacked[key] = acc
                        else:
                            stacked.pop(key, None)
                offset += dim
            columns.append({k: v2 for k, v2 in stacked.items() if v2})
    else:
        blocks = _source_constraint_blocks(profile, big)
        block_cols = [blk.columns() for blk in blocks]
        for v in solutions:
            w = _embed_vector(v, small, big)
            stacked = {}
            offset = 0
            for blk, cols in zip(blocks, block_cols):
                for j, val in w.items():
                    for r, bv in cols[j].items():
                        key = offset + r
                        acc = stacked.get(key, Fraction(0)) + val * bv
                        if acc:
                            stacked[key] = acc
                        else:
                            stacked.pop(key, None)
                offset += blk.nrows
            columns.append(stacked)
    kept = []
    for coeffs in kernel_of_vectors(columns):
        vec: dict = {}
        for t, c in coeffs.items():
            vec_axpy(vec, c, solutions[t])
        kept.append(vec)
    return kept


def stable_hom(source: PQFamily, target, N: int) -> StableHomResult:
    """Solve for maps source -> target at truncation N, then keep the
    solutions that survive the canonical inclusion into truncation N+1.

    ``target`` is a PQFamily or any callable N -> EquivModule whose labels
    admit the canonical padding inclusion.
    """
    build = target.build if isinstance(target, PQFamily) else target
    T_small = build(N)
    T_big = build(N + 1)
    sols = _mapping_solutions(source, T_small)
    big_sols = _mapping_solutions(source, T_big)
    stable = _stable_subspace(source, sols, T_small, T_big)
    return StableHomResult(len(sols), len(big_sols), len(stable), stable)


# ---------------------------------------------------------------------------
# coresolutions and Ext


def _compositions_of(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions_of(total - first, parts - 1):
            yield (first,) + rest


def _mult_by_tuple_power(P: EquivModule, pos: int, exp: int) -> SparseRationalMatrix:
    """Multiplication by (variable at tuple slot pos)^exp on a P module."""
    m = SparseRationalMatrix(P.dim, P.dim)
    for col, (T, mono) in enumerate(P.labels):
        var = T[pos]
        if mono[var] + exp <= P.cfg.s:
            target = mono[:var] + (mono[var] + exp,) + mono[var + 1:]
            m.set(P.label_index[(T, target)], col, 1)
    return m


def coresolution_Q(s: int, n: int, N: int, length: int) -> Complex:
    """The augmented exact complex 0 -> Q -> P^(b_0) -> P^(b_1) -> ...

    Built from one strand per tuple slot (multiplication alternating between
    exponent 1 and exponent s on that slot's variable), tensored over the n
    slots; ``length`` is the number of P-type terms.  Exactness is verified by
    rank bookkeeping and composite checks; failures raise AssemblyError with
    the offending position.
    """
    if length < 1:
        raise ValueError("need at least one coresolution term")
    Q = build_Q(s, n, N)
    P = build_P(s, n, N)

    def term_indices(j):
        if s == 0 or n == 0:
            return [()] if j == 0 else []
        return sorted(_compositions_of(j, n))

    def make_term(j):
        idxs = term_indices(j)
        if not idxs:
            cfg = RingConfig(N, s)
            zero = SparseRationalMatrix(0, 0)
            return EquivModule(cfg, [], [zero] * N, [zero] * max(N - 1, 0),
                               permutation_like=True, name="0"), idxs
        if len(idxs) == 1:
            return P, idxs
        return direct_sum([P] * len(idxs)), idxs

    modules = [Q]
    terms = []
    for j in range(length):
        mod, idxs = make_term(j)
        modules.append(mod)
        terms.append(idxs)

    maps = [q_into_p_embedding(s, n, N)]
    if terms[0] != [()] and terms[0] != [(0,) * n]:
        raise AssemblyError("coresolution head has unexpected shape")

    step = {0: 1, 1: s}  # exponent used from an even / odd strand position

    for j in range(length - 1):
        src_idxs, dst_idxs = terms[j], terms[j + 1]
        src_pos = {a: t for t, a in enumerate(src_idxs)}
        dst_pos = {a: t for t, a in enumerate(dst_idxs)}
        mat = SparseRationalMatrix(modules[j + 2].dim, modules[j + 1].dim)
        if dst_idxs:
            for a in src_idxs:
                for pos in range(n):
                    b = a[:pos] + (a[pos] + 1,) + a[pos + 1:]
                    if b not in dst_pos:
                        continue
                    sign = (-1) ** sum(a[:pos])
                    block = _mult_by_tuple_power(P, pos, step[a[pos] % 2])
                    roff = dst_pos[b] * P.dim
                    coff = src_pos[a] * P.dim
                    for i, row in enumerate(block.rows):
                        for c, v in row.items():
                            mat.add_to(roff + i, coff + c, sign * v)
        maps.append(EquivMap(modules[j + 1], modules[j + 2], mat))

    cx = Complex(modules, maps)
    cx.check_composites()
    cx.check_exactness()
    return cx


def ext_stable(s: int, n_source: int, n_target: int, N: int, max_degree: int,
               length: int | None = None) -> list:
    """Stable self/cross Ext of Q families, as cohomology of the stable-Hom
    complex of an exact coresolution of the target by P terms.

    Needs one coresolution term beyond ``max_degree + 1``; raises ValueError
    when a supplied ``length`` is too small to determine the last degree.
    """
    need = max_degree + 2
    if length is None:
        length = need
    if length < need:
        raise ValueError(
            f"coresolution length {length} too small for degree {max_degree}: "
            f"one extra term is required"
        )
    src = PQFamily("Q", s, n_source)
    cx_small = coresolution_Q(s, n_target, N, length)
    cx_big = coresolution_Q(s, n_target, N + 1, length)

    spaces = []
    for k in range(length):
        T_small = cx_small.modules[k + 1]
        T_big = cx_big.modules[k + 1]
        if T_small.dim == 0:
            spaces.append([])
            continue
        sols = _mapping_solutions(src, T_small)
        spaces.append(_stable_subspace(src, sols, T_small, T_big))

    # ranks of the induced differentials restricted to the stable spaces
    ranks = [0] * (length - 1)
    for k in range(length - 1):
        if not spaces[k]:
            continue
        d = cx_small.maps[k + 1].matrix
        images = [d.apply(v) for v in spaces[k]]
        images = [w for w in images if w]
        if images and spaces[k + 1]:
            span = SpanBasis(spaces[k + 1], cx_small.modules[k + 2].dim)
            for w in images:
                if not span.contains(w):
                    raise AssemblyError("differential leaves the stable solution space")
        elif images:
            raise AssemblyError("differential leaves the stable solution space")
        ranks[k] = rank_of_vectors(images, cx_small.modules[k + 2].dim)

    out = []
    for i in range(max_degree + 1):
        ext = len(spaces[i]) - ranks[i] - (ranks[i - 1] if i > 0 else 0)
        out.append(ext)
    return out


# ---------------------------------------------------------------------------
# truncated equivariant Ext via minimal covers


def _all_perms(N):
    return sorted(itertools.permutations(range(N)))


def _quotient_by_radical(M: EquivModule):
    """The fiber M / (sum of variable images): reduction map, lift, and the
    induced symmetric-group representation, with an equivariant section."""
    span_vecs = []
    for i in range(M.cfg.N):
        span_vecs.extend(M.xmul[i].columns())
    radical = SpanBasis(span_vecs, M.dim)
    leads = set(radical.leads)
    free = [t for t in range(M.dim) if t not in leads]
    pos = {f: t for t, f in enumerate(free)}

    def reduce_vec(w: dict) -> dict:
        w = dict(w)
        for c, vec in zip(radical.leads, radical.vectors):
            if c in w:
                vec_axpy(w, -w[c], vec)
        return {pos[k]: v for k, v in w.items()}

    def pi_matrix(mat: SparseRationalMatrix) -> SparseRationalMatrix:
        out = SparseRationalMatrix(len(free), mat.ncols)
        for j, col in enumerate(mat.columns()):
            for k, v in reduce_vec(col).items():
                out.set(k, j, v)
        return out

    lift = SparseRationalMatrix(M.dim, len(free))
    for t, f in enumerate(free):
        lift.set(f, t, 1)

    N = M.cfg.N
    rep_cox = tuple(pi_matrix(M.coxeter[j] @ lift) for j in range(N - 1))
    rep = SnRep(N, len(free), rep_cox)

    # equivariant section: average g . lift . g^{-1} over the whole group
    perms = _all_perms(N)
    acc = SparseRationalMatrix(M.dim, len(free))
    for g in perms:
        inv = [0] * N
        for k, img in enumerate(g):
            inv[img] = k
        acc = acc + (M.perm_matrix(g) @ lift @ rep.matrix(tuple(inv)))
    sec = acc.scale(Fraction(1, len(perms)))
    if pi_matrix(sec) != SparseRationalMatrix.identity(len(free)):
        raise AssemblyError("averaged section does not split the reduction")
    for j in range(N - 1):
        if (M.coxeter[j] @ sec) != (sec @ rep.coxeter[j]):
            raise AssemblyError("averaged section is not equivariant")
    return rep, sec


def _free_cover(M: EquivModule):
    """Minimal equivariant free cover: returns (F, d, rep) with d: F -> M
    surjective, F the free module on the radical fiber of M."""
    rep, sec = _quotient_by_radical(M)
    cfg = M.cfg
    monos = all_monomials(cfg)
    labels = [(mono, f) for mono in monos for f in range(rep.dim)]
    index = {lab: t for t, lab in enumerate(labels)}
    dimF = len(labels)

    xmul = []
    for i in range(cfg.N):
        m = SparseRationalMatrix(dimF, dimF)
        for col, (mono, f) in enumerate(labels):
            if mono[i] < cfg.s:
                target = (mono[:i] + (mono[i] + 1,) + mono[i + 1:], f)
                m.set(index[target], col, ONE)
        xmul.append(m)
    coxeter = []
    for j in range(cfg.N - 1):
        m = SparseRationalMatrix(dimF, dimF)
        rep_m = rep.coxeter[j]
        for col, (mono, f) in enumerate(labels):
            swapped = list(mono)
            swapped[j], swapped[j + 1] = swapped[j + 1], swapped[j]
            swapped = tuple(swapped)
            for f2, v in rep_m.column(f).items():
                m.add_to(index[(swapped, f2)], col, v)
        coxeter.append(m)
    F = EquivModule(cfg, labels, xmul, coxeter, name=f"free_cover({M.name})")

    sec_cols = sec.columns()
    d = SparseRationalMatrix(M.dim, dimF)
    for col, (mono, f) in enumerate(labels):
        w = sec_cols[f]
        for i, e in enumerate(mono):
            for _ in range(e):
                w = M.xmul[i].apply(w)
        for r, v in w.items():
            d.set(r, col, v)
    cover = EquivMap(F, M, d)
    if matrix_rank(d) != M.dim:
        raise AssemblyError("free cover is not surjective")
    return F, cover, rep


def _kernel_module(F: EquivModule, d: SparseRationalMatrix):
    """The kernel of d as a module, with its inclusion matrix into F."""
    basis = nullspace(d)
    k = len(basis)
    B = SparseRationalMatrix(F.dim, k)
    for col, v in enumerate(basis):
        for r, val in v.items():
            B.set(r, col, val)
    from .equivariant import _kernel_free_rows

    free = _kernel_free_rows(basis)

    def restrict(mat: SparseRationalMatrix) -> SparseRationalMatrix:
        prod = mat @ B
        out = SparseRationalMatrix(k, k)
        for t, r in enumerate(free):
            for j, v in prod.rows[r].items():
                out.set(t, j, v)
        if (B @ out) != prod:
            raise AssemblyError("kernel is not preserved by the action")
        return out

    xmul = [restrict(m) for m in F.xmul]
    coxeter = [restrict(m) for m in F.coxeter]
    K = EquivModule(F.cfg, [("ker", t) for t in range(k)], xmul, coxeter,
                    name=f"ker({F.name})")
    return K, B


def ext_truncated(M: EquivModule, T: EquivModule, max_i: int,
                  dim_cap: int = 200_000) -> list:
    """Equivariant Ext at the truncation, degrees 0..max_i.

    Resolves M by minimal equivariant free covers (free module on the radical
    fiber at each step, with the group action carried along), forms the Hom
    complex into T, restricts to invariants under the full symmetric group,
    and reads off cohomology dimensions.  Exact at the truncation; stable
    answers across truncations are the business of ``ext_stable``.
    """
    if M.cfg != T.cfg:
        raise ValueError(f"config mismatch: {M.cfg} != {T.cfg}")
    N = M.cfg.N

    reps = []
    diffs = []  # diffs[i]: matrix of F_i -> F_{i-1} on full free bases (F_-1 = M)
    current = M
    inclusion = None  # kernel inclusion into previous free module
    free_mods = []
    for level in range(max_i + 2):
        F, cover, rep = _free_cover(current)
        if F.dim > dim_cap:
            raise RuntimeError(f"resolution term exceeds the dimension cap ({F.dim})")
        reps.append(rep)
        d = cover.matrix if inclusion is None else inclusion @ cover.matrix
        diffs.append(d)
        free_mods.append(F)
        K, B = _kernel_module(F, cover.matrix)
        current, inclusion = K, B

    perms_needed = range(N - 1)

    def hom_invariant_basis(level):
        rep = reps[level]
        dimV, dimT = rep.dim, T.dim
        total = dimV * dimT

        def key(t, f):
            return f * dimT + t

        rows = []
        for j in perms_needed:
            rv = rep.coxeter[j]
            rt = T.coxeter[j]
            rv_cols = rv.columns()
            for fp in range(dimV):
                colf = rv_cols[fp]
                for tp in range(dimT):
                    row = {}
                    for t, vt in rt.rows[tp].items():
                        for f, vf in colf.items():
                            k2 = key(t, f)
                            w = row.get(k2, Fraction(0)) + vt * vf
                            if w:
                                row[k2] = w
                            else:
                                row.pop(k2, None)
                    k0 = key(tp, fp)
                    w = row.get(k0, Fraction(0)) - 1
                    if w:
                        row[k0] = w
                    else:
                        row.pop(k0, None)
                    if row:
                        rows.append(row)
        from .linalg import Echelon

        ech = Echelon(total)
        for row in rows:
            ech.add(row)
        return ech.kernel_basis()

    # induced differential on Hom spaces: precompute monomial action on T
    mono_action_cache: dict = {}

    def mono_action(mono):
        if mono not in mono_action_cache:
            m = SparseRationalMatrix.identity(T.dim)
            for i, e in enumerate(mono):
                for _ in range(e):
                    m = T.xmul[i] @ m
            mono_action_cache[mono] = m
        return mono_action_cache[mono]

    def induced_differential(level):
        """Matrix of Hom(V_{level-1}, T) -> Hom(V_level, T)."""
        rep_src = reps[level - 1]
        rep_dst = reps[level]
        F_dst = free_mods[level]
        d = diffs[level]  # full free basis of F_level -> full free basis of F_{level-1}
        dimT = T.dim
        out_rows: dict = {}
        prev_labels = free_mods[level - 1].labels
        for f in range(rep_dst.dim):
            src_col = F_dst.label_index[((0,) * N, f)]
            gen_image = d.column(src_col)
            for idx, coeff in gen_image.items():
                mono, fprime = prev_labels[idx]
                act = mono_action(mono)
                for t in range(dimT):
                    for tprime, v in act.rows[t].items():
                        rk = f * dimT + t
                        ck = fprime * dimT + tprime
                        out_rows.setdefault(rk, {})
                        w = out_rows[rk].get(ck, Fraction(0)) + coeff * v
                        if w:
                            out_rows[rk][ck] = w
                        else:
                            out_rows[rk].pop(ck, None)
        mat = SparseRationalMatrix(rep_dst.dim * dimT, rep_src.dim * dimT)
        for rk, row in out_rows.items():
            for ck, v in row.items():
                mat.set(rk, ck, v)
        return mat

    inv_bases = [hom_invariant_basis(level) for level in range(max_i + 2)]
    d_mats = [induced_differential(level) for level in range(1, max_i + 2)]

    ranks = [0] * (max_i + 1)
    for i in range(max_i + 1):
        images = [d_mats[i].apply(v) for v in inv_bases[i]]
        images = [w for w in images if w]
        ranks[i] = rank_of_vectors(images, reps[i + 1].dim * T.dim)

    out = []
    for i in range(max_i + 1):
        ext = len(inv_bases[i]) - ranks[i] - (ranks[i - 1] if i > 0 else 0)
        out.append(ext)
    return out


# ---------------------------------------------------------------------------
# the periodic Tor computation


def tor_complex(s: int, N: int):
    """The tensored periodic complex for the tuple-size-one Q family.

    Returns (C, delta_odd, delta_even): C is the module with labels
    (position, Q-label) and diagonal group action; the differentials multiply
    the Q part by that position's variable to the first or s-th power.
    """
    if s < 1:
        raise ValueError("the periodic complex needs s >= 1")
    Q = build_Q(s, 1, N)
    labels = [(i, lab) for i in range(N) for lab in Q.labels]
    index = {lab: t for t, lab in enumerate(labels)}
    dim = len(labels)
    cfg = Q.cfg

    xmul = []
    for v in range(N):
        m = SparseRationalMatrix(dim, dim)
        for col, (i, qlab) in enumerate(labels):
            for r, val in Q.xmul[v].column(Q.label_index[qlab]).items():
                m.add_to(index[(i, Q.labels[r])], col, val)
        xmul.append(m)
    coxeter = []
    for j in range(N - 1):
        m = SparseRationalMatrix(dim, dim)
        for col, (i, qlab) in enumerate(labels):
            i2 = j + 1 if i == j else j if i == j + 1 else i
            for r, val in Q.coxeter[j].column(Q.label_index[qlab]).items():
                m.add_to(index[(i2, Q.labels[r])], col, val)
        coxeter.append(m)
    C = EquivModule(cfg, labels, xmul, coxeter, permutation_like=True,
                    name=f"V(x)Q(s={s})")

    def delta(exp):
        m = SparseRationalMatrix(dim, dim)
        for col, (i, qlab) in enumerate(labels):
            vec = {Q.label_index[qlab]: ONE}
            for _ in range(exp):
                vec = Q.xmul[i].apply(vec)
            for r, val in vec.items():
                m.add_to(index[(i, Q.labels[r])], col, val)
        return m

    delta_odd = delta(1)
    delta_even = delta(s)
    if not (delta_odd @ delta_even).is_zero() or not (delta_even @ delta_odd).is_zero():
        raise AssemblyError("periodic differentials do not square to zero")
    return C, delta_odd, delta_even


def _subspace_character(C: EquivModule, span: SpanBasis) -> ClassFunction:
    N = C.cfg.N
    vals = {}
    for mu in partitions(N):
        g = representative_permutation(mu)
        mat = C.perm_matrix(g)
        tr = Fraction(0)
        for t, vec in enumerate(span.vectors):
            tr += span.coords(mat.apply(vec))[t]
        vals[mu] = tr
    return ClassFunction(N, vals)


def tor_periodic(s: int, r_max: int, N: int) -> list:
    """Characters of the degree-1..r_max homology of the periodic complex
    tensored against the tuple-size-one Q family."""
    C, delta_odd, delta_even = tor_complex(s, N)
    chi_C = character_of(C)
    span_odd = SpanBasis((c for c in delta_odd.columns() if c), C.dim)
    span_even = SpanBasis((c for c in delta_even.columns() if c), C.dim)
    chi_im = {1: _subspace_character(C, span_odd), 0: _subspace_character(C, span_even)}
    out = []
    for r in range(1, r_max + 1):
        chi = chi_C - chi_im[r % 2] - chi_im[(r + 1) % 2]
        out.append(chi)
    return out
