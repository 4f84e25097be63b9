"""The truncated polynomial ring in N variables with exponents bounded by s.

A monomial is a length-N tuple with entries in [0, s]; it doubles as a
base-(s+1) digit vector, so every monomial has an integer rank used to index
basis arrays.  The zero product is represented by ``None`` (an absent matrix
entry during assembly), never by a sentinel monomial.

Permutations are length-N tuples g with g[i] the image of position i, acting
on monomials by relocating exponents and on the basis by permutation.  All
values here are immutable; every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinat import Partition, partitions


@dataclass(frozen=True)
class RingConfig:
    """N variables, exponent bound s (so (s+1)st powers vanish)."""

    N: int
    s: int

    def __post_init__(self):
        if self.N < 0 or self.s < 0:
            raise ValueError("RingConfig requires N >= 0 and s >= 0")

    @property
    def monomial_count(self) -> int:
        return (self.s + 1) ** self.N


def all_monomials(cfg: RingConfig) -> list:
    """All monomials in rank order (position 0 is the fastest digit)."""
    return [monomial_unrank(r, cfg) for r in range(cfg.monomial_count)]


def monomial_rank(m, cfg: RingConfig) -> int:
    r = 0
    for i in reversed(range(cfg.N)):
        r = r * (cfg.s + 1) + m[i]
    return r


def monomial_unrank(r: int, cfg: RingConfig):
    out = []
    for _ in range(cfg.N):
        r, d = divmod(r, cfg.s + 1)
        out.append(d)
    return tuple(out)


def _check_length(m, cfg: RingConfig):
    if len(m) != cfg.N:
        raise ValueError(f"monomial length {len(m)} != {cfg.N}")


def multiply(a, b, cfg: RingConfig):
    """Product of two monomials, or None when an exponent overflows s."""
    _check_length(a, cfg)
    _check_length(b, cfg)
    out = []
    for x, y in zip(a, b):
        z = x + y
        if z > cfg.s:
            return None
        out.append(z)
    return tuple(out)


def dual_action(a, y, cfg: RingConfig):
    """Action of monomial a on the dual-basis label y: contraction to y - a.

    Returns None when some coordinate would go negative.  Iterating this
    action from the top label (s, ..., s) reaches every dual label once,
    which is the rank-one freeness of the dual module.
    """
    _check_length(a, cfg)
    _check_length(y, cfg)
    out = []
    for x, w in zip(a, y):
        z = w - x
        if z < 0:
            return None
        out.append(z)
    return tuple(out)


def permute(g, m):
    """Relabel the variables of m by g: exponent of x_{g(i)} becomes m[i]."""
    out = [0] * len(m)
    for i, e in enumerate(m):
        out[g[i]] = e
    return tuple(out)


def cycle_type(g) -> Partition:
    """Cycle type of a permutation tuple, as a partition."""
    seen = [False] * len(g)
    cycles = []
    for i in range(len(g)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = g[j]
            length += 1
        cycles.append(length)
    return tuple(sorted(cycles, reverse=True))


def representative_permutation(mu) -> tuple:
    """A permutation of cycle type mu: one cycle per part, consecutive blocks."""
    g = []
    start = 0
    for part in mu:
        g.extend(list(range(start + 1, start + part)) + [start])
        start += part
    return tuple(g)


def coxeter_word(g) -> list:
    """Adjacent-transposition word for g: g equals the product of swaps
    (j, j+1) applied in list order (first entry acts first)."""
    p = list(g)
    word = []
    changed = True
    while changed:
        changed = False
        for j in range(len(p) - 1):
            if p[j] > p[j + 1]:
                p[j], p[j + 1] = p[j + 1], p[j]
                word.append(j)
                changed = True
    return word


def fixed_monomial_count(mu, cfg: RingConfig) -> int:
    """Number of monomials fixed by a permutation of cycle type mu.

    A fixed monomial is constant on every cycle, so the count is
    (s+1)^(number of parts); in particular it is always positive.
    """
    if sum(mu) != cfg.N:
        raise ValueError(f"cycle type of size {sum(mu)} does not match N={cfg.N}")
    return (cfg.s + 1) ** len(mu)


def monomial_to_json(m) -> list:
    return list(m)


def monomial_from_json(data, cfg: RingConfig):
    m = tuple(int(x) for x in data)
    _check_length(m, cfg)
    if any(e < 0 or e > cfg.s for e in m):
        raise ValueError("exponent out of range")
    return m


def partitions_of_level(n: int) -> list:
    """Cycle types at level n (re-export used by callers of this module)."""
    return partitions(n)
