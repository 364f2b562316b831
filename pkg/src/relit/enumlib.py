"""Enumeration of indecomposables and a few special classes of modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .algebra import Algebra
from .exactla import colspace_array, rref_array
from .krull import IsoCatalog, catalog_for, classify, decompose
from .modcat import (
    Rep,
    direct_sum,
    hom_basis,
    hom_from_projective,
    image,
    projective,
    quotient,
    radical,
)

__all__ = [
    "NotNakayama",
    "BudgetExceeded",
    "ModuleSet",
    "is_nakayama",
    "nakayama_indecs",
    "bounded_indecs",
    "seed_catalog",
    "auslander_generator",
    "delta_modules",
    "fdelta_membership",
    "catalog_modules",
]


class NotNakayama(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: "ModuleSet"):
        super().__init__(message)
        self.partial = partial


@dataclass
class ModuleSet:
    modules: list[Rep]
    provenance: str = "user"
    complete: bool = False
    ids: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)


def is_nakayama(a: Algebra) -> bool:
    for v in a.vertices:
        if sum(1 for x in a.arrows if x.source == v) > 1:
            return False
        if sum(1 for x in a.arrows if x.target == v) > 1:
            return False
    return True


def _radical_power_quotient(a: Algebra, v: Hashable, j: int) -> Rep:
    """P(v) / rad^j P(v); for a monomial algebra rad^j is spanned by paths of length >= j."""
    pv = projective(a, v)
    paths = a.paths_from(v)
    bases = []
    for w in a.vertices:
        at = [q for q in paths if q.end == w]
        cols = [i for i, q in enumerate(at) if q.length >= j]
        b = np.zeros((len(at), len(cols)), dtype=np.int64)
        for k, i in enumerate(cols):
            b[i, k] = 1
        bases.append(b)
    return quotient(pv, bases)[0]


def nakayama_indecs(a: Algebra, cat: IsoCatalog | None = None) -> ModuleSet:
    """All P(v)/rad^j P(v): the complete list of indecomposables of a Nakayama algebra."""
    if not is_nakayama(a):
        raise NotNakayama("some vertex has two incoming or two outgoing arrows")
    cat = cat if cat is not None else catalog_for(a)
    loewy = {v: 1 + max(q.length for q in a.paths_from(v)) for v in a.vertices}
    mods, ids = [], []
    for j in range(1, max(loewy.values()) + 1):
        for v in a.vertices:
            if j <= loewy[v]:
                m = _radical_power_quotient(a, v, j)
                mods.append(m)
                ids.append(cat.register(m))
    cat.complete = True
    cat.provenance = "nakayama-complete"
    return ModuleSet(mods, "nakayama-complete", True, ids)


def _canon(bases: Sequence[np.ndarray], p: int) -> bytes:
    parts = []
    for b in bases:
        if b.shape[1] == 0:
            parts.append(b"-")
        else:
            r, piv = rref_array(b.T % p, p)
            parts.append(r[: len(piv)].tobytes() + bytes([len(piv)]))
    return b"|".join(parts)


def _vectors(d: int, p: int):
    for coeffs in itertools.product(range(p), repeat=d):
        if any(coeffs):
            yield np.array(coeffs, dtype=np.int64)


def bounded_indecs(a: Algebra, dim_bound: int, budget: int = 20000, cat: IsoCatalog | None = None) -> ModuleSet:
    """Indecomposables of dimension <= dim_bound found as quotients P/U, U in rad P.

    P runs over sums of indecomposable projectives with at most dim_bound
    summands. Submodules of rad P are reached by adding cyclic submodules
    generated by vertex-homogeneous vectors. `budget` caps the number of
    proper submodules examined.
    """
    cat = cat if cat is not None else catalog_for(a)
    p = a.p
    mods: list[Rep] = []
    ids: list[int] = []

    def keep(m: Rep) -> None:
        if 0 < m.dim <= dim_bound and len(classify(m, cat)) == 1:
            cid = cat.register(m)
            if cid not in ids:
                ids.append(cid)
                mods.append(m)

    for v in a.vertices:
        keep(projective(a, v))
    tag = f"bounded-search({dim_bound})"
    seen_total = 0
    for size in range(1, dim_bound + 1):
        for tops in itertools.combinations_with_replacement(a.vertices, size):
            big = direct_sum(*(projective(a, v) for v in tops))
            rad, rinc = radical(big)
            need = big.dim - dim_bound
            if rad.dim < need:
                continue
            start = [np.zeros((d, 0), dtype=np.int64) for d in rad.dimvec]
            seen = {_canon(start, p)}
            frontier = [start]
            while frontier:
                nxt = []
                for bases in frontier:
                    if sum(b.shape[1] for b in bases) >= max(need, 1):
                        u_in_big = [(rinc.blocks[i].a @ b) % p for i, b in enumerate(bases)]
                        keep(quotient(big, u_in_big)[0])
                    for i, v in enumerate(a.vertices):
                        for vec in _vectors(rad.dimvec[i], p):
                            gen = image(hom_from_projective(rad, v, vec))[2]
                            merged = [
                                colspace_array(np.hstack([bases[w], gen.blocks[w].a]) % p, p)
                                for w in range(a.n)
                            ]
                            key = _canon(merged, p)
                            if key in seen:
                                continue
                            seen.add(key)
                            seen_total += 1
                            if seen_total > budget:
                                raise BudgetExceeded(
                                    "submodule budget exhausted", ModuleSet(mods, tag, False, ids)
                                )
                            nxt.append(merged)
                frontier = nxt
    return ModuleSet(mods, tag, False, ids)


def seed_catalog(cat: IsoCatalog) -> None:
    """Register a canonical first batch of classes so ids do not depend on history."""
    a = cat.algebra
    if is_nakayama(a):
        nakayama_indecs(a, cat)
        return
    from .modcat import injective, simple

    for v in a.vertices:
        cat.register(simple(a, v))
    for v in a.vertices:
        decompose(projective(a, v), cat)
    for v in a.vertices:
        decompose(injective(a, v), cat)


def catalog_modules(cat: IsoCatalog) -> ModuleSet:
    return ModuleSet([cat.witness(c) for c in cat.ids()], cat.provenance, cat.complete, cat.ids())


def auslander_generator(a: Algebra, cat: IsoCatalog | None = None) -> Rep:
    """The sum of one witness per indecomposable class (representation-finite case)."""
    cat = cat if cat is not None else catalog_for(a)
    if not cat.complete:
        raise ValueError("the Auslander generator needs a complete catalog")
    return direct_sum(*(cat.witness(c) for c in cat.ids()))


def delta_modules(a: Algebra, order: Sequence[Hashable] | None = None) -> list[Rep]:
    """Standard modules: P(i) modulo the trace of the P(j) with j after i in `order`."""
    order = list(order) if order is not None else list(a.vertices)
    if sorted(map(str, order)) != sorted(map(str, a.vertices)) or len(order) != a.n:
        raise ValueError("order must be a permutation of the vertices")
    p = a.p
    out = []
    for pos, i in enumerate(order):
        pi = projective(a, i)
        cols = [[] for _ in range(a.n)]
        for j in order[pos + 1:]:
            for f in hom_basis(projective(a, j), pi):
                for w in range(a.n):
                    cols[w].append(f.blocks[w].a)
        bases = []
        for w in range(a.n):
            if cols[w]:
                bases.append(colspace_array(np.hstack(cols[w]) % p, p))
            else:
                bases.append(np.zeros((pi.dimvec[w], 0), dtype=np.int64))
        out.append(quotient(pi, bases)[0])
    return out


def fdelta_membership(m: Rep, deltas: Sequence[Rep], budget: int = 4096, cat: IsoCatalog | None = None):
    """True / False if M has / lacks a filtration by the given modules; None if undecided.

    A filtration exists iff some submodule U isomorphic to a Delta has M/U
    filtered. Candidate U are images of injective maps Delta -> M; the search
    is exhaustive while Hom spaces stay within `budget` elements.
    """
    cat = cat if cat is not None else catalog_for(m.algebra)
    p = m.p
    memo: dict = {}

    def search(n: Rep):
        if n.dim == 0:
            return True
        key = classify(n, cat).items
        if key in memo:
            return memo[key]
        undecided = False
        tried = set()
        for d in deltas:
            if d.dim == 0 or d.dim > n.dim:
                continue
            hb = hom_basis(d, n)
            if not hb:
                continue
            if p ** len(hb) <= budget:
                combos = itertools.product(range(p), repeat=len(hb))
            else:
                undecided = True
                rng = np.random.default_rng(len(hb))
                combos = (tuple(rng.integers(0, p, size=len(hb))) for _ in range(budget))
            for coeffs in combos:
                if not any(coeffs):
                    continue
                f = None
                for c, h in zip(coeffs, hb):
                    if c:
                        f = h.scale(int(c)) if f is None else f + h.scale(int(c))
                if not f.is_mono():
                    continue
                bases = [colspace_array(b.a, p) for b in f.blocks]
                qkey = _canon(bases, p)
                if qkey in tried:
                    continue
                tried.add(qkey)
                res = search(quotient(n, bases)[0])
                if res is True:
                    memo[key] = True
                    return True
                if res is None:
                    undecided = True
        memo[key] = None if undecided else False
        return memo[key]

    return search(m)
