"""Syzygies, resolutions, Ext and projective/injective dimensions.

The workhorse is `SyzygyEngine`: for each indecomposable class it stores the
kernel of a fixed cover and that kernel's decomposition. Because syzygies are
additive up to projective summands, every later question (pd, Ext vanishing,
the syzygy action on class vectors) reduces to bookkeeping on class
multisets. The support of Omega^k(M) depends only on the support of
Omega^{k-1}(M), so a repeated support is a sound certificate of infinite pd.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .algebra import Algebra
from .exactla import rank_array
from .krull import IsoCatalog, catalog_for, classify
from .modcat import (
    Mor,
    Rep,
    compose,
    dual,
    hom_basis,
    hom_dim,
    kernel,
    projective,
    projective_cover_parts,
)

__all__ = [
    "DEFAULT_CUTOFF",
    "PdResult",
    "ResChain",
    "ClassStep",
    "SyzygyEngine",
    "absolute_engine",
    "projective_classes",
    "syzygy",
    "resolution",
    "pd",
    "ext_dims",
    "ext_dims_complex",
    "injdim",
    "dims_over",
    "sup_results",
]

DEFAULT_CUTOFF = 64


@dataclass(frozen=True)
class PdResult:
    """Finite(n), Infinite with a cycle certificate, or Unknown(bound)."""

    kind: str
    value: int | None = None
    cycle: tuple[int, int] | None = None
    lower_bound: bool = field(default=False, compare=False)

    @classmethod
    def finite(cls, n: int) -> "PdResult":
        return cls("finite", int(n))

    @classmethod
    def infinite(cls, a: int | None = None, b: int | None = None) -> "PdResult":
        return cls("infinite", None, None if a is None else (int(a), int(b)))

    @classmethod
    def unknown(cls, bound: int) -> "PdResult":
        return cls("unknown", int(bound))

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def __str__(self) -> str:
        if self.is_finite:
            return f"Finite({self.value})"
        if self.is_infinite:
            return f"Infinite{self.cycle}" if self.cycle else "Infinite"
        return f"Unknown({self.value})"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.value is not None:
            out["bound" if self.is_unknown else "value"] = self.value
        if self.cycle is not None:
            out["cycle"] = list(self.cycle)
        if self.lower_bound:
            out["lower_bound"] = True
        return out


def sup_results(results: Iterable[PdResult], finite_only: bool = False) -> PdResult:
    """Supremum with sup of nothing = 0. Unknown poisons the answer.

    With `finite_only`, Infinite entries are ignored (finitistic sup).
    """
    best = 0
    inf = None
    for r in results:
        if r.is_unknown:
            return r
        if r.is_infinite:
            if not finite_only and inf is None:
                inf = r
            continue
        best = max(best, r.value)
    return inf if inf is not None else PdResult.finite(best)


@dataclass(frozen=True, eq=False)
class ClassStep:
    cover_counts: Counter
    kernel: Rep
    kernel_counts: Counter
    stable: Counter


CoverFn = Callable[[Rep], "tuple[Rep, Mor, Counter]"]


class SyzygyEngine:
    """Per-class syzygy table modulo a class of projective objects.

    `cover(M)` must return an epimorphism X0 -> M from a projective object of
    the exact structure together with the class counts of X0.
    """

    def __init__(self, cat: IsoCatalog, is_projective: Callable[[int], bool], cover: CoverFn, label: str):
        self.cat = cat
        self.is_projective = is_projective
        self.cover = cover
        self.label = label
        self._steps: dict[int, ClassStep | None] = {}
        self._homs: dict[tuple[int, bytes], int] = {}
        self._ext1: dict[tuple[int, bytes], int] = {}

    @property
    def algebra(self) -> Algebra:
        return self.cat.algebra

    def classes(self, m: Rep) -> Counter:
        return classify(m, self.cat).counter()

    def stable(self, counts: Mapping[int, int]) -> Counter:
        return Counter({c: k for c, k in counts.items() if k > 0 and not self.is_projective(c)})

    def step(self, cid: int) -> ClassStep | None:
        if cid in self._steps:
            return self._steps[cid]
        if self.is_projective(cid):
            self._steps[cid] = None
            return None
        w = self.cat.witness(cid)
        x0, epi, counts = self.cover(w)
        k, _ = kernel(epi)
        kc = self.classes(k)
        st = ClassStep(Counter(counts), k, kc, self.stable(kc))
        self._steps[cid] = st
        return st

    def omega(self, counts: Mapping[int, int]) -> Counter:
        """Stable syzygy multiset of a module given by its class counts."""
        out: Counter = Counter()
        for c, k in counts.items():
            st = self.step(c)
            if st is None or k <= 0:
                continue
            for d, m in st.stable.items():
                out[d] += k * m
        return out

    def omega_support(self, support: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for c in support:
            st = self.step(c)
            if st is not None:
                out.update(st.stable)
        return frozenset(out)

    def stable_support(self, counts: Mapping[int, int]) -> frozenset[int]:
        return frozenset(self.stable(counts))

    def pd_counts(self, counts: Mapping[int, int], cutoff: int = DEFAULT_CUTOFF) -> PdResult:
        s = self.stable_support(counts)
        seen = {s: 0}
        for k in range(cutoff + 1):
            if not s:
                return PdResult.finite(k)
            if k == cutoff:
                break
            s = self.omega_support(s)
            if s and s in seen:
                return PdResult.infinite(seen[s], k + 1)
            seen.setdefault(s, k + 1)
        return PdResult.unknown(cutoff)

    def pd(self, m: Rep, cutoff: int = DEFAULT_CUTOFF) -> PdResult:
        return self.pd_counts(self.classes(m), cutoff)

    def class_pd(self, cid: int, cutoff: int = DEFAULT_CUTOFF) -> PdResult:
        return self.pd_counts({cid: 1}, cutoff)

    def hom_dim(self, cid: int, n: Rep) -> int:
        key = (cid, n.key())
        v = self._homs.get(key)
        if v is None:
            v = hom_dim(self.cat.witness(cid), n)
            self._homs[key] = v
        return v

    def hom_dim_counts(self, counts: Mapping[int, int], n: Rep) -> int:
        return sum(k * self.hom_dim(c, n) for c, k in counts.items())

    def ext1(self, cid: int, n: Rep) -> int:
        """dim Ext^1 of the class into n, from 0 -> Hom(C,N) -> Hom(X0,N) -> Hom(K,N) -> Ext^1 -> 0."""
        key = (cid, n.key())
        v = self._ext1.get(key)
        if v is None:
            st = self.step(cid)
            if st is None:
                v = 0
            else:
                v = (
                    self.hom_dim_counts(st.kernel_counts, n)
                    - self.hom_dim_counts(st.cover_counts, n)
                    + self.hom_dim(cid, n)
                )
            self._ext1[key] = v
        return v

    def ext_counts(self, counts: Mapping[int, int], n: Rep, top: int) -> list[int]:
        """dim Ext^i for i = 0..top computed from the class table."""
        out = [self.hom_dim_counts(counts, n)]
        cur = Counter(counts)
        for _ in range(1, top + 1):
            out.append(sum(k * self.ext1(c, n) for c, k in cur.items()))
            cur = self.omega(cur)
        return out

    def ext_degree(self, counts: Mapping[int, int], n: Rep, cutoff: int = DEFAULT_CUTOFF) -> PdResult:
        """Largest i >= 1 with Ext^i(M, N) != 0 (0 if none), Infinite if unbounded."""
        s = self.stable_support(counts)
        seen: dict[frozenset, int] = {}
        last = 0
        hits: list[bool] = []
        for j in range(1, cutoff + 2):
            if not s:
                return PdResult.finite(last)
            if s in seen:
                start = seen[s]
                if any(hits[start - 1:]):
                    return PdResult.infinite(start, j)
                return PdResult.finite(last)
            seen[s] = j
            nz = any(self.ext1(c, n) for c in s)
            hits.append(nz)
            if nz:
                last = j
            s = self.omega_support(s)
        return PdResult.unknown(cutoff)


def projective_classes(a: Algebra, cat: IsoCatalog | None = None) -> dict:
    """Vertex -> class id of P(vertex)."""
    cat = cat if cat is not None else catalog_for(a)
    out = {}
    for v in a.vertices:
        d = classify(projective(a, v), cat)
        (cid, _), = d.items
        out[v] = cid
    return out


def absolute_engine(a: Algebra, cat: IsoCatalog | None = None) -> SyzygyEngine:
    """The engine for the usual exact structure, driven by projective covers."""
    cat = cat if cat is not None else catalog_for(a)
    eng = cat.tables.get(("absolute",))
    if eng is None:
        pcls = projective_classes(a, cat)
        proj_ids = frozenset(pcls.values())

        def cover(m: Rep):
            x0, epi, verts = projective_cover_parts(m)
            return x0, epi, Counter(pcls[v] for v in verts)

        eng = SyzygyEngine(cat, proj_ids.__contains__, cover, "projectives")
        eng.projective_ids = proj_ids
        cat.tables[("absolute",)] = eng
    return eng


def syzygy(m: Rep) -> Rep:
    """Kernel of the projective cover."""
    _, epi, _ = projective_cover_parts(m)
    return kernel(epi)[0]


@dataclass(frozen=True, eq=False)
class ResChain:
    """P_n -> ... -> P_0 -> M with differentials d_i : P_i -> P_{i-1}."""

    module: Rep
    terms: tuple[Rep, ...]
    differentials: tuple[Mor, ...]
    augmentation: Mor
    syzygies: tuple[Rep, ...] = field(default=())

    def check_exact(self) -> bool:
        maps = [self.augmentation] + list(self.differentials)
        if not self.augmentation.is_epi():
            return False
        for i in range(len(maps) - 1):
            f, g = maps[i], maps[i + 1]
            if not compose(f, g).is_zero():
                return False
            # dim ker f == rank g, vertex by vertex
            for v in range(len(f.blocks)):
                kf = f.blocks[v].cols - rank_array(f.blocks[v].a, f.p)
                if kf != rank_array(g.blocks[v].a, g.p):
                    return False
        return True


def _chain_from_covers(m: Rep, length: int, cover: Callable[[Rep], tuple[Rep, Mor]]) -> ResChain:
    terms, diffs, syz = [], [], [m]
    x0, eps = cover(m)
    terms.append(x0)
    k, inc = kernel(eps)
    syz.append(k)
    for _ in range(length):
        xi, e = cover(k)
        terms.append(xi)
        diffs.append(compose(inc, e))
        k, inc = kernel(e)
        syz.append(k)
    return ResChain(m, tuple(terms), tuple(diffs), eps, tuple(syz))


def resolution(m: Rep, length: int) -> ResChain:
    """Minimal projective resolution with terms P_0..P_length."""
    def cover(x: Rep):
        c, e, _ = projective_cover_parts(x)
        return c, e

    return _chain_from_covers(m, length, cover)


def pd(m: Rep, cutoff: int = DEFAULT_CUTOFF, cat: IsoCatalog | None = None) -> PdResult:
    return absolute_engine(m.algebra, cat).pd(m, cutoff)


def _ext_from_syzygies(syz: Sequence[Rep], terms: Sequence[Rep], n: Rep, max_i: int) -> list[int]:
    out = [hom_dim(syz[0], n)]
    for i in range(1, max_i + 1):
        k_prev, k = syz[i - 1], syz[i]
        if k_prev.dim == 0:
            out.append(0)
            continue
        out.append(hom_dim(k, n) - hom_dim(terms[i - 1], n) + hom_dim(k_prev, n))
    return out


def ext_dims(m: Rep, n: Rep, max_i: int) -> list[int]:
    """dim Ext^i(M, N) for i = 0..max_i via a minimal projective resolution."""
    chain = resolution(m, max_i)
    return _ext_from_syzygies(chain.syzygies, chain.terms, n, max_i)


def ext_dims_complex(chain: ResChain, n: Rep, max_i: int) -> list[int]:
    """Cohomology of Hom(P_*, N) computed directly from the differentials."""
    if len(chain.terms) < max_i + 2:
        raise ValueError("resolution too short for the requested degrees")
    p = n.p
    bases = [hom_basis(t, n) for t in chain.terms[: max_i + 2]]

    def coboundary_rank(i: int) -> int:
        # Hom(P_i, N) -> Hom(P_{i+1}, N), h -> h o d_{i+1}
        if not bases[i]:
            return 0
        d = chain.differentials[i]
        vecs = np.array([compose(h, d).vector() for h in bases[i]]) % p
        return rank_array(vecs, p) if vecs.size else 0

    ranks = [coboundary_rank(i) for i in range(max_i + 1)]
    out = []
    for i in range(max_i + 1):
        out.append(len(bases[i]) - ranks[i] - (ranks[i - 1] if i else 0))
    # degree 0 is Hom(M, N), the kernel of the first coboundary
    return out


def injdim(m: Rep, cutoff: int = DEFAULT_CUTOFF) -> PdResult:
    """Injective dimension, as pd of D M over the opposite algebra."""
    return pd(dual(m), cutoff)


def dims_over(
    modules: Iterable[Rep],
    mode: str = "gldim-proxy",
    cutoff: int = DEFAULT_CUTOFF,
    engine: SyzygyEngine | None = None,
) -> PdResult:
    """gldim-proxy: max pd (Infinite if any). findim / fpd-of-class: max finite pd."""
    if mode not in ("gldim-proxy", "findim", "fpd-of-class"):
        raise ValueError(f"unknown mode {mode!r}")
    results = []
    for m in modules:
        eng = engine if engine is not None else absolute_engine(m.algebra)
        results.append(eng.pd(m, cutoff))
    return sup_results(results, finite_only=(mode != "gldim-proxy"))
