"""Finite-dimensional representations of a bound quiver and their morphisms.

A Rep stores one matrix per arrow; the matrix of a: s -> t has shape
(dim M_t, dim M_s) and acts on column vectors. A Mor stores one block per
vertex, f_v of shape (dim N_v, dim M_v).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Hashable, Sequence

import numpy as np

from .algebra import Algebra, Path, opposite
from .exactla import (
    FpMatrix,
    colspace_array,
    kernel_array,
    rank_array,
    solve_array,
)

__all__ = [
    "AlgebraMismatch",
    "InvalidRep",
    "Rep",
    "Mor",
    "Factorization",
    "zero_rep",
    "hom_basis",
    "hom_dim",
    "identity",
    "zero_mor",
    "compose",
    "mor_factor",
    "kernel",
    "image",
    "cokernel",
    "submodule",
    "quotient",
    "direct_sum",
    "direct_sum_maps",
    "simple",
    "projective",
    "injective",
    "regular",
    "standard_objects",
    "hom_from_projective",
    "radical",
    "top",
    "projective_cover",
    "projective_cover_parts",
    "dual",
    "dual_mor",
    "rep_to_dict",
    "rep_from_dict",
]


class AlgebraMismatch(ValueError):
    pass


class InvalidRep(ValueError):
    pass


def _same_algebra(a: Algebra, b: Algebra) -> None:
    if a is not b and a != b:
        raise AlgebraMismatch("objects live over different algebras")


def _arr(x: np.ndarray, p: int) -> FpMatrix:
    return FpMatrix.wrap(x, p)


class Rep:
    """A representation: dimension vector plus one matrix per arrow."""

    __slots__ = ("algebra", "dimvec", "mats", "_key")

    def __init__(self, algebra: Algebra, dimvec: Sequence[int], mats: Sequence[FpMatrix], check: bool = True):
        self.algebra = algebra
        self.dimvec = tuple(int(d) for d in dimvec)
        self.mats = tuple(mats)
        self._key: bytes | None = None
        if check:
            self._validate()

    def _validate(self) -> None:
        a = self.algebra
        if len(self.dimvec) != a.n or any(d < 0 for d in self.dimvec):
            raise InvalidRep("dimension vector does not match the quiver")
        if len(self.mats) != len(a.arrows):
            raise InvalidRep("need one matrix per arrow")
        for arrow, m in zip(a.arrows, self.mats):
            want = (self.dim_at(arrow.target), self.dim_at(arrow.source))
            if m.shape != want or m.p != a.p:
                raise InvalidRep(f"matrix for {arrow.label} has shape {m.shape}, expected {want}")
        for rel in a.relations:
            if not self.path_matrix(rel).is_zero():
                raise InvalidRep(f"relation {'.'.join(rel)} does not act as zero")

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return sum(self.dimvec)

    def is_zero(self) -> bool:
        return self.dim == 0

    def dim_at(self, v: Hashable) -> int:
        return self.dimvec[self.algebra.vertex_index(v)]

    def act(self, label: str) -> FpMatrix:
        return self.mats[self.algebra.arrow_index(label)]

    def path_matrix(self, word: Sequence[str]) -> FpMatrix:
        """M(w) for a word w read left to right."""
        a = self.algebra
        first = a.arrows[a.arrow_index(word[0])]
        m = FpMatrix.identity(self.dim_at(first.source), self.p)
        for label in word:
            m = self.act(label) @ m
        return m

    def key(self) -> bytes:
        """Bytes identifying this exact matrix data (not its iso class)."""
        if self._key is None:
            parts = [np.array(self.dimvec, dtype=np.int64).tobytes()]
            parts.extend(m.a.tobytes() for m in self.mats)
            self._key = b"|".join(parts)
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rep):
            return NotImplemented
        return self.algebra == other.algebra and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Rep(dimvec={self.dimvec})"


@dataclass(frozen=True, eq=False)
class Mor:
    source: Rep
    target: Rep
    blocks: tuple[FpMatrix, ...]

    @property
    def p(self) -> int:
        return self.source.p

    def check(self) -> None:
        a = self.source.algebra
        for i, b in enumerate(self.blocks):
            if b.shape != (self.target.dimvec[i], self.source.dimvec[i]):
                raise InvalidRep("block shapes do not match the dimension vectors")
        for k, arrow in enumerate(a.arrows):
            s, t = a.vertex_index(arrow.source), a.vertex_index(arrow.target)
            if self.blocks[t] @ self.source.mats[k] != self.target.mats[k] @ self.blocks[s]:
                raise InvalidRep(f"naturality fails at arrow {arrow.label}")

    def __matmul__(self, other: "Mor") -> "Mor":
        return compose(self, other)

    def __add__(self, other: "Mor") -> "Mor":
        return Mor(self.source, self.target, tuple(x + y for x, y in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "Mor") -> "Mor":
        return Mor(self.source, self.target, tuple(x - y for x, y in zip(self.blocks, other.blocks)))

    def scale(self, c: int) -> "Mor":
        return Mor(self.source, self.target, tuple(b.scale(c) for b in self.blocks))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def vector(self) -> np.ndarray:
        """All blocks flattened row-major and concatenated."""
        if not self.blocks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([b.a.reshape(-1) for b in self.blocks])

    def ranks(self) -> tuple[int, ...]:
        return tuple(rank_array(b.a, self.p) for b in self.blocks)

    def is_mono(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dimvec))

    def is_epi(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dimvec))

    def is_iso(self) -> bool:
        return self.source.dimvec == self.target.dimvec and self.is_mono()

    def __repr__(self) -> str:
        return f"Mor({self.source.dimvec} -> {self.target.dimvec})"


def zero_rep(a: Algebra) -> Rep:
    return Rep(a, [0] * a.n, [FpMatrix.zeros(0, 0, a.p) for _ in a.arrows], check=False)


def identity(m: Rep) -> Mor:
    return Mor(m, m, tuple(FpMatrix.identity(d, m.p) for d in m.dimvec))


def zero_mor(m: Rep, n: Rep) -> Mor:
    return Mor(m, n, tuple(FpMatrix.zeros(dn, dm, m.p) for dm, dn in zip(m.dimvec, n.dimvec)))


def compose(g: Mor, f: Mor) -> Mor:
    """g after f."""
    return Mor(f.source, g.target, tuple(x @ y for x, y in zip(g.blocks, f.blocks)))


def _hom_system(m: Rep, n: Rep) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    a = m.algebra
    p = a.p
    layout = []
    off = 0
    for dm, dn in zip(m.dimvec, n.dimvec):
        layout.append((off, dn, dm))
        off += dn * dm
    rows = []
    for k, arrow in enumerate(a.arrows):
        s, t = a.vertex_index(arrow.source), a.vertex_index(arrow.target)
        ma, na = m.mats[k].a, n.mats[k].a
        nt, ms = n.dimvec[t], m.dimvec[s]
        if nt * ms == 0:
            continue
        block = np.zeros((nt * ms, off), dtype=np.int64)
        ot, _, mt = layout[t]
        os_, ns, _ = layout[s]
        if mt:
            block[:, ot:ot + nt * mt] += np.kron(np.eye(nt, dtype=np.int64), ma.T)
        if ns:
            block[:, os_:os_ + ns * ms] -= np.kron(na, np.eye(ms, dtype=np.int64))
        rows.append(block % p)
    sys = np.vstack(rows) if rows else np.zeros((0, off), dtype=np.int64)
    return sys, layout


def hom_basis(m: Rep, n: Rep) -> list[Mor]:
    """A basis of Hom(M, N), in the order fixed by the elimination pivots."""
    _same_algebra(m.algebra, n.algebra)
    p = m.p
    sys, layout = _hom_system(m, n)
    total = sys.shape[1]
    if total == 0:
        return []
    ker = kernel_array(sys, p)
    out = []
    for j in range(ker.shape[1]):
        v = ker[:, j]
        blocks = tuple(_arr(np.ascontiguousarray(v[o:o + dn * dm].reshape(dn, dm)), p) for o, dn, dm in layout)
        out.append(Mor(m, n, blocks))
    return out


def hom_dim(m: Rep, n: Rep) -> int:
    _same_algebra(m.algebra, n.algebra)
    sys, _ = _hom_system(m, n)
    return sys.shape[1] - rank_array(sys, m.p)


def submodule(m: Rep, bases: Sequence[np.ndarray]) -> tuple[Rep, Mor]:
    """The submodule spanned per vertex by independent columns `bases[v]`."""
    a = m.algebra
    p = m.p
    mats = []
    for k, arrow in enumerate(a.arrows):
        s, t = a.vertex_index(arrow.source), a.vertex_index(arrow.target)
        bs, bt = bases[s], bases[t]
        img = (m.mats[k].a @ bs) % p
        mats.append(_arr(solve_array(bt, img, p), p))
    dims = [b.shape[1] for b in bases]
    u = Rep(a, dims, mats, check=False)
    return u, Mor(u, m, tuple(_arr(np.ascontiguousarray(b % p), p) for b in bases))


def quotient(m: Rep, bases: Sequence[np.ndarray]) -> tuple[Rep, Mor]:
    """M modulo the submodule spanned by `bases`, with the projection."""
    a = m.algebra
    p = m.p
    projs = []
    for v, b in enumerate(bases):
        d = m.dimvec[v]
        if b.shape[1] == 0:
            projs.append(np.eye(d, dtype=np.int64))
        else:
            projs.append(np.ascontiguousarray(kernel_array(b.T % p, p).T))
    mats = []
    for k, arrow in enumerate(a.arrows):
        s, t = a.vertex_index(arrow.source), a.vertex_index(arrow.target)
        qs, qt = projs[s], projs[t]
        rhs = (qt @ m.mats[k].a) % p
        mats.append(_arr(np.ascontiguousarray(solve_array(qs.T, rhs.T, p).T), p))
    q = Rep(a, [x.shape[0] for x in projs], mats, check=False)
    return q, Mor(m, q, tuple(_arr(x, p) for x in projs))


@dataclass(frozen=True, eq=False)
class Factorization:
    kernel: Rep
    kernel_inclusion: Mor
    image: Rep
    coimage_epi: Mor
    image_inclusion: Mor
    cokernel: Rep
    cokernel_projection: Mor


def kernel(f: Mor) -> tuple[Rep, Mor]:
    p = f.p
    bases = [kernel_array(b.a, p) for b in f.blocks]
    return submodule(f.source, bases)


def image(f: Mor) -> tuple[Rep, Mor, Mor]:
    """(Im f, M -> Im f, Im f -> N)."""
    p = f.p
    bases = [colspace_array(b.a, p) for b in f.blocks]
    im, inc = submodule(f.target, bases)
    epi = tuple(_arr(solve_array(bases[v], f.blocks[v].a, p), p) for v in range(len(bases)))
    return im, Mor(f.source, im, epi), inc


def cokernel(f: Mor) -> tuple[Rep, Mor]:
    bases = [colspace_array(b.a, f.p) for b in f.blocks]
    return quotient(f.target, bases)


def mor_factor(f: Mor) -> Factorization:
    k, ki = kernel(f)
    im, epi, inc = image(f)
    c, cp = cokernel(f)
    return Factorization(k, ki, im, epi, inc, c, cp)


def direct_sum(*reps: Rep) -> Rep:
    if not reps:
        raise ValueError("direct_sum needs at least one summand")
    a = reps[0].algebra
    p = a.p
    dims = [sum(r.dimvec[v] for r in reps) for v in range(a.n)]
    mats = []
    for k in range(len(a.arrows)):
        rows = sum(r.mats[k].rows for r in reps)
        cols = sum(r.mats[k].cols for r in reps)
        out = np.zeros((rows, cols), dtype=np.int64)
        i = j = 0
        for r in reps:
            x = r.mats[k].a
            out[i:i + x.shape[0], j:j + x.shape[1]] = x
            i += x.shape[0]
            j += x.shape[1]
        mats.append(_arr(out, p))
    return Rep(a, dims, mats, check=False)


def direct_sum_maps(*reps: Rep) -> tuple[Rep, list[Mor], list[Mor]]:
    """The sum together with its canonical injections and projections."""
    s = direct_sum(*reps)
    p = s.p
    n = s.algebra.n
    offs = [0] * n
    incs, projs = [], []
    for r in reps:
        ib, pb = [], []
        for v in range(n):
            e = np.zeros((s.dimvec[v], r.dimvec[v]), dtype=np.int64)
            e[offs[v]:offs[v] + r.dimvec[v]] = np.eye(r.dimvec[v], dtype=np.int64)
            ib.append(_arr(e, p))
            pb.append(_arr(np.ascontiguousarray(e.T), p))
            offs[v] += r.dimvec[v]
        incs.append(Mor(r, s, tuple(ib)))
        projs.append(Mor(s, r, tuple(pb)))
    return s, incs, projs


def simple(a: Algebra, v: Hashable) -> Rep:
    i = a.vertex_index(v)
    dims = [1 if j == i else 0 for j in range(a.n)]
    mats = [FpMatrix.zeros(dims[a.vertex_index(x.target)], dims[a.vertex_index(x.source)], a.p) for x in a.arrows]
    return Rep(a, dims, mats, check=False)


@lru_cache(maxsize=None)
def _projective(a: Algebra, v: Hashable) -> Rep:
    paths = a.paths_from(v)
    at = {w: [q for q in paths if q.end == w] for w in a.vertices}
    pos = {q: at[q.end].index(q) for q in paths}
    mats = []
    for x in a.arrows:
        m = np.zeros((len(at[x.target]), len(at[x.source])), dtype=np.int64)
        for q in at[x.source]:
            r = a.extend(q, x.label)
            if r is not None:
                m[pos[r], pos[q]] = 1
        mats.append(_arr(m, a.p))
    return Rep(a, [len(at[w]) for w in a.vertices], mats, check=False)


def projective(a: Algebra, v: Hashable) -> Rep:
    """P(v): basis the admissible paths starting at v, arrows act by extension."""
    return _projective(a, v)


@lru_cache(maxsize=None)
def _injective(a: Algebra, v: Hashable) -> Rep:
    d = dual(projective(opposite(a), v))
    return Rep(a, d.dimvec, d.mats, check=False)


def injective(a: Algebra, v: Hashable) -> Rep:
    """I(v) = D(P(v) over the opposite algebra)."""
    return _injective(a, v)


def regular(a: Algebra) -> Rep:
    return direct_sum(*(projective(a, v) for v in a.vertices))


def standard_objects(a: Algebra) -> dict[str, dict[Hashable, Rep]]:
    return {
        "simple": {v: simple(a, v) for v in a.vertices},
        "projective": {v: projective(a, v) for v in a.vertices},
        "injective": {v: injective(a, v) for v in a.vertices},
    }


def hom_from_projective(m: Rep, v: Hashable, x: Sequence[int] | np.ndarray) -> Mor:
    """The map P(v) -> M sending the trivial path e_v to the vector x in M_v."""
    a = m.algebra
    p = m.p
    pv = projective(a, v)
    paths = a.paths_from(v)
    value: dict[Path, np.ndarray] = {}
    for q in paths:
        if not q.arrows:
            value[q] = np.asarray(x, dtype=np.int64).reshape(-1) % p
        else:
            prev = Path(q.start, a.arrows[a.arrow_index(q.arrows[-1])].source, q.arrows[:-1])
            value[q] = (m.act(q.arrows[-1]).a @ value[prev]) % p
    blocks = []
    for w in a.vertices:
        cols = [value[q] for q in paths if q.end == w]
        d = m.dim_at(w)
        blocks.append(_arr(np.stack(cols, axis=1) if cols else np.zeros((d, 0), dtype=np.int64), p))
    return Mor(pv, m, tuple(blocks))


def _radical_bases(m: Rep) -> list[np.ndarray]:
    a = m.algebra
    p = m.p
    bases = []
    for v in a.vertices:
        parts = [m.mats[k].a for k, x in enumerate(a.arrows) if x.target == v]
        d = m.dim_at(v)
        if parts and d:
            bases.append(colspace_array(np.hstack(parts), p))
        else:
            bases.append(np.zeros((d, 0), dtype=np.int64))
    return bases


def radical(m: Rep) -> tuple[Rep, Mor]:
    """rad M: the sum of the images of all arrow actions."""
    return submodule(m, _radical_bases(m))


def top(m: Rep) -> tuple[Rep, Mor]:
    return quotient(m, _radical_bases(m))


def _complement_columns(b: np.ndarray, d: int, p: int) -> list[int]:
    """Standard basis vectors that extend the columns of b to a basis."""
    chosen = []
    cur = b
    r = rank_array(cur, p) if cur.size else 0
    for i in range(d):
        e = np.zeros((d, 1), dtype=np.int64)
        e[i, 0] = 1
        trial = np.hstack([cur, e]) if cur.size else e
        r2 = rank_array(trial, p)
        if r2 > r:
            chosen.append(i)
            cur, r = trial, r2
    return chosen


def projective_cover_parts(m: Rep) -> tuple[Rep, Mor, list[Hashable]]:
    """Projective cover together with the vertex of each P(v) summand."""
    a = m.algebra
    p = m.p
    rad = _radical_bases(m)
    pieces: list[Mor] = []
    verts: list[Hashable] = []
    for idx, v in enumerate(a.vertices):
        for i in _complement_columns(rad[idx], m.dimvec[idx], p):
            x = np.zeros(m.dimvec[idx], dtype=np.int64)
            x[i] = 1
            pieces.append(hom_from_projective(m, v, x))
            verts.append(v)
    if not pieces:
        z = zero_rep(a)
        return z, zero_mor(z, m), []
    cover = direct_sum(*(f.source for f in pieces))
    blocks = []
    for v in range(a.n):
        cols = [f.blocks[v].a for f in pieces]
        blocks.append(_arr(np.hstack(cols), p))
    return cover, Mor(cover, m, tuple(blocks)), verts


def projective_cover(m: Rep) -> tuple[Rep, Mor]:
    """Minimal projective cover P -> M, P a sum of P(v) in vertex order."""
    cover, epi, _ = projective_cover_parts(m)
    return cover, epi


def dual(m: Rep) -> Rep:
    """D M = Hom_k(M, k), a representation of the opposite algebra."""
    op = opposite(m.algebra)
    return Rep(op, m.dimvec, [x.T for x in m.mats], check=False)


def dual_mor(f: Mor) -> Mor:
    """D f : D N -> D M."""
    return Mor(dual(f.target), dual(f.source), tuple(b.T for b in f.blocks))


def rep_to_dict(m: Rep) -> dict[str, Any]:
    return {
        "field_p": m.p,
        "dimvec": list(m.dimvec),
        "arrows": {x.label: m.mats[k].tolist() for k, x in enumerate(m.algebra.arrows)},
    }


def rep_from_dict(d: dict[str, Any], a: Algebra) -> Rep:
    if "field_p" in d and int(d["field_p"]) != a.p:
        raise InvalidRep("module and algebra use different fields")
    dims = [int(x) for x in d["dimvec"]]
    if len(dims) != a.n:
        raise InvalidRep("dimension vector does not match the quiver")
    given = d.get("arrows", {})
    mats = []
    for x in a.arrows:
        rows = dims[a.vertex_index(x.target)]
        cols = dims[a.vertex_index(x.source)]
        entries = given.get(x.label)
        if entries is None or rows == 0 or cols == 0:
            mats.append(FpMatrix.zeros(rows, cols, a.p))
        else:
            mats.append(FpMatrix(entries, a.p))
    return Rep(a, dims, mats)
