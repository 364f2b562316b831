"""Krull-Schmidt decomposition, isomorphism tests and the iso-class catalog.

A module is split with the Fitting decomposition of an endomorphism g:
for m large, M = im g^m (+) ker g^m, and both pieces are submodules. A piece is
declared indecomposable only with a certificate that End is local: either
End = k*1 + J with J a verified nilpotent ideal, or an exhaustive scan that
finds no nontrivial idempotent. Without a certificate the search raises
DecompositionBudgetExceeded.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .algebra import Algebra
from .exactla import FpMatrix, colspace_array, kernel_array, rank_array
from .modcat import Mor, Rep, direct_sum, hom_basis, rep_to_dict, submodule, zero_rep

__all__ = [
    "DecompositionBudgetExceeded",
    "Decomp",
    "Decomposition",
    "IsoCatalog",
    "catalog_for",
    "decompose",
    "classify",
    "is_isomorphic",
    "is_indecomposable",
    "is_local_exhaustive",
    "strip",
    "rep_from_classes",
]

EXHAUSTIVE_LIMIT = 10**6


class DecompositionBudgetExceeded(RuntimeError):
    """No split was found and End could not be certified local."""


@dataclass(frozen=True)
class Decomp:
    """A multiset of iso-class ids, stored sorted as (class id, multiplicity)."""

    items: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "Decomp":
        return cls(tuple(sorted((int(k), int(v)) for k, v in counts.items() if v > 0)))

    def counter(self) -> Counter:
        return Counter(dict(self.items))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(k for k, _ in self.items)

    def multiplicity(self, cid: int) -> int:
        return dict(self.items).get(cid, 0)

    def __len__(self) -> int:
        return sum(v for _, v in self.items)

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in self.items}


@dataclass(frozen=True, eq=False)
class Decomposition:
    decomp: Decomp
    summands: tuple[tuple[int, Rep, Mor], ...]
    witness: Mor

    def __iter__(self):
        return iter(self.summands)


def _power_blocks(blocks: Sequence[np.ndarray], p: int) -> list[np.ndarray]:
    """g^m per vertex with m >= every block size (Fitting exponent)."""
    top = max((b.shape[0] for b in blocks), default=0)
    out = []
    for b in blocks:
        x = b
        e = 1
        while e < top:
            x = (x @ x) % p
            e *= 2
        out.append(x)
    return out


def _kind(blocks: Sequence[np.ndarray], p: int) -> tuple[str, list[np.ndarray]]:
    """'nilpotent', 'invertible' or 'split' for a block-diagonal endomorphism."""
    pw = _power_blocks(blocks, p)
    if all(not x.any() for x in pw):
        return "nilpotent", pw
    if all(rank_array(x, p) == x.shape[0] for x in pw):
        return "invertible", pw
    return "split", pw


def _shift(blocks: Sequence[np.ndarray], lam: int, p: int) -> list[np.ndarray]:
    if lam == 0:
        return list(blocks)
    return [(b - lam * np.eye(b.shape[0], dtype=np.int64)) % p for b in blocks]


def _lambda_candidates(blocks: Sequence[np.ndarray], p: int) -> list[int]:
    if p <= 64:
        return list(range(p))
    cands = {0}
    for b in blocks:
        d = b.shape[0]
        if d and d % p:
            cands.add(int(np.trace(b)) * pow(d, -1, p) % p)
    return sorted(cands)


class _Splitter:
    def __init__(self, m: Rep, rng: np.random.Generator, budget: int):
        self.m = m
        self.p = m.p
        self.rng = rng
        self.budget = budget
        self.basis = hom_basis(m, m)
        self.blocks = [[b.a for b in f.blocks] for f in self.basis]

    def _split_from(self, pw: Sequence[np.ndarray]):
        p = self.p
        ims = [colspace_array(x, p) for x in pw]
        kers = [kernel_array(x, p) for x in pw]
        return submodule(self.m, ims), submodule(self.m, kers)

    def _try(self, blocks, lambdas=None):
        nil = None
        for lam in lambdas if lambdas is not None else _lambda_candidates(blocks, self.p):
            kind, pw = _kind(_shift(blocks, lam, self.p), self.p)
            if kind == "split":
                return "split", self._split_from(pw)
            if kind == "nilpotent":
                nil = lam
        return "nilpotent" if nil is not None else "none", nil

    def _combine(self, coeffs: Sequence[int]) -> list[np.ndarray]:
        p = self.p
        out = [np.zeros_like(b) for b in self.blocks[0]]
        for c, bl in zip(coeffs, self.blocks):
            if c:
                for v, b in enumerate(bl):
                    out[v] = out[v] + c * b
        return [x % p for x in out]

    def run(self):
        """A pair of complementary submodules, or None when End is local."""
        r = len(self.basis)
        if r <= 1:
            return None
        p = self.p
        lams: list[int | None] = []
        for bl in self.blocks:
            kind, res = self._try(bl)
            if kind == "split":
                return res
            lams.append(res if kind == "nilpotent" else None)
        if all(l is not None for l in lams) and self._certify_local(lams):
            return None
        tries = 0
        for i, j in itertools.combinations(range(r), 2):
            for c in range(1, p):
                if tries >= self.budget:
                    break
                tries += 1
                coeffs = [0] * r
                coeffs[i], coeffs[j] = 1, c
                kind, res = self._try(self._combine(coeffs))
                if kind == "split":
                    return res
        for _ in range(self.budget):
            coeffs = self.rng.integers(0, p, size=r).tolist()
            kind, res = self._try(self._combine(coeffs))
            if kind == "split":
                return res
        if r <= 20 and p**r <= EXHAUSTIVE_LIMIT:
            e = self._exhaustive_idempotent()
            if e is None:
                return None
            return self._split_from(e)
        raise DecompositionBudgetExceeded(
            f"no split found for a module of dimension {self.m.dim} with dim End = {r}"
        )

    def _certify_local(self, lams: Sequence[int]) -> bool:
        """End = k*1 + J with J a nilpotent two-sided ideal."""
        p = self.p
        r = len(self.blocks)
        jel = [_shift(bl, lam, p) for bl, lam in zip(self.blocks, lams)]
        vecs = np.array([np.concatenate([x.reshape(-1) for x in e]) for e in jel]) % p
        if rank_array(vecs, p) != r - 1:
            return False
        _, piv = _rows_basis(vecs, p)
        jb = [jel[i] for i in piv]
        jvec = vecs[piv]
        prods = []
        for u in jb:
            for e in self.blocks:
                prods.append(_flat([(x @ y) % p for x, y in zip(u, e)]))
                prods.append(_flat([(y @ x) % p for x, y in zip(u, e)]))
        if rank_array(np.vstack([jvec] + [np.array(prods)]) % p, p) != len(jb):
            return False
        power = jb
        for _ in range(self.m.dim + 1):
            nxt = [[(x @ y) % p for x, y in zip(u, w)] for u in power for w in jb]
            nxt = [e for e in nxt if any(x.any() for x in e)]
            if not nxt:
                return True
            mat = np.array([_flat(e) for e in nxt])
            _, piv = _rows_basis(mat, p)
            power = [nxt[i] for i in piv]
        return False

    def _exhaustive_idempotent(self):
        p = self.p
        r = len(self.blocks)
        nv = len(self.blocks[0])
        stacks = [np.stack([bl[v] for bl in self.blocks]) for v in range(nv)]
        total = p**r
        chunk = 4096
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk))
            coeffs = np.zeros((idx.size, r), dtype=np.int64)
            rest = idx.copy()
            for k in range(r):
                coeffs[:, k] = rest % p
                rest //= p
            good = np.ones(idx.size, dtype=bool)
            zero = np.ones(idx.size, dtype=bool)
            ident = np.ones(idx.size, dtype=bool)
            elems = []
            for v in range(nv):
                e = np.einsum("br,rij->bij", coeffs, stacks[v]) % p
                sq = np.matmul(e, e) % p
                good &= (sq == e).all(axis=(1, 2))
                zero &= ~e.any(axis=(1, 2))
                eye = np.eye(e.shape[1], dtype=np.int64)
                ident &= (e == eye).all(axis=(1, 2))
                elems.append(e)
            hit = np.flatnonzero(good & ~zero & ~ident)
            if hit.size:
                b = int(hit[0])
                return [elems[v][b] for v in range(nv)]
        return None


def _flat(blocks: Sequence[np.ndarray]) -> np.ndarray:
    return np.concatenate([x.reshape(-1) for x in blocks]) if blocks else np.zeros(0, dtype=np.int64)


def _rows_basis(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Indices of rows forming a basis of the row space (first-come)."""
    from .exactla import rref_array

    _, piv = rref_array(mat.T % p, p)
    return mat[piv], piv


def is_local_exhaustive(m: Rep) -> bool:
    """Every endomorphism is nilpotent or invertible (brute force)."""
    basis = hom_basis(m, m)
    r = len(basis)
    p = m.p
    for coeffs in itertools.product(range(p), repeat=r):
        blocks = [np.zeros((d, d), dtype=np.int64) for d in m.dimvec]
        for c, f in zip(coeffs, basis):
            for v, b in enumerate(f.blocks):
                blocks[v] = blocks[v] + c * b.a
        blocks = [b % p for b in blocks]
        if _kind(blocks, p)[0] == "split":
            return False
    return True


def _invariant(m: Rep) -> tuple:
    return (m.dimvec, tuple(rank_array(x.a, m.p) for x in m.mats))


def _iso_indecomposable(m: Rep, n: Rep) -> bool:
    if m.dimvec != n.dimvec:
        return False
    if m.key() == n.key():
        return True
    fs = hom_basis(m, n)
    if not fs:
        return False
    gs = hom_basis(n, m)
    p = m.p
    for g in gs:
        for f in fs:
            blocks = [(x.a @ y.a) % p for x, y in zip(g.blocks, f.blocks)]
            if _kind(blocks, p)[0] != "nilpotent":
                return True
    return False


class IsoCatalog:
    """Append-only registry of indecomposable iso classes over one algebra."""

    def __init__(self, algebra: Algebra):
        self.algebra = algebra
        self._witnesses: list[Rep] = []
        self._shortlist: dict[tuple, list[int]] = {}
        self._lock = threading.RLock()
        self.memo: dict[bytes, Decomp] = {}
        self.provenance: str = "user"
        self.complete = False
        self.tables: dict[Any, Any] = {}

    def __len__(self) -> int:
        return len(self._witnesses)

    def ids(self) -> list[int]:
        return list(range(len(self._witnesses)))

    def witness(self, cid: int) -> Rep:
        return self._witnesses[cid]

    def lookup(self, m: Rep) -> int | None:
        for cid in list(self._shortlist.get(_invariant(m), ())):
            if _iso_indecomposable(self._witnesses[cid], m):
                return cid
        return None

    def register(self, m: Rep) -> int:
        """Class id of the indecomposable m, adding a new class if needed."""
        cid = self.lookup(m)
        if cid is not None:
            return cid
        with self._lock:
            cid = self.lookup(m)
            if cid is not None:
                return cid
            self._witnesses.append(m)
            cid = len(self._witnesses) - 1
            self._shortlist.setdefault(_invariant(m), []).append(cid)
            return cid

    def to_json(self) -> dict[str, Any]:
        return {
            "provenance": self.provenance,
            "complete": self.complete,
            "classes": [
                {"id": cid, "dimvec": list(w.dimvec), "witness": rep_to_dict(w)}
                for cid, w in enumerate(self._witnesses)
            ],
        }


_CATALOGS: dict[Algebra, IsoCatalog] = {}
_CAT_LOCK = threading.RLock()


def catalog_for(a: Algebra) -> IsoCatalog:
    """The shared catalog of an algebra.

    On first use it is seeded with a canonical batch of classes (all
    indecomposables for a Nakayama algebra), so class ids never depend on
    the order of earlier computations.
    """
    with _CAT_LOCK:
        cat = _CATALOGS.get(a)
        if cat is None:
            from .enumlib import seed_catalog

            cat = IsoCatalog(a)
            _CATALOGS[a] = cat
            seed_catalog(cat)
        return cat


def _pieces(m: Rep, seed: int, budget: int) -> list[tuple[Rep, list[np.ndarray]]]:
    rng = np.random.default_rng(seed)
    p = m.p
    out = []
    stack = [(m, [np.eye(d, dtype=np.int64) for d in m.dimvec])]
    while stack:
        n, inc = stack.pop()
        if n.dim == 0:
            continue
        res = _Splitter(n, rng, budget).run()
        if res is None:
            out.append((n, inc))
            continue
        for piece, pinc in res:
            stack.append((piece, [(x @ y.a) % p for x, y in zip(inc, pinc.blocks)]))
    return out


def decompose(m: Rep, cat: IsoCatalog | None = None, seed: int = 0, budget: int = 512) -> Decomposition:
    """Split m into indecomposables and register their classes."""
    cat = cat if cat is not None else catalog_for(m.algebra)
    p = m.p
    pieces = _pieces(m, seed, budget)
    pieces.sort(key=lambda t: (t[0].dim, t[0].dimvec))
    summands = []
    counts: Counter = Counter()
    for piece, inc in pieces:
        cid = cat.register(piece)
        counts[cid] += 1
        summands.append((cid, piece, Mor(piece, m, tuple(FpMatrix.wrap(x, p) for x in inc))))
    summands.sort(key=lambda t: t[0])
    if summands:
        src = direct_sum(*(s for _, s, _ in summands))
        blocks = tuple(
            FpMatrix.wrap(np.hstack([f.blocks[v].a for _, _, f in summands]), p) for v in range(m.algebra.n)
        )
    else:
        src = zero_rep(m.algebra)
        blocks = tuple(FpMatrix.zeros(d, 0, p) for d in m.dimvec)
    decomp = Decomp.from_counts(counts)
    cat.memo.setdefault(m.key(), decomp)
    return Decomposition(decomp, tuple(summands), Mor(src, m, blocks))


def classify(m: Rep, cat: IsoCatalog | None = None) -> Decomp:
    """Decomp of m, memoized on the exact matrix data."""
    cat = cat if cat is not None else catalog_for(m.algebra)
    hit = cat.memo.get(m.key())
    if hit is None:
        hit = decompose(m, cat).decomp
    return hit


def is_indecomposable(m: Rep, cat: IsoCatalog | None = None) -> bool:
    return m.dim > 0 and len(classify(m, cat)) == 1


def is_isomorphic(m: Rep, n: Rep, cat: IsoCatalog | None = None) -> bool:
    if m.dimvec != n.dimvec:
        return False
    cat = cat if cat is not None else catalog_for(m.algebra)
    return classify(m, cat) == classify(n, cat)


def rep_from_classes(counts: Mapping[int, int], cat: IsoCatalog) -> Rep:
    """A module with the given summand multiplicities, built from witnesses."""
    parts = [cat.witness(cid) for cid, k in sorted(counts.items()) for _ in range(k)]
    return direct_sum(*parts) if parts else zero_rep(cat.algebra)


def strip(m: Rep, test: Callable[[int], bool], cat: IsoCatalog | None = None) -> Rep:
    """The sum of the summands of m whose class fails `test`."""
    cat = cat if cat is not None else catalog_for(m.algebra)
    keep = [s for cid, s, _ in decompose(m, cat).summands if not test(cid)]
    return direct_sum(*keep) if keep else zero_rep(m.algebra)
