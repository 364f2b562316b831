"""Relative Igusa-Todorov functions Phi and Psi.

K-vectors live in the free abelian group on the indecomposable classes that
are not X-projective. The relative syzygy induces an integer matrix T on
that group. For a module M let W be the unit vectors of its non-X summand
classes and r_k = rank(T^k W). The ranks are non-increasing, and by Fitting's
lemma T restricted to T^k<M> is injective for every k >= eta exactly when r_k
has reached its final value. So

    Phi(M) = least k with r_k = r_N,

where N is the size of the T-stable closure V of the support of M (the
Fitting index of T on V is at most N). Testing only r_k = r_{k+1} is not
enough: rank sequences such as 2, 2, 1 occur.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import opposite
from .homol import DEFAULT_CUTOFF, PdResult, SyzygyEngine, absolute_engine
from .krull import catalog_for, classify, strip
from .modcat import Rep, direct_sum, dual, regular
from .relexact import SubcatG, rel_syzygy

__all__ = [
    "ClosureTooLarge",
    "KVector",
    "BracketState",
    "ITDim",
    "engine_for",
    "bracket",
    "omega_step",
    "rank_q",
    "orbit_closure",
    "rank_profile",
    "phi_counts",
    "psi_counts",
    "phi",
    "psi",
    "itdim_over",
    "phi_op",
    "psi_op",
]

MAX_CLOSURE = 4096


class ClosureTooLarge(RuntimeError):
    """The syzygy orbit of a support set did not close within the class limit."""


@dataclass(frozen=True)
class KVector:
    """Sparse integer vector on non-X classes, stored as sorted (class, coeff) pairs."""

    entries: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "KVector":
        return cls(tuple(sorted((int(c), int(k)) for c, k in counts.items() if k)))

    @classmethod
    def unit(cls, cid: int) -> "KVector":
        return cls(((int(cid), 1),))

    def counter(self) -> Counter:
        return Counter(dict(self.entries))

    def is_zero(self) -> bool:
        return not self.entries

    def support(self) -> frozenset[int]:
        return frozenset(c for c, _ in self.entries)

    def to_json(self) -> dict[str, int]:
        return {str(c): k for c, k in self.entries}


@dataclass
class BracketState:
    """Generators of Omega^step <M>, each with a carrier module."""

    generators: list[tuple[Rep, KVector]]
    step: int = 0
    rank: int = 0

    def vectors(self) -> list[KVector]:
        return [v for _, v in self.generators]


@dataclass
class ITDim:
    """A supremum of Phi or Psi over sums of members of a module set."""

    which: str
    value: PdResult
    width: int
    exact: bool
    witness: tuple[int, ...] = ()
    profile: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "value": self.value.to_json(),
            "width": self.width,
            "exact": self.exact,
            "witness_classes": list(self.witness),
        }


def engine_for(a_or_m, x: SubcatG | None) -> SyzygyEngine:
    """The relative engine of X, or the absolute one when X is None."""
    if x is not None:
        return x.engine()
    alg = a_or_m.algebra if isinstance(a_or_m, Rep) else a_or_m
    return absolute_engine(alg, catalog_for(alg))


def rank_q(vectors: Sequence[Mapping[int, int]]) -> int:
    """Rank over Q of integer vectors given as sparse mappings."""
    keys = sorted({k for v in vectors for k, c in v.items() if c})
    rows = [[Fraction(v.get(k, 0)) for k in keys] for v in vectors]
    rank = 0
    for col in range(len(keys)):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / pr[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


def _non_x_support(counts: Mapping[int, int], eng: SyzygyEngine) -> frozenset[int]:
    return frozenset(eng.stable(counts))


def orbit_closure(support: Iterable[int], eng: SyzygyEngine, limit: int = MAX_CLOSURE) -> list[int]:
    """Sorted classes reachable from `support` under the stable syzygy table."""
    seen = set(support)
    todo = list(seen)
    while todo:
        c = todo.pop()
        st = eng.step(c)
        if st is None:
            continue
        for d in st.stable:
            if d not in seen:
                seen.add(d)
                todo.append(d)
                if len(seen) > limit:
                    raise ClosureTooLarge(f"syzygy orbit exceeds {limit} classes")
    return sorted(seen)


def rank_profile(support: Iterable[int], eng: SyzygyEngine) -> list[int]:
    """r_0, ..., r_N for the unit vectors of `support` (N = size of the closure)."""
    support = sorted(set(support))
    closure = orbit_closure(support, eng)
    vecs = [Counter({c: 1}) for c in support]
    ranks = [rank_q(vecs)]
    for _ in range(len(closure)):
        vecs = [eng.omega(v) for v in vecs]
        ranks.append(rank_q(vecs))
        if ranks[-1] == 0:
            break
    return ranks


def _phi_from_profile(ranks: Sequence[int]) -> int:
    final = ranks[-1]
    return next(k for k, r in enumerate(ranks) if r == final)


def phi_counts(counts: Mapping[int, int], eng: SyzygyEngine) -> int:
    return _phi_from_profile(rank_profile(_non_x_support(counts, eng), eng))


def _omega_power_support(support: Iterable[int], k: int, eng: SyzygyEngine) -> frozenset[int]:
    s = frozenset(support)
    for _ in range(k):
        s = eng.omega_support(s)
    return s


def psi_counts(counts: Mapping[int, int], eng: SyzygyEngine, cutoff: int = DEFAULT_CUTOFF) -> PdResult:
    """Phi plus the largest finite relative pd among the summands of Omega^Phi(M)."""
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    support = _non_x_support(counts, eng)
    f = phi_counts(counts, eng)
    best = 0
    for c in sorted(_omega_power_support(support, f, eng)):
        r = eng.class_pd(c, cutoff)
        if r.is_unknown:
            return r
        if r.is_finite:
            best = max(best, r.value)
    return PdResult.finite(f + best)


def phi(m: Rep, x: SubcatG | None = None) -> int:
    eng = engine_for(m, x)
    return phi_counts(eng.classes(m), eng)


def psi(m: Rep, x: SubcatG | None = None, cutoff: int = DEFAULT_CUTOFF) -> PdResult:
    eng = engine_for(m, x)
    return psi_counts(eng.classes(m), eng, cutoff)


def bracket(m: Rep, x: SubcatG | None = None) -> BracketState:
    """<M>: one unit generator per non-X indecomposable summand class."""
    eng = engine_for(m, x)
    gens = []
    for cid in sorted(_non_x_support(eng.classes(m), eng)):
        gens.append((eng.cat.witness(cid), KVector.unit(cid)))
    return BracketState(gens, 0, len(gens))


def omega_step(s: BracketState, x: SubcatG | None = None) -> BracketState:
    """Apply the relative syzygy to every carrier and reclassify."""
    gens = []
    for carrier, _ in s.generators:
        eng = engine_for(carrier, x)
        if x is None:
            from .homol import syzygy

            nxt = syzygy(carrier)
        else:
            nxt = rel_syzygy(carrier, x, "minimal")
        nxt = strip(nxt, eng.is_projective, eng.cat)
        gens.append((nxt, KVector.from_counts(classify(nxt, eng.cat).counter())))
    rank = rank_q([v.counter() for _, v in gens])
    return BracketState(gens, s.step + 1, rank)


def itdim_over(
    modules: Sequence[Rep],
    x: SubcatG | None = None,
    which: str = "phi",
    cutoff: int = DEFAULT_CUTOFF,
    width: int = 4,
    algebra=None,
) -> ITDim:
    """sup of Phi or Psi over direct sums of at most `width` members of the set.

    Both functions depend only on the set of non-X summand classes and are
    monotone under adding summands, so the value over all finite sums of
    members equals the value at the union of all supports. The result is
    flagged exact when `width` reaches the number of distinct supports.
    """
    if which not in ("phi", "psi"):
        raise ValueError("which must be 'phi' or 'psi'")
    if width < 1:
        raise ValueError("width must be positive")
    if not modules:
        return ITDim(which, PdResult.finite(0), width, True)
    eng = engine_for(modules[0] if algebra is None else algebra, x)
    supports = sorted({_non_x_support(eng.classes(m), eng) for m in modules} - {frozenset()}, key=sorted)
    exact = width >= len(supports)
    if exact:
        candidates = [frozenset().union(*supports)] if supports else [frozenset()]
    else:
        candidates = sorted(
            {frozenset().union(*combo) for combo in itertools.combinations(supports, width)}, key=sorted
        )

    def value(s: frozenset) -> PdResult:
        counts = {c: 1 for c in s}
        if which == "phi":
            return PdResult.finite(phi_counts(counts, eng))
        return psi_counts(counts, eng, cutoff)

    best, arg = None, frozenset()
    for s in candidates:
        v = value(s)
        if v.is_unknown:
            return ITDim(which, v, width, exact, tuple(sorted(s)))
        if best is None or v.value > best.value:
            best, arg = v, s
    return ITDim(which, best, width, exact, tuple(sorted(arg)), rank_profile(arg, eng))


def _dual_setting(m: Rep, y: Rep):
    """D M over the opposite algebra and X = add(D Y plus the projectives)."""
    aop = opposite(m.algebra)
    cat = catalog_for(aop)
    gen = direct_sum(dual(y), regular(aop))
    return dual(m), SubcatG(gen, cat, "dual-generator")


def phi_op(m: Rep, y: Rep) -> int:
    """The dual function Phi^E, computed as Phi of D M over the opposite algebra."""
    dm, xs = _dual_setting(m, y)
    return phi(dm, xs)


def psi_op(m: Rep, y: Rep, cutoff: int = DEFAULT_CUTOFF) -> PdResult:
    dm, xs = _dual_setting(m, y)
    return psi(dm, xs, cutoff)
