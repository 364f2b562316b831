"""Quivers and monomial path algebras kQ/I over F_p.

Paths compose left to right: the word ("a", "b") means arrow a followed by
arrow b. A representation M therefore satisfies M(ab) = M(b) M(a).

File format (JSON)::

    {"field_p": 2,
     "vertices": [1, 2, 3],
     "arrows": [{"label": "a", "from": 1, "to": 2}, ...],
     "relations": ["ab", ...]}

A relation string is read as a sequence of arrow labels. Single-character
labels can be concatenated ("ab"); multi-character labels must be separated
by spaces or dots ("a1 a2" or "a1.a2").
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from .exactla import check_prime

__all__ = [
    "InfiniteDimensional",
    "NonAdmissible",
    "Arrow",
    "Quiver",
    "Path",
    "Algebra",
    "build_algebra",
    "opposite",
    "parse_relation",
    "load_algebra",
    "algebra_from_dict",
    "algebra_to_dict",
    "StructureConstantAlgebra",
]


class InfiniteDimensional(ValueError):
    """The path algebra has arbitrarily long admissible paths."""


class NonAdmissible(ValueError):
    """A relation is too short or refers to a path that does not exist."""


@dataclass(frozen=True)
class Arrow:
    label: str
    source: Hashable
    target: Hashable


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("arrow labels must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.label} has an undeclared endpoint")

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)


@dataclass(frozen=True)
class Path:
    """A path from `start` to `end` through the listed arrows."""

    start: Hashable
    end: Hashable
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e{self.start}"
        return ".".join(self.arrows)


def _find_cycle_free_bound(words: int, max_rel: int) -> int:
    # An admissible word longer than (#admissible words of length max_rel-1) + max_rel - 1
    # revisits a window of length max_rel-1, so the word automaton has a cycle.
    return words + max_rel


@dataclass(frozen=True)
class Algebra:
    quiver: Quiver
    relations: tuple[tuple[str, ...], ...]
    p: int
    basis: tuple[Path, ...] = field(compare=False, repr=False, default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> tuple:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def n(self) -> int:
        return len(self.quiver.vertices)

    def vertex_index(self, v: Hashable) -> int:
        return self._vindex[v]

    def arrow_index(self, label: str) -> int:
        return self._aindex[label]

    def paths_from(self, v: Hashable) -> list[Path]:
        return [b for b in self.basis if b.start == v]

    def paths_to(self, v: Hashable) -> list[Path]:
        return [b for b in self.basis if b.end == v]

    def extend(self, path: Path, label: str) -> Path | None:
        """path followed by arrow `label`, or None if zero in the algebra."""
        a = self.arrows[self._aindex[label]]
        if a.source != path.end:
            return None
        word = path.arrows + (label,)
        if self._has_relation_suffix(word):
            return None
        return Path(path.start, a.target, word)

    def _has_relation_suffix(self, word: tuple[str, ...]) -> bool:
        for r in self.relations:
            if len(r) <= len(word) and word[len(word) - len(r):] == r:
                return True
        return False

    @property
    def _vindex(self) -> dict:
        d = self.__dict__.get("_vi")
        if d is None:
            d = {v: i for i, v in enumerate(self.quiver.vertices)}
            object.__setattr__(self, "_vi", d)
        return d

    @property
    def _aindex(self) -> dict:
        d = self.__dict__.get("_ai")
        if d is None:
            d = {a.label: i for i, a in enumerate(self.quiver.arrows)}
            object.__setattr__(self, "_ai", d)
        return d

    def __str__(self) -> str:
        rels = ",".join(".".join(r) for r in self.relations) or "none"
        return f"Algebra(n={self.n}, arrows={len(self.arrows)}, relations={rels}, p={self.p}, dim={self.dim})"


def parse_relation(text: str | Sequence[str], labels: Iterable[str]) -> tuple[str, ...]:
    """Split a relation string into arrow labels."""
    if not isinstance(text, str):
        return tuple(text)
    known = set(labels)
    if " " in text.strip() or "." in text:
        parts = tuple(t for t in text.replace(".", " ").split() if t)
    elif text in known and len(text) > 1 and not all(c in known for c in text):
        parts = (text,)
    else:
        parts = tuple(text)
    for t in parts:
        if t not in known:
            raise NonAdmissible(f"relation {text!r} uses unknown arrow {t!r}")
    return parts


def _enumerate_basis(q: Quiver, rels: tuple[tuple[str, ...], ...]) -> list[Path]:
    by_source: dict[Hashable, list[Arrow]] = {}
    for a in q.arrows:
        by_source.setdefault(a.source, []).append(a)

    def bad(word: tuple[str, ...]) -> bool:
        return any(len(r) <= len(word) and word[len(word) - len(r):] == r for r in rels)

    max_rel = max((len(r) for r in rels), default=1)
    level = [Path(v, v, ()) for v in q.vertices]
    basis = list(level)
    length = 0
    window_words: int | None = len(level) if max_rel == 1 else None
    while level:
        length += 1
        nxt: list[Path] = []
        for path in level:
            for a in by_source.get(path.end, ()):
                word = path.arrows + (a.label,)
                if not bad(word):
                    nxt.append(Path(path.start, a.target, word))
        if length == max_rel - 1:
            window_words = len(nxt)
        if window_words is not None and nxt and length >= _find_cycle_free_bound(window_words, max_rel):
            raise InfiniteDimensional("an admissible cycle gives arbitrarily long paths")
        basis.extend(nxt)
        level = nxt
    return basis


def build_algebra(q: Quiver, rels: Iterable[Sequence[str] | str], p: int) -> Algebra:
    p = check_prime(p)
    labels = [a.label for a in q.arrows]
    parsed: list[tuple[str, ...]] = []
    for r in rels:
        word = parse_relation(r, labels)
        if len(word) < 2:
            raise NonAdmissible(f"relation {r!r} has length < 2")
        for x, y in zip(word, word[1:]):
            if q.arrow(x).target != q.arrow(y).source:
                raise NonAdmissible(f"relation {r!r} is not a path")
        parsed.append(word)
    rel_t = tuple(parsed)
    basis = _enumerate_basis(q, rel_t)
    return Algebra(q, rel_t, p, tuple(basis))


def opposite(a: Algebra) -> Algebra:
    """Reverse every arrow and every relation word; labels are kept."""
    q = Quiver(a.quiver.vertices, tuple(Arrow(x.label, x.target, x.source) for x in a.quiver.arrows))
    return build_algebra(q, [tuple(reversed(r)) for r in a.relations], a.p)


def algebra_from_dict(d: dict[str, Any]) -> Algebra:
    try:
        vertices = tuple(d["vertices"])
        arrows = tuple(Arrow(str(x["label"]), x["from"], x["to"]) for x in d.get("arrows", []))
        p = d["field_p"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed algebra description: {e}") from e
    return build_algebra(Quiver(vertices, arrows), d.get("relations", []), p)


def algebra_to_dict(a: Algebra) -> dict[str, Any]:
    return {
        "field_p": a.p,
        "vertices": list(a.vertices),
        "arrows": [{"label": x.label, "from": x.source, "to": x.target} for x in a.arrows],
        "relations": [" ".join(r) for r in a.relations],
    }


def load_algebra(path: str | FsPath) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return algebra_from_dict(json.load(fh))


class StructureConstantAlgebra:
    """A finite-dimensional algebra given by structure constants.

    `table[i][j]` is the coordinate vector of b_i * b_j. The constructor checks
    associativity and finds the unit. This input mode is validated and can act
    on itself by left multiplication, but the module machinery in this package
    is driven by quiver algebras only.
    """

    def __init__(self, table: Sequence[Sequence[Sequence[int]]], p: int):
        self.p = check_prime(p)
        t = np.array(table, dtype=np.int64) % self.p
        n = t.shape[0]
        if t.shape != (n, n, n):
            raise ValueError("structure constants must have shape (n, n, n)")
        self.table = t
        self.dim = n
        # (b_i b_j) b_k == b_i (b_j b_k)
        left = np.einsum("ijm,mkl->ijkl", t, t) % self.p
        right = np.einsum("jkm,iml->ijkl", t, t) % self.p
        if not np.array_equal(left, right):
            raise NonAdmissible("structure constants are not associative")
        self.unit = self._find_unit()

    def _find_unit(self) -> np.ndarray:
        from .exactla import solve_array, Inconsistent

        n, p = self.dim, self.p
        # u = sum c_i b_i with u b_j = b_j and b_j u = b_j for all j
        rows = []
        rhs = []
        for j in range(n):
            for k in range(n):
                rows.append(self.table[:, j, k])
                rhs.append(1 if j == k else 0)
                rows.append(self.table[j, :, k])
                rhs.append(1 if j == k else 0)
        try:
            c = solve_array(np.array(rows), np.array(rhs).reshape(-1, 1), p)
        except Inconsistent as e:
            raise NonAdmissible("structure constants have no unit") from e
        return c[:, 0]

    def left_multiplication(self, i: int) -> np.ndarray:
        """Matrix of x -> b_i x in the given basis (columns are images)."""
        return self.table[i].T % self.p

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), self.table) % self.p
