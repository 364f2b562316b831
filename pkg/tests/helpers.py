import numpy as np

from relit.algebra import Arrow, Quiver, build_algebra
from relit.exactla import FpMatrix, inverse, rank
from relit.modcat import Rep


def a3_sink(p=2):
    """1 -a-> 2 <-b- 3: representation-finite, not Nakayama, six indecomposables."""
    q = Quiver((1, 2, 3), (Arrow("a", 1, 2), Arrow("b", 3, 2)))
    return build_algebra(q, [], p)


def kronecker(p=2):
    q = Quiver((1, 2), (Arrow("x", 1, 2), Arrow("y", 1, 2)))
    return build_algebra(q, [], p)


def random_invertible(n, p, rng):
    while True:
        g = FpMatrix(rng.integers(0, p, size=(n, n)), p)
        if rank(g) == n:
            return g


def conjugate(m: Rep, rng) -> Rep:
    """An isomorphic copy of m under a random change of basis at every vertex."""
    a = m.algebra
    gs = [random_invertible(d, m.p, rng) for d in m.dimvec]
    mats = []
    for arrow, x in zip(a.arrows, m.mats):
        s, t = a.vertex_index(arrow.source), a.vertex_index(arrow.target)
        if x.rows == 0 or x.cols == 0:
            mats.append(x)
        else:
            mats.append(gs[t] @ x @ inverse(gs[s]))
    return Rep(a, m.dimvec, mats)


def rng(seed):
    return np.random.default_rng(seed)
