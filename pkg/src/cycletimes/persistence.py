"""Zero-dimensional sublevel-set persistence of a sampled scalar function.

``sublevel_persistence`` sweeps the samples in increasing value order and
tracks connected components of the growing sublevel sets with a
union-find. Every component is born at a local minimum and dies when it
merges into an older component (elder rule); the component of the global
minimum never dies. Each diagram point remembers the sample index of the
local minimum that created it, which is what lets the detector map
significant minima back to the time axis.

``bottleneck_distance`` gives the exact bottleneck metric between two
diagrams, used by the stability tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sparse
from scipy.sparse.csgraph import maximum_bipartite_matching

from .series import ScalarSeries

__all__ = [
    "PersistencePoint",
    "PersistenceDiagram",
    "sublevel_persistence",
    "significant_points",
    "bottleneck_distance",
]


@dataclass(frozen=True, order=True)
class PersistencePoint:
    """One birth/death pair with the sample index of its local minimum."""

    birth: float
    death: float  # math.inf for the essential component
    min_index: int

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    @property
    def is_essential(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (birth, death, min_index) points for one filtered signal.

    Exactly one point is essential (death = inf). Zero-persistence
    diagonal points are implicit and never stored. Points are kept sorted
    by min_index, and min_index values are distinct local minima of the
    filtered sequence (plateau minima are represented by their leftmost
    sample).
    """

    points: tuple
    domain_length: int

    def finite_points(self) -> list:
        return [p for p in self.points if not p.is_essential]

    def essential_points(self) -> list:
        return [p for p in self.points if p.is_essential]

    def as_multiset(self):
        """Sorted (birth, death) pairs, for multiset comparisons."""
        return sorted((p.birth, p.death) for p in self.points)


def _find(parent, i):
    # path halving
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def sublevel_persistence(f) -> PersistenceDiagram:
    """Persistence diagram of the sublevel-set filtration of a sampled signal.

    Parameters
    ----------
    f : ScalarSeries or 1-d array_like
        Finite values, length >= 1.

    Notes
    -----
    Ties are broken towards the smaller sample index, both in the sweep
    order and in the elder rule, so the output is deterministic and
    plateau minima are attributed to their leftmost sample. Merges at a
    component's own birth value are plateau bookkeeping, not local
    minima, and are discarded rather than stored as zero-persistence
    points.
    """
    if isinstance(f, ScalarSeries):
        values = np.asarray(f.values, dtype=np.float64)
    else:
        values = np.atleast_1d(np.asarray(f, dtype=np.float64))
    if values.ndim != 1 or values.size == 0:
        raise ValueError("need a non-empty 1-d sequence of values")
    if not np.all(np.isfinite(values)):
        raise ValueError("values contain NaN or Inf")

    n = values.size
    order = np.argsort(values, kind="stable")  # stable sort = index tie-break
    parent = np.arange(n)
    in_set = np.zeros(n, dtype=bool)
    birth = np.empty(n)
    min_index = np.empty(n, dtype=np.int64)

    points = []
    for i in order:
        v = values[i]
        left = i - 1 if i > 0 and in_set[i - 1] else -1
        right = i + 1 if i + 1 < n and in_set[i + 1] else -1
        in_set[i] = True
        if left < 0 and right < 0:
            birth[i] = v
            min_index[i] = i
            continue
        if left >= 0 and right >= 0:
            ra, rb = _find(parent, left), _find(parent, right)
            # elder rule: smaller (birth, min_index) survives
            if (birth[ra], min_index[ra]) > (birth[rb], min_index[rb]):
                ra, rb = rb, ra
            if v > birth[rb]:
                points.append(PersistencePoint(float(birth[rb]), float(v), int(min_index[rb])))
            parent[rb] = ra
            parent[i] = ra
        else:
            parent[i] = _find(parent, left if left >= 0 else right)

    root = _find(parent, int(order[0]))
    points.append(PersistencePoint(float(birth[root]), math.inf, int(min_index[root])))
    points.sort(key=lambda p: p.min_index)
    return PersistenceDiagram(points=tuple(points), domain_length=n)


def significant_points(diagram: PersistenceDiagram, epsilon: float, delta: float) -> list:
    """Points with birth < epsilon and persistence > delta, by min_index.

    Both inequalities are strict; an infinite death always passes the
    persistence test.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not delta > 0:
        raise ValueError("delta must be positive")
    return [
        p for p in diagram.points
        if p.birth < epsilon and p.persistence > delta
    ]


# ---------------------------------------------------------------------------
# Bottleneck distance


def _matchable(costs, half_a, half_b, c):
    """Perfect-matching feasibility at cost threshold c.

    Bipartite graph in the usual diagonal-augmented form: each point of
    one diagram may pair with a point of the other at their sup-norm
    distance, or drop to the diagonal at half its persistence; diagonal
    proxies absorb each other for free.
    """
    na, nb = costs.shape
    size = na + nb
    rows = []
    cols = []
    ai, bj = np.nonzero(costs <= c)
    rows.append(ai)
    cols.append(bj)
    da = np.nonzero(half_a <= c)[0]
    rows.append(da)
    cols.append(nb + da)
    db = np.nonzero(half_b <= c)[0]
    rows.append(na + db)
    cols.append(db)
    gb, ga = np.meshgrid(np.arange(nb), np.arange(na), indexing="ij")
    rows.append(na + gb.ravel())
    cols.append(nb + ga.ravel())
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    graph = sparse.csr_matrix(
        (np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(size, size)
    )
    match = maximum_bipartite_matching(graph, perm_type="column")
    return not np.any(match < 0)


def _finite_bottleneck(a_pts, b_pts) -> float:
    if not a_pts and not b_pts:
        return 0.0
    half_a = np.array([(d - b) / 2.0 for b, d in a_pts])
    half_b = np.array([(d - b) / 2.0 for b, d in b_pts])
    if not a_pts:
        return float(np.max(half_b))
    if not b_pts:
        return float(np.max(half_a))
    A = np.asarray(a_pts)
    B = np.asarray(b_pts)
    costs = np.maximum(
        np.abs(A[:, 0][:, None] - B[:, 0][None, :]),
        np.abs(A[:, 1][:, None] - B[:, 1][None, :]),
    )
    candidates = np.unique(np.concatenate([costs.ravel(), half_a, half_b, [0.0]]))
    lo, hi = 0, candidates.size - 1
    # the largest candidate (everything to the diagonal or anywhere) is feasible
    while lo < hi:
        mid = (lo + hi) // 2
        if _matchable(costs, half_a, half_b, candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def bottleneck_distance(a: PersistenceDiagram, b: PersistenceDiagram) -> float:
    """Exact bottleneck distance between two diagrams.

    Finite points may match each other at sup-norm cost or retire to the
    diagonal at half their persistence; essential points only match each
    other, at the difference of their births. The result is the smallest
    feasible matching cost, found by binary search over the finite set of
    candidate costs. min_index is metadata and ignored here.
    """
    ess_a = sorted(p.birth for p in a.points if p.is_essential)
    ess_b = sorted(p.birth for p in b.points if p.is_essential)
    if len(ess_a) != len(ess_b):
        raise ValueError(
            "diagrams with different numbers of essential points have "
            "infinite bottleneck distance"
        )
    # sorted pairing is optimal for points on a line under the sup norm
    ess_cost = max(
        (abs(x - y) for x, y in zip(ess_a, ess_b)), default=0.0
    )
    fin = _finite_bottleneck(
        [(p.birth, p.death) for p in a.points if not p.is_essential],
        [(p.birth, p.death) for p in b.points if not p.is_essential],
    )
    return max(ess_cost, fin)
