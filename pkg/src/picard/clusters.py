"""Cluster trees of p-adic root configurations and splitting-field data.

The stably marked model of (P^1, {roots of f, infinity}) is combinatorial:
its components correspond to the clusters of the four roots (subsets cut
out by p-adic disks), nested by inclusion, with infinity marking the top
component.  Depths are exact rationals in (1/e)Z.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import discriminant
from .localfield import (
    PrecisionStallError,
    SplitRoots,
    WildSplittingError,
    split_over_minimal_tame,
)

INF_MARK = "inf"


@dataclass
class ClusterNode:
    """One component of the marked model: a cluster of root indices."""

    indices: frozenset
    depth: Fraction
    parent: "ClusterNode | None" = None
    children: list = field(default_factory=list)
    immediate: tuple = ()  # root indices marking this component directly

    @property
    def is_root(self):
        return self.parent is None

    def marks(self):
        """Marked points on this component (root indices, plus inf on top)."""
        ms = list(self.immediate)
        if self.is_root:
            ms.append(INF_MARK)
        return ms

    def center(self):
        return min(self.indices)

    def __repr__(self):
        kids = ",".join(repr(c) for c in self.children)
        inner = " ".join(
            [*(str(i) for i in sorted(self.immediate)), *( [kids] if kids else [] )]
        )
        return f"({inner})_{self.depth}"


class ClusterTree:
    """Laminar family of proper clusters of the 4 roots, with the inf mark.

    Built from the 4x4 matrix of pairwise valuations v(alpha_i - alpha_j).
    The top cluster (all four roots) is always present; every node with
    fewer roots has strictly larger depth than its parent.
    """

    def __init__(self, pairwise):
        n = 4
        self.pairwise = {
            (i, j): Fraction(pairwise[i][j]) for i in range(n) for j in range(n) if i != j
        }
        clusters = []
        for size in (4, 3, 2):
            for s in itertools.combinations(range(n), size):
                s = frozenset(s)
                d = min(self.pairwise[i, j] for i in s for j in s if i < j)
                outside = [t for t in range(n) if t not in s]
                if all(max(self.pairwise[t, i] for i in s) < d for t in outside):
                    clusters.append((s, d))
        nodes = {s: ClusterNode(indices=s, depth=d) for s, d in clusters}
        self.top = nodes[frozenset(range(n))]
        for s, node in nodes.items():
            if node is self.top:
                continue
            candidates = [t for t in nodes if s < t]
            parent = nodes[min(candidates, key=len)]
            node.parent = parent
            parent.children.append(node)
        for node in nodes.values():
            node.children.sort(key=lambda c: sorted(c.indices))
            covered = set().union(*(c.indices for c in node.children)) if node.children else set()
            node.immediate = tuple(sorted(node.indices - covered))
        self.nodes = sorted(nodes.values(), key=lambda nd: (len(nd.indices) * -1, sorted(nd.indices)))

    @classmethod
    def from_split_roots(cls, sr: SplitRoots):
        m = [[Fraction(0)] * 4 for _ in range(4)]
        for i, j in itertools.combinations(range(4), 2):
            m[i][j] = m[j][i] = sr.pairwise_val(i, j)
        return cls(m)

    def component_count(self):
        return len(self.nodes)

    def signature(self):
        """Canonical serialization: nested (sorted indices, depth) pairs."""
        return tuple(
            (tuple(sorted(nd.indices)), nd.depth) for nd in self.nodes
        )

    def gauss_valuation_of_f(self, node):
        """v_Z(f) for the monic quartic with these roots, at this component.

        v_Z(x - alpha_i) = depth(Z) for i inside the cluster and the depth of
        the smallest cluster containing both otherwise.
        """
        total = Fraction(0)
        for i in range(4):
            if i in node.indices:
                total += node.depth
            else:
                anc = node
                while anc is not None and i not in anc.indices:
                    anc = anc.parent
                total += anc.depth
        return total

    def __eq__(self, other):
        return isinstance(other, ClusterTree) and self.signature() == other.signature()

    def __repr__(self):
        return f"ClusterTree{self.top!r}"


@dataclass(frozen=True)
class InertiaAction:
    """Tame inertia of the splitting field: pi -> zeta_e pi on root indices."""

    e: int
    permutation: tuple  # image of root index i under the generator

    def power(self, j):
        perm = tuple(range(len(self.permutation)))
        for _ in range(j % self.e):
            perm = tuple(self.permutation[i] for i in perm)
        return perm


@dataclass
class Ramification:
    """Outcome of the splitting-field analysis at one prime."""

    p: int
    tame: bool
    e: int | None = None
    action: InertiaAction | None = None
    split: SplitRoots | None = None

    @property
    def wild(self):
        return not self.tame


def inertia_permutation(sr: SplitRoots, j=1):
    """Permutation of the roots under tau^j, tau(pi) = zeta_e pi."""
    ring = sr.ring
    if ring.e == 1:
        return tuple(range(len(sr.roots)))
    zeta = ring.zeta(ring.e)
    threshold = min(ball for _, ball in sr.cert)
    perm = []
    for i, r in enumerate(sr.roots):
        image = ring.galois_map(r, zeta, j)
        best, best_v, second = None, -1, -1
        for t, cand in enumerate(sr.roots):
            v = ring.val(ring.sub(image, cand))
            if v > best_v:
                best, best_v, second = t, v, best_v
            elif v > second:
                second = v
        if best_v < threshold or second >= threshold:
            raise PrecisionStallError("Galois image of a root not resolved")
        perm.append(best)
    if sorted(perm) != list(range(len(sr.roots))):
        raise PrecisionStallError("Galois action did not permute the roots")
    return tuple(perm)


def splitting_ramification(f, p):
    """Minimal tame ramification of the splitting field of f over Q_p^nr.

    Returns a Ramification record: e and the inertia action on roots when a
    tame extension of index dividing 24 splits f (always the case for
    p >= 5), and a typed wild outcome otherwise (possible only at p = 2, 3).
    """
    if f.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    if f.degree == 4 and discriminant(f) == 0:
        raise ValueError("polynomial must be separable")
    ints = [int(c) for c in f.coeffs]
    try:
        e, sr = split_over_minimal_tame(ints, p)
    except WildSplittingError:
        return Ramification(p=p, tame=False)
    perm = inertia_permutation(sr)
    return Ramification(
        p=p, tame=True, e=e, action=InertiaAction(e=e, permutation=perm), split=sr
    )


def cluster_tree(roots):
    """Stable 5-marked tree from lifted roots.

    Accepts either the SplitRoots bundle or a list of four ApproxRoot
    values over a common ring.
    """
    if isinstance(roots, SplitRoots):
        return ClusterTree.from_split_roots(roots)
    if len(roots) != 4:
        raise ValueError("need exactly four roots")
    ring = roots[0].ring
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for i, j in itertools.combinations(range(4), 2):
        d = Fraction(ring.val(ring.sub(roots[i].value, roots[j].value)), ring.e)
        if d >= min(roots[i].precision, roots[j].precision):
            raise ValueError("roots not separated at their certified precision")
        m[i][j] = m[j][i] = d
    return ClusterTree(m)
