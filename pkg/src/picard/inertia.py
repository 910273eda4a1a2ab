"""Inertia action on the tame special fiber and the quotient curve.

For p != 3 the curve acquires semistable reduction over L = Q_p^nr(pi),
pi^e = p, where e is the splitting index of f times a cube-root twist
(needed exactly when some component Gauss valuation v_Z(f) has
e*v_Z(f) != 0 mod 3).  The cyclic inertia group of order e acts on the
special fiber; the conductor exponent is epsilon = 6 - dim H^1_et of the
quotient, and delta = 0 by tameness.

The action is computed chart by chart.  On the component of a cluster s
with center z, m = e*depth(s) and Gauss number n = e*v_Z(f), the generator
power tau^j sends the chart coordinate a to lambda*a + gamma with
lambda = zeta^(j*m) and gamma = red((tau^j(z) - z)/pi^m), and multiplies
the cover coordinate by nu = zeta^(j*n/3).  Fixed points are counted over
the at most two fixed base points: one point (always fixed) above a branch
point, and three points above an unramified point, fixed iff the local
Kummer multiplier zeta^(j*(n - m*mult)/3) is trivial.  Quotient genera
follow from Riemann-Hurwitz over the effective stabilizer.
"""

from dataclasses import dataclass

from .clusters import ClusterTree, cluster_tree, inertia_permutation
from .cover import SpecialFiber, cover_fiber
from .localfield import lift_over_ring


class UnsupportedActionError(RuntimeError):
    """The induced inertia action violated an internal invariant."""


@dataclass
class ComponentChart:
    """Residue data of one base component needed for the action."""

    key: tuple
    size: int
    m: int  # e * depth, pi units
    n: int  # e * v_Z(f), pi units, divisible by 3
    center: int  # root index used as chart origin
    mult_at: dict  # finite chart coordinate (GF element) -> multiplicity
    genus: int
    branches: int


@dataclass
class InertiaQuotientData:
    """Everything about Y^0 = Y/Gamma needed for the conductor."""

    e: int
    component_orbits: list  # lists of cluster keys
    quotient_genera: list  # genus of W/stab per orbit
    gamma0: int
    h1_dim: int
    epsilon: int


def needs_cube_twist(tree: ClusterTree, e0: int):
    """True iff the cover needs pi^(1/3) over the splitting field."""
    for node in tree.nodes:
        if (e0 * tree.gauss_valuation_of_f(node)) % 3 != 0:
            return True
    return False


def _build_charts(tree, fiber, sr, e):
    ring = sr.ring
    gf = ring.U.gf
    genus_of = {key: g for key, g, _ in fiber.components}
    charts = {}
    for node in tree.nodes:
        key = tuple(sorted(node.indices))
        m = e * node.depth
        if m.denominator != 1:
            raise UnsupportedActionError("cluster depth outside the value group")
        m = int(m)
        n = e * tree.gauss_valuation_of_f(node)
        if n.denominator != 1 or int(n) % 3:
            raise UnsupportedActionError("Gauss valuation not a multiple of 3")
        n = int(n)
        center = node.center()
        z = sr.roots[center]
        mult_at = {}
        for i in sorted(node.indices):
            if i == center:
                coord = gf.zero
            else:
                diff = ring.sub(sr.roots[i], z)
                coord = ring.residue(ring.div_pi(diff, m))
            mult_at[coord] = mult_at.get(coord, 0) + 1
        for child in node.children:
            coords = set()
            for i in child.indices:
                diff = ring.sub(sr.roots[i], z)
                coords.add(gf.zero if i == center else ring.residue(ring.div_pi(diff, m)))
            if len(coords) != 1:
                raise UnsupportedActionError("child cluster not collapsed on chart")
        branches = sum(1 for mult in mult_at.values() if mult % 3) + (
            1 if len(node.indices) % 3 else 0
        )
        if branches >= 2 and branches - 2 != genus_of[key]:
            raise UnsupportedActionError("chart branch count disagrees with fiber")
        charts[key] = ComponentChart(
            key=key,
            size=len(node.indices),
            m=m,
            n=n,
            center=center,
            mult_at=mult_at,
            genus=genus_of[key],
            branches=branches,
        )
    return charts


def _cluster_permutation(tree, perm):
    """Induced permutation on cluster keys; must preserve the tree."""
    mapping = {}
    keys = {tuple(sorted(nd.indices)): nd for nd in tree.nodes}
    for key, node in keys.items():
        image = tuple(sorted(perm[i] for i in key))
        if image not in keys or keys[image].depth != node.depth:
            raise UnsupportedActionError("inertia does not preserve the cluster tree")
        mapping[key] = image
    return mapping


def _gf_pow(gf, a, n):
    if n < 0:
        return gf.pow(gf.inv(a), -n)
    return gf.pow(a, n)


def _mu(gf, zbar, j, chart, mult):
    """Kummer multiplier zeta^(j*(n - m*mult)/3) above a fixed base point.

    mult is the vanishing order of the reduced quartic there; the chart's
    point at infinity uses mult = chart.size (the degree of the reduction).
    """
    expo = chart.n - chart.m * mult
    if expo % 3:
        raise UnsupportedActionError("non-integral Kummer multiplier exponent")
    return _gf_pow(gf, zbar, j * (expo // 3))


def _fix_count(gf, zbar, j, chart, sig):
    """Fixed points of the signature's automorphism on the cover component."""
    lam, gam, nu = sig
    if lam == gf.one and gf.is_zero(gam):
        # vertical: a deck transformation; fixes exactly the branch points
        return chart.branches
    fix = 0
    if lam != gf.one:
        u_star = gf.mul(gam, gf.inv(gf.sub(gf.one, lam)))
        mult = chart.mult_at.get(u_star, 0)
        if mult % 3:
            fix += 1
        elif _mu(gf, zbar, j, chart, mult) == gf.one:
            fix += 3
    # the point at infinity of the chart is fixed by every affine map
    if chart.size % 3:
        fix += 1
    elif _mu(gf, zbar, j, chart, chart.size) == gf.one:
        fix += 3
    return fix


def inertia_quotient(tree: ClusterTree, fiber: SpecialFiber, sr, e: int):
    """Quotient data of the special fiber by the cyclic inertia of order e.

    sr holds the roots lifted over Q_p^nr(pi) with pi^e = p (zeta_e lives in
    its residue field); the root permutation of tau: pi -> zeta pi is
    computed there so it stays consistent with the multiplier formulas.
    """
    ring = sr.ring
    assert ring.e == e
    gf = ring.U.gf
    charts = _build_charts(tree, fiber, sr, e)

    if e == 1:
        genera = [charts[key].genus for key in charts]
        h1 = sum(2 * g for g in genera) + fiber.gamma
        return InertiaQuotientData(
            e=1,
            component_orbits=[[key] for key in charts],
            quotient_genera=genera,
            gamma0=fiber.gamma,
            h1_dim=h1,
            epsilon=6 - h1,
        )

    perm1 = inertia_permutation(sr, 1)
    zbar = ring.U.to_gf(ring.zeta(e))
    cl_perm = _cluster_permutation(tree, perm1)

    orbits = []
    seen = set()
    for key in charts:
        if key in seen:
            continue
        orbit = [key]
        cur = cl_perm[key]
        while cur != key:
            orbit.append(cur)
            cur = cl_perm[cur]
        seen.update(orbit)
        orbits.append(orbit)

    perms = {0: tuple(range(4))}
    for j in range(1, e):
        perms[j] = tuple(perm1[perms[j - 1][i]] for i in range(4))

    def signature(chart, j):
        lam = _gf_pow(gf, zbar, (j * chart.m) % e)
        nu = _gf_pow(gf, zbar, (j * (chart.n // 3)) % e)
        z = sr.roots[chart.center]
        image_center = perms[j % e][chart.center]
        gam = ring.residue(ring.div_pi(ring.sub(sr.roots[image_center], z), chart.m))
        return (lam, gam, nu)

    genera = []
    for orbit in orbits:
        chart = charts[orbit[0]]
        ell = len(orbit)
        stab = list(range(ell, e, ell))
        if not stab:
            genera.append(chart.genus)
            continue
        identity_sig = (gf.one, gf.zero, gf.one)
        sig_rep = {}
        kernel = 1
        for j in stab:
            sig = signature(chart, j)
            if sig == identity_sig:
                kernel += 1
            else:
                sig_rep.setdefault(sig, j)
        stab_order = e // ell
        if stab_order % kernel:
            raise UnsupportedActionError("kernel size does not divide the stabilizer")
        m_eff = stab_order // kernel
        if m_eff == 1:
            genera.append(chart.genus)
            continue
        if len(sig_rep) != m_eff - 1:
            raise UnsupportedActionError("effective stabilizer miscounted")
        eff_fix = sum(
            _fix_count(gf, zbar, j, chart, sig) for sig, j in sig_rep.items()
        )
        num = 2 * chart.genus - 2 - eff_fix
        if num % (2 * m_eff):
            raise UnsupportedActionError("Riemann-Hurwitz count not integral")
        g0 = 1 + num // (2 * m_eff)
        if g0 < 0:
            raise UnsupportedActionError("negative quotient genus")
        genera.append(g0)

    # quotient dual graph: one vertex per component orbit; each orbit of
    # base nodes contributes 1 edge (branch node), else 3 or 1 depending on
    # whether the stabilizer rotates the three points above it
    def orbit_index(key):
        for i, orbit in enumerate(orbits):
            if key in orbit:
                return i
        raise KeyError(key)

    vertices = len(orbits)
    edges = 0
    counted = set()
    for node in tree.nodes:
        if node.is_root:
            continue
        key = tuple(sorted(node.indices))
        idx = orbit_index(key)
        if idx in counted:
            continue
        counted.add(idx)
        chart = charts[orbits[idx][0]]
        if chart.size % 3:
            edges += 1
        else:
            ell = len(orbits[idx])
            rotated = any(
                _mu(gf, zbar, j, chart, chart.size) != gf.one
                for j in range(ell, e, ell)
            )
            edges += 1 if rotated else 3
    gamma0 = edges - vertices + 1
    if gamma0 < 0:
        raise UnsupportedActionError("negative loop count in quotient graph")
    h1 = sum(2 * g for g in genera) + gamma0
    return InertiaQuotientData(
        e=e,
        component_orbits=orbits,
        quotient_genera=genera,
        gamma0=gamma0,
        h1_dim=h1,
        epsilon=6 - h1,
    )


@dataclass
class TameAnalysis:
    """Full tame pipeline output at one prime p != 3."""

    p: int
    e_splitting: int
    e_semistable: int
    tree: ClusterTree
    fiber: SpecialFiber
    quotient: InertiaQuotientData

    @property
    def epsilon(self):
        return self.quotient.epsilon

    @property
    def f_p(self):
        return self.quotient.epsilon


def analyze_tame(f_ints, p, ram):
    """Run cluster tree -> cover -> inertia quotient for a tame prime.

    ram is the Ramification record from splitting_ramification (must be
    tame).  Relifts the roots over the cube-twisted extension when needed.
    """
    e0 = ram.e
    tree = cluster_tree(ram.split)
    fiber = cover_fiber(tree)
    # the twist multiplies the index by 3 even when 3 | e0: with e = 3*e0
    # every n_Z = e*v_Z(f) = 3*(e0*v_Z) is a multiple of 3
    e = 3 * e0 if needs_cube_twist(tree, e0) else e0
    if e == e0:
        sr = ram.split
    else:
        sr = lift_over_ring(f_ints, p, e, k=ram.split.ring.k)
        if cluster_tree(sr).signature() != tree.signature():
            raise UnsupportedActionError("cluster tree changed under base extension")
    quotient = inertia_quotient(tree, fiber, sr, e)
    if quotient.epsilon % 2 or not (0 <= quotient.epsilon <= 6):
        raise UnsupportedActionError(f"epsilon = {quotient.epsilon} violates parity/range")
    if fiber.reduction_type in ("d", "e") and quotient.gamma0 not in (0, 2):
        raise UnsupportedActionError("gamma0 must be 0 or 2 for types d/e")
    return TameAnalysis(
        p=p,
        e_splitting=e0,
        e_semistable=e,
        tree=tree,
        fiber=fiber,
        quotient=quotient,
    )
