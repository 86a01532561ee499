"""Hom polytopes, polars, bipyramids, tensor products, and their sum identities.

The polytope of affine maps P -> Q is coordinatized by the images of an
affine basis chart of P: the first dim(P)+1 affinely independent vertices of
P in lexicographic order.  Its halfspace description lists, for every vertex
v of P and every facet inequality (a, b) of Q, the condition a . phi(v) <= b;
these are exactly the facets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, OriginNotInteriorError
from .exactcore import lp
from .exactcore.linalg import (
    Vec,
    ZERO,
    ONE,
    dot,
    frac,
    primitive,
    rank,
    solve,
    vec,
    vec_sub,
    zero_vec,
)
from .exactcore.polytope import (
    AffineMap,
    Polytope,
    from_inequalities,
    from_points,
    image,
)
from .polyops import affinely_equivalent, minkowski_sum

# -- charts and barycentric coordinates ----------------------------------------------


def affine_basis_vertices(p: Polytope) -> tuple[Vec, ...]:
    """The first dim(p)+1 affinely independent vertices in lexicographic order."""
    out = [p.vertices[0]]
    dirs: list[Vec] = []
    for v in p.vertices[1:]:
        d = vec_sub(v, out[0])
        if rank(dirs + [d]) > len(dirs):
            dirs.append(d)
            out.append(v)
        if len(out) == p.intrinsic_dim + 1:
            break
    return tuple(out)


def barycentric_coordinates(chart_points, x) -> Vec:
    """Coefficients lam with sum(lam) = 1 and sum(lam_i c_i) = x."""
    x = vec(x)
    n = len(x)
    rows = [[c[t] for c in chart_points] for t in range(n)]
    rows.append([ONE] * len(chart_points))
    sol = solve(rows, tuple(x) + (ONE,))
    if sol is None:
        raise ValueError("point is outside the affine hull of the chart")
    return sol


# -- hom polytopes --------------------------------------------------------------------


@dataclass(frozen=True)
class HomPolytope:
    """The polytope of affine maps domain -> codomain in chart coordinates.

    underlying lives in R^((dim P + 1) * dim Q); block i holds the image of
    chart point i in the codomain's full-dimensional chart.  facet_labels maps
    each facet index of `underlying` to (vertex index of P, facet index of the
    canonicalized codomain).
    """

    underlying: Polytope
    domain: Polytope
    codomain: Polytope
    chart_points: tuple[Vec, ...]
    facet_labels: dict[int, tuple[int, int]]

    @property
    def block_dim(self) -> int:
        return self.codomain.intrinsic_dim

    def _blocks(self, point) -> list[Vec]:
        q = self.block_dim
        point = vec(point)
        return [point[i * q : (i + 1) * q] for i in range(len(self.chart_points))]

    def decode(self, point) -> AffineMap:
        """The affine map (ambient of P -> ambient of Q) a chart point represents."""
        lift = self.codomain.chart_lift()
        images = [lift(b) for b in self._blocks(point)]
        return AffineMap.from_point_images(self.chart_points, images)

    def encode(self, f: AffineMap) -> Vec:
        """Chart coordinates of an affine map carrying P into Q."""
        chart = self.codomain.chart
        out: list[Fraction] = []
        for c in self.chart_points:
            y = f(c)
            out.extend(y[j] for j in chart)
        return tuple(out)

    def vertex_maps(self) -> list[AffineMap]:
        return [self.decode(v) for v in self.underlying.vertices]


def _hom_inequalities(p: Polytope, codomain_ineqs, codomain_dim: int, chart_points):
    """Lemma-style constraint list: (normal over blocks, offset, vertex idx, facet idx)."""
    lams = [barycentric_coordinates(chart_points, v) for v in p.vertices]
    rows = []
    nblocks = len(chart_points)
    for vi, lam in enumerate(lams):
        for fi, (a, b) in enumerate(codomain_ineqs):
            normal = [ZERO] * (nblocks * codomain_dim)
            for i in range(nblocks):
                for j in range(codomain_dim):
                    normal[i * codomain_dim + j] = lam[i] * a[j]
            rows.append((tuple(normal), frac(b), vi, fi))
    return rows


def hom_polytope(p: Polytope, q: Polytope) -> HomPolytope:
    """The polytope of affine maps p -> q, with labeled facets.

    Both arguments are canonicalized to full-dimensional coordinates in their
    affine hulls; the result has dimension (dim p + 1) * dim q.
    """
    chart_points = affine_basis_vertices(p)
    qq = q.to_full_dimensional()
    labeled = _hom_inequalities(p, qq.inequalities, qq.ambient_dim, chart_points)
    system = [(n, b) for n, b, _, _ in labeled]
    if not system:
        # codomain is a point: the hom polytope is a single (constant) map
        underlying = from_points([()])
        return HomPolytope(underlying, p, q, chart_points, {})
    underlying = from_inequalities(system, ambient_dim=len(system[0][0]))
    by_key = {}
    for n, b, vi, fi in labeled:
        key = primitive(n + (b,))
        by_key.setdefault(key, (vi, fi))
    labels = {}
    for idx, (n, b) in enumerate(underlying.inequalities):
        key = primitive(n + (b,))
        if key in by_key:
            labels[idx] = by_key[key]
    return HomPolytope(underlying, p, q, chart_points, labels)


def hom_system_raw(p: Polytope, q: Polytope) -> Polytope:
    """Hom(p, q) as a subset of maps into q's ambient space (no codomain chart).

    Shared-space variant: for polytopes q, r in one ambient space, the
    Minkowski sum of hom polytopes is taken here.  Blocks hold raw ambient
    images of p's chart points, so the result may be lower-dimensional.
    """
    chart_points = affine_basis_vertices(p)
    m = q.ambient_dim
    labeled = _hom_inequalities(p, q.inequalities, m, chart_points)
    system = [(n, b) for n, b, _, _ in labeled]
    eqs = []
    lams = [barycentric_coordinates(chart_points, v) for v in p.vertices]
    nblocks = len(chart_points)
    for lam in lams:
        for a, b in q.equations:
            normal = [ZERO] * (nblocks * m)
            for i in range(nblocks):
                for j in range(m):
                    normal[i * m + j] = lam[i] * a[j]
            eqs.append((tuple(normal), frac(b)))
    return from_inequalities(system, eqs, ambient_dim=nblocks * m)


def raw_decode(p: Polytope, point, codomain_ambient: int) -> AffineMap:
    chart_points = affine_basis_vertices(p)
    point = vec(point)
    blocks = [
        point[i * codomain_ambient : (i + 1) * codomain_ambient]
        for i in range(len(chart_points))
    ]
    return AffineMap.from_point_images(chart_points, blocks)


def raw_encode(p: Polytope, f: AffineMap) -> Vec:
    out: list[Fraction] = []
    for c in affine_basis_vertices(p):
        out.extend(f(c))
    return tuple(out)


def hom_in_map_coordinates(p: Polytope, q: Polytope) -> Polytope:
    """Hom(p, q) realized in (matrix, translation) coordinates of ambient maps.

    Requires p full-dimensional in its ambient space, so maps are determined
    by their ambient matrix and translation.  Coordinates: matrix rows
    concatenated, then the translation.
    """
    if p.intrinsic_dim != p.ambient_dim:
        raise DimensionMismatch("map coordinates need a full-dimensional domain")
    hp = hom_polytope(p, q)
    pts = []
    for v in hp.underlying.vertices:
        f = hp.decode(v)
        flat: list[Fraction] = []
        for row in f.matrix:
            flat.extend(row)
        flat.extend(f.translation)
        pts.append(tuple(flat))
    return from_points(pts)


# -- polar and bipyramid ---------------------------------------------------------------


def polar(s: Polytope) -> Polytope:
    """The polar dual {u : u.x <= 1 on s}; needs 0 interior and s full-dimensional."""
    if s.intrinsic_dim != s.ambient_dim:
        raise OriginNotInteriorError("polar needs a full-dimensional polytope")
    origin = zero_vec(s.ambient_dim)
    if not s.strictly_contains(origin):
        raise OriginNotInteriorError("polar needs the origin strictly inside")
    return from_points([tuple(x / b for x in a) for a, b in s.inequalities])


def bipyramid(t: Polytope) -> Polytope:
    """conv((t, 0), (0, ..., 0, +-1)) one dimension up; needs 0 in relint(t)."""
    origin = zero_vec(t.ambient_dim)
    if not t.strictly_contains(origin):
        raise OriginNotInteriorError("bipyramid needs the origin in the relative interior")
    pts = [v + (ZERO,) for v in t.vertices]
    apex = zero_vec(t.ambient_dim)
    pts.append(apex + (ONE,))
    pts.append(apex + (-ONE,))
    return from_points(pts)


# -- tensor product ---------------------------------------------------------------------


def tensor_product(p: Polytope, q: Polytope) -> Polytope:
    """conv{(v (x) w, v, w)} over vertex pairs, in canonical full-dim coordinates."""
    pp = p.to_full_dimensional()
    qq = q.to_full_dimensional()
    dp, dq = pp.ambient_dim, qq.ambient_dim
    pts = []
    for v in pp.vertices:
        for w in qq.vertices:
            outer = tuple(v[i] * w[j] for i in range(dp) for j in range(dq))
            pts.append(outer + v + w)
    return from_points(pts)


# -- Minkowski sum identities ------------------------------------------------------------


def _hom_raw_system(p: Polytope, q: Polytope):
    """Raw-map-space halfspace system of Hom(p, q): (inequalities, equations)."""
    chart_points = affine_basis_vertices(p)
    m = q.ambient_dim
    labeled = _hom_inequalities(p, q.inequalities, m, chart_points)
    system = [(n, b) for n, b, _, _ in labeled]
    eqs = []
    lams = [barycentric_coordinates(chart_points, v) for v in p.vertices]
    nblocks = len(chart_points)
    for lam in lams:
        for a, b in q.equations:
            normal = [ZERO] * (nblocks * m)
            for i in range(nblocks):
                for j in range(m):
                    normal[i * m + j] = lam[i] * a[j]
            eqs.append((tuple(normal), frac(b)))
    return system, eqs


def hom_sum_check(p: Polytope, q: Polytope, r: Polytope) -> bool:
    """Exact point-set equality of Hom(p, q+r) and Hom(p, q) + Hom(p, r).

    Both sides live in the shared raw map space over p's chart.  The sum is
    contained in Hom(p, q+r) tautologically (a sum of maps into q and into r
    lands in q+r); equality is certified by decomposing every vertex of
    Hom(p, q+r) via an exact feasibility LP.
    """
    if q.ambient_dim != r.ambient_dim:
        raise DimensionMismatch("codomain summands in different spaces")
    total = minkowski_sum([(1, q), (1, r)])
    big = hom_system_raw(p, total)
    sys_q, eqs_q = _hom_raw_system(p, q)
    sys_r, eqs_r = _hom_raw_system(p, r)
    dim = len(affine_basis_vertices(p)) * q.ambient_dim
    for phi in big.vertices:
        # find psi in Hom(p,q) with phi - psi in Hom(p,r)
        ineqs = list(sys_q)
        eqs = list(eqs_q)
        for a, b in sys_r:
            ineqs.append((tuple(-x for x in a), b - dot(a, phi)))
        for a, b in eqs_r:
            eqs.append((tuple(-x for x in a), b - dot(a, phi)))
        if lp.feasible_point(ineqs, eqs, dim=dim) is None:
            return False
    return True


def adjunction_check(a: Polytope, b: Polytope, c: Polytope, budget: int | None = None) -> bool:
    """Affine equivalence of Hom(a (x) b, c) and Hom(a, Hom(b, c))."""
    left = hom_polytope(tensor_product(a, b), c).underlying
    right = hom_polytope(a, hom_polytope(b, c).underlying).underlying
    kwargs = {} if budget is None else {"budget": budget}
    return affinely_equivalent(left, right, **kwargs) is not None
