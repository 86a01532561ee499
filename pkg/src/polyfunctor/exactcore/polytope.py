"""Polytopes with exact dual representations.

A `Polytope` always carries both an irredundant vertex list and an
irredundant facet system relative to its affine hull (the hull itself is a
canonical list of equations).  `dd_convert` builds one from either
representation via the double description method; all output is deterministic
(lexicographic vertex order, canonical primitive facet normals, and a fixed
coordinate chart for each affine subspace).
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DimensionMismatch, EmptyInput, PointNotInImage, UnboundedInput
from . import lp
from .dd import cone_extreme_rays
from .linalg import (
    Mat,
    Vec,
    ZERO,
    ONE,
    det,
    dot,
    frac,
    lex_pivot_columns,
    null_space,
    primitive,
    rank,
    solve,
    vec,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vec,
)

LinCond = tuple[Vec, Fraction]  # (normal, offset): normal . x (<= or ==) offset


def _norm_cond(c) -> LinCond:
    a, b = c
    return (vec(a), frac(b))


def _canon_ineq(a: Vec, b: Fraction) -> LinCond:
    """Scale normal.x <= b to primitive integer data (direction preserved)."""
    p = primitive(tuple(a) + (b,))
    return (p[:-1], p[-1])


class AffineMap:
    """x |-> matrix . x + translation, exact."""

    __slots__ = ("matrix", "translation")

    def __init__(self, matrix, translation):
        self.matrix: Mat = tuple(vec(row) for row in matrix)
        self.translation: Vec = vec(translation)
        if len(self.matrix) != len(self.translation):
            raise DimensionMismatch("matrix rows must match translation length")

    @property
    def domain_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def codomain_dim(self) -> int:
        return len(self.translation)

    def __call__(self, x) -> Vec:
        x = vec(x)
        if len(x) != self.domain_dim:
            raise DimensionMismatch(
                f"map expects dimension {self.domain_dim}, got {len(x)}"
            )
        return tuple(dot(row, x) + t for row, t in zip(self.matrix, self.translation))

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: x |-> self(other(x))."""
        if other.codomain_dim != self.domain_dim:
            raise DimensionMismatch("composition dimension mismatch")
        if self.domain_dim == 0:
            rows = tuple(zero_vec(other.domain_dim) for _ in range(self.codomain_dim))
            return AffineMap(rows, self.translation)
        from .linalg import mat_mul

        return AffineMap(mat_mul(self.matrix, other.matrix), self(other.translation))

    def linear_rank(self) -> int:
        return rank(self.matrix)

    def inverse(self) -> "AffineMap | None":
        from .linalg import invert

        if self.domain_dim != self.codomain_dim:
            return None
        inv = invert(self.matrix)
        if inv is None:
            return None
        return AffineMap(inv, vec_scale(-ONE, tuple(dot(r, self.translation) for r in inv)))

    @staticmethod
    def identity(n: int) -> "AffineMap":
        return AffineMap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), zero_vec(n))

    @staticmethod
    def coordinate_projection(n: int, coords) -> "AffineMap":
        rows = tuple(tuple(ONE if j == c else ZERO for j in range(n)) for c in coords)
        return AffineMap(rows, zero_vec(len(tuple(coords))))

    @staticmethod
    def from_point_images(points, images) -> "AffineMap":
        """The unique affine map sending each point to its image.

        Points must affinely span their ambient space (n+1 independent ones
        among them); extra pairs are checked for consistency.
        """
        points = [vec(p) for p in points]
        images = [vec(q) for q in images]
        n = len(points[0])
        m = len(images[0])
        # solve for each output coordinate: row.x + t = image coord
        rows, trans = [], []
        sys_rows = [list(p) + [ONE] for p in points]
        for j in range(m):
            rhs = tuple(q[j] for q in images)
            sol = solve(sys_rows, rhs)
            if sol is None:
                raise ValueError("point/image data is affinely inconsistent")
            rows.append(sol[:n])
            trans.append(sol[n])
        made = AffineMap(rows, trans)
        for p, q in zip(points, images):
            if made(p) != q:
                raise ValueError("points do not affinely span the domain")
        return made

    def __eq__(self, other):
        return (
            isinstance(other, AffineMap)
            and self.matrix == other.matrix
            and self.translation == other.translation
        )

    def __hash__(self):
        return hash((self.matrix, self.translation))

    def __repr__(self):
        return f"AffineMap(matrix={self.matrix!r}, translation={self.translation!r})"


class Polytope:
    """Immutable polytope with both exact representations.

    vertices: lex-sorted irredundant points.
    equations: canonical affine-hull description (normal . x = offset).
    inequalities: irredundant facet system relative to the hull.
    chart: lexicographically smallest coordinate subset carrying the hull
    isomorphically; used for volumes and for full-dimensional coordinates.
    """

    __slots__ = (
        "ambient_dim",
        "vertices",
        "equations",
        "inequalities",
        "intrinsic_dim",
        "chart",
        "_lift",
        "_lattice",
    )

    def __init__(self, ambient_dim, vertices, equations, inequalities, chart, lift):
        self.ambient_dim: int = ambient_dim
        self.vertices: tuple[Vec, ...] = vertices
        self.equations: tuple[LinCond, ...] = equations
        self.inequalities: tuple[LinCond, ...] = inequalities
        self.intrinsic_dim: int = len(chart)
        self.chart: tuple[int, ...] = chart
        self._lift: AffineMap = lift  # chart coordinates -> ambient (onto the hull)
        self._lattice = None

    # -- representation access -------------------------------------------------

    @property
    def dim(self) -> int:
        return self.intrinsic_dim

    def chart_projection(self) -> AffineMap:
        return AffineMap.coordinate_projection(self.ambient_dim, self.chart)

    def chart_lift(self) -> AffineMap:
        return self._lift

    def chart_vertices(self) -> tuple[Vec, ...]:
        return tuple(tuple(v[c] for c in self.chart) for v in self.vertices)

    def to_full_dimensional(self) -> "Polytope":
        """The same polytope in its chart coordinates (full-dimensional)."""
        if self.intrinsic_dim == self.ambient_dim:
            return self
        return from_points(self.chart_vertices())

    def contains(self, x) -> bool:
        x = vec(x)
        if len(x) != self.ambient_dim:
            raise DimensionMismatch("point dimension mismatch")
        return all(dot(a, x) == b for a, b in self.equations) and all(
            dot(a, x) <= b for a, b in self.inequalities
        )

    def strictly_contains(self, x) -> bool:
        """Relative-interior membership."""
        x = vec(x)
        return all(dot(a, x) == b for a, b in self.equations) and all(
            dot(a, x) < b for a, b in self.inequalities
        )

    def support_value(self, c) -> Fraction:
        c = vec(c)
        return max(dot(c, v) for v in self.vertices)

    def exposed_face_vertices(self, c) -> tuple[Vec, ...]:
        c = vec(c)
        m = self.support_value(c)
        return tuple(v for v in self.vertices if dot(c, v) == m)

    def translate(self, t) -> "Polytope":
        t = vec(t)
        return from_points([vec_add(v, t) for v in self.vertices])

    def scale(self, c) -> "Polytope":
        c = frac(c)
        return from_points([vec_scale(c, v) for v in self.vertices])

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.ambient_dim == other.ambient_dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return (
            f"Polytope(ambient_dim={self.ambient_dim}, dim={self.intrinsic_dim}, "
            f"n_vertices={len(self.vertices)}, n_facets={len(self.inequalities)})"
        )


# -- affine hull charts ---------------------------------------------------------


def _hull_chart(direction_rows, base_point: Vec, ambient_dim: int):
    """Chart data for the affine subspace base + span(direction_rows).

    Returns (chart columns S, lift AffineMap R^S -> R^n, equations) where the
    equations express every non-chart coordinate affinely in the chart ones.
    """
    k = rank(direction_rows) if direction_rows else 0
    if k == 0:
        eqs = tuple(
            _canon_ineq(
                tuple(ONE if j == i else ZERO for j in range(ambient_dim)), base_point[i]
            )
            for i in range(ambient_dim)
        )
        lift = AffineMap(tuple(() for _ in range(ambient_dim)), base_point)
        return (), lift, eqs
    chart = tuple(lex_pivot_columns(direction_rows, ambient_dim))
    # direction vector with prescribed chart coordinates e_j: solve in the basis
    basis = [list(r) for r in direction_rows]
    red, piv = _rref_rows(basis)
    span = [tuple(r) for r in red]
    sub = [[row[c] for c in chart] for row in span]
    from .linalg import invert as _inv

    sub_inv = _inv(tuple(tuple(x for x in row) for row in sub))
    assert sub_inv is not None
    # columns of B: directions b_j with (b_j)_chart = e_j
    b_cols = []
    for j in range(k):
        coeffs = tuple(sub_inv[i][j] for i in range(k))
        col = tuple(
            sum((coeffs[i] * span[i][t] for i in range(k)), ZERO)
            for t in range(ambient_dim)
        )
        b_cols.append(col)
    x0 = vec_sub(
        base_point,
        tuple(
            sum((base_point[chart[j]] * b_cols[j][t] for j in range(k)), ZERO)
            for t in range(ambient_dim)
        ),
    )
    matrix = tuple(tuple(b_cols[j][t] for j in range(k)) for t in range(ambient_dim))
    lift = AffineMap(matrix, x0)
    eqs = []
    for t in range(ambient_dim):
        if t in chart:
            continue
        normal = [ZERO] * ambient_dim
        normal[t] = ONE
        for j in range(k):
            normal[chart[j]] = -matrix[t][j]
        eqs.append(_canon_ineq(tuple(normal), x0[t]))
    return chart, lift, tuple(eqs)


def _rref_rows(rows):
    from .linalg import rref

    return rref(rows)


# -- conversions ----------------------------------------------------------------


def _facets_from_full_dim_points(upoints: list[Vec]) -> list[LinCond]:
    """Irredundant facets of conv(upoints), upoints affinely spanning R^k."""
    k = len(upoints[0])
    if k == 0:
        return []
    m_rows = [tuple(u) + (-ONE,) for u in upoints]
    rays = cone_extreme_rays(m_rows)
    facets = []
    for r in rays:
        a, b = r[:-1], r[-1]
        if all(x == 0 for x in a):
            continue  # the trivial inequality 0 <= b
        facets.append(_canon_ineq(a, b))
    return facets


def _vertices_from_full_dim_system(ineqs: list[LinCond], k: int) -> list[Vec]:
    """Vertices of {u in R^k : a.u <= b}, assumed nonempty; raises on unboundedness."""
    if k == 0:
        return [()]
    m_rows = [tuple(a) + (-b,) for a, b in ineqs]
    m_rows.append(tuple(ZERO for _ in range(k)) + (-ONE,))
    if rank(m_rows) < k + 1:
        raise UnboundedInput("feasible set contains a line")
    rays = cone_extreme_rays(m_rows)
    verts = []
    for r in rays:
        t = r[-1]
        if t == 0:
            raise UnboundedInput("feasible set has a recession direction")
        verts.append(tuple(x / t for x in r[:-1]))
    return verts


def from_points(points) -> Polytope:
    """Polytope from a finite point list (duplicates and non-vertices dropped)."""
    pts = []
    seen = set()
    for p in points:
        p = vec(p)
        if p not in seen:
            seen.add(p)
            pts.append(p)
    if not pts:
        raise EmptyInput("no points given")
    ambient = len(pts[0])
    if any(len(p) != ambient for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    base = min(pts)
    diffs = [vec_sub(p, base) for p in pts if p != base]
    chart, lift, eqs = _hull_chart(diffs, base, ambient)
    k = len(chart)
    if k == 0:
        return Polytope(ambient, (base,), eqs, (), chart, lift)
    upoints = [tuple(p[c] for c in chart) for p in pts]
    facets_u = _facets_from_full_dim_points(upoints)
    # vertex test: tight facet normals span R^k
    verts = []
    for p, u in zip(pts, upoints):
        tight = [a for a, b in facets_u if dot(a, u) == b]
        if rank(tight) == k:
            verts.append(p)
    verts.sort()
    ineqs = tuple(sorted(_lift_ineq(a, b, chart, ambient) for a, b in facets_u))
    return Polytope(ambient, tuple(verts), eqs, ineqs, chart, lift)


def _lift_ineq(a: Vec, b: Fraction, chart, ambient: int) -> LinCond:
    normal = [ZERO] * ambient
    for j, c in enumerate(chart):
        normal[c] = a[j]
    return (tuple(normal), b)


def from_inequalities(inequalities, equations=(), ambient_dim: int | None = None) -> Polytope:
    """Polytope from a halfspace system (plus optional equations).

    Raises EmptyInput for infeasible systems and UnboundedInput when the
    feasible set is unbounded.
    """
    ineqs = [_norm_cond(c) for c in inequalities]
    eqs = [_norm_cond(c) for c in equations]
    if ambient_dim is None:
        if ineqs:
            ambient_dim = len(ineqs[0][0])
        elif eqs:
            ambient_dim = len(eqs[0][0])
        else:
            raise ValueError("ambient dimension unknown")
    for a, _ in ineqs + eqs:
        if len(a) != ambient_dim:
            raise DimensionMismatch("constraint of wrong dimension")
    feas = lp.feasible_point(ineqs, eqs, dim=ambient_dim)
    if feas is None:
        raise EmptyInput("inequality system is infeasible")
    # implicit equalities: fast path via a strict interior point
    if lp.strict_interior_point(ineqs, eqs, dim=ambient_dim) is None:
        remaining = []
        for a, b in ineqs:
            res = lp.minimize(a, ineqs, eqs)
            if res.status == lp.OPTIMAL and res.value == b:
                eqs.append((a, b))
            else:
                remaining.append((a, b))
        ineqs = remaining
    eq_rows = [a for a, _ in eqs]
    if eq_rows and rank(eq_rows) > 0:
        dirs = null_space(eq_rows, ambient_dim)
    else:
        dirs = [tuple(ONE if j == i else ZERO for j in range(ambient_dim)) for i in range(ambient_dim)]
    # anchor the hull at a canonical solution of the equation system
    chart, lift, canon_eqs = _hull_chart(dirs, feas, ambient_dim)
    k = len(chart)
    if k == 0:
        return Polytope(ambient_dim, (vec(feas),), canon_eqs, (), chart, lift)
    # substitute x = lift(u) into the inequalities
    u_ineqs = []
    for a, b in ineqs:
        au = tuple(dot(a, tuple(lift.matrix[t][j] for t in range(ambient_dim))) for j in range(k))
        const = dot(a, lift.translation)
        if all(x == 0 for x in au):
            continue  # constants: feasibility already checked
        u_ineqs.append((au, b - const))
    uverts = _vertices_from_full_dim_system(u_ineqs, k)
    facets_u = _facets_from_full_dim_points(uverts)
    verts = sorted(lift(u) for u in uverts)
    ineq_out = tuple(sorted(_lift_ineq(a, b, chart, ambient_dim) for a, b in facets_u))
    return Polytope(ambient_dim, tuple(verts), canon_eqs, ineq_out, chart, lift)


def dd_convert(*, vertices=None, inequalities=None, equations=None, ambient_dim=None) -> Polytope:
    """Dual-representation conversion from whichever side is given."""
    if vertices is not None:
        if inequalities or equations:
            raise ValueError("give either vertices or a halfspace system, not both")
        return from_points(vertices)
    if inequalities is None and equations is None:
        raise ValueError("no representation given")
    return from_inequalities(inequalities or (), equations or (), ambient_dim)


# -- basic geometric operations ---------------------------------------------------


def image(p: Polytope, f: AffineMap) -> Polytope:
    if f.domain_dim != p.ambient_dim:
        raise DimensionMismatch("map domain does not match polytope ambient space")
    return from_points([f(v) for v in p.vertices])


def preimage_fiber(f: AffineMap, x: Polytope, y) -> Polytope:
    """The exact fiber x intersect {f(.) = y} as a polytope."""
    y = vec(y)
    if len(y) != f.codomain_dim:
        raise DimensionMismatch("fiber point dimension mismatch")
    eqs = list(x.equations)
    for row, t, yy in zip(f.matrix, f.translation, y):
        eqs.append((row, yy - t))
    try:
        return from_inequalities(x.inequalities, eqs, x.ambient_dim)
    except EmptyInput:
        raise PointNotInImage(f"{y} is not in the image") from None


def _simplex_volume_u(us: list[Vec]) -> Fraction:
    k = len(us) - 1
    if k == 0:
        return ONE
    m = tuple(vec_sub(u, us[0]) for u in us[1:])
    d = det(m)
    from math import factorial

    return abs(d) / factorial(k)


def facet_vertex_indices(p: Polytope) -> list[frozenset[int]]:
    """For each facet inequality, the indices of the vertices lying on it."""
    return [
        frozenset(i for i, v in enumerate(p.vertices) if dot(a, v) == b)
        for a, b in p.inequalities
    ]


def triangulation(p: Polytope) -> list[tuple[int, ...]]:
    """A triangulation of p as tuples of vertex indices (coning from the first vertex)."""
    k = p.intrinsic_dim
    if len(p.vertices) == k + 1:
        return [tuple(range(len(p.vertices)))]
    index = {v: i for i, v in enumerate(p.vertices)}
    simplices: list[tuple[int, ...]] = []
    apex = 0  # lex-min vertex
    for fverts in facet_vertex_indices(p):
        if apex in fverts:
            continue
        sub = from_points([p.vertices[i] for i in sorted(fverts)])
        sub_map = [index[v] for v in sub.vertices]
        for tri in triangulation(sub):
            simplices.append((apex,) + tuple(sub_map[i] for i in tri))
    return simplices


def volume(p: Polytope) -> Fraction:
    """Intrinsic volume in the polytope's canonical coordinate chart.

    0-dimensional polytopes have volume 1, so that chamber weights degenerate
    gracefully.  Ratios of volumes of polytopes sharing an affine hull do not
    depend on the chart.
    """
    if p.intrinsic_dim == 0:
        return ONE
    total = ZERO
    cv = p.chart_vertices()
    for tri in triangulation(p):
        total += _simplex_volume_u([cv[i] for i in tri])
    return total


def centroid(p: Polytope) -> Vec:
    """Mass centroid (volume-weighted over a triangulation); lies in relint(p)."""
    if p.intrinsic_dim == 0:
        return p.vertices[0]
    cv = p.chart_vertices()
    total = ZERO
    acc = zero_vec(p.ambient_dim)
    kp1 = frac(p.intrinsic_dim + 1)
    for tri in triangulation(p):
        w = _simplex_volume_u([cv[i] for i in tri])
        if w == 0:
            continue
        center = vec_scale(
            ONE / kp1,
            tuple(
                sum((p.vertices[i][t] for i in tri), ZERO)
                for t in range(p.ambient_dim)
            ),
        )
        acc = vec_add(acc, vec_scale(w, center))
        total += w
    return vec_scale(ONE / total, acc)


# -- face lattice (implementation in lattice.py, re-exported here to avoid cycles) --


def face_lattice_of(p: Polytope):
    from .lattice import face_lattice

    return face_lattice(p)


# -- standard constructors ---------------------------------------------------------


def point(coords) -> Polytope:
    return from_points([coords])


def segment(a, b) -> Polytope:
    return from_points([a, b])


def box(bounds) -> Polytope:
    """Product of intervals [(lo, hi), ...]."""
    ineqs = []
    n = len(bounds)
    for i, (lo, hi) in enumerate(bounds):
        e = [ZERO] * n
        e[i] = ONE
        ineqs.append((tuple(e), frac(hi)))
        e = [ZERO] * n
        e[i] = -ONE
        ineqs.append((tuple(e), -frac(lo)))
    return from_inequalities(ineqs, ambient_dim=n)


def unit_cube(n: int) -> Polytope:
    return box([(0, 1)] * n)


def centered_cube(n: int, half=1) -> Polytope:
    return box([(-frac(half), frac(half))] * n)


def standard_simplex(n: int) -> Polytope:
    """conv{0, e_1, ..., e_n}, full-dimensional in R^n."""
    pts = [zero_vec(n)] + [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    return from_points(pts)


def cross_polytope(n: int) -> Polytope:
    pts = []
    for i in range(n):
        for s in (ONE, -ONE):
            pts.append(tuple(s if j == i else ZERO for j in range(n)))
    return from_points(pts)


def regular_polygon(n: int, scale=1) -> Polytope:
    """A rational convex n-gon inscribed in a circle (tan half-angle points).

    Not metrically regular, but convex with all points on one circle, which is
    what the combinatorial constructions need.
    """
    from math import tan, pi

    pts = []
    for k in range(n):
        theta = pi * (4 * k + 1) / (2 * n)  # never hits the tan pole at pi
        t = Fraction(round(tan(theta / 2) * 10000), 10000)
        denom = 1 + t * t
        pts.append((frac(scale) * (1 - t * t) / denom, frac(scale) * 2 * t / denom))
    return from_points(pts)


def cyclic_vertices(p: Polytope) -> list[Vec]:
    """Vertices of a 2-dimensional polytope in counterclockwise order, lex-min first."""
    if p.intrinsic_dim > 2:
        raise DimensionMismatch("cyclic order needs a <= 2-dimensional polytope")
    if p.intrinsic_dim < 2:
        return list(p.vertices)
    cv = p.chart_vertices()
    n = len(cv)
    cx = sum((u[0] for u in cv), ZERO) / n
    cy = sum((u[1] for u in cv), ZERO) / n

    def half(u):
        dx, dy = u[0] - cx, u[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp_angle(i, j):
        ui, uj = cv[i], cv[j]
        hi, hj = half(ui), half(uj)
        if hi != hj:
            return -1 if hi < hj else 1
        cross = (ui[0] - cx) * (uj[1] - cy) - (ui[1] - cy) * (uj[0] - cx)
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    import functools

    order = sorted(range(n), key=functools.cmp_to_key(cmp_angle))
    start = min(range(n), key=lambda idx: p.vertices[order[idx]])
    order = order[start:] + order[:start]
    return [p.vertices[i] for i in order]
