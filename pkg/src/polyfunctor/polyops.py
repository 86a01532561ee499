"""Minkowski combinations, normal fans, equivalence tests, Hausdorff diagnostics.

Normal fans are taken in the dual of the direction space of the polytope's
affine hull, expressed in its canonical coordinate chart, so lower-dimensional
polytopes get fans of their intrinsic dimension.  The Hausdorff distance is
deliberately second-class: a float diagnostic backed by exact rational
squared distances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, SearchBudgetExceeded
from .exactcore.dd import cone_extreme_rays
from .exactcore.lattice import face_lattice
from .exactcore.linalg import (
    Vec,
    ZERO,
    ONE,
    dot,
    frac,
    null_space,
    primitive,
    rank,
    solve,
    vec,
    vec_add,
    vec_scale,
    vec_sub,
)
from .exactcore.polytope import AffineMap, Polytope, from_points, facet_vertex_indices

DEFAULT_SEARCH_BUDGET = 2_000_000


# -- Minkowski sums -----------------------------------------------------------------


def minkowski_sum(terms) -> Polytope:
    """Exact weighted Minkowski sum of [(weight, polytope), ...].

    Weights must be nonnegative; a zero weight contributes the origin
    (0 * P = {0}).  Folds pairwise, pruning to vertices at each step.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("empty Minkowski sum")
    ambient = terms[0][1].ambient_dim
    pts: list[Vec] | None = None
    for weight, p in terms:
        weight = frac(weight)
        if weight < 0:
            raise ValueError("negative Minkowski weight")
        if p.ambient_dim != ambient:
            raise DimensionMismatch("Minkowski summands in different ambient spaces")
        term_pts = (
            [vec_scale(weight, v) for v in p.vertices]
            if weight > 0
            else [vec_scale(ZERO, p.vertices[0])]
        )
        if pts is None:
            pts = term_pts
        else:
            pts = [vec_add(a, b) for a in pts for b in term_pts]
        pts = list(from_points(pts).vertices)
    return from_points(pts)


def exposed_face(p: Polytope, direction) -> Polytope:
    """The face of p maximizing the given linear functional."""
    return from_points(p.exposed_face_vertices(direction))


# -- cones and normal fans ------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone: primitive ray generators plus a halfspace description.

    Lower-dimensional cones carry their span's equations as paired
    inequalities inside `inequalities`.
    """

    dim: int
    rays: tuple[Vec, ...]
    inequalities: tuple[Vec, ...]

    @property
    def key(self) -> tuple[Vec, ...]:
        return self.rays


def cone_from_rays(rays, ambient: int) -> Cone:
    rays = sorted({primitive(vec(r)) for r in rays if not all(x == 0 for x in vec(r))})
    if not rays:
        # the zero cone: x = 0, as paired unit inequalities
        ineqs = []
        for i in range(ambient):
            e = [ZERO] * ambient
            e[i] = ONE
            ineqs.append(tuple(e))
            ineqs.append(tuple(-x for x in e))
        return Cone(0, (), tuple(sorted(ineqs)))
    d = rank(rays)
    ineqs: list[Vec] = []
    for n in null_space(rays, ambient):
        n = primitive(n)
        ineqs.append(n)
        ineqs.append(vec_scale(-ONE, n))
    chart = _span_chart(rays, ambient)
    reduced = [tuple(r[c] for c in chart) for r in rays]
    if d == 1:
        ineqs.append(_lift_normal(vec_scale(-ONE, tuple(reduced[0])), chart, ambient))
    else:
        # facet normals inside the span = extreme rays of the polar {c : c.r <= 0}
        for c in cone_extreme_rays(reduced):
            ineqs.append(_lift_normal(c, chart, ambient))
    canon = sorted({primitive(i) for i in ineqs})
    return Cone(d, tuple(rays), tuple(canon))


def _span_chart(rays, ambient):
    from .exactcore.linalg import lex_pivot_columns

    return lex_pivot_columns(list(rays), ambient)


def _lift_normal(c, chart, ambient) -> Vec:
    normal = [ZERO] * ambient
    for j, col in enumerate(chart):
        normal[col] = c[j]
    return tuple(normal)


@dataclass(frozen=True)
class NormalFan:
    """All cones of the fan, each tagged with the face it comes from (or None)."""

    ambient_dim: int
    cones: tuple[Cone, ...]
    face_of_cone: tuple[tuple[int, tuple[int, ...]] | None, ...]

    def maximal_cones(self) -> list[Cone]:
        d = self.ambient_dim
        return [c for c in self.cones if c.dim == d]

    def cone_keys(self) -> frozenset:
        return frozenset(c.key for c in self.cones)


def normal_fan(p: Polytope) -> NormalFan:
    """Normal fan of p in the chart coordinates of its direction space."""
    q = p.to_full_dimensional()
    k = q.ambient_dim
    lattice = face_lattice(q)
    facet_sets = [frozenset(s) for s in facet_vertex_indices(q)]
    normals = [a for a, _ in q.inequalities]
    cones = []
    faces = []
    for d, vs in lattice.faces:
        if d < 0:
            continue
        vset = set(vs)
        gen = [normals[i] for i, fs in enumerate(facet_sets) if vset <= fs]
        cone = cone_from_rays(gen, k)
        cones.append(cone)
        faces.append((d, vs))
    order = sorted(range(len(cones)), key=lambda i: (cones[i].dim, cones[i].key))
    return NormalFan(
        k,
        tuple(cones[i] for i in order),
        tuple(faces[i] for i in order),
    )


def _intersect_cones(a: Cone, b: Cone, ambient: int) -> Cone:
    # both cones are pointed (normal fans of full-dimensional polytopes), so
    # the combined system has full rank and extreme rays describe everything
    rows = [tuple(x) for x in a.inequalities] + [tuple(x) for x in b.inequalities]
    rays = cone_extreme_rays(rows)
    return cone_from_rays(rays, ambient)


def common_refinement(fans) -> NormalFan:
    """All pairwise intersections of the fans' cones (complete fans, same space)."""
    fans = list(fans)
    if not fans:
        raise ValueError("no fans given")
    ambient = fans[0].ambient_dim
    if any(f.ambient_dim != ambient for f in fans):
        raise DimensionMismatch("fans live in different dual spaces")
    current = {c.key: c for c in fans[0].cones}
    for f in fans[1:]:
        nxt: dict = {}
        for c1 in current.values():
            for c2 in f.cones:
                inter = _intersect_cones(c1, c2, ambient)
                nxt[inter.key] = inter
        current = nxt
    cones = sorted(current.values(), key=lambda c: (c.dim, c.key))
    return NormalFan(ambient, tuple(cones), tuple(None for _ in cones))


def fans_equal(a: NormalFan, b: NormalFan) -> bool:
    return a.ambient_dim == b.ambient_dim and a.cone_keys() == b.cone_keys()


# -- Hausdorff distance (float diagnostic) --------------------------------------------


def _sq_dist_point_to_polytope(x: Vec, q: Polytope) -> Fraction:
    """Exact squared Euclidean distance from x to q."""
    if q.contains(x):
        return ZERO
    lattice = face_lattice(q)
    best: Fraction | None = None
    for d, vs in lattice.faces:
        if d < 0:
            continue
        verts = [q.vertices[i] for i in vs]
        base = verts[0]
        dirs = [vec_sub(v, base) for v in verts[1:]]
        dirs = _independent_subset(dirs)
        # orthogonal projection of x onto the affine hull of the face
        rel = vec_sub(x, base)
        if dirs:
            gram = [[dot(a, b) for b in dirs] for a in dirs]
            rhs = tuple(dot(a, rel) for a in dirs)
            coeffs = solve(gram, rhs)
            proj = base
            for c, dvec in zip(coeffs, dirs):
                proj = vec_add(proj, vec_scale(c, dvec))
        else:
            proj = base
        sub = from_points(verts)
        if not sub.contains(proj):
            continue
        diff = vec_sub(x, proj)
        d2 = dot(diff, diff)
        if best is None or d2 < best:
            best = d2
    assert best is not None
    return best


def _independent_subset(vectors):
    out = []
    for v in vectors:
        if rank(out + [v]) > len(out):
            out.append(v)
    return out


def hausdorff_distance(p: Polytope, q: Polytope) -> float:
    """Float Hausdorff distance between polytopes in one ambient space.

    Squared distances are computed exactly (rational); the only rounding is
    the final sqrt, so the relative error is far below 1e-12.  Diagnostic
    only; never used for exact theorem checks.
    """
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch("Hausdorff distance needs one ambient space")
    worst = ZERO
    for v in p.vertices:
        worst = max(worst, _sq_dist_point_to_polytope(v, q))
    for w in q.vertices:
        worst = max(worst, _sq_dist_point_to_polytope(w, p))
    return math.sqrt(worst)


# -- combinatorial and affine equivalence ----------------------------------------------


def _vertex_invariants(p: Polytope):
    lattice = face_lattice(p)
    edges = lattice.faces_of_dim(1)
    degree = [0] * len(p.vertices)
    for e in edges:
        for v in e:
            degree[v] += 1
    fsets = facet_vertex_indices(p)
    incident_sizes = [tuple(sorted(len(fs) for fs in fsets if v in fs)) for v in range(len(p.vertices))]
    return [(degree[v], incident_sizes[v]) for v in range(len(p.vertices))]


def combinatorially_equivalent(p: Polytope, q: Polytope, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Face-lattice isomorphism via vertex-facet incidence matching."""
    if p.intrinsic_dim != q.intrinsic_dim:
        return False
    if len(p.vertices) != len(q.vertices) or len(p.inequalities) != len(q.inequalities):
        return False
    fp = sorted(face_lattice(p).f_vector)
    fq = sorted(face_lattice(q).f_vector)
    if fp != fq:
        return False
    inv_p = _vertex_invariants(p)
    inv_q = _vertex_invariants(q)
    if sorted(inv_p) != sorted(inv_q):
        return False
    facets_p = [frozenset(fs) for fs in facet_vertex_indices(p)]
    facets_q = {frozenset(fs) for fs in facet_vertex_indices(q)}
    n = len(p.vertices)
    candidates = [
        [j for j in range(n) if inv_q[j] == inv_p[i]] for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    assignment: dict[int, int] = {}
    used: set[int] = set()
    steps = 0

    def consistent() -> bool:
        for fs in facets_p:
            if all(v in assignment for v in fs):
                if frozenset(assignment[v] for v in fs) not in facets_q:
                    return False
        return True

    def backtrack(pos: int) -> bool:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise SearchBudgetExceeded("combinatorial matching budget exhausted")
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[i]:
            if j in used:
                continue
            assignment[i] = j
            used.add(j)
            if consistent() and backtrack(pos + 1):
                return True
            del assignment[i]
            used.discard(j)
        return False

    return backtrack(0)


def affinely_equivalent(
    p: Polytope, q: Polytope, budget: int = DEFAULT_SEARCH_BUDGET
) -> AffineMap | None:
    """An exact invertible affine map with T(vert p) = vert q, or None.

    The search fixes an affine basis at the lexicographically first vertex of
    p and its neighbors, and tries invariant-compatible images in q; affine
    maps send edges to edges, so neighbor images suffice.
    """
    if p.intrinsic_dim != q.intrinsic_dim:
        return None
    if len(p.vertices) != len(q.vertices):
        return None
    k = p.intrinsic_dim
    if k == 0:
        return AffineMap.from_point_images([p.vertices[0]], [q.vertices[0]])
    inv_p = _vertex_invariants(p)
    inv_q = _vertex_invariants(q)
    if sorted(inv_p) != sorted(inv_q):
        return None
    lat_p, lat_q = face_lattice(p), face_lattice(q)
    adj_p = _adjacency(lat_p, len(p.vertices))
    adj_q = _adjacency(lat_q, len(q.vertices))
    base = 0  # lex-min vertex of p
    nb = sorted(adj_p[base])
    anchor = [base]
    for v in nb:
        pts = [p.vertices[i] for i in anchor + [v]]
        if rank([vec_sub(x, pts[0]) for x in pts[1:]]) > len(anchor) - 1:
            anchor.append(v)
        if len(anchor) == k + 1:
            break
    if len(anchor) < k + 1:
        # fall back to any affinely independent vertex set
        anchor = _affine_basis_indices(p)
    pv = set(p.vertices)
    steps = 0
    for b_img in range(len(q.vertices)):
        if inv_q[b_img] != inv_p[anchor[0]]:
            continue
        pool = sorted(adj_q[b_img]) if len(anchor) > 1 else []
        for images in itertools.permutations(pool, len(anchor) - 1):
            steps += 1
            if steps > budget:
                raise SearchBudgetExceeded("affine matching budget exhausted")
            idx_images = [b_img] + list(images)
            if any(inv_q[j] != inv_p[i] for i, j in zip(anchor, idx_images)):
                continue
            src = [p.vertices[i] for i in anchor]
            dst = [q.vertices[j] for j in idx_images]
            if rank([vec_sub(x, dst[0]) for x in dst[1:]]) < k:
                continue
            try:
                t = _map_between(src, dst, p, q)
            except ValueError:
                continue
            if t is None:
                continue
            mapped = {t(v) for v in p.vertices}
            if mapped == set(q.vertices):
                return t
    return None


def _adjacency(lattice, nv):
    adj = [set() for _ in range(nv)]
    for e in lattice.faces_of_dim(1):
        a, b = e
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _affine_basis_indices(p: Polytope) -> list[int]:
    out = [0]
    base = p.vertices[0]
    dirs: list[Vec] = []
    for i in range(1, len(p.vertices)):
        d = vec_sub(p.vertices[i], base)
        if rank(dirs + [d]) > len(dirs):
            dirs.append(d)
            out.append(i)
        if len(out) == p.intrinsic_dim + 1:
            break
    return out


def _map_between(src, dst, p: Polytope, q: Polytope) -> AffineMap | None:
    """Affine map defined on Aff(p) by src -> dst, extended rigidly off the hull.

    Built as: project to p's chart, map chart images, lift through q's hull.
    Returns a map between the ambient spaces carrying Aff(p) onto Aff(q).
    """
    proj_p = p.chart_projection()
    lift_q = q.chart_lift()
    src_u = [proj_p(s) for s in src]
    dst_u = [q_chart_coords(q, d) for d in dst]
    inner = AffineMap.from_point_images(src_u, dst_u)
    return lift_q.compose(inner.compose(proj_p))


def q_chart_coords(q: Polytope, x) -> Vec:
    x = vec(x)
    return tuple(x[c] for c in q.chart)
