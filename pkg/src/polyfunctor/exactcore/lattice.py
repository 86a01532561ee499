"""Face lattice enumeration from vertex/facet incidences.

Faces are closed sets of the Galois connection between vertices and facets:
the face generated by a vertex set consists of all vertices lying on every
facet that contains the set.  A breadth-first closure sweep enumerates the
whole graded lattice, from the empty face to the polytope itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import rank, vec_sub
from .polytope import Polytope, facet_vertex_indices


@dataclass(frozen=True)
class FaceLattice:
    """faces[i] = (dimension, vertex index tuple); covers = (lower, upper) index pairs.

    Faces are sorted by (dimension, vertex tuple); index 0 is the empty face
    (dimension -1) and the last face is the polytope itself.
    """

    faces: tuple[tuple[int, tuple[int, ...]], ...]
    covers: tuple[tuple[int, int], ...]
    polytope: Polytope

    def faces_of_dim(self, d: int) -> list[tuple[int, ...]]:
        return [vs for dim, vs in self.faces if dim == d]

    @property
    def f_vector(self) -> tuple[int, ...]:
        """Counts of proper nonempty faces by dimension (vertices first)."""
        top = self.polytope.intrinsic_dim
        counts = [0] * top
        for dim, _ in self.faces:
            if 0 <= dim < top:
                counts[dim] += 1
        return tuple(counts)

    def facet_vertex_sets(self) -> list[tuple[int, ...]]:
        return self.faces_of_dim(self.polytope.intrinsic_dim - 1)

    def proper_faces(self) -> list[tuple[int, tuple[int, ...]]]:
        top = self.polytope.intrinsic_dim
        return [(d, vs) for d, vs in self.faces if 0 <= d < top]


def _affine_dim(vertices) -> int:
    if len(vertices) <= 1:
        return 0
    base = vertices[0]
    return rank([vec_sub(v, base) for v in vertices[1:]])


def face_lattice(p: Polytope) -> FaceLattice:
    """Complete graded face lattice of p (cached on the polytope)."""
    if p._lattice is not None:
        return p._lattice
    nv = len(p.vertices)
    facet_sets = facet_vertex_indices(p)
    nf = len(facet_sets)
    vert_to_facets = [0] * nv
    for fi, fs in enumerate(facet_sets):
        for vi in fs:
            vert_to_facets[vi] |= 1 << fi
    all_vertices = (1 << nv) - 1 if nv else 0
    full_facets = (1 << nf) - 1 if nf else 0

    def closure(vmask: int) -> int:
        common = full_facets
        m = vmask
        while m:
            low = m & -m
            common &= vert_to_facets[low.bit_length() - 1]
            m ^= low
        if common == 0:
            return all_vertices
        out = 0
        for vi in range(nv):
            if vert_to_facets[vi] & common == common:
                out |= 1 << vi
        return out

    seen: set[int] = set()
    queue: list[int] = []
    for vi in range(nv):
        c = closure(1 << vi)
        if c not in seen:
            seen.add(c)
            queue.append(c)
    while queue:
        fmask = queue.pop()
        for vi in range(nv):
            if not (fmask >> vi) & 1:
                c = closure(fmask | (1 << vi))
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
    seen.add(all_vertices)

    def mask_to_tuple(mask: int) -> tuple[int, ...]:
        return tuple(i for i in range(nv) if (mask >> i) & 1)

    entries = []
    for mask in seen:
        vs = mask_to_tuple(mask)
        entries.append((_affine_dim([p.vertices[i] for i in vs]) if vs else -1, vs))
    entries.append((-1, ()))  # empty face
    entries = sorted(set(entries))
    faces = tuple(entries)
    by_dim: dict[int, list[int]] = {}
    for idx, (d, _) in enumerate(faces):
        by_dim.setdefault(d, []).append(idx)
    covers = []
    for d in sorted(by_dim):
        uppers = by_dim.get(d + 1, [])
        if d + 1 == p.intrinsic_dim and not uppers:
            continue
        for i in by_dim[d]:
            si = set(faces[i][1])
            for j in uppers:
                if si <= set(faces[j][1]):
                    covers.append((i, j))
    # the empty face is covered by every vertex; already handled since dim -1 -> 0
    lattice = FaceLattice(faces, tuple(covers), p)
    p._lattice = lattice
    return lattice


def f_vector(p: Polytope) -> tuple[int, ...]:
    return face_lattice(p).f_vector


def euler_characteristic_ok(p: Polytope) -> bool:
    """Alternating f-vector sum equals 1 - (-1)^dim."""
    fv = f_vector(p)
    alt = sum((-1) ** i * c for i, c in enumerate(fv))
    return alt == 1 - (-1) ** p.intrinsic_dim
