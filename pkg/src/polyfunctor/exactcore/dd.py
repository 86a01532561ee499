"""Double description method: extreme rays of a pointed polyhedral cone.

The cone is given as {x : M x <= 0} with rank(M) equal to the ambient
dimension (pointedness is the caller's responsibility).  Rays come out as
primitive integer vectors.  Insertion follows the classic scheme: start from
a simplicial subcone spanned by d independent rows, add the remaining
halfspaces one at a time, and combine adjacent positive/negative ray pairs.
Adjacency uses the combinatorial test on tight-constraint sets.
"""

from __future__ import annotations

from .linalg import Mat, Vec, dot, invert, primitive, rank, vec_scale, vec_sub


def _tight_mask(ray: Vec, rows: list[Vec]) -> int:
    mask = 0
    for i, row in enumerate(rows):
        if dot(row, ray) == 0:
            mask |= 1 << i
    return mask


def cone_extreme_rays(m_rows) -> list[Vec]:
    """Extreme rays of the pointed cone {x : row . x <= 0 for each row}."""
    rows = [tuple(r) for r in m_rows]
    if not rows:
        raise ValueError("cone without constraints is not pointed")
    d = len(rows[0])
    # initial simplicial subcone from the lexicographically first independent rows
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen] + [rows[i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                break
    if len(chosen) < d:
        raise ValueError("cone is not pointed (rank-deficient constraint matrix)")
    m0 = tuple(rows[j] for j in chosen)
    m0_inv = invert(m0)
    assert m0_inv is not None
    rays = [primitive(tuple(-m0_inv[i][j] for i in range(d))) for j in range(d)]
    processed = [rows[j] for j in chosen]
    masks = [_tight_mask(r, processed) for r in rays]
    for idx, row in enumerate(rows):
        if idx in chosen:
            continue
        vals = [dot(row, r) for r in rays]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        pos = [i for i, v in enumerate(vals) if v > 0]
        processed.append(row)
        if not pos:
            rays = [rays[i] for i in neg + zero]
            masks = [
                masks[i] | ((1 << (len(processed) - 1)) if i in zero else 0)
                for i in neg + zero
            ]
            continue
        new_rays: list[Vec] = []
        for p in pos:
            for q in neg:
                common = masks[p] & masks[q]
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != q and (common & ~masks[k]) == 0:
                        adjacent = False
                        break
                if adjacent:
                    combo = vec_sub(vec_scale(vals[p], rays[q]), vec_scale(vals[q], rays[p]))
                    new_rays.append(primitive(combo))
        newbit = 1 << (len(processed) - 1)
        kept_rays = [rays[i] for i in neg] + [rays[i] for i in zero]
        kept_masks = [masks[i] for i in neg] + [masks[i] | newbit for i in zero]
        rays = kept_rays + new_rays
        masks = kept_masks + [_tight_mask(r, processed) for r in new_rays]
    # defensive dedupe (primitive form is canonical per direction)
    seen: dict[Vec, None] = {}
    for r in rays:
        seen.setdefault(r)
    return list(seen)
