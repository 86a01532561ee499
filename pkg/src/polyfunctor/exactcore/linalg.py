"""Small exact linear algebra kernel over `fractions.Fraction`.

Vectors are tuples of Fractions, matrices are tuples of row tuples.  Nothing
here is optimized beyond what desk-scale polytope computations need; every
result is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(zip(*m, strict=True))


def identity_mat(n: int) -> Mat:
    return tuple(unit_vec(n, i) for i in range(n))


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def null_space(rows, ncols: int | None = None) -> list[Vec]:
    """Canonical basis of {x : rows @ x = 0}, one vector per free column."""
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty system")
        ncols = len(rows[0])
    if not rows:
        return [unit_vec(ncols, i) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def solve(a_rows, b: Vec) -> Vec | None:
    """One exact solution of A x = b, or None if inconsistent."""
    aug = [list(r) + [bb] for r, bb in zip(a_rows, b, strict=True)]
    if not aug:
        raise ValueError("empty system")
    ncols = len(aug[0]) - 1
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][-1]
    return tuple(x)


def invert(m: Mat) -> Mat | None:
    n = len(m)
    aug = [list(row) + list(unit_vec(n, i)) for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in red)


def det(m: Mat) -> Fraction:
    n = len(m)
    a = [list(row) for row in m]
    result = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            result = -result
        result *= a[c][c]
        inv = ONE / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def primitive(v: Vec) -> Vec:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    denom_lcm = 1
    for x in v:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in v]
    g = 0
    for n in ints:
        g = gcd(g, abs(n))
    if g == 0:
        return tuple(ZERO for _ in v)
    return tuple(Fraction(n, g) for n in ints)


def lex_pivot_columns(spanning_rows, ncols: int) -> list[int]:
    """Lexicographically smallest column subset on which the row space projects isomorphically.

    Greedy matroid rule: scan columns left to right, keep a column iff it
    increases the rank of the kept set.
    """
    chosen: list[int] = []
    current = 0
    target = rank(spanning_rows)
    for c in range(ncols):
        cand = chosen + [c]
        sub = [[row[j] for j in cand] for row in spanning_rows]
        r = rank(sub)
        if r > current:
            chosen.append(c)
            current = r
            if current == target:
                break
    return chosen
