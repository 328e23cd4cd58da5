"""Exact rational and integer linear algebra.

Scalars are :class:`fractions.Fraction` (always normalized, positive
denominator) or plain ``int``.  Vectors are tuples, matrices are tuples of
row tuples.  Nothing in here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction
RatVector = tuple  # tuple[Fraction, ...]
RatMatrix = tuple  # tuple[RatVector, ...]
IntVector = tuple  # tuple[int, ...]


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} exactly as a rational")


def rat_vector(values: Iterable) -> tuple:
    return tuple(as_rat(v) for v in values)


def rat_matrix(rows: Iterable[Iterable]) -> tuple:
    return tuple(rat_vector(r) for r in rows)


def format_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v) if a and b), 0)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    cols = list(zip(*B)) if B else []
    return tuple(tuple(dot(row, col) for col in cols) for row in A)


def mat_vec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(dot(row, x) for row in A)


def transpose(A: Sequence[Sequence]) -> tuple:
    return tuple(zip(*A))


def identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def gcd_vector(v: Sequence[int]) -> int:
    """Gcd of the absolute values of the entries; 0 for the zero vector."""
    if len(v) == 0:
        raise ValueError("gcd of an empty vector is undefined")
    return math.gcd(*(int(x) for x in v))


def lcm_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for x in values:
        out = math.lcm(out, Fraction(x).denominator)
    return out


def primitive(v: Sequence) -> tuple:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    L = lcm_denominators(v)
    ints = [int(Fraction(x) * L) for x in v]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def sign_normalized(v: Sequence[int]) -> tuple:
    """Flip ``v`` so that its first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def rref(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        if p != 1:
            M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of {x : A x = 0}; one vector per free column, free entry 1."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    R, pivots = rref(A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``point + span(basis)`` of a linear system."""

    point: tuple
    basis: tuple

    def contains(self, x: Sequence) -> bool:
        diff = [Fraction(a) - b for a, b in zip(x, self.point)]
        if not self.basis:
            return not any(diff)
        return rank(list(self.basis) + [diff]) == len(self.basis)


def solve_affine(A: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> AffineSolution | None:
    """Solve ``A x = b`` exactly.

    Returns None when the system is infeasible.  ``ncols`` is needed only when
    ``A`` has no rows.
    """
    if len(A) != len(b):
        raise ValueError(f"shape mismatch: {len(A)} rows but {len(b)} right-hand sides")
    if ncols is None:
        if not A:
            raise ValueError("ncols is required for a system without rows")
        ncols = len(A[0])
    if any(len(row) != ncols for row in A):
        raise ValueError("ragged coefficient matrix")
    if not A:
        return AffineSolution(tuple(Fraction(0) for _ in range(ncols)),
                              tuple(nullspace([], ncols)))
    R, pivots = rref([list(row) + [bi] for row, bi in zip(A, b)])
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    basis = nullspace([row[:ncols] for row in R], ncols)
    return AffineSolution(tuple(x), tuple(basis))


def det(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    A = [[Fraction(x) for x in row] for row in M]
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            result = -result
        p = A[c][c]
        result *= p
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return result


def inverse(M: Sequence[Sequence]) -> tuple:
    """Exact inverse over Q; integer entries are returned as ints when possible."""
    n = len(M)
    R, pivots = rref([list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)])
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    inv = [row[n:] for row in R]
    return tuple(tuple(int(x) if x.denominator == 1 else x for x in row) for row in inv)


def is_unimodular(U: Sequence[Sequence]) -> bool:
    n = len(U)
    if any(len(row) != n for row in U):
        return False
    if any(Fraction(x).denominator != 1 for row in U for x in row):
        return False
    return abs(det(U)) == 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hnf(M: Sequence[Sequence[int]]) -> tuple[tuple, tuple]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U M``, ``|det U| = 1``, positive pivots,
    entries above each pivot reduced into ``[0, pivot)`` and zero rows last.
    """
    if not M or not M[0]:
        raise ValueError("hnf needs a nonempty matrix")
    m, n = len(M), len(M[0])
    H = [[int(x) for x in row] for row in M]
    U = [list(row) for row in identity(m)]

    def combine(i, j, a, b, c, d):
        # rows (i, j) <- [[a, b], [c, d]] @ rows (i, j); caller guarantees ad - bc = ±1
        for mat in (H, U):
            ri, rj = mat[i], mat[j]
            mat[i] = [a * x + b * y for x, y in zip(ri, rj)]
            mat[j] = [c * x + d * y for x, y in zip(ri, rj)]

    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, s, t = xgcd(a, b)
            combine(r, i, s, t, -b // g, a // g)
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def is_hnf(H: Sequence[Sequence[int]]) -> bool:
    """Shape predicate for the row-style convention used by :func:`hnf`."""
    last_pivot = -1
    seen_zero = False
    for i, row in enumerate(H):
        nz = next((c for c, x in enumerate(row) if x), None)
        if nz is None:
            seen_zero = True
            continue
        if seen_zero or nz <= last_pivot or row[nz] <= 0:
            return False
        for k in range(i):
            if not 0 <= H[k][nz] < row[nz]:
                return False
        last_pivot = nz
    return True


def unimodular_completion(v: Sequence[int]) -> tuple:
    """Square integer matrix with first row ``v`` and determinant ±1.

    Works by driving ``v`` to ``e_1`` with extended-gcd column operations
    while accumulating the inverse of the column transform.
    """
    v = tuple(int(x) for x in v)
    if not v:
        raise ValueError("empty vector")
    g = gcd_vector(v)
    if g != 1:
        raise ValueError(
            f"gcd of {v} is {g}; divide the vector by its gcd before completing it")
    n = len(v)
    w = list(v)
    # invariant: v == w @ Cinv
    Cinv = [list(row) for row in identity(n)]
    for j in range(1, n):
        if w[j] == 0:
            continue
        a, b = w[0], w[j]
        d, s, t = xgcd(a, b)
        # columns (0, j) <- (s*c0 + t*cj, -b/d*c0 + a/d*cj) has det 1,
        # so the inverse acts on rows (0, j) of Cinv by [[a/d, b/d], [-t, s]]
        w[0], w[j] = d, 0
        r0, rj = Cinv[0], Cinv[j]
        Cinv[0] = [(a // d) * x + (b // d) * y for x, y in zip(r0, rj)]
        Cinv[j] = [-t * x + s * y for x, y in zip(r0, rj)]
    if w[0] == -1:
        Cinv[0] = [-x for x in Cinv[0]]
    U = tuple(map(tuple, Cinv))
    assert U[0] == v
    return U


def lll_reduce(B: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> tuple:
    """LLL-reduce the rows of an integer basis with exact rational Gram-Schmidt."""
    basis = [[int(x) for x in row] for row in B]
    n = len(basis)
    if n == 0:
        return ()
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("reduction parameter must lie in (1/4, 1]")

    def gram_schmidt():
        bstar, norms = [], []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in basis[i]]
            for j in range(i):
                mu[i][j] = dot(basis[i], bstar[j]) / norms[j]
                v = [a - mu[i][j] * b for a, b in zip(v, bstar[j])]
            nv = dot(v, v)
            if nv == 0:
                raise ValueError("basis rows are linearly dependent")
            bstar.append(v)
            norms.append(nv)
        return bstar, norms, mu

    bstar, norms, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            basis[k], basis[k - 1] = basis[k - 1], basis[k]
            bstar, norms, mu = gram_schmidt()
            k = max(k - 1, 1)
    return tuple(map(tuple, basis))
