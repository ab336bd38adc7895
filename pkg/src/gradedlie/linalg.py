"""Exact linear algebra over the rationals and the integers.

Everything here is dense and small-scale: rational row reduction for ranks,
null spaces and span membership, and an integer Smith normal form with the
unimodular transforms tracked and verified.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Vector = List[Fraction]
Matrix = List[List[Fraction]]


def _to_rows(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = _to_rows(rows)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Canonical basis of {x : A x = 0}, one vector per free column."""
    if not rows:
        return [[Fraction(i == j) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """One exact solution of A x = b, or None if the system is inconsistent."""
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x


def in_span(vectors: Sequence[Sequence], target: Sequence) -> Optional[Vector]:
    """Coefficients expressing target in the span of the given vectors,
    or None if it is outside."""
    tgt = [Fraction(x) for x in target]
    if not vectors:
        return [] if all(x == 0 for x in tgt) else None
    dim = len(tgt)
    rows = [[Fraction(v[d]) for v in vectors] for d in range(dim)]
    return solve(rows, tgt)


def independent_subset(vectors: Sequence[Sequence]) -> List[int]:
    """Indices of a greedy maximal linearly independent subset, in order."""
    basis: List[Tuple[int, Vector]] = []  # (leading column, echelon row), sorted
    kept: List[int] = []
    for idx, vec in enumerate(vectors):
        w = [Fraction(x) for x in vec]
        for lead, bvec in basis:
            if w[lead] != 0:
                f = w[lead] / bvec[lead]
                w = [a - f * b for a, b in zip(w, bvec)]
        lead = next((i for i, x in enumerate(w) if x != 0), None)
        if lead is not None:
            basis.append((lead, w))
            basis.sort(key=lambda t: t[0])
            kept.append(idx)
    return kept


# -- integer matrices ---------------------------------------------------------

def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass
class SmithForm:
    """D = U * M * V with U, V unimodular and D diagonal.

    ``diag`` holds the min(m, n) diagonal entries of D; the nonzero ones are
    nonnegative and form a divisibility chain.
    """

    diag: List[int]
    U: List[List[int]]
    V: List[List[int]]


def _mat_mul_int(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += f * bk[j]
    return out


def smith_normal_form(rows: Sequence[Sequence[int]]) -> SmithForm:
    """Exact Smith normal form of an integer matrix, with postconditions
    (reconstruction, unimodularity, divisibility chain) verified on every
    call."""
    M = [[int(x) for x in row] for row in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in M:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] != 0 and (piv is None or abs(M[i][j]) < abs(M[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(t, piv[0])
        if piv[1] != t:
            swap_cols(t, piv[1])

        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    q = M[i][t] // M[t][t]
                    add_row(i, t, -q)
                    if M[i][t] != 0:
                        swap_rows(t, i)  # strictly smaller remainder becomes pivot
                        dirty = True
            if dirty:
                continue
            # clear row t to the right
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    q = M[t][j] // M[t][t]
                    add_col(j, t, -q)
                    if M[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            fixed = True
            for i in range(t + 1, m):
                if any(M[i][j] % M[t][t] != 0 for j in range(t + 1, n)):
                    add_row(t, i, 1)
                    fixed = False
                    break
            if fixed:
                break
        if M[t][t] < 0:
            negate_row(t)
        t += 1

    diag = [M[i][i] for i in range(min(m, n))]
    _check_smith(rows, M, U, V, diag)
    return SmithForm(diag=diag, U=U, V=V)


def _check_smith(orig, D, U, V, diag) -> None:
    m = len(D)
    n = len(D[0]) if m else 0
    prod = _mat_mul_int(_mat_mul_int(U, [list(map(int, r)) for r in orig]), V)
    if prod != D:
        raise ArithmeticError("smith normal form postcondition failed: U*M*V != D")
    for i in range(m):
        for j in range(n):
            if i != j and D[i][j] != 0:
                raise ArithmeticError("smith normal form postcondition failed: D not diagonal")
    if det_int(U) not in (1, -1) or det_int(V) not in (1, -1):
        raise ArithmeticError("smith normal form postcondition failed: transform not unimodular")
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            raise ArithmeticError("smith normal form postcondition failed: zero before nonzero")
        if a != 0 and b % a != 0:
            raise ArithmeticError("smith normal form postcondition failed: divisibility chain broken")


def row_hnf(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row-style Hermite normal form (unimodular row operations only):
    echelon over Z, positive pivots, entries above each pivot reduced into
    [0, pivot).  Canonicalizes a basis of a row lattice."""
    M = [[int(x) for x in row] for row in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if M[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(M[i][c]))
            if i0 != r:
                M[r], M[i0] = M[i0], M[r]
            done = True
            for i in range(r + 1, m):
                if M[i][c] != 0:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and M[r][c] != 0:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
    return M
