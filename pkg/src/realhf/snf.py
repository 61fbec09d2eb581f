"""Exact integer matrix normal forms.

Everything here works on plain lists of Python ints, so there is no precision
ceiling; the matrices coming from cell complexes of the diagrams are small
(a few hundred rows at most).
"""

from __future__ import annotations

from dataclasses import dataclass


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a, b):
    rows, mid, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(mid):
            c = ai[k]
            if c:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += c * bk[j]
    return out


def matvec(a, v):
    return [sum(c * x for c, x in zip(row, v)) for row in a]


@dataclass
class SNFResult:
    """U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}."""

    diagonal: list
    left: list
    right: list
    left_inv: list
    right_inv: list
    rows: int
    cols: int

    @property
    def rank(self):
        return len([d for d in self.diagonal if d != 0])

    @property
    def invariant_factors(self):
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(matrix):
    """Diagonalise an integer matrix by unimodular row/column operations.

    Returns an SNFResult; ``matrix`` is not modified.  The diagonal entries
    are nonnegative and each divides the next.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    m = [list(r) for r in matrix]
    u = _identity(rows)
    uinv = _identity(rows)
    v = _identity(cols)
    vinv = _identity(cols)

    def row_add(i, j, c):
        # row_i += c * row_j ; keep uinv consistent (column op with -c)
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        for r in range(rows):
            uinv[r][j] -= c * uinv[r][i]

    def col_add(i, j, c):
        # col_i += c * col_j
        for r in range(rows):
            m[r][i] += c * m[r][j]
        for r in range(cols):
            v[r][i] += c * v[r][j]
        vinv[j] = [a - c * b for a, b in zip(vinv[j], vinv[i])]

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]
        for r in range(rows):
            uinv[r][i], uinv[r][j] = uinv[r][j], uinv[r][i]

    def col_swap(i, j):
        for r in range(rows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_negate(i):
        m[i] = [-a for a in m[i]]
        u[i] = [-a for a in u[i]]
        for r in range(rows):
            uinv[r][i] = -uinv[r][i]

    n = min(rows, cols)
    t = 0
    while t < n:
        # smallest nonzero entry in the remaining block as pivot
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                a = m[i][j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if m[t][t] < 0:
            row_negate(t)

        dirty = False
        for i in range(t + 1, rows):
            if m[i][t]:
                q = m[i][t] // m[t][t]
                row_add(i, t, -q)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j]:
                q = m[t][j] // m[t][t]
                col_add(j, t, -q)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue  # remainders became new smaller pivots

        # pivot must divide every entry of the remaining block
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1

    diag = [m[i][i] for i in range(n)]
    return SNFResult(diag, u, v, uinv, vinv, rows, cols)


def kernel_basis(matrix):
    """Basis of the integer kernel {x : M x = 0}, as a list of column vectors."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    res = smith_normal_form(matrix)
    rank = res.rank
    return [[res.right[i][j] for i in range(cols)] for j in range(rank, cols)]


def solve(matrix, rhs):
    """One integer solution of M x = rhs, or None when there is none."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    res = smith_normal_form(matrix)
    c = matvec(res.left, rhs)
    y = [0] * cols
    for i in range(rows):
        d = res.diagonal[i] if i < len(res.diagonal) else 0
        if i < cols and d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i] != 0:
            return None
    return matvec(res.right, y)


class CokernelMap:
    """Canonical coordinates in Z^n / (column span of R).

    Vectors map to a tuple with one entry per invariant factor: entries with
    factor d > 0 are reduced mod d, entries with factor 0 (the free part) are
    reported exactly.  Two vectors are congruent mod im(R) iff their tuples
    are equal.
    """

    def __init__(self, relations, ambient_rank=None):
        if ambient_rank is None:
            ambient_rank = len(relations)
        self.ambient_rank = ambient_rank
        if not relations or not relations[0]:
            relations = [[0] for _ in range(ambient_rank)]
        self._snf = smith_normal_form(relations)
        diag = list(self._snf.diagonal) + [0] * (ambient_rank - len(self._snf.diagonal))
        self.factors = diag

    def reduce(self, vector):
        y = matvec(self._snf.left, vector)
        out = []
        for val, d in zip(y, self.factors):
            out.append(val % d if d else val)
        return tuple(out)

    @property
    def torsion_factors(self):
        return [d for d in self.factors if d not in (0, 1)]

    @property
    def free_rank(self):
        return len([d for d in self.factors if d == 0])

    def group_order(self):
        """Order of the quotient group; None when infinite."""
        if self.free_rank:
            return None
        order = 1
        for d in self.factors:
            if d:
                order *= d
        return order
