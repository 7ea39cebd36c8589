"""Exact integer Smith normal form with retained transforms.

All matrices are lists of lists of Python ints, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == diag(diagonal)`` with ``U``, ``V`` unimodular.

    ``V_inv`` is kept so row spaces can be read off without a second solve.
    The diagonal is non-negative and each entry divides the next.
    """

    diagonal: tuple[int, ...]
    U: list[list[int]]
    V: list[list[int]]
    V_inv: list[list[int]]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(matrix) -> SmithForm:
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        if c:
            ra, rs = a[dst], a[src]
            for k in range(n):
                ra[k] += c * rs[k]
            ua, us = U[dst], U[src]
            for k in range(m):
                ua[k] += c * us[k]

    def add_col(src, dst, c):
        # col[dst] += c * col[src]; V_inv gets the inverse row operation
        if c:
            for row in a:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]
            vs, vd = Vi[src], Vi[dst]
            for k in range(n):
                vs[k] -= c * vd[k]

    t = 0
    while t < min(m, n):
        # pivot of minimal absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover into the pivot slot and retry
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            # divisibility condition on the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SmithForm(diag, U, V, Vi)


def determinant(matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def integer_kernel(matrix, ncols: int | None = None) -> list[list[int]]:
    """Basis (as rows) of ``{x in Z^n : matrix @ x == 0}``."""
    if not matrix:
        n = ncols or 0
        return identity(n)
    n = len(matrix[0])
    sf = smith_normal_form(matrix)
    r = sf.rank
    V = sf.V
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def row_space_basis(rows) -> list[list[int]]:
    """Z-basis (rows) of the row module spanned by integer ``rows``."""
    if not rows:
        return []
    sf = smith_normal_form(rows)
    return [[d * x for x in sf.V_inv[i]] for i, d in enumerate(sf.diagonal) if d]


def rational_row_space_basis(rows) -> list[list[Fraction]]:
    """Z-basis of the module spanned by rational rows."""
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    scaled = [[int(Fraction(x) * den) for x in row] for row in rows]
    return [[Fraction(x, den) for x in row] for row in row_space_basis(scaled)]


def solve_integer(rows, target) -> list[int] | None:
    """Integer ``c`` with ``sum_i c[i] * rows[i] == target`` or ``None``.

    ``rows`` and ``target`` may be rational; rows must be linearly independent
    for the answer to be unique.
    """
    den = 1
    for row in list(rows) + [target]:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    A = [[int(Fraction(x) * den) for x in row] for row in rows]
    b = [int(Fraction(x) * den) for x in target]
    # c @ A = b  <=>  A^T c = b; U A^T V = D
    At = transpose(A)
    sf = smith_normal_form(At)
    Ub = [sum(u * x for u, x in zip(row, b)) for row in sf.U]
    y = []
    for i, d in enumerate(sf.diagonal):
        if d == 0:
            if Ub[i]:
                return None
            y.append(0)
        else:
            if Ub[i] % d:
                return None
            y.append(Ub[i] // d)
    for i in range(len(sf.diagonal), len(Ub)):
        if Ub[i]:
            return None
    y += [0] * (len(sf.V) - len(y))
    return [sum(sf.V[i][j] * y[j] for j in range(len(y))) for i in range(len(sf.V))]


def solve_rational(rows, target) -> list[Fraction] | None:
    """Rational ``c`` with ``c @ rows == target`` by Gaussian elimination."""
    k = len(rows)
    n = len(target)
    # augmented system rows^T c = target, n equations in k unknowns
    aug = [[Fraction(rows[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, n)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][k]
    return sol


def inertia(matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    pos = neg = 0
    k = 0
    size = n
    while k < size:
        if a[k][k] == 0:
            j = next((i for i in range(k + 1, size) if a[i][i] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((i for i in range(k + 1, size) if a[k][i] != 0), None)
                if j is None:
                    # zero row: drop it
                    a[k], a[size - 1] = a[size - 1], a[k]
                    for row in a:
                        row[k], row[size - 1] = row[size - 1], row[k]
                    size -= 1
                    continue
                # e_k <- e_k + e_j makes the diagonal 2 a_kj + a_jj
                c = 1 if 2 * a[k][j] + a[j][j] != 0 else -1
                for i in range(n):
                    a[k][i] += c * a[j][i]
                for i in range(n):
                    a[i][k] += c * a[i][j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        col = [a[i][k] for i in range(size)]
        for i in range(k + 1, size):
            if col[i] != 0:
                f = col[i] / p
                for j in range(k + 1, size):
                    a[i][j] -= f * col[j]
        for i in range(k + 1, size):
            a[i][k] = a[k][i] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg
