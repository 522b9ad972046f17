"""Exact integer / rational linear algebra used throughout the package.

Everything here is fraction-free or Fraction-based; no floating point.
"""

from fractions import Fraction


def bareiss_determinant(rows):
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
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
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def integer_rank(rows):
    """Rank of an integer matrix (fraction-free Gaussian elimination)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(row, len(m)):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        pivot = m[row][col]
        for i in range(row + 1, len(m)):
            if m[i][col] != 0:
                factor = m[i][col]
                m[i] = [m[i][j] * pivot - factor * m[row][j] for j in range(ncols)]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def affine_rank(points):
    """Dimension of the affine span of integer points."""
    if not points:
        return -1
    base = points[0]
    diffs = [[p[j] - base[j] for j in range(len(base))] for p in points[1:]]
    return integer_rank(diffs)


def smith_normal_form(rows):
    """Diagonal entries of the Smith normal form of an integer matrix.

    Returns the list of nonzero invariant factors d_1 | d_2 | ... (positive).
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    diag = []
    top = 0
    while top < nrows and top < ncols:
        # find a nonzero pivot
        pr = pc = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] != 0:
                    pr, pc = i, j
                    break
            if pr is not None:
                break
        if pr is None:
            break
        m[top], m[pr] = m[pr], m[top]
        for row in m:
            row[top], row[pc] = row[pc], row[top]
        while True:
            # clear the pivot column
            for i in range(top + 1, nrows):
                while m[i][top] != 0:
                    q = m[i][top] // m[top][top]
                    for j in range(top, ncols):
                        m[i][j] -= q * m[top][j]
                    if m[i][top] != 0:
                        m[top], m[i] = m[i], m[top]
            # clear the pivot row
            for j in range(top + 1, ncols):
                while m[top][j] != 0:
                    q = m[top][j] // m[top][top]
                    for i in range(top, nrows):
                        m[i][j] -= q * m[i][top]
                    if m[top][j] != 0:
                        for i in range(top, nrows):
                            m[i][top], m[i][j] = m[i][j], m[i][top]
            if all(m[i][top] == 0 for i in range(top + 1, nrows)) and \
               all(m[top][j] == 0 for j in range(top + 1, ncols)):
                break
        diag.append(abs(m[top][top]))
        top += 1
    # enforce divisibility d_i | d_{i+1}
    import math
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = math.gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return diag


def gf2_in_column_span(matrix_rows, target):
    """Whether target (over GF(2)) lies in the column span of the matrix.

    matrix_rows: list of rows of 0/1 ints; target: list of 0/1 ints.
    """
    ncols = len(matrix_rows[0]) if matrix_rows else 0
    # solve M x = target by row reduction on the augmented system
    aug = []
    for i, row in enumerate(matrix_rows):
        bits = 0
        for j in range(ncols):
            if row[j] & 1:
                bits |= 1 << j
        aug.append([bits, target[i] & 1])
    pivot_cols = []
    row = 0
    for col in range(ncols):
        pr = None
        for i in range(row, len(aug)):
            if (aug[i][0] >> col) & 1:
                pr = i
                break
        if pr is None:
            continue
        aug[row], aug[pr] = aug[pr], aug[row]
        for i in range(len(aug)):
            if i != row and ((aug[i][0] >> col) & 1):
                aug[i][0] ^= aug[row][0]
                aug[i][1] ^= aug[row][1]
        pivot_cols.append(col)
        row += 1
        if row == len(aug):
            break
    # consistent iff no row 0 = 1
    return not any(bits == 0 and rhs == 1 for bits, rhs in aug)


def solve_affine_exact(points, values):
    """Unique affine function L with L(p_i) = v_i on affinely independent points.

    Returns (coeffs, constant) as Fractions, or None if the system is singular.
    Works in any ambient dimension; the points must affinely span it.
    """
    n = len(points[0])
    if len(points) != n + 1:
        raise ValueError("need exactly dim+1 interpolation points")
    # unknowns: a_1..a_n, c with sum(a_j p_j) + c = v
    rows = [[Fraction(points[i][j]) for j in range(n)] + [Fraction(1), Fraction(values[i])]
            for i in range(n + 1)]
    m = rows
    size = n + 1
    for col in range(size):
        pr = None
        for i in range(col, size):
            if m[i][col] != 0:
                pr = i
                break
        if pr is None:
            return None
        m[col], m[pr] = m[pr], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for i in range(size):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [m[i][j] - f * m[col][j] for j in range(size + 1)]
    sol = [m[i][size] for i in range(size)]
    return sol[:n], sol[n]
