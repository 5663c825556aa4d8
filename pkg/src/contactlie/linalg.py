"""Exact linear algebra helpers over int and Fraction.

Plain list-of-lists matrices; nothing here knows about the algebra.
Row convention throughout the package: vectors are rows, maps act by
``vec_mat(v, m)`` with ``m[i][j]`` sending input coordinate i to output
coordinate j.
"""

from fractions import Fraction


def vec_mat(vec, matrix):
    n_out = len(matrix[0]) if matrix else 0
    out = [Fraction(0)] * n_out
    for x, row in zip(vec, matrix):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return tuple(out)


def mat_mul(a, b):
    return [list(vec_mat(row, b)) for row in a]


def mat_vec(matrix, col):
    # matrix times column vector
    return [sum((x * y for x, y in zip(row, col)), Fraction(0)) for row in matrix]


def identity_matrix(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def frac_invert(matrix):
    """Inverse of a square Fraction matrix; raises ValueError if singular."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def frac_det(matrix):
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def frac_rank(rows):
    basis = []
    for row in rows:
        row = [Fraction(x) for x in row]
        for piv, brow in basis:
            if row[piv]:
                f = row[piv] / brow[piv]
                row = [x - f * y for x, y in zip(row, brow)]
        piv = next((i for i, x in enumerate(row) if x), None)
        if piv is not None:
            basis.append((piv, row))
    return len(basis)


def hermite_form(rows):
    """Row echelon form of an integer matrix with transform bookkeeping.

    Returns (echelon, pivots, transform, kernel) where echelon rows have
    strictly increasing positive pivots with reduced entries above them,
    ``transform[i] . rows == echelon[i]``, and the kernel rows span the
    integer relations among the input rows.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            while a[i][c]:
                q = a[r][c] // a[i][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[i])]
                u[r] = [x - q * y for x, y in zip(u[r], u[i])]
                a[r], a[i] = a[i], a[r]
                u[r], u[i] = u[i], u[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        pivots.append(c)
        r += 1
    # reduce entries above each pivot
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        for j in range(i):
            q = a[j][c] // a[i][c]
            if q:
                a[j] = [x - q * y for x, y in zip(a[j], a[i])]
                u[j] = [x - q * y for x, y in zip(u[j], u[i])]
    return a[:r], pivots, u[:r], u[r:]


def echelon_int_coords(echelon, pivots, target):
    """Integer coordinates of target over echelon rows, or None."""
    w = list(map(int, target))
    out = [0] * len(echelon)
    for i, c in enumerate(pivots):
        if w[c] % echelon[i][c]:
            return None
        q = w[c] // echelon[i][c]
        out[i] = q
        if q:
            w = [x - q * y for x, y in zip(w, echelon[i])]
    return out if not any(w) else None


def echelon_rational_coords(echelon, pivots, target):
    """Rational coordinates of target over echelon rows, or None."""
    w = [Fraction(x) for x in target]
    out = [Fraction(0)] * len(echelon)
    for i, c in enumerate(pivots):
        q = w[c] / echelon[i][c]
        out[i] = q
        if q:
            w = [x - q * y for x, y in zip(w, echelon[i])]
    return out if not any(w) else None


def int_nth_root(value, k):
    """Exact nonnegative integer k-th root of value, or None."""
    if value < 0:
        return None
    if value in (0, 1):
        return value
    lo, hi = 1, 2
    while hi ** k <= value:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** k <= value:
            lo = mid
        else:
            hi = mid
    return lo if lo ** k == value else None


def frac_nth_root(value, k):
    """Exact rational k-th root of a Fraction, or None.

    Takes the positive root when k is even; the sign is forced when k
    is odd.
    """
    value = Fraction(value)
    if k <= 0:
        raise ValueError("root order must be positive")
    if value == 0:
        return Fraction(0)
    neg = value < 0
    if neg and k % 2 == 0:
        return None
    num = int_nth_root(abs(value.numerator), k)
    den = int_nth_root(value.denominator, k)
    if num is None or den is None:
        return None
    root = Fraction(num, den)
    return -root if neg else root
