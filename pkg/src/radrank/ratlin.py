"""Exact rational linear algebra.

Everything here runs on `fractions.Fraction`; no floats ever enter, since the
cone decisions downstream sit exactly on boundaries where rounding flips
verdicts.  The pieces are a phase-1 simplex for equality systems with lower
bounds, nonnegative-combination (cone) membership, strictly positive zero
combinations, rank, and a Smith normal form that returns its unimodular
transforms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionError

Vector = tuple[Fraction, ...]


def vec(values: Sequence) -> Vector:
    return tuple(Fraction(x) for x in values)


def vec_neg(v: Sequence[Fraction]) -> Vector:
    return tuple(-x for x in v)


def mat_vec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows)


# --- feasibility core -------------------------------------------------------

def _phase_one(columns: list[Vector], rhs: Vector) -> Optional[list[Fraction]]:
    """Solve `sum_j z_j * columns[j] = rhs, z >= 0` by phase-1 simplex.

    Returns a coefficient list z, or None if the system is infeasible.
    Bland's rule (smallest eligible index for both the entering column and
    the leaving basic variable) makes the pivot sequence finite.
    """
    m = len(rhs)
    n = len(columns)
    tableau: list[list[Fraction]] = []
    b: list[Fraction] = []
    for i in range(m):
        row = [columns[j][i] for j in range(n)]
        if rhs[i] < 0:
            row = [-a for a in row]
            b.append(-rhs[i])
        else:
            b.append(rhs[i])
        # artificial block: identity
        row.extend(Fraction(1) if i2 == i else Fraction(0) for i2 in range(m))
        tableau.append(row)
    basis = [n + i for i in range(m)]
    total = n + m
    # reduced costs against the all-artificial start basis
    cost = []
    for j in range(total):
        cj = Fraction(1) if j >= n else Fraction(0)
        cost.append(cj - sum(tableau[i][j] for i in range(m)))

    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        ratio = None
        leave = None
        for i in range(m):
            t = tableau[i][enter]
            if t > 0:
                r = b[i] / t
                if ratio is None or r < ratio or (r == ratio and basis[i] < basis[leave]):
                    ratio = r
                    leave = i
        if leave is None:
            raise RuntimeError("phase-1 objective unbounded; cannot happen")
        piv = tableau[leave][enter]
        tableau[leave] = [a / piv for a in tableau[leave]]
        b[leave] /= piv
        prow = tableau[leave]
        pb = b[leave]
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [a - f * p for a, p in zip(tableau[i], prow)]
                b[i] -= f * pb
        f = cost[enter]
        cost = [c - f * p for c, p in zip(cost, prow)]
        basis[leave] = enter

    if sum((b[i] for i in range(m) if basis[i] >= n), Fraction(0)) != 0:
        return None
    z = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            z[basis[i]] = b[i]
    return z


def lp_feasible(
    rows: Sequence[Sequence],
    rhs: Sequence,
    lower_bounds: Sequence[Optional[Fraction]],
) -> tuple[bool, Optional[Vector]]:
    """Decide feasibility of `A x = b` with `x_j >= lower_bounds[j]`.

    A bound of None leaves the variable free.  Returns (True, witness) with
    an exact rational witness, or (False, None).
    """
    a = [vec(row) for row in rows]
    b = vec(rhs)
    n = len(lower_bounds)
    if len(b) != len(a):
        raise DimensionError("right-hand side length differs from row count")
    for row in a:
        if len(row) != n:
            raise DimensionError("row width differs from bound count")
    bounds = [None if lb is None else Fraction(lb) for lb in lower_bounds]

    shift = [lb if lb is not None else Fraction(0) for lb in bounds]
    adjusted = tuple(
        b[i] - sum((a[i][j] * shift[j] for j in range(n)), Fraction(0))
        for i in range(len(a))
    )
    columns: list[Vector] = []
    layout: list[tuple[int, int]] = []  # (variable, sign)
    for j in range(n):
        col = tuple(a[i][j] for i in range(len(a)))
        columns.append(col)
        layout.append((j, 1))
        if bounds[j] is None:
            columns.append(vec_neg(col))
            layout.append((j, -1))
    z = _phase_one(columns, adjusted)
    if z is None:
        return False, None
    x = list(shift)
    for zj, (j, sign) in zip(z, layout):
        x[j] += sign * zj
    return True, tuple(x)


def cone_member(v: Sequence, generators: Sequence[Sequence]) -> tuple[bool, Optional[Vector]]:
    """Is v a nonnegative rational combination of the generators?

    Returns (True, coefficients) or (False, None).  The empty generator set
    yields only the zero vector.
    """
    target = vec(v)
    gens = [vec(g) for g in generators]
    for g in gens:
        if len(g) != len(target):
            raise DimensionError("generator dimension differs from target")
    z = _phase_one(gens, target)
    if z is None:
        return False, None
    return True, tuple(z)


def strict_zero_combination(generators: Sequence[Sequence]) -> tuple[bool, Optional[Vector]]:
    """Find lambda with every lambda_i >= 1 and sum lambda_i g_i = 0.

    Any strictly positive rational combination of the g_i reaching zero can be
    scaled so each coefficient is at least 1, so this is the right decision
    form for "zero lies in the strict positive hull".
    """
    gens = [vec(g) for g in generators]
    if not gens:
        raise ValueError("at least one generator is required")
    dim = len(gens[0])
    for g in gens:
        if len(g) != dim:
            raise DimensionError("generators have mixed dimensions")
    # substitute lambda = 1 + mu, mu >= 0
    target = tuple(-sum((g[i] for g in gens), Fraction(0)) for i in range(dim))
    z = _phase_one(gens, target)
    if z is None:
        return False, None
    return True, tuple(Fraction(1) + zj for zj in z)


# --- rank and determinants --------------------------------------------------

def linear_rank(vectors: Sequence[Sequence]) -> int:
    """Dimension of the rational span of the given vectors."""
    vecs = [list(vec(v)) for v in vectors]
    if not vecs:
        return 0
    width = len(vecs[0])
    for v in vecs:
        if len(v) != width:
            raise DimensionError("vectors have mixed dimensions")
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(vecs)) if vecs[i][col] != 0), None)
        if pivot is None:
            continue
        vecs[rank], vecs[pivot] = vecs[pivot], vecs[rank]
        prow = vecs[rank]
        pv = prow[col]
        for i in range(len(vecs)):
            if i != rank and vecs[i][col] != 0:
                f = vecs[i][col] / pv
                vecs[i] = [a - f * p for a, p in zip(vecs[i], prow)]
        rank += 1
        if rank == len(vecs):
            break
    return rank


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    a = [list(vec(row)) for row in rows]
    n = len(a)
    for row in a:
        if len(row) != n:
            raise DimensionError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / pv
                a[i] = [x - f * p for x, p in zip(a[i], a[col])]
    return det


# --- Smith normal form ------------------------------------------------------

def smith_normal_form(
    matrix: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix: returns (U, D, V) with U*M*V = D.

    U and V are unimodular, D is diagonal with nonnegative entries and
    d1 | d2 | ... along the diagonal.
    """
    m = len(matrix)
    k = len(matrix[0]) if m else 0
    a = [[int(x) for x in row] for row in matrix]
    for row in a:
        if len(row) != k:
            raise DimensionError("matrix rows have mixed widths")
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < m and t < k:
        best = None
        for i in range(t, m):
            for j in range(t, k):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            i = next((i for i in range(t + 1, m) if a[i][t] != 0), None)
            if i is not None:
                # floor division keeps |remainder| < |pivot| for either sign
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t] != 0:
                    swap_rows(i, t)
                continue
            j = next((j for j in range(t + 1, k) if a[t][j] != 0), None)
            if j is not None:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j] != 0:
                    swap_cols(j, t)
                continue
            piv = a[t][t]
            bad = next(
                (
                    i
                    for i in range(t + 1, m)
                    if any(a[i][j] % piv != 0 for j in range(t + 1, k))
                ),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


# --- serialization ----------------------------------------------------------

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse 'a' or 'a/b' with b > 0."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"invalid rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_vector(items: Sequence[str]) -> Vector:
    return tuple(parse_rational(x) for x in items)


def format_vector(v: Sequence[Fraction]) -> list[str]:
    return [format_rational(x) for x in v]
