"""Dense exact linear algebra over Q and Q(zeta_k).

Rows are plain lists of scalars; matrices handed around between modules
are tuples of tuples of Fractions.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from cohomring.core.exceptions import ShapeMismatchError

Matrix = Tuple[Tuple[Fraction, ...], ...]


def to_matrix(rows) -> Matrix:
    """Freeze nested sequences of ints, Fractions or strings like '-1/2'."""
    return tuple(tuple(Fraction(entry) for entry in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def transpose(m: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Transpose; ncols gives the width when m has no rows."""
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ShapeMismatchError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    width = len(b[0]) if b else 0
    return tuple(
        tuple(sum((row[t] * b[t][j] for t in range(len(b))), Fraction(0)) for j in range(width))
        for row in a
    )


def mat_vec(m: Sequence[Sequence], v: Sequence) -> List:
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in m]


def rref(rows: Sequence[Sequence]) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows (pivot entries equal to 1) and their pivot
    columns. Input is not modified; int entries become Fractions.
    """
    m = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: List[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        if fp != 1:
            m[piv_r] = [entry / fp for entry in m[piv_r]]
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = m[r][piv_c]
            if fr == 0:
                continue
            m[r] = [x - fr * y for x, y in zip(m[r], m[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return m[:piv_r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n_cols: int) -> List[List]:
    """Basis of {x : rows . x = 0}, one vector per free column, free entry 1."""
    reduced, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[List]:
    """A particular solution of a.x = b, or None when inconsistent."""
    n_cols = len(a[0]) if a else 0
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    reduced, pivots = rref(augmented)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for row, p in zip(reduced, pivots):
        x[p] = row[n_cols]
    return x


def reduce_against(vec: Sequence, reduced: Sequence[Sequence], pivots: Sequence[int]) -> List:
    """Canonical remainder of vec modulo the row space of an rref basis."""
    out = list(vec)
    for row, p in zip(reduced, pivots):
        c = out[p]
        if c != 0:
            out = [x - c * y for x, y in zip(out, row)]
    return out


def in_span(vec: Sequence, reduced: Sequence[Sequence], pivots: Sequence[int]) -> bool:
    return all(x == 0 for x in reduce_against(vec, reduced, pivots))


def is_invertible(m: Sequence[Sequence]) -> bool:
    if not m:
        return True
    if any(len(row) != len(m) for row in m):
        return False
    return rank(m) == len(m)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    augmented = [list(row) + list(e) for row, e in zip(m, identity(n))]
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ShapeMismatchError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def mat_pow(m: Matrix, exponent: int) -> Matrix:
    result = identity(len(m))
    for _ in range(exponent):
        result = matmul(result, m)
    return result


def trace(m: Sequence[Sequence]):
    return sum((m[i][i] for i in range(len(m))), Fraction(0))
