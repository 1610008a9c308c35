"""Dense exact linear algebra: canonical row spans, kernels, matrix helpers.

Everything here works over a :class:`~seqwalk.fields.Field` with vectors as
plain lists.  Blocks in this package are small (desk scale), so dense
representations are simpler and fast enough.
"""

from __future__ import annotations


class RowSpan:
    """A subspace kept in reduced row echelon form.

    Rows are fully back-reduced with pivot entries normalized to one, so the
    stored basis is canonical for the subspace: two equal subspaces produce
    identical row lists whatever order vectors were added in.
    """

    def __init__(self, field, width: int):
        self.field = field
        self.width = width
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def copy(self) -> "RowSpan":
        new = RowSpan(self.field, self.width)
        new.rows = [row[:] for row in self.rows]
        new.pivots = self.pivots[:]
        return new

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: list) -> list:
        """Normal form of ``vec`` modulo the span (a fresh list)."""
        f = self.field
        v = vec[:]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if not f.is_zero(c):
                for j in range(p, self.width):
                    v[j] = f.sub(v[j], f.mul(c, row[j]))
        return v

    def contains(self, vec: list) -> bool:
        f = self.field
        return all(f.is_zero(c) for c in self.reduce(vec))

    def add(self, vec: list) -> bool:
        """Grow the span by ``vec``; returns True if the rank increased."""
        f = self.field
        v = self.reduce(vec)
        pivot = next((j for j, c in enumerate(v) if not f.is_zero(c)), None)
        if pivot is None:
            return False
        scale = f.inv(v[pivot])
        v = [f.mul(scale, c) for c in v]
        # back-eliminate the new pivot from the existing rows
        for row in self.rows:
            c = row[pivot]
            if not f.is_zero(c):
                for j in range(pivot, self.width):
                    row[j] = f.sub(row[j], f.mul(c, v[j]))
        at = next((i for i, p in enumerate(self.pivots) if p > pivot), len(self.rows))
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True

    def extend(self, vecs) -> None:
        for v in vecs:
            self.add(v)


def zero_vector(field, n: int) -> list:
    return [field.zero] * n


def unit_vector(field, n: int, i: int) -> list:
    v = [field.zero] * n
    v[i] = field.one
    return v


def mat_zero(field, rows: int, cols: int) -> list[list]:
    return [[field.zero] * cols for _ in range(rows)]


def mat_identity(field, n: int) -> list[list]:
    m = mat_zero(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def mat_vec(field, m: list[list], v: list) -> list:
    out = []
    for row in m:
        acc = field.zero
        for a, b in zip(row, v):
            if not field.is_zero(a) and not field.is_zero(b):
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def mat_mul(field, a: list[list], b: list[list]) -> list[list]:
    """Matrix product a @ b with a: m x k, b: k x n."""
    if not a:
        return []
    k = len(b)
    n = len(b[0]) if b else 0
    out = mat_zero(field, len(a), n)
    for i, row in enumerate(a):
        for t in range(k):
            c = row[t]
            if field.is_zero(c):
                continue
            brow = b[t]
            orow = out[i]
            for j in range(n):
                if not field.is_zero(brow[j]):
                    orow[j] = field.add(orow[j], field.mul(c, brow[j]))
    return out


def mat_transpose(field, m: list[list], rows: int, cols: int) -> list[list]:
    out = mat_zero(field, cols, rows)
    for i in range(rows):
        for j in range(cols):
            out[j][i] = m[i][j]
    return out


def kernel_basis(field, m: list[list], ncols: int) -> list[list]:
    """Canonical basis of the right kernel of ``m`` (vectors of length ncols).

    One basis vector per free column, with the free coordinate set to one and
    later free coordinates zero; ordered by free column index.
    """
    span = RowSpan(field, ncols)
    for row in m:
        span.add(row[:])
    pivot_set = set(span.pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        # solve the pivot coordinates against the RREF rows
        for row, p in zip(span.rows, span.pivots):
            if p < free:
                v[p] = field.neg(row[free])
        basis.append(v)
    return basis


def solve_in_span(field, basis_rows: list[list], pivots: list[int], vec: list):
    """Coefficients of ``vec`` in an RREF basis, or None if outside the span."""
    v = vec[:]
    coeffs = []
    for row, p in zip(basis_rows, pivots):
        c = v[p]
        coeffs.append(c)
        if not field.is_zero(c):
            for j in range(len(v)):
                v[j] = field.sub(v[j], field.mul(c, row[j]))
    if any(not field.is_zero(c) for c in v):
        return None
    return coeffs
