"""Exact dense linear algebra over Q(sqrt5) and integer lattice machinery.

Matrices are small (k <= 16 throughout the catalog), so plain exact
Gaussian elimination over the field is used; rationals stay reduced after
every operation.  Integer lattices are kept as canonical Hermite Normal
Form bases plus an explicit denominator, never as floating vectors.
"""

from __future__ import annotations

from .goldfield import ZERO, ONE, GoldenScalar

Vector = tuple  # tuple of GoldenScalar


def vec(entries) -> Vector:
    return tuple(GoldenScalar.coerce(e) for e in entries)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u, s):
    s = GoldenScalar.coerce(s)
    return tuple(a * s for a in u)


def vec_dot(u, v) -> GoldenScalar:
    acc = ZERO
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def vec_is_zero(u) -> bool:
    return all(e.is_zero() for e in u)


class GoldenMatrix:
    """Immutable dense matrix with GoldenScalar entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        rows = tuple(vec(r) for r in data)
        if not rows:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("GoldenMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "GoldenMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GoldenMatrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i) -> Vector:
        return self.data[i]

    def col(self, j) -> Vector:
        return tuple(r[j] for r in self.data)

    def __eq__(self, other):
        if not isinstance(other, GoldenMatrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __add__(self, other):
        self._conform(other)
        return GoldenMatrix(
            [vec_add(r, s) for r, s in zip(self.data, other.data)]
        )

    def __sub__(self, other):
        self._conform(other)
        return GoldenMatrix(
            [vec_sub(r, s) for r, s in zip(self.data, other.data)]
        )

    def __neg__(self):
        return GoldenMatrix([[-e for e in r] for r in self.data])

    def __matmul__(self, other):
        if isinstance(other, GoldenMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            cols = [other.col(j) for j in range(other.cols)]
            return GoldenMatrix(
                [[vec_dot(r, c) for c in cols] for r in self.data]
            )
        # matrix @ vector
        v = vec(other)
        if self.cols != len(v):
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(vec_dot(r, v) for r in self.data)

    def scale(self, s) -> "GoldenMatrix":
        return GoldenMatrix([vec_scale(r, s) for r in self.data])

    def transpose(self) -> "GoldenMatrix":
        return GoldenMatrix([self.col(j) for j in range(self.cols)])

    def conjugate(self) -> "GoldenMatrix":
        return GoldenMatrix([[e.conjugate() for e in r] for r in self.data])

    def trace(self) -> GoldenScalar:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self.data[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.data)

    def is_rational(self) -> bool:
        return all(e.is_rational() for r in self.data for e in r)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def to_float(self):
        return [[e.to_float() for e in r] for r in self.data]

    def _conform(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in r) for r in self.data)
        return f"GoldenMatrix[{self.rows}x{self.cols}]({body})"


def mat_mul(a: GoldenMatrix, b: GoldenMatrix) -> GoldenMatrix:
    return a @ b


def mat_sub(a: GoldenMatrix, b: GoldenMatrix) -> GoldenMatrix:
    return a - b


def transpose(a: GoldenMatrix) -> GoldenMatrix:
    return a.transpose()


def identity(n: int) -> GoldenMatrix:
    return GoldenMatrix.identity(n)


# -- elimination --------------------------------------------------------------

def _rref(rows, ncols):
    """Reduced row echelon form in place; returns pivot column list."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m: GoldenMatrix) -> int:
    rows = [list(r) for r in m.data]
    return len(_rref(rows, m.cols))


def kernel_basis(m: GoldenMatrix):
    """Basis of the right null space {x : m x = 0}; empty list if injective."""
    rows = [list(r) for r in m.data]
    pivots = _rref(rows, m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def solve_affine(m: GoldenMatrix, rhs):
    """Solve m x = rhs exactly.

    Returns ``(particular, kernel)`` with free variables set to zero, or
    ``(None, kernel)`` when the system is infeasible.
    """
    rhs = vec(rhs)
    if len(rhs) != m.rows:
        raise ValueError("rhs length mismatch")
    rows = [list(r) + [b] for r, b in zip(m.data, rhs)]
    pivots = _rref(rows, m.cols)
    kernel = []
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        kernel.append(tuple(v))
    # consistency: rows past the pivot count must have zero rhs
    for r in range(len(pivots), len(rows)):
        if not rows[r][m.cols].is_zero():
            return None, kernel
    x = [ZERO] * m.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][m.cols]
    return tuple(x), kernel


def invert(m: GoldenMatrix) -> GoldenMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    rows = [list(r) + [ONE if i == j else ZERO for j in range(n)]
            for i, r in enumerate(m.data)]
    pivots = _rref(rows, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return GoldenMatrix([r[n:] for r in rows])


# -- integer lattices ---------------------------------------------------------

def hnf(vectors, ambient=None):
    """Canonical row-style Hermite Normal Form of the span of ``vectors``.

    Pivots are positive, entries below a pivot are zero and entries above
    are reduced into [0, pivot).  Zero rows are dropped, so two generating
    sets of the same lattice produce identical output.
    """
    rows = [list(int(e) for e in v) for v in vectors]
    if not rows:
        return []
    n = ambient if ambient is not None else len(rows[0])
    basis = []
    for c in range(n):
        live = [r for r in rows if r[c] != 0]
        if not live:
            continue
        # fold every row with a nonzero entry in column c into one pivot row
        pivot = live[0]
        rows.remove(pivot)
        for r in live[1:]:
            rows.remove(r)
            while r[c] != 0:
                if abs(pivot[c]) > abs(r[c]):
                    pivot, r = r, pivot
                q = r[c] // pivot[c]
                for j in range(n):
                    r[j] -= q * pivot[j]
            rows.append(r)
        if pivot[c] < 0:
            pivot = [-e for e in pivot]
        for b in basis:
            bc = b[c] % pivot[c]
            if bc != b[c]:
                q = (b[c] - bc) // pivot[c]
                for j in range(n):
                    b[j] -= q * pivot[j]
        basis.append(pivot)
    return [tuple(r) for r in basis]


def hnf_with_transform(vectors, ambient=None):
    """Like :func:`hnf` on all input rows, also returning combination rows.

    Returns ``(echelon, transform, zero_transforms)`` where each echelon row
    equals the matching transform row applied to the inputs, and
    ``zero_transforms`` are the integer combinations of inputs that vanish.
    The echelon part is left in (non-canonical) echelon form.
    """
    rows = [list(int(e) for e in v) for v in vectors]
    if not rows:
        return [], [], []
    n = ambient if ambient is not None else len(rows[0])
    m = len(rows)
    trans = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    work = list(zip(rows, trans))
    echelon = []
    for c in range(n):
        live = [(r, t) for r, t in work if r[c] != 0]
        if not live:
            continue
        pivot, pt = live[0]
        work.remove((pivot, pt))
        for r, t in live[1:]:
            work.remove((r, t))
            while r[c] != 0:
                if abs(pivot[c]) > abs(r[c]):
                    pivot, r = r, pivot
                    pt, t = t, pt
                q = r[c] // pivot[c]
                for j in range(n):
                    r[j] -= q * pivot[j]
                for j in range(m):
                    t[j] -= q * pt[j]
            work.append((r, t))
        if pivot[c] < 0:
            pivot = [-e for e in pivot]
            pt = [-e for e in pt]
        echelon.append((tuple(pivot), tuple(pt)))
    zero_transforms = [tuple(t) for r, t in work]
    ech_rows = [r for r, _ in echelon]
    ech_trans = [t for _, t in echelon]
    return ech_rows, ech_trans, zero_transforms


class IntegerLatticeBasis:
    """A rank-r lattice (1/denominator) * span_Z(basis rows) in Z^k scale.

    ``basis`` is always the canonical HNF, so two descriptions of the same
    lattice compare equal.
    """

    __slots__ = ("ambient", "basis", "denominator")

    def __init__(self, vectors, ambient, denominator=1):
        if denominator <= 0:
            raise ValueError("denominator must be positive")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", tuple(hnf(vectors, ambient)))
        object.__setattr__(self, "denominator", int(denominator))

    def __setattr__(self, name, value):
        raise AttributeError("IntegerLatticeBasis is immutable")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, IntegerLatticeBasis):
            return NotImplemented
        if self.ambient != other.ambient:
            return False
        # compare at a common scale
        d1, d2 = self.denominator, other.denominator
        a = [tuple(e * d2 for e in r) for r in self.basis]
        b = [tuple(e * d1 for e in r) for r in other.basis]
        return hnf(a, self.ambient) == hnf(b, self.ambient)

    def __hash__(self):
        return hash((self.ambient, self.basis, self.denominator))

    def contains_integer_vector(self, v) -> bool:
        """Membership of an integer ambient vector (at denominator 1 scale)."""
        v = [int(e) * self.denominator for e in v]
        return self._reduces_to_zero(v)

    def _reduces_to_zero(self, v) -> bool:
        v = list(v)
        rows = {next(j for j, e in enumerate(r) if e != 0): r for r in self.basis}
        for j in range(self.ambient):
            if v[j] == 0:
                continue
            r = rows.get(j)
            if r is None or v[j] % r[j] != 0:
                return False
            q = v[j] // r[j]
            for jj in range(j, self.ambient):
                v[jj] -= q * r[jj]
        return True

    def __repr__(self):
        return (f"IntegerLatticeBasis(rank={self.rank}, "
                f"ambient={self.ambient}, D={self.denominator})")


def _rational_entries(m: GoldenMatrix):
    if not m.is_rational():
        raise ValueError("matrix has nonzero sqrt5 part; expected rational entries")
    return [[e.a for e in r] for r in m.data]


def _common_denominator(qrows):
    from math import gcd

    def lcm(a, b):
        return a // gcd(a, b) * b

    d = 1
    for r in qrows:
        for q in r:
            d = lcm(d, int(q.denominator))
    return d


def integer_kernel(m: GoldenMatrix) -> IntegerLatticeBasis:
    """HNF basis of {x in Z^k : m x = 0} for a rational matrix."""
    qrows = _rational_entries(m)
    d = _common_denominator(qrows)
    int_rows = [[int(q * d) for q in r] for r in qrows]
    # columns of m are the input vectors; integer combinations that vanish
    # are exactly the integer kernel, and HNF keeps the lattice saturated.
    cols = [[int_rows[i][j] for i in range(m.rows)] for j in range(m.cols)]
    _, _, zero = hnf_with_transform(cols)
    return IntegerLatticeBasis(zero, m.cols)


def image_lattice_basis(m: GoldenMatrix) -> IntegerLatticeBasis:
    """Lattice generated by the columns of a rational matrix.

    The common denominator D is cleared first; the result represents the
    true image lattice as (1/D) * span_Z(basis).
    """
    qrows = _rational_entries(m)
    d = _common_denominator(qrows)
    cols = [[int(qrows[i][j] * d) for i in range(m.rows)] for j in range(m.cols)]
    return IntegerLatticeBasis(cols, m.rows, denominator=d)


def _int_det(rows) -> int:
    """Determinant of a small integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            swap = next((i for i in range(c + 1, n) if a[i][c] != 0), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def lattice_index(sub: IntegerLatticeBasis, sup: IntegerLatticeBasis) -> int:
    """Index [sup : sub] for equal-rank nested lattices."""
    if sub.ambient != sup.ambient:
        raise ValueError("ambient dimension mismatch")
    if sub.rank != sup.rank:
        raise ValueError("rank mismatch")
    from fractions import Fraction

    sup_rows = [[Fraction(e, sup.denominator) for e in r] for r in sup.basis]
    coeff_rows = []
    for v in sub.basis:
        target = [Fraction(e, sub.denominator) for e in v]
        coeffs = _solve_in_row_span(sup_rows, target)
        if coeffs is None:
            raise ValueError("sub lattice is not contained in super lattice")
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError("sub lattice is not contained in super lattice")
        coeff_rows.append([int(c) for c in coeffs])
    det = _int_det(coeff_rows)
    if det == 0:
        raise ValueError("degenerate basis")
    return abs(det)


def _solve_in_row_span(rows, target):
    """Express target as a rational combination of rows, or return None."""
    from fractions import Fraction

    m = len(rows)
    n = len(target)
    # columns of the system are the rows we want to combine
    mat = GoldenMatrix([[GoldenScalar(rows[i][j]) for i in range(m)] for j in range(n)])
    sol, _ = solve_affine(mat, vec([GoldenScalar(t) for t in target]))
    if sol is None:
        return None
    return [Fraction(int(s.a.numerator), int(s.a.denominator)) for s in sol]
