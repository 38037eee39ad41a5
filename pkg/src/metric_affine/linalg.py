"""Small exact matrices over a Field.

Everything here is deliberately plain: a matrix is an immutable tuple of row
tuples plus an explicit shape (so 0x0 and 0xn matrices work), and all the
eliminations are textbook Gauss-Jordan written against the Field interface.
Vectors are n x 1 matrices (columns); dual vectors are columns as well, with
the canonical pairing <a*, x> = sum_i a_i x_i.

These matrices are used for the public, readable side of the package.  The
bulk enumeration work (orthogonal groups and friends) lives in groups.py on
top of numpy integer tables instead.
"""

from __future__ import annotations


class Singular(Exception):
    """Raised when a matrix inversion is impossible."""


class Mat:
    """Immutable matrix over `field`; entries are raw field values."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_key", "_hash")

    def __init__(self, field, rows, shape=None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if shape is None:
            nrows = len(rows)
            ncols = len(rows[0]) if rows else 0
        else:
            nrows, ncols = shape
        assert len(rows) == nrows, (len(rows), nrows)
        for row in rows:
            assert len(row) == ncols, (row, ncols)
        self.field = field
        self.rows = rows
        self.nrows = nrows
        self.ncols = ncols
        self._key = (field.name, nrows, ncols, rows)
        self._hash = hash(self._key)

    # --- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], (nrows, ncols))

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, field, entries):
        entries = list(entries)
        return cls(field, [[x] for x in entries], (len(entries), 1))

    @classmethod
    def from_cols(cls, field, cols, nrows=None):
        cols = [list(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls(field, [[c[i] for c in cols] for i in range(nrows)],
                   (nrows, len(cols)))

    # --- basics ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Mat) and self._key == other._key

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return "Mat(%s, %r)" % (self.field.name, [list(r) for r in self.rows])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return Mat.column(self.field, [self.rows[i][j] for i in range(self.nrows)])

    def col_entries(self, j):
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def entries(self):
        """Column-vector convenience: the entries of an n x 1 matrix."""
        assert self.ncols == 1, self.shape
        return tuple(r[0] for r in self.rows)

    def transpose(self):
        return Mat(self.field,
                   [[self.rows[i][j] for i in range(self.nrows)]
                    for j in range(self.ncols)],
                   (self.ncols, self.nrows))

    @property
    def T(self):
        return self.transpose()

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.rows for x in row)

    def is_identity(self):
        return self.nrows == self.ncols and self == Mat.identity(self.field, self.nrows)

    # --- arithmetic --------------------------------------------------------

    def __add__(self, other):
        assert self.shape == other.shape and self.field is other.field
        F = self.field
        return Mat(F, [[F.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)], self.shape)

    def __sub__(self, other):
        assert self.shape == other.shape and self.field is other.field
        F = self.field
        return Mat(F, [[F.sub(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)], self.shape)

    def __neg__(self):
        F = self.field
        return Mat(F, [[F.neg(a) for a in row] for row in self.rows], self.shape)

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        return Mat(F, [[F.mul(c, a) for a in row] for row in self.rows], self.shape)

    def __mul__(self, other):
        """Matrix product; maps act on column vectors from the left."""
        assert isinstance(other, Mat), other
        assert self.field is other.field
        assert self.ncols == other.nrows, (self.shape, other.shape)
        F = self.field
        ocols = [other.col_entries(j) for j in range(other.ncols)]
        return Mat(F, [[F.dot(row, c) for c in ocols] for row in self.rows],
                   (self.nrows, other.ncols))

    def submatrix(self, row_idx, col_idx):
        return Mat(self.field,
                   [[self.rows[i][j] for j in col_idx] for i in row_idx],
                   (len(row_idx), len(col_idx)))


def vec(field, entries):
    return Mat.column(field, entries)


def unit_vector(field, n, i):
    z, o = field.zero, field.one
    return Mat.column(field, [o if k == i else z for k in range(n)])


def pairing(astar, x):
    """Canonical pairing of a dual column with a vector: sum a_i x_i."""
    assert astar.shape == x.shape and astar.ncols == 1
    return astar.field.dot(astar.entries(), x.entries())


def outer(u, vstar):
    """u * vstar^T for columns u, vstar: the rank-<=1 matrix (u_i v_j)."""
    assert u.ncols == 1 and vstar.ncols == 1
    F = u.field
    vs = vstar.entries()
    return Mat(F, [[F.mul(ui, vj) for vj in vs] for ui in u.entries()],
               (u.nrows, vstar.nrows))


def rref(M):
    """Reduced row-echelon form.  Returns (R, pivot_columns)."""
    F = M.field
    rows = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    z = F.zero
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = None
        for i in range(r, nr):
            if rows[i][c] != z:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = F.inv(rows[r][c])
        rows[r] = [F.mul(pv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != z:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Mat(F, rows, M.shape), pivots


def rank(M):
    return len(rref(M)[1])


def mat_invert(M):
    """Inverse via Gauss-Jordan on [M | I].  Raises Singular."""
    if M.nrows != M.ncols:
        raise Singular("not square: %s" % (M.shape,))
    n = M.nrows
    F = M.field
    aug = Mat(F, [list(M.rows[i]) + list(Mat.identity(F, n).rows[i])
                  for i in range(n)], (n, 2 * n))
    R, pivots = rref(aug)
    # [M | I] always has n pivots; M is invertible iff they all land in M.
    if pivots != list(range(n)):
        raise Singular("matrix is singular")
    return R.submatrix(range(n), range(n, 2 * n))


def kernel_basis(M):
    """Deterministic basis of {x : M x = 0}, as a list of columns.

    Free variables are taken in increasing column order, each set to 1 in
    turn, which is the usual RREF back-substitution convention.
    """
    F = M.field
    R, pivots = rref(M)
    nc = M.ncols
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    z, o = F.zero, F.one
    for fc in free:
        x = [z] * nc
        x[fc] = o
        for r_i, pc in enumerate(pivots):
            x[pc] = F.neg(R.rows[r_i][fc])
        basis.append(Mat.column(F, x))
    return basis


def annihilator(field, n, vectors):
    """Basis of {a* in V* : <a*, v> = 0 for all v}, for V of dimension n.

    `vectors` is an iterable of columns in V; the result is a list of dual
    columns.  With no vectors the whole dual space comes back.
    """
    vectors = list(vectors)
    for v in vectors:
        assert v.nrows == n and v.ncols == 1, v.shape
    M = Mat(field, [v.entries() for v in vectors], (len(vectors), n))
    return kernel_basis(M)


def transpose_map(A):
    """Matrix of the transpose map W* -> V* of A: V -> W (dual columns)."""
    return A.transpose()


def span_contains(basis, v):
    """Is column v in the span of the given columns?"""
    if not basis:
        return v.is_zero()
    F = v.field
    M = Mat.from_cols(F, [b.entries() for b in basis] + [v.entries()])
    return rank(M) == rank(M.submatrix(range(M.nrows), range(len(basis))))


if __name__ == "__main__":
    from .fields import GF3, QQ

    A = Mat(GF3, [[1, 2], [0, 1]])
    assert mat_invert(A) * A == Mat.identity(GF3, 2)
    K = kernel_basis(Mat(GF3, [[1, 2, 0]]))
    assert len(K) == 2
    B = Mat(QQ, [[1, 2], [3, 4]])
    assert mat_invert(B) * B == Mat.identity(QQ, 2)
    assert rank(Mat.zeros(QQ, 0, 0)) == 0
    print("linalg ok")
