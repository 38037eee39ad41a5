"""Exhaustive matrix-group enumeration: GL, isometry groups, closures.

The public objects here are GroupSets: immutable, canonically-encoded sets
of invertible matrices over one of the finite fields.  Group comparisons in
the classification code happen thousands of times, so a GroupSet keeps a
sorted tuple of byte encodings (row-major raw values, one byte per entry)
and set equality is plain tuple equality.

Under the hood the module keeps, per (field, n):

  * the table of all q^n vectors (row idx -> vector, idx = sum x_i q^i),
  * the full list of invertible matrices (built once by extending partial
    bases column by column),
  * the permutation table P[g, j] = index of (matrix_g * vector_j),

all as small numpy integer arrays.  A subgroup of GL is then just a boolean
mask over the matrix list, and "is A an isometry of Q" for every A at once
is a single vectorised comparison of value tables.  This is nothing but the
definition applied to every vector, in bulk; the readable one-vector-at-a-
time route lives in quadform.is_isometry and the tests check the two agree.

Everything stays in integer dtypes; there is no floating point here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .fields import GF4Field
from .linalg import Mat
from .quadform import QForm, radical_basis

DEFAULT_BUDGET = 25_000
HARD_BUDGET_CEILING = 10_000_000


class BudgetExceeded(Exception):
    """An enumeration would need more group elements than allowed."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            "enumeration needs %d elements, budget is %d "
            "(raise METRIC_AFFINE_BUDGET to allow more)" % (required, budget)
        )


def group_budget():
    """Budget on enumerated group orders; env-tunable, hard-clamped."""
    raw = os.environ.get("METRIC_AFFINE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_BUDGET
    return max(1, min(value, HARD_BUDGET_CEILING))


def order_gl(n, q):
    """|GL_n(F_q)| = prod_i (q^n - q^i)."""
    N = q ** n
    order = 1
    for i in range(n):
        order *= N - q ** i
    return order


assert order_gl(2, 2) == 6 and order_gl(3, 2) == 168 and order_gl(4, 2) == 20160
assert order_gl(2, 3) == 48 and order_gl(3, 3) == 11232 and order_gl(0, 5) == 1


# --- numpy engine ----------------------------------------------------------

_MUL4 = np.array([[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]],
                 dtype=np.uint8)

_VEC_CACHE = {}
_GL_CACHE = {}
_PERM_CACHE = {}
_ORBIT_CACHE = {}


def _is_gf4(field):
    return isinstance(field, GF4Field)


def vectors_np(field, n):
    """(q^n, n) uint8 table; row idx holds the vector with index idx."""
    key = (field.name, n)
    tab = _VEC_CACHE.get(key)
    if tab is None:
        q = field.order
        idx = np.arange(q ** n, dtype=np.int64)
        cols = [(idx // q ** i) % q for i in range(n)]
        tab = (np.stack(cols, axis=1).astype(np.uint8) if n
               else np.zeros((1, 0), dtype=np.uint8))
        tab.setflags(write=False)
        _VEC_CACHE[key] = tab
    return tab


def vector_index_np(field, X):
    """Indices of the rows of X (shape (..., n)) in the vector table."""
    q = field.order
    n = X.shape[-1]
    powers = q ** np.arange(n, dtype=np.int64)
    return X.astype(np.int64) @ powers if n else np.zeros(X.shape[:-1], dtype=np.int64)


def matmul_np(field, A, B):
    """Exact matrix product of integer-coded stacks over a finite field."""
    if _is_gf4(field):
        out = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.uint8)
        for k in range(A.shape[-1]):
            out ^= _MUL4[A[..., :, k][..., :, None], B[..., k, :][..., None, :]]
        return out
    return ((A.astype(np.int64) @ B.astype(np.int64)) % field.order).astype(np.uint8)


def mat_to_np(A):
    return np.array([[int(x) for x in row] for row in A.rows],
                    dtype=np.uint8).reshape(A.nrows, A.ncols)


def np_to_mat(field, arr):
    return Mat(field, [[int(x) for x in row] for row in arr],
               (arr.shape[0], arr.shape[1]))


def encode_np(arr):
    """Canonical byte encoding of one n x n integer-coded matrix."""
    return np.ascontiguousarray(arr, dtype=np.uint8).tobytes()


def _gl_arrays(field, n, budget=None):
    """The full GL_n stack as a (m, n, n) uint8 array, cached."""
    budget = group_budget() if budget is None else budget
    required = order_gl(n, field.order)
    if required > budget:
        raise BudgetExceeded(required, budget)
    key = (field.name, n)
    arr = _GL_CACHE.get(key)
    if arr is not None:
        return arr

    elems = field.elements()
    vecs = [tuple(int(v) for v in row) for row in vectors_np(field, n)]
    zero = vecs[0]
    columns_out = []

    def extend(cols, span):
        if len(cols) == n:
            columns_out.append(cols)
            return
        for v in vecs:
            if v in span:
                continue
            grown = set()
            for s in span:
                for c in elems:
                    grown.add(tuple(field.add(si, field.mul(c, vi))
                                    for si, vi in zip(s, v)))
            extend(cols + (v,), grown)

    extend((), {zero})
    assert len(columns_out) == required, (len(columns_out), required)
    arr = np.zeros((required, n, n), dtype=np.uint8)
    for m_i, cols in enumerate(columns_out):
        for c_i, col in enumerate(cols):
            for r_i, x in enumerate(col):
                arr[m_i, r_i, c_i] = x
    arr.setflags(write=False)
    _GL_CACHE[key] = arr
    return arr


def _perm_table(field, n, budget=None):
    """P[g, j] = vector index of (GL_g applied to vector_j)."""
    key = (field.name, n)
    P = _PERM_CACHE.get(key)
    if P is None:
        G = _gl_arrays(field, n, budget)
        V = vectors_np(field, n)
        if _is_gf4(field):
            # images[g, j, :] = G[g] . V[j]
            images = np.zeros((G.shape[0], V.shape[0], n), dtype=np.uint8)
            for i in range(n):
                acc = np.zeros((G.shape[0], V.shape[0]), dtype=np.uint8)
                for k in range(n):
                    acc ^= _MUL4[G[:, i, k][:, None], V[None, :, k]]
                images[:, :, i] = acc
        else:
            images = (np.einsum("gik,jk->gji", G.astype(np.int64),
                                V.astype(np.int64)) % field.order)
        P = vector_index_np(field, images)
        P = np.ascontiguousarray(P, dtype=np.int64)
        P.setflags(write=False)
        _PERM_CACHE[key] = P
    return P


def form_values_np(Q):
    """Value table: entry idx is the raw code of Q(vector_idx)."""
    field, n = Q.field, Q.n
    V = vectors_np(field, n)
    W = mat_to_np(Q.gram)
    if _is_gf4(field):
        vals = np.zeros(V.shape[0], dtype=np.uint8)
        for i in range(n):
            for j in range(i, n):
                if W[i, j]:
                    vals ^= _MUL4[_MUL4[W[i, j], V[:, i]], V[:, j]]
        return vals.astype(np.int64)
    if n == 0:
        return np.zeros(1, dtype=np.int64)
    Vi = V.astype(np.int64)
    return np.einsum("ni,ij,nj->n", Vi, W.astype(np.int64), Vi) % field.order


def isometry_mask(Q, budget=None):
    """Boolean mask over the GL stack: which matrices preserve Q."""
    P = _perm_table(Q.field, Q.n, budget)
    vals = form_values_np(Q)
    return (vals[P] == vals[np.newaxis, :]).all(axis=1)


def radical_vector_indices(Q):
    """Vector-table indices of every vector in rad(B), the whole subspace."""
    field, n = Q.field, Q.n
    basis = radical_basis(Q)
    vecs = [tuple(field.zero for _ in range(n))]
    for b in basis:
        be = b.entries()
        vecs = [tuple(field.add(x, field.mul(c, bi)) for x, bi in zip(v, be))
                for v in vecs for c in field.elements()]
    arr = (np.array(sorted(set(vecs)), dtype=np.uint8) if n
           else np.zeros((1, 0), dtype=np.uint8))
    return np.unique(vector_index_np(field, arr))


def weak_isometry_mask(Q, budget=None):
    """Isometries that also fix every radical vector."""
    mask = isometry_mask(Q, budget)
    ridx = radical_vector_indices(Q)
    P = _perm_table(Q.field, Q.n, budget)
    return mask & (P[:, ridx] == ridx[np.newaxis, :]).all(axis=1)


# --- GroupSet --------------------------------------------------------------

class GroupSet:
    """An immutable set of invertible n x n matrices over a finite field.

    Elements are kept as a sorted tuple of canonical byte encodings; two
    GroupSets over the same (field, n) are equal iff the tuples are equal.
    Group axioms are not assumed by the container; `verify_axioms` checks
    them on demand.
    """

    __slots__ = ("field", "n", "elems", "_mats", "_elem_set")

    def __init__(self, field, n, keys):
        self.field = field
        self.n = n
        self.elems = tuple(sorted(set(keys)))
        self._mats = None
        self._elem_set = None

    def key_set(self):
        if self._elem_set is None:
            self._elem_set = frozenset(self.elems)
        return self._elem_set

    @classmethod
    def from_np(cls, field, n, arr):
        return cls(field, n, [encode_np(a) for a in arr])

    @classmethod
    def from_mats(cls, field, n, mats):
        return cls(field, n, [encode_np(mat_to_np(A)) for A in mats])

    @classmethod
    def from_mask(cls, field, n, mask, budget=None):
        G = _gl_arrays(field, n, budget)
        return cls.from_np(field, n, G[mask])

    @property
    def order(self):
        return len(self.elems)

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.mats())

    def __contains__(self, A):
        key = A if isinstance(A, bytes) else encode_np(mat_to_np(A))
        return key in self.key_set()

    def __eq__(self, other):
        return (isinstance(other, GroupSet) and self.field is other.field
                and self.n == other.n and self.elems == other.elems)

    def __hash__(self):
        return hash((self.field.name, self.n, self.elems))

    def __repr__(self):
        return "GroupSet(%s, n=%d, order=%d)" % (self.field.name, self.n, self.order)

    def decode(self, key):
        arr = np.frombuffer(key, dtype=np.uint8).reshape(self.n, self.n)
        return np_to_mat(self.field, arr)

    def mats(self):
        if self._mats is None:
            self._mats = [self.decode(k) for k in self.elems]
        return self._mats

    def as_np(self):
        if not self.elems:
            return np.zeros((0, self.n, self.n), dtype=np.uint8)
        flat = np.frombuffer(b"".join(self.elems), dtype=np.uint8)
        return flat.reshape(len(self.elems), self.n, self.n)

    def verify_axioms(self):
        """Check identity, closure under product, closure under inverse."""
        n = self.n
        ident = encode_np(np.eye(n, dtype=np.uint8)) if n else b""
        if ident not in set(self.elems):
            return False
        arr = self.as_np()
        keyset = set(self.elems)
        for a in arr:
            prods = matmul_np(self.field, arr, a)
            for row in prods:
                if encode_np(row) not in keyset:
                    return False
        # closure + identity + finiteness already force inverses, but check
        # anyway: every row of the product table must hit the identity once.
        for a in arr:
            prods = matmul_np(self.field, arr, a)
            if not any(encode_np(row) == ident for row in prods):
                return False
        return True


def enumerate_gl(field, n, budget=None):
    """All of GL_n(F) as a GroupSet."""
    return GroupSet.from_np(field, n, _gl_arrays(field, n, budget))


_ORTH_CACHE = {}
_WEAK_ORTH_CACHE = {}


def orthogonal_group(Q, budget=None):
    """All GL elements preserving Q (full enumeration + filter, memoized)."""
    key = (Q.field.name, Q.n, Q.upper_coeffs())
    got = _ORTH_CACHE.get(key)
    if got is None:
        got = _ORTH_CACHE[key] = GroupSet.from_mask(
            Q.field, Q.n, isometry_mask(Q, budget), budget)
    return got


def weak_orthogonal_group(Q, budget=None):
    """Isometries of Q fixing the radical of the polar form pointwise
    (memoized: the verification sweeps revisit the same forms heavily)."""
    key = (Q.field.name, Q.n, Q.upper_coeffs())
    got = _WEAK_ORTH_CACHE.get(key)
    if got is None:
        got = _WEAK_ORTH_CACHE[key] = GroupSet.from_mask(
            Q.field, Q.n, weak_isometry_mask(Q, budget), budget)
    return got


def closure(field, n, generators, budget=None):
    """Smallest GroupSet containing the generators, by BFS saturation.

    `generators` may be Mats or integer arrays.  The ambient (field, n) is
    explicit so that an empty generating set still has a home; the result is
    then just {identity}.
    """
    budget = group_budget() if budget is None else budget
    gens = []
    for g in generators:
        arr = mat_to_np(g) if isinstance(g, Mat) else np.asarray(g, dtype=np.uint8)
        assert arr.shape == (n, n), arr.shape
        gens.append(arr)
    ident = np.eye(n, dtype=np.uint8) if n else np.zeros((0, 0), dtype=np.uint8)
    seen = {encode_np(ident)}
    frontier = [ident]
    while frontier:
        batch = np.stack(frontier)
        frontier = []
        for g in gens:
            prods = matmul_np(field, batch, g)
            for row in prods:
                key = encode_np(row)
                if key not in seen:
                    seen.add(key)
                    frontier.append(row)
        if len(seen) > budget:
            raise BudgetExceeded(len(seen), budget)
    return GroupSet(field, n, seen)


def group_equal(g1, g2):
    if g1.field is not g2.field or g1.n != g2.n:
        raise ValueError("group comparison across different spaces")
    return g1.elems == g2.elems


def is_subgroup(g1, g2):
    """Is g1 contained in g2 (as sets)?"""
    if g1.field is not g2.field or g1.n != g2.n:
        raise ValueError("group comparison across different spaces")
    return g1.key_set() <= g2.key_set()


# --- reflection generation -------------------------------------------------

CASE_HYPERBOLIC_RADICAL = "hyperbolic-plane-plus-radical"   # x1x2, dim > 2
CASE_HYPERBOLIC_PAIR = "hyperbolic-pair"                    # x1x2+x3x4, dim >= 4


def congruence_orbit(field, n, coeffs, budget=None):
    """All forms A^T W A (A in GL) for the reference form with these upper
    coefficients, as a frozenset of upper-coefficient tuples.  Cached."""
    key = (field.name, n, tuple(coeffs))
    orbit = _ORBIT_CACHE.get(key)
    if orbit is None:
        ref = QForm.from_upper(field, n, coeffs)
        G = _gl_arrays(field, n, budget)
        W = mat_to_np(ref.gram).astype(np.int64)
        Gi = G.astype(np.int64)
        S = np.einsum("mji,jk,mkl->mil", Gi, W, Gi) % field.order
        # canonicalise: keep diagonals, fold the strictly-lower part up
        C = (np.triu(S) + np.triu(S.transpose(0, 2, 1), 1)) % field.order
        iu = np.triu_indices(n)
        flats = C[:, iu[0], iu[1]] if n else np.zeros((S.shape[0], 0), dtype=np.int64)
        orbit = frozenset(tuple(int(x) for x in row) for row in flats)
        _ORBIT_CACHE[key] = orbit
    return orbit


def _matches_shape(Q, coeffs, budget=None):
    if _is_gf4(Q.field):
        raise NotImplementedError("shape orbits only needed over prime fields")
    ints = tuple(int(c) for c in Q.upper_coeffs())
    return ints in congruence_orbit(Q.field, Q.n, coeffs, budget)


def _exceptional_shape(Q, budget=None):
    """The literal two-case taxonomy, detected up to change of basis."""
    if Q.field.order != 2:
        return None
    n = Q.n
    if n > 2:
        m = n * (n + 1) // 2
        hyp = [0] * m
        hyp[1] = 1  # the (0,1) coefficient: x1*x2
        if _matches_shape(Q, hyp, budget):
            return CASE_HYPERBOLIC_RADICAL
    if n >= 4:
        m = n * (n + 1) // 2
        hyp2 = [0] * m
        hyp2[1] = 1                      # (0,1): x1*x2
        # (2,3) coefficient sits at row-major upper position:
        pos = 0
        for i in range(n):
            for j in range(i, n):
                if (i, j) == (2, 3):
                    hyp2[pos] = 1
                pos += 1
        if _matches_shape(Q, hyp2, budget):
            return CASE_HYPERBOLIC_PAIR
    return None


@dataclass(frozen=True)
class ReflectionStatus:
    generates: bool
    exceptional: str | None
    reflection_count: int
    closure_order: int
    weak_order: int


def reflection_generation_status(Q, budget=None):
    """Do the reflections of Q generate the weak orthogonal group?

    Computes the closure of all reflections and compares it with O'(Q),
    then independently matches Q against the two exceptional shapes (only
    over the two-element field); the two verdicts must agree, and a
    disagreement raises instead of being swallowed.
    """
    from .quadform import all_vectors, qf_eval, reflection

    field, n = Q.field, Q.n
    refs = []
    for xe in all_vectors(field, n):
        x = Mat.column(field, xe)
        if qf_eval(Q, x) != field.zero:
            refs.append(reflection(Q, x))
    gen = closure(field, n, refs, budget)
    weak = weak_orthogonal_group(Q, budget)
    for A in gen.elems:
        assert A in set(weak.elems), "reflection closure escaped O'"
    generates = group_equal(gen, weak)
    exceptional = _exceptional_shape(Q, budget)
    assert generates == (exceptional is None), (
        "taxonomy mismatch for %r: closure order %d, weak order %d, tag %r"
        % (Q, gen.order, weak.order, exceptional))
    return ReflectionStatus(
        generates=generates,
        exceptional=exceptional,
        reflection_count=len(refs),
        closure_order=gen.order,
        weak_order=weak.order,
    )
