"""The homogeneous model: affinities as (n+1)-matrices, and form lifting.

An affinity x |-> t + A x of F^n embeds into GL(n+1) twice over:

  * `point_matrix` acts on the space F x V of "homogenised points",
    (x0, x) |-> (x0, x0 t + A x), with block matrix [[1, 0], [t, A]];
  * `dual_matrix` acts on F x V*, the dual side, and is the inverse
    transpose [[1, -t^T A^-T], [0, A^-T]].

The dual picture fixes the distinguished vector e0 = (1, o*), and the maps
fixing e0's line elementwise are exactly the dual images of affinities,
which is what `dual_matrix_preimage` inverts.

A form Q on V with non-degenerate polar form B has a companion form on
F x V* ("lift"): the Gram matrix is diag(0, B^-1 W B^-1).  The companion
vanishes on e0 and has exactly the line through e0 as the radical of its
polar form; "drop" inverts the construction.  Motions of (V, Q) turn into
isometries of the lifted form under the dual representation, which is what
the classification machinery in classify.py exploits.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .groups import GroupSet
from .linalg import Mat, mat_invert, span_contains, unit_vector, vec
from .quadform import (QForm, is_isometry, is_nondegenerate, poly_str, polar,
                       polar_apply, qf_eval, qf_scale, radical_basis,
                       reflection)


class DegeneratePolarForm(Exception):
    """Lift needs an invertible polar matrix; this form has a radical."""


class NotDroppable(Exception):
    """The form upstairs fails a drop precondition; `reason` says which."""

    REASON_VALUE = "nonzero-at-distinguished-point"
    REASON_RADICAL = "radical-not-distinguished-line"

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__("%s%s" % (reason, (": " + detail) if detail else ""))


@dataclass(frozen=True)
class AffineMap:
    """x |-> t + A x with invertible linear part A; (t, A) is unique."""

    t: Mat
    A: Mat

    def __post_init__(self):
        assert self.t.ncols == 1 and self.t.nrows == self.A.nrows
        assert self.A.nrows == self.A.ncols

    @classmethod
    def identity(cls, fld, n):
        return cls(Mat.zeros(fld, n, 1), Mat.identity(fld, n))

    @classmethod
    def translation(cls, t):
        return cls(t, Mat.identity(t.field, t.nrows))

    @property
    def is_translation(self):
        return self.A.is_identity()

    def apply(self, x):
        return self.t + self.A * x

    def compose(self, other):
        """self after other: x |-> self(other(x))."""
        return AffineMap(self.t + self.A * other.t, self.A * other.A)

    def inverse(self):
        Ainv = mat_invert(self.A)
        return AffineMap(-(Ainv * self.t), Ainv)


@dataclass(frozen=True)
class HomogModel:
    """Fixed coordinates for F x V and F x V*, plus the structural maps."""

    fld: object
    n: int
    embed: Mat = dc_field(init=False)        # V -> F x V, x |-> (0, x)
    project: Mat = dc_field(init=False)      # F x V -> V, (x0, x) |-> x
    e0: Mat = dc_field(init=False)           # (1, o*) in F x V* coordinates

    def __post_init__(self):
        F, n = self.fld, self.n
        z, o = F.zero, F.one
        emb = Mat(F, [[z] * n] + [[o if i == j else z for j in range(n)]
                                  for i in range(n)], (n + 1, n))
        object.__setattr__(self, "embed", emb)
        object.__setattr__(self, "project", emb.T)
        object.__setattr__(self, "e0", unit_vector(F, n + 1, 0))


def homog_model(fld, n):
    return HomogModel(fld, n)


def point_matrix(model, gamma):
    """The (n+1)-matrix [[1, 0],[t, A]] acting on (x0, x) columns."""
    F, n = model.fld, model.n
    z, o = F.zero, F.one
    rows = [[o] + [z] * n]
    for i in range(n):
        rows.append([gamma.t[i, 0]] + list(gamma.A.rows[i]))
    return Mat(F, rows, (n + 1, n + 1))


def dual_matrix(model, gamma):
    """The action on (a0, a*) columns: [[1, -t^T A^-T], [0, A^-T]].

    This is exactly the inverse transpose of point_matrix(gamma), and its
    first column is e0, i.e. the distinguished dual vector stays put.
    """
    F, n = model.fld, model.n
    z, o = F.zero, F.one
    Ainv = mat_invert(gamma.A)
    head = (Ainv * gamma.t).entries()  # -t^T A^-T as a column, then negate
    rows = [[o] + [F.neg(x) for x in head]]
    AinvT = Ainv.T
    for i in range(n):
        rows.append([z] + list(AinvT.rows[i]))
    out = Mat(F, rows, (n + 1, n + 1))
    assert out.col(0) == model.e0
    return out


def dual_matrix_preimage(model, kappa):
    """The affinity gamma with dual_matrix(gamma) = kappa, if one exists.

    Returns None unless the first column of kappa is e0 (kappa must fix the
    distinguished dual vector, not just its line).
    """
    F, n = model.fld, model.n
    assert kappa.nrows == kappa.ncols == n + 1
    if kappa.col(0) != model.e0:
        return None
    M = kappa.submatrix(range(1, n + 1), range(1, n + 1))   # A^-T
    A = mat_invert(M.T)
    u = vec(F, kappa.rows[0][1:])                           # -t^T A^-T as row
    t = -(A * u)
    gamma = AffineMap(t, A)
    assert dual_matrix(model, gamma) == kappa
    return gamma


def lift(Q):
    """The companion form on F x V*: Gram diag(0, B^-1 W B^-1).

    Only defined when the polar form B is non-degenerate; the result
    vanishes at e0 and its polar radical is exactly the line F e0 (both
    asserted).
    """
    F, n = Q.field, Q.n
    if radical_basis(Q):
        raise DegeneratePolarForm(
            "polar form of %s is degenerate" % poly_str(Q))
    Binv = mat_invert(polar(Q))
    core = Binv * Q.gram * Binv
    z = F.zero
    rows = [[z] * (n + 1)]
    for i in range(n):
        rows.append([z] + list(core.rows[i]))
    out = QForm(F, Mat(F, rows, (n + 1, n + 1)))
    model = homog_model(F, n)
    assert qf_eval(out, model.e0) == F.zero
    rad = radical_basis(out)
    assert len(rad) == 1 and span_contains(rad, model.e0)
    return out


def drop(Qt):
    """Inverse of lift: from a form on F x V* back down to one on V.

    Preconditions (NotDroppable, with `reason` saying which one failed):
    Qt vanishes at e0, and the radical of its polar form is the line F e0.
    """
    F = Qt.field
    n = Qt.n - 1
    assert n >= 0, "a form on F x V* lives in dimension >= 1"
    model = homog_model(F, n)
    if qf_eval(Qt, model.e0) != F.zero:
        raise NotDroppable(NotDroppable.REASON_VALUE, poly_str(Qt, "a", 0))
    rad = radical_basis(Qt)
    if len(rad) != 1 or not span_contains(rad, model.e0):
        raise NotDroppable(NotDroppable.REASON_RADICAL, poly_str(Qt, "a", 0))
    body = list(range(1, n + 1))
    S = polar(Qt).submatrix(body, body)
    Wsub = Qt.gram.submatrix(body, body)
    Sinv = mat_invert(S)
    out = QForm(F, Sinv * Wsub * Sinv)
    assert is_nondegenerate(out)
    return out


@dataclass(frozen=True)
class RoundtripReport:
    field_name: str
    n: int
    lifted: int
    dropped: int
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def roundtrip_checks(fld, n):
    """Exhaustively check lift/drop inversion and the scaling law on dim n.

    For forms Q on V (dim n) with non-degenerate polar form:
      drop(lift(Q)) = Q, and lift(cQ) = c^-1 lift(Q) for every c != 0 —
      so {lift(cQ) : c != 0} and {c lift(Q) : c != 0} are the same set.
    For forms Qt on dim n satisfying the drop preconditions:
      lift(drop(Qt)) = Qt.
    """
    from .quadform import enumerate_forms
    violations = []
    lifted = dropped = 0
    units = fld.units()
    for Q in enumerate_forms(fld, n):
        if not is_nondegenerate(Q):
            continue
        lifted += 1
        up = lift(Q)
        if drop(up) != Q:
            violations.append(("drop-lift", Q))
        scaled_lifts = set()
        lift_scalings = set()
        for c in units:
            lc = lift(qf_scale(Q, c))
            scaled_lifts.add(lc)
            lift_scalings.add(qf_scale(up, c))
            if lc != qf_scale(up, fld.inv(c)):
                violations.append(("scaling", Q, c))
        if scaled_lifts != lift_scalings:
            violations.append(("scaling-set", Q))
    if n >= 1:
        for Qt in enumerate_forms(fld, n):
            try:
                down = drop(Qt)
            except NotDroppable:
                continue
            dropped += 1
            if lift(down) != Qt:
                violations.append(("lift-drop", Qt))
    return RoundtripReport(fld.name, n, lifted, dropped, tuple(violations))


def motion_group_dual(Q, weak, budget=None):
    """All motions of (V, Q) pushed through the dual representation.

    A motion is an affinity whose linear part preserves Q (and fixes the
    radical pointwise in the `weak` variant); the result is the GroupSet of
    their (n+1)-matrices on F x V*, of order q^n * |O| (resp. |O'|).
    """
    from .groups import orthogonal_group, weak_orthogonal_group
    from .quadform import all_vectors

    F, n = Q.field, Q.n
    model = homog_model(F, n)
    linear = (weak_orthogonal_group if weak else orthogonal_group)(Q, budget)
    mats = []
    translations = [vec(F, t) for t in all_vectors(F, n)]
    for A in linear.mats():
        for t in translations:
            mats.append(dual_matrix(model, AffineMap(t, A)))
    out = GroupSet.from_mats(F, n + 1, mats)
    assert out.order == (F.order ** n) * linear.order
    return out


def motion_group_beta(Q, weak, budget=None):
    """Alias for motion_group_dual: the dual action is the beta
    representation of the affine group."""
    return motion_group_dual(Q, weak, budget)


def affine_reflection(Q, p, r):
    """The affine reflection x |-> x - Q(r)^-1 B(r, x - p) r.

    Linear part: the reflection along r; translation: Q(r)^-1 B(r,p) r.
    Its linear part lands in the weak orthogonal group (asserted).
    """
    F = Q.field
    if not isinstance(p, Mat):
        p = vec(F, p)
    if not isinstance(r, Mat):
        r = vec(F, r)
    A = reflection(Q, r)  # raises NotReflectable when Q(r) = 0
    c = F.mul(F.inv(qf_eval(Q, r)), polar_apply(Q, r, p))
    t = r.scale(c)
    assert is_isometry(Q, A)
    assert all(A * rad == rad for rad in radical_basis(Q))
    gamma = AffineMap(t, A)
    assert gamma.apply(p) == p, "the axis point must stay fixed"
    return gamma


def reflection_correspondence(Q, p, r):
    """Dual image of the affine reflection == reflection of the lifted form
    in the direction (-B(r,p), B r).  Returns the comparison verdict."""
    F, n = Q.field, Q.n
    if not isinstance(p, Mat):
        p = vec(F, p)
    if not isinstance(r, Mat):
        r = vec(F, r)
    model = homog_model(F, n)
    lhs = dual_matrix(model, affine_reflection(Q, p, r))
    up = lift(Q)
    direction = vec(F, [F.neg(polar_apply(Q, r, p))] + list((polar(Q) * r).entries()))
    rhs = reflection(up, direction)
    return lhs == rhs
