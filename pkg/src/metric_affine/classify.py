"""Exhaustive verification of the classification results.

The central question: for which pairs (Q on V, Qt on F x V*) does the dual
representation of the motion group of (V, Q) — or of the weak motion group —
coincide with the weak orthogonal group of Qt?  In large enough cases the
answer is exactly {(Q, c . lift(Q)) : polar form of Q non-degenerate}; in a
handful of small (dim, |F|) combinations there are extra sporadic pairs,
which are pinned down here as embedded fixtures and re-derived from scratch
by brute force.

All sweeps are exhaustive over every form on both sides; nothing is sampled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import (GroupSet, enumerate_gl, form_values_np, group_equal,
                     is_subgroup, vectors_np, weak_orthogonal_group,
                     orthogonal_group)
from .homog import (DegeneratePolarForm, NotDroppable, drop, lift,
                    motion_group_dual)
from .linalg import Mat, annihilator, kernel_basis, unit_vector, vec
from .quadform import (QForm, enumerate_forms, is_nondegenerate, poly_str,
                       polar, qf_proportional, qf_scale)

MODE_MOTION = "motion"       # full motion group on the left
MODE_WEAK = "weak"           # weak motion group on the left
MODES = (MODE_MOTION, MODE_WEAK)

_AO_CACHE = {}


def _form_key(Q):
    return (Q.field.name, Q.n, Q.upper_coeffs())


def motion_dual_cached(Q, weak, budget=None):
    key = (_form_key(Q), bool(weak))
    got = _AO_CACHE.get(key)
    if got is None:
        got = _AO_CACHE[key] = motion_group_dual(Q, weak, budget)
    return got


def weak_orth_cached(Qt, budget=None):
    # weak_orthogonal_group memoizes internally; kept as a named hook
    return weak_orthogonal_group(Qt, budget)


@dataclass(frozen=True)
class DyadReport:
    Q: QForm
    Qt: QForm
    satisfies_motion: bool
    satisfies_weak: bool
    is_lift_of: object  # scalar c with Qt = c . lift(Q), or None


def dyad_report(Q, Qt, budget=None):
    """Evaluate both defining equations for the pair, plus the lift scalar."""
    assert Qt.n == Q.n + 1 and Qt.field is Q.field
    ow = weak_orth_cached(Qt, budget)
    sat_m = group_equal(motion_dual_cached(Q, False, budget), ow)
    sat_w = group_equal(motion_dual_cached(Q, True, budget), ow)
    c = None
    if is_nondegenerate(Q):
        c = qf_proportional(lift(Q), Qt)
    return DyadReport(Q=Q, Qt=Qt, satisfies_motion=sat_m,
                      satisfies_weak=sat_w, is_lift_of=c)


def dyad_satisfies(Q, Qt, mode, budget=None):
    """Does the (mode) motion group of Q, seen on F x V*, equal O'(Qt)?"""
    assert mode in MODES, mode
    rep = dyad_report(Q, Qt, budget)
    return rep.satisfies_motion if mode == MODE_MOTION else rep.satisfies_weak


@dataclass(frozen=True)
class MainPropReport:
    field_name: str
    n: int
    forms_checked: int
    scalars_each: int
    failures: tuple

    @property
    def ok(self):
        return not self.failures


def verify_main_prop(fld, n, budget=None):
    """Every non-degenerate Q and every c != 0: (Q, c lift(Q)) satisfies the
    motion-group equation.  Exhaustive; failures collected, none expected."""
    failures = []
    checked = 0
    units = fld.units()
    for Q in enumerate_forms(fld, n):
        if not is_nondegenerate(Q):
            continue
        checked += 1
        for c in units:
            Qt = qf_scale(lift(Q), c)
            if not dyad_satisfies(Q, Qt, MODE_MOTION, budget):
                failures.append((Q, c))
    return MainPropReport(fld.name, n, checked, len(units), tuple(failures))


def _exceptional_size(fld, n):
    """The (dim, |F|) combinations where sporadic solutions exist."""
    return ((n == 0 and fld.char == 2)
            or (n == 1 and fld.order is not None and fld.order <= 3)
            or (n == 2 and fld.order == 2))


def solve_for_qtilde(Q, mode, budget=None):
    """All Qt on F x V* satisfying the (mode) equation against Q.

    Outside the exceptional (dim, |F|) sizes the outcome is forced: exactly
    {c lift(Q) : c != 0} when the polar form of Q is non-degenerate, and
    nothing at all otherwise.  That consequence is asserted here; the small
    exceptional sizes are handled by the table machinery instead.
    """
    assert mode in MODES, mode
    fld, n = Q.field, Q.n
    target = motion_dual_cached(Q, mode == MODE_WEAK, budget)
    sols = []
    for Qt in enumerate_forms(fld, n + 1):
        ow = weak_orth_cached(Qt, budget)
        if ow.order == target.order and group_equal(ow, target):
            sols.append(Qt)
    if not _exceptional_size(fld, n):
        if is_nondegenerate(Q):
            expected = {qf_scale(lift(Q), c) for c in fld.units()}
            assert set(sols) == expected, (Q, mode, sols)
        else:
            assert not sols, (Q, mode, sols)
    return sols


# --- tables ----------------------------------------------------------------

@dataclass(frozen=True)
class TableFixture:
    """One sporadic-solution table, transcribed as upper-coefficient data.

    blocks: ((lefts...), (rights...)) per block; every left pairs with every
    right.  rows: the printed row layout, None marking a blank cell.
    weak_proper: the lefts whose weak motion group is a proper subgroup of
    the full one.  stabilizers: per block, None for "all of GL" or a vector
    fixed by exactly the block's shared orthogonal group.
    """

    dim: int
    field_name: str
    blocks: tuple
    rows: tuple
    weak_proper: tuple
    stabilizers: tuple


_FIXTURES = {}


def _add_fixture(fx):
    _FIXTURES[(fx.dim, fx.field_name)] = fx


_add_fixture(TableFixture(
    dim=0, field_name="GF(2)",
    blocks=((((),), ((0,), (1,))),),
    rows=(((), (0,)), (None, (1,))),
    weak_proper=(),
    stabilizers=(None,),
))

_add_fixture(TableFixture(
    dim=0, field_name="GF(4)",
    blocks=((((),), ((0,), (1,), (2,), (3,))),),
    rows=(((), (0,)), (None, (1,)), (None, (2,)), (None, (3,))),
    weak_proper=(),
    stabilizers=(None,),
))

_add_fixture(TableFixture(
    dim=1, field_name="GF(2)",
    blocks=((((0,), (1,)), ((1, 1, 0),)),),
    rows=((None, (1, 1, 0)), ((0,), None), ((1,), None)),
    weak_proper=(),
    stabilizers=(None,),
))

_add_fixture(TableFixture(
    dim=1, field_name="GF(3)",
    blocks=((((1,), (2,), (0,)), ((0, 0, 1), (0, 0, 2))),),
    rows=(((1,), (0, 0, 1)), ((2,), (0, 0, 2)), ((0,), None)),
    weak_proper=((0,),),
    stabilizers=(None,),
))

# The two-dimensional binary table.  The right-hand cells of the last two
# blocks are swapped relative to the printed source: both the row pairing
# (right = lift of left) and the block pairing (shared groups) only come out
# under x1^2+x1x2 <-> a1a2+a2^2 and x1x2+x2^2 <-> a1^2+a1a2, which is also
# what the exhaustive dyad sweep returns.
_add_fixture(TableFixture(
    dim=2, field_name="GF(2)",
    blocks=(
        (((1, 1, 1), (0, 0, 0)), ((0, 0, 0, 1, 1, 1),)),
        (((0, 1, 0), (1, 0, 1)), ((0, 0, 0, 0, 1, 0),)),
        (((1, 1, 0), (0, 0, 1)), ((0, 0, 0, 0, 1, 1),)),
        (((0, 1, 1), (1, 0, 0)), ((0, 0, 0, 1, 1, 0),)),
    ),
    rows=(
        ((1, 1, 1), (0, 0, 0, 1, 1, 1)), ((0, 0, 0), None),
        ((0, 1, 0), (0, 0, 0, 0, 1, 0)), ((1, 0, 1), None),
        ((1, 1, 0), (0, 0, 0, 0, 1, 1)), ((0, 0, 1), None),
        ((0, 1, 1), (0, 0, 0, 1, 1, 0)), ((1, 0, 0), None),
    ),
    weak_proper=((0, 0, 0), (1, 0, 1), (0, 0, 1), (1, 0, 0)),
    stabilizers=(None, (1, 1), (1, 0), (0, 1)),
))

SUPPORTED_TABLES = tuple(sorted(_FIXTURES))


@dataclass(frozen=True)
class TableReport:
    dim: int
    field_name: str
    blocks: tuple          # computed ((lefts QForms), (rights QForms))
    rows: tuple            # printed layout: (QForm | None, QForm | None)
    row_pairs: tuple       # (Q, Qt) for rows with both cells
    expected_match: bool   # computed dyad structure == fixture
    rows_ok: bool          # lift/drop claims row by row
    motion_eq_ok: bool     # every sporadic pair satisfies the motion equation
    shared_groups_ok: bool # per-block common O / common O'
    weak_proper_ok: bool   # proper-subgroup claims match the fixture
    stabilizers_ok: bool   # named stabilizer vectors generate the block's O
    mismatch: tuple        # human-readable diff lines when something failed

    @property
    def ok(self):
        return (self.expected_match and self.rows_ok and self.motion_eq_ok
                and self.shared_groups_ok and self.weak_proper_ok
                and self.stabilizers_ok)


def _stabilizer_group(fld, n, v, budget=None):
    keep = [A for A in enumerate_gl(fld, n, budget).mats() if A * v == v]
    return GroupSet.from_mats(fld, n, keep)


def reproduce_table(dim, fld, budget=None):
    """Re-derive one sporadic table from scratch and diff it against the
    transcribed fixture; every side claim is re-checked as well."""
    fx = _FIXTURES.get((dim, fld.name))
    if fx is None:
        raise ValueError("no table for dim=%r over %s (have: %s)"
                         % (dim, fld.name, ", ".join(map(str, SUPPORTED_TABLES))))
    mismatch = []

    lefts_all = enumerate_forms(fld, dim)
    rights_all = enumerate_forms(fld, dim + 1)
    pairs = []
    for Q in lefts_all:
        for Qt in rights_all:
            rep = dyad_report(Q, Qt, budget)
            if rep.satisfies_motion or rep.satisfies_weak:
                pairs.append((Q, Qt, rep))

    motion_eq_ok = all(rep.satisfies_motion for _, _, rep in pairs)
    if not motion_eq_ok:
        mismatch.append("a sporadic pair satisfies only the weak equation")

    # group pairs into complete-bipartite blocks via the shared right group
    by_group = {}
    for Q, Qt, _rep in pairs:
        key = weak_orth_cached(Qt, budget).elems
        entry = by_group.setdefault(key, (set(), set()))
        entry[0].add(Q)
        entry[1].add(Qt)
    computed_blocks = {(frozenset(l), frozenset(r)) for l, r in by_group.values()}
    for lefts, rights in computed_blocks:
        for Q in lefts:
            for Qt in rights:
                assert (Q, Qt) in {(a, b) for a, b, _ in pairs}, \
                    "block structure is not complete bipartite"

    fixture_blocks = {
        (frozenset(QForm.from_upper(fld, dim, u) for u in lefts),
         frozenset(QForm.from_upper(fld, dim + 1, u) for u in rights))
        for lefts, rights in fx.blocks}
    expected_match = computed_blocks == fixture_blocks
    if not expected_match:
        mismatch.append("computed blocks: %s" % _render_blocks(computed_blocks))
        mismatch.append("fixture blocks:  %s" % _render_blocks(fixture_blocks))

    # row claims: both cells <-> mutually inverse lift/drop; a single blank
    # cell <-> the lift (resp. drop) hypothesis genuinely fails
    rows_ok = True
    row_pairs = []
    for left_u, right_u in fx.rows:
        if left_u is not None and right_u is not None:
            Q = QForm.from_upper(fld, dim, left_u)
            Qt = QForm.from_upper(fld, dim + 1, right_u)
            if lift(Q) != Qt or drop(Qt) != Q:
                rows_ok = False
                mismatch.append("row pair broken: %s | %s"
                                % (poly_str(Q), poly_str(Qt, "a", 0)))
            else:
                row_pairs.append((Q, Qt))
        elif right_u is None:
            Q = QForm.from_upper(fld, dim, left_u)
            try:
                lift(Q)
            except DegeneratePolarForm:
                pass
            else:
                rows_ok = False
                mismatch.append("blank-right row is liftable: %s" % poly_str(Q))
        else:
            Qt = QForm.from_upper(fld, dim + 1, right_u)
            try:
                drop(Qt)
            except NotDroppable:
                pass
            else:
                rows_ok = False
                mismatch.append("blank-left row is droppable: %s"
                                % poly_str(Qt, "a", 0))

    # shared groups inside each computed block
    shared_groups_ok = True
    for lefts, rights in computed_blocks:
        o_groups = {orthogonal_group(Q, budget).elems for Q in lefts}
        w_groups = {weak_orth_cached(Qt, budget).elems for Qt in rights}
        if len(o_groups) != 1 or len(w_groups) != 1:
            shared_groups_ok = False
            mismatch.append("block does not share its groups")

    # where is the weak motion group a proper subgroup?
    weak_proper_ok = True
    expected_proper = {QForm.from_upper(fld, dim, u) for u in fx.weak_proper}
    for Q in lefts_all:
        ao = motion_dual_cached(Q, False, budget)
        aow = motion_dual_cached(Q, True, budget)
        assert is_subgroup(aow, ao)
        proper = ao.order > aow.order
        if proper != (Q in expected_proper):
            weak_proper_ok = False
            mismatch.append("proper-subgroup claim off for %s" % poly_str(Q))

    # named stabilizer vectors (and full-GL blocks)
    stabilizers_ok = True
    fixture_ordered = [
        (frozenset(QForm.from_upper(fld, dim, u) for u in lefts),
         frozenset(QForm.from_upper(fld, dim + 1, u) for u in rights))
        for lefts, rights in fx.blocks]
    for (lefts, _rights), stab in zip(fixture_ordered, fx.stabilizers):
        sample = next(iter(lefts))
        o_group = orthogonal_group(sample, budget)
        if stab is None:
            want = enumerate_gl(fld, dim, budget)
        else:
            want = _stabilizer_group(fld, dim, vec(fld, stab), budget)
        if not group_equal(o_group, want):
            stabilizers_ok = False
            mismatch.append("stabilizer claim off for block of %s"
                            % poly_str(sample))

    blocks_out = tuple(
        (tuple(sorted(l, key=lambda f: f.upper_coeffs())),
         tuple(sorted(r, key=lambda f: f.upper_coeffs())))
        for l, r in sorted(
            computed_blocks,
            key=lambda b: sorted(f.upper_coeffs() for f in b[0])))
    rows_out = tuple(
        (None if lu is None else QForm.from_upper(fld, dim, lu),
         None if ru is None else QForm.from_upper(fld, dim + 1, ru))
        for lu, ru in fx.rows)
    return TableReport(
        dim=dim, field_name=fld.name, blocks=blocks_out, rows=rows_out,
        row_pairs=tuple(row_pairs), expected_match=expected_match,
        rows_ok=rows_ok, motion_eq_ok=motion_eq_ok,
        shared_groups_ok=shared_groups_ok, weak_proper_ok=weak_proper_ok,
        stabilizers_ok=stabilizers_ok, mismatch=tuple(mismatch))


def _render_blocks(blocks):
    out = []
    for lefts, rights in sorted(
            blocks, key=lambda b: sorted(f.upper_coeffs() for f in b[0])):
        ls = ", ".join(sorted(poly_str(Q) for Q in lefts))
        rs = ", ".join(sorted(poly_str(Qt, "a", 0) for Qt in rights))
        out.append("[%s | %s]" % (ls, rs))
    return "  ".join(out)


def render_table_lines(report):
    """The block table as fixed-width text, horizontal rules between blocks."""
    fx = _FIXTURES[(report.dim, report.field_name)]
    cells = []
    block_of = []
    for (lu, ru), (Q, Qt) in zip(fx.rows, report.rows):
        cells.append(("" if Q is None else poly_str(Q),
                      "" if Qt is None else poly_str(Qt, "a", 0)))
        for bi, (lefts, rights) in enumerate(fx.blocks):
            if (lu is not None and lu in lefts) or \
                    (ru is not None and ru in rights):
                block_of.append(bi)
                break
    assert len(block_of) == len(cells)
    head = ("Q on V", "Qt on F x V*")
    w0 = max(len(head[0]), *(len(a) for a, _ in cells))
    w1 = max(len(head[1]), *(len(b) for _, b in cells))
    rule = "-" * (w0 + 2) + "+" + "-" * (w1 + 2)
    lines = ["%s over %s, dim %d" % (
        "table of sporadic solution pairs", report.field_name, report.dim),
        (" %-*s | %-*s" % (w0, head[0], w1, head[1])).rstrip(), rule]
    prev = block_of[0] if block_of else None
    for (a, b), bi in zip(cells, block_of):
        if bi != prev:
            lines.append(rule)
            prev = bi
        lines.append((" %-*s | %-*s" % (w0, a, w1, b)).rstrip())
    return lines


# --- projective view -------------------------------------------------------

def projective_rep(fld, entries):
    """Scale so the first non-zero entry (in order) becomes 1."""
    entries = tuple(entries)
    for x in entries:
        if x != fld.zero:
            inv = fld.inv(x)
            return tuple(fld.mul(inv, e) for e in entries)
    return entries


def projective_reduce(gs):
    """The induced collineation set: each matrix rescaled so its first
    non-zero entry (row-major) is 1, duplicates merged."""
    fld = gs.field
    out = []
    for A in gs.mats():
        flat = [x for row in A.rows for x in row]
        scaled = projective_rep(fld, flat)
        n = gs.n
        out.append(Mat(fld, [scaled[i * n:(i + 1) * n] for i in range(n)],
                       (n, n)))
    return GroupSet.from_mats(fld, gs.n, out)


_PROJ_CACHE = {}


def _proj_cached(gs):
    got = _PROJ_CACHE.get((gs.field.name, gs.n, gs.elems))
    if got is None:
        got = _PROJ_CACHE[(gs.field.name, gs.n, gs.elems)] = projective_reduce(gs)
    return got


@dataclass(frozen=True)
class ProjectiveReport:
    field_name: str
    n: int
    pairs_checked: int
    exclusion_hits: int
    witness_confirmed: bool
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def verify_projective_theorem(fld, n, budget=None):
    """If O'(Qt) induces the same collineations as a motion group of Q, the
    linear groups must already agree — except in dimension 0 over odd
    characteristic with Qt non-zero.  Checked for every (Q, Qt) pair."""
    violations = []
    exclusion_hits = 0
    witness = False
    checked = 0
    for Q in enumerate_forms(fld, n):
        ao = motion_dual_cached(Q, False, budget)
        aow = motion_dual_cached(Q, True, budget)
        p_ao = _proj_cached(ao)
        p_aow = _proj_cached(aow)
        for Qt in enumerate_forms(fld, n + 1):
            checked += 1
            ow = weak_orth_cached(Qt, budget)
            p_ow = _proj_cached(ow)
            if not (group_equal(p_ow, p_ao) or group_equal(p_ow, p_aow)):
                continue
            linear_same = group_equal(ao, ow)
            excluded = (n == 0 and fld.char != 2 and not Qt.is_zero())
            if excluded:
                exclusion_hits += 1
                if not linear_same:
                    witness = True
                continue
            if not linear_same:
                violations.append((Q, Qt))
    return ProjectiveReport(fld.name, n, checked, exclusion_hits, witness,
                            tuple(violations))


# --- the absolute quadric and its dual description -------------------------

def _projective_canon_np(fld, rows):
    """Canonicalise each nonzero row to its projective representative.

    Bulk counterpart of projective_rep for prime fields, where the codes
    carry mod-p arithmetic; rows full of zeros are dropped.
    """
    assert fld.order == fld.char, "bulk canonicalisation needs a prime field"
    rows = np.asarray(rows, dtype=np.int64)
    nz = rows != 0
    keep = nz.any(axis=1)
    rows, nz = rows[keep], nz[keep]
    if not len(rows):
        return rows
    first = nz.argmax(axis=1)
    inv = np.array([0] + [fld.inv(c) for c in range(1, fld.order)],
                   dtype=np.int64)
    lead = rows[np.arange(len(rows)), first]
    return (rows * inv[lead][:, np.newaxis]) % fld.order


_PENCIL_CACHE = {}


def _tangent_pencil(fld, n, bx):
    """Annihilators of the hyperplanes of F x V containing {0} x ker(bx).

    The tangent space at a quadric point x enters only through the
    functional bx = B x, so the whole derivation — kernel, embedding at
    infinity, annihilator, projective span — is memoized on bx; across a
    sweep the same few functionals recur for thousands of forms.
    """
    key = (fld.name, n, bx)
    got = _PENCIL_CACHE.get(key)
    if got is not None:
        return got
    row = vec(fld, bx).T
    tangent = kernel_basis(row)              # n-1 directions in V
    assert len(tangent) == n - 1
    at_infinity = [vec(fld, (fld.zero,) + tuple(y.entries()))
                   for y in tangent]         # inside F x V
    pencil = annihilator(fld, n + 1, at_infinity)
    assert len(pencil) == 2
    span = np.array([p.entries() for p in pencil], dtype=np.int64)
    q = fld.order
    combos = np.array([(c0, c1) for c0 in range(q) for c1 in range(q)],
                      dtype=np.int64)
    canon = _projective_canon_np(fld, (combos @ span) % q)
    got = frozenset(map(tuple, canon.tolist()))
    _PENCIL_CACHE[key] = got
    return got


def quadric_points(Q):
    """Canonical projective representatives of the null set of Q."""
    fld, n = Q.field, Q.n
    if n == 0:
        return set()
    vals = form_values_np(Q)        # one entry per vector, index-aligned
    vecs = vectors_np(fld, n)
    null = np.flatnonzero(vals == 0)
    null = null[null != 0]          # drop the zero vector
    if fld.order == fld.char:
        canon = _projective_canon_np(fld, vecs[null])
        return set(map(tuple, canon.tolist()))
    return {projective_rep(fld, tuple(int(c) for c in vecs[i]))
            for i in null}


@dataclass(frozen=True)
class QuadricReport:
    field_name: str
    n: int
    status: str            # ok | empty-quadric | char-2-excluded |
                           # dim-too-small | degenerate-polar | mismatch
    base_points: int
    lifted_points: int
    hyperplane_points: int
    details: tuple

    @property
    def ok(self):
        return self.status in ("ok", "empty-quadric")


def quadric_duality_check(Q):
    """The lifted quadric equals the annihilators of the hyperplanes that
    contain a maximal tangent space of the base quadric at infinity.

    Verified point by point in both directions (the distinguished vertex is
    left out on the lifted side, and re-checked separately against the
    hyperplane at infinity).  Characteristic 2 is excluded by design: the
    description is not established there.
    """
    fld, n = Q.field, Q.n
    if fld.char == 2:
        return QuadricReport(fld.name, n, "char-2-excluded", 0, 0, 0, ())
    if n < 2:
        return QuadricReport(fld.name, n, "dim-too-small", 0, 0, 0, ())
    if not is_nondegenerate(Q):
        return QuadricReport(fld.name, n, "degenerate-polar", 0, 0, 0, ())
    base = quadric_points(Q)
    if not base:
        return QuadricReport(fld.name, n, "empty-quadric", 0, 0, 0, ())

    up = lift(Q)
    lifted = quadric_points(up)
    vertex = projective_rep(fld, unit_vector(fld, n + 1, 0).entries())

    B = polar(Q)
    rhs = set()
    for x in base:
        rhs |= _tangent_pencil(fld, n, tuple((B * vec(fld, x)).entries()))

    details = []
    for a in sorted(rhs):
        if a not in lifted:
            details.append(("hyperplane-annihilator-off-quadric", a))
    for a in sorted(lifted - {vertex}):
        if a not in rhs:
            details.append(("quadric-point-not-an-annihilator", a))
    if vertex not in rhs:
        details.append(("vertex-missing-from-annihilators", vertex))
    status = "ok" if not details else "mismatch"
    return QuadricReport(fld.name, n, status, len(base), len(lifted),
                         len(rhs), tuple(details))
