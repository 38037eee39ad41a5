"""Group enumeration: GL, orthogonal, weak orthogonal, closures, budgets."""

import os

import numpy as np
import pytest

from metric_affine.fields import GF2, GF3, GF4, GF5
from metric_affine.groups import (BudgetExceeded, GroupSet, closure,
                                  congruence_orbit, enumerate_gl,
                                  group_budget, group_equal, is_subgroup,
                                  isometry_mask, matmul_np, mat_to_np,
                                  np_to_mat, order_gl, orthogonal_group,
                                  reflection_generation_status,
                                  weak_orthogonal_group)
from metric_affine.linalg import Mat, vec
from metric_affine.quadform import QForm, enumerate_forms, is_isometry

# group orders from the product formula, |GL_n(q)| = prod (q^n - q^i)
GL_ORDERS = {
    (2, 2): 6, (3, 2): 168, (4, 2): 20160,
    (2, 3): 48, (3, 3): 11232,
    (2, 4): 180, (2, 5): 480, (2, 7): 2016,
}


@pytest.mark.parametrize("nq,order", sorted(GL_ORDERS.items()))
def test_order_gl_formula(nq, order):
    assert order_gl(*nq) == order


def test_enumerate_gl_matches_formula():
    for F, n in ((GF2, 1), (GF2, 2), (GF2, 3), (GF3, 2), (GF4, 2), (GF5, 2)):
        G = enumerate_gl(F, n)
        assert G.order == order_gl(n, F.order)


def test_gl_zero_dim():
    G = enumerate_gl(GF3, 0)
    assert G.order == 1  # the empty matrix


def test_enumerate_gl_elements_are_invertible():
    # spot-check: no singular matrix sneaks into the GF(4) stack
    from metric_affine.linalg import mat_invert
    G = enumerate_gl(GF4, 2)
    for A in list(G.mats())[::17]:
        mat_invert(A)  # raises Singular if not


# frozen orthogonal-group orders, computed once by the brute-force filter
# and cross-checked against the rank-one intersection counts
ORTH_ORDERS = [
    (GF2, 2, (0, 1, 0), 2, 2),      # hyperbolic plane: {id, swap}
    (GF2, 2, (1, 1, 1), 6, 6),      # anisotropic plane: all of GL
    (GF2, 2, (1, 1, 0), 2, 2),
    (GF3, 2, (1, 0, 1), 8, 8),      # sum of squares over GF(3)
    (GF3, 2, (1, 0, 2), 4, 4),      # hyperbolic: x^2 - y^2
    (GF3, 1, (1,), 2, 2),           # {+-1}
    (GF3, 2, (0, 0, 0), 48, 1),     # zero form: O = GL, weak = {id}
    (GF3, 2, (1, 0, 0), 12, 6),     # radical line: shears along e2 allowed
]


@pytest.mark.parametrize("F,n,upper,o,w", ORTH_ORDERS,
                         ids=lambda v: str(v) if isinstance(v, tuple) else None)
def test_orthogonal_orders_frozen(F, n, upper, o, w):
    Q = QForm.from_upper(F, n, upper)
    assert orthogonal_group(Q).order == o
    assert weak_orthogonal_group(Q).order == w


def test_small_binary_groups_are_stabilizers():
    # O(x1x2) = O(x1^2+x2^2) = {I, swap}; O(x1^2+x1x2) = {I, [[1,1],[0,1]]}
    swap = Mat(GF2, [[0, 1], [1, 0]])
    shear = Mat(GF2, [[1, 1], [0, 1]])
    assert swap in orthogonal_group(QForm.from_upper(GF2, 2, (0, 1, 0)))
    assert shear in orthogonal_group(QForm.from_upper(GF2, 2, (1, 1, 0)))
    assert group_equal(orthogonal_group(QForm.from_upper(GF2, 2, (0, 1, 0))),
                       orthogonal_group(QForm.from_upper(GF2, 2, (1, 0, 1))))


def test_group_containments():
    for Q in enumerate_forms(GF3, 2):
        o = orthogonal_group(Q)
        w = weak_orthogonal_group(Q)
        assert is_subgroup(w, o)
        assert order_gl(2, 3) % o.order == 0   # Lagrange
        assert o.order % w.order == 0
        assert o.verify_axioms()
        assert w.verify_axioms()


def test_mask_route_matches_literal_filter():
    # the vectorised permutation-table route and a plain per-matrix filter
    # must build the same group
    G = enumerate_gl(GF3, 2)
    for Q in enumerate_forms(GF3, 2)[:9]:
        literal = GroupSet.from_mats(
            GF3, 2, [A for A in G.mats() if is_isometry(Q, A)])
        assert group_equal(orthogonal_group(Q), literal)
        assert isometry_mask(Q).sum() == literal.order


def test_groupset_equality_and_hash():
    Q = QForm.from_upper(GF3, 2, (1, 0, 1))
    g1 = orthogonal_group(Q)
    g2 = GroupSet.from_mats(GF3, 2, list(g1.mats()))
    assert g1 == g2 and hash(g1) == hash(g2)
    assert g1 != weak_orthogonal_group(QForm.zero(GF3, 2))
    with pytest.raises(ValueError):
        group_equal(g1, enumerate_gl(GF2, 2))


def test_matmul_np_gf4_agrees_with_mat():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = rng.integers(0, 4, (2, 2), dtype=np.uint8)
        b = rng.integers(0, 4, (2, 2), dtype=np.uint8)
        got = matmul_np(GF4, a[None], b)[0]
        want = mat_to_np(np_to_mat(GF4, a) * np_to_mat(GF4, b))
        assert (got == want).all()


def test_closure_generates_subgroup():
    swap = Mat(GF3, [[0, 1], [1, 0]])
    neg = Mat(GF3, [[2, 0], [0, 2]])
    g = closure(GF3, 2, [swap, neg])
    assert g.order == 4  # klein four-group here
    assert g.verify_axioms()
    # closure is idempotent
    assert group_equal(closure(GF3, 2, list(g.mats())), g)
    # and the orthogonal group of x1^2+x2^2 is generated by its reflections
    Q = QForm.from_upper(GF3, 2, (1, 0, 1))
    st = reflection_generation_status(Q)
    assert st.generates and st.closure_order == 8


def test_closure_of_nothing_is_identity():
    assert closure(GF3, 2, []).order == 1


def test_budget_guard():
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_gl(GF5, 4, budget=1000)  # |GL_4(5)| is astronomically over
    assert exc.value.required > exc.value.budget == 1000
    # env override is read per call and clamped
    os.environ["METRIC_AFFINE_BUDGET"] = "10"
    try:
        assert group_budget() == 10
    finally:
        del os.environ["METRIC_AFFINE_BUDGET"]


def test_congruence_orbit_sizes():
    # orbit sizes must be |GL| / |stabilizer| with the stabilizer acting by
    # congruence; for the binary hyperbolic plane in 3 variables: 168/8
    orbit = congruence_orbit(GF2, 3, (0, 1, 0, 0, 0, 0))
    assert len(orbit) == 21
    orbit4 = congruence_orbit(GF2, 4, (0, 1, 0, 0, 0, 0, 0, 0, 0, 0))
    assert len(orbit4) == 105
    pair = congruence_orbit(GF2, 4, (0, 1, 0, 0, 0, 0, 0, 0, 1, 0))
    assert len(pair) == 280


def test_reflection_exceptional_cases():
    # hyperbolic plane plus a radical line: reflections give a proper part
    Q = QForm.from_upper(GF2, 3, (0, 1, 0, 0, 0, 0))
    st = reflection_generation_status(Q)
    assert not st.generates
    assert st.exceptional == "hyperbolic-plane-plus-radical"
    assert st.closure_order == 4 and st.weak_order == 8
    # two hyperbolic planes in dimension 4
    Q2 = QForm.from_upper(GF2, 4, (0, 1, 0, 0, 0, 0, 0, 0, 1, 0))
    st2 = reflection_generation_status(Q2)
    assert not st2.generates and st2.exceptional == "hyperbolic-pair"
    # the anisotropic binary plane is fine...
    st3 = reflection_generation_status(QForm.from_upper(GF2, 2, (1, 1, 1)))
    assert st3.generates and st3.exceptional is None
    # ...and so is the hyperbolic plane with no radical (dim 2)
    st4 = reflection_generation_status(QForm.from_upper(GF2, 2, (0, 1, 0)))
    assert st4.generates and st4.exceptional is None


def test_weak_group_fixes_radical_pointwise():
    Q = QForm.from_upper(GF3, 2, (1, 0, 0))  # radical = span(e2)
    w = weak_orthogonal_group(Q)
    e2 = vec(GF3, (0, 1))
    for A in w.mats():
        assert A * e2 == e2
