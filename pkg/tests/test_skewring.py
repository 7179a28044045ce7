import random

import pytest

from skewalg import Field, Matrix
from skewalg.skew_ring import (SkewRingError, TensorTooLarge, build_skew_ring,
                               tensor_over)

Q = Field.rationals()


def random_element(ring, rng):
    coords = tuple(Q.from_int(rng.randint(-4, 4)) for _ in range(ring.dim))
    return ring.from_coords(coords)


def dense_tensor_quotient_dim(ring) -> int:
    """Independent oracle: raw balancing generators, one dense rref, no blocks."""
    alg = ring.action.algebra
    n = ring.dim * ring.dim
    zero = ring.field.zero
    rows = []
    for p in range(ring.dim):
        b = ring.basis_element(p)
        for q in range(ring.dim):
            bp = ring.basis_element(q)
            for t in range(alg.dim):
                a = alg.basis_vector(t)
                left = ring.coords_of(ring.right_act(b, a))    # b . a
                right = ring.coords_of(ring.left_act(a, bp))   # a . b'
                row = [zero] * n
                for i, c in enumerate(left):
                    row[i * ring.dim + q] = row[i * ring.dim + q] + c
                for j, c in enumerate(right):
                    row[p * ring.dim + j] = row[p * ring.dim + j] - c
                rows.append(row)
    rank = Matrix(ring.field, rows, ncols=n).rank()
    return n - rank


# -- construction ------------------------------------------------------------------

def test_bridge_ring_has_dimension_six(bridge):
    ring = build_skew_ring(bridge)
    assert ring.dim == 6  # 2 + 1 + 1 + 2 over the four morphisms


def test_trivial_action_gives_the_field_back(trivial_q):
    ring = build_skew_ring(trivial_q)
    assert ring.dim == 1
    u = ring.unit()
    assert u * u == u


def test_bridge_product_of_bridge_arrows(bridge):
    # (v3 d_g)(v2 d_ginv): pull v3 back to v2, multiply by v2, push to v3 at id:e2
    ring = build_skew_ring(bridge)
    x = ring.element({"g": [0, 0, 1, 0]})
    y = ring.element({"ginv": [0, 1, 0, 0]})
    assert x * y == ring.element({"id:e2": [0, 0, 1, 0]})


def test_non_composable_product_vanishes(bridge):
    ring = build_skew_ring(bridge)
    x = ring.element({"g": [0, 0, 1, 0]})
    assert (x * x).is_zero()


def test_coefficient_outside_ideal_is_rejected(bridge):
    ring = build_skew_ring(bridge)
    with pytest.raises(SkewRingError):
        ring.element({"g": [1, 0, 0, 0]})


def test_coords_round_trip(bridge):
    ring = build_skew_ring(bridge)
    rng = random.Random(3)
    for _ in range(20):
        x = random_element(ring, rng)
        assert ring.from_coords(ring.coords_of(x)) == x


# -- unit and embedding -----------------------------------------------------------------

def test_bridge_unit(bridge):
    ring = build_skew_ring(bridge)
    assert ring.unit() == ring.element({"id:e1": [1, 1, 0, 0],
                                        "id:e2": [0, 0, 1, 1]})


def test_unit_fixes_100_random_elements(bridge):
    ring = build_skew_ring(bridge)
    u = ring.unit()
    rng = random.Random(11)
    for _ in range(100):
        x = random_element(ring, rng)
        assert u * x == x
        assert x * u == x


def test_embedding_of_unit_is_ring_unit(bridge):
    ring = build_skew_ring(bridge)
    assert ring.embed(bridge.algebra.unit) == ring.unit()


def test_embedding_of_diagonal_idempotent(bridge):
    ring = build_skew_ring(bridge)
    assert ring.embed([0, 1, 0, 0]) == ring.element({"id:e1": [0, 1, 0, 0]})


def test_embedding_is_multiplicative_on_random_pairs(bridge):
    ring = build_skew_ring(bridge)
    alg = bridge.algebra
    rng = random.Random(5)
    for _ in range(30):
        x = alg.element([rng.randint(-4, 4) for _ in range(alg.dim)])
        y = alg.element([rng.randint(-4, 4) for _ in range(alg.dim)])
        assert ring.embed(alg.multiply(x, y)) == ring.embed(x) * ring.embed(y)


# -- bimodule actions --------------------------------------------------------------------

def test_right_action_through_the_arrow(bridge):
    # (v3 d_g) . v2 = v3 alpha_g(v2) d_g = v3 d_g
    ring = build_skew_ring(bridge)
    x = ring.element({"g": [0, 0, 1, 0]})
    assert ring.right_act(x, [0, 1, 0, 0]) == x
    # and through a coefficient it does not see: (v3 d_g) . v3 = 0
    assert ring.right_act(x, [0, 0, 1, 0]).is_zero()


def test_left_action_by_unit_is_identity(bridge):
    ring = build_skew_ring(bridge)
    rng = random.Random(13)
    for _ in range(20):
        x = random_element(ring, rng)
        assert ring.left_act(bridge.algebra.unit, x) == x


def test_module_laws_randomized(bridge):
    ring = build_skew_ring(bridge)
    alg = bridge.algebra
    rng = random.Random(17)
    for _ in range(25):
        a = alg.element([rng.randint(-3, 3) for _ in range(alg.dim)])
        b = alg.element([rng.randint(-3, 3) for _ in range(alg.dim)])
        x = random_element(ring, rng)
        assert ring.left_act(a, ring.left_act(b, x)) == \
            ring.left_act(alg.multiply(a, b), x)
        assert ring.right_act(ring.right_act(x, a), b) == \
            ring.right_act(x, alg.multiply(a, b))
        assert ring.right_act(ring.left_act(a, x), b) == \
            ring.left_act(a, ring.right_act(x, b))


def test_bimodule_action_matches_embedding(bridge):
    # the (aabim) actions are exactly ring multiplication by the embedded element
    ring = build_skew_ring(bridge)
    alg = bridge.algebra
    rng = random.Random(19)
    for _ in range(20):
        a = alg.element([rng.randint(-3, 3) for _ in range(alg.dim)])
        x = random_element(ring, rng)
        assert ring.left_act(a, x) == ring.embed(a) * x
        assert ring.right_act(x, a) == x * ring.embed(a)


# -- component ideals ----------------------------------------------------------------------

def test_connected_instance_has_one_component_ideal(bridge):
    ring = build_skew_ring(bridge)
    ideals = ring.component_ideals()
    assert len(ideals) == 1
    assert ideals[0].positions == tuple(range(ring.dim))
    assert ideals[0].unit == ring.unit()


def test_glued_double_has_two_orthogonal_blocks(glued_double):
    ring = build_skew_ring(glued_double)
    ideals = ring.component_ideals()
    assert len(ideals) == 2
    assert len(ideals[0].positions) == 6
    assert len(ideals[1].positions) == 6
    u1, u2 = ideals[0].unit, ideals[1].unit
    assert (u1 * u2).is_zero()
    assert (u2 * u1).is_zero()
    assert u1 * u1 == u1
    assert u2 * u2 == u2
    assert u1 + u2 == ring.unit()
    assert sorted(ideals[0].positions + ideals[1].positions) == list(range(ring.dim))


# -- tensor squares --------------------------------------------------------------------------

def test_cross_component_tensor_vanishes(glued_double):
    ring = build_skew_ring(glued_double)
    b1, b2 = ring.component_ideals()
    assert tensor_over(b1, b2).dim == 0
    assert tensor_over(b2, b1).dim == 0


def test_field_tensor_field_is_one_dimensional(trivial_q):
    ring = build_skew_ring(trivial_q)
    t = tensor_over(ring, ring)
    assert t.ambient_dim == 1
    assert t.dim == 1


def test_bridge_tensor_dimension_matches_dense_oracle(bridge):
    ring = build_skew_ring(bridge)
    t = tensor_over(ring, ring)
    assert t.ambient_dim == 36
    assert dense_tensor_quotient_dim(ring) == t.dim
    assert t.dim == 10


def test_component_tensor_dimensions(glued_double):
    ring = build_skew_ring(glued_double)
    blocks = ring.component_ideals()
    total = 0
    for blk in blocks:
        over_a = tensor_over(blk, blk).dim
        over_comp = tensor_over(blk, blk, mid=blk).dim
        assert over_a == over_comp
        total += over_comp
    assert tensor_over(ring, ring).dim == total


def test_project_lift_round_trip(bridge):
    ring = build_skew_ring(bridge)
    t = tensor_over(ring, ring)
    rng = random.Random(23)
    for _ in range(10):
        q = tuple(Q.from_int(rng.randint(-4, 4)) for _ in range(t.dim))
        assert t.project(t.lift(q)) == q


def test_left_action_on_quotient_is_multiplicative(bridge):
    ring = build_skew_ring(bridge)
    t = tensor_over(ring, ring)
    rng = random.Random(29)
    for _ in range(5):
        x = random_element(ring, rng).coords()
        y = random_element(ring, rng).coords()
        lx, ly = t.left_matrix(x), t.left_matrix(y)
        assert t.left_matrix(ring.mul_coords(x, y)) == lx * ly
        rx, ry = t.right_matrix(x), t.right_matrix(y)
        assert t.right_matrix(ring.mul_coords(x, y)) == ry * rx


def test_tensor_dimension_equals_composable_intersection_sum(bridge, flip_q,
                                                             pair_swap,
                                                             glued_double):
    # each (g, h) block of the quotient collapses onto A_g /\ A_{gh}, so the
    # dimension is computable from ideal intersections alone
    for pa in (bridge, flip_q, pair_swap, glued_double):
        alg = pa.algebra
        g_oid = pa.groupoid
        predicted = 0
        for g, h in g_oid.composable_pairs():
            gh = g_oid.compose[(g, h)]
            meet = alg.multiply(pa.idem(g), pa.idem(gh))
            predicted += alg.ideal_basis(meet).basis.dim
        ring = build_skew_ring(pa)
        assert tensor_over(ring, ring).dim == predicted


def test_tensor_accepts_two_builds_of_the_same_action(bridge):
    a, b = build_skew_ring(bridge), build_skew_ring(bridge)
    assert tensor_over(a, b).dim == 10


def test_tensor_rejects_unrelated_rings(bridge, trivial_q):
    with pytest.raises(SkewRingError):
        tensor_over(build_skew_ring(bridge), build_skew_ring(trivial_q))


def test_tensor_dimension_cap(monkeypatch, bridge):
    monkeypatch.setenv("SKEWALG_MAX_DIM", "10")
    ring = build_skew_ring(bridge)
    with pytest.raises(TensorTooLarge):
        tensor_over(ring, ring)


def test_skew_table_identity_rows(bridge):
    ring = build_skew_ring(bridge)
    rows = ring.multiplication_rows()
    assert len(rows) == ring.dim * ring.dim
    # multiplying by the unit part at the right identity reproduces the basis
    unit_coords = ring.coords_of(ring.unit())
    for p in range(ring.dim):
        assert ring.mul_coords(unit_coords, ring.basis_coords(p)) == \
            ring.basis_coords(p)
