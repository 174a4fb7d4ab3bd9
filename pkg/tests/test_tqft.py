import random
from fractions import Fraction as Q

import pytest

from doublecat.bimod import product_field, rational_field, truncated_polynomials, upper_triangular_2x2
from doublecat.cobord import (
    MINUS,
    PLUS,
    Cobordism1,
    Cobordism2,
    Component,
    Perm,
    all_objects,
    disjoint_union_cobordism,
    identity_cobordism,
    random_cobordism1,
    random_cobordism2,
    reverse_orientation,
    transport_cobordism,
)
from doublecat.core import check_double_functor
from doublecat.errors import StructureError
from doublecat.ratmat import RationalMatrix
from doublecat.tqft import (
    FrobeniusAlgebra,
    Theory1d,
    assign_object,
    check_axioms,
    evaluate,
    evaluate1,
    evaluate2,
    evaluate_perm,
    tqft_double_functor,
)

DUAL = FrobeniusAlgebra(truncated_polynomials(2), (Q(0), Q(1)))
SPLIT = FrobeniusAlgebra(product_field(2), (Q(1), Q(1)))
GROUND = FrobeniusAlgebra(rational_field(), (Q(1),))
THEORIES_1D = [GROUND, DUAL, SPLIT]

CUP = Cobordism2((), (PLUS,), (Component(0, frozenset({("t", 0)})),))
CAP = Cobordism2((PLUS,), (), (Component(0, frozenset({("s", 0)})),))
TORUS = Cobordism2((), (), (Component(1, frozenset()),))
SPHERE = Cobordism2((), (), (Component(0, frozenset()),))
PANTS = Cobordism2((PLUS, PLUS), (PLUS,), (Component(0, frozenset({("s", 0), ("s", 1), ("t", 0)})),))
COPANTS = Cobordism2((PLUS,), (PLUS, PLUS), (Component(0, frozenset({("s", 0), ("t", 0), ("t", 1)})),))


def test_frobenius_rejects_degenerate_counit():
    with pytest.raises(StructureError):
        FrobeniusAlgebra(truncated_polynomials(2), (Q(1), Q(0)))  # form has rank 1


def test_frobenius_rejects_noncommutative_algebra():
    with pytest.raises(StructureError):
        FrobeniusAlgebra(upper_triangular_2x2(), (Q(1), Q(1), Q(0)))


def test_derived_comultiplication_of_dual_numbers():
    assert DUAL.delta.apply((Q(1), Q(0))) == (Q(0), Q(1), Q(1), Q(0))
    assert DUAL.handle.apply((Q(1), Q(0))) == (Q(0), Q(2))


def test_empty_object_is_the_base_field():
    for theory, dim in [(Theory1d(3), 0), (DUAL, 1)]:
        assert assign_object(theory, (), dim).dim == 1


def test_object_dimensions_tensor():
    assert assign_object(Theory1d(3), (PLUS, MINUS), 0).dim == 9
    assert assign_object(DUAL, (PLUS, PLUS, MINUS), 1).dim == 8


def test_dual_object_pairing_recorded_and_nonsingular():
    rec = assign_object(DUAL, (PLUS, MINUS), 1)
    assert rec.pairing.rows == rec.dim
    rec.pairing.inverse()  # nondegenerate
    rec0 = assign_object(Theory1d(2), (PLUS, MINUS), 0)
    assert rec0.pairing == RationalMatrix.identity(4)


def test_identity_cobordisms_evaluate_to_identity():
    for x in all_objects(3):
        z = evaluate1(Theory1d(2), identity_cobordism(x, 0))
        assert z.matrix == RationalMatrix.identity(2 ** len(x))
        z2 = evaluate2(DUAL, identity_cobordism(x, 1))
        assert z2.matrix == RationalMatrix.identity(2 ** len(x))


def test_circle_evaluates_to_dimension():
    coev = Cobordism1((), (PLUS, MINUS), ((("t", 0), ("t", 1)),), 0)
    ev = Cobordism1((PLUS, MINUS), (), ((("s", 0), ("s", 1)),), 0)
    for n in (1, 2, 3):
        circle = Cobordism1((), (), (), 1)
        assert evaluate1(Theory1d(n), circle).matrix.entries == ((Q(n),),)
        lhs = evaluate1(Theory1d(n), ev).matrix @ evaluate1(Theory1d(n), coev).matrix
        assert lhs.entries == ((Q(n),),)


def test_snake_contracts_to_kronecker_delta():
    x = (PLUS,)
    ev_rev = Cobordism1((MINUS, PLUS), (), ((("s", 0), ("s", 1)),), 0)
    coev = Cobordism1((), (PLUS, MINUS), ((("t", 0), ("t", 1)),), 0)
    c1 = disjoint_union_cobordism(coev, identity_cobordism(x, 0))
    c2 = disjoint_union_cobordism(identity_cobordism(x, 0), ev_rev)
    for n in (2, 3):
        t = Theory1d(n)
        composite = evaluate1(t, c2).matrix @ evaluate1(t, c1).matrix
        assert composite == RationalMatrix.identity(n)


def test_sphere_and_torus_values():
    assert evaluate2(DUAL, SPHERE).matrix.entries == ((Q(0),),)
    assert evaluate2(DUAL, TORUS).matrix.entries == ((Q(2),),)
    for theory in THEORIES_1D:
        assert evaluate2(theory, TORUS).matrix.entries == ((Q(theory.dim),),)


def test_pants_after_copants_is_handle_operator():
    for theory in THEORIES_1D:
        glue = evaluate2(theory, PANTS).matrix @ evaluate2(theory, COPANTS).matrix
        assert glue == theory.handle


def test_adding_a_loop_multiplies_by_dimension():
    rng = random.Random(12)
    t = Theory1d(3)
    c = random_cobordism1(rng, (PLUS, MINUS), (MINUS, PLUS))
    bumped = Cobordism1(c.src, c.tgt, c.pairs, c.loops + 1)
    assert evaluate1(t, bumped).matrix == evaluate1(t, c).matrix.scale(Q(3))


def test_adding_a_handle_inserts_the_handle_operator():
    one_less = Cobordism2((PLUS,), (PLUS,), (Component(0, frozenset({("s", 0), ("t", 0)})),))
    one_more = Cobordism2((PLUS,), (PLUS,), (Component(1, frozenset({("s", 0), ("t", 0)})),))
    for theory in THEORIES_1D:
        assert evaluate2(theory, one_more).matrix == theory.handle @ evaluate2(theory, one_less).matrix


def test_evaluation_is_permutation_equivariant():
    rng = random.Random(21)
    for _ in range(40):
        x = tuple(rng.choice((PLUS, MINUS)) for _ in range(3))
        y = tuple(rng.choice((PLUS, MINUS)) for _ in range(2))
        c = random_cobordism2(rng, x, y, max_genus=1)
        perm_x = sorted(range(3), key=lambda i: (x[i], rng.random()))
        images = [0] * 3
        for slot, i in enumerate(perm_x):
            images[i] = slot
        x2 = tuple(x[perm_x[slot]] for slot in range(3))
        f1 = Perm(x, x2, tuple(images))
        f2 = Perm.identity(y)
        moved = transport_cobordism(c, f1, f2)
        lhs = evaluate2(DUAL, moved).matrix @ evaluate_perm(DUAL, f1, 1)
        assert lhs == evaluate2(DUAL, c).matrix


def test_orientation_reversal_is_pairing_adjoint_d0():
    ev = Cobordism1((PLUS, MINUS), (), ((("s", 0), ("s", 1)),), 0)
    t = Theory1d(2)
    z = evaluate1(t, ev).matrix
    zrev = evaluate1(t, reverse_orientation(ev)).matrix
    assert zrev == z.transpose()  # pairings are identities over dual bases


def test_theory_kind_must_match_cobordism_dimension():
    with pytest.raises(StructureError):
        evaluate(Theory1d(2), TORUS)
    with pytest.raises(StructureError):
        evaluate(DUAL, Cobordism1((), (), (), 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_axioms_pass_for_point_theories(n):
    report = check_axioms(Theory1d(n), 0, bound=3, seed=0, pairs=100)
    assert report.ok, report.summary()
    assert report.result("A3/gluing-composes").checked >= 100


@pytest.mark.parametrize("theory", THEORIES_1D, ids=lambda t: t.algebra.name)
def test_axioms_pass_for_frobenius_theories(theory):
    report = check_axioms(theory, 1, bound=3, seed=0, pairs=100)
    assert report.ok, report.summary()
    assert report.result("A3/gluing-composes").checked >= 100


def test_trivial_theory_is_degenerate_but_lawful():
    report = check_axioms(GROUND, 1, bound=2, seed=1, pairs=40)
    assert report.ok
    assert evaluate2(GROUND, TORUS).matrix.entries == ((Q(1),),)


@pytest.mark.parametrize(
    "theory,dim,bound",
    [(Theory1d(2), 0, 3), (DUAL, 1, 2), (SPLIT, 1, 2)],
    ids=["dimV2", "dual-numbers", "split-pair"],
)
def test_tqft_is_a_double_functor(theory, dim, bound):
    functor = tqft_double_functor(theory, dim, bound=bound, seed=0, n_cobordisms=30, n_cells=20)
    report = check_double_functor(functor, 200, seed=9)
    assert report.ok, report.summary()
    assert report.result("functor/star-1cells").checked > 0
