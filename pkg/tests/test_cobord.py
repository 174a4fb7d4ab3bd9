import random

import pytest

from doublecat.cobord import (
    MINUS,
    PLUS,
    Cobordism1,
    Cobordism2,
    CobordismCell,
    Component,
    Perm,
    all_objects,
    boundary_points,
    charge,
    cobordism_double_category,
    compose_cobordism,
    compose_cobordism1,
    compose_cobordism2,
    disjoint_union_cobordism,
    identity_cobordism,
    orientation_double_functor,
    point_sign,
    random_cobordism1,
    random_cobordism2,
    reverse_orientation,
    transport_cobordism,
    union_double_functor,
)
from doublecat.core import (
    check_double_category,
    check_double_functor,
    compose_double_functors,
)
from doublecat.errors import StructureError

COEV = Cobordism1((), (PLUS, MINUS), ((("t", 0), ("t", 1)),), 0)
EV = Cobordism1((PLUS, MINUS), (), ((("s", 0), ("s", 1)),), 0)


def test_matching_validation():
    with pytest.raises(StructureError):
        Cobordism1((PLUS,), (PLUS,), ((("s", 0), ("s", 0)),), 0)
    # the reversed source points of (+,+) have equal orientation: no interval
    with pytest.raises(StructureError):
        Cobordism1((PLUS, PLUS), (), ((("s", 0), ("s", 1)),), 0)


def test_identity_cylinder_boundary_is_signed_double():
    x = (PLUS, MINUS, PLUS)
    cyl = identity_cobordism(x, 0)
    signs = [point_sign(cyl.src, cyl.tgt, p) for p in boundary_points(cyl.src, cyl.tgt)]
    assert signs == [MINUS, PLUS, MINUS, PLUS, MINUS, PLUS]


def test_identity_composes_to_identity():
    x = (PLUS, MINUS)
    cyl = identity_cobordism(x, 0)
    assert compose_cobordism1(cyl, cyl) == cyl
    assert identity_cobordism((), 0) == Cobordism1((), (), (), 0)


def test_coev_then_ev_is_one_loop():
    circle = compose_cobordism1(COEV, EV)
    assert circle == Cobordism1((), (), (), 1)


def test_snake_composite_is_identity():
    x = (PLUS,)
    ev_rev = Cobordism1((MINUS, PLUS), (), ((("s", 0), ("s", 1)),), 0)
    c1 = disjoint_union_cobordism(COEV, identity_cobordism(x, 0))
    c2 = disjoint_union_cobordism(identity_cobordism(x, 0), ev_rev)
    assert compose_cobordism1(c1, c2) == identity_cobordism(x, 0)


def test_loop_counts_add_and_composition_is_associative():
    rng = random.Random(500)
    objects = [x for x in all_objects(4)]
    by_charge = {}
    for x in objects:
        by_charge.setdefault(charge(x), []).append(x)
    for _ in range(500):
        pool = by_charge[rng.choice(list(by_charge))]
        a, b, c, d = (rng.choice(pool) for _ in range(4))
        c1 = random_cobordism1(rng, a, b)
        c2 = random_cobordism1(rng, b, c)
        c3 = random_cobordism1(rng, c, d)
        left = compose_cobordism1(compose_cobordism1(c1, c2), c3)
        right = compose_cobordism1(c1, compose_cobordism1(c2, c3))
        assert left == right
        assert left.loops >= c1.loops + c2.loops + c3.loops


def test_copants_then_pants_is_genus_one_tube():
    copants = Cobordism2(
        (PLUS,), (PLUS, PLUS), (Component(0, frozenset({("s", 0), ("t", 0), ("t", 1)})),)
    )
    pants = Cobordism2(
        (PLUS, PLUS), (PLUS,), (Component(0, frozenset({("s", 0), ("s", 1), ("t", 0)})),)
    )
    tube = compose_cobordism2(copants, pants)
    assert tube.components == (Component(1, frozenset({("s", 0), ("t", 0)})),)


def test_cup_then_cap_is_closed_sphere():
    cup = Cobordism2((), (PLUS,), (Component(0, frozenset({("t", 0)})),))
    cap = Cobordism2((PLUS,), (), (Component(0, frozenset({("s", 0)})),))
    sphere = compose_cobordism2(cup, cap)
    assert sphere.components == (Component(0, frozenset()),)
    assert sphere.euler == 2


def test_euler_characteristic_additive_and_genus_integral():
    rng = random.Random(300)
    objects = all_objects(3)
    for _ in range(300):
        a, b, c = (rng.choice(objects) for _ in range(3))
        c1 = random_cobordism2(rng, a, b, max_genus=2)
        c2 = random_cobordism2(rng, b, c, max_genus=2)
        glued = compose_cobordism2(c1, c2)
        assert glued.euler == c1.euler + c2.euler
        assert all(k.genus >= 0 for k in glued.components)


def test_cylinder_unit_law_on_random_cobordisms():
    rng = random.Random(77)
    objects = all_objects(3)
    by_charge = {}
    for x in objects:
        by_charge.setdefault(charge(x), []).append(x)
    for _ in range(200):
        pool = by_charge[rng.choice(list(by_charge))]
        a, b = rng.choice(pool), rng.choice(pool)
        c = random_cobordism1(rng, a, b)
        assert compose_cobordism1(identity_cobordism(a, 0), c) == c
        assert compose_cobordism1(c, identity_cobordism(b, 0)) == c
        s = random_cobordism2(rng, a, b)
        assert compose_cobordism2(identity_cobordism(a, 1), s) == s
        assert compose_cobordism2(s, identity_cobordism(b, 1)) == s


def test_orientation_reversal_is_involutive_and_preserves_data():
    rng = random.Random(8)
    for _ in range(100):
        x = tuple(rng.choice((PLUS, MINUS)) for _ in range(rng.randint(0, 3)))
        assert reverse_orientation(reverse_orientation(x)) == x
        y = tuple(rng.choice((PLUS, MINUS)) for _ in range(len(x)))
        if charge(x) == charge(y):
            c = random_cobordism1(rng, x, y)
            rc = reverse_orientation(c)
            assert rc.loops == c.loops
            assert reverse_orientation(rc) == c
        s = random_cobordism2(rng, x, tuple(rng.choice((PLUS, MINUS)) for _ in range(2)))
        rs = reverse_orientation(s)
        assert sorted(k.genus for k in rs.components) == sorted(k.genus for k in s.components)
        assert reverse_orientation(rs) == s


def test_mismatched_middle_is_an_error():
    with pytest.raises(StructureError):
        compose_cobordism1(COEV, Cobordism1((MINUS, PLUS), (), ((("s", 0), ("s", 1)),), 0))
    cup = Cobordism2((), (PLUS,), (Component(0, frozenset({("t", 0)})),))
    with pytest.raises(StructureError):
        compose_cobordism2(cup, Cobordism2((MINUS,), (), (Component(0, frozenset({("s", 0)})),)))


def test_transport_cells_validate():
    c = random_cobordism1(random.Random(4), (PLUS, MINUS), (MINUS, PLUS))
    f1 = Perm((PLUS, MINUS), (MINUS, PLUS), (1, 0))
    f2 = Perm((MINUS, PLUS), (PLUS, MINUS), (1, 0))
    moved = transport_cobordism(c, f1, f2)
    CobordismCell(c, moved, f1, f2)
    with pytest.raises(StructureError):
        CobordismCell(c, c, f1, f2)  # wrong declared target


@pytest.mark.parametrize("dim,budget", [(0, 400), (1, 300)])
def test_cobordism_double_category_passes(dim, budget):
    d = cobordism_double_category(dim, bound=3, seed=0)
    report = check_double_category(d, budget, seed=6)
    assert report.ok, report.summary()
    assert report.result("axiom/assoc-1cells").checked > 0
    assert report.result("star/interchange").checked > 0


def test_union_functor_passes():
    c = cobordism_double_category(0, bound=3, seed=0)
    functor, _ = union_double_functor(c, max_cells=200, seed=1)
    report = check_double_functor(functor, 250, seed=7)
    assert report.ok, report.summary()


@pytest.mark.parametrize("dim", [0, 1])
def test_orientation_functor_is_invertible_equivalence(dim):
    c = cobordism_double_category(dim, bound=3 if dim == 0 else 2, seed=0)
    minus = orientation_double_functor(c)
    report = check_double_functor(minus, 250, seed=8)
    assert report.ok, report.summary()
    twice = compose_double_functors(minus, orientation_double_functor(minus.target))
    assert all(twice.obj0(x) == x for x in c.obj0)
    assert all(twice.mor0(p) == p for p in c.mor0)
    assert all(twice.obj1(y) == y for y in c.obj1)
    assert all(twice.mor2(a) == a for a in c.mor2)


def test_union_with_empty_is_identity():
    c = random_cobordism1(random.Random(2), (PLUS,), (PLUS,))
    empty = identity_cobordism((), 0)
    assert disjoint_union_cobordism(c, empty) == c
    assert disjoint_union_cobordism(empty, c) == c
