import pytest

from doublecat.core import (
    EXHAUSTIVE,
    check_double_category,
    check_double_functor,
    dual,
    identity_double_functor,
    is_bicategory_shaped,
    restrict,
)
from doublecat.diagram import SquareCell, morph_double_category
from doublecat.errors import ClosureError, StructureError


def one_object_double_category():
    c_obj, c_mor = "*", "id"
    from doublecat.core import DoubleCategoryInstance

    return DoubleCategoryInstance(
        name="trivial",
        obj0=(c_obj,),
        mor0=(c_mor,),
        obj1=(c_obj,),
        mor2=(c_mor,),
        src0=lambda f: c_obj,
        tgt0=lambda f: c_obj,
        compose0=lambda f, g: c_mor,
        id0=lambda a: c_mor,
        d_obj=lambda x: c_obj,
        r_obj=lambda x: c_obj,
        src2=lambda a: c_obj,
        tgt2=lambda a: c_obj,
        d_mor=lambda a: c_mor,
        r_mor=lambda a: c_mor,
        star_obj=lambda x, y: c_obj,
        star_mor=lambda a, b: c_mor,
        vcompose2=lambda a, b: c_mor,
        id1=lambda x: c_mor,
        unit_obj=lambda a: c_obj,
        unit_mor=lambda f: c_mor,
        strict=True,
    )


def empty_double_category():
    from doublecat.core import DoubleCategoryInstance

    boom = lambda *args: (_ for _ in ()).throw(AssertionError("no cells"))
    return DoubleCategoryInstance(
        name="empty",
        obj0=(), mor0=(), obj1=(), mor2=(),
        src0=boom, tgt0=boom, compose0=boom, id0=boom,
        d_obj=boom, r_obj=boom, src2=boom, tgt2=boom, d_mor=boom, r_mor=boom,
        star_obj=boom, star_mor=boom, vcompose2=boom, id1=boom,
        unit_obj=boom, unit_mor=boom, strict=True,
    )


def test_one_object_identity_only_instance_passes():
    report = check_double_category(one_object_double_category(), EXHAUSTIVE)
    assert report.ok
    assert all(r.checked >= 1 for r in report.results[:1])


def test_empty_instance_passes_vacuously():
    assert check_double_category(empty_double_category(), EXHAUSTIVE).ok


def test_morph_of_small_category_passes_exhaustively(linear3):
    report = check_double_category(morph_double_category(linear3), EXHAUSTIVE)
    assert report.ok
    assert report.result("star/interchange").checked > 0


def test_scrambled_star_table_fails_with_counterexample(linear3):
    d = morph_double_category(linear3)
    f = next(m for m in linear3.morphisms if m.name == "f")
    g = next(m for m in linear3.morphisms if m.name == "g")
    real_star = d.star_obj

    def bad_star(x, y):
        if (x, y) == (f, g):
            return f  # wrong frames: should be h
        return real_star(x, y)

    d.star_obj = bad_star
    report = check_double_category(d, EXHAUSTIVE)
    assert not report.ok
    failed = [r for r in report.results if not r.passed]
    assert any("star" in r.law or "axiom" in r.law for r in failed)
    assert all(r.counterexample for r in failed)


def test_budget_sampling_is_deterministic(linear3):
    d = morph_double_category(linear3)
    a = check_double_category(d, 7, seed=11)
    b = check_double_category(d, 7, seed=11)
    assert a == b
    c = check_double_category(d, 7, seed=12)
    assert c.ok  # same laws hold on any sample


def test_structural_error_names_dangling_cell(linear3):
    d = morph_double_category(linear3)
    alien = SquareCell("nope", "nope", "nope", "nope")
    d.mor2 = d.mor2 + (alien,)
    with pytest.raises(StructureError):
        check_double_category(d, 10)


def test_dual_is_involution_and_preserves_laws(linear3):
    d = morph_double_category(linear3)
    dd = dual(d)
    assert dual(dd) is d
    assert check_double_category(dd, EXHAUSTIVE).ok
    f = next(m for m in linear3.morphisms if m.name == "f")
    assert dd.d_obj(f) == d.r_obj(f)


def test_restrict_everything_is_identity(linear3):
    d = morph_double_category(linear3)
    r = restrict(d, d.obj0, d.mor0, d.obj1, d.mor2)
    assert set(r.obj1) == set(d.obj1)
    assert check_double_category(r, EXHAUSTIVE).ok


def test_restrict_missing_frame_is_closure_error(linear3):
    d = morph_double_category(linear3)
    f = next(m for m in linear3.morphisms if m.name == "f")
    with pytest.raises(ClosureError):
        restrict(d, [o for o in d.obj0 if o != "0"], d.mor0, (f,), ())


def test_is_bicategory_shaped(linear3):
    assert not is_bicategory_shaped(morph_double_category(linear3))
    assert is_bicategory_shaped(one_object_double_category())
    assert is_bicategory_shaped(empty_double_category())


def test_identity_functor_passes(linear3):
    d = morph_double_category(linear3)
    report = check_double_functor(identity_double_functor(d), EXHAUSTIVE)
    assert report.ok
