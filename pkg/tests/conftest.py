import pytest

from doublecat.finset import FinMorphism, validate_fin_category


def _with_identities(objects, arrows, extra_composites):
    """Assemble category tables: identity arrows and unit composites are implied."""
    morphisms = [FinMorphism(f"id{o}", o, o) for o in objects]
    morphisms += [FinMorphism(name, src, tgt) for name, src, tgt in arrows]
    identities = {o: f"id{o}" for o in objects}
    composition = {}
    for m in morphisms:
        composition[(f"id{m.src}", m.name)] = m.name
        composition[(m.name, f"id{m.tgt}")] = m.name
    composition.update(extra_composites)
    return objects, morphisms, identities, composition


@pytest.fixture(scope="session")
def linear3():
    objects, morphisms, identities, composition = _with_identities(
        ["0", "1", "2"],
        [("f", "0", "1"), ("g", "1", "2"), ("h", "0", "2")],
        {("f", "g"): "h"},
    )
    return validate_fin_category(objects, morphisms, identities, composition, name="linear3")


@pytest.fixture(scope="session")
def diamond():
    # poset 0 < a, b < 1
    objects, morphisms, identities, composition = _with_identities(
        ["0", "a", "b", "1"],
        [("la", "0", "a"), ("lb", "0", "b"), ("ra", "a", "1"), ("rb", "b", "1"), ("d", "0", "1")],
        {("la", "ra"): "d", ("lb", "rb"): "d"},
    )
    return validate_fin_category(objects, morphisms, identities, composition, name="diamond")


@pytest.fixture(scope="session")
def cyclic3():
    # the cyclic group of order three as a one-object category
    objects = ["*"]
    morphisms = [FinMorphism("e", "*", "*"), FinMorphism("r", "*", "*"), FinMorphism("rr", "*", "*")]
    identities = {"*": "e"}
    names = ["e", "r", "rr"]
    composition = {
        (names[i], names[j]): names[(i + j) % 3] for i in range(3) for j in range(3)
    }
    return validate_fin_category(objects, morphisms, identities, composition, name="Z3")


@pytest.fixture(scope="session")
def walking_iso():
    objects, morphisms, identities, composition = _with_identities(
        ["x", "y"],
        [("u", "x", "y"), ("uinv", "y", "x")],
        {("u", "uinv"): "idx", ("uinv", "u"): "idy"},
    )
    return validate_fin_category(objects, morphisms, identities, composition, name="walking-iso")
