"""The acceptance suite: every criterion runs at its stated tolerance and
prints one pass/fail line (run with ``pytest -s`` to see them inline).

All equality here is exact: rational arithmetic or structural equality of
combinatorial data. Each criterion also enforces its wall-clock budget.
"""

import itertools
import json
import random
import time
from fractions import Fraction as Q
from pathlib import Path

import pytest
import sympy

from doublecat.action import (
    check_action,
    check_characteristic_class,
    fiber_count_class,
    fiber_count_transport,
    iso_action,
    module_action,
    orbit,
    pullback_action,
    self_action,
    validate_subcategory,
)
from doublecat.bimod import (
    alg_double_category,
    bimodule_left_unitor,
    bimodule_right_unitor,
    product_field,
    rational_field,
    standard_algebra_corpus,
    standard_bimodule_corpus,
    tensor_over,
    truncated_polynomials,
)
from doublecat.cli import main as cli_main
from doublecat.cobord import (
    PLUS,
    Cobordism1,
    Cobordism2,
    Component,
    all_objects,
    charge,
    cobordism_double_category,
    compose_cobordism1,
    compose_cobordism2,
    identity_cobordism,
    orientation_double_functor,
    random_cobordism1,
    random_cobordism2,
    union_double_functor,
)
from doublecat.core import (
    EXHAUSTIVE,
    check_double_category,
    check_double_functor,
    compose_double_functors,
    dual,
)
from doublecat.diagram import (
    default_universe,
    iso_double_category,
    monoidal_action_double_category,
    monoidal_trivialbase,
    morph_double_category,
    span_double_category,
)
from doublecat.finset import FinFunction, FinSet, check_pullback_universal, pullback
from doublecat.ratmat import RationalMatrix
from doublecat.tqft import FrobeniusAlgebra, Theory1d, check_axioms, evaluate, evaluate2

DATA = Path(__file__).parent / "data"


def _verdict(name: str, elapsed: float, budget: float) -> None:
    print(f"acceptance {name}: PASS in {elapsed:.1f}s (budget {budget:.0f}s)")
    assert elapsed < budget, f"{name} exceeded its {budget}s budget ({elapsed:.1f}s)"


def test_criterion_1_double_category_law_suite(linear3, diamond, cyclic3, walking_iso):
    start = time.monotonic()
    corpus = [linear3, diamond, cyclic3, walking_iso]
    assert all(len(c.objects) <= 4 and len(c.morphisms) <= 12 for c in corpus)
    for c in corpus:
        morph = morph_double_category(c)
        assert morph.strict
        report = check_double_category(morph, EXHAUSTIVE)
        assert report.ok, report.summary()
        iso = iso_double_category(c)
        assert iso.strict
        report = check_double_category(iso, EXHAUSTIVE)
        assert report.ok, report.summary()

    span = span_double_category(default_universe(4), seed=0)
    assert not span.strict
    report = check_double_category(span, 500, seed=1)
    assert report.ok, report.summary()
    for law in ("axiom/associator-validity", "axiom/unitor-validity"):
        assert report.result(law).checked > 0

    alg = alg_double_category(seed=0, max_cells=30)
    assert not alg.strict
    report = check_double_category(alg, 120, seed=1)
    assert report.ok, report.summary()
    assert report.result("axiom/associator-validity").checked > 0
    _verdict("1 (double-category law suite)", time.monotonic() - start, 30)


def test_criterion_2_pullback_oracle():
    start = time.monotonic()
    sets = {n: FinSet(tuple(f"e{i}" for i in range(n))) for n in range(5)}
    pairs = 0
    for nz in range(5):
        z = sets[nz]
        into_z = []
        for nx in range(5):
            if nz == 0 and nx > 0:
                continue
            for images in itertools.product(z.elements, repeat=nx):
                into_z.append(FinFunction(sets[nx], z, images))
        for u in into_z:
            for v in into_z:
                cone = pullback(u, v)
                brute = [
                    (x, y)
                    for x, ux in zip(u.domain, u.mapping)
                    for y, vy in zip(v.domain, v.mapping)
                    if ux == vy
                ]
                assert list(cone.apex.elements) == brute
                assert check_pullback_universal(cone, 3)
                pairs += 1
    assert pairs == 131909
    _verdict("2 (pullback oracle)", time.monotonic() - start, 10)


def test_criterion_3_tensor_oracle():
    start = time.monotonic()
    algebras, maps = standard_algebra_corpus()
    bims = standard_bimodule_corpus(algebras, maps)
    by_left = {}
    for bm in bims:
        by_left.setdefault(bm.left, []).append(bm)
    rng = random.Random(2024)
    cases = 0
    while cases < 100:
        m = rng.choice(bims)
        partners = by_left.get(m.right, ())
        if not partners:
            continue
        n = rng.choice(partners)
        dec = tensor_over(m, n)
        rows = []
        b = m.right
        for bi in range(b.dim):
            right = m.right_act(b.basis_vector(bi))
            left = n.left_act(b.basis_vector(bi))
            for i in range(m.dim):
                for j in range(n.dim):
                    row = [Q(0)] * (m.dim * n.dim)
                    for s in range(m.dim):
                        row[s * n.dim + j] += right.entries[s][i]
                    for t in range(n.dim):
                        row[i * n.dim + t] -= left.entries[t][j]
                    rows.append([sympy.Rational(x.numerator, x.denominator) for x in row])
        rank = sympy.Matrix(rows).rank() if rows else 0
        assert dec.module.dim == m.dim * n.dim - rank
        cases += 1

    for bm in bims:
        for witness in (bimodule_left_unitor(bm), bimodule_right_unitor(bm)):
            assert witness.src.dim == bm.dim
            assert witness.w.rank() == bm.dim
            witness.w.inverse()
    _verdict("3 (tensor-over oracle)", time.monotonic() - start, 30)


def test_criterion_4_cobordism_gluing():
    start = time.monotonic()
    rng = random.Random(4000)
    objects0 = all_objects(4)
    by_charge = {}
    for x in objects0:
        by_charge.setdefault(charge(x), []).append(x)
    for _ in range(500):
        pool = by_charge[rng.choice(list(by_charge))]
        a, b, c, d = (rng.choice(pool) for _ in range(4))
        c1, c2, c3 = (
            random_cobordism1(rng, x, y) for x, y in ((a, b), (b, c), (c, d))
        )
        left = compose_cobordism1(compose_cobordism1(c1, c2), c3)
        right = compose_cobordism1(c1, compose_cobordism1(c2, c3))
        assert left == right
        assert left.loops >= c1.loops + c2.loops + c3.loops

    objects1 = all_objects(3)
    for _ in range(300):
        a, b, c = (rng.choice(objects1) for _ in range(3))
        s1 = random_cobordism2(rng, a, b, max_genus=2)
        s2 = random_cobordism2(rng, b, c, max_genus=2)
        glued = compose_cobordism2(s1, s2)
        assert glued.euler == s1.euler + s2.euler
        assert all(k.genus >= 0 for k in glued.components)

    copants = Cobordism2((PLUS,), (PLUS, PLUS), (Component(0, frozenset({("s", 0), ("t", 0), ("t", 1)})),))
    pants = Cobordism2((PLUS, PLUS), (PLUS,), (Component(0, frozenset({("s", 0), ("s", 1), ("t", 0)})),))
    assert compose_cobordism2(copants, pants).components == (
        Component(1, frozenset({("s", 0), ("t", 0)})),
    )
    cup = Cobordism2((), (PLUS,), (Component(0, frozenset({("t", 0)})),))
    cap = Cobordism2((PLUS,), (), (Component(0, frozenset({("s", 0)})),))
    assert compose_cobordism2(cup, cap).components == (Component(0, frozenset()),)
    _verdict("4 (cobordism gluing)", time.monotonic() - start, 20)


def test_criterion_5_tqft_axioms():
    start = time.monotonic()
    dual_numbers = FrobeniusAlgebra(truncated_polynomials(2), (Q(0), Q(1)))
    theories = {
        0: [Theory1d(n) for n in (1, 2, 3)],
        1: [
            FrobeniusAlgebra(rational_field(), (Q(1),)),
            dual_numbers,
            FrobeniusAlgebra(product_field(2), (Q(1), Q(1))),
        ],
    }
    for dim, group in theories.items():
        for theory in group:
            report = check_axioms(theory, dim, bound=3, seed=0, pairs=100)
            assert report.ok, report.summary()
            assert report.result("A3/gluing-composes").checked >= 100
            assert report.result("A4/empty-object").passed

    for n in (1, 2, 3):
        t = Theory1d(n)
        assert evaluate(t, identity_cobordism((PLUS,), 0)).matrix == RationalMatrix.identity(n)
        assert evaluate(t, Cobordism1((), (), (), 1)).matrix.entries == ((Q(n),),)

    sphere = Cobordism2((), (), (Component(0, frozenset()),))
    torus = Cobordism2((), (), (Component(1, frozenset()),))
    assert evaluate2(dual_numbers, sphere).matrix.entries == ((Q(0),),)
    for theory in theories[1]:
        assert evaluate2(theory, torus).matrix.entries == ((Q(theory.dim),),)
        assert evaluate2(theory, identity_cobordism((PLUS, PLUS), 1)).matrix == RationalMatrix.identity(theory.dim ** 2)
    _verdict("5 (TQFT axioms)", time.monotonic() - start, 60)


def test_criterion_6_action_suite(linear3):
    start = time.monotonic()
    strict_self = self_action(morph_double_category(linear3), "left")
    assert check_action(strict_self, EXHAUSTIVE).ok
    weak_self = self_action(span_double_category(default_universe(3), seed=0), "right")
    assert check_action(weak_self, 200, seed=2).ok

    pull = pullback_action(default_universe(4), seed=0, two_cell_budget=80, n_bundle_maps=60)
    report = check_action(pull, 250, seed=2)
    assert report.ok, report.summary()

    mod = module_action(seed=0, max_cells=20)
    assert check_action(mod, 100, seed=2).ok

    pointed = iso_action(default_universe(3), seed=0)
    assert check_action(pointed, 200, seed=2).ok

    seed_obj = next(o for o in pointed.acted.objects if len(o.carrier) == 3)
    res = orbit(pointed, [seed_obj], budget=5000)
    validate_subcategory(pointed, res.objects, res.morphisms)
    small_pull = pullback_action(default_universe(2), seed=0, two_cell_budget=40, n_bundle_maps=30)
    bundle = next(b for b in small_pull.acted.objects if len(b.codomain) == 2)
    res2 = orbit(small_pull, [bundle], budget=20000)
    validate_subcategory(small_pull, res2.objects, res2.morphisms)

    charclass = check_characteristic_class(
        pull, fiber_count_transport, fiber_count_class, EXHAUSTIVE
    )
    assert charclass.ok
    assert charclass.results[0].checked > 100_000  # exhaustive over the size-4 universe
    _verdict("6 (action law suite)", time.monotonic() - start, 30)


def test_criterion_7_duality_and_functors(linear3, cyclic3):
    start = time.monotonic()
    shipped = [
        morph_double_category(linear3),
        iso_double_category(cyclic3),
        span_double_category(default_universe(3), seed=0),
        monoidal_trivialbase(default_universe(3), seed=0),
        monoidal_action_double_category(default_universe(3), seed=0),
        alg_double_category(seed=0, max_cells=16),
        cobordism_double_category(0, bound=3, seed=0),
        cobordism_double_category(1, bound=3, seed=0),
    ]
    for instance in shipped:
        assert dual(dual(instance)) is instance

    for dim in (0, 1):
        c = cobordism_double_category(dim, bound=3 if dim == 0 else 2, seed=0)
        minus = orientation_double_functor(c)
        assert check_double_functor(minus, 250, seed=3).ok
        union, _ = union_double_functor(c, max_cells=200, seed=3)
        assert check_double_functor(union, 250, seed=3).ok
        twice = compose_double_functors(minus, orientation_double_functor(minus.target))
        assert all(twice.obj0(x) == x for x in c.obj0)
        assert all(twice.mor0(p) == p for p in c.mor0)
        assert all(twice.obj1(y) == y for y in c.obj1)
        assert all(twice.mor2(a) == a for a in c.mor2)
    _verdict("7 (duality and functors)", time.monotonic() - start, 10)


def test_criterion_8_cli_contract(capsys, tmp_path):
    start = time.monotonic()

    def run(*argv):
        code = cli_main([str(a) for a in argv])
        return code, capsys.readouterr().out

    goldens = [
        (
            DATA / "golden" / "laws_morph_linear3.json",
            ("laws", DATA / "morph_linear3.json", "--exhaustive", "--json", "--no-timestamp"),
            0,
        ),
        (
            DATA / "golden" / "compose_copants_pants.json",
            ("compose", DATA / "cobord1_cells.json", "--cells", "copants,pants"),
            0,
        ),
        (
            DATA / "golden" / "tqft_torus_dual_numbers.json",
            (
                "tqft", DATA / "frobenius_dual_numbers.json", DATA / "cobord1_cells.json",
                "--cell", "main", "--json", "--no-timestamp",
            ),
            0,
        ),
        (
            DATA / "golden" / "action_charclass_pullback.json",
            ("action", DATA / "action_pullback.json", "charclass", "--exhaustive", "--json", "--no-timestamp"),
            0,
        ),
        (
            DATA / "golden" / "action_orbit_iso.json",
            ("action", DATA / "action_iso.json", "orbit", "--seed-object", "3"),
            0,
        ),
    ]
    for golden_path, argv, want_code in goldens:
        code, out = run(*argv)
        assert code == want_code, f"{argv} exited {code}"
        assert out == golden_path.read_text(), f"output drifted from {golden_path.name}"
        code2, out2 = run(*argv)
        assert out2 == out  # byte-identical rerun

    code, _ = run("laws", DATA / "fincat_bad.json", "--no-timestamp")
    assert code == 1
    code, _ = run("compose", DATA / "cobord1_cells.json", "--cells", "pants,pants")
    assert code == 1
    bad = tmp_path / "broken.json"
    bad.write_text("{")
    code, _ = run("laws", bad)
    assert code == 2
    _verdict("8 (CLI contract)", time.monotonic() - start, 30)
