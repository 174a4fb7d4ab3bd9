import random
from fractions import Fraction as Q

import pytest
import sympy

from doublecat.bimod import (
    AlgebraMap,
    Bimodule,
    BimoduleCell,
    FinDimAlgebra,
    alg_double_category,
    bimodule_associator,
    bimodule_hom_basis,
    bimodule_left_unitor,
    bimodule_right_unitor,
    include_composition_witness,
    include_morph_alg,
    product_field,
    rational_field,
    regular_bimodule,
    standard_algebra_corpus,
    standard_bimodule_corpus,
    tensor_over,
    truncated_polynomials,
    upper_triangular_2x2,
)
from doublecat.core import check_double_category
from doublecat.errors import StructureError
from doublecat.ratmat import RationalMatrix


def sympy_rank(mat: RationalMatrix) -> int:
    if mat.rows == 0:
        return 0
    return sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in mat.entries]
    ).rank()


def relation_matrix(m: Bimodule, n: Bimodule) -> RationalMatrix:
    """The relation span rebuilt from scratch: (m_i.b (x) n_j) - (m_i (x) b.n_j)."""
    b = m.right
    rows = []
    for bi in range(b.dim):
        bvec = b.basis_vector(bi)
        right = m.right_act(bvec)
        left = n.left_act(bvec)
        for i in range(m.dim):
            for j in range(n.dim):
                row = [Q(0)] * (m.dim * n.dim)
                for s in range(m.dim):
                    row[s * n.dim + j] += right.entries[s][i]
                for t in range(n.dim):
                    row[i * n.dim + t] -= left.entries[t][j]
                rows.append(row)
    return RationalMatrix.from_rows(rows)


def corpus_pairs(count, seed=0):
    algebras, maps = standard_algebra_corpus()
    bims = standard_bimodule_corpus(algebras, maps)
    rng = random.Random(seed)
    by_left = {}
    for bm in bims:
        by_left.setdefault(bm.left, []).append(bm)
    pairs = []
    while len(pairs) < count:
        m = rng.choice(bims)
        options = by_left.get(m.right, ())
        if options:
            pairs.append((m, rng.choice(options)))
    return pairs


def test_algebra_validation_rejects_broken_table():
    with pytest.raises(StructureError):
        FinDimAlgebra(
            2,
            (((Q(1), Q(0)), (Q(0), Q(1))), ((Q(0), Q(1)), (Q(1), Q(0)))),
            (Q(1), Q(1)),  # not a unit for this table
        )


def test_upper_triangular_is_noncommutative_but_valid():
    t2 = upper_triangular_2x2()
    assert not t2.is_commutative()
    assert regular_bimodule(t2).dim == 3


def test_algebra_map_must_be_multiplicative():
    dual = truncated_polynomials(2)
    with pytest.raises(StructureError):
        AlgebraMap(dual, dual, RationalMatrix.from_rows([[1, 1], [0, 1]]))


def test_regular_bimodule_of_dual_numbers_has_shift_action():
    reg = regular_bimodule(truncated_polynomials(2))
    assert reg.left_action[1].entries == ((Q(0), Q(0)), (Q(1), Q(0)))
    assert reg.right_action[1] == reg.left_action[1]  # commutative algebra


def test_tensor_over_field_has_product_dimension():
    # over the 1-dimensional algebra the only relations are scalar shuffles,
    # so dim(M (x)_k N) = dim M * dim N
    k = rational_field()
    two = include_morph_alg(AlgebraMap(k, truncated_polynomials(2), RationalMatrix.from_rows([[1], [0]])))
    m2 = Bimodule(k, k, 2, (RationalMatrix.identity(2),), (RationalMatrix.identity(2),), name="k^2")
    m3 = Bimodule(k, k, 3, (RationalMatrix.identity(3),), (RationalMatrix.identity(3),), name="k^3")
    assert tensor_over(m2, m3).module.dim == 6
    assert tensor_over(regular_bimodule(k), regular_bimodule(k)).module.dim == 1
    assert two.dim == 2


def test_tensor_quotient_of_augmentation_is_one_dimensional():
    k = rational_field()
    dual = truncated_polynomials(2)
    m = include_morph_alg(AlgebraMap(k, dual, RationalMatrix.from_rows([[1], [0]])))
    n = Bimodule(
        dual, k, 1,
        (RationalMatrix.identity(1), RationalMatrix.zeros(1, 1)),
        (RationalMatrix.identity(1),),
        name="dual/(x)",
    )
    dec = tensor_over(m, n)
    assert dec.module.dim == 1
    assert dec.relation_rank == 1


def test_tensor_dimension_matches_independent_rank_oracle():
    for m, n in corpus_pairs(100, seed=42):
        dec = tensor_over(m, n)
        rank = sympy_rank(relation_matrix(m, n))
        assert dec.module.dim == m.dim * n.dim - rank
        assert dec.relation_rank == rank
        assert dec.projection @ dec.inclusion == RationalMatrix.identity(dec.module.dim)


def test_unit_isomorphisms_are_full_rank_intertwiners():
    algebras, maps = standard_algebra_corpus()
    for bm in standard_bimodule_corpus(algebras, maps):
        lu = bimodule_left_unitor(bm)
        ru = bimodule_right_unitor(bm)
        for cell in (lu, ru):
            assert cell.tgt == bm
            assert cell.src.dim == bm.dim
            assert cell.w.rank() == bm.dim  # full rank square intertwiner


def test_associator_witness_square_and_nonsingular():
    triples = 0
    algebras, maps = standard_algebra_corpus()
    bims = standard_bimodule_corpus(algebras, maps)
    rng = random.Random(9)
    by_left = {}
    for bm in bims:
        by_left.setdefault(bm.left, []).append(bm)
    while triples < 25:
        m = rng.choice(bims)
        ns = by_left.get(m.right, ())
        if not ns:
            continue
        n = rng.choice(ns)
        ps = by_left.get(n.right, ())
        if not ps:
            continue
        p = rng.choice(ps)
        w = bimodule_associator(m, n, p)
        assert w.src.dim == w.tgt.dim
        assert w.w.rank() == w.src.dim
        w.w.inverse()  # must not raise
        triples += 1


def test_include_of_identity_is_regular_bimodule():
    dual = truncated_polynomials(2)
    assert include_morph_alg(AlgebraMap.identity(dual)) == regular_bimodule(dual)


def test_include_of_unit_map_gives_two_dimensional_module():
    k = rational_field()
    dual = truncated_polynomials(2)
    m = include_morph_alg(AlgebraMap(k, dual, RationalMatrix.from_rows([[1], [0]])))
    assert (m.left, m.right, m.dim) == (k, dual, 2)


def test_include_respects_composition_up_to_iso():
    algebras, maps = standard_algebra_corpus()
    checked = 0
    for f in maps:
        for g in maps:
            if f.tgt != g.src:
                continue
            w = include_composition_witness(f, g)
            assert w.src.dim == w.tgt.dim == g.tgt.dim
            assert w.w.rank() == w.tgt.dim
            checked += 1
    assert checked >= 10


def test_bimodule_cell_validator_rejects_non_intertwiner():
    dual = truncated_polynomials(2)
    reg = regular_bimodule(dual)
    ident = AlgebraMap.identity(dual)
    with pytest.raises(StructureError):
        BimoduleCell(reg, reg, ident, ident, RationalMatrix.from_rows([[1, 1], [0, 1]]))


def test_hom_basis_solves_the_intertwining_equations():
    dual = truncated_polynomials(2)
    reg = regular_bimodule(dual)
    ident = AlgebraMap.identity(dual)
    basis = bimodule_hom_basis(reg, reg, ident, ident)
    # endomorphisms of the regular bimodule = the (commutative) algebra itself
    assert len(basis) == 2
    for w in basis:
        BimoduleCell(reg, reg, ident, ident, w)  # validates


def test_alg_double_category_passes_weak_laws():
    d = alg_double_category(seed=0, max_cells=28)
    report = check_double_category(d, 100, seed=5)
    assert report.ok, report.summary()
    assert report.result("axiom/associator-validity").checked > 0
    k = rational_field()
    split = product_field(2)
    dec = tensor_over(regular_bimodule(split), regular_bimodule(split))
    assert d.d_obj(dec.module) == split and d.r_obj(dec.module) == split
