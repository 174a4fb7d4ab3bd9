"""Field-theory evaluation of cobordisms over exact rationals.

A 0-dimensional theory assigns a vector space V of dimension ``dim`` to the
positively oriented point and its dual to the negative one; intervals
contract indices (Kronecker deltas) and each closed loop multiplies by
``dim V``. A 1-dimensional theory is a commutative Frobenius algebra: a
connected component with m inputs, n outputs and genus g evaluates to the
map "multiply everything, insert g handles, comultiply", with the counit and
unit covering the closed-off ends.

The base field is the rationals, so all comparisons are exact; duality is
realized by explicit pairing matrices (the identity on dual bases for d = 0,
the Frobenius form per circle for d = 1).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

from .bimod import FinDimAlgebra, Vector
from .cobord import (
    Cobordism,
    Cobordism1,
    Cobordism2,
    CobordismCell,
    Perm,
    all_objects,
    charge,
    cobordism_double_category,
    compose_cobordism,
    identity_cobordism,
    random_cobordism1,
    random_cobordism2,
    reverse_orientation,
)
from .core import (
    EXHAUSTIVE,
    DoubleCategoryInstance,
    DoubleFunctor,
    LawReport,
    LawResult,
    _LawEngine,
)
from .diagram import SquareCell
from .errors import StructureError
from .ratmat import Q, RationalMatrix, factor_permutation_matrix, kron_all


@dataclass(frozen=True)
class Theory1d:
    """A d = 0 theory: a vector space for the point, its dual for the other."""

    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise StructureError("theory dimension must be nonnegative")


@dataclass(frozen=True)
class FrobeniusAlgebra:
    """A commutative algebra with a counit whose bilinear form is nondegenerate.

    The comultiplication is derived from the form (the adjoint of the
    multiplication), never user-supplied, and the handle operator is
    ``multiplication . comultiplication``. Construction verifies commutativity,
    nondegeneracy and the Frobenius compatibility on all basis pairs.
    """

    algebra: FinDimAlgebra
    counit: Vector

    def __post_init__(self):
        a = self.algebra
        if len(self.counit) != a.dim:
            raise StructureError("counit vector must match the algebra dimension")
        if not a.is_commutative():
            raise StructureError("a Frobenius theory needs a commutative algebra")
        try:
            self.gram.inverse()
        except ValueError:
            raise StructureError("the bilinear form of the counit is degenerate") from None
        d = a.dim
        eye = RationalMatrix.identity(d)
        lhs = self.delta @ self.multiplication
        rhs = self.multiplication.kron(eye) @ eye.kron(self.delta)
        if lhs != rhs:
            raise StructureError("Frobenius compatibility fails")
        eps = RationalMatrix.row_vector(self.counit)
        if eps.kron(eye) @ self.delta != eye or eye.kron(eps) @ self.delta != eye:
            raise StructureError("derived comultiplication fails the counit law")
        form_at_unit = self.pair(a.unit, a.unit)
        if self.apply_counit(a.multiply(a.unit, a.unit)) != form_at_unit:
            raise StructureError("counit of the unit disagrees with the form at (1,1)")

    def apply_counit(self, v: Vector):
        return sum(c * e for c, e in zip(v, self.counit))

    def pair(self, u: Vector, v: Vector):
        return self.apply_counit(self.algebra.multiply(u, v))

    @cached_property
    def multiplication(self) -> RationalMatrix:
        d = self.algebra.dim
        return RationalMatrix.from_rows(
            [
                [self.algebra.table[i][j][k] for i in range(d) for j in range(d)]
                for k in range(d)
            ]
        )

    @cached_property
    def gram(self) -> RationalMatrix:
        d = self.algebra.dim
        return RationalMatrix.from_rows(
            [
                [self.pair(self.algebra.basis_vector(i), self.algebra.basis_vector(j)) for j in range(d)]
                for i in range(d)
            ]
        )

    @cached_property
    def delta(self) -> RationalMatrix:
        ginv = self.gram.inverse()
        return ginv.kron(ginv) @ self.multiplication.transpose() @ self.gram

    @cached_property
    def handle(self) -> RationalMatrix:
        return self.multiplication @ self.delta

    @cached_property
    def unit_column(self) -> RationalMatrix:
        return RationalMatrix.column(self.algebra.unit)

    @property
    def dim(self) -> int:
        return self.algebra.dim


Theory = Theory1d | FrobeniusAlgebra


def _theory_dim(theory: Theory, cobordism_dim: int) -> int:
    if cobordism_dim == 0:
        if not isinstance(theory, Theory1d):
            raise StructureError("d = 0 cobordisms need a vector-space theory")
        return theory.dim
    if not isinstance(theory, FrobeniusAlgebra):
        raise StructureError("d = 1 cobordisms need a Frobenius-algebra theory")
    return theory.dim


@dataclass(frozen=True)
class ObjectAssignment:
    """What the functor does on a closed manifold: dimensions and the pairing
    against the orientation-reversed object."""

    obj: tuple
    factor_dim: int
    dim: int
    pairing: RationalMatrix


@dataclass(frozen=True)
class LinearCellMap:
    source: tuple
    target: tuple
    matrix: RationalMatrix


def assign_object(theory: Theory, x: tuple, cobordism_dim: int) -> ObjectAssignment:
    """Tensor a factor per point/circle; the empty object gets the base field."""
    n = _theory_dim(theory, cobordism_dim)
    total = n ** len(x)
    if cobordism_dim == 0:
        pairing = RationalMatrix.identity(total)
    else:
        pairing = kron_all([theory.gram] * len(x))
    return ObjectAssignment(x, n, total, pairing)


def evaluate1(theory: Theory1d, c: Cobordism1) -> LinearCellMap:
    """Tensor-network contraction: intervals are Kronecker deltas between the
    indices at their endpoints; each loop multiplies by dim V.

    Columns are enumerated once; an interval between two source points prunes
    inconsistent columns, one from source to target copies the index, and one
    between two target points ranges over its free value.
    """
    n = theory.dim
    rows = n ** len(c.tgt)
    cols = n ** len(c.src)
    scalar = Q(n) ** c.loops
    ss, st, tt = [], [], []
    for (side_p, i), (side_q, j) in c.pairs:
        if side_p == "s" and side_q == "s":
            ss.append((i, j))
        elif side_p == "s" and side_q == "t":
            st.append((i, j))
        elif side_p == "t" and side_q == "s":
            st.append((j, i))
        else:
            tt.append((i, j))
    out = [[Q(0)] * cols for _ in range(rows)]
    for src_idx in itertools.product(range(n), repeat=len(c.src)):
        if any(src_idx[a] != src_idx[b] for a, b in ss):
            continue
        template = [0] * len(c.tgt)
        for i, j in st:
            template[j] = src_idx[i]
        s = _flatten(src_idx, n)
        for free in itertools.product(range(n), repeat=len(tt)):
            tgt_idx = list(template)
            for (a, b), v in zip(tt, free):
                tgt_idx[a] = v
                tgt_idx[b] = v
            out[_flatten(tgt_idx, n)][s] = scalar
    return LinearCellMap(c.src, c.tgt, RationalMatrix(rows, cols, tuple(tuple(row) for row in out)))


def _flatten(idx: tuple[int, ...], base: int) -> int:
    out = 0
    for d in idx:
        out = out * base + d
    return out


def _iterated_multiplication(theory: FrobeniusAlgebra, m: int) -> RationalMatrix:
    d = theory.dim
    if m == 0:
        return theory.unit_column
    out = RationalMatrix.identity(d)
    for _ in range(m - 1):
        out = theory.multiplication @ out.kron(RationalMatrix.identity(d))
    return out


def _iterated_comultiplication(theory: FrobeniusAlgebra, n: int) -> RationalMatrix:
    d = theory.dim
    if n == 0:
        return RationalMatrix.row_vector(theory.counit)
    out = RationalMatrix.identity(d)
    for _ in range(n - 1):
        out = out.kron(RationalMatrix.identity(d)) @ theory.delta
    return out


def evaluate2(theory: FrobeniusAlgebra, c: Cobordism2) -> LinearCellMap:
    """Per component: multiply the inputs, apply genus-many handles, comultiply
    to the outputs; closed components contribute the scalar eps(H^g(1)). The
    full matrix is the tensor product over components conjugated by the
    permutations aligning component-local circles with the object order.

    Circle orientations do not enter the component maps; the Frobenius form
    identifies the algebra with its dual, and the axiom checker exercises that
    identification through the recorded pairings.
    """
    d = theory.dim
    scalar = Q(1)
    comp_mats = []
    in_list: list[int] = []
    out_list: list[int] = []
    for comp in c.components:
        ins = sorted(i for tag, i in comp.boundary if tag == "s")
        outs = sorted(i for tag, i in comp.boundary if tag == "t")
        mat = _iterated_comultiplication(theory, len(outs))
        for _ in range(comp.genus):
            mat = mat @ theory.handle
        mat = mat @ _iterated_multiplication(theory, len(ins))
        if not comp.boundary:
            scalar *= mat.entries[0][0]
        else:
            comp_mats.append(mat)
            in_list.extend(ins)
            out_list.extend(outs)
    body = kron_all(comp_mats).scale(scalar)
    # conjugate by the factor permutations via index remapping: the entry at
    # (object-ordered J, I) sits at (concat-ordered) positions in the body
    rows = d ** len(c.tgt)
    cols = d ** len(c.src)
    in_pos = _factor_positions(in_list, d, len(c.src))
    out_pos = _factor_positions(out_list, d, len(c.tgt))
    entries = tuple(
        tuple(body.entries[out_pos[j]][in_pos[i]] for i in range(cols))
        for j in range(rows)
    )
    return LinearCellMap(c.src, c.tgt, RationalMatrix(rows, cols, entries))


def _factor_positions(slots: list[int], dim: int, width: int) -> list[int]:
    """For each flat object-ordered index, its flat position in the coordinate
    order that lists the factors named by ``slots`` (most significant first)."""
    positions = []
    for flat in range(dim**width):
        digits = []
        x = flat
        for _ in range(width):
            digits.append(x % dim)
            x //= dim
        digits.reverse()
        pos = 0
        for q in slots:
            pos = pos * dim + digits[q]
        positions.append(pos)
    return positions


def evaluate(theory: Theory, c: Cobordism) -> LinearCellMap:
    if isinstance(c, Cobordism1):
        if not isinstance(theory, Theory1d):
            raise StructureError("d = 0 cobordisms need a vector-space theory")
        return evaluate1(theory, c)
    if not isinstance(theory, FrobeniusAlgebra):
        raise StructureError("d = 1 cobordisms need a Frobenius-algebra theory")
    return evaluate2(theory, c)


def evaluate_perm(theory: Theory, p: Perm, cobordism_dim: int) -> RationalMatrix:
    """A relabeling of points/circles permutes the tensor factors."""
    n = _theory_dim(theory, cobordism_dim)
    inv = p.inverse()
    return factor_permutation_matrix([inv(q) for q in range(len(p.tgt))], n)


# ---------------------------------------------------------------------------
# the category of exact matrices and Morph of it
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatMor:
    """A linear map between coordinate spaces, recorded with its dimensions."""

    src: int
    tgt: int
    matrix: RationalMatrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.tgt, self.src):
            raise StructureError("matrix shape does not match declared dimensions")

    @staticmethod
    def identity(n: int) -> "MatMor":
        return MatMor(n, n, RationalMatrix.identity(n))

    def then(self, other: "MatMor") -> "MatMor":
        if self.tgt != other.src:
            raise StructureError("linear maps not composable")
        return MatMor(self.src, other.tgt, other.matrix @ self.matrix)


def morph_of_matrices(
    obj0=(), mor0=(), obj1=(), mor2=(), name: str = "Morph(Mat(Q))"
) -> DoubleCategoryInstance:
    """Morph of the category of exact matrices, with supplied enumerations.

    The category is infinite; enumerations list whatever cells a functor image
    or a test wants on record, while the tables work on arbitrary cells.
    """
    compose = lambda f, g: f.then(g)
    return DoubleCategoryInstance(
        name=name,
        obj0=tuple(obj0),
        mor0=tuple(mor0),
        obj1=tuple(obj1),
        mor2=tuple(mor2),
        src0=lambda f: f.src,
        tgt0=lambda f: f.tgt,
        compose0=compose,
        id0=MatMor.identity,
        d_obj=lambda f: f.src,
        r_obj=lambda f: f.tgt,
        src2=lambda a: a.left,
        tgt2=lambda a: a.right,
        d_mor=lambda a: a.top,
        r_mor=lambda a: a.bottom,
        star_obj=compose,
        star_mor=lambda a, b: SquareCell(
            a.top, b.bottom, a.left.then(b.left), a.right.then(b.right)
        ),
        vcompose2=lambda a, b: SquareCell(
            a.top.then(b.top), a.bottom.then(b.bottom), a.left, b.right
        ),
        id1=lambda f: SquareCell(MatMor.identity(f.src), MatMor.identity(f.tgt), f, f),
        unit_obj=MatMor.identity,
        unit_mor=lambda u: SquareCell(u, u, MatMor.identity(u.src), MatMor.identity(u.tgt)),
        strict=True,
    )


def tqft_double_functor(
    theory: Theory,
    cobordism_dim: int,
    *,
    bound: int = 3,
    seed: int = 0,
    n_cobordisms: int = 40,
    n_cells: int = 30,
    max_genus: int = 2,
) -> DoubleFunctor:
    """Package object assignment and evaluation as a double functor from a
    sampled cobordism instance into Morph of exact matrices."""
    source = cobordism_double_category(
        cobordism_dim,
        bound,
        seed,
        n_cobordisms=n_cobordisms,
        n_cells=n_cells,
        max_genus=max_genus,
    )

    def on_obj0(x):
        return assign_object(theory, x, cobordism_dim).dim

    def on_mor0(p: Perm) -> MatMor:
        m = evaluate_perm(theory, p, cobordism_dim)
        return MatMor(on_obj0(p.src), on_obj0(p.tgt), m)

    def on_obj1(c: Cobordism) -> MatMor:
        cell = evaluate(theory, c)
        return MatMor(on_obj0(c.src), on_obj0(c.tgt), cell.matrix)

    def on_mor2(a: CobordismCell) -> SquareCell:
        return SquareCell(on_mor0(a.f1), on_mor0(a.f2), on_obj1(a.src), on_obj1(a.tgt))

    target = morph_of_matrices(
        obj0=dict.fromkeys(on_obj0(x) for x in source.obj0),
        mor0=dict.fromkeys(on_mor0(p) for p in source.mor0),
        obj1=dict.fromkeys(on_obj1(c) for c in source.obj1),
        mor2=dict.fromkeys(on_mor2(a) for a in source.mor2),
    )
    return DoubleFunctor(
        f"Z[{getattr(theory, 'dim', '?')}d{cobordism_dim}]",
        source,
        target,
        obj0=on_obj0,
        mor0=on_mor0,
        obj1=on_obj1,
        mor2=on_mor2,
    )


# ---------------------------------------------------------------------------
# the axioms
# ---------------------------------------------------------------------------


def _sample_composable_pairs(rng, cobordism_dim, bound, count, max_genus):
    objects = all_objects(bound)
    if cobordism_dim == 0:
        by_charge: dict = {}
        for x in objects:
            by_charge.setdefault(charge(x), []).append(x)
        while count > 0:
            pool = by_charge[rng.choice(list(by_charge))]
            x, y, z = (rng.choice(pool) for _ in range(3))
            yield (
                random_cobordism1(rng, x, y),
                random_cobordism1(rng, y, z),
            )
            count -= 1
    else:
        while count > 0:
            x, y, z = (rng.choice(objects) for _ in range(3))
            yield (
                random_cobordism2(rng, x, y, max_genus),
                random_cobordism2(rng, y, z, max_genus),
            )
            count -= 1


def check_axioms(
    theory: Theory,
    cobordism_dim: int,
    *,
    bound: int = 3,
    seed: int = 0,
    pairs: int = 100,
    union_samples: int = 30,
    max_genus: int = 2,
) -> LawReport:
    """Machine-check involutivity, multiplicativity, gluing compatibility, the
    value on the empty object and triviality on cylinders, each reported as a
    separate law over seeded samples.

    ``pairs`` composable pairs feed the gluing law A(3) and the adjointness
    law A(1); multiplicativity A(2) uses ``union_samples`` pairs over objects
    of at most two circles/points, since the union doubles the tensor size.
    """
    _theory_dim(theory, cobordism_dim)
    rng = random.Random(seed)
    objects = all_objects(bound)
    eng = _LawEngine(f"axioms[d={cobordism_dim}]", EXHAUSTIVE, seed)

    empty = assign_object(theory, (), cobordism_dim)
    eng.results.append(
        LawResult("A4/empty-object", empty.dim == 1, 1, None if empty.dim == 1 else f"dim={empty.dim}")
    )

    def a5(x):
        z = evaluate(theory, identity_cobordism(x, cobordism_dim))
        return None if z.matrix == RationalMatrix.identity(z.matrix.rows) else x

    eng.run("A5/identity-cylinders", objects, a5)

    def a1_objects(x):
        za = assign_object(theory, x, cobordism_dim)
        zb = assign_object(theory, reverse_orientation(x), cobordism_dim)
        if za.dim != zb.dim:
            return ("dual space has a different dimension", x)
        try:
            za.pairing.inverse()
        except ValueError:
            return ("pairing is singular", x)
        return None

    eng.run("A1/objects-dualized", objects, a1_objects)

    samples = [p for p in _sample_composable_pairs(rng, cobordism_dim, bound, pairs, max_genus)]
    small = [
        p
        for p in _sample_composable_pairs(
            rng, cobordism_dim, min(bound, 2), union_samples, max_genus
        )
    ]

    def a1_cells(pair):
        c, _ = pair
        zc = evaluate(theory, c).matrix
        zr = evaluate(theory, reverse_orientation(c)).matrix
        px = assign_object(theory, c.src, cobordism_dim).pairing
        py = assign_object(theory, c.tgt, cobordism_dim).pairing
        lhs = zr.transpose() @ px
        rhs = py @ zc
        return None if lhs == rhs else ("reversal is not the pairing-adjoint", c)

    eng.run("A1/cells-adjoint", samples, a1_cells)

    def a2_objects(pair):
        c, c2 = pair
        x, y = c.src, c2.src
        za = assign_object(theory, x, cobordism_dim).dim
        zb = assign_object(theory, y, cobordism_dim).dim
        zu = assign_object(theory, x + y, cobordism_dim).dim
        return None if zu == za * zb else (x, y)

    eng.run("A2/objects-multiplicative", samples, a2_objects)

    def a2_cells(pair):
        from .cobord import disjoint_union_cobordism

        c, c2 = pair
        lhs = evaluate(theory, disjoint_union_cobordism(c, c2)).matrix
        rhs = evaluate(theory, c).matrix.kron(evaluate(theory, c2).matrix)
        return None if lhs == rhs else ("union is not the tensor product", c, c2)

    eng.run("A2/cells-multiplicative", small, a2_cells)

    def a3(pair):
        c, c2 = pair
        glued = evaluate(theory, compose_cobordism(c, c2)).matrix
        factored = evaluate(theory, c2).matrix @ evaluate(theory, c).matrix
        return None if glued == factored else ("gluing does not factor", c, c2)

    eng.run("A3/gluing-composes", samples, a3)

    return eng.report()
