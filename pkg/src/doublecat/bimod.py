"""Algebras and bimodules over the exact rationals.

1-cells ``A => B`` are finite-dimensional (A, B)-bimodules; horizontal
composition of ``M: A => B`` with ``N: B => C`` is the tensor product over B,
computed as the quotient of the plain tensor by the relations
``(m.b) (x) n - m (x) (b.n)`` via exact Gaussian elimination. Quotients are
presented on the non-pivot (free) columns of the reduced relation matrix, so
representatives are canonical and every witness matrix is deterministic.

No floating point appears anywhere in this module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .core import DoubleCategoryInstance
from .errors import StructureError
from .ratmat import Q, RationalMatrix, frac

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class FinDimAlgebra:
    """A unital associative algebra given by structure constants.

    ``table[i][j]`` holds the coordinates of the basis product ``e_i e_j``.
    Associativity and the two-sided unit law are verified exhaustively on
    basis triples/pairs at construction.
    """

    dim: int
    table: tuple[tuple[Vector, ...], ...]
    unit: Vector
    name: str = field(default="algebra", compare=False)

    def __post_init__(self):
        n = self.dim
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise StructureError(f"{self.name}: structure table must be {n}x{n}")
        if any(len(v) != n for r in self.table for v in r):
            raise StructureError(f"{self.name}: product coordinates must have length {n}")
        if len(self.unit) != n:
            raise StructureError(f"{self.name}: unit vector must have length {n}")
        for i in range(n):
            ei = self.basis_vector(i)
            if self.multiply(self.unit, ei) != ei or self.multiply(ei, self.unit) != ei:
                raise StructureError(f"{self.name}: unit law fails on basis element {i}")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self.multiply(self.table[i][j], self.basis_vector(k))
                    rhs = self.multiply(self.basis_vector(i), self.table[j][k])
                    if lhs != rhs:
                        raise StructureError(
                            f"{self.name}: associativity fails on basis triple ({i},{j},{k})"
                        )

    def basis_vector(self, i: int) -> Vector:
        return tuple(Q(1 if k == i else 0) for k in range(self.dim))

    def multiply(self, u: Vector, v: Vector) -> Vector:
        n = self.dim
        out = [Q(0)] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                c = u[i] * v[j]
                for k in range(n):
                    out[k] += c * self.table[i][j][k]
        return tuple(out)

    def left_mult_matrix(self, v: Vector) -> RationalMatrix:
        cols = [self.multiply(v, self.basis_vector(j)) for j in range(self.dim)]
        return RationalMatrix.from_rows(
            [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]
        )

    def right_mult_matrix(self, v: Vector) -> RationalMatrix:
        cols = [self.multiply(self.basis_vector(i), v) for i in range(self.dim)]
        return RationalMatrix.from_rows(
            [[cols[i][k] for i in range(self.dim)] for k in range(self.dim)]
        )

    def is_commutative(self) -> bool:
        return all(
            self.table[i][j] == self.table[j][i]
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def __repr__(self):
        return f"FinDimAlgebra({self.name}, dim={self.dim})"


def rational_field() -> FinDimAlgebra:
    return FinDimAlgebra(1, (((Q(1),),),), (Q(1),), name="Q")


def truncated_polynomials(n: int, name: str | None = None) -> FinDimAlgebra:
    """Q[x]/(x^n) on the basis 1, x, ..., x^(n-1)."""
    table = tuple(
        tuple(
            tuple(Q(1 if k == i + j else 0) for k in range(n)) for j in range(n)
        )
        for i in range(n)
    )
    unit = tuple(Q(1 if k == 0 else 0) for k in range(n))
    return FinDimAlgebra(n, table, unit, name=name or f"Q[x]/(x^{n})")


def product_field(n: int, name: str | None = None) -> FinDimAlgebra:
    """Q x ... x Q with componentwise multiplication."""
    table = tuple(
        tuple(
            tuple(Q(1 if i == j == k else 0) for k in range(n)) for j in range(n)
        )
        for i in range(n)
    )
    unit = tuple(Q(1) for _ in range(n))
    return FinDimAlgebra(n, table, unit, name=name or f"Q^{n}")


def upper_triangular_2x2() -> FinDimAlgebra:
    """Upper-triangular 2x2 matrices: basis e11, e22, e12. Noncommutative."""
    def basis(i):
        return tuple(Q(1 if k == i else 0) for k in range(3))

    zero = (Q(0),) * 3
    prod = {
        (0, 0): basis(0), (0, 1): zero, (0, 2): basis(2),
        (1, 0): zero, (1, 1): basis(1), (1, 2): zero,
        (2, 0): zero, (2, 1): basis(2), (2, 2): zero,
    }
    table = tuple(tuple(prod[(i, j)] for j in range(3)) for i in range(3))
    return FinDimAlgebra(3, table, (Q(1), Q(1), Q(0)), name="T2")


@dataclass(frozen=True)
class AlgebraMap:
    """A unital algebra homomorphism, stored as its matrix on basis coordinates."""

    src: FinDimAlgebra
    tgt: FinDimAlgebra
    matrix: RationalMatrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.tgt.dim, self.src.dim):
            raise StructureError("algebra map matrix has the wrong shape")
        if self.matrix.apply(self.src.unit) != self.tgt.unit:
            raise StructureError("algebra map is not unital")
        for i in range(self.src.dim):
            for j in range(self.src.dim):
                lhs = self.matrix.apply(self.src.table[i][j])
                rhs = self.tgt.multiply(
                    self.matrix.apply(self.src.basis_vector(i)),
                    self.matrix.apply(self.src.basis_vector(j)),
                )
                if lhs != rhs:
                    raise StructureError(
                        f"algebra map not multiplicative on basis pair ({i},{j})"
                    )

    @staticmethod
    def identity(a: FinDimAlgebra) -> "AlgebraMap":
        return AlgebraMap(a, a, RationalMatrix.identity(a.dim))

    def then(self, other: "AlgebraMap") -> "AlgebraMap":
        if self.tgt != other.src:
            raise StructureError("algebra maps not composable")
        return AlgebraMap(self.src, other.tgt, other.matrix @ self.matrix)

    def __call__(self, v: Vector) -> Vector:
        return self.matrix.apply(v)

    def __repr__(self):
        return f"AlgebraMap({self.src.name}->{self.tgt.name}, {self.matrix.entries})"


@dataclass(frozen=True)
class Bimodule:
    """A left-``left`` right-``right`` module with explicit action matrices.

    ``left_action[i]`` is the matrix of the i-th left basis element acting;
    ``right_action[j]`` likewise on the right. Actions must be unital, respect
    the algebra products (anti-compatibly on the right) and commute with each
    other; all of this is verified on basis pairs at construction.
    """

    left: FinDimAlgebra
    right: FinDimAlgebra
    dim: int
    left_action: tuple[RationalMatrix, ...]
    right_action: tuple[RationalMatrix, ...]
    name: str = field(default="module", compare=False)

    def __post_init__(self):
        m = self.dim
        if len(self.left_action) != self.left.dim or len(self.right_action) != self.right.dim:
            raise StructureError(f"{self.name}: one action matrix per algebra basis element")
        for mat in self.left_action + self.right_action:
            if (mat.rows, mat.cols) != (m, m):
                raise StructureError(f"{self.name}: action matrices must be {m}x{m}")
        if self.left_act(self.left.unit) != RationalMatrix.identity(m):
            raise StructureError(f"{self.name}: left action not unital")
        if self.right_act(self.right.unit) != RationalMatrix.identity(m):
            raise StructureError(f"{self.name}: right action not unital")
        for i in range(self.left.dim):
            for j in range(self.left.dim):
                if self.left_action[i] @ self.left_action[j] != self.left_act(
                    self.left.table[i][j]
                ):
                    raise StructureError(
                        f"{self.name}: left action not multiplicative at ({i},{j})"
                    )
        for i in range(self.right.dim):
            for j in range(self.right.dim):
                # m.(ab) = (m.a).b, so the matrix of ab is (matrix of b)(matrix of a)
                if self.right_act(self.right.table[i][j]) != self.right_action[
                    j
                ] @ self.right_action[i]:
                    raise StructureError(
                        f"{self.name}: right action not anti-multiplicative at ({i},{j})"
                    )
        for i in range(self.left.dim):
            for j in range(self.right.dim):
                if (
                    self.left_action[i] @ self.right_action[j]
                    != self.right_action[j] @ self.left_action[i]
                ):
                    raise StructureError(
                        f"{self.name}: left and right actions do not commute at ({i},{j})"
                    )

    def left_act(self, v: Vector) -> RationalMatrix:
        out = RationalMatrix.zeros(self.dim, self.dim)
        for i, c in enumerate(v):
            if c != 0:
                out = out + self.left_action[i].scale(c)
        return out

    def right_act(self, v: Vector) -> RationalMatrix:
        out = RationalMatrix.zeros(self.dim, self.dim)
        for j, c in enumerate(v):
            if c != 0:
                out = out + self.right_action[j].scale(c)
        return out

    def __repr__(self):
        return f"Bimodule({self.name}: {self.left.name}=>{self.right.name}, dim={self.dim})"


@dataclass(frozen=True)
class BimoduleCell:
    """A 2-cell ``(u, v, w)``: ``w(a.m.b) = u(a).w(m).v(b)`` on all basis triples."""

    src: Bimodule
    tgt: Bimodule
    u: AlgebraMap
    v: AlgebraMap
    w: RationalMatrix

    def __post_init__(self):
        if self.u.src != self.src.left or self.u.tgt != self.tgt.left:
            raise StructureError("cell: u must map the left algebras")
        if self.v.src != self.src.right or self.v.tgt != self.tgt.right:
            raise StructureError("cell: v must map the right algebras")
        if (self.w.rows, self.w.cols) != (self.tgt.dim, self.src.dim):
            raise StructureError("cell: linear part has the wrong shape")
        for i in range(self.src.left.dim):
            a = self.src.left.basis_vector(i)
            if self.w @ self.src.left_act(a) != self.tgt.left_act(self.u(a)) @ self.w:
                raise StructureError(f"cell: left intertwining fails on basis element {i}")
        for j in range(self.src.right.dim):
            b = self.src.right.basis_vector(j)
            if self.w @ self.src.right_act(b) != self.tgt.right_act(self.v(b)) @ self.w:
                raise StructureError(f"cell: right intertwining fails on basis element {j}")


# ---------------------------------------------------------------------------
# the tensor product over the middle algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorDecomposition:
    """A tensor quotient with its canonical surjection and chosen section.

    ``projection`` maps plain-tensor coordinates (index ``i * dim N + j``) to
    quotient coordinates; ``inclusion`` sends the quotient basis to its
    free-column representatives, so ``projection @ inclusion`` is the identity.
    """

    module: Bimodule
    projection: RationalMatrix
    inclusion: RationalMatrix
    free_indices: tuple[int, ...]
    relation_rank: int


@lru_cache(maxsize=4096)
def tensor_over(m: Bimodule, n: Bimodule) -> TensorDecomposition:
    """The composite bimodule ``M (x)_B N`` for ``M: A => B`` and ``N: B => C``.

    Builds the plain tensor (dimension ``dim M * dim N``), spans the relation
    subspace by ``(m_i . b) (x) n_j - m_i (x) (b . n_j)`` over basis triples,
    and quotients by exact elimination. The induced outer actions act on the
    canonical representatives.
    """
    if m.right != n.left:
        raise StructureError(
            f"tensor_over: middle algebras differ ({m.right.name} vs {n.left.name})"
        )
    b = m.right
    dm, dn = m.dim, n.dim
    size = dm * dn
    rows = []
    for bi in range(b.dim):
        rho = m.right_action[bi]
        lam = n.left_action[bi]
        for i in range(dm):
            for j in range(dn):
                row = [Q(0)] * size
                for s in range(dm):
                    row[s * dn + j] += rho.entries[s][i]
                for t in range(dn):
                    row[i * dn + t] -= lam.entries[t][j]
                rows.append(row)
    relations = RationalMatrix.from_rows(rows) if rows else RationalMatrix.zeros(0, size)
    reduced, pivots = relations.rref()
    pivot_set = set(pivots)
    free = tuple(c for c in range(size) if c not in pivot_set)
    q = len(free)

    proj = [[Q(0)] * size for _ in range(q)]
    for fi, c in enumerate(free):
        proj[fi][c] = Q(1)
    for r, p in enumerate(pivots):
        for fi, c in enumerate(free):
            proj[fi][p] = -reduced.entries[r][c]
    projection = RationalMatrix.from_rows(proj) if q else RationalMatrix.zeros(0, size)
    inc = [[Q(0)] * q for _ in range(size)]
    for fi, c in enumerate(free):
        inc[c][fi] = Q(1)
    inclusion = RationalMatrix.from_rows(inc) if size else RationalMatrix.zeros(0, 0)

    eye_n = RationalMatrix.identity(dn)
    eye_m = RationalMatrix.identity(dm)
    left_action = tuple(
        projection @ m.left_action[i].kron(eye_n) @ inclusion for i in range(m.left.dim)
    )
    right_action = tuple(
        projection @ eye_m.kron(n.right_action[j]) @ inclusion for j in range(n.right.dim)
    )
    module = Bimodule(
        m.left,
        n.right,
        q,
        left_action,
        right_action,
        name=f"{m.name}(x){n.name}",
    )
    return TensorDecomposition(module, projection, inclusion, free, len(pivots))


def regular_bimodule(a: FinDimAlgebra) -> Bimodule:
    """``a`` acting on itself by left and right multiplication."""
    left = tuple(a.left_mult_matrix(a.basis_vector(i)) for i in range(a.dim))
    right = tuple(a.right_mult_matrix(a.basis_vector(j)) for j in range(a.dim))
    return Bimodule(a, a, a.dim, left, right, name=f"reg({a.name})")


def include_morph_alg(f: AlgebraMap) -> Bimodule:
    """The (A, B)-bimodule carried by B itself, with A acting through ``f``."""
    b = f.tgt
    left = tuple(
        b.left_mult_matrix(f(f.src.basis_vector(i))) for i in range(f.src.dim)
    )
    right = tuple(b.right_mult_matrix(b.basis_vector(j)) for j in range(b.dim))
    return Bimodule(f.src, b, b.dim, left, right, name=f"ind({f.src.name}->{b.name})")


def include_square(
    u: AlgebraMap, v: AlgebraMap, f: AlgebraMap, f2: AlgebraMap
) -> BimoduleCell:
    """Image of a commutative algebra square under the inclusion of Morph(Alg)."""
    if f.then(v).matrix != u.then(f2).matrix:
        raise StructureError("algebra square does not commute")
    return BimoduleCell(include_morph_alg(f), include_morph_alg(f2), u, v, v.matrix)


def include_composition_witness(f: AlgebraMap, g: AlgebraMap) -> BimoduleCell:
    """The canonical iso ``ind(f) (x)_B ind(g) -> ind(f then g)``, b (x) c -> g(b) c."""
    dec = tensor_over(include_morph_alg(f), include_morph_alg(g))
    b, c = f.tgt, g.tgt
    cols = []
    for i in range(b.dim):
        gi = g(b.basis_vector(i))
        for j in range(c.dim):
            cols.append(c.multiply(gi, c.basis_vector(j)))
    plain = RationalMatrix.from_rows(
        [[cols[k][r] for k in range(b.dim * c.dim)] for r in range(c.dim)]
    )
    w = plain @ dec.inclusion
    return BimoduleCell(
        dec.module,
        include_morph_alg(f.then(g)),
        AlgebraMap.identity(f.src),
        AlgebraMap.identity(g.tgt),
        w,
    )


# -- weak structure ----------------------------------------------------------


def _star_modules(m: Bimodule, n: Bimodule) -> Bimodule:
    return tensor_over(m, n).module


def _star_cells(a: BimoduleCell, b: BimoduleCell) -> BimoduleCell:
    src = tensor_over(a.src, b.src)
    tgt = tensor_over(a.tgt, b.tgt)
    w = tgt.projection @ a.w.kron(b.w) @ src.inclusion
    return BimoduleCell(src.module, tgt.module, a.u, b.v, w)


def _identity_cell(m: Bimodule) -> BimoduleCell:
    return BimoduleCell(
        m, m, AlgebraMap.identity(m.left), AlgebraMap.identity(m.right),
        RationalMatrix.identity(m.dim),
    )


def _unit_cell(f: AlgebraMap) -> BimoduleCell:
    return BimoduleCell(
        regular_bimodule(f.src), regular_bimodule(f.tgt), f, f, f.matrix
    )


def bimodule_associator(m: Bimodule, n: Bimodule, p: Bimodule) -> BimoduleCell:
    """The re-bracketing iso ``(M (x) N) (x) P -> M (x) (N (x) P)`` realized on
    canonical quotient representatives. Row-major plain-tensor indexing makes
    the underlying re-bracketing the identity on coordinates."""
    t1 = tensor_over(m, n)
    t2 = tensor_over(t1.module, p)
    s1 = tensor_over(n, p)
    s2 = tensor_over(m, s1.module)
    eye_p = RationalMatrix.identity(p.dim)
    eye_m = RationalMatrix.identity(m.dim)
    w = (
        s2.projection
        @ eye_m.kron(s1.projection)
        @ t1.inclusion.kron(eye_p)
        @ t2.inclusion
    )
    return BimoduleCell(
        t2.module, s2.module, AlgebraMap.identity(m.left), AlgebraMap.identity(p.right), w
    )


def bimodule_left_unitor(m: Bimodule) -> BimoduleCell:
    """``A (x)_A M -> M``, a (x) m -> a.m."""
    dec = tensor_over(regular_bimodule(m.left), m)
    a = m.left
    plain_cols = []
    for i in range(a.dim):
        lam = m.left_action[i]
        for j in range(m.dim):
            plain_cols.append(lam.column_of(j))
    plain = RationalMatrix.from_rows(
        [[plain_cols[k][r] for k in range(a.dim * m.dim)] for r in range(m.dim)]
    )
    return BimoduleCell(
        dec.module, m, AlgebraMap.identity(m.left), AlgebraMap.identity(m.right),
        plain @ dec.inclusion,
    )


def bimodule_right_unitor(m: Bimodule) -> BimoduleCell:
    """``M (x)_B B -> M``, m (x) b -> m.b."""
    dec = tensor_over(m, regular_bimodule(m.right))
    b = m.right
    plain_cols = []
    for i in range(m.dim):
        for j in range(b.dim):
            plain_cols.append(m.right_action[j].column_of(i))
    plain = RationalMatrix.from_rows(
        [[plain_cols[k][r] for k in range(m.dim * b.dim)] for r in range(m.dim)]
    )
    return BimoduleCell(
        dec.module, m, AlgebraMap.identity(m.left), AlgebraMap.identity(m.right),
        plain @ dec.inclusion,
    )


def _invert_cell(cell: BimoduleCell) -> BimoduleCell:
    return BimoduleCell(
        cell.tgt,
        cell.src,
        AlgebraMap(cell.u.tgt, cell.u.src, cell.u.matrix.inverse()),
        AlgebraMap(cell.v.tgt, cell.v.src, cell.v.matrix.inverse()),
        cell.w.inverse(),
    )


# ---------------------------------------------------------------------------
# cell sampling: solve the intertwining equations exactly
# ---------------------------------------------------------------------------


def bimodule_hom_basis(
    m: Bimodule, n: Bimodule, u: AlgebraMap, v: AlgebraMap
) -> list[RationalMatrix]:
    """A basis of all linear maps w with ``w(a.x.b) = u(a).w(x).v(b)``.

    Solved as the exact nullspace of the intertwining constraints; variables
    are the entries of w in row-major order.
    """
    rows_out = []
    nv = n.dim * m.dim

    def add_constraints(act_src: RationalMatrix, act_tgt: RationalMatrix):
        # w @ act_src - act_tgt @ w = 0, row by row
        for r in range(n.dim):
            for c in range(m.dim):
                row = [Q(0)] * nv
                for s in range(m.dim):
                    row[r * m.dim + s] += act_src.entries[s][c]
                for t in range(n.dim):
                    row[t * m.dim + c] -= act_tgt.entries[r][t]
                rows_out.append(row)

    for i in range(m.left.dim):
        a = m.left.basis_vector(i)
        add_constraints(m.left_act(a), n.left_act(u(a)))
    for j in range(m.right.dim):
        b = m.right.basis_vector(j)
        add_constraints(m.right_act(b), n.right_act(v(b)))
    system = RationalMatrix.from_rows(rows_out) if rows_out else RationalMatrix.zeros(0, nv)
    basis = system.nullspace()
    return [
        RationalMatrix.from_rows(
            [[vec[r * m.dim + c] for c in range(m.dim)] for r in range(n.dim)]
        )
        for vec in basis
    ]


def _sample_cells(
    rng: random.Random,
    bimodules: list[Bimodule],
    maps_by_pair: dict,
    budget: int,
) -> list[BimoduleCell]:
    cells: list[BimoduleCell] = []
    seen: set = set()

    def pick_map(a: FinDimAlgebra, pool_tgts: list[FinDimAlgebra]) -> AlgebraMap:
        options = []
        for tgt in pool_tgts:
            options.extend(maps_by_pair.get((a, tgt), ()))
        return rng.choice(options) if options else AlgebraMap.identity(a)

    algebra_set = list({bm.left for bm in bimodules} | {bm.right for bm in bimodules})

    def sample_between(src: Bimodule, u: AlgebraMap | None = None) -> BimoduleCell | None:
        uu = u if u is not None else pick_map(src.left, algebra_set)
        candidates = [bm for bm in bimodules if bm.left == uu.tgt]
        if not candidates:
            return None
        tgt = rng.choice(candidates)
        v_opts = maps_by_pair.get((src.right, tgt.right), ())
        if not v_opts:
            return None
        v = rng.choice(list(v_opts))
        basis = bimodule_hom_basis(src, tgt, uu, v)
        w = RationalMatrix.zeros(tgt.dim, src.dim)
        for mat in basis:
            w = w + mat.scale(Q(rng.randint(-2, 2)))
        return BimoduleCell(src, tgt, uu, v, w)

    attempts = 0
    while len(cells) < budget and attempts < budget * 25:
        attempts += 1
        src = rng.choice(bimodules)
        a1 = sample_between(src)
        if a1 is None:
            continue
        a2 = sample_between(a1.tgt)
        family = [a1] + ([a2] if a2 else [])
        # horizontal partner sharing the middle algebra map
        partners = [bm for bm in bimodules if bm.left == src.right]
        if partners:
            t = rng.choice(partners)
            b1 = sample_between(t, u=a1.v)
            if b1 is not None:
                family.append(b1)
                if a2 is not None:
                    b2 = sample_between(b1.tgt, u=a2.v)
                    if b2 is not None:
                        family.append(b2)
        for cell in family:
            key = (cell.src, cell.tgt, cell.u, cell.v, cell.w)
            if key not in seen:
                seen.add(key)
                cells.append(cell)
    return cells


# ---------------------------------------------------------------------------
# the double category
# ---------------------------------------------------------------------------


def standard_algebra_corpus() -> tuple[list[FinDimAlgebra], list[AlgebraMap]]:
    """Small algebras of dimension <= 3 with a family of maps between them."""
    k = rational_field()
    dual = truncated_polynomials(2)
    split = product_field(2)
    cubic = truncated_polynomials(3)
    algebras = [k, dual, split, cubic]
    maps: list[AlgebraMap] = [AlgebraMap.identity(a) for a in algebras]
    one = Q(1)
    zero = Q(0)
    maps += [
        AlgebraMap(k, dual, RationalMatrix.from_rows([[one], [zero]])),
        AlgebraMap(k, split, RationalMatrix.from_rows([[one], [one]])),
        AlgebraMap(k, cubic, RationalMatrix.from_rows([[one], [zero], [zero]])),
        AlgebraMap(dual, k, RationalMatrix.from_rows([[one, zero]])),  # x -> 0
        AlgebraMap(split, k, RationalMatrix.from_rows([[one, zero]])),  # first projection
        AlgebraMap(split, k, RationalMatrix.from_rows([[zero, one]])),  # second projection
        AlgebraMap(split, split, RationalMatrix.from_rows([[zero, one], [one, zero]])),
        AlgebraMap(cubic, dual, RationalMatrix.from_rows([[one, zero, zero], [zero, one, zero]])),
        AlgebraMap(cubic, k, RationalMatrix.from_rows([[one, zero, zero]])),
        AlgebraMap(dual, dual, RationalMatrix.from_rows([[one, zero], [zero, Q(2)]])),
    ]
    return algebras, maps


def standard_bimodule_corpus(
    algebras: list[FinDimAlgebra], maps: list[AlgebraMap]
) -> list[Bimodule]:
    corpus = [regular_bimodule(a) for a in algebras]
    corpus += [include_morph_alg(f) for f in maps if f.src != f.tgt or f.matrix != RationalMatrix.identity(f.src.dim)]
    return list(dict.fromkeys(corpus))


def alg_double_category(
    algebras=None,
    maps=None,
    bimodules=None,
    cells=None,
    *,
    seed: int = 0,
    max_cells: int = 36,
) -> DoubleCategoryInstance:
    """The weak double category of algebras, bimodules and intertwiners.

    Units are the regular bimodules; the associator and unitors are the
    canonical maps realized on quotient representatives. When ``cells`` is not
    supplied, 2-cells are sampled by solving the intertwining equations
    exactly and drawing integer combinations of the solution basis.
    """
    if algebras is None:
        algebras, default_maps = standard_algebra_corpus()
        maps = list(default_maps) + list(maps or ())
    maps = list(maps or [AlgebraMap.identity(a) for a in algebras])
    for a in algebras:
        ident = AlgebraMap.identity(a)
        if ident not in maps:
            maps.append(ident)
    if bimodules is None:
        bimodules = standard_bimodule_corpus(algebras, maps)
    bimodules = list(bimodules)
    for a in algebras:
        reg = regular_bimodule(a)
        if reg not in bimodules:
            bimodules.append(reg)

    maps_by_pair: dict = {}
    for f in maps:
        maps_by_pair.setdefault((f.src, f.tgt), []).append(f)

    rng = random.Random(seed)
    all_cells = list(cells or ())
    all_cells += [_identity_cell(bm) for bm in bimodules[: max(4, max_cells // 8)]]
    all_cells += _sample_cells(rng, bimodules, maps_by_pair, max_cells)
    bimodules = list(dict.fromkeys(bimodules + [c.src for c in all_cells] + [c.tgt for c in all_cells]))
    all_cells = list(dict.fromkeys(all_cells))

    return DoubleCategoryInstance(
        name="ALG(Q)",
        obj0=tuple(algebras),
        mor0=tuple(maps),
        obj1=tuple(bimodules),
        mor2=tuple(all_cells),
        src0=lambda f: f.src,
        tgt0=lambda f: f.tgt,
        compose0=lambda f, g: f.then(g),
        id0=AlgebraMap.identity,
        d_obj=lambda bm: bm.left,
        r_obj=lambda bm: bm.right,
        src2=lambda c: c.src,
        tgt2=lambda c: c.tgt,
        d_mor=lambda c: c.u,
        r_mor=lambda c: c.v,
        star_obj=_star_modules,
        star_mor=_star_cells,
        vcompose2=lambda a, b: BimoduleCell(
            a.src, b.tgt, a.u.then(b.u), a.v.then(b.v), b.w @ a.w
        ),
        id1=_identity_cell,
        unit_obj=regular_bimodule,
        unit_mor=_unit_cell,
        strict=False,
        associator=bimodule_associator,
        left_unitor=bimodule_left_unitor,
        right_unitor=bimodule_right_unitor,
        invert2=_invert_cell,
    )
