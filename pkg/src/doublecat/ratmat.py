"""Matrices over the exact rationals.

Everything in this module is exact: entries are `fractions.Fraction` and no
floating point appears anywhere. Matrices are immutable and hashable so they
can serve as cells of a double category.

Shape convention: a matrix with ``rows`` rows and ``cols`` columns represents
a linear map from a ``cols``-dimensional space to a ``rows``-dimensional one,
acting on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError(f"ragged row: expected {self.cols} columns")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "RationalMatrix":
        ents = tuple(tuple(frac(x) for x in row) for row in rows)
        nrows = len(ents)
        ncols = len(ents[0]) if ents else 0
        return RationalMatrix(nrows, ncols, ents)

    @staticmethod
    def zeros(rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix(rows, cols, tuple((_ZERO,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            n,
            n,
            tuple(
                (_ZERO,) * i + (_ONE,) + (_ZERO,) * (n - i - 1) for i in range(n)
            ),
        )

    @staticmethod
    def column(values: Sequence) -> "RationalMatrix":
        return RationalMatrix.from_rows([[v] for v in values])

    @staticmethod
    def row_vector(values: Sequence) -> "RationalMatrix":
        return RationalMatrix.from_rows([list(values)])

    # -- basic algebra -------------------------------------------------

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.entries[i][j]

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in +")
        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(Q(-1))

    def scale(self, c) -> "RationalMatrix":
        c = frac(c)
        return RationalMatrix(
            self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries)
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in @: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        # accumulate over the nonzero entries only; evaluation matrices are
        # mostly delta patterns, so this is close to linear for them
        oe = other.entries
        out = []
        for row in self.entries:
            acc = [_ZERO] * other.cols
            for j, a in enumerate(row):
                if a:
                    orow = oe[j]
                    for k, b in enumerate(orow):
                        if b:
                            acc[k] = acc[k] + a * b
            out.append(tuple(acc))
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(
                tuple(self.entries[i][j] for i in range(self.rows))
                for j in range(self.cols)
            ),
        )

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        """Kronecker product; row-major block layout, left factor most significant."""
        ents = []
        ocols = other.cols
        for i in range(self.rows):
            srow = self.entries[i]
            for k in range(other.rows):
                orow = other.entries[k]
                row: list = []
                for a in srow:
                    if a:
                        row.extend(a * b if b else _ZERO for b in orow)
                    else:
                        row.extend((_ZERO,) * ocols)
                ents.append(tuple(row))
        return RationalMatrix(self.rows * other.rows, self.cols * other.cols, tuple(ents))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def column_of(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def apply(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(r[j] * vec[j] for j in range(self.cols)) for r in self.entries)

    # -- elimination ---------------------------------------------------

    def rref(self) -> tuple["RationalMatrix", tuple[int, ...]]:
        """Reduced row-echelon form and the pivot column indices."""
        mat = [list(r) for r in self.entries]
        pivots: list[int] = []
        pr = 0
        for c in range(self.cols):
            if pr >= self.rows:
                break
            pivot_row = next((i for i in range(pr, self.rows) if mat[i][c] != 0), None)
            if pivot_row is None:
                continue
            mat[pr], mat[pivot_row] = mat[pivot_row], mat[pr]
            inv = 1 / mat[pr][c]
            mat[pr] = [x * inv for x in mat[pr]]
            for i in range(self.rows):
                if i != pr and mat[i][c] != 0:
                    f = mat[i][c]
                    mat[i] = [a - f * b for a, b in zip(mat[i], mat[pr])]
            pivots.append(c)
            pr += 1
        return RationalMatrix.from_rows(mat), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "RationalMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices invert")
        n = self.rows
        aug = RationalMatrix(
            n,
            2 * n,
            tuple(
                tuple(self.entries[i]) + tuple(RationalMatrix.identity(n).entries[i])
                for i in range(n)
            ),
        )
        red, pivots = aug.rref()
        if tuple(pivots[:n]) != tuple(range(n)):
            raise ValueError("matrix is singular")
        return RationalMatrix(
            n, n, tuple(tuple(red.entries[i][n:]) for i in range(n))
        )

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """A basis of the kernel, one vector per free column."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            vec = [Q(0)] * self.cols
            vec[f] = Q(1)
            for r, p in enumerate(pivots):
                vec[p] = -red.entries[r][f]
            basis.append(tuple(vec))
        return basis

    # -- misc ----------------------------------------------------------

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"


def permutation_matrix(images: Sequence[int]) -> RationalMatrix:
    """Matrix of the map sending basis vector i to basis vector images[i]."""
    n = len(images)
    m = [[Q(0)] * n for _ in range(n)]
    for i, j in enumerate(images):
        m[j][i] = Q(1)
    return RationalMatrix.from_rows(m)


def factor_permutation_matrix(perm: Sequence[int], dim: int) -> RationalMatrix:
    """Permutation of tensor factors, all of dimension ``dim``.

    ``perm[q]`` names which input factor feeds output slot ``q``; factor 0 is
    the most significant index, matching iterated Kronecker products.
    """
    k = len(perm)
    size = dim**k
    m = [[Q(0)] * size for _ in range(size)]
    for flat_in in range(size):
        digits = _digits(flat_in, dim, k)
        out_digits = [digits[perm[q]] for q in range(k)]
        flat_out = _undigits(out_digits, dim)
        m[flat_out][flat_in] = Q(1)
    return RationalMatrix.from_rows(m)


def _digits(x: int, base: int, width: int) -> list[int]:
    out = [0] * width
    for pos in range(width - 1, -1, -1):
        out[pos] = x % base
        x //= base
    return out


def _undigits(digits: Iterable[int], base: int) -> int:
    x = 0
    for d in digits:
        x = x * base + d
    return x


def kron_all(mats: Sequence[RationalMatrix]) -> RationalMatrix:
    """Kronecker product of a list; the empty product is the 1x1 identity."""
    out = RationalMatrix.identity(1)
    for m in mats:
        out = out.kron(m)
    return out
