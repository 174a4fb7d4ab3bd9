"""Combinatorial cobordisms in dimensions 0 and 1.

Closed manifolds are tuples of '+'/'-' marks: oriented points (d = 0) or
oriented circles (d = 1). A 1-dimensional cobordism ``X => X'`` is a perfect
matching on the boundary points of ``(-X) u X'`` (source orientations
reversed) plus a count of closed loop components; a 2-dimensional one is a
list of surface components, each carrying a genus and the set of boundary
circles it absorbs. These diffeomorphism-class combinatorics are exact:
composition is path-following through the shared middle object (d = 0) or
Euler-characteristic bookkeeping over glued components (d = 1), and both
associativity and the unit laws hold strictly.

Boundary points are tagged ``('s', i)`` / ``('t', j)`` for the i-th source
and j-th target circle or point; the induced orientation of ``('s', i)`` is
the reverse of ``src[i]`` and of ``('t', j)`` is ``tgt[j]``, so gluing
equal middle objects is automatically orientation-compatible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import DoubleCategoryInstance, DoubleFunctor, dual, product_double_category
from .errors import StructureError

PLUS = "+"
MINUS = "-"

Point = tuple[str, int]


def flip(sign: str) -> str:
    return MINUS if sign == PLUS else PLUS


def reverse_object(x: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(flip(s) for s in x)


def boundary_points(src: tuple, tgt: tuple) -> list[Point]:
    return [("s", i) for i in range(len(src))] + [("t", j) for j in range(len(tgt))]


def point_sign(src: tuple, tgt: tuple, p: Point) -> str:
    side, i = p
    return flip(src[i]) if side == "s" else tgt[i]


@dataclass(frozen=True)
class Perm:
    """A sign-preserving bijection between two closed manifolds."""

    src: tuple[str, ...]
    tgt: tuple[str, ...]
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.src) != len(self.tgt) or sorted(self.images) != list(range(len(self.src))):
            raise StructureError("not a bijection of equal-length objects")
        for i, j in enumerate(self.images):
            if self.src[i] != self.tgt[j]:
                raise StructureError(f"bijection does not preserve orientation at {i}")

    @staticmethod
    def identity(x: tuple[str, ...]) -> "Perm":
        return Perm(x, x, tuple(range(len(x))))

    def then(self, other: "Perm") -> "Perm":
        if self.tgt != other.src:
            raise StructureError("bijections not composable")
        return Perm(self.src, other.tgt, tuple(other.images[j] for j in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(self.tgt, self.src, tuple(inv))

    def __call__(self, i: int) -> int:
        return self.images[i]


def _canonical_pairs(pairs) -> tuple[tuple[Point, Point], ...]:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


@dataclass(frozen=True)
class Cobordism1:
    """d = 0 cobordism: a perfect sign-matching on ``(-src) u tgt`` plus loops."""

    src: tuple[str, ...]
    tgt: tuple[str, ...]
    pairs: tuple[tuple[Point, Point], ...]
    loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "pairs", _canonical_pairs(self.pairs))
        if self.loops < 0:
            raise StructureError("loop count must be nonnegative")
        pts = boundary_points(self.src, self.tgt)
        seen = [q for pair in self.pairs for q in pair]
        if sorted(seen) != sorted(pts):
            raise StructureError("pairs are not a perfect matching on the boundary")
        for p, q in self.pairs:
            if point_sign(self.src, self.tgt, p) == point_sign(self.src, self.tgt, q):
                raise StructureError(f"interval {p}-{q} joins two points of equal orientation")

    def __repr__(self):
        return f"Cobordism1({self.src}=>{self.tgt}, pairs={self.pairs}, loops={self.loops})"


@dataclass(frozen=True)
class Component:
    """A connected surface piece: genus plus the boundary circles it absorbs."""

    genus: int
    boundary: frozenset[Point]

    def __post_init__(self):
        if self.genus < 0:
            raise StructureError("genus must be nonnegative")

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)

    def sort_key(self):
        return (tuple(sorted(self.boundary)), self.genus)


@dataclass(frozen=True)
class Cobordism2:
    """d = 1 cobordism: surface components splitting the boundary circles."""

    src: tuple[str, ...]
    tgt: tuple[str, ...]
    components: tuple[Component, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "components", tuple(sorted(self.components, key=Component.sort_key))
        )
        attached = [p for comp in self.components for p in comp.boundary]
        if sorted(attached) != sorted(boundary_points(self.src, self.tgt)):
            raise StructureError("every boundary circle must be attached exactly once")

    @property
    def euler(self) -> int:
        return sum(c.euler for c in self.components)

    @property
    def closed_components(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if not c.boundary)

    def __repr__(self):
        comps = ", ".join(f"(g={c.genus}, b={sorted(c.boundary)})" for c in self.components)
        return f"Cobordism2({self.src}=>{self.tgt}, [{comps}])"


Cobordism = Cobordism1 | Cobordism2


# ---------------------------------------------------------------------------
# identities, composition, disjoint union, orientation reversal
# ---------------------------------------------------------------------------


def identity_cobordism(x: tuple[str, ...], dim: int) -> Cobordism:
    """The cylinder ``X x [0,1]``; its boundary is ``(-X) u X``."""
    if dim == 0:
        return Cobordism1(x, x, tuple((("s", i), ("t", i)) for i in range(len(x))), 0)
    if dim == 1:
        return Cobordism2(
            x, x, tuple(Component(0, frozenset({("s", i), ("t", i)})) for i in range(len(x)))
        )
    raise StructureError("only dimensions 0 and 1 are realized")


def compose_cobordism1(c: Cobordism1, c2: Cobordism1) -> Cobordism1:
    """Glue along the middle object by following matched paths.

    Paths ending on outer boundary points become intervals of the composite;
    cycles confined to the middle become new loops.
    """
    if c.tgt != c2.src:
        raise StructureError(f"middle objects differ: {c.tgt} vs {c2.src}")

    def node(side: str, p: Point):
        tag, i = p
        if side == "L":
            return ("M", i) if tag == "t" else ("L", i)
        return ("M", i) if tag == "s" else ("R", i)

    edges = []
    for p, q in c.pairs:
        edges.append((node("L", p), node("L", q)))
    for p, q in c2.pairs:
        edges.append((node("R", p), node("R", q)))
    incident: dict = {}
    for eid, (a, b) in enumerate(edges):
        incident.setdefault(a, []).append(eid)
        incident.setdefault(b, []).append(eid)

    def other_end(eid: int, at):
        a, b = edges[eid]
        return b if a == at else a

    outer = [n for n in incident if n[0] != "M"]
    used: set[int] = set()
    new_pairs = []
    for start in outer:
        eid = incident[start][0]
        if eid in used:
            continue
        cur = start
        while True:
            used.add(eid)
            cur = other_end(eid, cur)
            if cur[0] != "M":
                break
            e1, e2 = incident[cur]
            eid = e2 if e1 == eid else e1
        a = ("s", start[1]) if start[0] == "L" else ("t", start[1])
        b = ("s", cur[1]) if cur[0] == "L" else ("t", cur[1])
        new_pairs.append((a, b))
    cycles = 0
    for eid in range(len(edges)):
        if eid in used:
            continue
        cur = edges[eid][0]
        walk = eid
        cycles += 1
        while walk not in used:
            used.add(walk)
            cur = other_end(walk, cur)
            e1, e2 = incident[cur]
            walk = e2 if e1 == walk else e1
    return Cobordism1(c.src, c2.tgt, tuple(new_pairs), c.loops + c2.loops + cycles)


def compose_cobordism2(c: Cobordism2, c2: Cobordism2) -> Cobordism2:
    """Glue along the middle circles, merging components by union-find.

    The Euler characteristic is additive under circle gluing, so each merged
    group gets genus ``(2 - chi - b) / 2`` from its summed characteristic and
    remaining boundary count; connectivity makes that a nonnegative integer.
    """
    if c.tgt != c2.src:
        raise StructureError(f"middle objects differ: {c.tgt} vs {c2.src}")
    nodes = [(0, i) for i in range(len(c.components))] + [
        (1, j) for j in range(len(c2.components))
    ]
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    comp_at_left = {p: i for i, comp in enumerate(c.components) for p in comp.boundary}
    comp_at_right = {p: j for j, comp in enumerate(c2.components) for p in comp.boundary}
    for k in range(len(c.tgt)):
        union((0, comp_at_left[("t", k)]), (1, comp_at_right[("s", k)]))

    groups: dict = {}
    for n in nodes:
        groups.setdefault(find(n), []).append(n)
    out = []
    for members in groups.values():
        chi = 0
        outer: set[Point] = set()
        for side, idx in members:
            comp = c.components[idx] if side == 0 else c2.components[idx]
            chi += comp.euler
            for p in comp.boundary:
                tag, i = p
                if side == 0 and tag == "s":
                    outer.add(("s", i))
                elif side == 1 and tag == "t":
                    outer.add(("t", i))
        b = len(outer)
        if (2 - chi - b) % 2 != 0 or (2 - chi - b) < 0:
            raise StructureError(f"glued component has invalid genus data: chi={chi}, b={b}")
        out.append(Component((2 - chi - b) // 2, frozenset(outer)))
    return Cobordism2(c.src, c2.tgt, tuple(out))


def compose_cobordism(c: Cobordism, c2: Cobordism) -> Cobordism:
    if isinstance(c, Cobordism1) and isinstance(c2, Cobordism1):
        return compose_cobordism1(c, c2)
    if isinstance(c, Cobordism2) and isinstance(c2, Cobordism2):
        return compose_cobordism2(c, c2)
    raise StructureError("cobordism dimensions differ")


def disjoint_union_object(x: tuple, y: tuple) -> tuple:
    return tuple(x) + tuple(y)


def _shift_point(p: Point, src_offset: int, tgt_offset: int) -> Point:
    tag, i = p
    return (tag, i + (src_offset if tag == "s" else tgt_offset))


def disjoint_union_cobordism(c: Cobordism, c2: Cobordism) -> Cobordism:
    """Place two cobordisms side by side, re-indexing the second one."""
    so, to = len(c.src), len(c.tgt)
    src = disjoint_union_object(c.src, c2.src)
    tgt = disjoint_union_object(c.tgt, c2.tgt)
    if isinstance(c, Cobordism1) and isinstance(c2, Cobordism1):
        pairs = c.pairs + tuple(
            (_shift_point(p, so, to), _shift_point(q, so, to)) for p, q in c2.pairs
        )
        return Cobordism1(src, tgt, pairs, c.loops + c2.loops)
    if isinstance(c, Cobordism2) and isinstance(c2, Cobordism2):
        comps = c.components + tuple(
            Component(k.genus, frozenset(_shift_point(p, so, to) for p in k.boundary))
            for k in c2.components
        )
        return Cobordism2(src, tgt, comps)
    raise StructureError("cobordism dimensions differ")


def disjoint_union_perm(a: Perm, b: Perm) -> Perm:
    n = len(a.src)
    return Perm(
        disjoint_union_object(a.src, b.src),
        disjoint_union_object(a.tgt, b.tgt),
        a.images + tuple(j + n for j in b.images),
    )


def _swap_point(p: Point) -> Point:
    tag, i = p
    return ("t", i) if tag == "s" else ("s", i)


def reverse_orientation(value):
    """Reverse every orientation; on cobordisms this swaps the d/r roles.

    ``reverse(c): -X' => -X`` for ``c: X => X'``; applying it twice gives back
    the original cell.
    """
    if isinstance(value, tuple):
        return reverse_object(value)
    if isinstance(value, Perm):
        return Perm(reverse_object(value.src), reverse_object(value.tgt), value.images)
    if isinstance(value, Cobordism1):
        return Cobordism1(
            reverse_object(value.tgt),
            reverse_object(value.src),
            tuple((_swap_point(p), _swap_point(q)) for p, q in value.pairs),
            value.loops,
        )
    if isinstance(value, Cobordism2):
        return Cobordism2(
            reverse_object(value.tgt),
            reverse_object(value.src),
            tuple(
                Component(k.genus, frozenset(_swap_point(p) for p in k.boundary))
                for k in value.components
            ),
        )
    if isinstance(value, CobordismCell):
        return CobordismCell(
            reverse_orientation(value.src),
            reverse_orientation(value.tgt),
            reverse_orientation(value.f2),
            reverse_orientation(value.f1),
        )
    raise StructureError(f"cannot reverse orientation of {value!r}")


# ---------------------------------------------------------------------------
# 2-cells: combinatorial isomorphisms of cobordisms
# ---------------------------------------------------------------------------


def transport_cobordism(c: Cobordism, f1: Perm, f2: Perm) -> Cobordism:
    """Relabel boundary data along bijections of the source and target."""
    if f1.src != c.src or f2.src != c.tgt:
        raise StructureError("transport bijections do not match the cobordism")

    def move(p: Point) -> Point:
        tag, i = p
        return (tag, f1(i) if tag == "s" else f2(i))

    if isinstance(c, Cobordism1):
        return Cobordism1(
            f1.tgt, f2.tgt, tuple((move(p), move(q)) for p, q in c.pairs), c.loops
        )
    return Cobordism2(
        f1.tgt,
        f2.tgt,
        tuple(Component(k.genus, frozenset(move(p) for p in k.boundary)) for k in c.components),
    )


@dataclass(frozen=True)
class CobordismCell:
    """A 2-cell: bijections of the outer objects carrying src onto tgt.

    The isomorphism of the cobordism bodies is the canonical relabeling, so
    the commuting-square condition is exactly "transported data equals the
    target data", which the constructor verifies.
    """

    src: Cobordism
    tgt: Cobordism
    f1: Perm
    f2: Perm

    def __post_init__(self):
        if transport_cobordism(self.src, self.f1, self.f2) != self.tgt:
            raise StructureError("transported cobordism does not match the declared target")


# ---------------------------------------------------------------------------
# samplers and the double category
# ---------------------------------------------------------------------------


def all_objects(bound: int) -> list[tuple[str, ...]]:
    out: list[tuple[str, ...]] = []
    for n in range(bound + 1):
        out.extend(itertools.product((PLUS, MINUS), repeat=n))
    return out


def all_perms(objects) -> list[Perm]:
    perms = []
    for x in objects:
        for y in objects:
            if len(x) != len(y) or sorted(x) != sorted(y):
                continue
            plus_x = [i for i, s in enumerate(x) if s == PLUS]
            minus_x = [i for i, s in enumerate(x) if s == MINUS]
            plus_y = [j for j, s in enumerate(y) if s == PLUS]
            minus_y = [j for j, s in enumerate(y) if s == MINUS]
            for pp in itertools.permutations(plus_y):
                for mm in itertools.permutations(minus_y):
                    images = [0] * len(x)
                    for i, j in zip(plus_x, pp):
                        images[i] = j
                    for i, j in zip(minus_x, mm):
                        images[i] = j
                    perms.append(Perm(x, y, tuple(images)))
    return perms


def random_cobordism1(
    rng: random.Random, src: tuple, tgt: tuple, max_loops: int = 2
) -> Cobordism1:
    pts = boundary_points(src, tgt)
    plus = [p for p in pts if point_sign(src, tgt, p) == PLUS]
    minus = [p for p in pts if point_sign(src, tgt, p) == MINUS]
    if len(plus) != len(minus):
        raise StructureError("objects cannot cobound: unequal orientation counts")
    rng.shuffle(minus)
    return Cobordism1(src, tgt, tuple(zip(plus, minus)), rng.randint(0, max_loops))


def random_cobordism2(
    rng: random.Random, src: tuple, tgt: tuple, max_genus: int = 2
) -> Cobordism2:
    pts = boundary_points(src, tgt)
    rng.shuffle(pts)
    comps = []
    while pts:
        take = rng.randint(1, len(pts))
        group, pts = pts[:take], pts[take:]
        comps.append(Component(rng.randint(0, max_genus), frozenset(group)))
    if not comps or rng.random() < 0.25:
        comps.append(Component(rng.randint(0, max_genus), frozenset()))
    return Cobordism2(src, tgt, tuple(comps))


def charge(x: tuple) -> int:
    return sum(1 if s == PLUS else -1 for s in x)


def cobordism_double_category(
    dim: int,
    bound: int = 3,
    seed: int = 0,
    *,
    n_cobordisms: int = 48,
    n_cells: int = 36,
    max_genus: int = 2,
    max_loops: int = 2,
) -> DoubleCategoryInstance:
    """A bounded deterministic sampling of the cobordism double category.

    Objects are every closed manifold up to ``bound`` circles/points; 1-cells
    are generated in composable chains (seeded) plus all identity cylinders;
    2-cells are transports along sampled relabelings. Associativity and the
    unit laws hold strictly in this combinatorial model.
    """
    if dim not in (0, 1):
        raise StructureError("only dimensions 0 and 1 are realized")
    rng = random.Random(seed)
    objects = all_objects(bound)
    perms = all_perms(objects)

    by_charge: dict = {}
    for x in objects:
        by_charge.setdefault(charge(x), []).append(x)

    cobordisms: list[Cobordism] = [identity_cobordism(x, dim) for x in objects]
    attempts = 0
    while len(cobordisms) < n_cobordisms + len(objects) and attempts < n_cobordisms * 20:
        attempts += 1
        if dim == 0:
            pool = by_charge[rng.choice(list(by_charge))]
            chain_objs = [rng.choice(pool) for _ in range(4)]
            chain = [
                random_cobordism1(rng, a, b, max_loops)
                for a, b in zip(chain_objs, chain_objs[1:])
            ]
        else:
            chain_objs = [rng.choice(objects) for _ in range(4)]
            chain = [
                random_cobordism2(rng, a, b, max_genus)
                for a, b in zip(chain_objs, chain_objs[1:])
            ]
        cobordisms.extend(chain)
    cobordisms = list(dict.fromkeys(cobordisms))

    same_shape: dict = {}
    for x in objects:
        same_shape.setdefault(tuple(sorted(x)), []).append(x)

    def random_relabel(x: tuple) -> Perm:
        y = rng.choice(same_shape[tuple(sorted(x))])
        plus_x = [i for i, s in enumerate(x) if s == PLUS]
        minus_x = [i for i, s in enumerate(x) if s == MINUS]
        plus_y = [j for j, s in enumerate(y) if s == PLUS]
        minus_y = [j for j, s in enumerate(y) if s == MINUS]
        rng.shuffle(plus_y)
        rng.shuffle(minus_y)
        images = [0] * len(x)
        for i, j in zip(plus_x, plus_y):
            images[i] = j
        for i, j in zip(minus_x, minus_y):
            images[i] = j
        return Perm(x, y, tuple(images))

    cells: list[CobordismCell] = []
    seen: set = set()
    attempts = 0
    while len(cells) < n_cells and attempts < n_cells * 20:
        attempts += 1
        c = rng.choice(cobordisms)
        f1, f2 = random_relabel(c.src), random_relabel(c.tgt)
        middle = transport_cobordism(c, f1, f2)
        g1, g2 = random_relabel(middle.src), random_relabel(middle.tgt)
        final = transport_cobordism(middle, g1, g2)
        for cell in (
            CobordismCell(c, middle, f1, f2),
            CobordismCell(middle, final, g1, g2),
        ):
            if cell not in seen:
                seen.add(cell)
                cells.append(cell)
    extra = [c for cell in cells for c in (cell.src, cell.tgt)]
    cobordisms = list(dict.fromkeys(cobordisms + extra))

    return DoubleCategoryInstance(
        name=f"C({dim})",
        obj0=objects,
        mor0=perms,
        obj1=cobordisms,
        mor2=cells,
        src0=lambda p: p.src,
        tgt0=lambda p: p.tgt,
        compose0=lambda p, q: p.then(q),
        id0=Perm.identity,
        d_obj=lambda c: c.src,
        r_obj=lambda c: c.tgt,
        src2=lambda a: a.src,
        tgt2=lambda a: a.tgt,
        d_mor=lambda a: a.f1,
        r_mor=lambda a: a.f2,
        star_obj=compose_cobordism,
        star_mor=lambda a, b: CobordismCell(
            compose_cobordism(a.src, b.src), compose_cobordism(a.tgt, b.tgt), a.f1, b.f2
        ),
        vcompose2=lambda a, b: CobordismCell(
            a.src, b.tgt, a.f1.then(b.f1), a.f2.then(b.f2)
        ),
        id1=lambda c: CobordismCell(c, c, Perm.identity(c.src), Perm.identity(c.tgt)),
        unit_obj=lambda x: identity_cobordism(x, dim),
        unit_mor=lambda p: CobordismCell(
            identity_cobordism(p.src, dim), identity_cobordism(p.tgt, dim), p, p
        ),
        strict=True,
        invert2=lambda a: CobordismCell(a.tgt, a.src, a.f1.inverse(), a.f2.inverse()),
    )


# ---------------------------------------------------------------------------
# the disjoint-union and orientation-reversal double functors
# ---------------------------------------------------------------------------


def union_double_functor(
    c: DoubleCategoryInstance, *, max_cells: int = 300, seed: int = 0
) -> tuple[DoubleFunctor, DoubleCategoryInstance]:
    """Disjoint union as a double functor from the product instance."""
    prod = product_double_category(c, c, max_cells=max_cells, seed=seed)
    functor = DoubleFunctor(
        "disjoint-union",
        prod,
        c,
        obj0=lambda p: disjoint_union_object(*p),
        mor0=lambda p: disjoint_union_perm(*p),
        obj1=lambda p: disjoint_union_cobordism(*p),
        mor2=lambda p: CobordismCell(
            disjoint_union_cobordism(p[0].src, p[1].src),
            disjoint_union_cobordism(p[0].tgt, p[1].tgt),
            disjoint_union_perm(p[0].f1, p[1].f1),
            disjoint_union_perm(p[0].f2, p[1].f2),
        ),
    )
    return functor, prod


def orientation_double_functor(c: DoubleCategoryInstance) -> DoubleFunctor:
    """Orientation reversal ``C(d) -> C(d)^op``; applying it twice is the identity."""
    return DoubleFunctor(
        "orientation-reversal",
        c,
        dual(c),
        obj0=reverse_orientation,
        mor0=reverse_orientation,
        obj1=reverse_orientation,
        mor2=reverse_orientation,
    )
