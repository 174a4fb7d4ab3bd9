"""Double categories built from diagrams in a base category.

Four constructions over :mod:`doublecat.finset`:

* ``morph_double_category``: 1-cells are the morphisms of the base category,
  2-cells are commutative squares.
* ``iso_double_category``: the sub-double-category on invertible 1-cells.
* ``span_double_category``: 1-cells are spans of finite sets, composed by
  pullback; a weak instance with re-bracketing witnesses.
* ``monoidal_trivialbase`` / ``monoidal_action_double_category``: the two
  constructions a cartesian monoidal structure yields, one with a trivial
  base category and one whose 1-cells are structure maps ``X x A -> B``.

Instances over large bases (the full category of finite sets on a universe)
enumerate their 2-cells by seeded sampling of composable families, so every
law the checker draws is non-vacuous while enumerations stay bounded.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import DoubleCategoryInstance, restrict
from .errors import StructureError
from .finset import (
    FinCategory,
    FinFunction,
    FinSet,
    cartesian_product,
    extend_along,
    pullback,
    random_function,
)

POINT = FinSet(("pt",))
TRIVIAL_OBJECT = "*"
TRIVIAL_IDENTITY = "id_*"


# ---------------------------------------------------------------------------
# Morph(C) and ISO(C)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareCell:
    """A commutative square: ``bottom . left == right . top`` in the base."""

    top: object
    bottom: object
    left: object
    right: object


def _enumerate_squares(c: FinCategory) -> list[SquareCell]:
    by_src: dict = {}
    for m in c.morphisms:
        by_src.setdefault(c.src(m), []).append(m)
    squares = []
    for f in c.morphisms:
        for u in by_src.get(c.src(f), ()):
            for v in by_src.get(c.tgt(f), ()):
                fv = c.compose(f, v)
                for f2 in c.hom(c.tgt(u), c.tgt(v)):
                    if c.compose(u, f2) == fv:
                        squares.append(SquareCell(u, v, f, f2))
    return squares


def _sample_square_grids(c: FinCategory, rng: random.Random, budget: int) -> list[SquareCell]:
    """Seeded 3x3 grids of commutative squares, so sampled enumerations carry
    vertically and horizontally composable families."""
    by_src: dict = {}
    hom_idx: dict = {}
    for m in c.morphisms:
        by_src.setdefault(c.src(m), []).append(m)
        hom_idx.setdefault((c.src(m), c.tgt(m)), []).append(m)

    def solve(f, u, v):
        fv = c.compose(f, v)
        pool = hom_idx.get((c.tgt(u), c.tgt(v)), ())
        candidates = [g for g in pool if c.compose(u, g) == fv]
        return rng.choice(candidates) if candidates else None

    cells: list[SquareCell] = []
    seen: set = set()
    attempts = 0
    while len(cells) < budget and attempts < budget * 30:
        attempts += 1
        row = [rng.choice(c.morphisms)]
        for _ in range(2):
            nxt = by_src.get(c.tgt(row[-1]))
            if not nxt:
                break
            row.append(rng.choice(nxt))
        verts = []
        objs = [c.src(row[0])] + [c.tgt(f) for f in row]
        ok = True
        for obj in objs:
            chain = []
            cur = obj
            for _ in range(3):
                outs = by_src.get(cur)
                if not outs:
                    ok = False
                    break
                m = rng.choice(outs)
                chain.append(m)
                cur = c.tgt(m)
            if not ok:
                break
            verts.append(chain)
        if not ok:
            continue
        rows = [row]
        for step in range(3):
            prev = rows[-1]
            new_row = []
            for col, f in enumerate(prev):
                f2 = solve(f, verts[col][step], verts[col + 1][step])
                if f2 is None:
                    break
                new_row.append(f2)
            if len(new_row) != len(prev):
                break
            rows.append(new_row)
        for step in range(len(rows) - 1):
            for col in range(len(rows[step])):
                cell = SquareCell(
                    verts[col][step], verts[col + 1][step], rows[step][col], rows[step + 1][col]
                )
                if cell not in seen:
                    seen.add(cell)
                    cells.append(cell)
    return cells


def morph_double_category(
    c: FinCategory, *, two_cell_budget: int | None = None, seed: int = 0
) -> DoubleCategoryInstance:
    """The canonical double category of morphisms of ``c``.

    0-level is ``c`` itself; 1-cells are the morphisms of ``c`` with d/r
    their endpoints; 2-cells are commutative squares pasted horizontally by
    composing rows. Strict. Squares are enumerated exhaustively when feasible,
    otherwise sampled (``two_cell_budget``, seeded).
    """
    n = len(c.morphisms)
    if two_cell_budget is None and n**3 <= 200_000:
        squares = _enumerate_squares(c)
    else:
        rng = random.Random(seed)
        squares = _sample_square_grids(c, rng, two_cell_budget or 160)

    def star_mor(a: SquareCell, b: SquareCell) -> SquareCell:
        return SquareCell(a.top, b.bottom, c.compose(a.left, b.left), c.compose(a.right, b.right))

    return DoubleCategoryInstance(
        name=f"Morph({c.name})",
        obj0=c.objects,
        mor0=c.morphisms,
        obj1=c.morphisms,
        mor2=squares,
        src0=c.src,
        tgt0=c.tgt,
        compose0=c.compose,
        id0=c.identity,
        d_obj=c.src,
        r_obj=c.tgt,
        src2=lambda a: a.left,
        tgt2=lambda a: a.right,
        d_mor=lambda a: a.top,
        r_mor=lambda a: a.bottom,
        star_obj=c.compose,
        star_mor=star_mor,
        vcompose2=lambda a, b: SquareCell(
            c.compose(a.top, b.top), c.compose(a.bottom, b.bottom), a.left, b.right
        ),
        id1=lambda f: SquareCell(c.identity(c.src(f)), c.identity(c.tgt(f)), f, f),
        unit_obj=c.identity,
        unit_mor=lambda u: SquareCell(u, u, c.identity(c.src(u)), c.identity(c.tgt(u))),
        strict=True,
    )


def iso_double_category(c: FinCategory) -> DoubleCategoryInstance:
    """The restriction of Morph(c) whose 1-cells are the isomorphisms of ``c``.

    Built through :func:`doublecat.core.restrict`, so the closure of the
    selection (composites of isomorphisms are isomorphisms) is actually
    verified rather than assumed.
    """
    morph = morph_double_category(c)
    isos = set(c.isomorphisms())
    cells = [a for a in morph.mor2 if a.left in isos and a.right in isos]
    out = restrict(morph, morph.obj0, morph.mor0, tuple(isos), cells)
    out.name = f"ISO({c.name})"
    return out


def iso_finset_double_category(
    universe, *, seed: int = 0, two_cell_budget: int = 120
) -> DoubleCategoryInstance:
    """ISO over the full category of finite sets on ``universe``, built directly.

    Between invertible 1-cells a square is determined by its source 1-cell and
    the two framing morphisms, so 2-cells are sampled as ``(f, u, f~)`` with
    the bottom solved exactly.
    """
    c = FinCategory.of_finsets(list(universe))
    bijections = tuple(f for f in c.morphisms if f.is_bijection())
    rng = random.Random(seed)
    by_src: dict = {}
    for m in c.morphisms:
        by_src.setdefault(c.src(m), []).append(m)
    cells = []
    seen = set()
    attempts = 0
    while len(cells) < two_cell_budget and attempts < two_cell_budget * 20:
        attempts += 1
        f = rng.choice(bijections)
        u = rng.choice(by_src[f.domain])
        f2_pool = [g for g in bijections if g.domain == u.codomain]
        if not f2_pool:
            continue
        f2 = rng.choice(f2_pool)
        v = f.inverse().then(u).then(f2)
        chain = [SquareCell(u, v, f, f2)]
        for _ in range(2):
            prev = chain[-1]
            u2 = rng.choice(by_src[prev.right.domain])
            f3_pool = [g for g in bijections if g.domain == u2.codomain]
            if not f3_pool:
                break
            f3 = rng.choice(f3_pool)
            v2 = prev.right.inverse().then(u2).then(f3)
            chain.append(SquareCell(u2, v2, prev.right, f3))
        for cell in chain:
            if cell not in seen:
                seen.add(cell)
                cells.append(cell)
    morph = morph_double_category(c, two_cell_budget=0, seed=seed)
    return DoubleCategoryInstance(
        name="ISO(FinSet)",
        obj0=morph.obj0,
        mor0=morph.mor0,
        obj1=bijections,
        mor2=cells,
        src0=morph.src0,
        tgt0=morph.tgt0,
        compose0=morph.compose0,
        id0=morph.id0,
        d_obj=morph.d_obj,
        r_obj=morph.r_obj,
        src2=morph.src2,
        tgt2=morph.tgt2,
        d_mor=morph.d_mor,
        r_mor=morph.r_mor,
        star_obj=morph.star_obj,
        star_mor=morph.star_mor,
        vcompose2=morph.vcompose2,
        id1=morph.id1,
        unit_obj=morph.unit_obj,
        unit_mor=morph.unit_mor,
        strict=True,
    )


# ---------------------------------------------------------------------------
# spans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Span:
    """A 1-cell ``left_foot <- apex -> right_foot`` of finite sets."""

    left_foot: FinSet
    apex: FinSet
    right_foot: FinSet
    left_leg: FinFunction
    right_leg: FinFunction

    def __post_init__(self):
        if self.left_leg.domain != self.apex or self.right_leg.domain != self.apex:
            raise StructureError("span legs must start at the apex")
        if self.left_leg.codomain != self.left_foot or self.right_leg.codomain != self.right_foot:
            raise StructureError("span legs do not land in the declared feet")


@dataclass(frozen=True)
class SpanCell:
    """A map of spans: ``(u, v, w)`` commuting with both legs."""

    src: Span
    tgt: Span
    u: FinFunction
    v: FinFunction
    w: FinFunction


def identity_span(a: FinSet) -> Span:
    i = FinFunction.identity(a)
    return Span(a, a, a, i, i)


def compose_spans(s: Span, t: Span) -> Span:
    """Pullback composition; apex elements are pairs ``(m, m')``."""
    if s.right_foot != t.left_foot:
        raise StructureError("spans not composable: feet differ")
    cone = pullback(s.right_leg, t.left_leg)
    left = FinFunction(
        cone.apex, s.left_foot, tuple(s.left_leg(m) for m, _ in cone.apex)
    )
    right = FinFunction(
        cone.apex, t.right_foot, tuple(t.right_leg(m2) for _, m2 in cone.apex)
    )
    return Span(s.left_foot, cone.apex, t.right_foot, left, right)


def _span_cell_valid(cell: SpanCell) -> bool:
    s, t = cell.src, cell.tgt
    return (
        cell.v.then(t.left_leg).mapping == s.left_leg.then(cell.u).mapping
        and cell.v.then(t.right_leg).mapping == s.right_leg.then(cell.w).mapping
    )


def _star_span_cells(a: SpanCell, b: SpanCell) -> SpanCell:
    src = compose_spans(a.src, b.src)
    tgt = compose_spans(a.tgt, b.tgt)
    v = FinFunction(src.apex, tgt.apex, tuple((a.v(m), b.v(m2)) for m, m2 in src.apex))
    return SpanCell(src, tgt, a.u, v, b.w)


def _span_associator(s: Span, t: Span, r: Span) -> SpanCell:
    left = compose_spans(compose_spans(s, t), r)
    right = compose_spans(s, compose_spans(t, r))
    v = FinFunction(
        left.apex, right.apex, tuple((m, (m2, m3)) for (m, m2), m3 in left.apex)
    )
    return SpanCell(
        left, right, FinFunction.identity(left.left_foot), v, FinFunction.identity(left.right_foot)
    )


def _span_left_unitor(s: Span) -> SpanCell:
    src = compose_spans(identity_span(s.left_foot), s)
    v = FinFunction(src.apex, s.apex, tuple(m for _, m in src.apex))
    return SpanCell(src, s, FinFunction.identity(s.left_foot), v, FinFunction.identity(s.right_foot))


def _span_right_unitor(s: Span) -> SpanCell:
    src = compose_spans(s, identity_span(s.right_foot))
    v = FinFunction(src.apex, s.apex, tuple(m for m, _ in src.apex))
    return SpanCell(src, s, FinFunction.identity(s.left_foot), v, FinFunction.identity(s.right_foot))


def _invert_span_cell(cell: SpanCell) -> SpanCell:
    return SpanCell(cell.tgt, cell.src, cell.u.inverse(), cell.v.inverse(), cell.w.inverse())


def _sample_span_cell(
    rng: random.Random, s: Span, universe: list[FinSet], u: FinFunction | None = None
) -> SpanCell:
    for _ in range(8):
        apex2 = rng.choice(universe)
        v = random_function(rng, s.apex, apex2)
        uu = u if u is not None else random_function(rng, s.left_foot, rng.choice(universe))
        w = random_function(rng, s.right_foot, rng.choice(universe))
        left2 = extend_along(rng, v, s.left_leg.then(uu), uu.codomain)
        right2 = extend_along(rng, v, s.right_leg.then(w), w.codomain)
        if left2 is not None and right2 is not None:
            tgt = Span(uu.codomain, apex2, w.codomain, left2, right2)
            return SpanCell(s, tgt, uu, v, w)
    # injective fallback: transport along the identity always prescribes consistently
    v = FinFunction.identity(s.apex)
    uu = u if u is not None else FinFunction.identity(s.left_foot)
    w = FinFunction.identity(s.right_foot)
    tgt = Span(uu.codomain, s.apex, w.codomain, s.left_leg.then(uu), s.right_leg.then(w))
    return SpanCell(s, tgt, uu, v, w)


def span_double_category(
    universe, *, seed: int = 0, max_spans: int = 36, max_cells: int = 60
) -> DoubleCategoryInstance:
    """Spans of finite sets over ``universe``, composed by pullback; weak.

    The associator is the canonical re-bracketing bijection
    ``((m, m'), m'') -> (m, (m', m''))`` and the unitors collapse a pullback
    against an identity span. 1-cells and 2-cells are seeded samples built in
    composable chains.
    """
    universe = [u for u in universe if len(u) > 0]
    if not universe:
        raise StructureError("span universe must contain a nonempty set")
    c = FinCategory.of_finsets(universe, name="FinSet")
    rng = random.Random(seed)

    spans: list[Span] = [identity_span(a) for a in universe]
    while len(spans) < max_spans:
        feet = [rng.choice(universe) for _ in range(4)]
        apexes = [rng.choice(universe) for _ in range(3)]
        chain = []
        for i in range(3):
            chain.append(
                Span(
                    feet[i],
                    apexes[i],
                    feet[i + 1],
                    random_function(rng, apexes[i], feet[i]),
                    random_function(rng, apexes[i], feet[i + 1]),
                )
            )
        spans.extend(chain)
    spans = list(dict.fromkeys(spans))[:max_spans]

    cells: list[SpanCell] = []
    seen: set = set()

    def add(cell: SpanCell):
        if cell not in seen:
            seen.add(cell)
            cells.append(cell)

    by_left: dict = {}
    for s in spans:
        by_left.setdefault(s.left_foot, []).append(s)
    attempts = 0
    while len(cells) < max_cells and attempts < max_cells * 20:
        attempts += 1
        s = rng.choice(spans)
        a1 = _sample_span_cell(rng, s, universe)
        a2 = _sample_span_cell(rng, a1.tgt, universe)
        add(a1)
        add(a2)
        partners = by_left.get(s.right_foot, ())
        if partners:
            t = rng.choice(partners)
            b1 = _sample_span_cell(rng, t, universe, u=a1.w)
            b2 = _sample_span_cell(rng, b1.tgt, universe, u=a2.w)
            add(b1)
            add(b2)
    for cell in cells:
        if not _span_cell_valid(cell):
            raise StructureError(f"sampled span cell fails its commuting conditions: {cell!r}")
    # close the 1-cell enumeration over the frames of sampled 2-cells
    spans = list(dict.fromkeys(spans + [c.src for c in cells] + [c.tgt for c in cells]))

    return DoubleCategoryInstance(
        name="Span(FinSet)",
        obj0=universe,
        mor0=c.morphisms,
        obj1=tuple(spans),
        mor2=tuple(cells),
        src0=c.src,
        tgt0=c.tgt,
        compose0=c.compose,
        id0=c.identity,
        d_obj=lambda s: s.left_foot,
        r_obj=lambda s: s.right_foot,
        src2=lambda a: a.src,
        tgt2=lambda a: a.tgt,
        d_mor=lambda a: a.u,
        r_mor=lambda a: a.w,
        star_obj=compose_spans,
        star_mor=_star_span_cells,
        vcompose2=lambda a, b: SpanCell(
            a.src, b.tgt, a.u.then(b.u), a.v.then(b.v), a.w.then(b.w)
        ),
        id1=lambda s: SpanCell(
            s,
            s,
            FinFunction.identity(s.left_foot),
            FinFunction.identity(s.apex),
            FinFunction.identity(s.right_foot),
        ),
        unit_obj=identity_span,
        unit_mor=lambda u: SpanCell(
            identity_span(u.domain), identity_span(u.codomain), u, u, u
        ),
        strict=False,
        associator=_span_associator,
        left_unitor=_span_left_unitor,
        right_unitor=_span_right_unitor,
        invert2=_invert_span_cell,
    )


# ---------------------------------------------------------------------------
# monoidal constructions
# ---------------------------------------------------------------------------


def _product_map(f: FinFunction, g: FinFunction) -> FinFunction:
    dom, _, _ = cartesian_product(f.domain, g.domain)
    cod, _, _ = cartesian_product(f.codomain, g.codomain)
    return FinFunction(dom, cod, tuple((f(a), g(b)) for a, b in dom))


def monoidal_trivialbase(
    universe, *, seed: int = 0, max_cells: int = 80
) -> DoubleCategoryInstance:
    """The double category of a cartesian monoidal structure over a one-object,
    one-morphism base: 1-cells are the sets themselves, star is the product.
    """
    universe = list(universe)
    rng = random.Random(seed)
    all_functions = [
        FinFunction(a, b, images)
        for a in universe
        for b in universe
        for images in itertools.product(b.elements, repeat=len(a))
    ]
    if len(all_functions) > max_cells:
        all_functions = rng.sample(all_functions, max_cells)
        all_functions.extend(FinFunction.identity(a) for a in universe)
        all_functions = list(dict.fromkeys(all_functions))

    def assoc(x: FinSet, y: FinSet, z: FinSet) -> FinFunction:
        left, _, _ = cartesian_product(cartesian_product(x, y)[0], z)
        right, _, _ = cartesian_product(x, cartesian_product(y, z)[0])
        return FinFunction(left, right, tuple((a, (b, c)) for (a, b), c in left))

    def lunit(x: FinSet) -> FinFunction:
        dom, _, _ = cartesian_product(POINT, x)
        return FinFunction(dom, x, tuple(a for _, a in dom))

    def runit(x: FinSet) -> FinFunction:
        dom, _, _ = cartesian_product(x, POINT)
        return FinFunction(dom, x, tuple(a for a, _ in dom))

    return DoubleCategoryInstance(
        name="Monoidal(FinSet, x)",
        obj0=(TRIVIAL_OBJECT,),
        mor0=(TRIVIAL_IDENTITY,),
        obj1=tuple(universe),
        mor2=tuple(all_functions),
        src0=lambda f: TRIVIAL_OBJECT,
        tgt0=lambda f: TRIVIAL_OBJECT,
        compose0=lambda f, g: TRIVIAL_IDENTITY,
        id0=lambda a: TRIVIAL_IDENTITY,
        d_obj=lambda x: TRIVIAL_OBJECT,
        r_obj=lambda x: TRIVIAL_OBJECT,
        src2=lambda f: f.domain,
        tgt2=lambda f: f.codomain,
        d_mor=lambda f: TRIVIAL_IDENTITY,
        r_mor=lambda f: TRIVIAL_IDENTITY,
        star_obj=lambda x, y: cartesian_product(x, y)[0],
        star_mor=_product_map,
        vcompose2=lambda f, g: f.then(g),
        id1=FinFunction.identity,
        unit_obj=lambda a: POINT,
        unit_mor=lambda f: FinFunction.identity(POINT),
        strict=False,
        associator=assoc,
        left_unitor=lunit,
        right_unitor=runit,
        invert2=lambda f: f.inverse(),
    )


@dataclass(frozen=True)
class ActionPair:
    """A 1-cell ``A => B`` carried by a set X with structure map ``X x A -> B``."""

    carrier: FinSet
    source: FinSet
    target: FinSet
    act: FinFunction

    def __post_init__(self):
        dom, _, _ = cartesian_product(self.carrier, self.source)
        if self.act.domain != dom or self.act.codomain != self.target:
            raise StructureError("structure map must be total on carrier x source")

    def __call__(self, x, a):
        return self.act((x, a))


@dataclass(frozen=True)
class ActionPairCell:
    src: ActionPair
    tgt: ActionPair
    f1: FinFunction  # on sources
    f2: FinFunction  # on targets
    f3: FinFunction  # on carriers


def _action_pair_cell_valid(cell: ActionPairCell) -> bool:
    p, q = cell.src, cell.tgt
    return all(
        q(cell.f3(x), cell.f1(a)) == cell.f2(p(x, a)) for x, a in p.act.domain
    )


def compose_action_pairs(p: ActionPair, q: ActionPair) -> ActionPair:
    """Composite of ``p: A => B`` then ``q: B => B'``: carrier ``X_q x X_p``,
    structure map "apply p, then q"."""
    if p.target != q.source:
        raise StructureError("action pairs not composable")
    carrier, _, _ = cartesian_product(q.carrier, p.carrier)
    dom, _, _ = cartesian_product(carrier, p.source)
    images = tuple(q(xq, p(xp, a)) for (xq, xp), a in dom)
    return ActionPair(carrier, p.source, q.target, FinFunction(dom, q.target, images))


def _star_action_cells(a: ActionPairCell, b: ActionPairCell) -> ActionPairCell:
    src = compose_action_pairs(a.src, b.src)
    tgt = compose_action_pairs(a.tgt, b.tgt)
    f3 = FinFunction(
        src.carrier, tgt.carrier, tuple((b.f3(xq), a.f3(xp)) for xq, xp in src.carrier)
    )
    return ActionPairCell(src, tgt, a.f1, b.f2, f3)


def unit_action_pair(a: FinSet) -> ActionPair:
    dom, _, _ = cartesian_product(POINT, a)
    return ActionPair(POINT, a, a, FinFunction(dom, a, tuple(x for _, x in dom)))


def _sample_action_cell(
    rng: random.Random, p: ActionPair, universe: list[FinSet], f1: FinFunction | None = None
) -> ActionPairCell:
    for _ in range(8):
        ff1 = f1 if f1 is not None else random_function(rng, p.source, rng.choice(universe))
        f2 = random_function(rng, p.target, rng.choice(universe))
        f3 = random_function(rng, p.carrier, rng.choice(universe))
        via = _product_map(f3, ff1)
        act2 = extend_along(rng, via, p.act.then(f2), f2.codomain)
        if act2 is not None:
            tgt = ActionPair(f3.codomain, ff1.codomain, f2.codomain, act2)
            return ActionPairCell(p, tgt, ff1, f2, f3)
    # guaranteed fallback: an injective carrier map plus a constant target map
    # makes the prescription consistent on every collision of f3 x f1
    ff1 = f1 if f1 is not None else FinFunction.identity(p.source)
    f3 = FinFunction.identity(p.carrier)
    point = rng.choice(universe)
    f2 = FinFunction(p.target, point, (point.elements[0],) * len(p.target))
    act2 = extend_along(rng, _product_map(f3, ff1), p.act.then(f2), f2.codomain)
    tgt = ActionPair(p.carrier, ff1.codomain, f2.codomain, act2)
    return ActionPairCell(p, tgt, ff1, f2, f3)


def monoidal_action_double_category(
    universe, *, seed: int = 0, max_pairs: int = 24, max_cells: int = 48
) -> DoubleCategoryInstance:
    """1-cells ``A => B`` are pairs (carrier X, map X x A -> B); the composite
    carrier is the product of the carriers, acting in sequence. Weak."""
    universe = [u for u in universe if len(u) > 0]
    if not universe:
        raise StructureError("universe must contain a nonempty set")
    c = FinCategory.of_finsets(universe, name="FinSet")
    rng = random.Random(seed)

    pairs: list[ActionPair] = [unit_action_pair(a) for a in universe]
    while len(pairs) < max_pairs:
        objs = [rng.choice(universe) for _ in range(4)]
        for i in range(3):
            carrier = rng.choice(universe)
            dom, _, _ = cartesian_product(carrier, objs[i])
            pairs.append(
                ActionPair(carrier, objs[i], objs[i + 1], random_function(rng, dom, objs[i + 1]))
            )
    pairs = list(dict.fromkeys(pairs))[:max_pairs]

    by_source: dict = {}
    for p in pairs:
        by_source.setdefault(p.source, []).append(p)
    cells: list[ActionPairCell] = []
    seen: set = set()
    attempts = 0
    while len(cells) < max_cells and attempts < max_cells * 20:
        attempts += 1
        p = rng.choice(pairs)
        a1 = _sample_action_cell(rng, p, universe)
        a2 = _sample_action_cell(rng, a1.tgt, universe)
        for cell in (a1, a2):
            if cell not in seen:
                seen.add(cell)
                cells.append(cell)
        partners = by_source.get(p.target, ())
        if partners:
            q = rng.choice(partners)
            b1 = _sample_action_cell(rng, q, universe, f1=a1.f2)
            b2 = _sample_action_cell(rng, b1.tgt, universe, f1=a2.f2)
            for cell in (b1, b2):
                if cell not in seen:
                    seen.add(cell)
                    cells.append(cell)
    for cell in cells:
        if not _action_pair_cell_valid(cell):
            raise StructureError(f"sampled 2-cell fails its commuting square: {cell!r}")
    pairs = list(dict.fromkeys(pairs + [c.src for c in cells] + [c.tgt for c in cells]))

    def assoc(p: ActionPair, q: ActionPair, r: ActionPair) -> ActionPairCell:
        left = compose_action_pairs(compose_action_pairs(p, q), r)
        right = compose_action_pairs(p, compose_action_pairs(q, r))
        f3 = FinFunction(
            left.carrier, right.carrier, tuple(((xr, xq), xp) for xr, (xq, xp) in left.carrier)
        )
        return ActionPairCell(
            left, right, FinFunction.identity(p.source), FinFunction.identity(r.target), f3
        )

    def lunit(p: ActionPair) -> ActionPairCell:
        src = compose_action_pairs(unit_action_pair(p.source), p)
        f3 = FinFunction(src.carrier, p.carrier, tuple(x for x, _ in src.carrier))
        return ActionPairCell(
            src, p, FinFunction.identity(p.source), FinFunction.identity(p.target), f3
        )

    def runit(p: ActionPair) -> ActionPairCell:
        src = compose_action_pairs(p, unit_action_pair(p.target))
        f3 = FinFunction(src.carrier, p.carrier, tuple(x for _, x in src.carrier))
        return ActionPairCell(
            src, p, FinFunction.identity(p.source), FinFunction.identity(p.target), f3
        )

    return DoubleCategoryInstance(
        name="MonoidalAction(FinSet)",
        obj0=tuple(universe),
        mor0=c.morphisms,
        obj1=tuple(pairs),
        mor2=tuple(cells),
        src0=c.src,
        tgt0=c.tgt,
        compose0=c.compose,
        id0=c.identity,
        d_obj=lambda p: p.source,
        r_obj=lambda p: p.target,
        src2=lambda a: a.src,
        tgt2=lambda a: a.tgt,
        d_mor=lambda a: a.f1,
        r_mor=lambda a: a.f2,
        star_obj=compose_action_pairs,
        star_mor=_star_action_cells,
        vcompose2=lambda a, b: ActionPairCell(
            a.src, b.tgt, a.f1.then(b.f1), a.f2.then(b.f2), a.f3.then(b.f3)
        ),
        id1=lambda p: ActionPairCell(
            p,
            p,
            FinFunction.identity(p.source),
            FinFunction.identity(p.target),
            FinFunction.identity(p.carrier),
        ),
        unit_obj=unit_action_pair,
        unit_mor=lambda u: ActionPairCell(
            unit_action_pair(u.domain),
            unit_action_pair(u.codomain),
            u,
            u,
            FinFunction.identity(POINT),
        ),
        strict=False,
        associator=assoc,
        left_unitor=lunit,
        right_unitor=runit,
        invert2=lambda a: ActionPairCell(
            a.tgt, a.src, a.f1.inverse(), a.f2.inverse(), a.f3.inverse()
        ),
    )


def default_universe(max_size: int = 3) -> list[FinSet]:
    """Sets of sizes 1..max_size with disjoint, readable element names."""
    letters = "abcdefgh"
    return [
        FinSet(tuple(f"{letters[n - 1]}{i}" for i in range(n)))
        for n in range(1, max_size + 1)
    ]
