"""Actions of double categories on categories over their object level.

An action packages an acting instance D, an acted category M with a
projection onto Obj(D_0)/Mor(D_0), and an action map defined on pairs
``(xi, m)`` with ``p(m) == r(xi)``; the result projects to ``d(xi)``. The
associativity square commutes up to declared invertible witnesses, checked
together with their naturality by :func:`check_action`, and the unit law
holds through a second witness family.

Shipped instances: every double category acting on itself by horizontal
composition; morphisms of finite sets acting on bundles by pullback; the
algebra instance acting on left modules by tensoring; and isomorphisms of
finite sets transporting pointed-set structure. Orbits are computed by
fixpoint iteration and re-validated for closure on output.
"""

from __future__ import annotations

import operator
import random
from dataclasses import dataclass, field
from typing import Callable

from . import bimod
from .core import (
    EXHAUSTIVE,
    DoubleCategoryInstance,
    LawReport,
    _brief,
    _by_key,
    _JoinPool,
    _LawEngine,
    dual,
)
from .diagram import SquareCell, iso_finset_double_category, morph_double_category
from .errors import OrbitBudgetError, StructureError
from .finset import (
    FinCategory,
    FinFunction,
    FinSet,
    extend_along,
    pullback,
    random_function,
)
from .ratmat import Q, RationalMatrix


@dataclass
class CategoryOver:
    """A finite (or sampled) category with a projection to the 0-level."""

    name: str
    objects: tuple
    morphisms: tuple
    src: Callable
    tgt: Callable
    identity: Callable
    compose: Callable
    p_obj: Callable
    p_mor: Callable
    invert: Callable | None = None
    eq: Callable = operator.eq


@dataclass
class ActionData:
    """An acting instance, an acted category, the action map and witnesses.

    ``act_obj(xi, m)`` needs ``p_obj(m) == r_obj(xi)``; ``assoc_witness`` maps
    ``(xi, xi', m)`` to an invertible acted morphism from ``(xi * xi') * m``
    to ``xi * (xi' * m)``; ``unit_witness(A, m)`` (with ``A == p_obj(m)``)
    one from ``ID_A * m`` to ``m``.
    """

    name: str
    dcat: DoubleCategoryInstance
    acted: CategoryOver
    act_obj: Callable
    act_mor: Callable
    assoc_witness: Callable
    unit_witness: Callable
    invariant_properties: dict = field(default_factory=dict)


def _mor_composable(a: ActionData, alpha, u) -> bool:
    d, m = a.dcat, a.acted
    return (
        d.eq(m.p_mor(u), d.r_mor(alpha))
        and d.eq(m.p_obj(m.src(u)), d.r_obj(d.src2(alpha)))
        and d.eq(m.p_obj(m.tgt(u)), d.r_obj(d.tgt2(alpha)))
    )


def _object_pairs(a: ActionData) -> _JoinPool:
    by_p = _by_key(a.acted.objects, a.acted.p_obj)
    return _JoinPool(a.dcat.obj1, [lambda p: by_p.get(a.dcat.r_obj(p[-1]), ())])


def _morphism_pairs(a: ActionData) -> _JoinPool:
    by_p = _by_key(a.acted.morphisms, a.acted.p_mor)
    step = lambda p: [
        u for u in by_p.get(a.dcat.r_mor(p[-1]), ()) if _mor_composable(a, p[-1], u)
    ]
    return _JoinPool(a.dcat.mor2, [step])


def _object_triples(a: ActionData) -> _JoinPool:
    by_d = _by_key(a.dcat.obj1, a.dcat.d_obj)
    by_p = _by_key(a.acted.objects, a.acted.p_obj)
    return _JoinPool(
        a.dcat.obj1,
        [
            lambda p: by_d.get(a.dcat.r_obj(p[-1]), ()),
            lambda p: by_p.get(a.dcat.r_obj(p[-1]), ()),
        ],
    )


def _morphism_triples(a: ActionData) -> _JoinPool:
    d = a.dcat
    by_dmor = _by_key(d.mor2, d.d_mor)
    by_p = _by_key(a.acted.morphisms, a.acted.p_mor)
    return _JoinPool(
        d.mor2,
        [
            lambda p: [b for b in by_dmor.get(d.r_mor(p[-1]), ()) if d.hcomposable2(p[-1], b)],
            lambda p: [u for u in by_p.get(d.r_mor(p[-1]), ()) if _mor_composable(a, p[-1], u)],
        ],
    )


def _vertical_action_pairs(a: ActionData) -> _JoinPool:
    d, m = a.dcat, a.acted
    by_src2 = _by_key(d.mor2, d.src2)
    by_p = _by_key(m.morphisms, m.p_mor)
    by_src_m = _by_key(m.morphisms, m.src)
    return _JoinPool(
        d.mor2,
        [
            lambda p: by_src2.get(d.tgt2(p[-1]), ()),
            lambda p: [u for u in by_p.get(d.r_mor(p[0]), ()) if _mor_composable(a, p[0], u)],
            lambda p: [
                v
                for v in by_src_m.get(m.tgt(p[-1]), ())
                if _mor_composable(a, p[1], v)
            ],
        ],
    )


def check_action(a: ActionData, budget=EXHAUSTIVE, *, seed: int = 0) -> LawReport:
    """Verify the projection law, functoriality of the action map, the
    associativity square up to its witnesses (including invertibility and
    naturality on sampled cells), the unit law, and any declared invariant
    properties."""
    d, m = a.dcat, a.acted
    eq = m.eq
    eng = _LawEngine(a.name, budget, seed)

    eng.run(
        "action/projection-objects",
        _object_pairs(a),
        lambda p: None
        if d.eq(m.p_obj(a.act_obj(*p)), d.d_obj(p[0]))
        else ("acted object projects off d(xi)", p),
    )
    eng.run(
        "action/projection-morphisms",
        _morphism_pairs(a),
        lambda p: None
        if d.eq(m.p_mor(a.act_mor(*p)), d.d_mor(p[0]))
        else ("acted morphism projects off d(alpha)", p),
    )

    def frames(p):
        alpha, u = p
        out = a.act_mor(alpha, u)
        good = eq(m.src(out), a.act_obj(d.src2(alpha), m.src(u))) and eq(
            m.tgt(out), a.act_obj(d.tgt2(alpha), m.tgt(u))
        )
        return None if good else ("action map breaks frames", p)

    eng.run("action/frames", _morphism_pairs(a), frames)
    eng.run(
        "action/functor-identities",
        _object_pairs(a),
        lambda p: None
        if eq(a.act_mor(d.id1(p[0]), m.identity(p[1])), m.identity(a.act_obj(*p)))
        else p,
    )
    eng.run(
        "action/functor-composition",
        _vertical_action_pairs(a),
        lambda q: None
        if eq(
            a.act_mor(d.vcompose2(q[0], q[1]), m.compose(q[2], q[3])),
            m.compose(a.act_mor(q[0], q[2]), a.act_mor(q[1], q[3])),
        )
        else q,
    )

    def assoc_ok(t):
        xi, xi2, mm = t
        w = a.assoc_witness(xi, xi2, mm)
        left = a.act_obj(d.star_obj(xi, xi2), mm)
        right = a.act_obj(xi, a.act_obj(xi2, mm))
        if not (eq(m.src(w), left) and eq(m.tgt(w), right)):
            return ("witness has wrong endpoints", t)
        if m.invert is None:
            return ("no inverse operation declared", t)
        wi = m.invert(w)
        if not eq(m.compose(w, wi), m.identity(left)):
            return ("witness not left-invertible", t)
        if not eq(m.compose(wi, w), m.identity(right)):
            return ("witness not right-invertible", t)
        return None

    eng.run("action/associativity-witness", _object_triples(a), assoc_ok)

    def assoc_natural(t):
        alpha, beta, u = t
        w_src = a.assoc_witness(d.src2(alpha), d.src2(beta), m.src(u))
        w_tgt = a.assoc_witness(d.tgt2(alpha), d.tgt2(beta), m.tgt(u))
        lhs = m.compose(a.act_mor(d.star_mor(alpha, beta), u), w_tgt)
        rhs = m.compose(w_src, a.act_mor(alpha, a.act_mor(beta, u)))
        return None if eq(lhs, rhs) else ("associativity witness not natural", t)

    eng.run("action/associativity-naturality", _morphism_triples(a), assoc_natural)

    def unit_ok(mm):
        aa = m.p_obj(mm)
        chi = a.unit_witness(aa, mm)
        left = a.act_obj(d.unit_obj(aa), mm)
        if not (eq(m.src(chi), left) and eq(m.tgt(chi), mm)):
            return ("unit witness has wrong endpoints", mm)
        if m.invert is None:
            return ("no inverse operation declared", mm)
        ci = m.invert(chi)
        if not eq(m.compose(chi, ci), m.identity(left)):
            return ("unit witness not left-invertible", mm)
        if not eq(m.compose(ci, chi), m.identity(mm)):
            return ("unit witness not right-invertible", mm)
        return None

    eng.run("action/unit-witness", m.objects, unit_ok)

    def unit_natural(u):
        chi_src = a.unit_witness(m.p_obj(m.src(u)), m.src(u))
        chi_tgt = a.unit_witness(m.p_obj(m.tgt(u)), m.tgt(u))
        lhs = m.compose(a.act_mor(d.unit_mor(m.p_mor(u)), u), chi_tgt)
        rhs = m.compose(chi_src, u)
        return None if eq(lhs, rhs) else ("unit witness not natural", u)

    eng.run("action/unit-naturality", m.morphisms, unit_natural)

    for prop_name, pred in a.invariant_properties.items():
        eng.run(
            f"invariant-property/{prop_name}",
            _object_pairs(a),
            lambda p, _pred=pred: None
            if not _pred(p[1]) or _pred(a.act_obj(*p))
            else ("property not preserved", p),
        )

    return eng.report()


# ---------------------------------------------------------------------------
# self-action
# ---------------------------------------------------------------------------


def self_action(d: DoubleCategoryInstance, side: str = "left") -> ActionData:
    """A double category acting on its own 1-cells by horizontal composition.

    The left action composes ``xi * m`` (so the projection is the d-frame);
    the right action is the left action of the dual instance.
    """
    if side == "right":
        inner = self_action(dual(d), "left")
        inner.name = f"self-action[right, {d.name}]"
        return inner
    if side != "left":
        raise StructureError("side must be 'left' or 'right'")

    acted = CategoryOver(
        name=f"{d.name}.1-cells",
        objects=d.obj1,
        morphisms=d.mor2,
        src=d.src2,
        tgt=d.tgt2,
        identity=d.id1,
        compose=d.vcompose2,
        p_obj=d.d_obj,
        p_mor=d.d_mor,
        invert=d.invert2 if d.invert2 is not None else (lambda w: w),
        eq=d.eq,
    )
    if d.strict:
        assoc = lambda xi, xi2, m: d.id1(d.star_obj(d.star_obj(xi, xi2), m))
        unit = lambda a, m: d.id1(m)
    else:
        assoc = d.associator
        unit = lambda a, m: d.left_unitor(m)
    return ActionData(
        name=f"self-action[left, {d.name}]",
        dcat=d,
        acted=acted,
        act_obj=d.star_obj,
        act_mor=d.star_mor,
        assoc_witness=assoc,
        unit_witness=unit,
    )


# ---------------------------------------------------------------------------
# pullback action on bundles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BundleMap:
    """A commuting square of total maps between two bundles."""

    src: FinFunction
    tgt: FinFunction
    top: FinFunction
    bot: FinFunction

    def __post_init__(self):
        if self.src.then(self.bot).mapping != self.top.then(self.tgt).mapping:
            raise StructureError("bundle map square does not commute")

    def then(self, other: "BundleMap") -> "BundleMap":
        return BundleMap(self.src, other.tgt, self.top.then(other.top), self.bot.then(other.bot))

    @staticmethod
    def identity(bundle: FinFunction) -> "BundleMap":
        return BundleMap(
            bundle, bundle, FinFunction.identity(bundle.domain), FinFunction.identity(bundle.codomain)
        )

    def inverse(self) -> "BundleMap":
        return BundleMap(self.tgt, self.src, self.top.inverse(), self.bot.inverse())


def _canonical_carrier(k: int, universe) -> FinSet:
    for s in universe:
        if len(s) == k:
            return s
    return FinSet(tuple(f"q{i}" for i in range(k)))


def pullback_action(
    universe,
    *,
    seed: int = 0,
    two_cell_budget: int = 100,
    n_bundle_maps: int = 80,
) -> ActionData:
    """Morphisms of finite sets acting on bundles: ``f`` pulls a bundle over
    its codomain back to one over its domain, with the canonical bijections
    ``(f then g)* E ~ f*(g* E)`` and ``id* E ~ E`` as witnesses.

    Pulled-back total spaces are renamed onto canonical carriers (the first
    universe set of the right size, falling back to fresh names). Since a
    pullback never increases the largest fiber, the reachable carrier sizes
    are bounded and orbit closures terminate.
    """
    universe = list(universe)
    c = FinCategory.of_finsets(universe)
    d = morph_double_category(c, two_cell_budget=two_cell_budget, seed=seed)
    rng = random.Random(seed + 1)

    bundles = tuple(c.morphisms)
    bundles_over = _by_key(bundles, lambda b: b.codomain)

    def map_over(bundle: FinFunction, bot: FinFunction) -> BundleMap | None:
        """A sampled bundle map with the prescribed base component."""
        top = random_function(rng, bundle.domain, rng.choice(universe))
        tgt = extend_along(rng, top, bundle.then(bot), bot.codomain)
        if tgt is None:
            top = FinFunction.identity(bundle.domain)
            tgt = bundle.then(bot)
        return BundleMap(bundle, tgt, top, bot)

    # generate bundle maps whose base components are the frames of the
    # instance's sampled squares, chained along its vertically composable
    # cells, so the action checker's joins are never vacuous
    maps: list[BundleMap] = [BundleMap.identity(b) for b in bundles[: n_bundle_maps // 4]]
    by_src2 = _by_key(d.mor2, d.src2)
    attempts = 0
    while len(maps) < n_bundle_maps and attempts < n_bundle_maps * 20:
        attempts += 1
        alpha = rng.choice(d.mor2)
        starts = bundles_over.get(d.r_obj(d.src2(alpha)), ())
        if not starts:
            continue
        w1 = map_over(rng.choice(starts), alpha.bottom)
        maps.append(w1)
        for beta in by_src2.get(d.tgt2(alpha), ()):
            maps.append(map_over(w1.tgt, beta.bottom))
            break
    maps = list(dict.fromkeys(maps))
    bundle_pool = tuple(dict.fromkeys(list(bundles) + [w.src for w in maps] + [w.tgt for w in maps]))

    acted = CategoryOver(
        name="bundles",
        objects=bundle_pool,
        morphisms=tuple(maps),
        src=lambda w: w.src,
        tgt=lambda w: w.tgt,
        identity=BundleMap.identity,
        compose=lambda w1, w2: w1.then(w2),
        p_obj=lambda b: b.codomain,
        p_mor=lambda w: w.bot,
        invert=BundleMap.inverse,
    )

    def pull(xi: FinFunction, bundle: FinFunction):
        """The renamed pullback bundle plus the pair-decoding of its carrier."""
        cone = pullback(xi, bundle)
        carrier = _canonical_carrier(len(cone.apex), universe)
        pairs = cone.apex.elements
        renamed = FinFunction(carrier, xi.domain, cone.p1.mapping)
        return renamed, dict(zip(carrier.elements, pairs)), dict(zip(pairs, carrier.elements))

    def act_obj(xi: FinFunction, bundle: FinFunction) -> FinFunction:
        return pull(xi, bundle)[0]

    def act_mor(alpha: SquareCell, w: BundleMap) -> BundleMap:
        src_b, decode_src, _ = pull(alpha.left, w.src)
        tgt_b, _, encode_tgt = pull(alpha.right, w.tgt)
        images = []
        for carrier_elem in src_b.domain:
            b2, e = decode_src[carrier_elem]
            images.append(encode_tgt[(alpha.top(b2), w.top(e))])
        top = FinFunction(src_b.domain, tgt_b.domain, tuple(images))
        return BundleMap(src_b, tgt_b, top, alpha.top)

    def assoc_witness(xi: FinFunction, xi2: FinFunction, bundle: FinFunction) -> BundleMap:
        left, decode_left, _ = pull(xi.then(xi2), bundle)
        inner, _, encode_inner = pull(xi2, bundle)
        right, _, encode_right = pull(xi, inner)
        images = []
        for carrier_elem in left.domain:
            cc, e = decode_left[carrier_elem]
            images.append(encode_right[(cc, encode_inner[(xi(cc), e)])])
        top = FinFunction(left.domain, right.domain, tuple(images))
        return BundleMap(left, right, top, FinFunction.identity(xi.domain))

    def unit_witness(base: FinSet, bundle: FinFunction) -> BundleMap:
        left, decode_left, _ = pull(FinFunction.identity(base), bundle)
        top = FinFunction(
            left.domain, bundle.domain, tuple(decode_left[c][1] for c in left.domain)
        )
        return BundleMap(left, bundle, top, FinFunction.identity(base))

    return ActionData(
        name="pullback-action",
        dcat=d,
        acted=acted,
        act_obj=act_obj,
        act_mor=act_mor,
        assoc_witness=assoc_witness,
        unit_witness=unit_witness,
        invariant_properties={"surjective-bundle": lambda b: set(b.mapping) == set(b.codomain.elements)},
    )


# ---------------------------------------------------------------------------
# module action
# ---------------------------------------------------------------------------


def left_module(algebra: bimod.FinDimAlgebra) -> bimod.Bimodule:
    """The algebra as a left module over itself (trivial right scalars)."""
    return module_of_bimodule(bimod.regular_bimodule(algebra))


def module_of_bimodule(m: bimod.Bimodule) -> bimod.Bimodule:
    """Forget the right action down to the ground field."""
    k = bimod.rational_field()
    from .ratmat import RationalMatrix

    return bimod.Bimodule(
        m.left, k, m.dim, m.left_action, (RationalMatrix.identity(m.dim),),
        name=f"mod({m.name})",
    )


def module_action(*, seed: int = 0, max_cells: int = 30) -> ActionData:
    """The algebra instance acting on left modules by tensoring on the left.

    Modules are bimodules with the ground field on the right, so the action
    map is literally the tensor composition and the witnesses specialize the
    bimodule associator and left unitor.
    """
    d = bimod.alg_double_category(seed=seed, max_cells=max_cells)
    k = bimod.rational_field()
    modules = tuple(
        dict.fromkeys(
            [module_of_bimodule(bm) for bm in d.obj1 if bm.right == k]
            + [left_module(a) for a in d.obj0]
            + [module_of_bimodule(bimod.include_morph_alg(f)) for f in d.mor0]
        )
    )
    rng = random.Random(seed + 7)
    id_k = bimod.AlgebraMap.identity(k)

    def module_identity(m: bimod.Bimodule) -> bimod.BimoduleCell:
        return bimod.BimoduleCell(
            m, m, bimod.AlgebraMap.identity(m.left), id_k, RationalMatrix.identity(m.dim)
        )

    cells: list[bimod.BimoduleCell] = [module_identity(m) for m in modules[:6]]
    maps_by_src = _by_key(d.mor0, lambda f: f.src)
    by_left = _by_key(modules, lambda m: m.left)

    def sample_module_cell(src):
        u_pool = maps_by_src.get(src.left, ())
        if not u_pool:
            return None
        u = rng.choice(u_pool)
        tgts = by_left.get(u.tgt, ())
        if not tgts:
            return None
        tgt = rng.choice(tgts)
        basis = bimod.bimodule_hom_basis(src, tgt, u, id_k)
        w = RationalMatrix.zeros(tgt.dim, src.dim)
        for mat in basis:
            w = w + mat.scale(Q(rng.randint(-2, 2)))
        return bimod.BimoduleCell(src, tgt, u, id_k, w)

    attempts = 0
    while len(cells) < max_cells and attempts < max_cells * 20:
        attempts += 1
        first = sample_module_cell(rng.choice(modules))
        if first is None:
            continue
        cells.append(first)
        second = sample_module_cell(first.tgt)
        if second is not None:
            cells.append(second)
    cells = list(dict.fromkeys(cells))

    acted = CategoryOver(
        name="left-modules",
        objects=modules,
        morphisms=tuple(cells),
        src=lambda cell: cell.src,
        tgt=lambda cell: cell.tgt,
        identity=module_identity,
        compose=lambda c1, c2: bimod.BimoduleCell(
            c1.src, c2.tgt, c1.u.then(c2.u), id_k, c2.w @ c1.w
        ),
        p_obj=lambda m: m.left,
        p_mor=lambda cell: cell.u,
        invert=bimod._invert_cell,
    )

    return ActionData(
        name="module-action",
        dcat=d,
        acted=acted,
        act_obj=lambda n, m: bimod.tensor_over(n, m).module,
        act_mor=lambda alpha, u: bimod._star_cells(alpha, u),
        assoc_witness=bimod.bimodule_associator,
        unit_witness=lambda a, m: bimod.bimodule_left_unitor(m),
    )


# ---------------------------------------------------------------------------
# transport of pointed structure along isomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointedSet:
    carrier: FinSet
    point: object

    def __post_init__(self):
        if self.point not in self.carrier:
            raise StructureError("base point must lie in the carrier")


@dataclass(frozen=True)
class PointedMap:
    src: PointedSet
    tgt: PointedSet
    fn: FinFunction

    def __post_init__(self):
        if self.fn.domain != self.src.carrier or self.fn.codomain != self.tgt.carrier:
            raise StructureError("pointed map endpoints do not match")
        if self.fn(self.src.point) != self.tgt.point:
            raise StructureError("pointed map does not preserve the base point")

    def then(self, other: "PointedMap") -> "PointedMap":
        return PointedMap(self.src, other.tgt, self.fn.then(other.fn))

    @staticmethod
    def identity(x: PointedSet) -> "PointedMap":
        return PointedMap(x, x, FinFunction.identity(x.carrier))

    def inverse(self) -> "PointedMap":
        return PointedMap(self.tgt, self.src, self.fn.inverse())


def transport_pointed(u: FinFunction, x: PointedSet) -> PointedSet:
    """Structure transported along ``u: B -> carrier(x)``: the point moves
    backwards through the isomorphism."""
    if u.codomain != x.carrier:
        raise StructureError("transport undefined: bijection does not land on the carrier")
    if not u.is_bijection():
        raise StructureError("transport undefined: not an isomorphism")
    return PointedSet(u.domain, u.inverse()(x.point))


def iso_action(
    universe, *, seed: int = 0, two_cell_budget: int = 80, n_maps: int = 60
) -> ActionData:
    """ISO of finite sets acting on pointed finite sets by transporting the
    base point; successive transports compose strictly, so the witnesses are
    identities."""
    universe = [u for u in universe if len(u) > 0]
    d = iso_finset_double_category(universe, seed=seed, two_cell_budget=two_cell_budget)
    rng = random.Random(seed + 3)

    objects = tuple(PointedSet(s, x) for s in universe for x in s.elements)
    # pointed maps carried by the base components of the instance's sampled
    # squares (so the action checker finds joinable morphism pairs), chained
    # along vertically composable cells, plus identities
    maps: list[PointedMap] = [PointedMap.identity(x) for x in objects]
    by_src2 = _by_key(d.mor2, d.src2)

    def pointed_over(fn: FinFunction, point) -> PointedMap:
        return PointedMap(
            PointedSet(fn.domain, point), PointedSet(fn.codomain, fn(point)), fn
        )

    attempts = 0
    while len(maps) < n_maps + len(objects) and attempts < n_maps * 20:
        attempts += 1
        alpha = rng.choice(d.mor2)
        point = rng.choice(alpha.bottom.domain.elements)
        w1 = pointed_over(alpha.bottom, point)
        maps.append(w1)
        for beta in by_src2.get(d.tgt2(alpha), ()):
            maps.append(pointed_over(beta.bottom, w1.tgt.point))
            break
    maps = list(dict.fromkeys(maps))

    acted = CategoryOver(
        name="pointed-sets",
        objects=objects,
        morphisms=tuple(maps),
        src=lambda w: w.src,
        tgt=lambda w: w.tgt,
        identity=PointedMap.identity,
        compose=lambda w1, w2: w1.then(w2),
        p_obj=lambda x: x.carrier,
        p_mor=lambda w: w.fn,
        invert=PointedMap.inverse,
    )

    def act_mor(alpha: SquareCell, w: PointedMap) -> PointedMap:
        return PointedMap(
            transport_pointed(alpha.left, w.src), transport_pointed(alpha.right, w.tgt), alpha.top
        )

    return ActionData(
        name="iso-action",
        dcat=d,
        acted=acted,
        act_obj=transport_pointed,
        act_mor=act_mor,
        assoc_witness=lambda u, v, x: PointedMap.identity(
            transport_pointed(u.then(v), x)
        ),
        unit_witness=lambda base, x: PointedMap.identity(x),
    )


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------


@dataclass
class OrbitResult:
    """The least action- and composition-closed subcategory over a seed.

    ``trace`` records, for every object not in the seed, which ``(xi, m)``
    pair produced it first.
    """

    objects: tuple
    morphisms: tuple
    trace: dict


def validate_subcategory(a: ActionData, objects, morphisms) -> None:
    """Closure of a candidate subcategory of the acted category, as hard errors."""
    m = a.acted
    d = a.dcat
    objs = list(objects)
    mors = list(morphisms)

    def need_obj(x, op):
        if x not in objs:
            raise StructureError(f"orbit not closed under {op}: missing object {_brief(x)}")

    def need_mor(u, op):
        if u not in mors:
            raise StructureError(f"orbit not closed under {op}: missing morphism {_brief(u)}")

    for u in mors:
        need_obj(m.src(u), "src")
        need_obj(m.tgt(u), "tgt")
    for x in objs:
        need_mor(m.identity(x), "identity")
    for u in mors:
        for v in mors:
            if m.eq(m.tgt(u), m.src(v)):
                need_mor(m.compose(u, v), "compose")
    for xi in d.obj1:
        for x in objs:
            if d.eq(m.p_obj(x), d.r_obj(xi)):
                need_obj(a.act_obj(xi, x), "action")
    for alpha in d.mor2:
        for u in mors:
            if _mor_composable(a, alpha, u):
                need_mor(a.act_mor(alpha, u), "action-on-morphisms")


def orbit(a: ActionData, seed_objects, seed_morphisms=(), *, budget: int = 2000) -> OrbitResult:
    """Fixpoint closure of a seed under the action and the acted category's
    own composition; raises :class:`OrbitBudgetError` with the partial result
    when the budget of newly added cells is exhausted."""
    m, d = a.acted, a.dcat
    objects: dict = dict.fromkeys(seed_objects)
    morphisms: dict = dict.fromkeys(seed_morphisms)
    trace: dict = {}
    added = 0

    def add_obj(x, provenance=None) -> bool:
        nonlocal added
        if x in objects:
            return False
        objects[x] = None
        if provenance is not None:
            trace[x] = provenance
        added += 1
        return True

    def add_mor(u) -> bool:
        nonlocal added
        if u in morphisms:
            return False
        morphisms[u] = None
        added += 1
        return True

    changed = True
    while changed:
        changed = False
        for x in list(objects):
            if add_mor(m.identity(x)):
                changed = True
        for u in list(morphisms):
            if add_obj(m.src(u)) or add_obj(m.tgt(u)):
                changed = True
        for xi in d.obj1:
            for x in list(objects):
                if d.eq(m.p_obj(x), d.r_obj(xi)):
                    if add_obj(a.act_obj(xi, x), provenance=(xi, x)):
                        changed = True
        for alpha in d.mor2:
            for u in list(morphisms):
                if _mor_composable(a, alpha, u):
                    if add_mor(a.act_mor(alpha, u)):
                        changed = True
        for u in list(morphisms):
            for v in list(morphisms):
                if m.eq(m.tgt(u), m.src(v)):
                    if add_mor(m.compose(u, v)):
                        changed = True
        if added > budget:
            raise OrbitBudgetError(
                OrbitResult(tuple(objects), tuple(morphisms), trace), budget
            )
    result = OrbitResult(tuple(objects), tuple(morphisms), trace)
    validate_subcategory(a, result.objects, result.morphisms)
    return result


# ---------------------------------------------------------------------------
# characteristic classes
# ---------------------------------------------------------------------------


def check_characteristic_class(
    a: ActionData,
    h1: Callable,
    cls: Callable,
    budget=EXHAUSTIVE,
    *,
    seed: int = 0,
    value_eq: Callable = operator.eq,
) -> LawReport:
    """Verify naturality of a class assignment against the action:
    ``cls(xi * m) == h1(xi)(cls(m))`` over sampled (or all) action pairs."""
    eng = _LawEngine(f"{a.name}.characteristic-class", budget, seed)
    eng.run(
        "characteristic-class/naturality",
        _object_pairs(a),
        lambda p: None
        if value_eq(cls(a.act_obj(*p)), h1(p[0])(cls(p[1])))
        else ("class not natural", p),
    )
    return eng.report()


def fiber_count_class(bundle: FinFunction) -> dict:
    """The integer-valued class counting points in each fiber."""
    counts = {b: 0 for b in bundle.codomain}
    for image in bundle.mapping:
        counts[image] += 1
    return counts


def fiber_count_transport(xi: FinFunction) -> Callable:
    """Contravariant transport of base-indexed integer tables: precompose."""
    return lambda table: {b2: table[xi(b2)] for b2 in xi.domain}
