"""Finite sets, total functions, pullbacks and tabulated finite categories.

Elements of a :class:`FinSet` are arbitrary hashable names (strings in test
corpora; canonical tuples for derived sets such as pullback apexes), so every
construction here has decidable, structural equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .errors import CategoryLawError, StructureError


@dataclass(frozen=True)
class FinSet:
    elements: tuple[Hashable, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise StructureError(f"duplicate element names in {self.elements!r}")

    @staticmethod
    def of(elements: Iterable[Hashable]) -> "FinSet":
        return FinSet(tuple(elements))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __repr__(self):
        return f"FinSet{list(self.elements)!r}"


@dataclass(frozen=True)
class FinFunction:
    """A total function; ``mapping[i]`` is the image of ``domain.elements[i]``."""

    domain: FinSet
    codomain: FinSet
    mapping: tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.mapping) != len(self.domain):
            raise StructureError("mapping length does not match domain size")
        for y in self.mapping:
            if y not in self.codomain:
                raise StructureError(f"image {y!r} not in codomain")

    @staticmethod
    def from_dict(domain: FinSet, codomain: FinSet, assignment: dict) -> "FinFunction":
        return FinFunction(domain, codomain, tuple(assignment[x] for x in domain))

    @staticmethod
    def identity(x: FinSet) -> "FinFunction":
        return FinFunction(x, x, x.elements)

    def __call__(self, x):
        return self.mapping[self.domain.elements.index(x)]

    def then(self, other: "FinFunction") -> "FinFunction":
        if self.codomain != other.domain:
            raise StructureError("functions not composable")
        return FinFunction(self.domain, other.codomain, tuple(other(y) for y in self.mapping))

    def is_bijection(self) -> bool:
        return len(set(self.mapping)) == len(self.codomain) == len(self.domain)

    def inverse(self) -> "FinFunction":
        if not self.is_bijection():
            raise StructureError(f"{self!r} is not a bijection")
        assignment = {y: x for x, y in zip(self.domain, self.mapping)}
        return FinFunction.from_dict(self.codomain, self.domain, assignment)

    def image(self) -> set:
        return set(self.mapping)

    def __repr__(self):
        pairs = ", ".join(f"{x!r}>{y!r}" for x, y in zip(self.domain, self.mapping))
        return f"FinFunction({pairs})"


# ---------------------------------------------------------------------------
# pullbacks, products, coproducts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PullbackCone:
    apex: FinSet
    p1: FinFunction
    p2: FinFunction
    u: FinFunction
    v: FinFunction

    def __post_init__(self):
        if self.p1.then(self.u).mapping != self.p2.then(self.v).mapping:
            raise StructureError("cone does not commute: u.p1 != v.p2")


def pullback(u: FinFunction, v: FinFunction) -> PullbackCone:
    """The canonical pullback of ``u: X -> Z`` against ``v: Y -> Z``.

    The apex is the set of pairs ``(x, y)`` with ``u(x) = v(y)``, listed in
    lexicographic order of the input enumerations; projections are the
    coordinate maps.
    """
    if u.codomain != v.codomain:
        raise StructureError(
            f"codomain mismatch: {u.codomain!r} vs {v.codomain!r}"
        )
    pairs = [
        (x, y)
        for x, ux in zip(u.domain, u.mapping)
        for y, vy in zip(v.domain, v.mapping)
        if ux == vy
    ]
    apex = FinSet(tuple(pairs))
    p1 = FinFunction(apex, u.domain, tuple(x for x, _ in pairs))
    p2 = FinFunction(apex, v.domain, tuple(y for _, y in pairs))
    return PullbackCone(apex, p1, p2, u, v)


def check_pullback_universal(cone: PullbackCone, bound: int) -> bool:
    """Decide the universal property against all competing cones of size <= bound.

    A competing cone with apex W is a pair (a: W -> X, b: W -> Y) with
    u.a = v.b; it is the same thing as a tuple of points of the agreement set
    P = {(x, y) | u(x) = v(y)}, one per element of W. The mediating maps for a
    cone are counted per point: element w can land on any apex element whose
    projections are (a(w), b(w)), so the number of commuting maps is the
    product of those candidate counts, and the cone passes iff the product
    is exactly 1.
    """
    u, v = cone.u, cone.v
    agreement = [
        (x, ux, y, vy)
        for x, ux in zip(u.domain, u.mapping)
        for y, vy in zip(v.domain, v.mapping)
        if ux == vy
    ]
    points = [(x, y) for x, _, y, _ in agreement]
    counts: dict[tuple, int] = {p: 0 for p in points}
    for e, x, y in zip(cone.apex, cone.p1.mapping, cone.p2.mapping):
        key = (x, y)
        if key not in counts:
            # apex element projecting outside the agreement set: no competing
            # cone ever selects it, but the cone itself is then not a pullback
            # candidate worth passing.
            return False
        counts[key] += 1
    if all(c == 1 for c in counts.values()):
        return True  # every per-point product over every cone is a product of ones
    if bound < 1:
        return True
    for size in range(1, bound + 1):
        for cone_points in itertools.product(points, repeat=size):
            n = 1
            for p in cone_points:
                n *= counts[p]
                if n == 0:
                    break
            if n != 1:
                return False
    return True


def disjoint_union(x: FinSet, y: FinSet) -> tuple[FinSet, FinFunction, FinFunction]:
    """Tagged union with its two injections; |X u Y| = |X| + |Y|."""
    elems = tuple((0, e) for e in x) + tuple((1, e) for e in y)
    total = FinSet(elems)
    inj1 = FinFunction(x, total, tuple((0, e) for e in x))
    inj2 = FinFunction(y, total, tuple((1, e) for e in y))
    return total, inj1, inj2


def cartesian_product(x: FinSet, y: FinSet) -> tuple[FinSet, FinFunction, FinFunction]:
    """Pair set with its two projections; |X x Y| = |X| * |Y|."""
    elems = tuple((a, b) for a in x for b in y)
    prod = FinSet(elems)
    proj1 = FinFunction(prod, x, tuple(a for a, _ in elems))
    proj2 = FinFunction(prod, y, tuple(b for _, b in elems))
    return prod, proj1, proj2


def random_function(rng, dom: FinSet, cod: FinSet) -> FinFunction:
    """A seeded random total function; undefined into the empty set."""
    if len(cod) == 0 and len(dom) > 0:
        raise StructureError("no function into the empty set")
    return FinFunction(dom, cod, tuple(rng.choice(cod.elements) for _ in dom))


def extend_along(rng, via: FinFunction, base: FinFunction, codomain: FinSet) -> FinFunction | None:
    """Some ``g`` with ``g(via(m)) == base(m)``, random off the image.

    Returns None if the prescription collides inconsistently on ``via``.
    """
    assignment: dict = {}
    for m, vm in zip(via.domain, via.mapping):
        want = base(m)
        if assignment.get(vm, want) != want:
            return None
        assignment[vm] = want
    mapping = tuple(
        assignment[x] if x in assignment else rng.choice(codomain.elements)
        for x in via.codomain
    )
    return FinFunction(via.codomain, codomain, mapping)


def union_assoc_bijection(x: FinSet, y: FinSet, z: FinSet) -> FinFunction:
    """The canonical re-tagging (X u Y) u Z -> X u (Y u Z)."""
    xy, _, _ = disjoint_union(x, y)
    left, _, _ = disjoint_union(xy, z)
    yz, _, _ = disjoint_union(y, z)
    right, _, _ = disjoint_union(x, yz)

    def retag(e):
        tag, inner = e
        if tag == 0:  # ((0|1, e))
            t2, e2 = inner
            return (0, e2) if t2 == 0 else (1, (0, e2))
        return (1, (1, inner))

    return FinFunction(left, right, tuple(retag(e) for e in left))


# ---------------------------------------------------------------------------
# finite categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinMorphism:
    name: str
    src: Hashable
    tgt: Hashable

    def __repr__(self):
        return f"{self.name}:{self.src!r}->{self.tgt!r}"


class FinCategory:
    """A finite category presented either by tables or by a FinSet universe.

    ``objects`` and ``morphisms`` are full enumerations; ``compose(f, g)``
    is in diagrammatic order (first ``f``, then ``g``).
    """

    def __init__(
        self,
        objects: Sequence,
        morphisms: Sequence,
        src: Callable,
        tgt: Callable,
        identity: Callable,
        compose: Callable,
        name: str = "category",
    ):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = src
        self.tgt = tgt
        self.identity = identity
        self.compose = compose
        self.name = name

    def __repr__(self):
        return f"FinCategory({self.name}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def hom(self, a, b) -> list:
        return [f for f in self.morphisms if self.src(f) == a and self.tgt(f) == b]

    def is_identity(self, f) -> bool:
        return f == self.identity(self.src(f))

    def isomorphisms(self) -> list:
        isos = []
        for f in self.morphisms:
            a, b = self.src(f), self.tgt(f)
            for g in self.hom(b, a):
                if self.compose(f, g) == self.identity(a) and self.compose(
                    g, f
                ) == self.identity(b):
                    isos.append(f)
                    break
        return isos

    def inverse_of(self, f):
        a, b = self.src(f), self.tgt(f)
        for g in self.hom(b, a):
            if self.compose(f, g) == self.identity(a) and self.compose(g, f) == self.identity(b):
                return g
        raise StructureError(f"{f!r} is not invertible")

    @staticmethod
    def of_finsets(universe: Sequence[FinSet], name: str = "FinSet") -> "FinCategory":
        """The full subcategory of finite sets and total functions on ``universe``."""
        objects = tuple(universe)
        morphisms = []
        for dom in objects:
            for cod in objects:
                for images in itertools.product(cod.elements, repeat=len(dom)):
                    morphisms.append(FinFunction(dom, cod, images))
        return FinCategory(
            objects,
            tuple(morphisms),
            src=lambda f: f.domain,
            tgt=lambda f: f.codomain,
            identity=FinFunction.identity,
            compose=lambda f, g: f.then(g),
            name=name,
        )


def validate_fin_category(
    objects: Sequence[Hashable],
    morphisms: Sequence[FinMorphism],
    identities: dict,
    composition: dict[tuple[str, str], str],
    name: str = "category",
) -> FinCategory:
    """Build a :class:`FinCategory` from raw tables, verifying all laws exhaustively.

    ``composition[(f, g)]`` names the composite "f then g". Rejects with the
    violating cell or triple.
    """
    by_name = {m.name: m for m in morphisms}
    if len(by_name) != len(morphisms):
        raise StructureError("duplicate morphism names")
    for m in morphisms:
        if m.src not in objects or m.tgt not in objects:
            raise StructureError(f"morphism {m!r} has a dangling endpoint")
    for obj in objects:
        if obj not in identities:
            raise StructureError(f"no identity assigned to object {obj!r}")
        ident = by_name.get(identities[obj])
        if ident is None or ident.src != obj or ident.tgt != obj:
            raise StructureError(f"identity of {obj!r} is not an endomorphism")

    def compose(f: FinMorphism, g: FinMorphism) -> FinMorphism:
        if f.tgt != g.src:
            raise StructureError(f"not composable: {f!r} then {g!r}")
        key = (f.name, g.name)
        if key not in composition:
            raise StructureError(f"composition table missing entry for {key!r}")
        return by_name[composition[key]]

    def identity(obj) -> FinMorphism:
        return by_name[identities[obj]]

    for f in morphisms:
        for g in morphisms:
            if f.tgt != g.src:
                continue
            h = compose(f, g)
            if h.src != f.src or h.tgt != g.tgt:
                raise CategoryLawError("endpoints", (f, g, h))
    for f in morphisms:
        if compose(identity(f.src), f) != f:
            raise CategoryLawError("left-identity", f)
        if compose(f, identity(f.tgt)) != f:
            raise CategoryLawError("right-identity", f)
    for f in morphisms:
        for g in morphisms:
            if f.tgt != g.src:
                continue
            fg = compose(f, g)
            for h in morphisms:
                if g.tgt != h.src:
                    continue
                if compose(fg, h) != compose(f, compose(g, h)):
                    raise CategoryLawError("associativity", (f, g, h))

    return FinCategory(
        tuple(objects),
        tuple(morphisms),
        src=lambda m: m.src,
        tgt=lambda m: m.tgt,
        identity=identity,
        compose=compose,
        name=name,
    )
