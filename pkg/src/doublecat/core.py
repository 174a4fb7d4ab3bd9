"""The double-category interface, its law checker, duals and functors.

An instance packages four cell enumerations (0-objects, 0-morphisms, 1-cells,
2-cells) together with the structure tables: the two category structures, the
frame maps d and r, horizontal composition ``star``, and the unit functor.
Enumerations may be full (small instances) or bounded deterministic samples
(instances with infinitely many cells, such as cobordisms); tables are
callables that work on arbitrary cells, so composites may leave the
enumeration and are still compared with the instance's equality predicate.

Conventions, used consistently across the package:

* ``compose0(f, g)``, ``vcompose2(a, b)`` are diagrammatic: first argument
  first.
* ``star_obj(x, y)`` requires ``r_obj(x) == d_obj(y)`` and yields a 1-cell
  with ``d = d_obj(x)``, ``r = r_obj(y)``; similarly for ``star_mor``.
* Weak instances supply an associator ``(x, y, z) -> 2-cell`` from
  ``(x*y)*z`` to ``x*(y*z)``, unitors ``left_unitor(x): ID*x -> x`` and
  ``right_unitor(x): x*ID -> x``, and ``invert2`` producing declared inverses
  of witness cells.
"""

from __future__ import annotations

import itertools
import operator
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import ClosureError, StructureError

EXHAUSTIVE = "exhaustive"


class DoubleCategoryInstance:
    def __init__(
        self,
        *,
        name: str,
        obj0: Sequence,
        mor0: Sequence,
        obj1: Sequence,
        mor2: Sequence,
        src0: Callable,
        tgt0: Callable,
        compose0: Callable,
        id0: Callable,
        d_obj: Callable,
        r_obj: Callable,
        src2: Callable,
        tgt2: Callable,
        d_mor: Callable,
        r_mor: Callable,
        star_obj: Callable,
        star_mor: Callable,
        vcompose2: Callable,
        id1: Callable,
        unit_obj: Callable,
        unit_mor: Callable,
        strict: bool = True,
        associator: Callable | None = None,
        left_unitor: Callable | None = None,
        right_unitor: Callable | None = None,
        invert2: Callable | None = None,
        eq: Callable = operator.eq,
    ):
        self.name = name
        self.obj0 = tuple(obj0)
        self.mor0 = tuple(mor0)
        self.obj1 = tuple(obj1)
        self.mor2 = tuple(mor2)
        self.src0 = src0
        self.tgt0 = tgt0
        self.compose0 = compose0
        self.id0 = id0
        self.d_obj = d_obj
        self.r_obj = r_obj
        self.src2 = src2
        self.tgt2 = tgt2
        self.d_mor = d_mor
        self.r_mor = r_mor
        self.star_obj = star_obj
        self.star_mor = star_mor
        self.vcompose2 = vcompose2
        self.id1 = id1
        self.unit_obj = unit_obj
        self.unit_mor = unit_mor
        self.strict = strict
        self.associator = associator
        self.left_unitor = left_unitor
        self.right_unitor = right_unitor
        self.invert2 = invert2
        self.eq = eq
        self._dual_of: DoubleCategoryInstance | None = None
        if not strict and (associator is None or left_unitor is None or right_unitor is None):
            raise StructureError(f"weak instance {name!r} must declare all witnesses")

    def __repr__(self):
        kind = "strict" if self.strict else "weak"
        return (
            f"DoubleCategoryInstance({self.name}, {kind}: |Obj0|={len(self.obj0)}, "
            f"|Mor0|={len(self.mor0)}, |Obj1|={len(self.obj1)}, |Mor2|={len(self.mor2)})"
        )

    # -- composability predicates (the framework checks these before any table)

    def composable0(self, f, g) -> bool:
        return self.eq(self.tgt0(f), self.src0(g))

    def hcomposable1(self, x, y) -> bool:
        return self.eq(self.r_obj(x), self.d_obj(y))

    def vcomposable2(self, a, b) -> bool:
        return self.eq(self.tgt2(a), self.src2(b))

    def hcomposable2(self, a, b) -> bool:
        return (
            self.eq(self.r_mor(a), self.d_mor(b))
            and self.hcomposable1(self.src2(a), self.src2(b))
            and self.hcomposable1(self.tgt2(a), self.tgt2(b))
        )


@dataclass
class DoubleFunctor:
    """Maps between instances, one per cell level.

    ``star_witness(x, y)`` (when present) is an invertible 2-cell of the
    target from ``F(x * y)`` to ``F(x) * F(y)``; ``unit_witness(A)`` one from
    ``F(ID_A)`` to ``ID_F(A)``. Absent witnesses mean strict preservation.
    """

    name: str
    source: DoubleCategoryInstance
    target: DoubleCategoryInstance
    obj0: Callable
    mor0: Callable
    obj1: Callable
    mor2: Callable
    star_witness: Callable | None = None
    unit_witness: Callable | None = None


def identity_double_functor(d: DoubleCategoryInstance) -> DoubleFunctor:
    ident = lambda x: x
    return DoubleFunctor(f"id[{d.name}]", d, d, ident, ident, ident, ident)


def compose_double_functors(first: DoubleFunctor, second: DoubleFunctor) -> DoubleFunctor:
    """Diagrammatic composite: apply ``first``, then ``second``."""
    return DoubleFunctor(
        f"{first.name};{second.name}",
        first.source,
        second.target,
        lambda x: second.obj0(first.obj0(x)),
        lambda x: second.mor0(first.mor0(x)),
        lambda x: second.obj1(first.obj1(x)),
        lambda x: second.mor2(first.mor2(x)),
    )


# ---------------------------------------------------------------------------
# law reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LawResult:
    law: str
    passed: bool
    checked: int
    counterexample: str | None = None

    def __repr__(self):
        status = "ok" if self.passed else "FAIL"
        extra = f" [{self.counterexample}]" if self.counterexample else ""
        return f"{self.law}: {status} ({self.checked} checked){extra}"


@dataclass(frozen=True)
class LawReport:
    subject: str
    budget: object
    seed: int
    results: tuple[LawResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> tuple[LawResult, ...]:
        return tuple(r for r in self.results if not r.passed)

    def result(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def summary(self) -> str:
        lines = [f"{self.subject}: budget={self.budget} seed={self.seed}"]
        lines.extend(f"  {r!r}" for r in self.results)
        verdict = "ALL LAWS PASS" if self.ok else f"{len(self.failures)} LAW(S) FAIL"
        lines.append(f"  => {verdict}")
        return "\n".join(lines)


def _reservoir(items: Iterable, budget, rng: random.Random) -> Iterator:
    """Deterministic sample of ``budget`` items (or everything when exhaustive)."""
    if budget == EXHAUSTIVE:
        yield from items
        return
    if not isinstance(budget, int) or budget <= 0:
        raise StructureError(f"budget must be a positive int or {EXHAUSTIVE!r}")
    kept: list = []
    for i, x in enumerate(items):
        if i < budget:
            kept.append(x)
        else:
            j = rng.randint(0, i)
            if j < budget:
                kept[j] = x
    yield from kept


def _brief(x, limit: int = 160) -> str:
    s = repr(x)
    return s if len(s) <= limit else s[: limit - 3] + "..."


class _SeqPool:
    """A law-instance pool backed by a plain sequence."""

    def __init__(self, items: Sequence):
        self.items = tuple(items) if not isinstance(items, tuple) else items

    def iterate(self) -> Iterator:
        return iter(self.items)

    def sample(self, budget: int, rng: random.Random) -> Iterator:
        if len(self.items) <= budget:
            return iter(self.items)
        return iter(rng.sample(self.items, budget))


class _JoinPool:
    """Tuples built by joining indexed stages, e.g. composable pairs/triples.

    Full iteration walks the nested join; sampling draws the first component
    uniformly and each later component uniformly from its candidate list,
    rejecting dead ends. Join spaces over large enumerations are far too big
    to walk for a sample, so draws never touch the whole space.
    """

    def __init__(self, base: Sequence, steps: Sequence[Callable]):
        self.base = tuple(base)
        self.steps = tuple(steps)

    def iterate(self) -> Iterator:
        def rec(prefix, remaining):
            if not remaining:
                yield prefix
                return
            for nxt in remaining[0](prefix):
                yield from rec(prefix + (nxt,), remaining[1:])

        for first in self.base:
            yield from rec((first,), self.steps)

    def sample(self, budget: int, rng: random.Random) -> Iterator:
        if not self.base:
            return
        produced = 0
        attempts = 0
        max_attempts = budget * 12
        while produced < budget and attempts < max_attempts:
            attempts += 1
            prefix = (rng.choice(self.base),)
            for step in self.steps:
                candidates = step(prefix)
                if not candidates:
                    prefix = None
                    break
                prefix = prefix + (rng.choice(candidates),)
            if prefix is not None:
                produced += 1
                yield prefix


class _MappedPool:
    def __init__(self, inner, fn):
        self.inner = inner
        self.fn = fn

    def iterate(self):
        return map(self.fn, self.inner.iterate())

    def sample(self, budget, rng):
        return map(self.fn, self.inner.sample(budget, rng))


def _as_pool(items):
    if hasattr(items, "iterate") and hasattr(items, "sample"):
        return items
    return _SeqPool(tuple(items))


class _LawEngine:
    def __init__(self, subject: str, budget, seed: int):
        self.subject = subject
        self.budget = budget
        self.seed = seed
        self.results: list[LawResult] = []

    def run(self, law: str, items, check: Callable) -> None:
        pool = _as_pool(items)
        if self.budget == EXHAUSTIVE:
            stream = pool.iterate()
        else:
            if not isinstance(self.budget, int) or self.budget <= 0:
                raise StructureError(f"budget must be a positive int or {EXHAUSTIVE!r}")
            rng = random.Random((self.seed, law).__repr__())
            stream = pool.sample(self.budget, rng)
        checked = 0
        for item in stream:
            checked += 1
            try:
                ce = check(item)
            except Exception as exc:
                # a law evaluation that blows up (usually because an earlier
                # table produced a cell with wrong frames) is a failure of
                # this law, not a malformed instance; those are rejected by
                # validate_instance before any law runs
                ce = (f"raised {type(exc).__name__}: {exc}", item)
            if ce is not None:
                self.results.append(LawResult(law, False, checked, _brief(ce)))
                return
        self.results.append(LawResult(law, True, checked))

    def report(self) -> LawReport:
        return LawReport(self.subject, self.budget, self.seed, tuple(self.results))


# ---------------------------------------------------------------------------
# pools of law instances
# ---------------------------------------------------------------------------


def _by_key(items: Sequence, key: Callable) -> dict:
    idx: dict = {}
    for x in items:
        idx.setdefault(key(x), []).append(x)
    return idx


def _pairs0(d: DoubleCategoryInstance) -> _JoinPool:
    by_src = _by_key(d.mor0, d.src0)
    step = lambda p: by_src.get(d.tgt0(p[-1]), ())
    return _JoinPool(d.mor0, [step])


def _triples0(d: DoubleCategoryInstance) -> _JoinPool:
    by_src = _by_key(d.mor0, d.src0)
    step = lambda p: by_src.get(d.tgt0(p[-1]), ())
    return _JoinPool(d.mor0, [step, step])


def _vpairs2(d: DoubleCategoryInstance) -> _JoinPool:
    by_src = _by_key(d.mor2, d.src2)
    step = lambda p: by_src.get(d.tgt2(p[-1]), ())
    return _JoinPool(d.mor2, [step])


def _vtriples2(d: DoubleCategoryInstance) -> _JoinPool:
    by_src = _by_key(d.mor2, d.src2)
    step = lambda p: by_src.get(d.tgt2(p[-1]), ())
    return _JoinPool(d.mor2, [step, step])


def _hpairs1(d: DoubleCategoryInstance) -> _JoinPool:
    by_d = _by_key(d.obj1, d.d_obj)
    step = lambda p: by_d.get(d.r_obj(p[-1]), ())
    return _JoinPool(d.obj1, [step])


def _htriples1(d: DoubleCategoryInstance) -> _JoinPool:
    by_d = _by_key(d.obj1, d.d_obj)
    step = lambda p: by_d.get(d.r_obj(p[-1]), ())
    return _JoinPool(d.obj1, [step, step])


def _hpairs2(d: DoubleCategoryInstance) -> _JoinPool:
    by_dmor = _by_key(d.mor2, d.d_mor)
    step = lambda p: [b for b in by_dmor.get(d.r_mor(p[-1]), ()) if d.hcomposable2(p[-1], b)]
    return _JoinPool(d.mor2, [step])


def _htriples2(d: DoubleCategoryInstance) -> _JoinPool:
    by_dmor = _by_key(d.mor2, d.d_mor)
    step = lambda p: [b for b in by_dmor.get(d.r_mor(p[-1]), ()) if d.hcomposable2(p[-1], b)]
    return _JoinPool(d.mor2, [step, step])


def _interchange_quads(d: DoubleCategoryInstance) -> _JoinPool:
    vpairs = list(_vpairs2(d).iterate())
    right = _by_key(vpairs, lambda p: (d.d_mor(p[0]), d.d_mor(p[1])))

    def step(prefix):
        (a, a2), = prefix
        return [
            bp
            for bp in right.get((d.r_mor(a), d.r_mor(a2)), ())
            if d.hcomposable2(a, bp[0]) and d.hcomposable2(a2, bp[1])
        ]

    pool = _JoinPool(vpairs, [step])
    flatten = lambda t: (t[0][0], t[0][1], t[1][0], t[1][1])
    return _MappedPool(pool, flatten)


# ---------------------------------------------------------------------------
# structural validation
# ---------------------------------------------------------------------------


def _contains(collection, x, eq) -> bool:
    if eq is operator.eq:
        return x in collection
    return any(eq(x, y) for y in collection)


def validate_instance(d: DoubleCategoryInstance, *, totality_samples: int = 500) -> None:
    """Reject malformed instances before any law checking.

    Dangling cell references (frames outside the enumerations) and partial
    tables that raise inside their declared domain are structural errors, as
    opposed to wrong-but-total tables, which the law checker reports with
    counterexamples.
    """
    for f in d.mor0:
        if not _contains(d.obj0, d.src0(f), d.eq):
            raise StructureError(f"{d.name}: source of 0-morphism {_brief(f)} not in Obj0")
        if not _contains(d.obj0, d.tgt0(f), d.eq):
            raise StructureError(f"{d.name}: target of 0-morphism {_brief(f)} not in Obj0")
    for x in d.obj1:
        if not _contains(d.obj0, d.d_obj(x), d.eq):
            raise StructureError(f"{d.name}: d-object of 1-cell {_brief(x)} not in Obj0")
        if not _contains(d.obj0, d.r_obj(x), d.eq):
            raise StructureError(f"{d.name}: r-object of 1-cell {_brief(x)} not in Obj0")
    for a in d.mor2:
        if not _contains(d.obj1, d.src2(a), d.eq):
            raise StructureError(f"{d.name}: source of 2-cell {_brief(a)} not in Obj1")
        if not _contains(d.obj1, d.tgt2(a), d.eq):
            raise StructureError(f"{d.name}: target of 2-cell {_brief(a)} not in Obj1")
        if not _contains(d.mor0, d.d_mor(a), d.eq):
            raise StructureError(f"{d.name}: d-morphism of 2-cell {_brief(a)} not in Mor0")
        if not _contains(d.mor0, d.r_mor(a), d.eq):
            raise StructureError(f"{d.name}: r-morphism of 2-cell {_brief(a)} not in Mor0")

    rng = random.Random("totality")
    applications = [
        ("id0", d.obj0, lambda a: d.id0(a)),
        ("unit_obj", d.obj0, lambda a: d.unit_obj(a)),
        ("unit_mor", d.mor0, lambda f: d.unit_mor(f)),
        ("id1", d.obj1, lambda x: d.id1(x)),
        ("compose0", _pairs0(d), lambda p: d.compose0(*p)),
        ("star_obj", _hpairs1(d), lambda p: d.star_obj(*p)),
        ("vcompose2", _vpairs2(d), lambda p: d.vcompose2(*p)),
        ("star_mor", _hpairs2(d), lambda p: d.star_mor(*p)),
    ]
    for table, pool, apply_ in applications:
        for item in _as_pool(pool).sample(totality_samples, rng):
            try:
                apply_(item)
            except Exception as exc:
                raise StructureError(
                    f"{d.name}: table {table!r} undefined on its declared domain at "
                    f"{_brief(item)}: {exc}"
                ) from exc


# ---------------------------------------------------------------------------
# the checker
# ---------------------------------------------------------------------------


def check_double_category(
    d: DoubleCategoryInstance, budget=EXHAUSTIVE, *, seed: int = 0
) -> LawReport:
    """Check every axiom of a double category on the instance's enumerations.

    Laws are checked exhaustively when ``budget == "exhaustive"``, otherwise
    on a deterministic pseudo-random sample of ``budget`` law instances per
    law. Structural problems (dangling cells, tables undefined on their
    declared domain) raise :class:`StructureError`; genuine law violations are
    reported with a concrete counterexample.
    """
    validate_instance(d)
    eng = _LawEngine(d.name, budget, seed)
    eq = d.eq

    eng.run(
        "D0/identity",
        d.mor0,
        lambda f: None
        if eq(d.compose0(d.id0(d.src0(f)), f), f) and eq(d.compose0(f, d.id0(d.tgt0(f))), f)
        else ("identity law", f),
    )
    eng.run(
        "D0/associativity",
        _triples0(d),
        lambda t: None
        if eq(d.compose0(d.compose0(t[0], t[1]), t[2]), d.compose0(t[0], d.compose0(t[1], t[2])))
        else t,
    )
    eng.run(
        "D1/identity",
        d.mor2,
        lambda a: None
        if eq(d.vcompose2(d.id1(d.src2(a)), a), a) and eq(d.vcompose2(a, d.id1(d.tgt2(a))), a)
        else ("identity law", a),
    )
    eng.run(
        "D1/associativity",
        _vtriples2(d),
        lambda t: None
        if eq(
            d.vcompose2(d.vcompose2(t[0], t[1]), t[2]),
            d.vcompose2(t[0], d.vcompose2(t[1], t[2])),
        )
        else t,
    )

    def frames(a):
        good = (
            eq(d.src0(d.d_mor(a)), d.d_obj(d.src2(a)))
            and eq(d.tgt0(d.d_mor(a)), d.d_obj(d.tgt2(a)))
            and eq(d.src0(d.r_mor(a)), d.r_obj(d.src2(a)))
            and eq(d.tgt0(d.r_mor(a)), d.r_obj(d.tgt2(a)))
        )
        return None if good else a

    eng.run("d,r/frames", d.mor2, frames)
    eng.run(
        "d,r/identities",
        d.obj1,
        lambda x: None
        if eq(d.d_mor(d.id1(x)), d.id0(d.d_obj(x))) and eq(d.r_mor(d.id1(x)), d.id0(d.r_obj(x)))
        else x,
    )
    eng.run(
        "d,r/composition",
        _vpairs2(d),
        lambda p: None
        if eq(d.d_mor(d.vcompose2(*p)), d.compose0(d.d_mor(p[0]), d.d_mor(p[1])))
        and eq(d.r_mor(d.vcompose2(*p)), d.compose0(d.r_mor(p[0]), d.r_mor(p[1])))
        else p,
    )

    eng.run(
        "star/frames",
        _hpairs1(d),
        lambda p: None
        if eq(d.d_obj(d.star_obj(*p)), d.d_obj(p[0])) and eq(d.r_obj(d.star_obj(*p)), d.r_obj(p[1]))
        else p,
    )

    def star_cell_frames(p):
        a, b = p
        s = d.star_mor(a, b)
        good = (
            eq(d.src2(s), d.star_obj(d.src2(a), d.src2(b)))
            and eq(d.tgt2(s), d.star_obj(d.tgt2(a), d.tgt2(b)))
            and eq(d.d_mor(s), d.d_mor(a))
            and eq(d.r_mor(s), d.r_mor(b))
        )
        return None if good else p

    eng.run("star/cell-frames", _hpairs2(d), star_cell_frames)
    eng.run(
        "star/identities",
        _hpairs1(d),
        lambda p: None
        if eq(d.star_mor(d.id1(p[0]), d.id1(p[1])), d.id1(d.star_obj(*p)))
        else p,
    )
    eng.run(
        "star/interchange",
        _interchange_quads(d),
        lambda q: None
        if eq(
            d.star_mor(d.vcompose2(q[0], q[1]), d.vcompose2(q[2], q[3])),
            d.vcompose2(d.star_mor(q[0], q[2]), d.star_mor(q[1], q[3])),
        )
        else q,
    )

    eng.run(
        "unit/section",
        d.obj0,
        lambda A: None
        if eq(d.d_obj(d.unit_obj(A)), A) and eq(d.r_obj(d.unit_obj(A)), A)
        else A,
    )

    def unit_cell_frames(f):
        u = d.unit_mor(f)
        good = (
            eq(d.src2(u), d.unit_obj(d.src0(f)))
            and eq(d.tgt2(u), d.unit_obj(d.tgt0(f)))
            and eq(d.d_mor(u), f)
            and eq(d.r_mor(u), f)
        )
        return None if good else f

    eng.run("unit/cell-frames", d.mor0, unit_cell_frames)
    eng.run(
        "unit/identity-cells",
        d.obj0,
        lambda A: None if eq(d.unit_mor(d.id0(A)), d.id1(d.unit_obj(A))) else A,
    )
    eng.run(
        "unit/composition",
        _pairs0(d),
        lambda p: None
        if eq(d.unit_mor(d.compose0(*p)), d.vcompose2(d.unit_mor(p[0]), d.unit_mor(p[1])))
        else p,
    )

    if d.strict:
        eng.run(
            "axiom/assoc-1cells",
            _htriples1(d),
            lambda t: None
            if eq(d.star_obj(d.star_obj(t[0], t[1]), t[2]), d.star_obj(t[0], d.star_obj(t[1], t[2])))
            else t,
        )
        eng.run(
            "axiom/assoc-2cells",
            _htriples2(d),
            lambda t: None
            if eq(
                d.star_mor(d.star_mor(t[0], t[1]), t[2]),
                d.star_mor(t[0], d.star_mor(t[1], t[2])),
            )
            else t,
        )
        eng.run(
            "axiom/unit-1cells",
            d.obj1,
            lambda x: None
            if eq(d.star_obj(d.unit_obj(d.d_obj(x)), x), x)
            and eq(d.star_obj(x, d.unit_obj(d.r_obj(x))), x)
            else x,
        )
        eng.run(
            "axiom/unit-2cells",
            d.mor2,
            lambda a: None
            if eq(d.star_mor(d.unit_mor(d.d_mor(a)), a), a)
            and eq(d.star_mor(a, d.unit_mor(d.r_mor(a))), a)
            else a,
        )
    else:
        eng.run("axiom/associator-validity", _htriples1(d), lambda t: _witness_ok(
            d,
            d.associator(*t),
            d.star_obj(d.star_obj(t[0], t[1]), t[2]),
            d.star_obj(t[0], d.star_obj(t[1], t[2])),
            d.id0(d.d_obj(t[0])),
            d.id0(d.r_obj(t[2])),
            t,
        ))
        eng.run(
            "axiom/associator-naturality",
            _htriples2(d),
            lambda t: _associator_natural(d, *t),
        )
        eng.run("axiom/unitor-validity", d.obj1, lambda x: _unitors_ok(d, x))
        eng.run("axiom/unitor-naturality", d.mor2, lambda a: _unitors_natural(d, a))

    return eng.report()


def _witness_ok(d, w, want_src, want_tgt, want_dmor, want_rmor, context):
    eq = d.eq
    if not (eq(d.src2(w), want_src) and eq(d.tgt2(w), want_tgt)):
        return ("witness has wrong frames", context)
    if not (eq(d.d_mor(w), want_dmor) and eq(d.r_mor(w), want_rmor)):
        return ("witness has wrong 0-frames", context)
    if d.invert2 is None:
        return ("no declared inverse", context)
    wi = d.invert2(w)
    if not eq(d.vcompose2(w, wi), d.id1(d.src2(w))):
        return ("witness inverse fails on the left", context)
    if not eq(d.vcompose2(wi, w), d.id1(d.tgt2(w))):
        return ("witness inverse fails on the right", context)
    return None


def _associator_natural(d, a, b, c):
    eq = d.eq
    src_w = d.associator(d.src2(a), d.src2(b), d.src2(c))
    tgt_w = d.associator(d.tgt2(a), d.tgt2(b), d.tgt2(c))
    lhs = d.vcompose2(d.star_mor(d.star_mor(a, b), c), tgt_w)
    rhs = d.vcompose2(src_w, d.star_mor(a, d.star_mor(b, c)))
    return None if eq(lhs, rhs) else (a, b, c)


def _unitors_ok(d, x):
    lam = d.left_unitor(x)
    bad = _witness_ok(
        d,
        lam,
        d.star_obj(d.unit_obj(d.d_obj(x)), x),
        x,
        d.id0(d.d_obj(x)),
        d.id0(d.r_obj(x)),
        ("left unitor", x),
    )
    if bad:
        return bad
    rho = d.right_unitor(x)
    return _witness_ok(
        d,
        rho,
        d.star_obj(x, d.unit_obj(d.r_obj(x))),
        x,
        d.id0(d.d_obj(x)),
        d.id0(d.r_obj(x)),
        ("right unitor", x),
    )


def _unitors_natural(d, a):
    eq = d.eq
    x, y = d.src2(a), d.tgt2(a)
    lhs = d.vcompose2(d.star_mor(d.unit_mor(d.d_mor(a)), a), d.left_unitor(y))
    rhs = d.vcompose2(d.left_unitor(x), a)
    if not eq(lhs, rhs):
        return ("left unitor not natural", a)
    lhs = d.vcompose2(d.star_mor(a, d.unit_mor(d.r_mor(a))), d.right_unitor(y))
    rhs = d.vcompose2(d.right_unitor(x), a)
    if not eq(lhs, rhs):
        return ("right unitor not natural", a)
    return None


# ---------------------------------------------------------------------------
# duals
# ---------------------------------------------------------------------------


def dual(d: DoubleCategoryInstance) -> DoubleCategoryInstance:
    """The dual instance: d and r transposed at both cell levels, star reversed.

    Applying ``dual`` twice returns the original instance object, so the
    involution is cell-for-cell trivial.
    """
    if d._dual_of is not None:
        return d._dual_of

    associator = None
    left_unitor = None
    right_unitor = None
    if not d.strict:
        if d.invert2 is None:
            raise StructureError("weak dual needs declared witness inverses")
        associator = lambda x, y, z: d.invert2(d.associator(z, y, x))
        left_unitor = d.right_unitor
        right_unitor = d.left_unitor

    out = DoubleCategoryInstance(
        name=f"{d.name}^op",
        obj0=d.obj0,
        mor0=d.mor0,
        obj1=d.obj1,
        mor2=d.mor2,
        src0=d.src0,
        tgt0=d.tgt0,
        compose0=d.compose0,
        id0=d.id0,
        d_obj=d.r_obj,
        r_obj=d.d_obj,
        src2=d.src2,
        tgt2=d.tgt2,
        d_mor=d.r_mor,
        r_mor=d.d_mor,
        star_obj=lambda x, y: d.star_obj(y, x),
        star_mor=lambda a, b: d.star_mor(b, a),
        vcompose2=d.vcompose2,
        id1=d.id1,
        unit_obj=d.unit_obj,
        unit_mor=d.unit_mor,
        strict=d.strict,
        associator=associator,
        left_unitor=left_unitor,
        right_unitor=right_unitor,
        invert2=d.invert2,
        eq=d.eq,
    )
    out._dual_of = d
    return out


# ---------------------------------------------------------------------------
# sub-double-categories
# ---------------------------------------------------------------------------


def restrict(
    d: DoubleCategoryInstance,
    obj0_sel: Iterable,
    mor0_sel: Iterable,
    obj1_sel: Iterable,
    mor2_sel: Iterable,
) -> DoubleCategoryInstance:
    """The sub-double-category on a selection of cells.

    The selection must be closed under d, r, identities, units and all three
    compositions; violations raise :class:`ClosureError` naming the missing
    cell rather than being silently repaired.
    """
    o0 = tuple(obj0_sel)
    m0 = tuple(mor0_sel)
    o1 = tuple(obj1_sel)
    m2 = tuple(mor2_sel)
    eq = d.eq

    def need(collection, x, op):
        if not _contains(collection, x, eq):
            raise ClosureError(op, x)

    for f in m0:
        need(o0, d.src0(f), "src0")
        need(o0, d.tgt0(f), "tgt0")
    for a in o0:
        need(m0, d.id0(a), "id0")
        need(o1, d.unit_obj(a), "unit_obj")
    for f in m0:
        for g in m0:
            if d.composable0(f, g):
                need(m0, d.compose0(f, g), "compose0")
        need(m2, d.unit_mor(f), "unit_mor")
    for x in o1:
        need(o0, d.d_obj(x), "d_obj")
        need(o0, d.r_obj(x), "r_obj")
        need(m2, d.id1(x), "id1")
    for x in o1:
        for y in o1:
            if d.hcomposable1(x, y):
                need(o1, d.star_obj(x, y), "star_obj")
    for a in m2:
        need(o1, d.src2(a), "src2")
        need(o1, d.tgt2(a), "tgt2")
        need(m0, d.d_mor(a), "d_mor")
        need(m0, d.r_mor(a), "r_mor")
    for a in m2:
        for b in m2:
            if d.vcomposable2(a, b):
                need(m2, d.vcompose2(a, b), "vcompose2")
            if d.hcomposable2(a, b):
                need(m2, d.star_mor(a, b), "star_mor")

    out = DoubleCategoryInstance(
        name=f"{d.name}|restricted",
        obj0=o0,
        mor0=m0,
        obj1=o1,
        mor2=m2,
        src0=d.src0,
        tgt0=d.tgt0,
        compose0=d.compose0,
        id0=d.id0,
        d_obj=d.d_obj,
        r_obj=d.r_obj,
        src2=d.src2,
        tgt2=d.tgt2,
        d_mor=d.d_mor,
        r_mor=d.r_mor,
        star_obj=d.star_obj,
        star_mor=d.star_mor,
        vcompose2=d.vcompose2,
        id1=d.id1,
        unit_obj=d.unit_obj,
        unit_mor=d.unit_mor,
        strict=d.strict,
        associator=d.associator,
        left_unitor=d.left_unitor,
        right_unitor=d.right_unitor,
        invert2=d.invert2,
        eq=d.eq,
    )
    return out


def is_bicategory_shaped(d: DoubleCategoryInstance) -> bool:
    """True iff every 0-level morphism is an identity (trivial base category)."""
    return all(d.eq(f, d.id0(d.src0(f))) for f in d.mor0)


# ---------------------------------------------------------------------------
# products (used to present disjoint-union-style functors D x D -> D)
# ---------------------------------------------------------------------------


def product_double_category(
    d: DoubleCategoryInstance,
    e: DoubleCategoryInstance,
    *,
    max_cells: int = 400,
    seed: int = 0,
) -> DoubleCategoryInstance:
    """Componentwise product of two strict instances.

    Enumerations are deterministic samples of the pairings, capped at
    ``max_cells`` per level so products of sampled instances stay tractable.
    """
    if not (d.strict and e.strict):
        raise StructureError("product is implemented for strict instances only")
    rng = random.Random(seed)

    def pair_sample(xs, ys):
        allpairs = itertools.product(xs, ys)
        return tuple(_reservoir(allpairs, max_cells, rng))

    eq = lambda p, q: d.eq(p[0], q[0]) and e.eq(p[1], q[1])
    return DoubleCategoryInstance(
        name=f"({d.name})x({e.name})",
        obj0=pair_sample(d.obj0, e.obj0),
        mor0=pair_sample(d.mor0, e.mor0),
        obj1=pair_sample(d.obj1, e.obj1),
        mor2=pair_sample(d.mor2, e.mor2),
        src0=lambda p: (d.src0(p[0]), e.src0(p[1])),
        tgt0=lambda p: (d.tgt0(p[0]), e.tgt0(p[1])),
        compose0=lambda p, q: (d.compose0(p[0], q[0]), e.compose0(p[1], q[1])),
        id0=lambda a: (d.id0(a[0]), e.id0(a[1])),
        d_obj=lambda x: (d.d_obj(x[0]), e.d_obj(x[1])),
        r_obj=lambda x: (d.r_obj(x[0]), e.r_obj(x[1])),
        src2=lambda a: (d.src2(a[0]), e.src2(a[1])),
        tgt2=lambda a: (d.tgt2(a[0]), e.tgt2(a[1])),
        d_mor=lambda a: (d.d_mor(a[0]), e.d_mor(a[1])),
        r_mor=lambda a: (d.r_mor(a[0]), e.r_mor(a[1])),
        star_obj=lambda x, y: (d.star_obj(x[0], y[0]), e.star_obj(x[1], y[1])),
        star_mor=lambda a, b: (d.star_mor(a[0], b[0]), e.star_mor(a[1], b[1])),
        vcompose2=lambda a, b: (d.vcompose2(a[0], b[0]), e.vcompose2(a[1], b[1])),
        id1=lambda x: (d.id1(x[0]), e.id1(x[1])),
        unit_obj=lambda a: (d.unit_obj(a[0]), e.unit_obj(a[1])),
        unit_mor=lambda f: (d.unit_mor(f[0]), e.unit_mor(f[1])),
        strict=True,
        eq=eq,
    )


# ---------------------------------------------------------------------------
# double functors
# ---------------------------------------------------------------------------


def check_double_functor(
    f: DoubleFunctor, budget=EXHAUSTIVE, *, seed: int = 0
) -> LawReport:
    """Check well-formedness, d/r equivariance and star/ID preservation."""
    s, t = f.source, f.target
    eq = t.eq
    eng = _LawEngine(f.name, budget, seed)

    eng.run(
        "functor/mor0-frames",
        s.mor0,
        lambda g: None
        if eq(t.src0(f.mor0(g)), f.obj0(s.src0(g))) and eq(t.tgt0(f.mor0(g)), f.obj0(s.tgt0(g)))
        else g,
    )
    eng.run(
        "functor/mor0-identities",
        s.obj0,
        lambda a: None if eq(f.mor0(s.id0(a)), t.id0(f.obj0(a))) else a,
    )
    eng.run(
        "functor/mor0-composition",
        _pairs0(s),
        lambda p: None
        if eq(f.mor0(s.compose0(*p)), t.compose0(f.mor0(p[0]), f.mor0(p[1])))
        else p,
    )
    eng.run(
        "functor/1cell-frames",
        s.obj1,
        lambda x: None
        if eq(t.d_obj(f.obj1(x)), f.obj0(s.d_obj(x))) and eq(t.r_obj(f.obj1(x)), f.obj0(s.r_obj(x)))
        else x,
    )

    def cell_frames(a):
        fa = f.mor2(a)
        good = (
            eq(t.src2(fa), f.obj1(s.src2(a)))
            and eq(t.tgt2(fa), f.obj1(s.tgt2(a)))
            and eq(t.d_mor(fa), f.mor0(s.d_mor(a)))
            and eq(t.r_mor(fa), f.mor0(s.r_mor(a)))
        )
        return None if good else a

    eng.run("functor/2cell-frames", s.mor2, cell_frames)
    eng.run(
        "functor/2cell-identities",
        s.obj1,
        lambda x: None if eq(f.mor2(s.id1(x)), t.id1(f.obj1(x))) else x,
    )
    eng.run(
        "functor/2cell-composition",
        _vpairs2(s),
        lambda p: None
        if eq(f.mor2(s.vcompose2(*p)), t.vcompose2(f.mor2(p[0]), f.mor2(p[1])))
        else p,
    )

    if f.star_witness is None:
        eng.run(
            "functor/star-1cells",
            _hpairs1(s),
            lambda p: None
            if eq(f.obj1(s.star_obj(*p)), t.star_obj(f.obj1(p[0]), f.obj1(p[1])))
            else p,
        )
        eng.run(
            "functor/star-2cells",
            _hpairs2(s),
            lambda p: None
            if eq(f.mor2(s.star_mor(*p)), t.star_mor(f.mor2(p[0]), f.mor2(p[1])))
            else p,
        )
    else:
        eng.run(
            "functor/star-witness",
            _hpairs1(s),
            lambda p: _witness_ok(
                t,
                f.star_witness(*p),
                f.obj1(s.star_obj(*p)),
                t.star_obj(f.obj1(p[0]), f.obj1(p[1])),
                t.id0(t.d_obj(f.obj1(p[0]))),
                t.id0(t.r_obj(f.obj1(p[1]))),
                p,
            ),
        )

    if f.unit_witness is None:
        eng.run(
            "functor/unit-1cells",
            s.obj0,
            lambda a: None if eq(f.obj1(s.unit_obj(a)), t.unit_obj(f.obj0(a))) else a,
        )
        eng.run(
            "functor/unit-2cells",
            s.mor0,
            lambda g: None if eq(f.mor2(s.unit_mor(g)), t.unit_mor(f.mor0(g))) else g,
        )
    else:
        eng.run(
            "functor/unit-witness",
            s.obj0,
            lambda a: _witness_ok(
                t,
                f.unit_witness(a),
                f.obj1(s.unit_obj(a)),
                t.unit_obj(f.obj0(a)),
                t.id0(f.obj0(a)),
                t.id0(f.obj0(a)),
                a,
            ),
        )

    return eng.report()
