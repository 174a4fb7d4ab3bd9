"""Every instance constructor in the package must produce a lawful instance:
exhaustively when the enumerations are small, else on at least 500 sampled
law instances per law."""

import pytest

from doublecat.bimod import alg_double_category
from doublecat.cobord import cobordism_double_category
from doublecat.core import EXHAUSTIVE, check_double_category
from doublecat.diagram import (
    default_universe,
    iso_double_category,
    iso_finset_double_category,
    monoidal_action_double_category,
    monoidal_trivialbase,
    morph_double_category,
    span_double_category,
)

SAMPLED = 500


def _assert_lawful(instance, budget):
    report = check_double_category(instance, budget, seed=0)
    assert report.ok, report.summary()
    return report


@pytest.mark.parametrize("fixture", ["linear3", "diamond", "cyclic3", "walking_iso"])
def test_table_category_instances_exhaustively(fixture, request):
    c = request.getfixturevalue(fixture)
    _assert_lawful(morph_double_category(c), EXHAUSTIVE)
    _assert_lawful(iso_double_category(c), EXHAUSTIVE)


def test_span_instance_at_500():
    _assert_lawful(span_double_category(default_universe(3), seed=3), SAMPLED)


def test_monoidal_instances_at_500():
    _assert_lawful(monoidal_trivialbase(default_universe(3), seed=3), SAMPLED)
    _assert_lawful(monoidal_action_double_category(default_universe(3), seed=3), SAMPLED)


def test_iso_finset_instance_at_500():
    _assert_lawful(iso_finset_double_category(default_universe(3), seed=3), SAMPLED)


def test_algebra_instance_at_500():
    _assert_lawful(alg_double_category(seed=3, max_cells=24), SAMPLED)


@pytest.mark.parametrize("dim", [0, 1])
def test_cobordism_instances_at_500(dim):
    _assert_lawful(cobordism_double_category(dim, bound=3, seed=3), SAMPLED)
