import json

import pytest
from hypothesis import given, settings

from covalg.catalog import chain, cycle, cycle_with_entry, loop_system, simplexample
from covalg.core import PartialSystem
from covalg.extension import ExtPoint
from covalg.freedom import (
    extension_fixed_points,
    extension_freedom_equivalence,
    extension_is_free,
    graph_freedom,
    interior_criterion,
    is_topologically_free,
    tilde_fixed_points,
)

from helpers import brute_free, brute_preimage, iterate, systems


@pytest.mark.parametrize("n", range(1, 7))
def test_pure_cycles_are_not_free(n):
    s = cycle(n)
    rep = is_topologically_free(s)
    assert not rep.free
    assert {x for _, x in rep.violations} == set(s.points)
    assert all(m == n for m, _ in rep.violations)
    assert not graph_freedom(s)
    assert not interior_criterion(s, n)
    assert not extension_is_free(s)


def test_free_examples():
    for s in [cycle_with_entry(3), loop_system(), simplexample(), chain(4)]:
        assert is_topologically_free(s).free
        assert graph_freedom(s)
        assert extension_is_free(s)


def test_exit_witness_for_cycle_with_entry():
    rep = is_topologically_free(cycle_with_entry(3))
    # y enters at x0, so alpha(y) = alpha(x2) = alpha^3(x0)
    assert rep.exits["x2"] == (1, "y")
    assert rep.exits["x0"] == (3, "y")
    assert rep.to_json()["exits"]["x1"] == {"k": 2, "y": "y"}
    assert json.loads(rep.dumps())["free"] is True


def test_report_json_for_violation():
    out = is_topologically_free(cycle(2)).to_json()
    assert out == {"free": False, "violations": [{"n": 2, "x": "x0"}, {"n": 2, "x": "x1"}], "exits": {}}


def test_interior_criterion_examples():
    assert interior_criterion(loop_system(), 1)
    assert not interior_criterion(PartialSystem(["a"], {"a": "a"}), 1)
    with pytest.raises(ValueError):
        interior_criterion(loop_system(), 0)


def test_extension_fixed_points_examples():
    s = loop_system()
    assert extension_fixed_points(s, 1) == {ExtPoint((), ("x0",))}
    assert tilde_fixed_points(s, 1) == {ExtPoint((), ("x0",))}
    assert extension_fixed_points(cycle(3), 2) == frozenset()
    assert len(extension_fixed_points(cycle(3), 3)) == 3


@settings(max_examples=300, deadline=None)
@given(systems(max_size=7))
def test_freedom_deciders_agree(s):
    free = brute_free(s)
    rep = is_topologically_free(s)
    assert rep.free == free
    assert graph_freedom(s) == free
    assert all(interior_criterion(s, n) for n in range(1, len(s) + 1)) == free
    assert extension_is_free(s) == free
    assert extension_freedom_equivalence(s)
    # witnesses: alpha(y) = alpha^k(x) with y off the orbit, k minimal
    for x, (k, y) in rep.exits.items():
        assert s(y) == iterate(s.alpha, x, k)
        assert y != iterate(s.alpha, x, k - 1)
        for j in range(1, k):
            assert brute_preimage(s, iterate(s.alpha, x, j), 1) == {iterate(s.alpha, x, j - 1)}


@settings(max_examples=200, deadline=None)
@given(systems(max_size=6))
def test_extension_fixed_points_match(s):
    for n in range(1, len(s) + 1):
        F = extension_fixed_points(s, n)
        assert F == tilde_fixed_points(s, n)
        assert len(F) == len(s.fixed_points(n))
