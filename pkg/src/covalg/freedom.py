"""Topological freedom of a partial system and of its extension.

On a finite discrete space every singleton is open, so freedom means:
every point ``x`` of period ``n`` has an exit, i.e. ``|alpha^{-k}(x)| > 1``
for some ``k`` in ``1..n``. Periods are scanned up to ``|X|``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import networkx as nx

from .core import PartialSystem
from .extension import ExtPoint, build_extension, tilde_alpha

__all__ = [
    "FreedomReport",
    "is_topologically_free",
    "graph_freedom",
    "interior_criterion",
    "extension_fixed_points",
    "tilde_fixed_points",
    "extension_is_free",
    "extension_freedom_equivalence",
]


@dataclass(frozen=True)
class FreedomReport:
    free: bool
    violations: tuple[tuple[int, str], ...] = ()
    exits: dict = field(default_factory=dict)  # x -> (k, y)

    def to_json(self) -> dict:
        return {
            "free": self.free,
            "violations": [{"n": n, "x": x} for n, x in self.violations],
            "exits": {x: {"k": k, "y": y} for x, (k, y) in self.exits.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


def _exit_witness(s: PartialSystem, x: str, n: int) -> tuple[int, str] | None:
    # smallest k, then smallest y, with alpha(y) = alpha^k(x) != ... and y != alpha^{k-1}(x)
    for k in range(1, n + 1):
        target = s.apply_n(x, k)
        on_orbit = s.apply_n(x, k - 1)
        others = [y for y in s.ordered(s.preimage(target, 1)) if y != on_orbit]
        if others:
            return k, others[0]
    return None


def is_topologically_free(s: PartialSystem, bound: int | None = None) -> FreedomReport:
    """Decide freedom and attach witnesses.

    The verdict for each periodic point uses preimage counts
    ``|alpha^{-k}(x)|``; the reported witness ``(k, y)`` is found
    separately from ``alpha(y) = alpha^k(x)``, ``y != alpha^{k-1}(x)``.
    """
    bound = len(s) if bound is None else bound
    violations = []
    exits = {}
    for n in range(1, bound + 1):
        for x in s.ordered(s.fixed_points(n)):
            has_exit = any(len(s.preimage(x, k)) > 1 for k in range(1, n + 1))
            wit = _exit_witness(s, x, n)
            assert has_exit == (wit is not None)
            if has_exit:
                exits.setdefault(x, wit)
            else:
                violations.append((n, x))
    exits = {x: exits[x] for x in s.ordered(exits)}
    return FreedomReport(not violations, tuple(violations), exits)


def _preimage_graph(s: PartialSystem) -> nx.DiGraph:
    # edge x -> y iff alpha(y) = x
    g = nx.DiGraph()
    g.add_nodes_from(s.points)
    g.add_edges_from((x, y) for y, x in s.alpha.items())
    return g


def graph_freedom(s: PartialSystem) -> bool:
    """Every simple loop of the preimage graph has an exit edge."""
    g = _preimage_graph(s)
    for c in nx.simple_cycles(g):
        m = len(c)
        if not any(w != c[(i + 1) % m] for i, v in enumerate(c) for w in g.successors(v)):
            return False
    return True


def interior_criterion(s: PartialSystem, n: int) -> bool:
    """True iff no ``x in Delta_{n-1}`` has ``alpha^{-(n-k)}(x) = {alpha^k(x)}`` for all ``k < n``."""
    if n < 1:
        raise ValueError("n must be positive")
    for x in s.domain_n(n - 1):
        if all(s.preimage(x, n - k) == {s.apply_n(x, k)} for k in range(n)):
            return False
    return True


def extension_fixed_points(s: PartialSystem, n: int, max_len: int | None = None) -> frozenset[ExtPoint]:
    """Points of the extension all of whose entries have period dividing ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    Fn = s.fixed_points(n)
    ext = build_extension(s, max_len)
    out = set()
    for p in ext.points:
        if all(x in Fn for x in p.prefix + p.cycle):
            # an infinite anti-orbit inside F_n can only step back by alpha^{n-1}
            assert p.cycle and all(
                p.head(n + 2)[i + 1] == s.apply_n(p.head(n + 2)[i], n - 1)
                for i in range(n + 1)
            )
            out.add(p)
    return frozenset(out)


def tilde_fixed_points(s: PartialSystem, n: int, max_len: int | None = None) -> frozenset[ExtPoint]:
    """Points ``p`` with ``tilde_alpha^n(p) = p``, straight from the definition."""
    ext = build_extension(s, max_len)
    out = set()
    for p in ext.points:
        q = p
        for _ in range(n):
            q = tilde_alpha(s, q)
            if q is None:
                break
        if q == p:
            out.add(p)
    return frozenset(out)


def extension_is_free(s: PartialSystem) -> bool:
    """Freedom of the shift on the extension, decided on the extension itself.

    The shift is injective there, so a periodic extension point violates
    freedom exactly when it is isolated. An anti-orbit through a cycle
    is isolated iff no other extension point shares its first ``|X| + 1``
    entries (agreement over a full period forces equality when the
    cycle has no entry).
    """
    horizon = len(s) + 1
    ext = build_extension(s, 3 * len(s) + 3)
    heads: dict[tuple, int] = {}
    for p in ext.points:
        if p.cycle or len(p.prefix) >= horizon:
            h = p.head(horizon)
            heads[h] = heads.get(h, 0) + 1
    for n in range(1, len(s) + 1):
        for p in tilde_fixed_points(s, n, ext.max_len):
            if heads[p.head(horizon)] == 1:
                return False
    return True


def extension_freedom_equivalence(s: PartialSystem) -> bool:
    return extension_is_free(s) == is_topologically_free(s).free
