"""Invariant subsets of a partial system.

A set ``V`` is invariant when ``alpha^n(V ∩ Delta_n) = V ∩ Delta_{-n}``
for every ``n``. Both sides stabilize once ``n >= |X|``, so only
``n = 0..|X|`` is checked.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

from .core import PartialSystem
from .errors import HasPeriodicPoints, NotInvariant, TooLarge, UnknownPoint
from .extension import (
    ExtPoint,
    build_extension,
    extension_as_system,
    point_label,
)

__all__ = [
    "ENUM_CAP",
    "InvariantFamily",
    "Lift",
    "is_invariant",
    "predicate_ii",
    "predicate_iii",
    "predicate_iv",
    "enumerate_invariant",
    "is_minimal",
    "lift_invariant",
    "lattice_bijection_check",
    "delta_ideal_invariance",
]

ENUM_CAP = 20


def _as_set(s: PartialSystem, V: Iterable[str]) -> frozenset[str]:
    V = frozenset(V)
    for v in V:
        if v not in s:
            raise UnknownPoint(f"unknown point {v!r}")
    return V


def is_invariant(s: PartialSystem, V: Iterable[str]) -> bool:
    V = _as_set(s, V)
    for n in range(len(s) + 1):
        if s.image_set(V & s.domain_n(n), n) != V & s.image_n(n):
            return False
    return True


def predicate_iv(s: PartialSystem, V: Iterable[str]) -> bool:
    V = _as_set(s, V)
    return s.image_set(V & s.domain_n(1), 1) == V & s.image_n(1)


def predicate_iii(s: PartialSystem, V: Iterable[str]) -> bool:
    V = _as_set(s, V)
    return s.image_set(V & s.domain_n(1), 1) <= V and s.preimage_set(V & s.image_n(1), 1) <= V


def predicate_ii(s: PartialSystem, V: Iterable[str]) -> bool:
    V = _as_set(s, V)
    for n in range(1, len(s) + 1):
        if not s.image_set(V & s.domain_n(n), n) <= V:
            return False
        if not s.preimage_set(V & s.image_n(n), n) <= V:
            return False
    return True


@dataclass(frozen=True)
class InvariantFamily:
    sets: tuple[frozenset[str], ...]
    intersection_closed: bool
    union_closed: bool

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, V):
        return frozenset(V) in set(self.sets)


def _invariant_masks(s: PartialSystem) -> np.ndarray:
    """Bitmasks of all invariant subsets, vectorized over the power set."""
    n = len(s)
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    idx = {p: i for i, p in enumerate(s.points)}
    for k in range(1, n + 1):
        img = np.zeros_like(masks)
        for x in s.domain_n(k):
            bit = (masks >> idx[x]) & 1
            img |= bit << idx[s.apply_n(x, k)]
        target = sum(1 << idx[y] for y in s.image_n(k))
        ok &= img == (masks & target)
    return masks[ok]


def _sort_key(s: PartialSystem):
    return lambda V: (len(V), sorted(s.index(v) for v in V))


def enumerate_invariant(s: PartialSystem, cap: int = ENUM_CAP) -> InvariantFamily:
    """Every invariant subset, ordered by size and then by point order."""
    if len(s) > cap:
        raise TooLarge(f"|X| = {len(s)} exceeds the enumeration cap {cap}")
    pts = s.points
    sets = [
        frozenset(pts[i] for i in range(len(pts)) if (int(m) >> i) & 1)
        for m in _invariant_masks(s)
    ]
    sets.sort(key=_sort_key(s))
    fam = set(sets)
    inter = all(a & b in fam for a in sets for b in sets)
    union = all(a | b in fam for a in sets for b in sets)
    return InvariantFamily(tuple(sets), inter, union)


def is_minimal(s: PartialSystem, cap: int = ENUM_CAP) -> bool:
    fam = enumerate_invariant(s, cap)
    return set(fam.sets) == {frozenset(), frozenset(s.points)}


@dataclass(frozen=True)
class Lift:
    """The lifted set: points of the extension with every entry in ``V``."""

    system: PartialSystem
    V: frozenset[str]
    members: tuple[ExtPoint, ...]
    complete: bool

    def __contains__(self, p: ExtPoint) -> bool:
        return all(x in self.V for x in p.prefix + p.cycle)


def _has_backward_path(s: PartialSystem, v: str, V: frozenset[str]) -> bool:
    # a maximal anti-orbit from v inside V: reach a point with no preimage
    # at all, or a periodic point (its cycle then lies in V)
    stack, seen = [v], {v}
    while stack:
        x = stack.pop()
        pre = s.preimage(x, 1)
        if not pre or x in s.periodic_points:
            return True
        for y in pre:
            if y in V and y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def lift_invariant(s: PartialSystem, V: Iterable[str], max_len: int | None = None) -> Lift:
    V = _as_set(s, V)
    if not is_invariant(s, V):
        raise NotInvariant(f"{s.ordered(V)} is not invariant")
    ext = build_extension(s, max_len)
    lift = Lift(s, V, (), ext.complete)
    members = tuple(p for p in ext.points if p in lift)
    lift = Lift(s, V, members, ext.complete)
    # the projection of the lift must be all of V
    for v in V:
        if not _has_backward_path(s, v, V):
            raise AssertionError(f"no anti-orbit of {v} inside V")  # pragma: no cover
    return lift


def lattice_bijection_check(s: PartialSystem, cap: int = ENUM_CAP) -> bool:
    """Is ``V -> lift(V)`` an order isomorphism onto the invariant sets of the extension?

    Both families are enumerated independently by brute force.
    """
    if s.periodic_points:
        raise HasPeriodicPoints("the extension is finite only for systems without periodic points")
    ext = build_extension(s)
    if len(ext) > cap:
        raise TooLarge(f"|extension| = {len(ext)} exceeds the enumeration cap {cap}")
    es, _ = extension_as_system(ext)
    down = enumerate_invariant(s, cap)
    up = set(enumerate_invariant(es, cap).sets)
    lifted = {}
    for V in down:
        lifted[V] = frozenset(point_label(p) for p in lift_invariant(s, V).members)
    if set(lifted.values()) != up or len(set(lifted.values())) != len(lifted):
        return False
    for V in down:
        for W in down:
            if (V <= W) != (lifted[V] <= lifted[W]):
                return False
    return True


def _shift_matrix(s: PartialSystem, n: int) -> np.ndarray:
    # D[x, y] = 1 iff x in Delta_n and alpha^n(x) = y; (D a)(x) = a(alpha^n x)
    D = np.zeros((len(s), len(s)))
    for x in s.domain_n(n):
        D[s.index(x), s.index(s.apply_n(x, n))] = 1.0
    return D


def _same_kernel(M1: np.ndarray, M2: np.ndarray) -> bool:
    k1, k2 = null_space(M1), null_space(M2)
    if k1.shape[1] != k2.shape[1]:
        return False
    if k1.shape[1] == 0:
        return True
    return np.linalg.matrix_rank(np.hstack([k1, k2])) == k1.shape[1]


def delta_ideal_invariance(s: PartialSystem, V: Iterable[str]) -> bool:
    """Is the ideal of functions vanishing on ``V`` invariant under the endomorphism?

    For each ``n`` and every ``a`` supported on ``Delta_{-n}`` the test is
    ``a in I  <=>  delta^n(a) in I``, i.e. restriction to ``V`` and
    restriction of ``delta^n a`` to ``V`` have the same kernel.
    """
    V = _as_set(s, V)
    if not V:
        return True
    P = np.zeros((len(V), len(s)))
    for r, v in enumerate(s.ordered(V)):
        P[r, s.index(v)] = 1.0
    for n in range(len(s) + 1):
        cols = [s.index(y) for y in s.ordered(s.image_n(n))]
        if not cols:
            continue
        W = np.eye(len(s))[:, cols]
        if not _same_kernel(P @ W, P @ _shift_matrix(s, n) @ W):
            return False
    return True
