"""Finite partial dynamical systems.

A system is a finite point set ``X`` with a partial self-map ``alpha``
defined on ``Delta_1`` (the key set of the mapping). ``X`` carries the
discrete topology, so every subset is clopen and the openness
assumptions on domains and images hold automatically.

Notation used throughout the package:

* ``domain_n(n)``   -- Delta_n, the points where alpha^n is defined
* ``image_n(n)``    -- Delta_{-n} = alpha^n(Delta_n)
* ``preimage(x, k)`` -- alpha^{-k}(x) as a set
* ``fixed_points(n)`` -- F_n = {x in Delta_n : alpha^n(x) = x}
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from .errors import DuplicatePoint, UnknownPoint, ValidationError

__all__ = ["PartialSystem", "Classification", "validate"]


@dataclass(frozen=True)
class Classification:
    surjective: bool
    injective: bool
    is_cycle: bool
    acyclic: bool


class PartialSystem:
    """An immutable finite partial dynamical system ``(X, alpha)``.

    Parameters
    ----------
    points : iterable of str
        Point names, in the order used for every sorted output.
    alpha : mapping str -> str
        The partial map. Its key set is ``Delta_1``.

    Examples
    --------
    >>> s = PartialSystem(["x0", "x1"], {"x1": "x0", "x0": "x0"})
    >>> sorted(s.preimage("x0", 1))
    ['x0', 'x1']
    """

    __slots__ = ("_points", "_alpha", "_index", "__dict__")

    def __init__(self, points: Iterable[str], alpha: Mapping[str, str]):
        pts = tuple(points)
        index: dict[str, int] = {}
        for i, p in enumerate(pts):
            if not isinstance(p, str) or not p:
                raise ValidationError(f"point names must be nonempty strings, got {p!r}")
            if p in index:
                raise DuplicatePoint(f"duplicate point {p!r}")
            index[p] = i
        amap = dict(alpha)
        for k, v in amap.items():
            if k not in index:
                raise UnknownPoint(f"alpha maps unknown point {k!r}")
            if v not in index:
                raise UnknownPoint(f"alpha({k!r}) = {v!r} is not a point")
        # keep alpha in point order so iteration is deterministic
        self._alpha = {p: amap[p] for p in pts if p in amap}
        self._points = pts
        self._index = index

    # -- basic accessors ---------------------------------------------------
    @property
    def points(self) -> tuple[str, ...]:
        return self._points

    @property
    def alpha(self) -> Mapping[str, str]:
        return dict(self._alpha)

    def __len__(self) -> int:
        return len(self._points)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, PartialSystem):
            return NotImplemented
        return self._points == other._points and self._alpha == other._alpha

    def __hash__(self):
        return hash((self._points, tuple(self._alpha.items())))

    def __repr__(self):
        return f"PartialSystem(points={list(self._points)!r}, alpha={self._alpha!r})"

    def index(self, x: str) -> int:
        self._check(x)
        return self._index[x]

    def ordered(self, xs: Iterable[str]) -> list[str]:
        """Sort point names by input order."""
        return sorted(xs, key=self._index.__getitem__)

    def _check(self, x):
        if x not in self._index:
            raise UnknownPoint(f"unknown point {x!r}")

    def to_dict(self) -> dict:
        return {"points": list(self._points), "alpha": dict(self._alpha)}

    @classmethod
    def from_dict(cls, raw: Mapping) -> "PartialSystem":
        return validate(raw)

    # -- the map and its iterates ------------------------------------------
    def __call__(self, x: str) -> str | None:
        self._check(x)
        return self._alpha.get(x)

    @cached_property
    def _preimages(self) -> dict[str, tuple[str, ...]]:
        pre: dict[str, list[str]] = {p: [] for p in self._points}
        for y, x in self._alpha.items():
            pre[x].append(y)
        return {x: tuple(ys) for x, ys in pre.items()}

    def apply_n(self, x: str, n: int) -> str | None:
        """``alpha^n(x)``, or ``None`` when ``x`` is outside ``Delta_n``."""
        self._check(x)
        if n < 0:
            raise ValueError("n must be nonnegative")
        seen: dict[str, int] = {}
        step = 0
        while step < n:
            if x in seen:
                # on a cycle: skip whole periods
                period = step - seen[x]
                remaining = (n - step) % period
                for _ in range(remaining):
                    x = self._alpha[x]
                return x
            seen[x] = step
            nxt = self._alpha.get(x)
            if nxt is None:
                return None
            x = nxt
            step += 1
        return x

    def _stable(self, n: int) -> int:
        # Delta_n and Delta_{-n} stabilize for n >= |X|
        if n < 0:
            raise ValueError("n must be nonnegative")
        return min(n, len(self._points))

    @cached_property
    def _domains(self) -> tuple[frozenset, ...]:
        out = [frozenset(self._points)]
        cur = out[0]
        for _ in range(len(self._points)):
            cur = frozenset(x for x in cur if self._alpha.get(x) in cur)
            out.append(cur)
        return tuple(out)

    @cached_property
    def _images(self) -> tuple[frozenset, ...]:
        out = [frozenset(self._points)]
        cur = out[0]
        for _ in range(len(self._points)):
            cur = frozenset(self._alpha[x] for x in cur if x in self._alpha)
            out.append(cur)
        return tuple(out)

    def domain_n(self, n: int) -> frozenset[str]:
        return self._domains[self._stable(n)]

    def image_n(self, n: int) -> frozenset[str]:
        return self._images[self._stable(n)]

    def preimage(self, x: str, k: int = 1) -> frozenset[str]:
        """``alpha^{-k}(x) = {y in Delta_k : alpha^k(y) = x}``."""
        self._check(x)
        if k < 1:
            raise ValueError("k must be positive")
        level = {x}
        for _ in range(k):
            level = {y for z in level for y in self._preimages[z]}
            if not level:
                break
        return frozenset(level)

    def preimage_set(self, xs: Iterable[str], k: int = 1) -> frozenset[str]:
        out: set[str] = set()
        for x in xs:
            out |= self.preimage(x, k)
        return frozenset(out)

    def image_set(self, xs: Iterable[str], n: int = 1) -> frozenset[str]:
        """``alpha^n(xs ∩ Delta_n)``."""
        out = set()
        for x in xs:
            y = self.apply_n(x, n)
            if y is not None:
                out.add(y)
        return frozenset(out)

    def fixed_points(self, n: int) -> frozenset[str]:
        if n < 1:
            raise ValueError("n must be positive")
        return frozenset(x for x in self.domain_n(n) if self.apply_n(x, n) == x)

    @cached_property
    def periodic_points(self) -> frozenset[str]:
        out: set[str] = set()
        for n in range(1, len(self._points) + 1):
            out |= self.fixed_points(n)
        return frozenset(out)

    def cycles(self) -> list[tuple[str, ...]]:
        """The periodic orbits, each listed forward from its least point."""
        seen: set[str] = set()
        out = []
        for x in self._points:
            if x in self.periodic_points and x not in seen:
                orbit = [x]
                y = self._alpha[x]
                while y != x:
                    orbit.append(y)
                    y = self._alpha[y]
                seen.update(orbit)
                out.append(tuple(orbit))
        return out

    def classify(self) -> Classification:
        n = len(self._points)
        surjective = self.image_n(1) == frozenset(self._points)
        injective = len(set(self._alpha.values())) == len(self._alpha)
        cycles = self.cycles()
        is_cycle = n > 0 and len(self._alpha) == n and len(cycles) == 1 and len(cycles[0]) == n
        return Classification(surjective, injective, is_cycle, not self.periodic_points)

    def subsystem_labels(self, prefix: str = "") -> dict[str, str]:
        return {p: prefix + p for p in self._points}


def validate(raw) -> PartialSystem:
    """Build a :class:`PartialSystem` from a JSON-like mapping.

    ``raw`` must have a ``"points"`` list and an ``"alpha"`` object; a
    ``PartialSystem`` is returned unchanged.
    """
    if isinstance(raw, PartialSystem):
        return raw
    if not isinstance(raw, Mapping):
        raise ValidationError("system must be an object with 'points' and 'alpha'")
    unknown = set(raw) - {"points", "alpha"}
    if unknown:
        raise ValidationError(f"unexpected keys {sorted(unknown)}")
    points = raw.get("points")
    alpha = raw.get("alpha", {})
    if not isinstance(points, list):
        raise ValidationError("'points' must be an array of strings")
    if not isinstance(alpha, Mapping):
        raise ValidationError("'alpha' must be an object")
    return PartialSystem(points, alpha)
