"""The reversible extension of a finite partial system.

Points of the extension are anti-orbits ``(x0, x1, x2, ...)`` with
``alpha(x_n) = x_{n-1}``. They come in two kinds:

* finite paths ``(x0, ..., xN)`` whose last entry has no preimage;
* infinite anti-orbits.

On a finite set every infinite anti-orbit runs entirely through periodic
points, and a periodic point has exactly one periodic preimage. So the
infinite part consists of one purely periodic anti-orbit per periodic
point. Such a point is stored as ``ExtPoint(prefix, cycle)`` where
``cycle`` is the repeating block in anti-orbit order, rotated to start
at its least point, and ``prefix`` is the offset before the first
occurrence of that rotation.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import islice

import networkx as nx
import numpy as np

from .core import PartialSystem
from .errors import InvalidPoint, NotInjective

__all__ = [
    "ExtPoint",
    "Cardinality",
    "ExtensionView",
    "canonicalize",
    "validate_point",
    "build_extension",
    "classify_cardinality",
    "digraph_path_cardinality",
    "walk_prefix_counts",
    "tilde_alpha",
    "tilde_alpha_inv",
    "phi",
    "phi_n",
    "sections",
    "reconstruct_member",
    "phi_bijective_check",
    "projective_limit_check",
    "extension_as_system",
    "point_label",
    "to_dot",
    "default_max_len",
]


@dataclass(frozen=True, order=True)
class ExtPoint:
    prefix: tuple[str, ...]
    cycle: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.prefix and not self.cycle:
            raise InvalidPoint("an extension point needs at least one entry")

    @property
    def kind(self) -> str:
        return "EventuallyPeriodic" if self.cycle else "FinitePath"

    @property
    def is_finite(self) -> bool:
        return not self.cycle

    def __len__(self):
        # number of entries; infinite points have no length
        if self.cycle:
            raise TypeError("eventually periodic point has infinitely many entries")
        return len(self.prefix)

    def entries(self) -> Iterable[str]:
        yield from self.prefix
        if self.cycle:
            while True:
                yield from self.cycle

    def head(self, k: int) -> tuple[str, ...]:
        return tuple(islice(self.entries(), k))

    def __repr__(self):
        if self.cycle:
            return f"ExtPoint({'.'.join(self.prefix)}|{'.'.join(self.cycle)})"
        return f"ExtPoint({'.'.join(self.prefix)})"


def _least_rotation(cycle: Sequence[str], key) -> tuple[str, ...]:
    n = len(cycle)
    rots = [tuple(cycle[i:]) + tuple(cycle[:i]) for i in range(n)]
    return min(rots, key=lambda r: [key(x) for x in r])


def canonicalize(prefix: Sequence[str], cycle: Sequence[str], key=None) -> ExtPoint:
    """Normal form of the anti-orbit ``prefix + cycle + cycle + ...``.

    ``key`` orders points (defaults to string order); pass
    ``PartialSystem.index`` to use the system's point order.
    """
    prefix, cycle = tuple(prefix), tuple(cycle)
    if not cycle:
        return ExtPoint(prefix)
    key = key or (lambda x: x)
    # shrink the cycle to its primitive period
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle == cycle[:d] * (n // d):
            cycle = cycle[:d]
            break
    # shortest pre-period: absorb the last prefix entry into the cycle
    # whenever it matches the cycle's last entry
    while prefix and prefix[-1] == cycle[-1]:
        prefix = prefix[:-1]
        cycle = cycle[-1:] + cycle[:-1]
    d = len(cycle)
    rot = _least_rotation(cycle, key)
    for j in range(d):
        if cycle[j:] + cycle[:j] == rot:
            return ExtPoint(prefix + cycle[:j], rot)
    raise AssertionError("unreachable")  # pragma: no cover


def validate_point(s: PartialSystem, p: ExtPoint) -> ExtPoint:
    """Raise :class:`InvalidPoint` unless ``p`` is a canonical anti-orbit of ``s``."""
    for x in p.prefix + p.cycle:
        if x not in s:
            raise InvalidPoint(f"{p!r}: unknown point {x!r}")
    if p.cycle:
        seq = p.prefix + p.cycle + p.cycle[:1]
    else:
        seq = p.prefix
    for a, b in zip(seq, seq[1:]):
        if s(b) != a:
            raise InvalidPoint(f"{p!r}: alpha({b}) != {a}")
    if not p.cycle:
        if p.prefix[-1] in s.image_n(1):
            raise InvalidPoint(f"{p!r}: last entry {p.prefix[-1]} has a preimage")
    else:
        # wrap-around inside the cycle: alpha(c_0) = c_{-1}
        if s(p.cycle[0]) != p.cycle[-1]:
            raise InvalidPoint(f"{p!r}: cycle does not close")
        if canonicalize(p.prefix, p.cycle, s.index) != p:
            raise InvalidPoint(f"{p!r}: not in canonical form")
    return p


# -- cardinality ---------------------------------------------------------------


@dataclass(frozen=True)
class Cardinality:
    kind: str  # "Finite" | "CountablyInfinite" | "Uncountable"
    count: int | None = None

    def __str__(self):
        return f"Finite({self.count})" if self.kind == "Finite" else self.kind

    @property
    def is_finite(self) -> bool:
        return self.kind == "Finite"


def _leaves(s: PartialSystem) -> list[str]:
    image = s.image_n(1)
    return [x for x in s.points if x not in image]


def _forward_depth(s: PartialSystem, y: str) -> int | None:
    """Number of times alpha can be applied to y, or None if unbounded."""
    k = 0
    x = y
    for _ in range(len(s) + 1):
        x = s(x)
        if x is None:
            return k
        k += 1
    return None


def classify_cardinality(s: PartialSystem) -> Cardinality:
    """Exact size of the extension of ``s``.

    The extension is infinite iff some leaf (a point with no preimage)
    has an unbounded forward orbit, i.e. some cycle has an entry. It is
    never uncountable for a partial map; the general digraph rule lives
    in :func:`digraph_path_cardinality`.
    """
    total = len(s.periodic_points)
    for y in _leaves(s):
        depth = _forward_depth(s, y)
        if depth is None:
            return Cardinality("CountablyInfinite")
        total += depth + 1
    return Cardinality("Finite", total)


def digraph_path_cardinality(succ: dict) -> Cardinality:
    """Cardinality of the set of maximal walks in a finite digraph.

    A maximal walk starts anywhere and either ends at a sink or runs
    forever. ``succ`` maps each vertex to an iterable of successors.

    * Uncountable iff some strongly connected component carries more
      than one cycle (it is nontrivial and not a simple cycle).
    * Countably infinite iff every nontrivial component is a simple
      cycle and some cycle has an edge leaving it.
    * Finite otherwise.
    """
    succ = {v: list(dict.fromkeys(ws)) for v, ws in succ.items()}
    g = nx.DiGraph()
    g.add_nodes_from(succ)
    g.add_edges_from((v, w) for v, ws in succ.items() for w in ws)
    comps = [sorted(c, key=list(succ).index) for c in nx.strongly_connected_components(g)]
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    cyclic = []
    for i, comp in enumerate(comps):
        members = set(comp)
        internal = sum(1 for v in comp for w in succ[v] if w in members)
        if internal == 0:
            continue
        if internal > len(comp):
            return Cardinality("Uncountable")
        cyclic.append(i)
    for i in cyclic:
        for v in comps[i]:
            if any(comp_of[w] != i for w in succ[v]):
                return Cardinality("CountablyInfinite")
    count = walk_prefix_counts(succ, [len(succ) + 1])[0]
    return Cardinality("Finite", int(count))


def walk_prefix_counts(succ: dict, lengths: Sequence[int]) -> list[int]:
    """Number of distinct maximal walks truncated at each length ``L``.

    Counts walks of exactly ``L`` vertices plus maximal walks (ending at
    a sink) with fewer vertices. Finite path spaces give a constant,
    countable ones polynomial growth, uncountable ones exponential growth.
    Exact integer arithmetic.
    """
    verts = list(succ)
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    A = np.zeros((n, n), dtype=object)
    A[:, :] = 0
    for v, ws in succ.items():
        for w in set(ws):
            A[pos[v], pos[w]] = 1
    sink = np.array([0 if succ[v] else 1 for v in verts], dtype=object)
    ends = np.array([1] * n, dtype=object)  # walks ending at each vertex
    out = []
    cut = 0  # maximal walks that already stopped
    L = 1
    targets = sorted(set(lengths))
    results = {}
    for target in targets:
        while L < target:
            cut += int(ends.dot(sink))
            ends = ends.dot(A)
            L += 1
        results[target] = cut + int(sum(ends))
    for L in lengths:
        out.append(results[L])
    return out


# -- the extension itself ------------------------------------------------------


def default_max_len(s: PartialSystem) -> int:
    return 2 * len(s) + 2


@dataclass(frozen=True)
class ExtensionView:
    system: PartialSystem
    finite_paths: tuple[ExtPoint, ...]
    ep_points: tuple[ExtPoint, ...]
    cardinality: Cardinality
    max_len: int
    complete: bool = field(default=True)

    @property
    def points(self) -> tuple[ExtPoint, ...]:
        return self.finite_paths + self.ep_points

    def __len__(self):
        return len(self.finite_paths) + len(self.ep_points)

    def __iter__(self):
        return iter(self.points)


def _ep_point(s: PartialSystem, x: str) -> ExtPoint:
    # anti-orbit through periodic x: x, then its cycle predecessors
    seq = [x]
    y = s.apply_n(x, 1)
    back = []
    while y != x:
        back.append(y)
        y = s(y)
    # back holds alpha(x), alpha^2(x), ...; anti-orbit order is reversed
    seq += back[::-1]
    return canonicalize((), tuple(seq), s.index)


def build_extension(s: PartialSystem, max_len: int | None = None) -> ExtensionView:
    """Enumerate the extension of ``s``.

    Finite paths are listed leaf by leaf (leaves in point order), longest
    first, and truncated at ``max_len`` entries when infinitely many
    exist. Periodic anti-orbits follow in the order of their ``x0``.
    """
    if max_len is None:
        max_len = default_max_len(s)
    if max_len < 1:
        raise ValueError("max_len must be positive")
    card = classify_cardinality(s)
    paths = []
    for y in _leaves(s):
        chain = [y]
        x = s(y)
        while x is not None and len(chain) < max_len:
            chain.append(x)
            x = s(x)
        # chain = (y, alpha y, alpha^2 y, ...); paths are its reversed suffixes
        rev = chain[::-1]
        for i in range(len(rev)):
            paths.append(ExtPoint(tuple(rev[i:])))
    eps = [_ep_point(s, x) for x in s.points if x in s.periodic_points]
    return ExtensionView(s, tuple(paths), tuple(eps), card, max_len, card.is_finite)


# -- maps on the extension -----------------------------------------------------


def tilde_alpha(s: PartialSystem, p: ExtPoint) -> ExtPoint | None:
    """``(x0, x1, ...) -> (alpha(x0), x0, x1, ...)``; ``None`` off the domain."""
    validate_point(s, p)
    x0 = p.head(1)[0]
    y = s(x0)
    if y is None:
        return None
    if p.cycle:
        return canonicalize((y,) + p.prefix, p.cycle, s.index)
    return ExtPoint((y,) + p.prefix)


def tilde_alpha_inv(s: PartialSystem, p: ExtPoint) -> ExtPoint | None:
    """Drop the head; ``None`` for a one-entry path."""
    validate_point(s, p)
    if p.cycle:
        if p.prefix:
            return canonicalize(p.prefix[1:], p.cycle, s.index)
        return canonicalize((), p.cycle[1:] + p.cycle[:1], s.index)
    if len(p.prefix) == 1:
        return None
    return ExtPoint(p.prefix[1:])


def phi(p: ExtPoint) -> str:
    return p.head(1)[0]


def phi_n(p: ExtPoint, n: int) -> str | None:
    """The entry ``x_n``, or ``None`` when the path is shorter."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < len(p.prefix):
        return p.prefix[n]
    if not p.cycle:
        return None
    return p.cycle[(n - len(p.prefix)) % len(p.cycle)]


def sections(s: PartialSystem, U: Iterable[ExtPoint], n: int) -> frozenset[str]:
    out = set()
    for p in U:
        x = phi_n(p, n)
        if x is not None:
            out.add(x)
    return frozenset(out)


def reconstruct_member(s: PartialSystem, section_list: Sequence[Iterable[str]], p: ExtPoint) -> bool:
    """Does ``p`` lie in the product of the given sections?

    Entries past the last section are only required to lie in the
    matching domain ``Delta_n``.
    """
    secs = [frozenset(sec) for sec in section_list]
    K = len(secs) - 1
    horizon = len(p.prefix) if not p.cycle else len(p.prefix) + len(p.cycle) + K + 1
    for n in range(max(horizon, K + 1)):
        x = phi_n(p, n)
        if x is None:
            break
        if n <= K:
            if x not in secs[n]:
                return False
        elif x not in s.domain_n(n):
            return False
    return True


def phi_bijective_check(s: PartialSystem, max_len: int | None = None) -> bool:
    """For injective ``alpha``: is the projection to ``x0`` a bijection onto X?"""
    if not s.classify().injective:
        raise NotInjective("alpha is not injective")
    ext = build_extension(s, max_len)
    heads = [phi(p) for p in ext.points]
    return len(heads) == len(set(heads)) and set(heads) == set(s.points)


def projective_limit_check(s: PartialSystem, max_len: int | None = None) -> bool:
    """When ``alpha`` is onto, every anti-orbit must be infinite."""
    if not s.classify().surjective:
        return True
    return not build_extension(s, max_len).finite_paths


# -- export --------------------------------------------------------------------


def point_label(p: ExtPoint) -> str:
    if p.cycle:
        return ",".join(p.prefix) + "|" + ",".join(p.cycle)
    return ",".join(p.prefix)


def extension_as_system(ext: ExtensionView) -> tuple[PartialSystem, dict[str, ExtPoint]]:
    """The pair (extension, shift) as a :class:`PartialSystem` on labels.

    Only meaningful for complete (finite) extensions.
    """
    s = ext.system
    pts = list(ext.points)
    labels = {point_label(p): p for p in pts}
    known = set(pts)
    alpha = {}
    for p in pts:
        q = tilde_alpha(s, p)
        if q is not None and q in known:
            alpha[point_label(p)] = point_label(q)
    return PartialSystem(list(labels), alpha), labels


def to_dot(ext: ExtensionView) -> str:
    s = ext.system
    pts = list(ext.points)
    known = set(pts)
    ids = {p: f"n{i}" for i, p in enumerate(pts)}
    lines = ["digraph extension {", "  rankdir=RL;"]
    for p in pts:
        shape = "doublecircle" if p.cycle else "circle"
        lines.append(f'  {ids[p]} [label="{point_label(p)}", shape={shape}];')
    for p in pts:
        q = tilde_alpha(s, p)
        if q is not None and q in known:
            lines.append(f"  {ids[p]} -> {ids[q]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
