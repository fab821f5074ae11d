"""Independent brute-force oracles and hypothesis strategies shared by the tests.

Nothing here calls into the library's algorithms; the oracles work from
the raw ``alpha`` dictionary so they can be compared against it.
"""
from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from covalg.core import PartialSystem


# -- strategies ----------------------------------------------------------------


@st.composite
def systems(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    pts = [f"p{i}" for i in range(n)]
    targets = draw(st.lists(st.one_of(st.none(), st.integers(0, n - 1)), min_size=n, max_size=n))
    alpha = {pts[i]: pts[t] for i, t in enumerate(targets) if t is not None}
    return PartialSystem(pts, alpha)


@st.composite
def acyclic_systems(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    pts = [f"p{i}" for i in range(n)]
    alpha = {}
    for i in range(1, n):
        t = draw(st.one_of(st.none(), st.integers(0, i - 1)))
        if t is not None:
            alpha[pts[i]] = pts[t]
    # shuffle names so point order is not the topological order
    perm = draw(st.permutations(range(n)))
    rename = {pts[i]: f"q{perm[i]}" for i in range(n)}
    order = sorted(rename.values(), key=lambda q: int(q[1:]))
    return PartialSystem(order, {rename[k]: rename[v] for k, v in alpha.items()})


# -- oracles on the raw map ----------------------------------------------------


def iterate(alpha: dict, x, n: int):
    for _ in range(n):
        if x not in alpha:
            return None
        x = alpha[x]
    return x


def brute_domain(s: PartialSystem, n: int) -> set:
    a = s.alpha
    return {x for x in s.points if iterate(a, x, n) is not None}


def brute_image(s: PartialSystem, n: int) -> set:
    a = s.alpha
    return {iterate(a, x, n) for x in s.points if iterate(a, x, n) is not None}


def brute_preimage(s: PartialSystem, x, k: int) -> set:
    a = s.alpha
    return {y for y in s.points if iterate(a, y, k) == x}


def brute_anti_orbits(s: PartialSystem, L: int) -> list[tuple]:
    """Every anti-orbit segment (x0..x_{m-1}) with m <= L, grown one entry at a time."""
    a = s.alpha
    out = []
    level = [(x,) for x in s.points]
    for _ in range(L):
        out.extend(level)
        level = [seq + (y,) for seq in level for y in s.points if a.get(y) == seq[-1]]
    return out


def brute_finite_paths(s: PartialSystem, L: int) -> set[tuple]:
    """Anti-orbit segments of length <= L whose last entry has no preimage."""
    image = set(s.alpha.values())
    return {seq for seq in brute_anti_orbits(s, L) if seq[-1] not in image}


def brute_is_invariant(s: PartialSystem, V) -> bool:
    a = s.alpha
    V = set(V)
    for n in range(2 * len(s) + 2):
        dom = brute_domain(s, n)
        img = brute_image(s, n)
        if {iterate(a, x, n) for x in V & dom} != V & img:
            return False
    return True


def subsets(points):
    pts = list(points)
    for mask in range(1 << len(pts)):
        yield frozenset(pts[i] for i in range(len(pts)) if mask >> i & 1)


def brute_free(s: PartialSystem) -> bool:
    """Freedom straight from preimage counts, periods scanned to 2|X|."""
    for n in range(1, 2 * len(s) + 1):
        for x in s.points:
            if iterate(s.alpha, x, n) == x:
                if not any(len(brute_preimage(s, x, k)) > 1 for k in range(1, n + 1)):
                    return False
    return True


def growth_class(succ: dict) -> str:
    """Classify walk-prefix growth: constant, polynomial or exponential.

    Counts maximal walks truncated at length L by explicit enumeration
    of walks for moderate L, then compares the counts at two window
    sizes.
    """
    def count(L):
        total = 0
        frontier = [(v,) for v in succ]
        for step in range(1, L + 1):
            nxt = []
            for w in frontier:
                ws = succ[w[-1]]
                if not ws or step == L:
                    total += 1
                else:
                    nxt.extend(w + (u,) for u in ws)
            frontier = nxt
        return total

    n = len(succ)
    c1, c2 = count(2 * n + 2), count(4 * n + 4)
    if c1 == c2:
        return "Finite"
    # polynomial growth of degree <= n at most doubles n times when L doubles
    if c2 > c1 * 2 ** (n + 2):
        return "Uncountable"
    return "CountablyInfinite"


def preimage_graph(s: PartialSystem) -> dict:
    succ = {x: [] for x in s.points}
    for y, x in s.alpha.items():
        succ[x].append(y)
    return succ


def triple_product_expansion(s, a, b, c, n: int):
    """Entry n of a*b*c written out as the symmetric double sum."""
    def d(x, k, m):
        # delta^k of the m-th term, composed by hand from the raw map
        f = x.term(m)
        out = np.array([0 * f[0]] * len(s), dtype=f.dtype)
        for i, p in enumerate(s.points):
            q = iterate(s.alpha, p, k)
            if q is not None:
                out[i] = f[s.points.index(q)]
        return out

    out = 0
    for k in range(n + 1):
        for j in range(n + 1):
            out = out + a.term(n) * d(b, k, n - k) * d(c, j, n - j)
    # b_n carries the strictly older a-terms (k >= 1) and all c-terms (j >= 0)
    for k in range(1, n + 1):
        for j in range(n + 1):
            out = out + b.term(n) * d(a, k, n - k) * d(c, j, n - j)
    for k in range(1, n + 1):
        for j in range(1, n + 1):
            out = out + c.term(n) * d(a, k, n - k) * d(b, j, n - j)
    return out


def rng(seed=0):
    return np.random.default_rng(seed)
