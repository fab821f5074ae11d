"""Named example systems and random generators."""
from __future__ import annotations

import numpy as np

from .core import PartialSystem

__all__ = [
    "simplexample",
    "simplexample_prime",
    "loop_system",
    "alfainvar_system",
    "cycle",
    "cycle_with_entry",
    "chain",
    "finite_dimensional_family",
    "empty_system",
    "random_system",
    "random_acyclic_system",
]


def simplexample() -> PartialSystem:
    # x2 and y2 both feed x1, which feeds x0
    return PartialSystem(
        ["x0", "x1", "x2", "y2"], {"x1": "x0", "x2": "x1", "y2": "x1"}
    )


def simplexample_prime() -> PartialSystem:
    # two separate branches joined only at x0'
    return PartialSystem(
        ["x0'", "x1'", "x2'", "y1'", "y2'"],
        {"x1'": "x0'", "y1'": "x0'", "x2'": "x1'", "y2'": "y1'"},
    )


def loop_system() -> PartialSystem:
    return PartialSystem(["x0", "x1"], {"x0": "x0", "x1": "x0"})


def alfainvar_system() -> PartialSystem:
    return PartialSystem(
        ["x0", "x1", "x2", "y2", "y3"],
        {"x1": "x0", "x2": "x1", "y2": "x1", "y3": "y2"},
    )


def cycle(n: int) -> PartialSystem:
    """``x0 -> x1 -> ... -> x_{n-1} -> x0``."""
    if n < 1:
        raise ValueError("cycle length must be positive")
    pts = [f"x{i}" for i in range(n)]
    return PartialSystem(pts, {pts[i]: pts[(i + 1) % n] for i in range(n)})


def cycle_with_entry(n: int) -> PartialSystem:
    """An n-cycle plus one extra point ``y`` with ``alpha(y) = x0``."""
    base = cycle(n)
    alpha = base.alpha
    alpha["y"] = "x0"
    return PartialSystem(list(base.points) + ["y"], alpha)


def chain(n: int) -> PartialSystem:
    """``x_{n-1} -> ... -> x1 -> x0``, an injective acyclic system."""
    pts = [f"x{i}" for i in range(n)]
    return PartialSystem(pts, {pts[i]: pts[i - 1] for i in range(1, n)})


def empty_system(k: int) -> PartialSystem:
    return PartialSystem([f"x{i}" for i in range(k)], {})


def finite_dimensional_family(sizes, ones: int = 0) -> PartialSystem:
    """The smallest system whose covariance algebra is a sum of full matrix algebras.

    ``sizes`` lists the block sizes ``n_1 <= ... <= n_k`` (all > 1) and
    ``ones`` adds that many one-point blocks. Points are
    ``x1..x_{n_k - 1}`` on a spine and one leaf ``y_{n_m}`` per block.
    """
    sizes = sorted(int(m) for m in sizes)
    if any(m < 2 for m in sizes):
        raise ValueError("block sizes must be at least 2; use `ones` for M_1 blocks")
    if len(set(sizes)) != len(sizes):
        raise ValueError("block sizes must be distinct (leaf names would collide)")
    top = sizes[-1] if sizes else 1
    pts = [f"x{m}" for m in range(1, top)]
    alpha = {f"x{m}": f"x{m - 1}" for m in range(2, top)}
    for m in sizes:
        leaf = f"y{m}"
        pts.append(leaf)
        if m > 1:
            alpha[leaf] = f"x{m - 1}"
    pts += [f"z{i}" for i in range(ones)]
    return PartialSystem(pts, alpha)


def random_system(rng: np.random.Generator, n: int, p_defined: float = 0.75) -> PartialSystem:
    """Uniformly random partial map on ``n`` points."""
    pts = [f"p{i}" for i in range(n)]
    alpha = {}
    for i in range(n):
        if rng.random() < p_defined:
            alpha[pts[i]] = pts[int(rng.integers(n))]
    return PartialSystem(pts, alpha)


def random_acyclic_system(rng: np.random.Generator, n: int, p_defined: float = 0.75) -> PartialSystem:
    """Random partial map sending each point to a strictly earlier one."""
    pts = [f"p{i}" for i in range(n)]
    alpha = {}
    for i in range(1, n):
        if rng.random() < p_defined:
            alpha[pts[i]] = pts[int(rng.integers(i))]
    return PartialSystem(pts, alpha)
