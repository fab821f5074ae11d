"""Topological Markov shifts given by 0/1 adjacency matrices.

Symbols are numbered ``1..n`` in every public result; ``0`` is the
extra symbol introduced by :func:`augment`.
"""
from __future__ import annotations

from itertools import product

import networkx as nx
import numpy as np

from .errors import BadEntry, NotSquare, ValidationError, ZeroRow

__all__ = [
    "validate_matrix",
    "augment",
    "words",
    "embed_check",
    "markov_freedom",
    "parse_matrix",
    "format_matrix",
    "induced_system",
]


def validate_matrix(raw) -> np.ndarray:
    """Return ``raw`` as an ``int8`` array after checking shape and entries."""
    try:
        rows = [list(r) for r in raw]
    except TypeError as exc:
        raise NotSquare("matrix must be a list of rows") from exc
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotSquare(f"matrix is not square ({n} rows)")
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if isinstance(v, bool) or v not in (0, 1):
                raise BadEntry(f"entry ({i + 1},{j + 1}) = {v!r} is not 0 or 1")
    A = np.array(rows, dtype=np.int8)
    for i in range(n):
        if not A[i].any():
            raise ZeroRow(f"row {i + 1} is zero")
    return A


def augment(A) -> np.ndarray:
    """The ``(n+1) x (n+1)`` matrix with a leading symbol 0.

    Row 0 has a 1 at column 0 and at every column ``j`` whose column in
    ``A`` is zero; column 0 is otherwise empty.
    """
    A = validate_matrix(A)
    n = A.shape[0]
    out = np.zeros((n + 1, n + 1), dtype=np.int8)
    out[1:, 1:] = A
    out[0, 0] = 1
    out[0, 1:] = ~A.any(axis=0)
    return out


def _words0(A: np.ndarray, L: int) -> list[tuple[int, ...]]:
    # 0-based symbols, lexicographic
    n = A.shape[0]
    cur = [(i,) for i in range(n)]
    for _ in range(L - 1):
        cur = [w + (j,) for w in cur for j in range(n) if A[w[-1], j]]
    return cur


def words(A, L: int) -> set[tuple[int, ...]]:
    """All admissible words of length ``L``, symbols ``1..n``."""
    if L < 1:
        raise ValueError("L must be positive")
    A = validate_matrix(A)
    return {tuple(i + 1 for i in w) for w in _words0(A, L)}


def embed_check(A, L: int, a_prime=None) -> bool:
    """Check the word-level shape of the embedding of the extension into the A' shift.

    (a) ``A'``-words free of ``0`` are exactly the ``A``-words;
    (b) in an ``A'``-word, a transition ``0 -> s`` with ``s != 0`` only
        happens when column ``s`` of ``A`` is zero, and no nonzero
        symbol is ever followed by ``0``.

    ``a_prime`` overrides the augmented matrix (for mutation tests).
    """
    if L < 2:
        raise ValueError("L must be at least 2")
    A = validate_matrix(A)
    Ap = augment(A) if a_prime is None else np.asarray(a_prime, dtype=np.int8)
    n = A.shape[0]
    if Ap.shape != (n + 1, n + 1):
        return False
    zero_col = ~A.any(axis=0)
    aw = set(_words0(A, L))
    # A'-words indexed 0..n; shift nonzero symbols down to compare with A
    apw = _words0(Ap, L)
    nonzero = {tuple(x - 1 for x in w) for w in apw if 0 not in w}
    if nonzero != aw:
        return False
    for w in apw:
        for a, b in zip(w, w[1:]):
            if a == 0 and b != 0 and not zero_col[b - 1]:
                return False
            if a != 0 and b == 0:
                return False
    return True


def _graph(A: np.ndarray) -> nx.DiGraph:
    g = nx.DiGraph()
    n = A.shape[0]
    g.add_nodes_from(range(1, n + 1))
    for i, j in zip(*np.nonzero(A)):
        g.add_edge(int(i) + 1, int(j) + 1)
    return g


def _canonical_circuit(c: list[int]) -> tuple[int, ...]:
    k = c.index(min(c))
    return tuple(c[k:] + c[:k])


def markov_freedom(A) -> tuple[bool, list[tuple[int, ...]]]:
    """Is the one-sided shift topologically free?

    Free iff every simple circuit of the graph of ``A`` has an exit (a
    vertex with an out-edge other than its circuit successor) or an
    entry (a vertex with an in-edge other than its circuit predecessor).
    Returns the verdict and the circuits lacking both, 1-based, each
    rotated to start at its least vertex, sorted.
    """
    A = validate_matrix(A)
    g = _graph(A)
    bad = []
    for c in nx.simple_cycles(g):
        m = len(c)
        has_exit = any(
            w != c[(i + 1) % m] for i, v in enumerate(c) for w in g.successors(v)
        )
        has_entry = any(
            u != c[(i - 1) % m] for i, v in enumerate(c) for u in g.predecessors(v)
        )
        if not (has_exit or has_entry):
            bad.append(_canonical_circuit(c))
    bad.sort()
    return not bad, bad


def parse_matrix(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        row = []
        for tok in line.split():
            if tok not in ("0", "1"):
                raise BadEntry(f"line {lineno}: entry {tok!r} is not 0 or 1")
            row.append(int(tok))
        rows.append(row)
    if not rows:
        raise ValidationError("empty matrix")
    return validate_matrix(rows)


def format_matrix(A) -> str:
    A = np.asarray(A)
    return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in A)


def induced_system(A):
    """For a permutation matrix, the finite system on symbols with ``alpha(i) = j`` iff ``A[i, j] = 1``."""
    from .core import PartialSystem

    A = validate_matrix(A)
    n = A.shape[0]
    if not (A.sum(axis=0) == 1).all() or not (A.sum(axis=1) == 1).all():
        raise ValidationError("not a permutation matrix")
    pts = [f"s{i + 1}" for i in range(n)]
    return PartialSystem(pts, {pts[i]: pts[int(np.argmax(A[i]))] for i in range(n)})
