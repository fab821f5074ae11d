"""Finite-dimensional covariant representations.

For a system without periodic points the extension is finite and the
shift on it splits into chains. The canonical representation acts on
``l^2`` of the extension:

* ``pi(a)`` is diagonal with entry ``a(x0)`` at the basis vector of
  ``(x0, x1, ...)``;
* ``U`` sends ``e_p`` to ``e_q`` where ``q`` is ``p`` with its head
  dropped, and kills one-entry paths.

Then ``U U* = pi(indicator of Delta_1)``, ``U* U`` is the projection
onto paths with at least two entries, and ``U pi(a) U* = pi(delta(a))``.
The generated algebra is a direct sum of full matrix algebras, one
``M_m`` per chain of length ``m``.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .coeff import SeqElement, _to_complex, endo_delta, phi_vector
from .core import PartialSystem
from .errors import HasPeriodicPoints, InvalidRep, NotTopologicallyFree, TooLarge
from .extension import ExtPoint, build_extension, phi, tilde_alpha, tilde_alpha_inv
from .freedom import is_topologically_free
from .invariance import ENUM_CAP, is_invariant, is_minimal, enumerate_invariant

__all__ = [
    "DIM_CAP",
    "CovRep",
    "canonical_rep",
    "rep_from_chains",
    "validate_rep",
    "coefficient_diagonal_check",
    "chains",
    "decompose",
    "generated_algebra_basis",
    "generated_dim",
    "generated_dim_check",
    "IdealEntry",
    "ideal_lattice",
    "block_ideals_bruteforce",
    "ideal_generated_dim",
    "SimplicityVerdict",
    "simplicity_verdict",
    "star_sides",
    "random_star_family",
    "star_property_check",
    "covariant_pair_transport",
    "pibar_seq",
    "phi_diag",
]

DIM_CAP = 64
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CovRep:
    """A pair ``(pi, U)`` on ``C^dim``.

    ``projections[i]`` is ``pi`` of the indicator of the i-th point, so
    ``pi(a) = sum_i a_i projections[i]``.
    """

    system: PartialSystem
    U: np.ndarray
    projections: np.ndarray
    basis: tuple[ExtPoint, ...] | None = None

    @property
    def dim(self) -> int:
        return self.U.shape[0]

    def pi(self, a) -> np.ndarray:
        a = np.asarray([_to_complex(v) for v in a])
        return np.tensordot(a, self.projections, axes=1)

    def pibar(self, f) -> np.ndarray:
        """Diagonal action of a function on the basis (canonical reps only)."""
        if self.basis is None:
            raise InvalidRep("representation has no extension basis")
        return np.diag(np.asarray(f, dtype=complex))

    def permuted(self, perm: Sequence[int]) -> "CovRep":
        """Conjugate by the permutation sending basis slot ``perm[i]`` to slot ``i``."""
        perm = np.asarray(perm)
        P = np.eye(self.dim)[perm]
        U = P @ self.U @ P.T
        proj = np.array([P @ Q @ P.T for Q in self.projections])
        basis = None if self.basis is None else tuple(self.basis[i] for i in perm)
        return CovRep(self.system, U, proj, basis)


def _shift_power(M: np.ndarray, n: int) -> np.ndarray:
    # U^n for n >= 0, (U*)^{-n} for n < 0
    base = M if n >= 0 else M.conj().T
    return np.linalg.matrix_power(base, abs(n))


def canonical_rep(s: PartialSystem, cap: int = DIM_CAP) -> CovRep:
    if s.periodic_points:
        raise HasPeriodicPoints("the canonical representation needs a system without periodic points")
    ext = build_extension(s)
    basis = ext.points
    dim = len(basis)
    if dim > cap:
        raise TooLarge(f"extension has {dim} points, above the dimension cap {cap}")
    pos = {p: i for i, p in enumerate(basis)}
    U = np.zeros((dim, dim), dtype=complex)
    for p in basis:
        q = tilde_alpha_inv(s, p)
        if q is not None:
            U[pos[q], pos[p]] = 1.0
    proj = np.zeros((len(s), dim, dim), dtype=complex)
    for p in basis:
        i = pos[p]
        proj[s.index(phi(p)), i, i] = 1.0
    return CovRep(s, U, proj, basis)


def rep_from_chains(s: PartialSystem, chain_list: Sequence[Sequence[ExtPoint]]) -> CovRep:
    """Representation on the span of the given chains, each listed head-first.

    With every chain of the extension this is a reordering of the
    canonical representation; with a chain left out ``pi`` may fail to
    be faithful.
    """
    basis = tuple(p for c in chain_list for p in c)
    dim = len(basis)
    pos = {p: i for i, p in enumerate(basis)}
    U = np.zeros((dim, dim), dtype=complex)
    proj = np.zeros((len(s), dim, dim), dtype=complex)
    for p in basis:
        proj[s.index(phi(p)), pos[p], pos[p]] = 1.0
        q = tilde_alpha_inv(s, p)
        if q is not None and q in pos:
            U[pos[q], pos[p]] = 1.0
    return CovRep(s, U, proj, basis)


def validate_rep(r: CovRep, tol: float = 1e-9, require_faithful: bool = True) -> CovRep:
    """Check the covariance relations, raising :class:`InvalidRep` on failure."""
    s = r.system
    U, P = r.U, r.projections
    dim = r.dim
    I = np.eye(dim)

    def close(A, B):
        return np.max(np.abs(A - B), initial=0.0) <= tol

    if U.shape != (dim, dim) or P.shape != (len(s), dim, dim):
        raise InvalidRep("shape mismatch")
    for Q in P:
        if not (close(Q @ Q, Q) and close(Q.conj().T, Q)):
            raise InvalidRep("pi of an indicator is not a projection")
    if not close(P.sum(axis=0), I):
        raise InvalidRep("pi is not unital")
    if require_faithful:
        for x, Q in zip(s.points, P):
            if np.max(np.abs(Q), initial=0.0) <= tol:
                raise InvalidRep(f"pi is not faithful: indicator of {x} acts as zero")
    Us = U.conj().T
    if not close(U @ Us @ U, U):
        raise InvalidRep("U is not a partial isometry")
    one = np.ones(len(s))
    if not close(U @ Us, r.pi(endo_delta(s, one.astype(complex)))):
        raise InvalidRep("U U* is not pi(indicator of Delta_1)")
    E = Us @ U
    for Q in P:
        if not close(E @ Q, Q @ E):
            raise InvalidRep("U* U does not commute with pi(A)")
    if r.basis is not None:
        want = np.diag([1.0 if len(p.head(2)) == 2 else 0.0 for p in r.basis])
        if not close(E, want):
            raise InvalidRep("U* U is not the indicator of paths with a second entry")
    for i in range(len(s)):
        e = np.zeros(len(s), dtype=complex)
        e[i] = 1.0
        if not close(U @ P[i] @ Us, r.pi(endo_delta(s, e))):
            raise InvalidRep("covariance U pi(a) U* = pi(delta(a)) fails")
    return r


def coefficient_diagonal_check(r: CovRep, s: PartialSystem | None = None) -> bool:
    """Do the operators ``U*^n pi(e_x) U^n`` span the full diagonal algebra?"""
    s = s or r.system
    dim = r.dim
    vecs = []
    for n in range(dim + 1):
        Un = _shift_power(r.U, n)
        for Q in r.projections:
            T = Un.conj().T @ Q @ Un
            if np.max(np.abs(T - np.diag(np.diag(T))), initial=0.0) > RANK_TOL:
                return False
            vecs.append(np.diag(T))
    if dim == 0:
        return True
    return int(np.linalg.matrix_rank(np.array(vecs), tol=RANK_TOL)) == dim


def chains(s: PartialSystem) -> list[tuple[ExtPoint, ...]]:
    """Orbits of the shift on the (finite) extension, each listed head-first.

    A chain starts at a path whose head is outside ``Delta_1`` and
    continues by dropping heads.
    """
    if s.periodic_points:
        raise HasPeriodicPoints("chains exist only without periodic points")
    ext = build_extension(s)
    out = []
    for p in ext.points:
        if tilde_alpha(s, p) is None:
            c = [p]
            q = tilde_alpha_inv(s, p)
            while q is not None:
                c.append(q)
                q = tilde_alpha_inv(s, q)
            out.append(tuple(c))
    return out


def decompose(s: PartialSystem) -> list[int]:
    """Block sizes of the covariance algebra: sorted chain lengths."""
    return sorted(len(c) for c in chains(s))


def _orth_add(Q: list[np.ndarray], v: np.ndarray, tol: float) -> bool:
    # Gram-Schmidt twice for stability
    for _ in range(2):
        for q in Q:
            v = v - np.vdot(q, v) * q
    nv = np.linalg.norm(v)
    if nv > tol:
        Q.append(v / nv)
        return True
    return False


def generated_algebra_basis(gens: Iterable[np.ndarray], tol: float = RANK_TOL) -> list[np.ndarray]:
    """Orthonormal basis (flattened) of the unital algebra generated by ``gens``.

    Words are grown by left multiplication with generators until the span
    stops growing.
    """
    gens = [np.asarray(g, dtype=complex) for g in gens]
    if not gens:
        return []
    dim = gens[0].shape[0]
    Q: list[np.ndarray] = []
    frontier = []
    for M in [np.eye(dim, dtype=complex)] + gens:
        if _orth_add(Q, M.ravel(), tol):
            frontier.append(M)
    while frontier:
        new = []
        for M in frontier:
            for G in gens:
                W = G @ M
                if _orth_add(Q, W.ravel(), tol):
                    new.append(W)
        frontier = new
    return Q


def generated_dim(r: CovRep) -> int:
    gens = list(r.projections) + [r.U, r.U.conj().T]
    return len(generated_algebra_basis(gens))


def generated_dim_check(r: CovRep) -> bool:
    return generated_dim(r) == sum(m * m for m in decompose(r.system))


@dataclass(frozen=True)
class IdealEntry:
    V: frozenset[str]
    Vtilde: frozenset[ExtPoint]
    blocks: tuple[int, ...]  # indices into chains(s) making up the ideal
    dim: int
    alpha_invariant: bool


def ideal_lattice(s: PartialSystem, cap: int = ENUM_CAP) -> list[IdealEntry]:
    """Ideals of the covariance algebra paired with invariant sets.

    Invariant sets of the extension are unions of chains. For each one,
    ``V`` is its projection to X and the ideal is the sum of the blocks
    of the chains it misses. Entries are ordered by the chain subsets
    (fewest chains in the invariant set first). The map is checked to be
    bijective and order reversing.
    """
    cs = chains(s)
    k = len(cs)
    if k > cap:
        raise TooLarge(f"{k} chains exceed the enumeration cap {cap}")
    out = []
    for size in range(k + 1):
        for S in combinations(range(k), size):
            Vt = frozenset(p for i in S for p in cs[i])
            V = frozenset(phi(p) for p in Vt)
            blocks = tuple(i for i in range(k) if i not in S)
            dim = sum(len(cs[i]) ** 2 for i in blocks)
            out.append(IdealEntry(V, Vt, blocks, dim, is_invariant(s, V)))
    # anti-isomorphism: inclusion of invariant sets reverses inclusion of ideals
    for a in out:
        for b in out:
            assert (a.Vtilde <= b.Vtilde) == (set(a.blocks) >= set(b.blocks))
    assert len({e.blocks for e in out}) == len(out)
    return out


def _matrix_units(sizes: Sequence[int]) -> tuple[list[np.ndarray], list[int]]:
    total = sum(sizes)
    units, owner = [], []
    off = 0
    for b, m in enumerate(sizes):
        for i in range(m):
            for j in range(m):
                E = np.zeros((total, total))
                E[off + i, off + j] = 1.0
                units.append(E)
                owner.append(b)
        off += m
    return units, owner


def block_ideals_bruteforce(sizes: Sequence[int], seed: int = 0) -> set[tuple[tuple[int, ...], int]]:
    """Two-sided ideals of ``M_{m_1} + ... + M_{m_k}`` found numerically.

    For every support pattern a random element with exactly those blocks
    nonzero is drawn, and the ideal ``span{E x F}`` over matrix units is
    computed. Returns the distinct ideals as (blocks meeting the ideal,
    dimension).
    """
    rng = np.random.default_rng(seed)
    sizes = list(sizes)
    k = len(sizes)
    units, owner = _matrix_units(sizes)
    total = sum(sizes)
    offs = np.cumsum([0] + sizes)
    found = set()
    for mask in range(1 << k):
        x = np.zeros((total, total), dtype=complex)
        for b in range(k):
            if mask >> b & 1:
                sl = slice(offs[b], offs[b + 1])
                x[sl, sl] = rng.standard_normal((sizes[b], sizes[b])) + 1j * rng.standard_normal((sizes[b], sizes[b]))
        Q: list[np.ndarray] = []
        for E in units:
            Ex = E @ x
            if not Ex.any():
                continue
            for F in units:
                _orth_add(Q, (Ex @ F).ravel(), RANK_TOL)
        support = set()
        for q in Q:
            M = q.reshape(total, total)
            for b in range(k):
                sl = slice(offs[b], offs[b + 1])
                if np.abs(M[sl, sl]).max(initial=0.0) > 1e-8:
                    support.add(b)
        found.add((tuple(sorted(support)), len(Q)))
    return found


def ideal_generated_dim(r: CovRep, V: Iterable[str]) -> int:
    """Dimension of the ideal generated by ``pi`` of the functions vanishing on ``V``."""
    s = r.system
    V = frozenset(V)
    basis = [q.reshape(r.dim, r.dim) for q in generated_algebra_basis(list(r.projections) + [r.U, r.U.conj().T])]
    gens = [r.projections[s.index(x)] for x in s.points if x not in V]
    Q: list[np.ndarray] = []
    for g in gens:
        for A in basis:
            Ag = A @ g
            if np.abs(Ag).max(initial=0.0) <= RANK_TOL:
                continue
            for B in basis:
                _orth_add(Q, (Ag @ B).ravel(), RANK_TOL)
    return len(Q)


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool
    reason: str  # "Cycle" | "Minimal-NotCycle" | "NotMinimal"
    witness: frozenset[str] | None = None


def simplicity_verdict(s: PartialSystem, cap: int = ENUM_CAP) -> SimplicityVerdict:
    if s.classify().is_cycle:
        return SimplicityVerdict(False, "Cycle")
    if is_minimal(s, cap):
        return SimplicityVerdict(True, "Minimal-NotCycle")
    fam = enumerate_invariant(s, cap)
    trivial = {frozenset(), frozenset(s.points)}
    witness = next(V for V in fam.sets if V not in trivial)
    return SimplicityVerdict(False, "NotMinimal", witness)


def _fourier_block(r: CovRep, coeffs: np.ndarray) -> np.ndarray:
    # sum_k U*^k pi(a_k) U^k, coeffs[k] a function on X
    out = np.zeros((r.dim, r.dim), dtype=complex)
    Uk = np.eye(r.dim, dtype=complex)
    for a in coeffs:
        out += Uk.conj().T @ r.pi(a) @ Uk
        Uk = r.U @ Uk
    return out


def star_sides(r: CovRep, family: dict[int, np.ndarray]) -> tuple[float, float]:
    """Both sides of the norm inequality.

    ``family[n]`` is an array of shape ``(M + 1, |X|)`` holding the
    coefficients ``a_k^{(n)}``. Returns ``(||zero mode||, ||whole sum||)``.
    """
    total = np.zeros((r.dim, r.dim), dtype=complex)
    for n, coeffs in family.items():
        total += _fourier_block(r, coeffs) @ _shift_power(r.U, n)
    left = _fourier_block(r, family[0]) if 0 in family else np.zeros((r.dim, r.dim))
    return float(np.linalg.norm(left, 2)), float(np.linalg.norm(total, 2))


def random_star_family(r: CovRep, rng: np.random.Generator) -> dict[int, np.ndarray]:
    N = int(rng.integers(0, r.dim + 1))
    M = int(rng.integers(0, r.dim + 1))
    nx = len(r.system)
    return {
        n: rng.standard_normal((M + 1, nx)) + 1j * rng.standard_normal((M + 1, nx))
        for n in range(-N, N + 1)
    }


def star_property_check(r: CovRep, samples: int = 200, seed: int = 0, tol: float = 1e-9) -> bool:
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        left, right = star_sides(r, random_star_family(r, rng))
        if left > right + tol:
            return False
    return True


def _random_polynomial(rng: np.random.Generator, n_points: int, terms: int = 4, max_len: int = 6):
    # each term: coefficient and a word over generators; -1 = U, -2 = U*, i >= 0 = pi(e_i)
    poly = []
    for _ in range(terms):
        L = int(rng.integers(1, max_len + 1))
        word = [int(g) for g in rng.integers(-2, n_points, size=L)]
        c = complex(rng.standard_normal(), rng.standard_normal())
        poly.append((c, word))
    return poly


def _evaluate(r: CovRep, poly) -> np.ndarray:
    out = np.zeros((r.dim, r.dim), dtype=complex)
    for c, word in poly:
        M = np.eye(r.dim, dtype=complex)
        for g in word:
            G = r.U if g == -1 else r.U.conj().T if g == -2 else r.projections[g]
            M = M @ G
        out += c * M
    return out


def covariant_pair_transport(
    s: PartialSystem, r1: CovRep, r2: CovRep, samples: int = 200, seed: int = 0, tol: float = 1e-8
) -> bool:
    """Do random *-polynomials in ``(pi, U)`` have the same norm in both representations?"""
    if not is_topologically_free(s).free:
        raise NotTopologicallyFree("the system is not topologically free")
    validate_rep(r1)
    validate_rep(r2)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        poly = _random_polynomial(rng, len(s))
        n1 = np.linalg.norm(_evaluate(r1, poly), 2)
        n2 = np.linalg.norm(_evaluate(r2, poly), 2)
        if abs(n1 - n2) > tol * max(1.0, n1):
            return False
    return True


def pibar_seq(r: CovRep, a: SeqElement) -> np.ndarray:
    """``sum_n U*^n pi(a_n) U^n``."""
    return _fourier_block(r, [np.asarray(t) for t in a.terms])


def phi_diag(r: CovRep, a: SeqElement) -> np.ndarray:
    """``pibar`` applied to ``phi(a)``: the diagonal of ``phi(a)`` on the basis."""
    return r.pibar(phi_vector(r.system, a, r.basis))
