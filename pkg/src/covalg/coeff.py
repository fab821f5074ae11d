"""The coefficient algebra of finitely supported sequences.

An element is a finite sequence ``(a_0, ..., a_N)`` of functions on X
with ``a_n`` vanishing off ``Delta_n``. Functions are 1-D arrays indexed
by point order, either ``complex128`` or, in exact mode, object arrays
of Gaussian rationals.

The product is

    (a b)_n = a_n * sum_{j=0..n} delta^j(b_{n-j}) + b_n * sum_{j=1..n} delta^j(a_{n-j})

and ``phi(a)(x~) = sum_n a_n(x_n)`` evaluates an element on a point of
the extension. Elements are equal as members of the algebra when their
``phi`` images agree; see :func:`phi_equal`.
"""
from __future__ import annotations

import json
from fractions import Fraction
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np
from sympy.polys.domains import QQ_I

from .core import PartialSystem
from .errors import SupportViolation, ValidationError
from .extension import ExtPoint, build_extension, phi_n

__all__ = [
    "SeqElement",
    "func",
    "zeros",
    "ones",
    "indicator",
    "endo_delta",
    "endo_delta_power",
    "seq_add",
    "seq_smul",
    "seq_star",
    "seq_mul",
    "seq_unit",
    "single",
    "phi_eval",
    "phi_vector",
    "delta_tilde_alg",
    "delta_star_alg",
    "spanning_points",
    "phi_equal",
    "raw_equal",
    "separating_element",
    "direct_limit_ranks",
    "random_element",
    "to_json",
    "from_json",
]


# -- scalar backends -----------------------------------------------------------


def _zero(exact: bool):
    return QQ_I.zero if exact else 0j


def zeros(s: PartialSystem, exact: bool = False) -> np.ndarray:
    if exact:
        out = np.empty(len(s), dtype=object)
        out[:] = [QQ_I.zero] * len(s)
        return out
    return np.zeros(len(s), dtype=complex)


def ones(s: PartialSystem, exact: bool = False) -> np.ndarray:
    if exact:
        out = np.empty(len(s), dtype=object)
        out[:] = [QQ_I.one] * len(s)
        return out
    return np.ones(len(s), dtype=complex)


def _qq(x):
    if isinstance(x, float):
        fr = Fraction(x)
        return QQ_I.dom(fr.numerator, fr.denominator)
    return QQ_I.dom.convert(x)


def _to_scalar(v, exact: bool):
    if isinstance(v, (list, tuple)):
        re, im = v
    elif isinstance(v, complex):
        re, im = v.real, v.imag
    elif hasattr(v, "x") and hasattr(v, "y"):
        re, im = v.x, v.y
    else:
        re, im = v, 0
    if exact:
        return QQ_I(_qq(re), _qq(im))
    return complex(float(re), float(im))


def _is_zero(v) -> bool:
    return not bool(v)


def _conj(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        out = np.empty(len(a), dtype=object)
        out[:] = [QQ_I(v.x, -v.y) for v in a]
        return out
    return np.conj(a)


def _to_complex(v) -> complex:
    if isinstance(v, complex):
        return v
    if hasattr(v, "x") and hasattr(v, "y"):
        return complex(float(v.x), float(v.y))
    return complex(v)


def func(s: PartialSystem, values: Mapping[str, object] | None = None, exact: bool = False) -> np.ndarray:
    """A function on X from a partial mapping point -> value (missing points are 0)."""
    out = zeros(s, exact)
    for x, v in (values or {}).items():
        out[s.index(x)] = _to_scalar(v, exact)
    return out


def indicator(s: PartialSystem, xs: Iterable[str], exact: bool = False) -> np.ndarray:
    return func(s, {x: 1 for x in xs}, exact)


# -- the endomorphism ----------------------------------------------------------


def _alpha_index(s: PartialSystem) -> np.ndarray:
    idx = np.full(len(s), -1, dtype=int)
    for x, y in s.alpha.items():
        idx[s.index(x)] = s.index(y)
    return idx


def endo_delta(s: PartialSystem, a: np.ndarray) -> np.ndarray:
    """``(delta a)(x) = a(alpha(x))`` on ``Delta_1`` and 0 elsewhere."""
    idx = _alpha_index(s)
    out = zeros(s, a.dtype == object)
    dom = idx >= 0
    out[dom] = a[idx[dom]]
    return out


def endo_delta_power(s: PartialSystem, a: np.ndarray, j: int) -> np.ndarray:
    for _ in range(j):
        a = endo_delta(s, a)
    return a


# -- sequences -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SeqElement:
    system: PartialSystem
    terms: tuple[np.ndarray, ...]
    exact: bool = False

    def __post_init__(self):
        terms = tuple(np.asarray(t) for t in self.terms)
        for t in terms:
            if t.shape != (len(self.system),):
                raise ValidationError("term has the wrong length")
        object.__setattr__(self, "terms", terms)
        _check_support(self.system, terms)

    def __len__(self):
        return len(self.terms)

    def term(self, n: int) -> np.ndarray:
        if n < len(self.terms):
            return self.terms[n]
        return zeros(self.system, self.exact)

    def __add__(self, other):
        return seq_add(self, other)

    def __mul__(self, other):
        if isinstance(other, SeqElement):
            return seq_mul(self.system, self, other)
        return seq_smul(other, self)

    __rmul__ = lambda self, other: seq_smul(other, self)  # noqa: E731

    def __neg__(self):
        return seq_smul(-1, self)

    def __sub__(self, other):
        return seq_add(self, -other)


def _check_support(s: PartialSystem, terms: Sequence[np.ndarray]):
    for n, t in enumerate(terms):
        dom = s.domain_n(n)
        for i, x in enumerate(s.points):
            if x not in dom and not _is_zero(t[i]):
                raise SupportViolation(f"term {n} is nonzero at {x}, outside Delta_{n}")


def _same(a: SeqElement, b: SeqElement):
    if a.system != b.system:
        raise ValidationError("elements belong to different systems")
    if a.exact != b.exact:
        raise ValidationError("cannot mix exact and floating elements")


def seq_unit(s: PartialSystem, exact: bool = False) -> SeqElement:
    return SeqElement(s, (ones(s, exact),), exact)


def single(s: PartialSystem, n: int, f: np.ndarray) -> SeqElement:
    """The sequence with ``f`` in slot ``n`` and zeros elsewhere."""
    exact = f.dtype == object
    terms = [zeros(s, exact) for _ in range(n)] + [f]
    return SeqElement(s, tuple(terms), exact)


def seq_add(a: SeqElement, b: SeqElement) -> SeqElement:
    _same(a, b)
    N = max(len(a), len(b))
    return SeqElement(a.system, tuple(a.term(n) + b.term(n) for n in range(N)), a.exact)


def seq_smul(lam, a: SeqElement) -> SeqElement:
    lam = _to_scalar(lam, a.exact)
    # array on the left so numpy broadcasts; QQ_I * ndarray does not
    return SeqElement(a.system, tuple(t * lam for t in a.terms), a.exact)


def seq_star(a: SeqElement) -> SeqElement:
    return SeqElement(a.system, tuple(_conj(t) for t in a.terms), a.exact)


def seq_mul(s: PartialSystem, a: SeqElement, b: SeqElement) -> SeqElement:
    _same(a, b)
    N = max(len(a), len(b))
    # dpow[m][j] = delta^j(x_m) for x in (a, b)
    da = [[a.term(m)] for m in range(N)]
    db = [[b.term(m)] for m in range(N)]
    for m in range(N):
        for _ in range(N - m):
            da[m].append(endo_delta(s, da[m][-1]))
            db[m].append(endo_delta(s, db[m][-1]))
    out = []
    for n in range(N):
        sb = zeros(s, a.exact)
        for j in range(n + 1):
            sb = sb + db[n - j][j]
        sa = zeros(s, a.exact)
        for j in range(1, n + 1):
            sa = sa + da[n - j][j]
        out.append(a.term(n) * sb + b.term(n) * sa)
    return SeqElement(s, tuple(out), a.exact)


def delta_tilde_alg(s: PartialSystem, a: SeqElement) -> SeqElement:
    """``[a] -> [delta(a_0) + a_1, a_2, a_3, ...]``."""
    if len(a) == 0:
        return a
    head = endo_delta(s, a.term(0)) + a.term(1)
    return SeqElement(s, (head,) + tuple(a.terms[2:]), a.exact)


def delta_star_alg(s: PartialSystem, a: SeqElement) -> SeqElement:
    """``[a] -> [0, a_0 delta(1), a_1 delta^2(1), ...]``."""
    one = ones(s, a.exact)
    terms = [zeros(s, a.exact)]
    for n, t in enumerate(a.terms):
        terms.append(t * endo_delta_power(s, one, n + 1))
    return SeqElement(s, tuple(terms), a.exact)


# -- evaluation on the extension -----------------------------------------------


def phi_eval(s: PartialSystem, a: SeqElement, p: ExtPoint):
    total = _zero(a.exact)
    for n, t in enumerate(a.terms):
        x = phi_n(p, n)
        if x is None:
            break
        total = total + t[s.index(x)]
    return total if a.exact else complex(total)


def phi_vector(s: PartialSystem, a: SeqElement, points: Sequence[ExtPoint]) -> np.ndarray:
    """``phi(a)`` on a list of extension points, as a complex vector."""
    return np.array([_to_complex(phi_eval(s, a, p)) for p in points], dtype=complex)


def spanning_points(s: PartialSystem, support: int = 0) -> tuple[ExtPoint, ...]:
    """Extension points that see every length-``support`` prefix pattern.

    Finite paths up to ``max(2|X|, support + |X|)`` entries and all
    periodic anti-orbits. Any anti-orbit prefix of length ``support``
    extends to one of these.
    """
    return build_extension(s, max(2 * len(s), support + len(s), 1)).points


def phi_equal(s: PartialSystem, a: SeqElement, b: SeqElement, tol: float = 1e-12) -> bool:
    """Equality in the algebra: same ``phi`` image on a spanning family."""
    _same(a, b)
    pts = spanning_points(s, max(len(a), len(b)))
    if a.exact:
        return all(_is_zero(phi_eval(s, a, p) - phi_eval(s, b, p)) for p in pts)
    return bool(np.allclose(phi_vector(s, a, pts), phi_vector(s, b, pts), rtol=0, atol=tol))


def raw_equal(a: SeqElement, b: SeqElement, tol: float = 0.0) -> bool:
    """Componentwise equality, padding the shorter sequence with zeros."""
    _same(a, b)
    for n in range(max(len(a), len(b))):
        d = a.term(n) - b.term(n)
        if a.exact:
            if not all(_is_zero(v) for v in d):
                return False
        elif np.max(np.abs(d), initial=0.0) > tol:
            return False
    return True


def _cylinder(s: PartialSystem, p: ExtPoint, m: int, exact: bool) -> SeqElement:
    # product of the slot-n indicators of p_n, n = 0..m (defined entries only)
    out = seq_unit(s, exact)
    for n in range(m + 1):
        x = phi_n(p, n)
        if x is None:
            break
        out = seq_mul(s, out, single(s, n, indicator(s, [x], exact)))
    return out


def separating_element(s: PartialSystem, p: ExtPoint, q: ExtPoint, exact: bool = False) -> SeqElement:
    """An element with ``phi = 1`` at ``p`` and ``phi = 0`` at ``q``.

    Built from products of single-slot indicators, so ``phi`` of it is the
    indicator of a cylinder around one of the two points.
    """
    if p == q:
        raise ValueError("points coincide")
    m = 0
    while phi_n(p, m) == phi_n(q, m):
        m += 1
    if phi_n(p, m) is not None:
        return _cylinder(s, p, m, exact)
    # p stops before q does: take the complement of q's cylinder
    return seq_add(seq_unit(s, exact), seq_smul(-1, _cylinder(s, q, m, exact)))


def direct_limit_ranks(s: PartialSystem, N: int | None = None) -> tuple[list[int], bool]:
    """Ranks of the pulled-back slot algebras ``{f(x_n) : f on Delta_n}`` on the extension.

    Returns the rank of each slot algebra and whether each one sits
    inside the next (checked as column-space inclusion).
    """
    ext = build_extension(s)
    pts = ext.points
    N = len(s) if N is None else N
    mats = []
    for n in range(N + 1):
        M = np.zeros((len(pts), len(s)))
        dom = s.domain_n(n)
        for r, p in enumerate(pts):
            x = phi_n(p, n)
            if x is not None and x in dom:
                M[r, s.index(x)] = 1.0
        mats.append(M)
    ranks = [int(np.linalg.matrix_rank(M)) for M in mats]
    nested = all(
        np.linalg.matrix_rank(np.hstack([mats[n], mats[n + 1]])) == ranks[n + 1]
        for n in range(N)
    )
    return ranks, nested


# -- random elements and JSON --------------------------------------------------


def random_element(
    s: PartialSystem, rng: np.random.Generator, length: int | None = None, exact: bool = False
) -> SeqElement:
    """Random element with terms supported on ``Delta_n``.

    Floating mode draws standard complex normals; exact mode draws
    Gaussian rationals with small numerators and denominators.
    """
    if length is None:
        length = int(rng.integers(1, len(s) + 2))
    terms = []
    for n in range(length):
        t = zeros(s, exact)
        for x in s.domain_n(n):
            i = s.index(x)
            if exact:
                re = QQ_I.dom(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
                im = QQ_I.dom(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
                t[i] = QQ_I(re, im)
            else:
                t[i] = complex(rng.standard_normal(), rng.standard_normal())
        terms.append(t)
    return SeqElement(s, tuple(terms), exact)


def to_json(a: SeqElement) -> list[dict]:
    out = []
    for t in a.terms:
        row = {}
        for x, v in zip(a.system.points, t):
            c = _to_complex(v)
            row[x] = [c.real, c.imag]
        out.append(row)
    return out


def from_json(s: PartialSystem, raw, exact: bool = False) -> SeqElement:
    if isinstance(raw, str):
        raw = json.loads(raw)
    if not isinstance(raw, list):
        raise ValidationError("element must be an array of objects")
    terms = []
    for row in raw:
        if not isinstance(row, Mapping):
            raise ValidationError("each term must be an object point -> [re, im]")
        terms.append(func(s, row, exact))
    return SeqElement(s, tuple(terms), exact)
