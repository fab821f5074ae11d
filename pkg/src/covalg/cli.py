"""``pds``: command-line front end.

Exit codes: 0 ok, 1 input or validation error, 2 a checked property is
false, 3 an enumeration or dimension cap was exceeded. Diagnostics go to
stderr prefixed with ``error:``. Every JSON report carries the tool
version and the SHA-256 of the input file.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coeff import (
    delta_star_alg,
    delta_tilde_alg,
    phi_eval,
    random_element,
    seq_mul,
    spanning_points,
)
from .core import PartialSystem, validate
from .errors import PDSError, TooLarge, ValidationError
from .extension import (
    ExtPoint,
    build_extension,
    default_max_len,
    point_label,
    tilde_alpha,
    tilde_alpha_inv,
    to_dot,
)
from .freedom import is_topologically_free
from .invariance import enumerate_invariant, is_minimal, lift_invariant
from .markov import augment, embed_check, markov_freedom, parse_matrix
from .representation import (
    canonical_rep,
    chains,
    decompose,
    generated_dim,
    ideal_lattice,
    simplicity_verdict,
    star_property_check,
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_CAP = 0, 1, 2, 3


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


# -- input ---------------------------------------------------------------------


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from exc


def _load_system(path: str) -> tuple[PartialSystem, str]:
    data = _read(path)
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CLIError(f"{path}: invalid JSON ({exc})") from exc
    return validate(raw), hashlib.sha256(data).hexdigest()


def _load_matrix(path: str):
    data = _read(path)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CLIError(f"{path}: not UTF-8 text") from exc
    return parse_matrix(text), hashlib.sha256(data).hexdigest()


# -- output helpers ------------------------------------------------------------


def _header(command: str, digest: str) -> dict:
    return {"tool": "pds", "version": __version__, "command": command, "input_sha256": digest}


def _emit(report: dict):
    sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")


def _point_json(p: ExtPoint) -> dict:
    return {
        "kind": p.kind,
        "prefix": list(p.prefix),
        "cycle": list(p.cycle),
        "label": point_label(p),
    }


def _set_json(s: PartialSystem, V) -> list[str]:
    return s.ordered(V)


# -- commands ------------------------------------------------------------------


def cmd_validate(args) -> int:
    s, digest = _load_system(args.file)
    c = s.classify()
    rep = _header("validate", digest)
    rep.update(
        {
            "valid": True,
            "points": list(s.points),
            "delta_1": s.ordered(s.domain_n(1)),
            "classification": {
                "surjective": c.surjective,
                "injective": c.injective,
                "is_cycle": c.is_cycle,
                "acyclic": c.acyclic,
            },
        }
    )
    _emit(rep)
    return EXIT_OK


def cmd_extension(args) -> int:
    s, digest = _load_system(args.file)
    max_len = args.max_len or default_max_len(s)
    ext = build_extension(s, max_len)
    if args.format == "dot":
        sys.stdout.write(to_dot(ext))
        return EXIT_OK
    pos = {p: i for i, p in enumerate(ext.points)}
    edges = []
    for p in ext.points:
        q = tilde_alpha(s, p)
        if q is not None and q in pos:
            edges.append([pos[p], pos[q]])
    rep = _header("extension", digest)
    rep.update(
        {
            "max_len": max_len,
            "cardinality": str(ext.cardinality),
            "complete": ext.complete,
            "n_points": len(ext),
            "points": [_point_json(p) for p in ext.points],
            "tilde_alpha_edges": edges,
        }
    )
    _emit(rep)
    return EXIT_OK


def cmd_dot(args) -> int:
    s, _ = _load_system(args.file)
    sys.stdout.write(to_dot(build_extension(s, args.max_len or default_max_len(s))))
    return EXIT_OK


def cmd_invariants(args) -> int:
    s, digest = _load_system(args.file)
    fam = enumerate_invariant(s)
    rep = _header("invariants", digest)
    rep.update(
        {
            "sets": [_set_json(s, V) for V in fam.sets],
            "minimal": is_minimal(s),
            "intersection_closed": fam.intersection_closed,
            "union_closed": fam.union_closed,
        }
    )
    if not s.periodic_points:
        rep["pairing"] = [
            {"V": _set_json(s, V), "V_tilde": [point_label(p) for p in lift_invariant(s, V).members]}
            for V in fam.sets
        ]
    _emit(rep)
    return EXIT_OK


def cmd_freedom(args) -> int:
    s, digest = _load_system(args.file)
    report = is_topologically_free(s)
    rep = _header("freedom", digest)
    rep.update(report.to_json())
    _emit(rep)
    if args.assert_free and not report.free:
        return EXIT_VIOLATION
    return EXIT_OK


def _ideals_json(s: PartialSystem) -> list[dict]:
    cs = chains(s)
    return [
        {
            "V": _set_json(s, e.V),
            "blocks": [len(cs[i]) for i in e.blocks],
            "chain_indices": list(e.blocks),
            "dim": e.dim,
            "alpha_invariant": e.alpha_invariant,
        }
        for e in ideal_lattice(s)
    ]


def cmd_decompose(args) -> int:
    s, digest = _load_system(args.file)
    blocks = decompose(s)
    r = canonical_rep(s)
    verdict = simplicity_verdict(s)
    rep = _header("decompose", digest)
    rep.update(
        {
            "chains": blocks,
            "algebra": " ⊕ ".join(f"M_{m}" for m in blocks) if blocks else "0",
            "generated_dim": generated_dim(r),
            "ideals": _ideals_json(s),
            "simple": verdict.simple,
            "reason": verdict.reason,
        }
    )
    _emit(rep)
    return EXIT_OK if rep["generated_dim"] == sum(m * m for m in blocks) else EXIT_VIOLATION


def cmd_ideals(args) -> int:
    s, digest = _load_system(args.file)
    rep = _header("ideals", digest)
    rep.update({"chains": decompose(s), "ideals": _ideals_json(s)})
    _emit(rep)
    return EXIT_OK


def cmd_simplicity(args) -> int:
    s, digest = _load_system(args.file)
    v = simplicity_verdict(s)
    rep = _header("simplicity", digest)
    rep.update(
        {
            "simple": v.simple,
            "reason": v.reason,
            "witness": None if v.witness is None else _set_json(s, v.witness),
        }
    )
    _emit(rep)
    if args.assert_simple and not v.simple:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_star_check(args) -> int:
    s, digest = _load_system(args.file)
    r = canonical_rep(s)
    ok = star_property_check(r, args.samples, args.seed, args.tol)
    rep = _header("star-check", digest)
    rep.update({"dim": r.dim, "samples": args.samples, "seed": args.seed, "tol": args.tol, "passed": ok})
    _emit(rep)
    return EXIT_OK if ok else EXIT_VIOLATION


def _coeff_selftest(s: PartialSystem, samples: int, seed: int, tol: float) -> dict:
    rng = np.random.default_rng(seed)
    pts = spanning_points(s, len(s) + 2)
    fails = {"associative": 0, "commutative": 0, "phi_multiplicative": 0, "delta_tilde": 0, "delta_star": 0}
    for _ in range(samples):
        a, b, c = (random_element(s, rng) for _ in range(3))
        ab = seq_mul(s, a, b)
        lhs, rhs = seq_mul(s, ab, c), seq_mul(s, a, seq_mul(s, b, c))
        ba = seq_mul(s, b, a)
        dt, ds = delta_tilde_alg(s, a), delta_star_alg(s, a)
        assoc = comm = mult = dtl = dst = True
        for p in pts:
            pab, pa, pb = phi_eval(s, ab, p), phi_eval(s, a, p), phi_eval(s, b, p)
            assoc &= abs(phi_eval(s, lhs, p) - phi_eval(s, rhs, p)) <= tol * (1 + abs(phi_eval(s, lhs, p)))
            comm &= abs(pab - phi_eval(s, ba, p)) <= tol * (1 + abs(pab))
            mult &= abs(pab - pa * pb) <= tol * (1 + abs(pab))
            q = tilde_alpha(s, p)
            want = phi_eval(s, a, q) if q is not None else 0
            dtl &= abs(phi_eval(s, dt, p) - want) <= tol * (1 + abs(want))
            q = tilde_alpha_inv(s, p)
            want = phi_eval(s, a, q) if q is not None else 0
            dst &= abs(phi_eval(s, ds, p) - want) <= tol * (1 + abs(want))
        for key, ok in zip(fails, (assoc, comm, mult, dtl, dst)):
            fails[key] += not ok
    return fails


def cmd_coeff_selftest(args) -> int:
    s, digest = _load_system(args.file)
    fails = _coeff_selftest(s, args.samples, args.seed, args.tol)
    rep = _header("coeff-selftest", digest)
    rep.update(
        {"samples": args.samples, "seed": args.seed, "tol": args.tol, "failures": fails, "passed": not any(fails.values())}
    )
    _emit(rep)
    return EXIT_OK if rep["passed"] else EXIT_VIOLATION


def cmd_markov(args) -> int:
    A, digest = _load_matrix(args.file)
    rep = _header(f"markov {args.action}", digest)
    code = EXIT_OK
    if args.action == "augment":
        Ap = augment(A)
        rep["matrix"] = Ap.astype(int).tolist()
        rep["symbols"] = list(range(Ap.shape[0]))
    elif args.action == "freedom":
        free, bad = markov_freedom(A)
        rep.update({"free": free, "witnesses": [list(c) for c in bad]})
        if args.assert_free and not free:
            code = EXIT_VIOLATION
    else:
        top = args.max_len or 6
        results = {str(L): embed_check(A, L) for L in range(2, top + 1)}
        rep.update({"lengths": results, "passed": all(results.values())})
        if not rep["passed"]:
            code = EXIT_VIOLATION
    _emit(rep)
    return code


# -- parser --------------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not v >= 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pds", description="Finite partial dynamical systems and their covariance algebras.")
    p.add_argument("--version", action="version", version=f"pds {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, **extra):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file")
        sp.set_defaults(func=func)
        if extra.get("max_len"):
            sp.add_argument("--max-len", type=_positive_int, default=None)
        if extra.get("fmt"):
            sp.add_argument("--format", choices=["json", "dot"], default="json")
        if extra.get("random"):
            sp.add_argument("--samples", type=_positive_int, default=extra.get("samples", 200))
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--tol", type=_nonneg_float, default=extra.get("tol", 1e-9))
        if extra.get("assert_free"):
            sp.add_argument("--assert-free", action="store_true")
        if extra.get("assert_simple"):
            sp.add_argument("--assert-simple", action="store_true")
        return sp

    add("validate", cmd_validate, "check a system file")
    add("extension", cmd_extension, "enumerate the reversible extension", max_len=True, fmt=True)
    add("invariants", cmd_invariants, "list invariant sets")
    add("freedom", cmd_freedom, "topological freedom report", assert_free=True)
    add("decompose", cmd_decompose, "matrix-block structure of the covariance algebra")
    add("ideals", cmd_ideals, "ideal lattice of the covariance algebra")
    add("simplicity", cmd_simplicity, "simplicity verdict", assert_simple=True)
    add("star-check", cmd_star_check, "sample the zero-mode norm inequality", random=True)
    add("coeff-selftest", cmd_coeff_selftest, "algebra identities on random elements", random=True, samples=100, tol=1e-12)
    add("dot", cmd_dot, "extension as a dot graph", max_len=True)

    mk = sub.add_parser("markov", help="adjacency-matrix tools")
    mk.add_argument("action", choices=["augment", "freedom", "embed-check"])
    mk.add_argument("file")
    mk.add_argument("--max-len", type=_positive_int, default=None)
    mk.add_argument("--assert-free", action="store_true")
    mk.set_defaults(func=cmd_markov)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) == "markov" and args.action == "embed-check":
            if args.max_len is not None and args.max_len < 2:
                raise CLIError("--max-len must be at least 2 for embed-check")
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CLIError, ValidationError, PDSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
