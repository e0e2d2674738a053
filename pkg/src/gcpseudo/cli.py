"""Command-line front end.

Exit codes: 0 success, 1 domain failure (not a pseudocodeword, invalid cover,
oracle violation), 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from gcpseudo import fixtures
from gcpseudo.cone import as_exact, cone_system, verdict
from gcpseudo.field import BoundExceeded, FieldError, FieldMatrix, RationalMatrix
from gcpseudo.lift import LiftError, PreconditionError, approximate_cone_point, lift_full, lift_single_row
from gcpseudo.oracle import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    check_lemma_battery,
    check_necessity,
    check_sufficiency,
    enumerate_pseudocodeword_matrices,
    random_rows,
)
from gcpseudo.tanner import (
    CoverError,
    CoverLabeling,
    cover_from_json,
    cover_to_json,
    cover_violations,
    failing_checks,
    pseudocodeword_matrix,
)

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


class DomainFailure(Exception):
    pass


# -- input -------------------------------------------------------------------


def _read_json(source: str):
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{source}: not a built-in fixture and not readable ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_matrix(source: str) -> FieldMatrix:
    if source in fixtures.MATRICES:
        return fixtures.MATRICES[source]()
    obj = _read_json(source)
    if isinstance(obj, dict) and "base" in obj:
        obj = obj["base"]
    try:
        return FieldMatrix.from_json(obj)
    except FieldError as exc:
        raise InputError(f"{source}: {exc}") from None


def load_pseudo(source: str, H: FieldMatrix) -> np.ndarray:
    """Integer or rational ``(q-1) x n`` matrix; rationals may be written ``"p/q"``."""
    if source in fixtures.PSEUDOMATRICES:
        data = fixtures.PSEUDOMATRICES[source]().tolist()
    else:
        obj = _read_json(source)
        if isinstance(obj, dict):
            if "q" in obj and int(obj["q"]) != H.q:
                raise InputError(f"{source}: matrix is over F{obj['q']} but H is over F{H.q}")
            obj = obj.get("entries", obj.get("F"))
        data = obj
    if not isinstance(data, list):
        raise InputError(f"{source}: expected a list of rows or an object with 'entries'")
    if H.q == 2 and data and not isinstance(data[0], list):
        data = [data]
    try:
        R = RationalMatrix.from_any(data)
    except (FieldError, ValueError) as exc:
        raise InputError(f"{source}: {exc}") from None
    if R.shape != (H.q - 1, H.cols):
        raise InputError(f"{source}: shape {R.shape} does not match the expected {(H.q - 1, H.cols)}")
    return as_exact(R.tolist(), H.q, H.cols)


def load_cover(source: str):
    if source in fixtures.COVERS:
        return fixtures.COVERS[source]()
    obj = _read_json(source)
    try:
        return cover_from_json(obj)
    except (CoverError, FieldError, ValueError) as exc:
        raise InputError(f"{source}: {exc}") from None


def _fmt_matrix(F) -> str:
    rows = np.asarray(F, dtype=object).tolist()
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows) + "]"


def _json_entries(F) -> list:
    return RationalMatrix.from_any(np.asarray(F, dtype=object)).to_json()


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# -- subcommands -------------------------------------------------------------


def cmd_gen_cone(args) -> int:
    H = load_matrix(args.matrix)
    system = cone_system(H)
    if args.format == "json":
        print(json.dumps(system.to_json(), indent=2))
        return EXIT_OK
    style = "latex" if args.format == "latex" else "text"
    nonneg = len(system) - len(system.nontrivial)
    print(f"# K{H.q}: {len(system.nontrivial)} inequalities + {nonneg} nonnegativity")
    print(system.render(style))
    return EXIT_OK


def cmd_check(args) -> int:
    H = load_matrix(args.matrix)
    F = load_pseudo(args.pseudo, H)
    v = verdict(H, F)
    nonneg = sum(1 for e in cone_system(H) if e.kind == "nonnegativity")
    lines = [f"cone membership: {'yes' if v.in_cone else 'no'} "
             f"({len(cone_system(H)) - nonneg} inequalities + {nonneg} nonnegativity)"]
    lines += [f"cone violation: {e.render('text')}" for e in v.violated]
    if v.residues is None:
        lines.append(f"mod-{H.q} residues: n/a (non-integer matrix)")
    else:
        lines.append(f"mod-{H.q} residues: {' '.join(str(r) for r in v.residues)}")
    lines.append(f"pseudocodeword: {'yes' if v.is_pseudocodeword else 'no'}")
    payload = {
        "H": H.to_json(),
        "F": _json_entries(F),
        "in_cone": v.in_cone,
        "violated": [e.to_json() for e in v.violated],
        "residues": None if v.residues is None else list(v.residues),
        "pseudocodeword": v.is_pseudocodeword,
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if v.is_pseudocodeword else EXIT_DOMAIN


def _parse_choice(text: str) -> tuple[int, int]:
    try:
        k, l = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'k,l' (1-based), got {text!r}") from None
    if k < 1 or l < 1:
        raise argparse.ArgumentTypeError("indices are 1-based")
    return k - 1, l - 1


def _trace_lines(res) -> list[str]:
    out = [f"M' = {res.M_prime}, M = {res.M}"]
    for s, step in enumerate(res.trace, 1):
        if step.critical is not None:
            c = step.critical
            coords = ", ".join(f"{l + 1} (type {t})" for l, t in sorted(c.coordinates)) or "none"
            p1 = ", ".join(f"{{{k + 1},{l + 1}}}" for k, l in sorted(c.pairs_type1)) or "none"
            p2 = ", ".join(f"{{{k + 1},{l + 1}}}" for k, l in sorted(c.pairs_type2)) or "none"
            out.append(f"  critical coordinates: {coords}; type-1 pairs: {p1}; type-2 pairs: {p2}")
        copies = ", ".join(f"u_{i + 1},{mu + 1}={sym}" for i, mu, sym in step.labeled)
        target = f" -> v_{step.row + 1},{step.check_copy + 1}" if step.check_copy is not None else ""
        out.append(f"step {s} [{step.kind}] row {step.row + 1}: {copies}{target}")
        out.append(f"  F = {_fmt_matrix(step.snapshot)}")
    return out


def cmd_lift(args) -> int:
    H = load_matrix(args.matrix)
    F = load_pseudo(args.pseudo, H)
    if F.dtype == object:
        raise InputError("lifting needs an integer matrix; see the approx subcommand for rational points")
    single = H.q == 3 and H.rows == 1 and H.entries.max(initial=0) <= 1
    if args.choose and not single:
        raise InputError("--choose applies only to a single {0,1} ternary row")
    v = verdict(H, F)
    if not v.is_pseudocodeword:
        if not v.in_cone:
            why = "not in the fundamental cone: " + v.violated[0].render("text")
        else:
            why = f"mod-{H.q} condition fails: residues {' '.join(str(r) for r in v.residues)}"
        raise DomainFailure(why)
    try:
        res = lift_single_row(H, F, choose=args.choose) if single else lift_full(H, F)
    except LiftError as exc:
        raise DomainFailure(f"lift failed: {exc}") from None
    lab = res.labeling
    doc = cover_to_json(lab)
    doc["trace"] = [s.to_json() for s in res.trace]
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    lines = _trace_lines(res) if args.trace else [f"M' = {res.M_prime}, M = {res.M}"]
    lines.append(f"realized F = {_fmt_matrix(pseudocodeword_matrix(lab).entries)}")
    if args.out:
        lines.append(f"cover written to {args.out}")
    if args.format == "json" and not args.out:
        print(json.dumps(doc, indent=2))
    else:
        _emit(args, "\n".join(lines), {"M": res.M, "M_prime": res.M_prime, "out": args.out,
                                       "trace": doc["trace"] if args.trace else None})
    return EXIT_OK


def cmd_verify(args) -> int:
    obj = load_cover(args.cover)
    cover = obj.cover if isinstance(obj, CoverLabeling) else obj
    problems = cover_violations(cover)
    if problems:
        _emit(args, "\n".join(["invalid cover:"] + [f"  {p}" for p in problems]),
              {"valid": False, "violations": problems})
        return EXIT_DOMAIN
    if not isinstance(obj, CoverLabeling):
        _emit(args, f"valid {cover.M}-cover (no labels to check)", {"valid": True, "labels": None})
        return EXIT_OK
    bad = failing_checks(obj)
    if bad:
        msgs = [f"parity check fails at v_{j + 1},{nu + 1}" for j, nu in bad]
        _emit(args, "\n".join(["invalid pseudocodeword:"] + [f"  {m}" for m in msgs]),
              {"valid": False, "failing_checks": [[j + 1, nu + 1] for j, nu in bad]})
        return EXIT_DOMAIN
    F = pseudocodeword_matrix(obj)
    _emit(args, f"valid pseudocodeword on a {cover.M}-cover\nF = {_fmt_matrix(F.entries)}",
          {"valid": True, "M": cover.M, "F": F.tolist()})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    H = load_matrix(args.matrix)
    found = sorted(enumerate_pseudocodeword_matrices(H, args.degree, canonical=not args.full, budget=args.budget))
    text = [f"{len(found)} pseudocodeword matrices on {args.degree}-covers"]
    text += [_fmt_matrix(F) for F in found]
    _emit(args, "\n".join(text), {"M": args.degree, "count": len(found), "matrices": [list(map(list, F)) for F in found]})
    return EXIT_OK


def cmd_theorems(args) -> int:
    H = load_matrix(args.matrix)
    if args.necessity is not None:
        rep = check_necessity(H, args.necessity, canonical=not args.full, budget=args.budget)
    elif args.sufficiency is not None:
        rep = check_sufficiency(H, args.sufficiency)
    else:
        pool = [H] + random_rows(args.seed, args.random, H.cols, q=H.q) if args.random else [H]
        rep = check_lemma_battery(pool, args.lemmas, seed=args.seed)
    lines = [rep.summary()] + [f"  violation: {json.dumps(v)}" for v in rep.violations[:20]]
    _emit(args, "\n".join(lines), rep.to_json())
    return EXIT_OK if rep.ok else EXIT_DOMAIN


def cmd_approx(args) -> int:
    H = load_matrix(args.matrix)
    Z = load_pseudo(args.point, H)
    try:
        eps = Fraction(args.eps)
    except ValueError:
        raise InputError(f"--eps: not a rational number: {args.eps!r}") from None
    try:
        c, F = approximate_cone_point(H, Z, eps)
    except PreconditionError as exc:
        raise DomainFailure(str(exc)) from None
    v = verdict(H, F)
    text = f"c = {c}\nF = {_fmt_matrix(F)}\ndistance = 0\npseudocodeword: {'yes' if v.is_pseudocodeword else 'no'}"
    _emit(args, text, {"c": str(c), "F": F.tolist(), "distance": 0, "pseudocodeword": v.is_pseudocodeword})
    return EXIT_OK if v.is_pseudocodeword else EXIT_DOMAIN


def cmd_fixture(args) -> int:
    name = args.name
    if name in fixtures.MATRICES:
        payload = fixtures.MATRICES[name]().to_json()
    elif name in fixtures.PSEUDOMATRICES:
        payload = {"q": 3, "entries": fixtures.PSEUDOMATRICES[name]().tolist()}
    elif name in fixtures.COVERS:
        payload = cover_to_json(fixtures.COVERS[name]())
    else:
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(fixtures.NAMES)}")
    print(json.dumps(payload, indent=2))
    return EXIT_OK


# -- wiring ------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    # flags accepted both before and after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized pools")
    p.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="cap on oracle evaluations")
    p.add_argument("--format", choices=["text", "json", "latex"], default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="gcpseudo",
        parents=[common],
        description="Graph-cover pseudocodewords over F2 and F3. MATRIX, PSEUDO and COVER take a "
        f"JSON file or a built-in fixture ({', '.join(fixtures.NAMES)}).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-cone", parents=[common], help="list the fundamental-cone inequalities")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_gen_cone)

    p = sub.add_parser("check", parents=[common], help="cone membership and mod-q verdict")
    p.add_argument("matrix")
    p.add_argument("pseudo")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lift", parents=[common], help="build a cover realizing a pseudocodeword matrix")
    p.add_argument("matrix")
    p.add_argument("pseudo")
    p.add_argument("--trace", action="store_true", help="print matrix snapshots per step")
    p.add_argument("--out", help="write the cover JSON here")
    p.add_argument("--choose", type=_parse_choice, action="append", metavar="K,L",
                   help="stage-2 selection (1-based), repeat for successive steps")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", parents=[common], help="check a cover file and its labeling")
    p.add_argument("cover")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="brute-force pseudocodeword matrices")
    p.add_argument("matrix")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--full", action="store_true", help="disable cover canonicalization")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("theorems", parents=[common], help="oracle checks of the characterization")
    p.add_argument("matrix")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--necessity", type=int, metavar="M")
    g.add_argument("--sufficiency", type=int, metavar="B")
    g.add_argument("--lemmas", type=int, metavar="B")
    p.add_argument("--full", action="store_true", help="disable cover canonicalization")
    p.add_argument("--random", type=int, default=0, metavar="K", help="add K seeded random rows to the lemma pool")
    p.set_defaults(func=cmd_theorems)

    p = sub.add_parser("approx", parents=[common], help="integer pseudocodeword matrix for a rational cone point")
    p.add_argument("matrix")
    p.add_argument("point")
    p.add_argument("--eps", default="0")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("fixture", parents=[common], help="print a built-in fixture as JSON")
    p.add_argument("name")
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for key, default in (("seed", 0), ("budget", DEFAULT_BUDGET), ("format", "text")):
        if not hasattr(args, key):
            setattr(args, key, default)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (BudgetExceeded, BoundExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FieldError, CoverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
