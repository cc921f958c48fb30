"""JSON command-line interface.

Exit codes: 0 success, 1 validation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import linalg as la
from .core import (
    AlgebraError,
    build,
    center,
    derived_series,
    dump_algebra,
    is_nilpotent,
    is_solvable,
    load_algebra,
    lower_central_series,
)
from .forms import form_radical, is_semisimple, killing_gram
from .maps import LinearMap, MapError, derivation_space, exp_nilpotent, is_derivation
from .roots import RootError, root_decomposition
from .twolocal import (
    Certificate,
    NonadditivityWitness,
    PairWitness,
    TwoLocalError,
    automorphism_from_derivation,
    certify_two_local,
    derivation_from_coefficients,
    make_counterexample,
    verdict_for,
)

SCHEMA_VERSION = "1"


class InputError(Exception):
    pass


class ValidationFailure(Exception):
    pass


def _s(x) -> str:
    return str(Fraction(x))


def _vec(v) -> list:
    return [_s(x) for x in v]


def _mat(m) -> list:
    return [_vec(row) for row in m]


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def _algebra(args):
    builder, path = args.builder, args.file
    if args.algebra:
        # an existing path wins; otherwise the value is read as a builder spec
        if Path(args.algebra).is_file() or ":" not in args.algebra:
            path = args.algebra
        else:
            builder = args.algebra
    try:
        if builder:
            return build(builder)
        return load_algebra(_read_json(path))
    except (AlgebraError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _parse_matrix(doc):
    try:
        return LinearMap(tuple(tuple(Fraction(x) for x in row) for row in doc))
    except (TypeError, ValueError, ZeroDivisionError, MapError) as exc:
        raise InputError(f"invalid matrix: {exc}") from None


# -- subcommands ------------------------------------------------------------


def cmd_build(args):
    return dump_algebra(_algebra(args))


def cmd_analyze(args):
    L = _algebra(args)
    nil = is_nilpotent(L)
    sol = is_solvable(L)
    return {
        "dim": L.dim,
        "semisimple": is_semisimple(L),
        "nilpotent": nil.holds,
        "center_dim": center(L).dim,
        "solvable": sol.holds,
        "nilpotency_index": nil.index,
        "solvability_index": sol.index,
        "derived_series_dims": [s.dim for s in derived_series(L)],
        "lower_central_series_dims": [s.dim for s in lower_central_series(L)],
    }


def cmd_killing(args):
    L = _algebra(args)
    return {
        "gram": _mat(killing_gram(L)),
        "semisimple": is_semisimple(L),
        "radical_dim": form_radical(L).dim,
    }


def cmd_roots(args):
    L = _algebra(args)
    try:
        datum = root_decomposition(L)
    except RootError as exc:
        raise InputError(str(exc)) from None
    return {
        "cartan": [_vec(h) for h in datum.cartan_basis],
        "roots": [
            {"values": _vec(r.values), "vector": _vec(r.vector), "vector_index": r.vector_index}
            for r in datum.roots
        ],
        "positive": list(datum.positive),
        "simple": list(datum.simple),
        "d": _vec(datum.d),
        "q": _vec(datum.q),
    }


def cmd_derivations(args):
    L = _algebra(args)
    basis = derivation_space(L)
    out = {"dim": len(basis)}
    if args.basis:
        out["basis"] = [_mat(D.matrix) for D in basis]
    return out


def cmd_exp(args):
    L = _algebra(args)
    D = _parse_matrix(_read_json(args.map))
    if D.dim != L.dim:
        raise InputError(f"map is {D.dim}x{D.dim} but the algebra has dimension {L.dim}")
    try:
        phi = exp_nilpotent(L, D)
    except MapError as exc:
        raise ValidationFailure(str(exc)) from None
    return {"matrix": _mat(phi.matrix), "automorphism": True}


def _certificate_doc(L, setup, cert: Certificate) -> dict:
    nw = cert.nonadditivity_witness
    return {
        "algebra": dump_algebra(L),
        "setup": {
            "z": _vec(setup.z),
            "complement_indices": list(setup.complement_indices),
            "f": "default",
        },
        "pairs": [
            {"x": _vec(w.x), "y": _vec(w.y), "a": _s(w.a), "b": _s(w.b), "verified": True}
            for w in cert.pair_witnesses
        ],
        "failures": [{"x": _vec(p.x), "y": _vec(p.y), "reason": p.reason} for p in cert.failures],
        "nonadditivity": None
        if nw is None
        else {"x": _vec(nw.x), "y": _vec(nw.y), "defect": _vec(nw.defect)},
        "verdict": cert.verdict,
    }


def cmd_counterexample(args):
    L = _algebra(args)
    try:
        setup, delta = make_counterexample(L)
    except TwoLocalError as exc:
        raise InputError(str(exc)) from None
    cert = certify_two_local(L, delta, n_pairs=args.pairs, seed=args.seed)
    doc = _certificate_doc(L, setup, cert)
    if not cert.revalidate(L, delta) or cert.failures:
        raise ValidationFailure("certificate did not re-validate", doc)
    return doc


def cmd_certify(args):
    doc = _read_json(args.certificate)
    try:
        L = load_algebra(doc["algebra"])
        setup, delta = make_counterexample(L)
        stored = doc["setup"]
        pairs = doc["pairs"]
        verdict = doc["verdict"]
        nonadd = doc.get("nonadditivity")
    except (KeyError, TypeError, AlgebraError, TwoLocalError) as exc:
        raise InputError(f"malformed certificate: {exc}") from None
    problems = []
    if _vec(setup.z) != stored.get("z") or list(setup.complement_indices) != stored.get(
        "complement_indices"
    ):
        problems.append("setup does not match the algebra")
    checked = 0
    for k, rec in enumerate(pairs):
        try:
            x, y = la.vec(rec["x"]), la.vec(rec["y"])
            a, b = Fraction(rec["a"]), Fraction(rec["b"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed pair record {k}: {exc}") from None
        D = derivation_from_coefficients(setup, a, b)
        if not is_derivation(L, D):
            problems.append(f"pair {k}: D is not a derivation")
            continue
        w = PairWitness(x, y, automorphism_from_derivation(L, D), "automorphism", a, b)
        report = w.validate(L, delta)
        if not report:
            problems.append(f"pair {k}: {report.reason}")
            continue
        checked += 1
    refuted = False
    if nonadd is not None:
        nw = NonadditivityWitness(la.vec(nonadd["x"]), la.vec(nonadd["y"]), la.vec(nonadd["defect"]))
        refuted = nw.recheck(delta)
        if not refuted:
            problems.append("nonadditivity witness does not re-verify")
    expected = verdict_for(not doc.get("failures") and not problems, refuted)
    if expected != verdict:
        problems.append(f"verdict {verdict!r} does not match re-validation ({expected!r})")
    out = {"valid": not problems, "pairs_checked": checked, "verdict": verdict, "problems": problems}
    if problems:
        raise ValidationFailure("certificate failed re-validation", out)
    return out


COMMANDS = {
    "build": cmd_build,
    "analyze": cmd_analyze,
    "killing": cmd_killing,
    "roots": cmd_roots,
    "derivations": cmd_derivations,
    "exp": cmd_exp,
    "counterexample": cmd_counterexample,
    "certify": cmd_certify,
}


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lie2local", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_source(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--builder", help="name:param, e.g. sl:3, heisenberg:2, filiform:5, abelian:4")
        src.add_argument("--file", help="algebra JSON document")
        src.add_argument("--algebra", help="either a builder spec or a path to an algebra document")
        p.add_argument("--output", help="write JSON here instead of stdout")
        return p

    with_source(sub.add_parser("build", help="emit an algebra document"))
    with_source(sub.add_parser("analyze", help="structural summary"))
    with_source(sub.add_parser("killing", help="Killing Gram matrix and Cartan criterion"))
    with_source(sub.add_parser("roots", help="root-space decomposition"))
    p = with_source(sub.add_parser("derivations", help="dimension (and basis) of Der(L)"))
    p.add_argument("--basis", action="store_true", help="include a basis dump")
    p = with_source(sub.add_parser("exp", help="exponentiate a nilpotent derivation"))
    p.add_argument("--map", required=True, help="JSON matrix of fraction strings")
    p = with_source(sub.add_parser("counterexample", help="certify the non-linear 2-local automorphism"))
    p.add_argument("--seed", type=_positive_int, default=7)
    p.add_argument("--pairs", type=_positive_int, default=1000)
    p = sub.add_parser("certify", help="re-validate a stored certificate")
    p.add_argument("certificate")
    p.add_argument("--output")
    return parser


def _emit(doc, output):
    text = json.dumps({"schema_version": SCHEMA_VERSION, **doc}, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        doc = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationFailure as exc:
        print(f"validation failure: {exc.args[0]}", file=sys.stderr)
        if len(exc.args) > 1:
            _emit(exc.args[1], args.output)
        return 1
    _emit(doc, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
