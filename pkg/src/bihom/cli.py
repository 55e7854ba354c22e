"""Command line interface: ``bihom check | construct | gen``.

Exit codes: 0 the suite passes (or the command succeeded), 1 an identity
fails, 2 usage, parse, validation or construction error, 3 internal
invariant violation.  Dimensions above 64 are refused; the dense
structure-constant representation is not meant for them.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import constructions as C
from . import identities as I
from .core import DEFAULT_MAX_WITNESSES, CheckReport, InvalidBundle
from .families import gen_nilpotent, gen_truncated_poly, gen_zero
from .fileformat import AlgebraFile, ParseError, dumps, load
from .linalg import DimMismatch, Singular, as_matrix, fixed_subspace, format_rational, mat_pow, to_rational

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2
EXIT_INTERNAL = 3

MAX_DIM = 64

# which bundle each suite reads from the file
_SUITE_BUNDLE = {
    "bihom-assoc": "one",
    "bihom-comm": "one",
    "bihom-novikov": "star",
    "bhnp-compat": "star",
    "bhnp": "star",
    "bihom-lie": "bracket",
    "bihom-leibniz": "bracket",
    "bihom-poisson": "bracket",
    "left-bihom-assoc": "star",
    "classical-np": "star",
}

CONSTRUCTIONS = (
    "yau-twist", "twist-power", "tensor", "perturb-mu", "perturb-thm1", "perturb-thm2",
    "perturb-double", "derivation-bhnp", "derivation-perturbed", "bracket",
)

_ERRORS = (
    ParseError, InvalidBundle, DimMismatch, Singular, I.PrereqFailed, I.NotClassical,
    C.NotFixed, C.NotMorphism, C.MapsDontCommute, C.NotCommutativeAssociative, C.NotDerivation,
)


class SuiteInapplicable(ValueError):
    pass


class UsageError(ValueError):
    pass


# -- reports ---------------------------------------------------------------------


def _fmt_vec(v) -> str:
    return "[" + ", ".join(format_rational(x) for x in v) + "]"


def format_text(rep: CheckReport, depth: int = 0) -> list[str]:
    pad = "  " * depth
    verdict = "pass" if rep.passed else "FAIL"
    head = f"{pad}{rep.identity_name}: {verdict}"
    lines = [head]
    if rep.parts:
        for p in rep.parts:
            lines.extend(format_text(p, depth + 1))
        return lines
    if rep.witnesses:
        lines[0] += f" ({len(rep.witnesses)}{'+' if rep.truncated else ''} witnesses)"
        for w in rep.witnesses:
            lines.append(f"{pad}  {tuple(w.indices)} residual {_fmt_vec(w.residual)}")
    return lines


def render(rep: CheckReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep.to_dict(), indent=2) + "\n"
    return "\n".join(format_text(rep)) + "\n"


# -- helpers -----------------------------------------------------------------------


def _load(path: str) -> AlgebraFile:
    f = load(path)
    if f.dim > MAX_DIM:
        raise UsageError(f"{path}: dimension {f.dim} exceeds the supported maximum {MAX_DIM}")
    return f


def _bundle_for(f: AlgebraFile, kind: str):
    if kind == "one":
        return f.one_product()
    if kind == "star":
        if f.star is None:
            raise SuiteInapplicable("suite needs a 'star' product in the file")
        return f.two_product()
    if f.bracket is None:
        raise SuiteInapplicable("suite needs a 'bracket' in the file")
    return f.bracket_algebra()


def _parse_element(text: Optional[str], f: AlgebraFile, power: int, flag: str) -> np.ndarray:
    if text is None:
        raise UsageError(f"{flag} is required for this construction")
    if text == "auto":
        fixed = fixed_subspace([mat_pow(f.alpha, power), mat_pow(f.beta, power)])
        if not fixed:
            raise C.NotFixed(f"no nonzero element with alpha^{power}(a) = beta^{power}(a) = a")
        return fixed[0]
    try:
        vals = [to_rational(s.strip()) for s in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: {exc}") from None
    if len(vals) != f.dim:
        raise UsageError(f"{flag}: expected {f.dim} comma-separated rationals, got {len(vals)}")
    return np.array(vals, dtype=object)


def _parse_matrix(text: Optional[str], flag: str) -> np.ndarray:
    if text is None:
        raise UsageError(f"{flag} is required for this construction")
    try:
        return as_matrix(json.loads(text))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{flag}: expected a JSON row-major square matrix ({exc})") from None


def _raw_ingredients(f: AlgebraFile):
    if f.derivation is None or f.star is not None:
        raise UsageError("derivation constructions take a raw file: mu, alpha, beta, derivation and no star")
    return f.mu, f.alpha, f.beta, f.derivation


def construct(kind: str, files: list[AlgebraFile], args):
    """Run one construction.

    Returns the bundle, its parameters, any derivation to carry along and
    the check the construction guarantees to pass.
    """
    f = files[0]
    params: dict = {}
    derivation = None
    promised = I.check_bhnp_full
    if kind == "yau-twist":
        ta, tb = _parse_matrix(args.ta, "--ta"), _parse_matrix(args.tb, "--tb")
        out = C.yau_twist(f.two_product(), ta, tb)
        params = {"ta": [[format_rational(v) for v in r] for r in ta], "tb": [[format_rational(v) for v in r] for r in tb]}
    elif kind == "twist-power":
        if args.n is None or args.n < 0:
            raise UsageError("--n must be a non-negative integer")
        out = C.yau_twist_power(f.two_product(), args.n)
        params = {"n": args.n}
    elif kind == "tensor":
        out = C.tensor_product(f.two_product(), files[1].two_product())
    elif kind == "perturb-mu":
        A = f.one_product()
        a = _parse_element(args.element, f, 2, "--element")
        out = C.perturb_mu(A, a)
        promised = lambda B: C.perturb_mu_guarantee(A, B)  # noqa: E731
        params = {"a": [format_rational(v) for v in a]}
    elif kind in ("perturb-thm1", "perturb-thm2"):
        a = _parse_element(args.element, f, 2, "--element")
        build = C.perturb_thm1 if kind == "perturb-thm1" else C.perturb_thm2
        out = build(f.two_product(), a)
        params = {"a": [format_rational(v) for v in a]}
    elif kind == "perturb-double":
        a = _parse_element(args.element, f, 2, "--element")
        b = _parse_element(args.element_b, f, 4, "--element-b")
        out = C.perturb_double(f.two_product(), a, b)
        params = {"a": [format_rational(v) for v in a], "b": [format_rational(v) for v in b]}
    elif kind == "derivation-bhnp":
        mu, alpha, beta, D = _raw_ingredients(f)
        out = C.derivation_bhnp(mu, alpha, beta, D)
        derivation = D
    elif kind == "derivation-perturbed":
        mu, alpha, beta, D = _raw_ingredients(f)
        a = _parse_element(args.element, f, 2, "--element")
        b = _parse_element(args.element_b, f, 4, "--element-b")
        out = C.derivation_perturbed(mu, alpha, beta, D, a, b)
        params = {"a": [format_rational(v) for v in a], "b": [format_rational(v) for v in b]}
        derivation = D
    elif kind == "bracket":
        A = f.two_product()
        out = C.commutator_bracket(A)
        promised = I.check_bihom_lie
    else:  # argparse restricts choices
        raise UsageError(f"unknown construction {kind}")
    return out, params, derivation, promised


# -- commands --------------------------------------------------------------------


def cmd_check(args) -> int:
    f = _load(args.file)
    A = _bundle_for(f, _SUITE_BUNDLE[args.suite])
    rep = I.run_suite(args.suite, A, max_witnesses=args.max_witnesses)
    sys.stdout.write(render(rep, args.format))
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_construct(args) -> int:
    needed = 2 if args.kind == "tensor" else 1
    if len(args.inputs) != needed:
        raise UsageError(f"{args.kind} takes {needed} input file(s), got {len(args.inputs)}")
    files = [_load(p) for p in args.inputs]
    out, params, derivation, promised = construct(args.kind, files, args)
    if out.dim > MAX_DIM:
        raise UsageError(f"output dimension {out.dim} exceeds the supported maximum {MAX_DIM}")
    prov = {"construction": args.kind, "inputs": list(args.inputs), "params": params}
    result = AlgebraFile.from_bundle(out, derivation=derivation, provenance=prov)
    if args.kind == "bracket":
        result.star = files[0].star
    text = dumps(result)
    if args.verify:
        rep = promised(out)
        if not rep.passed:
            sys.stderr.write(render(rep, "text"))
            return EXIT_FAIL
    _write(text, args.output)
    return EXIT_PASS


def cmd_gen(args) -> int:
    if args.family == "zero":
        n = 0 if args.n is None else args.n
        if n < 0:
            raise UsageError("--n must be non-negative")
        if n > MAX_DIM:
            raise UsageError(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
        f = AlgebraFile.from_bundle(gen_zero(n), provenance={"family": "zero", "params": {"n": n}})
        _write(dumps(f), args.output)
        return EXIT_PASS
    a, b = _rational_arg(args.a, "--a"), _rational_arg(args.b, "--b")
    if args.family == "truncated-poly":
        if args.n is None or args.n < 1:
            raise UsageError("truncated-poly needs --n >= 1")
        size = {"n": args.n}
        mu, alpha, beta, D = gen_truncated_poly(args.n, a, b)
    else:
        if args.m is None or args.m < 1:
            raise UsageError("nilpotent needs --m >= 1")
        size = {"m": args.m}
        mu, alpha, beta, D = gen_nilpotent(args.m, a, b)
    if mu.dim > MAX_DIM:
        raise UsageError(f"dimension {mu.dim} exceeds the supported maximum {MAX_DIM}")
    prov = {"family": args.family, "params": {**size, "a": format_rational(a), "b": format_rational(b)}, "raw": args.raw}
    if args.raw:
        f = AlgebraFile(dim=mu.dim, mu=mu, alpha=alpha, beta=beta, derivation=D, provenance=prov)
    else:
        f = AlgebraFile.from_bundle(C.derivation_bhnp(mu, alpha, beta, D), derivation=D, provenance=prov)
    _write(dumps(f), args.output)
    return EXIT_PASS


def _rational_arg(s: str, flag: str):
    try:
        return to_rational(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: not a rational: {s!r}") from None


def _write(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bihom",
        description="Check identities of and build BiHom-Novikov-Poisson algebras given by structure constants "
        f"(dimension <= {MAX_DIM}).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run an identity suite on an algebra file")
    c.add_argument("file")
    c.add_argument("suite", choices=sorted(I.SUITES))
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--max-witnesses", type=int, default=DEFAULT_MAX_WITNESSES)
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("construct", help="build a new algebra file from existing ones")
    k.add_argument("kind", choices=CONSTRUCTIONS)
    k.add_argument("inputs", nargs="+")
    k.add_argument("--element", help="perturbation element: 'auto' or comma-separated rationals")
    k.add_argument("--element-b", help="second element for perturb-double / derivation-perturbed")
    k.add_argument("--ta", help="JSON matrix for yau-twist")
    k.add_argument("--tb", help="JSON matrix for yau-twist")
    k.add_argument("--n", type=int, help="power for twist-power")
    k.add_argument("--verify", action="store_true", help="also run the suite the construction guarantees")
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_construct)

    g = sub.add_parser("gen", help="emit an example family")
    g.add_argument("family", choices=("truncated-poly", "nilpotent", "zero"))
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--a", default="1", help="scale of alpha (x -> a x)")
    g.add_argument("--b", default="1", help="scale of beta (x -> b x)")
    g.add_argument("--raw", action="store_true",
                   help="emit mu, alpha, beta, D only (input for the derivation constructions)")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except I.InvariantViolation as exc:
        sys.stderr.write(f"error: invariant-violation: {exc}\n")
        return EXIT_INTERNAL
    except C.ConstructionFailed as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    except (SuiteInapplicable, UsageError) + _ERRORS as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
