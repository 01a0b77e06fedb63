"""Command line front end.

Three modes: ``resonance`` prints the per-degree resonant and reduced monomial
sets, ``gphnf`` normalizes a perturbed system, ``gnf`` additionally reduces
the result to the resonant coefficient set.  Input is either a system
document (--input) or one of the built-in family presets with a seeded random
perturbation.  Output is deterministic byte for byte for a given invocation.

Exit codes: 0 success, 1 validation problem, 2 parse problem, 3 violated
internal invariant.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import catalog, parsing
from .normalize import (
    HamiltonianSystem,
    InconsistentSolveError,
    PairPolicy,
    SingularJointSystemError,
    Transformation,
    WitnessNotFoundError,
    build_y_set,
    compute_gphnf,
    random_perturbation,
    reduce_to_gnf,
    verify_conjugacy,
)
from .poly import GradingError, VectorSeries
from .resonance import ResonantSetProvider

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3

_PRESET_TAGS = {
    "takens": "takens-like",
    "lm": "lm-monomial",
    "diag": "diagonal",
    "binom": "binomial",
}


class _UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qhnf",
        description="Exact normal forms of planar quasi-homogeneous systems.",
    )
    p.add_argument("--weight", nargs=2, type=int, metavar=("G1", "G2"),
                   help="expected weight; checked against the system")
    p.add_argument("--chi", type=int, help="expected grading offset; checked")
    p.add_argument("--truncate", type=int, metavar="N",
                   help="truncation degree (required with --preset)")
    p.add_argument("--mode", choices=("resonance", "gphnf", "gnf"),
                   default="gnf")
    p.add_argument("--policy", choices=("zero-first", "zero-second"),
                   default="zero-first",
                   help="which member of each either/or pair is zeroed")
    p.add_argument("--preset", metavar="SPEC",
                   help="takens:m | lm:l,m | diag:m | binom:l,m,sign")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the preset perturbation")
    p.add_argument("--verify", action="store_true",
                   help="independently re-check the conjugacy")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--input", metavar="FILE", help="system document to read")
    p.add_argument("--output", metavar="FILE", help="write here instead of stdout")
    return p


def parse_preset(spec: str) -> catalog.CaseId:
    name, _, rest = spec.partition(":")
    if name not in _PRESET_TAGS:
        raise _UsageError(f"unknown preset {name!r}")
    try:
        nums = [int(x) for x in rest.split(",")] if rest else []
    except ValueError:
        raise _UsageError(f"preset parameters must be integers: {rest!r}")
    tag = _PRESET_TAGS[name]
    if name in ("takens", "diag"):
        if len(nums) != 1:
            raise _UsageError(f"{name} preset needs one parameter m")
        return catalog.CaseId(tag, (nums[0],))
    if name == "lm":
        if len(nums) != 2:
            raise _UsageError("lm preset needs parameters l,m")
        return catalog.CaseId(tag, tuple(nums))
    if len(nums) == 2:
        return catalog.CaseId(tag, tuple(nums))
    if len(nums) != 3 or nums[2] not in (1, -1):
        raise _UsageError("binom preset needs l,m,sign with sign +1 or -1")
    return catalog.CaseId(tag, (nums[0], nums[1]), sign=nums[2])


def load_system(args) -> HamiltonianSystem:
    if args.input and args.preset:
        raise _UsageError("--input and --preset are mutually exclusive")
    if args.input:
        with open(args.input) as fh:
            text = fh.read()
        sys_ = parsing.parse_system(text)
        if args.truncate is not None and args.truncate != sys_.truncation:
            series = parsing.regrade_perturbation(
                sys_.weight, sys_.chi, args.truncate,
                *_raw_perturbation(sys_),
            )
            sys_ = HamiltonianSystem(sys_.weight, sys_.hamiltonian, sys_.chi, series)
    elif args.preset:
        case = parse_preset(args.preset)
        h, w, chi = catalog.unperturbed(case)
        if args.truncate is None:
            raise _UsageError("--preset needs --truncate")
        rng = random.Random(args.seed)
        series = random_perturbation(w, chi, args.truncate, rng)
        sys_ = HamiltonianSystem(w, h, chi, series)
    else:
        raise _UsageError("one of --input or --preset is required")
    if args.weight is not None and tuple(args.weight) != (
        sys_.weight.gamma1, sys_.weight.gamma2
    ):
        raise _UsageError(
            f"--weight {args.weight} does not match the system weight "
            f"({sys_.weight.gamma1}, {sys_.weight.gamma2})"
        )
    if args.chi is not None and args.chi != sys_.chi:
        raise _UsageError(f"--chi {args.chi} does not match the system chi {sys_.chi}")
    return sys_


def _raw_perturbation(sys_: HamiltonianSystem):
    from .poly import Polynomial

    p1, p2 = Polynomial.zero(), Polynomial.zero()
    for term in sys_.perturbation.terms.values():
        p1 = p1 + term.comp1.poly
        p2 = p2 + term.comp2.poly
    return p1, p2


def _fmt_system_text(sys_: HamiltonianSystem, out: list[str]):
    w = sys_.weight
    out.append(f"weight ({w.gamma1}, {w.gamma2})  chi {sys_.chi}  N {sys_.truncation}")
    out.append(f"H = {sys_.hamiltonian.poly.to_string()}")
    for k in sorted(sys_.perturbation.terms):
        t = sys_.perturbation.terms[k]
        out.append(
            f"degree {k}: ({t.comp1.poly.to_string()}, {t.comp2.poly.to_string()})"
        )
    if not sys_.perturbation.terms:
        out.append("perturbation: 0")


def _fmt_system_records(sys_: HamiltonianSystem, out: list[str]):
    w = sys_.weight
    out.append(f"meta weight {w.gamma1} {w.gamma2}")
    out.append(f"meta chi {sys_.chi}")
    out.append(f"meta truncation {sys_.truncation}")
    for (p1, p2), c in sys_.hamiltonian.poly.sorted_terms():
        out.append(f"H {p1} {p2} {c.numerator} {c.denominator}")
    for k in sorted(sys_.perturbation.terms):
        t = sys_.perturbation.terms[k]
        for comp in (1, 2):
            for (p1, p2), c in t.component(comp).poly.sorted_terms():
                out.append(f"term {comp} {p1} {p2} {c.numerator} {c.denominator}")


def _fmt_transformation(tr: Transformation, fmt: str, out: list[str]):
    if fmt == "text":
        out.append(f"transformation: {len(tr)} generator(s)")
        for q in tr.generators:
            out.append(
                f"  gdeg {q.gdeg}: ({q.comp1.poly.to_string()}, {q.comp2.poly.to_string()})"
            )
    else:
        for i, q in enumerate(tr.generators):
            for comp in (1, 2):
                for (p1, p2), c in q.component(comp).poly.sorted_terms():
                    out.append(
                        f"generator {i} {comp} {p1} {p2} {c.numerator} {c.denominator}"
                    )


def run_resonance(sys_: HamiltonianSystem, fmt: str) -> list[str]:
    provider = ResonantSetProvider(sys_.hamiltonian)
    out: list[str] = []
    for k in range(sys_.chi + 1, sys_.truncation + 1):
        plain = provider.choice(k)
        reduced = provider.choice(k, reduced=True)
        if fmt == "text":
            out.append(
                f"degree {k}: resonant {list(plain.monomials)} "
                f"reduced {list(reduced.monomials)}"
            )
        else:
            for (p1, p2) in plain.monomials:
                out.append(f"resonant {k} {p1} {p2}")
            for (p1, p2) in reduced.monomials:
                out.append(f"reduced {k} {p1} {p2}")
    return out


def run_normalize(sys_: HamiltonianSystem, mode: str, policy_name: str,
                  verify: bool, fmt: str) -> list[str]:
    normal, tr, provider = compute_gphnf(sys_)
    if mode == "gnf":
        y_set = build_y_set(sys_.hamiltonian, provider, sys_.truncation)
        policy = PairPolicy(default=policy_name)
        normal, tr2 = reduce_to_gnf(normal, y_set, policy)
        tr = tr.extend(tr2)
    out: list[str] = []
    if fmt == "text":
        _fmt_system_text(normal, out)
    else:
        _fmt_system_records(normal, out)
    _fmt_transformation(tr, fmt, out)
    if verify:
        report = verify_conjugacy(sys_, tr, normal)
        if not report.ok:
            raise InconsistentSolveError(
                f"conjugacy check failed at degrees {sorted(report.residuals)}"
            )
        out.append("verify ok" if fmt == "records" else "conjugacy verified exactly")
    return out


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sys_ = load_system(args)
        if args.mode == "resonance":
            lines = run_resonance(sys_, args.format)
        else:
            lines = run_normalize(sys_, args.mode, args.policy, args.verify, args.format)
    except parsing.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InconsistentSolveError, SingularJointSystemError,
            WitnessNotFoundError, GradingError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (_UsageError, parsing.ValidationError, catalog.InvalidParamsError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    text = "\n".join(lines) + "\n"
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
