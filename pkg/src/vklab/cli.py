"""Command-line front end.

Every command prints a plain-text run report: a ``# vklab ...`` echo line,
one ``input`` line per file with its SHA-256 digest, the results and a
final ``exit <code>`` line.  Reports are byte-identical for identical
inputs and flags.

Exit codes: 0 ok, 2 numeric failure, 3 validation refusal, 4 parse or
input error.  ``VKLAB_MAX_COSETS`` overrides the default coset bound.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import shlex
import sys
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .braid import HalfTwistPath
from .btilde import (
    ACTION_VARIANTS,
    G0Element,
    default_quadrangles,
    prime_check,
    quadrangle_check,
    solvable_series_report,
    verify_action_well_defined,
)
from .errors import ParseError, TrackingError, TransversalityError
from .galois import galois_group, parse_sheets
from .monodromy import parse_bmf, validate
from .presentation import abelianization, tietze_simplify, todd_coxeter, verify_hom
from .tracker import PlaneCurve, parse_loop, track_braid
from .vankampen import affine_presentation, format_gp, parse_gp, projective_presentation

__all__ = ["main", "RunReport", "bundled_path", "default_max_cosets"]

OK, NUMERIC, REFUSED, PARSE = 0, 2, 3, 4
DEFAULT_MAX_COSETS = 100_000


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunReport:
    command: str
    inputs: list[tuple[str, str]] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)
    status: int = OK

    def add_input(self, name: str, data: bytes) -> None:
        self.inputs.append((name, hashlib.sha256(data).hexdigest()))

    def render(self) -> str:
        out = [f"# vklab {self.command}"]
        out += [f"input {name} sha256:{digest}" for name, digest in self.inputs]
        out += self.lines
        out.append(f"exit {self.status}")
        return "\n".join(out) + "\n"


def default_max_cosets() -> int:
    raw = os.environ.get("VKLAB_MAX_COSETS")
    if raw is None:
        return DEFAULT_MAX_COSETS
    try:
        value = int(raw)
    except ValueError:
        raise CommandError(PARSE, f"VKLAB_MAX_COSETS={raw!r} is not an integer") from None
    if value < 1:
        raise CommandError(PARSE, "VKLAB_MAX_COSETS must be positive")
    return value


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("vklab") / "data" / name))


def _read(report: RunReport, name: str) -> str:
    """Read ``name``, falling back to the bundled data directory."""
    path = Path(name)
    if not path.exists() and not path.parent.parts:
        path = bundled_path(name)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CommandError(PARSE, f"cannot read {name}: {exc.strerror}") from None
    report.add_input(name, data)
    return data.decode()


# -- commands -----------------------------------------------------------------

def cmd_track(args, report: RunReport) -> None:
    try:
        curve = PlaneCurve.parse(args.curve)
        loop = parse_loop(args.loop)
    except ValueError as exc:  # ParseError included
        raise CommandError(PARSE, str(exc)) from None
    try:
        word = track_braid(curve, loop, tol=args.tol, max_step=args.max_step)
    except TrackingError as exc:
        raise CommandError(NUMERIC, str(exc)) from None
    except ValueError as exc:
        raise CommandError(REFUSED, str(exc)) from None
    report.lines.append(str(word) if word.letters else "(empty word)")
    report.lines.append(f"strands {word.strands} length {len(word)}")


def cmd_vk(args, report: RunReport) -> None:
    text = _read(report, args.bmf)
    try:
        fac = parse_bmf(text, args.bmf)
    except ParseError as exc:
        raise CommandError(PARSE, f"{args.bmf}: {exc}") from None
    report.lines += ["validation " + line for line in validate(fac).lines()]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pres = affine_presentation(fac, args.mode)
    report.lines += [f"warning {w.message}" for w in caught]
    if args.projective:
        try:
            pres = projective_presentation(pres, fac)
        except TransversalityError as exc:
            raise CommandError(REFUSED, f"projectivization refused: {exc}") from None
    out = Path(args.output) if args.output else Path(Path(args.bmf).stem + ".gp")
    gp = format_gp(pres)
    out.write_text(gp)
    report.lines.append(f"wrote {out}")
    report.lines += gp.rstrip("\n").splitlines()
    report.lines.append(f"abelianization {abelianization(pres)}")


def cmd_analyze(args, report: RunReport) -> None:
    text = _read(report, args.gp)
    try:
        pres = parse_gp(text)
    except ParseError as exc:
        raise CommandError(PARSE, f"{args.gp}: {exc}") from None
    report.lines.append(f"presentation generators {pres.generators} relators {len(pres.relators)}")
    if args.abel:
        report.lines.append(f"abelianization {abelianization(pres)}")
    if args.tietze:
        simp = tietze_simplify(pres)
        report.lines.append(f"tietze generators {simp.generators} relators {len(simp.relators)}"
                            + (" not_minimal" if simp.not_minimal else ""))
        report.lines += [f"tietze_rel {r}" for r in simp.relators]
    if args.coset is not None:
        table = todd_coxeter(pres, (), args.coset)
        if table.complete:
            report.lines.append(f"cosets {table.index}")
        else:
            report.lines.append(f"cosets indeterminate (bound {args.coset})")
    if args.hom:
        try:
            sheets = parse_sheets(_read(report, args.hom))
        except ParseError as exc:
            raise CommandError(PARSE, f"{args.hom}: {exc}") from None
        if len(sheets.images) != pres.generators:
            raise CommandError(REFUSED, f"{len(sheets.images)} images for {pres.generators} generators")
        hom = verify_hom(pres, sheets.images)
        report.lines.append(f"hom {'holds' if hom.holds else 'fails'} transitive {str(hom.transitive).lower()}")
        report.lines += [f"hom_failing_relator {k}" for k in hom.failing]
        if not hom.holds:
            report.status = REFUSED


def cmd_galois(args, report: RunReport) -> None:
    gp_text = _read(report, args.gp)
    sheet_text = _read(report, args.sheets)
    try:
        pres = parse_gp(gp_text)
        sheets = parse_sheets(sheet_text)
    except ParseError as exc:
        raise CommandError(PARSE, str(exc)) from None
    bound = args.max if args.max is not None else default_max_cosets()
    try:
        result = galois_group(pres, sheets, bound)
    except ValueError as exc:
        raise CommandError(REFUSED, f"sheet assignment rejected: {exc}") from None
    report.lines.append(f"max_cosets {bound}")
    report.lines += result.lines()


def cmd_btilde(args, report: RunReport) -> None:
    n, variant = args.n, args.variant
    report.lines.append(f"n {n} variant {variant}")
    failed = False
    run_all = not (args.verify_action or args.quadrangle or args.prime or args.series)
    if args.verify_action or run_all:
        rep = verify_action_well_defined(n, variant=variant)
        report.lines += rep.lines()
        failed |= not rep.passed
    if args.quadrangle or run_all:
        for quad in default_quadrangles(n):
            rep = quadrangle_check(*quad, variant=variant)
            report.lines += rep.lines()
            failed |= not rep.passed
    if args.prime or run_all:
        k = args.prime_index
        if not 1 <= k < n:
            raise CommandError(PARSE, f"--prime-index must lie in 1..{n - 1}")
        rep = prime_check(G0Element.u(n, k), HalfTwistPath.frame(n, k), G0Element.central(n), variant=variant)
        report.lines.append(f"prime_candidate u{k} on {HalfTwistPath.frame(n, k)}")
        report.lines += [line.replace("check ", "verdict ", 1) for line in rep.lines()]
    if args.series or run_all:
        report.lines += solvable_series_report(n, variant).lines()
    report.lines.append(f"summary {'FAIL' if failed else 'PASS'}")
    if failed:
        report.status = REFUSED


# -- bundled examples -----------------------------------------------------------

def _example_checks() -> dict[str, list[tuple[str, object]]]:
    """Name -> (description, predicate on the parsed object) pairs."""
    def vk_abel(name, mode="full", projective=False):
        fac = parse_bmf(bundled_path(name).read_text(), name)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pres = affine_presentation(fac, mode)
        if projective:
            pres = projective_presentation(pres, fac)
        return str(abelianization(pres))

    def refused(name):
        fac = parse_bmf(bundled_path(name).read_text(), name)
        try:
            projective_presentation(affine_presentation(fac), fac)
        except TransversalityError:
            return True
        return False

    def cubic_validation():
        rep = validate(parse_bmf(bundled_path("cubic_surface.bmf").read_text()))
        return (rep.product_is_full_twist and rep.transitive and rep.exponent_sum_actual == 30
                and dict(rep.counts) == {"cusp": 6, "branch": 12})

    def cubic_galois():
        pres = parse_gp(bundled_path("cubic.gp").read_text())
        sheets = parse_sheets(bundled_path("cubic.sheets").read_text())
        res = galois_group(pres, sheets, 5000)
        return res.quotient_order == 6 and res.trivial is True

    def cusp_tietze():
        pres = parse_gp(bundled_path("cusp.gp").read_text())
        simp = tietze_simplify(pres)
        return simp.generators == 2 and len(simp.relators) == 1 and len(simp.relators[0]) == 6

    return {
        "branch.bmf": [("affine abelianization Z", lambda: vk_abel("branch.bmf") == "Z"),
                       ("shortcut abelianization Z", lambda: vk_abel("branch.bmf", "shortcut") == "Z"),
                       ("projectivization refused", lambda: refused("branch.bmf"))],
        "node.bmf": [("affine abelianization Z^2", lambda: vk_abel("node.bmf") == "Z^2"),
                     ("shortcut abelianization Z^2", lambda: vk_abel("node.bmf", "shortcut") == "Z^2")],
        "cusp.bmf": [("affine abelianization Z", lambda: vk_abel("cusp.bmf") == "Z"),
                     ("shortcut abelianization Z", lambda: vk_abel("cusp.bmf", "shortcut") == "Z"),
                     ("projectivization refused", lambda: refused("cusp.bmf"))],
        "cubic.gp": [("abelianization Z, Tietze to two generators",
                      lambda: str(abelianization(parse_gp(bundled_path("cubic.gp").read_text()))) == "Z"
                      and tietze_simplify(parse_gp(bundled_path("cubic.gp").read_text())).generators == 2)],
        "cusp.gp": [("Tietze form is one braid relator", cusp_tietze)],
        "cubic_surface.bmf": [("validates: full twist, 6 cusps + 12 branch, transitive", cubic_validation),
                              ("affine abelianization Z", lambda: vk_abel("cubic_surface.bmf") == "Z"),
                              ("projective abelianization Z/6",
                               lambda: vk_abel("cubic_surface.bmf", projective=True) == "Z/6")],
        "cubic.sheets": [("Galois cover: quotient order 6, trivial pi1", cubic_galois)],
    }


def cmd_examples(args, report: RunReport) -> None:
    checks = _example_checks()
    for name in sorted(checks):
        report.add_input(name, bundled_path(name).read_bytes())
    if not args.run_all:
        report.lines += [f"example {name}" for name in sorted(checks)]
        return
    failed = False
    for name in sorted(checks):
        for desc, pred in checks[name]:
            try:
                ok = bool(pred())
            except Exception as exc:  # report, do not abort the batch
                ok, desc = False, f"{desc} ({type(exc).__name__}: {exc})"
            failed |= not ok
            report.lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {desc}")
    if failed:
        report.status = REFUSED


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors are parse errors, not argparse's default exit 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vklab", description="Braid monodromy and Van Kampen toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("track", help="braid of a curve's fiber over a loop")
    p.add_argument("curve", help='polynomial in x, y, monic in y, e.g. "y^2 - x^3"')
    p.add_argument("loop", nargs="+", help="circle u=1 r=1 [center=c] | polyline v0 v1 ...")
    p.add_argument("--tol", type=float, default=1e-9, help="minimum step and clearance")
    p.add_argument("--max-step", type=float, default=1 / 64, help="global step bound in loop time")
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("vk", help="Van Kampen presentation from a .bmf file")
    p.add_argument("bmf")
    p.add_argument("--projective", action="store_true")
    p.add_argument("--mode", choices=("full", "shortcut"), default="full")
    p.add_argument("-o", "--output", help="output .gp path (default: <stem>.gp)")
    p.set_defaults(func=cmd_vk)

    p = sub.add_parser("analyze", help="analyze a .gp presentation")
    p.add_argument("gp")
    p.add_argument("--abel", action="store_true", help="abelian invariants")
    p.add_argument("--tietze", action="store_true", help="simplify")
    p.add_argument("--coset", type=int, metavar="N", help="enumerate cosets of 1 up to N")
    p.add_argument("--hom", metavar="FILE", help="check a sheet assignment file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("galois", help="fundamental group of the Galois cover")
    p.add_argument("gp")
    p.add_argument("sheets")
    p.add_argument("--max", type=int, help="coset bound (default $VKLAB_MAX_COSETS or 100000)")
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("btilde", help="checks in B~_n and G_0(n)")
    p.add_argument("--verify-action", action="store_true")
    p.add_argument("--quadrangle", action="store_true")
    p.add_argument("--prime", action="store_true")
    p.add_argument("--series", action="store_true", help="solvable series record")
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--variant", choices=ACTION_VARIANTS, default="literal")
    p.add_argument("--prime-index", type=int, default=3)
    p.set_defaults(func=cmd_btilde)

    p = sub.add_parser("examples", help="list or check the bundled examples")
    p.add_argument("--run-all", action="store_true")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    report = RunReport(shlex.join(argv))
    try:
        args.func(args, report)
    except CommandError as exc:
        report.lines.append("error " + " ".join(str(exc).split()))
        report.status = exc.code
    sys.stdout.write(report.render())
    return report.status


if __name__ == "__main__":
    sys.exit(main())
