"""Command-line front end.

Exit codes: 0 ok, 1 validation failed, 2 input error, 3 internal invariant
violation.  Output is deterministic: JSON keys are sorted and cells come
in canonical order.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from . import io
from .acyclic import order_complex
from .arrangements import complement_subposet, enumerate_faces, enumerate_higher_faces, salvetti
from .complexes import DeltaSet, HomologyResult, deltaset_homology
from .errors import InputError, InvalidStructure, InvariantViolation
from .graphconf import abrams_complex, conf_face_category, subdivide_graph, unordered_quotient
from .strata import FIXTURES, barycentric_subdivision, fixture, validate_css

EXIT = {"ok": 0, "validation-failed": 1, "input-error": 2, "invariant-violation": 3}


@dataclass
class CommandResult:
    status: str
    payload: Any
    text: str
    fmt: str = "text"
    out: str | None = None

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]

    def render(self) -> str:
        return io.dumps(self.payload) if self.fmt == "json" else self.text.rstrip("\n") + "\n"


def _read(path: str | None, stdin) -> Any:
    if path in (None, "-"):
        text = (stdin or sys.stdin).read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return io.loads(text)


def _homology_text(h: HomologyResult) -> str:
    betti = " ".join(str(b) for b in h.betti)
    torsion = " ".join(",".join(str(t) for t in tors) or "-" for tors in h.torsion)
    return f"betti: {betti}\ntorsion: {torsion}\nH = {h.describe()}"


def _counts_text(label: str, counts) -> str:
    return f"{label}: " + " ".join(str(c) for c in counts)


def _sd_text(d: DeltaSet) -> str:
    lines = [_counts_text("cells", d.counts())]
    for n, layer in enumerate(d.cells):
        for c in layer:
            fs = d.faces.get(c, ())
            lines.append(f"[{n}] {c}" + (" : " + " ; ".join(fs) if fs else ""))
    return "\n".join(lines)


# -- subcommands --------------------------------------------------------------


def cmd_validate(args, stdin) -> CommandResult:
    s = io.css_from_json(_read(args.css, stdin))
    report = validate_css(s, closed_mode=args.closed)
    return CommandResult("ok" if report.ok else "validation-failed", report.to_json(), str(report))


def cmd_sd(args, stdin) -> CommandResult:
    s = io.css_from_json(_read(args.css, stdin))
    d = barycentric_subdivision(s)
    return CommandResult("ok", io.deltaset_to_json(d), _sd_text(d))


def cmd_homology(args, stdin) -> CommandResult:
    if args.deltaset is not None:
        d = io.deltaset_from_json(_read(args.deltaset, stdin))
    else:
        d = barycentric_subdivision(io.css_from_json(_read(args.css, stdin)))
    h = deltaset_homology(d)
    return CommandResult("ok", io.homology_to_json(h), _homology_text(h))


def cmd_salvetti(args, stdin) -> CommandResult:
    a = io.arrangement_from_json(_read(args.arrangement, stdin))
    if args.order < 2:
        raise InputError("--order must be at least 2")
    if args.poset_only:
        cp = complement_subposet(enumerate_higher_faces(a, args.order))
        h = deltaset_homology(order_complex(cp.poset))
        payload = {"poset": io.face_poset_to_json(cp), "homology": io.homology_to_json(h)}
        text = _counts_text("complement faces by dim", [f"{k}:{v}" for k, v in cp.dim_counts().items()])
        return CommandResult("ok", payload, text + "\n" + _homology_text(h))
    d = salvetti(a, args.order)
    h = deltaset_homology(d)
    payload = {"cells": list(d.counts()), "deltaset": io.deltaset_to_json(d), "homology": io.homology_to_json(h)}
    return CommandResult("ok", payload, _counts_text("cells", d.counts()) + "\n" + _homology_text(h))


def cmd_faces(args, stdin) -> CommandResult:
    a = io.arrangement_from_json(_read(args.arrangement, stdin))
    if args.order < 1:
        raise InputError("--order must be at least 1")
    fp = enumerate_faces(a) if args.order == 1 else enumerate_higher_faces(a, args.order)
    lines = [_counts_text("faces by dim", [f"{k}:{v}" for k, v in fp.dim_counts().items()])]
    lines += [f"{f.label} dim={f.dim}" for f in fp.faces]
    return CommandResult("ok", io.face_poset_to_json(fp), "\n".join(lines))


def cmd_conf(args, stdin) -> CommandResult:
    g = io.graph_from_json(_read(args.graph, stdin))
    if args.k < 1:
        raise InputError("-k must be positive")
    model = conf_face_category(g, args.k)
    d = unordered_quotient(model) if args.unordered else barycentric_subdivision(model)
    h = deltaset_homology(d)
    payload = {
        "model_cells": list(model.f_vector()),
        "sd_cells": list(d.counts()),
        "sd": io.deltaset_to_json(d),
        "homology": io.homology_to_json(h),
    }
    text = "\n".join(
        [_counts_text("model cells", model.f_vector()), _counts_text("sd cells", d.counts()), _homology_text(h)]
    )
    return CommandResult("ok", payload, text)


def cmd_abrams(args, stdin) -> CommandResult:
    g = io.graph_from_json(_read(args.graph, stdin))
    if args.k < 1:
        raise InputError("-k must be positive")
    n = args.subdivide if args.subdivide is not None else args.k + 1
    cx = abrams_complex(subdivide_graph(g, n), args.k, ordered=not args.unordered)
    h = deltaset_homology(order_complex(cx.poset))
    payload = {"subdivide": n, "cells": list(cx.f_vector()), "poset": io.graded_poset_to_json(cx), "homology": io.homology_to_json(h)}
    text = "\n".join([f"subdivide: {n}", _counts_text("cells", cx.f_vector()), _homology_text(h)])
    return CommandResult("ok", payload, text)


def cmd_fixture(args, stdin) -> CommandResult:
    payload = io.css_to_json(fixture(args.name))
    return CommandResult("ok", payload, io.dumps(payload))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to a file")

    parser = argparse.ArgumentParser(prog="cellstrat", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a CSS")
    p.add_argument("css", nargs="?", default="-")
    p.add_argument("--closed", action="store_true", help="also check purity, diamonds and sphericity")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sd", parents=[common], help="barycentric subdivision as a Delta-set")
    p.add_argument("css", nargs="?", default="-")
    p.set_defaults(func=cmd_sd)

    p = sub.add_parser("homology", parents=[common], help="integral homology")
    p.add_argument("css", nargs="?", default="-")
    p.add_argument("--deltaset", help="read a Delta-set instead of a CSS")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("salvetti", parents=[common], help="higher order Salvetti complex")
    p.add_argument("--arrangement", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--poset-only", action="store_true")
    p.set_defaults(func=cmd_salvetti)

    p = sub.add_parser("faces", parents=[common], help="face poset of an arrangement")
    p.add_argument("--arrangement", required=True)
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("conf", parents=[common], help="configuration space model of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--unordered", action="store_true")
    p.set_defaults(func=cmd_conf)

    p = sub.add_parser("abrams", parents=[common], help="Abrams discretized model (oracle)")
    p.add_argument("--graph", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--subdivide", type=int, help="edge subdivision factor (default k+1)")
    p.add_argument("--unordered", action="store_true")
    p.set_defaults(func=cmd_abrams)

    p = sub.add_parser("fixture", parents=[common], help="emit a built-in CSS fixture")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.set_defaults(func=cmd_fixture)
    return parser


def run(argv: Sequence[str], stdin=None) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return CommandResult("ok" if exc.code == 0 else "input-error", None, "")
    try:
        result = args.func(args, stdin)
    except InputError as exc:
        result = CommandResult("input-error", {"error": str(exc)}, f"input error: {exc}")
    except InvalidStructure as exc:
        violations = exc.report.to_json() if exc.report is not None else []
        result = CommandResult("validation-failed", {"error": str(exc).splitlines()[0], "violations": violations}, str(exc))
    except InvariantViolation as exc:
        result = CommandResult("invariant-violation", {"error": str(exc)}, f"INTERNAL INVARIANT VIOLATED: {exc}")
    result.fmt = getattr(args, "format", "text")
    result.out = getattr(args, "out", None)
    return result


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = run(argv)
    if result.payload is None and result.text == "":
        return result.exit_code
    out = result.render()
    if result.status == "invariant-violation":
        sys.stderr.write(result.text + "\n")
    if result.out:
        Path(result.out).write_text(out)
    else:
        sys.stdout.write(out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
