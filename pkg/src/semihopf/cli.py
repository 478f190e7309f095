"""Command-line interface: parse declarations, dispatch to the kernel,
emit deterministic reports.

Exit codes: 0 all checks pass; 1 law violation (witnesses in the report);
2 usage or syntax error; 3 resource cap exceeded; 4 unresolved reference;
5 dimension mismatch.  Reports on stdout are byte-identical across runs;
timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources

from .errors import (
    DegreeOverflowError,
    MalformedInputError,
    ParameterError,
    PreconditionError,
    ResourceCapError,
    SemihopfError,
    UnsupportedStructureError,
)
from .report import ValidationReport
from .semiring import DEFAULT_CAP, check_semiring
from .semimodule import check_semimodule
from .tensor import tensor
from .monoidal import check_bimonoid, check_comonoid, check_hopf, check_monoid
from .abelian import abelian_reflection, inv
from .lie import check_lie, lie_of_monoid
from .tensor_algebra import check_graded_laws, truncated_tensor_algebra
from .envelope import (
    check_lie_embedding,
    check_quotient_compatibility,
    enveloping,
    stability_check,
)
from .primitives import adjunction_check, primitives
from . import algfile

EXIT_OK = 0
EXIT_LAW = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_REFERENCE = 4
EXIT_DIMENSION = 5


class Output:
    """Accumulates one report as sections of lines; renders text or json."""

    def __init__(self, command: str):
        self.command = command
        self.sections: list[tuple[str, list[str]]] = []
        self.failed = False

    def section(self, title: str, lines) -> None:
        self.sections.append((title, [str(x) for x in lines]))

    def add_report(self, rep: ValidationReport) -> None:
        self.section(rep.subject, rep.lines()[1:])
        if not rep.valid:
            self.failed = True

    def render(self, fmt: str) -> str:
        if fmt == "json":
            payload = {
                "command": self.command,
                "result": "violation" if self.failed else "pass",
                "sections": [{"title": t, "lines": ls} for t, ls in self.sections],
            }
            return json.dumps(payload, sort_keys=True, indent=2) + "\n"
        out = [f"command: {self.command}"]
        for title, lines in self.sections:
            out.append(title)
            out.extend("  " + ln for ln in lines)
        out.append(f"result: {'violation' if self.failed else 'all-pass'}")
        return "\n".join(out) + "\n"


def load_environment(paths, cap: int, include_builtin: bool = True) -> algfile.AlgebraFile:
    af = algfile.AlgebraFile()
    if include_builtin:
        data = resources.files("semihopf").joinpath("data")
        for entry in sorted(p.name for p in data.iterdir() if p.name.endswith(".alg")):
            af = af.merged_with(algfile.parse_text(data.joinpath(entry).read_text("utf-8"), cap))
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            af = af.merged_with(algfile.parse_text(fh.read(), cap))
    return af


def _lookup(af: algfile.AlgebraFile, name: str, kinds: tuple[str, ...] | None = None):
    try:
        block = af.lookup(name)
    except KeyError:
        raise algfile.AlgReferenceError(0, f"no declared object named {name!r}") from None
    if kinds and block.kind not in kinds:
        raise algfile.AlgReferenceError(
            0, f"{name!r} is a {block.kind}; expected one of: {', '.join(kinds)}"
        )
    return block


def _module_of(block):
    return block.obj if block.kind == "semimodule" else block.obj.carrier


def cmd_check_laws(af, name: str, out: Output, cap: int) -> None:
    block = _lookup(af, name)
    obj = block.obj
    if block.kind == "semiring":
        out.add_report(check_semiring(obj))
    elif block.kind == "semimodule":
        out.add_report(check_semimodule(obj))
    elif block.kind == "monoid":
        out.add_report(check_semimodule(obj.carrier))
        out.add_report(check_monoid(obj))
    elif block.kind == "lie":
        out.add_report(check_semimodule(obj.carrier))
        out.add_report(check_lie(obj))
    elif block.kind in ("comonoid", "bimonoid", "hopf"):
        out.add_report(check_semimodule(obj.carrier))
        if block.kind == "comonoid":
            out.add_report(check_comonoid(obj, cap))
        else:
            out.add_report(check_monoid(obj.monoid))
            out.add_report(check_comonoid(obj.comonoid, cap))
            out.add_report(check_bimonoid(obj))
            if block.kind == "hopf":
                out.add_report(check_hopf(obj))
    else:  # pragma: no cover
        raise algfile.AlgReferenceError(0, f"cannot check laws of a {block.kind}")


def cmd_tensor(af, a_name: str, b_name: str, out: Output, cap: int) -> None:
    a = _module_of(_lookup(af, a_name, ("semimodule",)))
    b = _module_of(_lookup(af, b_name, ("semimodule",)))
    t = tensor(a, b, cap)
    out.section(f"tensor {a_name} (x) {b_name}", [
        f"carrier size: {t.object.size}",
        "generators (a, b) -> a (x) b:",
    ])
    rows = []
    for i in a.elements():
        for j in b.elements():
            rows.append(
                f"  {a.element_name(i)} (x) {b.element_name(j)} = "
                f"{t.object.element_name(t.univ(i, j))}"
            )
    out.section("generator table", rows)
    out.add_report(t.univ.check())
    gen = ValidationReport("generation")
    gen.record("pure tensors generate the carrier", t.check_generation(), ())
    out.add_report(gen)


def cmd_inv(af, name: str, out: Output) -> None:
    mod = _module_of(_lookup(af, name, ("semimodule",)))
    sub = inv(mod)
    out.section(f"invertible elements of {name}", [
        "Inv = {" + ", ".join(mod.element_name(x) for x in sub.members) + "}",
        f"size: {len(sub.members)} of {mod.size}",
    ])


def cmd_abelianize(af, name: str, out: Output, cap: int) -> None:
    mod = _module_of(_lookup(af, name, ("semimodule",)))
    g, r = abelian_reflection(mod, cap)
    out.section(f"abelian reflection of {name}", [
        f"carrier size: {g.size}",
        "reflection map:",
        *(f"  {mod.element_name(x)} -> {g.element_name(r(x))}" for x in mod.elements()),
    ])


def cmd_lie_of_monoid(af, name: str, out: Output) -> None:
    block = _lookup(af, name, ("monoid", "bimonoid", "hopf"))
    mon = block.obj if block.kind == "monoid" else block.obj.monoid
    lie = lie_of_monoid(mon)
    out.section(f"underlying Lie object of {name}", [
        f"carrier: invertible part, size {lie.carrier.size}",
        "bracket table:",
        *(
            "  [" + lie.carrier.element_name(i) + ", " + lie.carrier.element_name(j) + "] = "
            + lie.carrier.element_name(lie(i, j))
            for i in lie.carrier.elements()
            for j in lie.carrier.elements()
        ),
    ])
    out.add_report(check_lie(lie))


def cmd_tensor_algebra(af, name: str, degree: int, out: Output, cap: int) -> None:
    mod = _module_of(_lookup(af, name, ("semimodule",)))
    t = truncated_tensor_algebra(mod, degree, cap, name=f"T<={degree}({name})")
    out.section(f"truncated tensor algebra of {name} at degree {degree}", [
        f"carrier size: {t.carrier.size}",
        "component sizes: " + ", ".join(str(c.size) for c in t.components),
    ])
    out.add_report(check_graded_laws(t))


def cmd_envelope(af, name: str, degree: int, stability: bool, out: Output, cap: int) -> None:
    block = _lookup(af, name, ("lie",))
    e = enveloping(block.obj, degree, cap, name=f"U<={degree}({name})")
    out.section(f"enveloping monoid of {name} at degree {degree}", [
        f"tensor algebra size: {e.algebra.carrier.size}",
        f"quotient size: {e.quotient.size}",
        f"congruence blocks: {e.quotient.size}",
        f"seed relations: {len(e.seeds)}",
    ])
    out.add_report(check_quotient_compatibility(e))
    try:
        out.add_report(check_lie_embedding(e))
    except PreconditionError:
        out.section("degree-1 embedding", ["skipped: Lie carrier is not abelian"])
    if stability:
        out.add_report(stability_check(block.obj, degree, cap))
    else:
        out.section("truncation caveat", [
            f"unchecked assumption: no congruence consequence passes through degree > {degree}",
            "(re-run with --stability-check to probe against the next degree)",
        ])


def cmd_primitives(af, name: str, out: Output) -> None:
    block = _lookup(af, name, ("bimonoid", "hopf"))
    prim = primitives(block.obj)
    carrier = block.obj.carrier
    out.section(f"primitive elements of {name}", [
        "Prim = {" + ", ".join(carrier.element_name(x) for x in prim.members) + "}",
        f"size: {len(prim.members)} of {carrier.size}",
    ])


def cmd_check_adjunction(af, l_name: str, h_name: str, degree: int, out: Output, cap: int) -> None:
    lie = _lookup(af, l_name, ("lie",)).obj
    hopf = _lookup(af, h_name, ("hopf",)).obj
    result = adjunction_check(lie, hopf, degree, cap)
    out.section(f"adjunction data for {l_name} vs {h_name} at degree {degree}", [
        f"Lie morphisms into the primitive bracket: {len(result.lie_morphisms)}",
        f"Hopf morphisms out of the envelope: {len(result.hopf_morphisms)}",
    ])
    out.add_report(result.report)


def cmd_dump(af, names, out: Output) -> None:
    blocks = af.blocks if not names else [_lookup(af, n) for n in names]
    out.section("canonical serialization", algfile.serialize(algfile.AlgebraFile(blocks)).splitlines())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", "-f", action="append", default=None,
                        help="algebra declaration file (may repeat); shipped fixtures always load")
    common.add_argument("--cap", type=int, default=None, help="carrier cap for constructions")
    common.add_argument("--format", choices=("text", "json"), default=None)

    p = argparse.ArgumentParser(
        prog="semihopf",
        description="exact Hopf/Lie computations over finite semimodules",
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common],
                       help="check laws NAME | check adjunction L H --degree d")
    c.add_argument("what", choices=("laws", "adjunction"))
    c.add_argument("names", nargs="+")
    c.add_argument("--degree", type=int, default=2)

    t = sub.add_parser("tensor", parents=[common], help="construct and verify A (x) B")
    t.add_argument("a")
    t.add_argument("b")

    for cmd in ("inv", "abelianize", "primitives", "lie-of-monoid"):
        q = sub.add_parser(cmd, parents=[common])
        q.add_argument("name")

    ta = sub.add_parser("tensor-algebra", parents=[common])
    ta.add_argument("name")
    ta.add_argument("--degree", type=int, required=True)

    env = sub.add_parser("envelope", parents=[common])
    env.add_argument("name")
    env.add_argument("--degree", type=int, required=True)
    env.add_argument("--stability-check", action="store_true")

    d = sub.add_parser("dump", parents=[common],
                       help="canonical serialization of declared objects")
    d.add_argument("names", nargs="*")
    return p


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    start = time.monotonic()
    try:
        af = load_environment(args.file, args.cap)
        if args.command == "check":
            if args.what == "laws":
                if len(args.names) != 1:
                    raise ParameterError("check laws takes exactly one name")
                out = Output(f"check laws {args.names[0]}")
                cmd_check_laws(af, args.names[0], out, args.cap)
            else:
                if len(args.names) != 2:
                    raise ParameterError("check adjunction takes a Lie name and a Hopf name")
                out = Output(
                    f"check adjunction {args.names[0]} {args.names[1]} --degree {args.degree}"
                )
                cmd_check_adjunction(af, args.names[0], args.names[1], args.degree, out, args.cap)
        elif args.command == "tensor":
            out = Output(f"tensor {args.a} {args.b}")
            cmd_tensor(af, args.a, args.b, out, args.cap)
        elif args.command == "inv":
            out = Output(f"inv {args.name}")
            cmd_inv(af, args.name, out)
        elif args.command == "abelianize":
            out = Output(f"abelianize {args.name}")
            cmd_abelianize(af, args.name, out, args.cap)
        elif args.command == "primitives":
            out = Output(f"primitives {args.name}")
            cmd_primitives(af, args.name, out)
        elif args.command == "lie-of-monoid":
            out = Output(f"lie-of-monoid {args.name}")
            cmd_lie_of_monoid(af, args.name, out)
        elif args.command == "tensor-algebra":
            out = Output(f"tensor-algebra {args.name} --degree {args.degree}")
            cmd_tensor_algebra(af, args.name, args.degree, out, args.cap)
        elif args.command == "envelope":
            flags = " --stability-check" if args.stability_check else ""
            out = Output(f"envelope {args.name} --degree {args.degree}{flags}")
            cmd_envelope(af, args.name, args.degree, args.stability_check, out, args.cap)
        else:  # dump
            out = Output("dump" + ("" if not args.names else " " + " ".join(args.names)))
            cmd_dump(af, args.names, out)
    except algfile.AlgSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except algfile.AlgReferenceError as exc:
        print(f"reference error: {exc}", file=sys.stderr)
        return EXIT_REFERENCE
    except algfile.AlgDimensionError as exc:
        print(f"dimension error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except algfile.AlgLawError as exc:
        print(f"law violation during parsing: {exc}", file=sys.stderr)
        return EXIT_LAW
    except ResourceCapError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (MalformedInputError, ParameterError, UnsupportedStructureError,
            PreconditionError, DegreeOverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SemihopfError as exc:  # pragma: no cover - internal consistency traps
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    sys.stdout.write(out.render(args.format))
    print(f"elapsed: {time.monotonic() - start:.3f}s", file=sys.stderr)
    return EXIT_LAW if out.failed else EXIT_OK


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
