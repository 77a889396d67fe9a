"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .comparison import chain_map_check, is_retract_pair, page_morphism, validate_b
from .complex import MaurerCartanError, StructureError, assemble, check_action_order, diagnose
from .dga import CapOverflow, cobar, homology_dims
from .library import builtin_coalgebras, builtin_systems
from .reports import consequences
from .serre import TwistingError, serre_pages
from .spectral import PageSet, compare_up_to_translation, compute_pages

OK, FAIL, BAD_INPUT = 0, 1, 2


class Output:
    """Collects the human text and the JSON document of one command."""

    def __init__(self, json_target: str | None):
        self.json_target = json_target
        self.data: dict = {}

    def say(self, text: str = ""):
        # with --json on stdout the text goes to stderr so stdout stays parseable
        stream = sys.stderr if self.json_target == "-" else sys.stdout
        print(text, file=stream)

    def finish(self, code: int) -> int:
        if self.json_target is not None:
            self.data["exit_code"] = code
            text = io.dump(self.data, None if self.json_target == "-" else self.json_target)
            if self.json_target == "-":
                print(text)
        return code


def _system(path, cap, rings=None, check=True):
    return io.system_from_json(io.read_json(path), cap, rings, check=check)


def _print_pages(out: Output, pages: PageSet, r_min: int = 1):
    for r in range(r_min, pages.r_max + 1):
        out.say(pages.table(r))
        out.say()
    nz = pages.nonzero_differentials()
    if nz:
        out.say("nonzero certified differentials (r, p, q, rank):")
        for t in nz:
            out.say(f"  d^{t[0]} from ({t[1]},{t[2]}) rank {t[3]}")
    else:
        out.say("no nonzero certified differentials")


# ------------------------------------------------------------------ commands


def cmd_check(args, out: Output) -> int:
    system = _system(args.path, args.cap, check=False)
    stage, msg = diagnose(system)
    out.data["stage_failed"] = stage
    out.data["message"] = msg
    if stage is not None:
        out.say(f"FAIL ({stage}): {msg}")
        return FAIL
    fc = assemble(system, args.cap)
    d2 = fc.d_squared_failures()
    filt = fc.filtration_violations()
    out.data.update(
        {
            "generators": len(system.generators),
            "entries": len(system.entries),
            "d_squared_failures": d2,
            "filtration_violations": len(filt),
            "action_order": check_action_order(system).ok,
        }
    )
    out.say(f"{len(system.generators)} generators, {len(system.entries)} nonzero entries")
    out.say("Maurer-Cartan identity: ok")
    out.say(f"d^2 = 0 up to degree {args.cap}: {'ok' if not d2 else f'fails in {d2}'}")
    out.say(f"filtration preserved: {'ok' if not filt else f'{len(filt)} violations'}")
    return OK if not d2 and not filt else FAIL


def cmd_pages(args, out: Output) -> int:
    system = _system(args.path, args.cap)
    pages = compute_pages(assemble(system, args.cap), args.rmax)
    out.data["pages"] = pages.to_json()
    _print_pages(out, pages)
    return OK


def cmd_serre(args, out: Output) -> int:
    c = io.coalgebra_from_json(io.read_json(args.path))
    pages = serre_pages(c, args.cap, args.rmax)
    out.data["pages"] = pages.to_json()
    _print_pages(out, pages, r_min=2)
    return OK


def _pages_of(path, args) -> PageSet:
    data = io.read_json(path)
    kind = io.detect_kind(data)
    if kind == "pages":
        return io.pages_from_json(data)
    if kind == "coalgebra":
        c = io.coalgebra_from_json(data)
        return serre_pages(c, args.cap, args.rmax)
    system = io.system_from_json(data, args.cap)
    return compute_pages(assemble(system, args.cap), args.rmax)


def cmd_compare(args, out: Output) -> int:
    a, b = _pages_of(args.a, args), _pages_of(args.b, args)
    k = compare_up_to_translation(a, b, args.rmin)
    out.data["shift"] = k
    out.say("no match" if k is None else f"match with shift {k}")
    return OK if k is not None else FAIL


def cmd_morphism(args, out: Output) -> int:
    rings = io.RingCache()
    src = _system(args.source, args.cap, rings)
    tgt = _system(args.target, args.cap, rings)
    cd = io.comparison_from_json(io.read_json(args.b), src, tgt)
    report = validate_b(cd)
    chain = chain_map_check(cd, args.cap)
    out.say(str(report))
    out.say(str(chain))
    out.data.update(
        {
            "validate_b": report.ok,
            "b_failures": [[f.source, f.target] for f in report.failures],
            "chain_map": chain.ok,
            "failing_degrees": chain.failing_degrees,
        }
    )
    ok = report.ok and chain.ok
    if ok:
        pm = page_morphism(cd, args.cap, args.rmax)
        out.data["page_maps_commute"] = pm.ok
        out.data["page_maps_injective"] = pm.injective(args.rmin)
        out.say(f"induced page maps commute with d^r: {pm.ok}")
        out.say(f"induced page maps injective for r >= {args.rmin}: {pm.injective(args.rmin)}")
        ok = pm.ok
    if args.back:
        g = io.comparison_from_json(io.read_json(args.back), tgt, src)
        back = validate_b(g)
        out.data["back_validate_b"] = back.ok
        if not back.ok:
            out.say("back morphism: " + str(back))
        retract = back.ok and is_retract_pair(cd, g)
        out.data["retract"] = retract
        out.say(f"composite is unitriangular (retract detected): {retract}")
        ok = ok and retract
    return OK if ok else FAIL


def cmd_consequences(args, out: Output) -> int:
    system = _system(args.path, args.cap)
    rep = consequences(system, args.cap, args.rmax)
    out.data.update(rep.to_json())
    out.say(str(rep))
    return OK


def cmd_cobar(args, out: Output) -> int:
    c = io.coalgebra_from_json(io.read_json(args.path))
    dims = homology_dims(cobar(c, args.cap), args.cap)
    out.data["homology"] = {str(q): d for q, d in dims}
    out.say("q   dim H_q")
    for q, d in dims:
        out.say(f"{q:<3} {d}")
    return OK


def cmd_export(args, out: Output) -> int:
    systems = builtin_systems(args.cap)
    coalgebras = builtin_coalgebras()
    if args.coalgebra:
        if args.name not in coalgebras:
            raise io.InputError(f"unknown coalgebra {args.name!r}; choose from {sorted(coalgebras)}")
        doc = io.coalgebra_to_json(coalgebras[args.name])
    else:
        if args.name not in systems:
            raise io.InputError(f"unknown example {args.name!r}; choose from {sorted(systems)}")
        doc = io.system_to_json(systems[args.name])
    text = io.dump(doc, args.out)
    if args.out is None:
        print(text)
    else:
        out.say(f"wrote {args.out}")
    return OK


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="floerloop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, paths=(), rmax=False, rmin=False):
        p = sub.add_parser(name, help=help)
        for path in paths:
            p.add_argument(path)
        p.add_argument("--cap", type=int, default=12, help="top total degree (default 12)")
        if rmax:
            p.add_argument("--rmax", type=int, default=None, help="last page (default: filtration width + 1)")
        if rmin:
            p.add_argument("--rmin", type=int, default=2, help="first page compared (default 2)")
        p.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH", help="also write JSON (stdout if no PATH)")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "validate a system file", ["path"])
    add("pages", cmd_pages, "spectral sequence pages of a system", ["path"], rmax=True)
    add("serre", cmd_serre, "Serre pages of the path-loop fibration over a coalgebra", ["path"], rmax=True)
    add("compare", cmd_compare, "compare two page sets up to translation", ["a", "b"], rmax=True, rmin=True)
    m = add("morphism", cmd_morphism, "check a comparison matrix B", ["source", "target", "b"], rmax=True, rmin=True)
    m.add_argument("--back", default=None, help="B file of a morphism target -> source, to test for a retract")
    add("consequences", cmd_consequences, "report algebraic consequences", ["path"], rmax=True)
    add("cobar", cmd_cobar, "homology of the cobar construction", ["path"])
    e = add("export", cmd_export, "write a built-in example as JSON", ["name"])
    e.add_argument("out", nargs="?", default=None)
    e.add_argument("--coalgebra", action="store_true", help="export a built-in coalgebra instead")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    if args.cap < 0:
        out.say("error: --cap must be non-negative")
        return out.finish(BAD_INPUT)
    try:
        code = args.func(args, out)
    except MaurerCartanError as e:
        out.say(f"FAIL: {e}")
        out.data["error"] = str(e)
        code = FAIL
    except (io.InputError, StructureError, CapOverflow, TwistingError, ValueError) as e:
        kind = type(e).__name__
        out.say(f"error ({kind}): {e}")
        out.data["error"] = f"{kind}: {e}"
        code = BAD_INPUT
    return out.finish(code)


if __name__ == "__main__":
    sys.exit(main())
