"""The `sbsyz` command line.

Exit status: 0 on success, 1 on parse/validation errors, 2 when a claim check fails.
"""
from __future__ import annotations

import argparse
import inspect
import json
import sys
from datetime import datetime, timezone

from . import draw
from .algebra import TYPE_B, build_algebra
from .dsl import load_presentation
from .dsl import render as render_dsl
from .errors import SbsyzError
from .family import build_lambda
from .findim import CLAIMS, findim_scan, verify_claim
from .linrep import Field, check_syzygy
from .syzygy import PdimEngine, _mult_json, syzygy_band, syzygy_string
from .words import (BandDatum, check_word, format_phi, parse_band,
                    parse_phi, parse_word, serialize_word, check_band)


class UsageError(SbsyzError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- inputs -----------------------------------------------------------------

def _algebra(args):
    if getattr(args, "algebra", None):
        return build_algebra(load_presentation(args.algebra))
    if getattr(args, "m", None) and getattr(args, "r", None):
        return build_algebra(build_lambda(args.m, args.r))
    raise UsageError("give --algebra FILE, or --m and --r for the built-in family")


def _word(a, args):
    if args.word_file:
        with open(args.word_file, encoding="utf-8") as fh:
            text = " ".join(line.split("#", 1)[0].strip() for line in fh)
    else:
        text = args.word
    w = parse_word(text.strip(), a.quiver)
    check_word(a, w)
    return w


def _band(a, args):
    phi = parse_phi(args.phi) if args.phi else None
    b = parse_band(args.band, a.quiver, m=args.mult, phi=phi)
    check_band(a, b)
    return b


def _module(a, args):
    given = [x for x in (args.word or args.word_file, args.band, args.vertex) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --word/--word-file, --band or --vertex")
    if args.vertex:
        if args.vertex not in a.quiver.vertices:
            raise UsageError(f"unknown vertex {args.vertex!r}")
        return args.vertex
    if args.band:
        return _band(a, args)
    return _word(a, args)


# -- outputs ----------------------------------------------------------------

def _emit(args, payload, text=None, dot=None):
    fmt = args.format
    if fmt == "json":
        if args.stamp:
            payload = dict(payload, generated_at=datetime.now(timezone.utc).isoformat())
        out = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    elif fmt == "dot":
        if dot is None:
            raise UsageError("this command has no DOT output")
        out = dot
    else:
        out = text if text is not None else json.dumps(payload, indent=2) + "\n"
        if args.stamp:
            out = f"# generated {datetime.now(timezone.utc).isoformat()}\n" + out
    target = getattr(args, "out", None)
    if target:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _result_json(res):
    return {"strings": [{"word": serialize_word(w), "multiplicity": _mult_json(k)}
                        for w, k in res.strings],
            "projectives": [{"vertex": v, "multiplicity": _mult_json(k)} for v, k in res.projectives],
            "band": None if res.band is None else
            {"word": str(res.band), "m": res.band.m, "phi": format_phi(res.band.phi)}}


def _result_text(res):
    lines = []
    for w, k in res.strings:
        lines.append(f"string  {serialize_word(w)}" + ("" if k == 1 else f"  x{_mult_json(k)}"))
    if res.band is not None:
        lines.append(f"band    {res.band}  m={res.band.m}  phi={format_phi(res.band.phi)}")
    for v, k in res.projectives:
        lines.append(f"proj    P({v})" + ("" if k == 1 else f"  x{_mult_json(k)}"))
    return "\n".join(lines or ["0"]) + "\n"


def _module_name(m):
    if isinstance(m, str):
        return f"P({m})"
    if isinstance(m, BandDatum):
        return f"band {m}"
    return serialize_word(m)


# -- commands ---------------------------------------------------------------

def cmd_check(args):
    a = _algebra(args)
    kinds = {v: a.shapes[v].kind for v in a.quiver.vertices}
    payload = {"algebra": a.name, "ok": True,
               "vertices": len(a.quiver.vertices), "arrows": len(a.quiver.arrows),
               "relations": len(a.presentation.relations), "dimension": a.dimension(),
               "nilpotency": a.nilpotency,
               "type_b_vertices": sorted(v for v, k in kinds.items() if k == TYPE_B)}
    text = (f"{a.name}: special biserial, admissible\n"
            f"  {payload['vertices']} vertices, {payload['arrows']} arrows, "
            f"{payload['relations']} relations\n"
            f"  dimension {payload['dimension']}, radical length {a.nilpotency}\n"
            f"  type B projectives: {' '.join(payload['type_b_vertices']) or '-'}\n")
    _emit(args, payload, text)


def cmd_syllables(args):
    a = _algebra(args)
    syl = [p for p in a.syllables if not p.is_trivial]
    names = ["*".join(p.arrows) for p in syl]
    _emit(args, {"algebra": a.name, "syllables": names}, "\n".join(names) + "\n")


def cmd_projectives(args):
    a = _algebra(args)
    shapes = [a.shapes[v] for v in a.quiver.vertices]
    payload = {"algebra": a.name, "projectives": [
        {"vertex": s.vertex, "type": s.kind,
         "branch1": list(s.branch1.arrows), "branch2": list(s.branch2.arrows),
         "socle_scalar": None if s.socle_scalar is None else str(s.socle_scalar)}
        for s in shapes]}
    _emit(args, payload, draw.projectives_ascii(a), draw.projectives_dot(a))


def _syzygy_common(args, a, module, res):
    payload = {"algebra": a.name, "module": _module_name(module), "syzygy": _result_json(res)}
    if args.verify:
        field = Field.parse(args.field)
        payload["oracle"] = {"field": args.field, "isomorphic": check_syzygy(a, module, res, field)}
    text = _result_text(res)
    if args.verify:
        text += f"oracle ({args.field}): {'isomorphic' if payload['oracle']['isomorphic'] else 'MISMATCH'}\n"
    _emit(args, payload, text, draw.chain_dot(a, [module], depth=1))
    if args.verify and not payload["oracle"]["isomorphic"]:
        return 2
    return 0


def cmd_string_syzygy(args):
    a = _algebra(args)
    if not (args.word or args.word_file):
        raise UsageError("string-syzygy needs --word or --word-file")
    w = _word(a, args)
    if args.verify and not w.is_finite:
        raise UsageError("--verify needs a finite word")
    return _syzygy_common(args, a, w, syzygy_string(a, w))


def cmd_band_syzygy(args):
    a = _algebra(args)
    if not args.band:
        raise UsageError("band-syzygy needs --band")
    b = _band(a, args)
    return _syzygy_common(args, a, b, syzygy_band(a, b))


def cmd_pdim(args):
    a = _algebra(args)
    module = _module(a, args)
    v = PdimEngine(a, args.depth).pdim(module)
    payload = dict({"algebra": a.name, "module": _module_name(module)}, **v.to_json())
    text = f"{_module_name(module)}\npdim {v}\n"
    if v.kind == "infinite":
        w, d1, d2 = v.certificate
        text += f"certificate: {w} recurs at depths {d1} and {d2}\n"
    elif v.kind == "unknown":
        text += f"depth cap {v.depth_cap} reached\n"
    else:
        for i, layer in enumerate(v.chain):
            parts = [m + ("" if k == 1 else f" x{_mult_json(k)}") for m, k in layer]
            text += f"  syzygy {i}: {' + '.join(parts)}\n"
    _emit(args, payload, text, draw.chain_dot(a, [module], args.depth))


def cmd_findim(args):
    a = _algebra(args)
    rep = findim_scan(a, args.max_len, args.depth, args.jobs, include_bands=not args.no_bands)
    _emit(args, rep.to_json(), rep.to_text())


def cmd_family(args):
    if not (args.m and args.r):
        raise UsageError("family needs --m and --r")
    p = build_lambda(args.m, args.r)
    if args.format == "dot":
        a = build_algebra(p)
        _emit(args, {}, None, draw.projectives_dot(a))
    elif args.format == "json":
        _emit(args, {"name": p.name, "dsl": render_dsl(p)})
    else:
        _emit(args, {}, render_dsl(p))


def cmd_reproduce(args):
    offered = {"L": args.max_len, "depth": args.depth,
               "jobs": args.jobs if args.jobs > 1 else None,
               "m_max": args.m, "ms": (args.m,) if args.m else None}
    accepted = inspect.signature(CLAIMS[args.claim]).parameters
    bounds = {k: v for k, v in offered.items() if v is not None and k in accepted}
    rep = verify_claim(args.claim, args.r, **bounds)
    _emit(args, rep.to_json(), rep.to_text())
    return 0 if rep.ok else 2


def cmd_render(args):
    a = _algebra(args)
    module = _module(a, args)
    if isinstance(module, str):
        shape = a.shapes[module]
        text, dot = draw.projective_ascii(a, shape), draw.projective_dot(a, shape)
    else:
        text = draw.string_ascii(a, module, args.periods)
        dot = draw.string_dot(a, module, args.periods)
    if args.format == "json":
        raise UsageError("render supports text and dot")
    _emit(args, {}, text, dot)


# -- parser -----------------------------------------------------------------

def build_parser():
    ap = _Parser(prog="sbsyz",
                                 description="Strings, bands and syzygies over special biserial algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", metavar="FILE", help="algebra in the presentation DSL")
    common.add_argument("--m", type=int, help="family level m (with --r, instead of --algebra)")
    common.add_argument("--r", type=int, help="family parameter r")
    common.add_argument("--format", choices=("json", "text", "dot"), default="text")
    common.add_argument("--stamp", action="store_true", help="add a timestamp to the output")
    common.add_argument("--out", metavar="FILE", help="write output to FILE")

    mod = argparse.ArgumentParser(add_help=False)
    mod.add_argument("--word", metavar="S")
    mod.add_argument("--word-file", metavar="F")
    mod.add_argument("--band", metavar="S")
    mod.add_argument("--mult", type=int, default=1)
    mod.add_argument("--phi", metavar="c1,..,cm", help="write --phi=-1,1 when c1 is negative")
    mod.add_argument("--vertex", metavar="V", help="the indecomposable projective at V")

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--verify", action="store_true", help="cross-check with linear algebra")
    oracle.add_argument("--field", default="Q", help="Q or Fp:p (default Q)")

    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("check", parents=[common], help="validate an algebra").set_defaults(fn=cmd_check)
    sub.add_parser("syllables", parents=[common], help="list syllables").set_defaults(fn=cmd_syllables)
    sub.add_parser("projectives", parents=[common],
                   help="graphs of the indecomposable projectives").set_defaults(fn=cmd_projectives)
    sub.add_parser("string-syzygy", parents=[common, mod, oracle],
                   help="first syzygy of a string module").set_defaults(fn=cmd_string_syzygy)
    sub.add_parser("band-syzygy", parents=[common, mod, oracle],
                   help="first syzygy of a band module").set_defaults(fn=cmd_band_syzygy)
    p = sub.add_parser("pdim", parents=[common, mod], help="projective dimension")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(fn=cmd_pdim)
    p = sub.add_parser("findim", parents=[common], help="scan strings and bands for finite pdims")
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-bands", action="store_true")
    p.set_defaults(fn=cmd_findim)
    sub.add_parser("family", parents=[common],
                   help="emit the presentation of Lambda_m").set_defaults(fn=cmd_family)
    p = sub.add_parser("reproduce", parents=[common], help="run a claim verifier")
    p.add_argument("--claim", choices=tuple(CLAIMS), required=True)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_reproduce)
    p = sub.add_parser("render", parents=[common, mod], help="draw a string, band or projective")
    p.add_argument("--periods", type=int, default=2)
    p.set_defaults(fn=cmd_render)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "reproduce" and args.r is None:
        print("error: reproduce needs --r", file=sys.stderr)
        return 1
    try:
        code = args.fn(args)
    except (SbsyzError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
