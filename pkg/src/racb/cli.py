"""
Command line front end: ``racb <subcommand> --diagram PATH [options]``.

Machine reports are JSON with sorted keys on stdout (or DOT/CSV when asked
for); a one-line human summary goes to stderr.  Exit codes: 0 computed or
verified, 1 a checked property was falsified, 2 usage or input error,
3 an enumeration cap was hit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import automorphism, bounds, coxeter, flex
from .building import BASE, DEFAULT_CHAMBER_CAP, Building, sort_chambers
from .errors import CapExceeded, ConsistencyError, DiagramError, PreconditionError, WordError

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Result:
    """What a subcommand hands back: the report body, optional alternate renderings, and a verdict."""

    def __init__(self, body: dict, summary: str, ok: bool = True, dot: str | None = None,
                 rows: list[list] | None = None, header: list[str] | None = None,
                 code: int | None = None):
        self.body = body
        self.summary = summary
        self.ok = ok
        self.dot = dot
        self.rows = rows
        self.header = header
        self.code = code if code is not None else (EXIT_OK if ok else EXIT_FALSIFIED)


# -- helpers ----------------------------------------------------------------

def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for '{args.command}'")


def _word(d: coxeter.CoxeterDiagram, text: str) -> coxeter.Word:
    word = d.parse_word(text)
    coxeter._require_reduced(d, word)
    return word


def _building(args, d: coxeter.CoxeterDiagram) -> Building:
    return Building(d, cap=args.cap if args.cap is not None else DEFAULT_CHAMBER_CAP)


def _center(args, B: Building):
    return B.parse_chamber(args.center) if args.center else BASE


def _group_cap(args) -> int:
    return args.cap if args.cap is not None else bounds.DEFAULT_CAP


# -- subcommands --------------------------------------------------------------

def cmd_firmness(args, d):
    _require(args, "word")
    word = _word(d, args.word)
    p = coxeter.word_poset(d, word)
    F = coxeter.firmness(d, word)
    body = {
        "F": F,
        "word": d.format_word(word),
        "relations": p.sorted_relations(),
        "i_sets": {str(i): sorted(p.i_set(i)) for i in range(1, len(word) + 1)},
    }
    if word:
        i = coxeter.maximizing_position(d, word)
        witness = coxeter.firm_rearrangement(d, word, i)
        body["witness"] = {"position": i, "word": d.format_word(witness),
                           "firm_prefix": d.format_word(witness[:F])}
    else:
        body["witness"] = None
    return Result(body, f"F#({d.format_word(word) or 'e'}) = {F}")


def cmd_reps(args, d):
    _require(args, "word")
    word = _word(d, args.word)
    reps = sorted(coxeter.enumerate_reps(d, word))
    body = {"word": d.format_word(word), "count": len(reps), "reps": [d.format_word(r) for r in reps]}
    return Result(body, f"{len(reps)} reduced representation(s)",
                  rows=[[d.format_word(r)] for r in reps], header=["rep"])


def cmd_poset(args, d):
    _require(args, "word")
    word = _word(d, args.word)
    p = coxeter.word_poset(d, word)
    rel = p.sorted_relations()
    body = {"word": d.format_word(word), "relations": rel,
            "i_sets": {str(i): sorted(p.i_set(i)) for i in range(1, len(word) + 1)}}
    lines = ["digraph poset {"]
    for i, s in enumerate(word, 1):
        lines.append(f'  p{i} [label="{i}:{d.generators[s]}"];')
    cover = {(i, j) for i, j in rel if not any(p.holds(i, k) and p.holds(k, j) for k in range(i + 1, j))}
    for i, j in sorted(cover):
        lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return Result(body, f"{len(rel)} relation(s) on {len(word)} position(s)",
                  dot="\n".join(lines) + "\n", rows=rel, header=["i", "j"])


def cmd_dn(args, d):
    _require(args, "n")
    res = bounds.find_d(d, args.n, _group_cap(args))
    return Result(res.to_dict(), f"d({res.n}) = {res.d} (checked up to length {res.checked_up_to_length})")


def cmd_fb(args, d):
    _require(args, "b")
    n, seq = bounds.max_bounded_chain_sequence(d, args.b, _group_cap(args))
    body = {"b": args.b, "length": n, "witness": d.format_word(seq.steps)}
    return Result(body, f"f({args.b}) = {n}")


def cmd_kw(args, d):
    _require(args, "word")
    word = _word(d, args.word)
    k = bounds.k_of(d, word, _group_cap(args))
    body = {"word": d.format_word(word), "F": coxeter.firmness(d, word), "k": k}
    return Result(body, f"k({d.format_word(word) or 'e'}) = {k}")


def cmd_ball(args, d):
    _require(args, "radius")
    B = _building(args, d)
    c0 = _center(args, B)
    ball = B.ball(c0, args.radius)
    order = sort_chambers(ball)
    pos = {c: k for k, c in enumerate(order)}
    lines = ["graph ball {"]
    for c in order:
        lines.append(f'  c{pos[c]} [label="{B.format_chamber(c) or "e"}"];')
    for c in order:
        for s in range(d.rank):
            for x in B.panel(c, s):
                if x in pos and pos[c] < pos[x]:
                    lines.append(f'  c{pos[c]} -- c{pos[x]} [label="{d.generators[s]}"];')
    lines.append("}")
    body = {
        "center": B.format_chamber(c0),
        "radius": args.radius,
        "size": len(ball),
        "sphere_sizes": [len(B.sphere(c0, k)) for k in range(args.radius + 1)],
        "chambers": [B.format_chamber(c) for c in order],
    }
    rows = [[B.format_chamber(c), B.distance(c0, c)] for c in order]
    return Result(body, f"|ball| = {len(ball)}", dot="\n".join(lines) + "\n", rows=rows,
                  header=["chamber", "distance"])


def cmd_flex(args, d):
    _require(args, "n", "radius")
    B = _building(args, d)
    c0 = _center(args, B)
    fl = flex.flex_set(B, c0, args.n, args.radius, _group_cap(args))
    order = sort_chambers(fl)
    body = {"center": B.format_chamber(c0), "n": args.n, "radius": args.radius,
            "size": len(fl), "chambers": [B.format_chamber(c) for c in order]}
    rows = [[B.format_chamber(c), B.distance(c0, c)] for c in order]
    return Result(body, f"|Flex| = {len(fl)}", rows=rows, header=["chamber", "distance"])


def cmd_verify_flex(args, d):
    _require(args, "n", "radius")
    B = _building(args, d)
    c0 = _center(args, B)
    rep = flex.verify_flex_theorem(B, c0, args.n, args.radius, _group_cap(args))
    verdict = "holds" if rep.passed else "FALSIFIED"
    return Result(rep.to_dict(), f"square closure vs flex: {verdict} ({rep.flex_size} chambers)", ok=rep.passed)


def cmd_fixedpoint(args, d):
    _require(args, "n", "radius")
    B = _building(args, d)
    c0 = _center(args, B)
    rep = automorphism.verify_fixed_point_theorem(B, c0, args.n, args.radius, _group_cap(args))
    if rep.inapplicable:
        # thin panels admit no permutation moving a chamber while fixing another
        return Result(rep.to_dict(), f"inapplicable: {len(rep.inapplicable)} chamber(s) behind thickness-2 panels",
                      ok=False, code=EXIT_USAGE)
    verdict = "holds" if rep.passed else "FALSIFIED"
    return Result(rep.to_dict(), f"fixed set vs flex: {verdict} ({rep.generator_count} generators)",
                  ok=rep.passed)


def cmd_far_wing(args, d):
    _require(args, "word", "gen", "radius")
    B = _building(args, d)
    c0 = _center(args, B)
    u = _word(d, args.word)
    s = d.index(args.gen)
    e = automorphism.apartment_chamber(B, c0, u)
    holds = automorphism.check_far_wing_fixator(B, c0, args.radius, e, s)
    body = {"panel_gate": B.format_chamber(e), "gen": args.gen, "r": args.radius,
            "root_distance": automorphism.root_distance(d, u, s), "holds": holds}
    return Result(body, f"far wing fixes ball({args.radius}): {holds}", ok=holds)


COMMANDS = {
    "firmness": cmd_firmness,
    "reps": cmd_reps,
    "poset": cmd_poset,
    "dn": cmd_dn,
    "fb": cmd_fb,
    "kw": cmd_kw,
    "ball": cmd_ball,
    "flex": cmd_flex,
    "verify-flex": cmd_verify_flex,
    "fixedpoint": cmd_fixedpoint,
    "far-wing": cmd_far_wing,
}


# -- argument parsing and rendering ----------------------------------------------

def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--diagram", required=True, metavar="PATH", help="diagram JSON document")
    common.add_argument("--word", help="space separated generator names")
    common.add_argument("--center", help="base chamber, e.g. 's:1 t:2' (default: the base chamber)")
    common.add_argument("--gen", help="panel type for far-wing")
    common.add_argument("--n", type=_nonneg)
    common.add_argument("--radius", type=_nonneg)
    common.add_argument("--b", type=_nonneg)
    common.add_argument("--cap", type=_nonneg, help="hard cap on enumerated elements/chambers")
    common.add_argument("--format", choices=["json", "dot", "csv", "text"], default="json")
    common.add_argument("--report", metavar="PATH", help="also write the JSON report here")
    common.add_argument("--threads", type=_nonneg, default=1,
                        help="worker bound; computations currently run in one thread")
    parser = argparse.ArgumentParser(prog="racb", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _params(args) -> dict:
    keys = ["word", "center", "gen", "n", "radius", "b", "cap"]
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def _render(args, result: Result, report: dict) -> str:
    if args.format == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.format == "dot":
        if result.dot is None:
            raise UsageError(f"'{args.command}' has no DOT output")
        return result.dot
    if args.format == "csv":
        if result.rows is None:
            raise UsageError(f"'{args.command}' has no CSV output")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(result.header)
        writer.writerows(result.rows)
        return buf.getvalue()
    return result.summary + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        d = coxeter.load_diagram(args.diagram)
        result = COMMANDS[args.command](args, d)
        report = {
            "command": args.command,
            "diagram": {"path": args.diagram, "digest": d.digest()},
            "params": _params(args),
            "passed": result.ok,
        }
        report.update(result.body)
        out = _render(args, result, report)
    except OSError as exc:
        print(f"racb: cannot read diagram: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DiagramError, WordError, PreconditionError, ValueError) as exc:
        print(f"racb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"racb: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as exc:
        print(f"racb: consistency check failed: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    sys.stdout.write(out)
    if args.format != "text":
        print(result.summary, file=sys.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
