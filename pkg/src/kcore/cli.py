"""``kcore`` command line.

Exit status: 0 on success, 1 when ``verify`` finds a subgroup element in the
sampled normal closure, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .core import CoreComplex, build_core, index, member, trans
from .errors import FiniteIndexError, InfiniteIndexError, InputError
from .groups import FactorGroup
from .kurosh import kurosh_rank
from .monodromy import monodromy
from .oracle import soak
from .separation import intersection_witness, separating_witness
from .words import FreeProduct, format_word


def export_dot(C: CoreComplex) -> str:
    """Graphviz digraph of every defined transition; the base is double-circled."""
    lines = ["digraph core {", "  node [shape=circle];"]
    for v in range(C.vertex_count):
        shape = ' [shape=doublecircle]' if v == C.base else ""
        lines.append(f"  v{v}{shape};")
    for v in range(C.vertex_count):
        for s in C.product.syllables():
            w = trans(C, v, s)
            if w is not None:
                lines.append(f'  v{v} -> v{w} [label="{s}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_groups(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read group file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"group file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or set(data) != {"A", "B"}:
        raise InputError('group file must be an object with exactly the keys "A" and "B"')
    return FactorGroup.from_spec("A", data["A"]), FactorGroup.from_spec("B", data["B"])


def load_core(path) -> CoreComplex:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read core file {path}: {exc.strerror}") from exc
    return CoreComplex.from_json(text)


def _summary(C):
    idx = index(C)
    return f"vertices={C.vertex_count} index={'infinite' if idx is None else idx} krank={kurosh_rank(C).krank}"


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def cmd_build(args, out):
    A, B = load_groups(args.groups)
    P = FreeProduct(A, B)
    C = build_core(A, B, P.parse_list(args.gens))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(C.to_json())
        out.write(_summary(C) + "\n")
    else:
        out.write(C.to_json())
    return 0


def cmd_info(args, out):
    C = load_core(args.core)
    out.write(_summary(C) + "\n")
    out.write(kurosh_rank(C).summary() + "\n")
    return 0


def cmd_member(args, out):
    C = load_core(args.core)
    out.write(("true" if member(C, C.product.parse(args.word)) else "false") + "\n")
    return 0


def cmd_rank(args, out):
    C = load_core(args.core)
    rho = monodromy(C, C.product.parse(args.word))
    pairs = ", ".join(f"({v}, {w})" for v, w in rho.pairs)
    out.write(f"rank={rho.rank} pairs=[{pairs}]\n")
    return 0


def cmd_witness(args, out):
    C = load_core(args.core)
    w = separating_witness(C)
    out.write(
        _dump(
            {
                "g": format_word(w.g),
                "exponent": w.exponent,
                "rebase_conjugator": format_word(w.rebase_conjugator),
                "trace": [[format_word(word), r] for word, r in w.descent_trace],
                "version": __version__,
            }
        )
    )
    return 0


def cmd_intersect(args, out):
    C = load_core(args.core)
    w = intersection_witness(C, C.product.parse(args.word))
    out.write(
        _dump(
            {
                "h": format_word(w.h),
                "expression": [[format_word(c), s] for c, s in w.expression],
                "z": format_word(w.z),
                "power": w.power,
                "version": __version__,
            }
        )
    )
    return 0


def cmd_verify(args, out):
    C = load_core(args.core)
    w = separating_witness(C)
    report = soak(
        C, w.g, args.samples, args.max_conj, args.max_len, args.seed,
        spelling=args.spelling, jobs=args.jobs,
    )
    report = {"g": format_word(w.g), "exponent": w.exponent, **report, "version": __version__}
    out.write(_dump(report))
    if report["violations"]:
        for v in report["violation_recipes"]:
            sys.stderr.write(f"violation: sample {v['sample']} recipe {v['recipe']}\n")
        return 1
    return 0


def cmd_dot(args, out):
    out.write(export_dot(load_core(args.core)))
    return 0


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if n < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 1")
    return n


def _nonneg(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if n < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 0")
    return n


def make_parser():
    parser = argparse.ArgumentParser(prog="kcore", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"kcore {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the core of the subgroup generated by words")
    p.add_argument("--groups", required=True, help="JSON file describing the factors A and B")
    p.add_argument("--gens", required=True, help="generator words separated by ';'")
    p.add_argument("--out", help="write core.json here instead of standard output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("info", help="vertex count, index, and Kurosh rank")
    p.add_argument("core")
    p.set_defaults(func=cmd_info)

    for name, func, helptext in (
        ("member", cmd_member, "is the word in the subgroup?"),
        ("rank", cmd_rank, "monodromy rank and vertex pairs of a word"),
        ("intersect", cmd_intersect, "subgroup element in the normal closure of a word (finite index)"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("core")
        p.add_argument("word")
        p.set_defaults(func=func)

    p = sub.add_parser("witness", help="g such that <<g^6>> meets the subgroup trivially (infinite index)")
    p.add_argument("core")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="sample <<g^6>> and check no element lies in the subgroup")
    p.add_argument("core")
    p.add_argument("--samples", type=_positive, default=10000)
    p.add_argument("--max-conj", type=_positive, default=4)
    p.add_argument("--max-len", type=_nonneg, default=6)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--spelling", action="store_true", help="also run the spelling diagnostic")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dot", help="Graphviz rendering of the core")
    p.add_argument("core")
    p.set_defaults(func=cmd_dot)
    return parser


def run(argv, out=None):
    out = out if out is not None else sys.stdout
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, FiniteIndexError, InfiniteIndexError) as exc:
        sys.stderr.write(f"kcore {args.command}: {exc}\n")
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
