"""Command line front end.

Exit codes: 0 verdict true, 1 verdict false, 2 input or usage error,
3 internal inconsistency between two procedures that must agree.
"""

import argparse
import json
import sys

from .adjunctions import (
    algebra_correspondence, comma_condition_check, feynman_check, hereditary_check,
    hermida_free, regular_pattern_check, roundtrip_report, subst_end, subst_free,
)
from .errors import InputError, InternalInconsistency, OpdkitError
from .fincat import FinCategory, validate_category
from .operad import PinnedOperad, Substitude, coreflect, end_operad, pinnings, validate_operad
from .report import CheckReport
from .smc import (
    PinnedSMC, free_smc, monoidal_exactness_check, strictification_report, strictify,
    strong_from_pinned, table_from_smc, truncate_pinned, validate_smc,
)
from .testkit import (
    GenConfig, gen_category, gen_groupoid, gen_operad, mutate_break_hereditary,
    tiny_algebra_instances, twisted_weak_instance,
)
from .textformat import parse_model, print_model, validate_model

GEN_KINDS = ("category", "groupoid", "operad", "substitude", "pinned", "negative")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"usage: {message}")


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path, kinds, validate=True):
    model = parse_model(_read(path), validate=validate)
    if model.kind not in kinds:
        raise InputError(f"{path}: expected a {' or '.join(kinds)} model, got {model.kind}")
    return model


def _pinned(path, bound):
    """A pinned SMC from a pinned file, or ``subst_free`` of a substitude."""
    model = _load(path, ("pinned", "substitude"))
    s = model.structure
    if model.kind == "substitude":
        L = s.body.arity_bound if bound is None else bound
        if L > s.body.arity_bound:
            raise InputError(f"bound {L} exceeds the arity bound {s.body.arity_bound}")
        return subst_free(s, L)
    return s if bound is None else truncate_pinned(s, bound)


def _emit_text(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif not args.json:
        sys.stdout.write(text)


def _constructed(args, name, obj, report):
    """Write the text of a constructed structure and return its report."""
    _emit_text(args, print_model(obj))
    report.check = name
    return report, bool(args.out) or args.json


# ----------------------------------------------------------------------------
# subcommands; each returns (report, print_report)


def cmd_check(args):
    model = parse_model(_read(args.file), validate=False)
    return validate_model(model), True


def cmd_free_smc(args):
    C = _load(args.file, ("category",)).structure
    M = free_smc(C, args.bound or 2)
    return _constructed(args, "free-smc", M, validate_smc(M))


def cmd_hermida(args):
    P = _load(args.file, ("operad",)).structure
    L = P.arity_bound if args.bound is None else args.bound
    if L > P.arity_bound:
        raise InputError(f"bound {L} exceeds the arity bound {P.arity_bound}")
    F = hermida_free(P, L)
    return _constructed(args, "hermida", F, validate_smc(F))


def cmd_end(args):
    M = _load(args.file, ("smc",)).structure
    E = end_operad(M)
    return _constructed(args, "end", E, validate_operad(E))


def cmd_coreflect(args):
    model = _load(args.file, ("pinned", "substitude"))
    if model.kind == "pinned":
        s = subst_end(model.structure)
    else:
        s, _ = coreflect(model.structure)
    return _constructed(args, "coreflect", s, s.validate())


def cmd_strictify(args):
    if args.file:
        tau = _pinned(args.file, args.bound)
        F = strong_from_pinned(tau)
    else:
        F, _ = twisted_weak_instance(args.seed or 0, args.bound or 2)
    Mp, G, H = strictify(F)
    report = strictification_report(F, Mp, G, H)
    if report.verdict:
        _emit_text(args, print_model(Mp))
    return report, bool(args.out) or args.json or not report.verdict


def _pinned_check(fn):
    def run(args):
        return fn(_pinned(args.file, args.bound)), True
    return run


def cmd_roundtrip(args):
    model = _load(args.file, ("pinned", "substitude"))
    s = model.structure
    if model.kind == "pinned" and args.bound is not None:
        s = truncate_pinned(s, args.bound)
        return roundtrip_report(s), True
    return roundtrip_report(s, args.bound), True


def cmd_algebra(args):
    instances = tiny_algebra_instances()
    chosen = instances if args.seed is None else [instances[args.seed % len(instances)]]
    report = CheckReport("algebra-correspondence", True, 2)
    details = []
    for a in chosen:
        _, rep = algebra_correspondence(a)
        report.checked += rep.checked
        details.append({"instance": a.name, **rep.details})
        if not rep.verdict and report.verdict:
            report.verdict = False
            report.witness = {"instance": a.name, "detail": rep.witness}
    report.details["instances"] = details
    return report, True


def cmd_gen(args):
    n = args.size
    cfg = GenConfig(seed=args.seed or 0, max_objects=n, max_arrows=n + 1, max_colours=n,
                    max_ops=n + 1, sequence_bound=args.bound or 3,
                    max_morphisms=200)
    kind = args.kind
    if kind == "category":
        obj = gen_category(cfg)
    elif kind == "groupoid":
        obj = gen_groupoid(cfg)
    else:
        P = gen_operad(cfg)
        if kind == "operad":
            obj = P
        elif kind == "substitude":
            obj = pinnings(P)["groupoid"]
        else:
            obj = subst_free(pinnings(P)["groupoid"], cfg.sequence_bound)
            if kind == "negative":
                obj = mutate_break_hereditary(obj, cfg.seed)
                obj = _materialise(obj)
    return _constructed(args, f"gen-{kind}", obj, _validate_any(obj))


def _materialise(p):
    """Copy a pinned SMC into explicit tables so that it prints."""
    table, names = table_from_smc(p.target, p.target.name)
    return PinnedSMC(p.base, table, {a: names[u] for a, u in p.arrow_pin.items()}, p.name)


def _validate_any(obj):
    if isinstance(obj, FinCategory):
        return validate_category(obj)
    if isinstance(obj, PinnedSMC):
        return validate_smc(obj.target)
    if isinstance(obj, PinnedOperad):
        return obj.validate() if isinstance(obj, Substitude) else validate_operad(obj.body)
    return validate_operad(obj)


COMMANDS = {
    "check": (cmd_check, "validate a model file"),
    "free-smc": (cmd_free_smc, "free symmetric strict monoidal category on a category"),
    "hermida": (cmd_hermida, "free symmetric strict monoidal category on an operad"),
    "end": (cmd_end, "endomorphism operad of a symmetric monoidal category"),
    "coreflect": (cmd_coreflect, "substitude of a pinned structure"),
    "strictify": (cmd_strictify, "strictify a strong monoidal functor"),
    "hereditary": (_pinned_check(hereditary_check), "hereditary condition"),
    "exact": (_pinned_check(monoidal_exactness_check), "monoidal exactness"),
    "regular-pattern": (_pinned_check(regular_pattern_check), "regular pattern recogniser"),
    "feynman": (_pinned_check(feynman_check), "Feynman category recogniser"),
    "comma": (_pinned_check(comma_condition_check), "comma-category condition"),
    "roundtrip": (cmd_roundtrip, "round trips through the substitude adjunction"),
    "algebra": (cmd_algebra, "algebras versus extending monoidal functors"),
    "gen": (cmd_gen, "generate a seeded instance"),
}

_NO_FILE = {"algebra", "gen"}
_OPTIONAL_FILE = {"strictify"}


def build_parser():
    parser = _Parser(prog="opdkit", description="Finite operads and symmetric monoidal "
                     "categories.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        if name == "gen":
            p.add_argument("kind", choices=GEN_KINDS)
            p.add_argument("--size", type=int, default=3, help="size knob for the generator")
        elif name in _OPTIONAL_FILE:
            p.add_argument("file", nargs="?", help="pinned or substitude file; omit to use "
                           "a seeded weak instance")
        elif name not in _NO_FILE:
            p.add_argument("file")
        p.add_argument("--bound", type=int, help="sequence or arity bound")
        p.add_argument("--seed", type=int, help="seed for generated instances")
        p.add_argument("--json", action="store_true", help="print the report as JSON")
        p.add_argument("--out", help="write the constructed model to this file")
    return parser


def run_command(argv):
    """Run one command and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help
        return exc.code or 0
    except InputError as exc:
        print(f"opdkit: {exc}", file=sys.stderr)
        return 2
    fn, _ = COMMANDS[args.command]
    try:
        if args.bound is not None and args.bound < 0:
            raise InputError("--bound must be non-negative")
        report, show = fn(args)
    except InternalInconsistency as exc:
        print(f"opdkit: internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"opdkit: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"  witness: {json.dumps(CheckReport('input', False, witness=witness).as_dict()['witness'])}",
                  file=sys.stderr)
        return 2
    except OpdkitError as exc:
        print(f"opdkit: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(report.to_json())
    elif show:
        print(report.summary())
    return 0 if report.verdict else 1


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))
