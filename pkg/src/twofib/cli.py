"""Command-line surface: ``twofib <command> [options]``.

Reports go to standard output as one JSON object; diagnostics go to
standard error.  Exit codes: 0 all checks passed, 1 a check failed,
2 malformed input or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import dsl
from .comma import (CommaError, check_cartesian_map, check_d0_fibration, check_projections_strict,
                    check_two_sided_local, comma_pullback, compose_fibrations, free_fibration,
                    oplax_comma)
from .core import (DEFAULT_LIMIT, dualize, validate_bicategory,
                   validate_two_category)
from .fib_strict import (FactorizationError, Projection, as_projection, check_cleavage,
                         check_two_fibration, default_cleavage, factor_1cell_strict,
                         factor_2cell_strict)
from .fib_weak import (FibreError, check_equivalence_lifting, check_fibration_weak,
                       factor_1cell_weak, factor_2cell_weak, fibre_bicategory, reindex)
from .groth import NotSplitError, grothendieck_strict, invert_strict, roundtrip_iso_strict
from .groth_weak import check_weak_grothendieck, weak_grothendieck
from .maps import (validate_homomorphism, validate_indexed_diagram, validate_modification,
                   validate_transformation, validate_two_functor)


class Malformed(Exception):
    pass


class Result:
    def __init__(self, flags=None, passed=None):
        self.flags = dict(flags or {})
        self.witnesses = []
        self.data = {}
        self.malformed = False
        self._passed = passed

    def add(self, report, prefix=""):
        """Fold a ValidationReport in; returns whether it passed."""
        for v in report.violations:
            self.witnesses.append({"law": prefix + v.law, "cells": list(v.witness)})
            self.malformed |= v.malformed
        return report.passed

    def add_flags(self, rep):
        self.flags.update(rep.flags)
        self.flags.update(getattr(rep, "extras", {}))
        for k, ws in sorted(rep.witnesses.items()):
            for w in ws:
                self.witnesses.append({"law": k, "cells": [str(c) for c in w]})

    @property
    def passed(self):
        if self._passed is not None:
            return self._passed
        return all(v for v in self.flags.values() if isinstance(v, bool))


def _load(path):
    try:
        return dsl.load(path)
    except OSError as e:
        raise Malformed(f"{path}: {e.strerror}") from None
    except dsl.DSLError as e:
        raise Malformed(f"{path}: {e}") from None


def _projection(doc):
    """(projection, cleavage or None) from a projection-like document."""
    if doc.kind == "cleavage":
        return as_projection(doc.ref("projection")), doc.value
    if doc.kind == "projection":
        return doc.value, None
    if doc.kind in ("two_functor", "homomorphism"):
        return Projection(doc.value), None
    raise Malformed(f"expected a projection, cleavage or functor, found {doc.kind}")


def _want(doc, *kinds):
    if doc.kind not in kinds:
        raise Malformed(f"expected {' or '.join(kinds)}, found {doc.kind}")
    return doc.value


def _is_strict(proj):
    return proj.P.is_strict and proj.E.is_strict and proj.B.is_strict


def _write(args, obj, cleavage_of=None):
    if args.output:
        dsl.dump(obj, args.output, cleavage_of)


# ------------------------------------------------------------------ commands

def cmd_check(args):
    doc = _load(args.input)
    lim = args.witness_limit
    r = Result()
    v = doc.value
    checks = {
        "two_category": validate_two_category, "bicategory": validate_bicategory,
        "two_functor": validate_two_functor, "homomorphism": validate_homomorphism,
        "transformation": validate_transformation, "modification": validate_modification,
        "indexed_diagram": validate_indexed_diagram, "trihomomorphism": check_weak_grothendieck,
    }
    if doc.kind in checks:
        r.flags["valid"] = r.add(checks[doc.kind](v, lim))
    elif doc.kind == "projection":
        fn = validate_two_functor if v.P.kind == "two_functor" else validate_homomorphism
        r.flags["valid"] = r.add(fn(v.P, lim))
    else:
        proj, C = _projection(doc)
        rep = check_cleavage(proj, C, weak=not _is_strict(proj), limit=lim)
        r.flags["total"], r.flags["cartesian"] = rep.flags["total"], rep.flags["cartesian"]
        for k in ("total", "cartesian"):
            for w in rep.witnesses.get(k, []):
                r.witnesses.append({"law": k, "cells": [str(c) for c in w]})
    return r


def cmd_dualize(args):
    B = _want(_load(args.input), "two_category", "bicategory")
    D = dualize(B, args.mode)
    r = Result()
    check = validate_two_category if D.kind == "two_category" else validate_bicategory
    r.flags["valid"] = r.add(check(D, args.witness_limit))
    _write(args, D)
    return r


def _fib_flags(r, proj, C, weak, args):
    check = check_fibration_weak if weak else check_two_fibration
    rep = check(proj, C, args.witness_limit, args.parallel)
    r.add_flags(rep)
    return rep


def cmd_groth(args):
    D = _want(_load(args.input), "indexed_diagram")
    r = Result()
    if not r.add(validate_indexed_diagram(D, args.witness_limit), "diagram."):
        r.flags["valid_diagram"] = False
        return r
    c = grothendieck_strict(D)
    r.flags["valid_total"] = r.add(validate_two_category(c.total, args.witness_limit), "total.")
    _fib_flags(r, c.projection, c.cleavage, False, args)
    r.flags["fully_split"] = check_cleavage(c.projection, c.cleavage, limit=args.witness_limit).fully_split
    r.data["counts"] = list(c.total.counts())
    _write(args, c.cleavage, c.projection)
    return r


def cmd_wgroth(args):
    F = _want(_load(args.input), "trihomomorphism")
    r = Result()
    if not r.add(check_weak_grothendieck(F, args.witness_limit)):
        r.flags["valid_total"] = False
        return r
    c = weak_grothendieck(F)
    r.flags["valid_total"] = True
    _fib_flags(r, c.projection, c.cleavage, True, args)
    r.data["counts"] = list(c.total.counts())
    _write(args, c.cleavage, c.projection)
    return r


def _with_cleavage(doc, weak, args):
    proj, C = _projection(doc)
    return proj, C or default_cleavage(proj, weak, args.parallel)


def cmd_invert(args):
    proj, C = _with_cleavage(_load(args.input), False, args)
    r = Result()
    try:
        D = invert_strict(proj, C)
    except NotSplitError as e:
        r.flags["split"] = False
        r.witnesses.append({"law": e.flag, "cells": [str(c) for c in e.witness]})
        return r
    r.flags["split"] = True
    r.flags["valid_diagram"] = r.add(validate_indexed_diagram(D, args.witness_limit), "diagram.")
    _write(args, D)
    return r


def cmd_roundtrip(args):
    proj, C = _with_cleavage(_load(args.input), False, args)
    r = Result()
    try:
        rt = roundtrip_iso_strict(proj, C, args.witness_limit)
    except NotSplitError as e:
        r.flags["split"] = False
        r.witnesses.append({"law": e.flag, "cells": [str(c) for c in e.witness]})
        return r
    r.flags["split"] = True
    r.flags["isomorphism"] = r.add(rt.report)
    _write(args, rt.H)
    return r


def cmd_fibcheck(args):
    proj, C = _projection(_load(args.input))
    weak = args.mode == "weak"
    if not weak and not _is_strict(proj):
        raise Malformed("strict mode needs a 2-functor between 2-categories")
    r = Result()
    rep = _fib_flags(r, proj, C, weak, args)
    r._passed = rep.is_fibration
    return r


def cmd_cleavage_check(args):
    doc = _load(args.input)
    if doc.kind != "cleavage":
        raise Malformed(f"expected cleavage, found {doc.kind}")
    proj, C = _projection(doc)
    weak = args.mode == "weak" or not _is_strict(proj)
    rep = check_cleavage(proj, C, weak, args.witness_limit)
    r = Result(passed=rep.passed)
    r.add_flags(rep)
    r.flags["fully_split"] = rep.fully_split
    return r


def cmd_comma(args):
    a, b = _load(args.first), _load(args.second)
    r = Result()
    lim = args.witness_limit
    if args.variant == "oplax":
        F = _want(a, "two_functor", "homomorphism")
        G = _want(b, "two_functor", "homomorphism")
        cm = oplax_comma(F, G)
        return _comma_report(r, cm, args)
    proj, _ = _projection(a)
    F = _want(b, "two_functor", "homomorphism")
    variant = {"equiv": "equiv", "iso": "iso", "pullback": "strict"}[args.variant]
    pb = comma_pullback(proj, F, variant)
    weak = variant == "equiv"
    check = validate_bicategory if pb.total.kind == "bicategory" else validate_two_category
    r.flags["valid_total"] = r.add(check(pb.total, lim), "total.")
    _fib_flags(r, Projection(pb.P), None, weak, args)
    r.flags["cartesian_map"] = r.add(check_cartesian_map(pb.P, proj, pb.F, weak, lim))
    r.data["counts"] = list(pb.total.counts())
    _write(args, Projection(pb.P, name=f"P_{pb.total.name}"))
    return r


def _comma_report(r, cm, args):
    lim = args.witness_limit
    r.flags["valid_total"] = r.add(validate_bicategory(cm.total, lim), "total.")
    r.flags["projections_strict"] = r.add(check_projections_strict(cm, lim))
    rep = check_d0_fibration(cm, lim, args.parallel)
    r.add_flags(rep)
    r.flags["two_sided_local"] = r.add(check_two_sided_local(cm, limit=lim))
    r.data["counts"] = list(cm.total.counts())
    _write(args, cm.d0_cleavage(), Projection(cm.d0, name=f"d0_{cm.total.name}"))
    return r


def cmd_free_fib(args):
    H = _want(_load(args.input), "two_functor", "homomorphism")
    return _comma_report(Result(), free_fibration(H), args)


def cmd_compose(args):
    (p, cp), (q, cq) = _projection(_load(args.first)), _projection(_load(args.second))
    weak = None if args.mode is None else args.mode == "weak"
    try:
        comp = compose_fibrations(p, q, cp, cq, weak, args.witness_limit, args.parallel)
    except CommaError as e:
        print(f"error: {e}", file=sys.stderr)
        return Result({"inputs_fibred": False})
    r = Result()
    r.add_flags(comp.report)
    r.flags["double_lifts_cartesian"] = comp.cleavage_report.passed
    _write(args, comp.cleavage, comp.projection)
    return r


def cmd_factor(args):
    proj, C = _projection(_load(args.input))
    weak = args.mode == "weak" or (args.mode is None and not _is_strict(proj))
    C = C or default_cleavage(proj, weak, args.parallel)
    E = proj.E
    cell = args.cell
    r = Result()
    try:
        if cell in E.one_cells:
            if weak:
                fw = factor_1cell_weak(proj, C, cell)
                r.data.update(hat=fw.hat, chosen=fw.chosen, iso=fw.iso)
                r.flags["unique_up_to_unique_iso"] = fw.unique_up_to_unique_iso
            else:
                fs = factor_1cell_strict(proj, C, cell)
                r.data.update(hat=fs.hat, chosen=fs.chosen)
                r.flags["equation"] = E.c1(fs.chosen, fs.hat) == cell
                r.flags["unique"] = fs.alternatives == 1
        elif cell in E.two_cells:
            if weak:
                fw = factor_2cell_weak(proj, C, cell)
                r.data.update(hat_f=fw.hat_f.hat, hat_g=fw.hat_g.hat, hat_h=fw.hat_h.hat,
                              hat_alpha=fw.hat_alpha, chosen=fw.chosen, eta=fw.eta)
                r.flags["equation"] = fw.pasting_ok
                r.flags["unique_up_to_unique_iso"] = fw.unique_up_to_unique_iso
            else:
                fs = factor_2cell_strict(proj, C, cell)
                r.data.update(hat_f=fs.hat_f, hat_g=fs.hat_g, hat_h=fs.hat_h,
                              hat_alpha=fs.hat_alpha, chosen=fs.chosen)
                r.flags["equation"] = True
                r.flags["unique"] = fs.alternatives == 1
        else:
            raise Malformed(f"unknown cell {cell!r}")
    except (FactorizationError, FibreError) as e:
        r.flags["factors"] = False
        r.witnesses.append({"law": "factor", "cells": [cell, str(e)]})
    return r


def cmd_fibre(args):
    proj, C = _with_cleavage(_load(args.input), True, args)
    if args.over not in proj.B.objects:
        raise Malformed(f"unknown base object {args.over!r}")
    r = Result()
    try:
        F = fibre_bicategory(proj, C, args.over).bicategory
    except FibreError as e:
        r.flags["fibre_built"] = False
        r.witnesses.append({"law": "fibre", "cells": [args.over, str(e)]})
        return r
    r.flags["valid"] = r.add(validate_bicategory(F, args.witness_limit))
    r.data["counts"] = list(F.counts())
    _write(args, F)
    return r


def cmd_reindex(args):
    proj, C = _with_cleavage(_load(args.input), True, args)
    if args.along not in proj.B.one_cells:
        raise Malformed(f"unknown base 1-cell {args.along!r}")
    r = Result()
    try:
        R = reindex(proj, C, args.along, limit=args.witness_limit)
    except (FibreError, ValueError) as e:
        r.flags["reindex_built"] = False
        r.witnesses.append({"law": "reindex", "cells": [args.along, str(e)]})
        return r
    r.flags["valid"] = r.add(R.report)
    _write(args, R.hom)
    return r


def cmd_eqlift(args):
    proj, _ = _projection(_load(args.input))
    rep = check_equivalence_lifting(proj, args.witness_limit)
    r = Result()
    laws = set(rep.laws())
    r.flags["equivalences_lift"] = "lift.equivalence" not in laws
    r.flags["isos_lift"] = "lift.iso" not in laws
    r.add(rep)
    return r


# ------------------------------------------------------------------ plumbing

COMMANDS = {
    "check": cmd_check, "dualize": cmd_dualize, "groth": cmd_groth, "wgroth": cmd_wgroth,
    "invert": cmd_invert, "roundtrip": cmd_roundtrip, "fibcheck": cmd_fibcheck,
    "cleavage-check": cmd_cleavage_check, "comma": cmd_comma, "free-fib": cmd_free_fib,
    "compose": cmd_compose, "factor": cmd_factor, "fibre": cmd_fibre, "reindex": cmd_reindex,
    "eqlift": cmd_eqlift,
}


HELP = {
    "check": "validate any document",
    "dualize": "op, co or coop dual of a 2-category or bicategory",
    "groth": "strict construction of an indexed 2-diagram",
    "wgroth": "construction of a trihomomorphism",
    "invert": "indexed diagram of a split 2-fibration",
    "roundtrip": "invert then rebuild, checking the comparison iso",
    "fibcheck": "fibration flags of a projection",
    "cleavage-check": "validity and splitness of a cleavage",
    "comma": "comma objects and pullbacks of two maps",
    "free-fib": "free fibration on a map",
    "compose": "composite of two fibrations with double lifts",
    "factor": "factor a cell through its chosen cartesian lift",
    "fibre": "fibre over an object of the base",
    "reindex": "reindexing between fibres along a 1-cell",
    "eqlift": "equivalence and iso lifting",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise Malformed(f"{self.prog}: {message}\n{self.format_usage()}")


def build_parser():
    p = _Parser(prog="twofib", description="Checks and constructions for finite 2-fibrations.")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    def add(name, *inputs, **extra):
        s = sub.add_parser(name, help=HELP[name])
        for i in inputs:
            s.add_argument(i)
        s.add_argument("-o", "--output")
        s.add_argument("--witness-limit", type=int, default=DEFAULT_LIMIT)
        s.add_argument("--parallel", type=int, default=None)
        s.add_argument("--timing", action="store_true")
        return s

    add("check", "input")
    add("dualize", "input").add_argument("--mode", choices=("op", "co", "coop"), required=True)
    add("groth", "input")
    add("wgroth", "input")
    add("invert", "input")
    add("roundtrip", "input")
    add("fibcheck", "input").add_argument("--mode", choices=("strict", "weak"), default="weak")
    add("cleavage-check", "input").add_argument("--mode", choices=("strict", "weak"), default=None)
    s = add("comma", "first", "second")
    g = s.add_mutually_exclusive_group(required=True)
    for v in ("oplax", "equiv", "iso", "pullback"):
        g.add_argument(f"--{v}", dest="variant", action="store_const", const=v)
    add("free-fib", "input")
    add("compose", "first", "second").add_argument("--mode", choices=("strict", "weak"), default=None)
    s = add("factor", "input", "cell")
    s.add_argument("--mode", choices=("strict", "weak"), default=None)
    add("fibre", "input").add_argument("--over", required=True)
    add("reindex", "input").add_argument("--along", required=True)
    add("eqlift", "input")
    return p


def run_command(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise Malformed(parser.format_usage())
        if args.witness_limit < 1:
            raise Malformed("--witness-limit must be positive")
        t0 = time.perf_counter()
        r = COMMANDS[args.command](args)
        ms = round((time.perf_counter() - t0) * 1000, 3)
    except Malformed as e:
        print(f"error: {e}", file=err)
        return 2
    except (CommaError, dsl.DSLError) as e:
        print(f"error: {e}", file=err)
        return 2
    report = {"command": args.command, "flags": dict(sorted(r.flags.items())),
              "witnesses": r.witnesses, "timing_ms": ms if args.timing else None,
              "passed": bool(r.passed) and not r.malformed}
    if r.data:
        report["data"] = r.data
    if args.output:
        report["output"] = args.output
    out.write(json.dumps(report, sort_keys=True) + "\n")
    if r.malformed:
        return 2
    return 0 if report["passed"] else 1


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
