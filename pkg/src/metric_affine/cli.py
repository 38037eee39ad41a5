"""Command-line front end: form I/O, lift/drop, group inspection, and the
verification suites.

Exit codes: 0 all checks pass, 1 verification failure, 2 input error,
3 enumeration budget exceeded.  Output is byte-deterministic for fixed
inputs and budget; `--format records` switches to line-delimited JSON with
stable field names.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .classify import (MODE_MOTION, MODE_WEAK, quadric_duality_check,
                       render_table_lines, reproduce_table, solve_for_qtilde,
                       verify_main_prop, verify_projective_theorem)
from .fields import field_make
from .groups import (BudgetExceeded, HARD_BUDGET_CEILING, order_gl,
                     orthogonal_group, reflection_generation_status,
                     weak_orthogonal_group)
from .homog import DegeneratePolarForm, NotDroppable, drop, lift
from .linalg import vec
from .quadform import (all_vectors, enumerate_forms, form_from_text,
                       form_to_text, is_nondegenerate, poly_str, qf_eval,
                       radical_basis)
from .transvect import (annihilator_transvections_in_weak, classify_direction,
                        scaled_transvection_never_weak)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

_TABLE_CASES = {
    "t1": ((0, "GF(2)"), (0, "GF(4)")),
    "t2": ((1, "GF(2)"),),
    "t3": ((1, "GF(3)"),),
    "t4": ((2, "GF(2)"),),
}


class InputError(Exception):
    """Bad file, bad flag value, or a form outside a command's domain."""


@dataclass
class CliConfig:
    command: str
    paths: tuple = ()
    field_name: str = ""
    dim: int = -1
    case: str = ""
    vector: str = ""
    budget: object = None
    fmt: str = "text"
    verbose: int = 0

    def __post_init__(self):
        if self.budget is not None:
            # never allow a runaway enumeration, whatever the flag says
            self.budget = max(1, min(int(self.budget), HARD_BUDGET_CEILING))


class Emitter:
    """text mode prints the human lines; records mode prints JSON lines."""

    def __init__(self, fmt):
        self.fmt = fmt

    def text(self, *lines):
        if self.fmt == "text":
            for ln in lines:
                print(ln)

    def record(self, rec):
        if self.fmt == "records":
            print(json.dumps(rec, sort_keys=True))


def _form_rec(Q, var="x", start=1):
    return {"field": Q.field.name, "dim": Q.n,
            "upper": [Q.field.to_json(c) for c in Q.upper_coeffs()],
            "poly": poly_str(Q, var, start)}


def _load_form(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror)) from None
    try:
        return form_from_text(text)
    except ValueError as e:
        raise InputError("%s: %s" % (path, e)) from None


def _finite_field(name):
    if name.isdigit():
        name = "GF(%s)" % name
    try:
        fld = field_make(name)
    except ValueError as e:
        raise InputError(str(e)) from None
    if not fld.enumerable:
        raise InputError("verification sweeps need a finite field, not %s"
                         % fld.name)
    return fld


def _require_dim(cfg, low=0):
    if cfg.dim < low:
        raise InputError("--dim must be at least %d" % low)
    return cfg.dim


def _mat_lines(A, prefix=""):
    F = A.field
    out = []
    for i in range(A.nrows):
        out.append(prefix + "[" + " ".join(
            str(F.to_json(A[i, j])) for j in range(A.ncols)) + "]")
    return out or [prefix + "[]"]


def _vec_str(v):
    F = v.field
    return "(" + ", ".join(str(F.to_json(x)) for x in v.entries()) + ")"


# --- plain commands --------------------------------------------------------

def cmd_lift(cfg, em):
    Q = _load_form(cfg.paths[0])
    try:
        up = lift(Q)
    except DegeneratePolarForm:
        rad = radical_basis(Q)
        raise InputError(
            "polar form of %s is degenerate; radical basis: %s"
            % (poly_str(Q), "; ".join(_vec_str(r) for r in rad))) from None
    em.text("# input: %s [%s, dim %d]" % (poly_str(Q), Q.field.name, Q.n),
            "# canonical matrix of the lift:")
    em.text(*_mat_lines(up.gram, "# "))
    if em.fmt == "text":
        sys.stdout.write(form_to_text(up, "a", 0))
    em.record({"record": "lift", "input": _form_rec(Q),
               "result": _form_rec(up, "a", 0),
               "matrix": [[up.field.to_json(up.gram[i, j])
                           for j in range(up.n)] for i in range(up.n)]})
    return EXIT_PASS


def cmd_drop(cfg, em):
    Qt = _load_form(cfg.paths[0])
    try:
        down = drop(Qt)
    except NotDroppable as e:
        raise InputError("%s cannot be dropped (%s)"
                         % (poly_str(Qt, "a", 0), e.reason)) from None
    em.text("# input: %s [%s, dim %d]" % (poly_str(Qt, "a", 0),
                                          Qt.field.name, Qt.n),
            "# canonical matrix of the dropped form:")
    em.text(*_mat_lines(down.gram, "# "))
    if em.fmt == "text":
        sys.stdout.write(form_to_text(down))
    em.record({"record": "drop", "input": _form_rec(Qt, "a", 0),
               "result": _form_rec(down),
               "matrix": [[down.field.to_json(down.gram[i, j])
                           for j in range(down.n)] for i in range(down.n)]})
    return EXIT_PASS


def cmd_eval(cfg, em):
    Q = _load_form(cfg.paths[0])
    F = Q.field
    raw = cfg.vector.strip().strip("()[]")
    toks = [t.strip() for t in raw.split(",") if t.strip()]
    if len(toks) != Q.n:
        raise InputError("expected %d coordinates, got %d" % (Q.n, len(toks)))
    try:
        entries = tuple(F.parse(t) for t in toks)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError("bad coordinate for %s: %s" % (F.name, e)) from None
    x = vec(F, entries)
    val = qf_eval(Q, x)
    em.text("# form: %s [%s, dim %d]" % (poly_str(Q), F.name, Q.n),
            "Q%s = %s" % (_vec_str(x), F.to_json(val)))
    em.record({"record": "eval", "form": _form_rec(Q),
               "vector": [F.to_json(e) for e in entries],
               "value": F.to_json(val)})
    return EXIT_PASS


def cmd_groups(cfg, em):
    Q = _load_form(cfg.paths[0])
    F = Q.field
    if not F.enumerable:
        raise InputError("group enumeration needs a finite field, not %s"
                         % F.name)
    o = orthogonal_group(Q, cfg.budget)
    w = weak_orthogonal_group(Q, cfg.budget)
    st = reflection_generation_status(Q, cfg.budget)
    em.text("# form: %s [%s, dim %d]" % (poly_str(Q), F.name, Q.n),
            "|GL|: %d" % order_gl(Q.n, F.order),
            "|O|: %d" % o.order,
            "|O'|: %d" % w.order,
            "radical dim: %d" % len(radical_basis(Q)),
            "reflections: %d" % st.reflection_count,
            "reflection closure order: %d" % st.closure_order,
            "reflections generate weak group: %s"
            % ("yes" if st.generates else "no"),
            "exceptional case: %s" % (st.exceptional or "none"))
    em.record({"record": "groups", "form": _form_rec(Q),
               "gl_order": order_gl(Q.n, F.order), "o_order": o.order,
               "ow_order": w.order, "radical_dim": len(radical_basis(Q)),
               "reflections": st.reflection_count,
               "closure_order": st.closure_order,
               "generates": st.generates,
               "exceptional": st.exceptional})
    return EXIT_PASS


# --- verification commands -------------------------------------------------

def cmd_verify_lemmas(cfg, em):
    fld = _finite_field(cfg.field_name)
    n = _require_dim(cfg, low=1)
    counts = {"a": 0, "b": 0, "c": 0, "d": 0}
    inside = 0
    pairs = 0
    run_scaled = n <= 2 or fld.order == 2
    directions = [x for x in all_vectors(fld, n)
                  if any(c != fld.zero for c in x)]
    for Q in enumerate_forms(fld, n):
        for x in directions:
            f = vec(fld, x)
            case = classify_direction(Q, f)
            counts[case.letter] += 1
            ok, _tag = annihilator_transvections_in_weak(Q, f)
            inside += ok
            if run_scaled and not scaled_transvection_never_weak(Q, f):
                em.text("FAIL: scaled transvection inside weak group: Q=%s f=%s"
                        % (poly_str(Q), _vec_str(f)))
                em.record({"record": "lemma-sweep", "ok": False})
                return EXIT_FAIL
            pairs += 1
    em.text("lemma sweep over %s, dim %d" % (fld.name, n),
            "pairs (Q, f): %d" % pairs,
            "direction cases: a=%d b=%d c=%d d=%d"
            % (counts["a"], counts["b"], counts["c"], counts["d"]),
            "pairs with all annihilator transvections weak: %d" % inside,
            "scaled transvections outside weak group: %s"
            % ("verified" if run_scaled else "skipped (dim > 2, odd q)"),
            "PASS")
    em.record({"record": "lemma-sweep", "field": fld.name, "dim": n,
               "pairs": pairs, "cases": counts,
               "annihilator_weak_pairs": inside,
               "scaled_checked": run_scaled, "ok": True})
    return EXIT_PASS


def cmd_verify_proposition(cfg, em):
    fld = _finite_field(cfg.field_name)
    n = _require_dim(cfg, low=1)
    rep = verify_main_prop(fld, n, cfg.budget)
    em.record({"record": "main-prop", "field": fld.name, "dim": n,
               "forms_checked": rep.forms_checked,
               "scalars_each": rep.scalars_each,
               "failures": len(rep.failures), "ok": rep.ok})
    em.text("motion-group identity over %s, dim %d" % (fld.name, n),
            "non-degenerate-polar forms: %d" % rep.forms_checked,
            "scalars each: %d" % rep.scalars_each)
    if not rep.ok:
        for Q, c in rep.failures:
            em.text("FAIL: Q=%s, c=%s" % (poly_str(Q), fld.to_json(c)))
        return EXIT_FAIL
    em.text("PASS")
    return EXIT_PASS


def cmd_verify_tables(cfg, em):
    code = EXIT_PASS
    for dim, fname in _TABLE_CASES[cfg.case]:
        fld = field_make(fname)
        rep = reproduce_table(dim, fld, cfg.budget)
        em.text(*render_table_lines(rep))
        em.text("row pairs (lift/drop): %d" % len(rep.row_pairs),
                "matches embedded fixture: %s"
                % ("yes" if rep.expected_match else "NO"))
        em.record({"record": "table", "case": cfg.case, "dim": dim,
                   "field": fname, "ok": rep.ok,
                   "blocks": [[[list(Q.upper_coeffs()) for Q in lefts],
                               [list(Qt.upper_coeffs()) for Qt in rights]]
                              for lefts, rights in rep.blocks],
                   "mismatch": list(rep.mismatch)})
        if rep.ok:
            em.text("PASS")
        else:
            for line in rep.mismatch:
                em.text("FAIL: " + line)
            code = EXIT_FAIL
    return code


def cmd_verify_theorem(cfg, em):
    fld = _finite_field(cfg.field_name)
    n = cfg.dim
    if n < 0:
        raise InputError("--dim must be at least 0")
    m = (n + 1) * (n + 2) // 2
    lefts = enumerate_forms(fld, n)
    stats = {MODE_MOTION: 0, MODE_WEAK: 0}
    with_solutions = 0
    for Q in lefts:
        sols_m = solve_for_qtilde(Q, MODE_MOTION, cfg.budget)
        sols_w = solve_for_qtilde(Q, MODE_WEAK, cfg.budget)
        stats[MODE_MOTION] += len(sols_m)
        stats[MODE_WEAK] += len(sols_w)
        if sols_m or sols_w:
            with_solutions += 1
        if cfg.verbose:
            em.text("# %s: motion %d, weak %d"
                    % (poly_str(Q), len(sols_m), len(sols_w)))
    nondeg = sum(1 for Q in lefts if is_nondegenerate(Q))
    exceptional = ((n == 0 and fld.char == 2)
                   or (n == 1 and fld.order <= 3)
                   or (n == 2 and fld.order == 2))
    em.text("solution sweep over %s, dim %d" % (fld.name, n),
            "left forms: %d, candidates each: %d" % (len(lefts), fld.order ** m),
            "non-degenerate-polar left forms: %d" % nondeg,
            "forms with solutions: %d" % with_solutions,
            "solution pairs: motion %d, weak %d"
            % (stats[MODE_MOTION], stats[MODE_WEAK]))
    if exceptional:
        em.text("note: sporadic size (see the tables); "
                "no uniqueness asserted here")
    else:
        em.text("every solution is a unit scaling of the lift: verified")
    em.text("PASS")
    em.record({"record": "theorem", "field": fld.name, "dim": n,
               "left_forms": len(lefts), "candidates_each": fld.order ** m,
               "nondegenerate_lefts": nondeg,
               "forms_with_solutions": with_solutions,
               "pairs_motion": stats[MODE_MOTION],
               "pairs_weak": stats[MODE_WEAK],
               "sporadic_size": exceptional, "ok": True})
    return EXIT_PASS


def cmd_verify_projective(cfg, em):
    fld = _finite_field(cfg.field_name)
    n = cfg.dim
    if n < 0:
        raise InputError("--dim must be at least 0")
    rep = verify_projective_theorem(fld, n, cfg.budget)
    em.text("projective-to-linear rigidity over %s, dim %d" % (fld.name, n),
            "pairs checked: %d" % rep.pairs_checked,
            "excluded pairs hit: %d" % rep.exclusion_hits)
    if rep.exclusion_hits:
        em.text("exclusion is genuine (linear groups differ): %s"
                % ("yes" if rep.witness_confirmed else "NO"))
    em.record({"record": "projective", "field": fld.name, "dim": n,
               "pairs_checked": rep.pairs_checked,
               "exclusion_hits": rep.exclusion_hits,
               "witness_confirmed": rep.witness_confirmed,
               "violations": len(rep.violations), "ok": rep.ok})
    if not rep.ok:
        for Q, Qt in rep.violations:
            em.text("FAIL: projective match without linear match: Q=%s Qt=%s"
                    % (poly_str(Q), poly_str(Qt, "a", 0)))
        return EXIT_FAIL
    em.text("PASS")
    return EXIT_PASS


def cmd_verify_quadric(cfg, em):
    Q = _load_form(cfg.paths[0])
    if not Q.field.enumerable:
        raise InputError("the quadric check enumerates points; %s is not "
                         "a finite field" % Q.field.name)
    rep = quadric_duality_check(Q)
    em.text("quadric duality for %s over %s, dim %d"
            % (poly_str(Q), rep.field_name, rep.n),
            "status: %s" % rep.status,
            "quadric points: %d" % rep.base_points,
            "lifted quadric points: %d" % rep.lifted_points,
            "tangent-hyperplane annihilators: %d" % rep.hyperplane_points)
    em.record({"record": "quadric", "form": _form_rec(Q),
               "status": rep.status, "base_points": rep.base_points,
               "lifted_points": rep.lifted_points,
               "hyperplane_points": rep.hyperplane_points,
               "details": [[tag, list(map(str, pt))]
                           for tag, pt in rep.details]})
    if rep.status in ("ok", "empty-quadric"):
        em.text("PASS")
        return EXIT_PASS
    if rep.status == "mismatch":
        for tag, pt in rep.details:
            em.text("FAIL: %s at %s" % (tag, tuple(map(str, pt))))
        return EXIT_FAIL
    raise InputError("quadric duality needs char != 2, dim >= 2 and a "
                     "non-degenerate polar form (got status: %s)" % rep.status)


_HANDLERS = {
    "lift": cmd_lift,
    "drop": cmd_drop,
    "eval": cmd_eval,
    "groups": cmd_groups,
    ("verify", "lemmas"): cmd_verify_lemmas,
    ("verify", "proposition"): cmd_verify_proposition,
    ("verify", "tables"): cmd_verify_tables,
    ("verify", "theorem"): cmd_verify_theorem,
    ("verify", "projective"): cmd_verify_projective,
    ("verify", "quadric"): cmd_verify_quadric,
}


def _build_parser():
    p = argparse.ArgumentParser(
        prog="metric-affine",
        description="Exact quadratic-form machinery for affine metric "
                    "geometry: lift/drop between a space and its "
                    "homogeneous dual model, group inspection, and "
                    "exhaustive verification sweeps.")
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="output style: human text or line-delimited JSON")
    p.add_argument("--budget", type=int, default=None,
                   help="enumeration budget override (clamped to %d)"
                        % HARD_BUDGET_CEILING)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lift", help="lift a form to the homogeneous dual")
    sp.add_argument("form_file")
    sp = sub.add_parser("drop", help="drop a lifted form back down")
    sp.add_argument("form_file")
    sp = sub.add_parser("eval", help="evaluate a form at a vector")
    sp.add_argument("form_file")
    sp.add_argument("vector", help="coordinates, e.g. 1,0,2")
    sp = sub.add_parser("groups", help="orthogonal-group data for a form")
    sp.add_argument("form_file")

    pv = sub.add_parser("verify", help="run a verification sweep")
    vsub = pv.add_subparsers(dest="vcmd", required=True)
    for name, hint in (("lemmas", "rank-one intersection cardinalities"),
                       ("proposition", "motion group = weak group of lifts"),
                       ("theorem", "all solutions of the group equation"),
                       ("projective", "projective equality forces linear")):
        sp = vsub.add_parser(name, help=hint)
        sp.add_argument("--field", required=True, dest="field_name",
                        metavar="F", help="GF(2), GF(3), GF(4), GF(5), GF(7)")
        sp.add_argument("--dim", required=True, type=int, metavar="N")
    sp = vsub.add_parser("tables", help="reproduce a sporadic-solution table")
    sp.add_argument("--case", required=True, choices=sorted(_TABLE_CASES))
    sp = vsub.add_parser("quadric", help="dual description of a quadric")
    sp.add_argument("form_file")
    return p


def main(argv=None):
    args = _build_parser().parse_args(argv)
    command = args.command
    if command == "verify":
        command = ("verify", args.vcmd)
    cfg = CliConfig(
        command=command if isinstance(command, str) else "verify",
        paths=(args.form_file,) if hasattr(args, "form_file") else (),
        field_name=getattr(args, "field_name", ""),
        dim=getattr(args, "dim", -1),
        case=getattr(args, "case", ""),
        vector=getattr(args, "vector", ""),
        budget=args.budget,
        fmt=args.format,
        verbose=args.verbose)
    em = Emitter(cfg.fmt)
    try:
        return _HANDLERS[command](cfg, em)
    except InputError as e:
        print("input error: %s" % e, file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print("budget exceeded: need %d > budget %d; raise --budget or "
              "METRIC_AFFINE_BUDGET" % (e.required, e.budget), file=sys.stderr)
        return EXIT_BUDGET
    except AssertionError as e:
        print("FAIL: verified invariant violated: %r" % (e.args,))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
