#!/usr/bin/env python3
"""Run every verification sweep in one go, with timings.

This is the command-line equivalent of the acceptance test suite; handy
when bisecting a regression or eyeballing how the runtime is spent.
Exits non-zero on the first failing section.
"""

import sys
import time

from metric_affine.classify import (MODE_MOTION, MODE_WEAK,
                                    quadric_duality_check, reproduce_table,
                                    solve_for_qtilde, verify_main_prop,
                                    verify_projective_theorem)
from metric_affine.fields import GF2, GF3, GF4, GF5, field_make
from metric_affine.groups import reflection_generation_status
from metric_affine.homog import reflection_correspondence, roundtrip_checks
from metric_affine.linalg import vec
from metric_affine.quadform import (all_vectors, enumerate_forms,
                                    is_nondegenerate, qf_eval)
from metric_affine.transvect import (annihilator_transvections_in_weak,
                                     classify_direction,
                                     scaled_transvection_never_weak)


def section(name):
    print("== %s" % name)
    return time.perf_counter()


def done(t0):
    print("   ok (%.2f s)" % (time.perf_counter() - t0))


def nonzero_vectors(fld, n):
    return [x for x in all_vectors(fld, n) if any(c != fld.zero for c in x)]


def main():
    t = section("sporadic tables (all four, GF(2)+GF(4) for the first)")
    for dim, fname in ((0, "GF(2)"), (0, "GF(4)"), (1, "GF(2)"),
                       (1, "GF(3)"), (2, "GF(2)")):
        rep = reproduce_table(dim, field_make(fname))
        if not rep.ok:
            print("   FAIL: dim %d over %s" % (dim, fname))
            for line in rep.mismatch:
                print("     " + line)
            return 1
    done(t)

    t = section("motion group = weak group of every unit scaling of the lift")
    for fld, dims in ((GF2, (1, 2, 3)), (GF3, (1, 2)), (GF5, (1,))):
        for n in dims:
            rep = verify_main_prop(fld, n)
            if not rep.ok:
                print("   FAIL: %s dim %d: %r" % (fld.name, n, rep.failures))
                return 1
    done(t)

    t = section("all solutions of the group equation (both modes)")
    for fld, n in ((GF4, 1), (GF5, 1), (GF3, 2), (GF2, 3)):
        for Q in enumerate_forms(fld, n):
            solve_for_qtilde(Q, MODE_MOTION)
            solve_for_qtilde(Q, MODE_WEAK)
    done(t)

    t = section("rank-one intersection cardinalities + weak-membership rule")
    for fld in (GF2, GF3):
        for n in (1, 2, 3):
            for Q in enumerate_forms(fld, n):
                for x in nonzero_vectors(fld, n):
                    f = vec(fld, x)
                    classify_direction(Q, f)
                    annihilator_transvections_in_weak(Q, f)
    done(t)

    t = section("scaled transvections never weak")
    for fld in (GF3, GF5):
        for n in (1, 2):
            for Q in enumerate_forms(fld, n):
                for x in nonzero_vectors(fld, n):
                    if not scaled_transvection_never_weak(Q, vec(fld, x)):
                        print("   FAIL: %r, f=%r" % (Q, x))
                        return 1
    done(t)

    t = section("lift/drop round trips")
    for fld in (GF2, GF3):
        for n in (1, 2, 3):
            rep = roundtrip_checks(fld, n)
            if not rep.ok:
                print("   FAIL: %s dim %d: %r" % (fld.name, n, rep.violations))
                return 1
    done(t)

    t = section("reflection correspondence + generation taxonomy")
    for n in (1, 2):
        for Q in enumerate_forms(GF3, n):
            if not is_nondegenerate(Q):
                continue
            vex = all_vectors(GF3, n)
            for r in vex:
                if qf_eval(Q, r) == 0:
                    continue
                for p in vex:
                    if not reflection_correspondence(Q, vec(GF3, p),
                                                    vec(GF3, r)):
                        print("   FAIL: %r p=%r r=%r" % (Q, p, r))
                        return 1
    for n in (1, 2, 3, 4):
        for Q in enumerate_forms(GF2, n):
            reflection_generation_status(Q)
    done(t)

    t = section("projective equality forces linear equality")
    for fld in (GF2, GF3):
        for n in (0, 1, 2):
            rep = verify_projective_theorem(fld, n)
            if not rep.ok:
                print("   FAIL: %s dim %d" % (fld.name, n))
                return 1
    done(t)

    t = section("quadric duality (odd characteristic)")
    for fld, n in ((GF3, 2), (GF3, 3), (GF5, 2), (GF5, 3)):
        for Q in enumerate_forms(fld, n):
            rep = quadric_duality_check(Q)
            if rep.status == "mismatch":
                print("   FAIL: %r: %r" % (Q, rep.details))
                return 1
    done(t)

    print("all sweeps passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
