"""Command-line front end.

    skewalg validate     FILE            structural + axiom invariant suite
    skewalg components   FILE            connected components and transversal
    skewalg traces       FILE            all trace-map matrices + invariants
    skewalg separability FILE [--oracle] [--global] [--isotropy]
    skewalg skew-table   FILE            basis multiplication table
    skewalg fuzz [--seed N] [--count N] [--max-morphisms N] [--max-dim N]

Reports are JSON on stdout and are byte-identical for identical inputs and
seeds; wall-clock timing goes to stderr.  Exit code 0 iff every requested
check passed; 1 on failed checks; 2 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .algebra import AlgebraError
from .fuzz import run_fuzz
from .instances import InstanceFormatError, load_instance
from .groupoid import GroupoidError, validate_groupoid
from .linalg import LinalgError
from .partial_action import ActionError, invariant_suite
from .separability import (NotGlobal, SeparabilityError, decide_global,
                           decide_separability, extract_witness,
                           isotropy_transport_psi, isotropy_witness_transport,
                           oracle_separability, trace_between, trace_into,
                           trace_invariant_suite, trace_total)
from .skew_ring import SkewRingError, build_skew_ring

MAP_CONVENTION = "annihilate_complement"


def _vec(v) -> list:
    return [str(c) for c in v]


def _mat(m) -> list:
    return [[str(c) for c in row] for row in m.data]


def _family(fam) -> dict:
    if fam is None or fam.is_empty:
        return {"empty": True}
    return {"empty": False, "particular": _vec(fam.particular),
            "kernel": [_vec(k) for k in fam.kernel_basis]}


def _certificate(cert) -> dict:
    return {
        "witness": _vec(cert.witness),
        "witness_family": _family(cert.witness_family),
        "tensor_dim": cert.tensor.dim,
        "summands": [[g, _vec(u), h, _vec(w)] for g, u, h, w in cert.summands],
        "checks": dict(cert.checks),
    }


def _verdict(v) -> dict:
    out = {
        "separable": v.separable,
        "witness": _vec(v.witness) if v.witness is not None else None,
        "per_component": [
            {"objects": list(c.objects), "separable": c.separable,
             "witness_family": _family(c.witness_family),
             "solved_objects": list(c.solved_objects)}
            for c in v.per_component],
    }
    if v.certificate is not None:
        out["certificate"] = _certificate(v.certificate)
    return out


def _load(path):
    inst = load_instance(path)
    head = {
        "instance": {"path": str(path), "digest": inst.digest},
        "metadata": {"field": inst.data["field"], "map_convention": MAP_CONVENTION},
    }
    return inst, head


def cmd_validate(args) -> tuple:
    inst, report = _load(args.file)
    pa = inst.action
    greport = validate_groupoid(pa.groupoid)
    report["groupoid_violations"] = [
        {"code": v.code, "message": v.message} for v in greport.violations]
    ok = greport.ok
    if ok:
        areport = pa.validate()
        report["action_violations"] = [
            {"code": v.code, "message": v.message} for v in areport.violations]
        ok = areport.ok
        if ok:
            report["object_decomposition"] = pa.has_object_decomposition()
            report["invariants"] = invariant_suite(pa)
            ok = report["object_decomposition"] and all(report["invariants"].values())
    report["ok"] = ok
    return report, 0 if ok else 1


def cmd_components(args) -> tuple:
    inst, report = _load(args.file)
    partition = inst.action.groupoid.connected_components()
    report["classes"] = [list(c) for c in partition.classes]
    report["transversal"] = list(partition.transversal)
    report["ok"] = True
    return report, 0


def cmd_traces(args) -> tuple:
    inst, report = _load(args.file)
    pa = inst.action
    pa.ensure_valid()
    partition = pa.groupoid.connected_components()
    pairwise = []
    for cls in partition.classes:
        for i in cls:
            for j in cls:
                pairwise.append({"source": i, "target": j,
                                 "matrix": _mat(trace_between(pa, i, j).matrix)})
    report["trace_between"] = pairwise
    report["trace_into"] = [{"target": j, "matrix": _mat(trace_into(pa, j).matrix)}
                            for j in pa.groupoid.objects]
    report["trace_total"] = _mat(trace_total(pa).matrix)
    report["invariants"] = trace_invariant_suite(pa)
    report["ok"] = all(report["invariants"].values())
    return report, 0 if report["ok"] else 1


def cmd_separability(args) -> tuple:
    inst, report = _load(args.file)
    pa = inst.action
    pa.ensure_valid()
    ok = True
    if args.use_global:
        verdict = decide_global(pa)
        report["decision_path"] = "global_transversal"
    else:
        verdict = decide_separability(pa)
        report["decision_path"] = "full_trace_system"
    report["verdict"] = _verdict(verdict)
    if verdict.certificate is not None:
        ok = ok and verdict.certificate.ok
    if args.oracle:
        ring = build_skew_ring(pa)
        oracle = oracle_separability(pa, ring)
        agree = oracle.separable == verdict.separable
        report["oracle"] = {"separable": oracle.separable,
                            "tensor_dim": oracle.tensor.dim,
                            "agrees_with_decision": agree}
        ok = ok and agree
        if oracle.separable:
            a = extract_witness(pa, oracle.tensor, oracle.solutions.particular)
            alg = pa.algebra
            extracted_ok = alg.commutes_with_all(a) and all(
                trace_into(pa, e).matrix.apply(a) == pa.obj_idem(e)
                for e in pa.groupoid.objects)
            report["oracle"]["extracted_witness"] = _vec(a)
            report["oracle"]["extracted_witness_ok"] = extracted_ok
            ok = ok and extracted_ok
    if args.isotropy:
        transports = []
        for comp in verdict.per_component:
            if not comp.separable:
                continue
            tr = isotropy_witness_transport(pa, comp.objects,
                                            comp.witness_family.particular)
            entry = {"objects": list(comp.objects), "object": tr.obj,
                     "witness": _vec(tr.witness),
                     "arrows": dict(tr.arrows), "checks": dict(tr.checks)}
            ok = ok and all(tr.checks.values())
            psis = []
            for kobj, arrow in tr.arrows.items():
                if kobj == tr.obj:
                    continue
                psi = isotropy_transport_psi(pa, arrow)
                psis.append({"arrow": arrow, "source": psi.source_object,
                             "target": psi.target_object, "checks": dict(psi.checks)})
                ok = ok and all(psi.checks.values())
            entry["isotropy_isomorphisms"] = psis
            transports.append(entry)
        report["isotropy_transport"] = transports
    report["ok"] = ok
    return report, 0 if ok else 1


def cmd_skew_table(args) -> tuple:
    inst, report = _load(args.file)
    pa = inst.action
    pa.ensure_valid()
    ring = build_skew_ring(pa)
    report["ring_dim"] = ring.dim
    report["basis"] = [[g, _vec(u)] for g, u in ring.basis]
    report["products"] = ring.multiplication_rows()
    report["ok"] = True
    return report, 0


def cmd_fuzz(args) -> tuple:
    report = run_fuzz(args.seed, args.count, args.max_morphisms, args.max_dim)
    report["command"] = "fuzz"
    report["metadata"] = {"map_convention": MAP_CONVENTION}
    report["ok"] = report["all_agree"]
    return report, 0 if report["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewalg",
                                description="partial skew groupoid rings: "
                                            "validation, traces, separability")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp):
        sp.add_argument("file", help="instance file (JSON)")
        sp.add_argument("--out", help="also write the report to this path")
        return sp

    with_file(sub.add_parser("validate", help="structural and axiom checks"))
    with_file(sub.add_parser("components", help="connected components"))
    with_file(sub.add_parser("traces", help="trace-map matrices"))
    sp = with_file(sub.add_parser("separability", help="decide and certify"))
    sp.add_argument("--oracle", action="store_true",
                    help="also solve the defining tensor system and compare")
    sp.add_argument("--global", dest="use_global", action="store_true",
                    help="use the global-action single-object criterion")
    sp.add_argument("--isotropy", action="store_true",
                    help="transport witnesses to isotropy groups (global actions)")
    with_file(sub.add_parser("skew-table", help="basis multiplication table"))
    sp = sub.add_parser("fuzz", help="random differential testing")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--max-morphisms", type=int, default=6)
    sp.add_argument("--max-dim", type=int, default=6)
    sp.add_argument("--out", help="also write the report to this path")
    return p


_HANDLERS = {
    "validate": cmd_validate,
    "components": cmd_components,
    "traces": cmd_traces,
    "separability": cmd_separability,
    "skew-table": cmd_skew_table,
    "fuzz": cmd_fuzz,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        report, code = _HANDLERS[args.command](args)
    except (InstanceFormatError, OSError) as exc:
        report = {"command": args.command, "ok": False,
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
        code = 2
    except (ActionError, AlgebraError, GroupoidError, LinalgError,
            SeparabilityError, SkewRingError) as exc:
        report = {"command": args.command, "ok": False,
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
        code = 1
    report.setdefault("command", args.command)
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print("elapsed_ms=%d" % int((time.perf_counter() - started) * 1000),
          file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
