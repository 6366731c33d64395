"""Command-line frontend: ``reedy-lab <command> [--zoo name:params | --spec file] ...``.

Exit codes: 0 every check passed, 1 some check failed, 2 input or schema
error, 3 a hypothesis needed by the computation does not hold (for example a
local algebra that is not semisimple).
"""
from __future__ import annotations

import argparse
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from .battery import BatteryConfig, battery
from .classes import (ALL_MODULES, PROJECTIVES, OracleMissing, all_inj, proj_all, uniform)
from .linalg import Field, QQ
from .report import Report
from .specfile import SpecError, load_spec_file
from .standard import HypothesisFailed, NotSemisimpleUnsupported
from .zoo import ParamOutOfRange, ZooInstance, zoo

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3

COMMANDS = ("check-reedy", "standard-modules", "irreducibles", "decompose", "spans", "glue", "hovey",
            "latching", "report")


class InputError(ValueError):
    """Bad command-line input (unknown instance, incompatible options)."""


@dataclass
class RunConfig:
    command: str
    zoo: str | None = None
    spec: str | None = None
    field: Field | None = None
    seed: int = 0
    criterion: str = "d"
    pairs: str = "proj_all"
    triples: str = "all-proj-all"
    battery_size: int = 25
    fmt: str = "text"
    out: str | None = None
    bundle: str = "check-reedy,standard-modules,decompose,latching"


def threads() -> int:
    try:
        return max(1, int(os.environ.get("REEDY_LAB_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------


def load_instance(cfg: RunConfig) -> ZooInstance:
    if bool(cfg.zoo) == bool(cfg.spec):
        raise InputError("give exactly one of --zoo or --spec")
    if cfg.zoo:
        return zoo(cfg.zoo, cfg.field or QQ)
    spec = load_spec_file(cfg.spec, cfg.field)
    inst = ZooInstance(spec.name, (), spec.field, spec.cat, spec.reedy)
    inst.notes["idempotents"] = spec.idempotents
    return inst


# ---------------------------------------------------------------------------
# commands (each fills a report)
# ---------------------------------------------------------------------------


def cmd_check_reedy(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    r = inst.reedy
    res = r.check()
    rep.add("degree_raising_plus", not res["a"], res["a"])
    rep.add("degree_lowering_minus", not res["b"], res["b"])
    rep.add("shared_local_algebras", not res["c"], res["c"])
    rep.add("wide_subcategories", not res["subcategory"], res["subcategory"])
    rep.add("rho_bijective", not res["d"] and not (res["a"] or res["b"] or res["c"] or res["subcategory"]),
            res["d"])
    bad = []
    if res["pass"]:
        cat = r.cat
        for x, y in product(cat.objects, repeat=2):
            for i in range(cat.dim(x, y)):
                f = cat.unit_vec(x, y, i)
                if r.reedy_factorize(x, y, f).recompose(cat) != f:
                    bad.append((x, y, cat.labels[(x, y)][i]))
    rep.add("factorization_round_trip", res["pass"] and not bad, bad)
    rep.table("hom_dims", {(x, y): r.cat.dim(x, y) for x, y in product(r.cat.objects, repeat=2)})
    rep.table("degrees", r.degree)
    rep.table("rho_blocks", {k: v for k, v in res["blocks"].items()})


def cmd_standard_modules(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    from .standard import (filtration_of_representable, induced_description_check, projectivity_failures,
                           theorem_a_suite, verify_idempotents)
    r = inst.reedy
    hyp = projectivity_failures(r)
    rep.add("projectivity_hypotheses", not hyp, hyp)
    if hyp:
        rep.status, rep.message = "HYPOTHESIS_FAILED", f"projectivity fails at {hyp[0]}"
        return
    suite = theorem_a_suite(r)
    rep.add("endomorphisms", all(v.ok for v in suite.endomorphisms.values()),
            [x for x, v in suite.endomorphisms.items() if not v.ok])
    rep.add("hom_vanishing", not suite.hom_violations, suite.hom_violations)
    rep.add("ext_vanishing", not suite.ext_violations, suite.ext_violations)
    dual = theorem_a_suite(r.op())
    rep.add("dual_suite", dual.passed, dual.hom_violations + dual.ext_violations)
    rep.table("end_dims", {x: (v.end_dim, v.local_dim) for x, v in suite.endomorphisms.items()})
    rep.table("hom_table", suite.hom_table)
    rep.table("ext_table", suite.ext_table)
    filt, bad = {}, []
    for x in r.sorted_objects():
        levels = filtration_of_representable(r, x, check_hypotheses=False)
        filt[x] = [{"degree": L.degree, "layer": L.factor_dims, "tensor": L.tensor_dims} for L in levels]
        bad += [(x, L.degree) for L in levels if L.factor_dims != L.tensor_dims]
    rep.add("filtration_layers", not bad, bad)
    rep.table("filtration", filt)
    ind = [x for x in r.sorted_objects() if not induced_description_check(r, x, cfg.seed)]
    rep.add("induced_description", not ind, ind)
    for x, elems in inst.notes.get("idempotents", {}).items():
        v = verify_idempotents(r, x, elems)
        rep.add(f"idempotents[{x}]", v["pass"], v)


def cmd_irreducibles(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    from .standard import count_irreducibles
    res = count_irreducibles(inst.reedy, cfg.seed)
    rep.table("center_dims", res.per_object)
    rep.table("simple_modules", res.simple_modules)
    rep.table("total", res.total)
    rep.table("total_simple", res.total_simple)
    rep.add("counted", True)


def _verdict_into(rep: Report, v, prefix: str = "") -> None:
    for name, ok in v.conditions.items():
        rep.add(prefix + name, ok, v.witnesses.get(name))
    rep.table(prefix + "orthogonality", v.orthogonality)
    rep.table(prefix + "end_dims", v.end_dims)
    rep.table(prefix + "notes", {k: val for k, val in v.notes.items()})


def cmd_decompose(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    from .decomposition import check_theorem_C, check_theorem_D, check_theorem_D_dual
    r = inst.reedy
    crit = cfg.criterion
    if crit == "c":
        _verdict_into(rep, check_theorem_C(r, cfg.seed))
    elif crit == "d":
        _verdict_into(rep, check_theorem_D(r, cfg.seed))
        dual = check_theorem_D_dual(r, cfg.seed)
        rep.table("dual_verdict", {"passed": dual.passed, "first_failure": dual.first_failure})
    elif crit == "e":
        from .spans import check_theorem_E
        if inst.eicat is None:
            raise InputError("criterion e needs a span instance (span_inj or poset_chain_meets)")
        v = check_theorem_E(inst.eicat, r.F)
        for name, ok in v.conditions.items():
            rep.add(name, ok, v.witnesses.get(name))
        rep.table("group_orders", v.group_orders)
        rep.table("span_hom_sizes", v.hom_sizes)
        if v.downstream is not None:
            _verdict_into(rep, v.downstream, prefix="downstream.")
            rep.table("endo_dims", [v.downstream.end_dims[x][0] for x in r.sorted_objects()])
    else:
        raise InputError(f"unknown criterion {crit!r}")


def cmd_spans(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    from .spans import free_action_violations, partial_injection_count, span_category
    e = inst.eicat
    if e is None:
        raise InputError("spans needs a span instance (span_inj or poset_chain_meets)")
    S = span_category(e)
    sizes = {(x, y): len(S.homs[(x, y)]) for x, y in product(e.objects, repeat=2)}
    rep.table("span_hom_sizes", sizes)
    if e.name.startswith("inj"):
        bad = []
        for (x, y), n in sizes.items():
            want = partial_injection_count(_set_size(x), _set_size(y))
            if n != want:
                bad.append((x, y, n, want))
        rep.add("partial_injection_counts", not bad, bad)
    res = inst.reedy.check()
    rep.add("span_reedy_structure", res["pass"], res["d"])
    rep.add("degrees_from_automorphism_strip", True, e.degrees())
    rep.table("free_action_violations", len(free_action_violations(e, S)))


def _set_size(x: str) -> int:
    return int(str(x).strip("[]"))


def _battery(inst: ZooInstance, cfg: RunConfig) -> list:
    return battery(inst.reedy.cat, BatteryConfig(count=cfg.battery_size, seed=cfg.seed))


def cmd_glue(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    from .bifib import cotorsion_glue_check, injective_coincidence, projective_coincidence
    from .standard import projectivity_failures
    r = inst.reedy
    hyp = projectivity_failures(r)
    if hyp:
        raise HypothesisFailed(f"projectivity fails at {hyp[0]}")
    pairs = {"proj_all": proj_all, "all_inj": all_inj}
    mods = _battery(inst, cfg)
    for name in cfg.pairs.split(","):
        if name not in pairs:
            raise InputError(f"unknown pair family {name!r}; known: {', '.join(pairs)}")
        res = cotorsion_glue_check(r, pairs[name](), mods, random.Random(cfg.seed))
        rep.add(f"{name}.factorizations", res.factorizations_valid == res.factorizations, res.problems)
        rep.add(f"{name}.membership", res.membership_ok == res.factorizations, res.problems)
        rep.add(f"{name}.routes_agree", res.routes_agree == res.factorizations)
        rep.add(f"{name}.lifting", res.lifting_ok == res.lifting_tests,
                {"ok": res.lifting_ok, "tests": res.lifting_tests}, scope="SAMPLED")
        rep.add(f"{name}.ext_orthogonality", res.ext_violations == 0,
                {"violations": res.ext_violations, "pairs": res.ext_pairs}, scope="SAMPLED")
        if name == "proj_all" and r.is_direct():
            co = projective_coincidence(r, mods)
            rep.add("glued_projectives_are_projective", co.passed, co.disagreements)
            rep.table("glued_projective_members", co.members)
        if name == "all_inj" and r.is_inverse():
            co = injective_coincidence(r, mods)
            rep.add("glued_injectives_are_injective", co.passed, co.disagreements)
            rep.table("glued_injective_members", co.members)


TRIPLES = {
    "all-proj-all": (ALL_MODULES, PROJECTIVES, ALL_MODULES),
    "all-all-all": (ALL_MODULES, ALL_MODULES, ALL_MODULES),
}


def cmd_hovey(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    from .bifib import hovey_glue_check
    from .classes import PairFamily
    from .standard import projectivity_failures
    r = inst.reedy
    hyp = projectivity_failures(r)
    if hyp:
        raise HypothesisFailed(f"projectivity fails at {hyp[0]}")
    if cfg.triples not in TRIPLES:
        raise InputError(f"unknown triple {cfg.triples!r}; known: {', '.join(TRIPLES)}")
    q, w, rr = TRIPLES[cfg.triples]
    Q, W, R = uniform(q), uniform(w), uniform(rr)
    if cfg.triples == "all-proj-all":
        # over a self-injective local algebra projectives and injectives coincide
        cof, fib = proj_all(), all_inj()
    else:
        cof = fib = PairFamily(uniform(ALL_MODULES), uniform(ALL_MODULES), lambda x, f: _trivial_factor(f),
                               tag="ALL_ALL", hereditary=True)
    h = hovey_glue_check(r, Q, W, R, cof, fib, _battery(inst, cfg), random.Random(cfg.seed))
    rep.add("cocompatible", not h.cocompatible, h.cocompatible)
    rep.add("compatible", not h.compatible, h.compatible)
    rep.add("cofibrant_pair", h.trivially_cofibrant.passed, h.trivially_cofibrant.problems, scope="SAMPLED")
    rep.add("fibrant_pair", h.trivially_fibrant.passed, h.trivially_fibrant.problems, scope="SAMPLED")
    rep.add("left_identity", not h.identity_left_failures, h.identity_left_failures)
    rep.add("right_identity", not h.identity_right_failures, h.identity_right_failures)
    rep.add("thickness", not h.thick_failures, h.thick_failures, scope="SAMPLED")
    rep.add("hereditary", not h.hereditary_failures, h.hereditary_failures, scope="SAMPLED")
    rep.table("w_members", h.w_members)


def _trivial_factor(f):
    from .classes import ModuleFactorization
    return ModuleFactorization(f.src, f.src.identity(), f)


def cmd_latching(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    from .latching import latching_suite
    r = inst.reedy
    bad, rows = [], 0
    for k, M in enumerate(_battery(inst, cfg)):
        for row in latching_suite(r, M):
            rows += 1
            if not row.ok:
                bad.append({"module": k, "object": row.obj})
    rep.add("latching_matching", not bad, bad)
    rep.table("rows", rows)


HANDLERS = {
    "check-reedy": cmd_check_reedy,
    "standard-modules": cmd_standard_modules,
    "irreducibles": cmd_irreducibles,
    "decompose": cmd_decompose,
    "spans": cmd_spans,
    "glue": cmd_glue,
    "hovey": cmd_hovey,
    "latching": cmd_latching,
}


def cmd_report(inst: ZooInstance, cfg: RunConfig, rep: Report) -> None:
    """Run a bundle of commands (in parallel up to REEDY_LAB_THREADS) and merge the results."""
    names = [n.strip() for n in cfg.bundle.split(",") if n.strip()]
    for n in names:
        if n not in HANDLERS:
            raise InputError(f"unknown command {n!r} in bundle")

    def one(name):
        sub = Report(name, rep.instance, rep.field, rep.seed)
        try:
            HANDLERS[name](inst, cfg, sub)
        except (NotSemisimpleUnsupported, HypothesisFailed) as exc:
            sub.status, sub.message = type(exc).__name__, str(exc)
        return name, sub

    with ThreadPoolExecutor(max_workers=threads()) as pool:
        results = sorted(pool.map(one, names))
    for name, sub in results:
        for c in sub.checks:
            rep.add(f"{name}.{c.name}", c.passed, c.witnesses, c.scope)
        for t, v in sub.tables.items():
            rep.tables[f"{name}.{t}"] = v
        if sub.status:
            rep.add(f"{name}.completed", False, {"status": sub.status, "message": sub.message})


HANDLERS["report"] = cmd_report


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reedy-lab", description="Checks on finite linear Reedy categories.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_argument_group("instance")
    src.add_argument("--zoo", help="built-in instance, e.g. fin_all:2")
    src.add_argument("--spec", help="JSON category presentation file")
    p.add_argument("--field", help="Q or Fp:<p> (overrides the instance default)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--criterion", choices=("c", "d", "e"), default="d")
    p.add_argument("--pairs", default="proj_all", help="comma list of proj_all, all_inj")
    p.add_argument("--triples", default="all-proj-all", help=f"one of {', '.join(TRIPLES)}")
    p.add_argument("--battery", type=int, default=25, dest="battery_size")
    p.add_argument("--bundle", default=RunConfig.bundle, help="commands run by 'report'")
    p.add_argument("--format", choices=("json", "text"), default=None, dest="fmt")
    p.add_argument("--out", help="write the JSON report to this path")
    p.add_argument("--no-clock", action="store_true", help="omit the wall-clock field from JSON")
    return p


def run(cfg: RunConfig) -> Report:
    """Execute one command; errors are recorded on the report (see exit codes)."""
    label = cfg.zoo or cfg.spec or "?"
    rep = Report(cfg.command, label, (cfg.field or QQ).tag, cfg.seed)
    t0 = time.perf_counter()
    inst = load_instance(cfg)
    rep.field = inst.field.tag if hasattr(inst, "field") else rep.field
    HANDLERS[cfg.command](inst, cfg, rep)
    rep.canonicalize()
    rep.wall_clock_seconds = round(time.perf_counter() - t0, 3)
    return rep


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        field = Field.parse(args.field) if args.field else None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    fmt = args.fmt or ("json" if args.out else "text")
    cfg = RunConfig(args.command, args.zoo, args.spec, field, args.seed, args.criterion, args.pairs,
                    args.triples, args.battery_size, fmt, args.out, args.bundle)
    code = EXIT_PASS
    rep = Report(cfg.command, cfg.zoo or cfg.spec or "?", (field or QQ).tag, cfg.seed)
    try:
        rep = run(cfg)
        code = EXIT_PASS if rep.passed else EXIT_FAIL
        if rep.status == "HYPOTHESIS_FAILED":
            code = EXIT_UNSUPPORTED
    except (InputError, SpecError, ParamOutOfRange, KeyError, OracleMissing, OSError, ValueError) as exc:
        if isinstance(exc, (NotSemisimpleUnsupported, HypothesisFailed)):
            rep.status, rep.message = type(exc).__name__, str(exc)
            code = EXIT_UNSUPPORTED
        else:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    text = rep.to_json(wall_clock=not args.no_clock) if fmt == "json" else rep.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json(wall_clock=not args.no_clock))
        if fmt == "text":
            sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
