"""Command line driver composing the verification suites into reports.

Subcommands: verify-virasoro, verify-hwv, find-hwv, check-characters,
report-all.  Exit codes: 0 all checks passed, 1 a verification failed,
2 bad configuration.  Reports are deterministic byte-for-byte for a fixed
configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import fock, hwv, lattice, qseries, virasoro

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2


@dataclass
class RunConfig:
    order_t: int = 100
    order_v: int = 120
    weight_cap: int = 2
    expensive: bool = False
    jobs: int = 1
    fmt: str = "text"
    out: str | None = None
    golden_dir: str | None = None

    def validate(self) -> None:
        if self.order_t < 1 or self.order_v < 1:
            raise ValueError("truncation orders must be positive")
        if self.weight_cap < 0:
            raise ValueError("weight cap must be nonnegative")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.fmt not in ("json", "text"):
            raise ValueError("format must be json or text")


@dataclass
class Report:
    command: str
    sections: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.get("ok", False) for s in self.sections)

    def add(self, section: dict) -> None:
        self.sections.append(section)

    def to_jsonable(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "ok": self.ok,
            "sections": self.sections,
        }

    def render_text(self) -> str:
        lines = [f"== {self.command}: {'PASS' if self.ok else 'FAIL'} =="]
        for s in self.sections:
            status = "pass" if s.get("ok") else "FAIL"
            name = s.get("suite") or s.get("name") or "?"
            extra = {
                k: v
                for k, v in s.items()
                if k not in ("suite", "name", "ok", "failures") and not isinstance(v, (list, dict))
            }
            detail = " ".join(f"{k}={v}" for k, v in sorted(extra.items()))
            lines.append(f"[{status}] {name} {detail}".rstrip())
            for f in s.get("failures", [])[:5]:
                lines.append(f"        failure: {f}")
        return "\n".join(lines) + "\n"


def _golden_text(name: str, golden_dir: str | None) -> str:
    if golden_dir is not None:
        with open(f"{golden_dir}/{name}", "r", encoding="utf-8") as fh:
            return fh.read()
    return resources.files("e6coset.golden").joinpath(name).read_text()


def _check_golden(name: str, state, golden_dir: str | None) -> dict:
    expected = fock.load_state(_golden_text(name, golden_dir))
    ok = expected == state
    section = {"name": f"golden:{name}", "ok": ok}
    if not ok:
        diff = state - expected
        section["failures"] = [f"differs from golden file in {len(diff)} monomials"]
        section["diff_head"] = fock.state_to_jsonable(diff)[:6]
    return section


def cmd_verify_virasoro(config: RunConfig) -> Report:
    rep = Report("verify-virasoro")
    e6, f4, cs = virasoro.omega_e6(), virasoro.omega_f4(), virasoro.omega_coset()
    for name, cv in (("omega_e6.json", e6), ("omega_f4.json", f4), ("omega_coset.json", cs)):
        rep.add(_check_golden(name, cv.state, config.golden_dir))
    rep.add(
        {
            "name": "coset_is_difference",
            "ok": cs.state == e6.state - f4.state,
        }
    )
    rep.add(
        {
            "name": "sugawara_reconstruction",
            "ok": virasoro.sugawara_f4_vacuum() == f4.state,
        }
    )
    for cv in (e6, f4, cs):
        rep.add(virasoro.ope_suite(cv).to_jsonable())
    states = virasoro.default_test_states(config.weight_cap)

    def run_brackets():
        return [r.to_jsonable() for r in virasoro.bracket_suites_all(test_states=states)]

    def run_commutant():
        return [virasoro.commutant_check(cs).to_jsonable()]

    def run_mutual():
        probe = [fock.State.vacuum(), cs.state, fock.State.exponential(lattice.MU)]
        return [virasoro.mutual_commutation_check(cs, f4, probe).to_jsonable()]

    tasks = [run_brackets, run_commutant, run_mutual]
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as ex:
            results = list(ex.map(lambda f: f(), tasks))
    else:
        results = [f() for f in tasks]
    for chunk in results:
        for section in chunk:
            rep.add(section)
    return rep


def cmd_verify_hwv(config: RunConfig) -> Report:
    rep = Report("verify-hwv")
    for b in hwv.builtin_hwvs():
        report = hwv.check_hwv(b.state, b.h, b.sector, b.name)
        section = report.to_jsonable()
        section["ok"] = report.ok
        section["name"] = f"hwv:{b.name}"
        rep.add(section)
        golden = f"hwv_{b.name}.json"
        rep.add(_check_golden(golden, b.state, config.golden_dir))
    cons = hwv.construct_u()
    rep.add(
        {
            "name": "u_reconstruction",
            "ok": cons.matches_closed_form
            and cons.milestones["R_mode_-2/3_is_zero"]
            and cons.milestones["R_mode_-5/3_is_5_omega"],
            **{k: str(v) for k, v in cons.milestones.items()},
        }
    )
    # tau-hat intertwines the two nontrivial-coset families
    builtins = {b.name: b for b in hwv.builtin_hwvs()}
    rep.add(
        {
            "name": "tau_hat_swaps_families",
            "ok": fock.tau_hat(builtins["e_lambda1"].state) == builtins["e_lambda6"].state
            and fock.tau_hat(builtins["r_vector"].state) == builtins["tau_r_vector"].state,
        }
    )
    return rep


_SECTOR_NAMES = {
    "zero": lattice.F4_ZERO,
    "omega4": lattice.OMEGA4,
}


def cmd_find_hwv(config: RunConfig, coset: int, weight: str, sector: str) -> Report:
    rep = Report("find-hwv")
    try:
        sec = _SECTOR_NAMES[sector]
    except KeyError:
        raise ValueError(f"unknown sector {sector!r}; use one of {sorted(_SECTOR_NAMES)}")
    wgt = Fraction(weight)
    res = hwv.find_hwvs(coset, wgt, sec)
    section = {
        "name": f"nullspace(coset={coset}, weight={wgt}, sector={sector})",
        "ok": True,
        "graded_dimension": len(res.basis_monomials),
        "solution_dimension": res.dimension,
        "vectors": [fock.state_to_jsonable(v) for v in res.vectors],
    }
    rep.add(section)
    return rep


def cmd_check_characters(config: RunConfig, identity: str | None = None) -> Report:
    rep = Report("check-characters")
    n = config.order_t

    def want(name: str) -> bool:
        return identity is None or identity == name

    if want("rr-sums"):
        res = qseries.check_rr_sums(n)
        rep.add({"name": "rr-sums", "order": n, **res, "ok": all(res.values())})
    if want("jtp"):
        pairs = [(8, 7), (13, 2), (11, 4), (1, 14), (12, 3), (9, 6), (4, 1), (3, 2)]
        results = {f"u=q^{u},v=q^{v}": qseries.jtp_check(u, v, n) for u, v in pairs}
        rep.add({"name": "jtp", "order": n, **results, "ok": all(results.values())})
    if want("char-products"):
        res = qseries.char_product_identities(n)
        rep.add({"name": "char-products", "order": n, **res, "ok": all(res.values())})
    if want("ramanujan"):
        rep.add({"name": "ramanujan", "order": n, "ok": qseries.ramanujan_identity_check(n)})
    if want("lemma-3.6") or want("congruence-splits"):
        res = qseries.congruence_split_checks(n)
        mismatch = res.pop("alternate_b_part2_first_mismatch_order")
        rep.add(
            {
                "name": "congruence-splits",
                "order": n,
                **res,
                "ok": all(res.values()),
                "note": (
                    "the variant with b(t^9) in place of phi(t^9) first fails at order "
                    f"{mismatch}; the residue-class identity itself is exact"
                ),
            }
        )
    if want("branching"):
        for module in ("vacuum", "weight1", "weight6"):
            res = qseries.branching_identity_check(module, 90 if n >= 90 else n)
            flags = [v for k, v in res.items() if isinstance(v, bool)]
            rep.add({"name": f"branching:{module}", **res, "ok": all(flags)})
    if want("principal"):
        res = qseries.principal_graded_dims(config.order_v)
        flags = [v for k, v in res.items() if isinstance(v, bool)]
        rep.add({"name": "principal", **res, "ok": all(flags)})
    if not rep.sections:
        raise ValueError(f"unknown identity {identity!r}")
    return rep


def cmd_report_all(config: RunConfig) -> Report:
    rep = Report("report-all")
    subs = [
        cmd_verify_virasoro(config),
        cmd_verify_hwv(config),
        cmd_check_characters(config),
        cmd_find_hwv(config, 0, "0", "zero"),
        cmd_find_hwv(config, 0, "1", "omega4"),
        cmd_find_hwv(config, 0, "2", "omega4"),
        cmd_find_hwv(config, 1, "2/3", "omega4"),
    ]
    for sub in subs:
        rep.add({"name": sub.command, "ok": sub.ok, "sections": sub.sections})
    if config.expensive:
        res = hwv.find_hwvs(0, Fraction(3), lattice.F4_ZERO)
        ok = res.dimension == 1 and hwv.contains_up_to_scale(res, hwv.u_closed_form())
        rep.add(
            {
                "name": "weight3-rediscovery",
                "ok": ok,
                "solution_dimension": res.dimension,
                "graded_dimension": len(res.basis_monomials),
            }
        )
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="e6coset",
        description="Exact verification suites for the E6 lattice vertex algebra "
        "and its coset Virasoro structure.",
    )
    parser.add_argument("--order", type=int, default=100, help="truncation order for series in t")
    parser.add_argument("--order-v", type=int, default=120, help="truncation order for series in v")
    parser.add_argument("--weight-cap", type=int, default=2, help="graded-basis cap for state suites")
    parser.add_argument("--expensive", action="store_true", help="enable the weight-3 nullspace run")
    parser.add_argument("--jobs", type=int, default=1, help="suite-level parallelism")
    parser.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")
    parser.add_argument("--out", default=None, help="write the report to this path")
    parser.add_argument("--golden-dir", default=None, help="override the packaged golden files")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-virasoro")
    sub.add_parser("verify-hwv")
    p_find = sub.add_parser("find-hwv")
    p_find.add_argument("coset", type=int, choices=(0, 1, 2))
    p_find.add_argument("weight", help="total weight, e.g. 2 or 2/3")
    p_find.add_argument("sector", choices=sorted(_SECTOR_NAMES))
    p_chars = sub.add_parser("check-characters")
    p_chars.add_argument("--identity", default=None, help="run a single identity group")
    sub.add_parser("report-all")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        order_t=args.order,
        order_v=args.order_v,
        weight_cap=args.weight_cap,
        expensive=args.expensive,
        jobs=args.jobs,
        fmt=args.fmt,
        out=args.out,
        golden_dir=args.golden_dir,
    )
    try:
        config.validate()
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    t0 = time.time()
    try:
        if args.command == "verify-virasoro":
            report = cmd_verify_virasoro(config)
        elif args.command == "verify-hwv":
            report = cmd_verify_hwv(config)
        elif args.command == "find-hwv":
            report = cmd_find_hwv(config, args.coset, args.weight, args.sector)
        elif args.command == "check-characters":
            report = cmd_check_characters(config, args.identity)
        elif args.command == "report-all":
            report = cmd_report_all(config)
        else:  # pragma: no cover
            raise AssertionError(args.command)
    except (ValueError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    text = (
        json.dumps(report.to_jsonable(), indent=1, sort_keys=True)
        if config.fmt == "json"
        else report.render_text()
    )
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(f"[e6coset] {report.command} finished in {time.time() - t0:.1f}s\n")
    return EXIT_OK if report.ok else EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
