"""Command-line runner: JSON job files in, JSON-lines reports out.

Every report starts with a ``job`` line echoing the resolved job (defaults
filled in) and the package version, followed by one line per check:
``{"check", "params", "verdict", "data", "witness"?}``.  Rationals are printed
as ``"p/q"`` strings, integers as JSON numbers.

Exit status: 0 all checks pass, 1 some verdict is negative, 2 input error,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from math import comb

from . import __version__
from .filtration import FiltrationFamily, multiplicativity_sample
from .groebner import BudgetExceeded, Ideal, buchberger, initial_ideal
from .polycore import GREVLEX, LEX, Polynomial, PolynomialRing
from .quotient import QuotientRing
from .rees import (
    ReesWindow,
    alpha_fiber_table,
    central_fiber,
    check_flatness,
    check_flatness_table,
    domain_test,
    fiber_totals,
    support_scan,
    verify_graded_bookkeeping,
    weight_cone_sample,
)
from .toric import (
    LatticeBox,
    ToricModel,
    cartier_index,
    check_noncartier_sum,
    check_valuative_ideal,
    divisor_sections,
    is_cartier,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
NEGATIVE = {"fail", "violation"}
COMMANDS = ("gb", "initial", "flatness", "fiber", "toric", "example41")


class InputError(ValueError):
    """The job file is malformed or inconsistent."""


# --- rendering ---------------------------------------------------------------


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        raise TypeError(f"refusing to print inexact number {x!r}")
    if isinstance(x, Polynomial):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


@dataclass
class CheckResult:
    check: str
    params: dict
    verdict: str
    data: dict = field(default_factory=dict)
    witness: object = None

    def line(self) -> str:
        out = {"check": self.check, "params": self.params, "verdict": self.verdict, "data": self.data}
        if self.witness is not None:
            out["witness"] = self.witness
        return json.dumps(jsonable(out), sort_keys=False, ensure_ascii=False)


# --- job spec -----------------------------------------------------------------


def _rational(x):
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not an exact rational: {x!r}") from exc


def _window(raw, r: int, where: str) -> dict:
    if not isinstance(raw, dict) or "N" not in raw:
        raise InputError(f"{where} needs an object with N")
    N = raw["N"]
    if not isinstance(N, int) or N < 0:
        raise InputError(f"{where}.N must be a non-negative integer")
    W = raw.get("W", [N] * r)
    if len(W) != r:
        raise InputError(f"{where}.W needs {r} entries")
    upper = []
    for b in W:
        if isinstance(b, int):
            upper.append(b)
        elif isinstance(b, list) and len(b) == 2 and all(isinstance(v, int) for v in b):
            lo, hi = b
            # negative indices truncate to 0, so [lo, hi] with lo <= 0 is [0, hi]
            if lo > 0:
                raise InputError(f"{where}.W lower bounds must be <= 0, got {lo}")
            upper.append(hi)
        else:
            raise InputError(f"{where}.W entries must be integers or [lo, hi] pairs")
    if any(u < 0 for u in upper):
        raise InputError(f"{where}.W upper bounds must be non-negative")
    return {"N": N, "W": upper}


@dataclass
class JobSpec:
    raw: dict
    ring: PolynomialRing | None = None
    resolved: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, raw: dict) -> "JobSpec":
        if not isinstance(raw, dict):
            raise InputError("job must be a JSON object")
        spec = cls(raw)
        spec._resolve()
        return spec

    def _resolve(self):
        raw = self.raw
        out: dict = {}
        if "ring" in raw:
            ring = raw["ring"]
            names = ring.get("vars")
            if not names or not all(isinstance(v, str) for v in names):
                raise InputError("ring.vars must be a non-empty list of names")
            grading = ring.get("grading", [1] * len(names))
            if grading and isinstance(grading[0], list):
                if any(len(g) != 1 for g in grading):
                    raise InputError("multigradings with more than one component are not supported")
                grading = [g[0] for g in grading]
            try:
                self.ring = PolynomialRing(names, grading)
            except ValueError as exc:
                raise InputError(str(exc)) from exc
            out["ring"] = {"vars": list(names), "grading": list(self.ring.grading)}
        out["relations"] = list(raw.get("relations", []))
        out["generators"] = list(raw.get("generators", out["relations"]))
        order = raw.get("order", "grevlex")
        if order not in ("grevlex", "lex"):
            raise InputError(f"unknown term order {order!r}")
        out["order"] = order
        if "weight" in raw:
            out["weight"] = [_rational(w) for w in raw["weight"]]
        cutters = list(raw.get("cutters", []))
        out["cutters"] = cutters
        r = len(cutters)
        if r:
            out["alphas"] = [[_rational(a) for a in al] for al in raw.get("alphas", [[1] * r])]
            if any(len(al) != r for al in out["alphas"]):
                raise InputError(f"each alpha needs {r} entries")
            out["window"] = _window(raw.get("window", {"N": 4}), r, "window")
            out["fiber_window"] = _window(raw.get("fiber_window", out["window"]), r, "fiber_window")
            out["domain_degree"] = raw.get("domain_degree", out["fiber_window"]["N"] // 2)
            mult = raw.get("multiplicativity", {})
            out["multiplicativity"] = {
                "samples": int(mult.get("samples", 0)),
                "max_degree": int(mult.get("max_degree", 3)),
            }
        if "flatness_table" in raw:
            out["flatness_table"] = raw["flatness_table"]
        if "toric" in raw:
            t = raw["toric"]
            if "rays" not in t:
                raise InputError("toric block needs rays")
            rk = len(t["rays"])
            box = t.get("box", 5)
            if isinstance(box, int):
                box = [[-box] * rk, [box] * rk]
            out["toric"] = {
                "rays": t["rays"],
                "overlattice": [[_rational(x) for x in g] for g in t.get("overlattice", [])],
                "divisors": t.get("divisors", []),
                "alphas": [[_rational(a) for a in al] for al in t.get("alphas", [[1] * rk])],
                "lambdas": [_rational(v) for v in t.get("lambdas", [0, 1, 2])],
                "box": box,
            }
        out["seed"] = raw.get("seed", 0)
        self.resolved = out

    def need_ring(self) -> PolynomialRing:
        if self.ring is None:
            raise InputError("job has no ring declaration")
        return self.ring

    def parse_all(self, key: str) -> list[Polynomial]:
        ring = self.need_ring()
        return [ring.parse(s) if isinstance(s, str) else _bad(key) for s in self.resolved[key]]


def _bad(key):
    raise InputError(f"{key} entries must be polynomial strings")


def load_job(path: str | None) -> JobSpec:
    if path is None:
        text = resources.files("multirees").joinpath("data/example41.json").read_text()
    elif path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"job file is not valid JSON: {exc}") from exc
    return JobSpec.from_dict(raw)


# --- runtime context ------------------------------------------------------------


@dataclass
class Options:
    threads: int = 1
    gb_steps: int | None = None
    cells: int | None = None
    timings: bool = False


class Runner:
    def __init__(self, spec: JobSpec, opts: Options):
        self.spec = spec
        self.opts = opts
        self.results: list[CheckResult] = []
        self._family = None
        self._quotient = None

    def emit(self, result: CheckResult, started: float | None = None):
        if self.opts.timings and started is not None:
            result.data["seconds"] = f"{time.perf_counter() - started:.3f}"
        self.results.append(result)
        return result

    def quotient(self) -> QuotientRing:
        if self._quotient is None:
            ring = self.spec.need_ring()
            self._quotient = QuotientRing(ring, self.spec.parse_all("relations"),
                                          max_steps=self.opts.gb_steps)
        return self._quotient

    def family(self) -> FiltrationFamily:
        if self._family is None:
            if not self.spec.resolved.get("cutters"):
                raise InputError("job declares no cutters")
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                self._family = FiltrationFamily(self.quotient(), self.spec.parse_all("cutters"))
            for w in caught:
                self.emit(CheckResult("diagnostic", {}, "pass", {"warning": str(w.message)}))
        return self._family

    def window(self, key: str) -> ReesWindow:
        w = self.spec.resolved[key]
        return ReesWindow(self.family(), w["N"], w["W"], self.opts.cells).fill()

    # commands ---------------------------------------------------------------

    def gb(self):
        t0 = time.perf_counter()
        ring = self.spec.need_ring()
        order = LEX if self.spec.resolved["order"] == "lex" else GREVLEX
        ideal = Ideal(ring, self.spec.parse_all("generators"))
        kw = {} if self.opts.gb_steps is None else {"max_steps": self.opts.gb_steps}
        G = buchberger(ideal, order, **kw)
        self.emit(CheckResult(
            "groebner_basis",
            {"order": self.spec.resolved["order"], "generators": [str(g) for g in ideal.generators]},
            "pass",
            {"basis": [str(g) for g in G.elements], "size": len(G)},
        ), t0)

    def initial(self):
        t0 = time.perf_counter()
        ring = self.spec.need_ring()
        w = self.spec.resolved.get("weight")
        if w is None:
            raise InputError("initial needs a weight vector")
        ideal = Ideal(ring, self.spec.parse_all("relations"))
        kw = {} if self.opts.gb_steps is None else {"max_steps": self.opts.gb_steps}
        init = initial_ideal(ideal, w, **kw)
        self.emit(CheckResult(
            "initial_ideal", {"weight": w}, "pass",
            {"ideal": str(init), "generators": [str(g) for g in init.generators]},
        ), t0)
        return init

    def flatness(self):
        t0 = time.perf_counter()
        if "flatness_table" in self.spec.resolved:
            table = []
            for cell in self.spec.resolved["flatness_table"]:
                conv = dict(cell)
                conv["M"] = [[_rational(x) for x in row] for row in cell["M"]]
                conv["subs"] = [[[_rational(x) for x in row] for row in s] for s in cell["subs"]]
                table.append(conv)
            rep = check_flatness_table(table)
            params = {"source": "table", "cells": len(table)}
        else:
            win = self.window("window")
            rep = check_flatness(win, threads=self.opts.threads)
            params = {"source": "window", "N": win.N, "W": list(win.W), "subsets": 2 ** win.r}
        nonzero = [
            {"subset": list(s), "m": list(m), "n": n, "homology": h}
            for s, m, n, h, _ in rep.cells if any(h[1:])
        ]
        data = {"complexes": len(rep.cells), "max_positive_homology": rep.max_positive_homology(),
                "nonzero_positive_homology": nonzero}
        self.emit(CheckResult("flatness", params, rep.verdict, data, rep.witness), t0)
        return rep

    def fiber(self):
        t0 = time.perf_counter()
        win = self.window("fiber_window")
        pieces = central_fiber(win)
        totals = fiber_totals(pieces)
        params = {"N": win.N, "W": list(win.W)}
        table = [[n, list(m), p.dim] for (n, m), p in sorted(pieces.items()) if p.dim]
        self.emit(CheckResult("central_fiber", params, "pass",
                              {"totals": [totals[n] for n in range(win.N + 1)], "pieces": table}), t0)

        t0 = time.perf_counter()
        d = self.spec.resolved["domain_degree"]
        res = domain_test(win, d)
        witness = None if res.passed else [str(x) for x in res.witness]
        self.emit(CheckResult("domain_test", {"d": d}, "pass" if res.passed else "fail",
                              {"basis_size": res.basis_size, "pairs_checked": res.pairs_checked},
                              witness), t0)

        t0 = time.perf_counter()
        sample = weight_cone_sample(win, pieces)
        scan = support_scan(win)
        agree = scan == sample.support
        # saturation is reported, not judged: weighted gradings leave genuine holes
        self.emit(CheckResult("weight_cone", params, "pass" if agree else "fail", {
            "support_size": len(sample.support),
            "rays": sample.rays,
            "saturated": sample.saturated,
            "scan_agrees": agree,
            "holes": sample.holes,
        }), t0)

        dims = {k: p.dim for k, p in pieces.items()}
        alpha_tables_agree = True
        for alpha in self.spec.resolved["alphas"]:
            t0 = time.perf_counter()
            rep = verify_graded_bookkeeping(win, alpha)
            same = alpha_fiber_table(win, alpha) == dims
            alpha_tables_agree &= same
            totals_a = rep.totals()
            self.emit(CheckResult(
                "bookkeeping", {"alpha": alpha}, "pass" if rep.ok and same else "fail",
                {"levels": len(rep.levels), "totals": [totals_a.get(n, 0) for n in range(win.N + 1)],
                 "fiber_table_matches": same},
                rep.mismatches or None,
            ), t0)
        self.emit(CheckResult("alpha_independence", {"alphas": self.spec.resolved["alphas"]},
                              "pass" if alpha_tables_agree else "fail", {}))

        mult = self.spec.resolved["multiplicativity"]
        if mult["samples"]:
            for alpha in self.spec.resolved["alphas"]:
                t0 = time.perf_counter()
                cases = multiplicativity_sample(self.family(), alpha, mult["samples"],
                                                mult["max_degree"], seed=self.spec.resolved["seed"])
                bad = [c for c in cases if not c.ok]
                witness = None
                if bad:
                    c = bad[0]
                    witness = {"f": str(c.f), "g": str(c.g), "ord_f": c.ord_f.value,
                               "ord_g": c.ord_g.value, "ord_fg": c.ord_fg.value}
                self.emit(CheckResult(
                    "multiplicativity", {"alpha": alpha, **mult, "seed": self.spec.resolved["seed"]},
                    "fail" if bad else "pass",
                    {"cases": len(cases), "failures": len(bad),
                     "orders": sorted({c.ord_fg.value for c in cases})},
                    witness,
                ), t0)
        return totals, res, sample

    def toric(self):
        t = self.spec.resolved.get("toric")
        if t is None:
            raise InputError("job has no toric block")
        try:
            T = ToricModel(t["rays"], t["overlattice"])
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        box = LatticeBox(tuple(t["box"][0]), tuple(t["box"][1]))
        self.emit(CheckResult("toric_model", {"rays": t["rays"]}, "pass", {
            "dual_basis": [list(m) for m in T.m_basis], "lattice_index": T.lattice_index(),
        }))
        for L in t["divisors"]:
            t0 = time.perf_counter()
            if len(L) != T.r:
                raise InputError(f"divisor {L} needs {T.r} coefficients")
            res = is_cartier(T, L)
            self.emit(CheckResult("cartier", {"L": L}, "pass", {
                "cartier": res.cartier, "u": list(res.u), "order": res.order,
                "cartier_index": cartier_index(T, L),
                "sections_in_box": len(divisor_sections(T, L, box)),
            }), t0)
            if not res.cartier:
                chk = check_noncartier_sum(T, L, box)
                self.emit(CheckResult("noncartier_sum", chk.params, "pass" if chk.passed else "fail",
                                      {"checked": chk.checked}, chk.mismatches or None))
            combos, bad, checked = 0, [], 0
            for alpha in t["alphas"]:
                for lam in t["lambdas"]:
                    chk = check_valuative_ideal(T, L, alpha, lam, box)
                    combos += 1
                    checked += chk.checked
                    bad.extend({"alpha": alpha, "lambda": lam, **m} for m in chk.mismatches)
            self.emit(CheckResult("valuative_ideal",
                                  {"L": L, "alphas": t["alphas"], "lambdas": t["lambdas"]},
                                  "fail" if bad else "pass",
                                  {"combinations": combos, "sections_checked": checked},
                                  bad or None), t0)

    def example41(self):
        init = self.initial()
        flat = self.flatness()
        totals, dom, sample = self.fiber()
        N = self.spec.resolved["fiber_window"]["N"]
        W = self.spec.resolved["fiber_window"]["W"]
        expected_totals = [comb(n + 5, 5) - comb(n + 2, 5) for n in range(N + 1)]
        expected_support = [
            (n, a, b) for n in range(N + 1) for a, b in product(range(W[0] + 1), range(W[1] + 1))
            if a + b <= n
        ]
        assertions = {
            "initial_ideal": str(init) == "(x^3 + y^3 + y*z^2)",
            "flatness_certified": flat.certified,
            "fiber_totals": [totals[n] for n in range(N + 1)] == expected_totals,
            "domain_test": dom.passed,
            "support": sample.support == expected_support,
            "support_saturated": sample.saturated,
            "all_checks_pass": all(r.verdict not in NEGATIVE for r in self.results),
        }
        ok = all(assertions.values())
        failed = [k for k, v in assertions.items() if not v]
        self.emit(CheckResult("golden", {"N": N, "W": W}, "pass" if ok else "fail",
                              {"assertions": assertions, "expected_totals": expected_totals},
                              failed or None))


def run(command: str, spec: JobSpec, opts: Options | None = None) -> tuple[int, list[CheckResult]]:
    """Run one command; returns (exit status, results).  Raises on input/budget errors."""
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    runner = Runner(spec, opts or Options())
    getattr(runner, command)()
    negative = any(r.verdict in NEGATIVE for r in runner.results)
    return (EXIT_NEGATIVE if negative else EXIT_OK), runner.results


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="multirees",
        description="Exact checks on extended Rees algebras of multi-filtered graded rings.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--job", help="JSON job file ('-' for stdin); example41 defaults to the shipped job")
    p.add_argument("--threads", type=int, default=1, help="worker threads for the flatness cells")
    p.add_argument("--budget-gb-steps", type=int, default=None,
                   help="maximum S-pair reductions per Groebner basis")
    p.add_argument("--budget-cells", type=int, default=None,
                   help="maximum (n, m) cells per Rees window")
    p.add_argument("--out", default="-", help="report file, '-' for stdout")
    p.add_argument("--timings", action="store_true",
                   help="add wall-clock seconds to each check (reports stop being byte-stable)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.job is None and args.command != "example41":
        print(f"multirees: {args.command} needs --job", file=sys.stderr)
        return EXIT_INPUT
    if args.threads < 1:
        print("multirees: --threads must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    opts = Options(args.threads, args.budget_gb_steps, args.budget_cells, args.timings)
    try:
        spec = load_job(args.job)
        status, results = run(args.command, spec, opts)
    except BudgetExceeded as exc:
        print(f"multirees: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, OSError) as exc:
        print(f"multirees: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    header = CheckResult("job", {"command": args.command, "version": __version__}, "pass",
                         {"spec": spec.resolved})
    lines = [header.line()] + [r.line() for r in results]
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
