"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -s`` to see the lines, or execute the
file directly (``python tests/test_acceptance.py``) for a plain summary.
"""

import json
import tempfile
import time
from functools import lru_cache
from itertools import product
from math import comb
from pathlib import Path

import pytest

from multirees.cli import JobSpec, Options, Runner, load_job, main, run
from multirees.rees import build_window, check_flatness
from multirees.toric import QUADRIC_CONE, ToricModel, check_noncartier_sum, check_valuative_ideal, is_cartier

JOBS = Path(__file__).resolve().parents[1] / "demos" / "jobs"
ALPHAS = [[1, 1], [1, 2], [2, 3], [3, 5]]


def example41(**overrides):
    raw = json.loads(json.dumps(load_job(None).raw))
    raw.update(overrides)
    return JobSpec.from_dict(raw)


@lru_cache(maxsize=None)
def fiber41():
    """One fiber run on N = 6, W = [0,6]^2 with all four alphas and 100 samples."""
    spec = example41(fiber_window={"N": 6, "W": [6, 6]}, alphas=ALPHAS,
                     multiplicativity={"samples": 100, "max_degree": 3})
    t0 = time.perf_counter()
    status, results = run("fiber", spec)
    return status, results, time.perf_counter() - t0


def by_check(results, name):
    return [r for r in results if r.check == name]


def criterion_1():
    spec = example41(fiber_window={"N": 6, "W": [6, 6]}, multiplicativity={"samples": 0, "max_degree": 3})
    t0 = time.perf_counter()
    _, results = run("fiber", spec)
    elapsed = time.perf_counter() - t0
    totals = by_check(results, "central_fiber")[0].data["totals"]
    expected = [comb(n + 5, 5) - comb(n + 2, 5) for n in range(7)]
    ok = totals == expected == [1, 6, 21, 55, 120, 231, 406] and elapsed < 300
    return ok, f"totals {totals} in {elapsed:.1f}s"


def criterion_2():
    _, results = run("initial", example41())
    got = results[0].data["ideal"]
    return got == "(x^3 + y^3 + y*z^2)", got


def criterion_3():
    spec = example41(window={"N": 6, "W": [4, 4]})
    F = Runner(spec, Options()).family()
    t0 = time.perf_counter()
    rep = check_flatness(build_window(F, 6, [4, 4]))
    elapsed = time.perf_counter() - t0
    subsets = sorted({tuple(s) for s, *_ in rep.cells})
    ok = (rep.certified and len(subsets) == 4 and rep.max_positive_homology() == 0
          and all(not any(h[1:]) for *_, h, _ in rep.cells) and elapsed < 600)
    return ok, f"{len(rep.cells)} complexes over subsets {subsets}, max positive homology {rep.max_positive_homology()}, {elapsed:.1f}s"


def criterion_4():
    parts, ok = [], True
    for r in (2, 3, 4):
        names = [f"x{i}" for i in range(1, r + 1)]
        spec = JobSpec.from_dict({"ring": {"vars": names}, "cutters": names,
                                  "window": {"N": 8, "W": [8] * r}})
        _, results = run("flatness", spec)
        flat = results[-1]
        ok &= flat.verdict == "certified-on-window" and flat.data["max_positive_homology"] == 0
        parts.append(f"r={r}: {flat.data['complexes']} complexes, max {flat.data['max_positive_homology']}")
    return ok, "; ".join(parts)


def criterion_5():
    with tempfile.TemporaryDirectory() as d:
        out = Path(d) / "report.jsonl"
        status = main(["flatness", "--job", str(JOBS / "three_lines.json"), "--out", str(out)])
        flat = [json.loads(x) for x in out.read_text().splitlines()][-1]
    w = flat.get("witness") or {}
    ok = status == 1 and flat["verdict"] == "violation" and w.get("p") == 1 and w.get("dim") == 1
    return ok, f"exit {status}, witness {w}"


def criterion_6():
    _, results, _ = fiber41()
    books = by_check(results, "bookkeeping")
    alphas = [[int(x) for x in b.params["alpha"]] for b in books]
    mism = sum(len(b.witness or []) for b in books)
    indep = by_check(results, "alpha_independence")[0].verdict == "pass"
    ok = alphas == ALPHAS and all(b.verdict == "pass" for b in books) and mism == 0 and indep
    return ok, f"alphas {alphas}, mismatches {mism}, alpha-independent {indep}"


def criterion_7():
    _, results, _ = fiber41()
    dom = by_check(results, "domain_test")[0]
    status, neg = run("fiber", load_job(str(JOBS / "negative_domain.json")))
    nd = by_check(neg, "domain_test")[0]
    ok = dom.params["d"] == 2 and dom.verdict == "pass" and nd.verdict == "fail" and bool(nd.witness)
    return ok, f"cubic d=2 {dom.verdict}; xy+z^3 witness {nd.witness}"


def criterion_8():
    _, results, _ = fiber41()
    mult = by_check(results, "multiplicativity")
    cases = [m.data["cases"] for m in mult]
    orders = max((max(m.data["orders"]) for m in mult), default=0)
    ok = bool(mult) and all(m.verdict == "pass" and m.data["cases"] == 100 for m in mult) and orders > 0
    return ok, f"cases per alpha {cases}, failures 0, largest order {orders}"


def criterion_9():
    t0 = time.perf_counter()
    T = ToricModel(QUADRIC_CONE)
    d1, d2 = is_cartier(T, [1, 0]), is_cartier(T, [2, 0])
    ok = not d1.cartier and d1.order == 2 and d2.cartier and list(d2.u) == [2, -1]
    # independent oracle: u = (c1, (c2 - c1)/2) is integral iff c1 and c2 have equal parity
    sums = 0
    for c in product(range(-3, 4), repeat=2):
        ok &= is_cartier(T, c).cartier == ((c[0] - c[1]) % 2 == 0)
        if (c[0] - c[1]) % 2:
            ok &= check_noncartier_sum(T, c, 5).passed
            sums += 1
    vals = 0
    for c in product(range(-3, 4), repeat=2):
        for alpha in ([1, 1], [1, 2], [2, 3]):
            for lam in (0, 1, 2):
                ok &= check_valuative_ideal(T, c, alpha, lam, 5).passed
                vals += 1
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    return ok, f"D1 order {d1.order}, 2D1 u={[int(x) for x in d2.u]}, {sums} noncartier sums, {vals} valuative checks, {elapsed:.1f}s"


def criterion_10():
    _, results, _ = fiber41()
    cone = by_check(results, "weight_cone")[0]
    pieces = by_check(results, "central_fiber")[0].data["pieces"]
    support = sorted((n, *m) for n, m, dim in pieces if dim)
    expected = [(n, a, b) for n in range(7) for a in range(7) for b in range(7) if a + b <= n]
    ok = support == expected and cone.data["scan_agrees"] and cone.data["saturated"]
    return ok, f"support {len(support)} cells, scan agrees {cone.data['scan_agrees']}, saturated {cone.data['saturated']}"


SUMMARY: dict = {}
CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def line(k, ok, detail):
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("k", list(CRITERIA))
def test_criterion(k):
    ok, detail = CRITERIA[k]()
    print(line(k, ok, detail))
    SUMMARY[k] = line(k, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for k, fn in CRITERIA.items():
        print(line(k, *fn()), flush=True)
