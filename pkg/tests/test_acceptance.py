"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is echoed in the terminal summary.
"""
import time

import pytest

from padicps.characters import classify, parse_character
from padicps.suites import (equivariance_suite, exactness_suite, finite_identities_suite,
                            generation_suite, group_law_suite, lie_oracle_suite, smooth_case_suite,
                            taylor_suite)

P, N, SLACK, SEED = 5, 30, 5, 2024


def _failed(suite):
    return [c["name"] for c in suite["checks"] if not c["passed"]]


def test_criterion_01_exactness(record_criterion):
    details, ok = [], True
    for p, m, h, D in [(5, 2, 1, 9), (5, 0, 1, 5), (3, 1, 2, 7), (7, 3, 1, 10)]:
        start = time.perf_counter()
        suite = exactness_suite(p, m, h, D, N)
        elapsed = time.perf_counter() - start
        rep = suite["report"]
        good = suite["passed"] and elapsed < 60
        ok &= good
        details.append(f"(p={p},m={m},h={h},D={D}) ker={rep['kernel_dim']} tau={rep['tau_rank']} "
                       f"im={rep['image_dim']} {elapsed:.1f}s")
    record_criterion(1, ok, "; ".join(details))
    assert ok


def test_criterion_02_equivariance(record_criterion):
    worst, ok = {}, True
    for m in (0, 1, 2):
        suite = equivariance_suite(P, m, N, SLACK, 100, SEED + m)
        worst[m] = suite["checks"][0]["worst_valuation"]
        ok &= suite["passed"]
    record_criterion(2, ok, f"100 trials per m, worst valuation {worst}, tolerance {N - SLACK}")
    assert ok


def test_criterion_03_group_law(record_criterion):
    suite = group_law_suite(P, 2, N, SLACK, 100, SEED, smooth_levels=(1, 2))
    detail = ", ".join(f"{c['name']}={'ok' if c['passed'] else 'FAIL'}" for c in suite["checks"])
    record_criterion(3, suite["passed"],
                     f"100 pairs, worst valuation {suite['checks'][0]['worst_valuation']}; {detail}")
    assert suite["passed"], _failed(suite)


def test_criterion_04_lie_oracle(record_criterion):
    ok, parts = True, []
    for m in (0, 2):
        suite = lie_oracle_suite(P, m, N, SEED)
        ok &= suite["passed"]
        parts += [f"m={m} {c['name']}:{c.get('valuations', c.get('valuation', ''))}"
                  for c in suite["checks"] if c["name"].startswith("finite")]
    record_criterion(4, ok, "finite differences k=3,4,5 slope>=1, exact brackets; " + "; ".join(parts))
    assert ok


def test_criterion_05_taylor(record_criterion):
    suite = taylor_suite(P, 2, N, SLACK, SEED, trials=3)
    worst = min(c["valuation"] for c in suite["checks"])
    record_criterion(5, suite["passed"], f"worst valuation {worst}, tolerance {12 - SLACK}")
    assert suite["passed"], _failed(suite)


def test_criterion_06_classifier(record_criterion):
    simple = ["c=1/2;cond=0;unit=;at_p=1", "m=-1;cond=0;unit=;at_p=1", "c=3;cond=0;unit=;at_p=p^-2",
              "m=1/3;cond=1;unit=-1;at_p=1"]
    ok = all(classify(parse_character(s, P)).verdict == "simple" for s in simple)
    shapes = []
    for spec, case in [("m=0;cond=0;unit=;at_p=1", "A"), ("m=2;cond=0;unit=;at_p=1", "A"),
                       ("m=1;cond=0;unit=;at_p=p^-2", "B"), ("m=3;cond=0;unit=;at_p=p^-2", "B")]:
        rep = classify(parse_character(spec, P))
        tensors = [c for c in rep.constituents if "(x)" in c]
        good = (rep.verdict == "reducible" and rep.case == case and rep.topological_length == 3
                and len(tensors) == 2 and all(f"E_{rep.m}" in c for c in tensors)
                and any("trivial" in c for c in tensors) and any("Steinberg" in c for c in tensors))
        ok &= good
        shapes.append(f"{case}(m={rep.m}) length {rep.topological_length}")
    record_criterion(6, ok, f"{len(simple)} simple inputs; " + ", ".join(shapes))
    assert ok


def test_criterion_07_smooth_cases(record_criterion):
    suite = smooth_case_suite(P, levels=(1, 2))
    info = [f"{c['name']}:" + ("ok" if c["passed"] else "FAIL") for c in suite["checks"]]
    record_criterion(7, suite["passed"], ", ".join(info))
    assert suite["passed"], _failed(suite)


@pytest.fixture(scope="module")
def finite_suite():
    return finite_identities_suite()


def test_criterion_08_finite_identities(record_criterion, finite_suite):
    checks = [c for c in finite_suite["checks"]
              if c["name"].startswith(("table", "identities"))]
    ok = all(c["passed"] for c in checks)
    record_criterion(8, ok, ", ".join(c["name"] for c in checks if c["name"].startswith("identities"))
                     + f" ({sum(c['passed'] for c in checks)}/{len(checks)} checks)")
    assert ok


def test_criterion_09_strong_admissibility(record_criterion, finite_suite):
    by_name = {c["name"]: c for c in finite_suite["checks"]}
    pos = by_name["strong_admissibility[Ind_B(1)]"]
    neg = by_name["negative_control[2 x regular fails]"]
    ok = pos["passed"] and neg["passed"]
    record_criterion(9, ok, f"Ind_B(1) multiplicities {pos['multiplicities']}; doubled regular "
                            f"rejected with factor {neg['worst_factor']}")
    assert ok


def test_criterion_10_generation(record_criterion):
    suite = generation_suite(P, 2, SEED, samples=60, extra=10)
    first, rest = suite["checks"]
    record_criterion(10, suite["passed"], f"rank {first['rank']} (expected 18); ranks over 10 x: {rest['ranks']}")
    assert suite["passed"]
