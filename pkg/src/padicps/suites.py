"""Verification suites shared by the command line and the acceptance tests.

Every suite returns a plain dict with its checks, the seeds and the
tolerances it used, so reports are reproducible byte for byte.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence

from . import finite_rep as fr
from . import pseries as ps
from .characters import SmoothCharacter, TorusCharacter, classify, parse_character
from .group import (GroupElement, LieElement, bracket, exp_lie, lower_unipotent, random_sl2_zp,
                    torus, upper_unipotent, weyl)
from .laf import EXACT_PREC, difference_valuation
from .padic import INF, PadicScalar
from .smoothrep import (SmoothPSModule, coinvariant_functional, decompose_level1,
                        invariant_vectors)

SUITES = ("exactness", "equivariance", "group-law", "lie-oracle", "taylor", "smooth-case",
          "finite-identities", "generation")

DEFAULT_SLACK = 5


@dataclass
class RunConfig:
    p: int = 5
    precision: int = 30
    slack: int = DEFAULT_SLACK
    chi: str = "m=2;cond=0;unit=;at_p=1"
    level: int = 1
    degree: int = 9
    smooth_level: int = 1
    seed: int = 0
    trials: int = 20
    suites: List[str] = field(default_factory=list)

    def character(self) -> TorusCharacter:
        return parse_character(self.chi, self.p, self.precision)

    def to_json(self):
        return {"p": self.p, "precision": self.precision, "slack": self.slack, "chi": self.chi,
                "level": self.level, "degree": self.degree, "smooth_level": self.smooth_level,
                "seed": self.seed, "trials": self.trials, "suites": list(self.suites)}


def _check(name: str, passed: bool, **info) -> dict:
    out = {"name": name, "passed": bool(passed)}
    out.update({k: (v if v != INF else "inf") for k, v in info.items()})
    return out


def _suite(name: str, checks: List[dict], **info) -> dict:
    out = {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}
    out.update(info)
    return out


# -- pointwise helpers -------------------------------------------------------------------

def sample_points(p: int, prec: int, rng: random.Random, count: int = 3):
    """Random points of both charts: (0, x in Z_p) and (1, y in pZ_p)."""
    out = []
    for _ in range(count):
        out.append((0, PadicScalar.from_int(rng.randrange(p**prec), p, prec)))
        out.append((1, PadicScalar.from_int(p * rng.randrange(p**(prec - 1)), p, prec)))
    return out


def value(phi: ps.PSElement, chart: int, x: PadicScalar) -> PadicScalar:
    return phi.charts()[chart](x)


def agreement(a: ps.PSElement, b: ps.PSElement, points) -> float:
    """Smallest valuation of a - b over the sample points."""
    return min((value(a, c, x) - value(b, c, x)).valuation for c, x in points)


def generator_list(p: int, prec: int, rng: random.Random, randoms: int = 2) -> List[tuple]:
    gens = [("w", weyl(p, prec)), ("u(1)", lower_unipotent(1, p, prec)),
            ("u-(1)", upper_unipotent(1, p, prec)), ("diag(s^-1,s)", torus(2, p, prec)),
            ("diag(p^-1,p)", torus(p, p, prec))]
    gens += [(f"random{i}", random_sl2_zp(rng, p, prec)) for i in range(randoms)]
    return gens


# -- suites -----------------------------------------------------------------------------

def exactness_suite(p: int, m: int, h: int, D: int, N: int,
                    chi_lc: Optional[SmoothCharacter] = None) -> dict:
    chi_lc = chi_lc or SmoothCharacter.trivial(p, N)
    rep = ps.exactness_check(p, m, chi_lc, h, D, N)
    j = rep.to_json()
    checks = [
        _check("kernel_dim", rep.kernel_dim == rep.expected_kernel, value=rep.kernel_dim,
               expected=rep.expected_kernel),
        _check("tau_rank", rep.tau_rank == rep.expected_kernel, value=rep.tau_rank,
               expected=rep.expected_kernel),
        _check("tau_in_kernel", rep.tau_in_kernel),
        _check("image_dim", rep.image_dim == rep.expected_image, value=rep.image_dim,
               expected=rep.expected_image),
    ]
    return _suite("exactness", checks, report=j)


def equivariance_suite(p: int, m: int, N: int, slack: int, trials: int, seed: int, h: int = 1,
                       D: int = 9, intertwiner: Callable = ps.intertwine) -> dict:
    """val(I(g phi) - g I(phi)) >= N - slack at sample points."""
    rng = random.Random(seed)
    chi = TorusCharacter(m, SmoothCharacter.trivial(p, N))
    worst, checks = INF, []
    for t in range(trials):
        phi = ps.random_element(chi, h, D, N, rng)
        name, g = generator_list(p, N, rng)[t % 7]
        lhs = intertwiner(ps.act(g, phi))
        rhs = ps.act(g, intertwiner(phi))
        v = agreement(lhs, rhs, sample_points(p, N, rng))
        worst = min(worst, v)
        if v < N - slack:
            checks.append(_check(f"equivariance[{t}:{name}]", False, valuation=v))
    checks.insert(0, _check("intertwiner_equivariance", worst >= N - slack, worst_valuation=worst,
                            tolerance=N - slack, trials=trials))
    return _suite("equivariance", checks, seed=seed, m=m, slack=slack, precision=N)


def group_law_suite(p: int, m: int, N: int, slack: int, trials: int, seed: int, h: int = 1,
                    D: int = 9, smooth_trials: int = None, smooth_levels=(1, 2)) -> dict:
    rng = random.Random(seed)
    chi = TorusCharacter(m, SmoothCharacter.trivial(p, N))
    phi = ps.random_element(chi, h, D, N, rng)
    worst = INF
    for _ in range(trials):
        g1, g2 = random_sl2_zp(rng, p, N), random_sl2_zp(rng, p, N)
        a = ps.act(g1, ps.act(g2, phi))
        b = ps.act(g1 @ g2, phi)
        worst = min(worst, agreement(a, b, sample_points(p, N, rng, 2)))
    checks = [_check("act_group_law", worst >= N - slack, worst_valuation=worst,
                     tolerance=N - slack, trials=trials)]
    st = trials if smooth_trials is None else smooth_trials
    for n in smooth_levels:
        V = SmoothPSModule(p, n, SmoothCharacter.trivial(p))
        bad = 0
        for _ in range(st):
            g1, g2 = random_sl2_zp(rng, p, N), random_sl2_zp(rng, p, N)
            v = [Fraction(rng.randint(-9, 9)) for _ in range(V.dim)]
            _, x = V.act(g1, V.act(g2, v)[1])
            _, y = V.act(g1 @ g2, v)
            bad += x != y
        checks.append(_check(f"smooth_group_law[n={n}]", bad == 0, failures=bad, trials=st))
    return _suite("group-law", checks, seed=seed, slack=slack, precision=N)


def lie_oracle_suite(p: int, m: int, N: int, seed: int, ks=(3, 4, 5), h: int = 1, D: int = 9) -> dict:
    """Finite differences of the group action against lie_act, and sl_2 brackets."""
    rng = random.Random(seed)
    chi = TorusCharacter(m, SmoothCharacter.trivial(p, N))
    phi = ps.random_element(chi, h, D, N, rng)
    pts = sample_points(p, N, rng)
    checks = []
    for name, X in LieElement.basis(p, N).items():
        L = ps.lie_act(X, phi)
        vals = []
        for k in ks:
            pk = PadicScalar.from_int(p**k, p, N)
            diff = ps.sub(ps.act(exp_lie(X.scale(pk)), phi), phi)
            vals.append(min((value(diff, c, x) / pk - value(L, c, x)).valuation for c, x in pts))
        slope_ok = all(b - a >= 1 for a, b in zip(vals, vals[1:]))
        checks.append(_check(f"finite_difference[{name}]", slope_ok, valuations=vals, ks=list(ks),
                             required_slope=1))
    # brackets as exact operator identities on a polynomial slice
    exact = ps.from_polynomials(chi, [rng.randint(-9, 9) for _ in range(6)],
                                [rng.randint(-9, 9) for _ in range(6)], 0, prec=EXACT_PREC)
    B = LieElement.basis(p, EXACT_PREC)
    for a, b in (("u_minus", "u"), ("h", "u_minus"), ("h", "u")):
        X, Y = B[a], B[b]
        lhs = ps.lie_act(bracket(X, Y), exact)
        rhs = ps.sub(ps.lie_act(X, ps.lie_act(Y, exact)), ps.lie_act(Y, ps.lie_act(X, exact)))
        v = min(difference_valuation(lhs.chart_minus, rhs.chart_minus),
                difference_valuation(lhs.chart_w, rhs.chart_w))
        checks.append(_check(f"bracket[{a},{b}]", v >= EXACT_PREC - 2, valuation=v))
    rel = [bracket(B["u_minus"], B["u"]) == B["h"],
           bracket(B["h"], B["u_minus"]) == B["u_minus"].scale(2),
           bracket(B["h"], B["u"]) == B["u"].scale(-2)]
    checks.append(_check("sl2_relations", all(rel)))
    return _suite("lie-oracle", checks, seed=seed, precision=N)


def taylor_suite(p: int, m: int, N: int, slack: int, seed: int, trials: int = 3, h: int = 1,
                 D: int = 9, k: int = 3, order: int = 4) -> dict:
    """act(exp(p^k X)) against sum_{n<=order} p^(kn)/n! lie_act(X)^n."""
    rng = random.Random(seed)
    chi = TorusCharacter(m, SmoothCharacter.trivial(p, N))
    tol = 4 * k - slack
    checks = []
    for t in range(trials):
        phi = ps.random_element(chi, h, D, N, rng)
        pts = sample_points(p, N, rng)
        for name, X in LieElement.basis(p, N).items():
            pk = PadicScalar.from_int(p**k, p, N)
            lhs = ps.act(exp_lie(X.scale(pk)), phi)
            acc, term = phi, phi
            for n in range(1, order + 1):
                term = ps.lie_act(X, term)
                acc = ps.add(acc, ps.scale(term, pk**n / factorial(n)))
            v = agreement(lhs, acc, pts)
            checks.append(_check(f"taylor[{t}:{name}]", v >= tol, valuation=v, tolerance=tol))
    return _suite("taylor", checks, seed=seed, slack=slack)


def smooth_case_suite(p: int, levels=(1, 2)) -> dict:
    A = SmoothCharacter.trivial(p)
    B = SmoothCharacter.unramified(p, Fraction(1, p * p))
    checks = []
    for n in levels:
        V = SmoothPSModule(p, n, A)
        inv = invariant_vectors(V)
        fixed = False
        if len(inv) == 1:
            W, vec = V.act(torus(p, p), inv[0])
            lifted = [inv[0][V.index[pt.reduce(n, p)]] for pt in W.points]
            fixed = vec == lifted
        checks.append(_check(f"caseA_invariants[n={n}]", len(inv) == 1 and fixed, dim=len(inv),
                             fixed_by_diag_p=fixed))
        Vb = SmoothPSModule(p, n, B)
        co = coinvariant_functional(Vb)
        want = p**n + p**(n - 1) - 1
        checks.append(_check(f"caseB_coinvariant[n={n}]", co.exists and co.steinberg_dim == want,
                             coinvariant_dim=len(co.functionals), steinberg_dim=co.steinberg_dim,
                             expected=want))
    for chi_lc, case in ((A, "A"), (B, "B")):
        rep = classify(TorusCharacter(0, chi_lc))
        checks.append(_check(f"classifier_case[{case}]", rep.case == case, reported=rep.case))
    return _suite("smooth-case", checks)


def _table_checks(name, table):
    ok = sum(d * d for d in table.degrees) == table.group.order
    return _check(f"table[{name}]", ok, order=table.group.order, degrees=table.degrees)


def finite_identities_suite() -> dict:
    checks = []
    S3 = fr.symmetric3()
    tS3 = fr.character_table(S3)
    pairs = [("S3", tS3, "A3", fr.subgroup_table(tS3, S3.subgroup([(1, 2, 0)])))]
    G3 = fr.sl2(3)
    t3 = fr.character_table(G3)
    pairs.append(("SL2(F3)", t3, "Q8", fr.subgroup_table(t3, fr.quaternion_in_sl2_f3())))
    G5 = fr.sl2(5)
    t5 = fr.character_table(G5)
    tB = fr.subgroup_table(t5, fr.upper_borel_sl2(5))
    pairs.append(("SL2(F5)", t5, "Borel20", tB))
    for hn, tH, sn, tS in pairs:
        checks.append(_table_checks(hn, tH))
        checks.append(_table_checks(sn, tS))
        rep = fr.verify_identities(tH, tS)
        checks.append(_check(f"identities[{hn},{sn}]", rep.passed, violations=len(rep.violations)))
    ind = fr.induced_character(t5, tB, [1] * len(tB.classes))
    adm = fr.strong_adm_check(t5, ind, 1)
    checks.append(_check("strong_admissibility[Ind_B(1)]", adm.passed,
                         multiplicities=adm.multiplicities, degrees=adm.degrees, margins=adm.margins))
    neg = fr.strong_adm_check(t5, fr.regular_character(t5, 2), 1)
    checks.append(_check("negative_control[2 x regular fails]", not neg.passed,
                         worst_factor=str(neg.worst_factor)))
    V = SmoothPSModule(5, 1, SmoothCharacter.trivial(5))
    mult = decompose_level1(V, t5)
    want = [1 if d in (1, 5) else 0 for d in t5.degrees]
    checks.append(_check("decompose_level1[caseA,p=5]", mult == want, multiplicities=mult))
    return _suite("finite-identities", checks)


def generation_suite(p: int, m: int, seed: int, samples: int = 60, extra: int = 10) -> dict:
    E = ps.AlgebraicRep(m)
    V = SmoothPSModule(p, 1, SmoothCharacter.trivial(p))
    rep = ps.generation_check(E, V, samples, seed)
    checks = [_check("orbit_rank", rep.full, **rep.to_json())]
    rng = random.Random(seed + 1)
    ranks = []
    for i in range(extra):
        x = [[0] * V.dim for _ in range(E.dim)]
        while all(v == 0 for r in x for v in r):
            x = [[rng.choice([0, 0, 1, -1, rng.randint(-50, 50)]) for _ in range(V.dim)]
                 for _ in range(E.dim)]
        ranks.append(ps.generation_check(E, V, samples, seed + 100 + i, x=x).rank)
    checks.append(_check("orbit_rank_all_x", all(r == E.dim * V.dim for r in ranks), ranks=ranks))
    return _suite("generation", checks, seed=seed, samples=samples)


def run_suite(name: str, cfg: RunConfig) -> dict:
    chi = cfg.character()
    m = chi.m if chi.m is not None and chi.m >= 0 else 0
    N, p = cfg.precision, cfg.p
    if name == "exactness":
        return exactness_suite(p, m, cfg.level, max(cfg.degree, m + 1), N, chi.smooth)
    if name == "equivariance":
        return equivariance_suite(p, m, N, cfg.slack, cfg.trials, cfg.seed, cfg.level, cfg.degree)
    if name == "group-law":
        return group_law_suite(p, m, N, cfg.slack, cfg.trials, cfg.seed, cfg.level, cfg.degree,
                               smooth_levels=sorted({cfg.smooth_level, 1, 2}))
    if name == "lie-oracle":
        return lie_oracle_suite(p, m, N, cfg.seed, h=cfg.level, D=cfg.degree)
    if name == "taylor":
        return taylor_suite(p, m, N, cfg.slack, cfg.seed, h=cfg.level, D=cfg.degree)
    if name == "smooth-case":
        return smooth_case_suite(p, sorted({1, cfg.smooth_level}))
    if name == "finite-identities":
        return finite_identities_suite()
    if name == "generation":
        return generation_suite(p, m, cfg.seed)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
