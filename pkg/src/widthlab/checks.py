"""Seeded verification suite shared by ``widthlab verify`` and the acceptance tests.

Each check returns a :class:`CheckResult` with a JSON-friendly ``detail``
dict; none of them raise on a failed property.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .bounds import (
    BoundParams,
    count_runs,
    interval_union_count,
    interval_union_family_trace,
    interval_union_trace,
    max_one_runs,
    remark_bound,
    remark_condition,
    sauer_phi,
    theorem_bound,
    vc_dimension,
)
from .canon import verify_claim1, verify_claim2
from .enumeration import (
    GrowthSearchConfig,
    RealizabilityInstance,
    derive_seed,
    format_sets,
    grid_oracle_patterns,
    growth_search,
    realizable_patterns,
    uniform_grid,
)
from .hyper import Threshold
from .model import Domain, SampleCollection, StepFunction, canonical_order, evaluate_h, format_scalar, interior_roots, step_function_from_roots
from .width import INF, eval_width_function, point_width, width_function


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_scalar(x)
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return str(x)


# random generators


def random_step_function(rng: random.Random, B: Fraction, q: int, max_roots: int = 4) -> StepFunction:
    """Step function with roots on the grid {k B / q}, random ownership and singletons."""
    grid = [B * Fraction(k, q) for k in range(1, q)]
    roots = sorted(rng.sample(grid, rng.randint(0, min(max_roots, len(grid)))))
    doubled = [a for a in roots for _ in range(2 if rng.random() < 0.2 else 1)]
    owners = [rng.choice(("left", "right")) for _ in roots]
    return step_function_from_roots(B, doubled, rng.choice((-1, 1)), owners)


def random_collection(rng: random.Random, points: Sequence[Fraction], ell: int, m: int) -> SampleCollection:
    """Random covering collection of ell-subsets on a random m-point support."""
    support = sorted(rng.sample(list(points), m))
    order = support.copy()
    rng.shuffle(order)
    samples = []
    for i in range(0, m, ell):
        chunk = order[i : i + ell]
        if len(chunk) < ell:
            chunk += rng.sample([p for p in support if p not in chunk], ell - len(chunk))
        samples.append(tuple(chunk))
    for _ in range(rng.randint(0, 4)):
        samples.append(tuple(rng.sample(support, ell)))
    return SampleCollection(samples)


# brute-force width oracle


def brute_point_width(h: StepFunction, x: Fraction):
    """|width| by growing a symmetric window over the breakpoint distances.

    Outside [0, B] h keeps its endpoint value.  Returns the largest candidate
    radius r for which h is constant on the open window (x - r, x + r).
    """
    B = h.B

    def value(z):
        return evaluate_h(h, min(max(z, Fraction(0)), B))

    hx = value(x)
    ends = sorted({r.lo for r in h.intervals} | {r.hi for r in h.intervals})
    radii = sorted({abs(x - b) for b in ends} - {0})
    best = Fraction(0)
    for r in radii:
        inside = sorted({b for b in ends if abs(b - x) < r} | {x - r, x + r, x})
        probes = [b for b in inside if x - r < b < x + r]
        probes += [(u + v) / 2 for u, v in zip(inside, inside[1:])]
        if any(value(z) != hx for z in probes):
            return best
        best = r
    return INF


# individual checks


def check_theorem_guard(seed: int = 0, budget: int = 300) -> CheckResult:
    """Exhaustive search at the reference point plus a sweep of 56 configurations."""
    anchor_cfg = GrowthSearchConfig(
        ell=1, m=6, gamma=Fraction(1, 4), B=Fraction(1), mode="exhaustive", budget=10**6,
        seed=seed, grid=uniform_grid(1, 12),
    )
    anchor = growth_search(anchor_cfg)
    rows, violations = [], []
    for B, ratio, (ell, m) in product(
        (Fraction(1), Fraction(2)),
        (Fraction(1, 12), Fraction(1, 8), Fraction(1, 6), Fraction(1, 5), Fraction(1, 4), Fraction(1, 3), Fraction(3, 5)),
        ((1, 4), (1, 8), (2, 3), (3, 5)),
    ):
        cfg = GrowthSearchConfig(ell=ell, m=m, gamma=B * ratio, B=B, mode="exhaustive", budget=budget, seed=seed)
        res = growth_search(cfg)
        rows.append((cfg, res))
        for sets, gamma in res.violations[:1]:
            violations.append(
                {
                    "B": _fmt(B), "gamma": _fmt(cfg.gamma), "ell": ell, "m": m, "K": cfg.params.K,
                    "Gamma": gamma, "bound": res.bound, "collection": format_sets(sets),
                }
            )
    passed = anchor.gamma_best <= 62 and anchor.bound == 62 and anchor.ok and not violations
    return CheckResult(
        "theorem_guard",
        passed,
        {
            "anchor": {"Gamma_best": anchor.gamma_best, "bound": anchor.bound, "evaluated": anchor.evaluated},
            "configurations": len(rows),
            "violating_configurations": len(violations),
            "violations": violations,
        },
    )


def check_claims_chain(seed: int = 0, instances: int = 1000, max_family: int = 32) -> CheckResult:
    """Both inequalities of the G/Q chain over random finite families."""
    fail1, fail2 = [], []
    for i in range(instances):
        rng = random.Random(derive_seed(seed, i))
        B = Fraction(rng.choice((1, 2)))
        q = rng.choice((8, 10, 12))
        family = [random_step_function(rng, B, q) for _ in range(rng.randint(1, max_family))]
        ell = rng.randint(1, 3)
        m = rng.randint(ell, min(7, q - 1))
        zeta = random_collection(rng, [B * Fraction(k, q) for k in range(1, q)], ell, m)
        t = Threshold(B * Fraction(1, rng.choice((3, 4, 6, 8, 12))))
        c1 = verify_claim1(family, t, zeta)
        c2 = verify_claim2(family, t, zeta)
        if not c1.ok:
            fail1.append({"instance": i, "lhs": c1.lhs, "rhs": c1.rhs, "collection": format_sets(canonical_order(zeta).sets)})
        if not c2.ok:
            fail2.append({"instance": i, "lhs": c2.lhs, "rhs": c2.rhs, "collection": format_sets(canonical_order(zeta).sets)})
    return CheckResult(
        "claims_chain",
        not fail1 and not fail2,
        {
            "instances": instances,
            "claim1_failures": len(fail1),
            "claim2_failures": len(fail2),
            "claim1_examples": fail1[:3],
            "claim2_examples": fail2[:3],
        },
    )


def check_width_identity(seed: int = 0, pairs: int = 10_000) -> CheckResult:
    mismatches = []
    functions = 0
    i = 0
    while i < pairs:
        rng = random.Random(derive_seed(seed, functions))
        functions += 1
        B = Fraction(rng.randint(1, 9), rng.randint(1, 3))
        h = random_step_function(rng, B, rng.randint(2, 24), max_roots=6)
        roots = interior_roots(h)
        if not roots:
            continue
        f = width_function(h)
        xs = [Fraction(0), B] + list(roots) + list(f.midpoints)
        xs += [B * Fraction(rng.randint(0, 997), 997) for _ in range(12)]
        for x in xs:
            i += 1
            a = abs(eval_width_function(f, x))
            b = abs(point_width(h, x))
            c = min(abs(x - r) for r in roots)
            d = brute_point_width(h, x)
            if not (a == b == c == d):
                mismatches.append({"x": _fmt(x), "f": _fmt(a), "point_width": _fmt(b), "nearest": _fmt(c), "brute": _fmt(d)})
    ownership_diffs = 0
    for j in range(500):
        rng = random.Random(derive_seed(seed + 1, j))
        B = Fraction(rng.randint(1, 9))
        grid = [B * Fraction(k, 12) for k in range(1, 12)]
        roots = sorted(rng.sample(grid, rng.randint(1, 5)))
        sign = rng.choice((-1, 1))
        h1 = step_function_from_roots(B, roots, sign, [rng.choice(("left", "right")) for _ in roots])
        h2 = step_function_from_roots(B, roots, sign, [rng.choice(("left", "right")) for _ in roots])
        if width_function(h1) != width_function(h2):
            ownership_diffs += 1
    return CheckResult(
        "width_identity",
        not mismatches and ownership_diffs == 0,
        {"pairs": i, "mismatches": len(mismatches), "examples": mismatches[:3], "ownership_variant_differences": ownership_diffs},
    )


def oracle_instances(seed: int = 0, count: int = 200) -> list[RealizabilityInstance]:
    """Seeded realizability instances, led by the (1, 0, 1) example."""
    out = [RealizabilityInstance((Fraction(1, 2), Fraction(1), Fraction(3, 2)), Threshold(Fraction(3, 5)), Domain(2))]
    for i in range(count - 1):
        rng = random.Random(derive_seed(seed, 10_000 + i))
        B = Fraction(rng.randint(1, 4))
        q = rng.choice((6, 8, 10, 12, 15, 20))
        grid = [B * Fraction(k, q) for k in range(0, q + 1)]
        n = rng.randint(0, 8)
        pts = tuple(rng.sample(grid, min(n, len(grid))))
        gamma = B * Fraction(rng.randint(1, 12), rng.choice((8, 10, 12, 16)))
        out.append(RealizabilityInstance(pts, Threshold(gamma, strict=rng.random() < 0.75), Domain(B)))
    return out


def check_oracle_equivalence(seed: int = 0, count: int = 200) -> CheckResult:
    mismatches = []
    instances = oracle_instances(seed, count)
    for k, inst in enumerate(instances):
        exact = realizable_patterns(inst)
        oracle = grid_oracle_patterns(inst, inst.threshold.gamma / 4)
        if exact != oracle:
            mismatches.append({"instance": k, "exact_only": len(exact - oracle), "oracle_only": len(oracle - exact)})
    first = realizable_patterns(instances[0])
    return CheckResult(
        "oracle_equivalence",
        not mismatches and (1, 0, 1) not in first,
        {"instances": len(instances), "mismatches": mismatches[:5], "pattern_101_realizable": (1, 0, 1) in first},
    )


def check_run_count(seed: int = 0, count: int = 200) -> CheckResult:
    offenders = []
    over_boundary_cap = 0
    for k, inst in enumerate(oracle_instances(seed, count)):
        worst = max((count_runs(p) for p in realizable_patterns(inst)), default=0)
        if worst > max_one_runs(inst.domain.B, inst.threshold.gamma, inst.threshold.strict):
            over_boundary_cap += 1
        if worst > inst.K:
            offenders.append(
                {
                    "instance": k, "B": _fmt(inst.domain.B), "gamma": _fmt(inst.threshold.gamma),
                    "mode": inst.threshold.mode, "K": inst.K, "max_runs": worst,
                    "points": ",".join(_fmt(p) for p in inst.points),
                }
            )
    return CheckResult(
        "run_count",
        not offenders,
        {
            "instances": count,
            "offending_instances": len(offenders),
            "examples": offenders[:3],
            "instances_over_boundary_aware_cap": over_boundary_cap,
        },
    )


def check_vc_sauer(max_n: int = 12, max_K: int = 3) -> CheckResult:
    problems = []
    for K in range(1, max_K + 1):
        ground = tuple(Fraction(2 * i + 1, 2 * (2 * K + 2)) for i in range(2 * K + 2))
        vc = vc_dimension(interval_union_family_trace(K), ground)
        if vc != 2 * K:
            problems.append(f"VC(C_{K}) on {len(ground)} points = {vc}")
    for K in range(0, max_K + 1):
        for n in range(0, max_n + 1):
            _, count = interval_union_trace(K, n)
            direct = sum(1 for bits in product((0, 1), repeat=n) if count_runs(bits) <= K)
            if not count == direct == interval_union_count(K, n):
                problems.append(f"K={K} n={n}: trace {count}, direct {direct}, closed form {interval_union_count(K, n)}")
            if count > sauer_phi(2 * K, n):
                problems.append(f"K={K} n={n}: trace {count} exceeds Phi {sauer_phi(2 * K, n)}")
    return CheckResult("vc_sauer", not problems, {"problems": problems})


def remark_sweep() -> list[BoundParams]:
    out = []
    for B in (Fraction(1), Fraction(2), Fraction(3)):
        for ratio in (Fraction(1, 8), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(3, 5), Fraction(1)):
            for ell in (1, 2, 3):
                for m in range(ell, 61):
                    p = BoundParams(B, B * ratio, ell, m)
                    if remark_condition(p):
                        out.append(p)
    return out


def check_remark(rel_slack: float = 1e-9) -> CheckResult:
    bad = []
    sweep = remark_sweep()
    for p in sweep:
        exact = theorem_bound(p)
        approx = remark_bound(p)
        if approx < exact * (1 - rel_slack):
            bad.append({"B": _fmt(p.B), "gamma": _fmt(p.gamma), "ell": p.ell, "m": p.m, "remark": approx, "theorem": exact})
    return CheckResult("remark_consistency", not bad, {"configurations": len(sweep), "failures": bad[:5]})


def run_suite(seed: int = 0, budget: int = 1000) -> list[CheckResult]:
    """Every check at a scale set by ``budget`` (1000 reproduces the acceptance sizes)."""
    scale = budget / 1000
    return [
        check_theorem_guard(seed, budget=max(1, round(300 * scale))),
        check_claims_chain(seed, instances=max(1, budget)),
        check_width_identity(seed, pairs=max(1, round(10_000 * scale))),
        check_oracle_equivalence(seed, count=max(1, round(200 * scale))),
        check_run_count(seed, count=max(1, round(200 * scale))),
        check_vc_sauer(),
        check_remark(),
    ]
