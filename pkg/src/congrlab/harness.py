"""Parameter sweeps over primes, bound-check orchestration and CSV output."""

from __future__ import annotations

import csv
import dataclasses
import logging
import math
import random
from dataclasses import dataclass, fields
from fractions import Fraction

import numpy as np

from . import chars, count, farey, lat2
from .arith import PrimeContext, divisors, make_context, next_prime, prev_prime
from .checks import FAIL, PASS, REPORT_ONLY, BoundCheck, make_check
from .errors import ParseError, TooLarge, ValidationError
from .msets import (
    GeomProg,
    Interval,
    Subgroup,
    build_set,
    dilate,
    m_fold_product,
    product_set,
    small_doubling_slice,
)

log = logging.getLogger(__name__)

COMMANDS = ("theorem1", "theorem2", "corollary2", "coverage4", "coverage5", "lemmas")
CSV_HEADER = ("name", "p", "params", "lhs", "rhs", "ratio", "slack", "gate", "verdict")

LAMBDA_SAMPLES = 4
LEMMA_SAMPLES = 20


@dataclass
class SweepConfig:
    p_min: int = 1000
    p_max: int = 100000
    count: int = 20
    seed: int = 1
    slack_exponent: float = 0.25
    gate_constant: float = 10.0
    eps: float = 0.05
    budget: int = 10**9
    out_path: str = "congrlab.csv"

    def validate(self) -> SweepConfig:
        if self.p_min < 3:
            raise ValidationError("p_min", f"must be >= 3, got {self.p_min}")
        if self.p_max < self.p_min:
            raise ValidationError("p_max", f"must be >= p_min={self.p_min}, got {self.p_max}")
        if self.count < 1:
            raise ValidationError("count", "must be >= 1")
        if not self.gate_constant > 0:
            raise ValidationError("gate_constant", "must be > 0")
        if self.slack_exponent < 0:
            raise ValidationError("slack_exponent", "must be >= 0")
        if not 0 < self.eps < 0.125:
            raise ValidationError("eps", "must lie in (0, 0.125)")
        if self.budget < 1:
            raise ValidationError("budget", "must be >= 1")
        return self


_ALIASES = {
    "slack": "slack_exponent",
    "gate": "gate_constant",
    "out": "out_path",
    "primes_per_decade": "count",
}
_FIELDS = {f.name: f for f in fields(SweepConfig)}


def _coerce(name, raw, lineno=None):
    kind = type(getattr(SweepConfig(), name))
    try:
        if kind is int:
            return int(float(raw)) if "e" in raw.lower() else int(raw)
        if kind is float:
            return float(raw)
    except ValueError:
        raise ParseError(f"bad value {raw!r} for {name}", lineno) from None
    return raw


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", lineno)
        key, raw = (s.strip() for s in line.split("=", 1))
        key = _ALIASES.get(key, key)
        if key not in _FIELDS:
            raise ParseError(f"unknown key {key!r}", lineno)
        values[key] = _coerce(key, raw, lineno)
    return values


def load_config(path: str | None = None, **overrides) -> SweepConfig:
    """Defaults, then the file at ``path``, then non-None keyword overrides."""
    values = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            values.update(parse_config_text(fh.read()))
    for key, val in overrides.items():
        if val is not None:
            values[_ALIASES.get(key, key)] = val
    unknown = set(values) - set(_FIELDS)
    if unknown:
        name = sorted(unknown)[0]
        raise ValidationError(name, "unknown configuration field")
    return SweepConfig(**values).validate()


def sample_primes(cfg: SweepConfig) -> list[int]:
    """Smallest prime at or above each of ``count`` evenly spaced anchors."""
    k = cfg.count
    if k == 1:
        anchors = [cfg.p_min]
    else:
        step = Fraction(cfg.p_max - cfg.p_min, k - 1)
        anchors = [cfg.p_min + math.floor(i * step) for i in range(k)]
    out = []
    for a in anchors:
        q = next_prime(max(a, 3))
        if q > cfg.p_max:
            q = prev_prime(a)
        if q >= 3 and q not in out:
            out.append(q)
    return sorted(out)


def cell_rng(cfg: SweepConfig, command: str, p: int) -> random.Random:
    # keyed on the prime alone so dropping one prime leaves the other rows untouched
    return random.Random(f"{cfg.seed}/{command}/{p}")


def _slice(ctx: PrimeContext, n: int):
    n = max(1, min(n, ctx.p - 1))
    return small_doubling_slice(GeomProg(n), n, ctx)


def _hyp_theorem1_i(U: int, H: int, p: int) -> int:
    """Smallest n with |U| < p^(n/(2n+1)) and |U| H^n < p, or 0."""
    n = 1
    while U * H**n < p and n <= 64:
        if U < p ** (n / (2 * n + 1)):
            return n
        n += 1
    return 0


def cells_theorem1(ctx: PrimeContext, cfg: SweepConfig, rng: random.Random) -> list[BoundCheck]:
    p, eps = ctx.p, cfg.eps
    H = math.floor(p ** (0.25 + eps))
    n = math.floor(p ** (0.375 - eps / 2))
    base = _slice(ctx, n)
    gate = dict(p=p, slack=cfg.slack_exponent, gate=cfg.gate_constant)
    out = []
    for c in [1] + [rng.randrange(2, p) for _ in range(2)]:
        U = dilate(base, c)
        J = count.count_eq1(H, U)
        hyp_i = _hyp_theorem1_i(n, H, p)
        common = dict(H=H, U=n, dilation=c)
        out.append(make_check("theorem1", J.total, H, report_only=not hyp_i, hyp_n=hyp_i, **common, **gate))
        rhs_ii = H + n * H * H / p + n**0.75 * H / p**0.25
        out.append(make_check("theorem1_ii", J.total, rhs_ii, report_only=n >= p**0.4, **common, **gate))
        J2 = count.count_eq2(H, U).total
        out.append(make_check("corollary1", J2, H * n, report_only=not hyp_i, hyp_n=hyp_i, **common, **gate))
        hyp_ii = p ** (1 / 3) < n < p**0.4 and n * H < p
        rhs_c2 = n**1.75 * H / p**0.25
        out.append(make_check("corollary1_ii", J2, rhs_c2, report_only=not hyp_ii, **common, **gate))
    return out


def theorem2_case(d: int, p: int) -> int:
    lo, hi = p ** (1 / 3), p ** (2 / 3)
    w = p**0.001
    if d <= lo / w or d >= hi * w:
        return 0
    if d < lo * w:
        return 1
    if d > hi / w:
        return 2
    return 3


def cells_theorem2(ctx: PrimeContext, cfg: SweepConfig, rng: random.Random) -> list[BoundCheck]:
    p = ctx.p
    out = []
    for d in divisors(p - 1):
        N = min(p // d, p - 1)
        lams = [pow(rng.randrange(1, p), d, p) for _ in range(LAMBDA_SAMPLES // 2)]
        lams += [rng.randrange(1, p) for _ in range(LAMBDA_SAMPLES - len(lams))]
        Ls = [rng.randrange(0, p) for _ in lams]
        best, best_lam, best_L, mismatches = -1, 0, 0, 0
        for lam, L in zip(lams, Ls):
            t = count.count_T(d, lam, L, N, ctx, method="coset").total
            if count.count_T(d, lam, L, N, ctx, method="direct").total != t:
                mismatches += 1
            if t > best:
                best, best_lam, best_L = t, lam, L
        case = theorem2_case(d, p)
        common = dict(d=d, N=N, case=case, **{"lambda": best_lam, "L": best_L})
        out.append(make_check("theorem2_trivial", best, min(d, N), p=p, **common))
        out.append(
            make_check(
                "theorem2_methods", mismatches, 0, p=p, verdict=PASS if mismatches == 0 else FAIL, d=d, N=N
            )
        )
        out.append(
            make_check("theorem2", best, p ** (1 / 3), p=p, gate=cfg.gate_constant, report_only=True, **common)
        )
        if case == 3:
            roots = count._coset_of_roots(d, best_lam, ctx)
            if roots is not None:
                rhs = chars.theorem2_case3_rhs(d, int(roots[0]), ctx)
                out.append(make_check("theorem2_case3", best, rhs, p=p, report_only=True, **common))
    return out


COROLLARY2_POLYS = ((0, 1), (1, 1))


def cells_corollary2(ctx: PrimeContext, cfg: SweepConfig, rng: random.Random) -> list[BoundCheck]:
    p = ctx.p
    out = []
    for coeffs in COROLLARY2_POLYS:
        f = count.IntPolynomial(coeffs)
        rep = count.count_xfx(f, ctx)
        scan = count.count_xfx_scan(f, ctx)
        out.append(
            make_check(
                "corollary2_crosscheck", scan, rep.total, p=p, verdict=PASS if scan == rep.total else FAIL, f=str(f)
            )
        )
        out.append(
            make_check(
                "corollary2",
                rep.total,
                p ** (1 / 3),
                p=p,
                gate=cfg.gate_constant,
                f=str(f),
                max_Jd=max(rep.by_gcd.values(), default=0),
            )
        )
    return out


def _coverage_rows(name, specs, ctx, **params):
    image, lam = count.coverage_product(specs, ctx)
    p = ctx.p
    total = image.cardinality + lam.cardinality
    return [
        make_check(name, lam.cardinality, p, p=p, report_only=True, image=image.cardinality, **params),
        make_check(f"{name}_partition", total, p - 1, p=p, verdict=PASS if total == p - 1 else FAIL, **params),
    ]


def cells_coverage4(ctx: PrimeContext, cfg: SweepConfig, rng: random.Random) -> list[BoundCheck]:
    p = ctx.p
    H = min(math.ceil(p ** (0.625 + cfg.eps)), p - 1)
    N = min(math.ceil(p**0.375), p - 1)
    I, G = Interval(H), GeomProg(N)
    out = _coverage_rows("coverage4", [I, G], ctx, H=H, N=N)
    out += _coverage_rows("coverage4_IIG", [I, I, G], ctx, H=H, N=N)
    return out


def cells_coverage5(ctx: PrimeContext, cfg: SweepConfig, rng: random.Random) -> list[BoundCheck]:
    p = ctx.p
    H = min(math.ceil(p ** (0.25 + cfg.eps)), p - 1)
    N = min(math.ceil(p**0.25), p - 1)
    I = Interval(H)
    return _coverage_rows("coverage5", [I, I, I, GeomProg(N)], ctx, H=H, N=N)


def _lemma2_rows(ctx, rng):
    p = ctx.p
    sizes = sorted({1, math.isqrt(p), p - 1})
    s0s = range(p) if p < 300 else [rng.randrange(p) for _ in range(8)]
    out = []
    for X in sizes:
        for Y in sizes:
            checks = [lat2.lemma2_check(s0, X, Y, ctx) for s0 in s0s]
            worst = max(checks, key=lambda c: c.lhs)
            verdict = FAIL if any(c.verdict == FAIL for c in checks) else PASS
            out.append(dataclasses.replace(worst, verdict=verdict, params={**worst.params, "cells": len(checks)}))
    return out


def _lemma3_rows(ctx, rng):
    p = ctx.p
    if p < 300:
        pairs = [(X, Y) for X in range(1, p) for Y in range(1, (p - 1) // X + 1)]
    else:
        pairs = []
        for _ in range(LEMMA_SAMPLES):
            X = rng.randrange(1, p)
            pairs.append((X, rng.randrange(1, (p - 1) // X + 1)))
    worst, bad = None, 0
    for X, Y in pairs:
        c = farey.lemma3_uniqueness_check(X, Y, ctx)
        bad += c.verdict == FAIL
        if worst is None or c.lhs > worst.lhs:
            worst = c
    return [dataclasses.replace(worst, verdict=FAIL if bad else PASS, params={**worst.params, "cells": len(pairs)})]


def log_uniform(rng: random.Random, hi: int) -> int:
    return max(1, min(hi, math.floor(math.exp(rng.uniform(0, math.log(hi + 1))))))


def eq5_cell(ctx: PrimeContext, rng: random.Random) -> BoundCheck:
    s0 = rng.randrange(ctx.p)
    X, Y = log_uniform(rng, ctx.p), log_uniform(rng, ctx.p)
    check = lat2.minima_product_check(lat2.congruence_lattice(s0, ctx), lat2.Box2(X, Y), p=ctx.p)
    return dataclasses.replace(check, params={**check.params, "s0": s0})


def _section5_rows(ctx, cfg):
    p, eps = ctx.p, cfg.eps
    H = math.floor(p ** (0.25 + eps))
    n = math.floor(p ** (0.375 - eps / 2))
    U = _slice(ctx, n)
    side = [count.PrimeRange(n / 2, n), Interval(H), U]
    rep = count.count_factored(side, side, ctx, budget=cfg.budget)
    in_hyp = 2 * H < n and eps < 0.01
    return make_check(
        "lemma_qxr",
        rep.total,
        n * n * H,
        p=p,
        slack=cfg.slack_exponent,
        gate=cfg.gate_constant,
        report_only=not in_hyp,
        H=H,
        U=n,
        **{f"T_{k}": v for k, v in rep.by_pattern.items()},
    )


def _section6_rows(ctx, cfg):
    p, eps = ctx.p, cfg.eps
    H = math.floor(p ** (0.25 + eps))
    Q = math.floor(p**0.25)
    n = max(1, math.floor(p ** (0.25 - eps)))
    U = _slice(ctx, n)
    side = [
        count.PrimeRange(Q / 4, Q / 2, include_hi=False),
        count.PrimeRange(Q / 2, Q, include_hi=False),
        Interval(H),
        U,
    ]
    rep = count.count_factored(side, side, ctx, budget=cfg.budget)
    return make_check(
        "lemma_qqxr",
        rep.total,
        Q * Q * H * n,
        p=p,
        slack=cfg.slack_exponent,
        gate=cfg.gate_constant,
        report_only=not eps < 0.01,
        H=H,
        Q=Q,
        U=n,
        **{f"T_{k.replace(',', '_')}": v for k, v in rep.by_pattern.items()},
    )


def cells_lemmas(ctx: PrimeContext, cfg: SweepConfig, rng: random.Random) -> list[BoundCheck]:
    p = ctx.p
    out = _lemma2_rows(ctx, rng) + _lemma3_rows(ctx, rng)
    out += [eq5_cell(ctx, rng) for _ in range(LEMMA_SAMPLES)]

    # Erdos-Turan on a coset of a middle-sized subgroup
    divs = divisors(p - 1)
    d = divs[len(divs) // 2]
    x0 = rng.randrange(1, p)
    N = min(p - 1, max(1, p // d))
    L = rng.randrange(p - N)
    G = build_set(Subgroup(d), ctx)
    pts = (x0 * G.elements() % p) / p
    et = chars.erdos_turan_check(pts, (L + 1) / p, (L + N) / p, min(d, 2000))
    out.append(dataclasses.replace(et, p=p, verdict=REPORT_ONLY, params={**et.params, "x0": x0, "L": L}))

    L = rng.randrange(p)
    N = min(p - 1, math.ceil(p ** (0.25 + cfg.eps)))
    for r in (1, 2, 3):
        out.append(chars.burgess_check(L, N, r, ctx, slack=cfg.slack_exponent, gate=cfg.gate_constant))

    for d in divs:
        if d * d >= p:
            break
        out.append(chars.konyagin_check(build_set(Subgroup(d), ctx), ctx))

    L = rng.randrange(p)
    avg = chars.avg_linear_sum(L, p // 2, ctx)
    out.append(make_check("avg_linear_sum", avg, math.log(p), p=p, report_only=True, L=L, N=p // 2))

    n = min(64, p - 1)
    U = _slice(ctx, n)
    for m in range(1, 5):
        size = m_fold_product(U, m).cardinality
        bound = m * (n - 1) + 1
        ok = size <= bound and size < 10**m * n
        out.append(make_check("plunnecke", size, bound, p=p, verdict=PASS if ok else FAIL, m=m, U=n))

    dbl = product_set(U, U).cardinality
    out.append(make_check("small_doubling", dbl, 2 * n - 1, p=p, U=n))

    out.append(_section5_rows(ctx, cfg))
    out.append(_section6_rows(ctx, cfg))
    return out


LEMMA1_CELLS = ((16, 2), (16, 3), (24, 2))


def lemma1_rows() -> list[BoundCheck]:
    out = []
    for Q, m in LEMMA1_CELLS:
        c = farey.growth_report(farey.farey_set(Q), m, 1.0)
        out.append(dataclasses.replace(c, verdict=REPORT_ONLY))
    return out


CELLS = {
    "theorem1": cells_theorem1,
    "theorem2": cells_theorem2,
    "corollary2": cells_corollary2,
    "coverage4": cells_coverage4,
    "coverage5": cells_coverage5,
    "lemmas": cells_lemmas,
}


def run_cell(command: str, p: int, cfg: SweepConfig) -> list[BoundCheck]:
    ctx = make_context(p)
    try:
        return CELLS[command](ctx, cfg, cell_rng(cfg, command, p))
    except TooLarge as exc:
        log.warning("%s p=%d skipped: %s", command, p, exc)
        return [
            BoundCheck(command, math.nan, math.nan, math.nan, 0.0, 0.0, REPORT_ONLY, p, {"skipped": "budget"})
        ]


def run_sweep(command: str, cfg: SweepConfig, primes: list[int] | None = None) -> list[BoundCheck]:
    if command not in CELLS:
        raise ValueError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    if primes is None:
        primes = sample_primes(cfg)
    checks = []
    for p in primes:
        log.info("%s p=%d", command, p)
        checks.extend(run_cell(command, p, cfg))
    if command == "lemmas":
        checks.extend(lemma1_rows())
    return sorted(checks, key=sort_key)


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".9g")
    return str(x)


def params_field(params: dict) -> str:
    return ";".join(f"{k}={fmt(params[k])}" for k in sorted(params))


def sort_key(c: BoundCheck):
    return (c.name, c.p, params_field(c.params))


def csv_row(c: BoundCheck) -> list[str]:
    return [
        c.name,
        str(c.p),
        params_field(c.params),
        fmt(c.lhs),
        fmt(c.rhs),
        fmt(c.ratio),
        fmt(c.slack_exponent),
        fmt(c.gate_constant),
        c.verdict,
    ]


def emit_csv(checks: list[BoundCheck], path) -> None:
    rows = sorted(checks, key=sort_key)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c in rows:
            w.writerow(csv_row(c))
