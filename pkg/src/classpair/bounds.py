"""Effective class-number bound evaluators and the discriminant-family scan.

Every hypothesis check uses outward-rounded intervals, so a check reported
as satisfied is certified; bound values are returned as certified lower
endpoints.  Rows of a scan are independent and assembled in ascending t
order, making reports deterministic.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    CurveModel,
    RationalPoint,
    TwistPoint,
    family_discriminant,
    family_twist_point,
    on_curve,
    point,
)
from .errors import (
    DependentAtThisSize,
    DependentPoints,
    DomainError,
    NonPositiveDiscriminant,
)
from .heights import (
    CurveProfile,
    DEFAULT_TOL,
    canonical_height,
    enumerate_points_below,
    gram_matrix,
    unit_ball_volume,
    _regulator_from_gram,
)
from .intervals import Interval, log_interval_of_int
from .pairing import pair_point_set
from .qforms import (
    class_number,
    fundamental_decomposition,
    hurwitz_class_number,
    is_fundamental,
)
from .arith import factorize

DEFAULT_ORACLE_CAP = 10**8


# ---------------------------------------------------------------------------
# height budgets and theorem bounds


def _log_ratio(num: int, den: int) -> float:
    """log(num/den) for positive integers of any size; -inf when undefined."""
    if num <= 0 or den <= 0:
        return -math.inf
    return (log_interval_of_int(num) - log_interval_of_int(den)).mid


def _budget_interval_general(profile: CurveProfile, D: int, u: int) -> Interval:
    """(1/4) log(D / (1+|u|)^2) - delta, as an interval."""
    base = 1 + abs(u)
    if D <= base * base:
        raise DomainError(f"need D > (1+|u|)^2 = {base * base}, got D = {D}")
    logs = log_interval_of_int(D) - log_interval_of_int(base) * 2.0
    return logs * 0.25 - profile.height_offset


def height_budget_general(profile: CurveProfile, D: int, u: int) -> float:
    """Canonical-height budget below which points pair into distinct classes
    against an integral twist point of x-coordinate u."""
    return _budget_interval_general(profile, D, u).mid


def height_budget_family(profile: CurveProfile, t: int) -> float:
    """Budget for the family discriminant D_E(t) and its point (-t, 1)."""
    return _budget_interval_family(profile, t).mid


def _budget_interval_family(profile: CurveProfile, t: int) -> Interval:
    D = family_discriminant(profile.curve, t)
    base = abs(t) + 1
    if D <= base * base:
        raise DomainError(f"need D_E(t) > (t+1)^2 = {base * base}, got {D}")
    logs = log_interval_of_int(D) - log_interval_of_int(base) * 2.0
    return logs * 0.25 - profile.height_offset


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    satisfied: bool
    margin: float


@dataclass(frozen=True)
class BoundEvaluation:
    """Outcome of one theorem-bound evaluation.

    value is the certified lower endpoint when every hypothesis certifies,
    otherwise None; checks records each hypothesis with its margin.
    """

    value: float | None
    checks: tuple[HypothesisCheck, ...]

    @property
    def satisfied(self) -> bool:
        return self.value is not None


def _bound_value(profile: CurveProfile, T: Interval) -> float:
    r = profile.rank
    d = profile.diameter.clamp_nonnegative()
    Tpos = T.clamp_nonnegative()
    main = Tpos.pow_half_int(r)
    corr = Tpos.pow_half_int(r - 1) * d.sqrt() * r if r else Interval(0.0, 0.0)
    return (profile.count_constant * 0.5 * (main - corr)).lo


def class_bound_general(
    profile: CurveProfile, D: int, Q: TwistPoint
) -> BoundEvaluation:
    """Lower bound for h(-D) from pairing against an integral twist point.

    Hypotheses: Q integral (w = 1, v even when -D odd) and
    (1+|u|)^2 exp(4*delta + d) < D <= (1+|u|)^2 u^2 / v^4, the lower
    inequality strict.  Returns value None with the failing hypothesis
    logged when any check does not certify.
    """
    checks: list[HypothesisCheck] = []
    u, v, w = Q.u, Q.v, Q.w
    integral = w == 1
    checks.append(HypothesisCheck("integral twist point (w = 1)", integral, 0.0 if integral else -1.0))
    parity_ok = D % 2 == 0 or v % 2 == 0
    checks.append(HypothesisCheck("v even when -D odd", parity_ok, 0.0 if parity_ok else -1.0))
    base = 1 + abs(u)
    # strict lower threshold, certified with upper endpoints of delta and d
    exp_arg = profile.height_offset * 4.0 + profile.diameter
    log_lower = log_interval_of_int(base) * 2.0 + exp_arg
    lower_ok = False
    margin_lower = -math.inf
    if D > base * base:
        margin_lower = (log_interval_of_int(D) - log_lower).lo
        lower_ok = margin_lower > 0
    checks.append(
        HypothesisCheck("D > (1+|u|)^2 exp(4 delta + d)", lower_ok, margin_lower)
    )
    upper_lhs = D * v**4
    upper_rhs = base * base * u * u
    upper_ok = upper_lhs <= upper_rhs
    margin_upper = _log_ratio(upper_rhs, upper_lhs)
    checks.append(
        HypothesisCheck("D <= (1+|u|)^2 u^2 / v^4", upper_ok, margin_upper)
    )
    if not (integral and parity_ok and lower_ok and upper_ok):
        return BoundEvaluation(None, tuple(checks))
    T = _budget_interval_general(profile, D, u)
    return BoundEvaluation(_bound_value(profile, T), tuple(checks))


def class_bound_family(profile: CurveProfile, t: int) -> BoundEvaluation:
    """Lower bound for h(-D_E(t)) from pairing against (-t, 1).

    Hypotheses: t >= 1, budget >= d/4 and
    (t+1)^2 exp(4*delta + d) <= D_E(t) <= t^2 (t+1)^2.
    """
    checks: list[HypothesisCheck] = []
    t_ok = t >= 1
    checks.append(HypothesisCheck("t >= 1", t_ok, float(min(t - 1, 10**300))))
    try:
        D = family_discriminant(profile.curve, t)
    except NonPositiveDiscriminant:
        checks.append(HypothesisCheck("D_E(t) > 0", False, -math.inf))
        return BoundEvaluation(None, tuple(checks))
    base = t + 1 if t >= 0 else abs(t) + 1
    budget_ok = False
    margin_budget = -math.inf
    T: Interval | None = None
    if D > base * base:
        T = _budget_interval_family(profile, t)
        margin_budget = (T - profile.diameter * 0.25).lo
        budget_ok = margin_budget >= 0
    checks.append(HypothesisCheck("T_E(t) >= d/4", budget_ok, margin_budget))
    exp_arg = profile.height_offset * 4.0 + profile.diameter
    lower_ok = False
    margin_lower = -math.inf
    if D > base * base:
        margin_lower = (
            log_interval_of_int(D) - log_interval_of_int(base) * 2.0 - exp_arg
        ).lo
        lower_ok = margin_lower >= 0
    checks.append(
        HypothesisCheck("D_E(t) >= (t+1)^2 exp(4 delta + d)", lower_ok, margin_lower)
    )
    upper_rhs = t * t * base * base
    upper_ok = D <= upper_rhs
    margin_upper = _log_ratio(upper_rhs, D)
    checks.append(HypothesisCheck("D_E(t) <= t^2 (t+1)^2", upper_ok, margin_upper))
    if not (t_ok and budget_ok and lower_ok and upper_ok) or T is None:
        return BoundEvaluation(None, tuple(checks))
    return BoundEvaluation(_bound_value(profile, T), tuple(checks))


def compare_with_ggz(best_bound: float | None, ggz: float | None) -> bool | None:
    """Comparison flag: True when a bound from the pairing route exceeds the
    analytic baseline, False when it does not (including when no bound is
    available), None when the baseline itself could not be computed."""
    if ggz is None:
        return None
    return best_bound is not None and best_bound > ggz


def ggz_bound(D: int) -> float:
    """(1/7000) log(D) prod_{p | D, p != D} (1 - floor(2 sqrt(p)) / (p+1)).

    The effective analytic lower bound used as the comparison baseline.
    """
    if D <= 1:
        raise DomainError("need D > 1")
    prod = Fraction(1)
    for p in factorize(D):
        if p == D:
            continue
        prod *= 1 - Fraction(math.isqrt(4 * p), p + 1)
    return math.log(D) / 7000 * float(prod)


# ---------------------------------------------------------------------------
# the curve family y^2 = x^3 - a^2 x + b^2


@dataclass(frozen=True)
class FamilyCurve:
    """E: y^2 = x^3 - a^2 x + b^2 (or b^6) with its candidate points."""

    curve: CurveModel
    points: tuple[RationalPoint, ...]
    independent: bool
    gram_det: Interval | None


def family_curve(a: int, b: int, cube: bool = False, tol: float = 1e-3) -> FamilyCurve:
    """Curve and candidate points for parameters (a, b).

    cube=False: y^2 = x^3 - a^2 x + b^2 with candidates (0, b), (-a, b).
    cube=True:  y^2 = x^3 - a^2 x + b^6 with candidates (0, b^3), (-a, b^3),
    (-b^2, a b).  Candidates are verified on-curve exactly; independence is
    decided numerically by whether the Gram determinant interval excludes 0.
    """
    if a < 1 or b < 1:
        raise ValueError("need positive integers a, b")
    if cube:
        E = CurveModel(-a * a, b**6)
        cands = [point(0, b**3), point(-a, b**3), point(-b * b, a * b)]
    else:
        E = CurveModel(-a * a, b * b)
        cands = [point(0, b), point(-a, b)]
    for P in cands:
        if not on_curve(E, P):  # pragma: no cover - algebraic identity
            raise AssertionError(f"candidate {P!r} not on {E!r}")
    det: Interval | None = None
    independent = False
    try:
        det = _regulator_from_gram(gram_matrix(E, cands, tol))
        independent = True
    except DependentPoints:
        pass
    return FamilyCurve(E, tuple(cands), independent, det)


def family_constants(a: int, b: int, cube: bool = False, tol: float = DEFAULT_TOL) -> float:
    """Leading constant of the asymptotic family bound.

    Omega_2 / (12 * hhat(Pmax)) in the plain case, or
    Omega_3 / (24 sqrt(3) * hhat(Pmax)^(3/2)) in the cube case, where Pmax
    is the candidate point of largest canonical height.  Raises
    DependentAtThisSize when the candidates are not certifiably independent.
    """
    fam = family_curve(a, b, cube, tol=max(tol, 1e-3))
    if not fam.independent:
        raise DependentAtThisSize(
            f"candidates on (a={a}, b={b}, cube={cube}) not certifiably independent"
        )
    heights = [canonical_height(fam.curve, P, tol) for P in fam.points]
    hmax = max(heights, key=lambda h: h.value)
    if cube:
        return unit_ball_volume(3) / (24 * math.sqrt(3) * hmax.value**1.5)
    return unit_ball_volume(2) / (12 * hmax.value)


# ---------------------------------------------------------------------------
# the scan


@dataclass
class ScanOptions:
    tol: float = 1e-4
    oracle_cap: int = DEFAULT_ORACLE_CAP
    height_budget: float | None = None
    slack: float = 1e-9
    ggz_factor_cap: int = 10**20  # skip the analytic baseline when D needs
    # factoring beyond this size


@dataclass
class BoundReport:
    """One scanned discriminant row."""

    t: int | None
    D: int
    fundamental: bool
    D0: int | None = None
    conductor: int | None = None
    direct_count: int = 0
    thm_family: float | None = None
    thm_general: float | None = None
    ggz: float | None = None
    class_number_oracle: int | None = None
    hurwitz: Fraction | None = None
    hypotheses: tuple[HypothesisCheck, ...] = ()
    beats_ggz: bool | None = None
    errors: tuple[str, ...] = ()


def _auto_budget(profile: CurveProfile) -> float:
    # generous enough that every basis point itself gets paired
    top = max((g.hi for g in (profile.gram[i][i] for i in range(profile.rank))), default=0.0)
    return top + 1e-6


def scan(
    profile: CurveProfile,
    ts,
    options: ScanOptions | None = None,
) -> list[BoundReport]:
    """Family sweep over integer parameters t.

    For each t with positive family discriminant: classify -D_E(t), pair the
    points of canonical height up to max(T_E(t), height budget) against
    (-t, 1), count distinct reduced classes, evaluate the theorem bounds and
    the analytic baseline, and attach the brute-force class number when D
    is within the oracle cap.  Per-row failures are recorded in the row.
    """
    opts = options or ScanOptions()
    E = profile.curve
    budget_floor = (
        opts.height_budget if opts.height_budget is not None else _auto_budget(profile)
    )
    point_cache: dict[float, list[RationalPoint]] = {}
    reports: list[BoundReport] = []
    for t in sorted(set(int(t) for t in ts)):
        try:
            D = family_discriminant(E, t)
        except NonPositiveDiscriminant as exc:
            reports.append(
                BoundReport(t=t, D=0, fundamental=False, errors=(str(exc),))
            )
            continue
        row = BoundReport(t=t, D=D, fundamental=is_fundamental(D))
        errors: list[str] = []
        try:
            dec = fundamental_decomposition(D)
            row.D0, row.conductor = dec.D0, dec.f
        except Exception as exc:  # pragma: no cover - decomposition is total here
            errors.append(f"decomposition: {exc}")
        # theorem bounds
        fam_eval = class_bound_family(profile, t)
        row.thm_family = fam_eval.value
        gen_eval = class_bound_general(profile, D, family_twist_point(E, t))
        row.thm_general = gen_eval.value
        row.hypotheses = fam_eval.checks + gen_eval.checks
        if D <= opts.ggz_factor_cap:
            try:
                row.ggz = ggz_bound(D)
            except Exception as exc:
                errors.append(f"ggz: {exc}")
        # direct pairing count
        budget = budget_floor
        if fam_eval.value is not None:
            budget = max(budget, _budget_interval_family(profile, t).lo)
        try:
            key = round(budget, 12)
            if key not in point_cache:
                point_cache[key] = enumerate_points_below(profile, budget, opts.slack)
            forms = pair_point_set(E, D, family_twist_point(E, t), point_cache[key])
            row.direct_count = len(forms)
        except Exception as exc:
            errors.append(f"pairing: {exc}")
        # oracles
        try:
            if 0 < D <= opts.oracle_cap:
                row.class_number_oracle = class_number(D)
            if row.D0 is not None and row.D0 <= opts.oracle_cap:
                row.hurwitz = hurwitz_class_number(D)
        except Exception as exc:
            errors.append(f"oracle: {exc}")
        best = max(
            (b for b in (row.thm_family, row.thm_general) if b is not None),
            default=None,
        )
        row.beats_ggz = compare_with_ggz(best, row.ggz)
        row.errors = tuple(errors)
        reports.append(row)
    return reports


# ---------------------------------------------------------------------------
# report formatting

CSV_COLUMNS = (
    "t",
    "D",
    "fundamental",
    "direct_count",
    "thm_family",
    "thm_general",
    "ggz",
    "h_oracle",
    "hurwitz",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    return str(value)


def _row_cells(row: BoundReport) -> list[str]:
    return [
        _fmt(row.t),
        _fmt(row.D),
        _fmt(row.fundamental),
        _fmt(row.direct_count),
        _fmt(row.thm_family),
        _fmt(row.thm_general),
        _fmt(row.ggz),
        _fmt(row.class_number_oracle),
        _fmt(row.hurwitz),
    ]


def write_csv(reports: list[BoundReport], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in reports:
        writer.writerow(_row_cells(row))


def csv_text(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    write_csv(reports, buf)
    return buf.getvalue()


def format_table(reports: list[BoundReport]) -> str:
    rows = [list(CSV_COLUMNS)] + [_row_cells(r) for r in reports]
    widths = [max(len(r[i]) for r in rows) for i in range(len(CSV_COLUMNS))]
    lines = []
    for i, r in enumerate(rows):
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def example_inequality_threshold(
    reports: list[BoundReport], coefficient: float = 1 / 20, power: float = 1.5
) -> int | None:
    """Smallest scanned t from which every later fundamental row with an
    oracle satisfies h(-D) > coefficient * log(D)^power."""
    holds: list[tuple[int, bool]] = []
    for row in reports:
        if row.t is None or not row.fundamental or row.class_number_oracle is None:
            continue
        ok = row.class_number_oracle > coefficient * math.log(row.D) ** power
        holds.append((row.t, ok))
    threshold: int | None = None
    for t, ok in holds:
        if ok:
            if threshold is None:
                threshold = t
        else:
            threshold = None
    return threshold
