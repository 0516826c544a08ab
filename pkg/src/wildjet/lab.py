"""Seeded experiments on jets of regular arcs.

Arcs through the origin are sampled by contact order ``r`` with ``F_T``:
``r = 1`` jets are ``(X, a_1 X + ... + a_n X^n)`` and ``r >= 2`` jets are
``(b_r X^r + ... + b_n X^n, X)``. Each trial draws from its own PCG64
stream seeded by ``(seed, trial)``, so results do not depend on worker
count or scheduling.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

import numpy as np

from .arc import Arc, intersect
from .cover import (
    ASCover, ElemAbelianCover, F_U, KummerCover, branch_data, cover_to_dict, filtration_on_arc,
    jet_threshold, restrict_to_arc, wild_jumps_on_arc,
)
from .errors import ArcInBranchLocus, InfiniteIntersection, NoRoot, PrecisionExhausted
from .field import GF
from .localfield import character_jumps, filtration_elem_abelian, swan_conductor
from .series import DEFAULT_PRECISION, BiSeries, LaurentSeries, format_series

INCIDENTS = (NoRoot, PrecisionExhausted, ArcInBranchLocus, InfiniteIntersection)


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    """Independent PCG64 stream for ``(seed, *keys)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *keys])))


@dataclass(frozen=True)
class JetSample:
    """Jet of a regular arc with contact order ``r`` along ``F_T``.

    ``coeffs`` are field codes: ``(a_1, ..., a_n)`` for ``r = 1`` and
    ``(b_r, ..., b_n)`` for ``r >= 2``.
    """

    r: int
    n: int
    coeffs: tuple
    seed: int | None = None

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("contact order r must be >= 1")
        expected = self.n if self.r == 1 else self.n - self.r + 1
        if len(self.coeffs) != expected:
            raise ValueError(f"expected {expected} jet coefficients, got {len(self.coeffs)}")
        if self.r >= 2 and self.coeffs[0] == 0:
            raise ValueError("b_r must be nonzero")

    @property
    def start(self) -> int:
        return 1 if self.r == 1 else self.r

    def coefficient(self, k: int) -> int:
        i = k - self.start
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0


def sample_arc(js: JetSample, F: GF, prec: int = DEFAULT_PRECISION) -> Arc:
    """The arc whose free coordinate is exactly the jet polynomial."""
    poly = LaurentSeries(F, js.start, list(js.coeffs), prec) if any(js.coeffs) else LaurentSeries.zero(F, prec)
    X = LaurentSeries.gen(F, prec)
    if js.r == 1:
        return Arc(X, poly)
    return Arc(poly, X)


def _needs_u_nonzero(cv) -> bool:
    return any(d == F_U for d, _ in branch_data(cv).components)


def random_jet(F: GF, r: int, n: int, rng: np.random.Generator, nonzero_first: bool) -> JetSample:
    q = F.q
    count = n if r == 1 else n - r + 1
    coeffs = [int(x) for x in rng.integers(0, q, size=count)]
    if (r >= 2 or nonzero_first) and coeffs[0] == 0:
        coeffs[0] = int(rng.integers(1, q))
    return JetSample(r, n, tuple(coeffs))


def perturb_jet(js: JetSample, k: int, n: int, rng: np.random.Generator, F: GF) -> JetSample:
    """Same coefficients below ``X^k``, a changed coefficient at ``X^k``, fresh ones above."""
    if k < js.start:
        raise ValueError("perturbation order below the jet's first coefficient")
    n = max(n, k)
    q = F.q
    coeffs = []
    for e in range(js.start, n + 1):
        if e < k:
            coeffs.append(js.coefficient(e))
        elif e == k:
            coeffs.append(F.add(js.coefficient(e), int(rng.integers(1, q))))
        else:
            coeffs.append(int(rng.integers(0, q)))
    return JetSample(js.r, n, tuple(coeffs)) if (js.r == 1 or coeffs[0]) else None


def random_unit(F: GF, rng: np.random.Generator, degree: int = 3, prec: int = DEFAULT_PRECISION) -> BiSeries:
    coeffs = {(0, 0): int(rng.integers(1, F.q))}
    for total in range(1, degree + 1):
        for i in range(total + 1):
            c = int(rng.integers(0, F.q))
            if c:
                coeffs[(i, total - i)] = c
    return BiSeries(F, coeffs, prec)


def _arc_record(c: Arc) -> dict:
    return {"t": format_series(c.t, with_precision=False), "u": format_series(c.u, with_precision=False)}


def _json_safe(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    return x


@dataclass
class ExperimentReport:
    kind: str
    config: dict
    records: list = dc_field(default_factory=list)
    aggregate: dict = dc_field(default_factory=dict)
    incidents: list = dc_field(default_factory=list)

    def to_lines(self) -> list[str]:
        dump = lambda obj: json.dumps(_json_safe(obj), separators=(",", ":"))
        lines = [dump({"type": "config", "experiment": self.kind, **self.config})]
        lines += [dump({"type": "trial", **r}) for r in self.records]
        lines += [dump({"type": "incident", **i}) for i in self.incidents]
        lines.append(dump({"type": "summary", **self.aggregate}))
        return lines

    def to_jsonl(self) -> str:
        return "\n".join(self.to_lines()) + "\n"


def _run_trials(fn: Callable, args: list, workers: int | None):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, args))
    return [fn(a) for a in args]


# -- verify_jet_order -------------------------------------------------------------------

def _jump_key(cv, c: Arc):
    return list(wild_jumps_on_arc(cv, c))


def _pair_trial(cv, F, prec, rng, r, n, k_choice, compare):
    """Sample C, perturb at an order chosen by ``k_choice(threshold, jet, rng)``, compare."""
    nonzero = _needs_u_nonzero(cv)
    for _attempt in range(16):
        js = random_jet(F, r, n, rng, nonzero)
        C = sample_arc(js, F, prec)
        thr = jet_threshold(cv, C, C)  # regular arcs: depends on C only
        k = k_choice(thr, js, rng)
        if k is None:
            return None
        jd = perturb_jet(js, k, n, rng, F)
        if jd is None:
            continue
        D = sample_arc(jd, F, prec)
        if nonzero and D.u.is_zero():
            continue
        if D.t.is_zero():
            continue
        cd = intersect(C, D)
        jc, jdump = compare(cv, C), compare(cv, D)
        return {
            "r": r, "C": _arc_record(C), "D": _arc_record(D), "k": k, "intersection": cd,
            "threshold": jet_threshold(cv, C, D), "jumps_C": jc, "jumps_D": jdump, "equal": jc == jdump,
        }
    return None


def _above_choice(slack):
    def choose(thr, js, rng):
        return max(thr, js.start) + int(rng.integers(0, slack + 1))
    return choose


def _below_choice(thr, js, rng):
    # perturbations start at the jet's first free coefficient
    if thr - 1 < js.start:
        return None
    return int(rng.integers(js.start, thr))


def _verify_worker(args):
    cv, F, prec, seed, trial, r_max, n_extra, slack = args
    rng = trial_rng(seed, trial)
    r = int(rng.integers(1, r_max + 1))
    n = r + n_extra
    out = {"trial": trial}
    for arm, choose in (("above", _above_choice(slack)), ("below", _below_choice)):
        try:
            rng_arm = trial_rng(seed, trial, 1 if arm == "above" else 2)
            rec = _pair_trial(cv, F, prec, rng_arm, r, n, choose, _jump_key)
            out[arm] = rec
        except INCIDENTS as exc:
            out[arm] = {"incident": type(exc).__name__, "message": str(exc)}
    return out


def find_below_threshold_witness(cv, F: GF, prec: int = DEFAULT_PRECISION, seed: int = 0,
                                 r_max: int = 6, tries_per_r: int = 40, n_extra: int = 4):
    """Search for a pair with ``(C.D)`` below the threshold and different jumps."""
    for r in range(1, r_max + 1):
        for t in range(tries_per_r):
            try:
                rng = trial_rng(seed, 3, r, t)
                rec = _pair_trial(cv, F, prec, rng, r, r + n_extra, _below_choice, _jump_key)
            except INCIDENTS:
                continue
            if rec is not None and not rec["equal"]:
                return rec
    return None


def verify_jet_order(cv, trials: int, seed: int, prec: int = DEFAULT_PRECISION, r_max: int = 4,
                     n_extra: int = 4, slack: int = 2, workers: int | None = None,
                     witness_search: bool = True) -> ExperimentReport:
    """Above- and below-threshold comparison of wild jumps.

    The above arm perturbs the jet of C at an order ``>= jet_threshold``;
    the below arm at a random lower order. Only the above arm is expected to
    agree every time.
    """
    if isinstance(cv, KummerCover):
        raise ValueError("verify_jet_order needs an Artin-Schreier type cover")
    F = cv.field
    config = {"cover": cover_to_dict(cv), "trials": trials, "seed": seed, "precision": prec,
              "r_max": r_max, "n_extra": n_extra, "slack": slack}
    report = ExperimentReport("verify-jet-order", config)
    args = [(cv, F, prec, seed, i, r_max, n_extra, slack) for i in range(trials)]
    results = _run_trials(_verify_worker, args, workers)
    counts = Counter()
    for res in results:
        report.records.append(res)
        for arm in ("above", "below"):
            rec = res.get(arm)
            if rec is None:
                counts[f"{arm}_skipped"] += 1
            elif "incident" in rec:
                counts[f"{arm}_incidents"] += 1
                report.incidents.append({"trial": res["trial"], "arm": arm, "kind": rec["incident"],
                                         "message": rec["message"]})
            else:
                counts[f"{arm}_run"] += 1
                counts[f"{arm}_{'agree' if rec['equal'] else 'disagree'}"] += 1
                if arm == "above" and rec["intersection"] < rec["threshold"]:
                    counts["above_under_threshold"] += 1
    agg = {k: counts[k] for k in ("above_run", "above_agree", "above_disagree", "above_skipped",
                                  "above_incidents", "above_under_threshold", "below_run", "below_agree",
                                  "below_disagree", "below_skipped", "below_incidents")}
    agg["above_pass"] = agg["above_run"] > 0 and agg["above_disagree"] == 0 and agg["above_under_threshold"] == 0
    agg["below_disagreement_rate"] = (Fraction(agg["below_disagree"], agg["below_run"])
                                      if agg["below_run"] else None)
    witness = None
    if witness_search:
        witness = next((r["below"] for r in results
                        if r.get("below") and "incident" not in r["below"] and not r["below"]["equal"]), None)
        if witness is None:
            witness = find_below_threshold_witness(cv, F, prec, seed)
    agg["witness"] = witness
    report.aggregate = agg
    return report


# -- generic_jump_scan ---------------------------------------------------------------------

def _scan_worker(args):
    cv, F, prec, seed, r, s, n = args
    rng = trial_rng(seed, 4, r, s)
    js = random_jet(F, r, n, rng, _needs_u_nonzero(cv))
    C = sample_arc(js, F, prec)
    try:
        return {"jumps": wild_jumps_on_arc(cv, C)}
    except INCIDENTS as exc:
        return {"incident": type(exc).__name__, "message": str(exc)}


def scan_jet_order(cv, r: int) -> int:
    """A jet order large enough for the pole terms that decide the jumps."""
    m = max([coef for _, coef in branch_data(cv).r0] + [1])
    return (r + 1) * m + 2


def generic_jump_scan(cv, r_max: int, samples_per_r: int, seed: int, prec: int = DEFAULT_PRECISION,
                      workers: int | None = None) -> ExperimentReport:
    """Per contact order ``r``, the observed maximum and mode of each ``w^(i)``.

    A row is flagged when the mode differs from the maximum, a sign that the
    finite field may be too small to show the generic value reliably.
    """
    if isinstance(cv, KummerCover):
        raise ValueError("generic_jump_scan needs an Artin-Schreier type cover")
    F = cv.field
    config = {"cover": cover_to_dict(cv), "r_max": r_max, "samples_per_r": samples_per_r,
              "seed": seed, "precision": prec}
    report = ExperimentReport("generic-scan", config)
    args = [(cv, F, prec, seed, r, s, scan_jet_order(cv, r))
            for r in range(1, r_max + 1) for s in range(samples_per_r)]
    results = _run_trials(_scan_worker, args, workers)
    table = []
    for r in range(1, r_max + 1):
        chunk = results[(r - 1) * samples_per_r: r * samples_per_r]
        jumps = [res["jumps"] for res in chunk if "jumps" in res]
        for res in chunk:
            if "incident" in res:
                report.incidents.append({"r": r, "kind": res["incident"], "message": res["message"]})
        rank = len(jumps[0]) if jumps else 0
        for i in range(rank):
            values = [j[i] for j in jumps]
            w_max = max(values)
            counts = Counter(values)
            w_mode = min(v for v, c in counts.items() if c == max(counts.values()))
            table.append({"r": r, "i": i + 1, "w_max": w_max, "w_mode": w_mode,
                          "ratio": Fraction(w_max, r), "samples": len(values),
                          "flag_mode_below_max": w_mode != w_max})
    report.records = table
    report.aggregate = {"rows": len(table),
                        "ratios": {str(row["r"]): row["ratio"] for row in table if row["i"] == 1}}
    return report


def scan_table(report: ExperimentReport) -> list[dict]:
    return [{k: row[k] for k in ("r", "i", "w_max", "w_mode", "ratio")} for row in report.records]


# -- strong_filtration_check -------------------------------------------------------------------

def _strong_worker(args):
    cv, F, prec, seed, trial, r_max, n_extra, slack = args
    rng = trial_rng(seed, trial)
    r = int(rng.integers(1, r_max + 1))
    key = lambda cv_, c: filtration_on_arc(cv_, c).to_dict()["segments"]
    try:
        rec = _pair_trial(cv, F, prec, trial_rng(seed, trial, 5), r, r + n_extra, _above_choice(slack), key)
    except INCIDENTS as exc:
        return {"trial": trial, "incident": type(exc).__name__, "message": str(exc)}
    return {"trial": trial, **(rec or {"skipped": True})}


def strong_filtration_check(cv, trials: int, seed: int, prec: int = DEFAULT_PRECISION, r_max: int = 1,
                            n_extra: int = 4, slack: int = 2, workers: int | None = None) -> ExperimentReport:
    """Full lower-filtration equality for pairs with ``(C.D) >= jet_threshold``.

    The threshold uses, for each divisor, the largest pole order over all
    characters. ``r_max = 1`` samples transversal pairs only.
    """
    if isinstance(cv, ASCover):
        cv = ElemAbelianCover((cv,))
    if not isinstance(cv, ElemAbelianCover):
        raise ValueError("strong_filtration_check needs an elementary abelian cover")
    F = cv.field
    config = {"cover": cover_to_dict(cv), "trials": trials, "seed": seed, "precision": prec,
              "r_max": r_max, "n_extra": n_extra, "slack": slack}
    report = ExperimentReport("strong-check", config)
    results = _run_trials(_strong_worker, [(cv, F, prec, seed, i, r_max, n_extra, slack) for i in range(trials)],
                          workers)
    run = agree = 0
    for res in results:
        if "incident" in res:
            report.incidents.append({"trial": res["trial"], "kind": res["incident"], "message": res["message"]})
            continue
        report.records.append(res)
        if res.get("skipped"):
            continue
        run += 1
        agree += res["equal"]
    report.aggregate = {"run": run, "agree": agree, "pass": run > 0 and run == agree}
    return report


# -- swan_infinity_estimate --------------------------------------------------------------------

def all_nontrivial_characters(p: int, n: int) -> list[tuple]:
    return [c for c in itertools.product(range(p), repeat=n) if any(c)]


def _swan_worker(args):
    cv, F, prec, seed, r, s, n, rep = args
    rng = trial_rng(seed, 6, r, s)
    js = random_jet(F, r, n, rng, _needs_u_nonzero(cv))
    C = sample_arc(js, F, prec)
    try:
        chars = restrict_to_arc(cv, C)
        filt = filtration_elem_abelian(chars)
        table = character_jumps(chars)
        return {"swan": swan_conductor(filt, [table[c] for c in rep])}
    except INCIDENTS as exc:
        return {"incident": type(exc).__name__, "message": str(exc)}


def swan_infinity_estimate(cv, rep, r_max: int, seed: int, samples_per_r: int = 20,
                           prec: int = DEFAULT_PRECISION, workers: int | None = None) -> ExperimentReport:
    """Generic Swan conductor ``Sw_r`` per contact order and the ratios ``Sw_r / r``.

    ``rep`` is a list of character coefficient vectors ``c`` (the character
    ``sum c_i a_i``); repeats are allowed. The generic value is the largest
    observed one. No limit is asserted.
    """
    if isinstance(cv, ASCover):
        cv = ElemAbelianCover((cv,))
    if not isinstance(cv, ElemAbelianCover):
        raise ValueError("swan_infinity_estimate needs an elementary abelian cover")
    F = cv.field
    p, n_chars = F.p, len(cv.components)
    rep = [tuple(int(x) % p for x in c) for c in rep]
    for c in rep:
        if len(c) != n_chars:
            raise ValueError(f"character {c} does not have {n_chars} coordinates")
    config = {"cover": cover_to_dict(cv), "rep": [list(c) for c in rep], "r_max": r_max,
              "samples_per_r": samples_per_r, "seed": seed, "precision": prec}
    report = ExperimentReport("swan-scan", config)
    args = [(cv, F, prec, seed, r, s, scan_jet_order(cv, r), rep)
            for r in range(1, r_max + 1) for s in range(samples_per_r)]
    results = _run_trials(_swan_worker, args, workers)
    ratios = []
    for r in range(1, r_max + 1):
        chunk = results[(r - 1) * samples_per_r: r * samples_per_r]
        values = [res["swan"] for res in chunk if "swan" in res]
        for res in chunk:
            if "incident" in res:
                report.incidents.append({"r": r, "kind": res["incident"], "message": res["message"]})
        sw = max(values) if values else None
        counts = Counter(values)
        mode = min(v for v, c in counts.items() if c == max(counts.values())) if values else None
        ratio = Fraction(sw, r) if sw is not None else None
        ratios.append(ratio)
        report.records.append({"r": r, "swan_max": sw, "swan_mode": mode, "ratio": ratio,
                               "samples": len(values)})
    report.aggregate = {"ratios": ratios}
    return report
