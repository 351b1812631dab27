"""Experiment definitions and the sweep runner.

Each experiment splits into independent cells. A cell is a sorted-comparable
tuple of parameters and is evaluated by a pure top-level function, so cells
can run in worker processes; rows are merged in sorted cell order.
"""
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import __version__, kernels
from ..errors import ResourceError
from ..expsum import (
    BRUTE_BUDGET, KloostermanParams, kloosterman_bruteforce, kloosterman_factored,
    kloosterman_q_sum, kloosterman_sup_detail, magyar_sup_bound, rho_weighted_sum,
)
from ..lattice import (
    count_representations, enumerate_sphere, make_lacunary, r4_jacobi,
)
from ..multiplier import (
    SupStrategy, error_sup_sample, surface_ft, surface_ft_decay, surface_ft_quadrature,
)
from ..operators import (
    CELL_BUDGET, GridFunction, SplitEngine, critical_p, dyadic_error_sup, interp_exponent,
    lp_norm, max_weak_type_ratio, weak_type_budget,
)
from .fitting import fit_slope


@dataclass(frozen=True)
class Param:
    name: str
    kind: str          # int, float, str, ints, floats
    default: object
    help: str = ""

    def parse(self, text):
        text = str(text).strip()
        if self.kind == "int":
            return int(text)
        if self.kind == "float":
            return float(text)
        if self.kind == "str":
            return text
        items = [t for t in text.replace(" ", "").split(",") if t]
        if not items:
            raise ValueError("empty list")
        return tuple(int(t) if self.kind == "ints" else float(t) for t in items)


@dataclass(frozen=True)
class Experiment:
    name: str
    help: str
    params: tuple
    columns: tuple
    cells: object       # params -> list of cell tuples
    cell: object        # (params, cell) -> list of row dicts
    summarize: object   # (params, rows) -> (fits, checks)
    budget_help: str = "unused"
    default_tol: float = 1e-9


@dataclass
class SweepConfig:
    experiment: str
    params: dict
    seed: int = 0
    jobs: int = 1
    out: str = "results"
    budget: int = None
    tol: float = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")
        for p in EXPERIMENTS[self.experiment].params:
            v = self.params.get(p.name)
            if isinstance(v, tuple) and not v:
                raise ValueError(f"{p.name}: range is empty")

    @property
    def tolerance(self):
        return EXPERIMENTS[self.experiment].default_tol if self.tol is None else self.tol

    def canonical(self):
        # jobs and out do not change results and stay out of the hash
        params = {**default_params(self.experiment), **self.params}
        return json.dumps({"experiment": self.experiment, "params": params,
                           "seed": self.seed, "budget": self.budget, "tol": self.tolerance},
                          sort_keys=True, default=list)

    @property
    def config_hash(self):
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]


@dataclass
class SweepReport:
    experiment: str
    columns: tuple
    rows: list
    fits: list
    checks: list
    provenance: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(f["passed"] for f in self.fits if f["asserted"]) and \
            all(c["passed"] for c in self.checks)

    def summary(self):
        return {"experiment": self.experiment, "passed": self.passed, "fits": self.fits,
                "checks": self.checks, "provenance": self.provenance}


def default_params(name):
    return {p.name: p.default for p in EXPERIMENTS[name].params}


# --------------------------------------------------------------------------
# fit and check records

def _fit(name, xs, ys, predicted, slack, kind="upper", asserted=True):
    """kind: 'upper' passes if slope <= predicted + slack, 'band' if within +-slack."""
    pairs = [(x, y) for x, y in zip(xs, ys) if y > 0]
    rec = {"name": name, "kind": kind, "asserted": asserted, "predicted": predicted,
           "slack": slack, "n": len(pairs)}
    try:
        slope, intercept, resid = fit_slope(pairs)
    except ValueError as exc:
        rec.update(slope=None, intercept=None, residual=None, passed=False, detail=str(exc))
        return rec
    ok = slope <= predicted + slack if kind == "upper" else abs(slope - predicted) <= slack
    rec.update(slope=slope, intercept=intercept, residual=resid, passed=bool(ok))
    return rec


def _check(name, value, limit, detail=""):
    return {"name": name, "value": float(value), "limit": float(limit),
            "passed": bool(value <= limit), "detail": detail}


def _log_grid(lo, hi, n, d=None):
    raw = np.unique(np.round(np.geomspace(lo, hi, n)).astype(int))
    out = []
    for lam in raw:
        lam = int(lam)
        while d == 4 and lam % 4 == 0:
            lam += 1
        if lam <= hi and lam not in out:
            out.append(lam)
    return out


# --------------------------------------------------------------------------
# count

def _count_cells(P):
    cells = [("enum", d, 0) for d in P["dims"]]
    if 4 in P["dims"]:
        cells.append(("jacobi", 4, 0))
    cells += [("hl", d, lam) for d in P["dims"]
              for lam in _log_grid(P["hl_min"], P["hl_max"], P["hl_points"], d)]
    return cells


def _count_cell(P, cell):
    kind, d, lam = cell
    budget = P.get("_budget")
    if kind == "enum":
        rows = []
        for lam in range(P["enum_max"] + 1):
            n = enumerate_sphere(d, lam, budget=budget).count
            rows.append({"kind": kind, "d": d, "lam": lam, "measured": count_representations(d, lam),
                         "reference": n})
        return rows
    if kind == "jacobi":
        return [{"kind": kind, "d": 4, "lam": lam, "measured": count_representations(4, lam),
                 "reference": r4_jacobi(lam)} for lam in range(1, P["jacobi_max"] + 1)]
    return [{"kind": kind, "d": d, "lam": lam, "measured": count_representations(d, lam),
             "reference": lam ** (d / 2 - 1)}]


def _count_summary(P, rows):
    checks, fits = [], []
    for kind, label in (("enum", "convolution == enumeration"), ("jacobi", "convolution == Jacobi r4")):
        for d in sorted({r["d"] for r in rows if r["kind"] == kind}):
            bad = [r["lam"] for r in rows if r["kind"] == kind and r["d"] == d
                   and r["measured"] != r["reference"]]
            checks.append(_check(f"{label} d={d}", len(bad), 0, f"mismatches at {bad[:5]}"))
    for d in P["dims"]:
        sel = [r for r in rows if r["kind"] == "hl" and r["d"] == d]
        fits.append(_fit(f"lattice count slope d={d}", [r["lam"] for r in sel],
                         [r["measured"] for r in sel], d / 2 - 1, P["hl_slack"], kind="band"))
    return fits, checks


# --------------------------------------------------------------------------
# kloosterman

def _kl_cells(P):
    cells = [("oracle", d, q) for d in P["dims"] for q in range(1, P["q_max"] + 1)]
    cells += [("sup", d, q) for d in P["dims"] for q in range(1, P["sup_q_max"] + 1)]
    cells += [("sweep", d, lam) for d in P["dims"]
              for lam in _log_grid(P["sweep_min"], P["sweep_max"], P["sweep_points"], d)]
    return cells


def _kl_cell(P, cell):
    kind, d, x = cell
    seed = P["_seed"]
    if kind == "sweep":
        v = kloosterman_q_sum(d, x, l_strategy=P["l_strategy"], seed=seed)
        return [{"kind": kind, "d": d, "q": "", "lam": x, "l": P["l_strategy"], "measured": v,
                 "reference": x ** ((3 - d) / 4), "abs_diff": ""}]
    q = x
    rng = np.random.default_rng([seed, d, q, 0 if kind == "oracle" else 1])
    rows = []
    if kind == "oracle":
        budget = P.get("_budget") or BRUTE_BUDGET
        for _ in range(P["per_q"]):
            lam = int(rng.integers(1, P["lam_max"] + 1))
            l = tuple(int(v) for v in rng.integers(0, q, size=d))
            p = KloostermanParams(d, lam, q, l)
            b = kloosterman_bruteforce(p, budget=budget)
            f = kloosterman_factored(p)
            rows.append({"kind": kind, "d": d, "q": q, "lam": lam, "l": " ".join(map(str, l)),
                         "measured": f.real, "reference": b.real, "abs_diff": abs(f - b)})
        return rows
    lam = int(rng.integers(1, P["lam_max"] + 1))
    s = kloosterman_sup_detail(d, lam, q, seed=seed)
    return [{"kind": kind, "d": d, "q": q, "lam": lam, "l": "all" if s.exact else f"sampled{s.n_evaluated}",
             "measured": s.value, "reference": magyar_sup_bound(d, lam, q), "abs_diff": ""}]


def _kl_summary(P, rows):
    checks, fits = [], []
    for d in P["dims"]:
        diffs = [r["abs_diff"] for r in rows if r["kind"] == "oracle" and r["d"] == d]
        checks.append(_check(f"factored == brute force d={d}", max(diffs, default=0.0), P["_tol"],
                             f"{len(diffs)} (lam, q, l) triples"))
        sel = [r for r in rows if r["kind"] == "sweep" and r["d"] == d]
        fits.append(_fit(f"sum_q |K(lam,q,0)| slope d={d}", [r["lam"] for r in sel],
                         [r["measured"] for r in sel], (3 - d) / 4, P["slack"]))
        sup = [r["measured"] / r["reference"] for r in rows if r["kind"] == "sup" and r["d"] == d]
        if sup:
            checks.append({"name": f"sup|K| / q^(1/2-d/2) rho^(1/2) d={d}", "value": max(sup),
                           "limit": None, "passed": True, "detail": "report only"})
    return fits, checks


# --------------------------------------------------------------------------
# rho-sum

def _rho_betas(P):
    return sorted(set(P["betas"]) | {(1 - d) / 2 for d in P["dims"]}, reverse=True)


def _rho_cells(P):
    return [(b, lam) for b in _rho_betas(P) for lam in _log_grid(P["lam_min"], P["lam_max"], P["points"])]


def _rho_cell(P, cell):
    beta, lam = cell
    return [{"beta": beta, "lam": lam, "measured": rho_weighted_sum(beta, lam),
             "predicted_exponent": (beta + 1) / 2}]


def _rho_summary(P, rows):
    fits = []
    for b in _rho_betas(P):
        sel = [r for r in rows if r["beta"] == b]
        fits.append(_fit(f"rho-weighted sum slope beta={b:g}", [r["lam"] for r in sel],
                         [r["measured"] for r in sel], (b + 1) / 2, P["slack"]))
    return fits, []


# --------------------------------------------------------------------------
# surface-decay

def _sd_cells(P):
    cells = [("quad", d, lam) for d in P["dims"] for lam in P["lams"]]
    if 3 in P["dims"]:
        cells.append(("sinc", 3, 0))
    cells += [("decay", d, 0) for d in P["dims"]]
    return cells


def _sd_cell(P, cell):
    kind, d, lam = cell
    rng = np.random.default_rng([P["_seed"], d, lam])
    if kind == "quad":
        rows = []
        for i in range(P["n_points"]):
            xi = rng.uniform(-P["xi_max"], P["xi_max"], size=d)
            a = float(surface_ft(d, lam, xi))
            b = surface_ft_quadrature(d, lam, xi)
            rows.append({"kind": kind, "d": d, "lam": lam, "r": float(np.sqrt(lam * xi @ xi)),
                         "measured": a, "reference": b, "abs_diff": abs(a - b)})
        return rows
    if kind == "sinc":
        r = rng.uniform(0, P["r_max"], size=P["n_points"])
        got = surface_ft(3, 1, np.column_stack([r, 0 * r, 0 * r]))
        ref = np.sinc(2 * r)  # sin(2 pi r) / (2 pi r)
        return [{"kind": kind, "d": 3, "lam": 1, "r": float(a), "measured": float(g),
                 "reference": float(s), "abs_diff": float(abs(g - s))} for a, g, s in zip(r, got, ref)]
    grid = np.geomspace(P["r_min"], P["r_max"], P["n_r"])
    drows, _ = surface_ft_decay(d, 1, grid, seed=P["_seed"])
    return [{"kind": kind, "d": d, "lam": 1, "r": r["r"], "measured": r["envelope"],
             "reference": r["sup_abs"], "abs_diff": ""} for r in drows]


def _sd_summary(P, rows):
    checks, fits = [], []
    for d in P["dims"]:
        diffs = [r["abs_diff"] for r in rows if r["kind"] == "quad" and r["d"] == d]
        checks.append(_check(f"Bessel form == quadrature d={d}", max(diffs), P["quad_tol"]))
        sel = [r for r in rows if r["kind"] == "decay" and r["d"] == d]
        fits.append(_fit(f"surface FT envelope slope d={d}", [r["r"] for r in sel],
                         [r["measured"] for r in sel], -(d - 1) / 2, P["slack"]))
    sinc = [r["abs_diff"] for r in rows if r["kind"] == "sinc"]
    if sinc:
        checks.append(_check("d=3 sinc identity", max(sinc), P["sinc_tol"]))
    return fits, checks


# --------------------------------------------------------------------------
# error-decay

def _ed_seq(P, d):
    return make_lacunary(d, P["seq_seed"], P["seq_count"])


def _ed_cells(P):
    cells = [("sup", d, lam) for d in P["dims"] for lam in _ed_seq(P, d).radii]
    cells += [("dyadic", d, lam) for d in P["dims"]
              for lam in _ed_seq(P, d).radii[:P["dyadic_count"]]]
    return cells


def _ed_cell(P, cell):
    kind, d, lam = cell
    if kind == "sup":
        st = SupStrategy(grid=P["grid"], l_per_q=P["l_per_q"], n_random=P["n_random"], seed=P["_seed"])
        v = error_sup_sample(d, lam, st, normalization=P["normalization"])
        detail = st.describe()
    else:
        budget = P.get("_budget") or CELL_BUDGET
        v, block = dyadic_error_sup(GridFunction.delta(d), _ed_seq(P, d), lam,
                                    normalization=P["normalization"], cell_budget=budget)
        detail = f"block={len(block)}"
    return [{"kind": kind, "d": d, "lam": lam, "measured": v,
             "predicted_exponent": (3 - d) / 4, "detail": detail}]


def _ed_summary(P, rows):
    fits = []
    for d in P["dims"]:
        for kind, label in (("sup", "sampled sup|E^| slope"), ("dyadic", "dyadic l2 error sup slope")):
            sel = [r for r in rows if r["kind"] == kind and r["d"] == d]
            fits.append(_fit(f"{label} d={d}", [r["lam"] for r in sel], [r["measured"] for r in sel],
                             (3 - d) / 4, P["slack"]))
    return fits, []


# --------------------------------------------------------------------------
# split

_ENGINES = {}


def _random_sets(P, n_sets, side, tag):
    rng = np.random.default_rng([P["_seed"], side, tag])
    R = side // 2
    out = []
    for _ in range(n_sets):
        n = int(rng.integers(1, P["max_size"] + 1))
        out.append(np.unique(rng.integers(-R, R + 1, size=(n, P["d"])), axis=0))
    return out


def _split_cells(P):
    return [(i,) for i in range(P["n_sets"])]


def _split_cell(P, cell):
    (i,) = cell
    d = P["d"]
    seq = make_lacunary(d, P["seq_seed"], P["seq_count"])
    key = (seq, P["mf"], P["normalization"])
    if key not in _ENGINES:
        _ENGINES.clear()
        _ENGINES[key] = SplitEngine(seq, P["mf"], normalization=P["normalization"],
                                    cell_budget=P.get("_budget") or CELL_BUDGET)
    pts = _random_sets(P, P["n_sets"], P["box"], 0)[i]
    f = GridFunction.indicator(d, P["box"], pts)
    res = _ENGINES[key].run(f, list(P["alphas"]))
    rows = []
    n1, n2 = lp_norm(f, 1), lp_norm(f, 2)
    for a in P["alphas"]:
        r = res[a]
        m1, m2 = np.abs(r.m1), np.abs(r.m2)
        rows.append({
            "set": i, "size": len(pts), "alpha": a,
            "m1_l1_ratio": float(m1.sum()) / n1,
            "m1_l1.01_ratio": float((m1**1.01).sum() ** (1 / 1.01)) / lp_norm(f, 1.01),
            "m2_l2_ratio": float(np.sqrt((m2**2).sum())) / n2,
            "alpha_sq": a * a, "alpha_l2_pred": a ** (1.5 - d / 2),
            "domination_violation": r.domination_violation,
            "quadrature_error": r.quadrature_error,
            "completeness_error": r.completeness_error,
        })
    return rows


def _split_summary(P, rows):
    d = P["d"]
    viol = max(r["domination_violation"] - r["quadrature_error"] for r in rows)
    comp = max(r["completeness_error"] - r["quadrature_error"] for r in rows)
    checks = [_check("A_tau 1_F <= M1 + M2 (beyond quadrature error)", viol, P["_tol"]),
              _check("pieces reassemble A_tau 1_F (beyond quadrature error)", comp, P["_tol"])]
    alphas = sorted(P["alphas"])

    def mean(col, a):
        return float(np.mean([r[col] for r in rows if r["alpha"] == a]))

    fits = [
        _fit("||M1||_1/||1_F||_1 vs alpha", alphas, [mean("m1_l1_ratio", a) for a in alphas],
             2.0, P["trend_slack"], kind="band", asserted=False),
        _fit("||M1||_1.01/||1_F||_1.01 vs alpha", alphas, [mean("m1_l1.01_ratio", a) for a in alphas],
             2.0, P["trend_slack"], kind="band", asserted=False),
        _fit("||M2||_2/||1_F||_2 vs alpha", alphas, [mean("m2_l2_ratio", a) for a in alphas],
             1.5 - d / 2, P["trend_slack"], kind="band", asserted=False),
    ]
    return fits, checks


# --------------------------------------------------------------------------
# weak-type

def _wt_cells(P):
    return [(side, i) for side in P["sides"] for i in range(P["n_sets"])]


def _wt_cell(P, cell):
    side, i = cell
    seq = make_lacunary(P["d"], P["seq_seed"], P["seq_count"])
    pts = _random_sets(P, P["n_sets"], side, 1)[i]
    return [{"side": side, "set": i, "size": len(pts), "max_ratio": max_weak_type_ratio(pts, seq)}]


def _wt_summary(P, rows):
    sides = sorted(P["sides"])
    best = {s: max(r["max_ratio"] for r in rows if r["side"] == s) for s in sides}
    checks = []
    for a, b in zip(sides, sides[1:]):
        checks.append(_check(f"max weak-type ratio growth side {a} -> {b}", best[b] / best[a],
                             P["growth"], f"{best[a]:.6g} -> {best[b]:.6g}"))
    return [], checks


# --------------------------------------------------------------------------
# exponents

def _ex_cells(P):
    return [(d,) for d in range(P["d_min"], P["d_max"] + 1)]


def _ex_cell(P, cell):
    (d,) = cell
    rng = np.random.default_rng([P["_seed"], d])
    worst = 0.0
    for _ in range(P["n_random"]):
        beta = float(np.exp(rng.uniform(-5, 5)))
        size = int(rng.integers(1, 10**6))
        p1, p2 = weak_type_budget(d, beta, size)
        target = size ** ((d - 1) / (d + 1))
        worst = max(worst, abs(p1 - target) / target, abs(p2 - target) / target)
    cp = critical_p(d)
    return [{"d": d, "critical_p": cp, "interp_at_critical": interp_exponent(d, cp),
             "interp_at_1": interp_exponent(d, 1), "interp_at_2": interp_exponent(d, 2),
             "budget_max_rel_diff": worst}]


def _ex_summary(P, rows):
    tol = P["_tol"]
    checks = [
        _check("interp_exponent(d, critical_p(d)) == 0", max(abs(r["interp_at_critical"]) for r in rows), tol),
        _check("interp_exponent(d, 2) == (3-d)/2", max(abs(r["interp_at_2"] - (3 - r["d"]) / 2) for r in rows), tol),
        _check("interp_exponent(d, 1) == 2", max(abs(r["interp_at_1"] - 2) for r in rows), tol),
        _check("weak-type budget pieces == |F|^((d-1)/(d+1))", max(r["budget_max_rel_diff"] for r in rows), tol),
    ]
    if any(r["d"] == 4 for r in rows):
        cp4 = next(r["critical_p"] for r in rows if r["d"] == 4)
        checks.append(_check("critical_p(4) == 5/3", abs(cp4 - 5 / 3), tol))
    return [], checks


# --------------------------------------------------------------------------

EXPERIMENTS = {e.name: e for e in [
    Experiment(
        "count", "lattice counts: convolution vs enumeration and Jacobi, log-log growth",
        (Param("dims", "ints", (4, 5), "dimensions"),
         Param("enum_max", "int", 500, "enumerate every lam <= this"),
         Param("jacobi_max", "int", 2000, "compare with Jacobi r4 for lam <= this"),
         Param("hl_min", "int", 100, "growth fit range start"),
         Param("hl_max", "int", 10000, "growth fit range end"),
         Param("hl_points", "int", 40, "log-spaced admissible lam in the fit"),
         Param("hl_slack", "float", 0.15, "allowed |slope - (d/2 - 1)|")),
        ("kind", "d", "lam", "measured", "reference"),
        _count_cells, _count_cell, _count_summary,
        budget_help="largest lam passed to enumeration"),
    Experiment(
        "kloosterman", "K(lam,q,l): factored vs brute force, sup bound ratios, q-sum decay",
        (Param("dims", "ints", (4, 5), "dimensions"),
         Param("q_max", "int", 24, "oracle moduli 1..q_max"),
         Param("per_q", "int", 20, "random (lam, l) per modulus"),
         Param("lam_max", "int", 10**4, "random lam drawn from 1..lam_max"),
         Param("sup_q_max", "int", 12, "sup-bound ratios for q <= this"),
         Param("sweep_min", "int", 100, "q-sum sweep start"),
         Param("sweep_max", "int", 10**4, "q-sum sweep end"),
         Param("sweep_points", "int", 25, "log-spaced admissible lam in the sweep"),
         Param("l_strategy", "str", "zero", "l in the q-sum: zero or random"),
         Param("slack", "float", 0.15, "slope allowance above (3-d)/4")),
        ("kind", "d", "q", "lam", "l", "measured", "reference", "abs_diff"),
        _kl_cells, _kl_cell, _kl_summary,
        budget_help="work budget of the brute-force evaluator"),
    Experiment(
        "rho-sum", "growth of sum_{q <= sqrt(lam)} q^beta rho(q, lam)^(1/2)",
        (Param("betas", "floats", (0.0, -1.5), "exponents beta"),
         Param("dims", "ints", (4, 5), "adds beta = (1-d)/2 for each d"),
         Param("lam_min", "int", 100, "sweep start"),
         Param("lam_max", "int", 10**6, "sweep end"),
         Param("points", "int", 30, "log-spaced lam"),
         Param("slack", "float", 0.1, "slope allowance above (beta+1)/2")),
        ("beta", "lam", "measured", "predicted_exponent"),
        _rho_cells, _rho_cell, _rho_summary),
    Experiment(
        "surface-decay", "Fourier transform of sphere surface measure: oracle and decay",
        (Param("dims", "ints", (3, 4, 5), "dimensions"),
         Param("lams", "ints", (1, 4, 9), "radii squared for the oracle check"),
         Param("n_points", "int", 50, "random frequencies per (d, lam)"),
         Param("xi_max", "float", 2.0, "frequency coordinates drawn from [-xi_max, xi_max]"),
         Param("r_min", "float", 1.0, "decay grid start |sqrt(lam) xi|"),
         Param("r_max", "float", 100.0, "decay grid end"),
         Param("n_r", "int", 40, "log-spaced decay radii"),
         Param("quad_tol", "float", 1e-6, "closed form vs quadrature"),
         Param("sinc_tol", "float", 1e-12, "d=3 sinc identity"),
         Param("slack", "float", 0.1, "slope allowance above -(d-1)/2")),
        ("kind", "d", "lam", "r", "measured", "reference", "abs_diff"),
        _sd_cells, _sd_cell, _sd_summary),
    Experiment(
        "error-decay", "decay of the error multiplier along a lacunary sequence",
        (Param("dims", "ints", (4,), "dimensions"),
         Param("seq_seed", "int", 1, "first radius of the greedy lacunary sequence"),
         Param("seq_count", "int", 13, "number of radii"),
         Param("dyadic_count", "int", 9, "radii used for the dyadic l2 sweep"),
         Param("grid", "int", 5, "uniform frequency grid per axis"),
         Param("l_per_q", "int", 4, "random l per modulus near rationals"),
         Param("n_random", "int", 256, "uniform random frequencies"),
         Param("normalization", "str", "unit", "main term normalization"),
         Param("slack", "float", 0.2, "slope allowance above (3-d)/4")),
        ("kind", "d", "lam", "measured", "predicted_exponent", "detail"),
        _ed_cells, _ed_cell, _ed_summary,
        budget_help="cell budget for the dyadic sweep"),
    Experiment(
        "split", "A_tau 1_F <= M1 + M2 on random sets, ratio trends in alpha",
        (Param("d", "int", 4, "dimension"),
         Param("box", "int", 33, "odd box side holding F"),
         Param("mf", "int", 45, "odd periodic grid side"),
         Param("seq_seed", "int", 1, "first radius"),
         Param("seq_count", "int", 4, "number of radii"),
         Param("n_sets", "int", 10, "random sets F"),
         Param("max_size", "int", 64, "largest |F| drawn"),
         Param("alphas", "floats", (1.0, 2.0, 3.0, 4.0), "alpha grid"),
         Param("normalization", "str", "unit", "main term normalization"),
         Param("trend_slack", "float", 0.5, "report band around the predicted trend")),
        ("set", "size", "alpha", "m1_l1_ratio", "m1_l1.01_ratio", "m2_l2_ratio", "alpha_sq",
         "alpha_l2_pred", "domination_violation", "quadrature_error", "completeness_error"),
        _split_cells, _split_cell, _split_summary,
        budget_help="periodic grid cell budget", default_tol=1e-9),
    Experiment(
        "weak-type", "restricted weak-type ratios of the lacunary maximal function",
        (Param("d", "int", 4, "dimension"),
         Param("sides", "ints", (33, 65), "box sides"),
         Param("seq_seed", "int", 1, "first radius"),
         Param("seq_count", "int", 4, "number of radii"),
         Param("n_sets", "int", 20, "random sets per side"),
         Param("max_size", "int", 64, "largest |F| drawn"),
         Param("growth", "float", 1.5, "allowed growth of the max ratio per side step")),
        ("side", "set", "size", "max_ratio"),
        _wt_cells, _wt_cell, _wt_summary),
    Experiment(
        "exponents", "interpolation exponent, critical p, weak-type budget identity",
        (Param("d_min", "int", 4, "smallest dimension"),
         Param("d_max", "int", 10, "largest dimension"),
         Param("n_random", "int", 100, "random (beta, |F|) per dimension")),
        ("d", "critical_p", "interp_at_critical", "interp_at_1", "interp_at_2", "budget_max_rel_diff"),
        _ex_cells, _ex_cell, _ex_summary, default_tol=1e-12),
]}


# --------------------------------------------------------------------------

def _run_cell(args):
    exp_name, P, cell = args
    exp = EXPERIMENTS[exp_name]
    try:
        return cell, exp.cell(P, cell)
    except ResourceError as exc:
        raise ResourceError(f"{exp_name} cell {cell}: {exc}") from None


def run(config):
    """Execute ``config`` and return a SweepReport."""
    exp = EXPERIMENTS[config.experiment]
    P = default_params(config.experiment)
    P.update(config.params)
    P.update(_seed=config.seed, _budget=config.budget, _tol=config.tolerance)
    cells = sorted(exp.cells(P))
    if not cells:
        raise ValueError(f"{config.experiment}: no parameter cells")
    work = [(config.experiment, P, c) for c in cells]
    if config.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=min(config.jobs, len(cells))) as pool:
            done = list(pool.map(_run_cell, work))
    else:
        done = [_run_cell(w) for w in work]
    done.sort(key=lambda t: t[0])
    rows = [r for _, rs in done for r in rs]
    fits, checks = exp.summarize(P, rows)
    prov = {"config_hash": config.config_hash, "seed": config.seed, "version": __version__,
            "backend": kernels.BACKEND, "params": {k: v for k, v in P.items() if not k.startswith("_")},
            "budget": config.budget, "tol": config.tolerance}
    for r in rows:
        r["seed"] = config.seed
        r["config_hash"] = prov["config_hash"]
    return SweepReport(config.experiment, exp.columns + ("seed", "config_hash"), rows, fits, checks, prov)


def default_jobs():
    return os.cpu_count() or 1

