"""Statistical procedures for the evaluation pipeline.

Everything here is deterministic and pure.  Tests against chance use the
exact binomial distribution; performance comparisons use the two-sample
equal-proportions chi-square with Yates continuity correction; correlation
comparisons between dependent, nonoverlapping pairs use the Fisher-z
statistic scaled by the Pearson-Filon covariance; multiple comparisons are
adjusted with the Benjamini-Hochberg step-up rule.

The mixed model is a Gaussian LMM with one grouping factor carrying a
random intercept and a random plausibility slope.  It is fitted by maximum
likelihood: the deviance is profiled over the fixed effects and residual
variance and minimized numerically over the relative covariance factor of
the random effects.  Fixed-effect p-values are Wald z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy import optimize, stats as spstats

from .dataset import MinimalPairItem, PairTable
from .scoring import PairDecision

PAIRINGS = ("plaus_vs_implaus", "active_vs_passive", "synonym")


@dataclass(frozen=True)
class StatResult:
    """A named test statistic with its p-value and context."""

    name: str
    statistic: float
    p_value: float
    n: int | None = None
    df: float | None = None
    notes: str = ""


def binom_test(k: int, n: int, p0: float = 0.5) -> StatResult:
    """Exact two-sided binomial test.

    The p-value sums the probabilities of all outcomes no more likely than
    the observed one, computed in log space for stability.
    """
    if not 0 <= k <= n or n < 1:
        raise ValueError(f"invalid counts k={k}, n={n}")
    if not 0.0 < p0 < 1.0:
        raise ValueError(f"null proportion must be in (0, 1), got {p0}")
    logpmf = spstats.binom.logpmf(np.arange(n + 1), n, p0)
    keep = logpmf <= logpmf[k] + 1e-7
    if keep.all():
        p = 1.0
    else:
        p = float(min(1.0, np.exp(logpmf[keep]).sum()))
    return StatResult("binomial", float(k) / n, p, n=n)


def equal_proportions_test(k1: int, n1: int, k2: int, n2: int,
                           correction: bool = True) -> StatResult:
    """Two-sample equal-proportions chi-square test (1 df).

    Applies Yates continuity correction by default, capped so it never
    overshoots the observed deviation.
    """
    for k, n in ((k1, n1), (k2, n2)):
        if n < 1:
            raise ValueError("both groups need at least one observation")
        if not 0 <= k <= n:
            raise ValueError(f"invalid counts k={k}, n={n}")
    pooled = (k1 + k2) / (n1 + n2)
    if pooled in (0.0, 1.0):
        # No variation in either group: proportions are exactly equal.
        return StatResult("equal_proportions", 0.0, 1.0, n=n1 + n2, df=1.0,
                          notes="degenerate table (pooled proportion 0 or 1)")
    observed = np.array([[k1, n1 - k1], [k2, n2 - k2]], dtype=float)
    expected = np.array([[n1 * pooled, n1 * (1 - pooled)],
                         [n2 * pooled, n2 * (1 - pooled)]])
    delta = abs(observed[0, 0] - expected[0, 0])  # identical across cells
    yates = min(0.5, delta) if correction else 0.0
    chi2 = float((((np.abs(observed - expected) - yates) ** 2) / expected).sum())
    p = float(spstats.chi2.sf(chi2, df=1))
    return StatResult("equal_proportions", chi2, p, n=n1 + n2, df=1.0)


def pearson_test(x: Sequence[float], y: Sequence[float]) -> StatResult:
    """Pearson correlation with the usual t-test for significance."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("inputs must be equal-length 1-d sequences")
    n = len(x)
    if n < 3:
        raise ValueError("pearson_test needs at least 3 observations")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = math.sqrt(float(xc @ xc))
    sy = math.sqrt(float(yc @ yc))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("pearson_test undefined for constant input (zero variance)")
    r = float(np.clip((xc @ yc) / (sx * sy), -1.0, 1.0))
    if abs(abs(r) - 1.0) < 1e-14:  # exact linear relation up to rounding
        r = math.copysign(1.0, r)
    if abs(r) == 1.0:
        return StatResult("pearson", r, 0.0, n=n, df=float(n - 2))
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    p = float(2.0 * spstats.t.sf(abs(t), df=n - 2))
    return StatResult("pearson", r, p, n=n, df=float(n - 2))


def dependent_nonoverlapping_correlation_test(
        r12: float, r34: float, r13: float, r14: float, r23: float, r24: float,
        n: int) -> StatResult:
    """Compare two correlations sharing no variable but measured on one sample.

    Fisher-z difference scaled by the Pearson-Filon covariance of the two
    correlations (the dependent-groups z-test for nonoverlapping
    correlations).  Two-sided p from the standard normal.
    """
    rs = (r12, r34, r13, r14, r23, r24)
    if any(abs(r) > 1.0 for r in rs):
        raise ValueError("correlations must lie in [-1, 1]")
    if n < 4:
        raise ValueError("need n >= 4")
    corr = np.array([
        [1.0, r12, r13, r14],
        [r12, 1.0, r23, r24],
        [r13, r23, 1.0, r34],
        [r14, r24, r34, 1.0],
    ])
    if np.linalg.eigvalsh(corr).min() < -1e-10:
        raise ValueError("correlation matrix is not positive semi-definite")
    if abs(r12) == 1.0 or abs(r34) == 1.0:
        raise ValueError("compared correlations must be strictly inside (-1, 1)")
    psi = (0.5 * r12 * r34 * (r13 ** 2 + r14 ** 2 + r23 ** 2 + r24 ** 2)
           + r13 * r24 + r14 * r23
           - (r12 * r13 * r14 + r12 * r23 * r24
              + r34 * r13 * r23 + r34 * r14 * r24))
    cov = psi / ((1.0 - r12 ** 2) * (1.0 - r34 ** 2))
    if cov >= 1.0:
        raise ValueError("degenerate correlation structure (covariance >= 1)")
    z = (math.atanh(r12) - math.atanh(r34)) * math.sqrt((n - 3) / (2.0 - 2.0 * cov))
    p = float(2.0 * spstats.norm.sf(abs(z)))
    return StatResult("dependent_correlations_z", z, p, n=n)


def bh_fdr(pvalues: Sequence[float]) -> list[float]:
    """Benjamini-Hochberg step-up adjusted p-values, capped at 1."""
    p = np.asarray(pvalues, dtype=float)
    if p.size == 0:
        return []
    if np.any((p < 0) | (p > 1)) or np.any(np.isnan(p)):
        raise ValueError("p-values must lie in [0, 1]")
    m = p.size
    order = np.argsort(p, kind="stable")
    adjusted = np.empty(m)
    running = 1.0
    for rank in range(m, 0, -1):
        idx = order[rank - 1]
        running = min(running, p[idx] * m / rank)
        adjusted[idx] = running
    return [float(v) for v in adjusted]


# ---------------------------------------------------------------------------
# Linear mixed model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Coefficient:
    name: str
    estimate: float
    se: float
    z: float
    p_value: float


@dataclass(frozen=True)
class FitResult:
    coefficients: tuple[Coefficient, ...]
    intercept_var: float
    slope_var: float
    intercept_slope_cov: float
    residual_var: float
    loglik: float
    converged: bool
    n_obs: int
    n_groups: int
    notes: str = ""

    def coef(self, name: str) -> Coefficient:
        for c in self.coefficients:
            if c.name == name:
                return c
        raise KeyError(f"no coefficient named {name!r}")


def _check_full_rank(X: np.ndarray, names: Sequence[str]) -> None:
    from scipy.linalg import qr

    _, R, piv = qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    tol = diag.max() * max(X.shape) * np.finfo(float).eps
    dropped = [names[piv[i]] for i in range(len(diag)) if diag[i] <= tol]
    if diag.shape[0] < X.shape[1]:
        dropped += [names[piv[i]] for i in range(diag.shape[0], X.shape[1])]
    if dropped:
        raise ValueError(f"fixed-effect design is rank deficient; collinear "
                         f"terms: {sorted(set(dropped))}")


def _profiled_deviance(theta: np.ndarray, blocks, n_obs: int, p: int):
    """Deviance with fixed effects and residual variance profiled out.

    theta parameterizes the lower-triangular relative covariance factor
    L = [[t0, 0], [t1, t2]] with Psi = sigma^2 * L L'.  ``blocks`` is
    either a (Xb, Zb, yb) stack of equal-size groups or a list of
    per-group (X_i, Z_i, y_i) triples.
    """
    L = np.array([[theta[0], 0.0], [theta[1], theta[2]]])
    if isinstance(blocks, tuple):
        Xb, Zb, yb = blocks  # (G, m, p), (G, m, 2), (G, m)
        ZL = Zb @ L
        K = np.eye(2) + np.einsum("gmi,gmj->gij", ZL, ZL)
        signs, lds = np.linalg.slogdet(K)
        if np.any(signs <= 0):
            return None
        logdet = float(lds.sum())
        Kinv = np.linalg.inv(K)

        def wsolve(M):  # (G, m, k) -> W^-1 M per group
            return M - ZL @ (Kinv @ np.einsum("gmi,gmk->gik", ZL, M))

        WX = wsolve(Xb)
        A = np.einsum("gmp,gmq->pq", Xb, WX)
        Wy = wsolve(yb[..., None])[..., 0]
        b = np.einsum("gmp,gm->p", Xb, Wy)
        try:
            beta = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            return None
        resid = yb - Xb @ beta
        rss = float(np.einsum("gm,gm->", resid, wsolve(resid[..., None])[..., 0]))
    else:
        A = np.zeros((p, p))
        b = np.zeros(p)
        logdet = 0.0
        solves = []
        for X_i, Z_i, y_i in blocks:
            ZL_i = Z_i @ L
            K_i = np.eye(2) + ZL_i.T @ ZL_i
            sign, ld = np.linalg.slogdet(K_i)
            if sign <= 0:
                return None
            logdet += ld
            kinv_zlt = np.linalg.solve(K_i, ZL_i.T)

            def wsolve_i(M, ZL_i=ZL_i, kinv_zlt=kinv_zlt):
                return M - ZL_i @ (kinv_zlt @ M)

            solves.append(wsolve_i)
            A += X_i.T @ wsolve_i(X_i)
            b += X_i.T @ wsolve_i(y_i)
        try:
            beta = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            return None
        rss = 0.0
        for (X_i, _, y_i), wsolve_i in zip(blocks, solves):
            resid = y_i - X_i @ beta
            rss += float(resid @ wsolve_i(resid))
    if rss <= 0:
        return None
    sigma2 = rss / n_obs
    deviance = logdet + n_obs * (1.0 + math.log(2.0 * math.pi * sigma2))
    return deviance, beta, sigma2, A


def fit_lmm_arrays(y: np.ndarray, X: np.ndarray, groups: Sequence,
                   Z: np.ndarray, names: Sequence[str],
                   diagonal_cov: bool = False,
                   fallback_ols: bool = True) -> FitResult:
    """ML fit of y = X beta + Z b_g + e with b_g ~ N(0, Psi), 2-d per group."""
    y = np.asarray(y, dtype=float)
    X = np.asarray(X, dtype=float)
    Z = np.asarray(Z, dtype=float)
    if X.shape[0] != y.shape[0] or Z.shape != (y.shape[0], 2):
        raise ValueError("misaligned design arrays")
    if len(names) != X.shape[1]:
        raise ValueError("names must match design columns")
    _check_full_rank(X, names)

    group_ids = list(dict.fromkeys(groups))
    index = {g: i for i, g in enumerate(group_ids)}
    rows_per = [[] for _ in group_ids]
    for row, g in enumerate(groups):
        rows_per[index[g]].append(row)
    if any(len(rows) < 2 for rows in rows_per):
        raise ValueError("every group needs at least 2 observations")
    sizes = {len(rows) for rows in rows_per}
    if len(sizes) == 1:
        blocks = (np.stack([X[rows] for rows in rows_per]),
                  np.stack([Z[rows] for rows in rows_per]),
                  np.stack([y[rows] for rows in rows_per]))
    else:
        blocks = [(X[rows], Z[rows], y[rows]) for rows in rows_per]
    n, p = X.shape

    if diagonal_cov:
        def objective(t2):
            out = _profiled_deviance(np.array([t2[0], 0.0, t2[1]]), blocks, n, p)
            return out[0] if out is not None else 1e12

        starts = [np.array([0.0, 0.0]), np.array([1.0, 1.0]), np.array([0.3, 0.3])]
        bounds = [(0.0, None)] * 2
        expand = lambda t: np.array([t[0], 0.0, t[1]])
    else:
        def objective(t3):
            out = _profiled_deviance(np.asarray(t3), blocks, n, p)
            return out[0] if out is not None else 1e12

        starts = [np.zeros(3), np.array([1.0, 0.0, 1.0]), np.array([0.3, 0.0, 0.3])]
        bounds = [(0.0, None), (None, None), (0.0, None)]
        expand = lambda t: np.asarray(t)

    best = None
    converged = False
    for start in starts:
        res = optimize.minimize(objective, start, method="L-BFGS-B", bounds=bounds,
                                options={"maxiter": 500, "ftol": 1e-12, "gtol": 1e-9})
        if best is None or res.fun < best.fun:
            best = res
            converged = bool(res.success)
    theta = expand(best.x)
    out = _profiled_deviance(theta, blocks, n, p)
    if out is None:
        raise ValueError("mixed-model deviance undefined at the optimum")
    deviance, beta, sigma2, A = out
    L = np.array([[theta[0], 0.0], [theta[1], theta[2]]])
    psi = sigma2 * (L @ L.T)

    cov_beta = sigma2 * np.linalg.inv(A)
    se = np.sqrt(np.diag(cov_beta))
    zvals = beta / se
    pvals = 2.0 * spstats.norm.sf(np.abs(zvals))
    coeffs = tuple(Coefficient(nm, float(b_), float(s_), float(z_), float(p_))
                   for nm, b_, s_, z_, p_ in zip(names, beta, se, zvals, pvals))
    notes = ""
    at_boundary = theta[0] < 1e-6 and theta[2] < 1e-6
    if at_boundary and fallback_ols:
        notes = "random-effect variances at zero boundary; estimates equal OLS"
    return FitResult(coeffs, float(psi[0, 0]), float(psi[1, 1]), float(psi[0, 1]),
                     float(sigma2), -0.5 * deviance, converged, n, len(group_ids),
                     notes)


def ols_loglik(y: np.ndarray, X: np.ndarray) -> float:
    """Gaussian ML log-likelihood of the fixed-effects-only model."""
    y = np.asarray(y, dtype=float)
    X = np.asarray(X, dtype=float)
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    n = len(y)
    sigma2 = float(resid @ resid) / n
    return -0.5 * n * (1.0 + math.log(2.0 * math.pi * sigma2))


# ---------------------------------------------------------------------------
# Analysis-level helpers
# ---------------------------------------------------------------------------

def paired_correlation(norm_scores: Mapping[str, float], table: PairTable,
                       pairing: str) -> StatResult:
    """Pearson test over aligned score pairs for one pairing scheme.

    ``plaus_vs_implaus`` pairs the two members of each item;
    ``active_vs_passive`` pairs the same sentence across voices;
    ``synonym`` pairs the same sentence across synonym variants.
    """
    if pairing not in PAIRINGS:
        raise ValueError(f"unknown pairing {pairing!r}")
    xs: list[float] = []
    ys: list[float] = []
    if pairing == "plaus_vs_implaus":
        for item in table:
            xs.append(norm_scores[item.plausible.sentence_id])
            ys.append(norm_scores[item.implausible.sentence_id])
    elif pairing == "active_vs_passive":
        by_key: dict[tuple, dict[str, MinimalPairItem]] = {}
        for item in table:
            by_key.setdefault((item.dataset, item.pair_id, item.synonym_variant),
                              {})[item.voice] = item
        for slot in by_key.values():
            if "active" in slot and "passive" in slot:
                for member in ("plausible", "implausible"):
                    xs.append(norm_scores[getattr(slot["active"], member).sentence_id])
                    ys.append(norm_scores[getattr(slot["passive"], member).sentence_id])
    else:  # synonym
        by_key = {}
        for item in table:
            by_key.setdefault((item.dataset, item.pair_id, item.voice),
                              {})[item.synonym_variant] = item
        for slot in by_key.values():
            if "1" in slot and "2" in slot:
                for member in ("plausible", "implausible"):
                    xs.append(norm_scores[getattr(slot["1"], member).sentence_id])
                    ys.append(norm_scores[getattr(slot["2"], member).sentence_id])
    if not xs:
        raise ValueError(f"no aligned pairs for pairing {pairing!r}")
    result = pearson_test(xs, ys)
    return StatResult(f"pearson_{pairing}", result.statistic, result.p_value,
                      n=result.n, df=result.df)


@dataclass(frozen=True)
class ErrorProfileRow:
    pair_id: str
    item_type: str
    n_correct: int
    n_scorers: int
    human_difference: float


def error_profile(decisions_by_scorer: Mapping[str, Mapping[str, PairDecision]],
                  human_diffs: Mapping[str, float],
                  item_types: Mapping[str, str]
                  ) -> tuple[list[ErrorProfileRow], dict[str, StatResult]]:
    """Per-pair scorer-success counts against human difference magnitude.

    Returns rows ordered by human difference (largest first) and a Pearson
    test per item type; degenerate columns are reported, not raised.
    """
    scorers = sorted(decisions_by_scorer)
    if len(scorers) < 2:
        raise ValueError("error_profile needs at least 2 scorers")
    pair_ids = set(human_diffs)
    for scorer in scorers:
        if set(decisions_by_scorer[scorer]) != pair_ids:
            raise ValueError(f"scorer {scorer!r} decisions misaligned with human pairs")
    rows = []
    for pid in pair_ids:
        n_correct = sum(decisions_by_scorer[s][pid].correct for s in scorers)
        rows.append(ErrorProfileRow(pid, item_types.get(pid, "NA"), n_correct,
                                    len(scorers), human_diffs[pid]))
    rows.sort(key=lambda r: (-r.human_difference, r.pair_id))
    results: dict[str, StatResult] = {}
    for itype in sorted({r.item_type for r in rows}):
        sub = [r for r in rows if r.item_type == itype]
        counts = [float(r.n_correct) for r in sub]
        diffs = [r.human_difference for r in sub]
        try:
            res = pearson_test(diffs, counts)
            results[itype] = StatResult(f"error_profile_{itype}", res.statistic,
                                        res.p_value, n=res.n, df=res.df)
        except ValueError:
            results[itype] = StatResult(f"error_profile_{itype}", math.nan, math.nan,
                                        n=len(sub), notes="undefined (zero variance)")
    return rows, results


@dataclass(frozen=True)
class LayerGroupResult:
    group: str
    layers: tuple[int, ...]
    mean_accuracy: float
    vs_ceiling: StatResult
    trend: StatResult


def layer_groups(n_layers: int) -> list[tuple[int, ...]]:
    """Three contiguous near-equal groups; remainder goes to earlier groups."""
    if n_layers < 3:
        raise ValueError("need at least 3 layers to form three groups")
    base, rem = divmod(n_layers, 3)
    sizes = [base + (1 if i < rem else 0) for i in range(3)]
    groups = []
    start = 0
    for size in sizes:
        groups.append(tuple(range(start, start + size)))
        start += size
    return groups


def _trend_test(xs: np.ndarray, ys: np.ndarray, name: str) -> StatResult:
    m = len(xs)
    if m < 2 or np.ptp(xs) == 0:
        return StatResult(name, math.nan, math.nan, n=m,
                          notes="trend undefined for fewer than 2 layers")
    xc = xs - xs.mean()
    slope = float((xc @ (ys - ys.mean())) / (xc @ xc))
    fitted = ys.mean() + slope * xc
    rss = float(((ys - fitted) ** 2).sum())
    if abs(slope) < 1e-12:
        return StatResult(name, 0.0, 1.0, n=m)
    if m <= 2 or rss <= 1e-300:
        return StatResult(name, slope, 0.0, n=m,
                          notes="exact fit; p degenerate")
    se = math.sqrt(rss / (m - 2) / float(xc @ xc))
    t = slope / se
    p = float(2.0 * spstats.t.sf(abs(t), df=m - 2))
    return StatResult(name, slope, p, n=m, df=float(m - 2))


def layer_group_trend(accuracies: Sequence[float], ceiling: float) -> list[LayerGroupResult]:
    """Per layer group: accuracy vs the ceiling constant, and linear trend."""
    acc = np.asarray(accuracies, dtype=float)
    results = []
    for label, layers in zip(("early", "middle", "late"), layer_groups(len(acc))):
        ys = acc[list(layers)]
        xs = np.asarray(layers, dtype=float)
        mean = float(ys.mean())
        m = len(ys)
        sd = float(ys.std(ddof=1)) if m > 1 else 0.0
        if sd < 1e-12:
            sd = 0.0
        if m > 1 and sd > 0:
            t = (mean - ceiling) / (sd / math.sqrt(m))
            p = float(2.0 * spstats.t.sf(abs(t), df=m - 1))
            vs = StatResult(f"{label}_vs_ceiling", mean - ceiling, p, n=m, df=float(m - 1))
        elif mean == ceiling:
            vs = StatResult(f"{label}_vs_ceiling", 0.0, 1.0, n=m)
        else:
            vs = StatResult(f"{label}_vs_ceiling", mean - ceiling, math.nan, n=m,
                            notes="no within-group variance")
        results.append(LayerGroupResult(label, layers, mean, vs,
                                        _trend_test(xs, ys, f"{label}_trend")))
    return results
