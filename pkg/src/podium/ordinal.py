"""Ordinal effectiveness analysis.

For each factor, a proportional-odds (cumulative logit) model relates the
factor value to contest level 1..5: P(level <= k) = sigmoid(alpha_k - beta*x)
with one shared slope and four ordered cutpoints. The headline p-value is a
two-sided Wald test on beta. Four binary sub-problem fits (level > k vs
level <= k) back a likelihood-ratio check of the shared-slope assumption.

Fitting is plain Newton with step-halving; cutpoint order is enforced by
parameterizing the gaps between consecutive cutpoints as exponentials. The
predictor is standardized internally, which makes the reported p-values and
predictions exactly invariant to affine rescaling of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit
from scipy.stats import chi2

LEVELS = (1, 2, 3, 4, 5)
SCORE_TOL = 1e-8
MAX_ITER = 100
SEPARATION_BOUND = 1e3  # on the standardized-slope scale

SIGNIFICANCE_LEVEL = 0.05


@dataclass(frozen=True)
class BinaryFit:
    """Logistic fit of one dichotomized sub-problem (y = 1 when level > k)."""

    sub_problem: int
    intercept: float
    slope: float
    log_likelihood: float
    converged: bool
    separated: bool
    n_used: int


@dataclass(frozen=True)
class OrdinalFit:
    factor_name: str
    beta: float
    cutpoints: tuple[float, float, float, float]
    se_beta: float
    se_cutpoints: tuple[float, float, float, float]
    wald_z: float
    p_value: float
    log_likelihood: float
    converged: bool
    separated: bool
    n_used: int


@dataclass(frozen=True)
class ParallelLinesResult:
    lr_statistic: float
    df: int
    p_value: float


@dataclass(frozen=True)
class FactorAnalysis:
    factor: str
    fit: OrdinalFit
    parallel: ParallelLinesResult | None
    parallel_error: str | None
    significant: bool


@dataclass(frozen=True)
class AnalysisReport:
    results: tuple[FactorAnalysis, ...]
    skipped: tuple[tuple[str, str], ...]

    def get(self, factor: str) -> FactorAnalysis | None:
        for r in self.results:
            if r.factor == factor:
                return r
        return None


def _log_sigmoid(eta: np.ndarray) -> np.ndarray:
    return -np.logaddexp(0.0, -eta)


def bernoulli_log_likelihood(x: np.ndarray, y: np.ndarray, intercept: float, slope: float) -> float:
    """Plain Bernoulli log-likelihood of logit P(y=1) = intercept + slope*x."""
    eta = intercept + slope * np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(np.sum(y * _log_sigmoid(eta) + (1.0 - y) * _log_sigmoid(-eta)))


def _completely_separated(x: np.ndarray, y: np.ndarray) -> bool:
    x0, x1 = x[y == 0], x[y == 1]
    return bool(x0.max() < x1.min() or x1.max() < x0.min())


def fit_binary_logistic(x, y, sub_problem: int = 0, max_iter: int = MAX_ITER) -> BinaryFit:
    """Newton ML fit of a univariate logistic regression.

    Complete separation is reported via the `separated` flag with
    converged=False rather than by returning a diverged estimate.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("length mismatch between x and y")
    if not set(np.unique(y)) <= {0.0, 1.0}:
        raise ValueError("y must be 0/1")
    if y.min() == y.max():
        raise ValueError("single-class y")
    mu, sd = float(x.mean()), float(x.std())
    if sd == 0.0:
        raise ValueError("degenerate predictor")
    z = (x - mu) / sd

    if _completely_separated(z, y):
        return BinaryFit(sub_problem, math.nan, math.nan, math.nan, False, True, x.size)

    b0, b1 = 0.0, 0.0
    ll = bernoulli_log_likelihood(z, y, b0, b1)
    converged = False
    separated = False
    for _ in range(max_iter):
        p = expit(b0 + b1 * z)
        g0 = float(np.sum(y - p))
        g1 = float(np.sum(z * (y - p)))
        if max(abs(g0), abs(g1)) < SCORE_TOL:
            converged = True
            break
        w = p * (1.0 - p)
        h00 = float(np.sum(w))
        h01 = float(np.sum(w * z))
        h11 = float(np.sum(w * z * z))
        det = h00 * h11 - h01 * h01
        if det <= 0 or not math.isfinite(det):
            break
        d0 = (h11 * g0 - h01 * g1) / det
        d1 = (h00 * g1 - h01 * g0) / det
        step = 1.0
        for _ in range(40):
            ll_new = bernoulli_log_likelihood(z, y, b0 + step * d0, b1 + step * d1)
            if ll_new >= ll - 1e-12:
                break
            step *= 0.5
        b0 += step * d0
        b1 += step * d1
        ll = ll_new
        if abs(b1) > SEPARATION_BOUND:
            separated = True
            break

    intercept = b0 - b1 * mu / sd
    slope = b1 / sd
    return BinaryFit(sub_problem, intercept, slope, ll, converged and not separated, separated, x.size)


# --- cumulative-logit machinery -------------------------------------------

def _theta_from_phi(phi: np.ndarray, n_cuts: int) -> tuple[float, np.ndarray]:
    b = phi[0]
    alphas = np.empty(n_cuts)
    alphas[0] = phi[1]
    for j in range(1, n_cuts):
        alphas[j] = alphas[j - 1] + math.exp(phi[1 + j])
    return b, alphas


def _cum_ll(z: np.ndarray, cat: np.ndarray, n_cats: int, b: float, alphas: np.ndarray) -> float:
    ll = 0.0
    for c in range(n_cats):
        zc = z[cat == c]
        if zc.size == 0:
            continue
        if c == 0:
            ll += float(np.sum(_log_sigmoid(alphas[0] - b * zc)))
        elif c == n_cats - 1:
            ll += float(np.sum(_log_sigmoid(-(alphas[-1] - b * zc))))
        else:
            upper = expit(alphas[c] - b * zc)
            lower = expit(alphas[c - 1] - b * zc)
            ll += float(np.sum(np.log(np.maximum(upper - lower, 1e-300))))
    return ll


def _cum_grad_hess(z: np.ndarray, cat: np.ndarray, n_cats: int, b: float, alphas: np.ndarray):
    """Score and Hessian in theta = (b, alpha_1..alpha_{K-1}) space.

    Each observation contributes through at most two linear indices
    u = alpha_c - b*z and l = alpha_{c-1} - b*z; the 2x2 Hessian of
    log(F(u) - F(l)) is mapped onto theta by the chain rule.
    """
    dim = n_cats  # 1 slope + (n_cats - 1) cutpoints
    grad = np.zeros(dim)
    hess = np.zeros((dim, dim))
    for c in range(n_cats):
        zc = z[cat == c]
        if zc.size == 0:
            continue
        has_u = c < n_cats - 1
        has_l = c > 0
        fu = flo = np.zeros_like(zc)
        big_f_u = np.ones_like(zc)
        big_f_l = np.zeros_like(zc)
        if has_u:
            big_f_u = expit(alphas[c] - b * zc)
            fu = big_f_u * (1.0 - big_f_u)
        if has_l:
            big_f_l = expit(alphas[c - 1] - b * zc)
            flo = big_f_l * (1.0 - big_f_l)
        lik = np.maximum(big_f_u - big_f_l, 1e-300)
        a_term = fu / lik
        b_term = flo / lik
        # d/du and d/dl second derivatives of log-likelihood contribution
        fpu = fu * (1.0 - 2.0 * big_f_u)
        fpl = flo * (1.0 - 2.0 * big_f_l)
        h_uu = fpu / lik - a_term**2
        h_ll = -fpl / lik - b_term**2
        h_ul = a_term * b_term

        grad[0] += float(np.sum(-zc * (a_term - b_term)))
        hess[0, 0] += float(np.sum((h_uu + h_ll + 2.0 * h_ul) * zc * zc))
        if has_u:
            iu = 1 + c
            grad[iu] += float(np.sum(a_term))
            hess[iu, iu] += float(np.sum(h_uu))
            cross = float(np.sum(-zc * (h_uu + h_ul)))
            hess[0, iu] += cross
            hess[iu, 0] += cross
        if has_l:
            il = 1 + c - 1
            grad[il] += float(np.sum(-b_term))
            hess[il, il] += float(np.sum(h_ll))
            cross = float(np.sum(-zc * (h_ll + h_ul)))
            hess[0, il] += cross
            hess[il, 0] += cross
        if has_u and has_l:
            iu, il = 1 + c, 1 + c - 1
            hess[iu, il] += float(np.sum(h_ul))
            hess[il, iu] += float(np.sum(h_ul))
    return grad, hess


def _chain_to_phi(phi: np.ndarray, grad_t: np.ndarray, hess_t: np.ndarray, n_cuts: int):
    dim = 1 + n_cuts
    jac = np.zeros((dim, dim))
    jac[0, 0] = 1.0
    for k in range(n_cuts):  # row for alpha_{k+1}
        jac[1 + k, 1] = 1.0
        for j in range(1, k + 1):
            jac[1 + k, 1 + j] = math.exp(phi[1 + j])
    grad_p = jac.T @ grad_t
    hess_p = jac.T @ hess_t @ jac
    # curvature of the exp transform itself
    for j in range(1, n_cuts):
        contrib = math.exp(phi[1 + j]) * float(np.sum(grad_t[1 + j:]))
        hess_p[1 + j, 1 + j] += contrib
    return grad_p, hess_p


def _expand_cutpoints(cats: list[int], internal: np.ndarray, fill) -> tuple[float, float, float, float]:
    """Map internal cutpoints (between consecutive observed levels) onto the
    canonical four boundaries; boundaries below/above the observed range get
    -inf/+inf and `fill` is used where a standard error has no meaning."""
    lo, hi = cats[0], cats[-1]
    out = []
    for k in range(1, 5):
        if k < lo:
            out.append(-math.inf if fill is None else fill)
        elif k >= hi:
            out.append(math.inf if fill is None else fill)
        else:
            m = max(i for i in range(len(cats)) if cats[i] <= k)
            out.append(float(internal[m]))
    return tuple(out)


def fit_proportional_odds(x, levels, factor_name: str = "", max_iter: int = MAX_ITER) -> OrdinalFit:
    """Maximum-likelihood proportional-odds fit of levels (1..5) on x.

    Non-convergence is reported in the fit, not raised. Pairs with a
    non-finite x are dropped (n_used reflects that).
    """
    x = np.asarray(x, dtype=float)
    lv = np.asarray(levels, dtype=int)
    if x.shape != lv.shape:
        raise ValueError("length mismatch between x and levels")
    keep = np.isfinite(x)
    x, lv = x[keep], lv[keep]
    if x.size == 0:
        raise ValueError("no usable observations")
    if not set(np.unique(lv)) <= set(LEVELS):
        raise ValueError("levels must lie in 1..5")
    cats = sorted(set(int(v) for v in lv))
    if len(cats) < 2:
        raise ValueError("need at least 2 distinct levels")
    mu, sd = float(x.mean()), float(x.std())
    if sd == 0.0:
        raise ValueError("constant x")
    z = (x - mu) / sd
    cat = np.array([cats.index(int(v)) for v in lv])
    n_cats = len(cats)
    n_cuts = n_cats - 1
    n = x.size

    separated = all(
        _completely_separated(z, (cat > m).astype(float)) for m in range(n_cuts)
    )
    if separated:
        nan4 = (math.nan,) * 4
        return OrdinalFit(factor_name, math.nan, nan4, math.nan, nan4, math.nan,
                          math.nan, math.nan, False, True, n)

    counts = np.bincount(cat, minlength=n_cats)
    cum = np.cumsum(counts)[:-1] / n
    cum = np.clip(cum, 1.0 / (2 * n), 1.0 - 1.0 / (2 * n))
    alpha0 = np.log(cum / (1.0 - cum))
    phi = np.zeros(1 + n_cuts)
    phi[1] = alpha0[0]
    for j in range(1, n_cuts):
        phi[1 + j] = math.log(max(alpha0[j] - alpha0[j - 1], 1e-6))

    b, alphas = _theta_from_phi(phi, n_cuts)
    ll = _cum_ll(z, cat, n_cats, b, alphas)
    converged = False
    diverged = False
    for _ in range(max_iter):
        grad_t, hess_t = _cum_grad_hess(z, cat, n_cats, b, alphas)
        grad_p, hess_p = _chain_to_phi(phi, grad_t, hess_t, n_cuts)
        if float(np.max(np.abs(grad_p))) < SCORE_TOL:
            converged = True
            break
        try:
            step = np.linalg.solve(hess_p, -grad_p)
        except np.linalg.LinAlgError:
            step = grad_p
        if float(step @ grad_p) <= 0.0:
            step = grad_p  # Hessian not usably concave here; plain ascent
        scale = 1.0
        ll_new = ll
        for _ in range(40):
            cand = phi + scale * step
            b_c, alphas_c = _theta_from_phi(cand, n_cuts)
            ll_new = _cum_ll(z, cat, n_cats, b_c, alphas_c)
            if ll_new >= ll - 1e-12:
                break
            scale *= 0.5
        phi = phi + scale * step
        b, alphas = _theta_from_phi(phi, n_cuts)
        ll = ll_new
        if abs(b) > SEPARATION_BOUND:
            diverged = True
            break

    se_b = math.nan
    se_alphas = np.full(n_cuts, math.nan)
    if converged:
        _, hess_t = _cum_grad_hess(z, cat, n_cats, b, alphas)
        try:
            cov = np.linalg.inv(-hess_t)
            diag = np.diag(cov)
            if np.all(diag > 0):
                se_b = math.sqrt(diag[0])
                se_alphas = np.sqrt(diag[1:])
        except np.linalg.LinAlgError:
            pass

    beta = b / sd
    alphas_x = alphas + b * mu / sd
    se_beta = se_b / sd if math.isfinite(se_b) else math.nan
    wald = beta / se_beta if (math.isfinite(se_beta) and se_beta > 0) else math.nan
    p_value = math.erfc(abs(wald) / math.sqrt(2.0)) if math.isfinite(wald) else math.nan

    cutpoints = _expand_cutpoints(cats, alphas_x, None)
    se_cuts = _expand_cutpoints(cats, se_alphas, math.nan)
    return OrdinalFit(
        factor_name=factor_name,
        beta=beta,
        cutpoints=cutpoints,
        se_beta=se_beta,
        se_cutpoints=se_cuts,
        wald_z=wald,
        p_value=p_value,
        log_likelihood=ll,
        converged=converged and not diverged,
        separated=diverged,
        n_used=n,
    )


def level_probabilities(fit: OrdinalFit, x: float) -> np.ndarray:
    """P(level = j) for j = 1..5 at factor value x; sums to 1."""
    if not fit.converged:
        raise ValueError("fit did not converge")
    cum = [0.0]
    for a in fit.cutpoints:
        if a == -math.inf:
            cum.append(0.0)
        elif a == math.inf:
            cum.append(1.0)
        else:
            cum.append(float(expit(a - fit.beta * x)))
    cum.append(1.0)
    return np.array([cum[j + 1] - cum[j] for j in range(5)])


def predict_level(fit: OrdinalFit, x: float) -> int:
    """Most probable level; exact ties resolve to the lower level."""
    probs = level_probabilities(fit, x)
    return int(np.argmax(probs)) + 1


def parallel_lines_test(x, levels) -> ParallelLinesResult:
    """Likelihood-ratio check of the shared-slope assumption.

    Each boundary k gets a free logistic fit of 1{level > k} on x; the
    restricted side evaluates the same four Bernoulli likelihoods at the
    slope and cutpoint implied by the proportional-odds fit. Twice the gap
    is referred to chi-square with 3 degrees of freedom.
    """
    x = np.asarray(x, dtype=float)
    lv = np.asarray(levels, dtype=int)
    keep = np.isfinite(x)
    x, lv = x[keep], lv[keep]
    po = fit_proportional_odds(x, lv)
    if not po.converged:
        raise ValueError("proportional-odds fit did not converge")
    free_ll = 0.0
    restricted_ll = 0.0
    for k in (1, 2, 3, 4):
        y = (lv > k).astype(float)
        if y.min() == y.max():
            raise ValueError(f"sub-problem {k} has a single outcome class")
        bf = fit_binary_logistic(x, y, sub_problem=k)
        if not bf.converged:
            raise ValueError(f"sub-problem {k} fit degenerate")
        free_ll += bf.log_likelihood
        restricted_ll += bernoulli_log_likelihood(x, y, -po.cutpoints[k - 1], po.beta)
    lr = 2.0 * (free_ll - restricted_ll)
    if lr < -1e-8:
        raise ValueError(f"negative likelihood-ratio statistic {lr}")
    lr = max(lr, 0.0)
    return ParallelLinesResult(lr_statistic=lr, df=3, p_value=float(chi2.sf(lr, 3)))


def analyze_all(table, levels) -> AnalysisReport:
    """One proportional-odds fit and parallel-lines check per factor column.

    `levels` is a mapping speech_id -> level or a sequence aligned with
    table.speech_ids. Results are sorted ascending by p-value; columns that
    cannot be fitted are listed in `skipped` with a reason.
    """
    if len(table.speech_ids) == 0 or len(table.factor_names) == 0:
        raise ValueError("empty factor table")
    if isinstance(levels, dict):
        lv = np.array([levels[sid] for sid in table.speech_ids], dtype=int)
    else:
        lv = np.asarray(levels, dtype=int)
        if lv.size != len(table.speech_ids):
            raise ValueError("levels length does not match table")

    results = []
    skipped = []
    for j, name in enumerate(table.factor_names):
        col = table.values[:, j]
        mask = np.isfinite(col)
        if not mask.any():
            skipped.append((name, "all cells missing"))
            continue
        sub_x, sub_lv = col[mask], lv[mask]
        if len(set(sub_lv.tolist())) < 2:
            skipped.append((name, "fewer than 2 levels with data"))
            continue
        if float(np.std(sub_x)) == 0.0:
            skipped.append((name, "constant factor"))
            continue
        fit = fit_proportional_odds(sub_x, sub_lv, factor_name=name)
        parallel = None
        parallel_error = None
        try:
            parallel = parallel_lines_test(sub_x, sub_lv)
        except ValueError as exc:
            parallel_error = str(exc)
        significant = bool(fit.converged and math.isfinite(fit.p_value) and fit.p_value < SIGNIFICANCE_LEVEL)
        results.append(FactorAnalysis(name, fit, parallel, parallel_error, significant))

    results.sort(key=lambda r: (
        not (r.fit.converged and math.isfinite(r.fit.p_value)),
        r.fit.p_value if math.isfinite(r.fit.p_value) else math.inf,
        r.factor,
    ))
    return AnalysisReport(results=tuple(results), skipped=tuple(skipped))


def report_to_json(report: AnalysisReport) -> list[dict]:
    """Export schema: one object per analyzed factor, sorted by p-value."""
    out = []
    for r in report.results:
        out.append({
            "factor": r.factor,
            "beta": _num(r.fit.beta),
            "cutpoints": [_num(c) for c in r.fit.cutpoints],
            "p_value": _num(r.fit.p_value),
            "significant": r.significant,
            "parallel_lines_p": _num(r.parallel.p_value) if r.parallel else None,
            "n_used": r.fit.n_used,
            "converged": r.fit.converged,
        })
    return out


def _num(v: float):
    return float(v) if (v is not None and math.isfinite(v)) else None
