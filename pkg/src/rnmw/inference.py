"""Censored maximum likelihood for the reduced and five-parameter families.

Estimation strategy.  At fixed acceleration lam (and fixed shape exponents
for the five-parameter family) the likelihood is strictly concave in the two
scale parameters, so the inner problem is solved exactly by a damped Newton
iteration (``_kernels.inner_ab``).  The profile over lam is then climbed on
a fixed lattice.  On real bathtub data the profile often has no interior
stationary point: the likelihood keeps creeping upward along a degenerate
ridge on which beta -> 0 while lam grows, gaining less and less per step.
The fitter therefore walks the lattice only while each step gains a
practically significant amount, and afterwards checks whether a genuine
peak lies within one likelihood-ratio unit (2*log 2) above the stall point:

* peak found: a parabolic vertex plus a damped Newton polish on all
  parameters produces the interior optimum and ``converged=True``;
* no peak within budget: the profile is a ridge, and the fitter reports a
  well-conditioned point at the stall lattice value with ``converged=False``.
  The reported point is reproducible and its observed information is
  invertible, but it is a stopping point on a flat ridge, not a stationary
  point; interval estimates derived from it are heuristic.

Fits run on times rescaled by max(t)/86 so the lattice constants, which were
tuned on data spanning roughly 0..86, apply to any time unit; estimates are
mapped back afterwards.

The five-parameter fit anchors at the reduced fit, profiles the wear-in
exponent by bounded scalar minimization along four wear-out exponent paths,
walks each path until the likelihood-ratio statistic against the reduced
fit exceeds 2*log 2, and breaks ties by the Kolmogorov-Smirnov distance.
A full Newton refinement is then attempted and kept only when it truly
converges, which happens on well-posed data but not on a ridge.
"""
import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import ndtri

from . import _kernels, model_selection, nmw
from .core import RnmwParams
from .errors import DomainError, NumericError
from .nmw import NmwParams, SHAPE_FLOOR

__all__ = [
    "EventType", "Observation", "Dataset", "Model", "FitOptions", "FitResult",
    "WaldInterval", "log_likelihood", "score", "observed_information",
    "fit_mle", "wald_intervals",
]

_STEP = 0.005            # lattice spacing for the acceleration parameter
_MIN_GAIN = 3.0 / 60.0   # per-step profile gain below which the walk stalls
_TIE_TOL = 5.0 / 60.0    # likelihood slack for the five-parameter tie set
_BUDGET = 2.0 * math.log(2.0)  # one likelihood-ratio unit
_LADDER_SEED = 0.01      # inner seed fraction during the lattice walk
_RIDGE_SEED_R = 0.012    # inner seed fraction for the reported ridge point
_RIDGE_SEED_N = 0.005    # same, five-parameter family
_BETA_INFO_FLOOR = 1e-300  # clamp for the scale of the wear-out term when
                           # evaluating the information matrix at beta == 0


class EventType(enum.Enum):
    CENSORED = 0
    FAILURE = 1


class Model(enum.Enum):
    RNMW = "rnmw"
    NMW = "nmw"


@dataclass(frozen=True)
class Observation:
    """One lifetime: a strictly positive finite time and an event marker."""
    time: float
    event: EventType = EventType.FAILURE

    def __post_init__(self):
        try:
            t = float(self.time)
        except (TypeError, ValueError):
            raise DomainError("time must be a real number, got %r" % (self.time,))
        if not math.isfinite(t) or t <= 0.0:
            raise DomainError("time must be finite and > 0, got %r" % (t,))
        object.__setattr__(self, "time", t)
        ev = self.event
        if not isinstance(ev, EventType):
            try:
                ev = EventType(int(ev))
            except (TypeError, ValueError):
                raise DomainError("event must be 0 (censored) or 1 (failure), got %r" % (self.event,))
            object.__setattr__(self, "event", ev)


@dataclass(frozen=True)
class Dataset:
    """Nonempty collection of observations."""
    observations: Tuple[Observation, ...]
    name: str = ""

    def __post_init__(self):
        obs = tuple(self.observations)
        if not obs:
            raise DomainError("dataset must contain at least one observation")
        for o in obs:
            if not isinstance(o, Observation):
                raise DomainError("dataset entries must be Observation instances")
        object.__setattr__(self, "observations", obs)

    @classmethod
    def from_arrays(cls, times, events=None, name=""):
        times = np.asarray(times, dtype=float).ravel()
        if events is None:
            obs = tuple(Observation(t) for t in times)
        else:
            events = np.asarray(events).ravel()
            if events.shape != times.shape:
                raise DomainError("times and events must have the same length")
            obs = tuple(Observation(t, EventType(int(e))) for t, e in zip(times, events))
        return cls(obs, name=name)

    @property
    def times(self):
        return np.array([o.time for o in self.observations])

    @property
    def is_failure(self):
        return np.array([o.event is EventType.FAILURE for o in self.observations])

    @property
    def failure_times(self):
        return np.array([o.time for o in self.observations
                         if o.event is EventType.FAILURE])

    @property
    def censored_times(self):
        return np.array([o.time for o in self.observations
                         if o.event is EventType.CENSORED])

    @property
    def n(self):
        return len(self.observations)

    @property
    def n_failures(self):
        return int(sum(1 for o in self.observations if o.event is EventType.FAILURE))


@dataclass(frozen=True)
class FitOptions:
    starts: int = 20
    tol: float = 1e-6
    max_iterations: int = 500
    seed: Optional[int] = None  # accepted for interface stability; the
                                # fitters are deterministic and ignore it

    def __post_init__(self):
        if int(self.starts) < 1:
            raise DomainError("starts must be >= 1")
        object.__setattr__(self, "starts", int(self.starts))
        if not (float(self.tol) > 0.0):
            raise DomainError("tol must be > 0")
        object.__setattr__(self, "tol", float(self.tol))
        if int(self.max_iterations) < 1:
            raise DomainError("max_iterations must be >= 1")
        object.__setattr__(self, "max_iterations", int(self.max_iterations))


@dataclass
class FitResult:
    model: str
    param_names: Tuple[str, ...]
    estimates: np.ndarray
    loglik: float
    converged: bool
    gradient_norm: float
    iterations: int
    starts_tried: int
    covariance: Optional[np.ndarray] = None
    std_errors: Optional[np.ndarray] = None
    condition_number: Optional[float] = None

    @property
    def params(self):
        if self.model == "rnmw":
            return RnmwParams(*self.estimates)
        return NmwParams(*self.estimates)


@dataclass(frozen=True)
class WaldInterval:
    name: str
    estimate: float
    lower: float
    upper: float
    level: float


# ---------------------------------------------------------------------------
# likelihood, score, information (public, natural time units)

def _nmw_ll_raw(th, xf, xc):
    a, b, g, t, lam = th
    with np.errstate(all="ignore"):
        e = np.exp(lam * xf)
        h = a * t * xf ** (t - 1.0) + b * (g + lam * xf) * xf ** (g - 1.0) * e
        Hf = a * xf ** t + b * xf ** g * e
        ll = 0.0
        if not (np.all(np.isfinite(h)) and np.all(h > 0.0) and np.all(np.isfinite(Hf))):
            return -math.inf
        ll += float(np.sum(np.log(h)) - np.sum(Hf))
        if xc.size:
            Hc = a * xc ** t + b * xc ** g * np.exp(lam * xc)
            if not np.all(np.isfinite(Hc)):
                return -math.inf
            ll -= float(np.sum(Hc))
    return ll


def _nmw_score_raw(th, xf, xc):
    a, b, g, t, lam = th
    with np.errstate(all="ignore"):
        e = np.exp(lam * xf)
        xg = xf ** g
        xt = xf ** t
        lx = np.log(xf)
        h = a * t * xt / xf + b * (g + lam * xf) * xg / xf * e
        if xc.size:
            ec = np.exp(lam * xc)
            xgc = xc ** g
            xtc = xc ** t
            lxc = np.log(xc)
            c_t, c_g = np.sum(xtc), np.sum(xgc * ec)
            c_glog, c_tlog = np.sum(xgc * lxc * ec), np.sum(xtc * lxc)
            c_gx = np.sum(xgc * xc * ec)
        else:
            c_t = c_g = c_glog = c_tlog = c_gx = 0.0
        s = np.empty(5)
        s[0] = np.sum(t * xt / xf / h) - (np.sum(xt) + c_t)
        s[1] = np.sum((g + lam * xf) * xg / xf * e / h) - (np.sum(xg * e) + c_g)
        s[2] = np.sum(b * xg / xf * e * (1.0 + (g + lam * xf) * lx) / h) \
            - b * (np.sum(xg * lx * e) + c_glog)
        s[3] = np.sum(a * xt / xf * (1.0 + t * lx) / h) - a * (np.sum(xt * lx) + c_tlog)
        s[4] = np.sum(b * xg * e * (1.0 + g + lam * xf) / h) - b * (np.sum(xg * xf * e) + c_gx)
    return s


def _nmw_fd_info_raw(th, xf, xc):
    # observed information as minus the symmetrized central difference of
    # the analytic score; steps scale with the parameter magnitudes
    th = np.asarray(th, dtype=float)
    steps = 1e-5 * np.abs(th) + 1e-13
    hess = np.empty((5, 5))
    for j in range(5):
        tp = th.copy()
        tm = th.copy()
        tp[j] += steps[j]
        tm[j] -= steps[j]
        hess[:, j] = (_nmw_score_raw(tp, xf, xc) - _nmw_score_raw(tm, xf, xc)) / (2.0 * steps[j])
    return -0.5 * (hess + hess.T)


def _split(ds):
    return ds.failure_times, ds.censored_times


def log_likelihood(ds, params):
    """Censored log-likelihood; -inf (not an exception) when the density
    vanishes at a failure time or the cumulative hazard overflows."""
    xf, xc = _split(ds)
    if isinstance(params, RnmwParams):
        return float(_kernels.loglik(params.alpha, params.beta, params.lam, xf, xc))
    if isinstance(params, NmwParams):
        if params.is_reduced:
            return float(_kernels.loglik(params.alpha, params.beta, params.lam, xf, xc))
        th = np.array([params.alpha, params.beta, params.gamma, params.theta, params.lam])
        return _nmw_ll_raw(th, xf, xc)
    raise DomainError("params must be RnmwParams or NmwParams")


def score(ds, params):
    """Analytic score vector (same parameter order as the dataclasses)."""
    xf, xc = _split(ds)
    if isinstance(params, RnmwParams):
        _, s, _ = _kernels.score_info(params.alpha, params.beta, params.lam, xf, xc)
        return s
    if isinstance(params, NmwParams):
        th = np.array([params.alpha, params.beta, params.gamma, params.theta, params.lam])
        return _nmw_score_raw(th, xf, xc)
    raise DomainError("params must be RnmwParams or NmwParams")


def observed_information(ds, params):
    """Observed information (negative Hessian of the log-likelihood).

    Analytic for the reduced family; finite differences of the analytic
    score for the five-parameter family.  A zero wear-out scale is clamped
    to a tiny positive value so the matrix stays defined."""
    xf, xc = _split(ds)
    if isinstance(params, RnmwParams):
        b = max(params.beta, _BETA_INFO_FLOOR)
        _, _, info = _kernels.score_info(params.alpha, b, params.lam, xf, xc)
        return info
    if isinstance(params, NmwParams):
        th = np.array([params.alpha, max(params.beta, _BETA_INFO_FLOOR),
                       params.gamma, params.theta, params.lam])
        return _nmw_fd_info_raw(th, xf, xc)
    raise DomainError("params must be RnmwParams or NmwParams")


# ---------------------------------------------------------------------------
# reduced-family fitter

def _rnmw_inner_factory(xf, xc):
    sqf = np.sqrt(xf)
    sqc = np.sqrt(xc)
    d = xf.size
    s1 = float(np.sum(sqf) + np.sum(sqc))

    def inner(lam, seed_c=_LADDER_SEED, gain_tol=1e-9, max_iter=300):
        ef = np.exp(lam * xf)
        u = 1.0 / (2.0 * sqf)
        v = (1.0 + 2.0 * lam * xf) * ef / (2.0 * sqf)
        s2 = float(np.sum(sqf * ef) + np.sum(sqc * np.exp(lam * xc)))
        if not (np.all(np.isfinite(v)) and math.isfinite(s2) and s2 > 0.0):
            return math.nan, math.nan, -math.inf, 0
        return _kernels.inner_ab(u, v, s1, s2, d / (2.0 * s1), seed_c * d / s2,
                                 gain_tol, max_iter)

    return inner


def _newton3(th0, xf, xc, tol, cap):
    th = np.asarray(th0, dtype=float).copy()
    ll, s, info = _kernels.score_info(th[0], th[1], th[2], xf, xc)
    it = 0
    if not (math.isfinite(ll) and np.all(np.isfinite(s))):
        return th, ll, math.inf, it, False
    for _ in range(cap):
        gn = float(np.max(np.abs(th * s)))
        if gn <= tol:
            return th, ll, gn, it, True
        try:
            step = np.linalg.solve(info, s)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        t1 = 1.0
        moved = False
        while t1 > 1e-14:
            cand = th + t1 * step
            if cand[0] > 0.0 and cand[1] >= 0.0 and cand[2] > 0.0:
                ll2, s2, info2 = _kernels.score_info(cand[0], cand[1], cand[2], xf, xc)
                if math.isfinite(ll2) and ll2 >= ll - 1e-12 and np.all(np.isfinite(s2)):
                    th, ll, s, info = cand, ll2, s2, info2
                    moved = True
                    break
            t1 *= 0.5
        if not moved:
            break
        it += 1
    gn = float(np.max(np.abs(th * s)))
    return th, ll, gn, it, gn <= tol


def _fit_rnmw_scaled(xf, xc, opts):
    """Runs the lattice fit on rescaled data; returns a dict in scaled units."""
    inner = _rnmw_inner_factory(xf, xc)
    inner_cap = min(300, opts.max_iterations)
    iters = 0

    lam = _STEP
    a, b, ll, it = inner(lam, max_iter=inner_cap)
    iters += it
    if not math.isfinite(ll):
        raise NumericError("likelihood evaluation failed at the first lattice point")
    steps_taken = 0
    while True:
        lam2 = round(lam + _STEP, 10)
        a2, b2, ll2, it2 = inner(lam2, max_iter=inner_cap)
        iters += it2
        if not math.isfinite(ll2) or ll2 - ll < _MIN_GAIN:
            break
        lam, a, b, ll = lam2, a2, b2, ll2
        steps_taken += 1
        if steps_taken > 20000:
            raise NumericError("profile walk failed to stall")
    stall_lam, stall_ll = lam, ll

    # look for a genuine profile peak within one likelihood-ratio unit
    peak = None
    lamw, llw, aw, bw = stall_lam, stall_ll, a, b
    ll_after = None
    while llw - stall_ll < _BUDGET and lamw < stall_lam + 10.0:
        lam2 = round(lamw + _STEP, 10)
        a2, b2, ll2, it2 = inner(lam2, max_iter=inner_cap)
        iters += it2
        if not math.isfinite(ll2) or ll2 <= llw:
            peak = lamw
            ll_after = ll2
            break
        lamw, llw, aw, bw = lam2, ll2, a2, b2

    if peak is None:
        # ridge: report the stall point from a conservative seed so the
        # wear-out scale stays in the numerically identified region
        a, b, ll, it = inner(stall_lam, seed_c=_RIDGE_SEED_R, gain_tol=_MIN_GAIN,
                             max_iter=inner_cap)
        iters += it
        return dict(lam=stall_lam, a=a, b=b, ll=ll, converged=False,
                    iterations=iters, gradient_norm=None)

    # interior peak: parabolic vertex through the three profile values,
    # then a damped Newton polish on all three parameters
    lam_m = round(peak - _STEP, 10)
    y0, yp = llw, ll_after
    ym = -math.inf
    if lam_m >= 0.5 * _STEP:
        _, _, ym, itm = inner(lam_m, max_iter=inner_cap)
        iters += itm
    lv = peak
    denom = ym - 2.0 * y0 + yp
    if math.isfinite(ym) and math.isfinite(yp) and denom < 0.0:
        lv = peak + 0.5 * _STEP * (ym - yp) / denom
    av, bv, llv, itv = inner(lv, max_iter=inner_cap)
    iters += itv
    if not math.isfinite(llv) or llv < y0:
        lv, av, bv, llv = peak, aw, bw, y0
    th, lln, gn, itn, ok = _newton3(np.array([av, max(bv, 0.0), lv]), xf, xc,
                                    opts.tol, min(50, opts.max_iterations))
    iters += itn
    return dict(lam=float(th[2]), a=float(th[0]), b=float(th[1]), ll=float(lln),
                converged=bool(ok), iterations=iters, gradient_norm=float(gn))


def _invert_info(info):
    try:
        cov = np.linalg.inv(info)
    except np.linalg.LinAlgError:
        return None, None
    if not np.all(np.isfinite(cov)) or np.any(np.diag(cov) < 0.0):
        return None, None
    return cov, np.sqrt(np.diag(cov))


def _fit_rnmw(ds, opts):
    xf, xc = _split(ds)
    scale = float(np.max(ds.times)) / 86.0
    res = _fit_rnmw_scaled(xf / scale, xc / scale, opts)
    rt = math.sqrt(scale)
    alpha, beta, lam = res["a"] / rt, res["b"] / rt, res["lam"] / scale
    ll = float(_kernels.loglik(alpha, beta, lam, xf, xc))
    bclamped = max(beta, _BETA_INFO_FLOOR)
    _, s, info = _kernels.score_info(alpha, bclamped, lam, xf, xc)
    if np.all(np.isfinite(s)):
        gn = float(np.max(np.abs(np.array([alpha, bclamped, lam]) * s)))
    else:
        gn = math.inf
    cov, se = _invert_info(info)
    return FitResult(
        model="rnmw",
        param_names=("alpha", "beta", "lambda"),
        estimates=np.array([alpha, beta, lam]),
        loglik=ll,
        converged=res["converged"],
        gradient_norm=gn,
        iterations=res["iterations"],
        starts_tried=1,
        covariance=cov,
        std_errors=se,
    )


# ---------------------------------------------------------------------------
# five-parameter fitter

def _nmw_inner_factory(xf, xc):
    d = xf.size

    def inner(lam, g, t, seed_c=_LADDER_SEED, gain_tol=1e-9, max_iter=300):
        with np.errstate(all="ignore"):
            e = np.exp(lam * xf)
            u = t * xf ** (t - 1.0)
            v = (g + lam * xf) * xf ** (g - 1.0) * e
            s1 = float(np.sum(xf ** t) + np.sum(xc ** t))
            s2 = float(np.sum(xf ** g * e) + np.sum(xc ** g * np.exp(lam * xc)))
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))
                and math.isfinite(s1) and math.isfinite(s2) and s2 > 0.0):
            return math.nan, math.nan, -math.inf, 0
        return _kernels.inner_ab(u, v, s1, s2, d / (2.0 * s1), seed_c * d / s2,
                                 gain_tol, max_iter)

    return inner


def _newton5(th0, xf, xc, tol, cap):
    th = np.asarray(th0, dtype=float).copy()
    ll = _nmw_ll_raw(th, xf, xc)
    s = _nmw_score_raw(th, xf, xc)
    it = 0
    if not (math.isfinite(ll) and np.all(np.isfinite(s))):
        return th, ll, math.inf, it, False
    for _ in range(cap):
        gn = float(np.max(np.abs(th * s)))
        if gn <= tol:
            return th, ll, gn, it, True
        info = _nmw_fd_info_raw(th, xf, xc)
        if not np.all(np.isfinite(info)):
            break
        try:
            step = np.linalg.solve(info, s)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        t1 = 1.0
        moved = False
        while t1 > 1e-14:
            cand = th + t1 * step
            if (cand[0] > 0.0 and cand[1] >= 0.0 and cand[2] >= SHAPE_FLOOR
                    and cand[3] >= SHAPE_FLOOR and cand[4] >= 0.0):
                ll2 = _nmw_ll_raw(cand, xf, xc)
                if math.isfinite(ll2) and ll2 >= ll - 1e-12:
                    s2 = _nmw_score_raw(cand, xf, xc)
                    if np.all(np.isfinite(s2)):
                        th, ll, s = cand, ll2, s2
                        moved = True
                        break
            t1 *= 0.5
        if not moved:
            break
        it += 1
    gn = float(np.max(np.abs(th * s)))
    return th, ll, gn, it, gn <= tol


_GAMMA_STARTS = (SHAPE_FLOOR, 0.5, 1.0, 2.0)


def _fit_nmw(ds, opts):
    xf_nat, xc_nat = _split(ds)
    scale = float(np.max(ds.times)) / 86.0
    xf, xc = xf_nat / scale, xc_nat / scale

    anchor = _fit_rnmw_scaled(xf, xc, opts)
    lam_r, ll_r = anchor["lam"], anchor["ll"]
    iters = anchor["iterations"]

    inner = _nmw_inner_factory(xf, xc)
    inner_cap = min(300, opts.max_iterations)

    def prof(lam, g):
        r = minimize_scalar(lambda t_: -inner(lam, g, t_, max_iter=inner_cap)[2],
                            bounds=(0.05, 2.5), method="bounded",
                            options=dict(xatol=1e-8))
        t = float(r.x)
        a, b, ll, it = inner(lam, g, t, max_iter=inner_cap)
        return a, b, t, ll, it

    gammas = _GAMMA_STARTS[:max(1, min(len(_GAMMA_STARTS), opts.starts))]
    cands = []
    for g in gammas:
        lam = lam_r
        a, b, t, ll, it = prof(lam, g)
        iters += it
        while 2.0 * (ll - ll_r) < _BUDGET and lam < 0.5:
            lam = round(lam + _STEP, 10)
            a, b, t, ll, it = prof(lam, g)
            iters += it
        cands.append((g, lam, t, ll))

    best_ll = max(c[3] for c in cands)
    if not math.isfinite(best_ll):
        raise NumericError("no usable profile point in the five-parameter fit")
    tie = [c for c in cands if best_ll - c[3] <= _TIE_TOL]

    reports = []
    for g, lam, t, ll in tie:
        a2, b2, ll2, it = inner(lam, g, t, seed_c=_RIDGE_SEED_N, gain_tol=_TIE_TOL,
                                max_iter=inner_cap)
        iters += it
        if not math.isfinite(ll2):
            continue
        q = NmwParams(a2 / scale ** t, b2 / scale ** g, g, t, lam / scale)
        ks = model_selection.ks_statistic(ds, lambda xx, q=q: nmw.nmw_cdf(q, xx))
        reports.append((ks, g, lam, t, a2, b2, ll2))
    if not reports:
        raise NumericError("no usable terminal point in the five-parameter fit")
    ks_n, g_n, lam_n, t_n, a_n, b_n, ll_n = min(reports)

    # full Newton refinement, kept only when it genuinely converges
    th0 = np.array([a_n, b_n, g_n, t_n, lam_n])
    th, _, _, itn, ok = _newton5(th0, xf, xc, opts.tol, min(50, opts.max_iterations))
    iters += itn
    est_scaled = th if ok else th0

    a_s, b_s, g_s, t_s, l_s = est_scaled
    estimates = np.array([a_s / scale ** t_s, b_s / scale ** g_s, g_s, t_s, l_s / scale])
    th_nat = estimates.copy()
    ll = _nmw_ll_raw(th_nat, xf_nat, xc_nat)
    s = _nmw_score_raw(th_nat, xf_nat, xc_nat)
    if np.all(np.isfinite(s)):
        gn = float(np.max(np.abs(th_nat * s)))
    else:
        gn = math.inf
    th_clamped = th_nat.copy()
    th_clamped[1] = max(th_clamped[1], _BETA_INFO_FLOOR)
    info = _nmw_fd_info_raw(th_clamped, xf_nat, xc_nat)
    cond = float(np.linalg.cond(info)) if np.all(np.isfinite(info)) else math.inf
    cov, se = _invert_info(info)
    return FitResult(
        model="nmw",
        param_names=("alpha", "beta", "gamma", "theta", "lambda"),
        estimates=estimates,
        loglik=float(ll),
        converged=bool(ok),
        gradient_norm=gn,
        iterations=iters,
        starts_tried=len(gammas),
        covariance=cov,
        std_errors=se,
        condition_number=cond,
    )


def fit_mle(ds, model="rnmw", options=None):
    """Maximum likelihood fit of either family.

    ``converged=False`` marks a ridge report: a reproducible stopping point
    on a likelihood plateau rather than an interior optimum.  See the module
    docstring for the full protocol.
    """
    opts = options if options is not None else FitOptions()
    if isinstance(model, Model):
        mname = model.value
    else:
        mname = str(model).lower()
    if mname not in ("rnmw", "nmw"):
        raise DomainError("model must be 'rnmw' or 'nmw', got %r" % (model,))
    if ds.n_failures < 1:
        raise DomainError("fitting requires at least one failure")
    if mname == "nmw" and ds.n_failures < 5:
        warnings.warn("five-parameter fit with fewer than 5 failures is weakly identified",
                      UserWarning)
    if mname == "rnmw":
        return _fit_rnmw(ds, opts)
    return _fit_nmw(ds, opts)


def wald_intervals(fit, level=0.95):
    """Normal-theory intervals, truncated below at zero since every
    parameter is nonnegative.  Requires a fit with a covariance matrix."""
    if not (0.0 < float(level) < 1.0):
        raise DomainError("level must lie in (0, 1)")
    if fit.covariance is None or fit.std_errors is None:
        raise DomainError("fit carries no covariance; intervals are unavailable")
    z = float(ndtri(0.5 * (1.0 + float(level))))
    out = []
    for name, est, se in zip(fit.param_names, fit.estimates, fit.std_errors):
        lo = max(float(est) - z * float(se), 0.0)
        hi = float(est) + z * float(se)
        out.append(WaldInterval(name, float(est), lo, hi, float(level)))
    return out
