"""Command line interface.

Subcommands: ``fit`` (maximum likelihood with model-selection report),
``curves`` (plot-data files for pdf, survival, hazard and the scaled
total-time-on-test transform), ``sweep`` (skewness/kurtosis over a parameter
grid) and ``sample`` (reproducible sampling by inversion).

Exit codes: 0 success (including honest non-converged ridge reports),
2 bad input or malformed arguments, 3 fit produced no usable result,
4 internal numeric failure.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import core, datasets, model_selection, moments, nmw
from .core import HazardKind, RnmwParams
from .errors import DomainError, NumericError
from .inference import FitOptions, fit_mle, wald_intervals
from .nmw import NmwParams

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOFIT = 3
EXIT_NUMERIC = 4


def _clean(v):
    """Make a value JSON-safe and deterministic: finite floats stay floats,
    non-finite become None, containers recurse."""
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        f = float(v)
        return f if math.isfinite(f) else None
    if v is None or isinstance(v, str):
        return v
    return str(v)


def _sfloat(v):
    if v is None:
        return "n/a"
    return repr(float(v))


def render_report(report):
    """Pure function mapping a report dict to its (text, json) renderings.
    Re-rendering a reloaded JSON report reproduces both byte for byte."""
    js = json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
    lines = []
    push = lines.append
    push("lifetime model fit report")
    push("=" * 25)
    push("input: %s" % report.get("input", "n/a"))
    dsrep = report.get("dataset", {})
    push("dataset: name=%s n=%d failures=%d censored=%d"
         % (dsrep.get("name", ""), dsrep.get("n", 0),
            dsrep.get("failures", 0), dsrep.get("censored", 0)))
    push("requested model: %s   interval level: %s"
         % (report.get("model", "n/a"), _sfloat(report.get("level"))))
    for mname in sorted(report.get("fits", {})):
        fr = report["fits"][mname]
        push("")
        push("[%s]" % mname)
        push("converged: %s" % ("yes" if fr.get("converged")
                                else "no (ridge report: profile has no interior optimum)"))
        est = fr.get("estimates", {})
        ses = fr.get("std_errors") or {}
        wald = fr.get("wald") or {}
        for nm in sorted(est):
            line = "  %-8s = %s" % (nm, _sfloat(est[nm]))
            if nm in ses:
                line += "   se %s" % _sfloat(ses[nm])
            if nm in wald:
                line += "   ci [%s, %s]" % (_sfloat(wald[nm].get("lower")),
                                            _sfloat(wald[nm].get("upper")))
            push(line)
        push("loglik: %s   gradient_norm: %s" % (_sfloat(fr.get("loglik")),
                                                 _sfloat(fr.get("gradient_norm"))))
        push("iterations: %d   starts_tried: %d"
             % (fr.get("iterations", 0), fr.get("starts_tried", 0)))
        crit = fr.get("criteria", {})
        push("criteria: aic=%s bic=%s aicc=%s caic_bozdogan=%s"
             % (_sfloat(crit.get("aic")), _sfloat(crit.get("bic")),
                _sfloat(crit.get("aicc")), _sfloat(crit.get("caic_bozdogan"))))
        push("ks_distance: %s" % _sfloat(fr.get("ks")))
        if fr.get("condition_number") is not None:
            push("information condition number: %s" % _sfloat(fr.get("condition_number")))
        shape = fr.get("hazard_shape")
        if shape:
            if shape.get("kind") == "bathtub":
                push("hazard: bathtub, minimum at x0=%s with h(x0)=%s"
                     % (_sfloat(shape.get("minimum_location")),
                        _sfloat(shape.get("minimum_value"))))
            else:
                push("hazard: monotone decreasing")
    lrt = report.get("lrt")
    if lrt:
        push("")
        push("[likelihood ratio test: five-parameter vs reduced]")
        push("omega=%s   p_value=%s   df=%d"
             % (_sfloat(lrt.get("omega")), _sfloat(lrt.get("p_value")), lrt.get("df", 2)))
    txt = "\n".join(lines) + "\n"
    return txt, js


def load_report(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _fit_entry(ds, fr, level):
    crit = model_selection.information_criteria(fr.loglik, len(fr.param_names), ds.n)
    entry = {
        "estimates": {nm: v for nm, v in zip(fr.param_names, fr.estimates)},
        "loglik": fr.loglik,
        "converged": fr.converged,
        "gradient_norm": fr.gradient_norm,
        "iterations": fr.iterations,
        "starts_tried": fr.starts_tried,
        "criteria": {
            "k": crit.k, "n": crit.n, "aic": crit.aic, "bic": crit.bic,
            "aicc": crit.aicc if crit.aicc_defined else None,
            "caic_bozdogan": crit.caic_bozdogan,
        },
        "covariance": None if fr.covariance is None else
            [list(row) for row in fr.covariance],
        "std_errors": None,
        "wald": None,
        "condition_number": fr.condition_number,
    }
    if fr.std_errors is not None:
        entry["std_errors"] = {nm: v for nm, v in zip(fr.param_names, fr.std_errors)}
        entry["wald"] = {
            w.name: {"lower": w.lower, "upper": w.upper}
            for w in wald_intervals(fr, level)
        }
    params = fr.params
    if isinstance(params, RnmwParams):
        entry["ks"] = model_selection.ks_statistic(ds, lambda x: core.cdf(params, x))
        shape = core.hazard_shape(params)
        entry["hazard_shape"] = {
            "kind": shape.kind.value,
            "minimum_location": shape.minimum_location,
            "minimum_value": shape.minimum_value,
        }
    else:
        entry["ks"] = model_selection.ks_statistic(ds, lambda x: nmw.nmw_cdf(params, x))
    return entry


def build_fit_report(ds, input_path, model_flag, level, fits):
    report = {
        "command": "fit",
        "input": str(input_path),
        "model": model_flag,
        "level": level,
        "dataset": {
            "name": ds.name, "n": ds.n, "failures": ds.n_failures,
            "censored": ds.n - ds.n_failures,
        },
        "fits": {name: _fit_entry(ds, fr, level) for name, fr in fits.items()},
    }
    if "rnmw" in fits and "nmw" in fits:
        lrt = model_selection.likelihood_ratio_test(fits["nmw"].loglik, fits["rnmw"].loglik)
        report["lrt"] = {"omega": lrt.omega, "p_value": lrt.p_value, "df": lrt.df}
    return _clean(report)


def cmd_fit(args):
    ds = datasets.load_lifetimes(args.input)
    opts = FitOptions(starts=args.starts, tol=args.tol, seed=args.seed)
    wanted = ["rnmw", "nmw"] if args.model == "both" else [args.model]
    fits = {}
    for mname in wanted:
        fr = fit_mle(ds, mname, opts)
        if not (math.isfinite(fr.loglik) and np.all(np.isfinite(fr.estimates))):
            print("no usable %s fit: non-finite result" % mname, file=sys.stderr)
            return EXIT_NOFIT
        fits[mname] = fr
    report = build_fit_report(ds, args.input, args.model, args.level, fits)
    txt, js = render_report(report)
    with open(args.out + ".txt", "w", encoding="utf-8") as fh:
        fh.write(txt)
    with open(args.out + ".json", "w", encoding="utf-8") as fh:
        fh.write(js)
    for mname in sorted(fits):
        fr = fits[mname]
        state = "converged" if fr.converged else "ridge (not converged)"
        print("%s: loglik=%s  %s" % (mname, _sfloat(fr.loglik), state))
    print("wrote %s.txt and %s.json" % (args.out, args.out))
    return EXIT_OK


def _parse_params(text):
    try:
        vals = [float(s) for s in text.split(",") if s.strip() != ""]
    except ValueError:
        raise DomainError("cannot parse --params %r" % (text,))
    if len(vals) == 3:
        return RnmwParams(*vals)
    if len(vals) == 5:
        return NmwParams(*vals)
    raise DomainError("--params needs 3 values (alpha,beta,lambda) "
                      "or 5 (alpha,beta,gamma,theta,lambda)")


def _params_from_report(path, model):
    report = load_report(path)
    fits = report.get("fits", {})
    if not fits:
        raise DomainError("report %s contains no fits" % (path,))
    if model is None:
        model = "rnmw" if "rnmw" in fits else sorted(fits)[0]
    if model not in fits:
        raise DomainError("report %s has no %s fit" % (path, model))
    est = fits[model]["estimates"]
    if model == "rnmw":
        return RnmwParams(est["alpha"], est["beta"], est["lambda"])
    return NmwParams(est["alpha"], est["beta"], est["gamma"], est["theta"], est["lambda"])


def _write_table(path, comment, colnames, columns):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# %s\n" % comment)
        fh.write(",".join(colnames) + "\n")
        for row in zip(*columns):
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return "%d" % v
    f = float(v)
    return repr(f) if math.isfinite(f) else "nan"


def _describe(params):
    if isinstance(params, RnmwParams):
        return "rnmw alpha=%s beta=%s lambda=%s" % (
            repr(params.alpha), repr(params.beta), repr(params.lam))
    return "nmw alpha=%s beta=%s gamma=%s theta=%s lambda=%s" % (
        repr(params.alpha), repr(params.beta), repr(params.gamma),
        repr(params.theta), repr(params.lam))


def cmd_curves(args):
    if (args.params is None) == (args.fit_report is None):
        raise DomainError("supply exactly one of --params or --fit-report")
    if args.params is not None:
        params = _parse_params(args.params)
    else:
        params = _params_from_report(args.fit_report, args.model)
    reduced = isinstance(params, RnmwParams)
    label = _describe(params)

    ds = datasets.load_lifetimes(args.input) if args.input else None

    if args.grid:
        try:
            lo_s, hi_s, cnt_s = args.grid.split(":")
            lo, hi, count = float(lo_s), float(hi_s), int(cnt_s)
        except ValueError:
            raise DomainError("--grid must be lo:hi:count")
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0 or hi <= lo or count < 2:
            raise DomainError("--grid must satisfy 0 <= lo < hi and count >= 2")
    else:
        lo = 0.0
        hi = float(core.quantile(params, 0.995)) if reduced else \
            float(nmw._nmw_quantile(params, 0.995))
        count = 200

    x_full = np.linspace(lo, hi, count)
    x_pos = x_full if lo > 0.0 else np.linspace(lo, hi, count + 1)[1:]

    if reduced:
        pdf_vals = core.pdf(params, x_pos)
        surv_vals = core.survival(params, x_full)
        haz_vals = core.hazard(params, x_pos)
    else:
        pdf_vals = nmw.nmw_pdf(params, x_pos)
        surv_vals = nmw.nmw_survival(params, x_full)
        haz_vals = nmw.nmw_hazard(params, x_pos)

    _write_table(args.out + "_pdf.csv", "density curve for %s" % label,
                 ["x", "pdf"], [x_pos, pdf_vals])

    if ds is not None:
        km = model_selection.kaplan_meier(ds)
        km_vals = km.survival_at(x_full)
        _write_table(args.out + "_survival.csv",
                     "survival curve for %s with product-limit overlay" % label,
                     ["x", "survival", "km_survival"], [x_full, surv_vals, km_vals])
    else:
        _write_table(args.out + "_survival.csv", "survival curve for %s" % label,
                     ["x", "survival"], [x_full, surv_vals])

    haz_x = x_pos
    haz_y = haz_vals
    marker = np.zeros(haz_x.size, dtype=int)
    comment = "hazard curve for %s" % label
    if reduced:
        shape = core.hazard_shape(params)
        if shape.kind is HazardKind.BATHTUB and lo <= shape.minimum_location <= hi:
            x0 = shape.minimum_location
            pos = int(np.searchsorted(haz_x, x0))
            haz_x = np.insert(haz_x, pos, x0)
            haz_y = np.insert(haz_y, pos, shape.minimum_value)
            marker = np.insert(marker, pos, 1)
            comment += "; is_minimum marks the bathtub minimum at x0=%s" % repr(x0)
        else:
            comment += "; hazard is monotone decreasing" if shape.kind is HazardKind.DECREASING \
                else "; bathtub minimum lies outside the grid"
    _write_table(args.out + "_hazard.csv", comment,
                 ["x", "hazard", "is_minimum"], [haz_x, haz_y, marker])

    if ds is not None and np.all(ds.is_failure):
        emp = model_selection.empirical_ttt(ds)
        n = ds.n
        us = np.arange(1, n) / n
        fit_curve = model_selection.fitted_ttt(params, us)
        _write_table(args.out + "_ttt.csv",
                     "scaled total-time-on-test transform for %s with empirical overlay" % label,
                     ["u", "fitted", "empirical"],
                     [emp.u, fit_curve.value, emp.value])
    else:
        if ds is not None:
            print("input contains censored times; the empirical transform is "
                  "omitted and only the fitted transform is written", file=sys.stderr)
        fit_curve = model_selection.fitted_ttt(params)
        _write_table(args.out + "_ttt.csv",
                     "scaled total-time-on-test transform for %s" % label,
                     ["u", "fitted"], [fit_curve.u, fit_curve.value])

    print("wrote %s_pdf.csv, %s_survival.csv, %s_hazard.csv, %s_ttt.csv"
          % (args.out, args.out, args.out, args.out))
    return EXIT_OK


def _parse_axis(text):
    try:
        lo_s, hi_s, n_s = text.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError:
        raise DomainError("grid axis must be lo:hi:count, got %r" % (text,))
    if n < 1 or not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise DomainError("grid axis must satisfy lo <= hi and count >= 1")
    return np.linspace(lo, hi, n)


def cmd_sweep(args):
    axes = args.grid.split(",")
    if len(axes) != 3:
        raise DomainError("--grid must give three axes: alpha,beta,lambda")
    alphas, betas, lams = (_parse_axis(a) for a in axes)
    records = moments.skew_kurt_grid(alphas, betas, lams)
    _write_table(args.out,
                 "skewness and kurtosis sweep; ok=0 rows failed and carry nan",
                 ["alpha", "beta", "lambda", "skewness", "kurtosis", "ok"],
                 [np.array([r.alpha for r in records]),
                  np.array([r.beta for r in records]),
                  np.array([r.lam for r in records]),
                  np.array([r.skewness for r in records]),
                  np.array([r.kurtosis for r in records]),
                  np.array([1 if r.ok else 0 for r in records])])
    bad = sum(1 for r in records if not r.ok)
    print("wrote %s: %d points, %d failed" % (args.out, len(records), bad))
    return EXIT_OK


def cmd_sample(args):
    params = _parse_params(args.params)
    if not isinstance(params, RnmwParams):
        raise DomainError("sampling supports the three-parameter family only")
    if args.n < 0:
        raise DomainError("--n must be >= 0")
    values = core.sample(params, args.n, seed=args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("# %d draws from %s with seed %d\n"
                 % (args.n, _describe(params), args.seed))
        fh.write("time\n")
        for v in values:
            fh.write(repr(float(v)) + "\n")
    print("wrote %s (%d draws)" % (args.out, args.n))
    return EXIT_OK


def _build_parser():
    p = argparse.ArgumentParser(
        prog="rnmw",
        description="Bathtub-hazard lifetime models: fitting, curves, "
                    "moment sweeps and sampling.")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fit", help="maximum likelihood fit with report files")
    f.add_argument("--input", required=True, help="lifetime file (time[,status] per line)")
    f.add_argument("--out", required=True, help="report prefix; writes .txt and .json")
    f.add_argument("--model", choices=["rnmw", "nmw", "both"], default="both")
    f.add_argument("--level", type=float, default=0.95, help="interval level")
    f.add_argument("--starts", type=int, default=20)
    f.add_argument("--tol", type=float, default=1e-6)
    f.add_argument("--seed", type=int, default=None)
    f.set_defaults(func=cmd_fit)

    c = sub.add_parser("curves", help="plot-data files for a parameter set or fit report")
    c.add_argument("--params", help="alpha,beta,lambda or alpha,beta,gamma,theta,lambda")
    c.add_argument("--fit-report", dest="fit_report", help="JSON report from the fit command")
    c.add_argument("--model", choices=["rnmw", "nmw"], default=None,
                   help="which fit to take from the report")
    c.add_argument("--input", help="optional data file for overlays")
    c.add_argument("--out", required=True, help="output prefix")
    c.add_argument("--grid", help="x grid as lo:hi:count")
    c.set_defaults(func=cmd_curves)

    s = sub.add_parser("sweep", help="skewness/kurtosis over a parameter grid")
    s.add_argument("--out", required=True)
    s.add_argument("--grid", default="0.1:2.0:20,0.1:2.0:20,0.1:2.0:20",
                   help="three axes, each lo:hi:count")
    s.set_defaults(func=cmd_sweep)

    sa = sub.add_parser("sample", help="draw lifetimes by inversion")
    sa.add_argument("--params", required=True, help="alpha,beta,lambda")
    sa.add_argument("--n", type=int, required=True)
    sa.add_argument("--seed", type=int, default=0)
    sa.add_argument("--out", required=True)
    sa.set_defaults(func=cmd_sample)
    return p


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except NumericError as exc:
        print("numeric failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERIC
    except Exception as exc:  # pragma: no cover - safety net
        print("internal error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
