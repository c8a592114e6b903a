"""Batch command-line front end.

Subcommands: entropy, omega, remez-bound, remez-exact, smooth-bound,
whitney, verify, sweep.  Reports are deterministic: identical invocations
produce byte-identical output (floats at 17 significant digits, fixed key
and row order).  Exit codes: 0 success, 1 invalid input, 2 internal
numerical failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import verification
from ._jsonio import dumps, format_float
from .entropy import (
    covering_profile_1d,
    curve_omega_lower,
    omega_closed_form,
    omega_d,
    omega_from_profile,
    omega_lower_from_measure,
)
from .errors import InputError, NumericalError, RemezkitError
from .oracle import remez_constant_exact
from .remez_bounds import q_of_set, remez_constant_upper
from .set_models import (
    Curve,
    MeasurableBody,
    SetDescriptor,
    descriptor_dimension,
    descriptor_to_dict,
    materialize,
    parse_descriptor,
    serialize_descriptor,
)
from .smooth_bounds import (
    SmoothFnSpec,
    entropy_remez_provider,
    general_bound,
    taylor_remez,
)

SWEEP_SCHEMA = "remezkit-sweep/1"

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_NUMERICAL = 2
EXIT_VERIFICATION = 3


@dataclass
class RunConfig:
    command: str
    set_descriptor: Optional[SetDescriptor] = None
    d: Optional[int] = None
    d_range: Optional[tuple[int, int]] = None
    k: Optional[int] = None
    L: Optional[float] = None
    M_values: dict[int, float] = field(default_factory=dict)
    M_uniform: Optional[float] = None
    q: Optional[float] = None
    sigma: Optional[float] = None
    eps0: Optional[float] = None
    resolution: int = 2001
    out: Optional[str] = None
    fmt: str = "json"
    plot: bool = False
    criteria: Optional[list[int]] = None
    threads: int = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse must not call sys.exit(2) itself
        raise InputError(message)


def build_parser() -> _Parser:
    p = _Parser(prog="remezkit", description=__doc__, add_help=True)
    sub = p.add_subparsers(dest="command")

    def common(sp, with_d=True):
        sp.add_argument("--set", dest="set_spec", help="descriptor JSON or a path to one")
        if with_d:
            sp.add_argument("--d", type=int, help="polynomial degree")
        sp.add_argument("--sigma", type=float, help="curve length (with --eps0, replaces --set)")
        sp.add_argument("--eps0", type=float, help="curve injectivity radius")
        sp.add_argument("--out", help="write the report to this path instead of stdout")
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")

    sp = sub.add_parser("entropy", help="full covering profile of a 1D set")
    common(sp, with_d=False)
    sp.add_argument("--plot", action="store_true", help="render the profile next to --out")

    sp = sub.add_parser("omega", help="omega_d estimate for a set")
    common(sp)

    sp = sub.add_parser("remez-bound", help="entropy upper bound on R_d(Z)")
    common(sp)

    sp = sub.add_parser("remez-exact", help="LP oracle lower bound on R_d(Z)")
    common(sp)
    sp.add_argument("--resolution", type=int, default=2001)

    sp = sub.add_parser("smooth-bound", help="bounds for smooth functions")
    common(sp, with_d=False)
    sp.add_argument("--d", type=int, help="fixed degree for the curve specialization")
    sp.add_argument("--k", type=int, help="smoothness order")
    sp.add_argument("--L", type=float, help="max |f| over the sampling set")
    sp.add_argument("--M", action="append", default=[],
                    help="either one uniform bound M, or repeatable l=value entries M_l")
    sp.add_argument("--q", type=float, help="base 4n/omega (skips the set route)")

    sp = sub.add_parser("whitney", help="derivative lower bound for extensions from Z")
    common(sp)
    sp.add_argument("--resolution", type=int, default=0,
                    help="when > 0, also report the LP reference value at this resolution")

    sp = sub.add_parser("verify", help="run the acceptance criteria")
    sp.add_argument("--criteria", help="comma-separated ids, default all")
    sp.add_argument("--out", help="write the report to this path instead of stdout")
    sp.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    sp = sub.add_parser("sweep", help="degree sweep emitting long-format CSV")
    common(sp, with_d=False)
    sp.add_argument("--d-range", dest="d_range", required=False, help="A:B inclusive degree range")
    sp.add_argument("--plot", action="store_true", help="render figures next to --out")

    p.add_argument("--config", help="single JSON config carrying all inputs")
    return p


def _parse_d_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError as exc:
        raise InputError(f"d-range: expected A:B, got {text!r}") from exc
    if lo > hi:
        raise InputError(f"d-range: empty range {text!r}")
    return lo, hi


def _parse_m_entries(entries) -> tuple[dict[int, float], Optional[float]]:
    per_order: dict[int, float] = {}
    uniform: Optional[float] = None
    for item in entries:
        text = str(item)
        if "=" in text:
            l_text, v_text = text.split("=", 1)
            try:
                order, value = int(l_text), float(v_text)
            except ValueError as exc:
                raise InputError(f"M: expected l=value, got {text!r}") from exc
            if value < 0:
                raise InputError(f"M: bounds must be nonnegative, got {text!r}")
            per_order[order] = value
        else:
            try:
                uniform = float(text)
            except ValueError as exc:
                raise InputError(f"M: expected a number or l=value, got {text!r}") from exc
    return per_order, uniform


def _threads_from_env() -> int:
    raw = os.environ.get("REMEZKIT_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"REMEZKIT_THREADS: expected a positive integer, got {raw!r}") from exc
    if value < 1:
        raise InputError(f"REMEZKIT_THREADS: expected a positive integer, got {raw!r}")
    return value


def _load_set(spec_text: Optional[str]) -> SetDescriptor:
    if spec_text is None:
        raise InputError("set: this command requires --set")
    text = spec_text.strip()
    if isinstance(spec_text, dict):
        return parse_descriptor(spec_text)
    if not text.startswith("{"):
        try:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"set: cannot read descriptor file {spec_text!r} ({exc})") from exc
    return parse_descriptor(text)


def config_from_namespace(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, threads=_threads_from_env())
    if getattr(ns, "set_spec", None) is not None:
        cfg.set_descriptor = _load_set(ns.set_spec)
    elif getattr(ns, "sigma", None) is not None or getattr(ns, "eps0", None) is not None:
        if getattr(ns, "sigma", None) is None or getattr(ns, "eps0", None) is None:
            raise InputError("sigma/eps0: both are required to describe a curve")
        cfg.set_descriptor = Curve(ns.sigma, ns.eps0)
        cfg.sigma, cfg.eps0 = ns.sigma, ns.eps0
    if getattr(ns, "d", None) is not None:
        cfg.d = ns.d
    if getattr(ns, "d_range", None):
        cfg.d_range = _parse_d_range(ns.d_range)
    for name in ("k", "L", "q", "out"):
        if getattr(ns, name, None) is not None:
            setattr(cfg, name, getattr(ns, name))
    if getattr(ns, "fmt", None):
        cfg.fmt = ns.fmt
    if getattr(ns, "resolution", None):
        cfg.resolution = ns.resolution
    if getattr(ns, "plot", False):
        cfg.plot = True
    if getattr(ns, "M", None):
        cfg.M_values, cfg.M_uniform = _parse_m_entries(ns.M)
    if getattr(ns, "criteria", None):
        try:
            cfg.criteria = [int(t) for t in ns.criteria.split(",") if t.strip()]
        except ValueError as exc:
            raise InputError(f"criteria: expected comma-separated ids, got {ns.criteria!r}") from exc
    return cfg


def config_from_json(text: str) -> RunConfig:
    raw = text.strip()
    if not raw.startswith("{"):
        try:
            with open(raw, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError(f"config: cannot read {text!r} ({exc})") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"config: not valid JSON ({exc})") from exc
    if not isinstance(obj, dict) or "command" not in obj:
        raise InputError("config: expected an object with a 'command' field")
    cfg = RunConfig(command=str(obj["command"]), threads=_threads_from_env())
    if "set" in obj:
        cfg.set_descriptor = parse_descriptor(obj["set"]) if isinstance(obj["set"], dict) else _load_set(obj["set"])
    if "d" in obj:
        cfg.d = int(obj["d"])
    if "d_range" in obj:
        cfg.d_range = _parse_d_range(str(obj["d_range"]))
    if "k" in obj:
        cfg.k = int(obj["k"])
    if "L" in obj:
        cfg.L = float(obj["L"])
    if "q" in obj:
        cfg.q = float(obj["q"])
    if "M" in obj:
        m = obj["M"]
        if isinstance(m, dict):
            cfg.M_values = {int(l): float(v) for l, v in m.items()}
        elif isinstance(m, list):
            cfg.M_values = {i: float(v) for i, v in enumerate(m)}
        else:
            cfg.M_uniform = float(m)
    for name, caster in (("sigma", float), ("eps0", float), ("resolution", int), ("out", str)):
        if name in obj:
            setattr(cfg, name, caster(obj[name]))
    if cfg.set_descriptor is None and (cfg.sigma is not None or cfg.eps0 is not None):
        if cfg.sigma is None or cfg.eps0 is None:
            raise InputError("sigma/eps0: both are required to describe a curve")
        cfg.set_descriptor = Curve(cfg.sigma, cfg.eps0)
    if "format" in obj:
        cfg.fmt = str(obj["format"])
    if "plot" in obj:
        cfg.plot = bool(obj["plot"])
    if "criteria" in obj:
        cfg.criteria = [int(c) for c in obj["criteria"]]
    return cfg


# --- report builders ---------------------------------------------------------


def _require(cfg: RunConfig, name: str):
    value = getattr(cfg, name if name != "set" else "set_descriptor")
    if value is None:
        raise InputError(f"{name}: required for the {cfg.command} command")
    return value


def _omega_estimate(cfg: RunConfig, d: int):
    """(estimate, provenance) for any descriptor variant."""
    z = _require(cfg, "set")
    if isinstance(z, Curve):
        return curve_omega_lower(z.sigma, z.eps0, d), "lower-bound"
    if isinstance(z, MeasurableBody):
        return omega_lower_from_measure(z), "lower-bound"
    est = omega_d(z, d)
    return est, "exact" if est.exact else "entropy-bound"


def _upper_provider(z: SetDescriptor):
    """Degree -> entropy RemezConstant for finite sets in any supported n."""
    from .remez_bounds import RemezConstant

    n = descriptor_dimension(z)
    if n == 1:
        return entropy_remez_provider(covering_profile_1d(materialize(z)), 1)

    def provider(d: int):
        if d == 0:
            return RemezConstant(1.0, "closed-form", 0, n)
        return remez_constant_upper(n, d, omega_d(z, d).lo)

    return provider


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _cmd_entropy(cfg: RunConfig) -> tuple[str, Optional[dict]]:
    z = _require(cfg, "set")
    profile = covering_profile_1d(materialize(z))
    report = {
        "command": "entropy",
        "set": descriptor_to_dict(z),
        "n": 1,
        "profile": profile.to_dict(),
        "provenance": "exact",
    }
    if cfg.fmt == "csv":
        rows = [["breakpoint", float(e), int(c)] for e, c in profile.breakpoints]
        rows.append(["tail", "", profile.tail_count])
        return _csv_text(["kind", "eps", "count"], rows), {"profile": profile}
    return dumps(report), {"profile": profile}


def _cmd_omega(cfg: RunConfig) -> tuple[str, None]:
    d = _require(cfg, "d")
    est, provenance = _omega_estimate(cfg, d)
    z = cfg.set_descriptor
    report = {
        "command": "omega",
        "set": descriptor_to_dict(z),
        "n": descriptor_dimension(z),
        "d": d,
        "estimate": est.to_dict(),
        "provenance": provenance,
    }
    try:
        value, kind = omega_closed_form(z, d)
        report["closed_form"] = {"value": value, "provenance": kind}
    except RemezkitError:
        pass
    if cfg.fmt == "csv":
        row = [serialize_descriptor(z), descriptor_dimension(z), d, est.lo,
               "inf" if math.isinf(est.hi) else est.hi, est.witness_eps,
               est.exact, est.degenerate, provenance]
        return _csv_text(
            ["set", "n", "d", "lo", "hi", "witness_eps", "exact", "degenerate", "provenance"],
            [row],
        ), None
    return dumps(report), None


def _cmd_remez_bound(cfg: RunConfig) -> tuple[str, None]:
    d = _require(cfg, "d")
    z = _require(cfg, "set")
    n = descriptor_dimension(z)
    est, est_prov = _omega_estimate(cfg, d)
    constant = remez_constant_upper(n, d, est.lo)
    report = {
        "command": "remez-bound",
        "set": descriptor_to_dict(z),
        "n": n,
        "d": d,
        "omega": est.to_dict(),
        "omega_provenance": est_prov,
        "remez": constant.to_dict(),
    }
    if est.lo > 0:
        q = q_of_set(n, est.lo)
        report["q"] = q
        report["q_below_4n"] = q < 4.0 * n
    if cfg.fmt == "csv":
        row = [serialize_descriptor(z), n, d, est.lo,
               "inf" if constant.is_infinite else constant.value,
               constant.provenance]
        return _csv_text(["set", "n", "d", "omega_lo", "value", "provenance"], [row]), None
    return dumps(report), None


def _cmd_remez_exact(cfg: RunConfig) -> tuple[str, None]:
    d = _require(cfg, "d")
    z = _require(cfg, "set")
    constant = remez_constant_exact(materialize(z), d, cfg.resolution)
    report = {
        "command": "remez-exact",
        "set": descriptor_to_dict(z),
        "n": descriptor_dimension(z),
        "d": d,
        "resolution": cfg.resolution,
        "remez": constant.to_dict(),
    }
    if cfg.fmt == "csv":
        row = [serialize_descriptor(z), descriptor_dimension(z), d, cfg.resolution,
               "inf" if constant.is_infinite else constant.value, constant.provenance]
        return _csv_text(["set", "n", "d", "resolution", "value", "provenance"], [row]), None
    return dumps(report), None


def _cmd_smooth_bound(cfg: RunConfig) -> tuple[str, None]:
    big_l = _require(cfg, "L")
    if cfg.d is not None and isinstance(cfg.set_descriptor, Curve):
        # Fixed-degree specialization along a plane curve.
        if cfg.M_uniform is None:
            raise InputError("M: the curve route needs the single bound M_{s+1}")
        z = cfg.set_descriptor
        from .smooth_bounds import curve_smooth_bound

        report_obj = curve_smooth_bound(z.sigma, z.eps0, cfg.d, big_l, cfg.M_uniform)
        report = {
            "command": "smooth-bound",
            "mode": "curve",
            "set": descriptor_to_dict(z),
            "d": cfg.d,
            "report": report_obj.to_dict(),
        }
        if cfg.fmt == "csv":
            return _csv_text(["rule", "d", "R_d", "E_d", "L", "bound"], [report_obj.csv_row()]), None
        return dumps(report), None
    k = _require(cfg, "k")
    if cfg.M_values:
        # Taylor route: per-order bounds M_0..M_k over a concrete set.
        z = _require(cfg, "set")
        missing = [l for l in range(k + 1) if l not in cfg.M_values]
        if missing:
            raise InputError(f"M: missing derivative bounds for orders {missing}")
        spec = SmoothFnSpec(k, tuple(cfg.M_values[l] for l in range(k + 1)))
        report_obj = taylor_remez(spec, big_l, _upper_provider(z))
        report = {
            "command": "smooth-bound",
            "mode": "taylor",
            "set": descriptor_to_dict(z),
            "k": k,
            "report": report_obj.to_dict(),
        }
    else:
        if cfg.M_uniform is None:
            raise InputError("M: provide a uniform bound or repeatable l=value entries")
        if cfg.q is not None:
            q = cfg.q
            q_prov = "given"
        else:
            z = _require(cfg, "set")
            n = descriptor_dimension(z)
            est, _ = _omega_estimate(cfg, max(k - 1, 1))
            if not (est.lo > 0):
                raise InputError("set: omega_{k-1}(Z) is degenerate, no finite q exists")
            q = q_of_set(n, est.lo)
            q_prov = "entropy-bound"
        report_obj = general_bound(q, big_l, cfg.M_uniform, k)
        report = {
            "command": "smooth-bound",
            "mode": "uniform",
            "q": float(q),
            "q_provenance": q_prov,
            "L": float(big_l),
            "M": float(cfg.M_uniform),
            "k": k,
            "d0": report_obj.chosen_degree,
            "bound": "inf" if report_obj.is_infinite else float(report_obj.bound),
            "rule": report_obj.rule,
        }
    if cfg.fmt == "csv":
        return _csv_text(["rule", "d", "R_d", "E_d", "L", "bound"], [report_obj.csv_row()]), None
    return dumps(report), None


def _cmd_whitney(cfg: RunConfig) -> tuple[str, None]:
    d = _require(cfg, "d")
    z = _require(cfg, "set")
    n = descriptor_dimension(z)
    upper = _upper_provider(z)(d)
    from .smooth_bounds import whitney_lower

    certified = whitney_lower(upper, d)
    report = {
        "command": "whitney",
        "set": descriptor_to_dict(z),
        "n": n,
        "d": d,
        "r_upper": upper.to_dict(),
        "lower_bound": float(certified),
        "provenance": "entropy-bound",
    }
    if cfg.resolution:
        reference = remez_constant_exact(materialize(z), d, cfg.resolution)
        report["r_lp"] = reference.to_dict()
        report["lp_reference"] = (
            0.0 if reference.is_infinite else math.factorial(d + 1) / (reference.value + 1.0)
        )
    if cfg.fmt == "csv":
        row = [serialize_descriptor(z), d,
               "inf" if upper.is_infinite else upper.value, upper.provenance, certified]
        return _csv_text(["set", "d", "r_value", "r_provenance", "whitney_lower"], [row]), None
    return dumps(report), None


def _cmd_sweep(cfg: RunConfig) -> tuple[str, Optional[dict]]:
    z = _require(cfg, "set")
    if cfg.d_range is None:
        raise InputError("d-range: required for the sweep command")
    lo_d, hi_d = cfg.d_range
    if lo_d < 1:
        raise InputError(f"d-range: degrees must be >= 1, got {lo_d}")
    n = descriptor_dimension(z)
    set_text = serialize_descriptor(z)

    profile = None
    if n == 1 and not isinstance(z, (Curve, MeasurableBody)):
        profile = covering_profile_1d(materialize(z))

    rows: list[list] = []
    plot_rows: list[dict] = []
    for d in range(lo_d, hi_d + 1):
        if profile is not None:
            est = omega_from_profile(profile, d)
            est_prov = "exact"
        else:
            est, est_prov = _omega_estimate(cfg, d)
        constant = remez_constant_upper(n, d, est.lo)
        rows.append([set_text, n, d, "omega_lo", est.lo, est_prov])
        rows.append([set_text, n, d, "omega_hi",
                     "inf" if math.isinf(est.hi) else est.hi, est_prov])
        rows.append([set_text, n, d, "witness_eps", est.witness_eps, est_prov])
        rows.append([set_text, n, d, "remez_upper",
                     "inf" if constant.is_infinite else constant.value, constant.provenance])
        if est.lo > 0:
            rows.append([set_text, n, d, "q", q_of_set(n, est.lo), constant.provenance])
        try:
            cf_value, cf_kind = omega_closed_form(z, d)
            rows.append([set_text, n, d, "omega_closed_form", cf_value, cf_kind])
        except RemezkitError:
            pass
        plot_rows.append({
            "d": d,
            "omega_lo": est.lo,
            "omega_hi": est.hi,
            "remez_upper": None if constant.is_infinite else constant.value,
        })
    body = _csv_text(["set", "n", "d", "quantity", "value", "provenance"], rows)
    return f"# schema={SWEEP_SCHEMA}\n" + body, {"plot_rows": plot_rows}


def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    results = verification.run_all(cfg.criteria)
    failed = [r for r in results if not r.passed]
    if cfg.fmt == "json":
        text = dumps([r.to_dict() for r in results])
    else:
        lines = [r.line() for r in results]
        summary = (
            f"{len(results) - len(failed)}/{len(results)} criteria passed"
            if not failed
            else f"FAILED criteria: {', '.join(str(r.cid) for r in failed)}"
        )
        text = "\n".join(lines + [summary])
    return text, EXIT_VERIFICATION if failed else EXIT_OK


def run(cfg: RunConfig) -> int:
    """Execute one command and write its report; returns the exit code."""
    exit_code = EXIT_OK
    extra = None
    if cfg.command == "entropy":
        text, extra = _cmd_entropy(cfg)
    elif cfg.command == "omega":
        text, _ = _cmd_omega(cfg)
    elif cfg.command == "remez-bound":
        text, _ = _cmd_remez_bound(cfg)
    elif cfg.command == "remez-exact":
        text, _ = _cmd_remez_exact(cfg)
    elif cfg.command == "smooth-bound":
        text, _ = _cmd_smooth_bound(cfg)
    elif cfg.command == "whitney":
        text, _ = _cmd_whitney(cfg)
    elif cfg.command == "sweep":
        text, extra = _cmd_sweep(cfg)
    elif cfg.command == "verify":
        text, exit_code = _cmd_verify(cfg)
    else:
        raise InputError(f"command: unknown command {cfg.command!r}")

    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if cfg.plot:
        if not cfg.out:
            raise InputError("plot: requires --out to derive the figure path")
        from . import plots

        stem, _ = os.path.splitext(cfg.out)
        if cfg.command == "sweep" and extra:
            plots.save_sweep_figure(extra["plot_rows"], stem + ".png",
                                    title=serialize_descriptor(cfg.set_descriptor))
        elif cfg.command == "entropy" and extra:
            plots.save_profile_figure(extra["profile"], stem + ".png",
                                      title=serialize_descriptor(cfg.set_descriptor))
    return exit_code


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv and argv[0] == "--config":
            if len(argv) != 2:
                raise InputError("config: expected exactly one JSON object or path")
            cfg = config_from_json(argv[1])
        else:
            ns = parser.parse_args(argv)
            if ns.config is not None:
                cfg = config_from_json(ns.config)
            elif ns.command is None:
                parser.print_help()
                return EXIT_OK
            else:
                cfg = config_from_namespace(ns)
        return run(cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except RemezkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
