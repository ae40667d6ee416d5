"""Command-line front end: classify, sweep, max-power, mpr-fit, verify.

Values are resolved with the precedence CLI flag > config file > built-in
default.  The config file is a flat ``key = value`` document; keys are the
long flag names, optionally prefixed by an organizational section like
``bath.kappa`` (only the part after the last dot routes the value).
Outputs are deterministic: CSV tables with a fixed column schema and JSON
reports, all floating point serialized with 17 significant digits.

Exit codes: 0 success, 1 validation error, 2 when every computed point
failed to converge.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .models import (
    EngineParameters,
    ModelId,
    build_config,
    reference_otto_efficiency,
)
from .cycle import (
    MachineKind,
    NonConvergenceError,
    DegenerateLedgerError,
    iterate_to_limit,
)
from .sweeps import (
    AxisSpec,
    GridSpec,
    MaxPowerRecord,
    NoEnginePointError,
    STATUS_NON_CONVERGENT,
    STATUS_NON_OPERATIONAL,
    SweepPoint,
    fit_mpr,
    max_power_over_coupling,
    max_power_over_level,
    sweep_grid,
)
from . import verify as verify_mod

WORKERS_ENV = "QOTTO_WORKERS"

SWEEP_COLUMNS = (
    "model,T_h,T_c,level,omega2,g,kappa,t_h,t_c,N,converged,"
    "Q_h,Q_c,W1,W2,kind,P,eta,eta_otto,eta_carnot,eta_ca"
)
MAX_POWER_COLUMNS = (
    "model,temp_ratio,T_h,T_c,g,argmax_level,argmax_g,P_m,eta_Pm,N_Pm,"
    "converged,boundary,eta_otto,eta_otto_single,eta_carnot,eta_ca"
)


def _fmt(x) -> str:
    """One CSV/JSON cell; floats get 17 significant digits."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _json_dumps(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  "{k}": {_json_dumps(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_json_dumps(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


class CliError(Exception):
    """Validation problem; maps to exit code 1."""


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) == 1:
        v = float(parts[0])
        return (v, v, 1.0)
    if len(parts) != 3:
        raise CliError(f"range must be start:stop:step, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or start > stop:
        raise CliError(f"bad range {text!r}: need start <= stop and step > 0")
    return (start, stop, step)


def _parse_axis(text: str) -> AxisSpec:
    parts = text.split(":")
    if len(parts) != 4:
        raise CliError(f"axis must be name:start:stop:step, got {text!r}")
    try:
        return AxisSpec(parts[0], float(parts[1]), float(parts[2]), float(parts[3]))
    except ValueError as err:
        raise CliError(str(err)) from err


def load_config_file(path: str) -> dict[str, str]:
    """Flat key = value file; '#' starts a comment, blank lines are skipped."""
    data: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as err:
        raise CliError(f"cannot read config file {path}: {err}") from err
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        key = key.strip().rsplit(".", 1)[-1]  # drop an organizational section prefix
        data[key] = value.strip()
    return data


# Shared physics overrides: flag name -> (type, default). None defaults are
# resolved downstream (e.g. th -> temp-ratio * tc).
_PARAM_OPTIONS: dict[str, tuple] = {
    "model": (str, "single"),
    "tc": (float, 5.0),
    "th": (float, None),
    "temp-ratio": (float, None),
    "wh": (float, None),
    "wc": (float, 1.0),
    "w1c": (float, 1.0),
    "g": (float, 0.0),
    "kappa": (float, 0.005),
    "cutoff": (float, 1000.0),
    "t": (float, 50.0),
    "t-hot": (float, None),
    "t-cold": (float, None),
    "max-iterations": (int, 10_000),
}


def _add_param_options(parser: argparse.ArgumentParser) -> None:
    for name, (typ, _default) in _PARAM_OPTIONS.items():
        parser.add_argument(f"--{name}", type=typ, default=None)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="flat key = value defaults file")
    parser.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    parser.add_argument("--workers", type=int, default=None)


def _resolve(args: argparse.Namespace) -> tuple[dict, dict]:
    """Apply CLI > config file > default to the shared physics options.

    Returns the resolved physics options and the raw file config (for the
    command-specific string options, fetched with :func:`_opt`).
    """
    file_cfg = load_config_file(args.config) if args.config else {}
    known = set(_PARAM_OPTIONS) | {
        "axis1", "axis2", "temp-ratios", "scan", "scan-g", "draws", "workers", "output",
    }
    for key in file_cfg:
        if key not in known:
            raise CliError(f"unknown config key {key!r}")
    out = {}
    for key, (typ, default) in _PARAM_OPTIONS.items():
        cli_value = getattr(args, key.replace("-", "_"), None)
        if cli_value is not None:
            out[key] = cli_value
            continue
        if key in file_cfg:
            try:
                out[key] = typ(file_cfg[key])
            except ValueError as err:
                raise CliError(f"config key {key}: {err}") from err
            continue
        out[key] = default
    return out, file_cfg


def _opt(args: argparse.Namespace, file_cfg: dict, name: str):
    """CLI > config file for a command-specific option; None when absent."""
    cli_value = getattr(args, name.replace("-", "_"), None)
    if cli_value is not None:
        return cli_value
    return file_cfg.get(name)


def _model_from(opts: dict) -> ModelId:
    try:
        return ModelId(opts["model"])
    except ValueError as err:
        names = ", ".join(m.value for m in ModelId)
        raise CliError(f"unknown model {opts['model']!r}; expected one of {names}") from err


def _params_from(opts: dict, model: ModelId) -> EngineParameters:
    tc = opts["tc"]
    if opts.get("temp-ratio") is not None:
        ratio = opts["temp-ratio"]
    elif opts.get("th") is not None:
        ratio = opts["th"] / tc
    else:
        ratio = 3.0
    omega_c = opts["wc"]
    omega_ratio = None
    if opts.get("wh") is not None:
        omega_ratio = opts["wh"] / omega_c
    t_h = opts["t-hot"] if opts.get("t-hot") is not None else opts["t"]
    t_c = opts["t-cold"] if opts.get("t-cold") is not None else opts["t"]
    try:
        return EngineParameters(
            model=model,
            temp_ratio=ratio,
            omega1_c=opts["w1c"],
            g=opts["g"],
            omega_ratio=omega_ratio,
            omega_c=omega_c,
            temp_cold=tc,
            kappa=opts["kappa"],
            t_h=t_h,
            t_c=t_c,
            cutoff=opts["cutoff"],
            max_iterations=opts["max-iterations"],
        )
    except ValueError as err:
        raise CliError(str(err)) from err


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as err:
        raise CliError(f"cannot write output file {path}: {err}") from err


def _workers(args_value: int | None) -> int:
    if args_value is not None:
        return max(1, args_value)
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError as err:
            raise CliError(f"{WORKERS_ENV} must be an integer, got {env!r}") from err
    return 1


def _sweep_row(point: SweepPoint) -> str:
    p = point.params
    coupled = p.model.is_coupled
    level = p.omega1_c if coupled else p.omega_h
    ledger = point.ledger
    met = point.metrics
    if point.status == STATUS_NON_OPERATIONAL:
        kind = "NonOperational"
        power = 0.0
    else:
        kind = point.kind.value if point.kind is not None else ""
        power = met.power if met is not None else None
    try:
        eta_otto = reference_otto_efficiency(p)
    except ValueError:
        eta_otto = None
    cells = [
        p.model.value,
        _fmt(p.temp_hot),
        _fmt(p.temp_cold),
        _fmt(level),
        _fmt(p.omega_c if coupled else None),
        _fmt(p.g if coupled else None),
        _fmt(p.kappa),
        _fmt(p.t_h),
        _fmt(p.t_c),
        str(point.iterations),
        _fmt(point.converged),
        _fmt(ledger.q_h if ledger else None),
        _fmt(ledger.q_c if ledger else None),
        _fmt(ledger.w_1 if ledger else None),
        _fmt(ledger.w_2 if ledger else None),
        kind,
        _fmt(power),
        _fmt(met.efficiency if met else None),
        _fmt(eta_otto),
        _fmt(met.eta_carnot if met else None),
        _fmt(met.eta_ca if met else None),
    ]
    return ",".join(cells)


def _ledger_dict(ledger) -> dict:
    return {"Q_h": ledger.q_h, "Q_c": ledger.q_c, "W1": ledger.w_1, "W2": ledger.w_2}


def _metrics_dict(met) -> dict:
    return {
        "P": met.power,
        "eta": met.efficiency,
        "HCOP": met.hcop,
        "CCOP": met.ccop,
        "eta_otto": met.eta_otto,
        "eta_carnot": met.eta_carnot,
        "eta_ca": met.eta_ca,
    }


def _params_dict(p: EngineParameters) -> dict:
    out = {
        "model": p.model.value,
        "T_h": p.temp_hot,
        "T_c": p.temp_cold,
        "omega_c": p.omega_c,
        "kappa": p.kappa,
        "t_h": p.t_h,
        "t_c": p.t_c,
        "cutoff": p.cutoff,
        "max_iterations": p.max_iterations,
    }
    if p.model.is_coupled:
        out.update({"omega1_c": p.omega1_c, "omega1_h": p.omega1_h,
                    "omega2": p.omega_c, "g": p.g})
    else:
        out.update({"omega_h": p.omega_h})
    return out


def cmd_classify(args: argparse.Namespace) -> int:
    opts, _ = _resolve(args)
    model = _model_from(opts)
    params = _params_from(opts, model)
    try:
        config = build_config(params)
    except ValueError as err:
        raise CliError(str(err)) from err
    exit_code = 0
    try:
        result = iterate_to_limit(config)
    except (NonConvergenceError, DegenerateLedgerError) as err:
        result = err.result
        exit_code = 2
    report = {
        "parameters": _params_dict(params),
        "kind": result.kind.value,
        "iterations": result.iterations,
        "converged": result.converged,
        "ledger": _ledger_dict(result.ledger),
        "metrics": _metrics_dict(result.metrics),
    }
    led = result.ledger
    print(f"kind={result.kind.value}")
    print(
        f"Q_h={_fmt(led.q_h)} Q_c={_fmt(led.q_c)} "
        f"W1={_fmt(led.w_1)} W2={_fmt(led.w_2)}"
    )
    print(f"N={result.iterations} converged={_fmt(result.converged)}")
    if args.output is not None:
        _write(args.output, _json_dumps(report) + "\n")
    return exit_code


def cmd_sweep(args: argparse.Namespace) -> int:
    opts, file_cfg = _resolve(args)
    axis1_spec = _opt(args, file_cfg, "axis1")
    axis2_spec = _opt(args, file_cfg, "axis2")
    if axis1_spec is None or axis2_spec is None:
        raise CliError("sweep needs --axis1 and --axis2 (name:start:stop:step)")
    axis1 = _parse_axis(axis1_spec)
    axis2 = _parse_axis(axis2_spec)
    model = _model_from(opts)
    fixed = _params_from(opts, model)
    points = sweep_grid(GridSpec(axis1=axis1, axis2=axis2, fixed=fixed), _workers(args.workers))
    lines = [SWEEP_COLUMNS] + [_sweep_row(pt) for pt in points]
    _write(args.output, "\n".join(lines) + "\n")
    if points and all(pt.status == STATUS_NON_CONVERGENT for pt in points):
        return 2
    return 0


def _record_row(rec: MaxPowerRecord, params: EngineParameters) -> str:
    level_params = params
    if rec.argmax_level is not None:
        field = "omega1_c" if rec.model.is_coupled else "omega_ratio"
        level_params = replace(params, **{field: rec.argmax_level})
    if rec.argmax_g is not None:
        level_params = replace(level_params, g=rec.argmax_g)
    try:
        eta_otto = reference_otto_efficiency(level_params)
    except ValueError:
        eta_otto = None
    single_ref = replace(
        level_params, model=ModelId.SINGLE, omega_ratio=None
    )
    cells = [
        rec.model.value,
        _fmt(rec.temp_ratio),
        _fmt(rec.temp_ratio * params.temp_cold),
        _fmt(params.temp_cold),
        _fmt(level_params.g if rec.model.is_coupled else None),
        _fmt(rec.argmax_level),
        _fmt(rec.argmax_g),
        _fmt(rec.p_max),
        _fmt(rec.eta_at_pm),
        str(rec.n_at_pm),
        _fmt(rec.converged_at_pm),
        _fmt(rec.boundary),
        _fmt(eta_otto),
        _fmt(reference_otto_efficiency(single_ref)),
        _fmt(1.0 - 1.0 / rec.temp_ratio),
        _fmt(1.0 - (1.0 / rec.temp_ratio) ** 0.5),
    ]
    return ",".join(cells)


def cmd_max_power(args: argparse.Namespace) -> int:
    opts, file_cfg = _resolve(args)
    model = _model_from(opts)
    base = _params_from(opts, model)
    ratios_spec = _opt(args, file_cfg, "temp-ratios")
    if ratios_spec is None:
        raise CliError("max-power needs --temp-ratios (start:stop:step or a value)")
    start, stop, step = _parse_range(ratios_spec)
    ratios = AxisSpec("temp_ratio", start, stop, step).values()
    workers = _workers(args.workers)
    rows = [MAX_POWER_COLUMNS]
    failures = 0
    for ratio in ratios:
        scan_g_spec = _opt(args, file_cfg, "scan-g")
        scan_spec = _opt(args, file_cfg, "scan")
        try:
            if scan_g_spec is not None:
                rec, _ = max_power_over_coupling(
                    model, ratio, _parse_range(scan_g_spec), base=base, workers=workers
                )
            else:
                scan = _parse_range(scan_spec) if scan_spec else _default_level_scan(model)
                rec, _ = max_power_over_level(
                    model, ratio, base.g, scan, base=base, workers=workers
                )
        except NoEnginePointError:
            failures += 1
            continue
        rows.append(_record_row(rec, replace(base, temp_ratio=ratio)))
    if failures == len(ratios):
        raise CliError("no engine point found at any requested temperature ratio")
    _write(args.output, "\n".join(rows) + "\n")
    return 0


def _default_level_scan(model: ModelId) -> tuple[float, float, float]:
    return (1.0, 6.0, 0.05) if model.is_coupled else (1.05, 3.5, 0.05)


def cmd_mpr_fit(args: argparse.Namespace) -> int:
    opts, file_cfg = _resolve(args)
    base = _params_from(opts, ModelId.SINGLE)
    ratios_spec = _opt(args, file_cfg, "temp-ratios") or "2:3.5:0.5"
    start, stop, step = _parse_range(ratios_spec)
    ratios = AxisSpec("temp_ratio", start, stop, step).values()
    scan_spec = _opt(args, file_cfg, "scan")
    scan = _parse_range(scan_spec) if scan_spec else _default_level_scan(ModelId.SINGLE)
    workers = _workers(args.workers)
    records = []
    for ratio in ratios:
        rec, _ = max_power_over_level(
            ModelId.SINGLE, ratio, 0.0, scan, base=base, workers=workers
        )
        records.append(rec)
    fit = fit_mpr(records)
    report = {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "max_residual": fit.max_residual,
        "records": [
            {
                "temp_ratio": r.temp_ratio,
                "argmax_level": r.argmax_level,
                "P_m": r.p_max,
                "eta_Pm": r.eta_at_pm,
                "N": r.n_at_pm,
            }
            for r in records
        ],
    }
    _write(args.output, _json_dumps(report) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    _, file_cfg = _resolve(args)
    draws_opt = _opt(args, file_cfg, "draws")
    draws = int(draws_opt) if draws_opt is not None else 1000
    report = verify_mod.run_all(draws=draws)
    print(f"passed={report['passed']} failed={report['failed']}")
    for suite in report["suites"]:
        for check in suite["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            print(f"[{status}] {suite['suite']}: {check['name']} ({check['detail']})")
    if args.output is not None:
        _write(args.output, _json_dumps(report) + "\n")
    return 0 if report["failed"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qotto",
        description="Quantum Otto machines: limit cycles, sweeps, maximum-power searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="run one parameter point to its limit cycle")
    _add_param_options(p)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="2-D grid sweep, CSV output")
    p.add_argument("--axis1", default=None, help="name:start:stop:step")
    p.add_argument("--axis2", default=None, help="name:start:stop:step")
    _add_param_options(p)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("max-power", help="peak power over a level or coupling scan")
    p.add_argument("--temp-ratios", default=None, help="start:stop:step or a value")
    p.add_argument("--scan", default=None, help="level scan start:stop:step")
    p.add_argument("--scan-g", default=None, help="coupling scan start:stop:step")
    _add_param_options(p)
    _add_common(p)
    p.set_defaults(func=cmd_max_power)

    p = sub.add_parser("mpr-fit", help="fit the single-qubit maximum-power line")
    p.add_argument("--temp-ratios", default=None, help="start:stop:step")
    p.add_argument("--scan", default=None, help="level scan start:stop:step")
    _add_param_options(p)
    _add_common(p)
    p.set_defaults(func=cmd_mpr_fit)

    p = sub.add_parser("verify", help="run the self-check suites")
    p.add_argument("--draws", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
