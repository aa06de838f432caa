"""Command-line front end.

Usage::

    gharmonics eval      --config job.json [--out values.csv --format csv]
    gharmonics synth     --config job.json --out samples.csv --format csv
    gharmonics decompose --config job.json      # io.input = samples.csv
    gharmonics verify    --config job.json      # exit 2 if a residual exceeds its threshold
    gharmonics limit     --config job.json
    gharmonics algebra bracket --d1 0,0,0,1 --d2 0,1,0,0

The job file is JSON with ``"schema": "gharmonics/1"``.  Complex values are
written as ``[re, im]`` pairs; plain numbers and strings like ``"1+2j"`` are
accepted on input.  Exit status: 0 success, 1 configuration error, 2 a
verification threshold was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import algebra, series, solutions, verification
from .config import EvalConfig, Params
from .errors import ConfigError, GHarmonicsError

SCHEMA = "gharmonics/1"
COMMANDS = ("eval", "synth", "decompose", "verify", "limit", "algebra")
SAMPLE_HEADER = ["re_z", "im_z", "re_u", "im_u"]

log = logging.getLogger("gharmonics")


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


def parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"complex pair must have two entries, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    try:
        return complex(value.replace(" ", "") if isinstance(value, str) else value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"not a complex number: {value!r}") from exc


def dump_complex(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def parse_element(value) -> algebra.OperatorElement:
    if isinstance(value, str):
        value = value.split(",")
    if len(value) != 4:
        raise ConfigError(f"operator element needs four coordinates, got {value!r}")
    return algebra.OperatorElement(*(parse_complex(v) for v in value))


@dataclass
class JobConfig:
    command: str
    params: Params = field(default_factory=Params)
    eval: EvalConfig = field(default_factory=EvalConfig)
    grid: verification.GridSpec | None = None
    modes: list | None = None
    input: str | None = None
    output: str | None = None
    format: str = "json"
    options: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict, command: str | None = None) -> "JobConfig":
        if not isinstance(data, dict):
            raise ConfigError("job config must be a JSON object")
        schema = data.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise ConfigError(f"unsupported schema {schema!r}")
        command = command or data.get("command")
        if command not in COMMANDS:
            raise ConfigError(f"command must be one of {COMMANDS}, got {command!r}")
        try:
            p = data.get("params", {})
            params = Params(*(parse_complex(p.get(k, 0)) for k in ("s", "t", "r")))
            ev = EvalConfig(**data.get("eval", {}))
            grid = verification.GridSpec(**data["grid"]) if data.get("grid") else None
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        modes = None
        if data.get("modes") is not None:
            try:
                modes = [solutions.ModeCoefficient(int(e["m"]), parse_complex(e["k"])) for e in data["modes"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"malformed modes entry: {exc}") from exc
        iocfg = data.get("io", {})
        fmt_ = iocfg.get("format", "json")
        if fmt_ not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {fmt_!r}")
        known = {"schema", "command", "params", "eval", "grid", "modes", "io"}
        options = {k: v for k, v in data.items() if k not in known}
        job = cls(command, params, ev, grid, modes, iocfg.get("input"), iocfg.get("output"), fmt_, options)
        job.validate()
        return job

    def validate(self) -> None:
        if self.command == "synth" and not self.modes:
            raise ConfigError("synth requires modes")
        if self.command == "verify":
            if self.grid is None:
                raise ConfigError("verify requires grid")
            if not self.modes:
                raise ConfigError("verify requires modes")
        if self.command == "decompose" and not self.input:
            raise ConfigError("decompose requires io.input")

    def solution(self) -> solutions.SolutionSeries:
        try:
            return solutions.SolutionSeries(self.params, tuple(self.modes or ()), self.eval)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass
class Outcome:
    """Result of a job: a JSON payload, CSV rows, and whether thresholds held."""

    payload: dict
    header: list
    rows: list
    ok: bool = True
    extra_files: dict = field(default_factory=dict)


def _points(opts: dict) -> np.ndarray:
    if "points" in opts:
        return np.array([parse_complex(v) for v in opts["points"]], dtype=complex)
    raise ConfigError("eval requires 'points'")


def _run_eval(job: JobConfig) -> Outcome:
    opts = job.options
    fn = opts.get("function", "P")
    zz = _points(opts)
    cfg = job.eval
    if fn == "P":
        vals = series.eval_P(job.params, int(opts.get("m", 0)), zz, cfg)
    elif fn == "G":
        a, b, c, d = (parse_complex(opts[k]) for k in "abcd")
        vals = series.eval_G(a, b, c, d, zz, cfg)
    elif fn == "kummer":
        vals = series.eval_kummer(parse_complex(opts["a"]), parse_complex(opts["b"]), zz, cfg)
    elif fn == "theta":
        vals = series.eval_theta(int(opts.get("m", 0)), zz, cfg)
    elif fn == "bessel_I":
        vals = series.eval_bessel_I(int(opts.get("n", 0)), zz, cfg)
    else:
        raise ConfigError(f"unknown function {fn!r}")
    vals = np.broadcast_to(vals, zz.shape)
    rows = [[z.real, z.imag, v.real, v.imag] for z, v in zip(zz, vals)]
    payload = {"function": fn, "values": [{"z": dump_complex(z), "value": dump_complex(v)} for z, v in zip(zz, vals)]}
    return Outcome(payload, ["re_z", "im_z", "re_value", "im_value"], rows)


def _manifest(sol: solutions.SolutionSeries) -> dict:
    return {
        "schema": SCHEMA,
        "params": {k: dump_complex(getattr(sol.params, k)) for k in ("s", "t", "r")},
        "modes": [{"m": mc.m, "k": dump_complex(mc.k)} for mc in sol.modes],
    }


def _run_synth(job: JobConfig) -> Outcome:
    sol = job.solution()
    sampling = job.options.get("sampling", {"kind": "circle", "rho": 0.5, "N": 256})
    kind = sampling.get("kind", "circle")
    if kind == "circle":
        N = int(sampling.get("N", 256))
        rho = float(sampling.get("rho", 0.5))
        if not solutions._is_pow2(N) or not 0 < rho < 1:
            raise ConfigError("circle sampling needs N a power of two and 0 < rho < 1")
        zz = solutions.circle_points(rho, N)
    elif kind == "grid":
        grid = job.grid or verification.GridSpec()
        zz = grid.points(0.0)
    else:
        raise ConfigError(f"unknown sampling kind {kind!r}")
    uu = solutions.eval_solution(sol, zz)
    rows = [[z.real, z.imag, u.real, u.imag] for z, u in zip(zz, uu)]
    manifest = _manifest(sol)
    payload = {"manifest": manifest, "samples": rows}
    return Outcome(payload, SAMPLE_HEADER, rows, extra_files={".modes.json": manifest})


def read_samples(path: str) -> tuple:
    """Read a ``re_z,im_z,re_u,im_u`` CSV into ``(z, u)`` arrays."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != SAMPLE_HEADER:
                raise ConfigError(f"sample file header must be {','.join(SAMPLE_HEADER)}")
            data = np.array([[float(x) for x in row] for row in reader if row], dtype=float)
    except OSError as exc:
        raise ConfigError(f"cannot read samples: {exc}") from exc
    except (ValueError, StopIteration) as exc:
        raise ConfigError(f"malformed sample file {path}") from exc
    if data.ndim != 2 or data.shape[1] != 4:
        raise ConfigError(f"malformed sample file {path}")
    return data[:, 0] + 1j * data[:, 1], data[:, 2] + 1j * data[:, 3]


def _run_decompose(job: JobConfig) -> Outcome:
    zz, uu = read_samples(job.input)
    N = zz.size
    if not solutions._is_pow2(N):
        raise ConfigError(f"sample count {N} is not a power of two")
    rho = float(np.mean(np.abs(zz)))
    expected = solutions.circle_points(rho, N)
    if np.max(np.abs(zz - expected)) > 1e-9:
        raise ConfigError("samples must be equispaced on a circle, starting at angle 0")
    m_lo, m_hi = job.options.get("m_range", [-(N // 2) + 1, N // 2 - 1])
    samples = solutions.CircleSamples(rho, uu)
    coeffs = solutions.coefficients_from_samples(samples, job.params, range(int(m_lo), int(m_hi) + 1), job.eval)
    drop = float(job.options.get("drop_below", 0.0))
    coeffs = [mc for mc in coeffs if abs(mc.k) > drop]
    rows = [[mc.m, mc.k.real, mc.k.imag] for mc in coeffs]
    sol = solutions.SolutionSeries(job.params, tuple(coeffs), job.eval)
    return Outcome({"rho": rho, "N": N, "manifest": _manifest(sol)}, ["m", "re_k", "im_k"], rows)


def _run_verify(job: JobConfig) -> Outcome:
    sol = job.solution()
    h = float(job.options.get("h", job.eval.fd_step))
    threshold = float(job.options.get("threshold", 1e-4))
    reports = []
    for mc in sol.modes:
        rep = verification.residual_M(
            job.params, lambda z, mc=mc: solutions.mode_value(job.params, mc.m, mc.k, z, job.eval), job.grid, h
        )
        reports.append((f"mode {mc.m}", rep))
    reports.append(("total", verification.residual_M(job.params, lambda z: solutions.eval_solution(sol, z), job.grid, h)))
    ok = all(rep.max_abs <= threshold for _, rep in reports)
    payload = {
        "threshold": threshold,
        "passed": ok,
        "reports": [dict(name=name, **rep.to_dict()) for name, rep in reports],
    }
    rows = [[name, rep.max_abs, rep.argmax_point.real, rep.argmax_point.imag, rep.points_checked, rep.fd_step]
            for name, rep in reports]
    header = ["name", "max_abs", "argmax_re", "argmax_im", "points_checked", "fd_step"]
    return Outcome(payload, header, rows, ok=ok)


def _run_limit(job: JobConfig) -> Outcome:
    ms = [int(m) for m in job.options.get("m_values", [2, 20, 200])]
    radius = float(job.options.get("radius", 1.0))
    n_grid = int(job.options.get("n_grid", 41))
    gaps = [series.asymptotic_gap(job.params, m, radius, n_grid, job.eval) for m in ms]
    rows = [[m, g] for m, g in zip(ms, gaps)]
    return Outcome({"radius": radius, "n_grid": n_grid, "gaps": [{"m": m, "gap": g} for m, g in zip(ms, gaps)]},
                   ["m", "gap"], rows)


def _run_algebra(job: JobConfig) -> Outcome:
    opts = job.options
    op = opts.get("op", "bracket")
    m = int(opts.get("m", 0))
    if op == "bracket":
        res = algebra.bracket(parse_element(opts["D1"]), parse_element(opts["D2"]))
        payload = {"op": op, "gamma": dump_complex(res.a4), "element": [dump_complex(x) for x in res.as_tuple()]}
        rows = [["gamma", *dump_complex(res.a4)]] + [[f"a{i}", *dump_complex(x)] for i, x in enumerate(res.as_tuple(), 1)]
    elif op == "lambda":
        T = algebra.lambda_map_signed(parse_element(opts["D1"]), m)
        payload = {"op": op, "m": m, "ode": {k: dump_complex(v) for k, v in zip(("q2", "q1c", "q1l", "q0"), T.as_tuple())}}
        rows = [[k, *dump_complex(v)] for k, v in zip(("q2", "q1c", "q1l", "q0"), T.as_tuple())]
    elif op == "kernel":
        kb = algebra.kernel_basis(m)
        payload = {"op": op, "m": m, "element": [dump_complex(x) for x in kb.as_tuple()]}
        rows = [[f"a{i}", *dump_complex(x)] for i, x in enumerate(kb.as_tuple(), 1)]
    elif op == "equivalent":
        wit = algebra.equivalent(parse_element(opts["D1"]), parse_element(opts["D2"]), m, float(opts.get("atol", 0.0)))
        payload = {"op": op, "m": m, "equivalent": wit.equivalent, "mu": dump_complex(wit.mu)}
        rows = [["equivalent", int(wit.equivalent), 0.0], ["mu", *dump_complex(wit.mu)]]
    elif op == "from_params":
        el = algebra.from_params(job.params)
        payload = {"op": op, "element": [dump_complex(x) for x in el.as_tuple()]}
        rows = [[f"a{i}", *dump_complex(x)] for i, x in enumerate(el.as_tuple(), 1)]
    else:
        raise ConfigError(f"unknown algebra op {op!r}")
    return Outcome(payload, ["name", "re", "im"], rows)


RUNNERS = {
    "eval": _run_eval,
    "synth": _run_synth,
    "decompose": _run_decompose,
    "verify": _run_verify,
    "limit": _run_limit,
    "algebra": _run_algebra,
}


def render_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def render_json(job: JobConfig, outcome: Outcome) -> str:
    doc = {"schema": SCHEMA, "command": job.command, "result": outcome.payload}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(job: JobConfig) -> int:
    """Execute a job, write its artifacts, and return the exit status."""
    try:
        outcome = RUNNERS[job.command](job)
    except KeyError as exc:
        raise ConfigError(f"missing option {exc}") from exc
    text = render_csv(outcome.header, outcome.rows) if job.format == "csv" else render_json(job, outcome)
    if job.output:
        Path(job.output).write_text(text)
        for suffix, doc in outcome.extra_files.items():
            Path(job.output + suffix).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return 0 if outcome.ok else 2


class _Parser(argparse.ArgumentParser):
    # exit status 2 is reserved for failed verification thresholds
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gharmonics", description="Generalised harmonic function toolkit")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("op", nargs="?", help="algebra operation: bracket, lambda, kernel, equivalent, from_params")
    p.add_argument("--config", help="JSON job file")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--tol", type=float)
    p.add_argument("--max-terms", type=int)
    p.add_argument("--fd-step", type=float)
    p.add_argument("--d1", help="operator element a1,a2,a3,a4")
    p.add_argument("--d2", help="operator element a1,a2,a3,a4")
    p.add_argument("--m", type=int)
    return p


def load_job(args: argparse.Namespace) -> JobConfig:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load config: {exc}") from exc
    data = dict(data)
    ev = dict(data.get("eval", {}))
    for key, val in (("tol", args.tol), ("max_terms", args.max_terms), ("fd_step", args.fd_step)):
        if val is not None:
            ev[key] = val
    data["eval"] = ev
    iocfg = dict(data.get("io", {}))
    if args.out:
        iocfg["output"] = args.out
    if args.format:
        iocfg["format"] = args.format
    data["io"] = iocfg
    if args.op:
        data["op"] = args.op
    if args.d1:
        data["D1"] = args.d1
    if args.d2:
        data["D2"] = args.d2
    if args.m is not None:
        data["m"] = args.m
    return JobConfig.from_dict(data, args.command)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(load_job(args))
    except ConfigError as exc:
        log.error("%s", exc)
        return 1
    except GHarmonicsError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
