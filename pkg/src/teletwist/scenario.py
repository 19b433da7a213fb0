"""Declarative scenario runs: JSON configs in, CSV/JSON reports out.

A run file holds one scenario object or a JSON array of them.  Every
scenario draws its randomness from its own stream, derived from the master
seed and the scenario id, so reports are byte-identical for a fixed
``(config, seed, version)`` whatever the degree of parallelism.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import jsonschema
import numpy as np

from . import __version__
from .entangle import max_entangled
from .errors import ConfigError
from .groups import make_rep, schur_residual
from .povm import EntangledPovm, born_distribution, cocycle_invariance_check, completeness_residual
from .protocols import (
    cat_resource,
    entanglement_swap,
    filter_teleport,
    teleport_distorted,
    teleport_ideal,
    teleport_su2,
    verify_transfer_identities,
)
from .tensor import basis_ket, mat_to_biket, product

__all__ = [
    "COLUMNS",
    "CONFIG_SCHEMA",
    "SCENARIOS",
    "GroupSpec",
    "RunReport",
    "ScenarioConfig",
    "builtin_suite",
    "emit_report",
    "parse_config",
    "parse_run",
    "read_report",
    "render_report",
    "run_configs",
    "run_scenario",
]

SCENARIOS = ("verify-identities", "povm-check", "teleport", "sweep-lambda", "swap", "su2", "filter")

COLUMNS = (
    "scenario_id", "scenario", "family", "d", "check", "lambda", "outcome", "phi", "axis",
    "probability", "fidelity", "residual", "deficit", "passed",
)
FLOAT_COLUMNS = {"lambda", "phi", "probability", "fidelity", "residual", "deficit", "wall_time_ms"}

_complex = {
    "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    ]
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "teletwist scenario",
    "type": "object",
    "additionalProperties": False,
    "required": ["scenario"],
    "properties": {
        "scenario": {"enum": list(SCENARIOS)},
        "id": {"type": "string", "minLength": 1},
        "group": {
            "type": "object",
            "additionalProperties": False,
            "required": ["family"],
            "properties": {
                "family": {"enum": ["pauli-d2", "zn-pair", "weyl-heisenberg", "su2"]},
                "N": {"type": "integer", "minimum": 1},
                "J": {"type": "number", "exclusiveMinimum": 0},
                "d_trunc": {"type": "integer", "minimum": 1},
            },
        },
        "phases": {"type": "array", "items": {"type": "number"}},
        "lambda": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "cat": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"alpha": _complex, "beta": _complex},
        },
        "samples": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "quadrature": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "output": {"type": "string"},
        "format": {"enum": ["csv", "json"]},
    },
}

DEFAULT_SAMPLES = 1000
EXACT_TOL = 1e-12
PROTOCOL_TOL = 1e-10
SU2_QUAD_TOL = 1e-6
HETERODYNE_TOL = 1e-3
FILTER_TOL = 1e-8


@dataclass(frozen=True)
class GroupSpec:
    family: str
    N: int | None = None
    J: float | None = None
    d_trunc: int | None = None

    def rep(self):
        return make_rep(self.family, N=self.N, J=self.J, d_trunc=self.d_trunc)


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    group: GroupSpec | None = None
    phases: tuple | None = None
    lambdas: tuple | None = None
    dims: tuple | None = None
    alpha: complex = 2.0
    beta: complex = 2.0
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    tolerance: float = PROTOCOL_TOL
    quadrature: tuple | None = None
    output: str | None = None
    format: str = "csv"
    id: str | None = None

    def to_json(self) -> dict:
        out = {"scenario": self.scenario}
        if self.id is not None:
            out["id"] = self.id
        if self.group is not None:
            out["group"] = {k: v for k, v in asdict(self.group).items() if v is not None}
        for key, attr in (("phases", "phases"), ("lambda", "lambdas"), ("dims", "dims"), ("quadrature", "quadrature")):
            value = getattr(self, attr)
            if value is not None:
                out[key] = list(value)
        if self.scenario == "filter":
            out["cat"] = {k: [v.real, v.imag] for k, v in (("alpha", self.alpha), ("beta", self.beta))}
        out.update(samples=self.samples, seed=self.seed, tolerance=self.tolerance, format=self.format)
        if self.output is not None:
            out["output"] = self.output
        return out


_VALIDATOR = jsonschema.Draft202012Validator(CONFIG_SCHEMA)


def _as_complex(v) -> complex:
    return complex(v[0], v[1]) if isinstance(v, list) else complex(v)


def _default_tolerance(scenario: str, family: str | None) -> float:
    if scenario == "verify-identities":
        return EXACT_TOL
    if scenario == "povm-check":
        return {"su2": SU2_QUAD_TOL, "weyl-heisenberg": HETERODYNE_TOL}.get(family, EXACT_TOL)
    if scenario == "filter":
        return FILTER_TOL
    return PROTOCOL_TOL


def _lambda_error(where: str, k: int, lam) -> str:
    return f"{where}lambda/{k}: {lam} is invalid, lambda must satisfy 0 <= lambda < 1 (lambda = 1 is only a limit)"


def _validate(obj, where: str = "") -> ScenarioConfig:
    errors = []
    for err in sorted(_VALIDATOR.iter_errors(obj), key=lambda e: list(map(str, e.absolute_path))):
        path = "/".join(str(p) for p in err.absolute_path) or "(root)"
        errors.append(f"{where}{path}: {err.message}")
    if errors:
        # still report out-of-range lambdas alongside structural problems
        if isinstance(obj, dict) and isinstance(obj.get("lambda"), list):
            errors += [_lambda_error(where, k, x) for k, x in enumerate(obj["lambda"])
                       if isinstance(x, (int, float)) and not 0 <= x < 1]
        raise ConfigError(errors)

    scenario = obj["scenario"]
    g = obj.get("group")
    group = GroupSpec(g["family"], g.get("N"), g.get("J"), g.get("d_trunc")) if g else None
    if scenario == "sweep-lambda" and group is None:
        group = GroupSpec("weyl-heisenberg", d_trunc=30)
    if scenario == "filter" and group is None:
        group = GroupSpec("weyl-heisenberg", d_trunc=30)

    if group is not None:
        need = {"zn-pair": "N", "su2": "J", "weyl-heisenberg": "d_trunc"}.get(group.family)
        if need and getattr(group, need) is None:
            errors.append(f"{where}group: family {group.family} requires {need}")
        if group.family == "su2" and group.J is not None and (2 * group.J) % 1 != 0:
            errors.append(f"{where}group/J: spin must be a half-integer, got {group.J}")
    needs_group = {
        "povm-check": None,
        "teleport": ("pauli-d2", "zn-pair"),
        "su2": ("su2",),
        "sweep-lambda": ("weyl-heisenberg",),
        "filter": ("weyl-heisenberg",),
    }
    if scenario in needs_group:
        allowed = needs_group[scenario]
        if group is None:
            errors.append(f"{where}group: scenario {scenario} requires a group")
        elif allowed is not None and group.family not in allowed:
            errors.append(f"{where}group/family: scenario {scenario} needs one of {', '.join(allowed)}, got {group.family}")

    lambdas = obj.get("lambda")
    if scenario == "sweep-lambda" and lambdas is None:
        errors.append(f"{where}lambda: scenario sweep-lambda requires a lambda list")
    errors += [_lambda_error(where, k, x) for k, x in enumerate(lambdas or ()) if not 0 <= x < 1]

    phases = obj.get("phases")
    if phases is not None and group is not None and not errors:
        d = group.rep().d
        if len(phases) != d:
            errors.append(f"{where}phases: need {d} phases for a {d}-dimensional resource, got {len(phases)}")
    if scenario == "filter":
        cat = obj.get("cat", {})
        for key in ("alpha", "beta"):
            if key in cat and _as_complex(cat[key]) == 0:
                errors.append(f"{where}cat/{key}: must be nonzero")
    if errors:
        raise ConfigError(errors)

    cat = obj.get("cat", {})
    tol = obj.get("tolerance", _default_tolerance(scenario, group.family if group else None))
    return ScenarioConfig(
        scenario=scenario,
        group=group,
        phases=tuple(phases) if phases is not None else None,
        lambdas=tuple(float(x) for x in lambdas) if lambdas is not None else None,
        dims=tuple(obj["dims"]) if "dims" in obj else None,
        alpha=_as_complex(cat.get("alpha", 2.0)),
        beta=_as_complex(cat.get("beta", 2.0)),
        samples=obj.get("samples", DEFAULT_SAMPLES),
        seed=obj.get("seed", 0),
        tolerance=float(tol),
        quadrature=tuple(obj["quadrature"]) if "quadrature" in obj else None,
        output=obj.get("output"),
        format=obj.get("format", "csv"),
        id=obj.get("id"),
    )


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from None


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a single scenario object."""
    obj = _load(text)
    if not isinstance(obj, dict):
        raise ConfigError("(root): expected a JSON object describing one scenario")
    return _validate(obj)


def parse_run(text: str) -> list[ScenarioConfig]:
    """Parse a run file: one scenario object or an array of them."""
    obj = _load(text)
    items = obj if isinstance(obj, list) else [obj]
    if not items:
        raise ConfigError("(root): empty scenario list")
    configs, errors = [], []
    for k, item in enumerate(items):
        where = f"[{k}] " if isinstance(obj, list) else ""
        try:
            configs.append(_validate(item, where))
        except ConfigError as e:
            errors.extend(e.errors)
    if errors:
        raise ConfigError(errors)
    return configs


@dataclass
class RunReport:
    meta: dict
    rows: list = field(default_factory=list)
    columns: tuple = COLUMNS

    @property
    def failures(self) -> list:
        return [r for r in self.rows if r.get("passed") is False]

    @property
    def passed(self) -> bool:
        return not self.failures


def _row(cfg: ScenarioConfig, sid: str, **values) -> dict:
    row = dict.fromkeys(COLUMNS)
    row.update(scenario_id=sid, scenario=cfg.scenario)
    if cfg.group is not None:
        row["family"] = cfg.group.family
    for k, v in values.items():
        if k not in row:
            raise KeyError(k)
        if isinstance(v, (np.floating, float)):
            v = float(v)
        elif isinstance(v, np.integer):
            v = int(v)
        row[k] = v
    return row


def _check(row: dict, tol: float) -> dict:
    row["passed"] = bool(row["residual"] is not None and row["residual"] <= tol)
    return row


def _random_ket(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def _run_identities(cfg, sid, rng):
    rows = []
    for d in cfg.dims or (2, 3, 5, 8, 16):
        worst = {}
        for _ in range(cfg.samples):
            res = verify_transfer_identities(max_entangled(d, rng.uniform(0, 2 * np.pi, d)))
            for name, r in res.items():
                worst[name] = max(worst.get(name, 0.0), r)
        for name, r in worst.items():
            rows.append(_check(_row(cfg, sid, d=d, check=name, residual=r), cfg.tolerance))
    return rows


def _run_povm(cfg, sid, rng):
    rep = cfg.group.rep()
    p = EntangledPovm.standard(rep, cfg.phases, cfg.quadrature)
    d = rep.d
    rows = [_check(_row(cfg, sid, d=d, check="completeness", residual=completeness_residual(p)), cfg.tolerance)]
    block = d // 4 + 1 if rep.family == "weyl-heisenberg" else d
    pairs = min(cfg.samples, 20)
    Us = p.unitaries[:, :block, :block]
    worst = 0.0
    for _ in range(pairs):
        u, v = _random_ket(rng, block), _random_ket(rng, block)
        worst = max(worst, abs(float(p.quad.weights @ np.abs(np.einsum("i,gij,j->g", u.conj(), Us, v)) ** 2) - 1.0))
    rows.append(_check(_row(cfg, sid, d=d, check="normalization", residual=worst), cfg.tolerance))
    A = np.zeros((d, d), dtype=complex)
    H = rng.normal(size=(block, block)) + 1j * rng.normal(size=(block, block))
    A[:block, :block] = H + H.conj().T
    rows.append(_check(_row(cfg, sid, d=d, check="schur", residual=schur_residual(rep, p.quad, A, block=block)), cfg.tolerance))
    if rep.family != "weyl-heisenberg":
        rows.append(_check(_row(cfg, sid, d=d, check="mass", residual=abs(p.quad.mass - d)), cfg.tolerance))
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, len(p.quad)))
        rows.append(_check(_row(cfg, sid, d=d, check="cocycle", residual=cocycle_invariance_check(p, phases)), EXACT_TOL))
        if rep.finite:
            joint = product(_random_ket(rng, d), mat_to_biket(_random_ket(rng, d * d).reshape(d, d)))
            a = born_distribution(p, joint, (0, 1)).probs
            b = born_distribution(p.with_phases(phases), joint, (0, 1)).probs
            rows.append(_check(_row(cfg, sid, d=d, check="cocycle-born", residual=float(np.abs(a - b).max())), EXACT_TOL))
    return rows


def _run_teleport(cfg, sid, rng):
    rep = cfg.group.rep()
    n = len(rep.elements())
    rows = []
    for _ in range(cfg.samples):
        run = teleport_ideal(rep, _random_ket(rng, rep.d), cfg.phases, rng)
        resid = max(abs(1 - run.fidelity), abs(run.prob - 1 / n))
        rows.append(_check(_row(cfg, sid, d=rep.d, check="teleport", outcome=rep.label(run.outcome),
                                probability=run.prob, fidelity=run.fidelity, residual=resid), cfg.tolerance))
    return rows


def _run_sweep(cfg, sid, rng):
    rep = cfg.group.rep()
    x = np.zeros(rep.d, dtype=complex)
    x[:2] = 1 / math.sqrt(2)
    rows = []
    for lam in cfg.lambdas:
        run = teleport_distorted(rep, x, lam)
        # closed form for (|0> + |1>)/sqrt2 at g = g' = 0
        expected = (1 + lam) ** 2 / (2 * (1 + lam * lam))
        resid = max(run.residual, abs(run.fidelity - expected))
        rows.append(_check(_row(cfg, sid, d=rep.d, check="distorted", **{"lambda": lam}, fidelity=run.fidelity,
                                residual=resid, deficit=run.deficit), cfg.tolerance))
    return rows


def _run_swap(cfg, sid, rng):
    rows = []
    for d in cfg.dims or (2, 3, 4):
        psi = max_entangled(d, cfg.phases if cfg.phases and len(cfg.phases) == d else None)
        for _ in range(cfg.samples):
            Phi = mat_to_biket(_random_ket(rng, d * d).reshape(d, d))
            for placement in ("left", "right"):
                run = entanglement_swap(Phi, psi, placement)
                resid = max(abs(run.scalar - 1 / d), abs(1 - run.fidelity))
                rows.append(_check(_row(cfg, sid, d=d, check=f"swap-{placement}", fidelity=run.fidelity,
                                        residual=resid), cfg.tolerance))
    return rows


def _run_su2(cfg, sid, rng):
    rep = cfg.group.rep()
    rows = []
    for _ in range(cfg.samples):
        g, _w = rep.sample(rng)
        x = _random_ket(rng, rep.d)
        out, scalar = teleport_su2(rep.J, x, g.phi, g.axis, cfg.phases)
        fid = abs(np.vdot(x, out)) ** 2
        resid = max(abs(scalar - 1 / rep.d), abs(1 - fid))
        rows.append(_check(_row(cfg, sid, d=rep.d, check="su2", phi=g.phi, axis=",".join(f"{c:.17g}" for c in g.axis),
                                fidelity=fid, residual=resid), cfg.tolerance))
    return rows


def _run_filter(cfg, sid, rng):
    d = cfg.group.d_trunc
    res = cat_resource(cfg.alpha, cfg.beta, d)
    ap, am = res.parity_basis[:2]
    rows = [
        _check(_row(cfg, sid, d=d, check="lines", residual=res.line_residual, deficit=res.deficit), cfg.tolerance),
        _check(_row(cfg, sid, d=d, check="u_k", residual=res.uk_residual), cfg.tolerance),
    ]
    inputs = [("alpha+", ap), ("alpha-", am), ("alpha+ + alpha-", (ap + am) / math.sqrt(2))]
    for _ in range(min(cfg.samples, 100)):
        c = _random_ket(rng, 2)
        inputs.append(("parity-qubit", c[0] * ap + c[1] * am))
    first = None
    for label, x in inputs:
        run = filter_teleport(res, x)
        first = first or run
        rows.append(_check(_row(cfg, sid, d=d, check=label, fidelity=run.fidelity, residual=abs(1 - run.fidelity)), cfg.tolerance))
    rows.append(_check(_row(cfg, sid, d=d, check="map", residual=first.map_residual), cfg.tolerance))
    for n in range(1, 4):
        e = basis_ket(d, n)
        perp = e - ap * np.vdot(ap, e) - am * np.vdot(am, e)
        run = filter_teleport(res, (ap + perp / np.linalg.norm(perp)) / math.sqrt(2))
        rows.append(_check(_row(cfg, sid, d=d, check=f"orthogonal-fock-{n}", residual=run.leakage), cfg.tolerance))
    twist_run = filter_teleport(res, ap, measurement="twist")
    # informational: the unbalanced twist(|Pi>) measurement, not a pass/fail criterion
    rows.append(_row(cfg, sid, d=d, check="twist-measurement", fidelity=twist_run.fidelity,
                     residual=abs(1 - twist_run.fidelity)))
    return rows


_DISPATCH = {
    "verify-identities": _run_identities,
    "povm-check": _run_povm,
    "teleport": _run_teleport,
    "sweep-lambda": _run_sweep,
    "swap": _run_swap,
    "su2": _run_su2,
    "filter": _run_filter,
}


def scenario_rng(seed: int, scenario_id: str) -> np.random.Generator:
    """Independent stream for one scenario, derived from the master seed."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(scenario_id.encode())]))


def config_hash(configs) -> str:
    blob = json.dumps([c.to_json() for c in configs], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _meta(configs, seed) -> dict:
    return {"tool": "teletwist", "version": __version__, "seed": int(seed), "config_hash": config_hash(configs)}


def run_scenario(cfg: ScenarioConfig, rng: np.random.Generator, scenario_id: str | None = None,
                 timing: bool = False) -> RunReport:
    """Execute one scenario and return its rows."""
    sid = scenario_id or cfg.id or cfg.scenario
    start = time.perf_counter()
    rows = _DISPATCH[cfg.scenario](cfg, sid, rng)
    columns = COLUMNS
    if timing:
        elapsed = (time.perf_counter() - start) * 1e3
        columns = COLUMNS + ("wall_time_ms",)
        for r in rows:
            r["wall_time_ms"] = elapsed
    return RunReport(_meta([cfg], cfg.seed), rows, columns)


def _scenario_ids(configs) -> list[str]:
    return [c.id or f"{k}:{c.scenario}" for k, c in enumerate(configs)]


def run_configs(configs, seed: int | None = None, jobs: int = 1, timing: bool = False) -> RunReport:
    """Run every scenario (possibly in threads) and merge rows in config order."""
    seed = configs[0].seed if seed is None else int(seed)
    ids = _scenario_ids(configs)

    def one(k):
        return run_scenario(configs[k], scenario_rng(seed, ids[k]), ids[k], timing)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(one, range(len(configs))))
    else:
        parts = [one(k) for k in range(len(configs))]
    rows = [r for part in parts for r in part.rows]
    return RunReport(_meta(configs, seed), rows, parts[0].columns)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render_report(report: RunReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        for key, value in report.meta.items():
            buf.write(f"# {key}: {value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([_fmt(row.get(c)) for c in report.columns])
        return buf.getvalue()
    if fmt == "json":
        payload = {
            "meta": report.meta,
            "columns": list(report.columns),
            "records": [{c: row.get(c) for c in report.columns} for row in report.rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report: RunReport, fmt: str, path) -> None:
    """Write ``report`` to ``path``; I/O failures are re-raised with the path."""
    text = render_report(report, fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise OSError(e.errno, f"cannot write report to {path}: {e.strerror}") from e


def _parse_cell(column: str, text: str):
    if text == "":
        return None
    if column == "passed":
        return text == "true"
    if column == "d":
        return int(text)
    if column in FLOAT_COLUMNS:
        return float(text)
    return text


def read_report(path, fmt: str = "csv") -> RunReport:
    """Inverse of :func:`emit_report`."""
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    if fmt == "json":
        payload = json.loads(text)
        return RunReport(payload["meta"], payload["records"], tuple(payload["columns"]))
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = int(value) if key == "seed" else value
        else:
            body.append(line)
    reader = csv.reader(body)
    columns = tuple(next(reader))
    rows = [{c: _parse_cell(c, v) for c, v in zip(columns, rec)} for rec in reader]
    return RunReport(meta, rows, columns)


def builtin_suite(name: str, seed: int = 0) -> list[ScenarioConfig]:
    """Scenario lists behind ``teletwist verify``."""
    identities = [ScenarioConfig("verify-identities", dims=(2, 3, 5, 8, 16), samples=100, seed=seed, tolerance=EXACT_TOL,
                                 id="identities")]
    groups = [GroupSpec("pauli-d2")] + [GroupSpec("zn-pair", N=n) for n in range(2, 9)]
    povm = [ScenarioConfig("povm-check", group=g, seed=seed, tolerance=EXACT_TOL, id=f"povm:{g.family}:{g.N or ''}")
            for g in groups]
    povm += [ScenarioConfig("povm-check", group=GroupSpec("su2", J=J), seed=seed, tolerance=SU2_QUAD_TOL, id=f"povm:su2:{J}")
             for J in (0.5, 1.0)]
    povm.append(ScenarioConfig("povm-check", group=GroupSpec("weyl-heisenberg", d_trunc=30), seed=seed,
                               tolerance=HETERODYNE_TOL, id="povm:weyl-heisenberg:30"))
    if name == "identities":
        return identities
    if name == "povm":
        return povm
    if name != "all":
        raise ValueError(f"unknown suite {name!r}")
    rest = [ScenarioConfig("teleport", group=g, samples=50, seed=seed, id=f"teleport:{g.family}:{g.N or ''}")
            for g in groups]
    rest.append(ScenarioConfig("sweep-lambda", group=GroupSpec("weyl-heisenberg", d_trunc=30),
                               lambdas=tuple(k / 10 for k in range(10)) + (0.99,), seed=seed, id="sweep-lambda"))
    rest.append(ScenarioConfig("swap", dims=(2, 3, 4), samples=100, seed=seed, id="swap"))
    rest += [ScenarioConfig("su2", group=GroupSpec("su2", J=J), samples=100, seed=seed, id=f"su2:{J}")
             for J in (0.5, 1.0, 1.5)]
    rest.append(ScenarioConfig("filter", group=GroupSpec("weyl-heisenberg", d_trunc=30), alpha=2.0, beta=2.0,
                               samples=20, seed=seed, tolerance=FILTER_TOL, id="filter"))
    return identities + povm + rest


def with_overrides(cfg: ScenarioConfig, **changes) -> ScenarioConfig:
    return replace(cfg, **{k: v for k, v in changes.items() if v is not None})
