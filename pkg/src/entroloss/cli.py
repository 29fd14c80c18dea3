"""Config-driven command line front end.

A run is described by a single JSON config (numbers decimal, complex entries
as [re, im] pairs) naming one of four commands: ``quantity`` evaluates a
named functional on given states/channels, ``sequence`` runs a built-in
family and reports jump estimates, ``suite`` executes registered bound
suites, and ``report`` consolidates previously written suite outputs.
Reruns with the same config and seed produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from ._optim import OptimizerBudget
from .channels import (
    QuantumOperation,
    channel_mutual_information,
    coherent_information,
    dephasing_channel,
    depolarizing_channel,
    identity_channel,
    measure_prepare_channel,
    output_entropy,
    partial_trace_channel,
)
from .energy import Hamiltonian, gibbs_threshold, mean_energy
from .errors import (
    ConfigError,
    EntrolossError,
    MissingArtifactsError,
    SuiteFailureError,
)
from .extended import ExtendedReal
from .info import (
    Ensemble,
    conditional_entropy,
    conditional_mutual_information,
    holevo_quantity,
    mutual_information,
    relative_entropy,
    von_neumann_entropy,
)
from .operators import TraceClassElement
from .roofs import (
    BoundedValue,
    c_squashed_entanglement_k,
    classical_correlations,
    constrained_holevo_estimate,
    entanglement_of_formation,
    quantum_discord,
    squashed_entanglement_k,
)
from .sequences import (
    builtin_families,
    conditional_entropy_of,
    entropy_of,
    estimate_jump,
    marginal_entropy_of,
    mutual_information_of,
    pinched_entropy_of,
)
from .suites import SUITES, SuiteReport, suite_run


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


def _reject_unknown(section: dict, allowed: set, path: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} under '{path}'")


def _complex_matrix(entries, path: str) -> np.ndarray:
    try:
        arr = np.asarray(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{path}' is not a numeric array: {exc}") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ConfigError(f"'{path}' must be a matrix of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def parse_state(spec: dict, path: str) -> TraceClassElement:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"'{path}' must be an object with a 'kind'")
    kind = spec["kind"]
    factors = spec.get("factor_dims")
    if kind == "matrix":
        _reject_unknown(spec, {"kind", "entries", "factor_dims"}, path)
        return TraceClassElement(_complex_matrix(spec["entries"], f"{path}.entries"), factor_dims=factors)
    if kind == "diag":
        _reject_unknown(spec, {"kind", "values", "factor_dims"}, path)
        return TraceClassElement(np.asarray(spec["values"], dtype=float), factor_dims=factors, diagonal=True)
    if kind == "pure":
        _reject_unknown(spec, {"kind", "amplitudes", "factor_dims"}, path)
        amp = np.asarray(spec["amplitudes"], dtype=float)
        if amp.ndim != 2 or amp.shape[1] != 2:
            raise ConfigError(f"'{path}.amplitudes' must be a vector of [re, im] pairs")
        v = amp[:, 0] + 1j * amp[:, 1]
        v = v / np.linalg.norm(v)
        return TraceClassElement.pure(v, factor_dims=factors)
    if kind == "bell":
        _reject_unknown(spec, {"kind"}, path)
        return TraceClassElement.pure(np.array([1.0, 0, 0, 1.0]) / math.sqrt(2), factor_dims=(2, 2))
    if kind == "max_mixed":
        _reject_unknown(spec, {"kind", "dim", "factor_dims"}, path)
        d = int(spec["dim"])
        return TraceClassElement(np.full(d, 1.0 / d), factor_dims=factors, diagonal=True)
    raise ConfigError(f"'{path}.kind' = {kind!r} is not a recognized state kind")


def parse_channel(spec: dict, path: str) -> QuantumOperation:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"'{path}' must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "identity":
        _reject_unknown(spec, {"kind", "dim"}, path)
        return identity_channel(int(spec["dim"]))
    if kind == "depolarizing":
        _reject_unknown(spec, {"kind", "p", "dim"}, path)
        return depolarizing_channel(float(spec["p"]), int(spec.get("dim", 2)))
    if kind == "dephasing":
        _reject_unknown(spec, {"kind", "p"}, path)
        return dephasing_channel(float(spec["p"]))
    if kind == "partial_trace":
        _reject_unknown(spec, {"kind", "dims", "keep"}, path)
        return partial_trace_channel(spec["dims"], int(spec["keep"]))
    if kind == "measure_prepare":
        _reject_unknown(spec, {"kind", "povm", "preps"}, path)
        povm = [_complex_matrix(m, f"{path}.povm") for m in spec["povm"]]
        preps = [parse_state(s, f"{path}.preps") for s in spec["preps"]]
        return measure_prepare_channel(povm, preps)
    if kind == "kraus":
        _reject_unknown(spec, {"kind", "operators"}, path)
        return QuantumOperation([_complex_matrix(m, f"{path}.operators") for m in spec["operators"]])
    raise ConfigError(f"'{path}.kind' = {kind!r} is not a recognized channel kind")


def parse_hamiltonian(spec: dict, path: str) -> Hamiltonian:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"'{path}' must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "log":
        _reject_unknown(spec, {"kind", "scale", "offset", "truncation_dim"}, path)
        return Hamiltonian.logarithmic(
            float(spec.get("scale", 1.0)), float(spec.get("offset", 0.0)), int(spec["truncation_dim"])
        )
    if kind == "linear":
        _reject_unknown(spec, {"kind", "offset", "slope", "truncation_dim"}, path)
        return Hamiltonian.linear(
            float(spec.get("offset", 0.0)), float(spec.get("slope", 1.0)), int(spec["truncation_dim"])
        )
    if kind == "table":
        _reject_unknown(spec, {"kind", "values"}, path)
        return Hamiltonian.from_table(spec["values"])
    raise ConfigError(f"'{path}.kind' = {kind!r} is not a recognized level law")


def parse_budget(spec: dict | None, seed: int) -> OptimizerBudget:
    if spec is None:
        return OptimizerBudget(seed=seed)
    _reject_unknown(spec, {"restarts", "iterations", "seed"}, "budget")
    return OptimizerBudget(
        restarts=int(spec.get("restarts", 16)),
        iterations=int(spec.get("iterations", 2000)),
        seed=int(spec.get("seed", seed)),
    )


# ---------------------------------------------------------------------------
# deterministic serialization
# ---------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, ExtendedReal):
        return "inf" if x.is_infinite else x.value
    if isinstance(x, BoundedValue):
        return {
            "value": x.value,
            "direction": x.direction.value,
            "converged": x.converged,
            "gap_estimate": x.gap_estimate,
            "provenance": "exact" if x.exact else "optimizer",
        }
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def write_json(path: str, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(payload), fh, sort_keys=True, indent=2)
        fh.write("\n")


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return "%.17g" % float(x)


def write_csv(path: str, header: list, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

_FUNCTIONALS = {
    "entropy": entropy_of,
    "marginal_entropy": lambda x: marginal_entropy_of(x, 0),
    "marginal_entropy_b": lambda x: marginal_entropy_of(x, 1),
    "mutual_information": mutual_information_of,
    "conditional_entropy": conditional_entropy_of,
    "pinched_entropy": pinched_entropy_of,
}


def cmd_quantity(section: dict, budget: OptimizerBudget, out_dir: str, fmt: str) -> int:
    allowed = {
        "name",
        "state",
        "sigma",
        "ensemble",
        "channel",
        "hamiltonian",
        "members",
        "povm_size",
        "extension_dim",
    }
    _reject_unknown(section, allowed, "quantity")
    name = section.get("name")
    if not name:
        raise ConfigError("'quantity.name' is required")

    def state(key="state"):
        if key not in section:
            raise ConfigError(f"'quantity.{key}' is required for {name!r}")
        return parse_state(section[key], f"quantity.{key}")

    record: dict = {"name": name}
    if name == "entropy":
        record["value"] = von_neumann_entropy(state())
        record["provenance"] = "exact"
    elif name == "relative_entropy":
        record["value"] = relative_entropy(state(), parse_state(section["sigma"], "quantity.sigma"))
        record["provenance"] = "exact"
    elif name == "mutual_information":
        record["value"] = float(mutual_information(state()))
        record["provenance"] = "exact"
    elif name == "conditional_entropy":
        record["value"] = conditional_entropy(state())
        record["provenance"] = "exact"
    elif name == "conditional_mutual_information":
        record["value"] = conditional_mutual_information(state())
        record["provenance"] = "exact"
    elif name == "holevo":
        spec = section.get("ensemble")
        if not spec:
            raise ConfigError("'quantity.ensemble' is required for holevo")
        _reject_unknown(spec, {"weights", "states"}, "quantity.ensemble")
        members = [parse_state(s, "quantity.ensemble.states") for s in spec["states"]]
        record["value"] = holevo_quantity(Ensemble(spec["weights"], members))
        record["provenance"] = "exact"
    elif name == "gibbs_threshold":
        record["value"] = gibbs_threshold(parse_hamiltonian(section["hamiltonian"], "quantity.hamiltonian"))
        record["provenance"] = "exact"
    elif name == "mean_energy":
        record["value"] = mean_energy(state(), parse_hamiltonian(section["hamiltonian"], "quantity.hamiltonian"))
        record["provenance"] = "exact"
    elif name == "entanglement_of_formation":
        record["value"] = entanglement_of_formation(state(), section.get("members"), budget)
    elif name == "classical_correlations":
        record["value"] = classical_correlations(state(), section.get("povm_size"), budget)
    elif name == "quantum_discord":
        record["value"] = quantum_discord(state(), section.get("povm_size"), budget)
    elif name == "c_squashed_entanglement":
        record["value"] = c_squashed_entanglement_k(state(), int(section.get("members", 2)), budget)
    elif name == "squashed_entanglement":
        record["value"] = squashed_entanglement_k(state(), int(section.get("extension_dim", 1)), budget)
    elif name == "output_entropy":
        record["value"] = output_entropy(parse_channel(section["channel"], "quantity.channel"), state())
        record["provenance"] = "exact"
    elif name == "coherent_information":
        record["value"] = coherent_information(parse_channel(section["channel"], "quantity.channel"), state())
        record["provenance"] = "exact"
    elif name == "channel_mutual_information":
        record["value"] = channel_mutual_information(parse_channel(section["channel"], "quantity.channel"), state())
        record["provenance"] = "exact"
    elif name == "constrained_holevo":
        record["value"] = constrained_holevo_estimate(
            parse_channel(section["channel"], "quantity.channel"), state(), int(section.get("members", 2)), budget
        )
    else:
        raise ConfigError(f"unknown quantity {name!r}")

    payload = _jsonable(record)
    print(json.dumps(payload, sort_keys=True))
    if fmt in ("json", "both"):
        write_json(os.path.join(out_dir, "quantity.json"), record)
    if fmt in ("csv", "both"):
        value = payload["value"]
        if isinstance(value, dict):
            write_csv(
                os.path.join(out_dir, "quantity.csv"),
                ["name", "value", "direction", "converged", "gap_estimate"],
                [[name, value["value"], value["direction"], value["converged"], value["gap_estimate"]]],
            )
        else:
            write_csv(os.path.join(out_dir, "quantity.csv"), ["name", "value"], [[name, value]])
    return 0


def cmd_sequence(section: dict, out_dir: str, fmt: str) -> int:
    _reject_unknown(section, {"family", "params", "functionals", "window", "grid"}, "sequence")
    family = section.get("family")
    registry = builtin_families()
    if family not in registry:
        raise ConfigError(f"unknown family {family!r}; available: {sorted(registry)}")
    params = dict(section.get("params", {}))
    if "grid" in section:
        params["n_grid"] = [int(n) for n in section["grid"]]
    seq = registry[family](**params)
    names = section.get("functionals", ["entropy"])
    window = int(section.get("window", 3))
    estimates = {}
    series = {"n": list(seq.n_grid)}
    for fname in names:
        if fname not in _FUNCTIONALS:
            raise ConfigError(f"unknown functional {fname!r}; available: {sorted(_FUNCTIONALS)}")
        key = fname if fname in seq.closed_forms else None
        est = estimate_jump(seq, _FUNCTIONALS[fname], window=window, closed_form_key=key)
        series[fname] = list(est.values)
        estimates[fname] = {
            "limit_value": est.limit_value,
            "tail_sup": est.tail_sup,
            "loss": est.loss,
            "gain": est.gain,
            "loss_closed_form": est.loss_closed_form,
            "window": est.window,
            "monotone_tail": est.monotone_tail,
            "converging": est.converging,
        }
    payload = {"family": family, "params": section.get("params", {}), "estimates": estimates}
    print(json.dumps(_jsonable(payload), sort_keys=True))
    if fmt in ("json", "both"):
        write_json(os.path.join(out_dir, f"sequence_{family}.json"), payload)
    if fmt in ("csv", "both"):
        header = list(series)
        rows = [[series[k][i] for k in header] for i in range(len(seq.n_grid))]
        write_csv(os.path.join(out_dir, f"sequence_{family}.csv"), header, rows)
    return 0


def _write_suite_outputs(report: SuiteReport, out_dir: str, fmt: str) -> None:
    safe_id = report.suite_id.replace("/", "_")
    if fmt in ("json", "both"):
        payload = {
            "suite_id": report.suite_id,
            "title": report.title,
            "params": report.params,
            "passed": report.passed,
            "max_slack": report.max_slack,
            "checks": [
                {
                    "claim": c.claim,
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                    "basis": c.basis,
                    "note": c.note,
                }
                for c in report.checks
            ],
            "series": report.series,
        }
        write_json(os.path.join(out_dir, f"{safe_id}_report.json"), payload)
    if fmt in ("csv", "both"):
        write_csv(
            os.path.join(out_dir, f"{safe_id}_checks.csv"),
            ["claim", "lhs", "rhs", "tolerance", "passed", "basis", "note"],
            [[c.claim, c.lhs, c.rhs, c.tolerance, c.passed, c.basis, c.note] for c in report.checks],
        )
        if report.series:
            header = list(report.series)
            length = len(report.series[header[0]])
            rows = [[report.series[k][i] for k in header] for i in range(length)]
            write_csv(os.path.join(out_dir, f"{safe_id}_series.csv"), header, rows)


def cmd_suite(section: dict, out_dir: str, fmt: str) -> int:
    _reject_unknown(section, {"ids", "params"}, "suite")
    ids = section.get("ids", "all")
    if ids == "all":
        ids = list(SUITES)
    if isinstance(ids, str):
        ids = [ids]
    params = section.get("params", {})
    all_passed = True
    for suite_id in ids:
        report = suite_run(suite_id, params)
        _write_suite_outputs(report, out_dir, fmt)
        status = "pass" if report.passed else "FAIL"
        print(f"[{status}] {report.suite_id}: {report.title} ({len(report.checks)} checks)")
        all_passed = all_passed and report.passed
    if not all_passed:
        raise SuiteFailureError("one or more suite checks failed; reports were written")
    return 0


def cmd_report(section: dict, out_dir: str, fmt: str) -> int:
    _reject_unknown(section, {"dir"}, "report")
    src = section.get("dir", out_dir)
    names = sorted(n for n in os.listdir(src) if n.endswith("_report.json")) if os.path.isdir(src) else []
    if not names:
        raise MissingArtifactsError(f"no suite reports found under {src!r}")
    rows = []
    for name in names:
        with open(os.path.join(src, name), encoding="utf-8") as fh:
            data = json.load(fh)
        rows.append(
            [
                data["suite_id"],
                data["title"],
                "pass" if data["passed"] else "fail",
                data["max_slack"],
                len(data["checks"]),
            ]
        )
    header = ["suite_id", "claim", "status", "max_slack", "checks"]
    for row in rows:
        print(f"{row[0]:8s} {row[2]:4s} max_slack={_fmt(row[3])} {row[1]}")
    if fmt in ("json", "both"):
        write_json(
            os.path.join(out_dir, "summary.json"),
            {"suites": [dict(zip(header, row)) for row in rows]},
        )
    if fmt in ("csv", "both"):
        write_csv(os.path.join(out_dir, "summary.csv"), header, rows)
    return 0 if all(r[2] == "pass" for r in rows) else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entroloss",
        description="compute entropic quantities, run sequence families, and verify bound suites",
    )
    parser.add_argument("--config", required=True, help="path to the JSON run configuration")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--out", default=None, help="output directory (default: config or '.')")
    parser.add_argument("--format", choices=("json", "csv", "both"), default=None)
    return parser


TOP_LEVEL_KEYS = {"command", "seed", "output", "budget", "quantity", "sequence", "suite", "report"}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"config error: line {exc.lineno}, column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    try:
        if not isinstance(config, dict):
            raise ConfigError("top-level config must be an object")
        _reject_unknown(config, TOP_LEVEL_KEYS, "config")
        command = config.get("command")
        if command not in ("quantity", "sequence", "suite", "report"):
            raise ConfigError(f"'command' must be one of quantity/sequence/suite/report, got {command!r}")
        output = config.get("output", {})
        _reject_unknown(output, {"dir", "format"}, "output")
        out_dir = args.out or output.get("dir", ".")
        fmt = args.format or output.get("format", "both")
        if fmt not in ("json", "csv", "both"):
            raise ConfigError(f"'output.format' must be json/csv/both, got {fmt!r}")
        os.makedirs(out_dir, exist_ok=True)
        seed = args.seed if args.seed is not None else int(config.get("seed", 0))
        budget = parse_budget(config.get("budget"), seed)
        if command == "quantity":
            return cmd_quantity(config.get("quantity", {}), budget, out_dir, fmt)
        if command == "sequence":
            return cmd_sequence(config.get("sequence", {}), out_dir, fmt)
        if command == "suite":
            return cmd_suite(config.get("suite", {}), out_dir, fmt)
        return cmd_report(config.get("report", {}), out_dir, fmt)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SuiteFailureError as exc:
        print(f"suite failure: {exc}", file=sys.stderr)
        return 1
    except MissingArtifactsError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except EntrolossError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
