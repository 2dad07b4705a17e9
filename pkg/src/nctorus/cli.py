"""One-shot command line: JSON scenario in, deterministic JSON report out.

Exit codes: 0 success, 2 scenario validation error, 3 math-domain error
(not flat, non-constant connection, ...).  Reports carry no timestamps;
run metadata goes to stderr so identical scenarios produce byte-identical
reports.
"""

from __future__ import annotations

import argparse
import datetime
import json
import re
import sys
import time

from .algebra import TorusParams
from .connections import Connection, curvature_form, is_flat, transport
from .coverings import CoveringSpec, check_path_independence, classify_path, wilson
from .errors import NCTorusError, RankMismatch
from .infinitecover import wilson_relation_report
from .scenarios import BUILTIN_SCENARIOS, builtin

COMMANDS = (
    "curvature",
    "flat",
    "transport",
    "classify",
    "wilson",
    "independence",
    "infinite-wilson",
)


class ScenarioError(ValueError):
    """The scenario file does not match the schema."""


def _round15(x: float) -> float:
    return float(f"{x:.15g}")


def _round_tree(obj):
    """Round every float in a JSON tree to 15 significant digits."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return _round15(obj)
    if isinstance(obj, list):
        return [_round_tree(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    return obj


def _complex15(z: complex) -> list[float]:
    return [_round15(z.real), _round15(z.imag)]


def _need(scenario: dict, key: str):
    if key not in scenario:
        raise ScenarioError(f"scenario is missing required field {key!r}")
    return scenario[key]


def _params(scenario: dict) -> TorusParams:
    theta = _need(scenario, "theta")
    if not isinstance(theta, (int, float)) or isinstance(theta, bool):
        raise ScenarioError("theta must be a number")
    try:
        return TorusParams(float(theta))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _connection(scenario: dict, params: TorusParams) -> Connection:
    raw = _need(scenario, "connection")
    try:
        return Connection.from_dict(raw, params)
    except (KeyError, TypeError, ValueError, RankMismatch) as exc:
        raise ScenarioError(f"bad connection: {exc}") from exc


def _covering(scenario: dict, params: TorusParams) -> CoveringSpec:
    raw = _need(scenario, "covering")
    try:
        k1, k2 = raw["degrees"]
        return CoveringSpec(params, (int(k1), int(k2)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad covering: {exc}") from exc


def _paths(scenario: dict) -> list[tuple]:
    raw = _need(scenario, "paths")
    if not isinstance(raw, list) or not raw:
        raise ScenarioError("paths must be a non-empty list of [alpha, beta] weights")
    out = []
    for w in raw:
        if (
            not isinstance(w, (list, tuple))
            or len(w) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in w)
        ):
            raise ScenarioError(f"bad weight {w!r}")
        out.append((w[0], w[1]))
    return out


def _int_pair(pair, what: str) -> tuple[int, int]:
    a, b = pair
    if a != int(a) or b != int(b):
        raise ScenarioError(f"{what} must be an integer pair, got {list(pair)!r}")
    return int(a), int(b)


def _cli_params(scenario: dict) -> dict:
    return scenario.get("params", {})


def _deck_pair(scenario: dict) -> tuple[int, int]:
    deck = _cli_params(scenario).get("deck")
    if not isinstance(deck, (list, tuple)) or len(deck) != 2:
        raise ScenarioError("params.deck must be a pair [a, b]")
    return _int_pair(deck, "params.deck")


def _transport_result(op) -> dict:
    result = {
        "matrix": [[_complex15(complex(z)) for z in row] for row in op.matrix.tolist()],
        "weight": list(op.weight),
        "tau": op.tau,
    }
    if op.rank == 1:
        result["value"] = _complex15(complex(op.matrix[0, 0]))
    return result


def run(scenario: dict) -> dict:
    """Validate and dispatch a scenario; return the full report dict."""
    if not isinstance(scenario, dict):
        raise ScenarioError("scenario must be a JSON object")
    if scenario.get("v") != 1:
        raise ScenarioError('scenario must declare schema version "v": 1')
    command = _need(scenario, "command")
    if command not in COMMANDS:
        raise ScenarioError(f"unknown command {command!r} (choose from: {', '.join(COMMANDS)})")

    if command == "curvature":
        conn = _connection(scenario, _params(scenario))
        result = {"flat": is_flat(conn), "curvature": curvature_form(conn).to_dict()}
    elif command == "flat":
        conn = _connection(scenario, _params(scenario))
        result = {"flat": is_flat(conn)}
    elif command == "transport":
        params = _params(scenario)
        conn = _connection(scenario, params)
        weight = _paths(scenario)[0]
        tau = _cli_params(scenario).get("tau", 1.0)
        if not isinstance(tau, (int, float)) or isinstance(tau, bool):
            raise ScenarioError("params.tau must be a number")
        result = _transport_result(transport(conn, weight, float(tau)))
    elif command == "classify":
        spec = _covering(scenario, _params(scenario))
        reports = []
        for w in _paths(scenario):
            reports.append(classify_path(spec, _int_pair(w, "classify weight")).to_dict())
        result = {"paths": reports}
    elif command == "wilson":
        params = _params(scenario)
        spec = _covering(scenario, params)
        conn = _connection(scenario, params)
        a, b = _deck_pair(scenario)
        op = wilson(spec, spec.deck(a, b), conn)
        result = _transport_result(op)
        result["deck"] = [a, b]
    elif command == "independence":
        params = _params(scenario)
        spec = _covering(scenario, params)
        conn = _connection(scenario, params)
        a, b = _deck_pair(scenario)
        weights = [_int_pair(w, "independence weight") for w in _paths(scenario)]
        result = check_path_independence(spec, spec.deck(a, b), conn, weights).to_dict()
    else:  # infinite-wilson
        cp = _cli_params(scenario)
        for key in ("c_u", "c_v"):
            if not isinstance(cp.get(key), (int, float)) or isinstance(cp.get(key), bool):
                raise ScenarioError(f"params.{key} must be a number")
        p, q = _deck_pair(scenario)
        result = wilson_relation_report(p, q, float(cp["c_u"]), float(cp["c_v"]))

    return {
        "v": 1,
        "command": command,
        "scenario": scenario,
        "result": _round_tree(result),
    }


def _error_code(exc: Exception) -> str:
    name = type(exc).__name__
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nctorus",
        description="Compute curvature, transports, covering lifts and Wilson lines "
        "on the noncommutative torus from a JSON scenario.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", help="path to a JSON scenario file")
    source.add_argument(
        "--builtin",
        choices=sorted(BUILTIN_SCENARIOS),
        help="run one of the bundled scenarios",
    )
    parser.add_argument("--out", help="report path (default: stdout)")
    parser.add_argument("--pretty", action="store_true", help="indent the report")
    args = parser.parse_args(argv)

    def emit(payload: dict):
        if args.pretty:
            text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        else:
            text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    started = time.perf_counter()
    try:
        if args.builtin:
            scenario = builtin(args.builtin)
        else:
            with open(args.scenario, encoding="utf-8") as fh:
                scenario = json.load(fh)
        report = run(scenario)
    except NCTorusError as exc:
        emit({"error": _error_code(exc), "message": str(exc)})
        return 3
    except (ScenarioError, ValueError, TypeError, KeyError, json.JSONDecodeError, OSError) as exc:
        emit({"error": "validation", "message": str(exc)})
        return 2

    emit(report)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    print(
        f"nctorus: command={report['command']} elapsed_ms={elapsed_ms:.2f} finished={stamp}",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
