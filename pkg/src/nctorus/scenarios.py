"""Built-in CLI scenarios covering the golden worked examples."""

from __future__ import annotations

import copy

_SCALAR_CONNECTION = {
    "rank": 1,
    "theta_u": [[[0.0, 0.25]]],
    "theta_v": [[[0.0, 0.1]]],
    "constant": True,
}

_BLOCK_CONNECTION = {
    "rank": 4,
    "theta_u": [
        [[0.0, 0.0], [-0.125, 0.0], [0.0, 0.0], [0.0, 0.0]],
        [[0.125, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
    ],
    "theta_v": [
        [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-0.16666666666666666, 0.0]],
        [[0.0, 0.0], [0.0, 0.0], [0.16666666666666666, 0.0], [0.0, 0.0]],
    ],
    "constant": True,
}

BUILTIN_SCENARIOS = {
    # rank-1 antihermitian connection, holonomy exp(2 pi i c_u) = i
    "paper-scalar": {
        "v": 1,
        "command": "wilson",
        "theta": 0.3819660113,
        "covering": {"degrees": [2, 2]},
        "connection": _SCALAR_CONNECTION,
        "params": {"deck": [1, 0]},
    },
    # rank-4 block connection, holonomy rotates (e1,e2) by pi/4
    "paper-4x4": {
        "v": 1,
        "command": "wilson",
        "theta": 0.3819660113,
        "covering": {"degrees": [2, 2]},
        "connection": _BLOCK_CONNECTION,
        "params": {"deck": [1, 0]},
    },
    # closed-path classification on the degree-(2,2) cover
    "paper-cover": {
        "v": 1,
        "command": "classify",
        "theta": 0.3819660113,
        "covering": {"degrees": [2, 2]},
        "paths": [[1, 0], [0, 1], [2, 0], [1, 2]],
    },
    # infinite Z^2 cover: Wilson relation scalar for the first deck generator
    "paper-infinite": {
        "v": 1,
        "command": "infinite-wilson",
        "theta": 0.3819660113,
        "params": {"c_u": 0.25, "c_v": 0.1, "deck": [1, 0]},
    },
}


def builtin(name: str) -> dict:
    if name not in BUILTIN_SCENARIOS:
        known = ", ".join(sorted(BUILTIN_SCENARIOS))
        raise KeyError(f"unknown builtin scenario {name!r} (choose from: {known})")
    return copy.deepcopy(BUILTIN_SCENARIOS[name])
