"""Run manifests: enough metadata to reproduce a run bit-exactly.

Timestamps and host details live in the quarantined ``environment`` field,
which byte-reproducibility checks exclude; everything else is a pure
function of the configuration.
"""

from __future__ import annotations

import json
import platform
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from ._rng import RNG_ALGORITHM


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def build_manifest(command: str, config: dict, stages: dict, artifacts: dict) -> dict:
    return {
        "tool": "ldpc-forge",
        "version": __version__,
        "command": command,
        "rng_algorithm": RNG_ALGORITHM,
        "config": _jsonable(config),
        "stages": _jsonable(stages),
        "artifacts": _jsonable(artifacts),
        "environment": {
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            "host": platform.node(),
            "platform": platform.platform(),
        },
    }


def dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path: Path, obj: dict) -> None:
    path.write_text(dump_json(obj))
