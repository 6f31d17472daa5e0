"""Run manifests: enough provenance to replay any output byte for byte.

A manifest records the subcommand, the full parameter map, every seed,
the tool and generator identity, and the SHA-256 of each input file.
Replaying the recorded argv reproduces all outputs except timestamps.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

TOOL_VERSION = "0.1.0"
GENERATOR_ID = f"numpy-pcg64/{np.__version__}"


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(Path(path).read_bytes())
    return h.hexdigest()


@dataclass
class RunManifest:
    subcommand: str
    params: dict
    seeds: list
    argv: list
    tool_version: str = TOOL_VERSION
    generator: str = GENERATOR_ID
    input_hashes: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    started: str = ""
    finished: str = ""

    @classmethod
    def begin(
        cls,
        subcommand: str,
        params: dict,
        seeds: Sequence,
        argv: Sequence[str],
        inputs: Sequence[Path] = (),
    ) -> "RunManifest":
        return cls(
            subcommand=subcommand,
            params={k: str(v) for k, v in params.items()},
            seeds=list(seeds),
            argv=list(argv),
            input_hashes={str(p): _sha256(p) for p in inputs},
            started=datetime.now(timezone.utc).isoformat(),
        )

    def finish(self, outputs: Sequence[Path]) -> None:
        self.outputs = [str(p) for p in outputs]
        self.finished = datetime.now(timezone.utc).isoformat()

    def to_json(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "params": self.params,
            "seeds": self.seeds,
            "argv": self.argv,
            "tool_version": self.tool_version,
            "generator": self.generator,
            "input_hashes": self.input_hashes,
            "outputs": self.outputs,
            "started": self.started,
            "finished": self.finished,
        }

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n")
        return path

    @classmethod
    def load(cls, path: Path) -> "RunManifest":
        obj = json.loads(Path(path).read_text())
        m = cls(
            subcommand=obj["subcommand"],
            params=obj["params"],
            seeds=obj["seeds"],
            argv=obj["argv"],
            tool_version=obj["tool_version"],
            generator=obj["generator"],
            input_hashes=obj["input_hashes"],
            outputs=obj["outputs"],
            started=obj["started"],
        )
        m.finished = obj["finished"]
        return m
