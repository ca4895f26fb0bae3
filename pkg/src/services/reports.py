"""Rendering of results as JSON, CSV or plain text. Numbers are always decimal."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from src.linalg import format_matrix

from .bruhat import BruhatFactorization
from .formulas import CodeParams, griesmer_defect, singleton_defect

logger = logging.getLogger(__name__)


def params_payload(params: CodeParams) -> dict:
    return {
        "n": params.n,
        "q": params.q,
        "length": params.length,
        "dimension": params.dimension,
        "min_distance": params.min_distance,
        "singleton_defect": singleton_defect(params),
        "griesmer_defect": griesmer_defect(params),
    }


def factorization_payload(result: BruhatFactorization) -> dict:
    return {"w": list(result.w.one_line), "L": format_matrix(result.L), "U": format_matrix(result.U)}


def genmat_text(genmat: np.ndarray) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in genmat.tolist()) + "\n"


def _plain(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _records(frame: pd.DataFrame) -> list[dict]:
    return [{key: row[key] for key in frame.columns} for row in frame.to_dict(orient="records")]


def render(payload, fmt: str) -> str:
    """A dict or DataFrame as json, csv or text."""
    frame = payload if isinstance(payload, pd.DataFrame) else None
    if fmt == "json":
        data = _records(frame) if frame is not None else payload
        return json.dumps(data, indent=2, default=_plain) + "\n"
    if frame is None:
        frame = pd.DataFrame([payload])
    if fmt == "csv":
        return frame.to_csv(index=False)
    if fmt == "text":
        return frame.to_string(index=False) + "\n"
    raise ValueError(f"unknown output format {fmt!r}")


def write_output(text: str, out: str | None = None):
    if out is None:
        print(text, end="")
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info("Wrote %s bytes to %s", len(text), path)
