"""JSON documents for complexes with metrics and for computed embeddings.

Floats are written with Python's shortest round-trip repr, so parsing a
written document reproduces every coordinate bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .complex import (
    IndefiniteMetric,
    SimplicialComplex,
    build_complex,
    metric_from_lengths,
    metric_from_squares,
    signed_sqrt,
)
from .errors import EmbedError, ParseError
from .minkowski import Signature, SimplicialMap

SCHEMA_VERSION = 1


def _load_json(source) -> dict:
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {source}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def _check_version(doc: dict):
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}")


def parse_complex_document(source) -> tuple[SimplicialComplex, IndefiniteMetric]:
    doc = _load_json(source)
    _check_version(doc)
    try:
        verts = doc["vertices"]
        if isinstance(verts, int):
            count, labels = verts, None
        else:
            count, labels = len(verts), [str(v) for v in verts]
        c = build_complex(doc["simplices"], vertex_count=count, vertex_labels=labels)
        metric = doc["metric"]
        mode = metric.get("mode", "length")
        values: dict[tuple[int, int], float] = {}
        for entry in metric["edges"]:
            i, j, val = entry
            key = (min(int(i), int(j)), max(int(i), int(j)))
            if key in values:
                raise ParseError(f"duplicate metric entry for edge {list(key)}")
            values[key] = float(val)
        if mode == "length":
            m = metric_from_lengths(c, values)
        elif mode == "squared":
            m = metric_from_squares(c, values)
        else:
            raise ParseError(f"metric mode must be 'length' or 'squared', got {mode!r}")
    except ParseError:
        raise
    except (EmbedError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid complex document: {exc!r}") from exc
    return c, m


def complex_document(c: SimplicialComplex, m: IndefiniteMetric, mode: str | None = None) -> dict:
    mode = mode or m.input_mode
    values = m.squared if mode == "squared" else signed_sqrt(m.squared)
    labels = list(c.vertex_labels)
    default = [str(v) for v in range(c.vertex_count)]
    return {
        "schema_version": SCHEMA_VERSION,
        "vertices": c.vertex_count if labels == default else labels,
        "simplices": [list(s) for s in c.maximal_simplices],
        "metric": {
            "mode": mode,
            "edges": [[i, j, float(v)] for (i, j), v in zip(c.edges, np.atleast_1d(values))],
        },
    }


@dataclass
class EmbeddingDocument:
    method: str
    mode: str
    seed: int
    signature: Signature
    coordinates: np.ndarray
    residual: float
    extra: dict[str, Any] = field(default_factory=dict)
    """Method-specific records: lambda_final, alphas, partition, mu, ..."""

    def to_dict(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "method": self.method,
            "mode": self.mode,
            "seed": self.seed,
            "signature": {
                "signs": list(self.signature.signs),
                "p": self.signature.p,
                "q": self.signature.q,
            },
            "coordinates": [[float(x) for x in row] for row in self.coordinates],
            "residual": float(self.residual),
        }
        doc.update(self.extra)
        return doc

    def dumps(self) -> str:
        return dumps(self.to_dict())

    def to_map(self, c: SimplicialComplex) -> SimplicialMap:
        return SimplicialMap(c, self.signature, self.coordinates)

    @classmethod
    def parse(cls, source) -> EmbeddingDocument:
        doc = _load_json(source)
        _check_version(doc)
        try:
            sig = doc["signature"]
            signature = Signature(tuple(sig["signs"]))
            if signature.p != sig.get("p", signature.p) or signature.q != sig.get("q", signature.q):
                raise ParseError("signature counts disagree with the sign vector")
            coords = np.array(doc["coordinates"], dtype=float)
            if coords.size == 0:
                coords = coords.reshape(len(doc["coordinates"]), signature.dim)
            if coords.ndim != 2 or coords.shape[1] != signature.dim:
                raise ParseError("coordinate rows must have length p + q")
            if not np.all(np.isfinite(coords)):
                raise ParseError("coordinates must be finite")
            known = {"schema_version", "method", "mode", "seed", "signature", "coordinates", "residual"}
            extra = {k: v for k, v in doc.items() if k not in known}
            return cls(
                method=str(doc["method"]),
                mode=str(doc["mode"]),
                seed=int(doc["seed"]),
                signature=signature,
                coordinates=coords,
                residual=float(doc["residual"]),
                extra=extra,
            )
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid embedding document: {exc!r}") from exc
