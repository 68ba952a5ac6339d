"""Arrangement (.ea) and state (.qs) files.

Both formats are JSON objects with explicit field names. Grammar:

  ArrangementFile (.ea)
    version        must be 1
    factorization  detector counts, one per screen, each >= 1
    label          optional string
    entries        list of records; every pair not listed is zero
      bra, ket     1-based detector indices, one component per screen
      re, im       floats; im may be omitted and defaults to 0.0

  StateFile (.qs)
    version        must be 1
    factorization  as above
    amplitudes     list of records; every index not listed is zero
      index        1-based detector indices, one component per screen
      re, im       as above

Canonical serialization sorts entries by flattened (bra, ket) position, omits
exact zeros, and prints reals with 17 significant digits, so a canonical file
round-trips byte for byte and values round-trip exactly. Duplicate (bra, ket)
pairs or duplicate amplitude indices are rejected. State amplitudes must have
norm 1 within a loose load tolerance; a vector whose norm is off by more than
a machine-level threshold is renormalized on load, anything closer keeps its
stored values so round trips stay exact.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from . import tolerances
from .arrangement import ExperimentalArrangement, require_valid, validate_isa
from .errors import ParseError, ValidationError
from .screens import ScreenConfiguration
from .tensor import DenseOperatorTensor

FORMAT_VERSION = 1


def _fmt_real(x: float) -> str:
    return f"{float(x):.17g}"


def _reject_constant(text: str) -> None:
    raise ParseError(f"non-finite literal {text!r} is not allowed")


def _load_object(text: str, kind: str) -> dict:
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ParseError(f"{kind}: invalid syntax at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{kind}: top level must be an object")
    return data


def _require(data: dict, field: str, kind: str) -> object:
    if field not in data:
        raise ParseError(f"{kind}: missing field {field!r}")
    return data[field]


def _check_version(data: dict, kind: str) -> None:
    version = _require(data, "version", kind)
    if version != FORMAT_VERSION:
        raise ParseError(f"{kind}: unsupported version {version!r}, expected {FORMAT_VERSION}")


def _read_factorization(data: dict, kind: str) -> ScreenConfiguration:
    raw = _require(data, "factorization", kind)
    if not isinstance(raw, list) or not raw or not all(isinstance(c, int) and not isinstance(c, bool) for c in raw):
        raise ParseError(f"{kind}: factorization must be a nonempty list of integers")
    return ScreenConfiguration(tuple(raw))


def _read_index(record: dict, field: str, shape: ScreenConfiguration, where: str) -> int:
    raw = record.get(field)
    if not isinstance(raw, list) or not all(isinstance(k, int) and not isinstance(k, bool) for k in raw):
        raise ParseError(f"{where}.{field} must be a list of integers")
    return shape.flat_index(raw)


def _read_real(record: dict, field: str, where: str, default: float | None = None) -> float:
    if field not in record:
        if default is None:
            raise ParseError(f"{where}.{field} is missing")
        return default
    raw = record[field]
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ParseError(f"{where}.{field} must be a number")
    return float(raw)


def parse_arrangement(text: str, validate: bool = True) -> ExperimentalArrangement:
    """Parse .ea text. With validate=False the structural checks still run
    but the arrangement may violate trace or positivity (useful for
    inspecting candidate files)."""
    data = _load_object(text, "arrangement file")
    _check_version(data, "arrangement file")
    shape = _read_factorization(data, "arrangement file")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("arrangement file: label must be a string")
    raw_entries = _require(data, "entries", "arrangement file")
    if not isinstance(raw_entries, list):
        raise ParseError("arrangement file: entries must be a list")
    n = shape.dimension
    matrix = np.zeros((n, n), dtype=np.complex128)
    seen: set[tuple[int, int]] = set()
    for pos, record in enumerate(raw_entries):
        where = f"entries[{pos}]"
        if not isinstance(record, dict):
            raise ParseError(f"{where} must be an object")
        bra = _read_index(record, "bra", shape, where)
        ket = _read_index(record, "ket", shape, where)
        if (bra, ket) in seen:
            raise ParseError(f"{where}: duplicate entry for bra index {record['bra']}, ket index {record['ket']}")
        seen.add((bra, ket))
        re = _read_real(record, "re", where)
        im = _read_real(record, "im", where, default=0.0)
        matrix[bra, ket] = complex(re, im)
    ea = ExperimentalArrangement(DenseOperatorTensor(shape, matrix), label)
    if validate:
        require_valid(ea)
    return ea


def serialize_arrangement(ea: ExperimentalArrangement) -> str:
    """Canonical .ea text for a valid arrangement."""
    report = validate_isa(ea)
    if not report.valid:
        raise ValidationError(
            "refusing to serialize an invalid arrangement: " + ", ".join(report.failures())
        )
    shape = ea.shape
    lines = ["{"]
    lines.append(f'  "version": {FORMAT_VERSION},')
    lines.append('  "factorization": [' + ", ".join(map(str, shape.detector_counts)) + "],")
    if ea.label is not None:
        lines.append(f'  "label": {json.dumps(ea.label)},')
    entries = []
    a = ea.alpha.entries
    for bra in range(shape.dimension):
        for ket in range(shape.dimension):
            value = a[bra, ket]
            if value == 0:
                continue
            bra_idx = list(shape.multi_index(bra))
            ket_idx = list(shape.multi_index(ket))
            entries.append(
                '    {"bra": ' + json.dumps(bra_idx)
                + ', "ket": ' + json.dumps(ket_idx)
                + ', "re": ' + _fmt_real(value.real)
                + ', "im": ' + _fmt_real(value.imag) + "}"
            )
    if entries:
        lines.append('  "entries": [')
        lines.append(",\n".join(entries))
        lines.append("  ]")
    else:
        lines.append('  "entries": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> tuple[np.ndarray, ScreenConfiguration, str | None]:
    """Parse .qs text into (amplitudes, configuration, label).

    Amplitudes are renormalized after the load-tolerance norm check.
    """
    data = _load_object(text, "state file")
    _check_version(data, "state file")
    shape = _read_factorization(data, "state file")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("state file: label must be a string")
    raw = _require(data, "amplitudes", "state file")
    if not isinstance(raw, list):
        raise ParseError("state file: amplitudes must be a list")
    v = np.zeros(shape.dimension, dtype=np.complex128)
    seen: set[int] = set()
    for pos, record in enumerate(raw):
        where = f"amplitudes[{pos}]"
        if not isinstance(record, dict):
            raise ParseError(f"{where} must be an object")
        flat = _read_index(record, "index", shape, where)
        if flat in seen:
            raise ParseError(f"{where}: duplicate amplitude for index {record['index']}")
        seen.add(flat)
        re = _read_real(record, "re", where)
        im = _read_real(record, "im", where, default=0.0)
        v[flat] = complex(re, im)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tolerances.FILE_NORM_TOL:
        raise ValidationError(f"state file: norm is {norm!r}, expected 1 within {tolerances.FILE_NORM_TOL}")
    if abs(norm - 1.0) > tolerances.FILE_RENORM_EPS:
        v = v / norm
    return v, shape, label


def serialize_state(
    amplitudes: Sequence[complex] | np.ndarray,
    shape: ScreenConfiguration,
    label: str | None = None,
) -> str:
    """Canonical .qs text."""
    v = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if v.size != shape.dimension:
        raise ValidationError(
            f"amplitude vector has length {v.size}, expected {shape.dimension}"
        )
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tolerances.FILE_NORM_TOL:
        raise ValidationError(f"state norm is {norm!r}, expected 1")
    lines = ["{"]
    lines.append(f'  "version": {FORMAT_VERSION},')
    lines.append('  "factorization": [' + ", ".join(map(str, shape.detector_counts)) + "],")
    if label is not None:
        lines.append(f'  "label": {json.dumps(label)},')
    records = []
    for flat in range(shape.dimension):
        value = v[flat]
        if value == 0:
            continue
        records.append(
            '    {"index": ' + json.dumps(list(shape.multi_index(flat)))
            + ', "re": ' + _fmt_real(value.real)
            + ', "im": ' + _fmt_real(value.imag) + "}"
        )
    if records:
        lines.append('  "amplitudes": [')
        lines.append(",\n".join(records))
        lines.append("  ]")
    else:
        lines.append('  "amplitudes": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_arrangement(path: str, validate: bool = True) -> ExperimentalArrangement:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return parse_arrangement(text, validate=validate)


def write_arrangement(path: str, ea: ExperimentalArrangement) -> None:
    text = serialize_arrangement(ea)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def read_state(path: str) -> tuple[np.ndarray, ScreenConfiguration, str | None]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return parse_state(text)


def write_state(
    path: str,
    amplitudes: Sequence[complex] | np.ndarray,
    shape: ScreenConfiguration,
    label: str | None = None,
) -> None:
    text = serialize_state(amplitudes, shape, label)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
