"""Reading typed input documents and writing stable JSON reports."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import DocumentError

SCHEMA_VERSION = 1

KNOWN_TYPES = ("seifert", "two-component", "braid", "ccomplex", "certificate", "fusion")


def load_document(path: str | Path, expected: str | tuple[str, ...]) -> dict:
    """Parse a JSON document and check its ``type`` tag."""
    expected = (expected,) if isinstance(expected, str) else expected
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: top level must be an object")
    kind = doc.get("type")
    if kind not in expected:
        raise DocumentError(f"{path}: document type {kind!r}, expected {' or '.join(map(repr, expected))}")
    return doc


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, ASCII only, trailing newline.

    Reports contain only strings, ints, booleans and nulls, so parsing and
    re-serialising an emitted report is byte-identical.
    """
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def envelope(command: str, result: Any) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
