"""Wire-format schemas: the prompt JSON consumed and the metadata JSON emitted.

The prompt document is exactly what the ridgeprompt pipeline writes:
points/labels arrays plus seed and provenance. Validation failures are fatal
and carry the jsonschema diagnostic path so a malformed producer is easy to
locate.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

PROMPT_SCHEMA = {
    "type": "object",
    "required": ["points", "labels"],
    "properties": {
        "points": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "integer", "minimum": 0},
            },
        },
        "labels": {"type": "array", "items": {"type": "integer"}},
        "seed": {"type": "integer"},
        "provenance": {"type": "array"},
    },
}

METADATA_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["point", "mask", "pred_iou", "stability", "kept", "reject_reason"],
        "properties": {
            "point": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "integer"},
            },
            "mask": {"type": ["string", "null"]},
            "pred_iou": {"type": "number", "minimum": 0, "maximum": 1},
            "stability": {"type": "number", "minimum": 0, "maximum": 1},
            "kept": {"type": "boolean"},
            "reject_reason": {"type": ["string", "null"]},
        },
    },
}


class PromptSchemaError(ValueError):
    """The prompt JSON does not match the interchange schema."""


def load_prompts(path) -> list[tuple[int, int]]:
    """Read and validate a prompt JSON file, returning its (x, y) points."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PromptSchemaError(f"{path}: not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, PROMPT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise PromptSchemaError(f"{path}: schema violation at {where}: {exc.message}") from exc
    if len(doc["points"]) != len(doc["labels"]):
        raise PromptSchemaError(f"{path}: points and labels lengths differ")
    return [(int(x), int(y)) for x, y in doc["points"]]


def validate_metadata(records: list[dict]) -> None:
    jsonschema.validate(records, METADATA_SCHEMA)
