"""Loading group and cocycle descriptions from JSON files or the bundled set."""

from __future__ import annotations

import hashlib
import json
from importlib import resources

from .cocycle import Cocycle, cocycle_from_spec
from .group_core import Group, from_spec

BUNDLED_PREFIX = "bundled:"


class SpecError(ValueError):
    pass


def bundled_names() -> list[str]:
    root = resources.files("twistgrade.data")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_text(ref: str) -> str:
    """Text of a spec given as a path or as bundled:name."""
    if ref.startswith(BUNDLED_PREFIX):
        name = ref[len(BUNDLED_PREFIX):]
        if name not in bundled_names():
            raise SpecError(f"no bundled spec named {name!r}; available: {', '.join(bundled_names())}")
        return resources.files("twistgrade.data").joinpath(f"{name}.json").read_text()
    try:
        with open(ref, encoding="utf-8") as f:
            return f.read()
    except OSError as exc:
        raise SpecError(f"cannot read {ref}: {exc.strerror}") from exc


def load_document(ref: str) -> dict:
    text = read_text(ref)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{ref}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SpecError(f"{ref}: expected a JSON object")
    return doc


def digest(ref: str) -> str:
    return hashlib.sha256(read_text(ref).encode()).hexdigest()


def load_group(ref: str) -> Group:
    doc = load_document(ref)
    return from_spec(doc["group"] if "group" in doc else doc)


def load_cocycle(ref: str, G: Group) -> Cocycle:
    doc = load_document(ref)
    if "cocycle" in doc:
        doc = doc["cocycle"]
    return cocycle_from_spec(doc, G)
