"""JSON and plain-text rendering of result records."""

from __future__ import annotations

import json

RESULT_VERSION = 1


def to_document(records) -> dict:
    return {"version": RESULT_VERSION, "results": [r.to_json() for r in records]}


def emit_json(records) -> str:
    return json.dumps(to_document(records), indent=2, ensure_ascii=True) + "\n"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=True)
    return str(value)


def _table(pairs, indent: str = "  ") -> list[str]:
    if not pairs:
        return []
    width = max(len(k) for k, _ in pairs)
    return [f"{indent}{k.ljust(width)}  {v}".rstrip() for k, v in pairs]


def emit_text(records) -> str:
    lines = []
    for r in records:
        lines.append(f"[{r.index}] line {r.line}: {r.command}  {r.status}")
        if r.ok:
            pairs = [(k, _cell(v)) for k, v in (r.result or {}).items()]
        else:
            pairs = [("error", r.error["type"]), ("message", r.error["message"])]
        if r.wall_ms is not None:
            pairs.append(("wall_ms", _cell(r.wall_ms)))
        lines.extend(_table(pairs))
    return "".join(line + "\n" for line in lines)


def emit(records, fmt: str = "json") -> str:
    if fmt == "json":
        return emit_json(records)
    if fmt == "text":
        return emit_text(records)
    raise ValueError(f"unknown format {fmt!r}")
