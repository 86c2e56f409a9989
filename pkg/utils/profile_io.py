"""Read and write transform profiles as key=value text."""
from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import ValidationError

from errors import ProfileError
from transform import Profile

PROFILE_KEYS = (
    "mode",
    "base_case_threshold",
    "max_depth",
    "chunk_count",
    "short_length",
    "inner_m",
    "inner_a",
)
STRING_KEYS = {"mode"}


def _parse_value(key: str, raw: str, lineno: int) -> Any:
    if key in STRING_KEYS:
        return raw
    if raw.lower() in ("", "none"):
        return None
    try:
        return int(raw, 0)
    except ValueError as exc:
        raise ProfileError(f"line {lineno}: {key} expects an integer, got {raw!r}") from exc


def parse_profile_text(text: str) -> Profile:
    values: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ProfileError(f"line {lineno}: expected key=value, got {line.strip()!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in PROFILE_KEYS:
            raise ProfileError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ProfileError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, raw, lineno)
    try:
        return Profile(**values)
    except ValidationError as exc:
        raise ProfileError(f"invalid profile: {exc.errors()[0]['msg']}") from exc


def format_profile(profile: Profile) -> str:
    lines = []
    for key in PROFILE_KEYS:
        value = getattr(profile, key)
        lines.append(f"{key}={'none' if value is None else value}")
    return "\n".join(lines) + "\n"


def load_profile(path: Optional[Union[str, Path]]) -> Profile:
    """Profile from ``path``; the default test-scale profile when path is None."""
    if path is None:
        return Profile()
    target = Path(path)
    if not target.is_file():
        raise ProfileError(f"profile file not found: {target}")
    return parse_profile_text(target.read_text(encoding="utf-8"))
