"""Collects the per-criterion summary lines for the end-of-session report."""

LINES: dict[int, list[str]] = {}


def record(number: int, line: str):
    LINES.setdefault(number, []).append(line)
