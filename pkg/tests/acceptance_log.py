"""Collects one PASS/FAIL line per acceptance criterion."""

LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}"
    if detail:
        line += f"  ({detail})"
    LINES.append(line)
    print(line)
    assert ok, line
