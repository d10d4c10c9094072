"""Loader for the shipped polynomial tables (tables/*.poly).

Each file starts with a ``vars:`` header naming the variable list, then
named entries::

    vars: p3 p6 p9 p12 p15 s6

    m1:
    -5*p3^2 + 6*p6 - 180*s6

The tables are claims under test: the verification suites re-derive or
cross-check every entry, so a corrupt file shows up as a reported
mismatch, never as silent acceptance.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .mpoly import QQ, ParseError, Polynomial, parse_polynomial

__all__ = ["TableError", "load_table", "table_entry", "table_path"]


class TableError(ValueError):
    pass


def table_path(name: str) -> str:
    return f"tables/{name}.poly"


def _read(name: str) -> str:
    try:
        return (resources.files("st34") / table_path(name)).read_text()
    except FileNotFoundError:
        raise TableError(f"missing data file {table_path(name)!r}") from None


@lru_cache(maxsize=None)
def load_table(name: str) -> dict[str, Polynomial]:
    """All entries of tables/<name>.poly as polynomials over Q."""
    text = _read(name)
    lines = text.splitlines()
    if not lines or not lines[0].startswith("vars:"):
        raise TableError(f"{table_path(name)}: missing 'vars:' header")
    variables = tuple(lines[0][5:].split())
    entries: dict[str, Polynomial] = {}
    current: str | None = None
    body: list[str] = []

    def flush():
        if current is None:
            return
        src = " ".join(body).strip()
        if not src:
            raise TableError(f"{table_path(name)}: entry {current!r} is empty")
        try:
            entries[current] = parse_polynomial(src, QQ, variables)
        except ParseError as exc:
            raise TableError(f"{table_path(name)}: entry {current!r}: {exc}") from None

    for ln in lines[1:]:
        stripped = ln.strip()
        if stripped.startswith("#") or not stripped:
            continue
        if stripped.endswith(":") and stripped[:-1].isidentifier():
            flush()
            current = stripped[:-1]
            body = []
        else:
            if current is None:
                raise TableError(f"{table_path(name)}: content before first entry")
            body.append(stripped)
    flush()
    if not entries:
        raise TableError(f"{table_path(name)}: no entries")
    return entries


def table_entry(name: str, entry: str) -> Polynomial:
    table = load_table(name)
    if entry not in table:
        raise TableError(f"{table_path(name)} has no entry {entry!r} (has {sorted(table)})")
    return table[entry]
