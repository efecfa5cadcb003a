"""Minimal Graphviz DOT writer."""

from __future__ import annotations

from typing import Iterable, Mapping


def quote(text: object) -> str:
    s = str(text).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def _attrs(attrs: Mapping[str, object] | None) -> str:
    if not attrs:
        return ""
    body = ", ".join(f"{k}={quote(v)}" for k, v in sorted(attrs.items()))
    return f" [{body}]"


def render(
    name: str,
    nodes: Iterable[tuple[str, Mapping[str, object] | None]],
    edges: Iterable[tuple[str, str, Mapping[str, object] | None]],
    graph_attrs: Mapping[str, object] | None = None,
    ranks: Iterable[Iterable[str]] = (),
) -> str:
    """Render a digraph.  Node ids are quoted, so any string is allowed."""
    lines = [f"digraph {quote(name)} {{"]
    for k, v in sorted((graph_attrs or {}).items()):
        lines.append(f"  {k}={quote(v)};")
    for node, attrs in nodes:
        lines.append(f"  {quote(node)}{_attrs(attrs)};")
    for a, b, attrs in edges:
        lines.append(f"  {quote(a)} -> {quote(b)}{_attrs(attrs)};")
    for group in ranks:
        members = " ".join(quote(g) for g in group)
        lines.append(f"  {{ rank=same; {members} }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
