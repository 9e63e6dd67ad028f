"""Parsing and serialization of hypergraphs.

Text format, one logical record per line, '#' starts a comment:

    k=3 sizes=1,1,1
    e 0:0 1:0 2:0

A JSON mirror {"k": ..., "sizes": [...], "edges": [[[c, i], ...], ...]} is
accepted interchangeably; the detector looks at the first non-space byte.
Serialization is canonical (sorted edges), so equal hypergraphs always
produce byte-identical text and digests.
"""

from __future__ import annotations

import hashlib
import json
import sys
from typing import Optional, TextIO, Union

from .errors import InputError
from .hypergraph import Hypergraph, Vertex


def parse_text(text: str) -> Hypergraph:
    k = None
    sizes = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("k="):
            if k is not None:
                raise InputError(f"line {lineno}: duplicate header")
            try:
                fields = dict(part.split("=", 1) for part in line.split())
                k = int(fields["k"])
                sizes = tuple(int(x) for x in fields["sizes"].split(","))
            except (KeyError, ValueError) as exc:
                raise InputError(f"line {lineno}: bad header {line!r}: {exc}")
        elif line.startswith("e "):
            if k is None:
                raise InputError(f"line {lineno}: edge before header")
            toks = line.split()[1:]
            if len(toks) != k:
                raise InputError(
                    f"line {lineno}: edge has {len(toks)} vertices, expected {k}")
            edge = []
            for tok in toks:
                try:
                    c, i = tok.split(":")
                    edge.append(Vertex(int(c), int(i)))
                except ValueError:
                    raise InputError(f"line {lineno}: bad vertex token {tok!r}")
            for v in edge:
                if not (0 <= v.cls < k and 0 <= v.idx < sizes[v.cls]):
                    raise InputError(f"line {lineno}: vertex {v} out of range")
            if sorted(v.cls for v in edge) != list(range(k)):
                raise InputError(
                    f"line {lineno}: edge must meet every class exactly once")
            key = tuple(sorted(edge))
            if key in seen:
                raise InputError(f"line {lineno}: duplicate edge")
            seen.add(key)
            edges.append(tuple(edge))
        else:
            raise InputError(f"line {lineno}: unrecognized record {line!r}")
    if k is None:
        raise InputError("missing header line 'k=<int> sizes=...'")
    try:
        return Hypergraph(k, sizes, tuple(edges))
    except InputError as exc:
        raise InputError(f"invalid hypergraph: {exc}")


def parse_json(text: str) -> Hypergraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON: {exc}")
    for key in ("k", "sizes", "edges"):
        if key not in obj:
            raise InputError(f"JSON input missing key {key!r}")
    try:
        return Hypergraph.build(int(obj["k"]),
                                [int(s) for s in obj["sizes"]],
                                [[(int(c), int(i)) for c, i in e]
                                 for e in obj["edges"]])
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad JSON hypergraph: {exc}")


def loads(text: str) -> Hypergraph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(text)
    return parse_text(text)


def load(source: Union[str, TextIO, None] = None) -> Hypergraph:
    """Read from a path, an open stream, '-' or None for stdin."""
    if source is None or source == "-":
        return loads(sys.stdin.read())
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            return loads(fh.read())
    return loads(source.read())


def serialize_text(G: Hypergraph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"k={G.k} sizes=" + ",".join(str(s) for s in G.sizes))
    for e in G.edges:
        lines.append("e " + " ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def serialize_json(G: Hypergraph) -> str:
    return json.dumps({
        "k": G.k,
        "sizes": list(G.sizes),
        "edges": [[[v.cls, v.idx] for v in e] for e in G.edges],
    })


def digest(G: Hypergraph) -> str:
    """SHA-256 of the canonical text serialization."""
    return hashlib.sha256(serialize_text(G).encode()).hexdigest()
