"""Reading interaction data and deriving tie-strength labels.

Input files are UTF-8 text with whitespace-separated integer node ids; blank
lines and lines starting with ``#`` are ignored.

``simplex``
    one interaction per line: ``u v [w ...]``.
``pairs``
    one pairwise event per line: ``u v [count] [timestamp]``.
``nverts`` (directory or file prefix)
    the three-file layout ``<name>-nverts.txt`` (simplex sizes),
    ``<name>-simplices.txt`` (one node per line, concatenated) and optional
    ``<name>-times.txt``, as used by public higher-order network corpora.
Label files hold ``u v label`` per line.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np

from .complex import SimplicialComplex, build_complex, fill_triangles


class ParseError(ValueError):
    pass


FORMATS = {"simplex": "simplex", "simplex-per-line": "simplex", "pairs": "pairs", "pair-list-with-timestamp": "pairs"}


@dataclass
class InteractionLog:
    """Interaction records plus co-occurrence counts per unordered pair."""

    records: list[tuple[int, ...]]
    timestamps: list[float | None] = field(default_factory=list)
    pair_counts: Counter = field(default_factory=Counter)

    @classmethod
    def from_records(cls, records, counts=None) -> "InteractionLog":
        """Build a log from node sets; each record adds ``counts[i]`` (default 1) to its pairs."""
        recs, pc = [], Counter()
        for i, r in enumerate(records):
            nodes = tuple(sorted(set(int(u) for u in r)))
            if len(nodes) < 2:
                raise ParseError(f"record {i + 1}: fewer than 2 distinct nodes")
            recs.append(nodes)
            k = 1 if counts is None else int(counts[i])
            for p in combinations(nodes, 2):
                pc[p] += k
        return cls(recs, [None] * len(recs), pc)

    def complex(self, max_dim: int = 2) -> SimplicialComplex:
        return build_complex(self.records, max_dim=max_dim)


def _tokens(path: Path):
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        yield lineno, s.split()


def _window_records(events, window: float):
    """Pairs seen in the same time window form edges; mutual triples form triangles."""
    buckets = defaultdict(set)
    for u, v, ts in events:
        if ts is None:
            raise ParseError("windowing requires a timestamp on every event")
        buckets[math.floor(ts / window)].add((min(u, v), max(u, v)))
    records, stamps = [], []
    for b in sorted(buckets):
        pairs = buckets[b]
        nbrs = defaultdict(set)
        for u, v in pairs:
            nbrs[u].add(v)
            nbrs[v].add(u)
        records.extend(sorted(pairs))
        stamps.extend([b * window] * len(pairs))
        tris = sorted({tuple(sorted((u, v, w))) for u, v in pairs for w in nbrs[u] & nbrs[v]})
        records.extend(tris)
        stamps.extend([b * window] * len(tris))
    return records, stamps


def parse_interactions(path, format: str = "simplex", *, window: float | None = None) -> InteractionLog:
    """Parse an interaction file.

    Pair counts add one per record for ``simplex`` input and ``count`` per
    line for ``pairs`` input. With ``window`` (``pairs`` only) events are
    grouped into windows of that length: every pair in a window becomes an
    edge record and every triple of mutually interacting nodes within a
    window becomes a triangle record; pair counts still come from the raw
    events.
    """
    try:
        fmt = FORMATS[format]
    except KeyError:
        raise ParseError(f"unknown format {format!r}; choose from {sorted(FORMATS)}") from None

    records, stamps, pc, events = [], [], Counter(), []
    for lineno, toks in _tokens(path):
        try:
            if fmt == "simplex":
                nodes = tuple(sorted({int(t) for t in toks}))
                if len(nodes) < 2:
                    raise ParseError(f"line {lineno}: interaction needs at least 2 distinct nodes")
                records.append(nodes)
                stamps.append(None)
                for p in combinations(nodes, 2):
                    pc[p] += 1
            else:
                if not 2 <= len(toks) <= 4:
                    raise ParseError(f"line {lineno}: expected 'u v [count] [timestamp]', got {len(toks)} fields")
                u, v = int(toks[0]), int(toks[1])
                if u == v:
                    raise ParseError(f"line {lineno}: self-loop {u} {v}")
                count = int(toks[2]) if len(toks) >= 3 else 1
                if count < 1:
                    raise ParseError(f"line {lineno}: count must be >= 1")
                ts = float(toks[3]) if len(toks) == 4 else None
                records.append((min(u, v), max(u, v)))
                stamps.append(ts)
                pc[(min(u, v), max(u, v))] += count
                events.append((u, v, ts))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if not records:
        raise ParseError(f"{path}: no interactions found")
    if window is not None:
        if fmt != "pairs":
            raise ParseError("windowing applies to pair-list input only")
        records, stamps = _window_records(events, window)
    return InteractionLog(records, stamps, pc)


def _nverts_paths(prefix) -> tuple[Path, Path, Path]:
    p = Path(prefix)
    if p.is_dir():
        found = sorted(p.glob("*-nverts.txt"))
        if len(found) != 1:
            raise ParseError(f"{p}: expected exactly one '*-nverts.txt' file, found {len(found)}")
        p = Path(str(found[0])[: -len("-nverts.txt")])
    return (Path(f"{p}-nverts.txt"), Path(f"{p}-simplices.txt"), Path(f"{p}-times.txt"))


def _ints(path: Path, kind=int) -> list:
    out = []
    for lineno, toks in _tokens(path):
        if len(toks) != 1:
            raise ParseError(f"{path} line {lineno}: expected one value per line")
        try:
            out.append(kind(toks[0]))
        except ValueError as exc:
            raise ParseError(f"{path} line {lineno}: {exc}") from None
    return out


def parse_nverts(prefix, *, max_size: int | None = None) -> InteractionLog:
    """Read the ``-nverts`` / ``-simplices`` / ``-times`` file triple.

    Size-1 simplices are dropped (they carry no pair). With ``max_size`` only
    simplices with at most that many distinct nodes are kept.
    """
    f_nv, f_simp, f_times = _nverts_paths(prefix)
    sizes = _ints(f_nv)
    nodes = _ints(f_simp)
    if sum(sizes) != len(nodes):
        raise ParseError(f"{f_nv}: sizes sum to {sum(sizes)} but {f_simp} lists {len(nodes)} nodes")
    times = _ints(f_times, float) if f_times.exists() else [None] * len(sizes)
    if len(times) != len(sizes):
        raise ParseError(f"{f_times}: {len(times)} timestamps for {len(sizes)} simplices")
    records, stamps, pc = [], [], Counter()
    pos = 0
    for k, ts in zip(sizes, times):
        rec = tuple(sorted(set(nodes[pos : pos + k])))
        pos += k
        if len(rec) < 2 or (max_size is not None and len(rec) > max_size):
            continue
        records.append(rec)
        stamps.append(ts)
        for p in combinations(rec, 2):
            pc[p] += 1
    if not records:
        raise ParseError(f"{prefix}: no interactions found")
    return InteractionLog(records, stamps, pc)


def tie_strength_labels(
    log: InteractionLog | None, c: SimplicialComplex, scheme: str = "log-frequency", path=None
) -> np.ndarray:
    """Per-edge tie strength aligned with ``c.edges``.

    ``log-frequency`` is the natural log of the pair count; ``explicit-column``
    reads ``u v label`` lines from ``path``.
    """
    pairs = [tuple(int(a) for a in p) for p in c.edge_labels()]
    if scheme == "log-frequency":
        missing = [p for p in pairs if log.pair_counts.get(p, 0) < 1]
        if missing:
            raise ValueError(f"no interaction count for edges {missing[:10]}")
        return np.log(np.array([log.pair_counts[p] for p in pairs], dtype=float))
    if scheme == "explicit-column":
        table = {}
        for lineno, toks in _tokens(path):
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: expected 'u v label'")
            try:
                u, v, val = int(toks[0]), int(toks[1]), float(toks[2])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            table[(min(u, v), max(u, v))] = val
        missing = [p for p in pairs if p not in table]
        if missing:
            raise ValueError(f"label file lacks {len(missing)} edge(s): {missing}")
        return np.array([table[p] for p in pairs])
    raise ValueError(f"unknown scheme {scheme!r}")


def filled_variant(log: InteractionLog) -> SimplicialComplex:
    """Complex from pairwise information only, with every graph triangle filled."""
    return fill_triangles(log.complex(max_dim=1))
