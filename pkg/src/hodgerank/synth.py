"""Seeded synthetic interaction corpora.

Every generator returns plain interaction lists (node sets) or an
:class:`~hodgerank.ingest.InteractionLog`, so the output can be written with
:func:`write_simplices` / :func:`write_pairs` and fed back through the
ordinary ingest path.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .complex import SimplicialComplex, build_complex
from .ingest import InteractionLog


def barbell(m: int = 5) -> list[list[int]]:
    """Two filled ``K_m`` joined by the edge ``{m - 1, m}``."""
    return [list(range(m)), list(range(m, 2 * m)), [m - 1, m]]


def cycle(k: int, start: int = 0) -> list[list[int]]:
    """Chordless ``k``-cycle as pairwise interactions."""
    return [[start + i, start + (i + 1) % k] for i in range(k)]


def path(k: int) -> list[list[int]]:
    return [[i, i + 1] for i in range(k - 1)]


def complete_graph(m: int) -> list[list[int]]:
    """``K_m`` as pairwise interactions (no triangles)."""
    return [list(p) for p in combinations(range(m), 2)]


def random_complex(n: int, p: float, fill: float, rng) -> SimplicialComplex:
    """Erdős–Rényi ``G(n, p)`` with each graph triangle filled with probability ``fill``.

    Isolated nodes are dropped. Returns ``None`` when the graph has no edges.
    """
    rng = np.random.default_rng(rng)
    A = np.triu(rng.random((n, n)) < p, 1)
    edges = [tuple(e) for e in np.argwhere(A).tolist()]
    if not edges:
        return None
    adj = A | A.T
    tris = [
        [u, v, w]
        for u, v in edges
        for w in np.flatnonzero(adj[u] & adj[v]).tolist()
        if w > v and rng.random() < fill
    ]
    return build_complex([list(e) for e in edges] + tris)


class _Builder:
    def __init__(self, rng):
        self.rng = rng
        self.next = 0
        self.records: list[list[int]] = []

    def nodes(self, k: int) -> list[int]:
        out = list(range(self.next, self.next + k))
        self.next += k
        return out

    def add(self, rec, count: int = 1):
        # repeated records carry the frequency
        self.records.extend([sorted(rec)] * int(count))

    def clique(self, size: int) -> list[int]:
        nodes = self.nodes(size)
        self.add(nodes)
        return nodes


def bridge_suite(seed: int = 0, min_per_class: int = 300) -> list[list[int]]:
    """Network families with planted global bridges, local bridges and embedded edges.

    * chains of filled cliques joined by single edges, plus pendant edges
      (global bridges; clique edges are neither),
    * chordless cycles of length 4 to 8 hanging off a clique by one node
      (local bridges),
    * rings of 3 to 5 cliques joined by single edges (local bridges).
    """
    rng = np.random.default_rng(seed)
    b = _Builder(rng)
    n_global = n_local = n_neither = 0
    while min(n_global, n_local, n_neither) < min_per_class:
        # clique chain
        k = int(rng.integers(3, 7))
        cliques = [b.clique(int(rng.integers(4, 7))) for _ in range(k)]
        n_neither += sum(len(c) * (len(c) - 1) // 2 for c in cliques)
        for c1, c2 in zip(cliques, cliques[1:]):
            b.add([int(rng.choice(c1)), int(rng.choice(c2))])
            n_global += 1
        for _ in range(int(rng.integers(1, 4))):
            b.add([int(rng.choice(cliques[int(rng.integers(k))])), b.nodes(1)[0]])
            n_global += 1
        # chordless cycle through one clique node
        L = int(rng.integers(4, 9))
        anchor = int(rng.choice(cliques[int(rng.integers(k))]))
        ring = [anchor, *b.nodes(L - 1)]
        for i in range(L):
            b.add([ring[i], ring[(i + 1) % L]])
        n_local += L
        # ring of cliques
        r = int(rng.integers(3, 6))
        ring_cliques = [b.clique(int(rng.integers(4, 6))) for _ in range(r)]
        n_neither += sum(len(c) * (len(c) - 1) // 2 for c in ring_cliques)
        for i in range(r):
            a, z = ring_cliques[i], ring_cliques[(i + 1) % r]
            b.add([a[-1], z[0]])
        n_local += r
        # attach the ring to the chain by a global bridge
        b.add([int(rng.choice(cliques[-1])), ring_cliques[0][1]])
        n_global += 1
    return b.records


def tie_strength_corpus(seed: int = 0, communities: int = 48) -> InteractionLog:
    """Interaction log whose pair frequencies follow a planted tie-strength model.

    Communities of 8 to 12 nodes carry repeated three-way group interactions
    (strong, frequency grows with the number of groups an edge belongs to)
    and sparse one-off pairwise contacts (weak). Contacts whose endpoints
    share no neighbor inside the community are short-range local bridges and
    are the weakest. Communities are joined in rings by single long-range
    edges and the rings are joined by global bridges; both are strong.
    """
    rng = np.random.default_rng(seed)
    b = _Builder(rng)
    groups = []
    for _ in range(communities):
        size = int(rng.integers(8, 13))
        nodes = b.nodes(size)
        groups.append(nodes)
        for _ in range(int(rng.integers(size // 2, size))):
            tri = sorted(rng.choice(nodes, size=3, replace=False).tolist())
            b.add(tri, count=1 + rng.poisson(3.0))
        for u, v in combinations(nodes, 2):
            if rng.random() < 0.12:
                b.add([u, v], count=1)

    # rings of 4 to 6 communities; rings chained by global bridges
    order = rng.permutation(communities).tolist()
    rings = []
    while order:
        k = min(int(rng.integers(4, 7)), len(order))
        rings.append(order[:k])
        order = order[k:]
    for ring in rings:
        if len(ring) >= 3:
            for i in range(len(ring)):
                u = int(rng.choice(groups[ring[i]]))
                v = int(rng.choice(groups[ring[(i + 1) % len(ring)]]))
                b.add([u, v], count=4 + rng.poisson(4.0))
    for r1, r2 in zip(rings, rings[1:]):
        u = int(rng.choice(groups[r1[-1]]))
        v = int(rng.choice(groups[r2[0]]))
        b.add([u, v], count=4 + rng.poisson(4.0))
    # leaf contacts: strong one-to-one ties outside any group
    for g in groups:
        for _ in range(int(rng.integers(0, 2))):
            b.add([int(rng.choice(g)), b.nodes(1)[0]], count=4 + rng.poisson(4.0))
    return InteractionLog.from_records(b.records)


def write_simplices(records, fh) -> None:
    for r in records:
        fh.write(" ".join(str(int(u)) for u in r) + "\n")


def write_pairs(log: InteractionLog, fh) -> None:
    """Pair list ``u v count`` from the log's pair counts (group structure is lost)."""
    for (u, v), k in sorted(log.pair_counts.items()):
        fh.write(f"{u} {v} {k}\n")
