"""Seeded graph generators and the exhaustive small-graph corpus."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .core import Digraph, _trusted, is_single_entrance_exit


def random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    """Each ordered pair ``u != v`` becomes an arc with probability ``p``."""
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return _trusted(n, arcs)


def random_digraphs(seed: int, count: int, max_n: int, min_n: int = 1):
    """``count`` random digraphs with ``min_n <= n <= max_n`` and varied density."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        yield random_digraph(rng, n, rng.choice((0.15, 0.25, 0.35, 0.5, 0.7)))


def random_single_entrance_exit(
    rng: random.Random, n: int, p: float, tries: int = 1000, acyclic: bool = False
) -> Digraph | None:
    """Rejection-sample a single-entrance/exit digraph on ``n`` vertexes.

    Vertex 0 is the entrance and ``n-1`` the exit.  With ``acyclic`` inner
    arcs only run from smaller to larger ids, the entrance feeds vertex 1 and
    vertex ``n-2`` feeds the exit.  Returns ``None`` if no sample
    is accepted within ``tries`` draws.
    """
    if n == 2:
        return _trusted(2, [(0, 1)])
    inner = list(range(1, n - 1))
    for _ in range(tries):
        if acyclic:
            arcs = [(0, 1), (n - 2, n - 1)]
        else:
            arcs = [(0, rng.choice(inner)), (rng.choice(inner), n - 1)]
        arcs += [
            (u, v) for u in inner for v in inner
            if (u < v if acyclic else u != v) and rng.random() < p
        ]
        g = _trusted(n, arcs)
        if is_single_entrance_exit(g):
            return g
    return None


def _canonical(n: int, arcs: tuple[tuple[int, int], ...], perms) -> tuple:
    best = None
    for perm in perms:
        key = tuple(sorted((perm[u], perm[v]) for u, v in arcs))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def single_entrance_exit_graphs(n: int) -> tuple[Digraph, ...]:
    """Every single-entrance/exit digraph on ``n`` vertexes, one per isomorphism class.

    The entrance is vertex 0 and the exit ``n-1``; isomorphism classes are
    taken over permutations of the inner vertexes, which is complete since
    any isomorphism must fix the unique source and sink.
    """
    if n < 2:
        return ()
    if n == 2:
        return (_trusted(2, [(0, 1)]),)
    inner = list(range(1, n - 1))
    pairs = [(u, v) for u in inner for v in inner if u != v]
    perms = []
    for p in itertools.permutations(inner):
        perm = list(range(n))
        for a, b in zip(inner, p):
            perm[a] = b
        perms.append(perm)
    seen: set[tuple] = set()
    out = []
    for first in inner:
        for last in inner:
            for mask in range(1 << len(pairs)):
                arcs = [(0, first), (last, n - 1)]
                arcs += [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
                g = _trusted(n, arcs)
                if not is_single_entrance_exit(g):
                    continue
                key = _canonical(n, g.arcs, perms)
                if key in seen:
                    continue
                seen.add(key)
                out.append(_trusted(n, key))
    return tuple(sorted(out, key=lambda g: g.arcs))


def corpus(max_n: int) -> list[Digraph]:
    """All single-entrance/exit digraphs with ``2 <= n <= max_n``."""
    return [g for n in range(2, max_n + 1) for g in single_entrance_exit_graphs(n)]


@lru_cache(maxsize=None)
def digraph_classes(n: int) -> tuple[Digraph, ...]:
    """One digraph per isomorphism class on ``n`` vertexes (practical for n <= 5).

    Graphs are bit masks over the ordered pairs; the class representative is
    the smallest mask over all vertex permutations, computed for every mask
    at once.
    """
    import numpy as np

    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    pos = {p: i for i, p in enumerate(pairs)}
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    best = masks.copy()
    for perm in itertools.permutations(range(n)):
        image = np.zeros_like(masks)
        for i, (u, v) in enumerate(pairs):
            image |= ((masks >> i) & 1) << pos[(perm[u], perm[v])]
        np.minimum(best, image, out=best)
    reps = np.unique(best)
    return tuple(
        _trusted(n, [pairs[i] for i in range(len(pairs)) if int(r) >> i & 1]) for r in reps
    )
