"""Seeded random instances: posets, reflexive digraphs, DAG path categories, graded categories."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .digraph import Edge, ReflexiveDigraph
from .fincat import graded_category, path_category
from .poset import Poset, build_poset


@dataclass
class PosetConfig:
    max_size: int = 8
    density: float = 0.35


@dataclass
class DigraphConfig:
    max_vertices: int = 6
    max_parallel: int = 3
    edge_prob: float = 0.4


@dataclass
class DagConfig:
    max_vertices: int = 6
    edge_prob: float = 0.35
    max_parallel: int = 2
    max_morphisms: int = 60
    min_vertices: int = 1


def random_poset(rng: random.Random, cfg: PosetConfig = PosetConfig(), size=None) -> Poset:
    """Random order on a shuffled set: i < j in a hidden linear order, kept with some probability, then closed."""
    n = rng.randint(0, cfg.max_size) if size is None else size
    labels = [f"p{i}" for i in range(n)]
    rng.shuffle(labels)
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)
             if rng.random() < cfg.density]
    return build_poset(labels, pairs, "cover")


def random_digraph(rng: random.Random, cfg: DigraphConfig = DigraphConfig()) -> ReflexiveDigraph:
    """Locally finite reflexive multigraph: edges only go forward in a hidden order."""
    n = rng.randint(1, cfg.max_vertices)
    verts = [f"v{i}" for i in range(n)]
    order = verts[:]
    rng.shuffle(order)
    edges = []
    for v in verts:
        for k in range(rng.randint(1, cfg.max_parallel)):
            edges.append(Edge(f"{v}~{k}", v, v))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < cfg.edge_prob:
                for k in range(rng.randint(1, cfg.max_parallel)):
                    edges.append(Edge(f"{order[i]}>{order[j]}#{k}", order[i], order[j]))
    return ReflexiveDigraph(verts, edges)


def random_dag(rng: random.Random, cfg: DagConfig = DagConfig()):
    """(vertices, edges) of a random DAG with a bounded number of paths."""
    while True:
        n = rng.randint(cfg.min_vertices, cfg.max_vertices)
        verts = [f"d{i}" for i in range(n)]
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < cfg.edge_prob:
                    for k in range(rng.randint(1, cfg.max_parallel)):
                        edges.append((f"e{i}{j}{k}", verts[i], verts[j]))
        if _path_count(verts, edges) <= cfg.max_morphisms:
            return verts, edges


def _path_count(verts, edges):
    succ = {v: [t for _, s, t in edges if s == v] for v in verts}
    memo = {}

    def from_(v):
        if v not in memo:
            memo[v] = 1 + sum(from_(t) for t in succ[v])
        return memo[v]

    return sum(from_(v) for v in verts)


def random_path_category(rng: random.Random, cfg: DagConfig = DagConfig()):
    verts, edges = random_dag(rng, cfg)
    return path_category(verts, edges)


def random_graded_category(rng: random.Random, max_elements=5, max_morphisms=80, min_elements=1):
    """X_F for a random poset X and an order preserving labelling F into a DAG with a spine d0 -> d1 -> ..."""
    while True:
        x = random_poset(rng, PosetConfig(max_size=max_elements, density=0.4),
                         size=rng.randint(min_elements, max_elements))
        k = rng.randint(1, 4)
        verts = [f"d{i}" for i in range(k)]
        edges = [(f"s{i}", verts[i], verts[i + 1]) for i in range(k - 1)]
        for i in range(k):
            for j in range(i + 1, k):
                if rng.random() < 0.3:
                    edges.append((f"x{i}{j}", verts[i], verts[j]))
        ext = _linear_extension(x)
        levels = sorted(rng.randint(0, k - 1) for _ in ext)
        labels = {e: verts[lv] for e, lv in zip(ext, levels)}
        total = sum(_path_count_between(verts, edges, labels[a], labels[b]) for a, b in x.relation())
        if total <= max_morphisms:
            return graded_category(x, verts, edges, labels)


def _linear_extension(p: Poset):
    return sorted(p.elements, key=lambda e: (len(p._down[p.index(e)]), p.index(e)))


def _path_count_between(verts, edges, a, b):
    succ = {v: [t for _, s, t in edges if s == v] for v in verts}
    memo = {}

    def cnt(v):
        if v not in memo:
            memo[v] = (1 if v == b else 0) + sum(cnt(t) for t in succ[v])
        return memo[v]

    return cnt(a)
