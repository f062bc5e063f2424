"""Reflexive directed graphs and their Möbius functions."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .core import sign
from . import core
from .poset import Poset, build_poset, incidence_context


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: object
    src: object
    tgt: object


class ReflexiveDigraph:
    """Directed multigraph with at least one loop at every vertex."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex labels")
        vset = set(self.vertices)
        self.edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        if len({e.id for e in self.edges}) != len(self.edges):
            raise GraphError("duplicate edge ids")
        self._hom = defaultdict(list)
        for e in self.edges:
            if e.src not in vset or e.tgt not in vset:
                raise GraphError(f"edge {e.id!r} has an unknown endpoint")
            self._hom[(e.src, e.tgt)].append(e)
        for v in self.vertices:
            if not self._hom.get((v, v)):
                raise GraphError(f"vertex {v!r} has no loop; the graph is not reflexive")
        self._cache = {}

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def count(self, x, y) -> int:
        return len(self._hom.get((x, y), ()))

    def out_edges(self, x):
        return [e for e in self.edges if e.src == x and e.tgt != x]

    def __repr__(self):
        return f"ReflexiveDigraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


def enumerate_walks(g: ReflexiveDigraph, x, y, max_len=None):
    """Walks x ~> y of length 1..max_len; loop edges never appear in walks."""
    max_len = len(g.vertices) if max_len is None else max_len
    out = []

    def rec(v, path):
        if path and v == y:
            out.append(tuple(path))
        if len(path) == max_len:
            return
        for e in g.out_edges(v):
            path.append(e.id)
            rec(e.tgt, path)
            path.pop()

    rec(x, [])
    return out


def is_locally_finite(g: ReflexiveDigraph) -> bool:
    """True iff there is no circuit through non-loop edges."""
    state = {}
    succ = {v: sorted({e.tgt for e in g.out_edges(v)}, key=g.vertices.index) for v in g.vertices}
    for root in g.vertices:
        if root in state:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                state[v] = 2
                stack.pop()
            elif state.get(w) == 1:
                return False
            elif w not in state:
                state[w] = 1
                stack.append((w, iter(succ[w])))
    return True


def _require_lf(g):
    if not is_locally_finite(g):
        raise GraphError("graph has a circuit and is not locally finite")


def induced_poset(g: ReflexiveDigraph) -> Poset:
    p = g._cache.get("poset")
    if p is None:
        _require_lf(g)
        pairs = [(e.src, e.tgt) for e in g.edges if e.src != e.tgt]
        p = g._cache["poset"] = build_poset(g.vertices, pairs, "cover")
    return p


def adjacency(g: ReflexiveDigraph) -> core.IncidenceElement:
    ctx = incidence_context(induced_poset(g))
    return ctx.element({c: g.count(*c) for c in ctx.cells})


def graph_mobius(g: ReflexiveDigraph) -> core.IncidenceElement:
    """Inverse of the adjacency element in the incidence algebra of the induced poset."""
    ctx = incidence_context(induced_poset(g))
    return core.invert(ctx, adjacency(g))


def graph_mobius_walks(g: ReflexiveDigraph) -> core.IncidenceElement:
    """Walk-sum formula: signed walks weighted by the loop counts of visited vertices."""
    p = induced_poset(g)
    ctx = incidence_context(p)
    by_id = {e.id: e for e in g.edges}
    vals = {}
    for x, y in ctx.cells:
        if x == y:
            vals[(x, y)] = Fraction(1, g.count(x, x))
            continue
        s = Fraction(0)
        for w in enumerate_walks(g, x, y):
            den = g.count(x, x)
            for eid in w:
                t = by_id[eid].tgt
                den *= g.count(t, t)
            s += Fraction(sign(len(w)), den)
        vals[(x, y)] = s
    return ctx.element(vals)


def graph_inversion_check(g: ReflexiveDigraph, base, f) -> dict:
    """Edge-sum transform g = f*xi over the up-set of ``base`` and its inverse via mu."""
    p = induced_poset(g)
    ups = p.up_set(base)
    fv = {x: Fraction(f.get(x, 0)) for x in ups}
    upset = set(ups)
    edge_sum = {y: sum((fv[e.src] for e in g.edges if e.tgt == y and e.src in upset), Fraction(0))
                for y in ups}
    xi = adjacency(g)
    via_xi = core.module_action(ups, p.leq, fv, lambda a, b: xi[(a, b)])
    mu = graph_mobius(g)
    recovered = core.module_action(ups, p.leq, edge_sum, lambda a, b: mu[(a, b)])
    return {
        "g": edge_sum,
        "recovered": recovered,
        "edge_sum_is_convolution": edge_sum == via_xi,
        "round_trip": recovered == fv,
    }


def product_digraph(g: ReflexiveDigraph, h: ReflexiveDigraph) -> ReflexiveDigraph:
    verts = [(a, b) for a in g.vertices for b in h.vertices]
    edges = [Edge((e.id, f.id), (e.src, f.src), (e.tgt, f.tgt)) for e in g.edges for f in h.edges]
    return ReflexiveDigraph(verts, edges)


def poset_graph(p: Poset) -> ReflexiveDigraph:
    """One loop per element and one edge per strict relation x < y."""
    edges = [Edge(f"{x}->{y}", x, y) for x, y in p.relation()]
    return ReflexiveDigraph(p.elements, edges)
