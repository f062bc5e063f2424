"""Finite categories given by explicit composition tables."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .core import sign
from . import core
from .poset import Poset, build_poset, incidence_context


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class Morphism:
    id: object
    src: object
    tgt: object


class FinCategory:
    """Objects, morphisms with endpoints, identities and a total composition table.

    ``compose[(g, f)]`` is g after f and must exist exactly when tgt(f) == src(g).
    Unit and associativity laws are checked exhaustively unless ``check=False``
    (used by internal generators whose tables are correct by construction).
    """

    def __init__(self, objects, morphisms, identities, compose, check=True):
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object labels")
        objs = set(self.objects)
        self.morphisms = tuple(m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms)
        self._m = {}
        for m in self.morphisms:
            if m.id in self._m:
                raise CategoryError(f"duplicate morphism id {m.id!r}")
            if m.src not in objs or m.tgt not in objs:
                raise CategoryError(f"morphism {m.id!r} has an unknown endpoint")
            self._m[m.id] = m
        self.identities = dict(identities)
        for x in self.objects:
            i = self.identities.get(x)
            if i is None:
                raise CategoryError(f"object {x!r} has no identity")
            if i not in self._m or self._m[i].src != x or self._m[i].tgt != x:
                raise CategoryError(f"identity of {x!r} must be an endomorphism of {x!r}")
        if not isinstance(compose, dict):
            table = {}
            for g, f, gf in compose:
                if (g, f) in table and table[(g, f)] != gf:
                    raise CategoryError(f"conflicting entries for ({g!r}, {f!r})")
                table[(g, f)] = gf
            compose = table
        self._hom = defaultdict(list)
        self._out = defaultdict(list)
        self._in = defaultdict(list)
        for m in self.morphisms:
            self._hom[(m.src, m.tgt)].append(m.id)
            self._out[m.src].append(m.id)
            self._in[m.tgt].append(m.id)
        for (g, f), gf in compose.items():
            if g not in self._m or f not in self._m:
                raise CategoryError(f"composition entry ({g!r}, {f!r}) uses an unknown morphism")
            if self._m[f].tgt != self._m[g].src:
                raise CategoryError(f"composition entry ({g!r}, {f!r}) is not composable")
            r = self._m.get(gf)
            if r is None or r.src != self._m[f].src or r.tgt != self._m[g].tgt:
                raise CategoryError(f"composite of ({g!r}, {f!r}) has the wrong endpoints")
        for f in self.morphisms:
            for g in self._out[f.tgt]:
                if (g, f.id) not in compose:
                    raise CategoryError(f"composition table is not total: missing ({g!r}, {f.id!r})")
        self.compose_table = dict(compose)
        self._cache = {}
        if check:
            bad = validate(self)
            if bad:
                raise CategoryError(bad[0])

    # basic access

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def morphism(self, f) -> Morphism:
        try:
            return self._m[f]
        except KeyError:
            raise CategoryError(f"unknown morphism {f!r}") from None

    def src(self, f):
        return self.morphism(f).src

    def tgt(self, f):
        return self.morphism(f).tgt

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def count(self, x, y) -> int:
        return len(self._hom.get((x, y), ()))

    def out_of(self, x):
        return self._out.get(x, [])

    def into(self, y):
        return self._in.get(y, [])

    def comp(self, g, f):
        """g after f."""
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise CategoryError(f"{g!r} and {f!r} are not composable") from None

    def comp_chain(self, factors):
        """f_n ... f_1 for factors listed (f_1, ..., f_n)."""
        acc = factors[0]
        for h in factors[1:]:
            acc = self.comp(h, acc)
        return acc

    def identity(self, x):
        return self.identities[x]

    def is_identity(self, f) -> bool:
        m = self.morphism(f)
        return self.identities[m.src] == f

    # isomorphisms

    def inverse(self, f):
        cache = self._cache.setdefault("inverse", {})
        if f in cache:
            return cache[f]
        m = self.morphism(f)
        inv = None
        for g in self.hom(m.tgt, m.src):
            if (self.compose_table[(g, f)] == self.identities[m.src]
                    and self.compose_table[(f, g)] == self.identities[m.tgt]):
                inv = g
                break
        cache[f] = inv
        return inv

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def isos_from(self, x):
        return [f for f in self.out_of(x) if self.is_iso(f)]

    def automorphisms(self, x):
        return [f for f in self.hom(x, x) if self.is_iso(f)]

    def object_classes(self):
        """Isomorphism classes of objects (union-find over invertible morphisms)."""
        if "oclasses" not in self._cache:
            parent = {x: x for x in self.objects}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for m in self.morphisms:
                if m.src != m.tgt and self.is_iso(m.id):
                    a, b = find(m.src), find(m.tgt)
                    if a != b:
                        parent[b] = a
            groups = defaultdict(list)
            for x in self.objects:
                groups[find(x)].append(x)
            classes = sorted(groups.values(), key=lambda c: self.objects.index(c[0]))
            rep = {x: c[0] for c in classes for x in c}
            self._cache["oclasses"] = (classes, rep)
        return self._cache["oclasses"]

    def rep(self, x):
        return self.object_classes()[1][x]

    def class_size(self, x) -> int:
        r = self.rep(x)
        return sum(1 for y in self.objects if self.rep(y) == r)

    def morphism_classes(self):
        """Classes of morphisms under f ~ b f a^-1 with a, b isomorphisms."""
        if "mclasses" not in self._cache:
            parent = {m.id: m.id for m in self.morphisms}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(a, b):
                a, b = find(a), find(b)
                if a != b:
                    parent[b] = a

            for m in self.morphisms:
                for b in self.isos_from(m.tgt):
                    union(m.id, self.compose_table[(b, m.id)])
                for a in self.into(m.src):
                    if self.is_iso(a):
                        union(m.id, self.compose_table[(m.id, a)])
            order = {m.id: i for i, m in enumerate(self.morphisms)}
            groups = defaultdict(list)
            for m in self.morphisms:
                groups[find(m.id)].append(m.id)
            classes = sorted(groups.values(), key=lambda c: order[c[0]])
            of = {f: i for i, c in enumerate(classes) for f in c}
            self._cache["mclasses"] = (classes, of)
        return self._cache["mclasses"]


def validate(cat: FinCategory) -> list:
    """All violations of the unit and associativity laws, as messages."""
    out = []
    T = cat.compose_table
    for m in cat.morphisms:
        if T[(cat.identities[m.tgt], m.id)] != m.id:
            out.append(f"unit law fails: 1_{m.tgt} o {m.id} != {m.id}")
        if T[(m.id, cat.identities[m.src])] != m.id:
            out.append(f"unit law fails: {m.id} o 1_{m.src} != {m.id}")
    for f in cat.morphisms:
        for g in cat.out_of(f.tgt):
            gf = T[(g, f.id)]
            for h in cat.out_of(cat.tgt(g)):
                if T[(h, gf)] != T[(T[(h, g)], f.id)]:
                    out.append(f"associativity fails on ({h}, {g}, {f.id})")
    return out


# predicates and posets

def is_locally_finite_cat(cat: FinCategory) -> bool:
    """x -> y -> x forces x = y; finiteness of intervals is automatic here."""
    return not any(x != y and cat.count(x, y) and cat.count(y, x)
                   for x in cat.objects for y in cat.objects)


def is_essentially_locally_finite(cat: FinCategory) -> bool:
    return not any(cat.count(x, y) and cat.count(y, x) and cat.rep(x) != cat.rep(y)
                   for x in cat.objects for y in cat.objects)


def is_isocyclic(cat: FinCategory) -> bool:
    """Every morphism lying on a cycle is invertible."""
    for m in cat.morphisms:
        if cat.count(m.tgt, m.src) and not cat.is_iso(m.id):
            return False
    return True


def is_groupoid(cat: FinCategory) -> bool:
    return all(cat.is_iso(m.id) for m in cat.morphisms)


def object_poset(cat: FinCategory) -> Poset:
    if "oposet" not in cat._cache:
        if not is_locally_finite_cat(cat):
            raise CategoryError("category is not locally finite")
        pairs = [(x, y) for x in cat.objects for y in cat.objects if cat.count(x, y)]
        cat._cache["oposet"] = build_poset(cat.objects, pairs, "full")
    return cat._cache["oposet"]


def quotient_poset(cat: FinCategory) -> Poset:
    """Order on isomorphism classes, labelled by their first object."""
    if "qposet" not in cat._cache:
        if not is_essentially_locally_finite(cat):
            raise CategoryError("category is not essentially locally finite")
        reps = [c[0] for c in cat.object_classes()[0]]
        pairs = [(x, y) for x in reps for y in reps if cat.count(x, y)]
        cat._cache["qposet"] = build_poset(reps, pairs, "full")
    return cat._cache["qposet"]


# Möbius functions

def _chain_sum(p: Poset, x, y, term):
    """Sum of term(chain) over strict chains x = x0 < ... < xn = y of p, n >= 1."""
    inner = p.subposet(p.open_interval(x, y))
    total = term((x, y))
    for c in inner.chains():
        total += term((x,) + tuple(inner.elements[i] for i in c) + (y,))
    return total


def cat_mobius(cat: FinCategory) -> core.IncidenceElement:
    """Inverse of xi[x, y] = |C(x, y)| over the object poset."""
    ctx = incidence_context(object_poset(cat))
    return core.invert(ctx, ctx.element(lambda c: cat.count(*c)))


def hom_chain_formula(cat: FinCategory, p: Poset, x, y) -> Fraction:
    """Alternating sum over chains of hom counts divided by all endomorphism counts."""
    if x == y:
        return Fraction(1, cat.count(x, x))

    def term(ch):
        num = 1
        for a, b in zip(ch, ch[1:]):
            num *= cat.count(a, b)
        den = 1
        for a in ch:
            den *= cat.count(a, a)
        return Fraction(sign(len(ch) - 1) * num, den)

    return _chain_sum(p, x, y, term)


def cat_mobius_closed_form(cat: FinCategory) -> core.IncidenceElement:
    p = object_poset(cat)
    ctx = incidence_context(p)
    return ctx.element({c: hom_chain_formula(cat, p, *c) for c in ctx.cells})


def _class_xi(cat, x, y):
    """|C(a, b)| for all a ~ x, b ~ y; must not depend on the representatives."""
    classes, rep = cat.object_classes()
    xs = [a for a in cat.objects if rep[a] == rep[x]]
    ys = [b for b in cat.objects if rep[b] == rep[y]]
    vals = {cat.count(a, b) for a in xs for b in ys}
    if len(vals) != 1:
        raise CategoryError(f"hom counts between classes of {x!r} and {y!r} depend on representatives")
    return vals.pop()


def essential_mobius(cat: FinCategory) -> core.IncidenceElement:
    """Inverse of xi(x, y) = |C(x, y)| over the poset of isomorphism classes."""
    ctx = incidence_context(quotient_poset(cat))
    return core.invert(ctx, ctx.element(lambda c: _class_xi(cat, *c)))


def essential_mobius_closed_form(cat: FinCategory) -> core.IncidenceElement:
    p = quotient_poset(cat)
    ctx = incidence_context(p)
    return ctx.element({c: hom_chain_formula(cat, p, *c) for c in ctx.cells})


def representative_independent(cat: FinCategory) -> bool:
    """Recompute the essential Möbius function with every choice of representatives."""
    p = quotient_poset(cat)
    base = essential_mobius(cat)
    classes, rep = cat.object_classes()
    members = {c[0]: c for c in classes}
    for choice in product(*(members[r] for r in p.elements)):
        pick = dict(zip(p.elements, choice))
        q = build_poset(choice, [(pick[a], pick[b]) for a, b in p.relation()], "full")
        ctx = incidence_context(q)
        mu = core.invert(ctx, ctx.element(lambda c: cat.count(*c)))
        for a, b in p.relation():
            if mu[(pick[a], pick[b])] != base[(a, b)]:
                return False
    return True


# groupoids

def groupoid_cardinality(gpd: FinCategory) -> Fraction:
    """Sum over isomorphism classes of 1/|Aut(x)|."""
    for m in gpd.morphisms:
        if not gpd.is_iso(m.id):
            raise CategoryError(f"not a groupoid: morphism {m.id!r} is not invertible")
    classes, _ = gpd.object_classes()
    return sum((Fraction(1, gpd.count(c[0], c[0])) for c in classes), Fraction(0))


def action_groupoid(points, group, act, mul, unit) -> FinCategory:
    """Action groupoid X // G: morphisms (g, x): x -> g.x."""
    points, group = list(points), list(group)
    mid = lambda g, x: f"{g}|{x}"
    morphisms = [(mid(g, x), x, act(g, x)) for g in group for x in points]
    identities = {x: mid(unit, x) for x in points}
    compose = {}
    for g in group:
        for x in points:
            y = act(g, x)
            for h in group:
                compose[(mid(h, y), mid(g, x))] = mid(mul(h, g), x)
    return FinCategory(points, morphisms, identities, compose, check=False)


def xi_g(cat: FinCategory) -> core.IncidenceElement:
    """Groupoid cardinality of C(x,y) // (Aut x * Aut y), i.e. |C(x,y)| / (|C(x,x)||C(y,y)|)."""
    _require_isocyclic(cat)
    ctx = incidence_context(quotient_poset(cat))
    return ctx.element(lambda c: Fraction(_class_xi(cat, *c),
                                          cat.count(c[0], c[0]) * cat.count(c[1], c[1])))


def mu_g_closed_form(cat: FinCategory) -> core.IncidenceElement:
    """Alternating chain sum dividing only by interior endomorphism counts."""
    _require_isocyclic(cat)
    p = quotient_poset(cat)
    ctx = incidence_context(p)

    def value(x, y):
        if x == y:
            return Fraction(cat.count(x, x))

        def term(ch):
            num = 1
            for a, b in zip(ch, ch[1:]):
                num *= cat.count(a, b)
            den = 1
            for a in ch[1:-1]:
                den *= cat.count(a, a)
            return Fraction(sign(len(ch) - 1) * num, den)

        return _chain_sum(p, x, y, term)

    return ctx.element({c: value(*c) for c in ctx.cells})


def xi_g_mu_g(cat: FinCategory):
    """(xi_g, mu_g) with mu_g the inverse of xi_g; checked against the closed form."""
    xg = xi_g(cat)
    mg = core.invert(xg.context, xg)
    if mg != mu_g_closed_form(cat):
        raise AssertionError("mu_g closed form disagrees with the inverse of xi_g")
    return xg, mg


def _require_isocyclic(cat):
    if not is_essentially_locally_finite(cat):
        raise CategoryError("category is not essentially locally finite")
    if not is_isocyclic(cat):
        raise CategoryError("category is not isocyclic")


def simplicial_euler_chi_g(cat: FinCategory, x, y) -> Fraction:
    """Reduced groupoid Euler characteristic of the simplicial groupoid of chains from x to y.

    Each strict chain of classes contributes the cardinality of the groupoid of
    composable strings through it, |prod C(x_i, x_i+1)| / |prod C(x_i, x_i)|.
    """
    _require_isocyclic(cat)
    p = quotient_poset(cat)
    x, y = cat.rep(x), cat.rep(y)
    if not p.lt(x, y):
        raise CategoryError(f"need class of {x!r} < class of {y!r}")
    return hom_chain_formula(cat, p, x, y)


# constructions

def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    objects = [(a, b) for a in c.objects for b in d.objects]
    morphisms = [((f.id, g.id), (f.src, g.src), (f.tgt, g.tgt)) for f in c.morphisms for g in d.morphisms]
    identities = {(a, b): (c.identities[a], d.identities[b]) for a, b in objects}
    compose = {}
    for (g1, f1), h1 in c.compose_table.items():
        for (g2, f2), h2 in d.compose_table.items():
            compose[((g1, g2), (f1, f2))] = (h1, h2)
    return FinCategory(objects, morphisms, identities, compose, check=False)


def terminal_category() -> FinCategory:
    return FinCategory(["*"], [("1", "*", "*")], {"*": "1"}, {("1", "1"): "1"})


def monoid_category(elements, mul, unit, obj="*", check=True) -> FinCategory:
    """One-object category on a finite monoid given by its multiplication."""
    elements = [str(e) for e in elements]
    compose = {(g, f): str(mul(g, f)) for g in elements for f in elements}
    return FinCategory([obj], [(e, obj, obj) for e in elements], {obj: str(unit)}, compose, check)


def cyclic_group(n: int) -> FinCategory:
    return monoid_category(range(n), lambda a, b: (int(a) + int(b)) % n, 0)


def symmetric_group(k: int) -> FinCategory:
    perms = list(permutations(range(k)))
    name = {p: "".join(map(str, p)) for p in perms}
    back = {v: p for p, v in name.items()}
    mul = lambda g, f: name[tuple(back[g][i] for i in back[f])]
    return monoid_category([name[p] for p in perms], mul, name[tuple(range(k))])


def idempotent_monoid() -> FinCategory:
    """The monoid {1, e} with e e = e."""
    return monoid_category(["1", "e"], lambda a, b: "1" if a == b == "1" else "e", "1")


def poset_category(p: Poset) -> FinCategory:
    mid = lambda x, y: f"{x}<={y}"
    morphisms = [(mid(x, y), x, y) for x, y in p.relation()]
    identities = {x: mid(x, x) for x in p.elements}
    compose = {}
    for x, y in p.relation():
        for z in p.up_set(y):
            compose[(mid(y, z), mid(x, y))] = mid(x, z)
    return FinCategory(p.elements, morphisms, identities, compose, check=False)


def discrete_groupoid(n: int) -> FinCategory:
    objs = [str(i) for i in range(n)]
    return FinCategory(objs, [(f"1_{x}", x, x) for x in objs], {x: f"1_{x}" for x in objs},
                       {(f"1_{x}", f"1_{x}"): f"1_{x}" for x in objs})


def codiscrete_groupoid(objects) -> FinCategory:
    """Exactly one morphism between any two objects; contractible."""
    objs = list(objects)
    mid = lambda a, b: f"{a}>{b}"
    morphisms = [(mid(a, b), a, b) for a in objs for b in objs]
    compose = {(mid(b, c), mid(a, b)): mid(a, c) for a in objs for b in objs for c in objs}
    return FinCategory(objs, morphisms, {a: mid(a, a) for a in objs}, compose)


def injection_id(f, m) -> str:
    return f"{len(f)}>{m}:" + ",".join(map(str, f))


def injection_category(m: int, check=False) -> FinCategory:
    """Skeleton of finite sets {0..n-1}, n <= m, and injective maps."""
    if not 0 <= m <= 6:
        raise CategoryError("injection category is generated for 0 <= m <= 6")
    objects = list(range(m + 1))
    maps = {}
    for n in objects:
        for k in range(n, m + 1):
            maps[(n, k)] = [tuple(f) for f in permutations(range(k), n)]
    morphisms = [(injection_id(f, k), n, k) for (n, k), fs in maps.items() for f in fs]
    identities = {n: injection_id(tuple(range(n)), n) for n in objects}
    compose = {}
    for (a, b), fs in maps.items():
        for c in range(b, m + 1):
            for g in maps[(b, c)]:
                gid = injection_id(g, c)
                for f in fs:
                    compose[(gid, injection_id(f, b))] = injection_id(tuple(g[i] for i in f), c)
    return FinCategory(objects, morphisms, identities, compose, check=check)


def injection_mobius_value(n: int, m: int) -> Fraction:
    """Closed form (-1)^(m-n) / (n! (m-n)!) on the injection category."""
    return Fraction(sign(m - n), factorial(n) * factorial(m - n))


def path_category(vertices, edges, check=False) -> FinCategory:
    """Free category on a finite DAG; morphisms are paths (tuples of edge ids).

    ``edges`` lists (id, src, tgt).  Identity paths are named ``()@v``.
    """
    vertices = list(vertices)
    out = defaultdict(list)
    for e, s, t in edges:
        if s == t:
            raise CategoryError("path categories are built on loop-free graphs")
        out[s].append((e, t))
    paths = []  # (edge tuple, src, tgt)
    for v in vertices:
        stack = [((), v)]
        while stack:
            p, w = stack.pop()
            paths.append((p, v, w))
            if len(p) > len(vertices):
                raise CategoryError("graph has a cycle; path category is infinite")
            for e, t in out[w]:
                stack.append((p + (e,), t))
    pid = lambda p, s: ".".join(map(str, p)) if p else f"()@{s}"
    by_src = defaultdict(list)
    for p, s, t in paths:
        by_src[s].append((p, t))
    morphisms = [(pid(p, s), s, t) for p, s, t in paths]
    identities = {v: pid((), v) for v in vertices}
    compose = {}
    for p, s, t in paths:
        for q, u in by_src[t]:
            compose[(pid(q, t), pid(p, s))] = pid(p + q, s)
    return FinCategory(vertices, morphisms, identities, compose, check=check)


def graded_category(p: Poset, vertices, edges, labels, check=False) -> FinCategory:
    """Category X_F: objects of p, X_F(x, y) = paths F(x) -> F(y) when x <= y.

    ``labels`` maps each element of p to a vertex; it must be order preserving
    into reachability of the (acyclic) graph.
    """
    base = path_category(vertices, edges)
    for x, y in p.relation():
        if not base.count(labels[x], labels[y]):
            raise CategoryError(f"labels do not preserve order at {x!r} <= {y!r}")
    mid = lambda x, y, f: f"{x}|{y}|{f}"
    morphisms = []
    for x, y in p.relation():
        for f in base.hom(labels[x], labels[y]):
            morphisms.append((mid(x, y, f), x, y))
    identities = {x: mid(x, x, base.identity(labels[x])) for x in p.elements}
    compose = {}
    for x, y in p.relation():
        for f in base.hom(labels[x], labels[y]):
            for z in p.up_set(y):
                for g in base.hom(labels[y], labels[z]):
                    compose[(mid(y, z, g), mid(x, y, f))] = mid(x, z, base.comp(g, f))
    return FinCategory(p.elements, morphisms, identities, compose, check=check)
