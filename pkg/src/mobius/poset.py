"""Finite posets, their incidence algebras and Möbius functions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import sign
from . import core, linalg


class PosetError(ValueError):
    pass


class Poset:
    """Finite poset on an ordered list of hashable labels.

    The relation is stored as a boolean matrix over element indices; ``leq`` is
    always reflexive, antisymmetric and transitive.
    """

    def __init__(self, elements, le_matrix):
        self.elements = tuple(elements)
        self._idx = {e: i for i, e in enumerate(self.elements)}
        self._le = [tuple(bool(v) for v in row) for row in le_matrix]
        n = len(self.elements)
        self._up = [tuple(j for j in range(n) if self._le[i][j]) for i in range(n)]
        self._down = [tuple(j for j in range(n) if self._le[j][i]) for i in range(n)]
        self._cache = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._idx

    def __repr__(self):
        return f"Poset({len(self)} elements)"

    def index(self, x) -> int:
        try:
            return self._idx[x]
        except KeyError:
            raise PosetError(f"{x!r} is not an element of the poset") from None

    def leq(self, x, y) -> bool:
        return self._le[self.index(x)][self.index(y)]

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def relation(self):
        """All pairs (x, y) with x <= y."""
        E = self.elements
        return [(E[i], E[j]) for i in range(len(E)) for j in self._up[i]]

    def intervals(self):
        return self.relation()

    def interval(self, x, y):
        i, j = self.index(x), self.index(y)
        if not self._le[i][j]:
            raise PosetError(f"{x!r} is not <= {y!r}")
        return [self.elements[k] for k in self._up[i] if self._le[k][j]]

    def open_interval(self, x, y):
        return [z for z in self.interval(x, y) if z != x and z != y]

    def up_set(self, x):
        return [self.elements[k] for k in self._up[self.index(x)]]

    def covers(self):
        """Pairs x < y with nothing strictly between them."""
        out = []
        for x, y in self.relation():
            if x != y and len(self.interval(x, y)) == 2:
                out.append((x, y))
        return out

    def is_cover(self, x, y) -> bool:
        return x != y and self.leq(x, y) and len(self.interval(x, y)) == 2

    def subposet(self, subset) -> "Poset":
        sub = [e for e in self.elements if e in set(subset)]
        idx = [self._idx[e] for e in sub]
        return Poset(sub, [[self._le[i][j] for j in idx] for i in idx])

    def chains(self):
        """All nonempty strict chains as tuples of element indices, increasing."""
        out = []

        def grow(chain):
            out.append(tuple(chain))
            last = chain[-1]
            for j in self._up[last]:
                if j != last:
                    chain.append(j)
                    grow(chain)
                    chain.pop()

        for i in range(len(self.elements)):
            grow([i])
        return out

    def maximal_chains(self):
        """Maximal linearly ordered subsets, as tuples of elements listed bottom-up."""
        n = len(self.elements)
        if n == 0:
            return [()]
        minimal = [i for i in range(n) if len(self._down[i]) == 1]
        out = []

        def covers_of(i):
            return [j for j in self._up[i] if j != i
                    and not any(k not in (i, j) and self._le[k][j] for k in self._up[i])]

        def grow(chain):
            nxt = covers_of(chain[-1])
            if not nxt:
                out.append(tuple(self.elements[k] for k in chain))
                return
            for j in nxt:
                chain.append(j)
                grow(chain)
                chain.pop()

        for i in minimal:
            grow([i])
        return out

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and set(self.relation()) == set(other.relation())

    def __hash__(self):
        return hash(frozenset(self.elements))


def build_poset(elements, pairs, mode="cover") -> Poset:
    """Build a poset from generating pairs.

    ``mode="cover"`` takes the reflexive-transitive closure of ``pairs``;
    ``mode="full"`` does the same (a full relation is its own closure) but
    both modes reject cycles.
    """
    elements = list(elements)
    if len(set(elements)) != len(elements):
        seen = set()
        dup = next(e for e in elements if e in seen or seen.add(e))
        raise PosetError(f"duplicate label {dup!r}")
    if mode not in ("cover", "full"):
        raise PosetError(f"unknown mode {mode!r}")
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        if a not in idx or b not in idx:
            raise PosetError(f"pair ({a!r}, {b!r}) uses an unknown element")
        le[idx[a]][idx[b]] = True
    for k in range(n):
        rk = le[k]
        for i in range(n):
            if le[i][k]:
                ri = le[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if le[i][j] and le[j][i]:
                raise PosetError(
                    f"antisymmetry violated: {elements[i]!r} <= {elements[j]!r} <= {elements[i]!r}")
    return Poset(elements, le)


def poset_from_leq(elements, leq) -> Poset:
    elements = list(elements)
    return build_poset(elements, [(a, b) for a in elements for b in elements if leq(a, b)], "full")


# incidence algebra

def incidence_context(p: Poset) -> core.ConvolutionContext:
    ctx = p._cache.get("ctx")
    if ctx is None:
        cells = p.intervals()
        splits = {(x, z): [((x, y), (y, z)) for y in p.interval(x, z)] for x, z in cells}
        ctx = core.ConvolutionContext.build(cells, splits, lambda c: c[0] == c[1])
        p._cache["ctx"] = ctx
    return ctx


def zeta(p: Poset) -> core.IncidenceElement:
    return incidence_context(p).zeta()


def mobius(p: Poset) -> core.IncidenceElement:
    mu = p._cache.get("mu")
    if mu is None:
        ctx = incidence_context(p)
        mu = p._cache["mu"] = core.invert(ctx, ctx.zeta())
    return mu


def chain_counts(p: Poset, x, y) -> list:
    """counts[n] = number of strict chains x = x0 < ... < xn = y."""
    memo = p._cache.setdefault("chain_counts", {})
    E = p.elements

    def rec(i, j):
        key = (i, j)
        if key in memo:
            return memo[key]
        if i == j:
            res = [1]
        else:
            res = [0]
            for k in p._up[i]:
                if k != i and p._le[k][j]:
                    sub = rec(k, j)
                    if len(res) < len(sub) + 1:
                        res.extend([0] * (len(sub) + 1 - len(res)))
                    for n, c in enumerate(sub):
                        res[n + 1] += c
        memo[key] = res
        return res

    i, j = p.index(x), p.index(y)
    if not p._le[i][j]:
        raise PosetError(f"{E[i]!r} is not <= {E[j]!r}")
    return list(rec(i, j))


def mobius_by_chains(p: Poset, x, y) -> Fraction:
    """Alternating count of strict chains from x to y."""
    counts = chain_counts(p, x, y)
    if x == y:
        return Fraction(1)
    return Fraction(sum(sign(n) * c for n, c in enumerate(counts) if n >= 1))


def module_inversion(p: Poset, base, f, direction="by_xi"):
    """Right module action on functions over the up-set of ``base``.

    ``by_xi`` returns y -> sum_{base<=x<=y} f(x); ``by_mu`` returns
    y -> sum_{base<=x<=y} f(x) mu[x, y].  The two are mutually inverse.
    """
    if base not in p:
        raise PosetError(f"base {base!r} is not an element of the poset")
    ups = p.up_set(base)
    if direction == "by_xi":
        e = lambda a, b: 1
    elif direction == "by_mu":
        mu = mobius(p)
        e = lambda a, b: mu[(a, b)]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return core.module_action(ups, p.leq, {x: Fraction(f.get(x, 0)) for x in ups}, e)


# constructions

def product_poset(p: Poset, q: Poset) -> Poset:
    elems = [(a, b) for a in p.elements for b in q.elements]
    n = len(elems)
    pi = [(p._idx[a], q._idx[b]) for a, b in elems]
    le = [[p._le[pi[i][0]][pi[j][0]] and q._le[pi[i][1]][pi[j][1]] for j in range(n)]
          for i in range(n)]
    return Poset(elems, le)


def adjoin_bounds(p: Poset, bottom="0^", top="1^") -> Poset:
    elems = [bottom] + list(p.elements) + [top]
    pairs = [(bottom, e) for e in elems] + [(e, top) for e in elems] + p.relation()
    return build_poset(elems, pairs, "full")


def is_order_isomorphism(p: Poset, q: Poset, mapping) -> bool:
    if len(p) != len(q) or set(mapping) != set(p.elements):
        return False
    if set(mapping.values()) != set(q.elements):
        return False
    return all(p.leq(a, b) == q.leq(mapping[a], mapping[b])
               for a in p.elements for b in p.elements)


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def set_partitions(items):
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield (frozenset([first]),) + part
        for k in range(len(part)):
            yield part[:k] + (part[k] | {first},) + part[k + 1:]


def _canon_partition(blocks):
    return tuple(sorted((frozenset(b) for b in blocks), key=lambda b: sorted(b)))


def refines(pi, sigma) -> bool:
    return all(any(b <= c for c in sigma) for b in pi)


FAMILY_BOUND = 8
DIVISOR_BOUND = 10 ** 6


def family(kind: str, n: int) -> Poset:
    """Named posets: chain(n) = {0<1<...<n}, boolean(n), divisors(N), partitions(n),
    and divisibility(N) = {1..N} ordered by divisibility."""
    if n < 0:
        raise PosetError("parameter must be non-negative")
    if kind == "chain":
        return build_poset(list(range(n + 1)), [(i, i + 1) for i in range(n)], "cover")
    if kind == "boolean":
        if n > FAMILY_BOUND:
            raise PosetError(f"boolean({n}) exceeds the bound {FAMILY_BOUND}")
        subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
        return poset_from_leq(subsets, lambda a, b: a <= b)
    if kind == "divisors":
        if not 1 <= n <= DIVISOR_BOUND:
            raise PosetError(f"divisors({n}) outside 1..{DIVISOR_BOUND}")
        ds = _divisors(n)
        pairs = [(a, b) for a in ds for b in ds if b % a == 0]
        return build_poset(ds, pairs, "full")
    if kind == "divisibility":
        if not 1 <= n <= 5000:
            raise PosetError(f"divisibility({n}) outside 1..5000")
        elems = list(range(1, n + 1))
        pairs = [(a, m) for a in elems for m in range(a, n + 1, a)]
        return build_poset(elems, pairs, "full")
    if kind == "partitions":
        if n > FAMILY_BOUND:
            raise PosetError(f"partitions({n}) exceeds the bound {FAMILY_BOUND}")
        parts = sorted((_canon_partition(b) for b in set_partitions(range(1, n + 1))),
                       key=lambda pi: (-len(pi), [sorted(b) for b in pi]))
        return poset_from_leq(parts, refines)
    raise PosetError(f"unknown family {kind!r}")


def boolean_closed_form(a, b) -> int:
    return sign(len(b - a))


def partition_closed_form(pi, sigma) -> int:
    """(-1)^(|pi|-|sigma|) * prod over blocks b of sigma of (n_b - 1)!."""
    from math import factorial
    out = sign(len(pi) - len(sigma))
    for blk in sigma:
        out *= factorial(sum(1 for b in pi if b <= blk) - 1)
    return out


# reduced incidence algebra

@dataclass(frozen=True, eq=False)
class IntervalClass:
    index: int
    representative: tuple
    members: tuple

    def __repr__(self):
        return f"IntervalClass#{self.index}{self.representative}"


def _interval_poset(p, x, y):
    return p.subposet(p.interval(x, y))


def _signature(q: Poset):
    n = len(q)
    prof = sorted((len(q._down[i]), len(q._up[i])) for i in range(n))
    rel = sum(len(u) for u in q._up)
    return (n, rel, tuple(prof))


def find_isomorphism(p: Poset, q: Poset):
    """Brute-force order isomorphism p -> q with degree-profile pruning, or None."""
    n = len(p)
    if n != len(q) or _signature(p) != _signature(q):
        return None
    pk = [(len(p._down[i]), len(p._up[i])) for i in range(n)]
    qk = [(len(q._down[i]), len(q._up[i])) for i in range(n)]
    order = sorted(range(n), key=lambda i: (pk[i][0], -pk[i][1]))
    image = [-1] * n
    used = [False] * n

    def ok(i, j):
        for k in range(n):
            m = image[k]
            if m < 0:
                continue
            if p._le[i][k] != q._le[j][m] or p._le[k][i] != q._le[m][j]:
                return False
        return True

    def rec(t):
        if t == n:
            return True
        i = order[t]
        for j in range(n):
            if not used[j] and qk[j] == pk[i] and ok(i, j):
                image[i], used[j] = j, True
                if rec(t + 1):
                    return True
                image[i], used[j] = -1, False
        return False

    if not rec(0):
        return None
    return {p.elements[i]: q.elements[image[i]] for i in range(n)}


def interval_classes(p: Poset):
    """Partition the intervals of p into isomorphism classes.

    Returns (classes, class_of) where class_of maps (x, y) -> IntervalClass.
    """
    cached = p._cache.get("interval_classes")
    if cached is not None:
        return cached
    buckets = {}  # signature -> list of (rep poset, member list)
    order = []
    for x, y in p.intervals():
        q = _interval_poset(p, x, y)
        sig = _signature(q)
        for entry in buckets.setdefault(sig, []):
            if find_isomorphism(q, entry[0]) is not None:
                entry[1].append((x, y))
                break
        else:
            entry = (q, [(x, y)])
            buckets[sig].append(entry)
            order.append(entry)
    classes, class_of = [], {}
    for k, (_, members) in enumerate(order):
        cls = IntervalClass(k, members[0], tuple(members))
        classes.append(cls)
        for m in members:
            class_of[m] = cls
    p._cache["interval_classes"] = (classes, class_of)
    return classes, class_of


def reduced_context(p: Poset) -> core.ConvolutionContext:
    """Convolution context on interval-isomorphism classes."""
    ctx = p._cache.get("reduced_ctx")
    if ctx is not None:
        return ctx
    classes, class_of = interval_classes(p)
    splits = {}
    for cls in classes:
        x, z = cls.representative
        splits[cls] = [(class_of[(x, y)], class_of[(y, z)]) for y in p.interval(x, z)]
    ctx = core.ConvolutionContext.build(classes, splits,
                                        lambda c: c.representative[0] == c.representative[1])
    p._cache["reduced_ctx"] = ctx
    return ctx


def reduced_mobius(p: Poset) -> core.IncidenceElement:
    ctx = reduced_context(p)
    return core.invert(ctx, ctx.zeta())


def reduced_value(p: Poset, element: core.IncidenceElement, x, y) -> Fraction:
    _, class_of = interval_classes(p)
    return element[class_of[(x, y)]]


def lift_reduced(p: Poset, element: core.IncidenceElement) -> core.IncidenceElement:
    """Pull a reduced-algebra element back to an isomorphism-invariant incidence element."""
    _, class_of = interval_classes(p)
    ctx = incidence_context(p)
    return ctx.element({c: element[class_of[c]] for c in ctx.cells})


# Hopf antipode evaluated at a point

def antipode_eval(p: Poset, a, b, point=None) -> Fraction:
    """Evaluate S x_[a,b] with each variable x_[u,v] set to point[(u,v)] (default 1).

    Enumerates every strict chain a = a0 < ... < an = b explicitly and sums the
    signed monomials.
    """
    if not p.lt(a, b):
        raise PosetError(f"antipode needs {a!r} < {b!r}")
    val = (lambda u, v: Fraction(1)) if point is None else (lambda u, v: Fraction(point[(u, v)]))
    inner = p.open_interval(a, b)
    sub = p.subposet(inner)
    total = Fraction(0)
    # chains of the open interval, plus the empty one
    chains = [()] + [tuple(sub.elements[i] for i in c) for c in sub.chains()]
    for c in chains:
        path = (a,) + c + (b,)
        term = Fraction(sign(len(path) - 1))
        for u, v in zip(path, path[1:]):
            term *= val(u, v)
        total += term
    return total


# finite differences

def eta_element(p: Poset, support="cover") -> core.IncidenceElement:
    """1 on the diagonal and -1 on covers (``support="cover"``) or on every x < y (``"all"``).

    The cover version inverts to maximal chain counts; the other to counts of all chains.
    """
    if support not in ("cover", "all"):
        raise ValueError(f"unknown support {support!r}")
    ctx = incidence_context(p)
    vals = {}
    for c in ctx.cells:
        if c[0] == c[1]:
            vals[c] = 1
        elif support == "all" or p.is_cover(*c):
            vals[c] = -1
    return ctx.element(vals)


def maximal_chain_count(p: Poset, x, y) -> int:
    """Number of maximal chains of the interval [x, y], by direct enumeration."""
    q = _interval_poset(p, x, y)
    return len(q.maximal_chains())


def finite_difference(p: Poset, base, f, by="cover"):
    """Finite difference of f over the up-set of ``base``, computed as f*eta.

    ``by="cover"`` subtracts the lower covers x of y, ``by="eta"`` every base <= x < y.
    """
    if by not in ("cover", "eta"):
        raise ValueError(f"unknown variant {by!r}")
    ups = p.up_set(base)
    fv = {x: Fraction(f.get(x, 0)) for x in ups}
    eta = eta_element(p, "cover" if by == "cover" else "all")
    return core.module_action(ups, p.leq, fv, lambda a, b: eta[(a, b)])


# matrix embedding

def embed_to_matrix(p: Poset, f: core.IncidenceElement):
    E = p.elements
    return [[f[(x, y)] if p.leq(x, y) else Fraction(0) for y in E] for x in E]


def matrix_to_element(p: Poset, m) -> core.IncidenceElement:
    ctx = incidence_context(p)
    return ctx.element({(x, y): m[p.index(x)][p.index(y)] for x, y in ctx.cells})


def is_transitive(m) -> bool:
    """f(x0, xn) = 0 implies every product f(x0,x1)...f(x_{n-1},xn) vanishes (n >= 0).

    n = 0 forces a nonzero diagonal; for n >= 1 it suffices that y is not
    reachable from x along nonzero entries whenever f(x, y) = 0.
    """
    n = len(m)
    if any(m[i][i] == 0 for i in range(n)):
        return False
    for i in range(n):
        seen = {i}
        frontier = [i]
        while frontier:
            k = frontier.pop()
            for j in range(n):
                if m[k][j] != 0 and j not in seen:
                    seen.add(j)
                    frontier.append(j)
        if any(m[i][j] == 0 for j in seen):
            return False
    return True


def matrix_inverse(m):
    return linalg.inverse(m)
