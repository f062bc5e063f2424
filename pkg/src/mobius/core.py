"""Convolution algebras over finite decomposition structures.

A :class:`ConvolutionContext` is a finite coalgebra: a list of cells, and for
every cell the list of ordered ways it splits into a left and right piece.
Elements of the dual algebra are sparse maps cell -> Fraction.  Posets,
categories, reduced interval algebras and morphism-class algebras all build a
context and reuse :func:`convolve` and :func:`invert`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

Cell = Hashable


class ContextMismatchError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    def __init__(self, cell, msg=None):
        self.cell = cell
        super().__init__(msg or f"value on diagonal cell {cell!r} is zero")


class NotTriangularError(ValueError):
    pass


def sign(n: int) -> int:
    """(-1)^n as an int, also for negative n."""
    return -1 if n % 2 else 1


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(eq=False)
class ConvolutionContext:
    """Finite coalgebra: cells, splittings, counit and the left-unit cell of each cell.

    ``diagonal[c]`` is the counit cell ``d`` with ``(d, c)`` in ``splittings[c]``;
    inversion divides by the value there.  ``order`` lists cells so that every
    right factor of a non-trivial splitting comes earlier than the cell itself.
    """

    cells: list
    splittings: dict
    counit: dict
    diagonal: dict
    order: list = field(init=False, repr=False)
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self._index = {c: i for i, c in enumerate(self.cells)}
        if len(self._index) != len(self.cells):
            raise ValueError("duplicate cells")
        for c in self.cells:
            for a, b in self.splittings.get(c, ()):
                if a not in self._index or b not in self._index:
                    raise ValueError(f"splitting of {c!r} uses unknown cell")
        self.order = self._triangular_order()

    @classmethod
    def build(cls, cells: Iterable, splittings: Mapping, counit: Mapping | Callable):
        cells = list(cells)
        if callable(counit):
            counit = {c: 1 if counit(c) else 0 for c in cells}
        else:
            counit = {c: counit.get(c, 0) for c in cells}
        splittings = {c: [tuple(p) for p in splittings.get(c, ())] for c in cells}
        diagonal = {}
        for c in cells:
            lefts = [a for a, b in splittings[c] if b == c and counit[a]]
            if len(lefts) != 1:
                raise NotTriangularError(
                    f"cell {c!r} needs exactly one left-unit splitting, found {len(lefts)}")
            diagonal[c] = lefts[0]
        return cls(cells, splittings, counit, diagonal)

    def _triangular_order(self):
        # right factor b of (a, c) with a != diagonal must be computed before c
        deps = {c: set() for c in self.cells}
        for c in self.cells:
            d = self.diagonal[c]
            for a, b in self.splittings[c]:
                if (a, b) == (d, c):
                    continue
                if b == c:
                    raise NotTriangularError(f"cell {c!r} is a right factor of itself")
                deps[c].add(b)
        order, state = [], {}
        for root in self.cells:
            if root in state:
                continue
            stack = [(root, iter(deps[root]))]
            state[root] = 1
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    stack.pop()
                    state[node] = 2
                    order.append(node)
                elif state.get(nxt) == 1:
                    raise NotTriangularError(f"splittings are cyclic through {nxt!r}")
                elif nxt not in state:
                    state[nxt] = 1
                    stack.append((nxt, iter(deps[nxt])))
        return order

    def __contains__(self, cell):
        return cell in self._index

    def index(self, cell) -> int:
        return self._index[cell]

    def unit_cells(self):
        return [c for c in self.cells if self.counit[c]]

    # distinguished elements

    def element(self, values: Mapping | Callable) -> "IncidenceElement":
        if callable(values):
            values = {c: values(c) for c in self.cells}
        return IncidenceElement(self, values)

    def epsilon(self) -> "IncidenceElement":
        return IncidenceElement(self, {c: 1 for c in self.unit_cells()})

    def zeta(self) -> "IncidenceElement":
        return IncidenceElement(self, {c: 1 for c in self.cells})

    def zero(self) -> "IncidenceElement":
        return IncidenceElement(self, {})

    # coalgebra laws

    def coassociativity_defects(self):
        """Cells where the two iterated coproducts differ as multisets."""
        bad = []
        for c in self.cells:
            left = Counter()
            right = Counter()
            for a, x in self.splittings[c]:
                for b, d in self.splittings[x]:
                    left[(a, b, d)] += 1
            for y, d in self.splittings[c]:
                for a, b in self.splittings[y]:
                    right[(a, b, d)] += 1
            if left != right:
                bad.append(c)
        return bad

    def counit_defects(self):
        bad = []
        for c in self.cells:
            lhs = sum(self.counit[a] for a, b in self.splittings[c] if b == c)
            rhs = sum(self.counit[b] for a, b in self.splittings[c] if a == c)
            if lhs != 1 or rhs != 1:
                bad.append(c)
        return bad


class IncidenceElement:
    """Sparse element of the convolution algebra of ``context``; exact zeros are dropped."""

    __slots__ = ("context", "values")

    def __init__(self, context: ConvolutionContext, values: Mapping):
        self.context = context
        vals = {}
        for c, v in values.items():
            if c not in context:
                raise KeyError(f"{c!r} is not a cell of the context")
            v = as_fraction(v)
            if v:
                vals[c] = v
        self.values = vals

    def __getitem__(self, cell) -> Fraction:
        return self.values.get(cell, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, IncidenceElement):
            return NotImplemented
        return self.context is other.context and self.values == other.values

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def __repr__(self):
        return f"IncidenceElement({len(self.values)} nonzero cells)"

    def __add__(self, other):
        _same(self, other)
        out = dict(self.values)
        for c, v in other.values.items():
            out[c] = out.get(c, 0) + v
        return IncidenceElement(self.context, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IncidenceElement(self.context, {c: -v for c, v in self.values.items()})

    def scale(self, k):
        k = as_fraction(k)
        return IncidenceElement(self.context, {c: k * v for c, v in self.values.items()})

    def __mul__(self, other):
        return convolve(self.context, self, other)

    def items(self):
        return self.values.items()


def _same(f, g, ctx=None):
    ctx = ctx or f.context
    if f.context is not ctx or g.context is not ctx:
        raise ContextMismatchError("elements belong to different convolution contexts")


def convolve(ctx: ConvolutionContext, f: IncidenceElement, g: IncidenceElement) -> IncidenceElement:
    """(f*g)(c) = sum over splittings (a, b) of c of f(a) g(b)."""
    _same(f, g, ctx)
    fv, gv = f.values, g.values
    out = {}
    for c in ctx.cells:
        s = 0
        for a, b in ctx.splittings[c]:
            x = fv.get(a)
            if x:
                y = gv.get(b)
                if y:
                    s += x * y
        if s:
            out[c] = s
    return IncidenceElement(ctx, out)


def is_unit(ctx: ConvolutionContext, f: IncidenceElement) -> bool:
    if f.context is not ctx:
        raise ContextMismatchError("element does not belong to the context")
    return all(f[c] != 0 for c in ctx.unit_cells())


def invert(ctx: ConvolutionContext, f: IncidenceElement) -> IncidenceElement:
    """Two-sided inverse by the triangular recursion.

    g(d) = 1/f(d) on counit cells; otherwise
    g(c) = -(sum over other splittings (a, b) of f(a) g(b)) / f(diagonal(c)).
    """
    if f.context is not ctx:
        raise ContextMismatchError("element does not belong to the context")
    for d in ctx.unit_cells():
        if f[d] == 0:
            raise NotInvertibleError(d)
    fv = f.values
    g = {}
    for c in ctx.order:
        d = ctx.diagonal[c]
        s = Fraction(1) if ctx.counit[c] else Fraction(0)
        for a, b in ctx.splittings[c]:
            if a == d and b == c:
                continue
            x = fv.get(a)
            if x:
                y = g.get(b)
                if y:
                    s -= x * y
        g[c] = s / fv[d]
    return IncidenceElement(ctx, g)


def module_action(up_set, leq, g: Mapping, e: Callable) -> dict:
    """Right action of an incidence element on functions over an up-set.

    ``(g*e)(y) = sum_{x in up_set, x <= y} g(x) e(x, y)``.
    """
    out = {}
    for y in up_set:
        s = Fraction(0)
        for x in up_set:
            if leq(x, y):
                gx = g.get(x, 0)
                if gx:
                    s += gx * e(x, y)
        out[y] = s
    return out
