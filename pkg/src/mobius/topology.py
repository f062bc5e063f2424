"""Order complexes of finite posets and their homology over Q."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import sign
from . import linalg
from .poset import Poset, PosetError, adjoin_bounds, mobius


@dataclass
class OrderComplex:
    """Strict chains of a poset grouped by dimension.

    ``simplices[n + 1]`` holds the chains of n + 1 elements as sorted index
    tuples; dimension -1 is the empty chain.
    """

    poset: Poset
    simplices: list
    _pos: list = field(default=None, repr=False)

    def dim_list(self, n):
        k = n + 1
        return self.simplices[k] if 0 <= k < len(self.simplices) else []

    def counts(self) -> dict:
        return {n - 1: len(s) for n, s in enumerate(self.simplices)}

    @property
    def top_dim(self) -> int:
        return len(self.simplices) - 2

    def position(self, n, simplex) -> int:
        if self._pos is None:
            self._pos = [{s: i for i, s in enumerate(level)} for level in self.simplices]
        return self._pos[n + 1][simplex]

    def labelled(self, n):
        E = self.poset.elements
        return [tuple(E[i] for i in s) for s in self.dim_list(n)]


def order_complex(p: Poset) -> OrderComplex:
    levels = [[()]]
    for c in sorted(p.chains(), key=lambda c: (len(c), c)):
        while len(levels) <= len(c):
            levels.append([])
        levels[len(c)].append(c)
    return OrderComplex(p, levels)


def boundary_rows(cx: OrderComplex, n):
    """Sparse rows of d_n: one {face position: sign} dict per n-simplex."""
    rows = []
    for s in cx.dim_list(n):
        row = {}
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            row[cx.position(n - 1, face)] = sign(i)
        rows.append(row)
    return rows


def boundary_matrix(cx: OrderComplex, n):
    """Dense matrix of d: C_n -> C_{n-1}; rows index (n-1)-simplices, columns n-simplices."""
    if n < 0:
        raise ValueError("boundary is defined for n >= 0")
    rows = boundary_rows(cx, n)
    m = len(cx.dim_list(n - 1))
    mat = [[0] * len(rows) for _ in range(m)]
    for j, row in enumerate(rows):
        for i, v in row.items():
            mat[i][j] = v
    return mat


def homology_ranks(cx: OrderComplex, reduced=True) -> dict:
    """Betti numbers over Q as {n: rank H_n}.

    Reduced homology includes the augmentation C_0 -> C_{-1} and so also
    reports n = -1, which is nonzero only for the empty complex.
    """
    top = cx.top_dim
    ranks_d = {}
    for n in range(0 if reduced else 1, top + 1):
        ranks_d[n] = linalg.sparse_rank(boundary_rows(cx, n))
    out = {}
    for n in range(-1 if reduced else 0, max(top, 0) + 1):
        dim = len(cx.dim_list(n))
        out[n] = dim - ranks_d.get(n, 0) - ranks_d.get(n + 1, 0)
    return out


def euler_char(cx: OrderComplex, reduced=True) -> int:
    start = -1 if reduced else 0
    return sum(sign(n) * len(cx.dim_list(n)) for n in range(start, cx.top_dim + 1))


def euler_from_homology(cx: OrderComplex, reduced=True) -> int:
    return sum(sign(n) * r for n, r in homology_ranks(cx, reduced).items())


def open_interval_complex(p: Poset, x, y) -> OrderComplex:
    return order_complex(p.subposet(p.open_interval(x, y)))


def hall_mobius(p: Poset, x, y) -> int:
    """Reduced Euler characteristic of the order complex of the open interval (x, y)."""
    if not p.lt(x, y):
        raise PosetError(f"need {x!r} < {y!r}")
    return euler_char(open_interval_complex(p, x, y), reduced=True)


def hall_mobius_homology(p: Poset, x, y) -> int:
    """Same quantity through reduced Betti numbers."""
    if not p.lt(x, y):
        raise PosetError(f"need {x!r} < {y!r}")
    return euler_from_homology(open_interval_complex(p, x, y), reduced=True)


def bounded_extension_mobius(p: Poset) -> Fraction:
    q = adjoin_bounds(p, bottom=("bottom",), top=("top",))
    return mobius(q)[(("bottom",), ("top",))]


@dataclass(frozen=True)
class GaussBonnet:
    chi: int
    chi_reduced: int
    integral_e: Fraction
    integral_e_reduced: Fraction
    mobius_sum: Fraction

    def holds(self) -> bool:
        return (self.chi == self.integral_e and self.chi_reduced == self.integral_e_reduced
                and self.chi == self.mobius_sum)


def _subchains(m):
    n = len(m)
    for mask in range(1 << n):
        yield tuple(m[i] for i in range(n) if mask >> i & 1)


def euler_class(p: Poset, reduced=False) -> dict:
    """Values of e_X (or the reduced class) on each maximal chain."""
    maximal = p.maximal_chains()
    msets = [frozenset(m) for m in maximal]
    count_cache = {}

    def m_c(c):
        key = frozenset(c)
        if key not in count_cache:
            count_cache[key] = sum(1 for ms in msets if key <= ms)
        return count_cache[key]

    out = {}
    for m in maximal:
        s = Fraction(0)
        for c in _subchains(m):
            if not c and not reduced:
                continue
            k = m_c(c)
            assert k >= 1
            s += Fraction(sign(len(c) + 1), k)
        out[m] = s
    return out


def gauss_bonnet(p: Poset) -> GaussBonnet:
    cx = order_complex(p)
    mu = mobius(p)
    return GaussBonnet(
        chi=euler_char(cx, reduced=False),
        chi_reduced=euler_char(cx, reduced=True),
        integral_e=sum(euler_class(p).values(), Fraction(0)),
        integral_e_reduced=sum(euler_class(p, reduced=True).values(), Fraction(0)),
        mobius_sum=sum((mu[c] for c in p.intervals()), Fraction(0)),
    )


def homology_report(p: Poset) -> dict:
    cx = order_complex(p)
    red = homology_ranks(cx, True)
    unred = homology_ranks(cx, False)
    dims = []
    for n in range(-1, cx.top_dim + 1):
        dims.append({"dim": n, "simplices": len(cx.dim_list(n)),
                     "reduced_rank": red.get(n, 0),
                     "rank": unred.get(n)})
    return {"dimensions": dims, "euler": euler_char(cx, False),
            "reduced_euler": euler_char(cx, True)}
