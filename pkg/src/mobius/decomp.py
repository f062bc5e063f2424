"""Decompositions of morphisms, Möbius categories and their isomorphism-class variant."""
from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .core import sign
from . import core, linalg
from .fincat import (CategoryError, FinCategory, essential_mobius, is_essentially_locally_finite,
                     is_isocyclic, is_locally_finite_cat, quotient_poset)
from .poset import build_poset, incidence_context


@dataclass(frozen=True)
class Decomposition:
    factors: tuple
    composite: object


@dataclass(frozen=True)
class IsoDecomposition:
    """Orbit representative of a decomposition of a morphism class, with its automorphism count."""
    factors: tuple
    automorphisms: int


def two_splittings(cat: FinCategory) -> dict:
    """f -> list of (f1, f2) with f2 f1 = f."""
    if "d2" not in cat._cache:
        d2 = {m.id: [] for m in cat.morphisms}
        for (g, f), gf in cat.compose_table.items():
            d2[gf].append((f, g))
        cat._cache["d2"] = d2
    return cat._cache["d2"]


def _counts(cat, f, n, proper):
    """Number of n-tuples composing to f; proper tuples avoid identities (strictly, also for n = 1)."""
    memo = cat._cache.setdefault("dcounts", {})
    key = (f, n, proper)
    if key in memo:
        return memo[key]
    if n == 0:
        res = int(cat.is_identity(f))
    elif n == 1:
        res = int(not (proper and cat.is_identity(f)))
    else:
        res = 0
        for a, b in two_splittings(cat)[f]:
            if proper and cat.is_identity(a):
                continue
            res += _counts(cat, b, n - 1, proper)
    memo[key] = res
    return res


def count_Dn(cat, f, n) -> int:
    return _counts(cat, f, n, False)


def count_PDn(cat, f, n) -> int:
    """|PD_n f|, with the convention PD_1 f = {f} also for identities."""
    if n == 1:
        return 1
    return _counts(cat, f, n, True)


def _enum(cat, f, n, proper):
    if n == 1:
        return [] if proper and cat.is_identity(f) else [(f,)]
    out = []
    for a, b in two_splittings(cat)[f]:
        if proper and cat.is_identity(a):
            continue
        for rest in _enum(cat, b, n - 1, proper):
            out.append((a,) + rest)
    return out


def enumerate_Dn(cat: FinCategory, f, n: int):
    if n < 1:
        raise ValueError("n must be at least 1")
    return [Decomposition(t, f) for t in _enum(cat, f, n, False)]


def enumerate_PDn(cat: FinCategory, f, n: int):
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return [Decomposition((f,), f)]
    return [Decomposition(t, f) for t in _enum(cat, f, n, True)]


def binomial_transform_check(cat: FinCategory, f, n: int) -> dict:
    """|D_k f| = sum_j C(k, j) |PD_j f| and its inverse, for k <= n.

    Identity factors are removed strictly here, so an identity has a single
    proper 0-decomposition and no proper 1-decomposition; for non-identities
    this agrees with the convention PD_1 f = {f}.
    """
    d = [count_Dn(cat, f, k) for k in range(n + 1)]
    d[0] = int(cat.is_identity(f))
    p = [_counts(cat, f, k, True) for k in range(n + 1)]
    forward = all(d[k] == sum(comb(k, j) * p[j] for j in range(k + 1)) for k in range(1, n + 1))
    inverse = all(p[k] == sum(sign(k - j) * comb(k, j) * d[j] for j in range(k + 1))
                  for k in range(1, n + 1))
    return {"D": d[1:], "PD": [count_PDn(cat, f, k) for k in range(1, n + 1)],
            "forward": forward, "inverse": inverse}


# Möbius categories

def leroux_conditions(cat: FinCategory) -> dict:
    d2 = two_splittings(cat)
    no_identity_split = True
    for x in cat.objects:
        for a, b in d2[cat.identity(x)]:
            if not cat.is_identity(a) and not cat.is_identity(b):
                no_identity_split = False
    no_fixing = True
    for (g, f), gf in cat.compose_table.items():
        if (gf == f and not cat.is_identity(g)) or (gf == g and not cat.is_identity(f)):
            no_fixing = False
            break
    # PD_2 f is finite automatically for a finite table
    return {"finite_pd2": True, "identities_indecomposable": no_identity_split,
            "no_fixing": no_fixing}


def is_one_way(cat: FinCategory) -> bool:
    """Every x -> y -> x is a pair of identities."""
    for m in cat.morphisms:
        if m.src == m.tgt and not cat.is_identity(m.id):
            return False
        if m.src != m.tgt and cat.count(m.tgt, m.src):
            return False
    return True


def is_mobius_category(cat: FinCategory) -> bool:
    return all(leroux_conditions(cat).values())


def is_locally_finite_one_way(cat: FinCategory) -> bool:
    return is_locally_finite_cat(cat) and is_one_way(cat)


def morphism_context(cat: FinCategory) -> core.ConvolutionContext:
    if "mctx" not in cat._cache:
        cells = [m.id for m in cat.morphisms]
        cat._cache["mctx"] = core.ConvolutionContext.build(
            cells, two_splittings(cat), cat.is_identity)
    return cat._cache["mctx"]


def morphism_convolution(cat: FinCategory, alpha, beta) -> dict:
    """(alpha * beta)(f) = sum over (f1, f2) in D_2 f of alpha(f1) beta(f2)."""
    ctx = morphism_context(cat)
    out = core.convolve(ctx, ctx.element(dict(alpha)), ctx.element(dict(beta)))
    return {c: out[c] for c in ctx.cells}


def morphism_mobius(cat: FinCategory) -> core.IncidenceElement:
    if not is_mobius_category(cat):
        raise CategoryError("not a Möbius category")
    ctx = morphism_context(cat)
    return core.invert(ctx, ctx.zeta())


def max_proper_length(cat: FinCategory, f) -> int:
    """Largest n with PD_n f nonempty (capped by the number of non-identities plus one)."""
    cap = sum(1 for m in cat.morphisms if not cat.is_identity(m.id)) + 1
    n = 1
    while n < cap and _counts(cat, f, n + 1, True):
        n += 1
    return n


def mobius_by_pd(cat: FinCategory, f) -> int:
    """Alternating count of proper decompositions; 1 on identities."""
    if cat.is_identity(f):
        return 1
    return sum(sign(n) * count_PDn(cat, f, n) for n in range(1, max_proper_length(cat, f) + 1))


def bar_complex(cat: FinCategory, f):
    """Normalized bar complex of f: degree n has the proper (n+2)-decompositions.

    Returns (generators, boundaries) where ``generators[n]`` lists tuples and
    ``boundaries[n]`` holds one sparse row {index in degree n-1: sign} per
    generator; merging f_k, f_k+1 carries sign (-1)^k and degenerate faces vanish.
    """
    top = max_proper_length(cat, f)
    gens = {n: _enum(cat, f, n + 2, True) if n >= 0 else [(f,)] for n in range(-1, top - 1)}
    pos = {n: {t: i for i, t in enumerate(g)} for n, g in gens.items()}
    rows = {}
    for n in range(0, top - 1):
        rows[n] = []
        for t in gens[n]:
            row = {}
            for k in range(1, n + 2):
                merged = t[:k - 1] + (cat.comp(t[k], t[k - 1]),) + t[k + 1:]
                i = pos[n - 1].get(merged)
                if i is not None:
                    row[i] = row.get(i, 0) + sign(k)
            rows[n].append({i: v for i, v in row.items() if v})
    return gens, rows


def bar_homology_ranks(cat: FinCategory, f) -> dict:
    gens, rows = bar_complex(cat, f)
    rk = {n: linalg.sparse_rank(r) for n, r in rows.items()}
    return {n: len(g) - rk.get(n, 0) - rk.get(n + 1, 0) for n, g in gens.items()}


def bar_euler(cat: FinCategory, f) -> int:
    """Reduced Euler characteristic from the Betti numbers of the bar complex."""
    if cat.is_identity(f):
        return 1
    return sum(sign(n) * r for n, r in bar_homology_ranks(cat, f).items())


def bar_boundary_squares_to_zero(cat: FinCategory, f) -> bool:
    gens, rows = bar_complex(cat, f)
    for n in rows:
        if n - 1 not in rows:
            continue
        for row in rows[n]:
            acc = defaultdict(int)
            for i, v in row.items():
                for j, w in rows[n - 1][i].items():
                    acc[j] += v * w
            if any(acc.values()):
                return False
    return True


def is_right_cancellative(cat: FinCategory) -> bool:
    """gf = hf implies g = h."""
    for f in cat.morphisms:
        seen = set()
        for g in cat.out_of(f.tgt):
            gf = cat.compose_table[(g, f.id)]
            if gf in seen:
                return False
            seen.add(gf)
    return True


def morphism_poset(cat: FinCategory):
    """f <= g iff g = h f for some h."""
    pairs = [(a, f) for f, sp in two_splittings(cat).items() for a, _ in sp]
    return build_poset([m.id for m in cat.morphisms], pairs, "full")


def morphism_order_and_embedding(cat: FinCategory, samples=5, seed=0) -> dict:
    """Divisibility order on morphisms and the embedding beta -> beta^ into its incidence algebra."""
    if not is_mobius_category(cat):
        raise CategoryError("not a Möbius category")
    p = morphism_poset(cat)
    report = {"poset": p, "cancellative": is_right_cancellative(cat), "notice": None,
              "shift_invariant": None, "injective": None, "homomorphism": None}
    if not report["cancellative"]:
        report["notice"] = "category is not right cancellative; embedding check skipped"
        return report
    quotient = {}
    for g, sp in two_splittings(cat).items():
        for a, h in sp:
            quotient[(a, g)] = h
    ictx = incidence_context(p)

    def hat(beta):
        return ictx.element({c: beta.get(quotient[c], 0) for c in ictx.cells})

    rng = random.Random(seed)
    ids = [m.id for m in cat.morphisms]
    shift = inj = hom = True
    for _ in range(samples):
        b1 = {f: rng.randint(-2, 2) for f in ids}
        b2 = {f: rng.randint(-2, 2) for f in ids}
        h1, h2 = hat(b1), hat(b2)
        for (a, g), h in quotient.items():
            if h1[(a, g)] != h1[(cat.identity(cat.src(h)), h)]:
                shift = False
        if any(h1[(cat.identity(cat.src(f)), f)] != b1[f] for f in ids):
            inj = False
        prod = morphism_convolution(cat, b1, b2)
        if hat(prod) != core.convolve(ictx, h1, h2):
            hom = False
    report.update(shift_invariant=shift, injective=inj, homomorphism=hom)
    return report


# isomorphism classes of decompositions

def _require_efd(cat):
    if not (is_essentially_locally_finite(cat) and is_isocyclic(cat)):
        raise CategoryError("category is not an essentially finite decomposition category "
                            "(needs isocyclic and essentially locally finite)")


def _class_reps(cat):
    return [c[0] for c in cat.object_classes()[0]]


def iso_orbits(cat: FinCategory, f, n: int, proper=True):
    """Orbits of n-decompositions of the class of f under level-wise isomorphisms.

    Objects are moved to class representatives, so the acting group at level i
    is Aut(x_i).  For every orbit the stabilizer order is tracked as
    |kernel| * |pairs (h, b) with b g h = g|, where h runs over the projection
    of the prefix stabilizer to the current level.
    """
    _require_efd(cat)
    _, mclass = cat.morphism_classes()
    target = mclass[f]
    x0, y = cat.rep(cat.src(f)), cat.rep(cat.tgt(f))
    reps = _class_reps(cat)
    aut = {x: cat.automorphisms(x) for x in reps}
    out = []

    def rec(prefix, comp, x, H, size):
        level = len(prefix)
        if level == n:
            if x == y and mclass[comp] == target:
                out.append(IsoDecomposition(tuple(prefix), size))
            return
        for z in reps:
            if not cat.count(x, z) or not cat.count(z, y):
                continue
            if level == n - 1 and z != y:
                continue
            seen = set()
            for g in cat.hom(x, z):
                if g in seen or (proper and n > 1 and cat.is_iso(g)):
                    continue
                stab_pairs = 0
                newH = set()
                for h in H:
                    gh = cat.comp(g, h)
                    for b in aut[z]:
                        img = cat.comp(b, gh)
                        seen.add(img)
                        if img == g:
                            stab_pairs += 1
                            newH.add(b)
                new_size = size // len(H) * stab_pairs
                rec(prefix + [g], g if comp is None else cat.comp(g, comp), z, sorted(newH, key=str), new_size)

    rec([], None, x0, aut[x0], len(aut[x0]))
    return out


def iso_decomposition_cardinality(cat: FinCategory, f, n: int, proper=True) -> Fraction:
    """Groupoid cardinality as a sum over strings between representatives, each weighted by
    1/prod |Aut(x_i)| (the rule |X // G| = |X| / |G| at each object sequence)."""
    _require_efd(cat)
    _, mclass = cat.morphism_classes()
    target = mclass[f]
    x0, y = cat.rep(cat.src(f)), cat.rep(cat.tgt(f))
    reps = _class_reps(cat)
    a = {x: len(cat.automorphisms(x)) for x in reps}
    layer = {None: Fraction(1, a[x0])}
    cur_obj = {None: x0}
    for level in range(n):
        nxt = defaultdict(Fraction)
        for p, w in layer.items():
            x = cur_obj[p]
            for z in reps:
                if not cat.count(z, y):
                    continue
                for g in cat.hom(x, z):
                    if proper and n > 1 and cat.is_iso(g):
                        continue
                    q = g if p is None else cat.comp(g, p)
                    nxt[q] += w / a[z]
        layer = nxt
        cur_obj = {q: cat.tgt(q) for q in layer}
    return sum((w for q, w in layer.items() if cat.tgt(q) == y and mclass[q] == target), Fraction(0))


def enumerate_iso_decompositions(cat: FinCategory, f, n: int, proper=True) -> dict:
    orbits = iso_orbits(cat, f, n, proper)
    card = sum((Fraction(1, o.automorphisms) for o in orbits), Fraction(0))
    return {"classes": len(orbits), "automorphisms": [o.automorphisms for o in orbits],
            "cardinality": card, "orbits": orbits}


def max_class_length(cat: FinCategory) -> int:
    """Proper steps strictly raise the class, so the height of the class poset bounds lengths."""
    p = quotient_poset(cat)
    return max((len(c) for c in p.chains()), default=1)


def class_decomposition_counts(cat: FinCategory, f, n: int, proper=True) -> list:
    return [len(iso_orbits(cat, f, k, proper)) for k in range(1, n + 1)]


def class_binomial_check(cat: FinCategory, f, n: int) -> dict:
    if cat.is_iso(f):
        raise CategoryError("class binomial identities are stated for non-isomorphisms")
    d = [0] + class_decomposition_counts(cat, f, n, proper=False)
    p = [0] + class_decomposition_counts(cat, f, n, proper=True)
    forward = all(d[k] == sum(comb(k, j) * p[j] for j in range(1, k + 1)) for k in range(1, n + 1))
    inverse = all(p[k] == sum(sign(k - j) * comb(k, j) * d[j] for j in range(1, k + 1))
                  for k in range(1, n + 1))
    return {"D": d[1:], "PD": p[1:], "forward": forward, "inverse": inverse}


def filling_witness(cat: FinCategory):
    """A cospan pair x -> y1 -> y, x -> y2 -> y with y1 ~ y2 and no commuting isomorphism, or None."""
    d2 = two_splittings(cat)
    for m in cat.morphisms:
        groups = defaultdict(list)
        for a, b in d2[m.id]:
            groups[cat.rep(cat.tgt(a))].append((a, b))
        for pairs in groups.values():
            a1, b1 = pairs[0]
            y1 = cat.tgt(a1)
            orbit = set()
            for phi in cat.isos_from(y1):
                orbit.add((cat.comp(phi, a1), cat.comp(b1, cat.inverse(phi))))
            for a2, b2 in pairs[1:]:
                if (a2, b2) not in orbit:
                    return (a1, b1, a2, b2)
    return None


def is_isomorphism_filling(cat: FinCategory) -> bool:
    return filling_witness(cat) is None


def class_context(cat: FinCategory) -> core.ConvolutionContext:
    """Convolution context on morphism classes; cells are representative morphism ids.

    Splittings of a class are the orbits of its 2-decompositions.  Whether the
    resulting product is associative is a separate question, answered by
    :func:`class_associativity_defects`.
    """
    if "cctx" not in cat._cache:
        _require_efd(cat)
        classes, mclass = cat.morphism_classes()
        label = [c[0] for c in classes]
        splits = {}
        for c in classes:
            splits[c[0]] = [(label[mclass[o.factors[0]]], label[mclass[o.factors[1]]])
                            for o in iso_orbits(cat, c[0], 2, proper=False)]
        cat._cache["cctx"] = core.ConvolutionContext.build(label, splits, cat.is_iso)
    return cat._cache["cctx"]


def class_associativity_defects(cat: FinCategory) -> list:
    """Classes where the two nested coproducts differ, or differ from the orbit census of D_3."""
    if "cdefects" in cat._cache:
        return cat._cache["cdefects"]
    ctx = class_context(cat)
    classes, mclass = cat.morphism_classes()
    label = [c[0] for c in classes]
    bad = set(ctx.coassociativity_defects())
    for c in ctx.cells:
        direct = Counter(tuple(label[mclass[g]] for g in o.factors)
                         for o in iso_orbits(cat, c, 3, proper=False))
        nested = Counter()
        for x, d in ctx.splittings[c]:
            for a, b in ctx.splittings[x]:
                nested[(a, b, d)] += 1
        if direct != nested:
            bad.add(c)
    cat._cache["cdefects"] = out = [c for c in ctx.cells if c in bad]
    return out


def class_mobius_by_counts(cat: FinCategory, f) -> int:
    if cat.is_iso(f):
        return 1
    top = max_class_length(cat)
    return sum(sign(n) * len(iso_orbits(cat, f, n, proper=True)) for n in range(1, top + 1))


def reduced_euler_g(cat: FinCategory, f) -> Fraction:
    """sum_n (-1)^n |PD_n of the class of f|_g."""
    top = max_class_length(cat)
    return sum((sign(n) * iso_decomposition_cardinality(cat, f, n, proper=True)
                for n in range(1, top + 1)), Fraction(0))


def groupoid_decomposition_sums(cat: FinCategory) -> dict:
    """(x, y) -> sum over morphism classes from x to y of the reduced groupoid Euler characteristic."""
    _require_efd(cat)
    p = quotient_poset(cat)
    _, mclass = cat.morphism_classes()
    out = {}
    for x, y in p.relation():
        if x == y:
            continue
        seen = {}
        for f in cat.hom(x, y):
            seen.setdefault(mclass[f], f)
        out[(x, y)] = sum((reduced_euler_g(cat, f) for f in seen.values()), Fraction(0))
    return out


def essential_morphism_mobius(cat: FinCategory, check=True, strict_filling=False) -> core.IncidenceElement:
    """Inverse of the constant-1 map in the class algebra.

    The class algebra is used only when it is associative in the sense of the
    D_3 census; ``strict_filling`` additionally demands the isomorphism filling
    property literally.  With ``check`` the alternating class counts and the
    groupoid sum over classes (against the essential Möbius function of
    objects) are asserted.
    """
    if strict_filling:
        w = filling_witness(cat)
        if w is not None:
            raise CategoryError(f"category is not isomorphism filling; witness {w!r}")
    bad = class_associativity_defects(cat)
    if bad:
        raise CategoryError(f"class algebra is not associative at class {bad[0]!r}")
    ctx = class_context(cat)
    mu = core.invert(ctx, ctx.zeta())
    if check:
        for c in ctx.cells:
            if mu[c] != class_mobius_by_counts(cat, c):
                raise AssertionError(f"class Möbius value at {c!r} disagrees with class counts")
        emu = essential_mobius(cat)
        for cell, v in groupoid_decomposition_sums(cat).items():
            if emu[cell] != v:
                raise AssertionError(f"groupoid decomposition sum disagrees at {cell!r}")
    return mu


def exercise_identity(a: int):
    """(sum over compositions of a into k >= 2 parts of (-1)^k multinomial, (-1)^a + 1)."""
    if not 2 <= a <= 12:
        raise ValueError("a must lie in 2..12")
    total = 0
    for mask in range(1 << (a - 1)):
        parts, last = [], 0
        for i in range(1, a):
            if mask >> (i - 1) & 1:
                parts.append(i - last)
                last = i
        parts.append(a - last)
        k = len(parts)
        if k < 2:
            continue
        m = factorial(a)
        for q in parts:
            m //= factorial(q)
        total += sign(k) * m
    return total, sign(a) + 1
