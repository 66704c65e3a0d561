"""Lattice point enumeration: shortest and closest vectors, successive
minima, Voronoi-relevant vectors, Dirichlet-Voronoi cells, covering radii,
and packing/covering densities.

All enumeration happens in coefficient space against the (rational) Gram
matrix, so results are exact for exact lattices. A float Cholesky factor
drives the branch-and-bound pruning with a small slack; every candidate is
rescored exactly before acceptance.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import sympy as sp

from . import _linalg as la
from .errors import CapabilityError, ProjectionMismatchError, UnsupportedRankError
from .lattice import Lattice, reduce as lll_reduce

MAX_ENUM_RANK = 12
MAX_VORONOI_RANK = 8
_PRUNE_SLACK = 1e-7


def kappa(n: int):
    """Volume of the n-dimensional unit ball, exact sympy."""
    return sp.pi ** sp.Rational(n, 2) / sp.gamma(sp.Rational(n, 2) + 1)


def _check_rank(lat: Lattice, cap: int, what: str):
    if lat.rank > cap:
        raise CapabilityError(
            f"{what} capped at rank {cap}; got rank {lat.rank} "
            f"(raise the cap explicitly to override)")


def _enumerate_gram(g, center, bound_sq):
    """All integer x with (x - center)^T G (x - center) <= bound_sq.

    Yields (x, exact_norm_sq). ``center`` is a rational (or float) vector;
    pruning is float with slack, scoring is exact in G's arithmetic.
    """
    m = len(g)
    gf = [[float(v) for v in row] for row in g]
    r = la.float_cholesky(gf)
    cf = [float(c) for c in center]
    bound_f = float(bound_sq) * (1 + _PRUNE_SLACK) + _PRUNE_SLACK

    x = [0] * m
    results = []

    def rec(i, remaining):
        if i < 0:
            dx = [xi - ci for xi, ci in zip(x, center)]
            q = sum(di * sum(gij * dj for gij, dj in zip(gi, dx))
                    for di, gi in zip(dx, g))
            if q <= bound_sq:
                results.append((tuple(x), q))
            return
        s = sum(r[i][j] * (x[j] - cf[j]) for j in range(i + 1, m))
        rad = math.sqrt(max(remaining, 0.0))
        lo = math.ceil(cf[i] + (-rad - s) / r[i][i] - 1e-12)
        hi = math.floor(cf[i] + (rad - s) / r[i][i] + 1e-12)
        for xi in range(lo, hi + 1):
            x[i] = xi
            term = (r[i][i] * (xi - cf[i]) + s) ** 2
            if term <= remaining + 1e-12:
                rec(i - 1, remaining - term)
        x[i] = 0

    rec(m - 1, bound_f)
    return results


def vectors_within(lat: Lattice, bound_sq, include_zero=False,
                   max_rank=MAX_ENUM_RANK):
    """All lattice vectors with squared norm <= bound_sq, as (coeffs, norm_sq)
    pairs in the original basis, sorted by (norm_sq, coeffs)."""
    _check_rank(lat, max_rank, "enumeration")
    red = lll_reduce(lat)
    u = red.meta["reduction_transform"]
    g = red.gram()
    zero = [0] * lat.rank
    found = _enumerate_gram(g, zero, bound_sq)
    out = []
    for x, q in found:
        if not include_zero and all(v == 0 for v in x):
            continue
        orig = tuple(la.vec_mat(list(x), [list(row) for row in u]))
        out.append((orig, q))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


def _canonical_sign(coeffs):
    for c in coeffs:
        if c != 0:
            return coeffs if c > 0 else tuple(-v for v in coeffs)
    return coeffs


def shortest_vectors(lat: Lattice, max_rank=MAX_ENUM_RANK):
    """(lambda_1 squared, canonical coefficient vectors of all minimal
    vectors, one per +- pair, sorted lexicographically)."""
    _check_rank(lat, max_rank, "enumeration")
    red = lll_reduce(lat)
    u = red.meta["reduction_transform"]
    g = red.gram()
    m = lat.rank
    bound = min(g[i][i] for i in range(m))
    zero = [0] * m
    best = bound
    found = _enumerate_gram(g, zero, bound)
    for x, q in found:
        if any(x) and q < best:
            best = q
    mins = set()
    for x, q in found:
        if any(x) and q == best:
            orig = tuple(la.vec_mat(list(x), [list(row) for row in u]))
            mins.add(_canonical_sign(orig))
    return best, sorted(mins)


def successive_minima(lat: Lattice, max_rank=MAX_ENUM_RANK):
    """Squared successive minima lambda_k^2 with achieving linearly
    independent coefficient vectors: (list of norm_sq, list of coeffs)."""
    _check_rank(lat, max_rank, "enumeration")
    red = lll_reduce(lat)
    u = red.meta["reduction_transform"]
    g = red.gram()
    m = lat.rank
    bound = max(g[i][i] for i in range(m))
    vecs = _enumerate_gram(g, [0] * m, bound)
    vecs = [(x, q) for x, q in vecs if any(x)]
    vecs.sort(key=lambda p: (p[1], p[0]))
    chosen, norms, rows = [], [], []
    for x, q in vecs:
        if la.rank(rows + [list(map(Fraction, x))]) > len(rows):
            rows.append(list(map(Fraction, x)))
            orig = tuple(la.vec_mat(list(x), [list(row) for row in u]))
            chosen.append(_canonical_sign(orig))
            norms.append(q)
        if len(chosen) == m:
            break
    assert len(chosen) == m  # LLL diagonal bounds guarantee this
    return norms, chosen


def closest_vectors(lat: Lattice, target_coeffs, max_rank=MAX_ENUM_RANK):
    """Closest lattice vectors to a target given by (rational) coefficients
    in the lattice basis: (dist_sq, sorted list of coefficient vectors)."""
    _check_rank(lat, max_rank, "enumeration")
    red = lll_reduce(lat)
    u = [list(row) for row in red.meta["reduction_transform"]]
    g = red.gram()
    # target in reduced coordinates: t_red = t . u^{-1}
    uinv = la.inverse([[Fraction(x) for x in row] for row in u])
    t = la.vec_mat([Fraction(c) if lat.exact else float(c)
                    for c in target_coeffs], uinv)
    # Babai rounding gives an initial radius
    x0 = [round(c) for c in t]
    dx = [a - b for a, b in zip(x0, t)]
    bound = sum(di * sum(gij * dj for gij, dj in zip(gi, dx))
                for di, gi in zip(dx, g))
    if bound == 0:
        return Fraction(0) if lat.exact else 0.0, [tuple(
            la.vec_mat(list(map(int, x0)), u))]
    found = _enumerate_gram(g, t, bound)
    best = min(q for _, q in found)
    out = sorted(tuple(la.vec_mat(list(x), u)) for x, q in found if q == best)
    return best, out


def closest_vector(lat: Lattice, target_coeffs, max_rank=MAX_ENUM_RANK):
    """Single closest vector; ties broken by lexicographically least
    coefficient vector."""
    d, vs = closest_vectors(lat, target_coeffs, max_rank=max_rank)
    return d, vs[0]


def relevant_vectors(lat: Lattice, max_rank=MAX_VORONOI_RANK):
    """Voronoi-relevant vectors, one per +- pair, as coefficient vectors.

    A nonzero v is relevant iff +-v are the unique minimizers of the norm in
    the coset v + 2L; scanning the 2^m - 1 nonzero cosets of L/2L finds all
    of them.
    """
    _check_rank(lat, max_rank, "Voronoi computation")
    red = lll_reduce(lat)
    u = [list(row) for row in red.meta["reduction_transform"]]
    g = red.gram()
    m = lat.rank
    half = Fraction(1, 2) if lat.exact else 0.5
    out = []
    for bits in itertools.product((0, 1), repeat=m):
        if not any(bits):
            continue
        t = [half * b for b in bits]
        x0 = [round(c) for c in t]
        dx = [a - b for a, b in zip(x0, t)]
        bound = 4 * sum(di * sum(gij * dj for gij, dj in zip(gi, dx))
                        for di, gi in zip(dx, g))
        # minimize ||c + 2y||^2 = 4 ||y + c/2||^2 over y
        found = _enumerate_gram(g, [-v for v in t], Fraction(bound, 4)
                                if lat.exact else bound / 4)
        best = min(q for _, q in found)
        mins = [x for x, q in found if q == best]
        if len(mins) != 2:
            continue
        v = [b + 2 * y for b, y in zip(bits, mins[0])]
        out.append(_canonical_sign(tuple(la.vec_mat(v, u))))
    return sorted(out)


def voronoi_cell(lat: Lattice, max_rank=MAX_VORONOI_RANK):
    """Dirichlet-Voronoi cell in coefficient coordinates, carrying the Gram
    matrix as its metric so volumes and norms come out right."""
    from .polytope import Polytope
    rel = relevant_vectors(lat, max_rank=max_rank)
    g = lat.gram()
    rows, b = [], []
    for v in rel:
        gv = la.vec_mat(list(v), g)
        nn = la.dot(list(v), gv)
        for s in (1, -1):
            rows.append([s * x for x in gv])
            b.append(Fraction(nn, 2) if lat.exact else nn / 2)
    return Polytope.from_halfspaces(rows, b, metric=g)


def covering_radius(lat: Lattice, max_rank=MAX_VORONOI_RANK):
    """(mu squared, deep hole) where mu is the covering radius and the deep
    hole is the lexicographically greatest Voronoi-cell vertex attaining it,
    in coefficient coordinates."""
    cell = voronoi_cell(lat, max_rank=max_rank)
    g = lat.gram()
    best = None
    hole = None
    for v in cell.vertices():
        q = la.dot(list(v), la.vec_mat(list(v), g))
        if best is None or q > best or (q == best and tuple(v) > tuple(hole)):
            best, hole = q, tuple(v)
    return best, hole


def _lambda1_sq(lat: Lattice):
    if "min_norm_sq" in lat.meta:
        return lat.meta["min_norm_sq"]
    l1, _ = shortest_vectors(lat)
    return l1


def packing_density(lat: Lattice):
    """delta_L(B^n) = kappa_n (lambda_1 / 2)^n / D(L), exact sympy."""
    n = lat.rank
    l1sq = _lambda1_sq(lat)
    l1sq = sp.Rational(Fraction(l1sq).numerator, Fraction(l1sq).denominator) \
        if lat.exact else sp.Float(l1sq)
    d2 = lat.det_sq()
    d = sp.sqrt(sp.Rational(Fraction(d2).numerator, Fraction(d2).denominator)) \
        if lat.exact else sp.Float(math.sqrt(d2))
    return sp.simplify(kappa(n) * (l1sq / 4) ** sp.Rational(n, 2) / d)


def covering_density(lat: Lattice, max_rank=MAX_VORONOI_RANK):
    """theta_L = kappa_n mu^n / D(L), exact sympy."""
    n = lat.rank
    mu_sq, _ = covering_radius(lat, max_rank=max_rank)
    mu_sq = sp.Rational(Fraction(mu_sq).numerator, Fraction(mu_sq).denominator) \
        if lat.exact else sp.Float(mu_sq)
    d2 = lat.det_sq()
    d = sp.sqrt(sp.Rational(Fraction(d2).numerator, Fraction(d2).denominator)) \
        if lat.exact else sp.Float(math.sqrt(d2))
    return sp.simplify(kappa(n) * mu_sq ** sp.Rational(n, 2) / d)
