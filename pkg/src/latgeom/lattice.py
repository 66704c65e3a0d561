"""Lattice representation, exact determinants, duals, LLL reduction, and the
catalog of named lattices.

A lattice is ``sqrt(scale_sq)`` times the integer row span of ``basis``.
Keeping the irrational part as a single squared scalar means every Gram matrix
of an exact lattice is rational, so squared lengths and squared determinants
stay exact. Float lattices (``exact=False``) run through the same code with
IEEE doubles and a documented tolerance of 1e-9.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

import sympy as sp

from . import _linalg as la
from .errors import (
    CatalogMissError,
    InvalidInputError,
    InvalidLatticeError,
    UnsupportedRankError,
)

FLOAT_TOL = 1e-9


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if "/" in x:
            p, q = x.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(x))
    raise InvalidInputError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class Lattice:
    """Immutable lattice value; all operations return new values."""

    basis: tuple | None  # m rows of length ambient_dim, or None for gram-only
    ambient_dim: int
    scale_sq: Any = Fraction(1)  # lattice = sqrt(scale_sq) * rows
    exact: bool = True
    gram_override: tuple | None = None  # for gram-only lattices
    meta: Mapping[str, Any] = field(default_factory=dict)

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence], scale_sq=1, exact: bool | None = None,
                  meta: Mapping[str, Any] | None = None) -> "Lattice":
        rows = [list(r) for r in rows]
        if not rows:
            raise InvalidInputError("empty basis")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise InvalidInputError("ragged basis")
        if exact is None:
            exact = all(isinstance(x, (int, Fraction, str)) for r in rows for x in r)
        if exact:
            rows = [[_to_fraction(x) for x in r] for r in rows]
            scale_sq = _to_fraction(scale_sq)
        else:
            rows = [[float(x) for x in r] for r in rows]
            scale_sq = float(scale_sq)
        lat = Lattice(basis=tuple(tuple(r) for r in rows), ambient_dim=n,
                      scale_sq=scale_sq, exact=exact, meta=dict(meta or {}))
        if lat.det_sq() <= 0:
            raise InvalidLatticeError("basis vectors are linearly dependent")
        return lat

    @staticmethod
    def from_gram(gram: Sequence[Sequence], exact: bool | None = None,
                  meta: Mapping[str, Any] | None = None) -> "Lattice":
        g = [list(r) for r in gram]
        m = len(g)
        if exact is None:
            exact = all(isinstance(x, (int, Fraction, str)) for r in g for x in r)
        if exact:
            g = [[_to_fraction(x) for x in r] for r in g]
        else:
            g = [[float(x) for x in r] for r in g]
        lat = Lattice(basis=None, ambient_dim=m, scale_sq=Fraction(1) if exact else 1.0,
                      exact=exact, gram_override=tuple(tuple(r) for r in g),
                      meta=dict(meta or {}))
        if lat.det_sq() <= 0:
            raise InvalidLatticeError("Gram matrix is not positive definite")
        return lat

    # -- basic geometry ------------------------------------------------------

    @property
    def rank(self) -> int:
        if self.basis is not None:
            return len(self.basis)
        return len(self.gram_override)

    def gram(self):
        """Gram matrix of the (scaled) basis; rational for exact lattices."""
        if self.gram_override is not None:
            return [list(r) for r in self.gram_override]
        g = la.gram_matrix([list(r) for r in self.basis])
        s = self.scale_sq
        return [[s * x for x in row] for row in g]

    def det_sq(self):
        return la.det(self.gram())

    def determinant(self):
        """D(L): volume of a basic parallelotope. Exact (sympy) when exact."""
        d2 = self.det_sq()
        if self.exact:
            return sp.sqrt(sp.Rational(d2.numerator, d2.denominator))
        return math.sqrt(d2)

    def norm_sq(self, coeffs):
        """Squared length of the lattice vector with the given coefficients."""
        g = self.gram()
        return sum(ci * sum(gij * cj for gij, cj in zip(gi, coeffs))
                   for ci, gi in zip(coeffs, g))

    def inner(self, coeffs_a, coeffs_b):
        g = self.gram()
        return sum(ai * sum(gij * bj for gij, bj in zip(gi, coeffs_b))
                   for ai, gi in zip(coeffs_a, g))

    def to_ambient(self, coeffs):
        """Ambient float coordinates of a coefficient vector (basis required)."""
        if self.basis is None:
            raise UnsupportedRankError("gram-only lattice has no ambient embedding")
        s = math.sqrt(float(self.scale_sq))
        return [s * float(sum(c * row[j] for c, row in zip(coeffs, self.basis)))
                for j in range(self.ambient_dim)]

    def coords_of(self, point):
        """Coefficients (in the rational part of the basis) of an ambient point
        divided by sqrt(scale_sq); exact for exact lattices and rational input."""
        if self.basis is None:
            raise UnsupportedRankError("gram-only lattice has no ambient embedding")
        b = [list(r) for r in self.basis]
        g0 = la.gram_matrix(b)
        rhs = [la.dot(list(point), row) for row in b]
        sol = la.solve(g0, rhs)
        return sol

    def with_meta(self, **kv) -> "Lattice":
        meta = dict(self.meta)
        meta.update(kv)
        return Lattice(self.basis, self.ambient_dim, self.scale_sq, self.exact,
                       self.gram_override, meta)

    def _scaled_meta(self, f):
        meta = dict(self.meta)
        if "min_norm_sq" in meta:
            meta["min_norm_sq"] = meta["min_norm_sq"] * f
        return meta

    def scaled(self, factor_sq) -> "Lattice":
        """Lattice scaled by sqrt(factor_sq); factor_sq rational keeps exactness."""
        if self.exact:
            f = _to_fraction(factor_sq)
            if self.gram_override is not None:
                g = [[f * x for x in row] for row in self.gram_override]
                return Lattice(None, self.ambient_dim, Fraction(1), True,
                               tuple(tuple(r) for r in g), self._scaled_meta(f))
            return Lattice(self.basis, self.ambient_dim, self.scale_sq * f,
                           True, None, self._scaled_meta(f))
        f = float(factor_sq)
        if self.gram_override is not None:
            g = [[f * x for x in row] for row in self.gram_override]
            return Lattice(None, self.ambient_dim, 1.0, False,
                           tuple(tuple(r) for r in g), self._scaled_meta(f))
        return Lattice(self.basis, self.ambient_dim, float(self.scale_sq) * f,
                       False, None, self._scaled_meta(f))

    def transformed(self, u) -> "Lattice":
        """Apply an integer change of basis (rows of u give new generators)."""
        meta = dict(self.meta)
        meta.pop("min_norm_sq", None)  # u need not be unimodular
        if self.gram_override is not None:
            g = self.gram()
            ug = la.mat_mul([list(map(Fraction, r)) if self.exact else list(map(float, r))
                             for r in u], g)
            new_g = la.mat_mul(ug, la.transpose([list(map(Fraction, r)) if self.exact
                                                 else list(map(float, r)) for r in u]))
            return Lattice(None, self.ambient_dim, self.scale_sq, self.exact,
                           tuple(tuple(r) for r in new_g), meta)
        rows = la.mat_mul([list(r) for r in u], [list(r) for r in self.basis])
        return Lattice(tuple(tuple(r) for r in rows), self.ambient_dim,
                       self.scale_sq, self.exact, None, meta)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> str:
        if self.gram_override is not None:
            g = [[str(x) for x in row] for row in self.gram_override]
            return json.dumps({"gram": g, "exact": self.exact})
        basis = [[str(x) if self.exact else x for x in row] for row in self.basis]
        payload = {"ambient_dim": self.ambient_dim, "basis": basis, "exact": self.exact}
        if self.scale_sq != 1:
            payload["scale_sq"] = str(self.scale_sq) if self.exact else self.scale_sq
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "Lattice":
        obj = json.loads(text)
        if "gram" in obj:
            return Lattice.from_gram(obj["gram"], exact=obj.get("exact"))
        return Lattice.from_rows(obj["basis"], scale_sq=obj.get("scale_sq", 1),
                                 exact=obj.get("exact"))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def determinant(lat: Lattice):
    return lat.determinant()


def dual(lat: Lattice) -> Lattice:
    """Polar lattice L*: inverse-transpose basis; requires full rank."""
    if lat.basis is None or lat.rank != lat.ambient_dim:
        raise UnsupportedRankError("dual requires a full-rank lattice with a basis")
    if lat.exact:
        inv = la.inverse([list(r) for r in lat.basis])
        rows = la.transpose(inv)
        return Lattice.from_rows(rows, scale_sq=Fraction(1) / Fraction(lat.scale_sq))
    import numpy as np
    inv = np.linalg.inv(np.array(lat.basis, dtype=float)).T / math.sqrt(float(lat.scale_sq))
    return Lattice.from_rows(inv.tolist(), exact=False)


def dual_in_span(lat: Lattice) -> Lattice:
    """Dual taken inside the span of a (possibly lower-rank) lattice."""
    if lat.basis is None:
        g = lat.gram()
        return Lattice.from_gram(la.inverse(g), exact=lat.exact)
    b = [list(r) for r in lat.basis]
    g0 = la.gram_matrix(b)
    rows = la.mat_mul(la.inverse(g0), b)
    if lat.exact:
        return Lattice.from_rows(rows, scale_sq=Fraction(1) / Fraction(lat.scale_sq))
    return Lattice.from_rows(rows, scale_sq=1.0 / float(lat.scale_sq), exact=False)


def _lll_transform(gram, delta, exact):
    """LLL on a Gram matrix; returns the unimodular transform U (list of rows).

    Exact rational arithmetic when ``exact`` (parameter as a Fraction), float
    otherwise. Textbook Gram-only LLL with full GSO recomputation; fine at
    desk scale (rank <= 24).
    """
    m = len(gram)
    g = [list(r) for r in gram]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    delta = Fraction(delta).limit_denominator(10**6) if exact else float(delta)
    half = Fraction(1, 2) if exact else 0.5

    def gso():
        mu = [[0] * m for _ in range(m)]
        bstar = [0] * m
        for i in range(m):
            bstar[i] = g[i][i]
            for j in range(i):
                num = g[i][j] - sum(mu[i][t] * mu[j][t] * bstar[t] for t in range(j))
                mu[i][j] = num / bstar[j]
                bstar[i] -= mu[i][j] ** 2 * bstar[j]
        return mu, bstar

    def apply_row_op(i, j, q):
        # row_i -= q * row_j on both the transform and the gram
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]
        for c in range(m):
            g[i][c] -= q * g[j][c]
        for r in range(m):
            g[r][i] -= q * g[r][j]

    def swap(i, j):
        u[i], u[j] = u[j], u[i]
        g[i], g[j] = g[j], g[i]
        for r in range(m):
            g[r][i], g[r][j] = g[r][j], g[r][i]

    k = 1
    while k < m:
        mu, bstar = gso()
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > half:
                q = round(mu[k][j])
                apply_row_op(k, j, q)
                mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k, k - 1)
            k = max(k - 1, 1)
    return u


def reduce(lat: Lattice, delta=Fraction(99, 100)) -> Lattice:
    """LLL-reduced basis of the same lattice (unimodular change of basis)."""
    u = _lll_transform(lat.gram(), delta, lat.exact)
    out = lat.transformed(u)
    return out.with_meta(reduction_transform=tuple(tuple(r) for r in u))


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

def _fcc_rows(n):
    if n == 3:
        return [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = rows[0][1] = 1
    for i in range(1, n):
        rows[i][i - 1] = 1
        rows[i][i] = -1
    return rows


def _an_rows(n):
    rows = []
    for i in range(n):
        r = [0] * (n + 1)
        r[i] = 1
        r[i + 1] = -1
        rows.append(r)
    return rows


def _e8_rows():
    rows = [[2, 0, 0, 0, 0, 0, 0, 0]]
    for i in range(6):
        r = [0] * 8
        r[i] = -1
        r[i + 1] = 1
        rows.append(r)
    rows.append([Fraction(1, 2)] * 8)
    return rows


@functools.lru_cache(maxsize=None)
def _e8_lattice():
    lat = Lattice.from_rows(_e8_rows())
    assert lat.det_sq() == 1
    return lat


def _orthogonal_sublattice(lat: Lattice, normals):
    """Sublattice of lat orthogonal (in ambient metric) to the given lattice
    vectors; returned with an exact basis."""
    b = [list(r) for r in lat.basis]
    rows = []
    for nv in normals:
        vals = [Fraction(la.dot(bi, nv)) for bi in b]
        lcm = math.lcm(*(v.denominator for v in vals))
        rows.append([int(v * lcm) for v in vals])
    # integer coefficient vectors c with rows . c = 0
    ker = la.integer_kernel(rows)
    new_rows = la.mat_mul(ker, b)
    return Lattice.from_rows(new_rows, scale_sq=lat.scale_sq)


_GOLAY_B = [
    [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0],
    [1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1],
    [1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1],
    [1, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0],
    [1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1],
    [1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1],
    [1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1],
    [1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0],
    [1, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0],
    [1, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0],
    [1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1],
]


@functools.lru_cache(maxsize=None)
def _golay_generator():
    """Rows of the [I | B] generator of the extended binary Golay code,
    sanity-checked by full weight enumeration."""
    gen = [[int(i == j) for j in range(12)] + _GOLAY_B[i] for i in range(12)]
    weights = {}
    for mask in range(4096):
        w = [0] * 24
        for i in range(12):
            if mask >> i & 1:
                w = [(a + b) % 2 for a, b in zip(w, gen[i])]
        weights[sum(w)] = weights.get(sum(w), 0) + 1
    assert set(weights) == {0, 8, 12, 16, 24} and weights[8] == 759, weights
    return gen


@functools.lru_cache(maxsize=None)
def _leech_lattice():
    """Leech lattice as sqrt(1/8) times an integer matrix; det verified."""
    gen = _golay_generator()
    spanning = [[2 * x for x in row] for row in gen]
    for i in range(1, 24):
        r = [0] * 24
        r[0] = 4
        r[i] = 4
        spanning.append(r)
    r = [0] * 24
    r[0] = 8
    spanning.append(r)
    spanning.append([-3] + [1] * 23)
    basis = la.hnf_basis(spanning)
    lat = Lattice.from_rows(basis, scale_sq=Fraction(1, 8))
    assert lat.det_sq() == 1, lat.det_sq()
    return lat


_CATALOG_ALIASES = {
    "z": "Z", "zn": "Z",
    "a": "A", "an": "A",
    "astar": "Astar", "a*": "Astar",
    "d": "D", "dn": "D", "fcc": "D",
    "e": "E",
    "leech": "Leech",
    "bambahwoods": "BambahWoods", "bambah-woods": "BambahWoods",
    "nonsep": "NonSep", "nonsep3": "NonSep", "bcc-nonsep": "NonSep",
}


def catalog(name: str, n: int | None = None) -> Lattice:
    """Named lattice with exact entries and provenance metadata.

    Supported: Z(n), A(n) and Astar(n) for n <= 5, D(n) for 3 <= n <= 8,
    E(6|7|8), Leech, BambahWoods (n=3), NonSep (n=3, the thinnest
    non-separable unit-ball lattice).
    """
    key = _CATALOG_ALIASES.get(name.lower())
    if key is None:
        raise CatalogMissError(f"unknown catalog name {name!r}")
    if key == "Z":
        if not n or n < 1:
            raise CatalogMissError("Z requires a dimension n >= 1")
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        return Lattice.from_rows(rows, meta={"name": f"Z{n}", "min_norm_sq": Fraction(1),
                                             "source": "external-catalog"})
    if key == "A":
        if not n or not 1 <= n <= 5:
            raise CatalogMissError("A_n supported for 1 <= n <= 5")
        return Lattice.from_rows(_an_rows(n), meta={"name": f"A{n}",
                                                    "min_norm_sq": Fraction(2),
                                                    "source": "external-catalog"})
    if key == "Astar":
        if not n or not 1 <= n <= 5:
            raise CatalogMissError("A_n* supported for 1 <= n <= 5")
        base = Lattice.from_rows(_an_rows(n))
        out = dual_in_span(base)
        return out.with_meta(name=f"A{n}star", min_norm_sq=Fraction(n, n + 1),
                             source="external-catalog")
    if key == "D":
        if not n or not 3 <= n <= 8:
            raise CatalogMissError("D_n supported for 3 <= n <= 8")
        return Lattice.from_rows(_fcc_rows(n), meta={"name": f"D{n}",
                                                     "min_norm_sq": Fraction(2),
                                                     "source": "external-catalog"})
    if key == "E":
        if n == 8:
            return _e8_lattice().with_meta(name="E8", min_norm_sq=Fraction(2),
                                           source="external-catalog")
        if n == 7:
            e8 = _e8_lattice()
            v = [0, 0, 0, 0, 0, 0, 1, 1]
            out = _orthogonal_sublattice(e8, [v])
            assert out.det_sq() == 2
            return out.with_meta(name="E7", min_norm_sq=Fraction(2),
                                 source="external-catalog")
        if n == 6:
            e8 = _e8_lattice()
            out = _orthogonal_sublattice(e8, [[0, 0, 0, 0, 0, 0, 1, 1],
                                              [0, 0, 0, 0, 0, 1, 1, 0]])
            assert out.det_sq() == 3
            return out.with_meta(name="E6", min_norm_sq=Fraction(2),
                                 source="external-catalog")
        raise CatalogMissError("E_n supported for n in {6, 7, 8}")
    if key == "Leech":
        return _leech_lattice().with_meta(name="Leech", min_norm_sq=Fraction(4),
                                          source="external-catalog")
    if key == "BambahWoods":
        if n not in (None, 3):
            raise CatalogMissError("BambahWoods lattice lives in dimension 3")
        rows = [[0, Fraction(4, 3), Fraction(4, 3)],
                [Fraction(4, 3), 0, Fraction(4, 3)],
                [Fraction(4, 3), Fraction(4, 3), 0]]
        return Lattice.from_rows(rows, meta={"name": "BambahWoods",
                                             "source": "external-catalog"})
    if key == "NonSep":
        if n not in (None, 3):
            raise CatalogMissError("NonSep lattice lives in dimension 3")
        rows = [[-1, 1, 1], [1, -1, 1], [1, 1, -1]]
        return Lattice.from_rows(rows, scale_sq=2,
                                 meta={"name": "NonSep3",
                                       "source": "external-catalog"})
    raise CatalogMissError(f"unknown catalog name {name!r}")
