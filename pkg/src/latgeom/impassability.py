"""Passability certificates and free cylinders for lattices of balls.

A lattice of balls {rB^n + x : x in L} is k-passable when some affine
k-plane misses every ball. Certificates come from saturated k-sublattices:
project L along the sublattice; if the projected lattice has covering radius
mu > r, the plane through a lift of a deep hole parallel to the sublattice
clears every ball by mu - r. The search is one-sided: absence of a
certificate up to a determinant bound is evidence, never a proof, except for
hyperplanes (k = n-1) where the exact dual-packing criterion decides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from . import _linalg as la
from .enumeration import (closest_vectors, covering_radius, kappa,
                          shortest_vectors, vectors_within)
from .errors import NotAPackingError, UnsupportedRankError
from .lattice import Lattice, dual
from .sublattice import (SublatticeWitness, enumerate_sublattices,
                         project_along, successive_minima)

VALIDATION_TOL = 1e-9


def _sqrt_exact(q):
    q = Fraction(q)
    return sp.sqrt(sp.Rational(q.numerator, q.denominator))


@dataclass(frozen=True)
class PassageCertificate:
    """Witness that the ball lattice is k-passable."""

    lattice: Lattice
    k: int
    r: object
    witness: SublatticeWitness  # direction subspace
    deep_hole: tuple  # rational coefficients in the projected lattice basis
    mu_sq: object  # squared covering radius of the projection
    projection: Lattice
    validated: bool = False
    validation_points: int = 0
    plane: tuple | None = None  # (base point, orthonormal directions), floats

    @property
    def mu(self):
        return _sqrt_exact(self.mu_sq) if self.lattice.exact else math.sqrt(self.mu_sq)

    @property
    def clearance(self):
        return self.mu - (sp.nsimplify(self.r) if self.lattice.exact else self.r)

    @property
    def clearance_float(self) -> float:
        return float(self.mu) - float(self.r)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "r": float(self.r),
            "witness": self.witness.to_dict(),
            "deep_hole": [str(x) for x in self.deep_hole],
            "mu": str(self.mu),
            "clearance": self.clearance_float,
            "validated": self.validated,
            "validation_points": self.validation_points,
            "plane": None if self.plane is None else
            {"base": list(self.plane[0]),
             "directions": [list(d) for d in self.plane[1]]},
        }


@dataclass(frozen=True)
class CylinderWitness:
    """Open cylinder about the certificate plane disjoint from all balls."""

    certificate: PassageCertificate
    base_radius: float
    guaranteed_floor: object  # exact expression; may be <= 0 (no guarantee)
    floor_float: float
    guaranteed: bool

    def to_dict(self) -> dict:
        return {"certificate": self.certificate.to_dict(),
                "base_radius": self.base_radius,
                "guaranteed_floor": str(self.guaranteed_floor),
                "floor_float": self.floor_float,
                "guaranteed": self.guaranteed}


def _default_det_bound(lat: Lattice, k: int) -> float:
    norms, _ = successive_minima(lat)
    return 3.0 * math.prod(math.sqrt(float(q)) for q in norms[:k])


def _validate_certificate(proj: Lattice, deep_hole, mu_sq, r) -> int:
    """Check every projected lattice point within mu + r of the deep hole
    keeps distance >= mu - tol; returns the number of points checked."""
    radius = math.sqrt(float(mu_sq)) + float(r) + 1.0
    bound_sq = Fraction(radius * radius).limit_denominator(10**9) \
        if proj.exact else radius * radius
    g = proj.gram()
    m = proj.rank
    # enumerate y with ||y - hole||^2 <= bound via shifted enumeration
    from .enumeration import _enumerate_gram
    pts = _enumerate_gram(g, list(deep_hole), bound_sq)
    mu_f = math.sqrt(float(mu_sq))
    for y, q in pts:
        if math.sqrt(float(q)) < mu_f - VALIDATION_TOL:
            raise AssertionError("certificate validation failed")
    return len(pts)


def _ambient_plane(lat: Lattice, w: SublatticeWitness, proj: Lattice, deep_hole):
    """Float (base point, orthonormal direction vectors) of the passage
    plane, when the parent lattice has an ambient embedding."""
    if lat.basis is None:
        return None
    dirs = [lat.to_ambient(row) for row in w.coeffs]
    # Gram-Schmidt
    ortho = []
    for d in dirs:
        v = list(d)
        for u in ortho:
            c = sum(a * b for a, b in zip(v, u))
            v = [a - c * b for a, b in zip(v, u)]
        nrm = math.sqrt(sum(x * x for x in v))
        ortho.append([x / nrm for x in v])
    # lift of the deep hole: project the corresponding lattice combination
    t = proj.meta["completion"]
    k = w.k
    lift0 = [0.0] * lat.ambient_dim
    for c, row in zip(deep_hole, t[k:]):
        amb = lat.to_ambient(row)
        lift0 = [a + float(c) * b for a, b in zip(lift0, amb)]
    # remove the component inside the direction subspace
    for u in ortho:
        c = sum(a * b for a, b in zip(lift0, u))
        lift0 = [a - c * b for a, b in zip(lift0, u)]
    return (tuple(lift0), tuple(tuple(x) for x in ortho))


def _certificate_for(lat: Lattice, w: SublatticeWitness, r, validate=True):
    proj = project_along(lat, w)
    if proj.rank > 8:
        raise UnsupportedRankError(
            "projected lattice rank exceeds the Voronoi cap")
    mu_sq, hole = covering_radius(proj)
    if float(mu_sq) <= float(r) ** 2:
        return None
    n_pts = _validate_certificate(proj, hole, mu_sq, r) if validate else 0
    plane = _ambient_plane(lat, w, proj, hole)
    return PassageCertificate(lat, w.k, r, w, tuple(hole), mu_sq, proj,
                              validated=validate, validation_points=n_pts,
                              plane=plane)


def passage_certificate(lat: Lattice, r, k: int, det_bound=None,
                        validate=True):
    """First passability certificate over saturated k-sublattices in
    ascending determinant order, or None if no searched direction works."""
    if det_bound is None:
        det_bound = _default_det_bound(lat, k)
    for w in enumerate_sublattices(lat, k, det_bound):
        cert = _certificate_for(lat, w, r, validate=validate)
        if cert is not None:
            return cert
    return None


def max_clearance(lat: Lattice, r, k: int, det_bound=None, validate=True):
    """(best clearance, best certificate) over all searched directions;
    certificate is None when no direction clears radius r. Deterministic:
    ties broken by the HNF-lexicographic order of the witness."""
    if det_bound is None:
        det_bound = _default_det_bound(lat, k)
    best = None
    best_key = None
    for w in enumerate_sublattices(lat, k, det_bound):
        proj = project_along(lat, w)
        if proj.rank > 8:
            raise UnsupportedRankError(
                "projected lattice rank exceeds the Voronoi cap")
        mu_sq, hole = covering_radius(proj)
        key = (-float(mu_sq), w.coeffs)
        if best_key is None or key < best_key:
            best_key = key
            best = (w, proj, mu_sq, hole)
    if best is None:
        return float("-inf"), None
    w, proj, mu_sq, hole = best
    clearance = math.sqrt(float(mu_sq)) - float(r)
    if float(mu_sq) <= float(r) ** 2:
        return clearance, None
    n_pts = _validate_certificate(proj, hole, mu_sq, r) if validate else 0
    plane = _ambient_plane(lat, w, proj, hole)
    cert = PassageCertificate(lat, k, r, w, tuple(hole), mu_sq, proj,
                              validated=validate, validation_points=n_pts,
                              plane=plane)
    return clearance, cert


def is_nonseparable_ball_lattice(lat: Lattice, r):
    """Hyperplane criterion for balls of radius r: no hyperplane misses all
    balls iff lambda_1 of the dual lattice is >= 1/(2r).

    Returns (flag, margin) with margin = lambda_1(dual) - 1/(2r); exact
    comparison for exact lattices and rational r.
    """
    d = dual(lat)
    l1_sq, _ = shortest_vectors(d)
    if lat.exact:
        r_ex = Fraction(r) if not isinstance(r, float) else \
            Fraction(r).limit_denominator(10**12)
        flag = Fraction(l1_sq) * 4 * r_ex * r_ex >= 1
        margin = float(_sqrt_exact(l1_sq)) - 1.0 / (2 * float(r_ex))
    else:
        margin = math.sqrt(l1_sq) - 1.0 / (2 * float(r))
        flag = margin >= -VALIDATION_TOL
    return flag, margin


def ball_lattice_density(lat: Lattice, r):
    """Density of the ball packing/arrangement {rB^n + x : x in L}."""
    n = lat.rank
    d2 = Fraction(lat.det_sq())
    det = sp.sqrt(sp.Rational(d2.numerator, d2.denominator)) if lat.exact \
        else math.sqrt(lat.det_sq())
    return kappa(n) * sp.nsimplify(r) ** n / det


def free_cylinder(lat: Lattice, r, k: int, d_nk, det_bound=None) -> CylinderWitness:
    """Cylinder of guaranteed positive radius about a passage plane.

    ``d_nk`` is a lower bound on the impassability threshold (a BoundReport
    or exact value); the floor (d_nk / density)^{1/n} - 1 is positive exactly
    when the packing is less dense than the threshold. The returned
    base_radius is the best validated clearance found by the search.
    """
    n = lat.rank
    l1_sq, _ = shortest_vectors(lat) if "min_norm_sq" not in lat.meta \
        else (lat.meta["min_norm_sq"], None)
    if float(l1_sq) < (2 * float(r)) ** 2 - VALIDATION_TOL:
        raise NotAPackingError("balls of this radius overlap (lambda_1 < 2r)")
    d_value = getattr(d_nk, "value_exact", None)
    if d_value is None:
        d_value = sp.nsimplify(getattr(d_nk, "value_float", d_nk))
    density = ball_lattice_density(lat, r)
    floor = sp.simplify((d_value / density) ** sp.Rational(1, n) - 1)
    floor_f = float(floor)
    clearance, cert = max_clearance(lat, r, k, det_bound=det_bound)
    if cert is None:
        raise NotAPackingError(
            "no passage direction found within the determinant bound")
    base = max(clearance, 0.0)
    return CylinderWitness(cert, base, floor, floor_f,
                           guaranteed=floor_f > 0)
