"""Numeric evaluation of the four orbit-function families, folding of
points into the fundamental simplex, and boundary behaviour.

A family member is determined by the family letter and a dominant integral
weight; evaluation runs over the orbit of the shifted ("effective") weight
with the stabilizer order as multiplicity, which agrees exactly with the
sum over the whole Weyl group.  Values are complex; each family on each
algebra is in fact either purely real or purely imaginary, decided by the
sign the family's homomorphism gives to the element sending the effective
weight to its negative (see :func:`conjugation_parity`).
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass

import numpy as np

from .config import FOLD_MAX_ITER, MEMBERSHIP_EPS
from .errors import IdentityViolationError
from .exp_ring import FAMILIES, FAMILY_SIGN_KIND, check_family
from .root_system import (FundamentalDomain, RootSystem, fundamental_domain,
                          pairing)
from .weyl_group import signed_orbit


class OrbitFunction:
    """One member of the C / S / S-long / S-short families.

    ``lam`` is the dominant weight before the family shift.  ``is_zero``
    marks the degenerate case where the shifted weight lies on a wall whose
    reflection carries sign -1, making the function identically zero.
    """

    def __init__(self, rs: RootSystem, family: str, lam):
        self.rs = rs
        self.family = family
        self.lam = tuple(lam)
        self.effective = check_family(rs, family, lam)
        so = signed_orbit(rs, self.effective, FAMILY_SIGN_KIND[family])
        self.is_zero = so.is_zero
        self.stabilizer_order = so.stabilizer_order
        self.orbit_size = len(so.points)
        if so.is_zero:
            self._expo = np.zeros((0, rs.rank))
            self._coeff = np.zeros(0)
        else:
            self._expo = np.array(so.points, dtype=float)
            self._coeff = so.stabilizer_order * np.array(so.signs, dtype=float)

    def __call__(self, x) -> complex:
        return self.evaluate(x)

    def evaluate(self, x) -> complex:
        """Value at a single point in coroot coordinates."""
        if self.is_zero:
            return 0j
        phases = self._expo @ np.asarray(x, dtype=float)
        return complex(np.sum(self._coeff * np.exp(2j * np.pi * phases)))

    def evaluate_many(self, points) -> np.ndarray:
        """Values at an (m, n) array of points."""
        points = np.asarray(points, dtype=float)
        if self.is_zero:
            return np.zeros(points.shape[0], dtype=complex)
        phases = points @ self._expo.T
        return np.exp(2j * np.pi * phases) @ self._coeff.astype(complex)

    def __repr__(self):
        return f"OrbitFunction({self.rs.algebra}, {self.family}, {self.lam})"


def evaluate(f: OrbitFunction, x) -> complex:
    return f.evaluate(x)


def conjugation_parity(rs: RootSystem, family: str):
    """+1 if the family is real-valued on this algebra, -1 if purely
    imaginary, None if neither (orbits not symmetric under negation).

    Decided symbolically: the sign attached to the negative of the
    effective weight inside its signed orbit.  Probed with a regular weight
    that no diagram automorphism fixes, so a non-None answer holds for all
    lambda (the element sending weights to their negatives is central).
    """
    lam = tuple(range(1, rs.rank + 1))
    effective = check_family(rs, family, lam)
    so = signed_orbit(rs, effective, FAMILY_SIGN_KIND[family])
    index = dict(zip(so.points, so.signs))
    negated = tuple(-c for c in effective)
    return index.get(negated)


# ---------------------------------------------------------------------------
# Folding into the fundamental domain


@dataclass(frozen=True)
class FoldResult:
    """Outcome of folding: point = w(x) + shift with shift in the coroot
    lattice, plus the four sign values of w (the affine reflection counts
    as a reflection in a long root)."""

    point: tuple
    shift: tuple
    sigma: int
    sigma_long: int
    sigma_short: int
    iterations: int

    sign_id = 1

    def sign(self, family: str) -> int:
        return {"C": 1, "S": self.sigma,
                "SL": self.sigma_long, "SS": self.sigma_short}[family]


def fold_to_F(rs: RootSystem, x, tol: float = MEMBERSHIP_EPS,
              max_iter: int = FOLD_MAX_ITER) -> FoldResult:
    """Fold an arbitrary point into the fundamental simplex.

    Repeatedly reflects in the most violated wall: a simple-root wall when
    some <alpha_j, x> < 0, the affine wall when <xi, x> > 1.  The linear
    part and the coroot-lattice shift are tracked in exact integers, so
    ``point == w(x) + shift`` holds to rounding error and every orbit
    function satisfies ``f(x) == sign(w) * f(point)``.
    """
    n = rs.rank
    xi = rs.highest_root.omega
    xi_coroot = rs.coroot_coords(rs.highest_root)
    simple_rows = rs.cartan

    y = [float(v) for v in x]
    if len(y) != n:
        raise ValueError(f"point has length {len(y)}, expected {n}")
    shift = [0] * n
    sigma = sigma_long = sigma_short = 1

    for iteration in range(max_iter):
        worst_j, worst_violation = None, tol
        for j in range(n):
            value = sum(simple_rows[j][k] * y[k] for k in range(n))
            if -value > worst_violation:
                worst_j, worst_violation = j, -value
        affine_value = sum(xi[k] * y[k] for k in range(n)) - 1.0
        if affine_value > worst_violation:
            worst_j, worst_violation = -1, affine_value

        if worst_j is None:
            return FoldResult(tuple(y), tuple(shift),
                              sigma, sigma_long, sigma_short, iteration)
        if worst_j >= 0:
            j = worst_j
            c = sum(simple_rows[j][k] * y[k] for k in range(n))
            y[j] -= c
            cs = sum(simple_rows[j][k] * shift[k] for k in range(n))
            shift[j] -= cs
            sigma = -sigma
            if rs.long_simple[j]:
                sigma_long = -sigma_long
            else:
                sigma_short = -sigma_short
        else:
            c = sum(xi[k] * y[k] for k in range(n))
            cs = sum(xi[k] * shift[k] for k in range(n))
            for k in range(n):
                y[k] -= (c - 1.0) * xi_coroot[k]
                shift[k] += (1 - cs) * xi_coroot[k]
            sigma = -sigma
            sigma_long = -sigma_long  # the highest root is long
    raise IdentityViolationError("folding did not converge")  # pragma: no cover


# ---------------------------------------------------------------------------
# Boundary behaviour


def boundary_profile(rs: RootSystem, family: str) -> frozenset:
    """Facet indices of F where the family vanishes identically.

    Face 0 is the affine wall; face j >= 1 is <alpha_j, x> = 0.  The S
    family vanishes on every facet, C on none; the long family vanishes on
    the long walls plus the affine one, the short family on the short walls
    only (the affine reflection acts on it with sign +1).
    """
    check_family(rs, family, (0,) * rs.rank)
    if family == "C":
        return frozenset()
    if family == "S":
        return frozenset(range(rs.rank + 1))
    long_faces = {i + 1 for i in range(rs.rank) if rs.long_simple[i]}
    short_faces = {i + 1 for i in range(rs.rank) if not rs.long_simple[i]}
    if family == "SL":
        return frozenset({0} | long_faces)
    return frozenset(short_faces)


# ---------------------------------------------------------------------------
# Grids over the fundamental simplex


def compositions(total: int, parts: int):
    """Nonnegative integer tuples of the given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def grid_points(domain: FundamentalDomain, resolution: int):
    """Barycentric grid on F: all points sum_i (k_i / m) vertex_i.

    Deterministic lexicographic order; resolution 1 gives the vertices.
    """
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    n = domain.rank
    vertices = np.array([[float(c) for c in v] for v in domain.vertices])
    points = []
    weights = []
    for combo in compositions(resolution, n + 1):
        weights.append(combo)
        coords = np.array(combo, dtype=float) @ vertices / resolution
        points.append(tuple(float(c) for c in coords))
    return weights, points


@dataclass(frozen=True)
class GridTable:
    """Function values over a barycentric grid of F."""

    algebra: str
    family: str
    lam: tuple
    resolution: int
    points: tuple
    values: tuple

    def rows(self):
        for p, v in zip(self.points, self.values):
            yield tuple(p) + (v.real, v.imag)

    def write_csv(self, stream):
        n = len(self.points[0])
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow([f"x_{i + 1}" for i in range(n)] + ["re", "im"])
        for row in self.rows():
            writer.writerow([repr(v) for v in row])

    def to_json_dict(self):
        return {
            "meta": {"algebra": self.algebra, "family": self.family,
                     "lambda": list(self.lam), "resolution": self.resolution},
            "rows": [list(r) for r in self.rows()],
        }


def evaluate_grid(f: OrbitFunction, resolution: int) -> GridTable:
    domain = fundamental_domain(f.rs)
    _, points = grid_points(domain, resolution)
    values = f.evaluate_many(np.array(points))
    return GridTable(str(f.rs.algebra), f.family, f.lam, resolution,
                     tuple(points), tuple(complex(v) for v in values))


def sample_face(domain: FundamentalDomain, face: int, rng, count: int = 1):
    """Uniform random points on one facet of F (barycentric over its
    vertices).  Face 0 is the affine wall, faces 1..n the root walls."""
    keep = [i for i in range(len(domain.vertices)) if i != face]
    vertices = np.array([[float(c) for c in domain.vertices[i]] for i in keep])
    bary = rng.dirichlet(np.ones(len(keep)), size=count)
    return bary @ vertices
