"""Root systems of the simple Lie algebras, with long/short root bookkeeping.

Conventions used throughout the package
---------------------------------------
* Weights are coordinate vectors in the omega basis (fundamental weights),
  so ``lam[i] = <lam, coroot_i>``.  Lattice weights have integer coordinates.
* Evaluation points are coordinate vectors in the coroot basis.  With these
  two bases the natural pairing is the plain dot product,
  ``pairing(lam, x) = sum(lam[i] * x[i])``.
* Row ``i`` of the Cartan matrix is the simple root ``alpha_i`` written in
  the omega basis: ``A[i][j] = 2 (alpha_i | alpha_j) / (alpha_j | alpha_j)``.
* The bilinear form is normalized so long roots have squared length 2.
* A simple reflection acts on weight coordinates by
  ``r_i(lam) = lam - lam[i] * A[i]``.

Orientation of the asymmetric Cartan entries: for G2 the first simple root
is long and the highest root is ``2 alpha_1 + 3 alpha_2``; for B_n the short
simple root is the last one, for C_n the long simple root is the last one,
and for F4 the order is two long simple roots followed by two short ones.
All root data is exact (integers and fractions); floating point enters only
when pairing against real points.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidAlgebraError, NotARootError, TwoLengthsRequiredError

Weight = tuple  # omega-basis coordinates, typically tuple[int, ...]
Point = tuple   # coroot-basis coordinates, typically tuple[float, ...]

TWO_LENGTH_FAMILIES = frozenset("BCFG")

_RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class AlgebraType:
    """A simple Lie algebra family letter plus rank, e.g. ('G', 2)."""

    family: str
    rank: int

    def __post_init__(self):
        rule = _RANK_RULES.get(self.family)
        if rule is None:
            raise InvalidAlgebraError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not rule(self.rank):
            raise InvalidAlgebraError(
                f"rank {self.rank} is not admissible for family {self.family}")

    @classmethod
    def parse(cls, name) -> "AlgebraType":
        """Parse 'G2', 'B3', 'E8', ... (case insensitive)."""
        if isinstance(name, AlgebraType):
            return name
        text = str(name).strip().upper().replace("_", "")
        if len(text) < 2 or text[0] not in _RANK_RULES or not text[1:].isdigit():
            raise InvalidAlgebraError(f"cannot parse algebra name {name!r}")
        return cls(text[0], int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def two_lengths(self) -> bool:
        return self.family in TWO_LENGTH_FAMILIES

    def root_count(self) -> int:
        """Number of nonzero roots."""
        n, fam = self.rank, self.family
        if fam == "A":
            return n * (n + 1)
        if fam in "BC":
            return 2 * n * n
        if fam == "D":
            return 2 * n * n - 2 * n
        if fam == "E":
            return {6: 72, 7: 126, 8: 240}[n]
        return 48 if fam == "F" else 12

    def weyl_order(self) -> int:
        """Order of the Weyl group."""
        import math
        n, fam = self.rank, self.family
        if fam == "A":
            return math.factorial(n + 1)
        if fam in "BC":
            return math.factorial(n) << n
        if fam == "D":
            return math.factorial(n) << (n - 1)
        if fam == "E":
            return {6: 51840, 7: 2903040, 8: 696729600}[n]
        return 1152 if fam == "F" else 12


def cartan_matrix(algebra: AlgebraType):
    """Cartan matrix rows ``A[i] = alpha_i`` in omega coordinates."""
    n = algebra.rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    fam = algebra.family
    if fam in "ABC":
        for i in range(n - 1):
            bond(i, i + 1)
        if fam == "B":
            A[n - 2][n - 1] = -2          # last simple root is short
        elif fam == "C":
            A[n - 1][n - 2] = -2          # last simple root is long
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif fam == "E":
        edges = [(1, 3), (2, 4), (3, 4), (4, 5), (5, 6)]
        if n >= 7:
            edges.append((6, 7))
        if n == 8:
            edges.append((7, 8))
        for i, j in edges:
            bond(i - 1, j - 1)
    elif fam == "F":
        bond(0, 1)
        bond(1, 2, aij=-2)                # roots 1,2 long; 3,4 short
        bond(2, 3)
    elif fam == "G":
        bond(0, 1, aij=-3)                # alpha_1 long, alpha_2 short
    return tuple(tuple(row) for row in A)


def _symmetrizer(A):
    """Positive rationals d with A[i][j] d[j] = A[j][i] d[i], max = 1.

    Then (alpha_i | alpha_j) = A[i][j] * d[j] and long simple roots have
    d = 1, i.e. squared length 2.
    """
    n = len(A)
    d = [None] * n
    d[0] = Fraction(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if i != j and A[i][j] != 0 and d[j] is None:
                d[j] = d[i] * A[j][i] / A[i][j]
                queue.append(j)
    top = max(d)
    return tuple(x / top for x in d)


def _invert_fraction_matrix(A):
    n = len(A)
    aug = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class Root:
    """A root in both coordinate systems.

    ``omega``: omega-basis coordinates; ``alpha``: simple-root basis
    coordinates.  ``length_sq`` is exact, normalized so long roots have 2.
    """

    omega: Weight
    alpha: tuple
    length_sq: Fraction
    long: bool

    @property
    def height(self) -> int:
        return sum(self.alpha)

    @property
    def positive(self) -> bool:
        return all(c >= 0 for c in self.alpha)


class RootSystem:
    """All static data of one root system.

    Immutable after construction (by convention; attributes are tuples),
    hence safe to share across threads.  Use :func:`build_root_system`.
    """

    def __init__(self, algebra: AlgebraType):
        self.algebra = algebra
        self.rank = algebra.rank
        self.cartan = cartan_matrix(algebra)
        self.cartan_inv = _invert_fraction_matrix(self.cartan)
        self.symmetrizer = _symmetrizer(self.cartan)
        self.two_lengths = algebra.two_lengths
        self._generate_roots()
        self._finalize()

    # -- construction ------------------------------------------------------

    def _generate_roots(self):
        """Closure of the simple roots under simple reflections."""
        n = self.rank
        seen = {}
        queue = deque()
        for i in range(n):
            alpha = tuple(int(i == j) for j in range(n))
            seen[self.cartan[i]] = alpha
            queue.append(self.cartan[i])
        while queue:
            omega = queue.popleft()
            alpha = seen[omega]
            for j in range(n):
                c = omega[j]
                if c == 0:
                    continue
                new_omega = tuple(o - c * a for o, a in zip(omega, self.cartan[j]))
                if new_omega in seen:
                    continue
                new_alpha = tuple(a - c * int(k == j) for k, a in enumerate(alpha))
                seen[new_omega] = new_alpha
                queue.append(new_omega)

        d = self.symmetrizer
        max_len = max(
            sum(Fraction(o) * dj * a for o, dj, a in zip(omega, d, alpha))
            for omega, alpha in seen.items())
        roots = []
        for omega, alpha in seen.items():
            length = sum(Fraction(o) * dj * a for o, dj, a in zip(omega, d, alpha))
            roots.append(Root(omega, alpha, length, length == max_len))
        roots.sort(key=lambda r: (r.height, r.alpha))
        self.roots = tuple(roots)
        self.positive_roots = tuple(r for r in roots if r.positive)
        self._by_omega = {r.omega: r for r in roots}

    def _finalize(self):
        n = self.rank
        self.highest_root = self.positive_roots[-1]
        top_height = self.highest_root.height
        if any(r.height == top_height for r in self.positive_roots[:-1]):
            raise IdentityError("highest root is not unique")  # pragma: no cover
        self.marks = self.highest_root.alpha

        def half_sum(roots):
            total = [Fraction(0)] * n
            for r in roots:
                for i, c in enumerate(r.omega):
                    total[i] += c
            half = [t / 2 for t in total]
            if any(h.denominator != 1 for h in half):
                raise IdentityError("half sum of positive roots not integral")  # pragma: no cover
            return tuple(int(h) for h in half)

        self.rho = half_sum(self.positive_roots)
        self.rho_long = half_sum([r for r in self.positive_roots if r.long])
        self.rho_short = half_sum([r for r in self.positive_roots if not r.long])
        self.long_simple = tuple(self._by_omega[row].long for row in self.cartan)
        # <mu, coweight-vector> = mu . height_vec is 1 on every simple root;
        # strictly positive on positive roots (it is the usual height).
        ones = [Fraction(1)] * n
        self.height_vector = tuple(
            sum(self.cartan_inv[i][j] * ones[j] for j in range(n)) for i in range(n))

    # -- queries -----------------------------------------------------------

    def root(self, omega: Weight) -> Root:
        """The Root record for the given omega coordinates."""
        try:
            return self._by_omega[tuple(omega)]
        except KeyError:
            raise NotARootError(f"{tuple(omega)} is not a root of {self.algebra}") from None

    def is_root(self, omega: Weight) -> bool:
        return tuple(omega) in self._by_omega

    def simple_root(self, i: int) -> Root:
        return self._by_omega[self.cartan[i]]

    def reflect_weight(self, i: int, lam: Weight) -> Weight:
        """Simple reflection r_i acting on omega coordinates."""
        c = lam[i]
        if c == 0:
            return tuple(lam)
        return tuple(l - c * a for l, a in zip(lam, self.cartan[i]))

    def bilinear_roots(self, beta: Root, gamma: Root) -> Fraction:
        """(beta | gamma) in the normalization where long roots have 2."""
        return sum(Fraction(o) * dj * a
                   for o, dj, a in zip(beta.omega, self.symmetrizer, gamma.alpha))

    def coroot_coords(self, beta: Root) -> tuple:
        """Coordinates of the coroot 2 beta / (beta|beta) in the coroot basis."""
        coords = [2 * Fraction(k) * dj / beta.length_sq
                  for k, dj in zip(beta.alpha, self.symmetrizer)]
        if any(c.denominator != 1 for c in coords):  # pragma: no cover
            raise IdentityError("coroot does not lie in the coroot lattice")
        return tuple(int(c) for c in coords)

    def height(self, lam: Weight) -> Fraction:
        """Pairing of lam with the sum of fundamental coweights."""
        return sum(Fraction(l) * h for l, h in zip(lam, self.height_vector))

    def in_weight_lattice(self, lam) -> bool:
        return all(Fraction(c).denominator == 1 for c in lam)

    def in_root_lattice(self, lam) -> bool:
        """Whether lam lies in the integer span of the simple roots."""
        coeffs = [sum(Fraction(lam[i]) * self.cartan_inv[i][j] for i in range(self.rank))
                  for j in range(self.rank)]
        return all(c.denominator == 1 for c in coeffs)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        """JSON-ready snapshot of all root data (schema in the README)."""
        return {
            "algebra": str(self.algebra),
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "simple_roots": [list(row) for row in self.cartan],
            "simple_root_length_sq": [str(2 * d) for d in self.symmetrizer],
            "positive_roots": [
                {"omega": list(r.omega), "alpha": list(r.alpha),
                 "length_sq": str(r.length_sq), "class": "long" if r.long else "short"}
                for r in self.positive_roots],
            "highest_root": {"omega": list(self.highest_root.omega),
                             "marks": list(self.marks)},
            "rho": list(self.rho),
            "rho_long": list(self.rho_long),
            "rho_short": list(self.rho_short),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    def __repr__(self):
        return f"RootSystem({self.algebra})"


class IdentityError(RuntimeError):
    """Internal consistency failure during construction."""


def build_root_system(algebra) -> RootSystem:
    """Construct the root system for an :class:`AlgebraType` or name string."""
    return RootSystem(AlgebraType.parse(algebra))


def pairing(lam, x):
    """Natural pairing of a weight (omega basis) and a point (coroot basis)."""
    if len(lam) != len(x):
        raise ValueError(f"dimension mismatch: {len(lam)} vs {len(x)}")
    return sum(l * xi for l, xi in zip(lam, x))


def classify_root(rs: RootSystem, omega: Weight) -> str:
    """'long' or 'short' for a root given by omega coordinates."""
    return "long" if rs.root(omega).long else "short"


# ---------------------------------------------------------------------------
# Long / short subsystems


@dataclass(frozen=True)
class Subsystem:
    """The long or short roots of a two-length system, as a root system.

    ``components`` lists the irreducible pieces as (family, rank) pairs with
    the usual low-rank identifications (D2 -> A1+A1, D3 -> A3) applied.
    """

    which: str
    positive_roots: tuple
    simple_roots: tuple
    cartan: tuple
    components: tuple
    rho: Weight

    @property
    def type_name(self) -> str:
        groups = {}
        for fam, rank in self.components:
            groups[(fam, rank)] = groups.get((fam, rank), 0) + 1
        parts = []
        for (fam, rank), count in sorted(groups.items()):
            parts.append(f"{count if count > 1 else ''}{fam}{rank}")
        return "+".join(parts)

    @property
    def weyl_order(self) -> int:
        order = 1
        for fam, rank in self.components:
            order *= AlgebraType(fam, rank).weyl_order()
        return order

    @property
    def roots(self) -> tuple:
        out = list(self.positive_roots)
        return tuple(out)


def _classify_component(cartan, nodes):
    """Identify one connected simply-laced Dynkin diagram."""
    k = len(nodes)
    index = {node: i for i, node in enumerate(nodes)}
    adj = {i: [] for i in range(k)}
    edge_count = 0
    for a in range(k):
        for b in range(a + 1, k):
            if cartan[nodes[a]][nodes[b]] != 0:
                adj[a].append(b)
                adj[b].append(a)
                edge_count += 1
    if edge_count != k - 1:
        raise NotARootError("subsystem diagram contains a cycle")  # pragma: no cover
    degrees = sorted(len(v) for v in adj.values())
    if k <= 2 or degrees[-1] <= 2:
        return ("A", k)
    if degrees[-1] > 3 or degrees[-2] == 3:
        raise NotARootError("diagram degree sequence not of A/D/E type")  # pragma: no cover
    hub = next(i for i in range(k) if len(adj[i]) == 3)
    branch_lengths = []
    for start in adj[hub]:
        length, prev, cur = 1, hub, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        branch_lengths.append(length)
    branch_lengths.sort()
    if branch_lengths[0] == 1 and branch_lengths[1] == 1:
        return ("D", k)
    if branch_lengths[:2] == [1, 2] and branch_lengths[2] in (2, 3, 4):
        return ("E", k)
    raise NotARootError("unrecognized diagram shape")  # pragma: no cover


def subsystem(rs: RootSystem, which: str) -> Subsystem:
    """Extract the long or short roots as a root system in their own right.

    The Cartan type of the subsystem is identified from mutual inner
    products of its indecomposable positive roots, not looked up in a table.
    """
    if which not in ("long", "short"):
        raise ValueError("which must be 'long' or 'short'")
    if not rs.two_lengths:
        raise TwoLengthsRequiredError(
            f"{rs.algebra} has a single root length; no {which} subsystem")
    want_long = which == "long"
    positives = tuple(r for r in rs.positive_roots if r.long == want_long)
    pos_omega = {r.omega for r in positives}
    simples = []
    for r in positives:
        decomposable = False
        for s in positives:
            if s is r:
                continue
            diff = tuple(a - b for a, b in zip(r.omega, s.omega))
            if diff in pos_omega:
                decomposable = True
                break
        if not decomposable:
            simples.append(r)
    simples.sort(key=lambda r: (r.height, r.alpha))
    k = len(simples)
    cartan = tuple(
        tuple(int(2 * rs.bilinear_roots(simples[i], simples[j]) / simples[j].length_sq)
              for j in range(k))
        for i in range(k))
    for i in range(k):
        for j in range(k):
            if i != j and cartan[i][j] not in (0, -1):  # pragma: no cover
                raise NotARootError("subsystem is not simply laced")

    remaining = set(range(k))
    components = []
    while remaining:
        seed = min(remaining)
        comp, queue = {seed}, deque([seed])
        while queue:
            a = queue.popleft()
            for b in range(k):
                if b not in comp and cartan[a][b] != 0:
                    comp.add(b)
                    queue.append(b)
        remaining -= comp
        fam, rank = _classify_component(cartan, sorted(comp))
        if (fam, rank) == ("D", 2):
            components.extend([("A", 1), ("A", 1)])
        elif (fam, rank) == ("D", 3):
            components.append(("A", 3))
        else:
            components.append((fam, rank))
    components.sort()
    rho = rs.rho_long if want_long else rs.rho_short
    return Subsystem(which, positives, tuple(simples), cartan,
                     tuple(components), rho)


# ---------------------------------------------------------------------------
# Fundamental domain of the affine Weyl group


@dataclass(frozen=True)
class FundamentalDomain:
    """The simplex cut out by <alpha_j, x> >= 0 and <xi, x> <= 1.

    Vertices (coroot-basis coordinates, exact fractions): the origin plus
    the fundamental coweights scaled by the inverse marks of the highest
    root.  Face j (j >= 1) is where <alpha_j, x> = 0; face 0 is the affine
    wall <xi, x> = 1.
    """

    simple_roots: tuple       # omega coordinates, rows
    highest_root: Weight
    vertices: tuple           # n + 1 vertices; vertices[0] is the origin

    @property
    def rank(self):
        return len(self.highest_root)

    def wall_values(self, x):
        """(<xi,x> - 1, <alpha_1,x>, ..., <alpha_n,x>): face j is tight at 0."""
        vals = [pairing(self.highest_root, x) - 1]
        vals.extend(pairing(alpha, x) for alpha in self.simple_roots)
        return tuple(vals)

    def contains(self, x, tol=None) -> bool:
        from .config import MEMBERSHIP_EPS
        tol = MEMBERSHIP_EPS if tol is None else tol
        vals = self.wall_values(x)
        return vals[0] <= tol and all(v >= -tol for v in vals[1:])

    def faces_containing(self, x, tol=None) -> frozenset:
        """Indices of the facets the point lies on (0 = affine wall)."""
        from .config import MEMBERSHIP_EPS
        tol = MEMBERSHIP_EPS if tol is None else tol
        vals = self.wall_values(x)
        return frozenset(j for j, v in enumerate(vals) if abs(v) <= tol)


def fundamental_domain(rs: RootSystem) -> FundamentalDomain:
    n = rs.rank
    origin = tuple(Fraction(0) for _ in range(n))
    vertices = [origin]
    for k in range(n):
        column = tuple(rs.cartan_inv[i][k] for i in range(n))
        m = rs.marks[k]
        vertices.append(tuple(c / m for c in column))
    return FundamentalDomain(rs.cartan, rs.highest_root.omega, tuple(vertices))
