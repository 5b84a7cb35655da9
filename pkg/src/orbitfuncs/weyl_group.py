"""Weyl group elements, orbits, long/short subgroups and sign homomorphisms.

Elements are identified by their integer action matrix on omega coordinates
(column-vector convention: ``w(lam)_j = sum_k M[j][k] lam[k]``).  Words in
the simple reflections are kept when known, for sign bookkeeping and
debugging only.  The contragredient action on evaluation points is
``x -> (M^-1)^T x``; both matrices are carried along so everything stays in
exact integer arithmetic.

The four sign homomorphisms send a simple reflection to +1 or -1 depending
on the length of its root: the trivial one, the determinant (all -1), the
one seeing only long reflections and the one seeing only short reflections.
Values on arbitrary elements extend along words when available and are
recoverable from the matrix alone by counting sign changes of positive
long/short roots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .config import ENUMERATION_CAP
from .errors import EnumerationCapError, FactorizationError
from .root_system import RootSystem, Subsystem, Weight, subsystem

SIGN_KINDS = ("id", "sigma", "long", "short")


def _matmul(A, B):
    n = len(A)
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n))
        for i in range(n))


def _identity_matrix(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element; equality and hashing go by the action matrix."""

    matrix: tuple
    inverse: tuple
    word: tuple | None
    sigma: int
    sigma_long: int
    sigma_short: int

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def apply(self, lam: Weight):
        """Action on a weight in omega coordinates."""
        return tuple(sum(row[k] * lam[k] for k in range(len(lam))) for row in self.matrix)

    def apply_point(self, x):
        """Contragredient action on a point in coroot coordinates."""
        inv = self.inverse
        n = len(x)
        return tuple(sum(inv[k][j] * x[k] for k in range(n)) for j in range(n))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(
            _matmul(self.matrix, other.matrix),
            _matmul(other.inverse, self.inverse),
            word,
            self.sigma * other.sigma,
            self.sigma_long * other.sigma_long,
            self.sigma_short * other.sigma_short)

    def inv(self) -> "WeylElement":
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(self.inverse, self.matrix, word,
                           self.sigma, self.sigma_long, self.sigma_short)

    def sign(self, kind: str) -> int:
        if kind == "id":
            return 1
        if kind == "sigma":
            return self.sigma
        if kind == "long":
            return self.sigma_long
        if kind == "short":
            return self.sigma_short
        raise ValueError(f"unknown sign kind {kind!r}")

    @property
    def length(self):
        return None if self.word is None else len(self.word)

    def __repr__(self):
        if self.word is not None:
            body = "".join(f"r{i + 1}" for i in self.word) or "e"
        else:
            body = str(self.matrix)
        return f"WeylElement({body})"


def identity(rs: RootSystem) -> WeylElement:
    n = rs.rank
    eye = _identity_matrix(n)
    return WeylElement(eye, eye, (), 1, 1, 1)


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    n = rs.rank
    matrix = tuple(
        tuple(int(j == k) - (rs.cartan[i][j] if k == i else 0) for k in range(n))
        for j in range(n))
    long = rs.long_simple[i]
    return WeylElement(matrix, matrix, (i,), -1,
                       -1 if long else 1, 1 if long else -1)


def reflection_in_root(rs: RootSystem, root) -> WeylElement:
    """Reflection in an arbitrary root (given as Root or omega coordinates)."""
    root = root if hasattr(root, "omega") else rs.root(root)
    coroot = rs.coroot_coords(root)
    n = rs.rank
    matrix = tuple(
        tuple(int(j == k) - coroot[k] * root.omega[j] for k in range(n))
        for j in range(n))
    long = root.long
    return WeylElement(matrix, matrix, None, -1,
                       -1 if long else 1, 1 if long else -1)


def signs_from_matrix(rs: RootSystem, matrix) -> tuple:
    """(sigma, sigma_long, sigma_short) recovered from the action matrix.

    Each equals -1 to the number of positive roots of the relevant length
    class that the element sends negative.
    """
    n = rs.rank
    flips = flips_long = flips_short = 0
    for r in rs.positive_roots:
        image = tuple(sum(matrix[j][k] * r.omega[k] for k in range(n)) for j in range(n))
        if not rs.root(image).positive:
            flips += 1
            if r.long:
                flips_long += 1
            else:
                flips_short += 1
    return ((-1) ** flips, (-1) ** flips_long, (-1) ** flips_short)


# ---------------------------------------------------------------------------
# Sign homomorphisms as explicit objects


@dataclass(frozen=True)
class SignHomomorphism:
    """A homomorphism W -> {+1, -1} given by its values on the generators."""

    kind: str
    generator_signs: tuple

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.generator_signs):
            raise ValueError("generator signs must be +1 or -1")

    def of(self, w: WeylElement) -> int:
        if self.kind in SIGN_KINDS:
            return w.sign(self.kind)
        if w.word is None:
            raise ValueError("custom sign homomorphism needs a word for the element")
        out = 1
        for i in w.word:
            out *= self.generator_signs[i]
        return out


def sign_homomorphism(rs: RootSystem, kind: str, generator_signs=None) -> SignHomomorphism:
    """Build one of the four standard sign homomorphisms, or a custom one.

    A custom assignment is checked against the braid relations: generators
    joined by an odd bond must receive equal signs.
    """
    if generator_signs is None:
        if kind == "id":
            generator_signs = tuple(1 for _ in range(rs.rank))
        elif kind == "sigma":
            generator_signs = tuple(-1 for _ in range(rs.rank))
        elif kind == "long":
            generator_signs = tuple(-1 if l else 1 for l in rs.long_simple)
        elif kind == "short":
            generator_signs = tuple(1 if l else -1 for l in rs.long_simple)
        else:
            raise ValueError(f"unknown sign kind {kind!r}")
    generator_signs = tuple(generator_signs)
    for i in range(rs.rank):
        for j in range(i + 1, rs.rank):
            # bond order 3 (odd) exactly when A_ij * A_ji = 1
            if rs.cartan[i][j] * rs.cartan[j][i] == 1:
                if generator_signs[i] != generator_signs[j]:
                    raise ValueError(
                        f"signs on generators {i} and {j} differ across an odd bond; "
                        "not a homomorphism")
    return SignHomomorphism(kind, generator_signs)


def sign(h: SignHomomorphism, w: WeylElement) -> int:
    return h.of(w)


# ---------------------------------------------------------------------------
# Group enumeration


def _mul_simple(w: WeylElement, rs: RootSystem, i: int) -> WeylElement:
    """w * r_i, exploiting that r_i only mixes in the i-th coordinate.

    Right multiplication replaces column i of the action matrix and adds a
    sparse multiple of row i to the rows of the inverse.
    """
    n = rs.rank
    row_a = rs.cartan[i]
    matrix = tuple(
        tuple((row[i] - sum(row[m] * row_a[m] for m in range(n))) if k == i else row[k]
              for k in range(n))
        for row in w.matrix)
    inv = list(w.inverse)
    pivot = inv[i]
    for j in range(n):
        if row_a[j]:
            inv[j] = tuple(v - row_a[j] * p for v, p in zip(inv[j], pivot))
    long = rs.long_simple[i]
    return WeylElement(matrix, tuple(inv), w.word + (i,) if w.word is not None else None,
                       -w.sigma,
                       -w.sigma_long if long else w.sigma_long,
                       w.sigma_short if long else -w.sigma_short)


def enumerate_group(rs: RootSystem, cap: int = ENUMERATION_CAP):
    """All Weyl group elements by breadth-first closure over the generators.

    Words found this way are reduced.  Raises EnumerationCapError when the
    group order (known in closed form) exceeds the cap.
    """
    order = rs.algebra.weyl_order()
    if order > cap:
        raise EnumerationCapError(
            f"|W({rs.algebra})| = {order} exceeds the cap {cap}; "
            "use orbit-based operations instead")
    start = identity(rs)
    seen = {start.matrix: start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(rs.rank):
            nxt = _mul_simple(w, rs, i)
            if nxt.matrix not in seen:
                seen[nxt.matrix] = nxt
                queue.append(nxt)
    elements = tuple(seen.values())
    if len(elements) != order:  # pragma: no cover
        raise FactorizationError(
            f"enumeration found {len(elements)} elements, expected {order}")
    return elements


def _closure(generators, cap, label):
    seen = {}
    queue = deque()
    for g in generators:
        if g.matrix not in seen:
            seen[g.matrix] = g
            queue.append(g)
    while queue:
        w = queue.popleft()
        for g in generators:
            nxt = w * g
            if nxt.matrix not in seen:
                if len(seen) >= cap:
                    raise EnumerationCapError(f"{label} exceeds the cap {cap}")
                seen[nxt.matrix] = nxt
                queue.append(nxt)
    return tuple(seen.values())


def subgroup(rs: RootSystem, which: str, cap: int = ENUMERATION_CAP):
    """The subgroup generated by reflections in all long (or short) roots.

    Generated from reflections in the subsystem's indecomposable roots,
    which give the same group.
    """
    sub = subsystem(rs, which)
    gens = [identity(rs)] + [reflection_in_root(rs, r) for r in sub.simple_roots]
    elements = _closure(gens, cap, f"W^{which} of {rs.algebra}")
    if len(elements) != sub.weyl_order:  # pragma: no cover
        raise FactorizationError(
            f"W^{which}({rs.algebra}) closure has {len(elements)} elements, "
            f"expected {sub.weyl_order}")
    return elements


def verify_normality(rs: RootSystem, which: str, cap: int = ENUMERATION_CAP) -> bool:
    """Check w W^T w^-1 = W^T for all generators w of W."""
    members = {w.matrix for w in subgroup(rs, which, cap)}
    sub = subsystem(rs, which)
    sub_gens = [reflection_in_root(rs, r) for r in sub.simple_roots]
    for i in range(rs.rank):
        r = simple_reflection(rs, i)
        for g in sub_gens:
            if (r * g * r).matrix not in members:
                return False
    return True


# ---------------------------------------------------------------------------
# Orbits


@dataclass(frozen=True)
class Orbit:
    """A Weyl group orbit with its seed (the dominant representative)."""

    seed: Weight
    elements: tuple
    stabilizer_order: int

    def __len__(self):
        return len(self.elements)

    def __contains__(self, weight):
        return tuple(weight) in self._index

    @property
    def _index(self):
        return set(self.elements)


def dominant_representative(rs: RootSystem, lam: Weight) -> Weight:
    lam = tuple(lam)
    while True:
        i = next((k for k, c in enumerate(lam) if c < 0), None)
        if i is None:
            return lam
        lam = rs.reflect_weight(i, lam)


def orbit(rs: RootSystem, lam: Weight) -> Orbit:
    """Full orbit of a weight, computed by reflection closure.

    Does not require group enumeration; the stabilizer order follows from
    the orbit-stabilizer theorem.
    """
    seed = dominant_representative(rs, lam)
    seen = {seed}
    out = [seed]
    queue = deque([seed])
    while queue:
        mu = queue.popleft()
        for i in range(rs.rank):
            if mu[i] == 0:
                continue
            nxt = rs.reflect_weight(i, mu)
            if nxt not in seen:
                seen.add(nxt)
                out.append(nxt)
                queue.append(nxt)
    order = rs.algebra.weyl_order()
    if order % len(out):  # pragma: no cover
        raise FactorizationError("orbit size does not divide the group order")
    return Orbit(seed, tuple(out), order // len(out))


@dataclass(frozen=True)
class SignedOrbit:
    """Orbit of a dominant weight with one kappa-sign per orbit point.

    ``is_zero`` is set when the sign homomorphism is nontrivial on the
    stabilizer, in which case the associated orbit function vanishes
    identically and the sign lists are empty.
    """

    seed: Weight
    kind: str
    points: tuple
    signs: tuple
    stabilizer_order: int
    is_zero: bool


def signed_orbit(rs: RootSystem, lam: Weight, kind: str) -> SignedOrbit:
    """Orbit of a dominant weight with the sign of a connecting element.

    The sign attached to ``w(lam)`` is kappa(w); well defined whenever kappa
    is trivial on the stabilizer, which for a dominant weight is generated
    by the simple reflections fixing it.
    """
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise ValueError("signed_orbit expects a dominant weight")
    gen_signs = sign_homomorphism(rs, kind).generator_signs
    if any(lam[i] == 0 and gen_signs[i] == -1 for i in range(rs.rank)):
        order = rs.algebra.weyl_order()
        size = len(orbit(rs, lam))
        return SignedOrbit(lam, kind, (), (), order // size, True)
    signs = {lam: 1}
    out = [lam]
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        s = signs[mu]
        for i in range(rs.rank):
            if mu[i] == 0:
                continue
            nxt = rs.reflect_weight(i, mu)
            t = s * gen_signs[i]
            prev = signs.get(nxt)
            if prev is None:
                signs[nxt] = t
                out.append(nxt)
                queue.append(nxt)
            elif prev != t:  # pragma: no cover
                raise FactorizationError("inconsistent orbit signs; degenerate weight slipped through")
    order = rs.algebra.weyl_order()
    return SignedOrbit(lam, kind, tuple(out), tuple(signs[p] for p in out),
                       order // len(out), False)


# ---------------------------------------------------------------------------
# Semidirect factorizations W = V ltimes W^T


@dataclass(frozen=True)
class Factorization:
    """W as (transversal subgroup V) acting on the normal subgroup W^T.

    Every w factors uniquely as u * v with u in W^T and v in V;
    ``decompose`` returns that pair.
    """

    which: str
    transversal: tuple
    normal_subgroup: tuple
    _pairs: dict = field(repr=False)

    def decompose(self, w: WeylElement):
        return self._pairs[w.matrix]

    def __contains__(self, w):
        return w.matrix in self._pairs


def _transversal_generators(rs: RootSystem, which: str):
    """Complement generators: explicit for B/C/G, the dual pair for F4."""
    fam, n = rs.algebra.family, rs.rank
    if which == "long":
        # complement V^S inside W^S
        if fam == "G":
            return [simple_reflection(rs, 1)]
        if fam == "B":
            eps1 = tuple(sum(rs.cartan[i][j] for i in range(n)) for j in range(n))
            return [reflection_in_root(rs, eps1)]          # sign change on the first axis
        if fam == "C":
            return [simple_reflection(rs, i) for i in range(n - 1)]
        if fam == "F":
            return [simple_reflection(rs, 2), simple_reflection(rs, 3)]
    else:
        # complement V^L inside W^L
        if fam == "G":
            return [simple_reflection(rs, 0)]
        if fam == "B":
            return [simple_reflection(rs, i) for i in range(n - 1)]
        if fam == "C":
            return [reflection_in_root(rs, rs.highest_root)]
        if fam == "F":
            return [simple_reflection(rs, 0), simple_reflection(rs, 1)]
    raise TwoLengthsRequiredErrorFor(rs)  # pragma: no cover


def TwoLengthsRequiredErrorFor(rs):  # pragma: no cover
    from .errors import TwoLengthsRequiredError
    return TwoLengthsRequiredError(f"{rs.algebra} has a single root length")


def factorize(rs: RootSystem, which: str, cap: int = ENUMERATION_CAP) -> Factorization:
    """Split W as V ltimes W^T, verifying the complement property.

    ``which`` names the normal factor: 'long' gives W = V^S ltimes W^L.
    The transversal is the explicitly known one for B/C/G; for F4 it is the
    subgroup generated by the reflections in the two simple roots of the
    opposite length, checked computationally rather than trusted.
    """
    normal = subgroup(rs, which, cap)
    normal_index = {w.matrix: w for w in normal}
    order = rs.algebra.weyl_order()
    expected_v = order // len(normal)

    gens = _transversal_generators(rs, which)
    transversal = _closure([identity(rs)] + gens, cap, "transversal")
    candidates = [transversal]
    if len(transversal) != expected_v or any(
            w.matrix in normal_index for w in transversal if w.word != ()):
        candidates = []

    if not candidates:
        # fallback: search complements generated by up to two reflections in
        # roots of the opposite length class
        other = [r for r in rs.positive_roots
                 if r.long == (which != "long")]
        refs = [reflection_in_root(rs, r) for r in other]
        found = None
        for a in range(len(refs)):
            for b in range(a, len(refs)):
                gens = [refs[a]] if a == b else [refs[a], refs[b]]
                try:
                    cand = _closure([identity(rs)] + gens, 4 * expected_v, "complement search")
                except EnumerationCapError:
                    continue
                if len(cand) == expected_v and not any(
                        w.matrix in normal_index for w in cand if w != identity(rs)):
                    found = cand
                    break
            if found:
                break
        if not found:
            raise FactorizationError(
                f"no complement to W^{which} found in W({rs.algebra})")
        candidates = [found]

    transversal = candidates[0]
    pairs = {}
    for u in normal:
        for v in transversal:
            w = u * v
            if w.matrix in pairs:
                raise FactorizationError(
                    f"decomposition not unique in W({rs.algebra})")
            pairs[w.matrix] = (u, v)
    if len(pairs) != order:
        raise FactorizationError(
            f"W^{which} * V covers {len(pairs)} of {order} elements")
    return Factorization(which, transversal, normal, pairs)
