"""Exact symbolic computation in the ring of exponentials of weights.

An :class:`ExpPolynomial` is a finitely supported map from exponents to
rational coefficients, standing for ``sum_mu c_mu e^{2 pi i <mu, x>}``.
Exponents are weight vectors in omega coordinates and may lie in the
half-weight lattice, since denominator factors involve ``e^{pi i alpha} =
e^{2 pi i (alpha/2)}``.  Coefficients are integers or fractions; nothing in
this module touches floating point except :meth:`ExpPolynomial.evaluate`.

Conjugation acts on functions of a real variable, so it negates exponents
and leaves the (real, rational) coefficients alone.

Term order, used for exact long division and for peeling invariant
polynomials into orbit sums: first by height against the sum of fundamental
coweights (strictly positive on positive roots, so the maximal exponent of
an invariant polynomial is its dominant weight), ties broken
lexicographically.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (ExactDivisionError, IdentityViolationError,
                     TwoLengthsRequiredError)
from .root_system import RootSystem, Weight, subsystem
from .weyl_group import WeylElement, factorize, sign_homomorphism, signed_orbit

FAMILIES = ("C", "S", "SL", "SS")
FAMILY_SIGN_KIND = {"C": "id", "S": "sigma", "SL": "long", "SS": "short"}

_DIVISION_STEP_CAP = 2_000_000


def _norm_num(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _norm_exponent(mu):
    return tuple(_norm_num(c) for c in mu)


class ExpPolynomial:
    """Finitely supported exponent -> coefficient map; immutable by use."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mu, c in (terms or {}).items():
            if c:
                clean[_norm_exponent(mu)] = _norm_num(c)
        self.terms = clean

    @classmethod
    def monomial(cls, mu, coeff=1):
        return cls({tuple(mu): coeff})

    @classmethod
    def constant(cls, rank, value):
        return cls({(0,) * rank: value})

    @classmethod
    def zero(cls):
        return cls({})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for mu, c in other.terms.items():
            s = out.get(mu, 0) + c
            if s:
                out[mu] = s
            else:
                out.pop(mu, None)
        res = ExpPolynomial.__new__(ExpPolynomial)
        res.terms = out
        return res

    def __neg__(self):
        res = ExpPolynomial.__new__(ExpPolynomial)
        res.terms = {mu: -c for mu, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ExpPolynomial.zero()
            res = ExpPolynomial.__new__(ExpPolynomial)
            res.terms = {mu: _norm_num(c * other) for mu, c in self.terms.items()}
            return res
        out = {}
        for mu, c in self.terms.items():
            for nu, d in other.terms.items():
                key = tuple(a + b for a, b in zip(mu, nu))
                s = out.get(key, 0) + c * d
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return ExpPolynomial({mu: c for mu, c in out.items()})

    __rmul__ = __mul__

    def conjugate(self):
        """Complex conjugate: exponents are negated."""
        return ExpPolynomial({tuple(-c for c in mu): v for mu, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ExpPolynomial) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __hash__(self):  # pragma: no cover
        return hash(frozenset(self.terms.items()))

    # -- queries -----------------------------------------------------------

    def coefficient(self, mu):
        return self.terms.get(_norm_exponent(mu), 0)

    @property
    def constant_term(self):
        if not self.terms:
            return 0
        rank = len(next(iter(self.terms)))
        return self.terms.get((0,) * rank, 0)

    @property
    def half_lattice(self) -> bool:
        """True when some exponent lies outside the weight lattice."""
        return any(isinstance(c, Fraction) for mu in self.terms for c in mu)

    def coefficient_sum(self):
        return _norm_num(sum(self.terms.values()))

    def evaluate(self, x) -> complex:
        """Numeric value at a point given in coroot coordinates."""
        import cmath
        total = 0j
        for mu, c in self.terms.items():
            phase = sum(float(m) * xi for m, xi in zip(mu, x))
            total += c * cmath.exp(2j * cmath.pi * phase)
        return total

    def serialize(self) -> str:
        """Stable text form: one 'coefficient @ (c1,...,cn)' line per term."""
        lines = []
        for mu in sorted(self.terms, key=lambda m: tuple(Fraction(c) for c in m)):
            coords = ",".join(str(c) for c in mu)
            lines.append(f"{self.terms[mu]} @ ({coords})")
        return "\n".join(lines)

    def __repr__(self):
        if not self.terms:
            return "ExpPolynomial(0)"
        return f"ExpPolynomial({len(self.terms)} terms)"


# ---------------------------------------------------------------------------
# Orbit sums of the four families


def family_shift(rs: RootSystem, family: str) -> Weight:
    if family == "C":
        return (0,) * rs.rank
    if family == "S":
        return rs.rho
    if family == "SL":
        return rs.rho_long
    if family == "SS":
        return rs.rho_short
    raise ValueError(f"unknown family {family!r}")


def check_family(rs: RootSystem, family: str, lam) -> Weight:
    """Validate (family, lambda) and return the effective weight."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family in ("SL", "SS") and not rs.two_lengths:
        raise TwoLengthsRequiredError(
            f"family {family} needs two root lengths; {rs.algebra} has one")
    lam = tuple(lam)
    if len(lam) != rs.rank:
        raise ValueError(f"lambda has length {len(lam)}, expected {rs.rank}")
    if any((not isinstance(c, int)) or c < 0 for c in lam):
        raise ValueError("lambda must be a dominant integral weight "
                         "(nonnegative integer omega coordinates)")
    return tuple(l + s for l, s in zip(lam, family_shift(rs, family)))


def orbit_sum(rs: RootSystem, family: str, lam) -> ExpPolynomial:
    """Exact polynomial of the family's sum over the whole Weyl group.

    Computed over the orbit of the effective weight with the stabilizer
    order as multiplicity; identically zero cases come back as the zero
    polynomial.
    """
    effective = check_family(rs, family, lam)
    so = signed_orbit(rs, effective, FAMILY_SIGN_KIND[family])
    if so.is_zero:
        return ExpPolynomial.zero()
    mult = so.stabilizer_order
    return ExpPolynomial({p: s * mult for p, s in zip(so.points, so.signs)})


# ---------------------------------------------------------------------------
# Alternating sums over a sub-root-system's reflection group


def _sub_simple_data(rs, roots):
    return [(r.omega, rs.coroot_coords(r)) for r in roots]


def alternating_sum(rs: RootSystem, sub_simples, weight) -> ExpPolynomial:
    """``sum_u sign(u) e^{2 pi i u(weight)}`` over the group generated by
    reflections in the given simple roots, where sign is that group's own
    determinant character.

    ``sub_simples`` is a list of (omega, coroot) coordinate pairs.  Returns
    the zero polynomial when the weight sits on one of the reflecting walls.
    """
    lam = tuple(weight)
    parity = 1
    while True:
        step = None
        for omega, coroot in sub_simples:
            c = sum(l * cv for l, cv in zip(lam, coroot))
            if c < 0:
                step = (omega, c)
                break
        if step is None:
            break
        omega, c = step
        lam = tuple(l - c * o for l, o in zip(lam, omega))
        parity = -parity
    for omega, coroot in sub_simples:
        if sum(l * cv for l, cv in zip(lam, coroot)) == 0:
            return ExpPolynomial.zero()

    from collections import deque
    signs = {lam: parity}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        s = signs[mu]
        for omega, coroot in sub_simples:
            c = sum(m * cv for m, cv in zip(mu, coroot))
            if c == 0:  # pragma: no cover
                raise IdentityViolationError("wall weight inside a regular orbit")
            nxt = tuple(m - c * o for m, o in zip(mu, omega))
            if nxt not in signs:
                signs[nxt] = -s
                queue.append(nxt)
    return ExpPolynomial(signs)


def denominator(rs: RootSystem, which: str = "full") -> ExpPolynomial:
    """The product ``prod_{alpha > 0 in the chosen class} (e^{pi i alpha} -
    e^{-pi i alpha})``, verified against its alternating-sum form.

    ``which`` is 'full', 'long' or 'short'.  The two computations must agree
    exactly; a mismatch raises IdentityViolationError.
    """
    if which == "full":
        positives = rs.positive_roots
        sub_simples = _sub_simple_data(rs, [rs.simple_root(i) for i in range(rs.rank)])
        rho = rs.rho
    elif which in ("long", "short"):
        sub = subsystem(rs, which)
        positives = sub.positive_roots
        sub_simples = _sub_simple_data(rs, sub.simple_roots)
        rho = sub.rho
    else:
        raise ValueError("which must be 'full', 'long' or 'short'")

    product = ExpPolynomial.constant(rs.rank, 1)
    for r in positives:
        half = tuple(Fraction(c, 2) for c in r.omega)
        factor = ExpPolynomial({half: 1, tuple(-h for h in half): -1})
        product = product * factor
    summed = alternating_sum(rs, sub_simples, rho)
    if product != summed:
        raise IdentityViolationError(
            f"denominator identity failed for {which} roots of {rs.algebra}")
    return product


# ---------------------------------------------------------------------------
# Group action and skew invariance


def act(w: WeylElement, f: ExpPolynomial) -> ExpPolynomial:
    """Apply a Weyl element to every exponent."""
    return ExpPolynomial({w.apply(mu): c for mu, c in f.terms.items()})


def project_skew(rs: RootSystem, f: ExpPolynomial, kind: str) -> bool:
    """Whether ``r_i f = kappa(r_i) f`` for every simple reflection.

    Sufficient for the full group since the reflections generate it.
    """
    from .weyl_group import simple_reflection
    gen_signs = sign_homomorphism(rs, kind).generator_signs
    for i in range(rs.rank):
        image = act(simple_reflection(rs, i), f)
        if gen_signs[i] == 1:
            if image != f:
                return False
        elif image != -f:
            return False
    return True


# ---------------------------------------------------------------------------
# Term order and exact division


def order_key(rs: RootSystem, mu):
    return (rs.height(mu), tuple(Fraction(c) for c in mu))


def leading_term(rs: RootSystem, f: ExpPolynomial):
    """(exponent, coefficient) of the maximal term in the height order."""
    if not f:
        raise ValueError("zero polynomial has no leading term")
    mu = max(f.terms, key=lambda m: order_key(rs, m))
    return mu, f.terms[mu]


def divide_exact(rs: RootSystem, f: ExpPolynomial, g: ExpPolynomial) -> ExpPolynomial:
    """Exact quotient f / g, by leading-term long division.

    Raises ExactDivisionError (carrying the residual) when the division is
    not exact.  Sound early abort: in an exact division every quotient
    exponent is at least trail(f) - trail(g) in the term order.
    """
    if not g:
        raise ValueError("division by the zero polynomial")
    if not f:
        return ExpPolynomial.zero()

    g_lead = max(g.terms, key=lambda m: order_key(rs, m))
    g_lead_coeff = g.terms[g_lead]
    f_trail = min(f.terms, key=lambda m: order_key(rs, m))
    g_trail = min(g.terms, key=lambda m: order_key(rs, m))
    floor_key = order_key(rs, tuple(a - b for a, b in zip(f_trail, g_trail)))

    remainder = dict(f.terms)
    quotient = {}
    steps = 0
    while remainder:
        steps += 1
        if steps > _DIVISION_STEP_CAP:  # pragma: no cover
            raise ExactDivisionError("division step cap exceeded",
                                     ExpPolynomial(remainder))
        lead = max(remainder, key=lambda m: order_key(rs, m))
        mu = _norm_exponent(tuple(a - b for a, b in zip(lead, g_lead)))
        if order_key(rs, mu) < floor_key:
            raise ExactDivisionError("division is not exact",
                                     ExpPolynomial(remainder))
        c = Fraction(remainder[lead]) / g_lead_coeff
        quotient[mu] = c
        for nu, d in g.terms.items():
            key = _norm_exponent(tuple(a + b for a, b in zip(mu, nu)))
            s = remainder.get(key, 0) - c * d
            if s:
                remainder[key] = s
            else:
                remainder.pop(key, None)
    return ExpPolynomial(quotient)


# ---------------------------------------------------------------------------
# Character-like functions and orbit decompositions


def character(rs: RootSystem, which: str, lam) -> ExpPolynomial:
    """Ratio of alternating sums: the family's sum at lambda over its sum
    at zero ('full' -> S, 'long' -> S^L, 'short' -> S^S).

    The quotient is an exact, Weyl-invariant polynomial.  For 'full' this is
    the classical character with nonnegative integer coefficients; for the
    long/short variants coefficients are rational in general.
    """
    family = {"full": "S", "long": "SL", "short": "SS"}.get(which)
    if family is None:
        raise ValueError("which must be 'full', 'long' or 'short'")
    numerator = orbit_sum(rs, family, lam)
    base = orbit_sum(rs, family, (0,) * rs.rank)
    try:
        return divide_exact(rs, numerator, base)
    except ExactDivisionError as exc:  # pragma: no cover
        raise IdentityViolationError(
            f"character division failed for {which} of {rs.algebra}") from exc


def decompose_into_C(rs: RootSystem, f: ExpPolynomial) -> dict:
    """Coefficients of a Weyl-invariant polynomial over the C-orbit sums.

    Greedy peel-off by the highest dominant weight; the expansion is unique.
    Coefficients are rational because the C sums carry the stabilizer order
    as multiplicity.
    """
    if not project_skew(rs, f, "id"):
        raise ValueError("polynomial is not Weyl invariant")
    from .weyl_group import orbit
    out = {}
    rest = f
    order = rs.algebra.weyl_order()
    while rest:
        mu, coeff = leading_term(rs, rest)
        if any(isinstance(c, Fraction) for c in mu) or any(c < 0 for c in mu):
            raise ValueError("invariant polynomial with non-dominant or "
                             "half-lattice leading weight")
        stab = order // len(orbit(rs, mu))
        c = Fraction(coeff, stab) if isinstance(coeff, int) else coeff / stab
        out[mu] = _norm_num(c)
        rest = rest - c * orbit_sum(rs, "C", mu)
    return out


def transversal_split(rs: RootSystem, lam, family: str = "SL") -> list:
    """Split S^L (or S^S) into alternating sums of the long (short)
    subsystem, one summand per transversal element.

    The summands add up, exactly, to the corresponding orbit sum.
    """
    if family not in ("SL", "SS"):
        raise ValueError("transversal_split applies to SL or SS")
    which = "long" if family == "SL" else "short"
    effective = check_family(rs, family, lam)
    sub = subsystem(rs, which)
    sub_simples = _sub_simple_data(rs, sub.simple_roots)
    fact = factorize(rs, which)
    return [alternating_sum(rs, sub_simples, v.apply(effective))
            for v in fact.transversal]


def inner_constant_term(f: ExpPolynomial, g: ExpPolynomial):
    """Constant term of f * conjugate(g), computed without expanding.

    Conjugation negates exponents, so the weight-zero coefficient of the
    product is the coefficient-wise dot product.
    """
    if len(f) > len(g):
        f, g = g, f
    return _norm_num(sum(c * g.terms.get(mu, 0) for mu, c in f.terms.items()))
