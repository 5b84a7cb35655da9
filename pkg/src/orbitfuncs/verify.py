"""Quadrature over the fundamental simplex and batteries of property checks.

The exact orthogonality oracle is the weight-zero coefficient of
``f_lambda * conj(f_mu)`` in the exponential ring: integrating an
exponential over a period cell picks out its constant term, and the
products are Weyl invariant, so averaging over F equals averaging over the
whole period cell.  Monte Carlo integration exists to validate the analytic
setup (simplex parameterization, normalization), not to establish the
identity.

Monte Carlo sampling is chunked with one deterministic substream per chunk,
so a fixed seed reproduces results bit for bit regardless of worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import (ENUMERATION_CAP, MC_CHUNK, MC_DEFAULT_SAMPLES,
                     MC_DEFAULT_SEED, PROPERTY_TOL)
from .errors import EnumerationCapError, ExactDivisionError
from . import exp_ring
from .exp_ring import (FAMILIES, denominator, divide_exact, inner_constant_term,
                       orbit_sum, project_skew)
from .orbit_functions import (OrbitFunction, boundary_profile,
                              conjugation_parity, fold_to_F, sample_face)
from .root_system import RootSystem, build_root_system, fundamental_domain, subsystem
from .weyl_group import (enumerate_group, factorize, orbit, signed_orbit,
                         simple_reflection, subgroup, verify_normality)


@dataclass(frozen=True)
class QuadratureSpec:
    """How to integrate over F: 'monte-carlo' or 'grid'."""

    method: str = "monte-carlo"
    samples: int = MC_DEFAULT_SAMPLES
    resolution: int = 64
    seed: int = MC_DEFAULT_SEED

    def __post_init__(self):
        if self.method not in ("monte-carlo", "grid"):
            raise ValueError("method must be 'monte-carlo' or 'grid'")
        if self.samples < 1 or self.resolution < 1:
            raise ValueError("samples and resolution must be positive")


def _simplex_vertices(rs: RootSystem) -> np.ndarray:
    domain = fundamental_domain(rs)
    return np.array([[float(c) for c in v] for v in domain.vertices])


def _mc_chunks(total: int):
    start = 0
    index = 0
    while start < total:
        yield index, min(MC_CHUNK, total - start)
        start += MC_CHUNK
        index += 1


def _mc_accumulate(rs, integrand, spec, workers=1):
    """Stream Monte Carlo samples; returns (sum, sum of |.|^2, count)."""
    vertices = _simplex_vertices(rs)
    n_vert = vertices.shape[0]

    def one_chunk(args):
        index, count = args
        rng = np.random.default_rng([spec.seed, index])
        bary = rng.dirichlet(np.ones(n_vert), size=count)
        values = np.asarray(integrand(bary @ vertices))
        return values.sum(), float(np.sum(np.abs(values) ** 2))

    chunks = list(_mc_chunks(spec.samples))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one_chunk, chunks))
    else:
        results = [one_chunk(c) for c in chunks]
    total = sum(r[0] for r in results)
    total_sq = sum(r[1] for r in results)
    return total, total_sq, spec.samples


def integrate_over_F(rs: RootSystem, integrand, spec: QuadratureSpec,
                     workers: int = 1) -> complex:
    """Volume-normalized integral of a function over the fundamental simplex.

    ``integrand`` maps an (m, n) array of points to m values.  The
    barycentric sampling makes the estimate |F|-normalized by construction,
    so the constant 1 integrates to exactly 1.
    """
    if spec.method == "grid":
        from .orbit_functions import grid_points
        _, points = grid_points(fundamental_domain(rs), spec.resolution)
        values = np.asarray(integrand(np.array(points)))
        return complex(values.mean())
    total, _, count = _mc_accumulate(rs, integrand, spec, workers)
    return complex(total / count)


@dataclass(frozen=True)
class OrthogonalityReport:
    """Numeric vs exact pairing of two family members over F."""

    family: str
    lam: tuple
    mu: tuple
    numeric: complex
    exact: Fraction
    std_error: float

    @property
    def error(self) -> float:
        return abs(self.numeric - complex(self.exact))

    @property
    def relative_error(self) -> float:
        scale = max(1.0, abs(complex(self.exact)))
        return self.error / scale


def exact_pairing(rs: RootSystem, family: str, lam, mu) -> Fraction:
    """Constant term of f_lam * conj(f_mu): the exact value of the
    normalized integral over F."""
    f = orbit_sum(rs, family, lam)
    g = orbit_sum(rs, family, mu)
    return Fraction(inner_constant_term(f, g))


def orthogonality_constant(rs: RootSystem, family: str, lam) -> Fraction:
    """|W|^2 / (orbit size of the effective weight): the diagonal value."""
    effective = exp_ring.check_family(rs, family, lam)
    order = rs.algebra.weyl_order()
    return Fraction(order * order, len(orbit(rs, effective)))


def check_orthogonality(rs: RootSystem, family: str, lam, mu,
                        spec: QuadratureSpec = QuadratureSpec(),
                        workers: int = 1) -> OrthogonalityReport:
    """Monte Carlo (or grid) pairing of two family members against the
    exact constant-term value."""
    lam, mu = tuple(lam), tuple(mu)
    f = OrbitFunction(rs, family, lam)
    g = OrbitFunction(rs, family, mu)

    def integrand(points):
        return f.evaluate_many(points) * np.conj(g.evaluate_many(points))

    exact = exact_pairing(rs, family, lam, mu)
    if spec.method == "grid":
        numeric = integrate_over_F(rs, integrand, spec, workers)
        stderr = float("nan")
    else:
        total, total_sq, count = _mc_accumulate(rs, integrand, spec, workers)
        numeric = complex(total / count)
        variance = max(total_sq / count - abs(numeric) ** 2, 0.0)
        stderr = (variance / count) ** 0.5
    return OrthogonalityReport(family, lam, mu, numeric, exact, stderr)


# ---------------------------------------------------------------------------
# The check suite


@dataclass
class SuiteEntry:
    name: str
    status: str              # 'pass' | 'fail' | 'skip'
    detail: str = ""

    def line(self) -> str:
        return f"[{self.status.upper():4s}] {self.name}" + (
            f" - {self.detail}" if self.detail else "")


@dataclass
class SuiteReport:
    algebra: str
    entries: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.entries.append(SuiteEntry(name, "pass" if ok else "fail", detail))

    def skip(self, name, detail=""):
        self.entries.append(SuiteEntry(name, "skip", detail))

    @property
    def ok(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    @property
    def counts(self):
        out = {"pass": 0, "fail": 0, "skip": 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    def text(self) -> str:
        lines = [f"verification suite: {self.algebra}"]
        lines += [e.line() for e in self.entries]
        c = self.counts
        lines.append(f"{c['pass']} passed, {c['fail']} failed, {c['skip']} skipped")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {"algebra": self.algebra, "ok": self.ok, "counts": self.counts,
                "entries": [{"name": e.name, "status": e.status, "detail": e.detail}
                            for e in self.entries]}


@dataclass(frozen=True)
class SuiteConfig:
    trials: int = 200
    ring_samples: int = 20
    box: int = 1
    mc_samples: int = 0          # 0 disables the Monte Carlo cross-check
    seed: int = MC_DEFAULT_SEED
    cap: int = ENUMERATION_CAP
    workers: int = 1
    tol: float = PROPERTY_TOL


def _families_for(rs):
    return FAMILIES if rs.two_lengths else ("C", "S")


def _dominant_box(rank, bound):
    return [tuple(c) for c in itertools.product(range(bound + 1), repeat=rank)]


def run_suite(rs: RootSystem, config: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Run every structural, group, function and ring check on one algebra.

    Any failure is reported rather than raised, so a deliberately corrupted
    system produces a failing report instead of an exception.
    """
    report = SuiteReport(str(rs.algebra))
    rng = np.random.default_rng(config.seed)
    n = rs.rank

    # --- root generation: data must agree with a fresh build ---------------
    try:
        fresh = build_root_system(rs.algebra)
        same = (rs.cartan == fresh.cartan
                and [r.omega for r in rs.positive_roots] == [r.omega for r in fresh.positive_roots]
                and rs.marks == fresh.marks and rs.rho == fresh.rho
                and rs.rho_long == fresh.rho_long and rs.rho_short == fresh.rho_short)
        report.add("root generation reproducible", same)
    except Exception as exc:  # noqa: BLE001 - report, don't crash the suite
        report.add("root generation reproducible", False, repr(exc))
        return report

    count_ok = len(rs.roots) == rs.algebra.root_count() and \
        2 * len(rs.positive_roots) == len(rs.roots)
    report.add("root counts", count_ok,
               f"|roots| = {len(rs.roots)}")

    rho_ok = all(l + s == r for l, s, r in zip(rs.rho_long, rs.rho_short, rs.rho)) \
        and rs.rho == (1,) * n
    report.add("rho = rho_long + rho_short = (1,...,1)", rho_ok)

    # root-system axioms for each length class
    for which in (("long", "short") if rs.two_lengths else ("long",)):
        roots = [r for r in rs.roots if r.long == (which == "long")]
        omegas = {r.omega for r in roots}
        ok = True
        for a in roots:
            for b in roots:
                c = 2 * rs.bilinear_roots(b, a) / a.length_sq
                if c.denominator != 1:
                    ok = False
                    break
                image = tuple(bo - int(c) * ao for bo, ao in zip(b.omega, a.omega))
                if image not in omegas:
                    ok = False
                    break
            if not ok:
                break
        report.add(f"{which} roots form a root system", ok)

    # orbit symmetry under negation
    sym_ok = True
    if rs.algebra.family in "BCFG" or str(rs.algebra) in ("A1", "E7", "E8"):
        for lam in ((1,) * n, tuple(range(1, n + 1)), (2,) + (0,) * (n - 1)):
            elems = set(orbit(rs, lam).elements)
            if any(tuple(-c for c in mu) not in elems for mu in elems):
                sym_ok = False
        report.add("orbits closed under negation", sym_ok)
    else:
        report.skip("orbits closed under negation", "not guaranteed for this type")

    # --- group checks -------------------------------------------------------
    order = rs.algebra.weyl_order()
    if order <= config.cap:
        try:
            W = enumerate_group(rs, config.cap)
            report.add("Weyl group order", len(W) == order, f"|W| = {len(W)}")
        except EnumerationCapError as exc:  # pragma: no cover
            report.skip("Weyl group order", str(exc))
            W = None
    else:
        report.skip("Weyl group order", f"|W| = {order} above cap")
        W = None

    if rs.two_lengths:
        for which in ("long", "short"):
            sub = subsystem(rs, which)
            report.add(f"{which} subsystem type identified", True, sub.type_name)
            report.add(f"W^{which} normal in W", verify_normality(rs, which, config.cap))
        long_set = {w.matrix for w in subgroup(rs, "long", config.cap)}
        short_set = {w.matrix for w in subgroup(rs, "short", config.cap)}
        report.add("W^long ∩ W^short nontrivial", len(long_set & short_set) > 1,
                   f"intersection order {len(long_set & short_set)}")
        for which in ("long", "short"):
            try:
                fact = factorize(rs, which, config.cap)
                report.add(f"W = V ⋉ W^{which} with unique factorization", True,
                           f"|V| = {len(fact.transversal)}")
            except Exception as exc:  # noqa: BLE001
                report.add(f"W = V ⋉ W^{which} with unique factorization", False, repr(exc))
    else:
        report.skip("subsystem checks", "simply laced")

    # sign homomorphisms: well defined and multiplicative on samples
    from .weyl_group import sign_homomorphism
    try:
        homs = {kind: sign_homomorphism(rs, kind)
                for kind in ("id", "sigma", "long", "short")}
        ok = True
        if W is not None:
            sample = list(W)[: min(len(W), 60)]
            for kind, h in homs.items():
                for a in sample[:12]:
                    for b in sample[:12]:
                        if h.of(a * b) != h.of(a) * h.of(b):
                            ok = False
        report.add("sign homomorphisms well defined and multiplicative", ok)
    except ValueError as exc:  # pragma: no cover
        report.add("sign homomorphisms well defined and multiplicative", False, str(exc))

    # --- analytic properties -------------------------------------------------
    domain = fundamental_domain(rs)
    lam_probe = tuple(int(v) for v in rng.integers(1, 3, n))
    worst = 0.0
    trials = max(1, config.trials)
    for family in _families_for(rs):
        fn = OrbitFunction(rs, family, lam_probe)
        X = rng.uniform(-2.5, 2.5, size=(trials, n))
        # symmetry under a random simple reflection, tracked pointwise
        for i in range(n):
            r = simple_reflection(rs, i)
            RX = np.array([r.apply_point(tuple(x)) for x in X[: max(2, trials // n)]])
            lhs = fn.evaluate_many(RX)
            rhs = r.sign(exp_ring.FAMILY_SIGN_KIND[family]) * fn.evaluate_many(
                X[: max(2, trials // n)])
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        # coroot-lattice periodicity
        shifts = rng.integers(-2, 3, size=(trials, n)).astype(float)
        lhs = fn.evaluate_many(X + shifts)
        rhs = fn.evaluate_many(X)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        # boundary vanishing
        for face in boundary_profile(rs, family):
            pts = sample_face(domain, face, rng, max(2, trials // (n + 1)))
            worst_face = float(np.max(np.abs(fn.evaluate_many(pts))))
            worst = max(worst, worst_face)
        # realness structure
        parity = conjugation_parity(rs, family)
        vals = fn.evaluate_many(X[: max(2, trials // 2)])
        if parity == 1:
            worst = max(worst, float(np.max(np.abs(vals.imag))))
        elif parity == -1:
            worst = max(worst, float(np.max(np.abs(vals.real))))
    report.add("symmetry / periodicity / boundary / realness residuals",
               worst < config.tol, f"worst residual {worst:.2e}")

    # fold correctness
    worst = 0.0
    fns = {family: OrbitFunction(rs, family, lam_probe)
           for family in _families_for(rs)}
    for _ in range(trials):
        x = tuple(rng.uniform(-3, 3, n))
        res = fold_to_F(rs, x)
        if not domain.contains(res.point, 1e-9):
            worst = float("inf")
            break
        for family, fn in fns.items():
            lhs = fn.evaluate(x)
            rhs = res.sign(family) * fn.evaluate(res.point)
            worst = max(worst, abs(lhs - rhs))
    report.add("fold into F preserves values up to sign",
               worst < config.tol, f"worst residual {worst:.2e}")

    # --- exact ring checks ----------------------------------------------------
    which_list = ("full", "long", "short") if rs.two_lengths else ("full",)
    heavy = len(rs.positive_roots) > 24
    for which in which_list:
        if heavy and which == "full":
            report.skip("denominator identity (full)", "product expansion too large")
            continue
        try:
            D = denominator(rs, which)
            report.add(f"denominator identity ({which})", True, f"{len(D)} terms")
        except Exception as exc:  # noqa: BLE001
            report.add(f"denominator identity ({which})", False, repr(exc))

    if rs.two_lengths:
        ok = True
        detail = ""
        for _ in range(max(1, config.ring_samples)):
            which = ("long", "short")[int(rng.integers(0, 2))]
            family = "SL" if which == "long" else "SS"
            D = denominator(rs, which)
            lam1 = tuple(int(v) for v in rng.integers(0, 2, n))
            lam2 = tuple(int(v) for v in rng.integers(0, 2, n))
            g = orbit_sum(rs, "C", lam1) + int(rng.integers(-3, 4)) * orbit_sum(rs, "C", lam2)
            if not project_skew(rs, g * D, which):
                ok, detail = False, "g * D not skew"
                break
            f = orbit_sum(rs, family, lam1) + int(rng.integers(-3, 4)) * orbit_sum(rs, family, lam2)
            try:
                q = divide_exact(rs, f, D)
            except ExactDivisionError:
                ok, detail = False, "division by D^T not exact"
                break
            if not project_skew(rs, q, "id"):
                ok, detail = False, "quotient not invariant"
                break
        report.add("skew module = invariants * D^T (sampled)", ok, detail)
    else:
        report.skip("skew module = invariants * D^T (sampled)", "simply laced")

    # exact orthogonality over a small dominant box
    box = _dominant_box(n, config.box)
    for family in _families_for(rs):
        sums = {lam: orbit_sum(rs, family, lam) for lam in box}
        ok = True
        for lam in box:
            for mu in box:
                value = Fraction(inner_constant_term(sums[lam], sums[mu]))
                expect = orthogonality_constant(rs, family, lam) if lam == mu else Fraction(0)
                if value != expect:
                    ok = False
        report.add(f"exact orthogonality on the box (family {family})", ok)

    # optional Monte Carlo cross-check of one diagonal entry
    if config.mc_samples > 0:
        spec = QuadratureSpec(samples=config.mc_samples, seed=config.seed)
        lam = (1,) * n
        family = "SL" if rs.two_lengths else "S"
        rep = check_orthogonality(rs, family, lam, lam, spec, config.workers)
        bound = max(3 * rep.std_error, 1e-12)
        report.add("Monte Carlo orthogonality within 3 standard errors",
                   rep.error <= bound,
                   f"numeric {rep.numeric.real:.4f}, exact {rep.exact}, "
                   f"3se {bound:.2e}")
    return report
