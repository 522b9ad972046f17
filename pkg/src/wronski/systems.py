"""Wronski polynomial systems on lattice polytopes.

A system is n polynomials F_i = sum_m c[i][fold(m)] * s^lift(m) * alpha_m * x^m
over the polytope's lattice points, with exact rational coefficients and a
deformation parameter s in (0, 1].
"""

from dataclasses import dataclass
from fractions import Fraction
import json

from .errors import (DimensionMismatch, MissingFolding, UndecidedAtScale,
                     ZeroPolynomial)
from .polynomials import MultiPoly, UnivariatePoly, zp_trim
from .polytopes import LatticePolytope, Triangulation, builtin_polytope
from .rng import Stream


@dataclass(frozen=True)
class WeightFunction:
    """Nonzero rational weight per lattice point; sign constant per color."""
    values: tuple

    @classmethod
    def constant(cls, npoints, value=1):
        v = Fraction(value)
        if v == 0:
            raise ValueError("weights must be nonzero")
        return cls(tuple(v for _ in range(npoints)))

    def __post_init__(self):
        if any(Fraction(v) == 0 for v in self.values):
            raise ValueError("weights must be nonzero")

    def validate_sign_constancy(self, folding):
        sign_by_color = {}
        for v, color in zip(self.values, folding):
            s = 1 if Fraction(v) > 0 else -1
            if sign_by_color.setdefault(color, s) != s:
                raise ValueError(f"weight signs differ within color class {color}")


@dataclass(frozen=True)
class WronskiSystem:
    polytope: LatticePolytope
    triangulation: Triangulation
    alpha: WeightFunction
    coeffs: tuple          # n rows of (n+1) rationals, indexed by color
    s: Fraction
    polynomials: tuple     # expanded MultiPoly, one per row

    @property
    def dim(self):
        return self.polytope.dim

    def to_json(self):
        def frac(x):
            return str(Fraction(x))

        return json.dumps({
            "polytope": json.loads(self.polytope.to_json()),
            "triangulation": json.loads(self.triangulation.to_json()),
            "alpha": [frac(a) for a in self.alpha.values],
            "coeffs": [[frac(c) for c in row] for row in self.coeffs],
            "s": frac(self.s),
            "polynomials": [
                [{"monomial": list(e), "coefficient": frac(c)}
                 for e, c in poly.sorted_terms()]
                for poly in self.polynomials
            ],
        })

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        poly = LatticePolytope.from_json(json.dumps(data["polytope"]))
        tri = Triangulation.from_json(json.dumps(data["triangulation"]))
        alpha = WeightFunction(tuple(Fraction(a) for a in data["alpha"]))
        coeffs = tuple(tuple(Fraction(c) for c in row) for row in data["coeffs"])
        s = Fraction(data["s"])
        polys = tuple(
            MultiPoly(poly.dim, {tuple(t["monomial"]): Fraction(t["coefficient"])
                                 for t in terms})
            for terms in data["polynomials"])
        return cls(poly, tri, alpha, coeffs, s, polys)


def build_system(polytope: LatticePolytope, triangulation: Triangulation,
                 alpha: WeightFunction, coeffs, s) -> WronskiSystem:
    """Expand the n polynomials of a Wronski system over exact rationals."""
    n = polytope.dim
    if triangulation.folding is None:
        raise MissingFolding("triangulation carries no folding")
    if triangulation.lifting is None:
        raise MissingFolding("triangulation carries no lifting")
    s = Fraction(s)
    if not (0 < s <= 1):
        raise ValueError("deformation parameter s must lie in (0, 1]")
    coeffs = tuple(tuple(Fraction(c) for c in row) for row in coeffs)
    if len(coeffs) != n or any(len(row) != n + 1 for row in coeffs):
        raise DimensionMismatch(
            f"need {n} coefficient rows of length {n + 1}")
    alpha.validate_sign_constancy(triangulation.folding)
    pts = polytope.lattice_points
    fold = triangulation.folding
    lift = triangulation.lifting
    polys = []
    for row in coeffs:
        terms = {}
        for m, point in enumerate(pts):
            c = row[fold[m]] * Fraction(alpha.values[m]) * s ** lift[m]
            if c:
                terms[tuple(point)] = terms.get(tuple(point), 0) + c
        polys.append(MultiPoly(n, terms))
    return WronskiSystem(polytope, triangulation, alpha, coeffs, s,
                         tuple(polys))


def sample_system(polytope, triangulation, alpha, rng_seed, coeff_range,
                  s_choice, trial=0, attempt=0) -> WronskiSystem:
    """Deterministically sample coefficient rows and s for one trial.

    coeff_range: (lo, hi) integer interval; all-zero rows are rejected and
    redrawn.  s_choice: ("fixed", q) or ("grid",) for s = k/1000 with k
    uniform in 1..999.
    """
    lo, hi = coeff_range
    if lo > hi:
        raise ValueError("empty coefficient range")
    n = polytope.dim
    stream = Stream(rng_seed, trial, attempt)
    rows = []
    for _ in range(n):
        while True:
            row = tuple(stream.randint(lo, hi) for _ in range(n + 1))
            if any(row):
                rows.append(row)
                break
    if s_choice[0] == "fixed":
        s = Fraction(s_choice[1])
    elif s_choice[0] == "grid":
        s = Fraction(stream.randint(1, 999), 1000)
    else:
        raise ValueError(f"unknown s_choice {s_choice!r}")
    return build_system(polytope, triangulation, alpha, rows, s)


# ----------------------------------------------------------------------
# center-of-projection avoidance
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CenterVerdict:
    status: str                      # avoided-by-lemma | avoided | meets | undecided
    meeting_s: tuple = ()            # exact rational meeting values found in (0, 1]
    witnesses: tuple = ()            # (s, point) pairs verified by substitution
    note: str = ""

    @property
    def avoided(self):
        return self.status in ("avoided", "avoided-by-lemma")

    def first_meeting_in_unit_interval(self):
        vals = [s for s in self.meeting_s if 0 < s <= 1]
        return min(vals) if vals else None


def color_class_polynomials(polytope, triangulation, alpha):
    """G_i(x, s) = sum over fold(m)=i of alpha_m s^lift(m) x^m.

    Returned in n+1 variables: the x variables then s.  Negative lifting
    values are shifted by a common power of s (harmless for s != 0).
    """
    if triangulation.folding is None:
        raise MissingFolding("triangulation carries no folding")
    n = polytope.dim
    lift = triangulation.lifting
    shift = -min(lift) if min(lift) < 0 else 0
    out = [MultiPoly(n + 1, {}) for _ in range(n + 1)]
    for m, point in enumerate(polytope.lattice_points):
        exp = tuple(point) + (lift[m] + shift,)
        out[triangulation.folding[m]] += MultiPoly(n + 1, {exp: Fraction(alpha.values[m])})
    return out


def _strip_monomial(poly: MultiPoly):
    """Factor out the largest monomial dividing every term."""
    if poly.is_zero():
        return poly
    mins = [min(e[v] for e in poly.terms) for v in range(poly.nvars)]
    if not any(mins):
        return poly
    return MultiPoly(poly.nvars,
                     {tuple(a - b for a, b in zip(e, mins)): c
                      for e, c in poly.terms.items()})


def _positivity_certificate(poly: MultiPoly):
    """True if, after factoring a monomial, all exponents are even and all
    coefficients share a sign: the class never vanishes on the real torus."""
    core = _strip_monomial(poly)
    if core.is_zero():
        return False
    signs = {1 if Fraction(c) > 0 else -1 for c in core.terms.values()}
    if len(signs) != 1:
        return False
    return all(all(x % 2 == 0 for x in e) for e in core.terms)


def center_avoidance(polytope, triangulation, alpha,
                     s_domain="nonzero") -> CenterVerdict:
    """Decide whether the deformed coordinate-class polynomials share a real
    zero with all torus coordinates nonzero, for s in the domain.

    Order/chain polytopes are avoided for every weight (their defining
    binomial relations force the classes to cut out the irrelevant ideal),
    so they return immediately.  Dimension 2 is decided by elimination on
    the s-pure classes; the two cube builtins carry exact derivations; all
    other 3-dimensional inputs report UndecidedAtScale.
    """
    if polytope.poset_kind in ("order", "chain"):
        return CenterVerdict("avoided-by-lemma",
                             note=f"{polytope.poset_kind} polytope projection")
    n = polytope.dim
    classes = color_class_polynomials(polytope, triangulation, alpha)

    # a single never-vanishing class already avoids the center
    for g in classes:
        if _positivity_certificate(g):
            return CenterVerdict("avoided",
                                 note="a color class has a torus positivity certificate")

    if n == 2:
        return _center_avoidance_dim2(polytope, classes)
    if n == 3 and polytope.name in ("cube-unimodular", "cube-nonunimodular"):
        if all(Fraction(a) == Fraction(alpha.values[0]) for a in alpha.values):
            return _cube_center_verdict(polytope, triangulation)
    raise UndecidedAtScale(
        f"center avoidance undecided for dim {n} polytope "
        f"{polytope.name or '(unnamed)'}")


def _pure_s_split(g: MultiPoly, svar: int):
    """If g = s^k * h with h free of s, return h; else None."""
    powers = {e[svar] for e in g.terms}
    if len(powers) != 1:
        return None
    return g.set_variable(svar, 1)


def _center_avoidance_dim2(polytope, classes):
    """Two variables: if the s-free parts of two pure classes have no common
    real torus zero, the center is avoided for every s != 0."""
    from .solver import count_real_torus_solutions_pair

    svar = 2
    pure = [h for h in (_pure_s_split(g, svar) for g in classes) if h is not None]
    if len(pure) >= 2:
        g1_2 = MultiPoly(2, {e[:2]: c for e, c in pure[0].terms.items()})
        g2_2 = MultiPoly(2, {e[:2]: c for e, c in pure[1].terms.items()})
        n_real = count_real_torus_solutions_pair(g1_2, g2_2)
        if n_real == 0:
            return CenterVerdict(
                "avoided", note="s-pure color classes have no common real torus zero")
        return CenterVerdict(
            "undecided",
            note=(f"s-pure color classes share up to {n_real} real torus "
                  "zero(s); meeting depends on the mixed class"))
    raise UndecidedAtScale("dimension-2 center check needs two s-pure classes")


def _cube_center_verdict(polytope, triangulation):
    """Exact meeting analysis for the two cube builtins with constant weights.

    Both reduce to a one-variable condition on s via bundled monomials, and
    the meeting points at s = 1 are +-1 vectors found by exact search.
    """
    from .polynomials import sturm_count

    name = polytope.name
    if name == "cube-unimodular":
        # classes {1, yz} and {x, xyz}: with w = yz the torus conditions are
        # s^3 + w = 0 and 1 + s^3 w = 0, so Res_w = 1 - s^6
        s_condition = UnivariatePoly([1, 0, 0, 0, 0, 0, -1])
    else:
        # classes give xyz = -1/s and x^2 = y^2 = z^2 = 1/s^2; consistency
        # (xyz)^2 = x^2 y^2 z^2 forces s^6 = s^2, i.e. s^4 = 1 for s != 0
        s_condition = UnivariatePoly([-1, 0, 0, 0, 1])
    # the condition is necessary for a torus meeting; its only root in (0, 1]
    in_unit = sturm_count(s_condition, (0, 1))
    meeting = []
    witnesses = []
    if s_condition.evaluate(Fraction(1)) == 0:
        pts = _sign_vector_zeros(polytope, triangulation, Fraction(1))
        if pts:
            meeting.append(Fraction(1))
            witnesses.extend((Fraction(1), p) for p in pts)
    if in_unit != len(meeting):
        raise UndecidedAtScale("unexpected meeting locus for cube builtin")
    return CenterVerdict("meets", tuple(meeting), tuple(witnesses),
                         note="meets only where the bundled-monomial condition vanishes")


def _sign_vector_zeros(polytope, triangulation, s0):
    """Common zeros of all color classes among +-1 vectors, at fixed s."""
    from itertools import product

    alpha = WeightFunction.constant(len(polytope.lattice_points))
    classes = color_class_polynomials(polytope, triangulation, alpha)
    n = polytope.dim
    out = []
    for signs in product((1, -1), repeat=n):
        values = tuple(Fraction(v) for v in signs) + (s0,)
        if all(g.evaluate(values) == 0 for g in classes):
            out.append(signs)
    return out
