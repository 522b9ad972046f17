"""Exact real/complex torus solution counts for Wronski systems, n <= 3.

Method: introduce u = x1 + t2 x2 (+ t3 x3) for random small integer t,
substitute x1 away, eliminate the remaining variables by resultants
(iterated with a cross-order gcd for n = 3), strip content plus coordinate
factors, take the squarefree part, and gate on degree = normalized volume.
When the gate passes, distinct real roots of the eliminant are in bijection
with real torus solutions (a nonreal solution and its conjugate get
conjugate u-values; a separating form keeps those off the real line), so a
Sturm count finishes the job.
"""

from dataclasses import dataclass
import json
import math

from .errors import (DimensionUnsupported, NonGenericSystem, NotSeparating,
                     UndecidedAtScale)
from .polynomials import (MultiPoly, UnivariatePoly, resultant,
                          resultant_univariate_output, zp_count_real_roots,
                          zp_degree, zp_divexact, zp_gcd, zp_squarefree,
                          zp_trim)
from .polytopes import normalized_volume
from .rng import Stream

MAX_RETRIES = 8
T_RANGE = (1, 97)


@dataclass(frozen=True)
class SolveReport:
    n_real: int
    n_complex: int
    eliminant_degree: int
    generic: bool
    retries: int
    separating_form: tuple

    def __post_init__(self):
        if self.generic:
            assert self.n_real <= self.n_complex
            assert (self.n_real - self.n_complex) % 2 == 0

    def to_json(self):
        return json.dumps({
            "n_real": self.n_real, "n_complex": self.n_complex,
            "eliminant_degree": self.eliminant_degree,
            "generic": self.generic, "retries": self.retries,
            "separating_form": list(self.separating_form),
        })


# ----------------------------------------------------------------------
# substitution helpers
# ----------------------------------------------------------------------


def _integer_system(system):
    """Clear each polynomial's denominators; roots are unchanged."""
    out = []
    for poly in system.polynomials:
        if poly.is_zero():
            raise NonGenericSystem("system contains the zero polynomial")
        out.append(poly.clear_denominators().primitive_part())
    return out


def _substitute_separating(F: MultiPoly, t):
    """F with x1 := u - sum t_j x_j; output vars are (x2..xn, u).

    The output lives in n variables: the kept x's first, u last.
    """
    n = F.nvars
    rest = n - 1
    # u - t2 x2 - ... in the output ring
    repl_terms = {tuple([0] * rest) + (1,): 1}
    for j, tj in enumerate(t):
        e = [0] * (rest + 1)
        e[j] = 1
        repl_terms[tuple(e)] = repl_terms.get(tuple(e), 0) - tj
    repl = MultiPoly(rest + 1, repl_terms)
    powers = {0: MultiPoly.constant(rest + 1, 1)}

    def power(k):
        if k not in powers:
            powers[k] = power(k - 1) * repl
        return powers[k]

    out = MultiPoly(rest + 1, {})
    for e, c in F.terms.items():
        base_exp = tuple(e[1:]) + (0,)
        out = out + MultiPoly(rest + 1, {base_exp: c}) * power(e[0])
    return out


def _poly_on_axis(F: MultiPoly, var):
    """F restricted to x_var = 0, as a dense list in the remaining variable.

    Only for 2-variable F.
    """
    keep = 1 - var
    out = [0] * (F.degree_in(keep) + 1)
    for e, c in F.terms.items():
        if e[var] == 0:
            out[e[keep]] += c
    return zp_trim(out)


def _strip_power_of_u(coeffs):
    """Remove the u^k factor; returns (k, stripped)."""
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    return k, coeffs[k:]


def _strip_factor_roots(coeffs, factor):
    """Divide out gcd(coeffs, factor) repeatedly."""
    while True:
        g = zp_gcd(coeffs, factor)
        if zp_degree(g) <= 0:
            return coeffs
        coeffs = zp_divexact(coeffs, g)


# ----------------------------------------------------------------------
# torus checks on the u = 0 hyperplane and the coordinate hyperplanes
# ----------------------------------------------------------------------


def _u_zero_hits_torus_dim2(polys, t):
    """Whether x1 + t2 x2 = 0 can carry a torus solution (conservative)."""
    t2 = t[0]
    hs = []
    for F in polys:
        h = [0] * (F.total_degree() + 1)
        for (e1, e2), c in F.terms.items():
            h[e1 + e2] += c * (-t2) ** e1
        hs.append(zp_trim(h))
    if not hs[0] and not hs[1]:
        return True
    g = zp_gcd(hs[0], hs[1]) if hs[0] and hs[1] else (hs[0] or hs[1])
    _, g = _strip_power_of_u(g)
    return zp_degree(g) > 0


def _u_zero_hits_torus_dim3(polys, t):
    """Conservative check on the plane x1 = -t2 x2 - t3 x3."""
    t2, t3 = t
    subs = []
    for F in polys:
        # substitute x1 = -(t2 y + t3 z); output in (y, z)
        repl = MultiPoly(2, {(1, 0): -t2, (0, 1): -t3})
        powers = {0: MultiPoly.constant(2, 1)}

        def power(k):
            if k not in powers:
                powers[k] = power(k - 1) * repl
            return powers[k]

        out = MultiPoly(2, {})
        for e, c in F.terms.items():
            out = out + MultiPoly(2, {(e[1], e[2]): c}) * power(e[0])
        subs.append(out)
    if any(s.is_zero() for s in subs):
        return True
    try:
        r1 = resultant(subs[0], subs[1], 1)
        r2 = resultant(subs[0], subs[2], 1)
    except Exception:
        return True
    if r1.is_zero() or r2.is_zero():
        return True
    a = zp_trim([r1.terms.get((k, 0), 0) for k in range(r1.degree_in(0) + 1)])
    b = zp_trim([r2.terms.get((k, 0), 0) for k in range(r2.degree_in(0) + 1)])
    g = zp_gcd(a, b)
    _, g = _strip_power_of_u(g)
    return zp_degree(g) > 0


# ----------------------------------------------------------------------
# eliminant
# ----------------------------------------------------------------------


def eliminant(system, t, volume_hint=None) -> UnivariatePoly:
    """Univariate eliminant in u = x1 + t2 x2 (+ t3 x3).

    Content-free, coordinate-hyperplane factors stripped, sign-normalized.
    Distinct real roots biject with real torus solutions when t separates;
    callers certify separation through the degree gate.  A volume_hint lets
    the 3-variable path skip the cross-order resultant when one elimination
    order already matches the expected degree.
    """
    n = system.dim
    if n not in (1, 2, 3):
        raise DimensionUnsupported(f"solver handles 1..3 variables, got {n}")
    if len(t) != n - 1:
        raise ValueError(f"need {n - 1} separating coefficients")
    polys = _integer_system(system)
    if n == 1:
        coeffs = [0] * (polys[0].degree_in(0) + 1)
        for e, c in polys[0].terms.items():
            coeffs[e[0]] += c
        coeffs = zp_trim(coeffs)
        _, coeffs = _strip_power_of_u(coeffs)  # x = 0 is never a torus point
        return _normalized(coeffs)
    if n == 2:
        return _eliminant_dim2(polys, t)
    return _eliminant_dim3(polys, t, volume_hint)


def _normalized(coeffs):
    if not coeffs:
        raise NonGenericSystem("eliminant vanished identically")
    g = math.gcd(*coeffs) if len(coeffs) > 1 else abs(coeffs[0])
    coeffs = [c // g for c in coeffs]
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return UnivariatePoly(coeffs)


def _eliminant_dim2(polys, t):
    E1 = _substitute_separating(polys[0], t)
    E2 = _substitute_separating(polys[1], t)
    if E1.degree_in(0) < 1 or E2.degree_in(0) < 1:
        raise NotSeparating("substituted system is degenerate in the kept variable")
    R = resultant_univariate_output(E1, E2, 0, 1)
    if R.is_zero():
        raise NonGenericSystem("resultant vanished identically")
    coeffs = R.coeffs

    # coordinate-hyperplane solutions: x2 = 0 contributes u-values that are
    # roots of gcd(F1(x,0), F2(x,0)); x1 = 0 contributes roots scaled by t2
    h1x = _poly_on_axis(polys[0], 1)
    h2x = _poly_on_axis(polys[1], 1)
    if not h1x and not h2x:
        raise NonGenericSystem("system vanishes on a coordinate axis")
    gx = zp_gcd(h1x, h2x) if h1x and h2x else (h1x or h2x)
    _, gx = _strip_power_of_u(gx)
    if zp_degree(gx) > 0:
        coeffs = _strip_factor_roots(coeffs, gx)
    h1y = _poly_on_axis(polys[0], 0)
    h2y = _poly_on_axis(polys[1], 0)
    if not h1y and not h2y:
        raise NonGenericSystem("system vanishes on a coordinate axis")
    gy = zp_gcd(h1y, h2y) if h1y and h2y else (h1y or h2y)
    _, gy = _strip_power_of_u(gy)
    if zp_degree(gy) > 0:
        t2 = t[0]
        d = zp_degree(gy)
        scaled = [gy[j] * t2 ** (d - j) for j in range(d + 1)]
        coeffs = _strip_factor_roots(coeffs, zp_trim(scaled))

    k, coeffs = _strip_power_of_u(list(coeffs))
    if k and _u_zero_hits_torus_dim2(polys, t):
        raise NotSeparating("u = 0 may carry a torus solution")
    return _normalized(coeffs)


def _strip_intermediate(P: MultiPoly) -> MultiPoly:
    """Content and monomial factors of an intermediate resultant are junk:
    torus solutions have nonzero coordinates and pure u-powers are stripped
    from the final eliminant anyway."""
    P = P.primitive_part()
    mins = [min(e[v] for e in P.terms) for v in range(P.nvars)]
    if any(mins):
        P = MultiPoly(P.nvars, {tuple(a - b for a, b in zip(e, mins)): c
                                for e, c in P.terms.items()})
    return P


def _eliminant_dim3(polys, t, volume_hint=None):
    H = [_substitute_separating(F, t) for F in polys]  # vars (y, z, u)

    def route(first_elim, second_elim):
        try:
            P1 = resultant(H[0], H[1], first_elim)
            P2 = resultant(H[0], H[2], first_elim)
        except Exception as exc:
            raise NotSeparating(f"intermediate resultant failed: {exc}")
        if P1.is_zero() or P2.is_zero():
            raise NonGenericSystem("intermediate resultant vanished")
        P1 = _strip_intermediate(P1)
        P2 = _strip_intermediate(P2)
        if P1.degree_in(second_elim) < 1 or P2.degree_in(second_elim) < 1:
            raise NotSeparating("intermediate resultant lost the kept variable")
        R = resultant_univariate_output(P1, P2, second_elim, 2)
        if R.is_zero():
            raise NonGenericSystem("resultant vanished identically")
        coeffs = R.primitive_part().coeffs
        k, coeffs = _strip_power_of_u(list(coeffs))
        return coeffs, k

    def finish(coeffs, stripped_u):
        if stripped_u and _u_zero_hits_torus_dim3(polys, t):
            raise NotSeparating("u = 0 may carry a torus solution")
        return _normalized(coeffs)

    route_a, ka = route(1, 0)  # eliminate z, then y
    if volume_hint is not None:
        sf = zp_squarefree(route_a)
        if zp_degree(sf) == volume_hint:
            # the eliminant contains all torus u-values; a squarefree degree
            # matching the volume certifies there is nothing extraneous
            return finish(route_a, ka)
    route_b, kb = route(0, 1)  # eliminate y, then z
    coeffs = zp_gcd(route_a, route_b)
    if zp_degree(coeffs) < 0:
        raise NonGenericSystem("eliminant vanished identically")
    return finish(coeffs, ka or kb)


# ----------------------------------------------------------------------
# counting
# ----------------------------------------------------------------------


def count_solutions(system, rng_seed) -> SolveReport:
    """Count real and complex torus solutions of a generic Wronski system.

    Retries fresh separating coefficients until the squarefree eliminant
    degree equals the normalized volume; reports generic=False if the degree
    stabilizes elsewhere, raises NonGenericSystem on degenerate structure.
    """
    n = system.dim
    if n > 3:
        raise DimensionUnsupported("solver handles at most 3 variables")
    V = normalized_volume(system.polytope, system.triangulation)
    stream = Stream(rng_seed)
    last = None
    for attempt in range(MAX_RETRIES):
        t = tuple(stream.randint(*T_RANGE) for _ in range(n - 1))
        try:
            elim = eliminant(system, t, volume_hint=V)
        except NotSeparating:
            continue
        sf = zp_squarefree(elim.coeffs)
        n_complex = zp_degree(sf)
        if n_complex == V:
            return SolveReport(
                n_real=zp_count_real_roots(sf),
                n_complex=V,
                eliminant_degree=elim.degree(),
                generic=True,
                retries=attempt,
                separating_form=(1,) + t)
        last = (sf, elim.degree(), t)
    if last is None:
        raise NonGenericSystem("no separating form found")
    sf, elim_degree, t = last
    return SolveReport(
        n_real=zp_count_real_roots(sf),
        n_complex=zp_degree(sf),
        eliminant_degree=elim_degree,
        generic=False,
        retries=MAX_RETRIES,
        separating_form=(1,) + t)


def solve_with_form(system, t):
    """(n_real, n_complex) for an explicit separating form; raises NotSeparating
    if the degree gate fails for this t."""
    V = normalized_volume(system.polytope, system.triangulation)
    elim = eliminant(system, tuple(t))
    sf = zp_squarefree(elim.coeffs)
    if zp_degree(sf) != V:
        raise NotSeparating(f"degree {zp_degree(sf)} != volume {V}")
    return zp_count_real_roots(sf), V


# ----------------------------------------------------------------------
# fixed 2-variable systems (used by the center-avoidance check)
# ----------------------------------------------------------------------


def count_real_torus_solutions_pair(g1: MultiPoly, g2: MultiPoly) -> int:
    """Real torus solution count for a fixed pair of 2-variable polynomials.

    Returns 0 only when provably no real solution with both coordinates
    nonzero exists; positive returns are upper bounds on visible roots.
    """
    polys = [g1.clear_denominators().primitive_part(),
             g2.clear_denominators().primitive_part()]
    if any(p.is_zero() for p in polys):
        raise UndecidedAtScale("zero polynomial in torus pair count")
    counts = []
    for t2 in (1, 2, 3, 5, 7, 11, 13, 17):
        try:
            if _u_zero_hits_torus_dim2(polys, (t2,)):
                counts.append(1)
                continue
            E1 = _substitute_separating(polys[0], (t2,))
            E2 = _substitute_separating(polys[1], (t2,))
            if E1.degree_in(0) < 1 or E2.degree_in(0) < 1:
                continue
            R = resultant_univariate_output(E1, E2, 0, 1)
            if R.is_zero():
                continue
            sf = zp_squarefree(R.coeffs)
            _, sf = _strip_power_of_u(list(sf))
            if zp_degree(sf) <= 0:
                counts.append(0)
                continue
            counts.append(zp_count_real_roots(zp_squarefree(sf)))
        except (NonGenericSystem, NotSeparating):
            continue
    if not counts:
        raise UndecidedAtScale("torus pair count failed for all forms")
    # a real torus solution contributes a real root for every form, so a
    # single zero count certifies emptiness
    return 0 if min(counts) == 0 else min(counts)
