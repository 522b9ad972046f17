"""Exact polynomial arithmetic: dense integer univariates, sparse multivariates.

Univariate polynomials are dense lists of arbitrary-precision integers,
lowest degree first.  Multivariate polynomials are sparse dicts from
exponent tuples to exact coefficients (int or Fraction; arithmetic stays
exact either way).  Resultants use the subresultant polynomial remainder
sequence; real-root counting uses Sturm sequences with integer-only sign
evaluation at rational points.
"""

from fractions import Fraction
import math

from .errors import NotSquarefree, ZeroPolynomial

# ----------------------------------------------------------------------
# dense integer univariate polynomials (lists, lowest degree first)
# ----------------------------------------------------------------------


def zp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def zp_degree(c):
    return len(c) - 1


def zp_add(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return zp_trim(out)


def zp_neg(a):
    return [-x for x in a]

def zp_sub(a, b):
    return zp_add(a, zp_neg(b))


def zp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return zp_trim(out)


def zp_scale(a, k):
    if k == 0:
        return []
    return [x * k for x in a]


def zp_derivative(a):
    return zp_trim([i * a[i] for i in range(1, len(a))])


def zp_content(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def zp_primitive(a):
    """(content, primitive part) with the sign kept on the primitive part."""
    if not a:
        return 0, []
    g = zp_content(a)
    return g, [x // g for x in a]


def zp_divexact(a, b):
    """Exact division a / b in Z[x]; raises if it does not divide."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a)
    out = [0] * (len(a) - len(b) + 1) if len(a) >= len(b) else []
    lb = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        num = rem[i + len(b) - 1]
        if num % lb != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = num // lb
        out[i] = q
        if q:
            for j, y in enumerate(b):
                rem[i + j] -= q * y
    if any(rem):
        raise ArithmeticError("non-exact polynomial division")
    return zp_trim(out)


def zp_pseudo_rem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    if not b:
        raise ZeroDivisionError("pseudo-division by zero")
    da, db = zp_degree(a), zp_degree(b)
    if da < db:
        return list(a)
    lb = b[-1]
    r = list(a)
    steps = da - db + 1
    while r and zp_degree(r) >= db:
        dr = zp_degree(r)
        lead = r[-1]
        r = zp_scale(r, lb)
        sub = [0] * (dr - db) + zp_scale(b, lead)
        r = zp_sub(r, sub)
        steps -= 1
    if steps > 0:
        r = zp_scale(r, lb ** steps)
    return r


def zp_gcd_prs(a, b):
    """GCD in Z[x] via the subresultant PRS, primitive, positive leading sign."""
    a, b = list(a), list(b)
    if not a:
        g = list(b)
    elif not b:
        g = list(a)
    else:
        ca, pa = zp_primitive(a)
        cb, pb = zp_primitive(b)
        cont = math.gcd(ca, cb)
        f, g2 = (pa, pb) if zp_degree(pa) >= zp_degree(pb) else (pb, pa)
        h = 1
        gg = 1
        while True:
            delta = zp_degree(f) - zp_degree(g2)
            r = zp_pseudo_rem(f, g2)
            if not r:
                break
            if zp_degree(r) == 0:
                g2 = [1]
                break
            divisor = gg * h ** delta
            f, g2 = g2, [x // divisor for x in r]
            gg = f[-1]
            if delta:
                h = (gg ** delta) // (h ** (delta - 1)) if delta > 1 else gg
            # h = gg^delta / h^(delta-1); delta == 0 leaves h unchanged
        _, g = zp_primitive(g2)
        g = zp_scale(g, cont) if cont != 1 else g
    if g and g[-1] < 0:
        g = zp_neg(g)
    return g


def _miller_rabin_64(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream(start=(1 << 62) - 57):
    n = start
    while True:
        if _miller_rabin_64(n):
            yield n
        n -= 2


def _gfp_gcd_monic(a, b, p):
    """Monic gcd of dense lists over GF(p)."""
    a = [x % p for x in a]
    b = [x % p for x in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [(x * inv) % p for x in b]
        # a mod b
        a = list(a)
        while len(a) >= len(b) and a:
            coef = a[-1]
            if coef:
                off = len(a) - len(b)
                for i in range(len(b)):
                    a[off + i] = (a[off + i] - coef * b[i]) % p
            a.pop()
        while a and a[-1] == 0:
            a.pop()
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(x * inv) % p for x in a]
    return a


def _zp_gcd_modular(pa, pb):
    """Primitive gcd of primitive integer polynomials via CRT on prime images.

    Verified by exact trial division, so the result is unconditional.
    Returns None if the prime budget runs out (caller falls back to PRS).
    """
    lc_g = math.gcd(pa[-1], pb[-1])
    best_deg = None
    modulus = 1
    residues = None
    prev_candidate = None
    primes = _prime_stream()
    for _ in range(64):
        p = next(primes)
        if pa[-1] % p == 0 or pb[-1] % p == 0:
            continue
        gp = _gfp_gcd_monic(pa, pb, p)
        d = zp_degree(gp)
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg = d
            scaled = [(c * lc_g) % p for c in gp]
            residues = scaled
            modulus = p
            prev_candidate = None
        elif d == best_deg:
            scaled = [(c * lc_g) % p for c in gp]
            new_mod = modulus * p
            inv = pow(modulus % p, p - 2, p)
            combined = []
            for c_old, c_new in zip(residues, scaled):
                diff = ((c_new - c_old) * inv) % p
                combined.append((c_old + modulus * diff) % new_mod)
            residues = combined
            modulus = new_mod
        else:
            continue  # unlucky prime with too-large gcd image
        balanced = [c - modulus if c > modulus // 2 else c for c in residues]
        _, candidate = zp_primitive(zp_trim(list(balanced)))
        if candidate and candidate == prev_candidate:
            try:
                zp_divexact(pa, candidate)
                zp_divexact(pb, candidate)
                return candidate
            except ArithmeticError:
                pass
        prev_candidate = candidate
    return None


def zp_gcd(a, b):
    """GCD in Z[x], primitive, positive leading coefficient.

    Uses verified modular images for large inputs, the subresultant PRS
    otherwise.
    """
    if not a or not b or min(zp_degree(a), zp_degree(b)) <= 2:
        return zp_gcd_prs(a, b)
    size = max(abs(c).bit_length() for c in a + b)
    if size < 192 and max(zp_degree(a), zp_degree(b)) < 9:
        return zp_gcd_prs(a, b)
    ca, pa = zp_primitive(list(a))
    cb, pb = zp_primitive(list(b))
    cont = math.gcd(ca, cb)
    g = _zp_gcd_modular(pa, pb)
    if g is None:
        return zp_gcd_prs(a, b)
    if cont != 1:
        g = zp_scale(g, cont)
    if g and g[-1] < 0:
        g = zp_neg(g)
    return g


def zp_squarefree(a):
    """Primitive squarefree part of a nonzero integer polynomial."""
    if not a:
        raise ZeroPolynomial("squarefree part of zero polynomial")
    if zp_degree(a) == 0:
        return [1]
    g = zp_gcd(a, zp_derivative(a))
    if zp_degree(g) == 0:
        _, p = zp_primitive(a)
    else:
        p = zp_divexact(a, g)
        _, p = zp_primitive(p)
    if p[-1] < 0:
        p = zp_neg(p)
    return p


def zp_eval_int(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def zp_sign_at(a, point):
    """Sign of a(point) for point an int, Fraction, or +-infinity string.

    Rational points evaluate integer-only: sign(sum c_i p^i q^(n-i)).
    """
    if not a:
        return 0
    if point == "+inf":
        return 1 if a[-1] > 0 else -1
    if point == "-inf":
        lead = a[-1] if (len(a) - 1) % 2 == 0 else -a[-1]
        return 1 if lead > 0 else -1
    frac = Fraction(point)
    p, q = frac.numerator, frac.denominator
    n = len(a) - 1
    acc = 0
    for i, c in enumerate(a):
        acc += c * p ** i * q ** (n - i)
    return (acc > 0) - (acc < 0)


def zp_sturm_chain(a):
    chain = [list(a), zp_derivative(a)]
    while chain[-1] and zp_degree(chain[-1]) >= 0:
        f, g = chain[-2], chain[-1]
        if zp_degree(g) == 0:
            break
        delta = zp_degree(f) - zp_degree(g)
        r = zp_pseudo_rem(f, g)
        if not r:
            break
        # prem multiplies by lc(g)^(delta+1); keep Sturm sign convention by
        # flipping only when that multiplier is positive
        mult_positive = (g[-1] > 0) or (delta % 2 == 1)
        nxt = zp_neg(r) if mult_positive else list(r)
        _, nxt = zp_primitive(nxt)
        chain.append(nxt)
    return chain


def _sign_variations(signs):
    nz = [s for s in signs if s != 0]
    return sum(1 for i in range(len(nz) - 1) if nz[i] * nz[i + 1] < 0)


def zp_count_real_roots(a, lo=None, hi=None):
    """Distinct real roots of a squarefree a in (lo, hi]; None = +-infinity."""
    if not a:
        raise ZeroPolynomial("root count of zero polynomial")
    if zp_degree(a) == 0:
        return 0
    chain = zp_sturm_chain(a)
    lo_pt = "-inf" if lo is None else lo
    hi_pt = "+inf" if hi is None else hi
    va = _sign_variations([zp_sign_at(p, lo_pt) for p in chain])
    vb = _sign_variations([zp_sign_at(p, hi_pt) for p in chain])
    return va - vb


def zp_resultant(a, b):
    """Resultant of two integer polynomials: Sylvester determinant (Bareiss)."""
    from ._linalg import bareiss_determinant

    da, db = zp_degree(a), zp_degree(b)
    if da < 0 or db < 0:
        return 0
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    size = da + db
    rows = []
    rev_a = list(reversed(a))
    rev_b = list(reversed(b))
    for i in range(db):
        rows.append([0] * i + rev_a + [0] * (size - i - len(rev_a)))
    for i in range(da):
        rows.append([0] * i + rev_b + [0] * (size - i - len(rev_b)))
    return bareiss_determinant(rows)


def zp_interpolate(points):
    """Exact Lagrange interpolation through integer points -> integer coeffs.

    points: list of (x, y) with distinct integer x.  Raises if the
    interpolant is not an integer polynomial.  Integer-only: accumulates the
    Lagrange numerators over a common denominator.
    """
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    n = len(points)
    # master numerator prod (u - x_j)
    master = [1]
    for x in xs:
        master = zp_mul(master, [-x, 1])
    dens = []
    for i in range(n):
        d = 1
        for j in range(n):
            if j != i:
                d *= xs[i] - xs[j]
        dens.append(d)
    common = 1
    for d in dens:
        common = common * d // math.gcd(common, d)
    acc = [0] * n
    for i in range(n):
        if ys[i] == 0:
            continue
        # master / (u - x_i) by exact synthetic division
        quot = [0] * n
        carry = master[n]
        for k in range(n - 1, -1, -1):
            quot[k] = carry
            carry = master[k] + carry * xs[i]
        scale = ys[i] * (common // dens[i])
        for k in range(n):
            acc[k] += scale * quot[k]
    out = []
    for c in acc:
        q, r = divmod(c, common)
        if r:
            raise ArithmeticError("interpolant not integral")
        out.append(q)
    return zp_trim(out)


# ----------------------------------------------------------------------
# public univariate wrapper
# ----------------------------------------------------------------------


class UnivariatePoly:
    """Dense integer-coefficient polynomial, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = zp_trim([int(c) for c in coeffs])

    @classmethod
    def from_rational_coeffs(cls, coeffs):
        """Clear denominators of a rational coefficient list (same roots)."""
        fracs = [Fraction(c) for c in coeffs]
        lcm = 1
        for f in fracs:
            lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
        return cls([f * lcm for f in fracs])

    def degree(self):
        return zp_degree(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        return UnivariatePoly(zp_add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return UnivariatePoly(zp_sub(self.coeffs, other.coeffs))

    def __mul__(self, other):
        return UnivariatePoly(zp_mul(self.coeffs, other.coeffs))

    def __neg__(self):
        return UnivariatePoly(zp_neg(self.coeffs))

    def derivative(self):
        return UnivariatePoly(zp_derivative(self.coeffs))

    def evaluate(self, x):
        acc = Fraction(0) if isinstance(x, Fraction) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def primitive_part(self):
        _, p = zp_primitive(self.coeffs)
        return UnivariatePoly(p)

    def content(self):
        return zp_content(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "UnivariatePoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "UnivariatePoly(" + " + ".join(terms) + ")"


def squarefree_part(p: UnivariatePoly) -> UnivariatePoly:
    """p / gcd(p, p'), primitive; same real roots without multiplicity."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree part of zero polynomial")
    return UnivariatePoly(zp_squarefree(p.coeffs))


def is_squarefree(p: UnivariatePoly) -> bool:
    if p.is_zero():
        return False
    if p.degree() == 0:
        return True
    g = zp_gcd(p.coeffs, zp_derivative(p.coeffs))
    return zp_degree(g) == 0


def sturm_count(p: UnivariatePoly, interval=None) -> int:
    """Distinct real roots of squarefree p on the whole line or in (lo, hi].

    interval: None for (-inf, inf), else a pair (lo, hi) of exact rationals
    where either endpoint may be None for the corresponding infinity.
    """
    if p.is_zero():
        raise ZeroPolynomial("Sturm count of zero polynomial")
    if not is_squarefree(p):
        raise NotSquarefree("polynomial has repeated roots; take squarefree_part first")
    lo, hi = (None, None) if interval is None else interval
    return zp_count_real_roots(p.coeffs, lo, hi)


# ----------------------------------------------------------------------
# sparse multivariate polynomials
# ----------------------------------------------------------------------


class MultiPoly:
    """Sparse multivariate polynomial: exponent tuple -> exact coefficient.

    Coefficients may be int or Fraction; mixed arithmetic stays exact.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    exp = tuple(exp)
                    if len(exp) != nvars:
                        raise ValueError("exponent arity mismatch")
                    if any(e < 0 for e in exp):
                        raise ValueError("negative exponent")
                    self.terms[exp] = self.terms.get(exp, 0) + c
            self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {tuple([0] * nvars): c} if c else {})

    @classmethod
    def variable(cls, nvars, index):
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.nvars, other)

    __radd__ = __add__
    __rmul__ = __mul__

    def scale(self, k):
        if not k:
            return MultiPoly(self.nvars, {})
        return MultiPoly(self.nvars, {e: c * k for e, c in self.terms.items()})

    def degree_in(self, var):
        return max((e[var] for e in self.terms), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient_of(self, var, power):
        """Coefficient of var**power, as a MultiPoly in the same ring."""
        out = {}
        for e, c in self.terms.items():
            if e[var] == power:
                e2 = list(e)
                e2[var] = 0
                out[tuple(e2)] = c
        return MultiPoly(self.nvars, out)

    def as_univariate_in(self, var):
        """List of coefficient MultiPolys by degree in var, lowest first."""
        d = self.degree_in(var)
        return [self.coefficient_of(var, k) for k in range(d + 1)]

    def substitute(self, var, replacement):
        """Substitute a MultiPoly (same ring) for one variable."""
        replacement = self._coerce(replacement)
        powers = {0: MultiPoly.constant(self.nvars, 1)}

        def power(k):
            if k not in powers:
                powers[k] = power(k - 1) * replacement
            return powers[k]

        out = MultiPoly(self.nvars, {})
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[var]
            e2[var] = 0
            base = MultiPoly(self.nvars, {tuple(e2): c})
            out = out + base * power(k)
        return out

    def evaluate(self, values):
        acc = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            acc = acc + term
        return acc

    def set_variable(self, var, value):
        """Plug an exact number into one variable; result stays a MultiPoly."""
        out = {}
        for e, c in self.terms.items():
            c2 = c * value ** e[var] if e[var] else c
            e2 = list(e)
            e2[var] = 0
            e2 = tuple(e2)
            out[e2] = out.get(e2, 0) + c2
        return MultiPoly(self.nvars, out)

    def clear_denominators(self):
        """Scale by the lcm of coefficient denominators; returns int-valued poly."""
        lcm = 1
        for c in self.terms.values():
            d = c.denominator if isinstance(c, Fraction) else 1
            lcm = lcm * d // math.gcd(lcm, d)
        out = {}
        for e, c in self.terms.items():
            v = c * lcm
            v = int(v) if isinstance(v, Fraction) else v
            out[e] = v
        return MultiPoly(self.nvars, out)

    def content(self):
        g = 0
        for c in self.terms.values():
            if isinstance(c, Fraction):
                raise ValueError("content of non-integer polynomial")
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def primitive_part(self):
        g = self.content()
        if g in (0, 1):
            return self
        return MultiPoly(self.nvars, {e: c // g for e, c in self.terms.items()})

    def divexact(self, divisor):
        """Exact multivariate division (divisor must divide); graded-lex reduction."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return MultiPoly(self.nvars, {})

        def key(e):
            return (sum(e), e)

        lead_d = max(divisor.terms, key=key)
        cd = divisor.terms[lead_d]
        rem = dict(self.terms)
        out = {}
        while rem:
            lead_r = max(rem, key=key)
            cr = rem[lead_r]
            e = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(x < 0 for x in e):
                raise ArithmeticError("non-exact multivariate division")
            if isinstance(cr, int) and isinstance(cd, int):
                if cr % cd != 0:
                    raise ArithmeticError("non-exact multivariate division")
                q = cr // cd
            else:
                q = Fraction(cr) / Fraction(cd)
            out[e] = out.get(e, 0) + q
            for ed, cdv in divisor.terms.items():
                e2 = tuple(a + b for a, b in zip(e, ed))
                rem[e2] = rem.get(e2, 0) - q * cdv
                if not rem[e2]:
                    del rem[e2]
        return MultiPoly(self.nvars, out)

    def sorted_terms(self):
        """Terms in graded-lex order, for canonical printing."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        names = "xyzw"[: self.nvars] if self.nvars <= 4 else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i]
                            for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(parts) + ")"


def resultant(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    """Resultant of f, g with respect to variable var (subresultant PRS).

    Equals the Sylvester determinant up to sign.  The inputs must be
    nonzero and at least one must have positive degree in var.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of zero polynomial")
    df, dg = f.degree_in(var), g.degree_in(var)
    if df <= 0 and dg <= 0:
        raise ZeroPolynomial("neither input involves the variable")
    # work over the integers; undo the clearing scale at the end
    fc = f.clear_denominators()
    gc = g.clear_denominators()
    sf = _scale_ratio(f, fc)
    sg = _scale_ratio(g, gc)
    res = _resultant_int(fc, gc, var)
    factor = sf ** dg * sg ** df
    if factor != 1:
        res = res.scale(Fraction(1, 1) / factor)
    return res


def _scale_ratio(orig: MultiPoly, cleared: MultiPoly) -> Fraction:
    """cleared = ratio * orig for the denominator-clearing scale."""
    for e, c in orig.terms.items():
        return Fraction(cleared.terms[e], 1) / Fraction(c)
    return Fraction(1)


def _resultant_int(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    df, dg = f.degree_in(var), g.degree_in(var)
    res_sign = 1
    if df < dg:
        if df % 2 == 1 and dg % 2 == 1:
            res_sign = -res_sign
        f, g = g, f
        df, dg = dg, df
    if dg <= 0:
        return _mp_power(g, df).scale(res_sign)

    def lead(p):
        return p.coefficient_of(var, p.degree_in(var))

    def prem(a, b):
        da, db = a.degree_in(var), b.degree_in(var)
        lb = lead(b)
        r = a
        count = 0
        while not r.is_zero() and r.degree_in(var) >= db:
            dr = r.degree_in(var)
            lr = lead(r)
            shift = MultiPoly(a.nvars, {tuple(dr - db if i == var else 0
                                              for i in range(a.nvars)): 1})
            r = r * lb - b * shift * lr
            count += 1
        for _ in range(da - db + 1 - count):
            r = r * lb
        return r

    one = MultiPoly.constant(f.nvars, 1)
    a, b = f, g
    h = one
    gg = one
    while True:
        da, db = a.degree_in(var), b.degree_in(var)
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            res_sign = -res_sign
        r = prem(a, b)
        if r.is_zero():
            return MultiPoly(f.nvars, {})
        divisor = gg * _mp_power(h, delta)
        a, b = b, r.divexact(divisor)
        gg = lead(a)
        if delta > 0:
            h = _mp_power(gg, delta).divexact(_mp_power(h, delta - 1))
        if b.degree_in(var) <= 0:
            break
    da = a.degree_in(var)
    num = _mp_power(b, da)
    if da > 1:
        num = num.divexact(_mp_power(h, da - 1))
    return num.scale(res_sign)


def _mp_power(p: MultiPoly, k: int) -> MultiPoly:
    out = MultiPoly.constant(p.nvars, 1)
    for _ in range(k):
        out = out * p
    return out


def _bivariate_table(p: MultiPoly, elim_var: int, keep_var: int):
    """Dense table t[i][j] = coefficient of elim^i keep^j (must be the only vars)."""
    de, dk = p.degree_in(elim_var), p.degree_in(keep_var)
    table = [[0] * (dk + 1) for _ in range(de + 1)]
    for e, c in p.terms.items():
        if any(e[v] for v in range(p.nvars) if v not in (elim_var, keep_var)):
            raise ValueError("polynomial involves other variables")
        table[e[elim_var]][e[keep_var]] += c
    return table


def resultant_univariate_output(f: MultiPoly, g: MultiPoly, elim_var: int,
                                keep_var: int) -> UnivariatePoly:
    """Res_elim(f, g) for integer-valued f, g active only in two variables.

    Computed by specializing keep_var at integer points and interpolating;
    points where either leading coefficient vanishes are skipped so the
    specialized Sylvester determinant equals the specialized resultant.
    """
    df, dg = f.degree_in(elim_var), g.degree_in(elim_var)
    if df <= 0 or dg <= 0:
        raise ZeroPolynomial("inputs must both involve the eliminated variable")
    ef = max(f.degree_in(keep_var), 0)
    eg = max(g.degree_in(keep_var), 0)
    bound = dg * ef + df * eg
    tf = _bivariate_table(f, elim_var, keep_var)
    tg = _bivariate_table(g, elim_var, keep_var)

    def eval_row(row, x):
        acc = 0
        for c in reversed(row):
            acc = acc * x + c
        return acc

    points = []
    x = 0
    attempts = 0
    while len(points) < bound + 1:
        for c in ([0] if x == 0 else [x, -x]):
            if len(points) >= bound + 1:
                break
            if eval_row(tf[df], c) != 0 and eval_row(tg[dg], c) != 0:
                fa = zp_trim([eval_row(row, c) for row in tf])
                ga = zp_trim([eval_row(row, c) for row in tg])
                points.append((c, zp_resultant(fa, ga)))
        x += 1
        attempts += 1
        if attempts > 10 * (bound + 10):
            raise ArithmeticError("could not find enough good evaluation points")
    return UnivariatePoly(zp_interpolate(points))
