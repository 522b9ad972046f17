"""Finite posets: order ideals, antichains, linear extensions, sign imbalance.

Elements carry opaque hashable labels; the element order given at
construction fixes the lexicographic conventions (reference extension,
enumeration order).  Ideals here are upper order ideals (up-sets), matching
the vertex description of the order polytope.
"""

from dataclasses import dataclass
from fractions import Fraction
import json
import math

from .errors import (CycleDetected, EnumerationCapExceeded, RedundantCover,
                     UnknownLabel)

DEFAULT_EXTENSION_CAP = 10 ** 7


@dataclass(frozen=True)
class OrderIdeal:
    """Upper order ideal: upward-closed set of elements."""
    members: frozenset
    size: int


@dataclass(frozen=True)
class Antichain:
    """Pairwise incomparable set; rank = size of the upper ideal it generates."""
    members: frozenset
    rank: int


@dataclass(frozen=True)
class LinearExtension:
    """Order-preserving arrangement with its sign against the reference."""
    order: tuple
    sign: int


class Poset:
    """Immutable finite poset given by elements and Hasse covers."""

    def __init__(self, elements, covers):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate element labels")
        self.elements = elements
        self._index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        cover_pairs = []
        for lo, hi in covers:
            if lo not in self._index or hi not in self._index:
                raise UnknownLabel(f"cover ({lo!r}, {hi!r}) references unknown label")
            cover_pairs.append((self._index[lo], self._index[hi]))
        self.covers = tuple((elements[a], elements[b]) for a, b in cover_pairs)
        self._cover_idx = tuple(cover_pairs)

        # strict up-sets as bitmasks via transitive closure of covers
        up = [0] * n
        adj = [[] for _ in range(n)]
        indeg = [0] * n
        for a, b in cover_pairs:
            adj[a].append(b)
            indeg[b] += 1
        # Kahn topological order; leftover nodes mean a cycle
        order = [i for i in range(n) if indeg[i] == 0]
        seen = 0
        queue = list(order)
        topo = []
        indeg2 = list(indeg)
        while queue:
            v = queue.pop()
            topo.append(v)
            seen += 1
            for w in adj[v]:
                indeg2[w] -= 1
                if indeg2[w] == 0:
                    queue.append(w)
        if seen != n:
            raise CycleDetected("cover relation contains a cycle")
        for v in reversed(topo):
            mask = 0
            for w in adj[v]:
                mask |= (1 << w) | up[w]
            up[v] = mask
        self._up = up  # strict: up[i] excludes i
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if (up[i] >> j) & 1:
                    down[j] |= 1 << i
        self._down = down

        # Hasse minimality: a cover is redundant if implied by the others
        for a, b in cover_pairs:
            for c in range(n):
                if c != a and c != b and ((up[a] >> c) & 1) and ((up[c] >> b) & 1):
                    raise RedundantCover(
                        f"cover ({elements[a]!r}, {elements[b]!r}) is implied "
                        f"through {elements[c]!r}")

    # -- basic queries ---------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def index(self, label):
        return self._index[label]

    def less(self, a, b):
        """Strict order a < b."""
        return bool((self._up[self._index[a]] >> self._index[b]) & 1)

    def minimal_elements(self):
        return [e for i, e in enumerate(self.elements) if self._down[i] == 0]

    def maximal_elements(self):
        return [e for i, e in enumerate(self.elements) if self._up[i] == 0]

    def covers_of(self, label):
        """Elements covered by label (immediately below it)."""
        return [lo for lo, hi in self.covers if hi == label]

    # -- ideals and antichains -------------------------------------------

    def _upset_masks(self):
        """All upward-closed subsets as bitmasks, sorted by (size, mask)."""
        n = len(self.elements)
        up = self._up
        masks = []
        for mask in range(1 << n):
            ok = True
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                if up[i] & ~mask:
                    ok = False
                    break
                m &= m - 1
            if ok:
                masks.append(mask)
        masks.sort(key=lambda m: (bin(m).count("1"), m))
        return masks

    def _mask_members(self, mask):
        return frozenset(self.elements[i] for i in range(len(self.elements))
                         if (mask >> i) & 1)

    def order_ideals(self):
        """All upper order ideals, graded by size."""
        return [OrderIdeal(self._mask_members(m), bin(m).count("1"))
                for m in self._upset_masks()]

    def _mask_minimals(self, mask):
        """Minimal elements of the subset mask, as a mask."""
        out = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            if not (self._down[i] & mask):
                out |= 1 << i
            m &= m - 1
        return out

    def antichains(self):
        """All antichains with ranks, bijective with order_ideals."""
        out = []
        for m in self._upset_masks():
            a = self._mask_minimals(m)
            out.append(Antichain(self._mask_members(a), bin(m).count("1")))
        return out

    def upset_generated_by(self, labels):
        """The upper ideal generated by a set of labels."""
        mask = 0
        for lab in labels:
            i = self._index[lab]
            mask |= (1 << i) | self._up[i]
        return self._mask_members(mask)

    # -- linear extensions -------------------------------------------------

    def iter_linear_extensions(self, cap=DEFAULT_EXTENSION_CAP):
        """Yield extensions as index tuples, in lexicographic order."""
        n = len(self.elements)
        down = self._down
        count = 0
        prefix = []
        placed = 0

        def rec(placed_mask):
            nonlocal count
            if len(prefix) == n:
                count += 1
                if count > cap:
                    raise EnumerationCapExceeded(
                        f"more than {cap} linear extensions")
                yield tuple(prefix)
                return
            for i in range(n):
                if not ((placed_mask >> i) & 1) and (down[i] & ~placed_mask) == 0:
                    prefix.append(i)
                    yield from rec(placed_mask | (1 << i))
                    prefix.pop()

        yield from rec(placed)

    def linear_extensions(self, cap=DEFAULT_EXTENSION_CAP, reference=None):
        """All extensions with signs relative to the reference extension.

        The reference defaults to the lexicographically least extension
        (by element position in ``elements``).
        """
        exts = []
        ref = None
        for idx_tuple in self.iter_linear_extensions(cap=cap):
            if ref is None:
                ref = idx_tuple if reference is None else tuple(
                    self._index[lab] for lab in reference)
            exts.append(LinearExtension(
                tuple(self.elements[i] for i in idx_tuple),
                _permutation_sign(ref, idx_tuple)))
        if not exts:  # empty poset: one empty extension
            exts.append(LinearExtension((), 1))
        return exts

    def count_linear_extensions(self, cap=DEFAULT_EXTENSION_CAP):
        count = 0
        for _ in self.iter_linear_extensions(cap=cap):
            count += 1
        return max(count, 1)

    def sign_imbalance(self, cap=DEFAULT_EXTENSION_CAP, reference=None):
        """|#positive - #negative| over all linear extensions."""
        total = 0
        ref = None
        any_ext = False
        for idx_tuple in self.iter_linear_extensions(cap=cap):
            any_ext = True
            if ref is None:
                ref = idx_tuple if reference is None else tuple(
                    self._index[lab] for lab in reference)
            total += _permutation_sign(ref, idx_tuple)
        if not any_ext:
            return 1  # the empty extension counts once, positively
        return abs(total)

    # -- chains -----------------------------------------------------------

    def maximal_chains(self):
        """All maximal chains, bottom to top, as label tuples."""
        n = len(self.elements)
        above = [[] for _ in range(n)]  # immediate covers above i
        for a, b in self._cover_idx:
            above[a].append(b)
        chains = []

        def extend(chain):
            last = chain[-1]
            if not above[last]:
                chains.append(tuple(self.elements[i] for i in chain))
                return
            for nxt in above[last]:
                extend(chain + [nxt])

        for i in range(n):
            if self._down[i] == 0:
                extend([i])
        if n == 0:
            chains.append(())
        return chains

    def is_ranked_mod2(self):
        """(flag, parity): all maximal chains share element-count parity.

        parity is the common element count mod 2, or None when the flag
        is False.
        """
        parities = {len(c) % 2 for c in self.maximal_chains()}
        if len(parities) == 1:
            return True, parities.pop()
        return False, None

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, covers={list(self.covers)!r})"


def _permutation_sign(ref, seq):
    """Parity of the permutation carrying ref to seq (index tuples)."""
    pos = {v: i for i, v in enumerate(ref)}
    perm = [pos[v] for v in seq]
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def build_poset(elements, covers):
    """Validated poset; rejects cyclic or non-minimal cover sets."""
    return Poset(elements, covers)


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------


def chain(k, prefix="c"):
    """Chain with k elements, c1 < c2 < ... < ck."""
    labels = [f"{prefix}{i}" for i in range(1, k + 1)]
    covers = [(labels[i], labels[i + 1]) for i in range(k - 1)]
    return Poset(labels, covers)


def antichain(k, prefix="a"):
    return Poset([f"{prefix}{i}" for i in range(1, k + 1)], [])


def disjoint_union(posets):
    """Incomparable union; labels are prefixed by component index."""
    elements = []
    covers = []
    for idx, p in enumerate(posets):
        ren = {e: f"p{idx}.{e}" for e in p.elements}
        elements.extend(ren[e] for e in p.elements)
        covers.extend((ren[a], ren[b]) for a, b in p.covers)
    return Poset(elements, covers)


def union_of_chains(lengths):
    """Incomparable union of chains with the given element counts."""
    elements = []
    covers = []
    for idx, a in enumerate(lengths):
        labels = [f"x{idx + 1}.{j}" for j in range(1, a + 1)]
        elements.extend(labels)
        covers.extend((labels[j], labels[j + 1]) for j in range(a - 1))
    return Poset(elements, covers)


def grid(m, p):
    """Product of chains [m] x [p], ordered componentwise."""
    labels = [f"({i},{j})" for i in range(1, m + 1) for j in range(1, p + 1)]
    covers = []
    for i in range(1, m + 1):
        for j in range(1, p + 1):
            if i < m:
                covers.append((f"({i},{j})", f"({i + 1},{j})"))
            if j < p:
                covers.append((f"({i},{j})", f"({i},{j + 1})"))
    return Poset(labels, covers)


def boolean(n):
    """Boolean poset of subsets of an n-set, ordered by inclusion."""
    labels = [f"s{m:0{max(n, 1)}b}" for m in range(1 << n)]
    covers = []
    for m in range(1 << n):
        for b in range(n):
            if not (m >> b) & 1:
                covers.append((labels[m], labels[m | (1 << b)]))
    return Poset(labels, covers)


# ----------------------------------------------------------------------
# closed-form combinatorics
# ----------------------------------------------------------------------


def multinomial(total, parts):
    """Multinomial coefficient; 0 when the parts do not sum to total."""
    if sum(parts) != total:
        return 0
    out = 1
    acc = 0
    for p in parts:
        acc += p
        out *= math.comb(acc, p)
    return out


def chain_union_imbalance(lengths):
    """Sign imbalance of an incomparable union of chains (floor multinomial)."""
    if not lengths:
        raise ValueError("need at least one chain")
    if any(a <= 0 for a in lengths):
        raise ValueError("chain lengths must be positive")
    top = sum(lengths) // 2
    return multinomial(top, [a // 2 for a in lengths])


def q_binomial_poly(a, b):
    """Gaussian binomial [a+b choose a]_q as integer coefficient list."""
    # recurrence [n,k]_q = [n-1,k-1]_q + q^k [n-1,k]_q
    table = {(0, 0): [1]}

    def get(n, k):
        if k < 0 or k > n:
            return []
        if (n, k) not in table:
            left = get(n - 1, k - 1)
            right = get(n - 1, k)
            shifted = [0] * k + right
            table[(n, k)] = _list_add(left, shifted)
        return table[(n, k)]

    return get(a + b, a)


def _list_add(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    while out and out[-1] == 0:
        out.pop()
    return out


def q_multinomial_poly(parts):
    """q-multinomial coefficient as a polynomial (iterated q-binomials)."""
    coeffs = [1]
    acc = 0
    for p in parts:
        coeffs_b = q_binomial_poly(acc, p)
        out = [0] * (len(coeffs) + len(coeffs_b) - 1)
        for i, x in enumerate(coeffs):
            for j, y in enumerate(coeffs_b):
                out[i + j] += x * y
        coeffs = out
        acc += p
    return coeffs


def q_multinomial_at(parts, q):
    """Evaluate the q-multinomial coefficient exactly at rational q."""
    if any(p < 0 for p in parts):
        raise ValueError("parts must be nonnegative")
    q = Fraction(q)
    acc = Fraction(0)
    for c in reversed(q_multinomial_poly(list(parts))):
        acc = acc * q + c
    return acc


def white_imbalance(m, p):
    """Sign imbalance of the product of chains [m] x [p] (closed form)."""
    if m < 1 or p < 1:
        raise ValueError("m, p must be positive")
    if (m + p) % 2 == 0:
        return 0
    if m < p:
        m, p = p, m
    num = 1
    for i in range(1, p):
        num *= math.factorial(i)
    for j in range(m - p + 1, m):
        num *= math.factorial(j)
    num *= math.factorial(m * p // 2)
    den = 1
    for l in range(m - p + 2, m + p - 1, 2):
        den *= math.factorial(l)
    for h in range((m - p + 1) // 2, (m + p - 1) // 2 + 1):
        den *= math.factorial(h)
    if num % den != 0:
        raise ArithmeticError("imbalance formula did not divide exactly")
    return num // den


def product_union_stats(parts):
    """(extension count, imbalance) of an incomparable union of posets.

    parts: list of (poset_or_size, eta_i, sigma_i); the first entry only
    contributes its element count.
    """
    if not parts:
        raise ValueError("need at least one part")
    sizes = []
    eta = 1
    sigma = 1
    for part, eta_i, sigma_i in parts:
        sizes.append(len(part) if isinstance(part, Poset) else int(part))
        eta *= eta_i
        sigma *= sigma_i
    eta *= multinomial(sum(sizes), sizes)
    sigma *= multinomial(sum(sizes) // 2, [a // 2 for a in sizes])
    return eta, sigma


# ----------------------------------------------------------------------
# text / JSON interchange
# ----------------------------------------------------------------------


def parse_poset(text):
    """Parse the poset text format or its JSON equivalent.

    Text format: one line ``elements: a b c``, then lines ``cover: x < y``.
    JSON: {"elements": [...], "covers": [[lo, hi], ...]}.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        return Poset(data["elements"], [tuple(c) for c in data["covers"]])
    elements = None
    covers = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("elements:"):
            elements = line[len("elements:"):].split()
        elif line.startswith("cover:"):
            body = line[len("cover:"):]
            if "<" not in body:
                raise ValueError(f"malformed cover line: {line!r}")
            lo, hi = (s.strip() for s in body.split("<", 1))
            covers.append((lo, hi))
        else:
            raise ValueError(f"unrecognized line: {line!r}")
    if elements is None:
        raise ValueError("missing 'elements:' line")
    return Poset(elements, covers)


def poset_to_json(poset):
    return json.dumps({"elements": list(poset.elements),
                       "covers": [list(c) for c in poset.covers]})


# ----------------------------------------------------------------------
# exhaustive enumeration up to isomorphism (used by the verification suite)
# ----------------------------------------------------------------------


def _canonical_form(n, up):
    """Canonical relation signature of a poset on range(n) given up-masks."""
    down = [0] * n
    for i in range(n):
        for j in range(n):
            if (up[i] >> j) & 1:
                down[j] |= 1 << i

    def invariant(i):
        return (bin(up[i]).count("1"), bin(down[i]).count("1"))

    # refine invariants by neighbor multisets until stable
    inv = {i: invariant(i) for i in range(n)}
    for _ in range(n):
        nxt = {}
        for i in range(n):
            ups = sorted(inv[j] for j in range(n) if (up[i] >> j) & 1)
            downs = sorted(inv[j] for j in range(n) if (down[i] >> j) & 1)
            nxt[i] = (inv[i], tuple(ups), tuple(downs))
        if len(set(nxt.values())) == len(set(inv.values())) and n > 0:
            inv = nxt
            break
        inv = nxt
    classes = {}
    for i in range(n):
        classes.setdefault(inv[i], []).append(i)
    groups = [classes[k] for k in sorted(classes.keys())]

    best = None

    def assign(perm_slots, remaining_groups):
        nonlocal best
        if not remaining_groups:
            perm = perm_slots
            pos = {v: i for i, v in enumerate(perm)}
            sig = tuple(sorted(
                (pos[i], pos[j]) for i in range(n) for j in range(n)
                if (up[i] >> j) & 1))
            if best is None or sig < best:
                best = sig
            return
        group = remaining_groups[0]
        import itertools
        for order in itertools.permutations(group):
            assign(perm_slots + list(order), remaining_groups[1:])

    assign([], groups)
    return (n, best if best is not None else ())


def iter_posets(n):
    """All posets on n elements up to isomorphism, as Poset objects.

    Generated by repeatedly adjoining a maximal element above each down-set.
    Exponential; intended for n <= 7.
    """
    reps = {(0, ()): []}  # canonical form -> list of strict-up masks
    for size in range(1, n + 1):
        new_reps = {}
        for up in reps.values():
            m = size - 1
            # enumerate down-sets of the current poset
            down = [0] * m
            for i in range(m):
                for j in range(m):
                    if (up[i] >> j) & 1:
                        down[j] |= 1 << i
            for mask in range(1 << m):
                ok = True
                t = mask
                while t:
                    i = (t & -t).bit_length() - 1
                    if down[i] & ~mask:
                        ok = False
                        break
                    t &= t - 1
                if not ok:
                    continue
                # adjoin element m above exactly the elements of mask
                new_up = list(up) + [0]
                t = mask
                while t:
                    i = (t & -t).bit_length() - 1
                    new_up[i] |= 1 << m
                    t &= t - 1
                form = _canonical_form(size, new_up)
                if form not in new_reps:
                    new_reps[form] = new_up
        reps = new_reps
    for up in reps.values():
        yield _poset_from_up_masks(n, up)


def iter_all_posets(max_n):
    """All posets with at most max_n elements, up to isomorphism."""
    for size in range(max_n + 1):
        yield from iter_posets(size)


def _poset_from_up_masks(n, up):
    # covers: i < j with nothing strictly between
    labels = [f"e{i}" for i in range(n)]
    covers = []
    for i in range(n):
        for j in range(n):
            if (up[i] >> j) & 1:
                between = any(((up[i] >> k) & 1) and ((up[k] >> j) & 1)
                              for k in range(n))
                if not between:
                    covers.append((labels[i], labels[j]))
    return Poset(labels, covers)
