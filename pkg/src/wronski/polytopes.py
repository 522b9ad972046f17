"""Lattice polytopes, triangulations, foldings, signatures, orientability.

All linear algebra is exact (integers and Fractions).  Polytopes carry both
their lattice points and an irredundant facet system A x >= -b with
primitive inward normals.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json
import math

from ._linalg import (affine_rank, bareiss_determinant, gf2_in_column_span,
                      integer_rank, smith_normal_form, solve_affine_exact)
from .errors import (DegenerateSimplex, EnumerationCapExceeded, NotBalanced,
                     NotFullDimensional, PointOutsidePolytope)
from .posets import DEFAULT_EXTENSION_CAP, Poset

# ----------------------------------------------------------------------
# core types
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class LatticePolytope:
    """Full-dimensional lattice polytope: points plus facets A x >= -b."""

    dim: int
    lattice_points: tuple
    facet_normals: tuple
    facet_offsets: tuple
    name: str = None
    poset_kind: str = None  # 'order' | 'chain' when built from a poset

    def __post_init__(self):
        for row in self.facet_normals:
            g = 0
            for x in row:
                g = math.gcd(g, x)
            if g != 1:
                raise ValueError(f"facet normal {row} is not primitive")
        for p in self.lattice_points:
            for row, off in zip(self.facet_normals, self.facet_offsets):
                if sum(r * x for r, x in zip(row, p)) < -off:
                    raise ValueError(f"lattice point {p} violates a facet")

    def contains(self, point):
        """Exact membership test for a rational point."""
        for row, off in zip(self.facet_normals, self.facet_offsets):
            if sum(Fraction(r) * Fraction(x) for r, x in zip(row, point)) < -off:
                return False
        return True

    def tight_facets(self, point):
        return [i for i, (row, off) in enumerate(zip(self.facet_normals,
                                                     self.facet_offsets))
                if sum(r * x for r, x in zip(row, point)) == -off]

    def vertices(self):
        """Lattice points lying on dim many independent facets."""
        out = []
        for p in self.lattice_points:
            rows = [self.facet_normals[i] for i in self.tight_facets(p)]
            if rows and integer_rank(rows) == self.dim:
                out.append(p)
        return out

    def facet_count(self):
        return len(self.facet_normals)

    def to_json(self):
        return json.dumps({
            "dim": self.dim,
            "lattice_points": [list(p) for p in self.lattice_points],
            "facets": {"A": [list(r) for r in self.facet_normals],
                       "b": list(self.facet_offsets)},
        })

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(dim=data["dim"],
                   lattice_points=tuple(tuple(p) for p in data["lattice_points"]),
                   facet_normals=tuple(tuple(r) for r in data["facets"]["A"]),
                   facet_offsets=tuple(data["facets"]["b"]))


@dataclass(frozen=True)
class Triangulation:
    """Simplices on a polytope's lattice points, with optional decorations."""

    simplices: tuple          # tuple of (n+1)-tuples of lattice-point indices
    lifting: tuple = None     # integer per lattice point
    folding: tuple = None     # color in 0..n per lattice point
    simplex_signs: tuple = None
    simplex_volumes: tuple = None

    def to_json(self):
        return json.dumps({
            "simplices": [list(s) for s in self.simplices],
            "lifting": list(self.lifting) if self.lifting is not None else None,
            "folding": list(self.folding) if self.folding is not None else None,
        })

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(simplices=tuple(tuple(s) for s in data["simplices"]),
                   lifting=tuple(data["lifting"]) if data.get("lifting") else None,
                   folding=tuple(data["folding"]) if data.get("folding") is not None else None)


@dataclass(frozen=True)
class OrientabilityReport:
    affine_span_odd_index: bool
    column_lattice_saturated_odd: bool
    odd_vector_in_AB_span_mod2: bool
    odd_vector_in_A_span_mod2: bool

    @property
    def cox_oriented(self):
        return (self.affine_span_odd_index
                and self.column_lattice_saturated_odd
                and self.odd_vector_in_AB_span_mod2)


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    orientation: str = None            # 'lower' | 'upper'
    certificates: tuple = None         # per simplex: (coeffs, constant)
    failure: str = None


@dataclass(frozen=True)
class FoldResult:
    folding: tuple
    signs: tuple
    signature: int


# ----------------------------------------------------------------------
# simplex helpers
# ----------------------------------------------------------------------


def simplex_volume(points, simplex):
    """Normalized volume |det| of the simplex's edge matrix."""
    base = points[simplex[0]]
    rows = [[points[i][j] - base[j] for j in range(len(base))]
            for i in simplex[1:]]
    return abs(bareiss_determinant(rows))


def _with_volumes(points, tri: Triangulation) -> Triangulation:
    vols = tuple(simplex_volume(points, s) for s in tri.simplices)
    if any(v == 0 for v in vols):
        raise DegenerateSimplex("simplex with affinely dependent vertices")
    return Triangulation(tri.simplices, tri.lifting, tri.folding,
                         tri.simplex_signs, vols)


# ----------------------------------------------------------------------
# order and chain polytopes
# ----------------------------------------------------------------------


def _ideal_masks(poset: Poset):
    return poset._upset_masks()


def _mask_to_vector(mask, n):
    return tuple((mask >> i) & 1 for i in range(n))


def order_polytope(poset: Poset):
    """(polytope, ideals) with lattice points indexed like the ideal list."""
    n = len(poset)
    if n < 1:
        raise ValueError("order polytope needs a nonempty poset")
    masks = _ideal_masks(poset)
    points = tuple(_mask_to_vector(m, n) for m in masks)
    normals, offsets = [], []
    for e in poset.minimal_elements():
        row = [0] * n
        row[poset.index(e)] = 1
        normals.append(tuple(row))
        offsets.append(0)
    for e in poset.maximal_elements():
        row = [0] * n
        row[poset.index(e)] = -1
        normals.append(tuple(row))
        offsets.append(1)
    for lo, hi in poset.covers:
        row = [0] * n
        row[poset.index(hi)] = 1
        row[poset.index(lo)] = -1
        normals.append(tuple(row))
        offsets.append(0)
    poly = LatticePolytope(dim=n, lattice_points=points,
                           facet_normals=tuple(normals),
                           facet_offsets=tuple(offsets),
                           poset_kind="order")
    ideals = poset.order_ideals()
    return poly, ideals


def chain_polytope(poset: Poset):
    """(polytope, antichains) with points indexed like the antichain list.

    The antichain list is aligned with the ideal list through the
    minimal-elements bijection, so order- and chain-polytope indices match.
    """
    n = len(poset)
    if n < 1:
        raise ValueError("chain polytope needs a nonempty poset")
    masks = _ideal_masks(poset)
    points = tuple(_mask_to_vector(poset._mask_minimals(m), n) for m in masks)
    normals, offsets = [], []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        normals.append(tuple(row))
        offsets.append(0)
    for chain_labels in poset.maximal_chains():
        row = [0] * n
        for e in chain_labels:
            row[poset.index(e)] = -1
        normals.append(tuple(row))
        offsets.append(1)
    poly = LatticePolytope(dim=n, lattice_points=points,
                           facet_normals=tuple(normals),
                           facet_offsets=tuple(offsets),
                           poset_kind="chain")
    return poly, poset.antichains()


def transfer_map(poset: Poset, point):
    """The piecewise-linear map from the order polytope onto the chain polytope."""
    n = len(poset)
    y = [Fraction(v) for v in point]
    poly, _ = order_polytope(poset)
    if not poly.contains(y):
        raise PointOutsidePolytope(f"{point} violates the order polytope facets")
    out = []
    for e in poset.elements:
        below = poset.covers_of(e)
        ye = y[poset.index(e)]
        if not below:
            out.append(ye)
        else:
            out.append(min(ye - y[poset.index(b)] for b in below))
    return tuple(out)


def canonical_triangulation(poset: Poset, which: str,
                            cap=DEFAULT_EXTENSION_CAP) -> Triangulation:
    """One unimodular simplex per linear extension, with lifting and folding.

    which = 'order': vertices are the nested top-k upper ideals, lifting
    -|J|^2.  which = 'chain': vertices are the antichains of minimal
    elements of those ideals, lifting 3^rk - 1.  Folding is the ideal size
    (= antichain rank) in both cases.
    """
    if which not in ("order", "chain"):
        raise ValueError("which must be 'order' or 'chain'")
    n = len(poset)
    masks = _ideal_masks(poset)
    index_of = {m: i for i, m in enumerate(masks)}
    if which == "order":
        points = [_mask_to_vector(m, n) for m in masks]
        lifting = tuple(-(bin(m).count("1") ** 2) for m in masks)
    else:
        points = [_mask_to_vector(poset._mask_minimals(m), n) for m in masks]
        lifting = tuple(3 ** bin(m).count("1") - 1 for m in masks)
    folding = tuple(bin(m).count("1") for m in masks)
    simplices = []
    for ext in poset.iter_linear_extensions(cap=cap):
        mask = 0
        chain_masks = [0]
        for i in range(n - 1, -1, -1):
            mask |= 1 << ext[i]
            chain_masks.append(mask)
        simplices.append(tuple(index_of[m] for m in chain_masks))
    if not simplices:
        raise ValueError("poset has no linear extensions")
    tri = Triangulation(tuple(simplices), lifting, folding)
    return _with_volumes(points, tri)


# ----------------------------------------------------------------------
# regularity certificates
# ----------------------------------------------------------------------


def verify_regular(polytope: LatticePolytope,
                   triangulation: Triangulation) -> RegularityReport:
    """Certify that the lifting induces exactly this triangulation.

    For each simplex the unique affine function L with L + lifting = 0 on
    its vertices is computed exactly; the triangulation is regular iff the
    off-simplex values L + lifting are nonzero of one uniform sign, the same
    sign for every simplex ('lower' hull when positive, 'upper' when
    negative).
    """
    if triangulation.lifting is None:
        raise ValueError("triangulation carries no lifting")
    pts = polytope.lattice_points
    lift = triangulation.lifting
    orientation = None
    certs = []
    for simplex in triangulation.simplices:
        verts = [pts[i] for i in simplex]
        vals = [-lift[i] for i in simplex]
        sol = solve_affine_exact(verts, vals)
        if sol is None:
            raise DegenerateSimplex(f"simplex {simplex} is affinely dependent")
        coeffs, const = sol
        certs.append((tuple(coeffs), const))
        members = set(simplex)
        for i, p in enumerate(pts):
            if i in members:
                continue
            val = sum(c * x for c, x in zip(coeffs, p)) + const + lift[i]
            if val == 0:
                return RegularityReport(False, failure=(
                    f"lattice point {p} lies on the supporting hyperplane "
                    f"of simplex {simplex}"))
            sign = "lower" if val > 0 else "upper"
            if orientation is None:
                orientation = sign
            elif orientation != sign:
                return RegularityReport(False, failure=(
                    f"mixed certificate signs at point {p}, simplex {simplex}"))
    return RegularityReport(True, orientation=orientation,
                            certificates=tuple(certs))


# ----------------------------------------------------------------------
# folding, signs, signature
# ----------------------------------------------------------------------


def dual_graph(simplices):
    """Adjacency lists: simplices sharing a codimension-1 face."""
    facet_map = {}
    for idx, s in enumerate(simplices):
        for drop in range(len(s)):
            facet = frozenset(s[:drop] + s[drop + 1:])
            facet_map.setdefault(facet, []).append(idx)
    adj = [[] for _ in simplices]
    for facet, owners in facet_map.items():
        if len(owners) > 2:
            raise ValueError(f"facet {sorted(facet)} shared by >2 simplices")
        if len(owners) == 2:
            a, b = owners
            adj[a].append(b)
            adj[b].append(a)
    return adj


def fold_and_sign(triangulation: Triangulation, polytope: LatticePolytope = None,
                  npoints: int = None) -> FoldResult:
    """Derive (or validate) the folding, two-color the dual graph, and
    compute the signature |sum of sign * (volume mod 2)|.

    Needs simplex volumes: stored on the triangulation or computed from the
    polytope's points.
    """
    simplices = triangulation.simplices
    if not simplices:
        raise ValueError("empty triangulation")
    n = len(simplices[0]) - 1
    vols = triangulation.simplex_volumes
    if vols is None:
        if polytope is None:
            raise ValueError("need polytope to compute simplex volumes")
        vols = tuple(simplex_volume(polytope.lattice_points, s) for s in simplices)
    adj = dual_graph(simplices)

    # 2-color the dual graph
    signs = [0] * len(simplices)
    parent = [None] * len(simplices)
    signs[0] = 1
    queue = [0]
    seen = {0}
    while queue:
        v = queue.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                signs[w] = -signs[v]
                parent[w] = v
                queue.append(w)
            elif signs[w] == signs[v]:
                cycle = _odd_cycle_witness(parent, v, w)
                raise NotBalanced("dual graph has an odd cycle", witness=cycle)
    if len(seen) != len(simplices):
        raise ValueError("dual graph is disconnected; not a polytope triangulation")

    # folding: validate the stored one or propagate a fresh coloring
    if triangulation.folding is not None:
        folding = list(triangulation.folding)
        for s in simplices:
            if sorted(folding[i] for i in s) != list(range(n + 1)):
                raise NotBalanced(
                    f"stored folding is not a bijection on simplex {s}",
                    witness=s)
    else:
        size = npoints
        if size is None:
            size = (len(polytope.lattice_points) if polytope is not None
                    else max(max(s) for s in simplices) + 1)
        folding = [None] * size
        first = simplices[0]
        for color, i in enumerate(first):
            folding[i] = color
        order = [0]
        done = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in done:
                    done.add(w)
                    order.append(w)
                    stack.append(w)
        for idx in order[1:]:
            s = simplices[idx]
            missing_vertex = [i for i in s if folding[i] is None]
            used = {folding[i] for i in s if folding[i] is not None}
            if len(used) != len(s) - len(missing_vertex):
                raise NotBalanced(
                    f"no consistent folding: color clash on simplex {s}",
                    witness=s)
            free = [c for c in range(n + 1) if c not in used]
            if len(missing_vertex) != len(free):
                raise NotBalanced(
                    f"no consistent folding: color clash on simplex {s}",
                    witness=s)
            if len(missing_vertex) == 1:
                folding[missing_vertex[0]] = free[0]
            elif missing_vertex:
                # disconnected vertex set inside connected dual graph: pick
                # deterministically (cannot happen for polytope triangulations)
                for i, c in zip(missing_vertex, free):
                    folding[i] = c
        # final validation
        for s in simplices:
            colors = [folding[i] for i in s]
            if None in colors or sorted(colors) != list(range(n + 1)):
                raise NotBalanced(
                    f"no consistent folding on simplex {s}", witness=s)

    signature = abs(sum(sg * (v % 2) for sg, v in zip(signs, vols)))
    return FoldResult(tuple(folding), tuple(signs), signature)


def _odd_cycle_witness(parent, v, w):
    """Cycle through v and w given the BFS/DFS parent array."""
    def path_to_root(x):
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    pv, pw = path_to_root(v), path_to_root(w)
    sv, sw = set(pv), set(pw)
    meet = next(x for x in pv if x in sw)
    cycle = pv[:pv.index(meet) + 1] + list(reversed(pw[:pw.index(meet)]))
    return tuple(cycle)


# ----------------------------------------------------------------------
# volume
# ----------------------------------------------------------------------


def _face_facets(polytope, point_idx_set, dim):
    """Codimension-1 faces of a face, via tight facet rows."""
    pts = polytope.lattice_points
    out = {}
    for j, (row, off) in enumerate(zip(polytope.facet_normals,
                                       polytope.facet_offsets)):
        tight = frozenset(i for i in point_idx_set
                          if sum(r * x for r, x in zip(row, pts[i])) == -off)
        if tight and tight != frozenset(point_idx_set):
            if affine_rank([pts[i] for i in tight]) == dim - 1:
                out[tight] = True
    return list(out.keys())


def pulling_triangulation(polytope: LatticePolytope, pull="min") -> Triangulation:
    """Triangulation by recursively coning from an extreme point of each face."""
    pts = polytope.lattice_points
    n = polytope.dim
    if affine_rank(list(pts)) != n:
        raise NotFullDimensional("lattice points do not span the space")
    keyfun = (lambda i: pts[i]) if pull == "min" else (lambda i: tuple(-x for x in pts[i]))

    def rec(idx_set, dim):
        pts_here = sorted(idx_set, key=keyfun)
        apex = pts_here[0]
        if dim == 0:
            return [(apex,)]
        simplices = []
        for facet in _face_facets(polytope, idx_set, dim):
            if apex in facet:
                continue
            for sub in rec(facet, dim - 1):
                simplices.append((apex,) + sub)
        return simplices

    all_idx = frozenset(range(len(pts)))
    tri = Triangulation(tuple(rec(all_idx, n)))
    return _with_volumes(pts, tri)


def normalized_volume(polytope: LatticePolytope,
                      triangulation: Triangulation = None) -> int:
    """n! times the Euclidean volume, summed exactly over a triangulation."""
    if affine_rank(list(polytope.lattice_points)) != polytope.dim:
        raise NotFullDimensional("polytope is not full-dimensional")
    if triangulation is None:
        triangulation = pulling_triangulation(polytope)
    elif triangulation.simplex_volumes is None:
        triangulation = _with_volumes(polytope.lattice_points, triangulation)
    return sum(triangulation.simplex_volumes)


# ----------------------------------------------------------------------
# orientability checks
# ----------------------------------------------------------------------


def orientability_check(polytope: LatticePolytope) -> OrientabilityReport:
    """Mod-2 / Smith-normal-form orientability certificates."""
    pts = polytope.lattice_points
    n = polytope.dim
    base = pts[0]
    diffs = [[p[j] - base[j] for j in range(n)] for p in pts[1:]]
    snf_pts = smith_normal_form(diffs)
    affine_odd = len(snf_pts) == n and all(d % 2 == 1 for d in snf_pts)

    a_rows = [list(r) for r in polytope.facet_normals]
    snf_a = smith_normal_form(a_rows)
    col_odd = len(snf_a) == n and all(d % 2 == 1 for d in snf_a)

    ones = [1] * len(a_rows)
    ab_rows = [row + [off] for row, off in zip(a_rows, polytope.facet_offsets)]
    in_ab = gf2_in_column_span(ab_rows, ones)
    in_a = gf2_in_column_span(a_rows, ones)
    return OrientabilityReport(affine_odd, col_odd, in_ab, in_a)


# ----------------------------------------------------------------------
# regular subdivisions from liftings (used to build and check the
# built-in triangulations; every lattice point lifts to a vertex here)
# ----------------------------------------------------------------------


def subdivision_from_lifting(points, lifting, hull="lower"):
    """Maximal cells of the regular subdivision induced by a lifting.

    Enumerates supporting affine functions through (dim+1)-subsets; a cell
    is the full tight set of a function with all off values > 0 (lower
    hull) or < 0 (upper).  Cells are returned sorted, as tuples of point
    indices.
    """
    import itertools

    n = len(points[0])
    cells = {}
    for subset in itertools.combinations(range(len(points)), n + 1):
        pts = [points[i] for i in subset]
        if affine_rank(pts) != n:
            continue
        sol = solve_affine_exact(pts, [-lifting[i] for i in subset])
        if sol is None:
            continue
        coeffs, const = sol
        vals = [sum(c * x for c, x in zip(coeffs, p)) + const + lifting[i]
                for i, p in enumerate(points)]
        if hull == "lower" and all(v >= 0 for v in vals):
            cell = tuple(i for i, v in enumerate(vals) if v == 0)
            cells[cell] = True
        if hull == "upper" and all(v <= 0 for v in vals):
            cell = tuple(i for i, v in enumerate(vals) if v == 0)
            cells[cell] = True
    return sorted(cells.keys())


# ----------------------------------------------------------------------
# built-in polytopes
# ----------------------------------------------------------------------

_HEXAGON_POINTS = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2))
_HEXAGON_STATED_LIFTING = (3, 1, 1, 0, 1, 1, 3)

_BUILTIN_TABLE = {
    "hexagon": {
        "points": _HEXAGON_POINTS,
        "normals": ((0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0)),
        "offsets": (0, 1, 2, 2, 1, 0),
        # deformation exponents reproducing the deformed family verbatim;
        # the lifting that induces the triangulation below is
        # _HEXAGON_STATED_LIFTING (recorded separately)
        "lifting": (2, 1, 1, 0, 1, 1, 2),
        "folding": (0, 1, 2, 0, 2, 1, 0),
        "simplices": ((0, 1, 2), (1, 2, 3), (1, 3, 4), (2, 3, 5), (3, 4, 5),
                      (4, 5, 6)),
    },
    "triangle3": {
        "points": ((0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2),
                   (2, 0), (2, 1), (3, 0)),
        "normals": ((1, 0), (0, 1), (-1, -1)),
        "offsets": (0, 0, 3),
        "lifting": (3, 1, 1, 3, 1, 0, 1, 1, 1, 3),
        "folding": (0, 2, 1, 0, 1, 0, 2, 2, 1, 0),
        "simplices": None,  # induced by the lifting
    },
    "cube-unimodular": {
        "points": ((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0),
                   (1, 0, 1), (1, 1, 0), (1, 1, 1)),
        "normals": ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0),
                    (0, 0, -1)),
        "offsets": (0, 0, 0, 1, 1, 1),
        "lifting": (3, 1, 1, 0, 0, 1, 1, 3),
        "folding": (0, 3, 2, 0, 1, 2, 3, 1),
        "simplices": None,
    },
    "cube-nonunimodular": {
        "points": ((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0),
                   (1, 0, 1), (1, 1, 0), (1, 1, 1)),
        "normals": ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0),
                    (0, 0, -1)),
        "offsets": (0, 0, 0, 1, 1, 1),
        "lifting": (0, 1, 1, 0, 1, 0, 0, 1),
        "folding": (0, 3, 2, 1, 1, 2, 3, 0),
        "simplices": None,
    },
}

BUILTIN_NAMES = tuple(sorted(_BUILTIN_TABLE))

_builtin_cache = {}


def builtin_polytope(name):
    """(polytope, triangulation) for a named example polytope."""
    if name not in _BUILTIN_TABLE:
        raise KeyError(f"unknown builtin {name!r}; choose from {BUILTIN_NAMES}")
    if name in _builtin_cache:
        return _builtin_cache[name]
    spec = _BUILTIN_TABLE[name]
    poly = LatticePolytope(dim=len(spec["points"][0]),
                           lattice_points=tuple(spec["points"]),
                           facet_normals=tuple(spec["normals"]),
                           facet_offsets=tuple(spec["offsets"]),
                           name=name)
    simplices = spec["simplices"]
    if simplices is None:
        cells = subdivision_from_lifting(spec["points"], spec["lifting"])
        if any(len(c) != poly.dim + 1 for c in cells):
            raise ValueError(f"builtin {name}: lifting induces non-simplex cells")
        simplices = tuple(cells)
    tri = _with_volumes(spec["points"],
                        Triangulation(tuple(simplices), tuple(spec["lifting"]),
                                      tuple(spec["folding"])))
    _builtin_cache[name] = (poly, tri)
    return poly, tri


def hexagon_stated_lifting():
    """The corner-value-3 lifting recorded alongside the hexagon builtin."""
    return _HEXAGON_STATED_LIFTING
