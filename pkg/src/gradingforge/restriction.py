"""Universal restriction of decompositions and the universal grid grading.

Restriction of decompositions of finitely generated abelian groups to
subgroups, restriction of gradings from a rational algebra to an order,
and the universal grid grading search over spectrum partitions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebras import (
    NotReduced,
    StructureAlgebra,
    is_reduced,
    spectrum,
    subset_projection,
    validate,
)
from .gradings import (
    GradingError,
    Grid,
    GridGrading,
    GroupPresentation,
    NotLoose,
    groupify,
    is_loose,
    universal_abelian,
    validate_grading,
)
from .linalg import (
    IntegerLattice,
    Matrix,
    det,
    lattice_contains,
    lattice_intersect,
    lattice_sum,
    rational_span_intersect_lattice,
)


class InvalidDecomposition(ValueError):
    pass


class ResourceCapExceeded(RuntimeError):
    pass


class NoLoosePartition(RuntimeError):
    pass


@dataclass
class DecompositionProblem:
    """A decomposition of A = Z^n / M_A Z^n and a subgroup to restrict to."""

    ambient_rank: int
    relations: Matrix              # M_A (zero matrix for a free group)
    components: list               # list of IntegerLattice generators
    subgroup: IntegerLattice

    def __post_init__(self):
        n = self.ambient_rank
        rel = IntegerLattice.from_matrix(self.relations) if \
            not self.relations.is_zero() else IntegerLattice.zero(n)
        self.rel_lattice = rel
        self.lifted = [lattice_sum(c, rel) for c in self.components]
        self.sub_lifted = lattice_sum(self.subgroup, rel)

    def validate(self):
        n = self.ambient_rank
        total = self.rel_lattice
        for c in self.lifted:
            total = lattice_sum(total, c)
        if total != IntegerLattice.full(n):
            raise InvalidDecomposition("components do not span the group")
        for i, c in enumerate(self.lifted):
            others = self.rel_lattice
            for j, d in enumerate(self.lifted):
                if j != i:
                    others = lattice_sum(others, d)
            meet = lattice_intersect(c, others)
            if not lattice_contains(meet, self.rel_lattice):
                raise InvalidDecomposition(
                    "component %d is not independent of the rest" % i)


@dataclass
class UniversalMap:
    source_size: int
    assignment: dict      # source index -> class index
    classes: list         # list of sorted source-index tuples
    certificates: list    # merged supports, in merge order

    def __call__(self, i):
        return self.assignment[i]


def _restricts(B: IntegerLattice, parts):
    """Does the (lifted) decomposition restrict to B: B = sum (B n A_i)?"""
    n = B.ambient
    total = IntegerLattice.zero(n)
    for lat in parts:
        total = lattice_sum(total, lattice_intersect(B, lat))
    return total == B


def _bad(B, parts, subset):
    """B n sum_{j in T} A_j  not contained in  sum_{j in T} (B n A_j)."""
    n = B.ambient
    span = IntegerLattice.zero(n)
    inner = IntegerLattice.zero(n)
    for j in subset:
        span = lattice_sum(span, parts[j])
        inner = lattice_sum(inner, lattice_intersect(B, parts[j]))
    meet = lattice_intersect(B, span)
    return not lattice_contains(meet, inner)


def universal_restriction(problem: DecompositionProblem):
    """Universal index map u with u_* of the decomposition restricting to B.

    Returns (UniversalMap, restricted components as IntegerLattices).
    Implements the subset-minimality loop; when no proper subset stays bad
    the whole current index set is itself the minimal bad support and is
    merged (the termination test is the explicit restriction check).
    """
    problem.validate()
    B = problem.sub_lifted
    classes = [(i,) for i in range(len(problem.components))]
    parts = list(problem.lifted)
    certificates = []
    while True:
        if _restricts(B, parts):
            break
        S = list(range(len(parts)))
        for i in range(len(parts)):
            T = [j for j in S if j != i]
            if T and _bad(B, parts, T):
                S = T
        assert _bad(B, parts, S), "minimal bad set extraction failed"
        certificates.append(tuple(sorted(
            idx for j in S for idx in classes[j])))
        merged_lat = IntegerLattice.zero(problem.ambient_rank)
        merged_idx = []
        for j in S:
            merged_lat = lattice_sum(merged_lat, parts[j])
            merged_idx.extend(classes[j])
        keep = [j for j in range(len(parts)) if j not in S]
        parts = [parts[j] for j in keep] + [merged_lat]
        classes = [classes[j] for j in keep] + [tuple(sorted(merged_idx))]
    classes = sorted(classes)
    assignment = {}
    for cidx, cls in enumerate(classes):
        for i in cls:
            assignment[i] = cidx
    restricted = []
    for cls in classes:
        span = problem.rel_lattice
        for i in cls:
            span = lattice_sum(span, problem.lifted[i])
        restricted.append(lattice_intersect(B, span))
    umap = UniversalMap(len(problem.components), assignment, classes,
                        certificates)
    return umap, restricted


def restrict_grading(R: StructureAlgebra, grading: GridGrading):
    """Universal restriction of a loose grading of E = R tensor Q to R.

    R is the order in its own coordinates (the standard lattice Z^n); the
    grading components are rational spans stored as saturated lattices.
    Returns (index map dict grid-element -> class label, GridGrading of R).
    """
    if R.base != "Z":
        raise GradingError("restriction target must be an order over Z")
    if not is_loose(grading):
        raise NotLoose("restriction requires a loose grading")
    n = R.rank
    E = R.rational()
    elements = list(grading.grid.elements)
    sats = [grading.components[g] for g in elements]
    # change basis so the sum of the integral components becomes Z^n
    T = Matrix.from_cols(
        [b for lat in sats for b in lat.basis], nrows=n)
    d = abs(det(T))
    if d == 0:
        raise GradingError("grading components do not span the algebra")
    Tinv = T.inverse()
    comp_cols = []
    off = 0
    for lat in sats:
        cols = []
        for b in lat.basis:
            v = [Fraction(0)] * n
            v[off] = Fraction(1)
            cols.append([int(x) for x in v])
            off += 1
        comp_cols.append(cols)
    # dR in the new coordinates: columns d * Tinv
    B_cols = [[x * d for x in Tinv.col(j)] for j in range(n)]
    B = IntegerLattice(n, [[int(x) for x in col] for col in B_cols])
    problem = DecompositionProblem(
        n, Matrix.zero(n, n),
        [IntegerLattice(n, cols) for cols in comp_cols], B)
    umap, _ = universal_restriction(problem)

    # components of R: (rational span of the class) n Z^n, in R coordinates
    merged = []
    for cls in umap.classes:
        cols = [b for i in cls for b in sats[i].basis]
        merged.append(rational_span_intersect_lattice(cols, n))

    # product graph: vertices are classes, edges join classes meeting the
    # projection of some product module T_a * T_b
    k = len(merged)
    basis_all = Matrix.from_cols([b for lat in merged for b in lat.basis],
                                 nrows=n)
    inv_all = basis_all.inverse()
    offsets = []
    off = 0
    for lat in merged:
        offsets.append((off, off + lat.rank()))
        off += lat.rank()

    def support_of(vec):
        coords = inv_all.apply(vec)
        supp = set()
        for c, (lo, hi) in enumerate(offsets):
            if any(coords[t] != 0 for t in range(lo, hi)):
                supp.add(c)
        return supp

    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    prod_support = {}
    for a in range(k):
        for b in range(a, k):
            supp = set()
            for x in merged[a].basis:
                for y in merged[b].basis:
                    supp |= support_of(R.mul(x, y))
            prod_support[(a, b)] = supp
            for i in supp:
                for j in supp:
                    union(i, j)

    final_classes = {}
    for c in range(k):
        final_classes.setdefault(find(c), []).append(c)
    final_list = sorted(tuple(v) for v in final_classes.values())
    comps = []
    for cls in final_list:
        lat = IntegerLattice.zero(n)
        for c in cls:
            lat = lattice_sum(lat, merged[c])
        comps.append(lat)

    # read off the grid structure
    unit_idx = next(i for i, lat in enumerate(comps)
                    if _unit_in(lat, R))
    labels = []
    counter = 1
    for i in range(len(comps)):
        if i == unit_idx:
            labels.append("1")
        else:
            labels.append("g%d" % counter)
            counter += 1
    inv_final = Matrix.from_cols([b for lat in comps for b in lat.basis],
                                 nrows=n).inverse()
    offs2 = []
    off = 0
    for lat in comps:
        offs2.append((off, off + lat.rank()))
        off += lat.rank()

    def support2(vec):
        coords = inv_final.apply(vec)
        return {c for c, (lo, hi) in enumerate(offs2)
                if any(coords[t] != 0 for t in range(lo, hi))}

    products = {}
    for a in range(len(comps)):
        for b in range(len(comps)):
            supp = set()
            for x in comps[a].basis:
                for y in comps[b].basis:
                    supp |= support2(R.mul(x, y))
            if len(supp) > 1:
                raise GradingError("restriction did not produce a pre-grading")
            if supp:
                products[(labels[a], labels[b])] = labels[supp.pop()]
    grid = Grid(tuple(labels), "1", products)
    out = GridGrading(R, grid, {labels[i]: comps[i]
                                for i in range(len(comps))})
    validate_grading(out)
    if not is_loose(out):
        raise AssertionError("restricted grading is not loose")
    index_map = {}
    for i, g in enumerate(elements):
        mclass = umap.assignment[i]
        final = next(fi for fi, cls in enumerate(final_list)
                     if mclass in cls)
        index_map[g] = labels[final]
    return index_map, out


def _unit_in(lat: IntegerLattice, R: StructureAlgebra):
    u = [Fraction(x) for x in R.unit]
    if any(x.denominator != 1 for x in u):
        return False
    return lat.contains_vector([int(x) for x in u])


def universal_grid(R: StructureAlgebra, max_spec=7):
    """The universal grid grading of a reduced order, with its presentation.

    Scans all partitions of the spectrum whose blockwise universal abelian
    gradings are loose, takes the coproduct, restricts to R, and keeps a
    grading with the most homogeneous components (ties: lexicographically
    least partition).
    Returns (GridGrading, GroupPresentation, index map from groupify,
    chosen partition).
    """
    if R.base != "Z":
        raise GradingError("universal_grid expects an order over Z")
    validate(R)
    E = R.rational()
    if not is_reduced(E):
        raise NotReduced("universal gradings require a reduced order")
    spec = spectrum(E)
    m = len(spec)
    if m > max_spec:
        raise ResourceCapExceeded(
            "spectrum has %d points; the partition scan is capped at %d"
            % (m, max_spec))
    n = R.rank
    ident = Matrix.identity(n)

    subset_data = {}
    for size in range(1, m + 1):
        for P in itertools.combinations(range(m), size):
            E_P, proj, RP_basis, RP = subset_projection(E, spec, ident, P)
            A_P = universal_abelian(RP)
            # grading of E_P: spans of the components through the R_P basis
            comps = {}
            for g in A_P.grid.elements:
                lat = A_P.components[g]
                cols = [RP_basis.apply(b) for b in lat.basis]
                comps[g] = rational_span_intersect_lattice(cols, E_P.rank)
            EP_grading = GridGrading(E_P, A_P.grid, comps)
            subset_data[P] = (E_P, proj, EP_grading, is_loose(EP_grading))

    from .xe import set_partitions
    best = None
    for part in set_partitions(list(range(m))):
        blocks = tuple(sorted(tuple(sorted(b)) for b in part))
        if not all(subset_data[b][3] for b in blocks):
            continue
        coproduct = _coproduct_on_algebra(R, E, spec, subset_data, blocks)
        index_map, restricted = restrict_grading(R, coproduct)
        key = (-restricted.nonzero_count(), blocks)
        if best is None or key < best[0]:
            best = (key, restricted, blocks)
    if best is None:
        raise NoLoosePartition("no partition with loose blockwise gradings")
    _, grading, blocks = best
    presentation, index_map = groupify(grading.grid)
    return grading, presentation, index_map, blocks


def _coproduct_on_algebra(R, E, spec, subset_data, blocks):
    """Coproduct of the blockwise gradings, with components in E coords."""
    n = E.rank
    elements = ["1"]
    components = {}
    unit_lat = IntegerLattice.zero(n)
    for b in blocks:
        E_P, proj, EPg, _ = subset_data[b]
        lift_cols = _lift_matrix(spec, b)
        for g in EPg.grid.elements:
            cols = [lift_cols.apply(v) for v in EPg.components[g].basis]
            lat = rational_span_intersect_lattice(cols, n)
            if g == EPg.grid.unit:
                unit_lat = lattice_sum(unit_lat, lat)
            else:
                label = (b, g)
                elements.append(label)
                components[label] = lat
    components["1"] = unit_lat
    products = {}
    for b in blocks:
        EPg = subset_data[b][2]
        for (g, h), gh in EPg.grid.products.items():
            if g == EPg.grid.unit or h == EPg.grid.unit:
                continue
            if gh == EPg.grid.unit:
                products[((b, g), (b, h))] = "1"
            else:
                products[((b, g), (b, h))] = (b, gh)
    grid = Grid(tuple(elements), "1", products)
    out = GridGrading(R.rational(), grid, components)
    validate_grading(out)
    return out


def _lift_matrix(spec, block):
    """Matrix assembling E-coordinates from E_P coordinates (P = block)."""
    secs = [spec.sections[i] for i in block]
    M = secs[0]
    for S in secs[1:]:
        M = M.hstack(S)
    return M
