"""Integer simplicial cochains: bases, cup products, restrictions.

Cochains are integer vectors over the canonical p-simplex list of a fixed
complex.  Products use the ordered front-face/back-face rule on the sorted
vertex order, so they are deterministic cochain-level operations; ring
statements (commutativity, vanishing) hold after projecting to a chosen
cohomology basis.
"""

from __future__ import annotations

from .algebra import (
    IntegerMatrix,
    boundary_matrix,
    chain_basis,
    smith_normal_form,
)
from .complexes import SimplicialMap
from .errors import IncompatibleCochainError, NotAnInclusionError


class CochainClass:
    """A cocycle with its coordinates in the degree's cohomology basis."""

    __slots__ = ("complex", "degree", "values", "coordinates")

    def __init__(self, complex_, degree, values, coordinates):
        self.complex = complex_
        self.degree = degree
        self.values = tuple(values)
        self.coordinates = tuple(coordinates)

    def value(self, simplex):
        basis = self.complex.simplices_of_dim(self.degree)
        try:
            return self.values[basis.index(tuple(simplex))]
        except ValueError:
            return 0

    def is_zero_class(self):
        return all(x == 0 for x in self.coordinates)

    def __repr__(self):
        return f"CochainClass(degree={self.degree}, coords={self.coordinates})"


def coboundary_matrix(c, p):
    return boundary_matrix(c, p + 1).transpose()


def is_cocycle(c, p, values):
    return all(x == 0 for x in coboundary_matrix(c, p).times_vector(list(values)))


def cochain_class(c, p, values):
    """Wrap raw cochain values, checking the cocycle condition."""
    values = list(values)
    if len(values) != len(c.simplices_of_dim(p)):
        raise IncompatibleCochainError("value vector has the wrong length")
    if not is_cocycle(c, p, values):
        raise IncompatibleCochainError("cochain is not a cocycle")
    coords = chain_basis(c, p, dual=True).project(values)
    return CochainClass(c, p, values, coords)


def cohomology_basis(c, p):
    """Cocycle representatives of a basis, plus the group they present.

    Free generators come first in SNF order, then torsion generators; the
    coordinates of the i-th representative are the i-th unit vector.
    """
    basis = chain_basis(c, p, dual=True)
    classes = []
    for i, gen in enumerate(basis.generators):
        coords = [0] * len(basis.orders)
        coords[i] = 1
        classes.append(CochainClass(c, p, gen, coords))
    return classes, basis.group(p)


def cup_product(a, b):
    """Front-face times back-face product on the sorted vertex order."""
    if a.complex != b.complex:
        raise IncompatibleCochainError("operands live on different complexes")
    c = a.complex
    p, q = a.degree, b.degree
    if p + q > c.dim:
        raise IncompatibleCochainError("degree sum exceeds the dimension")
    front = {s: v for s, v in zip(c.simplices_of_dim(p), a.values)}
    back = {s: v for s, v in zip(c.simplices_of_dim(q), b.values)}
    values = []
    for s in c.simplices_of_dim(p + q):
        values.append(front.get(s[: p + 1], 0) * back.get(s[p:], 0))
    return cochain_class(c, p + q, values)


def _sort_parity(items, key):
    order = sorted(range(len(items)), key=lambda i: key(items[i]))
    seen = [False] * len(order)
    sign = 1
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = order[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def restrict_class(a, inclusion):
    """Pull a class back along an injective simplicial map into its complex."""
    if inclusion.target != a.complex:
        raise NotAnInclusionError("map does not land in the class's complex")
    if not inclusion.is_injective():
        raise NotAnInclusionError("vertex assignment is not injective")
    sub = inclusion.source
    p = a.degree
    ambient = {s: v for s, v in zip(a.complex.simplices_of_dim(p), a.values)}
    key = a.complex._index
    values = []
    for t in sub.simplices_of_dim(p):
        images = [inclusion.assignment[v] for v in t]
        sign = _sort_parity(images, lambda v: key[v])
        values.append(sign * ambient[a.complex.sorted_tuple(images)])
    return cochain_class(sub, p, values)


def part_inclusion(sub, ambient):
    """Identity-on-vertices inclusion of an extracted subcomplex."""
    return SimplicialMap(sub, ambient, {v: v for v in sub.vertices})


def restrict_to_part(a, sub):
    """Restriction along a subcomplex that shares its simplex tuples."""
    return restrict_class(a, part_inclusion(sub, a.complex))


def restriction_columns(w, sub, p):
    """Coordinates in H^p(sub) of each basis class of H^p(w), restricted."""
    classes, _ = cohomology_basis(w, p)
    target = chain_basis(sub, p, dual=True)
    columns = []
    for cls in classes:
        restricted = restrict_to_part(cls, sub)
        columns.append(target.project(list(restricted.values)))
    return columns, target.orders


def map_rank(columns, dst_orders):
    """Rank of the induced map between free parts."""
    free_rows = [i for i, d in enumerate(dst_orders) if d == 0]
    if not columns or not free_rows:
        return 0
    mat = IntegerMatrix(
        len(free_rows), len(columns), [[col[i] for col in columns] for i in free_rows]
    )
    return smith_normal_form(mat, transforms=False).rank


def restriction_rank(w, sub, p):
    columns, orders = restriction_columns(w, sub, p)
    return map_rank(columns, orders)


def ring_report(c, max_degree=None):
    """Basis labels per degree and coordinates of every pairwise product."""
    top = c.dim if max_degree is None else min(max_degree, c.dim)
    bases = {}
    groups = {}
    for p in range(top + 1):
        bases[p], groups[p] = cohomology_basis(c, p)
    report = {
        "degrees": {
            p: {
                "rank": groups[p].rank,
                "torsion": list(groups[p].torsion),
                "basis": [f"h{p}_{i}" for i in range(len(bases[p]))],
            }
            for p in range(top + 1)
        },
        "products": [],
    }
    for p in range(top + 1):
        for q in range(p, top + 1 - p):
            for i, x in enumerate(bases[p]):
                for j, y in enumerate(bases[q]):
                    prod = cup_product(x, y)
                    report["products"].append(
                        {
                            "left": f"h{p}_{i}",
                            "right": f"h{q}_{j}",
                            "degree": p + q,
                            "coordinates": list(prod.coordinates),
                        }
                    )
    return report
