"""Branched surface models: flap and double attachments, bouquets,
local-structure checking, and the elementary-collapse engine.

A branched model is a complex together with its declared branch loci.
Tripod-type loci are curves along which three sheets meet; collar-type loci
have a one-sided product neighborhood.  The builders here only ever create
tripod loci with trivial monodromy; swap monodromy is representable and
recognized by the link check but no constructor emits it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .complexes import (
    SimplicialComplex,
    _mirror_copy,
    boundary_subcomplex,
    from_facets,
    link,
    product,
    union_on,
)
from .errors import (
    BadBasepointError,
    InvalidBranchLocusError,
    InvalidSubmanifoldError,
    NotManifoldLikeError,
)
from .graphs import classify_link


@dataclass(frozen=True)
class BranchLocus:
    name: str
    kind: str  # "collar" | "tripod"
    monodromy: str  # "trivial" | "swap"


class BranchedModel:
    """A complex with annotated branch loci and any carried collapse proofs."""

    __slots__ = ("complex", "loci", "certificates")

    def __init__(self, complex_, loci=(), certificates=()):
        self.complex = complex_
        self.loci = tuple(loci)
        self.certificates = tuple(certificates)
        for locus in self.loci:
            complex_.named_part(locus.name)

    def locus_vertices(self):
        out = set()
        for locus in self.loci:
            out |= {v for s in self.complex.named_part(locus.name) for v in s}
        return out

    def regular_part(self):
        """Subcomplex supported away from every locus."""
        off = set(self.complex.vertices) - self.locus_vertices()
        return self.complex.full_subcomplex(off)

    def to_json(self):
        from .complexes import complex_to_json

        data = complex_to_json(self.complex)
        data["branch_loci"] = [
            {"name": l.name, "kind": l.kind, "monodromy": l.monodromy}
            for l in self.loci
        ]
        return data

    def __repr__(self):
        return f"BranchedModel({self.complex!r}, loci={[l.name for l in self.loci]})"


def as_model(x):
    if isinstance(x, BranchedModel):
        return x
    return BranchedModel(x)


# ---------------------------------------------------------------------------
# attachments
# ---------------------------------------------------------------------------


def _check_flap_locus(base, sigma_name, taken):
    sigma = base.named_part(sigma_name)
    if not sigma:
        raise InvalidBranchLocusError(f"{sigma_name!r} is empty")
    d = base.dim
    dims = {len(s) - 1 for s in sigma}
    if max(dims) != d - 1:
        raise InvalidBranchLocusError(f"{sigma_name!r} is not codimension one")
    sub = base.subcomplex(sigma_name)
    if any(len(f) - 1 != d - 1 for f in sub.facets()):
        raise InvalidBranchLocusError(f"{sigma_name!r} is not pure")
    if boundary_subcomplex(sub).simplices:
        raise InvalidBranchLocusError(f"{sigma_name!r} has boundary")
    if any(not sigma.isdisjoint(base.named_part(t)) for t in taken):
        raise InvalidBranchLocusError(f"{sigma_name!r} meets an existing locus")
    # the locus must be interior and two-sided: each top simplex of sigma
    # sits in exactly two top simplices of the ambient complex
    tops = base.simplices_of_dim(d)
    for f in sub.facets():
        owners = sum(1 for t in tops if set(f) <= set(t))
        if owners != 2:
            raise InvalidBranchLocusError(
                f"{sigma_name!r} has no product neighborhood at {f!r}"
            )
    return sub


def attach_flap(x, sigma_name, seed=0):
    """Glue sigma x [0,1] onto the model along sigma; sigma becomes a tripod locus.

    The result carries a collapse certificate back onto the input complex.
    """
    model = as_model(x)
    base = model.complex
    sub = _check_flap_locus(base, sigma_name, [l.name for l in model.loci])
    prism, _, _ = product(sub, from_facets([[0, 1]]))
    prism = prism.relabeled(
        lambda p: p[0] if p[1] == 0 else ("flap", sigma_name, p[0])
    )
    new_vertices = [v for v in prism.vertices if v not in base._index]
    named = dict(base.named)
    out = union_on(
        list(base.vertices) + new_vertices, base.simplices, prism.simplices, named=named
    )
    cert = collapse_to(out, base.simplices, seed=seed)
    assert isinstance(cert, CollapseCertificate), "flap failed to collapse onto base"
    loci = model.loci + (BranchLocus(sigma_name, "tripod", "trivial"),)
    certificates = model.certificates + ((sigma_name, cert),)
    return BranchedModel(out, loci, certificates)


def attach_double(x, names):
    """Glue a mirror copy of each named full-dimensional piece along its rim.

    Installs the cover names "X", "Y_j", "DY_j" (with union names "Y", "DY")
    so the output satisfies X | DY = everything and X & DY_j = Y_j exactly,
    ready for a Mayer-Vietoris check.  Each rim becomes a tripod locus.
    """
    if isinstance(names, str):
        names = [names]
    model = as_model(x)
    base = model.complex
    d = base.dim
    boundary_x = boundary_subcomplex(base).simplices
    parts = []
    for name in names:
        part = base.named_part(name)
        if not part or part == base.simplices:
            raise InvalidSubmanifoldError(f"{name!r} must be a proper nonempty piece")
        sub = base.subcomplex(name)
        if sub.dim != d or any(len(f) - 1 != d for f in sub.facets()):
            raise InvalidSubmanifoldError(f"{name!r} is not full-dimensional")
        try:
            rim = boundary_subcomplex(sub).simplices
        except NotManifoldLikeError as exc:
            raise InvalidSubmanifoldError(f"{name!r}: {exc}") from exc
        if not rim:
            raise InvalidSubmanifoldError(f"{name!r} has empty rim; nothing to double")
        if rim & boundary_x:
            raise InvalidSubmanifoldError(f"{name!r} touches the ambient boundary")
        parts.append((name, sub, rim))
    for (n1, s1, _), (n2, s2, _) in itertools.combinations(parts, 2):
        if not s1.simplices.isdisjoint(s2.simplices):
            raise InvalidSubmanifoldError(f"{n1!r} and {n2!r} overlap")

    vertices = list(base.vertices)
    simplex_sets = [base.simplices]
    named = dict(base.named)
    named["X"] = base.simplices
    union_y = set()
    union_dy = set()
    loci = list(model.loci)
    for j, (name, sub, rim) in enumerate(parts, start=1):
        mirror = _mirror_copy(sub, rim, f"m:{name}")
        vertices += [v for v in mirror.vertices if v not in base._index]
        simplex_sets.append(mirror.simplices)
        named[f"Y_{j}"] = sub.simplices
        named[f"DY_{j}"] = sub.simplices | mirror.simplices
        named[f"seam_{j}"] = rim
        union_y |= sub.simplices
        union_dy |= sub.simplices | mirror.simplices
        loci.append(BranchLocus(f"seam_{j}", "tripod", "trivial"))
    named["Y"] = frozenset(union_y)
    named["DY"] = frozenset(union_dy)
    out = union_on(vertices, *simplex_sets, named=named)
    for j in range(1, len(parts) + 1):
        assert out.named_part("X") & out.named_part(f"DY_{j}") == out.named_part(
            f"Y_{j}"
        ), "cover intersection is not the doubled piece"
    assert out.named_part("X") | out.named_part("DY") == out.simplices
    return BranchedModel(out, loci, model.certificates)


def bouquet(models, basepoints):
    """One-point union of models; loci keep their data under tagged names."""
    models = [as_model(m) for m in models]
    if len(models) != len(basepoints) or not models:
        raise BadBasepointError("one basepoint per model is required")
    for m, bp in zip(models, basepoints):
        if (bp,) not in m.complex.simplices:
            raise BadBasepointError(f"{bp!r} is not a vertex")
        if bp in m.locus_vertices():
            raise BadBasepointError(f"{bp!r} sits on a branch locus")
    joint = (0, basepoints[0])
    vertices = []
    simplex_sets = []
    named = {}
    loci = []
    for i, (m, bp) in enumerate(zip(models, basepoints)):
        tagged = m.complex.relabeled(
            lambda v, i=i, bp=bp: joint if v == bp else (i, v)
        )
        vertices += [v for v in tagged.vertices if v != joint or i == 0]
        simplex_sets.append(tagged.simplices)
        for n, part in tagged.named.items():
            named[f"{i}:{n}"] = part
        for locus in m.loci:
            loci.append(BranchLocus(f"{i}:{locus.name}", locus.kind, locus.monodromy))
    out = union_on(vertices, *simplex_sets, named=named)
    return BranchedModel(out, loci)


# ---------------------------------------------------------------------------
# local structure checking (dimension two)
# ---------------------------------------------------------------------------


_KIND_TO_TYPES = {
    ("tripod", "trivial"): {"theta"},
    ("tripod", "swap"): {"figure8"},
    ("collar", "trivial"): {"arc"},
    ("collar", "swap"): {"arc"},
}


def check_local_structure_dim2(model):
    """Classify every vertex link against the branched-surface catalog.

    Passes when every link is a circle (regular point), an arc (boundary or
    collar locus), or the theta graph (tripod locus with trivial monodromy;
    the figure eight is the swap counterpart), and the declared loci agree
    with the observed types.  Returns a report, never raises for a bad link.
    """
    c = model.complex
    if c.dim != 2:
        raise ValueError("local structure checking works in dimension two only")
    vertex_kind = {}
    for locus in model.loci:
        for s in c.named_part(locus.name):
            for v in s:
                vertex_kind[v] = (locus.kind, locus.monodromy)
    counts = {}
    violations = []
    for v in c.vertices:
        t = classify_link(link(c, (v,)))
        counts[t] = counts.get(t, 0) + 1
        if v in vertex_kind:
            allowed = _KIND_TO_TYPES[vertex_kind[v]]
            if t not in allowed:
                violations.append(
                    {"vertex": c.vertex_label(v), "link": t, "expected": sorted(allowed)}
                )
        else:
            if t not in ("circle", "arc"):
                violations.append(
                    {"vertex": c.vertex_label(v), "link": t, "expected": ["circle", "arc"]}
                )
    return {"pass": not violations, "counts": counts, "violations": violations}


# ---------------------------------------------------------------------------
# elementary collapses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CollapseCertificate:
    """Replayable sequence of (free face, coface) removals."""

    steps: tuple
    target: str  # "point" or "subcomplex"
    seed: int
    restarts_used: int


@dataclass(frozen=True)
class CollapseFailure:
    restarts: int
    budget: int
    reason: str = "inconclusive"


def _coface_table(simplices):
    table = {s: set() for s in simplices}
    for s in simplices:
        if len(s) > 1:
            for k in range(1, len(s)):
                for f in itertools.combinations(s, k):
                    table[f].add(s)
    return table


def _greedy_collapse(simplices, protected, point_goal, rng, budget, sort_key):
    alive = set(simplices)
    cofaces = _coface_table(simplices)
    by_dim = {}

    def consider(f):
        if f in protected or f not in alive:
            return
        cf = cofaces[f]
        if len(cf) == 1 and next(iter(cf)) not in protected:
            by_dim.setdefault(len(f) - 1, set()).add(f)

    for f in alive:
        consider(f)
    steps = []
    done = 0
    while done < budget:
        free = None
        for d in sorted(by_dim, reverse=True):
            pool = by_dim[d]
            while pool:
                # lazy validation of staged candidates
                candidates = sorted(pool, key=sort_key)
                f = candidates[rng.randrange(len(candidates))]
                if f in alive and len(cofaces[f]) == 1:
                    tau = next(iter(cofaces[f]))
                    if tau not in protected:
                        free = (f, tau)
                        break
                pool.discard(f)
            if free:
                break
            by_dim.pop(d, None)
        if free is None:
            break
        f, tau = free
        by_dim[len(f) - 1].discard(f)
        for gone in (tau, f):
            alive.discard(gone)
            for k in range(1, len(gone)):
                for g in itertools.combinations(gone, k):
                    if g in cofaces:
                        cofaces[g].discard(tau)
                        cofaces[g].discard(f)
                        consider(g)
        steps.append((f, tau))
        done += 1
        if point_goal:
            if len(alive) == 1 and len(next(iter(alive))) == 1:
                return steps, alive
        elif alive == protected:
            return steps, alive
    return None, alive


def collapse_to(c, target, seed=0, restarts=32, budget=10**6):
    """Greedy free-face search with random restarts.

    `target` is a subcomplex (complex, or set of simplices) or the string
    "point".  Success returns a replayable certificate; running out of
    free faces or budget is inconclusive, not a refutation.
    """
    if isinstance(target, str):
        if target != "point":
            raise ValueError("target must be a subcomplex or 'point'")
        protected = frozenset()
        point_goal = True
    else:
        part = target.simplices if isinstance(target, SimplicialComplex) else frozenset(target)
        if not part <= c.simplices:
            raise ValueError("target is not a subcomplex")
        protected = frozenset(part)
        point_goal = False
    if not point_goal and protected == c.simplices:
        return CollapseCertificate((), "subcomplex", seed, 0)
    for attempt in range(max(1, restarts)):
        rng = random.Random(seed + attempt)
        steps, _ = _greedy_collapse(
            c.simplices, protected, point_goal, rng, budget, c.sort_key
        )
        if steps is not None:
            return CollapseCertificate(
                tuple(steps), "point" if point_goal else "subcomplex", seed + attempt, attempt
            )
    return CollapseFailure(restarts, budget)


def replay_certificate(c, certificate):
    """Re-run the steps, checking the free-face condition at every stage."""
    alive = set(c.simplices)
    cofaces = _coface_table(c.simplices)
    for f, tau in certificate.steps:
        assert f in alive and tau in alive, "stale step"
        assert cofaces[f] == {tau}, "face is not free at this stage"
        for gone in (tau, f):
            alive.discard(gone)
            for k in range(1, len(gone)):
                for g in itertools.combinations(gone, k):
                    if g in cofaces:
                        cofaces[g].discard(gone)
    return frozenset(alive)
