"""Nef partitions, Cayley polytopes and divisor-level models of a scaffolding.

A nef partition splits the vertices of a reflexive polytope into groups whose
indicator divisors are piecewise linear on the spanning fan; the section
polytopes of the groups then Minkowski-sum to the dual polytope.  The same
idea on the ambient side splits the rays of a complete fan into a base part
and spanning parts whose union generates a Gorenstein cone.  This module
checks both notions, builds Cayley polytopes, and follows a scaffolding's
divisor-level model through a chain of mutations down to the hull of its
ambient rays.
"""

from itertools import product

from .errors import DomainError
from .exact import dot, integer_solution, kernel_basis, solve_linear, transpose, vsub
from .inversion import ambient_rays
from .mutations import mutate_polytope
from .polyhedra import Cone, Polytope, lattice_isomorphic, spanning_fan
from .scaffolding import product_structure, strut_polytope
from .toric import PLFunction, git_to_stacky_fan, is_ample, is_nef, sections_polytope


# ---------------------------------------------------------------------------
# nef partitions of a reflexive polytope
# ---------------------------------------------------------------------------

def check_nef_partition(delta, parts):
    """Check a partition of a reflexive polytope's vertices for nef-ness.

    Each part induces the divisor with coefficient one on its vertices' rays
    and zero elsewhere.  The report records whether all the indicator
    functions are piecewise linear on the spanning fan, the section polytopes
    of the parts, whether those Minkowski-sum to the dual polytope, and a
    tuple of integral sections summing to zero (or None).  The partition is
    valid when the functions exist, the sum recovers the dual, and the
    sections are found.
    """
    if not delta.is_reflexive():
        raise DomainError("not_reflexive", "nef partitions need a reflexive polytope")
    parts = tuple(tuple(int(i) for i in p) for p in parts)
    nverts = len(delta.vertices)
    seen = set()
    for part in parts:
        for i in part:
            if not 0 <= i < nverts or i in seen:
                raise DomainError(
                    "bad_partition", "parts must partition the vertex indices"
                )
            seen.add(i)
    if not parts or any(not p for p in parts) or len(seen) != nverts:
        raise DomainError("bad_partition", "parts must partition the vertex indices")
    fan = spanning_fan(delta)
    indicators = []
    for part in parts:
        coeffs = [0] * len(fan.rays)
        for i in part:
            coeffs[fan.ray_index(delta.vertices[i])] = 1
        indicators.append(tuple(coeffs))
    pl_ok = True
    cartier = True
    for coeffs in indicators:
        try:
            phi = PLFunction(fan, coeffs)
        except DomainError as err:
            if err.kind != "not_q_cartier":
                raise
            pl_ok = False
            cartier = False
            continue
        cartier = cartier and phi.is_cartier()
    nablas = tuple(sections_polytope(fan, coeffs) for coeffs in indicators)
    total = nablas[0]
    for nabla in nablas[1:]:
        total = total.minkowski_sum(nabla)
    minkowski_ok = total == delta.dual()
    points = None
    for combo in product(*[nabla.integral_points() for nabla in nablas]):
        if all(s == 0 for s in map(sum, zip(*combo))):
            points = combo
            break
    valid = pl_ok and minkowski_ok and points is not None
    return {
        "pl_ok": pl_ok,
        "cartier": cartier,
        "nablas": nablas,
        "minkowski_ok": minkowski_ok,
        "points": points,
        "valid": valid,
    }


# ---------------------------------------------------------------------------
# ray partitions of a complete fan
# ---------------------------------------------------------------------------

class FanoNefPartition:
    """A partition of a fan's rays into a base part and spanning parts.

    The fan may be an ordinary or a stacky fan; the parts index into its ray
    tuple and must cover every index exactly once.  The base part may be
    empty, the spanning parts may not.
    """

    __slots__ = ("fan", "e_parts", "f_part")

    def __init__(self, fan, e_parts, f_part):
        e_parts = tuple(tuple(int(i) for i in p) for p in e_parts)
        f_part = tuple(int(i) for i in f_part)
        nrays = len(fan.rays)
        seen = set()
        for p in e_parts + (f_part,):
            for i in p:
                if not 0 <= i < nrays or i in seen:
                    raise DomainError(
                        "bad_partition", "parts must partition the ray indices"
                    )
                seen.add(i)
        if not e_parts or any(not p for p in e_parts) or len(seen) != nrays:
            raise DomainError("bad_partition", "parts must partition the ray indices")
        self.fan = fan
        self.e_parts = e_parts
        self.f_part = f_part

    def __repr__(self):
        return "FanoNefPartition(e_parts=%r, f_part=%r)" % (self.e_parts, self.f_part)


def fano_nef_partition_from_inversion(inv):
    """Read the ray partition off an inversion whose shape is a product.

    The strut and shift columns form the base part; each projective factor of
    the shape contributes its block of ray columns as one spanning part.
    """
    if inv.recovered is None:
        raise DomainError(
            "unsupported_shape", "shape is not a product of projective spaces"
        )
    fan = git_to_stacky_fan(inv.git)
    f_part = tuple(inv.recovered.B) + tuple(inv.recovered.U)
    return FanoNefPartition(fan, inv.recovered.S, f_part)


def _all_fan_cones(fan_like):
    """Every cone of the fan: the maximal ones and all of their faces."""
    queue = [
        Cone.from_rays([fan_like.rays[i] for i in c], dim=fan_like.dim)
        for c in fan_like.max_cones
    ]
    out = set()
    while queue:
        cone = queue.pop()
        if cone in out:
            continue
        out.add(cone)
        queue.extend(cone.facet_cones())
    return out


def check_fano_nef_partition(fnp):
    """Ampleness, nef-ness and the Gorenstein condition for a ray partition.

    The base part must carry an ample divisor, each spanning part a nef one,
    and the union of the spanning parts' rays must generate a cone of the fan
    whose generators lie on an integral affine hyperplane at height one.
    """
    fan = fnp.fan
    nrays = len(fan.rays)

    def divisor_check(check, indices):
        coeffs = [0] * nrays
        for i in indices:
            coeffs[i] = 1
        try:
            return check(fan, coeffs)
        except DomainError as err:
            if err.kind != "not_q_cartier":
                raise
            return False

    ample_base = divisor_check(is_ample, fnp.f_part)
    nef_parts = tuple(divisor_check(is_nef, p) for p in fnp.e_parts)
    spanning = [i for p in fnp.e_parts for i in p]
    sigma = Cone.from_rays([fan.rays[i] for i in spanning], dim=fan.dim)
    in_fan = sigma in _all_fan_cones(fan)
    level = None
    if sigma.is_pointed() and sigma.rays:
        level = integer_solution(sigma.rays, (1,) * len(sigma.rays))
    gorenstein = in_fan and level is not None
    valid = ample_base and all(nef_parts) and gorenstein
    return {
        "ample_base": ample_base,
        "nef_parts": nef_parts,
        "gorenstein_cone": gorenstein,
        "valid": valid,
    }


# ---------------------------------------------------------------------------
# Cayley polytopes
# ---------------------------------------------------------------------------

def cayley(polytopes):
    """Cayley polytope and cone of a tuple of polytopes in a common space.

    Each polytope is tagged with its own unit vector in as many extra
    coordinates as there are polytopes; the polytope is the hull of the
    tagged vertices and the cone is generated by them.
    """
    polys = tuple(polytopes)
    if not polys:
        raise DomainError("dimension_unknown", "at least one polytope required")
    n = polys[0].dim
    if any(p.dim != n for p in polys):
        raise DomainError("dimension_mismatch", "polytopes live in different spaces")
    r = len(polys)
    points = []
    for i, p in enumerate(polys):
        tag = tuple(1 if k == i else 0 for k in range(r))
        for v in p.vertices:
            points.append(tuple(v) + tag)
    poly = Polytope.from_points(points)
    cone = Cone.from_rays(points, dim=n + r)
    return poly, cone


def _full_dim_model(polytope):
    """Rewrite a lattice polytope in coordinates on its own affine lattice."""
    if polytope.is_full_dimensional():
        return polytope
    base = tuple(int(c) for c in polytope.vertices[0])
    diffs = [tuple(int(c) for c in vsub(v, base)) for v in polytope.vertices[1:]]
    normals = kernel_basis(diffs, ncols=polytope.dim)
    basis = kernel_basis(normals, ncols=polytope.dim)
    coords = []
    for v in polytope.vertices:
        coords.append(solve_linear(transpose(basis), vsub(v, base)))
    return Polytope.from_points(coords)


def is_gorenstein(polytope, index):
    """Whether the index-th dilate is reflexive in the polytope's own lattice.

    The dilate must be a lattice polytope with a single interior lattice
    point, and translating that point to the origin must leave a reflexive
    polytope.  Lower dimensional polytopes are measured inside the lattice of
    their affine span.
    """
    index = int(index)
    if index < 1:
        raise DomainError("bad_index", "index must be a positive integer")
    q = polytope.dilate(index)
    if not q.is_lattice():
        return False
    model = _full_dim_model(q)
    inner = model.interior_lattice_points()
    if len(inner) != 1:
        return False
    shift = tuple(-int(c) for c in inner[0])
    return model.translate(shift).is_reflexive()


# ---------------------------------------------------------------------------
# divisor-level models of a scaffolding
# ---------------------------------------------------------------------------

def _ray_relations(shape):
    """Canonical basis of the integer relations among the shape's rays."""
    rays = tuple(tuple(int(c) for c in r) for r in shape.rays)
    return kernel_basis(transpose(rays), ncols=len(rays))


def p_tilde(scaf, r_vectors=None):
    """Hull of the strut pieces, each placed at a height in an extra factor.

    The default height of a strut is minus its divisor class, written in the
    canonical basis of ray relations of the shape.  Explicit integer height
    vectors, one per strut and all of one length, may be given instead.
    Struts whose sections are empty contribute no points.
    """
    if r_vectors is None:
        rel = _ray_relations(scaf.shape)
        heights = [
            tuple(-dot(row, s.coeffs) for row in rel) for s in scaf.struts
        ]
    else:
        heights = [tuple(int(c) for c in v) for v in r_vectors]
        if len(heights) != len(scaf.struts):
            raise DomainError("dimension_mismatch", "one height vector per strut")
        if len({len(h) for h in heights}) > 1:
            raise DomainError("dimension_mismatch", "height vectors of mixed lengths")
    points = []
    for s, height in enumerate(heights):
        try:
            piece = strut_polytope(scaf, s)
        except DomainError as err:
            if err.kind != "empty_polytope":
                raise
            continue
        for v in piece.vertices:
            points.append(tuple(v) + height)
    return Polytope.from_points(points)


def p_tilde_one(scaf):
    """The canonical height model with one extra vertex per height unit."""
    base = p_tilde(scaf)
    n = scaf.u + scaf.shape.dim
    k = base.dim - n
    points = list(base.vertices)
    for i in range(k):
        points.append(
            tuple(0 for _ in range(n)) + tuple(1 if j == i else 0 for j in range(k))
        )
    return Polytope.from_points(points)


def p_s_polytope(scaf):
    """Hull of the ambient rays and one unit point per shape ray coordinate."""
    u = scaf.u
    nrays = len(scaf.shape.rays)
    points = list(ambient_rays(scaf))
    for j in range(nrays):
        points.append(
            tuple(0 for _ in range(u)) + tuple(1 if t == j else 0 for t in range(nrays))
        )
    return Polytope.from_points(points)


def mutation_chain_check(scaf):
    """Mutate the height model once per shape factor and compare hulls.

    The weight of a factor's mutation is the corresponding height coordinate
    functional; its factor polytope is spanned by the origin and the unit
    points of the factor's shape coordinates.  Returns whether the final
    polytope is lattice isomorphic to the hull of the ambient rays.
    """
    blocks = product_structure(scaf.shape)
    rays = tuple(tuple(int(c) for c in r) for r in scaf.shape.rays)
    rel = _ray_relations(scaf.shape)
    k = len(rel)
    if len(blocks) != k:
        raise DomainError("unsupported_shape", "one ray relation per factor expected")
    row_for_block = []
    for block in blocks:
        mine = {
            j
            for j, ray in enumerate(rays)
            if {p for p, c in enumerate(ray) if c} <= set(block)
        }
        found = [
            i
            for i, row in enumerate(rel)
            if {j for j, c in enumerate(row) if c} == mine
        ]
        if len(found) != 1:
            raise DomainError("unsupported_shape", "factor has no matching relation")
        row_for_block.append(found[0])
    u = scaf.u
    n = u + scaf.shape.dim
    model = p_tilde_one(scaf)
    for block, i in zip(blocks, row_for_block):
        w = tuple(0 for _ in range(n)) + tuple(1 if t == i else 0 for t in range(k))
        pts = [tuple(0 for _ in range(n + k))]
        for c in block:
            pts.append(tuple(1 if t == u + c else 0 for t in range(n + k)))
        model = mutate_polytope(model, w, Polytope.from_points(pts))
    return lattice_isomorphic(model, p_s_polytope(scaf)) is not None
