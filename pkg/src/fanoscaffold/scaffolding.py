"""Scaffoldings: presentations of a polytope by divisor polytopes on a shape.

A scaffolding presents a target polytope in N = N_U x N_shape as the convex
hull of pieces {chi} x P_D, one per strut (D, chi).  The N_U block comes
first, matching the variable order of the forward construction.
"""

from itertools import combinations, product

from .errors import DomainError
from .exact import hermite_normal_form
from .laurent import LaurentPolynomial
from .polyhedra import Cone, Fan, Polytope, cone_over
from .toric import sections_polytope
from .forward import normalized_matrix, validate_partition


class Strut:
    """A divisor (as coefficients on the shape's rays) with a shift chi."""

    __slots__ = ("coeffs", "chi")

    def __init__(self, coeffs, chi=()):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.chi = tuple(int(c) for c in chi)

    def is_unit(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Strut):
            return NotImplemented
        return self.coeffs == other.coeffs and self.chi == other.chi

    def __hash__(self):
        return hash((self.coeffs, self.chi))

    def __repr__(self):
        return f"Strut(coeffs={self.coeffs}, chi={self.chi})"


class Scaffolding:
    __slots__ = ("shape", "u", "struts", "target")

    def __init__(self, shape, u, struts, target):
        if not isinstance(shape, Fan):
            raise DomainError("bad_scaffolding", "shape must be a fan")
        u = int(u)
        if u < 0:
            raise DomainError("bad_scaffolding", "negative shift rank")
        struts = tuple(struts)
        if not struts:
            raise DomainError("bad_scaffolding", "at least one strut required")
        nrays = len(shape.rays)
        for s in struts:
            if len(s.coeffs) != nrays:
                raise DomainError(
                    "bad_scaffolding",
                    f"strut has {len(s.coeffs)} coefficients, expected {nrays}",
                )
            if len(s.chi) != u:
                raise DomainError(
                    "bad_scaffolding",
                    f"strut shift has length {len(s.chi)}, expected {u}",
                )
        if target.dim != u + shape.dim:
            raise DomainError(
                "bad_scaffolding",
                f"target dimension {target.dim} != {u} + {shape.dim}",
            )
        self.shape = shape
        self.u = u
        self.struts = struts
        self.target = target

    def __repr__(self):
        return (
            f"Scaffolding(shape dim {self.shape.dim}, u={self.u}, "
            f"{len(self.struts)} struts)"
        )


def strut_polytope(scaf, index):
    """The piece {chi} x P_D of one strut inside the target's lattice."""
    strut = scaf.struts[index]
    sections = sections_polytope(scaf.shape, strut.coeffs)
    points = [strut.chi + v for v in sections.vertices]
    return Polytope.from_points(points)


def scaffold_hull(scaf):
    """Convex hull of all strut pieces."""
    points = []
    for i in range(len(scaf.struts)):
        try:
            piece = strut_polytope(scaf, i)
        except DomainError as exc:
            if exc.kind == "empty_polytope":
                continue
            raise
        points.extend(piece.vertices)
    if not points:
        raise DomainError("empty_polytope", "every strut is empty")
    return Polytope.from_points(points)


def unit_strut_basis(scaf):
    """Indices of u unit struts whose shifts form a lattice basis, or None."""
    units = [i for i, s in enumerate(scaf.struts) if s.is_unit()]
    if scaf.u == 0:
        return ()
    for combo in combinations(units, scaf.u):
        mat = [scaf.struts[i].chi for i in combo]
        h, _ = hermite_normal_form(mat)
        pivots = [h[k][k] for k in range(scaf.u) if any(h[k])]
        if len(pivots) == scaf.u and all(p == 1 for p in pivots):
            return combo
    return None


def validate_scaffolding(scaf):
    """Direct validation: the pieces must fill the target exactly.

    Returns (ok, report).  Beyond the hull test, a lattice basis of shifts
    must be available among the unit struts.  Struts contributing no vertex
    of the target are legal but reported.
    """
    report = {"failures": [], "vertexless_struts": (), "unit_basis": None}
    basis = unit_strut_basis(scaf)
    if basis is None:
        report["failures"].append("no unit struts forming a basis of the shifts")
    report["unit_basis"] = basis
    pieces = []
    for i in range(len(scaf.struts)):
        try:
            pieces.append(strut_polytope(scaf, i))
        except DomainError as exc:
            if exc.kind == "empty_polytope":
                pieces.append(None)
                continue
            raise
    points = []
    for piece in pieces:
        if piece is not None:
            points.extend(piece.vertices)
    if not points:
        report["failures"].append("every strut is empty")
        return False, report
    hull = Polytope.from_points(points)
    if hull.vertices != scaf.target.vertices:
        report["failures"].append("strut hull differs from the target")
    target_vertices = set(scaf.target.vertices)
    vertexless = []
    for i, piece in enumerate(pieces):
        if piece is None or not target_vertices & set(piece.vertices):
            vertexless.append(i)
    report["vertexless_struts"] = tuple(vertexless)
    return not report["failures"], report


def strut_cone(scaf, index):
    """Dual cone of the cone over (strut piece) x {1}.

    Lives in the dual lattice extended by one height coordinate; a point
    (m, z) belongs to it when z >= -<m, q> for every q in the piece.
    """
    piece = strut_polytope(scaf, index)
    return Cone.from_hrep([q + (1,) for q in piece.vertices])


def dual_cone_check(scaf):
    """Dual route: intersect the strut cones, compare with the target's.

    Equivalent to the hull test when the target contains the origin in its
    interior, but computed entirely on the dual side.
    """
    normals = []
    for i in range(len(scaf.struts)):
        try:
            piece = strut_polytope(scaf, i)
        except DomainError as exc:
            if exc.kind == "empty_polytope":
                continue
            raise
        normals.extend(q + (1,) for q in piece.vertices)
    if not normals:
        return False
    lhs = Cone.from_hrep(normals)
    rhs = cone_over(scaf.target.dual())
    return lhs.contains_cone(rhs) and rhs.contains_cone(lhs)


def product_fan(blocks):
    """Fan of a product of projective spaces.

    blocks lists, per factor, the coordinate positions it occupies; each
    factor contributes its unit rays plus the negated sum.
    """
    dim = sum(len(b) for b in blocks)
    seen = set()
    for b in blocks:
        for t in b:
            if t in seen or not 0 <= t < dim:
                raise DomainError("bad_index", "blocks must partition 0..dim-1")
            seen.add(t)
    rays = []
    factor_rays = []
    for b in blocks:
        mine = []
        for t in b:
            ray = tuple(1 if p == t else 0 for p in range(dim))
            mine.append(len(rays))
            rays.append(ray)
        neg = tuple(-1 if p in b else 0 for p in range(dim))
        mine.append(len(rays))
        rays.append(neg)
        factor_rays.append(mine)
    cones = []
    for omitted in product(*[range(len(m)) for m in factor_rays]):
        cone = []
        for m, om in zip(factor_rays, omitted):
            cone.extend(idx for k, idx in enumerate(m) if k != om)
        cones.append(tuple(cone))
    return Fan(dim, rays, cones)


def product_structure(fan):
    """Coordinate blocks exhibiting the fan as a product of projective spaces.

    Raises when the fan is not such a product in its given coordinates.
    """
    dim = fan.dim
    parent = list(range(dim))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for ray in fan.rays:
        support = [p for p, c in enumerate(ray) if c]
        for p in support[1:]:
            parent[find(p)] = find(support[0])
    blocks = {}
    for p in range(dim):
        blocks.setdefault(find(p), []).append(p)
    result = tuple(tuple(sorted(b)) for b in sorted(blocks.values()))
    expected = product_fan(result)
    if fan.rays != expected.rays or fan.max_cones != expected.max_cones:
        raise DomainError(
            "unsupported_shape", "shape is not a product of projective spaces"
        )
    return result


def scaffolding_from_forward(git, part):
    """The scaffolding presenting the model of a convex partition.

    One strut per basis row: its divisor polytope is the row's bracket
    polytope shifted by the row's variable exponents, its shift collects the
    exponents on the U block.  One unit strut per U column.
    """
    failures = validate_partition(git, part)
    if failures:
        raise DomainError("invalid_partition", "; ".join(failures))
    norm = normalized_matrix(git, part)
    u = len(part.U)
    var_cols = part.variable_columns()
    pos = {j: p for p, j in enumerate(var_cols)}
    blocks = []
    for s, c in zip(part.S, part.choices):
        block = tuple(pos[j] - u for j in s if j != c)
        if block:
            blocks.append(block)
    shape = product_fan(blocks)
    d = shape.dim
    struts = []
    for row in norm:
        # vertices of the row's bracket polytope, factor by factor
        factor_vertex_sets = []
        for s, c in zip(part.S, part.choices):
            level = int(sum(row[j] for j in s))
            block = [pos[j] - u for j in s if j != c]
            verts = [tuple(0 for _ in block)]
            verts.extend(
                tuple(level if k == t else 0 for k in range(len(block)))
                for t in range(len(block))
            )
            shift = tuple(-int(row[var_cols[u + b]]) for b in block)
            factor_vertex_sets.append(
                [(block, tuple(v + s0 for v, s0 in zip(vv, shift))) for vv in verts]
            )
        points = []
        for combo in product(*factor_vertex_sets) if factor_vertex_sets else [()]:
            point = [0] * d
            for block, vals in combo:
                for t, val in zip(block, vals):
                    point[t] = val
            points.append(tuple(point))
        piece = Polytope.from_points(points)
        coeffs = tuple(
            -min(sum(r * q for r, q in zip(ray, v)) for v in piece.vertices)
            for ray in shape.rays
        )
        chi = tuple(-int(row[j]) for j in part.U)
        struts.append(Strut(coeffs, chi))
    for j in part.U:
        chi = tuple(1 if jj == j else 0 for jj in part.U)
        struts.append(Strut((0,) * len(shape.rays), chi))
    points = []
    for strut in struts:
        sec = sections_polytope(shape, strut.coeffs)
        points.extend(strut.chi + v for v in sec.vertices)
    hull = Polytope.from_points(points)
    return Scaffolding(shape, u, struts, hull)


def laurent_from_scaffolding(scaf):
    """The Laurent polynomial a scaffolding on a product shape encodes.

    Each strut becomes one bracket product times a monomial; requires every
    strut to have nonnegative degree on every factor.
    """
    blocks = product_structure(scaf.shape)
    u = scaf.u
    n = u + scaf.shape.dim
    ray_pos = {ray: k for k, ray in enumerate(scaf.shape.rays)}
    f = LaurentPolynomial.zero(n)
    for s_idx, strut in enumerate(scaf.struts):
        term = LaurentPolynomial.monomial(
            tuple(strut.chi[p] if p < u else 0 for p in range(n))
        )
        for block in blocks:
            unit_idx = [
                ray_pos[tuple(1 if p == t else 0 for p in range(scaf.shape.dim))]
                for t in block
            ]
            neg_idx = ray_pos[
                tuple(-1 if p in block else 0 for p in range(scaf.shape.dim))
            ]
            degree = strut.coeffs[neg_idx] + sum(strut.coeffs[k] for k in unit_idx)
            if degree < 0:
                raise DomainError(
                    "negative_degree",
                    f"strut {s_idx} has degree {degree} on a factor",
                )
            bracket = LaurentPolynomial.one(n)
            for t in block:
                bracket = bracket + LaurentPolynomial.monomial(
                    tuple(1 if p == u + t else 0 for p in range(n))
                )
            mono = LaurentPolynomial.monomial(
                tuple(
                    -strut.coeffs[unit_idx[block.index(p - u)]]
                    if p >= u and p - u in block
                    else 0
                    for p in range(n)
                )
            )
            term = term * bracket ** degree * mono
        f = f + term
    return f
