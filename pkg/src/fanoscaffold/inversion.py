"""Laurent inversion: from a scaffolding to an ambient toric embedding.

A valid scaffolding determines a bigger toric variety together with a
distinguished lattice inclusion of the target's space.  The weight matrix
has one row per non-basis strut and one column per strut, per shift
coordinate, and per shape ray, in that order.
"""

from fractions import Fraction
from functools import cmp_to_key
from math import lcm

from .errors import DomainError
from .exact import (
    dot,
    kernel_basis,
    primitive_vector,
    row_space_equal,
    solve_linear,
    transpose,
    unimodular_inverse,
)
from .forward import ConvexPartitionWithBasis
from .polyhedra import (
    Cone,
    Fan,
    Polytope,
    fans_equal,
    normal_fan,
    restrict_fan,
    spanning_fan,
)
from .scaffolding import (
    Scaffolding,
    Strut,
    product_structure,
    unit_strut_basis,
    validate_scaffolding,
)
from .toric import GitData


class InversionResult:
    """Weight matrix, GIT data and lattice maps produced by an inversion."""

    __slots__ = (
        "scaffolding",
        "matrix",
        "git",
        "row_struts",
        "unit_basis",
        "theta",
        "recovered",
    )

    def __init__(self, scaffolding, matrix, git, row_struts, unit_basis, theta,
                 recovered):
        self.scaffolding = scaffolding
        self.matrix = matrix
        self.git = git
        self.row_struts = row_struts
        self.unit_basis = unit_basis
        self.theta = theta
        self.recovered = recovered

    def __repr__(self):
        return f"InversionResult({self.git.r} x {self.git.R})"


def _shift_basis_inverse(scaf, basis):
    if scaf.u == 0:
        return []
    mat = [scaf.struts[i].chi for i in basis]
    return unimodular_inverse(mat)


def _shift_coords(chi, cinv, u):
    return tuple(sum(chi[k] * cinv[k][t] for k in range(u)) for t in range(u))


def ambient_rays(scaf, basis=None):
    """One ray per strut: the shift paired with the negated divisor.

    Coordinates are (shift block, ray block); the shift block is written in
    the basis provided by the unit struts.
    """
    if basis is None:
        basis = unit_strut_basis(scaf)
    if basis is None:
        raise DomainError("invalid_scaffolding", "no unit strut basis")
    cinv = _shift_basis_inverse(scaf, basis)
    out = []
    for s in scaf.struts:
        a = _shift_coords(s.chi, cinv, scaf.u)
        out.append(tuple(int(x) for x in a) + tuple(-c for c in s.coeffs))
    return tuple(out)


def embedding_lattice_map(scaf, basis=None):
    """Rows of the inclusion of the target's lattice into the ambient one.

    A target point (n_U, n) maps to (n_U in the unit-strut basis, followed
    by the pairings of n against the shape's rays).
    """
    if basis is None:
        basis = unit_strut_basis(scaf)
    if basis is None:
        raise DomainError("invalid_scaffolding", "no unit strut basis")
    u = scaf.u
    d = scaf.shape.dim
    nrays = len(scaf.shape.rays)
    cinv = _shift_basis_inverse(scaf, basis)
    rows = []
    for k in range(u):
        rows.append(tuple(cinv[k]) + (0,) * nrays)
    for k in range(d):
        rows.append(
            (0,) * u + tuple(ray[k] for ray in scaf.shape.rays)
        )
    return tuple(rows)


def laurent_inversion(scaf, omega=None):
    """Invert a scaffolding into GIT data for the ambient variety.

    Columns: one per non-basis strut (unit block), then the shift block,
    then one per shape ray in the fan's canonical order.  By default omega
    is the sum of the strut columns.
    """
    ok, report = validate_scaffolding(scaf)
    if not ok:
        raise DomainError("invalid_scaffolding", "; ".join(report["failures"]))
    basis = report["unit_basis"]
    chosen = set(basis)
    row_struts = tuple(i for i in range(len(scaf.struts)) if i not in chosen)
    u = scaf.u
    r = len(row_struts)
    nrays = len(scaf.shape.rays)
    R = r + u + nrays
    cinv = _shift_basis_inverse(scaf, basis)
    matrix = []
    for pos, i in enumerate(row_struts):
        s = scaf.struts[i]
        a = _shift_coords(s.chi, cinv, u)
        row = [0] * r
        row[pos] = 1
        row.extend(-int(x) for x in a)
        row.extend(int(c) for c in s.coeffs)
        matrix.append(tuple(row))
    matrix = tuple(matrix)
    if omega is None:
        omega = (1,) * r
    else:
        omega = tuple(omega)
    chars = [tuple(matrix[b][j] for b in range(r)) for j in range(R)]
    git = GitData(r, R, chars, omega)
    theta = embedding_lattice_map(scaf, basis)
    try:
        blocks = product_structure(scaf.shape)
    except DomainError:
        recovered = None
    else:
        groups = []
        for block in blocks:
            cols = []
            for j, ray in enumerate(scaf.shape.rays):
                support = {p for p, c in enumerate(ray) if c}
                if support <= set(block):
                    cols.append(r + u + j)
            groups.append(tuple(cols))
        recovered = ConvexPartitionWithBasis(
            tuple(range(r)), groups, tuple(range(r, r + u))
        )
    return InversionResult(scaf, matrix, git, row_struts, basis, theta, recovered)


def q_s_polytope(scaf):
    """Sections polytope of the sum of all strut divisors on the ambient.

    Cut out by nonnegativity on the ray block and by pairing at least -1
    against every strut's ambient ray.  Unbounded data is rejected.
    """
    basis = unit_strut_basis(scaf)
    if basis is None:
        raise DomainError("invalid_scaffolding", "no unit strut basis")
    u = scaf.u
    nrays = len(scaf.shape.rays)
    dim = u + nrays
    ineqs = []
    for j in range(nrays):
        normal = tuple(1 if p == u + j else 0 for p in range(dim))
        ineqs.append((normal, 0))
    for rho in ambient_rays(scaf, basis):
        ineqs.append((rho, -1))
    return Polytope.from_hrep(ineqs, dim=dim)


def _cyclic_order_2d(vectors):
    """Indices of plane vectors sorted counterclockwise, starting in the
    upper half plane at the positive x axis."""

    def half(v):
        return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1

    def cmp(i, j):
        a, b = vectors[i], vectors[j]
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = a[0] * b[1] - a[1] * b[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return tuple(sorted(range(len(vectors)), key=cmp_to_key(cmp)))


def _det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _ray_relations(shape):
    """Integer relations among the shape's rays used for the binomials.

    Plane fans get one wall relation per ray via consecutive minors;
    products of projective spaces get one relation per factor; anything
    else gets a basis of the saturated relation lattice.
    """
    rays = shape.rays
    n = len(rays)
    if shape.dim == 2:
        order = _cyclic_order_2d(rays)
        rels = set()
        for t in range(n):
            i = order[(t - 1) % n]
            j = order[t]
            k = order[(t + 1) % n]
            vi, vj, vk = rays[i], rays[j], rays[k]
            w = [0] * n
            w[i] += _det2(vj, vk)
            w[j] -= _det2(vi, vk)
            w[k] += _det2(vi, vj)
            if not any(w):
                continue
            first = next(c for c in w if c)
            if first < 0:
                w = [-c for c in w]
            rels.add(tuple(w))
        return sorted(rels)
    try:
        blocks = product_structure(shape)
    except DomainError:
        pass
    else:
        rels = []
        for block in blocks:
            w = []
            for ray in rays:
                support = {p for p, c in enumerate(ray) if c}
                w.append(1 if support <= set(block) else 0)
            rels.append(tuple(w))
        return sorted(rels)
    return sorted(kernel_basis(transpose([list(r) for r in rays]), ncols=n))


def binomial_equations(inv):
    """Binomials cutting out the embedded image inside the ambient variety.

    Each relation among the shape's rays is turned into a difference of two
    monomials in the Cox coordinates; strut columns homogenise the relation
    and shift columns never appear.  Returned as (plus, minus) exponent
    pairs over all columns, sorted.
    """
    scaf = inv.scaffolding
    r = len(inv.row_struts)
    u = scaf.u
    nrays = len(scaf.shape.rays)
    R = r + u + nrays
    out = []
    for w in _ray_relations(scaf.shape):
        plus = [0] * R
        minus = [0] * R
        for j, c in enumerate(w):
            if c > 0:
                plus[r + u + j] = c
            elif c < 0:
                minus[r + u + j] = -c
        for pos, i in enumerate(inv.row_struts):
            coeffs = scaf.struts[i].coeffs
            a = -sum(wj * cj for wj, cj in zip(w, coeffs))
            if a > 0:
                plus[pos] = a
            elif a < 0:
                minus[pos] = -a
        out.append((tuple(plus), tuple(minus)))
    return tuple(sorted(set(out)))


def _lift_facet_normal(scaf, normal):
    """Lift a facet normal of the target into ambient dual coordinates.

    The normal pairs to -1 with the facet.  Its shape part lies in some
    maximal cone of the shape fan; writing it in that cone's ray basis
    gives nonnegative coordinates, one per ray, which together with the
    untouched shift part describe the lifted point.  Returns None when no
    maximal cone contains the shape part.
    """
    shape = scaf.shape
    u = scaf.u
    y = list(normal[u:])
    for cone_indices in shape.max_cones:
        if len(cone_indices) != shape.dim:
            continue
        cols = [shape.rays[i] for i in cone_indices]
        rows = transpose([list(c) for c in cols])
        sol = solve_linear(rows, y)
        if sol is None or any(t < 0 for t in sol):
            continue
        lifted = [Fraction(x) for x in normal[:u]]
        lifted += [Fraction(0)] * len(shape.rays)
        for t, i in zip(sol, cone_indices):
            lifted[u + i] = t
        return tuple(lifted)
    return None


def verify_embedding(scaf):
    """Run the three embedding checks for a scaffolding.

    (a) the ambient fan's rays are exactly the strut rays plus the ray
        block's units;
    (b) the ambient fan restricted along the lattice inclusion is the
        spanning fan of the target;
    (c) for every proper face of the target, the face's cone is recovered
        from the ambient data.

    Returns (ok, report) with one boolean per check.
    """
    report = {"ambient_rays": False, "restricted_fan": False,
              "face_cones": False}
    basis = unit_strut_basis(scaf)
    if basis is None:
        return False, report
    u = scaf.u
    d = scaf.shape.dim
    nrays = len(scaf.shape.rays)
    dim = u + nrays
    qs = q_s_polytope(scaf)
    ambient_fan = normal_fan(qs)
    expected = set()
    for rho in ambient_rays(scaf, basis):
        expected.add(primitive_vector(rho))
    for j in range(nrays):
        expected.add(tuple(1 if p == u + j else 0 for p in range(dim)))
    report["ambient_rays"] = set(ambient_fan.rays) == expected

    theta = embedding_lattice_map(scaf, basis)
    restricted = restrict_fan(ambient_fan, theta)
    report["restricted_fan"] = fans_equal(restricted, spanning_fan(scaf.target))

    report["face_cones"] = _face_cones_check(scaf, basis, theta)
    return all(report.values()), report


def _face_cones_check(scaf, basis, theta):
    u = scaf.u
    nrays = len(scaf.shape.rays)
    dim = u + nrays
    target = scaf.target
    rhos = ambient_rays(scaf, basis)
    # lift the dual vertex of every facet of the target
    facet_sets = target.facet_vertex_sets()
    lifts = []
    for fset in facet_sets:
        rows = [list(target.vertices[i]) for i in sorted(fset)]
        normal = solve_linear(rows, [-1] * len(rows))
        if normal is None:
            return False
        lifted = _lift_facet_normal(scaf, normal)
        if lifted is None:
            return False
        lifts.append(lifted)
    theta_cols = transpose([list(t) for t in theta])
    ann = kernel_basis([list(t) for t in theta], ncols=dim)
    subspace = Cone.from_hrep([], ann, dim=dim) if ann else None
    for _, indices in target.proper_faces():
        members = set(indices)
        cover = [k for k, fset in enumerate(facet_sets) if members <= fset]
        if not cover:
            return False
        # a strut ray supports the face when it pairs to -1 with every
        # covering facet's lift; a unit does when its coordinate vanishes
        gens = []
        for rho in rhos:
            if all(dot(rho, lifts[k]) == -1 for k in cover):
                gens.append(rho)
        for j in range(nrays):
            if all(lifts[k][u + j] == 0 for k in cover):
                gens.append(tuple(1 if p == u + j else 0 for p in range(dim)))
        big = Cone.from_rays(gens, dim=dim)
        if subspace is not None:
            big = big.intersect(subspace)
        pulled = []
        for v in list(big.rays) + list(big.lineality) + [
            tuple(-x for x in l) for l in big.lineality
        ]:
            sol = solve_linear(theta_cols, v)
            if sol is None:
                return False
            pulled.append(primitive_vector(_clear_fractions(sol)))
        lhs = Cone.from_rays(pulled, dim=len(theta))
        rhs = Cone.from_rays([target.vertices[i] for i in indices],
                             dim=len(theta))
        if lhs != rhs:
            return False
    return True


def _clear_fractions(vec):
    fracs = [Fraction(x) for x in vec]
    denom = lcm(*(f.denominator for f in fracs))
    return tuple(int(f * denom) for f in fracs)


def ci_data(scaf):
    """Complete-intersection data for a scaffolding on a product shape.

    Returns the factor functionals on the ambient lattice, the degree of
    each strut row on each factor, and whether the kernel of the
    functionals is exactly the embedded lattice.
    """
    blocks = product_structure(scaf.shape)
    basis = unit_strut_basis(scaf)
    if basis is None:
        raise DomainError("invalid_scaffolding", "no unit strut basis")
    u = scaf.u
    nrays = len(scaf.shape.rays)
    dim = u + nrays
    factor_ray_idx = []
    for block in blocks:
        idx = []
        for j, ray in enumerate(scaf.shape.rays):
            support = {p for p, c in enumerate(ray) if c}
            if support <= set(block):
                idx.append(j)
        factor_ray_idx.append(tuple(idx))
    functionals = tuple(
        tuple(1 if p - u in idx and p >= u else 0 for p in range(dim))
        for idx in factor_ray_idx
    )
    chosen = set(basis)
    row_struts = [i for i in range(len(scaf.struts)) if i not in chosen]
    degrees = tuple(
        tuple(
            sum(scaf.struts[i].coeffs[j] for j in idx) for i in row_struts
        )
        for idx in factor_ray_idx
    )
    theta = embedding_lattice_map(scaf, basis)
    kernel = kernel_basis([list(f) for f in functionals], ncols=dim)
    lattice_ok = row_space_equal(
        [list(k) for k in kernel], [list(t) for t in theta]
    )
    return {
        "functionals": functionals,
        "degrees": degrees,
        "degrees_nonnegative": all(x >= 0 for row in degrees for x in row),
        "lattice_ok": lattice_ok,
    }


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _triangulate_2d(points):
    """Placing triangulation of a planar point set, lex insertion order.

    Every point becomes a triangle vertex.  Points are assumed pairwise
    distinct; with a lex insertion order each new point lies outside the
    hull of its predecessors, so only hull edges ever get attached.
    """
    order = sorted(range(len(points)), key=lambda i: points[i])
    tris = []
    hull = []
    chain = []
    rest = []
    for t, idx in enumerate(order):
        if len(chain) < 2:
            chain.append(idx)
            continue
        if _orient(points[chain[0]], points[chain[1]], points[idx]) == 0:
            chain.append(idx)
            continue
        rest = order[t:]
        break
    else:
        raise DomainError("not_full_dimensional", "all points collinear")
    first = rest[0]
    for a, b in zip(chain, chain[1:]):
        tris.append((a, b, first))
    if _orient(points[chain[0]], points[chain[-1]], points[first]) > 0:
        hull = chain + [first]
    else:
        hull = list(reversed(chain)) + [first]
    for idx in rest[1:]:
        p = points[idx]
        m = len(hull)
        visible = [
            t
            for t in range(m)
            if _orient(points[hull[t]], points[hull[(t + 1) % m]], p) < 0
        ]
        if not visible:
            raise DomainError("bad_index", "point inside current hull")
        for t in visible:
            tris.append((hull[t], hull[(t + 1) % m], idx))
        # replace the contiguous visible chain by the new point
        vis = set(visible)
        start = None
        for t in range(m):
            if t in vis and (t - 1) % m not in vis:
                start = t
                break
        end = (start + len(visible)) % m
        new_hull = [hull[end]]
        t = end
        while t != start:
            t = (t + 1) % m
            new_hull.append(hull[t])
        new_hull.append(idx)
        hull = new_hull
    return tris


def anticanonical_scaffolding(polytope):
    """The single-strut scaffolding of a reflexive polytope.

    The shape's rays are all boundary lattice points of the dual; in the
    plane consecutive pairs bound the cones, in dimension three each dual
    facet is triangulated by lex placing.  The unique strut is the sum of
    all toric boundary divisors.
    """
    if polytope.dim not in (2, 3):
        raise DomainError(
            "unsupported_dimension", "only dimensions 2 and 3 are covered"
        )
    if not polytope.is_reflexive():
        raise DomainError("not_reflexive", "the target must be reflexive")
    dual = polytope.dual()
    origin = (0,) * polytope.dim
    boundary = [q for q in dual.integral_points() if q != origin]
    if polytope.dim == 2:
        order = _cyclic_order_2d(boundary)
        cones = [
            (order[t], order[(t + 1) % len(order)])
            for t in range(len(order))
        ]
        point_cones = [(boundary[i], boundary[j]) for i, j in cones]
    else:
        point_cones = []
        for facet_set in dual.facet_vertex_sets():
            face = dual.face_polytope(sorted(facet_set))
            pts = face.integral_points()
            normal = next(
                a for a, rhs in dual.inequalities
                if all(dot(a, v) == rhs for v in face.vertices)
            )
            drop = max(range(3), key=lambda k: abs(normal[k]))
            keep = [k for k in range(3) if k != drop]
            flat = [tuple(p[k] for k in keep) for p in pts]
            for a, b, c in _triangulate_2d(flat):
                point_cones.append((pts[a], pts[b], pts[c]))
    fan = Fan(polytope.dim, boundary, [])
    index = {}
    for q in boundary:
        index[q] = fan.ray_index(q)
    cones = [tuple(sorted(index[q] for q in pc)) for pc in point_cones]
    fan = Fan(polytope.dim, boundary, cones)
    strut = Strut((1,) * len(fan.rays), ())
    return Scaffolding(fan, 0, [strut], polytope)
