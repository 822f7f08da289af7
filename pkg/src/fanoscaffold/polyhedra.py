"""Exact polyhedral geometry: cones, polytopes and fans over the rationals.

Everything is computed with integer and Fraction arithmetic.  The workhorse
is :func:`dd_cone`, an incremental double description conversion; convex
hulls, facet enumeration, duals, normal and face fans are all thin wrappers
around it.  Intended for small instances (ambient dimension up to about 10);
no attempt is made at large-scale performance.
"""

from fractions import Fraction
from itertools import product as _product

from .errors import DomainError
from .exact import (
    det,
    dot,
    gcd_list,
    kernel_basis,
    linear_feasible,
    primitive_vector,
    rank,
    solve_linear,
    unimodular_inverse,
    vadd,
    vneg,
    vscale,
    vsub,
)


def _clear_denominators(vec):
    """Scale a rational vector by a positive integer to make it integral."""
    lcm = 1
    for c in vec:
        f = Fraction(c)
        lcm = lcm * f.denominator // _gcd2(lcm, f.denominator)
    return tuple(int(Fraction(c) * lcm) for c in vec)


def _gcd2(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _normalize_constraint(vec):
    """Integer primitive form of a constraint normal, or None if zero."""
    v = _clear_denominators(vec)
    if all(c == 0 for c in v):
        return None
    return primitive_vector(v)


def _reduce_mod_rows(vec, rows, pivots):
    """Reduce vec modulo the row span, zeroing the pivot coordinates.

    rows is a matrix in Hermite form with pivot columns `pivots`.  Returns
    an integral primitive representative, or the zero tuple if vec lies in
    the row span.
    """
    work = [Fraction(c) for c in vec]
    for row, p in zip(rows, pivots):
        if work[p]:
            coef = work[p] / row[p]
            for k in range(len(work)):
                work[k] -= coef * row[k]
    out = _clear_denominators(work)
    if all(c == 0 for c in out):
        return tuple(0 for _ in out)
    return primitive_vector(out)


def dd_cone(inequalities, equations=(), dim=None):
    """Extreme rays and lineality space of a cone given by linear constraints.

    The cone is {x : <a, x> >= 0 for a in inequalities,
    <e, x> = 0 for e in equations}.  Constraints may have Fraction entries;
    they are scaled to primitive integer vectors internally.

    Args:
        inequalities: iterable of constraint normals.
        equations: iterable of equality normals.
        dim: ambient dimension, required when both lists are empty.

    Returns:
        (rays, lineality): rays is a lex-sorted tuple of primitive integer
        tuples, each reduced modulo the lineality space; lineality is the
        canonical (Hermite form, saturated) basis of the largest linear
        subspace contained in the cone.
    """
    ineqs = []
    for a in inequalities:
        v = _normalize_constraint(a)
        if v is not None:
            ineqs.append(v)
    eqs = []
    for e in equations:
        v = _normalize_constraint(e)
        if v is not None:
            eqs.append(v)
    if dim is None:
        if ineqs:
            dim = len(ineqs[0])
        elif eqs:
            dim = len(eqs[0])
        else:
            raise DomainError("dimension_unknown", "no constraints and no dim given")
    n = dim
    for v in ineqs + eqs:
        if len(v) != n:
            raise DomainError(
                "dimension_mismatch", f"constraint has length {len(v)}, expected {n}"
            )

    # Running description: cone = span(lin) + cone(r for r, _ in rays).
    # Each ray carries the set of already processed inequality indices where
    # it is tight.  Every vector in lin is tight at all processed constraints.
    lin = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays = []

    def _project_off(a, keep_ray):
        # Remove one lineality direction not orthogonal to a; make all other
        # generators orthogonal to a.  If keep_ray, the removed direction
        # becomes a new ray tight at all previously processed inequalities.
        nonlocal lin, rays
        pivot = None
        for idx, l in enumerate(lin):
            if dot(a, l):
                pivot = idx
                break
        if pivot is None:
            return False
        l0 = lin.pop(pivot)
        d0 = dot(a, l0)
        if d0 < 0:
            l0 = vneg(l0)
            d0 = -d0
        new_lin = []
        for l in lin:
            d = dot(a, l)
            if d:
                l = _normalize_constraint(
                    tuple(Fraction(c) - Fraction(d, d0) * c0 for c, c0 in zip(l, l0))
                )
            new_lin.append(l)
        lin = new_lin
        new_rays = []
        for r, z in rays:
            d = dot(a, r)
            if d:
                r = primitive_vector(
                    _clear_denominators(
                        tuple(Fraction(c) - Fraction(d, d0) * c0 for c, c0 in zip(r, l0))
                    )
                )
            new_rays.append((r, z))
        rays = new_rays
        return l0 if keep_ray else True

    for e in eqs:
        if _project_off(e, keep_ray=False):
            continue
        # e vanishes on lin; slice the rays.  During the equation phase no
        # rays exist yet, but this branch also handles equations passed as
        # paired inequalities later on, so keep it general.
        kept = []
        pos = [(r, z) for r, z in rays if dot(e, r) > 0]
        neg = [(r, z) for r, z in rays if dot(e, r) < 0]
        kept = [(r, z) for r, z in rays if dot(e, r) == 0]
        for p, zp in pos:
            for q, zq in neg:
                zc = zp & zq
                if any(
                    zc <= zr for r, zr in rays if r is not p and r is not q
                ):
                    continue
                dp, dq = dot(e, p), dot(e, q)
                new = primitive_vector(vsub(vscale(dp, q), vscale(dq, p)))
                kept.append((new, zc))
        rays = kept

    for j, a in enumerate(ineqs):
        popped = _project_off(a, keep_ray=True)
        if popped is not False:
            # All survivors are tight at a except the popped direction.
            rays = [(r, z | {j}) for r, z in rays]
            rays.append((popped, set(range(j))))
            continue
        vals = [dot(a, r) for r, _ in rays]
        pos = [i for i, d in enumerate(vals) if d > 0]
        neg = [i for i, d in enumerate(vals) if d < 0]
        zero = [i for i, d in enumerate(vals) if d == 0]
        new_rays = [(rays[i][0], rays[i][1]) for i in pos]
        new_rays += [(rays[i][0], rays[i][1] | {j}) for i in zero]
        for ip in pos:
            p, zp = rays[ip]
            for iq in neg:
                q, zq = rays[iq]
                zc = zp & zq
                adjacent = True
                for ir, (r, zr) in enumerate(rays):
                    if ir != ip and ir != iq and zc <= zr:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                new = primitive_vector(
                    vsub(vscale(vals[ip], q), vscale(vals[iq], p))
                )
                new_rays.append((new, zc | {j}))
        rays = new_rays

    lineality = kernel_basis(ineqs + eqs, ncols=n)
    pivots = []
    for row in lineality:
        for k, c in enumerate(row):
            if c:
                pivots.append(k)
                break
    out = set()
    for r, _ in rays:
        red = _reduce_mod_rows(r, lineality, pivots)
        if any(red):
            out.add(red)
    return tuple(sorted(out)), tuple(lineality)


def convex_hull(points):
    """Facet description of the convex hull of finitely many rational points.

    Returns (inequalities, equations) where each inequality is a pair
    (normal, rhs) meaning <normal, x> >= rhs with primitive integer data,
    and each equation is a pair (normal, rhs) meaning <normal, x> = rhs
    cutting out the affine hull.
    """
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if not pts:
        raise DomainError("empty_polytope", "no points given")
    n = len(pts[0])
    lifted = [_normalize_constraint(p + (1,)) for p in pts]
    facet_rays, aff_lin = dd_cone(lifted, dim=n + 1)
    ineqs = []
    for v in facet_rays:
        ineqs.append((v[:n], -v[n]))
    eqs = []
    for v in aff_lin:
        eqs.append((v[:n], -v[n]))
    return tuple(ineqs), tuple(eqs)


def _hrep_to_vertices(inequalities, equations, n):
    """Vertices of a bounded polyhedron {x : Ax >= b, Cx = d}.

    Raises DomainError("unbounded", ...) if the polyhedron has a nonzero
    recession cone, returns () if it is empty.
    """
    hom_ineqs = [tuple(a) + (-Fraction(rhs),) for a, rhs in inequalities]
    hom_ineqs.append(tuple(0 for _ in range(n)) + (1,))
    hom_eqs = [tuple(a) + (-Fraction(rhs),) for a, rhs in equations]
    rays, lineality = dd_cone(hom_ineqs, hom_eqs, dim=n + 1)
    if lineality:
        raise DomainError("unbounded", "feasible set contains a line")
    verts = []
    for r in rays:
        if r[n] == 0:
            if any(Fraction(r2[n]) > 0 for r2 in rays):
                raise DomainError("unbounded", f"recession direction {r[:n]}")
            # Only recession rays and no vertex: the polyhedron is empty and
            # the homogenization degenerated to the recession cone.
            return ()
        verts.append(tuple(Fraction(c, r[n]) for c in r[:n]))
    return tuple(sorted(verts))


class Polytope:
    """A bounded rational polytope carrying both of its descriptions.

    vertices: lex-sorted tuple of Fraction tuples.
    inequalities: facet inequalities (normal, rhs), <normal, x> >= rhs,
        irredundant within the affine hull.
    equations: affine hull equations (normal, rhs), <normal, x> = rhs.
    """

    __slots__ = ("dim", "vertices", "inequalities", "equations")

    def __init__(self, dim, vertices, inequalities, equations):
        self.dim = dim
        self.vertices = vertices
        self.inequalities = inequalities
        self.equations = equations

    @classmethod
    def from_points(cls, points):
        pts = [tuple(Fraction(c) for c in p) for p in points]
        if not pts:
            raise DomainError("empty_polytope", "no points given")
        n = len(pts[0])
        if n == 0:
            raise DomainError("dimension_unknown", "ambient dimension zero")
        for p in pts:
            if len(p) != n:
                raise DomainError("dimension_mismatch", "points of mixed length")
        ineqs, eqs = convex_hull(pts)
        verts = _hrep_to_vertices(ineqs, eqs, n)
        return cls(n, verts, ineqs, eqs)

    @classmethod
    def from_hrep(cls, inequalities, equations=(), dim=None):
        ineqs = [(tuple(a), Fraction(rhs)) for a, rhs in inequalities]
        eqs = [(tuple(a), Fraction(rhs)) for a, rhs in equations]
        if dim is None:
            if ineqs:
                dim = len(ineqs[0][0])
            elif eqs:
                dim = len(eqs[0][0])
            else:
                raise DomainError("dimension_unknown", "no constraints and no dim")
        verts = _hrep_to_vertices(ineqs, eqs, dim)
        if not verts:
            raise DomainError("empty_polytope", "inconsistent constraints")
        # Rebuild the facet description from the vertices so that stored
        # inequalities are irredundant and canonically scaled.
        cineqs, ceqs = convex_hull(verts)
        return cls(dim, verts, cineqs, ceqs)

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)})"

    def affine_dim(self):
        return self.dim - len(self.equations)

    def is_full_dimensional(self):
        return not self.equations

    def is_lattice(self):
        return all(c.denominator == 1 for v in self.vertices for c in v)

    def contains(self, point):
        p = tuple(Fraction(c) for c in point)
        for a, rhs in self.inequalities:
            if dot(a, p) < rhs:
                return False
        for a, rhs in self.equations:
            if dot(a, p) != rhs:
                return False
        return True

    def contains_polytope(self, other):
        return all(self.contains(v) for v in other.vertices)

    def translate(self, v):
        w = tuple(Fraction(c) for c in v)
        verts = tuple(sorted(vadd(p, w) for p in self.vertices))
        ineqs = tuple((a, rhs + dot(a, w)) for a, rhs in self.inequalities)
        eqs = tuple((a, rhs + dot(a, w)) for a, rhs in self.equations)
        return Polytope(self.dim, verts, ineqs, eqs)

    def dilate(self, k):
        k = Fraction(k)
        if k == 0:
            z = tuple(Fraction(0) for _ in range(self.dim))
            return Polytope.from_points([z])
        return Polytope.from_points([vscale(k, v) for v in self.vertices])

    def facet_vertex_sets(self):
        """For each facet inequality, the indices of vertices lying on it."""
        sets = []
        for a, rhs in self.inequalities:
            sets.append(
                frozenset(
                    i for i, v in enumerate(self.vertices) if dot(a, v) == rhs
                )
            )
        return sets

    def proper_faces(self):
        """All proper nonempty faces as (dim, vertex index tuple) pairs.

        Faces are the intersections of facet vertex sets; the improper face
        (the polytope itself) and the empty face are omitted.
        """
        facet_sets = self.facet_vertex_sets()
        everything = frozenset(range(len(self.vertices)))
        found = set(s for s in facet_sets if s)
        frontier = set(found)
        while frontier:
            nxt = set()
            for f in frontier:
                for g in facet_sets:
                    h = f & g
                    if h and h not in found:
                        found.add(h)
                        nxt.add(h)
            frontier = nxt
        found.discard(everything)
        out = []
        for s in found:
            verts = [self.vertices[i] for i in s]
            d = _affine_rank(verts)
            out.append((d, tuple(sorted(s))))
        out.sort()
        return out

    def face_polytope(self, indices):
        return Polytope.from_points([self.vertices[i] for i in indices])

    def integral_points(self):
        """All lattice points of the polytope, lex sorted."""
        if not self.vertices:
            return ()
        lo = []
        hi = []
        for i in range(self.dim):
            cs = [v[i] for v in self.vertices]
            lo.append(_ceil(min(cs)))
            hi.append(_floor(max(cs)))
        pts = []
        for p in _product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if self.contains(p):
                pts.append(p)
        return tuple(pts)

    def interior_lattice_points(self):
        out = []
        for p in self.integral_points():
            if all(dot(a, p) > rhs for a, rhs in self.inequalities) and not self.equations:
                out.append(p)
        return tuple(out)

    def has_interior_origin(self):
        if self.equations:
            return False
        return all(rhs < 0 for _, rhs in self.inequalities)

    def dual(self):
        """The polar dual {y : <y, x> >= -1 for all x in self}.

        Requires the origin strictly in the interior.
        """
        if not self.has_interior_origin():
            raise DomainError("origin_not_interior", "polar dual undefined")
        # Facet <a, x> >= rhs with rhs < 0 rescales to <a / -rhs, x> >= -1,
        # giving the vertex a / -rhs of the dual.
        verts = [vscale(Fraction(-1, 1) / rhs, a) for a, rhs in self.inequalities]
        return Polytope.from_points(verts)

    def is_reflexive(self):
        return (
            self.is_lattice()
            and self.has_interior_origin()
            and self.dual().is_lattice()
        )

    def is_fano(self):
        """Full-dimensional, origin interior, all vertices primitive lattice points."""
        if not (self.is_lattice() and self.has_interior_origin()):
            return False
        for v in self.vertices:
            w = tuple(int(c) for c in v)
            if gcd_list(w) != 1:
                return False
        return True

    def minkowski_sum(self, other):
        if self.dim != other.dim:
            raise DomainError("dimension_mismatch", "summands of different dimension")
        pts = [vadd(p, q) for p in self.vertices for q in other.vertices]
        return Polytope.from_points(pts)

    def erode(self, other):
        """Minkowski difference self minus other.

        Returns (polytope_or_None, exact) where the polytope is
        {x : x + other <= self} (None when empty) and exact records whether
        adding `other` back recovers self.
        """
        if self.dim != other.dim:
            raise DomainError("dimension_mismatch", "operands of different dimension")
        ineqs = []
        for a, rhs in self.inequalities:
            shift = min(dot(a, q) for q in other.vertices)
            ineqs.append((a, rhs - shift))
        eqs = []
        for a, rhs in self.equations:
            vals = {dot(a, q) for q in other.vertices}
            if len(vals) > 1:
                return None, False
            eqs.append((a, rhs - vals.pop()))
        try:
            diff = Polytope.from_hrep(ineqs, eqs, dim=self.dim)
        except DomainError as err:
            if err.kind == "empty_polytope":
                return None, False
            raise
        exact = diff.minkowski_sum(other) == self
        return diff, exact


def _affine_rank(points):
    if not points:
        return -1
    base = points[0]
    rows = [vsub(p, base) for p in points[1:]]
    rows = [_clear_denominators(r) for r in rows]
    return rank(rows) if rows else 0


def _ceil(f):
    f = Fraction(f)
    return -((-f.numerator) // f.denominator)


def _floor(f):
    f = Fraction(f)
    return f.numerator // f.denominator


class Cone:
    """A rational polyhedral cone with canonical V- and H-descriptions.

    rays: extreme rays, primitive, reduced modulo lineality, lex sorted.
    lineality: canonical basis of the contained linear subspace.
    ineq_normals / eq_normals: the dual description; <a, x> >= 0 and
    <e, x> = 0 with the same canonical conventions on the dual side.
    """

    __slots__ = ("dim", "rays", "lineality", "ineq_normals", "eq_normals")

    def __init__(self, dim, rays, lineality, ineq_normals, eq_normals):
        self.dim = dim
        self.rays = rays
        self.lineality = lineality
        self.ineq_normals = ineq_normals
        self.eq_normals = eq_normals

    @classmethod
    def from_rays(cls, generators, dim=None):
        gens = [tuple(g) for g in generators]
        if dim is None:
            if not gens:
                raise DomainError("dimension_unknown", "no generators and no dim")
            dim = len(gens[0])
        cleaned = []
        for g in gens:
            if len(g) != dim:
                raise DomainError("dimension_mismatch", "generators of mixed length")
            v = _normalize_constraint(g)
            if v is not None:
                cleaned.append(v)
        # Dual cone of the generators gives the facet normals, then the dual
        # of that description gives the extreme rays among the generators.
        normals, eq_normals = dd_cone(cleaned, dim=dim)
        rays, lineality = dd_cone(normals, eq_normals, dim=dim)
        return cls(dim, rays, lineality, normals, eq_normals)

    @classmethod
    def from_hrep(cls, ineq_normals, eq_normals=(), dim=None):
        if dim is None:
            ineq_normals = [tuple(a) for a in ineq_normals]
            eq_normals = [tuple(e) for e in eq_normals]
            if ineq_normals:
                dim = len(ineq_normals[0])
            elif eq_normals:
                dim = len(eq_normals[0])
            else:
                raise DomainError("dimension_unknown", "no constraints and no dim")
        rays, lineality = dd_cone(ineq_normals, eq_normals, dim=dim)
        normals, dual_lin = dd_cone(rays, lineality, dim=dim)
        return cls(dim, rays, lineality, normals, dual_lin)

    def __eq__(self, other):
        return (
            isinstance(other, Cone)
            and self.dim == other.dim
            and self.rays == other.rays
            and self.lineality == other.lineality
        )

    def __hash__(self):
        return hash((self.dim, self.rays, self.lineality))

    def __repr__(self):
        return f"Cone(dim={self.dim}, rays={self.rays})"

    def contains(self, v):
        return all(dot(a, v) >= 0 for a in self.ineq_normals) and all(
            dot(e, v) == 0 for e in self.eq_normals
        )

    def contains_cone(self, other):
        return all(self.contains(r) for r in other.rays) and all(
            self.contains(l) and self.contains(vneg(l)) for l in other.lineality
        )

    def cone_dim(self):
        return rank(list(self.rays) + list(self.lineality))

    def is_pointed(self):
        return not self.lineality

    def dual(self):
        return Cone(self.dim, self.ineq_normals, self.eq_normals, self.rays, self.lineality)

    def intersect(self, other):
        if self.dim != other.dim:
            raise DomainError("dimension_mismatch", "cones in different spaces")
        return Cone.from_hrep(
            list(self.ineq_normals) + list(other.ineq_normals),
            list(self.eq_normals) + list(other.eq_normals),
            dim=self.dim,
        )

    def facet_cones(self):
        """The codimension one faces, as canonical cones."""
        out = []
        for a in self.ineq_normals:
            gens = [r for r in self.rays if dot(a, r) == 0]
            gens += list(self.lineality) + [vneg(l) for l in self.lineality]
            out.append(Cone.from_rays(gens, dim=self.dim))
        return out

    def relative_interior_point(self):
        if not self.rays and not self.lineality:
            return tuple(0 for _ in range(self.dim))
        total = tuple(0 for _ in range(self.dim))
        for r in self.rays:
            total = vadd(total, r)
        if not any(total) and self.lineality:
            return self.lineality[0]
        return total


def cone_over(polytope, height=1):
    """The cone over polytope x {height} in one more dimension."""
    gens = [tuple(v) + (Fraction(height),) for v in polytope.vertices]
    return Cone.from_rays([_normalize_constraint(g) for g in gens], dim=polytope.dim + 1)


class Fan:
    """A fan recorded as primitive rays plus index sets of maximal cones.

    Rays are deduplicated and lex sorted; each maximal cone is a sorted
    tuple of ray indices and the list of cones is sorted.  Validity (that
    cones intersect in faces) is the caller's responsibility.
    """

    __slots__ = ("dim", "rays", "max_cones")

    def __init__(self, dim, rays, max_cones):
        prim = []
        for r in rays:
            v = _normalize_constraint(r)
            if v is None:
                raise DomainError("zero_vector", "fan ray must be nonzero")
            prim.append(v)
        order = sorted(set(prim))
        lookup = {r: i for i, r in enumerate(order)}
        remap = [lookup[r] for r in prim]
        cones = set()
        for c in max_cones:
            cones.add(tuple(sorted(set(remap[i] for i in c))))
        self.dim = dim
        self.rays = tuple(order)
        self.max_cones = tuple(sorted(cones))

    def __eq__(self, other):
        return (
            isinstance(other, Fan)
            and self.dim == other.dim
            and self.rays == other.rays
            and self.max_cones == other.max_cones
        )

    def __hash__(self):
        return hash((self.dim, self.rays, self.max_cones))

    def __repr__(self):
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"

    def ray_index(self, v):
        r = _normalize_constraint(v)
        try:
            return self.rays.index(r)
        except ValueError:
            raise DomainError("unknown_ray", f"{tuple(v)} is not a ray of the fan")

    def cone(self, indices):
        return Cone.from_rays([self.rays[i] for i in indices], dim=self.dim)

    def is_complete(self):
        """Whether the fan covers the whole space.

        Checks that all maximal cones are full dimensional and that every
        codimension one face is shared by exactly two of them.  This is the
        right criterion for fans whose cones meet along faces.
        """
        if not self.max_cones:
            return False
        ridge_counts = {}
        for c in self.max_cones:
            cone = self.cone(c)
            if cone.cone_dim() != self.dim or not cone.is_pointed():
                return False
            for facet in cone.facet_cones():
                key = (facet.rays, facet.lineality)
                ridge_counts[key] = ridge_counts.get(key, 0) + 1
        return all(v == 2 for v in ridge_counts.values())

    def support_contains(self, v):
        return any(self.cone(c).contains(v) for c in self.max_cones)


def fans_equal(f1, f2):
    return f1 == f2


def spanning_fan(polytope):
    """The fan of cones over the proper faces of a polytope containing 0.

    Rays are the primitive generators of the vertices; maximal cones are
    spanned by the vertex sets of the facets.
    """
    if not polytope.has_interior_origin():
        raise DomainError("origin_not_interior", "spanning fan needs 0 inside")
    if not polytope.is_lattice():
        raise DomainError("not_lattice", "spanning fan needs lattice vertices")
    rays = [primitive_vector(tuple(int(c) for c in v)) for v in polytope.vertices]
    cones = []
    for s in polytope.facet_vertex_sets():
        cones.append([rays[i] for i in s])
    fan_rays = sorted(set(rays))
    lookup = {r: i for i, r in enumerate(fan_rays)}
    max_cones = [tuple(sorted(lookup[r] for r in c)) for c in cones]
    return Fan(polytope.dim, fan_rays, max_cones)


def normal_fan(polytope):
    """The fan of inner normal cones at the vertices of a full-dim polytope."""
    if not polytope.is_full_dimensional():
        raise DomainError("not_full_dimensional", "normal fan needs a full-dim polytope")
    normals = [primitive_vector(tuple(int(c) for c in a)) for a, _ in polytope.inequalities]
    cones = []
    for v in polytope.vertices:
        active = [
            i
            for i, (a, rhs) in enumerate(polytope.inequalities)
            if dot(a, v) == rhs
        ]
        cones.append([normals[i] for i in active])
    fan_rays = sorted(set(normals))
    lookup = {r: i for i, r in enumerate(fan_rays)}
    max_cones = [tuple(sorted(lookup[r] for r in c)) for c in cones]
    return Fan(polytope.dim, fan_rays, max_cones)


def restrict_fan(fan, basis):
    """Pull a complete fan back along the inclusion spanned by basis rows.

    basis is a list of k independent integer vectors in the fan's space,
    assumed to span a saturated sublattice.  A point y of Z^k maps to
    sum_i y_i basis[i].  Maximal cones of the result are the preimages of
    the fan's maximal cones that are full dimensional in the subspace.
    """
    k = len(basis)
    ray_set = set()
    cones = []
    for c in fan.max_cones:
        cone = fan.cone(c)
        pulled_ineqs = [tuple(dot(a, b) for b in basis) for a in cone.ineq_normals]
        pulled_eqs = [tuple(dot(e, b) for b in basis) for e in cone.eq_normals]
        rays, lineality = dd_cone(pulled_ineqs, pulled_eqs, dim=k)
        if lineality or rank(list(rays)) != k:
            continue
        cones.append(frozenset(rays))
    # Drop duplicates and cones contained in another cone (the subspace can
    # meet a maximal cone inside the intersection with a neighbour).
    kept = []
    for s in set(cones):
        cs = Cone.from_rays(sorted(s), dim=k)
        dominated = False
        for t in set(cones):
            if t != s and Cone.from_rays(sorted(t), dim=k).contains_cone(cs):
                dominated = True
                break
        if not dominated:
            kept.append(s)
    for s in kept:
        ray_set.update(s)
    fan_rays = sorted(ray_set)
    lookup = {r: i for i, r in enumerate(fan_rays)}
    max_cones = [tuple(sorted(lookup[r] for r in s)) for s in kept]
    return Fan(k, fan_rays, max_cones)


def lattice_isomorphic(p, q, affine=False):
    """Search for a unimodular map sending polytope p onto polytope q.

    Returns the matrix U (tuple of rows, acting on column vectors) with
    U * p = q as vertex sets, or None.  With affine=True a translation is
    allowed and the return value is (U, t) with x -> U x + t.  Both
    polytopes must be full dimensional lattice polytopes with at most 12
    vertices.
    """
    if not (p.is_lattice() and q.is_lattice()):
        raise DomainError("not_lattice", "lattice comparison of rational polytopes")
    if not (p.is_full_dimensional() and q.is_full_dimensional()):
        raise DomainError("not_full_dimensional", "lattice comparison needs full dim")
    if len(p.vertices) > 12 or len(q.vertices) > 12:
        raise DomainError("too_many_vertices", "lattice comparison capped at 12 vertices")
    if p.dim != q.dim or len(p.vertices) != len(q.vertices):
        return None
    if affine:
        pv = [tuple(int(c) for c in v) for v in p.vertices]
        base = pv[0]
        p0 = Polytope.from_points([vsub(v, base) for v in pv])
        for w in q.vertices:
            w0 = tuple(int(c) for c in w)
            q0 = Polytope.from_points([vsub(tuple(int(c) for c in u), w0) for u in q.vertices])
            u = lattice_isomorphic(p0, q0, affine=False)
            if u is not None:
                shift = vsub(w0, tuple(dot(row, base) for row in u))
                return u, shift
        return None
    d = p.dim
    pv = [tuple(int(c) for c in v) for v in p.vertices]
    qv = [tuple(int(c) for c in v) for v in q.vertices]
    qset = set(qv)
    # Fix one independent d-tuple of vertices of p, then try to match it
    # with every ordered d-tuple of vertices of q.
    chosen = None
    for comb in _independent_tuples(pv, d):
        chosen = comb
        break
    if chosen is None:
        return None
    bp = [pv[i] for i in chosen]
    try:
        bp_inv = unimodular_inverse(bp)
    except DomainError:
        bp_inv = None
    for cand in _ordered_tuples(qv, d):
        bq = list(cand)
        # U maps the rows of bp to the rows of bq: U = bq^T * (bp^T)^{-1},
        # computed as solving row systems when bp is not unimodular.
        u = _solve_map(bp, bq, bp_inv)
        if u is None:
            continue
        if any(any(Fraction(c).denominator != 1 for c in row) for row in u):
            continue
        urows = tuple(tuple(int(c) for c in row) for row in u)
        if abs(det(urows)) != 1:
            continue
        image = {tuple(dot(row, v) for row in urows) for v in pv}
        if image == qset:
            return urows
    return None


def _independent_tuples(vectors, d):
    n = len(vectors)
    from itertools import combinations

    for comb in combinations(range(n), d):
        if rank([vectors[i] for i in comb]) == d:
            yield comb


def _ordered_tuples(vectors, d):
    from itertools import permutations

    for perm in permutations(range(len(vectors)), d):
        yield [vectors[i] for i in perm]


def _solve_map(bp, bq, bp_inv):
    # Want U with U * bp[i] = bq[i] for all i (vectors as columns), i.e.
    # row j of U satisfies <row_j, bp[i]> = bq[i][j].
    d = len(bp)
    if bp_inv is not None:
        # With Bp unimodular the system row_j * Bp^T = col_j solves to
        # row_j[k] = sum_i bp_inv[k][i] * bq[i][j].
        rows = []
        for j in range(d):
            row = tuple(
                sum(bp_inv[k][i] * bq[i][j] for i in range(d)) for k in range(d)
            )
            rows.append(row)
        return rows
    rows = []
    for j in range(d):
        rhs = [bq[i][j] for i in range(d)]
        sol = solve_linear(bp, rhs)
        if sol is None:
            return None
        rows.append(tuple(sol))
    return rows


def polytopes_intersect(p, q):
    """Whether two polytopes given by H-representations meet."""
    if p.dim != q.dim:
        raise DomainError("dimension_mismatch", "polytopes in different spaces")
    ineqs = [(a, rhs) for a, rhs in list(p.inequalities) + list(q.inequalities)]
    eqs = [(a, rhs) for a, rhs in list(p.equations) + list(q.equations)]
    return linear_feasible(ineqs, eqs, p.dim) is not None
