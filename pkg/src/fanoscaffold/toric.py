"""Toric machinery: GIT presentations, quotient fans, divisors and bundles.

A toric variety is handled in two interchangeable forms: as GIT data (a
diagonal torus action on affine space together with a stability character)
and as a fan whose rays stay attached to the affine coordinates.  Divisors
are coefficient vectors indexed by those coordinates; piecewise linear
functions, positivity tests and section polytopes are derived from them.
"""

from fractions import Fraction
from itertools import combinations

from .errors import DomainError
from .exact import (
    det,
    dot,
    kernel_basis,
    linear_feasible,
    positive_combination,
    rank,
    solve_linear,
    unimodular_inverse,
)
from .polyhedra import Cone, Fan, Polytope


class GitData:
    """A torus (C*)^r acting diagonally on C^R with a stability character.

    characters: tuple of R weight vectors in Z^r, one per coordinate.
    omega: the stability character, a rational vector in the same space.

    The character cone must be pointed and full dimensional and omega must
    lie inside it; this keeps every downstream construction well posed.
    """

    __slots__ = ("r", "R", "characters", "omega")

    def __init__(self, r, R, characters, omega):
        characters = tuple(tuple(int(c) for c in d) for d in characters)
        omega = tuple(Fraction(c) for c in omega)
        if len(characters) != R:
            raise DomainError("bad_git_data", f"expected {R} characters, got {len(characters)}")
        if any(len(d) != r for d in characters) or len(omega) != r:
            raise DomainError("bad_git_data", "character or omega length differs from r")
        if any(not any(d) for d in characters):
            raise DomainError("zero_character", "every coordinate needs a nonzero weight")
        if rank(list(characters)) != r:
            raise DomainError("not_full_rank", "characters do not span the weight space")
        # Pointedness: some functional is strictly positive on all weights.
        if linear_feasible([(d, 1) for d in characters], [], r) is None:
            raise DomainError("not_pointed", "character cone contains a line")
        if positive_combination(characters, omega) is None:
            raise DomainError("omega_outside", "omega is not in the character cone")
        self.r = r
        self.R = R
        self.characters = characters
        self.omega = omega

    def __eq__(self, other):
        return (
            isinstance(other, GitData)
            and (self.r, self.R, self.characters, self.omega)
            == (other.r, other.R, other.characters, other.omega)
        )

    def __repr__(self):
        return f"GitData(r={self.r}, R={self.R})"


def covers(git, subset):
    """Whether omega is a strictly positive combination of the given weights."""
    idx = sorted(set(subset))
    if any(i < 0 or i >= git.R for i in idx):
        raise DomainError("bad_index", "subset index out of range")
    gens = [git.characters[i] for i in idx]
    return positive_combination(gens, git.omega, strict=True) is not None


def irrelevant_collection(git):
    """All covering subsets of coordinates and the minimal ones.

    Returns (covers, minimal) as tuples of index tuples, ordered by size
    then lexicographically.  Exponential in R, so capped at R <= 16.
    """
    if git.R > 16:
        raise DomainError("too_many_coordinates", "subset enumeration capped at R = 16")
    found = []
    for size in range(1, git.R + 1):
        for comb in combinations(range(git.R), size):
            if covers(git, comb):
                found.append(comb)
    sets = [frozenset(c) for c in found]
    minimal = [
        c
        for c, s in zip(found, sets)
        if not any(t < s for t in sets)
    ]
    key = lambda c: (len(c), c)
    return tuple(sorted(found, key=key)), tuple(sorted(minimal, key=key))


class StackyFan:
    """A fan whose rays stay indexed by the affine coordinates of a quotient.

    rays: tuple of integer vectors, one per coordinate, in coordinate order
    (not re-sorted, so coordinate identity survives).  max_cones: sorted
    tuples of coordinate indices spanning the maximal cones.
    """

    __slots__ = ("dim", "rays", "max_cones")

    def __init__(self, dim, rays, max_cones):
        rays = tuple(tuple(int(c) for c in v) for v in rays)
        for v in rays:
            if len(v) != dim:
                raise DomainError("dimension_mismatch", "ray length differs from dim")
            if not any(v):
                raise DomainError("zero_vector", "fan ray must be nonzero")
        cones = set()
        for c in max_cones:
            c = tuple(sorted(set(c)))
            if any(i < 0 or i >= len(rays) for i in c):
                raise DomainError("bad_index", "cone index out of range")
            cones.add(c)
        self.dim = dim
        self.rays = rays
        self.max_cones = tuple(sorted(cones))

    def fan(self):
        """Forget coordinate labels: canonical Fan with deduplicated rays."""
        return Fan(self.dim, self.rays, self.max_cones)

    def __eq__(self, other):
        return (
            isinstance(other, StackyFan)
            and (self.dim, self.rays, self.max_cones)
            == (other.dim, other.rays, other.max_cones)
        )

    def __repr__(self):
        return f"StackyFan(dim={self.dim}, coords={len(self.rays)})"


def git_to_stacky_fan(git):
    """The quotient fan of GIT data, rays labelled by coordinates.

    Picks the first coordinate subset whose weights form a unimodular basis,
    normalizes the weight matrix against it and reads the rays off the
    normalized rows.  Maximal cones are the complements of the minimal
    covering subsets.
    """
    r, R = git.r, git.R
    basis = None
    for comb in combinations(range(R), r):
        sub = [[git.characters[i][k] for i in comb] for k in range(r)]
        if abs(det(sub)) == 1:
            basis = comb
            break
    if basis is None:
        raise DomainError("no_unimodular_basis", "quotient lattice has torsion")
    bmat = [[git.characters[basis[l]][k] for l in range(r)] for k in range(r)]
    binv = unimodular_inverse(bmat)
    norm = [
        [sum(binv[k][t] * git.characters[i][t] for t in range(r)) for i in range(R)]
        for k in range(r)
    ]
    nonbasis = [i for i in range(R) if i not in basis]
    n = R - r
    pos = {j: p for p, j in enumerate(nonbasis)}
    rays = []
    for i in range(R):
        if i in basis:
            k = basis.index(i)
            rays.append(tuple(-norm[k][j] for j in nonbasis))
        else:
            rays.append(tuple(1 if p == pos[i] else 0 for p in range(n)))
    _, minimal = irrelevant_collection(git)
    everything = set(range(R))
    max_cones = [tuple(sorted(everything - set(c))) for c in minimal]
    return StackyFan(n, rays, max_cones)


def stacky_fan_to_git(sfan):
    """GIT data presenting the toric variety of a coordinate-labelled fan.

    The weights are the columns of a canonical basis of the linear relations
    among the rays; omega is the sum of the primitive extreme rays of the
    intersection over all maximal cones sigma of the cone spanned by the
    weights outside sigma.
    """
    R = len(sfan.rays)
    n = sfan.dim
    if rank(list(sfan.rays)) != n:
        raise DomainError("not_full_rank", "rays do not span; torus factor present")
    rel_rows = [tuple(v[k] for v in sfan.rays) for k in range(n)]
    relations = kernel_basis(rel_rows, ncols=R)
    r = len(relations)
    characters = [tuple(relations[k][i] for k in range(r)) for i in range(R)]
    chamber = None
    for c in sfan.max_cones:
        outside = [characters[i] for i in range(R) if i not in c]
        cone = Cone.from_rays(outside, dim=r)
        chamber = cone if chamber is None else chamber.intersect(cone)
    if chamber is None or not chamber.rays or chamber.lineality:
        raise DomainError("degenerate_chamber", "no interior stability character")
    omega = tuple(sum(v[k] for v in chamber.rays) for k in range(r))
    return GitData(r, R, characters, omega)


def _span_normals(git):
    """Primitive normals of the hyperplanes spanned by weight subsets."""
    r = git.r
    normals = set()
    for comb in combinations(range(git.R), r - 1):
        sub = [git.characters[i] for i in comb]
        if rank(sub) != r - 1:
            continue
        ker = kernel_basis(sub, ncols=r)
        if len(ker) == 1:
            normals.add(ker[0])
    return sorted(normals)


def in_chamber_interior(git, omega):
    """Whether a character lies inside a full-dimensional GKZ chamber.

    True when omega is in the character cone and on no wall, a wall being
    the cone spanned by the weights inside a hyperplane that weight subsets
    span.
    """
    w = tuple(Fraction(c) for c in omega)
    if len(w) != git.r:
        raise DomainError("dimension_mismatch", "character length differs from r")
    if not any(w):
        return False
    if positive_combination(git.characters, w) is None:
        return False
    for h in _span_normals(git):
        on_wall = [d for d in git.characters if dot(h, d) == 0]
        if on_wall and positive_combination(on_wall, w) is not None:
            return False
    return True


def secondary_fan(git):
    """The GKZ chamber decomposition of the character cone.

    Splits the support cone along every hyperplane spanned by weights, then
    merges adjacent cells whose common facet lies on no wall.  Returns the
    chambers as canonical cones, sorted by their ray tuples.  Capped at
    rank 4.
    """
    r = git.r
    if r > 4:
        raise DomainError("rank_too_large", "secondary fan capped at rank 4")
    support = Cone.from_rays(git.characters, dim=r)
    cells = [support]
    for h in _span_normals(git):
        nxt = []
        seen = set()
        for cell in cells:
            for side in (h, tuple(-c for c in h)):
                piece = cell.intersect(Cone.from_hrep([side], dim=r))
                if piece.cone_dim() != r:
                    continue
                key = (piece.rays, piece.lineality)
                if key not in seen:
                    seen.add(key)
                    nxt.append(piece)
        cells = nxt
    walls = []
    for h in _span_normals(git):
        on_wall = [d for d in git.characters if dot(h, d) == 0]
        if on_wall:
            walls.append(Cone.from_rays(on_wall, dim=r))
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            shared = cells[i].intersect(cells[j])
            if shared.cone_dim() != r - 1:
                continue
            probe = tuple(sum(v[k] for v in shared.rays) for k in range(r))
            if not any(w.contains(probe) for w in walls):
                parent[find(i)] = find(j)
    groups = {}
    for i, cell in enumerate(cells):
        groups.setdefault(find(i), []).append(cell)
    chambers = []
    for members in groups.values():
        gens = [v for cell in members for v in cell.rays]
        chambers.append(Cone.from_rays(gens, dim=r))
    chambers.sort(key=lambda c: c.rays)
    return tuple(chambers)


class PLFunction:
    """A piecewise linear function on a fan, linear on each maximal cone.

    Built from one value per ray; the linear piece on a maximal cone is the
    functional agreeing with those values on the cone's rays.  Fails with
    kind "not_q_cartier" when no such functional exists on some cone.
    """

    __slots__ = ("source", "coeffs", "pieces")

    def __init__(self, fan_like, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != len(fan_like.rays):
            raise DomainError("dimension_mismatch", "one coefficient per ray required")
        pieces = []
        for cone_idx in fan_like.max_cones:
            rows = [fan_like.rays[i] for i in cone_idx]
            rhs = [coeffs[i] for i in cone_idx]
            sol = solve_linear(rows, rhs)
            if sol is None:
                raise DomainError(
                    "not_q_cartier", f"no linear piece on cone {tuple(cone_idx)}"
                )
            pieces.append(tuple(sol))
        self.source = fan_like
        self.coeffs = coeffs
        self.pieces = tuple(pieces)

    def is_cartier(self):
        return all(c.denominator == 1 for p in self.pieces for c in p)

    def is_nef(self):
        """Every linear piece underestimates the value at every ray."""
        rays = self.source.rays
        for piece in self.pieces:
            for j, v in enumerate(rays):
                if dot(piece, v) > self.coeffs[j]:
                    return False
        return True

    def is_ample(self):
        """Nef with strict inequality at every ray outside the piece's cone."""
        rays = self.source.rays
        for piece, cone_idx in zip(self.pieces, self.source.max_cones):
            inside = set(cone_idx)
            for j, v in enumerate(rays):
                val = dot(piece, v)
                if j in inside:
                    if val != self.coeffs[j]:
                        return False
                elif val >= self.coeffs[j]:
                    return False
        return True


def is_nef(fan_like, coeffs):
    return PLFunction(fan_like, coeffs).is_nef()

def is_ample(fan_like, coeffs):
    return PLFunction(fan_like, coeffs).is_ample()


def sections_polytope(fan_like, coeffs):
    """The polytope {m : <ray_i, m> >= -coeff_i}.

    For a nef divisor on a complete fan this is its polytope of sections.
    Raises with kind "empty_polytope" when there are none, "unbounded" when
    the fan is not complete enough to bound it.
    """
    coeffs = tuple(Fraction(c) for c in coeffs)
    if len(coeffs) != len(fan_like.rays):
        raise DomainError("dimension_mismatch", "one coefficient per ray required")
    ineqs = [(tuple(v), -c) for v, c in zip(fan_like.rays, coeffs)]
    return Polytope.from_hrep(ineqs, dim=fan_like.dim)


def projective_bundle_fan(base, summand_coeffs):
    """The fan of a projectivized sum of line bundles over a toric base.

    base is a StackyFan; summand_coeffs lists one divisor coefficient vector
    per line bundle summand (indexed by base coordinates).  The result's
    coordinates are the lifted base coordinates in their original order,
    followed by one fibre coordinate per summand, the first summand's ray
    being minus the sum of the others.  Twisting every summand by the same
    divisor does not change the output.
    """
    k = len(summand_coeffs)
    if k < 2:
        raise DomainError("bundle_rank", "need at least two summands")
    coeffs = [tuple(Fraction(c) for c in cs) for cs in summand_coeffs]
    nb = len(base.rays)
    for cs in coeffs:
        if len(cs) != nb:
            raise DomainError("dimension_mismatch", "coefficients per base coordinate")
    d = base.dim
    extra = k - 1
    lifted = []
    for i, v in enumerate(base.rays):
        twist = tuple(-(coeffs[m][i] - coeffs[0][i]) for m in range(1, k))
        if any(t.denominator != 1 for t in twist):
            raise DomainError("not_cartier", "summand difference is not integral")
        lifted.append(tuple(v) + tuple(int(t) for t in twist))
    fibre = [tuple(0 for _ in range(d)) + tuple(-1 for _ in range(extra))]
    for m in range(extra):
        fibre.append(
            tuple(0 for _ in range(d)) + tuple(1 if p == m else 0 for p in range(extra))
        )
    rays = lifted + fibre
    max_cones = []
    for sigma in base.max_cones:
        for omit in range(k):
            fibre_idx = [nb + m for m in range(k) if m != omit]
            max_cones.append(tuple(sorted(list(sigma) + fibre_idx)))
    return StackyFan(d + extra, rays, max_cones)
