"""A corpus of worked examples exercising the whole pipeline.

Each fixture is a small dict of ready-made objects: GIT data with a
partition, a scaffolding, a Laurent model, a polytope, or a dual-vector
collection, depending on what the example is about.  Vertex lists and
weight matrices are stored verbatim; derived objects are built through the
public constructors so the corpus stays consistent with the library.
"""

from .amenable import scaffolding_from_amenable
from .forward import ConvexPartitionWithBasis, przyjalkowski
from .mutations import mutate_scaffolding, segment_factor
from .polyhedra import Polytope, normal_fan
from .scaffolding import Scaffolding, Strut, product_fan, scaffolding_from_forward
from .inversion import anticanonical_scaffolding
from .toric import GitData

HEXAGON = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
PENTAGON = ((0, 1), (-1, 1), (-1, 0), (0, -1), (2, -1))
HEPTAGON = ((-1, 2), (1, 1), (3, -1), (3, -2), (1, -2), (-1, -1), (-2, 1))


def cubic_surface():
    """One basis column, one group of three: the plane cubic model."""
    git = GitData(1, 4, [(1,)] * 4, (1,))
    part = ConvexPartitionWithBasis((0,), ((1, 2, 3),), (), (3,))
    return {
        "description": "cubic surface model from a single bracketed group",
        "git": git,
        "partition": part,
        "laurent": przyjalkowski(git, part),
        "polytope": Polytope.from_points([(-1, -1), (2, -1), (-1, 2)]),
        "scaffolding": scaffolding_from_forward(git, part),
    }


def projective_bundle():
    """Rank-two quotient with one shift column and two groups of two."""
    chars = [(1, 0), (0, 1), (0, 1), (1, 0), (-1, 1), (1, 0), (1, 0)]
    git = GitData(2, 7, chars, (1, 1))
    part = ConvexPartitionWithBasis((0, 1), ((2, 3), (4, 5)), (6,), (2, 4))
    return {
        "description": "projective bundle model with a shift column",
        "git": git,
        "partition": part,
        "laurent": przyjalkowski(git, part),
        "scaffolding": scaffolding_from_forward(git, part),
    }


def dp6_triangles():
    """The hexagon presented by three divisors on the plane."""
    shape = product_fan([(0, 1)])
    struts = (Strut((1, 0, 0)), Strut((0, 1, 0)), Strut((0, 0, 1)))
    target = Polytope.from_points(HEXAGON)
    chars = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    git = GitData(3, 6, chars, (1, 1, 1))
    part = ConvexPartitionWithBasis((0, 1, 2), ((3, 4, 5),), (), (5,))
    return {
        "description": "hexagon scaffolded by three divisors on the plane",
        "scaffolding": Scaffolding(shape, 0, struts, target),
        "git": git,
        "partition": part,
        "laurent": przyjalkowski(git, part),
    }


def dp6_squares():
    """The hexagon presented by two unit squares."""
    shape = product_fan([(0,), (1,)])
    struts = (Strut((0, 1, 0, 1)), Strut((1, 0, 1, 0)))
    target = Polytope.from_points(HEXAGON)
    chars = [(1, 0), (0, 1), (0, 1), (1, 0), (0, 1), (1, 0)]
    git = GitData(2, 6, chars, (1, 1))
    part = ConvexPartitionWithBasis((0, 1), ((2, 3), (4, 5)), (), (2, 5))
    return {
        "description": "hexagon scaffolded by two squares on a product of lines",
        "scaffolding": Scaffolding(shape, 0, struts, target),
        "git": git,
        "partition": part,
        "laurent": przyjalkowski(git, part),
    }


def dp6_squares_mutated():
    """The square scaffolding transported through one mutation."""
    base = dp6_squares()["scaffolding"]
    w = (1, 0)
    factor = segment_factor(w)
    return {
        "description": "square scaffolding of the hexagon after one mutation",
        "scaffolding": mutate_scaffolding(base, w, factor),
        "mutation": {"w": w, "factor": factor},
    }


def rank_three_threefold():
    """Rank-three threefold data with one shift column."""
    chars = [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 0, 0),
        (1, 1, 0),
        (0, 0, 1),
        (1, 1, 1),
    ]
    git = GitData(3, 7, chars, (3, 2, 1))
    part = ConvexPartitionWithBasis((0, 1, 2), ((4, 5, 6),), (3,), (4,))
    return {
        "description": "rank-three threefold with one group of three",
        "git": git,
        "partition": part,
        "laurent": przyjalkowski(git, part),
        "scaffolding": scaffolding_from_forward(git, part),
    }


def shifted_fourfold():
    """Fourfold model whose three shift columns stay honest variables."""
    chars = [(1, 0), (0, 1), (1, 0), (0, 1), (1, 0), (1, 1), (1, -1)]
    git = GitData(2, 7, chars, (3, 2))
    part = ConvexPartitionWithBasis((0, 1), ((5, 6),), (2, 3, 4), (5,))
    return {
        "description": "fourfold with three shift columns and one group",
        "git": git,
        "partition": part,
        "laurent": przyjalkowski(git, part),
        "scaffolding": scaffolding_from_forward(git, part),
    }


def dp7_anticanonical():
    """A reflexive pentagon carrying its boundary scaffolding."""
    polytope = Polytope.from_points(PENTAGON)
    return {
        "description": "reflexive pentagon with its boundary scaffolding",
        "polytope": polytope,
        "scaffolding": anticanonical_scaffolding(polytope),
    }


def square_product():
    """The square presented by one boundary strut on a product of lines."""
    shape = product_fan([(0,), (1,)])
    struts = (Strut((1, 1, 1, 1)),)
    target = Polytope.from_points([(-1, -1), (-1, 1), (1, -1), (1, 1)])
    return {
        "description": "square scaffolded by its boundary on a product of lines",
        "polytope": target,
        "scaffolding": Scaffolding(shape, 0, struts, target),
    }


def circulant_two():
    """Rank-two circulant weight data on five columns."""
    chars = [(1, 0), (0, 1), (2, 1), (1, 2), (1, -1)]
    git = GitData(2, 5, chars, (1, 1))
    part = ConvexPartitionWithBasis((0, 1), ((2, 3, 4),), (), (4,))
    return {
        "description": "five-column circulant quotient with one group of three",
        "git": git,
        "partition": part,
        "laurent": przyjalkowski(git, part),
        "scaffolding": scaffolding_from_forward(git, part),
    }


def circulant_three():
    """Rank-three circulant weight data on six columns."""
    chars = [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (2, 1, 1),
        (1, 2, 1),
        (1, 1, 2),
    ]
    git = GitData(3, 6, chars, (1, 1, 1))
    part = ConvexPartitionWithBasis((0, 1, 2), ((3, 4, 5),), (), (5,))
    return {
        "description": "six-column circulant quotient with one group of three",
        "git": git,
        "partition": part,
        "laurent": przyjalkowski(git, part),
        "scaffolding": scaffolding_from_forward(git, part),
    }


def circulant_five():
    """Five boundary-plus-vertex divisors on the pentagon's normal fan."""
    shape = normal_fan(Polytope.from_points(PENTAGON))
    struts = tuple(
        Strut(tuple(1 + (1 if k == b else 0) for k in range(5))) for b in range(5)
    )
    target = Polytope.from_points(HEPTAGON)
    return {
        "description": "heptagon scaffolded by five divisors on a pentagon fan",
        "scaffolding": Scaffolding(shape, 0, struts, target),
        "weights": ((0, 1), (-1, -1)),
    }


def amenable_quadrics():
    """Four-space data whose collection cuts out two quadric binomials."""
    git = GitData(1, 5, [(1,)] * 5, (1,))
    part = ConvexPartitionWithBasis((0,), ((1, 2), (3, 4)))
    vectors = ((-1, -1, 0, 2), (0, 0, -1, -1))
    return {
        "description": "four-space collection presenting a two-stage tower",
        "git": git,
        "partition": part,
        "vectors": vectors,
        "scaffolding": scaffolding_from_amenable(git, part, vectors),
    }


FIXTURES = {
    "cubic-surface": cubic_surface,
    "projective-bundle": projective_bundle,
    "dp6-triangles": dp6_triangles,
    "dp6-squares": dp6_squares,
    "dp6-squares-mutated": dp6_squares_mutated,
    "rank-three-threefold": rank_three_threefold,
    "shifted-fourfold": shifted_fourfold,
    "dp7-anticanonical": dp7_anticanonical,
    "square-product": square_product,
    "circulant-two": circulant_two,
    "circulant-three": circulant_three,
    "circulant-five": circulant_five,
    "amenable-quadrics": amenable_quadrics,
}


def fixture(name):
    """Build one named fixture dict."""
    return FIXTURES[name]()


def fixture_names():
    return tuple(sorted(FIXTURES))
