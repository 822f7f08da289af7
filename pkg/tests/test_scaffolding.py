import pytest

from fanoscaffold.errors import DomainError
from fanoscaffold.forward import ConvexPartitionWithBasis, przyjalkowski
from fanoscaffold.polyhedra import Polytope
from fanoscaffold.scaffolding import (
    Scaffolding,
    Strut,
    dual_cone_check,
    laurent_from_scaffolding,
    product_fan,
    product_structure,
    scaffolding_from_forward,
    strut_cone,
    strut_polytope,
    unit_strut_basis,
    validate_scaffolding,
)
from fanoscaffold.toric import GitData


def cubic_data():
    git = GitData(1, 4, [(1,), (1,), (1,), (1,)], (1,))
    part = ConvexPartitionWithBasis((0,), [(1, 2, 3)], (), (3,))
    return git, part


def bundle_data():
    rows = [(1, 0, 0, 1, -1, 1, 1), (0, 1, 1, 0, 1, 0, 0)]
    chars = [tuple(row[j] for row in rows) for j in range(7)]
    git = GitData(2, 7, chars, (1, 1))
    part = ConvexPartitionWithBasis((0, 1), [(2, 3), (4, 5)], (6,), (2, 4))
    return git, part


def hexagon():
    return Polytope.from_points(
        [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    )


def dp6_triangle_scaffolding():
    shape = product_fan([(0, 1)])
    # indicator of each ray, in the fan's canonical ray order
    struts = [
        Strut(tuple(1 if k == i else 0 for k in range(3)))
        for i in range(3)
    ]
    return Scaffolding(shape, 0, struts, hexagon())


def test_product_fan_p2():
    fan = product_fan([(0, 1)])
    assert fan.rays == ((-1, -1), (0, 1), (1, 0))
    assert len(fan.max_cones) == 3
    assert fan.is_complete()


def test_product_fan_p1xp1():
    fan = product_fan([(0,), (1,)])
    assert fan.rays == ((-1, 0), (0, -1), (0, 1), (1, 0))
    assert len(fan.max_cones) == 4
    assert fan.is_complete()


def test_product_structure_roundtrip():
    fan = product_fan([(0, 1), (2,)])
    assert product_structure(fan) == ((0, 1), (2,))


def test_product_structure_rejects_other_fans():
    from fanoscaffold.polyhedra import Fan

    f1 = Fan(2, [(1, 0), (0, 1), (-1, 1), (0, -1)],
             [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(DomainError) as exc:
        product_structure(f1)
    assert exc.value.kind == "unsupported_shape"


def test_cubic_scaffolding():
    git, part = cubic_data()
    scaf = scaffolding_from_forward(git, part)
    assert scaf.u == 0
    assert scaf.shape.rays == ((-1, -1), (0, 1), (1, 0))
    assert scaf.struts == (Strut((1, 1, 1)),)
    # target is the Newton polytope of (1+x+y)^3/(xy)
    assert scaf.target.vertices == Polytope.from_points(
        [(-1, -1), (2, -1), (-1, 2)]
    ).vertices
    ok, report = validate_scaffolding(scaf)
    assert ok
    assert report["vertexless_struts"] == ()
    assert dual_cone_check(scaf)


def test_bundle_scaffolding():
    git, part = bundle_data()
    scaf = scaffolding_from_forward(git, part)
    assert scaf.u == 1
    assert scaf.shape.rays == ((-1, 0), (0, -1), (0, 1), (1, 0))
    assert scaf.struts == (
        Strut((0, -1, 1, 1), (-1,)),
        Strut((1, 1, 0, 0), (0,)),
        Strut((0, 0, 0, 0), (1,)),
    )
    ok, report = validate_scaffolding(scaf)
    assert ok
    assert report["unit_basis"] == (2,)
    assert dual_cone_check(scaf)


def test_roundtrip_forward_scaffolding_laurent():
    for git, part in (cubic_data(), bundle_data()):
        scaf = scaffolding_from_forward(git, part)
        assert laurent_from_scaffolding(scaf) == przyjalkowski(git, part)


def test_dp6_triangles_valid():
    scaf = dp6_triangle_scaffolding()
    ok, report = validate_scaffolding(scaf)
    assert ok
    assert report["vertexless_struts"] == ()
    assert dual_cone_check(scaf)


def test_dp6_shrunk_strut_agrees_on_both_routes():
    shape = product_fan([(0, 1)])
    struts = [
        Strut((0, 0, 0)),
        Strut((0, 1, 0)),
        Strut((0, 0, 1)),
    ]
    scaf = Scaffolding(shape, 0, struts, hexagon())
    ok, _ = validate_scaffolding(scaf)
    assert not ok
    assert not dual_cone_check(scaf)


def test_vertexless_strut_reported():
    shape = product_fan([(0, 1)])
    struts = [
        Strut((1, 0, 0)),
        Strut((0, 1, 0)),
        Strut((0, 0, 1)),
        Strut((0, 0, 0)),  # just the origin, interior to the hexagon
    ]
    scaf = Scaffolding(shape, 0, struts, hexagon())
    ok, report = validate_scaffolding(scaf)
    assert ok
    assert report["vertexless_struts"] == (3,)
    assert dual_cone_check(scaf)


def test_empty_strut_tolerated():
    shape = product_fan([(0, 1)])
    struts = [
        Strut((1, 0, 0)),
        Strut((0, 1, 0)),
        Strut((0, 0, 1)),
        Strut((-1, 0, 0)),  # no sections at all
    ]
    scaf = Scaffolding(shape, 0, struts, hexagon())
    ok, report = validate_scaffolding(scaf)
    assert ok
    assert 3 in report["vertexless_struts"]
    assert dual_cone_check(scaf)


def test_unit_basis_required():
    git, part = bundle_data()
    scaf = scaffolding_from_forward(git, part)
    # drop the unit strut: the shifts no longer contain a basis
    bad = Scaffolding(scaf.shape, scaf.u, scaf.struts[:2], scaf.target)
    assert unit_strut_basis(bad) is None
    ok, report = validate_scaffolding(bad)
    assert not ok
    assert any("unit" in msg for msg in report["failures"])


def test_strut_cone_contains_height_axis():
    scaf = dp6_triangle_scaffolding()
    cone = strut_cone(scaf, 0)
    assert cone.contains((0, 0, 1))
    piece = strut_polytope(scaf, 0)
    for v in piece.vertices:
        assert cone.dual().contains(tuple(v) + (1,))


def test_structural_errors():
    shape = product_fan([(0, 1)])
    with pytest.raises(DomainError) as exc:
        Scaffolding(shape, 0, [Strut((1, 0))], hexagon())
    assert exc.value.kind == "bad_scaffolding"
    with pytest.raises(DomainError):
        Scaffolding(shape, 1, [Strut((1, 0, 0))], hexagon())
    with pytest.raises(DomainError):
        Scaffolding(shape, 0, [], hexagon())
