from fractions import Fraction

import pytest

from fanoscaffold.errors import DomainError
from fanoscaffold.polyhedra import Fan, Polytope
from fanoscaffold.toric import (
    GitData,
    PLFunction,
    StackyFan,
    covers,
    git_to_stacky_fan,
    in_chamber_interior,
    irrelevant_collection,
    is_ample,
    is_nef,
    projective_bundle_fan,
    secondary_fan,
    sections_polytope,
    stacky_fan_to_git,
)


def p2_git():
    return GitData(1, 3, [(1,), (1,), (1,)], (1,))


def p1p1_git():
    return GitData(2, 4, [(1, 0), (1, 0), (0, 1), (0, 1)], (1, 1))


def weighted_flag_git():
    # Weights of a rank two picture with a genuine chamber structure:
    # columns (1,0), (0,1), (1,0), (0,1), (1,0), (1,1), (1,-1).
    chars = [(1, 0), (0, 1), (1, 0), (0, 1), (1, 0), (1, 1), (1, -1)]
    return GitData(2, 7, chars, (3, 2))


def test_git_validation():
    with pytest.raises(DomainError) as ei:
        GitData(1, 2, [(1,), (-1,)], (1,))
    assert ei.value.kind == "not_pointed"
    with pytest.raises(DomainError) as ei:
        GitData(2, 2, [(1, 0), (2, 0)], (1, 0))
    assert ei.value.kind == "not_full_rank"
    with pytest.raises(DomainError) as ei:
        GitData(2, 3, [(1, 0), (0, 1), (1, 1)], (-1, 0))
    assert ei.value.kind == "omega_outside"
    with pytest.raises(DomainError) as ei:
        GitData(1, 2, [(1,), (0,)], (1,))
    assert ei.value.kind == "zero_character"


def test_covers():
    git = weighted_flag_git()
    # (3,2) = 5/2 * (1,1) + 1/2 * (1,-1): strictly positive coefficients.
    assert covers(git, (5, 6))
    assert covers(git, (0, 1))
    assert not covers(git, (0,))
    assert not covers(git, (5,))
    # Adding a coordinate that cannot take a positive coefficient breaks it:
    # (3,2) = a(1,0) + b(0,1) + c(1,-1) wants a,b,c > 0, fine: a=3-c, b=2+c.
    assert covers(git, (0, 1, 6))


def test_irrelevant_collection_p2():
    git = p2_git()
    all_covers, minimal = irrelevant_collection(git)
    assert len(all_covers) == 7
    assert minimal == ((0,), (1,), (2,))


def test_git_to_stacky_fan_p2():
    sf = git_to_stacky_fan(p2_git())
    assert sf.dim == 2
    assert sf.rays == ((-1, -1), (1, 0), (0, 1))
    assert sf.max_cones == ((0, 1), (0, 2), (1, 2))
    assert sf.fan().is_complete()


def test_git_to_stacky_fan_p1p1():
    sf = git_to_stacky_fan(p1p1_git())
    assert sf.rays == ((-1, 0), (1, 0), (0, -1), (0, 1))
    assert sf.max_cones == ((0, 2), (0, 3), (1, 2), (1, 3))
    assert sf.fan().is_complete()


def test_stacky_fan_to_git_round_trip():
    sf = git_to_stacky_fan(p1p1_git())
    git = stacky_fan_to_git(sf)
    assert git.r == 2 and git.R == 4
    assert git.characters == ((1, 1, 0, 0)[:2],) * 0 + (
        (1, 0),
        (1, 0),
        (0, 1),
        (0, 1),
    )
    assert git.omega == (1, 1)
    sf2 = git_to_stacky_fan(git)
    assert sf2 == sf
    # Same round trip through the projective plane.
    sfp = git_to_stacky_fan(p2_git())
    gitp = stacky_fan_to_git(sfp)
    assert gitp.characters == ((1,), (1,), (1,))
    assert git_to_stacky_fan(gitp) == sfp


def test_secondary_fan_chambers():
    git = weighted_flag_git()
    chambers = secondary_fan(git)
    assert len(chambers) == 3
    ray_sets = {c.rays for c in chambers}
    assert ray_sets == {
        ((0, 1), (1, 1)),
        ((1, 0), (1, 1)),
        ((1, -1), (1, 0)),
    }
    simple = secondary_fan(p1p1_git())
    assert len(simple) == 1
    assert simple[0].rays == ((0, 1), (1, 0))


def test_in_chamber_interior():
    git = weighted_flag_git()
    assert in_chamber_interior(git, (3, 2))
    assert not in_chamber_interior(git, (1, 1))
    assert not in_chamber_interior(git, (1, 0))
    assert not in_chamber_interior(git, (0, 0))
    assert not in_chamber_interior(git, (-1, 0))
    assert in_chamber_interior(git, (3, -1))
    assert in_chamber_interior(p1p1_git(), (2, 5))


def test_pl_function_p2():
    sf = git_to_stacky_fan(p2_git())
    hyper = PLFunction(sf, (1, 0, 0))
    assert hyper.is_cartier() and hyper.is_nef() and hyper.is_ample()
    p = sections_polytope(sf, (1, 0, 0))
    assert set(p.vertices) == {(0, 0), (1, 0), (0, 1)}
    anti = sections_polytope(sf, (1, 1, 1))
    assert len(anti.integral_points()) == 10
    assert is_ample(sf, (1, 1, 1))
    trivial = PLFunction(sf, (0, 0, 0))
    assert trivial.is_nef() and not trivial.is_ample()


def test_pl_function_needs_consistency():
    # A non-simplicial cone forces the values to be affine on its rays.
    sf = StackyFan(
        2,
        [(1, 0), (0, 1), (-1, 0), (0, -1)],
        [(0, 1, 2, 3)],
    )
    PLFunction(sf, (1, 1, -1, -1))
    with pytest.raises(DomainError) as ei:
        PLFunction(sf, (1, 0, 0, 0))
    assert ei.value.kind == "not_q_cartier"


def test_projective_bundle_tower_to_f2():
    # Stage one: a projectivized rank two sum over a point gives the line.
    point = StackyFan(0, [], [()])
    line = projective_bundle_fan(point, [(), ()])
    assert line.dim == 1
    assert line.rays == ((-1,), (1,))
    assert line.max_cones == ((0,), (1,))
    # Stage two: O + O(-2), where O(1) is the divisor of the first fibre
    # coordinate, gives the second Hirzebruch surface.
    f2 = projective_bundle_fan(line, [(0, 0), (-2, 0)])
    assert f2.rays == ((-1, 2), (1, 0), (0, -1), (0, 1))
    assert f2.max_cones == ((0, 2), (0, 3), (1, 2), (1, 3))
    assert f2.fan().is_complete()
    # The twist convention only depends on summand differences.
    f2b = projective_bundle_fan(line, [(3, 1), (1, 1)])
    assert f2b == f2


def test_bundle_fan_nef_ample():
    point = StackyFan(0, [], [()])
    line = projective_bundle_fan(point, [(), ()])
    f2 = projective_bundle_fan(line, [(0, 0), (-2, 0)])
    # Divisor of the ray (0,1): the section with self-intersection -2.
    idx_up = f2.rays.index((0, 1))
    idx_down = f2.rays.index((0, -1))
    up = [0] * 4
    up[idx_up] = 1
    down = [0] * 4
    down[idx_down] = 1
    assert not is_nef(f2, up)
    assert is_nef(f2, down) and not is_ample(f2, down)
    assert sections_polytope(f2, down).integral_points() == (
        (0, 0),
        (0, 1),
        (1, 1),
        (2, 1),
    )


def test_sections_polytope_errors():
    sf = git_to_stacky_fan(p2_git())
    with pytest.raises(DomainError) as ei:
        sections_polytope(sf, (-1, 0, 0))
    assert ei.value.kind == "empty_polytope"
    half = StackyFan(2, [(1, 0), (0, 1)], [(0, 1)])
    with pytest.raises(DomainError) as ei:
        sections_polytope(half, (0, 0))
    assert ei.value.kind == "unbounded"
