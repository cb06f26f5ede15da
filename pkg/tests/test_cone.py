from hypothesis import given, settings

from braidcone.cone import cone_ray_masks, is_smooth, rays
from braidcone.corpus import chain, cycle, diamond, glued, vee
from braidcone.poset import bits
from oracles import dim1_upsets, posets


def _names(P, masks):
    return sorted(sorted(P.labels(m), key=int) for m in masks)


def test_diamond_rays():
    P = diamond()
    rs = rays(P)
    assert _names(P, [r.members for r in rs.cone_rays]) == [["2", "3", "4"], ["2", "4"], ["3", "4"], ["4"]]
    # the fan adds no new rays for the diamond: {4} and {2,3,4} already span the wall
    assert len(rs.fan_rays) == 4


def test_vee_fan_adds_dimension_two_upset():
    P = vee()
    rs = rays(P)
    assert _names(P, [r.members for r in rs.cone_rays]) == [["1", "3"], ["2", "3"]]
    assert _names(P, [r.members for r in rs.fan_rays]) == [["1", "3"], ["2", "3"], ["3"]]
    assert {r.dim for r in rs.fan_rays} == {1, 2}


@given(posets(2, 8))
@settings(max_examples=60, deadline=None)
def test_cone_rays_match_definition(P):
    assert {frozenset(bits(m)) for m in cone_ray_masks(P)} == set(dim1_upsets(P))


def test_smoothness():
    assert is_smooth(chain(5)) and is_smooth(vee())
    assert not is_smooth(diamond()) and not is_smooth(cycle(3)) and not is_smooth(glued())
