from fractions import Fraction

import pytest
from hypothesis import given, settings

from braidcone.corpus import (
    EXAMPLES,
    balanced_bipartite_counterexample,
    diamond,
    glued,
    glued_parts,
    vee,
)
from braidcone.errors import (
    IndexMismatchError,
    NotApplicableError,
    NotUpsetError,
    UnderdeterminedError,
)
from braidcone.gorenstein import (
    Labeling,
    LinearWitness,
    Verdict,
    chamber_labeling,
    check_labeling,
    crepant_status,
    glue_labelings,
    gorenstein_status,
    solve_labeling,
    status_via_blocks,
)
from braidcone.poset import bits, dual, induced, is_bounded
from oracles import gorenstein_oracle, posets


def _by_name(P, L):
    return dict(zip(P.names, L.phi))


def test_diamond_labeling_is_chamber_labeling():
    cert = gorenstein_status(diamond())
    assert cert.verdict is Verdict.GORENSTEIN and cert.index == 1 and cert.crepant
    assert cert.labeling.phi == (-1, 0, 0, 1)


def test_vee_solved_system():
    cert = gorenstein_status(vee())
    assert cert.labeling.phi == (-1, -1, 2) and not cert.crepant


def test_glued_labeling_both_ways():
    P = glued()
    expected = {"a": -1, "b": 0, "c~x": -1, "d": 1, "y": -1, "z": 2}
    assert _by_name(P, gorenstein_status(P).labeling) == expected
    blocks = status_via_blocks(P)
    assert blocks.method == "blocks" and _by_name(P, blocks.labeling) == expected


def test_glue_labelings_adds_at_shared_point():
    P1, P2 = glued_parts()
    L1, L2 = gorenstein_status(P1).labeling, gorenstein_status(P2).labeling
    L = glue_labelings(L1, L2, P1.index("c"), P2.index("x"))
    assert L.phi == (-1, 0, -1, 1, -1, 2)
    with pytest.raises(IndexMismatchError):
        glue_labelings(L1, L2.scaled(2), 0, 0)


def _valid_witness(P, w: LinearWitness):
    combo = [sum(c * (A >> i & 1) for A, c in zip(w.upsets, w.coefficients)) for i in range(P.n)]
    assert combo == [0] * P.n
    assert sum(c * t for c, t in zip(w.coefficients, w.targets(P.full))) == w.total != 0
    if w.scope is None:
        assert all(P.is_upset(A) for A in w.upsets)
    else:
        sub, elems = induced(P, w.scope)
        pos = {e: k for k, e in enumerate(elems)}
        for A in w.upsets:
            assert A & ~w.scope == 0
            assert sub.is_upset(sum(1 << pos[e] for e in bits(A)))


def test_balanced_bipartite_has_linear_witness():
    P = balanced_bipartite_counterexample()
    cert = gorenstein_status(P)
    assert cert.verdict is Verdict.NOT_Q_GORENSTEIN and cert.labeling is None
    _valid_witness(P, cert.witness)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_examples_against_sympy(name):
    P = EXAMPLES[name]()
    verdict, phi, index = gorenstein_oracle(P)
    cert = gorenstein_status(P)
    assert cert.verdict.value == verdict and cert.index == index
    assert (cert.labeling.phi if cert.labeling else None) == phi


@given(posets(2, 7))
@settings(max_examples=80, deadline=None)
def test_oracle_matches_sympy(P):
    verdict, phi, index = gorenstein_oracle(P)
    cert = gorenstein_status(P)
    assert cert.verdict.value == verdict and cert.index == index
    if phi is not None:
        assert cert.labeling.phi == phi
        assert check_labeling(P, cert.labeling) is None
    else:
        _valid_witness(P, cert.witness)


@given(posets(2, 8))
@settings(max_examples=60, deadline=None)
def test_blocks_match_oracle(P):
    a, b = gorenstein_status(P), status_via_blocks(P)
    assert (a.verdict, a.index, a.labeling) == (b.verdict, b.index, b.labeling)
    if b.witness is not None:
        _valid_witness(P, b.witness)


@given(posets(2, 8))
@settings(max_examples=60, deadline=None)
def test_dual_negates_labeling(P):
    a, b = gorenstein_status(P), gorenstein_status(dual(P))
    assert a.verdict is b.verdict and a.index == b.index
    if a.labeling is not None:
        assert b.labeling == -a.labeling


@given(posets(2, 7))
@settings(max_examples=60, deadline=None)
def test_crepant_iff_bounded(P):
    res = crepant_status(P)
    assert res.crepant == is_bounded(P)
    if not res.crepant and res.violation:
        ray, bad = res.violation
        L = gorenstein_status(P).labeling
        assert L.total(ray) == L.r and L.total(bad) != L.r


def test_crepant_diamond_and_vee():
    assert crepant_status(diamond()).labeling.phi == (-1, 0, 0, 1)
    res = crepant_status(vee())
    assert not res.crepant
    ray, bad = res.violation
    assert vee().labels(bad) == {"3"}


def test_chamber_labeling_requires_bounds():
    with pytest.raises(NotApplicableError):
        chamber_labeling(vee())


def test_check_labeling_reports_violations():
    P = vee()
    assert check_labeling(P, Labeling((-1, -1, 2))) is None
    assert check_labeling(P, Labeling((-1, -1, 2)), fan=True) == 0b100
    assert check_labeling(P, Labeling((0, 0, 1))) == P.full


def test_solve_labeling_errors():
    P = diamond()
    with pytest.raises(NotUpsetError):
        solve_labeling(P, [0b0001])
    with pytest.raises(UnderdeterminedError):
        solve_labeling(P, [0b1000])
    y = solve_labeling(P, [0b1000, 0b1010, 0b1100, 0b1110])
    assert y == tuple(Fraction(v) for v in (-1, 0, 0, 1))


def test_labeling_arithmetic():
    L = Labeling((1, -2, 1))
    assert (-L).phi == (-1, 2, -1)
    assert L.scaled(3) == Labeling((3, -6, 3), 3)
    assert L.total(0b101) == 2 and list(bits(0b101)) == [0, 2]


def test_balanced_bipartite_system_is_inconsistent():
    from braidcone.cone import cone_ray_masks
    P = balanced_bipartite_counterexample()
    assert solve_labeling(P, cone_ray_masks(P)) is None


def test_complete_bipartite_three():
    from braidcone.corpus import complete_bipartite
    cert = gorenstein_status(complete_bipartite(3))
    assert cert.labeling.phi == (-1, -1, -1, 1, 1, 1)


def test_chain_crepant_labeling():
    from braidcone.corpus import chain
    assert crepant_status(chain(5)).labeling.phi == (-1, 0, 0, 0, 1)


def test_glue_two_chains_at_tops_gives_vee():
    from braidcone.corpus import chain
    from braidcone.poset import glue
    C = chain(2)
    L = gorenstein_status(C).labeling
    P, _ = glue(C, 1, C, 1)
    G = glue_labelings(L, L, 1, 1)
    assert P.n == 3 and G.phi == (-1, 2, -1)
    assert check_labeling(P, G) is None and gorenstein_status(P).labeling == G


def test_glue_vee_to_chain_checked_by_enumeration():
    from braidcone.corpus import chain
    from braidcone.poset import glue
    Q, C = vee(), chain(2)
    LQ, LC = gorenstein_status(Q).labeling, gorenstein_status(C).labeling
    for x2 in (0, 1):
        P, _ = glue(Q, 2, C, x2)
        G = glue_labelings(LQ, LC, 2, x2)
        assert G.phi[2] == 2 + LC.phi[x2]
        verdict, phi, _ = gorenstein_oracle(P)
        assert verdict == "gorenstein" and G.phi == phi
