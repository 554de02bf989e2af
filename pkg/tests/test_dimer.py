import itertools
from importlib import resources

import pytest

from nclg import dimer as dm
from nclg.dimer import (
    Dimer,
    dimer_from_text,
    dimer_isomorphic,
    dimer_to_text,
    quiver_from_triangulation,
)
from nclg.potential import build_reduction_system, cyclic_derivative, euler_identity_check, is_central, normal_form
from nclg.quiver import AlgebraElement, Quiver
from nclg.scalars import RATIONALS

R = RATIONALS


def fixture(name):
    text = resources.files("nclg").joinpath("data/%s" % name).read_text()
    return dimer_from_text(text)


@pytest.fixture
def conifold():
    return fixture("conifold.dm")


@pytest.fixture
def conifold_sphere():
    return fixture("conifold_sphere.dm")


@pytest.fixture
def pentagon():
    return fixture("pentagon.dm")


@pytest.fixture
def hexagon():
    return fixture("hexagon.dm")


@pytest.fixture
def torus_square():
    return fixture("torus_square.dm")


ALL = ["conifold.dm", "conifold_sphere.dm", "pentagon.dm", "hexagon.dm", "torus_square.dm"]


# -- validation ---------------------------------------------------------------


def test_validate_conifold(conifold):
    rep = conifold.validate()
    assert rep.ok and rep.genus == 1


def test_validate_missing_negative_face(conifold):
    broken = Dimer(conifold.quiver, [("+", ("x", "y", "z", "w"))])
    rep = broken.validate()
    assert not rep.ok
    assert any(v.kind == "face-cover" and "negative" in v.detail for v in rep.violations)


def test_validate_pentagon(pentagon):
    rep = pentagon.validate()
    assert rep.ok and rep.genus == 2


@pytest.mark.parametrize("name", ALL)
def test_validate_all_fixtures(name):
    rep = fixture(name).validate()
    assert rep.ok, rep.violations


# -- zigzag cycles --------------------------------------------------------------


def test_pentagon_three_zigzag_cycles(pentagon):
    cycles = pentagon.zigzag_cycles()
    assert len(cycles) == 3
    zigs = sorted(a for c in cycles for a in c.zigs())
    zags = sorted(a for c in cycles for a in c.zags())
    assert zigs == ["a", "b", "c", "d", "e"]
    assert zags == ["a", "b", "c", "d", "e"]


def test_conifold_sphere_two_zigzag_cycles(conifold_sphere):
    cycles = conifold_sphere.zigzag_cycles()
    assert len(cycles) == 2
    assert all(len(c.arrows) == 4 for c in cycles)


def test_every_arrow_once_per_slot(conifold):
    cycles = conifold.zigzag_cycles()
    zigs = sorted(a for c in cycles for a in c.zigs())
    zags = sorted(a for c in cycles for a in c.zags())
    assert zigs == ["w", "x", "y", "z"] and zags == ["w", "x", "y", "z"]


# -- duality --------------------------------------------------------------------


def test_dual_of_sphere_is_conifold_quiver(conifold_sphere, conifold):
    dd = conifold_sphere.dual()
    assert len(dd.quiver.vertices) == 2
    assert sorted(dd.quiver.arrows) == ["w", "x", "y", "z"]
    # two arrows each way between the two vertices, mirroring x,z vs y,w
    tails = {a: dd.quiver.tail(a) for a in dd.quiver.arrows}
    assert tails["x"] == tails["z"] and tails["y"] == tails["w"]
    assert tails["x"] != tails["y"]
    assert dimer_isomorphic(dd, conifold)


def test_dual_pentagon_shape(pentagon):
    dd = pentagon.dual()
    assert len(dd.quiver.vertices) == 3
    assert len(dd.quiver.arrows) == 5
    rep = dd.validate()
    assert rep.ok and rep.genus == 1


@pytest.mark.parametrize("name", ALL)
def test_dual_is_involution(name):
    d = fixture(name)
    dd = d.dual().dual()
    assert dimer_isomorphic(dd, d)


@pytest.mark.parametrize("name", ALL)
def test_dual_is_valid_dimer(name):
    d = fixture(name).dual()
    assert d.validate().ok


# -- spacetime potential ---------------------------------------------------------


def test_conifold_phi(conifold):
    phi = conifold.spacetime_potential()
    q = conifold.quiver
    expected_terms = {
        phi.canonical(q.parse_word("x.y.z.w")),
        phi.canonical(q.parse_word("w.z.y.x")),
    }
    assert set(phi.terms) == expected_terms
    assert phi.terms[phi.canonical(q.parse_word("x.y.z.w"))] == 1
    assert phi.terms[phi.canonical(q.parse_word("w.z.y.x"))] == -1


def test_pentagon_phi_verbatim(pentagon):
    phi = pentagon.spacetime_potential()
    q = pentagon.quiver
    assert phi.terms[phi.canonical(q.parse_word("a.b.e.c.d"))] == 1
    assert phi.terms[phi.canonical(q.parse_word("a.e.d.c.b"))] == -1
    assert len(phi.terms) == 2


def test_relations_are_face_complements(conifold):
    """dPhi/de = r_{e,+} - r_{e,-} with e*r the face words through e."""
    q = conifold.quiver
    phi = conifold.spacetime_potential()
    for e in q.arrow_order:
        rel = cyclic_derivative(phi, e)
        xe = AlgebraElement.from_path(q, R, q.arrow_path(e), cap=8)
        prod = xe * rel  # e * (r+ - r-)
        back = {}
        for p, c in prod.terms.items():
            key = phi.canonical(p)
            back[key] = back.get(key, 0) + c
        plus = phi.canonical(q.parse_word("x.y.z.w"))
        minus = phi.canonical(q.parse_word("w.z.y.x"))
        assert back.get(plus) == 1 and back.get(minus) == -1


def test_phi_euler_identity(conifold, pentagon, hexagon):
    for d in (conifold, pentagon, hexagon):
        ok, _ = euler_identity_check(d.spacetime_potential())
        assert ok


# -- worldsheet potential ---------------------------------------------------------


def test_conifold_worldsheet_pinned(conifold):
    w = conifold.worldsheet_potential()
    q = conifold.quiver
    assert set(w.terms) == {q.parse_word("x.y.z.w"), q.parse_word("w.z.y.x")}


def test_conifold_w_central_in_jacobi(conifold):
    rels = conifold.relations(cap=8)
    system = build_reduction_system(rels, 8)
    w = conifold.worldsheet_potential(cap=8)
    assert is_central(w, system).status == "CENTRAL-UP-TO-8"


def test_pentagon_worldsheet_one_term_per_vertex_central(pentagon):
    w = pentagon.worldsheet_potential(cap=10)
    assert len(w.terms) == 1  # single vertex downstairs
    system = build_reduction_system(pentagon.relations(cap=10), 10)
    assert is_central(w, system).status == "CENTRAL-UP-TO-10"


def test_pentagon_dual_worldsheet_three_terms_central(pentagon):
    dd = pentagon.dual()
    w = dd.worldsheet_potential(cap=10)
    assert len(w.terms) == 3
    assert sorted(len(p.arrows) for p in w.terms) == [5, 5, 5]
    system = build_reduction_system(dd.relations(cap=10), 10)
    assert is_central(w, system).status == "CENTRAL-UP-TO-10"


def test_worldsheet_face_choice_equal_mod_relations(pentagon):
    base = pentagon.worldsheet_potential(cap=10)
    # the only vertex is u; pick the anchored negative-face reading instead
    other = pentagon.worldsheet_potential(minima={"u": ("-", "a")}, cap=10)
    assert base != other
    system = build_reduction_system(pentagon.relations(cap=10), 10)
    assert normal_form(base - other, system).is_zero()


def test_conifold_computed_vs_pinned_worldsheet(conifold):
    pinned = conifold.worldsheet_potential(cap=8)
    computed = Dimer(conifold.quiver, [(f.sign, f.word) for f in conifold.faces]).worldsheet_potential(cap=8)
    assert len(computed.terms) == 2
    system = build_reduction_system(conifold.relations(cap=8), 8)
    assert normal_form(pinned - computed, system).is_zero()


# -- perfect matchings ------------------------------------------------------------


def brute_force_matchings(d):
    arrows = sorted(d.quiver.arrows)
    out = []
    for r in range(len(arrows) + 1):
        for combo in itertools.combinations(arrows, r):
            s = set(combo)
            if all(sum(1 for a in f.word if a in s) == 1 for f in d.faces):
                out.append(frozenset(s))
    return out


def test_conifold_matchings_are_singletons(conifold):
    found, truncated = conifold.perfect_matchings()
    assert not truncated
    assert sorted(found, key=sorted) == sorted(
        [frozenset({a}) for a in "wxyz"], key=sorted
    )
    assert sorted(found, key=sorted) == sorted(brute_force_matchings(conifold), key=sorted)


def test_pentagon_matchings_brute_force(pentagon):
    found, _ = pentagon.perfect_matchings()
    assert sorted(found, key=sorted) == sorted(brute_force_matchings(pentagon), key=sorted)


def test_no_matching_dimer():
    q = Quiver(
        vertices=["u", "v"],
        arrows=[("e1", "u", "v"), ("e2", "v", "u"), ("e3", "u", "v"), ("e4", "v", "u")],
    )
    d = Dimer(
        q,
        [
            ("+", ("e2", "e1")),
            ("+", ("e4", "e3")),
            ("-", ("e2", "e3", "e4", "e1")),
        ],
    )
    found, _ = d.perfect_matchings()
    assert found == []


def test_grading_by_matching(conifold):
    deg = conifold.grade_by_matching(frozenset({"x"}))
    assert deg["x"] == 2 and deg["y"] == deg["z"] == deg["w"] == 0
    phi = conifold.spacetime_potential()
    for p in phi.terms:
        assert sum(deg[a] for a in p.arrows) == 2
    w = conifold.worldsheet_potential()
    for p in w.terms:
        assert sum(deg[a] for a in p.arrows) == 2


def test_grading_rejects_non_matching(conifold):
    with pytest.raises(ValueError):
        conifold.grade_by_matching(frozenset({"x", "y"}))


# -- zigzag consistency ------------------------------------------------------------


def test_conifold_consistent(conifold):
    v = conifold.zigzag_consistent(depth=20)
    assert v.status in ("CONSISTENT", "CONSISTENT-UP-TO-20")
    assert v.status.startswith("CONSISTENT")


def test_sphere_presentation_inconsistent(conifold_sphere):
    v = conifold_sphere.zigzag_consistent(depth=20)
    assert v.status == "INCONSISTENT"
    assert v.witness is not None


def test_depth_zero_trivially_consistent(conifold):
    assert conifold.zigzag_consistent(depth=0).status == "CONSISTENT-UP-TO-0"


def test_hexagon_consistency(hexagon):
    v = hexagon.zigzag_consistent(depth=20)
    assert v.status in ("CONSISTENT", "INCONSISTENT", "INCONCLUSIVE")
    # the three-loop hexagonal dimer is the standard consistent torus example
    assert v.status == "CONSISTENT"


def test_pentagon_consistency_bounded(pentagon):
    v = pentagon.zigzag_consistent(depth=30)
    assert v.status in ("CONSISTENT-UP-TO-30", "INCONCLUSIVE", "INCONSISTENT")


# -- file format --------------------------------------------------------------------


@pytest.mark.parametrize("name", ALL)
def test_roundtrip_bit_exact(name):
    d = fixture(name)
    text1 = dimer_to_text(d)
    d2 = dimer_from_text(text1)
    text2 = dimer_to_text(d2)
    assert text1 == text2
    assert d2 == d


def test_parse_error_has_line_number():
    with pytest.raises(dm.DimerParseError) as err:
        dimer_from_text("vertex u\narrow bad\n")
    assert err.value.lineno == 2


# -- triangulations -----------------------------------------------------------------


def test_single_triangle():
    q, phi = quiver_from_triangulation([("e1", "e2", "e3")])
    assert len(q.vertices) == 3 and len(q.arrows) == 3
    assert len(phi.terms) == 1
    (p,) = phi.terms
    assert len(p.arrows) == 3


def test_triangulation_rejects_self_folded():
    with pytest.raises(ValueError):
        quiver_from_triangulation([("e1", "e1", "e2")])


def test_two_triangles_shared_edge():
    q, phi = quiver_from_triangulation([("e1", "e2", "e3"), ("e2", "e1", "e4")])
    assert len(q.vertices) == 4
    assert len(q.arrows) == 6
    assert len(phi.terms) == 2
    ok, _ = euler_identity_check(phi)
    assert ok


def test_triangulation_with_pole_terms():
    tris = [("e1", "e2", "e3"), ("e2", "e1", "e4")]
    q0, _ = quiver_from_triangulation(tris)
    # a loop word around the shared vertices: use two opposite arrows
    word = ["t0_e1_e2", "t1_e2_e1"]
    q, phi = quiver_from_triangulation(tris, pole_terms=[(word, 1, 2)])
    assert len(phi.terms) == 3
    pole_path = phi.canonical(q.path(word))
    coeff = phi.terms[pole_path]
    assert coeff.coefficient(2) == -1
