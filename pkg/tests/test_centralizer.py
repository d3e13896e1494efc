import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cybel.bdtriple import empty_triple, enumerate_triples, triple_from_text
from cybel.centralizer import (
    MODEL_NAMES,
    applicable_models,
    centralizer_report,
    constraint_lattice,
    decompose,
    h1_describe,
    lattice_model,
    model_from_json,
    smith_certificate_ok,
)
from cybel.chevalley import build_algebra
from cybel.rmatrix import build_bd, build_dj
from cybel.rootsys import build
from conftest import CORE_TYPES
from oracles import determinantal_divisors

TYPES = CORE_TYPES + [("B", 3), ("C", 2), ("D", 5), ("A", 4)]


@pytest.mark.parametrize("kind,n", TYPES)
def test_models_reproduce_cartan(kind, n):
    rs = build(kind, n)
    models = applicable_models(rs)
    assert "adjoint" in models and "simply-connected" in models
    for name in models:
        assert lattice_model(name, rs).cartan_check(rs)


def test_model_errors():
    with pytest.raises(ValueError):
        lattice_model("sp", build("D", 4))
    with pytest.raises(ValueError):
        lattice_model("spin", build("D", 4))
    with pytest.raises(ValueError):
        model_from_json({"roots": [[1, 0], [0, 1]], "coroots": [[1, 0], [0, 1]]}, build("A", 2))
    m = model_from_json({"name": "x", "roots": [[2, -1], [-1, 2]], "coroots": [[1, 0], [0, 1]]}, build("A", 2))
    assert m.lattice_rank == 2 and m.to_json()["name"] == "x"


@pytest.mark.parametrize("kind,n", TYPES)
def test_dj_centralizer_is_torus(kind, n):
    alg = build_algebra(kind, n)
    r = build_dj(alg)
    for name in applicable_models(alg.rs):
        model = lattice_model(name, alg.rs)
        assert constraint_lattice(r, model) == []
        rep = centralizer_report(r, model)
        assert rep["divisors"] == [] and rep["torus_rank"] == model.lattice_rank
        assert rep["verdict"] == "trivial"


def test_d4_link_divisors():
    alg = build_algebra("D", 4)
    r = build_bd(alg, triple_from_text(alg.rs, "G1=[4];G2=[3];tau=4->3"))
    so = lattice_model("so-even", alg.rs)
    assert constraint_lattice(r, so) == [(0, 0, 0, 2)]
    rep = centralizer_report(r, so)
    assert rep["divisors"] == [2] and rep["group"] == "T x mu_2"
    assert rep["h1"] == ["Kx/(Kx)^2"] and rep["verdict"] == "injects"
    assert centralizer_report(r, so, cd1=True)["verdict"] == "nontrivial"
    assert centralizer_report(r, lattice_model("adjoint", alg.rs))["divisors"] == []
    assert centralizer_report(r, lattice_model("simply-connected", alg.rs))["divisors"] == [2]


@pytest.mark.parametrize("n", [4, 5])
def test_so_even_family(n):
    alg = build_algebra("D", n)
    so = lattice_model("so-even", alg.rs)
    for t in enumerate_triples(alg.rs):
        if len(t.gamma1) != 1:
            continue
        ((a, b),) = t.tau
        divs = centralizer_report(build_bd(alg, t), so)["divisors"]
        if {a, b} == {n - 2, n - 1}:
            assert divs == [2], t.to_text()
        else:
            assert divs == [], t.to_text()


def test_a2_cg_centralizer():
    alg = build_algebra("A", 2)
    r = build_bd(alg, triple_from_text(alg.rs, "G1=[1];G2=[2];tau=1->2"))
    assert constraint_lattice(r, lattice_model("adjoint", alg.rs)) == [(1, -1)]
    assert centralizer_report(r, lattice_model("gl", alg.rs))["torus_rank"] == 2


matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=1, max_size=4)
)


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_decompose_matches_determinantal_divisors(m):
    dec = decompose(m, len(m[0]))
    assert smith_certificate_ok(m, dec)
    nz = [x for x in determinantal_divisors(m)]
    assert list(dec.divisors) == [x for x in nz if x > 1]
    assert dec.torus_rank == len(m[0]) - len(nz)
    # each reported character has order exactly m on the finite factor
    for mm, psi in zip(dec.divisors, dec.characters):
        assert len(psi) == len(m[0])


def test_decompose_examples():
    dec = decompose([], 3)
    assert dec.torus_rank == 3 and dec.render() == "T" and smith_certificate_ok([], dec)
    dec = decompose([[2, 0], [0, 2]], 2)
    assert dec.divisors == (2, 2) and dec.render() == "1 x mu_2 x mu_2"
    assert h1_describe(dec).factors == ("Kx/(Kx)^2", "Kx/(Kx)^2")
    assert h1_describe(decompose([[1, 0]], 2)).verdict == "trivial"


def test_bad_certificate_detected():
    dec = decompose([[0, 0, 0, 2]], 4)
    assert not smith_certificate_ok([[0, 0, 0, 4]], dec)


def test_model_names():
    assert set(MODEL_NAMES) >= {"adjoint", "simply-connected", "so-even"}
    assert constraint_lattice(build_dj(build_algebra("A", 1)), lattice_model("gl", build("A", 1))) == []
    with pytest.raises(ValueError):
        constraint_lattice(build_dj(build_algebra("A", 2)), lattice_model("adjoint", build("A", 3)))
    assert empty_triple().is_empty()
