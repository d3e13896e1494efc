from fractions import Fraction

import numpy as np
import pytest

from cybel import kernels
from cybel.chevalley import build_S, casimir
from cybel.rootsys import neg, sub
from cybel.tensor import Tensor2, cobracket, swap
from conftest import CORE_TYPES
from oracles import invariant_tensors, sl_bracket_defect

NAMES = [f"{k}{n}" for k, n in CORE_TYPES]


def _csr(alg):
    return kernels.bracket_csr(alg.table, alg.dim)


def _form_matrix(alg):
    f = np.zeros((alg.dim, alg.dim), dtype=np.int64)
    for a in range(alg.dim):
        for b in range(alg.dim):
            x = alg.form_basis(a, b)
            assert x.denominator == 1
            f[a, b] = int(x)
    return f


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_jacobi_and_form_invariance(algebras, name, backend):
    if backend == "numba" and not kernels.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    alg = algebras[name]
    ptr, idx, val = _csr(alg)
    jac = getattr(kernels, f"jacobi_{backend}")
    inv = getattr(kernels, f"form_invariance_{backend}")
    assert jac(ptr, idx, val, alg.dim) == (-1, -1, -1)
    assert inv(ptr, idx, val, alg.dim, _form_matrix(alg)) == (-1, -1, -1)


def test_kernels_detect_defects(algebras):
    alg = algebras["A2"]
    ptr, idx, val = _csr(alg)
    val = val.copy()
    val[0] += 1
    for jac in (kernels.jacobi_numpy, kernels.jacobi):
        assert jac(ptr, idx, val, alg.dim) != (-1, -1, -1)


def test_sl2_relations(algebras):
    alg = algebras["A1"]
    e, f, h = alg.e((1,)), alg.f((1,)), alg.h(0)
    assert alg.bracket({e: 1}, {f: 1}) == {h: 1}
    assert alg.bracket({h: 1}, {e: 1}) == {e: 2}
    assert alg.bracket({h: 1}, {f: 1}) == {f: -2}


def test_a2_bracket_magnitude(algebras):
    alg = algebras["A2"]
    assert abs(alg.structure_constant((1, 0), (0, 1))) == 1


@pytest.mark.parametrize("name", NAMES)
def test_structure_constants_p_plus_one(algebras, name):
    alg = algebras[name]
    rs = alg.rs
    mags = set()
    for r in rs.roots:
        for s in rs.roots:
            n = alg.structure_constant(r, s)
            tot = tuple(a + b for a, b in zip(r, s))
            if not rs.is_root(tot):
                assert n == 0
                continue
            p = 0
            while rs.is_root(sub(s, tuple((p + 1) * x for x in r))):
                p += 1
            assert abs(n) == p + 1
            assert alg.structure_constant(neg(r), neg(s)) == -n
            mags.add(abs(n))
    if name == "G2":
        assert mags == {1, 2, 3}


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_type_a_matches_matrix_commutators(algebras, name):
    assert sl_bracket_defect(algebras[name]) is None


@pytest.mark.parametrize("name", NAMES)
def test_casimir_invariant_and_symmetric(algebras, name):
    alg = algebras[name]
    om = Tensor2(alg, casimir(alg)[0])
    assert swap(om) == om
    for x in range(alg.dim):
        assert cobracket(om, {x: 1}).is_zero()


def test_casimir_examples(algebras):
    a1 = algebras["A1"]
    om, om0 = casimir(a1)
    h = a1.h(0)
    assert om0 == {(h, h): Fraction(1, 2)}
    e, f = a1.e((1,)), a1.f((1,))
    assert om[e, f] == 1 and om[f, e] == 1 and a1.form({e: 1}, {f: 1}) == 1
    a2 = algebras["A2"]
    assert a2.cartan_gram_inverse == (
        (Fraction(2, 3), Fraction(1, 3)),
        (Fraction(1, 3), Fraction(2, 3)),
    )


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_casimir_spans_invariant_tensors(algebras, name):
    alg = algebras[name]
    basis = invariant_tensors(alg)
    assert len(basis) == 1
    om = casimir(alg)[0]
    vec = [om.get((i, j), 0) for i in range(alg.dim) for j in range(alg.dim)]
    ref = basis[0]
    k = next(i for i, x in enumerate(ref) if x)
    scale = Fraction(vec[k]) / ref[k]
    assert all(Fraction(v) == scale * x for v, x in zip(vec, ref))


@pytest.mark.parametrize("name", NAMES)
def test_involutions(algebras, name):
    alg = algebras[name]
    c = alg.chevalley_involution()
    d = alg.diagram_lift()
    s = build_S(alg)
    for phi in (c, d, s):
        assert phi.preserves_brackets()
        assert phi.is_invertible()
        assert phi.compose(phi).is_identity()
    assert c.compose(d) == d.compose(c)
    w, _ = alg.longest
    for a in alg.rs.roots:
        (img, _), = s.columns[alg.root_vector(a)]
        assert img == alg.root_vector(w.apply(a))
    w0h = alg.w0_on_cartan()
    for j in range(alg.n):
        assert dict(s.columns[alg.h(j)]) == {alg.h(k): w0h[k][j] for k in range(alg.n) if w0h[k][j]}


def test_involution_examples(algebras):
    a1 = algebras["A1"]
    c = a1.chevalley_involution()
    e, f, h = a1.e((1,)), a1.f((1,)), a1.h(0)
    assert c.image(e) == {f: -1} and c.image(f) == {e: -1} and c.image(h) == {h: -1}
    assert build_S(a1) == c
    a2 = algebras["A2"]
    s = build_S(a2)
    assert list(s.image(a2.e((1, 0)))) == [a2.f((0, 1))]
    assert list(c.image(e)) == [f]
    d4 = algebras["D4"]
    assert build_S(d4) == d4.chevalley_involution()


def test_bracket_defect_reported(algebras):
    alg = algebras["A2"]
    cols = list(alg.identity().columns)
    cols[alg.e((1, 0))] = ((alg.e((1, 0)), 2),)
    from cybel.chevalley import AlgebraAutomorphism

    bad = AlgebraAutomorphism(alg, tuple(cols))
    assert not bad.preserves_brackets()
    assert bad.first_bracket_defect() is not None
