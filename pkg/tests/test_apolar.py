import random
from fractions import Fraction
from math import comb

import pytest

from hyperjac.apolar import ApolarAlgebra, ConeError, ann_basis, catalecticant, dual_basis, hilbert_A, is_cone
from hyperjac.fixtures import CATALOG, get_fixture
from hyperjac.linalg import QMat, rank
from hyperjac.qpoly import Poly, apply_op, coefficient_vector, parse_poly, random_form


def same_span(ops, texts, nvars=3):
    """Row spaces of two lists of degree-k operators coincide."""
    k = ops[0].degree() if ops else parse_poly(texts[0].replace("X", "x"), nvars).degree()
    a = [coefficient_vector(o, k) for o in ops]
    b = [coefficient_vector(parse_poly(t.replace("X", "x"), nvars), k) for t in texts]
    ra, rb = rank(QMat.from_rows(a)) if a else 0, rank(QMat.from_rows(b))
    return ra == rb == rank(QMat.from_rows(a + b))


def test_catalecticant_shape_and_entries():
    c = catalecticant(parse_poly("x0^2", 2), 1)
    assert (c.rows, c.cols) == (2, 2)
    nz = [(i, j, c[i, j]) for i in range(2) for j in range(2) if c[i, j]]
    assert nz == [(0, 0, 2)]


def test_catalecticant_ranks():
    assert rank(catalecticant(get_fixture("fermat:2:4").poly, 2)) == 3
    assert rank(catalecticant(get_fixture("caporali1").poly, 2)) == 6


@pytest.mark.parametrize("name, ann2", [
    ("fermat:2:4", ["X0*X1", "X0*X2", "X1*X2"]),
    ("quartic-e6", ["X1^2", "X0*X2", "X1*X2"]),
    ("quartic-2a3", ["X0*X2", "X1*X2"]),
    ("lines-3x", ["X0*X1", "X2^2"]),
    ("caporali", ["X0*X1-X1*X2", "X0*X2-X1*X2"]),
])
def test_ann2_spans(name, ann2):
    f = get_fixture(name).poly
    ops = ann_basis(f, 2)
    assert same_span(ops, ann2)
    assert all(apply_op(a, f).is_zero() for a in ops)


def test_ann_edge_degrees():
    f = get_fixture("fermat:2:4").poly
    assert ann_basis(f, 1) == []
    assert ann_basis(f, 0) == []
    assert len(ann_basis(f, 5)) == 21
    assert len(ann_basis(f, 4)) == 14


@pytest.mark.parametrize("text, nvars, expected", [
    ("x0^3+x1^3", 3, True),
    ("x0^4+x1^4+x2^4", 3, False),
    ("x0^2*x1", 2, False),
    ("(x0+x1)^3+x2^3", 3, True),
])
def test_is_cone(text, nvars, expected):
    assert is_cone(parse_poly(text, nvars)) is expected


def test_cone_rejected():
    with pytest.raises(ConeError):
        hilbert_A(parse_poly("x0^3+x1^3", 3))
    alg = ApolarAlgebra(parse_poly("x0^3+x1^3", 3), check_cone=False)
    assert alg.dims() == [1, 2, 2, 1]


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_hilbert_symmetry_and_pivot_bases(name, algebra_cache):
    alg = algebra_cache(name)
    h = alg.hilbert_vector()
    assert h == h[::-1] and h[0] == h[-1] == 1
    f = alg.f
    for k in range(alg.d + 1):
        assert rank(catalecticant(f, k)) == rank(catalecticant(f, alg.d - k)) == h[k]
        imgs = [coefficient_vector(g, alg.d - k) for g in alg.basis_images(k)]
        assert rank(QMat.from_rows(imgs)) == len(imgs) == h[k]
        assert h[k] == comb(f.nvars - 1 + k, k) - len(ann_basis(f, k))


def test_fermat_family_hilbert():
    for n, d in [(1, 3), (2, 5), (3, 4)]:
        fx = get_fixture(f"fermat:{n}:{d}")
        assert hilbert_A(fx.poly).hilbert_vector() == fx.golden["hilbert_A"]


def test_dual_basis_fermat_degree_1():
    f = get_fixture("fermat:2:4").poly
    db = dual_basis(f, 1)
    assert list(db.dual) == [Poly.monomial(e, Fraction(1, 24)) for e in [(3, 0, 0), (0, 3, 0), (0, 0, 3)]]
    assert db.theta == Poly.monomial((4, 0, 0), Fraction(1, 24))


@pytest.mark.parametrize("name", ["caporali", "quartic-e6", "ikeda", "gn-quintic", "triangle"])
def test_dual_basis_identity(name, algebra_cache):
    alg = algebra_cache(name)
    assert apply_op(dual_basis(alg.f, 0, alg).theta, alg.f).constant_value() == 1
    for k in range(alg.d + 1):
        db = dual_basis(alg.f, k, alg)
        assert db.pairing_matrix(alg.f) == QMat.identity(alg.dim(k))
    # k = d: the dual of the socle generator is a constant, and their product is theta
    top = dual_basis(alg.f, alg.d, alg)
    assert top.dual[0].degree() == 0
    assert top.dual[0] * top.primal[0] == top.theta


@pytest.mark.parametrize("n, d", [(1, 4), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4)])
def test_generic_hilbert_vector(n, d):
    rng = random.Random(100 * n + d)
    f = random_form(n + 1, d, rng, -10**6, 10**6)
    h = hilbert_A(f).hilbert_vector()
    assert h == [min(comb(n + k, n), comb(n + d - k, n)) for k in range(d + 1)]
