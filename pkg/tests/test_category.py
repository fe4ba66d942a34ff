"""Backend checks on a hand-built pointed category and a hand-built
group-representation object, independent of the shipped constructors."""

from fractions import Fraction

import numpy as np
import pytest

from galext.category import (
    Category,
    Mor,
    braiding,
    braiding_inv,
    coev,
    decompose_object,
    dsum_objs,
    dual_obj,
    ev,
    hom_basis,
    hom_dim,
    left_coev,
    left_ev,
    morphism_defect,
    random_morphism,
    scalar_of,
    tensor_mor,
    tensor_obj,
    trace_mor,
    twist,
    validate_category,
)
from galext.groups import FiniteGroup, symmetric3
from galext.linalg import eye, mats_equal, zeros
from galext.scalars import scalar_to_complex


def toric(exact=True):
    """Four invertible objects over Z2 x Z2; e and m are bosons with
    mutual monodromy -1, their product psi is a fermion."""
    tuples = [(0, 0), (0, 1), (1, 0), (1, 1)]
    pos = {t: i for i, t in enumerate(tuples)}
    names = ["00", "01", "10", "11"]
    table = [[pos[((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)] for b in tuples]
             for a in tuples]
    q = FiniteGroup(names, table)
    cat = Category(q, exact=exact, tol=1e-9, order_hint=2)
    labels = {(0, 0): "1", (0, 1): "e", (1, 0): "m", (1, 1): "psi"}
    for a in tuples:
        rho = {}
        for gi, g in enumerate(tuples):
            s = (-1) ** (g[0] * a[1])
            m = zeros(1, 1, exact)
            m[0, 0] = Fraction(s) if exact else complex(s)
            rho[gi] = m
        cat.add_simple(labels[a], [pos[a]], rho)
    return cat


def test_validate_and_dims():
    cat = toric()
    assert validate_category(cat) == []
    assert cat.global_dim() == 4
    assert [s.dim for s in cat.simples] == [1, 1, 1, 1]


def test_braiding_scalars_and_twists():
    cat = toric()
    e = cat.simple_by_label("e")
    m = cat.simple_by_label("m")
    psi = cat.simple_by_label("psi")
    mono = braiding(m, e) @ braiding(e, m)
    assert scalar_of(mono) == Fraction(-1)
    assert scalar_of(twist(psi)) == Fraction(-1)
    assert scalar_of(twist(e)) == Fraction(1)
    assert scalar_of(twist(m)) == Fraction(1)
    # braidings are invertible
    c = braiding(e, psi)
    ci = braiding_inv(e, psi)
    assert (ci @ c).equals(Mor.identity(tensor_obj(e, psi)))


def test_hexagons_all_triples():
    cat = toric()
    for x in cat.simples:
        for y in cat.simples:
            for z in cat.simples:
                idy = Mor.identity(y)
                idz = Mor.identity(z)
                idx = Mor.identity(x)
                lhs1 = braiding(x, tensor_obj(y, z))
                rhs1 = tensor_mor(idy, braiding(x, z)) @ tensor_mor(braiding(x, y), idz)
                assert mats_equal(lhs1.mat, rhs1.mat, cat.tol)
                lhs2 = braiding(tensor_obj(x, y), z)
                rhs2 = tensor_mor(braiding(x, z), idy) @ tensor_mor(idx, braiding(y, z))
                assert mats_equal(lhs2.mat, rhs2.mat, cat.tol)


def test_zigzag_identities():
    cat = toric()
    for lab in ("e", "psi"):
        x = cat.simple_by_label(lab)
        xd = dual_obj(x)
        z1 = tensor_mor(Mor.identity(x), ev(x)) @ tensor_mor(coev(x), Mor.identity(x))
        assert mats_equal(z1.mat, eye(x.dim, cat.exact), cat.tol)
        z2 = tensor_mor(ev(x), Mor.identity(xd)) @ tensor_mor(Mor.identity(xd), coev(x))
        assert mats_equal(z2.mat, eye(x.dim, cat.exact), cat.tol)
        z3 = tensor_mor(left_ev(x), Mor.identity(x)) @ tensor_mor(Mor.identity(x), left_coev(x))
        assert mats_equal(z3.mat, eye(x.dim, cat.exact), cat.tol)


def test_hom_spaces_and_decompose():
    cat = toric()
    e = cat.simple_by_label("e")
    m = cat.simple_by_label("m")
    assert hom_dim(e, e) == 1
    assert hom_dim(e, m) == 0
    both, injs, projs = dsum_objs([e, m])
    assert hom_dim(both, both) == 2
    assert decompose_object(both) == [("e", 1), ("m", 1)]
    assert decompose_object(tensor_obj(e, m)) == [("psi", 1)]
    assert (projs[0] @ injs[0]).equals(Mor.identity(e))
    assert (projs[1] @ injs[0]).is_zero()
    assert decompose_object(dual_obj(e)) == [("e", 1)]


def test_braiding_naturality():
    cat = toric()
    e = cat.simple_by_label("e")
    m = cat.simple_by_label("m")
    psi = cat.simple_by_label("psi")
    x, _, _ = dsum_objs([e, m])
    rng = np.random.default_rng(1)
    f = random_morphism(x, x, rng)
    assert morphism_defect(f) == 0
    lhs = braiding(x, psi) @ tensor_mor(f, Mor.identity(psi))
    rhs = tensor_mor(Mor.identity(psi), f) @ braiding(x, psi)
    assert lhs.equals(rhs)
    lhs = braiding(psi, x) @ tensor_mor(Mor.identity(psi), f)
    rhs = tensor_mor(f, Mor.identity(psi)) @ braiding(psi, x)
    assert lhs.equals(rhs)


def test_ribbon_identity():
    cat = toric()
    for la, lb in (("e", "m"), ("psi", "psi"), ("m", "psi")):
        a = cat.simple_by_label(la)
        b = cat.simple_by_label(lb)
        t = tensor_obj(a, b)
        lhs = twist(t)
        rhs = (braiding(b, a) @ braiding(a, b)) @ tensor_mor(twist(a), twist(b))
        assert mats_equal(lhs.mat, rhs.mat, cat.tol)


def test_float_backend():
    cat = toric(exact=False)
    assert validate_category(cat) == []
    e = cat.simple_by_label("e")
    m = cat.simple_by_label("m")
    mono = braiding(m, e) @ braiding(e, m)
    assert abs(scalar_of(mono) + 1) <= 1e-12
    assert abs(scalar_of(twist(cat.simple_by_label("psi"))) + 1) <= 1e-12


def test_nonabelian_equivariant_object():
    g = symmetric3()
    cat = Category(g, exact=True, order_hint=6)
    r = np.empty((2, 2), dtype=object)
    r[:] = [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(-1)]]
    s = np.empty((2, 2), dtype=object)
    s[:] = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    ident = eye(2, True)
    mats = {"e": ident, "(12)": s, "(13)": r @ s, "(23)": s @ r,
            "(123)": r, "(132)": r @ r}
    rho = {g.index(n): m for n, m in mats.items()}
    std = cat.add_simple("std", [g.identity, g.identity], rho)
    assert hom_dim(std, std) == 1
    # trivially graded objects braid by the plain flip
    c = braiding(std, std)
    flip = zeros(4, 4, True)
    for i in range(2):
        for j in range(2):
            flip[j * 2 + i, i * 2 + j] = Fraction(1)
    assert mats_equal(c.mat, flip, cat.tol)
    mono = braiding(std, std) @ braiding(std, std)
    assert mats_equal(mono.mat, eye(4, True), cat.tol)
    assert mats_equal(twist(std).mat, ident, cat.tol)
    assert trace_mor(Mor.identity(std)) == 2


def test_invalid_actions_rejected():
    q = FiniteGroup(["0", "1"], [[0, 1], [1, 0]])
    cat = Category(q, exact=True)
    bad = zeros(1, 1, True)
    bad[0, 0] = Fraction(2)
    with pytest.raises(ValueError):
        cat.add_simple("x", [0], {0: eye(1, True), 1: bad})
    # action value sitting in a grade slot it must not touch
    m = zeros(2, 2, True)
    m[0, 0] = Fraction(1)
    m[1, 1] = Fraction(-1)
    ok = cat.add_simple("y", [0, 1], {0: eye(2, True), 1: m})
    assert ok.dim == 2
    off = zeros(2, 2, True)
    off[0, 1] = Fraction(1)
    off[1, 0] = Fraction(1)
    with pytest.raises(ValueError):
        cat.add_simple("z", [0, 1], {0: eye(2, True), 1: off})


def test_hom_basis_morphism_property():
    cat = toric()
    e = cat.simple_by_label("e")
    m = cat.simple_by_label("m")
    x, _, _ = dsum_objs([e, m, e])
    y, _, _ = dsum_objs([e, m])
    basis = hom_basis(x, y)
    assert len(basis) == 3
    for f in basis:
        assert morphism_defect(f) == 0
