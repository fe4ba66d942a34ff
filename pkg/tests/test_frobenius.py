"""Regular-algebra construction, Frobenius laws, and automorphism solving."""

from fractions import Fraction

import pytest

from galext.category import scalar_of, tensor_obj
from galext.frobenius import (
    RegularAlgebra,
    UnsupportedSubcategory,
    fiber_monoidal_check,
    fixpoint_check,
    regular_algebra,
    regular_checks,
)
from galext.generators import (
    drinfeld_double,
    pointed_category,
    product_category,
    rep_category,
    tannakian_subcategory,
)
from galext.groups import cyclic, symmetric3

TORIC_LABELS = {"0,0": "1", "0,1": "e", "1,0": "m", "1,1": "psi"}


def toric_spec(exact=True):
    cat = pointed_category([2, 2], [[0, 1], [0, 0]], exact=exact,
                           labels=TORIC_LABELS)
    return tannakian_subcategory(cat, ["e"])


def test_toric_group_algebra():
    fr = regular_algebra(toric_spec())
    assert fr.path == "group-algebra"
    assert fr.alpha == 2 and fr.beta == 1
    assert all(v == 0 for v in fr.law_residuals().values())
    assert fr.group.elements == ["e", "g"]
    g = fr.automorphism_of("g")
    assert g.mat[0, 0] == 1 and g.mat[1, 1] == -1
    assert g.mat[0, 1] == 0 and g.mat[1, 0] == 0
    checks = regular_checks(fr)
    assert all(v == 0 for v in checks.values()), checks


def test_toric_fixpoint_and_fiber():
    fr = regular_algebra(toric_spec())
    cat = fr.cat
    e = cat.simple_by_label("e")
    one = cat.simple_by_label("1")
    res = fixpoint_check(fr, e, e)
    assert res == {"fixed-vs-base": 0.0, "base-vs-factored": 0.0}
    res = fixpoint_check(fr, e, one)
    assert res == {"fixed-vs-base": 0.0, "base-vs-factored": 0.0}
    assert fiber_monoidal_check(fr, e, e)
    assert fiber_monoidal_check(fr, one, e)


def test_rep_s3_function_algebra():
    cat = rep_category(symmetric3())
    spec = tannakian_subcategory(cat, ["chi2"])
    fr = regular_algebra(spec)
    assert fr.path == "function-algebra"
    assert fr.gamma.dim == 6
    assert fr.alpha == 6
    assert all(v == 0 for v in fr.law_residuals().values())
    assert len(fr.automorphisms) == 6
    assert not fr.group.is_abelian()
    assert fr.group.isomorphic(symmetric3())
    checks = regular_checks(fr)
    assert all(v == 0 for v in checks.values()), checks
    chi2 = cat.simple_by_label("chi2")
    assert fiber_monoidal_check(fr, chi2, chi2)
    res = fixpoint_check(fr, chi2, chi2)
    assert res == {"fixed-vs-base": 0.0, "base-vs-factored": 0.0}


def test_double_s3_unit_class_subcategory():
    cat = drinfeld_double(symmetric3())
    spec = tannakian_subcategory(cat, ["e:chi2"])
    fr = regular_algebra(spec)
    assert fr.path == "function-algebra"
    assert fr.gamma.dim == 6
    assert fr.group.isomorphic(symmetric3())
    assert all(v == 0 for v in fr.law_residuals().values())


def test_double_s3_float():
    cat = drinfeld_double(symmetric3(), exact=False)
    spec = tannakian_subcategory(cat, ["e:chi2"])
    fr = regular_algebra(spec)
    assert fr.gamma.dim == 6
    assert len(fr.automorphisms) == 6
    assert fr.group.isomorphic(symmetric3())
    assert all(v <= 1e-9 for v in fr.law_residuals().values())


def test_repz4_both_routes_cross_checked():
    cat = rep_category(cyclic(4))
    spec = tannakian_subcategory(cat, ["chi2"])
    assert spec.labels == ["chi0", "chi2"]
    fr = regular_algebra(spec)
    assert fr.path == "function-algebra"
    assert fr.cross_checked
    assert fr.gamma.dim == 2
    assert fr.group.elements == ["e", "g"]


def test_product_group_algebra():
    toric = pointed_category([2, 2], [[0, 1], [0, 0]], labels=TORIC_LABELS)
    prod = product_category(toric, rep_category(cyclic(2)))
    spec = tannakian_subcategory(prod, ["e*chi0", "1*chi1"])
    fr = regular_algebra(spec)
    assert fr.path == "group-algebra"
    assert fr.gamma.dim == 4
    assert fr.group.is_abelian()
    assert len(fr.automorphisms) == 4
    assert all(fr.group.mul(a, a) == fr.group.identity
               for a in range(4))  # Klein four-group
    assert all(v == 0 for v in regular_checks(fr).values())


def test_symplectic_braiding_rejected():
    cat = pointed_category([2, 2], [[0, 1], [1, 0]])
    spec = tannakian_subcategory(cat, ["g0,1", "g1,0"])
    assert len(spec.labels) == 4  # certification passes: symmetric, bosonic
    with pytest.raises(UnsupportedSubcategory):
        regular_algebra(spec)
