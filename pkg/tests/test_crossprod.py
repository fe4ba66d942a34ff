"""Extension pipeline: enumeration, grading, crossed braiding, spectrum."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from galext.category import dsum_objs, hom_basis
from galext.crossprod import (
    NoMatchingAutomorphism,
    NonAbelianGrading,
    transparent_labels,
    zcenter_labels,
)
from galext.linalg import nullspace


def _fixed_subspace(ext, basis):
    """Basis of the subspace of span(basis) fixed by the whole group action."""
    rows = []
    for gname in ext.fr.group.elements:
        cols = [(ext.gamma_mor(gname, b) - b).mat.reshape(-1) for b in basis]
        rows.append(np.stack(cols, axis=1))
    return nullspace(np.concatenate(rows, axis=0), ext.cat.tol)


# -- toric code (exact) -------------------------------------------------------


def test_toric_simples_and_spectrum(pipeline):
    cfg, fr, ext = pipeline("toric-code")
    sims = ext.ext_simples()
    assert [(s.label, s.dim, s.grade) for s in sims] == [
        ("1", Fraction(1), "e"), ("m", Fraction(1), "g")]
    assert sum(s.dim ** 2 for s in sims) == Fraction(2)
    assert ext.spectrum() == ["e", "g"]
    assert ext.center_stabilizer() == ["e", "g"]
    assert zcenter_labels(cfg.cat) == ["1"]


def test_toric_reports(pipeline):
    cfg, fr, ext = pipeline("toric-code")
    assert ext.grading_report() == {"multiplicative": True, "conjugation": True}
    zero = ext.grade_zero_report()
    assert zero["zero-part-matches"] and zero["equidimensional"]
    assert zero["zero-count"] == 1 and zero["independent-count"] == 1
    assert zero["sector-dims"] == {"e": 1.0, "g": 1.0}
    mod = ext.module_report()
    assert mod == {"module-count": 2, "simple-count": 2, "dims-match": True,
                   "laws": True, "schur": True, "global-dim-match": True}
    ab = ext.abelian_grading_report()
    assert ab["grades"] == {"1": "e", "e": "e", "m": "g", "psi": "g"}
    assert ab["multiplicative"] and ab["characters-match"]
    assert ab["extension-agrees"]


def test_toric_calculus_action_slots(pipeline):
    cfg, fr, ext = pipeline("toric-code")
    rng = np.random.default_rng(3)
    assert all(v == 0 for v in ext.calculus_report(rng).values())
    assert all(v == 0 for v in ext.action_report(rng).values())
    assert all(v == 0 for v in ext.slot_naturality_report(rng).values())


def test_toric_crossed_braiding(pipeline):
    cfg, fr, ext = pipeline("toric-code")
    grp = fr.group
    sims = ext.ext_simples()
    rng = np.random.default_rng(5)
    for x, y, z in itertools.product(sims, repeat=3):
        assert all(v == 0 for v in ext.braid_relation_defects(x, y, z).values())
    for a, b in itertools.product(sims, repeat=2):
        assert ext.braid_naturality_defect(a, b, rng) == 0
        chat, w, cod = ext.crossed_braiding(a, b)
        prod = grp.mul(grp.index(a.grade), grp.index(b.grade))
        assert ext.grade(cod) == grp.elements[prod]


def test_toric_decompositions(pipeline):
    cfg, fr, ext = pipeline("toric-code")
    cat = cfg.cat
    expected = {"1": "1", "e": "1", "m": "m", "psi": "m"}
    for x in cat.simples:
        parts = ext.decompose_ext(ext.iota_object(x))
        assert [(s.label, m) for s, m in parts] == [(expected[x.label], 1)]
    ig = ext.iota_object(fr.gamma)
    assert len(ext.ext_hom(ig, ig)) == len(fr.group) ** 2
    assert [(s.label, m) for s, m in ext.decompose_ext(ig)] == [("1", 2)]
    doubled = ext.ext_double(ext.ext_simples()[-1])
    assert [(s.label, m) for s, m in ext.decompose_ext(doubled)] == [("m", 2)]


def test_toric_unit_homs_and_fixed_points(pipeline):
    cfg, fr, ext = pipeline("toric-code")
    cat = cfg.cat
    one = cat.simple_by_label("1")
    e = cat.simple_by_label("e")
    unit_ext = ext.iota_object(one)
    assert len(ext.ext_hom(unit_ext, unit_ext)) == 1
    oe = dsum_objs([one, e])[0]
    basis = ext.hom_hat(one, oe)
    assert len(basis) == 2
    fixed = _fixed_subspace(ext, basis)
    assert len(fixed) == 1
    # the fixed line is exactly the image of the plain hom space
    plain = hom_basis(one, oe)
    assert len(plain) == 1
    emb = ext.iota(plain[0])
    combo = basis[0].scale(fixed[0][0])
    for c, b in zip(fixed[0][1:], basis[1:]):
        combo = combo + b.scale(c)
    flat_e, flat_c = emb.mat.reshape(-1), combo.mat.reshape(-1)
    nz = next(i for i, v in enumerate(flat_c) if v != 0)
    assert emb.defect(combo.scale(flat_e[nz] / flat_c[nz])) == 0


def test_toric_inhomogeneous_object_detected(pipeline):
    cfg, fr, ext = pipeline("toric-code")
    cat = cfg.cat
    mixed = dsum_objs([cat.simple_by_label("1"), cat.simple_by_label("m")])[0]
    obj = ext.iota_object(mixed)
    with pytest.raises(NoMatchingAutomorphism):
        ext.grade(obj)
    parts = ext.decompose_ext(obj)
    assert [(s.label, m) for s, m in parts] == [("1", 1), ("m", 1)]


def test_toric_float_matches_exact(pipeline):
    cfg, fr, ext = pipeline("toric-code", backend="float")
    sims = ext.ext_simples()
    assert sorted((s.label, s.grade) for s in sims) == [("1", "e"), ("m", "g")]
    assert all(abs(s.dim - 1) < 1e-9 for s in sims)
    assert abs(sum(s.dim ** 2 for s in sims) - 2) < 1e-9
    assert ext.spectrum() == ["e", "g"]


# -- Drinfeld double of S3 (float) --------------------------------------------


def test_ds3_enumeration_and_spectrum(pipeline):
    cfg, fr, ext = pipeline("ds3")
    grp = fr.group
    assert not grp.is_abelian() and len(grp) == 6
    sims = ext.ext_simples()
    assert len(sims) == 6
    assert all(abs(s.dim - 1) < 1e-9 for s in sims)
    assert abs(sum(s.dim ** 2 for s in sims) - 6) < 1e-9
    # every group element is carried by exactly one invertible simple
    assert sorted(s.grade for s in sims) == sorted(grp.elements)
    assert set(ext.spectrum()) == set(grp.elements)
    assert ext.center_stabilizer() == ext.spectrum()
    assert zcenter_labels(cfg.cat) == ["e:chi0"]


def test_ds3_reports(pipeline):
    cfg, fr, ext = pipeline("ds3")
    assert ext.grading_report() == {"multiplicative": True, "conjugation": True}
    zero = ext.grade_zero_report()
    assert zero["zero-part-matches"] and zero["equidimensional"]
    assert zero["zero-count"] == 1
    mod = ext.module_report()
    assert mod["module-count"] == 6 and mod["simple-count"] == 6
    assert mod["dims-match"] and mod["laws"] and mod["schur"]
    assert mod["global-dim-match"]
    with pytest.raises(NonAbelianGrading):
        ext.abelian_grading_report()


def test_ds3_calculus_and_braiding(pipeline):
    cfg, fr, ext = pipeline("ds3")
    rng = np.random.default_rng(3)
    tol = 1e-9
    assert all(v < tol for v in ext.calculus_report(rng).values())
    assert all(v < tol for v in ext.action_report(rng).values())
    assert all(v < tol for v in ext.slot_naturality_report(rng).values())
    sims = ext.ext_simples()
    probe = [sims[0], sims[2], sims[-1]]
    for x, y, z in itertools.product(probe, repeat=3):
        assert all(v < tol for v in ext.braid_relation_defects(x, y, z).values())
    for a, b in itertools.product(probe, repeat=2):
        assert ext.braid_naturality_defect(a, b, rng) < tol


def test_ds3_unit_class_decondenses(pipeline):
    cfg, fr, ext = pipeline("ds3")
    x = cfg.cat.simple_by_label("e:chi2")
    obj = ext.iota_object(x)
    assert len(ext.ext_hom(obj, obj)) == 4
    parts = ext.decompose_ext(obj)
    assert [(s.label, m) for s, m in parts] == [("e:chi0", 2)]


# -- Rep(Z4) with the order-two character (exact) ------------------------------


def test_repz4_trivial_spectrum(pipeline):
    cfg, fr, ext = pipeline("repz4-z2")
    sims = ext.ext_simples()
    assert [(s.label, s.dim, s.grade) for s in sims] == [
        ("chi0", Fraction(1), "e"), ("chi1", Fraction(1), "e")]
    assert ext.spectrum() == ["e"]
    assert ext.center_stabilizer() == ["e"]
    # the whole ambient category is transparent, so braiding is two-sided
    labels = [s.label for s in cfg.cat.simples]
    assert transparent_labels(cfg.cat, cfg.cat.simples, cfg.cat.simples) == labels
    rng = np.random.default_rng(3)
    slots = ext.slot_naturality_report(rng)
    assert slots == {"braid-enriched-first-slot": 0.0,
                     "braid-enriched-second-slot": 0.0}
    for a, b in itertools.product(sims, repeat=2):
        assert ext.braid_naturality_defect(a, b, rng) == 0


# -- product example: spectrum strictly between trivial and full ----------------


def test_product_spectrum_is_proper_subgroup(pipeline):
    cfg, fr, ext = pipeline("toric-x-repz2")
    grp = fr.group
    assert len(grp) == 4 and grp.is_abelian()
    sims = ext.ext_simples()
    assert [(s.label, s.dim) for s in sims] == [
        ("1*chi0", Fraction(1)), ("m*chi0", Fraction(1))]
    spec = ext.spectrum()
    assert spec == ext.center_stabilizer()
    assert 1 < len(spec) < len(grp)
    zero = ext.grade_zero_report()
    assert zero["zero-part-matches"] and zero["equidimensional"]


# -- Drinfeld double of Z2 (exact) ----------------------------------------------


def test_drinfeld_z2_full_spectrum(pipeline):
    cfg, fr, ext = pipeline("drinfeld-z2")
    sims = ext.ext_simples()
    assert [(s.label, s.dim, s.grade) for s in sims] == [
        ("0:chi0", Fraction(1), "e"), ("1:chi0", Fraction(1), "g")]
    assert ext.spectrum() == ["e", "g"]
    assert zcenter_labels(cfg.cat) == ["0:chi0"]
    ab = ext.abelian_grading_report()
    assert ab["grades"] == {"0:chi0": "e", "0:chi1": "e",
                            "1:chi0": "g", "1:chi1": "g"}
    assert ab["multiplicative"] and ab["extension-agrees"]
