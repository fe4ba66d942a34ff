"""Acceptance gate: ten headline guarantees, one pass/fail line each.

Exact backends must hit their targets on the nose; the float backend gets
1e-9.  Run with -s to see the summary lines on success as well.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from galext.frobenius import regular_checks
from galext.presets import build_extension, resolve_preset
from galext.verify import run_suite

TOL = 1e-9
GOOD = ["toric-code", "ds3", "repz4-z2", "toric-x-repz2", "drinfeld-z2"]
POINTED = ["toric-code", "repz4-z2", "toric-x-repz2", "drinfeld-z2"]

_SUITES = {}


@pytest.fixture(scope="module")
def suite():
    """suite(name) -> full verify Report, built once per module."""

    def get(name):
        if name not in _SUITES:
            _SUITES[name] = run_suite(resolve_preset(name))
        return _SUITES[name]

    return get


def _line(name, problems):
    tag = "FAIL" if problems else "PASS"
    note = "; ".join(problems)
    print(f"{tag}  {name}" + (f"  [{note}]" if note else ""))
    assert not problems, f"{name}: {note}"


def _named(rep, name):
    for c in rep.checks:
        if c.name == name:
            return c
    raise AssertionError(f"report for {rep.example} has no check {name!r}")


def test_global_dimension_ratio_and_runtime():
    problems = []
    t0 = time.perf_counter()
    fr, ext = build_extension(resolve_preset("toric-code"))
    total = sum(s.dim ** 2 for s in ext.ext_simples())
    dt_small = time.perf_counter() - t0
    if total != Fraction(2):
        problems.append(f"pointed squared dimensions {total} != 2")
    if dt_small >= 1.0:
        problems.append(f"pointed runtime {dt_small:.2f}s >= 1s")

    t0 = time.perf_counter()
    fr, ext = build_extension(resolve_preset("ds3"))
    total = sum(s.dim ** 2 for s in ext.ext_simples())
    dt_big = time.perf_counter() - t0
    if abs(total - 6) > TOL:
        problems.append(f"double squared dimensions {total} != 6")
    if dt_big >= 60.0:
        problems.append(f"double runtime {dt_big:.1f}s >= 60s")
    _line("global-dimension-ratio", problems)


def test_full_spectrum_for_modular_inputs(pipeline):
    problems = []
    _, fr, ext = pipeline("toric-code")
    if ext.spectrum() != list(fr.group.elements):
        problems.append("pointed spectrum is not the whole group")

    _, fr, ext = pipeline("ds3")
    if ext.spectrum() != list(fr.group.elements):
        problems.append("double spectrum is not the whole group")
    sims = ext.ext_simples()
    for gname in fr.group.elements:
        carriers = [s for s in sims if s.grade == gname]
        if len(carriers) != 1 or abs(carriers[0].dim - 1) > TOL:
            problems.append(
                f"grade {gname} is not carried by exactly one invertible simple")
    _line("full-spectrum-modular", problems)


def test_trivial_spectrum_for_transparent_subcategory(pipeline):
    problems = []
    cfg, fr, ext = pipeline("repz4-z2")
    ename = fr.group.elements[fr.group.identity]
    if ext.spectrum() != [ename]:
        problems.append(f"spectrum {ext.spectrum()} != [{ename!r}]")
    rng = np.random.default_rng(cfg.seed)
    sims = ext.ext_simples()
    worst = 0.0
    for x in sims:
        for y in sims:
            worst = max(worst, ext.braid_naturality_defect(x, y, rng))
    slots = ext.slot_naturality_report(np.random.default_rng(cfg.seed))
    worst = max(worst, max(slots.values()))
    if worst != 0.0:
        problems.append(f"ordinary two-sided naturality defect {worst}")
    _line("trivial-spectrum-transparent", problems)


def test_spectrum_matches_stabilizer_on_product(pipeline):
    problems = []
    _, fr, ext = pipeline("toric-x-repz2")
    spec, stab = ext.spectrum(), ext.center_stabilizer()
    if spec != stab:
        problems.append(f"spectrum {spec} != stabilizer {stab}")
    if not 1 < len(spec) < len(fr.group.elements):
        problems.append("stabilizer is not strictly between trivial and full")
    _line("spectrum-equals-stabilizer", problems)


def test_grade_zero_sector_identification(suite):
    problems = []
    for name in GOOD:
        data = _named(suite(name), "grade-zero").data
        if not data["zero-part-matches"]:
            problems.append(f"{name}: grade-zero simples differ")
        if data["zero-count"] != data["independent-count"]:
            problems.append(f"{name}: simple counts differ")
        dims = list(data["sector-dims"].values())
        if max(dims) - min(dims) > TOL * max(1.0, max(dims)):
            problems.append(f"{name}: sector dimensions are not all equal")
    _line("grade-zero-identification", problems)


def test_crossed_structure_grading_action_braiding(suite):
    problems = []
    for name in GOOD:
        rep = suite(name)
        limit = 0.0 if rep.backend == "exact" else TOL
        for check in ("grading", "crossed-braiding",
                      "braiding-relations", "braiding-naturality"):
            c = _named(rep, check)
            if c.status != "pass" or c.residual > limit:
                problems.append(f"{name}: {check} residual {c.residual}")
    _line("crossed-structure", problems)


def test_regular_algebra_frobenius_suite(pipeline):
    problems = []
    structural = ["unit-multiplicity", "automorphism-count",
                  "group-identified", "absorbs-subcategory"]
    for name in GOOD:
        cfg, fr, ext = pipeline(name)
        order = len(fr.group.elements)
        if not (fr.beta == 1 and fr.alpha == order and fr.gamma.dim == order):
            problems.append(f"{name}: normalization scalars are off")
        checks = regular_checks(fr)
        if any(checks[k] != 0.0 for k in structural):
            problems.append(f"{name}: structural counts are off")
        limit = 0.0 if cfg.backend == "exact" else TOL
        worst = max(v for k, v in checks.items() if k not in structural)
        if worst > limit:
            problems.append(f"{name}: law residual {worst}")
    _line("frobenius-suite", problems)


def test_module_category_oracle_agreement(suite):
    problems = []
    for name in GOOD:
        c = _named(suite(name), "module-oracle")
        data = c.data
        if (c.status != "pass" or data["module-count"] != data["simple-count"]
                or not data["dims-match"] or not data["global-dim-match"]):
            problems.append(f"{name}: module classification disagrees ({data})")
    _line("module-oracle-equivalence", problems)


def test_abelian_character_grading(pipeline):
    problems = []
    for name in POINTED:
        cfg, fr, ext = pipeline(name)
        rep = ext.abelian_grading_report()
        for key in ("multiplicative", "characters-match", "extension-agrees"):
            if not rep[key]:
                problems.append(f"{name}: {key} fails")
        for x in ext.ambient:
            want = rep["grades"][x.label]
            for summand, _mult in ext.decompose_ext(ext.iota_object(x)):
                if summand.grade != want:
                    problems.append(
                        f"{name}: a summand of the embedded {x.label} has grade"
                        f" {summand.grade}, its character says {want}")
    _line("abelian-character-grading", problems)


def test_property_suites_and_negative_control(suite):
    problems = []
    families = ("calculus", "action", "braiding-slots",
                "fixpoint-descriptions", "fixpoint-homs",
                "zigzag", "hexagon", "sphericality")
    for name in GOOD:
        rep = suite(name)
        if rep.failed:
            problems.append(f"{name}: failing checks {rep.failed}")
        for check in families:
            if _named(rep, check).status != "pass":
                problems.append(f"{name}: {check} did not pass")
    bad = suite("corrupted-hexagon")
    if bad.failed != ["hexagon"]:
        problems.append(
            f"negative control failed {bad.failed}, want exactly ['hexagon']")
    _line("property-suites", problems)
