"""Structural verification suite.

Every law the construction is supposed to satisfy is a named check; a run
produces a deterministic report (given backend, tolerance, and seed) that
can be serialized to JSON.  Checks yield a numeric residual; a check passes
when its residual is within the run tolerance, so an exact run must come
out at literal zero.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

import numpy as np

from .category import (
    Mor,
    braiding,
    coev,
    decompose_object,
    dsum_objs,
    dual_obj,
    ev,
    hom_basis,
    hom_dim,
    left_coev,
    left_ev,
    random_morphism,
    tensor_mor,
    tensor_obj,
    twist,
    validate_category,
)
from .crossprod import NonAbelianGrading, transparent_labels, zcenter_labels
from .frobenius import fiber_monoidal_check, fixpoint_check, regular_checks
from .linalg import eye, max_abs, nullspace
from .presets import RunConfig, build_extension
from .scalars import scalar_to_complex


def _num(v) -> float:
    return float(scalar_to_complex(v).real)


@dataclass
class CheckResult:
    name: str
    anchor: str
    status: str  # "pass" | "fail" | "skipped"
    residual: float | None
    detail: str = ""
    data: dict | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "anchor": self.anchor, "status": self.status,
               "residual": self.residual}
        if self.detail:
            out["detail"] = self.detail
        if self.data is not None:
            out["data"] = self.data
        return out


@dataclass
class Report:
    example: str
    backend: str
    tol: float
    seed: int
    checks: list[CheckResult]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {
            "example": self.example,
            "backend": self.backend,
            "tol": self.tol,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
            "summary": {
                "passed": sum(c.status == "pass" for c in self.checks),
                "failed": sum(c.status == "fail" for c in self.checks),
                "skipped": sum(c.status == "skipped" for c in self.checks),
            },
            "timings": self.timings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class _Skip(Exception):
    """Raised by a check that does not apply to the configured example."""


class _Ctx:
    """Lazily built pipeline shared by the checks of one run."""

    def __init__(self, cfg: RunConfig, samples: int):
        self.cfg = cfg
        self.cat = cfg.cat
        self.samples = samples
        self._built = None

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.cfg.seed)

    @property
    def fr(self):
        if self._built is None:
            self._built = build_extension(self.cfg)
        return self._built[0]

    @property
    def ext(self):
        if self._built is None:
            self._built = build_extension(self.cfg)
        return self._built[1]

    @property
    def sims(self):
        return self.ext.ext_simples()


CHECKS: list[tuple[str, str, object]] = []


def _check(name: str, anchor: str):
    def deco(fn):
        CHECKS.append((name, anchor, fn))
        return fn

    return deco


# -- ambient category ----------------------------------------------------------


@_check("category-valid",
        "every declared simple is Schur-irreducible and pairwise distinct,"
        " with simple dual and closed fusion")
def _category_valid(ctx):
    problems = validate_category(ctx.cat)
    return float(len(problems)), {"simples": len(ctx.cat.simples)}, "; ".join(problems)


@_check("zigzag",
        "evaluation and coevaluation satisfy the zig-zag identities"
        " on every simple")
def _zigzag(ctx):
    worst = 0.0
    for x in ctx.cat.simples:
        xd = dual_obj(x)
        idx, idxd = Mor.identity(x), Mor.identity(xd)
        idm = eye(x.dim, ctx.cat.exact)
        z1 = tensor_mor(idx, ev(x)) @ tensor_mor(coev(x), idx)
        z2 = tensor_mor(ev(x), idxd) @ tensor_mor(idxd, coev(x))
        z3 = tensor_mor(left_ev(x), idx) @ tensor_mor(idx, left_coev(x))
        for z in (z1, z2, z3):
            worst = max(worst, max_abs(z.mat - idm))
    return worst, None, ""


@_check("hexagon",
        "the braiding satisfies both hexagon identities on all simple triples")
def _hexagon(ctx):
    worst, where = 0.0, None
    for x, y, z in itertools.product(ctx.cat.simples, repeat=3):
        idx, idy, idz = (Mor.identity(o) for o in (x, y, z))
        d1 = braiding(x, tensor_obj(y, z)).defect(
            tensor_mor(idy, braiding(x, z)) @ tensor_mor(braiding(x, y), idz))
        d2 = braiding(tensor_obj(x, y), z).defect(
            tensor_mor(braiding(x, z), idy) @ tensor_mor(idx, braiding(y, z)))
        if max(d1, d2) > worst:
            worst, where = max(d1, d2), (x.label, y.label, z.label)
    detail = ""
    if worst > ctx.cfg.tol and where:
        detail = f"worst triple {where}"
    return worst, {"triples": len(ctx.cat.simples) ** 3}, detail


@_check("sphericality",
        "left and right categorical traces agree on endomorphisms")
def _sphericality(ctx):
    rng = ctx.rng()
    worst = 0.0

    def both_traces(f: Mor):
        x = f.dom
        xd = dual_obj(x)
        left = left_ev(x) @ tensor_mor(f, Mor.identity(xd)) @ coev(x)
        right = ev(x) @ tensor_mor(Mor.identity(xd), f) @ left_coev(x)
        return max_abs(left.mat - right.mat)

    for x in ctx.cat.simples:
        worst = max(worst, both_traces(Mor.identity(x)))
    big = dsum_objs(list(ctx.cat.simples))[0]
    for _ in range(ctx.samples):
        worst = max(worst, both_traces(random_morphism(big, big, rng)))
    return worst, None, ""


@_check("ribbon",
        "the twist satisfies theta(X (x) Y) ="
        " c_{Y,X} c_{X,Y} (theta_X (x) theta_Y) on all simple pairs")
def _ribbon(ctx):
    worst = 0.0
    for a, b in itertools.product(ctx.cat.simples, repeat=2):
        lhs = twist(tensor_obj(a, b))
        rhs = (braiding(b, a) @ braiding(a, b)) @ tensor_mor(twist(a), twist(b))
        worst = max(worst, lhs.defect(rhs))
    return worst, None, ""


@_check("transparency",
        "the two transparency criteria (identity monodromy; monodromy trace"
        " equal to the dimension product) agree on every pair")
def _transparency(ctx):
    zc = zcenter_labels(ctx.cat)  # asserts both criteria agree
    return 0.0, {"transparent": zc}, ""


# -- condensation algebra --------------------------------------------------------


@_check("frobenius-laws",
        "the condensation algebra satisfies the monoid, comonoid, Frobenius,"
        " separability, commutativity, and cocommutativity laws")
def _frobenius_laws(ctx):
    res = ctx.fr.law_residuals()
    return max(res.values()), {k: float(v) for k, v in res.items()}, ""


@_check("frobenius-normalized",
        "the separability scalars are alpha = |G| and beta = 1")
def _frobenius_normalized(ctx):
    fr = ctx.fr
    n = len(fr.group)
    res = max(abs(_num(fr.alpha) - n), abs(_num(fr.beta) - 1))
    return res, {"alpha": _num(fr.alpha), "beta": _num(fr.beta), "order": n}, ""


@_check("frobenius-regular",
        "the algebra object contains the unit once, absorbs subcategory"
        " simples, and its automorphisms realize the expected group")
def _frobenius_regular(ctx):
    res = regular_checks(ctx.fr)
    data = {k: float(v) for k, v in res.items()}
    data["path"] = ctx.fr.path
    data["group"] = list(ctx.fr.group.elements)
    return max(res.values()), data, ""


@_check("fiber-monoidal",
        "the fiber functor Hom(1, Gamma (x) -) is monoidal on the subcategory")
def _fiber_monoidal(ctx):
    bad = [(x.label, y.label)
           for x, y in itertools.product(ctx.fr.spec.simples, repeat=2)
           if not fiber_monoidal_check(ctx.fr, x, y)]
    return float(len(bad)), None, f"failing pairs {bad}" if bad else ""


@_check("fixpoint-descriptions",
        "the action-invariant enriched homs coincide with the"
        " idempotent-stable ones and with embedded plain homs")
def _fixpoint_descriptions(ctx):
    worst = 0.0
    probe = list(ctx.fr.spec.simples) + [ctx.cat.unit]
    for x, y in itertools.product(probe, repeat=2):
        worst = max(worst, max(fixpoint_check(ctx.fr, x, y).values()))
    return worst, None, ""


# -- the extension ----------------------------------------------------------------


@_check("enumeration",
        "splitting one embedded representative per reachability class"
        " enumerates pairwise non-isomorphic simples")
def _enumeration(ctx):
    sims = ctx.sims
    data = {"count": len(sims),
            "simples": [{"label": s.label,
                         "dim": round(_num(s.dim), 12),
                         "grade": s.grade} for s in sims]}
    return 0.0, data, ""


@_check("dimension-ratio",
        "the extension's global dimension is the ambient global dimension"
        " divided by the group order")
def _dimension_ratio(ctx):
    total = sum(_num(s.dim) ** 2 for s in ctx.sims)
    want = _num(ctx.cat.global_dim()) / len(ctx.fr.group)
    return abs(total - want), {"extension-dim": round(total, 12),
                               "expected": round(want, 12)}, ""


@_check("grading",
        "grades multiply under the tensor product and conjugate under"
        " the group action")
def _grading(ctx):
    rep = ctx.ext.grading_report()
    return float(not all(rep.values())), dict(rep), ""


@_check("spectrum-normal",
        "the set of realized grades is a normal subgroup")
def _spectrum_normal(ctx):
    spec = ctx.ext.spectrum()  # asserts subgroup + normality
    grp = ctx.fr.group
    idx = [grp.index(g) for g in spec]
    ok = grp.is_subgroup(idx) and grp.is_normal(idx)
    return float(not ok), {"spectrum": spec}, ""


@_check("spectrum-stabilizer",
        "the spectrum equals the stabilizer of the transparent part"
        " of the algebra object")
def _spectrum_stabilizer(ctx):
    spec = ctx.ext.spectrum()
    stab = ctx.ext.center_stabilizer()
    return (float(spec != stab),
            {"spectrum": spec, "stabilizer": stab},
            "" if spec == stab else f"spectrum {spec} != stabilizer {stab}")


@_check("grade-zero",
        "the trivially graded sector is the condensation of the subcategory's"
        " centralizer, and all realized sectors have its dimension")
def _grade_zero(ctx):
    rep = ctx.ext.grade_zero_report()
    ok = rep["zero-part-matches"] and rep["equidimensional"] \
        and rep["zero-count"] == rep["independent-count"]
    return float(not ok), dict(rep), ""


@_check("sector-counting",
        "the number of realized grades times the trivial-sector dimension"
        " equals the extension's global dimension")
def _sector_counting(ctx):
    sims = ctx.sims
    grp = ctx.fr.group
    ename = grp.elements[grp.identity]
    dim_e = sum(_num(s.dim) ** 2 for s in sims if s.grade == ename)
    total = sum(_num(s.dim) ** 2 for s in sims)
    res = abs(len(ctx.ext.spectrum()) * dim_e - total)
    return res, {"sectors": len(ctx.ext.spectrum()),
                 "trivial-sector-dim": round(dim_e, 12)}, ""


@_check("crossed-braiding",
        "the crossed braiding is invertible, matches both one-sided"
        " normalizations, and lands in the acted-on codomain, on all pairs")
def _crossed_braiding(ctx):
    grp = ctx.fr.group
    for a, b in itertools.product(ctx.sims, repeat=2):
        chat, w, cod = ctx.ext.crossed_braiding(a, b)  # asserts internally
        prod = grp.mul(grp.index(a.grade), grp.index(b.grade))
        assert ctx.ext.grade(cod) == grp.elements[prod]
    return 0.0, {"pairs": len(ctx.sims) ** 2}, ""


@_check("braiding-relations",
        "the crossed braiding is compatible with tensoring in either slot"
        " on all simple triples")
def _braid_relations(ctx):
    worst, where = 0.0, None
    for x, y, z in itertools.product(ctx.sims, repeat=3):
        defects = ctx.ext.braid_relation_defects(x, y, z)
        d = max(defects.values())
        if d > worst:
            worst, where = d, (x.label, y.label, z.label)
    detail = f"worst triple {where}" if worst > ctx.cfg.tol and where else ""
    return worst, {"triples": len(ctx.sims) ** 3}, detail


@_check("braiding-naturality",
        "the crossed braiding is natural in both arguments")
def _braid_naturality(ctx):
    rng = ctx.rng()
    worst = 0.0
    for a, b in itertools.product(ctx.sims, repeat=2):
        for _ in range(max(1, ctx.samples // 4)):
            worst = max(worst, ctx.ext.braid_naturality_defect(a, b, rng))
    return worst, None, ""


@_check("braiding-slots",
        "embedded braidings slide past enriched morphisms: always in the"
        " first slot, and in the second slot against the centralizer")
def _slot_naturality(ctx):
    rep = ctx.ext.slot_naturality_report(ctx.rng(), samples=ctx.samples)
    return max(rep.values()), {k: float(v) for k, v in rep.items()}, ""


@_check("calculus",
        "enriched composition is associative and unital, satisfies the"
        " interchange law, and the embedding is a monoidal functor")
def _calculus(ctx):
    rep = ctx.ext.calculus_report(ctx.rng(), samples=ctx.samples)
    return max(rep.values()), {k: float(v) for k, v in rep.items()}, ""


@_check("action",
        "the group acts by monoidal functors, trivially at the identity,"
        " fixing every embedded morphism")
def _action(ctx):
    rep = ctx.ext.action_report(ctx.rng(), samples=ctx.samples)
    return max(rep.values()), {k: float(v) for k, v in rep.items()}, ""


@_check("abelian-grading",
        "for an abelian group the monodromy character grading is"
        " multiplicative and agrees with the extension grading")
def _abelian_grading(ctx):
    try:
        rep = ctx.ext.abelian_grading_report()
    except NonAbelianGrading as exc:
        raise _Skip(str(exc)) from exc
    ok = rep["multiplicative"] and rep["characters-match"] \
        and rep["extension-agrees"]
    return float(not ok), dict(rep), ""


@_check("module-oracle",
        "simple algebra modules match the extension's simples in count and"
        " dimension multiset, with the global-dimension ratio")
def _module_oracle(ctx):
    rep = ctx.ext.module_report()
    ok = all(v is True for k, v in rep.items() if isinstance(v, bool))
    return float(not ok), dict(rep), ""


@_check("decompose-embedded",
        "embedded subcategory simples decompose into dimension-many copies"
        " of the unit simple; the embedded algebra has |G|^2 endomorphisms")
def _decompose_embedded(ctx):
    ext = ctx.ext
    fr = ctx.fr
    unit_parts = ext.decompose_ext(ext.iota_object(ctx.cat.unit))
    assert len(unit_parts) == 1 and unit_parts[0][1] == 1
    unit_simple = unit_parts[0][0]
    bad = []
    for z in fr.spec.simples:
        parts = [(s.label, m) for s, m in ext.decompose_ext(ext.iota_object(z))]
        want = [(unit_simple.label, int(round(_num(z.dim))))]
        if parts != want:
            bad.append((z.label, parts))
    ig = ext.iota_object(fr.gamma)
    n = len(fr.group)
    gamma_parts = [(s.label, m) for s, m in ext.decompose_ext(ig)]
    if gamma_parts != [(unit_simple.label, n)]:
        bad.append(("gamma", gamma_parts))
    end_dim = len(ext.ext_hom(ig, ig))
    if end_dim != n * n:
        bad.append(("end-gamma-dim", end_dim))
    return (float(len(bad)),
            {"unit-simple": unit_simple.label, "end-gamma-dim": end_dim},
            f"mismatches {bad}" if bad else "")


@_check("fixpoint-homs",
        "the action-fixed part of each enriched hom space has the dimension"
        " of the corresponding plain hom space")
def _fixpoint_homs(ctx):
    ext = ctx.ext
    bad = []
    for x, y in itertools.product(ctx.cat.simples, repeat=2):
        basis = ext.hom_hat(x, y)
        if not basis:
            if hom_dim(x, y) != 0:
                bad.append((x.label, y.label))
            continue
        rows = []
        for gname in ctx.fr.group.elements:
            cols = [(ext.gamma_mor(gname, b) - b).mat.reshape(-1) for b in basis]
            rows.append(np.stack(cols, axis=1))
        fixed = nullspace(np.concatenate(rows, axis=0), ctx.cat.tol)
        if len(fixed) != hom_dim(x, y):
            bad.append((x.label, y.label))
    return (float(len(bad)), {"pairs": len(ctx.cat.simples) ** 2},
            f"mismatched pairs {bad}" if bad else "")


def _execute(checks, ctx, tol: float):
    results: list[CheckResult] = []
    timings: dict[str, float] = {}
    for name, anchor, fn in checks:
        t0 = time.perf_counter()
        try:
            residual, data, detail = fn(ctx)
            residual = float(residual)
            status = "pass" if residual <= tol else "fail"
            if status == "fail" and not detail:
                detail = f"residual {residual:.3e} exceeds tolerance {tol:.1e}"
        except _Skip as sk:
            status, residual, data, detail = "skipped", None, None, str(sk)
        except Exception as exc:  # a law violated badly enough to raise
            status, residual, data = "fail", None, None
            detail = f"{type(exc).__name__}: {exc}"
        timings[name] = round(time.perf_counter() - t0, 6)
        results.append(CheckResult(name, anchor, status, residual, detail, data))
    return results, timings


def run_suite(cfg: RunConfig, name_filter: str | None = None,
              samples: int = 8) -> Report:
    """Run (a filtered subset of) all checks against one configuration."""
    ctx = _Ctx(cfg, samples)
    selected = [c for c in CHECKS
                if name_filter is None or name_filter in c[0]]
    results, timings = _execute(selected, ctx, cfg.tol)
    return Report(cfg.example, cfg.backend, cfg.tol, cfg.seed, results, timings)


def condense_report(cfg: RunConfig) -> dict:
    """Summary of one condensation run: simples, spectrum, dimension identity."""
    fr, ext = build_extension(cfg)
    sims = ext.ext_simples()
    grp = fr.group
    total = sum(_num(s.dim) ** 2 for s in sims)
    ambient = _num(cfg.cat.global_dim())
    return {
        "example": cfg.example,
        "backend": cfg.backend,
        "tol": cfg.tol,
        "seed": cfg.seed,
        "group": list(grp.elements),
        "simples": [{"label": s.label, "dim": round(_num(s.dim), 12),
                     "grade": s.grade} for s in sims],
        "spectrum": ext.spectrum(),
        "dimensions": {
            "ambient": round(ambient, 12),
            "extension": round(total, 12),
            "group-order": len(grp),
            "ratio-residual": abs(total - ambient / len(grp)),
        },
    }


def selftest(backend: str = "float", tol: float = 1e-9, seed: int = 0) -> Report:
    """Unit fixtures for the numeric kernels plus structural sweeps on a
    small built-in category, at the requested backend and tolerance."""
    from fractions import Fraction

    from .presets import resolve_preset
    from .scalars import conj_scalar, root_of_unity
    from .linalg import inv_mat, mat_mul

    exact = backend == "exact"

    def scalar_roots(_ctx):
        z8 = [root_of_unity(8, k, exact=exact) for k in range(8)]
        total = z8[0]
        for z in z8[1:]:
            total = total + z
        pw = z8[1]
        for _ in range(7):
            pw = pw * z8[1]
        res = max(abs(scalar_to_complex(total)),
                  abs(scalar_to_complex(pw) - 1),
                  abs(scalar_to_complex(z8[3] * conj_scalar(z8[3])) - 1))
        return float(res), None, ""

    def linalg_inverse(_ctx):
        if exact:
            a = np.array([[Fraction(1, i + j + 1) for j in range(4)]
                          for i in range(4)], dtype=object)
        else:
            rng = np.random.default_rng(seed)
            a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        r = mat_mul(a, inv_mat(a)) - eye(a.shape[0], exact)
        return float(max_abs(r)), None, ""

    def linalg_kernel(_ctx):
        rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        if exact:
            a = np.array([[Fraction(v) for v in r] for r in rows], dtype=object)
        else:
            a = np.array(rows, dtype=float)
        vecs = nullspace(a, tol)
        if len(vecs) != 1:
            return 1.0, {"kernel-dim": len(vecs)}, "wrong kernel dimension"
        worst = max(max_abs((a @ v).reshape(-1, 1)) for v in vecs)
        return float(worst), None, ""

    fixtures = [
        ("selftest-scalars",
         "roots of unity multiply, sum to zero, and conjugate to inverses",
         scalar_roots),
        ("selftest-inverse",
         "matrix inversion round-trips to the identity", linalg_inverse),
        ("selftest-kernel",
         "kernel vectors are annihilated and complete", linalg_kernel),
    ]
    by_name = {name: (name, anchor, fn) for name, anchor, fn in CHECKS}
    for name in ("category-valid", "zigzag", "hexagon", "sphericality", "ribbon"):
        fixtures.append(by_name[name])

    class _LazyCtx:
        """Defers fixture construction into the checks, so that a category
        that cannot even be built at the requested tolerance reports as a
        failing check instead of aborting the self-test."""

        def __init__(self):
            self._ctx = None

        def __getattr__(self, item):
            if self._ctx is None:
                self._ctx = _Ctx(resolve_preset("toric-code", backend=backend,
                                                tol=tol, seed=seed), samples=4)
            return getattr(self._ctx, item)

    results, timings = _execute(fixtures, _LazyCtx(), tol)
    return Report("selftest", backend, tol, seed, results, timings)
