"""The regular commutative Frobenius algebra of a Tannakian subcategory.

Given a certified subcategory spec, build the algebra object Gamma whose
underlying object is the regular representation of the hidden group, with
multiplication, unit, comultiplication and counit normalized so that

    eps . eta = 1          (beta)
    m . delta = |G| . id   (alpha)

Two constructions are supported:

* all subcategory simples invertible  -> group algebra on the label group,
  requiring the realized braiding to be pointwise trivial on those simples;
* all subcategory simples trivially graded -> function algebra on Q/K where
  K is the common kernel of the actions (delta-function basis).

When both apply they are built and cross-checked against each other.
The algebra automorphisms that are morphisms of the ambient category form
a finite group recoverable from the data alone; it is solved for by
splitting Gamma into its minimal idempotents and filtering permutations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import lcm

import numpy as np

from .category import (
    Category,
    Mor,
    Obj,
    braiding,
    decompose_object,
    dsum_objs,
    hom_basis,
    hom_dim,
    morphism_defect,
    tensor_mor,
    tensor_obj,
)
from .groups import FiniteGroup
from .linalg import (
    MatrixAlgebra,
    SpanBasis,
    eye,
    inv_mat,
    mats_equal,
    max_abs,
    split_idempotents,
    zeros,
)
from .scalars import scalar_is_zero


class UnsupportedSubcategory(Exception):
    """The subcategory is outside the two supported construction routes."""


class RegularAlgebra:
    """Gamma with its Frobenius structure and solved automorphism group."""

    def __init__(self, spec, gamma: Obj, m: Mor, eta: Mor, delta: Mor,
                 eps: Mor, expected_group: FiniteGroup, path: str):
        self.spec = spec
        self.cat: Category = spec.cat
        self.gamma = gamma
        self.m = m
        self.eta = eta
        self.delta = delta
        self.eps = eps
        self.alpha = gamma.dim
        self.beta = 1
        self.path = path
        self.expected_group = expected_group
        self.p0 = eta @ eps
        # filled in by _solve_automorphisms
        self.group: FiniteGroup | None = None
        self.automorphisms: list[Mor] | None = None
        self.delta_vectors: list[np.ndarray] | None = None
        self.cross_checked = False

    def one(self):
        return Fraction(1) if self.cat.exact else 1.0

    def law_residuals(self) -> dict[str, float]:
        """Numeric size of each structure-law defect (all zero when valid)."""
        g, m, eta, delta, eps = self.gamma, self.m, self.eta, self.delta, self.eps
        idg = Mor.identity(g)
        c = braiding(g, g)
        out = {}
        out["associative"] = (m @ tensor_mor(m, idg)).defect(m @ tensor_mor(idg, m))
        out["unital"] = max(
            (m @ tensor_mor(eta, idg)).defect(idg),
            (m @ tensor_mor(idg, eta)).defect(idg))
        out["coassociative"] = (tensor_mor(delta, idg) @ delta).defect(
            tensor_mor(idg, delta) @ delta)
        out["counital"] = max(
            (tensor_mor(eps, idg) @ delta).defect(idg),
            (tensor_mor(idg, eps) @ delta).defect(idg))
        out["frobenius"] = max(
            (tensor_mor(idg, m) @ tensor_mor(delta, idg)).defect(delta @ m),
            (tensor_mor(m, idg) @ tensor_mor(idg, delta)).defect(delta @ m))
        out["commutative"] = (m @ c).defect(m)
        out["cocommutative"] = (c @ delta).defect(delta)
        out["special"] = (m @ delta).defect(idg.scale(self._alpha_scalar()))
        beta = (eps @ eta).mat[0, 0]
        out["normalized"] = abs(complex(beta) - 1) if not self.cat.exact else (
            0.0 if beta == 1 else 1.0)
        out["base-idempotent"] = (self.p0 @ self.p0).defect(self.p0)
        return out

    def _alpha_scalar(self):
        return Fraction(self.alpha) if self.cat.exact else float(self.alpha)

    def automorphism_of(self, name: str) -> Mor:
        return self.automorphisms[self.group.index(name)]


# ---------------------------------------------------------------------------
# construction routes


def regular_algebra(spec, seed: int = 0) -> RegularAlgebra:
    cat: Category = spec.cat
    simples = spec.simples
    ident = cat.group.identity
    trivially_graded = all(q == ident for s in simples for q in s.grades)
    invertible = all(s.dim == 1 for s in simples)
    if trivially_graded:
        fr = _function_algebra(spec)
    elif invertible:
        fr = _group_algebra(spec)
    else:
        raise UnsupportedSubcategory(
            "subcategory has simples that are neither all invertible nor all "
            "trivially graded; no construction route applies")
    _assert_laws(fr)
    _solve_automorphisms(fr, seed)
    if trivially_graded and invertible:
        other = _group_algebra(spec)
        _assert_laws(other)
        _solve_automorphisms(other, seed)
        assert other.gamma.dim == fr.gamma.dim
        assert other.group.isomorphic(fr.group)
        fr.cross_checked = True
    return fr


def _group_algebra(spec) -> RegularAlgebra:
    """Gamma = group algebra of the label group of invertible simples."""
    cat: Category = spec.cat
    labels = spec.labels
    n = len(labels)
    parts = [cat.simple_by_label(l) for l in labels]
    one = Fraction(1) if cat.exact else 1.0

    # pointwise-trivial braiding is what makes the plain group algebra
    # commutative in the categorical sense
    for a in parts:
        for b in parts:
            v = braiding(a, b).mat[0, 0]
            ok = (v == 1) if cat.exact else abs(v - 1) <= cat.tol
            if not ok:
                raise UnsupportedSubcategory(
                    f"braiding of ({a.label},{b.label}) is {v!r}, not 1: "
                    "the invertible route needs a pointwise-trivial braiding")

    # label multiplication table
    table = []
    for a in parts:
        row = []
        for b in parts:
            dec = decompose_object(tensor_obj(a, b))
            assert len(dec) == 1 and dec[0][1] == 1, "labels must form a group"
            row.append(labels.index(dec[0][0]))
        table.append(row)
    label_group = FiniteGroup(list(labels), table)
    e = next(i for i, p in enumerate(parts) if hom_dim(cat.unit, p) == 1)
    assert e == label_group.identity

    gamma, _, _ = dsum_objs(parts)
    gg = tensor_obj(gamma, gamma)
    m = zeros(n, n * n, cat.exact)
    delta = zeros(n * n, n, cat.exact)
    for i in range(n):
        for j in range(n):
            m[table[i][j], i * n + j] = one
            delta[i * n + j, table[i][j]] = delta[i * n + j, table[i][j]] + one
    eta = zeros(n, 1, cat.exact)
    eta[e, 0] = one
    eps = zeros(1, n, cat.exact)
    eps[0, e] = one
    return RegularAlgebra(
        spec, gamma,
        Mor(gg, gamma, m), Mor(cat.unit, gamma, eta),
        Mor(gamma, gg, delta), Mor(gamma, cat.unit, eps),
        expected_group=label_group, path="group-algebra")


def _function_algebra(spec) -> RegularAlgebra:
    """Gamma = functions on Q/K, K the common kernel of the actions."""
    cat: Category = spec.cat
    q = cat.group
    kernel = []
    for a in range(len(q)):
        if all(mats_equal(s.rho[a], eye(s.dim, cat.exact), cat.tol)
               for s in spec.simples):
            kernel.append(a)
    qbar, coset_of = q.quotient(kernel)
    n = len(qbar)
    total = sum(s.dim ** 2 for s in spec.simples)
    if total != n:
        raise UnsupportedSubcategory(
            f"subcategory squared dimensions sum to {total}, but the hidden "
            f"group has order {n}; the simples do not exhaust its irreducibles")

    one = Fraction(1) if cat.exact else 1.0
    rho = {}
    for a in range(len(q)):
        mat = zeros(n, n, cat.exact)
        for j in range(n):
            mat[qbar.mul(coset_of[a], j), j] = one
        rho[a] = mat
    gamma = Obj(cat, (q.identity,) * n, rho)
    gamma.check_valid()
    # the regular object decomposes into the subcategory simples with
    # multiplicity equal to their dimension
    dec = dict(decompose_object(gamma))
    assert dec == {s.label: s.dim for s in spec.simples}, dec

    gg = tensor_obj(gamma, gamma)
    m = zeros(n, n * n, cat.exact)
    delta = zeros(n * n, n, cat.exact)
    eta = zeros(n, 1, cat.exact)
    eps = zeros(1, n, cat.exact)
    big = Fraction(n) if cat.exact else float(n)
    inv = Fraction(1, n) if cat.exact else 1.0 / n
    for i in range(n):
        m[i, i * n + i] = one
        delta[i * n + i, i] = big
        eta[i, 0] = one
        eps[0, i] = inv
    return RegularAlgebra(
        spec, gamma,
        Mor(gg, gamma, m), Mor(cat.unit, gamma, eta),
        Mor(gamma, gg, delta), Mor(gamma, cat.unit, eps),
        expected_group=qbar, path="function-algebra")


def _assert_laws(fr: RegularAlgebra):
    res = fr.law_residuals()
    if fr.cat.exact:
        bad = {k: v for k, v in res.items() if v != 0}
    else:
        bad = {k: v for k, v in res.items() if v > fr.cat.tol}
    assert not bad, f"Frobenius law defects: {bad}"


# ---------------------------------------------------------------------------
# automorphisms


def _solve_automorphisms(fr: RegularAlgebra, seed: int = 0):
    cat = fr.cat
    n = fr.gamma.dim
    exact = cat.exact

    # abstract structure constants of Gamma, then its minimal idempotents
    mult = np.empty((n, n, n), dtype=object) if exact else np.zeros(
        (n, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                mult[i, j, k] = fr.m.mat[k, i * n + j]
    unit_vec = fr.eta.mat[:, 0].copy()
    alg = MatrixAlgebra.from_structure(
        mult, unit_vec, tol=cat.tol,
        order_hint=lcm(cat.order_hint, n), seed=seed)
    blocks = split_idempotents(alg)
    deltas = [alg.element_vector(f) for blk in blocks for f in blk.minimals]
    assert len(deltas) == n, "regular algebra must split into dim-many points"
    acc = deltas[0].copy()
    for d in deltas[1:]:
        acc = acc + d
    assert _vec_close(acc, unit_vec, cat), "idempotents must sum to the unit"

    dmat = np.stack(deltas, axis=1)
    dinv = inv_mat(dmat)

    # the group action permutes the points; record those permutations
    point_perms = []
    for g in cat.generators:
        moved = fr.gamma.rho[g] @ dmat
        point_perms.append(tuple(_match_column(moved[:, i], deltas, cat)
                                 for i in range(n)))

    accepted: list[tuple[int, ...]] = []
    mors: list[Mor] = []
    thresh = 0.0 if exact else 1e3 * cat.tol
    for sigma in permutations(range(n)):
        if any(tuple(sigma[p[i]] for i in range(n)) !=
               tuple(p[sigma[i]] for i in range(n)) for p in point_perms):
            continue
        perm = zeros(n, n, exact)
        one = Fraction(1) if exact else 1.0
        for i in range(n):
            perm[sigma[i], i] = one
        pmat = dmat @ perm @ dinv
        cand = Mor(fr.gamma, fr.gamma, pmat)
        if morphism_defect(cand) > thresh:
            continue
        accepted.append(sigma)
        mors.append(cand)

    assert accepted, "the identity automorphism must always be found"
    # every accepted map really is a Frobenius-algebra automorphism
    for cand in mors:
        pp = tensor_mor(cand, cand)
        ok = ((cand @ fr.m).defect(fr.m @ pp) <= thresh
              and (cand @ fr.eta).defect(fr.eta) <= thresh
              and (fr.eps @ cand).defect(fr.eps) <= thresh
              and (pp @ fr.delta).defect(fr.delta @ cand) <= thresh)
        assert ok, "accepted map fails a structure-preservation law"

    pos = {s: i for i, s in enumerate(accepted)}
    table = []
    for s in accepted:
        row = []
        for t in accepted:
            st = tuple(s[t[i]] for i in range(n))
            assert st in pos, "automorphisms are not closed under composition"
            row.append(pos[st])
        table.append(row)
    ident = tuple(range(n))
    order = sorted(range(len(accepted)),
                   key=lambda i: (accepted[i] != ident, accepted[i]))
    if len(order) == 2:
        names = ["e", "g"]
    else:
        names = ["e"] + [f"g{k}" for k in range(1, len(order))]
    reorder = {old: new for new, old in enumerate(order)}
    table2 = [[reorder[table[order[a]][order[b]]] for b in range(len(order))]
              for a in range(len(order))]
    fr.group = FiniteGroup(names, table2)
    fr.automorphisms = [mors[order[k]] for k in range(len(order))]
    fr.delta_vectors = deltas
    assert len(fr.automorphisms) == len(fr.expected_group), (
        len(fr.automorphisms), len(fr.expected_group))
    assert fr.group.isomorphic(fr.expected_group), (
        "solved automorphism group does not match the hidden group")


def _vec_close(a: np.ndarray, b: np.ndarray, cat: Category) -> bool:
    d = a - b
    if cat.exact:
        return all(scalar_is_zero(x) for x in d.flat)
    return float(np.max(np.abs(d))) <= 1e3 * cat.tol


def _match_column(col: np.ndarray, deltas: list[np.ndarray], cat: Category) -> int:
    for k, d in enumerate(deltas):
        if _vec_close(col, d, cat):
            return k
    raise AssertionError("group action does not permute the algebra points")


# ---------------------------------------------------------------------------
# structural checks used by tests and the verification suite


def regular_checks(fr: RegularAlgebra) -> dict[str, float]:
    """Residuals for the headline properties of the regular algebra."""
    cat = fr.cat
    out = dict(fr.law_residuals())
    out["unit-multiplicity"] = float(hom_dim(cat.unit, fr.gamma) != 1)
    out["automorphism-count"] = float(len(fr.automorphisms) != fr.gamma.dim)
    out["group-identified"] = float(not fr.group.isomorphic(fr.expected_group))
    # Gamma (x) X is a dim(X)-fold multiple of Gamma for subcategory X
    worst = 0.0
    base = dict(decompose_object(fr.gamma))
    for s in fr.spec.simples:
        dec = dict(decompose_object(tensor_obj(fr.gamma, s)))
        want = {l: mult * s.dim for l, mult in base.items()}
        if dec != want:
            worst = 1.0
    out["absorbs-subcategory"] = worst
    return out


def fiber_monoidal_check(fr: RegularAlgebra, x: Obj, y: Obj) -> bool:
    """Hom(Gamma,X) (x) Hom(Gamma,Y) -> Hom(Gamma, X(x)Y), (s,t) -> (s(x)t).delta
    must be an isomorphism: that is what makes Hom(Gamma,-) a fiber functor."""
    bx = hom_basis(fr.gamma, x)
    by = hom_basis(fr.gamma, y)
    target_dim = hom_dim(fr.gamma, tensor_obj(x, y))
    if len(bx) * len(by) != target_dim:
        return False
    sb = SpanBasis(fr.cat.exact, fr.cat.tol)
    count = 0
    for s in bx:
        for t in by:
            v = (tensor_mor(s, t) @ fr.delta).mat.reshape(-1)
            if sb.add(v):
                count += 1
    return count == target_dim

def fixpoint_check(fr: RegularAlgebra, x: Obj, y: Obj) -> dict[str, float]:
    """Three descriptions of the invariant part of Hom(Gamma (x) X, Y) agree:

    * maps fixed by every automorphism twist  s -> s . (g^-1 (x) 1)
    * maps s with  s . (p0 (x) 1) = s
    * maps factoring through the counit:  t . (eps (x) 1)
    """
    cat = fr.cat
    gx = tensor_obj(fr.gamma, x)
    basis = hom_basis(gx, y)
    idx = Mor.identity(x)
    if not basis:
        empty = hom_dim(x, y) == 0
        return {"fixed-vs-base": 0.0, "base-vs-factored": float(not empty)}

    constraints = []
    for g in fr.automorphisms:
        ginv = Mor(fr.gamma, fr.gamma, inv_mat(g.mat))
        tw = tensor_mor(ginv, idx)
        constraints.append([((b @ tw) - b).mat.reshape(-1) for b in basis])
    fixed = _solution_span(basis, constraints, cat)

    p0x = tensor_mor(fr.p0, idx)
    stable = _solution_span(
        basis, [[((b @ p0x) - b).mat.reshape(-1) for b in basis]], cat)

    factored = [(t @ tensor_mor(fr.eps, idx)).mat.reshape(-1)
                for t in hom_basis(x, y)]

    out = {}
    out["fixed-vs-base"] = float(not _same_span(fixed, stable, cat))
    sb = SpanBasis(cat.exact, cat.tol)
    fac_dim = sum(1 for v in factored if sb.add(v))
    ok = fac_dim == len(fixed) and all(_in_span(fixed, v, cat) for v in factored)
    out["base-vs-factored"] = float(not ok)
    return out


def _solution_span(basis: list[Mor], constraints: list[list[np.ndarray]],
                   cat: Category) -> list[np.ndarray]:
    """Flattened matrices of the basis combinations killing every constraint.

    Each constraint is a list of residual vectors aligned with the basis;
    we solve sum_k c_k residual[k] = 0 simultaneously.
    """
    from .linalg import nullspace

    blocks = [np.stack(rows, axis=1) for rows in constraints]
    stacked = np.concatenate(blocks, axis=0)
    sols = nullspace(stacked, cat.tol)
    members = []
    sb = SpanBasis(cat.exact, cat.tol)
    for c in sols:
        v = None
        for k, b in enumerate(basis):
            term = b.mat * c[k] if cat.exact else c[k] * b.mat
            v = term if v is None else v + term
        flat = v.reshape(-1)
        if sb.add(flat):
            members.append(flat)
    return members


def _in_span(members: list[np.ndarray], v: np.ndarray, cat: Category) -> bool:
    from .linalg import coords_in_span

    if not members:
        if cat.exact:
            return all(scalar_is_zero(x) for x in v.flat)
        return float(np.max(np.abs(v))) <= cat.tol
    return coords_in_span(members, v, cat.tol) is not None


def _same_span(s1: list[np.ndarray], s2: list[np.ndarray], cat: Category) -> bool:
    return (len(s1) == len(s2)
            and all(_in_span(s1, v, cat) for v in s2)
            and all(_in_span(s2, v, cat) for v in s1))
