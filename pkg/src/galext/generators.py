"""Constructors for the concrete categories shipped with the package.

* `rep_category(G)`       — representations of a finite group (symmetric).
* `pointed_category(...)` — invertible objects over an abelian group with a
                            bicharacter braiding.
* `drinfeld_double(G)`    — modules over the Drinfeld double, realized as
                            induced representations on conjugacy classes.
* `product_category(...)` — product of two realized categories.

All of them produce the same kind of `Category` (graded equivariant
spaces), so the downstream machinery never branches on the origin.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import lcm

import numpy as np

from .category import (
    Category,
    Mor,
    Obj,
    braiding,
    decompose_object,
    dual_obj,
    hom_dim,
    scalar_of,
    tensor_obj,
    twist,
)
from .groups import FiniteGroup, product as group_product
from .linalg import (
    MatrixAlgebra,
    SpanBasis,
    eye,
    max_abs,
    solve_linear,
    split_idempotents,
    zeros,
)
from .scalars import root_of_unity, scalar_is_zero, scalar_to_complex


class NotSymmetric(Exception):
    """The chosen subcategory is not symmetric (monodromy is nontrivial)."""


class NonTrivialTwist(Exception):
    """The chosen subcategory has a nontrivial twist (not Tannakian)."""


class NonIntegralDimension(Exception):
    """A subcategory object has a non-integer dimension."""


# ---------------------------------------------------------------------------
# irreducible representations via splitting the group algebra


class Irrep:
    def __init__(self, label: str, dim: int, mats: dict[int, np.ndarray]):
        self.label = label
        self.dim = dim
        self.mats = mats


def irreducible_reps(g: FiniteGroup, exact: bool = True, tol: float = 1e-9,
                     seed: int = 0) -> list[Irrep]:
    """All irreps of g, found by splitting the right-multiplication algebra.

    The minimal left ideals of the group algebra are the images of minimal
    idempotents of right multiplication; restricting left translation to
    such an image yields an irreducible representation.
    """
    n = len(g)
    left = {}
    right = []
    for a in range(n):
        lm = zeros(n, n, exact)
        rm = zeros(n, n, exact)
        one = Fraction(1) if exact else 1.0
        for j in range(n):
            lm[g.mul(a, j), j] = one
            rm[g.mul(j, a), j] = one
        left[a] = lm
        right.append(rm)
    alg = MatrixAlgebra(right, eye(n, exact), tol=tol, order_hint=g.exponent, seed=seed)
    blocks = split_idempotents(alg)
    reps = []
    for blk in blocks:
        f = blk.minimals[0]
        basis = _image_basis(f, exact, tol)
        mats = {a: _restrict(left[a], basis, tol) for a in range(n)}
        reps.append(mats)
    # sanity: representation property and the dimension count
    assert sum(m[g.identity].shape[0] ** 2 for m in reps) == n
    for m in reps:
        for a in range(n):
            for b in range(n):
                d = m[a] @ m[b] - m[g.mul(a, b)]
                if exact:
                    assert all(scalar_is_zero(v) for v in d.flat)
                else:
                    assert max_abs(d) <= 1e-7
    # deterministic order: trivial first, then by dimension, then by the
    # phases of the character values (so cyclic-group characters come out
    # in frequency order: chi_k(j) = zeta^(jk))
    def key(mats):
        from cmath import phase
        from math import pi

        d = mats[g.identity].shape[0]
        chars = []
        for a in range(n):
            t = sum(scalar_to_complex(mats[a][i, i]) for i in range(d))
            ang = phase(t) % (2 * pi) if abs(t) > 1e-9 else 0.0
            chars.append((round(ang, 6), round(abs(t), 6)))
        trivial = d == 1 and all(c == (0.0, 1.0) for c in chars)
        return (not trivial, d, chars)

    reps.sort(key=key)
    return [Irrep(f"chi{i}", m[g.identity].shape[0], m) for i, m in enumerate(reps)]


def _image_basis(f: np.ndarray, exact: bool, tol: float) -> np.ndarray:
    """Matrix whose columns form a basis of the column space of idempotent f."""
    if exact:
        sb = SpanBasis(True)
        cols = [f[:, j] for j in range(f.shape[1])]
        keep = [c for c in cols if sb.add(c)]
        return np.stack(keep, axis=1)
    w, v = np.linalg.eigh((f + f.conj().T) / 2)
    cols = [v[:, i] for i in range(v.shape[1]) if w[i] > 0.5]
    return np.stack(cols, axis=1)


def _restrict(op: np.ndarray, basis: np.ndarray, tol: float) -> np.ndarray:
    """Coordinates of op restricted to the column span of `basis`."""
    target = op @ basis
    k = basis.shape[1]
    if basis.dtype == object:
        out = zeros(k, k, True)
        for j in range(k):
            sol = solve_linear(basis, target[:, j])
            assert sol is not None, "subspace is not invariant"
            out[:, j] = sol
        return out
    return basis.conj().T @ target  # basis is orthonormal in float mode


# ---------------------------------------------------------------------------
# generators


def rep_category(g: FiniteGroup, exact: bool = True, tol: float = 1e-9,
                 seed: int = 0) -> Category:
    """Rep(G): trivially graded objects, flip braiding (symmetric)."""
    cat = Category(g, exact=exact, tol=tol, order_hint=g.exponent, seed=seed)
    for irr in irreducible_reps(g, exact=exact, tol=tol, seed=seed):
        cat.add_simple(irr.label, [g.identity] * irr.dim, irr.mats)
    return cat


def abelian_group(orders: list[int]) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Product of cyclic groups; returns the group and its element tuples."""
    tuples = list(iproduct(*[range(n) for n in orders]))
    pos = {t: i for i, t in enumerate(tuples)}
    names = [",".join(str(x) for x in t) for t in tuples]
    table = [[pos[tuple((a[k] + b[k]) % orders[k] for k in range(len(orders)))]
              for b in tuples] for a in tuples]
    return FiniteGroup(names, table), tuples


def pointed_category(orders: list[int], bichar_exponents: list[list[int]],
                     exact: bool = True, tol: float = 1e-9,
                     labels: dict[str, str] | None = None,
                     seed: int = 0) -> Category:
    """All invertible objects over A = prod Z_orders with braiding b(a,a').

    b(a, a') = prod_{k,l} zeta_{gcd(n_k, n_l)} ^ (B[k][l] a_k a'_l), which is
    a well defined bicharacter for any integer matrix B.  The simple with
    label a is realized with grade a and the character b(., a) as action.
    """
    grp, tuples = abelian_group(orders)
    nf = len(orders)
    if len(bichar_exponents) != nf or any(len(r) != nf for r in bichar_exponents):
        raise ValueError("bicharacter exponent matrix must be square in the factors")

    def bichar(a: tuple, b: tuple):
        val = Fraction(1) if exact else complex(1.0)
        for k in range(nf):
            for l in range(nf):
                m = gcd_(orders[k], orders[l])
                e = bichar_exponents[k][l] * a[k] * b[l]
                val = val * root_of_unity(m, e, exact=exact)
        return val

    cat = Category(grp, exact=exact, tol=tol, order_hint=lcm(*orders), seed=seed)
    labels = labels or {}
    for idx, a in enumerate(tuples):
        name = grp.elements[idx]
        label = labels.get(name, f"g{name}")
        rho = {}
        for gi, gt in enumerate(tuples):
            m = zeros(1, 1, exact)
            m[0, 0] = bichar(gt, a)
            rho[gi] = m
        cat.add_simple(label, [idx], rho)
    return cat


def gcd_(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def drinfeld_double(g: FiniteGroup, exact: bool = True, tol: float = 1e-9,
                    seed: int = 0) -> Category:
    """Modules over the Drinfeld double of g: pairs (conjugacy class, irrep
    of the centralizer), realized as induced representations."""
    cat = Category(g, exact=exact, tol=tol, order_hint=g.exponent, seed=seed)
    classes = sorted(g.conjugacy_classes(),
                     key=lambda c: (g.element_order(c[0]), c[0]))
    for cls in classes:
        r = cls[0]
        cent_idx = g.centralizer(r)
        cent, emb = g.subgroup(cent_idx)
        into = {e: k for k, e in enumerate(emb)}
        # transversal: t[m] conjugates r to the m-th class member
        trans = []
        for c in cls:
            t = next(t for t in range(len(g)) if g.conj(t, r) == c)
            trans.append(t)
        member_pos = {c: m for m, c in enumerate(cls)}
        for irr in irreducible_reps(cent, exact=exact, tol=tol, seed=seed):
            d = irr.dim
            dim = len(cls) * d
            grades = [c for c in cls for _ in range(d)]
            rho = {}
            for a in range(len(g)):
                m = zeros(dim, dim, exact)
                for mi, c in enumerate(cls):
                    c2 = g.conj(a, c)
                    m2 = member_pos[c2]
                    z = g.mul(g.mul(g.inverse[trans[m2]], a), trans[mi])
                    assert z in into, "transversal defect"
                    pz = irr.mats[into[z]]
                    for i in range(d):
                        for j in range(d):
                            m[m2 * d + i, mi * d + j] = pz[i, j]
                rho[a] = m
            label = f"{g.elements[r]}:{irr.label}"
            cat.add_simple(label, grades, rho)
    total = sum(s.dim ** 2 for s in cat.simples)
    assert total == len(g) ** 2, "double must have global dimension |G|^2"
    return cat


def product_category(c1: Category, c2: Category) -> Category:
    """Product of two realized categories on the product structure group."""
    assert c1.exact == c2.exact
    grp = group_product(c1.group, c2.group)
    n2 = len(c2.group)
    cat = Category(grp, exact=c1.exact, tol=max(c1.tol, c2.tol),
                   order_hint=lcm(c1.order_hint, c2.order_hint), seed=c1.seed)

    def pair_index(a: int, b: int) -> int:
        return a * n2 + b

    for s1 in c1.simples:
        for s2 in c2.simples:
            grades = [pair_index(q1, q2) for q1 in s1.grades for q2 in s2.grades]
            rho = {}
            for a in range(len(c1.group)):
                for b in range(len(c2.group)):
                    rho[pair_index(a, b)] = np.kron(s1.rho[a], s2.rho[b])
            cat.add_simple(f"{s1.label}*{s2.label}", grades, rho)
    return cat


# ---------------------------------------------------------------------------
# Tannakian subcategories


class SubcategorySpec:
    """A tensor-closed set of simple labels, certified symmetric with
    trivial twists and integer dimensions."""

    def __init__(self, cat: Category, labels: list[str]):
        self.cat = cat
        self.labels = labels

    @property
    def simples(self) -> list[Obj]:
        return [self.cat.simple_by_label(l) for l in self.labels]

    def __repr__(self):
        return f"SubcategorySpec({self.labels})"


def tannakian_subcategory(cat: Category, generator_labels: list[str]) -> SubcategorySpec:
    """Close the generators under tensor/dual and certify Tannakian-ness."""
    todo = list(generator_labels)
    have: set[str] = set()
    unit_label = _unit_label(cat)
    have.add(unit_label)
    while todo:
        lab = todo.pop()
        if lab in have:
            continue
        have.add(lab)
        s = cat.simple_by_label(lab)
        for other in sorted(have):
            t = tensor_obj(s, cat.simple_by_label(other))
            for l2, _ in decompose_object(t):
                if l2 not in have:
                    todo.append(l2)
        d = decompose_object(dual_obj(s))
        for l2, _ in d:
            if l2 not in have:
                todo.append(l2)
    labels = sorted(have, key=lambda l: (cat.simple_by_label(l).dim, l))
    spec = SubcategorySpec(cat, labels)
    certify_tannakian(spec)
    return spec


def _unit_label(cat: Category) -> str:
    for s in cat.simples:
        if s.dim == 1 and hom_dim(cat.unit, s) == 1:
            return s.label
    raise ValueError("category has no declared tensor unit")


def certify_tannakian(spec: SubcategorySpec):
    """Symmetric + trivial twists + integer dims, else a descriptive error."""
    cat = spec.cat
    for s in spec.simples:
        th = twist(s)
        if not th.equals(Mor.identity(s)):
            raise NonTrivialTwist(
                f"twist of {s.label} is {scalar_of(th)!r}, not 1")
        if s.dim <= 0:
            raise NonIntegralDimension(f"{s.label} has dimension {s.dim}")
    for a in spec.simples:
        for b in spec.simples:
            mono = braiding(b, a) @ braiding(a, b)
            ident = Mor.identity(tensor_obj(a, b))
            if not mono.equals(ident):
                raise NotSymmetric(
                    f"monodromy of ({a.label},{b.label}) is not the identity")
