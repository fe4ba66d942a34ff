"""Extension of a braided category by the regular algebra of a Tannakian
subcategory.

The extended category keeps the objects of the base category but enlarges
the morphism spaces to Hom^(X, Y) := Hom(Gamma (x) X, Y), composing through
the coproduct of Gamma, and is then idempotent-completed.  This module
enumerates the simple objects of the completion, computes the group grading
carried by each simple, the group action, the crossed braiding with its
compatibility relations, and the spectrum of grades; it also provides
independent cross-checks (module category over Gamma, grade-zero sector,
abelian partial-trace grading, transparency tests).

Conventions:
* a morphism (X, p) -> (Y, q) is stored raw as s: Gamma (x) X -> Y with
  q .hat s .hat p = s;
* the identity of (X, p) is p itself; iota embeds plain morphisms via
  s |-> s . (eps (x) 1);
* grades are found by matching a closed-loop transport operator on Gamma
  against the automorphism group of the algebra.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .category import (
    Category,
    Mor,
    Obj,
    braiding,
    braiding_inv,
    coev,
    dsum_objs,
    dual_obj,
    hom_basis,
    left_ev,
    morphism_defect,
    scalar_of,
    tensor_mor,
    tensor_obj,
    trace_mor,
)
from .frobenius import RegularAlgebra
from .linalg import (
    MatrixAlgebra,
    SpanBasis,
    _inv_scalar,
    eye,
    inv_mat,
    mat_mul,
    max_abs,
    nullspace,
    solve_linear,
    split_idempotents,
    zeros,
)
from .scalars import scalar_is_zero, scalar_to_complex


class NoMatchingAutomorphism(Exception):
    """A transport operator does not match any algebra automorphism.

    Typical cause: the object is a direct sum of parts with different
    grades, so the operator is a weighted mixture of automorphisms."""


class NonAbelianGrading(Exception):
    """The partial-trace grading shortcut needs an abelian hidden group."""


class ExtObject:
    """Object of the extension: a base object with a hat-idempotent.

    `p` is stored raw as a morphism Gamma (x) X -> X satisfying
    p .hat p = p; it doubles as the identity morphism of the object."""

    __slots__ = ("base", "p", "label")

    def __init__(self, base: Obj, p: Mor, label: str | None = None):
        self.base = base
        self.p = p
        self.label = label

    def __repr__(self):
        return f"ExtObject({self.label or self.base!r})"


class ExtSimple(ExtObject):
    __slots__ = ("dim", "grade", "block")

    def __init__(self, base: Obj, p: Mor, label: str, dim, grade: str, block: int):
        super().__init__(base, p, label)
        self.dim = dim
        self.grade = grade
        self.block = block


class GaloisExtension:
    """The extension pipeline for one regular algebra.

    `ambient_labels` restricts which simple objects of the base category
    the pipeline works over (used to extend a tensor-closed part such as
    the centralizer of the subcategory with the same algebra)."""

    def __init__(self, fr: RegularAlgebra, ambient_labels: list[str] | None = None,
                 seed: int = 0):
        self.fr = fr
        self.cat: Category = fr.cat
        self.seed = seed
        if ambient_labels is None:
            self.ambient = list(self.cat.simples)
        else:
            self.ambient = [self.cat.simple_by_label(l) for l in ambient_labels]
        self._simples: list[ExtSimple] | None = None
        self._hom_cache: dict[tuple[str, str], list[Mor]] = {}

    # -- the enriched calculus ------------------------------------------------

    def hom_hat(self, x: Obj, y: Obj) -> list[Mor]:
        """Basis of the enriched morphism space Hom(Gamma (x) X, Y)."""
        key = (x.label, y.label)
        if None not in key and key in self._hom_cache:
            return self._hom_cache[key]
        out = hom_basis(tensor_obj(self.fr.gamma, x), y)
        if None not in key:
            self._hom_cache[key] = out
        return out

    def compose_hat(self, t: Mor, s: Mor) -> Mor:
        """t .hat s = t . (1 (x) s) . (delta (x) 1)."""
        g = self.fr.gamma
        x = _strip_gamma(s.dom, g)
        first = tensor_mor(self.fr.delta, Mor.identity(x))
        return t @ tensor_mor(Mor.identity(g), s) @ first

    def id_hat(self, x: Obj) -> Mor:
        return self.iota(Mor.identity(x))

    def iota(self, f: Mor) -> Mor:
        """Embed a plain morphism: f . (eps (x) 1)."""
        return f @ tensor_mor(self.fr.eps, Mor.identity(f.dom))

    def jmat(self, s: Mor) -> Mor:
        """J(s) = (1 (x) s) . (delta (x) 1): a concrete multiplicative
        picture of the enriched endomorphisms (J(t .hat s) = J(t) J(s),
        J(id-hat) = 1), used to split them with plain matrix algebra."""
        g = self.fr.gamma
        x = _strip_gamma(s.dom, g)
        first = tensor_mor(self.fr.delta, Mor.identity(x))
        return tensor_mor(Mor.identity(g), s) @ first

    def retract(self, big: Mor) -> Mor:
        """Inverse of J on its image: s = (eps (x) 1) . J(s)."""
        g = self.fr.gamma
        cod = _strip_gamma(big.cod, g)
        return tensor_mor(self.fr.eps, Mor.identity(cod)) @ big

    def tensor_hat(self, s: Mor, t: Mor) -> Mor:
        """s (x.hat) t: tensor both, feeding each factor one leg of the
        coproduct through the braiding of Gamma past the first domain."""
        g = self.fr.gamma
        x = _strip_gamma(s.dom, g)
        z = _strip_gamma(t.dom, g)
        first = tensor_mor(self.fr.delta, Mor.identity(tensor_obj(x, z)))
        mid = tensor_mor(tensor_mor(Mor.identity(g), braiding(g, x)),
                         Mor.identity(z))
        return tensor_mor(s, t) @ mid @ first

    def gamma_mor(self, gname: str, s: Mor) -> Mor:
        """The group action on enriched morphisms: s . (g^-1 (x) 1)."""
        grp = self.fr.group
        ginv = self.fr.automorphisms[grp.inverse[grp.index(gname)]]
        x = _strip_gamma(s.dom, self.fr.gamma)
        return s @ tensor_mor(ginv, Mor.identity(x))

    # -- objects of the extension ----------------------------------------------

    def ext_tensor(self, a: ExtObject, b: ExtObject) -> ExtObject:
        return ExtObject(tensor_obj(a.base, b.base), self.tensor_hat(a.p, b.p))

    def ext_double(self, a: ExtObject) -> ExtObject:
        """(X (+) X, diag(p, p)): the same object with multiplicity two,
        giving morphism spaces large enough for naturality tests."""
        both, injs, projs = dsum_objs([a.base, a.base])
        g = self.fr.gamma
        acc = None
        for inj, proj in zip(injs, projs):
            term = inj @ a.p @ tensor_mor(Mor.identity(g), proj)
            acc = term if acc is None else acc + term
        return ExtObject(both, acc)

    def gamma_ext(self, gname: str, a: ExtObject) -> ExtObject:
        return ExtObject(a.base, self.gamma_mor(gname, a.p))

    def ext_hom(self, a: ExtObject, b: ExtObject) -> list[Mor]:
        """Basis of Hom((X,p), (Y,q)): the enriched space truncated by the
        idempotents on both sides."""
        cat = self.cat
        out = []
        sb = SpanBasis(cat.exact, cat.tol)
        for s in self.hom_hat(a.base, b.base):
            v = self.compose_hat(b.p, self.compose_hat(s, a.p))
            if sb.add(v.mat.reshape(-1)):
                out.append(v)
        return out

    def ext_dim(self, a: ExtObject):
        """Quantum dimension: trace of p . (eta (x) 1)."""
        etax = tensor_mor(self.fr.eta, Mor.identity(a.base))
        return trace_mor(a.p @ etax)

    def iota_object(self, x: Obj) -> ExtObject:
        """The image of a plain object: (X, id-hat)."""
        return ExtObject(x, self.id_hat(x), label=x.label)

    def decompose_ext(self, a: ExtObject) -> list[tuple[ExtSimple, int]]:
        """Simple constituents of an extension object with multiplicities,
        obtained by splitting its endomorphism algebra; each constituent is
        identified against the enumerated simples by a hom test."""
        cat = self.cat
        sims = self.ext_simples()
        basis = self.ext_hom(a, a)
        alg = MatrixAlgebra([self.jmat(s).mat for s in basis],
                            self.jmat(a.p).mat, tol=cat.tol,
                            order_hint=lcm(cat.order_hint, len(self.fr.group)),
                            seed=self.seed)
        gx = tensor_obj(self.fr.gamma, a.base)
        found: dict[str, int] = {}
        for blk in split_idempotents(alg):
            part = ExtObject(a.base, self.retract(Mor(gx, gx, blk.minimals[0])))
            hits = [s for s in sims if len(self.ext_hom(part, s)) == 1]
            assert len(hits) == 1, "summand must match exactly one simple"
            label = hits[0].label
            assert label not in found, "one block per isomorphism class"
            found[label] = len(blk.minimals)
        total = None
        for lab, mult in found.items():
            term = self._simple_by_label(lab).dim * mult
            total = term if total is None else total + term
        d = self.ext_dim(a)
        if cat.exact:
            assert scalar_is_zero(total - d), (total, d)
        else:
            assert abs(_num(total) - _num(d)) <= 1e-6 * max(1.0, abs(_num(d)))
        order = {s.label: i for i, s in enumerate(sims)}
        return sorted(((self._simple_by_label(l), m) for l, m in found.items()),
                      key=lambda t: order[t[0].label])

    def _simple_by_label(self, label: str) -> ExtSimple:
        for s in self.ext_simples():
            if s.label == label:
                return s
        raise KeyError(label)

    # -- simple objects ---------------------------------------------------------

    def ext_simples(self) -> list[ExtSimple]:
        if self._simples is not None:
            return self._simples
        cat = self.cat
        sims = self.ambient
        classes = self._reachability_classes()

        out: list[ExtSimple] = []
        hint = lcm(cat.order_hint, len(self.fr.group))
        for cls in classes:
            rep = sims[cls[0]]
            basis = self.hom_hat(rep, rep)
            jmats = [self.jmat(s).mat for s in basis]
            dim_big = self.fr.gamma.dim * rep.dim
            alg = MatrixAlgebra(jmats, eye(dim_big, cat.exact), tol=cat.tol,
                                order_hint=hint, seed=self.seed)
            blocks = split_idempotents(alg)
            gx = tensor_obj(self.fr.gamma, rep)
            for k, blk in enumerate(blocks):
                f = Mor(gx, gx, blk.minimals[0])
                p = self.retract(f)
                assert self.compose_hat(p, p).equals(p), (
                    "retracted idempotent must be hat-idempotent")
                obj = ExtObject(rep, p)
                d = self.ext_dim(obj)
                grade = self.grade(obj)
                label = rep.label if len(blocks) == 1 else f"{rep.label}#{k}"
                out.append(ExtSimple(rep, p, label, d, grade, k))

        grp = self.fr.group
        out.sort(key=lambda s: (grp.index(s.grade), _num(s.dim).real,
                                s.base.label, s.block))
        for i, a in enumerate(out):
            assert len(self.ext_hom(a, a)) == 1, f"End({a.label}) not 1-dim"
            for b in out[i + 1:]:
                assert len(self.ext_hom(a, b)) == 0, (
                    f"Hom({a.label},{b.label}) nonzero for distinct simples")
        total = None
        for s in out:
            sq = s.dim * s.dim
            total = sq if total is None else total + sq
        want = sum(x.dim ** 2 for x in sims)
        if cat.exact:
            assert scalar_is_zero(total * len(grp) - want), (total, want)
        else:
            assert abs(_num(total) * len(grp) - want) <= 1e-6 * want
        self._simples = out
        return out

    def _reachability_classes(self) -> list[list[int]]:
        """Partition of the ambient simples by nonvanishing enriched homs;
        the relation is checked to be an equivalence relation."""
        sims = self.ambient
        n = len(sims)
        reach = [[len(self.hom_hat(sims[i], sims[j])) > 0 for j in range(n)]
                 for i in range(n)]
        for i in range(n):
            assert reach[i][i], "enriched endomorphisms must contain the identity"
            for j in range(n):
                assert reach[i][j] == reach[j][i], "relation must be symmetric"
                for k in range(n):
                    if reach[i][j] and reach[j][k]:
                        assert reach[i][k], "relation must be transitive"
        classes: list[list[int]] = []
        seen: set[int] = set()
        for i in range(n):
            if i in seen:
                continue
            cls = [j for j in range(n) if reach[i][j]]
            seen.update(cls)
            classes.append(cls)
        return classes

    # -- grading ----------------------------------------------------------------

    def grade_morphism(self, a: ExtObject) -> Mor:
        """Closed-loop transport of Gamma around (X, p): pull Gamma through
        the inverse monodromy with X, cut by p, and close the X loop.  For
        a homogeneous object this equals its dimension times the grade
        automorphism of Gamma."""
        g = self.fr.gamma
        x = a.base
        xd = dual_obj(x)
        idg = Mor.identity(g)
        idxd = Mor.identity(xd)
        first = tensor_mor(self.fr.delta, coev(x))
        mid = tensor_mor(tensor_mor(idg, a.p), idxd)
        mono = braiding(x, g) @ braiding(g, x)
        mono_inv = Mor(mono.cod, mono.dom, inv_mat(mono.mat))
        third = tensor_mor(mono_inv, idxd)
        last = tensor_mor(idg, left_ev(x))
        return last @ third @ mid @ first

    def grade(self, a: ExtObject) -> str:
        return self._match_automorphism(self.grade_morphism(a), self.ext_dim(a))

    def _match_automorphism(self, loop: Mor, d) -> str:
        cat = self.cat
        grp = self.fr.group
        if cat.exact:
            if scalar_is_zero(d):
                raise NoMatchingAutomorphism("object has dimension zero")
            scaled = loop.scale(_inv_scalar(d))
            for i, p in enumerate(self.fr.automorphisms):
                if scaled.equals(p):
                    return grp.elements[i]
            raise NoMatchingAutomorphism(
                "transport operator is not an automorphism; the object is "
                "most likely not grade-homogeneous")
        dl = _num(d)
        if abs(dl) <= cat.tol:
            raise NoMatchingAutomorphism("object has dimension zero")
        scaled = loop.scale(1.0 / dl)
        defects = sorted(
            (max_abs(scaled.mat - p.mat), i)
            for i, p in enumerate(self.fr.automorphisms))
        thr = cat.tol * 1e3
        if defects[0][0] > thr:
            raise NoMatchingAutomorphism(
                f"nearest automorphism is off by {defects[0][0]:.3e}; the "
                "object is most likely not grade-homogeneous")
        if len(defects) > 1 and defects[1][0] < 10 * thr:
            raise NoMatchingAutomorphism(
                f"ambiguous grade: defects {defects[0][0]:.3e} and "
                f"{defects[1][0]:.3e} are too close")
        return grp.elements[defects[0][1]]

    # -- crossed braiding ---------------------------------------------------------

    def crossed_braiding(self, a: ExtObject, b: ExtObject,
                         grade_name: str | None = None) -> tuple[Mor, Mor, ExtObject]:
        """c_{a,b}: a (x) b -> gamma_g(b) (x) a, with g the grade of a.

        Returns (braiding, inverse, codomain object).  Asserts that the
        left- and right-truncated normalizations agree and that the inverse
        composes to the identities on both sides."""
        g = grade_name if grade_name is not None else self._grade_of(a)
        cxy = braiding(a.base, b.base)
        pq = self.tensor_hat(a.p, b.p)
        chat = self.compose_hat(self.iota(cxy), pq)
        target = self.tensor_hat(self.gamma_mor(g, b.p), a.p)
        other = self.compose_hat(target, self.iota(cxy))
        assert chat.equals(other), "the two braiding normalizations disagree"
        w = self.compose_hat(self.compose_hat(pq, self.iota(
            braiding_inv(a.base, b.base))), target)
        assert self.compose_hat(chat, w).equals(target), "braiding not invertible"
        assert self.compose_hat(w, chat).equals(pq), "braiding not invertible"
        cod = ExtObject(tensor_obj(b.base, a.base), target)
        return chat, w, cod

    def _crossed_raw(self, a: ExtObject, b: ExtObject) -> Mor:
        """The crossed braiding without the self-checks (for bulk sweeps)."""
        pq = self.tensor_hat(a.p, b.p)
        return self.compose_hat(self.iota(braiding(a.base, b.base)), pq)

    def _grade_of(self, a: ExtObject) -> str:
        if isinstance(a, ExtSimple):
            return a.grade
        return self.grade(a)

    def braid_relation_defects(self, x: ExtSimple, y: ExtSimple,
                               z: ExtSimple) -> dict[str, float]:
        """Defects of the two crossed-braid compatibility relations on one
        triple of simples (0.0 means the relation holds on the nose)."""
        gx, gy = x.grade, y.grade
        grp = self.fr.group
        out = {}

        # braiding x past a tensor product, one factor at a time
        yz = self.ext_tensor(y, z)
        lhs1 = self._crossed_raw(x, yz)
        rhs1 = self.compose_hat(
            self.tensor_hat(self.gamma_mor(gx, y.p), self._crossed_raw(x, z)),
            self.tensor_hat(self._crossed_raw(x, y), z.p))
        out["braid-over-tensor"] = lhs1.defect(rhs1)

        # braiding a tensor product past z, inner factor first
        xy = self.ext_tensor(x, y)
        lhs2 = self._crossed_raw(xy, z)
        ztw = self.gamma_ext(gy, z)
        rhs2 = self.compose_hat(
            self.tensor_hat(self._crossed_raw(x, ztw), y.p),
            self.tensor_hat(x.p, self._crossed_raw(y, z)))
        out["tensor-over-braid"] = lhs2.defect(rhs2)
        return out

    def braid_naturality_defect(self, x: ExtSimple, y: ExtSimple, rng) -> float:
        """Naturality of the crossed braiding, probed on doubled copies
        (simples alone have too few morphisms to see it)."""
        x2 = self.ext_double(x)
        y2 = self.ext_double(y)
        s = _random_combo(self.ext_hom(x2, x2), rng, self.cat)
        t = _random_combo(self.ext_hom(y2, y2), rng, self.cat)
        c, _, _ = self.crossed_braiding(x2, y2, grade_name=x.grade)
        lhs = self.compose_hat(c, self.tensor_hat(s, t))
        rhs = self.compose_hat(
            self.tensor_hat(self.gamma_mor(x.grade, t), s), c)
        return lhs.defect(rhs)

    def grading_report(self) -> dict:
        """Multiplicativity and conjugation-equivariance of the grading."""
        grp = self.fr.group
        sims = self.ext_simples()
        mult_ok = True
        for x in sims:
            for y in sims:
                want = grp.mul(grp.index(x.grade), grp.index(y.grade))
                got = self.grade(self.ext_tensor(x, y))
                mult_ok &= grp.index(got) == want
        conj_ok = True
        for x in sims:
            for gi, gname in enumerate(grp.elements):
                want = grp.conj(gi, grp.index(x.grade))
                got = self.grade(self.gamma_ext(gname, x))
                conj_ok &= grp.index(got) == want
        return {"multiplicative": mult_ok, "conjugation": conj_ok}

    def calculus_report(self, rng, samples: int = 2) -> dict[str, float]:
        """Worst-case defects of the enriched-composition laws, probed with
        random morphisms between doubled simples."""
        sims = self.ext_simples()
        a = self.ext_double(sims[-1])
        b = sims[-1]
        end_a = self.ext_hom(a, a)
        ab = self.ext_hom(a, b)
        ba = self.ext_hom(b, a)
        worst = {"associative": 0.0, "unit": 0.0, "interchange": 0.0,
                 "embedding-functorial": 0.0, "embedding-monoidal": 0.0,
                 "flatten-multiplicative": 0.0, "flatten-retract": 0.0}
        plain = hom_basis(a.base, a.base)
        for _ in range(samples):
            s = _random_combo(end_a, rng, self.cat)
            t = _random_combo(ab, rng, self.cat)
            u = _random_combo(ba, rng, self.cat)
            lhs = self.compose_hat(self.compose_hat(u, t), s)
            rhs = self.compose_hat(u, self.compose_hat(t, s))
            worst["associative"] = max(worst["associative"], lhs.defect(rhs))
            worst["unit"] = max(worst["unit"],
                                self.compose_hat(t, a.p).defect(t),
                                self.compose_hat(b.p, t).defect(t))
            t2 = _random_combo(ab, rng, self.cat)
            u2 = _random_combo(ba, rng, self.cat)
            lhs = self.compose_hat(self.tensor_hat(u, u2),
                                   self.tensor_hat(t, t2))
            rhs = self.tensor_hat(self.compose_hat(u, t),
                                  self.compose_hat(u2, t2))
            worst["interchange"] = max(worst["interchange"], lhs.defect(rhs))
            f = _random_combo(plain, rng, self.cat)
            h = _random_combo(plain, rng, self.cat)
            lhs = self.iota(h @ f)
            rhs = self.compose_hat(self.iota(h), self.iota(f))
            worst["embedding-functorial"] = max(
                worst["embedding-functorial"], lhs.defect(rhs))
            lhs = self.iota(tensor_mor(f, h))
            rhs = self.tensor_hat(self.iota(f), self.iota(h))
            worst["embedding-monoidal"] = max(
                worst["embedding-monoidal"], lhs.defect(rhs))
            v = _random_combo(end_a, rng, self.cat)
            lhs = self.jmat(self.compose_hat(v, s))
            rhs = Mor(lhs.dom, lhs.cod,
                      mat_mul(self.jmat(v).mat, self.jmat(s).mat))
            worst["flatten-multiplicative"] = max(
                worst["flatten-multiplicative"], lhs.defect(rhs))
            worst["flatten-retract"] = max(
                worst["flatten-retract"], self.retract(self.jmat(v)).defect(v))
        return worst

    def action_report(self, rng, samples: int = 2) -> dict[str, float]:
        """Worst-case defects of the group-action laws on morphisms: it is
        a strict monoidal action, trivial at the identity, and fixes every
        embedded plain morphism."""
        grp = self.fr.group
        sims = self.ext_simples()
        a = self.ext_double(sims[-1])
        end_a = self.ext_hom(a, a)
        plain = hom_basis(a.base, a.base)
        ename = grp.elements[grp.identity]
        worst = {"action-functorial": 0.0, "action-monoidal": 0.0,
                 "action-identity": 0.0, "action-fixes-embedded": 0.0}
        for _ in range(samples):
            s = _random_combo(end_a, rng, self.cat)
            t = _random_combo(end_a, rng, self.cat)
            f = _random_combo(plain, rng, self.cat)
            worst["action-identity"] = max(worst["action-identity"],
                                           self.gamma_mor(ename, s).defect(s))
            for gi, gname in enumerate(grp.elements):
                for hi, hname in enumerate(grp.elements):
                    lhs = self.gamma_mor(gname, self.gamma_mor(hname, s))
                    rhs = self.gamma_mor(grp.elements[grp.mul(gi, hi)], s)
                    worst["action-functorial"] = max(
                        worst["action-functorial"], lhs.defect(rhs))
                lhs = self.gamma_mor(gname, self.tensor_hat(s, t))
                rhs = self.tensor_hat(self.gamma_mor(gname, s),
                                      self.gamma_mor(gname, t))
                worst["action-monoidal"] = max(
                    worst["action-monoidal"], lhs.defect(rhs))
                worst["action-fixes-embedded"] = max(
                    worst["action-fixes-embedded"],
                    self.gamma_mor(gname, self.iota(f)).defect(self.iota(f)))
        return worst

    def slot_naturality_report(self, rng, samples: int = 2) -> dict[str, float]:
        """Braiding a plain simple past an enriched morphism.

        In the first slot this holds for every simple; in the second slot
        it is tested against the simples centralizing the subcategory."""
        cat = self.cat
        prime = set(transparent_labels(cat, self.ambient, self.fr.spec.simples))
        worst = {"braid-enriched-first-slot": 0.0,
                 "braid-enriched-second-slot": 0.0}
        for x in {self.ambient[0], self.ambient[-1]}:
            basis = self.hom_hat(x, x)
            for _ in range(samples):
                s = _random_combo(basis, rng, cat)
                for z in self.ambient:
                    idz = self.id_hat(z)
                    lhs = self.compose_hat(self.iota(braiding(x, z)),
                                           self.tensor_hat(s, idz))
                    rhs = self.compose_hat(self.tensor_hat(idz, s),
                                           self.iota(braiding(x, z)))
                    worst["braid-enriched-first-slot"] = max(
                        worst["braid-enriched-first-slot"], lhs.defect(rhs))
                    if z.label in prime:
                        lhs = self.compose_hat(self.iota(braiding(z, x)),
                                               self.tensor_hat(idz, s))
                        rhs = self.compose_hat(self.tensor_hat(s, idz),
                                               self.iota(braiding(z, x)))
                        worst["braid-enriched-second-slot"] = max(
                            worst["braid-enriched-second-slot"], lhs.defect(rhs))
        return worst

    # -- spectrum -----------------------------------------------------------------

    def spectrum(self) -> list[str]:
        """Sorted grades appearing among the simples; asserted to be a
        normal subgroup."""
        grp = self.fr.group
        names = sorted({s.grade for s in self.ext_simples()}, key=grp.index)
        idx = [grp.index(nm) for nm in names]
        assert grp.identity in idx, "spectrum must contain the identity"
        assert grp.is_subgroup(idx), "spectrum must be a subgroup"
        assert grp.is_normal(idx), "spectrum must be normal"
        return names

    def center_stabilizer(self) -> list[str]:
        """The subgroup fixing the transparent summand of Gamma pointwise;
        this predicts the spectrum without enumerating any simples."""
        cat = self.cat
        s0 = transparent_labels(cat, self.fr.spec.simples, self.ambient)
        q = None
        for lab in s0:
            pr = _isotypic_projector(self.fr.gamma, cat.simple_by_label(lab))
            q = pr if q is None else q + pr
        assert q is not None, "the unit is always transparent"
        grp = self.fr.group
        out = [grp.elements[i] for i, p in enumerate(self.fr.automorphisms)
               if (p @ q).equals(q)]
        idx = [grp.index(nm) for nm in out]
        assert grp.is_subgroup(idx) and grp.is_normal(idx)
        return out

    # -- grade-zero sector ----------------------------------------------------------

    def grade_zero_report(self) -> dict:
        """Compare the grade-zero sector with an independently built
        extension of the centralizer of the subcategory, and check that all
        occupied sectors carry the same total squared dimension."""
        cat = self.cat
        grp = self.fr.group
        prime = transparent_labels(cat, self.ambient, self.fr.spec.simples)
        for l in self.fr.spec.labels:
            assert l in prime, "the subcategory must centralize itself"
        sub = GaloisExtension(self.fr, ambient_labels=prime, seed=self.seed)
        sub_simples = sub.ext_simples()
        ename = grp.elements[grp.identity]
        assert all(s.grade == ename for s in sub_simples), (
            "the centralizer extension must be trivially graded")
        mine = [s for s in self.ext_simples() if s.grade == ename]
        mine_sig = sorted((s.base.label, round(_num(s.dim).real, 6)) for s in mine)
        sub_sig = sorted((s.base.label, round(_num(s.dim).real, 6))
                         for s in sub_simples)
        sector: dict[str, float] = {}
        for s in self.ext_simples():
            d = _num(s.dim * s.dim).real
            sector[s.grade] = sector.get(s.grade, 0.0) + d
        vals = list(sector.values())
        equi = all(abs(v - vals[0]) <= 1e-6 * max(1.0, abs(vals[0])) for v in vals)
        return {
            "zero-part-matches": mine_sig == sub_sig,
            "zero-count": len(mine),
            "independent-count": len(sub_simples),
            "sector-dims": sector,
            "equidimensional": equi,
        }

    # -- abelian shortcut -------------------------------------------------------------

    def base_grade(self, x: Obj) -> str:
        """Grading of a base object via the partial trace of the inverse
        monodromy with Gamma (abelian hidden groups only)."""
        if not self.fr.group.is_abelian():
            raise NonAbelianGrading(
                "the partial-trace grading needs an abelian hidden group")
        g = self.fr.gamma
        mono = braiding(x, g) @ braiding(g, x)
        tr = _partial_trace_right(inv_mat(mono.mat), g.dim, x.dim, self.cat.exact)
        loop = Mor(g, g, tr)
        d = Fraction(x.dim) if self.cat.exact else float(x.dim)
        return self._match_automorphism(loop, d)

    def abelian_grading_report(self) -> dict:
        """The partial-trace grading: values, multiplicativity, character
        action on the subcategory summands of Gamma, and agreement with the
        grades of the enumerated simples."""
        cat = self.cat
        grp = self.fr.group
        grades = {x.label: self.base_grade(x) for x in self.ambient}
        mult_ok = True
        for x in self.ambient:
            for y in self.ambient:
                want = grp.mul(grp.index(grades[x.label]),
                               grp.index(grades[y.label]))
                if grp.index(self.base_grade(tensor_obj(x, y))) != want:
                    mult_ok = False
        char_ok = True
        for s in self.fr.spec.simples:
            if s.dim != 1:
                continue
            for x in self.ambient:
                phi = _inverse_monodromy_scalar(x, s, cat)
                pg = self.fr.automorphisms[grp.index(grades[x.label])]
                for inj in hom_basis(s, self.fr.gamma):
                    if not (pg @ inj).equals(inj.scale(phi)):
                        char_ok = False
        ext_ok = all(self.base_grade(s.base) == s.grade
                     for s in self.ext_simples())
        return {"grades": grades, "multiplicative": mult_ok,
                "characters-match": char_ok, "extension-agrees": ext_ok}

    # -- module-category oracle ----------------------------------------------------------

    def module_report(self) -> dict:
        """Classify modules over Gamma inside the base category and compare
        against the enumerated simples: counts, dimensions (scaled down by
        the dimension of Gamma), one-dimensional endomorphism spaces, and
        the global dimension."""
        cat = self.cat
        fr = self.fr
        g = fr.gamma
        classes = self._reachability_classes()
        reps = [self.ambient[cls[0]] for cls in classes]

        module_dims: list[float] = []
        laws_ok = True
        schur_ok = True
        for rep in reps:
            big = tensor_obj(g, rep)
            mu = tensor_mor(fr.m, Mor.identity(rep))
            laws_ok &= _module_laws_hold(fr, big, mu, cat)
            endos = _module_homs(fr, big, mu, big, mu, cat)
            alg = MatrixAlgebra(endos, eye(big.dim, cat.exact), tol=cat.tol,
                                order_hint=lcm(cat.order_hint, len(fr.group)),
                                seed=self.seed)
            for blk in split_idempotents(alg):
                e = Mor(big, big, blk.minimals[0])
                v, inj, proj = image_object(e)
                mu_v = proj @ mu @ tensor_mor(Mor.identity(g), inj)
                laws_ok &= _module_laws_hold(fr, v, mu_v, cat)
                module_dims.append(round(v.dim / len(fr.group), 6))
                schur_ok &= len(_module_homs(fr, v, mu_v, v, mu_v, cat)) == 1

        ext = self.ext_simples()
        ext_dims = sorted(round(_num(s.dim).real, 6) for s in ext)
        total = sum(d * d for d in module_dims)
        want = sum(x.dim ** 2 for x in self.ambient) / len(fr.group)
        return {
            "module-count": len(module_dims),
            "simple-count": len(ext),
            "dims-match": sorted(module_dims) == ext_dims,
            "laws": laws_ok,
            "schur": schur_ok,
            "global-dim-match": abs(total - want) <= 1e-6 * max(1.0, want),
        }


# ---------------------------------------------------------------------------
# helpers


def _strip_gamma(dom: Obj, gamma: Obj) -> Obj:
    """Recover X from a domain built as Gamma (x) X."""
    rho = dom.rho
    if hasattr(rho, "_x") and rho._x is gamma:
        return rho._y
    raise AssertionError("enriched morphism domain is not Gamma (x) X")


def _num(v) -> complex:
    return scalar_to_complex(v)


def _random_combo(basis: list[Mor], rng, cat: Category) -> Mor:
    assert basis, "cannot draw from an empty morphism space"
    out = None
    for b in basis:
        c = int(rng.integers(-3, 4)) or 1
        term = b.scale(Fraction(c) if cat.exact else complex(c))
        out = term if out is None else out + term
    return out


def _partial_trace_right(mat: np.ndarray, dg: int, dx: int, exact: bool) -> np.ndarray:
    out = zeros(dg, dg, exact)
    for i in range(dg):
        for j in range(dg):
            acc = None
            for k in range(dx):
                v = mat[i * dx + k, j * dx + k]
                acc = v if acc is None else acc + v
            out[i, j] = acc
    return out


def _inverse_monodromy_scalar(x: Obj, s: Obj, cat: Category):
    lam = scalar_of(braiding(s, x) @ braiding(x, s))
    return _inv_scalar(lam) if cat.exact else 1.0 / lam


def _isotypic_projector(big: Obj, s: Obj) -> Mor:
    """Projector of `big` onto its s-isotypic component, normalized through
    the pairing matrix of the in/out hom bases."""
    cat = big.cat
    ins = hom_basis(s, big)
    outs = hom_basis(big, s)
    k = len(ins)
    assert k == len(outs)
    if k == 0:
        return Mor.zero(big, big)
    m = zeros(k, k, cat.exact)
    for j, o in enumerate(outs):
        for i, iin in enumerate(ins):
            m[j, i] = scalar_of(o @ iin)
    minv = inv_mat(m)
    acc = None
    for i in range(k):
        for j in range(k):
            term = (ins[i] @ outs[j]).scale(minv[i, j])
            acc = term if acc is None else acc + term
    assert (acc @ acc).equals(acc), "isotypic projector must be idempotent"
    return acc


def transparent_labels(cat: Category, candidates: list[Obj],
                       against: list[Obj]) -> list[str]:
    """Labels of the candidates whose monodromy with everything in
    `against` is trivial.  Both transparency tests (full monodromy matrix
    and the trace shortcut) are evaluated and must agree."""
    out = []
    for s in candidates:
        all_ok = True
        for t in against:
            mono = braiding(t, s) @ braiding(s, t)
            m_ok = mono.equals(Mor.identity(tensor_obj(s, t)))
            tr = trace_mor(mono)
            want = s.dim * t.dim
            if cat.exact:
                t_ok = scalar_is_zero(tr - want)
            else:
                t_ok = abs(_num(tr) - want) <= cat.tol * max(1.0, want)
            assert m_ok == t_ok, (
                f"transparency tests disagree on ({s.label},{t.label})")
            all_ok &= m_ok
        if all_ok:
            out.append(s.label)
    return out


def zcenter_labels(cat: Category) -> list[str]:
    """Labels of the simples transparent against the whole category."""
    return transparent_labels(cat, cat.simples, cat.simples)


def image_object(e: Mor) -> tuple[Obj, Mor, Mor]:
    """Split an idempotent plain endomorphism into (V, inj, proj) with
    inj . proj = e and proj . inj = 1."""
    x = e.dom
    cat = x.cat
    exact = cat.exact
    cols: list[np.ndarray] = []
    grades: list[int] = []
    if exact:
        sb = SpanBasis(True)
        for j in range(x.dim):
            c = e.mat[:, j]
            if sb.add(c):
                cols.append(c)
                grades.append(x.grades[j])
    else:
        # work per grade block so the image basis is grade-homogeneous
        order: list[int] = []
        for q in x.grades:
            if q not in order:
                order.append(q)
        for q in order:
            idx = [i for i, qq in enumerate(x.grades) if qq == q]
            blk = e.mat[np.ix_(idx, idx)]
            rank = int(round(float(np.trace(blk).real)))
            if rank == 0:
                continue
            u, _, _ = np.linalg.svd(blk)
            for r in range(rank):
                full = np.zeros(x.dim, dtype=complex)
                full[idx] = u[:, r]
                cols.append(full)
                grades.append(q)
    if not cols:
        raise ValueError("cannot split the zero idempotent")
    inj_mat = np.stack(cols, axis=1)
    proj_mat = _solve_factor(inj_mat, e.mat, exact)
    rho = {a: mat_mul(proj_mat, mat_mul(x.rho[a], inj_mat))
           for a in range(len(cat.group))}
    v = Obj(cat, tuple(grades), rho)
    v.check_valid()
    inj = Mor(v, x, inj_mat)
    proj = Mor(x, v, proj_mat)
    assert (inj @ proj).equals(e), "image factorization failed"
    assert (proj @ inj).equals(Mor.identity(v)), "image factorization failed"
    assert morphism_defect(inj) <= (0 if exact else 1e3 * cat.tol)
    return v, inj, proj


def _solve_factor(basis_mat: np.ndarray, target: np.ndarray,
                  exact: bool) -> np.ndarray:
    """proj with basis_mat @ proj = target, for targets inside the span."""
    if exact:
        k = basis_mat.shape[1]
        out = zeros(k, target.shape[1], True)
        for j in range(target.shape[1]):
            sol = solve_linear(basis_mat, target[:, j])
            assert sol is not None, "target column outside the span"
            out[:, j] = sol
        return out
    sol, *_ = np.linalg.lstsq(basis_mat, target, rcond=None)
    return sol


def _module_laws_hold(fr: RegularAlgebra, v: Obj, mu: Mor, cat: Category) -> bool:
    idg = Mor.identity(fr.gamma)
    idv = Mor.identity(v)
    assoc = (mu @ tensor_mor(idg, mu)).defect(mu @ tensor_mor(fr.m, idv))
    unit = (mu @ tensor_mor(fr.eta, idv)).defect(idv)
    thr = 0 if cat.exact else cat.tol * 1e3
    return assoc <= thr and unit <= thr


def _module_homs(fr: RegularAlgebra, v: Obj, mu_v: Mor, w: Obj, mu_w: Mor,
                 cat: Category) -> list[np.ndarray]:
    """Matrices of the module maps v -> w: plain morphisms commuting with
    the two actions, solved inside the plain hom space."""
    basis = hom_basis(v, w)
    if not basis:
        return []
    idg = Mor.identity(fr.gamma)
    rows = []
    for b in basis:
        r = (b @ mu_v) - (mu_w @ tensor_mor(idg, b))
        rows.append(r.mat.reshape(-1))
    stacked = np.stack(rows, axis=1)
    sols = nullspace(stacked, cat.tol)
    out = []
    for c in sols:
        acc = None
        for k, b in enumerate(basis):
            term = b.mat * c[k] if cat.exact else c[k] * b.mat
            acc = term if acc is None else acc + term
        out.append(acc)
    return out
