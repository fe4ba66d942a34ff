"""Concrete braided fusion categories realized on graded equivariant spaces.

An object is a finite-dimensional space with a basis graded by elements of
a finite structure group Q together with a compatible Q-action
(rho(g): V_h -> V_{g h g^-1}).  Morphisms are the grade-preserving
equivariant linear maps, computed by constraint solving.  The braiding is
c(v (x) w) = rho(grade v)(w) (x) v on homogeneous vectors.  This single
model realizes every generator shipped with the package: representation
categories (trivially graded), pointed categories with a bicharacter
braiding, Drinfeld-double categories, and their products.

Duality is the contragredient with inverted grades; the pivotal structure
is the identity, so quantum traces are matrix traces and all dimensions
are integers.
"""

from __future__ import annotations

import numpy as np
from fractions import Fraction

from .groups import FiniteGroup
from .linalg import (
    SpanBasis,
    eye,
    inv_mat,
    is_exact,
    kron,
    mat_mul,
    mats_equal,
    max_abs,
    nullspace,
    zeros,
)
from .scalars import scalar_is_zero


class Category:
    """Ambient data shared by all objects: structure group, backend, simples."""

    def __init__(self, group: FiniteGroup, exact: bool = True, tol: float = 1e-9,
                 order_hint: int | None = None, seed: int = 0):
        self.group = group
        self.exact = exact
        self.tol = tol
        self.order_hint = order_hint if order_hint is not None else group.exponent
        self.seed = seed
        self.simples: list[Obj] = []
        self.braid_overrides: dict[tuple[str, str], np.ndarray] = {}
        self._generators = None
        self._unit = None

    # -- object constructors -------------------------------------------------

    def add_simple(self, label: str, grades: list[int], rho: dict[int, np.ndarray]) -> "Obj":
        obj = Obj(self, tuple(grades), rho, label=label)
        obj.check_valid()
        self.simples.append(obj)
        return obj

    @property
    def unit(self) -> "Obj":
        if self._unit is None:
            e = self.group.identity
            rho = {g: eye(1, self.exact) for g in range(len(self.group))}
            self._unit = Obj(self, (e,), rho, label=None)
        return self._unit

    @property
    def generators(self) -> list[int]:
        """A small generating set of the structure group (greedy)."""
        if self._generators is None:
            g = self.group
            gens: list[int] = []
            have = {g.identity}
            for i in range(len(g)):
                if i not in have:
                    gens.append(i)
                    have = set(g.subgroup_generated(gens))
                if len(have) == len(g):
                    break
            self._generators = gens or [g.identity]
        return self._generators

    def simple_by_label(self, label: str) -> "Obj":
        for s in self.simples:
            if s.label == label:
                return s
        raise KeyError(f"no simple labeled {label!r}")

    def global_dim(self):
        total = sum(dim_obj(s) ** 2 for s in self.simples)
        return Fraction(total) if self.exact else float(total)


class Obj:
    """A realized object: graded basis plus group action."""

    __slots__ = ("cat", "grades", "rho", "label")

    def __init__(self, cat: Category, grades: tuple[int, ...],
                 rho: dict[int, np.ndarray], label: str | None = None):
        self.cat = cat
        self.grades = grades
        self.rho = rho
        self.label = label

    @property
    def dim(self) -> int:
        return len(self.grades)

    def compatible(self, other: "Obj") -> bool:
        return self.cat is other.cat and self.grades == other.grades

    def check_valid(self):
        g = self.cat.group
        tol = self.cat.tol
        assert set(self.rho) == set(range(len(g))), "action must cover the group"
        assert mats_equal(self.rho[g.identity], eye(self.dim, self.cat.exact), tol)
        for a in range(len(g)):
            for b in range(len(g)):
                if not mats_equal(self.rho[a] @ self.rho[b], self.rho[g.mul(a, b)], tol):
                    raise ValueError(f"action is not a homomorphism at ({a},{b})")
        for a in range(len(g)):
            m = self.rho[a]
            for i in range(self.dim):
                for j in range(self.dim):
                    if self.grades[i] != g.conj(a, self.grades[j]):
                        v = m[i, j]
                        ok = scalar_is_zero(v) if self.cat.exact else abs(v) <= tol
                        if not ok:
                            raise ValueError("action does not permute grades correctly")

    def __repr__(self):
        name = self.label or f"<dim {self.dim}>"
        return f"Obj({name})"


class Mor:
    """A morphism: matrix with explicit domain and codomain objects."""

    __slots__ = ("dom", "cod", "mat")

    def __init__(self, dom: Obj, cod: Obj, mat: np.ndarray):
        assert mat.shape == (cod.dim, dom.dim), (mat.shape, cod.dim, dom.dim)
        self.dom = dom
        self.cod = cod
        self.mat = mat

    @staticmethod
    def identity(x: Obj) -> "Mor":
        return Mor(x, x, eye(x.dim, x.cat.exact))

    @staticmethod
    def zero(dom: Obj, cod: Obj) -> "Mor":
        return Mor(dom, cod, zeros(cod.dim, dom.dim, dom.cat.exact))

    def __matmul__(self, other: "Mor") -> "Mor":
        assert other.cod.compatible(self.dom), "composition mismatch"
        return Mor(other.dom, self.cod, mat_mul(self.mat, other.mat))

    def __add__(self, other: "Mor") -> "Mor":
        return Mor(self.dom, self.cod, self.mat + other.mat)

    def __sub__(self, other: "Mor") -> "Mor":
        return Mor(self.dom, self.cod, self.mat - other.mat)

    def scale(self, c) -> "Mor":
        return Mor(self.dom, self.cod, self.mat * c if self.dom.cat.exact else c * self.mat)

    def is_zero(self, tol: float | None = None) -> bool:
        t = self.dom.cat.tol if tol is None else tol
        if is_exact(self.mat):
            return all(scalar_is_zero(v) for v in self.mat.flat)
        return max_abs(self.mat) <= t

    def equals(self, other: "Mor", tol: float | None = None) -> bool:
        t = self.dom.cat.tol if tol is None else tol
        return mats_equal(self.mat, other.mat, t)

    def defect(self, other: "Mor") -> float:
        """Numeric size of the difference (0.0 for exact equality)."""
        return max_abs(self.mat - other.mat)

    def __repr__(self):
        return f"Mor({self.dom!r} -> {self.cod!r})"


# ---------------------------------------------------------------------------
# monoidal structure


class _KronRho(dict):
    """Lazy group action of a tensor product: kron computed per element."""

    def __init__(self, x: Obj, y: Obj, n: int):
        super().__init__()
        self._x = x
        self._y = y
        self._n = n

    def __missing__(self, g: int) -> np.ndarray:
        v = kron(self._x.rho[g], self._y.rho[g])
        self[g] = v
        return v

    def __iter__(self):
        return iter(range(self._n))

    def __len__(self) -> int:
        return self._n

    def __contains__(self, g) -> bool:
        return isinstance(g, int) and 0 <= g < self._n

    def keys(self):
        return range(self._n)


def tensor_obj(x: Obj, y: Obj) -> Obj:
    g = x.cat.group
    grades = tuple(g.mul(a, b) for a in x.grades for b in y.grades)
    return Obj(x.cat, grades, _KronRho(x, y, len(g)))


def tensor_mor(f: Mor, h: Mor) -> Mor:
    return Mor(tensor_obj(f.dom, h.dom), tensor_obj(f.cod, h.cod), kron(f.mat, h.mat))


def dsum_objs(parts: list[Obj]) -> tuple[Obj, list[Mor], list[Mor]]:
    """Direct sum with injections and projections."""
    cat = parts[0].cat
    g = cat.group
    grades = tuple(q for p in parts for q in p.grades)
    total = len(grades)
    rho = {}
    for i in range(len(g)):
        m = zeros(total, total, cat.exact)
        off = 0
        for p in parts:
            m[off:off + p.dim, off:off + p.dim] = p.rho[i]
            off += p.dim
        rho[i] = m
    obj = Obj(cat, grades, rho)
    injs, projs = [], []
    off = 0
    for p in parts:
        inj = zeros(total, p.dim, cat.exact)
        proj = zeros(p.dim, total, cat.exact)
        for k in range(p.dim):
            inj[off + k, k] = Fraction(1) if cat.exact else 1.0
            proj[k, off + k] = Fraction(1) if cat.exact else 1.0
        injs.append(Mor(p, obj, inj))
        projs.append(Mor(obj, p, proj))
        off += p.dim
    return obj, injs, projs


def dual_obj(x: Obj) -> Obj:
    g = x.cat.group
    grades = tuple(g.inverse[q] for q in x.grades)
    rho = {i: x.rho[g.inverse[i]].T for i in range(len(g))}
    return Obj(x.cat, grades, rho)


def coev(x: Obj) -> Mor:
    """1 -> X (x) X*: sum of e_i (x) e_i^*."""
    xd = dual_obj(x)
    m = zeros(x.dim * x.dim, 1, x.cat.exact)
    for i in range(x.dim):
        m[i * x.dim + i, 0] = Fraction(1) if x.cat.exact else 1.0
    return Mor(x.cat.unit, tensor_obj(x, xd), m)


def ev(x: Obj) -> Mor:
    """X* (x) X -> 1: the canonical pairing."""
    xd = dual_obj(x)
    m = zeros(1, x.dim * x.dim, x.cat.exact)
    for i in range(x.dim):
        m[0, i * x.dim + i] = Fraction(1) if x.cat.exact else 1.0
    return Mor(tensor_obj(xd, x), x.cat.unit, m)


def left_ev(x: Obj) -> Mor:
    """X (x) X* -> 1 (trivial pivotal structure)."""
    xd = dual_obj(x)
    m = zeros(1, x.dim * x.dim, x.cat.exact)
    for i in range(x.dim):
        m[0, i * x.dim + i] = Fraction(1) if x.cat.exact else 1.0
    return Mor(tensor_obj(x, xd), x.cat.unit, m)


def left_coev(x: Obj) -> Mor:
    """1 -> X* (x) X."""
    xd = dual_obj(x)
    m = zeros(x.dim * x.dim, 1, x.cat.exact)
    for i in range(x.dim):
        m[i * x.dim + i, 0] = Fraction(1) if x.cat.exact else 1.0
    return Mor(x.cat.unit, tensor_obj(xd, x), m)


def braiding(x: Obj, y: Obj) -> Mor:
    """c_{X,Y}: X (x) Y -> Y (x) X, c(v_h (x) w) = rho_Y(h) w (x) v_h."""
    cat = x.cat
    if x.label is not None and y.label is not None:
        key = (x.label, y.label)
        if key in cat.braid_overrides:
            return Mor(tensor_obj(x, y), tensor_obj(y, x), cat.braid_overrides[key])
    m = zeros(y.dim * x.dim, x.dim * y.dim, cat.exact)
    for i in range(x.dim):
        r = y.rho[x.grades[i]]
        for j in range(y.dim):
            for jp in range(y.dim):
                v = r[jp, j]
                if not (scalar_is_zero(v) if cat.exact else v == 0):
                    m[jp * x.dim + i, i * y.dim + j] = v
    return Mor(tensor_obj(x, y), tensor_obj(y, x), m)


def braiding_inv(x: Obj, y: Obj) -> Mor:
    """Inverse of c_{X,Y}, a morphism Y (x) X -> X (x) Y."""
    c = braiding(x, y)
    return Mor(c.cod, c.dom, inv_mat(c.mat))


def twist(x: Obj) -> Mor:
    """theta_X: acts on a vector of grade h by rho_X(h)."""
    m = zeros(x.dim, x.dim, x.cat.exact)
    for j in range(x.dim):
        r = x.rho[x.grades[j]]
        for i in range(x.dim):
            m[i, j] = r[i, j]
    return Mor(x, x, m)


def trace_mor(f: Mor):
    assert f.dom.compatible(f.cod)
    acc = None
    for i in range(f.dom.dim):
        acc = f.mat[i, i] if acc is None else acc + f.mat[i, i]
    return acc if acc is not None else (Fraction(0) if f.dom.cat.exact else 0.0)


def dim_obj(x: Obj) -> int:
    return x.dim


def scalar_of(f: Mor):
    """lambda with f = lambda * id, for endomorphisms of a simple object."""
    d = trace_mor(f)
    n = f.dom.dim
    if f.dom.cat.exact:
        return Fraction(1, n) * d
    return d / n


# ---------------------------------------------------------------------------
# hom spaces


def hom_basis(x: Obj, y: Obj) -> list[Mor]:
    """Basis of Hom(X, Y): grade-preserving equivariant matrices."""
    cat = x.cat
    g = cat.group
    allowed = [(i, j) for i in range(y.dim) for j in range(x.dim)
               if y.grades[i] == x.grades[j]]
    if not allowed:
        return []
    col_of = {p: k for k, p in enumerate(allowed)}
    gens = cat.generators
    rows = len(gens) * y.dim * x.dim
    a = zeros(rows, len(allowed), cat.exact)
    # Row (g, i, j) encodes entry (i,j) of  M rho_X(g) - rho_Y(g) M = 0;
    # unknown M[ii,jj] contributes rho_X(g)[jj,j] at (i=ii, j) and
    # -rho_Y(g)[i,ii] at (i, j=jj).  Iterate per unknown to skip zeros.
    for gi, gg in enumerate(gens):
        rx, ry = x.rho[gg], y.rho[gg]
        base = gi * y.dim * x.dim
        for (ii, jj), col in col_of.items():
            for j in range(x.dim):
                v = rx[jj, j]
                if not (scalar_is_zero(v) if cat.exact else v == 0):
                    r = base + ii * x.dim + j
                    a[r, col] = a[r, col] + v
            for i in range(y.dim):
                v = ry[i, ii]
                if not (scalar_is_zero(v) if cat.exact else v == 0):
                    r = base + i * x.dim + jj
                    a[r, col] = a[r, col] - v
    sols = nullspace(a, cat.tol)
    out = []
    for v in sols:
        m = zeros(y.dim, x.dim, cat.exact)
        for (i, j), k in col_of.items():
            m[i, j] = v[k]
        out.append(Mor(x, y, m))
    return out


def hom_dim(x: Obj, y: Obj) -> int:
    return len(hom_basis(x, y))


def morphism_defect(f: Mor) -> float:
    """How far the matrix is from being a morphism (0 when it is one)."""
    cat = f.dom.cat
    worst = 0.0
    for i in range(f.cod.dim):
        for j in range(f.dom.dim):
            if f.cod.grades[i] != f.dom.grades[j]:
                worst = max(worst, abs(_num(f.mat[i, j])))
    for gg in cat.generators:
        d = mat_mul(f.mat, f.dom.rho[gg]) - mat_mul(f.cod.rho[gg], f.mat)
        worst = max(worst, max_abs(d))
    return worst


def _num(v) -> complex:
    from .scalars import scalar_to_complex

    return scalar_to_complex(v)


def random_morphism(x: Obj, y: Obj, rng) -> Mor:
    """Random integer combination of a hom basis (empty hom -> zero map)."""
    basis = hom_basis(x, y)
    if not basis:
        return Mor.zero(x, y)
    out = Mor.zero(x, y)
    for b in basis:
        c = int(rng.integers(-3, 4)) if hasattr(rng, "integers") else rng.randint(-3, 3)
        if c:
            out = out + b.scale(Fraction(c) if x.cat.exact else complex(c))
    return out


# ---------------------------------------------------------------------------
# semisimple structure relative to the declared simples


def decompose_object(x: Obj) -> list[tuple[str, int]]:
    """Multiplicity of each declared simple in X, via hom dimensions."""
    out = []
    for s in x.cat.simples:
        n = hom_dim(s, x)
        if n:
            out.append((s.label, n))
    return out


def validate_category(cat: Category) -> list[str]:
    """Simple-object sanity: Schur, distinctness, duals and fusion closure.

    Returns a list of problem descriptions (empty when everything holds).
    """
    problems = []
    for s in cat.simples:
        if hom_dim(s, s) != 1:
            problems.append(f"End({s.label}) is not 1-dimensional")
    for a in cat.simples:
        for b in cat.simples:
            if a is not b and hom_dim(a, b) != 0:
                problems.append(f"Hom({a.label},{b.label}) nonzero for distinct simples")
    for s in cat.simples:
        d = decompose_object(dual_obj(s))
        if sum(n * dim_obj(cat.simple_by_label(l)) for l, n in d) != s.dim or len(d) != 1:
            problems.append(f"dual of {s.label} is not a declared simple")
    for a in cat.simples:
        for b in cat.simples:
            t = tensor_obj(a, b)
            covered = sum(n * dim_obj(cat.simple_by_label(l))
                          for l, n in decompose_object(t))
            if covered != t.dim:
                problems.append(f"{a.label} (x) {b.label} not covered by declared simples")
    return problems
