"""Linear algebra over the two scalar backends.

Exact matrices are numpy object arrays holding `Fraction`/`Cyclo` entries;
float matrices are complex128 arrays.  The backend of a matrix is inferred
from its dtype.  On top of the usual kernel/solve/rank helpers this module
implements `MatrixAlgebra`, a unital associative algebra presented by a
basis of concrete matrices, and `split_idempotents`, which decomposes such
an algebra into central blocks and minimal idempotents.  That splitting is
what turns "decompose this object into simples" into linear algebra.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .scalars import Cyclo, conj_scalar, scalar_is_zero, scalar_to_complex


class ExactSplitUnsupported(Exception):
    """Raised when exact idempotent splitting cannot certify its roots."""


class NonIdempotentResidual(Exception):
    """Raised when a computed projector fails its idempotency check."""


# ---------------------------------------------------------------------------
# basic matrix helpers


def is_exact(a: np.ndarray) -> bool:
    return a.dtype == object


def zeros(m: int, n: int, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((m, n), dtype=object)
        out[:] = Fraction(0)
        return out
    return np.zeros((m, n), dtype=complex)


def eye(n: int, exact: bool) -> np.ndarray:
    if exact:
        out = zeros(n, n, True)
        for i in range(n):
            out[i, i] = Fraction(1)
        return out
    return np.eye(n, dtype=complex)


def scalar_mat(value, n: int, exact: bool) -> np.ndarray:
    out = zeros(n, n, exact)
    for i in range(n):
        out[i, i] = value if exact else complex(scalar_to_complex(value))
    return out


def to_complex_mat(a: np.ndarray) -> np.ndarray:
    if not is_exact(a):
        return a.astype(complex)
    out = np.zeros(a.shape, dtype=complex)
    for idx in np.ndindex(a.shape):
        out[idx] = scalar_to_complex(a[idx])
    return out


def conj_transpose(a: np.ndarray) -> np.ndarray:
    if is_exact(a):
        out = np.empty(a.T.shape, dtype=object)
        for i in range(out.shape[0]):
            for j in range(out.shape[1]):
                out[i, j] = conj_scalar(a[j, i])
        return out
    return a.conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if not is_exact(a) and not is_exact(b):
        return np.kron(a, b)
    # sparse-aware product: object-dtype matrices here are usually mostly zero
    r1, c1 = a.shape
    r2, c2 = b.shape
    out = zeros(r1 * r2, c1 * c2, True)
    nzb = [(i, j, b[i, j]) for i in range(r2) for j in range(c2)
           if not scalar_is_zero(b[i, j])]
    for i1 in range(r1):
        for j1 in range(c1):
            v = a[i1, j1]
            if scalar_is_zero(v):
                continue
            for i2, j2, w in nzb:
                out[i1 * r2 + i2, j1 * c2 + j2] = v * w
    return out


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product; skips zero entries for exact (object-dtype) input."""
    if not is_exact(a) and not is_exact(b):
        return a @ b
    n, k = a.shape
    k2, m = b.shape
    assert k == k2
    rows_b = [[(j, b[r, j]) for j in range(m) if not scalar_is_zero(b[r, j])]
              for r in range(k)]
    out = zeros(n, m, True)
    for i in range(n):
        for r in range(k):
            v = a[i, r]
            if scalar_is_zero(v):
                continue
            for j, w in rows_b[r]:
                out[i, j] = out[i, j] + v * w
    return out


def max_abs(a: np.ndarray) -> float:
    if a.size == 0:
        return 0.0
    if is_exact(a):
        return max(abs(scalar_to_complex(v)) for v in a.flat)
    return float(np.max(np.abs(a)))


def mats_equal(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if a.shape != b.shape:
        return False
    d = a - b
    if is_exact(d):
        return all(scalar_is_zero(v) for v in d.flat)
    return max_abs(d) <= tol


def _inv_scalar(x):
    if isinstance(x, Cyclo):
        return x.inverse()
    return Fraction(1) / Fraction(x) if not isinstance(x, Fraction) else Fraction(1) / x


# ---------------------------------------------------------------------------
# exact elimination


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an exact matrix; returns (R, pivot cols)."""
    r = np.array(a, dtype=object, copy=True)
    m, n = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = next((k for k in range(row, m) if not scalar_is_zero(r[k, col])), None)
        if piv is None:
            continue
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = _inv_scalar(r[row, col])
        r[row, :] = [inv * v for v in r[row, :]]
        for k in range(m):
            if k != row and not scalar_is_zero(r[k, col]):
                f = r[k, col]
                r[k, :] = [v - f * w for v, w in zip(r[k, :], r[row, :])]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a: np.ndarray, tol: float = 1e-9) -> int:
    if a.size == 0:
        return 0
    if is_exact(a):
        return len(rref(a)[1])
    s = np.linalg.svd(a.astype(complex), compute_uv=False)
    if s.size == 0:
        return 0
    cut = max(tol, float(s[0]) * np.finfo(float).eps * max(a.shape))
    return int(np.sum(s > cut))


def nullspace(a: np.ndarray, tol: float = 1e-9) -> list[np.ndarray]:
    """Basis of the right kernel, as 1-d arrays (deterministic order)."""
    m, n = a.shape
    if n == 0:
        return []
    if m == 0:
        return [eye(n, is_exact(a))[i] for i in range(n)]
    if is_exact(a):
        r, pivots = rref(a)
        free = [c for c in range(n) if c not in pivots]
        out = []
        for f in free:
            v = np.empty(n, dtype=object)
            v[:] = Fraction(0)
            v[f] = Fraction(1)
            for row_i, c in enumerate(pivots):
                v[c] = -r[row_i, f]
            out.append(v)
        return out
    aa = a.astype(complex)
    # economy SVD when m >= n: vh is n x n either way, and the full m x m
    # left factor of a tall constraint stack would not fit in memory
    u, s, vh = np.linalg.svd(aa, full_matrices=m < n)
    cut = max(tol, (float(s[0]) if s.size else 0.0) * np.finfo(float).eps * max(m, n))
    r = int(np.sum(s > cut))
    return [vh[i].conj() for i in range(r, n)]


def solve_linear(a: np.ndarray, b: np.ndarray, tol: float = 1e-9):
    """One solution of a x = b, or None if inconsistent."""
    m, n = a.shape
    if is_exact(a):
        aug = np.empty((m, n + 1), dtype=object)
        aug[:, :n] = a
        aug[:, n] = b
        r, pivots = rref(aug)
        if n in pivots:
            return None
        x = np.empty(n, dtype=object)
        x[:] = Fraction(0)
        for row_i, c in enumerate(pivots):
            x[c] = r[row_i, n]
        return x
    aa = a.astype(complex)
    bb = b.astype(complex)
    x, *_ = np.linalg.lstsq(aa, bb, rcond=None)
    resid = aa @ x - bb
    if np.max(np.abs(resid)) > tol * (1.0 + np.max(np.abs(bb))):
        return None
    return x


def inv_mat(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if is_exact(a):
        aug = np.empty((n, 2 * n), dtype=object)
        aug[:, :n] = a
        aug[:, n:] = eye(n, True)
        r, pivots = rref(aug)
        if pivots != list(range(n)):
            raise np.linalg.LinAlgError("exact matrix is singular")
        return r[:, n:]
    return np.linalg.inv(a.astype(complex))


class SpanBasis:
    """Incrementally maintained basis of a span of vectors/matrices."""

    def __init__(self, exact: bool, tol: float = 1e-9):
        self.exact = exact
        self.tol = tol
        self.rows: list[np.ndarray] = []  # reduced rows (exact) / orthonormal (float)
        self.members: list[np.ndarray] = []  # originals that were independent
        self.indices: list[int] = []
        self._count = 0

    def add(self, item: np.ndarray) -> bool:
        """Add if independent of current span; returns True if added."""
        vec = item.reshape(-1)
        idx = self._count
        self._count += 1
        if self.exact:
            v = np.array(vec, dtype=object, copy=True)
            for row in self.rows:
                lead = next(i for i in range(len(row)) if not scalar_is_zero(row[i]))
                if not scalar_is_zero(v[lead]):
                    f = v[lead]
                    v = v - f * row
            if all(scalar_is_zero(x) for x in v):
                return False
            lead = next(i for i in range(len(v)) if not scalar_is_zero(v[i]))
            v = np.array([_inv_scalar(v[lead]) * x for x in v], dtype=object)
            self.rows.append(v)
        else:
            v = vec.astype(complex)
            nrm0 = np.linalg.norm(v)
            for _ in range(2):  # two Gram-Schmidt passes for stability
                for row in self.rows:
                    v = v - (row.conj() @ v) * row
            nrm = np.linalg.norm(v)
            if nrm <= self.tol * max(1.0, nrm0):
                return False
            self.rows.append(v / nrm)
        self.members.append(item)
        self.indices.append(idx)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def span_dim(items: list[np.ndarray], exact: bool, tol: float = 1e-9) -> int:
    sb = SpanBasis(exact, tol)
    for it in items:
        sb.add(it)
    return sb.dim


def coords_in_span(items: list[np.ndarray], target: np.ndarray, tol: float = 1e-9):
    """Coefficients writing `target` in the span of `items`, or None."""
    if not items:
        return None
    exact = is_exact(items[0])
    a = np.stack([it.reshape(-1) for it in items], axis=1)
    return solve_linear(a, target.reshape(-1), tol)


# ---------------------------------------------------------------------------
# polynomials over scalars (ascending coefficient lists)


def poly_eval(p: list, x):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    return acc


def poly_eval_mat(p: list, z: np.ndarray, unit: np.ndarray) -> np.ndarray:
    acc = zeros(z.shape[0], z.shape[1], is_exact(z))
    power = unit
    for c in p:
        acc = acc + power * c if is_exact(z) else acc + c * power
        power = power @ z
    return acc


def poly_div_linear(p: list, lam):
    """Divide p by (x - lam): returns (quotient, remainder)."""
    q = [None] * (len(p) - 1)
    acc = p[-1]
    for i in range(len(p) - 2, -1, -1):
        q[i] = acc
        acc = p[i] + acc * lam
    return q, acc


# ---------------------------------------------------------------------------
# root rationalization (propose numerically, verify exactly)

_DENOM_LADDER = (1, 2, 3, 4, 6, 8, 12, 16, 24, 48, 96, 240, 720, 2520, 10**4)


def _try_fraction(x: float):
    for d in _DENOM_LADDER:
        f = Fraction(x).limit_denominator(d)
        # Demand accuracy that scales with the denominator: a true rational
        # p/q sits within float noise, while algebraic irrationals admit
        # only O(1/q^2) approximations over this denominator range and get
        # rejected.  Exact verification by the caller backstops this anyway.
        if abs(float(f) - x) < 1e-10 / (1 + f.denominator):
            return f
    return None


def rationalize_root(value: complex, order_hint: int):
    """Propose an exact scalar in Q(zeta_order_hint) close to `value`.

    Returns a Fraction/Cyclo candidate or None.  The caller must verify the
    candidate exactly (e.g. plug into the minimal polynomial).
    """
    if abs(value.imag) < 1e-7:
        f = _try_fraction(value.real)
        if f is not None:
            return f
    if order_hint <= 2:
        return None
    powers = [Cyclo.root(order_hint, k) for k in range(_phi(order_hint))]
    cols = [p.to_complex() for p in powers]
    a = np.array([[c.real for c in cols], [c.imag for c in cols]], dtype=float)
    b = np.array([value.real, value.imag], dtype=float)
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    coeffs = []
    for x in sol:
        f = _try_fraction(float(x))
        if f is None:
            return None
        coeffs.append(f)
    cand = Cyclo(order_hint, coeffs)
    if abs(cand.to_complex() - value) > 1e-6:
        return None
    f = cand.as_fraction()
    return f if f is not None else cand


def _phi(order: int) -> int:
    from .scalars import _cyclotomic_ints

    return len(_cyclotomic_ints(order)) - 1


def _newton_polish(p_complex: np.ndarray, z: complex, steps: int = 3) -> complex:
    dp = np.polyder(p_complex)
    for _ in range(steps):
        d = np.polyval(dp, z)
        if abs(d) < 1e-14:
            break
        z = z - np.polyval(p_complex, z) / d
    return z


# ---------------------------------------------------------------------------
# matrix algebras and idempotent splitting


class MatrixAlgebra:
    """Unital associative algebra presented by a basis of concrete matrices.

    `unit` is the algebra unit (often a projector rather than the ambient
    identity).  The basis is assumed closed under multiplication up to span.
    """

    def __init__(self, basis: list[np.ndarray], unit: np.ndarray, tol: float = 1e-9,
                 order_hint: int = 1, seed: int = 0):
        if not basis:
            raise ValueError("empty algebra basis")
        self.basis = basis
        self.unit = unit
        self.exact = is_exact(unit)
        self.tol = tol
        self.order_hint = max(1, order_hint)
        self.seed = seed

    @classmethod
    def from_structure(cls, mult: np.ndarray, unit_vec: np.ndarray, **kw):
        """Algebra from structure constants mult[i,j,k] (e_i e_j = sum_k c e_k),
        realized by its left-regular representation."""
        n = mult.shape[0]
        exact = mult.dtype == object
        mats = []
        for i in range(n):
            m = zeros(n, n, exact)
            for j in range(n):
                for k in range(n):
                    m[k, j] = mult[i, j, k]
            mats.append(m)
        unit_mat = zeros(n, n, exact)
        for i in range(n):
            unit_mat = unit_mat + (mats[i] * unit_vec[i] if exact else unit_vec[i] * mats[i])
        alg = cls(mats, unit_mat, **kw)
        alg._unit_vec = unit_vec
        return alg

    def element_vector(self, mat: np.ndarray) -> np.ndarray:
        """For from_structure algebras: abstract element of a rep matrix."""
        return mat @ self._unit_vec

    # -- linear structure ---------------------------------------------------

    def coords(self, m: np.ndarray):
        return coords_in_span(self.basis, m, self.tol)

    def center(self) -> list[np.ndarray]:
        """Basis of the center, as matrices."""
        n = len(self.basis)
        rows = []
        for bk in self.basis:
            block = np.stack([(bj @ bk - bk @ bj).reshape(-1) for bj in self.basis], axis=1)
            rows.append(block)
        a = np.concatenate(rows, axis=0)
        vecs = nullspace(a, self.tol)
        out = []
        for v in vecs:
            m = zeros(*self.unit.shape, self.exact)
            for c, b in zip(v, self.basis):
                m = m + b * c if self.exact else m + c * b
            out.append(m)
        return out

    def minimal_polynomial(self, z: np.ndarray) -> list:
        """Exact minimal polynomial of z relative to the algebra unit."""
        assert self.exact
        sb = SpanBasis(True)
        powers = [self.unit]
        sb.add(self.unit)
        while True:
            nxt = powers[-1] @ z
            stacked = np.stack([p.reshape(-1) for p in powers], axis=1)
            dep = solve_linear(stacked, nxt.reshape(-1))
            if dep is not None:
                k = len(powers)
                return [-dep[i] for i in range(k)] + [Fraction(1)]
            powers.append(nxt)
            if len(powers) > len(self.basis) + 1:
                raise ExactSplitUnsupported("minimal polynomial did not terminate")

    def _subalgebra_basis(self, e: np.ndarray) -> list[np.ndarray]:
        """Independent spanning set of e * A * e, with e first when possible."""
        sb = SpanBasis(self.exact, self.tol)
        out = []
        if sb.add(e):
            out.append(e)
        for b in self.basis:
            c = e @ b @ e
            if sb.add(c):
                out.append(c)
        return out

    def _check_idempotent(self, p: np.ndarray):
        d = p @ p - p
        if self.exact:
            if not all(scalar_is_zero(x) for x in d.flat):
                raise NonIdempotentResidual("exact idempotent check failed")
        else:
            scale = max(1.0, max_abs(p) ** 2)
            if max_abs(d) > 100 * self.tol * scale:
                raise NonIdempotentResidual(
                    f"idempotent residual {max_abs(d):.3e} exceeds tolerance")


class Block:
    """One central block of a split algebra."""

    def __init__(self, central: np.ndarray, minimals: list[np.ndarray]):
        self.central = central
        self.minimals = minimals

    @property
    def size(self) -> int:
        """Matrix size n of the block (it is isomorphic to an n x n algebra)."""
        return len(self.minimals)


MAX_SPLIT_TRIES = 32


def split_idempotents(alg: MatrixAlgebra) -> list[Block]:
    """Decompose a semisimple algebra into central blocks and minimal idempotents.

    Exact algebras are split by finding exact eigenvalues of generic elements
    (propose numerically, verify exactly) and building Lagrange/CRT
    idempotents; raises ExactSplitUnsupported when roots cannot be certified
    in the ambient cyclotomic field.  Float algebras are split spectrally and
    require the basis to be closed under conjugate transpose.
    """
    centrals = _central_split(alg)
    blocks = []
    for e in centrals:
        minimals = _minimal_split(alg, e)
        blocks.append(Block(e, minimals))
    return blocks


def _central_split(alg: MatrixAlgebra) -> list[np.ndarray]:
    zc = alg.center()
    if len(zc) == 1:
        return [alg.unit]
    if alg.exact:
        return _central_split_exact(alg, zc)
    return _split_commutative_float(alg, zc, alg.unit)


def _central_split_exact(alg: MatrixAlgebra, zc: list[np.ndarray]) -> list[np.ndarray]:
    rng = random.Random(alg.seed)
    want = len(zc)
    for attempt in range(MAX_SPLIT_TRIES):
        if attempt == 0:
            weights = list(range(1, want + 1))
        else:
            weights = [rng.randint(-3 - attempt, 3 + attempt) for _ in range(want)]
        z = zeros(*alg.unit.shape, True)
        for w, m in zip(weights, zc):
            z = z + m * Fraction(w)
        p = alg.minimal_polynomial(z)
        if len(p) - 1 != want:
            continue  # z does not generate the center; re-draw
        roots = _exact_roots(p, alg.order_hint)
        if roots is None or len(roots) != want:
            if attempt >= MAX_SPLIT_TRIES - 1:
                raise ExactSplitUnsupported(
                    "central eigenvalues not certified in the ambient cyclotomic field")
            continue
        idems = _lagrange_idempotents(z, roots, alg.unit)
        _verify_partition(alg, idems)
        return idems
    raise ExactSplitUnsupported("no generating central element found")


def _is_zero_exact(x) -> bool:
    return x.is_zero() if isinstance(x, Cyclo) else x == 0


def _exact_roots(p: list, order_hint: int):
    """All roots of exact polynomial p, verified exactly; None if any fail."""
    pc = np.array([scalar_to_complex(c) for c in reversed(p)], dtype=complex)
    approx = np.roots(pc)
    roots = []
    for z in approx:
        z = _newton_polish(pc, complex(z))
        cand = rationalize_root(z, order_hint)
        if cand is None:
            return None
        if not _is_zero_exact(poly_eval(p, cand)):
            return None
        if not any(_scalar_eq(cand, r) for r in roots):
            roots.append(cand)
    return roots


def _scalar_eq(a, b) -> bool:
    return _is_zero_exact(a - b)


def _lagrange_idempotents(z: np.ndarray, roots: list, unit: np.ndarray) -> list[np.ndarray]:
    idems = []
    for lam in roots:
        num = unit
        den = Fraction(1)
        for mu in roots:
            if _scalar_eq(mu, lam):
                continue
            num = num @ (z - unit * mu)
            den = den * (lam - mu)
        idems.append(num * _inv_scalar_generic(den))
    return idems


def _inv_scalar_generic(x):
    if isinstance(x, Cyclo):
        return x.inverse()
    return Fraction(1) / Fraction(x)


def _verify_partition(alg: MatrixAlgebra, idems: list[np.ndarray]):
    total = zeros(*alg.unit.shape, alg.exact)
    for p in idems:
        alg._check_idempotent(p)
        total = total + p
    if not mats_equal(total, alg.unit, 100 * alg.tol):
        raise NonIdempotentResidual("idempotents do not sum to the unit")


def _minimal_split(alg: MatrixAlgebra, e: np.ndarray) -> list[np.ndarray]:
    sub = alg._subalgebra_basis(e)
    if len(sub) == 1:
        alg._check_idempotent(e)
        return [e]
    if alg.exact:
        return _minimal_split_exact(alg, e, sub, random.Random(alg.seed + 17), [0])
    return _minimal_split_float(alg, e, sub)


def _minimal_split_exact(alg: MatrixAlgebra, e: np.ndarray, sub: list[np.ndarray],
                         rng: random.Random, budget: list[int]) -> list[np.ndarray]:
    """Recursively split e by finding idempotents below it."""
    if len(sub) == 1:
        alg._check_idempotent(e)
        return [e]
    candidates = _candidate_stream(sub, e, rng)
    for z in candidates:
        budget[0] += 1
        if budget[0] > 6 * MAX_SPLIT_TRIES:
            raise ExactSplitUnsupported("candidate budget exhausted in block split")
        p = _minpoly_rel(alg, z, e)
        if len(p) - 1 < 2:
            continue
        pc = np.array([scalar_to_complex(c) for c in reversed(p)], dtype=complex)
        approx = np.roots(pc)
        for zr in approx:
            zr = _newton_polish(pc, complex(zr))
            lam = rationalize_root(zr, alg.order_hint)
            if lam is None:
                continue
            if not _is_zero_exact(poly_eval(p, lam)):
                continue
            q, _ = poly_div_linear(p, lam)
            qlam = poly_eval(q, lam)
            if _is_zero_exact(qlam):
                continue  # multiple root; useless for a CRT idempotent
            f = poly_eval_mat(q, z, e) * _inv_scalar_generic(qlam)
            alg._check_idempotent(f)
            g = e - f
            if all(scalar_is_zero(x) for x in f.flat) or all(scalar_is_zero(x) for x in g.flat):
                continue
            sub_f = alg._subalgebra_basis(f)
            sub_g = alg._subalgebra_basis(g)
            return (_minimal_split_exact(alg, f, sub_f, rng, budget)
                    + _minimal_split_exact(alg, g, sub_g, rng, budget))
    raise ExactSplitUnsupported("no exactly-splittable element found in block")


def _minpoly_rel(alg: MatrixAlgebra, z: np.ndarray, e: np.ndarray) -> list:
    """Minimal polynomial of z in the unital algebra with unit e."""
    powers = [e]
    while True:
        nxt = powers[-1] @ z
        stacked = np.stack([p.reshape(-1) for p in powers], axis=1)
        dep = solve_linear(stacked, nxt.reshape(-1))
        if dep is not None:
            return [-dep[i] for i in range(len(powers))] + [Fraction(1)]
        powers.append(nxt)
        if len(powers) > e.shape[0] + 1:
            raise ExactSplitUnsupported("relative minimal polynomial did not terminate")


def _candidate_stream(sub: list[np.ndarray], e: np.ndarray, rng: random.Random):
    """Split candidates: basis elements, pairwise sums, then random combos."""
    for b in sub[1:]:
        yield b
    for i in range(1, len(sub)):
        for j in range(i + 1, len(sub)):
            yield sub[i] + sub[j]
    for _ in range(4 * MAX_SPLIT_TRIES):
        z = zeros(*e.shape, True)
        for b in sub:
            z = z + b * Fraction(rng.randint(-4, 4))
        yield z


def _split_commutative_float(alg: MatrixAlgebra, zbasis: list[np.ndarray],
                             e: np.ndarray) -> list[np.ndarray]:
    """Split a commutative (central) float algebra spectrally.

    A hermitian element alone cannot separate blocks whose characters are
    complex conjugates (its eigenvalues there coincide), so we combine the
    hermitian and anti-hermitian parts of a generic element with a random
    real weight.
    """
    rng = np.random.default_rng(alg.seed)
    want = len(zbasis)
    for _ in range(MAX_SPLIT_TRIES):
        w = rng.standard_normal(want) + 1j * rng.standard_normal(want)
        z = sum(c * m for c, m in zip(w, zbasis))
        h1 = _hermitian_part_in(alg, z)
        h2 = _hermitian_part_in(alg, -1j * z)
        if h1 is None or h2 is None:
            raise NonIdempotentResidual("float algebra is not closed under adjoint")
        h = h1 + rng.standard_normal() * h2
        projs = _eig_cluster_projectors(h, e, alg.tol)
        if len(projs) == want:
            for p in projs:
                alg._check_idempotent(p)
            return projs
    raise NonIdempotentResidual("central spectral split failed to stabilize")


def _hermitian_part_in(alg: MatrixAlgebra, z: np.ndarray):
    """(z + z^dagger)/2 if it lies in the algebra span, else None."""
    h = (z + z.conj().T) / 2
    if coords_in_span(alg.basis, h, max(alg.tol * 1e3, 1e-6)) is None:
        return None
    return h


def _eig_cluster_projectors(h: np.ndarray, e: np.ndarray, tol: float) -> list[np.ndarray]:
    """Spectral projectors of hermitian h restricted to the range of e."""
    # Orthonormal basis of range(e); e is a hermitian projector in float mode.
    w, v = np.linalg.eigh((e + e.conj().T) / 2)
    cols = [v[:, i] for i in range(v.shape[1]) if w[i] > 0.5]
    u = np.stack(cols, axis=1)
    ht = u.conj().T @ h @ u
    ev, evec = np.linalg.eigh((ht + ht.conj().T) / 2)
    scale = max(1.0, float(np.max(np.abs(ev))) if ev.size else 1.0)
    gap = max(1e3 * tol * scale, 1e-8 * scale)
    clusters: list[list[int]] = []
    for i in range(len(ev)):
        if clusters and ev[i] - ev[clusters[-1][-1]] < gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    projs = []
    for cl in clusters:
        vv = evec[:, cl]
        projs.append(u @ vv @ vv.conj().T @ u.conj().T)
    return projs


def _minimal_split_float(alg: MatrixAlgebra, e: np.ndarray,
                         sub: list[np.ndarray]) -> list[np.ndarray]:
    rng = np.random.default_rng(alg.seed + 17)
    for _ in range(MAX_SPLIT_TRIES):
        w = rng.standard_normal(len(sub)) + 1j * rng.standard_normal(len(sub))
        z = sum(c * m for c, m in zip(w, sub))
        h = _hermitian_part_in(alg, e @ z @ e)
        if h is None:
            raise NonIdempotentResidual("float block is not closed under adjoint")
        projs = _eig_cluster_projectors(h, e, alg.tol)
        if len(projs) < 2 and len(sub) > 1:
            continue
        ok = True
        for p in projs:
            if len(alg._subalgebra_basis(p)) != 1:
                ok = False  # eigenvalue collision across abstract blocks
                break
        if not ok:
            continue
        for p in projs:
            alg._check_idempotent(p)
        return projs
    raise NonIdempotentResidual("block spectral split failed to stabilize")
