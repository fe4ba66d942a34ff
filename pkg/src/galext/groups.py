"""Small finite groups given by explicit multiplication tables.

Everything downstream (group gradings, equivariance constraints, the
automorphism group of the condensation algebra) works with element
indices into a `FiniteGroup`; names are only for display.
"""

from __future__ import annotations

from itertools import permutations


class FiniteGroup:
    def __init__(self, elements: list[str], table: list[list[int]]):
        self.elements = list(elements)
        self.table = [list(row) for row in table]
        n = len(self.elements)
        self.identity = next(
            i for i in range(n) if all(self.table[i][j] == j for j in range(n)))
        self.inverse = [next(j for j in range(n) if self.table[i][j] == self.identity)
                        for i in range(n)]

    @classmethod
    def from_table(cls, elements: list[str], table: list[list[int]]) -> "FiniteGroup":
        """Construct with full validation (use for external input)."""
        n = len(elements)
        if len(table) != n or any(len(r) != n for r in table):
            raise ValueError("multiplication table must be square")
        if any(x not in range(n) for r in table for x in r):
            raise ValueError("table entries must be element indices")
        for i in range(n):
            if sorted(table[i]) != list(range(n)) or sorted(r[i] for r in table) != list(range(n)):
                raise ValueError("table rows/columns must be permutations")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if table[table[i][j]][k] != table[i][table[j][k]]:
                        raise ValueError("table is not associative")
        return cls(elements, table)

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inverse[g])

    def element_order(self, i: int) -> int:
        k, acc = 1, i
        while acc != self.identity:
            acc = self.mul(acc, i)
            k += 1
        return k

    @property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*[self.element_order(i) for i in range(len(self))])

    def is_abelian(self) -> bool:
        n = len(self)
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(n) for j in range(n))

    def conjugacy_classes(self) -> list[list[int]]:
        n = len(self)
        seen = [False] * n
        classes = []
        for i in range(n):
            if seen[i]:
                continue
            cls_ = sorted({self.conj(g, i) for g in range(n)})
            for x in cls_:
                seen[x] = True
            classes.append(cls_)
        return classes

    def centralizer(self, x: int) -> list[int]:
        return [g for g in range(len(self)) if self.mul(g, x) == self.mul(x, g)]

    def subgroup_generated(self, gens: list[int]) -> list[int]:
        out = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    v = self.mul(h, g)
                    if v not in out:
                        out.add(v)
                        nxt.append(v)
            frontier = nxt
        return sorted(out)

    def is_subgroup(self, subset: list[int]) -> bool:
        s = set(subset)
        return (self.identity in s
                and all(self.mul(a, b) in s for a in s for b in s))

    def is_normal(self, subset: list[int]) -> bool:
        s = set(subset)
        return self.is_subgroup(subset) and all(
            self.conj(g, x) in s for g in range(len(self)) for x in s)

    def subgroup(self, indices: list[int]) -> tuple["FiniteGroup", list[int]]:
        """Subgroup on the given (closed) index set; returns (H, embedding)."""
        idx = sorted(indices)
        if not self.is_subgroup(idx):
            raise ValueError("index set is not closed under multiplication")
        pos = {g: k for k, g in enumerate(idx)}
        table = [[pos[self.mul(a, b)] for b in idx] for a in idx]
        names = [self.elements[g] for g in idx]
        return FiniteGroup(names, table), idx

    def quotient(self, normal: list[int]) -> tuple["FiniteGroup", list[int]]:
        """Quotient by a normal subgroup; returns (Q, coset index of each g)."""
        if not self.is_normal(normal):
            raise ValueError("subgroup is not normal")
        n = len(self)
        coset_of = [-1] * n
        reps = []
        for g in range(n):
            if coset_of[g] >= 0:
                continue
            members = sorted(self.mul(g, h) for h in normal)
            for x in members:
                coset_of[x] = len(reps)
            reps.append(members[0])
        table = [[coset_of[self.mul(a, b)] for b in reps] for a in reps]
        names = [f"[{self.elements[r]}]" for r in reps]
        return FiniteGroup(names, table), coset_of

    def index(self, name: str) -> int:
        return self.elements.index(name)

    def isomorphic(self, other: "FiniteGroup") -> bool:
        """Brute-force isomorphism test (groups here are tiny)."""
        n = len(self)
        if n != len(other):
            return False
        mine = sorted(self.element_order(i) for i in range(n))
        theirs = sorted(other.element_order(i) for i in range(n))
        if mine != theirs:
            return False
        by_order: dict[int, list[int]] = {}
        for j in range(n):
            by_order.setdefault(other.element_order(j), []).append(j)
        candidates = [by_order[self.element_order(i)] for i in range(n)]

        assign = [-1] * n
        used = [False] * n

        def full_check() -> bool:
            return all(other.mul(assign[a], assign[b]) == assign[self.mul(a, b)]
                       for a in range(n) for b in range(n))

        def extend(i: int) -> bool:
            if i == n:
                return full_check()
            for j in candidates[i]:
                if used[j]:
                    continue
                ok = True
                for k in range(i):
                    if assign[self.mul(i, k)] != -1 and \
                       other.mul(j, assign[k]) != assign[self.mul(i, k)]:
                        ok = False
                        break
                    if assign[self.mul(k, i)] != -1 and \
                       other.mul(assign[k], j) != assign[self.mul(k, i)]:
                        ok = False
                        break
                if not ok:
                    continue
                assign[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                assign[i] = -1
                used[j] = False
            return False

        return extend(0)

    def __repr__(self):
        return f"FiniteGroup({len(self)}: {', '.join(self.elements)})"


def cyclic(n: int) -> FiniteGroup:
    names = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(names, table)


def product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(len(g)) for b in range(len(h))]
    pos = {p: k for k, p in enumerate(pairs)}
    names = [f"({g.elements[a]},{h.elements[b]})" for a, b in pairs]
    table = [[pos[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs]
             for (a, b) in pairs]
    return FiniteGroup(names, table)


def symmetric3() -> FiniteGroup:
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    pos = {p: k for k, p in enumerate(perms)}

    def compose(p, q):  # (p o q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(3))

    table = [[pos[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(names, table)


def dihedral4() -> FiniteGroup:
    """Symmetries of the square: r rotation, s reflection."""
    names = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]

    def mul(a, b):
        ar, af = a % 4, a // 4
        br, bf = b % 4, b // 4
        # (r^ar s^af)(r^br s^bf): s r = r^-1 s
        rr = (ar + (br if af == 0 else -br)) % 4
        return rr + 4 * ((af + bf) % 2)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return FiniteGroup(names, table)


def quaternion8() -> FiniteGroup:
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}

    def mul_units(a, b):
        rules = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
            ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
        }
        return rules[(a, b)]

    def split(name):
        return (-1, name[1:]) if name.startswith("-") else (1, name)

    def join(sign, unit):
        return unit if sign == 1 else "-" + unit

    pos = {n: k for k, n in enumerate(names)}
    table = []
    for a in names:
        row = []
        for b in names:
            sa, ua = split(a)
            sb, ub = split(b)
            s, u = mul_units(ua, ub)
            row.append(pos[join(sa * sb * s, u)])
        table.append(row)
    return FiniteGroup(names, table)


GROUP_PRESETS = {
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "Z2xZ2": lambda: product(cyclic(2), cyclic(2)),
    "S3": symmetric3,
    "D4": dihedral4,
    "Q8": quaternion8,
}


def group_preset(name: str) -> FiniteGroup:
    if name not in GROUP_PRESETS:
        raise KeyError(f"unknown group preset {name!r}; have {sorted(GROUP_PRESETS)}")
    return GROUP_PRESETS[name]()
