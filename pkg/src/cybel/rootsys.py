"""Root systems of types A-G from their Cartan matrices.

Conventions: Bourbaki numbering, Cartan entries ``A[i][j] = <a_i, a_j> =
2 (a_i, a_j) / (a_j, a_j)``, roots stored as integer coordinate tuples in the
simple-root basis, and the form normalized so long roots have squared length 2.
Simple roots are indexed from 0 internally and from 1 in all text output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

Root = tuple[int, ...]

_VALID = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: 6 <= n <= 8,
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    kind = kind.upper()
    if kind not in _VALID or not _VALID[kind](n):
        raise ValueError(f"invalid root system type {kind}{n}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if kind in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if kind == "B":
            link(n - 2, n - 1, -2, -1)
        elif kind == "C":
            link(n - 2, n - 1, -1, -2)
    elif kind == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif kind == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
            link(i, j)
    elif kind == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif kind == "G":
        link(0, 1, -1, -3)
    return a


def _symmetrizer(a: list[list[int]]) -> tuple[int, ...]:
    """Integer d with d_j A_ij symmetric, shortest roots getting d = 1."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if a[i][j] and d[j] is None:
                # d_j A_ij = d_i A_ji
                d[j] = d[i] * a[j][i] / a[i][j]
                stack.append(j)
    lo = min(d)
    return tuple(int(x / lo) for x in d)


@dataclass(frozen=True)
class WeylElement:
    """Integer matrix on simple-root coordinates; column j is w(a_j)."""

    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] = ()

    def apply(self, v) -> Root:
        return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in self.matrix)

    def __matmul__(self, other: WeylElement) -> WeylElement:
        n = len(self.matrix)
        m = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return WeylElement(m, self.word + other.word)

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0) for i, row in enumerate(self.matrix) for j, x in enumerate(row)
        )


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    positive_roots: tuple[Root, ...]
    gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.rank
        return tuple(tuple(1 if i == k else 0 for i in range(n)) for k in range(n))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def positive_index(self) -> dict[Root, int]:
        return {r: k for k, r in enumerate(self.positive_roots)}

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_set

    def form(self, u, v) -> Fraction:
        g = self.gram
        return sum(
            (u[i] * v[j] * g[i][j] for i in range(self.rank) if u[i] for j in range(self.rank) if v[j]),
            Fraction(0),
        )

    def norm2(self, v) -> Fraction:
        return self.form(v, v)

    def pairing(self, beta, i: int) -> int:
        """<beta, a_i> = 2 (beta, a_i) / (a_i, a_i) = beta(h_i)."""
        return sum(beta[j] * self.cartan[j][i] for j in range(self.rank))

    def coroot(self, alpha) -> Root:
        """Coordinates of alpha^vee in the simple-coroot basis."""
        la = self.norm2(alpha)
        out = []
        for j, c in enumerate(alpha):
            x = c * self.norm2(self.simple_roots[j]) / la
            assert x.denominator == 1
            out.append(int(x))
        return tuple(out)

    def reflection(self, i: int) -> WeylElement:
        n = self.rank
        # s_i(a_j) = a_j - A_ji a_i
        m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for j in range(n):
            m[i][j] -= self.cartan[j][i]
        return WeylElement(tuple(tuple(r) for r in m), (i,))

    @cached_property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    def height(self, r) -> int:
        return sum(r)


def neg(r) -> Root:
    return tuple(-x for x in r)


def add(r, s) -> Root:
    return tuple(a + b for a, b in zip(r, s))


def sub(r, s) -> Root:
    return tuple(a - b for a, b in zip(r, s))


def is_positive(r) -> bool:
    return any(r) and all(x >= 0 for x in r)


def _positive_roots(a: list[list[int]]) -> tuple[Root, ...]:
    n = len(a)
    simple = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                p = 0
                while True:
                    cand = tuple(beta[k] - (p + 1) * (k == i) for k in range(n))
                    if cand in found:
                        p += 1
                    else:
                        break
                q = p - sum(beta[j] * a[j][i] for j in range(n))
                if q > 0:
                    up = tuple(beta[k] + (k == i) for k in range(n))
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))


def build(kind: str, rank: int) -> RootSystem:
    """Root system of type ``kind`` and rank ``rank``, e.g. ``build("G", 2)``."""
    kind = kind.upper()
    a = cartan_matrix(kind, rank)
    d = _symmetrizer(a)
    dmax = max(d)
    gram = tuple(tuple(Fraction(d[j] * a[i][j], dmax) for j in range(rank)) for i in range(rank))
    return RootSystem(
        kind=kind,
        rank=rank,
        cartan=tuple(tuple(r) for r in a),
        symmetrizer=d,
        positive_roots=_positive_roots(a),
        gram=gram,
    )


def longest_weyl(rs: RootSystem) -> tuple[WeylElement, tuple[int, ...]]:
    """The longest element w0 and the permutation sigma with w0(a_i) = -a_sigma(i)."""
    n = rs.rank
    v = [sum(col) for col in zip(*rs.positive_roots)]  # 2 rho
    steps = []
    while True:
        i = next((k for k in range(n) if rs.pairing(v, k) > 0), None)
        if i is None:
            break
        c = rs.pairing(v, i)
        v[i] -= c
        steps.append(i)
    w = WeylElement(tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n)))
    for i in steps:
        w = rs.reflection(i) @ w
    sigma = []
    for i in range(n):
        img = w.apply(rs.simple_roots[i])
        j = next(k for k in range(n) if img == neg(rs.simple_roots[k]))
        sigma.append(j)
    return w, tuple(sigma)


def is_isometry(rs: RootSystem, src, dst, mapping: dict[int, int]) -> bool:
    """Whether ``mapping: src -> dst`` preserves the form on simple roots."""
    src, dst = set(src), set(dst)
    if set(mapping) != src or set(mapping.values()) != dst or len(set(mapping.values())) != len(src):
        raise ValueError("map is not a bijection onto the target set")
    g = rs.gram
    return all(g[mapping[a]][mapping[b]] == g[a][b] for a in src for b in src)
