"""Split simple Lie algebras in a Chevalley basis, with their automorphisms.

Basis order: ``e_a`` for each positive root (in root-system order), then
``f_a = e_{-a}`` in the same order, then ``h_1..h_n``.  Structure constants are
integers fixed by the extraspecial-pair convention: ``N_{a,b} = +(p+1)`` on
every extraspecial pair, everything else forced by the Chevalley relations.

Algebra elements are sparse dicts ``{basis index: coefficient}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Iterable

from . import linalg
from .rootsys import RootSystem, add, build, is_positive, longest_weyl, neg, sub
from .scalars import conjugate as _gamma
from .scalars import fmt

Vector = dict[int, Any]


def _clean(v: dict) -> dict:
    return {k: c for k, c in v.items() if c != 0}


def _axpy(acc: dict, k: int, c) -> None:
    s = acc.get(k, 0) + c
    if s == 0:
        acc.pop(k, None)
    else:
        acc[k] = s


class ChevalleyAlgebra:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n = rs.rank
        self.npos = len(rs.positive_roots)
        self.dim = 2 * self.npos + self.n
        self._root_of: list[tuple[int, ...]] = (
            list(rs.positive_roots)
            + [neg(r) for r in rs.positive_roots]
            + [(0,) * self.n] * self.n
        )
        self._index_of_root = {r: k for k, r in enumerate(self._root_of[: 2 * self.npos])}
        self._table = self._build_table()

    # ------------------------------------------------------------------
    # basis bookkeeping

    def e(self, root) -> int:
        return self._index_of_root[tuple(root)]

    def f(self, root) -> int:
        return self._index_of_root[neg(root)]

    def h(self, i: int) -> int:
        return 2 * self.npos + i

    def root_vector(self, root) -> int:
        """Basis index of the root vector for any root (positive or negative)."""
        return self._index_of_root[tuple(root)]

    def weight(self, k: int) -> tuple[int, ...]:
        """Torus weight of basis vector ``k`` in simple-root coordinates."""
        return self._root_of[k]

    def is_cartan(self, k: int) -> bool:
        return k >= 2 * self.npos

    @cached_property
    def names(self) -> tuple[str, ...]:
        out = []
        for k in range(self.dim):
            if self.is_cartan(k):
                out.append(f"h[{k - 2 * self.npos + 1}]")
            else:
                r = self._root_of[k]
                tag = "e" if k < self.npos else "f"
                coords = r if k < self.npos else neg(r)
                out.append(f"{tag}[{','.join(map(str, coords))}]")
        return tuple(out)

    def index(self, name: str) -> int:
        return self.names.index(name)

    # ------------------------------------------------------------------
    # structure constants

    @cached_property
    def _pos_order(self) -> dict:
        return self.rs.positive_index

    def _extraspecial(self, xi):
        rs = self.rs
        for a in rs.positive_roots:
            b = sub(xi, a)
            if is_positive(b) and rs.is_root(b):
                p = 0
                while rs.is_root(sub(b, tuple((p + 1) * x for x in a))):
                    p += 1
                return a, b, p
        raise ValueError(f"{xi} has no extraspecial pair")

    def structure_constant(self, r, s) -> int:
        """N_{r,s} with [e_r, e_s] = N_{r,s} e_{r+s}; zero if r+s is not a root."""
        r, s = tuple(r), tuple(s)
        if not self.rs.is_root(add(r, s)):
            return 0
        val = self._n(r, s)
        assert val.denominator == 1
        return int(val)

    @lru_cache(maxsize=None)
    def _n(self, r, s) -> Fraction:
        rs = self.rs
        pr, ps = is_positive(r), is_positive(s)
        if pr and ps:
            if self._pos_order[r] > self._pos_order[s]:
                return -self._n(s, r)
            xi = add(r, s)
            a, b, p = self._extraspecial(xi)
            if r == a:
                return Fraction(p + 1)
            acc = Fraction(0)
            sa = sub(s, a)
            if rs.is_root(sa):
                acc += self._n(s, neg(a)) * self._n(r, neg(b)) / rs.norm2(sa)
            ra = sub(r, a)
            if rs.is_root(ra):
                acc += self._n(neg(a), r) * self._n(s, neg(b)) / rs.norm2(ra)
            return rs.norm2(xi) / (p + 1) * acc
        if not pr and not ps:
            return -self._n(neg(r), neg(s))
        t = neg(add(r, s))
        if is_positive(t) == is_positive(s):
            return rs.norm2(t) / rs.norm2(r) * self._n(s, t)
        return rs.norm2(t) / rs.norm2(s) * self._n(t, r)

    def _build_table(self) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
        rs = self.rs
        table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        nroot = 2 * self.npos
        for a in range(nroot):
            ra = self._root_of[a]
            for b in range(nroot):
                rb = self._root_of[b]
                tot = add(ra, rb)
                if not any(tot):
                    hv = self.coroot_vector(ra if a < self.npos else rb)
                    sign = 1 if a < self.npos else -1
                    table[a, b] = tuple((self.h(i), sign * c) for i, c in sorted(hv.items()))
                elif rs.is_root(tot):
                    table[a, b] = ((self._index_of_root[tot], self.structure_constant(ra, rb)),)
            for i in range(self.n):
                c = rs.pairing(ra, i)
                if c:
                    table[self.h(i), a] = ((a, c),)
                    table[a, self.h(i)] = ((a, -c),)
        return table

    def coroot_vector(self, alpha) -> Vector:
        """h_alpha = [e_alpha, f_alpha] in the basis h_1..h_n (alpha positive)."""
        return {i: c for i, c in enumerate(self.rs.coroot(alpha)) if c}

    def bracket_basis(self, a: int, b: int) -> tuple[tuple[int, int], ...]:
        return self._table.get((a, b), ())

    @property
    def table(self) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
        return self._table

    def bracket(self, u: Vector, v: Vector) -> Vector:
        out: dict[int, Any] = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for g, c in self._table.get((a, b), ()):
                    _axpy(out, g, ca * cb * c)
        return out

    # ------------------------------------------------------------------
    # invariant form, duals, Casimir

    def form_basis(self, a: int, b: int) -> Fraction:
        if self.is_cartan(a) and self.is_cartan(b):
            return self.cartan_gram[a - 2 * self.npos][b - 2 * self.npos]
        if self.is_cartan(a) or self.is_cartan(b):
            return Fraction(0)
        ra, rb = self._root_of[a], self._root_of[b]
        if any(add(ra, rb)):
            return Fraction(0)
        return 2 / self.rs.norm2(ra)

    def form(self, u: Vector, v: Vector):
        return sum((cu * cv * self.form_basis(a, b) for a, cu in u.items() for b, cv in v.items()), Fraction(0))

    @cached_property
    def cartan_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """<h_i, h_j> = 4 (a_i, a_j) / ((a_i, a_i)(a_j, a_j))."""
        rs = self.rs
        n2 = [rs.gram[i][i] for i in range(self.n)]
        return tuple(
            tuple(4 * rs.gram[i][j] / (n2[i] * n2[j]) for j in range(self.n)) for i in range(self.n)
        )

    @cached_property
    def cartan_gram_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(r) for r in linalg.inverse(self.cartan_gram))

    def dual(self, k: int) -> Vector:
        """The form-dual of basis vector k: <x_k, dual(k)> = 1, orthogonal to the rest."""
        if self.is_cartan(k):
            i = k - 2 * self.npos
            return _clean({self.h(j): c for j, c in enumerate(self.cartan_gram_inverse[i])})
        return {self.root_vector(neg(self._root_of[k])): self.rs.norm2(self._root_of[k]) / 2}

    def dual_negative(self, alpha) -> Vector:
        """e_{-alpha} rescaled so that <e_alpha, e_{-alpha}> = 1."""
        return self.dual(self.e(alpha))

    # ------------------------------------------------------------------
    # automorphisms

    def identity(self) -> AlgebraAutomorphism:
        return AlgebraAutomorphism(self, tuple(((k, 1),) for k in range(self.dim)))

    def transport_signs(self, domain: Iterable[int], pi: dict[int, int]) -> dict[tuple, tuple[tuple, int]]:
        """Signs of the bracket-word lift of a simple-root map ``pi`` on ``domain``.

        Returns ``{positive root xi in Span(domain): (pi(xi), sigma)}`` such that
        ``e_xi -> sigma e_{pi(xi)}`` (and likewise for ``f``) is the unique Lie
        algebra map fixing ``e_i -> e_{pi(i)}`` on simple generators.
        """
        rs = self.rs
        domain = sorted(domain)
        dom = set(domain)
        out: dict[tuple, tuple[tuple, int]] = {}

        def image(root):
            img = [0] * self.n
            for i, c in enumerate(root):
                if c:
                    img[pi[i]] += c
            return tuple(img)

        for xi in rs.positive_roots:
            if any(c and i not in dom for i, c in enumerate(xi)):
                continue
            if sum(xi) == 1:
                out[xi] = (image(xi), 1)
                continue
            for i in domain:
                beta = sub(xi, rs.simple_roots[i])
                if is_positive(beta) and beta in out:
                    pb, sb = out[beta]
                    num = self.structure_constant(rs.simple_roots[pi[i]], pb)
                    den = self.structure_constant(rs.simple_roots[i], beta)
                    out[xi] = (image(xi), sb * num // den)
                    break
        return out

    def chevalley_involution(self) -> AlgebraAutomorphism:
        cols = []
        for k in range(self.dim):
            if self.is_cartan(k):
                cols.append(((k, -1),))
            else:
                cols.append(((self.root_vector(neg(self._root_of[k])), -1),))
        return AlgebraAutomorphism(self, tuple(cols), flags=frozenset({"involution", "stabilizes_h"}))

    def diagram_automorphism(self, pi: tuple[int, ...] | dict[int, int]) -> AlgebraAutomorphism:
        pi = dict(enumerate(pi)) if not isinstance(pi, dict) else pi
        signs = self.transport_signs(range(self.n), pi)
        cols: list[tuple] = [()] * self.dim
        for xi, (img, s) in signs.items():
            cols[self.e(xi)] = ((self.e(img), s),)
            cols[self.f(xi)] = ((self.f(img), s),)
        for i in range(self.n):
            cols[self.h(i)] = ((self.h(pi[i]), 1),)
        return AlgebraAutomorphism(self, tuple(cols), flags=frozenset({"stabilizes_h", "stabilizes_b"}))

    @cached_property
    def longest(self):
        return longest_weyl(self.rs)

    def diagram_lift(self) -> AlgebraAutomorphism:
        """The lift d of -w0, permuting simple root spaces with sign +1."""
        _, sigma = self.longest
        d = self.diagram_automorphism(sigma)
        if all(sigma[i] == sigma[sigma[i]] for i in range(self.n)):
            d = AlgebraAutomorphism(self, d.columns, flags=d.flags | {"involution"})
        return d

    def build_S(self) -> AlgebraAutomorphism:
        c = self.chevalley_involution()
        s = c.compose(self.diagram_lift())
        return AlgebraAutomorphism(self, s.columns, flags=frozenset({"involution", "stabilizes_h"}))

    def w0_on_cartan(self) -> list[list[int]]:
        """w0 acting on h in the coroot basis: column j is w0(h_j)."""
        w, _ = self.longest
        d = self.rs.symmetrizer
        # a_k^vee = (2/(a_k,a_k)) a_k, and (a_k,a_k) is proportional to d_k
        return [[w.matrix[k][j] * d[k] // d[j] for j in range(self.n)] for k in range(self.n)]


@dataclass(frozen=True, eq=False)
class AlgebraAutomorphism:
    """A linear map on g given by the images of the basis vectors.

    ``columns[k]`` is a sparse tuple ``((index, coeff), ...)`` for phi(x_k).
    """

    algebra: ChevalleyAlgebra
    columns: tuple
    flags: frozenset = frozenset()

    @classmethod
    def from_matrix(cls, alg: ChevalleyAlgebra, matrix, flags=frozenset()) -> AlgebraAutomorphism:
        cols = []
        for k in range(alg.dim):
            cols.append(tuple((i, matrix[i][k]) for i in range(alg.dim) if matrix[i][k] != 0))
        return cls(alg, tuple(cols), frozenset(flags))

    def __call__(self, v: Vector) -> Vector:
        out: dict[int, Any] = {}
        for k, c in v.items():
            for i, m in self.columns[k]:
                _axpy(out, i, m * c)
        return out

    def image(self, k: int) -> Vector:
        return dict(self.columns[k])

    def matrix(self) -> list[list[Any]]:
        n = self.algebra.dim
        m: list[list[Any]] = [[0] * n for _ in range(n)]
        for k, col in enumerate(self.columns):
            for i, c in col:
                m[i][k] = c
        return m

    def compose(self, other: AlgebraAutomorphism) -> AlgebraAutomorphism:
        """self o other."""
        cols = tuple(tuple(sorted(self(dict(col)).items())) for col in other.columns)
        return AlgebraAutomorphism(self.algebra, cols)

    def __matmul__(self, other: AlgebraAutomorphism) -> AlgebraAutomorphism:
        return self.compose(other)

    def conjugate(self) -> AlgebraAutomorphism:
        """Entrywise Galois conjugation gamma(phi)."""
        cols = tuple(tuple((i, _gamma(c)) for i, c in col) for col in self.columns)
        return AlgebraAutomorphism(self.algebra, cols, self.flags)

    def inverse(self) -> AlgebraAutomorphism:
        return AlgebraAutomorphism.from_matrix(self.algebra, linalg.inverse(self.matrix()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraAutomorphism):
            return NotImplemented
        return self.algebra is other.algebra and all(
            _clean(dict(a)) == _clean(dict(b)) for a, b in zip(self.columns, other.columns)
        )

    __hash__ = None  # type: ignore[assignment]

    def is_identity(self) -> bool:
        return all(_clean(dict(col)) == {k: 1} for k, col in enumerate(self.columns))

    def preserves_brackets(self) -> bool:
        return self.first_bracket_defect() is None

    def first_bracket_defect(self):
        alg = self.algebra
        imgs = [dict(col) for col in self.columns]
        for a in range(alg.dim):
            for b in range(a + 1, alg.dim):
                lhs = self(dict(alg.bracket_basis(a, b)))
                rhs = alg.bracket(imgs[a], imgs[b])
                if _clean(lhs) != _clean(rhs):
                    return a, b
        return None

    def is_invertible(self) -> bool:
        return linalg.rank(self.matrix()) == self.algebra.dim

    def to_json(self) -> list[dict]:
        names = self.algebra.names
        return [
            {"basis": names[k], "image": [{"basis": names[i], "coeff": fmt(c)} for i, c in col]}
            for k, col in enumerate(self.columns)
        ]


@lru_cache(maxsize=None)
def build_algebra(kind: str, rank: int) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(build(kind, rank))


def casimir(alg: ChevalleyAlgebra):
    """Return ``(omega, omega0)`` as sparse pair maps ``{(a, b): coeff}``."""
    omega: dict[tuple[int, int], Any] = {}
    omega0: dict[tuple[int, int], Any] = {}
    for k in range(alg.dim):
        for j, c in alg.dual(k).items():
            omega[k, j] = omega.get((k, j), 0) + c
            if alg.is_cartan(k):
                omega0[k, j] = c
    return omega, omega0


def chevalley_involution(alg: ChevalleyAlgebra) -> AlgebraAutomorphism:
    return alg.chevalley_involution()


def build_S(alg: ChevalleyAlgebra) -> AlgebraAutomorphism:
    return alg.build_S()
