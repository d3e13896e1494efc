"""Cocycles over a quadratic extension L = K(s), s^2 = u, with Galois group {1, gamma}.

Untwisted data are torus points X; their cocycle is u_X = X^-1 gamma(X).
Twisted data are algebra automorphisms over L (adjoint action of a group point).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Sequence

from . import linalg
from .centralizer import TorusLatticeModel, constraint_lattice, decompose
from .chevalley import AlgebraAutomorphism, ChevalleyAlgebra
from .rmatrix import RMatrix
from .scalars import QQ, Tower, conjugate, fmt, kummer_class, to_rational
from .tensor import ad_action, swap


class NoSolution(RuntimeError):
    """The configured tower is too small to carry the requested witness."""


@dataclass(frozen=True)
class TorusPoint:
    """A homomorphism Z^N -> L^x given by its values on the basis characters."""

    model: TorusLatticeModel
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.model.lattice_rank:
            raise ValueError(f"point has {len(self.values)} values, lattice rank is {self.model.lattice_rank}")
        if any(v == 0 for v in self.values):
            raise ValueError("torus point values must be invertible")

    def evaluate(self, character: Sequence[int]):
        out: Any = Fraction(1)
        for v, e in zip(self.values, character):
            if e:
                out = out * v ** e
        return out

    def conjugate(self) -> TorusPoint:
        return TorusPoint(self.model, tuple(conjugate(v) for v in self.values))

    def __mul__(self, other: TorusPoint) -> TorusPoint:
        return TorusPoint(self.model, tuple(a * b for a, b in zip(self.values, other.values)))

    def inverse(self) -> TorusPoint:
        return TorusPoint(self.model, tuple(1 / v for v in self.values))

    def is_identity(self) -> bool:
        return all(v == 1 for v in self.values)

    def to_json(self) -> list[str]:
        return [fmt(v) for v in self.values]


@dataclass(frozen=True)
class BDCocycle:
    value: TorusPoint | AlgebraAutomorphism
    kind: str  # "untwisted" | "twisted"


def cocycle_from_point(x: TorusPoint) -> BDCocycle:
    """u(gamma) = X^-1 gamma(X), valuewise."""
    return BDCocycle(x.inverse() * x.conjugate(), "untwisted")


def parse_point(text: str, model: TorusLatticeModel, tower: Tower) -> TorusPoint:
    """Comma-separated scalar literals, e.g. ``'1,1,1,sqrt'``."""
    parts = [p.strip() for p in text.split(",")]
    return TorusPoint(model, tuple(tower.parse(p) for p in parts))


def so_even_point(n: int, model: TorusLatticeModel, tower: Tower) -> TorusPoint:
    """(1, ..., 1, sqrt d): the diagonal element with d^(1/2), d^(-1/2) in the middle."""
    vals = [tower.element(1)] * (n - 1) + [tower.gen]
    return TorusPoint(model, tuple(vals))


@dataclass(frozen=True)
class UntwistedResult:
    member: bool
    classes: tuple
    divisors: tuple[int, ...]

    def to_json(self) -> dict:
        return {"member": self.member, "classes": [fmt(c) for c in self.classes], "divisors": list(self.divisors)}


def verify_untwisted(x: TorusPoint, r: RMatrix, base: Any = QQ) -> UntwistedResult:
    """Is u_X valued in C(G, r)?  And the square class of each mu_2 component.

    For each finite factor mu_m with projecting character psi, psi(X)^m is fixed
    by gamma and its class in K^x/(K^x)^m is the cocycle's component.
    """
    model = x.model
    rows = constraint_lattice(r, model)
    u = cocycle_from_point(x).value
    member = all(u.evaluate(row) == 1 for row in rows)
    dec = decompose(rows, model.lattice_rank)
    if not member:
        return UntwistedResult(False, (), dec.divisors)
    classes = []
    for m, psi in zip(dec.divisors, dec.characters):
        y = x.evaluate(psi) ** m
        if conjugate(y) != y:
            raise ValueError("psi(X)^m is not Galois-fixed; X does not define a cocycle")
        if m == 2:
            classes.append(kummer_class(y, base))
        else:
            classes.append(y)
    return UntwistedResult(member, tuple(classes), dec.divisors)


# ---------------------------------------------------------------------------
# twisted setting


@dataclass(frozen=True)
class TwistedResult:
    cond_a: bool
    cond_b: bool

    def to_json(self) -> dict:
        return {"cond_a": self.cond_a, "cond_b": self.cond_b}


def verify_twisted(x: AlgebraAutomorphism, r: RMatrix, s: AlgebraAutomorphism | None = None) -> TwistedResult:
    """(a) X^-1 gamma^2(X) fixes r_BD; (b) Ad_{X^-1 gamma(X)}(r_BD) = r_BD^21.

    When ``s`` is given, additionally X^-1 gamma(X) is compared with it.
    """
    if not x.preserves_brackets():
        raise ValueError("X does not preserve brackets")
    t = r.tensor if isinstance(r, RMatrix) else r
    xinv = x.inverse()
    y = xinv.compose(x.conjugate())
    cond_b = ad_action(y, t) == swap(t)
    z = xinv.compose(x.conjugate().conjugate())
    cond_a = ad_action(z, t) == t
    return TwistedResult(cond_a, cond_b)


def _mat2_mul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def _sl2_basis(alg: ChevalleyAlgebra, one, zero):
    """2x2 matrices for the Chevalley basis of sl2 (e, f, h)."""
    e = [[zero, one], [zero, zero]]
    f = [[zero, zero], [one, zero]]
    h = [[one, zero], [zero, -one]]
    return [e, f, h]


def _as_matrix(vec: dict, basis, zero):
    out = [[zero, zero], [zero, zero]]
    for k, c in vec.items():
        for i in range(2):
            for j in range(2):
                out[i][j] = out[i][j] + c * basis[k][i][j]
    return out


def _coords(mat, one):
    """sl2 matrix -> coordinates in (e, f, h)."""
    return {0: mat[0][1], 1: mat[1][0], 2: mat[0][0]}


def _lift_to_gl2(alg: ChevalleyAlgebra, s: AlgebraAutomorphism, field) -> list[list[Any]]:
    """A 2x2 matrix m with m x m^-1 = S(x) on sl2."""
    zero, one = field.zero, field.one
    basis = _sl2_basis(alg, one, zero)
    rows = []
    for k in range(3):
        x = basis[k]
        y = _as_matrix(s.image(k), basis, zero)
        # m x - y m = 0, unknowns m00 m01 m10 m11
        for i in range(2):
            for j in range(2):
                row = [zero] * 4
                for p in range(2):
                    row[2 * i + p] = row[2 * i + p] + x[p][j]
                    row[2 * p + j] = row[2 * p + j] - y[i][p]
                rows.append(row)
    null = linalg.nullspace(rows, 4, zero, one)
    if len(null) != 1:
        raise NoSolution("S does not lift to a unique projective 2x2 matrix")
    v = null[0]
    return [[v[0], v[1]], [v[2], v[3]]]


def _units(tower: Tower) -> list:
    out = [Fraction(1), Fraction(-1)]
    if tower.number_field is not None:
        w = tower.number_field.gen
        out += [w, -w, 1 + w, 1 - w, -1 + w, -1 - w]
    return [tower.element(c) for c in out]


def adjoint_of(alg: ChevalleyAlgebra, g, field) -> AlgebraAutomorphism:
    """Ad(g) on sl2 in the Chevalley basis."""
    zero, one = field.zero, field.one
    basis = _sl2_basis(alg, one, zero)
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    ginv = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]]
    cols = []
    for k in range(3):
        img = _mat2_mul(_mat2_mul(g, basis[k]), ginv)
        cols.append(tuple((i, c) for i, c in sorted(_coords(img, one).items()) if c != 0))
    return AlgebraAutomorphism(alg, tuple(cols))


def solve_J(alg: ChevalleyAlgebra, s: AlgebraAutomorphism, tower: Tower) -> AlgebraAutomorphism:
    """J over L with gamma(J) = J S, for type A1.

    Ansatz: J = Ad(g), g = a + j b with a, b over K and gamma(g) = lambda g m,
    where m lifts S to GL2 and lambda runs over a few small tower units.  Raises
    :class:`NoSolution` when no candidate works over the configured tower.
    """
    if alg.rs.label != "A1":
        raise NotImplementedError("solve_J is implemented for type A1 only")
    if tower.top is None or tower.function_field is None:
        raise ValueError("solve_J needs the twisted tower F(t)(j), j^2 = t")
    L = tower.field
    K = tower.base
    m = _lift_to_gl2(alg, s, L)
    mu = _mat2_mul(m, m)
    if mu[0][1] != 0 or mu[1][0] != 0 or mu[0][0] != mu[1][1]:
        raise NoSolution("lift of S does not square to a scalar")
    mu = mu[0][0]
    t = tower.t
    j = tower.gen
    zero, one = K.zero, K.one
    kcoerce = K.coerce
    mk = [[kcoerce(x) for x in row] for row in m]
    if any(x is None for row in mk for x in row):
        raise NoSolution("lift of S is not defined over the base field")
    candidates = []
    for c in _units(tower):
        for lam in (c, c * j):
            if lam * conjugate(lam) * mu == 1:
                candidates.append(lam)
    for lam in candidates:
        lam0 = kcoerce(lam.a if hasattr(lam, "a") else lam)
        lam1 = kcoerce(lam.b if hasattr(lam, "b") else 0)
        # unknowns a00 a01 a10 a11 b00 b01 b10 b11
        rows = []
        for i in range(2):
            for jj in range(2):
                # a - (lam0 a + lam1 t b) m = 0
                row = [zero] * 8
                row[2 * i + jj] = row[2 * i + jj] + one
                for p in range(2):
                    row[2 * i + p] = row[2 * i + p] - lam0 * mk[p][jj]
                    row[4 + 2 * i + p] = row[4 + 2 * i + p] - lam1 * t * mk[p][jj]
                rows.append(row)
                # b + (lam1 a + lam0 b) m = 0
                row = [zero] * 8
                row[4 + 2 * i + jj] = row[4 + 2 * i + jj] + one
                for p in range(2):
                    row[2 * i + p] = row[2 * i + p] + lam1 * mk[p][jj]
                    row[4 + 2 * i + p] = row[4 + 2 * i + p] + lam0 * mk[p][jj]
                rows.append(row)
        null = linalg.nullspace(rows, 8, zero, one)
        # small integer combinations, fewest nonzero weights first
        weights = sorted(product((0, 1, 2), repeat=len(null)), key=lambda w: (sum(x != 0 for x in w), w))
        for w in weights:
            if not any(w):
                continue
            v = [sum((c * vec[k] for c, vec in zip(w, null) if c), zero) for k in range(8)]
            g = [[L.coerce(v[2 * i + k]) + j * v[4 + 2 * i + k] for k in range(2)] for i in range(2)]
            if g[0][0] * g[1][1] - g[0][1] * g[1][0] == 0:
                continue
            big_j = adjoint_of(alg, g, L)
            if big_j.conjugate() == big_j.compose(s):
                return big_j
    raise NoSolution(
        f"no solution over configured base field {tower.describe()}: "
        "no scalar candidate satisfies the norm condition with an invertible g"
    )
