"""Belavin-Drinfeld r-matrices: the continuous parameter, assembly, verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import linalg
from .bdtriple import AdmissibleTriple, TauLift, empty_triple, tau_strings
from .chevalley import AlgebraAutomorphism, ChevalleyAlgebra, casimir
from .scalars import QQ
from .tensor import Tensor2, ad_action, cyb, swap


class VerificationError(RuntimeError):
    """An identity that must hold exactly did not."""

    def __init__(self, message: str, term=None):
        super().__init__(message if term is None else f"{message}; first nonzero term {term}")
        self.term = term


def omega_tensor(alg: ChevalleyAlgebra) -> Tensor2:
    return Tensor2(alg, casimir(alg)[0])


def omega0_tensor(alg: ChevalleyAlgebra) -> Tensor2:
    return Tensor2(alg, casimir(alg)[1])


def cartan_tensor(alg: ChevalleyAlgebra, mat) -> Tensor2:
    """sum_ij mat[i][j] h_i (x) h_j."""
    n = alg.n
    return Tensor2(alg, {(alg.h(i), alg.h(j)): mat[i][j] for i in range(n) for j in range(n)})


def _skew_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _skew_from(n: int, coords: Sequence[Any]) -> list[list[Any]]:
    m: list[list[Any]] = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in zip(_skew_pairs(n), coords):
        m[i][j] = c
        m[j][i] = -c
    return m


@dataclass
class ContinuousParameter:
    """r0 = sum R_ij h_i (x) h_j with R = particular + span(homogeneous)."""

    algebra: ChevalleyAlgebra
    triple: AdmissibleTriple
    particular: list[list[Fraction]]
    homogeneous: list[list[list[Fraction]]]

    @property
    def dimension(self) -> int:
        return len(self.homogeneous)

    def choose(self, coeffs: Sequence[Any] | None = None) -> list[list[Any]]:
        """particular + sum coeffs[k] * homogeneous[k] (coeffs default to zero)."""
        coeffs = list(coeffs or [])
        if len(coeffs) > self.dimension:
            raise ValueError(f"continuous parameter has dimension {self.dimension}, got {len(coeffs)} coefficients")
        n = self.algebra.n
        out = [row[:] for row in self.particular]
        for c, h in zip(coeffs, self.homogeneous):
            for i in range(n):
                for j in range(n):
                    out[i][j] = out[i][j] + c * h[i][j]
        return out

    def tensor(self, coeffs: Sequence[Any] | None = None) -> Tensor2:
        return cartan_tensor(self.algebra, self.choose(coeffs))


def _weight_vector(alg: ChevalleyAlgebra, a: int) -> list[int]:
    """(alpha_a(h_i))_i."""
    return [alg.rs.cartan[a][i] for i in range(alg.n)]


def r0_constraints(alg: ChevalleyAlgebra, triple: AdmissibleTriple, mat) -> list[list[Any]]:
    """(tau(a) (x) 1 + 1 (x) a)(r0) for each a in G1, as coordinate vectors on h."""
    n = alg.n
    out = []
    for a, b in triple.tau:
        va, vb = _weight_vector(alg, a), _weight_vector(alg, b)
        out.append([
            sum(mat[i][k] * vb[i] for i in range(n)) + sum(mat[k][j] * va[j] for j in range(n))
            for k in range(n)
        ])
    return out


def solve_r0(alg: ChevalleyAlgebra, triple: AdmissibleTriple) -> ContinuousParameter:
    n = alg.n
    ginv = alg.cartan_gram_inverse
    pairs = _skew_pairs(n)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    # R = ginv/2 + K with K skew; the constraint reads K(v_a - v_b) = -ginv (v_a + v_b) / 2
    for a, b in triple.tau:
        va, vb = _weight_vector(alg, a), _weight_vector(alg, b)
        diff = [x - y for x, y in zip(va, vb)]
        tot = [x + y for x, y in zip(va, vb)]
        for k in range(n):
            row = [Fraction(0)] * len(pairs)
            for p, (i, j) in enumerate(pairs):
                if i == k:
                    row[p] += diff[j]
                elif j == k:
                    row[p] -= diff[i]
            rows.append(row)
            rhs.append(-sum(ginv[k][m] * tot[m] for m in range(n)) / 2)
    half = [[ginv[i][j] / 2 for j in range(n)] for i in range(n)]
    if not pairs:
        if any(r != 0 for r in rhs):
            raise VerificationError("internal error: r0 system inconsistent for an admissible triple")
        return ContinuousParameter(alg, triple, half, [])
    if rows:
        try:
            coords = linalg.solve(rows, rhs)
        except linalg.InconsistentSystem as exc:
            raise VerificationError("internal error: r0 system inconsistent for an admissible triple") from exc
        null = linalg.nullspace(rows, len(pairs))
    else:
        coords = [Fraction(0)] * len(pairs)
        null = linalg.nullspace([], len(pairs))
    skew = _skew_from(n, coords)
    particular = [[half[i][j] + skew[i][j] for j in range(n)] for i in range(n)]
    return ContinuousParameter(alg, triple, particular, [_skew_from(n, v) for v in null])


def check_r0(alg: ChevalleyAlgebra, triple: AdmissibleTriple, mat) -> tuple[bool, bool]:
    """(r0 + r0^21 == Omega0, all tau-constraints vanish)."""
    r0 = cartan_tensor(alg, mat)
    sym = (r0 + swap(r0)) == omega0_tensor(alg)
    cons = all(all(x == 0 for x in row) for row in r0_constraints(alg, triple, mat))
    return sym, cons


# ---------------------------------------------------------------------------


@dataclass
class RMatrix:
    tensor: Tensor2
    tag: str  # "DJ", "BD" or "external"
    triple: AdmissibleTriple | None = None
    r0: list[list[Any]] | None = None
    cybe_zero: bool | None = None
    omega_symmetry: bool | None = None
    extra: dict = field(default_factory=dict)

    @property
    def algebra(self) -> ChevalleyAlgebra:
        return self.tensor.algebra

    def verify(self) -> RMatrix:
        self.cybe_zero, self.omega_symmetry, _ = verify_r(self.tensor)
        return self

    def report(self) -> dict:
        return {
            "triple": self.triple.to_text() if self.triple is not None else None,
            "r0": None if self.r0 is None else [[str(x) for x in row] for row in self.r0],
            "support_size": len(self.tensor),
            "cybe_zero": self.cybe_zero,
            "omega_symmetry": self.omega_symmetry,
        }


def verify_r(r: Tensor2):
    """(CYB(r) == 0, r + r^21 == Omega, CYB(r) itself)."""
    t = cyb(r)
    return t.is_zero(), (r + swap(r)) == omega_tensor(r.algebra), t


def has_base_coefficients(r: RMatrix | Tensor2, base: Any = QQ) -> bool:
    """Every coefficient of ``r`` lies in ``base`` (built r-matrices always do)."""
    t = r.tensor if isinstance(r, RMatrix) else r
    return all(base.coerce(c) is not None for c in t.terms.values())


def _root_part(alg: ChevalleyAlgebra) -> Tensor2:
    out: dict = {}
    for alpha in alg.rs.positive_roots:
        for j, c in alg.dual_negative(alpha).items():
            out[alg.e(alpha), j] = c
    return Tensor2(alg, out)


def bd_wedge_part(alg: ChevalleyAlgebra, triple: AdmissibleTriple) -> Tensor2:
    """sum over a in Span(G1)^+ and k >= 1 of e_a ^ theta^k(e_{-a})."""
    lift = TauLift(alg, triple)
    total = Tensor2(alg)
    for alpha, chain in tau_strings(triple, alg.rs).items():
        dual = alg.dual_negative(alpha)
        (fa, scale), = dual.items()
        for k in range(1, len(chain) + 1):
            img, sgn = lift.power(alpha, k)
            total = total + Tensor2.wedge(alg, {alg.e(alpha): 1}, {alg.f(img): sgn * scale})
    return total


def _finish(r: RMatrix) -> RMatrix:
    cz, om, t = verify_r(r.tensor)
    r.cybe_zero, r.omega_symmetry = cz, om
    if not cz:
        raise VerificationError("CYB(r) is not zero", t.first_term())
    if not om:
        raise VerificationError("r + r^21 differs from Omega", (r.tensor + swap(r.tensor) - omega_tensor(r.algebra)).first_term())
    return r


def build_dj(alg: ChevalleyAlgebra, verify: bool = True) -> RMatrix:
    half = [[x / 2 for x in row] for row in alg.cartan_gram_inverse]
    r = RMatrix(_root_part(alg) + cartan_tensor(alg, half), "DJ", empty_triple(), half)
    return _finish(r) if verify else r


def build_bd(
    alg: ChevalleyAlgebra,
    triple: AdmissibleTriple,
    r0: Sequence[Sequence[Any]] | Sequence[Any] | None = None,
    verify: bool = True,
) -> RMatrix:
    """r_BD for ``triple``.

    ``r0`` is either None (the canonical particular solution), a list of
    coefficients on the homogeneous basis, or an explicit n x n matrix.
    """
    param = solve_r0(alg, triple)
    if r0 is None or (len(r0) and not isinstance(r0[0], (list, tuple))) or not len(r0):
        mat = param.choose(r0)  # type: ignore[arg-type]
    else:
        mat = [list(row) for row in r0]
        sym, cons = check_r0(alg, triple, mat)
        if not (sym and cons):
            raise ValueError("supplied r0 does not satisfy the continuous-parameter equations")
    tensor = cartan_tensor(alg, mat) + _root_part(alg) + bd_wedge_part(alg, triple)
    r = RMatrix(tensor, "BD", triple, mat)
    return _finish(r) if verify else r


@dataclass(frozen=True)
class Equivalence:
    holds: bool
    gauge: bool

    def __bool__(self) -> bool:
        return self.holds


def verify_equivalence(r: RMatrix | Tensor2, r2: RMatrix | Tensor2, x: AlgebraAutomorphism, c=1) -> Equivalence:
    """Whether r2 == c * Ad_X(r); gauge when additionally c == 1."""
    t1 = r.tensor if isinstance(r, RMatrix) else r
    t2 = r2.tensor if isinstance(r2, RMatrix) else r2
    holds = (t2 - ad_action(x, t1).scale(c)).is_zero()
    return Equivalence(holds, holds and c == 1)
