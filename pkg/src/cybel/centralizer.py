"""The centralizer of an r-matrix inside a maximal torus, via Smith normal form.

A torus is described by a character lattice Z^N together with the images of the
simple roots (and coroots) in it.  The centralizer of a BD r-matrix is cut out
by the characters of its supported mixed terms; the Smith form of that
constraint matrix splits it as a torus times finite groups mu_m.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import linalg
from .rootsys import RootSystem
from .tensor import Tensor2, torus_character_of_term

MODEL_NAMES = ("adjoint", "simply-connected", "gl", "sl-standard", "so-odd", "so-even", "sp")

_CLASSICAL = {"gl": "A", "sl-standard": "A", "so-odd": "B", "so-even": "D", "sp": "C"}


@dataclass(frozen=True)
class TorusLatticeModel:
    name: str
    roots: tuple[tuple[int, ...], ...]  # alpha_i in Z^N, one row per simple root
    coroots: tuple[tuple[int, ...], ...] | None = None  # alpha_i^vee in the dual lattice

    @property
    def lattice_rank(self) -> int:
        return len(self.roots[0]) if self.roots else 0

    @property
    def rank(self) -> int:
        return len(self.roots)

    def to_model(self, root_coords) -> tuple[int, ...]:
        """A weight given in simple-root coordinates, rewritten in Z^N."""
        out = [0] * self.lattice_rank
        for c, row in zip(root_coords, self.roots):
            if c:
                for k, x in enumerate(row):
                    out[k] += c * x
        return tuple(out)

    def cartan_check(self, rs: RootSystem) -> bool:
        """roots . coroots^T reproduces the Cartan matrix."""
        if self.coroots is None:
            return True
        n = rs.rank
        return all(
            sum(a * b for a, b in zip(self.roots[i], self.coroots[j])) == rs.cartan[i][j]
            for i in range(n)
            for j in range(n)
        )

    def to_json(self) -> dict:
        out = {"name": self.name, "roots": [list(r) for r in self.roots]}
        if self.coroots is not None:
            out["coroots"] = [list(r) for r in self.coroots]
        return out


def _unit(n: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * n
    v[i] = scale
    return v


def _chain(n: int, width: int) -> list[list[int]]:
    rows = []
    for i in range(n - 1):
        v = [0] * width
        v[i], v[i + 1] = 1, -1
        rows.append(v)
    return rows


def applicable_models(rs: RootSystem) -> list[str]:
    return [m for m in MODEL_NAMES if _CLASSICAL.get(m, rs.kind) == rs.kind]


def lattice_model(name: str, rs: RootSystem) -> TorusLatticeModel:
    n, kind = rs.rank, rs.kind
    need = _CLASSICAL.get(name)
    if name not in MODEL_NAMES:
        raise ValueError(f"unknown lattice model {name!r}; choose from {', '.join(MODEL_NAMES)}")
    if need is not None and need != kind:
        raise ValueError(f"lattice model {name!r} applies to type {need} only, not {rs.label}")
    a = [list(r) for r in rs.cartan]
    if name == "adjoint":
        roots = [_unit(n, i) for i in range(n)]
        coroots = [[a[i][j] for i in range(n)] for j in range(n)]
    elif name == "simply-connected":
        roots = a
        coroots = [_unit(n, i) for i in range(n)]
    elif name == "gl":
        roots = coroots = _chain(n + 1, n + 1)
    elif name == "sl-standard":
        roots = _chain(n, n) + [[1] * (n - 1) + [2]]
        coroots = _chain(n, n) + [_unit(n, n - 1)]
    elif name == "so-odd":
        roots = _chain(n, n) + [_unit(n, n - 1)]
        coroots = _chain(n, n) + [_unit(n, n - 1, 2)]
    elif name == "sp":
        roots = _chain(n, n) + [_unit(n, n - 1, 2)]
        coroots = _chain(n, n) + [_unit(n, n - 1)]
    else:  # so-even
        last = [0] * n
        last[n - 2] = last[n - 1] = 1
        roots = coroots = _chain(n, n) + [last]
    return TorusLatticeModel(name, tuple(map(tuple, roots)), tuple(map(tuple, coroots)))


def model_from_json(obj: dict | str | Path, rs: RootSystem | None = None) -> TorusLatticeModel:
    """A user-defined model: {"name": ..., "roots": [[...], ...], "coroots": optional}."""
    if not isinstance(obj, dict):
        obj = json.loads(Path(obj).read_text())
    roots = tuple(tuple(int(x) for x in r) for r in obj["roots"])
    coroots = obj.get("coroots")
    model = TorusLatticeModel(
        str(obj.get("name", "custom")),
        roots,
        None if coroots is None else tuple(tuple(int(x) for x in r) for r in coroots),
    )
    if len({len(r) for r in roots}) > 1:
        raise ValueError("all root rows must have the same length")
    if rs is not None:
        if model.rank != rs.rank:
            raise ValueError(f"model has {model.rank} roots, root system has rank {rs.rank}")
        if not model.cartan_check(rs):
            raise ValueError("model roots and coroots do not reproduce the Cartan matrix")
    return model


# ---------------------------------------------------------------------------


def constraint_lattice(r, model: TorusLatticeModel, rs: RootSystem | None = None) -> list[tuple[int, ...]]:
    """Distinct nonzero term characters of ``r`` in model coordinates, sorted."""
    tensor: Tensor2 = getattr(r, "tensor", r)
    alg = tensor.algebra
    if model.rank != alg.n:
        raise ValueError(f"lattice model rank {model.rank} does not match algebra rank {alg.n}")
    rows = set()
    for term in tensor.terms:
        ch = torus_character_of_term(alg, term)
        if any(ch):
            rows.add(model.to_model(ch))
    return sorted(rows)


@dataclass(frozen=True)
class DiagGroupDecomposition:
    lattice_rank: int
    torus_rank: int
    divisors: tuple[int, ...]
    diagonal: tuple[int, ...]
    # rows of V^-1 matching each divisor: the characters projecting onto mu_m
    characters: tuple[tuple[int, ...], ...]
    smith: tuple  # (D, U, V) with U M V = D

    def render(self) -> str:
        parts = ["T" if self.torus_rank else "1"] + [f"mu_{m}" for m in self.divisors]
        return " x ".join(parts)

    def to_json(self) -> dict:
        return {
            "lattice_rank": self.lattice_rank,
            "torus_rank": self.torus_rank,
            "divisors": list(self.divisors),
            "characters": [list(c) for c in self.characters],
            "group": self.render(),
        }


def decompose(m, lattice_rank: int) -> DiagGroupDecomposition:
    rows = [list(r) for r in m]
    if not rows:
        ident = linalg.identity(lattice_rank)
        return DiagGroupDecomposition(lattice_rank, lattice_rank, (), (), (), ([], [], ident))
    d, u, v = linalg.smith_normal_form(rows, lattice_rank)
    diag = tuple(d[i][i] for i in range(min(len(rows), lattice_rank)))
    rank = sum(1 for x in diag if x != 0)
    vinv = [[int(x) for x in row] for row in linalg.inverse(v)]
    divisors, chars = [], []
    for k, x in enumerate(diag):
        if x > 1:
            divisors.append(x)
            chars.append(tuple(vinv[k]))
    return DiagGroupDecomposition(
        lattice_rank, lattice_rank - rank, tuple(divisors), diag, tuple(chars), (d, u, v)
    )


def smith_certificate_ok(m, dec: DiagGroupDecomposition) -> bool:
    """U M V == D, U and V unimodular, D diagonal with a divisibility chain."""
    if not m:
        return dec.torus_rank == dec.lattice_rank and not dec.divisors
    d, u, v = dec.smith
    if linalg.matmul(linalg.matmul(u, [list(r) for r in m]), v) != d:
        return False
    if abs(linalg.int_det(u)) != 1 or abs(linalg.int_det(v)) != 1:
        return False
    if any(d[i][j] for i in range(len(d)) for j in range(len(d[0])) if i != j):
        return False
    nz = [x for x in dec.diagonal if x]
    return all(b % a == 0 for a, b in zip(nz, nz[1:])) and all(x >= 0 for x in dec.diagonal)


@dataclass(frozen=True)
class H1Description:
    factors: tuple[str, ...]
    verdict: str  # "trivial" | "nontrivial" | "injects"
    divisors: tuple[int, ...]

    def to_json(self) -> dict:
        return {"h1": list(self.factors), "verdict": self.verdict}


def h1_describe(dec: DiagGroupDecomposition, cd1: bool = False) -> H1Description:
    """H^1 of the centralizer as a product of K^x/(K^x)^m.

    Trivial when there are no finite factors.  Otherwise the BD cohomology is
    only known to inject into it, unless the base field has cohomological
    dimension 1 (``cd1``), where the two coincide.
    """
    divs = tuple(m for m in dec.divisors if m > 1)
    factors = tuple(f"Kx/(Kx)^{m}" for m in divs)
    if not divs:
        verdict = "trivial"
    elif cd1:
        verdict = "nontrivial"
    else:
        verdict = "injects"
    return H1Description(factors, verdict, divs)


def centralizer_report(r, model: TorusLatticeModel, cd1: bool = False) -> dict:
    rows = constraint_lattice(r, model)
    dec = decompose(rows, model.lattice_rank)
    h1 = h1_describe(dec, cd1)
    out = {"model": model.name, "constraints": [list(x) for x in rows]}
    out.update(dec.to_json())
    out.update(h1.to_json())
    return out
