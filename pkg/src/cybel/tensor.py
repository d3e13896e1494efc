"""Sparse tensors in g (x) g and g (x) g (x) g with exact coefficients.

The algebra is duck-typed: anything with ``dim``, ``table`` (the sparse bracket
table), ``bracket_basis``, ``weight`` and ``names`` works.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Any

import numpy as np

from . import kernels
from .scalars import fmt, to_rational


def _acc(out: dict, key, c) -> None:
    s = out.get(key, 0) + c
    if s == 0:
        out.pop(key, None)
    else:
        out[key] = s


class _SparseTensor:
    order = 0

    def __init__(self, algebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms: dict[tuple[int, ...], Any] = {}
        for k, c in (terms or {}).items():
            if c != 0:
                if len(k) != self.order or not all(0 <= i < algebra.dim for i in k):
                    raise ValueError(f"bad tensor index {k}")
                self.terms[tuple(k)] = c

    def _new(self, terms):
        return type(self)(self.algebra, terms)

    def _check(self, other):
        if type(other) is not type(self) or other.algebra is not self.algebra:
            raise ValueError("tensors live over different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({k: c * v for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, _SparseTensor):
            return NotImplemented
        return type(other) is type(self) and other.algebra is self.algebra and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def first_term(self):
        """Lexicographically first nonzero term, for diagnostics."""
        if not self.terms:
            return None
        k = min(self.terms)
        return tuple(self.algebra.names[i] for i in k), self.terms[k]

    def to_json(self) -> list[dict]:
        names = self.algebra.names
        return [{"legs": [names[i] for i in k], "coeff": fmt(c)} for k, c in self.items()]

    def __repr__(self):
        names = self.algebra.names
        body = " + ".join(f"({fmt(c)})*{'(x)'.join(names[i] for i in k)}" for k, c in self.items())
        return f"{type(self).__name__}({body or '0'})"


class Tensor2(_SparseTensor):
    order = 2

    @classmethod
    def from_vectors(cls, algebra, u: dict, v: dict, coeff=1) -> Tensor2:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                _acc(out, (a, b), coeff * ca * cb)
        return cls(algebra, out)

    @classmethod
    def wedge(cls, algebra, u: dict, v: dict) -> Tensor2:
        """u ^ v = u (x) v - v (x) u."""
        return cls.from_vectors(algebra, u, v) - cls.from_vectors(algebra, v, u)


class Tensor3(_SparseTensor):
    order = 3


def swap(r: Tensor2) -> Tensor2:
    return Tensor2(r.algebra, {(j, i): c for (i, j), c in r.terms.items()})


def _bracket(alg, a, b):
    return alg.bracket_basis(a, b)


def cyb_generic(r: Tensor2) -> Tensor3:
    """CYB(r) by direct sparse expansion over any coefficient field."""
    alg = r.algebra
    out: dict = {}
    terms = list(r.terms.items())
    for (i, j), x in terms:
        for (k, l), y in terms:
            w = x * y
            for g, c in _bracket(alg, i, k):
                _acc(out, (g, j, l), w * c)
            for g, c in _bracket(alg, j, k):
                _acc(out, (i, g, l), w * c)
            for g, c in _bracket(alg, j, l):
                _acc(out, (i, k, g), w * c)
    return Tensor3(alg, out)


def _rational_arrays(r: Tensor2):
    """Denominator-cleared int64 arrays for r, or None if not rational or too big."""
    coeffs = []
    for c in r.terms.values():
        q = to_rational(c)
        if q is None:
            return None
        coeffs.append(q)
    den = lcm(*(q.denominator for q in coeffs)) if coeffs else 1
    ints = [int(q * den) for q in coeffs]
    maxc = max((abs(c) for entries in r.algebra.table.values() for _, c in entries), default=1)
    if not kernels.fits_int64(sum(abs(v) for v in ints), maxc):
        return None
    keys = list(r.terms)
    ii = np.array([k[0] for k in keys], dtype=np.int64)
    jj = np.array([k[1] for k in keys], dtype=np.int64)
    vv = np.array(ints, dtype=np.int64)
    return ii, jj, vv, den


_CSR_CACHE: dict[int, tuple] = {}


def bracket_arrays(alg):
    key = id(alg)
    hit = _CSR_CACHE.get(key)
    if hit is None or hit[0] is not alg:
        hit = (alg, kernels.bracket_csr(alg.table, alg.dim))
        _CSR_CACHE[key] = hit
    return hit[1]


def cyb(r: Tensor2, backend: str | None = None) -> Tensor3:
    """CYB(r) = [r12, r13] + [r12, r23] + [r13, r23].

    Rational tensors go through the integer kernels; anything else (or an
    overflow risk) falls back to the exact sparse expansion.
    """
    if backend == "python":
        return cyb_generic(r)
    arrays = _rational_arrays(r)
    if arrays is None:
        return cyb_generic(r)
    ii, jj, vv, den = arrays
    alg = r.algebra
    ptr, idx, val = bracket_arrays(alg)
    fn = {"numpy": kernels.cyb_numpy, None: kernels.cyb}.get(backend)
    if fn is None and backend == "numba":
        fn = kernels.cyb_numba
    if fn is None:
        raise ValueError(f"unknown backend {backend!r}")
    dense = fn(ptr, idx, val, alg.dim, ii, jj, vv)
    nz = np.argwhere(dense != 0)
    scale = Fraction(1, den * den)
    return Tensor3(alg, {tuple(int(v) for v in k): Fraction(int(dense[tuple(k)])) * scale for k in nz})


def ad_action(phi, r: Tensor2) -> Tensor2:
    """(phi (x) phi)(r)."""
    if phi.algebra is not r.algebra:
        raise ValueError("automorphism and tensor live over different algebras")
    out: dict = {}
    cols = phi.columns
    for (i, j), c in r.terms.items():
        for a, x in cols[i]:
            for b, y in cols[j]:
                _acc(out, (a, b), c * x * y)
    return Tensor2(r.algebra, out)


def ad_action3(phi, t: Tensor3) -> Tensor3:
    if phi.algebra is not t.algebra:
        raise ValueError("automorphism and tensor live over different algebras")
    out: dict = {}
    cols = phi.columns
    for (i, j, k), c in t.terms.items():
        for a, x in cols[i]:
            for b, y in cols[j]:
                for g, z in cols[k]:
                    _acc(out, (a, b, g), c * x * y * z)
    return Tensor3(t.algebra, out)


def cobracket(r: Tensor2, a: dict) -> Tensor2:
    """delta_r(a) = [a (x) 1 + 1 (x) a, r]."""
    alg = r.algebra
    out: dict = {}
    for (i, j), c in r.terms.items():
        for k, ca in a.items():
            w = c * ca
            for g, s in alg.bracket_basis(k, i):
                _acc(out, (g, j), w * s)
            for g, s in alg.bracket_basis(k, j):
                _acc(out, (i, g), w * s)
    return Tensor2(alg, out)


def torus_character_of_term(algebra, term: tuple[int, int]) -> tuple[int, ...]:
    """Character by which the torus scales x_i (x) x_j: wt(x_i) + wt(x_j)."""
    i, j = term
    return tuple(a + b for a, b in zip(algebra.weight(i), algebra.weight(j)))
