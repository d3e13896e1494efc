"""Independent reference computations used by the tests.

None of these reuse the production algorithms they check: Weyl groups are
enumerated by closure, triples by brute force over all subset pairs and
bijections, type-A brackets through explicit matrices, elementary divisors
through determinantal divisors.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import gcd, lcm

import numpy as np

CLASSICAL_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def reflection_matrices(cartan):
    n = len(cartan)
    mats = []
    for i in range(n):
        m = np.eye(n, dtype=np.int64)
        for j in range(n):
            m[i, j] -= cartan[j][i]
        mats.append(m)
    return mats


def weyl_group(cartan, limit=100000):
    """All Weyl group elements as integer matrices, by closure under reflections."""
    n = len(cartan)
    gens = reflection_matrices(cartan)
    start = np.eye(n, dtype=np.int64)
    seen = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                x = s @ w
                key = x.tobytes()
                if key not in seen:
                    seen[key] = x
                    nxt.append(x)
        frontier = nxt
        if len(seen) > limit:
            raise RuntimeError("Weyl group too large for enumeration")
    return list(seen.values())


def longest_by_enumeration(cartan, positive_roots):
    """The unique w with w(Delta+) = -Delta+."""
    pos = np.array(positive_roots, dtype=np.int64).T
    hits = [w for w in weyl_group(cartan) if np.all((w @ pos) <= 0)]
    assert len(hits) == 1
    return hits[0]


def longest_by_orbit(cartan, positive_roots):
    """w0 via the orbit of the sum of positive roots (for larger groups)."""
    n = len(cartan)
    gens = reflection_matrices(cartan)
    v = np.array(positive_roots, dtype=np.int64).sum(axis=0)
    w = np.eye(n, dtype=np.int64)
    # descend until v is antidominant
    changed = True
    while changed:
        changed = False
        for i, s in enumerate(gens):
            pairing = sum(int(v[j]) * cartan[j][i] for j in range(n))
            if pairing > 0:
                v = s @ v
                w = s @ w
                changed = True
                break
    return w


def gram_from_cartan(cartan):
    """(a_i, a_j) up to a global scale, via symmetrizing the Cartan matrix."""
    n = len(cartan)
    d = [None] * n
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if d[i] is not None and d[j] is None and cartan[i][j]:
                    d[j] = d[i] * cartan[j][i] / cartan[i][j]
                    changed = True
    return [[d[j] * cartan[i][j] for j in range(n)] for i in range(n)]


def brute_force_triples(cartan):
    """Set of (G1, G2, tau-pairs) for all admissible triples, 0-based."""
    n = len(cartan)
    g = gram_from_cartan(cartan)
    out = set()
    for k in range(n + 1):
        for g1 in combinations(range(n), k):
            for g2 in combinations(range(n), k):
                for img in permutations(g2):
                    tau = dict(zip(g1, img))
                    if any(g[tau[a]][tau[b]] != g[a][b] for a in g1 for b in g1):
                        continue
                    ok = True
                    for a in g1:
                        cur = a
                        for _ in range(n + 1):
                            if cur not in tau:
                                break
                            cur = tau[cur]
                        else:
                            ok = False
                        if cur in tau:
                            ok = False
                    if ok:
                        out.add((g1, tuple(sorted(g2)), tuple(sorted(tau.items()))))
    return out


def determinantal_divisors(m):
    """Elementary divisors from gcds of k x k minors (exact, small matrices only)."""
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, _det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def _det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _det([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(n))


# ---------------------------------------------------------------------------
# type A through explicit matrices


def sl_matrices(alg):
    """Matrices for the Chevalley basis of sl_{n+1}, built from generators.

    Simple generators are elementary matrices; every other root vector is the
    commutator prescribed by one bracket word, so the production structure
    constants only enter through the word's normalization.
    """
    n = alg.n
    N = n + 1
    mats = [None] * alg.dim

    def unit(i, j):
        m = np.zeros((N, N), dtype=object)
        m[:, :] = Fraction(0)
        m[i, j] = Fraction(1)
        return m

    rs = alg.rs
    for k, root in enumerate(rs.positive_roots):
        nz = [i for i, c in enumerate(root) if c]
        lo, hi = nz[0], nz[-1]
        # e_alpha for alpha = a_lo + ... + a_hi; fix it via a bracket word
        if lo == hi:
            mats[alg.e(root)] = unit(lo, lo + 1)
            mats[alg.f(root)] = unit(lo + 1, lo)
        else:
            simple = tuple(1 if i == lo else 0 for i in range(n))
            beta = tuple(c - s for c, s in zip(root, simple))
            nconst = alg.structure_constant(simple, beta)
            a, b = mats[alg.e(simple)], mats[alg.e(beta)]
            mats[alg.e(root)] = (a.dot(b) - b.dot(a)) / nconst
            fa, fb = mats[alg.f(simple)], mats[alg.f(beta)]
            nneg = alg.structure_constant(tuple(-x for x in simple), tuple(-x for x in beta))
            mats[alg.f(root)] = (fa.dot(fb) - fb.dot(fa)) / nneg
    for i in range(n):
        mats[alg.h(i)] = unit(i, i) - unit(i + 1, i + 1)
    return mats


def sl_bracket_defect(alg):
    """First basis pair where bracket and commutator disagree, else None."""
    mats = sl_matrices(alg)
    for a in range(alg.dim):
        for b in range(alg.dim):
            lhs = mats[a].dot(mats[b]) - mats[b].dot(mats[a])
            rhs = sum((c * mats[g] for g, c in alg.bracket_basis(a, b)), np.zeros_like(lhs) + Fraction(0))
            if not np.all(lhs == rhs):
                return a, b
    return None


def _kron3(a, b, c):
    return np.kron(np.kron(a, b), c)


def sl_cyb(alg, terms):
    """CYB of r = sum c x_i (x) x_j computed in End(V (x) V (x) V) for sl_{n+1}."""
    # the sl basis matrices are integral; clear coefficient denominators so the
    # products run in int64 (the result is zero iff the rational one is)
    mats = [np.array(m, dtype=np.int64) for m in sl_matrices(alg)]
    assert all(np.all(a == b) for a, b in zip(mats, sl_matrices(alg)))
    den = lcm(*(Fraction(c).denominator for c in terms.values()))
    ints = {k: int(Fraction(c) * den) for k, c in terms.items()}
    N = alg.n + 1
    ident = np.identity(N, dtype=np.int64)
    r12 = sum(c * _kron3(mats[i], mats[j], ident) for (i, j), c in ints.items())
    r13 = sum(c * _kron3(mats[i], ident, mats[j]) for (i, j), c in ints.items())
    r23 = sum(c * _kron3(ident, mats[i], mats[j]) for (i, j), c in ints.items())

    def comm(x, y):
        return x.dot(y) - y.dot(x)

    return comm(r12, r13) + comm(r12, r23) + comm(r13, r23)


def invariant_tensors(alg):
    """Basis of {T in g (x) g : [x (x) 1 + 1 (x) x, T] = 0 for all basis x} by nullspace."""
    import sympy

    dim = alg.dim
    rows = []
    for x in range(dim):
        # coefficient of output (g, j) / (i, g) in terms of unknown T_{ij}
        eqs = {}
        for i in range(dim):
            for j in range(dim):
                var = i * dim + j
                for g, c in alg.bracket_basis(x, i):
                    eqs.setdefault((g, j), {})
                    eqs[g, j][var] = eqs[g, j].get(var, 0) + c
                for g, c in alg.bracket_basis(x, j):
                    eqs.setdefault((i, g), {})
                    eqs[i, g][var] = eqs[i, g].get(var, 0) + c
        for eq in eqs.values():
            row = [0] * (dim * dim)
            for v, c in eq.items():
                row[v] = c
            rows.append(row)
    ns = sympy.Matrix(rows).nullspace()
    return [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v] for v in ns]
