"""Admissible triples (G1, G2, tau): validation, enumeration, tau-strings.

Simple roots are 0-based here and 1-based in the text format
``G1=[1,2];G2=[2,3];tau=1->2,2->3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from .rootsys import RootSystem, is_isometry

DEFAULT_RANK_BOUND = 6


class TripleRejected(ValueError):
    """Raised by :func:`validate`; ``reason`` is a short machine-readable tag."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


class RankBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class AdmissibleTriple:
    gamma1: tuple[int, ...]
    gamma2: tuple[int, ...]
    tau: tuple[tuple[int, int], ...]
    escape: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def tau_map(self) -> dict[int, int]:
        return dict(self.tau)

    def is_empty(self) -> bool:
        return not self.gamma1

    def to_text(self) -> str:
        g1 = ",".join(str(i + 1) for i in self.gamma1)
        g2 = ",".join(str(i + 1) for i in self.gamma2)
        tau = ",".join(f"{a + 1}->{b + 1}" for a, b in self.tau)
        return f"G1=[{g1}];G2=[{g2}];tau={tau}"

    def to_json(self) -> dict:
        return {
            "G1": [i + 1 for i in self.gamma1],
            "G2": [i + 1 for i in self.gamma2],
            "tau": [[a + 1, b + 1] for a, b in self.tau],
        }

    def __str__(self) -> str:
        return self.to_text()


_TEXT = re.compile(r"^G1=\[([0-9,\s]*)\];G2=\[([0-9,\s]*)\];tau=(.*)$")


def _int_list(body: str) -> list[int]:
    body = body.strip()
    return [int(x) - 1 for x in body.split(",")] if body else []


def parse_triple(text: str) -> tuple[list[int], list[int], dict[int, int]]:
    """Raw (G1, G2, tau) from the text format, 0-based; no admissibility checks."""
    m = _TEXT.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"malformed triple {text!r}; expected G1=[..];G2=[..];tau=a->b,...")
    g1, g2 = _int_list(m.group(1)), _int_list(m.group(2))
    tau: dict[int, int] = {}
    if m.group(3):
        for part in m.group(3).split(","):
            try:
                a, b = part.split("->")
                a, b = int(a) - 1, int(b) - 1
            except ValueError:
                raise ValueError(f"malformed tau entry {part!r}") from None
            if a in tau:
                raise TripleRejected("not a bijection", f"tau defined twice at {a + 1}")
            tau[a] = b
    return g1, g2, tau


def from_json(obj: dict) -> tuple[list[int], list[int], dict[int, int]]:
    tau: dict[int, int] = {}
    for a, b in obj.get("tau", []):
        if a - 1 in tau:
            raise TripleRejected("not a bijection", f"tau defined twice at {a}")
        tau[a - 1] = b - 1
    return [i - 1 for i in obj.get("G1", [])], [i - 1 for i in obj.get("G2", [])], tau


def _escape_exponents(gamma1, tau) -> dict[int, int] | None:
    out = {}
    g1 = set(gamma1)
    for a in gamma1:
        cur, k = a, 0
        while cur in g1:
            cur = tau[cur]
            k += 1
            if k > len(g1):
                return None
        out[a] = k
    return out


def validate(rs: RootSystem, gamma1, gamma2, tau: dict[int, int]) -> AdmissibleTriple:
    n = rs.rank
    g1, g2 = list(gamma1), list(gamma2)
    for i in g1 + g2 + list(tau) + list(tau.values()):
        if not 0 <= i < n:
            raise ValueError(f"simple root index {i + 1} out of range for rank {n}")
    if (
        len(set(g1)) != len(g1)
        or len(set(g2)) != len(g2)
        or set(tau) != set(g1)
        or set(tau.values()) != set(g2)
        or len(set(tau.values())) != len(tau)
    ):
        raise TripleRejected("not a bijection", "tau must map G1 bijectively onto G2")
    if not is_isometry(rs, g1, g2, tau):
        raise TripleRejected("not isometry", "tau does not preserve the inner product")
    esc = _escape_exponents(g1, tau)
    if esc is None:
        raise TripleRejected("nilpotency fails", "some tau-orbit never leaves G1")
    g1s = tuple(sorted(g1))
    return AdmissibleTriple(
        gamma1=g1s,
        gamma2=tuple(sorted(g2)),
        tau=tuple((a, tau[a]) for a in g1s),
        escape=tuple(sorted(esc.items())),
    )


def triple_from_text(rs: RootSystem, text: str) -> AdmissibleTriple:
    return validate(rs, *parse_triple(text))


def empty_triple() -> AdmissibleTriple:
    return AdmissibleTriple((), (), ())


def enumerate_triples(rs: RootSystem, rank_bound: int = DEFAULT_RANK_BOUND) -> list[AdmissibleTriple]:
    """All admissible triples, ordered by (|G1|, G1, images)."""
    n = rs.rank
    if n > rank_bound:
        raise RankBoundExceeded(f"rank {n} exceeds the bound {rank_bound}")
    g = rs.gram
    out: list[AdmissibleTriple] = []
    for size in range(n + 1):
        for g1 in combinations(range(n), size):
            assign: dict[int, int] = {}

            def extend(pos: int) -> None:
                if pos == size:
                    out.append(validate(rs, g1, sorted(assign.values()), dict(assign)))
                    return
                a = g1[pos]
                used = set(assign.values())
                for b in range(n):
                    if b in used or b == a:
                        continue
                    if g[b][b] != g[a][a] or any(g[b][assign[c]] != g[a][c] for c in assign):
                        continue
                    # a cycle through a would break nilpotency
                    cur, cyc = b, False
                    while cur in assign or cur == a:
                        if cur == a:
                            cyc = True
                            break
                        cur = assign[cur]
                    if cyc:
                        continue
                    assign[a] = b
                    extend(pos + 1)
                    del assign[a]

            extend(0)
    return out


# ---------------------------------------------------------------------------
# tau-strings


def span_positive(rs: RootSystem, subset) -> list[tuple[int, ...]]:
    s = set(subset)
    return [r for r in rs.positive_roots if all(c == 0 or i in s for i, c in enumerate(r))]


def apply_tau(triple: AdmissibleTriple, root) -> tuple[int, ...]:
    tau = triple.tau_map
    img = [0] * len(root)
    for i, c in enumerate(root):
        if c:
            img[tau[i]] += c
    return tuple(img)


def tau_strings(triple: AdmissibleTriple, rs: RootSystem) -> dict[tuple, list[tuple]]:
    """For each a in Span(G1)^+ the iterates [tau(a), tau^2(a), ...] while defined."""
    g1 = set(triple.gamma1)
    out: dict[tuple, list[tuple]] = {}
    for alpha in span_positive(rs, g1):
        chain, cur = [], alpha
        while all(c == 0 or i in g1 for i, c in enumerate(cur)):
            cur = apply_tau(triple, cur)
            if not rs.is_root(cur) or any(c < 0 for c in cur):
                raise ValueError(f"tau-iterate {cur} of {alpha} is not a positive root")
            chain.append(cur)
        out[alpha] = chain
    return out


class TauLift:
    """theta_tau on root vectors of the G1-subalgebra: e_a -> sign * e_{tau(a)}."""

    def __init__(self, alg, triple: AdmissibleTriple):
        self.algebra = alg
        self.triple = triple
        self.signs = alg.transport_signs(triple.gamma1, triple.tau_map)

    def sign(self, alpha) -> int:
        return self.signs[tuple(alpha)][1]

    def power(self, alpha, k: int) -> tuple[tuple[int, ...], int]:
        """theta^k(e_alpha) = sign * e_{tau^k(alpha)}, returned as (root, sign)."""
        cur, sgn = tuple(alpha), 1
        for _ in range(k):
            img, s = self.signs[cur]
            cur, sgn = img, sgn * s
        return cur, sgn

    def as_map(self) -> dict[int, tuple[int, int]]:
        """Basis-index form {source: (target, sign)} on the G1-subalgebra basis."""
        alg = self.algebra
        out = {}
        for xi, (img, s) in self.signs.items():
            out[alg.e(xi)] = (alg.e(img), s)
            out[alg.f(xi)] = (alg.f(img), s)
        for a, b in self.triple.tau:
            out[alg.h(a)] = (alg.h(b), 1)
        return out

    def preserves_brackets(self) -> bool:
        alg = self.algebra
        m = self.as_map()
        for a in m:
            for b in m:
                lhs: dict = {}
                for g, c in alg.bracket_basis(a, b):
                    t, s = m[g]
                    lhs[t] = lhs.get(t, 0) + c * s
                ta, sa = m[a]
                tb, sb = m[b]
                rhs = {g: c * sa * sb for g, c in alg.bracket_basis(ta, tb)}
                if {k: v for k, v in lhs.items() if v} != rhs:
                    return False
        return True
