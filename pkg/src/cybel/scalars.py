"""Exact scalar tower.

Layers, bottom to top::

    F        = Q, or Q(w) with w a root of a monic integer quadratic
    F(t)     = rational functions in one variable (optional)
    L = K(s) = one quadratic layer, s^2 = u for a non-square u in the layer below

The Galois action of the top layer is ``s -> -s``; every lower layer is fixed.
All values are immutable and hashable, and an element that happens to be
rational hashes and compares equal to the corresponding :class:`Fraction`.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from math import isqrt
from typing import Any

__all__ = [
    "QQ",
    "QuadraticNumberField",
    "NumberFieldElement",
    "RationalFunctionField",
    "RationalFunction",
    "QuadraticExtension",
    "QuadraticElement",
    "Tower",
    "conjugate",
    "kummer_class",
    "squarefree_kernel",
    "to_rational",
    "fmt",
]


def _is_compound(text: str) -> bool:
    """True when ``text`` has a top-level + or - past its first character."""
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and pos > 0:
            return True
    return False


def fmt(x: Any) -> str:
    """Canonical string of any tower scalar (ints and Fractions included)."""
    return str(x)


def to_rational(x: Any) -> Fraction | None:
    """The rational value of ``x`` if it has one, else None."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _Element):
        return x.as_rational()
    return None


def _descend(x, rank: int):
    """Strip layers above ``rank`` from ``x`` when it lies in a lower layer."""
    while isinstance(x, _Element) and x._rank > rank:
        x = x._lower()
    return x


class _RationalField:
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x: Any) -> Fraction | None:
        x = _descend(x, 0)
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, _Element):
            return x.as_rational()
        return None

    def __repr__(self) -> str:
        return "QQ"

    def __reduce__(self):
        return "QQ"


QQ = _RationalField()


class _Element:
    """Operator plumbing shared by the tower element classes."""

    __slots__ = ()
    field: Any

    # subclasses implement _add, _mul, _neg, inverse, _key, as_rational
    def __add__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self._add(o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self._add(o._neg())

    def __rsub__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return o._add(self._neg())

    def __mul__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self._mul(o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self._mul(o.inverse())

    def __rtruediv__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return o._mul(self.inverse())

    def __neg__(self):
        return self._neg()

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.field.one
        while n:
            if n & 1:
                result = result._mul(base)
            base = base._mul(base)
            n >>= 1
        return result

    def __eq__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self):
        low = self._lower()
        if low is not None:
            return hash(low)
        return hash((type(self).__name__, self._key()))

    def __bool__(self):
        return self != 0

    def __repr__(self):
        return f"{type(self).__name__}({self})"


# ---------------------------------------------------------------------------
# Q(w)


class QuadraticNumberField:
    """Q(w) where w is a root of ``x^2 + b*x + c``."""

    def __init__(self, b: int, c: int, name: str = "i"):
        disc = b * b - 4 * c
        if disc >= 0 and isqrt(disc) ** 2 == disc:
            raise ValueError(f"x^2 + {b}x + {c} is reducible over Q")
        self.b = int(b)
        self.c = int(c)
        self.name = name

    @classmethod
    def gaussian(cls) -> QuadraticNumberField:
        return cls(0, 1, "i")

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticNumberField)
            and (self.b, self.c, self.name) == (other.b, other.c, other.name)
        )

    def __hash__(self):
        return hash(("QNF", self.b, self.c, self.name))

    def __repr__(self):
        return f"QuadraticNumberField({self.b}, {self.c}, {self.name!r})"

    def __call__(self, a0, a1=0) -> NumberFieldElement:
        return NumberFieldElement(self, Fraction(a0), Fraction(a1))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        return self(0, 1)

    def coerce(self, x):
        x = _descend(x, 1)
        if isinstance(x, NumberFieldElement):
            return x if x.field == self else None
        q = QQ.coerce(x)
        if q is None:
            return None
        return NumberFieldElement(self, q, Fraction(0))


class NumberFieldElement(_Element):
    __slots__ = ("field", "a0", "a1")
    _rank = 1

    def __init__(self, field: QuadraticNumberField, a0: Fraction, a1: Fraction):
        self.field = field
        self.a0 = a0
        self.a1 = a1

    def _key(self):
        return (self.a0, self.a1)

    def as_rational(self):
        return self.a0 if self.a1 == 0 else None

    def _lower(self):
        return self.as_rational()

    def _add(self, o):
        return NumberFieldElement(self.field, self.a0 + o.a0, self.a1 + o.a1)

    def _neg(self):
        return NumberFieldElement(self.field, -self.a0, -self.a1)

    def _mul(self, o):
        b, c = self.field.b, self.field.c
        p = self.a1 * o.a1
        return NumberFieldElement(
            self.field,
            self.a0 * o.a0 - c * p,
            self.a0 * o.a1 + self.a1 * o.a0 - b * p,
        )

    def field_conjugate(self) -> NumberFieldElement:
        """Image under w -> -b - w (not the tower's Galois action)."""
        return NumberFieldElement(self.field, self.a0 - self.field.b * self.a1, -self.a1)

    def norm(self) -> Fraction:
        return self._mul(self.field_conjugate()).a0

    def inverse(self):
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.field_conjugate()
        return NumberFieldElement(self.field, c.a0 / nrm, c.a1 / nrm)

    def __str__(self):
        name = self.field.name
        parts = []
        if self.a0 != 0:
            parts.append(str(self.a0))
        if self.a1 != 0:
            if self.a1 == 1:
                parts.append(name)
            elif self.a1 == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{self.a1}*{name}")
        return _join_terms(parts)


def _join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


# ---------------------------------------------------------------------------
# polynomials over F (coefficient tuples, lowest degree first)


def _ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p, q):
    n = max(len(p), len(q))
    return _ptrim(
        (p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)
    )


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return _ptrim(out)


def _pscale(p, c):
    return _ptrim(a * c for a in p)


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    lead_inv = 1 / q[-1]
    quot = [0] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and p:
        k = len(p) - len(q)
        c = p[-1] * lead_inv
        quot[k] = c
        for i, b in enumerate(q):
            p[i + k] = p[i + k] - c * b
        p = list(_ptrim(p))
    return _ptrim(quot), tuple(p)


def _pmonic(p):
    if not p:
        return p
    return _pscale(p, 1 / p[-1])


def _pgcd(p, q):
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pmonic(p)


def _pderiv(p):
    return _ptrim(k * p[k] for k in range(1, len(p)))


def _poly_str(coeffs, var: str) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        q = to_rational(c)
        if k == 0:
            parts.append(str(c))
            continue
        if q is not None:
            if q == 1:
                parts.append(mono)
            elif q == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{q}*{mono}")
        else:
            cs = str(c)
            parts.append(f"({cs})*{mono}" if _is_compound(cs) else f"{cs}*{mono}")
    return _join_terms(parts)


# ---------------------------------------------------------------------------
# F(t)


class RationalFunctionField:
    """F(t) over F = Q or a quadratic number field."""

    def __init__(self, base: Any = QQ, var: str = "t"):
        self.base = base
        self.var = var

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and self.base == other.base
            and self.var == other.var
        )

    def __hash__(self):
        return hash(("RFF", self.base if self.base is not QQ else "Q", self.var))

    def __repr__(self):
        return f"RationalFunctionField({self.base!r}, {self.var!r})"

    def _cf(self, x):
        c = self.base.coerce(x)
        if c is None:
            raise TypeError(f"{x!r} is not in {self.base!r}")
        return c

    def __call__(self, num, den=(1,)) -> RationalFunction:
        num = _ptrim(self._cf(c) for c in num)
        den = _ptrim(self._cf(c) for c in den)
        return RationalFunction._make(self, num, den)

    @property
    def zero(self):
        return RationalFunction(self, (), (self.base.one,))

    @property
    def one(self):
        return RationalFunction(self, (self.base.one,), (self.base.one,))

    @property
    def gen(self):
        return RationalFunction(self, (self.base.zero, self.base.one), (self.base.one,))

    def coerce(self, x):
        x = _descend(x, 2)
        if isinstance(x, RationalFunction):
            return x if x.field == self else None
        c = self.base.coerce(x)
        if c is None:
            return None
        return RationalFunction(self, _ptrim((c,)), (self.base.one,))


class RationalFunction(_Element):
    """Reduced fraction num/den with monic denominator."""

    __slots__ = ("field", "num", "den")
    _rank = 2

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, field, num, den):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(field, (), (field.base.one,))
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            inv = 1 / lead
            num = _pscale(num, inv)
            den = _pscale(den, inv)
        return cls(field, tuple(field._cf(c) for c in num), tuple(field._cf(c) for c in den))

    def _key(self):
        return (self.num, self.den)

    def as_rational(self):
        if len(self.den) == 1 and len(self.num) <= 1:
            return to_rational(self.num[0]) if self.num else Fraction(0)
        return None

    def _lower(self):
        if len(self.den) == 1 and len(self.num) <= 1:
            return self.num[0] if self.num else Fraction(0)
        return None

    def _add(self, o):
        if self.den == o.den:
            return RationalFunction._make(self.field, _padd(self.num, o.num), self.den)
        return RationalFunction._make(
            self.field,
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    def _neg(self):
        return RationalFunction(self.field, _pneg(self.num), self.den)

    def _mul(self, o):
        return RationalFunction._make(
            self.field, _pmul(self.num, o.num), _pmul(self.den, o.den)
        )

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction._make(self.field, self.den, self.num)

    @property
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def __str__(self):
        var = self.field.var
        ns = _poly_str(self.num, var)
        if len(self.den) == 1:
            return ns
        ds = _poly_str(self.den, var)
        if _is_compound(ns):
            ns = f"({ns})"
        if _is_compound(ds) or "*" in ds or "/" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"


# ---------------------------------------------------------------------------
# quadratic top layer


class QuadraticExtension:
    """base(s) with s^2 = radicand; Galois conjugation s -> -s."""

    def __init__(self, base: Any, radicand: Any, name: str = "j"):
        u = base.coerce(radicand)
        if u is None or u == 0:
            raise ValueError("radicand must be a nonzero element of the base layer")
        if _is_known_square(u, base):
            raise ValueError(f"radicand {u} is a square in the base layer")
        self.base = base
        self.radicand = u
        self.name = name

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticExtension)
            and self.base == other.base
            and self.radicand == other.radicand
            and self.name == other.name
        )

    def __hash__(self):
        return hash(("QE", self.radicand, self.name))

    def __repr__(self):
        return f"QuadraticExtension({self.base!r}, {self.radicand}, {self.name!r})"

    def __call__(self, a, b=0) -> QuadraticElement:
        a1 = self.base.coerce(a)
        b1 = self.base.coerce(b)
        if a1 is None or b1 is None:
            raise TypeError("coefficients must lie in the base layer")
        return QuadraticElement(self, a1, b1)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        return self(0, 1)

    def coerce(self, x):
        if isinstance(x, QuadraticElement):
            return x if x.field == self else None
        a = self.base.coerce(x)
        if a is None:
            return None
        return QuadraticElement(self, a, self.base.coerce(0))


class QuadraticElement(_Element):
    __slots__ = ("field", "a", "b")
    _rank = 3

    def __init__(self, field: QuadraticExtension, a, b):
        self.field = field
        self.a = a
        self.b = b

    def _key(self):
        return (self.a, self.b)

    def as_rational(self):
        if self.b != 0:
            return None
        return to_rational(self.a)

    def _lower(self):
        return self.a if self.b == 0 else None

    def _add(self, o):
        return QuadraticElement(self.field, self.a + o.a, self.b + o.b)

    def _neg(self):
        return QuadraticElement(self.field, -self.a, -self.b)

    def _mul(self, o):
        u = self.field.radicand
        return QuadraticElement(
            self.field,
            self.a * o.a + self.b * o.b * u,
            self.a * o.b + self.b * o.a,
        )

    def conjugate(self) -> QuadraticElement:
        return QuadraticElement(self.field, self.a, -self.b)

    def norm(self):
        """x * conj(x), an element of the base layer."""
        return self.a * self.a - self.b * self.b * self.field.radicand

    def inverse(self):
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticElement(self.field, self.a / nrm, -self.b / nrm)

    def in_base(self) -> bool:
        return self.b == 0

    def __str__(self):
        name = self.field.name
        parts = []
        if self.a != 0:
            parts.append(str(self.a))
        if self.b != 0:
            if self.b == 1:
                parts.append(name)
            elif self.b == -1:
                parts.append("-" + name)
            else:
                bs = str(self.b)
                parts.append(f"({bs})*{name}" if _is_compound(bs) else f"{bs}*{name}")
        return _join_terms(parts)


def conjugate(x: Any) -> Any:
    """The Galois conjugate of ``x``; elements below the top layer are fixed."""
    if isinstance(x, QuadraticElement):
        return x.conjugate()
    return x


# ---------------------------------------------------------------------------
# square classes


def squarefree_kernel(n: int) -> int:
    """Signed square-free part of a nonzero integer (trial division)."""
    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                out *= p
        p += 1 if p == 2 else 2
    return sign * out * n


def _squarefree_odd_part(f):
    """Product of the factors of odd multiplicity of a monic polynomial (Yun)."""
    if len(f) <= 1:
        return f
    a = _pgcd(f, _pderiv(f))
    b = _pdivmod(f, a)[0]
    c = _pdivmod(_pderiv(f), a)[0]
    d = _padd(c, _pneg(_pderiv(b)))
    out = (f[-1] / f[-1],)
    k = 1
    while len(b) > 1:
        g = _pgcd(b, d)
        if k % 2 == 1:
            out = _pmul(out, g)
        b = _pdivmod(b, g)[0]
        c = _pdivmod(d, g)[0]
        d = _padd(c, _pneg(_pderiv(b)))
        k += 1
    return out


def kummer_class(x: Any, base: Any = QQ) -> Any:
    """Canonical representative of ``x`` modulo squares of ``base``.

    Supported layers: Q (returns a square-free integer as a Fraction) and
    Q(t) (returns a square-free polynomial times a square-free integer).
    """
    if x == 0:
        raise ValueError("zero has no square class")
    if base is QQ:
        q = QQ.coerce(x)
        if q is None:
            raise ValueError(f"{x} does not lie in Q")
        return Fraction(squarefree_kernel(q.numerator * q.denominator))
    if isinstance(base, RationalFunctionField):
        if base.base is not QQ:
            raise NotImplementedError(
                "square classes are only implemented over Q and Q(t)"
            )
        f = base.coerce(x)
        if f is None:
            raise ValueError(f"{x} does not lie in {base!r}")
        prod = _pmul(f.num, f.den)
        lead = prod[-1]
        odd = _squarefree_odd_part(_pmonic(prod))
        const = squarefree_kernel(lead.numerator * lead.denominator)
        return RationalFunction._make(base, _pscale(odd, Fraction(const)), (Fraction(1),))
    raise NotImplementedError(f"square classes over {base!r} are not implemented")


def _is_known_square(u, base) -> bool:
    if base is QQ or isinstance(base, RationalFunctionField) and base.base is QQ:
        return kummer_class(u, base) == 1
    if isinstance(base, QuadraticNumberField):
        q = u.as_rational()
        # a rational is a square in Q(w) iff it is a square or disc times a square
        if q is not None:
            k = squarefree_kernel(q.numerator * q.denominator)
            return k == 1 or k == squarefree_kernel(base.b * base.b - 4 * base.c)
        return False
    if isinstance(base, RationalFunctionField):
        # F(t) with F a number field: only detect squares of constants and t
        return u.is_polynomial and len(u.num) == 1 and _is_known_square(u.num[0], base.base)
    return False


# ---------------------------------------------------------------------------
# tower assembly and literal parsing


class Tower:
    """A concrete tower F [subset] F(t)? [subset] top layer, with a literal parser.

    Build with :meth:`untwisted` (top layer ``sqrt(d)`` over F) or
    :meth:`twisted` (top layer ``j`` with ``j^2 = t`` over F(t)).
    """

    def __init__(
        self,
        number_field: QuadraticNumberField | None = None,
        rational_functions: bool = False,
        radicand: Any = None,
        top_name: str = "j",
        var: str = "t",
    ):
        self.number_field = number_field
        self.constants = number_field if number_field is not None else QQ
        self.function_field = (
            RationalFunctionField(self.constants, var) if rational_functions else None
        )
        self.base = self.function_field if rational_functions else self.constants
        self.top = None
        self.root = None
        if radicand is not None:
            u = self.base.coerce(radicand)
            if u is None:
                raise ValueError("radicand not in the base layer")
            q = to_rational(u)
            if q is not None and q > 0 and self.base is QQ and _rational_sqrt(q) is not None:
                # degenerate: the radicand is already a square
                self.root = _rational_sqrt(q)
            else:
                self.top = QuadraticExtension(self.base, u, top_name)
                self.root = self.top.gen
        self.field = self.top if self.top is not None else self.base
        self.top_name = top_name

    @classmethod
    def untwisted(cls, d: Any, number_field: QuadraticNumberField | None = None) -> Tower:
        return cls(number_field=number_field, radicand=Fraction(d), top_name="sqrt")

    @classmethod
    def twisted(cls, number_field: QuadraticNumberField | None = None) -> Tower:
        ff = RationalFunctionField(number_field if number_field is not None else QQ)
        return cls(number_field=number_field, rational_functions=True, radicand=ff.gen)

    @property
    def t(self):
        if self.function_field is None:
            raise AttributeError("tower has no rational-function layer")
        return self.function_field.gen

    @property
    def gen(self):
        """The top generator s with s^2 = u (a rational root if u is a square)."""
        return self.root

    def describe(self) -> str:
        parts = [self.constants.name if self.number_field is None else f"Q({self.number_field.name})"]
        if self.function_field is not None:
            parts.append(f"({self.function_field.var})")
        desc = "".join(parts)
        if self.top is not None:
            desc += f"({self.top_name}), {self.top_name}^2 = {self.top.radicand}"
        return desc

    def symbols(self) -> dict[str, Any]:
        table: dict[str, Any] = {}
        if self.number_field is not None:
            table[self.number_field.name] = self.number_field.gen
        if self.function_field is not None:
            table[self.function_field.var] = self.function_field.gen
        if self.root is not None:
            table[self.top_name] = self.root
            table["sqrt"] = self.root
        return table

    def element(self, x: Any) -> Any:
        """Coerce ``x`` into the top field (Fraction when the tower is just Q)."""
        c = self.field.coerce(x)
        if c is None:
            raise TypeError(f"{x!r} is not in {self.describe()}")
        return c

    def parse(self, text: str) -> Any:
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse scalar {text!r}") from exc
        return self.element(self._eval(tree.body, self.symbols(), text))

    def _eval(self, node, symbols, text):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
            return symbols[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand, symbols, text)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, symbols, text)
            if isinstance(node.op, ast.Pow):
                exp = self._eval(node.right, symbols, text)
                if not (isinstance(exp, Fraction) and exp.denominator == 1):
                    raise ValueError(f"exponent must be an integer in {text!r}")
                return left ** int(exp)
            right = self._eval(node.right, symbols, text)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise ValueError(f"unsupported syntax in scalar {text!r}")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None
