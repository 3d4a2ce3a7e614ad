"""
Exact coefficient arithmetic.

:class:`Poly` is a polynomial over the rationals in two commuting
indeterminates, the loop parameter ``x`` (delta) and the blob-loop parameter
``xp`` (delta prime). :class:`LaurentQ` is a Laurent polynomial in ``q``.

>>> x = Poly.x()
>>> (x - 1) * (x + 2)
Poly('x^2 + x - 2')
>>> chebyshev_d(3)
Poly('x^3 - 2*x')
>>> qbracket(3)
LaurentQ('q^2 + 1 + q^-2')
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Any

from .errors import DomainError

Scalar = int | Fraction


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class _Sparse:
    """Shared sparse-dictionary arithmetic; subclasses fix the exponent key type."""

    __slots__ = ("terms", "_hash")
    _zero_key: Any = None

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[k] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @staticmethod
    def _key_add(a, b):
        raise NotImplementedError

    @classmethod
    def const(cls, c):
        return cls({cls._zero_key: c})

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).const(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant(self) -> Fraction:
        return self.terms.get(self._zero_key, Fraction(0))

    def is_constant(self) -> bool:
        return all(k == self._zero_key for k in self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self._raw({})
            return self._raw({k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        key_add = self._key_add
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = key_add(k1, k2)
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return self._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self._raw({k: c / other for k, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = self.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


def _fmt_coeff_term(c: Fraction, mono: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not mono:
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    if first:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


class Poly(_Sparse):
    """
    Polynomial in ``x`` (delta) and ``xp`` (delta prime) with rational coefficients.

    Keys are exponent pairs ``(e_delta, e_deltap)``.
    """

    __slots__ = ()
    _zero_key = (0, 0)

    @staticmethod
    def _key_add(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @classmethod
    def x(cls) -> Poly:
        return cls({(1, 0): 1})

    delta = x

    @classmethod
    def xp(cls) -> Poly:
        return cls({(0, 1): 1})

    deltap = xp

    @classmethod
    def monomial(cls, e_delta: int = 0, e_deltap: int = 0, coeff: Scalar = 1) -> Poly:
        return cls({(e_delta, e_deltap): coeff})

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((a + b for a, b in self.terms), default=-1)

    def degree_in_delta(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def is_univariate(self) -> bool:
        return all(b == 0 for _, b in self.terms)

    def sorted_terms(self):
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            factors = []
            if a:
                factors.append("x" if a == 1 else f"x^{a}")
            if b:
                factors.append("xp" if b == 1 else f"xp^{b}")
            parts.append(_fmt_coeff_term(c, "*".join(factors), not parts))
        return "".join(parts)

    def evaluate(self, delta=0, deltap=0):
        """
        Substitute values for ``x`` and ``xp``.

        Values may be rationals or any ring elements (e.g. :class:`Poly` or
        :class:`LaurentQ`) supporting ``+``, ``*`` and ``**``.

        >>> p = Poly.parse("(x-1)^2*(x+2)")
        >>> p.evaluate(1), p.evaluate(-2), Poly.parse("x^2+x-4").evaluate(2)
        (Fraction(0, 1), Fraction(0, 1), Fraction(2, 1))
        """
        total = Fraction(0)
        pow_d: dict[int, Any] = {}
        pow_dp: dict[int, Any] = {}

        def power(cache, base, e):
            if e not in cache:
                cache[e] = base ** e if e else 1
            return cache[e]

        for (a, b), c in self.terms.items():
            total = total + c * power(pow_d, delta, a) * power(pow_dp, deltap, b)
        return total

    def substitute_deltap(self, value: Poly) -> Poly:
        """Replace ``xp`` by a polynomial, e.g. ``(1 + x)/2``."""
        return self.evaluate(Poly.x(), value) + Poly()

    def divmod_lex(self, other: Poly) -> tuple[Poly, Poly]:
        """Multivariate division by a single polynomial in lex order (``x`` > ``xp``)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_key = max(other.terms)
        lead_c = other.terms[lead_key]
        quot: dict = {}
        rem: dict = {}
        work = dict(self.terms)
        while work:
            k = max(work)
            c = work[k]
            if k[0] >= lead_key[0] and k[1] >= lead_key[1]:
                qk = (k[0] - lead_key[0], k[1] - lead_key[1])
                qc = c / lead_c
                quot[qk] = quot.get(qk, 0) + qc
                for ok, oc in other.terms.items():
                    kk = (ok[0] + qk[0], ok[1] + qk[1])
                    v = work.get(kk, 0) - qc * oc
                    if v:
                        work[kk] = v
                    else:
                        work.pop(kk, None)
            else:
                rem[k] = c
                del work[k]
        return Poly(quot), Poly(rem)

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod_lex(other)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def to_json(self) -> list[dict]:
        return [{"e_delta": a, "e_deltap": b, "num": c.numerator, "den": c.denominator}
                for (a, b), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> Poly:
        return cls({(t["e_delta"], t["e_deltap"]): Fraction(t["num"], t["den"]) for t in data})

    @classmethod
    def parse(cls, text: str) -> Poly:
        """
        Parse the display grammar (``+ - * ^``, parentheses, rationals ``a/b``).

        >>> Poly.parse("2*xp - x - 1") == 2 * Poly.xp() - Poly.x() - 1
        True
        """
        return _PolyParser(text).parse()


class _PolyParser:
    _TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(xp|x|delta_p|deltap|delta|d)|(\^|\*|\+|-|\(|\)))")
    _NAMES = {"x": (1, 0), "delta": (1, 0), "d": (1, 0), "xp": (0, 1), "deltap": (0, 1), "delta_p": (0, 1)}

    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            pos = m.end()
            if m.group(1):
                self.tokens.append(("num", Fraction(m.group(1))))
            elif m.group(2):
                self.tokens.append(("var", self._NAMES[m.group(2)]))
            else:
                self.tokens.append(("op", m.group(3)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ValueError("empty polynomial")
        out = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing tokens in polynomial: {self.tokens[self.i:]}")
        return out

    def expr(self) -> Poly:
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Poly:
        out = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> Poly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(val)
        if kind == "var":
            return Poly({val: 1})
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        raise ValueError(f"unexpected token {val!r}")


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__}
    return ops[op.lower()](b)


def poly_eval(a: Poly, at_delta, at_deltap=0) -> Fraction:
    return a.evaluate(Fraction(at_delta), Fraction(at_deltap))


class LaurentQ(_Sparse):
    """Laurent polynomial in ``q`` over the rationals; keys are integer exponents."""

    __slots__ = ()
    _zero_key = 0

    @staticmethod
    def _key_add(a, b):
        return a + b

    @classmethod
    def q(cls, power: int = 1) -> LaurentQ:
        return cls({power: 1})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "" if e == 0 else "q" if e == 1 else f"q^{e}"
            parts.append(_fmt_coeff_term(c, mono, not parts))
        return "".join(parts)

    def invert_q(self) -> LaurentQ:
        """Apply ``q -> q^-1``."""
        return self._raw({-e: c for e, c in self.terms.items()})

    def evaluate(self, q):
        """Numeric evaluation (float or Fraction ``q``)."""
        return sum(c * q ** e for e, c in self.terms.items()) if self.terms else 0


def chebyshev_d(n: int) -> Poly:
    """``d_0 = 1``, ``d_1 = x``, ``d_{n+2} = x d_{n+1} - d_n``."""
    if n < 0:
        raise DomainError("Chebyshev index must be non-negative")
    return _chebyshev(n)


@lru_cache(maxsize=None)
def _chebyshev(n: int) -> Poly:
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return Poly.x()
    return Poly.x() * _chebyshev(n - 1) - _chebyshev(n - 2)


def qbracket(n: int) -> LaurentQ:
    """Quantum integer ``[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)``."""
    if n < 0:
        raise DomainError("quantum integer index must be non-negative")
    return LaurentQ({n - 1 - 2 * k: 1 for k in range(n)})


def delta_of_q() -> LaurentQ:
    """The loop value ``[2] = q + q^-1``."""
    return qbracket(2)
