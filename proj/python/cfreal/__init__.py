"""Exact real numbers as lazily computed continued fractions."""

from fractions import Fraction
from numbers import Rational as _Rational

from . import _core
from ._core import (
    CfError,
    DivisionByZero,
    DomainError,
    IterationCapExceeded,
    ParseError,
    ValidityViolation,
)

__all__ = [
    "Real", "Approximation", "pi", "e", "exp", "log", "cos", "sin", "tan", "arcsin", "sqrt",
    "evaluate", "CfError", "DivisionByZero", "DomainError", "IterationCapExceeded",
    "ParseError", "ValidityViolation",
]


def _frac(text):
    return None if text in ("inf", "-inf") else Fraction(text)


class Approximation:
    """Terms and a rational enclosure that pins the value to within eps."""

    def __init__(self, raw):
        self.certified = raw["certified"]
        self.terms = raw["terms"]
        self.tail = tuple(_frac(t) for t in raw["tail"])
        self.enclosure = tuple(_frac(t) for t in raw["enclosure"])
        self.exact = raw["exact"]
        self.pulls = raw["pulls"]

    def __repr__(self):
        lo, hi = self.enclosure
        return f"Approximation(terms={self.terms}, enclosure=[{lo}, {hi}], exact={self.exact})"


class Real:
    """A real number given by its continued fraction stream.

    Build one from an int, a Fraction, a decimal string such as "0.1", or a
    calculator expression such as "sqrt(2) + pi".
    """

    __slots__ = ("_s",)

    def __init__(self, value):
        if isinstance(value, Real):
            self._s = value._s
        elif isinstance(value, _core.Stream):
            self._s = value
        elif isinstance(value, (int, _Rational)):
            q = Fraction(value)
            self._s = _core.rational(f"{q.numerator}/{q.denominator}")
        elif isinstance(value, str):
            self._s = _core.Evaluator().eval(value)
        else:
            raise TypeError(f"cannot make a Real from {type(value).__name__}")

    @classmethod
    def from_terms(cls, a0, rest=(), period=None):
        return cls(_core.from_terms(a0, list(rest), None if period is None else list(period)))

    @property
    def stream(self):
        return self._s

    def items(self, n):
        """The first n raw stream elements: terms, bounds and the end marker."""
        return self._s.items(n)

    def terms(self, count, cap=_core.DEFAULT_ITERATION_CAP):
        """The first `count` certified terms, fewer if the expansion ends."""
        return self._s.terms(count, cap)

    def approximate(self, eps, cap=_core.DEFAULT_ITERATION_CAP):
        q = Fraction(eps)
        return Approximation(self._s.approximate(f"{q.numerator}/{q.denominator}", cap))

    def decimal(self, digits, cap=_core.DEFAULT_ITERATION_CAP):
        """Truncated decimal; a trailing "~" marks a value sitting on a digit boundary."""
        return self._s.decimal(digits, cap)

    def __str__(self):
        return self.decimal(20)

    def __repr__(self):
        return f"Real({self.decimal(20)!r})"

    def _binary(self, other, op, swap=False):
        try:
            other = other if isinstance(other, Real) else Real(other)
        except TypeError:
            return NotImplemented
        a, b = (other, self) if swap else (self, other)
        return Real(op(a._s, b._s))

    def __add__(self, o): return self._binary(o, _core.add)
    def __radd__(self, o): return self._binary(o, _core.add, True)
    def __sub__(self, o): return self._binary(o, _core.sub)
    def __rsub__(self, o): return self._binary(o, _core.sub, True)
    def __mul__(self, o): return self._binary(o, _core.mul)
    def __rmul__(self, o): return self._binary(o, _core.mul, True)
    def __truediv__(self, o): return self._binary(o, _core.div)
    def __rtruediv__(self, o): return self._binary(o, _core.div, True)
    def __neg__(self): return Real(_core.sub(_core.rational("0"), self._s))
    def __pos__(self): return self


def _unary(f):
    def call(x, refine_cap=_core.DEFAULT_REFINE_CAP):
        return Real(f(Real(x)._s, refine_cap))
    call.__name__ = f.__name__
    return call


exp = _unary(_core.exp)
log = _unary(_core.log)
cos = _unary(_core.cos)
sin = _unary(_core.sin)
tan = _unary(_core.tan)
arcsin = _unary(_core.arcsin)
sqrt = _unary(_core.sqrt)


def pi():
    return Real(_core.pi())


def e():
    return Real(_core.e())


def evaluate(expression):
    """Parse and evaluate a calculator expression."""
    return Real(_core.Evaluator().eval(expression))
