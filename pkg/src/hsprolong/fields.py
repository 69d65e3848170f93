"""Exact coefficient arithmetic in characteristic 0 or p.

A Scalar is either a normalized arbitrary-precision rational (characteristic
0) or a residue in [0, p) (characteristic p).  Binomial and multinomial
coefficients are always computed exactly over the integers and only then
reduced into the characteristic, so no divisibility subtleties arise mod p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

ScalarLike = Union["Scalar", int, Fraction]


def is_prime(n: int) -> bool:
    """Deterministic trial division; adequate for desk-scale characteristics."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """A rational function field k0(s_1..s_r) with n commuting Hasse derivations.

    Derivation i (0-based) is the standard iterative Hasse derivation with
    respect to parameter i; parameters beyond ``derivation_count`` are
    constants of every derivation.  A descriptor with ``derivation_count`` 0
    is trivial.
    """

    characteristic: int = 0
    parameter_names: tuple[str, ...] = ()
    derivation_count: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "parameter_names", tuple(self.parameter_names))
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {self.characteristic}")
        if len(set(self.parameter_names)) != len(self.parameter_names):
            raise ValueError("parameter names must be distinct")
        if not 0 <= self.derivation_count <= len(self.parameter_names):
            raise ValueError("derivation count must not exceed the parameter count")

    @property
    def param_count(self) -> int:
        return len(self.parameter_names)

    def param_index(self, name: str) -> int:
        try:
            return self.parameter_names.index(name)
        except ValueError:
            raise KeyError(f"unknown parameter {name!r}") from None

    def scalar(self, value: ScalarLike, den: int = 1) -> Scalar:
        if den != 1:
            return Scalar(Fraction(value, den), self.characteristic)
        return Scalar(value, self.characteristic)

    @property
    def zero(self) -> Scalar:
        return Scalar(0, self.characteristic)

    @property
    def one(self) -> Scalar:
        return Scalar(1, self.characteristic)


class Scalar:
    """An exact element of Q or F_p.

    Rationals are kept normalized by Fraction; prime-field values are kept
    reduced into [0, p).  Mixed arithmetic with int and Fraction promotes the
    plain operand into the same field.
    """

    __slots__ = ("value", "char")

    def __init__(self, value: ScalarLike, char: int = 0):
        if isinstance(value, Scalar):
            if value.char != char:
                raise ValueError("scalar characteristic mismatch")
            self.value = value.value
            self.char = char
            return
        if char == 0:
            self.value = value if isinstance(value, Fraction) else Fraction(value)
        else:
            if isinstance(value, Fraction):
                if value.denominator % char == 0:
                    raise ZeroDivisionError(f"denominator divisible by {char}")
                value = value.numerator * pow(value.denominator, char - 2, char)
            self.value = value % char
        self.char = char

    def _coerce(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, Scalar):
            if other.char != self.char:
                raise ValueError("scalar characteristic mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other, self.char)
        return NotImplemented

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.value + other.value, self.char)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.value, self.char)

    def __sub__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.value - other.value, self.char)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.value * other.value, self.char)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.value:
            raise ZeroDivisionError("scalar inverse of zero")
        if self.char == 0:
            return Scalar(1 / self.value, 0)
        return Scalar(pow(self.value, self.char - 2, self.char), self.char)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return self.inverse() * other

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        if self.char == 0:
            return Scalar(self.value**k, 0)
        return Scalar(pow(self.value, k, self.char), self.char)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar(other, self.char)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.char == other.char and self.value == other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def is_negative(self) -> bool:
        """Sign for rendering; prime-field residues count as non-negative."""
        return self.char == 0 and self.value < 0

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        if self.char == 0:
            return f"Scalar({self.value!r})"
        return f"Scalar({self.value} mod {self.char})"


def binom(n: int, k: int, field: FieldDescriptor) -> Scalar:
    """Binomial coefficient C(n, k) reduced into the field's characteristic.

    Out-of-range k yields 0, matching the empty-product convention used by
    iterative composition.
    """
    if k < 0 or k > n:
        return field.zero
    return field.scalar(math.comb(n, k))


def multinomial(parts: Sequence[int]) -> int:
    """k!/(a_1!...a_r!) for k = sum(parts), as an exact natural number."""
    if not parts:
        raise ValueError("multinomial requires a nonempty sequence")
    if any(a < 1 for a in parts):
        raise ValueError("multinomial parts must be positive")
    total = math.factorial(sum(parts))
    for a in parts:
        total //= math.factorial(a)
    return total


def comp_coeff(alpha: Sequence[int], beta: Sequence[int], field: FieldDescriptor) -> Scalar:
    """The coefficient in D_alpha o D_beta = comp_coeff * D_(alpha+beta).

    Product of per-coordinate binomials C(alpha_i + beta_i, alpha_i), computed
    exactly and then reduced.
    """
    if len(alpha) != len(beta):
        raise ValueError(f"multi-index length mismatch: {len(alpha)} vs {len(beta)}")
    acc = 1
    for a, b in zip(alpha, beta):
        acc *= math.comb(a + b, a)
    return field.scalar(acc)
