"""Exact coefficient ring: integer combinations of monomials in opaque atoms.

Global multiplicities such as automorphic multiplicities m(Pi), archimedean
dimensions d_xi(Pi_oo) or the class-kernel scalar never get numeric values;
they are commuting positive symbols.  Equality of two combinations is
coefficient-wise equality of the monomial dictionaries, so every comparison
in the package is exact.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

# a monomial is a sorted tuple of (atom_name, power) with power >= 1
Monomial = tuple[tuple[str, int], ...]

_ONE_MONO: Monomial = ()


def _mul_mono(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers: dict[str, int] = {}
    for name, p in a:
        powers[name] = powers.get(name, 0) + p
    for name, p in b:
        powers[name] = powers.get(name, 0) + p
    return tuple(sorted(powers.items()))


class SymExpr:
    """Immutable Z-linear combination of atom monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        pruned = {m: c for m, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "_terms", dict(pruned))

    # -- constructors -------------------------------------------------

    @staticmethod
    def integer(n: int) -> "SymExpr":
        return SymExpr({_ONE_MONO: n}) if n else SymExpr()

    @staticmethod
    def atom(name: str, power: int = 1) -> "SymExpr":
        if power < 0:
            raise ValueError("atom powers must be nonnegative")
        if power == 0:
            return SymExpr.integer(1)
        return SymExpr({((name, power),): 1})

    # -- ring structure -----------------------------------------------

    @staticmethod
    def _coerce(x: Union["SymExpr", int]) -> "SymExpr":
        return x if isinstance(x, SymExpr) else SymExpr.integer(x)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return SymExpr(terms)

    __radd__ = __add__

    def __neg__(self):
        return SymExpr({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mul_mono(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return SymExpr(terms)

    __rmul__ = __mul__

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_integer(self) -> bool:
        return all(m == _ONE_MONO for m in self._terms)

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"not an integer: {self}")
        return self._terms.get(_ONE_MONO, 0)

    def atoms(self) -> set[str]:
        return {name for m in self._terms for name, _ in m}

    def items(self) -> Iterable[tuple[Monomial, int]]:
        return sorted(self._terms.items())

    # -- equality -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = SymExpr.integer(other)
        if not isinstance(other, SymExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items()):
            factors = [f"{name}^{p}" if p > 1 else name for name, p in m]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


ZERO = SymExpr()
ONE = SymExpr.integer(1)


def atom(name: str) -> SymExpr:
    return SymExpr.atom(name)


def integer(n: int) -> SymExpr:
    return SymExpr.integer(n)
