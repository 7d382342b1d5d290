"""Exact sparse multivariate polynomials over the rationals.

A polynomial carries an ordered tuple of variable names and a sparse term map

    terms: dict[Exponent, Fraction]        Exponent = tuple[int, ...]

with one integer per variable and no zero coefficients stored.  All
coefficients are `fractions.Fraction` (exact, arbitrary precision), so
identity testing is reliable and every operation is exact.  Values are
immutable by convention after construction; all operations are pure and
return new objects, which makes them safe to share across threads.

Ideals are plain generator lists over a shared ambient.  The "order" of a
polynomial at the origin is the minimal total degree of a term; the order of
the zero polynomial is +infinity (math.inf) and the order of a unit (nonzero
constant term) is 0.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import AmbientMismatchError, ResourceLimitError, degree_cap

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

INFINITY = math.inf


def _grlex_key(exp: Exponent):
    # graded lexicographic: total degree first, then lex on the exponents
    return (sum(exp), exp)


def _display_key(exp: Exponent):
    # ascending total degree, ties broken with earlier variables first
    return (sum(exp), tuple(-e for e in exp))


class Polynomial:
    """A sparse polynomial over Q with named variables."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponent, Scalar]):
        vs = tuple(variables)
        n = len(vs)
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in terms.items():
            c = Fraction(coeff)
            if c == 0:
                continue
            e = tuple(exp)
            if len(e) != n:
                raise AmbientMismatchError(
                    f"exponent arity {len(e)} does not match {n} variables"
                )
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            clean[e] = c
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, value: Scalar, variables: Iterable[str]) -> "Polynomial":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): Fraction(value)})

    @classmethod
    def variable(cls, name: str, variables: Iterable[str]) -> "Polynomial":
        vs = tuple(variables)
        i = vs.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(vs)))
        return cls(vs, {exp: Fraction(1)})

    @classmethod
    def monomial(
        cls, exp: Exponent, variables: Iterable[str], coeff: Scalar = 1
    ) -> "Polynomial":
        return cls(variables, {tuple(exp): Fraction(coeff)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> Fraction:
        n = len(self.variables)
        return self.terms.get((0,) * n, Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -INFINITY
        return max(sum(e) for e in self.terms)

    def order(self):
        """Minimal total degree of a term; +inf for the zero polynomial."""
        if not self.terms:
            return INFINITY
        return min(sum(e) for e in self.terms)

    def linear_part(self) -> dict[str, Fraction]:
        """Coefficients of the degree-1 terms, keyed by variable name."""
        out: dict[str, Fraction] = {}
        for exp, c in self.terms.items():
            if sum(exp) == 1:
                out[self.variables[exp.index(1)]] = c
        return out

    def support(self) -> set[str]:
        """Variables that actually occur."""
        occ: set[str] = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    occ.add(self.variables[i])
        return occ

    def nonlinear_support(self) -> set[str]:
        """Variables occurring in some term of total degree >= 2."""
        occ: set[str] = set()
        for exp in self.terms:
            if sum(exp) >= 2:
                for i, e in enumerate(exp):
                    if e:
                        occ.add(self.variables[i])
        return occ

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=0)

    def min_power_of(self, name: str) -> int:
        """Largest k with name^k dividing every term (0 for the zero poly)."""
        if not self.terms:
            return 0
        i = self.variables.index(name)
        return min(e[i] for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check_ambient(self, other: "Polynomial") -> None:
        if self.variables != other.variables:
            raise AmbientMismatchError(
                f"ambients differ: {self.variables} vs {other.variables}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ambient(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, Fraction(0)) + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return Polynomial(self.variables, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_ambient(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.variables)
        cap = degree_cap()
        if self.total_degree() + other.total_degree() > cap:
            raise ResourceLimitError(
                f"product degree {self.total_degree() + other.total_degree()} "
                f"exceeds cap {cap}"
            )
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return Polynomial(self.variables, terms)

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.variables)
        return Polynomial(self.variables, {e: k * c for e, k in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.variables, tuple(sorted(self.terms.items()))))
            object.__setattr__(self, "_hash", h)
        return h

    # -- substitution and derivatives --------------------------------------

    def substitute(
        self, images: Mapping[str, "Polynomial"], variables: Iterable[str] | None = None
    ) -> "Polynomial":
        """Compose with a variable substitution.

        `images` maps variable names to polynomials in the target ambient;
        variables missing from the map are sent to themselves (which requires
        the target ambient to contain them).  All images must share one
        ambient.
        """
        if variables is not None:
            target = tuple(variables)
        elif images:
            target = next(iter(images.values())).variables
        else:
            target = self.variables
        imap: list[Polynomial] = []
        for v in self.variables:
            img = images.get(v)
            if img is None:
                img = Polynomial.variable(v, target)
            elif img.variables != target:
                raise AmbientMismatchError("substitution images have mixed ambients")
            imap.append(img)
        # cache powers of each image as needed
        powers: list[dict[int, Polynomial]] = [dict() for _ in imap]
        result = Polynomial.zero(target)
        one = Polynomial.constant(1, target)
        for exp, coeff in self.terms.items():
            term = one.scale(coeff)
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    cache[e] = imap[i] ** e
                term = term * cache[e]
            result = result + term
        return result

    def restrict(self, name: str) -> "Polynomial":
        """Set one variable to zero (the ambient is kept unchanged)."""
        i = self.variables.index(name)
        terms = {e: c for e, c in self.terms.items() if e[i] == 0}
        return Polynomial(self.variables, terms)

    def translate(self, point: Mapping[str, Scalar]) -> "Polynomial":
        """Shift coordinates so that `point` becomes the origin."""
        images = {}
        for v, val in point.items():
            val = Fraction(val)
            if val != 0:
                images[v] = Polynomial.variable(v, self.variables) + Polynomial.constant(
                    val, self.variables
                )
        if not images:
            return self
        return self.substitute(images, self.variables)

    def derivative(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        terms: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            e = list(exp)
            k = e[i]
            e[i] = k - 1
            e = tuple(e)
            s = terms.get(e, Fraction(0)) + c * k
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Polynomial(self.variables, terms)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        vals = [Fraction(point.get(v, 0)) for v in self.variables]
        total = Fraction(0)
        for exp, c in self.terms.items():
            t = c
            for val, e in zip(vals, exp):
                if e:
                    t *= val**e
            total += t
        return total

    # -- division ----------------------------------------------------------

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading term under graded lex (largest)."""
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial | None":
        """Return self / divisor if the division is exact, else None.

        Greedy cancellation of graded-lex leading terms; for an exact
        division the leading term of the remainder is always divisible by
        the leading term of the divisor, so the loop succeeds or fails
        honestly.
        """
        self._check_ambient(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        lead_exp, lead_c = divisor.leading()
        rem = self
        q: dict[Exponent, Fraction] = {}
        while not rem.is_zero():
            rexp, rc = rem.leading()
            diff = tuple(a - b for a, b in zip(rexp, lead_exp))
            if any(d < 0 for d in diff):
                return None
            coeff = rc / lead_c
            q[diff] = q.get(diff, Fraction(0)) + coeff
            rem = rem - divisor * Polynomial.monomial(diff, self.variables, coeff)
        return Polynomial(self.variables, q)

    def divide_by_variable_power(self, name: str, k: int) -> "Polynomial | None":
        """Exact division by name^k, or None if some term is not divisible."""
        if k == 0:
            return self
        i = self.variables.index(name)
        terms: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            if exp[i] < k:
                return None
            e = list(exp)
            e[i] -= k
            terms[tuple(e)] = c
        return Polynomial(self.variables, terms)

    def rename_ambient(self, variables: Iterable[str]) -> "Polynomial":
        """Reinterpret the same exponent data over new variable names."""
        vs = tuple(variables)
        if len(vs) != len(self.variables):
            raise AmbientMismatchError("renaming must preserve arity")
        return Polynomial(vs, dict(self.terms))

    def extend_ambient(self, variables: Iterable[str]) -> "Polynomial":
        """View the polynomial inside a larger ambient (superset of names)."""
        vs = tuple(variables)
        idx = [vs.index(v) for v in self.variables]
        n = len(vs)
        terms: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            e = [0] * n
            for pos, k in zip(idx, exp):
                e[pos] = k
            terms[tuple(e)] = c
        return Polynomial(vs, terms)

    # -- display -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _display_key(t[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            c = coeff if not parts else abs(coeff)
            if not mono:
                body = str(c)
            elif abs(c) == 1:
                body = mono if c > 0 or parts else f"-{mono}"
                if not parts and c < 0:
                    body = f"-{mono}"
            else:
                body = f"{c}*{mono}"
            if not parts:
                parts.append(body)
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


class PolyIdeal:
    """An ideal given by a finite generator list over a shared ambient."""

    __slots__ = ("variables", "generators")

    def __init__(self, variables: Iterable[str], generators: Iterable[Polynomial]):
        vs = tuple(variables)
        gens: list[Polynomial] = []
        seen: set[int] = set()
        for g in generators:
            if g.variables != vs:
                raise AmbientMismatchError("generator ambient differs from ideal ambient")
            if g.is_zero():
                continue
            h = hash(g)
            if h in seen and any(g == p for p in gens):
                continue
            seen.add(h)
            gens.append(g)
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "generators", tuple(gens))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("PolyIdeal is immutable")

    def is_zero(self) -> bool:
        return not self.generators

    def order(self):
        """min over generators of their order; +inf for the zero ideal."""
        if not self.generators:
            return INFINITY
        return min(g.order() for g in self.generators)

    def is_unit_at_origin(self) -> bool:
        return self.order() == 0

    def derivative_extend(self) -> "PolyIdeal":
        """One derivative step: append all first partials of all generators.

        Scalar multiples are dropped (they generate the same ideal), which
        keeps iterated derivative towers from exploding combinatorially.
        """
        gens = list(self.generators)
        seen = {g.scale(Fraction(1) / g.leading()[1]) for g in gens}
        for g in self.generators:
            for v in self.variables:
                d = g.derivative(v)
                if d.is_zero():
                    continue
                normalized = d.scale(Fraction(1) / d.leading()[1])
                if normalized in seen:
                    continue
                seen.add(normalized)
                gens.append(d)
        return PolyIdeal(self.variables, gens)

    def derivative_ideal(self, k: int) -> "PolyIdeal":
        """D^k: the ideal plus all partial derivatives up to total order k."""
        if k < 0:
            raise ValueError("derivative order must be >= 0")
        out = self
        for _ in range(k):
            out = out.derivative_extend()
        return out

    def restrict(self, name: str) -> "PolyIdeal":
        return PolyIdeal(self.variables, [g.restrict(name) for g in self.generators])

    def substitute(
        self, images: Mapping[str, Polynomial], variables: Iterable[str] | None = None
    ) -> "PolyIdeal":
        target = tuple(variables) if variables is not None else None
        gens = [g.substitute(images, target) for g in self.generators]
        if target is None:
            target = gens[0].variables if gens else self.variables
        return PolyIdeal(target, gens)

    def translate(self, point: Mapping[str, Scalar]) -> "PolyIdeal":
        return PolyIdeal(self.variables, [g.translate(point) for g in self.generators])

    def extend_ambient(self, variables: Iterable[str]) -> "PolyIdeal":
        vs = tuple(variables)
        return PolyIdeal(vs, [g.extend_ambient(vs) for g in self.generators])

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.generators)

    def monomial_exponents(self) -> list[Exponent]:
        if not self.is_monomial():
            raise ValueError("not a monomial ideal")
        return [next(iter(g.terms)) for g in self.generators]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyIdeal):
            return NotImplemented
        return self.variables == other.variables and set(self.generators) == set(
            other.generators
        )

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.generators)))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"PolyIdeal{self}"


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """A variable name not colliding with `taken`, derived from `base`."""
    used = set(taken)
    if base not in used:
        return base
    i = 1
    while f"{base}{i}" in used:
        i += 1
    return f"{base}{i}"
