"""Weighted center presentations aligned to coordinates.

A center is a weighted ideal [v_1^{d_1}, ..., v_m^{d_m}] on a regular system
of coordinates.  We store the aligning data explicitly: a triangular
coordinate change (a composition of invertible elementary steps) under which
the center coordinates become plain ambient variables, the list of aligned
variable names, and the weakly increasing exponent tuple.  Elementary steps
are of the form  new_v = c*v + q  with c a nonzero rational and q free of v,
so both directions of the change stay polynomial.

The valuation nu assigns to a monomial the weighted sum of its exponents on
the center coordinates (weight 1/d_i, other variables weight 0) and to a
polynomial the minimum over its terms, computed after rewriting through the
change.  The rounding of a center is the honest ideal inside it: the
monomial ideal spanned by the lattice staircase of the exponent tuple,
mapped back through the change.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AdmissibilityError,
    AmbientMismatchError,
    DomainError,
    InvalidMultiOrderError,
)
from .lattice import LatticeIdeal, MultiOrder
from .poly import INFINITY, Exponent, Polynomial, PolyIdeal


@dataclass(frozen=True)
class AlignStep:
    """One elementary change  new_var = coeff * var + tail  (tail free of var)."""

    var: str
    coeff: Fraction
    tail: Polynomial

    def __post_init__(self):
        if self.coeff == 0:
            raise DomainError("alignment step needs an invertible coefficient")
        if self.var in self.tail.support():
            raise DomainError(f"alignment tail may not involve {self.var}")

    def apply_aligned(self, f: Polynomial) -> Polynomial:
        # express f in the new coordinates:  var -> (var - tail)/coeff
        v = Polynomial.variable(self.var, f.variables)
        tail = self.tail.extend_ambient(f.variables)
        image = (v - tail).scale(Fraction(1) / self.coeff)
        return f.substitute({self.var: image}, f.variables)

    def apply_original(self, f: Polynomial) -> Polynomial:
        # express an aligned-coordinate polynomial in the old coordinates
        v = Polynomial.variable(self.var, f.variables)
        tail = self.tail.extend_ambient(f.variables)
        image = v.scale(self.coeff) + tail
        return f.substitute({self.var: image}, f.variables)


class CoordinateChange:
    """A composition of alignment steps, applied in order."""

    __slots__ = ("variables", "steps")

    def __init__(self, variables: Iterable[str], steps: Sequence[AlignStep] = ()):
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "steps", tuple(steps))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("CoordinateChange is immutable")

    @classmethod
    def identity(cls, variables: Iterable[str]) -> "CoordinateChange":
        return cls(variables)

    def is_identity(self) -> bool:
        return not self.steps

    def then(self, step: AlignStep) -> "CoordinateChange":
        return CoordinateChange(self.variables, self.steps + (step,))

    def to_aligned(self, f: Polynomial) -> Polynomial:
        for step in self.steps:
            f = step.apply_aligned(f)
        return f

    def to_original(self, f: Polynomial) -> Polynomial:
        for step in reversed(self.steps):
            f = step.apply_original(f)
        return f

    def to_aligned_ideal(self, I: PolyIdeal) -> PolyIdeal:
        return PolyIdeal(I.variables, [self.to_aligned(g) for g in I.generators])

    def to_original_ideal(self, I: PolyIdeal) -> PolyIdeal:
        return PolyIdeal(I.variables, [self.to_original(g) for g in I.generators])

    def __str__(self) -> str:
        if not self.steps:
            return "identity"
        bits = []
        for s in self.steps:
            rhs = Polynomial.variable(s.var, self.variables).scale(s.coeff) + (
                s.tail.extend_ambient(self.variables)
            )
            bits.append(f"{s.var} <- {rhs}")
        return "; ".join(bits)


class CenterPresentation:
    """A weighted center [v_1^{d_1}, ..., v_m^{d_m}] plus its aligning change.

    `coords` are the aligned variable names (distinct ambient variables) and
    `exponents` the weakly increasing weight tuple; entries equal to 1 form
    the codimension block, entries > 1 the genuinely weighted block.
    """

    __slots__ = ("ambient", "change", "coords", "exponents")

    def __init__(
        self,
        ambient: Iterable[str],
        change: CoordinateChange,
        coords: Iterable[str],
        exponents: MultiOrder,
    ):
        amb = tuple(ambient)
        cs = tuple(coords)
        if exponents.is_zero():
            raise InvalidMultiOrderError("a center cannot carry the zero invariant")
        if len(cs) != len(exponents):
            raise AmbientMismatchError("coordinate/exponent length mismatch")
        if len(set(cs)) != len(cs):
            raise DomainError(f"center coordinates must be distinct: {cs}")
        for v in cs:
            if v not in amb:
                raise AmbientMismatchError(f"center coordinate {v} not in ambient")
        object.__setattr__(self, "ambient", amb)
        object.__setattr__(self, "change", change)
        object.__setattr__(self, "coords", cs)
        object.__setattr__(self, "exponents", exponents)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("CenterPresentation is immutable")

    @classmethod
    def on_variables(
        cls,
        ambient: Iterable[str],
        coords: Iterable[str],
        exponents: Iterable,
        change: CoordinateChange | None = None,
    ) -> "CenterPresentation":
        amb = tuple(ambient)
        if change is None:
            change = CoordinateChange.identity(amb)
        return cls(amb, change, coords, MultiOrder(exponents))

    # -- structure ----------------------------------------------------------

    def mord(self) -> MultiOrder:
        return self.exponents

    def s_count(self) -> int:
        return sum(1 for e in self.exponents if e == 1)

    def s_coords(self) -> tuple[str, ...]:
        return self.coords[: self.s_count()]

    def t_coords(self) -> tuple[str, ...]:
        return self.coords[self.s_count() :]

    def t_exponents(self) -> MultiOrder:
        return MultiOrder(self.exponents.entries[self.s_count() :])

    def weight_of(self, var: str) -> Fraction:
        for v, d in zip(self.coords, self.exponents):
            if v == var:
                return Fraction(1) / d
        return Fraction(0)

    def coordinate_polynomials(self) -> list[Polynomial]:
        """The center coordinates expressed in the original coordinates."""
        out = []
        for v in self.coords:
            out.append(self.change.to_original(Polynomial.variable(v, self.ambient)))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CenterPresentation):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.exponents == other.exponents
            and self.coordinate_polynomials() == other.coordinate_polynomials()
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.exponents, tuple(self.coordinate_polynomials())))

    def __str__(self) -> str:
        parts = []
        for p, d in zip(self.coordinate_polynomials(), self.exponents):
            base = str(p)
            if len(p.terms) > 1 or (len(p.terms) == 1 and tuple(p.terms.values())[0] != 1):
                base = f"({base})"
            if d == 1:
                parts.append(base)
            elif d.denominator == 1:
                parts.append(f"{base}^{d}")
            else:
                parts.append(f"{base}^({d})")
        return "[" + ", ".join(parts) + "]"

    def __repr__(self) -> str:
        return f"CenterPresentation{self}"


# -- valuation and admissibility --------------------------------------------


def _term_nu(center: CenterPresentation, exp: Exponent, variables) -> Fraction:
    total = Fraction(0)
    for name, e in zip(variables, exp):
        if e:
            total += e * center.weight_of(name)
    return total


def nu_valuation(f: Polynomial, center: CenterPresentation) -> Fraction | float:
    """min over terms of the weighted exponent sum; +inf for the zero poly."""
    if f.variables != center.ambient:
        raise AmbientMismatchError("polynomial ambient differs from center ambient")
    g = center.change.to_aligned(f)
    if g.is_zero():
        return INFINITY
    return min(_term_nu(center, e, g.variables) for e in g.terms)


def is_admissible(I: PolyIdeal, center: CenterPresentation) -> bool:
    """True iff nu >= 1 on every generator (i.e. I is contained in the center)."""
    if I.variables != center.ambient:
        raise AmbientMismatchError("ideal ambient differs from center ambient")
    return all(nu_valuation(g, center) >= 1 for g in I.generators)


def rounding(center: CenterPresentation) -> PolyIdeal:
    """The honest monomial ideal inside the center, in original coordinates.

    Generated by the weight-1 coordinates together with the staircase minimal
    generators of the weighted block, each mapped back through the change.
    """
    amb = center.ambient
    gens: list[Polynomial] = []
    coord_polys = dict(zip(center.coords, center.coordinate_polynomials()))
    for v in center.s_coords():
        gens.append(coord_polys[v])
    t_vars = center.t_coords()
    if t_vars:
        lattice = LatticeIdeal(center.t_exponents())
        for a in lattice.minimal_generators():
            g = Polynomial.constant(1, amb)
            for v, e in zip(t_vars, a):
                if e:
                    g = g * coord_polys[v] ** e
            gens.append(g)
    return PolyIdeal(amb, gens)


# -- leading term -------------------------------------------------------------


@dataclass(frozen=True)
class LeadingTerm:
    """Weight-one graded piece of a center, with an ideal's image inside it.

    `basis` lists the exponent vectors over the center coordinates whose
    weighted value is exactly 1 (the weight-1 coordinates appear as unit
    vectors).  `rows` carries, per projected polynomial, a map
    basis-exponent -> coefficient, where a coefficient is an exact rational
    or, when the center's support has positive dimension, a polynomial in
    the free variables.
    """

    coords: tuple[str, ...]
    basis: tuple[Exponent, ...]
    rows: tuple[tuple[tuple[Exponent, object], ...], ...] = ()

    def basis_monomials(self, ambient: tuple[str, ...]) -> list[Polynomial]:
        out = []
        for exp in self.basis:
            g = Polynomial.constant(1, ambient)
            for v, e in zip(self.coords, exp):
                if e:
                    g = g * Polynomial.variable(v, ambient) ** e
            out.append(g)
        return out

    def monomials_involved(self) -> set[Exponent]:
        """Basis exponents hit by some nonzero coefficient of some row."""
        hit: set[Exponent] = set()
        for row in self.rows:
            for exp, coeff in row:
                hit.add(exp)
        return hit


def leading_term_basis(center: CenterPresentation) -> LeadingTerm:
    """All center-coordinate exponents of weighted value exactly 1."""
    ws = [center.weight_of(v) for v in center.coords]
    sols: list[Exponent] = []

    def rec(j: int, remaining: Fraction, prefix: tuple[int, ...]):
        if j == len(ws) - 1:
            if remaining == 0:
                sols.append(prefix + (0,))
                return
            q = remaining / ws[j]
            if q.denominator == 1 and q > 0:
                sols.append(prefix + (int(q),))
            return
        a = 0
        while a * ws[j] <= remaining:
            rec(j + 1, remaining - a * ws[j], prefix + (a,))
            a += 1

    if ws:
        rec(0, Fraction(1), ())
    sols.sort(key=lambda t: tuple(-e for e in t))
    return LeadingTerm(center.coords, tuple(sols))


def leading_term_decomposition(
    f: Polynomial, center: CenterPresentation
) -> dict[Exponent, Polynomial]:
    """Decompose the weight-1 part of f over the monomial basis.

    Returns a map from basis exponents (over the center coordinates) to
    coefficients; each coefficient is a polynomial in the free variables
    (constant when the center is supported at the origin).  Terms of value
    > 1 are discarded; a term of value < 1 is an admissibility violation.
    """
    g = center.change.to_aligned(f)
    amb = g.variables
    coord_idx = {v: amb.index(v) for v in center.coords}
    free_idx = [i for i, v in enumerate(amb) if v not in coord_idx]
    out: dict[Exponent, dict[Exponent, Fraction]] = {}
    for exp, coeff in g.terms.items():
        val = _term_nu(center, exp, amb)
        if val < 1:
            raise AdmissibilityError(
                f"term of valuation {val} < 1: the polynomial is not in the center"
            )
        if val > 1:
            continue
        key = tuple(exp[coord_idx[v]] for v in center.coords)
        free_exp = tuple(exp[i] for i in free_idx)
        out.setdefault(key, {})[free_exp] = coeff
    free_vars = tuple(amb[i] for i in free_idx)
    return {
        key: Polynomial(free_vars, terms) for key, terms in sorted(out.items())
    }


def leading_term_projection(I: PolyIdeal, center: CenterPresentation) -> LeadingTerm:
    """Project an admissible ideal's generators onto the weight-1 piece."""
    if not is_admissible(I, center):
        raise AdmissibilityError("leading-term projection requires an admissible ideal")
    base = leading_term_basis(center)
    rows = []
    for g in I.generators:
        decomp = leading_term_decomposition(g, center)
        row = tuple(
            (exp, coeff) for exp, coeff in decomp.items() if not coeff.is_zero()
        )
        if row:
            rows.append(row)
    return LeadingTerm(base.coords, base.basis, tuple(rows))
