"""Tube algebras: nilpotent thickenings with staircase relations.

The representable class is  base[t_1, ..., t_n] / (monomial relations):
a polynomial base ring, nilpotent parameters t, and relations given by
monomial exponents (their upward closure vanishes).  A split tube of width
d (a weakly increasing tuple with every entry > 1, satisfying the witness
condition) is such an algebra whose relations kill exactly the staircase
I_d and whose surviving monomials are a free module basis over the base:

  (0) the parameters cut out the base ring,
  (1) t^a = 0 for every a in I_d,
  (2) the monomials t^a with a outside I_d are independent over the base.

The decreasing valuative filtration places an element in F_r when every
term's parameter exponent has weighted value at least r; the defining
parameters sit exactly at F_{1/d_i}, and any candidate tuple that is a
conormal basis respecting those levels is again a system of nilpotent
parameters.

Tubes in a regular ambient correspond to integral weighted centers: the
tube of a center is the vanishing locus of its rounding, the width is the
part of the invariant exceeding one, and the tubular Rees algebra (degree n
generated by parameter monomials of value at least n/N) is the restriction
of the center's root Rees algebra, with Proj the strict transform of the
ambient weighted blowup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .blowup import build_charts, rees_generators, strict_transform
from .centers import CenterPresentation, CoordinateChange, nu_valuation
from .errors import (
    DomainError,
    NonIntegralCenterError,
    NotATubeError,
    UnrepresentableError,
)
from .lattice import LatticeIdeal, MultiOrder, is_in_mord, mord_compare, split_gt1
from .poly import Exponent, Polynomial, PolyIdeal


def _dominates(a: Exponent, b: Exponent) -> bool:
    return all(x >= y for x, y in zip(a, b))


@dataclass(frozen=True)
class TubeAlgebra:
    """base[t]/(monomial relations), with optional width metadata."""

    base_vars: tuple[str, ...]
    params: tuple[str, ...]
    relations: tuple[Exponent, ...]
    width: MultiOrder | None = None

    def __post_init__(self):
        for a in self.relations:
            if len(a) != len(self.params):
                raise DomainError("relation arity does not match the parameters")

    def ambient(self) -> tuple[str, ...]:
        return self.base_vars + self.params

    def kills(self, a: Exponent) -> bool:
        return any(_dominates(a, r) for r in self.relations)

    def basis(self) -> list[Exponent]:
        """Parameter monomials surviving the relations (must be finite)."""
        bounds = []
        for i in range(len(self.params)):
            axis = [r[i] for r in self.relations if all(e == 0 for j, e in enumerate(r) if j != i)]
            if not axis:
                raise UnrepresentableError(
                    f"parameter {self.params[i]} is not nilpotent: no pure power relation"
                )
            bounds.append(min(axis))
        out = [
            a
            for a in itertools.product(*(range(b) for b in bounds))
            if not self.kills(a)
        ]
        out.sort(key=lambda t: (sum(t), tuple(-e for e in t)))
        return out

    def rank(self) -> int:
        return len(self.basis())

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form: kill every term whose parameter part is a relation."""
        amb = self.ambient()
        if f.variables != amb:
            f = f.extend_ambient(amb)
        idx = [amb.index(p) for p in self.params]
        terms = {
            exp: c
            for exp, c in f.terms.items()
            if not self.kills(tuple(exp[i] for i in idx))
        }
        return Polynomial(amb, terms)

    def param_polynomials(self) -> tuple[Polynomial, ...]:
        amb = self.ambient()
        return tuple(Polynomial.variable(p, amb) for p in self.params)


def constant_tube(
    width: MultiOrder,
    base_vars: Iterable[str] = (),
    params: Iterable[str] | None = None,
) -> TubeAlgebra:
    """The standard tube of the given width over a polynomial base."""
    if any(e <= 1 for e in width.entries) or not (
        len(width) == 0 or is_in_mord(width)
    ):
        raise DomainError(f"width {width} must have entries > 1 and admit witnesses")
    names = tuple(params) if params is not None else tuple(
        f"t{i+1}" for i in range(len(width))
    )
    if len(names) != len(width):
        raise DomainError("parameter count must match the width length")
    relations: tuple[Exponent, ...] = ()
    if len(width):
        relations = tuple(LatticeIdeal(width).minimal_generators())
    return TubeAlgebra(tuple(base_vars), names, relations, width)


# -- exact linear algebra helpers ---------------------------------------------


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][c]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                factor = m[r][c] / pv
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def _det(matrix: list[list[Fraction]]) -> Fraction:
    n = len(matrix)
    m = [list(r) for r in matrix]
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if m[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            factor = m[r][c] / m[c][c]
            m[r] = [a - factor * b for a, b in zip(m[r], m[c])]
    return det


def _poly_det(matrix: list[list[Polynomial]]) -> Polynomial:
    n = len(matrix)
    if n == 0:
        raise DomainError("empty matrix")
    if n == 1:
        return matrix[0][0]
    amb = matrix[0][0].variables
    total = Polynomial.zero(amb)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * _poly_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


# -- split-tube verification ---------------------------------------------------


def _candidate_param_polys(
    A: TubeAlgebra, params: Sequence[Polynomial | str] | None
) -> list[Polynomial]:
    amb = A.ambient()
    if params is None:
        return list(A.param_polynomials())
    out = []
    for p in params:
        if isinstance(p, str):
            out.append(Polynomial.variable(p, amb))
        else:
            out.append(p.extend_ambient(amb) if p.variables != amb else p)
    return out


def _linear_param_matrix(A: TubeAlgebra, cands: list[Polynomial]) -> list[list[Polynomial]]:
    """Conormal matrix: coefficient of each parameter in each candidate's
    parameter-linear part (an entry may involve base variables)."""
    amb = A.ambient()
    base_idx = [amb.index(v) for v in A.base_vars]
    param_idx = [amb.index(p) for p in A.params]
    matrix = []
    for cand in cands:
        row = []
        for j in param_idx:
            terms = {}
            for exp, c in cand.terms.items():
                if exp[j] == 1 and all(
                    exp[k] == 0 for k in param_idx if k != j
                ) and sum(exp[k] for k in param_idx) == 1:
                    base_exp = tuple(
                        e if i in base_idx else 0 for i, e in enumerate(exp)
                    )
                    terms[base_exp] = c
            row.append(Polynomial(amb, terms))
        matrix.append(row)
    return matrix


def _param_value(A: TubeAlgebra, exp: Exponent, width: MultiOrder) -> Fraction:
    return sum(
        (Fraction(e) / d for e, d in zip(exp, width.entries)), Fraction(0)
    )


def filtration_level(A: TubeAlgebra, f: Polynomial, width: MultiOrder) -> Fraction:
    """Largest r with f in F_r: the minimum weighted parameter value over
    the terms of the normal form (pure base terms sit at level 0)."""
    g = A.reduce(f)
    amb = A.ambient()
    idx = [amb.index(p) for p in A.params]
    best = None
    for exp, _ in g.terms.items():
        v = _param_value(A, tuple(exp[i] for i in idx), width)
        if best is None or v < best:
            best = v
    return best if best is not None else Fraction(0)


def verify_split_tube(
    A: TubeAlgebra,
    width: MultiOrder,
    params: Sequence[Polynomial | str] | None = None,
) -> bool:
    """Check the split-tube axioms for a claimed width and parameter tuple."""
    if len(width) != len(A.params):
        return False
    if any(e <= 1 for e in width.entries):
        return False
    cands = _candidate_param_polys(A, params)
    amb = A.ambient()

    # (0): the candidates cut out the base: no pure-base terms, and the
    # parameter-linear parts form an invertible matrix over the base
    param_idx = [amb.index(p) for p in A.params]
    for cand in cands:
        for exp in cand.terms:
            if all(exp[k] == 0 for k in param_idx):
                return False
    matrix = _linear_param_matrix(A, cands)
    if all(entry.is_constant() for row in matrix for entry in row):
        det = _det([[e.constant_term() for e in row] for row in matrix])
        if det == 0:
            return False
    else:
        det = _poly_det(matrix)
        if det.is_zero() or not det.is_constant():
            return False

    # (1): the staircase monomials in the candidates vanish
    lattice = LatticeIdeal(width) if len(width) else None
    if lattice is not None:
        for a in lattice.minimal_generators():
            mono = Polynomial.constant(1, amb)
            for cand, e in zip(cands, a):
                if e:
                    mono = mono * cand**e
            if not A.reduce(mono).is_zero():
                return False

    # (2): the complement monomials in the candidates form a base-module
    # basis; with filtration-respecting candidates this is detected by the
    # invertibility of the product matrix against the algebra's own basis
    complement = lattice.complement() if lattice is not None else [()]
    basis = A.basis()
    if len(complement) != len(basis):
        return False
    basis_pos = {b: k for k, b in enumerate(basis)}
    idx = [amb.index(p) for p in A.params]
    base_idx = [amb.index(v) for v in A.base_vars]
    rows: list[list[Fraction]] = []
    for a in sorted(complement, key=lambda t: (sum(t), tuple(-e for e in t))):
        mono = Polynomial.constant(1, amb)
        for cand, e in zip(cands, a):
            if e:
                mono = mono * cand**e
        mono = A.reduce(mono)
        row = [Fraction(0)] * len(basis)
        for exp, c in mono.terms.items():
            if any(exp[i] != 0 for i in base_idx):
                raise UnrepresentableError(
                    "base-coefficient matrices are outside the checked class"
                )
            key = tuple(exp[i] for i in idx)
            row[basis_pos[key]] += c
        rows.append(row)
    return _rank(rows) == len(basis)


def width(A: TubeAlgebra) -> MultiOrder:
    """Recover the width from the relation staircase.

    Solves the supporting-hyperplane systems through subsets of the relation
    exponents, keeps solutions with decreasing positive weights whose
    staircase reproduces the relations exactly, and filters by the witness
    condition.  Integral staircases determine their width uniquely.
    """
    n = len(A.params)
    if n == 0:
        return MultiOrder(())
    rels = set(A.relations)
    for subset in itertools.combinations(sorted(rels), n):
        matrix = [[Fraction(e) for e in a] for a in subset]
        if _det(matrix) == 0:
            continue
        # solve a . w = 1 for each row by Gaussian elimination
        m = [row + [Fraction(1)] for row in matrix]
        for c in range(n):
            pivot = next(r for r in range(c, n) if m[r][c] != 0)
            m[c], m[pivot] = m[pivot], m[c]
            pv = m[c][c]
            m[c] = [x / pv for x in m[c]]
            for r in range(n):
                if r != c and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        w = [m[r][n] for r in range(n)]
        if any(x <= 0 for x in w):
            continue
        if any(w[i] < w[i + 1] for i in range(n - 1)):
            continue  # width must be increasing, weights decreasing
        d = MultiOrder([Fraction(1) / x for x in w])
        if any(e <= 1 for e in d.entries):
            continue
        if not is_in_mord(d):
            continue
        if set(LatticeIdeal(d).minimal_generators()) == rels:
            return d
    raise NotATubeError(f"relations {A.relations} are not an integral staircase")


def parameter_check(
    A: TubeAlgebra, candidate: Sequence[Polynomial | str]
) -> bool:
    """Conormal-basis and filtration-level test for a candidate tuple."""
    d = A.width if A.width is not None else width(A)
    if len(candidate) != len(A.params):
        return False
    cands = _candidate_param_polys(A, candidate)
    matrix = _linear_param_matrix(A, cands)
    if all(entry.is_constant() for row in matrix for entry in row):
        if _det([[e.constant_term() for e in row] for row in matrix]) == 0:
            return False
    else:
        det = _poly_det(matrix)
        if det.is_zero() or not det.is_constant():
            return False
    amb = A.ambient()
    idx = [amb.index(p) for p in A.params]
    for i, cand in enumerate(cands):
        level = Fraction(1) / d.entries[i]
        g = A.reduce(cand)
        if g.is_zero():
            return False
        for exp in g.terms:
            v = _param_value(A, tuple(exp[k] for k in idx), d)
            if v < level:
                return False
    return True


# -- correspondence with centers ----------------------------------------------


def tube_center_correspondence(center: CenterPresentation) -> TubeAlgebra:
    """The tube cut out by the rounding of an integral center."""
    if not is_in_mord(center.mord()):
        raise NonIntegralCenterError(f"{center} is not integral")
    ones, tail = split_gt1(center.mord())
    base = tuple(v for v in center.ambient if v not in center.coords)
    params = center.t_coords()
    relations: tuple[Exponent, ...] = ()
    if len(tail):
        relations = tuple(LatticeIdeal(tail).minimal_generators())
    return TubeAlgebra(base, params, relations, tail)


def center_from_tube(A: TubeAlgebra) -> CenterPresentation:
    """Inverse correspondence on representable inputs: the integral center
    with the tube's parameters as coordinates."""
    d = A.width if A.width is not None else width(A)
    ambient = A.ambient()
    return CenterPresentation(
        ambient, CoordinateChange.identity(ambient), A.params, d
    )


@dataclass(frozen=True)
class TubeInvariant:
    """Width plus a symbolic support descriptor, ordered lexicographically
    with supports compared by inclusion."""

    width: MultiOrder
    support: frozenset[str]


def tube_invariant_compare(a: TubeInvariant, b: TubeInvariant) -> int | None:
    c = mord_compare(a.width, b.width)
    if c != 0:
        return c
    if a.support == b.support:
        return 0
    if a.support < b.support:
        return -1
    if a.support > b.support:
        return 1
    return None  # incomparable supports


# -- tight presentations --------------------------------------------------------


@dataclass(frozen=True)
class TightVerdict:
    gap: int
    s_size: int
    valid: bool
    tight_exists: bool


def _linear_rank(gens: Iterable[Polynomial], ambient: tuple[str, ...]) -> int:
    rows = []
    for g in gens:
        lin = g.linear_part()
        if lin:
            rows.append([lin.get(v, Fraction(0)) for v in ambient])
    if not rows:
        return 0
    return _rank(rows)


def tight_presentation_check(
    Z_ideal: PolyIdeal,
    s_part: Sequence[Polynomial],
    t_part: Sequence[str],
    d: MultiOrder,
) -> TightVerdict:
    """Compare the s-part size against the cotangent-dimension gap.

    The gap is computed from linear parts of generators at the origin:
    e = (ambient dimension) - rank(linear parts).  A tight presentation
    (no s-part) exists exactly when the gap vanishes.
    """
    ambient = Z_ideal.variables
    if any(e <= 1 for e in d.entries):
        raise DomainError("tube widths must exceed one")
    n = len(ambient)
    e_Z = n - _linear_rank(Z_ideal.generators, ambient)
    tube_gens = list(s_part)
    if len(t_part) != len(d):
        raise DomainError("t-part length must match the width")
    lattice = LatticeIdeal(d) if len(d) else None
    if lattice is not None:
        for a in lattice.minimal_generators():
            g = Polynomial.constant(1, ambient)
            for v, e in zip(t_part, a):
                if e:
                    g = g * Polynomial.variable(v, ambient) ** e
            tube_gens.append(g)
    e_V = n - _linear_rank(tube_gens, ambient)
    gap = e_Z - e_V
    return TightVerdict(
        gap=gap,
        s_size=len(s_part),
        valid=len(s_part) == gap,
        tight_exists=gap == 0,
    )


# -- tubular Rees algebra and blowup -------------------------------------------


def tubular_rees_piece(A: TubeAlgebra, N: int, n: int) -> list[Exponent]:
    """Minimal parameter monomials of the degree-n graded piece.

    Degree n is generated by the monomials t^a with N * sum a_j/d_j >= n,
    the restriction of the corresponding center's root Rees algebra.
    """
    d = A.width if A.width is not None else width(A)
    if N < 1:
        raise DomainError("the root order must be positive")
    for e in d.entries:
        if (Fraction(N) / e).denominator != 1:
            raise DomainError(f"N={N} does not clear the width entry {e}")
    if n < 0 or n > N:
        raise DomainError("tubular Rees degrees are requested in the range 0..N")
    center = center_from_tube(A)
    return rees_generators(center, N, n)[n]


def _reduce_mod(f: Polynomial, Z: PolyIdeal) -> Polynomial:
    """Normal form modulo a zero, monomial, or principal ideal."""
    if Z.is_zero():
        return f
    if Z.is_monomial():
        exps = Z.monomial_exponents()
        terms = {
            e: c
            for e, c in f.terms.items()
            if not any(_dominates(e, r) for r in exps)
        }
        return Polynomial(f.variables, terms)
    if len(Z.generators) == 1:
        g = Z.generators[0]
        lead_exp, lead_c = g.leading()
        rem = f
        guard = 0
        while not rem.is_zero():
            hit = None
            for exp in sorted(rem.terms, key=lambda t: (-sum(t), t)):
                diff = tuple(a - b for a, b in zip(exp, lead_exp))
                if all(x >= 0 for x in diff):
                    hit = (exp, diff)
                    break
            if hit is None:
                break
            exp, diff = hit
            coeff = rem.terms[exp] / lead_c
            rem = rem - g * Polynomial.monomial(diff, f.variables, coeff)
            guard += 1
            if guard > 10000:
                raise UnrepresentableError("reduction does not terminate")
        return rem
    raise UnrepresentableError(
        "normal forms are only available modulo zero, monomial, or principal ideals"
    )


def rees_restriction_check(
    center: CenterPresentation,
    Z_ideal: PolyIdeal,
    N: int,
    tube: TubeAlgebra | None = None,
) -> bool:
    """Degree-by-degree: image of the center's Rees generators in the
    quotient ring equals the tubular Rees generators of the tube.

    The tube defaults to the one corresponding to the center; passing a
    different tube exercises the negative direction of the comparison.
    """
    if center.s_count() > 0:
        raise UnrepresentableError("restriction check expects a tight center")
    A = tube if tube is not None else tube_center_correspondence(center)
    coord_polys = dict(zip(center.coords, center.coordinate_polynomials()))
    ambient = center.ambient
    grading = rees_generators(center, N)
    for n in range(N + 1):
        left = set()
        for a in grading[n]:
            g = Polynomial.constant(1, ambient)
            for v, e in zip(center.coords, a):
                if e:
                    g = g * coord_polys[v] ** e
            r = _reduce_mod(g, Z_ideal)
            if not r.is_zero():
                left.add(r)
        right = set()
        try:
            right_exponents = tubular_rees_piece(A, N, n)
        except DomainError:
            return False  # the tube's width does not even admit this root order
        for a in right_exponents:
            g = Polynomial.constant(1, ambient)
            for v, e in zip(A.params, a):
                if e:
                    g = g * Polynomial.variable(v, ambient) ** e
            r = _reduce_mod(g, Z_ideal)
            if not r.is_zero():
                right.add(r)
        if left != right:
            return False
    return True


def tubular_blowup_check(
    Z_ideal: PolyIdeal, center: CenterPresentation, N: int
) -> bool:
    """Chart equality of the tubular blowup against the strict transform.

    Chart-wise, the blowup of the tubular Rees algebra divides each pulled
    back generator of Z exactly by the exceptional power predicted by its
    valuation; the ambient strict transform divides by the maximal power.
    The two coincide precisely when the tube controls Z, which is the
    content of the comparison.
    """
    charts = build_charts(center, N)
    for chart in charts:
        right = strict_transform(Z_ideal, chart)
        gens = []
        for g in Z_ideal.generators:
            val = nu_valuation(g, center) * N
            if isinstance(val, float) or Fraction(val).denominator != 1:
                return False
            pulled = chart.transform_poly(g)
            divided = pulled.divide_by_variable_power(chart.exceptional, int(val))
            if divided is None:
                return False
            gens.append(divided)
        left = PolyIdeal(chart.ambient, gens)
        if left != right:
            return False
    return True
