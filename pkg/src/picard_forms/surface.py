"""Surface fixtures: the projected-surface data type, validation, pencils,
and the jacobian-scheme count with the Zeuthen-Segre cross-check.

A surface enters as a document (see `load_surface`): a homogeneous equation F
of degree d, the declared ideal generators of its double curve (empty list
means the double curve is empty), optional sample points on the double curve,
optional rational parametrizations of its components, and declared flags.
The double curve is *input*, never computed: validation is by substitution,
so the kernel stays small and honest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    InvariantViolation,
    NotZeroDimensional,
    ParseError,
    ReductionError,
    UnsupportedDoubleCurve,
)
from .fields import Field
from .linalg import IdentityTerm, LinearIdentity, UnknownBlock, coefficient_matrix, nullspace_basis
from .poly import (
    NEG_DEGREE,
    Polynomial,
    apply_substitution,
    dehomogenize,
    format_polynomial,
    matrix_apply,
    matrix_inverse,
    monomials_up_to,
    parse_polynomial,
    sample_invertible_matrix,
)


@dataclass(frozen=True)
class SurfaceModel:
    """Degree-d surface in P^3 with declared double-curve data."""

    name: str
    field: Field
    F: Polynomial                     # homogeneous, 4 variables
    f: Polynomial                     # dehomogenization F(x, y, z, 1)
    d: int
    double_curve_generators: tuple    # homogeneous 4-variable polynomials
    double_curve_samples: tuple       # projective points (4 coordinates)
    parametrizations: tuple           # per component: 4 polynomials in t
    generators_complete: bool         # generators span the ideal slice in every used degree
    ordinary: bool
    generic_coordinates: bool
    triple_point_count: int | None
    expected: dict
    jacobian_samples: dict            # axis -> tuple of affine points
    waiver: str | None

    @property
    def gamma_empty(self) -> bool:
        return not self.double_curve_generators

    def partials(self) -> tuple:
        return tuple(self.F.diff(i) for i in range(4))

    def to_document(self) -> dict:
        doc = {
            "name": self.name,
            "field": self.field.describe(),
            "F": format_polynomial(self.F),
            "double_curve": {
                "generators": [format_polynomial(g) for g in self.double_curve_generators],
                "samples": [[self.field.format(c) for c in pt] for pt in self.double_curve_samples],
            },
            "ordinary": self.ordinary,
        }
        if self.parametrizations:
            doc["double_curve"]["parametrizations"] = [
                {"coords": [_format_param(c) for c in coords]} for coords in self.parametrizations
            ]
        if self.generators_complete:
            doc["double_curve"]["generators_complete"] = True
        if self.generic_coordinates:
            doc["generic_coordinates"] = True
        if self.triple_point_count is not None:
            doc["triple_points"] = self.triple_point_count
        if self.expected:
            doc["expected"] = dict(self.expected)
        if self.jacobian_samples:
            doc["jacobian_samples"] = {
                str(axis): [[self.field.format(c) for c in pt] for pt in pts]
                for axis, pts in sorted(self.jacobian_samples.items())
            }
        if self.waiver:
            doc["waiver"] = self.waiver
        return doc


@dataclass(frozen=True)
class PencilData:
    """Defining system of the jacobian scheme of a coordinate pencil, plus the
    matching polar surface."""

    axis: int
    jacobian_generators: tuple
    polar: Polynomial


def _format_param(p: Polynomial) -> str:
    return format_polynomial(p).replace("x", "t")


def _parse_param(text: str, field: Field) -> Polynomial:
    if any(v in text for v in "xyzw"):
        raise ParseError("parametrization coordinates must be polynomials in t only")
    return parse_polynomial(text.replace("t", "x"), field, 3)


def _parse_point(values, field: Field, length: int):
    if len(values) != length:
        raise ParseError(f"point {values!r} must have {length} coordinates")
    out = []
    for v in values:
        if isinstance(v, str):
            out.append(field.parse_scalar(v))
        else:
            out.append(field.coerce(v))
    return tuple(out)


def load_surface(document: dict) -> SurfaceModel:
    """Build and validate a SurfaceModel from a fixture document.

    Checks, with the failing witness reported:
      * F is homogeneous of degree >= 1;
      * every double-curve generator is homogeneous and vanishes at every
        double-curve sample;
      * F and all four partials vanish at every sample (the double curve lies
        in the singular locus).
    """
    try:
        field = Field.from_description(document["field"])
        F = parse_polynomial(document["F"], field, 4)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad surface document: {exc}") from exc

    if F.is_zero() or not F.is_homogeneous():
        raise InvariantViolation("F must be a nonzero homogeneous polynomial", document.get("F"))
    d = F.degree()
    if d < 1:
        raise InvariantViolation("surface degree must be >= 1", d)

    dc = document.get("double_curve", {}) or {}
    generators = []
    for text in dc.get("generators", []):
        g = parse_polynomial(text, field, 4)
        if g.is_zero() or not g.is_homogeneous():
            raise InvariantViolation("double-curve generators must be nonzero homogeneous", text)
        generators.append(g)
    samples = [_parse_point(pt, field, 4) for pt in dc.get("samples", [])]
    parametrizations = []
    for comp in dc.get("parametrizations", []):
        coords = [_parse_param(t, field) for t in comp["coords"]]
        if len(coords) != 4:
            raise ParseError("parametrization needs 4 coordinate polynomials")
        parametrizations.append(tuple(coords))

    partials = [F.diff(i) for i in range(4)]
    for pt in samples:
        for g in generators:
            if not field.is_zero(g.evaluate(pt)):
                raise InvariantViolation(
                    "double-curve generator does not vanish at sample", (format_polynomial(g), pt)
                )
        if not field.is_zero(F.evaluate(pt)):
            raise InvariantViolation("F does not vanish at double-curve sample", pt)
        for i, Fi in enumerate(partials):
            if not field.is_zero(Fi.evaluate(pt)):
                raise InvariantViolation(
                    f"partial F_{i + 1} does not vanish at double-curve sample", pt
                )
    # parametrized components must lie on the surface and on every generator
    for coords in parametrizations:
        for t in range(2 * d + 3):
            pt = tuple(c.evaluate((t, 0, 0)) for c in coords)
            if not field.is_zero(F.evaluate(pt)):
                raise InvariantViolation("parametrized component does not lie on F", pt)
            for g in generators:
                if not field.is_zero(g.evaluate(pt)):
                    raise InvariantViolation(
                        "parametrized component not inside a generator", (format_polynomial(g), pt)
                    )

    jacobian_samples = {}
    for axis_text, pts in (document.get("jacobian_samples") or {}).items():
        jacobian_samples[int(axis_text)] = tuple(_parse_point(pt, field, 3) for pt in pts)

    expected = dict(document.get("expected") or {})

    return SurfaceModel(
        name=document.get("name", "surface"),
        field=field,
        F=F,
        f=dehomogenize(F),
        d=d,
        double_curve_generators=tuple(generators),
        double_curve_samples=tuple(samples),
        parametrizations=tuple(parametrizations),
        generators_complete=bool(dc.get("generators_complete", False)),
        ordinary=bool(document.get("ordinary", False)),
        generic_coordinates=bool(document.get("generic_coordinates", False)),
        triple_point_count=document.get("triple_points"),
        expected=expected,
        jacobian_samples=jacobian_samples,
        waiver=document.get("waiver"),
    )


def pencil_data(S: SurfaceModel, axis: int) -> PencilData:
    """Generators {f, f_j, f_k} of the jacobian system of pencil axis i
    (cyclically: axis 1 drops f_x, axis 2 drops f_y, axis 3 drops f_z),
    together with the polar surface F_i."""
    if axis not in (1, 2, 3):
        raise InvariantViolation("pencil axis must be 1, 2 or 3", axis)
    f = S.f
    others = {1: (1, 2), 2: (2, 0), 3: (0, 1)}[axis]
    gens = (f, f.diff(others[0]), f.diff(others[1]))
    return PencilData(axis=axis, jacobian_generators=gens, polar=S.F.diff(axis - 1))


def zeuthen_segre_formula(e: int, g: int, d: int) -> int:
    """delta = e + 4(g - 1) + d."""
    return e + 4 * (g - 1) + d


def _span_rank(polys, field: Field, provenance: str) -> int:
    """Rank of the linear span of a list of polynomials."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return 0
    identity = LinearIdentity(
        blocks=(UnknownBlock("span", tuple(polys)),),
        terms=(IdentityTerm(Polynomial.constant(field, polys[0].nvars, 1), ("span",)),),
        provenance=provenance,
    )
    matrix = coefficient_matrix(identity)
    return matrix.ncols - nullspace_basis(matrix).dim


def _truncated_quotient_dim(gens, field: Field, t: int, provenance: str) -> int:
    """dim of degree-<=t polynomials modulo the span of monomial multiples
    m*g with deg(m*g) <= t."""
    ambient = len(monomials_up_to(3, t))
    products = []
    for g in gens:
        if g.is_zero():
            continue
        room = t - g.degree()
        for mono in monomials_up_to(3, room):
            products.append(Polynomial.monomial(field, mono) * g)
    return ambient - _span_rank(products, field, provenance)


def jacobian_count(S: SurfaceModel, axis: int) -> int:
    """Length of the jacobian scheme of a coordinate pencil: the dimension of
    the polynomial algebra modulo (f, f_j, f_k), computed by degree-truncated
    linear algebra.

    Only supported when the double curve is empty.  If the truncation has not
    stabilized at the default bound 3(d-1)-2 the bound is doubled once; a
    still-growing dimension means the jacobian system is not finite (apply a
    random coordinate change first).
    """
    if not S.gamma_empty:
        raise UnsupportedDoubleCurve(
            "jacobian_count requires an empty double curve in this release"
        )
    gens = pencil_data(S, axis).jacobian_generators
    bound = 3 * (S.d - 1) - 2
    for attempt, t in enumerate((bound, 2 * bound)):
        tag = f"jacobian:{S.name}:axis{axis}:t{t}"
        h_t = _truncated_quotient_dim(gens, S.field, t, tag)
        h_next = _truncated_quotient_dim(gens, S.field, t + 1, tag + "+1")
        if h_t == h_next:
            return h_t
    raise NotZeroDimensional(
        f"jacobian system of {S.name} (axis {axis}) did not stabilize by degree {2 * bound}"
    )


# -- derived fixtures -----------------------------------------------------------------


def randomized_variant(S: SurfaceModel, seed: int) -> SurfaceModel:
    """Same surface after a seeded random invertible coordinate change.

    The equation and the generators transform by substitution, points by the
    inverse matrix, so all declared incidences are preserved exactly.
    """
    field = S.field
    matrix = sample_invertible_matrix(field, seed, size=4)
    inverse = matrix_inverse(matrix, field)
    F = apply_substitution(S.F, matrix)
    generators = tuple(apply_substitution(g, matrix) for g in S.double_curve_generators)
    samples = tuple(tuple(matrix_apply(inverse, pt, field)) for pt in S.double_curve_samples)
    parametrizations = tuple(
        tuple(
            sum(
                (coords[j].scale(inverse[i][j]) for j in range(4)),
                Polynomial.zero(field, 3),
            )
            for i in range(4)
        )
        for coords in S.parametrizations
    )
    jacobian_samples = {}
    for axis, pts in S.jacobian_samples.items():
        moved = []
        for pt in pts:
            proj = matrix_apply(inverse, list(pt) + [field.one()], field)
            if field.is_zero(proj[3]):
                continue  # moved to infinity; drop
            inv = field.inv(proj[3])
            moved.append(tuple(field.mul(c, inv) for c in proj[:3]))
        if moved:
            jacobian_samples[axis] = tuple(moved)
    return replace(
        S,
        name=f"{S.name}_randomized",
        F=F,
        f=dehomogenize(F),
        double_curve_generators=generators,
        double_curve_samples=samples,
        parametrizations=parametrizations,
        jacobian_samples=jacobian_samples,
        generic_coordinates=True,
    )


def _poly_mod_p(p: Polynomial, target: Field) -> Polynomial:
    char = target.characteristic
    terms = {}
    for mono, coeff in p.terms.items():
        if coeff.denominator % char == 0:
            raise ReductionError(
                f"coefficient {coeff} has denominator divisible by {char}"
            )
        terms[mono] = target.coerce(coeff)
    return Polynomial(target, p.nvars, terms)


def reduce_mod_p(S: SurfaceModel, p: int) -> SurfaceModel:
    """Reduce a rational fixture modulo p, refusing on divisible denominators."""
    if S.field.characteristic != 0:
        raise ReductionError("can only reduce a rational fixture")
    target = Field.prime(p)

    def point_mod(pt):
        out = []
        for c in pt:
            frac = Fraction(c)
            if frac.denominator % p == 0:
                raise ReductionError(f"sample coordinate {c} not reducible mod {p}")
            out.append(target.coerce(frac))
        return tuple(out)

    F = _poly_mod_p(S.F, target)
    if F.degree() != S.d:
        raise ReductionError(f"degree drops mod {p}; leading coefficients vanish")
    return replace(
        S,
        field=target,
        F=F,
        f=dehomogenize(F),
        double_curve_generators=tuple(_poly_mod_p(g, target) for g in S.double_curve_generators),
        double_curve_samples=tuple(point_mod(pt) for pt in S.double_curve_samples),
        parametrizations=tuple(
            tuple(_poly_mod_p(c, target) for c in coords) for coords in S.parametrizations
        ),
        jacobian_samples={
            axis: tuple(point_mod(pt) for pt in pts) for axis, pts in S.jacobian_samples.items()
        },
    )
