"""Degree-bounded syzygies of the partials of a plane curve.

For an irreducible plane curve of degree n whose only singularities are
nodes, the triple of partial derivatives admits no nontrivial syzygy of
degree l <= n-2; at l = n-1 the Koszul triples appear.  The verifier computes
the syzygy space dimension degree slice by degree slice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation, InvariantViolation, ParseError
from .fields import Field
from .linalg import (
    IdentityTerm,
    LinearIdentity,
    NullspaceBasis,
    UnknownBlock,
    coefficient_matrix,
    nullspace_basis,
)
from .poly import Polynomial, monomials_of_degree, parse_polynomial


@dataclass(frozen=True)
class PlaneCurve:
    name: str
    field: Field
    g: Polynomial          # homogeneous, 3 variables
    n: int                 # degree
    nodal: bool            # declared: no singular points except nodes
    nodes: tuple           # optional declared node coordinates (projective)


def _substitute_one(p: Polynomial, var: int) -> Polynomial:
    """Set variable `var` to 1, keeping the ambient variable count."""
    F = p.field
    out: dict = {}
    for mono, coeff in p.terms.items():
        key = tuple(0 if i == var else e for i, e in enumerate(mono))
        out[key] = F.add(out.get(key, F.zero()), coeff)
    return Polynomial(F, p.nvars, out)


def _check_node(curve_g: Polynomial, point) -> None:
    """Spot-check a declared node: g and all partials vanish, and the affine
    2x2 Hessian determinant is nonzero there."""
    field = curve_g.field
    if not field.is_zero(curve_g.evaluate(point)):
        raise InvariantViolation("declared node does not lie on the curve", point)
    for i in range(3):
        if not field.is_zero(curve_g.diff(i).evaluate(point)):
            raise InvariantViolation("declared node is not a singular point", point)
    chart = max(i for i in range(3) if not field.is_zero(point[i]))
    scale = field.inv(point[chart])
    scaled = tuple(field.mul(c, scale) for c in point)
    aff = _substitute_one(curve_g, chart)
    live = [i for i in range(3) if i != chart]
    u, v = live
    huu = aff.diff(u).diff(u).evaluate(scaled)
    hvv = aff.diff(v).diff(v).evaluate(scaled)
    huv = aff.diff(u).diff(v).evaluate(scaled)
    det = field.sub(field.mul(huu, hvv), field.mul(huv, huv))
    if field.is_zero(det):
        raise InvariantViolation("declared node is degenerate (Hessian minor vanishes)", point)


def load_plane_curve(document: dict) -> PlaneCurve:
    """Parse and validate a plane-curve fixture {g, nodal, nodes?}."""
    try:
        field = Field.from_description(document["field"])
        g = parse_polynomial(document["g"], field, 3)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad curve document: {exc}") from exc
    if g.is_zero() or not g.is_homogeneous() or g.degree() < 1:
        raise InvariantViolation("g must be nonzero homogeneous of degree >= 1", document.get("g"))
    nodes = []
    for pt in document.get("nodes", []):
        coords = tuple(field.parse_scalar(str(c)) for c in pt)
        if len(coords) != 3:
            raise ParseError("node points need 3 coordinates")
        _check_node(g, coords)
        nodes.append(coords)
    return PlaneCurve(
        name=document.get("name", "curve"),
        field=field,
        g=g,
        n=g.degree(),
        nodal=bool(document.get("nodal", False)),
        nodes=tuple(nodes),
    )


def syzygy_space(curve: PlaneCurve, l: int) -> NullspaceBasis:
    """Exact basis of triples (P1, P2, P3), homogeneous of degree l, with
    P1 g_1 + P2 g_2 + P3 g_3 = 0."""
    if l < 0:
        raise ContractViolation("syzygy degree must be >= 0")
    field = curve.field
    basis = tuple(Polynomial.monomial(field, m) for m in monomials_of_degree(3, l))
    identity = LinearIdentity(
        blocks=(
            UnknownBlock("P1", basis),
            UnknownBlock("P2", basis),
            UnknownBlock("P3", basis),
        ),
        terms=(
            IdentityTerm(curve.g.diff(0), ("P1",)),
            IdentityTerm(curve.g.diff(1), ("P2",)),
            IdentityTerm(curve.g.diff(2), ("P3",)),
        ),
        provenance=f"syzygy:{curve.name}:l{l}",
    )
    return nullspace_basis(coefficient_matrix(identity))


def castelnuovo_check(curve: PlaneCurve) -> bool:
    """True iff the partials admit no syzygy in any degree l <= n-2.

    The nodal flag is trusted (spot-checked at load when node coordinates are
    supplied); refusing non-nodal input keeps the lemma's hypotheses visible.
    """
    if not curve.nodal:
        raise ContractViolation("castelnuovo_check requires the nodal flag")
    return all(syzygy_space(curve, l).dim == 0 for l in range(curve.n - 1))
