"""Adjoint spaces and the Picard relation.

The solver realizes the classical construction of regular 1-forms on a
projected surface: tuples (A, B, C, N) with A, B, C adjoint of degree d-2,
N of degree d-3, and

    A f_x + B f_y + C f_z = N f       (Picard's relation)

hold exactly.  The solution space dimension realizes the analytic
irregularity; the integrability defect Q = A_x + B_y + C_z - N measures
closedness of the associated 1-form (A dy - B dx)/f_z; the homogeneous form
X_1 F_1 + ... + X_4 F_4 = 0 with X_1 = homog(dA - xN) etc. carries the same
data projectively, where the degree-(d-4) divergence sum dX_i/dx_i is the
homogeneous integrability condition.

Everything is exact linear algebra over the fixture's field; every emitted
solution is re-verified by direct polynomial arithmetic, independently of the
elimination engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CharacteristicDividesDegree,
    ClosednessViolation,
    ContractViolation,
    DegreeOverflow,
    InvariantViolation,
    NoCompletion,
    NonUniqueCompletion,
    NotASolution,
    StrategyUnavailable,
)
from .fields import Field
from .linalg import (
    CoeffMatrix,
    IdentityTerm,
    LinearIdentity,
    UnknownBlock,
    _rref_fraction,
    _rref_mod_p,
    coefficient_matrix,
    linear_solve,
    nullspace_basis,
)
from .poly import (
    Polynomial,
    dehomogenize,
    format_polynomial,
    grevlex_key,
    homogenize,
    monomials_of_degree,
    monomials_up_to,
)
from .surface import SurfaceModel

IDEAL_SPAN = "ideal-span"
POINT_SAMPLING = "point-sampling"

# margin factor for parametrized sampling: a degree-m form vanishing at
# m*e + 1 points of a degree-e rational component vanishes on it; we take 3x.
SAMPLING_MARGIN = 3


@dataclass(frozen=True)
class AdjointSpace:
    """Basis of degree-bounded polynomials vanishing on the double curve.

    `basis` holds affine representatives (degree <= m); homogenizing each to
    degree m gives the matching slice of forms.  `certified` records whether
    the space provably equals the full adjoint system at this degree.
    """

    m: int
    basis: tuple
    strategy: str
    certified: bool
    certification: str

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class PicardSolution:
    A: Polynomial
    B: Polynomial
    C: Polynomial
    N: Polynomial

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero() and self.C.is_zero() and self.N.is_zero()

    def to_document(self) -> dict:
        return {
            "A": format_polynomial(self.A),
            "B": format_polynomial(self.B),
            "C": format_polynomial(self.C),
            "N": format_polynomial(self.N),
        }


@dataclass(frozen=True)
class PicardSolutionSpace:
    basis: tuple
    dim: int
    adjoint: AdjointSpace


@dataclass(frozen=True)
class HomogeneousSolution:
    X: tuple                      # X_1..X_4, homogeneous of degree d-3
    minors: tuple                 # the six 2x2 minors of [[X],[x]], degree d-2
    divergence: Polynomial        # sum dX_i/dx_i
    relation_ok: bool
    minors_adjoint: bool
    divergence_zero: bool
    equivalence_checked: bool     # affine defect = 0 <=> divergence = 0 asserted?
    warnings: tuple


@dataclass(frozen=True)
class GralResult:
    space_dim: int
    trivial_dim: int
    nontrivial: bool
    basis: tuple                  # tuples (Y1, Y2, Y3, Y4, Q)


@dataclass(frozen=True)
class SeveriReport:
    theta: Polynomial
    top_decomposition_ok: bool
    jacobian_vanishing: dict      # axis -> bool, only for supplied sample sets
    vacuous: bool


# -- helpers --------------------------------------------------------------------------


def _coeff_vector(p: Polynomial, monomials: list, index: dict) -> list:
    vec = [p.field.zero()] * len(monomials)
    for mono, coeff in p.terms.items():
        vec[index[mono]] = coeff
    return vec


def _vector_poly(field: Field, nvars: int, monomials: list, vector) -> Polynomial:
    return Polynomial(field, nvars, {m: c for m, c in zip(monomials, vector) if not field.is_zero(c)})


def _reduced_row_basis(polys, field: Field):
    """Reduced echelon basis of the span of the given polynomials."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    monomials = sorted({m for p in polys for m in p.terms}, key=grevlex_key)
    index = {m: i for i, m in enumerate(monomials)}
    rows = [{index[m]: c for m, c in p.terms.items()} for p in polys]
    if field.characteristic:
        _, pivot_rows = _rref_mod_p(rows, len(monomials), field.characteristic)
    else:
        _, pivot_rows = _rref_fraction(rows, len(monomials))
    nvars = polys[0].nvars
    return [
        Polynomial(field, nvars, {monomials[c]: v for c, v in row.items()})
        for row in pivot_rows
    ]


def membership_coordinates(target: Polynomial, basis, monomials=None):
    """Coordinates of `target` in the span of `basis`, or None."""
    field = target.field
    if monomials is None:
        monos = sorted(
            {m for p in basis for m in p.terms} | set(target.terms), key=grevlex_key
        )
    else:
        monos = monomials
    index = {m: i for i, m in enumerate(monos)}
    columns = [_coeff_vector(p, monos, index) for p in basis]
    rhs = _coeff_vector(target, monos, index)
    solved = linear_solve(columns, rhs, field)
    if solved is None:
        return None
    return solved[0]


# -- adjoint spaces --------------------------------------------------------------------


def adjoint_space(S: SurfaceModel, m: int, strategy: str | None = None) -> AdjointSpace:
    """Polynomials of degree <= m (affine) vanishing on the double curve.

    With an empty double curve this is the full degree-<=m space.  Otherwise
    the ideal-span strategy takes the degree-m slice of the ideal generated by
    the declared generators (exact whenever the generators generate in degree
    <= m, which the fixture asserts via `generators_complete`); the
    point-sampling strategy takes all forms vanishing on the declared samples,
    enlarged by parametrization-generated points when available.
    """
    field = S.field
    if m < 0:
        return AdjointSpace(m, (), strategy or IDEAL_SPAN, True, "empty degree range")
    if S.gamma_empty:
        basis = tuple(Polynomial.monomial(field, mono) for mono in monomials_up_to(3, m))
        return AdjointSpace(m, basis, strategy or IDEAL_SPAN, True, "double curve empty")

    if strategy is None:
        strategy = IDEAL_SPAN if S.double_curve_generators else POINT_SAMPLING
    if strategy == IDEAL_SPAN:
        if not S.double_curve_generators:
            raise StrategyUnavailable("ideal-span needs double-curve generators")
        products = []
        for g in S.double_curve_generators:
            room = m - g.degree()
            for mono in monomials_of_degree(4, room):
                products.append(Polynomial.monomial(field, mono) * g)
        slice_basis = _reduced_row_basis(products, field)
        basis = tuple(dehomogenize(b) for b in slice_basis)
        certified = S.generators_complete
        note = (
            "ideal slice; fixture asserts generators generate through this degree"
            if certified
            else "ideal slice; may be a proper subspace of the adjoint system"
        )
        space = AdjointSpace(m, basis, IDEAL_SPAN, certified, note)
    elif strategy == POINT_SAMPLING:
        points = list(S.double_curve_samples)
        generated_enough = bool(S.parametrizations)
        for coords in S.parametrizations:
            e = max(1, max((c.degree() for c in coords if not c.is_zero()), default=1))
            needed = SAMPLING_MARGIN * m * int(e) + 1
            count = needed
            if field.characteristic and field.characteristic < needed:
                count = field.characteristic
                generated_enough = False
            for t in range(count):
                points.append(tuple(c.evaluate((t, 0, 0)) for c in coords))
        if not points:
            raise StrategyUnavailable("point-sampling needs samples or parametrizations")
        monos = monomials_of_degree(4, m)
        col_index = {mono: i for i, mono in enumerate(monos)}
        rows = []
        for pt in points:
            row = {}
            for mono in monos:
                val = Polynomial.monomial(field, mono).evaluate(pt)
                if not field.is_zero(val):
                    row[col_index[mono]] = val
            rows.append(row)
        matrix = CoeffMatrix(
            field=field,
            rows=tuple(rows),
            nrows=len(rows),
            ncols=len(monos),
            row_labels=tuple(points),
            col_labels=tuple(monos),
            provenance=f"adjoint-sampling:{S.name}:m{m}",
        )
        vectors = nullspace_basis(matrix).vectors
        basis = tuple(
            dehomogenize(_vector_poly(field, 4, monos, vec)) for vec in vectors
        )
        certified = generated_enough
        note = (
            "sampled from declared parametrizations with margin"
            if certified
            else "sampled, not certified"
        )
        space = AdjointSpace(m, basis, POINT_SAMPLING, certified, note)
    else:
        raise StrategyUnavailable(f"unknown adjointness strategy {strategy!r}")

    for b in space.basis:
        hb = homogenize(b, m)
        for pt in S.double_curve_samples:
            if not field.is_zero(hb.evaluate(pt)):
                raise InvariantViolation(
                    "adjoint basis member does not vanish at a double-curve sample",
                    (format_polynomial(b), pt),
                )
    return space


# -- the Picard solver ------------------------------------------------------------------


def picard_residual(S: SurfaceModel, sol: PicardSolution) -> Polynomial:
    f = S.f
    return sol.A * f.diff(0) + sol.B * f.diff(1) + sol.C * f.diff(2) - sol.N * f


def is_solution(S: SurfaceModel, sol: PicardSolution) -> bool:
    return picard_residual(S, sol).is_zero()


def _require_solution(S: SurfaceModel, sol: PicardSolution):
    if not is_solution(S, sol):
        raise NotASolution("tuple does not satisfy Picard's relation exactly")


def solve_picard(S: SurfaceModel, strategy: str | None = None) -> PicardSolutionSpace:
    """Exact basis of all Picard-relation solutions within the degree bounds.

    A, B, C range over the degree-(d-2) adjoint space, N over all polynomials
    of degree <= d-3.  Every basis element is re-verified by polynomial
    arithmetic before it is returned.
    """
    if S.f.is_zero():
        raise ContractViolation("surface has zero affine equation")
    field = S.field
    d = S.d
    adj = adjoint_space(S, d - 2, strategy)
    n_monos = monomials_up_to(3, d - 3)
    n_basis = tuple(Polynomial.monomial(field, mono) for mono in n_monos)
    f = S.f
    identity = LinearIdentity(
        blocks=(
            UnknownBlock("A", adj.basis),
            UnknownBlock("B", adj.basis),
            UnknownBlock("C", adj.basis),
            UnknownBlock("N", n_basis),
        ),
        terms=(
            IdentityTerm(f.diff(0), ("A",)),
            IdentityTerm(f.diff(1), ("B",)),
            IdentityTerm(f.diff(2), ("C",)),
            IdentityTerm(-f, ("N",)),
        ),
        provenance=f"picard:{S.name}",
    )
    matrix = coefficient_matrix(identity)
    ns = nullspace_basis(matrix)
    k = adj.dim
    solutions = []
    for vec in ns.vectors:
        blocks = (vec[0:k], vec[k : 2 * k], vec[2 * k : 3 * k], vec[3 * k :])
        A = _combine(field, adj.basis, blocks[0])
        B = _combine(field, adj.basis, blocks[1])
        C = _combine(field, adj.basis, blocks[2])
        N = _combine(field, n_basis, blocks[3])
        sol = PicardSolution(A, B, C, N)
        if not is_solution(S, sol):
            raise AssertionError("solver emitted a tuple violating Picard's relation")
        solutions.append(sol)
    return PicardSolutionSpace(basis=tuple(solutions), dim=ns.dim, adjoint=adj)


def _combine(field: Field, basis, coords) -> Polynomial:
    nvars = basis[0].nvars if basis else 3
    total = Polynomial.zero(field, nvars)
    for b, c in zip(basis, coords):
        if not field.is_zero(c):
            total = total + b.scale(c)
    return total


def complete_triple(
    S: SurfaceModel, A: Polynomial, space: PicardSolutionSpace | None = None
) -> PicardSolution:
    """The unique (B, C, N) completing A to a Picard solution.

    Computed as the fiber of the A-component projection of the solution space:
    an empty fiber raises NoCompletion (legal: A adjoint but not through the
    jacobian scheme), a positive-dimensional fiber raises NonUniqueCompletion
    (a genericity/ordinarity violation).
    """
    if space is None:
        space = solve_picard(S)
    field = S.field
    membership = membership_coordinates(A, list(space.adjoint.basis))
    if membership is None:
        raise ContractViolation("A is not in the degree-(d-2) adjoint space")
    monos = monomials_up_to(3, S.d - 2)
    index = {m: i for i, m in enumerate(monos)}
    columns = [_coeff_vector(sol.A, monos, index) for sol in space.basis]
    rhs = _coeff_vector(A, monos, index)
    solved = linear_solve(columns, rhs, field)
    if solved is None:
        raise NoCompletion("no Picard solution has this A-component")
    coords, kernel_dim = solved
    if kernel_dim > 0:
        raise NonUniqueCompletion(
            f"completion fiber has dimension {kernel_dim}; genericity violated"
        )
    B = _combine(field, [s.B for s in space.basis], coords)
    C = _combine(field, [s.C for s in space.basis], coords)
    N = _combine(field, [s.N for s in space.basis], coords)
    sol = PicardSolution(A, B, C, N)
    _require_solution(S, sol)
    return sol


# -- closedness -------------------------------------------------------------------------


def integrability_defect(S: SurfaceModel, sol: PicardSolution) -> Polynomial:
    """Q = A_x + B_y + C_z - N; zero exactly when the 1-form is closed.

    deg Q <= d-4 always (the degree-bound lemma).  On ordinary fixtures in
    characteristic zero a nonzero Q is impossible and raises; elsewhere Q is
    simply returned for reporting.
    """
    _require_solution(S, sol)
    Q = sol.A.diff(0) + sol.B.diff(1) + sol.C.diff(2) - sol.N
    assert Q.degree() <= S.d - 4, (
        f"integrability defect has degree {Q.degree()} > d-4 = {S.d - 4}"
    )
    if S.field.characteristic == 0 and S.ordinary and not Q.is_zero():
        raise ClosednessViolation(
            f"nonzero defect {format_polynomial(Q)} on ordinary characteristic-0 fixture {S.name}"
        )
    return Q


def chart_identity_check(S: SurfaceModel, sol: PicardSolution) -> bool:
    """Verify the chart computation behind the defect formula, as a pure
    polynomial identity:

    f_z^2 (A_x + B_y) - f_z (A f_zx + A_z f_x + B f_zy + B_z f_y)
        + f_zz (A f_x + B f_y)
      = f_z^2 (A_x + B_y + C_z - N) + f (N f_zz - f_z N_z)
    """
    _require_solution(S, sol)
    f = S.f
    fx, fy, fz = f.diff(0), f.diff(1), f.diff(2)
    fzx, fzy, fzz = fz.diff(0), fz.diff(1), fz.diff(2)
    A, B, C, N = sol.A, sol.B, sol.C, sol.N
    lhs = (
        fz * fz * (A.diff(0) + B.diff(1))
        - fz * (A * fzx + A.diff(2) * fx + B * fzy + B.diff(2) * fy)
        + fzz * (A * fx + B * fy)
    )
    rhs = fz * fz * (A.diff(0) + B.diff(1) + C.diff(2) - N) + f * (N * fzz - fz * N.diff(2))
    return lhs == rhs


def homogenize_solution(S: SurfaceModel, sol: PicardSolution) -> HomogeneousSolution:
    """Homogeneous form: X_1 = homog(dA - xN), cyclically, X_4 = -homog(N),
    all of degree exactly d-3, satisfying X_1 F_1 + ... + X_4 F_4 = 0.

    Also checks the six dehomogenized minors of [[X_1..X_4], [x_1..x_4]]
    against the degree-(d-2) adjoint space, and compares the homogeneous
    divergence with the affine integrability defect.  The equivalence
    assertion is scoped to surfaces with F_4 not identically zero (and p not
    dividing d); outside that scope the observation is recorded as a warning
    instead.
    """
    _require_solution(S, sol)
    field = S.field
    d = S.d
    x, y, z = (Polynomial.variable(field, 3, i) for i in range(3))
    affine_parts = (
        sol.A.scale(d) - x * sol.N,
        sol.B.scale(d) - y * sol.N,
        sol.C.scale(d) - z * sol.N,
        -sol.N,
    )
    for u in affine_parts:
        if u.degree() > d - 3:
            raise DegreeOverflow(
                f"homogeneous component would need degree {u.degree()} > d-3 = {d - 3}"
            )
    X = tuple(homogenize(u, d - 3) for u in affine_parts)

    relation = Polynomial.zero(field, 4)
    for Xi, i in zip(X, range(4)):
        relation = relation + Xi * S.F.diff(i)
    if not relation.is_zero():
        raise AssertionError("homogeneous Picard relation failed; upstream bug")

    xvars = tuple(Polynomial.variable(field, 4, i) for i in range(4))
    minors = []
    for i in range(4):
        for j in range(i + 1, 4):
            minors.append(X[i] * xvars[j] - X[j] * xvars[i])
    adj = adjoint_space(S, d - 2)
    minors_adjoint = all(
        membership_coordinates(dehomogenize(minor), list(adj.basis)) is not None
        for minor in minors
    )

    divergence = Polynomial.zero(field, 4)
    for i in range(4):
        divergence = divergence + X[i].diff(i)

    Q = sol.A.diff(0) + sol.B.diff(1) + sol.C.diff(2) - sol.N
    warnings = []
    f4_nonzero = not S.F.diff(3).is_zero()
    d_invertible = field.characteristic == 0 or S.d % field.characteristic != 0
    equivalence_checked = f4_nonzero and d_invertible
    if equivalence_checked:
        if Q.is_zero() != divergence.is_zero():
            raise AssertionError(
                "affine defect and homogeneous divergence disagree on a generic fixture"
            )
    else:
        reason = "F_4 vanishes identically (cone fixture)" if not f4_nonzero else "p divides d"
        agrees = Q.is_zero() == divergence.is_zero()
        warnings.append(
            f"affine/homogeneous equivalence not asserted: {reason}; observed agreement: {agrees}"
        )
    return HomogeneousSolution(
        X=X,
        minors=tuple(minors),
        divergence=divergence,
        relation_ok=True,
        minors_adjoint=minors_adjoint,
        divergence_zero=divergence.is_zero(),
        equivalence_checked=equivalence_checked,
        warnings=tuple(warnings),
    )


# -- the Segre-letter problem -------------------------------------------------------------


def gral_solve(S: SurfaceModel, strategy: str | None = None) -> GralResult:
    """Solve Y_1 F_1 + ... + Y_4 F_4 = Q F with each Y_i adjoint of degree
    d-3 and Q of degree d-4, and compare against the trivial Euler family
    Y_i = x_i Q / d over adjoint Q.

    `nontrivial` is True exactly when the solution space is strictly larger
    than the trivial family.
    """
    field = S.field
    if field.characteristic and S.d % field.characteristic == 0:
        raise CharacteristicDividesDegree(
            f"trivial-family comparison divides by d = {S.d} in characteristic {field.characteristic}"
        )
    adj = adjoint_space(S, S.d - 3, strategy)
    y_basis = tuple(homogenize(b, S.d - 3) for b in adj.basis)
    q_basis = tuple(Polynomial.monomial(field, mono) for mono in monomials_of_degree(4, S.d - 4))
    blocks = [UnknownBlock(f"Y{i + 1}", y_basis) for i in range(4)]
    blocks.append(UnknownBlock("Q", q_basis))
    terms = [IdentityTerm(S.F.diff(i), (f"Y{i + 1}",)) for i in range(4)]
    terms.append(IdentityTerm(-S.F, ("Q",)))
    identity = LinearIdentity(tuple(blocks), tuple(terms), provenance=f"gral:{S.name}")
    ns = nullspace_basis(coefficient_matrix(identity))

    k = len(y_basis)
    solutions = []
    for vec in ns.vectors:
        Ys = tuple(_combine4(field, y_basis, vec[i * k : (i + 1) * k]) for i in range(4))
        Qp = _combine4(field, q_basis, vec[4 * k :])
        check = -Qp * S.F
        for Yi, i in zip(Ys, range(4)):
            check = check + Yi * S.F.diff(i)
        if not check.is_zero():
            raise AssertionError("gral solver emitted an invalid tuple")
        solutions.append(Ys + (Qp,))

    trivial_dim = adjoint_space(S, S.d - 4, strategy).dim if S.d - 4 >= 0 else 0
    return GralResult(
        space_dim=ns.dim,
        trivial_dim=trivial_dim,
        nontrivial=ns.dim > trivial_dim,
        basis=tuple(solutions),
    )


def _combine4(field: Field, basis, coords) -> Polynomial:
    total = Polynomial.zero(field, 4)
    for b, c in zip(basis, coords):
        if not field.is_zero(c):
            total = total + b.scale(c)
    return total


# -- Severi structure ----------------------------------------------------------------------


def severi_structure_check(S: SurfaceModel, sol: PicardSolution) -> SeveriReport:
    """Top-degree structure of a solution: with theta the degree-(d-3)
    component of N divided by d, the degree-(d-2) components must satisfy
    A_top = x theta, B_top = y theta, C_top = z theta (the three surfaces cut
    the plane at infinity in the same curve).  When the fixture supplies
    jacobian-scheme samples, A is also checked to vanish on the axis-1 system
    (cyclically for B, C)."""
    _require_solution(S, sol)
    field = S.field
    d = S.d
    if field.characteristic and d % field.characteristic == 0:
        raise CharacteristicDividesDegree("theta extraction divides by d")
    n_top = sol.N.homogeneous_component(d - 3)
    theta = n_top.scale(field.inv(field.coerce(d))) if not n_top.is_zero() else n_top
    x, y, z = (Polynomial.variable(field, 3, i) for i in range(3))
    ok = (
        sol.A.homogeneous_component(d - 2) == x * theta
        and sol.B.homogeneous_component(d - 2) == y * theta
        and sol.C.homogeneous_component(d - 2) == z * theta
    )
    vanishing = {}
    for axis, poly in ((1, sol.A), (2, sol.B), (3, sol.C)):
        pts = S.jacobian_samples.get(axis)
        if pts:
            vanishing[axis] = all(field.is_zero(poly.evaluate(pt)) for pt in pts)
    return SeveriReport(
        theta=theta,
        top_decomposition_ok=ok,
        jacobian_vanishing=vanishing,
        vacuous=sol.is_zero(),
    )
