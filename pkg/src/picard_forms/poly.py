"""Sparse multivariate polynomial arithmetic over an exact field.

A polynomial is a mapping from exponent tuples to nonzero field elements:

    x^2*y - 3  (3 variables)  ->  {(2, 1, 0): Fraction(1), (0, 0, 0): Fraction(-3)}

Conventions fixed for the whole workbench:

* 3 variables (x, y, z) for affine charts, 4 variables (x, y, z, w) for
  homogeneous forms; w is the homogenizing variable.
* Term order is graded reverse lexicographic with x > y > z > w, used for all
  serialization and for row/column indexing of coefficient matrices.
* The degree of the zero polynomial is the float -inf sentinel NEG_DEGREE,
  never an integer, so degree-bound arithmetic cannot silently absorb it.

Values are immutable after construction; every operation returns a fresh
polynomial.  Randomness (coordinate changes) happens only through explicit
seeds.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegreeTooSmall,
    IncompatibleOperands,
    IndexOutOfRange,
    NotHomogeneous,
    ParseError,
)
from .fields import Field

NEG_DEGREE = float("-inf")

VAR_NAMES = ("x", "y", "z", "w")

Monomial = tuple  # exponent tuple, one slot per variable


def grevlex_key(mono: Monomial):
    """Sort key putting monomials in descending graded reverse lex order."""
    return (-sum(mono), tuple(reversed(mono)))


def monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    """All exponent tuples of total degree exactly `degree`, grevlex-descending."""
    if degree < 0:
        return []
    monos = [
        exps
        for exps in itertools.product(range(degree + 1), repeat=nvars)
        if sum(exps) == degree
    ]
    monos.sort(key=grevlex_key)
    return monos


def monomials_up_to(nvars: int, degree: int) -> list[Monomial]:
    """All exponent tuples of total degree <= degree, grevlex-descending."""
    monos: list[Monomial] = []
    for d in range(degree, -1, -1):
        monos.extend(monomials_of_degree(nvars, d))
    monos.sort(key=grevlex_key)
    return monos


class Polynomial:
    """Immutable sparse polynomial over a Field, in 3 or 4 variables."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: dict):
        if nvars not in (1, 2, 3, 4):
            raise IncompatibleOperands(f"nvars must be 3 or 4 (got {nvars})")
        clean = {}
        for mono, coeff in terms.items():
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise IncompatibleOperands(f"bad exponent tuple {mono} for nvars={nvars}")
            c = field.coerce(coeff)
            if not field.is_zero(c):
                clean[tuple(mono)] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("Polynomial is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "Polynomial":
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, value) -> "Polynomial":
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field: Field, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexOutOfRange(f"variable index {index} for nvars={nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return cls(field, nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, field: Field, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(field, len(exps), {tuple(exps): coeff})

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self):
        """Total degree; NEG_DEGREE for the zero polynomial."""
        if not self.terms:
            return NEG_DEGREE
        return max(sum(m) for m in self.terms)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.field.zero())

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, degree: int) -> "Polynomial":
        return Polynomial(
            self.field,
            self.nvars,
            {m: c for m, c in self.terms.items() if sum(m) == degree},
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: grevlex_key(item[0]))

    # -- ring operations -------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.field != other.field or self.nvars != other.nvars:
            raise IncompatibleOperands(
                f"mixed operands: {self.field.describe()}/{self.nvars} vs "
                f"{other.field.describe()}/{other.nvars}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.field, self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, F.zero()), c)
        return Polynomial(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(F, self.nvars, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.field, self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        F = self.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prod = F.mul(c1, c2)
                if m in out:
                    out[m] = F.add(out[m], prod)
                else:
                    out[m] = prod
        return Polynomial(F, self.nvars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, scalar) -> "Polynomial":
        F = self.field
        c = F.coerce(scalar)
        if F.is_zero(c):
            return Polynomial.zero(F, self.nvars)
        return Polynomial(F, self.nvars, {m: F.mul(v, c) for m, v in self.terms.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise IncompatibleOperands("polynomial powers need a nonnegative int")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    # -- calculus and evaluation ------------------------------------------------

    def diff(self, var_index: int) -> "Polynomial":
        """Formal partial derivative; exponents reduce in the field, so for
        example d/dx x^3 = 0 over GF(3)."""
        if not 0 <= var_index < self.nvars:
            raise IndexOutOfRange(f"variable index {var_index} for nvars={self.nvars}")
        F = self.field
        out: dict = {}
        for m, c in self.terms.items():
            e = m[var_index]
            if e == 0:
                continue
            dm = list(m)
            dm[var_index] = e - 1
            dm = tuple(dm)
            val = F.mul(c, F.coerce(e))
            if dm in out:
                out[dm] = F.add(out[dm], val)
            else:
                out[dm] = val
        return Polynomial(F, self.nvars, out)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise IndexOutOfRange(
                f"point has {len(point)} coordinates, polynomial has {self.nvars} variables"
            )
        F = self.field
        p = F.characteristic
        coords = [F.coerce(v) for v in point]
        total = F.zero()
        for m, c in self.terms.items():
            val = c
            for base, e in zip(coords, m):
                if e:
                    val = F.mul(val, base**e if p == 0 else pow(base, e, p))
            total = F.add(total, val)
        return total

    # -- text form ----------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.field.describe()}, {self.nvars}, {format_polynomial(self)!r})"


# -- homogenization ----------------------------------------------------------------


def homogenize(p: Polynomial, target_degree: int) -> Polynomial:
    """Introduce w so the result is homogeneous of exactly target_degree.

    Every term of affine degree j picks up w^(target_degree - j).
    """
    if p.nvars != 3:
        raise IncompatibleOperands("homogenize expects an affine (3-variable) polynomial")
    deg = p.degree()
    if p.terms and target_degree < deg:
        raise DegreeTooSmall(f"target degree {target_degree} < deg p = {deg}")
    if target_degree < 0:
        # only the zero polynomial reaches here
        return Polynomial.zero(p.field, 4)
    out = {m + (target_degree - sum(m),): c for m, c in p.terms.items()}
    return Polynomial(p.field, 4, out)


def dehomogenize(P: Polynomial) -> Polynomial:
    """Set w = 1, returning the affine 3-variable polynomial."""
    if P.nvars != 4:
        raise IncompatibleOperands("dehomogenize expects a 4-variable polynomial")
    F = P.field
    out: dict = {}
    for m, c in P.terms.items():
        key = m[:3]
        if key in out:
            out[key] = F.add(out[key], c)
        else:
            out[key] = c
    return Polynomial(F, 3, out)


def euler_residual(P: Polynomial) -> Polynomial:
    """sum_i x_i * dP/dx_i - deg(P) * P, identically zero for homogeneous P.

    The identity is formal and holds over every field (the degree acts through
    its image in the field).
    """
    if not P.is_homogeneous():
        raise NotHomogeneous("euler_residual needs a homogeneous polynomial")
    if P.is_zero():
        return P
    d = P.degree()
    total = Polynomial.zero(P.field, P.nvars)
    for i in range(P.nvars):
        total = total + Polynomial.variable(P.field, P.nvars, i) * P.diff(i)
    return total - P.scale(d)


# -- linear coordinate changes -------------------------------------------------------


def apply_substitution(p: Polynomial, matrix: Sequence[Sequence]) -> Polynomial:
    """Substitute variable i by the linear form sum_j matrix[i][j] * x_j."""
    n = p.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise IncompatibleOperands(f"substitution matrix must be {n}x{n}")
    F = p.field
    forms = [
        Polynomial(F, n, {tuple(1 if k == j else 0 for k in range(n)): matrix[i][j] for j in range(n)})
        for i in range(n)
    ]
    result = Polynomial.zero(F, n)
    # cache powers of each substituted variable as needed
    power_cache: list[dict[int, Polynomial]] = [dict() for _ in range(n)]

    def form_power(i: int, e: int) -> Polynomial:
        cached = power_cache[i].get(e)
        if cached is None:
            cached = forms[i] ** e
            power_cache[i][e] = cached
        return cached

    for m, c in p.terms.items():
        term = Polynomial.constant(F, n, c)
        for i, e in enumerate(m):
            if e:
                term = term * form_power(i, e)
        result = result + term
    return result


def matrix_determinant(matrix: Sequence[Sequence], field: Field):
    """Exact determinant by fraction-free-ish Gaussian elimination (tiny sizes)."""
    n = len(matrix)
    rows = [[field.coerce(v) for v in row] for row in matrix]
    det = field.one()
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not field.is_zero(rows[r][col]):
                pivot = r
                break
        if pivot is None:
            return field.zero()
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = field.neg(det)
        det = field.mul(det, rows[col][col])
        inv = field.inv(rows[col][col])
        for r in range(col + 1, n):
            if field.is_zero(rows[r][col]):
                continue
            factor = field.mul(rows[r][col], inv)
            rows[r] = [field.sub(a, field.mul(factor, b)) for a, b in zip(rows[r], rows[col])]
    return det


def matrix_inverse(matrix: Sequence[Sequence], field: Field) -> list[list]:
    """Exact inverse via Gauss-Jordan on the augmented matrix."""
    n = len(matrix)
    rows = [[field.coerce(v) for v in row] + [field.one() if i == j else field.zero() for j in range(n)]
            for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not field.is_zero(rows[r][col]):
                pivot = r
                break
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = field.inv(rows[col][col])
        rows[col] = [field.mul(v, inv) for v in rows[col]]
        for r in range(n):
            if r != col and not field.is_zero(rows[r][col]):
                factor = rows[r][col]
                rows[r] = [field.sub(a, field.mul(factor, b)) for a, b in zip(rows[r], rows[col])]
    return [row[n:] for row in rows]


def matrix_apply(matrix: Sequence[Sequence], vector: Sequence, field: Field) -> list:
    return [
        _dot(row, vector, field)
        for row in matrix
    ]


def _dot(row, vector, field):
    total = field.zero()
    for a, b in zip(row, vector):
        total = field.add(total, field.mul(field.coerce(a), field.coerce(b)))
    return total


def sample_invertible_matrix(field: Field, seed: int, size: int = 4) -> list[list]:
    """Seeded random invertible matrix with small entries.

    Singular draws are resampled internally and never surface.
    """
    rng = random.Random(f"coordinate-change:{seed}")
    while True:
        if field.characteristic == 0:
            matrix = [[Fraction(rng.randint(-3, 3)) for _ in range(size)] for _ in range(size)]
        else:
            p = field.characteristic
            matrix = [[rng.randrange(p) for _ in range(size)] for _ in range(size)]
        if not field.is_zero(matrix_determinant(matrix, field)):
            return matrix


def random_coordinate_change(p: Polynomial, seed: int):
    """Apply a seeded random invertible linear substitution.

    Returns (transformed polynomial, matrix).  Applying the recorded inverse
    matrix with apply_substitution recovers the input exactly.
    """
    if p.nvars != 4:
        raise IncompatibleOperands("random_coordinate_change expects a 4-variable polynomial")
    matrix = sample_invertible_matrix(p.field, seed, size=4)
    return apply_substitution(p, matrix), matrix


# -- text syntax -------------------------------------------------------------------
#
# poly   := [sign] term (sign term)*
# term   := coeff factors | factors (juxtaposition means multiplication)
# coeff  := INT [/ INT]
# factor := var [^ INT]


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^":
            tokens.append((ch, ch))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch in VAR_NAMES:
            tokens.append(("var", ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in polynomial text")
    return tokens


def parse_polynomial(text: str, field: Field, nvars: int) -> Polynomial:
    """Parse the fixture syntax: rational coefficients, variables x,y,z,w, ^ powers."""
    if nvars not in (3, 4):
        raise IncompatibleOperands("parse_polynomial supports 3 or 4 variables")
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    allowed = VAR_NAMES[:nvars]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of polynomial text")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_term():
        # returns (coefficient as Fraction, exponent list)
        coeff = Fraction(1)
        exps = [0] * nvars
        saw_factor = False
        expect_factor = True
        while True:
            kind, value = peek()
            if kind == "int":
                take()
                num = value
                if peek()[0] == "/":
                    take()
                    dkind, dval = take()
                    if dkind != "int":
                        raise ParseError("expected integer denominator")
                    coeff *= Fraction(num, dval)
                else:
                    coeff *= num
                saw_factor = True
            elif kind == "var":
                take()
                if value not in allowed:
                    raise ParseError(f"variable {value!r} not allowed with nvars={nvars}")
                e = 1
                if peek()[0] == "^":
                    take()
                    ekind, eval_ = take()
                    if ekind != "int":
                        raise ParseError("expected integer exponent after ^")
                    e = eval_
                exps[VAR_NAMES.index(value)] += e
                saw_factor = True
            elif kind == "*":
                take()
                expect_factor = True
                continue
            else:
                break
            expect_factor = False
        if not saw_factor or expect_factor:
            raise ParseError("malformed term in polynomial text")
        return coeff, tuple(exps)

    terms: dict = {}
    sign = 1
    kind, _ = peek()
    if kind in ("+", "-"):
        sign = -1 if take()[0] == "-" else 1
    while True:
        coeff, exps = parse_term()
        coeff *= sign
        terms[exps] = terms.get(exps, Fraction(0)) + coeff
        kind, _ = peek()
        if kind is None:
            break
        if kind not in ("+", "-"):
            raise ParseError(f"expected + or - between terms, found {kind!r}")
        sign = -1 if take()[0] == "-" else 1
    return Polynomial(field, nvars, terms)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text: terms in descending grevlex order; exact round trip."""
    if p.is_zero():
        return "0"
    rational = p.field.characteristic == 0
    pieces = []
    for mono, coeff in p.sorted_terms():
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(VAR_NAMES, mono)
            if e
        ]
        if rational:
            negative = coeff < 0
            mag = -coeff if negative else coeff
        else:
            negative = False
            mag = coeff
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append(("-" if negative else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
