"""Exact nullspace computation for coefficient matrices of polynomial identities.

The rational-field strategy: eliminate modulo one or more fixed 62-bit primes,
lift the (unique) reduced row echelon form by Chinese remaindering plus
rational reconstruction, and verify every candidate nullspace vector exactly
against the original matrix.  Verification makes the fast path unconditional:
an unlucky prime produces a vector that fails the exact check, which bumps the
computation to the next prime, and after too many failures we fall back on
plain fraction elimination.  No randomness is involved, so identical inputs
give bit-identical bases.

Pivoting is leftmost-lowest: scan columns left to right in the fixed column
order, break ties by row index.  Basis vectors are normalized per field
(primitive integer vectors with positive leading entry over the rationals,
monic leading entry over a prime field) and carry a 1-scaled unit in their own
free column, zeros in all other free columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import IncompatibleOperands, NotLinear
from .fields import Field, next_prime
from .poly import Polynomial, grevlex_key

DENSE_COLUMN_LIMIT = 64
_MODULUS_BASE = 1 << 62
_MAX_PRIMES = 16

_prime_cache: list[int] = []


def _engine_prime(index: int) -> int:
    """Deterministic sequence of 62-bit primes used by the modular path."""
    while len(_prime_cache) <= index:
        start = _prime_cache[-1] if _prime_cache else _MODULUS_BASE
        _prime_cache.append(next_prime(start))
    return _prime_cache[index]


# -- matrices ---------------------------------------------------------------------


@dataclass(frozen=True)
class CoeffMatrix:
    """Sparse row-major matrix with recorded row/column index maps.

    Rows are labelled by monomials of the generating identity, columns by
    (block name, basis index) pairs; entries are exact field elements.
    """

    field: Field
    rows: tuple
    nrows: int
    ncols: int
    row_labels: tuple
    col_labels: tuple
    provenance: str

    def entry(self, r: int, c: int):
        return self.rows[r].get(c, self.field.zero())

    def apply(self, vector: Sequence) -> list:
        """M . v, exactly."""
        F = self.field
        out = []
        for row in self.rows:
            total = F.zero()
            for c, val in row.items():
                total = F.add(total, F.mul(val, vector[c]))
            out.append(total)
        return out

    def dump_text(self) -> str:
        """Debug dump: header plus one `row col value` triple per line."""
        lines = [f"# rows {self.nrows} cols {self.ncols} provenance {self.provenance}"]
        for r, row in enumerate(self.rows):
            for c in sorted(row):
                lines.append(f"{r} {c} {self.field.format(row[c])}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class NullspaceBasis:
    vectors: tuple
    dim: int


@dataclass(frozen=True)
class UnknownBlock:
    """An unknown polynomial presented as an unknown linear combination of
    fixed basis polynomials."""

    name: str
    basis: tuple

    def __len__(self):
        return len(self.basis)


@dataclass(frozen=True)
class IdentityTerm:
    """One product in a linear identity: multiplier * (each named block)."""

    multiplier: Polynomial
    blocks: tuple


@dataclass(frozen=True)
class LinearIdentity:
    """A polynomial identity, linear-homogeneous in the unknown blocks,
    asserted to vanish identically."""

    blocks: tuple
    terms: tuple
    provenance: str = ""


# matrix dump sink, installed by the CLI --dump-matrices flag
_dump_sink: Callable[[CoeffMatrix], None] | None = None


def set_matrix_dump_sink(sink: Callable[[CoeffMatrix], None] | None):
    global _dump_sink
    _dump_sink = sink


def coefficient_matrix(identity: LinearIdentity) -> CoeffMatrix:
    """Assemble the sparse matrix whose nullspace is the identity's solution set.

    Columns follow the declared block order, then basis order inside a block.
    Rows are the monomials occurring in any multiplier*basis product, in
    descending grevlex order.
    """
    block_map = {b.name: b for b in identity.blocks}
    if len(block_map) != len(identity.blocks):
        raise NotLinear("duplicate unknown block names")
    for term in identity.terms:
        if len(term.blocks) == 0:
            raise NotLinear("term with no unknown block makes the identity inhomogeneous")
        if len(term.blocks) > 1:
            raise NotLinear(f"term multiplies unknown blocks {term.blocks}; not linear")
        if term.blocks[0] not in block_map:
            raise NotLinear(f"unknown block {term.blocks[0]!r} not declared")

    fields = {b.field for block in identity.blocks for b in block.basis}
    fields.update(t.multiplier.field for t in identity.terms)
    nvars = {b.nvars for block in identity.blocks for b in block.basis}
    nvars.update(t.multiplier.nvars for t in identity.terms)
    if len(fields) > 1 or len(nvars) > 1:
        raise IncompatibleOperands("identity mixes fields or variable counts")
    F = fields.pop() if fields else Field.rationals()

    col_labels = []
    col_of = {}
    for block in identity.blocks:
        for i in range(len(block.basis)):
            col_of[(block.name, i)] = len(col_labels)
            col_labels.append((block.name, i))

    # column -> {monomial: coeff}, summed over all terms touching the column
    columns: dict[int, dict] = {}
    monomials = set()
    for term in identity.terms:
        block = block_map[term.blocks[0]]
        for i, basis_poly in enumerate(block.basis):
            product = term.multiplier * basis_poly
            if product.is_zero():
                continue
            col = col_of[(block.name, i)]
            dest = columns.setdefault(col, {})
            for mono, coeff in product.terms.items():
                acc = dest.get(mono)
                dest[mono] = F.add(acc, coeff) if acc is not None else coeff
                monomials.add(mono)

    row_labels = tuple(sorted(monomials, key=grevlex_key))
    row_of = {m: r for r, m in enumerate(row_labels)}
    rows: list[dict] = [dict() for _ in row_labels]
    for col, poly_terms in columns.items():
        for mono, coeff in poly_terms.items():
            if not F.is_zero(coeff):
                rows[row_of[mono]][col] = coeff

    matrix = CoeffMatrix(
        field=F,
        rows=tuple(rows),
        nrows=len(row_labels),
        ncols=len(col_labels),
        row_labels=row_labels,
        col_labels=tuple(col_labels),
        provenance=identity.provenance,
    )
    if _dump_sink is not None:
        _dump_sink(matrix)
    return matrix


# -- echelon forms -----------------------------------------------------------------


def _rref_mod_p(rows: list[dict], ncols: int, p: int):
    """Gauss-Jordan over GF(p) on sparse dict rows.

    Returns (pivot_cols, reduced_rows) with reduced_rows[i] the monic pivot
    row for pivot_cols[i].
    """
    work = [dict(r) for r in rows]
    pivot_cols: list[int] = []
    pivot_rows: list[dict] = []
    used = [False] * len(work)
    for col in range(ncols):
        pivot_index = None
        for r, row in enumerate(work):
            if not used[r] and row.get(col, 0) % p != 0:
                pivot_index = r
                break
        if pivot_index is None:
            continue
        used[pivot_index] = True
        prow = {c: v % p for c, v in work[pivot_index].items() if v % p}
        inv = pow(prow[col], -1, p)
        prow = {c: v * inv % p for c, v in prow.items()}
        for r, row in enumerate(work):
            if r == pivot_index:
                continue
            factor = row.get(col, 0) % p
            if factor == 0:
                continue
            for c, v in prow.items():
                nv = (row.get(c, 0) - factor * v) % p
                if nv:
                    row[c] = nv
                elif c in row:
                    del row[c]
        work[pivot_index] = prow
        pivot_cols.append(col)
        pivot_rows.append(prow)
    return pivot_cols, pivot_rows


def _rref_fraction(rows: list[dict], ncols: int):
    """Plain fraction Gauss-Jordan; the unconditional but slow route."""
    work = [{c: Fraction(v) for c, v in r.items()} for r in rows]
    pivot_cols: list[int] = []
    pivot_rows: list[dict] = []
    used = [False] * len(work)
    for col in range(ncols):
        pivot_index = None
        for r, row in enumerate(work):
            if not used[r] and row.get(col):
                pivot_index = r
                break
        if pivot_index is None:
            continue
        used[pivot_index] = True
        prow = work[pivot_index]
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items() if v}
        for r, row in enumerate(work):
            if r == pivot_index:
                continue
            factor = row.get(col)
            if not factor:
                continue
            for c, v in prow.items():
                nv = row.get(c, Fraction(0)) - factor * v
                if nv:
                    row[c] = nv
                elif c in row:
                    del row[c]
        work[pivot_index] = prow
        pivot_cols.append(col)
        pivot_rows.append(prow)
    return pivot_cols, pivot_rows


def _nullspace_from_rref(pivot_cols, pivot_rows, ncols, one, neg):
    """Canonical nullspace basis: one vector per free column."""
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    vectors = []
    for free in free_cols:
        vec = [0] * ncols
        vec[free] = one
        for pcol, prow in zip(pivot_cols, pivot_rows):
            entry = prow.get(free)
            if entry:
                vec[pcol] = neg(entry)
        vectors.append(vec)
    return vectors


def _normalize_rational(vec: list[Fraction]) -> tuple:
    """Primitive integer vector with positive leading entry."""
    denom = math.lcm(*(f.denominator for f in vec if f) or [1])
    ints = [int(f * denom) for f in vec]
    g = math.gcd(*(abs(v) for v in ints if v) or [1])
    if g:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-u for u in ints]
            break
    return tuple(Fraction(v) for v in ints)


def _rational_reconstruct(residue: int, modulus: int) -> Fraction | None:
    """Recover a/b from a*b^-1 mod m with |a|, b <= sqrt(m/2)."""
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 > bound or t1 == 0 or abs(t1) > bound or math.gcd(r1, t1) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return Fraction(r1, t1)


def _integer_rows(matrix: CoeffMatrix) -> list[dict]:
    """Clear denominators row by row; nullspace is unchanged."""
    out = []
    for row in matrix.rows:
        if not row:
            out.append({})
            continue
        denom = math.lcm(*(v.denominator for v in row.values()))
        ints = {c: int(v * denom) for c, v in row.items()}
        g = math.gcd(*(abs(v) for v in ints.values()))
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        out.append(ints)
    return out


def _verify_exact(matrix: CoeffMatrix, vector: Sequence) -> bool:
    F = matrix.field
    for row in matrix.rows:
        total = F.zero()
        for c, val in row.items():
            total = F.add(total, F.mul(val, vector[c]))
        if not F.is_zero(total):
            return False
    return True


def nullspace_basis(matrix: CoeffMatrix) -> NullspaceBasis:
    """Exact reduced nullspace basis; rank(M) + dim = ncols.

    Every returned vector is re-verified against the matrix before being
    emitted, over either field.
    """
    if matrix.ncols == 0:
        return NullspaceBasis(vectors=(), dim=0)
    F = matrix.field
    if F.characteristic:
        vectors = _nullspace_prime_field(matrix)
    else:
        vectors = _nullspace_rational(matrix)
    for vec in vectors:
        if not _verify_exact(matrix, vec):
            raise AssertionError("engine emitted an unverified nullspace vector")
    return NullspaceBasis(vectors=tuple(vectors), dim=len(vectors))


def _nullspace_prime_field(matrix: CoeffMatrix) -> list[tuple]:
    p = matrix.field.characteristic
    rows = [dict(r) for r in matrix.rows]
    pivot_cols, pivot_rows = _rref_mod_p(rows, matrix.ncols, p)
    vectors = _nullspace_from_rref(
        pivot_cols, pivot_rows, matrix.ncols, one=1, neg=lambda v: (-v) % p
    )
    # leading entry is already 1 when the free column precedes every pivot
    # touched; normalize to monic leading anyway for bit-stable output
    out = []
    for vec in vectors:
        lead = next(v for v in vec if v)
        if lead != 1:
            inv = pow(lead, -1, p)
            vec = [v * inv % p for v in vec]
        out.append(tuple(vec))
    return out


def _nullspace_rational(matrix: CoeffMatrix) -> list[tuple]:
    int_rows = _integer_rows(matrix)
    collected: list[tuple[int, list[int], list[dict]]] = []  # (prime, pivots, rows)
    for attempt in range(_MAX_PRIMES):
        p = _engine_prime(attempt)
        pivot_cols, pivot_rows = _rref_mod_p([dict(r) for r in int_rows], matrix.ncols, p)
        collected.append((p, pivot_cols, pivot_rows))
        # keep only the primes agreeing with the best (largest) rank seen
        best_rank = max(len(pivots) for _, pivots, _ in collected)
        best_pivots = next(piv for _, piv, _ in collected if len(piv) == best_rank)
        usable = [
            (q, piv, rws)
            for q, piv, rws in collected
            if piv == best_pivots
        ]
        candidate = _lift_and_verify(matrix, usable)
        if candidate is not None:
            return candidate
    # modular path kept failing: do it the slow exact way
    pivot_cols, pivot_rows = _rref_fraction([dict(r) for r in matrix.rows], matrix.ncols)
    vectors = _nullspace_from_rref(
        pivot_cols, pivot_rows, matrix.ncols, one=Fraction(1), neg=lambda v: -v
    )
    return [_normalize_rational(v) for v in vectors]


def _lift_and_verify(matrix: CoeffMatrix, images) -> list[tuple] | None:
    """CRT-combine RREF images sharing a pivot structure, reconstruct, verify."""
    _, pivot_cols, _ = images[0]
    modulus = 1
    combined: list[dict] = [dict() for _ in pivot_cols]
    for p, _, rows in images:
        if modulus == 1:
            combined = [dict(r) for r in rows]
            modulus = p
            continue
        inv = pow(modulus, -1, p)
        new_modulus = modulus * p
        merged = []
        for old_row, new_row in zip(combined, rows):
            row = {}
            for c in set(old_row) | set(new_row):
                a = old_row.get(c, 0)
                b = new_row.get(c, 0)
                # CRT: value = a + modulus * ((b - a) * modulus^-1 mod p)
                row[c] = (a + modulus * ((b - a) * inv % p)) % new_modulus
            merged.append(row)
        combined = merged
        modulus = new_modulus

    lifted_rows = []
    for row in combined:
        lifted = {}
        for c, v in row.items():
            frac = _rational_reconstruct(v, modulus)
            if frac is None:
                return None
            if frac:
                lifted[c] = frac
        lifted_rows.append(lifted)
    vectors = _nullspace_from_rref(
        pivot_cols, lifted_rows, matrix.ncols, one=Fraction(1), neg=lambda v: -v
    )
    out = []
    for vec in vectors:
        normalized = _normalize_rational(vec)
        if not _verify_exact(matrix, normalized):
            return None
        out.append(normalized)
    return out


# -- small dense solves (membership tests, completion fibers) ------------------------


def linear_solve(columns: Sequence[Sequence], rhs: Sequence, field: Field):
    """Solve sum_i c_i * columns[i] = rhs exactly.

    Returns (particular solution tuple, kernel dimension) or None when the
    system is inconsistent.  Free coordinates of the particular solution are
    zero.  Plain elimination; these systems are tiny.
    """
    ncols = len(columns)
    nrows = len(rhs)
    rows = []
    for r in range(nrows):
        row = {c: field.coerce(columns[c][r]) for c in range(ncols) if not field.is_zero(field.coerce(columns[c][r]))}
        rhs_val = field.coerce(rhs[r])
        if not field.is_zero(rhs_val):
            row[ncols] = rhs_val
        rows.append(row)
    if field.characteristic:
        pivot_cols, pivot_rows = _rref_mod_p(rows, ncols + 1, field.characteristic)
    else:
        pivot_cols, pivot_rows = _rref_fraction(rows, ncols + 1)
    if ncols in pivot_cols:
        return None  # pivot in the augmented column: inconsistent
    # pivot row reads x_p + sum_free a_c x_c = b, so with free vars zeroed x_p = b
    solution = [field.zero()] * ncols
    for pcol, prow in zip(pivot_cols, pivot_rows):
        solution[pcol] = field.coerce(prow.get(ncols, field.zero()))
    kernel_dim = ncols - len(pivot_cols)
    return tuple(solution), kernel_dim


def rank(matrix: CoeffMatrix) -> int:
    return matrix.ncols - nullspace_basis(matrix).dim
