"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive: dense matrices over the full
coefficient unknown vector, textbook fraction (or mod-p) Gauss-Jordan, no
sparsity tricks, and no imports from the engine under test
(picard_forms.linalg).  Polynomial expansion reuses the arithmetic layer,
whose own tests are identity-based.
"""

from fractions import Fraction

from picard_forms.poly import (
    Polynomial,
    dehomogenize,
    monomials_of_degree,
    monomials_up_to,
)


def dense_nullspace_rational(rows):
    """Textbook Gauss-Jordan nullspace over Fraction.  rows: list of lists."""
    if not rows:
        return []
    m = [[Fraction(v) for v in row] for row in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -m[row_idx][fc]
        basis.append(vec)
    return basis


def dense_nullspace_mod_p(rows, p):
    """Same elimination over GF(p)."""
    if not rows:
        return []
    m = [[v % p for v in row] for row in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] % p != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p != 0:
                factor = m[i][c]
                m[i] = [(a - factor * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for row_idx, pc in enumerate(pivots):
            vec[pc] = (-m[row_idx][fc]) % p
        basis.append(vec)
    return basis


def dense_rank(rows, p=None):
    if not rows:
        return 0
    ncols = len(rows[0])
    if p is None:
        return ncols - len(dense_nullspace_rational(rows))
    return ncols - len(dense_nullspace_mod_p(rows, p))


def poly_row(poly, monomials):
    """Dense coefficient row of a polynomial over an explicit monomial list."""
    index = {m: i for i, m in enumerate(monomials)}
    row = [poly.field.zero()] * len(monomials)
    for mono, coeff in poly.terms.items():
        row[index[mono]] = coeff
    return row


def oracle_adjoint_slice(S, m):
    """Degree-m forms in the span of {generator x monomial}: dense row space."""
    field = S.field
    if m < 0:
        return []
    if not S.double_curve_generators:
        return [Polynomial.monomial(field, mono) for mono in monomials_up_to(3, m)]
    products = []
    for g in S.double_curve_generators:
        for mono in monomials_of_degree(4, m - g.degree()):
            products.append(Polynomial.monomial(field, mono) * g)
    monos = monomials_of_degree(4, m)
    rows = [poly_row(pr, monos) for pr in products]
    # row-reduce densely and keep the nonzero rows as polynomials
    if field.characteristic == 0:
        reduced = _dense_rref_rows(rows)
    else:
        reduced = _dense_rref_rows_mod_p(rows, field.characteristic)
    out = []
    for row in reduced:
        terms = {mono: c for mono, c in zip(monos, row) if c}
        if terms:
            out.append(dehomogenize(Polynomial(field, 4, terms)))
    return out


def _dense_rref_rows(rows):
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r]]


def _dense_rref_rows_mod_p(rows, p):
    m = [[v % p for v in row] for row in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] % p != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p != 0:
                factor = m[i][c]
                m[i] = [(a - factor * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r]]


def oracle_picard(S):
    """Dense Picard solver: full coefficient unknown vector, fraction (or
    mod-p) arithmetic.  Returns (dim, solutions as (A, B, C, N) tuples)."""
    field = S.field
    d = S.d
    f = S.f
    adj_basis = oracle_adjoint_slice(S, d - 2)
    n_basis = [Polynomial.monomial(field, mono) for mono in monomials_up_to(3, d - 3)]
    multipliers = [f.diff(0), f.diff(1), f.diff(2), -f]
    blocks = [adj_basis, adj_basis, adj_basis, n_basis]
    columns = []
    for mult, basis in zip(multipliers, blocks):
        for b in basis:
            columns.append(mult * b)
    monos = sorted({mono for col in columns for mono in col.terms})
    rows = []
    for mono in monos:
        rows.append([col.terms.get(mono, field.zero()) for col in columns])
    if field.characteristic == 0:
        vecs = dense_nullspace_rational(rows)
    else:
        vecs = dense_nullspace_mod_p(rows, field.characteristic)
    k = len(adj_basis)
    solutions = []
    for vec in vecs:
        parts = []
        offsets = [0, k, 2 * k, 3 * k, 3 * k + len(n_basis)]
        for b_idx, basis in enumerate(blocks):
            total = Polynomial.zero(field, 3)
            for coeff, bp in zip(vec[offsets[b_idx] : offsets[b_idx + 1]], basis):
                total = total + bp.scale(coeff)
            parts.append(total)
        solutions.append(tuple(parts))
    return len(vecs), solutions


def oracle_picard_fiber(S, A):
    """All (B, C, N) completing A: dense elimination on the inhomogeneous
    system; returns a list of completions spanning the fiber (particular +
    kernel directions) or [] when the fiber is empty."""
    field = S.field
    d = S.d
    f = S.f
    adj_basis = oracle_adjoint_slice(S, d - 2)
    n_basis = [Polynomial.monomial(field, mono) for mono in monomials_up_to(3, d - 3)]
    multipliers = [f.diff(1), f.diff(2), -f]
    blocks = [adj_basis, adj_basis, n_basis]
    columns = []
    for mult, basis in zip(multipliers, blocks):
        for b in basis:
            columns.append(mult * b)
    target = -(A * f.diff(0))
    monos = sorted({mono for col in columns for mono in col.terms} | set(target.terms))
    rows = []
    for mono in monos:
        row = [col.terms.get(mono, field.zero()) for col in columns]
        row.append(target.terms.get(mono, field.zero()))
        rows.append(row)
    # solve by RREF of the augmented matrix
    if field.characteristic == 0:
        reduced = _dense_rref_rows(rows)
    else:
        reduced = _dense_rref_rows_mod_p(rows, field.characteristic)
    ncols = len(columns)
    pivots = []
    for row in reduced:
        lead = next((c for c, v in enumerate(row) if v), None)
        if lead is None:
            continue
        if lead == ncols:
            return []  # inconsistent
        pivots.append(lead)
    particular = [field.zero()] * ncols
    for row, pc in zip(reduced, pivots):
        particular[pc] = row[ncols]
    kernel_dim = ncols - len(pivots)

    def build(vec):
        parts = []
        offsets = [0, len(adj_basis), 2 * len(adj_basis), ncols]
        for b_idx, basis in enumerate(blocks):
            total = Polynomial.zero(field, 3)
            for coeff, bp in zip(vec[offsets[b_idx] : offsets[b_idx + 1]], basis):
                total = total + bp.scale(coeff)
            parts.append(total)
        return tuple(parts)

    return {"completion": build(particular), "fiber_dim": kernel_dim}


def oracle_gral(S):
    """Dense solver for Y1 F1 + ... + Y4 F4 = Q F."""
    from picard_forms.poly import homogenize

    field = S.field
    d = S.d
    adj = oracle_adjoint_slice(S, d - 3)
    y_basis = [homogenize(b, d - 3) for b in adj]
    q_basis = [Polynomial.monomial(field, mono) for mono in monomials_of_degree(4, d - 4)]
    columns = []
    for i in range(4):
        Fi = S.F.diff(i)
        for b in y_basis:
            columns.append(Fi * b)
    for b in q_basis:
        columns.append(-(S.F * b))
    monos = sorted({mono for col in columns for mono in col.terms})
    rows = [[col.terms.get(mono, field.zero()) for col in columns] for mono in monos]
    if not columns:
        return 0
    if field.characteristic == 0:
        vecs = dense_nullspace_rational(rows)
    else:
        vecs = dense_nullspace_mod_p(rows, field.characteristic)
    return len(vecs)


def oracle_syzygy_dim(g, l):
    """Dense syzygy-space dimension for the partials of a plane curve."""
    field = g.field
    basis = [Polynomial.monomial(field, mono) for mono in monomials_of_degree(3, l)]
    columns = []
    for i in range(3):
        gi = g.diff(i)
        for b in basis:
            columns.append(gi * b)
    monos = sorted({mono for col in columns for mono in col.terms})
    rows = [[col.terms.get(mono, field.zero()) for col in columns] for mono in monos]
    if field.characteristic == 0:
        return len(dense_nullspace_rational(rows))
    return len(dense_nullspace_mod_p(rows, field.characteristic))


def exhaustive_jacobian_roots(f, p):
    """Count distinct common roots of f = f_y = f_z = 0 over GF(p)^3."""
    fy = f.diff(1)
    fz = f.diff(2)
    count = 0
    for x in range(p):
        for y in range(p):
            for z in range(p):
                pt = (x, y, z)
                if f.evaluate(pt) == 0 and fy.evaluate(pt) == 0 and fz.evaluate(pt) == 0:
                    count += 1
    return count
