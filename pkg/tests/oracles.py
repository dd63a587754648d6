"""Slow reference computations kept deliberately separate from the library.

Everything here works on plain Python lists of ints, so agreement with the
numpy-based code is evidence rather than a tautology.
"""

import itertools


def rank_mod_p(rows, p):
    m = [[int(v) % p for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def matmul_mod_p(A, B, p):
    A = [[int(v) for v in r] for r in A]
    B = [[int(v) for v in r] for r in B]
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) % p for j in range(cols)] for i in range(len(A))]


def all_vectors(n, p):
    return itertools.product(range(p), repeat=n)


def kernel_count(A, p):
    """Number of v in F_p^n with A v = 0, by enumeration."""
    A = [[int(v) for v in r] for r in A]
    n = len(A[0])
    return sum(1 for v in all_vectors(n, p) if all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in A))


def count_intertwiners(actions_m, actions_n, p):
    """Number of k-linear f: M -> N with A_N f = f A_M for all generators."""
    dm = len(actions_m[0]) if actions_m else 0
    dn = len(actions_n[0]) if actions_n else 0
    count = 0
    for flat in all_vectors(dm * dn, p):
        f = [list(flat[i * dm : (i + 1) * dm]) for i in range(dn)]
        if all(matmul_mod_p(B, f, p) == matmul_mod_p(f, A, p) for A, B in zip(actions_m, actions_n)):
            count += 1
    return count


def chain_homology(mats, dims, degrees, p):
    """dim H_n of a chain complex; mats[n] maps degree n to n-1."""
    out = {}
    for n in degrees:
        out[n] = dims[n] - rank_mod_p(mats[n], p) - rank_mod_p(mats[n + 1], p)
    return out


# polynomials as {exponent tuple: coeff}


def poly_mul(f, g, p):
    out = {}
    for a, c in f.items():
        for b, d in g.items():
            m = tuple(x + y for x, y in zip(a, b))
            out[m] = (out.get(m, 0) + c * d) % p
    return {m: c for m, c in out.items() if c}


def monomials_up_to(nvars, degree):
    return [e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) <= degree]


def truncated_normal_form(f, gens, standard, p, degree):
    """Remainder of f on the standard monomials by linear algebra.

    Solves f = r + sum(c_{m,g} * m * g) with r supported on ``standard``,
    using every multiple m*g of total degree <= ``degree``.  No division,
    no term order: only a linear system over F_p.
    """
    nvars = len(next(iter(f))) if f else len(standard[0])
    mons = monomials_up_to(nvars, degree)
    index = {m: i for i, m in enumerate(mons)}
    cols = []
    for g in gens:
        for m in mons:
            prod = poly_mul({m: 1}, g, p)
            if all(sum(e) <= degree for e in prod):
                cols.append(prod)
    for s in standard:
        cols.append({s: 1})
    # solve M c = f by Gaussian elimination, recording the standard part
    nrows, ncols = len(mons), len(cols)
    aug = [[0] * (ncols + 1) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for m, c in col.items():
            aug[index[m]][j] = c
    for m, c in f.items():
        aug[index[m]][ncols] = c % p
    # eliminate ideal columns first so the standard part is forced last
    order = list(range(ncols))
    row = 0
    pivots = []
    for c in order:
        piv = next((i for i in range(row, nrows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][c], p - 2, p)
        aug[row] = [v * inv % p for v in aug[row]]
        for i in range(nrows):
            if i != row and aug[i][c]:
                k = aug[i][c]
                aug[i] = [(a - k * b) % p for a, b in zip(aug[i], aug[row])]
        pivots.append(c)
        row += 1
    assert all(not aug[i][ncols] for i in range(row, nrows)), "inconsistent"
    nideal = ncols - len(standard)
    rem = {}
    for i, c in enumerate(pivots):
        if c >= nideal and aug[i][ncols]:
            rem[standard[c - nideal]] = aug[i][ncols]
    return rem
