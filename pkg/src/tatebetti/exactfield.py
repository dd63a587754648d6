"""Exact dense linear algebra over a prime field F_p.

Matrices are plain 2-d ``numpy.int64`` arrays whose entries are kept in
``[0, p)``.  Every routine returns fresh arrays and never mutates its input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["PrimeField", "is_prime"]

# products of two residues must fit in int64 during row operations
_MAX_P = 2**31

# float64 represents integers exactly below 2**53
_FLOAT_EXACT = 2**53


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (n < 2**31)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p together with the matrix kernels used everywhere else."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not 2 <= self.p < _MAX_P:
            raise ValueError(f"modulus must be an integer prime in [2, 2**31), got {self.p!r}")
        if not is_prime(int(self.p)):
            raise ValueError(f"{self.p} is not prime")

    # -- construction -----------------------------------------------------

    def array(self, data, shape=None) -> np.ndarray:
        a = np.asarray(data, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return np.mod(a, self.p)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def inv_scalar(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    # -- arithmetic -------------------------------------------------------

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Exact product A @ B mod p."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        inner = A.shape[-1]
        if A.size == 0 or B.size == 0 or inner == 0:
            return np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        bound = (self.p - 1) ** 2
        if bound * inner < _FLOAT_EXACT:
            # BLAS path; exact because every partial sum stays below 2**53
            prod = A.astype(np.float64) @ B.astype(np.float64)
            return np.mod(prod.astype(np.int64), self.p)
        step = (_FLOAT_EXACT - 1) // bound
        out = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        if step == 0:
            # p above 2**26: single products no longer fit a double, but do fit int64
            for k in range(inner):
                out = (out + np.multiply.outer(A[..., k], B[k]) % self.p) % self.p
            return out
        for s in range(0, inner, step):
            part = A[..., s : s + step].astype(np.float64) @ B[s : s + step].astype(np.float64)
            out = np.mod(out + np.mod(part.astype(np.int64), self.p), self.p)
        return out

    # -- elimination ------------------------------------------------------

    def rref(self, A) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and the list of pivot columns.

        Pivoting takes the first nonzero entry in each column, so the result
        is fully deterministic.
        """
        p = self.p
        R = self.array(A).copy()
        if R.ndim != 2:
            raise ValueError("rref expects a 2-d matrix")
        m, n = R.shape
        pivots: list[int] = []
        r = 0
        for c in range(n):
            if r == m:
                break
            nz = np.flatnonzero(R[r:, c])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                R[[r, i]] = R[[i, r]]
            inv = pow(int(R[r, c]), -1, p)
            R[r, c:] = R[r, c:] * inv % p
            col = R[:, c].copy()
            col[r] = 0
            rows = np.flatnonzero(col)
            if rows.size:
                R[rows, c:] = (R[rows, c:] - np.outer(col[rows], R[r, c:])) % p
            pivots.append(c)
            r += 1
        return R, pivots

    def rank(self, A) -> int:
        A = np.asarray(A)
        if A.size == 0:
            return 0
        # eliminate along the shorter side
        if A.shape[0] > A.shape[1]:
            A = A.T
        return len(self.rref(A)[1])

    def kernel(self, A) -> np.ndarray:
        """Basis of the right null space, one vector per column."""
        return self.kernel_with_free(A)[0]

    def kernel_with_free(self, A) -> tuple[np.ndarray, list[int]]:
        """Kernel basis K and the free columns f with K[f, :] = identity.

        The free rows give coordinates on the kernel: v = K @ v[free].
        """
        A = self.array(A)
        n = A.shape[1]
        if A.shape[0] == 0:
            return self.eye(n), list(range(n))
        R, pivots = self.rref(A)
        pivset = set(pivots)
        free = [c for c in range(n) if c not in pivset]
        K = np.zeros((n, len(free)), dtype=np.int64)
        K[free, range(len(free))] = 1
        if pivots and free:
            K[pivots] = (-R[: len(pivots)][:, free]) % self.p
        return K, free

    def solve(self, A, B) -> np.ndarray | None:
        """Some X with A X = B, or None when the system is inconsistent."""
        A = self.array(A)
        B = self.array(B)
        vector = B.ndim == 1
        if vector:
            B = B.reshape(-1, 1)
        if A.shape[0] != B.shape[0]:
            raise ValueError(f"row mismatch: A has {A.shape[0]} rows, B has {B.shape[0]}")
        n = A.shape[1]
        R, pivots = self.rref(np.hstack([A, B]))
        if pivots and pivots[-1] >= n:
            return None
        X = np.zeros((n, B.shape[1]), dtype=np.int64)
        for i, pc in enumerate(pivots):
            X[pc] = R[i, n:]
        return X[:, 0] if vector else X

    def inv(self, A) -> np.ndarray:
        A = self.array(A)
        if A.shape[0] != A.shape[1]:
            raise ValueError("only square matrices are invertible")
        X = self.solve(A, self.eye(A.shape[0]))
        if X is None:
            raise ZeroDivisionError("matrix is singular")
        return X

    def is_invertible(self, A) -> bool:
        A = np.asarray(A)
        return A.shape[0] == A.shape[1] and self.rank(A) == A.shape[0]

    def row_basis(self, A) -> tuple[np.ndarray, list[int]]:
        """Reduced echelon basis (as rows) of the row space of A.

        For a vector v in the span, ``v[pivots]`` are its coordinates in this
        basis, which is how subspaces are handled throughout the package.
        """
        A = self.array(A)
        if A.shape[0] == 0:
            return np.zeros((0, A.shape[1]), dtype=np.int64), []
        R, pivots = self.rref(A)
        return R[: len(pivots)], pivots

    def column_space(self, A) -> tuple[np.ndarray, list[int]]:
        """Echelon basis of the column space of A, returned as rows."""
        return self.row_basis(np.asarray(A).T)
