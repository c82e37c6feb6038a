"""Exact integer lattice arithmetic.

Everything runs on numpy arrays of ``dtype=object`` holding Python ints, so
intermediate entries never overflow.
"""
import logging
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import InvariantBreach, ZeroVector
from src.models.lattice import AbelianInvariants, IntegerMatrix, IntVector, Sublattice

logger = logging.getLogger(__name__)


def _eye(n: int) -> np.ndarray:
    array = np.zeros((n, n), dtype=object)
    for i in range(n):
        array[i, i] = 1
    return array


class LatticeService:
    """
    Smith and Hermite normal forms, quotients and membership in Z^n
    Matrices are numpy object arrays of Python ints, so nothing overflows
    """

    @staticmethod
    def exgcd(a: int, b: int) -> np.ndarray:
        """
        Extended GCD as a unimodular row operation.
        Returns a 2x2 integer matrix M of determinant 1 with
        M @ [a, b] = [gcd(a, b), 0] and gcd(a, b) >= 0.
        When a divides b the first row only changes sign, so a pivot row is
        never disturbed by an entry it already divides.
        """
        if a != 0 and b % a == 0:
            if a > 0:
                return np.array([[1, 0], [-(b // a), 1]], dtype=object)
            return np.array([[-1, 0], [b // a, -1]], dtype=object)

        # Euclid on the column [a, b], augmented by the identity to record the row operations
        M = np.array([[a, 1, 0], [b, 0, 1]], dtype=object)
        while M[1, 0] != 0:
            q = M[0, 0] // M[1, 0]
            M[0] -= q * M[1]
            M = M[::-1].copy()
        T = M[:, 1:].copy()
        if M[0, 0] < 0:
            T[0] = -T[0]
        if T[0, 0] * T[1, 1] - T[0, 1] * T[1, 0] == -1:
            T[1] = -T[1]
        return T

    @staticmethod
    def snf(m: IntegerMatrix) -> Tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
        """
        Smith normal form: returns (U, D, V) with U @ m @ V == D.
        U and V are unimodular, D is diagonal with nonnegative entries
        d_1 | d_2 | ..., zero entries last.

        Each pivot is cleared in passes over its column and its row:
        1. a pass that only eliminates leaves the pivot unchanged and ends the loop
        2. any other pass replaces the pivot by a proper divisor
        so a pivot p needs at most |p| + 1 passes. Going past that bound
        raises InvariantBreach instead of looping.
        """
        D = m.as_array()
        r, c = D.shape
        U, V = _eye(r), _eye(c)
        exgcd = LatticeService.exgcd

        def row_op(M, i, j):
            D[[i, j]] = M @ D[[i, j]]
            U[[i, j]] = M @ U[[i, j]]

        def col_op(M, i, j):
            D[:, [i, j]] = D[:, [i, j]] @ M
            V[:, [i, j]] = V[:, [i, j]] @ M

        def swap_rows(i, j):
            if i != j:
                D[[i, j]] = D[[j, i]]
                U[[i, j]] = U[[j, i]]

        def swap_cols(i, j):
            if i != j:
                D[:, [i, j]] = D[:, [j, i]]
                V[:, [i, j]] = V[:, [j, i]]

        k = min(r, c)
        for t in range(k):
            pivot = next(((i, j) for i in range(t, r) for j in range(t, c) if D[i, j] != 0), None)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            budget = abs(D[t, t]) + 1
            # alternate clearing column t and row t until both are clear
            while True:
                if budget == 0:
                    raise InvariantBreach(f"Smith normal form of {m.to_rows()} does not settle at pivot {t}")
                budget -= 1
                for i in range(t + 1, r):
                    if D[i, t] != 0:
                        row_op(exgcd(D[t, t], D[i, t]), t, i)
                for j in range(t + 1, c):
                    if D[t, j] != 0:
                        col_op(exgcd(D[t, t], D[t, j]).T, t, j)
                if all(D[i, t] == 0 for i in range(t + 1, r)):
                    break

        def fix_signs():
            for t in range(k):
                if D[t, t] < 0:
                    D[t] = -D[t]
                    U[t] = -U[t]

        fix_signs()
        # divisibility chain: replace (a, b) by (gcd, a*b/gcd) on the diagonal
        for t in range(k):
            for s in range(t + 1, k):
                a, b = D[t, t], D[s, s]
                if a == 0 or b % a == 0:
                    continue
                g = gcd(a, b)
                x, y = exgcd(a, b)[0]
                row_op(np.array([[x, y], [-(b // g), a // g]], dtype=object), t, s)
                col_op(np.array([[1, -(y * b // g)], [1, x * a // g]], dtype=object), t, s)
        fix_signs()

        if not (U @ m.as_array() @ V == D).all():
            raise InvariantBreach(f"Smith normal form check failed for {m.to_rows()}")
        logger.debug(f"snf {r}x{c}: diagonal {[D[t, t] for t in range(k)]}")
        return IntegerMatrix.from_array(U), IntegerMatrix.from_array(D), IntegerMatrix.from_array(V)

    @staticmethod
    def diagonal(d: IntegerMatrix) -> List[int]:
        return [d[t, t] for t in range(min(d.rows, d.cols))]

    @staticmethod
    def rank(m: IntegerMatrix) -> int:
        _, D, _ = LatticeService.snf(m)
        return sum(1 for x in LatticeService.diagonal(D) if x != 0)

    @staticmethod
    def determinant(m: IntegerMatrix) -> int:
        """Exact determinant by fraction-free Bareiss elimination"""
        if m.rows != m.cols:
            raise ValueError("determinant of a non-square matrix")
        n = m.rows
        A = [list(row) for row in m.to_rows()]
        sign, previous = 1, 1
        for k in range(n - 1):
            if A[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
                if swap is None:
                    return 0
                A[k], A[swap] = A[swap], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // previous
            previous = A[k][k]
        return sign * A[n - 1][n - 1] if n else 1

    @staticmethod
    def is_unimodular(m: IntegerMatrix) -> bool:
        return m.rows == m.cols and abs(LatticeService.determinant(m)) == 1

    @staticmethod
    def hermite_basis(rows: Sequence[Sequence[int]], ambient_rank: int) -> Tuple[IntVector, ...]:
        """
        Row-style Hermite normal form of the span of ``rows`` (zero rows dropped).
        Pivots are positive and the entries above each pivot lie in [0, pivot).
        Sublattice uses this as its canonical basis, so equal spans compare equal.
        """
        A = [list(int(x) for x in row) for row in rows if any(row)]
        p = 0
        for col in range(ambient_rank):
            if p >= len(A):
                break
            for i in range(p + 1, len(A)):
                if A[i][col] != 0:
                    (a, b), (c, d) = LatticeService.exgcd(A[p][col], A[i][col])
                    A[p], A[i] = (
                        [a * x + b * y for x, y in zip(A[p], A[i])],
                        [c * x + d * y for x, y in zip(A[p], A[i])],
                    )
            if A[p][col] == 0:
                continue
            if A[p][col] < 0:
                A[p] = [-x for x in A[p]]
            for i in range(p):
                q = A[i][col] // A[p][col]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[p])]
            p += 1
        return tuple(tuple(row) for row in A[:p])

    @staticmethod
    def solve_integral(generators: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[IntVector]:
        """Integer coefficients c with sum(c_i * generators[i]) == v, or None"""
        n = len(v)
        m = len(generators)
        if m == 0:
            return () if not any(v) else None
        G = IntegerMatrix.from_rows(generators, cols=n).transpose()
        U, D, V = LatticeService.snf(G)
        w = U.apply(tuple(v))
        y = [0] * m
        for i in range(n):
            d = D[i, i] if i < m else 0
            if d == 0:
                if w[i] != 0:
                    return None
            elif w[i] % d:
                return None
            else:
                y[i] = w[i] // d
        return V.apply(tuple(y))

    @staticmethod
    def solve_rational(
        rows: Sequence[Sequence[int]], targets: Sequence[Fraction], width: int
    ) -> Optional[Tuple[Fraction, ...]]:
        """A rational x with rows @ x == targets, or None when inconsistent"""
        if not rows:
            return tuple(Fraction(0) for _ in range(width)) if not any(targets) else None
        U, D, V = LatticeService.snf(IntegerMatrix.from_rows(rows, cols=width))
        w = [sum(Fraction(U[i, k]) * targets[k] for k in range(U.cols)) for i in range(U.rows)]
        y = [Fraction(0)] * width
        for i in range(len(rows)):
            d = D[i, i] if i < width else 0
            if d == 0:
                if w[i] != 0:
                    return None
            else:
                y[i] = w[i] / d
        return tuple(sum(V[j, i] * y[i] for i in range(width)) for j in range(width))

    @staticmethod
    def quotient_invariants(ambient_rank: int, sub: Sublattice) -> AbelianInvariants:
        """
        Invariant factors of Z^ambient_rank / sub.
        Factors equal to 1 are dropped; zero diagonal entries count towards the free rank.
        """
        if sub.ambient_rank != ambient_rank:
            raise ValueError(f"sublattice lives in Z^{sub.ambient_rank}, not Z^{ambient_rank}")
        if not sub.basis:
            return AbelianInvariants(torsion=(), free_rank=ambient_rank)
        _, D, _ = LatticeService.snf(IntegerMatrix.from_rows(sub.basis, cols=ambient_rank))
        factors = [d for d in LatticeService.diagonal(D) if d != 0]
        return AbelianInvariants(
            torsion=tuple(d for d in factors if d > 1),
            free_rank=ambient_rank - len(factors),
        )

    @staticmethod
    def is_member(sub: Sublattice, v: Sequence[int]) -> bool:
        if len(v) != sub.ambient_rank:
            raise ValueError(f"vector {tuple(v)} does not lie in Z^{sub.ambient_rank}")
        return LatticeService.solve_integral(sub.basis, v) is not None

    @staticmethod
    def primitivize(v: Sequence[int]) -> IntVector:
        g = gcd(*v) if v else 0
        if g == 0:
            raise ZeroVector(f"cannot primitivize the zero vector {tuple(v)}")
        return tuple(int(x) // g for x in v)

    @staticmethod
    def dual_torsion_generators(sub: Sublattice) -> List[Tuple[int, Tuple[Fraction, ...]]]:
        """
        Generators of the finite part of Hom(Z^n / sub, Q/Z).
        Each entry is (order, values) where ``values`` are the values in [0, 1)
        on the standard basis of Z^n.
        """
        n = sub.ambient_rank
        if not sub.basis:
            return []
        _, D, V = LatticeService.snf(IntegerMatrix.from_rows(sub.basis, cols=n))
        generators = []
        for i, d in enumerate(LatticeService.diagonal(D)):
            if d > 1:
                generators.append((d, tuple(Fraction(V[j, i], d) % 1 for j in range(n))))
        return generators
