"""
Signed permutation matrices and their spectral classification.

Index mapping: rows and columns are 0-based here. Row ``i`` of the matrix has
its single nonzero entry in column ``target[i]`` with value ``sign[i]``; in the
1-based notation p_{ij} this is p_{i+1, target[i]+1}. Documents written for
users (JSON) carry 1-based targets.
"""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from utils.exceptions import PermutationError


@dataclass(frozen=True)
class SignedPermutation:
    """Square matrix with exactly one entry of +1 or -1 in every row and column."""
    target: Tuple[int, ...]
    sign: Tuple[int, ...]

    def __post_init__(self):
        target = tuple(int(column) for column in self.target)
        sign = tuple(int(value) for value in self.sign)
        object.__setattr__(self, 'target', target)
        object.__setattr__(self, 'sign', sign)

        if not target:
            raise PermutationError("A signed permutation needs at least one row")
        if len(target) != len(sign):
            raise PermutationError(
                f"target and sign lengths differ ({len(target)} != {len(sign)})")
        if sorted(target) != list(range(len(target))):
            raise PermutationError(f"target {list(target)} is not a bijection on 0..{len(target) - 1}")
        if any(value not in (1, -1) for value in sign):
            raise PermutationError(f"signs must be +1 or -1, got {list(sign)}")

    @property
    def n(self) -> int:
        return len(self.target)

    @classmethod
    def from_dense(cls, matrix) -> 'SignedPermutation':
        """Builds the permutation from a dense matrix, rejecting anything that is not one."""
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise PermutationError(f"expected a square matrix, got shape {matrix.shape}")

        target, sign = [], []
        for row in matrix:
            columns = np.flatnonzero(row)
            if len(columns) != 1 or abs(row[columns[0]]) != 1:
                raise PermutationError(f"row {row.tolist()} is not a signed unit row")
            target.append(int(columns[0]))
            sign.append(int(np.sign(row[columns[0]])))
        return cls(tuple(target), tuple(sign))

    @classmethod
    def from_one_based(cls, target, sign) -> 'SignedPermutation':
        return cls(tuple(int(column) - 1 for column in target), tuple(sign))

    def one_based_target(self) -> List[int]:
        return [column + 1 for column in self.target]

    def dense(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=int)
        matrix[np.arange(self.n), self.target] = self.sign
        return matrix

    def cycles(self) -> List[Tuple[Tuple[int, ...], int]]:
        """Disjoint cycles as (rows, product of signs along the cycle)."""
        seen = set()
        cycles = []
        for start in range(self.n):
            if start in seen:
                continue
            rows = []
            product = 1
            row = start
            while row not in seen:
                seen.add(row)
                rows.append(row)
                product *= self.sign[row]
                row = self.target[row]
            cycles.append((tuple(rows), product))
        return cycles

    def is_symmetric(self) -> bool:
        dense = self.dense()
        return bool(np.array_equal(dense, dense.T))


def classify_left_half_plane(P: SignedPermutation) -> bool:
    """
    True iff every eigenvalue of P lies in the closed left half-plane.

    A signed cycle of length L with sign product s has the L-th roots of s
    as eigenvalues. Only -1 itself (fixed points with sign -1) and the square
    roots of -1 (antisymmetric 2-cycles) stay out of the open right half-plane.
    """
    for rows, product in P.cycles():
        if len(rows) > 2 or product != -1:
            return False
    return True


def has_real_spectrum(P: SignedPermutation) -> bool:
    """True iff the signed permutation has only real eigenvalues (1-cycles, equal-sign 2-cycles)."""
    for rows, product in P.cycles():
        if len(rows) > 2:
            return False
        if len(rows) == 2 and product != 1:
            return False
    return True
