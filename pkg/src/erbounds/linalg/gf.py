"""Dense matrices over a prime field GF(p).

Entries are numpy int64 arrays reduced mod ``p``.  Elimination uses the
first nonzero pivot in column order so ranks, bases and null spaces are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import DomainError

SUPPORTED_FIELDS = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True, eq=False)
class GFMatrix:
    field_char: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.field_char not in SUPPORTED_FIELDS:
            raise DomainError(f"unsupported field GF({self.field_char})")
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise DomainError("a GFMatrix needs a 2-d array")
        arr = np.mod(arr, self.field_char)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> list[int]:
        return [int(v) for v in self.data.ravel()]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GFMatrix)
            and self.field_char == other.field_char
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __repr__(self) -> str:
        return f"GFMatrix(p={self.field_char}, {self.rows}x{self.cols})"

    def __matmul__(self, other: "GFMatrix") -> "GFMatrix":
        _same_field(self, other)
        if self.cols != other.rows:
            raise DomainError(f"shape mismatch {self.data.shape} @ {other.data.shape}")
        return GFMatrix(self.field_char, self.data @ other.data)

    @property
    def T(self) -> "GFMatrix":
        return GFMatrix(self.field_char, self.data.T)

    def cols_at(self, idx) -> "GFMatrix":
        return GFMatrix(self.field_char, self.data[:, list(idx)].reshape(self.rows, len(list(idx))))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "GFMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, size: int) -> "GFMatrix":
        return cls(p, np.eye(size, dtype=np.int64))

    @classmethod
    def random(cls, p: int, rows: int, cols: int, rng: np.random.Generator) -> "GFMatrix":
        return cls(p, rng.integers(0, p, size=(rows, cols)))


def _same_field(*ms: GFMatrix) -> None:
    if len({m.field_char for m in ms}) > 1:
        raise DomainError("field mismatch: " + ", ".join(f"GF({m.field_char})" for m in ms))


def hstack(ms: list[GFMatrix], rows: int | None = None, p: int | None = None) -> GFMatrix:
    """Concatenate column blocks; ``rows``/``p`` are needed when ``ms`` is empty."""
    if not ms:
        if rows is None or p is None:
            raise DomainError("empty hstack needs rows and field")
        return GFMatrix.zeros(p, rows, 0)
    _same_field(*ms)
    return GFMatrix(ms[0].field_char, np.hstack([m.data for m in ms]))


def _inv(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


def rref(m: GFMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    p = m.field_char
    a = m.data.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * _inv(a[r, c], p)) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def gf_rank(m: GFMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(rref(m)[1])


def nullspace(m: GFMatrix) -> GFMatrix:
    """Columns spanning ``{x : m x = 0}``, one per free variable in order."""
    p = m.field_char
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = np.zeros((m.cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-red[i, f]) % p
    return GFMatrix(p, basis)


def column_basis(m: GFMatrix) -> GFMatrix:
    """The pivot columns of ``m``: a basis of its column space."""
    if m.cols == 0:
        return m
    _, pivots = rref(m)
    return m.cols_at(pivots)


def intersection_basis(m1: GFMatrix, m2: GFMatrix) -> GFMatrix:
    """Basis of ``S(m1) ∩ S(m2)`` from the null space of ``[m1 | -m2]``."""
    _same_field(m1, m2)
    if m1.rows != m2.rows:
        raise DomainError(f"row mismatch {m1.rows} vs {m2.rows}")
    p = m1.field_char
    if m1.cols == 0 or m2.cols == 0:
        return GFMatrix.zeros(p, m1.rows, 0)
    joined = GFMatrix(p, np.hstack([m1.data, -m2.data]))
    ker = nullspace(joined)
    if ker.cols == 0:
        return GFMatrix.zeros(p, m1.rows, 0)
    x = GFMatrix(p, ker.data[: m1.cols])
    return column_basis(m1 @ x)
