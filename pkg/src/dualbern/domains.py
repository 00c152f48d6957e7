"""Index domains on the triangular lattice and the symmetric coefficient table.

A bivariate multi-index is a pair ``k = (k1, k2)`` of non-negative integers.
For a fixed degree ``n`` the full triangular domain is

    theta(n) = { (k1, k2) : k1 + k2 <= n },

and a constraint vector ``c = (c1, c2, c3)`` carves out the interior block

    omega(n, c) = { k in theta(n) : k1 >= c1, k2 >= c2, k1 + k2 <= n - c3 }

together with its complement ``gamma_set(n, c)`` (the constrained boundary
layers).  All enumerations use one canonical order: k1 ascending, then k2
ascending, so position arithmetic is shared by every module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import DomainError, ParameterError


class MultiIndex(NamedTuple):
    k1: int
    k2: int


def theta_size(n: int) -> int:
    """Number of lattice points of total degree <= n, i.e. (n+1)(n+2)/2."""
    return (n + 1) * (n + 2) // 2


def theta_position(n: int, k1: int, k2: int) -> int:
    """Canonical position of (k1, k2) inside theta(n); no range checking."""
    return k1 * (n + 1) - k1 * (k1 - 1) // 2 + k2


def in_theta(n: int, k) -> bool:
    k1, k2 = int(k[0]), int(k[1])
    return k1 >= 0 and k2 >= 0 and k1 + k2 <= n


@dataclass(frozen=True)
class AlphaParams:
    """Exponent triple of the triangle weight; each entry must exceed -1."""

    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        for name, v in (("a1", self.a1), ("a2", self.a2), ("a3", self.a3)):
            if not np.isfinite(v) or v <= -1.0:
                raise ParameterError(f"weight exponent {name}={v!r} must be finite and > -1")

    @property
    def total(self) -> float:
        return self.a1 + self.a2 + self.a3

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)

    def swapped(self) -> "AlphaParams":
        """Exponents with the first two slots exchanged."""
        return AlphaParams(self.a2, self.a1, self.a3)

    def shifted(self, c: "ConstraintVector") -> "AlphaParams":
        """Exponents raised by twice the constraint orders (a_i + 2 c_i)."""
        return AlphaParams(self.a1 + 2 * c.c1, self.a2 + 2 * c.c2, self.a3 + 2 * c.c3)


def as_alpha(alpha) -> AlphaParams:
    """Coerce a 3-sequence (or AlphaParams) into AlphaParams."""
    if isinstance(alpha, AlphaParams):
        return alpha
    a1, a2, a3 = alpha
    return AlphaParams(float(a1), float(a2), float(a3))


@dataclass(frozen=True)
class ConstraintVector:
    """Orders of boundary-layer constraints along the three triangle edges."""

    c1: int = 0
    c2: int = 0
    c3: int = 0

    def __post_init__(self):
        for name, v in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise ParameterError(f"constraint order {name}={v!r} must be a non-negative integer")

    @property
    def total(self) -> int:
        return self.c1 + self.c2 + self.c3

    @property
    def is_zero(self) -> bool:
        return self.total == 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.c1, self.c2, self.c3)


_NO_CONSTRAINT = ConstraintVector()


def as_constraint(c) -> ConstraintVector:
    if c is None:
        return _NO_CONSTRAINT
    if isinstance(c, ConstraintVector):
        return c
    c1, c2, c3 = c
    return ConstraintVector(int(c1), int(c2), int(c3))


@dataclass(frozen=True)
class IndexDomain:
    """An ordered set of multi-indices with O(1) membership and positions."""

    n: int
    kind: str  # "theta" | "omega" | "gamma"
    indices: tuple[MultiIndex, ...]

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.indices)

    def __contains__(self, k) -> bool:
        return (int(k[0]), int(k[1])) in self._positions()

    def _positions(self) -> dict:
        # lazily built; object.__setattr__ because the dataclass is frozen
        pos = self.__dict__.get("_pos_cache")
        if pos is None:
            pos = {(k.k1, k.k2): i for i, k in enumerate(self.indices)}
            object.__setattr__(self, "_pos_cache", pos)
        return pos

    def position(self, k) -> int:
        """Position of k in the canonical enumeration; DomainError if absent."""
        try:
            return self._positions()[(int(k[0]), int(k[1]))]
        except KeyError:
            raise DomainError(f"index {tuple(k)} is not a member of {self.kind}({self.n})") from None

    def array(self) -> np.ndarray:
        """The indices as an (len, 2) integer array."""
        return np.array(self.indices, dtype=np.int64).reshape(len(self.indices), 2)


def theta(n: int) -> IndexDomain:
    """The full triangular index set of degree n in canonical order."""
    if n < 0:
        raise ParameterError(f"degree n={n} must be >= 0")
    idx = tuple(MultiIndex(k1, k2) for k1 in range(n + 1) for k2 in range(n - k1 + 1))
    return IndexDomain(n=n, kind="theta", indices=idx)


def omega(n: int, c) -> IndexDomain:
    """The constrained interior index set; order-isomorphic to theta(n - |c|)."""
    c = as_constraint(c)
    if c.total > n:
        raise ParameterError(f"constraint total |c|={c.total} exceeds degree n={n}")
    idx = tuple(
        MultiIndex(k1, k2)
        for k1 in range(c.c1, n + 1)
        for k2 in range(c.c2, n - k1 - c.c3 + 1)
    )
    return IndexDomain(n=n, kind="omega", indices=idx)


def gamma_set(n: int, c) -> IndexDomain:
    """Complement of omega(n, c) inside theta(n), canonical order."""
    c = as_constraint(c)
    if c.total > n:
        raise ParameterError(f"constraint total |c|={c.total} exceeds degree n={n}")
    inside = set(omega(n, c).indices)
    idx = tuple(k for k in theta(n) if k not in inside)
    return IndexDomain(n=n, kind="gamma", indices=idx)


class CoeffTable:
    """Symmetric table of dual-basis connection coefficients over theta(n)^2.

    Storage holds one physical cell per unordered index pair (triangular
    packing by canonical position), so reading (k, l) and (l, k) is literally
    the same memory.  Reads with either index outside theta(n) return 0.0 —
    the table's natural extension — while writes outside the domain raise.
    """

    def __init__(self, n: int, data: np.ndarray | None = None, alpha: AlphaParams | None = None):
        if n < 0:
            raise ParameterError(f"degree n={n} must be >= 0")
        self.n = int(n)
        self.alpha = alpha
        N = theta_size(self.n)
        self._N = N
        if data is None:
            data = np.zeros(N * (N + 1) // 2)
        data = np.asarray(data, dtype=np.float64)
        if data.shape != (N * (N + 1) // 2,):
            raise ParameterError(
                f"packed data must have length {N*(N+1)//2} for n={n}, got shape {data.shape}"
            )
        self.data = data

    def _cell(self, pk: int, pl: int) -> int:
        if pk > pl:
            pk, pl = pl, pk
        return pk * self._N - pk * (pk - 1) // 2 + (pl - pk)

    def get(self, k, l) -> float:
        """Coefficient at (k, l); zero when either index lies outside theta(n)."""
        if not (in_theta(self.n, k) and in_theta(self.n, l)):
            return 0.0
        pk = theta_position(self.n, int(k[0]), int(k[1]))
        pl = theta_position(self.n, int(l[0]), int(l[1]))
        return float(self.data[self._cell(pk, pl)])

    def set(self, k, l, value: float) -> None:
        """Write the shared cell for (k, l); out-of-domain indices raise."""
        if not (in_theta(self.n, k) and in_theta(self.n, l)):
            raise DomainError(f"cannot set entry ({tuple(k)}, {tuple(l)}) outside theta({self.n})")
        pk = theta_position(self.n, int(k[0]), int(k[1]))
        pl = theta_position(self.n, int(l[0]), int(l[1]))
        self.data[self._cell(pk, pl)] = float(value)

    def dense(self) -> np.ndarray:
        """Materialize the full symmetric matrix, shape (|theta|, |theta|)."""
        N = self._N
        out = np.empty((N, N))
        iu = np.triu_indices(N)
        out[iu] = self.data
        out[(iu[1], iu[0])] = self.data
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CoeffTable)
            and self.n == other.n
            and np.array_equal(self.data, other.data)
        )
