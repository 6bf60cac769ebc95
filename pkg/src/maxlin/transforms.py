"""The coordinate changes: cumulative (zeta) coordinates on the state lattice
with their Moebius inverse, cumulative weight rows, and the multiplicative
reparameterization used by the monomial map."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .dag import Dag, transitive_closure
from .errors import NotMonotoneError, SupportMismatchError
from .model import ParamTable, Value, eliminate_simplex, full_distribution
from .poset import State, StateLattice, order_preserving_maps, state_leq
from .report import Report


def zeta_transform(
    values: Mapping[State, Value], lattice: StateLattice
) -> dict[State, Value]:
    """Cumulative coordinates: the value at g is the sum over lattice states
    h <= g (coordinate-wise). Missing input states count as 0.

    Raises:
        SupportMismatchError: the input mentions states outside the lattice.
    """
    _check_support(values, lattice)
    out: dict[State, Value] = {}
    for g in lattice:
        total: Value = Fraction(0)
        for h in lattice:
            if h in values and state_leq(h, g):
                total = total + values[h]
        out[g] = total
    return out


def moebius_inverse(
    values: Mapping[State, Value], lattice: StateLattice
) -> dict[State, Value]:
    """The unique inverse of zeta_transform, computed by unitriangular
    back-substitution along the lattice's lexicographic linear extension."""
    _check_support(values, lattice)
    out: dict[State, Value] = {}
    for g in lattice:
        total: Value = values.get(g, Fraction(0))
        for h, done in out.items():
            if h != g and state_leq(h, g):
                total = total - done
        out[g] = total
    return out


def _check_support(values: Mapping[State, Value], lattice: StateLattice) -> None:
    for g in values:
        if g not in lattice:
            raise SupportMismatchError(f"state {g!r} is not in the lattice")


@dataclass(frozen=True)
class AlphaTable:
    """Cumulative weight rows: entry j of row i is the weight of states up to
    j at vertex i. Rational rows must be nondecreasing and end in 1."""

    rows: tuple[tuple[Value, ...], ...]

    def __post_init__(self) -> None:
        for idx, row in enumerate(self.rows):
            if not row:
                raise ValueError(f"row {idx + 1} is empty")
            if all(isinstance(v, Fraction) for v in row):
                if any(a > b for a, b in zip(row, row[1:])):
                    raise NotMonotoneError(f"row {idx + 1} is not nondecreasing")
                if row[-1] != 1:
                    raise NotMonotoneError(f"row {idx + 1} ends in {row[-1]}, not 1")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.rows[0])

    def weight(self, i: int, j: int) -> Value:
        return self.rows[i - 1][j]


@dataclass(frozen=True)
class XTable:
    """Multiplicative parameters: row i has k-1 entries whose partial
    products from the left rebuild the cumulative row of vertex i."""

    rows: tuple[tuple[Value, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.rows[0]) + 1

    def weight(self, i: int, r: int) -> Value:
        return self.rows[i - 1][r]


def alpha_params(theta: ParamTable) -> AlphaTable:
    """Partial sums of each weight row; the final entry is the constant 1
    (the whole row), also for symbolic rows."""
    rows = []
    for row in theta.rows:
        partial: Value = Fraction(0)
        out = []
        for j in range(len(row) - 1):
            partial = partial + row[j]
            out.append(partial)
        out.append(Fraction(1))
        rows.append(tuple(out))
    return AlphaTable(tuple(rows))


def theta_from_alpha(alpha: AlphaTable) -> ParamTable:
    """Consecutive differences; inverse of alpha_params.

    Raises:
        NotMonotoneError: a difference would be negative (cannot happen for a
            validated rational AlphaTable, but guards symbolic-free misuse).
    """
    rows = []
    for idx, row in enumerate(alpha.rows):
        out = [row[0]]
        for j in range(1, len(row)):
            diff = row[j] - row[j - 1]
            if isinstance(diff, Fraction) and diff < 0:
                raise NotMonotoneError(f"row {idx + 1} decreases at entry {j}")
            out.append(diff)
        rows.append(tuple(out))
    return ParamTable(tuple(rows))


def x_params(alpha: AlphaTable) -> XTable:
    """Ratios of consecutive cumulative weights, indexed so that the product
    of entries 0..k-j-2 of a row rebuilds the cumulative weight of level j.

    Rational tables only; a zero cumulative weight raises ZeroDivisionError.
    """
    k = alpha.k
    rows = []
    for i in range(1, alpha.n + 1):
        row: list[Value] = [Fraction(0)] * (k - 1)
        for j in range(1, k):
            row[k - j - 1] = alpha.weight(i, j - 1) / alpha.weight(i, j)
        rows.append(tuple(row))
    return XTable(tuple(rows))


def alpha_from_x(x: XTable) -> AlphaTable:
    """Rebuild cumulative rows from the multiplicative parameters; inverse of
    x_params."""
    k = x.k
    rows = []
    for i in range(1, x.n + 1):
        row = []
        for j in range(k):
            value: Value = Fraction(1)
            for r in range(k - j - 1):
                value = value * x.weight(i, r)
            row.append(value)
        rows.append(tuple(row))
    return AlphaTable(tuple(rows))


def zeta_factorization_check(dag: Dag, theta: ParamTable) -> Report:
    """Check that the cumulative coordinate of every lattice state factors as
    the product over vertices of the cumulative weight at the state's level.

    Exact for rational tables; symbolic tables are compared after reducing
    both sides modulo the row relations (rows sum to 1).
    """
    lattice = order_preserving_maps(transitive_closure(dag), dag.k)
    dist = full_distribution(dag, theta, lattice)
    cumulative = zeta_transform(dist, lattice)
    alpha = alpha_params(theta)
    failures = []
    for g in lattice:
        product: Value = Fraction(1)
        for pos, level in enumerate(g):
            product = product * alpha.weight(pos + 1, level)
        lhs = eliminate_simplex(cumulative[g], theta.n, theta.k)
        rhs = eliminate_simplex(product, theta.n, theta.k)
        if lhs != rhs:
            failures.append(f"state {''.join(map(str, g))}")
    detail = f"{len(lattice)} states factor exactly" if not failures else ""
    return Report("eq5", total=len(lattice), failures=failures, detail=detail)


def roundtrip_check(lattice: StateLattice, trials: int = 100, seed: int = 0) -> Report:
    """Check zeta then Moebius and Moebius then zeta are identities on seeded
    random rational lattice functions (not restricted to probabilities)."""
    rng = random.Random(seed)
    failures = []
    for trial in range(trials):
        values = {
            g: Fraction(rng.randint(-1000, 1000), rng.randint(1, 60)) for g in lattice
        }
        if moebius_inverse(zeta_transform(values, lattice), lattice) != values:
            failures.append(f"trial {trial}: zeta then inverse")
        if zeta_transform(moebius_inverse(values, lattice), lattice) != values:
            failures.append(f"trial {trial}: inverse then zeta")
    detail = f"{trials} random functions round-trip" if not failures else ""
    return Report("moebius", total=2 * trials, failures=failures, detail=detail)
