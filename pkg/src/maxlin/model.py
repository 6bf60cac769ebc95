"""Exact evaluation of the max-of-parents model and of the event-accumulation
model on a poset, plus the two-state correspondence between them.

All probabilities are Fractions; passing a symbolic ParamTable (rows of
polynomial variables) yields the same formulas as polynomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Union

from .algebra import Polynomial, parse_fraction, fraction_text, theta_var
from .dag import Dag, ancestors, transitive_closure
from .errors import BadStateError, NotAnIdealError, ParseError, TooLargeError
from .poset import (
    Poset,
    State,
    StateLattice,
    ideal_lattice,
    is_order_ideal,
    order_preserving_maps,
)
from .report import Report

Value = Union[Fraction, Polynomial]

DEFAULT_ORACLE_LIMIT = 10**7


@dataclass(frozen=True)
class ParamTable:
    """Per-vertex innovation distributions: row i-1 holds the k state weights
    of vertex i. Rational rows must be nonnegative and sum to exactly 1;
    polynomial rows are accepted for symbolic work and not checked."""

    rows: tuple[tuple[Value, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("parameter table needs at least one row")
        k = len(self.rows[0])
        for idx, row in enumerate(self.rows):
            if len(row) != k:
                raise ValueError(f"row {idx + 1} has {len(row)} entries, expected {k}")
            if all(isinstance(v, Fraction) for v in row):
                if any(v < 0 for v in row):
                    raise ValueError(f"row {idx + 1} has a negative weight")
                if sum(row) != 1:
                    raise ValueError(f"row {idx + 1} sums to {sum(row)}, not 1")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.rows[0])

    def weight(self, i: int, j: int) -> Value:
        """Weight of state j at vertex i (1-indexed vertex)."""
        return self.rows[i - 1][j]

    def swapped(self) -> "ParamTable":
        """Rows reversed; for k=2 this swaps the two state weights."""
        return ParamTable(tuple(tuple(reversed(row)) for row in self.rows))

    @classmethod
    def from_rows(cls, rows) -> "ParamTable":
        return cls(
            tuple(
                tuple(v if isinstance(v, Polynomial) else Fraction(v) for v in row)
                for row in rows
            )
        )

    @classmethod
    def from_json_dict(cls, data: dict) -> "ParamTable":
        if not isinstance(data, dict) or "theta" not in data:
            raise ParseError('parameter file must be a JSON object with a "theta" key')
        rows = data["theta"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError('"theta" must be a list of rows of rational strings')
        return cls(tuple(tuple(parse_fraction(str(v)) for v in row) for row in rows))

    def to_json_dict(self) -> dict:
        return {"theta": [[fraction_text(v) for v in row] for row in self.rows]}

    @classmethod
    def uniform(cls, n: int, k: int) -> "ParamTable":
        return cls(tuple(tuple(Fraction(1, k) for _ in range(k)) for _ in range(n)))

    @classmethod
    def random(cls, n: int, k: int, rng: random.Random, max_numerator: int = 200) -> "ParamTable":
        """Strictly positive rows: k uniform numerators normalized by their
        sum, so reduced denominators stay at or below k * max_numerator."""
        rows = []
        for _ in range(n):
            nums = [rng.randint(1, max_numerator) for _ in range(k)]
            total = sum(nums)
            rows.append(tuple(Fraction(a, total) for a in nums))
        return cls(tuple(rows))

    @classmethod
    def symbolic(cls, n: int, k: int) -> "ParamTable":
        """Rows of formal weight variables."""
        return cls(
            tuple(
                tuple(Polynomial.from_variable(theta_var(i, j)) for j in range(k))
                for i in range(1, n + 1)
            )
        )


def _check_vector(g, n: int, k: int) -> None:
    if len(g) != n or any(not isinstance(v, int) or not 0 <= v < k for v in g):
        raise BadStateError(f"vector {tuple(g)!r} is not over {{0..{k - 1}}}^{n}")


def _check_table(dag: Dag, theta: ParamTable) -> None:
    if theta.n != dag.n or theta.k != dag.k:
        raise ValueError(
            f"parameter table is {theta.n}x{theta.k}, graph needs {dag.n}x{dag.k}"
        )


def conditional_probability(dag: Dag, theta: ParamTable, i: int, g) -> Value:
    """P(X_i = g_i | parents at their g values) for the max-of-parents model.

    With M the maximum of the parent values (0 for a source vertex): 0 when
    g_i < M; the partial weight sum up to M when g_i = M; the single weight
    of g_i when g_i > M. A full-row sum (M = k-1) is returned as the constant
    1, which the row invariant guarantees and which keeps symbolic output in
    the same reduced form the weights satisfy on the simplex.
    """
    _check_table(dag, theta)
    _check_vector(g, dag.n, dag.k)
    parent_values = [g[j - 1] for j in dag.parents(i)]
    m = max(parent_values, default=0)
    if g[i - 1] < m:
        return Fraction(0)
    if g[i - 1] == m:
        if m == dag.k - 1:
            return Fraction(1)
        return sum((theta.weight(i, level) for level in range(m + 1)), Fraction(0))
    return theta.weight(i, g[i - 1])


def joint_factored(dag: Dag, theta: ParamTable, g) -> Value:
    """Product of the conditional probabilities over all vertices; 0 exactly
    when g is not order-preserving for the reachability poset."""
    result: Value = Fraction(1)
    for i in range(1, dag.n + 1):
        factor = conditional_probability(dag, theta, i, g)
        if factor == 0:
            return Fraction(0)
        result = result * factor
    return result


def full_distribution(
    dag: Dag, theta: ParamTable, lattice: StateLattice | None = None
) -> dict[State, Value]:
    """The factored joint over every lattice state; values sum to 1."""
    if lattice is None:
        lattice = order_preserving_maps(transitive_closure(dag), dag.k)
    return {g: joint_factored(dag, theta, g) for g in lattice}


def _ancestor_positions(dag: Dag) -> list[tuple[int, ...]]:
    """0-indexed positions of ancestors-with-self for each vertex."""
    return [
        tuple(sorted(j - 1 for j in ancestors(dag, i) | {i}))
        for i in range(1, dag.n + 1)
    ]


def joint_oracle(dag: Dag, theta: ParamTable, g, limit: int = DEFAULT_ORACLE_LIMIT) -> Value:
    """Independent probability of g by brute force over all innovation
    vectors z: each vertex takes the max innovation over its ancestors and
    itself, and the matching z contribute the product of their weights.

    Raises:
        TooLargeError: k**n exceeds the enumeration guard.
    """
    _check_table(dag, theta)
    _check_vector(g, dag.n, dag.k)
    target = tuple(g)
    total: Value = Fraction(0)
    for outcome, weight in _innovation_outcomes(dag, theta, limit):
        if outcome == target:
            total = total + weight
    return total


def oracle_distribution(
    dag: Dag, theta: ParamTable, limit: int = DEFAULT_ORACLE_LIMIT
) -> dict[State, Value]:
    """All oracle probabilities from a single enumeration pass; states the
    model cannot reach are absent."""
    _check_table(dag, theta)
    out: dict[State, Value] = {}
    for outcome, value in _innovation_outcomes(dag, theta, limit):
        out[outcome] = out.get(outcome, Fraction(0)) + value
    return out


def _innovation_outcomes(dag: Dag, theta: ParamTable, limit: int):
    count = dag.k**dag.n
    if count > limit:
        raise TooLargeError(
            f"enumeration needs {dag.k}**{dag.n} = {count} innovation vectors"
            f" but the guard is {limit}"
        )
    anc = _ancestor_positions(dag)
    for z in product(range(dag.k), repeat=dag.n):
        outcome = tuple(max(z[p] for p in positions) for positions in anc)
        weight: Value = Fraction(1)
        for pos, level in enumerate(z):
            weight = weight * theta.weight(pos + 1, level)
        yield outcome, weight


def cbn_conditional(poset: Poset, theta: ParamTable, i, g) -> Value:
    """Conditional probability of the event-accumulation model on a poset:
    an element can only occur once everything it covers has occurred; given
    that, it occurs with its own two-state weight."""
    if theta.k != 2:
        raise ValueError(f"the accumulation model is two-state, table has k={theta.k}")
    if len(g) != len(poset.elements) or any(v not in (0, 1) for v in g):
        raise BadStateError(f"vector {tuple(g)!r} is not a 0-1 vector over the poset")
    pos = poset.index(i)
    if all(g[poset.index(j)] == 1 for j in poset.covers_below(i)):
        return theta.rows[pos][g[pos]]
    return Fraction(1) if g[pos] == 0 else Fraction(0)


def cbn_distribution(poset: Poset, theta: ParamTable) -> dict[State, Value]:
    """The accumulation model's joint over the order ideals of the poset,
    ideals written as 0-1 indicator vectors."""
    lattice = ideal_lattice(poset)
    out: dict[State, Value] = {}
    for g in lattice:
        value: Value = Fraction(1)
        for e in poset.elements:
            factor = cbn_conditional(poset, theta, e, g)
            if factor == 0:
                value = Fraction(0)
                break
            value = value * factor
        out[g] = value
    return out


def cbn_to_dmlbn_state(poset: Poset, g) -> State:
    """The state-space bijection for two states: complement the ideal
    indicator, so members sit at level 0 and non-members at level 1.

    Raises:
        NotAnIdealError: the indicator is not downward closed.
    """
    if not is_order_ideal(poset, tuple(g)):
        raise NotAnIdealError(f"{tuple(g)!r} is not an order ideal indicator")
    return tuple(1 - v for v in g)


def cbn_correspondence_check(dag: Dag, trials: int = 100, seed: int = 0) -> Report:
    """Check that the accumulation model on the reachability poset equals the
    two-state max model after complementing states and swapping the two
    weights per vertex: symbolically, and on seeded random rational tables.
    """
    dag2 = Dag(n=dag.n, k=2, edges=dag.edges)
    closure = transitive_closure(dag2)
    ideals = ideal_lattice(closure)
    failures: list[str] = []

    def compare(theta: ParamTable, label: str) -> None:
        accum = cbn_distribution(closure, theta)
        maxmodel = full_distribution(dag2, theta.swapped())
        for g in ideals:
            image = cbn_to_dmlbn_state(closure, g)
            if accum[g] != maxmodel[image]:
                failures.append(
                    f"{label}: ideal {''.join(map(str, g))} vs state "
                    f"{''.join(map(str, image))}"
                )

    compare(ParamTable.symbolic(dag.n, 2), "symbolic")
    rng = random.Random(seed)
    for trial in range(trials):
        compare(ParamTable.random(dag.n, 2, rng), f"trial {trial}")
    total = (trials + 1) * len(ideals)
    detail = (
        f"{len(ideals)} states match symbolically and on {trials} random tables"
        if not failures
        else ""
    )
    return Report("theorem31", total=total, failures=failures, detail=detail)


def oracle_equivalence_check(
    dag: Dag,
    trials: int = 50,
    seed: int = 0,
    limit: int = DEFAULT_ORACLE_LIMIT,
) -> Report:
    """Check the factored joint against the brute-force innovation oracle on
    the whole k**n box, and that the factored joint vanishes exactly off the
    state lattice, for seeded random strictly positive tables."""
    lattice = order_preserving_maps(transitive_closure(dag), dag.k)
    rng = random.Random(seed)
    failures: list[str] = []
    checks = 0
    for trial in range(trials):
        theta = ParamTable.random(dag.n, dag.k, rng)
        by_oracle = oracle_distribution(dag, theta, limit=limit)
        for g in product(range(dag.k), repeat=dag.n):
            checks += 1
            factored = joint_factored(dag, theta, g)
            if factored != by_oracle.get(g, Fraction(0)):
                failures.append(f"trial {trial}: state {''.join(map(str, g))}")
            elif (factored == 0) != (g not in lattice):
                failures.append(f"trial {trial}: support at {''.join(map(str, g))}")
    detail = (
        f"{trials}/{trials} trials, {len(lattice)} states each, exact match"
        if not failures
        else ""
    )
    return Report("oracle", total=checks, failures=failures, detail=detail)


def eliminate_simplex(value: Value, n: int, k: int) -> Value:
    """Canonical form modulo the row relations: substitute the top weight of
    every vertex by one minus the rest of its row. Identities that hold on
    the simplex become exact polynomial identities after this."""
    if not isinstance(value, Polynomial):
        return value
    mapping = {}
    for i in range(1, n + 1):
        rest = Polynomial.one()
        for j in range(k - 1):
            rest = rest - Polynomial.from_variable(theta_var(i, j))
        mapping[theta_var(i, k - 1)] = rest
    return value.substitute(mapping)
