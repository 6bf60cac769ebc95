"""Finite posets, order ideals, order-preserving maps, and state lattices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterator

from .errors import BadStateError, NotAStateError

Label = Hashable
State = tuple[int, ...]


@dataclass(frozen=True)
class Poset:
    """A finite partial order given by its full relation (reflexive pairs included).

    `elements` fixes the coordinate order used by indicator vectors and state
    vectors; `relation` holds every pair (a, b) with a <= b. The axioms are
    checked at construction (desk scale, so the cubic loop is fine).
    """

    elements: tuple[Label, ...]
    relation: frozenset[tuple[Label, Label]]

    def __post_init__(self) -> None:
        members = set(self.elements)
        if len(members) != len(self.elements):
            raise ValueError("duplicate poset elements")
        for a, b in self.relation:
            if a not in members or b not in members:
                raise ValueError(f"relation pair ({a!r}, {b!r}) outside the element set")
        for a in self.elements:
            if (a, a) not in self.relation:
                raise ValueError(f"relation is not reflexive at {a!r}")
        for a, b in self.relation:
            if a != b and (b, a) in self.relation:
                raise ValueError(f"relation is not antisymmetric on ({a!r}, {b!r})")
        for a, b in self.relation:
            for c in self.elements:
                if (b, c) in self.relation and (a, c) not in self.relation:
                    raise ValueError(f"relation is not transitive on ({a!r}, {b!r}, {c!r})")

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, element: Label) -> int:
        return self.elements.index(element)

    def leq(self, a: Label, b: Label) -> bool:
        return (a, b) in self.relation

    def strict_pairs(self) -> list[tuple[Label, Label]]:
        """All (a, b) with a < b, sorted by element position."""
        pos = {e: i for i, e in enumerate(self.elements)}
        pairs = [(a, b) for a, b in self.relation if a != b]
        pairs.sort(key=lambda p: (pos[p[0]], pos[p[1]]))
        return pairs

    def covers(self) -> list[tuple[Label, Label]]:
        """All cover pairs (a, b): a < b with nothing strictly between."""
        out = []
        for a, b in self.strict_pairs():
            if not any(
                c != a and c != b and self.leq(a, c) and self.leq(c, b)
                for c in self.elements
            ):
                out.append((a, b))
        return out

    def covers_below(self, b: Label) -> tuple[Label, ...]:
        return tuple(a for a, c in self.covers() if c == b)

    def dual(self) -> "Poset":
        return Poset(self.elements, frozenset((b, a) for a, b in self.relation))

    def to_json_dict(self) -> dict:
        return {
            "elements": [_json_label(e) for e in self.elements],
            "strict_relations": [
                [_json_label(a), _json_label(b)] for a, b in self.strict_pairs()
            ],
        }


def _json_label(e: Label):
    return list(e) if isinstance(e, tuple) else e


def antichain(labels: tuple[Label, ...]) -> Poset:
    return Poset(labels, frozenset((a, a) for a in labels))


def chain(length: int) -> Poset:
    """The chain 0 < 1 < ... < length-1."""
    elems = tuple(range(length))
    rel = frozenset((a, b) for a in elems for b in elems if a <= b)
    return Poset(elems, rel)


@dataclass(frozen=True)
class StateLattice:
    """The distributive lattice of length-n vectors over {0..k-1}, ordered
    coordinate-wise, closed under coordinate-wise min and max.

    `states` is sorted lexicographically and that order is a linear extension
    of the lattice order.
    """

    n: int
    k: int
    states: tuple[State, ...]
    _members: frozenset[State] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.states))

    def __iter__(self) -> Iterator[State]:
        return iter(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, g: object) -> bool:
        return g in self._members

    @property
    def bottom(self) -> State:
        return self.states[0]

    @property
    def top(self) -> State:
        return self.states[-1]


def state_leq(g: State, h: State) -> bool:
    return all(a <= b for a, b in zip(g, h))


def lattice_meet_join(g: State, h: State) -> tuple[State, State]:
    """Coordinate-wise (min, max); both lie in any lattice containing g and h."""
    meet = tuple(min(a, b) for a, b in zip(g, h))
    join = tuple(max(a, b) for a, b in zip(g, h))
    return meet, join


def _monotone_vectors(poset: Poset, k: int, *, reverse: bool = False) -> list[State]:
    """All vectors over {0..k-1} monotone along the poset relation, in
    lexicographic order.

    Backtracks position by position, pruning as soon as an assigned pair
    violates the relation; with reverse=True the vectors must be
    order-reversing instead (used for order-ideal indicators).
    """
    n = len(poset.elements)
    if k < 1:
        raise ValueError(f"chain size must be >= 1, got {k}")
    # constraints[t]: list of (s, lo) meaning value[s] must be <= value[t]
    # when lo else >= value[t], for already-assigned s < t
    constraints: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
    for t, et in enumerate(poset.elements):
        for s in range(t):
            es = poset.elements[s]
            if poset.leq(es, et):
                constraints[t].append((s, not reverse))
            elif poset.leq(et, es):
                constraints[t].append((s, reverse))
    out: list[State] = []
    value = [0] * n

    def extend(t: int) -> None:
        if t == n:
            out.append(tuple(value))
            return
        for v in range(k):
            ok = True
            for s, lo in constraints[t]:
                if lo:
                    if value[s] > v:
                        ok = False
                        break
                elif value[s] < v:
                    ok = False
                    break
            if ok:
                value[t] = v
                extend(t + 1)

    extend(0)
    return out


def order_preserving_maps(poset: Poset, k: int) -> StateLattice:
    """The lattice of all vectors g over {0..k-1} with a <= b implying
    g_a <= g_b, coordinates taken in `poset.elements` order."""
    states = _monotone_vectors(poset, k)
    return StateLattice(n=len(poset.elements), k=k, states=tuple(states))


def order_ideals(poset: Poset) -> list[State]:
    """All order ideals as 0-1 indicator vectors over `poset.elements`,
    lexicographically ordered. An indicator is an ideal iff it never drops
    from 0 back to 1 going down the order."""
    return _monotone_vectors(poset, 2, reverse=True)


def ideal_lattice(poset: Poset) -> StateLattice:
    """Order ideals as a 2-state lattice: inclusion is the coordinate-wise
    order on indicators, intersection/union are min/max."""
    return StateLattice(n=len(poset.elements), k=2, states=tuple(order_ideals(poset)))


def ideal_members(poset: Poset, indicator: State) -> frozenset[Label]:
    return frozenset(e for e, bit in zip(poset.elements, indicator) if bit)


def is_order_ideal(poset: Poset, indicator: State) -> bool:
    if len(indicator) != len(poset.elements) or any(b not in (0, 1) for b in indicator):
        raise BadStateError(f"indicator {indicator!r} is not a 0-1 vector over the poset")
    for i, ei in enumerate(poset.elements):
        if not indicator[i]:
            continue
        for j, ej in enumerate(poset.elements):
            if poset.leq(ej, ei) and not indicator[j]:
                return False
    return True


def is_order_preserving(poset: Poset, g: State, k: int) -> bool:
    if len(g) != len(poset.elements) or any(not 0 <= v < k for v in g):
        raise BadStateError(f"vector {g!r} is not over {{0..{k - 1}}}^{len(poset.elements)}")
    for i, ei in enumerate(poset.elements):
        for j, ej in enumerate(poset.elements):
            if poset.leq(ei, ej) and g[i] > g[j]:
                return False
    return True


def chain_product(poset: Poset, m: int) -> Poset:
    """The product poset with elements (e, r) for r in 0..m-1 and
    (a, r) <= (b, s) iff a <= b and r <= s."""
    if m < 0:
        raise ValueError(f"chain size must be >= 0, got {m}")
    elems = tuple((e, r) for e in poset.elements for r in range(m))
    rel = frozenset(
        ((a, r), (b, s))
        for a, r in elems
        for b, s in elems
        if poset.leq(a, b) and r <= s
    )
    return Poset(elems, rel)


def state_to_ideal(poset: Poset, g: State, k: int) -> frozenset[tuple[Label, int]]:
    """Send a lattice state to its order ideal in chain_product(poset, k-1):
    all (e_i, r) with r <= k - g_i - 2.

    The map is an order-reversing bijection onto the product's order ideals.

    Raises:
        NotAStateError: g is not order-preserving for the poset.
    """
    if not is_order_preserving(poset, g, k):
        raise NotAStateError(f"{g!r} is not order-preserving for the poset")
    return frozenset(
        (e, r) for e, v in zip(poset.elements, g) for r in range(k - v - 1)
    )


def incomparable_pairs(lattice: StateLattice) -> list[tuple[State, State]]:
    """All unordered incomparable pairs, listed as (g, h) with g before h in
    the lattice's lexicographic state order."""
    out = []
    states = lattice.states
    for i, g in enumerate(states):
        for h in states[i + 1 :]:
            if not state_leq(g, h) and not state_leq(h, g):
                out.append((g, h))
    return out
