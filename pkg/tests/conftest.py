"""Shared fixtures: the figure inputs, the fixed DAG catalog, independent
brute-force enumerators, and random generators for property-style tests."""

from __future__ import annotations

import random
from itertools import product

import pytest

from maxlin import data
from maxlin.dag import Dag, parse_dag, transitive_closure
from maxlin.poset import Poset

# The fixed catalog used by the acceptance suite: 20 DAGs with n <= 5,
# including the two bundled figure graphs, chains, antichains, forks,
# colliders, diamonds, a transitive edge, and scrambled vertex labels.
CATALOG: list[tuple[str, int, tuple[tuple[int, int], ...]]] = [
    ("fig2", 5, ((1, 3), (1, 4), (2, 4), (3, 5), (4, 5))),
    ("fig3", 3, ((1, 2), (1, 3))),
    ("fig1_covers", 5, ((1, 3), (2, 3), (3, 4), (3, 5))),
    ("single", 1, ()),
    ("chain2", 2, ((1, 2),)),
    ("chain3", 3, ((1, 2), (2, 3))),
    ("chain4", 4, ((1, 2), (2, 3), (3, 4))),
    ("chain5", 5, ((1, 2), (2, 3), (3, 4), (4, 5))),
    ("antichain2", 2, ()),
    ("antichain3", 3, ()),
    ("collider", 3, ((1, 3), (2, 3))),
    ("diamond", 4, ((1, 2), (1, 3), (2, 4), (3, 4))),
    ("diamond_tail", 5, ((1, 2), (1, 3), (2, 4), (3, 4), (4, 5))),
    ("n_poset", 4, ((1, 3), (2, 3), (2, 4))),
    ("y_poset", 4, ((1, 3), (2, 3), (3, 4))),
    ("transitive_triangle", 3, ((1, 2), (2, 3), (1, 3))),
    ("transitive_plus", 4, ((1, 2), (2, 3), (1, 3), (3, 4))),
    ("scrambled", 4, ((4, 2), (1, 2), (4, 3))),
    ("reversed_fork", 3, ((3, 1), (3, 2))),
    ("bipartite22", 4, ((1, 3), (1, 4), (2, 3), (2, 4))),
]


def catalog_dag(name: str, k: int) -> Dag:
    for entry, n, edges in CATALOG:
        if entry == name:
            return Dag(n=n, k=k, edges=frozenset(edges))
    raise KeyError(name)


def catalog_dags(k: int) -> list[tuple[str, Dag]]:
    return [(name, Dag(n=n, k=k, edges=frozenset(edges))) for name, n, edges in CATALOG]


@pytest.fixture(scope="session")
def fig2_dag() -> Dag:
    return parse_dag(data.read("fig2.dag"))


@pytest.fixture(scope="session")
def fig3_dag() -> Dag:
    return parse_dag(data.read("fig3.dag"))


@pytest.fixture(scope="session")
def fig1_poset() -> Poset:
    return transitive_closure(parse_dag(data.read("fig1.poset")))


def brute_force_states(poset: Poset, k: int) -> list[tuple[int, ...]]:
    """Independent enumeration: filter the whole k**n box by checking every
    related pair directly against the poset relation."""
    n = len(poset.elements)
    out = []
    for g in product(range(k), repeat=n):
        ok = True
        for i, a in enumerate(poset.elements):
            for j, b in enumerate(poset.elements):
                if poset.leq(a, b) and g[i] > g[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(g)
    return out


def brute_force_ideals(poset: Poset) -> list[tuple[int, ...]]:
    """Independent enumeration of downward-closed indicator vectors."""
    n = len(poset.elements)
    out = []
    for ind in product((0, 1), repeat=n):
        ok = True
        for i, a in enumerate(poset.elements):
            if not ind[i]:
                continue
            for j, b in enumerate(poset.elements):
                if poset.leq(b, a) and not ind[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(ind)
    return out


def random_dag(rng: random.Random, max_n: int = 5, k: int = 2) -> Dag:
    """A random DAG with scrambled labels (edges follow a random topological
    order, so acyclicity holds by construction)."""
    n = rng.randint(1, max_n)
    order = rng.sample(range(1, n + 1), n)
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                edges.add((order[i], order[j]))
    return Dag(n=n, k=k, edges=frozenset(edges))
