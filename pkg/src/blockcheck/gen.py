"""Seeded random instances for the test corpus and the CLI generator.

Everything takes an explicit random.Random so runs are reproducible from a
seed. Clauses sample distinct variables, hence are never tautological —
the deciders' tautology corners are exercised by fixed fixtures instead.
"""

from __future__ import annotations

from random import Random

from .cnf import Clause, Formula
from .varelim import QbfInstance


def random_clause(rng: Random, nvars: int, width: int) -> Clause:
    width = max(1, min(width, nvars))
    chosen = rng.sample(range(1, nvars + 1), width)
    return Clause(v if rng.random() < 0.5 else -v for v in chosen)


def random_formula(rng: Random, nvars: int, nclauses: int, max_width: int) -> Formula:
    f = Formula()
    for _ in range(nclauses):
        f.add(random_clause(rng, nvars, rng.randint(1, max_width)))
    return f


def random_instance(
    rng: Random,
    max_vars: int = 8,
    max_clauses: int = 12,
    max_width: int = 4,
) -> tuple[Formula, Clause]:
    """A small formula plus a non-tautological clause to ask about.

    The clause is a member of the formula about half the time; the
    definitions do not require membership, and both cases should behave
    identically everywhere except clause-removal itself.
    """
    nvars = rng.randint(2, max_vars)
    width = min(max_width, nvars)
    f = random_formula(rng, nvars, rng.randint(1, max_clauses), width)
    c = random_clause(rng, nvars, rng.randint(1, width))
    if rng.random() < 0.5:
        f.add(c)
    return f, c


def random_qbf(
    rng: Random,
    max_vars: int = 6,
    max_clauses: int = 8,
    max_width: int = 3,
) -> QbfInstance:
    """A two-block ∀X∃Y instance; either block may come out empty."""
    total = rng.randint(1, max_vars)
    split = rng.randint(0, total)
    matrix = random_formula(rng, total, rng.randint(1, max_clauses), min(max_width, total))
    return QbfInstance(
        universals=frozenset(range(1, split + 1)),
        existentials=frozenset(range(split + 1, total + 1)),
        matrix=matrix,
    )
