"""Variable elimination and the quantified encodings built on it.

Eliminating x replaces the clauses mentioning x by all non-tautological
resolvents between the x-side and the not-x-side. Two characterizations live
here: a non-tautological clause is semantically blocked exactly when
eliminating all of its variables from (tautology-free environment + clause)
leaves nothing, and a literal blocks it exactly when every resolvent upon
that literal is tautological. Both are guarded against tautological input,
where they are simply not equivalent to the definitions. The same instance
data can instead be emitted as a forall-exists formula in QDIMACS.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cnf import (
    Clause,
    Formula,
    as_clause,
    external_variables,
    resolution_environment,
    resolvent,
)
from .errors import ParseError, ResourceLimit


def all_resolvents(f: Formula, var: int) -> list[Clause]:
    """Every non-tautological resolvent upon var, in formula-order pairs."""
    out = []
    for d1 in f.clauses_with(var):
        for d2 in f.clauses_with(-var):
            r = resolvent(d1, d2, var)
            if not r.is_tautology():
                out.append(r)
    return out


def eliminate_variable(f: Formula, var: int) -> Formula:
    """Replace all clauses on var by their non-tautological resolvents."""
    out = Formula(c for c in f if var not in c.variables())
    for r in sorted(all_resolvents(f, var), key=Clause.sort_key):
        out.add(r)
    return out


def eliminate_variables(
    f: Formula,
    variables: Sequence[int],
    max_clauses: int = 100_000,
) -> Formula:
    """Eliminate the given variables in order, bailing out on clause blow-up."""
    out = f
    for var in variables:
        out = eliminate_variable(out, var)
        if len(out) > max_clauses:
            raise ResourceLimit(
                "elimination grew to %d clauses (limit %d)" % (len(out), max_clauses)
            )
    return out


def _require_not_tautology(c: Clause) -> None:
    if c.is_tautology():
        raise ValueError(
            "elimination characterizations apply to non-tautological clauses only"
        )


def sem_blocked_via_elimination(
    f: Formula,
    c: "Clause | Iterable[int]",
    order: Sequence[int] | None = None,
    max_clauses: int = 100_000,
) -> bool:
    """Decide semantic blocking of a non-tautological clause by elimination.

    Build the tautology-free resolution environment of c plus c itself, then
    eliminate every variable of c: the clause is semantically blocked iff no
    clause survives. The result does not depend on the elimination order;
    `order` (a permutation of c's variables) only changes the intermediate
    formulas.
    """
    c = as_clause(c)
    _require_not_tautology(c)
    cvars = sorted(c.variables())
    if order is None:
        order = cvars
    else:
        order = [int(v) for v in order]
        if sorted(order) != cvars:
            raise ValueError("order must be a permutation of the clause's variables")
    core = Formula(d for d in resolution_environment(f, c) if not d.is_tautology())
    core.add(c)
    return len(eliminate_variables(core, order, max_clauses)) == 0


def literal_blocked_via_elimination(f: Formula, c: "Clause | Iterable[int]", lit: int) -> bool:
    """True iff every resolvent of the non-tautological c upon lit is tautological.

    Partners are taken as they come: filtering tautological partners first
    would change the answer (a partner tautological through the pivot pair
    resolves to c minus nothing gained, and legitimately blocks nothing).
    """
    c = as_clause(c)
    _require_not_tautology(c)
    if lit not in c:
        raise ValueError("literal %d does not occur in the clause" % lit)
    return all(resolvent(c, d, lit).is_tautology() for d in f.clauses_with(-lit))


@dataclass(frozen=True)
class QbfInstance:
    """A forall-exists formula: universal block, existential block, CNF matrix."""

    universals: frozenset[int]
    existentials: frozenset[int]
    matrix: Formula

    def __post_init__(self):
        object.__setattr__(self, "universals", frozenset(int(v) for v in self.universals))
        object.__setattr__(self, "existentials", frozenset(int(v) for v in self.existentials))
        if any(v < 1 for v in self.universals | self.existentials):
            raise ValueError("malformed prefix: variables are positive ints")
        overlap = self.universals & self.existentials
        if overlap:
            raise ValueError(
                "malformed prefix: variables %s quantified twice" % sorted(overlap)
            )
        free = self.matrix.variables() - self.universals - self.existentials
        if free:
            raise ValueError("malformed prefix: matrix variables %s unquantified" % sorted(free))


def encode_qbf(f: Formula, c: "Clause | Iterable[int]") -> QbfInstance:
    """Encode blocking of a non-tautological c as a forall-exists instance.

    Universals are the external variables of c's environment, existentials
    are c's own variables, and the matrix is environment + c. The instance is
    true iff c is semantically blocked in f.
    """
    c = as_clause(c)
    _require_not_tautology(c)
    matrix = Formula(resolution_environment(f, c))
    matrix.add(c)
    return QbfInstance(
        universals=frozenset(external_variables(f, c)),
        existentials=c.variables(),
        matrix=matrix,
    )


def write_qdimacs(q: QbfInstance) -> str:
    """Serialize as QDIMACS: header, 'a' line, 'e' line, canonical clauses."""
    body = sorted(q.matrix, key=Clause.sort_key)
    max_var = max(
        (v for group in (q.universals, q.existentials) for v in group),
        default=0,
    )
    lines = ["p cnf %d %d" % (max_var, len(body))]
    if q.universals:
        lines.append("a %s 0" % " ".join(str(v) for v in sorted(q.universals)))
    if q.existentials:
        lines.append("e %s 0" % " ".join(str(v) for v in sorted(q.existentials)))
    lines.extend(c.dimacs() for c in body)
    return "\n".join(lines) + "\n"


def parse_qdimacs(source: "str | bytes", strict: bool = False) -> QbfInstance:
    """Parse QDIMACS with a single optional 'a' block then a single optional 'e' block.

    The matrix may not mention unquantified variables. Count mismatches with
    the header warn by default and raise ParseError under strict=True, as in
    the plain CNF parser.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    declared_vars: int | None = None
    declared_clauses: int | None = None
    universals: list[int] = []
    existentials: list[int] = []
    seen_a = seen_e = False
    clauses: list[Clause] = []
    pending: list[int] = []
    in_matrix = False
    for raw in source.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if declared_vars is not None:
                raise ParseError("duplicate header line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("malformed header: %r" % line)
            try:
                declared_vars = int(parts[2])
                declared_clauses = int(parts[3])
            except ValueError:
                raise ParseError("malformed header: %r" % line) from None
            continue
        if declared_vars is None:
            raise ParseError("content before header: %r" % line)
        kind = line.split(None, 1)[0]
        if kind in ("a", "e"):
            if in_matrix:
                raise ParseError("quantifier line after matrix clauses")
            if kind == "a":
                if seen_a or seen_e:
                    raise ParseError("misplaced or repeated 'a' block")
                seen_a = True
                target = universals
            else:
                if seen_e:
                    raise ParseError("repeated 'e' block")
                seen_e = True
                target = existentials
            toks = line.split()[1:]
            if not toks or toks[-1] != "0":
                raise ParseError("unterminated quantifier line: %r" % line)
            for tok in toks[:-1]:
                try:
                    var = int(tok)
                except ValueError:
                    raise ParseError("bad token %r" % tok) from None
                if var < 1:
                    raise ParseError("bad quantified variable %r" % tok)
                if var in universals or var in existentials:
                    raise ParseError("variable %d quantified twice" % var)
                target.append(var)
            continue
        in_matrix = True
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError("bad token %r" % tok) from None
            if lit == 0:
                clauses.append(Clause(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise ParseError("unterminated clause at end of input")
    if declared_vars is None:
        raise ParseError("missing header")
    matrix = Formula(clauses)
    free = matrix.variables() - set(universals) - set(existentials)
    if free:
        raise ParseError("free matrix variables %s" % sorted(free))
    if len(clauses) != declared_clauses:
        msg = "declared %d clauses, parsed %d" % (declared_clauses, len(clauses))
        if strict:
            raise ParseError(msg)
        warnings.warn(msg, stacklevel=2)
    max_var = max(
        (abs(l) for c in clauses for l in c),
        default=max(universals + existentials, default=0),
    )
    if max_var > declared_vars:
        msg = "declared %d variables but found id %d" % (declared_vars, max_var)
        if strict:
            raise ParseError(msg)
        warnings.warn(msg, stacklevel=2)
    return QbfInstance(frozenset(universals), frozenset(existentials), matrix)
