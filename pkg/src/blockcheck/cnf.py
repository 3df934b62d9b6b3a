"""CNF core: signed-integer literals, clauses, formulas, assignments, DIMACS text.

Literals are nonzero Python ints in the DIMACS convention: variable v appears
as v (positive) or -v (negative), and -l is the complement of l. The canonical
literal order is by variable id, with the negative literal before the positive
one; clauses iterate in that order so every search and witness in the package
is deterministic.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Iterator, Mapping

from .errors import ParseError


def literal_key(lit: int) -> tuple[int, bool]:
    """Canonical sort key for literals: by variable, negative before positive."""
    return (abs(lit), lit > 0)


class Clause:
    """A duplicate-free set of literals.

    Construction deduplicates; iteration is in canonical order. Clauses are
    immutable, hashable, and compare by literal set. The empty clause is
    representable (and is never a tautology).
    """

    __slots__ = ("_lits", "_canon")

    def __init__(self, literals: Iterable[int] = ()):
        lits = frozenset(int(l) for l in literals)
        if 0 in lits:
            raise ValueError("0 is not a literal")
        self._lits = lits
        self._canon = tuple(sorted(lits, key=literal_key))

    @property
    def literals(self) -> tuple[int, ...]:
        return self._canon

    def __iter__(self) -> Iterator[int]:
        return iter(self._canon)

    def __len__(self) -> int:
        return len(self._lits)

    def __contains__(self, lit: int) -> bool:
        return lit in self._lits

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Clause):
            return self._lits == other._lits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._lits)

    def __or__(self, other: "Clause | Iterable[int]") -> "Clause":
        return Clause(self._lits | _litset(other))

    def __sub__(self, other: "Clause | Iterable[int]") -> "Clause":
        return Clause(self._lits - _litset(other))

    def __and__(self, other: "Clause | Iterable[int]") -> "Clause":
        return Clause(self._lits & _litset(other))

    def issubset(self, other: "Clause") -> bool:
        return self._lits <= other._lits

    def variables(self) -> frozenset[int]:
        return frozenset(abs(l) for l in self._lits)

    def complements(self) -> frozenset[int]:
        """The set of complements of this clause's literals."""
        return frozenset(-l for l in self._lits)

    def is_tautology(self) -> bool:
        return any(-l in self._lits for l in self._canon)

    def dimacs(self) -> str:
        """The clause as a zero-terminated DIMACS token string, e.g. '1 -2 0'."""
        return " ".join(str(l) for l in self._canon + (0,))

    def sort_key(self) -> tuple[tuple[int, bool], ...]:
        return tuple(literal_key(l) for l in self._canon)

    def __repr__(self) -> str:
        return "Clause(%s)" % " ".join(str(l) for l in self._canon)


def as_clause(c: "Clause | Iterable[int]") -> Clause:
    return c if isinstance(c, Clause) else Clause(c)


def _litset(x: "Clause | Iterable[int]") -> frozenset[int]:
    if isinstance(x, Clause):
        return x._lits
    return frozenset(int(l) for l in x)


class Formula:
    """A set of clauses with an occurrence index (literal -> clauses).

    Duplicate clauses collapse. Iteration order is insertion order, which is
    file order for parsed formulas; determinism everywhere else in the package
    leans on it. Equality is set equality and ignores order.
    """

    __slots__ = ("_seq", "_occ", "_next")

    def __init__(self, clauses: Iterable["Clause | Iterable[int]"] = ()):
        self._seq: dict[Clause, int] = {}
        self._occ: dict[int, set[Clause]] = {}
        self._next = 0
        for c in clauses:
            self.add(as_clause(c))

    def add(self, clause: "Clause | Iterable[int]") -> bool:
        """Add a clause; returns False if it was already present."""
        clause = as_clause(clause)
        if clause in self._seq:
            return False
        self._seq[clause] = self._next
        self._next += 1
        for l in clause:
            self._occ.setdefault(l, set()).add(clause)
        return True

    def remove(self, clause: "Clause | Iterable[int]") -> None:
        clause = as_clause(clause)
        del self._seq[clause]
        for l in clause:
            bucket = self._occ[l]
            bucket.discard(clause)
            if not bucket:
                del self._occ[l]

    def discard(self, clause: "Clause | Iterable[int]") -> bool:
        clause = as_clause(clause)
        if clause in self._seq:
            self.remove(clause)
            return True
        return False

    def __contains__(self, clause: object) -> bool:
        if isinstance(clause, Clause):
            return clause in self._seq
        return False

    def __len__(self) -> int:
        return len(self._seq)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self._seq)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Formula):
            return self._seq.keys() == other._seq.keys()
        return NotImplemented

    def __repr__(self) -> str:
        return "Formula(%d clauses, %d vars)" % (len(self), len(self.variables()))

    @property
    def clauses(self) -> list[Clause]:
        return list(self._seq)

    def seq_of(self, clause: Clause) -> int:
        """Stable insertion id of a clause, usable as a deterministic sort key."""
        return self._seq[clause]

    def variables(self) -> set[int]:
        return {abs(l) for l in self._occ}

    def clauses_with(self, lit: int) -> list[Clause]:
        """All clauses containing the literal, in insertion order."""
        return sorted(self._occ.get(lit, ()), key=self._seq.__getitem__)

    def clauses_with_any(self, lits: Iterable[int]) -> list[Clause]:
        """All clauses containing at least one of the literals, in insertion order."""
        hit: set[Clause] = set()
        for l in lits:
            hit.update(self._occ.get(l, ()))
        return sorted(hit, key=self._seq.__getitem__)

    def copy(self) -> "Formula":
        return Formula(self._seq)

    def without(self, clause: "Clause | Iterable[int]") -> "Formula":
        clause = as_clause(clause)
        return Formula(c for c in self._seq if c != clause)

    def with_clause(self, clause: "Clause | Iterable[int]") -> "Formula":
        out = self.copy()
        out.add(clause)
        return out

    def check_occ_consistent(self) -> bool:
        """Verification mode: recompute the occurrence index and compare."""
        want: dict[int, set[Clause]] = {}
        for c in self._seq:
            for l in c:
                want.setdefault(l, set()).add(c)
        return want == self._occ


class Assignment:
    """A partial truth assignment, mapping variables to 0/1.

    Immutable: all updates return new assignments. Hashable, so assignments
    can key the per-assignment witness maps of the super-blocking checker.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: "Mapping[int, int] | Assignment" = ()):
        if isinstance(mapping, Assignment):
            self._map = dict(mapping._map)
        else:
            self._map = {}
            for var, val in dict(mapping).items():
                var = int(var)
                val = int(val)
                if var < 1:
                    raise ValueError("variables are positive ints, got %r" % var)
                if val not in (0, 1):
                    raise ValueError("truth values are 0 or 1, got %r" % val)
                self._map[var] = val
        self._hash: int | None = None

    @classmethod
    def from_literals(cls, lits: Iterable[int]) -> "Assignment":
        """Build an assignment from signed literals (v true, -v false)."""
        out = {}
        for l in lits:
            var = abs(int(l))
            val = 1 if l > 0 else 0
            if out.get(var, val) != val:
                raise ValueError("conflicting literals for variable %d" % var)
            out[var] = val
        return cls(out)

    def value(self, var: int) -> int | None:
        return self._map.get(var)

    def lit_value(self, lit: int) -> int | None:
        v = self._map.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else 1 - v

    def satisfies_clause(self, clause: "Clause | Iterable[int]") -> bool:
        return any(self.lit_value(l) == 1 for l in as_clause(clause))

    def falsifies_clause(self, clause: "Clause | Iterable[int]") -> bool:
        return all(self.lit_value(l) == 0 for l in as_clause(clause))

    def variables(self) -> set[int]:
        return set(self._map)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._map.items())

    def is_total_over(self, variables: Iterable[int]) -> bool:
        return all(v in self._map for v in variables)

    def flip(self, lit: int) -> "Assignment":
        """Toggle the value of var(lit); the variable must be assigned."""
        var = abs(lit)
        if var not in self._map:
            raise ValueError("cannot flip unassigned variable %d" % var)
        out = dict(self._map)
        out[var] = 1 - out[var]
        return Assignment(out)

    def extended(self, var: int, val: int) -> "Assignment":
        """Bind one more variable; rebinding to a different value is an error."""
        old = self._map.get(var)
        if old is not None and old != int(val):
            raise ValueError("variable %d is already bound" % var)
        out = dict(self._map)
        out[var] = int(val)
        return Assignment(out)

    def restrict_to(self, variables: Iterable[int]) -> "Assignment":
        keep = set(variables)
        return Assignment({v: b for v, b in self._map.items() if v in keep})

    def to_literals(self) -> tuple[int, ...]:
        """The assignment as sorted signed literals."""
        return tuple(v if b else -v for v, b in sorted(self._map.items()))

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Assignment):
            return self._map == other._map
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __repr__(self) -> str:
        return "Assignment(%s)" % " ".join(str(l) for l in self.to_literals())


def resolvent(c: "Clause | Iterable[int]", d: "Clause | Iterable[int]", pivot: int) -> Clause:
    """The resolvent of c and d upon `pivot`: (c minus pivot) joined with (d minus its complement).

    c must contain the pivot literal and d its complement.
    """
    c = as_clause(c)
    d = as_clause(d)
    if pivot not in c:
        raise ValueError("pivot %d not in first clause" % pivot)
    if -pivot not in d:
        raise ValueError("complement of pivot %d not in second clause" % pivot)
    return (c - (pivot,)) | (d - (-pivot,))


def resolution_environment(f: Formula, c: "Clause | Iterable[int]") -> list[Clause]:
    """All clauses of f that contain a literal whose complement is in c.

    These are exactly the clauses c can be resolved with. c itself qualifies
    only when it is a tautology and a member of f. Returned in formula order.
    """
    c = as_clause(c)
    return f.clauses_with_any(c.complements())


def external_variables(f: Formula, c: "Clause | Iterable[int]") -> set[int]:
    """Variables of the resolution environment that do not occur in c."""
    c = as_clause(c)
    out: set[int] = set()
    for d in resolution_environment(f, c):
        out.update(d.variables())
    return out - c.variables()


def restrict(f: Formula, assignment: Assignment) -> Formula:
    """f with every clause satisfied by the assignment removed.

    Falsified literals stay in place; only whole clauses disappear, so the
    result shrinks monotonically as the assignment grows.
    """
    return Formula(c for c in f if not assignment.satisfies_clause(c))


def parse_dimacs(source: "str | bytes", strict: bool = False) -> Formula:
    """Parse DIMACS CNF text into a Formula.

    Duplicate literals within a clause and duplicate clauses across the file
    collapse silently (set semantics). Tautologies are kept. Comment lines,
    blank lines, and a trailing '%' end marker are ignored. A mismatch between
    the declared header counts and the actual content warns by default and
    raises ParseError under strict=True. Hard errors regardless of strictness:
    missing/malformed header, non-integer tokens, an unterminated final clause.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    declared_vars: int | None = None
    declared_clauses: int | None = None
    clauses: list[Clause] = []
    pending: list[int] = []
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
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise ParseError("malformed header: %r" % line)
            try:
                declared_vars = int(parts[2])
                declared_clauses = int(parts[3])
            except ValueError:
                raise ParseError("malformed header: %r" % line) from None
            if declared_vars < 0 or declared_clauses < 0:
                raise ParseError("negative counts in header: %r" % line)
            continue
        if declared_vars is None:
            raise ParseError("clause data before header: %r" % line)
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
    max_var = max((abs(l) for c in clauses for l in c), default=0)
    if max_var > declared_vars:
        msg = "declared %d variables but found id %d" % (declared_vars, max_var)
        if strict:
            raise ParseError(msg)
        warnings.warn(msg, stacklevel=2)
    formula = Formula(clauses)
    if len(clauses) != declared_clauses or len(formula) != len(clauses):
        msg = "declared %d clauses, parsed %d (%d distinct)" % (
            declared_clauses,
            len(clauses),
            len(formula),
        )
        if len(clauses) != declared_clauses:
            if strict:
                raise ParseError(msg)
            warnings.warn(msg, stacklevel=2)
    return formula


def write_dimacs(f: Formula) -> str:
    """Serialize a formula as DIMACS CNF with canonically ordered clauses."""
    body = sorted(f, key=Clause.sort_key)
    max_var = max((abs(l) for c in body for l in c), default=0)
    lines = ["p cnf %d %d" % (max_var, len(body))]
    lines.extend(c.dimacs() for c in body)
    return "\n".join(lines) + "\n"
