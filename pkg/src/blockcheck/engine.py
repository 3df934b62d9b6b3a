"""Clause elimination to fixpoint, replayable traces, and model repair.

The engine repeatedly scans the formula with one redundancy checker and
removes whatever it marks. Removing a clause can only enlarge the blocking
chances of clauses that resolved against it, so after each removal exactly
the clauses whose resolution environment contained the removed one are
queued for another look; a pass that removes nothing ends the run.

Every removal is logged with the property tag and the witness the checker
produced, in removal order. That trace is enough to repair models: given an
assignment satisfying the simplified formula, walking the trace backwards
and, whenever a removed clause comes out falsified, making its witness
literals true, yields an assignment satisfying the original formula. The
implied-style properties (tautology, subsumption and their asymmetric
variants, and the direct branch of the lifted checks) need no repair at
all — a falsified clause there means the trace does not belong to the
formula, which is reported instead of papered over.

Super-blocking witnesses can be bulky (one blocking set per external
assignment), so traces optionally store them compactly and the repair step
recomputes the needed set against the replayed formula state; both paths
produce identical repairs, which the tests check.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .asymmetric import BASES, ala_fixpoint, is_AS, is_AT, is_subsumed, r_lift_witness
from .blocking import (
    BlockingWitness,
    is_literal_blocked,
    is_set_blocked,
    is_super_blocked,
)
from .cnf import Assignment, Clause, Formula, external_variables, restrict
from .errors import CapExceeded, ParseError, ReconstructionError

PROPERTIES: tuple[str, ...] = (
    "t", "s", "bc", "setbc", "supbc", "at", "as", "abc", "rt", "rs", "rat", "ras",
)


def _check_t(g: Formula, c: Clause, cfg: "EliminationConfig"):
    return c.is_tautology(), None


def _check_s(g: Formula, c: Clause, cfg: "EliminationConfig"):
    return is_subsumed(g, c), None


def _check_bc(g: Formula, c: Clause, cfg: "EliminationConfig"):
    w = is_literal_blocked(g, c)
    return w is not None, w


def _check_setbc(g: Formula, c: Clause, cfg: "EliminationConfig"):
    w = is_set_blocked(g, c, cfg.k)
    return w is not None, w


def _check_supbc(g: Formula, c: Clause, cfg: "EliminationConfig"):
    w = is_super_blocked(g, c, cfg.k, cfg.ext_cap)
    if w is not None and w.kind == "super" and cfg.compact_witnesses:
        w = BlockingWitness(kind="super", per_tau=None)
    return w is not None, w


def _check_at(g: Formula, c: Clause, cfg: "EliminationConfig"):
    return is_AT(g, c), None


def _check_as(g: Formula, c: Clause, cfg: "EliminationConfig"):
    return is_AS(g, c), None


def _check_abc(g: Formula, c: Clause, cfg: "EliminationConfig"):
    closure = ala_fixpoint(g, c).clause
    w = is_literal_blocked(g, closure)
    if w is None:
        return False, None
    if closure.is_tautology():
        # Tautological closure means the clause is implied by the rest of
        # the formula; it can never be falsified at repair time.
        return True, None
    # For a non-tautological closure the blocking literal necessarily lies
    # in c itself (an added literal's own donor defeats it), so flipping it
    # is a valid repair.
    return True, w


def _lift_check(base_key: str):
    def check(g: Formula, c: Clause, cfg: "EliminationConfig"):
        ok, lit = r_lift_witness(BASES[base_key], g, c)
        w = BlockingWitness(kind="literal", literal=lit) if lit is not None else None
        return ok, w

    return check


_CHECKS: dict[str, Callable] = {
    "t": _check_t,
    "s": _check_s,
    "bc": _check_bc,
    "setbc": _check_setbc,
    "supbc": _check_supbc,
    "at": _check_at,
    "as": _check_as,
    "abc": _check_abc,
    "rt": _lift_check("t"),
    "rs": _lift_check("s"),
    "rat": _lift_check("at"),
    "ras": _lift_check("as"),
}

_ORDERS = ("ascending-id", "descending-length")


@dataclass(frozen=True)
class EliminationConfig:
    property: str = "bc"
    k: int | None = None
    ext_cap: int = 16
    clause_order: str = "ascending-id"
    rounds_cap: int = 1000
    compact_witnesses: bool = False

    def __post_init__(self):
        if self.property not in _CHECKS:
            raise ValueError("unknown property %r" % (self.property,))
        if self.clause_order not in _ORDERS:
            raise ValueError("unknown clause order %r" % (self.clause_order,))
        if self.rounds_cap < 1:
            raise ValueError("rounds cap must be positive")
        if self.ext_cap < 0:
            raise ValueError("external-variable cap must be non-negative")
        if self.k is not None and self.k < 1:
            raise ValueError("blocking-set bound must be positive")


def check_property(f: Formula, c: Clause, cfg: EliminationConfig) -> tuple[bool, BlockingWitness | None]:
    """One property check, as the elimination loop would run it."""
    return _CHECKS[cfg.property](f, c, cfg)


@dataclass(frozen=True)
class TraceEntry:
    clause: Clause
    tag: str
    witness: BlockingWitness | None


@dataclass
class EliminationTrace:
    entries: list[TraceEntry] = field(default_factory=list)
    skipped: list[tuple[Clause, str]] = field(default_factory=list)

    def to_text(self) -> str:
        lines = ["t blockcheck 1"]
        for e in self.entries:
            w = e.witness
            if w is None or w.kind == "super":
                wpart = "0"
            elif w.kind == "literal":
                wpart = "%d 0" % (w.literal,)
            else:
                wpart = w.blocking_set.dimacs()
            lines.append("d %s %s w %s" % (e.tag, e.clause.dimacs(), wpart))
            if w is not None and w.kind == "super" and w.per_tau is not None:
                for tau in sorted(w.per_tau, key=lambda a: a.to_literals()):
                    tlits = " ".join(str(l) for l in tau.to_literals())
                    head = "wt %s 0 " % (tlits,) if tlits else "wt 0 "
                    lines.append(head + w.per_tau[tau].dimacs())
        for clause, reason in self.skipped:
            lines.append(("x %s %s" % (clause.dimacs(), reason)).rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "EliminationTrace":
        entries: list[TraceEntry] = []
        skipped: list[tuple[Clause, str]] = []
        pending: "dict | None" = None
        header_seen = False

        def finalize() -> None:
            nonlocal pending
            if pending is not None:
                per = pending["per_tau"]
                w = BlockingWitness(kind="super", per_tau=per if per else None)
                entries.append(TraceEntry(pending["clause"], "supbc", w))
                pending = None

        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if not header_seen:
                if line != "t blockcheck 1":
                    raise ParseError("unrecognized trace header: %r" % (line,))
                header_seen = True
                continue
            toks = line.split()
            if toks[0] == "d":
                finalize()
                if len(toks) < 2:
                    raise ParseError("truncated trace line: %r" % (line,))
                tag = toks[1]
                if tag not in _CHECKS:
                    raise ParseError("unknown property tag %r" % (tag,))
                clause_lits, rest = _ints_to_zero(toks[2:], line)
                if not rest or rest[0] != "w":
                    raise ParseError("missing witness section: %r" % (line,))
                wlits, rest = _ints_to_zero(rest[1:], line)
                if rest:
                    raise ParseError("trailing tokens on trace line: %r" % (line,))
                clause = Clause(clause_lits)
                if tag == "supbc":
                    if wlits:
                        w = BlockingWitness(kind="set", blocking_set=Clause(wlits))
                        entries.append(TraceEntry(clause, tag, w))
                    else:
                        pending = {"clause": clause, "per_tau": {}}
                elif tag == "setbc":
                    if not wlits:
                        raise ParseError("set-blocking entry without a witness: %r" % (line,))
                    w = BlockingWitness(kind="set", blocking_set=Clause(wlits))
                    entries.append(TraceEntry(clause, tag, w))
                elif tag == "bc":
                    if len(wlits) != 1:
                        raise ParseError("literal-blocking entry needs one witness literal: %r" % (line,))
                    entries.append(TraceEntry(clause, tag, BlockingWitness(kind="literal", literal=wlits[0])))
                elif tag in ("t", "s", "at", "as"):
                    if wlits:
                        raise ParseError("unexpected witness for property %r" % (tag,))
                    entries.append(TraceEntry(clause, tag, None))
                else:
                    if len(wlits) > 1:
                        raise ParseError("at most one witness literal allowed: %r" % (line,))
                    w = BlockingWitness(kind="literal", literal=wlits[0]) if wlits else None
                    entries.append(TraceEntry(clause, tag, w))
            elif toks[0] == "wt":
                if pending is None:
                    raise ParseError("restriction line outside a super-blocking entry: %r" % (line,))
                tlits, rest = _ints_to_zero(toks[1:], line)
                slits, rest = _ints_to_zero(rest, line)
                if rest:
                    raise ParseError("trailing tokens on trace line: %r" % (line,))
                try:
                    tau = Assignment.from_literals(tlits)
                except ValueError as exc:
                    raise ParseError(str(exc)) from exc
                pending["per_tau"][tau] = Clause(slits)
            elif toks[0] == "x":
                finalize()
                lits, rest = _ints_to_zero(toks[1:], line)
                skipped.append((Clause(lits), " ".join(rest)))
            else:
                raise ParseError("unrecognized trace line: %r" % (line,))
        if not header_seen:
            raise ParseError("empty trace")
        finalize()
        return cls(entries, skipped)


def _ints_to_zero(tokens: Sequence[str], line: str) -> tuple[list[int], list[str]]:
    out: list[int] = []
    for i, tok in enumerate(tokens):
        try:
            val = int(tok)
        except ValueError as exc:
            raise ParseError("bad literal %r in trace line: %r" % (tok, line)) from exc
        if val == 0:
            return out, list(tokens[i + 1:])
        out.append(val)
    raise ParseError("unterminated literal list in trace line: %r" % (line,))


def eliminate_clauses(
    f: Formula,
    cfg: "EliminationConfig | None" = None,
) -> tuple[Formula, EliminationTrace]:
    """Remove clauses satisfying cfg.property until nothing more applies.

    Clauses the checker refuses due to a cap are skipped and reported in
    the trace; they are retried only if a removal changes their
    environment. The result is satisfiability-equivalent to the input.
    """
    cfg = cfg if cfg is not None else EliminationConfig()
    check = _CHECKS[cfg.property]
    g = f.copy()
    entries: list[TraceEntry] = []
    capped: dict[Clause, str] = {}
    pending = set(g.clauses)

    def order_key(c: Clause):
        if cfg.clause_order == "descending-length":
            return (-len(c), g.seq_of(c))
        return g.seq_of(c)

    rounds = 0
    while pending and rounds < cfg.rounds_cap:
        rounds += 1
        batch = sorted((c for c in pending if c in g), key=order_key)
        pending = set()
        for c in batch:
            if c not in g:
                continue
            try:
                ok, w = check(g, c, cfg)
            except CapExceeded as exc:
                capped[c] = str(exc)
                continue
            if not ok:
                continue
            g.remove(c)
            capped.pop(c, None)
            entries.append(TraceEntry(c, cfg.property, w))
            pending.update(g.clauses_with_any(c.complements()))

    still = [(c, reason) for c, reason in capped.items() if c in g]
    still.sort(key=lambda pair: g.seq_of(pair[0]))
    return g, EliminationTrace(entries, still)


def reconstruct_model(
    trace: EliminationTrace,
    original: Formula,
    model: Assignment,
) -> Assignment:
    """Repair a model of the simplified formula into one of the original.

    The incoming model is totalized over the original variables (unassigned
    defaults to false), checked against the simplified formula, and then the
    trace is replayed backwards: a falsified removed clause gets its witness
    literals set true. Any inconsistency — clause missing at replay, repair
    not taking, implied clause falsified — is reported as a reconstruction
    error, since it means trace and formula do not belong together.
    """
    g = original.copy()
    for e in trace.entries:
        if not g.discard(e.clause):
            raise ReconstructionError(
                "trace removes a clause the formula does not contain: %r" % (e.clause,)
            )

    values = {v: 0 for v in original.variables()}
    for v, val in model.items():
        values[v] = val

    def sat(clause: Clause) -> bool:
        return any(values.get(abs(l)) == (1 if l > 0 else 0) for l in clause)

    if not all(sat(d) for d in g):
        raise ReconstructionError("model does not satisfy the simplified formula")

    for e in reversed(trace.entries):
        c = e.clause
        if sat(c):
            g.add(c)
            continue
        w = e.witness
        if w is None:
            raise ReconstructionError(
                "removed clause is falsified but carries no repair witness: %r" % (c,)
            )
        if w.kind == "literal":
            values[abs(w.literal)] = 1 if w.literal > 0 else 0
        elif w.kind == "set":
            for lit in w.blocking_set:
                values[abs(lit)] = 1 if lit > 0 else 0
        elif w.kind == "super":
            state = g.with_clause(c)
            if w.per_tau is not None:
                dom = next(iter(w.per_tau)).variables()
                tau = Assignment({v: values[v] for v in dom})
                chosen = w.per_tau.get(tau)
                if chosen is None:
                    raise ReconstructionError(
                        "stored restriction table lacks the current external assignment"
                    )
            else:
                ext = external_variables(state, c)
                tau = Assignment({v: values[v] for v in ext})
                found = is_set_blocked(restrict(state, tau), c)
                if found is None:
                    raise ReconstructionError("failed to recompute a blocking set during repair")
                chosen = found.blocking_set
            for lit in chosen:
                values[abs(lit)] = 1 if lit > 0 else 0
        else:
            raise ReconstructionError("unknown witness kind %r" % (w.kind,))
        if not sat(c):
            raise ReconstructionError("repair failed to satisfy the removed clause: %r" % (c,))
        g.add(c)

    out = Assignment(values)
    for d in original:
        if not out.satisfies_clause(d):
            raise ReconstructionError("reconstructed assignment does not satisfy the original formula")
    return out


@dataclass(frozen=True)
class ClassifyReport:
    properties: tuple[str, ...]
    rows: tuple[tuple[Clause, tuple[str, ...]], ...]

    def to_tsv(self) -> str:
        lines = ["clause\t" + "\t".join(self.properties)]
        for clause, cells in self.rows:
            lines.append(clause.dimacs() + "\t" + "\t".join(cells))
        return "\n".join(lines) + "\n"


def classify(
    f: Formula,
    properties: "Iterable[str] | None" = None,
    *,
    k: int | None = None,
    ext_cap: int = 16,
    jobs: int = 1,
) -> ClassifyReport:
    """Per-clause membership matrix: yes / no / cap for each property.

    Cells are independent reads of the same formula, so they may be checked
    in parallel; the report layout is fixed by formula order either way.
    """
    props = tuple(properties) if properties is not None else PROPERTIES
    cfgs = {}
    for p in props:
        if p not in _CHECKS:
            raise ValueError("unknown property %r" % (p,))
        cfgs[p] = EliminationConfig(property=p, k=k, ext_cap=ext_cap)

    def cell(c: Clause, p: str) -> str:
        try:
            ok, _ = _CHECKS[p](f, c, cfgs[p])
        except CapExceeded:
            return "cap"
        return "yes" if ok else "no"

    clauses = f.clauses
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [[pool.submit(cell, c, p) for p in props] for c in clauses]
            rows = tuple(
                (c, tuple(fut.result() for fut in row)) for c, row in zip(clauses, futures)
            )
    else:
        rows = tuple((c, tuple(cell(c, p) for p in props)) for c in clauses)
    return ClassifyReport(props, rows)


def write_model(a: Assignment) -> str:
    lits = " ".join(str(l) for l in a.to_literals())
    return "v %s 0\n" % (lits,) if lits else "v 0\n"


def parse_model(text: str) -> Assignment:
    lits: list[int] = []
    terminated = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if terminated:
            raise ParseError("content after model terminator: %r" % (line,))
        toks = line.split()
        if toks[0] != "v":
            raise ParseError("unrecognized model line: %r" % (line,))
        for tok in toks[1:]:
            if terminated:
                raise ParseError("content after model terminator: %r" % (line,))
            try:
                val = int(tok)
            except ValueError as exc:
                raise ParseError("bad literal %r in model" % (tok,)) from exc
            if val == 0:
                terminated = True
            else:
                lits.append(val)
    if not terminated:
        raise ParseError("model not zero-terminated")
    try:
        return Assignment.from_literals(lits)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
