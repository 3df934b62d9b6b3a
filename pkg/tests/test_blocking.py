from math import comb

import pytest

from blockcheck import (
    CapExceeded,
    Clause,
    Formula,
    candidate_sets,
    check_super_blocked,
    count_candidate_sets,
    external_variables,
    is_literal_blocked,
    is_set_blocked,
    is_super_blocked,
    literal_blocks,
    restrict,
    sample_super_blocked,
    set_blocks,
)
from blockcheck.blocking import _search_blocking_set

from conftest import clause, formula


class TestLiteralBlocking:
    def test_b_blocks_but_a_does_not(self, ex_blocked):
        f, c = ex_blocked
        assert literal_blocks(f, c, 2)
        assert not literal_blocks(f, c, 1)

    def test_literal_must_be_in_clause(self, ex_blocked):
        f, c = ex_blocked
        with pytest.raises(ValueError):
            literal_blocks(f, c, 3)

    def test_tautology_blocked_on_the_complementary_pair(self):
        f = formula((1, 2), (-1, 3), (1, -3))
        c = clause(1, -1, 2)
        assert literal_blocks(f, c, 1)
        assert literal_blocks(f, c, -1)

    def test_witness_is_first_in_canonical_order(self, ex_blocked):
        f, c = ex_blocked
        w = is_literal_blocked(f, c)
        assert w is not None and w.kind == "literal" and w.literal == 2

    def test_absent_witnesses(self, ex_setblocked, ex_full_blocking):
        for f, c in (ex_setblocked, ex_full_blocking):
            assert is_literal_blocked(f, c) is None

    def test_vacuous_blocking(self):
        assert is_literal_blocked(Formula(), clause(1)).literal == 1


class TestSetBlocks:
    def test_pair_blocks(self, ex_setblocked):
        f, c = ex_setblocked
        assert set_blocks(f, c, (1, 2))

    def test_singleton_does_not(self, ex_setblocked):
        f, c = ex_setblocked
        assert not set_blocks(f, c, (1,))
        assert not set_blocks(f, c, (2,))

    def test_tautology_with_complementary_pair(self):
        f = formula((1, 3), (-1, 2))
        assert set_blocks(f, clause(1, -1, 2), (1, -1))

    def test_rejects_bad_sets(self, ex_setblocked):
        f, c = ex_setblocked
        with pytest.raises(ValueError):
            set_blocks(f, c, ())
        with pytest.raises(ValueError):
            set_blocks(f, c, (1, 3))


class TestSetBlockedSearch:
    def test_finds_the_pair(self, ex_setblocked):
        f, c = ex_setblocked
        w = is_set_blocked(f, c)
        assert w.kind == "set" and w.blocking_set == clause(1, 2)

    def test_size_bound(self, ex_setblocked):
        f, c = ex_setblocked
        assert is_set_blocked(f, c, k=1) is None
        assert is_set_blocked(f, c, k=2).blocking_set == clause(1, 2)

    def test_no_set_for_any_k(self, at_not_setblocked):
        f, c = at_not_setblocked
        for k in (1, 2, 3, None):
            assert is_set_blocked(f, c, k=k) is None

    def test_literal_blocked_implies_singleton_found(self, ex_blocked):
        f, c = ex_blocked
        w = is_set_blocked(f, c)
        assert w.blocking_set == clause(2)

    def test_search_order_is_size_then_lex(self):
        sets = list(candidate_sets(clause(1, 2, 3)))
        assert sets == [
            clause(1), clause(2), clause(3),
            clause(1, 2), clause(1, 3), clause(2, 3),
            clause(1, 2, 3),
        ]
        assert list(candidate_sets(clause(1, 2, 3), k=2)) == sets[:6]

    def test_failed_search_tries_every_candidate(self):
        f = formula((-1, 5), (-2, 5), (-3, 5), (-4, 5))
        c = clause(1, 2, 3, 4)
        stats = {}
        assert _search_blocking_set(f, c, 3, stats) is None
        assert stats["candidates"] == count_candidate_sets(4, 3)
        stats = {}
        assert _search_blocking_set(f, c, None, stats) is None
        assert stats["candidates"] == count_candidate_sets(4, 4)


class TestCandidateCount:
    def test_cubic_closed_form(self):
        for n in range(3, 13):
            total = n ** 3 + 5 * n
            assert total % 6 == 0
            assert count_candidate_sets(n, 3) == total // 6

    def test_small_values(self):
        assert count_candidate_sets(3, 3) == 7
        assert count_candidate_sets(5, 2) == 15

    def test_matches_binomials(self):
        assert count_candidate_sets(8, 4) == sum(comb(8, i) for i in range(1, 5))

    def test_bound_validation(self):
        for n, k in ((3, 0), (3, 4), (0, 1)):
            with pytest.raises(ValueError):
                count_candidate_sets(n, k)


class TestSuperBlocking:
    def test_full_blocking_witness(self, ex_full_blocking):
        f, c = ex_full_blocking
        w = is_super_blocked(f, c)
        assert w is not None and w.kind == "super"
        per_tau = {tau.to_literals(): L for tau, L in w.per_tau.items()}
        assert per_tau == {(-3,): clause(1, 2), (3,): clause(1)}

    def test_per_tau_images_block_in_the_restriction(self, ex_full_blocking):
        f, c = ex_full_blocking
        w = is_super_blocked(f, c)
        assert set(external_variables(f, c)) == {3}
        for tau, L in w.per_tau.items():
            assert set_blocks(restrict(f, tau), c, L)

    def test_not_super_blocked_reports_first_failing_tau(self, at_not_setblocked):
        f, c = at_not_setblocked
        res = check_super_blocked(f, c)
        assert not res.blocked and res.witness is None
        assert res.failing_tau.to_literals() == (-3,)
        assert is_super_blocked(f, c) is None

    def test_set_blocked_instances_short_circuit(self, ex_setblocked):
        f, c = ex_setblocked
        w = is_super_blocked(f, c)
        assert w.kind == "set" and w.blocking_set == clause(1, 2)

    def test_tautology_is_super_blocked(self):
        w = is_super_blocked(formula((1, 2), (-2, 3)), clause(2, -2))
        assert w is not None and w.blocking_set == clause(2, -2)

    def test_k_bound_respected(self, ex_full_blocking):
        f, c = ex_full_blocking
        assert is_super_blocked(f, c, k=1) is None  # tau(x)=0 needs the pair
        assert is_super_blocked(f, c, k=2) is not None

    def test_ext_cap(self):
        donors = [(-1, i) for i in range(2, 20)]
        f = Formula(donors)
        with pytest.raises(CapExceeded) as err:
            check_super_blocked(f, clause(1), ext_cap=16)
        assert err.value.count == 18
        # the bound is on the external variables, not the formula size
        assert check_super_blocked(f, clause(1), ext_cap=18) is not None

    def test_sampling_refutes_soundly(self, at_not_setblocked):
        import random

        f, c = at_not_setblocked
        scan = sample_super_blocked(f, c, random.Random(0), samples=32)
        assert scan.refuted
        assert is_set_blocked(restrict(f, scan.failing_tau), c) is None

    def test_sampling_cannot_refute_a_blocked_instance(self, ex_full_blocking):
        import random

        f, c = ex_full_blocking
        scan = sample_super_blocked(f, c, random.Random(7), samples=16)
        assert not scan.refuted and scan.samples == 16


class TestWitnessShape:
    def test_literal_witness_is_in_clause(self, ex_blocked):
        f, c = ex_blocked
        assert is_literal_blocked(f, c).literal in c

    def test_set_witness_is_nonempty_subset(self, ex_setblocked):
        f, c = ex_setblocked
        w = is_set_blocked(f, c)
        assert len(w.blocking_set) > 0 and w.blocking_set.issubset(c)

    def test_super_witness_covers_all_assignments(self, ex_full_blocking):
        f, c = ex_full_blocking
        w = is_super_blocked(f, c)
        ext = external_variables(f, c)
        assert len(w.per_tau) == 2 ** len(ext)
        for tau in w.per_tau:
            assert tau.is_total_over(ext) and len(tau) == len(ext)
