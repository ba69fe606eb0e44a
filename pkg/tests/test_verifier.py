import time
import tracemalloc

import pytest

from cayleyham._walk import CHUNK
from cayleyham.constructions import base_d12, build_hamiltonian
from cayleyham.group_core import GroupParams, R, S, T, UnavailableGeneratorError, parameter_grid
from cayleyham.verifier import (
    CycleReport,
    NoHamiltonianCycle,
    brute_force_cycle,
    cross_check,
    neighbour_table,
    oracle_labels,
    verify_hamiltonian,
)

r1 = R(1)


class TestVerify:
    def test_accepts(self):
        cyc = base_d12(3)
        rep = verify_hamiltonian(cyc.params, None, cyc.word, cyc.provenance)
        assert rep.valid and rep.closed and rep.first_violation is None
        assert rep.length == rep.expected_length == 18
        assert rep.problems == []
        assert str(rep).startswith("valid")

    def test_deleted_token(self):
        cyc = base_d12(3)
        rep = verify_hamiltonian(cyc.params, None, cyc.word[:-1])
        assert not rep.valid
        assert any("length mismatch" in p for p in rep.problems)

    def test_repeat_reported(self):
        p = GroupParams(3, 1, 2)
        word = [T, T, T] + [T, T, r1] * 5
        rep = verify_hamiltonian(p, None, word)
        assert not rep.valid
        assert rep.first_violation == (3, "(0,0|1 2)")
        assert "repeated at step 3" in str(rep)

    def test_not_closed(self):
        p = GroupParams(3, 1, 2)
        word = [T, T, r1] * 5 + [T, r1, T]
        rep = verify_hamiltonian(p, None, word)
        assert not rep.valid

    def test_unknown_label(self):
        with pytest.raises(UnavailableGeneratorError):
            verify_hamiltonian(GroupParams(3, 1, 2), None, [S])

    def test_repeat_across_chunks(self):
        # a word longer than one chunk whose repeat sits beyond the first chunk
        p = GroupParams(3, 2, 5)
        word = build_hamiltonian(p).word
        bad = word[: CHUNK + 5] + [word[CHUNK + 4]] + word[CHUNK + 6 :]
        rep = verify_hamiltonian(p, None, bad)
        assert not rep.valid
        assert rep.first_violation is not None and rep.first_violation[0] > CHUNK

    def test_memory_is_a_bitset(self):
        p = GroupParams(3, 2, 5)
        word = build_hamiltonian(p).word
        verify_hamiltonian(p, None, word[:10])  # warm up
        tracemalloc.start()
        try:
            rep = verify_hamiltonian(p, None, word)
            _, peak = tracemalloc.get_traced_memory()
        finally:
            tracemalloc.stop()
        assert rep.valid
        assert peak <= p.order // 8 + CHUNK + 32 * 1024

    def test_large_case_fast(self):
        p = GroupParams(3, 2, 5)
        word = build_hamiltonian(p).word
        t0 = time.perf_counter()
        assert verify_hamiltonian(p, None, word).valid
        assert time.perf_counter() - t0 < 5


class TestOracle:
    def test_label_order(self):
        assert oracle_labels(GroupParams(3, 2, 3)) == [S, T, T.inv(), r1, R(2)]
        assert oracle_labels(GroupParams(2, 2, 2)) == [S, T, r1]
        assert oracle_labels(GroupParams(3, 1, 2)) == [T, T.inv(), r1]

    def test_neighbour_table(self):
        p = GroupParams(2, 1, 2)
        table = neighbour_table(p, oracle_labels(p))
        assert len(table) == 8
        for v, row in enumerate(table):
            for u in row:
                assert v in table[u]

    def test_g212(self):
        p = GroupParams(2, 1, 2)
        word = brute_force_cycle(p, 5)
        assert len(word) == 8
        assert verify_hamiltonian(p, None, word).valid

    def test_g222_is_a_square(self):
        p = GroupParams(1, 2, 2)
        word = brute_force_cycle(p, 5)
        assert word == [S, r1, S, r1]

    def test_g422(self):
        p = GroupParams(2, 2, 2)
        word = brute_force_cycle(p, 5)
        assert len(word) == 16 and verify_hamiltonian(p, None, word).valid

    def test_cyclic(self):
        p = GroupParams(5, 1, 1)
        assert brute_force_cycle(p, 5) == [T] * 5

    def test_order_two(self):
        # the closed walk there and back, same as the construction
        p = GroupParams(2, 1, 1)
        assert brute_force_cycle(p, 5) == [T, T]
        assert verify_hamiltonian(p, None, [T, T]).valid

    def test_exhausted(self, monkeypatch):
        from cayleyham import verifier

        # a path graph on three vertices has no Hamiltonian cycle
        p = GroupParams(3, 1, 1)
        monkeypatch.setattr(
            verifier, "neighbour_table", lambda params, labels: [[1, 1], [0, 2], [1, 1]]
        )
        with pytest.raises(NoHamiltonianCycle):
            brute_force_cycle(p, 5)

    def test_deterministic(self):
        p = GroupParams(2, 3, 2)
        assert brute_force_cycle(p, 5) == brute_force_cycle(p, 5)

    def test_time_limit(self):
        p = GroupParams(3, 3, 3)  # order 1458, plenty of work
        t0 = time.perf_counter()
        out = brute_force_cycle(p, 0.0)
        assert out is None or verify_hamiltonian(p, None, out).valid
        assert time.perf_counter() - t0 < 5

    def test_small_grid(self):
        for p in parameter_grid(max_order=60):
            word = brute_force_cycle(p, 5)
            assert word is not None and verify_hamiltonian(p, None, word).valid, p.name


class TestCrossCheck:
    @pytest.mark.parametrize("dims", [(1, 3, 2), (1, 2, 3)])
    def test_agree(self, dims):
        cc = cross_check(GroupParams(*dims), 5)
        assert cc.agree, cc.notes

    def test_g312_exact(self):
        cc = cross_check(GroupParams(3, 1, 2), 5)
        assert cc.agree
        assert cc.constructed == [T, T, r1] * 6

    def test_report_type(self):
        cc = cross_check(GroupParams(2, 1, 2), 5)
        assert isinstance(cc.constructed_report, CycleReport)
        assert cc.searched_report.provenance == "brute_force"
