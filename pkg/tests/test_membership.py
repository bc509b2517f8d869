import pytest

from conftest import all_words, brute_pn, random_word
from prefixnormal.membership import (
    METHODS,
    FilterStats,
    InconsistentStateError,
    TestOutcome,
    childpnf_check,
    filter_blocks,
    filter_run_of_ones,
    member_pn,
    survivor_count_reference,
    survivor_ratio,
    vseq_words,
)
from prefixnormal.membership import test_doubling as run_doubling
from prefixnormal.membership import test_vseq as run_vseq
from prefixnormal.membership import tester as get_tester
from prefixnormal.words import BinaryWord, f_table, is_prefix_normal_naive, parse_word, to_run_length

INTRO = "110101101100100"
BLOCKS_EXAMPLE = "11100101011100110"
EXERCISE2 = "111010100110110011"


def W(s):
    return parse_word(s)


class TestRunFilter:
    def test_rejects_long_inner_run(self):
        wit = filter_run_of_ones(W("101111"))
        assert wit == (2, 4, 4, 3)
        assert wit.holds_for(W("101111"))

    def test_passes_example(self):
        assert filter_run_of_ones(W("110100")) is None

    def test_passes_zeros(self):
        assert filter_run_of_ones(BinaryWord.zeros(9)) is None


class TestBlockFilter:
    def test_rejects_example_word(self):
        w = W(BLOCKS_EXAMPLE)
        assert filter_run_of_ones(w) is None
        wit = filter_blocks(to_run_length(w), w)
        # i = 4: blocks (1,1) and (3,2) give 10111 at offset 7 against prefix 111 00
        assert wit == (7, 5, 4, 3)
        assert BLOCKS_EXAMPLE[7:12] == "10111"
        assert not is_prefix_normal_naive(w)[0]

    def test_single_block(self):
        assert filter_blocks(to_run_length(BinaryWord.ones(5))) is None

    def test_example_passes(self):
        assert filter_blocks(to_run_length(W("110100"))) is None

    def test_witness_without_word(self):
        wit = filter_blocks(to_run_length(W(BLOCKS_EXAMPLE)))
        assert wit.holds_for(W(BLOCKS_EXAMPLE))

    @pytest.mark.parametrize("n", range(1, 17))
    def test_filters_sound(self, n):
        # a rejection carries a recounted violation, so no prefix normal word is ever rejected
        for x in range(1 << n):
            w = BinaryWord(format(x, f"0{n}b"))
            rl = to_run_length(w)
            for wit in (filter_run_of_ones(w, rl), filter_blocks(rl, w)):
                if wit is not None:
                    assert wit.holds_for(w), (str(w), wit)


class TestChildCheck:
    def test_rejection_step_of_intro_word(self):
        gamma = W("101100100")
        # current word 1111 00 gamma, the moved 1 lands right before gamma
        assert not childpnf_check(4, 2, 2, gamma, f_table(gamma))
        assert not is_prefix_normal_naive(W("111001101100100"))[0]

    def test_empty_gamma(self):
        assert childpnf_check(3, 4, 2, W(""), f_table(W("")))
        assert is_prefix_normal_naive(W("1101000"))[0]

    def test_steps_of_vseq_example(self):
        # 111100001 -> 111000101 and 111000101 -> 110100101
        assert childpnf_check(4, 4, 2, W("1"), f_table(W("1")))
        assert childpnf_check(3, 3, 1, W("101"), f_table(W("101")))
        assert is_prefix_normal_naive(W("111000101"))[0]
        assert is_prefix_normal_naive(W("110100101"))[0]

    @pytest.mark.parametrize("n", range(2, 13))
    def test_agrees_with_oracle(self, n):
        for s in all_words(n):
            w = W(s)
            if not brute_pn(s) or w.density in (0, n) or s[0] == "0":
                continue
            lead = len(s) - len(s.lstrip("1"))
            rest = s[lead:]
            t = len(rest) - len(rest.lstrip("0"))
            gamma = W(rest[t:])
            for i in range(1, t + 1):
                child = "1" * (lead - 1) + "0" * i + "1" + "0" * (t - i) + str(gamma)
                expected = brute_pn(child)
                assert childpnf_check(lead, t, i, gamma, f_table(gamma), debug=True) == expected, (s, i)

    def test_debug_detects_stale_data(self):
        gamma = W("1100100")
        stale = f_table(gamma).copy()
        stale[6] = 1
        with pytest.raises(InconsistentStateError):
            childpnf_check(5, 3, 2, gamma, stale, debug=True)

    def test_bad_offset(self):
        with pytest.raises(ValueError):
            childpnf_check(3, 2, 3, W("1"), f_table(W("1")))


class TestVSeq:
    def test_swap_sequence(self):
        w = W("110100101")
        assert [str(v) for v in vseq_words(w)] == ["111110000", "111100001", "111000101", "110100101"]
        outcome = run_vseq(w, trace=True)
        assert outcome.accepted
        assert [s.word for s in outcome.steps] + [str(w)] == ["111110000", "111100001", "111000101", "110100101"]

    def test_trace_of_rejected_word(self):
        outcome = run_vseq(W(INTRO), trace=True, debug=True)
        assert not outcome.accepted
        rows = [(s.word, s.gamma, s.k, s.f_k, s.z, "".join(map(str, s.f_gamma))) for s in outcome.steps]
        assert rows == [
            ("111111110000000", "", 12, 0, 0, "000000000000"),
            ("111111100000100", "100", 9, 1, 1, "111111111"),
            ("111111000100100", "100100", 8, 2, 2, "11122222"),
            ("111110001100100", "1100100", 6, 3, 2, "122233"),
            ("111100101100100", "101100100", 5, 3, 3, "12233"),
        ]
        last = outcome.steps[-1]
        assert last.z + 1 == 4 > 3 and not last.passed
        assert outcome.witness.holds_for(W(INTRO))
        assert (outcome.witness.length, outcome.witness.ones, outcome.witness.prefix_ones) == (5, 4, 3)

    def test_next_word_in_table_is_not_normal(self):
        seq = [str(v) for v in vseq_words(W(INTRO))]
        assert seq[5] == "111001101100100"
        assert not is_prefix_normal_naive(W(seq[5]))[0]

    def test_already_sorted(self):
        outcome = run_vseq(W("1110000"), trace=True)
        assert outcome.accepted and outcome.steps == ()
        assert [str(v) for v in vseq_words(W("1110000"))] == ["1110000"]

    @pytest.mark.parametrize("n", range(1, 13))
    def test_trace_follows_swap_rule(self, n):
        for s in all_words(n):
            w = W(s)
            if w.density in (0, n):
                continue
            outcome = run_vseq(w, trace=True)
            traced = [st.word for st in outcome.steps]
            literal = [str(v) for v in vseq_words(w)]
            assert traced == literal[: len(traced)]
            if outcome.accepted:
                assert literal == traced + [s]

    def test_leading_zero(self):
        outcome = run_vseq(W("0110"))
        assert not outcome.accepted and outcome.witness.holds_for(W("0110"))


class TestDoubling:
    @pytest.mark.parametrize("k", [2, 3, 10, 50])
    def test_101n_stops_at_four(self, k):
        outcome = run_doubling(W("10" + "1" * k))
        assert not outcome.accepted and outcome.stage_length == 4

    def test_ones(self):
        assert run_doubling(BinaryWord.ones(12)).accepted

    def test_exercise_word(self):
        outcome = run_doubling(W(EXERCISE2))
        assert not outcome.accepted
        assert outcome.stage_length == 18
        assert outcome.witness.holds_for(W(EXERCISE2))
        # every proper prefix is prefix normal
        assert all(is_prefix_normal_naive(W(EXERCISE2[:k]))[0] for k in range(18))


class TestMemberPN:
    def test_run_filter(self):
        outcome = member_pn(W("101111"))
        assert not outcome.accepted and outcome.decided_by == "run-filter"

    def test_block_filter(self):
        outcome = member_pn(W(BLOCKS_EXAMPLE))
        assert not outcome.accepted and outcome.decided_by == "block-filter"

    def test_accepts_example(self):
        outcome = member_pn(W("110011"))
        assert outcome.accepted and outcome.decided_by == "vseq"

    def test_trivial(self):
        assert member_pn(W("")).decided_by == "trivial-case"
        assert member_pn(BinaryWord.ones(4)).decided_by == "trivial-case"

    def test_naive_phase_two(self):
        assert member_pn(W("110011"), phase2="naive").decided_by == "naive"
        with pytest.raises(ValueError):
            member_pn(W("110011"), phase2="quick")

    def test_rejection_needs_witness(self):
        with pytest.raises(ValueError):
            TestOutcome(False, "naive")


class TestAgreement:
    @pytest.mark.parametrize("n", range(0, 13))
    def test_all_methods_exhaustive(self, n):
        for s in all_words(n):
            w = W(s)
            expected = brute_pn(s)
            for name, check in METHODS.items():
                outcome = check(w)
                assert outcome.accepted == expected, (name, s)
                if not outcome.accepted:
                    assert outcome.witness.holds_for(w), (name, s, outcome.witness)

    @pytest.mark.parametrize("n", [100, 1000])
    def test_random(self, rng, n):
        for _ in range(200):
            # bias towards near-normal words so the exact phases do real work
            s = "1" * rng.randint(0, n // 8) + random_word(rng, n, p=rng.choice([0.1, 0.3, 0.5]))
            w = W(s[:n])
            verdicts = {name: check(w).accepted for name, check in METHODS.items()}
            assert len(set(verdicts.values())) == 1, (s, verdicts)

    def test_prefix_normal_long_words(self):
        # members from the normal form, so every tester must accept
        import numpy as np

        from prefixnormal.index import pnf_one

        gen = np.random.default_rng(7)
        for n in (100, 1000):
            for _ in range(5):
                w = pnf_one(BinaryWord(gen.integers(0, 2, n)))
                for name, check in METHODS.items():
                    assert check(w).accepted, name

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            get_tester("fast")


class TestSurvivors:
    def test_table_row_a_n10(self):
        stats = survivor_ratio(10, "trivial-only")
        assert stats.survivors == 256 and stats.rounded() == "2.500"

    def test_table_row_b_n10(self):
        assert survivor_ratio(10, "both-filters").rounded() == "2.168"

    def test_n1(self):
        stats = survivor_ratio(1, "both-filters")
        assert stats.survivors == 2 and stats.total == 2 and stats.ratio == 1.0

    @pytest.mark.parametrize("n", range(0, 13))
    def test_kernel_matches_word_filters(self, n):
        for phase in ("trivial-only", "both-filters"):
            assert survivor_ratio(n, phase).survivors == survivor_count_reference(n, phase)

    def test_row_a_increasing(self):
        ratios = [survivor_ratio(n, "trivial-only").ratio for n in range(10, 25, 2)]
        assert all(a < b for a, b in zip(ratios, ratios[1:]))

    def test_stats_fields(self):
        stats = FilterStats(4, "both-filters", 6)
        assert stats.ratio == 4 * 6 / 16

    def test_budget(self):
        from prefixnormal.budget import BudgetExceeded

        with pytest.raises(BudgetExceeded):
            survivor_ratio(40)
