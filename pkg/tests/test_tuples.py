import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sievelab.errors import InvariantViolationError
from sievelab.tuples import (
    AdmissibilityResult,
    OffsetTuple,
    as_tuple,
    densest_tuple,
    is_admissible,
    mirror_union,
    surfing,
    surfing_start_size,
)


def brute_admissible(offsets):
    """Definitional check over every prime up to the largest offset + 2."""
    limit = max(max(offsets) + 2, max(len(offsets), 2))
    primes = [p for p in range(2, limit + 1) if all(p % q for q in range(2, p))]
    for p in primes:
        if len({h % p for h in offsets}) == p:
            return False, p
    return True, None


class TestOffsetTuple:
    def test_rejects_empty_and_non_increasing(self):
        with pytest.raises(ValueError):
            OffsetTuple(())
        with pytest.raises(ValueError, match="increasing"):
            OffsetTuple((0, 2, 2))
        with pytest.raises(ValueError, match="increasing"):
            OffsetTuple((4, 2))

    def test_serialize_parse_roundtrip(self):
        t = OffsetTuple((0, 2, 6))
        assert t.serialize() == "0,2,6"
        assert OffsetTuple.parse("0,2,6") == t
        assert OffsetTuple.parse(" 0, 2,6 \n") == t
        assert t.k == 3 and t.span == 6

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            OffsetTuple.parse("")
        with pytest.raises(ValueError, match="parse"):
            OffsetTuple.parse("0,two,6")

    def test_as_tuple_sorts_iterables(self):
        assert as_tuple([6, 0, 2]).offsets == (0, 2, 6)
        assert as_tuple("0,4,6").offsets == (0, 4, 6)


class TestAdmissibility:
    def test_known_tuples(self):
        assert is_admissible((0, 2, 6)).admissible
        assert is_admissible((0, 4, 6)).admissible
        assert is_admissible((0, 2)).admissible
        res = is_admissible((0, 2, 4))
        assert not res
        assert res.prime == 3
        assert res.occupied == (0, 1, 2)

    def test_result_is_truthy_wrapper(self):
        assert bool(AdmissibilityResult(True)) is True
        assert bool(AdmissibilityResult(False, 3, (0, 1, 2))) is False

    def test_single_offset_always_admissible(self):
        assert is_admissible((5,)).admissible

    @given(
        st.sets(st.integers(min_value=0, max_value=60), min_size=1, max_size=8)
    )
    @settings(max_examples=200)
    def test_matches_definitional_oracle(self, offsets):
        got = is_admissible(sorted(offsets))
        want_ok, want_p = brute_admissible(sorted(offsets))
        assert got.admissible == want_ok
        if not want_ok:
            assert got.prime == want_p

    def test_translation_invariance(self):
        base = (0, 2, 6, 8, 12)
        for shift in (1, 7, 30):
            assert is_admissible(tuple(h + shift for h in base)).admissible

    def test_large_prime_cannot_obstruct(self):
        # 7 offsets: only p in {2,3,5,7} are ever checked
        res = is_admissible((0, 2, 6, 8, 12, 18, 20))
        assert res.admissible


class TestMirrorUnion:
    def test_basic_union(self):
        u = mirror_union((0, 2, 6), 101)
        assert u.offsets == (0, 2, 6, 95, 99, 101)
        assert u.k == 6

    def test_collision_names_pair(self):
        # 10 - 6 = 4 collides with offset 4
        with pytest.raises(ValueError, match=r"offset 4 equals 10-6"):
            mirror_union((0, 4, 6), 10)

    def test_self_mirror_collision(self):
        with pytest.raises(ValueError, match="collision"):
            mirror_union((0, 3, 6), 6)  # 6 - 3 = 3

    def test_union_admissible_for_compatible_n(self):
        # admissibility of the union needs, at each prime, a class missed by
        # both the offsets and their reflections; n = 26 mod 30 works for
        # (0, 2, 6): n even, n = 2 mod 3, n = 1 mod 5
        for n in (26, 999986):
            u = mirror_union((0, 2, 6), n)
            assert is_admissible(u).admissible

    def test_union_not_admissible_for_odd_n(self):
        # odd n puts reflections in the odd class, covering both classes mod 2
        u = mirror_union((0, 2, 6), 10**6 + 1)
        res = is_admissible(u)
        assert not res and res.prime == 2


def make_pools(rng, k, spacing=2):
    """Two disjoint pools of positive even integers of the required size."""
    need = surfing_start_size(k)
    pool = rng.sample(range(1, need * spacing * 4), k=need * 3)
    evens = sorted({2 * v for v in pool})
    assert len(evens) >= 2 * need
    return evens[:need], evens[need : 2 * need]


class TestSurfing:
    def test_start_size_small_k(self):
        # k=2: primes <= 4 are {2,3}, so 3^2 * 2 = 18
        assert surfing_start_size(2) == 18
        # k=1: primes <= 2 are {2}, so 3 * 1 = 3
        assert surfing_start_size(1) == 3
        assert surfing_start_size(3) == 3**3 * 3

    def test_k2_size_schedule(self):
        rng = random.Random(7)
        u, t = make_pools(rng, 2)
        trace = surfing(u, t, 2)
        # one odd prime (3): 18 -> 18 - floor(36/3) = 6
        assert trace.ell_sequence == (18, 6)
        assert [s.prime for s in trace.steps] == [3]
        assert trace.steps[0].size_before == 18
        assert trace.steps[0].size_after == 6

    def test_k1_has_no_steps(self):
        trace = surfing([2, 4, 6], [8, 10, 12], 1)
        assert trace.steps == ()
        assert trace.x == (2,) and trace.y == (8,)
        assert is_admissible(trace.union).admissible

    def test_schedule_matches_recurrence(self):
        rng = random.Random(3)
        for k in (2, 3, 4):
            u, t = make_pools(rng, k)
            trace = surfing(u, t, k)
            ell = surfing_start_size(k)
            want = [ell]
            for p in [q for q in range(3, 2 * k + 1) if all(q % d for d in range(2, q))]:
                ell = ell - (2 * ell) // p
                want.append(ell)
            assert list(trace.ell_sequence) == want
            assert want[-1] >= k

    def test_outputs_are_admissible_subsets(self):
        rng = random.Random(11)
        for k in (2, 3, 4, 5):
            for trial in range(3):
                u, t = make_pools(rng, k)
                trace = surfing(u, t, k)
                assert len(trace.x) == k and len(trace.y) == k
                assert set(trace.x) <= set(u) and set(trace.y) <= set(t)
                assert is_admissible(trace.union).admissible
                assert trace.union.k == 2 * k

    def test_removed_class_is_lightest(self):
        rng = random.Random(23)
        u, t = make_pools(rng, 3)
        trace = surfing(u, t, 3)
        survivors = sorted(u) + sorted(t)
        for step in trace.steps:
            counts = [0] * step.prime
            for v in survivors:
                counts[v % step.prime] += 1
            # recorded count matches, and no class is strictly lighter;
            # ties must have broken toward the smaller residue
            assert counts[step.removed_class] == step.removed_count
            for r in range(step.prime):
                assert (counts[r], r) >= (step.removed_count, step.removed_class) or r == step.removed_class
            # replay the removal and trim to follow the trace
            survivors = [v for v in survivors if v % step.prime != step.removed_class]
            kept_x = [v for v in survivors if v in set(u)][: step.size_after]
            kept_y = [v for v in survivors if v in set(t)][: step.size_after]
            survivors = sorted(kept_x) + sorted(kept_y)

    def test_rejects_bad_pools(self):
        with pytest.raises(ValueError, match="even"):
            surfing([2, 4, 5], [8, 10, 12], 1)
        with pytest.raises(ValueError, match="disjoint"):
            surfing([2, 4, 6], [6, 10, 12], 1)
        with pytest.raises(ValueError, match="exactly"):
            surfing([2, 4], [8, 10], 1)
        with pytest.raises(ValueError, match="even"):
            surfing([0, 2, 4], [8, 10, 12], 1)  # 0 not positive

    def test_consecutive_even_pools(self):
        # worst case for class crowding: consecutive evens
        for k in (2, 3, 5, 6):
            need = surfing_start_size(k)
            u = [2 * i for i in range(1, need + 1)]
            t = [2 * i for i in range(need + 1, 2 * need + 1)]
            trace = surfing(u, t, k)
            assert is_admissible(trace.union).admissible


class TestDensestTuple:
    def test_small_k_spans(self):
        assert densest_tuple(1).offsets == (0,)
        assert densest_tuple(2).offsets == (0, 2)
        t3 = densest_tuple(3)
        assert t3.span == 6 and t3.offsets[0] == 0

    def test_results_admissible_up_to_20(self):
        for k in range(1, 21):
            t = densest_tuple(k)
            assert t.k == k
            assert is_admissible(t).admissible
            assert t.offsets[0] == 0

    def test_span_not_absurdly_large(self):
        # greedy should stay within a small factor of k log k
        for k in (10, 20, 40):
            t = densest_tuple(k)
            assert t.span <= 6 * k * math.log(k)

    def test_explicit_width_too_small(self):
        with pytest.raises(ValueError, match="no admissible"):
            densest_tuple(5, search_width=5)

    def test_width_validation(self):
        with pytest.raises(ValueError, match="search_width"):
            densest_tuple(5, search_width=3)
        with pytest.raises(ValueError, match=">= 1"):
            densest_tuple(0)
