import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_array_equal

from core.critical_values import bh_critical_values, tie_adjusted_critical_values
from core.metrics import count_false_rejections, false_discovery_proportion
from core.procedures import step_down, step_up
from core.types import CriticalValues, HypothesisPartition, PValueVector, TestOutcome
from utils.errors import LengthMismatchError, ParameterConstraintError, SizeMismatchError


def brute_force_step_up(p, alphas):
    """逐个枚举 j = 0..m，直接按 R = max{j : p_{j:m} ⩽ α_j} 计算"""
    p = np.asarray(p)
    ordered = np.sort(p)
    R = 0
    for j in range(1, len(p) + 1):
        if ordered[j - 1] <= alphas[j - 1]:
            R = j
    rejected = p <= alphas[R - 1] if R > 0 else np.zeros(len(p), dtype=bool)
    return R, rejected


def brute_force_step_down(p, alphas):
    """R = max{j : 对所有 i ⩽ j 有 p_{i:m} ⩽ α_i}，拒绝最小的 R 个（并列按下标）"""
    p = np.asarray(p)
    order = sorted(range(len(p)), key=lambda i: (p[i], i))
    R = 0
    for j in range(1, len(p) + 1):
        if all(p[order[i]] <= alphas[i] for i in range(j)):
            R = j
    rejected = np.zeros(len(p), dtype=bool)
    rejected[order[:R]] = True
    return R, rejected


BH = bh_critical_values(2, 0.05)


def test_step_up_known_values():
    outcome = step_up([0.01, 0.04], BH)
    assert outcome.R == 2
    assert_array_equal(outcome.rejected, [True, True])

    assert step_up([1.0] * 5, bh_critical_values(5, 0.5)).R == 0
    outcome = step_up([0.03, 0.9], BH)
    assert outcome.R == 0
    assert not outcome.rejected.any()


def test_step_down_known_values():
    outcome = step_down([0.01, 0.04], BH)
    assert outcome.R == 2
    assert outcome.rejected.all()

    assert step_down([0.03, 0.04], BH).R == 0
    outcome = step_down([0.01, 0.9], BH)
    assert outcome.R == 1
    assert outcome.rejected_indices() == [0]


def test_step_up_rejects_below_alpha_R():
    # p_{1:3} = 0.04 > α₁ 但 R = 3，全部拒绝
    crit = bh_critical_values(3, 0.09)
    outcome = step_up([0.04, 0.05, 0.09], crit)
    assert outcome.R == 3
    assert step_down([0.04, 0.05, 0.09], crit).R == 0


def test_length_mismatch():
    with pytest.raises(LengthMismatchError) as excinfo:
        step_up([0.1, 0.2, 0.3], BH)
    assert excinfo.value.code == "length-mismatch"
    with pytest.raises(LengthMismatchError):
        step_down([0.1], BH)


def test_zero_pvalues_and_single_hypothesis():
    crit = CriticalValues([0.05])
    for p in ([0.0], [0.05], [0.3]):
        assert step_up(p, crit) == step_down(p, crit)
    assert step_up([0.0], crit).R == 1


def test_step_down_tie_block_rejected_together():
    # α 单调不减时 SD 的 R 不会落在并列块内部
    crit = CriticalValues([0.02, 0.02, 0.02, 0.03])
    outcome = step_down([0.5, 0.02, 0.02, 0.02], crit)
    assert outcome.R == 3
    assert outcome.rejected_indices() == [1, 2, 3]

    crit = CriticalValues([0.01, 0.02, 0.02, 0.03])
    outcome = step_down([0.03, 0.01, 0.01, 0.5], crit)
    assert outcome.R == 2
    assert outcome.rejected_indices() == [1, 2]


def test_outcome_counts_with_partition():
    partition = HypothesisPartition.from_indices(3, [0, 2])
    outcome = step_up([0.001, 0.002, 0.5], bh_critical_values(3, 0.1), partition)
    assert outcome.R == 2
    assert outcome.V == 1
    assert false_discovery_proportion(outcome, partition) == 0.5


def test_fdp_known_values():
    partition = HypothesisPartition.all_null(3)
    assert false_discovery_proportion(TestOutcome.from_rejections([False] * 3, partition), partition) == 0.0
    assert false_discovery_proportion(TestOutcome.from_rejections([True] * 3, partition), partition) == 1.0
    half = HypothesisPartition.from_indices(3, [1])
    assert false_discovery_proportion(TestOutcome.from_rejections([True, True, False]), half) == 0.5


def test_fdp_size_mismatch():
    outcome = TestOutcome.from_rejections([True, False])
    with pytest.raises(SizeMismatchError) as excinfo:
        count_false_rejections(outcome, HypothesisPartition.all_null(3))
    assert excinfo.value.code == "size-mismatch"


def test_outcome_validation():
    with pytest.raises(ParameterConstraintError):
        TestOutcome(np.array([True, False]), 2)
    with pytest.raises(ParameterConstraintError):
        TestOutcome(np.array([True, False]), 1, V=2)
    with pytest.raises(ParameterConstraintError):
        PValueVector([0.2, 1.2])


def _random_instance(rng):
    m = int(rng.integers(1, 9))
    if rng.random() < 0.5:
        p = rng.random(m)
    else:
        p = rng.choice([0.0, 0.01, 0.02, 0.05, 0.1, 0.3, 1.0], size=m)
    if rng.random() < 0.5:
        alphas = np.sort(rng.uniform(0.001, 0.999, m))
    else:
        alphas = np.sort(rng.choice([0.01, 0.02, 0.05, 0.1, 0.3], size=m))
    return p, alphas


def test_engines_match_brute_force_oracle():
    rng = np.random.default_rng(12345)
    mismatches = 0
    for _ in range(10000):
        p, alphas = _random_instance(rng)
        crit = CriticalValues(alphas)
        su, sd = step_up(p, crit), step_down(p, crit)
        R_su, rej_su = brute_force_step_up(p, alphas)
        R_sd, rej_sd = brute_force_step_down(p, alphas)
        if su.R != R_su or not np.array_equal(su.rejected, rej_su):
            mismatches += 1
        if sd.R != R_sd or not np.array_equal(sd.rejected, rej_sd):
            mismatches += 1
    assert mismatches == 0


pvalue_lists = st.lists(
    st.one_of(st.floats(0.0, 1.0), st.sampled_from([0.0, 0.01, 0.05, 0.1, 1.0])),
    min_size=1, max_size=8,
)


@st.composite
def problems(draw):
    p = draw(pvalue_lists)
    alphas = sorted(draw(st.lists(st.floats(0.001, 0.999), min_size=len(p), max_size=len(p))))
    return p, CriticalValues(alphas)


@settings(max_examples=300, deadline=None)
@given(problems())
def test_step_up_dominates_step_down(problem):
    p, crit = problem
    su, sd = step_up(p, crit), step_down(p, crit)
    assert su.R >= sd.R
    assert np.all(su.rejected >= sd.rejected)


@settings(max_examples=300, deadline=None)
@given(problems(), st.integers(0, 7), st.floats(0.0, 0.5))
def test_monotone_in_critical_values(problem, index, delta):
    p, crit = problem
    raised = crit.alphas.copy()
    raised[index % crit.m] += delta
    raised = np.minimum(np.maximum.accumulate(raised), 0.999)
    raised = np.maximum(raised, crit.alphas)
    higher = CriticalValues(raised)
    assert step_up(p, higher).R >= step_up(p, crit).R
    assert step_down(p, higher).R >= step_down(p, crit).R


@settings(max_examples=300, deadline=None)
@given(problems(), st.randoms(use_true_random=False))
def test_permutation_equivariance(problem, random):
    p, crit = problem
    perm = list(range(len(p)))
    random.shuffle(perm)
    permuted = [p[i] for i in perm]
    for engine in (step_up, step_down):
        base = engine(p, crit)
        moved = engine(permuted, crit)
        assert moved.R == base.R
        assert_array_equal(moved.rejected, base.rejected[perm])


@settings(max_examples=300, deadline=None)
@given(pvalue_lists, st.floats(0.01, 0.99))
def test_step_up_tie_adjustment_is_invariant(p, alpha):
    a = tie_adjusted_critical_values(p, alpha)
    b = bh_critical_values(len(p), alpha)
    assert step_up(p, a) == step_up(p, b)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=8, unique=True), st.floats(0.01, 0.99))
def test_step_down_tie_adjustment_without_ties(p, alpha):
    a = tie_adjusted_critical_values(p, alpha)
    b = bh_critical_values(len(p), alpha)
    assert step_down(p, a) == step_down(p, b)
