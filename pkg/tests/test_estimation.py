import numpy as np
import pytest

from core.critical_values import RatioTrend
from core.procedures import STEP_DOWN, STEP_UP
from estimation.bounds import (
    EQUAL,
    LOWER,
    UPPER,
    bh_independence_bound,
    dependence_bound,
    modified_sd_bound,
    ratio_bound,
    two_hypothesis_bound,
    within_slack,
)
from estimation.exact import exact_fdr_m2_grid
from estimation.monte_carlo import monte_carlo
from estimation.probes import (
    EVENT_A1,
    EVENT_A2,
    EVENT_C,
    classify_m2_event,
    event_decomposition_m2,
    expected_direction,
    monotonicity_probe,
)
from estimation.procedures import ProcedureSpec
from models.generators import NONMONOTONE_VARIANTS
from models.specs import BiUniformModel, BonferroniSharpModel, M2SuSharpModel, NonmonotoneSdModel
from models.types import COMONOTONE, COPULA_VARIANTS, COUNTERMONOTONE, CopulaSpec, FalseNullSpec, RandomSeed
from utils.errors import (
    InvalidLevelsError,
    ParameterConstraintError,
    PartitionMismatchError,
    UnknownVariantError,
    UnsupportedModelError,
)

N_REPS = 20000
GRID_N = 2000
GRID_TOL = 10.0 / GRID_N


def su(family, alpha):
    return ProcedureSpec(STEP_UP, family, alpha)


def sd(family, alpha):
    return ProcedureSpec(STEP_DOWN, family, alpha)


def assert_matches(report, target, check=EQUAL):
    assert within_slack(report.fdr_hat, target, report.std_error_fdr, check), \
        f"{report.procedure_id} @ {report.model_id}: {report.fdr_hat} vs {target} ± {report.std_error_fdr}"


# ---------------------------------------------------------------- 解析界


def test_closed_form_bounds():
    assert bh_independence_bound(8, 16, 0.1) == pytest.approx(0.05)
    assert dependence_bound(2, 0.4) == pytest.approx(0.6)
    assert dependence_bound(100, 0.5) == 1.0
    assert two_hypothesis_bound(0.1, 0.3) == pytest.approx(0.4)
    assert two_hypothesis_bound(0.6, 0.7) == 1.0
    assert modified_sd_bound(1, 2, 0.19) == pytest.approx(0.1)
    assert modified_sd_bound(3, 3, 0.2) == pytest.approx(0.2)
    assert ratio_bound(su("bonferroni", 0.3).base_values(3), 2) == pytest.approx(0.2)


def test_within_slack():
    assert within_slack(0.052, 0.05, 0.001, UPPER)
    assert not within_slack(0.055, 0.05, 0.001, UPPER)
    assert within_slack(0.046, 0.05, 0.001, LOWER)
    assert not within_slack(0.045, 0.05, 0.001, LOWER)
    assert within_slack(0.0539, 0.05, 0.001, EQUAL)
    assert not within_slack(0.0461 - 0.001, 0.05, 0.001, EQUAL)
    assert within_slack(0.05, 0.05, 0.0, EQUAL)
    with pytest.raises(UnknownVariantError):
        within_slack(0.05, 0.05, 0.001, "between")


# ---------------------------------------------------------------- 蒙特卡洛


@pytest.mark.parametrize("level", [0.0, 0.99])
def test_bh_equality_under_independence(level, seed):
    model = BiUniformModel(8, FalseNullSpec.dirac([level] * 8))
    report = monte_carlo(model, su("bh", 0.1), N_REPS, seed)
    assert_matches(report, bh_independence_bound(8, 16, 0.1))
    assert report.m == 16 and report.m0 == 8
    assert report.n_reps == N_REPS


def test_bh_conservative_nulls(seed):
    model = BiUniformModel(8, FalseNullSpec.dirac([0.0] * 8), null_shift=0.3)
    report = monte_carlo(model, su("bh", 0.1), N_REPS, seed)
    assert_matches(report, 0.05, UPPER)
    assert report.fdr_hat < 0.05


@pytest.mark.parametrize("variant", COPULA_VARIANTS)
def test_bonferroni_sharpness(variant, seed):
    m = 2 if variant == COUNTERMONOTONE else 5
    model = BonferroniSharpModel(m, CopulaSpec(variant))
    for proc in (su("bh", 0.25), sd("bh", 0.25), su("bonferroni", 0.25)):
        report = monte_carlo(model, proc, N_REPS, seed)
        assert_matches(report, 0.25)
        assert report.fwer_hat == report.fdr_hat


def test_two_hypothesis_sharpness(seed):
    proc = ProcedureSpec.explicit(STEP_UP, [0.1, 0.3])
    report = monte_carlo(M2SuSharpModel(0.1, 0.3), proc, N_REPS, seed)
    assert_matches(report, two_hypothesis_bound(0.1, 0.3))
    assert report.fdr_hat <= 0.4 + 4 * report.std_error_fdr


@pytest.mark.parametrize("level", [0.0, 0.2, 1.0])
def test_two_hypothesis_single_null_bound(level, seed):
    # m₀ = 1 时 FDR ⩽ α₂
    proc = ProcedureSpec.explicit(STEP_UP, [0.1, 0.3])
    model = BiUniformModel(1, FalseNullSpec.dirac([level]))
    report = monte_carlo(model, proc, N_REPS, seed)
    assert_matches(report, 0.3, UPPER)
    assert exact_fdr_m2_grid(model, proc, GRID_N) <= 0.3 + GRID_TOL


def test_by_factor_attained_for_two_hypotheses(seed):
    report = monte_carlo(M2SuSharpModel(0.2, 0.4), su("bh", 0.4), N_REPS, seed)
    assert_matches(report, dependence_bound(2, 0.4))


@pytest.mark.parametrize("proc", [sd("bh", 0.2), su("bh", 0.2), sd("tie_adjusted_bh", 0.2)],
                         ids=lambda proc: proc.procedure_id)
def test_single_null_sharp_configuration(proc, seed):
    # 三个假零 p 值恒为 0，唯一真零的 FDR 为 α/m
    model = BiUniformModel(1, FalseNullSpec.dirac([0.0, 0.0, 0.0]))
    report = monte_carlo(model, proc, N_REPS, seed)
    assert_matches(report, 0.05)


@pytest.mark.parametrize("family", ["modified_c", "tie_adjusted_c"])
def test_modified_step_down_attains_bound(family, seed):
    model = BiUniformModel(1, FalseNullSpec.dirac([1.0]))
    report = monte_carlo(model, sd(family, 0.19), N_REPS, seed)
    bound = modified_sd_bound(1, 2, 0.19)
    assert_matches(report, bound)
    assert report.fdr_hat > 0.095
    assert report.fdr_hat <= 0.19


def test_nonmonotone_step_down(seed):
    expected = {"zero": 0.1, "alphaU": 0.075, "U": 0.095, "shifted": 0.1}
    reports = {}
    for variant in NONMONOTONE_VARIANTS:
        reports[variant] = monte_carlo(NonmonotoneSdModel(variant, 0.2), sd("bh", 0.2), N_REPS, seed)
        assert_matches(reports[variant], expected[variant])
        assert_matches(reports[variant], 0.1, UPPER)
    # 同一种子下假零 p 值逐次增大，FDR 先降后升
    assert reports["alphaU"].fdr_hat < reports["zero"].fdr_hat
    assert reports["alphaU"].fdr_hat < reports["U"].fdr_hat < reports["shifted"].fdr_hat


def test_unreachable_rejections(seed):
    model = BiUniformModel(5, null_shift=1.0)
    report = monte_carlo(model, su("bh", 0.5), 200, seed)
    assert report.fdr_hat == 0.0
    assert report.fwer_hat == 0.0
    assert report.std_error_fdr == 0.0
    assert report.mean_R == 0.0


def test_fdp_never_exceeds_familywise_indicator(seed):
    model = BiUniformModel(3, FalseNullSpec.scaled_uniform(0.05, count=3))
    report = monte_carlo(model, su("bh", 0.2), 2000, seed, keep_replicates=True)
    trace = report.trace
    assert trace.fdp.shape == (2000,)
    assert np.all(trace.fdp <= (trace.false_rejections > 0))
    assert np.all(trace.false_rejections <= trace.rejections)
    assert report.fdr_hat <= report.fwer_hat
    assert report.fdr_hat == pytest.approx(trace.fdp.mean())


def test_result_independent_of_workers(seed):
    model = BonferroniSharpModel(4, CopulaSpec(COMONOTONE))
    single = monte_carlo(model, su("bh", 0.3), 3001, seed, workers=1, keep_replicates=True)
    pooled = monte_carlo(model, su("bh", 0.3), 3001, seed, workers=4, keep_replicates=True)
    assert single == pooled
    np.testing.assert_array_equal(single.trace.fdp, pooled.trace.fdp)
    assert monte_carlo(model, su("bh", 0.3), 3001, RandomSeed(seed.seed + 1)) != single


def test_monte_carlo_rejects_empty_run(seed):
    with pytest.raises(ParameterConstraintError):
        monte_carlo(BiUniformModel(2), su("bh", 0.1), 0, seed)


# ---------------------------------------------------------------- 精确积分


@pytest.mark.parametrize("model,proc,target", [
    (M2SuSharpModel(0.1, 0.3), ProcedureSpec.explicit(STEP_UP, [0.1, 0.3]), 0.4),
    (M2SuSharpModel(0.2, 0.4), su("bh", 0.4), 0.6),
    (NonmonotoneSdModel("zero", 0.2), sd("bh", 0.2), 0.1),
    (NonmonotoneSdModel("alphaU", 0.2), sd("bh", 0.2), 0.075),
    (NonmonotoneSdModel("U", 0.2), sd("bh", 0.2), 0.095),
    (NonmonotoneSdModel("shifted", 0.2), sd("bh", 0.2), 0.1),
    (BonferroniSharpModel(2, CopulaSpec(COUNTERMONOTONE)), su("bh", 0.25), 0.25),
    (BiUniformModel(1, FalseNullSpec.dirac([1.0])), sd("modified_c", 0.19), 0.1),
    (BiUniformModel(2), su("bh", 0.1), 0.1),
], ids=lambda value: getattr(value, "model_id", getattr(value, "procedure_id", None)))
def test_exact_oracle_values(model, proc, target):
    assert exact_fdr_m2_grid(model, proc, GRID_N) == pytest.approx(target, abs=GRID_TOL)


def test_exact_oracle_agrees_with_monte_carlo(seed):
    model, proc = NonmonotoneSdModel("U", 0.2), sd("bh", 0.2)
    report = monte_carlo(model, proc, N_REPS, seed)
    oracle = exact_fdr_m2_grid(model, proc, GRID_N)
    assert abs(report.fdr_hat - oracle) <= 4 * report.std_error_fdr + GRID_TOL


def test_exact_oracle_without_true_nulls():
    model = BiUniformModel(0, FalseNullSpec.dirac([0.0, 0.5]))
    assert exact_fdr_m2_grid(model, su("bh", 0.1), GRID_N) == 0.0


def test_exact_oracle_errors():
    with pytest.raises(ParameterConstraintError):
        exact_fdr_m2_grid(M2SuSharpModel(0.1, 0.3), su("bh", 0.3), 10)
    with pytest.raises(UnsupportedModelError) as excinfo:
        exact_fdr_m2_grid(BonferroniSharpModel(3), su("bh", 0.3), GRID_N)
    assert excinfo.value.code == "unsupported-model"


# ---------------------------------------------------------------- 探针


def test_classify_m2_event():
    assert classify_m2_event(0.05, 0.9, 0.1, 0.3) == EVENT_A1
    assert classify_m2_event(0.5, 0.05, 0.1, 0.3) == EVENT_A2
    assert classify_m2_event(0.2, 0.25, 0.1, 0.3) == EVENT_C
    assert classify_m2_event(0.2, 0.5, 0.1, 0.3) is None
    assert classify_m2_event(0.1, 0.1, 0.1, 0.3) == EVENT_A1


def test_event_decomposition_matches_fdp(seed):
    model = M2SuSharpModel(0.1, 0.3)
    proc = ProcedureSpec.explicit(STEP_UP, [0.1, 0.3])
    parts = event_decomposition_m2(model, 0.1, 0.3, 5000, seed)
    report = monte_carlo(model, proc, 5000, seed)
    assert parts.total == pytest.approx(report.fdr_hat, abs=1e-12)
    assert parts.p_a1 == pytest.approx(0.1, abs=0.02)
    assert parts.p_a2 == pytest.approx(0.1, abs=0.02)
    assert parts.p_c == pytest.approx(0.2, abs=0.025)


def test_event_decomposition_bound_under_independence(seed):
    parts = event_decomposition_m2(BiUniformModel(2), 0.1, 0.3, N_REPS, seed)
    se = np.sqrt(0.25 / N_REPS)
    assert parts.total <= 2 * 0.1 + (0.3 - 0.1) + 4 * se
    assert parts.total == pytest.approx(0.1 + 0.9 * 0.1 + 0.2 * 0.2, abs=4 * se)


def test_event_decomposition_errors(seed):
    with pytest.raises(PartitionMismatchError) as excinfo:
        event_decomposition_m2(NonmonotoneSdModel("U", 0.2), 0.1, 0.2, 100, seed)
    assert excinfo.value.code == "partition-mismatch"
    with pytest.raises(ParameterConstraintError):
        event_decomposition_m2(BiUniformModel(2), 0.3, 0.1, 100, seed)


def test_expected_direction():
    assert expected_direction(su("bh", 0.1), 4) == RatioTrend.CONSTANT
    assert expected_direction(su("bonferroni", 0.1), 4) == RatioTrend.NON_DECREASING
    squares = ProcedureSpec.explicit(STEP_UP, [0.1 * i * i / 16 for i in range(1, 5)])
    assert expected_direction(squares, 4) == RatioTrend.NON_INCREASING


def test_monotonicity_probe_constant_for_bh(seed):
    reports = monotonicity_probe(su("bh", 0.1), 3, [0.0, 0.3, 0.7, 1.0], N_REPS, seed)
    assert len(reports) == 4
    for report in reports:
        assert report.m == 4 and report.m0 == 3
        assert_matches(report, bh_independence_bound(3, 4, 0.1))


def test_monotonicity_probe_non_increasing(seed):
    squares = ProcedureSpec.explicit(STEP_UP, [0.1 * i * i / 16 for i in range(1, 5)])
    reports = monotonicity_probe(squares, 3, [0.0, 0.5, 1.0], N_REPS, seed)
    bound = ratio_bound(squares.base_values(4), 3)
    assert_matches(reports[0], bound, UPPER)
    for previous, current in zip(reports[:-1], reports[1:]):
        assert_matches(current, previous.fdr_hat, UPPER)
    assert reports[-1].fdr_hat < reports[0].fdr_hat


@pytest.mark.parametrize("levels", [[], [0.5, 0.3], [0.2, 0.2], [0.1, 1.2], [-0.1, 0.5]])
def test_monotonicity_probe_invalid_levels(levels, seed):
    with pytest.raises(InvalidLevelsError) as excinfo:
        monotonicity_probe(su("bh", 0.1), 3, levels, 10, seed)
    assert excinfo.value.code == "invalid-levels"


def test_monotonicity_sweep_non_decreasing(seed):
    roots = ProcedureSpec.explicit(STEP_UP, [0.1 * np.sqrt(i / 4) for i in range(1, 5)])
    assert expected_direction(roots, 4) == RatioTrend.NON_DECREASING
    reports = monotonicity_probe(roots, 3, [0.0, 0.5, 1.0], N_REPS, seed)
    bound = ratio_bound(roots.base_values(4), 3)
    for report in reports:
        assert_matches(report, bound, UPPER)
    for previous, current in zip(reports[:-1], reports[1:]):
        assert_matches(current, previous.fdr_hat, LOWER)
    assert reports[-1].fdr_hat > reports[0].fdr_hat


@pytest.mark.parametrize("level", [0.0, 0.1, 0.2, 0.5, 1.0])
def test_bh_two_hypotheses_ignores_false_null_position(level):
    model = BiUniformModel(1, FalseNullSpec.dirac([level]))
    assert exact_fdr_m2_grid(model, su("bh", 0.1), GRID_N) == pytest.approx(0.05, abs=GRID_TOL)


@pytest.mark.parametrize("model", [
    BiUniformModel(3, FalseNullSpec.scaled_uniform(0.2, count=3)),
    BiUniformModel(5, FalseNullSpec.shifted_uniform(0.5, 0.1, count=3)),
    BiUniformModel(4),
], ids=lambda model: model.model_id)
@pytest.mark.parametrize("family", ["bh", "tie_adjusted_bh"])
def test_step_down_bound_with_random_false_nulls(model, family, seed):
    report = monte_carlo(model, sd(family, 0.2), N_REPS, seed)
    assert_matches(report, bh_independence_bound(model.m0, model.m, 0.2), UPPER)


@pytest.mark.parametrize("model", [
    BiUniformModel(3, FalseNullSpec.dirac([1.0, 1.0])),
    BiUniformModel(3, FalseNullSpec.scaled_uniform(0.19, count=2)),
    BiUniformModel(2),
], ids=lambda model: model.model_id)
@pytest.mark.parametrize("family", ["modified_c", "tie_adjusted_c"])
def test_modified_step_down_bound_with_several_nulls(model, family, seed):
    report = monte_carlo(model, sd(family, 0.19), N_REPS, seed)
    bound = modified_sd_bound(model.m0, model.m, 0.19)
    assert bound <= 0.19 + 1e-12
    assert_matches(report, bound, UPPER)
