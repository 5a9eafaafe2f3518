"""Small-sample time-series toolkit for annual macro and demographic data.

Covers unit-root testing (ADF and GLS-detrended DF with embedded
small-sample critical values), cointegration (Engle-Granger two-step and
the Johansen trace test), VAR/VECM estimation with residual diagnostics
and Granger causality, a cumulative-fit calibration of a lagged linear
inflation model, cohort-count correction procedures, and a deterministic
experiment showing how piecewise-systematic measurement errors defeat
cointegration tests while leaving goodness-of-fit high.
"""

from .cointegration import (
    EGResult,
    JohansenSpec,
    RankTestResult,
    DifferenceTestReport,
    difference_test,
    eg_critical_value,
    engle_granger,
    johansen_critical,
    johansen_trace,
)
from .demographics import (
    CohortPair,
    SyntheticSpec,
    SweepReport,
    SweepRow,
    census_spike_correction,
    cohort_cointegration,
    cohort_difference,
    cohort_unit_root_grid,
    participation_trend,
    piecewise_correction,
    ratio_diagnostic,
    spurious_experiment,
    synthetic_error,
    synthetic_reference,
)
from .errors import (
    CollinearError,
    DegenerateFit,
    DegenerateInput,
    DegenerateResiduals,
    DivideByZero,
    DofError,
    EmptyInput,
    GapError,
    LengthError,
    MissingFixture,
    ParseError,
    RangeError,
    SegmentError,
    ToolkitError,
)
from .inflation import (
    CalibrationResult,
    ModelCoefficients,
    PredictorSet,
    build_predictor_set,
    calibrate_cumulative,
    evaluate_subperiods,
    predict_inflation,
    redistribute_revisions,
)
from .ols import (
    RegressionFit,
    TestResult,
    arch_lm,
    breusch_godfrey,
    durbin_watson,
    het_test,
    ols_fit,
    ramsey_reset,
    skew_kurt_test,
)
from .reference import published_scalar, published_table, relative_deviation, table_ids
from .simulate import (
    ar1,
    cointegrated_pair,
    leadlag_pair,
    mc_adf_power,
    mc_adf_size,
    mc_diagnostic_size,
    random_walk,
    var_sim,
    white_noise,
)
from .series import (
    Series,
    SummaryStats,
    align,
    cumulative,
    diff,
    growth_rate,
    load_csv,
    moving_average,
    save_csv,
    shift,
    subtract,
    summary,
)
from .unit_root import (
    TrendSpec,
    UnitRootResult,
    adf_test,
    critical_value,
    dfgls_test,
    gls_detrend,
)
from .var_vecm import (
    VarModel,
    VecmModel,
    companion_eigen,
    companion_matrix,
    granger_causality,
    residual_normality,
    rmsfe,
    var_fit,
    var_lm_autocorr,
    vecm_fit,
)

__version__ = "1.0.0"

__all__ = [
    "CalibrationResult",
    "CohortPair",
    "CollinearError",
    "DegenerateFit",
    "DegenerateInput",
    "DegenerateResiduals",
    "DifferenceTestReport",
    "DivideByZero",
    "DofError",
    "EGResult",
    "EmptyInput",
    "GapError",
    "JohansenSpec",
    "LengthError",
    "MissingFixture",
    "ModelCoefficients",
    "ParseError",
    "PredictorSet",
    "RangeError",
    "RankTestResult",
    "RegressionFit",
    "SegmentError",
    "Series",
    "SummaryStats",
    "SweepReport",
    "SweepRow",
    "SyntheticSpec",
    "TestResult",
    "ToolkitError",
    "TrendSpec",
    "UnitRootResult",
    "VarModel",
    "VecmModel",
    "adf_test",
    "align",
    "ar1",
    "arch_lm",
    "breusch_godfrey",
    "build_predictor_set",
    "calibrate_cumulative",
    "census_spike_correction",
    "cohort_cointegration",
    "cohort_difference",
    "cohort_unit_root_grid",
    "cointegrated_pair",
    "companion_eigen",
    "companion_matrix",
    "critical_value",
    "cumulative",
    "dfgls_test",
    "diff",
    "difference_test",
    "durbin_watson",
    "eg_critical_value",
    "engle_granger",
    "evaluate_subperiods",
    "gls_detrend",
    "granger_causality",
    "growth_rate",
    "het_test",
    "johansen_critical",
    "johansen_trace",
    "leadlag_pair",
    "load_csv",
    "mc_adf_power",
    "mc_adf_size",
    "mc_diagnostic_size",
    "moving_average",
    "ols_fit",
    "participation_trend",
    "piecewise_correction",
    "predict_inflation",
    "published_scalar",
    "published_table",
    "ramsey_reset",
    "random_walk",
    "ratio_diagnostic",
    "redistribute_revisions",
    "relative_deviation",
    "residual_normality",
    "rmsfe",
    "save_csv",
    "shift",
    "skew_kurt_test",
    "spurious_experiment",
    "subtract",
    "summary",
    "synthetic_error",
    "synthetic_reference",
    "table_ids",
    "var_fit",
    "var_lm_autocorr",
    "var_sim",
    "vecm_fit",
    "white_noise",
]
