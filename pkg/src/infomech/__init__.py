"""Information-theoretic peer evaluation.

Core pieces: exact f-mutual information on finite alphabets, empirical joint
types, the mode-collapse adversary with its estimator ceilings, the
same-source (TVD-MI) mechanism with payments and item-level AUC
decomposition, log-probability baselines, tampering transforms, classical
reliability bridges, and a tournament harness.
"""

from .adversary import (
    AtomizedJoint,
    CollapseParams,
    CollapseResult,
    IndistinguishabilityReport,
    atomized_from_joint,
    atomized_to_joint,
    coupled_sample,
    estimator_ceiling,
    indistinguishability_experiment,
    mode_collapse,
    sparse_fmi,
    uniform_diagonal_joint,
)
from .empirical import (
    EmpiricalType,
    PairSample,
    empirical_type,
    is_pure,
    plug_in_fmi,
    types_equal,
)
from .fdiv import (
    BUILTIN_GENERATORS,
    CHI2,
    KL,
    TVD,
    Channel,
    DpiReport,
    FGenerator,
    JointDistribution,
    apply_channel_to_y,
    check_dpi,
    f_mutual_information,
    marginals,
    max_fmi_diagonal,
)
from .logprob import (
    DEFAULT_TEMPLATES,
    EchoOracleProvider,
    HttpLogProbProvider,
    LogProbProvider,
    LogProbTemplates,
    ProviderError,
    gppm_score,
    mi_doe_score,
)
from .mechanism import (
    CATEGORIES,
    DEFAULT_ACCEPTANCE,
    GOOD_FAITH,
    LENIENT_ACCEPTANCE,
    PROBLEMATIC,
    AcceptanceSet,
    CriticVerdict,
    GamingReport,
    LowerBoundReport,
    PairRecord,
    ResponseRecord,
    ZeroVarianceError,
    aggregate_payments,
    bootstrap_ci,
    build_pairs,
    cohens_d_paired,
    estimator_is_lower_bound,
    item_auc,
    judge_preferences_to_scores,
    likelihood_ratio_critic,
    macro_auc,
    post_processing_payment_experiment,
    symmetrize,
    tvd_mi_score,
)
from .reliability import (
    AgreementStats,
    ContingencyTable,
    KappaTvdReport,
    KappaUndefinedError,
    agreement_stats,
    cohens_kappa,
    kappa_tvd_bound_check,
    tvd_joint_product,
    youdens_j,
)
from .tamper import (
    DEFAULT_MARKER,
    DEFAULT_PAD,
    TransformSpec,
    apply_transform,
    case_flip,
    constant_pad,
    format_standardize,
    pattern_inject,
)

__version__ = "0.1.0"
