"""Indoor hotspot path loss modeling toolkit.

Core library (models, dataset, fitting, equivalence, registry) plus an HTTP
service and a thin-client CLI. See README.md for usage.
"""

__version__ = "0.1.0"

from .dataset import (
    CAMPAIGNS,
    CampaignDescriptor,
    Dataset,
    Environment,
    PathLossSample,
    Polarization,
    SynthSpec,
    dumps_csv,
    filter_dataset,
    load_csv,
    parse_csv,
    synthesize,
    write_csv,
)
from .equivalence import (
    EquivalenceClaim,
    abg_from_ci,
    builtin_claims,
    fi_from_3gpp,
    verify_all,
    verify_claim,
)
from .errors import DataError, PathLossError, UnidentifiableError
from .fitting import (
    FitResult,
    fit_abg,
    fit_ci,
    fit_cif,
    fit_fi,
    fit_xpd,
    oracle_fit,
    residual_stats,
)
from .models import (
    AbgParams,
    CifParams,
    CiParams,
    FiParams,
    Tr38901InhModel,
    Tr38901Variant,
    XpdExtension,
    eval_3gpp_inh,
    eval_abg,
    eval_ci,
    eval_cif,
    eval_cross,
    eval_fi,
    evaluate,
    fspl_1m,
    params_from_dict,
    params_to_dict,
)
from .registry import (
    Band,
    PublishedEntry,
    entry_key,
    list_entries,
    lookup,
    parse_registry_key,
    registry_checksum,
)

__all__ = [
    "__version__",
    "AbgParams",
    "Band",
    "CAMPAIGNS",
    "CampaignDescriptor",
    "CiParams",
    "CifParams",
    "DataError",
    "Dataset",
    "Environment",
    "EquivalenceClaim",
    "FiParams",
    "FitResult",
    "PathLossError",
    "PathLossSample",
    "Polarization",
    "PublishedEntry",
    "SynthSpec",
    "Tr38901InhModel",
    "Tr38901Variant",
    "UnidentifiableError",
    "XpdExtension",
    "abg_from_ci",
    "builtin_claims",
    "dumps_csv",
    "entry_key",
    "eval_3gpp_inh",
    "eval_abg",
    "eval_ci",
    "eval_cif",
    "eval_cross",
    "eval_fi",
    "evaluate",
    "fi_from_3gpp",
    "filter_dataset",
    "fit_abg",
    "fit_ci",
    "fit_cif",
    "fit_fi",
    "fit_xpd",
    "fspl_1m",
    "list_entries",
    "load_csv",
    "lookup",
    "oracle_fit",
    "params_from_dict",
    "params_to_dict",
    "parse_csv",
    "parse_registry_key",
    "registry_checksum",
    "residual_stats",
    "synthesize",
    "verify_all",
    "verify_claim",
    "write_csv",
]
