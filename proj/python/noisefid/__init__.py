"""Average fidelity of quantum communication protocols under noise."""

from ._noisefid import (
    ConfigError,
    average_fidelity,
    closed_form,
    closed_form_keys,
    collective_dephasing,
    collective_rotation,
    compare_report,
    kraus_ad,
    kraus_pauli,
    kraus_pd,
    kraus_sgad,
    protocol_ids,
    sgad_rates,
    sweep,
    validate,
)

__all__ = [
    "ConfigError",
    "average_fidelity",
    "closed_form",
    "closed_form_keys",
    "collective_dephasing",
    "collective_rotation",
    "compare_report",
    "kraus_ad",
    "kraus_pauli",
    "kraus_pd",
    "kraus_sgad",
    "protocol_ids",
    "sgad_rates",
    "sweep",
    "validate",
]
