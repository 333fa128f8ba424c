"""Simulator and verifier for a deterministic qudit key-distribution protocol.

The heavy lifting lives in the compiled extension ``dqkd._core``; this
package re-exports its public surface.
"""

from ._core import (
    Field,
    analytic_ir_detect,
    analytic_pe,
    eve_info,
    factor_prime_power,
    mub_vector,
    qdc_curve,
    qdc_success,
    qdc_undetected,
    run_records,
    run_session,
    scan_dimensions,
    verify_appendix,
    verify_mub,
)

__all__ = [
    "Field",
    "analytic_ir_detect",
    "analytic_pe",
    "eve_info",
    "factor_prime_power",
    "mub_vector",
    "qdc_curve",
    "qdc_success",
    "qdc_undetected",
    "run_records",
    "run_session",
    "scan_dimensions",
    "verify_appendix",
    "verify_mub",
]

__version__ = "0.1.0"
