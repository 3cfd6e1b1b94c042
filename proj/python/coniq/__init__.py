"""Compiler and Monte Carlo simulator for concatenated error-detecting codes
on a movable-atom grid machine.

The heavy lifting lives in the C++ extension module ``_coniq``; this package
re-exports its functions.
"""

try:
    from ._coniq import (
        compile_circuit,
        compile_memory,
        fit_threshold,
        memory_point,
        profile_info,
        schedule_format_version,
        validate_program,
    )
except ImportError:  # extension built out-of-tree (e.g. straight from CMake)
    from _coniq import (
        compile_circuit,
        compile_memory,
        fit_threshold,
        memory_point,
        profile_info,
        schedule_format_version,
        validate_program,
    )

__all__ = [
    "compile_circuit",
    "compile_memory",
    "fit_threshold",
    "memory_point",
    "profile_info",
    "schedule_format_version",
    "validate_program",
]
