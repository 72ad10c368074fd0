"""Certified limit sets of general iterated function systems."""

from ._gifs import (
    ArgumentError,
    CapExceededError,
    CertificationError,
    Error,
    Map,
    NotConvergedError,
    PrefixError,
    SpecError,
    System,
    Tree,
    box_dimension_estimate,
    evaluate_cf,
    evaluate_cf_exact,
    fixed_point,
    hausdorff_distance,
    limit_set_alpha,
    one_variable_check,
    parse_spec,
    preset,
    preset_names,
    prefixes,
    variability,
)

__all__ = [name for name in dir() if not name.startswith("_")]
