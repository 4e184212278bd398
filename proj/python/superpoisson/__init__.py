from ._core import (
    BracketError,
    Chart,
    LegendreError,
    Poly,
    Report,
    ScriptError,
    alpha,
    check_discrepancy,
    check_domega,
    check_koszul,
    check_linfty,
    check_weight,
    d,
    euler,
    hp,
    invlegendre,
    kappa,
    koszul,
    legendre,
    nondeg,
    phi,
    poisson,
    psi,
    run,
    schouten,
)

__all__ = [name for name in dir() if not name.startswith("_")]
