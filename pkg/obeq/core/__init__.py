"""
The `obeq.core` package contains the mathematics of the equation:
the solution family (`obeq.core.solutions`), tabulated functions (`obeq.core.gridfunction`),
negligible sets (`obeq.core.masks`), the Pexider solver (`obeq.core.pexider`),
the recovery pipeline (`obeq.core.reduction`)
and the semi-constancy test (`obeq.core.semiconstant`).
"""
