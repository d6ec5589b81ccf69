"""Published m = 10 approximation parameters, transcribed verbatim.

Each table lists (u_i, v_i), i = 1..10, with pin value f(a) = 1.
table1_*: rational approximation of x^(-alpha) on [1, 1e15] (pinned at x = 1).
table2_*: exponential-sum approximation of exp(-x^alpha) on [0, 1e3] (pinned at x = 0).
"""

from __future__ import annotations

from src.models import FamilyKind, TargetKind

# table id -> (family, target, alpha)
REFERENCE_META: dict[str, tuple[FamilyKind, TargetKind, float]] = {
    "table1_a25": (FamilyKind.RATIONAL_PINNED, TargetKind.POWER_NEG, 0.25),
    "table1_a50": (FamilyKind.RATIONAL_PINNED, TargetKind.POWER_NEG, 0.5),
    "table1_a75": (FamilyKind.RATIONAL_PINNED, TargetKind.POWER_NEG, 0.75),
    "table2_a25": (FamilyKind.EXP_PINNED, TargetKind.STRETCHED_EXP, 0.25),
    "table2_a50": (FamilyKind.EXP_PINNED, TargetKind.STRETCHED_EXP, 0.5),
    "table2_a75": (FamilyKind.EXP_PINNED, TargetKind.STRETCHED_EXP, 0.75),
}

REFERENCE_TERMS: dict[str, list[tuple[float, float]]] = {
    # x^(-alpha) by rational atoms, alpha = 0.25; rows in published order i = 1..10
    "table1_a25": [
        (1.060084e-03, 2.115485e-13),  # i=1
        (2.778250e-03, 6.526663e-11),  # i=2
        (7.184790e-03, 3.607348e-09),  # i=3
        (1.608844e-02, 1.812161e-07),  # i=4
        (2.879614e-02, 3.853128e-06),  # i=5
        (6.751752e-02, 8.192757e-05),  # i=6
        (1.117978e-01, 1.439033e-03),  # i=7
        (2.518764e-01, 2.088023e-02),  # i=8
        (3.723954e-01, 3.667548e-01),  # i=9
        (6.229275e-01, 1.537079e+00),  # i=10
    ],
    # x^(-alpha) by rational atoms, alpha = 0.5; rows in published order i = 1..10
    "table1_a50": [
        (1.263660e-04, 5.816049e-09),  # i=1
        (1.318851e-04, 6.336196e-08),  # i=2
        (2.177478e-03, 2.389865e-06),  # i=3
        (1.423375e-02, 1.453310e-04),  # i=4
        (3.605113e-02, 3.090116e-03),  # i=5
        (4.002657e-02, 9.723689e-03),  # i=6
        (7.561481e-02, 4.933185e-02),  # i=7
        (2.411886e-01, 1.552328e-01),  # i=8
        (3.672604e-01, 1.397038e+00),  # i=9
        (2.193928e+00, 3.631519e+00),  # i=10
    ],
    # x^(-alpha) by rational atoms, alpha = 0.75; rows in published order i = 1..10
    "table1_a75": [
        (1.653295e-06, 1.135126e-08),  # i=1
        (1.664949e-05, 6.273950e-07),  # i=2
        (2.008706e-04, 1.954833e-05),  # i=3
        (9.792299e-04, 2.343140e-04),  # i=4
        (7.011612e-03, 2.808580e-03),  # i=5
        (3.444878e-02, 3.059759e-02),  # i=6
        (9.142663e-03, 6.570394e-02),  # i=7
        (2.280614e-01, 3.333403e-01),  # i=8
        (6.238136e+00, 8.579865e+00),  # i=9
        (2.478274e+00, 1.842403e+01),  # i=10
    ],
    # exp(-x^alpha) by exponential atoms, alpha = 0.25; rows in published order i = 1..10
    "table2_a25": [
        (3.684368e-02, 4.361538e-03),  # i=1
        (4.849511e-02, 1.282650e-02),  # i=2
        (1.017103e-01, 4.546295e-02),  # i=3
        (1.241971e-01, 1.714882e-01),  # i=4
        (1.319054e-01, 6.742622e-01),  # i=5
        (6.933268e-02, 1.942175e+00),  # i=6
        (1.337784e-01, 5.831305e+00),  # i=7
        (1.251127e-01, 4.098384e+01),  # i=8
        (8.343032e-02, 2.543346e+02),  # i=9
        (1.409798e-01, 4.184289e+04),  # i=10
    ],
    # exp(-x^alpha) by exponential atoms, alpha = 0.5; rows in published order i = 1..10
    "table2_a50": [
        (8.918599e-03, 4.939622e-02),  # i=1
        (6.127055e-02, 1.064209e-01),  # i=2
        (2.567263e-01, 2.821308e-01),  # i=3
        (2.731277e-01, 9.794697e-01),  # i=4
        (1.406392e-01, 2.821308e+00),  # i=5
        (1.200802e-01, 8.296959e+00),  # i=6
        (4.969377e-02, 2.491130e+01),  # i=7
        (4.906249e-02, 7.959777e+01),  # i=8
        (2.565896e-02, 4.452959e+02),  # i=9
        (1.487512e-02, 3.471687e+04),  # i=10
    ],
    # exp(-x^alpha) by exponential atoms, alpha = 0.75; rows in published order i = 1..10
    "table2_a75": [
        (1.204240e-01, 3.772042e-01),  # i=1
        (3.399225e-01, 6.078323e-01),  # i=2
        (2.922859e-01, 1.180517e+00),  # i=3
        (5.133306e-02, 2.024447e+00),  # i=4
        (1.093081e-01, 3.400412e+00),  # i=5
        (4.550720e-02, 8.648423e+00),  # i=6
        (2.014393e-02, 2.066880e+01),  # i=7
        (1.329286e-02, 5.479472e+01),  # i=8
        (6.492292e-03, 2.940820e+02),  # i=9
        (1.283043e-03, 3.400412e+04),  # i=10
    ],
}

REFERENCE_IDS = tuple(REFERENCE_TERMS)
