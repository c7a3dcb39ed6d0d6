"""Built-in fallback catalog: the 29 zero heights below 100.

Produced by this package's own scanner (grid step 0.05, bisection
tolerance 1e-9) and cross-checked against an arbitrary-precision
reference in the test suite.  Heights above the summation-strategy
switch at t = 50 inherit the main-sum accuracy (~5e-5); all uses of
this table tolerate far more.
"""

from .zeroscan import ZeroCatalog

FIRST_29_MAX_HEIGHT = 100.0

FIRST_29 = (
    14.134725141897794,
    21.02203963883221,
    25.01085758022964,
    30.424876125529416,
    32.935061587765816,
    37.58617815859617,
    40.918719011917716,
    43.32707328088582,
    48.00515088103712,
    49.77383247800172,
    52.970270087942474,
    56.446265946701175,
    59.34713589809835,
    60.83168048001827,
    65.11265022568406,
    67.07966617755594,
    69.54652052335442,
    72.06707280389963,
    75.7048222336918,
    77.14468414373698,
    79.33745750822126,
    82.91030405201019,
    84.73558167479933,
    87.42517932914197,
    88.8091836731881,
    92.49186333082619,
    94.65139305628838,
    95.87060317508877,
    98.83119893781841,
)


def builtin_catalog() -> ZeroCatalog:
    return ZeroCatalog(heights=FIRST_29, source="loaded", max_height_scanned=FIRST_29_MAX_HEIGHT)
