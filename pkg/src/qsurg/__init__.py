"""qsurg: code surgery, tested state preparation, and Pauli-frame simulation
for CSS qLDPC codes.

Submodules
----------
gf2       dense GF(2) linear algebra (rank, kernels, right inverses, solving)
codes     classical / CSS code objects, example constructors, exact distance
surgery   deformed-code construction for batched logical measurements
ltsp      resource-state preparation circuits and their error-bound checks
protocol  teleported parity-check measurement and full surgery runs
circuit   primitive-operation circuit IR with spacetime fault locations
frame     Pauli-frame forward simulation
tableau   stabilizer-tableau simulator (independent oracle)
sim       fault sampling, lookup decoding, Monte Carlo rate estimation
compile   logical-operation decomposition, scheduling, cost calculators
cli       the qsurg command-line entry point
"""

__version__ = "0.1.0"
