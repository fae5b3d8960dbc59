"""Large graphs through closed-form spectra: hypercube profiles and torus times."""
import math

import numpy as np

from cyclespec import hypercube_prob_profile
from cyclespec.formulas import torus_equilibration

# 2^d P(t) rises from 0 to 1 around t = (ln d) / 2
for d in (10, 20, 40):
    fractions = np.array([0.3, 0.4, 0.5, 0.6, 0.8, 1.0])
    scaled = hypercube_prob_profile(d, fractions * math.log(d)) * 2.0**d
    print(f"d={d}:", "  ".join(f"{f:.1f}ln d->{v:.3g}" for f, v in zip(fractions, scaled)))

# the time to reach half the uniform full-cycle probability scales like side^2
for side, T in torus_equilibration([5, 7, 9, 11, 15], dim=3):
    print(f"side {side:>2}: n={side**3:>4}  T={T:.4f}  T/side^2={T / side**2:.4f}")
