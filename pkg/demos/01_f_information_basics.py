"""Walkthrough: f-mutual information on finite alphabets.

Builds small joint laws, evaluates the built-in divergence generators,
pushes a law through a noisy channel, and watches the data processing
inequality do its job.
"""

import math

import numpy as np

from infomech import (
    BUILTIN_GENERATORS,
    KL,
    TVD,
    Channel,
    JointDistribution,
    apply_channel_to_y,
    check_dpi,
    f_mutual_information,
    marginals,
    max_fmi_diagonal,
)

# A fair bit copied exactly: X = Y uniform on {0, 1}.
copied_bit = JointDistribution([[0.5, 0.0], [0.0, 0.5]])
px, py = marginals(copied_bit)
print("copied fair bit, marginals:", px, py)

for name, gen in BUILTIN_GENERATORS.items():
    print(f"  I_{name}(X;Y) = {f_mutual_information(copied_bit, gen):.6f}")
print(f"  (Shannon value log 2 = {math.log(2):.6f} nats)")

# Independence means zero f-information for every generator.
product = JointDistribution(np.outer([0.3, 0.7], [0.6, 0.4]))
print("\nproduct law:", [f"{f_mutual_information(product, g):.2e}" for g in BUILTIN_GENERATORS.values()])

# The uniform diagonal coupling is the best any M-point diagonal law can do.
print("\ndiagonal maxima by support size (TVD / KL):")
for m in (1, 2, 4, 8, 16):
    print(f"  M={m:3d}: {max_fmi_diagonal(m, TVD):.4f} / {max_fmi_diagonal(m, KL):.4f}")

# Post-processing one coordinate can only destroy information.
flip = Channel([[0.9, 0.1], [0.1, 0.9]])
noisy = apply_channel_to_y(copied_bit, flip)
print("\nbit flipped with prob 0.1:")
print(f"  KL information drops to {f_mutual_information(noisy, KL):.4f} nats")

report = check_dpi(copied_bit, flip, TVD)
print(f"  DPI check (TVD): before={report.before:.4f} after={report.after:.4f} holds={report.holds}")

# Randomized sanity sweep.
rng = np.random.default_rng(0)
violations = 0
for _ in range(100):
    nx, ny = rng.integers(2, 5, size=2)
    joint = JointDistribution(rng.dirichlet(np.ones(nx * ny)).reshape(nx, ny))
    ch = Channel(rng.dirichlet(np.ones(3), size=ny))
    for gen in BUILTIN_GENERATORS.values():
        violations += not check_dpi(joint, ch, gen).holds
print(f"\nDPI violations over 300 random (joint, channel, generator) checks: {violations}")
