"""Walkthrough: measurement-tampering transforms.

Four deterministic text attacks that keep content but flatten the natural
variation evaluators rely on. The degradation report compares tournament
metrics with and without a transform.
"""

import tempfile

from infomech import case_flip, constant_pad, format_standardize, pattern_inject
from infomech.harness.fixture import fixture_path
from infomech.harness.tournament import TournamentConfig, degradation_report, run_tournament
from infomech.tamper import TransformSpec

text = "The probe returned **startling** data. Mission control was silent.\n\nThen: cheers."
print("original:")
print(" ", repr(text))
print("\ncase_flip:")
print(" ", repr(case_flip(text)))
print("\nformat_standardize:")
print(" ", repr(format_standardize(text)))
print("\npattern_inject:")
print(" ", repr(pattern_inject(text, "[CTX]")))
print("\nconstant_pad:")
print(" ", repr(constant_pad(text, "XYZXYZ")))

print("\ncase_flip twice restores the input:", case_flip(case_flip(text)) == text)
once = format_standardize(text)
print("format_standardize is idempotent:", format_standardize(once) == once)

# Tournament-level effect: run the oracle tournament with and without an
# attack and diff the headline metrics.
mechanisms = ("tvd_mi", "mi_doe")
base_cfg = TournamentConfig(
    dataset_path=str(fixture_path()), output_dir=tempfile.mkdtemp(), seed=1,
    mechanisms=mechanisms, bootstrap_iterations=200,
)
attack_cfg = TournamentConfig(
    dataset_path=str(fixture_path()), output_dir=tempfile.mkdtemp(), seed=1,
    mechanisms=mechanisms, bootstrap_iterations=200,
    transform=TransformSpec("pattern_inject"),
)
baseline = run_tournament(base_cfg)
attacked = run_tournament(attack_cfg)
delta = degradation_report(baseline, attacked)
print("\ndegradation under pattern injection:")
for mech, row in delta.items():
    print(f"  {mech}: delta_d={row['delta_d']:+.3f} delta_macro_auc={row['delta_macro_auc']:+.3f}")
