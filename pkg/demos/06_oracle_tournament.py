"""Walkthrough: a full offline tournament on the bundled fixture.

Twenty items, eight agents (four faithful, four problematic), all five
mechanisms under the deterministic oracle backend. No network, fully
reproducible from the seed.
"""

import tempfile
from pathlib import Path

from infomech.harness.fixture import fixture_path
from infomech.harness.tournament import TournamentConfig, run_tournament

out = Path(tempfile.mkdtemp())
cfg = TournamentConfig(
    dataset_path=str(fixture_path()),
    output_dir=str(out),
    seed=42,
    bootstrap_iterations=1000,
)
report = run_tournament(cfg)

print(f"items: {len(report.items)}  agents: {len(report.agents)}  pairs: {report.pairs_built}")
print()
print(f"{'mechanism':<18} {'macro AUC':>10} {'95% CI':>22} {'cohens d':>10}")
for mech in sorted(report.mechanisms):
    mr = report.mechanisms[mech]
    ci = "-" if mr.macro_auc_ci is None else f"[{mr.macro_auc_ci[0]:.3f}, {mr.macro_auc_ci[1]:.3f}]"
    d = "zero-variance" if mr.cohens_d is None else f"{mr.cohens_d:.3f}"
    print(f"{mech:<18} {mr.macro_auc:>10.4f} {ci:>22} {d:>13}")

print("\nper-agent payments (tvd_mi):")
for agent, value in sorted(report.mechanisms["tvd_mi"].payments.items()):
    print(f"  {agent}: {value:+.3f}")

print("\npooled same-source test (tvd_mi):", report.mechanisms["tvd_mi"].pooled)
print(f"\nreports written to {out} (report.json, report.csv, excluded.log)")
print("equivalent CLI: infomech tournament --config <config.json>")
