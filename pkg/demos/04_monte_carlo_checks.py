"""Random-sampling checks of the lemmas and bounds.

Each check draws its own deterministic random stream from the seed, so the
reports below are reproducible line for line. Raise ``samples`` for a more
thorough run; ``qucoh verify`` does the same from the shell.
"""
# %%
from qucoh import harness

SEED, SAMPLES = 2024, 50_000

# %% The d = 2 lower inequality of the three-vector lemma fails in d = 3.
print(harness.probe_lemma1_lower(3, harness.SampleConfig(SEED, 200, 3)).to_text())

# %% Every suite, in fixed order.
for suite in harness.SUITES:
    print(f"\n== {suite}")
    for report in harness.run_suite(suite, seed=SEED, samples=SAMPLES, jobs=4):
        status = "ok" if report.passed else "FAILED"
        print(f"{report.check_name:<28} {report.total:>8} samples  "
              f"worst {report.worst_margin:+.2e}  {status}")
