"""Running the seeded property suites and scene files from Python.

Everything the `qcond` command line does is available as a library call:
`run_suite` executes one named property suite and returns a report object,
and `load_scene` / `run_scene` evaluate a JSON scene of frozen expected
values.
"""

import pathlib

from qcond import SUITE_NAMES, load_scene, run_scene, run_suite

print("registered suites:")
for name in SUITE_NAMES:
    print("  -", name)

# A suite report carries the pass/fail counts, the largest residual seen,
# any witnesses the suite was required to find, and notes.
report = run_suite("duality", dims=(2, 3), trials=10, seed=7)
print("\nduality:", report.passes, "of", report.trials, "trials,",
      "max residual", report.max_residual)
print("ok:", report.ok)

# Search suites *must* find counterexamples; their witnesses are part of
# the report.
report = run_suite("bayes2-luders-noncommuting", dims=(2,), trials=5, seed=7)
print("\nnoncommuting witnesses found:", len(report.witnesses))
first = report.witnesses[0]
print("witness fields:", sorted(first))
print("witness residual:", first["residual"])

# Scene files freeze a small story: named objects plus checks with expected
# values.  run_scene returns per-check residuals.
scene_dir = pathlib.Path(__file__).resolve().parent.parent / "docs" / "scenes"
scene = load_scene(scene_dir / "luders-conditioning.json")
result = run_scene(scene)
good = sum(1 for c in result.checks if c.passed)
print("\nscene", scene.name, "->", good, "of", len(result.checks), "checks")
for check in result.checks[:3]:
    print(f"  #{check.index} {check.op}: residual {check.residual:.2e}")
