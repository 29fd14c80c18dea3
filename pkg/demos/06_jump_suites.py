"""Run the full registry of bound suites and print the consolidated table.

Each suite maps one family of claims about discontinuity jumps to runnable
checks on built-in converging sequences.  Check rows record the estimator
basis: pointwise rows hold at every grid point, measured rows compare
finite-n windowed estimates, closed-form rows evaluate a family's declared
asymptotic estimator, and exact-anchor rows use certified functional values.
"""

from entroloss import suite_ids, suite_run

reports = [suite_run(sid) for sid in suite_ids()]

print(f"{'suite':7s} {'status':7s} {'checks':7s} {'max slack':>12s}  title")
print("-" * 96)
for rep in reports:
    status = "pass" if rep.passed else "FAIL"
    print(f"{rep.suite_id:7s} {status:7s} {len(rep.checks):7d} {rep.max_slack:12.3e}  {rep.title}")

print("\nbasis breakdown across all checks:")
counts = {}
for rep in reports:
    for check in rep.checks:
        counts[check.basis] = counts.get(check.basis, 0) + 1
for basis, count in sorted(counts.items()):
    print(f"  {basis:12s} {count}")

# a closer look at the energy suite's series (the data the CLI writes as CSV)
p4 = next(r for r in reports if r.suite_id == "P4")
print("\nP4 series columns:", ", ".join(p4.series))
print("loss/bound ratio along the grid:",
      " ".join(f"{x:.3f}" for x in p4.series["loss_over_bound"]))

failed = [r.suite_id for r in reports if not r.passed]
print("\nall suites passed" if not failed else f"FAILED: {failed}")
