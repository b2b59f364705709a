"""
Sweeping a family of curves
===========================

Every monic square-free A of degree 3 over GF(3) against every square-free
cubic f, with the naive oracle and the Frobenius lift check switched on.
The same run is available as

    isotwist sweep --field 3 --d 3 --oracle --lifts --out sweep.csv
"""

import json

from isotwist import FieldSpec, SweepSpec, sweep

spec = SweepSpec(FieldSpec(3), 3, A_filter="monic", f_filter="all", oracle=True, lifts=True)
report = sweep(spec)
agg = report.aggregate()
print(json.dumps({k: v for k, v in agg.items() if k != "spec"}, indent=1))
print()
print("\n".join(report.to_csv().splitlines()[:6]))
