# # Exhaustive and family scans
#
# Every subset of a small field is measured and the running minima of the
# normalized quantities are kept. Ratios are exact fractions.

import io

from sumprod import exhaustive_scan, family_scan, verify_all, field_set

res = exhaustive_scan(13, (1, 3))
print(len(res), "sets visited")
print(res.summary_json())

# A single report carries all cardinalities and witness data.

rep = verify_all(field_set(101, [pow(3, i, 101) for i in range(10)]), "geo:g=3,len=10")
print(rep.csv_row())

# Seeded random families replay exactly; the CSV is the same for any
# number of workers.

a = family_scan(101, "random:size=3..10,seed=5", trials=50)
b = family_scan(101, "random:size=3..10,seed=5", trials=50, workers=2)
print("identical:", a.to_csv() == b.to_csv())
print(io.StringIO(a.to_csv()).readlines()[:3])

# Sets with |A|^2 > q: the deep scan also runs the witness pipeline.

deep = exhaustive_scan(7, deep=True)
print("theorem 3 checked on", deep.theorem3_checked, "sets")
