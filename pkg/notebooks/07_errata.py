# %% [markdown]
# # Where the reference tables disagree with computation
#
# The errata report lists every entry of the hard-coded reference tables
# that differs from the computed value.  Each record names the type, kind,
# entry, both values, and a short note where the discrepancy has an
# identifiable cause.

# %%
from collections import Counter

from adehikita.errata import errata_report

records = errata_report(["A3", "D4", "D5", "E6", "E7", "E8"], allow_heavy=True)
print(Counter((r["type"], r["kind"]) for r in records))

# %%
for r in records:
    if r["type"] in ("E6", "D4"):
        print(r["type"], r["kind"], r["entry"], "-", r.get("note", ""))
        print("   reference:", r["paper_value"])
        print("   computed: ", r["computed_value"])
