"""
Seeded law checks
=================

Each law is tried on randomly generated instances; a report counts passes,
failures and budget overruns, and keeps the first failing instance.
"""

from spancsp.lawcheck import LAWS, check_law
from spancsp.limits import mutation

for law in LAWS:
    print(check_law(law, range(10)).summary())

# with a deliberately broken pushout, the interchange check notices
with mutation("pushout_quotient"):
    report = check_law("interchange", range(10))
print(report.summary())
