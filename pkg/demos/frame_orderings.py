"""
Time order of events across inertial frames
===========================================

A value event and two measurement events on the distant system. The
measurements are timelike to each other, so their order is fixed; each is
spacelike to the value event, which can therefore land before, between, or
after them depending on the frame.
"""

from itertools import combinations

from timebell.relativity import Event, classify, critical_velocity, ordering_witnesses, scan_orderings

events = [
    Event(0.0, 0.0, "eta_pm"),
    Event(0.2, 1.0, "eta_prime"),
    Event(0.6, 1.1, "eta_dprime"),
]

for e1, e2 in combinations(events, 2):
    v = critical_velocity(e1, e2)
    extra = f", order flips at v = {v:.4f}" if v is not None else ""
    print(f"{e1.label:10} - {e2.label:10}: {classify(e1, e2).value}{extra}")

print()
for order, v in sorted(ordering_witnesses(events).items(), key=lambda kv: kv[1]):
    print(f"v = {v:+.4f}: " + " < ".join(order))

print("\nvelocity scan finds the same set:", set(ordering_witnesses(events)) == scan_orderings(events))
