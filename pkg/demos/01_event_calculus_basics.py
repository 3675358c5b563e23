"""
Fluents, events and maximal intervals
=====================================

A fluent holds a value over time. Events initiate and terminate those
values; the kernel turns the resulting time-points into maximal intervals.
"""

from ecbehave import Action, EventCalculus, FluentAssignment, Narrative, parse_rules
from ecbehave.kernel import compute_intervals

# a two-action world: a lamp is switched on and off
rules = parse_rules("""
action switch_on/1
action switch_off/1
fluent lit/1 values true, false
initiates switch_on(L) -> lit(L)=true;
initiates switch_off(L) -> lit(L)=false;
""")

narrative = Narrative()
narrative.happens(Action("switch_on", ("lamp",)), 5)
narrative.happens(Action("switch_off", ("lamp",)), 9)
narrative.happens(Action("switch_on", ("lamp",)), 12)
narrative.seal()                      # no more events once sealed

ec = EventCalculus(narrative, rules)
lit = FluentAssignment("lit", ("lamp",), "true")

# not lit at the frame it is switched on, still lit at the frame it goes off
for t in (5, 6, 9, 10, 12, 13):
    print(f"lit at {t:2d}: {ec.holds_at(lit, t)}")

print("lit during", ec.holds_for(lit))            # [(5, 9], since(12)]
print("off during", ec.holds_for(lit._replace(value="false")))

# switching on ends 'lit=false' too: values of one fluent exclude each other
print("broken in [5, 10):", ec.broken(lit, 5, 10))

# the interval sweep on its own
print(compute_intervals([3, 5], [10]))            # a repeated start is absorbed
print(compute_intervals([3], [2, 10]))            # an early end is ignored
