"""
Recognising long-term behaviours
================================

Short-term labels per frame (walking, active, inactive, running, abrupt)
plus pixel positions go in; intervals of leaving_object, immobile,
moving, meeting and fighting come out.
"""

from ecbehave import ContextMap, ThresholdConfig, recognize, scenarios
from ecbehave.ingest import EventRecord, build

# a person walks by while an object appears next to them and is later
# picked up
sc = scenarios.leaving_object()
narrative, tracks = build(sc.records)
print(recognize(narrative, tracks))

# every hand-built scenario, merged into one log
corpus = scenarios.golden_corpus()
narrative, tracks = build(corpus.records)
result = recognize(narrative, tracks, context=ContextMap(corpus.places))
for behaviour, entities, interval in result.rows():
    print(f"{behaviour:15s} {'|'.join(entities):12s} {interval}")

# two people walking side by side for 20 frames is too brief to count as
# moving together, unless the minimum duration is relaxed
short = scenarios.moving_short()
narrative, tracks = build(short.records)
print(recognize(narrative, tracks).behaviour("moving"))
relaxed = ThresholdConfig(moving_min_duration=10)
print(recognize(narrative, tracks, config=relaxed).behaviour("moving"))

# building a log by hand: p1 stands still long enough to be immobile
recs = [EventRecord(t, "p1", "person", "walking", 50, 50) for t in range(0, 10)]
recs += [EventRecord(t, "p1", "person", "inactive", 50, 50) for t in range(10, 80)]
narrative, tracks = build(recs)
print(recognize(narrative, tracks).behaviour("immobile"))
