"""
Writing and checking rules
==========================

Behaviours are defined in a small rule language. The shipped file covers
five long-term behaviours; this demo reads it, breaks it on purpose and
prints the diagnostics.
"""

from ecbehave import check_rules, format_rules, load_rules, parse_rules

rules = load_rules()
print(len(rules.clauses), "clauses over", ", ".join(rules.fluents))
print(rules.consts)

# the canonical form parses back to the same rule set
text = format_rules(rules)
assert parse_rules(text) == rules
print(text.split("\n\n")[1].splitlines()[0])

decls = """
action wave/1
fluent greeting/1 values true, false
"""

# syntax and scoping errors are reported together, with positions
broken = decls + """initiates wave(P) -> greeting(Q)=false;
initiates wave(P) -> greting(P)=true;
"""
for d in check_rules(broken):
    print(d)                              # line:col: severity: message

# a clause that feeds on its own effect parses, but is not stratified
loop = decls + "initiates wave(P) -> greeting(P)=true when holdsAt(greeting(P)=true);"
for d in check_rules(loop):
    print(d)

# thresholds are constants; callers may override them by name
print(rules.with_consts({"d_meeting": 30}).consts["d_meeting"])
