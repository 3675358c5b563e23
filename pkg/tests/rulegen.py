"""Random rule files drawn from the rule grammar, for round-trip fuzzing."""

import random

NAMES = ["walk", "run", "stop", "wave", "enter", "leave", "drop", "pick_up"]
FLUENTS = ["busy", "near", "state", "together", "mode", "holding"]
VALUE_SETS = [("true", "false"), ("on", "off"), ("low", "mid", "high"), ("a", "b")]
VARS = ["P", "Q", "Obj", "X2", "_Any"]
SYMS = ["door", "p1", "shop_a"]


def _number(rng):
    if rng.random() < 0.5:
        return str(rng.randint(1, 500))
    return f"{rng.randint(0, 99)}.{rng.randint(1, 9)}"


def _numexpr(rng, consts, depth=0):
    pick = rng.random()
    if pick < 0.35 and consts:
        out = rng.choice(consts)
    elif pick < 0.55:
        out = "T"
    elif pick < 0.65:
        out = "-" + _number(rng)
    else:
        out = _number(rng)
    if depth < 2 and rng.random() < 0.35:
        out += f" {rng.choice('+-')} {_numexpr(rng, consts, depth + 1)}"
    return out


def _positive(rng, consts):
    return rng.choice(consts) if consts and rng.random() < 0.5 else _number(rng)


def _args(rng, arity, bound, allow_new=True):
    out = []
    for _ in range(arity):
        if rng.random() < 0.15:
            out.append(rng.choice(SYMS))
        elif allow_new and rng.random() < 0.4:
            out.append(rng.choice(VARS))
        else:
            out.append(rng.choice(sorted(bound)) if bound else rng.choice(SYMS))
    return out


def random_rule_text(seed):
    rng = random.Random(seed)
    actions = {n: rng.randint(1, 2) for n in rng.sample(NAMES, rng.randint(1, 5))}
    fluents = {n: (rng.randint(1, 2), rng.choice(VALUE_SETS))
               for n in rng.sample(FLUENTS, rng.randint(1, 4))}
    consts = {f"k{i}": _number(rng) for i in range(rng.randint(0, 3))}
    places = rng.sample(["shop", "display", "exit_door"], rng.randint(0, 2))

    lines = [f"% generated {seed}"]
    lines += [f"action {n}/{a}" for n, a in actions.items()]
    lines += [f"fluent {n}/{a} values {', '.join(v)}" for n, (a, v) in fluents.items()]
    lines += [f"const {n} = {v}" for n, v in consts.items()]
    lines += [f"places {p}" for p in places]
    cnames = list(consts)

    for _ in range(rng.randint(0, 6)):
        trig = rng.choice(list(actions))
        bound = set()
        targs = _args(rng, actions[trig], bound)
        bound |= {a for a in targs if a[0].isupper()}
        conds = []
        for _ in range(rng.randint(0, 4)):
            kind = rng.choice(["happens", "holds", "close", "far", "run",
                               "before", "cmp"])
            neg = rng.random() < 0.3
            prefix = "not " if neg else ""
            if kind == "happens":
                a = rng.choice(list(actions))
                args = _args(rng, actions[a], bound, not neg)
                conds.append(f"{prefix}happens({a}({', '.join(args)}))")
            elif kind == "holds":
                f = rng.choice(list(fluents))
                ar, vals = fluents[f]
                args = _args(rng, ar, bound, not neg)
                conds.append(f"{prefix}holdsAt({f}({', '.join(args)})={rng.choice(vals)})")
            elif kind == "close" and bound:
                a = rng.choice(sorted(bound))
                b = (rng.choice(sorted(bound)) if neg or rng.random() < 0.5
                     else rng.choice(VARS))
                conds.append(f"{prefix}close({a}, {b}, {_positive(rng, cnames)})")
            elif kind == "far" and bound and places:
                conds.append(f"{prefix}far_from_all({rng.choice(sorted(bound))}, "
                             f"{rng.choice(places)}, {_positive(rng, cnames)})")
            elif kind == "run":
                a = rng.choice(list(actions))
                args = _args(rng, actions[a], bound)
                conds.append(f"duration_run({a}({', '.join(args)}), "
                             f"{_positive(rng, cnames)})")
            elif kind == "before":
                a = rng.choice(list(actions))
                args = _args(rng, actions[a], bound)
                conds.append(f"sometime_before({a}({', '.join(args)}))")
            else:
                op = rng.choice(["<", "<=", ">", ">=", "=", "!="])
                conds.append(f"{_numexpr(rng, cnames)} {op} {_numexpr(rng, cnames)}")
            for c in conds[-1:]:
                if not c.startswith("not "):
                    bound |= {tok.strip("(),= ") for tok in c.replace("(", " ( ")
                              .replace(")", " ) ").replace(",", " , ").split()
                              if tok[:1].isupper() and tok != "T"}
        f = rng.choice(list(fluents))
        ar, vals = fluents[f]
        fargs = _args(rng, ar, bound, allow_new=False)
        polarity = rng.choice(["initiates", "terminates"])
        head = f"{polarity} {trig}({', '.join(targs)}) -> {f}({', '.join(fargs)})={rng.choice(vals)}"
        sep = rng.choice([" ", "\n  "])
        lines.append(head + (f"{sep}when " + f",{sep}".join(conds) if conds else "") + ";")
    return "\n".join(lines) + "\n"
