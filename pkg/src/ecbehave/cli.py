"""Command-line entry point: ``ecbehave recognize|evaluate|check``.

Exit codes: 0 on success, 1 on input errors (unreadable or malformed files,
bad flags), 2 on rule errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .behaviours import (SYMMETRIC_BEHAVIOURS, ContextMap, ThresholdConfig,
                         load_rules, recognize)
from .dsl import RuleError, check_rules, parse_rules
from .evaluation import report
from .ingest import (IngestError, _int, _read_text, load_appearance,
                     load_context, load_events, load_ground_truth)
from .kernel import ContractError, Interval, VocabularyError

__all__ = ["RunConfig", "main", "cmd_recognize", "cmd_evaluate", "cmd_check",
           "write_recognized", "read_recognized", "format_recognized"]

EXIT_OK, EXIT_INPUT, EXIT_RULES = 0, 1, 2
FORMATS = ("text", "csv", "json")
RECOGNIZED_COLUMNS = ("behaviour", "entities", "start", "end")


@dataclass
class RunConfig:
    subcommand: str
    events: Optional[str] = None
    context: Optional[str] = None
    rules: Optional[str] = None
    truth: Optional[str] = None
    recognized: Optional[str] = None
    appearance: Optional[str] = None
    config: Optional[str] = None
    overrides: dict = field(default_factory=dict)
    out: Optional[str] = None
    format: str = "text"
    horizon: Optional[int] = None

    REQUIRED = {"recognize": ("events",), "evaluate": ("recognized", "truth"),
                "check": ("rules",)}

    def __post_init__(self):
        if self.subcommand not in self.REQUIRED:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        missing = [n for n in self.REQUIRED[self.subcommand] if not getattr(self, n)]
        if missing:
            raise ValueError(f"{self.subcommand} needs --{', --'.join(missing)}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")


# -- recognised-interval files ----------------------------------------------

def format_recognized(result) -> str:
    """CSV text of recognised intervals; ``since(t)`` is written ``t,since:t``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECOGNIZED_COLUMNS)
    for name, ents, iv in result.rows():
        end = f"since:{iv.start}" if iv.end is None else iv.end
        w.writerow([name, "|".join(ents), iv.start, end])
    return buf.getvalue()


def read_recognized(path) -> dict:
    """``{(behaviour, entities): [Interval, ...]}`` from a recognised file."""
    errors, out = [], {}
    for lineno, row in enumerate(csv.reader(_read_text(path).splitlines()), 1):
        if not row or (lineno == 1 and row[0].strip() == "behaviour"):
            continue
        where = f"{path}:{lineno}"
        if len(row) != 4:
            errors.append(f"{where}: expected 4 fields, got {len(row)}")
            continue
        name, ents, start, end = (c.strip() for c in row)
        try:
            start = _int(start, "start")
            if end.startswith("since:"):
                if _int(end[6:], "since") != start:
                    raise ValueError(f"open interval {end} must repeat start {start}")
                iv = Interval(start)
            else:
                iv = Interval(start, _int(end, "end"))
        except (ValueError, ContractError) as exc:
            errors.append(f"{where}: {exc}")
            continue
        out.setdefault((name, tuple(ents.split("|"))), []).append(iv)
    if errors:
        raise IngestError(errors)
    return out


def _atomic_write(path, text: str) -> None:
    # write-then-rename so a failed run never leaves a partial file
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def write_recognized(path, result) -> None:
    _atomic_write(path, format_recognized(result))


def _emit(text: str, out, stdout) -> None:
    if out:
        _atomic_write(out, text)
    else:
        stdout.write(text)


# -- subcommands ---------------------------------------------------------------

def _thresholds(cfg: RunConfig) -> ThresholdConfig:
    base = ThresholdConfig.load(cfg.config) if cfg.config else ThresholdConfig()
    return ThresholdConfig.from_mapping(cfg.overrides, base)


def _errors(diagnostics):
    return [d for d in diagnostics if d.severity == "error"]


def _load_rule_file(path):
    text = _read_text(path)
    errors = _errors(check_rules(text))
    if errors:
        raise RuleError(errors)
    return parse_rules(text)


def cmd_recognize(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    try:
        narrative, tracks = load_events(cfg.events)
        context = load_context(cfg.context) if cfg.context else ContextMap()
        appearance = load_appearance(cfg.appearance) if cfg.appearance else None
        thresholds = _thresholds(cfg)
    except (IngestError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    try:
        rules = _load_rule_file(cfg.rules) if cfg.rules else load_rules()
        result = recognize(narrative, tracks, rules, context, thresholds,
                           appearance=appearance)
    except IngestError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except (RuleError, VocabularyError) as exc:
        print(f"rule error: {exc}", file=stderr)
        return EXIT_RULES
    except ContractError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    _emit(format_recognized(result), cfg.out, stdout)
    return EXIT_OK


def _max_frame(recognized: dict, truth) -> int:
    frames = [0]
    for ivs in recognized.values():
        frames += [iv.start if iv.end is None else iv.end for iv in ivs]
    frames += [g.end for g in truth]
    return max(frames)


def cmd_evaluate(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    try:
        recognized = read_recognized(cfg.recognized)
        truth = load_ground_truth(cfg.truth)
    except IngestError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    horizon = cfg.horizon if cfg.horizon is not None else _max_frame(recognized, truth)
    rep = report(recognized, truth, horizon, symmetric=SYMMETRIC_BEHAVIOURS)
    for msg in rep.warnings:
        print(f"warning: {msg}", file=stderr)
    _emit(rep.render(cfg.format), cfg.out, stdout)
    return EXIT_OK


def cmd_check(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    try:
        text = _read_text(cfg.rules)
    except IngestError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    diagnostics = check_rules(text)
    for d in diagnostics:
        print(f"{cfg.rules}:{d}", file=stderr)
    if _errors(diagnostics):
        return EXIT_RULES
    print(f"{cfg.rules}: ok", file=stdout)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def _key_value(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ecbehave",
        description="Recognise long-term behaviours from short-term behaviour logs.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    rec = sub.add_parser("recognize", help="recognise behaviour intervals")
    rec.add_argument("--events", required=True, help="events.csv")
    rec.add_argument("--context", help="context.json with fixed places")
    rec.add_argument("--rules", help="rule file (default: shipped rules)")
    rec.add_argument("--appearance", help="appearance.csv corrections")
    rec.add_argument("--config", help="threshold file of key=value lines")
    rec.add_argument("--set", dest="overrides", action="append", default=[],
                     type=_key_value, metavar="KEY=VALUE",
                     help="override one threshold; repeatable")
    rec.add_argument("--out", help="output file (default: stdout)")

    ev = sub.add_parser("evaluate", help="score recognised intervals")
    ev.add_argument("recognized", help="file written by 'recognize'")
    ev.add_argument("--truth", required=True, help="ground-truth truth.csv")
    ev.add_argument("--format", choices=FORMATS, default="text")
    ev.add_argument("--horizon", type=int,
                    help="frame closing open intervals (default: largest frame seen)")
    ev.add_argument("--out", help="output file (default: stdout)")

    ch = sub.add_parser("check", help="validate a rule file")
    ch.add_argument("rules", help="rule file")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(ns).items() if v is not None}
    values["overrides"] = dict(values.get("overrides", []))
    return RunConfig(**values)


COMMANDS = {"recognize": cmd_recognize, "evaluate": cmd_evaluate, "check": cmd_check}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    return COMMANDS[cfg.subcommand](cfg, stdout=stdout, stderr=stderr)


if __name__ == "__main__":
    sys.exit(main())
