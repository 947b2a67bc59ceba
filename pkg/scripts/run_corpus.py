#!/usr/bin/env python3
"""Resolve and score every bundled corpus file and print a summary table.

Usage (from the repository root):
    python3 scripts/run_corpus.py [corpus-dir]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from focuscycle import EngineConfig, FocusCycleError, parse_document, resolve_document


def score_file(doc_path: Path, gold_path: Path) -> tuple[int, int, bool, bool]:
    gold_raw = json.loads(gold_path.read_text("utf-8"))
    gold = gold_raw["resolutions"]
    expected_failure = bool(gold_raw.get("expected_failure", False))
    cataphora = bool(gold_raw.get("cataphora", False))
    document = parse_document(doc_path.read_bytes())
    result = resolve_document(document, EngineConfig(cataphora=cataphora))
    top = result.readings[0]
    correct = sum(
        1
        for pid, want in gold.items()
        if top.resolutions[pid].antecedent == want
    )
    return correct, len(gold), expected_failure, cataphora


def main() -> int:
    corpus = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("corpus")
    rows = []
    total_correct = total_pronouns = 0
    for doc_path in sorted(corpus.glob("*.json")):
        if doc_path.name.endswith(".gold.json"):
            continue
        gold_path = doc_path.with_name(doc_path.stem + ".gold.json")
        if not gold_path.exists():
            try:
                parse_document(doc_path.read_bytes())
                rows.append((doc_path.stem, "-", "no gold"))
            except FocusCycleError as exc:
                rows.append((doc_path.stem, "-", f"invalid: {exc}"))
            continue
        correct, total, expected_failure, cataphora = score_file(doc_path, gold_path)
        rate = 100.0 if total == 0 else 100.0 * correct / total
        note = []
        if cataphora:
            note.append("cataphora")
        if expected_failure:
            note.append("expected failure")
        rows.append((doc_path.stem, f"{correct}/{total} = {rate:.1f}%", ", ".join(note)))
        if not expected_failure:
            total_correct += correct
            total_pronouns += total

    width = max(len(r[0]) for r in rows)
    for name, score, note in rows:
        print(f"{name:<{width}}  {score:<16} {note}")
    overall = 100.0 if total_pronouns == 0 else 100.0 * total_correct / total_pronouns
    print("-" * (width + 30))
    print(
        f"overall (excluding expected failures): "
        f"{total_correct}/{total_pronouns} = {overall:.1f}%"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
