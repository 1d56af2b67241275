"""Conformance gate: adapter output must satisfy the downstream toolkit.

Exercises the full path transcript -> adapter -> `synconv validate` /
`synconv score`, talking to the primary package only through its CLI
and file formats. Prints one PASS/FAIL line.
"""

import csv
import io
import json
import subprocess
import sys
import time

from udadapter.cli import main

LINES = [
    ("m01", 1, "A", "Es gibt drei Runden"),
    ("m01", 2, "B", "Gut dann fangen wir an"),
    ("m01", 3, "A", "Die erste Runde dauert zehn Minuten"),
    ("m01", 4, "B", "Verstanden"),
    ("m01", 5, "A", "Danach machen wir eine Pause"),
    ("m02", 1, "C", "Hast du die Unterlagen dabei"),
    ("m02", 2, "D", "Ja sie liegen auf dem Tisch"),
    ("m02", 3, "C", "???"),
    ("m02", 4, "D", "Ich meine die blauen Ordner"),
    ("m02", 5, "C", "Ah gut danke"),
]


def write_transcript(path):
    rows = [json.dumps({"dialogue_id": d, "utterance_id": u,
                        "speaker": s, "text": t}, ensure_ascii=False)
            for d, u, s, t in LINES]
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")


def test_adapter_output_feeds_the_toolkit(tmp_path, capsys):
    t0 = time.perf_counter()
    failure = None

    transcript = tmp_path / "meeting.jsonl"
    conllu = tmp_path / "meeting.conllu"
    write_transcript(transcript)
    code = main([str(transcript), "--backend", "chain", "--strict",
                 "--out", str(conllu)])
    capsys.readouterr()
    if code != 0:
        failure = f"adapter exited {code}"

    if failure is None:
        check = subprocess.run(
            ["synconv", "validate", str(conllu)],
            capture_output=True, text=True)
        if check.returncode != 0:
            failure = f"strict validation failed:\n{check.stdout}{check.stderr}"
        elif "OK (10 sentences)" not in check.stdout:
            failure = f"unexpected validation report: {check.stdout!r}"

    if failure is None:
        # the four-token opener must come through as exactly four rows
        first_block = conllu.read_text(encoding="utf-8").split("\n\n")[0]
        rows = [r for r in first_block.splitlines() if r and not r.startswith("#")]
        if len(rows) != 4:
            failure = f"expected a 4-token first block, got {len(rows)} rows"

    if failure is None:
        scored = subprocess.run(
            ["synconv", "score", str(conllu)], capture_output=True, text=True)
        if scored.returncode != 0:
            failure = f"score exited {scored.returncode}: {scored.stderr}"
        else:
            records = list(csv.DictReader(io.StringIO(scored.stdout)))
            seen = {(r["dialogue_id"], r["speaker"]) for r in records}
            want = {(d, s) for d, _, s, _ in LINES}
            if seen != want:
                failure = f"metadata did not round trip: {sorted(seen)}"
            elif len(records) != 10:
                failure = f"expected 10 scored utterances, got {len(records)}"
            else:
                punct_only = [r for r in records
                              if r["dialogue_id"] == "m02" and r["position"] == "2"
                              and r["role"] == "initiator"]
                if not punct_only or punct_only[0]["length"] != "0":
                    failure = f"punctuation-only utterance not length 0: {punct_only}"

    elapsed = time.perf_counter() - t0
    status = "PASS" if failure is None else "FAIL"
    detail = "" if failure is None else f": {failure}"
    print(f"{status} adapter-toolkit-conformance ({elapsed:.2f}s){detail}")
    assert failure is None, failure


def test_split_mode_output_also_validates(tmp_path, capsys):
    transcript = tmp_path / "multi.jsonl"
    transcript.write_text(json.dumps({
        "dialogue_id": "d1", "utterance_id": 1, "speaker": "A",
        "text": "Gut so. Dann weiter. Fertig."}) + "\n", encoding="utf-8")
    conllu = tmp_path / "multi.conllu"
    code = main([str(transcript), "--backend", "chain", "--split-sentences",
                 "--out", str(conllu)])
    capsys.readouterr()
    assert code == 0
    check = subprocess.run(["synconv", "validate", str(conllu)],
                           capture_output=True, text=True)
    assert check.returncode == 0, check.stdout + check.stderr
    assert "OK (3 sentences)" in check.stdout


def test_stanza_path_reports_setup_error(tmp_path, capsys):
    transcript = tmp_path / "t.jsonl"
    write_transcript(transcript)
    code = main([str(transcript), "--backend", "stanza"])
    err = capsys.readouterr().err
    assert code == 4
    assert "setup" in err
    assert "pip install stanza" in err
