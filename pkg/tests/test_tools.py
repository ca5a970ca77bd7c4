"""The SQuAD converter produces files the eval harness loads unchanged."""

import json
import subprocess
import sys
from pathlib import Path

from hecele import EvalDataset

TOOL = Path(__file__).resolve().parent.parent / "tools" / "squad_to_dataset.py"

SQUAD_SAMPLE = {
    "version": "1.1",
    "data": [
        {
            "title": "Ankara",
            "paragraphs": [
                {
                    "context": "Ankara 1923 yılında başkent oldu.",
                    "qas": [
                        {"id": "a-1", "question": "Başkent hangi yıl değişti?", "answers": []},
                        {"id": "a-2", "question": "Hangi şehir başkent oldu?", "answers": []},
                    ],
                },
                {
                    "context": "Şehir Anadolu'nun ortasında yer alır.",
                    "qas": [{"id": "a-3", "question": "Şehir nerede yer alır?", "answers": []}],
                },
            ],
        },
        {
            "title": "Tekrar",
            "paragraphs": [
                {
                    "context": "Ankara 1923 yılında başkent oldu.",
                    "qas": [{"id": "b-1", "question": "Tekrarlanan soru?", "answers": []}],
                }
            ],
        },
    ],
}


def test_convert_round_trip(tmp_path):
    source = tmp_path / "squad.json"
    source.write_text(json.dumps(SQUAD_SAMPLE, ensure_ascii=False), encoding="utf-8")
    target = tmp_path / "dataset.json"

    proc = subprocess.run(
        [sys.executable, str(TOOL), str(source), str(target)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "2 passages, 4 questions" in proc.stderr

    dataset = EvalDataset.from_file(str(target))
    assert [p.id for p in dataset.passages] == ["p0", "p1"]
    assert len(dataset.questions) == 4
    # The duplicated context collapses onto one passage id.
    by_id = {q.id: q for q in dataset.questions}
    assert by_id["b-1"].passage_id == by_id["a-1"].passage_id == "p0"
    assert by_id["a-3"].passage_id == "p1"
