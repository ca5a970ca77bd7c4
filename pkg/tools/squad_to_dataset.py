"""Convert SQuAD-format question answering JSON to the eval dataset format.

SQuAD-style files (TQuAD among them) nest paragraphs inside articles, with
questions attached to the paragraph containing their answer. The eval
harness wants a flat document: a "passages" array of {id, text} and a
"questions" array of {id, text, passage_id}. Identical paragraph texts are
collapsed into one passage so duplicated contexts cannot inflate recall.

Usage:
    python3 tools/squad_to_dataset.py input.json output.json
"""

import argparse
import json
import sys


def convert(data: dict | list) -> dict:
    """Flatten a parsed SQuAD document into passages and questions."""
    articles = data.get("data") if isinstance(data, dict) else data
    if not isinstance(articles, list):
        raise ValueError('expected a SQuAD document with a "data" array')

    passages: list[dict] = []
    passage_id_by_text: dict[str, str] = {}
    questions: list[dict] = []

    for article in articles:
        for paragraph in article.get("paragraphs", []):
            context = paragraph["context"]
            passage_id = passage_id_by_text.get(context)
            if passage_id is None:
                passage_id = f"p{len(passages)}"
                passage_id_by_text[context] = passage_id
                passages.append({"id": passage_id, "text": context})
            for qa in paragraph.get("qas", []):
                question_id = str(qa.get("id", f"q{len(questions)}"))
                questions.append({
                    "id": question_id,
                    "text": qa["question"],
                    "passage_id": passage_id,
                })

    return {"passages": passages, "questions": questions}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input", help="SQuAD-format JSON file")
    parser.add_argument("output", help="where to write the dataset JSON")
    args = parser.parse_args(argv)

    with open(args.input, encoding="utf-8") as f:
        data = json.load(f)
    dataset = convert(data)
    with open(args.output, "w", encoding="utf-8") as f:
        json.dump(dataset, f, ensure_ascii=False, indent=2)
        f.write("\n")
    print(
        f"wrote {args.output}: {len(dataset['passages'])} passages, "
        f"{len(dataset['questions'])} questions",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
