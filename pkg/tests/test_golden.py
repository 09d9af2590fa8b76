"""Byte-level golden files for ``eval --json`` over the corpus.

Regenerate with ``UPDATE_GOLDEN=1 pytest tests/test_golden.py``.
"""

import os
from pathlib import Path

import pytest

from scalewise.cli import run

HERE = Path(__file__).parent
CORPUS = sorted((HERE / "corpus").glob("*.msr"))
GOLDEN = HERE / "golden"


def eval_json(path: Path, tmp: Path) -> bytes:
    out = tmp / (path.stem + ".json")
    run(["eval", str(path), "--json", "--out", str(out)])
    return out.read_bytes()


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_golden(path, tmp_path):
    first = eval_json(path, tmp_path)
    assert eval_json(path, tmp_path) == first
    golden = GOLDEN / (path.stem + ".json")
    if os.environ.get("UPDATE_GOLDEN"):
        golden.write_bytes(first)
    assert golden.exists(), f"missing golden file; run with UPDATE_GOLDEN=1"
    assert first == golden.read_bytes()
