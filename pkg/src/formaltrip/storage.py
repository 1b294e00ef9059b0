"""Line-delimited persistence for datasets, run results, and judge results.

Every file is one JSON object per line, UTF-8, keys sorted, so files are
diffable and byte-reproducible. Result files start with a header line
carrying the tool version, a hash of the semantically relevant
configuration, and a hash of the dataset file consumed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .grammar.dataset import DatasetManifest, DatasetRecord
from .pipeline.runner import JudgeRecord, RoundTripRecord
from .syntax import parse_expression


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ": "))


def write_jsonl(path: str | Path, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(dumps(row) + "\n")
    return path


def read_jsonl(path: str | Path) -> list[dict]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(json.loads(line))
    return out


def config_hash(config: dict) -> str:
    return hashlib.sha256(dumps(config).encode("utf-8")).hexdigest()


def file_sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# ---------------------------------------------------------------------------
# dataset files

def dataset_record_to_json(record: DatasetRecord) -> dict:
    return {
        "id": record.id,
        "formalism": record.formalism,
        "grammar_id": record.grammar_id,
        "batch_index": record.batch_index,
        "category_metric": record.category_metric,
        "category_value": record.category_value,
        "expression": record.expression.canonical_text,
        "cfg_depth": record.cfg_depth,
        "vocabulary": record.vocabulary,
        "seed": record.seed,
    }


def dataset_record_from_json(row: dict) -> DatasetRecord:
    alphabet = set(row.get("vocabulary", {}).get("alphabet", ())) or None
    expr = parse_expression(row["formalism"], row["expression"], alphabet)
    return DatasetRecord(
        id=row["id"],
        formalism=row["formalism"],
        grammar_id=row["grammar_id"],
        batch_index=row["batch_index"],
        category_metric=row["category_metric"],
        category_value=row["category_value"],
        expression=expr,
        cfg_depth=row["cfg_depth"],
        vocabulary=row["vocabulary"],
        seed=row["seed"],
    )


def dataset_file_name(grammar_id: str, metric: str, batch: int) -> str:
    return f"{grammar_id}_{metric}_batch{batch}.jsonl"


def write_dataset(
    records: list[DatasetRecord], manifest: DatasetManifest, out_dir: str | Path
) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for batch in range(manifest.batches):
        rows = [
            dataset_record_to_json(r) for r in records if r.batch_index == batch
        ]
        paths.append(
            write_jsonl(out_dir / dataset_file_name(manifest.grammar_id, manifest.metric, batch), rows)
        )
    manifest_row = asdict(manifest)
    manifest_row["categories"] = {str(k): v for k, v in manifest.categories.items()}
    manifest_row["files"] = [p.name for p in paths]
    manifest_path = out_dir / f"{manifest.grammar_id}_{manifest.metric}_manifest.json"
    manifest_path.write_text(dumps(manifest_row) + "\n", encoding="utf-8")
    paths.append(manifest_path)
    return paths


def read_dataset(path: str | Path) -> list[DatasetRecord]:
    return [dataset_record_from_json(row) for row in read_jsonl(path)]


# ---------------------------------------------------------------------------
# result files

def result_header(
    model: str,
    config: dict,
    dataset_path: str | Path | None,
    deterministic: bool,
) -> dict:
    import datetime

    return {
        "kind": "header",
        "version": __version__,
        "model": model,
        "config_hash": config_hash(config),
        "dataset_hash": file_sha256(dataset_path) if dataset_path else None,
        "started_at": None
        if deterministic
        else datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def round_trip_to_json(record: RoundTripRecord) -> dict:
    row = asdict(record)
    row["kind"] = "round_trip"
    return row


def round_trip_from_json(row: dict) -> RoundTripRecord:
    row = {k: v for k, v in row.items() if k != "kind"}
    return RoundTripRecord(**row)


def judge_to_json(record: JudgeRecord) -> dict:
    row = asdict(record)
    row["kind"] = "judge"
    return row


def judge_from_json(row: dict) -> JudgeRecord:
    row = {k: v for k, v in row.items() if k != "kind"}
    return JudgeRecord(**row)


class ResultWriter:
    """Append-only result file: header first, then one record per line."""

    def __init__(self, path: str | Path, header: dict, resume: bool = False):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.existing_ids: set[str] = set()
        if resume and self.path.exists():
            rows = read_jsonl(self.path)
            if rows and rows[0].get("kind") == "header":
                if rows[0].get("config_hash") != header.get("config_hash"):
                    raise ValueError(
                        "resume config mismatch: result file was produced by a "
                        "different configuration"
                    )
            for row in rows[1:]:
                key = row.get("record_id") or row.get("pair_id")
                if key:
                    self.existing_ids.add(key)
            self._fh = self.path.open("a", encoding="utf-8")
        else:
            self._fh = self.path.open("w", encoding="utf-8")
            self._fh.write(dumps(header) + "\n")
            self._fh.flush()

    def write(self, row: dict):
        self._fh.write(dumps(row) + "\n")
        self._fh.flush()

    def close(self):
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_results(path: str | Path) -> tuple[dict, list[RoundTripRecord]]:
    rows = read_jsonl(path)
    if not rows or rows[0].get("kind") != "header":
        raise ValueError(f"{path} is not a result file (missing header)")
    return rows[0], [round_trip_from_json(r) for r in rows[1:]]


def read_judge_results(path: str | Path) -> tuple[dict, list[JudgeRecord]]:
    rows = read_jsonl(path)
    if not rows or rows[0].get("kind") != "header":
        raise ValueError(f"{path} is not a result file (missing header)")
    return rows[0], [judge_from_json(r) for r in rows[1:]]
