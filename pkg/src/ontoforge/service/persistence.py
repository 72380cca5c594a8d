"""Append-only project logs: length-prefixed JSON records plus snapshots.

Record framing is a decimal byte count, a newline, the UTF-8 JSON payload,
and a trailing newline, so logs stay greppable. A write torn by a crash can
only damage the final record; load drops that tail with a warning. Corruption
anywhere earlier fails the whole load.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


class CorruptLog(Exception):
    def __init__(self, offset: int, reason: str):
        super().__init__(f"corrupt log at byte {offset}: {reason}")
        self.offset = offset
        self.reason = reason


def append_record(path: Path, record: dict[str, Any]) -> None:
    payload = json.dumps(record, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
    frame = str(len(payload)).encode("ascii") + b"\n" + payload + b"\n"
    with open(path, "ab") as handle:
        handle.write(frame)
        handle.flush()
        os.fsync(handle.fileno())


def read_records(path: Path, start_offset: int = 0) -> tuple[list[dict[str, Any]], int]:
    """Read every complete record from `start_offset`.

    Returns (records, end_offset). A truncated final record is dropped; any
    earlier problem raises CorruptLog.
    """
    data = path.read_bytes()
    records: list[dict[str, Any]] = []
    offset = start_offset
    end = len(data)
    while offset < end:
        newline = data.find(b"\n", offset)
        if newline < 0:
            logger.warning("%s: dropping torn header at byte %d", path.name, offset)
            return records, offset
        header = data[offset:newline]
        if not header.isdigit():
            raise CorruptLog(offset, f"malformed length header {header[:32]!r}")
        length = int(header)
        body_start = newline + 1
        body_end = body_start + length
        if body_end > end:
            logger.warning("%s: dropping torn record at byte %d", path.name, offset)
            return records, offset
        try:
            record = json.loads(data[body_start:body_end].decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise CorruptLog(offset, f"undecodable record: {exc}") from exc
        if not isinstance(record, dict):
            raise CorruptLog(offset, "record is not a JSON object")
        records.append(record)
        offset = body_end
        if offset < end and data[offset:offset + 1] == b"\n":
            offset += 1
        # A missing trailing newline means the write was cut right after the
        # payload; the record itself is complete.
    return records, offset


def log_size(path: Path) -> int:
    return path.stat().st_size if path.exists() else 0


def write_snapshot(path: Path, state: dict[str, Any], through_offset: int) -> None:
    payload = json.dumps(
        {"throughOffset": through_offset, "state": state},
        ensure_ascii=False,
    ).encode("utf-8")
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(payload)
    os.replace(tmp, path)


def read_snapshot(path: Path) -> tuple[dict[str, Any], int] | None:
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text("utf-8"))
        return data["state"], int(data["throughOffset"])
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise CorruptLog(0, f"unreadable snapshot: {exc}") from exc
