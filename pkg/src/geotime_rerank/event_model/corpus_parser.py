"""
JSON Lines corpus reader/writer with per-line diagnostics.
"""

import datetime
import io
import json
import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO

from geotime_rerank.errors import CorpusValidationError

from .constant import (
    CATEGORIES_KEY,
    DATE_KEY,
    ID_KEY,
    LATITUDE_KEY,
    LOCATION_NAME_KEY,
    LONGITUDE_KEY,
    MAX_LATITUDE,
    MAX_LONGITUDE,
    MIN_LATITUDE,
    MIN_LONGITUDE,
    RELATED_IDS_KEY,
    REQUIRED_KEYS,
    SUMMARY_KEY,
    TITLE_KEY,
    WARNING_KINDS,
    DiagnosticKind,
)
from .event_record import Corpus, EventRecord


@dataclass(frozen=True)
class Diagnostic:
    """
    One problem found while parsing a corpus.

    Attributes:
        line (int): 1-based line number, 0 for corpus-level problems.
        kind (DiagnosticKind): Problem category.
        message (str): Human-readable description.
        id (str | None): Event id when it could be read from the line.
    """

    line: int
    kind: DiagnosticKind
    message: str
    id: str | None = None

    @property
    def is_error(self) -> bool:
        return self.kind not in WARNING_KINDS

    def to_dict(self) -> dict:
        record: dict = {"line": self.line}
        if self.id is not None:
            record["id"] = self.id
        record["kind"] = self.kind.value
        record["message"] = self.message
        return record


@dataclass(frozen=True)
class ParsedCorpus:
    """
    Result of ``parse_corpus``: the events that validated plus every diagnostic.
    """

    corpus: Corpus
    diagnostics: tuple[Diagnostic, ...]

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]

    @property
    def ok(self) -> bool:
        return not self.errors


class _LineError(Exception):
    def __init__(self, kind: DiagnosticKind, message: str) -> None:
        super().__init__(message)
        self.kind = kind
        self.message = message


def _is_number(value: object) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _string_list(record: dict, key: str) -> tuple[str, ...]:
    value = record.get(key, [])
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise _LineError(DiagnosticKind.invalid_field, f"'{key}' must be a list of strings")
    return tuple(value)


def _string(record: dict, key: str) -> str:
    value = record.get(key, "")
    if not isinstance(value, str):
        raise _LineError(DiagnosticKind.invalid_field, f"'{key}' must be a string")
    return value


def _parse_date(value: object) -> datetime.date:
    if not isinstance(value, str) or len(value) != 10:
        raise _LineError(DiagnosticKind.invalid_date, f"date {value!r} is not YYYY-MM-DD")
    try:
        return datetime.date.fromisoformat(value)
    except ValueError as e:
        raise _LineError(DiagnosticKind.invalid_date, f"date {value!r} is invalid: {e}") from e


def _record_to_event(record: dict) -> EventRecord:
    for key in REQUIRED_KEYS:
        if key not in record:
            raise _LineError(DiagnosticKind.missing_field, f"missing required field '{key}'")

    event_id = record[ID_KEY]
    if not isinstance(event_id, str) or not event_id:
        raise _LineError(DiagnosticKind.invalid_field, "'id' must be a non-empty string")
    title = _string(record, TITLE_KEY)
    if not title.strip():
        raise _LineError(DiagnosticKind.invalid_field, "'title' must be non-empty")

    latitude, longitude = record[LATITUDE_KEY], record[LONGITUDE_KEY]
    if not _is_number(latitude) or not _is_number(longitude):
        raise _LineError(DiagnosticKind.invalid_field, "coordinates must be numbers")
    if not (math.isfinite(latitude) and MIN_LATITUDE <= latitude <= MAX_LATITUDE):
        raise _LineError(
            DiagnosticKind.coordinate_out_of_range, f"latitude {latitude} out of range"
        )
    if not (math.isfinite(longitude) and MIN_LONGITUDE <= longitude <= MAX_LONGITUDE):
        raise _LineError(
            DiagnosticKind.coordinate_out_of_range, f"longitude {longitude} out of range"
        )

    return EventRecord(
        id=event_id,
        title=title,
        summary=_string(record, SUMMARY_KEY),
        location_name=_string(record, LOCATION_NAME_KEY),
        latitude=float(latitude),
        longitude=float(longitude),
        date=_parse_date(record[DATE_KEY]),
        categories=_string_list(record, CATEGORIES_KEY),
        related_ids=_string_list(record, RELATED_IDS_KEY),
    )


def _iter_lines(source: BinaryIO | bytes | Iterable[bytes]) -> Iterable[bytes]:
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source)
    return source


def parse_corpus(
    source: BinaryIO | bytes | Iterable[bytes],
    strict: bool = True,
    logger: logging.Logger | None = None,
) -> ParsedCorpus:
    """
    Parse a JSON Lines corpus in a single pass.

    Every line must hold one JSON object with the EventRecord fields; blank lines are
    skipped. Lines with hard errors are left out of the corpus and reported.
    Dangling or self-referencing ``related_ids`` only produce warnings.

    Args:
        source: Byte stream (or bytes) of the JSON Lines corpus.
        strict: Raise ``CorpusValidationError`` when any hard error was found.
        logger: Optional logger for a one-line summary.

    Returns:
        ParsedCorpus: The validated corpus plus all diagnostics.

    Raises:
        CorpusValidationError: In strict mode, if any line failed validation.
    """
    events: list[EventRecord] = []
    seen: dict[str, int] = {}
    diagnostics: list[Diagnostic] = []

    for line_no, raw in enumerate(_iter_lines(source), start=1):
        try:
            text = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
        except UnicodeDecodeError as e:
            diagnostics.append(
                Diagnostic(line_no, DiagnosticKind.invalid_encoding, f"invalid UTF-8: {e.reason}")
            )
            continue
        if not text.strip():
            continue
        try:
            record = json.loads(text)
        except json.JSONDecodeError as e:
            diagnostics.append(
                Diagnostic(line_no, DiagnosticKind.malformed_json, f"malformed JSON: {e.msg}")
            )
            continue
        if not isinstance(record, dict):
            diagnostics.append(
                Diagnostic(line_no, DiagnosticKind.not_an_object, "line is not a JSON object")
            )
            continue

        raw_id = record.get(ID_KEY) if isinstance(record.get(ID_KEY), str) else None
        try:
            event = _record_to_event(record)
        except _LineError as e:
            diagnostics.append(Diagnostic(line_no, e.kind, e.message, raw_id))
            continue

        if event.id in seen:
            diagnostics.append(
                Diagnostic(
                    line_no,
                    DiagnosticKind.duplicate_id,
                    f"duplicate id '{event.id}' (first seen on line {seen[event.id]})",
                    event.id,
                )
            )
            continue
        seen[event.id] = line_no
        events.append(event)

    for event in events:
        for related_id in event.related_ids:
            if related_id == event.id:
                diagnostics.append(
                    Diagnostic(
                        seen[event.id],
                        DiagnosticKind.self_related_id,
                        f"event '{event.id}' lists itself as related",
                        event.id,
                    )
                )
            elif related_id not in seen:
                diagnostics.append(
                    Diagnostic(
                        seen[event.id],
                        DiagnosticKind.dangling_related_id,
                        f"related id '{related_id}' is not in the corpus",
                        event.id,
                    )
                )

    if not events and not any(d.is_error for d in diagnostics):
        diagnostics.append(Diagnostic(0, DiagnosticKind.empty_corpus, "corpus is empty"))

    parsed = ParsedCorpus(corpus=Corpus(events), diagnostics=tuple(diagnostics))
    if logger is not None:
        logger.info(
            f"Parsed corpus: N_z={parsed.corpus.n_z}, errors={len(parsed.errors)}, "
            f"warnings={len(parsed.warnings)}"
        )
    if strict and not parsed.ok:
        first = parsed.errors[0]
        raise CorpusValidationError(
            f"{len(parsed.errors)} invalid corpus line(s), first on line {first.line}: "
            f"{first.message}",
            diagnostics=[d.to_dict() for d in parsed.diagnostics],
        )
    return parsed


def load_corpus(
    corpus_path: Path, strict: bool = True, logger: logging.Logger | None = None
) -> ParsedCorpus:
    """
    Read and parse a JSON Lines corpus file.
    """
    corpus_path = Path(corpus_path).expanduser()
    if not corpus_path.exists():
        raise FileNotFoundError(f"Corpus file {corpus_path} not found.")
    with open(corpus_path, "rb") as f:
        return parse_corpus(f, strict=strict, logger=logger)


def serialize_corpus(corpus: Corpus) -> bytes:
    """
    Serialize a corpus back to JSON Lines; ``parse_corpus`` inverts it exactly.
    """
    lines = [json.dumps(event.to_dict(), ensure_ascii=False) for event in corpus]
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""
