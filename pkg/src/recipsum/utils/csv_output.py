"""
CSV output: header row, comma separated, UTF-8, LF line endings

Floats are written with repr(), the shortest decimal that parses back to
the same double; integers (including exact big integers) with str().
"""

import csv
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional, Sequence, TextIO

from pydantic import BaseModel


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, BaseModel):
        return getattr(value, "label", str(value))
    return str(value)


class CsvWriter:
    def __init__(self, stream: TextIO):
        self._writer = csv.writer(stream, lineterminator="\n")

    def header(self, columns: Sequence[str]) -> None:
        self._writer.writerow(list(columns))

    def row(self, values: Iterable[Any]) -> None:
        self._writer.writerow([format_value(v) for v in values])

    def models(self, columns: Sequence[str], records: Iterable[BaseModel]) -> None:
        """Header plus one row per model, reading the named attributes"""
        self.header(columns)
        for record in records:
            self.row(getattr(record, column) for column in columns)


@contextmanager
def open_output(path: Optional[Path]) -> Iterator[CsvWriter]:
    """CsvWriter on the given file, or on stdout when path is None"""
    if path is None:
        yield CsvWriter(sys.stdout)
        sys.stdout.flush()
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        yield CsvWriter(f)
