"""File formats, command-line interface and benchmark harness."""

from .bench import BenchReport, BenchRow, ReferenceRow, bench_run, format_ratio, table1_reference
from .cli import build_parser, main
from .formats import Envelope, FileKind, deserialize, serialize

__all__ = [
    "BenchReport",
    "BenchRow",
    "Envelope",
    "FileKind",
    "ReferenceRow",
    "bench_run",
    "build_parser",
    "deserialize",
    "format_ratio",
    "main",
    "serialize",
    "table1_reference",
]
