"""Loading person-keyed item data and reporting dataset statistics.

A dataset is stored in compressed-row form: ``indptr`` delimits each person's
slice of ``indices``, and each slice holds that person's item ids sorted by the
UTF-8 byte order of the original item strings. Item ids are dense and assigned
in first-occurrence order.
"""

from __future__ import annotations

import dataclasses
import io
import json
from functools import cached_property
from typing import IO, Iterable, Sequence

import numpy as np


class ParseError(ValueError):
    """A malformed input row. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclasses.dataclass(frozen=True)
class PersonRecord:
    items: tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class StatsReport:
    people: int
    records: int
    min_per_person: int
    median_per_person: float
    max_per_person: int
    vocabulary: int

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _byte_key(s: str) -> bytes:
    return s.encode("utf-8")


class Dataset:
    """Immutable person -> item-set table.

    Build one with :meth:`from_lists` or :func:`load_dataset`; the raw
    constructor trusts its arguments and is meant for generators that already
    hold valid compressed-row arrays.
    """

    def __init__(self, indptr: np.ndarray, indices: np.ndarray,
                 labels: Sequence[str], keys: Sequence[str] | None = None):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.labels = tuple(labels)
        n = len(self.indptr) - 1
        self.keys = tuple(keys) if keys is not None else tuple(str(i) for i in range(n))

    @classmethod
    def from_lists(cls, people: Iterable[Iterable[str]],
                   keys: Sequence[str] | None = None) -> "Dataset":
        """Intern string items; duplicates within a person are collapsed."""
        table: dict[str, int] = {}
        labels: list[str] = []
        indptr = [0]
        flat: list[int] = []
        for items in people:
            seen = dict.fromkeys(items)
            for s in seen:
                if s not in table:
                    table[s] = len(labels)
                    labels.append(s)
            flat.extend(table[s] for s in sorted(seen, key=_byte_key))
            indptr.append(len(flat))
        return cls(np.asarray(indptr, dtype=np.int64),
                   np.asarray(flat, dtype=np.int64), labels, keys)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def vocabulary_size(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        """Total number of (person, item) records, i.e. sum of |u_i|."""
        return int(self.indptr[-1])

    def __len__(self) -> int:
        return self.n

    @cached_property
    def contributions(self) -> np.ndarray:
        c = np.diff(self.indptr)
        c.setflags(write=False)
        return c

    @cached_property
    def people(self) -> tuple[PersonRecord, ...]:
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return tuple(PersonRecord(tuple(ind[ptr[i]:ptr[i + 1]])) for i in range(self.n))

    def person_items(self, i: int) -> list[str]:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return [self.labels[j] for j in self.indices[lo:hi]]

    def to_lists(self) -> list[list[str]]:
        return [self.person_items(i) for i in range(self.n)]

    def without(self, i: int) -> "Dataset":
        """Neighbouring dataset with person ``i`` removed; the others keep their order."""
        lists = self.to_lists()
        keys = list(self.keys)
        del lists[i], keys[i]
        return Dataset.from_lists(lists, keys)

    def __eq__(self, other: object) -> bool:
        # item ids are an interning detail; equality is over keys and item strings
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.keys == other.keys and self.to_lists() == other.to_lists()

    def __hash__(self) -> int:
        return hash((self.keys, tuple(map(tuple, self.to_lists()))))

    def __repr__(self) -> str:
        return f"Dataset(n={self.n}, records={self.size}, vocabulary={self.vocabulary_size})"


def _decode_lines(source: IO[bytes]):
    for lineno, raw in enumerate(source, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise UnicodeDecodeError(exc.encoding, exc.object, exc.start, exc.end,
                                     f"line {lineno}: {exc.reason}") from None
        yield lineno, line.rstrip("\r\n")


def load_dataset(source: IO[bytes] | bytes, format: str = "tsv") -> Dataset:
    """Parse a TSV (``person<TAB>item``) or JSONL (``{"person", "items"}``) byte stream.

    Persons appear in first-occurrence order. Raises :class:`ParseError` for
    malformed rows and :class:`UnicodeDecodeError` for non-UTF-8 input.
    """
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    if format not in ("tsv", "jsonl"):
        raise ValueError(f"unknown format {format!r}")

    grouped: dict[str, list[str]] = {}
    for lineno, line in _decode_lines(source):
        if not line.strip():
            continue
        if format == "tsv":
            person, sep, item = line.partition("\t")
            if not sep:
                raise ParseError(lineno, "expected 'person<TAB>item'")
            grouped.setdefault(person, []).append(item)
        else:
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(lineno, f"invalid JSON: {exc.msg}") from None
            if (not isinstance(row, dict) or not isinstance(row.get("person"), str)
                    or not isinstance(row.get("items"), list)
                    or not all(isinstance(x, str) for x in row["items"])):
                raise ParseError(lineno, 'expected {"person": str, "items": [str, ...]}')
            grouped.setdefault(row["person"], []).extend(row["items"])
    return Dataset.from_lists(grouped.values(), list(grouped))


def dump_dataset(d: Dataset, format: str = "jsonl") -> bytes:
    """Inverse of :func:`load_dataset` (up to per-person item order)."""
    out = io.StringIO()
    for key, items in zip(d.keys, d.to_lists()):
        if format == "jsonl":
            out.write(json.dumps({"person": key, "items": items}, ensure_ascii=False))
            out.write("\n")
        elif format == "tsv":
            # a person with no items cannot be represented in TSV
            for it in items:
                out.write(f"{key}\t{it}\n")
        else:
            raise ValueError(f"unknown format {format!r}")
    return out.getvalue().encode("utf-8")


def dataset_stats(d: Dataset) -> StatsReport:
    c = d.contributions
    if d.n == 0:
        return StatsReport(0, 0, 0, 0.0, 0, d.vocabulary_size)
    return StatsReport(
        people=d.n,
        records=d.size,
        min_per_person=int(c.min()),
        median_per_person=float(np.median(c)),
        max_per_person=int(c.max()),
        vocabulary=distinct_count_exact(d),
    )


def distinct_count_exact(d: Dataset) -> int:
    if d.size == 0:
        return 0
    return int(np.unique(d.indices).size)
