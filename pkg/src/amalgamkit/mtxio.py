"""MeatAxe text format and the generator-file manifest with a verifying cache."""

from __future__ import annotations

import hashlib
import json
import os
import re
import shutil
import time
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from filelock import FileLock

from .actions import Perm
from .errors import (
    BadHeader,
    DigestMismatch,
    EntryOutOfRange,
    ManifestError,
    OfflineCacheMiss,
    TrailingData,
    TransportError,
    TruncatedPayload,
    UnsupportedField,
)
from .fields import field_of_order
from .linalg import DenseMatrix

DATA_DIR = Path(__file__).with_name("data")

_NAMED_HEADER = re.compile(r"(matrix|permutation)((?:\s+\w+=\d+)+)\s*$")


@dataclass(frozen=True)
class MeatAxeObject:
    """A parsed MeatAxe file.

    For matrices ``rows`` holds the entries as tuples of field element numbers.
    For permutations ``perms`` holds the 0-based permutations.
    """

    kind: str
    mode: int
    field: int
    nrows: int
    ncols: int
    rows: tuple[tuple[int, ...], ...] = ()
    perms: tuple[Perm, ...] = ()
    named: bool = False

    def matrix(self) -> DenseMatrix:
        """Entries reinterpreted over GF(q); element numbers are bit patterns in the Conway basis."""
        if self.kind != "matrix":
            raise TypeError("not a matrix object")
        try:
            F = field_of_order(self.field)
        except Exception as exc:
            raise UnsupportedField(f"GF({self.field}) is not a binary field") from exc
        return DenseMatrix.from_entries(F, [list(r) for r in self.rows])

    @classmethod
    def from_matrix(cls, M: DenseMatrix) -> "MeatAxeObject":
        rows = tuple(tuple(r) for r in M.entries())
        return cls("matrix", 1, M.field.order, M.nrows, M.ncols, rows=rows)

    @classmethod
    def from_perms(cls, perms: Sequence[Perm]) -> "MeatAxeObject":
        if not perms:
            raise ValueError("need at least one permutation")
        return cls("permutation", 12, 1, perms[0].degree, len(perms), perms=tuple(perms))


def _tokens_after_header(lines: list[str]) -> list[str]:
    return " ".join(lines).split()


def parse_meataxe(text: str) -> MeatAxeObject:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise BadHeader("empty input")
    head, body = lines[0], lines[1:]
    m = _NAMED_HEADER.match(head)
    if m:
        return _parse_named(m.group(1), dict(kv.split("=") for kv in m.group(2).split()), body)
    parts = head.split()
    if not 3 <= len(parts) <= 4 or not all(p.isdigit() for p in parts):
        raise BadHeader(f"unrecognized header {head!r}")
    nums = [int(p) for p in parts]
    mode = nums[0]
    if mode == 1:
        if len(nums) != 4:
            raise BadHeader("mode 1 header needs field, rows and cols")
        _, q, r, c = nums
        return _parse_matrix(q, r, c, body, named=False)
    if mode == 12:
        if len(nums) == 4:
            _, _, degree, count = nums
        else:
            _, _, degree = nums
            count = 1
        return _parse_perms(degree, count, body, named=False)
    raise BadHeader(f"unsupported mode {mode}")


def _parse_named(kind: str, kv: dict, body: list[str]) -> MeatAxeObject:
    try:
        if kind == "matrix":
            return _parse_matrix(int(kv["field"]), int(kv["rows"]), int(kv["cols"]), body, named=True)
        return _parse_perms(int(kv["degree"]), int(kv.get("count", 1)), body, named=True)
    except KeyError as exc:
        raise BadHeader(f"named header lacks {exc}") from None


def _parse_matrix(q: int, r: int, c: int, body: list[str], named: bool) -> MeatAxeObject:
    if q < 2 or q > 9:
        raise UnsupportedField(f"field size {q} outside 2..9")
    digits = "".join("".join(body).split())
    if not digits.isdigit() and digits:
        bad = next(ch for ch in digits if not ch.isdigit())
        raise EntryOutOfRange(f"non-digit entry {bad!r}")
    need = r * c
    if len(digits) < need:
        raise TruncatedPayload(f"expected {need} entries, found {len(digits)}")
    if len(digits) > need:
        raise TrailingData(f"expected {need} entries, found {len(digits)}")
    vals = [int(ch) for ch in digits]
    if any(v >= q for v in vals):
        raise EntryOutOfRange(f"entry not below field size {q}")
    rows = tuple(tuple(vals[i * c:(i + 1) * c]) for i in range(r))
    return MeatAxeObject("matrix", 1, q, r, c, rows=rows, named=named)


def _parse_perms(degree: int, count: int, body: list[str], named: bool) -> MeatAxeObject:
    toks = _tokens_after_header(body)
    need = degree * count
    if len(toks) < need:
        raise TruncatedPayload(f"expected {need} images, found {len(toks)}")
    if len(toks) > need:
        raise TrailingData(f"expected {need} images, found {len(toks)}")
    try:
        vals = [int(t) - 1 for t in toks]
    except ValueError as exc:
        raise EntryOutOfRange(str(exc)) from None
    if any(not 0 <= v < degree for v in vals):
        raise EntryOutOfRange(f"image outside 1..{degree}")
    perms = tuple(Perm(tuple(vals[i * degree:(i + 1) * degree])) for i in range(count))
    return MeatAxeObject("permutation", 12, 1, degree, count, perms=perms, named=named)


def write_meataxe(obj: MeatAxeObject) -> str:
    if obj.kind == "matrix":
        if obj.field > 9:
            raise UnsupportedField(f"GF({obj.field}) needs multi-character entries")
        if obj.named:
            head = f"matrix field={obj.field} rows={obj.nrows} cols={obj.ncols}"
        else:
            head = f"1 {obj.field} {obj.nrows} {obj.ncols}"
        return "\n".join([head] + ["".join(map(str, r)) for r in obj.rows]) + "\n"
    if obj.named:
        head = f"permutation degree={obj.nrows} count={obj.ncols}"
    else:
        head = f"12 1 {obj.nrows} {obj.ncols}"
    lines = [head]
    for p in obj.perms:
        lines.extend(str(i + 1) for i in p.images)
    return "\n".join(lines) + "\n"


def read_matrix(path: str | os.PathLike) -> DenseMatrix:
    return parse_meataxe(Path(path).read_text()).matrix()


# ---------------------------------------------------------------------------
# manifest and fetching

@dataclass(frozen=True)
class ManifestEntry:
    label: str
    group: str
    representation: str
    files: tuple[tuple[str, str], ...]
    url_template: str
    note: str = ""

    @property
    def file_names(self) -> list[str]:
        return [name for name, _ in self.files]


@dataclass(frozen=True)
class DataManifest:
    entries: tuple[ManifestEntry, ...]
    base_url: str = ""

    def __getitem__(self, label: str) -> ManifestEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise ManifestError(f"no manifest entry {label!r}")

    def labels(self) -> list[str]:
        return [e.label for e in self.entries]


def load_manifest(path: str | os.PathLike | None = None) -> DataManifest:
    path = Path(path) if path else DATA_DIR / "manifest.json"
    doc = json.loads(Path(path).read_text())
    entries = []
    for raw in doc["entries"]:
        files = tuple((f["name"], f["sha256"]) for f in raw["files"])
        if not files or any(not d for _, d in files):
            raise ManifestError(f"entry {raw.get('label')!r} lacks digests")
        entries.append(ManifestEntry(raw["label"], raw["group"], raw["representation"],
                                     files, raw["url_template"], raw.get("note", "")))
    labels = [e.label for e in entries]
    if len(set(labels)) != len(labels):
        raise ManifestError("duplicate manifest labels")
    return DataManifest(tuple(entries), doc.get("base_url", ""))


def default_cache_dir() -> Path:
    """``$AMALGAMKIT_CACHE`` if set, else ``~/.cache/amalgamkit``."""
    env = os.environ.get("AMALGAMKIT_CACHE")
    return Path(env) if env else Path.home() / ".cache" / "amalgamkit"


def sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _download(url: str, timeout: float = 30.0) -> bytes:
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        return resp.read()


@dataclass
class Fetcher:
    """Cache-first retrieval of manifest files with digest verification."""

    cache_dir: Path
    base_url: str = ""
    vendored_dir: Path | None = DATA_DIR
    transport: Callable[[str], bytes] = _download
    retries: int = 3
    backoff: float = 0.5
    downloads: list[str] = field(default_factory=list)

    def fetch(self, entry: ManifestEntry, offline: bool = False) -> list[Path]:
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        return [self._fetch_one(entry, name, digest, offline) for name, digest in entry.files]

    def _fetch_one(self, entry: ManifestEntry, name: str, digest: str, offline: bool) -> Path:
        target = self.cache_dir / name
        with FileLock(str(target) + ".lock"):
            if target.exists():
                if sha256_file(target) != digest:
                    self._quarantine(target)
                    raise DigestMismatch(f"cached {name} does not match its manifest digest")
                return target
            if self.vendored_dir is not None:
                vendored = self.vendored_dir / name
                if vendored.exists() and sha256_file(vendored) == digest:
                    return vendored
            if offline:
                raise OfflineCacheMiss(f"{name} is neither cached nor vendored")
            url = entry.url_template.format(base=self.base_url, name=name)
            payload = self._download_with_retries(url)
            tmp = target.with_suffix(target.suffix + ".part")
            tmp.write_bytes(payload)
            if hashlib.sha256(payload).hexdigest() != digest:
                self._quarantine(tmp)
                raise DigestMismatch(f"downloaded {name} does not match its manifest digest")
            tmp.replace(target)
            return target

    def _download_with_retries(self, url: str) -> bytes:
        last = None
        for attempt in range(1, self.retries + 1):
            try:
                data = self.transport(url)
                self.downloads.append(url)
                return data
            except Exception as exc:  # any transport failure is retried
                last = exc
                if attempt < self.retries:
                    time.sleep(self.backoff * attempt)
        raise TransportError(f"could not download {url}: {last}", attempts=self.retries)

    @staticmethod
    def _quarantine(path: Path) -> None:
        dest = path.with_name(path.name + ".quarantine")
        shutil.move(str(path), str(dest))


def fetch_generators(entry: ManifestEntry, cache_dir: str | os.PathLike, offline: bool = False,
                     **kwargs) -> list[Path]:
    return Fetcher(Path(cache_dir), **kwargs).fetch(entry, offline=offline)
