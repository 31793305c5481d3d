"""Persistent result cache with content digests and atomic writes.

Entries are JSON files keyed by kind (LEVEL, BASIS, STANDARD, REPORT)
and degree.  A sha256 digest over the canonical payload is verified on
read; a mismatch invalidates the entry and the caller recomputes.
Writes go to a temporary file renamed into place under an advisory
lock, so a crashed writer never leaves a torn entry.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import asdict
from pathlib import Path

from .cycles import (
    ConditionOutcome,
    ConditionReport,
    QuasiWitness,
    StandardProvenance,
    StandardSet,
)
from .hilbert import HilbertBasis
from .monoid import MonoidVector, format_vector, parse_vector, sort_key

SCHEMA_VERSION = 1
ENV_CACHE_DIR = "FERMAT_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_DATA_HOME")
    base = Path(xdg) if xdg else Path.home() / ".local" / "share"
    return base / "fermat-hodge"


def _digest(payload) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class ResultCache:
    """File-backed store; one JSON entry per computed value."""

    def __init__(self, root: Path | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def _path(self, kind: str, name: str) -> Path:
        return self.root / f"v{SCHEMA_VERSION}" / kind.lower() / f"{name}.json"

    def _read(self, kind: str, name: str):
        path = self._path(kind, name)
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        if entry.get("schema_version") != SCHEMA_VERSION:
            return None
        if entry.get("kind") != kind:
            return None
        payload = entry.get("payload")
        if payload is None or entry.get("content_digest") != _digest(payload):
            return None
        return payload

    def _write(self, kind: str, name: str, m: int, payload, level=None) -> None:
        path = self._path(kind, name)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {
            "schema_version": SCHEMA_VERSION,
            "kind": kind,
            "m": m,
            "level": level,
            "payload": payload,
            "content_digest": _digest(payload),
        }
        lock_path = self.root / ".lock"
        lock_path.parent.mkdir(parents=True, exist_ok=True)
        with open(lock_path, "w") as lock:
            try:
                import fcntl

                fcntl.flock(lock, fcntl.LOCK_EX)
            except ImportError:  # non-posix; single writer assumed
                pass
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as handle:
                    json.dump(entry, handle, sort_keys=True, indent=1)
                    handle.write("\n")
                os.replace(tmp, path)
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)

    # -- LEVEL ---------------------------------------------------------------

    def get_level(self, m: int, y: int) -> list[MonoidVector] | None:
        payload = self._read("LEVEL", f"m{m}_y{y}")
        if payload is None or payload.get("m") != m or payload.get("y") != y:
            return None
        return [parse_vector(s) for s in payload["vectors"]]

    def put_level(self, m: int, y: int, vectors: list[MonoidVector]) -> None:
        payload = {"m": m, "y": y, "vectors": [format_vector(v) for v in vectors]}
        self._write("LEVEL", f"m{m}_y{y}", m, payload, level=y)

    # -- BASIS (complete results only) ----------------------------------------

    def get_basis(self, m: int) -> HilbertBasis | None:
        payload = self._read("BASIS", f"m{m}")
        if payload is None or payload.get("m") != m or not payload.get("complete"):
            return None
        elements = tuple(
            sorted((parse_vector(s) for s in payload["elements"]), key=sort_key)
        )
        return HilbertBasis(
            m=m,
            elements=elements,
            complete=True,
            max_level_seen=int(payload["max_level_seen"]),
            algorithm=str(payload.get("algorithm", "completion")),
        )

    def put_basis(self, basis: HilbertBasis) -> None:
        if not basis.complete:
            return
        payload = {
            "m": basis.m,
            "complete": True,
            "max_level_seen": basis.max_level_seen,
            "algorithm": basis.algorithm,
            "elements": [format_vector(v) for v in basis.elements],
        }
        self._write("BASIS", f"m{basis.m}", basis.m, payload)

    # -- STANDARD --------------------------------------------------------------

    def get_standard(self, m: int) -> StandardSet | None:
        payload = self._read("STANDARD", f"m{m}")
        if payload is None or payload.get("m") != m:
            return None
        vectors = []
        provenance = {}
        for item in payload["vectors"]:
            v = parse_vector(item["vector"])
            vectors.append(v)
            provenance[v] = StandardProvenance(
                p=int(item["p"]), i=int(item["i"]), doubled=bool(item["doubled"])
            )
        return StandardSet(m=m, vectors=tuple(vectors), provenance=provenance)

    def put_standard(self, std: StandardSet) -> None:
        payload = {
            "m": std.m,
            "vectors": [
                {
                    "vector": format_vector(v),
                    "p": std.provenance[v].p,
                    "i": std.provenance[v].i,
                    "doubled": std.provenance[v].doubled,
                }
                for v in std.vectors
            ],
        }
        self._write("STANDARD", f"m{std.m}", std.m, payload)

    # -- REPORT ------------------------------------------------------------------

    @staticmethod
    def _report_name(m: int, n: int | None, exclude_standard: bool) -> str:
        n_part = "all" if n is None else str(n)
        return f"m{m}_n{n_part}_excl{int(exclude_standard)}"

    def get_report(
        self, m: int, n: int | None, exclude_standard: bool
    ) -> ConditionReport | None:
        payload = self._read("REPORT", self._report_name(m, n, exclude_standard))
        if payload is None or payload.get("m") != m:
            return None
        outcomes = []
        for item in payload["outcomes"]:
            witness = None
            if item.get("witness"):
                w = item["witness"]
                witness = QuasiWitness(
                    b=parse_vector(w["b"]),
                    c=parse_vector(w["c"]),
                    d=parse_vector(w["d"]),
                )
            provenance = None
            if item.get("provenance"):
                p = item["provenance"]
                provenance = StandardProvenance(
                    p=int(p["p"]), i=int(p["i"]), doubled=bool(p["doubled"])
                )
            outcomes.append(
                ConditionOutcome(
                    element=parse_vector(item["element"]),
                    kind=item["kind"],
                    witness=witness,
                    provenance=provenance,
                )
            )
        return ConditionReport(
            m=m,
            n=payload["n"],
            exclude_standard=bool(payload["exclude_standard"]),
            outcomes=tuple(outcomes),
            verdict=bool(payload["verdict"]),
            complete=bool(payload["complete"]),
            standard_count=int(payload["standard_count"]),
        )

    def put_report(self, report: ConditionReport) -> None:
        if not report.complete:
            return
        outcomes = []
        for o in report.outcomes:
            item = {"element": format_vector(o.element), "kind": o.kind}
            if o.witness is not None:
                item["witness"] = {
                    "b": format_vector(o.witness.b),
                    "c": format_vector(o.witness.c),
                    "d": format_vector(o.witness.d),
                }
            if o.provenance is not None:
                item["provenance"] = asdict(o.provenance)
            outcomes.append(item)
        payload = {
            "m": report.m,
            "n": report.n,
            "exclude_standard": report.exclude_standard,
            "outcomes": outcomes,
            "verdict": report.verdict,
            "complete": report.complete,
            "standard_count": report.standard_count,
        }
        self._write(
            "REPORT",
            self._report_name(report.m, report.n, report.exclude_standard),
            report.m,
            payload,
        )
