"""Cross-checks against the On-Line Encyclopedia of Integer Sequences.

Term lists are looked up in a local cache directory first, then in the
fixtures bundled with the package, and only then (when allowed) fetched
from oeis.org.  ``BRICK_OEIS_CACHE`` overrides the cache directory and
``BRICK_OFFLINE=1`` forbids network access.
"""
from __future__ import annotations

import json
import os
import re
import threading
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Callable, NamedTuple, Optional, Sequence

import platformdirs
from filelock import FileLock

OEIS_URL = "https://oeis.org/search?q=id:{id}&fmt=json"
_ID_RE = re.compile(r"^A\d{6}$")
_MIN_INTERVAL = 1.0


class OeisError(RuntimeError):
    pass


class OeisNotFound(OeisError):
    pass


class OeisParseError(OeisError):
    pass


class OeisNetworkError(OeisError):
    pass


class OeisOffline(OeisError):
    pass


class Source(str, Enum):
    LIVE = "live"
    CACHE = "cache"
    FIXTURE = "fixture"


@dataclass(frozen=True)
class OeisSequence:
    id: str
    terms: tuple[int, ...]
    fetched_at: Optional[str]
    source: Source

    def __post_init__(self):
        check_id(self.id)
        if not self.terms:
            raise ValueError(f"{self.id}: empty term list")
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))

    def to_json(self) -> dict:
        return {"id": self.id, "terms": [str(t) for t in self.terms], "fetched_at": self.fetched_at}


def check_id(seq_id: str) -> str:
    if not _ID_RE.match(seq_id):
        raise ValueError(f"malformed OEIS id {seq_id!r}; expected 'A' followed by six digits")
    return seq_id


def cache_dir() -> Path:
    env = os.environ.get("BRICK_OEIS_CACHE")
    return Path(env) if env else Path(platformdirs.user_cache_dir("brickwall")) / "oeis"


def offline() -> bool:
    return os.environ.get("BRICK_OFFLINE", "").strip().lower() in ("1", "true", "yes")


def _read(path: Path, source: Source) -> OeisSequence:
    data = json.loads(path.read_text())
    return OeisSequence(data["id"], tuple(int(t) for t in data["terms"]), data.get("fetched_at"), source)


def load_cached(seq_id: str, directory: Optional[Path] = None) -> Optional[OeisSequence]:
    path = Path(directory or cache_dir()) / f"{check_id(seq_id)}.json"
    if not path.exists():
        return None
    with FileLock(str(path) + ".lock"):
        return _read(path, Source.CACHE)


def write_cache(seq: OeisSequence, directory: Optional[Path] = None) -> Path:
    directory = Path(directory or cache_dir())
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{seq.id}.json"
    with FileLock(str(path) + ".lock"):
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(seq.to_json(), indent=1))
        tmp.replace(path)
    return path


def load_fixture(seq_id: str) -> Optional[OeisSequence]:
    res = resources.files("brickwall") / "data" / "oeis" / f"{check_id(seq_id)}.json"
    if not res.is_file():
        return None
    data = json.loads(res.read_text())
    return OeisSequence(data["id"], tuple(int(t) for t in data["terms"]), data.get("fetched_at"), Source.FIXTURE)


_throttle_lock = threading.Lock()
_last_request = 0.0


def _http_get(url: str, timeout: float = 20.0) -> bytes:
    req = urllib.request.Request(url, headers={"User-Agent": "brickwall-oeis-check"})
    with urllib.request.urlopen(req, timeout=timeout) as resp:
        return resp.read()


def parse_response(seq_id: str, payload: bytes) -> tuple[int, ...]:
    try:
        doc = json.loads(payload)
    except ValueError as exc:
        raise OeisParseError(f"{seq_id}: response is not JSON") from exc
    # Older API wraps hits in {"results": [...]}; newer returns the list itself.
    results = doc.get("results") if isinstance(doc, dict) else doc
    if not results:
        raise OeisNotFound(f"{seq_id}: no such sequence")
    number = int(seq_id[1:])
    for entry in results:
        if not isinstance(entry, dict):
            raise OeisParseError(f"{seq_id}: unexpected result entry")
        if entry.get("number") == number:
            data = entry.get("data")
            if not isinstance(data, str):
                raise OeisParseError(f"{seq_id}: missing data field")
            try:
                return tuple(int(t) for t in data.split(",") if t.strip())
            except ValueError as exc:
                raise OeisParseError(f"{seq_id}: non-integer term in data field") from exc
    raise OeisNotFound(f"{seq_id}: no such sequence")


def fetch_sequence(
    seq_id: str,
    directory: Optional[Path] = None,
    http_get: Callable[[str], bytes] = _http_get,
) -> OeisSequence:
    """Fetch a term list from oeis.org and write it through to the cache."""
    global _last_request
    check_id(seq_id)
    if offline():
        raise OeisOffline(f"{seq_id}: network disabled by BRICK_OFFLINE; use the cache or bundled fixtures")
    with _throttle_lock:
        wait = _MIN_INTERVAL - (time.monotonic() - _last_request)
        if wait > 0:
            time.sleep(wait)
        try:
            payload = http_get(OEIS_URL.format(id=seq_id))
        except (urllib.error.URLError, OSError) as exc:
            raise OeisNetworkError(
                f"{seq_id}: fetch failed ({exc}); cached copies in {directory or cache_dir()} "
                f"or bundled fixtures can be used offline"
            ) from exc
        finally:
            _last_request = time.monotonic()
    terms = parse_response(seq_id, payload)
    seq = OeisSequence(seq_id, terms, datetime.now(timezone.utc).isoformat(timespec="seconds"), Source.LIVE)
    write_cache(seq, directory)
    return seq


def get_sequence(seq_id: str, allow_network: bool = False, directory: Optional[Path] = None) -> OeisSequence:
    """Cache, then bundled fixture, then (if allowed and not offline) a live fetch."""
    seq = load_cached(seq_id, directory) or load_fixture(seq_id)
    if seq is not None:
        return seq
    if allow_network and not offline():
        return fetch_sequence(seq_id, directory)
    raise OeisOffline(f"{seq_id}: not cached and network access not permitted")


class PrefixMatch(NamedTuple):
    matched: bool
    offset: Optional[int]


def compare_prefix(computed: Sequence[int], seq: OeisSequence) -> PrefixMatch:
    """Smallest index at which ``computed`` occurs as a contiguous run of ``seq.terms``."""
    if not computed:
        raise ValueError("computed sequence is empty")
    needle = tuple(int(x) for x in computed)
    hay = seq.terms
    n = len(needle)
    for i in range(len(hay) - n + 1):
        if hay[i:i + n] == needle:
            return PrefixMatch(True, i)
    return PrefixMatch(False, None)
