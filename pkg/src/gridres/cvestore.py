"""CVE record store with optional NVD-backed resolution.

Resolution order: user-imported records, then the bundled seed, then the
on-disk cache, then (when a client is configured) the remote registry.
Remote fetches land in the cache but never shadow user imports. The cache
is a single JSON file keyed by CVE id with fetch timestamps and no expiry.
"""

from __future__ import annotations

import json
import re
import threading
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cvss import CvssVector, base_score, parse_vector
from .errors import (
    CveNotFoundError,
    MalformedCveIdError,
    MissingVectorDataError,
    RecordValidationError,
    RemoteError,
)

CVE_ID_RE = re.compile(r"^CVE-\d{4}-\d{4,}$")

NVD_API_URL = "https://services.nvd.nist.gov/rest/json/cves/2.0"


def normalize_cve_id(cve_id: str) -> str:
    """Uppercase and validate against the CVE-YYYY-NNNN grammar."""
    if not isinstance(cve_id, str):
        raise MalformedCveIdError(f"CVE id must be a string, got {type(cve_id).__name__}")
    cleaned = cve_id.strip().upper()
    if not CVE_ID_RE.match(cleaned):
        raise MalformedCveIdError(f"malformed CVE id {cve_id!r}")
    return cleaned


@dataclass(frozen=True)
class CveRecord:
    """One vulnerability record.

    Carries the raw vector when known and the base score published by the
    source; at least one of the two must be present.
    """

    cve_id: str
    vector: CvssVector | None
    published_base: float | None
    description: str = ""
    source: str = "user"

    def recomputed_base(self) -> float | None:
        if self.vector is None:
            return None
        return base_score(self.vector).base


def _record_from_dict(data: dict, source: str, where: str) -> CveRecord:
    if not isinstance(data, dict):
        raise RecordValidationError(f"{where}: record must be an object")
    if "cve_id" not in data:
        raise RecordValidationError(f"{where}: missing field 'cve_id'")
    try:
        cve_id = normalize_cve_id(data["cve_id"])
    except MalformedCveIdError as exc:
        raise RecordValidationError(f"{where}: {exc}") from exc
    vector = None
    if data.get("vector") is not None:
        vector = parse_vector(data["vector"])
    published = data.get("published_base")
    if published is not None:
        if isinstance(published, bool) or not isinstance(published, (int, float)):
            raise RecordValidationError(f"{where}: published_base must be a number")
        published = float(published)
        if not 0.0 <= published <= 10.0:
            raise RecordValidationError(f"{where}: published_base outside [0, 10]")
    if vector is None and published is None:
        raise RecordValidationError(
            f"{where}: record needs a vector or a published_base"
        )
    description = data.get("description", "")
    if not isinstance(description, str):
        raise RecordValidationError(f"{where}: description must be a string")
    return CveRecord(
        cve_id=cve_id,
        vector=vector,
        published_base=published,
        description=description,
        source=source,
    )


def _record_to_dict(record: CveRecord) -> dict:
    return {
        "cve_id": record.cve_id,
        "vector": None if record.vector is None else record.vector.canonical(),
        "published_base": record.published_base,
        "description": record.description,
    }


def load_seed_records() -> tuple[CveRecord, ...]:
    """Bundled records shipped with the package."""
    text = (resources.files("gridres") / "data" / "cve_seed.json").read_text("utf-8")
    data = json.loads(text)
    return tuple(
        _record_from_dict(item, "bundled", f"cve_seed.json: record {i}")
        for i, item in enumerate(data)
    )


def default_http_get(url: str, headers: dict, timeout: float):
    """requests-backed transport; returns (status, headers, body)."""
    import requests

    try:
        response = requests.get(url, headers=headers, timeout=timeout)
    except requests.RequestException as exc:
        raise RemoteError(f"NVD request failed: {exc}", retriable=True) from exc
    return response.status_code, dict(response.headers), response.text


class NvdClient:
    """Minimal client for the NVD CVE API 2.0.

    Enforces a global minimum interval between requests across instances
    and honors Retry-After on rate-limit responses, retrying a bounded
    number of times before surfacing a retriable RemoteError.
    """

    _gate = threading.Lock()
    _last_request = 0.0

    def __init__(
        self,
        api_key: str | None = None,
        http_get=default_http_get,
        min_interval: float = 0.7,
        max_retries: int = 1,
        timeout: float = 15.0,
    ):
        self.api_key = api_key
        self.http_get = http_get
        self.min_interval = min_interval
        self.max_retries = max_retries
        self.timeout = timeout

    def _throttle(self):
        with NvdClient._gate:
            wait = NvdClient._last_request + self.min_interval - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            NvdClient._last_request = time.monotonic()

    def fetch(self, cve_id: str) -> CveRecord:
        cve_id = normalize_cve_id(cve_id)
        url = f"{NVD_API_URL}?cveId={cve_id}"
        headers = {}
        if self.api_key:
            headers["apiKey"] = self.api_key
        attempts = 0
        while True:
            self._throttle()
            status, resp_headers, body = self.http_get(url, headers, self.timeout)
            if status in (403, 429):
                retry_after = _parse_retry_after(resp_headers)
                if attempts < self.max_retries:
                    attempts += 1
                    time.sleep(min(retry_after, 30.0))
                    continue
                raise RemoteError(
                    f"NVD rate limited ({status}); retry after {retry_after:.0f}s",
                    retriable=True,
                    retry_after=retry_after,
                )
            break
        if status == 404:
            raise CveNotFoundError(f"{cve_id} not found in NVD")
        if status != 200:
            raise RemoteError(f"NVD returned HTTP {status}")
        return _parse_nvd_payload(cve_id, body)


def _parse_retry_after(headers: dict) -> float:
    for key, value in headers.items():
        if key.lower() == "retry-after":
            try:
                return max(0.0, float(value))
            except (TypeError, ValueError):
                break
    return 6.0


def _parse_nvd_payload(cve_id: str, body: str) -> CveRecord:
    try:
        payload = json.loads(body)
    except json.JSONDecodeError as exc:
        raise RemoteError(f"NVD returned invalid JSON: {exc}") from exc
    vulns = payload.get("vulnerabilities") or []
    if not vulns:
        raise CveNotFoundError(f"{cve_id} not found in NVD")
    cve = vulns[0].get("cve") or {}
    metrics = (cve.get("metrics") or {}).get("cvssMetricV31") or []
    if not metrics:
        raise MissingVectorDataError(f"{cve_id} has no CVSS v3.1 metric data")
    cvss_data = metrics[0].get("cvssData") or {}
    vector_text = cvss_data.get("vectorString")
    if not vector_text:
        raise MissingVectorDataError(f"{cve_id} metric entry lacks a vector string")
    published = cvss_data.get("baseScore")
    description = ""
    for item in cve.get("descriptions") or []:
        if item.get("lang") == "en":
            description = item.get("value", "")
            break
    return CveRecord(
        cve_id=cve_id,
        vector=parse_vector(vector_text),
        published_base=None if published is None else float(published),
        description=description,
        source="remote",
    )


class CveStore:
    """Layered CVE lookup: user imports, bundled seed, cache, remote."""

    def __init__(self, cache_path=None, client: NvdClient | None = None,
                 include_bundled: bool = True):
        self.cache_path = None if cache_path is None else Path(cache_path)
        self.client = client
        self._user: dict[str, CveRecord] = {}
        self._bundled: dict[str, CveRecord] = {}
        if include_bundled:
            for record in load_seed_records():
                self._bundled[record.cve_id] = record
        self._cache = self._load_cache()
        self._cache_lock = threading.Lock()

    def _load_cache(self) -> dict[str, CveRecord]:
        if self.cache_path is None or not self.cache_path.exists():
            return {}
        try:
            data = json.loads(self.cache_path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise RecordValidationError(f"cache {self.cache_path}: {exc}") from exc
        out = {}
        for cve_id, item in data.items():
            record = _record_from_dict(item, "cache", f"cache entry {cve_id}")
            out[record.cve_id] = record
        return out

    def _write_cache(self, record: CveRecord):
        if self.cache_path is None:
            return
        with self._cache_lock:
            existing = {}
            if self.cache_path.exists():
                try:
                    existing = json.loads(self.cache_path.read_text("utf-8"))
                except (OSError, json.JSONDecodeError):
                    existing = {}
            entry = _record_to_dict(record)
            entry["fetched_at"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
            existing[record.cve_id] = entry
            self.cache_path.parent.mkdir(parents=True, exist_ok=True)
            self.cache_path.write_text(
                json.dumps(existing, indent=2, sort_keys=True) + "\n", "utf-8"
            )

    def import_records(self, path) -> int:
        """Merge a user-supplied JSON array of records; returns the count.

        User records take precedence over every other source and are never
        overwritten by remote fetches.
        """
        path = Path(path)
        try:
            data = json.loads(path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise RecordValidationError(f"{path}: {exc}") from exc
        if not isinstance(data, list):
            raise RecordValidationError(f"{path}: top level must be an array")
        records = [
            _record_from_dict(item, "user", f"{path}: record {i}")
            for i, item in enumerate(data)
        ]
        for record in records:
            self._user[record.cve_id] = record
        return len(records)

    def add_record(self, record: CveRecord):
        self._user[record.cve_id] = record

    def bundled_records(self) -> tuple[CveRecord, ...]:
        return tuple(self._bundled[k] for k in sorted(self._bundled))

    def lookup(self, cve_id: str) -> CveRecord:
        """Resolve an id through the layered sources; raises CveNotFoundError
        when every enabled source misses."""
        cve_id = normalize_cve_id(cve_id)
        for layer in (self._user, self._bundled, self._cache):
            if cve_id in layer:
                return layer[cve_id]
        if self.client is not None:
            record = self.client.fetch(cve_id)
            self._cache[cve_id] = record
            self._write_cache(record)
            return record
        raise CveNotFoundError(f"no record for {cve_id} (remote access disabled)")
