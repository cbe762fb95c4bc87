"""On-disk cache of the Schubert and xi restriction tables for one root system."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .kring import FlagK, KClass
from .laurent import LaurentPoly
from .weyl import WeylGroup

SCHEMA_VERSION = 1
CACHE_ENV = "KTSCHUBERT_CACHE_DIR"
CACHED_BASES = ("O_lower", "xi_lower")


def default_cache_dir() -> Path | None:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def words_hash(W: WeylGroup) -> str:
    words = ";".join(".".join(str(i + 1) for i in w.word) for w in W)
    return hashlib.sha256(words.encode()).hexdigest()[:16]


def cache_path(cache_dir: Path, W: WeylGroup) -> Path:
    return Path(cache_dir) / f"{W.root_system.name}.v{SCHEMA_VERSION}.{words_hash(W)}.json"


def header(W: WeylGroup) -> dict:
    rs = W.root_system
    return {
        "schema": SCHEMA_VERSION,
        "type": rs.cartan_type,
        "rank": rs.rank,
        "order": len(W),
        "words_hash": words_hash(W),
    }


def dumps_tables(K: FlagK) -> str:
    """Canonical JSON; byte-identical for identical (type, rank, schema)."""
    body = {"header": header(K.W)}
    for tag in CACHED_BASES:
        table = {}
        for w in K.W:
            cls = K.basis_class(tag, w)
            table[w.label] = {K.W[k].label: cls.values[k].to_json() for k in cls.support()}
        body[tag] = table
    return json.dumps(body, sort_keys=True, separators=(",", ":")) + "\n"


def loads_tables(text: str, W: WeylGroup) -> dict[str, list[KClass]]:
    data = json.loads(text)
    if data.get("header") != header(W):
        raise ValueError("cache header does not match this group")
    n = W.rank
    by_label = {w.label: w.index for w in W}
    tables = {}
    for tag in CACHED_BASES:
        classes = []
        for w in W:
            values = [LaurentPoly.zero(n)] * len(W)
            for label, terms in data[tag][w.label].items():
                values[by_label[label]] = LaurentPoly.from_json(terms, n)
            classes.append(KClass(tuple(values)))
        tables[tag] = classes
    return tables


def load_engine(W: WeylGroup, cache_dir: Path | str | None = None) -> FlagK:
    """FlagK for ``W``, reading the tables from ``cache_dir`` or writing them there."""
    if cache_dir is None:
        cache_dir = default_cache_dir()
    if cache_dir is None:
        return FlagK(W)
    path = cache_path(Path(cache_dir), W)
    if path.exists():
        try:
            return FlagK(W, tables=loads_tables(path.read_text(), W))
        except (ValueError, KeyError):
            pass  # stale or corrupt: rebuild below
    K = FlagK(W)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text(dumps_tables(K))
    os.replace(tmp, path)
    return K
