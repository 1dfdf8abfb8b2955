"""Similarity providers used for concept deduplication and clause matching.

Every provider exposes ``similarity(a, b) -> float in [0, 1]`` and
``embed(texts) -> list of vectors``. Identical texts always score exactly 1.0.
"""

from __future__ import annotations

import json
import math
import re
import threading
import zlib
from collections import Counter
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from .errors import ClientUnavailable

_CAMEL = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")


def normalize_text(text: str) -> str:
    """Lowercase words, with CamelCase and underscores split apart."""
    text = _CAMEL.sub(" ", text.replace("_", " "))
    return " ".join(re.findall(r"[a-z0-9]+", text.lower()))


def stem(word: str) -> str:
    w = word.lower().replace("'s", "")
    for suffix in ("ies", "ied", "ing", "ed", "s"):
        if w.endswith(suffix) and len(w) - len(suffix) >= 3 and not w.endswith(("ss", "us", "is")):
            w = w[: -len(suffix)] + ("y" if suffix in ("ies", "ied") else "")
            break
    # fold "provide"/"provided", "live"/"living" onto one stem
    if w.endswith("e") and len(w) > 3:
        w = w[:-1]
    return w


def tokens(text: str) -> list[str]:
    return [stem(w) for w in normalize_text(text).split()]


def cosine(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def _clip(x: float) -> float:
    return min(1.0, max(0.0, x))


class TrigramSimilarity:
    """Offline provider: cosine over character-trigram counts of normalized labels."""

    def __init__(self, dim: int = 512):
        self.dim = dim

    @staticmethod
    def trigrams(text: str) -> Counter:
        padded = f"  {normalize_text(text)} "
        return Counter(padded[i:i + 3] for i in range(len(padded) - 2))

    def similarity(self, a: str, b: str) -> float:
        if normalize_text(a) == normalize_text(b):
            return 1.0
        ca, cb = self.trigrams(a), self.trigrams(b)
        dot = sum(n * cb[g] for g, n in ca.items())
        if dot == 0:
            return 0.0
        na = math.sqrt(sum(n * n for n in ca.values()))
        nb = math.sqrt(sum(n * n for n in cb.values()))
        return _clip(dot / (na * nb))

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        out = []
        for text in texts:
            vec = np.zeros(self.dim)
            for gram, n in self.trigrams(text).items():
                vec[zlib.crc32(gram.encode("utf-8")) % self.dim] += n
            out.append(vec)
        return out


class AliasedSimilarity:
    """Wraps a provider with a curated phrase table for clause-to-concept matching.

    An alias entry fires when every keyword group has at least one member in
    the text; it then scores each of its labels at ``entry["score"]``.
    """

    def __init__(self, base, aliases: Iterable[dict], score: float = 0.9):
        self.base = base
        self.entries = []
        for entry in aliases:
            groups = [{stem(w) for w in group} for group in entry["keywords"]]
            self.entries.append((groups, tuple(entry["labels"]), float(entry.get("score", score))))

    def alias_score(self, text: str, label: str) -> float:
        words = set(tokens(text))
        best = 0.0
        for groups, labels, score in self.entries:
            if label in labels and all(words & g for g in groups):
                best = max(best, score)
        return best

    def similarity(self, a: str, b: str) -> float:
        return max(self.base.similarity(a, b), self.alias_score(a, b))

    def embed(self, texts):
        return self.base.embed(texts)


class FixedSimilarity:
    """Scripted provider returning preset scores for unordered label pairs."""

    def __init__(self, scores: dict, default: float = 0.0):
        self.scores = {frozenset(k): float(v) for k, v in scores.items()}
        self.default = default

    def similarity(self, a: str, b: str) -> float:
        if a == b:
            return 1.0
        return self.scores.get(frozenset((a, b)), self.default)

    def embed(self, texts):
        raise NotImplementedError("FixedSimilarity has no vector space")


class EmbeddingServiceSimilarity:
    """Client for an external embedding service.

    Protocol: POST ``{"texts": [...]}`` to ``base_url`` and receive
    ``{"vectors": [[...], ...]}``. Vectors are cached per text.
    """

    def __init__(self, base_url: str, token: str | None = None, timeout: float = 30.0,
                 retries: int = 2, client=None):
        import httpx

        self.base_url = base_url
        self.retries = retries
        self._headers = {"Authorization": f"Bearer {token}"} if token else {}
        self._client = client or httpx.Client(timeout=timeout)
        self._cache: dict[str, np.ndarray] = {}
        self._lock = threading.Lock()

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        import httpx

        missing = [t for t in dict.fromkeys(texts) if t not in self._cache]
        if missing:
            last = None
            for _ in range(self.retries + 1):
                try:
                    resp = self._client.post(self.base_url, json={"texts": missing},
                                             headers=self._headers)
                    resp.raise_for_status()
                    vectors = resp.json()["vectors"]
                    break
                except (httpx.HTTPError, KeyError, ValueError) as exc:
                    last = exc
            else:
                raise ClientUnavailable(f"embedding service failed: {last}")
            if len(vectors) != len(missing):
                raise ClientUnavailable("embedding service returned the wrong number of vectors")
            with self._lock:
                for text, vec in zip(missing, vectors):
                    self._cache[text] = np.asarray(vec, dtype=float)
        return [self._cache[t] for t in texts]

    def similarity(self, a: str, b: str) -> float:
        if a == b:
            return 1.0
        va, vb = self.embed([a, b])
        return _clip(cosine(va, vb))


def load_aliases() -> list[dict]:
    data = resources.files("noaverify.data").joinpath("aliases.json").read_text(encoding="utf-8")
    return json.loads(data)


def offline_matcher() -> AliasedSimilarity:
    return AliasedSimilarity(TrigramSimilarity(), load_aliases())
