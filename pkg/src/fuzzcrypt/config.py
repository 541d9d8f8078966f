"""JSON pipeline configuration with field-precise validation."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .cipher import DEFAULT_SYMBOLS, Alphabet
from .errors import ConfigError, InvalidParameterError
from .fuzzy import GAUSSIAN, RATIONAL, CategorySet, FuzzyCategory, MembershipKind
from .ingest import CODE_POINT, ENCODINGS

SELECT_ALL = "all"
SELECT_TOP_K = "top_k"
SELECT_THRESHOLD = "threshold"

_TOP_LEVEL = ("categories", "kind", "p", "encoding", "alphabet", "key", "selection")
_CATEGORY_FIELDS = ("name", "mu", "sigma", "weight")

# Illustrative categories over code points: centers at the midpoints of the
# ASCII lowercase, uppercase and digit ranges, spreads at a quarter width.
DEFAULT_CATEGORIES = (
    {"name": "lowercase", "mu": 109.5, "sigma": 7.5},
    {"name": "uppercase", "mu": 77.5, "sigma": 7.5},
    {"name": "digits", "mu": 52.5, "sigma": 2.6},
)


@dataclass(frozen=True)
class SelectionSpec:
    mode: str = SELECT_ALL
    k: int | None = None
    tau: float | None = None


@dataclass(frozen=True)
class PipelineConfig:
    categories: CategorySet
    encoding: str = CODE_POINT
    alphabet: Alphabet = Alphabet()
    key: str | None = None
    selection: SelectionSpec = SelectionSpec()

    @property
    def kind(self) -> str:
        return self.categories.kind.variant

    @property
    def p(self) -> float:
        return self.categories.kind.p

    def key_bytes(self) -> bytes:
        if not self.key:
            raise ConfigError("key", "a non-empty key is required for encryption")
        return self.key.encode("utf-8")


def _number(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(field, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(field, "must be finite")
    return value


def _unknown(obj, allowed, where):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ConfigError(where, f"unknown fields {extra}")


def _categories(raw, kind):
    if not isinstance(raw, list) or not raw:
        raise ConfigError("categories", "expected a non-empty list")
    have_weights = ["weight" in c for c in raw if isinstance(c, dict)]
    if any(have_weights) and not all(have_weights):
        raise ConfigError("categories[].weight", "give a weight for every category or for none")
    uniform = 1.0 / len(raw)
    names = set()
    cats = []
    for j, c in enumerate(raw):
        where = f"categories[{j}]"
        if not isinstance(c, dict):
            raise ConfigError(where, "expected an object")
        _unknown(c, _CATEGORY_FIELDS, where)
        name = c.get("name")
        if not isinstance(name, str) or not name:
            raise ConfigError(f"{where}.name", "expected a non-empty string")
        if name in names:
            raise ConfigError(f"{where}.name", f"duplicate category name {name!r}")
        names.add(name)
        for req in ("mu", "sigma"):
            if req not in c:
                raise ConfigError(f"{where}.{req}", "missing")
        mu = _number(c["mu"], f"{where}.mu")
        sigma = _number(c["sigma"], f"{where}.sigma")
        if sigma <= 0:
            raise ConfigError(f"{where}.sigma", f"must be > 0, got {sigma!r}")
        weight = _number(c["weight"], f"{where}.weight") if "weight" in c else uniform
        if weight < 0:
            raise ConfigError(f"{where}.weight", f"must be >= 0, got {weight!r}")
        cats.append(FuzzyCategory(name, mu, sigma, weight))
    return CategorySet(tuple(cats), kind)


def _selection(raw):
    if raw == SELECT_ALL or raw is None:
        return SelectionSpec()
    if not isinstance(raw, dict):
        raise ConfigError("selection", f"expected 'all' or an object, got {raw!r}")
    mode = raw.get("mode")
    if mode == SELECT_ALL:
        _unknown(raw, ("mode",), "selection")
        return SelectionSpec()
    if mode == SELECT_TOP_K:
        _unknown(raw, ("mode", "k"), "selection")
        k = raw.get("k")
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise ConfigError("selection.k", f"must be a positive integer, got {k!r}")
        return SelectionSpec(SELECT_TOP_K, k=k)
    if mode == SELECT_THRESHOLD:
        _unknown(raw, ("mode", "tau"), "selection")
        if "tau" not in raw:
            raise ConfigError("selection.tau", "missing")
        return SelectionSpec(SELECT_THRESHOLD, tau=_number(raw["tau"], "selection.tau"))
    raise ConfigError("selection.mode", f"expected all, top_k or threshold, got {mode!r}")


def load_config(obj: dict) -> PipelineConfig:
    """Validate an already-parsed config mapping."""
    if not isinstance(obj, dict):
        raise ConfigError("config", "top level must be an object")
    _unknown(obj, _TOP_LEVEL, "config")

    variant = obj.get("kind", RATIONAL)
    if variant not in (GAUSSIAN, RATIONAL):
        raise ConfigError("kind", f"expected gaussian or rational, got {variant!r}")
    p = _number(obj.get("p", 2.0), "p")
    if p <= 0:
        raise ConfigError("p", f"must be > 0, got {p!r}")

    if "categories" not in obj:
        raise ConfigError("categories", "missing")
    categories = _categories(obj["categories"], MembershipKind(variant, p))

    encoding = obj.get("encoding", CODE_POINT)
    if encoding not in ENCODINGS:
        raise ConfigError("encoding", f"expected one of {list(ENCODINGS)}, got {encoding!r}")

    symbols = obj.get("alphabet", DEFAULT_SYMBOLS)
    if not isinstance(symbols, str):
        raise ConfigError("alphabet", "expected a string")
    try:
        alphabet = Alphabet(symbols)
    except InvalidParameterError as exc:
        raise ConfigError("alphabet", str(exc)) from None

    key = obj.get("key")
    if key is not None and (not isinstance(key, str) or not key):
        raise ConfigError("key", "expected a non-empty string")

    return PipelineConfig(categories, encoding, alphabet, key, _selection(obj.get("selection")))


def parse_config(path) -> PipelineConfig:
    raw = Path(path).read_bytes()
    try:
        obj = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError("config", f"invalid JSON: {exc}") from None
    return load_config(obj)
