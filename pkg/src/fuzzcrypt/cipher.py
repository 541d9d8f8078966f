"""Monoalphabetic substitution over a configurable alphabet.

Characters outside the alphabet always pass through untouched. Selective
encryption substitutes only chosen positions and records them in a manifest
so the document can be restored exactly.

This is a classical cipher, trivially broken by frequency analysis. It is not
a substitute for modern authenticated encryption.
"""

from __future__ import annotations

import hashlib
import json
import operator
import string
from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    CorruptDocumentError,
    InvalidParameterError,
    InvalidSelectionError,
    NotALetterError,
    WrongKeyError,
)

DEFAULT_SYMBOLS = string.ascii_lowercase + string.ascii_uppercase
ENVELOPE_VERSION = 1
FULL = "full"
SELECTIVE = "selective"

_FINGERPRINT_TAG = b"fuzzcrypt-table-v1\x00"


@dataclass(frozen=True)
class Alphabet:
    symbols: str = DEFAULT_SYMBOLS

    def __post_init__(self):
        if not isinstance(self.symbols, str) or not self.symbols:
            raise InvalidParameterError("alphabet must be a non-empty string")
        if len(set(self.symbols)) != len(self.symbols):
            seen, dups = set(), []
            for ch in self.symbols:
                if ch in seen and ch not in dups:
                    dups.append(ch)
                seen.add(ch)
            raise InvalidParameterError(f"alphabet has duplicate symbols {dups!r}")

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, ch):
        return ch in self._members

    @property
    def _members(self) -> frozenset:
        members = self.__dict__.get("_members_cache")
        if members is None:
            members = frozenset(self.symbols)
            object.__setattr__(self, "_members_cache", members)
        return members


@dataclass(frozen=True)
class SubstitutionTable:
    """Bijection T over an alphabet, stored as the image string.

    ``image[i]`` is the substitute for ``alphabet.symbols[i]``.
    """

    alphabet: Alphabet
    image: str
    _forward: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.image) != len(self.alphabet) or sorted(self.image) != sorted(
            self.alphabet.symbols
        ):
            raise InvalidParameterError(
                "substitution table must be a permutation of its alphabet"
            )
        fwd = {ord(a): ord(b) for a, b in zip(self.alphabet.symbols, self.image)}
        object.__setattr__(self, "_forward", fwd)

    @classmethod
    def identity(cls, alphabet: Alphabet | None = None) -> "SubstitutionTable":
        alphabet = alphabet or Alphabet()
        return cls(alphabet, alphabet.symbols)

    @classmethod
    def from_mapping(cls, mapping: dict, alphabet: Alphabet | None = None) -> "SubstitutionTable":
        """Build from a partial dict; unmapped symbols map to themselves."""
        alphabet = alphabet or Alphabet()
        return cls(alphabet, "".join(mapping.get(a, a) for a in alphabet.symbols))

    @property
    def mapping(self) -> dict[str, str]:
        return dict(zip(self.alphabet.symbols, self.image))

    @property
    def fingerprint(self) -> str:
        fp = self.__dict__.get("_fingerprint")
        if fp is None:
            payload = _FINGERPRINT_TAG + self.alphabet.symbols.encode("utf-8", "surrogatepass")
            payload += b"\x00" + self.image.encode("utf-8", "surrogatepass")
            fp = hashlib.sha256(payload).hexdigest()
            object.__setattr__(self, "_fingerprint", fp)
        return fp

    def __call__(self, ch: str) -> str:
        return encrypt_letter(ch, self)


def encrypt_letter(x: str, table: SubstitutionTable) -> str:
    if x not in table.alphabet:
        raise NotALetterError(f"{x!r} is not in the table's alphabet")
    return chr(table._forward[ord(x)])


def encrypt_content(content: str, table: SubstitutionTable) -> str:
    """Substitute every alphabet character; copy everything else verbatim."""
    return content.translate(table._forward)


def invert_table(table: SubstitutionTable) -> SubstitutionTable:
    inverse = table.mapping
    inverse = {b: a for a, b in inverse.items()}
    return SubstitutionTable(
        table.alphabet, "".join(inverse[a] for a in table.alphabet.symbols)
    )


def decrypt_content(ciphertext: str, table: SubstitutionTable) -> str:
    return encrypt_content(ciphertext, invert_table(table))


def _keystream(seed: bytes):
    counter = 0
    while True:
        block = hashlib.sha256(seed + counter.to_bytes(8, "big")).digest()
        for off in range(0, len(block), 8):
            yield int.from_bytes(block[off:off + 8], "big")
        counter += 1


def generate_table(key: bytes, alphabet: Alphabet | None = None) -> SubstitutionTable:
    """Derive a permutation from a key with a Fisher-Yates shuffle.

    Randomness comes from SHA-256 in counter mode over SHA-256(key), with
    rejection sampling to keep every swap index unbiased. The output is a pure
    function of (key, alphabet) and does not depend on Python's ``random``.
    """
    if isinstance(key, str):
        key = key.encode("utf-8")
    if not key:
        raise InvalidParameterError("key must be non-empty")
    alphabet = alphabet or Alphabet()
    words = _keystream(hashlib.sha256(bytes(key)).digest())
    symbols = list(alphabet.symbols)
    for i in range(len(symbols) - 1, 0, -1):
        bound = i + 1
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            w = next(words)
            if w < limit:
                break
        j = w % bound
        symbols[i], symbols[j] = symbols[j], symbols[i]
    return SubstitutionTable(alphabet, "".join(symbols))


@dataclass(frozen=True)
class EncryptedDocument:
    version: int
    mode: str
    table_fingerprint: str
    manifest: tuple[int, ...]
    ciphertext: str

    def to_json(self) -> str:
        """Compact JSON with a fixed field order, for byte-stable output."""
        return json.dumps(
            {
                "version": self.version,
                "mode": self.mode,
                "table_fingerprint": self.table_fingerprint,
                "manifest": list(self.manifest),
                "ciphertext": self.ciphertext,
            },
            ensure_ascii=False,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "EncryptedDocument":
        try:
            obj = json.loads(text)
        except (json.JSONDecodeError, TypeError) as exc:
            raise CorruptDocumentError(f"envelope is not valid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise CorruptDocumentError("envelope must be a JSON object")
        expected = ("version", "mode", "table_fingerprint", "manifest", "ciphertext")
        missing = [k for k in expected if k not in obj]
        if missing:
            raise CorruptDocumentError(f"envelope is missing fields {missing}")
        extra = sorted(set(obj) - set(expected))
        if extra:
            raise CorruptDocumentError(f"envelope has unknown fields {extra}")
        version = obj["version"]
        if type(version) is not int or version != ENVELOPE_VERSION:
            raise CorruptDocumentError(f"unsupported envelope version {version!r}")
        if obj["mode"] not in (FULL, SELECTIVE):
            raise CorruptDocumentError(f"unknown mode {obj['mode']!r}")
        fp = obj["table_fingerprint"]
        if not isinstance(fp, str) or len(fp) != 64 or fp.strip("0123456789abcdef"):
            raise CorruptDocumentError("table_fingerprint must be 64 lowercase hex digits")
        manifest = obj["manifest"]
        if not isinstance(manifest, list) or any(type(i) is not int for i in manifest):
            raise CorruptDocumentError("manifest must be a list of integers")
        if not isinstance(obj["ciphertext"], str):
            raise CorruptDocumentError("ciphertext must be a string")
        doc = cls(version, obj["mode"], fp, tuple(manifest), obj["ciphertext"])
        _check_manifest(doc)
        return doc


def _check_manifest(doc: EncryptedDocument):
    if doc.mode == FULL and doc.manifest:
        raise CorruptDocumentError("full-mode envelope must have an empty manifest")
    n = len(doc.ciphertext)
    prev = -1
    for i in doc.manifest:
        if i <= prev:
            raise CorruptDocumentError("manifest must be strictly ascending")
        if i >= n:
            raise CorruptDocumentError(f"manifest index {i} beyond ciphertext length {n}")
        prev = i


def encrypt_document(content: str, table: SubstitutionTable) -> EncryptedDocument:
    """Full-mode envelope around :func:`encrypt_content`."""
    return EncryptedDocument(
        ENVELOPE_VERSION, FULL, table.fingerprint, (), encrypt_content(content, table)
    )


def _selected_indices(selection, n: int) -> list[int]:
    raw = getattr(selection, "indices", selection)
    out = set()
    for i in raw:
        if isinstance(i, bool):
            raise InvalidSelectionError("selection indices must be integers")
        try:
            i = operator.index(i)
        except TypeError:
            raise InvalidSelectionError("selection indices must be integers") from None
        if not 0 <= i < n:
            raise InvalidSelectionError(f"selection index {i} out of range for length {n}")
        out.add(i)
    return sorted(out)


def selective_encrypt(
    content: str, table: SubstitutionTable, selection: Iterable[int]
) -> EncryptedDocument:
    """Substitute only the selected positions that hold alphabet characters.

    ``selection`` is a :class:`~fuzzcrypt.features.Selection` or any iterable
    of character indices. Selected non-alphabet characters are left alone and
    left out of the manifest.
    """
    chars = list(content)
    manifest = []
    fwd = table._forward
    for i in _selected_indices(selection, len(chars)):
        sub = fwd.get(ord(chars[i]))
        if sub is not None:
            chars[i] = chr(sub)
            manifest.append(i)
    return EncryptedDocument(
        ENVELOPE_VERSION, SELECTIVE, table.fingerprint, tuple(manifest), "".join(chars)
    )


def selective_decrypt(doc: EncryptedDocument, table: SubstitutionTable) -> str:
    """Invert either kind of envelope, refusing a table with another fingerprint."""
    if doc.table_fingerprint != table.fingerprint:
        raise WrongKeyError("substitution table does not match the document fingerprint")
    _check_manifest(doc)
    if doc.mode == FULL:
        return decrypt_content(doc.ciphertext, table)
    inv = invert_table(table)._forward
    chars = list(doc.ciphertext)
    for i in doc.manifest:
        orig = inv.get(ord(chars[i]))
        if orig is None:
            raise CorruptDocumentError(
                f"manifest index {i} holds {chars[i]!r}, which is outside the alphabet"
            )
        chars[i] = chr(orig)
    return "".join(chars)


decrypt_document = selective_decrypt
