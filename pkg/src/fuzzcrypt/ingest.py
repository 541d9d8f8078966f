"""Loading content, stripping HTML, and turning characters into crisp values."""

from __future__ import annotations

import re
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path

import numpy as np

from .errors import ContentEncodingError, InvalidParameterError

CODE_POINT = "code_point"
NORMALIZED_CODE_POINT = "normalized_code_point"
ENCODINGS = (CODE_POINT, NORMALIZED_CODE_POINT)
MAX_CODE_POINT = 0x10FFFF


@dataclass(frozen=True)
class Document:
    source: str
    raw: bytes
    text: str


def load_text(path) -> Document:
    """Read a file as strict UTF-8; undecodable bytes are an error, never replaced."""
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ContentEncodingError(
            f"{path}: invalid UTF-8 at byte {exc.start}"
        ) from None
    return Document(str(path), raw, text)


# Elements whose boundaries separate words visually.
_BREAKING_TAGS = frozenset(
    "address article aside blockquote br dd div dl dt fieldset figcaption figure "
    "footer form h1 h2 h3 h4 h5 h6 header hr li main nav ol p pre section table "
    "tbody td tfoot th thead tr ul title option".split()
)
_DROPPED_TAGS = frozenset(("script", "style"))
_WHITESPACE = re.compile(r"\s+")


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts = []
        self._skip = None

    def handle_starttag(self, tag, attrs):
        if self._skip:
            return
        if tag in _DROPPED_TAGS:
            self._skip = tag
        elif tag in _BREAKING_TAGS:
            self.parts.append(" ")

    def handle_startendtag(self, tag, attrs):
        if not self._skip and tag in _BREAKING_TAGS:
            self.parts.append(" ")

    def handle_endtag(self, tag):
        if self._skip:
            if tag == self._skip:
                self._skip = None
            return
        if tag in _BREAKING_TAGS:
            self.parts.append(" ")

    def handle_data(self, data):
        if not self._skip:
            self.parts.append(data)


def extract_text_from_html(raw: str) -> str:
    """Visible text of an HTML fragment.

    Tags and comments are removed, script/style bodies dropped, character
    references decoded, and whitespace runs collapsed to one space. Block-level
    tags count as whitespace so adjacent paragraphs do not fuse into one word.
    Malformed markup is handled best-effort.
    """
    parser = _TextExtractor()
    parser.feed(raw)
    parser.close()
    return _WHITESPACE.sub(" ", "".join(parser.parts)).strip()


@dataclass(frozen=True)
class FeatureStream:
    """One crisp value per character of ``text``, in order."""

    text: str
    values: np.ndarray
    encoding: str = CODE_POINT

    def __len__(self):
        return len(self.text)

    @property
    def entries(self) -> list[tuple[int, str, float]]:
        return [(i, ch, float(v)) for i, (ch, v) in enumerate(zip(self.text, self.values))]


def featurize(text: str, encoding: str = CODE_POINT) -> FeatureStream:
    if encoding not in ENCODINGS:
        raise InvalidParameterError(f"unknown encoding {encoding!r}")
    values = np.frombuffer(
        text.encode("utf-32-le", "surrogatepass"), dtype="<u4"
    ).astype(np.float64)
    if encoding == NORMALIZED_CODE_POINT:
        values = values / MAX_CODE_POINT
    values.setflags(write=False)
    return FeatureStream(text, values, encoding)
