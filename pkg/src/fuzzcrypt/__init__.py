"""Fuzzy relevance scoring of text content and reversible substitution encryption."""

from .cipher import (
    Alphabet,
    EncryptedDocument,
    SubstitutionTable,
    decrypt_content,
    encrypt_content,
    encrypt_document,
    encrypt_letter,
    generate_table,
    invert_table,
    selective_decrypt,
    selective_encrypt,
)
from .config import PipelineConfig, load_config, parse_config
from .errors import (
    ConfigError,
    ContentEncodingError,
    CorruptDocumentError,
    DimensionError,
    EmptyInputError,
    FuzzCryptError,
    InvalidParameterError,
    InvalidSelectionError,
    NotALetterError,
    WrongKeyError,
)
from .features import (
    RelevanceScores,
    Selection,
    relevance_scores,
    select_by_threshold,
    select_top_k,
)
from .fuzzy import (
    CategorySet,
    FuzzyCategory,
    MembershipKind,
    MembershipMatrix,
    defuzzify,
    fuzzify,
    gaussian_membership,
    rational_membership,
)
from .ingest import Document, FeatureStream, extract_text_from_html, featurize, load_text

__version__ = "0.1.0"
