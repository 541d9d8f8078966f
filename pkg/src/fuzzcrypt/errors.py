"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures to
distinct process exit statuses without a lookup table.
"""


class FuzzCryptError(Exception):
    exit_code = 1


class InvalidParameterError(FuzzCryptError, ValueError):
    exit_code = 3


class DimensionError(FuzzCryptError, ValueError):
    exit_code = 3


class EmptyInputError(FuzzCryptError, ValueError):
    exit_code = 3


class ConfigError(InvalidParameterError):
    """Config validation failure; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class NotALetterError(FuzzCryptError, ValueError):
    exit_code = 3


class InvalidSelectionError(FuzzCryptError, ValueError):
    exit_code = 3


class ContentEncodingError(FuzzCryptError, ValueError):
    exit_code = 7


class WrongKeyError(FuzzCryptError):
    exit_code = 5


class CorruptDocumentError(FuzzCryptError, ValueError):
    exit_code = 6
