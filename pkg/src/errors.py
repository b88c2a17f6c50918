"""
Exception hierarchy for the orbitquant toolkit.

Failing identities are never raised: verification code records them in reports.
Exceptions are reserved for misuse and for inputs outside a supported class.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors"""


class UsageError(ToolkitError, ValueError):
    """Caller passed something the operation does not accept (CLI exit code 2)"""


class GrammarError(UsageError):
    """Expression text does not follow the expression grammar"""

    def __init__(self, message: str, text: str = "", position: int = -1):
        """
        Initialize grammar error

        Args:
            message: Description of the problem
            text: Offending input text
            position: Character offset where parsing stopped
        """
        if text and position >= 0:
            message = f"{message} at offset {position} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


class UnsupportedClassError(ToolkitError):
    """Expression lies outside the class an operation can handle exactly"""


class EvolutionError(ToolkitError):
    """Grid evolution diverged or cannot realize the requested operator"""


class ConfigError(ToolkitError):
    """Configuration file contents are invalid"""
