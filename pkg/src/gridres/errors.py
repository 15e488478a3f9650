"""Exception taxonomy.

Every error raised by the library derives from GridResError so the CLI can
map library failures to a single exit code. Subclasses exist where callers
(or tests) need to tell failure modes apart.
"""


class GridResError(Exception):
    """Base class for all gridres errors."""


class VectorError(GridResError):
    """CVSS vector string rejected; message names the offending token."""


class ParseError(GridResError):
    """Input file rejected; message carries file and field context."""


class InvariantViolation(GridResError):
    """Network data violates a structural rule; message names the rule."""


class UnknownElementError(GridResError):
    """Reference to a bus, line, or switch that does not exist."""


class EndpointDisabledError(GridResError):
    """Tie switch cannot close because an endpoint bus was disabled."""


class MalformedCveIdError(GridResError):
    """Identifier does not match the CVE-YYYY-NNNN grammar."""


class CveNotFoundError(GridResError):
    """No record for the identifier in any enabled source."""


class RecordValidationError(GridResError):
    """Imported CVE record rejected; message carries the record index."""


class RemoteError(GridResError):
    """Remote registry fetch failed."""

    def __init__(self, message, retriable=False, retry_after=None):
        super().__init__(message)
        self.retriable = retriable
        self.retry_after = retry_after


class MissingVectorDataError(RemoteError):
    """Remote record exists but carries no v3.1 metric data."""


class CveResolutionError(GridResError):
    """Scenario could not be resolved to a usable CVSS vector."""


class NotStandardModeError(GridResError):
    """Baseline requires an intact network: lines in service, switches open,
    graph connected."""


class UngatedScenarioError(GridResError):
    """Operation requires a gated assessment (severity High or Critical)."""
