"""Exception types shared across the package."""


class Kg2dataError(Exception):
    """Base class for all package errors."""


class CatalogError(Kg2dataError):
    """Malformed catalog file or an API spec violating its invariants."""


class ContractViolation(Kg2dataError):
    """An operation was called outside its stated precondition."""


class GatewayError(Kg2dataError):
    """Remote completion failure (transport or non-success status)."""


class CassetteMissError(GatewayError):
    """Strict replay found no recorded response for the request key."""

    def __init__(self, key: str):
        super().__init__(f"no recorded response for request key {key}")
        self.key = key


class CassetteModeError(Kg2dataError):
    """Cassette operation not permitted in the current mode."""


class ChunkingError(Kg2dataError):
    """Invalid chunking parameters."""


class ExtractionFormatError(Kg2dataError):
    """Model output did not follow the entity/relation record grammar."""

    def __init__(self, message: str, raw_text: str):
        super().__init__(message)
        self.raw_text = raw_text


class LeidenError(Kg2dataError):
    """Community detection called on an unusable graph."""


class SummaryError(Kg2dataError):
    """Community summarization failed; carries (level, community) context."""

    def __init__(self, level: int, community: int, cause: Exception):
        super().__init__(f"summarization failed for level {level} community {community}: {cause}")
        self.level = level
        self.community = community


class ToolError(Kg2dataError):
    """Tool registry or invocation error."""


class ToolTextBudgetError(ToolError):
    """Rendered tool descriptions exceed the caller's format budget."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"tool descriptions need {needed} tokens but budget is {budget}")
        self.needed = needed
        self.budget = budget


class EmptySeriesError(ToolError):
    """Statistics requested over an empty series."""


class ToolTransportError(ToolError):
    """The API client could not reach the data provider."""


class AgentConfigError(Kg2dataError):
    """Agent configuration violates its invariants."""


class OutputParseError(Kg2dataError):
    """Model output could not be turned into trace steps."""


class AmbiguousOutputError(OutputParseError):
    """Output contains both an Action and a Final Answer."""


class NoStepError(OutputParseError):
    """Output contains no recognizable step label."""


class CaseLoadError(Kg2dataError):
    """Instruction case file violates the dataset constraints."""


class GenerationExhaustedError(Kg2dataError):
    """All pair-generation attempts for an API were filtered out."""

    def __init__(self, api_name: str):
        super().__init__(f"pair generation exhausted for API {api_name}")
        self.api_name = api_name


class ClassificationError(Kg2dataError):
    """Trace and case do not belong together."""


class AblationError(Kg2dataError):
    """Ablation harness misconfiguration (missing cassette, corpus mismatch)."""


class ConfigError(Kg2dataError):
    """Bad application config file."""
