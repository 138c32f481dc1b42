"""Exception hierarchy shared across the package.

Error categories map onto CLI exit codes: configuration problems exit
with 2, data problems (missing/corrupt files, degenerate inputs) with 3.
"""


class HearstreamError(Exception):
    """Base class for all package errors."""


class ConfigError(HearstreamError):
    """Invalid configuration, parameters or option combinations."""


class DataError(HearstreamError):
    """Missing or malformed data: files, manifests, archives, signals."""


class SizeMismatchError(HearstreamError, ValueError):
    """A buffer or tensor has the wrong length or shape."""


class MetricDomainError(HearstreamError, ValueError):
    """A metric was evaluated outside its domain (e.g. zero reference)."""


class WavFormatError(DataError):
    """WAV file is unreadable or uses an unsupported format."""


class ManifestError(DataError):
    """BRIR manifest or scene spec file violates its schema."""


class WeightArchiveError(DataError):
    """Weight archive is corrupt, incomplete or mismatched to the config."""


class DegenerateEmbeddingError(DataError):
    """Enrollment produced a near-zero embedding that cannot be normalized."""


class ChunkProcessingError(HearstreamError):
    """Streaming inference failed at a specific chunk.

    Carries the chunk index so a live pipeline can report where a fault
    (NaN/Inf propagation, bad state) occurred.
    """

    def __init__(self, message: str, chunk_index: int):
        super().__init__(f"{message} (chunk {chunk_index})")
        self.chunk_index = chunk_index
