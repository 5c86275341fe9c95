from contextlib import contextmanager


class DsiHurstError(Exception):
    """Base class for every error raised by the library.

    ``stage`` names the pipeline step the error belongs to (``detect``,
    ``drift``, ``grid``, ``variance``, ``estimate``, ``simulate``, ``ingest``,
    ``benchmark``) and is set either by the raiser or by ``pipeline_stage``.
    """

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self):
        if self.stage:
            return f"[{self.stage}] {self.message}"
        return self.message


class InvalidInputError(DsiHurstError, ValueError):
    pass


class SeriesTooShortError(InvalidInputError):
    pass


class DriftDomainError(InvalidInputError):
    pass


class DegenerateVarianceError(DsiHurstError):
    """A variance or fluctuation that should be positive came out as zero.

    ``where`` identifies the offending interval, stride or scale.
    """

    def __init__(self, message, where=None, stage=None):
        super().__init__(message, stage=stage)
        self.where = where


class SimulationError(DsiHurstError):
    def __init__(self, message, method=None, stage="simulate"):
        super().__init__(message, stage=stage)
        self.method = method


class ConfigError(DsiHurstError):
    pass


class BenchmarkError(DsiHurstError):
    def __init__(self, message, cells=None, stage="benchmark"):
        super().__init__(message, stage=stage)
        self.cells = cells or []


@contextmanager
def pipeline_stage(name):
    """Tag any library error raised inside the block with ``name``."""
    try:
        yield
    except DsiHurstError as e:
        if e.stage is None:
            e.stage = name
        raise
