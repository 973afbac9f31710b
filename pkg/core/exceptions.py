from __future__ import annotations


class CauchyLagrangianError(Exception):
    exit_code: int = 1


class ConfigError(CauchyLagrangianError):
    exit_code = 2


class DependencyError(CauchyLagrangianError):
    exit_code = 2


class FieldError(CauchyLagrangianError):
    exit_code = 3


class SeriesError(CauchyLagrangianError):
    exit_code = 4


class BoundError(CauchyLagrangianError):
    exit_code = 5


class StepperError(CauchyLagrangianError):
    exit_code = 6


class OracleError(CauchyLagrangianError):
    exit_code = 7
