from .compensated import CompensatedSum, two_sum
from .csv_output import CsvWriter, open_output
from .errors import DomainError, NumericalError, RecipSumError
from .grid import parse_grid, parse_integer
from .quadrature import adaptive_quad
from .settings import SettingsManager
from .storage import ReportStore

__all__ = [
    "CompensatedSum",
    "two_sum",
    "CsvWriter",
    "open_output",
    "DomainError",
    "NumericalError",
    "RecipSumError",
    "parse_grid",
    "parse_integer",
    "adaptive_quad",
    "SettingsManager",
    "ReportStore",
]
