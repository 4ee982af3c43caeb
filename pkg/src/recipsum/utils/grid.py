import re
from decimal import Decimal, InvalidOperation
from typing import List

from .errors import DomainError

_GRID_RE = re.compile(r"^\s*([^:\s]+)\s*:\s*([^:\s]+)\s*:\s*x\s*([^:\s]+)\s*$")


def parse_integer(text: str, argument: str = "value") -> int:
    """Parse '10000', '1e4' or '1E+04' into an exact integer"""
    try:
        number = Decimal(text.strip())
    except (InvalidOperation, AttributeError):
        raise DomainError("parse_integer", argument, text, "not a number")
    if not number.is_finite() or number != number.to_integral_value():
        raise DomainError("parse_integer", argument, text, "not an integer")
    return int(number)


def parse_grid(spec: str) -> List[int]:
    """Parse a geometric grid spec `start:stop:x<factor>`

    '1e4:1e8:x10' -> [10**4, 10**5, 10**6, 10**7, 10**8]. The stop value is
    included when it lies on the grid.
    """
    match = _GRID_RE.match(spec or "")
    if not match:
        raise DomainError("parse_grid", "grid", spec, "expected start:stop:x<factor>, e.g. 1e4:1e8:x10")

    start = parse_integer(match.group(1), "start")
    stop = parse_integer(match.group(2), "stop")
    factor = parse_integer(match.group(3), "factor")

    if start < 2:
        raise DomainError("parse_grid", "start", start, "must be at least 2")
    if stop < start:
        raise DomainError("parse_grid", "stop", stop, "must not be below start")
    if factor < 2:
        raise DomainError("parse_grid", "factor", factor, "must be at least 2")

    grid = []
    x = start
    while x <= stop:
        grid.append(x)
        x *= factor
    return grid
